"""Scalar coefficient/solution profiles with hand-coded derivatives.

Everything downstream (residual audits, norm computations, finite-difference
solves) consumes profiles through this interface, so each profile carries its
first and second derivative as separate callables.  All callables are
vectorized over numpy arrays.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

Array = np.ndarray
Fn = Callable[[Array], Array]

_CLASSES = ("C0", "C1", "C2", "Cinf")


@dataclass(frozen=True)
class ScalarProfile:
    """A scalar field given in closed form.

    ``eval`` maps the radial coordinate r (kind="radial") or the signed 1D
    coordinate x (kind="cartesian") to the field value.  ``d1``/``d2`` are the
    corresponding derivatives where available.
    """

    eval: Fn
    d1: Fn | None = None
    d2: Fn | None = None
    smoothness_class: str = "Cinf"
    kind: str = "radial"

    def __post_init__(self):
        if self.smoothness_class not in _CLASSES:
            raise ValueError(f"unknown smoothness class {self.smoothness_class!r}")
        if self.kind not in ("radial", "cartesian"):
            raise ValueError(f"unknown profile kind {self.kind!r}")

    def __call__(self, r) -> Array:
        return self.eval(np.asarray(r, dtype=float))

    def deriv(self, r) -> Array:
        if self.d1 is None:
            raise ValueError("profile has no first derivative")
        return self.d1(np.asarray(r, dtype=float))

    def deriv2(self, r) -> Array:
        if self.d2 is None:
            raise ValueError("profile has no second derivative")
        return self.d2(np.asarray(r, dtype=float))


def constant(value: float, kind: str = "radial") -> ScalarProfile:
    v = float(value)
    return ScalarProfile(
        eval=lambda r: np.full_like(np.asarray(r, dtype=float), v),
        d1=lambda r: np.zeros_like(np.asarray(r, dtype=float)),
        d2=lambda r: np.zeros_like(np.asarray(r, dtype=float)),
        smoothness_class="Cinf",
        kind=kind,
    )


ZERO = constant(0.0)
ONE = constant(1.0)


def from_callables(f: Fn, d1: Fn | None = None, d2: Fn | None = None,
                   smoothness_class: str = "Cinf", kind: str = "radial") -> ScalarProfile:
    return ScalarProfile(eval=f, d1=d1, d2=d2, smoothness_class=smoothness_class, kind=kind)


def add(p: ScalarProfile, q: ScalarProfile) -> ScalarProfile:
    """Pointwise sum; derivatives combined when both sides have them."""
    if p.kind != q.kind:
        raise ValueError("cannot add profiles of different kinds")
    d1 = (lambda r: p.d1(r) + q.d1(r)) if (p.d1 and q.d1) else None
    d2 = (lambda r: p.d2(r) + q.d2(r)) if (p.d2 and q.d2) else None
    order = min(_CLASSES.index(p.smoothness_class), _CLASSES.index(q.smoothness_class))
    return ScalarProfile(eval=lambda r: p.eval(r) + q.eval(r), d1=d1, d2=d2,
                         smoothness_class=_CLASSES[order], kind=p.kind)


def scale(p: ScalarProfile, factor: float) -> ScalarProfile:
    s = float(factor)
    d1 = (lambda r: s * p.d1(r)) if p.d1 else None
    d2 = (lambda r: s * p.d2(r)) if p.d2 else None
    return ScalarProfile(eval=lambda r: s * p.eval(r), d1=d1, d2=d2,
                         smoothness_class=p.smoothness_class, kind=p.kind)


def even_trig(a0: float, amps: tuple[float, ...], R: float) -> ScalarProfile:
    """a0 + sum_k amps[k] * cos((k+1) pi r / R).  Even in r, so usable for
    diffusion and potential coefficients on balls/intervals."""
    ks = np.pi * np.arange(1, len(amps) + 1) / R
    a = np.asarray(amps, dtype=float)

    def f(r):
        return a0 + np.cos(np.outer(r, ks)) @ a

    def f1(r):
        return -np.sin(np.outer(r, ks)) @ (a * ks)

    def f2(r):
        return -np.cos(np.outer(r, ks)) @ (a * ks * ks)

    return ScalarProfile(eval=f, d1=f1, d2=f2)


def odd_sine(amps: tuple[float, ...], R: float) -> ScalarProfile:
    """sum_k amps[k] * sin((k+1) pi r / R): vanishes at r = 0, as required of
    radial components of smooth drift fields."""
    ks = np.pi * np.arange(1, len(amps) + 1) / R
    a = np.asarray(amps, dtype=float)

    def f(r):
        return np.sin(np.outer(r, ks)) @ a

    def f1(r):
        return np.cos(np.outer(r, ks)) @ (a * ks)

    def f2(r):
        return -np.sin(np.outer(r, ks)) @ (a * ks * ks)

    return ScalarProfile(eval=f, d1=f1, d2=f2)


# ---------------------------------------------------------------------------
# quintic smoothstep and the fixed C^2 cutoff on [3/8, 3/4]


def smoothstep(t: Array) -> Array:
    t = np.clip(np.asarray(t, dtype=float), 0.0, 1.0)
    return t * t * t * (10.0 + t * (-15.0 + 6.0 * t))


def smoothstep_d1(t: Array) -> Array:
    t = np.asarray(t, dtype=float)
    inside = (t > 0.0) & (t < 1.0)
    tc = np.clip(t, 0.0, 1.0)
    return np.where(inside, 30.0 * tc * tc * (tc - 1.0) * (tc - 1.0), 0.0)


def smoothstep_d2(t: Array) -> Array:
    t = np.asarray(t, dtype=float)
    inside = (t > 0.0) & (t < 1.0)
    tc = np.clip(t, 0.0, 1.0)
    return np.where(inside, 60.0 * tc * (tc - 1.0) * (2.0 * tc - 1.0), 0.0)


def cutoff_profile(lo: float = 0.375, hi: float = 0.75) -> ScalarProfile:
    """C^2 cutoff: 1 on r <= lo, 0 on r >= hi, quintic smoothstep between."""
    width = hi - lo

    def f(r):
        return 1.0 - smoothstep((np.asarray(r, dtype=float) - lo) / width)

    def f1(r):
        return -smoothstep_d1((np.asarray(r, dtype=float) - lo) / width) / width

    def f2(r):
        return -smoothstep_d2((np.asarray(r, dtype=float) - lo) / width) / (width * width)

    return ScalarProfile(eval=f, d1=f1, d2=f2, smoothness_class="C2")


def plateau_profile(lo: float = 1.0 / 3.0, hi: float = 2.0 / 3.0) -> ScalarProfile:
    """Radially nonincreasing C^2 profile: 1 on r <= lo, 0 on r >= hi."""
    return cutoff_profile(lo, hi)


# ---------------------------------------------------------------------------
# first Dirichlet eigenfunction of the unit ball, normalized phi(0) = 1

_SINC_SWITCH = 0.05


def _sinc_parts(r: Array):
    # sin(pi r)/(pi r) with series evaluation near 0 (the direct formulas for
    # the derivatives cancel catastrophically as r -> 0)
    r = np.asarray(r, dtype=float)
    t = np.pi * r
    small = np.abs(r) < _SINC_SWITCH
    ts = np.where(small, t, 0.0)
    t2 = ts * ts
    val_s = 1.0 + t2 * (-1.0 / 6.0 + t2 * (1.0 / 120.0 + t2 * (-1.0 / 5040.0 + t2 / 362880.0)))
    d1_s = np.pi * ts * (-1.0 / 3.0 + t2 * (1.0 / 30.0 + t2 * (-1.0 / 840.0 + t2 / 45360.0)))
    d2_s = np.pi * np.pi * (-1.0 / 3.0 + t2 * (1.0 / 10.0 + t2 * (-1.0 / 168.0 + t2 / 6480.0)))
    rb = np.where(small, 1.0, r)
    s, c = np.sin(np.pi * rb), np.cos(np.pi * rb)
    val_d = s / (np.pi * rb)
    d1_d = c / rb - s / (np.pi * rb * rb)
    d2_d = -np.pi * s / rb - 2.0 * c / (rb * rb) + 2.0 * s / (np.pi * rb ** 3)
    return (np.where(small, val_s, val_d),
            np.where(small, d1_s, d1_d),
            np.where(small, d2_s, d2_d))


def dirichlet_eigenprofile(n: int) -> tuple[ScalarProfile, float]:
    """Closed-form principal Dirichlet eigenpair (phi, lambda0) of the unit
    ball, phi(0)=1.  Available for n=1 (cos(pi r/2)) and n=3 (sin(pi r)/(pi r))."""
    if n == 1:
        w = np.pi / 2.0
        prof = ScalarProfile(
            eval=lambda r: np.cos(w * np.asarray(r, dtype=float)),
            d1=lambda r: -w * np.sin(w * np.asarray(r, dtype=float)),
            d2=lambda r: -w * w * np.cos(w * np.asarray(r, dtype=float)),
        )
        return prof, w * w
    if n == 3:
        prof = ScalarProfile(
            eval=lambda r: _sinc_parts(r)[0],
            d1=lambda r: _sinc_parts(r)[1],
            d2=lambda r: _sinc_parts(r)[2],
        )
        return prof, np.pi * np.pi
    raise ValueError(f"no closed-form ball eigenfunction for n={n}; use a numeric one")
