"""Divergence-form elliptic operators with radial coefficients.

Sign convention used across the package (the "problem form"):

    L u = -div(A grad(u) + b1 u) + b2 . grad(u) + c u,

so equations read L u = f, the Schroedinger operator is -Delta + c, and the
principal eigenvalue lambda1 (positive eigenfunction, L phi1 = lambda1 phi1)
is positive exactly when the maximum principle holds.  The adjoint swaps the
two drifts:  L* v = -div(A^T grad(v) + b2 v) + b1 . grad(v) + c v.

Coefficients are radial: A = a(r) I, b_i = beta_i(r) x/|x|, c = c(r).
"""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .profiles import ONE, ScalarProfile

Array = np.ndarray


@dataclass(frozen=True)
class OperatorSpec:
    """Coefficient bundle defining L on the ball/interval of radius R."""

    n: int
    R: float
    A: ScalarProfile = ONE
    b1: ScalarProfile | None = None
    b2: ScalarProfile | None = None
    c: ScalarProfile | None = None
    lambda_ell: float = 1.0
    Lambda_ell: float = 1.0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("dimension must be >= 1")
        if self.R <= 0:
            raise ValueError("radius must be positive")

    def validate(self, samples: int = 257) -> None:
        """Sampled ellipticity bounds, and beta(0)=0 for C1-or-better drifts."""
        r = np.linspace(0.0, self.R, samples)
        a = self.A(r)
        if np.any(a < self.lambda_ell - 1e-12) or np.any(a > self.Lambda_ell + 1e-12):
            raise ValueError("diffusion coefficient violates the ellipticity bounds")
        for b in (self.b1, self.b2):
            if b is not None and b.smoothness_class != "C0":
                if abs(float(b(np.array([0.0]))[0])) > 1e-12:
                    raise ValueError("smooth radial drift component must vanish at r=0")


def laplacian(n: int, R: float = 1.0) -> OperatorSpec:
    return OperatorSpec(n=n, R=R)


def with_constant_potential(spec: OperatorSpec, shift: float) -> OperatorSpec:
    """Spec for L + shift (adds a constant to c)."""
    from .profiles import add, constant
    c = constant(shift) if spec.c is None else add(spec.c, constant(shift))
    return replace(spec, c=c)


def adjoint_spec(spec: OperatorSpec) -> OperatorSpec:
    return replace(spec, b1=spec.b2, b2=spec.b1)


def apply_radial(spec: OperatorSpec, u: ScalarProfile, r: Array) -> Array:
    """Evaluate (L u)(r) from the analytic derivative profiles.

    Requires u.d1, u.d2; A.d1 and b1.d1 whenever those coefficients vary.
    r must stay strictly positive when n > 1 (the 1/r terms are genuine)."""
    r = np.asarray(r, dtype=float)
    if u.d1 is None or u.d2 is None:
        raise ValueError("second derivative of u is required to apply the operator")
    n = spec.n
    up, upp = u.d1(r), u.d2(r)
    a = spec.A(r)
    ap = spec.A.d1(r) if spec.A.d1 is not None else np.zeros_like(r)
    out = -(a * upp + ap * up)
    with np.errstate(divide="ignore", invalid="ignore"):
        inv_r = np.where(r > 0, 1.0 / np.where(r > 0, r, 1.0), 0.0)
    out -= (n - 1) * a * up * inv_r
    if spec.b1 is not None:
        if spec.b1.d1 is None:
            raise ValueError("b1 requires a first derivative to sit inside the divergence")
        b1, b1p = spec.b1(r), spec.b1.d1(r)
        out -= b1p * u(r) + b1 * up + (n - 1) * b1 * u(r) * inv_r
    if spec.b2 is not None:
        out += spec.b2(r) * up
    if spec.c is not None:
        out += spec.c(r) * u(r)
    return out


def _compose_scaled(p: ScalarProfile, R: float, power: int) -> ScalarProfile:
    """x -> R^power * p(R x), derivatives rescaled accordingly."""
    d1 = (lambda x: R ** (power + 1) * p.d1(R * np.asarray(x, dtype=float))) if p.d1 else None
    d2 = (lambda x: R ** (power + 2) * p.d2(R * np.asarray(x, dtype=float))) if p.d2 else None
    return ScalarProfile(eval=lambda x: R ** power * p.eval(R * np.asarray(x, dtype=float)),
                         d1=d1, d2=d2, smoothness_class=p.smoothness_class, kind=p.kind)


def rescale_to_unit(spec: OperatorSpec, f: ScalarProfile | None = None
                    ) -> tuple[OperatorSpec, ScalarProfile | None]:
    """Pull a problem on B_R back to B_1.

    The transformed coefficients are A~(x)=A(Rx), b~_i(x)=R b_i(Rx),
    c~(x)=R^2 c(Rx), f~(x)=R^2 f(Rx); u~(x)=u(Rx) then solves the transformed
    equation on the unit ball.
    """
    R = spec.R
    new = OperatorSpec(
        n=spec.n,
        R=1.0,
        A=_compose_scaled(spec.A, R, 0),
        b1=_compose_scaled(spec.b1, R, 1) if spec.b1 is not None else None,
        b2=_compose_scaled(spec.b2, R, 1) if spec.b2 is not None else None,
        c=_compose_scaled(spec.c, R, 2) if spec.c is not None else None,
        lambda_ell=spec.lambda_ell,
        Lambda_ell=spec.Lambda_ell,
    )
    fnew = _compose_scaled(f, R, 2) if f is not None else None
    return new, fnew


def rescale_from_unit(spec: OperatorSpec, R: float,
                      f: ScalarProfile | None = None
                      ) -> tuple[OperatorSpec, ScalarProfile | None]:
    """Inverse of :func:`rescale_to_unit` (push a unit-ball problem to B_R)."""
    if abs(spec.R - 1.0) > 1e-14:
        raise ValueError("spec must live on the unit ball")
    inv = 1.0 / R
    new = OperatorSpec(
        n=spec.n,
        R=R,
        A=_compose_scaled(spec.A, inv, 0),
        b1=_compose_scaled(spec.b1, inv, 1) if spec.b1 is not None else None,
        b2=_compose_scaled(spec.b2, inv, 1) if spec.b2 is not None else None,
        c=_compose_scaled(spec.c, inv, 2) if spec.c is not None else None,
        lambda_ell=spec.lambda_ell,
        Lambda_ell=spec.Lambda_ell,
    )
    fnew = _compose_scaled(f, inv, 2) if f is not None else None
    return new, fnew
