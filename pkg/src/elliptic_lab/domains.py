"""Supported model domains and their geometric constants."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_KINDS = ("interval", "ball", "square")

# Fixed conventions for the flattening radius r_Omega.  For balls a certified
# under-estimate of the general definition is c(n) R with c(n) >= 1/200
# (touching paraboloid with opening ~1/R); we freeze R/200.  The 1D theory
# needs no boundary flattening, so intervals use r_Omega = R.
_R_OMEGA_FACTOR = {"ball": 1.0 / 200.0, "square": 1.0 / 200.0, "interval": 1.0}


@dataclass(frozen=True)
class Domain:
    kind: str
    n: int
    R: float

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unsupported domain kind {self.kind!r}")
        if self.kind == "interval" and self.n != 1:
            raise ValueError("interval domains are one-dimensional")
        if self.kind == "square" and self.n != 2:
            raise ValueError("square domains are two-dimensional")
        if self.R <= 0:
            raise ValueError("radius must be positive")

    @property
    def diameter(self) -> float:
        # D0 and the geodesic diameter D coincide for these convex domains.
        if self.kind == "square":
            return 2.0 * self.R * np.sqrt(2.0)
        return 2.0 * self.R

    @property
    def geodesic_diameter(self) -> float:
        return self.diameter

    @property
    def r_omega(self) -> float:
        return _R_OMEGA_FACTOR[self.kind] * self.R

    def dist_to_boundary(self, x) -> np.ndarray:
        """d(x); for ball/interval x is the radial coordinate, for squares a
        point array of shape (..., 2)."""
        x = np.asarray(x, dtype=float)
        if self.kind == "square":
            return np.min(self.R - np.abs(x), axis=-1)
        return self.R - np.abs(x)

    @property
    def volume(self) -> float:
        if self.kind == "square":
            return (2.0 * self.R) ** 2
        return ball_volume(self.n, self.R)


def ball(n: int, R: float = 1.0) -> Domain:
    return Domain(kind="interval" if n == 1 else "ball", n=n, R=R)


def square(R: float = 1.0) -> Domain:
    return Domain(kind="square", n=2, R=R)


def r_omega(dom: Domain) -> float:
    return dom.r_omega


def sphere_area(n: int, R: float = 1.0) -> float:
    """|S^{n-1}_R|; equals 2 for n=1 (two endpoints)."""
    if n == 1:
        return 2.0
    if n == 2:
        return 2.0 * np.pi * R
    if n == 3:
        return 4.0 * np.pi * R * R
    from math import gamma
    return 2.0 * np.pi ** (n / 2.0) / gamma(n / 2.0) * R ** (n - 1)


def ball_volume(n: int, R: float = 1.0) -> float:
    return sphere_area(n, R) * R / n
