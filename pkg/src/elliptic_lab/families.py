"""Closed-form counterexample families for the optimized elliptic estimates.

Each constructor returns a :class:`ClosedFormCase` bundling an operator, an
exact solution u with hand-coded derivatives, the exact right-hand side f of
L u = f (see :mod:`.operators` for the sign convention), and a map of named
exact quantities used by the estimate checks.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .operators import OperatorSpec, apply_radial
from .profiles import (
    ScalarProfile,
    constant,
    cutoff_profile,
    dirichlet_eigenprofile,
    plateau_profile,
)

Array = np.ndarray


@dataclass(frozen=True)
class ClosedFormCase:
    name: str
    param: float
    spec: OperatorSpec
    u: ScalarProfile
    f: ScalarProfile
    facts: dict = field(default_factory=dict)
    # open interval of radii on which the residual identity L u = f is audited
    sample_range: tuple[float, float] | None = None

    def residual_window(self) -> tuple[float, float]:
        return self.sample_range if self.sample_range is not None else (0.0, self.spec.R)


class ConstructionError(ValueError):
    """A family constructor detected an inconsistency at build time."""


def residual(case: ClosedFormCase, samples: int = 10_000) -> float:
    """max |L u - f| over equispaced midpoints of the case's sample window.

    Uses only the analytic derivative profiles; deterministic for fixed
    ``samples``.
    """
    if case.u.d2 is None:
        raise ValueError(f"case {case.name!r} has no second derivative on u")
    lo, hi = case.residual_window()
    h = (hi - lo) / samples
    r = lo + h * (np.arange(samples) + 0.5)
    return float(np.max(np.abs(apply_radial(case.spec, case.u, r) - case.f(r))))


def _assert_positive(profile: ScalarProfile, lo: float, hi: float, what: str,
                     samples: int = 2001) -> None:
    r = np.linspace(lo, hi, samples)
    vals = profile(r)
    if np.any(vals <= 0.0):
        raise ConstructionError(f"{what} is not strictly positive (min {vals.min():.3e})")


# ---------------------------------------------------------------------------
# Lipschitz-estimate optimality, Schroedinger variant:
# u = e^{lam*phi} - 1 with phi = (1-r^2)/2 solves -Delta u + c u = f on B_1,
# c = lam^2 r^2 - lam n, f = -c.


def make_schrodinger_linfty(lam: float, n: int) -> ClosedFormCase:
    if lam < 2 * n:
        raise ValueError(f"parameter {lam} below the admissible threshold 2n={2*n}")
    lam = float(lam)

    def phi(r):
        return 0.5 * (1.0 - r * r)

    u = ScalarProfile(
        eval=lambda r: np.expm1(lam * phi(r)),
        d1=lambda r: -lam * r * np.exp(lam * phi(r)),
        d2=lambda r: lam * np.exp(lam * phi(r)) * (lam * r * r - 1.0),
    )
    c = ScalarProfile(
        eval=lambda r: lam * lam * r * r - lam * n,
        d1=lambda r: 2.0 * lam * lam * r,
        d2=lambda r: np.full_like(np.asarray(r, dtype=float), 2.0 * lam * lam),
    )
    f = ScalarProfile(
        eval=lambda r: lam * n - lam * lam * r * r,
        d1=lambda r: -2.0 * lam * lam * r,
        d2=lambda r: np.full_like(np.asarray(r, dtype=float), -2.0 * lam * lam),
    )
    spec = OperatorSpec(n=n, R=1.0, c=c)
    facts = {
        "u_at_0": float(np.expm1(lam / 2.0)),
        "normal_derivative": lam,   # |u'(1)| = lam e^0
        "positive_supersolution_on_Rn": 1.0,  # e^{lam phi} > 0 solves L v = 0
    }
    return ClosedFormCase("schrodinger-linfty", lam, spec, u, f, facts)


# ---------------------------------------------------------------------------
# Lipschitz-estimate optimality, drift variant:
# u = e^{lam sqrt(2)} - e^{lam phi}, phi = sqrt(1+r^2);  the radial drift is
# cut off near the origin so that b is smooth, and f is supported in r<=3/4.


def make_drift_linfty(lam: float, n: int) -> ClosedFormCase:
    if lam < 1:
        raise ValueError("drift family needs lam >= 1")
    lam = float(lam)
    psi = cutoff_profile(0.375, 0.75)

    def phi(r):
        return np.sqrt(1.0 + r * r)

    def u_eval(r):
        return np.exp(lam * np.sqrt(2.0)) - np.exp(lam * phi(r))

    def u_d1(r):
        p = phi(r)
        return -lam * (r / p) * np.exp(lam * p)

    def u_d2(r):
        p = phi(r)
        # d/dr of -lam (r/p) e^{lam p}: chain rule with p' = r/p
        return -lam * np.exp(lam * p) * (1.0 / p - r * r / p ** 3 + lam * r * r / (p * p))

    def beta_core(r):
        p = phi(r)
        with np.errstate(divide="ignore", invalid="ignore"):
            inv_r = np.where(r > 0, 1.0 / np.where(r > 0, r, 1.0), 0.0)
        return lam * r / p + n * inv_r - r / (p * p)

    def b2_eval(r):
        r = np.asarray(r, dtype=float)
        out = beta_core(r) * (1.0 - psi(r))
        return np.where(r <= 0.375, 0.0, out)  # exact zero on the cutoff plateau

    def f_eval(r):
        p = phi(r)
        r = np.asarray(r, dtype=float)
        val = lam * np.exp(lam * p) * (lam * r * r / (p * p) + n / p - r * r / p ** 3)
        return np.where(r >= 0.75, 0.0, val * psi(r))

    u = ScalarProfile(eval=u_eval, d1=u_d1, d2=u_d2)
    b2 = ScalarProfile(eval=b2_eval, smoothness_class="C2")
    f = ScalarProfile(eval=f_eval, smoothness_class="C2")
    spec = OperatorSpec(n=n, R=1.0, b2=b2)
    facts = {
        "u_at_0": float(np.exp(lam * np.sqrt(2.0)) - np.exp(lam)),
        # boundary limit of u/d: -u'(1) = lam e^{lam sqrt2}/sqrt2
        "normal_derivative": float(lam * np.exp(lam * np.sqrt(2.0)) / np.sqrt(2.0)),
        "f_support_radius": 0.75,
    }
    return ClosedFormCase("drift-linfty", lam, spec, u, f, facts)


# ---------------------------------------------------------------------------
# Hopf-lemma optimality: u = e^{lam phi} - 1 + K phi, phi = (1-r^2)/2.


def make_hopf_case(lam: float, n: int, variant: str = "schrodinger") -> ClosedFormCase:
    if lam <= 0:
        raise ValueError("lam must be positive")
    if variant not in ("schrodinger", "drift"):
        raise ValueError(f"unknown variant {variant!r}")
    lam = float(lam)
    K = lam * lam / n if variant == "schrodinger" else 0.0

    def phi(r):
        return 0.5 * (1.0 - r * r)

    u = ScalarProfile(
        eval=lambda r: np.expm1(lam * phi(r)) + K * phi(r),
        d1=lambda r: -r * (lam * np.exp(lam * phi(r)) + K),
        d2=lambda r: lam * np.exp(lam * phi(r)) * (lam * r * r - 1.0) - K,
    )
    if variant == "schrodinger":
        c = ScalarProfile(
            eval=lambda r: lam * lam * r * r,
            d1=lambda r: 2.0 * lam * lam * r,
            d2=lambda r: np.full_like(np.asarray(r, dtype=float), 2.0 * lam * lam),
        )
        spec = OperatorSpec(n=n, R=1.0, c=c)

        def f_eval(r):
            return (lam * n * np.exp(lam * phi(r))
                    + lam * lam * (1.0 - r * r)
                    + (lam ** 4 / n) * r * r * phi(r))

        f = ScalarProfile(eval=f_eval)
        normal_derivative = lam + lam * lam / n
    else:
        b2 = ScalarProfile(
            eval=lambda r: -lam * np.asarray(r, dtype=float),
            d1=lambda r: np.full_like(np.asarray(r, dtype=float), -lam),
            d2=lambda r: np.zeros_like(np.asarray(r, dtype=float)),
        )
        spec = OperatorSpec(n=n, R=1.0, b2=b2)
        f = ScalarProfile(eval=lambda r: lam * n * np.exp(lam * phi(r)))
        normal_derivative = lam

    # the construction guarantees f >= lam n e^{lam phi} > 0; a failure here
    # signals a coding mistake, not a bad parameter
    _assert_positive(f, 0.0, 1.0, "hopf right-hand side")
    facts = {
        "normal_derivative": float(normal_derivative),
        "u_at_0": float(np.expm1(lam / 2.0) + K / 2.0),
        "K": float(K),
        "f_lower_bound_at_0": float(lam * n * np.exp(lam / 2.0)),
    }
    return ClosedFormCase(f"hopf-{variant}", lam, spec, u, f, facts)


# ---------------------------------------------------------------------------
# boundary-Harnack / log-gradient optimality: u_j = phi e^{j h} with phi the
# principal Dirichlet eigenfunction of B_1 (phi(0)=1).


def _eigenprofile(n: int, numeric_phi: ScalarProfile | None,
                  numeric_lam0: float | None):
    if numeric_phi is not None:
        if numeric_lam0 is None:
            raise ValueError("a numeric eigenfunction needs its eigenvalue")
        return numeric_phi, float(numeric_lam0), True
    try:
        phi, lam0 = dirichlet_eigenprofile(n)
        return phi, lam0, False
    except ValueError:
        raise ValueError(
            f"n={n} has no closed-form ball eigenfunction; pass numeric_phi "
            "from solver.principal_eigen (see numeric_eigenprofile)") from None


def numeric_eigenprofile(n: int, m: int = 4096) -> tuple[ScalarProfile, float]:
    """Numeric principal eigenpair of -Delta on B_1, spline-backed, phi(0)=1."""
    from scipy.interpolate import CubicSpline

    from .operators import laplacian
    from .solver import RadialGrid, principal_eigen

    grid = RadialGrid(n=n, R=1.0, m=m)
    res = principal_eigen(laplacian(n), grid, tol=1e-12)
    vals = res.phi1.u / res.phi1.u[0]
    spline = CubicSpline(np.r_[grid.r, 1.0], np.r_[vals, 0.0], bc_type=((1, 0.0), "not-a-knot"))
    d1 = spline.derivative(1)
    d2 = spline.derivative(2)
    prof = ScalarProfile(eval=lambda r: spline(np.asarray(r, dtype=float)),
                         d1=lambda r: d1(np.asarray(r, dtype=float)),
                         d2=lambda r: d2(np.asarray(r, dtype=float)),
                         smoothness_class="C2")
    return prof, float(res.lambda1)


def make_harnack_case(j: int, n: int, variant: str = "schrodinger",
                      numeric_phi: ScalarProfile | None = None,
                      numeric_lam0: float | None = None) -> ClosedFormCase:
    if j < 1:
        raise ValueError("j must be >= 1")
    if variant not in ("schrodinger", "drift"):
        raise ValueError(f"unknown variant {variant!r}")
    j = int(j)
    phi, lam0, numeric = _eigenprofile(n, numeric_phi, numeric_lam0)

    if variant == "schrodinger":
        h_of = lambda r: phi(r) ** 2
        h1_of = lambda r: 2.0 * phi(r) * phi.d1(r)
        h2_of = lambda r: 2.0 * (phi.d1(r) ** 2 + phi(r) * phi.d2(r))
    else:
        plat = plateau_profile(1.0 / 3.0, 2.0 / 3.0)
        h_of, h1_of, h2_of = plat.eval, plat.d1, plat.d2

    def u_eval(r):
        return phi(r) * np.exp(j * h_of(r))

    def u_d1(r):
        return (phi.d1(r) + j * phi(r) * h1_of(r)) * np.exp(j * h_of(r))

    def u_d2(r):
        h1 = h1_of(r)
        return (phi.d2(r) + 2.0 * j * phi.d1(r) * h1
                + phi(r) * (j * h2_of(r) + j * j * h1 * h1)) * np.exp(j * h_of(r))

    u = ScalarProfile(eval=u_eval, d1=u_d1, d2=u_d2, smoothness_class="C2")

    def lap_h(r):
        r = np.asarray(r, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            inv_r = np.where(r > 0, 1.0 / np.where(r > 0, r, 1.0), 0.0)
        corr = np.where(r > 0, (n - 1) * h1_of(r) * inv_r,
                        (n - 1) * h2_of(np.zeros_like(r)))  # h'(r)/r -> h''(0)
        return h2_of(r) + corr

    if variant == "schrodinger":
        def c_eval(r):
            return -(lam0 - 4.0 * j * phi.d1(r) ** 2 - j * lap_h(r)
                     - j * j * h1_of(r) ** 2)

        spec = OperatorSpec(n=n, R=1.0, c=ScalarProfile(eval=c_eval, smoothness_class="C2"))
    else:
        def b2_eval(r):
            r = np.asarray(r, dtype=float)
            num = 2.0 * j * phi.d1(r) * h1_of(r) + phi(r) * (j * lap_h(r) + j * j * h1_of(r) ** 2)
            den = phi.d1(r) + j * phi(r) * h1_of(r)
            inside = (r > 1.0 / 3.0) & (r < 2.0 / 3.0)
            return np.where(inside, num / np.where(inside, den, 1.0), 0.0)

        spec = OperatorSpec(n=n, R=1.0,
                            b2=ScalarProfile(eval=b2_eval, smoothness_class="C0"),
                            c=constant(-lam0))

    f = constant(0.0)
    phi1_at_1 = float(phi.d1(np.array([1.0]))[0])
    half = np.array([0.5])
    loggrad_half = abs(float(phi.d1(half)[0] / phi(half)[0] + j * h1_of(half)[0]))
    facts = {
        "u_at_0": float(u(np.array([0.0]))[0]),
        "phi_prime_at_1": phi1_at_1,
        "sup_over_inf_ud_lower": float(np.exp(j) / abs(phi1_at_1)),
        "loggrad_at_half": loggrad_half,
        "lambda0": float(lam0),
        "numeric_eigenfunction": float(numeric),
    }
    _assert_positive(u, 0.0, 1.0 - 1e-9, "harnack family solution")
    return ClosedFormCase(f"harnack-{variant}", float(j), spec, u, f, facts,
                          sample_range=(0.0, 1.0))


def make_harnack_inhom_case(j: int, n: int,
                            numeric_phi: ScalarProfile | None = None,
                            numeric_lam0: float | None = None) -> ClosedFormCase:
    """Inhomogeneous boundary-Harnack optimality family u_j = e^{j phi^2} - 1.

    Solves L u = f with c = j*Lap(phi^2) + j^2 |grad phi^2|^2 and f = -c;
    u/d degenerates at the boundary (u = O(d^2)) while u(0) = e^j - 1.
    """
    if j < 1:
        raise ValueError("j must be >= 1")
    j = int(j)
    phi, _lam0, numeric = _eigenprofile(n, numeric_phi, numeric_lam0)

    h_of = lambda r: phi(r) ** 2
    h1_of = lambda r: 2.0 * phi(r) * phi.d1(r)
    h2_of = lambda r: 2.0 * (phi.d1(r) ** 2 + phi(r) * phi.d2(r))

    def lap_h(r):
        r = np.asarray(r, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            inv_r = np.where(r > 0, 1.0 / np.where(r > 0, r, 1.0), 0.0)
        corr = np.where(r > 0, (n - 1) * h1_of(r) * inv_r,
                        (n - 1) * h2_of(np.zeros_like(r)))
        return h2_of(r) + corr

    def c_eval(r):
        return j * lap_h(r) + j * j * h1_of(r) ** 2

    u = ScalarProfile(
        eval=lambda r: np.expm1(j * h_of(r)),
        d1=lambda r: j * h1_of(r) * np.exp(j * h_of(r)),
        d2=lambda r: (j * h2_of(r) + j * j * h1_of(r) ** 2) * np.exp(j * h_of(r)),
        smoothness_class="C2",
    )
    c = ScalarProfile(eval=c_eval, smoothness_class="C2")
    f = ScalarProfile(eval=lambda r: -c_eval(r), smoothness_class="C2")
    spec = OperatorSpec(n=n, R=1.0, c=c)
    rfine = np.linspace(0.0, 1.0, 4001)
    facts = {
        "u_at_0": float(np.expm1(j)),
        "inf_ud": 0.0,             # u ~ j phi'(1)^2 d^2 at the boundary
        "f_sup": float(np.max(np.abs(f(rfine)))),
        "numeric_eigenfunction": float(numeric),
    }
    return ClosedFormCase("harnack-inhom", float(j), spec, u, f, facts,
                          sample_range=(0.0, 1.0))


# ---------------------------------------------------------------------------
# Landis optimality: v = e^{-r} cos r outside r=1, extended smoothly inside.


def make_landis_case(n: int) -> ClosedFormCase:
    if n < 1:
        raise ValueError("dimension must be >= 1")
    R_OUT = 20.0

    if n == 1:
        # one-dimensional instance u = e^{-x} cos x, u'' + 2u' + 2u = 0 on the
        # half-line (no origin extension needed: the ODE has no 1/r term)
        u = ScalarProfile(
            eval=lambda x: np.exp(-x) * np.cos(x),
            d1=lambda x: -np.exp(-x) * (np.cos(x) + np.sin(x)),
            d2=lambda x: 2.0 * np.exp(-x) * np.sin(x),
        )
        spec = OperatorSpec(n=1, R=R_OUT, b2=constant(-2.0), c=constant(-2.0))
        facts = {
            "zero_radii": tuple((k + 0.5) * np.pi for k in range(1, 6)),
            "lambda1_R": -2.0,
            "decay_rate": 1.0,
        }
        return ClosedFormCase("landis", 1.0, spec, u, constant(0.0), facts,
                              sample_range=(0.0, R_OUT))

    w1 = float(np.exp(-1.0) * np.cos(1.0))
    w1p = float(-np.exp(-1.0) * (np.cos(1.0) + np.sin(1.0)))
    w1pp = float(2.0 * np.exp(-1.0) * np.sin(1.0))
    # even quartic a + b r^2 + c r^4 matching value/first/second derivative at 1
    cq = (w1pp - w1p) / 8.0
    bq = (w1p - 4.0 * cq) / 2.0
    aq = w1 - bq - cq

    def v_eval(r):
        r = np.asarray(r, dtype=float)
        rs = np.minimum(r, 1.0)
        inner = aq + bq * rs * rs + cq * rs ** 4
        ro = np.maximum(r, 1.0)
        outer = np.exp(-ro) * np.cos(ro)
        return np.where(r < 1.0, inner, outer)

    def v_d1(r):
        r = np.asarray(r, dtype=float)
        rs = np.minimum(r, 1.0)
        inner = 2.0 * bq * rs + 4.0 * cq * rs ** 3
        ro = np.maximum(r, 1.0)
        outer = -np.exp(-ro) * (np.cos(ro) + np.sin(ro))
        return np.where(r < 1.0, inner, outer)

    def v_d2(r):
        r = np.asarray(r, dtype=float)
        rs = np.minimum(r, 1.0)
        inner = 2.0 * bq + 12.0 * cq * rs * rs
        ro = np.maximum(r, 1.0)
        outer = 2.0 * np.exp(-ro) * np.sin(ro)
        return np.where(r < 1.0, inner, outer)

    v = ScalarProfile(eval=v_eval, d1=v_d1, d2=v_d2, smoothness_class="C2")

    # paper-form drift beta(r) = 2 - (n-1)/r outside, odd cubic inside (C^1)
    p_in = float(5 - 2 * n)
    q_in = float(n - 2)

    def beta_paper(r):
        r = np.asarray(r, dtype=float)
        rs = np.minimum(r, 1.0)
        inner = rs * (p_in + q_in * rs * rs)
        with np.errstate(divide="ignore", invalid="ignore"):
            outer = 2.0 - (n - 1) / np.maximum(r, 1.0)
        return np.where(r < 1.0, inner, outer)

    def beta_paper_d1(r):
        r = np.asarray(r, dtype=float)
        rs = np.minimum(r, 1.0)
        inner = p_in + 3.0 * q_in * rs * rs
        outer = (n - 1) / np.maximum(r, 1.0) ** 2
        return np.where(r < 1.0, inner, outer)

    def lap_v(r):
        r = np.asarray(r, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            inv_r = np.where(r > 0, 1.0 / np.where(r > 0, r, 1.0), 0.0)
        corr = np.where(r > 0, (n - 1) * v_d1(r) * inv_r,
                        (n - 1) * 2.0 * bq)  # v'(r)/r -> v''(0) = 2 bq
        return v_d2(r) + corr

    def c_eval(r):
        # canonical c = (Lap v + beta v')/v; identically -2 outside r=1
        r = np.asarray(r, dtype=float)
        inner = (lap_v(r) + beta_paper(r) * v_d1(r)) / np.where(r < 1.0, v_eval(r), 1.0)
        return np.where(r < 1.0, inner, -2.0)

    b2 = ScalarProfile(eval=lambda r: -beta_paper(r),
                       d1=lambda r: -beta_paper_d1(r), smoothness_class="C1")
    c = ScalarProfile(eval=c_eval, smoothness_class="C0")
    spec = OperatorSpec(n=n, R=R_OUT, b2=b2, c=c)
    _assert_positive(v, 0.0, 1.0, "landis interior extension")
    facts = {
        "zero_radii": tuple((k + 0.5) * np.pi for k in range(1, 6)),
        "decay_rate": 1.0,
        "v_at_0": float(aq),
    }
    return ClosedFormCase("landis", float(n), spec, v, constant(0.0), facts,
                          sample_range=(0.0, R_OUT))


# ---------------------------------------------------------------------------
# log-gradient inhomogeneous optimality: u = (1+eps)^gamma - (r^2+eps)^gamma.


def make_loggrad_case(eps: float, gamma: float, n: int) -> ClosedFormCase:
    if not 0.0 < eps < 0.25:
        raise ValueError("eps must lie in (0, 1/4)")
    if not 0.0 < gamma < 1.0:
        raise ValueError("gamma must lie in (0, 1)")
    if n < 2:
        raise ValueError("this family needs n >= 2")
    eps, gamma = float(eps), float(gamma)

    def core(r):
        return (r * r + eps) ** gamma

    def u_d1(r):
        return -2.0 * gamma * r * (r * r + eps) ** (gamma - 1.0)

    def u_d2(r):
        s = r * r + eps
        return -2.0 * gamma * s ** (gamma - 2.0) * (s + 2.0 * (gamma - 1.0) * r * r)

    u = ScalarProfile(eval=lambda r: (1.0 + eps) ** gamma - core(r), d1=u_d1, d2=u_d2)

    def f_eval(r):
        return 2.0 * gamma * (r * r + eps) ** (gamma - 2.0) * ((n - 2.0 + 2.0 * gamma) * r * r + n * eps)

    f = ScalarProfile(eval=f_eval)
    spec = OperatorSpec(n=n, R=1.0)
    _assert_positive(f, 0.0, 1.0, "loggrad right-hand side")
    facts = {
        "f_at_0": float(2.0 * gamma * n * eps ** (gamma - 1.0)),
        "grad_at_sqrt_eps": float(2.0 * gamma * np.sqrt(eps) * (2.0 * eps) ** (gamma - 1.0)),
        "u_at_0": float((1.0 + eps) ** gamma - eps ** gamma),
    }
    return ClosedFormCase("loggrad", eps, spec, u, f, facts)


# ---------------------------------------------------------------------------
# necessity of f >= 0 in the inhomogeneous log-gradient bound (1D).


def make_1d_negative_f_case() -> ClosedFormCase:
    def guard(x):
        x = np.asarray(x, dtype=float)
        if np.any(x <= 0.0):
            raise ValueError("u(x)=exp(-1/x) is evaluated on x > 0 only")
        return x

    u = ScalarProfile(
        eval=lambda x: np.exp(-1.0 / guard(x)),
        d1=lambda x: np.exp(-1.0 / guard(x)) / x ** 2,
        d2=lambda x: np.exp(-1.0 / guard(x)) * (1.0 / x ** 4 - 2.0 / x ** 3),
        kind="cartesian",
    )
    # f = -u'' changes sign at x = 1/2, so f >= 0 fails on (0,1)
    f = ScalarProfile(
        eval=lambda x: np.exp(-1.0 / guard(x)) * (2.0 / x ** 3 - 1.0 / x ** 4),
        kind="cartesian",
    )
    spec = OperatorSpec(n=1, R=0.5)  # the interval (0,1) recentred has half-width 1/2
    facts = {
        "u_at_1": float(np.exp(-1.0)),
        "xlogdiff_is_inverse_x": 1.0,   # x |u'|/u = 1/x exactly
        "interval": (0.0, 1.0),
    }
    return ClosedFormCase("negative-f-1d", 1.0, spec, u, f, facts,
                          sample_range=(0.05, 1.0))


# ---------------------------------------------------------------------------
# gradient-estimate optimality via high eigenfunction-like oscillation:
# u = sin(lam phi), phi = (1-r^2)/2, with -Delta u - lam^2 r^2 u = n lam cos(lam phi).


def make_eig_gradopt_case(lam: float, n: int) -> ClosedFormCase:
    if lam <= 0:
        raise ValueError("lam must be positive")
    lam = float(lam)

    def phi(r):
        return 0.5 * (1.0 - r * r)

    u = ScalarProfile(
        eval=lambda r: np.sin(lam * phi(r)),
        d1=lambda r: -lam * r * np.cos(lam * phi(r)),
        d2=lambda r: -lam * np.cos(lam * phi(r)) - lam * lam * r * r * np.sin(lam * phi(r)),
    )
    c = ScalarProfile(
        eval=lambda r: -lam * lam * r * r,
        d1=lambda r: -2.0 * lam * lam * r,
        d2=lambda r: np.full_like(np.asarray(r, dtype=float), -2.0 * lam * lam),
    )
    f = ScalarProfile(eval=lambda r: n * lam * np.cos(lam * phi(r)))
    spec = OperatorSpec(n=n, R=1.0, c=c)
    facts = {
        "sup_u": 1.0 if lam >= np.pi else float(np.sin(lam / 2.0)),
        "sup_grad_approx": lam,
        "u_at_0": float(np.sin(lam / 2.0)),
    }
    return ClosedFormCase("eig-gradopt", lam, spec, u, f, facts)


def make_constant_case(spec: OperatorSpec) -> ClosedFormCase:
    """u == 1; L 1 = c when b1 == 0 (an exactness audit of the evaluator)."""
    if spec.b1 is not None:
        raise ValueError("the constant case requires b1 == 0")
    u = constant(1.0)
    f = spec.c if spec.c is not None else constant(0.0)
    return ClosedFormCase("constant", 1.0, spec, u, f, {"u_at_0": 1.0})


DEFAULT_CASES = {
    "schrodinger-linfty": lambda: make_schrodinger_linfty(10.0, 2),
    "drift-linfty": lambda: make_drift_linfty(8.0, 2),
    "hopf-schrodinger": lambda: make_hopf_case(8.0, 2, "schrodinger"),
    "hopf-drift": lambda: make_hopf_case(8.0, 2, "drift"),
    "harnack-schrodinger": lambda: make_harnack_case(5, 3, "schrodinger"),
    "harnack-drift": lambda: make_harnack_case(5, 3, "drift"),
    "harnack-inhom": lambda: make_harnack_inhom_case(5, 3),
    "landis": lambda: make_landis_case(2),
    "loggrad": lambda: make_loggrad_case(0.01, 0.1, 2),
    "negative-f-1d": make_1d_negative_f_case,
    "eig-gradopt": lambda: make_eig_gradopt_case(20.0, 2),
}
