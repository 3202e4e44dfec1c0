"""Uniformly local Lebesgue norms, Hoelder brackets, and the coefficient
magnitude M with its fixed-point radius r0.

The uniformly local norm sup_{x in Omega} ||h||_{L^q(Omega cap B_r(x))} is
computed for radial fields on balls/intervals by slicing the integral over
spheres: the measure of {|y| = rho} cap B_r(x) has a closed form (arc/cap),
so each center costs one 1D quadrature.  All grids are sized relative to R,
which makes the scaling identities exact up to the root-finder tolerance.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .domains import Domain, sphere_area
from .operators import OperatorSpec
from .profiles import ScalarProfile, add

Array = np.ndarray


@dataclass(frozen=True)
class Quadrature:
    """Deterministic quadrature configuration.

    grid_points_per_R: number of radial cells across one domain radius (the
    resolution is relative to R, so rescaled problems quadrature identically).
    """
    grid_points_per_R: int = 256
    center_sample_count: int = 96
    pair_sample_budget: int = 200_000

    def __post_init__(self):
        for v in (self.grid_points_per_R, self.center_sample_count, self.pair_sample_budget):
            if v < 8:
                raise ValueError("quadrature sample counts must be >= 8")


DEFAULT_QUAD = Quadrature()


def beta_exponent(q: float, n: int) -> float:
    return 1.0 if np.isinf(q) else 1.0 / (1.0 - n / q)


def gamma_exponent(q: float, n: int) -> float:
    return 0.5 if np.isinf(q) else 1.0 / (2.0 - n / q)


def _radial_cells(dom: Domain, quad: Quadrature) -> tuple[Array, float]:
    G = quad.grid_points_per_R
    h = dom.R / G
    return h * (np.arange(G) + 0.5), h


def _slice_measure(rho: Array, s: float, r: float, n: int) -> Array:
    """Measure of the sphere {|y|=rho} intersected with B_r(s e1)."""
    rho = np.asarray(rho, dtype=float)
    if n == 1:
        inner = (np.abs(rho - s) < r).astype(float)
        outer = (rho + s < r).astype(float)
        return inner + outer
    full = sphere_area(n) * rho ** (n - 1)
    if s == 0.0:
        return np.where(rho < r, full, 0.0)
    cosw = (s * s + rho * rho - r * r) / (2.0 * s * np.maximum(rho, 1e-300))
    theta = np.arccos(np.clip(cosw, -1.0, 1.0))
    if n == 2:
        part = 2.0 * rho * theta
    elif n == 3:
        part = 2.0 * np.pi * rho * rho * (1.0 - np.cos(theta))
    else:
        raise ValueError(f"finite-q uniformly local norms support n<=3, got n={n}")
    return np.where(rho + s <= r, full, np.where(np.abs(rho - s) >= r, 0.0, part))


def lebesgue_norm(field: ScalarProfile, q: float, dom: Domain,
                  quad: Quadrature = DEFAULT_QUAD) -> float:
    """Plain ||field||_{L^q(Omega)} by midpoint quadrature (sup for q=inf)."""
    rho, h = _radial_cells(dom, quad)
    vals = np.abs(field(rho))
    if np.isinf(q):
        edge = np.abs(field(np.array([0.0, dom.R])))
        return float(max(np.max(vals), np.max(edge)))
    kernel = sphere_area(dom.n) * rho ** (dom.n - 1)
    return float((np.sum(vals ** q * kernel) * h) ** (1.0 / q))


def weighted_l1d_norm(field: ScalarProfile, dom: Domain,
                      quad: Quadrature = DEFAULT_QUAD) -> float:
    """||field||_{L^1_d}: the L^1 norm weighted by distance to the boundary."""
    rho, h = _radial_cells(dom, quad)
    kernel = sphere_area(dom.n) * rho ** (dom.n - 1)
    return float(np.sum(np.abs(field(rho)) * (dom.R - rho) * kernel) * h)


def ul_lebesgue_norm(field: ScalarProfile, q: float, r: float, dom: Domain,
                     quad: Quadrature = DEFAULT_QUAD) -> float:
    """sup over centers x in Omega of ||field||_{L^q(Omega cap B_r(x))}."""
    if r <= 0:
        raise ValueError("localization radius must be positive")
    if not np.isinf(q) and q <= dom.n:
        raise ValueError(f"integrability exponent must exceed n={dom.n}")
    if np.isinf(q):
        # sup norm over the whole domain, independent of r
        return lebesgue_norm(field, np.inf, dom, quad)
    if dom.kind == "square":
        return _ul_norm_square(field, q, r, dom, quad)
    rho, h = _radial_cells(dom, quad)
    vq = np.abs(field(rho)) ** q
    centers = np.linspace(0.0, dom.R, quad.center_sample_count)
    best = 0.0
    for s in centers:
        kern = _slice_measure(rho, float(s), r, dom.n)
        best = max(best, float(np.sum(vq * kern) * h))
    return best ** (1.0 / q)


def _ul_norm_square(field: ScalarProfile, q: float, r: float, dom: Domain,
                    quad: Quadrature) -> float:
    # Cartesian midpoint grid; the field is radial about the square's center.
    G = min(quad.grid_points_per_R, 128)
    h = 2.0 * dom.R / G
    xs = -dom.R + h * (np.arange(G) + 0.5)
    X, Y = np.meshgrid(xs, xs, indexing="ij")
    vq = np.abs(field(np.hypot(X, Y))) ** q
    k = max(2, int(quad.center_sample_count ** 0.5))
    cs = np.linspace(-dom.R, dom.R, k)
    best = 0.0
    for cx in cs:
        for cy in cs:
            mask = (X - cx) ** 2 + (Y - cy) ** 2 < r * r
            best = max(best, float(np.sum(vq[mask]) * h * h))
    return best ** (1.0 / q)


def ul_holder_bracket(field: ScalarProfile, alpha: float, r: float, dom: Domain,
                      quad: Quadrature = DEFAULT_QUAD, vector: bool = False) -> float:
    """sup over localized pairs of |psi(y)-psi(z)| / |y-z|^alpha.

    For radial scalar fields the supremum is attained on collinear same-ray
    pairs; vector fields (radial component of a drift) additionally see
    opposite-ray and same-radius angular pairs, which are included when
    ``vector`` is set.  Any pair with |y-z| <= 2r sits in some B_r(x), x in
    the (convex) domain, so the localization constraint is just a distance cap.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must lie in (0,1)")
    if r <= 0:
        raise ValueError("localization radius must be positive")
    cap = min(2.0 * r, dom.diameter)
    G = min(quad.grid_points_per_R, int(np.sqrt(2.0 * quad.pair_sample_budget)))
    if field.kind == "cartesian":
        grid = np.linspace(-dom.R, dom.R, 2 * G + 1)
    else:
        grid = np.linspace(0.0, dom.R, G + 1)
    vals = field(grid)
    diff = np.abs(vals[:, None] - vals[None, :])
    dist = np.abs(grid[:, None] - grid[None, :])
    mask = (dist > 0) & (dist <= cap)
    best = float(np.max(np.where(mask, diff / np.where(mask, dist, 1.0) ** alpha, 0.0)))
    if vector and field.kind == "radial":
        # opposite-ray pairs: values add (outward components), distance rho1+rho2
        summ = np.abs(vals[:, None] + vals[None, :])
        dsum = grid[:, None] + grid[None, :]
        m2 = (dsum > 0) & (dsum <= cap)
        best = max(best, float(np.max(np.where(m2, summ / np.where(m2, dsum, 1.0) ** alpha, 0.0))))
        # angular pairs at fixed radius: |y-z| up to min(2r, 2 rho)
        pos = grid > 0
        rho = grid[pos]
        chord = np.minimum(cap, 2.0 * rho)
        best = max(best, float(np.max(np.abs(vals[pos]) * chord ** (1.0 - alpha) / rho)))
    return best


# ---------------------------------------------------------------------------
# the magnitude M, its variants, and the fixed-point radius r0


@dataclass(frozen=True)
class NormBreakdown:
    q: float
    alpha: float
    beta_q: float
    gamma_q: float
    r0: float
    holder_A: float
    b1_sup: float
    holder_b1: float
    b2_ul: float
    c_ul: float
    M: float
    r_Omega: float
    variant: str = "standard"
    kappa: float | None = None


VARIANTS = ("standard", "mstar", "mhat")


def _term_sum(spec: OperatorSpec, dom: Domain, q: float, alpha: float,
              quad: Quadrature, variant: str, kappa: float | None):
    """Returns f(r) -> (sum of exponentiated norms at radius r, parts dict)."""
    n = dom.n
    bq = beta_exponent(q, n)
    gq = gamma_exponent(q, n)
    b1_sup = lebesgue_norm(spec.b1, np.inf, dom, quad) if spec.b1 is not None else 0.0

    def parts_at(r: float) -> dict:
        parts = dict(holder_A=0.0, b1_sup=0.0, holder_b1=0.0, b2_ul=0.0, c_ul=0.0)
        if variant == "standard":
            if spec.A is not None:
                parts["holder_A"] = ul_holder_bracket(spec.A, alpha, r, dom, quad)
            if spec.b1 is not None:
                parts["b1_sup"] = b1_sup
                parts["holder_b1"] = ul_holder_bracket(spec.b1, alpha, r, dom, quad, vector=True)
            if spec.b2 is not None:
                parts["b2_ul"] = ul_lebesgue_norm(spec.b2, q, r, dom, quad)
            if spec.c is not None:
                parts["c_ul"] = ul_lebesgue_norm(spec.c, q, r, dom, quad)
        elif variant == "mstar":
            if spec.A is not None:
                parts["holder_A"] = ul_holder_bracket(spec.A, alpha, r, dom, quad)
            drift = None
            if spec.b1 is not None and spec.b2 is not None:
                drift = add(spec.b1, spec.b2)
            else:
                drift = spec.b1 or spec.b2
            if drift is not None:
                parts["b2_ul"] = ul_lebesgue_norm(drift, q, r, dom, quad)
        else:  # mhat: holder_b1 slot carries ||b1||_{q,r} (no brackets here)
            if spec.b1 is not None:
                parts["holder_b1"] = ul_lebesgue_norm(spec.b1, q, r, dom, quad)
            if spec.b2 is not None:
                parts["b2_ul"] = ul_lebesgue_norm(spec.b2, q, r, dom, quad)
            if spec.c is not None:
                p = q / 2.0 if not np.isinf(q) else np.inf
                if not np.isinf(p) and p <= n:
                    raise ValueError("the weak variant needs q/2 > n")
                parts["c_ul"] = ul_lebesgue_norm(spec.c, p, r, dom, quad)
        return parts

    def total(parts: dict) -> float:
        if variant == "standard":
            return (parts["holder_A"] ** (1.0 / alpha) + parts["b1_sup"]
                    + parts["holder_b1"] ** (1.0 / (1.0 + alpha))
                    + parts["b2_ul"] ** bq + parts["c_ul"] ** gq)
        if variant == "mstar":
            return parts["holder_A"] ** (1.0 / alpha) + parts["b2_ul"] ** bq
        gp = gamma_exponent(q / 2.0 if not np.isinf(q) else np.inf, n)
        return (parts["holder_b1"] ** bq + parts["b2_ul"] ** bq
                + parts["c_ul"] ** gp)

    return parts_at, total


def compute_M(spec: OperatorSpec, dom: Domain, q: float = np.inf,
              alpha: float = 0.5, quad: Quadrature = DEFAULT_QUAD,
              variant: str = "standard", kappa: float | None = None,
              rel_tol: float = 1e-10, max_iter: int = 200) -> NormBreakdown:
    """Solve r (base^{-1} + S(r)) = 1 for r0 and report the breakdown.

    base is r_Omega (standard and mstar variants) or kappa (the weak variant);
    S(r) is the variant's sum of exponentiated uniformly local norms, so the
    identity r0^{-1} = base^{-1} + M holds at the root by construction.
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    if variant == "mhat":
        if kappa is None:
            raise ValueError("the weak variant requires kappa")
        base = float(kappa)
    else:
        base = dom.r_omega
    if not np.isinf(q):
        if q <= dom.n:
            raise ValueError("q must exceed n")
        if alpha >= 1.0 - dom.n / q:
            raise ValueError("alpha must satisfy alpha < 1 - n/q")
    parts_at, total = _term_sum(spec, dom, q, alpha, quad, variant, kappa)

    def hval(r: float) -> float:
        s = total(parts_at(r))
        if not np.isfinite(s):
            raise ValueError("non-finite coefficient norm encountered")
        return r * (1.0 / base + s)

    lo, hi = 0.0, base
    if hval(hi) <= 1.0 + 1e-15:
        r0 = base
    else:
        for _ in range(max_iter):
            mid = 0.5 * (lo + hi)
            if hval(mid) > 1.0:
                hi = mid
            else:
                lo = mid
            if hi - lo <= rel_tol * hi:
                break
        r0 = 0.5 * (lo + hi)
    parts = parts_at(r0)
    M = total(parts)
    return NormBreakdown(
        q=q, alpha=alpha,
        beta_q=beta_exponent(q, dom.n), gamma_q=gamma_exponent(q, dom.n),
        r0=r0,
        holder_A=parts["holder_A"], b1_sup=parts["b1_sup"],
        holder_b1=parts["holder_b1"], b2_ul=parts["b2_ul"], c_ul=parts["c_ul"],
        M=M, r_Omega=dom.r_omega, variant=variant, kappa=kappa,
    )


def compute_r0(spec: OperatorSpec, dom: Domain, q: float = np.inf,
               alpha: float = 0.5, quad: Quadrature = DEFAULT_QUAD,
               **kwargs) -> float:
    return compute_M(spec, dom, q, alpha, quad, **kwargs).r0


def nonlinear_scaling_probe(b_or_c: ScalarProfile, role: str, lambdas,
                            dom: Domain, q: float,
                            quad: Quadrature = DEFAULT_QUAD,
                            alpha: float = 0.25) -> list[tuple[float, float]]:
    """Curve lam -> ||lam * b||_{q, r_lam} with r_lam recomputed per lam.

    The log-log slope tends to 1 - n/q for drifts and 1 - n/(2q) for
    potentials (the norms obey a nonlinear scaling because r0 depends on the
    coefficient itself).
    """
    if role not in ("drift", "potential"):
        raise ValueError("role must be 'drift' or 'potential'")
    if np.isinf(q) or q <= dom.n:
        raise ValueError("the probe needs a finite exponent q > n")
    from .profiles import scale
    if alpha >= 1.0 - dom.n / q:
        alpha = 0.5 * (1.0 - dom.n / q)
    out = []
    for lam in lambdas:
        scaled = scale(b_or_c, float(lam))
        spec = (OperatorSpec(n=dom.n, R=dom.R, b2=scaled) if role == "drift"
                else OperatorSpec(n=dom.n, R=dom.R, c=scaled))
        r_lam = compute_r0(spec, dom, q, alpha, quad)
        out.append((float(lam), ul_lebesgue_norm(scaled, q, r_lam, dom, quad)))
    return out
