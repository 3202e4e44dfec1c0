"""Finite-difference machinery for radial Dirichlet/eigenvalue problems.

The radial operator L u = -(1/r^{n-1}) (r^{n-1} (a u' + beta1 u))' + beta2 u' + c u
is discretized in conservative (finite-volume) form on the grid r_i = i h,
i = 0..m, h = R/(m+1), with u(R) = 0 and the regularity closure u'(0) = 0 at
the origin.  Rows are scaled by exact cell volumes w_i, which makes the pure
diffusion stencil exact on quadratics and gives the discrete duality
(W A_adj) = (W A)^T bit-for-bit, where A_adj is the assembly with b1 and b2
swapped.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as sla

from .operators import OperatorSpec, adjoint_spec
from .profiles import ScalarProfile

Array = np.ndarray


class ResonanceError(RuntimeError):
    """The discrete system is (near-)singular: lambda1 is about zero."""


class NonPrincipalModeError(RuntimeError):
    """Eigen iteration locked onto a sign-changing mode and restarts failed."""


@dataclass(frozen=True)
class RadialGrid:
    n: int
    R: float
    m: int

    def __post_init__(self):
        if self.m < 16:
            raise ValueError("need at least 16 interior nodes")
        if self.n < 1:
            raise ValueError("n must be >= 1")

    @property
    def h(self) -> float:
        return self.R / (self.m + 1)

    @property
    def r(self) -> Array:
        return self.h * np.arange(self.m + 1)

    @property
    def half_nodes(self) -> Array:
        return self.h * (np.arange(self.m + 1) + 0.5)

    @property
    def weights(self) -> Array:
        """Exact cell volumes (without the |S^{n-1}| angular factor)."""
        rp = self.half_nodes
        rm = np.maximum(rp - self.h, 0.0)
        return (rp ** self.n - rm ** self.n) / self.n

    def volume_weights(self) -> Array:
        """Full cell volumes including the angular factor (for integrals)."""
        from .domains import sphere_area
        return sphere_area(self.n) * self.weights

    @property
    def dist(self) -> Array:
        return self.R - self.r


@dataclass(frozen=True)
class TridiagOperator:
    grid: RadialGrid
    diag: Array
    sup: Array  # coefficient of u_{i+1}, length m
    sub: Array  # coefficient of u_{i-1}, length m
    boundary_col: float  # coefficient of u(R) in the last row

    def apply(self, u: Array, u_boundary: float = 0.0) -> Array:
        out = self.diag * u
        out[:-1] += self.sup * u[1:]
        out[1:] += self.sub * u[:-1]
        out[-1] += self.boundary_col * u_boundary
        return out

    def weighted_bands(self) -> tuple[Array, Array, Array]:
        """(W diag, W sup, W sub): the symmetric-dual scaled bands."""
        w = self.grid.weights
        return w * self.diag, w[:-1] * self.sup, w[1:] * self.sub


def _coef_at(prof: ScalarProfile | None, pts: Array, default: float) -> Array:
    if prof is None:
        return np.full_like(pts, default)
    return prof(pts)


def assemble(spec: OperatorSpec, grid: RadialGrid) -> TridiagOperator:
    if spec.n != grid.n:
        raise ValueError("spec and grid dimensions disagree")
    h = grid.h
    rp = grid.half_nodes          # r_{i+1/2}, i = 0..m
    sp = rp ** (grid.n - 1)
    sm = np.r_[0.0, sp[:-1]]      # r_{i-1/2}^{n-1}, zero flux at the origin
    ap = _coef_at(spec.A, rp, 1.0)
    b1p = _coef_at(spec.b1, rp, 0.0)
    b2p = _coef_at(spec.b2, rp, 0.0)
    am = np.r_[0.0, ap[:-1]]
    b1m = np.r_[0.0, b1p[:-1]]
    b2m = np.r_[0.0, b2p[:-1]]
    w = grid.weights
    c = _coef_at(spec.c, grid.r, 0.0)
    diag = (sp * (ap / h - b1p / 2 - b2p / 2) + sm * (am / h + b1m / 2 + b2m / 2)) / w + c
    sup_full = sp * (-ap / h - b1p / 2 + b2p / 2) / w
    sub_full = sm * (-am / h + b1m / 2 - b2m / 2) / w
    return TridiagOperator(grid=grid, diag=diag, sup=sup_full[:-1],
                           sub=sub_full[1:], boundary_col=float(sup_full[-1]))


def assemble_adjoint(spec: OperatorSpec, grid: RadialGrid) -> TridiagOperator:
    return assemble(adjoint_spec(spec), grid)


@dataclass
class DiscreteSolution:
    grid: RadialGrid
    u: Array
    u_boundary: float = 0.0
    grad: Array = field(init=False)

    def __post_init__(self):
        g = np.empty_like(self.u)
        h = self.grid.h
        g[1:-1] = (self.u[2:] - self.u[:-2]) / (2 * h)
        g[0] = 0.0  # radial regularity u'(0) = 0
        if len(self.u) >= 2:
            g[-1] = (self.u_boundary - self.u[-2]) / (2 * h)
        self.grad = g

    @property
    def u_over_d(self) -> Array:
        return self.u / self.grid.dist

    def normal_derivative(self) -> float:
        """Order-2 one-sided u'(R); the boundary limit of u/d is -u'(R)."""
        h = self.grid.h
        return float((3.0 * self.u_boundary - 4.0 * self.u[-1] + self.u[-2]) / (2 * h))

    @classmethod
    def from_profile(cls, grid: RadialGrid, profile: ScalarProfile,
                     boundary: float | None = None) -> "DiscreteSolution":
        vals = profile(grid.r)
        ub = float(profile(np.array([grid.R]))[0]) if boundary is None else boundary
        return cls(grid=grid, u=vals, u_boundary=ub)


def _rhs_values(f, grid: RadialGrid) -> Array:
    if isinstance(f, ScalarProfile):
        return f(grid.r)
    arr = np.asarray(f, dtype=float)
    if arr.shape != grid.r.shape:
        raise ValueError("right-hand side has the wrong length")
    return arr


def _thomas_min_pivot(op: TridiagOperator) -> float:
    """Smallest |pivot| of the unpivoted elimination, relative to the scale."""
    diag, sup, sub = op.diag, op.sup, op.sub
    scale = np.max(np.abs(diag)) or 1.0
    piv = diag[0]
    worst = abs(piv)
    for i in range(1, len(diag)):
        if piv == 0.0:
            return 0.0
        piv = diag[i] - sub[i - 1] * sup[i - 1] / piv
        worst = min(worst, abs(piv))
    return worst / scale


def _banded_solve(op: TridiagOperator, rhs: Array) -> Array:
    mm = len(op.diag)
    ab = np.zeros((3, mm))
    ab[0, 1:] = op.sup
    ab[1, :] = op.diag
    ab[2, :-1] = op.sub
    return sla.solve_banded((1, 1), ab, rhs)


def solve_dirichlet(spec: OperatorSpec, grid: RadialGrid, f,
                    pivot_tol: float = 1e-13) -> DiscreteSolution:
    """Direct tridiagonal solve of L u = f, u(R) = 0."""
    op = spec if isinstance(spec, TridiagOperator) else assemble(spec, grid)
    rhs = _rhs_values(f, op.grid)
    if _thomas_min_pivot(op) < pivot_tol:
        raise ResonanceError("discrete operator is singular: lambda1 is about zero")
    u = _banded_solve(op, rhs)
    # one step of iterative refinement keeps the relative residual near eps
    resid = rhs - op.apply(u)
    u = u + _banded_solve(op, resid)
    return DiscreteSolution(grid=op.grid, u=u)


def solve_adjoint(spec: OperatorSpec, grid: RadialGrid, g) -> DiscreteSolution:
    return solve_dirichlet(assemble_adjoint(spec, grid), grid, g)


@dataclass
class EigenResult:
    lambda1: float
    phi1: DiscreteSolution
    iterations: int
    residual: float


def _gershgorin_lower(op: TridiagOperator) -> float:
    radius = np.zeros_like(op.diag)
    radius[:-1] += np.abs(op.sup)
    radius[1:] += np.abs(op.sub)
    return float(np.min(op.diag - radius))


def _symmetrized_lambda1(op: TridiagOperator) -> float | None:
    """Leftmost eigenvalue via the diagonal similarity to a symmetric
    tridiagonal; available whenever all off-diagonal products are positive
    (true on drift-resolved grids)."""
    prod = op.sup * op.sub
    if len(prod) and np.min(prod) <= 0.0:
        return None
    return float(sla.eigvalsh_tridiagonal(op.diag, np.sqrt(prod),
                                          select="i", select_range=(0, 0))[0])


def principal_eigen(spec: OperatorSpec, grid: RadialGrid, tol: float = 1e-10,
                    maxit: int = 200) -> EigenResult:
    """Principal eigenpair of the discrete operator by shifted inverse power
    iteration; the starting shift comes from the symmetrized tridiagonal when
    available, else from the Gershgorin lower bound."""
    op = spec if isinstance(spec, TridiagOperator) else assemble(spec, grid)
    grid = op.grid
    scale = max(1.0, float(np.max(np.abs(op.diag))))
    lam_sym = _symmetrized_lambda1(op)
    if lam_sym is not None:
        sigma = lam_sym - 1e-10 * max(1.0, abs(lam_sym)) - 1e-13 * scale
    else:
        g = _gershgorin_lower(op)
        sigma = min(0.0, g) - 0.1 * (1.0 + abs(g))
    v = np.ones(len(op.diag))
    rho, res = np.inf, np.inf
    restarts = 0
    converged = False
    it = 0
    for it in range(1, maxit + 1):
        shifted = TridiagOperator(grid=grid, diag=op.diag - sigma, sup=op.sup,
                                  sub=op.sub, boundary_col=op.boundary_col)
        try:
            v_new = _banded_solve(shifted, v)
        except Exception:
            sigma -= 0.1 * (1.0 + abs(sigma))
            continue
        if not np.all(np.isfinite(v_new)):
            sigma -= 1e-8 * max(1.0, abs(sigma))
            v = np.ones_like(v)
            continue
        peak = v_new[np.argmax(np.abs(v_new))]
        v = v_new / peak
        av = op.apply(v)
        rho_new = float(v @ av / (v @ v))
        res = float(np.linalg.norm(av - rho_new * v) / np.linalg.norm(v))
        if np.min(v) < -1e-6:
            # locked onto a sign-changing mode: restart from below
            restarts += 1
            if restarts > 5:
                raise NonPrincipalModeError("eigenvector keeps changing sign")
            sigma = rho_new - abs(rho_new - sigma) * 4.0 - 1.0
            v = np.ones_like(v)
            continue
        rho = rho_new
        if res <= tol * max(1.0, abs(rho_new)):
            converged = True
            break
        # adaptive shift kept strictly below the current Rayleigh estimate
        sigma = rho_new - max(4.0 * res, 1e-13 * max(1.0, abs(rho_new)))
    if not converged:
        raise RuntimeError(f"eigen iteration did not converge in {maxit} steps "
                           f"(residual {res:.2e})")
    return EigenResult(lambda1=float(rho),
                       phi1=DiscreteSolution(grid=grid, u=v / np.max(v)),
                       iterations=it, residual=res)


# ---------------------------------------------------------------------------
# Green-identity audit:  int (v L u - u L* v) = oint nu . A^T u grad(v) dsigma
# for v vanishing on the boundary.


def green_identity_residual(spec: OperatorSpec, grid: RadialGrid,
                            u: DiscreteSolution, v: DiscreteSolution) -> float:
    from .domains import sphere_area
    if abs(v.u_boundary) > 1e-12:
        raise ValueError("the identity requires v = 0 on the boundary")
    op = assemble(spec, grid)
    op_adj = assemble_adjoint(spec, grid)
    w = grid.volume_weights()
    volume = float(np.sum(w * (v.u * op.apply(u.u, u.u_boundary)
                               - u.u * op_adj.apply(v.u, v.u_boundary))))
    aR = float(spec.A(np.array([grid.R]))[0])
    vprime = (3.0 * v.u_boundary - 4.0 * v.u[-1] + v.u[-2]) / (2 * grid.h)
    boundary = sphere_area(spec.n, grid.R) * aR * u.u_boundary * vprime
    return abs(volume - boundary)


# ---------------------------------------------------------------------------
# derived scalar statistics of a discrete radial profile


@dataclass
class ProfileStats:
    sup_u: float
    sup_u_over_d: float
    inf_u_over_d: float
    sup_grad: float
    normal_derivative: float
    weak_harnack_quasinorm: float
    holder_grad: float | None = None


def profile_stats(sol: DiscreteSolution, epsilon_wh: float = 0.5,
                  alpha: float | None = None, pair_cap: int = 1500) -> ProfileStats:
    """Scalar functionals of a discrete solution.

    u/d is evaluated at nodes with d >= h only, and the boundary limit of u/d
    (= -u'(R), the normal-derivative extrapolation) joins the candidate set
    whenever the boundary value vanishes.
    """
    if epsilon_wh <= 0:
        raise ValueError("the weak-Harnack exponent must be positive")
    grid = sol.grid
    d = grid.dist
    mask = d >= grid.h * (1.0 - 1e-12)
    ud = sol.u[mask] / d[mask]
    unu = -sol.normal_derivative()
    candidates = ud if abs(sol.u_boundary) > 0 else np.r_[ud, unu]
    w = grid.volume_weights()[mask]
    quasi = float((np.sum(w * np.abs(ud) ** epsilon_wh) / np.sum(w)) ** (1.0 / epsilon_wh))
    hg = None
    if alpha is not None:
        idx = np.linspace(0, grid.m, min(pair_cap, grid.m + 1)).astype(int)
        g, rr = sol.grad[idx], grid.r[idx]
        dg = np.abs(g[:, None] - g[None, :])
        dr = np.abs(rr[:, None] - rr[None, :])
        np.fill_diagonal(dr, np.inf)
        hg = float(np.max(dg / dr ** alpha))
    return ProfileStats(
        sup_u=float(np.max(sol.u)),
        sup_u_over_d=float(np.max(candidates)),
        inf_u_over_d=float(np.min(candidates)),
        sup_grad=float(np.max(np.abs(sol.grad))),
        normal_derivative=unu,
        weak_harnack_quasinorm=quasi,
        holder_grad=hg,
    )
