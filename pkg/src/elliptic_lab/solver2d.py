"""Constant-coefficient 2D backend on the square [-R, R]^2.

Only constant coefficients are supported: for constant b1 the divergence
drift reduces to an ordinary one, div(b1 u) = b1 . grad(u), so the operator
is L u = -a Laplacian(u) + (b2 - b1) . grad(u) + c u, discretized with the
5-point stencil and centered first differences.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

Array = np.ndarray


@dataclass(frozen=True)
class Grid2D:
    R: float
    m: int  # interior nodes per direction

    def __post_init__(self):
        if self.m < 8:
            raise ValueError("need at least 8 interior nodes per direction")

    @property
    def h(self) -> float:
        return 2.0 * self.R / (self.m + 1)

    @property
    def x(self) -> Array:
        return -self.R + self.h * np.arange(1, self.m + 1)

    def dist(self) -> Array:
        X, Y = np.meshgrid(self.x, self.x, indexing="ij")
        return np.minimum(self.R - np.abs(X), self.R - np.abs(Y))


def assemble2d(grid: Grid2D, a: float = 1.0, b1=(0.0, 0.0), b2=(0.0, 0.0),
               c: float = 0.0) -> sp.csr_matrix:
    if a <= 0:
        raise ValueError("diffusion constant must be positive")
    m, h = grid.m, grid.h
    be = (float(b2[0]) - float(b1[0]), float(b2[1]) - float(b1[1]))
    ex = np.ones(m)
    lap1 = sp.diags([-ex[:-1], 2 * ex, -ex[:-1]], [-1, 0, 1]) / (h * h)
    d1 = sp.diags([-ex[:-1], ex[:-1]], [-1, 1]) / (2 * h)
    eye = sp.identity(m)
    A = (a * (sp.kron(lap1, eye) + sp.kron(eye, lap1))
         + be[0] * sp.kron(d1, eye) + be[1] * sp.kron(eye, d1)
         + c * sp.identity(m * m))
    return A.tocsr()


def solve2d(A: sp.csr_matrix, f: Array, tol: float = 1e-12) -> Array:
    """Iterative stabilized solve (BiCGStab + ILU), direct fallback."""
    rhs = np.asarray(f, dtype=float).ravel()
    try:
        ilu = spla.spilu(A.tocsc(), drop_tol=1e-5, fill_factor=20)
        pre = spla.LinearOperator(A.shape, ilu.solve)
        u, info = spla.bicgstab(A, rhs, rtol=tol, atol=0.0, M=pre, maxiter=400)
        if info == 0:
            return u
    except RuntimeError:
        pass
    return spla.spsolve(A.tocsc(), rhs)


def eigen2d(A: sp.csr_matrix, tol: float = 1e-10, maxit: int = 200
            ) -> tuple[float, Array, int]:
    """Principal eigenvalue by shifted inverse power iteration with a
    positivity guard (the principal mode has a sign-definite eigenvector)."""
    mm = A.shape[0]
    # Gershgorin lower bound for the starting shift
    diag = A.diagonal()
    radius = np.abs(A).sum(axis=1).A1 - np.abs(diag)
    sigma = float(np.min(diag - radius)) - 1.0
    v = np.ones(mm)
    rho, res = np.inf, np.inf
    lu = None
    sigma_built = None
    restarts = 0
    for it in range(1, maxit + 1):
        if lu is None or sigma != sigma_built:
            lu = spla.splu((A - sigma * sp.identity(mm)).tocsc())
            sigma_built = sigma
        v_new = lu.solve(v)
        if not np.all(np.isfinite(v_new)):
            sigma -= 1.0
            lu = None
            v = np.ones(mm)
            continue
        v = v_new / v_new[np.argmax(np.abs(v_new))]
        av = A @ v
        rho_new = float(v @ av / (v @ v))
        res = float(np.linalg.norm(av - rho_new * v) / np.linalg.norm(v))
        if np.min(v) < -1e-6:
            restarts += 1
            if restarts > 5:
                raise RuntimeError("2D eigen iteration locked onto a non-principal mode")
            sigma = rho_new - abs(rho_new - sigma) * 4.0 - 1.0
            lu = None
            v = np.ones(mm)
            continue
        rho = rho_new
        if res <= tol * max(1.0, abs(rho_new)):
            return rho, v / np.max(v), it
        sigma = rho_new - max(4.0 * res, 1e-12 * max(1.0, abs(rho_new)))
    raise RuntimeError(f"2D eigen iteration did not converge (residual {res:.2e})")
