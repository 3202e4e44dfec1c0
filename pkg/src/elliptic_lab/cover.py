"""Coverings of balls by small balls with Harnack-chain structure.

build_cover produces centers x_1..x_I with: every center either on the
boundary sphere or at depth >= 3r/2; pairwise separation >= r/30; coverage
of the ball by the shrunken balls B_{5r/6}(x_j); and |Omega cap B_r(x_j)|
bounded below.  chain() returns shortest overlap-graph paths, whose edges
require center distance <= 11r/6, which certifies a two-ball lens volume
bounded below by lens_volume(11r/6, r, n).
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .domains import Domain, ball_volume

Array = np.ndarray

SEPARATION_FACTOR = 1.0 / 30.0   # forced by B_{4r/5}(y) subset B_{5r/6}(z) for |y-z| <= r/30
_NET_SPACING = 0.55              # net spacing (in units of r) targeting 4r/5 pre-thinning coverage


@dataclass(frozen=True)
class Covering:
    r: float
    centers: Array          # (I, n)
    kind: tuple[str, ...]   # per-center: "interior" (d >= 3r/2) or "boundary"
    domain: Domain

    @property
    def count(self) -> int:
        return len(self.centers)

    def min_cell_measure(self) -> float:
        """min_j |Omega cap B_r(x_j)| (exact lens for boundary centers)."""
        n, R = self.domain.n, self.domain.R
        full = ball_volume(n, self.r)
        worst = full
        for x, k in zip(self.centers, self.kind):
            if k == "boundary":
                worst = min(worst, _ball_ball_overlap(float(np.linalg.norm(x)), R, self.r, n))
        return worst


@dataclass(frozen=True)
class Chain:
    indices: tuple[int, ...]

    @property
    def p(self) -> int:
        return len(self.indices)


def lens_volume(center_distance: float, r: float, n: int) -> float:
    """Exact volume of the intersection of two balls of radius r."""
    d = float(center_distance)
    if n not in (2, 3):
        raise ValueError("closed-form lens volume supports n in {2, 3}")
    if d >= 2.0 * r:
        return 0.0
    if d <= 0.0:
        return ball_volume(n, r)
    if n == 2:
        return 2.0 * r * r * np.arccos(d / (2.0 * r)) - 0.5 * d * np.sqrt(4.0 * r * r - d * d)
    return np.pi * (4.0 * r + d) * (2.0 * r - d) ** 2 / 12.0


def _ball_ball_overlap(d: float, r1: float, r2: float, n: int) -> float:
    """|B_{r1}(0) cap B_{r2}(x)| at center distance d (general radii)."""
    if d >= r1 + r2:
        return 0.0
    if d <= abs(r1 - r2):
        return ball_volume(n, min(r1, r2))
    if n == 2:
        t1 = np.arccos((d * d + r1 * r1 - r2 * r2) / (2 * d * r1))
        t2 = np.arccos((d * d + r2 * r2 - r1 * r1) / (2 * d * r2))
        tri = 0.5 * np.sqrt(max(0.0, (-d + r1 + r2) * (d + r1 - r2) * (d - r1 + r2) * (d + r1 + r2)))
        return r1 * r1 * t1 + r2 * r2 * t2 - tri
    if n == 3:
        return (np.pi * (r1 + r2 - d) ** 2
                * (d * d + 2 * d * (r1 + r2) - 3 * (r1 - r2) ** 2) / (12 * d))
    raise ValueError("overlap supports n in {2, 3}")


def _sphere_net(rho: float, spacing: float, n: int) -> Array:
    """Deterministic near-uniform net on the sphere of radius rho."""
    if rho <= 0:
        return np.zeros((1, n))
    if n == 2:
        k = max(4, int(np.ceil(2.0 * np.pi * rho / spacing)))
        t = 2.0 * np.pi * np.arange(k) / k
        return rho * np.c_[np.cos(t), np.sin(t)]
    # Fibonacci sphere; the 3.5 safety factor keeps the covering radius
    # comfortably under `spacing`
    k = max(8, int(np.ceil((3.5 * rho / spacing) ** 2)))
    i = np.arange(k) + 0.5
    z = 1.0 - 2.0 * i / k
    phi_ang = np.pi * (1.0 + np.sqrt(5.0)) * i
    s = np.sqrt(np.maximum(0.0, 1.0 - z * z))
    return rho * np.c_[s * np.cos(phi_ang), s * np.sin(phi_ang), z]


def build_cover(dom: Domain, r: float) -> Covering:
    if dom.kind not in ("ball",) or dom.n not in (2, 3):
        raise ValueError("coverings are built for balls in dimension 2 or 3")
    R = dom.R
    if not 0.0 < r <= R / 4.0 * (1.0 + 1e-12):
        raise ValueError("covering radius must satisfy 0 < r <= R/4")
    s = _NET_SPACING * r
    pts: list[Array] = []
    kinds: list[str] = []
    bnet = _sphere_net(R, s, dom.n)
    pts.extend(bnet)
    kinds.extend(["boundary"] * len(bnet))
    rho = R - 1.5 * r
    while rho > 0.0:
        net = _sphere_net(rho, s, dom.n)
        pts.extend(net)
        kinds.extend(["interior"] * len(net))
        rho -= s
    pts.append(np.zeros(dom.n))
    kinds.append("interior")
    centers = np.asarray(pts)

    # greedy thinning at separation r/30: each removed point y has a kept z
    # with |y-z| <= r/30, hence B_{4r/5}(y) subset B_{5r/6}(z)
    eps2 = (SEPARATION_FACTOR * r) ** 2
    keep: list[int] = []
    kept_pts = np.empty((0, dom.n))
    for i in range(len(centers)):
        if len(keep) == 0 or np.min(((kept_pts - centers[i]) ** 2).sum(axis=1)) >= eps2:
            keep.append(i)
            kept_pts = np.vstack([kept_pts, centers[i]])
    centers = centers[keep]
    kinds = [kinds[i] for i in keep]
    return Covering(r=r, centers=centers, kind=tuple(kinds), domain=dom)


def coverage_ok(cov: Covering, samples: int = 10_000, seed: int = 7) -> bool:
    """Audit: a dense sample of the ball lies in the union of B_{5r/6}(x_j)."""
    rng = np.random.default_rng(seed)
    n, R = cov.domain.n, cov.domain.R
    pts = rng.standard_normal((samples, n))
    pts /= np.linalg.norm(pts, axis=1, keepdims=True)
    pts *= R * rng.random(samples)[:, None] ** (1.0 / n)
    lim = (5.0 * cov.r / 6.0) ** 2
    for chunk in np.array_split(pts, max(1, samples // 512)):
        d2 = ((chunk[:, None, :] - cov.centers[None, :, :]) ** 2).sum(axis=2)
        if np.any(d2.min(axis=1) > lim):
            return False
    return True


def _adjacency_matrix(cov: Covering):
    # edge trigger: closed B_r(x) meets closed B_{5r/6}(y) iff |x-y| <= 11r/6,
    # and then the two r-balls overlap in volume >= c1 r^n > 0
    import scipy.sparse as sp
    lim = (11.0 * cov.r / 6.0) ** 2
    d2 = ((cov.centers[:, None, :] - cov.centers[None, :, :]) ** 2).sum(axis=2)
    np.fill_diagonal(d2, np.inf)
    return sp.csr_matrix((d2 <= lim).astype(np.int8))


def _adjacency(cov: Covering) -> list[list[int]]:
    mat = _adjacency_matrix(cov)
    return [[int(j) for j in mat.indices[mat.indptr[i]:mat.indptr[i + 1]]]
            for i in range(cov.count)]


def chain(cov: Covering, k: int, l: int) -> Chain:
    """Shortest overlap-graph chain from center k to center l (inclusive)."""
    if not (0 <= k < cov.count and 0 <= l < cov.count):
        raise IndexError("chain endpoints out of range")
    if k == l:
        return Chain(indices=(k, k))
    adj = _adjacency(cov)
    prev = {k: k}
    dq = deque([k])
    while dq:
        i = dq.popleft()
        if i == l:
            break
        for j in adj[i]:
            if j not in prev:
                prev[j] = i
                dq.append(j)
    if l not in prev:
        raise RuntimeError("overlap graph is disconnected: covering bug")
    path = [l]
    while path[-1] != k:
        path.append(prev[path[-1]])
    return Chain(indices=tuple(reversed(path)))


def worst_chain_length(cov: Covering) -> int:
    """max over center pairs of the shortest chain length p (graph diameter + 1)."""
    from scipy.sparse.csgraph import dijkstra
    dist = dijkstra(_adjacency_matrix(cov), unweighted=True)
    if np.any(np.isinf(dist)):
        raise RuntimeError("overlap graph is disconnected: covering bug")
    return int(dist.max()) + 1


def min_edge_lens(cov: Covering) -> float:
    """Smallest two-ball overlap volume over overlap-graph edges, / r^n.

    The lens volume decreases in the center distance, so the minimum sits at
    the longest edge."""
    mat = _adjacency_matrix(cov).tocoo()
    if mat.nnz == 0:
        return ball_volume(cov.domain.n, cov.r) / cov.r ** cov.domain.n
    d = np.linalg.norm(cov.centers[mat.row] - cov.centers[mat.col], axis=1)
    return lens_volume(float(d.max()), cov.r, cov.domain.n) / cov.r ** cov.domain.n
