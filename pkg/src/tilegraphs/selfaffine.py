"""Self-affine tiles with standard digit sets.

Contains the tile system validation, the labeled lattice graphs, the
contact-set fixpoint, the corona-based neighbor algorithm and its
brute-force oracle, contact-degree diagnostics and the exact polygonal
approximations of the tile.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import exactmath as em
from .errors import (
    IterationLimitExceeded,
    NotALatticeBasis,
    NotExpanding,
    NotResidueSystem,
    PatchTooLarge,
    SearchLimitExceeded,
)
from .graphs import Digraph, red, reach_cycle_subgraph


@dataclass(frozen=True)
class TileSystem:
    """Expanding integer matrix M and a complete residue digit set D."""

    M: tuple[tuple[int, ...], ...]
    D: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        d = len(self.M)
        if any(len(row) != d for row in self.M):
            raise ValueError("M must be square")
        det = em.mat_det(self.M)
        if det == 0:
            raise NotExpanding("det(M) = 0")
        if len(self.D) != abs(det):
            raise NotResidueSystem(
                f"digit set has {len(self.D)} elements, |det M| = {abs(det)}"
            )
        if len(set(self.D)) != len(self.D):
            raise NotResidueSystem("digit set has repeated digits")
        for a, b in itertools.combinations(self.D, 2):
            if em.solve_integer(self.M, em.vec_sub(a, b)) is not None:
                raise NotResidueSystem(f"digits {a} and {b} are congruent mod M")
        if not em.is_expanding_poly(em.charpoly(self.M)):
            raise NotExpanding("M has an eigenvalue of modulus <= 1")

    @property
    def dim(self):
        return len(self.M)


def gamma_edges(A, tile: TileSystem) -> Digraph:
    """The graph Gamma_A: edges m -> m' labeled d|d' with m' = M m + d' - d,
    restricted to the node set A."""
    nodes = frozenset(tuple(a) for a in A)
    edges = set()
    for m in nodes:
        Mm = em.mat_vec(tile.M, m)
        for d in tile.D:
            for dp in tile.D:
                mp = em.vec_add(Mm, em.vec_sub(dp, d))
                if mp in nodes:
                    edges.add((m, (d, dp), mp))
    return Digraph(nodes, frozenset(edges))


def contact_set(tile: TileSystem, basis=None, max_iter=1000, with_stats=False):
    """The contact graph Gamma_R = Red(Gamma_{R'}).

    R' is the stabilisation of R_k = {y : (My + D) meets (y' + D) for some
    y' in R_{k-1}} united with R_{k-1}, seeded with 0 and the +-basis
    vectors.  The membership test is y = M^{-1}(y' + d' - d), integrality
    checked exactly.
    """
    d = tile.dim
    if basis is None:
        basis = [tuple(1 if i == j else 0 for j in range(d)) for i in range(d)]
    basis = [tuple(b) for b in basis]
    if abs(em.mat_det(tuple(zip(*basis)))) != 1:
        raise NotALatticeBasis(f"{basis} does not generate Z^{d}")
    R = {tuple([0] * d)}
    for b in basis:
        R.add(b)
        R.add(em.vec_neg(b))
    iterations = 0
    frontier = set(R)
    while frontier:
        iterations += 1
        if iterations > max_iter:
            raise IterationLimitExceeded("contact set iteration did not stabilise")
        new = set()
        for yp in frontier:
            for dd in tile.D:
                for dp in tile.D:
                    y = em.solve_integer(tile.M, em.vec_add(yp, em.vec_sub(dp, dd)))
                    if y is not None and y not in R:
                        new.add(y)
        R |= new
        frontier = new
    graph = red(gamma_edges(R, tile))
    if with_stats:
        return graph, iterations
    return graph


def r_corona(g: Digraph, R, tile: TileSystem) -> Digraph:
    """Gamma_{A+R} for A the node set of g: the Minkowski-sum graph."""
    nodes = {em.vec_add(a, r) for a in g.nodes for r in R}
    return gamma_edges(nodes, tile)


@dataclass(frozen=True)
class Algorithm1Result:
    graph: Digraph
    iterations: int


def algorithm1(tile: TileSystem, basis=None, max_iter=64) -> Algorithm1Result:
    """Corona iteration: repeat Gamma_{R_q} = Red(Gamma_{R_{q-1}+R}) until
    stable, then drop the node 0.  Returns the neighbor graph Gamma_S."""
    gamma_r = contact_set(tile, basis=basis)
    R = gamma_r.nodes
    q = 1
    current = gamma_r
    while True:
        q += 1
        if q > max_iter:
            raise IterationLimitExceeded(f"algorithm1 exceeded {max_iter} iterations")
        nxt = red(r_corona(current, R, tile))
        if nxt.canonical() == current.canonical():
            break
        current = nxt
    origin = tuple([0] * tile.dim)
    return Algorithm1Result(gamma_edges(current.nodes - {origin}, tile), q)


def _inverse_norm_series_bound(tile: TileSystem, max_power=64):
    """An exact rational upper bound for sum_{k>=1} ||M^{-k}||_inf.

    Uses ||M^{-(tj+r)}|| <= ||M^{-j}||^t ||M^{-r}|| once a power j with
    ||M^{-j}||_inf < 1 is found (exists since M is expanding).
    """
    Minv = em.mat_inverse(tile.M)
    powers = [Minv]
    norms = [em.norm_inf_mat(Minv)]
    while norms[-1] >= 1:
        if len(powers) > max_power:
            raise IterationLimitExceeded("no contracting power of M^{-1} found")
        nxt = tuple(
            tuple(sum(powers[-1][i][t] * Minv[t][j] for t in range(tile.dim)) for j in range(tile.dim))
            for i in range(tile.dim)
        )
        powers.append(nxt)
        norms.append(em.norm_inf_mat(nxt))
    j = len(norms)
    partial = sum(norms, Fraction(0))
    rho = norms[-1]
    return partial / (1 - rho), j


def neighbor_candidate_radius(tile: TileSystem):
    """Sound integer radius: any m in S satisfies ||m||_inf <= this."""
    series, _j = _inverse_norm_series_bound(tile)
    dmax = max(em.norm_inf_vec(d) for d in tile.D)
    bound = 2 * dmax * series
    r = int(bound)
    if bound > r:
        r += 1
    return r


def naive_neighbors(tile: TileSystem) -> Digraph:
    """Brute-force oracle for the neighbor graph Gamma_S.

    Enumerates every lattice point inside a provably sufficient box, builds
    the induced labeled graph, keeps the nodes that reach a cycle (SCC
    condensation) and strips 0.
    """
    r = neighbor_candidate_radius(tile)
    d = tile.dim
    candidates = set(itertools.product(range(-r, r + 1), repeat=d))
    g = reach_cycle_subgraph(gamma_edges(candidates, tile))
    origin = tuple([0] * d)
    return gamma_edges(g.nodes - {origin}, tile)


def cdeg(m, R, limit=64):
    """Minimal number of contact-set summands needed to reach m from 0.

    Breadth-first search with step set R; cdeg(0) = 0, cdeg(r) = 1 for
    r in R different from 0.
    """
    m = tuple(m)
    steps = [tuple(s) for s in R if any(s)]
    origin = tuple([0] * len(m))
    if m == origin:
        return 0
    seen = {origin}
    frontier = [origin]
    for depth in range(1, limit + 1):
        nxt = []
        for p in frontier:
            for s in steps:
                q = em.vec_add(p, s)
                if q == m:
                    return depth
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    raise SearchLimitExceeded(f"cdeg({m}) > {limit}")


def approximate_tile(tile: TileSystem, n, max_cells=200_000):
    """The patch T_n = M^{-n}([0,1]^d + D + MD + ... + M^{n-1}D).

    Each cell is a parallelotope (origin, edge vectors), all coordinates
    exact Fractions.  The edge vectors are the columns of M^{-n} and are
    shared by every cell.
    """
    if len(tile.D) ** n > max_cells:
        raise PatchTooLarge(f"|D|^{n} = {len(tile.D) ** n} cells exceeds cap {max_cells}")
    d = tile.dim
    Minv = em.mat_inverse(tile.M)
    Minv_n = _frac_mat_pow(Minv, n, d)
    edge_vectors = tuple(tuple(Minv_n[i][j] for i in range(d)) for j in range(d))
    offsets = [tuple([0] * d)]
    Mk = em.identity(d)
    for _ in range(n):
        offsets = [em.vec_add(o, em.mat_vec(Mk, dd)) for o in offsets for dd in tile.D]
        Mk = em.mat_mul(Mk, tile.M)
    cells = []
    for o in offsets:
        base = tuple(
            sum(Minv_n[i][j] * o[j] for j in range(d)) for i in range(d)
        )
        cells.append((base, edge_vectors))
    return cells


def _frac_mat_pow(A, n, d):
    out = [[Fraction(1) if i == j else Fraction(0) for j in range(d)] for i in range(d)]
    for _ in range(n):
        out = [
            [sum(out[i][t] * A[t][j] for t in range(d)) for j in range(d)]
            for i in range(d)
        ]
    return out


def patch_volume(cells):
    """Total d-volume of a parallelotope patch, exact."""
    total = Fraction(0)
    for _base, edges in cells:
        mat = tuple(tuple(edges[j][i] for j in range(len(edges))) for i in range(len(edges)))
        total += abs(_frac_det(mat))
    return total


def _frac_det(M):
    d = len(M)
    A = [list(row) for row in M]
    det = Fraction(1)
    for c in range(d):
        piv = next((r for r in range(c, d) if A[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det *= A[c][c]
        for r in range(c + 1, d):
            f = A[r][c] / A[c][c]
            for j in range(c, d):
                A[r][j] -= f * A[c][j]
    return det
