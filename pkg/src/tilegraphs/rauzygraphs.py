"""Ambient, boundary and contact graphs on signed face triples.

A triple (i, x, j) stands for the intersection of the subtile R(i) with
the translated subtile R(j) + pi(x).  The simple graphs live on the node
universe +-(A x H) minus the trivial triples [i,0,i]; the normalized form
restricts to triples [i,x,j] with [x,j] in H and i < j whenever x = 0,
with typed edges.
"""

from __future__ import annotations

import numpy as np

from . import exactmath as em
from . import stepped as st
from . import substitution as su
from .errors import ClosureLimitExceeded, MalformedTriple, OracleMismatch
from .graphs import Digraph, reach_cycle_subgraph, red

Triple = tuple[int, tuple[int, ...], int]


def neg(t: Triple) -> Triple:
    i, x, j = t
    return (j, em.vec_neg(x), i)


def is_trivial(t: Triple) -> bool:
    i, x, j = t
    return i == j and not any(x)


def in_universe(t: Triple, S: st.SpectralData) -> bool:
    """Membership in +-(A x H) minus the trivial triples."""
    if is_trivial(t):
        return False
    i, x, j = t
    return st.in_H((x, j), S) or st.in_H((em.vec_neg(x), i), S)


def in_normalized(t: Triple, S: st.SpectralData) -> bool:
    """Membership in the normalized node set: [x,j] in H, x=0 implies i<j."""
    i, x, j = t
    if not any(x) and i >= j:
        return False
    return st.in_H((x, j), S)


def normalize(t: Triple, S: st.SpectralData) -> Triple:
    if in_normalized(t, S):
        return t
    n = neg(t)
    if in_normalized(n, S):
        return n
    raise MalformedTriple(f"{t} has no normalized representative")


def simple_ambient_successors(t: Triple, S: st.SpectralData):
    """Edges t -> t' of the simple ambient graph.

    t' = [i',x',j'] with sigma(i') = p1 i s1, sigma(j') = q1 j t1 and
    M x' = x + l(q1) - l(p1); the label is (l(p1), l(q1)).
    """
    i, x, j = t
    out = set()
    for e1 in S.ps_edges:
        if e1.src != i:
            continue
        lp = su.abelianize(e1.prefix, S.d)
        for e2 in S.ps_edges:
            if e2.src != j:
                continue
            lq = su.abelianize(e2.prefix, S.d)
            xp = em.solve_integer(S.M, em.vec_add(x, em.vec_sub(lq, lp)))
            if xp is None:
                continue
            tp = (e1.dst, xp, e2.dst)
            if in_universe(tp, S):
                out.add((t, (lp, lq), tp))
    return out


def simple_ambient_predecessors(tp: Triple, S: st.SpectralData):
    """Edges t -> tp of the simple ambient graph, found from the target."""
    ip, xp, jp = tp
    Mxp = em.mat_vec(S.M, xp)
    out = set()
    for e1 in S.ps_edges:
        if e1.dst != ip:
            continue
        lp = su.abelianize(e1.prefix, S.d)
        for e2 in S.ps_edges:
            if e2.dst != jp:
                continue
            lq = su.abelianize(e2.prefix, S.d)
            x = em.vec_add(Mxp, em.vec_sub(lp, lq))
            t = (e1.src, x, e2.src)
            if in_universe(t, S):
                out.add((t, (lp, lq), tp))
    return out


def induced_simple_graph(nodes, S: st.SpectralData) -> Digraph:
    """Simple ambient subgraph induced on a node set."""
    nodes = frozenset(nodes)
    edges = set()
    for t in nodes:
        for e in simple_ambient_successors(t, S):
            if e[2] in nodes:
                edges.add(e)
    return Digraph(nodes, frozenset(edges))


def _pi_norm_series(S: st.SpectralData, max_power=200):
    """Numeric upper bound for sum_{n>=0} ||h^n|| on the contracting plane.

    Accumulates 2-norms of powers of PMP until the remainder is negligible;
    the tail is bounded by the geometric estimate S <= partial/(1 - ||A^k||).
    """
    _beta, _u, _v, P = S.numeric()
    M = np.array(S.M, dtype=float)
    A = P @ M @ P
    total = 1.0
    B = np.eye(S.d)
    for _ in range(max_power):
        B = B @ A
        nb = np.linalg.norm(B, 2)
        if nb < 1e-9:
            return total / (1.0 - nb)
        total += nb
    if np.linalg.norm(B, 2) < 0.999:
        return total / (1.0 - np.linalg.norm(B, 2))
    raise ClosureLimitExceeded("no contracting power of h found numerically")


def boundary_search_radius(S: st.SpectralData, slack=1.1):
    """Numeric radius R with ||pi(x)|| <= R for every boundary-graph node,
    and the integer box radius that contains all such x."""
    _beta, u, v, _P = S.numeric()
    L = max(
        np.linalg.norm(_project(np.array(su.abelianize(e.prefix, S.d), float), u, v), 2)
        for e in S.ps_edges
    )
    R = 2.0 * L * _pi_norm_series(S) * slack + 1e-9
    vmax = float(v.max())
    box = R + vmax / float(u @ v) * float(np.abs(u).max())
    return R, int(np.ceil(box * 1.05))


def _project(x, u, v):
    return x - (x @ v) / (u @ v) * u


def _candidate_nodes(S: st.SpectralData, R, box):
    _beta, u, v, P = S.numeric()
    axis = np.arange(-box, box + 1)
    grid = np.stack(np.meshgrid(*[axis] * S.d, indexing="ij"), axis=-1).reshape(-1, S.d)
    # numeric prefilters: pi-norm ball and the H slab (with rounding margin)
    keep = np.linalg.norm(grid @ P.T, axis=1) <= R
    keep &= np.abs(grid @ v) <= v.max() * (1 + 1e-9) + 1e-6
    letters = range(1, S.d + 1)
    nodes = set()
    for x in map(tuple, grid[keep].tolist()):
        for i in letters:
            for j in letters:
                t = (i, x, j)
                if in_universe(t, S):
                    nodes.add(t)
    return nodes


def naive_boundary_graph(S: st.SpectralData, verify_radius=True) -> Digraph:
    """Brute-force oracle for the simple boundary graph.

    Enumerates every triple within a provably sufficient pi-norm ball,
    builds the induced simple ambient graph and keeps the nodes that reach
    a cycle.  With verify_radius the whole computation is repeated with an
    inflated radius and the results are required to agree.
    """
    R, box = boundary_search_radius(S)
    g = reach_cycle_subgraph(induced_simple_graph(_candidate_nodes(S, R, box), S))
    if verify_radius:
        R2, box2 = boundary_search_radius(S, slack=1.5)
        g2 = reach_cycle_subgraph(induced_simple_graph(_candidate_nodes(S, R2, box2), S))
        if g.canonical() != g2.canonical():
            raise OracleMismatch("boundary oracle did not stabilise under radius inflation")
    return g


def backward_closure(seeds, S: st.SpectralData, max_nodes=200_000) -> frozenset:
    """All triples of the universe that reach the seed set along
    simple-ambient edges (the seeds included)."""
    nodes = set(seeds)
    frontier = list(seeds)
    while frontier:
        t = frontier.pop()
        for (p, _label, _t) in simple_ambient_predecessors(t, S):
            if p not in nodes:
                nodes.add(p)
                if len(nodes) > max_nodes:
                    raise ClosureLimitExceeded("backward closure exceeded node cap")
                frontier.append(p)
    return frozenset(nodes)


def contact_graph(S: st.SpectralData, dcont=None) -> Digraph:
    """The simple contact graph: Red applied to the pre-contact graph.

    The pre-contact graph is the backward closure of +-Dcont under
    simple-ambient edges (every node of it reaches +-Dcont along some
    walk), with the induced edges.
    """
    if dcont is None:
        dcont = st.build_Dcont(S)
    seeds = set()
    for t in dcont:
        seeds.add(t)
        seeds.add(neg(t))
    closure = backward_closure(seeds, S)
    return red(induced_simple_graph(closure, S))


def folded_node_count(g: Digraph) -> int:
    """Node count of a simple graph with the pairs [i,0,j] / [j,0,i]
    identified: triples with x = 0 and i >= j are not counted.  This is
    the counting convention used for the 26-vertex figure."""
    return sum(1 for (i, x, j) in g.nodes if any(x) or i < j)


def eta_label(x, lp, lq, S: st.SpectralData):
    """The display label of a normalized edge: (l(p1), l(q1)) when
    <l(p1),v> <= <l(q1)+x, v>, the swapped pair otherwise."""
    diff = em.vec_sub(em.vec_add(lq, x), lp)
    if S.dot_v_sign(diff) >= 0:
        return (lp, lq)
    return (lq, lp)


def from_simple(g: Digraph, S: st.SpectralData) -> Digraph:
    """Normalized graph from a simple graph.

    Nodes are the normalized representatives; edges keep (l(p1), l(q1))
    and gain a type: 1 when the target was already normalized, 2 when it
    had to be negated.  Only edges out of normalized sources are read; the
    negated copies carry the same information.
    """
    nodes = frozenset(normalize(t, S) for t in g.nodes)
    edges = set()
    for (src, (lp, lq), dst) in g.edges:
        if not in_normalized(src, S):
            continue
        if in_normalized(dst, S):
            edges.add((src, (lp, lq, 1), dst))
        else:
            edges.add((src, (lp, lq, 2), normalize(dst, S)))
    return Digraph(nodes, frozenset(edges))


def to_simple(g: Digraph, S: st.SpectralData) -> Digraph:
    """Simple graph from a normalized graph: each node contributes itself
    and its negation, each typed edge its two simple counterparts."""
    nodes = set()
    for t in g.nodes:
        nodes.add(t)
        nodes.add(neg(t))
    edges = set()
    for (src, (lp, lq, typ), dst) in g.edges:
        target = dst if typ == 1 else neg(dst)
        edges.add((src, (lp, lq), target))
        edges.add((neg(src), (lq, lp), neg(target)))
    return Digraph(frozenset(nodes), frozenset(edges))


def check_edge_congruences(g: Digraph, S: st.SpectralData, simple=True):
    """Assert the defining congruence of every edge; returns the number of
    edges checked."""
    for (src, label, dst) in g.edges:
        if simple:
            lp, lq = label
            target = dst
        else:
            lp, lq, typ = label
            target = dst if typ == 1 else neg(dst)
        lhs = em.mat_vec(S.M, target[1])
        rhs = em.vec_add(src[1], em.vec_sub(lq, lp))
        if lhs != rhs:
            raise MalformedTriple(f"edge {src} -> {dst} violates its congruence")
    return len(g.edges)
