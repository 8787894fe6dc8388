"""Connections, the C-corona operator and the corona fixpoint iteration.

A triple [i1,x,i2] acts as a connection between faces: it connects [y,i1]
with [y+x,i2].  Chains of connections through the contact set C induce
the relation ~r on faces; the C-corona of a graph adds every triple
reachable from a node by one such connection.  Iterating corona + Red
from the contact graph yields the boundary graph.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import exactmath as em
from . import rauzygraphs as rg
from . import stepped as st
from .errors import IterationLimitExceeded, MalformedTriple, SearchLimitExceeded
from .graphs import Digraph, red


def _connections_by_first(C):
    """Index +-C by first letter: a -> list of (delta, b) with [a,delta,b]
    in +-C.  C is expected to already contain both signs."""
    idx = {}
    for (a, delta, b) in C:
        idx.setdefault(a, []).append((delta, b))
    return idx


def c_connected_one(f, g, C) -> bool:
    """Whether faces f and g are related by a single +-C-connection (the
    trivial [i,0,i] connections included).  Both faces are taken with the
    same sign convention; for faces of -H pass the negated coordinates."""
    (x1, i1), (x2, i2) = f, g
    step = em.vec_sub(x2, x1)
    if i1 == i2 and not any(step):
        return True
    return (i1, step, i2) in C


def corona_candidates(t, C_idx, S: st.SpectralData):
    """All universe triples one +-C-connection away from t = [i1,y,j].

    The face [y,j] is connected forward when it lies in H; when it lies in
    -H the connection acts on the negated face, which reverses the step.
    """
    i1, y, j = t
    out = {t}
    steps = C_idx.get(j, ())
    if st.in_H((y, j), S):
        for delta, b in steps:
            cand = (i1, em.vec_add(y, delta), b)
            if st.in_H((cand[1], b), S) and not rg.is_trivial(cand):
                out.add(cand)
    ny = em.vec_neg(y)
    if st.in_H((ny, j), S):
        for delta, b in steps:
            x = em.vec_sub(y, delta)
            cand = (i1, x, b)
            if st.in_H((em.vec_neg(x), b), S) and not rg.is_trivial(cand) and rg.in_universe(cand, S):
                out.add(cand)
    return out


def c_corona(g: Digraph, C, S: st.SpectralData) -> Digraph:
    """The C-corona of a simple graph: all triples one +-C-connection from
    a node of g, closed under negation, with the induced simple-ambient
    edges.

    The negation closure is needed: a triple whose own face misses +-H can
    only arise as the negation of a connected triple, and the simple
    graphs carry both signs of every intersection.
    """
    idx = _connections_by_first(C)
    nodes = set()
    for t in g.nodes:
        nodes |= corona_candidates(t, idx, S)
    for t in list(nodes):
        n = rg.neg(t)
        if rg.in_universe(n, S):
            nodes.add(n)
    return rg.induced_simple_graph(nodes, S)


@dataclass(frozen=True)
class Algorithm2Result:
    graph: Digraph
    iterations: int
    nodes_per_iteration: tuple


def algorithm2(S: st.SpectralData, max_iter=64) -> Algorithm2Result:
    """Corona fixpoint iteration from the contact graph.

    A[1] is the simple contact graph; A[p] = Red(C-Corona(A[p-1])) until
    two consecutive iterates agree.  The final graph is the simple
    boundary graph.
    """
    gc = rg.contact_graph(S)
    C = frozenset(gc.nodes)
    current = gc
    counts = [len(gc.nodes)]
    p = 1
    while True:
        p += 1
        if p > max_iter:
            raise IterationLimitExceeded(f"corona iteration exceeded {max_iter} rounds")
        nxt = red(c_corona(current, C, S))
        counts.append(len(nxt.nodes))
        if nxt.canonical() == current.canonical():
            return Algorithm2Result(nxt, p, tuple(counts))
        current = nxt


def cdeg_rauzy(t, C, S: st.SpectralData, limit=16) -> int:
    """Minimal number of +-C-connections from [0,i] to [m,j] for the
    triple t = [i,m,j]; 0 exactly for the trivial triples."""
    i, m, j = t
    if st.in_H((m, j), S):
        target = (m, j)
    elif st.in_H((em.vec_neg(m), j), S):
        target = (em.vec_neg(m), j)
    else:
        # the triple's own face misses +-H; its negation carries the same
        # intersection, so measure that one
        j2, m2, i2 = t[2], em.vec_neg(m), t[0]
        if st.in_H((m2, i2), S) or st.in_H((m, i2), S):
            return cdeg_rauzy((j2, m2, i2), C, S, limit)
        raise MalformedTriple(f"face of {t} lies in neither H nor -H")
    start = (tuple([0] * S.d), i)
    if start == target:
        return 0
    idx = _connections_by_first(C)
    seen = {start}
    frontier = [start]
    for depth in range(1, limit + 1):
        nxt = []
        for (y, a) in frontier:
            for delta, b in idx.get(a, ()):
                f = (em.vec_add(y, delta), b)
                if f == target:
                    return depth
                if f not in seen and st.in_H(f, S):
                    seen.add(f)
                    nxt.append(f)
        frontier = nxt
    raise SearchLimitExceeded(f"cdeg({t}) > {limit}")
