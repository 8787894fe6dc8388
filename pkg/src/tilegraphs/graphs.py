"""Generic finite directed graphs with labeled edges.

Nodes are arbitrary hashable values, edges are (src, label, dst) triples.
This is the shared carrier for the lattice graphs of the self-affine side
and the signed face graphs of the Rauzy side.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Digraph:
    nodes: frozenset = field(default_factory=frozenset)
    edges: frozenset = field(default_factory=frozenset)

    @staticmethod
    def build(nodes, edges):
        return Digraph(frozenset(nodes), frozenset(edges))

    def __bool__(self):
        return bool(self.nodes)

    def sorted_nodes(self):
        return sorted(self.nodes)

    def sorted_edges(self):
        return sorted(self.edges)

    def canonical(self):
        """Deterministic serialisation used for graph equality tests."""
        return (tuple(self.sorted_nodes()), tuple(self.sorted_edges()))

    def out_map(self):
        adj = {n: [] for n in self.nodes}
        for src, label, dst in self.edges:
            adj[src].append((label, dst))
        return adj

    def restrict(self, keep):
        """Induced subgraph on the given node subset."""
        keep = frozenset(keep) & self.nodes
        return Digraph(
            keep,
            frozenset(e for e in self.edges if e[0] in keep and e[2] in keep),
        )

    def out_degree(self):
        deg = {n: 0 for n in self.nodes}
        for src, _label, _dst in self.edges:
            deg[src] += 1
        return deg


def red(g: Digraph) -> Digraph:
    """Largest subgraph with no node lacking an outgoing edge.

    Iteratively strips out-degree-0 nodes (and their incident edges) until
    a fixpoint is reached.
    """
    nodes = set(g.nodes)
    edges = set(g.edges)
    while True:
        deg = {n: 0 for n in nodes}
        for src, _l, dst in edges:
            deg[src] += 1
        dead = {n for n, k in deg.items() if k == 0}
        if not dead:
            return Digraph(frozenset(nodes), frozenset(edges))
        nodes -= dead
        edges = {e for e in edges if e[0] not in dead and e[2] not in dead}


def strongly_connected_components(nodes, succ):
    """Tarjan's algorithm, iterative.  succ maps node -> iterable of nodes."""
    index = {}
    low = {}
    on_stack = set()
    stack = []
    comps = []
    counter = [0]

    for root in nodes:
        if root in index:
            continue
        work = [(root, iter(succ(root)))]
        index[root] = low[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            node, it = work[-1]
            advanced = False
            for nxt in it:
                if nxt not in index:
                    index[nxt] = low[nxt] = counter[0]
                    counter[0] += 1
                    stack.append(nxt)
                    on_stack.add(nxt)
                    work.append((nxt, iter(succ(nxt))))
                    advanced = True
                    break
                elif nxt in on_stack:
                    low[node] = min(low[node], index[nxt])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == node:
                        break
                comps.append(comp)
    return comps


def nodes_reaching_cycle(g: Digraph) -> frozenset:
    """Nodes from which some walk reaches a cycle (equivalently: nodes that
    admit an infinite outgoing walk).  Computed by SCC condensation plus
    reverse reachability from nontrivial SCCs and self-loops."""
    adj = {n: set() for n in g.nodes}
    radj = {n: set() for n in g.nodes}
    for src, _l, dst in g.edges:
        adj[src].add(dst)
        radj[dst].add(src)
    comps = strongly_connected_components(g.sorted_nodes(), lambda n: adj[n])
    seeds = set()
    for comp in comps:
        if len(comp) > 1:
            seeds.update(comp)
    for n in g.nodes:
        if n in adj[n]:
            seeds.add(n)
    # reverse BFS
    reach = set(seeds)
    frontier = list(seeds)
    while frontier:
        n = frontier.pop()
        for p in radj[n]:
            if p not in reach:
                reach.add(p)
                frontier.append(p)
    return frozenset(reach)


def reach_cycle_subgraph(g: Digraph) -> Digraph:
    return g.restrict(nodes_reaching_cycle(g))
