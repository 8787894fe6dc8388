"""Serialization: JSON and DOT emitters, input parsers, run reports.

Lattice graphs serialize their integer coordinates as decimal strings so
arbitrarily large entries survive a round trip through JSON readers that
use floats.  Face graphs keep plain integers (their coordinates are
small by construction).
"""

from __future__ import annotations

import json

from .errors import TilegraphsError
from .graphs import Digraph
from .selfaffine import TileSystem


def _vec_str(v):
    return [str(int(c)) for c in v]


def _vec_from_str(v):
    return tuple(int(c) for c in v)


def lattice_graph_to_json(g: Digraph) -> str:
    nodes = g.sorted_nodes()
    edges = sorted(g.edges, key=lambda e: (e[0], e[1][0], e[1][1], e[2]))
    doc = {
        "nodes": [_vec_str(n) for n in nodes],
        "edges": [
            {
                "src": _vec_str(src),
                "label": {"d": _vec_str(d), "dp": _vec_str(dp)},
                "dst": _vec_str(dst),
            }
            for (src, (d, dp), dst) in edges
        ],
    }
    return json.dumps(doc, indent=2, sort_keys=True)


def lattice_graph_from_json(text: str) -> Digraph:
    doc = json.loads(text)
    nodes = frozenset(_vec_from_str(n) for n in doc["nodes"])
    edges = frozenset(
        (
            _vec_from_str(e["src"]),
            (_vec_from_str(e["label"]["d"]), _vec_from_str(e["label"]["dp"])),
            _vec_from_str(e["dst"]),
        )
        for e in doc["edges"]
    )
    return Digraph(nodes, edges)


def lattice_graph_to_dot(g: Digraph, name="lattice") -> str:
    lines = [f"digraph {name} {{"]
    for n in g.sorted_nodes():
        lines.append(f'  "{",".join(map(str, n))}";')
    for (src, (d, dp), dst) in sorted(g.edges, key=lambda e: (e[0], e[1][0], e[1][1], e[2])):
        lines.append(
            f'  "{",".join(map(str, src))}" -> "{",".join(map(str, dst))}"'
            f' [label="{",".join(map(str, d))}|{",".join(map(str, dp))}"];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def _triple_obj(t):
    i, x, j = t
    return {"i": i, "x": list(x), "j": j}


def _triple_from_obj(o):
    return (o["i"], tuple(o["x"]), o["j"])


def face_graph_to_json(g: Digraph, normalized=False) -> str:
    """Simple edges carry labels (p, q); normalized edges (p, q, type)."""
    nodes = g.sorted_nodes()
    edges = g.sorted_edges()
    out_edges = []
    for (src, label, dst) in edges:
        e = {"src": _triple_obj(src), "dst": _triple_obj(dst)}
        if normalized:
            p, q, typ = label
            e["type"] = typ
        else:
            p, q = label
        e["p"] = list(p)
        e["q"] = list(q)
        out_edges.append(e)
    doc = {"nodes": [_triple_obj(n) for n in nodes], "edges": out_edges}
    return json.dumps(doc, indent=2, sort_keys=True)


def face_graph_from_json(text: str) -> Digraph:
    doc = json.loads(text)
    nodes = frozenset(_triple_from_obj(o) for o in doc["nodes"])
    edges = set()
    for e in doc["edges"]:
        p, q = tuple(e["p"]), tuple(e["q"])
        label = (p, q, e["type"]) if "type" in e else (p, q)
        edges.add((_triple_from_obj(e["src"]), label, _triple_from_obj(e["dst"])))
    return Digraph(nodes, frozenset(edges))


def _triple_str(t):
    i, x, j = t
    return f"[{i},({','.join(map(str, x))}),{j}]"


def face_graph_to_dot(g: Digraph, name="faces", normalized=False) -> str:
    lines = [f"digraph {name} {{"]
    for n in g.sorted_nodes():
        lines.append(f'  "{_triple_str(n)}";')
    for (src, label, dst) in g.sorted_edges():
        if normalized:
            p, q, typ = label
            style = ' style=dashed' if typ == 2 else ""
            lab = f"{','.join(map(str, p))}|{','.join(map(str, q))}"
            lines.append(
                f'  "{_triple_str(src)}" -> "{_triple_str(dst)}" [label="{lab}"{style}];'
            )
        else:
            p, q = label
            lab = f"{','.join(map(str, p))}|{','.join(map(str, q))}"
            lines.append(f'  "{_triple_str(src)}" -> "{_triple_str(dst)}" [label="{lab}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def face_set_to_json(faces) -> str:
    doc = {"faces": [{"x": list(x), "i": i} for (x, i) in sorted(faces)]}
    return json.dumps(doc, indent=2, sort_keys=True)


def parse_tile_json(text: str) -> TileSystem:
    try:
        doc = json.loads(text)
        M = tuple(tuple(int(c) for c in row) for row in doc["M"])
        D = tuple(tuple(int(c) for c in d) for d in doc["D"])
    except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
        raise TilegraphsError(f"malformed tile input: {exc}") from exc
    return TileSystem(M, D)


def run_report_json(iterations, nodes_per_iteration, fixpoint=True) -> str:
    doc = {
        "iterations": iterations,
        "nodes_per_iteration": list(nodes_per_iteration),
        "fixpoint": bool(fixpoint),
    }
    return json.dumps(doc, indent=2, sort_keys=True)


def spectral_cache_json(S) -> str:
    """Cacheable spectral data: minimal polynomial plus eigenvector
    coordinates as exact rational coefficient vectors."""

    def elem(e):
        return [[c.numerator, c.denominator] for c in e.coeffs]

    doc = {
        "minpoly": list(S.perron.minpoly),
        "u": [elem(e) for e in S.u],
        "v": [elem(e) for e in S.v],
    }
    return json.dumps(doc, sort_keys=True)
