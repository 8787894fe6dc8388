"""Command-line front end.

Two command groups: `tile` for self-affine tile systems (JSON input with
the matrix and digit set) and `subst` for Pisot substitutions (text rules
"i -> w").  Graph results are written in DOT or JSON, render commands
produce SVG figures with a CSV of the plotted cells next to them.

Exit codes: 0 success, 2 invalid input, 3 iteration/size cap exceeded,
4 oracle mismatch.
"""

from __future__ import annotations

import hashlib
import json
import pathlib
import sys

import click

from . import corona as co
from . import io as tio
from . import rauzygraphs as rg
from . import selfaffine as sa
from . import stepped as st
from . import substitution as su
from .errors import (
    ClosureLimitExceeded,
    IterationLimitExceeded,
    NotPisot,
    OracleMismatch,
    PatchTooLarge,
    SearchLimitExceeded,
    TilegraphsError,
)

EXIT_INVALID = 2
EXIT_CAP = 3
EXIT_ORACLE = 4

_CAP_ERRORS = (IterationLimitExceeded, ClosureLimitExceeded, PatchTooLarge, SearchLimitExceeded)


def _fail(code, message):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _write(outdir, name, text):
    path = pathlib.Path(outdir)
    path.mkdir(parents=True, exist_ok=True)
    target = path / name
    target.write_text(text)
    click.echo(f"wrote {target}")
    return target


format_option = click.option(
    "--format", "fmt", type=click.Choice(["dot", "json", "svg"]), default="json",
    show_default=True, help="output format for graphs"
)
out_option = click.option("--out", default=".", show_default=True, help="output directory")


@click.group()
def main():
    """Contact and neighbor graphs for self-affine tiles and Rauzy fractals."""


# ---------------------------------------------------------------- tile side


@main.group()
def tile():
    """Self-affine tile systems (input: JSON with \"M\" and \"D\")."""


def _load_tile(path):
    try:
        return tio.parse_tile_json(pathlib.Path(path).read_text())
    except (OSError, TilegraphsError) as exc:
        _fail(EXIT_INVALID, exc)


def _emit_lattice(g, fmt, outdir, stem):
    if fmt == "dot":
        _write(outdir, f"{stem}.dot", tio.lattice_graph_to_dot(g, stem))
    else:
        _write(outdir, f"{stem}.json", tio.lattice_graph_to_json(g))


@tile.command("contact")
@click.argument("input_path")
@format_option
@out_option
@click.option("--max-iter", default=1000, show_default=True)
@click.option("--basis", default=None, help='lattice basis override, e.g. "1,0;0,1"')
def tile_contact(input_path, fmt, out, max_iter, basis):
    """Compute the contact graph of a tile system."""
    t = _load_tile(input_path)
    try:
        g = sa.contact_set(t, basis=_parse_basis(basis), max_iter=max_iter)
    except _CAP_ERRORS as exc:
        _fail(EXIT_CAP, exc)
    except TilegraphsError as exc:
        _fail(EXIT_INVALID, exc)
    click.echo(f"R: {len(g.nodes)} nodes, {len(g.edges)} edges")
    _emit_lattice(g, fmt, out, "contact")


def _parse_basis(text):
    if text is None:
        return None
    return [tuple(int(c) for c in part.split(",")) for part in text.split(";")]


@tile.command("neighbors")
@click.argument("input_path")
@format_option
@out_option
@click.option("--max-iter", default=64, show_default=True)
@click.option("--oracle", is_flag=True, help="cross-check against the brute-force oracle")
@click.option("--basis", default=None)
def tile_neighbors(input_path, fmt, out, max_iter, oracle, basis):
    """Compute the neighbor graph via the corona fixpoint iteration."""
    t = _load_tile(input_path)
    try:
        res = sa.algorithm1(t, basis=_parse_basis(basis), max_iter=max_iter)
    except _CAP_ERRORS as exc:
        _fail(EXIT_CAP, exc)
    except TilegraphsError as exc:
        _fail(EXIT_INVALID, exc)
    click.echo(f"S: {len(res.graph.nodes)} nodes; fixpoint after {res.iterations} iterations")
    if oracle:
        try:
            ref = sa.naive_neighbors(t)
        except _CAP_ERRORS as exc:
            _fail(EXIT_CAP, exc)
        if ref.canonical() != res.graph.canonical():
            _fail(EXIT_ORACLE, "oracle mismatch: corona iteration disagrees with enumeration")
        click.echo("oracle: verified equal")
    _emit_lattice(res.graph, fmt, out, "neighbors")
    _write(out, "neighbors_report.json", tio.run_report_json(res.iterations, [len(res.graph.nodes)]))


@tile.command("render")
@click.argument("input_path")
@out_option
@click.option("--level", default=3, show_default=True, help="approximation level n")
@click.option("--max-cells", default=200_000, show_default=True)
def tile_render(input_path, out, level, max_cells):
    """Render the level-n polygonal approximation of the tile."""
    from . import render as rd

    t = _load_tile(input_path)
    try:
        cells = sa.approximate_tile(t, level, max_cells=max_cells)
        rd.render_tile(cells, pathlib.Path(out) / f"tile_n{level}.svg")
    except _CAP_ERRORS as exc:
        _fail(EXIT_CAP, exc)
    except TilegraphsError as exc:
        _fail(EXIT_INVALID, exc)
    click.echo(f"wrote {pathlib.Path(out) / f'tile_n{level}.svg'} ({len(cells)} cells)")
    _write(out, f"tile_n{level}.csv", rd.cells_csv_tile(cells))


# ---------------------------------------------------------------- subst side


@main.group()
def subst():
    """Pisot substitutions (input: text rules \"i -> w\")."""


def _load_subst(path):
    try:
        return su.parse_substitution(pathlib.Path(path).read_text())
    except (OSError, TilegraphsError) as exc:
        _fail(EXIT_INVALID, exc)


def _spectral(sigma, outdir=None):
    try:
        S = st.spectral_data(sigma)
    except (NotPisot, TilegraphsError) as exc:
        _fail(EXIT_INVALID, exc)
    if outdir is not None:
        key = hashlib.sha256(str(sigma).encode()).hexdigest()[:16]
        cache = pathlib.Path(outdir)
        cache.mkdir(parents=True, exist_ok=True)
        (cache / f"spectral_{key}.json").write_text(tio.spectral_cache_json(S))
    return S


def _emit_faces(g, fmt, outdir, stem, normalized=False):
    if fmt == "dot":
        _write(outdir, f"{stem}.dot", tio.face_graph_to_dot(g, stem, normalized=normalized))
    else:
        _write(outdir, f"{stem}.json", tio.face_graph_to_json(g, normalized=normalized))


@subst.command("check")
@click.argument("input_path")
def subst_check(input_path):
    """Print the Pisot certificate (or the rejection reason, exit 2)."""
    sigma = _load_subst(input_path)
    cert = su.certify_pisot(sigma)
    if not cert.accepted:
        _fail(EXIT_INVALID, cert.reason)
    click.echo(f"Pisot unit certified; minimal polynomial coefficients {list(cert.minpoly)}")
    click.echo(f"dominant root in [{cert.isolation.lo}, {cert.isolation.hi}]")


@subst.command("psgraph")
@click.argument("input_path")
@format_option
@out_option
def subst_psgraph(input_path, fmt, out):
    """Emit the prefix-suffix graph."""
    sigma = _load_subst(input_path)
    edges = su.prefix_suffix_graph(sigma)
    if fmt == "dot":
        lines = ["digraph psgraph {"]
        for e in edges:
            lines.append(
                f'  {e.src} -> {e.dst} [label="({su.word_to_string(e.prefix)},{e.src},'
                f'{su.word_to_string(e.suffix)})"];'
            )
        lines.append("}")
        _write(out, "psgraph.dot", "\n".join(lines) + "\n")
    else:
        doc = [
            {"src": e.src, "dst": e.dst, "prefix": list(e.prefix), "suffix": list(e.suffix)}
            for e in edges
        ]
        _write(out, "psgraph.json", json.dumps(doc, indent=2, sort_keys=True))
    click.echo(f"psgraph: {len(edges)} edges")


@subst.command("contact")
@click.argument("input_path")
@format_option
@out_option
def subst_contact(input_path, fmt, out):
    """Compute the contact graph (simple and normalized forms)."""
    sigma = _load_subst(input_path)
    S = _spectral(sigma, out)
    try:
        gc = rg.contact_graph(S)
    except _CAP_ERRORS as exc:
        _fail(EXIT_CAP, exc)
    norm = rg.from_simple(gc, S)
    click.echo(f"G_C: {len(norm.nodes)} nodes (simple: {rg.folded_node_count(gc)})")
    _emit_faces(gc, fmt, out, "contact_simple")
    _emit_faces(norm, fmt, out, "contact", normalized=True)


@subst.command("neighbors")
@click.argument("input_path")
@format_option
@out_option
@click.option("--max-iter", default=64, show_default=True)
@click.option("--oracle", is_flag=True)
def subst_neighbors(input_path, fmt, out, max_iter, oracle):
    """Compute the boundary graph via the corona fixpoint iteration."""
    sigma = _load_subst(input_path)
    S = _spectral(sigma, out)
    try:
        res = co.algorithm2(S, max_iter=max_iter)
        gc = rg.contact_graph(S)
    except _CAP_ERRORS as exc:
        _fail(EXIT_CAP, exc)
    norm = rg.from_simple(res.graph, S)
    same = res.graph.canonical() == gc.canonical()
    click.echo(
        f"G_B: {len(norm.nodes)} nodes (simple: {rg.folded_node_count(res.graph)}); "
        f"fixpoint after {res.iterations} iterations; G_B = G_C: {str(same).lower()}"
    )
    if oracle:
        try:
            ref = rg.naive_boundary_graph(S)
        except (_CAP_ERRORS + (OracleMismatch,)) as exc:
            _fail(EXIT_CAP, exc)
        if ref.canonical() != res.graph.canonical():
            _fail(EXIT_ORACLE, "oracle mismatch: corona iteration disagrees with enumeration")
        click.echo("oracle: verified equal")
    _emit_faces(res.graph, fmt, out, "neighbors_simple")
    _emit_faces(norm, fmt, out, "neighbors", normalized=True)
    _write(out, "neighbors_report.json",
           tio.run_report_json(res.iterations, res.nodes_per_iteration))


@subst.command("render")
@click.argument("input_path")
@out_option
@click.option("--letter", default=1, show_default=True)
@click.option("--level", default=4, show_default=True)
@click.option("--precision", default=64, show_default=True, help="float working precision bits")
@click.option("--max-cells", default=500_000, show_default=True)
def subst_render(input_path, out, letter, level, precision, max_cells):
    """Render the level-n approximation of one subtile."""
    from . import render as rd

    sigma = _load_subst(input_path)
    S = _spectral(sigma, out)
    if not 1 <= letter <= S.d:
        _fail(EXIT_INVALID, f"letter {letter} outside 1..{S.d}")
    try:
        n, faces = st.approximate_subtile(S, letter, level, max_cells=max_cells)
        path = pathlib.Path(out) / f"subtile_{letter}_n{level}.svg"
        polys = rd.render_faces(faces, n, S, path, bits=precision)
    except _CAP_ERRORS as exc:
        _fail(EXIT_CAP, exc)
    except TilegraphsError as exc:
        _fail(EXIT_INVALID, exc)
    click.echo(f"wrote {path} ({len(faces)} cells)")
    _write(out, f"subtile_{letter}_n{level}.csv", rd.cells_csv_faces(polys))
    _write(out, f"subtile_{letter}_n{level}.faces.json",
           tio.face_set_to_json(faces))


@subst.command("stepped")
@click.argument("input_path")
@out_option
@click.option("--radius", default=2, show_default=True)
@click.option("--precision", default=64, show_default=True)
def subst_stepped(input_path, out, radius, precision):
    """Render a window of the stepped hypersurface."""
    from . import render as rd

    sigma = _load_subst(input_path)
    S = _spectral(sigma, out)
    faces = st.stepped_patch(S, radius)
    path = pathlib.Path(out) / f"stepped_r{radius}.svg"
    try:
        polys = rd.render_faces(faces, 0, S, path, bits=precision)
    except TilegraphsError as exc:
        _fail(EXIT_INVALID, exc)
    click.echo(f"wrote {path} ({len(faces)} faces)")
    _write(out, f"stepped_r{radius}.faces.json", tio.face_set_to_json(faces))


if __name__ == "__main__":
    main()
