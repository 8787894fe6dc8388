"""Matplotlib rendering of tile and Rauzy approximations.

All geometry arrives as exact integer or rational data and is evaluated
numerically only here.  Figures are written as files (SVG by default)
together with a delimited CSV of the plotted cells, so the numeric
coordinates stay inspectable.
"""

from __future__ import annotations

import csv
import io as _io
import os

import numpy as np

os.environ.setdefault("SOURCE_DATE_EPOCH", "0")
import matplotlib

matplotlib.use("Agg")
matplotlib.rcParams["svg.hashsalt"] = "tilegraphs"
import matplotlib.pyplot as plt

from . import exactmath as em
from .errors import TilegraphsError

# fixed palette keyed by letter / subtile index, stable across runs
PALETTE = ["#4878d0", "#ee854a", "#6acc64", "#d65f5f", "#956cb4", "#8c613c"]


def _color(i):
    return PALETTE[(i - 1) % len(PALETTE)]


def tile_patch_polygons(cells):
    """2-D parallelotope cells (base, edge vectors) as vertex arrays."""
    polys = []
    for base, edges in cells:
        b = np.array([float(c) for c in base])
        e1 = np.array([float(c) for c in edges[0]])
        e2 = np.array([float(c) for c in edges[1]])
        polys.append(np.array([b, b + e1, b + e1 + e2, b + e2]))
    return polys


def render_tile(cells, path, title=None):
    """Render a self-affine approximation patch (dimension 2 only)."""
    if cells and len(cells[0][0]) != 2:
        raise TilegraphsError("tile rendering supports dimension 2 only")
    polys = tile_patch_polygons(cells)
    fig, ax = plt.subplots(figsize=(6, 6))
    for p in polys:
        ax.fill(p[:, 0], p[:, 1], color=_color(1), linewidth=0.1, edgecolor="white")
    _finish(fig, ax, path, title)
    return polys


def _plane_basis(S, bits=64):
    """Deterministic orthonormal 2-D basis of the contracting plane."""
    _beta, u, v, _P = S.numeric(bits)
    v = v / np.linalg.norm(v)
    # two vectors spanning v-perp, Gram-Schmidt against v from fixed seeds
    basis = []
    for seed in np.eye(len(v)):
        w = seed - (seed @ v) * v
        for b in basis:
            w = w - (w @ b) * b
        n = np.linalg.norm(w)
        if n > 1e-9:
            basis.append(w / n)
        if len(basis) == len(v) - 1:
            break
    return np.array(basis[:2])


def face_polygons(faces, level, S, bits=64):
    """Plane coordinates of the cells h^level [pi(y), j].

    Uses h^n(pi(w)) = pi(M^n w): each cube vertex is pushed through M^n
    exactly, projected, and mapped to plane coordinates.
    """
    d = S.d
    _beta, u, v, _P = S.numeric(bits)
    B = _plane_basis(S, bits)
    Mn = em.mat_pow(S.M, level)
    uv = u @ v
    polys = []
    for (y, j) in sorted(faces):
        spans = [k for k in range(d) if k != j - 1]
        # a face of a 3-letter substitution is a unit rhombus: four corners
        corners = [
            y,
            em.vec_add(y, _unit(spans[0], d)),
            em.vec_add(em.vec_add(y, _unit(spans[0], d)), _unit(spans[1], d)),
            em.vec_add(y, _unit(spans[1], d)),
        ]
        pts = []
        for c in corners:
            w = np.array(em.mat_vec(Mn, c), dtype=float)
            pw = w - (w @ v) / uv * u
            pts.append(B @ pw)
        polys.append((j, np.array(pts)))
    return polys


def _unit(k, d):
    return tuple(1 if t == k else 0 for t in range(d))


def render_faces(faces, level, S, path, title=None, bits=64):
    """Render projected faces (subtile approximation or stepped patch)."""
    if S.d != 3:
        raise TilegraphsError("face rendering supports 3-letter substitutions only")
    polys = face_polygons(faces, level, S, bits)
    fig, ax = plt.subplots(figsize=(6, 6))
    for j, p in polys:
        ax.fill(p[:, 0], p[:, 1], color=_color(j), linewidth=0.15, edgecolor="white")
    _finish(fig, ax, path, title)
    return polys


def _finish(fig, ax, path, title):
    ax.set_aspect("equal")
    ax.axis("off")
    if title:
        ax.set_title(title)
    ax.margins(0.02)
    fig.savefig(path, bbox_inches="tight", metadata=_svg_metadata(path))
    plt.close(fig)


def _svg_metadata(path):
    if str(path).endswith(".svg"):
        return {"Date": None, "Creator": None}
    return None


def cells_csv_tile(cells) -> str:
    """Delimited dump of a tile patch: one row per cell, exact rationals."""
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    d = len(cells[0][0]) if cells else 0
    w.writerow([f"base{k}" for k in range(d)] + [f"edge{a}{k}" for a in range(d) for k in range(d)])
    for base, edges in sorted(cells):
        w.writerow([str(c) for c in base] + [str(c) for e in edges for c in e])
    return buf.getvalue()


def cells_csv_faces(polys) -> str:
    """Delimited dump of rendered face cells: letter plus 2-D vertices."""
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["letter"] + [f"{c}{k}" for k in range(4) for c in ("x", "y")])
    for j, pts in polys:
        w.writerow([j] + [f"{c:.12g}" for p in pts for c in p])
    return buf.getvalue()
