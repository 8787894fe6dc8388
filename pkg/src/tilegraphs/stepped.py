"""The stepped hypersurface, the dual substitution and face geometry.

Faces [x, i] are pairs of an integer vector and a letter.  Membership in
the stepped hypersurface H (0 <= <x,v> < <e_i,v>) is decided with exact
signs in Q(beta).  The dual substitution maps faces to faces and both
preserves and partitions H.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import exactmath as em
from . import substitution as su
from .errors import DisjointnessViolated, NonIntegralImage, NotPisot, PatchTooLarge

Face = tuple[tuple[int, ...], int]  # ([x], i)


@dataclass
class SpectralData:
    """Exact spectral data of a Pisot substitution, plus cached helpers."""

    sigma: su.Substitution
    M: tuple[tuple[int, ...], ...]
    perron: em.PerronData
    ps_edges: list

    def __post_init__(self):
        self._dotv_sign_cache = {}
        d = self.sigma.d
        self._ei_dotv = [None] * (d + 1)

    @property
    def d(self):
        return self.sigma.d

    @property
    def field(self):
        return self.perron.field

    @property
    def v(self):
        return self.perron.v

    @property
    def u(self):
        return self.perron.u

    def dot_v(self, x):
        """<x, v> as an exact element of Q(beta)."""
        acc = self.field.zero()
        for xi, vi in zip(x, self.v):
            if xi:
                acc = acc + vi * xi
        return acc

    def dot_v_sign(self, x):
        x = tuple(x)
        s = self._dotv_sign_cache.get(x)
        if s is None:
            s = self.dot_v(x).sign()
            self._dotv_sign_cache[x] = s
        return s

    def numeric(self, bits=64):
        """(beta, u, v, projection matrix) as floats for rendering/bounds."""
        beta = self.field.beta_float(bits)
        u = np.array([e.eval_float(bits) for e in self.u])
        v = np.array([e.eval_float(bits) for e in self.v])
        P = np.eye(self.d) - np.outer(u, v) / (u @ v)
        return beta, u, v, P


def spectral_data(sigma: su.Substitution, force=False) -> SpectralData:
    """Certify sigma as Pisot and compute its exact spectral data.

    Non-Pisot substitutions are rejected (NotPisot) unless force is set, in
    which case the characteristic polynomial must at least be irreducible.
    """
    cert = su.certify_pisot(sigma)
    if not cert.accepted and not force:
        raise NotPisot(cert.reason)
    M = su.incidence(sigma)
    return SpectralData(sigma, M, em.perron_data(M), su.prefix_suffix_graph(sigma))


def in_H(face: Face, S: SpectralData) -> bool:
    """Exact test of 0 <= <x,v> < <e_i,v>."""
    x, i = face
    sx = S.dot_v_sign(x)
    if sx < 0:
        return False
    ei = tuple(1 if k == i - 1 else 0 for k in range(S.d))
    return S.dot_v_sign(em.vec_sub(ei, x)) > 0


def dual_image(face: Face, S: SpectralData) -> frozenset:
    """sigma*[x,i]: the faces [M^{-1}(x + l(p)), j] over prefix-suffix
    edges i -> j."""
    x, i = face
    out = set()
    for e in S.ps_edges:
        if e.src != i:
            continue
        y = em.solve_integer(S.M, em.vec_add(x, su.abelianize(e.prefix, S.d)))
        if y is None:
            raise NonIntegralImage(f"M^-1(x + l(p)) not integral for face {face}")
        out.add((y, e.dst))
    return frozenset(out)


def iterate_dual(seed, S: SpectralData, n, check_disjoint=True) -> frozenset:
    """n-fold dual substitution of a face set.

    With check_disjoint, asserts that images of distinct seed faces stay
    pairwise disjoint at every level (they must, for seeds inside H).
    """
    current = {f: frozenset([f]) for f in seed}
    for _ in range(n):
        nxt = {}
        for f, faces in current.items():
            imgs = set()
            for g in faces:
                imgs |= dual_image(g, S)
            nxt[f] = frozenset(imgs)
        current = nxt
        if check_disjoint:
            union = set()
            total = 0
            for faces in current.values():
                union |= faces
                total += len(faces)
            if len(union) != total:
                raise DisjointnessViolated("dual images of distinct faces overlap")
    out = set()
    for faces in current.values():
        out |= faces
    return frozenset(out)


def face_box(face: Face, d):
    """The closed (d-1)-cube of a face as per-coordinate intervals."""
    x, i = face
    return tuple(
        (x[k], x[k]) if k == i - 1 else (x[k], x[k] + 1) for k in range(d)
    )


def face_intersection_dim(f: Face, g: Face, d=None) -> int:
    """Dimension of the intersection of two faces as axis-aligned boxes;
    -1 for empty intersection."""
    if d is None:
        d = len(f[0])
    dim = 0
    for (alo, ahi), (blo, bhi) in zip(face_box(f, d), face_box(g, d)):
        lo, hi = max(alo, blo), min(ahi, bhi)
        if lo > hi:
            return -1
        if lo < hi:
            dim += 1
    return dim


def build_Dcont(S: SpectralData) -> frozenset:
    """The seed triples [i, x, j]: faces of H whose cubes [0,i] and [x,j]
    share a (d-2)-dimensional cube; x = 0 forces i < j.

    Faces are unit cubes, so x ranges over {-1, 0, 1}^d.
    """
    import itertools

    d = S.d
    out = set()
    zero = tuple([0] * d)
    for x in itertools.product((-1, 0, 1), repeat=d):
        for j in range(1, d + 1):
            if not in_H((x, j), S):
                continue
            for i in range(1, d + 1):
                if x == zero and i >= j:
                    continue
                if face_intersection_dim((zero, i), (x, j), d) == d - 2:
                    out.add((i, x, j))
    return frozenset(out)


def approximate_subtile(S: SpectralData, i, n, max_cells=500_000):
    """Combinatorial data of the n-th subtile approximation.

    Returns (n, faces) where faces = (sigma*)^n [0, i]; each face [y, j]
    stands for the parallelotope h^n [pi(y), j] of the approximation.  The
    numeric geometry is produced at render time (see render.subtile_patch).
    """
    zero = tuple([0] * S.d)
    faces = iterate_dual([(zero, i)], S, n, check_disjoint=False)
    if len(faces) > max_cells:
        raise PatchTooLarge(f"{len(faces)} cells exceeds cap {max_cells}")
    return n, faces


def stepped_patch(S: SpectralData, radius):
    """All faces [x, i] of H with ||x||_inf <= radius (a window of the
    stepped hypersurface around the origin)."""
    import itertools

    out = []
    for x in itertools.product(range(-radius, radius + 1), repeat=S.d):
        for i in range(1, S.d + 1):
            if in_H((x, i), S):
                out.append((x, i))
    return out
