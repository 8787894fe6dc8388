"""Words, substitutions, incidence matrices and Pisot certification."""

from __future__ import annotations

from dataclasses import dataclass

from . import exactmath as em
from .errors import TilegraphsError

Word = tuple[int, ...]

EMPTY: Word = ()


def word_from_string(s):
    s = s.strip()
    if not s or s in ("e", "eps", "epsilon"):
        return EMPTY
    if "," in s:
        return tuple(int(t) for t in s.split(","))
    return tuple(int(ch) for ch in s)


def word_to_string(w, d=None):
    if not w:
        return "eps"
    if (d or max(w)) <= 9:
        return "".join(str(c) for c in w)
    return ",".join(str(c) for c in w)


@dataclass(frozen=True)
class Substitution:
    """A letter-to-word map over the alphabet {1, ..., d}."""

    images: tuple[Word, ...]  # images[i-1] = sigma(i)

    def __post_init__(self):
        d = len(self.images)
        for i, w in enumerate(self.images, start=1):
            if not w:
                raise TilegraphsError(f"image of letter {i} is empty")
            if any(c < 1 or c > d for c in w):
                raise TilegraphsError(f"image of letter {i} uses letters outside 1..{d}")

    @property
    def d(self):
        return len(self.images)

    def image(self, i):
        return self.images[i - 1]

    def apply(self, w):
        out = []
        for c in w:
            out.extend(self.image(c))
        return tuple(out)

    def compose(self, other):
        """sigma o tau: first tau, then sigma."""
        return Substitution(tuple(self.apply(w) for w in other.images))

    def __str__(self):
        return "; ".join(
            f"{i} -> {word_to_string(w, self.d)}" for i, w in enumerate(self.images, 1)
        )


def parse_substitution(text) -> Substitution:
    """Parse lines of the form "i -> w", e.g. "1 -> 1112".

    Duplicate left-hand sides are an error; the left-hand sides must be
    exactly 1..d for some d.
    """
    rules = {}
    for line in text.splitlines():
        line = line.split("#")[0].strip()
        if not line:
            continue
        if "->" not in line:
            raise TilegraphsError(f"cannot parse rule: {line!r}")
        lhs, rhs = line.split("->", 1)
        i = int(lhs.strip())
        if i in rules:
            raise TilegraphsError(f"duplicate rule for letter {i}")
        rules[i] = word_from_string(rhs)
    if not rules or sorted(rules) != list(range(1, len(rules) + 1)):
        raise TilegraphsError(f"left-hand sides {sorted(rules)} are not 1..d")
    return Substitution(tuple(rules[i] for i in sorted(rules)))


def abelianize(w, d) -> tuple[int, ...]:
    """Letter-count vector (|w|_1, ..., |w|_d)."""
    out = [0] * d
    for c in w:
        out[c - 1] += 1
    return tuple(out)


def incidence(sigma: Substitution):
    """Incidence matrix: column i is the abelianization of sigma(i)."""
    d = sigma.d
    cols = [abelianize(sigma.image(i), d) for i in range(1, d + 1)]
    return tuple(tuple(cols[j][i] for j in range(d)) for i in range(d))


@dataclass(frozen=True)
class PrefixSuffixEdge:
    """Edge i -> j of the prefix-suffix graph: sigma(j) = prefix + i + suffix."""

    src: int
    dst: int
    prefix: Word
    suffix: Word


def prefix_suffix_graph(sigma: Substitution):
    """All decompositions sigma(j) = p i s, ordered by (j, position)."""
    edges = []
    for j in range(1, sigma.d + 1):
        w = sigma.image(j)
        for pos, i in enumerate(w):
            edges.append(PrefixSuffixEdge(i, j, w[:pos], w[pos + 1:]))
    return edges


@dataclass(frozen=True)
class PisotCertificate:
    minpoly: tuple[int, ...]
    isolation: em.RealIsolation

    @property
    def accepted(self):
        return True


@dataclass(frozen=True)
class PisotRejection:
    reason: str

    @property
    def accepted(self):
        return False


def _root_exceeds(iso: em.RealIsolation, bound):
    """Whether the isolated root is strictly greater than the rational bound."""
    if iso.exact:
        return iso.lo > bound
    while iso.lo < bound < iso.hi:
        if em.poly_eval(iso.coeffs, bound) == 0:
            return False
        iso = iso.refine()
    return iso.lo >= bound


def certify_pisot(sigma: Substitution):
    """Certify that the incidence matrix's characteristic polynomial is the
    minimal polynomial of a Pisot unit.

    Checks, all exactly: irreducibility over Q, a single dominant real root
    beta > 1 with every conjugate strictly inside the unit circle (via
    certified root counting), and constant term +-1.
    """
    cp = em.charpoly(incidence(sigma))
    if not em.is_irreducible(cp):
        return PisotRejection("reducible characteristic polynomial")
    inside, outside, on = em.halfplane_root_counts(cp)
    if on != 0 or outside != 1 or inside != len(cp) - 2:
        return PisotRejection(
            f"root distribution (inside={inside}, outside={outside}, on_circle={on}) "
            "is not Pisot"
        )
    reals = em.isolate_real_roots(cp)
    beta = reals[-1] if reals else None
    # the unique root outside the unit circle is real (a nonreal one would
    # bring its conjugate along); it must be the positive dominant root
    if beta is None or not _root_exceeds(beta, 1):
        return PisotRejection("dominant root is not a real number > 1")
    if abs(cp[0]) != 1:
        return PisotRejection(f"constant term {cp[0]} is not a unit")
    return PisotCertificate(cp, beta)
