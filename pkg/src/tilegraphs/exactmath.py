"""Exact integer linear algebra and arithmetic in the real field Q(beta).

Vectors are tuples of Python ints, matrices are tuples of row tuples.
Everything here is exact: rationals via fractions.Fraction, real signs via
symbolic zero tests plus interval refinement of an isolated root.  sympy is
used for polynomial factorisation, real root isolation and certified
complex root counting; all decisions derived from it are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import sympy
from sympy.abc import x as _x

from .errors import ReduciblePolynomial, SingularMatrix

Vec = tuple[int, ...]
Mat = tuple[tuple[int, ...], ...]


# ---------------------------------------------------------------------------
# integer / rational linear algebra


def identity(d):
    return tuple(tuple(1 if i == j else 0 for j in range(d)) for i in range(d))


def mat_vec(M, v):
    return tuple(sum(M[i][j] * v[j] for j in range(len(v))) for i in range(len(M)))


def mat_mul(A, B):
    n, m, k = len(A), len(B[0]), len(B)
    return tuple(
        tuple(sum(A[i][t] * B[t][j] for t in range(k)) for j in range(m))
        for i in range(n)
    )


def mat_pow(M, n):
    d = len(M)
    out = identity(d)
    P = M
    while n:
        if n & 1:
            out = mat_mul(out, P)
        P = mat_mul(P, P)
        n >>= 1
    return out


def vec_add(a, b):
    return tuple(p + q for p, q in zip(a, b))


def vec_sub(a, b):
    return tuple(p - q for p, q in zip(a, b))


def vec_neg(a):
    return tuple(-p for p in a)


def mat_det(M):
    """Determinant by fraction-free elimination (exact integer result)."""
    d = len(M)
    A = [[Fraction(e) for e in row] for row in M]
    det = Fraction(1)
    for c in range(d):
        piv = next((r for r in range(c, d) if A[r][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det *= A[c][c]
        for r in range(c + 1, d):
            f = A[r][c] / A[c][c]
            for j in range(c, d):
                A[r][j] -= f * A[c][j]
    assert det.denominator == 1
    return int(det)


def solve_rational(M, b):
    """Solve M y = b over Q.  Raises SingularMatrix if det(M) = 0."""
    d = len(M)
    A = [[Fraction(M[i][j]) for j in range(d)] + [Fraction(b[i])] for i in range(d)]
    for c in range(d):
        piv = next((r for r in range(c, d) if A[r][c] != 0), None)
        if piv is None:
            raise SingularMatrix("matrix is singular")
        A[c], A[piv] = A[piv], A[c]
        A[c] = [e / A[c][c] for e in A[c]]
        for r in range(d):
            if r != c and A[r][c] != 0:
                f = A[r][c]
                A[r] = [e - f * g for e, g in zip(A[r], A[c])]
    return tuple(A[i][d] for i in range(d))


def solve_integer(M, b):
    """Solve M y = b over Z; returns the integer vector or None."""
    y = solve_rational(M, b)
    if all(q.denominator == 1 for q in y):
        return tuple(int(q) for q in y)
    return None


def mat_inverse(M):
    """Exact inverse as a matrix of Fractions."""
    d = len(M)
    cols = [solve_rational(M, tuple(1 if i == j else 0 for i in range(d))) for j in range(d)]
    return tuple(tuple(cols[j][i] for j in range(d)) for i in range(d))


def residue_decompose(M, digits, v):
    """Write v = M*y + d with d in the digit set; returns (d, y).

    The digit set must be a complete residue system mod M (the caller is
    responsible for that); if no digit or several digits match, the input
    was not one and NotResidueSystem is raised.
    """
    from .errors import NotResidueSystem

    hits = []
    for d in digits:
        y = solve_integer(M, vec_sub(v, d))
        if y is not None:
            hits.append((d, y))
    if len(hits) != 1:
        raise NotResidueSystem(f"{len(hits)} digits congruent to {v}")
    return hits[0]


def norm_inf_mat(M):
    return max(sum(abs(Fraction(e)) for e in row) for row in M)


def norm_inf_vec(v):
    return max(abs(e) for e in v) if v else 0


# ---------------------------------------------------------------------------
# polynomials (coefficient tuples, ascending order c0 + c1 x + ...)


def poly_eval(coeffs, t):
    out = Fraction(0)
    for c in reversed(coeffs):
        out = out * t + c
    return out


def poly_eval_interval(coeffs, lo, hi):
    """Interval Horner evaluation; returns (lo, hi) bounds of p([lo, hi])."""
    alo, ahi = Fraction(0), Fraction(0)
    for c in reversed(coeffs):
        cands = (alo * lo, alo * hi, ahi * lo, ahi * hi)
        alo, ahi = min(cands) + c, max(cands) + c
    return alo, ahi


def charpoly(M):
    """Monic characteristic polynomial of an integer matrix.

    Returned ascending, e.g. x^3 - 3x^2 - 2x - 1 -> (-1, -2, -3, 1).
    """
    coeffs = sympy.Matrix(M).charpoly(_x).all_coeffs()  # descending
    return tuple(int(c) for c in reversed(coeffs))


def is_irreducible(coeffs):
    return sympy.Poly(list(reversed(coeffs)), _x).is_irreducible


def halfplane_root_counts(coeffs):
    """Count roots of p relative to the unit circle, exactly.

    Returns (inside, outside, on_circle).  Uses the Moebius substitution
    z = (w+1)/(w-1), which maps |z| < 1 to Re(w) < 0, followed by certified
    rectangle root counting.  Roots at z = 1 and z = -1 are handled first.
    """
    p = sympy.Poly(list(reversed(coeffs)), _x)
    n = p.degree()
    on = 0
    while p.eval(1) == 0:
        p = p.quo(sympy.Poly([1, -1], _x))
        on += 1
    while p.eval(-1) == 0:
        p = p.quo(sympy.Poly([1, 1], _x))
        on += 1
    m = p.degree()
    if m == 0:
        return 0, 0, on
    # q(w) = (w-1)^m p((w+1)/(w-1))
    a = p.all_coeffs()[::-1]  # ascending
    q = sympy.Poly(0, _x)
    wp = sympy.Poly([1, 1], _x)  # w + 1
    wm = sympy.Poly([1, -1], _x)  # w - 1
    for k, ak in enumerate(a):
        q = q + sympy.Poly(ak, _x) * wp**k * wm ** (m - k)
    assert q.degree() == m
    qc = [abs(sympy.Rational(c)) for c in q.all_coeffs()]
    B = 2 + max(c / qc[0] for c in qc)  # Cauchy bound on roots of q
    left = q.count_roots(inf=-B - B * sympy.I, sup=0 + B * sympy.I)
    right = q.count_roots(inf=0 - B * sympy.I, sup=B + B * sympy.I)
    # closed rectangles: roots on the imaginary axis are counted twice
    axis = left + right - m
    return left - axis, right - axis, on + axis


def is_expanding_poly(coeffs):
    inside, outside, on = halfplane_root_counts(coeffs)
    return inside == 0 and on == 0 and outside == len(coeffs) - 1


# ---------------------------------------------------------------------------
# real root isolation


@dataclass(frozen=True)
class RealIsolation:
    """An integer polynomial together with a rational interval isolating
    exactly one of its real roots.  lo == hi encodes an exact rational root."""

    coeffs: tuple[int, ...]
    lo: Fraction
    hi: Fraction

    @property
    def exact(self):
        return self.lo == self.hi

    def refine(self):
        """One bisection step; returns a new isolation of half the width."""
        if self.exact:
            return self
        mid = (self.lo + self.hi) / 2
        pm = poly_eval(self.coeffs, mid)
        if pm == 0:
            return RealIsolation(self.coeffs, mid, mid)
        plo = poly_eval(self.coeffs, self.lo)
        if (plo < 0) == (pm < 0):
            return RealIsolation(self.coeffs, mid, self.hi)
        return RealIsolation(self.coeffs, self.lo, mid)

    def refine_to(self, width):
        iso = self
        while not iso.exact and iso.hi - iso.lo > width:
            iso = iso.refine()
        return iso

    def midpoint(self):
        return (self.lo + self.hi) / 2

    def to_float(self, bits=64):
        return float(self.refine_to(Fraction(1, 2**bits)).midpoint())


def isolate_real_roots(coeffs):
    """Isolating intervals for all real roots, in increasing order."""
    p = sympy.Poly(list(reversed(coeffs)), _x)
    out = []
    for (lo, hi), _mult in p.intervals():
        iso = RealIsolation(coeffs, Fraction(lo.p, lo.q), Fraction(hi.p, hi.q))
        if not iso.exact:
            # sympy guarantees open intervals with nonzero endpoint values
            assert poly_eval(coeffs, iso.lo) != 0 and poly_eval(coeffs, iso.hi) != 0
        out.append(iso)
    return out


def isolate_largest_real_root(coeffs):
    roots = isolate_real_roots(coeffs)
    if not roots:
        raise ValueError("polynomial has no real root")
    return roots[-1]


# ---------------------------------------------------------------------------
# the number field Q(beta)


class NumberField:
    """Q(beta) for beta an isolated real root of a monic integer polynomial.

    Elements are polynomials in beta with Fraction coefficients, reduced
    modulo the minimal polynomial.  Signs of nonzero elements are decided
    by refining the isolating interval of beta; the zero test is symbolic.
    """

    def __init__(self, minpoly, isolation=None):
        if minpoly[-1] != 1:
            raise ValueError("minimal polynomial must be monic")
        self.minpoly = tuple(int(c) for c in minpoly)
        self.degree = len(minpoly) - 1
        self._iso = isolation or isolate_largest_real_root(self.minpoly)

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.minpoly == other.minpoly

    def __hash__(self):
        return hash(self.minpoly)

    def __repr__(self):
        return f"NumberField(minpoly={self.minpoly})"

    @property
    def isolation(self):
        return self._iso

    def element(self, coeffs):
        cs = [Fraction(c) for c in coeffs]
        if len(cs) >= len(self.minpoly):
            cs = self._reduce(cs)
        cs += [Fraction(0)] * (self.degree - len(cs))
        return NumberFieldElement(self, tuple(cs))

    def zero(self):
        return self.element([])

    def one(self):
        return self.element([1])

    def gen(self):
        """The element beta itself."""
        return self.element([0, 1])

    def _reduce(self, cs):
        cs = list(cs)
        mp = self.minpoly
        deg = self.degree
        while len(cs) > deg:
            lead = cs.pop()
            if lead:
                for k in range(deg):
                    cs[len(cs) - deg + k] -= lead * mp[k]
        return cs

    def sign(self, elem):
        """Exact sign of elem evaluated at beta: -1, 0 or +1."""
        if elem.is_zero():
            return 0
        while True:
            lo, hi = poly_eval_interval(elem.coeffs, self._iso.lo, self._iso.hi)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            if self._iso.exact:
                v = poly_eval(elem.coeffs, self._iso.lo)
                return 0 if v == 0 else (1 if v > 0 else -1)
            self._iso = self._iso.refine()

    def beta_float(self, bits=64):
        self._iso = self._iso.refine_to(Fraction(1, 2**bits))
        return float(self._iso.midpoint())


class NumberFieldElement:
    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = coeffs

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, NumberFieldElement)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field.minpoly, self.coeffs))

    def __repr__(self):
        return f"NFE{self.coeffs}"

    def _coerce(self, other):
        if isinstance(other, NumberFieldElement):
            return other
        return self.field.element([Fraction(other)])

    def __add__(self, other):
        o = self._coerce(other)
        return NumberFieldElement(
            self.field, tuple(a + b for a, b in zip(self.coeffs, o.coeffs))
        )

    __radd__ = __add__

    def __neg__(self):
        return NumberFieldElement(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return NumberFieldElement(self.field, tuple(a * other for a in self.coeffs))
        o = self._coerce(other)
        deg = self.field.degree
        prod = [Fraction(0)] * (2 * deg - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        prod[i + j] += a * b
        return self.field.element(prod)

    __rmul__ = __mul__

    def inverse(self):
        """Multiplicative inverse via the extended Euclidean algorithm."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in number field")
        a = [Fraction(c) for c in self.field.minpoly]
        b = list(self.coeffs)
        inv = _poly_xgcd_mod(a, b)
        return self.field.element(inv)

    def __truediv__(self, other):
        o = self._coerce(other)
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def sign(self):
        return self.field.sign(self)

    def eval_float(self, bits=64):
        beta = self.field.beta_float(bits)
        out = 0.0
        for c in reversed(self.coeffs):
            out = out * beta + float(c)
        return out


def _poly_trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b) and _poly_trim(a):
        if len(a) < len(b):
            break
        f = a[-1] / b[-1]
        k = len(a) - len(b)
        q[k] = f
        for i, c in enumerate(b):
            a[k + i] -= f * c
        a.pop()
    return q, _poly_trim(a)


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return _poly_trim([p - q for p, q in zip(a, b)])


def _poly_xgcd_mod(m, b):
    """Coefficients of b^{-1} modulo the (irreducible) polynomial m."""
    r0, r1 = _poly_trim(list(m)), _poly_trim(list(b))
    t0, t1 = [], [Fraction(1)]
    while r1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        t0, t1 = t1, _poly_sub(t0, _poly_mul(q, t1))
    # r0 is the gcd, a nonzero constant since m is irreducible and deg b < deg m
    if len(r0) != 1:
        raise ZeroDivisionError("element not invertible (reducible modulus?)")
    c = r0[0]
    return [t / c for t in t0]


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, p in enumerate(a):
        if p:
            for j, q in enumerate(b):
                out[i + j] += p * q
    return out


# ---------------------------------------------------------------------------
# Perron data


@dataclass(frozen=True)
class PerronData:
    """Characteristic polynomial, isolated dominant root and exact dominant
    eigenvectors (right u, left v) of an integer matrix, entries in Q(beta)."""

    minpoly: tuple[int, ...]
    field: NumberField
    u: tuple[NumberFieldElement, ...]
    v: tuple[NumberFieldElement, ...]

    @property
    def isolation(self):
        return self.field.isolation


def perron_data(M):
    """Exact spectral data of M; requires an irreducible characteristic
    polynomial.  Eigenvectors are normalised so the last coordinate is 1."""
    cp = charpoly(M)
    if not is_irreducible(cp):
        raise ReduciblePolynomial(f"characteristic polynomial {cp} factors over Q")
    field = NumberField(cp)
    u = _dominant_kernel_vector(M, field)
    d = len(M)
    Mt = tuple(tuple(M[j][i] for j in range(d)) for i in range(d))
    v = _dominant_kernel_vector(Mt, field)
    return PerronData(cp, field, u, v)


def _dominant_kernel_vector(M, field):
    """A nonzero solution of (M - beta I) w = 0, last coordinate set to 1."""
    d = len(M)
    beta = field.gen()
    A = [
        [field.element([M[i][j]]) - (beta if i == j else 0) for j in range(d)]
        for i in range(d)
    ]
    # Gaussian elimination over Q(beta); the kernel is 1-dimensional since
    # the characteristic polynomial is irreducible (beta is a simple root).
    pivots = []
    row = 0
    for col in range(d):
        piv = next((r for r in range(row, d) if not A[r][col].is_zero()), None)
        if piv is None:
            continue
        A[row], A[piv] = A[piv], A[row]
        inv = A[row][col].inverse()
        A[row] = [e * inv for e in A[row]]
        for r in range(d):
            if r != row and not A[r][col].is_zero():
                f = A[r][col]
                A[r] = [e - f * g for e, g in zip(A[r], A[row])]
        pivots.append(col)
        row += 1
    free = [c for c in range(d) if c not in pivots]
    if len(free) != 1:
        raise ValueError("eigenspace is not 1-dimensional")
    fc = free[0]
    w = [field.zero()] * d
    w[fc] = field.one()
    for r, pc in enumerate(pivots):
        w[pc] = -A[r][fc]
    last = w[-1]
    if last.is_zero():
        raise ValueError("cannot normalise: last eigenvector coordinate is 0")
    inv = last.inverse()
    return tuple(e * inv for e in w)
