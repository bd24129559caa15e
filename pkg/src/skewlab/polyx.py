"""Dense commutative polynomials over an exact field.

Used for extension moduli, for the central variable x (so hhat, reduced
norms and E_hhat arithmetic), and for the entries of the regular
representation matrices.  Coefficients are stored constant term first;
the zero polynomial has an empty coefficient tuple.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd, isqrt

from .errors import BothZero, DivisionByZero, UnknownIrreducibility


class Polynomial:
    """Immutable dense polynomial over a field object from ``fields``."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        cs = [field.coerce(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    # -- basic structure

    @property
    def degree(self):
        """Degree, with deg(0) = -inf."""
        return len(self.coeffs) - 1 if self.coeffs else float("-inf")

    def is_zero(self):
        return not self.coeffs

    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one

    def leading(self):
        if not self.coeffs:
            raise DivisionByZero("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.field is other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((id(self.field), self.coeffs))

    def __repr__(self):
        if not self.coeffs:
            return "Poly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                terms.append(f"{c}")
            elif i == 1:
                terms.append(f"({c})*x")
            else:
                terms.append(f"({c})*x^{i}")
        return "Poly(" + " + ".join(terms) + ")"

    # -- arithmetic

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(
            self.field, [self[i] + other[i] for i in range(n)]
        )

    def __sub__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(
            self.field, [self[i] - other[i] for i in range(n)]
        )

    def __neg__(self):
        return Polynomial(self.field, [-c for c in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return Polynomial(self.field, [c * other for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return Polynomial(self.field, [])
        out = [self.field.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = out[i + j] + a * b
        return Polynomial(self.field, out)

    __rmul__ = __mul__

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            return other
        return Polynomial(self.field, [other])

    def __divmod__(self, other):
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        lead_inv = other.leading().inv()
        rem = list(self.coeffs)
        q = [self.field.zero] * max(len(rem) - len(other.coeffs) + 1, 0)
        d = len(other.coeffs) - 1
        while len(rem) - 1 >= d and rem:
            c = rem[-1] * lead_inv
            shift = len(rem) - 1 - d
            q[shift] = c
            for i, b in enumerate(other.coeffs):
                rem[shift + i] = rem[shift + i] - c * b
            while rem and not rem[-1]:
                rem.pop()
        return Polynomial(self.field, q), Polynomial(self.field, rem)

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def monic(self):
        if self.is_zero():
            return self
        inv = self.leading().inv()
        return Polynomial(self.field, [c * inv for c in self.coeffs])

    def evaluate(self, point, lift=None):
        """Horner evaluation; ``lift`` embeds coefficients into point's ring."""
        if lift is None:
            lift = lambda c: c
        if not self.coeffs:
            return point - point  # zero of the point's ring
        acc = lift(self.coeffs[-1]) + (point - point)
        for c in reversed(self.coeffs[:-1]):
            acc = acc * point + lift(c)
        return acc

    def derivative(self):
        return Polynomial(
            self.field,
            [self.coeffs[i] * i for i in range(1, len(self.coeffs))],
        )

    # -- gcd / irreducibility

    def gcd(self, other):
        if self.is_zero() and other.is_zero():
            raise BothZero("gcd(0, 0)")
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def is_irreducible(self):
        """Exact irreducibility over the coefficient field.

        Finite fields use trial division by all monic polynomials of
        degree at most deg/2.  Over Q, degrees up to 4 are decided by
        integer factor enumeration (Gauss's lemma); degree >= 5 raises
        UnknownIrreducibility.
        """
        n = self.degree
        if n != n or n == float("-inf") or n < 1:
            return False
        if n == 1:
            return True
        if self.field.is_finite():
            f = self.monic()
            for d in range(1, n // 2 + 1):
                for g in iter_monic(self.field, d):
                    if (f % g).is_zero():
                        return False
            return True
        return _rational_irreducible(self)


def iter_monic(field, degree):
    """All monic polynomials of exact ``degree`` over a finite field."""
    for tail in itertools.product(field.elements(), repeat=degree):
        yield Polynomial(field, list(tail) + [field.one])


def x_power(field, k):
    return Polynomial(field, [field.zero] * k + [field.one])


def _as_fraction(c):
    rep = getattr(c, "rep", c)
    if isinstance(rep, Fraction):
        return rep
    raise UnknownIrreducibility("rational irreducibility test needs Q coefficients")


def _int_divisors(n):
    n = abs(n)
    out = set()
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            out.update((d, -d, n // d, -(n // d)))
    return sorted(out)


def _rational_irreducible(poly):
    """Monic-over-Q irreducibility for degree <= 4."""
    n = poly.degree
    f = poly.monic()
    fracs = [_as_fraction(c) for c in f.coeffs]
    # substitute x = y / c with c = lcm of denominators: monic integer poly
    den = 1
    for q in fracs:
        den = den * q.denominator // gcd(den, q.denominator)
    ints = [int(fracs[i] * den ** (n - i)) for i in range(n + 1)]
    if ints[0] == 0:
        return False  # root at 0
    # rational roots are integer divisors of the constant term
    for r in _int_divisors(ints[0]):
        acc = 0
        for c in reversed(ints):
            acc = acc * r + c
        if acc == 0:
            return False
    if n <= 3:
        return True
    if n == 4:
        # monic integer quartic: check (x^2+ax+b)(x^2+cx+d) with b*d = e0
        e0, e1, e2, e3 = ints[0], ints[1], ints[2], ints[3]
        for b in _int_divisors(e0):
            if e0 % b != 0:
                continue
            d = e0 // b
            # a + c = e3 and a*c = e2 - b - d, integer roots required
            s, p = e3, e2 - b - d
            disc = s * s - 4 * p
            if disc < 0:
                continue
            r = isqrt(disc)
            if r * r != disc or (s - r) % 2 != 0:
                continue
            a = (s - r) // 2
            c = s - a
            for aa, cc in ((a, c), (c, a)):
                if aa * d + cc * b == e1:
                    return False
        return True
    raise UnknownIrreducibility(f"degree {n} over Q not decided")
