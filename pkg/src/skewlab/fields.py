"""Exact field towers: prime fields, Q, and single-generator extensions.

Every element carries a reference to its field; mixing contexts raises
ContextMismatch.  Extensions store their base explicitly, so norms only
compose along declared chains.  Automorphisms fix the base pointwise and
are given by the image of the generator.

Text encoding of elements (used by spec files and code files):

* prime field: the integer representative,
* extension of a prime field: an integer in [0, p^e) whose little-endian
  base-p digits are the power-basis coordinates,
* Q: a Fraction literal like ``-3/2``,
* extension of Q: coordinates joined with ``:``, e.g. ``1/2:-1``.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .errors import (
    ContextMismatch,
    DivisionByZero,
    NotInTower,
    SkewlabError,
)
from .polyx import Polynomial


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class FieldElement:
    """Element of one of the field classes below; immutable and hashable."""

    __slots__ = ("field", "rep")

    def __init__(self, field, rep):
        self.field = field
        self.rep = rep

    def _binop(self, other, op):
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise ContextMismatch(
                    f"elements of {self.field} and {other.field}"
                )
        else:
            other = self.field.from_int(other)
        return op(self, other)

    def __add__(self, other):
        return self._binop(other, self.field._add)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binop(other, self.field._sub)

    def __rsub__(self, other):
        return self.field.from_int(other) - self

    def __mul__(self, other):
        return self._binop(other, self.field._mul)

    __rmul__ = __mul__

    def __neg__(self):
        return self.field._neg(self)

    def __truediv__(self, other):
        if not isinstance(other, FieldElement):
            other = self.field.from_int(other)
        return self * other.inv()

    def inv(self):
        if not self:
            raise DivisionByZero(f"inverse of zero in {self.field}")
        return self.field._inv(self)

    def __pow__(self, k):
        if k < 0:
            return self.inv() ** (-k)
        out = self.field.one
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __bool__(self):
        return self.field._nonzero(self)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field is other.field and self.rep == other.rep
        if isinstance(other, int):
            return self == self.field.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((id(self.field), self.rep))

    def __repr__(self):
        return self.field.render(self)

    def coordinates(self):
        """Coordinates over the immediate base field."""
        return self.field.coordinates(self)

    def flatten(self):
        """Coordinates over the bottom of the tower (prime field or Q)."""
        return self.field.flatten(self)


class _Field:
    """Shared behaviour; concrete classes fill in the raw operations."""

    def element(self, rep):
        return FieldElement(self, rep)

    def coerce(self, value):
        if isinstance(value, FieldElement):
            if value.field is self:
                return value
            raise ContextMismatch(f"element of {value.field} given to {self}")
        if isinstance(value, (int, Fraction)):
            return self.from_int(value)
        raise ContextMismatch(f"cannot coerce {value!r} into {self}")

    def _nonzero(self, x):
        return x.rep != self.zero.rep

    def __repr__(self):
        return self.name


class PrimeField(_Field):
    """F_p with integer representatives in [0, p)."""

    def __init__(self, p):
        if not _is_prime(p):
            raise SkewlabError(f"{p} is not prime")
        self.p = p
        self.name = f"F{p}"
        self.zero = self.element(0)
        self.one = self.element(1)

    characteristic = property(lambda self: self.p)

    def degree_over_prime(self):
        return 1

    def order(self):
        return self.p

    def is_finite(self):
        return True

    def from_int(self, n):
        return self.element(int(n) % self.p)

    def _add(self, a, b):
        return self.element((a.rep + b.rep) % self.p)

    def _sub(self, a, b):
        return self.element((a.rep - b.rep) % self.p)

    def _mul(self, a, b):
        return self.element((a.rep * b.rep) % self.p)

    def _neg(self, a):
        return self.element(-a.rep % self.p)

    def _inv(self, a):
        return self.element(pow(a.rep, -1, self.p))

    def elements(self):
        return (self.element(i) for i in range(self.p))

    def coordinates(self, x):
        return (x,)

    def flatten(self, x):
        return (x,)

    def encode(self, x):
        return str(x.rep)

    def decode(self, token):
        return self.element(int(token) % self.p)

    def from_index(self, n):
        return self.element(n % self.p)

    def index_of(self, x):
        return x.rep

    def render(self, x):
        return str(x.rep)


class RationalField(_Field):
    """Q with Fraction representatives."""

    def __init__(self):
        self.name = "Q"
        self.zero = self.element(Fraction(0))
        self.one = self.element(Fraction(1))

    characteristic = property(lambda self: 0)

    def degree_over_prime(self):
        return 1

    def is_finite(self):
        return False

    def from_int(self, n):
        return self.element(Fraction(n))

    def _add(self, a, b):
        return self.element(a.rep + b.rep)

    def _sub(self, a, b):
        return self.element(a.rep - b.rep)

    def _mul(self, a, b):
        return self.element(a.rep * b.rep)

    def _neg(self, a):
        return self.element(-a.rep)

    def _inv(self, a):
        return self.element(1 / a.rep)

    def coordinates(self, x):
        return (x,)

    def flatten(self, x):
        return (x,)

    def encode(self, x):
        return str(x.rep)

    def decode(self, token):
        return self.element(Fraction(token))

    def render(self, x):
        return str(x.rep)


#: shared instance; there is no reason to ever build a second copy
QQ = RationalField()


class FieldExtension(_Field):
    """base[g] / (modulus), power-basis coordinates, exact arithmetic.

    ``modulus`` is a monic irreducible polynomial over the base, given
    constant term first.  ``galois_image`` optionally names the image of
    the generator under a cyclic Galois generator of the extension (for
    finite bases the Frobenius is installed automatically); norms down
    the tower need it.
    """

    def __init__(self, base, modulus, name="g", galois_image=None,
                 check_irreducible=True):
        self.base = base
        mod = modulus if isinstance(modulus, Polynomial) else Polynomial(base, modulus)
        if not mod.is_monic():
            raise SkewlabError("modulus must be monic")
        if check_irreducible and not mod.is_irreducible():
            raise SkewlabError(f"modulus {mod} is reducible over {base}")
        self.modulus = mod
        self.degree = mod.degree
        self.gen_name = name
        self.name = f"{base}({name})"
        self.zero = self.element((base.zero,) * self.degree)
        one = [base.one] + [base.zero] * (self.degree - 1)
        self.one = self.element(tuple(one))
        gen_rep = [base.zero] * self.degree
        if self.degree >= 2:
            gen_rep[1] = base.one
        else:
            gen_rep[0] = -mod.coeffs[0]
        self.gen = self.element(tuple(gen_rep))
        # reduction rows for x^degree .. x^(2*degree-2)
        self._red = []
        row = [-c for c in mod.coeffs[:-1]]
        for _ in range(self.degree - 1):
            self._red.append(tuple(row))
            top = row[-1]
            row = [base.zero] + row[:-1]
            if top:
                row = [row[i] - top * mod.coeffs[i] for i in range(self.degree)]
        self._mul_memo = {} if base.is_finite() and self.order() <= 4096 else None
        self._inv_memo = {} if self._mul_memo is not None else None
        self.galois = None
        if base.is_finite():
            p = self.characteristic
            img = self.gen ** (p ** base.degree_over_prime())
            self.galois = Automorphism(self, img, label="frobenius")
        elif galois_image is not None:
            self.galois = Automorphism(self, self.coerce_coords(galois_image))

    characteristic = property(lambda self: self.base.characteristic)

    def degree_over_prime(self):
        return self.degree * self.base.degree_over_prime()

    def is_finite(self):
        return self.base.is_finite()

    def order(self):
        return self.base.order() ** self.degree

    def coerce_coords(self, coords):
        if isinstance(coords, FieldElement) and coords.field is self:
            return coords
        return self.element(tuple(self.base.coerce(c) for c in coords))

    def embed(self, x):
        """Embed a base-field element (or int) as a constant."""
        c = self.base.coerce(x)
        return self.element((c,) + (self.base.zero,) * (self.degree - 1))

    def from_int(self, n):
        return self.embed(self.base.from_int(n))

    def _add(self, a, b):
        return self.element(tuple(x + y for x, y in zip(a.rep, b.rep)))

    def _sub(self, a, b):
        return self.element(tuple(x - y for x, y in zip(a.rep, b.rep)))

    def _neg(self, a):
        return self.element(tuple(-x for x in a.rep))

    def _nonzero(self, a):
        return any(a.rep)

    def _mul(self, a, b):
        memo = self._mul_memo
        if memo is not None:
            key = (a.rep, b.rep)
            hit = memo.get(key)
            if hit is not None:
                return self.element(hit)
        d = self.degree
        conv = [self.base.zero] * (2 * d - 1)
        for i, x in enumerate(a.rep):
            if not x:
                continue
            for j, y in enumerate(b.rep):
                if y:
                    conv[i + j] = conv[i + j] + x * y
        out = conv[:d]
        for k in range(d, 2 * d - 1):
            c = conv[k]
            if c:
                red = self._red[k - d]
                out = [out[i] + c * red[i] for i in range(d)]
        rep = tuple(out)
        if memo is not None:
            memo[key] = rep
            memo[(b.rep, a.rep)] = rep
        return self.element(rep)

    def _inv(self, a):
        memo = self._inv_memo
        if memo is not None and a.rep in memo:
            return self.element(memo[a.rep])
        # extended Euclid in base[x] against the modulus
        r0, r1 = self.modulus, Polynomial(self.base, a.rep)
        s0, s1 = Polynomial(self.base, []), Polynomial(self.base, [self.base.one])
        while not r1.is_zero():
            q, r = divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
        if r0.degree != 0:
            raise DivisionByZero("modulus not coprime with element")
        c = r0.coeffs[0].inv()
        coeffs = [x * c for x in s0.coeffs]
        coeffs += [self.base.zero] * (self.degree - len(coeffs))
        rep = tuple(coeffs[: self.degree])
        if memo is not None:
            memo[a.rep] = rep
        return self.element(rep)

    def elements(self):
        if not self.is_finite():
            raise SkewlabError("cannot enumerate an infinite field")
        for combo in itertools.product(self.base.elements(), repeat=self.degree):
            yield self.element(tuple(combo))

    def coordinates(self, x):
        return x.rep

    def flatten(self, x):
        out = []
        for c in x.rep:
            out.extend(c.flatten())
        return tuple(out)

    def from_flat(self, coords):
        """Inverse of flatten: build an element from bottom-level coordinates."""
        step = self.base.degree_over_prime()
        rep = []
        for i in range(self.degree):
            chunk = coords[i * step:(i + 1) * step]
            if isinstance(self.base, FieldExtension):
                rep.append(self.base.from_flat(chunk))
            else:
                rep.append(self.base.coerce(chunk[0]))
        return self.element(tuple(rep))

    # -- integer / text encodings

    def from_index(self, n):
        if not self.is_finite():
            raise SkewlabError("index encoding needs a finite field")
        q = self.base.order()
        rep = []
        for _ in range(self.degree):
            rep.append(self.base.from_index(n % q))
            n //= q
        return self.element(tuple(rep))

    def index_of(self, x):
        q = self.base.order()
        n = 0
        for c in reversed(x.rep):
            n = n * q + self.base.index_of(c)
        return n

    def encode(self, x):
        if self.is_finite():
            return str(self.index_of(x))
        return ":".join(self.base.encode(c) for c in x.rep)

    def decode(self, token):
        if self.is_finite():
            n = int(token)
            if not 0 <= n < self.order():
                raise SkewlabError(f"element index {n} out of range for {self}")
            return self.from_index(n)
        parts = token.split(":")
        if len(parts) != self.degree:
            raise SkewlabError(
                f"expected {self.degree} coordinates for {self}, got {token!r}"
            )
        return self.element(tuple(self.base.decode(p) for p in parts))

    def render(self, x):
        names = {0: "1", 1: self.gen_name}
        terms = []
        for i, c in enumerate(x.rep):
            if not c:
                continue
            mono = names.get(i, f"{self.gen_name}^{i}")
            if i == 0:
                terms.append(f"{c}")
            elif c == self.base.one:
                terms.append(mono)
            else:
                terms.append(f"({c})*{mono}")
        return " + ".join(terms) if terms else "0"


class Automorphism:
    """Field automorphism fixing the base pointwise, given by gen image."""

    def __init__(self, field, gen_image, label=None):
        self.field = field
        self.gen_image = field.coerce(gen_image)
        if self.field.modulus.evaluate(self.gen_image, lift=field.embed):
            raise SkewlabError("generator image is not a root of the modulus")
        self.label = label or f"auto({self.gen_image!r})"
        self._images = {0: field.gen, 1: self.gen_image}
        self._order = None

    def order(self):
        if self._order is None:
            img = self.gen_image
            k = 1
            while img != self.field.gen:
                img = self._apply_once(img)
                k += 1
                if k > self.field.degree_over_prime() + 1:
                    raise SkewlabError("automorphism order exceeds field degree")
            self._order = k
        return self._order

    def _apply_once(self, x):
        acc = self.field.zero
        for c in reversed(x.rep):
            acc = acc * self.gen_image + self.field.embed(c)
        return acc

    def _gen_power_image(self, k):
        if k not in self._images:
            prev = self._gen_power_image(k - 1)
            self._images[k] = self._apply_once(prev)
        return self._images[k]

    def __call__(self, x, power=1):
        if x.field is not self.field:
            raise ContextMismatch("automorphism applied outside its field")
        k = power % self.order()
        if k == 0:
            return x
        img = self._gen_power_image(k)
        acc = self.field.zero
        for c in reversed(x.rep):
            acc = acc * img + self.field.embed(c)
        return acc

    def inverse_power(self):
        return self.order() - 1

    def is_identity(self):
        return self.gen_image == self.field.gen

    def __repr__(self):
        return f"Automorphism({self.field}, {self.label})"


def identity_auto(field):
    return Automorphism(field, field.gen, label="id")


def frobenius(field, power=1):
    """x -> x^(p^power) on a finite extension field."""
    p = field.characteristic
    return Automorphism(field, field.gen ** (p ** power), label=f"frob^{power}")


class SubfieldView:
    """A registered subfield of an ambient extension, as a subset."""

    def __init__(self, ambient, basis, degree, label):
        self.ambient = ambient
        self.basis = basis        # F-basis of the subfield inside ambient
        self.degree = degree      # dimension over the bottom field
        self.label = label

    def __repr__(self):
        return f"Subfield({self.label} of {self.ambient})"


def fix_field(phi):
    """Fixed subfield of an automorphism and the index [field : fixed].

    Returns the ambient field itself for the identity, the base field when
    the fixed set is the bottom of the tower, and a SubfieldView otherwise.
    """
    K = phi.field
    if phi.is_identity():
        return K, 1
    d = K.degree
    base = K.base
    # base-linear system phi(x) = x over the power basis
    cols = []
    for j in range(d):
        img = phi(K.gen ** j)
        cols.append(img.rep)
    rows = []
    for i in range(d):
        rows.append([cols[j][i] - (base.one if i == j else base.zero)
                     for j in range(d)])
    from .linalg import nullspace

    fixed = nullspace(rows, base)
    e0 = len(fixed)
    if d % e0 != 0:
        raise SkewlabError("fixed set is not a subfield")
    index = d // e0
    if e0 == 1:
        return base, index
    basis = [K.element(tuple(v)) for v in fixed]
    return SubfieldView(K, basis, e0 * base.degree_over_prime(), f"Fix({phi.label})"), index


def relative_norm(x, frm, to):
    """Norm along the declared tower; multiplicative, lands in ``to``.

    ``to`` may be the field itself, any field further down the base chain,
    or a SubfieldView of ``frm``.
    """
    if frm is to:
        return x
    if isinstance(to, SubfieldView):
        if to.ambient is not frm:
            raise NotInTower(f"{to} is not a subfield view of {frm}")
        if frm.galois is None:
            raise NotInTower(f"{frm} has no registered Galois generator")
        total = frm.degree
        rel = total * frm.base.degree_over_prime() // to.degree
        acc = frm.one
        for i in range(rel):
            acc = acc * frm.galois(x, power=i * (total // rel))
        return acc
    if isinstance(frm, FieldExtension):
        if frm.galois is None:
            raise NotInTower(f"{frm} has no registered Galois generator")
        acc = frm.one
        for i in range(frm.degree):
            acc = acc * frm.galois(x, power=i)
        # the product is fixed by the Galois generator, so it lies in the base
        if any(acc.rep[1:]):
            raise NotInTower(f"norm of {x!r} did not land in {frm.base}")
        down = acc.rep[0]
        return relative_norm(down, frm.base, to)
    raise NotInTower(f"no registered chain from {frm} to {to}")


# -- ready-made fields used throughout the tests and docs

def GF(q, name=None):
    """The standard models used in this package: F_4, F_8, F_9, F_p."""
    table = {
        4: (2, [1, 1, 1], "th"),
        8: (2, [1, 1, 0, 1], "w"),
        9: (3, [2, 2, 1], "g"),
        16: (2, [1, 1, 0, 0, 1], "v"),
        27: (3, [1, 2, 0, 1], "c"),
    }
    if _is_prime(q):
        return PrimeField(q)
    if q not in table:
        raise SkewlabError(f"no built-in model for GF({q})")
    p, mod, gname = table[q]
    return FieldExtension(PrimeField(p), mod, name=name or gname)


def gaussian_rationals():
    """Q(i) with conjugation registered as the Galois generator."""
    K = FieldExtension(QQ, [1, 0, 1], name="i",
                       galois_image=(Fraction(0), Fraction(-1)))
    return K
