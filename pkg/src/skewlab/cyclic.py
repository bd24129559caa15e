"""Cyclic algebras D = (E/C, gamma, a) with exact coordinates.

Elements are stored as left E-coordinates with respect to the basis
{1, e, ..., e^(d-1)}, with the relations e*z = gamma(z)*e for z in E and
e^d = a, where a is a nonzero element of the fixed field C of gamma.
Whether the declared algebra is actually division is taken as a
hypothesis of the construction; a singular inverse raises NotInvertible.
"""

from __future__ import annotations

from .errors import ContextMismatch, DivisionByZero, NotInvertible, SkewlabError
from .fields import Automorphism, FieldExtension
from .linalg import solve


class CycElement:
    """Element of a CyclicAlgebraCtx; immutable, operator-overloaded."""

    __slots__ = ("ctx", "coords")

    def __init__(self, ctx, coords):
        self.ctx = ctx
        self.coords = coords

    def _other(self, other):
        if isinstance(other, CycElement):
            if other.ctx is not self.ctx:
                raise ContextMismatch("elements of different cyclic algebras")
            return other
        return self.ctx.coerce(other)

    def __add__(self, other):
        other = self._other(other)
        return CycElement(
            self.ctx, tuple(a + b for a, b in zip(self.coords, other.coords))
        )

    __radd__ = __add__

    def __sub__(self, other):
        other = self._other(other)
        return CycElement(
            self.ctx, tuple(a - b for a, b in zip(self.coords, other.coords))
        )

    def __rsub__(self, other):
        return self._other(other) - self

    def __neg__(self):
        return CycElement(self.ctx, tuple(-a for a in self.coords))

    def __mul__(self, other):
        other = self._other(other)
        return self.ctx._mul(self, other)

    def __rmul__(self, other):
        return self._other(other) * self

    def inv(self):
        return self.ctx._inv(self)

    def __truediv__(self, other):
        return self * self._other(other).inv()

    def __pow__(self, k):
        if k < 0:
            return self.inv() ** (-k)
        out = self.ctx.one
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __bool__(self):
        return any(self.coords)

    def __eq__(self, other):
        if isinstance(other, CycElement):
            return self.ctx is other.ctx and self.coords == other.coords
        if isinstance(other, int):
            return self == self.ctx.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((id(self.ctx), self.coords))

    def __repr__(self):
        parts = []
        for i, c in enumerate(self.coords):
            if not c:
                continue
            mono = {0: "", 1: "*e"}.get(i, f"*e^{i}")
            parts.append(f"({c}){mono}")
        return " + ".join(parts) if parts else "0"

    def flatten(self):
        out = []
        for c in self.coords:
            out.extend(c.flatten())
        return tuple(out)


class CyclicAlgebraCtx:
    """(E/C, gamma, a): E a cyclic extension of C, gamma its generator."""

    def __init__(self, E: FieldExtension, gamma: Automorphism, a_param):
        if gamma.field is not E:
            raise ContextMismatch("gamma must act on E")
        self.E = E
        self.C = E.base
        self.gamma = gamma
        self.d = gamma.order()
        a_param = E.coerce(a_param) if hasattr(a_param, "field") else E.embed(a_param)
        if not a_param:
            raise SkewlabError("a must be nonzero")
        if gamma(a_param) != a_param:
            raise SkewlabError("a must lie in the fixed field of gamma")
        self.a_param = a_param
        self.name = f"({E}/{self.C}, {gamma.label}, {a_param!r})"
        self.zero = self.element((E.zero,) * self.d)
        self.one = self.element((E.one,) + (E.zero,) * (self.d - 1))
        gen = [E.zero] * self.d
        gen[1 % self.d] = E.one
        self.e = self.element(tuple(gen))
        self._basis_cache = None

    def element(self, coords):
        coords = tuple(self.E.coerce(c) if hasattr(c, "field") else self.E.embed(c)
                       for c in coords)
        if len(coords) != self.d:
            raise SkewlabError(f"need {self.d} E-coordinates")
        return CycElement(self, coords)

    def embed(self, z):
        """Embed an element of E (or of its base) into the algebra."""
        if not (hasattr(z, "field") and z.field is self.E):
            z = self.E.embed(z)
        return CycElement(self, (z,) + (self.E.zero,) * (self.d - 1))

    def coerce(self, value):
        if isinstance(value, CycElement):
            if value.ctx is not self:
                raise ContextMismatch("element of a different algebra")
            return value
        if hasattr(value, "field"):
            return self.embed(value)
        return self.from_int(value)

    def from_int(self, n):
        return self.embed(self.E.from_int(n))

    def in_E(self, x):
        """The E-part if x lies in E, else None."""
        if any(x.coords[1:]):
            return None
        return x.coords[0]

    def is_finite(self):
        return False  # finite division algebras are fields; not modelled here

    @property
    def characteristic(self):
        return self.E.characteristic

    def degree_over_prime(self):
        return self.d * self.E.degree_over_prime()

    def _mul(self, x, y):
        E, d = self.E, self.d
        out = [E.zero] * d
        for i, xi in enumerate(x.coords):
            if not xi:
                continue
            for j, yj in enumerate(y.coords):
                if not yj:
                    continue
                term = xi * self.gamma(yj, power=i)
                k = i + j
                if k >= d:
                    out[k - d] = out[k - d] + term * self.a_param
                else:
                    out[k] = out[k] + term
        return CycElement(self, tuple(out))

    def _flat_basis(self):
        if self._basis_cache is None:
            basis = []
            for i in range(self.d):
                for j in range(self.E.degree):
                    coords = [self.E.zero] * self.d
                    coords[i] = self.E.gen ** j
                    basis.append(CycElement(self, tuple(coords)))
            self._basis_cache = basis
        return self._basis_cache

    def _inv(self, x):
        if not x:
            raise DivisionByZero("inverse of zero")
        base = self.C.base if isinstance(self.C, FieldExtension) else self.C
        basis = self._flat_basis()
        cols = [(x * b).flatten() for b in basis]
        rows = [[cols[j][i] for j in range(len(basis))] for i in range(len(cols[0]))]
        rhs = self.one.flatten()
        sol = solve(rows, list(rhs), base)
        if sol is None:
            raise NotInvertible(f"{x!r} is not invertible; algebra not division?")
        acc = self.zero
        for c, b in zip(sol, basis):
            if c:
                acc = acc + b * self.from_base_scalar(c)
        return acc

    def from_base_scalar(self, c):
        """Scalar from the bottom field, embedded in the algebra."""
        z = self.E.embed(c) if not (hasattr(c, "field") and c.field is self.E) else c
        return self.embed(z)

    def __repr__(self):
        return self.name


class AlgebraAutomorphism:
    """Automorphism of a cyclic algebra, given by (action on E, image of e).

    ``n`` is the order modulo inner automorphisms: sigma^n = i_u with
    u in E and u fixed by sigma.  Both facts are validated on generators.
    """

    def __init__(self, ctx: CyclicAlgebraCtx, e_action: Automorphism, e_image,
                 n: int, u, label=None):
        self.ctx = ctx
        self.e_action = e_action
        self.e_image = ctx.coerce(e_image)
        self.n = n
        self.u = ctx.coerce(u)
        self.label = label or f"auto_e({e_action.label})"
        E = ctx.E
        # multiplicativity: image(e) * phi(z) = phi(gamma(z)) * image(e)
        z = E.gen
        lhs = self.e_image * ctx.embed(e_action(z))
        rhs = ctx.embed(e_action(ctx.gamma(z))) * self.e_image
        if lhs != rhs:
            raise SkewlabError("e-image incompatible with the algebra relations")
        if self.e_image ** ctx.d != ctx.embed(e_action(ctx.gamma(ctx.a_param))):
            raise SkewlabError("e-image does not satisfy e^d = a")
        if ctx.in_E(self.u) is None:
            raise SkewlabError("u must lie in E")
        # sigma^n = i_u and u fixed, checked on generators
        for g in (ctx.embed(E.gen), ctx.e):
            img = g
            for _ in range(n):
                img = self._apply_once(img)
            if img != self.u * g * self.u.inv():
                raise SkewlabError("sigma^n != i_u on generators")
        if self._apply_once(self.u) != self.u:
            raise SkewlabError("u must be fixed by sigma")

    def _apply_once(self, x):
        acc = self.ctx.zero
        ei = self.ctx.one
        for i, c in enumerate(x.coords):
            if c:
                acc = acc + self.ctx.embed(self.e_action(c)) * ei
            if i + 1 < self.ctx.d:
                ei = ei * self.e_image
        return acc

    def __call__(self, x, power=1):
        if x.ctx is not self.ctx:
            raise ContextMismatch("automorphism applied outside its algebra")
        q, r = divmod(power, self.n)
        if q:
            uq = self.u ** q
            x = uq * x * uq.inv()
        for _ in range(r):
            x = self._apply_once(x)
        return x

    def is_identity(self):
        return self.e_action.is_identity() and self.e_image == self.ctx.e

    def __repr__(self):
        return f"AlgebraAutomorphism({self.ctx}, {self.label})"


def rational_quaternions():
    """(Q(i)/Q, conjugation, -1): the standard rational quaternion model."""
    from .fields import gaussian_rationals

    E = gaussian_rationals()
    return CyclicAlgebraCtx(E, E.galois, E.embed(-1))
