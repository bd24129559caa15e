"""The twisted polynomial ring D[t; sigma, delta].

Multiplication follows t*a = sigma(a)*t + delta(a).  Coefficients come
from a FieldExtension or a CyclicAlgebraCtx; in both cases sigma has
finite order n modulo inner automorphisms, sigma^n = i_u, with u fixed
by sigma (u = 1 when the coefficients form a field).

Coefficients are stored constant term first.  deg(0) = -inf.
"""

from __future__ import annotations

from .cyclic import AlgebraAutomorphism, CyclicAlgebraCtx
from .errors import (
    BothZero,
    ContextMismatch,
    DeltaUnsupported,
    DivisionByZero,
    SkewlabError,
    ZeroOperand,
)
from .fields import (
    Automorphism,
    FieldExtension,
    PrimeField,
    RationalField,
    fix_field,
)

NEG_INF = float("-inf")


class Derivation:
    """Left sigma-derivation on a field extension, fixed by its value on
    the generator.  For sigma = id on a separable extension only the zero
    derivation is consistent with the modulus, so a nonzero value is
    rejected in that case."""

    def __init__(self, field: FieldExtension, sigma: Automorphism, gen_value):
        gen_value = field.coerce(gen_value)
        if sigma.is_identity() and gen_value:
            raise SkewlabError(
                "nonzero derivation with sigma = id is inconsistent on a "
                "separable extension"
            )
        self.field = field
        self.sigma = sigma
        self.gen_value = gen_value
        self._powers = {0: field.zero, 1: gen_value}

    def _gen_power(self, k):
        # delta(g^k) = sigma(g) * delta(g^(k-1)) + delta(g) * g^(k-1)
        if k not in self._powers:
            prev = self._gen_power(k - 1)
            g = self.field.gen
            self._powers[k] = self.sigma(g) * prev + self.gen_value * g ** (k - 1)
        return self._powers[k]

    def __call__(self, x):
        if x.field is not self.field:
            raise ContextMismatch("derivation applied outside its field")
        acc = self.field.zero
        for i, c in enumerate(x.rep):
            if c and i > 0:
                acc = acc + self.field.embed(c) * self._gen_power(i)
        return acc


class SkewRingCtx:
    """Context D[t; sigma, delta] over an exact coefficient ring."""

    def __init__(self, ring, sigma, delta=None, n=None, u=None):
        self.ring = ring
        self.sigma = sigma
        self.delta = delta
        if isinstance(ring, CyclicAlgebraCtx):
            if not isinstance(sigma, AlgebraAutomorphism):
                raise ContextMismatch("cyclic coefficients need an algebra automorphism")
            if delta is not None:
                raise DeltaUnsupported("delta over cyclic-algebra coefficients")
            self.n = sigma.n if n is None else n
            self.u = sigma.u if u is None else ring.coerce(u)
            self.d = ring.d
            self.F = ring.C
            self.scalar_dim = ring.degree_over_prime()
            self._generators = [ring.embed(ring.E.gen), ring.e]
        elif isinstance(ring, FieldExtension):
            if sigma.field is not ring:
                raise ContextMismatch("sigma must act on the coefficient field")
            self.n = sigma.order() if n is None else n
            self.u = ring.one if u is None else ring.coerce(u)
            self.d = 1
            fixed, index = fix_field(sigma)
            if fixed is not ring.base and index != 1:
                raise SkewlabError(
                    "Fix(sigma) must be the bottom of the declared tower; "
                    "re-declare the tower so that F is its base field"
                )
            self.F = ring if index == 1 else ring.base
            self.scalar_dim = ring.degree_over_prime()
            self._generators = [ring.gen]
        else:
            raise ContextMismatch(f"unsupported coefficient ring {ring!r}")
        if not isinstance(self.F, (PrimeField, RationalField)):
            raise SkewlabError("F = C intersect Fix(sigma) must be a prime field or Q")
        if self.sigma_pow(self.u, 1) != self.u:
            raise SkewlabError("u must be fixed by sigma")
        self.zero = SkewPoly(self, ())
        self.one = SkewPoly(self, (ring.one,))
        self.t = SkewPoly(self, (_zero_of(ring), ring.one))

    # -- coefficient helpers

    def sigma_pow(self, x, power):
        """sigma^power with sigma^n = i_u; valid for any integer power."""
        if isinstance(self.ring, CyclicAlgebraCtx):
            return self.sigma(x, power=power)
        q, r = divmod(power, self.n)
        if q and self.u != self.ring.one:
            uq = self.u ** q
            x = uq * x * uq.inv()
        return self.sigma(x, power=r)

    def ring_generators(self):
        return list(self._generators)

    def coerce_coeff(self, c):
        return self.ring.coerce(c)

    def poly(self, coeffs):
        return SkewPoly(self, tuple(self.coerce_coeff(c) for c in coeffs))

    def monomial(self, c, k):
        c = self.coerce_coeff(c)
        return SkewPoly(self, (_zero_of(self.ring),) * k + (c,))

    def t_power(self, k):
        return self.monomial(self.ring.one, k)

    def central_generator(self):
        """u^(-1) t^n, the generator of the centre over F (delta = 0)."""
        return self.monomial(self.u.inv(), self.n)

    def embed_scalar(self, c):
        """Element of F as a constant polynomial coefficient."""
        if isinstance(self.ring, CyclicAlgebraCtx):
            return self.ring.from_base_scalar(c)
        return self.ring.embed(c) if self.F is self.ring.base else self.ring.coerce(c)

    def flatten_coeff(self, c):
        return c.flatten()

    def coeff_from_flat(self, flat):
        if isinstance(self.ring, CyclicAlgebraCtx):
            E = self.ring.E
            step = E.degree_over_prime()
            coords = [E.from_flat(flat[i * step:(i + 1) * step])
                      for i in range(self.ring.d)]
            return self.ring.element(tuple(coords))
        return self.ring.from_flat(flat)

    def poly_from_flat(self, flat, width):
        step = self.scalar_dim
        return self.poly([self.coeff_from_flat(flat[i * step:(i + 1) * step])
                          for i in range(width)])

    def __repr__(self):
        dpart = "" if self.delta is None else ", delta"
        return f"{self.ring}[t; {getattr(self.sigma, 'label', 'sigma')}{dpart}]"


def _zero_of(ring):
    return ring.zero


class SkewPoly:
    """Immutable skew polynomial; constant term first."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx, coeffs):
        cs = list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        self.ctx = ctx
        self.coeffs = tuple(cs)

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def lead(self):
        if not self.coeffs:
            raise DivisionByZero("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == self.ctx.ring.one

    def __getitem__(self, i):
        zero = _zero_of(self.ctx.ring)
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else zero

    def _same_ctx(self, other):
        if not isinstance(other, SkewPoly):
            raise ContextMismatch(f"expected a skew polynomial, got {other!r}")
        if other.ctx is not self.ctx:
            raise ContextMismatch("skew polynomials from different contexts")
        return other

    def __add__(self, other):
        other = self._same_ctx(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return SkewPoly(self.ctx, [self[i] + other[i] for i in range(n)])

    def __sub__(self, other):
        other = self._same_ctx(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return SkewPoly(self.ctx, [self[i] - other[i] for i in range(n)])

    def __neg__(self):
        return SkewPoly(self.ctx, [-c for c in self.coeffs])

    def __mul__(self, other):
        return skew_mul(self, self._same_ctx(other))

    def __eq__(self, other):
        return (
            isinstance(other, SkewPoly)
            and self.ctx is other.ctx
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((id(self.ctx), self.coeffs))

    def scale_left(self, c):
        c = self.ctx.coerce_coeff(c)
        return SkewPoly(self.ctx, [c * a for a in self.coeffs])

    def monic_left(self):
        """Divide by the leading coefficient from the left."""
        if self.is_zero():
            return self
        return self.scale_left(self.lead().inv())

    def degree_int(self):
        if self.is_zero():
            raise DivisionByZero("zero polynomial has no integer degree")
        return len(self.coeffs) - 1

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = {0: "", 1: "t"}.get(i, f"t^{i}")
            if i == 0:
                parts.append(f"({c})")
            else:
                parts.append(f"({c}){mono}" if c != self.ctx.ring.one else mono)
        return " + ".join(parts)


def skew_mul(p: SkewPoly, q: SkewPoly) -> SkewPoly:
    """Product under t*a = sigma(a)*t + delta(a)."""
    ctx = p.ctx
    if q.ctx is not ctx:
        raise ContextMismatch("skew polynomials from different contexts")
    if p.is_zero() or q.is_zero():
        return ctx.zero
    zero = _zero_of(ctx.ring)
    if ctx.delta is None:
        out = [zero] * (len(p.coeffs) + len(q.coeffs) - 1)
        for i, a in enumerate(p.coeffs):
            if not a:
                continue
            for j, b in enumerate(q.coeffs):
                if b:
                    out[i + j] = out[i + j] + a * ctx.sigma_pow(b, i)
        return SkewPoly(ctx, out)
    # generic rule: accumulate p_i * (t^i * q)
    out = [zero] * (len(p.coeffs) + len(q.coeffs) - 1)
    shifted = list(q.coeffs)
    for i, a in enumerate(p.coeffs):
        if a:
            for j, b in enumerate(shifted):
                if b:
                    out[j] = out[j] + a * b
        if i + 1 < len(p.coeffs):
            nxt = [zero] * (len(shifted) + 1)
            for j, b in enumerate(shifted):
                if b:
                    nxt[j + 1] = nxt[j + 1] + ctx.sigma_pow(b, 1)
                    nxt[j] = nxt[j] + ctx.delta(b)
            shifted = nxt
    return SkewPoly(ctx, out)


def right_divmod(g: SkewPoly, f: SkewPoly):
    """q, r with g = q*f + r and deg r < deg f."""
    if f.is_zero():
        raise DivisionByZero("right division by zero")
    ctx = g._same_ctx(f).ctx if False else g.ctx
    if f.ctx is not ctx:
        raise ContextMismatch("skew polynomials from different contexts")
    zero = _zero_of(ctx.ring)
    m = f.degree_int()
    fm = f.lead()
    rem = g
    qc = [zero] * (max(len(g.coeffs) - m, 0))
    while not rem.is_zero() and rem.degree_int() >= m:
        d = rem.degree_int() - m
        c = rem.lead() * ctx.sigma_pow(fm, d).inv()
        qc[d] = qc[d] + c
        rem = rem - skew_mul(ctx.monomial(c, d), f)
    return SkewPoly(ctx, qc), rem


def left_divmod(g: SkewPoly, f: SkewPoly):
    """q, r with g = f*q + r and deg r < deg f (needs sigma invertible)."""
    if f.is_zero():
        raise DivisionByZero("left division by zero")
    ctx = g.ctx
    if f.ctx is not ctx:
        raise ContextMismatch("skew polynomials from different contexts")
    zero = _zero_of(ctx.ring)
    m = f.degree_int()
    fm_inv = f.lead().inv()
    rem = g
    qc = [zero] * (max(len(g.coeffs) - m, 0))
    while not rem.is_zero() and rem.degree_int() >= m:
        d = rem.degree_int() - m
        c = ctx.sigma_pow(fm_inv * rem.lead(), -m)
        qc[d] = qc[d] + c
        rem = rem - skew_mul(f, ctx.monomial(c, d))
    return SkewPoly(ctx, qc), rem


def mod_r(g: SkewPoly, f: SkewPoly) -> SkewPoly:
    return right_divmod(g, f)[1]


def gcrd(a: SkewPoly, b: SkewPoly) -> SkewPoly:
    """Greatest common right divisor, monic; right Euclidean algorithm."""
    if a.is_zero() and b.is_zero():
        raise BothZero("gcrd(0, 0)")
    x, y = a, b
    while not y.is_zero():
        x, y = y, right_divmod(x, y)[1]
    return x.monic_left()


def lclm(a: SkewPoly, b: SkewPoly) -> SkewPoly:
    """Least common left multiple via the extended right Euclidean algorithm."""
    if a.is_zero() or b.is_zero():
        raise ZeroOperand("lclm needs nonzero operands")
    ctx = a.ctx
    r_prev, r_cur = a, b
    u_prev, u_cur = ctx.one, ctx.zero
    while not r_cur.is_zero():
        q, r_next = right_divmod(r_prev, r_cur)
        u_next = u_prev - skew_mul(q, u_cur)
        r_prev, r_cur = r_cur, r_next
        u_prev, u_cur = u_cur, u_next
    # here r_prev = gcrd and u_cur * a = +- lclm
    m = skew_mul(u_cur, a)
    return m.monic_left()


def is_central(p: SkewPoly) -> bool:
    """Commutes with t and with every coefficient-ring generator."""
    ctx = p.ctx
    if skew_mul(p, ctx.t) != skew_mul(ctx.t, p):
        return False
    for g in ctx.ring_generators():
        gp = ctx.poly([g])
        if skew_mul(p, gp) != skew_mul(gp, p):
            return False
    return True


def is_right_invariant(f: SkewPoly) -> bool:
    """Whether Rf is two-sided: f*g lies in Rf for t and the ring generators."""
    ctx = f.ctx
    for g in [ctx.t] + [ctx.poly([c]) for c in ctx.ring_generators()]:
        if not mod_r(skew_mul(f, g), f).is_zero():
            return False
    return True
