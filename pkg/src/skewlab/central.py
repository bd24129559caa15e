"""Structure attached to the centre F[u^-1 t^n] of D[t; sigma].

The minimal central left multiple h of f is computed by a Krylov-style
scan: the residues of (u^-1 t^n)^i mod_r f are flattened to F-coordinate
rows and the first linear dependence over F yields the monic hhat with
h(t) = hhat(u^-1 t^n).  Minimality is immediate from taking the first
dependence.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field

from .cyclic import CyclicAlgebraCtx
from .errors import (
    DeltaUnsupported,
    NotCoprimeWithT,
    NotInE,
    NotIrreducible,
    PreconditionFailed,
    SkewlabError,
)
from .fields import relative_norm
from .linalg import SpanTracker
from .polyx import Polynomial, iter_monic
from .skew import (
    SkewPoly,
    gcrd,
    is_central,
    is_right_invariant,
    left_divmod,
    mod_r,
    right_divmod,
    skew_mul,
)

IRREDUCIBLE = "irreducible"
REDUCIBLE = "reducible"
UNKNOWN = "unknown"

SIMILAR = "similar"
NOT_SIMILAR = "not-similar"


@dataclass
class Verdict:
    """Small outcome record used across irreducibility / division / MRD."""

    kind: str
    by: str = ""
    witness: object = None
    assumed: str = ""

    def __bool__(self):
        raise TypeError("compare Verdict.kind explicitly")


@dataclass
class MclmReport:
    """Minimal central left multiple and the derived structure constants."""

    f: SkewPoly
    h: SkewPoly
    hhat: Polynomial
    k: int
    s: int
    is_full_degree: bool
    right_cofactor: SkewPoly
    right_invariant: bool
    _vf_cache: object = dataclass_field(default=None, repr=False, compare=False)

    @property
    def ctx(self):
        return self.f.ctx

    @property
    def m(self):
        return self.f.degree_int()

    @property
    def h0(self):
        return self.hhat[0]


def mclm(f: SkewPoly) -> MclmReport:
    """Minimal central left multiple of f (delta = 0, gcrd(f, t) = 1)."""
    ctx = f.ctx
    if ctx.delta is not None:
        raise DeltaUnsupported("mclm requires delta = 0")
    if f.is_zero() or f.degree_int() < 1:
        raise PreconditionFailed("mclm needs deg f >= 1")
    f = f.monic_left()
    if not f[0]:
        raise NotCoprimeWithT("gcrd(f, t) != 1: zero constant term")
    m = f.degree_int()
    d, n = ctx.d, ctx.n
    width = m * ctx.scalar_dim
    F = ctx.F
    z = ctx.central_generator()
    tracker = SpanTracker(F, width)
    w = mod_r(ctx.one, f)
    powers = [w]
    combo = None
    for i in range(d * m + 1):
        vec = list(_flatten(w, m))
        res, cmb = tracker.residual(vec)
        if not any(res):
            combo = cmb
            break
        tracker.add(vec)
        w = mod_r(skew_mul(z, w), f)
        powers.append(w)
    if combo is None:
        raise SkewlabError("no central multiple found within the degree bound")
    ell = len(combo)
    hhat = Polynomial(F, list(combo) + [F.one])
    # expand h = hhat(u^-1 t^n) inside R
    h = ctx.zero
    zp = ctx.one
    for j in range(ell + 1):
        c = hhat[j]
        if c:
            h = h + zp.scale_left(ctx.embed_scalar(c))
        if j < ell:
            zp = skew_mul(zp, z)
    q, r = right_divmod(h, f)
    if not r.is_zero():
        raise SkewlabError("internal: h is not right-divisible by f")
    if not left_divmod(h, f)[1].is_zero():
        raise SkewlabError("internal: h is not left-divisible by f")
    if not is_central(h):
        raise SkewlabError("internal: h is not central")
    if (d * m) % ell:
        raise SkewlabError("internal: deg(hhat) does not divide d*m")
    s = d * m // ell
    if (d * n) % s:
        raise SkewlabError("internal: s does not divide d*n")
    k = d * n // s
    if h.degree_int() != k * m:
        raise SkewlabError("internal: deg(h) != k*m")
    return MclmReport(
        f=f,
        h=h,
        hhat=hhat,
        k=k,
        s=s,
        is_full_degree=(h.degree_int() == d * m * n),
        right_cofactor=q,
        right_invariant=is_right_invariant(f),
    )


def _flatten(poly: SkewPoly, width: int):
    out = []
    ctx = poly.ctx
    for i in range(width):
        out.extend(ctx.flatten_coeff(poly[i]))
    return out


def is_irreducible(f: SkewPoly, report: MclmReport | None = None,
                   budget: int = 1 << 20) -> Verdict:
    """Irreducibility of f in D[t; sigma].

    Fast path: deg(h) = d*m*n with hhat irreducible over F certifies
    irreducibility; a reducible hhat certifies reducibility.  Otherwise a
    budgeted scan over monic right divisors decides finite instances and
    infinite ones return unknown.
    """
    ctx = f.ctx
    if ctx.delta is not None:
        raise DeltaUnsupported("irreducibility requires delta = 0")
    if f.is_zero() or f.degree_int() < 1:
        raise PreconditionFailed("irreducibility needs deg f >= 1")
    f = f.monic_left()
    m = f.degree_int()
    if m == 1:
        return Verdict(IRREDUCIBLE, by="degree-one")
    if not f[0]:
        return Verdict(REDUCIBLE, by="t-divides", witness=ctx.t)
    if report is None:
        report = mclm(f)
    try:
        hhat_irr = report.hhat.is_irreducible()
    except SkewlabError:
        hhat_irr = None
    if hhat_irr and report.is_full_degree:
        return Verdict(IRREDUCIBLE, by="hhat")
    if hhat_irr is False:
        witness = None
        if _ring_is_finite(ctx):
            witness = _divisor_scan(f, budget)
        return Verdict(REDUCIBLE, by="hhat-reducible", witness=witness)
    if _ring_is_finite(ctx):
        witness = _divisor_scan(f, budget)
        if witness is None:
            return Verdict(IRREDUCIBLE, by="divisor-scan")
        return Verdict(REDUCIBLE, by="divisor-scan", witness=witness)
    return Verdict(UNKNOWN, by="budget")


def _ring_is_finite(ctx):
    return not isinstance(ctx.ring, CyclicAlgebraCtx) and ctx.ring.is_finite()


def _divisor_scan(f: SkewPoly, budget: int):
    """First monic proper right divisor of f, or None."""
    ctx = f.ctx
    m = f.degree_int()
    count = 0
    for deg in range(1, m):
        for tail in _tuples(ctx.ring, deg):
            count += 1
            if count > budget:
                return None
            g = ctx.poly(list(tail) + [ctx.ring.one])
            if mod_r(f, g).is_zero():
                return g
    return None


def _tuples(ring, length):
    import itertools

    return itertools.product(list(ring.elements()), repeat=length)


def reduced_norm(f: SkewPoly) -> Polynomial:
    """Reduced norm of f as a polynomial over F in the central variable x.

    Computed as the determinant of left multiplication by f on the free
    right module over the splitting field, with basis {t^j} (field case)
    or {e^i t^j} (cyclic-algebra case), reducing with t^n = u*x.
    """
    ctx = f.ctx
    if ctx.delta is not None:
        raise DeltaUnsupported("reduced norm requires delta = 0")
    if isinstance(ctx.ring, CyclicAlgebraCtx):
        return _reduced_norm_cyclic(f)
    K = ctx.ring
    n = ctx.n
    PK = lambda coeffs: Polynomial(K, coeffs)
    M = [[PK([]) for _ in range(n)] for _ in range(n)]
    u = ctx.u
    for a, fa in enumerate(f.coeffs):
        if not fa:
            continue
        for j in range(n):
            q, r = divmod(a + j, n)
            val = ctx.sigma_pow(fa * u ** q, -r)
            M[r][j] = M[r][j] + PK([K.zero] * q + [val])
    det = _det(M, K)
    return _push_down(det, ctx)


def _reduced_norm_cyclic(f: SkewPoly) -> Polynomial:
    ctx = f.ctx
    ring: CyclicAlgebraCtx = ctx.ring
    E, d, n = ring.E, ring.d, ctx.n
    gamma = ring.gamma
    sigE = ctx.sigma.e_action
    uE = ring.in_E(ctx.u)
    if uE is None:
        raise NotInE("u must lie in E for the norm form")
    coeffs_E = []
    for c in f.coeffs:
        cE = ring.in_E(c)
        if cE is None:
            raise NotInE("reduced norm needs f in E[t; sigma]")
        coeffs_E.append(cE)
    PE = lambda coeffs: Polynomial(E, coeffs)
    size = d * n
    M = [[PE([]) for _ in range(size)] for _ in range(size)]
    e_pows = [ring.one]
    for _ in range(d - 1):
        e_pows.append(e_pows[-1] * ring.e)
    for a, fa in enumerate(coeffs_E):
        if not fa:
            continue
        for i in range(d):
            Y = ring.embed(fa) * ctx.sigma_pow(e_pows[i], a)
            for j in range(n):
                q, r = divmod(a + j, n)
                uq = uE ** q
                for kappa in range(d):
                    yk = Y.coords[kappa]
                    if not yk:
                        continue
                    val = sigE(gamma(yk, power=-kappa) * uq, power=-r)
                    row = kappa * n + r
                    col = i * n + j
                    M[row][col] = M[row][col] + PE([E.zero] * q + [val])
    det = _det(M, E)
    return _push_down(det, ctx)


def _det(M, field):
    """Cofactor determinant of a small matrix of Polynomials."""
    size = len(M)
    if size == 1:
        return M[0][0]
    zero = Polynomial(field, [])
    det = zero
    for i in range(size):
        entry = M[i][0]
        if entry.is_zero():
            continue
        minor = [row[1:] for r, row in enumerate(M) if r != i]
        term = entry * _det(minor, field)
        det = det + term if i % 2 == 0 else det - term
    return det


def _push_down(det: Polynomial, ctx) -> Polynomial:
    """Coerce a polynomial with coefficients in K or E down to F."""
    F = ctx.F
    out = []
    for c in det.coeffs:
        flat = c.flatten()
        if any(flat[1:]):
            raise SkewlabError("internal: norm coefficient not in F")
        out.append(F.coerce(flat[0]))
    return Polynomial(F, out)


def norm_constant_check(report: MclmReport) -> bool:
    """Exact constant-term identity between N(f) and hhat.

    Field coefficients: N_{K/F}(a0) = (-1)^(m(n-1)) h0.  Cyclic-algebra
    coefficients in E[t; sigma]:
    N_{E/F}(a0) = (-1)^(d r (n-1)) N_{E/F}(a_m) N_{E/C}(u)^m h0, r = m mod n.
    """
    ctx = report.ctx
    if not report.is_full_degree:
        raise PreconditionFailed("constant-term identity needs deg(h) = d*m*n")
    m, n = report.m, ctx.n
    F = ctx.F
    h0 = report.h0
    if isinstance(ctx.ring, CyclicAlgebraCtx):
        ring = ctx.ring
        a0 = ring.in_E(report.f[0])
        am = ring.in_E(report.f.lead())
        uE = ring.in_E(ctx.u)
        if a0 is None or am is None or uE is None:
            raise NotInE("identity needs f in E[t; sigma] and u in E")
        r = m % n
        sign = F.from_int((-1) ** (ctx.d * r * (n - 1)))
        lhs = relative_norm(a0, ring.E, F)
        rhs = (
            sign
            * relative_norm(am, ring.E, F)
            * relative_norm(uE, ring.E, ring.C) ** m
            * h0
        )
        return lhs == rhs
    K = ctx.ring
    sign = F.from_int((-1) ** (m * (n - 1)))
    return relative_norm(report.f[0], K, F) == sign * h0


def are_similar(f: SkewPoly, g: SkewPoly,
                reports: tuple[MclmReport, MclmReport] | None = None) -> str:
    """Similarity test for verified irreducibles: equal degree + equal mclm."""
    if g.ctx is not f.ctx:
        raise PreconditionFailed("similarity needs a common context")
    rf = reports[0] if reports else None
    rg = reports[1] if reports else None
    vf = is_irreducible(f, rf)
    vg = is_irreducible(g, rg)
    if REDUCIBLE in (vf.kind, vg.kind):
        raise NotIrreducible("are_similar is restricted to irreducibles")
    if UNKNOWN in (vf.kind, vg.kind):
        return UNKNOWN
    if f.degree != g.degree:
        return NOT_SIMILAR
    rf = rf or mclm(f)
    rg = rg or mclm(g)
    return SIMILAR if rf.hhat == rg.hhat else NOT_SIMILAR


def monic_right_divisors(h: SkewPoly, degree: int, budget: int = 1 << 22):
    """All monic right divisors of h with the given degree (finite rings)."""
    ctx = h.ctx
    out = []
    count = 0
    for tail in _tuples(ctx.ring, degree):
        count += 1
        if count > budget:
            break
        g = ctx.poly(list(tail) + [ctx.ring.one])
        if mod_r(h, g).is_zero():
            out.append(g)
    return out
