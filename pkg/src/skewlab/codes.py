"""Spread-set construction: the space A, the module V_f, and the matrices M_a.

For s = 1 the right nucleus B coincides with the centre E_hhat = F[x]/(hhat),
V_f = R/Rf is free of rank k over it, and left multiplication by elements of

    A = { d_0 + d_1 t + ... + d_{lm-1} t^{lm-1} + nu*rho(d_0) t^{lm} }

is emitted as k x k matrices over E_hhat.  For s > 1 the construction stops
at the A/algebra level and matrix emission is refused.
"""

from __future__ import annotations

import itertools

from .central import IRREDUCIBLE, MclmReport, Verdict, is_irreducible, mclm
from .cyclic import AlgebraAutomorphism, CyclicAlgebraCtx, identity_algebra_auto
from .errors import (
    BudgetExceeded,
    ContextMismatch,
    DegreeTooHigh,
    InfiniteField,
    LengthMismatch,
    NotIrreducible,
    PreconditionFailed,
    ShapeMismatch,
    UnsupportedMatrixEmission,
)
from .fields import FieldExtension, identity_auto
from .linalg import SpanTracker, invert, matvec
from .skew import SkewPoly, SkewRingCtx, mod_r, skew_mul


class CodeSpec:
    """Validated parameters (n, m, l, nu, rho, f) with the mclm report."""

    def __init__(self, ctx: SkewRingCtx, f: SkewPoly, l: int = 1, nu=0,
                 rho=None, report: MclmReport | None = None,
                 similar_in_e: bool = False):
        if f.ctx is not ctx:
            raise ContextMismatch("f does not belong to the given context")
        f = f.monic_left()
        if f.is_zero() or f.degree_int() < 2:
            raise PreconditionFailed("need deg f = m > 1")
        self.ctx = ctx
        self.f = f
        self.report = report if report is not None else mclm(f)
        verdict = is_irreducible(f, self.report)
        if verdict.kind != IRREDUCIBLE:
            raise NotIrreducible(f"f must be irreducible (got {verdict.kind})")
        self.nu = ctx.coerce_coeff(nu)
        if rho is None:
            if isinstance(ctx.ring, CyclicAlgebraCtx):
                rho = identity_algebra_auto(ctx.ring)
            else:
                rho = identity_auto(ctx.ring)
        self.rho = rho
        if not 1 <= l < self.report.k:
            raise PreconditionFailed(
                f"need 1 <= l < k = {self.report.k}, got l = {l}"
            )
        self.l = l
        self.similar_in_e = similar_in_e
        # F' = Fix(rho) intersect F; automorphisms here fix the bottom field
        # pointwise, so F' = F and [F:F'] = 1.
        self.Fprime = ctx.F
        self.f_over_fprime = 1

    # -- shorthand structure constants

    @property
    def m(self):
        return self.f.degree_int()

    @property
    def n(self):
        return self.ctx.n

    @property
    def d(self):
        return self.ctx.d

    @property
    def k(self):
        return self.report.k

    @property
    def s(self):
        return self.report.s

    @property
    def lm(self):
        return self.l * self.m

    def ring_basis(self):
        """F'-basis of the coefficient ring, in canonical order."""
        ring = self.ctx.ring
        if isinstance(ring, CyclicAlgebraCtx):
            return ring._flat_basis()
        return [ring.gen ** i for i in range(ring.degree)]

    def dim_a(self):
        """dim_{F'} A = d^2 n m l [F:F']."""
        return self.lm * len(self.ring_basis())

    def b_over_fprime(self):
        """[B:F'] = d*m*s*[F:F'] (the F'-dimension of the right nucleus)."""
        return self.d * self.m * self.s * self.f_over_fprime


def build_A_element(d_coeffs, spec: CodeSpec) -> SkewPoly:
    """d_0 + ... + d_{lm-1} t^{lm-1} + nu*rho(d_0) t^{lm}."""
    coeffs = [spec.ctx.coerce_coeff(c) for c in d_coeffs]
    if len(coeffs) != spec.lm:
        raise LengthMismatch(f"need {spec.lm} coefficients, got {len(coeffs)}")
    top = spec.nu * spec.rho(coeffs[0])
    return SkewPoly(spec.ctx, coeffs + [top])


class VfBasis:
    """Certified E_f-basis of V_f = R/Rf, with the coordinate solver.

    Residues are scanned greedily: pure powers t^j first, then c*t^j with
    c over a coefficient-ring basis (needed when the t-orbit of 1 spans a
    proper E_f-submodule, which happens over noncommutative coefficients).
    """

    def __init__(self, spec: CodeSpec):
        if spec.s != 1:
            raise UnsupportedMatrixEmission(
                f"matrix emission unsupported for s = {spec.s} > 1"
            )
        self.spec = spec
        ctx = spec.ctx
        F = ctx.F
        self.ehat = FieldExtension(F, spec.report.hhat, name="x")
        self.deghat = spec.report.hhat.degree
        m = spec.m
        self.width = m * ctx.scalar_dim
        z = ctx.central_generator()
        f = spec.f

        def x_act(v):
            return mod_r(skew_mul(v, z), f)

        self._x_act = x_act
        tracker = SpanTracker(F, self.width)
        residues = []
        frame_cols = []
        for cand in self._candidates():
            if len(residues) == spec.k:
                break
            flat = _flatten(cand, m)
            if tracker.contains(flat):
                continue
            residues.append(cand)
            v = cand
            for _ in range(self.deghat):
                fl = _flatten(v, m)
                tracker.add(fl)
                frame_cols.append(fl)
                v = x_act(v)
        if len(residues) != spec.k:
            raise PreconditionFailed("could not certify an E_f-basis of V_f")
        if len(frame_cols) != self.width:
            raise PreconditionFailed("V_f rank accounting failed")
        self.residues = residues
        rows = [[frame_cols[c][r] for c in range(self.width)]
                for r in range(self.width)]
        self._solve_rows = invert(rows, F)
        self._field = F

    def _candidates(self):
        ctx = self.spec.ctx
        f = self.spec.f
        dim_f = self.width
        for j in range(dim_f):
            yield mod_r(ctx.t_power(j), f)
        for c in self.spec.ring_basis():
            for j in range(self.spec.m):
                yield mod_r(ctx.monomial(c, j), f)

    def coords(self, residue: SkewPoly):
        """E_hhat-coordinates of a residue of degree < m."""
        flat = list(_flatten(residue, self.spec.m))
        sol = matvec(self._solve_rows, flat, self._field)
        k, dh = self.spec.k, self.deghat
        return [self.ehat.element(tuple(sol[j * dh:(j + 1) * dh]))
                for j in range(k)]

    def residue_from_coords(self, coords):
        """Inverse of ``coords``: rebuild the V_f element."""
        ctx = self.spec.ctx
        f = self.spec.f
        acc = ctx.zero
        for b, c in zip(self.residues, coords):
            v = b
            for e, ce in enumerate(c.rep):
                if ce:
                    acc = acc + v.scale_left(ctx.embed_scalar(ce))
                v = self._x_act(v)
        return mod_r(acc, f)


def operator_matrix(basis: VfBasis, a: SkewPoly):
    """Matrix of left multiplication by a residue a on V_f (any deg < deg h)."""
    spec = basis.spec
    f = spec.f
    cols = [basis.coords(mod_r(skew_mul(a, b), f)) for b in basis.residues]
    k = spec.k
    return [[cols[j][i] for j in range(k)] for i in range(k)]


def matrix_of(a: SkewPoly, basis: VfBasis):
    """M_a for an element of A (degree at most l*m)."""
    if not a.is_zero() and a.degree_int() > basis.spec.lm:
        raise DegreeTooHigh(f"deg a = {a.degree_int()} exceeds l*m = {basis.spec.lm}")
    return operator_matrix(basis, a)


def vf_basis(spec: CodeSpec) -> VfBasis:
    return VfBasis(spec)


class SpreadSet:
    """F'-generators of A with their matrices over E_hhat."""

    def __init__(self, spec: CodeSpec, basis: VfBasis | None = None):
        self.spec = spec
        self.basis = basis if basis is not None else VfBasis(spec)
        self.generators = []
        self.matrices = []
        ring_basis = spec.ring_basis()
        zero = spec.ctx.ring.zero
        for pos in range(spec.lm):
            for b in ring_basis:
                d = [zero] * spec.lm
                d[pos] = b
                a = build_A_element(d, spec)
                self.generators.append(a)
                self.matrices.append(matrix_of(a, self.basis))

    @property
    def ehat(self):
        return self.basis.ehat

    @property
    def k(self):
        return self.spec.k


def enumerate_code(spec: CodeSpec, budget: int | None = None,
                   basis: VfBasis | None = None, mode: str = "auto"):
    """Stream of (a, M_a).

    Exhaustive over the finite space A in lexicographic d-coordinate
    order, or the N generator pairs when the field is infinite (or when
    mode = "generators").  A budget overrun raises BudgetExceeded carrying
    the number of emitted pairs.
    """
    ring = spec.ctx.ring
    finite = not isinstance(ring, CyclicAlgebraCtx) and ring.is_finite()
    if mode == "exhaustive" and not finite:
        raise InfiniteField("exhaustive enumeration needs a finite field")
    if basis is None:
        basis = VfBasis(spec)
    emitted = 0
    if finite and mode in ("auto", "exhaustive"):
        elems = list(ring.elements())
        for d in itertools.product(elems, repeat=spec.lm):
            if budget is not None and emitted >= budget:
                raise BudgetExceeded(
                    f"budget {budget} exhausted", emitted=emitted
                )
            a = build_A_element(d, spec)
            yield a, matrix_of(a, basis)
            emitted += 1
        return
    S = SpreadSet(spec, basis)
    for a, M in zip(S.generators, S.matrices):
        if budget is not None and emitted >= budget:
            raise BudgetExceeded(f"budget {budget} exhausted", emitted=emitted)
        yield a, M
        emitted += 1


def tn_theta_matrix(spec: CodeSpec, d_coeffs):
    """Closed-form spread matrix for f = t^n - theta, K = F(theta), m = n.

    Entry pattern (rows/columns 1-indexed):
      diagonal      sigma^(n+1-i)(a_0) + sigma^(n+1-i)(nu*rho(a_0)) * theta
      below (i>j)   sigma^(n+1-i)(a_{i-j})
      above (i<j)   sigma^(n+1-i)(a_{n+i-j}) * theta
    Must agree with matrix_of entry by entry.
    """
    ctx = spec.ctx
    K = ctx.ring
    if isinstance(K, CyclicAlgebraCtx):
        raise ShapeMismatch("closed form is stated for field coefficients")
    n, m = spec.n, spec.m
    if m != n or spec.l != 1:
        raise ShapeMismatch("closed form needs m = n and l = 1")
    if not _is_prime_int(n):
        raise ShapeMismatch("closed form is stated for prime n")
    f = spec.f
    if any(f[i] for i in range(1, n)):
        raise ShapeMismatch("f must be t^n - theta")
    theta = -f[0]
    if theta != K.gen:
        raise ShapeMismatch("theta must generate the coefficient field")
    if spec.report.hhat != K.modulus:
        raise ShapeMismatch("hhat must equal the minimal polynomial of theta")
    if ehat is None:
        ehat = FieldExtension(ctx.F, spec.report.hhat, name="x")
    coeffs = [ctx.coerce_coeff(c) for c in d_coeffs]
    if len(coeffs) != n:
        raise LengthMismatch(f"need {n} coefficients")
    a_top = spec.nu * spec.rho(coeffs[0])
    theta_e = ehat.element(tuple(K.coordinates(theta)))

    def to_ehat(x):
        return ehat.element(tuple(K.coordinates(x)))

    M = [[ehat.zero] * n for _ in range(n)]
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            p = n + 1 - i
            if i == j:
                val = to_ehat(ctx.sigma_pow(coeffs[0], p)) + \
                    to_ehat(ctx.sigma_pow(a_top, p)) * theta_e
            elif i > j:
                val = to_ehat(ctx.sigma_pow(coeffs[i - j], p))
            else:
                val = to_ehat(ctx.sigma_pow(coeffs[n + i - j], p)) * theta_e
            M[i - 1][j - 1] = val
    return M


def _is_prime_int(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _flatten(poly: SkewPoly, width: int):
    out = []
    ctx = poly.ctx
    for i in range(width):
        out.extend(ctx.flatten_coeff(poly[i]))
    return tuple(out)
