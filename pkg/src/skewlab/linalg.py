"""Exact Gaussian elimination over the field element classes.

Everything here works on lists of rows of FieldElement (or any objects
with field semantics: +, -, *, inv, truthiness).  No pivoting strategy
beyond first-nonzero is needed since arithmetic is exact.
"""

from __future__ import annotations

from .errors import SkewlabError


def rref(rows, field):
    """Reduced row echelon form (copies input).  Returns (rows, pivot_cols)."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(m)):
            if m[i][c]:
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = m[r][c].inv()
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows, field):
    return len(rref(rows, field)[0])


def nullspace(rows, field):
    """Basis of {v : M v = 0} for M given as rows."""
    if not rows:
        return []
    ncols = len(rows[0])
    red, pivots = rref(rows, field)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [field.zero] * ncols
        v[fc] = field.one
        for r, pc in zip(red, pivots):
            v[pc] = -r[fc]
        basis.append(v)
    return basis


def solve(rows, rhs, field):
    """One solution of M x = rhs, or None when inconsistent."""
    if not rows:
        return None
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, field)
    for r, pc in zip(red, pivots):
        if pc == ncols:
            return None
    x = [field.zero] * ncols
    for r, pc in zip(red, pivots):
        x[pc] = r[ncols]
    return x


def invert(rows, field):
    """Inverse of a square matrix; raises when singular."""
    n = len(rows)
    aug = [list(r) + [field.one if i == j else field.zero for j in range(n)]
           for i, r in enumerate(rows)]
    red, pivots = rref(aug, field)
    if pivots != list(range(n)):
        raise SkewlabError("matrix is singular")
    return [r[n:] for r in red]


def matvec(rows, v, field):
    out = []
    for r in rows:
        acc = field.zero
        for a, b in zip(r, v):
            if a and b:
                acc = acc + a * b
        out.append(acc)
    return out


class SpanTracker:
    """Incremental row space with membership tests and combination recovery.

    Rows may be added one at a time; ``residual`` reduces a vector against
    the current space and also returns the combination coefficients used,
    so a vanishing residual yields the linear dependence explicitly.
    """

    def __init__(self, field, width):
        self.field = field
        self.width = width
        self.rows = []       # reduced rows
        self.combos = []     # combination of original inserted rows
        self.pivots = []
        self._inserted = 0

    def _reduce(self, vec, combo):
        vec = list(vec)
        for row, cmb, p in zip(self.rows, self.combos, self.pivots):
            if vec[p]:
                f = vec[p]
                vec = [a - f * b for a, b in zip(vec, row)]
                combo = [a - f * b for a, b in zip(combo, cmb)]
        return vec, combo

    def residual(self, vec):
        """Reduce against the span; returns (residual, combo over inserted rows)."""
        combo = [self.field.zero] * self._inserted
        return self._reduce(vec, combo)

    def contains(self, vec):
        res, _ = self.residual(vec)
        return not any(res)

    def add(self, vec):
        """Insert a row.  Returns True if it enlarged the span."""
        combo = [self.field.zero] * self._inserted + [self.field.one]
        for c in self.combos:
            c.append(self.field.zero)
        self._inserted += 1
        vec, combo = self._reduce(vec, combo)
        pivot = next((i for i, v in enumerate(vec) if v), None)
        if pivot is None:
            return False
        inv = vec[pivot].inv()
        vec = [v * inv for v in vec]
        combo = [v * inv for v in combo]
        self.rows.append(vec)
        self.combos.append(combo)
        self.pivots.append(pivot)
        return True

    @property
    def dim(self):
        return len(self.rows)
