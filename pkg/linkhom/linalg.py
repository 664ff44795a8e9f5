"""Exact matrices over QQ, QQ[t] and QQ(t) on sympy's DomainMatrix.

Elimination, kernels, inverses and determinants are DomainMatrix's own.
This module adds the constructors and views the chain code needs, fibers of
a matrix at a point, and a Smith normal form over QQ[t] that keeps its
transforms.
"""
from functools import reduce

from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError

from .arith import QQ, POLY, QQT, degree, format_rational, parse_rational, poly_eval, ratfunc_eval_at
from .errors import Singular, DimensionError


class FiberPoint:
    """A rational point t = a of Spec QQ[t], or the generic point."""
    __slots__ = ('value',)

    def __init__(self, value=None):
        self.value = None if value is None else QQ.convert(value)

    @property
    def is_generic(self):
        return self.value is None

    def sort_key(self):
        return (1, QQ.zero) if self.value is None else (0, self.value)

    def __eq__(self, other):
        return isinstance(other, FiberPoint) and self.value == other.value

    def __hash__(self):
        return hash(('FiberPoint', self.value))

    def __repr__(self):
        return "generic" if self.value is None else f"t={format_rational(self.value)}"

    __str__ = __repr__


GENERIC = FiberPoint()


def parse_point(text):
    text = text.strip()
    if text.lower() == 'generic':
        return GENERIC
    if text.startswith('t='):
        text = text[2:]
    return FiberPoint(parse_rational(text))


def from_rows(rows, domain, cols=None):
    rows = [[domain.convert(x) for x in row] for row in rows]
    if cols is None:
        cols = len(rows[0]) if rows else 0
    for row in rows:
        if len(row) != cols:
            raise DimensionError(f"ragged matrix: row of length {len(row)} in a {cols}-column matrix")
    return DomainMatrix(rows, (len(rows), cols), domain)


def from_columns(columns, nrows, domain):
    return from_rows([[c[i] for c in columns] for i in range(nrows)], domain, len(columns))


def identity(n, domain):
    return DomainMatrix.eye(n, domain).to_dense()


def zeros(rows, cols, domain):
    return DomainMatrix.zeros((rows, cols), domain).to_dense()


def diag(values, domain):
    return DomainMatrix.diag([domain.convert(v) for v in values], domain).to_dense()


def block_diag(blocks, domain):
    nrows = sum(b.shape[0] for b in blocks)
    ncols = sum(b.shape[1] for b in blocks)
    out = [[domain.zero] * ncols for _ in range(nrows)]
    r0 = c0 = 0
    for b in blocks:
        for i, row in enumerate(b.convert_to(domain).to_list()):
            out[r0 + i][c0:c0 + len(row)] = row
        r0 += b.shape[0]
        c0 += b.shape[1]
    return DomainMatrix(out, (nrows, ncols), domain)


def entry(M, i, j):
    return M[i, j].element


def column(M, j):
    return tuple(row[j] for row in M.to_list())


def columns(M):
    return [tuple(c) for c in M.transpose().to_list()]


def scale(M, c):
    return M * M.domain.convert(c)


def same(A, B):
    """Entrywise equality across domains and storage formats."""
    if A.shape != B.shape:
        return False
    A, B = A.unify(B)
    return A.to_list() == B.to_list()


def mul(*factors):
    # product over the join of the factors' domains
    out = factors[0]
    for B in factors[1:]:
        out, B = out.unify(B, fmt='dense')
        out = out * B
    return out


def sub(A, B):
    A, B = A.unify(B, fmt='dense')
    return A - B


def kron(A, B):
    A, B = A.unify(B)
    (p, q), (u, v) = A.shape, B.shape
    a, b = A.to_list(), B.to_list()
    rows = [[a[i][j] * b[k][l] for j in range(q) for l in range(v)]
            for i in range(p) for k in range(u)]
    return DomainMatrix(rows, (p * u, q * v), A.domain)


def eval_matrix(M, x):
    """Fiber of M at x: over QQ at t = a, or embedded into QQ(t) at the
    generic point. QQ(t) entries with a pole at a raise PoleAtPoint."""
    if x.is_generic:
        return M.convert_to(QQT)
    if M.domain == QQ:
        return M
    at = poly_eval if M.domain == POLY else ratfunc_eval_at
    rows = [[at(e, x.value) for e in row] for row in M.to_list()]
    return DomainMatrix(rows, M.shape, QQ)


def rref(M):
    """(R, pivot columns) over the fraction field of M's domain."""
    if 0 in M.shape:
        return M.to_field(), []
    R, pivots = M.to_field().rref()
    return R, list(pivots)


def rank(M):
    if 0 in M.shape:
        return 0
    return M.to_field().rank()


def _primitive(vector):
    # clear denominators, then divide out the content over QQ[t]
    den = reduce(POLY.lcm, (e.denom for e in vector), POLY.one)
    nums = [e.numer * den.exquo(e.denom) for e in vector]
    content = reduce(POLY.gcd, nums, POLY.zero)
    return tuple(QQT.convert(p.exquo(content)) for p in nums)


def kernel_basis_field(M):
    """Basis of the right null space, one vector per free column; over QQ(t)
    rescaled to primitive polynomial vectors."""
    M = M.to_field()
    rows, cols = M.shape
    if cols == 0:
        return []
    if rows == 0:
        basis = columns(identity(cols, M.domain))
    else:
        basis = [tuple(v) for v in M.nullspace().to_list()]
    if M.domain == QQT:
        basis = [_primitive(v) for v in basis]
    return basis


def column_basis(M):
    """Columns of M at the pivots of rref(M): a basis of im M."""
    _, pivots = rref(M)
    cols = columns(M)
    return [cols[j] for j in pivots]


def inverse_field(M):
    rows, cols = M.shape
    if rows != cols:
        raise DimensionError(f"cannot invert a {rows}x{cols} matrix")
    M = M.to_field()
    if rows == 0:
        return M
    try:
        return M.inv()
    except (DMNonInvertibleMatrixError, ZeroDivisionError):
        raise Singular("matrix is singular") from None


def solve_field(A, B):
    """X with A X == B for square invertible A."""
    return inverse_field(A) * B.convert_to(A.to_field().domain)


def det_poly(M):
    rows, cols = M.shape
    if rows != cols:
        raise DimensionError(f"determinant of a {rows}x{cols} matrix")
    if rows == 0:
        return POLY.one
    return M.convert_to(POLY).det()


class SnfResult:
    """U M V == D with U, V unimodular over QQ[t]."""

    def __init__(self, U, D, V):
        self.U, self.D, self.V = U, D, V

    def diagonal(self):
        return [entry(self.D, k, k) for k in range(min(self.D.shape))]

    @property
    def rank(self):
        return sum(1 for d in self.diagonal() if d)


def add_rows(m, i, k, q):
    # m[i, :] -= q * m[k, :]
    m[i] = [a - q * b for a, b in zip(m[i], m[k])]


def add_columns(m, j, k, q):
    # m[:, j] -= q * m[:, k]
    for row in m:
        row[j] = row[j] - q * row[k]


def _min_degree_entry(m, k):
    best = None
    for i in range(k, len(m)):
        for j in range(k, len(m[i])):
            a = m[i][j]
            if a and (best is None or degree(a) < best[0]):
                best = (degree(a), i, j)
    return None if best is None else best[1:]


def smith_normal_form(M):
    """Smith normal form over QQ[t], tracking the row and column transforms.

    The pivot is the least-degree nonzero entry of the trailing block (first
    in row-major order on ties) and Euclidean division clears its row and
    column. Diagonal entries come out monic, nonzero ones first, each
    dividing the next.
    """
    K = POLY
    M = M.convert_to(K)
    rows, cols = M.shape
    m = M.to_list()
    s = identity(rows, K).to_list()
    t = identity(cols, K).to_list()
    for k in range(min(rows, cols)):
        while True:
            piv = _min_degree_entry(m, k)
            if piv is None:
                break
            i, j = piv
            m[i], m[k] = m[k], m[i]
            s[i], s[k] = s[k], s[i]
            for row in m + t:
                row[j], row[k] = row[k], row[j]
            pivot = m[k][k]
            dirty = False
            for i in range(k + 1, rows):
                if m[i][k]:
                    q, r = K.div(m[i][k], pivot)
                    add_rows(m, i, k, q)
                    add_rows(s, i, k, q)
                    dirty = dirty or bool(r)
            for j in range(k + 1, cols):
                if m[k][j]:
                    q, r = K.div(m[k][j], pivot)
                    add_columns(m, j, k, q)
                    add_columns(t, j, k, q)
                    dirty = dirty or bool(r)
            if dirty:
                continue
            # pivot must divide the whole trailing block
            bad = next((i for i in range(k + 1, rows)
                        if any(K.div(m[i][j], pivot)[1] for j in range(k + 1, cols))), None)
            if bad is None:
                break
            m[k] = [a + b for a, b in zip(m[k], m[bad])]
            s[k] = [a + b for a, b in zip(s[k], s[bad])]
        if piv is None:
            break
        c = K.convert(QQ.one / m[k][k].LC)
        m[k] = [a * c for a in m[k]]
        s[k] = [a * c for a in s[k]]
    return SnfResult(DomainMatrix(s, (rows, rows), K), DomainMatrix(m, (rows, cols), K),
                     DomainMatrix(t, (cols, cols), K))


def kernel_basis_pid(M):
    """Free basis of ker M over QQ[t]: the columns of V past the rank.
    V is unimodular, so the basis stays independent at every point."""
    snf = smith_normal_form(M)
    return columns(snf.V)[snf.rank:]
