"""The linked Hom space, computed two ways.

Brute force: the tuples (phi_1..phi_n) are the kernel of one linear
constraint matrix over QQ[t]; its fibers give the dimension at each point.

Structural: locally at a point, each G_i splits as G'_i + G''_i with the
forward maps invertible on G' and the backward maps invertible on G''. A
tuple is then determined by phi_1'' and phi_n', and ``reconstruct`` builds
it back from that pair.
"""
from .arith import POLY, QQ, QQT
from .chain import composite, fiber, is_special, special_fibers
from .linalg import (FiberPoint, GENERIC, from_rows, from_columns, identity, zeros, kron, mul, sub,
                     same, scale, eval_matrix, rank, rref, inverse_field, solve_field, kernel_basis_pid)
from .errors import ComplementarityFailure, FullRankFailure, DimensionError


def vec(M):
    rows, cols = M.shape
    m = M.to_list()
    return [m[i][j] for j in range(cols) for i in range(rows)]


def unvec(v, rows, cols, domain):
    return from_rows([[v[j * rows + i] for j in range(cols)] for i in range(rows)], domain, cols)


class LinkedHomTuple:
    """phi_1..phi_n, each m x r. ``point`` is set when the entries live in the
    fiber at a rational point (scalars in QQ); otherwise they are over QQ[t]
    or QQ(t)."""

    def __init__(self, phis, point=None):
        self.phis = tuple(phis)
        self.point = point

    @property
    def n(self):
        return len(self.phis)

    def at(self, x):
        return LinkedHomTuple([eval_matrix(p, x) for p in self.phis], None if x.is_generic else x)

    def vector(self):
        return [e for p in self.phis for e in vec(p)]

    def __eq__(self, other):
        if not isinstance(other, LinkedHomTuple):
            return NotImplemented
        return self.n == other.n and all(same(a, b) for a, b in zip(self.phis, other.phis))

    __hash__ = None

    def __repr__(self):
        where = "" if self.point is None else f" at {self.point}"
        return f"LinkedHomTuple(n={self.n}{where})"


def _place(rows, r0, c0, block):
    for i, brow in enumerate(block.to_list()):
        row = rows[r0 + i]
        for j, e in enumerate(brow):
            if e:
                row[c0 + j] = row[c0 + j] + e


def constraint_matrix(chain):
    """The 2(n-1)rm x n*rm matrix over QQ[t] whose kernel is the linked Hom
    module. Unknowns are vec(phi_1), ..., vec(phi_n); for each i the rows
    hold, in order,
      (a) (f_i^T (x) I_m) vec(phi_{i+1}) - (I_r (x) g_i) vec(phi_i)
      (b) (f^i^T (x) I_m) vec(phi_i) - (I_r (x) g^i) vec(phi_{i+1})
    """
    r, m, n = chain.r, chain.m, chain.n
    rm = r * m
    zero = POLY.zero
    rows = [[zero] * (n * rm) for _ in range(2 * (n - 1) * rm)]
    I_m = identity(m, POLY)
    I_r = identity(r, POLY)
    for i in range(1, n):
        a_row = 2 * (i - 1) * rm
        b_row = a_row + rm
        col_i, col_next = (i - 1) * rm, i * rm
        f, fb = chain.f_fwd[i - 1], chain.f_bwd[i - 1]
        g, gb = chain.g_fwd[i - 1], chain.g_bwd[i - 1]
        _place(rows, a_row, col_next, kron(f.transpose(), I_m))
        _place(rows, a_row, col_i, -kron(I_r, g))
        _place(rows, b_row, col_i, kron(fb.transpose(), I_m))
        _place(rows, b_row, col_next, -kron(I_r, gb))
    return from_rows(rows, POLY, n * rm)


def fiber_dimension(chain, x, M=None):
    if M is None:
        M = constraint_matrix(chain)
    local = M if x.is_generic else eval_matrix(M, x)
    return M.shape[1] - rank(local)


class SolveReport:
    def __init__(self, rm, generic_dim, fiber_dims, kernel_basis=None, warnings=()):
        self.rm = rm
        self.generic_dim = generic_dim
        self.fiber_dims = dict(fiber_dims)
        self.kernel_basis = kernel_basis
        self.warnings = list(warnings)

    @property
    def jumps(self):
        """Points whose fiber is bigger than the generic one."""
        return [x for x, d in self.fiber_dims.items() if d > self.generic_dim]

    @property
    def flat(self):
        return not self.jumps

    @property
    def is_vector_bundle(self):
        return self.generic_dim == self.rm and all(d == self.rm for d in self.fiber_dims.values())

    def __repr__(self):
        return (f"SolveReport(rm={self.rm}, generic={self.generic_dim}, "
                f"fibers={ {str(k): v for k, v in self.fiber_dims.items()} }, "
                f"vector_bundle={self.is_vector_bundle})")


def kernel_tuples(chain, M=None):
    if M is None:
        M = constraint_matrix(chain)
    rm = chain.rm
    return [LinkedHomTuple([unvec(v[k * rm:(k + 1) * rm], chain.m, chain.r, POLY) for k in range(chain.n)])
            for v in kernel_basis_pid(M)]


def vector_bundle_check(chain, extra_points=(), with_basis=False):
    """Generic and special fiber dimensions of the linked Hom space.

    Checked fibers: the rational zeros of s (the generic point and
    chain.SAMPLE_POINTS when s == 0) plus ``extra_points``.
    """
    M = constraint_matrix(chain)
    generic = fiber_dimension(chain, GENERIC, M)
    points, warnings = special_fibers(chain)
    for a in extra_points:
        x = a if isinstance(a, FiberPoint) else FiberPoint(a)
        if x not in points:
            points.append(x)
    fiber_dims = {}
    for x in points:
        fiber_dims[x] = generic if x.is_generic else fiber_dimension(chain, x, M)
    basis = kernel_tuples(chain, M) if with_basis else None
    return SolveReport(chain.rm, generic, fiber_dims, basis, warnings)


class StructureDecomposition:
    """Local splitting G_i = G'_i + G''_i at ``point``.

    basis_prime[i] (m x ell) and basis_dblprime[i] (m x (m - ell)) are over
    QQ(t) and regular at the point; gp_fwd[i] is (g_{i+1})' and gdp_bwd[i]
    is (g^{i+1})'' in these bases (0-based lists).
    """

    def __init__(self, point, ell, basis_prime, basis_dblprime, gp_fwd, gdp_bwd):
        self.point = point
        self.ell = ell
        self.basis_prime = list(basis_prime)
        self.basis_dblprime = list(basis_dblprime)
        self.gp_fwd = list(gp_fwd)
        self.gdp_bwd = list(gdp_bwd)

    @property
    def m(self):
        return self.basis_prime[0].shape[0]

    @property
    def m2(self):
        return self.m - self.ell

    def frame(self, i):
        # [basis_prime_i | basis_dblprime_i], 1-based
        return self.basis_prime[i - 1].hstack(self.basis_dblprime[i - 1])

    def __repr__(self):
        return f"StructureDecomposition(at {self.point}, ell={self.ell}, m2={self.m2})"


def _unit_columns(positions, m):
    cols = [tuple(POLY.one if k == p else POLY.zero for k in range(m)) for p in positions]
    return from_columns(cols, m, POLY)


def _normalise(span, x):
    # rescale the columns of span so a set of rows independent at x is the identity
    k = span.shape[1]
    _, sel = rref(eval_matrix(span, x).transpose())
    T = span.extract(sel, list(range(k))).convert_to(QQT)
    return span.convert_to(QQT) * inverse_field(T), sel


def _check_invertible_at(X, x, which, index):
    if rank(eval_matrix(X, x)) != X.shape[0]:
        raise FullRankFailure(which, index)


def _trivial_decomposition(chain, x):
    m = chain.m
    ident = identity(m, QQT)
    empty = zeros(m, 0, QQT)
    gp = []
    for i in range(1, chain.n):
        g = chain.g_fwd[i - 1].convert_to(QQT)
        _check_invertible_at(g, x, f"(g_{i})'", i)
        gp.append(g)
    gdp = [zeros(0, 0, QQT) for _ in range(chain.n - 1)]
    return StructureDecomposition(x, m, [ident] * chain.n, [empty] * chain.n, gp, gdp)


def structure_decomposition(chain, x):
    """Split every G_i near x into G'_i + G''_i.

    At a point where s does not vanish (or when n == 1) the split is
    G' = G, G'' = 0. Otherwise the complement of ker g_1 (and of ker g^{n-1})
    in the fiber is the pivot-coordinate subspace of its rref, lifted as
    constant vectors and transported along g_{1,i} (and g^{n,i}).
    """
    n, m = chain.n, chain.m
    if n == 1 or not is_special(chain, x):
        return _trivial_decomposition(chain, x)
    _, piv_first = rref(fiber(chain, 'g_fwd', 1, x))
    _, piv_last = rref(fiber(chain, 'g_bwd', n - 1, x))
    V = _unit_columns(piv_first, m)
    W = _unit_columns(piv_last, m)
    ell, ell2 = len(piv_first), len(piv_last)
    spans_p = [composite(chain, 'g_fwd', 1, i) * V for i in range(1, n + 1)]
    spans_dp = [composite(chain, 'g_bwd', i, n) * W for i in range(1, n + 1)]
    for i in range(1, n + 1):
        local_p = eval_matrix(spans_p[i - 1], x)
        local_dp = eval_matrix(spans_dp[i - 1], x)
        if rank(local_p) != ell:
            raise FullRankFailure(f"g_{{1,{i}}}", i)
        if rank(local_dp) != ell2:
            raise FullRankFailure(f"g^{{{n},{i}}}", i)
        if ell + ell2 != m or rank(local_p.hstack(local_dp)) != m:
            raise ComplementarityFailure(i)
    prime, rows_p = zip(*(_normalise(S, x) for S in spans_p))
    dblprime, rows_dp = zip(*(_normalise(S, x) for S in spans_dp))
    gp, gdp = [], []
    for i in range(1, n):
        X = mul(chain.g_fwd[i - 1], prime[i - 1]).extract(rows_p[i], list(range(ell)))
        _check_invertible_at(X, x, f"(g_{i})'", i)
        gp.append(X)
        Y = mul(chain.g_bwd[i - 1], dblprime[i]).extract(rows_dp[i - 1], list(range(ell2)))
        _check_invertible_at(Y, x, f"(g^{i})''", i)
        gdp.append(Y)
    return StructureDecomposition(x, ell, prime, dblprime, gp, gdp)


def check_decomposition(chain, decomp):
    """Descriptions of every block identity that fails (empty when sound):
    g_i G'_i = G'_{i+1} via (g_i)', g^i G''_{i+1} = G''_i via (g^i)'',
    g_i G''_i = s G''_{i+1} and g^i G'_{i+1} = s G'_i."""
    problems = []
    x = decomp.point
    s = chain.s
    for i in range(1, chain.n + 1):
        if rank(eval_matrix(decomp.frame(i), x)) != chain.m:
            problems.append(f"G'_{i} + G''_{i} is not all of G_{i} at {x}")
    for i in range(1, chain.n):
        g, gb = chain.g_fwd[i - 1], chain.g_bwd[i - 1]
        bp, bp_next = decomp.basis_prime[i - 1], decomp.basis_prime[i]
        bdp, bdp_next = decomp.basis_dblprime[i - 1], decomp.basis_dblprime[i]
        X, Y = decomp.gp_fwd[i - 1], decomp.gdp_bwd[i - 1]
        if not same(mul(g, bp), mul(bp_next, X)):
            problems.append(f"g_{i} does not map G'_{i} onto G'_{i + 1} through (g_{i})'")
        if not same(mul(gb, bdp_next), mul(bdp, Y)):
            problems.append(f"g^{i} does not map G''_{i + 1} onto G''_{i} through (g^{i})''")
        if not same(mul(g, bdp), scale(mul(bdp_next, inverse_field(Y)), s)):
            problems.append(f"g_{i} G''_{i} != s G''_{i + 1}")
        if not same(mul(gb, bp_next), scale(mul(bp, inverse_field(X)), s)):
            problems.append(f"g^{i} G'_{i + 1} != s G'_{i}")
    return problems


def _block_prime(decomp, i, n):
    # (g_{i,n})' = (g_{n-1})' ... (g_i)'
    out = identity(decomp.ell, QQT)
    for k in range(i, n):
        out = mul(decomp.gp_fwd[k - 1], out)
    return out


def _block_dblprime(decomp, i):
    # (g^{i,1})'' = (g^1)'' ... (g^{i-1})''
    out = identity(decomp.m2, QQT)
    for k in range(i - 1, 0, -1):
        out = mul(decomp.gdp_bwd[k - 1], out)
    return out


def reconstruct(chain, decomp, phi1_dblprime, phin_prime):
    """The tuple with phi_1'' = phi1_dblprime and phi_n' = phin_prime:
      phi_i = ((g_{i,n})')^-1 phin_prime f_{i,n}  +  ((g^{i,1})'')^-1 phi1_dblprime f^{i,1}
    written in ambient coordinates of G_i."""
    n, r = chain.n, chain.r
    if phi1_dblprime.shape != (decomp.m2, r):
        raise DimensionError("phi_1'' must be {}x{}, got {}x{}".format(decomp.m2, r, *phi1_dblprime.shape))
    if phin_prime.shape != (decomp.ell, r):
        raise DimensionError("phi_n' must be {}x{}, got {}x{}".format(decomp.ell, r, *phin_prime.shape))
    low = phi1_dblprime.convert_to(QQT)
    high = phin_prime.convert_to(QQT)
    phis = []
    for i in range(1, n + 1):
        prime_part = mul(decomp.basis_prime[i - 1], inverse_field(_block_prime(decomp, i, n)),
                         high, composite(chain, 'f_fwd', i, n))
        dbl_part = mul(decomp.basis_dblprime[i - 1], inverse_field(_block_dblprime(decomp, i)),
                       low, composite(chain, 'f_bwd', 1, i))
        phi = prime_part + dbl_part
        if not decomp.point.is_generic:
            eval_matrix(phi, decomp.point)  # raises PoleAtPoint if not regular there
        phis.append(phi)
    return LinkedHomTuple(phis)


def forget(decomp, tup):
    """(phi_1'', phi_n') of a tuple, read off in the decomposed bases."""
    ell, m = decomp.ell, decomp.m
    first = tup.phis[0].convert_to(QQT)
    last = tup.phis[-1].convert_to(QQT)
    r = first.shape[1]
    c_first = solve_field(decomp.frame(1), first)
    c_last = solve_field(decomp.frame(len(tup.phis)), last)
    return (c_first.extract(list(range(ell, m)), list(range(r))),
            c_last.extract(list(range(ell)), list(range(r))))


def verify_linkage(chain, tup):
    """Check phi_{i+1} f_i = g_i phi_i and phi_i f^i = g^i phi_{i+1}.

    Returns (ok, residuals) with residuals a list of (i, label, matrix).
    A tuple carrying a point is checked against the chain's fiber there.
    """
    x = tup.point

    def local(M):
        return M if x is None else eval_matrix(M, x)

    residuals = []
    phis = tup.phis
    for i in range(1, chain.n):
        f, fb = local(chain.f_fwd[i - 1]), local(chain.f_bwd[i - 1])
        g, gb = local(chain.g_fwd[i - 1]), local(chain.g_bwd[i - 1])
        fwd = sub(mul(phis[i], f), mul(g, phis[i - 1]))
        bwd = sub(mul(phis[i - 1], fb), mul(gb, phis[i]))
        if not fwd.is_zero_matrix:
            residuals.append((i, f"phi_{i + 1} f_{i} - g_{i} phi_{i}", fwd))
        if not bwd.is_zero_matrix:
            residuals.append((i, f"phi_{i} f^{i} - g^{i} phi_{i + 1}", bwd))
    return not residuals, residuals


def _unit(rows, cols, a, b):
    return from_rows([[1 if (i, j) == (a, b) else 0 for j in range(cols)] for i in range(rows)], QQ, cols)


def structural_fiber_basis(chain, decomp):
    """Vectors (in constraint-matrix coordinates) of the reconstructions of
    all rm unit pairs, specialised at the decomposition's point."""
    r, ell, m2 = chain.r, decomp.ell, decomp.m2
    pairs = [(_unit(m2, r, a, b), zeros(ell, r, QQ)) for a in range(m2) for b in range(r)]
    pairs += [(zeros(m2, r, QQ), _unit(ell, r, a, b)) for a in range(ell) for b in range(r)]
    return [tuple(reconstruct(chain, decomp, low, high).at(decomp.point).vector()) for low, high in pairs]


def oracle_equivalence(chain, x, M=None):
    """Compare the structural fiber basis with the kernel of the constraint
    matrix at x. Returns (ok, structural_rank, kernel_dim)."""
    if M is None:
        M = constraint_matrix(chain)
    decomp = structure_decomposition(chain, x)
    vectors = structural_fiber_basis(chain, decomp)
    local = eval_matrix(M, x)
    kernel_dim = fiber_dimension(chain, x, M)
    if not vectors:
        return kernel_dim == 0, 0, kernel_dim
    V = from_columns(vectors, M.shape[1], local.domain)
    inside = mul(local, V).is_zero_matrix
    structural_rank = rank(V)
    ok = inside and structural_rank == len(vectors) == kernel_dim
    return ok, structural_rank, kernel_dim
