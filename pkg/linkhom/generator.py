"""Seeded chain generators.

Valid chains come from the block model
    g_i = diag(A_i, s*B_i),   g^i = diag(s*A_i^-1, B_i^-1)
with constant invertible A_i, B_i, conjugated by matrices over QQ[t] with
constant nonzero determinant. Broken chains violate one chosen condition.

All randomness goes through ChainRng: Python's random.Random (MT19937)
seeded with the integer seed and consumed only via getrandbits with
rejection sampling, so the output depends on nothing but the parameters.
"""
import random

from .arith import POLY, QQ, T, poly_sqrt, rational_roots
from .chain import LinkedChain
from .linalg import from_rows, identity, diag, block_diag, scale, inverse_field
from .errors import Infeasible, ShapeMismatch

TARGETS = ('I', 'II', 'III')


class ChainRng:
    def __init__(self, seed):
        self._rng = random.Random(seed)

    def below(self, n):
        """Uniform integer in [0, n)."""
        if n <= 0:
            raise ValueError("empty range")
        k = max(1, (n - 1).bit_length())
        while True:
            v = self._rng.getrandbits(k)
            if v < n:
                return v

    def integer(self, lo, hi):
        return lo + self.below(hi - lo + 1)

    def rational(self, bound):
        return QQ(self.integer(-bound, bound), self.integer(1, bound))

    def nonzero_rational(self, bound):
        while True:
            q = self.rational(bound)
            if q:
                return q

    def coin(self):
        return self.below(2) == 1

    def sample(self, n, k):
        """k distinct indices out of range(n), in draw order."""
        pool = list(range(n))
        for i in range(k):
            j = i + self.below(n - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:k]


class GenParams:
    """Generator knobs.

    conj_steps unitriangular factors (alternately lower and upper, entries
    of degree <= conj_degree) and one constant diagonal make up each
    conjugator. r1 is the rank of the invertible block of the F-chain model;
    None draws it from the seed.
    """

    def __init__(self, r, m, n, m1, s, entry_bound=3, seed=0, conjugate=True,
                 conj_steps=2, conj_degree=1, r1=None):
        for name, v in (('r', r), ('m', m), ('n', n), ('entry_bound', entry_bound)):
            if v < 1:
                raise ShapeMismatch(name, None, "positive integer", v)
        if not 0 <= m1 <= m:
            raise ShapeMismatch('m1', None, f"integer in [0, {m}]", m1)
        if r1 is not None and not 0 <= r1 <= r:
            raise ShapeMismatch('r1', None, f"integer in [0, {r}]", r1)
        if not 0 <= conj_degree <= 2:
            raise ShapeMismatch('conj_degree', None, "0, 1 or 2", conj_degree)
        self.r, self.m, self.n, self.m1 = r, m, n, m1
        self.s = POLY.convert(s)
        self.entry_bound = entry_bound
        self.seed = seed
        self.conjugate = conjugate
        self.conj_steps = conj_steps
        self.conj_degree = conj_degree
        self.r1 = r1

    def __repr__(self):
        return (f"GenParams(r={self.r}, m={self.m}, n={self.n}, m1={self.m1}, s={self.s}, "
                f"seed={self.seed}, conjugate={self.conjugate})")


def random_gl(rng, k, bound):
    """Constant invertible k x k matrix: unit lower times upper triangular."""
    L = [[QQ.one if i == j else (rng.rational(bound) if j < i else QQ.zero)
          for j in range(k)] for i in range(k)]
    U = [[rng.nonzero_rational(bound) if i == j else (rng.rational(bound) if j > i else QQ.zero)
          for j in range(k)] for i in range(k)]
    return from_rows(L, QQ, k) * from_rows(U, QQ, k)


def _model_pair(rng, size, k, s, bound):
    # forward diag(A, s*B), backward diag(s*A^-1, B^-1)
    A = random_gl(rng, k, bound)
    B = random_gl(rng, size - k, bound)
    fwd = block_diag([A, scale(B.convert_to(POLY), s)], POLY)
    bwd = block_diag([scale(inverse_field(A).convert_to(POLY), s), inverse_field(B)], POLY)
    return fwd, bwd


def _unitriangular(rng, size, lower, degree, bound):
    rows = [[POLY.zero] * size for _ in range(size)]
    for i in range(size):
        for j in range(size):
            if i == j:
                rows[i][j] = POLY.one
            elif (j < i) == lower and rng.coin():
                rows[i][j] = POLY.convert(rng.nonzero_rational(bound)) * T ** rng.integer(0, degree)
    return from_rows(rows, POLY, size)


def random_conjugator(rng, size, steps, degree, bound):
    """(P, P^-1) over QQ[t] with det P a nonzero constant."""
    P = identity(size, POLY)
    P_inv = identity(size, POLY)
    for step in range(steps):
        E = _unitriangular(rng, size, step % 2 == 0, degree, bound)
        E_inv = inverse_field(E).convert_to(POLY)
        P = E * P
        P_inv = P_inv * E_inv
    D = [rng.nonzero_rational(bound) for _ in range(size)]
    P = diag(D, POLY) * P
    P_inv = P_inv * diag([QQ.one / d for d in D], POLY)
    return P, P_inv


def _conjugators(rng, params, size):
    if not params.conjugate:
        ident = identity(size, POLY)
        return [(ident, ident)] * params.n
    return [random_conjugator(rng, size, params.conj_steps, params.conj_degree, params.entry_bound)
            for _ in range(params.n)]


def _conjugate_family(fwd, bwd, conj):
    # fwd_i -> P_{i+1} fwd_i P_i^-1, bwd_i -> P_i bwd_i P_{i+1}^-1
    new_fwd, new_bwd = [], []
    for i, (a, b) in enumerate(zip(fwd, bwd)):
        P, P_inv = conj[i]
        P_next, P_next_inv = conj[i + 1]
        new_fwd.append(P_next * a * P_inv)
        new_bwd.append(P * b * P_next_inv)
    return new_fwd, new_bwd


def _f_family(rng, params):
    r1 = params.r1 if params.r1 is not None else rng.integer(0, params.r)
    pairs = [_model_pair(rng, params.r, r1, params.s, params.entry_bound) for _ in range(params.n - 1)]
    return [p[0] for p in pairs], [p[1] for p in pairs]


def gen_valid_chain(params):
    """A chain satisfying conditions I, II and III everywhere."""
    rng = ChainRng(params.seed)
    g_pairs = [_model_pair(rng, params.m, params.m1, params.s, params.entry_bound)
               for _ in range(params.n - 1)]
    g_fwd, g_bwd = [p[0] for p in g_pairs], [p[1] for p in g_pairs]
    f_fwd, f_bwd = _f_family(rng, params)
    g_fwd, g_bwd = _conjugate_family(g_fwd, g_bwd, _conjugators(rng, params, params.m))
    f_fwd, f_bwd = _conjugate_family(f_fwd, f_bwd, _conjugators(rng, params, params.r))
    return LinkedChain(params.r, params.m, params.n, params.s, f_fwd, f_bwd, g_fwd, g_bwd)


def _has_special_point(s):
    return not s or bool(rational_roots(s)[0])


def _break_I(params):
    if not params.s or params.n < 2:
        raise Infeasible('I', "breaking condition I needs s != 0 and n >= 2")
    chain = gen_valid_chain(params)
    rng = ChainRng(params.seed ^ 0x49)
    k = rng.below(params.n - 1)
    f_bwd = list(chain.f_bwd)
    f_bwd[k] = scale(f_bwd[k], 2)
    return LinkedChain(chain.r, chain.m, chain.n, chain.s, chain.f_fwd, f_bwd, chain.g_fwd, chain.g_bwd)


def _break_II(params):
    if params.n < 2 or not _has_special_point(params.s):
        raise Infeasible('II', "breaking condition II needs n >= 2 and a rational zero of s")
    chain = gen_valid_chain(params)
    rng = ChainRng(params.seed ^ 0x4949)
    k = rng.below(params.n - 1)
    g_fwd, g_bwd = list(chain.g_fwd), list(chain.g_bwd)
    if params.m1 < params.m:
        # im g^k collapses at the zero while ker g_k stays nonzero
        g_bwd[k] = scale(g_bwd[k], params.s)
    else:
        g_fwd[k] = scale(g_fwd[k], params.s)
    return LinkedChain(chain.r, chain.m, chain.n, chain.s, chain.f_fwd, chain.f_bwd, g_fwd, g_bwd)


def _break_III(params):
    r, m, n, s = params.r, params.m, params.n, params.s
    if n < 3 or m < 3 or not _has_special_point(s):
        raise Infeasible('III', "breaking condition III needs n >= 3, m >= 3 and a rational zero of s")
    rng = ChainRng(params.seed)
    if params.conjugate:
        c0, c1, c2 = rng.sample(m, 3)
        jump = rng.integer(1, n - 2)
        rest = [c for c in range(m) if c not in (c0, c1, c2)]
        fixed_fwd = {c for c in rest if rng.coin()}
        scalars = [[rng.nonzero_rational(params.entry_bound) for _ in range(m)] for _ in range(n - 1)]
    else:
        c0, c1, c2 = 0, 1, 2
        jump = 1
        fixed_fwd = set()
        scalars = [[QQ.one] * m for _ in range(n - 1)]
    # coordinate c is "forward" on map i when g_i = a, g^i = s/a there and
    # "backward" when g_i = s*a, g^i = 1/a; c1 switches after the jump
    g_fwd, g_bwd = [], []
    for i in range(1, n):
        forward = {c0} | fixed_fwd
        if i > jump:
            forward.add(c1)
        fwd_vals, bwd_vals = [], []
        for c in range(m):
            a = scalars[i - 1][c]
            if c in forward:
                fwd_vals.append(POLY.convert(a))
                bwd_vals.append(s * POLY.convert(QQ.one / a))
            else:
                fwd_vals.append(s * POLY.convert(a))
                bwd_vals.append(POLY.convert(QQ.one / a))
        g_fwd.append(diag(fwd_vals, POLY))
        g_bwd.append(diag(bwd_vals, POLY))
    h = poly_sqrt(s)
    if h is not None:
        hI = scale(identity(r, POLY), h)
        f_fwd, f_bwd = [hI] * (n - 1), [hI] * (n - 1)
    else:
        f_fwd, f_bwd = _f_family(rng, params)
    if params.conjugate:
        g_fwd, g_bwd = _conjugate_family(g_fwd, g_bwd, _conjugators(rng, params, m))
        f_fwd, f_bwd = _conjugate_family(f_fwd, f_bwd, _conjugators(rng, params, r))
    return LinkedChain(r, m, n, s, f_fwd, f_bwd, g_fwd, g_bwd)


def gen_broken_chain(params, target):
    """A chain that fails condition ``target`` ('I', 'II' or 'III')."""
    if target == 'I':
        return _break_I(params)
    if target == 'II':
        return _break_II(params)
    if target == 'III':
        return _break_III(params)
    raise Infeasible(target, f"unknown condition {target!r}")


def gen_hom_pair(dims, entry_bound, seed):
    """Random (phi_1'', phi_n') of shapes m2 x r and m1 x r over QQ."""
    m1, m2, r = dims
    rng = ChainRng(seed)
    low = from_rows([[rng.rational(entry_bound) for _ in range(r)] for _ in range(m2)], QQ, r)
    high = from_rows([[rng.rational(entry_bound) for _ in range(r)] for _ in range(m1)], QQ, r)
    return low, high
