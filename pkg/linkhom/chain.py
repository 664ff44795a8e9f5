"""Linked chains and the three linked-Hom-space conditions.

A chain has free modules F_1..F_n of rank r and G_1..G_n of rank m over
QQ[t], with forward maps f_i, g_i and backward maps f^i, g^i between
consecutive terms. Indices in the public API are 1-based, as in the maps'
names; the stored lists are 0-based.
"""
from sympy.polys.matrices import DomainMatrix

from .arith import POLY, QQ, T, degree, poly_eval, rational_roots
from .linalg import (FiberPoint, GENERIC, from_rows, from_columns, identity, diag, column, columns,
                     same, scale, eval_matrix, rank, kernel_basis_field, column_basis)
from .errors import ShapeMismatch, IndexOutOfRange, NotASpecialPoint, DimensionError

FAMILIES = ('f_fwd', 'f_bwd', 'g_fwd', 'g_bwd')
FORWARD = ('f_fwd', 'g_fwd')

# rational points sampled in addition to the generic point when s == 0
SAMPLE_POINTS = (QQ(0), QQ(1), QQ(-1), QQ(2), QQ(1, 2))

IRRATIONAL_WARNING = "irrational vanishing locus not checked"


class LinkedChain:
    __slots__ = ('r', 'm', 'n', 's', 'f_fwd', 'f_bwd', 'g_fwd', 'g_bwd')

    def __init__(self, r, m, n, s, f_fwd, f_bwd, g_fwd, g_bwd):
        self.r, self.m, self.n, self.s = r, m, n, s
        self.f_fwd, self.f_bwd = tuple(f_fwd), tuple(f_bwd)
        self.g_fwd, self.g_bwd = tuple(g_fwd), tuple(g_bwd)

    @property
    def rm(self):
        return self.r * self.m

    def maps(self, family):
        if family not in FAMILIES:
            raise KeyError(family)
        return getattr(self, family)

    def dim(self, family):
        return self.r if family.startswith('f') else self.m

    def __eq__(self, other):
        if not isinstance(other, LinkedChain):
            return NotImplemented
        if (self.r, self.m, self.n, self.s) != (other.r, other.m, other.n, other.s):
            return False
        return all(len(self.maps(f)) == len(other.maps(f))
                   and all(same(a, b) for a, b in zip(self.maps(f), other.maps(f))) for f in FAMILIES)

    __hash__ = None

    def __repr__(self):
        return f"LinkedChain(r={self.r}, m={self.m}, n={self.n}, s={self.s})"


def _as_matrix(value, family, index, locs):
    if isinstance(value, DomainMatrix):
        return value.convert_to(POLY)
    try:
        return from_rows(value, POLY)
    except DimensionError as e:
        raise ShapeMismatch(family, index, "rectangular matrix", str(e),
                            loc=locs.get(f"{family}[{index}]")) from None


def build_chain(spec, locs=None):
    """Validate a chain description and return a LinkedChain.

    ``spec`` maps r, m, n, s and the four map families to values; matrices
    may be DomainMatrix objects or nested lists of scalars. ``locs`` optionally maps
    field paths ("g_fwd[1]") to (line, col) for error messages.
    """
    locs = locs or {}
    for key in ('r', 'm', 'n'):
        v = spec[key]
        if not isinstance(v, int) or isinstance(v, bool) or v < 1:
            raise ShapeMismatch(key, None, "positive integer", v, loc=locs.get(key))
    r, m, n = spec['r'], spec['m'], spec['n']
    s = POLY.convert(spec['s'])
    families = {}
    for family in FAMILIES:
        maps = list(spec[family])
        if len(maps) != n - 1:
            raise ShapeMismatch(family, None, f"{n - 1} maps", f"{len(maps)} maps", loc=locs.get(family))
        size = r if family.startswith('f') else m
        mats = []
        for idx, value in enumerate(maps):
            mat = _as_matrix(value, family, idx, locs)
            if mat.shape != (size, size):
                raise ShapeMismatch(family, idx, f"{size}x{size}", "{}x{}".format(*mat.shape),
                                    loc=locs.get(f"{family}[{idx}]"))
            mats.append(mat)
        families[family] = mats
    return LinkedChain(r, m, n, s, **families)


def composite(chain, family, i, j):
    """Forward families: the map X_i -> X_j, x_{j-1}...x_i.
    Backward families: the map X_j -> X_i, x^i...x^{j-1}.
    Identity when i == j."""
    if not 1 <= i <= j <= chain.n:
        raise IndexOutOfRange(f"composite({family}, {i}, {j}) needs 1 <= i <= j <= {chain.n}")
    maps = chain.maps(family)
    result = identity(chain.dim(family), POLY)
    if family in FORWARD:
        for k in range(i, j):
            result = maps[k - 1] * result
    else:
        for k in range(j - 1, i - 1, -1):
            result = maps[k - 1] * result
    return result


def fiber(chain, family, i, x):
    return eval_matrix(chain.maps(family)[i - 1], x)


class Failure:
    def __init__(self, index, description, witness=None):
        self.index = index
        self.description = description
        self.witness = witness

    def __eq__(self, other):
        return (isinstance(other, Failure) and self.index == other.index
                and self.description == other.description and self.witness == other.witness)

    def __repr__(self):
        return f"Failure({self.index}, {self.description!r})"


class ConditionReport:
    """Outcome of one condition at one point (point None means global)."""

    def __init__(self, condition, point, failures=(), notes=()):
        self.condition = condition
        self.point = point
        self.failures = list(failures)
        self.notes = list(notes)

    @property
    def passed(self):
        return not self.failures

    @property
    def point_label(self):
        return "global" if self.point is None else str(self.point)

    def __eq__(self, other):
        return (isinstance(other, ConditionReport) and self.condition == other.condition
                and self.point == other.point and self.failures == other.failures
                and self.notes == other.notes)

    def __repr__(self):
        state = "passed" if self.passed else f"{len(self.failures)} failure(s)"
        return f"ConditionReport({self.condition} at {self.point_label}: {state})"


def check_condition_I(chain):
    """f_i f^i = f^i f_i = s id_r and g_i g^i = g^i g_i = s id_m, exactly."""
    failures = []
    s_r = scale(identity(chain.r, POLY), chain.s)
    s_m = scale(identity(chain.m, POLY), chain.s)
    for i in range(1, chain.n):
        f, fb = chain.f_fwd[i - 1], chain.f_bwd[i - 1]
        g, gb = chain.g_fwd[i - 1], chain.g_bwd[i - 1]
        for label, product, target in ((f"f_{i} f^{i}", f * fb, s_r), (f"f^{i} f_{i}", fb * f, s_r),
                                       (f"g_{i} g^{i}", g * gb, s_m), (f"g^{i} g_{i}", gb * g, s_m)):
            residual = product - target
            if not residual.is_zero_matrix:
                failures.append(Failure(i, f"{label} != s*id", residual))
    return ConditionReport('I', None, failures)


def special_points(chain):
    """Rational zeros of s, whether s is identically zero, and warnings."""
    if not chain.s:
        return [], True, []
    roots, rest = rational_roots(chain.s)
    warnings = [IRRATIONAL_WARNING] if degree(rest) >= 1 else []
    return roots, False, warnings


def is_special(chain, x):
    if x.is_generic:
        return not chain.s
    return not poly_eval(chain.s, x.value)


def _require_special(chain, x):
    if not is_special(chain, x):
        raise NotASpecialPoint(x)


def special_fibers(chain):
    """Points at which conditions (II)/(III) are checked: the rational roots
    of s, or the generic point plus SAMPLE_POINTS when s == 0."""
    roots, s_is_zero, warnings = special_points(chain)
    if s_is_zero:
        return [GENERIC] + [FiberPoint(a) for a in SAMPLE_POINTS], warnings
    return [FiberPoint(a) for a in roots], warnings


def _outside(vectors, basis_cols, m, ring):
    # first vector not in the span of basis_cols
    base = rank(from_columns(basis_cols, m, ring))
    for v in vectors:
        if rank(from_columns(list(basis_cols) + [v], m, ring)) > base:
            return v
    return None


def _ker_equals_im(K, I, label_k, label_i, index):
    """Failures for ker K == im I (K, I fiber matrices of G_i maps)."""
    m = K.shape[1]
    ring = K.domain
    image = column_basis(I)
    if not (K * I).is_zero_matrix:
        witness = next(c for c in columns(I) if not (K * from_columns([c], m, ring)).is_zero_matrix)
        return [Failure(index, f"im {label_i} is not contained in ker {label_k}", witness)]
    dk = m - rank(K)
    if dk != len(image):
        witness = _outside(kernel_basis_field(K), image, m, ring)
        return [Failure(index, f"ker {label_k} has dim {dk} but im {label_i} has dim {len(image)}", witness)]
    return []


def check_condition_II(chain, x):
    """At a point where s vanishes: ker g_i = im g^i and ker g^i = im g_i."""
    _require_special(chain, x)
    failures = []
    for i in range(1, chain.n):
        g = fiber(chain, 'g_fwd', i, x)
        gb = fiber(chain, 'g_bwd', i, x)
        failures += _ker_equals_im(g, gb, f"g_{i}", f"g^{i}", i)
        failures += _ker_equals_im(gb, g, f"g^{i}", f"g_{i}", i)
    return ConditionReport('II', x, failures)


def _complement_failure(A, B, label_a, label_b, index, weak):
    # im A against ker B inside the same fiber
    m = A.shape[0]
    ring = A.domain
    image = column_basis(A)
    kernel = kernel_basis_field(B)
    cols = image + kernel
    rk = rank(from_columns(cols, m, ring))
    if rk < len(cols):
        combo = kernel_basis_field(from_columns(cols, m, ring))[0]
        witness = from_columns(image, m, ring) * from_columns([combo[:len(image)]], len(image), ring)
        return Failure(index, f"im {label_a} meets ker {label_b} nontrivially", column(witness, 0))
    if not weak and rk < m:
        unit = [tuple(ring.one if k == e else ring.zero for k in range(m)) for e in range(m)]
        witness = _outside(unit, cols, m, ring)
        return Failure(index, f"im {label_a} (dim {len(image)}) + ker {label_b} (dim {len(kernel)}) "
                              f"does not span G_{index + 1}", witness)
    return None


def _condition_III(chain, x, weak):
    _require_special(chain, x)
    failures = []
    for i in range(1, chain.n - 1):
        g_i = fiber(chain, 'g_fwd', i, x)
        g_next = fiber(chain, 'g_fwd', i + 1, x)
        gb_i = fiber(chain, 'g_bwd', i, x)
        gb_next = fiber(chain, 'g_bwd', i + 1, x)
        for fail in (_complement_failure(g_i, g_next, f"g_{i}", f"g_{i + 1}", i, weak),
                     _complement_failure(gb_next, gb_i, f"g^{i + 1}", f"g^{i}", i, weak)):
            if fail is not None:
                failures.append(fail)
    return ConditionReport('III-weak' if weak else 'III', x, failures)


def check_condition_III(chain, x):
    """At a point where s vanishes: im g_i is complementary to ker g_{i+1}
    and im g^{i+1} to ker g^i, for i = 1..n-2."""
    return _condition_III(chain, x, weak=False)


def check_condition_III_weak(chain, x):
    """The linked Grassmannian requirement: im g_i and ker g_{i+1} (and
    im g^{i+1}, ker g^i) only need to meet in zero."""
    return _condition_III(chain, x, weak=True)


def check_chain(chain, extra_points=(), weak=True):
    """All condition reports for a chain, plus warnings.

    Condition I is checked globally; (II) and (III) at every special fiber
    and at each extra point where s vanishes. Extra points where s does not
    vanish are skipped with a warning.
    """
    points, warnings = special_fibers(chain)
    warnings = list(warnings)
    for a in extra_points:
        x = a if isinstance(a, FiberPoint) else FiberPoint(a)
        if x in points:
            continue
        if is_special(chain, x):
            points.append(x)
        else:
            warnings.append(f"{x} is not a special point; conditions II/III impose nothing there")
    reports = [check_condition_I(chain)]
    for x in points:
        reports.append(check_condition_II(chain, x))
        reports.append(check_condition_III(chain, x))
        if weak:
            reports.append(check_condition_III_weak(chain, x))
    return reports, warnings


def counterexample_chain():
    """r=1, m=3, n=3, s=t^2, f_i = f^i = t and diagonal g's: conditions I
    and II hold, III fails at t=0, and the linked Hom space jumps from
    dimension 3 to 4 there."""
    t = T
    s = t * t
    one = POLY.one
    return build_chain({
        'r': 1, 'm': 3, 'n': 3, 's': s,
        'f_fwd': [diag([t], POLY), diag([t], POLY)],
        'f_bwd': [diag([t], POLY), diag([t], POLY)],
        'g_fwd': [diag([one, s, s], POLY), diag([one, one, s], POLY)],
        'g_bwd': [diag([s, one, one], POLY), diag([s, s, one], POLY)],
    })
