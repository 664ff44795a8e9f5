import pytest

from linkhom.arith import POLY, QQ
from linkhom.chain import (build_chain, composite, special_points, special_fibers, check_condition_I,
                           check_condition_II, check_condition_III, check_condition_III_weak,
                           check_chain, IRRATIONAL_WARNING, SAMPLE_POINTS)
from linkhom.generator import GenParams, gen_valid_chain
from linkhom.linalg import FiberPoint, GENERIC, from_rows, identity, diag, same, scale
from linkhom.errors import ShapeMismatch, IndexOutOfRange, NotASpecialPoint

ZERO = FiberPoint(0)


def scalar_chain(s, n=1, value=None):
    """r = m = 1 with every map equal to ``value`` (default s)."""
    value = s if value is None else value
    maps = [[[value]] for _ in range(n - 1)]
    return build_chain({'r': 1, 'm': 1, 'n': n, 's': s,
                        'f_fwd': maps, 'f_bwd': maps, 'g_fwd': maps, 'g_bwd': maps})


class TestBuild:
    def test_counterexample_shape(self, counterexample):
        assert (counterexample.r, counterexample.m, counterexample.n) == (1, 3, 3)
        assert counterexample.rm == 3
        assert len(counterexample.g_fwd) == 2

    def test_wrong_map_size(self, t):
        with pytest.raises(ShapeMismatch) as info:
            build_chain({'r': 1, 'm': 2, 'n': 2, 's': t,
                         'f_fwd': [[[t]]], 'f_bwd': [[[t]]],
                         'g_fwd': [[[1, 0, 0], [0, 1, 0]]], 'g_bwd': [[[1, 0], [0, 1]]]})
        assert info.value.field == "g_fwd[0]"

    def test_wrong_map_count(self, t):
        with pytest.raises(ShapeMismatch) as info:
            build_chain({'r': 1, 'm': 1, 'n': 3, 's': t,
                         'f_fwd': [[[t]]], 'f_bwd': [[[t]], [[t]]],
                         'g_fwd': [[[t]], [[t]]], 'g_bwd': [[[t]], [[t]]]})
        assert info.value.list_name == "f_fwd"

    def test_ragged_matrix(self, t):
        with pytest.raises(ShapeMismatch):
            build_chain({'r': 1, 'm': 2, 'n': 2, 's': t,
                         'f_fwd': [[[t]]], 'f_bwd': [[[t]]],
                         'g_fwd': [[[1, 0], [0]]], 'g_bwd': [[[1, 0], [0, 1]]]})

    @pytest.mark.parametrize("key,value", [('r', 0), ('m', -1), ('n', True)])
    def test_bad_dimension(self, t, key, value):
        spec = {'r': 1, 'm': 1, 'n': 1, 's': t, 'f_fwd': [], 'f_bwd': [], 'g_fwd': [], 'g_bwd': []}
        spec[key] = value
        with pytest.raises(ShapeMismatch):
            build_chain(spec)


class TestComposite:
    def test_forward_and_backward(self, counterexample, t):
        s = t * t
        assert same(composite(counterexample, 'g_fwd', 1, 3), diag([1, s, s * s], POLY))
        assert same(composite(counterexample, 'g_bwd', 1, 3), diag([s * s, s, 1], POLY))
        assert same(composite(counterexample, 'f_fwd', 1, 3), diag([s], POLY))

    def test_identity_when_equal(self, counterexample):
        assert same(composite(counterexample, 'g_fwd', 2, 2), identity(3, POLY))

    @pytest.mark.parametrize("seed", [0, 5])
    def test_composites_compose(self, counterexample, t, seed):
        generated = gen_valid_chain(GenParams(2, 3, 4, 1, t * (t - 1), seed=seed))
        for chain in (counterexample, generated):
            n = chain.n
            triples = [(i, j, k) for i in range(1, n + 1) for j in range(i, n + 1) for k in range(j, n + 1)]
            for family in ('f_fwd', 'g_fwd'):
                for i, j, k in triples:
                    assert same(composite(chain, family, i, k),
                                composite(chain, family, j, k) * composite(chain, family, i, j))
            for family in ('f_bwd', 'g_bwd'):
                for i, j, k in triples:
                    assert same(composite(chain, family, i, k),
                                composite(chain, family, i, j) * composite(chain, family, j, k))

    @pytest.mark.parametrize("seed", [1, 2, 3])
    def test_round_trip_is_a_power_of_s(self, t, seed):
        chain = gen_valid_chain(GenParams(2, 3, 4, 2, t * t - t, seed=seed))
        assert check_condition_I(chain).passed
        for fwd, bwd, size in (('f_fwd', 'f_bwd', chain.r), ('g_fwd', 'g_bwd', chain.m)):
            for i in range(1, chain.n + 1):
                for j in range(i, chain.n + 1):
                    power = scale(identity(size, POLY), chain.s ** (j - i))
                    assert same(composite(chain, fwd, i, j) * composite(chain, bwd, i, j), power)
                    assert same(composite(chain, bwd, i, j) * composite(chain, fwd, i, j), power)

    @pytest.mark.parametrize("i,j", [(0, 1), (2, 1), (1, 4)])
    def test_out_of_range(self, counterexample, i, j):
        with pytest.raises(IndexOutOfRange):
            composite(counterexample, 'g_fwd', i, j)


class TestSpecialPoints:
    def test_rational_roots(self, t):
        roots, s_is_zero, warnings = special_points(scalar_chain(t * t - t))
        assert roots == [0, 1] and not s_is_zero and warnings == []

    def test_irrational_factor_warns(self, t):
        roots, _, warnings = special_points(scalar_chain(t * (t * t - 2)))
        assert roots == [0]
        assert warnings == [IRRATIONAL_WARNING]

    def test_constant_s_has_none(self):
        points, warnings = special_fibers(scalar_chain(POLY.one))
        assert points == [] and warnings == []

    def test_zero_s_samples(self):
        points, _ = special_fibers(scalar_chain(POLY.zero))
        assert points[0] == GENERIC
        assert [x.value for x in points[1:]] == list(SAMPLE_POINTS)


class TestConditions:
    def test_counterexample_I_and_II_hold(self, counterexample):
        assert check_condition_I(counterexample).passed
        assert check_condition_II(counterexample, ZERO).passed

    def test_counterexample_III_fails_at_first_index(self, counterexample):
        report = check_condition_III(counterexample, ZERO)
        assert not report.passed
        assert {f.index for f in report.failures} == {1}
        assert report.failures[0].witness == (0, 1, 0)

    def test_counterexample_weak_III_holds(self, counterexample):
        assert check_condition_III_weak(counterexample, ZERO).passed

    def test_condition_I_residual(self, t):
        chain = scalar_chain(t * t, n=2, value=t)
        assert check_condition_I(chain).passed
        bad = build_chain({'r': 1, 'm': 1, 'n': 2, 's': t * t, 'f_fwd': [[[t]]], 'f_bwd': [[[2 * t]]],
                           'g_fwd': [[[t]]], 'g_bwd': [[[t]]]})
        report = check_condition_I(bad)
        assert [f.index for f in report.failures] == [1, 1]
        assert same(report.failures[0].witness, from_rows([[t * t]], POLY))

    def test_condition_II_kernel_too_big(self, t):
        # g = g^ = t: at t=0 the kernel is the whole line, the image is zero
        chain = scalar_chain(t * t, n=2, value=t)
        report = check_condition_II(chain, ZERO)
        assert not report.passed
        assert report.failures[0].index == 1

    def test_condition_II_needs_special_point(self, counterexample):
        with pytest.raises(NotASpecialPoint):
            check_condition_II(counterexample, FiberPoint(1))

    def test_condition_III_vacuous_for_short_chains(self, t):
        chain = scalar_chain(t, n=2, value=POLY.one)
        assert check_condition_III(chain, ZERO).failures == []

    def test_check_chain_counterexample(self, counterexample):
        reports, warnings = check_chain(counterexample)
        assert warnings == []
        assert [(r.condition, r.point_label, r.passed) for r in reports] == [
            ('I', 'global', True), ('II', 't=0', True), ('III', 't=0', False), ('III-weak', 't=0', True)]

    def test_check_chain_extra_points(self, counterexample):
        reports, warnings = check_chain(counterexample, [QQ(1, 2), ZERO], weak=False)
        assert len(reports) == 3
        assert len(warnings) == 1 and "t=1/2" in warnings[0]

    def test_zero_s_checks_generic_point(self):
        reports, _ = check_chain(scalar_chain(POLY.zero))
        points = {r.point for r in reports if r.point is not None}
        assert GENERIC in points and len(points) == 1 + len(SAMPLE_POINTS)
