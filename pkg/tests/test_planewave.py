import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from qweyl import classical
from qweyl.limits import to_cpoly
from qweyl.operators import build_qdal
from qweyl.planewave import (
    PhasePoly, PlaneWaveSpec, SymbolicUnit, beta, beta_inverse, exp_q, hhat, poly_eval, support,
)
from qweyl.repspace import RepElement
from qweyl.scalars import ONE, GaussianRational, eval_at_q1, qfactorial, qnum

phases = st.one_of(
    st.just(PhasePoly()),
    st.builds(lambda r, b: PhasePoly.plus(r, b), st.lists(st.integers(-3, 3), max_size=3), st.integers(-8, 2)),
    st.builds(lambda d, qq: PhasePoly.minus(d, qq), st.integers(-8, 2), st.lists(st.integers(-3, 3), max_size=3)),
)


def phase_exponent(phase: PhasePoly):
    if phase.kind == "plus":
        return lambda a, b: poly_eval(phase.poly, a) + phase.shift * b
    if phase.kind == "minus":
        return lambda a, b: phase.shift * a + poly_eval(phase.poly, b)
    return lambda a, b: 0


class TestBeta:
    def test_small_values(self):
        assert beta(0) == ONE
        assert beta(1) == qnum(2).inverse()
        assert oracles.same(oracles.scalar(beta_inverse(1)), 1 / oracles.q + oracles.q)

    @pytest.mark.parametrize("s", range(9))
    def test_classical_value(self, s):
        assert eval_at_q1(beta(s)) == GaussianRational(Fraction(math.factorial(s), 2**s))

    @pytest.mark.parametrize("s", range(13))
    def test_inverse_consistency(self, s):
        assert beta(s) * beta_inverse(s) == ONE

    @pytest.mark.parametrize("s", range(5))
    def test_against_direct_sum(self, s):
        assert oracles.same(oracles.scalar(beta_inverse(s)), oracles.beta_inverse(s))

    def test_negative(self):
        with pytest.raises(ValueError):
            beta(-1)


class TestComponents:
    def test_degree_zero_is_one(self):
        assert hhat(0) == RepElement.one()
        assert list(support(0)) == [(0, 0, 0)]

    def test_degree_one_classical(self):
        half = GaussianRational(Fraction(1, 2))
        expected = {
            ((0, 0, 1, 0), (0, 1, 0, 0), (0, 0)): half,
            ((0, 1, 0, 0), (0, 0, 1, 0), (0, 0)): half,
            ((1, 0, 0, 0), (0, 0, 0, 1), (0, 0)): -half,
            ((0, 0, 0, 1), (1, 0, 0, 0), (0, 0)): -half,
        }
        got = {(tuple(k.k), k.x, k.z): v for k, v in hhat(1).eval_at_q1().items()}
        assert got == expected

    @pytest.mark.parametrize("s", range(5))
    @pytest.mark.parametrize("phase", [PhasePoly(), PhasePoly.plus((1, -2, 1), -7), PhasePoly.minus(3, (0, 2))])
    def test_against_formula_oracle(self, s, phase):
        got = oracles.rep_dict(hhat(s, phase))
        assert oracles.dict_equal(got, oracles.hhat(s, phase_exponent(phase)))

    def test_symbolic_shift(self):
        phase = PhasePoly.plus((0, 1), SymbolicUnit(1))
        got = oracles.rep_dict(hhat(2, phase))
        base = oracles.hhat(2, lambda a, b: a)
        u = oracles.UNITS["u1"]
        # b = (k- exponent) + n and n = kvb exponent
        expected = {key: c * u ** (key[0][1] + key[0][3]) for key, c in base.items()}
        assert oracles.dict_equal(got, expected)

    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 5), phases)
    def test_support_and_degrees(self, s, phase):
        e = hhat(s, phase)
        for key in e.terms:
            assert min(key.k) >= 0 and min(key.x) >= 0
            assert sum(key.k) == sum(key.x) == s
        assert len(e) == len(list(support(s)))

    @settings(max_examples=20, deadline=None)
    @given(st.integers(0, 5), phases)
    def test_classical_limit_ignores_phase(self, s, phase):
        assert to_cpoly(hhat(s, phase)) == classical.pairing_power(s)

    def test_general_table_matches_plus(self):
        plus = PhasePoly.plus((2, 0, 1), -3)
        table = PhasePoly.general({(a, b): poly_eval((2, 0, 1), a) - 3 * b for a, b, _ in support(3)})
        assert hhat(3, table) == hhat(3, plus)

    def test_general_table_missing_point(self):
        with pytest.raises(KeyError):
            hhat(2, PhasePoly.general({(0, 0): 1}))

    def test_negative_degree(self):
        with pytest.raises(ValueError):
            PlaneWaveSpec(-1)


class TestDalembert:
    @pytest.mark.parametrize("s", range(5))
    def test_annihilated_on_cone(self, s):
        op = build_qdal("hat")
        for phase in (PhasePoly(), PhasePoly.plus((1, 1), -2), PhasePoly.minus(-4, (0, 0, 1))):
            assert op(hhat(s, phase)).cone_project().is_zero()

    def test_symbolic_shift_annihilated(self):
        phase = PhasePoly.minus(SymbolicUnit(2), (1,))
        assert build_qdal("hat")(hhat(3, phase)).cone_project().is_zero()


class TestSeries:
    def test_truncation_zero(self):
        assert exp_q(PhasePoly(), 0) == [RepElement.one()]

    def test_taylor_coefficients(self):
        series = exp_q(PhasePoly(), 3)
        for s, term in enumerate(series):
            expected = classical.pairing_power(s).scale(Fraction(1, math.factorial(s)))
            assert to_cpoly(term) == expected

    def test_family(self):
        series = exp_q(lambda s: PhasePoly.plus((), -s - 4 - 3), 2)
        assert series[2] == hhat(2, PhasePoly.plus((), -9)).scale(qfactorial(2).inverse())

    def test_negative(self):
        with pytest.raises(ValueError):
            exp_q(PhasePoly(), -1)
