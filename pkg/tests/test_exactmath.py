import math
from fractions import Fraction as F

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from adelic_p1.exactmath import (
    MINUS_INFINITY,
    LogNumber,
    NoMinorant,
    NoSolution,
    PLFunction,
    Q,
    UnboundedSupport,
    exp_rational,
    floor_exp,
    matvec,
    nullspace,
    ord_p,
    pl_max_all,
    quad,
    rational_factorization,
    semidef_analyze,
    solve_consistent,
)

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
small_primes = st.sampled_from([2, 3, 5, 7, 11])


@st.composite
def log_numbers(draw):
    logs = draw(st.dictionaries(small_primes, rationals, max_size=3))
    return LogNumber.of(draw(rationals), logs)


@st.composite
def pl_functions(draw, zero_ends=False):
    xs = sorted(draw(st.sets(rationals, min_size=1, max_size=5)))
    vs = [draw(rationals) for _ in xs]
    if zero_ends:
        return PLFunction.from_points(list(zip(xs, vs)), 0, 0)
    return PLFunction.from_points(list(zip(xs, vs)), draw(rationals), draw(rationals))


def test_q_parses_num_den_only():
    assert Q("3/6") == F(1, 2)
    assert Q(" -4 ") == -4
    for bad in ("0.5", "1e3", "x", "1/"):
        with pytest.raises(ValueError):
            Q(bad)
    with pytest.raises(TypeError):
        Q(0.5)
    with pytest.raises(TypeError):
        Q(True)


def test_ord_and_factorization():
    assert ord_p(F(12, 5), 2) == 2
    assert ord_p(F(12, 5), 5) == -1
    assert rational_factorization(F(-18, 35)) == {2: 1, 3: 2, 5: -1, 7: -1}
    with pytest.raises(ValueError):
        ord_p(F(0), 3)


def test_lognumber_arithmetic_and_rendering():
    x = LogNumber.log_of(F(4, 9))
    assert x.render() == "2·log2 - 2·log3"
    assert x.sign() == -1
    assert (x + LogNumber.log_of(F(9, 4))).is_zero()
    y = LogNumber.of(F(1, 2), {2: F(3, 2), 3: -1})
    assert y.render() == "1/2 + 3/2·log2 - 1·log3"
    assert LogNumber().render() == "0"
    assert LogNumber.from_json(y.to_json()) == y
    assert (y * 2).ratio(y) == 2
    assert LogNumber.log_prime(2).ratio(LogNumber.log_prime(3)) is None


def test_lognumber_rejects_nonprime_keys():
    with pytest.raises(ValueError):
        LogNumber.from_json({"unit": "0", "logs": {"4": "1"}})


def test_float_rendering_matches_mpmath():
    x = LogNumber.log_prime(3)
    s = x.render_float(50)
    with mpmath.workdps(60):
        assert abs(mpmath.mpf(s) - mpmath.log(3)) < mpmath.mpf(10) ** -48


@given(log_numbers())
@settings(max_examples=200, deadline=None)
def test_sign_agrees_with_high_precision(x):
    v = x.to_mpf(80)
    if x.is_zero():
        assert x.sign() == 0
    else:
        assert x.sign() == (1 if v > 0 else -1)


@given(log_numbers(), log_numbers(), rationals)
@settings(max_examples=100, deadline=None)
def test_lognumber_is_a_q_vector_space(x, y, c):
    assert (x + y) - y == x
    assert (x + y) * c == x * c + y * c
    assert -(-x) == x


def test_floor_exp_exact_and_transcendental():
    assert floor_exp(LogNumber.of(F(1, 2))) == 1  # e^(1/2) = 1.648...
    assert floor_exp(LogNumber.log_of(F(7, 2))) == 3
    assert floor_exp(LogNumber.log_of(8)) == 8
    assert floor_exp(LogNumber.log_prime(2, F(1, 2))) == 1
    assert exp_rational(LogNumber.log_of(F(3, 4))) == F(3, 4)
    assert exp_rational(LogNumber.of(1)) is None


@given(rationals)
@settings(max_examples=50, deadline=None)
def test_floor_exp_matches_math(u):
    x = LogNumber.of(u)
    got = floor_exp(x)
    assert got == math.floor(math.exp(float(u))) or abs(math.exp(float(u)) - round(math.exp(float(u)))) < 1e-9


def test_semidefinite_analysis():
    neg, ker = semidef_analyze([[-2, 2], [2, -2]])
    assert neg and len(ker) == 1 and ker[0][0] == ker[0][1]
    assert semidef_analyze([[-2, 1], [1, -2]]) == (True, [])
    assert semidef_analyze([[1, 0], [0, -1]])[0] is False
    assert semidef_analyze([[0, 1], [1, 0]])[0] is False


def test_nullspace_and_consistent_solve():
    M = [[F(-2), F(2)], [F(2), F(-2)]]
    assert len(nullspace(M)) == 1
    x = solve_consistent(M, [F(1), F(-1)])
    assert matvec(M, x) == [1, -1]
    with pytest.raises(NoSolution):
        solve_consistent(M, [F(1), F(0)])


def test_quad_form():
    M = [[-2, 1], [1, -2]]
    assert quad(M, [1, 1]) == -2
    assert quad(M, [1, 0], [0, 1]) == 1


def test_pl_max_of_three_lines():
    f = pl_max_all([PLFunction.affine(0, 0), PLFunction.affine(F(1, 2), 0), PLFunction.affine(1, -1)])
    assert f.breakpoints == (0, 2)
    assert f.values == (0, 1)
    assert (f.left_slope, f.right_slope) == (0, 1)


def test_pl_canonical_form_drops_collinear_points():
    f = PLFunction.from_points([(0, 0), (1, 1), (2, 2)], 1, 1)
    assert f == PLFunction.affine(1, 0)


def test_legendre_and_integral():
    f = PLFunction.from_points([(0, 0), (2, 1)], 0, 1)
    assert f.legendre_inf(F(3, 4)) == F(-1, 2)
    assert f.legendre_inf(2) == MINUS_INFINITY
    assert f.integral(0, 2) == 1
    tent = PLFunction.from_points([(0, 0), (1, 1), (2, 0)], 0, 0)
    assert tent.slope_pairing(tent) == 2
    with pytest.raises(UnboundedSupport):
        f.slope_pairing(tent)


def test_convex_minorant_strips_tent():
    base = PLFunction.from_points([(0, 0)], 0, 1)
    tent = PLFunction.from_points([(0, 0), (1, 1), (2, 0)], 0, 0)
    assert (base + tent).convex_minorant() == base
    with pytest.raises(NoMinorant):
        base.convex_minorant(1, 0)
    with pytest.raises(NoMinorant):
        base.convex_minorant(0, 2)


def test_convex_minorant_with_smaller_slopes():
    f = PLFunction.from_points([(0, 3), (4, 3)], 0, 1)
    g = f.convex_minorant(0, F(3, 4))
    assert g == PLFunction.from_points([(4, 3)], 0, F(3, 4))


@given(pl_functions(), pl_functions())
@settings(max_examples=100, deadline=None)
def test_max_and_min_are_pointwise(f, g):
    h, k = f.max(g), f.min(g)
    pts = sorted(set(f.breakpoints) | set(g.breakpoints) | set(h.breakpoints))
    probes = pts + [pts[0] - 3, pts[-1] + 3] + [(a + b) / 2 for a, b in zip(pts, pts[1:])]
    for u in probes:
        assert h(u) == max(f(u), g(u))
        assert k(u) == min(f(u), g(u))


@given(pl_functions())
@settings(max_examples=100, deadline=None)
def test_convex_minorant_is_greatest_convex_below(f):
    if f.left_slope > f.right_slope:
        with pytest.raises(NoMinorant):
            f.convex_minorant()
        return
    g = f.convex_minorant()
    assert g.is_convex()
    assert g.leq(f)
    # any larger convex function with these end slopes would leave f
    assert (f - g).inf() == 0


@given(pl_functions(), rationals)
@settings(max_examples=100, deadline=None)
def test_legendre_matches_vertex_scan(f, x):
    got = f.legendre_inf(x)
    if x < f.left_slope or x > f.right_slope:
        assert got == MINUS_INFINITY
    else:
        assert got == min(f(b) - x * b for b in f.breakpoints)


@given(pl_functions(zero_ends=True), pl_functions(zero_ends=True))
@settings(max_examples=100, deadline=None)
def test_slope_pairing_symmetric_and_positive(f, g):
    assert f.slope_pairing(g) == g.slope_pairing(f)
    assert f.slope_pairing(f) >= 0


def test_eval_at_log_abscissa():
    f = PLFunction.from_points([(0, 0)], 0, 1)
    assert f.eval_log(LogNumber.log_of(9)) == LogNumber.log_of(9)
    assert f.eval_log(LogNumber.log_of(F(1, 9))).is_zero()


def _convergents(x, n):
    """Continued-fraction convergents of an mpf, which approximate it extremely well."""
    out, h0, h1, k0, k1 = [], 0, 1, 1, 0
    for _ in range(n):
        a = int(mpmath.floor(x))
        h0, h1 = h1, a * h1 + h0
        k0, k1 = k1, a * k1 + k0
        out.append(F(h1, k1))
        x = 1 / (x - a)
    return out


def test_sign_near_cancellation():
    with mpmath.workdps(400):
        for p in (2, 3):
            for q in _convergents(mpmath.log(p), 60):
                x = LogNumber.log_prime(p) - q
                with mpmath.workdps(600):
                    truth = mpmath.sign(mpmath.log(p) - mpmath.mpf(q.numerator) / q.denominator)
                assert x.sign() == int(truth)
