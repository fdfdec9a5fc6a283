import cmath
import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from dualsurf import expr as ex
from dualsurf.errors import DivisionByZero, ParseError, UnboundParameter
from dualsurf.grammar import parse, to_string
from dualsurf.vectors import Signature, cross, inner, signature

Z = ex.Z


# evaluation ---------------------------------------------------------------

def test_eval_square():
    assert ex.evaluate(Z ** 2, 1 + 1j) == pytest.approx(2j)


def test_eval_exp_at_zero():
    assert ex.evaluate(ex.exp(Z), 0) == 1


def test_eval_rational():
    e = (1 + Z ** 2) / (2 * Z ** 2)
    assert ex.evaluate(e, 0.5) == pytest.approx(2.5, abs=1e-15)


def test_eval_unbound_parameter():
    with pytest.raises(UnboundParameter):
        ex.evaluate(Z + ex.param("a"), 1.0)


def test_eval_pole_reports_subexpression():
    e = ex.exp(Z) + 1 / Z
    with pytest.raises(DivisionByZero) as info:
        ex.evaluate(e, 0.0)
    assert info.value.subexpr is not None
    assert "z" in str(info.value.subexpr)


def test_eval_negative_power_pole():
    with pytest.raises(DivisionByZero):
        ex.evaluate(Z ** -2, 0.0)


def test_eval_vectorized_matches_scalar():
    e = ex.sin(Z) * ex.cosh(Z) / (Z + 3)
    zs = np.array([0.1 + 0.2j, -1.0, 2j])
    vec = ex.evaluate(e, zs)
    assert vec.shape == (3,)
    for z, val in zip(zs, vec):
        assert ex.evaluate(e, z) == val


def test_eval_parameter_binding():
    e = ex.param("lam") * Z
    assert ex.evaluate(e, 2.0, {"lam": 3.0}) == 6


def test_shared_subtree_evaluated_once(monkeypatch):
    calls = []
    real = ex._NUMPY_FUNCS["exp"]
    monkeypatch.setitem(ex._NUMPY_FUNCS, "exp", lambda x: calls.append(1) or real(x))
    shared = ex.exp(Z)
    ex.evaluate(shared * shared + shared, 0.3)
    assert len(calls) == 1


# differentiation -------------------------------------------------------------

def test_derivative_of_exp_is_exp():
    d = ex.differentiate(ex.exp(Z))
    rng = np.random.default_rng(3)
    zs = rng.normal(size=5) + 1j * rng.normal(size=5)
    np.testing.assert_allclose(ex.evaluate(d, zs), np.exp(zs), rtol=1e-15)


def test_derivative_of_cube():
    assert ex.evaluate(ex.differentiate(Z ** 3), 2) == pytest.approx(12)


def test_derivative_of_inverse_square():
    assert ex.evaluate(ex.differentiate(Z ** -2), 0.5) == pytest.approx(-16)


def test_derivative_of_trig_and_hyperbolic():
    z = 0.3 - 0.7j
    cases = [(ex.sin(Z), cmath.cos(z)), (ex.cos(Z), -cmath.sin(z)),
             (ex.sinh(Z), cmath.cosh(z)), (ex.cosh(Z), cmath.sinh(z))]
    for e, want in cases:
        assert ex.evaluate(ex.differentiate(e), z) == pytest.approx(want, rel=1e-14)


def test_parameters_are_constants_for_d_dz():
    e = ex.param("a") * Z ** 2
    assert ex.evaluate(ex.differentiate(e), 1.5, {"a": 2.0}) == pytest.approx(6.0)


# compose -------------------------------------------------------------------

def test_compose_square_of_exp():
    assert ex.evaluate(ex.compose(Z ** 2, ex.exp(Z)), math.log(2)) == pytest.approx(4)


def test_compose_identity_substitution_is_same_tree():
    f = ex.sin(Z) / (Z ** 2 + 1)
    assert ex.compose(f, Z) == f


def test_compose_inverse_square_of_exp():
    assert ex.evaluate(ex.compose(Z ** -2, ex.exp(Z)), 0) == pytest.approx(1)


def test_bind_replaces_parameters():
    e = ex.param("t") * Z + ex.param("s")
    b = ex.bind(e, {"t": 2.0})
    assert b.parameters() == {"s"}
    assert ex.evaluate(b, 1.0, {"s": 1.0}) == 3


# constant folding ----------------------------------------------------------

def test_folding_i_times_minus_i():
    assert ex.mul(1j, ex.mul(-1j, Z)) == Z


def test_folding_constants():
    assert ex.add(2, 3).is_const(5)
    assert ex.mul(0, ex.sin(Z)).is_const(0)
    assert ex.power(Z, 1) == Z


def test_power_rejects_zero_exponent():
    with pytest.raises(ValueError):
        ex.power(Z, 0)


# vectors -------------------------------------------------------------------

E1, E2, E3 = (1, 0, 0), (0, 1, 0), (0, 0, 1)


def test_cross_euclidean_right_hand_rule():
    assert cross(E1, E2, 1) == (0, 0, 1)


def test_cross_lorentzian_orientation():
    assert cross(E1, E2, -1) == (0, 0, -1)


@pytest.mark.parametrize("sig", [1, -1])
def test_cross_of_vector_with_itself(sig):
    assert cross((1, 2j, 3), (1, 2j, 3), sig) == (0, 0, 0)


def test_inner_examples():
    assert inner((1, 1j, 0), (1, 1j, 0), 1) == 0
    assert inner(E3, E3, -1) == -1
    assert inner((1, 0, 1), (1, 0, 1), -1) == 0


def test_signature_parsing():
    assert signature(-1) is Signature.LORENTZIAN
    with pytest.raises(ValueError):
        signature(0)


def test_cross_determinant_identity():
    rng = np.random.default_rng(0)
    for sig in (1, -1):
        u, v = rng.normal(size=3), rng.normal(size=3)
        w = cross(u, v, sig)
        for k in range(3):
            e = np.eye(3)[k]
            assert inner(w, e, sig) == pytest.approx(np.linalg.det(np.array([u, v, e])))


vec3 = st.tuples(*[st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False)] * 3)


@given(vec3, vec3, st.sampled_from([1, -1]))
def test_cross_orthogonal_to_factors(u, v, sig):
    w = cross(u, v, sig)
    scale = 1 + max(abs(x) for x in u + v) ** 2
    assert abs(inner(w, u, sig)) <= 1e-12 * scale ** 1.5
    assert abs(inner(w, v, sig)) <= 1e-12 * scale ** 1.5


# random expressions ---------------------------------------------------------

small_const = st.complex_numbers(max_magnitude=2, allow_nan=False, allow_infinity=False).map(
    lambda c: complex(round(c.real, 3), round(c.imag, 3)))

leaves = st.one_of(st.just(Z), small_const.map(ex.const))


def _build(fn, *args):
    # constant folding can itself divide by zero; fall back to the first operand
    try:
        return fn(*args)
    except DivisionByZero:
        return args[0]


def _extend(children):
    unary = st.tuples(st.sampled_from([ex.exp, ex.sin, ex.cos, ex.sinh, ex.cosh, ex.neg]),
                      children).map(lambda p: p[0](p[1]))
    binary = st.tuples(st.sampled_from([ex.add, ex.sub, ex.mul, ex.div]), children,
                       children).map(lambda p: _build(*p))
    powers = st.tuples(children, st.sampled_from([-2, -1, 2, 3])).map(
        lambda p: _build(ex.power, *p))
    return st.one_of(unary, binary, powers)


exprs = st.recursive(leaves, _extend, max_leaves=6)
points = st.complex_numbers(max_magnitude=1.5, allow_nan=False, allow_infinity=False)


def _safe_eval(e, z):
    try:
        with np.errstate(all="ignore"):
            return ex.evaluate(e, z)
    except DivisionByZero:
        return None


@settings(max_examples=300, deadline=None)
@given(exprs, points)
def test_derivative_matches_central_difference(e, z):
    h = 1e-5
    f0 = _safe_eval(e, z)
    fp, fm = _safe_eval(e, z + h), _safe_eval(e, z - h)
    d = _safe_eval(ex.differentiate(e), z)
    assume(None not in (f0, fp, fm, d))
    assume(all(np.isfinite(x) and abs(x) < 1e4 for x in (f0, fp, fm, d)))
    # stay clear of nearby poles where the stencil itself is inaccurate
    f2 = _safe_eval(ex.differentiate(ex.differentiate(e)), z)
    assume(f2 is not None and abs(f2) < 1e4)
    fd = (fp - fm) / (2 * h)
    assert abs(d - fd) <= 1e-6 * (1 + abs(d))


@settings(max_examples=150, deadline=None)
@given(exprs, exprs, exprs, points)
def test_compose_associative_under_evaluation(f, g, h, z):
    try:
        lhs = ex.compose(ex.compose(f, g), h)
        rhs = ex.compose(f, ex.compose(g, h))
    except DivisionByZero:
        assume(False)
    left, right = _safe_eval(lhs, z), _safe_eval(rhs, z)
    assume(left is not None and right is not None)
    assume(np.isfinite(left) and np.isfinite(right) and abs(left) < 1e8)
    assert abs(left - right) <= 1e-9 * (1 + abs(left))


@settings(max_examples=300, deadline=None)
@given(exprs, points)
def test_parse_print_round_trip_evaluates_identically(e, z):
    back = parse(to_string(e))
    a, b = _safe_eval(e, z), _safe_eval(back, z)
    if a is None:
        assert b is None
    else:
        np.testing.assert_array_equal(a, b)


# grammar -------------------------------------------------------------------

def test_parse_basic_grammar():
    e = parse("(1 + z^2) / (2*z**2)")
    assert ex.evaluate(e, 0.5) == pytest.approx(2.5)


def test_parse_i_pi_and_parameters():
    e = parse("exp(i*pi*z) + lam")
    assert e.parameters() == {"lam"}
    assert ex.evaluate(e, 1.0, {"lam": 1.0}) == pytest.approx(0, abs=1e-15)


def test_parse_negative_exponent():
    assert ex.evaluate(parse("z^(-2)"), 0.5) == pytest.approx(4)


@pytest.mark.parametrize("bad", ["z +", "sin z", "z^1.5", "(z", "z $ 2", ""])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse(bad)


def test_printer_keeps_complex_constants():
    e = ex.mul(1 - 2j, Z)
    assert ex.evaluate(parse(to_string(e)), 0.7) == ex.evaluate(e, 0.7)
