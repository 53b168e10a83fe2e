from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from homsusp.errors import ContextError, DegreeError, InvalidTransformationError, ResourceError, ShapeError
from homsusp.poly import (
    Polynomial,
    VariableContext,
    dense_coefficients,
    evaluate,
    is_squarefree,
    limits,
    partial_derivative,
    resultant,
    substitute_affine,
    univariate_gcd,
)

from .conftest import polynomials, to_sympy

CTX = VariableContext(["x", "y", "z"])
Y = VariableContext(["y"])
y = Y.var("y")


def test_context_rejects_duplicates():
    with pytest.raises(ContextError):
        VariableContext(["x", "x"])


def test_difference_of_squares():
    assert (y + 1) * (y - 1) == y**2 - 1


def test_hypersurface_function_expands(xy):
    _, x, yy = xy
    f = (-x) * (x * yy + 1)
    assert f == -(x**2) * yy - x
    assert str(f) == "-x^2*y - x"


def test_zero_absorbs(xy):
    _, x, yy = xy
    assert (x * yy + 3) * 0 == 0
    assert ((x * yy + 3) * 0).is_zero()


def test_zero_coefficients_are_dropped():
    p = Polynomial(["x"], {(1,): 2, (0,): 0})
    assert dict(p.terms) == {(1,): Fraction(2)}
    assert Polynomial(["x"], {}).is_zero()


def test_contexts_embed_by_name():
    a = VariableContext(["x"]).var("x")
    b = VariableContext(["x", "y"]).var("y")
    s = a + b
    assert s.ctx.names == ("x", "y")
    with pytest.raises(ContextError):
        _ = a + VariableContext(["z"]).var("z")


def test_partial_derivatives_of_sl2_level_function():
    ctx = VariableContext(["z", "t", "x", "y"])
    z, t, x, yy = ctx.gens()
    f = x**3 * z + yy * t**2
    assert partial_derivative(f, "x") == 3 * x**2 * z
    assert partial_derivative(f, "t") == 2 * yy * t
    assert partial_derivative(ctx.const(7), "x").is_zero()
    with pytest.raises(ContextError):
        partial_derivative(f, "w")


def test_evaluate():
    ctx = VariableContext(["x", "y"])
    x, yy = ctx.gens()
    assert evaluate(x * yy - 1, {"x": 1, "y": 1}) == 0
    uvy = VariableContext(["u", "v", "y"])
    u, v, w = uvy.gens()
    assert evaluate(u * v - w**2, {"u": 0, "v": 0, "y": 0}) == 0
    assert evaluate(y**3 + 1, {"y": -1}) == 0
    with pytest.raises(ContextError):
        evaluate(x * yy, {"x": 1})


def test_substitute_affine_examples():
    assert substitute_affine(y**2, 1, 1, 0) == y**2
    # -f(-y) for f = y(y-1)(y-2), expanded by hand: y^3 + 3y^2 + 2y
    f = y * (y - 1) * (y - 2)
    assert dense_coefficients(substitute_affine(f, -1, -1, 0)) == [0, 2, 3, 1]
    assert substitute_affine(f, -1, -1, 0) == y * (y + 1) * (y + 2)
    # 4((y/2)^2 - 1) = y^2 - 4
    assert substitute_affine(y**2 - 1, 4, Fraction(1, 2), 0) == y**2 - 4
    with pytest.raises(InvalidTransformationError):
        substitute_affine(y, 0, 1, 0)
    with pytest.raises(InvalidTransformationError):
        substitute_affine(y, 1, 0, 0)


def test_univariate_gcd_examples():
    assert univariate_gcd(y**2 - 1, 2 * y) == 1
    assert univariate_gcd(y**2, 2 * y) == y
    # y^3 - y = y(y-1)(y+1); 3y^2 - 1 vanishes at none of 0, 1, -1
    assert all((3 * y**2 - 1).evaluate({"y": r}) != 0 for r in (0, 1, -1))
    assert univariate_gcd(y**3 - y, 3 * y**2 - 1) == 1
    with pytest.raises(ShapeError):
        univariate_gcd(CTX.var("x") * CTX.var("y"), CTX.var("x"))


def test_is_squarefree_examples():
    assert is_squarefree(y**2 - 1)
    assert not is_squarefree(y**2)
    for a in (Fraction(2), Fraction(-3), Fraction(1, 2), Fraction(7, 3)):
        assert is_squarefree(y * (y + 1) * (y + a))
    with pytest.raises(DegreeError):
        is_squarefree(Y.const(3))


def test_resultant_examples(xy):
    _, x, yy = xy
    # x = -y^2 substituted into the second polynomial leaves 1
    assert (yy * x + yy**3 + 1).substitute({"x": -(yy**2)}) == 1
    assert resultant(x + yy**2, yy * x + yy**3 + 1, "x") == 1
    assert resultant(y - 1, y + 1, "y") == 2
    T = VariableContext(["y", "t"])
    yt, t = T.gens()
    assert resultant(yt - t, yt - t, "y").is_zero()
    with pytest.raises(ShapeError):
        resultant(x, yy, "x")


def test_resultant_matches_sympy(xy):
    _, x, yy = xy
    pairs = [
        (x**2 * yy + x + 3, x * yy**2 - 2 * x + yy),
        (x**3 - yy, x**2 + yy * x + 1),
        (Fraction(1, 2) * x**2 - yy**2, 3 * x - yy + 1),
    ]
    sx, sy = sympy.symbols("x y")
    for p, q in pairs:
        ours = to_sympy(resultant(p, q, "x"), [sx, sy])
        theirs = sympy.expand(sympy.resultant(to_sympy(p, [sx, sy]), to_sympy(q, [sx, sy]), sx))
        assert sympy.expand(ours - theirs) == 0


def test_canonical_printing_is_grevlex(xy):
    _, x, yy = xy
    assert str(x * yy + yy**3 - Fraction(1, 2) * x + 7) == "y^3 + x*y - 1/2*x + 7"
    assert str(x * 0) == "0"


def test_safety_limits():
    with limits(max_degree=5):
        with pytest.raises(ResourceError):
            _ = y**6
    with limits(max_terms=3):
        with pytest.raises(ResourceError):
            _ = (y + 1) ** 3
    assert (y**6).total_degree() == 6


# -- properties ---------------------------------------------------------------

P = polynomials(CTX)


@settings(max_examples=60, deadline=None)
@given(P, P, P)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a * b == b * a
    assert a - a == 0


@settings(max_examples=40, deadline=None)
@given(P, P)
def test_product_is_exact_against_sympy(a, b):
    assert sympy.expand(to_sympy(a * b, sympy.symbols("x y z")) - to_sympy(a, sympy.symbols("x y z")) * to_sympy(b, sympy.symbols("x y z"))) == 0


@settings(max_examples=60, deadline=None)
@given(P, P, st.sampled_from(["x", "y", "z"]))
def test_product_rule(p, q, var):
    assert (p * q).partial(var) == p * q.partial(var) + q * p.partial(var)


UNI = polynomials(Y, max_terms=5, max_exp=5, max_deg=5)
NONZERO = st.fractions(min_value=-5, max_value=5, max_denominator=4).filter(bool)
RAT = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@settings(max_examples=60, deadline=None)
@given(UNI, NONZERO, NONZERO, RAT, RAT)
def test_substitute_affine_pointwise(f, a, b, c, t):
    g = substitute_affine(f, a, b, c)
    assert g.evaluate({"y": t}) == a * f.evaluate({"y": b * t + c})
    if not f.is_zero():
        assert g.total_degree() == f.total_degree()


@settings(max_examples=50, deadline=None)
@given(
    st.lists(st.fractions(min_value=-6, max_value=6, max_denominator=3), min_size=1, max_size=5, unique=True),
    polynomials(Y, max_terms=3, max_exp=2, max_deg=2).filter(lambda g: g.total_degree() >= 1),
)
def test_squarefree_products(roots, g):
    f = Y.const(1)
    for r in roots:
        f = f * (y - r)
    assert is_squarefree(f)
    assert not is_squarefree(f * g**2)


@settings(max_examples=50, deadline=None)
@given(
    polynomials(VariableContext(["y", "t"]), max_terms=3, max_exp=2, max_deg=3),
    polynomials(VariableContext(["y", "t"]), max_terms=3, max_exp=2, max_deg=3),
    st.integers(-3, 3),
)
def test_resultant_vanishes_iff_common_factor(p, q, t0):
    if p.degree("y") < 1 or q.degree("y") < 1:
        return
    res = resultant(p, q, "y")
    ps = p.substitute({"t": t0}, ctx=Y)
    qs = q.substitute({"t": t0}, ctx=Y)
    # specialization commutes when the leading coefficients survive
    lead_p = p.coefficients_in("y")[p.degree("y")].evaluate({"y": 0, "t": t0})
    lead_q = q.coefficients_in("y")[q.degree("y")].evaluate({"y": 0, "t": t0})
    if lead_p and lead_q:
        common = univariate_gcd(ps, qs).total_degree() >= 1
        assert (res.evaluate({"y": 0, "t": t0}) == 0) == common


YT = VariableContext(["y", "t"])
YT_POLY = polynomials(YT, max_terms=2, max_exp=2, max_deg=2)


@settings(max_examples=40, deadline=None)
@given(YT_POLY.filter(lambda h: h.degree("y") >= 1), YT_POLY, YT_POLY)
def test_shared_factor_forces_zero_resultant(h, a, b):
    p, q = h * (a + YT.var("y")), h * (b + 1)
    if p.degree("y") >= 1 and q.degree("y") >= 1:
        assert resultant(p, q, "y").is_zero()
