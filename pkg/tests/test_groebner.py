import itertools
import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from homsusp.errors import CancelledError, ResourceError
from homsusp.groebner import (
    MonomialOrder,
    contains_unit,
    groebner_basis,
    ideal_membership,
    invert_polynomial_map,
    normal_form,
    s_polynomial,
)
from homsusp.poly import VariableContext, limits

from .conftest import polynomials, random_poly, to_sympy

XY = VariableContext(["x", "y"])
x, y = XY.gens()
UVY = VariableContext(["u", "v", "y"])
u, v, w = UVY.gens()


def test_order_keys():
    lex = MonomialOrder.lex(XY)
    grev = MonomialOrder.grevlex(XY)
    assert lex.key((1, 0)) > lex.key((0, 5))
    assert grev.key((0, 5)) > grev.key((1, 0))
    # grevlex tie-break: x*y^2 vs x^2*z over (x, y, z); the smaller last exponent wins
    g3 = MonomialOrder.grevlex(VariableContext(["x", "y", "z"]))
    assert g3.key((1, 2, 0)) > g3.key((2, 0, 1))
    blk = MonomialOrder.block(VariableContext(["a", "b", "c"]), 1)
    assert blk.key((1, 0, 0)) > blk.key((0, 4, 4))


def test_normal_form_examples():
    lex = MonomialOrder.lex(XY)
    assert normal_form(x**2 * y, [x * y - 1], lex) == x
    f = x**3 + x * y - 7
    assert normal_form(f, [f], lex).is_zero()
    g = u**2 * v**3 + u * v * w + w**5 - 2
    r = normal_form(g, [u * v - w**2], MonomialOrder.lex(UVY))
    assert all(not (e[0] >= 1 and e[1] >= 1) for e in r.terms)
    # g - r lies in the ideal
    assert ideal_membership(g - r, [u * v - w**2])


def test_groebner_examples():
    assert list(groebner_basis([x, y])) == [x, y]
    G = groebner_basis([x * y - 1, y**2])
    assert G.is_unit() and list(G) == [XY.const(1)]
    lex = MonomialOrder.lex(UVY)
    assert set(groebner_basis([u * v - w, w], lex)) == {u * v, w}


def test_unit_certificate_by_hand():
    # 1 = -(xy - 1)(xy + 1) + x^2 * y^2
    assert -(x * y - 1) * (x * y + 1) + x**2 * y**2 == 1


def test_contains_unit_examples():
    XO = VariableContext(["x"])
    assert contains_unit([XO.var("x"), XO.var("x") + 1])
    assert contains_unit([x + y**2, x * y + y**3 + 1])
    assert not contains_unit([y - 1, y - 1])


def test_ideal_membership_examples():
    assert ideal_membership(x**2 * y - x, [x * y - 1])
    assert not ideal_membership(XY.const(1), [x, y])
    assert ideal_membership(w, [u * v - w, u * v])


def test_invert_examples():
    inv = invert_polynomial_map([x + y**2, y])
    T = VariableContext(["t1", "t2"])
    t1, t2 = T.gens()
    assert inv == [t1 - t2**2, t2]
    assert invert_polynomial_map([x, y]) == [t1, t2]
    assert invert_polynomial_map([x**2, y]) is None
    assert invert_polynomial_map([x + y, x - y]) == [(t1 + t2) / 2, (t1 - t2) / 2]


def test_invert_skips_clashing_tag_names():
    ctx = VariableContext(["t1", "t2"])
    a, b = ctx.gens()
    inv = invert_polynomial_map([a + b**3, b])
    assert inv is not None
    names = inv[0].ctx.names
    assert not set(names) & {"t1", "t2"}
    back = dict(zip(names, [a + b**3, b]))
    assert [g.substitute(back, ctx=ctx) for g in inv] == [a, b]


def test_stop_signal_cancels():
    with pytest.raises(CancelledError):
        groebner_basis([x**3 - y, y**3 - x, x * y - 1], stop=lambda: True)


def test_pair_limit_is_a_resource_error():
    with limits(max_pairs=1):
        with pytest.raises(ResourceError):
            groebner_basis([x**3 - y**2, x**2 * y - y**3 + 1, x * y**2 - x])


# -- properties ---------------------------------------------------------------


def check_basis(gens, G):
    order = G.order
    basis = list(G)
    for g in gens:
        assert normal_form(g, basis, order).is_zero()
    for p, q in itertools.combinations(basis, 2):
        assert normal_form(s_polynomial(p, q, order), basis, order).is_zero()
    for i, g in enumerate(basis):
        assert g.terms[order.leading(g.terms)] == 1
        assert normal_form(g, basis[:i] + basis[i + 1 :], order) == g


XYZ = VariableContext(["x", "y", "z"])
IDEALS = st.lists(
    polynomials(XYZ, max_terms=3, max_exp=2, max_deg=3, coeffs=st.integers(-3, 3)).filter(lambda p: not p.is_zero()),
    min_size=1,
    max_size=3,
)


@settings(max_examples=40, deadline=None)
@given(IDEALS, st.sampled_from(["grevlex", "lex"]), st.randoms(use_true_random=False))
def test_basis_properties(gens, kind, rnd):
    order = MonomialOrder(XYZ, kind)
    G = groebner_basis(gens, order)
    check_basis(gens, G)
    shuffled = list(gens) + [gens[0]]
    rnd.shuffle(shuffled)
    assert list(groebner_basis(shuffled, order)) == list(G)


@settings(max_examples=30, deadline=None)
@given(IDEALS)
def test_matches_sympy(gens):
    syms = sympy.symbols("x y z")
    ours = [to_sympy(g, syms) for g in groebner_basis(gens)]
    theirs = sympy.groebner([to_sympy(g, syms) for g in gens], *syms, order="grevlex", domain="QQ")
    assert sorted(map(str, ours)) == sorted(str(sympy.expand(e)) for e in theirs.exprs)


@settings(max_examples=30, deadline=None)
@given(IDEALS)
def test_verdict_is_order_independent(gens):
    assert contains_unit(gens) == contains_unit(gens, MonomialOrder.lex(XYZ))


def triangular_automorphism(rng, ctx):
    """Composition of a random linear change and a triangular map."""
    n = len(ctx)
    vs = ctx.gens()
    tri = []
    for i in range(n):
        rest = VariableContext(ctx.names[i + 1 :]) if i + 1 < n else None
        extra = random_poly(rng, rest, nterms=2, max_deg=2).embed(ctx) if rest else ctx.const(rng.randint(-2, 2))
        tri.append(rng.choice([1, -1, 2]) * vs[i] + extra)
    perm = list(range(n))
    rng.shuffle(perm)
    return [tri[j].substitute({ctx.names[i]: vs[perm[i]] for i in range(n)}) for j in range(n)]


@pytest.mark.parametrize("seed", range(15))
def test_inverse_composes_to_identity(seed):
    rng = random.Random(seed)
    ctx = VariableContext(["a", "b", "c"][: rng.randint(2, 3)])
    ps = triangular_automorphism(rng, ctx)
    inv = invert_polynomial_map(ps)
    assert inv is not None
    back = dict(zip(inv[0].ctx.names, ps))
    assert [g.substitute(back, ctx=ctx) for g in inv] == ctx.gens()
