from fractions import Fraction

import pytest
import sympy
from hypothesis import strategies as st

from homsusp.poly import Polynomial, VariableContext

ACCEPTANCE_LINES = []


def to_sympy(p: Polynomial, symbols=None):
    symbols = symbols or sympy.symbols(list(p.ctx.names))
    total = sympy.Integer(0)
    for e, c in p.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for s, k in zip(symbols, e):
            term *= s**k
        total += term
    return sympy.expand(total)


def polynomials(ctx: VariableContext, max_terms=4, max_exp=2, max_deg=3, coeffs=None):
    """Hypothesis strategy for small sparse polynomials."""
    n = len(ctx)
    if coeffs is None:
        coeffs = st.fractions(min_value=-4, max_value=4, max_denominator=3)
    exps = st.tuples(*[st.integers(0, max_exp)] * n).filter(lambda e: sum(e) <= max_deg)
    return st.dictionaries(exps, coeffs, max_size=max_terms).map(lambda d: Polynomial(ctx, d))


def random_poly(rng, ctx, nterms=3, max_deg=3, max_coeff=3):
    terms = {}
    n = len(ctx)
    for _ in range(nterms):
        e = [0] * n
        for _ in range(rng.randint(0, max_deg)):
            e[rng.randrange(n)] += 1
        c = Fraction(rng.randint(-max_coeff, max_coeff), rng.randint(1, 2))
        terms[tuple(e)] = terms.get(tuple(e), 0) + c
    return Polynomial(ctx, terms)


@pytest.fixture
def xy():
    ctx = VariableContext(["x", "y"])
    return ctx, ctx.var("x"), ctx.var("y")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
