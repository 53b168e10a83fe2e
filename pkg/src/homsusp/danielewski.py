"""Danielewski surfaces ``x z^n = f(y)``: classification, Picard rank, isomorphism."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DegreeError, ShapeError, UnsupportedCaseError
from .geometry import hypersurface_scheme_smooth
from .poly import (
    Polynomial,
    VariableContext,
    _univariate_var,
    dense_coefficients,
    from_dense,
    is_squarefree,
    substitute_affine,
)


class Label(str, enum.Enum):
    AFFINE_PLANE = "AffinePlane"
    SL2_MOD_T = "SL2_mod_T"
    HOMOGENEOUS_NOT_SPACE = "HomogeneousNotSpace"
    NOT_HOMOGENEOUS = "NotHomogeneous"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class DanielewskiSurface:
    n: int
    f: Polynomial

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError("n must be a positive integer")
        var = _univariate_var(self.f)
        if var is None or self.f.degree(var) < 1:
            raise DegreeError("f must be a nonconstant univariate polynomial")

    @property
    def var(self) -> str:
        return _univariate_var(self.f)

    @property
    def degree(self) -> int:
        return self.f.degree(self.var)

    def coefficients(self) -> list[Fraction]:
        return dense_coefficients(self.f, self.var)

    def equation(self) -> Polynomial:
        """``x z^n - f(y)`` in the context ``(x, y, z)``."""
        ctx = VariableContext(["x", "y", "z"])
        x, z = ctx.var("x"), ctx.var("z")
        return x * z ** self.n - from_dense(ctx, "y", self.coefficients())


@dataclass(frozen=True)
class DanielewskiVerdict:
    homogeneous_variety: bool
    homogeneous_space: bool
    label: Label
    reason: str

    def __post_init__(self):
        assert self.homogeneous_variety or not self.homogeneous_space


def classify(S: DanielewskiSurface) -> DanielewskiVerdict:
    d = S.degree
    if d == 1:
        return DanielewskiVerdict(True, True, Label.AFFINE_PLANE, "deg f = 1: the surface is the affine plane")
    if S.n > 1:
        return DanielewskiVerdict(
            False, False, Label.NOT_HOMOGENEOUS, f"n = {S.n} > 1 and deg f = {d} >= 2: the curve z = 0 is invariant"
        )
    if not is_squarefree(S.f):
        return DanielewskiVerdict(False, False, Label.NOT_HOMOGENEOUS, "n = 1 and f has a multiple root")
    if d == 2:
        return DanielewskiVerdict(True, True, Label.SL2_MOD_T, "n = 1, f squarefree of degree 2: SL2/T")
    return DanielewskiVerdict(
        True, False, Label.HOMOGENEOUS_NOT_SPACE, f"n = 1, f squarefree of degree {d} >= 3"
    )


def is_smooth(S: DanielewskiSurface, *, record: list | None = None) -> bool:
    return hypersurface_scheme_smooth(S.equation(), record=record)


def picard_rank(S: DanielewskiSurface) -> int:
    """``deg f - 1`` for ``n = 1`` and squarefree ``f``; other cases are refused."""
    if S.n != 1:
        raise UnsupportedCaseError(f"no Picard rank formula for n = {S.n} > 1")
    if not is_squarefree(S.f):
        raise UnsupportedCaseError("no Picard rank formula when f has a multiple root")
    return S.degree - 1


# ---------------------------------------------------------------------------
# isomorphism

@dataclass(frozen=True)
class IsomorphismWitness:
    """``f1(y) = a * f2(b*y + c)`` with ``b`` any root of ``b**g == beta``.

    ``a = lc_ratio / b**degree`` and ``c = shift2 - b*shift1``; ``a`` and
    ``c`` are filled in as rationals when ``direct_b`` is a rational root.
    """

    g: int
    beta: Fraction
    direct_b: Fraction | None
    a: Fraction | None
    c: Fraction | None
    lc_ratio: Fraction
    shift1: Fraction
    shift2: Fraction
    degree: int

    @property
    def b_power_data(self) -> tuple[int, Fraction]:
        return self.g, self.beta

    def transformation(self, b: Fraction) -> tuple[Fraction, Fraction, Fraction]:
        """``(a, b, c)`` for a chosen rational root ``b`` of ``b**g == beta``."""
        b = Fraction(b)
        if b ** self.g != self.beta:
            raise ValueError(f"{b} is not a root of b^{self.g} = {self.beta}")
        return self.lc_ratio / b ** self.degree, b, self.shift2 - b * self.shift1


def _depress(coeffs: list[Fraction]) -> tuple[Fraction, Fraction, list[Fraction]]:
    """Write ``f(y) = lc * h(y - s)`` with ``h`` monic and no ``y^(d-1)`` term."""
    d = len(coeffs) - 1
    lc = coeffs[-1]
    monic = [c / lc for c in coeffs]
    s = -monic[d - 1] / d
    # h(y) = monic(y + s) by Taylor shift
    h = list(monic)
    for i in range(d):
        for j in range(d - 1, i - 1, -1):
            h[j] += s * h[j + 1]
    return lc, s, h


def _iroot(n: int, k: int) -> int | None:
    if n < 0:
        return None
    if n < 2:
        return n
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    return x if x ** k == n else None


def rational_root(q: Fraction, k: int) -> Fraction | None:
    """A rational ``k``-th root of ``q`` (the positive one when there are two)."""
    q = Fraction(q)
    if q == 0:
        return Fraction(0)
    sign = 1
    if q < 0:
        if k % 2 == 0:
            return None
        sign, q = -1, -q
    num, den = _iroot(q.numerator, k), _iroot(q.denominator, k)
    if num is None or den is None:
        return None
    return sign * Fraction(num, den)


def bezout(ms: Sequence[int]) -> list[int]:
    """Integers ``u`` with ``sum(u_i * m_i) == gcd(ms)``."""
    g, coeffs = ms[0], [1]
    for m in ms[1:]:
        # extended Euclid on (g, m)
        old_r, r = g, m
        old_s, s = 1, 0
        old_t, t = 0, 1
        while r:
            q = old_r // r
            old_r, r = r, old_r - q * r
            old_s, s = s, old_s - q * s
            old_t, t = t, old_t - q * t
        coeffs = [c * old_s for c in coeffs] + [old_t]
        g = old_r
    return coeffs


def scale_power(ratios: Sequence[Fraction], ms: Sequence[int], u: Sequence[int] | None = None) -> Fraction | None:
    """``beta`` with ``beta**m_i == ratio_i`` for all i, or None.

    ``u`` are Bézout coefficients for ``ms`` (computed when omitted).
    """
    if u is None:
        u = bezout(ms)
    beta = Fraction(1)
    for r, k in zip(ratios, u):
        beta *= Fraction(r) ** k
    if all(beta ** m == r for r, m in zip(ratios, ms)):
        return beta
    return None


def isomorphic(S1: DanielewskiSurface, S2: DanielewskiSurface) -> IsomorphismWitness | None:
    """Witness of ``f1(y) = a f2(by + c)`` when the surfaces are isomorphic, else None."""
    if S1.n != S2.n or S1.degree != S2.degree:
        return None
    d = S1.degree
    lc1, s1, h1 = _depress(S1.coefficients())
    lc2, s2, h2 = _depress(S2.coefficients())
    support = [i for i in range(d) if h1[i] != 0]
    if support != [i for i in range(d) if h2[i] != 0]:
        return None
    if not support:
        g, beta = 1, Fraction(1)
    else:
        ks = [d - i for i in support]
        g = math.gcd(*ks)
        ms = [k // g for k in ks]
        # h1_i = b^(i-d) h2_i, so h2_i / h1_i = b^(k_i) = (b^g)^(m_i)
        beta = scale_power([h2[i] / h1[i] for i in support], ms)
        if beta is None:
            return None
    lc_ratio = lc1 / lc2
    b = rational_root(beta, g)
    a = c = None
    if b is not None:
        a = lc_ratio / b ** d
        c = s2 - b * s1
    return IsomorphismWitness(g, beta, b, a, c, lc_ratio, s1, s2, d)


def verify_witness(w: IsomorphismWitness, S1: DanielewskiSurface, S2: DanielewskiSurface) -> bool:
    """Exact check of a witness: substitution when ``b`` is rational, coefficient relations otherwise."""
    if w.direct_b is not None:
        image = substitute_affine(S2.f, w.a, w.direct_b, w.c)
        return dense_coefficients(image, S2.var) == S1.coefficients()
    d = w.degree
    _, _, h1 = _depress(S1.coefficients())
    _, _, h2 = _depress(S2.coefficients())
    for i in range(d):
        k = d - i
        if (h1[i] == 0) != (h2[i] == 0):
            return False
        if h1[i] and (k % w.g or w.beta ** (k // w.g) * h1[i] != h2[i]):
            return False
    return True
