"""Brute-force common-zero counts over small prime fields.

A unit-ideal certificate ``1 = sum h_i f_i`` over the rationals survives
reduction modulo any prime dividing no denominator of the ``f_i`` or the
``h_i``, so an ideal found to be the unit ideal can have no common zero
modulo such a prime.  This module computes the certificate independently of
the main engine and checks that consequence by exhaustive search.

Input denominators alone do not decide which primes are good: ``(x - 1, x - 6)``
contains ``5``, yet both generators reduce to ``x - 1`` modulo 5.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import InconsistencyError, PrimeRejectedError, ResourceError
from .groebner import MonomialOrder, contains_unit
from .poly import Polynomial, common_context, current_limits

DEFAULT_PRIMES = (5, 7, 11, 13)
MAX_VARIABLES = 4
MAX_EVALUATIONS = 10**7


@dataclass(frozen=True)
class ModularSystem:
    p: int
    nvars: int
    generators: tuple  # each a tuple of (exponent, residue) pairs
    degree_drops: tuple = ()  # indices of generators whose leading terms vanished mod p


def reduce_mod_p(gens: Sequence[Polynomial], p: int, *, max_vars: int = MAX_VARIABLES) -> ModularSystem:
    """Coefficient-wise reduction; :class:`PrimeRejectedError` if ``p`` divides a denominator."""
    ctx = None
    for g in gens:
        ctx = g.ctx if ctx is None else common_context(ctx, g.ctx)
    n = len(ctx)
    if n > max_vars:
        raise ResourceError(f"{n} variables exceeds the oracle cap of {max_vars}")
    reduced = []
    drops = []
    for idx, g in enumerate(gens):
        g = g.embed(ctx)
        terms = []
        for e, c in g.terms.items():
            if c.denominator % p == 0:
                raise PrimeRejectedError(f"prime {p} divides the denominator of {c}")
            r = c.numerator * pow(c.denominator, -1, p) % p
            if r:
                terms.append((e, r))
        if g.total_degree() > max((sum(e) for e, _ in terms), default=-1):
            drops.append(idx)
        reduced.append(tuple(terms))
    return ModularSystem(p, n, tuple(reduced), tuple(drops))


def count_common_zeros(sys: ModularSystem, *, budget: int = MAX_EVALUATIONS) -> int:
    """Number of points of ``F_p^n`` where every generator vanishes."""
    p, n = sys.p, sys.nvars
    if p ** n > budget:
        raise ResourceError(f"{p}^{n} evaluations exceed the budget {budget}")
    if n == 0:
        return int(all(not g for g in sys.generators))
    maxdeg = max((max(e) for g in sys.generators for e, _ in g if e), default=0)
    # coordinate arrays over the whole grid F_p^n, and their powers mod p
    grid = np.indices((p,) * n, dtype=np.int64).reshape(n, -1)
    powers = [[np.ones(grid.shape[1], dtype=np.int64)] for _ in range(n)]
    for i in range(n):
        for _ in range(maxdeg):
            powers[i].append(powers[i][-1] * grid[i] % p)
    alive = np.ones(grid.shape[1], dtype=bool)
    for g in sys.generators:
        total = np.zeros(grid.shape[1], dtype=np.int64)
        for e, c in g:
            t = np.full(grid.shape[1], c, dtype=np.int64)
            for i, k in enumerate(e):
                if k:
                    t = t * powers[i][k] % p
            total = (total + t) % p
        alive &= total == 0
    return int(alive.sum())


def unit_certificate(gens: Sequence[Polynomial]) -> list[Polynomial] | None:
    """Cofactors ``h_i`` with ``sum h_i * gens[i] == 1``, or None if 1 is not in the ideal.

    Plain Buchberger with top reduction, carrying every element's
    representation in terms of the inputs.  The identity is checked exactly
    before returning.
    """
    ctx = None
    for g in gens:
        ctx = g.ctx if ctx is None else common_context(ctx, g.ctx)
    gens = [g.embed(ctx) for g in gens]
    order = MonomialOrder.grevlex(ctx)
    m = len(gens)
    zero = ctx.zero()
    basis: list[tuple[Polynomial, list[Polynomial], tuple, object]] = []

    def reduce(p, cof):
        while not p.is_zero():
            e = order.leading(p.terms)
            for q, qcof, lm, lc in basis:
                if all(a >= b for a, b in zip(e, lm)):
                    shift = tuple(a - b for a, b in zip(e, lm))
                    factor = p.terms[e] / lc
                    p = p - q.mul_monomial(shift, factor)
                    cof = [c - qc.mul_monomial(shift, factor) for c, qc in zip(cof, qcof)]
                    break
            else:
                return p, cof
        return p, cof

    def finish(p, cof):
        c = p.constant_value()
        cert = [h / c for h in cof]
        total = zero
        for h, g in zip(cert, gens):
            total = total + h * g
        if total != 1:
            raise InconsistencyError("unit certificate fails the exact check")
        return cert

    pairs = []
    budget = current_limits().max_pairs
    pending = [(g, [ctx.const(1) if j == i else zero for j in range(m)]) for i, g in enumerate(gens)]
    while pending or pairs:
        if pending:
            p, cof = pending.pop(0)
        else:
            i, j = pairs.pop(0)
            (f, fcof, lf, cf), (g, gcof, lg, cg) = basis[i], basis[j]
            lcm = tuple(max(a, b) for a, b in zip(lf, lg))
            sf = tuple(a - b for a, b in zip(lcm, lf))
            sg = tuple(a - b for a, b in zip(lcm, lg))
            p = f.mul_monomial(sf, 1 / cf) - g.mul_monomial(sg, 1 / cg)
            cof = [a.mul_monomial(sf, 1 / cf) - b.mul_monomial(sg, 1 / cg) for a, b in zip(fcof, gcof)]
        p, cof = reduce(p, cof)
        if p.is_zero():
            continue
        if p.is_constant():
            return finish(p, cof)
        lm = order.leading(p.terms)
        for k, (_, _, lk, _) in enumerate(basis):
            if any(a and b for a, b in zip(lm, lk)):
                pairs.append((k, len(basis)))
        basis.append((p, cof, lm, p.terms[lm]))
        budget -= 1
        if budget < 0:
            raise ResourceError("certificate search exceeded the pair budget")
    return None


def _denominator_primes(polys: Sequence[Polynomial], primes: Sequence[int]) -> set[int]:
    return {p for p in primes for f in polys for c in f.terms.values() if c.denominator % p == 0}


@dataclass
class CrossCheck:
    unit: bool
    counts: dict = field(default_factory=dict)
    rejected_primes: list = field(default_factory=list)
    certified: bool = False  # a unit verdict backed by an exact cofactor identity

    @property
    def consistent(self) -> bool:
        if self.unit and not self.certified:
            return False
        return not (self.unit and any(self.counts.values()))

    @property
    def corroborated(self) -> bool:
        """For a non-unit ideal: at least one prime produced a common zero."""
        return not self.unit and any(self.counts.values())


def cross_check_emptiness(
    gens: Sequence[Polynomial],
    primes: Sequence[int] = DEFAULT_PRIMES,
    *,
    unit: bool | None = None,
    strict: bool = False,
) -> CrossCheck:
    """Compare a unit-ideal verdict with exhaustive common-zero counts.

    ``unit`` is the verdict to test (computed when omitted).  A unit verdict
    is backed by a cofactor certificate, and primes dividing one of its
    denominators are rejected like primes dividing an input denominator.
    With ``strict`` an inconsistency raises :class:`InconsistencyError`.
    """
    if unit is None:
        unit = contains_unit(gens)
    result = CrossCheck(unit)
    cert_bad: set[int] = set()
    if unit:
        cert = unit_certificate(gens)
        if cert is None:
            result.counts = {p: None for p in primes}
            if strict:
                raise InconsistencyError("unit verdict but 1 is not in the ideal")
            return result
        result.certified = True
        cert_bad = _denominator_primes(cert, primes)
    for p in primes:
        if p in cert_bad:
            result.rejected_primes.append(p)
            continue
        try:
            sys = reduce_mod_p(gens, p)
        except PrimeRejectedError:
            result.rejected_primes.append(p)
            continue
        result.counts[p] = count_common_zeros(sys)
    if strict and not result.consistent:
        raise InconsistencyError(f"unit ideal has zeros mod {[p for p, c in result.counts.items() if c]}")
    return result
