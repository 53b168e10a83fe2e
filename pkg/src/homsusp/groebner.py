"""Monomial orders, multivariate division and Buchberger's algorithm.

Polynomials are handled internally as plain ``{exponent: Fraction}`` dicts;
the public functions accept and return :class:`~homsusp.poly.Polynomial`.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import CancelledError, ContextError, InconsistencyError, ResourceError
from .poly import Polynomial, VariableContext, check_size, common_context, current_limits

StopSignal = Callable[[], bool]


class MonomialOrder:
    """A monomial order on the exponent vectors of one context.

    ``kind`` is ``"lex"``, ``"grevlex"`` or ``"block"``.  The block order
    compares the first ``split`` variables by grevlex first and breaks ties
    with grevlex on the remaining ones, so it eliminates the first block.
    """

    KINDS = ("lex", "grevlex", "block")

    def __init__(self, ctx: VariableContext, kind: str = "grevlex", split: int | None = None):
        if kind not in self.KINDS:
            raise ValueError(f"unknown monomial order {kind!r}")
        if kind == "block":
            if split is None or not 0 < split < len(ctx):
                raise ValueError("block order needs 0 < split < number of variables")
        else:
            split = None
        self.ctx = ctx
        self.kind = kind
        self.split = split
        self._neg_cache: dict = {}

    @classmethod
    def lex(cls, ctx):
        return cls(ctx, "lex")

    @classmethod
    def grevlex(cls, ctx):
        return cls(ctx, "grevlex")

    @classmethod
    def block(cls, ctx, split):
        return cls(ctx, "block", split)

    def key(self, e: tuple) -> tuple:
        """Sort key: larger key means larger monomial."""
        if self.kind == "lex":
            return e
        if self.kind == "grevlex":
            return (sum(e),) + tuple(-x for x in reversed(e))
        a, b = e[: self.split], e[self.split:]
        return (sum(a),) + tuple(-x for x in reversed(a)) + (sum(b),) + tuple(-x for x in reversed(b))

    def neg_key(self, e: tuple) -> tuple:
        got = self._neg_cache.get(e)
        if got is None:
            got = tuple(-x for x in self.key(e))
            self._neg_cache[e] = got
        return got

    def leading(self, terms) -> tuple:
        return min(terms, key=self.neg_key)

    def __eq__(self, other):
        return (
            isinstance(other, MonomialOrder)
            and (self.ctx, self.kind, self.split) == (other.ctx, other.kind, other.split)
        )

    def __hash__(self):
        return hash((self.ctx, self.kind, self.split))

    def __repr__(self):
        extra = f", split={self.split}" if self.split is not None else ""
        return f"MonomialOrder({list(self.ctx.names)!r}, {self.kind!r}{extra})"


def _divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


class _Elem:
    """Basis element: monic terms dict with its leading monomial."""

    __slots__ = ("lm", "lc", "terms", "tail")

    def __init__(self, terms: dict, order: MonomialOrder):
        self.lm = order.leading(terms)
        self.lc = terms[self.lm]
        self.terms = terms
        self.tail = [(e, c) for e, c in terms.items() if e != self.lm]


def _monic(terms: dict, order: MonomialOrder) -> dict:
    lc = terms[order.leading(terms)]
    if lc == 1:
        return terms
    inv = 1 / lc
    return {e: c * inv for e, c in terms.items()}


def _reduce(terms: dict, basis: Sequence[_Elem], order: MonomialOrder, *, full: bool = True) -> dict:
    """Remainder of ``terms`` on division by ``basis`` (first divisor wins)."""
    work = dict(terms)
    nk = order.neg_key
    heap = [(nk(m), m) for m in work]
    heapq.heapify(heap)
    rem = {}
    while heap:
        _, m = heapq.heappop(heap)
        c = work.pop(m, None)
        if c is None:
            continue
        for g in basis:
            if _divides(g.lm, m):
                q = tuple(x - y for x, y in zip(m, g.lm))
                if g.lc != 1:
                    c = c / g.lc
                for e, v in g.tail:
                    t = tuple(x + y for x, y in zip(e, q))
                    old = work.get(t)
                    if old is None:
                        work[t] = -c * v
                        heapq.heappush(heap, (nk(t), t))
                    else:
                        s = old - c * v
                        if s:
                            work[t] = s
                        else:
                            del work[t]
                break
        else:
            rem[m] = c
            if not full:
                rem.update(work)
                return rem
    return rem


def _spoly(f: _Elem, g: _Elem) -> dict:
    lcm = _lcm(f.lm, g.lm)
    qf = tuple(x - y for x, y in zip(lcm, f.lm))
    qg = tuple(x - y for x, y in zip(lcm, g.lm))
    out: dict = {}
    for e, c in f.tail:
        out[tuple(x + y for x, y in zip(e, qf))] = c / f.lc
    for e, c in g.tail:
        t = tuple(x + y for x, y in zip(e, qg))
        s = out.get(t, 0) - c / g.lc
        if s:
            out[t] = s
        else:
            out.pop(t, None)
    return out


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Gröbner basis: monic generators sorted by descending leading monomial."""

    order: MonomialOrder
    generators: tuple

    @property
    def ctx(self) -> VariableContext:
        return self.order.ctx

    def is_unit(self) -> bool:
        return len(self.generators) == 1 and self.generators[0].is_constant()

    def is_zero_ideal(self) -> bool:
        return not self.generators

    def leading_monomials(self) -> list[tuple]:
        return [self.order.leading(g.terms) for g in self.generators]

    def reduce(self, f: Polynomial) -> Polynomial:
        return normal_form(f, list(self.generators), self.order)

    def contains(self, f: Polynomial) -> bool:
        return self.reduce(f).is_zero()

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)


def _prepare(polys: Iterable[Polynomial], ctx: VariableContext | None) -> tuple[VariableContext, list[Polynomial]]:
    polys = list(polys)
    for p in polys:
        ctx = p.ctx if ctx is None else common_context(ctx, p.ctx)
    if ctx is None:
        raise ContextError("cannot infer a context from an empty list")
    return ctx, [p.embed(ctx) for p in polys]


def normal_form(f: Polynomial, basis: Sequence[Polynomial], order: MonomialOrder) -> Polynomial:
    """Remainder of ``f`` on multivariate division by ``basis`` under ``order``.

    No term of the result is divisible by a leading monomial of ``basis``.
    """
    ctx, polys = _prepare([f, *basis], order.ctx)
    if ctx != order.ctx:
        raise ContextError("order context does not cover all polynomials")
    elems = [_Elem(dict(p.terms), order) for p in polys[1:] if not p.is_zero()]
    return Polynomial._raw(ctx, _reduce(dict(polys[0].terms), elems, order))


def _update(elems, active, pairs, heap, h, order):
    """Gebauer-Möller installation of basis element ``h``; returns the new active list."""
    hlm = elems[h].lm
    lcms = {i: _lcm(elems[i].lm, hlm) for i in active}

    def coprime(i):
        return all(not (x and y) for x, y in zip(elems[i].lm, hlm))

    pending = list(active)
    kept = []
    while pending:
        i = pending.pop(0)
        li = lcms[i]
        if coprime(i) or not any(_divides(lcms[j], li) for j in pending + kept):
            kept.append(i)
    for pr in list(pairs):
        i, j = pr
        lij = _lcm(elems[i].lm, elems[j].lm)
        if _divides(hlm, lij) and _lcm(elems[i].lm, hlm) != lij and _lcm(elems[j].lm, hlm) != lij:
            pairs.discard(pr)
    for i in kept:
        if not coprime(i):
            pairs.add((i, h))
            heapq.heappush(heap, (order.key(lcms[i]), i, h))
    survivors = [i for i in active if not _divides(hlm, elems[i].lm)]
    survivors.append(h)
    return survivors


def _buchberger(polys: list[dict], order: MonomialOrder, stop: StopSignal | None) -> list[dict]:
    limit = current_limits().max_pairs
    elems: list[_Elem] = []
    active: list[int] = []
    pairs: set = set()
    heap: list = []
    unit = None
    # smaller inputs first keeps early reductions cheap
    for terms in sorted(polys, key=lambda t: order.key(order.leading(t))):
        r = _reduce(terms, [elems[i] for i in active], order)
        if not r:
            continue
        if len(r) == 1 and not any(next(iter(r))):
            return [{next(iter(r)): Fraction(1)}]
        elems.append(_Elem(_monic(r, order), order))
        active = _update(elems, active, pairs, heap, len(elems) - 1, order)
    done = 0
    while heap:
        _, i, j = heapq.heappop(heap)
        if (i, j) not in pairs:
            continue
        pairs.discard((i, j))
        if stop is not None and stop():
            raise CancelledError("Gröbner basis computation cancelled")
        done += 1
        if done > limit:
            raise ResourceError(f"more than {limit} S-pair reductions")
        s = _spoly(elems[i], elems[j])
        if not s:
            continue
        r = _reduce(s, [elems[k] for k in active], order)
        if not r:
            continue
        check_size(r)
        if len(r) == 1 and not any(next(iter(r))):
            unit = next(iter(r))
            return [{unit: Fraction(1)}]
        elems.append(_Elem(_monic(r, order), order))
        active = _update(elems, active, pairs, heap, len(elems) - 1, order)
    # active elements have pairwise non-dividing leading monomials: inter-reduce tails
    basis = [elems[i] for i in active]
    out = []
    for k, g in enumerate(basis):
        others = basis[:k] + basis[k + 1:]
        tail = _reduce(dict(g.tail), others, order)
        tail[g.lm] = Fraction(1)
        out.append(_monic(tail, order))
    out.sort(key=lambda t: order.key(order.leading(t)), reverse=True)
    return out


def groebner_basis(
    gens: Sequence[Polynomial],
    order: MonomialOrder | None = None,
    *,
    stop: StopSignal | None = None,
) -> GroebnerBasis:
    """Reduced Gröbner basis of the ideal generated by ``gens``.

    ``order`` defaults to grevlex on the common context.  ``stop`` is polled
    between pair reductions; returning True raises :class:`CancelledError`.
    """
    if not gens:
        raise ValueError("at least one generator is required")
    ctx, polys = _prepare(gens, order.ctx if order is not None else None)
    if order is None:
        order = MonomialOrder.grevlex(ctx)
    elif ctx != order.ctx:
        raise ContextError("order context does not cover all generators")
    raw = [dict(p.terms) for p in polys if not p.is_zero()]
    if not raw:
        return GroebnerBasis(order, ())
    basis = _buchberger(raw, order, stop)
    return GroebnerBasis(order, tuple(Polynomial._raw(ctx, t) for t in basis))


def contains_unit(gens: Sequence[Polynomial], order: MonomialOrder | None = None, *, stop=None) -> bool:
    """True iff 1 lies in the ideal, i.e. the generators have no common zero."""
    return groebner_basis(gens, order, stop=stop).is_unit()


def ideal_membership(f: Polynomial, gens: Sequence[Polynomial], order: MonomialOrder | None = None) -> bool:
    ctx, polys = _prepare([f, *gens], order.ctx if order is not None else None)
    G = groebner_basis(polys[1:], order or MonomialOrder.grevlex(ctx))
    if G.is_zero_ideal():
        return polys[0].is_zero()
    return G.contains(polys[0])


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    ctx, (f, g) = _prepare([f, g], order.ctx)
    return Polynomial._raw(ctx, _spoly(_Elem(dict(f.terms), order), _Elem(dict(g.terms), order)))


def invert_polynomial_map(ps: Sequence[Polynomial], tag: str = "t") -> list[Polynomial] | None:
    """Inverse of the polynomial map ``y -> (p_1(y), ..., p_n(y))``, or None.

    Returns polynomials ``g_i`` in fresh variables ``t1..tn`` with
    ``g_i(p_1, ..., p_n) = y_i``.  Decided by the shape of the reduced
    lex basis of ``(t_i - p_i)`` with every ``y`` above every ``t``.
    """
    if not ps:
        raise ValueError("empty map")
    ctx, polys = _prepare(ps, None)
    n = len(ps)
    if len(ctx) != n:
        raise ContextError(f"{n} components given for {len(ctx)} variables")
    tags = []
    probe = ctx
    for k in range(1, n + 1):
        name = probe.fresh_name(f"{tag}{k}")
        tags.append(name)
        probe = probe.extend(name)
    big = ctx.extend(*tags)
    order = MonomialOrder.lex(big)
    gens = [big.var(t) - p.embed(big) for t, p in zip(tags, polys)]
    G = groebner_basis(gens, order)
    if len(G) != n:
        return None
    tctx = VariableContext(tags)
    found: dict[int, Polynomial] = {}
    for g in G:
        lm = order.leading(g.terms)
        if sum(lm) != 1 or not any(lm[:n]):
            return None
        i = lm.index(1)
        rest = g - big.var(ctx.names[i])
        if any(any(e[:n]) for e in rest.terms):
            return None
        found[i] = (-rest).restrict(tctx)
    if len(found) != n:
        return None
    inverse = [found[i] for i in range(n)]
    back = {t: p for t, p in zip(tags, polys)}
    for i, g in enumerate(inverse):
        if g.substitute(back, ctx=ctx) != ctx.var(ctx.names[i]):
            raise InconsistencyError(f"inverse component {i} fails the composition check")
    return inverse
