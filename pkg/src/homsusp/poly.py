"""Exact sparse multivariate polynomials over the rationals.

A :class:`Polynomial` is an immutable map from exponent vectors to nonzero
:class:`fractions.Fraction` coefficients, tied to a :class:`VariableContext`
that fixes the variable names and their order.  Everything is exact.

Polynomials over different contexts combine when one context's names are a
subset of the other's; the result lives in the larger context.
"""

from __future__ import annotations

import contextlib
import contextvars
import math
from dataclasses import dataclass, replace
from fractions import Fraction
from numbers import Rational
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence, Union

from .errors import (
    ContextError,
    DegreeError,
    InvalidTransformationError,
    ResourceError,
    ShapeError,
)

Monomial = tuple
Scalar = Union[int, Fraction]


# ---------------------------------------------------------------------------
# safety limits

@dataclass(frozen=True)
class Limits:
    max_degree: int = 64
    max_terms: int = 100_000
    max_minor_size: int = 4
    max_pairs: int = 200_000


_LIMITS: contextvars.ContextVar[Limits] = contextvars.ContextVar("homsusp_limits", default=Limits())


def current_limits() -> Limits:
    return _LIMITS.get()


@contextlib.contextmanager
def limits(**overrides):
    """Temporarily override safety limits for the current context.

    >>> with limits(max_degree=10):
    ...     current_limits().max_degree
    10
    """
    token = _LIMITS.set(replace(_LIMITS.get(), **overrides))
    try:
        yield _LIMITS.get()
    finally:
        _LIMITS.reset(token)


def check_size(terms: Mapping[Monomial, Fraction]) -> None:
    lim = _LIMITS.get()
    if len(terms) > lim.max_terms:
        raise ResourceError(f"term count {len(terms)} exceeds limit {lim.max_terms}")
    for e in terms:
        if sum(e) > lim.max_degree:
            raise ResourceError(f"total degree {sum(e)} exceeds limit {lim.max_degree}")


# ---------------------------------------------------------------------------
# contexts

class VariableContext:
    """An ordered tuple of distinct variable names."""

    __slots__ = ("names", "_index")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ContextError(f"duplicate variable names in {names}")
        for n in names:
            if not isinstance(n, str) or not n:
                raise ContextError(f"invalid variable name {n!r}")
        self.names = names
        self._index = {n: i for i, n in enumerate(names)}

    def __len__(self):
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __contains__(self, name):
        return name in self._index

    def __eq__(self, other):
        return isinstance(other, VariableContext) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"VariableContext({list(self.names)!r})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ContextError(f"unknown variable {name!r} in context {list(self.names)}") from None

    def extend(self, *names: str) -> VariableContext:
        return VariableContext(self.names + tuple(names))

    def fresh_name(self, stem: str) -> str:
        """First name ``stem``, ``stem1``, ``stem2``... not already in the context."""
        if stem not in self:
            return stem
        k = 1
        while f"{stem}{k}" in self:
            k += 1
        return f"{stem}{k}"

    def zero(self) -> Polynomial:
        return Polynomial(self)

    def const(self, c: Scalar) -> Polynomial:
        return Polynomial.constant(self, c)

    def var(self, name: str) -> Polynomial:
        return Polynomial.variable(self, name)

    def gens(self) -> list[Polynomial]:
        return [self.var(n) for n in self.names]


def common_context(a: VariableContext, b: VariableContext) -> VariableContext:
    if a == b:
        return a
    if set(a.names) <= set(b.names):
        return b
    if set(b.names) <= set(a.names):
        return a
    raise ContextError(f"cannot combine contexts {list(a.names)} and {list(b.names)}")


def grevlex_key(e: Monomial) -> tuple:
    return (sum(e),) + tuple(-x for x in reversed(e))


def _to_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    raise TypeError(f"exact rational coefficient expected, got {type(c).__name__}")


# ---------------------------------------------------------------------------
# polynomials

class Polynomial:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("ctx", "_terms", "_hash")

    def __init__(self, ctx: VariableContext | Sequence[str], terms: Mapping[Monomial, Scalar] | None = None):
        if not isinstance(ctx, VariableContext):
            ctx = VariableContext(ctx)
        n = len(ctx)
        clean: dict[Monomial, Fraction] = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != n or any((not isinstance(k, int)) or k < 0 for k in e):
                raise ContextError(f"bad exponent vector {e} for {n} variables")
            c = _to_fraction(c)
            if c:
                c = clean.get(e, 0) + c
                if c:
                    clean[e] = c
                else:
                    clean.pop(e, None)
        check_size(clean)
        self.ctx = ctx
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, ctx: VariableContext, terms: dict) -> Polynomial:
        # trusted constructor: terms already normalized
        check_size(terms)
        p = object.__new__(cls)
        p.ctx = ctx
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, ctx, c: Scalar) -> Polynomial:
        if not isinstance(ctx, VariableContext):
            ctx = VariableContext(ctx)
        return cls(ctx, {(0,) * len(ctx): c})

    @classmethod
    def variable(cls, ctx, name: str) -> Polynomial:
        if not isinstance(ctx, VariableContext):
            ctx = VariableContext(ctx)
        i = ctx.index(name)
        e = [0] * len(ctx)
        e[i] = 1
        return cls._raw(ctx, {tuple(e): Fraction(1)})

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return MappingProxyType(self._terms)

    @property
    def nterms(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and not any(next(iter(self._terms))))

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise DegreeError(f"{self} is not constant")
        return self._terms.get((0,) * len(self.ctx), Fraction(0))

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * len(self.ctx), Fraction(0))

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def degree(self, var: str) -> int:
        """Degree in one variable; -1 for the zero polynomial."""
        i = self.ctx.index(var)
        return max((e[i] for e in self._terms), default=-1)

    def used_variables(self) -> tuple[str, ...]:
        used = [False] * len(self.ctx)
        for e in self._terms:
            for i, k in enumerate(e):
                if k:
                    used[i] = True
        return tuple(n for n, u in zip(self.ctx.names, used) if u)

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in canonical (graded reverse lexicographic, descending) order."""
        return sorted(self._terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    def coefficients_in(self, var: str) -> dict[int, Polynomial]:
        """View as a polynomial in ``var``: degree -> coefficient (free of ``var``)."""
        i = self.ctx.index(var)
        out: dict[int, dict] = {}
        for e, c in self._terms.items():
            k = e[i]
            out.setdefault(k, {})[e[:i] + (0,) + e[i + 1:]] = c
        return {k: Polynomial._raw(self.ctx, t) for k, t in out.items()}

    # -- context handling ---------------------------------------------------

    def embed(self, ctx: VariableContext) -> Polynomial:
        if ctx == self.ctx:
            return self
        pos = [ctx.index(n) for n in self.ctx.names]
        n = len(ctx)
        terms = {}
        for e, c in self._terms.items():
            v = [0] * n
            for i, k in zip(pos, e):
                v[i] = k
            terms[tuple(v)] = c
        return Polynomial._raw(ctx, terms)

    def restrict(self, ctx: VariableContext) -> Polynomial:
        """Move into a context that contains every variable actually used."""
        if ctx == self.ctx:
            return self
        missing = set(self.used_variables()) - set(ctx.names)
        if missing:
            raise ContextError(f"variables {sorted(missing)} not in target context")
        idx = [self.ctx.index(n) if n in self.ctx else None for n in ctx.names]
        terms = {tuple(e[i] if i is not None else 0 for i in idx): c for e, c in self._terms.items()}
        return Polynomial._raw(ctx, terms)

    def _coerce(self, other) -> tuple[Polynomial, Polynomial] | None:
        if isinstance(other, Polynomial):
            ctx = common_context(self.ctx, other.ctx)
            return self.embed(ctx), other.embed(ctx)
        if isinstance(other, (int, Fraction, Rational)) and not isinstance(other, bool):
            return self, Polynomial.constant(self.ctx, other)
        return None

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        terms = dict(a._terms)
        for e, c in b._terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return Polynomial._raw(a.ctx, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.ctx, {e: -c for e, c in self._terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a + (-b)

    def __rsub__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return b + (-a)

    def __mul__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        if not a._terms or not b._terms:
            return Polynomial._raw(a.ctx, {})
        if b.is_constant():
            return a.scale(b.constant_value())
        if a.is_constant():
            return b.scale(a.constant_value())
        terms: dict = {}
        for e1, c1 in a._terms.items():
            for e2, c2 in b._terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                s = terms.get(e, 0) + c1 * c2
                if s:
                    terms[e] = s
                else:
                    del terms[e]
        return Polynomial._raw(a.ctx, terms)

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> Polynomial:
        c = _to_fraction(c)
        if not c:
            return Polynomial._raw(self.ctx, {})
        return Polynomial._raw(self.ctx, {e: c * v for e, v in self._terms.items()})

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, Rational)) and not isinstance(other, bool):
            if other == 0:
                raise ZeroDivisionError("division of a polynomial by zero")
            return self.scale(1 / Fraction(other))
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Polynomial.constant(self.ctx, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def monic(self, key=grevlex_key) -> Polynomial:
        if not self._terms:
            return self
        lead = max(self._terms, key=key)
        return self.scale(1 / self._terms[lead])

    def mul_monomial(self, m: Monomial, c: Scalar = 1) -> Polynomial:
        c = _to_fraction(c)
        return Polynomial._raw(
            self.ctx, {tuple(x + y for x, y in zip(e, m)): c * v for e, v in self._terms.items()} if c else {}
        )

    # -- calculus and evaluation -------------------------------------------

    def partial(self, var: str) -> Polynomial:
        i = self.ctx.index(var)
        terms = {}
        for e, c in self._terms.items():
            k = e[i]
            if k:
                terms[e[:i] + (k - 1,) + e[i + 1:]] = c * k
        return Polynomial._raw(self.ctx, terms)

    def evaluate(self, point: Mapping[str, Scalar]) -> Fraction:
        values = []
        for n in self.ctx.names:
            if n not in point:
                raise ContextError(f"no value assigned to variable {n!r}")
            values.append(_to_fraction(point[n]))
        total = Fraction(0)
        for e, c in self._terms.items():
            t = c
            for v, k in zip(values, e):
                if k:
                    t *= v ** k
            total += t
        return total

    def substitute(self, mapping: Mapping[str, Polynomial | Scalar], ctx: VariableContext | None = None) -> Polynomial:
        """Replace variables by polynomials (or scalars).

        Unmapped variables are kept. ``ctx`` is the context of the result;
        by default the common context of the images and the unmapped variables.
        """
        images = {}
        for name, img in mapping.items():
            self.ctx.index(name)
            images[name] = img
        if ctx is None:
            keep = [n for n in self.ctx.names if n not in images]
            ctx = VariableContext(keep) if keep else None
            for img in images.values():
                if isinstance(img, Polynomial):
                    ctx = img.ctx if ctx is None else _union_context(ctx, img.ctx)
            if ctx is None:
                ctx = VariableContext(self.ctx.names)
        full = []
        for n in self.ctx.names:
            img = images.get(n)
            if img is None:
                img = Polynomial.variable(ctx, n)
            elif isinstance(img, Polynomial):
                img = img.embed(ctx)
            else:
                img = Polynomial.constant(ctx, img)
            full.append(img)
        cache: list[dict[int, Polynomial]] = [dict() for _ in full]

        def power(i, k):
            got = cache[i].get(k)
            if got is None:
                got = full[i] ** k
                cache[i][k] = got
            return got

        result = Polynomial._raw(ctx, {})
        for e, c in self._terms.items():
            t = Polynomial.constant(ctx, c)
            for i, k in enumerate(e):
                if k:
                    t = t * power(i, k)
            result = result + t
        return result

    # -- comparison and display --------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            if self.ctx == other.ctx:
                return self._terms == other._terms
            try:
                a, b = self._coerce(other)
            except ContextError:
                return False
            return a._terms == b._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx, frozenset(self._terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({list(self.ctx.names)!r}, {format_polynomial(self)!r})"


def _union_context(a: VariableContext, b: VariableContext) -> VariableContext:
    return VariableContext(a.names + tuple(n for n in b.names if n not in a))


def format_scalar(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_polynomial(p: Polynomial) -> str:
    """Canonical printing, parseable back by :func:`homsusp.parsing.parse_polynomial`."""
    if p.is_zero():
        return "0"
    out = []
    for idx, (e, c) in enumerate(p.sorted_terms()):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        factors = []
        for name, k in zip(p.ctx.names, e):
            if k == 1:
                factors.append(name)
            elif k > 1:
                factors.append(f"{name}^{k}")
        if mag != 1 or not factors:
            factors.insert(0, format_scalar(mag))
        body = "*".join(factors)
        if idx == 0:
            out.append(f"-{body}" if sign == "-" else body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


# ---------------------------------------------------------------------------
# functional surface

def partial_derivative(p: Polynomial, var: str) -> Polynomial:
    return p.partial(var)


def evaluate(p: Polynomial, point: Mapping[str, Scalar]) -> Fraction:
    return p.evaluate(point)


def _univariate_var(*polys: Polynomial) -> str | None:
    used = set()
    for p in polys:
        used.update(p.used_variables())
    if len(used) > 1:
        raise ShapeError(f"univariate polynomials expected, found variables {sorted(used)}")
    if used:
        return used.pop()
    for p in polys:
        if len(p.ctx) == 1:
            return p.ctx.names[0]
    return None


def dense_coefficients(p: Polynomial, var: str | None = None) -> list[Fraction]:
    """Coefficient list, lowest degree first, of a univariate polynomial."""
    if var is None:
        var = _univariate_var(p)
    if p.is_zero():
        return []
    if var is None:
        return [p.constant_value()]
    i = p.ctx.index(var)
    if set(p.used_variables()) - {var}:
        raise ShapeError(f"{p} is not univariate in {var}")
    out = [Fraction(0)] * (p.degree(var) + 1)
    for e, c in p.terms.items():
        out[e[i]] = c
    return out


def from_dense(ctx: VariableContext, var: str, coeffs: Sequence[Scalar]) -> Polynomial:
    i = ctx.index(var)
    n = len(ctx)
    terms = {}
    for k, c in enumerate(coeffs):
        if c:
            e = [0] * n
            e[i] = k
            terms[tuple(e)] = _to_fraction(c)
    return Polynomial._raw(ctx, terms)


def substitute_affine(f: Polynomial, a: Scalar, b: Scalar, c: Scalar) -> Polynomial:
    """Return ``a * f(b*y + c)`` for univariate ``f``."""
    a, b, c = _to_fraction(a), _to_fraction(b), _to_fraction(c)
    if a == 0 or b == 0:
        raise InvalidTransformationError("a and b must be nonzero")
    var = _univariate_var(f)
    if var is None:
        return f.scale(a)
    y = Polynomial.variable(f.ctx, var)
    return f.substitute({var: y.scale(b) + c}, ctx=f.ctx).scale(a)


def _dense_trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def _dense_rem(a: list, b: list) -> list:
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and a:
        q = a[-1] / lb
        shift = len(a) - 1 - db
        for k in range(db + 1):
            a[shift + k] -= q * b[k]
        a.pop()
        _dense_trim(a)
    return a


def dense_gcd(a: list, b: list) -> list:
    a, b = _dense_trim(list(a)), _dense_trim(list(b))
    while b:
        a, b = b, _dense_rem(a, b)
    if not a:
        return []
    lead = a[-1]
    return [c / lead for c in a]


def univariate_gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Monic gcd of two univariate polynomials in the same variable."""
    var = _univariate_var(p, q)
    ctx = common_context(p.ctx, q.ctx)
    if var is None:
        if p.is_zero() and q.is_zero():
            return Polynomial._raw(ctx, {})
        return Polynomial.constant(ctx, 1)
    g = dense_gcd(dense_coefficients(p, var), dense_coefficients(q, var))
    return from_dense(ctx, var, g)


def is_squarefree(f: Polynomial) -> bool:
    """True iff ``f`` has no repeated roots over the algebraic closure."""
    var = _univariate_var(f)
    if var is None or f.degree(var) < 1:
        raise DegreeError("is_squarefree needs a nonconstant univariate polynomial")
    return univariate_gcd(f, f.partial(var)).total_degree() == 0


# ---------------------------------------------------------------------------
# resultants

def exact_quotient(a: Polynomial, b: Polynomial) -> Polynomial:
    """``a / b`` when ``b`` divides ``a`` exactly; :class:`ValueError` otherwise."""
    if b.is_zero():
        raise ZeroDivisionError("exact division by zero polynomial")
    a, b = a._coerce(b)
    lead_b = max(b._terms, key=grevlex_key)
    lc_b = b._terms[lead_b]
    rest = {e: c for e, c in b._terms.items() if e != lead_b}
    work = dict(a._terms)
    quot = {}
    while work:
        m = max(work, key=grevlex_key)
        c = work.pop(m)
        q = tuple(x - y for x, y in zip(m, lead_b))
        if any(k < 0 for k in q):
            raise ValueError("division is not exact")
        qc = c / lc_b
        quot[q] = qc
        for e, v in rest.items():
            t = tuple(x + y for x, y in zip(e, q))
            s = work.get(t, 0) - qc * v
            if s:
                work[t] = s
            else:
                work.pop(t, None)
    return Polynomial._raw(a.ctx, quot)


def sylvester_matrix(p: Polynomial, q: Polynomial, var: str) -> list[list[Polynomial]]:
    p, q = p._coerce(q)
    m, n = p.degree(var), q.degree(var)
    if m < 1 or n < 1:
        raise ShapeError(f"both polynomials need positive degree in {var}")
    pc, qc = p.coefficients_in(var), q.coefficients_in(var)
    zero = Polynomial._raw(p.ctx, {})
    size = m + n
    rows = []
    for r in range(n):
        row = [zero] * size
        for k in range(m + 1):
            row[r + m - k] = pc.get(k, zero)
        rows.append(row)
    for r in range(m):
        row = [zero] * size
        for k in range(n + 1):
            row[r + n - k] = qc.get(k, zero)
        rows.append(row)
    return rows


def bareiss_determinant(matrix: list[list[Polynomial]]) -> Polynomial:
    """Fraction-free determinant of a square matrix of polynomials."""
    a = [list(r) for r in matrix]
    n = len(a)
    if n == 0:
        raise ShapeError("empty matrix")
    ctx = a[0][0].ctx
    sign = 1
    prev = Polynomial.constant(ctx, 1)
    for k in range(n - 1):
        if a[k][k].is_zero():
            for r in range(k + 1, n):
                if not a[r][k].is_zero():
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return Polynomial._raw(ctx, {})
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = exact_quotient(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev)
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return det if sign > 0 else -det


def resultant(p: Polynomial, q: Polynomial, var: str) -> Polynomial:
    """Resultant of ``p`` and ``q`` with respect to ``var`` (Sylvester determinant)."""
    return bareiss_determinant(sylvester_matrix(p, q, var))
