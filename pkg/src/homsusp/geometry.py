"""Jacobians, tangent spaces and smoothness of suspensions and suspension towers."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import (
    DegreeError,
    DomainError,
    InvalidSuspensionError,
    MethodError,
    ProtocolError,
    ResourceError,
    ShapeError,
)
from .groebner import contains_unit, groebner_basis
from .poly import Polynomial, VariableContext, common_context, current_limits, resultant


@dataclass(frozen=True)
class AffineSchemePresentation:
    """``Spec K[ctx]/(generators)``.  The whole affine space is ``[0]``."""

    ctx: VariableContext
    generators: tuple

    def __post_init__(self):
        if not self.generators:
            raise ValueError("a presentation needs at least one generator (use 0 for affine space)")
        gens = tuple(g.embed(self.ctx) for g in self.generators)
        object.__setattr__(self, "generators", gens)

    @classmethod
    def affine_space(cls, ctx: VariableContext) -> AffineSchemePresentation:
        return cls(ctx, (ctx.zero(),))

    def ideal_generators(self) -> list[Polynomial]:
        return [g for g in self.generators if not g.is_zero()]


@dataclass(frozen=True)
class JacobianMatrix:
    ctx: VariableContext
    rows: tuple

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.ctx)

    def at(self, point: Mapping[str, Fraction]) -> list[list[Fraction]]:
        return [[entry.evaluate(point) for entry in row] for row in self.rows]


def rank(matrix: Sequence[Sequence[Fraction]]) -> int:
    """Rank over the rationals by exact Gaussian elimination."""
    rows = [[Fraction(x) for x in r] for r in matrix]
    if not rows:
        return 0
    r = 0
    ncols = len(rows[0])
    for col in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        for i in range(r + 1, len(rows)):
            if rows[i][col]:
                factor = rows[i][col] / rows[r][col]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def jacobian(pres: AffineSchemePresentation) -> JacobianMatrix:
    rows = tuple(tuple(g.partial(v) for v in pres.ctx.names) for g in pres.generators)
    return JacobianMatrix(pres.ctx, rows)


def _as_point(ctx: VariableContext, point) -> dict[str, Fraction]:
    if isinstance(point, Mapping):
        return {n: Fraction(point[n]) for n in ctx.names}
    point = list(point)
    if len(point) != len(ctx):
        raise ShapeError(f"point has {len(point)} coordinates, expected {len(ctx)}")
    return {n: Fraction(v) for n, v in zip(ctx.names, point)}


def tangent_dim_at(pres: AffineSchemePresentation, point) -> int:
    """Dimension of the Zariski tangent space at a rational point."""
    pt = _as_point(pres.ctx, point)
    for g in pres.generators:
        if g.evaluate(pt) != 0:
            raise DomainError(f"point {pt} is not on the scheme: {g} does not vanish")
    return len(pres.ctx) - rank(jacobian(pres).at(pt))


def is_nonconstant_on(pres: AffineSchemePresentation, f: Polynomial) -> bool:
    """Whether ``f`` is a nonconstant function on the variety of ``pres``.

    Relies on ``pres`` generating the full vanishing ideal.
    """
    f = f.embed(common_context(pres.ctx, f.ctx))
    gens = pres.ideal_generators()
    nf = groebner_basis(gens).reduce(f) if gens else f
    return not nf.is_constant()


def _pair_names(ctx: VariableContext) -> tuple[str, str]:
    k = 1
    while f"u{k}" in ctx or f"v{k}" in ctx:
        k += 1
    return f"u{k}", f"v{k}"


def suspension_ideal(
    pres: AffineSchemePresentation,
    f: Polynomial,
    names: tuple[str, str] | None = None,
) -> AffineSchemePresentation:
    """Presentation of ``{uv = f}`` over the variety of ``pres``.

    The new variables are appended after the old ones.
    """
    if not is_nonconstant_on(pres, f):
        raise InvalidSuspensionError(f"{f} is constant on the base variety")
    u, v = names or _pair_names(pres.ctx)
    ctx = pres.ctx.extend(u, v)
    gens = [g.embed(ctx) for g in pres.ideal_generators()]
    gens.append(ctx.var(u) * ctx.var(v) - f.embed(ctx))
    return AffineSchemePresentation(ctx, tuple(gens))


def _record(record, gens, verdict):
    if record is not None:
        record.append((tuple(gens), verdict))


def hypersurface_scheme_smooth(f: Polynomial, *, record: list | None = None, stop=None) -> bool:
    """Smoothness of ``Spec K[y]/(f)``: no common zero of ``f`` and its partials."""
    if f.is_constant():
        raise DegreeError("hypersurface smoothness needs a nonconstant polynomial")
    gens = [f] + [f.partial(v) for v in f.ctx.names]
    verdict = contains_unit(gens, stop=stop)
    _record(record, gens, verdict)
    return verdict


def disjoint_hypersurfaces(
    p: Polynomial,
    q: Polynomial,
    method: str = "groebner",
    *,
    var: str | None = None,
    record: list | None = None,
) -> bool:
    """Whether ``{p = 0}`` and ``{q = 0}`` have no common point over the algebraic closure.

    The resultant method eliminates ``var`` (default: first variable).  It is
    only applied when one of the two has a constant leading coefficient in
    ``var``; then the zeros of the resultant are exactly the projections of
    common zeros.  Otherwise :class:`MethodError` is raised.
    """
    if p.is_constant() or q.is_constant():
        raise DegreeError("disjointness needs nonconstant polynomials")
    ctx = common_context(p.ctx, q.ctx)
    p, q = p.embed(ctx), q.embed(ctx)
    if method == "groebner":
        verdict = contains_unit([p, q])
        _record(record, [p, q], verdict)
        return verdict
    if method != "resultant":
        raise ValueError(f"unknown method {method!r}")
    var = var or ctx.names[0]
    dp, dq = p.degree(var), q.degree(var)
    if dp < 1 or dq < 1:
        raise MethodError(f"resultant in {var} needs positive degree in {var}")
    if not (p.coefficients_in(var)[dp].is_constant() or q.coefficients_in(var)[dq].is_constant()):
        raise MethodError(f"neither leading coefficient in {var} is constant")
    res = resultant(p, q, var)
    return res.is_constant() and not res.is_zero()


# ---------------------------------------------------------------------------
# towers

@dataclass(frozen=True)
class SuspensionTower:
    """Iterated suspension over affine space.

    ``levels[i-1]`` is the suspension function ``f_i`` on ``Y_i``; its
    context is the base variables followed by the pairs ``u_j, v_j`` for
    ``j < i``.
    """

    base_vars: tuple
    levels: tuple = ()
    pair_names: tuple = ()

    def __post_init__(self):
        base = tuple(self.base_vars)
        if not base:
            raise ValueError("the base affine space needs dimension at least 1")
        pairs = tuple(tuple(p) for p in self.pair_names)
        if not pairs:
            pairs = tuple((f"u{i}", f"v{i}") for i in range(1, len(self.levels) + 1))
        if len(pairs) != len(self.levels) or any(len(p) != 2 for p in pairs):
            raise ValueError("one (u, v) name pair per level is required")
        object.__setattr__(self, "base_vars", base)
        object.__setattr__(self, "pair_names", pairs)
        VariableContext(base + tuple(n for p in pairs for n in p))
        levels = []
        for i, f in enumerate(self.levels, start=1):
            levels.append(f.restrict(self.context(i)))
        object.__setattr__(self, "levels", tuple(levels))
        for i in range(1, self.k):
            if not is_nonconstant_on(self.presentation(i), self.levels[i - 1]):
                raise InvalidSuspensionError(f"f_{i} = {self.levels[i - 1]} is constant on Y_{i}")

    @classmethod
    def over(cls, base_dim: int, levels=(), pair_names=()) -> SuspensionTower:
        return cls(tuple(f"y{i}" for i in range(1, base_dim + 1)), tuple(levels), tuple(pair_names))

    @property
    def base_dim(self) -> int:
        return len(self.base_vars)

    @property
    def k(self) -> int:
        """Index of the top variety ``Y_k``."""
        return len(self.levels) + 1

    @property
    def dim(self) -> int:
        return self.base_dim + len(self.levels)

    def context(self, i: int) -> VariableContext:
        """Ambient coordinates of ``Y_i``."""
        if not 1 <= i <= self.k:
            raise IndexError(f"level {i} outside 1..{self.k}")
        return VariableContext(self.base_vars + tuple(n for p in self.pair_names[: i - 1] for n in p))

    def level_generators(self, i: int) -> list[Polynomial]:
        ctx = self.context(i)
        out = []
        for j in range(1, i):
            u, v = self.pair_names[j - 1]
            out.append(ctx.var(u) * ctx.var(v) - self.levels[j - 1].embed(ctx))
        return out

    def presentation(self, i: int) -> AffineSchemePresentation:
        gens = self.level_generators(i)
        ctx = self.context(i)
        return AffineSchemePresentation(ctx, tuple(gens) if gens else (ctx.zero(),))

    def renamed(self, pair_names) -> SuspensionTower:
        """Same tower with different suspension variable names."""
        mapping = {}
        for old, new in zip(self.pair_names, pair_names):
            mapping.update(zip(old, new))
        levels = []
        for i, f in enumerate(self.levels, start=1):
            target = VariableContext(mapping.get(n, n) for n in f.ctx.names)
            levels.append(type(f)._raw(target, dict(f.terms)))
        return SuspensionTower(self.base_vars, tuple(levels), tuple(pair_names))


def determinant(matrix: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Cofactor expansion along the first row."""
    n = len(matrix)
    if n == 1:
        return matrix[0][0]
    total = None
    for j in range(n):
        entry = matrix[0][j]
        if entry.is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in matrix[1:]]
        term = entry * determinant(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total if total is not None else matrix[0][0] * 0


def maximal_minors(rows: Sequence[Sequence[Polynomial]]) -> list[Polynomial]:
    size = len(rows)
    ncols = len(rows[0])
    return [determinant([[r[c] for c in cols] for r in rows]) for cols in itertools.combinations(range(ncols), size)]


def _level_check(tower: SuspensionTower, i: int, record, stop) -> bool:
    ctx = tower.context(i)
    gens = tower.level_generators(i) + [tower.levels[i - 1].embed(ctx)]
    size = len(gens)
    cap = current_limits().max_minor_size
    if size > cap:
        raise ResourceError(f"minor size {size} exceeds cap {cap}")
    J = jacobian(AffineSchemePresentation(ctx, tuple(gens)))
    minors = [m for m in maximal_minors(J.rows) if not m.is_zero()]
    ideal = gens + minors
    verdict = contains_unit(ideal, stop=stop)
    _record(record, ideal, verdict)
    return verdict


def tower_level_scheme_smooth(
    tower: SuspensionTower,
    i: int,
    *,
    prerequisites_verified: bool = False,
    record: list | None = None,
    stop=None,
) -> bool:
    """Smoothness of ``Z_i = Spec K[Y_i]/(f_i)``.

    Valid only once ``Y_i`` is known to be smooth, i.e. every earlier level
    passed.  Unless ``prerequisites_verified`` the earlier levels are checked
    here first and a failure raises :class:`ProtocolError`.
    """
    if not 1 <= i < tower.k:
        raise IndexError(f"level {i} outside 1..{tower.k - 1}")
    if not prerequisites_verified:
        for j in range(1, i):
            if not _level_check(tower, j, record, stop):
                raise ProtocolError(f"level {j} is not smooth; level {i} is undefined")
    return _level_check(tower, i, record, stop)


@dataclass(frozen=True)
class TowerSmoothness:
    smooth: bool
    failing_level: int | None = None
    checked_levels: tuple = field(default_factory=tuple)

    def __bool__(self):
        return self.smooth


def tower_smooth(tower: SuspensionTower, *, record: list | None = None, stop=None) -> TowerSmoothness:
    """Check every level in order; report the first failing one."""
    checked = []
    for i in range(1, tower.k):
        assert all(j < i for j in checked)
        ok = tower_level_scheme_smooth(tower, i, prerequisites_verified=True, record=record, stop=stop)
        checked.append(i)
        if not ok:
            return TowerSmoothness(False, i, tuple(checked))
    return TowerSmoothness(True, None, tuple(checked))


def tower_homogeneous(tower: SuspensionTower, *, record: list | None = None, stop=None) -> bool:
    """Homogeneity of the top variety; the base is affine space, which is smooth and flexible."""
    return tower_smooth(tower, record=record, stop=stop).smooth
