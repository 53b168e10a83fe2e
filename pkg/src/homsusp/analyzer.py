"""Decision pipeline: from a variety description to a verdict report."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence, Union

from . import danielewski as dan
from .errors import (
    DistinctnessError,
    HomSuspError,
    InconsistencyError,
    ResourceError,
    UnsupportedCaseError,
    WitnessInvalidError,
)
from .fforacle import DEFAULT_PRIMES, MAX_VARIABLES, cross_check_emptiness
from .geometry import SuspensionTower, disjoint_hypersurfaces, hypersurface_scheme_smooth, tower_smooth
from .groebner import MonomialOrder, invert_polynomial_map
from .poly import Polynomial, VariableContext

RULES = (
    "susp-smooth-criterion",
    "iter-susp-homog",
    "danielewski-thm-i",
    "danielewski-thm-ii",
    "pic-rank-danielewski",
    "pic-rank-suspension",
    "pic-dim-obstruction",
    "variable-witness",
)

VERDICT_FIELDS = ("smooth", "homogeneous_variety", "picard_rank", "homogeneous_space")


@dataclass(frozen=True)
class Reason:
    field: str
    rule: str
    detail: str

    def __post_init__(self):
        if self.rule not in RULES:
            raise ValueError(f"unknown rule {self.rule!r}")
        if self.field not in VERDICT_FIELDS:
            raise ValueError(f"unknown report field {self.field!r}")


@dataclass
class Report:
    """Verdicts for one variety; ``None`` means unknown."""

    kind: str
    dim: int
    smooth: bool | None = None
    homogeneous_variety: bool | None = None
    picard_rank: int | None = None
    homogeneous_space: bool | None = None
    reasons: list = field(default_factory=list)
    assumptions: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    details: dict = field(default_factory=dict)
    resource_limited: bool = False

    def add(self, field_name: str, rule: str, detail: str) -> None:
        self.reasons.append(Reason(field_name, rule, detail))

    def validate(self) -> None:
        if self.homogeneous_space and not self.homogeneous_variety:
            raise InconsistencyError("homogeneous space reported without homogeneous variety")
        for name in VERDICT_FIELDS:
            if getattr(self, name) is not None and not any(r.field == name for r in self.reasons):
                raise InconsistencyError(f"field {name} has a value but no reason")


@dataclass(frozen=True)
class FactoredSuspension:
    """``uv = p_0 ... p_d`` over affine space with coordinates ``vars``."""

    vars: tuple
    factors: tuple
    variable_witness: tuple | None = None
    irreducibility_attested: bool = False

    def __post_init__(self):
        ctx = VariableContext(self.vars)
        object.__setattr__(self, "vars", ctx.names)
        if len(self.factors) < 2:
            raise ValueError("at least two factors p_0, p_1 are required")
        object.__setattr__(self, "factors", tuple(p.restrict(ctx) for p in self.factors))
        if any(p.is_constant() for p in self.factors):
            raise ValueError("all factors must be nonconstant")
        if self.variable_witness is not None:
            object.__setattr__(self, "variable_witness", tuple(p.restrict(ctx) for p in self.variable_witness))

    @property
    def ctx(self) -> VariableContext:
        return VariableContext(self.vars)

    @property
    def base_dim(self) -> int:
        return len(self.vars)

    @property
    def d(self) -> int:
        return len(self.factors) - 1

    @property
    def dim(self) -> int:
        return self.base_dim + 1

    def product(self) -> Polynomial:
        out = self.factors[0]
        for p in self.factors[1:]:
            out = out * p
        return out


VarietySpec = Union[SuspensionTower, dan.DanielewskiSurface, FactoredSuspension]


@dataclass(frozen=True)
class PicardObstructionResult:
    rank: int
    dim: int

    @property
    def obstructed(self) -> bool:
        return self.rank > self.dim


def picard_obstruction(rank: int, dim: int) -> PicardObstructionResult:
    """An affine homogeneous space has Picard rank at most its dimension."""
    if rank < 0 or dim < 1:
        raise ValueError("rank must be >= 0 and dim >= 1")
    return PicardObstructionResult(rank, dim)


def _proportional(p: Polynomial, q: Polynomial) -> bool:
    order = MonomialOrder.grevlex(p.ctx)
    lp, lq = order.leading(p.terms), order.leading(q.terms)
    if lp != lq:
        return False
    return p.scale(q.terms[lq]) == q.scale(p.terms[lp])


@dataclass
class FactoredChecks:
    factor_smooth: list
    disjoint: dict
    product_smooth: bool
    inverse: list | None
    d: int
    dim: int
    picard_rank: int | None
    missing: list

    @property
    def smooth(self) -> bool:
        return self.product_smooth

    @property
    def homogeneous_variety(self) -> bool:
        return self.product_smooth

    @property
    def components_ok(self) -> bool:
        return all(self.factor_smooth) and all(self.disjoint.values())


def verify_factored_suspension(fs: FactoredSuspension, *, record: list | None = None) -> FactoredChecks:
    """Run the factor-level checks and the factor-free product check.

    Raises :class:`DistinctnessError` for proportional factors and
    :class:`WitnessInvalidError` when the witness does not complete ``p_0``
    to a coordinate system.
    """
    ps = fs.factors
    for i, j in itertools.combinations(range(len(ps)), 2):
        if _proportional(ps[i], ps[j]):
            raise DistinctnessError(f"factors p_{i} and p_{j} are proportional")
    factor_smooth = [hypersurface_scheme_smooth(p, record=record) for p in ps]
    disjoint = {
        (i, j): disjoint_hypersurfaces(ps[i], ps[j], record=record)
        for i, j in itertools.combinations(range(len(ps)), 2)
    }
    product_smooth = hypersurface_scheme_smooth(fs.product(), record=record)
    components_ok = all(factor_smooth) and all(disjoint.values())
    if product_smooth != components_ok:
        raise InconsistencyError("product smoothness disagrees with the factor checks")
    inverse = None
    missing = []
    if fs.variable_witness is None:
        missing.append("no variable witness for p_0")
    else:
        if len(fs.variable_witness) != fs.base_dim - 1:
            raise WitnessInvalidError(f"witness needs {fs.base_dim - 1} polynomials, got {len(fs.variable_witness)}")
        inverse = invert_polynomial_map([ps[0], *fs.variable_witness])
        if inverse is None:
            raise WitnessInvalidError("p_0 and the witness do not form a coordinate system")
    if not fs.irreducibility_attested:
        missing.append("irreducibility of the factors not attested")
    if not components_ok:
        missing.append("the hypersurface is not smooth")
    rank = fs.d if not missing else None
    return FactoredChecks(factor_smooth, disjoint, product_smooth, inverse, fs.d, fs.dim, rank, missing)


# ---------------------------------------------------------------------------

def _tower_report(tower: SuspensionTower, record) -> Report:
    rep = Report("tower", tower.dim)
    result = tower_smooth(tower, record=record)
    rep.details["levels"] = len(tower.levels)
    rep.details["checked_levels"] = list(result.checked_levels)
    rep.smooth = result.smooth
    rep.homogeneous_variety = result.smooth
    if result.smooth:
        rep.add("smooth", "susp-smooth-criterion", f"all {len(tower.levels)} level schemes Z_i are smooth")
        rep.add("homogeneous_variety", "iter-susp-homog", "smooth iterated suspension over affine space")
    else:
        i = result.failing_level
        rep.details["first_failing_level"] = i
        rep.add("smooth", "susp-smooth-criterion", f"scheme Z_{i} is singular; first failing level: {i}")
        rep.add("homogeneous_variety", "iter-susp-homog", f"not smooth (first failing level: {i})")
        rep.homogeneous_space = False
        rep.add("homogeneous_space", "iter-susp-homog", "not a homogeneous variety, hence not a homogeneous space")
    return rep


def _danielewski_report(S: dan.DanielewskiSurface, record) -> Report:
    rep = Report("danielewski", 2)
    rep.details["n"] = S.n
    rep.details["degree"] = S.degree
    smooth = dan.is_smooth(S, record=record)
    rep.smooth = smooth
    rep.add("smooth", "susp-smooth-criterion", "Jacobian unit-ideal test on x*z^n - f(y)")
    verdict = dan.classify(S)
    rep.details["label"] = verdict.label.value
    rep.homogeneous_variety = verdict.homogeneous_variety
    rep.add("homogeneous_variety", "danielewski-thm-i", verdict.reason)
    rep.homogeneous_space = verdict.homogeneous_space
    rep.add("homogeneous_space", "danielewski-thm-ii", f"{verdict.label.value}: {verdict.reason}")
    try:
        rank = dan.picard_rank(S)
    except UnsupportedCaseError as exc:
        rep.notes.append(f"picard rank unknown: {exc}")
    else:
        rep.picard_rank = rank
        rep.add("picard_rank", "pic-rank-danielewski", f"deg f - 1 = {S.degree} - 1 = {rank}")
        obs = picard_obstruction(rank, 2)
        if obs.obstructed:
            rep.add("homogeneous_space", "pic-dim-obstruction", f"rank {rank} > dim 2")
    return rep


def _factored_report(fs: FactoredSuspension, record) -> Report:
    rep = Report("factored_suspension", fs.dim)
    checks = verify_factored_suspension(fs, record=record)
    rep.details["d"] = checks.d
    rep.details["factor_smooth"] = checks.factor_smooth
    rep.details["pairwise_disjoint"] = all(checks.disjoint.values())
    rep.smooth = checks.smooth
    rep.homogeneous_variety = checks.homogeneous_variety
    if checks.smooth:
        rep.add("smooth", "susp-smooth-criterion",
                "factors are smooth and pairwise disjoint; product passes the Jacobian unit-ideal test")
        rep.add("homogeneous_variety", "iter-susp-homog", "smooth suspension over affine space")
    else:
        rep.add("smooth", "susp-smooth-criterion", "Spec K[y]/(p_0...p_d) is singular")
        rep.add("homogeneous_variety", "iter-susp-homog", "not smooth")
        rep.homogeneous_space = False
        rep.add("homogeneous_space", "iter-susp-homog", "not a homogeneous variety, hence not a homogeneous space")
    if checks.inverse is not None:
        rep.details["witness_inverse"] = [str(g) for g in checks.inverse]
    if fs.irreducibility_attested:
        rep.assumptions.append("factors p_0..p_d are absolutely irreducible (attested)")
    if checks.picard_rank is None:
        for m in checks.missing:
            rep.notes.append(f"picard rank unknown: {m}")
        return rep
    rep.picard_rank = checks.picard_rank
    rep.add("picard_rank", "pic-rank-suspension", f"d = {checks.d} factors beyond p_0")
    rep.add("picard_rank", "variable-witness", "p_0 completes to a coordinate system (map inverted)")
    obs = picard_obstruction(checks.picard_rank, fs.dim)
    if obs.obstructed:
        rep.homogeneous_space = False
        rep.add("homogeneous_space", "pic-dim-obstruction", f"rank {obs.rank} > dim {obs.dim}")
    else:
        rep.notes.append(f"homogeneous space unknown: rank {obs.rank} <= dim {obs.dim}")
    return rep


def _oracle(record, rep: Report, primes) -> None:
    checked = skipped = 0
    for gens, unit in record:
        nvars = len(gens[0].ctx)
        if nvars > MAX_VARIABLES:
            skipped += 1
            continue
        cross_check_emptiness(list(gens), primes, unit=unit, strict=True)
        checked += 1
    rep.details["oracle"] = {"checked": checked, "skipped": skipped, "primes": list(primes)}


def analyze(spec: VarietySpec, *, oracle_check: bool = False, primes: Sequence[int] = DEFAULT_PRIMES) -> Report:
    """Decide smoothness, homogeneity and Picard data for ``spec``.

    Resource limits turn the affected verdicts into unknowns.  With
    ``oracle_check`` every unit-ideal decision made along the way is
    cross-checked modulo small primes; a contradiction raises
    :class:`InconsistencyError`.
    """
    record: list = []
    try:
        if isinstance(spec, SuspensionTower):
            rep = _tower_report(spec, record)
        elif isinstance(spec, dan.DanielewskiSurface):
            rep = _danielewski_report(spec, record)
        elif isinstance(spec, FactoredSuspension):
            rep = _factored_report(spec, record)
        else:
            raise TypeError(f"unsupported spec type {type(spec).__name__}")
    except ResourceError as exc:
        kind = {SuspensionTower: "tower", dan.DanielewskiSurface: "danielewski"}.get(type(spec), "factored_suspension")
        rep = Report(kind, spec.dim if not isinstance(spec, dan.DanielewskiSurface) else 2)
        rep.resource_limited = True
        rep.notes.append(f"resource limit reached: {exc}")
    if oracle_check:
        _oracle(record, rep, primes)
    rep.validate()
    return rep


__all__ = [
    "RULES",
    "Reason",
    "Report",
    "FactoredSuspension",
    "FactoredChecks",
    "PicardObstructionResult",
    "analyze",
    "picard_obstruction",
    "verify_factored_suspension",
    "HomSuspError",
]
