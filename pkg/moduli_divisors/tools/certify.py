"""Certificates of bigness and effectivity for canonical classes.

A certificate writes

    K = eps * psi + sum_j x_j G_j + R

with eps >= 0, x_j >= 0 and a residual R that is nonnegative on every
covered coordinate. The multipliers come from exact Fourier-Motzkin
elimination that keeps eps for last, so the certificate carries the largest
admissible eps.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from ..core.config import DEFAULT_CONFIG, AppConfig
from ..core.errors import InvalidSymbolError, MixedContextError, ReducedCoordinateError
from ..core.picard_basis import (
    BasisSymbol,
    DivisorClass,
    canonicalize,
    covers_basis,
    delta_irr,
    delta_pair,
    fraction_to_str,
    lam,
    orbit_basis,
    parse_fraction,
    parse_symbol,
    psi_class,
    psi_total,
)
from ..core.state import Mode, SpaceContext, Verdict
from .catalog import Generator, brill_noether_glue, canonical_class, resolve_generator

logger = logging.getLogger(__name__)

EPSILON = "epsilon"
ZERO = Fraction(0)


@dataclass(frozen=True)
class Row:
    """coeffs . x <= bound, or < bound when ``strict``."""

    coeffs: Tuple[Fraction, ...]
    bound: Fraction
    strict: bool = False
    label: str = ""
    origin: FrozenSet[int] = frozenset()

    def is_constant(self) -> bool:
        return not any(self.coeffs)

    def holds_trivially(self) -> bool:
        return self.bound > 0 or (self.bound == 0 and not self.strict)

    def normalized(self) -> "Row":
        scale = max(abs(c) for c in self.coeffs)
        if scale in (0, 1):
            return self
        return Row(
            tuple(c / scale for c in self.coeffs),
            self.bound / scale,
            self.strict,
            self.label,
            self.origin,
        )


@dataclass
class InequalitySystem:
    """Rows over the variables (eps, x_1, ..., x_m) built from one canonical class."""

    variables: Tuple[str, ...]
    rows: List[Row]
    coordinates: Tuple[BasisSymbol, ...]
    canonical: DivisorClass
    generators: Tuple[Generator, ...]
    has_epsilon: bool = True
    strict_coordinates: Tuple[BasisSymbol, ...] = ()
    excluded: Tuple[BasisSymbol, ...] = ()
    full_cover: bool = False

    @property
    def mode(self) -> Mode:
        if not self.full_cover or any(gen.mode is Mode.reduced for gen in self.generators):
            return Mode.reduced
        return Mode.full

    def relaxed(self) -> "InequalitySystem":
        """The same system with every strict row made non-strict."""
        rows = [Row(r.coeffs, r.bound, False, r.label, r.origin) for r in self.rows]
        return InequalitySystem(
            self.variables,
            rows,
            self.coordinates,
            self.canonical,
            self.generators,
            self.has_epsilon,
            (),
            self.excluded,
            self.full_cover,
        )

    def describe(self) -> str:
        lines = []
        for row in self.rows:
            terms = " + ".join(
                f"{c}*{v}" for c, v in zip(row.coeffs, self.variables) if c
            ) or "0"
            lines.append(f"{row.label}: {terms} {'<' if row.strict else '<='} {row.bound}")
        return "\n".join(lines)


@dataclass
class Certificate:
    verdict: Verdict
    epsilon: Fraction
    multipliers: Dict[str, Fraction]
    residual: DivisorClass
    mode: Mode
    coordinates: Tuple[str, ...]
    strict: Tuple[str, ...] = ()
    excluded: Tuple[str, ...] = ()
    assumptions: Tuple[str, ...] = ()
    citations: Tuple[str, ...] = ()
    sup_epsilon: Optional[Fraction] = None
    canonical: Optional[DivisorClass] = None
    generator_classes: Tuple[DivisorClass, ...] = field(default_factory=tuple)

    @property
    def conditional(self) -> bool:
        return self.mode is Mode.reduced

    def to_dict(self, include_inputs: bool = True) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "verdict": self.verdict.value,
            "epsilon": fraction_to_str(self.epsilon),
            "sup_epsilon": None if self.sup_epsilon is None else fraction_to_str(self.sup_epsilon),
            "multipliers": {name: fraction_to_str(v) for name, v in self.multipliers.items()},
            "residual": self.residual.to_dict(),
            "mode": self.mode.value,
            "conditional": self.conditional,
            "coordinates": list(self.coordinates),
            "strict": list(self.strict),
            "excluded": list(self.excluded),
            "assumptions": list(self.assumptions),
            "citations": list(self.citations),
        }
        if include_inputs and self.canonical is not None:
            data["canonical"] = self.canonical.to_dict()
            data["generators"] = [cls.to_dict() for cls in self.generator_classes]
        return data


def certificate_from_dict(data: Dict[str, Any]) -> Certificate:
    sup = data.get("sup_epsilon")
    canonical = data.get("canonical")
    return Certificate(
        verdict=Verdict(data["verdict"]),
        epsilon=parse_fraction(data["epsilon"]),
        multipliers={name: parse_fraction(v) for name, v in data["multipliers"].items()},
        residual=DivisorClass.from_dict(data["residual"]),
        mode=Mode(data["mode"]),
        coordinates=tuple(data["coordinates"]),
        strict=tuple(data.get("strict", ())),
        excluded=tuple(data.get("excluded", ())),
        assumptions=tuple(data.get("assumptions", ())),
        citations=tuple(data.get("citations", ())),
        sup_epsilon=None if sup is None else parse_fraction(sup),
        canonical=None if canonical is None else DivisorClass.from_dict(canonical),
        generator_classes=tuple(DivisorClass.from_dict(g) for g in data.get("generators", ())),
    )


GeneratorLike = Union[Generator, DivisorClass]


def _as_generators(gens: Sequence[GeneratorLike]) -> List[Generator]:
    out = []
    seen: Dict[str, int] = {}
    for index, gen in enumerate(gens, start=1):
        if isinstance(gen, DivisorClass):
            gen = Generator(f"G{index}", gen)
        count = seen.get(gen.name, 0)
        seen[gen.name] = count + 1
        if count:
            gen = Generator(
                f"{gen.name}#{count + 1}",
                gen.cls,
                gen.mode,
                gen.known,
                gen.assumptions,
                gen.citation,
            )
        out.append(gen)
    return out


def _canonical_symbols(ctx: SpaceContext, symbols: Iterable[BasisSymbol]) -> List[BasisSymbol]:
    out = []
    for sym in symbols:
        canon = canonicalize(sym, ctx)
        if canon is not None and canon not in out:
            out.append(canon)
    return out


def build_system(
    K: DivisorClass,
    gens: Sequence[GeneratorLike],
    coords: Optional[Sequence[BasisSymbol]] = None,
    *,
    epsilon: bool = True,
    strict: Sequence[BasisSymbol] = (),
    excluded: Optional[Sequence[BasisSymbol]] = None,
    config: AppConfig = DEFAULT_CONFIG,
) -> InequalitySystem:
    """One row per covered coordinate c: eps psi[c] + sum x_j G_j[c] <= K[c].

    ``coords=None`` covers the whole orbit basis and then every generator
    must be Full. ``excluded`` coordinates get an equality instead, so the
    residual may not use them; by default they come from the config.
    """
    ctx = K.ctx
    generators = _as_generators(gens)
    for gen in generators:
        if gen.ctx.space_key() != ctx.space_key():
            raise MixedContextError(
                f"generator {gen.name} lives on {gen.ctx.describe()}, K on {ctx.describe()}"
            )
    coordinates = (
        orbit_basis(ctx, cap=config.full_basis_cap)
        if coords is None
        else _canonical_symbols(ctx, coords)
    )
    for gen in generators:
        for sym in coordinates:
            if not gen.knows(sym):
                raise ReducedCoordinateError(
                    f"{gen.name} is Reduced and does not know the coordinate {sym.name}"
                )
    if excluded is None:
        excluded_syms = [
            sym for sym in coordinates if sym.name in set(config.excluded_effective)
        ]
    else:
        excluded_syms = _canonical_symbols(ctx, excluded)
    strict_syms = _canonical_symbols(ctx, strict)

    psi_vec = psi_class(ctx).as_dict()
    k_vec = K.as_dict()
    gen_vecs = [gen.cls.as_dict() for gen in generators]
    variables = ((EPSILON,) if epsilon else ()) + tuple(gen.name for gen in generators)

    rows: List[Row] = []
    for sym in coordinates:
        coeffs = tuple(
            ([psi_vec.get(sym, ZERO)] if epsilon else [])
            + [vec.get(sym, ZERO) for vec in gen_vecs]
        )
        bound = k_vec.get(sym, ZERO)
        origin = frozenset([len(rows)])
        rows.append(Row(coeffs, bound, sym in strict_syms, sym.name, origin))
        if sym in excluded_syms:
            rows.append(
                Row(
                    tuple(-c for c in coeffs),
                    -bound,
                    False,
                    f"{sym.name} (equality)",
                    frozenset([len(rows)]),
                )
            )
    for index, name in enumerate(variables):
        coeffs = tuple(Fraction(-1) if j == index else ZERO for j in range(len(variables)))
        rows.append(Row(coeffs, ZERO, False, f"{name} >= 0", frozenset([len(rows)])))
    logger.debug(
        "built %d rows over %d variables on %s", len(rows), len(variables), ctx.describe()
    )
    return InequalitySystem(
        variables,
        rows,
        tuple(coordinates),
        K,
        tuple(generators),
        epsilon,
        tuple(strict_syms),
        tuple(excluded_syms),
        coords is None or covers_basis(ctx, coordinates, config.full_basis_cap),
    )


# ---------------------------------------------------------------------------
# Fourier-Motzkin elimination
# ---------------------------------------------------------------------------


class _Infeasible(Exception):
    pass


def _is_sign_row(row: Row) -> bool:
    nonzero = [c for c in row.coeffs if c]
    return len(nonzero) == 1 and nonzero[0] < 0 and row.bound == 0 and not row.strict


def _presolve(rows: Iterable[Row]) -> List[Row]:
    """Normalize, drop rows implied by nonnegativity and keep the tightest duplicate."""
    best: Dict[Tuple[Fraction, ...], Row] = {}
    for row in rows:
        if row.is_constant():
            if not row.holds_trivially():
                raise _Infeasible(row.label)
            continue
        row = row.normalized()
        if (
            all(c <= 0 for c in row.coeffs)
            and row.holds_trivially()
            and not _is_sign_row(row)
        ):
            continue
        current = best.get(row.coeffs)
        if (
            current is None
            or row.bound < current.bound
            or (row.bound == current.bound and row.strict and not current.strict)
        ):
            best[row.coeffs] = row
    return list(best.values())


def _eliminate(rows: List[Row], k: int, eliminated: int) -> List[Row]:
    keep = [r for r in rows if r.coeffs[k] == 0]
    pos = [r for r in rows if r.coeffs[k] > 0]
    neg = [r for r in rows if r.coeffs[k] < 0]
    for p in pos:
        for n in neg:
            origin = p.origin | n.origin
            if len(origin) > eliminated + 1:
                continue
            a, b = p.coeffs[k], -n.coeffs[k]
            coeffs = tuple(b * pc + a * nc for pc, nc in zip(p.coeffs, n.coeffs))
            keep.append(
                Row(
                    coeffs,
                    b * p.bound + a * n.bound,
                    p.strict or n.strict,
                    f"({p.label})+({n.label})",
                    origin,
                )
            )
    return _presolve(keep)


@dataclass
class _Bounds:
    low: Optional[Fraction] = None
    low_strict: bool = False
    high: Optional[Fraction] = None
    high_strict: bool = False

    def add_lower(self, value: Fraction, strict: bool) -> None:
        if self.low is None or value > self.low or (value == self.low and strict):
            self.low, self.low_strict = value, strict

    def add_upper(self, value: Fraction, strict: bool) -> None:
        if self.high is None or value < self.high or (value == self.high and strict):
            self.high, self.high_strict = value, strict

    def empty(self) -> bool:
        if self.low is None or self.high is None:
            return False
        if self.low < self.high:
            return False
        return self.low > self.high or self.low_strict or self.high_strict

    def contains(self, value: Fraction) -> bool:
        if self.low is not None and (value < self.low or (value == self.low and self.low_strict)):
            return False
        if self.high is not None and (
            value > self.high or (value == self.high and self.high_strict)
        ):
            return False
        return True

    def pick_low(self) -> Fraction:
        """Smallest admissible value, or a point just inside an open lower end."""
        if self.low is not None and not self.low_strict:
            return self.low
        if self.low is None:
            return self.high - 1 if self.high is not None else ZERO
        if self.high is None:
            return self.low + 1
        return (self.low + self.high) / 2

    def pick_high(self) -> Fraction:
        """Largest admissible value, or a point just inside an open upper end."""
        if self.high is not None and not self.high_strict:
            return self.high
        if self.high is None:
            return (self.low if self.low is not None else ZERO) + 1
        if self.low is None:
            return self.high - 1
        return (self.low + self.high) / 2


def _bounds_for(rows: Sequence[Row], k: int, values: Dict[int, Fraction]) -> _Bounds:
    bounds = _Bounds()
    for row in rows:
        a = row.coeffs[k]
        if not a:
            continue
        rest = row.bound - sum(c * values[j] for j, c in enumerate(row.coeffs) if j != k and c)
        if a > 0:
            bounds.add_upper(rest / a, row.strict)
        else:
            bounds.add_lower(rest / a, row.strict)
    return bounds


def _project(system: InequalitySystem) -> Tuple[List[List[Row]], List[int]]:
    """Stages of the elimination; eps (index 0) is eliminated last if present."""
    nvars = len(system.variables)
    first = 1 if system.has_epsilon else 0
    order = list(range(nvars - 1, first - 1, -1))
    stages = [_presolve(system.rows)]
    for step, k in enumerate(order, start=1):
        stages.append(_eliminate(stages[-1], k, step))
    return stages, order


def _back_substitute(
    stages: List[List[Row]], order: List[int], values: Dict[int, Fraction]
) -> Dict[int, Fraction]:
    for step in range(len(order) - 1, -1, -1):
        k = order[step]
        bounds = _bounds_for(stages[step], k, values)
        if bounds.empty():
            raise _Infeasible(f"back substitution failed on variable {k}")
        values[k] = bounds.pick_low()
    return values


def _residual(
    K: DivisorClass, epsilon: Fraction, gens: Sequence[Generator], values: Sequence[Fraction]
) -> DivisorClass:
    out = K - psi_class(K.ctx) * epsilon
    for gen, x in zip(gens, values):
        out = out - gen.cls * x
    return out


def _make_certificate(
    system: InequalitySystem,
    verdict: Verdict,
    epsilon: Fraction,
    values: Sequence[Fraction],
    sup: Optional[Fraction],
) -> Certificate:
    gens = system.generators
    multipliers = {gen.name: x for gen, x in zip(gens, values)}
    assumptions: List[str] = []
    citations: List[str] = []
    for gen in gens:
        for text in gen.assumptions:
            line = f"{gen.name}: {text}"
            if line not in assumptions:
                assumptions.append(line)
        if gen.citation and gen.citation not in citations:
            citations.append(gen.citation)
    return Certificate(
        verdict=verdict,
        epsilon=epsilon,
        multipliers=multipliers,
        residual=_residual(system.canonical, epsilon, gens, values),
        mode=system.mode,
        coordinates=tuple(sym.name for sym in system.coordinates),
        strict=tuple(sym.name for sym in system.strict_coordinates),
        excluded=tuple(sym.name for sym in system.excluded),
        assumptions=tuple(assumptions),
        citations=tuple(citations),
        sup_epsilon=sup,
        canonical=system.canonical,
        generator_classes=tuple(gen.cls for gen in gens),
    )


def _infeasible(system: InequalitySystem) -> Certificate:
    zeros = [ZERO] * len(system.generators)
    return _make_certificate(system, Verdict.infeasible, ZERO, zeros, None)


def _solve_fixed(system: InequalitySystem) -> Optional[List[Fraction]]:
    """Multipliers for a system without eps, or None when infeasible."""
    try:
        stages, order = _project(system)
        values = _back_substitute(stages, order, {})
    except _Infeasible:
        return None
    return [values[k] for k in range(len(system.variables))]


def _checked(cert: Certificate, system: InequalitySystem) -> Certificate:
    if not verify(cert, system.canonical, system.generators):
        raise AssertionError(f"emitted {cert.verdict.value} certificate failed verification")
    return cert


def solve(system: InequalitySystem) -> Certificate:
    """Decide the system exactly and return a verified certificate.

    With eps present the verdict is GeneralType when some eps > 0 is
    feasible, and eps is then its supremum (or an interior point when the
    supremum is not attained). A system without eps can only show that K is
    effective: it is Effective when the rows, strict ones included, have a
    common solution and Infeasible otherwise.
    """
    if not system.has_epsilon:
        values = _solve_fixed(system)
        if values is None:
            return _checked(_infeasible(system), system)
        return _checked(_make_certificate(system, Verdict.effective, ZERO, values, None), system)

    try:
        stages, order = _project(system)
    except _Infeasible:
        return _checked(_infeasible(system), system)
    eps_bounds = _bounds_for(stages[-1], 0, {})
    if eps_bounds.empty():
        return _checked(_infeasible(system), system)
    eps_bounds.add_lower(ZERO, False)
    sup = eps_bounds.high
    if eps_bounds.high is None or eps_bounds.high > 0:
        if eps_bounds.empty():
            return _checked(_infeasible(system), system)
        eps = eps_bounds.pick_high()
        verdict = Verdict.general_type if eps > 0 else Verdict.effective
    elif eps_bounds.contains(ZERO):
        eps, verdict = ZERO, Verdict.effective
    else:
        return _checked(_infeasible(system), system)
    try:
        values = _back_substitute(stages, order, {0: eps})
    except _Infeasible:
        return _checked(_infeasible(system), system)
    multipliers = [values[k] for k in range(1, len(system.variables))]
    cert = _make_certificate(system, verdict, eps, multipliers, sup)
    logger.debug(
        "solved %s: %s with eps = %s", system.canonical.ctx.describe(), verdict.value, eps
    )
    return _checked(cert, system)


def certify(
    K: DivisorClass,
    gens: Sequence[GeneratorLike],
    coords: Optional[Sequence[BasisSymbol]] = None,
    config: AppConfig = DEFAULT_CONFIG,
) -> Certificate:
    return solve(build_system(K, gens, coords, config=config))


def verify(cert: Certificate, K: DivisorClass, gens: Sequence[GeneratorLike]) -> bool:
    """Recompute the residual with exact arithmetic and check every claim."""
    generators = _as_generators(gens)
    if len(generators) != len(cert.multipliers):
        return False
    values = list(cert.multipliers.values())
    if cert.epsilon < 0 or any(x < 0 for x in values):
        return False
    if cert.verdict is Verdict.infeasible:
        return cert.epsilon == 0 and all(x == 0 for x in values)
    residual = _residual(K, cert.epsilon, generators, values)
    coeffs = residual.as_dict()
    stored = cert.residual.as_dict()
    for name in cert.coordinates:
        sym = canonicalize(parse_symbol(name), K.ctx)
        value = coeffs.get(sym, ZERO)
        if stored.get(sym, ZERO) != value:
            return False
        if name in cert.excluded:
            if value != 0:
                return False
        elif value < 0 or (name in cert.strict and value == 0):
            return False
    if cert.verdict is Verdict.general_type:
        return cert.epsilon > 0
    return True


def verify_stored(cert: Certificate) -> bool:
    """Verify a certificate against the inputs it carries."""
    if cert.canonical is None:
        return False
    gens = [
        Generator(name, cls) for name, cls in zip(cert.multipliers, cert.generator_classes)
    ]
    return verify(cert, cert.canonical, gens)


# ---------------------------------------------------------------------------
# the reduced nodal system
# ---------------------------------------------------------------------------


def reduced_coordinates(ctx: SpaceContext) -> List[BasisSymbol]:
    """lambda, psi, delta_irr, delta_{0;1,0} and delta_{0;0,2} where present."""
    wanted = [lam(), psi_total(), delta_irr(), delta_pair(0, 1, 0), delta_pair(0, 0, 2)]
    out = []
    for sym in wanted:
        try:
            canon = canonicalize(sym, ctx)
        except InvalidSymbolError:
            continue
        if canon is not None and canon not in out:
            out.append(canon)
    return out


def cutoff_polynomial(g: int, n: int) -> int:
    """Positive exactly when the psi, delta_{0;1,0}, delta_{0;0,2} rows are solvable (2n >= g)."""
    return -2 * n * n + (2 * g - 5) * n + 4 * g * g - 11 * g + 9


def reduced_nodal_system(g: int, n: int) -> InequalitySystem:
    """D and W on the psi, delta_{0;1,0} and delta_{0;0,2} rows.

    Only the psi row carries eps, so some eps > 0 fits exactly when the psi
    row can be met strictly. D is evaluated from its formula even when
    g+n+1 is prime.
    """
    ctx = SpaceContext.nodal(g, n)
    coords = [psi_total(), delta_pair(0, 1, 0), delta_pair(0, 0, 2)]
    window = frozenset(_canonical_symbols(ctx, coords))
    K = canonical_class(ctx, window)
    D = brill_noether_glue(g, n, require_composite=False, window=window)
    W = resolve_generator("W", ctx, window)
    return build_system(K, [D, W], coords)
