"""Canonical classes and effective generators.

Every constructor returns exact classes normalized with the undetermined
positive constant set to 1. A ``Generator`` wraps a class with its
bookkeeping: in Reduced mode only the coordinates in ``known`` are exact and
``assumptions`` states how the remaining coefficients are bounded.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from sympy import isprime

from ..core.errors import (
    GeneratorDomainError,
    InvalidContextError,
    InvalidSymbolError,
    UnsupportedPullbackError,
)
from ..core.picard_basis import (
    BasisSymbol,
    DivisorClass,
    SymbolKind,
    boundary_basis,
    boundary_total,
    canonicalize,
    delta,
    delta_block,
    delta_irr,
    delta_orbit,
    delta_pair,
    eta0,
    lam,
    omega,
    psi,
    psi_class,
    psi_total,
)
from ..core.state import Level, Mode, SlopeSource, SpaceContext, SpaceKind
from .maps import (
    LinearMap,
    collapse_orbits,
    forgetful_orbit_map,
    glue_map,
    multi_forgetful_pullback,
    restriction_map,
    restriction_support,
    unpointed_map,
)

logger = logging.getLogger(__name__)

Terms = List[Tuple[BasisSymbol, Fraction]]
Window = Optional[FrozenSet[BasisSymbol]]


def _choose(a: int, b: int) -> int:
    return comb(a, b) if 0 <= b <= a else 0


@dataclass(frozen=True)
class Generator:
    """An effective class together with what is exactly known about it."""

    name: str
    cls: DivisorClass
    mode: Mode = Mode.full
    known: Optional[FrozenSet[BasisSymbol]] = None
    assumptions: Tuple[str, ...] = ()
    citation: str = ""

    @property
    def ctx(self) -> SpaceContext:
        return self.cls.ctx

    def knows(self, sym: BasisSymbol) -> bool:
        if self.mode is Mode.full:
            return True
        return self.known is not None and sym in self.known

    def pull(self, linear_map: LinearMap, name: Optional[str] = None) -> "Generator":
        """Apply ``linear_map`` and carry the known-coordinate set along."""
        cls = linear_map(self.cls)
        known = None
        if self.mode is Mode.reduced:
            known = linear_map.push_known(self.known or frozenset())
        return Generator(
            name or self.name,
            cls,
            self.mode,
            known,
            self.assumptions,
            self.citation,
        )

    def scaled(self, factor: Fraction) -> "Generator":
        if factor <= 0:
            raise GeneratorDomainError(f"scaling factor must be positive, got {factor}")
        return Generator(
            self.name, self.cls * factor, self.mode, self.known, self.assumptions, self.citation
        )

    def to_dict(self) -> Dict[str, object]:
        data: Dict[str, object] = {
            "name": self.name,
            "mode": self.mode.value,
            "class": self.cls.to_dict(),
            "assumptions": list(self.assumptions),
            "citation": self.citation,
        }
        if self.known is not None:
            data["known"] = sorted(sym.name for sym in self.known)
        return data


@dataclass(frozen=True)
class GeneratorSpec:
    """One line of the generator catalog."""

    name: str
    context: str
    validity: str
    mode: Mode
    citation: str


@dataclass(frozen=True)
class SlopeDatum:
    g: int
    slope: Fraction
    source: SlopeSource


def _reduced(
    name: str,
    ctx: SpaceContext,
    terms: Iterable[Tuple[BasisSymbol, Fraction]],
    known: Iterable[BasisSymbol],
    assumptions: Sequence[str],
    citation: str,
) -> Generator:
    cls = DivisorClass.from_terms(ctx, terms)
    known_set: Set[BasisSymbol] = set()
    for sym in known:
        try:
            canon = canonicalize(sym, ctx)
        except InvalidSymbolError:
            continue
        if canon is not None:
            known_set.add(canon)
    return Generator(name, cls, Mode.reduced, frozenset(known_set), tuple(assumptions), citation)


# ---------------------------------------------------------------------------
# canonical classes
# ---------------------------------------------------------------------------


def canonical_class(ctx: SpaceContext, window: Window = None) -> DivisorClass:
    """Canonical class of ``ctx``, pulled back to the cover for quotients.

    On the stack level this is 13 lambda + psi - 2 delta. The coarse level
    subtracts the ramification coming from elliptic tails and from swaps of
    two marked points on a rational tail. With ``window`` only the listed
    coefficients are computed.
    """
    if window is None:
        return _canonical_class(ctx, None)
    return _canonical_class(ctx, window).restrict(window)


def _canonical_class(ctx: SpaceContext, window: Window) -> DivisorClass:
    if ctx.kind is SpaceKind.hyperelliptic:
        return _hyperelliptic_canonical(ctx)
    if ctx.kind is SpaceKind.pointed and ctx.g == 0:
        if ctx.n % 2 or ctx.n < 6:
            raise InvalidContextError(
                f"canonical class of M_0,n / S_n is only provided for n = 2g+2 >= 6, got {ctx.n}"
            )
        return rational_quotient_canonical((ctx.n - 2) // 2).with_context(ctx)
    stack = 13 * DivisorClass.of(ctx, lam()) + psi_class(ctx) - 2 * boundary_total(ctx, window)
    if ctx.level is Level.stack:
        return stack
    if ctx.g + ctx.num_labels < 4:
        raise InvalidContextError(
            f"coarse canonical class needs g + n >= 4, got {ctx.describe()}"
        )
    extra: List[BasisSymbol] = []
    if ctx.kind is SpaceKind.pointed:
        extra.append(delta_orbit(1, 0) if ctx.symmetric else delta(1, ()))
    elif ctx.kind is SpaceKind.nodal:
        extra.extend([delta_pair(1, 0, 0), delta_pair(0, 1, 0)])
    else:
        zeros = [0] * len(ctx.partition)
        extra.append(delta_block(1, zeros))
        for k, size in enumerate(ctx.partition):
            if size >= 2:
                counts = list(zeros)
                counts[k] = 2
                extra.append(delta_block(0, counts))
    return stack - DivisorClass.from_terms(ctx, [(sym, 1) for sym in extra])


def _hyperelliptic_canonical(ctx: SpaceContext) -> DivisorClass:
    g = ctx.g
    if ctx.level is Level.coarse and ctx.n == 1:
        raise InvalidContextError("the coarse hyperelliptic formula needs n = 0 or n >= 2")
    terms: Terms = list(psi_class(ctx).terms)
    terms.append((eta0(), -(Fraction(1, 2) + Fraction(1, 2 * g + 1))))
    for sym in boundary_basis(ctx):
        i = sym.i
        if sym.kind in (SymbolKind.eta, SymbolKind.eta_orbit):
            terms.append((sym, Fraction(4 * (i + 1) * (g - i), 2 * g + 1) - 2))
        elif i == 0:
            terms.append((sym, Fraction(-2)))
        else:
            terms.append((sym, Fraction((2 * i + 1) * (2 * g - 2 * i + 1), 4 * g + 2)))
    if ctx.level is Level.coarse:
        tails = {
            canonicalize(delta_orbit(i, 0) if ctx.symmetric else delta(i, ()), ctx)
            for i in range(1, g + 1)
        }
        terms.extend((sym, Fraction(-1)) for sym in tails if sym is not None)
    return DivisorClass.from_terms(ctx, terms)


def rational_quotient_canonical(g: int) -> DivisorClass:
    """K of M_{0,2g+2}/S_{2g+2}, which pulls back to K of the coarse hyperelliptic locus."""
    if g < 2:
        raise InvalidContextError(f"need g >= 2, got {g}")
    ctx = SpaceContext.pointed(0, 2 * g + 2, level=Level.coarse, symmetric=True)
    terms: Terms = [(delta_orbit(0, 2), -(Fraction(1, 2) + Fraction(1, 2 * g + 1)))]
    terms.extend(
        (delta_orbit(0, s), Fraction(s * (2 * g + 2 - s), 2 * g + 1) - 2)
        for s in range(3, g + 2)
    )
    return DivisorClass.from_terms(ctx, terms)


# ---------------------------------------------------------------------------
# Brill-Noether and Gieseker-Petri
# ---------------------------------------------------------------------------

BN_CITATION = "Eisenbud-Harris, Brill-Noether divisor of curves carrying a g^r_d"
GP_CITATION = "Eisenbud-Harris, Gieseker-Petri divisor"


def brill_noether(g: int, require_composite: bool = True) -> Generator:
    """(g+3) lambda - (g+1)/6 delta_irr - sum j(g-j) delta_j on the unpointed space.

    With ``require_composite=False`` the formula is evaluated even when no
    such divisor exists; the cutoff analysis uses it symbolically.
    """
    if g < 3:
        raise GeneratorDomainError(f"Brill-Noether divisor needs g >= 3, got {g}")
    if require_composite and isprime(g + 1):
        raise GeneratorDomainError(f"g+1 = {g + 1} is prime")
    ctx = SpaceContext.pointed(g, 0)
    terms: Terms = [(lam(), Fraction(g + 3)), (delta_irr(), -Fraction(g + 1, 6))]
    terms.extend((delta(j, ()), Fraction(-j * (g - j))) for j in range(1, g // 2 + 1))
    return Generator(f"BN_{g}", DivisorClass.from_terms(ctx, terms), citation=BN_CITATION)


def brill_noether_pullback(target: SpaceContext, window: Window = None) -> Generator:
    """B: the Brill-Noether class pulled back along the map forgetting every point."""
    base = brill_noether(target.g)
    return base.pull(unpointed_map(base.ctx, target, window), name="B")


def brill_noether_glue(
    g: int, n: int, require_composite: bool = True, window: Window = None
) -> Generator:
    """D: the Brill-Noether class of genus g+n pulled back along the gluing map."""
    try:
        base = brill_noether(g + n, require_composite)
    except GeneratorDomainError as exc:
        raise GeneratorDomainError(f"D({g},{n}): {exc}") from exc
    return base.pull(glue_map(base.ctx, n, window), name="D")


def gieseker_petri_coefficients(g: int) -> Tuple[int, int, int]:
    """(a, b_0, b_1) with d = g/2 + 1."""
    if g < 2 or g % 2:
        raise GeneratorDomainError(f"Gieseker-Petri divisor needs an even genus, got g = {g}")
    d = g // 2 + 1
    return 6 * d * d + d - 6, d * (d - 1), (2 * d - 3) * (3 * d - 2)


def gieseker_petri(g: int) -> Generator:
    a, b0, b1 = gieseker_petri_coefficients(g)
    ctx = SpaceContext.pointed(g, 0)
    terms: Terms = [(lam(), Fraction(a)), (delta_irr(), Fraction(-b0)), (delta(1, ()), Fraction(-b1))]
    return _reduced(
        f"GP_{g}",
        ctx,
        terms,
        [lam(), delta_irr(), delta(1, ())],
        ["b_{j+1} >= b_j for j >= 1"],
        GP_CITATION,
    )


def gieseker_petri_pullback(target: SpaceContext, window: Window = None) -> Generator:
    """E: used in place of B when g+1 is prime."""
    base = gieseker_petri(target.g)
    return base.pull(unpointed_map(base.ctx, target, window), name="E")


def gieseker_petri_glue(g: int, n: int, window: Window = None) -> Generator:
    """F: used in place of D when g+n+1 is prime."""
    try:
        base = gieseker_petri(g + n)
    except GeneratorDomainError as exc:
        raise GeneratorDomainError(f"F({g},{n}): {exc}") from exc
    return base.pull(glue_map(base.ctx, n, window), name="F")


# ---------------------------------------------------------------------------
# Weierstrass-type divisors
# ---------------------------------------------------------------------------

LOGAN_CITATION = "Logan, pointed curves whose weighted divisor moves in a pencil"


def _logan_b(i: int, s: int) -> int:
    t = abs(s - i)
    return t * (t + 1) // 2


def logan(g: int, weights: Sequence[int]) -> Generator:
    """Divisor of pointed curves with h^0(sum a_i x_i) >= 2, where sum a_i = g.

    All weights equal to one give every coefficient in the psi basis; other
    weights give the omega-basis coefficients of lambda, omega_i and the
    delta_{0,{i,j}} only.
    """
    weights = tuple(int(a) for a in weights)
    if not weights or any(a < 1 for a in weights):
        raise GeneratorDomainError(f"weights must be positive, got {weights}")
    if sum(weights) != g:
        raise GeneratorDomainError(f"weights {weights} sum to {sum(weights)}, expected g = {g}")
    n = len(weights)
    ctx = SpaceContext.pointed(g, n)
    name = f"Logan_{g}({','.join(str(a) for a in weights)})"
    if all(a == 1 for a in weights):
        terms: Terms = [(lam(), Fraction(-1))]
        terms.extend((psi(x), Fraction(1)) for x in range(1, n + 1))
        terms.extend(
            (sym, Fraction(-_logan_b(sym.i, len(sym.labels))))
            for sym in boundary_basis(ctx)
        )
        return Generator(name, DivisorClass.from_terms(ctx, terms), citation=LOGAN_CITATION)
    terms = [(lam(), Fraction(-1))]
    terms.extend((omega(x), Fraction(a * (a + 1), 2)) for x, a in enumerate(weights, start=1))
    pairs = list(combinations(range(1, n + 1), 2))
    terms.extend((delta(0, pair), Fraction(-weights[pair[0] - 1] * weights[pair[1] - 1])) for pair in pairs)
    known = [lam(), delta_irr()] + [omega(x) for x in range(1, n + 1)]
    known.extend(delta(0, pair) for pair in pairs)
    cls = DivisorClass.from_terms(ctx, terms)
    return Generator(
        name,
        cls,
        Mode.reduced,
        frozenset(known),
        ("higher boundary coefficients are bounded by the pair coefficients",),
        LOGAN_CITATION,
    )


def weierstrass_orbit(
    g: int, n: int, normalize: bool = True, symbols: Window = None
) -> DivisorClass:
    """Sum of the C(n, g) pullbacks of the all-ones Logan divisor, n >= g.

    The orbit coefficients are counted directly: a subset T of size t meets
    a kept g-subset in u points, contributing the Logan coefficient b(i, u),
    and a kept point of T forgotten together with the rest of T contributes
    the psi correction. ``symbols`` limits the boundary coefficients counted.
    """
    if g < 2 or n < g:
        raise GeneratorDomainError(f"counting formula needs n >= g >= 2, got g = {g}, n = {n}")
    ctx = SpaceContext.pointed(g, n, symmetric=True)
    scale = Fraction(1, _choose(n - 1, g - 1)) if normalize else Fraction(1)
    terms: Terms = [
        (lam(), -_choose(n, g) * scale),
        (psi_total(), _choose(n - 1, g - 1) * scale),
    ]
    boundary = boundary_basis(ctx) if symbols is None else sorted(
        sym for sym in symbols if sym.is_boundary
    )
    for sym in boundary:
        i, t = sym.i, sym.counts[0]
        total = 0
        for u in range(0, min(t, g) + 1):
            if i == 0 and u <= 1:
                continue
            total += _choose(t, u) * _choose(n - t, g - u) * _logan_b(i, u)
        if i == 0:
            total += t * _choose(n - t, g - 1)
        terms.append((sym, -total * scale))
    return DivisorClass.from_terms(ctx, terms)


def weierstrass_raw(g: int, n: int) -> DivisorClass:
    """Unnormalized sum of pullbacks, so psi carries C(n-1, g-1)."""
    return weierstrass_orbit(g, n, normalize=False)


def weierstrass_bruteforce(g: int, n: int) -> DivisorClass:
    """Raw W built by summing every multi-forgetful pullback on the full basis."""
    base = logan(g, [1] * g).cls
    orbit_ctx = SpaceContext.pointed(g, n, symmetric=True)
    full_ctx = SpaceContext.pointed(g, n)
    total = DivisorClass.zero(full_ctx)
    for kept in combinations(range(1, n + 1), g):
        total = total + multi_forgetful_pullback(base, kept, n)
    return collapse_orbits(total, orbit_ctx)


def _small_n_data(g: int, n: int) -> Tuple[int, int, int]:
    """(C(n, r), c, b_{0,2}) before normalization, for n < g with g = kn + r."""
    k, r = divmod(g, n)
    c2 = (
        _choose(n - 1, r - 1) * (k + 1) * (k + 2) // 2 + _choose(n - 1, r) * k * (k + 1) // 2
    )
    b02 = (
        2 * c2
        + _choose(n - 2, r - 2) * (k + 1) ** 2
        + 2 * _choose(n - 2, r - 1) * k * (k + 1)
        + _choose(n - 2, r) * k * k
    )
    return _choose(n, r), c2, b02


def a_coefficient(g: int, n: int) -> Fraction:
    """Minus the lambda coefficient of the normalized W on n points."""
    if n < 1:
        raise GeneratorDomainError(f"need n >= 1, got {n}")
    if n >= g:
        return Fraction(n, g)
    k, r = divmod(g, n)
    return Fraction(2 * n, (k + 1) * (g + r))


def b_coefficient(g: int, n: int) -> Fraction:
    """Minus the delta_{0,2} coefficient of the normalized W on n points."""
    if n < 2:
        raise GeneratorDomainError(f"delta_(0,2) needs n >= 2, got {n}")
    if n >= g:
        return 2 + Fraction(g - 1, n - 1)
    _, c2, b02 = _small_n_data(g, n)
    return Fraction(b02, c2)


W_CITATION = "symmetrized Logan divisor, summed over all forgetful maps"


def weierstrass_sym(g: int, n: int, symbols: Window = None) -> Generator:
    """W on the symmetric context of n points, normalized to psi coefficient 1.

    ``symbols`` limits the boundary coefficients counted when n >= g.
    """
    if g < 2 or n < 1:
        raise GeneratorDomainError(f"W needs g >= 2 and n >= 1, got g = {g}, n = {n}")
    if n >= g:
        cls = weierstrass_orbit(g, n, symbols=symbols)
        return Generator(f"W_{g},{n}", cls, citation=W_CITATION)
    ctx = SpaceContext.pointed(g, n, symmetric=True)
    top, c2, b02 = _small_n_data(g, n)
    terms: Terms = [(lam(), -Fraction(top, c2)), (psi_total(), Fraction(1))]
    if n >= 2:
        terms.append((delta_orbit(0, 2), -Fraction(b02, c2)))
    known = [lam(), psi_total(), delta_irr()]
    if n >= 2:
        known.append(delta_orbit(0, 2))
    return _reduced(
        f"W_{g},{n}",
        ctx,
        terms,
        known,
        ["b_{0,s} > b_{0,2} for s > 2", "higher order terms have nonpositive coefficients"],
        W_CITATION,
    )


# ---------------------------------------------------------------------------
# minimal resolution divisors
# ---------------------------------------------------------------------------

MRC_CITATION = "Farkas, divisor of pointed curves failing the minimal resolution conjecture"


def mrc_parameters(g: int, points: int) -> Tuple[int, int]:
    """(r, k) with (2r+1)(g-1) - 2k equal to the number of points of the base divisor.

    The base divisor lives on ``points`` points for odd g and on one point
    fewer for even g, where it is summed over the forgetful maps afterwards.
    """
    if g < 3:
        raise GeneratorDomainError(f"MRC divisors need g >= 3, got {g}")
    m = points if g % 2 else points - 1
    r = 1
    while True:
        twice_k = (2 * r + 1) * (g - 1) - m
        if twice_k % 2:
            raise GeneratorDomainError(f"no MRC divisor on {points} points for g = {g}")
        k = twice_k // 2
        if k > g - 2:
            raise GeneratorDomainError(f"no MRC divisor on {points} points for g = {g}")
        if k >= 0:
            return r, k
        r += 1


def mrc_coefficients(g: int, r: int, k: int) -> Tuple[Fraction, Fraction, Fraction, Callable[[int], Fraction]]:
    """(a, c, b_irr, b_0) where b_0(s) is minus the delta_{0,s} coefficient."""
    if g < 3 or r < 1 or not 0 <= k <= g - 2:
        raise GeneratorDomainError(f"MRC parameters out of range: g = {g}, r = {r}, k = {k}")
    a = Fraction(
        (g - 1) * (g - 2) * (6 * r * r + 6 * r + 1)
        + k * (24 * r + 10 * k + 10 - 10 * g - 12 * r * g),
        g - 2,
    )
    c = Fraction(r * g + g - k - r - 1)
    b_irr = Fraction(
        _choose(r + 1, 2) * (g - 1) * (g - 2) + k * (k + 1 + 2 * r - r * g - g), g - 2
    )

    def b_zero(s: int) -> Fraction:
        return Fraction(_choose(s + 1, 2) * (g - 1) + s * (r * g - r - k))

    return a, c, b_irr, b_zero


def mrc_divisor(g: int, r: int, k: int) -> Generator:
    """U on the symmetric context of m = (2r+1)(g-1) - 2k points."""
    a, c, b_irr, b_zero = mrc_coefficients(g, r, k)
    m = (2 * r + 1) * (g - 1) - 2 * k
    ctx = SpaceContext.pointed(g, m, symmetric=True)
    terms: Terms = [(lam(), -a), (psi_total(), c), (delta_irr(), b_irr)]
    terms.extend((delta_orbit(0, s), -b_zero(s)) for s in range(2, m + 1))
    known = [lam(), psi_total(), delta_irr()] + [delta_orbit(0, s) for s in range(2, m + 1)]
    return _reduced(
        f"U_{g}(r={r},k={k})",
        ctx,
        terms,
        known,
        ["b_{i,s} >= b_{0,s} for i >= 1"],
        MRC_CITATION,
    )


def mrc_even(g: int, r: int, k: int) -> Generator:
    """V: U on m points summed over the m+1 forgetful maps from m+1 points."""
    a, c, b_irr, b_zero = mrc_coefficients(g, r, k)
    points = (2 * r + 1) * (g - 1) - 2 * k + 1
    ctx = SpaceContext.pointed(g, points, symmetric=True)
    terms: Terms = [
        (lam(), -points * a),
        (psi_total(), (points - 1) * c),
        (delta_irr(), points * b_irr),
        (delta_orbit(0, 2), -(2 * c + (points - 2) * b_zero(2))),
    ]
    terms.extend(
        (delta_orbit(0, s), -((points - s) * b_zero(s) + s * b_zero(s - 1)))
        for s in range(3, points + 1)
    )
    known = [lam(), psi_total(), delta_irr()] + [delta_orbit(0, s) for s in range(2, points + 1)]
    return _reduced(
        f"V_{g}(r={r},k={k})",
        ctx,
        terms,
        known,
        ["b_{i,s} >= b_{0,s} for i >= 1"],
        MRC_CITATION,
    )


# ---------------------------------------------------------------------------
# slopes
# ---------------------------------------------------------------------------

SPECIAL_SLOPES: Dict[int, Fraction] = {
    10: Fraction(7),
    12: 6 + Fraction(563, 642),
    16: 6 + Fraction(41, 61),
    21: 6 + Fraction(197, 377),
}


def slope_min(g: int, special_genera: Optional[Iterable[int]] = None) -> SlopeDatum:
    """Smallest known slope of an effective divisor on the unpointed space.

    ``special_genera`` limits which special divisors are admitted; by
    default all of them are. Ties go to the Brill-Noether divisor.
    """
    if g < 3:
        raise GeneratorDomainError(f"slopes are tabulated for g >= 3, got {g}")
    allowed = set(SPECIAL_SLOPES) if special_genera is None else set(special_genera)
    candidates: List[SlopeDatum] = []
    if not isprime(g + 1):
        candidates.append(SlopeDatum(g, 6 + Fraction(12, g + 1), SlopeSource.brill_noether))
    if g % 2 == 0:
        candidates.append(
            SlopeDatum(g, 6 + Fraction(14 * g + 4, g * g + 2 * g), SlopeSource.gieseker_petri)
        )
    if g in SPECIAL_SLOPES and g in allowed:
        candidates.append(SlopeDatum(g, SPECIAL_SLOPES[g], SlopeSource.special))
    best = candidates[0]
    for datum in candidates[1:]:
        if datum.slope < best.slope:
            best = datum
    return best


def slope_class(g: int, special_genera: Optional[Iterable[int]] = None) -> Generator:
    datum = slope_min(g, special_genera)
    ctx = SpaceContext.pointed(g, 0)
    return _reduced(
        f"D_{g}(s={datum.slope})",
        ctx,
        [(lam(), datum.slope), (delta_irr(), Fraction(-1))],
        [lam(), delta_irr()],
        ["b_j >= b_irr for j >= 1"],
        f"minimal slope divisor ({datum.source.value})",
    )


# ---------------------------------------------------------------------------
# anti-ramification and pointed Brill-Noether divisors
# ---------------------------------------------------------------------------

FV_CITATION = "Farkas-Verra, anti-ramification and pointed Brill-Noether divisors"
HT_BOUND = ("all other boundary coefficients are <= -2",)


def _quotient_block(
    name: str, g: int, n: int, a: Fraction, b_irr: Fraction, b02: Fraction
) -> Generator:
    ctx = SpaceContext.pointed(g, n, symmetric=True)
    terms: Terms = [
        (lam(), a),
        (psi_total(), Fraction(1)),
        (delta_irr(), -b_irr),
        (delta_orbit(0, 2), -b02),
    ]
    return _reduced(
        name,
        ctx,
        terms,
        [lam(), psi_total(), delta_irr(), delta_orbit(0, 2)],
        HT_BOUND,
        FV_CITATION,
    )


def antiram_T(g: int) -> Generator:
    """T_g on g-1 points."""
    if g < 3:
        raise GeneratorDomainError(f"T_g needs g >= 3, got {g}")
    half = Fraction(1, 2 * g - 4)
    return _quotient_block(
        f"T_{g}", g, g - 1, -Fraction(g - 7, g - 2), half, 3 + half
    )


def _fgm_bracket(g: int, m: int) -> Fraction:
    return Fraction(10 * m, g - 2) + Fraction(1 - g, g - m)


def fgm_F(g: int, m: int) -> Generator:
    """F_{g,m} on n = g - 2m points."""
    n = g - 2 * m
    if g < 3 or m < 1 or 2 * m > g or n < 2:
        raise GeneratorDomainError(f"F_(g,m) needs 1 <= m <= g/2 and g-2m >= 2, got g={g}, m={m}")
    a = Fraction(n, n - 1) * _fgm_bracket(g, m)
    b_irr = Fraction(n * m, (g - 2) * (n - 1))
    b02 = 3 + Fraction((g - n) * (n + 1), (g + n) * (n - 1))
    return _quotient_block(f"F_{g},{m}", g, n, a, b_irr, b02)


def fgm_Ftilde(g: int, m: int) -> Generator:
    """F_{g,m} summed over the forgetful maps to n = g - 2m + 1 points, normalized."""
    n = g - 2 * m + 1
    if g < 3 or m < 1 or 2 * m > g or n < 3:
        raise GeneratorDomainError(
            f"F~_(g,m) needs 1 <= m <= g/2 and g-2m+1 >= 3, got g={g}, m={m}"
        )
    a = Fraction(n, n - 2) * _fgm_bracket(g, m)
    b_irr = Fraction(n * m, (g - 2) * (n - 2))
    b02 = 3 + Fraction(g - n - 1, g + n - 1)
    return _quotient_block(f"F~_{g},{m}", g, n, a, b_irr, b02)


# ---------------------------------------------------------------------------
# special divisors with printed leading coefficients
# ---------------------------------------------------------------------------


def _unpointed_special(
    name: str, g: int, slope: Fraction, extra: Sequence[Tuple[BasisSymbol, Fraction]], citation: str
) -> Generator:
    ctx = SpaceContext.pointed(g, 0)
    terms: Terms = [(lam(), slope), (delta_irr(), Fraction(-1))] + list(extra)
    return _reduced(
        name,
        ctx,
        terms,
        [lam(), delta_irr()] + [sym for sym, _ in extra],
        ["b_j >= b_irr for j >= 1"],
        citation,
    )


def _pointed_special(
    name: str, g: int, n: int, coeffs: Sequence[Fraction], citation: str
) -> Generator:
    lam_c, psi_c, irr_c, d02 = coeffs
    return _reduced(
        name,
        SpaceContext.pointed(g, n, symmetric=True),
        [
            (lam(), lam_c),
            (psi_total(), psi_c),
            (delta_irr(), irr_c),
            (delta_orbit(0, 2), d02),
        ],
        [lam(), psi_total(), delta_irr(), delta_orbit(0, 2)],
        ["higher boundary coefficients are at most the delta_(0,2) coefficient"],
        citation,
    )


def _lin_summed() -> Generator:
    base = _SPECIAL_BUILDERS["Lin_18_9"]()
    return base.pull(forgetful_orbit_map(base.ctx), name="Lin_18_10")


_SPECIAL_BUILDERS: Dict[str, Callable[[], Generator]] = {
    "Z_10": lambda: _unpointed_special(
        "Z_10", 10, Fraction(7), (), "Farkas, divisor of slope 7 on M_10"
    ),
    "Z_21": lambda: _unpointed_special(
        "Z_21", 21, Fraction(2459, 377), (), "Farkas, Koszul divisor on M_21"
    ),
    "Z_16": lambda: _unpointed_special(
        "Z_16", 16, Fraction(407, 61), (), "Farkas, Koszul divisor on M_16"
    ),
    "D_12": lambda: _reduced(
        "D_12",
        SpaceContext.pointed(12, 0),
        [(lam(), Fraction(13245)), (delta_irr(), Fraction(-1926)), (delta(1, ()), Fraction(-9867))],
        [lam(), delta_irr(), delta(1, ())],
        ["b_j >= b_1 for j >= 2"],
        "Farkas-Verra, divisor on M_12",
    ),
    "L_22_4": lambda: _pointed_special(
        "L_22_4",
        22,
        4,
        [Fraction(13), Fraction(1), Fraction(-2), Fraction(-10, 3)],
        "Brill-Noether divisor of genus 23 glued and summed over forgetful maps",
    ),
    "L_22_6": lambda: _pointed_special(
        "L_22_6",
        22,
        6,
        [Fraction(13), Fraction(2, 3), Fraction(-2), Fraction(-56, 30)],
        "Brill-Noether divisor of genus 23 glued and summed over forgetful maps",
    ),
    "Nfold_14_10": lambda: _pointed_special(
        "Nfold_14_10",
        14,
        10,
        [Fraction(35), Fraction(54), Fraction(-10), Fraction(-173)],
        "Farkas, divisor of pointed curves with a special pencil",
    ),
    "Lin_18_9": lambda: _pointed_special(
        "Lin_18_9",
        18,
        9,
        [Fraction(290), Fraction(24), Fraction(-45), Fraction(-82)],
        "Farkas, linear series divisor Lin^8_24",
    ),
    "Lin_18_10": _lin_summed,
}

SPECIAL_NAMES: Tuple[str, ...] = tuple(_SPECIAL_BUILDERS)


@lru_cache(maxsize=None)
def special_divisor(name: str) -> Generator:
    try:
        builder = _SPECIAL_BUILDERS[name]
    except KeyError:
        raise GeneratorDomainError(
            f"unknown special divisor {name!r}; choose from {', '.join(SPECIAL_NAMES)}"
        ) from None
    return builder()


# ---------------------------------------------------------------------------
# moving generators between contexts
# ---------------------------------------------------------------------------


def transport(
    gen: Generator, target: SpaceContext, name: Optional[str] = None, window: Window = None
) -> Generator:
    """Pull ``gen`` back to ``target`` along the forgetful or restriction map."""
    source = gen.ctx
    if source.space_key() == target.space_key():
        return gen if name is None else replace(gen, name=name)
    if source.kind is SpaceKind.pointed and source.n == 0:
        return gen.pull(unpointed_map(source, target, window), name=name)
    if source.kind is SpaceKind.pointed and source.symmetric and target.kind in (
        SpaceKind.nodal,
        SpaceKind.partition,
    ):
        return gen.pull(restriction_map(source, target, window), name=name)
    raise UnsupportedPullbackError(f"no map from {source.describe()} to {target.describe()}")


def _support(ctx: SpaceContext, window: Window) -> Window:
    """Symbols of the symmetric cover of ``ctx`` that ``window`` depends on."""
    if window is None or ctx.kind is SpaceKind.pointed:
        return window
    cover = SpaceContext.pointed(ctx.g, ctx.num_labels, symmetric=True)
    return restriction_support(cover, window)


def resolve_generator(name: str, ctx: SpaceContext, window: Window = None) -> Generator:
    """Build the generator called ``name`` on ``ctx``.

    B, E and slope come from the unpointed space; D and F need a nodal
    context; W, U and V are built on the number of labels of ``ctx``; every
    other name is looked up among the special divisors. With ``window`` the
    class is only computed on the listed symbols of ``ctx``.
    """
    g, points = ctx.g, ctx.num_labels
    if name == "B":
        return brill_noether_pullback(ctx, window)
    if name == "E":
        return gieseker_petri_pullback(ctx, window)
    if name == "slope":
        return transport(slope_class(g), ctx, name="slope", window=window)
    if name in ("D", "F"):
        if ctx.kind is not SpaceKind.nodal:
            raise GeneratorDomainError(f"{name} lives on nodal quotients, not {ctx.describe()}")
        if name == "D":
            return brill_noether_glue(g, ctx.n, window=window)
        return gieseker_petri_glue(g, ctx.n, window)
    if name == "W":
        return transport(weierstrass_sym(g, points, _support(ctx, window)), ctx, "W", window)
    if name in ("U", "V"):
        if (name == "U") != (g % 2 == 1):
            raise GeneratorDomainError(f"{name} is used for {'odd' if name == 'U' else 'even'} g")
        r, k = mrc_parameters(g, points)
        base = mrc_divisor(g, r, k) if name == "U" else mrc_even(g, r, k)
        return transport(base, ctx, name=name, window=window)
    return transport(special_divisor(name), ctx, name=name, window=window)


GENERATOR_SPECS: Tuple[GeneratorSpec, ...] = (
    GeneratorSpec("BN", "pointed(g, 0)", "g+1 composite", Mode.full, BN_CITATION),
    GeneratorSpec("B", "any quotient of genus g", "g+1 composite", Mode.full, BN_CITATION),
    GeneratorSpec("D", "nodal(g, n)", "g+n+1 composite", Mode.full, BN_CITATION),
    GeneratorSpec("GP", "pointed(g, 0)", "g even", Mode.reduced, GP_CITATION),
    GeneratorSpec("E", "any quotient of genus g", "g even", Mode.reduced, GP_CITATION),
    GeneratorSpec("F", "nodal(g, n)", "g+n even", Mode.reduced, GP_CITATION),
    GeneratorSpec("Logan", "pointed(g, n)", "a_i >= 1, sum a_i = g", Mode.full, LOGAN_CITATION),
    GeneratorSpec("W", "pointed(g, n) symmetric", "n >= g (full) or n < g", Mode.full, W_CITATION),
    GeneratorSpec("U", "pointed(g, m) symmetric", "m = (2r+1)(g-1)-2k", Mode.reduced, MRC_CITATION),
    GeneratorSpec("V", "pointed(g, m+1) symmetric", "m = (2r+1)(g-1)-2k", Mode.reduced, MRC_CITATION),
    GeneratorSpec("T", "pointed(g, g-1) symmetric", "g >= 3", Mode.reduced, FV_CITATION),
    GeneratorSpec("F_gm", "pointed(g, g-2m) symmetric", "1 <= m, g-2m >= 2", Mode.reduced, FV_CITATION),
    GeneratorSpec("F~_gm", "pointed(g, g-2m+1) symmetric", "1 <= m, g-2m+1 >= 3", Mode.reduced, FV_CITATION),
    GeneratorSpec("slope", "pointed(g, 0)", "g >= 3", Mode.reduced, "minimal slope divisor"),
) + tuple(
    GeneratorSpec(name, "fixed", "fixed (g, n)", Mode.reduced, "cataloged coefficient data")
    for name in SPECIAL_NAMES
)
