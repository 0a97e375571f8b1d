"""Pullbacks and changes of basis between divisor-class contexts.

Every operator here is linear on Pic tensor Q. It is written as a
``LinearMap`` given by the image of each basis symbol. The same map can then
push a Reduced generator's known-coordinate set forward: a target coordinate
stays known only if no unknown source symbol reaches it.
"""

from __future__ import annotations

import logging
from bisect import bisect_left
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import (
    Callable,
    Dict,
    FrozenSet,
    Iterable,
    List,
    Mapping,
    Optional,
    Sequence,
    Tuple,
)

from ..core.errors import InvalidContextError, InvalidSymbolError, UnsupportedPullbackError
from ..core.picard_basis import (
    BasisSymbol,
    DivisorClass,
    SymbolKind,
    boundary_basis,
    canonicalize,
    delta,
    delta_block,
    delta_irr,
    delta_orbit,
    delta_pair,
    eta,
    eta0,
    eta_orbit,
    lam,
    omega,
    orbit_basis,
    psi,
    psi_total,
)
from ..core.state import GroupDescriptor, GroupKind, Level, SpaceContext, SpaceKind

logger = logging.getLogger(__name__)

Terms = List[Tuple[BasisSymbol, Fraction]]
ImageFn = Callable[[BasisSymbol], Terms]

ONE = Fraction(1)


@dataclass
class LinearMap:
    """A linear operator given by the images of basis symbols.

    A map built with a ``window`` only produces the listed target symbols;
    ``support`` then holds the source symbols whose images can reach them.
    """

    name: str
    source: SpaceContext
    target: SpaceContext
    image: ImageFn
    window: Optional[FrozenSet[BasisSymbol]] = None
    support: Optional[FrozenSet[BasisSymbol]] = None
    _cache: Dict[BasisSymbol, Terms] = field(default_factory=dict, repr=False)

    def image_of(self, sym: BasisSymbol) -> Terms:
        if sym not in self._cache:
            self._cache[sym] = self.image(sym)
        return self._cache[sym]

    def __call__(self, cls: DivisorClass) -> DivisorClass:
        if cls.ctx.space_key() != self.source.space_key():
            raise UnsupportedPullbackError(
                f"{self.name} expects a class on {self.source.describe()}, got {cls.ctx.describe()}"
            )
        out: Terms = []
        for sym, value in cls.terms:
            out.extend((tsym, value * tval) for tsym, tval in self.image_of(sym))
        result = DivisorClass.from_terms(self.target, out)
        return result if self.window is None else result.restrict(self.window)

    def push_known(
        self, known: FrozenSet[BasisSymbol], source_basis: Optional[Sequence[BasisSymbol]] = None
    ) -> FrozenSet[BasisSymbol]:
        if source_basis is not None:
            basis: Iterable[BasisSymbol] = source_basis
        elif self.support is not None:
            basis = self.support
        else:
            basis = orbit_basis(self.source)
        tainted = set()
        for sym in basis:
            if sym in known:
                continue
            for tsym, _ in DivisorClass.from_terms(self.target, self.image_of(sym)).terms:
                tainted.add(tsym)
        candidates = orbit_basis(self.target) if self.window is None else self.window
        return frozenset(sym for sym in candidates if sym not in tainted)


def _frozen(window: Optional[Iterable[BasisSymbol]]) -> Optional[FrozenSet[BasisSymbol]]:
    return None if window is None else frozenset(window)


def _require_full_pointed(ctx: SpaceContext, what: str) -> None:
    if ctx.kind is not SpaceKind.pointed or ctx.symmetric:
        raise UnsupportedPullbackError(f"{what} needs a full pointed context, got {ctx.describe()}")


def forgetful_map(ctx: SpaceContext, which: Optional[int] = None) -> LinearMap:
    """Pullback along the map forgetting the point labelled ``which`` of n+1 points."""
    _require_full_pointed(ctx, "forgetful pullback")
    n = ctx.n + 1
    w = n if which is None else which
    if not 1 <= w <= n:
        raise UnsupportedPullbackError(f"new label {w} outside 1..{n}")
    target = SpaceContext.pointed(ctx.g, n, level=ctx.level)

    def up(label: int) -> int:
        return label if label < w else label + 1

    def image(sym: BasisSymbol) -> Terms:
        if sym.kind is SymbolKind.psi:
            return [(psi(up(sym.i)), ONE), (delta(0, (up(sym.i), w)), -ONE)]
        if sym.kind is SymbolKind.omega:
            return [(omega(up(sym.i)), ONE)]
        if sym.kind is SymbolKind.delta:
            moved = tuple(up(x) for x in sym.labels)
            return [(delta(sym.i, moved), ONE), (delta(sym.i, moved + (w,)), ONE)]
        return [(sym, ONE)]

    return LinearMap(f"forget[{w}]", ctx, target, image)


def forgetful_pullback(cls: DivisorClass, which: Optional[int] = None) -> DivisorClass:
    return forgetful_map(cls.ctx, which)(cls)


def multi_forgetful_map(ctx: SpaceContext, kept: Iterable[int], n: int) -> LinearMap:
    """Pullback along forgetting every label of 1..n outside ``kept``.

    The points of ``ctx`` are relabelled order-preservingly onto ``kept``.
    """
    _require_full_pointed(ctx, "multi-forgetful pullback")
    kept_sorted = tuple(sorted(set(kept)))
    if len(kept_sorted) != ctx.n or any(not 1 <= x <= n for x in kept_sorted):
        raise UnsupportedPullbackError(
            f"kept labels {kept_sorted} do not match {ctx.n} points inside 1..{n}"
        )
    forgotten = tuple(x for x in range(1, n + 1) if x not in kept_sorted)
    extensions = [
        combo for size in range(len(forgotten) + 1) for combo in combinations(forgotten, size)
    ]
    target = SpaceContext.pointed(ctx.g, n, level=ctx.level)

    def image(sym: BasisSymbol) -> Terms:
        if sym.kind is SymbolKind.psi:
            label = kept_sorted[sym.i - 1]
            terms: Terms = [(psi(label), ONE)]
            terms.extend((delta(0, (label,) + ext), -ONE) for ext in extensions if ext)
            return terms
        if sym.kind is SymbolKind.omega:
            return [(omega(kept_sorted[sym.i - 1]), ONE)]
        if sym.kind is SymbolKind.delta:
            moved = tuple(kept_sorted[x - 1] for x in sym.labels)
            return [(delta(sym.i, moved + ext), ONE) for ext in extensions]
        return [(sym, ONE)]

    return LinearMap(f"forget-to{kept_sorted}", ctx, target, image)


def multi_forgetful_pullback(cls: DivisorClass, kept: Iterable[int], n: int) -> DivisorClass:
    return multi_forgetful_map(cls.ctx, kept, n)(cls)


def iterated_forgetful_pullback(
    cls: DivisorClass, kept: Iterable[int], n: int, order: Optional[Sequence[int]] = None
) -> DivisorClass:
    """Same as ``multi_forgetful_pullback`` but one label at a time, in ``order``."""
    current = sorted(set(kept))
    if len(current) != cls.ctx.n:
        raise UnsupportedPullbackError(f"kept labels {current} do not match {cls.ctx.n} points")
    missing = [x for x in range(1, n + 1) if x not in current]
    steps = list(order) if order is not None else missing
    if sorted(steps) != missing:
        raise UnsupportedPullbackError(f"order {steps} is not a permutation of {missing}")
    result = cls
    for label in steps:
        position = bisect_left(current, label) + 1
        result = forgetful_pullback(result, which=position)
        current.insert(position - 1, label)
    return result


def _unpointed_index(sym: BasisSymbol, what: str) -> int:
    if sym.kind in (SymbolKind.delta, SymbolKind.delta_orbit) and not sym.labels and (
        not sym.counts or sym.counts == (0,)
    ):
        return sym.i
    raise UnsupportedPullbackError(f"{what} is not defined on {sym.name}")


def _target_boundary(
    target: SpaceContext, window: Optional[Iterable[BasisSymbol]]
) -> List[BasisSymbol]:
    if window is None:
        return boundary_basis(target)
    return [sym for sym in window if sym.is_boundary]


def glue_map(
    ctx: SpaceContext, n: int, window: Optional[Iterable[BasisSymbol]] = None
) -> LinearMap:
    """Pullback along gluing n point pairs of genus h-n curves into genus h.

    Defined on span{lambda, delta_irr, delta_j} of the unpointed space only.
    With ``window`` the images only carry the listed target symbols.
    """
    if ctx.kind is not SpaceKind.pointed or ctx.n != 0:
        raise UnsupportedPullbackError(
            f"gluing pullback needs an unpointed source, got {ctx.describe()}"
        )
    h = ctx.g
    target = SpaceContext.nodal(h - n, n, level=ctx.level)
    g = target.g
    window = _frozen(window)
    nodal_boundary = _target_boundary(target, window)
    by_genus: Dict[int, List[BasisSymbol]] = {}
    for b in nodal_boundary:
        if b.counts[1] == 0:
            by_genus.setdefault(b.i + b.counts[0], []).append(b)

    def image(sym: BasisSymbol) -> Terms:
        if sym.kind is SymbolKind.lambda_:
            return [(lam(), ONE)]
        if sym.kind is SymbolKind.delta_irr:
            terms: Terms = [(psi_total(), -ONE), (delta_irr(), ONE)]
            terms.extend((b, ONE) for b in nodal_boundary if b.counts[1] >= 1)
            return terms
        j = _unpointed_index(sym, "gluing pullback")
        hits = by_genus.get(j, []) + (by_genus.get(h - j, []) if h - j != j else [])
        return [(b, ONE) for b in hits]

    logger.debug("gluing map genus %d -> nodal(%d, %d)", h, g, n)
    return LinearMap(f"glue[{n}]", ctx, target, image, window)


def glue_pullback(cls: DivisorClass, n: int) -> DivisorClass:
    return glue_map(cls.ctx, n)(cls)


def unpointed_map(
    ctx: SpaceContext, target: SpaceContext, window: Optional[Iterable[BasisSymbol]] = None
) -> LinearMap:
    """Pullback from the unpointed space of genus g to any pointed space or quotient."""
    if ctx.kind is not SpaceKind.pointed or ctx.n != 0:
        raise UnsupportedPullbackError(f"source must be unpointed, got {ctx.describe()}")
    if target.g != ctx.g or target.kind is SpaceKind.hyperelliptic:
        raise UnsupportedPullbackError(f"cannot pull back to {target.describe()}")
    window = _frozen(window)
    g = ctx.g
    by_index: Dict[int, List[BasisSymbol]] = {}
    for b in _target_boundary(target, window):
        if b.kind is not SymbolKind.eta:
            by_index.setdefault(b.i, []).append(b)

    def image(sym: BasisSymbol) -> Terms:
        if sym.kind in (SymbolKind.lambda_, SymbolKind.delta_irr):
            return [(sym, ONE)]
        j = _unpointed_index(sym, "forgetful pullback")
        hits = by_index.get(j, []) + (by_index.get(g - j, []) if g - j != j else [])
        return [(b, ONE) for b in hits]

    return LinearMap("forget-all", ctx, target, image, window)


def pullback_from_unpointed(cls: DivisorClass, target: SpaceContext) -> DivisorClass:
    return unpointed_map(cls.ctx, target)(cls)


def permute_symbol(sym: BasisSymbol, perm: Mapping[int, int]) -> BasisSymbol:
    if sym.kind is SymbolKind.psi:
        return psi(perm[sym.i])
    if sym.kind is SymbolKind.omega:
        return omega(perm[sym.i])
    if sym.kind is SymbolKind.delta:
        return delta(sym.i, (perm[x] for x in sym.labels))
    if sym.kind is SymbolKind.eta:
        return eta(sym.i, (perm[x] for x in sym.labels))
    return sym


def permute_class(cls: DivisorClass, perm: Mapping[int, int]) -> DivisorClass:
    return DivisorClass.from_terms(
        cls.ctx, [(permute_symbol(sym, perm), value) for sym, value in cls.terms]
    )


def _swap(n: int, pairs: Iterable[Tuple[int, int]]) -> Dict[int, int]:
    perm = {x: x for x in range(1, n + 1)}
    for a, b in pairs:
        perm[a], perm[b] = b, a
    return perm


def group_generators(group: GroupDescriptor, num_labels: int) -> List[Dict[int, int]]:
    """Generating permutations of the label group, as dicts on 1..num_labels."""
    if group.kind is GroupKind.full_symmetric:
        return [_swap(num_labels, [(x, x + 1)]) for x in range(1, num_labels)]
    if group.kind is GroupKind.partition:
        if sum(group.partition) != num_labels:
            raise InvalidContextError(f"partition {group.partition} does not cover {num_labels}")
        gens = []
        start = 1
        for size in group.partition:
            gens.extend(_swap(num_labels, [(x, x + 1)]) for x in range(start, start + size - 1))
            start += size
        return gens
    if num_labels % 2:
        raise InvalidContextError("the pair group needs an even number of labels")
    pairs = num_labels // 2
    gens = [_swap(num_labels, [(x, pairs + x)]) for x in range(1, pairs + 1)]
    gens.extend(
        _swap(num_labels, [(x, x + 1), (pairs + x, pairs + x + 1)]) for x in range(1, pairs)
    )
    return gens


def symmetrize(
    cls: DivisorClass, group: Optional[GroupDescriptor] = None, max_orbit: int = 100_000
) -> DivisorClass:
    """Sum of the distinct images of ``cls`` under the label group.

    The orbit is found by breadth-first search over the group generators.
    """
    if cls.ctx.uses_orbits:
        raise UnsupportedPullbackError("symmetrize acts on full S-indexed classes")
    group = group or GroupDescriptor(GroupKind.full_symmetric)
    gens = group_generators(group, cls.ctx.num_labels)
    seen = {cls}
    queue = deque([cls])
    while queue:
        current = queue.popleft()
        for perm in gens:
            moved = permute_class(current, perm)
            if moved not in seen:
                seen.add(moved)
                if len(seen) > max_orbit:
                    raise InvalidContextError(f"orbit larger than {max_orbit} classes")
                queue.append(moved)
    logger.debug("symmetrize: orbit of %d classes under %s", len(seen), group.kind.value)
    out: Terms = [term for member in seen for term in member.terms]
    return DivisorClass.from_terms(cls.ctx, out)


def cover_context(ctx: SpaceContext) -> SpaceContext:
    """The full S-indexed context whose classes the orbit basis of ``ctx`` sums."""
    if ctx.kind is SpaceKind.nodal:
        return SpaceContext.pointed(ctx.g, 2 * ctx.n, level=ctx.level)
    if ctx.kind is SpaceKind.partition:
        return SpaceContext.pointed(ctx.g, ctx.n, level=ctx.level)
    if ctx.kind is SpaceKind.hyperelliptic:
        return SpaceContext.hyperelliptic(ctx.g, ctx.n, level=ctx.level)
    if ctx.g == 0:
        raise InvalidContextError("genus 0 quotients have no full basis here")
    return SpaceContext.pointed(ctx.g, ctx.n, level=ctx.level)


def orbit_of(sym: BasisSymbol, orbit_ctx: SpaceContext) -> Optional[BasisSymbol]:
    """The orbit symbol of ``orbit_ctx`` containing the full symbol ``sym``."""
    kind = sym.kind
    if kind is SymbolKind.psi:
        return psi_total()
    if kind is SymbolKind.omega:
        raise InvalidSymbolError("omega classes have no orbit form; change basis first")
    if kind is SymbolKind.eta:
        return canonicalize(eta_orbit(sym.i, len(sym.labels)), orbit_ctx)
    if kind is not SymbolKind.delta:
        return sym
    labels = set(sym.labels)
    if orbit_ctx.kind is SpaceKind.nodal:
        pairs = orbit_ctx.n
        full = sum(1 for x in range(1, pairs + 1) if x in labels and x + pairs in labels)
        single = sum(1 for x in range(1, pairs + 1) if (x in labels) != (x + pairs in labels))
        return canonicalize(delta_pair(sym.i, full, single), orbit_ctx)
    if orbit_ctx.kind is SpaceKind.partition:
        counts = []
        start = 1
        for size in orbit_ctx.partition:
            counts.append(sum(1 for x in range(start, start + size) if x in labels))
            start += size
        return canonicalize(delta_block(sym.i, counts), orbit_ctx)
    return canonicalize(delta_orbit(sym.i, len(labels)), orbit_ctx)


@lru_cache(maxsize=64)
def orbit_members(orbit_ctx: SpaceContext) -> Dict[BasisSymbol, Tuple[BasisSymbol, ...]]:
    """Map each orbit symbol of ``orbit_ctx`` to the full symbols it sums."""
    full_ctx = cover_context(orbit_ctx)
    members: Dict[BasisSymbol, List[BasisSymbol]] = {}
    for sym in orbit_basis(full_ctx):
        orb = orbit_of(sym, orbit_ctx)
        if orb is not None:
            members.setdefault(orb, []).append(sym)
    return {orb: tuple(syms) for orb, syms in members.items()}


def expansion_map(orbit_ctx: SpaceContext) -> LinearMap:
    if not orbit_ctx.uses_orbits:
        raise UnsupportedPullbackError(f"{orbit_ctx.describe()} already uses the full basis")
    full_ctx = cover_context(orbit_ctx)
    members = orbit_members(orbit_ctx)

    def image(sym: BasisSymbol) -> Terms:
        return [(m, ONE) for m in members.get(sym, (sym,))]

    return LinearMap("expand", orbit_ctx, full_ctx, image)


def expand_orbits(cls: DivisorClass) -> DivisorClass:
    """Write an orbit-basis class as the sum of full S-indexed classes."""
    return expansion_map(cls.ctx)(cls)


def collapse_orbits(cls: DivisorClass, orbit_ctx: SpaceContext) -> DivisorClass:
    """Rewrite an invariant full-basis class in the orbit basis of ``orbit_ctx``.

    Raises ``InvalidSymbolError`` when the coefficients differ inside an orbit.
    """
    if cls.ctx.space_key() != cover_context(orbit_ctx).space_key():
        raise UnsupportedPullbackError(
            f"{cls.ctx.describe()} is not the cover of {orbit_ctx.describe()}"
        )
    coeffs = cls.as_dict()
    out: Terms = []
    for orb, syms in orbit_members(orbit_ctx).items():
        values = {coeffs.get(sym, Fraction(0)) for sym in syms}
        if len(values) > 1:
            raise InvalidSymbolError(f"class is not invariant on the orbit {orb.name}")
        out.append((orb, values.pop()))
    return DivisorClass.from_terms(orbit_ctx, out)


def restrict_orbits(cls: DivisorClass, target: SpaceContext) -> DivisorClass:
    """Read a symmetric pointed class in the coarser orbit basis of a subgroup quotient."""
    return restriction_map(cls.ctx, target)(cls)


def _restriction_key(sym: BasisSymbol, source: SpaceContext) -> Optional[BasisSymbol]:
    """The symbol of the symmetric ``source`` that restricts onto ``sym``."""
    if not sym.is_boundary:
        return sym
    if sym.kind is SymbolKind.delta_pair:
        size = 2 * sym.counts[0] + sym.counts[1]
    else:
        size = sum(sym.counts)
    return canonicalize(delta_orbit(sym.i, size), source)


def restriction_support(
    ctx: SpaceContext, window: Iterable[BasisSymbol]
) -> FrozenSet[BasisSymbol]:
    """Symbols of the symmetric ``ctx`` whose restriction meets ``window``."""
    keys = (_restriction_key(sym, ctx) for sym in window)
    return frozenset(key for key in keys if key is not None)


def restriction_map(
    ctx: SpaceContext, target: SpaceContext, window: Optional[Iterable[BasisSymbol]] = None
) -> LinearMap:
    if ctx.kind is not SpaceKind.pointed or not ctx.symmetric:
        raise UnsupportedPullbackError(f"restriction needs a symmetric source, got {ctx.describe()}")
    if target.g != ctx.g or target.num_labels != ctx.n or target.kind not in (
        SpaceKind.nodal,
        SpaceKind.partition,
    ):
        raise UnsupportedPullbackError(
            f"cannot restrict {ctx.describe()} to {target.describe()}"
        )
    window = _frozen(window)
    by_orbit: Dict[BasisSymbol, List[BasisSymbol]] = {}
    for sym in (orbit_basis(target) if window is None else window):
        key = _restriction_key(sym, ctx)
        if sym.is_boundary and key is not None:
            by_orbit.setdefault(key, []).append(sym)

    def image(sym: BasisSymbol) -> Terms:
        if sym.kind is SymbolKind.delta_orbit:
            return [(t, ONE) for t in by_orbit.get(sym, [])]
        return [(sym, ONE)]

    support = None if window is None else restriction_support(ctx, window)
    return LinearMap("restrict", ctx, target, image, window, support)


def _omega_correction(label: int, n: int) -> List[BasisSymbol]:
    others = [x for x in range(1, n + 1) if x != label]
    return [
        delta(0, (label,) + rest)
        for size in range(1, len(others) + 1)
        for rest in combinations(others, size)
    ]


def omega_map(ctx: SpaceContext, inverse: bool = False) -> LinearMap:
    """omega_i = psi_i - sum of delta_{0,S} over S containing i with |S| >= 2."""
    _require_full_pointed(ctx, "omega base change")
    n = ctx.n

    def image(sym: BasisSymbol) -> Terms:
        if not inverse and sym.kind is SymbolKind.omega:
            terms: Terms = [(psi(sym.i), ONE)]
            terms.extend((d, -ONE) for d in _omega_correction(sym.i, n))
            return terms
        if inverse and sym.kind is SymbolKind.psi:
            terms = [(omega(sym.i), ONE)]
            terms.extend((d, ONE) for d in _omega_correction(sym.i, n))
            return terms
        return [(sym, ONE)]

    return LinearMap("omega-inverse" if inverse else "omega", ctx, ctx, image)


def omega_basechange(cls: DivisorClass, inverse: bool = False) -> DivisorClass:
    return omega_map(cls.ctx, inverse)(cls)


def hyperelliptic_map(ctx: SpaceContext, level: Level = Level.coarse) -> LinearMap:
    """Restriction to the hyperelliptic locus with the Hodge class eliminated."""
    if ctx.kind is not SpaceKind.pointed or ctx.g < 2:
        raise UnsupportedPullbackError(f"cannot restrict {ctx.describe()} to the hyperelliptic locus")
    g = ctx.g
    target = SpaceContext.hyperelliptic(g, ctx.n, level=level, symmetric=ctx.symmetric)
    eta_classes = [b for b in boundary_basis(target) if b.kind in (SymbolKind.eta, SymbolKind.eta_orbit)]
    delta_classes = [b for b in boundary_basis(target) if b.kind in (SymbolKind.delta, SymbolKind.delta_orbit)]
    scale = Fraction(1, 8 * g + 4)
    lambda_terms: Terms = [(eta0(), g * scale)]
    lambda_terms.extend((e, 2 * (e.i + 1) * (g - e.i) * scale) for e in eta_classes)
    lambda_terms.extend((d, 4 * d.i * (g - d.i) * scale) for d in delta_classes if d.i)
    irr_terms: Terms = [(eta0(), ONE)]
    irr_terms.extend((e, Fraction(2)) for e in eta_classes)

    def image(sym: BasisSymbol) -> Terms:
        if sym.kind is SymbolKind.lambda_:
            return lambda_terms
        if sym.kind is SymbolKind.delta_irr:
            return irr_terms
        if sym.kind is SymbolKind.omega:
            raise UnsupportedPullbackError("change omega classes to psi before restricting")
        return [(sym, ONE)]

    return LinearMap("hyperelliptic", ctx, target, image)


def hyperelliptic_restrict(cls: DivisorClass, level: Level = Level.coarse) -> DivisorClass:
    return hyperelliptic_map(cls.ctx, level)(cls)


def rational_quotient_pullback(cls: DivisorClass, level: Level = Level.coarse) -> DivisorClass:
    """Pull a class on M_{0,2g+2}/S_{2g+2} back to the hyperelliptic locus of genus g."""
    ctx = cls.ctx
    if ctx.kind is not SpaceKind.pointed or ctx.g != 0 or ctx.n % 2 or ctx.n < 6:
        raise UnsupportedPullbackError(
            f"expected M_0,2g+2 / S_2g+2 with g >= 2, got {ctx.describe()}"
        )
    g = (ctx.n - 2) // 2
    target = SpaceContext.hyperelliptic(g, 0, level=level)

    def image(sym: BasisSymbol) -> Terms:
        s = sym.counts[0]
        if s % 2 == 0:
            i = (s - 2) // 2
            return [(eta0() if i == 0 else eta(i), ONE)]
        return [(delta((s - 1) // 2), Fraction(1, 2))]

    return LinearMap("rational-quotient", ctx, target, image)(cls)


def forgetful_orbit_map(ctx: SpaceContext) -> LinearMap:
    """Sum of the pullbacks along all n forgetful maps, on symmetric orbit bases."""
    if ctx.kind is not SpaceKind.pointed or not ctx.symmetric or ctx.g == 0:
        raise UnsupportedPullbackError(f"needs a symmetric pointed source, got {ctx.describe()}")
    n = ctx.n + 1
    target = SpaceContext.pointed(ctx.g, n, level=ctx.level, symmetric=True)
    full_source = cover_context(ctx)
    expand = expansion_map(ctx)
    pulls = [forgetful_map(full_source, which=j) for j in range(1, n + 1)]

    def image(sym: BasisSymbol) -> Terms:
        expanded = expand(DivisorClass.of(ctx, sym))
        total: Terms = []
        for pull in pulls:
            total.extend(pull(expanded).terms)
        summed = DivisorClass.from_terms(cover_context(target), total)
        return list(collapse_orbits(summed, target).terms)

    return LinearMap("forget-sum", ctx, target, image)


def forgetful_orbit_sum(cls: DivisorClass) -> DivisorClass:
    return forgetful_orbit_map(cls.ctx)(cls)
