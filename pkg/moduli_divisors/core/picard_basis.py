"""Basis symbols and exact divisor classes on moduli of pointed curves.

A ``DivisorClass`` is a sparse vector of ``Fraction`` coefficients keyed by
canonical ``BasisSymbol`` values. Symbols are canonicalized on the way in, so
two classes are equal exactly when their coefficient tuples are equal.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from typing import Any, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from .config import DEFAULT_CONFIG
from .errors import InvalidContextError, InvalidSymbolError, MixedContextError
from .state import SpaceContext, SpaceKind

Number = Union[int, Fraction]


class SymbolKind(str, Enum):
    lambda_ = "lambda"
    psi = "psi"
    psi_total = "psi_total"
    omega = "omega"
    delta_irr = "delta_irr"
    delta = "delta"
    delta_orbit = "delta_orbit"
    delta_pair = "delta_pair"
    delta_block = "delta_block"
    eta0 = "eta0"
    eta = "eta"
    eta_orbit = "eta_orbit"


_RANK = {
    SymbolKind.lambda_: (0, 0),
    SymbolKind.psi: (1, 0),
    SymbolKind.psi_total: (1, 0),
    SymbolKind.omega: (1, 1),
    SymbolKind.delta_irr: (2, 0),
    SymbolKind.eta0: (2, 1),
    SymbolKind.eta: (3, 0),
    SymbolKind.eta_orbit: (3, 0),
    SymbolKind.delta: (4, 0),
    SymbolKind.delta_orbit: (4, 0),
    SymbolKind.delta_pair: (4, 0),
    SymbolKind.delta_block: (4, 0),
}

_BOUNDARY = (
    SymbolKind.delta,
    SymbolKind.delta_orbit,
    SymbolKind.delta_pair,
    SymbolKind.delta_block,
)


@dataclass(frozen=True)
class BasisSymbol:
    """One generator of Pic tensor Q.

    ``i`` is the genus index of a boundary class or the label of a point
    class. ``labels`` holds the set S of an S-indexed class and ``counts``
    holds the size descriptors of an orbit class: ``(s,)`` for a symmetric
    orbit, ``(a, b)`` for pairs and singles, one entry per block otherwise.
    """

    kind: SymbolKind
    i: int = 0
    labels: Tuple[int, ...] = ()
    counts: Tuple[int, ...] = ()

    @property
    def name(self) -> str:
        kind = self.kind
        if kind is SymbolKind.lambda_:
            return "lambda"
        if kind is SymbolKind.psi:
            return f"psi_{self.i}"
        if kind is SymbolKind.psi_total:
            return "psi_total"
        if kind is SymbolKind.omega:
            return f"omega_{self.i}"
        if kind is SymbolKind.delta_irr:
            return "delta_irr"
        if kind is SymbolKind.eta0:
            return "eta_0"
        stem = "eta" if kind in (SymbolKind.eta, SymbolKind.eta_orbit) else "delta"
        if kind in (SymbolKind.delta, SymbolKind.eta):
            body = "{" + ",".join(str(x) for x in self.labels) + "}"
        elif kind in (SymbolKind.delta_orbit, SymbolKind.eta_orbit):
            body = f"s={self.counts[0]}"
        elif kind is SymbolKind.delta_pair:
            body = f"{self.counts[0]},{self.counts[1]}"
        else:
            body = "(" + ",".join(str(c) for c in self.counts) + ")"
        return f"{stem}[{self.i};{body}]"

    @property
    def is_boundary(self) -> bool:
        return self.kind in _BOUNDARY

    def sort_key(self) -> Tuple[Any, ...]:
        rank = _RANK[self.kind]
        return (rank, self.i, self.counts, len(self.labels), self.labels)

    def __lt__(self, other: "BasisSymbol") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        return self.name


def lam() -> BasisSymbol:
    return BasisSymbol(SymbolKind.lambda_)


def psi(i: int) -> BasisSymbol:
    return BasisSymbol(SymbolKind.psi, i)


def psi_total() -> BasisSymbol:
    return BasisSymbol(SymbolKind.psi_total)


def omega(i: int) -> BasisSymbol:
    return BasisSymbol(SymbolKind.omega, i)


def delta_irr() -> BasisSymbol:
    return BasisSymbol(SymbolKind.delta_irr)


def delta(i: int, labels: Iterable[int] = ()) -> BasisSymbol:
    return BasisSymbol(SymbolKind.delta, i, tuple(sorted(set(labels))))


def delta_orbit(i: int, s: int) -> BasisSymbol:
    return BasisSymbol(SymbolKind.delta_orbit, i, counts=(s,))


def delta_pair(i: int, a: int, b: int) -> BasisSymbol:
    return BasisSymbol(SymbolKind.delta_pair, i, counts=(a, b))


def delta_block(i: int, counts: Iterable[int]) -> BasisSymbol:
    return BasisSymbol(SymbolKind.delta_block, i, counts=tuple(counts))


def eta0() -> BasisSymbol:
    return BasisSymbol(SymbolKind.eta0)


def eta(i: int, labels: Iterable[int] = ()) -> BasisSymbol:
    return BasisSymbol(SymbolKind.eta, i, tuple(sorted(set(labels))))


def eta_orbit(i: int, s: int) -> BasisSymbol:
    return BasisSymbol(SymbolKind.eta_orbit, i, counts=(s,))


_SIMPLE_NAMES = {
    "lambda": lam(),
    "psi_total": psi_total(),
    "psi": psi_total(),
    "delta_irr": delta_irr(),
    "eta_0": eta0(),
}
_POINT_RE = re.compile(r"^(psi|omega)_(\d+)$")
_BOUNDARY_RE = re.compile(r"^(delta|eta)\[(\d+);(.*)\]$")


def parse_symbol(text: str) -> BasisSymbol:
    """Inverse of ``BasisSymbol.name``."""
    text = text.strip()
    if text in _SIMPLE_NAMES:
        return _SIMPLE_NAMES[text]
    match = _POINT_RE.match(text)
    if match:
        label = int(match.group(2))
        return psi(label) if match.group(1) == "psi" else omega(label)
    match = _BOUNDARY_RE.match(text)
    if not match:
        raise InvalidSymbolError(f"cannot parse basis symbol {text!r}")
    stem, i, body = match.group(1), int(match.group(2)), match.group(3).replace(" ", "")
    try:
        if body.startswith("{") and body.endswith("}"):
            inner = body[1:-1]
            labels = [int(x) for x in inner.split(",")] if inner else []
            return delta(i, labels) if stem == "delta" else eta(i, labels)
        if body.startswith("s="):
            s = int(body[2:])
            return delta_orbit(i, s) if stem == "delta" else eta_orbit(i, s)
        if stem == "delta" and body.startswith("(") and body.endswith(")"):
            return delta_block(i, [int(x) for x in body[1:-1].split(",") if x])
        if stem == "delta":
            a, b = (int(x) for x in body.split(","))
            return delta_pair(i, a, b)
    except ValueError as exc:
        raise InvalidSymbolError(f"cannot parse basis symbol {text!r}") from exc
    raise InvalidSymbolError(f"cannot parse basis symbol {text!r}")


def _pick_set_rep(
    first: Tuple[int, Tuple[int, ...]], second: Tuple[int, Tuple[int, ...]]
) -> Tuple[int, Tuple[int, ...]]:
    if first[0] != second[0]:
        return min(first, second, key=lambda rep: rep[0])
    if 1 in first[1]:
        return first
    if 1 in second[1]:
        return second
    return min(first, second)


def _check_labels(labels: Tuple[int, ...], ctx: SpaceContext, sym: BasisSymbol) -> None:
    if any(x < 1 or x > ctx.num_labels for x in labels):
        raise InvalidSymbolError(f"{sym.name} uses labels outside 1..{ctx.num_labels}")


def _allowed_kinds(ctx: SpaceContext) -> Tuple[SymbolKind, ...]:
    if ctx.kind is SpaceKind.hyperelliptic:
        if ctx.symmetric:
            return (SymbolKind.psi_total, SymbolKind.eta0, SymbolKind.eta_orbit, SymbolKind.delta_orbit)
        return (SymbolKind.psi, SymbolKind.eta0, SymbolKind.eta, SymbolKind.delta)
    if ctx.kind is SpaceKind.nodal:
        return (SymbolKind.lambda_, SymbolKind.psi_total, SymbolKind.delta_irr, SymbolKind.delta_pair)
    if ctx.kind is SpaceKind.partition:
        return (SymbolKind.lambda_, SymbolKind.psi_total, SymbolKind.delta_irr, SymbolKind.delta_block)
    if ctx.g == 0:
        return (SymbolKind.delta_orbit,)
    if ctx.symmetric:
        return (SymbolKind.lambda_, SymbolKind.psi_total, SymbolKind.delta_irr, SymbolKind.delta_orbit)
    return (
        SymbolKind.lambda_,
        SymbolKind.psi,
        SymbolKind.omega,
        SymbolKind.delta_irr,
        SymbolKind.delta,
    )


def canonicalize(sym: BasisSymbol, ctx: SpaceContext) -> Optional[BasisSymbol]:
    """Return the canonical representative of ``sym`` or ``None`` for the zero class.

    Raises ``InvalidSymbolError`` when the symbol does not belong to ``ctx``.
    """
    kind = sym.kind
    if kind not in _allowed_kinds(ctx):
        raise InvalidSymbolError(f"{sym.name} is not a basis symbol on {ctx.describe()}")
    g, n = ctx.g, ctx.num_labels
    if kind in (SymbolKind.psi, SymbolKind.omega):
        if not 1 <= sym.i <= n:
            raise InvalidSymbolError(f"{sym.name} needs a label in 1..{n}")
        return sym
    if kind in (SymbolKind.lambda_, SymbolKind.psi_total, SymbolKind.delta_irr, SymbolKind.eta0):
        if kind is SymbolKind.psi_total and n == 0:
            return None
        return BasisSymbol(kind)
    if kind is SymbolKind.delta:
        _check_labels(sym.labels, ctx, sym)
        if not 0 <= sym.i <= g:
            raise InvalidSymbolError(f"{sym.name} needs a genus index in 0..{g}")
        labels = tuple(sorted(set(sym.labels)))
        comp = tuple(x for x in range(1, n + 1) if x not in labels)
        i, chosen = _pick_set_rep((sym.i, labels), (g - sym.i, comp))
        if i == 0 and len(chosen) <= 1:
            return None
        return BasisSymbol(kind, i, chosen)
    if kind is SymbolKind.eta:
        _check_labels(sym.labels, ctx, sym)
        if not 1 <= sym.i <= g - 2:
            raise InvalidSymbolError(f"{sym.name} needs a genus index in 1..{g - 2}")
        labels = tuple(sorted(set(sym.labels)))
        comp = tuple(x for x in range(1, n + 1) if x not in labels)
        i, chosen = _pick_set_rep((sym.i, labels), (g - 1 - sym.i, comp))
        return BasisSymbol(kind, i, chosen)
    if kind in (SymbolKind.delta_orbit, SymbolKind.eta_orbit):
        if len(sym.counts) != 1 or not 0 <= sym.counts[0] <= n:
            raise InvalidSymbolError(f"{sym.name} needs a size in 0..{n}")
        s = sym.counts[0]
        top = g if kind is SymbolKind.delta_orbit else g - 1
        low = 0 if kind is SymbolKind.delta_orbit else 1
        if not low <= sym.i <= top - low:
            raise InvalidSymbolError(f"{sym.name} has genus index out of range")
        rep = min((sym.i, s), (top - sym.i, n - s))
        if kind is SymbolKind.delta_orbit and rep[0] == 0 and rep[1] <= 1:
            return None
        return BasisSymbol(kind, rep[0], counts=(rep[1],))
    if kind is SymbolKind.delta_pair:
        if len(sym.counts) != 2:
            raise InvalidSymbolError(f"{sym.name} needs (pairs, singles)")
        a, b = sym.counts
        if a < 0 or b < 0 or a + b > ctx.n or not 0 <= sym.i <= g:
            raise InvalidSymbolError(f"{sym.name} is not an orbit on {ctx.describe()}")
        rep = min((sym.i, a, b), (g - sym.i, ctx.n - a - b, b))
        if rep[0] == 0 and 2 * rep[1] + rep[2] <= 1:
            return None
        return BasisSymbol(kind, rep[0], counts=(rep[1], rep[2]))
    # delta_block
    parts = ctx.partition
    if len(sym.counts) != len(parts) or any(
        not 0 <= c <= p for c, p in zip(sym.counts, parts)
    ):
        raise InvalidSymbolError(f"{sym.name} does not fit partition {parts}")
    if not 0 <= sym.i <= g:
        raise InvalidSymbolError(f"{sym.name} needs a genus index in 0..{g}")
    comp_counts = tuple(p - c for c, p in zip(sym.counts, parts))
    i, counts = min((sym.i, sym.counts), (g - sym.i, comp_counts))
    if i == 0 and sum(counts) <= 1:
        return None
    return BasisSymbol(kind, i, counts=counts)


def _subsets(n: int) -> Iterator[Tuple[int, ...]]:
    labels = range(1, n + 1)
    for size in range(n + 1):
        yield from combinations(labels, size)


def _canonical_set(symbols: Iterable[BasisSymbol], ctx: SpaceContext) -> Tuple[BasisSymbol, ...]:
    seen = set()
    for sym in symbols:
        canon = canonicalize(sym, ctx)
        if canon is not None:
            seen.add(canon)
    return tuple(sorted(seen))


def boundary_basis(ctx: SpaceContext, cap: Optional[int] = None) -> List[BasisSymbol]:
    """Canonical boundary symbols (delta and eta, excluding delta_irr and eta_0)."""
    return list(_boundary_basis(ctx, cap))


def _raw_boundary(
    ctx: SpaceContext, cap: Optional[int]
) -> Tuple[Iterable[BasisSymbol], Iterable[BasisSymbol]]:
    """Uncanonicalized (eta, delta) symbols spanning the boundary of ``ctx``."""
    g, n = ctx.g, ctx.n
    if ctx.kind is SpaceKind.nodal:
        raw = (
            delta_pair(i, a, b)
            for i in range(g + 1)
            for a in range(n + 1)
            for b in range(n - a + 1)
        )
        return (), raw
    if ctx.kind is SpaceKind.partition:
        ranges = [range(p + 1) for p in ctx.partition]
        return (), (delta_block(i, c) for i in range(g + 1) for c in product(*ranges))
    hyper = ctx.kind is SpaceKind.hyperelliptic
    if ctx.symmetric:
        raw_delta = (delta_orbit(i, s) for i in range(g + 1) for s in range(n + 1))
        raw_eta = (eta_orbit(i, s) for i in range(1, g - 1) for s in range(n + 1)) if hyper else ()
        return raw_eta, raw_delta
    cap = DEFAULT_CONFIG.full_basis_cap if cap is None else cap
    if n > cap:
        raise InvalidContextError(
            f"full S-indexed basis requested for n = {n} above the cap {cap}; use a symmetric context"
        )
    raw_delta = (delta(i, s) for i in range(g // 2 + 1) for s in _subsets(n))
    raw_eta = (eta(i, s) for i in range(1, (g - 1) // 2 + 1) for s in _subsets(n)) if hyper else ()
    return raw_eta, raw_delta


@lru_cache(maxsize=256)
def _boundary_basis(ctx: SpaceContext, cap: Optional[int]) -> Tuple[BasisSymbol, ...]:
    raw_eta, raw_delta = _raw_boundary(ctx, cap)
    return _canonical_set(raw_eta, ctx) + _canonical_set(raw_delta, ctx)


def _orbit_head(ctx: SpaceContext, omega_classes: bool = False) -> List[BasisSymbol]:
    head: List[BasisSymbol] = []
    if ctx.kind is SpaceKind.hyperelliptic:
        if ctx.symmetric:
            head = [psi_total()] if ctx.n else []
        else:
            head = [psi(i) for i in range(1, ctx.n + 1)]
        head.append(eta0())
        return head
    if ctx.g == 0:
        return head
    head.append(lam())
    if ctx.uses_orbits:
        if ctx.num_labels:
            head.append(psi_total())
    elif omega_classes:
        head.extend(omega(i) for i in range(1, ctx.n + 1))
    else:
        head.extend(psi(i) for i in range(1, ctx.n + 1))
    head.append(delta_irr())
    return head


def orbit_basis(
    ctx: SpaceContext, omega_classes: bool = False, cap: Optional[int] = None
) -> List[BasisSymbol]:
    """Generating list of Pic tensor Q for ``ctx`` in a fixed order.

    With ``omega_classes`` the point classes of a full pointed context are the
    omega_i instead of the psi_i.
    """
    if ctx.g == 0 and ctx.kind is not SpaceKind.hyperelliptic:
        cap = None
    return _orbit_head(ctx, omega_classes) + boundary_basis(ctx, cap)


def covers_basis(
    ctx: SpaceContext, symbols: Iterable[BasisSymbol], cap: Optional[int] = None
) -> bool:
    """True when ``symbols`` contain every symbol of ``orbit_basis(ctx)``.

    The raw enumeration stops at the first missing symbol, so a short list
    is rejected without building the basis.
    """
    wanted = set(symbols)
    if any(sym not in wanted for sym in _orbit_head(ctx)):
        return False
    for raw in _raw_boundary(ctx, cap):
        for sym in raw:
            canon = canonicalize(sym, ctx)
            if canon is not None and canon not in wanted:
                return False
    return True
    if ctx.g == 0:
        return boundary_basis(ctx)
    head.append(lam())
    if ctx.uses_orbits:
        if ctx.num_labels:
            head.append(psi_total())
    elif omega_classes:
        head.extend(omega(i) for i in range(1, ctx.n + 1))
    else:
        head.extend(psi(i) for i in range(1, ctx.n + 1))
    head.append(delta_irr())
    return head + boundary_basis(ctx, cap)


@dataclass(frozen=True)
class DivisorClass:
    """Immutable sparse vector over canonical basis symbols."""

    ctx: SpaceContext
    terms: Tuple[Tuple[BasisSymbol, Fraction], ...] = ()

    @classmethod
    def from_terms(
        cls, ctx: SpaceContext, terms: Iterable[Tuple[BasisSymbol, Number]]
    ) -> "DivisorClass":
        acc: Dict[BasisSymbol, Fraction] = {}
        for sym, value in terms:
            if value == 0:
                continue
            canon = canonicalize(sym, ctx)
            if canon is None:
                continue
            total = acc.get(canon, Fraction(0)) + Fraction(value)
            if total == 0:
                acc.pop(canon, None)
            else:
                acc[canon] = total
        return cls(ctx, tuple(sorted(acc.items(), key=lambda item: item[0].sort_key())))

    @classmethod
    def zero(cls, ctx: SpaceContext) -> "DivisorClass":
        return cls(ctx)

    @classmethod
    def of(cls, ctx: SpaceContext, sym: BasisSymbol, value: Number = 1) -> "DivisorClass":
        return cls.from_terms(ctx, [(sym, value)])

    def as_dict(self) -> Dict[BasisSymbol, Fraction]:
        return dict(self.terms)

    def coeff(self, sym: BasisSymbol) -> Fraction:
        canon = canonicalize(sym, self.ctx)
        if canon is None:
            return Fraction(0)
        for key, value in self.terms:
            if key == canon:
                return value
        return Fraction(0)

    def symbols(self) -> List[BasisSymbol]:
        return [sym for sym, _ in self.terms]

    def restrict(self, symbols: Iterable[BasisSymbol]) -> "DivisorClass":
        """The class with every coefficient outside ``symbols`` dropped."""
        keep = set(symbols)
        return DivisorClass(self.ctx, tuple(term for term in self.terms if term[0] in keep))

    def is_zero(self) -> bool:
        return not self.terms

    def vector(self, basis: Sequence[BasisSymbol]) -> List[Fraction]:
        coeffs = self.as_dict()
        return [coeffs.get(sym, Fraction(0)) for sym in basis]

    def _check_same(self, other: "DivisorClass") -> None:
        if self.ctx.space_key() != other.ctx.space_key():
            raise MixedContextError(
                f"cannot combine {self.ctx.describe()} with {other.ctx.describe()}"
            )

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        self._check_same(other)
        return DivisorClass.from_terms(self.ctx, list(self.terms) + list(other.terms))

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return self + (-other)

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(self.ctx, tuple((sym, -value) for sym, value in self.terms))

    def __mul__(self, scalar: Number) -> "DivisorClass":
        if scalar == 0:
            return DivisorClass(self.ctx)
        factor = Fraction(scalar)
        return DivisorClass(self.ctx, tuple((sym, factor * value) for sym, value in self.terms))

    __rmul__ = __mul__

    def with_context(self, ctx: SpaceContext) -> "DivisorClass":
        """Same coefficients read on another level of the same space."""
        if ctx.space_key() != self.ctx.space_key():
            raise MixedContextError(f"{ctx.describe()} is a different space")
        return DivisorClass(ctx, self.terms)

    def format(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for sym, value in self.terms:
            sign = "-" if value < 0 else "+"
            parts.append(f"{sign} {abs(value)}*{sym.name}")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[1:]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "ctx": self.ctx.to_dict(),
            "coeffs": [[sym.name, fraction_to_str(value)] for sym, value in self.terms],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "DivisorClass":
        ctx = SpaceContext.from_dict(data["ctx"])
        return cls.from_terms(
            ctx, [(parse_symbol(name), parse_fraction(value)) for name, value in data["coeffs"]]
        )


def fraction_to_str(value: Fraction) -> str:
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def parse_fraction(text: Union[str, int, Fraction]) -> Fraction:
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidSymbolError(f"not a rational number: {text!r}") from exc


def combine(
    terms: Iterable[Tuple[Number, DivisorClass]], ctx: Optional[SpaceContext] = None
) -> DivisorClass:
    """Exact linear combination sum(c * D); all classes must share one space."""
    items = list(terms)
    if ctx is None:
        if not items:
            raise MixedContextError("combine needs a context when no terms are given")
        ctx = items[0][1].ctx
    key = ctx.space_key()
    flat: List[Tuple[BasisSymbol, Fraction]] = []
    for scalar, cls in items:
        if cls.ctx.space_key() != key:
            raise MixedContextError(
                f"cannot combine {cls.ctx.describe()} with {ctx.describe()}"
            )
        factor = Fraction(scalar)
        flat.extend((sym, factor * value) for sym, value in cls.terms)
    return DivisorClass.from_terms(ctx, flat)


def psi_class(ctx: SpaceContext) -> DivisorClass:
    """The total point class: psi_total on orbit bases, the sum of psi_i otherwise."""
    if ctx.uses_orbits:
        return DivisorClass.of(ctx, psi_total())
    return DivisorClass.from_terms(ctx, [(psi(i), 1) for i in range(1, ctx.n + 1)])


def boundary_total(
    ctx: SpaceContext, window: Optional[Iterable[BasisSymbol]] = None
) -> DivisorClass:
    """delta = delta_irr plus every boundary class with coefficient one.

    With ``window`` only the boundary symbols listed there are written out.
    """
    symbols = boundary_basis(ctx) if window is None else [
        sym for sym in window if sym.is_boundary
    ]
    terms: List[Tuple[BasisSymbol, Number]] = [(delta_irr(), 1)]
    terms.extend((sym, 1) for sym in symbols if sym.kind is not SymbolKind.eta)
    return DivisorClass.from_terms(ctx, terms)
