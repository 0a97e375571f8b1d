"""Reid-Tai ages of diagonal finite-order actions."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Any, Dict, List, Tuple

from ..core.errors import InvalidContextError
from ..core.picard_basis import fraction_to_str
from ..core.state import ActionClass

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DiagonalAction:
    """diag(zeta^a_1, ..., zeta^a_d) for a primitive m-th root of unity zeta."""

    m: int
    exponents: Tuple[int, ...]

    def __post_init__(self) -> None:
        if self.m < 1:
            raise InvalidContextError(f"order must be >= 1, got {self.m}")
        bad = [a for a in self.exponents if not 0 <= a < self.m]
        if bad:
            raise InvalidContextError(f"exponents {bad} are not in 0..{self.m - 1}")

    @classmethod
    def reduced(cls, m: int, exponents: Tuple[int, ...]) -> "DiagonalAction":
        return cls(m, tuple(a % m for a in exponents))

    @property
    def dimension(self) -> int:
        return len(self.exponents)

    def units(self) -> List[int]:
        return [u for u in range(1, self.m + 1) if gcd(u, self.m) == 1] if self.m > 1 else [1]

    def to_dict(self) -> Dict[str, Any]:
        return {"order": self.m, "exponents": list(self.exponents)}


def age(action: DiagonalAction, unit: int = 1) -> Fraction:
    """sum((u * a_i) mod m) / m, the age with respect to zeta^u."""
    if gcd(unit, action.m) != 1:
        raise InvalidContextError(f"unit {unit} is not coprime to {action.m}")
    return Fraction(sum((unit * a) % action.m for a in action.exponents), action.m)


def unit_ages(action: DiagonalAction) -> Dict[int, Fraction]:
    return {u: age(action, u) for u in action.units()}


def inverse_action(action: DiagonalAction) -> DiagonalAction:
    return DiagonalAction.reduced(action.m, tuple(-a for a in action.exponents))


def classify(action: DiagonalAction) -> ActionClass:
    nonzero = sum(1 for a in action.exponents if a)
    if nonzero == 0:
        return ActionClass.identity
    if nonzero == 1:
        return ActionClass.quasireflection
    if all(value >= 1 for value in unit_ages(action).values()):
        return ActionClass.senior
    return ActionClass.junior


def hyperelliptic_tangent_action(
    g: int, m: int, hyperelliptic_involution: bool = False
) -> DiagonalAction:
    """Action on the invariant quadratic differentials x^j (dx/y)^2, j = 0..2g-2.

    An automorphism of order m scaling x by zeta has exponents k mod m for
    k = 2..2g. The hyperelliptic involution acts trivially.
    """
    if g < 2:
        raise InvalidContextError(f"genus must be >= 2, got {g}")
    if not 2 <= m <= 2 * g + 2:
        raise InvalidContextError(f"order {m} is outside 2..{2 * g + 2}")
    if hyperelliptic_involution:
        if m != 2:
            raise InvalidContextError("the hyperelliptic involution has order 2")
        return DiagonalAction(2, (0,) * (2 * g - 1))
    return DiagonalAction.reduced(m, tuple(range(2, 2 * g + 1)))


def nonhyperelliptic_involution_action(g: int) -> DiagonalAction:
    return hyperelliptic_tangent_action(g, 2)


def describe_action(action: DiagonalAction, all_units: bool = False) -> Dict[str, Any]:
    """JSON-ready summary; the age field is taken with respect to zeta itself."""
    data: Dict[str, Any] = action.to_dict()
    data["age"] = fraction_to_str(age(action))
    if all_units:
        data["unit_ages"] = {str(u): fraction_to_str(v) for u, v in unit_ages(action).items()}
    data["classification"] = classify(action).value
    logger.debug("classified order %d action as %s", action.m, data["classification"])
    return data
