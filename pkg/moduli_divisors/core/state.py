from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Tuple

from .errors import InvalidContextError


class SpaceKind(str, Enum):
    pointed = "pointed"
    nodal = "nodal"
    partition = "partition"
    hyperelliptic = "hyperelliptic"


class Level(str, Enum):
    stack = "stack"
    coarse = "coarse"


class Mode(str, Enum):
    full = "full"
    reduced = "reduced"


class Verdict(str, Enum):
    general_type = "GeneralType"
    effective = "Effective"
    infeasible = "Infeasible"


class GroupKind(str, Enum):
    full_symmetric = "full_symmetric"
    partition = "partition"
    nodal_pair = "nodal_pair"


class SlopeSource(str, Enum):
    brill_noether = "BN"
    gieseker_petri = "GP"
    special = "Special"


class TableName(str, Enum):
    nodal = "nodal"
    prop1 = "prop1"
    prop2 = "prop2"
    difvar = "difvar"
    hyperelliptic = "hyperelliptic"
    reference = "reference"


class Provenance(str, Enum):
    published = "published"
    formula = "formula"
    cataloged = "cataloged"


class ActionClass(str, Enum):
    identity = "Identity"
    quasireflection = "Quasireflection"
    junior = "Junior"
    senior = "Senior"


@dataclass(frozen=True)
class SpaceContext:
    """Which moduli space (or quotient) a divisor class lives on.

    ``n`` counts marked points, except for the nodal quotient where it counts
    node pairs and the labels run over 2n points grouped as (i, n+i).
    ``symmetric`` selects the S_n-orbit basis on pointed and hyperelliptic
    spaces; nodal and partition quotients always use their orbit basis.
    A pointed context of genus 0 is allowed only in symmetric form, for the
    rational quotient M_{0,2g+2}/S_{2g+2}.
    """

    kind: SpaceKind
    g: int
    n: int = 0
    partition: Tuple[int, ...] = ()
    level: Level = Level.stack
    symmetric: bool = False

    def __post_init__(self) -> None:
        if self.n < 0:
            raise InvalidContextError(f"n must be >= 0, got {self.n}")
        if self.kind is SpaceKind.pointed and self.g == 0:
            if not self.symmetric or self.n < 3:
                raise InvalidContextError("genus 0 needs a symmetric context with n >= 3")
        elif self.g < 2:
            raise InvalidContextError(f"genus must be >= 2, got {self.g}")
        if self.kind is SpaceKind.partition:
            if not self.partition or any(part < 1 for part in self.partition):
                raise InvalidContextError(f"invalid partition {self.partition}")
            if sum(self.partition) != self.n:
                raise InvalidContextError(
                    f"partition {self.partition} does not sum to n = {self.n}"
                )
        elif self.partition:
            raise InvalidContextError("partition given for a non-partition context")
        if self.kind is SpaceKind.nodal and self.n < 1:
            raise InvalidContextError("a nodal quotient needs at least one node pair")

    @classmethod
    def pointed(
        cls, g: int, n: int = 0, level: Level = Level.stack, symmetric: bool = False
    ) -> "SpaceContext":
        return cls(SpaceKind.pointed, g, n, level=level, symmetric=symmetric)

    @classmethod
    def nodal(cls, g: int, n: int, level: Level = Level.coarse) -> "SpaceContext":
        return cls(SpaceKind.nodal, g, n, level=level)

    @classmethod
    def partitioned(
        cls, g: int, partition: Tuple[int, ...], level: Level = Level.coarse
    ) -> "SpaceContext":
        parts = tuple(partition)
        return cls(SpaceKind.partition, g, sum(parts), partition=parts, level=level)

    @classmethod
    def hyperelliptic(
        cls, g: int, n: int = 0, level: Level = Level.coarse, symmetric: bool = False
    ) -> "SpaceContext":
        return cls(SpaceKind.hyperelliptic, g, n, level=level, symmetric=symmetric)

    @property
    def num_labels(self) -> int:
        return 2 * self.n if self.kind is SpaceKind.nodal else self.n

    @property
    def uses_orbits(self) -> bool:
        return self.kind in (SpaceKind.nodal, SpaceKind.partition) or self.symmetric

    def space_key(self) -> Tuple[Any, ...]:
        """Identity of the underlying Picard group; the level does not change it."""
        return (self.kind, self.g, self.n, self.partition, self.uses_orbits)

    def with_level(self, level: Level) -> "SpaceContext":
        return SpaceContext(self.kind, self.g, self.n, self.partition, level, self.symmetric)

    def describe(self) -> str:
        extra = f", partition={self.partition}" if self.partition else ""
        sym = ", symmetric" if self.symmetric else ""
        return f"{self.kind.value}(g={self.g}, n={self.n}{extra}, {self.level.value}{sym})"

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "kind": self.kind.value,
            "g": self.g,
            "n": self.n,
            "level": self.level.value,
            "symmetric": self.symmetric,
        }
        if self.partition:
            data["partition"] = list(self.partition)
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "SpaceContext":
        return cls(
            SpaceKind(data["kind"]),
            int(data["g"]),
            int(data.get("n", 0)),
            partition=tuple(int(p) for p in data.get("partition", ())),
            level=Level(data.get("level", Level.stack.value)),
            symmetric=bool(data.get("symmetric", False)),
        )


@dataclass(frozen=True)
class GroupDescriptor:
    kind: GroupKind
    partition: Tuple[int, ...] = field(default_factory=tuple)

    @classmethod
    def for_context(cls, ctx: SpaceContext) -> "GroupDescriptor":
        if ctx.kind is SpaceKind.nodal:
            return cls(GroupKind.nodal_pair)
        if ctx.kind is SpaceKind.partition:
            return cls(GroupKind.partition, ctx.partition)
        return cls(GroupKind.full_symmetric)
