"""Finite sample spaces and their event algebras over GF(2).

An event is stored as an integer bitmask: bit ``i`` is set when the
``i``-th history of the space belongs to the event.  Reading the mask as an
integer gives the canonical event order used everywhere downstream.
Addition is symmetric difference (XOR) and multiplication is intersection
(AND), which makes the power set a unital commutative algebra over Z_2.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import CapacityError, PreconditionError, SpaceMismatchError

DEFAULT_MAX_HISTORIES = 24


@dataclass(frozen=True)
class SampleSpace:
    """Ordered finite set of history labels."""

    labels: tuple[str, ...]

    def __init__(self, labels: Iterable[str]):
        labels = tuple(str(label) for label in labels)
        if not labels:
            raise PreconditionError("a sample space needs at least one history")
        if len(set(labels)) != len(labels):
            dupes = sorted({x for x in labels if labels.count(x) > 1})
            raise PreconditionError(f"duplicate history labels: {dupes}")
        object.__setattr__(self, "labels", labels)

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise PreconditionError(f"unknown history label {label!r}") from None

    def event(self, labels: Iterable[str] = ()) -> Event:
        """Build the event containing the named histories."""
        mask = 0
        for label in labels:
            mask |= 1 << self.index(label)
        return Event(self, mask)

    def singleton(self, label: str) -> Event:
        return Event(self, 1 << self.index(label))

    @property
    def empty(self) -> Event:
        return Event(self, 0)

    @property
    def unit(self) -> Event:
        return Event(self, self.full_mask)

    def __len__(self) -> int:
        return self.n


@dataclass(frozen=True)
class Event:
    """A subset of a sample space, held as a membership bitmask."""

    space: SampleSpace
    mask: int

    def __post_init__(self):
        if self.mask < 0 or self.mask > self.space.full_mask:
            raise PreconditionError(
                f"mask {self.mask} does not fit a space of {self.space.n} histories"
            )

    @classmethod
    def from_indicator(cls, space: SampleSpace, members: Sequence[int]) -> Event:
        if len(members) != space.n:
            raise PreconditionError(
                f"indicator has {len(members)} entries, space has {space.n}"
            )
        mask = 0
        for i, bit in enumerate(members):
            if bit not in (0, 1, True, False):
                raise PreconditionError(f"indicator entry {i} is {bit!r}, not 0/1")
            if bit:
                mask |= 1 << i
        return cls(space, mask)

    @property
    def members(self) -> tuple[int, ...]:
        return tuple((self.mask >> i) & 1 for i in range(self.space.n))

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(lab for i, lab in enumerate(self.space.labels) if self.mask >> i & 1)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, label: str) -> bool:
        return bool(self.mask >> self.space.index(label) & 1)

    def __iter__(self) -> Iterator[str]:
        return iter(self.labels)

    def __bool__(self) -> bool:
        return self.mask != 0

    def issubset(self, other: Event) -> bool:
        _check_same(self, other)
        return self.mask & ~other.mask == 0

    def __add__(self, other: Event) -> Event:
        return add(self, other)

    def __mul__(self, other: Event) -> Event:
        return mul(self, other)

    def __or__(self, other: Event) -> Event:
        _check_same(self, other)
        return Event(self.space, self.mask | other.mask)

    def __and__(self, other: Event) -> Event:
        return mul(self, other)

    def __invert__(self) -> Event:
        return complement(self)

    def __repr__(self) -> str:
        return "{" + ", ".join(self.labels) + "}"


def _check_same(a: Event, b: Event) -> None:
    if a.space != b.space:
        raise SpaceMismatchError("events belong to different sample spaces")


def add(a: Event, b: Event) -> Event:
    """Symmetric difference, the GF(2) sum of two events."""
    _check_same(a, b)
    return Event(a.space, a.mask ^ b.mask)


def mul(a: Event, b: Event) -> Event:
    """Intersection, the GF(2) product of two events."""
    _check_same(a, b)
    return Event(a.space, a.mask & b.mask)


def complement(a: Event) -> Event:
    return add(a.space.unit, a)


def check_capacity(n: int, max_histories: int = DEFAULT_MAX_HISTORIES) -> None:
    if n > max_histories:
        raise CapacityError(
            f"{n} histories exceed the enumeration guard max_histories={max_histories}",
            guard="max_histories",
            limit=max_histories,
        )


def enumerate_events(
    space: SampleSpace, max_histories: int = DEFAULT_MAX_HISTORIES
) -> list[Event]:
    """All ``2**n`` events in ascending mask order."""
    check_capacity(space.n, max_histories)
    return [Event(space, m) for m in range(1 << space.n)]
