"""Co-events: GF(2)-linear truth functionals on the event algebra.

On a finite space a linear map ``phi: events -> Z_2`` is a sum of dual
atoms ``g*`` (``g*(A) = 1`` iff ``g`` is in ``A``), so it is identified with
its support, the set of atoms in that sum, and ``phi(A)`` is the parity of
``|support & A|``.

A co-event is preclusive when it vanishes on every event of measure zero.
By linearity those co-events form the annihilator of the span of the
precluded events, which is computed here as a GF(2) nullspace.  Candidate
realities are the nonzero preclusive co-events whose support is minimal
under inclusion.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from . import gf2
from .errors import CapacityError, PreconditionError, SpaceMismatchError
from .events import Event, SampleSpace, check_capacity
from .measure import PreclusionReport

DEFAULT_MAX_DIM = 20
DEFAULT_MAX_ORDER_HISTORIES = 12


@dataclass(frozen=True)
class Coevent:
    """A linear co-event, stored as its support."""

    support: Event

    @classmethod
    def from_labels(cls, space: SampleSpace, labels) -> Coevent:
        return cls(space.event(labels))

    @classmethod
    def zero(cls, space: SampleSpace) -> Coevent:
        return cls(space.empty)

    @property
    def space(self) -> SampleSpace:
        return self.support.space

    @property
    def mask(self) -> int:
        return self.support.mask

    def __call__(self, a: Event) -> int:
        return evaluate(self, a)

    def __add__(self, other: Coevent) -> Coevent:
        return Coevent(self.support + other.support)

    def __len__(self) -> int:
        return len(self.support)

    def __str__(self) -> str:
        if not self.mask:
            return "0"
        return " + ".join(f"{lab}*" for lab in self.support.labels)

    def __repr__(self) -> str:
        return f"Coevent({self})"

    def to_dict(self) -> dict:
        return {
            "support": list(self.support.labels),
            "unital": is_unital(self),
            "multiplicative": is_multiplicative(self),
        }


def _same(phi: Coevent, a) -> None:
    if phi.space != a.space:
        raise SpaceMismatchError("co-event and argument are on different spaces")


def evaluate(phi: Coevent, a: Event) -> int:
    _same(phi, a)
    return gf2.parity(phi.mask & a.mask)


def atom_coevent(space: SampleSpace, label: str) -> Coevent:
    """The classical co-event ``g*`` of a single history."""
    return Coevent(space.singleton(label))


def is_unital(phi: Coevent) -> bool:
    return gf2.parity(phi.mask) == 1


def is_multiplicative(phi: Coevent, brute_force: bool = False,
                      max_histories: int = 10) -> bool:
    """Whether ``phi(AB) == phi(A) phi(B)`` for all events.

    A linear co-event is multiplicative iff its support has at most one
    element; ``brute_force=True`` checks every pair of events instead.
    """
    if not brute_force:
        return phi.mask.bit_count() <= 1
    check_capacity(phi.space.n, max_histories)
    s = phi.mask
    size = 1 << phi.space.n
    values = [gf2.parity(s & a) for a in range(size)]
    for a in range(size):
        for b in range(a, size):
            if values[a & b] != values[a] & values[b]:
                return False
    return True


def is_preclusive(phi: Coevent, report: PreclusionReport,
                  method: str = "exhaustive") -> bool:
    """True when ``phi`` vanishes on every precluded event of ``report``.

    ``method="exhaustive"`` evaluates on each listed event; ``"span"`` uses
    only the reduced basis of their GF(2) span.
    """
    _same(phi, report)
    if method == "exhaustive":
        rows = (e.mask for e in report.zero_events)
    elif method == "span":
        rows = report.span_basis
    else:
        raise PreconditionError(f"unknown method {method!r}")
    return all(gf2.parity(phi.mask & r) == 0 for r in rows)


def preclusive_annihilator(report: PreclusionReport) -> list[Coevent]:
    """GF(2) basis of the preclusive co-events."""
    space = report.space
    return [
        Coevent(Event(space, v))
        for v in gf2.nullspace((e.mask for e in report.zero_events), space.n)
    ]


@dataclass(frozen=True)
class PreclusiveFamily:
    space: SampleSpace
    annihilator_basis: tuple[Coevent, ...]
    minimal: tuple[Coevent, ...]
    minimal_unital: tuple[Coevent, ...]
    unital_only: bool = False
    diagnostic: str | None = None

    @property
    def dimension(self) -> int:
        return len(self.annihilator_basis)

    @property
    def selected(self) -> tuple[Coevent, ...]:
        """The list a caller asked for: unital minima or all minima."""
        return self.minimal_unital if self.unital_only else self.minimal

    @property
    def empty(self) -> bool:
        return not self.selected

    def to_dict(self) -> dict:
        return {
            "dimension": self.dimension,
            "count_minimal": len(self.minimal),
            "count_minimal_unital": len(self.minimal_unital),
            "unital_only": self.unital_only,
            "coevents": [phi.to_dict() for phi in self.selected],
            "diagnostic": self.diagnostic,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _sort_key(mask: int) -> tuple[int, int]:
    return (mask.bit_count(), mask)


def minimal_supports(masks) -> list[int]:
    """Inclusion-minimal nonzero masks, in (cardinality, value) order.

    Sorting by cardinality means every strict subset of a mask is visited
    before it, so comparing against the minima found so far is enough.
    """
    minima: list[int] = []
    for m in sorted(set(masks) - {0}, key=_sort_key):
        if not any(k & ~m == 0 for k in minima):
            minima.append(m)
    return minima


def minimal_preclusive(
    report: PreclusionReport,
    unital_only: bool = False,
    max_dim: int = DEFAULT_MAX_DIM,
) -> PreclusiveFamily:
    """Enumerate the annihilator and keep its support-minimal elements."""
    space = report.space
    basis = preclusive_annihilator(report)
    d = len(basis)
    if d > max_dim:
        raise CapacityError(
            f"annihilator dimension {d} exceeds guard max_dim={max_dim}",
            guard="max_dim",
            limit=max_dim,
        )
    minima = minimal_supports(gf2.span([phi.mask for phi in basis]))
    minimal = tuple(Coevent(Event(space, m)) for m in minima)
    unital = tuple(phi for phi in minimal if is_unital(phi))

    diagnostic = None
    if not minimal:
        diagnostic = "no nonzero preclusive co-event exists: every co-event is refuted"
    elif unital_only and not unital:
        diagnostic = (
            f"{len(minimal)} minimal preclusive co-event(s) exist but none is unital"
        )
    return PreclusiveFamily(space, tuple(basis), minimal, unital, unital_only, diagnostic)


def leq_support(phi1: Coevent, phi2: Coevent) -> bool:
    """``phi1`` precedes ``phi2`` when its support is contained in theirs."""
    _same(phi1, phi2.support)
    return phi1.mask & ~phi2.mask == 0


def leq_general(phi1: Coevent, phi2: Coevent,
                max_histories: int = DEFAULT_MAX_ORDER_HISTORIES) -> bool:
    """Measure-free order: some event ``S`` has ``phi1(A) == phi2(SA)`` for all ``A``.

    Brute force over every ``S`` and ``A``; cost is ``4**n`` evaluations.
    """
    _same(phi1, phi2.support)
    n = phi1.space.n
    check_capacity(n, max_histories)
    s1, s2 = phi1.mask, phi2.mask
    size = 1 << n
    target = [gf2.parity(s1 & a) for a in range(size)]
    for s in range(size):
        if all(gf2.parity(s2 & s & a) == target[a] for a in range(size)):
            return True
    return False


def affirming(family: Sequence[Coevent], event: Event) -> list[Coevent]:
    """Members of ``family`` that assign true to ``event``."""
    return [phi for phi in family if evaluate(phi, event) == 1]

