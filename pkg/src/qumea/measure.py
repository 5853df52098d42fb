"""Decoherence functionals and quantal measures on a finite sample space.

A decoherence functional is fixed by its history matrix
``M[g, h] = D({g}, {h})``; biadditivity extends it to events as
``D(A, B) = u_A^T M u_B`` for indicator vectors ``u``.  Strong positivity
for every finite family of events reduces to ``M`` being positive
semidefinite, because any Gram matrix ``D(A_i, A_j)`` is ``U^T M U``.

All tolerance comparisons are relative to ``scale``, the largest diagonal
entry of ``M`` (taken as 1 when that entry is 0).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import gf2
from .errors import (
    AxiomViolationError,
    ConsistencyError,
    PreconditionError,
    SpaceMismatchError,
    StrongPositivityError,
)
from .events import DEFAULT_MAX_HISTORIES, Event, SampleSpace, check_capacity

DEFAULT_TOL = 1e-12
DEFAULT_EPS_REL = 1e-9
_SCAN_CHUNK = 1 << 15


@dataclass(frozen=True)
class AxiomDiagnostics:
    hermiticity_residual: float
    worst_entry: tuple[int, int]
    min_eigenvalue: float
    scale: float
    tol: float

    @property
    def hermitian(self) -> bool:
        return self.hermiticity_residual <= self.tol * self.scale

    @property
    def positive(self) -> bool:
        return self.min_eigenvalue >= -self.tol * self.scale

    @property
    def ok(self) -> bool:
        return self.hermitian and self.positive


def _scale_of(matrix: np.ndarray) -> float:
    if matrix.size == 0:
        return 1.0
    s = float(np.max(matrix.diagonal().real))
    return s if s > 0 else 1.0


def diagnose(matrix, tol: float = DEFAULT_TOL) -> AxiomDiagnostics:
    """Hermiticity residual and minimum eigenvalue, without raising."""
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise PreconditionError(f"matrix must be square, got shape {m.shape}")
    resid = np.abs(m - m.conj().T)
    worst = np.unravel_index(int(np.argmax(resid)), resid.shape)
    herm = (m + m.conj().T) / 2
    min_eig = float(np.linalg.eigvalsh(herm)[0])
    return AxiomDiagnostics(
        hermiticity_residual=float(resid[worst]),
        worst_entry=(int(worst[0]), int(worst[1])),
        min_eigenvalue=min_eig,
        scale=_scale_of(m),
        tol=tol,
    )


@dataclass(frozen=True, eq=False)
class DecoherenceFunctional:
    """A validated Hermitian, strongly positive history matrix.

    Construct through :func:`build_from_matrix`; the constructor itself does
    not validate.
    """

    space: SampleSpace
    matrix: np.ndarray
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        self.matrix.setflags(write=False)

    @property
    def n(self) -> int:
        return self.space.n

    @property
    def scale(self) -> float:
        return _scale_of(self.matrix)

    def __call__(self, a: Event, b: Event) -> complex:
        return decohere(self, a, b)

    def measure(self, a: Event) -> float:
        return measure(self, a)


def build_from_matrix(
    space: SampleSpace, matrix, tol: float = DEFAULT_TOL
) -> DecoherenceFunctional:
    """Validate Hermiticity and strong positivity, then wrap the matrix."""
    m = np.array(matrix, dtype=complex)
    if m.shape != (space.n, space.n):
        raise PreconditionError(
            f"matrix shape {m.shape} does not match {space.n} histories"
        )
    if tol < 0:
        raise PreconditionError("tol must be nonnegative")
    diag = diagnose(m, tol)
    if not diag.hermitian:
        i, j = diag.worst_entry
        raise AxiomViolationError(
            f"not Hermitian: |M[{space.labels[i]},{space.labels[j]}] - "
            f"conj(M[{space.labels[j]},{space.labels[i]}])| = "
            f"{diag.hermiticity_residual:.3e} > {tol * diag.scale:.3e}"
        )
    if not diag.positive:
        raise StrongPositivityError(
            f"not strongly positive: minimum eigenvalue {diag.min_eigenvalue:.6e} "
            f"< {-tol * diag.scale:.3e}",
            eigenvalue=diag.min_eigenvalue,
        )
    return DecoherenceFunctional(space, m, tol)


def _check_event(d: DecoherenceFunctional, *events: Event) -> None:
    for e in events:
        if e.space != d.space:
            raise SpaceMismatchError("event is not on the functional's sample space")


def _indicator(e: Event) -> np.ndarray:
    return np.array(e.members, dtype=float)


def decohere(d: DecoherenceFunctional, a: Event, b: Event) -> complex:
    """``D(A, B)``: the sum of ``M[g, h]`` over ``g in A`` and ``h in B``."""
    _check_event(d, a, b)
    return complex(_indicator(a) @ d.matrix @ _indicator(b))


def measure(d: DecoherenceFunctional, a: Event) -> float:
    """Quantal measure ``mu(A) = D(A, A)``."""
    val = decohere(d, a, a)
    if abs(val.imag) > d.tol * d.scale:
        raise ConsistencyError(f"mu({a!r}) has imaginary part {val.imag:.3e}")
    return val.real


def measures(d: DecoherenceFunctional, masks) -> np.ndarray:
    """Vectorized ``mu`` for an array of event masks."""
    masks = np.asarray(masks, dtype=np.int64)
    bits = ((masks[:, None] >> np.arange(d.n)) & 1).astype(float)
    vals = np.einsum("ki,ij,kj->k", bits, d.matrix, bits)
    if vals.size and np.max(np.abs(vals.imag)) > d.tol * d.scale * max(1, d.n):
        raise ConsistencyError("quantal measure picked up an imaginary residue")
    return vals.real


def _disjoint(*events: Event) -> None:
    for i, a in enumerate(events):
        for b in events[i + 1:]:
            if a.mask & b.mask:
                raise PreconditionError(f"events {a!r} and {b!r} are not disjoint")


def interference_level1(d: DecoherenceFunctional, a: Event, b: Event) -> float:
    """``mu(A+B) - mu(A) - mu(B)`` for disjoint ``A``, ``B``."""
    _check_event(d, a, b)
    _disjoint(a, b)
    return measure(d, a | b) - measure(d, a) - measure(d, b)


def interference_level2(
    d: DecoherenceFunctional, a: Event, b: Event, c: Event
) -> float:
    """Second-order interference of three disjoint events.

    Vanishes identically for any decoherence functional: quantal measures
    obey the level-2 sum rule unconditionally.
    """
    _check_event(d, a, b, c)
    _disjoint(a, b, c)
    mu = lambda e: measure(d, e)  # noqa: E731
    return (
        mu(a | b | c)
        - mu(a | b)
        - mu(b | c)
        - mu(a | c)
        + mu(a)
        + mu(b)
        + mu(c)
    )


def is_classical(d: DecoherenceFunctional, tol: float | None = None) -> bool:
    """True when every level-1 interference term vanishes.

    ``I1({g}, {h}) = 2 Re M[g, h]`` and ``I1`` is biadditive on disjoint
    pairs, so checking the real parts of the off-diagonal entries suffices.
    """
    tol = d.tol if tol is None else tol
    off = d.matrix.real - np.diag(d.matrix.diagonal().real)
    return bool(np.all(np.abs(off) <= tol * d.scale))


def strong_positivity_matrix(
    d: DecoherenceFunctional, collection: Sequence[Event]
) -> tuple[np.ndarray, bool]:
    """Gram matrix ``D(A_i, A_j)`` of a collection and its PSD verdict."""
    _check_event(d, *collection)
    if not collection:
        return np.zeros((0, 0), dtype=complex), True
    u = np.array([e.members for e in collection], dtype=float)
    gram = u @ d.matrix @ u.T
    min_eig = float(np.linalg.eigvalsh((gram + gram.conj().T) / 2)[0])
    return gram, min_eig >= -d.tol * d.scale * max(1, len(collection))


@dataclass(frozen=True)
class PreclusionReport:
    """All events of measure at most ``eps``, in canonical order."""

    space: SampleSpace
    eps: float
    zero_events: tuple[Event, ...]
    zero_measures: tuple[float, ...]
    span_rank: int
    span_basis: tuple[int, ...] = field(repr=False)
    span_pivots: tuple[int, ...] = field(repr=False)

    @classmethod
    def from_events(
        cls,
        space: SampleSpace,
        eps: float,
        events: Sequence[Event],
        measures_: Sequence[float] | None = None,
    ) -> PreclusionReport:
        """Assemble a report from an explicit list of precluded events."""
        for e in events:
            if e.space != space:
                raise SpaceMismatchError("precluded event is on another sample space")
        mus = list(measures_) if measures_ is not None else [None] * len(events)
        pairs = dict(zip((e.mask for e in events), zip(events, mus)))
        pairs.setdefault(0, (space.empty, 0.0 if measures_ is not None else None))
        ordered = [pairs[m] for m in sorted(pairs)]
        events = [e for e, _ in ordered]
        measures_ = [mu for _, mu in ordered] if measures_ is not None else None
        basis, pivots = gf2.rref(e.mask for e in events)
        return cls(
            space=space,
            eps=eps,
            zero_events=tuple(events),
            zero_measures=tuple(measures_) if measures_ is not None else (),
            span_rank=len(basis),
            span_basis=tuple(basis),
            span_pivots=tuple(pivots),
        )

    def in_span(self, event: Event) -> bool:
        return gf2.in_span(event.mask, list(self.span_basis), list(self.span_pivots))

    def outside_span_of(self, reference: Sequence[Event]) -> list[Event]:
        """Zero events that the GF(2) span of ``reference`` does not reach."""
        basis, pivots = gf2.rref(e.mask for e in reference)
        return [e for e in self.zero_events if not gf2.in_span(e.mask, basis, pivots)]

    def to_dict(self) -> dict:
        out = {
            "eps": self.eps,
            "span_rank": self.span_rank,
            "count": len(self.zero_events),
            "zero_events": [],
        }
        for k, e in enumerate(self.zero_events):
            row: dict = {"event": list(e.labels)}
            if self.zero_measures:
                row["measure"] = self.zero_measures[k]
            out["zero_events"].append(row)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def default_eps(d: DecoherenceFunctional) -> float:
    return DEFAULT_EPS_REL * d.scale


def precluded_events(
    d: DecoherenceFunctional,
    eps: float | None = None,
    max_histories: int = DEFAULT_MAX_HISTORIES,
) -> PreclusionReport:
    """Exhaustive scan for events with ``mu(A) <= eps``."""
    check_capacity(d.n, max_histories)
    eps = default_eps(d) if eps is None else float(eps)
    found: list[np.ndarray] = []
    vals: list[np.ndarray] = []
    total = 1 << d.n
    for start in range(0, total, _SCAN_CHUNK):
        masks = np.arange(start, min(total, start + _SCAN_CHUNK), dtype=np.int64)
        mu = measures(d, masks)
        hit = mu <= eps
        found.append(masks[hit])
        vals.append(mu[hit])
    masks = np.concatenate(found)
    mus = np.concatenate(vals)
    events = [Event(d.space, int(m)) for m in masks]
    return PreclusionReport.from_events(
        d.space, eps, events, [float(v) for v in mus]
    )
