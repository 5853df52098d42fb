"""Physical models and their decoherence functionals.

On a finite sample space the path-integral decoherence functional reduces to

    M[g, h] = a(g) conj(a(h)) * [final(g) == final(h)] * rho[init(g), init(h)]

where ``a`` is the amplitude of a history (the phase ``exp(iS)`` times any
source amplitude), ``final`` is the class of the history at the truncation
time, ``init`` its class at the initial time and ``rho`` the initial density
matrix.  The base measure is counting measure.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import jsonschema
import numpy as np

from .errors import PreconditionError, SchemaError
from .events import Event, SampleSpace
from .measure import DEFAULT_TOL, DecoherenceFunctional, build_from_matrix, diagnose

# sin^2 of the analyzer angle in the Hardy model; see hardy().
HARDY_MIXING = (3 + math.sqrt(33)) / 12
BALANCED_MIXING = 0.5


@dataclass(frozen=True, eq=False)
class ModelSpec:
    """Amplitude, class and density-matrix data for one model.

    ``matrix`` is an escape hatch: when given, it is the history matrix
    itself and the amplitude data is ignored.
    """

    histories: tuple[str, ...]
    amplitudes: np.ndarray | None
    final_class: tuple[str, ...] | None
    initial_class: tuple[str, ...] | None = None
    rho: np.ndarray | None = None
    tol: float | None = None
    matrix: np.ndarray | None = None

    def __post_init__(self):
        n = len(self.histories)
        if self.matrix is not None:
            if self.matrix.shape != (n, n):
                raise PreconditionError(
                    f"matrix shape {self.matrix.shape} does not match {n} histories"
                )
            return
        if self.amplitudes is None or self.final_class is None:
            raise PreconditionError("a model needs amplitudes and final classes")
        if len(self.amplitudes) != n:
            raise PreconditionError(f"{len(self.amplitudes)} amplitudes for {n} histories")
        if len(self.final_class) != n:
            raise PreconditionError(f"{len(self.final_class)} final classes for {n} histories")
        if self.initial_class is not None and len(self.initial_class) != n:
            raise PreconditionError(
                f"{len(self.initial_class)} initial classes for {n} histories"
            )
        if self.rho is not None:
            k = len(self.initial_labels)
            if self.rho.shape != (k, k):
                raise PreconditionError(
                    f"rho has shape {self.rho.shape}, expected ({k}, {k}) "
                    f"for initial classes {list(self.initial_labels)}"
                )
            diag = diagnose(self.rho, self.tol or DEFAULT_TOL)
            if not diag.ok:
                raise PreconditionError(
                    "rho is not Hermitian positive semidefinite "
                    f"(residual {diag.hermiticity_residual:.3e}, "
                    f"min eigenvalue {diag.min_eigenvalue:.3e})"
                )

    @property
    def space(self) -> SampleSpace:
        return SampleSpace(self.histories)

    @property
    def initial_labels(self) -> tuple[str, ...]:
        """Distinct initial classes in order of first appearance; rho's index order."""
        if self.initial_class is None:
            return ("",)
        return tuple(dict.fromkeys(self.initial_class))

    def event(self, labels) -> Event:
        return self.space.event(labels)

    def final_event(self, cls: str) -> Event:
        """All histories ending in final class ``cls``."""
        if self.final_class is None:
            raise PreconditionError("model has no final classes")
        return self.space.event(
            h for h, f in zip(self.histories, self.final_class) if f == cls
        )


def history_matrix(spec: ModelSpec) -> np.ndarray:
    if spec.matrix is not None:
        return np.array(spec.matrix, dtype=complex)
    a = np.asarray(spec.amplitudes, dtype=complex)
    final = np.array(spec.final_class, dtype=object)
    m = np.outer(a, a.conj()) * (final[:, None] == final[None, :])
    if spec.rho is not None:
        lookup = {lab: i for i, lab in enumerate(spec.initial_labels)}
        init = spec.initial_class or ("",) * len(spec.histories)
        idx = np.array([lookup[c] for c in init])
        m = m * spec.rho[np.ix_(idx, idx)]
    # exact Hermiticity even when rho is only Hermitian to rounding
    return (m + m.conj().T) / 2


def build_decoherence(spec: ModelSpec, tol: float | None = None) -> DecoherenceFunctional:
    if tol is None:
        tol = spec.tol if spec.tol is not None else DEFAULT_TOL
    return build_from_matrix(spec.space, history_matrix(spec), tol)


def n_slit(amplitudes: Sequence[complex], labels: Sequence[str] | None = None) -> ModelSpec:
    """One history per slit, all arriving at the same detector point."""
    if len(amplitudes) == 0:
        raise PreconditionError("n_slit needs at least one amplitude")
    if labels is None:
        labels = [chr(ord("a") + i) if i < 26 else f"s{i}" for i in range(len(amplitudes))]
    return ModelSpec(
        histories=tuple(labels),
        amplitudes=np.asarray(amplitudes, dtype=complex),
        final_class=("p",) * len(amplitudes),
    )


def three_slit() -> ModelSpec:
    """Slits ``a``, ``b``, ``c`` whose amplitudes cancel pairwise as (a,b) and (b,c)."""
    return n_slit([1, -1, 1])


def classical(probabilities: Sequence[float]) -> ModelSpec:
    """A classical measure: each history its own final class, so no interference."""
    p = np.asarray(probabilities, dtype=float)
    if p.size == 0:
        raise PreconditionError("classical needs at least one probability")
    if np.any(p < 0):
        raise PreconditionError(f"negative probability in {list(p)}")
    n = len(p)
    labels = tuple(f"g{i + 1}" for i in range(n))
    return ModelSpec(histories=labels, amplitudes=np.sqrt(p).astype(complex),
                     final_class=labels)


def hardy_labels() -> tuple[str, ...]:
    """``[zL zR xL xR]`` labels in lexicographic order, ``+`` before ``-``."""
    return tuple("[" + "".join(s) + "]" for s in itertools.product("+-", repeat=4))


def hardy(mixing: float = HARDY_MIXING) -> ModelSpec:
    """Two spin-1/2 atoms through a z-analyzer, recombiner and x-analyzer.

    The source emits ``(++)``, ``(+-)``, ``(-+)`` in z and never ``(--)``.
    Each atom then crosses the real orthogonal splitter
    ``U = [[cos t, sin t], [sin t, -cos t]]`` with ``sin^2 t = mixing``, and
    the source weights are ``1 : tan t : tan t`` so that, for every mixing,
    the left (right) x-lower amplitude cancels between the two z-branches
    whenever the other atom went z-upper.  The final class is ``(xL, xR)``.

    ``mixing=0.5`` is the 50/50 splitter with equal source weights; there
    the ``(+,-)`` and ``(-,+)`` detector classes each pick up one extra
    cancelling pair.  The default is the other root of
    ``mu(xL=-, xR=-) = 1/12`` and has no such accidental cancellations.
    """
    if not 0 < mixing < 1:
        raise PreconditionError("mixing must lie strictly between 0 and 1")
    sn, cs = math.sqrt(mixing), math.sqrt(1 - mixing)
    t = sn / cs
    source = {"++": 1.0, "+-": t, "-+": t, "--": 0.0}
    norm = math.sqrt(1 + 2 * t * t)
    split = {("+", "+"): cs, ("+", "-"): sn, ("-", "+"): sn, ("-", "-"): -cs}
    labels = hardy_labels()
    amps = []
    finals = []
    for lab in labels:
        zl, zr, xl, xr = lab[1:5]
        amps.append(source[zl + zr] / norm * split[zl, xl] * split[zr, xr])
        finals.append(xl + xr)
    return ModelSpec(histories=labels, amplitudes=np.array(amps, dtype=complex),
                     final_class=tuple(finals))


def hardy_paper_zero_sets() -> list[list[str]]:
    """The eight null events listed for the Hardy setup."""
    out = [[f"[--{x}{y}]"] for x in "+-" for y in "+-"]
    out += [[f"[++{x}-]", f"[+-{x}-]"] for x in "+-"]
    out += [[f"[++-{x}]", f"[-+-{x}]"] for x in "+-"]
    return out


def hardy_paper_minimal() -> list[list[str]]:
    """The eight minimal preclusive co-event supports listed for Hardy."""
    return [
        ["[++++]"],
        ["[+-++]"],
        ["[-+++]"],
        ["[-++-]"],
        ["[+--+]"],
        ["[++--]", "[+---]", "[-+--]"],
        ["[+++-]", "[+-+-]"],
        ["[++-+]", "[-+-+]"],
    ]


_COMPLEX = {
    "type": "array",
    "items": {"type": "number"},
    "minItems": 2,
    "maxItems": 2,
}
_CMATRIX = {"type": "array", "items": {"type": "array", "items": _COMPLEX}}

MODEL_SCHEMA = {
    "type": "object",
    "properties": {
        "histories": {"type": "array", "items": {"type": "string"}, "minItems": 1},
        "amplitudes": {"type": "array", "items": _COMPLEX},
        "initial_class": {"type": "array", "items": {"type": "string"}},
        "final_class": {"type": "array", "items": {"type": "string"}},
        "rho": _CMATRIX,
        "tol": {"type": "number", "exclusiveMinimum": 0},
        "matrix": _CMATRIX,
    },
    "required": ["histories"],
    "additionalProperties": False,
}


def _path(parts) -> str:
    return "$" + "".join(f"[{p}]" if isinstance(p, int) else f".{p}" for p in parts)


def _cmatrix(rows, path: str) -> np.ndarray:
    if any(len(r) != len(rows) for r in rows):
        raise SchemaError("matrix must be square", path)
    return np.array([[complex(re, im) for re, im in r] for r in rows], dtype=complex)


def parse_model(document: str | dict) -> ModelSpec:
    """Validate a JSON model document and turn it into a :class:`ModelSpec`."""
    if isinstance(document, str):
        try:
            doc = json.loads(document)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc}") from exc
    else:
        doc = document
    validator = jsonschema.Draft202012Validator(MODEL_SCHEMA)
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        raise SchemaError(err.message, _path(err.absolute_path))

    if "matrix" in doc:
        if "amplitudes" in doc:
            raise SchemaError("give either 'matrix' or 'amplitudes', not both", "$")
    else:
        for key in ("amplitudes", "final_class"):
            if key not in doc:
                raise SchemaError(f"'{key}' is a required property", "$")

    histories = tuple(doc["histories"])
    n = len(histories)
    if len(set(histories)) != n:
        raise SchemaError("history labels must be distinct", "$.histories")
    for key in ("amplitudes", "initial_class", "final_class"):
        if key in doc and len(doc[key]) != n:
            raise SchemaError(f"expected {n} entries, got {len(doc[key])}", f"$.{key}")

    matrix = None
    if "matrix" in doc:
        matrix = _cmatrix(doc["matrix"], "$.matrix")
        if matrix.shape != (n, n):
            raise SchemaError(f"expected a {n}x{n} matrix", "$.matrix")
    rho = _cmatrix(doc["rho"], "$.rho") if "rho" in doc else None
    amps = doc.get("amplitudes")
    try:
        return ModelSpec(
            histories=histories,
            amplitudes=None if amps is None else np.array([complex(r, i) for r, i in amps]),
            final_class=tuple(doc["final_class"]) if "final_class" in doc else None,
            initial_class=tuple(doc["initial_class"]) if "initial_class" in doc else None,
            rho=rho,
            tol=doc.get("tol"),
            matrix=matrix,
        )
    except PreconditionError as exc:
        where = "$.rho" if "rho" in str(exc) else "$"
        raise SchemaError(str(exc), where) from exc


def _pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def model_to_dict(spec: ModelSpec) -> dict:
    doc: dict = {"histories": list(spec.histories)}
    if spec.matrix is not None:
        doc["matrix"] = [[_pair(z) for z in row] for row in spec.matrix]
    else:
        doc["amplitudes"] = [_pair(z) for z in spec.amplitudes]
        if spec.initial_class is not None:
            doc["initial_class"] = list(spec.initial_class)
        doc["final_class"] = list(spec.final_class)
        if spec.rho is not None:
            doc["rho"] = [[_pair(z) for z in row] for row in spec.rho]
    if spec.tol is not None:
        doc["tol"] = spec.tol
    return doc


def dump_model(spec: ModelSpec) -> str:
    return json.dumps(model_to_dict(spec), indent=2)


def _parse_complex_list(text: str) -> list[complex]:
    out = []
    for item in text.split(","):
        parts = item.split(":")
        if len(parts) == 1:
            out.append(complex(float(parts[0]), 0.0))
        elif len(parts) == 2:
            out.append(complex(float(parts[0]), float(parts[1])))
        else:
            raise SchemaError(f"bad amplitude {item!r}, expected re:im", "$.model")
    return out


def resolve_model(name: str) -> ModelSpec:
    """Look up a built-in model name or load a JSON model file.

    Built-ins: ``three-slit``, ``hardy``, ``hardy:<mixing>``,
    ``classical:p1,p2,...``, ``n-slit:re:im,re:im,...``.
    """
    if name == "three-slit":
        return three_slit()
    if name == "hardy":
        return hardy()
    try:
        if name.startswith("hardy:"):
            return hardy(float(name.split(":", 1)[1]))
        if name.startswith("classical:"):
            return classical([float(x) for x in name.split(":", 1)[1].split(",")])
        if name.startswith("n-slit:"):
            return n_slit(_parse_complex_list(name.split(":", 1)[1]))
    except ValueError as exc:
        raise SchemaError(str(exc), "$.model") from exc
    return parse_model(Path(name).read_text())
