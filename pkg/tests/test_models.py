import json
import math

import numpy as np
import pytest

from qumea.coevents import minimal_preclusive
from qumea.errors import PreconditionError, SchemaError
from qumea.events import SampleSpace
from qumea.measure import is_classical, measure, precluded_events
from qumea.models import (
    BALANCED_MIXING,
    HARDY_MIXING,
    ModelSpec,
    build_decoherence,
    classical,
    dump_model,
    hardy,
    hardy_labels,
    hardy_paper_zero_sets,
    history_matrix,
    n_slit,
    parse_model,
    resolve_model,
    three_slit,
)

from conftest import amplitude_oracle_measure


def state_vector_probability(mixing, xl, xr):
    """P(x_L, x_R) from the two-atom state vector, no histories involved."""
    sn, cs = math.sqrt(mixing), math.sqrt(1 - mixing)
    t = sn / cs
    # z-basis order |++>, |+->, |-+>, |-->
    psi = np.array([1, t, t, 0]) / math.sqrt(1 + 2 * t * t)
    u = np.array([[cs, sn], [sn, -cs]])  # rows x+, x-; columns z+, z-
    out = np.kron(u, u) @ psi
    k = {"+": 0, "-": 1}
    return abs(out[2 * k[xl] + k[xr]]) ** 2


def test_single_history():
    spec = ModelSpec(histories=("g",), amplitudes=np.array([1]), final_class=("p",))
    d = build_decoherence(spec)
    assert np.allclose(d.matrix, [[1]])
    assert measure(d, d.space.unit) == 1


def test_three_slit_matrix():
    psi = np.array([1, -1, 1])
    assert np.allclose(history_matrix(three_slit()), np.outer(psi, psi))
    d = build_decoherence(three_slit())
    assert measure(d, d.space.event("ab")) == pytest.approx(0, abs=1e-12)
    assert measure(d, d.space.event("bc")) == pytest.approx(0, abs=1e-12)
    assert measure(d, d.space.unit) == pytest.approx(1)


def test_distinct_final_classes_decohere():
    spec = ModelSpec(histories=("a", "b"), amplitudes=np.array([1, 1]), final_class=("p", "q"))
    d = build_decoherence(spec)
    assert np.allclose(d.matrix, np.eye(2))
    assert is_classical(d)


def test_n_slit():
    assert np.allclose(history_matrix(n_slit([1, -1, 1])), history_matrix(three_slit()))
    d = build_decoherence(n_slit([1, 1]))
    assert measure(d, d.space.unit) == pytest.approx(4)
    d = build_decoherence(n_slit([1, -1]))
    assert measure(d, d.space.unit) == pytest.approx(0)
    with pytest.raises(PreconditionError):
        n_slit([])


def test_classical_spec():
    assert np.allclose(history_matrix(classical([0.2, 0.8])), np.diag([0.2, 0.8]))
    with pytest.raises(PreconditionError):
        classical([0.5, -0.1])


def test_hardy_labels_and_classes():
    spec = hardy()
    assert len(spec.histories) == 16
    assert spec.histories[0] == "[++++]" and spec.histories[-1] == "[----]"
    assert spec.histories == tuple(sorted(spec.histories))
    assert spec.final_class[spec.histories.index("[+-+-]")] == "+-"


@pytest.mark.parametrize("mixing", [HARDY_MIXING, BALANCED_MIXING, 0.3])
def test_hardy_final_class_probabilities_match_state_vector(mixing):
    spec = hardy(mixing)
    d = build_decoherence(spec)
    assert measure(d, d.space.unit) == pytest.approx(1)
    for xl in "+-":
        for xr in "+-":
            e = spec.final_event(xl + xr)
            assert measure(d, e) == pytest.approx(state_vector_probability(mixing, xl, xr), abs=1e-12)
            assert measure(d, e) == pytest.approx(
                amplitude_oracle_measure(spec.amplitudes, spec.final_class, e.members), abs=1e-12
            )


@pytest.mark.parametrize("mixing", [HARDY_MIXING, BALANCED_MIXING, 0.3, 0.8])
def test_hardy_listed_zero_sets(mixing):
    spec = hardy(mixing)
    d = build_decoherence(spec)
    for labels in hardy_paper_zero_sets():
        assert measure(d, spec.event(labels)) <= 1e-12


def test_hardy_event_four():
    spec = hardy()
    d = build_decoherence(spec)
    e = spec.event(["[++--]", "[+---]", "[-+--]"])
    assert measure(d, e) == pytest.approx(1 / 12, abs=1e-12)
    assert state_vector_probability(HARDY_MIXING, "-", "-") == pytest.approx(1 / 12, abs=1e-12)
    # the balanced convention gives the same value for this event
    db = build_decoherence(hardy(BALANCED_MIXING))
    assert measure(db, e) == pytest.approx(1 / 12, abs=1e-12)


def test_hardy_single_history_measure():
    # |source(++) * cos t * cos t|^2 with source(++) = 1/sqrt(1 + 2 tan^2 t)
    x = HARDY_MIXING
    expected = (1 - x) ** 3 / (1 + x)
    d = build_decoherence(hardy())
    assert measure(d, d.space.event(["[++++]"])) == pytest.approx(expected, abs=1e-12)
    db = build_decoherence(hardy(BALANCED_MIXING))
    assert measure(db, db.space.event(["[++++]"])) == pytest.approx(1 / 12, abs=1e-12)


def test_balanced_hardy_surfaces_extra_zero_sets():
    spec = hardy(BALANCED_MIXING)
    report = precluded_events(build_decoherence(spec), eps=1e-9)
    listed = [spec.event(z) for z in hardy_paper_zero_sets()]
    extra = report.outside_span_of(listed)
    assert spec.event(["[+-+-]", "[-++-]"]) in extra
    assert spec.event(["[+--+]", "[-+-+]"]) in extra
    default = precluded_events(build_decoherence(hardy()), eps=1e-9)
    assert default.outside_span_of([hardy().event(z) for z in hardy_paper_zero_sets()]) == []


def test_hardy_mixing_range():
    with pytest.raises(PreconditionError):
        hardy(0)
    with pytest.raises(PreconditionError):
        hardy(1.2)


def test_hardy_closure_under_disjoint_union():
    spec = hardy()
    d = build_decoherence(spec)
    zeros = [spec.event(z) for z in hardy_paper_zero_sets()]
    for k in range(1 << len(zeros)):
        union = spec.space.empty
        ok = True
        for i, z in enumerate(zeros):
            if k >> i & 1:
                if union.mask & z.mask:
                    ok = False
                    break
                union = union | z
        if ok:
            assert measure(d, union) <= 1e-12


@pytest.mark.parametrize("theta", [math.pi / 7, math.pi / 3])
@pytest.mark.parametrize("make", [three_slit, hardy, lambda: n_slit([1, 0.5j, -1])])
def test_global_phase_invariance(theta, make):
    spec = make()
    rotated = ModelSpec(spec.histories, spec.amplitudes * np.exp(1j * theta), spec.final_class)
    d0, d1 = build_decoherence(spec), build_decoherence(rotated)
    assert np.allclose(d0.matrix, d1.matrix)
    r0, r1 = precluded_events(d0), precluded_events(d1)
    assert r0.zero_events == r1.zero_events
    assert minimal_preclusive(r0).minimal == minimal_preclusive(r1).minimal


@pytest.mark.parametrize("lam", [0.5, 3.0])
def test_real_scaling(lam):
    spec = hardy()
    scaled = ModelSpec(spec.histories, spec.amplitudes * lam, spec.final_class)
    d0, d1 = build_decoherence(spec), build_decoherence(scaled)
    for m in [0, 1, 7, 255, 65535]:
        e = d0.space.event([spec.histories[i] for i in range(16) if m >> i & 1])
        assert measure(d1, e) == pytest.approx(lam ** 2 * measure(d0, e), abs=1e-12)
    r0 = precluded_events(d0, eps=1e-9)
    r1 = precluded_events(d1, eps=1e-9 * lam ** 2)
    assert r0.zero_events == r1.zero_events
    assert minimal_preclusive(r0).minimal == minimal_preclusive(r1).minimal


def test_rho_psd_property(rng):
    for _ in range(40):
        k = int(rng.integers(1, 4))
        n = k + int(rng.integers(0, 4))
        g = rng.normal(size=(k, k)) + 1j * rng.normal(size=(k, k))
        init = [f"i{j}" for j in range(k)] + [f"i{int(c)}" for c in rng.integers(0, k, size=n - k)]
        spec = ModelSpec(
            histories=tuple(f"h{i}" for i in range(n)),
            amplitudes=rng.normal(size=n) + 1j * rng.normal(size=n),
            final_class=tuple(rng.choice(["p", "q"], size=n)),
            initial_class=tuple(init),
            rho=g @ g.conj().T,
        )
        m = history_matrix(spec)
        assert np.array_equal(m, m.conj().T)
        build_decoherence(spec)


THREE_SLIT_JSON = json.dumps({
    "histories": ["a", "b", "c"],
    "amplitudes": [[1, 0], [-1, 0], [1, 0]],
    "final_class": ["p", "p", "p"],
})


def test_parse_three_slit_fixture():
    spec = parse_model(THREE_SLIT_JSON)
    assert np.allclose(history_matrix(spec), history_matrix(three_slit()))
    again = parse_model(dump_model(spec))
    assert again.histories == spec.histories
    assert np.array_equal(again.amplitudes, spec.amplitudes)


def test_dump_roundtrip_hardy_exact():
    spec = hardy()
    again = parse_model(dump_model(spec))
    assert np.array_equal(again.amplitudes, spec.amplitudes)
    assert again.final_class == spec.final_class


def test_parse_rho_scalar():
    doc = json.loads(THREE_SLIT_JSON)
    doc["initial_class"] = ["s", "s", "s"]
    doc["rho"] = [[[1, 0]]]
    spec = parse_model(json.dumps(doc))
    assert np.allclose(history_matrix(spec), history_matrix(three_slit()))


def test_parse_rho_rank_one():
    doc = {
        "histories": ["a", "b"],
        "amplitudes": [[1, 0], [1, 0]],
        "initial_class": ["u", "v"],
        "final_class": ["p", "p"],
        "rho": [[[0.5, 0], [0.5, 0]], [[0.5, 0], [0.5, 0]]],
    }
    spec = parse_model(doc)
    assert np.allclose(np.linalg.eigvalsh(spec.rho), [0, 1])
    d = build_decoherence(spec)
    assert measure(d, d.space.unit) == pytest.approx(2)


@pytest.mark.parametrize("doc, path", [
    ({"amplitudes": [[1, 0]], "final_class": ["p"]}, "$"),
    ({"histories": ["a"], "amplitudes": [[1]], "final_class": ["p"]}, "$.amplitudes[0]"),
    ({"histories": ["a"], "amplitudes": [[1, 0]]}, "$"),
    ({"histories": ["a", "b"], "amplitudes": [[1, 0]], "final_class": ["p", "p"]}, "$.amplitudes"),
    ({"histories": ["a"], "amplitudes": [[1, 0]], "final_class": ["p"], "tol": -1}, "$.tol"),
    ({"histories": ["a"], "amplitudes": [[1, 0]], "final_class": ["p"], "extra": 1}, "$"),
    ({"histories": ["a", "a"], "amplitudes": [[1, 0]] * 2, "final_class": ["p"] * 2}, "$.histories"),
])
def test_parse_schema_errors(doc, path):
    with pytest.raises(SchemaError) as info:
        parse_model(json.dumps(doc))
    assert info.value.path == path


def test_parse_rejects_non_psd_rho():
    doc = {
        "histories": ["a", "b"],
        "amplitudes": [[1, 0], [1, 0]],
        "initial_class": ["u", "v"],
        "final_class": ["p", "p"],
        "rho": [[[0, 0], [1, 0]], [[1, 0], [0, 0]]],
    }
    with pytest.raises(SchemaError, match="positive semidefinite"):
        parse_model(doc)


def test_parse_matrix_document():
    doc = {"histories": ["x", "y"], "matrix": [[[1, 0], [0, 1]], [[0, 1], [1, 0]]]}
    spec = parse_model(doc)
    assert history_matrix(spec)[0, 1] == 1j


def test_resolve_builtins():
    assert resolve_model("three-slit").histories == ("a", "b", "c")
    assert resolve_model("hardy").histories == hardy_labels()
    assert np.allclose(resolve_model("classical:0.25,0.75").amplitudes, [0.5, math.sqrt(0.75)])
    assert np.allclose(resolve_model("n-slit:1:0,-1:0").amplitudes, [1, -1])
    assert np.allclose(resolve_model("hardy:0.5").amplitudes, hardy(0.5).amplitudes)
    with pytest.raises(SchemaError):
        resolve_model("classical:x")
    with pytest.raises(OSError):
        resolve_model("/nonexistent/model.json")


def test_space_property():
    assert three_slit().space == SampleSpace("abc")
