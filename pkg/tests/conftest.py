import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("ci", max_examples=60, deadline=None)
settings.load_profile("ci")


# Independent oracles: plain loops over histories, no use of the package's
# matrix path.

def amplitude_oracle_measure(amplitudes, final_class, members):
    """mu(A) as a sum over final classes of |sum of amplitudes in A|^2."""
    total = 0.0
    for cls in set(final_class):
        s = sum(a for a, f, m in zip(amplitudes, final_class, members) if f == cls and m)
        total += abs(s) ** 2
    return total


def brute_force_nullspace(rows, n):
    """Every x in GF(2)^n orthogonal to all rows, by enumeration."""
    return [x for x in range(1 << n)
            if all(bin(x & r).count("1") % 2 == 0 for r in rows)]


def brute_force_minimal(supports):
    nonzero = [s for s in supports if s]
    return sorted(
        (s for s in nonzero if not any(t != s and t & ~s == 0 for t in nonzero)),
        key=lambda m: (bin(m).count("1"), m),
    )


def random_psd(rng, n, rank=None):
    """F^dagger F for a random complex F."""
    k = rank or n
    f = rng.normal(size=(k, n)) + 1j * rng.normal(size=(k, n))
    return f.conj().T @ f


def psd_with_null_events(rng, n, n_null):
    """Random PSD matrix annihilating the indicators of a few random events.

    Rows of F are projected onto the orthogonal complement of the chosen
    indicators, so each chosen event has mu = 0 up to rounding.
    """
    null = []
    while len(null) < n_null:
        m = int(rng.integers(1, 1 << n))
        if m not in null:
            null.append(m)
    u = np.array([[(m >> i) & 1 for i in range(n)] for m in null], dtype=float).T
    q, _ = np.linalg.qr(u)
    rank = np.linalg.matrix_rank(u)
    q = q[:, :rank]
    f = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    f = f - (f @ q) @ q.T
    return f.conj().T @ f, null


def disjoint_triples(rng, n, count):
    for _ in range(count):
        colour = rng.integers(0, 4, size=n)
        yield tuple(sum(1 << i for i in range(n) if colour[i] == c) for c in (1, 2, 3))


@pytest.fixture
def rng():
    return np.random.default_rng(20070131)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
