"""Print precluded events and minimal preclusive co-events for the built-in models."""

import argparse

from qumea.coevents import minimal_preclusive
from qumea.measure import measure, precluded_events
from qumea.models import build_decoherence, resolve_model


def show(name: str, eps: float | None) -> None:
    spec = resolve_model(name)
    d = build_decoherence(spec)
    report = precluded_events(d, eps)
    fam = minimal_preclusive(report)
    print(f"== {name}: {d.n} histories, mu(Omega) = {measure(d, d.space.unit):.6g}")
    print(f"   {len(report.zero_events) - 1} nonempty null events, span rank {report.span_rank}")
    print(f"   annihilator dimension {fam.dimension}; minimal co-events:")
    for phi in fam.minimal:
        kind = "unital" if len(phi) % 2 else "non-unital"
        print(f"     {phi}   ({kind})")


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("models", nargs="*", default=["three-slit", "hardy", "hardy:0.5"])
    parser.add_argument("--eps", type=float, default=None)
    args = parser.parse_args()
    for name in args.models:
        show(name, args.eps)
