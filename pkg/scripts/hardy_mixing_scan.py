"""Scan the Hardy analyzer mixing and count null events and minimal co-events.

At mixing 0.5 (50/50 splitters, equal source weights) two extra cancelling
pairs appear and the minimal family collapses from eight to six; away from
0.5 the null events are exactly the disjoint unions of the eight listed
zero-sets.
"""

import argparse

import numpy as np

from qumea.coevents import minimal_preclusive
from qumea.measure import measure, precluded_events
from qumea.models import HARDY_MIXING, build_decoherence, hardy, hardy_paper_zero_sets


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--points", type=int, default=9)
    args = parser.parse_args()
    grid = sorted(set(np.linspace(0.1, 0.9, args.points).round(4)) | {0.5, HARDY_MIXING})
    print("mixing\tnull\toutside_listed_span\tminimal\tunital\tmu(--)")
    for x in grid:
        spec = hardy(x)
        d = build_decoherence(spec)
        report = precluded_events(d, eps=1e-9)
        extra = report.outside_span_of([spec.event(z) for z in hardy_paper_zero_sets()])
        fam = minimal_preclusive(report)
        mu = measure(d, spec.final_event("--"))
        print(f"{x:.6f}\t{len(report.zero_events)}\t{len(extra)}\t"
              f"{len(fam.minimal)}\t{len(fam.minimal_unital)}\t{mu:.6f}")


if __name__ == "__main__":
    main()
