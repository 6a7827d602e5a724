"""All four measures of a random planar set, and how A(k) closes in on the hull.

Run:  python3 demos/planar_set.py [seed]

Prints the volume deficit, the Hausdorff distance to the hull, Schneider's
index (as a bracket) and the effective standard deviation.  The deficit of a
finite set never moves, so the table along A(k) tracks the two distances
next to the index, and an SVG chart of them lands next to this script.
"""

import sys
from pathlib import Path

from sumsets import emit_plot, measure_suite, sequence_report
from sumsets.verify import verify_containment_rate
from sumsets.verify.generators import general_point_set, rng_for

if __name__ == "__main__":
    seed = int(sys.argv[1]) if len(sys.argv) > 1 else 7
    a = general_point_set(rng_for(seed), 2, 5)
    print("A =", [tuple(str(c) for c in p) for p in a.points])
    for name, res in measure_suite(a).items():
        if isinstance(res, float):
            print(f"  {name:6s} {res:.6f}")
            continue
        exact = res.exact if res.exact is not None else res.exact_squared
        label = "exact" if res.exact is not None else ("squared" if res.exact_squared is not None else "bracket")
        print(f"  {name:6s} {res.value:.6f}  [{res.lower:.6f}, {res.upper:.6f}]  {label} {exact if exact is not None else ''}")

    report = sequence_report(a, 6, measures=("d", "c", "v"))
    print("\nk  |A(k)|  d  c  v")
    for row in report.rows:
        print(f"{row['k']:2d} {row['size']:6d}  {float(row['d']):.5f}  {float(row['c']):.5f}  {float(row['v']):.5f}")
    target = Path(__file__).with_name("planar_set.svg")
    target.write_text(emit_plot(report, ["d", "c", "v"], title="measures of A(k)"), encoding="utf-8")
    print(f"chart written to {target}")

    rate = verify_containment_rate(a, 12, method="cover")
    print("conv(A) within 2 diam(A) / k of A(k) for k <= 12:", rate.verdict)
