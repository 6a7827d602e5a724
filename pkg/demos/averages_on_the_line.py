"""How fast do the self-averages of a finite set on the line fill its hull?

Run:  python3 demos/averages_on_the_line.py

For A = {0, 1} the averages A(k) are the grids {0, 1/k, ..., 1}, so the
largest gap is 1/k.  The rate columns k*c and k*d stay flat, which is the
sharp 1/k decay.  The second set has an uneven gap and shows the same decay
once k is large enough for the gap to fill in.
"""

from fractions import Fraction

from sumsets import PointSet, sequence_report


def show(name, points, kmax):
    report = sequence_report(PointSet([(x,) for x in points]), kmax, measures=("c", "d"))
    print(f"\n{name}: k, |A(k)|, c, d, k*c, k*d")
    for row in report.rows:
        print(f"  {row['k']:3d} {row['size']:5d}  {str(row['c']):>8} {str(row['d']):>8}  {str(row['k*c']):>6} {str(row['k*d']):>6}")
    print("  c non-increasing in k:", report.meta["monotone"]["c"])


if __name__ == "__main__":
    show("A = {0, 1}", [0, 1], 8)
    show("A = {0, 1/4, 3}", [0, Fraction(1, 4), 3], 8)
