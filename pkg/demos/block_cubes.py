"""Volumes of averages can shrink: unit cubes in orthogonal coordinate blocks.

Run:  python3 demos/block_cubes.py

Two unit cubes of dimension d sit in complementary coordinate blocks of
R^(2d).  Vol(A(3)) is compared with Vol(A(2)) exactly; once 2d reaches the
threshold dimension the volume drops.
"""

from sumsets.verify import counterexample_thm_nonmonotone, threshold_dimension

if __name__ == "__main__":
    k = 2
    print(f"threshold dimension for k = {k}: {threshold_dimension(k)}")
    for d in range(2, 8):
        rep = counterexample_thm_nonmonotone(k, d)
        before, after = rep.details["vol_A_k"], rep.details["vol_A_k_plus_1"]
        trend = "drops" if after < before else "grows"
        print(f"n = {k * d:2d}: Vol(A(2)) = {str(before):>14}  Vol(A(3)) = {str(after):>16}  ({trend})")
