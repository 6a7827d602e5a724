"""Sparse decompositions of points in a sum of hulls, and balanced signs.

Run:  python3 demos/balancing.py

Ten random three-dimensional sets and a point of the sum of their hulls: at
most three summands need a genuine convex combination.  Then fifty random
vectors of Euclidean norm at most one in R^6 get signs whose signed sum has
norm below sqrt(6).
"""

import math
import random
from fractions import Fraction

from sumsets import PointSet, balance_signs, sf_decompose

if __name__ == "__main__":
    rng = random.Random(3)
    sets = [PointSet([tuple(Fraction(rng.randint(-8, 8), 4) for _ in range(3)) for _ in range(4)]) for _ in range(10)]
    target = [sum(p[j] for s in sets for p in s.points) / 4 for j in range(3)]
    dec = sf_decompose(sets, target)
    print("target:", [str(c) for c in target])
    print("summands needing a convex combination:", list(dec.fractional))
    print("reconstruction exact:", dec.reconstruct() == tuple(target))

    vectors = []
    while len(vectors) < 50:
        v = [Fraction(rng.randint(-16, 16), 16) for _ in range(6)]
        if sum(c * c for c in v) <= 1:
            vectors.append(v)
    res = balance_signs(vectors)
    print(f"\nsigned sum norm {res.achieved:.4f}, guarantee sqrt(6) = {math.sqrt(6):.4f}")
    print("signs:", "".join("+" if s > 0 else "-" for s in res.signs.signs))
