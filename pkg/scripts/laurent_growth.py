#!/usr/bin/env python3
"""Measure how cluster variables grow along non-backtracking mutation
walks, contrasting finite type, affine rank 2, and a wild rank-3 quiver.

The wild quiver's walk is cut off once the tropical denominator-vector
recurrence predicts an infeasible expansion; that wall, not the Laurent
property, is what limits exact computation at depth."""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from clusterkit import quiver as qv, seed as sd
from clusterkit.quiver import Quiver

CASES = [
    ("A3 path", Quiver.from_arrows(3, [(0, 1), (1, 2)]), [0, 1, 2] * 4),
    ("Kronecker", Quiver.from_arrows(2, [(0, 1, 2)]), [0, 1] * 6),
    ("1=>2->3", Quiver.from_arrows(3, [(0, 1, 2), (1, 2)]), [2, 1, 0, 1, 2, 0, 2, 1, 0, 1, 2, 0]),
]

FEASIBLE_TERMS = 200_000


def tropical_step(q, dvecs, k):
    pos = [0] * q.n
    neg = [0] * q.n
    for j in range(q.n):
        w = q.b[j][k]
        for t in range(q.n):
            if w > 0:
                pos[t] += w * dvecs[j][t]
            elif w < 0:
                neg[t] += (-w) * dvecs[j][t]
    return [max(p, n) - dvecs[k][t] for t, (p, n) in enumerate(zip(pos, neg))]


def main() -> None:
    for name, q, path in CASES:
        s = sd.initial_seed(q)
        dvecs = [[-1 if i == j else 0 for j in range(q.n)] for i in range(q.n)]
        print(f"\n{name}: walk {path}")
        for depth, k in enumerate(path, start=1):
            predicted = tropical_step(q, dvecs, k)
            bound = 1
            for x in predicted:
                bound *= max(x, 0) + 1
            if bound > FEASIBLE_TERMS:
                print(f"  depth {depth}: predicted ~{bound} terms; stopping here")
                break
            dvecs[k] = predicted
            s = sd.mutate_seed(s, k)
            q = s.quiver
            v = s.cluster[k]
            print(f"  depth {depth}: mutate {k + 1}: {len(v)} terms, "
                  f"denominator {list(predicted)}")


if __name__ == "__main__":
    main()
