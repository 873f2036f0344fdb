"""
Orthogonal or symplectic?
=========================

The type of J^sigma on C(q), for even dimension n, depends only on n and
on s, the number of generators that sigma negates. Here the prediction is
compared with a classification that counts symmetric elements directly.
"""

from cliffinv import OrthSymmetry, QuadForm, classify, from_clifford
from cliffinv.structure import predict_type

print(" n  s  predicted    classified   sym_dim")
for n in (2, 4, 6):
    q = QuadForm.of(*[(-1) ** i * (i + 1) for i in range(n)])
    for s in range(n + 1):
        sigma = OrthSymmetry(tuple([-1] * s + [1] * (n - s)))
        cls = classify(from_clifford(q, sigma))
        print(f"{n:2d} {s:2d}  {predict_type(n, s):11s}  {cls.type:11s}  {cls.sym_dim}")

# The pattern repeats with period 8 in n - 2s.
