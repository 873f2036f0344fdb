"""
Involutions of the second kind
==============================

Tensoring with K = Q(sqrt c) and its conjugation gives unitary
involutions. A quaternion algebra with its canonical involution, tensored
with K, is realized as the Clifford algebra of a 3-dimensional form over Q
whose center is K.
"""

from cliffinv.structure import second_kind_realize, unitary_synthesize

out = second_kind_realize(-1, -1, 2)
print("d, e =", out["d"], out["e"])
print("form:", out["form"], "symmetry:", out["sym"])
print("signed discriminant:", out["disc"], "(a square times c:", out["disc_matches_c"], ")")
print("stages:", ", ".join(s.type for s in out["stages"]))
print("chain verified:", out["chain"].verified)

# Two quaternion factors: a 5-dimensional form, and an even Clifford
# algebra of a 6-dimensional form with J^{id}.
res = unitary_synthesize([(-1, -1), (-1, -3)], 5)
for clause in ("iii", "iv"):
    part = res[clause]
    print(f"({clause}) C{'' if clause == 'iii' else '0'}({part['form']}) with J^{part['sym']}:",
          part["chain"].verified, f"[{len(part['chain'])} steps]")
