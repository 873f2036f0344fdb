"""
Products of quaternion algebras
===============================

A tensor product of quaternion algebras, each with an orthogonal or a
symplectic involution, is rewritten as a single Clifford algebra whose
involution comes from a simple symmetry: +id, -id or a reflection.
Every step of the rewriting carries its own certificate.
"""

from cliffinv.structure import synthesize_multiquaternion

cases = [
    [(2, 3, "symplectic")],
    [(2, 3, "orthogonal"), (-1, 5, "orthogonal")],
    [(2, 3, "symplectic"), (-1, 5, "orthogonal")],
    [(1, 2, "s"), (3, 5, "s"), (-1, -1, "o")],
]

for factors in cases:
    F, S, chain, info = synthesize_multiquaternion(factors)
    print(" (x) ".join(f"({a},{b}){m[0]}" for a, b, m in factors))
    print(f"   -> C({F}) with J^{S}  [{info['product_type']}, {info['shape']}]")
    for desc, cert in chain.steps:
        print(f"      {'ok ' if cert.verified else 'BAD'} {desc}")

# With two factors of different kinds both normalizations are available.
F, S, chain, _ = synthesize_multiquaternion(cases[2], prefer="minus")
print("minus normalization:", F, S, chain.verified)
