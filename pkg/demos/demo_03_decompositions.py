"""
Splitting off a tensor factor
=============================

C(q0 + q) with q0 of even dimension is a tensor product of C(q0) and the
Clifford algebra of a rescaled copy of q. The library builds the map and
checks that it is an isomorphism of algebras with involution.
"""

from cliffinv import OrthSymmetry, QuadForm
from cliffinv.structure import decompose_even, decompose_full, even_reduce

q0, sigma0 = QuadForm.of(1, 1), OrthSymmetry.from_text("++")
q, sigma = QuadForm.of(3, -5), OrthSymmetry.from_text("+-")

cert = decompose_full(q0, sigma0, q, sigma)
print(cert.description)
for name, result in cert.checks.items():
    print(f"  {name}: {result.status}")
(f0, f1), (s0, s1) = cert.meta["forms"], cert.meta["syms"]
print(f"  factors: C({f0}) with J^{s0}, C({f1}) with J^{s1}")

# The same idea for even Clifford algebras, with a block of odd dimension.
cert = decompose_even(QuadForm.of(-1), OrthSymmetry.from_text("+"), q, OrthSymmetry.from_text("++"))
print(cert.description, "->", "verified" if cert.verified else cert.failures())

# And C_0(q) as a full Clifford algebra one dimension down.
cert = even_reduce(QuadForm.of(1, 1, 1), OrthSymmetry.identity(3), 0)
print(f"C0(<1, 1, 1>) = C({cert.meta['form']}) with J^{cert.meta['sym']}:", cert.verified)
