"""
Blades, products and involutions
================================

A first look at C(q) for a small diagonal form: products of blades,
the involutions J^sigma, and the element z.
"""

from cliffinv import CliffordElement, OrthSymmetry, QuadForm, signed_disc
from cliffinv.clifford import format_element, induced_involution, parse_element, z_element

# The form <2, 3> gives a quaternion algebra: e1^2 = 2, e2^2 = 3.
q = QuadForm.of(2, 3)
e1 = CliffordElement.generator(q, 0)
e2 = CliffordElement.generator(q, 1)

print("e1 e2 =", format_element(e1 * e2))
print("e2 e1 =", format_element(e2 * e1))
print("(e1 e2)^2 =", format_element((e1 * e2) * (e1 * e2)))

# Elements can also be written as text.
x = parse_element("1 + e1 - 3 e1^e2", q)
print("x^2 =", format_element(x * x))

# J^sigma reverses products and applies sigma to each generator.
for signs in ["++", "--", "-+"]:
    sigma = OrthSymmetry.from_text(signs)
    print(f"J^{signs}(x) =", format_element(induced_involution(sigma, x)))

# z is the product of the generators fixed by sigma, then the negated ones.
# Its square is the signed discriminant whatever sigma is.
q3 = QuadForm.of(1, -2, 5)
for signs in ["+++", "+-+", "---"]:
    sigma = OrthSymmetry.from_text(signs)
    z = z_element(sigma, q3)
    jz = induced_involution(sigma, z)
    print(f"sigma={signs}: z = {format_element(z)}, z^2 = {format_element(z * z)}, "
          f"J(z) = {format_element(jz)}")
print("signed discriminant of", q3, "is", signed_disc(q3))
