import pytest
from hypothesis import given, strategies as st

import oracles
from cliffinv.clifford import (CliffordAlgebra, CliffordElement, CliffordError, blade_mul,
                               center_basis, clifford_map_factor, even_blade_product_psi,
                               even_clifford_map_validate, even_factor_via_pivot,
                               even_universal_factor, format_element, grade_involution,
                               induced_involution, parse_element, reversion, z_element)
from cliffinv.exactfield import RATIONALS
from cliffinv.linalg import LinearMapTable
from cliffinv.qspace import OrthSymmetry, QuadForm, signed_disc

coeff = st.sampled_from([1, -1, 2, -2, 3, -3, 5, -5])


@st.composite
def form_and_sym(draw, min_n=0, max_n=5):
    n = draw(st.integers(min_n, max_n))
    coeffs = draw(st.lists(coeff, min_size=n, max_size=n))
    signs = draw(st.lists(st.sampled_from([1, -1]), min_size=n, max_size=n))
    return QuadForm.of(*coeffs), OrthSymmetry(tuple(signs))


@st.composite
def elements(draw, q, max_terms=4):
    masks = draw(st.lists(st.integers(0, (1 << q.n) - 1), max_size=max_terms))
    values = draw(st.lists(coeff, min_size=len(masks), max_size=len(masks)))
    return CliffordElement(q, dict(zip(masks, values)))


def as_fractions(x):
    return {m: c.to_fraction() for m, c in x.terms.items()}


def E(q, text):
    return parse_element(text, q)


# -- products ----------------------------------------------------------------

def test_blade_mul_examples():
    q = QuadForm.of(7, 11)
    assert blade_mul(1, 1, q) == (1, RATIONALS(7), 0)
    sign, coeff_, mask = blade_mul(2, 1, q)
    assert (sign, coeff_, mask) == (-1, RATIONALS(1), 3)


def test_bivector_square():
    q = QuadForm.of(2, 3)
    e12 = E(q, "e1^e2")
    assert e12 * e12 == CliffordElement.scalar(q, -6)


def test_unit_and_vector_square():
    q = QuadForm.of(2, -5)
    x = E(q, "3 + e1 - 2 e1^e2")
    assert x * CliffordElement.scalar(q) == x
    v = E(q, "e1 + e2")
    assert v * v == CliffordElement.scalar(q, -3)


@given(st.data())
def test_blade_products_match_word_oracle(data):
    q, _ = data.draw(form_and_sym(max_n=5))
    S = data.draw(st.integers(0, (1 << q.n) - 1))
    T = data.draw(st.integers(0, (1 << q.n) - 1))
    coeffs = [c.to_fraction() for c in q.coeffs]
    got = as_fractions(CliffordElement.blade(q, S) * CliffordElement.blade(q, T))
    assert got == oracles.blade_product(S, T, coeffs)


@given(st.data())
def test_associativity(data):
    q, _ = data.draw(form_and_sym(max_n=5))
    x, y, z = (data.draw(elements(q)) for _ in range(3))
    assert (x * y) * z == x * (y * z)


def test_generator_order_enforced():
    q = QuadForm.of(1, 1)
    with pytest.raises(CliffordError):
        E(q, "e2^e1")
    with pytest.raises(CliffordError):
        E(q, "e3")


def test_parse_format_round_trip():
    q = QuadForm.of(2, 3, 5)
    for text in ["-6 + 2 e1^e2", "e1", "1/2 e1^e2^e3 - e2", "0"]:
        x = E(q, text)
        assert E(q, format_element(x)) == x


# -- involutions ---------------------------------------------------------------

def test_grade_involution_examples():
    q = QuadForm.of(1, 2)
    assert grade_involution(E(q, "e1")) == E(q, "-e1")
    assert grade_involution(E(q, "e1^e2")) == E(q, "e1^e2")


def test_reversion_examples():
    q = QuadForm.of(1, 2, 3)
    assert reversion(E(q, "e1")) == E(q, "e1")
    assert reversion(E(q, "e1^e2")) == E(q, "-e1^e2")
    assert reversion(E(q, "e1^e2^e3")) == E(q, "-e1^e2^e3")


def test_minus_identity_is_quaternion_conjugation():
    q = QuadForm.of(2, 3)
    minus = OrthSymmetry.minus_identity(2)
    assert induced_involution(minus, E(q, "e1")) == E(q, "-e1")
    x = E(q, "1 + 2 e1 - e2 + 4 e1^e2")
    assert induced_involution(minus, x) == E(q, "1 - 2 e1 + e2 - 4 e1^e2")


def test_reflection_on_bivector():
    q = QuadForm.of(2, 3)
    tau = OrthSymmetry((-1, 1))
    assert induced_involution(tau, E(q, "e1^e2")) == E(q, "e1^e2")
    assert induced_involution(tau, CliffordElement.scalar(q)) == CliffordElement.scalar(q)


@given(st.data())
def test_involution_laws(data):
    q, sigma = data.draw(form_and_sym(max_n=5))
    x, y = data.draw(elements(q)), data.draw(elements(q))
    J = lambda v: induced_involution(sigma, v)  # noqa: E731
    assert J(J(x)) == x
    assert J(x * y) == J(y) * J(x)
    assert grade_involution(grade_involution(x)) == x
    assert grade_involution(x * y) == grade_involution(x) * grade_involution(y)


@given(st.data())
def test_involution_matches_word_oracle(data):
    q, sigma = data.draw(form_and_sym(max_n=6))
    mask = data.draw(st.integers(0, (1 << q.n) - 1))
    got = induced_involution(sigma, CliffordElement.blade(q, mask))
    assert got == CliffordElement.blade(q, mask, oracles.involution_on_blade(sigma.signs, mask))


# -- the element z ----------------------------------------------------------------

def test_z_square_example():
    q = QuadForm.of(2, 3)
    z = z_element(OrthSymmetry.identity(2), q)
    assert z * z == CliffordElement.scalar(q, -6)


def test_z_commutes_in_odd_dimension():
    q = QuadForm.of(2, 3, 5)
    z = z_element(OrthSymmetry.identity(3), q)
    e2 = E(q, "e2")
    assert z * e2 == e2 * z


def test_z_under_a_reflection_in_dimension_two():
    # The general sign (-1)^s (-1)^(n(n-1)/2) gives +1 here, so J(z) = z.
    # The shortcut (-1)^(n(n+1)/2) for reflections only agrees with it for odd n.
    q = QuadForm.of(2, 3)
    tau = OrthSymmetry((-1, 1))
    z = z_element(tau, q)
    assert induced_involution(tau, z) == z
    for n in (1, 3, 5):
        refl = OrthSymmetry.reflection(n)
        assert (-1) ** refl.s * (-1) ** (n * (n - 1) // 2) == (-1) ** (n * (n + 1) // 2)


@given(form_and_sym(max_n=6))
def test_z_identities(data):
    q, sigma = data
    n = q.n
    z = z_element(sigma, q)
    assert z * z == CliffordElement.scalar(q, signed_disc(q))
    sign = (-1) ** sigma.s * (-1) ** (n * (n - 1) // 2)
    assert induced_involution(sigma, z) == z * sign
    for i in range(n):
        e = CliffordElement.generator(q, i)
        assert z * e == (e * z if n % 2 else -(e * z))


def test_z_is_invertible_blade():
    q = QuadForm.of(2, -3, 5)
    z = z_element(OrthSymmetry((1, -1, 1)), q)
    assert z * z.blade_inverse() == CliffordElement.scalar(q)


# -- center -------------------------------------------------------------------

def test_center_examples():
    assert center_basis(QuadForm.of(1, 1)) == [CliffordElement.scalar(QuadForm.of(1, 1))]
    q = QuadForm.of(1, 1, 1)
    basis = center_basis(q)
    assert len(basis) == 2
    z = E(q, "e1^e2^e3")
    assert {frozenset(b.terms) for b in basis} == {frozenset({0}), frozenset({7})}
    assert any(b == z or b == -z for b in basis)
    assert center_basis(QuadForm.of()) == [CliffordElement.scalar(QuadForm.of())]


# -- Clifford maps -------------------------------------------------------------

def test_identity_and_grade_maps():
    q = QuadForm.of(2, 3, -1)
    C = CliffordAlgebra(q)
    gens = [C.gen(i) for i in range(q.n)]
    assert clifford_map_factor(gens, q, C).is_identity()
    gamma = clifford_map_factor([-g for g in gens], q, C)
    for i in range(C.dim):
        assert C.element(gamma.apply({i: RATIONALS.one})) == grade_involution(C.basis(i))


def test_clifford_map_rejects_bad_images():
    q = QuadForm.of(2, 3)
    C = CliffordAlgebra(q)
    with pytest.raises(CliffordError):
        clifford_map_factor([C.gen(0), C.gen(0)], q, C)


def test_dimensions():
    for n in range(6):
        q = QuadForm.of(*([1] * n))
        assert CliffordAlgebra(q).dim == 2 ** n
        if n:
            assert CliffordAlgebra(q, even=True).dim == 2 ** (n - 1)


# -- even Clifford maps -----------------------------------------------------------

def test_canonical_even_map_passes():
    q = QuadForm.of(2, 3, 5)
    C0 = CliffordAlgebra(q, even=True)
    psi = even_blade_product_psi(q)
    assert even_clifford_map_validate(psi, q, C0).passed
    assert even_universal_factor(psi, q, C0).is_identity()


def test_zero_map_fails_condition_2():
    q = QuadForm.of(1, 1)
    C0 = CliffordAlgebra(q, even=True)
    zero = CliffordElement(q)
    psi = {(i, j): zero for i in range(2) for j in range(2)}
    report = even_clifford_map_validate(psi, q, C0)
    assert not report.passed and report.first_failure[0] == "2"


def test_polar_form_map_fails_condition_1():
    q = QuadForm.of(1, 1)
    C0 = CliffordAlgebra(q, even=True)
    psi = {(i, j): CliffordElement.scalar(q, 1 if i == j else 0) for i in range(2) for j in range(2)}
    report = even_clifford_map_validate(psi, q, C0)
    assert not report.passed and report.first_failure[0] == "1"


@pytest.mark.parametrize("signs", [(1, -1), (-1, -1, 1), (1, 1, -1, -1)])
def test_isometry_factors_as_even_extension(signs):
    n = len(signs)
    q = QuadForm.of(*[2, -3, 5, 7][:n])
    C0 = CliffordAlgebra(q, even=True)
    gens = [CliffordElement.generator(q, i) * signs[i] for i in range(n)]
    psi = {(i, j): gens[i] * gens[j] for i in range(n) for j in range(n)}
    direct = even_universal_factor(psi, q, C0)
    assert direct == even_factor_via_pivot(psi, q, C0, pivot=n - 1)
    for idx, mask in enumerate(C0.masks):
        sign = 1
        for i in range(n):
            if mask >> i & 1:
                sign *= signs[i]
        assert direct.cols[idx] == {idx: RATIONALS(sign)}


def test_disagreeing_factorization_reported():
    q = QuadForm.of(1, 2, 3)
    C0 = CliffordAlgebra(q, even=True)
    psi = even_blade_product_psi(q)
    wrong = LinearMapTable.identity(C0.dim, RATIONALS).scaled(RATIONALS(2))
    with pytest.raises(CliffordError):
        even_universal_factor(psi, q, C0, other=wrong)
