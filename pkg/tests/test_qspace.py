import pytest
from hypothesis import given, strategies as st

import oracles
from cliffinv.exactfield import RATIONALS
from cliffinv.qspace import (FormError, OrthSymmetry, QuadForm, orth_sum, scale, signed_disc,
                             symmetry_disc)

coeff = st.sampled_from([1, -1, 2, -2, 3, -3, 5, -5, 7])
forms = st.lists(coeff, min_size=0, max_size=7).map(lambda c: QuadForm.of(*c))


def test_orthogonal_sum_examples():
    assert orth_sum(QuadForm.of(1), QuadForm.of(2, 3)) == QuadForm.of(1, 2, 3)
    q = QuadForm.of(4, 5)
    assert orth_sum(QuadForm.of(), q) == q


def test_scale_examples():
    assert scale(2, QuadForm.of(1, 3)) == QuadForm.of(2, 6)
    q = QuadForm.of(1, -7)
    assert scale(1, q) == q


@pytest.mark.parametrize("coeffs,disc", [((2, 3), -6), ((5,), 5), ((1, 1, 1), -1)])
def test_signed_disc_examples(coeffs, disc):
    assert signed_disc(QuadForm.of(*coeffs)) == RATIONALS(disc)


@pytest.mark.parametrize("signs,value", [((1, 1), -1), ((-1,), -1), ((-1, 1, 1), 1)])
def test_symmetry_disc_examples(signs, value):
    assert symmetry_disc(OrthSymmetry(signs)) == RATIONALS(value)


def test_degenerate_form_rejected():
    with pytest.raises(FormError):
        QuadForm.of(1, 0, 2)


def test_symmetry_text():
    sigma = OrthSymmetry.from_text("+-+")
    assert sigma.s == 1 and sigma.is_reflection() and str(sigma) == "+-+"
    with pytest.raises(FormError):
        OrthSymmetry.from_text("+x")


@given(forms, forms)
def test_dimension_adds(q1, q2):
    assert orth_sum(q1, q2).n == q1.n + q2.n


@given(forms, coeff)
def test_disc_of_scaled_form(q, a):
    assert signed_disc(scale(a, q)) == signed_disc(q) * RATIONALS(a) ** q.n


@given(forms, forms)
def test_disc_of_orthogonal_sum(q1, q2):
    lhs = signed_disc(orth_sum(q1, q2))
    rhs = signed_disc(q1) * signed_disc(q2) * (-1) ** (q1.n * q2.n)
    assert lhs == rhs


@given(forms)
def test_disc_matches_oracle(q):
    assert signed_disc(q).to_fraction() == oracles.signed_disc([c.to_fraction() for c in q.coeffs])
