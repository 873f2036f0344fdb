import json

import pytest
from hypothesis import given, settings, strategies as st

from cliffinv.algwithinv import classify, from_clifford, identity_certificate, quaternion
from cliffinv.exactfield import is_square
from cliffinv.qspace import OrthSymmetry, QuadForm, scale, signed_disc
from cliffinv.structure import (CertChain, CliffordFactor, StructureError, biquaternion_rewrite,
                                clifford_model, compose_even, compose_full,
                                coordinate_permutation, decompose_even, decompose_full,
                                even_model, even_reduce, even_scaling, identity_types, predict_type,
                                quaternion_swap, realize_quaternion, second_kind_realize,
                                synthesize_multiquaternion, type_even_identity, type_reflection,
                                unitary_synthesize)

coeff = st.sampled_from([1, -1, 2, -2, 3, -3, 5, -5])


def sym(text):
    return OrthSymmetry.from_text(text)


@st.composite
def block(draw, sizes):
    n = draw(st.sampled_from(sizes))
    coeffs = draw(st.lists(coeff, min_size=n, max_size=n))
    signs = draw(st.lists(st.sampled_from([1, -1]), min_size=n, max_size=n))
    return QuadForm.of(*coeffs), OrthSymmetry(tuple(signs))


# -- full decomposition --------------------------------------------------------

def test_decompose_full_identity_example():
    cert = decompose_full(QuadForm.of(1, 1), sym("++"), QuadForm.of(7), sym("+"))
    assert cert.verified
    assert cert.meta["forms"] == (QuadForm.of(1, 1), QuadForm.of(-7))
    assert cert.meta["syms"] == (sym("++"), sym("-"))
    assert cert.meta["sign"] == cert.meta["uniform_sign"] == -1


def test_decompose_full_with_reflection_keeps_sigma():
    cert = decompose_full(QuadForm.of(2, 3), sym("-+"), QuadForm.of(5, -1), sym("+-"))
    assert cert.verified and cert.meta["syms"][1] == sym("+-")


def test_decompose_full_empty_second_block_is_identity():
    cert = decompose_full(QuadForm.of(2, 3), sym("+-"), QuadForm.of(), OrthSymmetry(()))
    assert cert.verified and cert.map.is_identity()


def test_compose_two_quaternions():
    cert = compose_full(QuadForm.of(2, 3), sym("--"), QuadForm.of(5, 7), sym("--"))
    assert cert.verified and cert.target.dim == 16
    assert cert.meta["form"] == QuadForm.of(2, 3, -30, -42)
    assert cert.target.same_as(from_clifford(cert.meta["form"], cert.meta["sym"]))


def test_decompose_full_needs_even_first_block():
    with pytest.raises(StructureError):
        decompose_full(QuadForm.of(1), sym("+"), QuadForm.of(1), sym("+"))


@settings(max_examples=25)
@given(block([2, 4]), block([0, 1, 2]))
def test_decompose_full_verifies(first, second):
    (q0, s0), (q, s) = first, second
    cert = decompose_full(q0, s0, q, s)
    assert cert.verified
    assert cert.meta["sign"] == cert.meta["uniform_sign"]
    assert cert.meta["forms"][1] == scale(signed_disc(q0), q)


@settings(max_examples=15)
@given(block([2]), block([1, 2]))
def test_compose_inverts_decompose(first, second):
    (q0, s0), (q, s) = first, second
    C = compose_full(q0, s0, q, s)
    D = decompose_full(q0, s0, C.meta["form"].restrict(range(2, 2 + q.n)),
                       C.meta["sym"].restrict(range(2, 2 + q.n)))
    assert C.verified and D.verified and C.target.same_as(D.source)


# -- even decomposition -----------------------------------------------------------

def test_even_of_minus_one_block():
    q = QuadForm.of(2, 3)
    for s1, s in [("+", "++"), ("-", "--")]:
        cert = decompose_even(QuadForm.of(-1), sym(s1), q, sym(s))
        assert cert.verified
        assert cert.target.factors[1].same_as(from_clifford(q, sym("--")))


def test_even_with_reflection_block():
    d, q = 3, QuadForm.of(2, 5)
    cert = decompose_even(QuadForm.of(-d), sym("-"), q, sym("++"))
    assert cert.verified
    assert cert.meta["forms"][1] == scale(d, q) and cert.meta["syms"][1] == sym("++")


def test_even_empty_second_block():
    cert = decompose_even(QuadForm.of(1, 2, 3), sym("+-+"), QuadForm.of(), OrthSymmetry(()))
    assert cert.verified and cert.source.dim == cert.target.dim == 4


@settings(max_examples=20)
@given(block([1, 3]), block([0, 1, 2]))
def test_decompose_even_verifies(first, second):
    (q1, s1), (q, s) = first, second
    cert = decompose_even(q1, s1, q, s)
    assert cert.verified and cert.meta["sign"] == cert.meta["uniform_sign"]
    assert cert.source.dim == 2 ** (q1.n + q.n - 1)


def test_compose_even_example():
    cert = compose_even(QuadForm.of(1), sym("-"), QuadForm.of(3, 5), sym("++"))
    assert cert.verified
    assert cert.meta["form"] == QuadForm.of(1, -3, -5)


# -- even reduction ---------------------------------------------------------------

def test_even_reduce_sum_of_three_squares():
    cert = even_reduce(QuadForm.of(1, 1, 1), OrthSymmetry.identity(3), 0)
    assert cert.verified
    assert cert.meta["form"] == QuadForm.of(-1, -1)
    assert cert.meta["sym"] == sym("--")
    assert cert.target.same_as(quaternion_as_clifford(-1, -1))
    assert classify(cert.target).type == "symplectic"
    assert cert.meta["g_certificate"].verified


def quaternion_as_clifford(a, b):
    return from_clifford(QuadForm.of(a, b), sym("--"))


def test_even_scaling_example():
    q = QuadForm.of(1, 3)
    chain = even_scaling(q, sym("+-"), 2)
    assert chain.verified and len(chain) == 3
    assert chain.source.same_as(even_model(q, sym("+-")))
    assert chain.target.same_as(even_model(QuadForm.of(2, 6), sym("+-")))


@settings(max_examples=20)
@given(block([1, 2, 3, 4]), st.data())
def test_even_reduce_any_pivot(b, data):
    q, s = b
    pivot = data.draw(st.integers(0, q.n - 1))
    cert = even_reduce(q, s, pivot)
    assert cert.verified and cert.source.dim == cert.target.dim == 2 ** (q.n - 1)


# -- quaternions --------------------------------------------------------------------

@pytest.mark.parametrize("mode,sym_dim", [("symplectic", 1), ("orthogonal_id", 3),
                                          ("orthogonal_reflection", 3)])
def test_realize_quaternion(mode, sym_dim):
    form, s, cert = realize_quaternion(2, 3, mode)
    assert cert.verified
    assert cert.target.symmetric_dim == sym_dim
    if mode == "orthogonal_reflection":
        assert s.is_reflection()
    if mode == "symplectic":
        assert s == sym("--")


def test_swap_example():
    cert = quaternion_swap(2, 3)
    assert cert.verified
    assert cert.meta["form"] == QuadForm.of("-2/3", 3) and cert.meta["sym"] == sym("-+")


def test_realize_rejects_unknown_mode():
    with pytest.raises(StructureError):
        realize_quaternion(1, 1, "unitary")


# -- type prediction --------------------------------------------------------------------

@pytest.mark.parametrize("n,s,expected", [(2, 0, "orthogonal"), (2, 2, "symplectic"),
                                          (4, 1, "orthogonal"), (6, 3, "orthogonal")])
def test_predict_type_examples(n, s, expected):
    assert predict_type(n, s) == expected


def test_type_tables():
    assert identity_types(2) == {"id": "orthogonal", "-id": "symplectic"}
    assert identity_types(4) == {"id": "symplectic", "-id": "symplectic"}
    assert type_reflection(2) == type_reflection(4) == "orthogonal"
    assert type_reflection(6) == "symplectic"
    assert [type_even_identity(n) for n in (1, 3, 5, 7)] == \
        ["orthogonal", "symplectic", "symplectic", "orthogonal"]
    with pytest.raises(StructureError):
        predict_type(3, 1)


# -- synthesis ----------------------------------------------------------------------

def test_single_factor_synthesis():
    F, S, chain, info = synthesize_multiquaternion([(2, 3, "symplectic")])
    assert F.n == 2 and chain.verified and info["product_type"] == "symplectic"


def test_two_orthogonal_factors_give_a_reflection():
    F, S, chain, info = synthesize_multiquaternion([(2, 3, "o"), (5, -1, "o")])
    assert F.n == 4 and S.is_reflection() and chain.verified
    assert classify(from_clifford(F, S)).type == "orthogonal"


@pytest.mark.parametrize("prefer,shape", [("plus", "++++"), ("minus", "----")])
def test_mixed_biquaternion_both_normalizations(prefer, shape):
    F, S, chain, info = synthesize_multiquaternion([(2, 3, "s"), (5, -1, "o")], prefer=prefer)
    assert str(S) == shape and chain.verified
    assert classify(chain.target).type == info["product_type"] == "symplectic"


def test_biquaternion_rewrite_round_trip():
    f1 = CliffordFactor(QuadForm.of(2, 3), 1)
    f2 = CliffordFactor(QuadForm.of(-1, 5), 1)
    new, cert = biquaternion_rewrite(f1, f2)
    assert cert.verified and [f.kind for f in new] == ["symplectic", "symplectic"]
    back, cert2 = biquaternion_rewrite(*new)
    assert cert2.verified and [f.kind for f in back] == ["orthogonal", "orthogonal"]


def test_rewrite_needs_matching_kinds():
    with pytest.raises(StructureError):
        biquaternion_rewrite(CliffordFactor(QuadForm.of(1, 1), 1), CliffordFactor(QuadForm.of(1, 1), -1))


def test_chain_continuity_enforced():
    chain = CertChain()
    chain.add("first", identity_certificate(quaternion(1, 1)))
    with pytest.raises(StructureError):
        chain.add("second", identity_certificate(quaternion(2, 3)))


def test_chain_json():
    cert = coordinate_permutation(QuadForm.of(1, 2, 3), sym("+-+"), [2, 0, 1])
    chain = CertChain().add("permute", cert)
    doc = json.loads(json.dumps(chain.to_json()))
    assert doc["schema"] == "cert-chain/1" and doc["verified"]
    assert doc["steps"][0]["checks"]["bijective"]["status"] == "pass"
    assert cert.meta["form"] == QuadForm.of(3, 1, 2)


# -- second kind ------------------------------------------------------------------------

def test_second_kind_example():
    out = second_kind_realize(-1, -1, 2)
    assert out["chain"].verified
    assert out["form"].n == 3
    assert out["disc_matches_c"] and is_square(out["disc"] / 2)
    assert all(stage.kind == "second" for stage in out["stages"])
    assert all(cert.target.dim == 8 for _, cert in out["chain"].steps)
    final = clifford_model(out["form"], out["sym"])
    assert len(final.center) == 2 and final.center_action == "conjugates-center"


def test_second_kind_rejects_square_c():
    with pytest.raises(StructureError):
        second_kind_realize(1, 1, 4)


def test_unitary_synthesis_two_factors():
    out = unitary_synthesize([(-1, -1), (-1, -3)], 5)
    iii, iv = out["iii"], out["iv"]
    assert iii["form"].n == 5 and iii["chain"].verified and iii["disc_nontrivial"]
    assert iii["disc_matches_c"]
    assert iv["form"].n == 6 and iv["chain"].verified
    assert all(s.type == "unitary" for s in iii["stages"] + iv["stages"])


def test_unitary_synthesis_one_factor():
    out = unitary_synthesize([(2, 3)], 5)
    assert out["iii"]["chain"].verified and out["iii"]["form"].n == 3
    v = out["v"]
    assert v["chain"].verified and v["form"].n == 4 and v["sym"].is_reflection()
