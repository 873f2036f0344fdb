"""Constructive decomposition and realization results as checked certificates.

Every public builder returns concrete data together with an
:class:`IsoCertificate` or a :class:`CertChain`; nothing is trusted that was
not verified on the full basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product as iproduct
from typing import Sequence

from .algwithinv import (AlgebraError, IsoCertificate, InvolutiveAlgebra, certify, classify,
                         clifford_to_alg, compose, from_clifford, from_even_clifford, invert,
                         pure_tensor, quadratic_extension_algebra, quaternion, tensor, tensor_many)
from .clifford import (CliffordElement, clifford_map_factor, even_universal_factor, popcount,
                       z_element)
from .exactfield import RATIONALS, FieldScalar, as_scalar, is_square
from .linalg import LinearMapTable
from .qspace import (FormError, OrthSymmetry, QuadForm, orth_sum, scale, signed_disc,
                     symmetry_disc_sign)

CHAIN_SCHEMA = "cert-chain/1"


class StructureError(ValueError):
    pass


# -- cached algebra models ---------------------------------------------------

@lru_cache(maxsize=256)
def clifford_model(q: QuadForm, sigma: OrthSymmetry) -> InvolutiveAlgebra:
    return from_clifford(q, sigma)


@lru_cache(maxsize=256)
def even_model(q: QuadForm, sigma: OrthSymmetry) -> InvolutiveAlgebra:
    return from_even_clifford(q, sigma)


# -- chains ------------------------------------------------------------------

@dataclass
class CertChain:
    steps: list = field(default_factory=list)  # list[(description, IsoCertificate)]

    def add(self, description: str, cert: IsoCertificate) -> "CertChain":
        if self.steps and not self.steps[-1][1].target.same_as(cert.source):
            raise StructureError(f"step '{description}' does not start where the chain ends")
        self.steps.append((description, cert))
        return self

    def extend(self, other: "CertChain") -> "CertChain":
        for desc, cert in other.steps:
            self.add(desc, cert)
        return self

    @property
    def source(self) -> InvolutiveAlgebra:
        return self.steps[0][1].source

    @property
    def target(self) -> InvolutiveAlgebra:
        return self.steps[-1][1].target

    @property
    def verified(self) -> bool:
        if not self.steps:
            return False
        for t, (_, cert) in enumerate(self.steps):
            if not cert.verified:
                return False
            if t and not self.steps[t - 1][1].target.same_as(cert.source):
                return False
        return True

    def failures(self) -> list:
        return [(d, c.failures()) for d, c in self.steps if not c.verified]

    def total(self) -> LinearMapTable:
        M = self.steps[0][1].map
        for _, cert in self.steps[1:]:
            M = cert.map.compose(M)
        return M

    def __len__(self):
        return len(self.steps)

    def to_json(self) -> dict:
        return {
            "schema": CHAIN_SCHEMA,
            "verified": self.verified,
            "steps": [{
                "description": desc,
                "source_dim": cert.source.dim,
                "target_dim": cert.target.dim,
                "map": cert.map.to_json()["entries"],
                "checks": {k: v.to_json() for k, v in cert.checks.items()},
            } for desc, cert in self.steps],
        }


def lift(cert: IsoCertificate, left: Sequence[InvolutiveAlgebra] = (),
         right: Sequence[InvolutiveAlgebra] = (), description: str | None = None) -> IsoCertificate:
    """id_left (x) cert (x) id_right, verified on the whole product."""
    if not left and not right:
        return cert
    M = cert.map
    field_ = cert.source.field
    dl = 1
    for A in left:
        dl *= A.dim
    dr = 1
    for A in right:
        dr *= A.dim
    if left:
        M = LinearMapTable.identity(dl, field_).kron(M)
    if right:
        M = M.kron(LinearMapTable.identity(dr, field_))
    src = tensor_many(list(left) + [cert.source] + list(right))
    tgt = tensor_many(list(left) + [cert.target] + list(right))
    out = certify(src, tgt, M, description or cert.description)
    out.meta = dict(cert.meta)
    return out


def factor_permutation_certificate(algebras: Sequence[InvolutiveAlgebra],
                                   order: Sequence[int]) -> IsoCertificate:
    """A_1 (x) ... (x) A_n -> A_{order[0]} (x) ... (x) A_{order[n-1]}."""
    n = len(algebras)
    if sorted(order) != list(range(n)):
        raise StructureError(f"{order} is not a permutation of {n} factors")
    dims = [A.dim for A in algebras]
    new_dims = [dims[p] for p in order]
    strides = [1] * n
    for t in range(n - 2, -1, -1):
        strides[t] = strides[t + 1] * new_dims[t + 1]
    pos = {p: t for t, p in enumerate(order)}
    one = algebras[0].field.one
    cols = []
    for multi in iproduct(*[range(d) for d in dims]):
        idx = sum(multi[f] * strides[pos[f]] for f in range(n))
        cols.append({idx: one})
    total = len(cols)
    M = LinearMapTable(total, total, cols, algebras[0].field)
    return certify(tensor_many(list(algebras)), tensor_many([algebras[p] for p in order]), M,
                   f"reorder tensor factors {list(order)}")


def coordinate_permutation(q: QuadForm, sigma: OrthSymmetry, order: Sequence[int]) -> IsoCertificate:
    """C(q), J^sigma -> C(q'), J^sigma' where coordinate k of q' is coordinate order[k] of q."""
    if sorted(order) != list(range(q.n)):
        raise StructureError(f"{order} is not a permutation of {q.n} coordinates")
    q2, s2 = q.permute(order), sigma.permute(order)
    tgt = clifford_model(q2, s2)
    pos = {p: t for t, p in enumerate(order)}
    images = [tgt.basis(1 << pos[i]) for i in range(q.n)]
    M = clifford_map_factor(images, q, tgt, verify=False)
    cert = certify(clifford_model(q, sigma), tgt, M, f"permute coordinates {list(order)}")
    cert.meta.update(form=q2, sym=s2)
    return cert


def scaling_isometry(q: QuadForm, sigma: OrthSymmetry, lam) -> IsoCertificate:
    """C(lam^2 q), J^sigma -> C(q), J^sigma with e_k -> lam e_k."""
    lam = as_scalar(lam, q.field)
    src_form = scale(lam * lam, q)
    tgt = clifford_model(q, sigma)
    cols = []
    for mask in range(1 << q.n):
        cols.append({mask: lam ** popcount(mask)})
    M = LinearMapTable(1 << q.n, 1 << q.n, cols, q.field)
    return certify(clifford_model(src_form, sigma), tgt, M, f"isometry e -> {lam} e")


# -- decomposition of full Clifford algebras --------------------------------

def full_sign(sigma0: OrthSymmetry) -> int:
    """Sign multiplying sigma on the second factor of decompose_full."""
    n0, s = sigma0.n, sigma0.s
    sign = (-1) ** (s + 1) if n0 % 4 == 2 else (-1) ** s
    if sign != symmetry_disc_sign(sigma0):
        raise StructureError("case-split sign disagrees with the discriminant form")
    return sign


def even_sign(sigma1: OrthSymmetry) -> int:
    """Sign multiplying sigma on the second factor of decompose_even."""
    n1, s = sigma1.n, sigma1.s
    sign = (-1) ** (s + 1) if n1 % 4 == 1 else (-1) ** s
    if sign != -symmetry_disc_sign(sigma1):
        raise StructureError("case-split sign disagrees with the discriminant form")
    return sign


def decompose_full(q0: QuadForm, sigma0: OrthSymmetry, q: QuadForm,
                   sigma: OrthSymmetry) -> IsoCertificate:
    """C(q0 + q), J^{sigma0 + sigma} -> C(q0) (x) C(d q), J^{sigma0} (x) J^{eps sigma}."""
    if q0.n % 2:
        raise StructureError("decompose_full needs an even-dimensional first block")
    sigma0.check_matches(q0)
    sigma.check_matches(q)
    d = signed_disc(q0)
    eps = full_sign(sigma0)
    q2, s2 = scale(d, q), sigma.scaled(eps)
    A0 = clifford_model(q0, sigma0)
    T = tensor(A0, clifford_model(q2, s2))
    zinv = z_element(sigma0, q0).blade_inverse()
    images = [pure_tensor(T, CliffordElement.generator(q0, i), {0: q0.field.one})
              for i in range(q0.n)]
    images += [pure_tensor(T, zinv, CliffordElement.generator(q2, k)) for k in range(q.n)]
    source_form = orth_sum(q0, q)
    M = clifford_map_factor(images, source_form, T, verify=False)
    cert = certify(clifford_model(source_form, sigma0.oplus(sigma)), T, M,
                   f"decompose C({source_form}) = C({q0}) (x) C({q2})")
    cert.meta.update(sign=eps, uniform_sign=symmetry_disc_sign(sigma0), forms=(q0, q2),
                     syms=(sigma0, s2))
    return cert.require()


def compose_full(q0: QuadForm, sigma0: OrthSymmetry, q: QuadForm,
                 sigma: OrthSymmetry) -> IsoCertificate:
    """C(q0) (x) C(q), J^{sigma0} (x) J^sigma -> C(q0 + d q), J^{sigma0 + eps sigma}."""
    if q0.n % 2:
        raise StructureError("compose_full needs an even-dimensional first block")
    d = signed_disc(q0)
    eps = full_sign(sigma0)
    dq = scale(d, q)
    D = decompose_full(q0, sigma0, dq, sigma.scaled(eps))
    # D lands in C(q0) (x) C(d^2 q), J^sigma; rescale the second factor to C(q).
    H = scaling_isometry(q, sigma, d).map
    M = LinearMapTable.identity(1 << q0.n, q.field).kron(H).compose(D.map)
    src = tensor(clifford_model(q0, sigma0), clifford_model(q, sigma))
    form, sym = orth_sum(q0, dq), sigma0.oplus(sigma.scaled(eps))
    cert = certify(src, D.source, M.inverse(), f"compose C({q0}) (x) C({q}) = C({form})")
    cert.meta.update(form=form, sym=sym, sign=eps)
    return cert.require()


# -- even Clifford algebras --------------------------------------------------

def decompose_even(q1: QuadForm, sigma1: OrthSymmetry, q: QuadForm,
                   sigma: OrthSymmetry) -> IsoCertificate:
    """C_0(q1 + q), J^{sigma1+sigma} -> C_0(q1) (x) C(-d1 q), J^{sigma1} (x) J^{eps sigma}."""
    if q1.n % 2 == 0:
        raise StructureError("decompose_even needs an odd-dimensional first block")
    sigma1.check_matches(q1)
    sigma.check_matches(q)
    d1 = signed_disc(q1)
    eps = even_sign(sigma1)
    q2, s2 = scale(-d1, q), sigma.scaled(eps)
    T = tensor(even_model(q1, sigma1), clifford_model(q2, s2))
    zinv = z_element(sigma1, q1).blade_inverse()
    one2 = CliffordElement.scalar(q2)
    # u(x) = x1 (x) 1 + z^-1 (x) x and ubar(y) = y1 (x) 1 - z^-1 (x) y, as pure tensors.
    left = [(CliffordElement.generator(q1, i), one2) for i in range(q1.n)]
    left += [(zinv, CliffordElement.generator(q2, k)) for k in range(q.n)]
    right = [(a, b) if t < q1.n else (a, -b) for t, (a, b) in enumerate(left)]
    full = orth_sum(q1, q)
    psi = {}
    for i in range(full.n):
        for j in range(full.n):
            a = left[i][0] * right[j][0]
            b = left[i][1] * right[j][1]
            psi[(i, j)] = pure_tensor(T, a, b)
    M = even_universal_factor(psi, full, T, verify=False)
    cert = certify(even_model(full, sigma1.oplus(sigma)), T, M,
                   f"decompose C0({full}) = C0({q1}) (x) C({q2})")
    cert.meta.update(sign=eps, uniform_sign=-symmetry_disc_sign(sigma1), forms=(q1, q2),
                     syms=(sigma1, s2))
    return cert.require()


def compose_even(q1: QuadForm, sigma1: OrthSymmetry, q: QuadForm,
                 sigma: OrthSymmetry) -> IsoCertificate:
    """C_0(q1) (x) C(q) -> C_0(q1 + (-d1) q), J^{sigma1 + eps sigma}."""
    if q1.n % 2 == 0:
        raise StructureError("compose_even needs an odd-dimensional first block")
    d1 = signed_disc(q1)
    eps = even_sign(sigma1)
    mq = scale(-d1, q)
    D = decompose_even(q1, sigma1, mq, sigma.scaled(eps))
    H = scaling_isometry(q, sigma, -d1).map
    M = LinearMapTable.identity(1 << (q1.n - 1), q.field).kron(H).compose(D.map)
    src = tensor(even_model(q1, sigma1), clifford_model(q, sigma))
    form, sym = orth_sum(q1, mq), sigma1.oplus(sigma.scaled(eps))
    cert = certify(src, D.source, M.inverse(), f"compose C0({q1}) (x) C({q}) = C0({form})")
    cert.meta.update(form=form, sym=sym, sign=eps)
    return cert.require()


def reduced_form(q: QuadForm, sigma: OrthSymmetry, pivot: int) -> tuple[QuadForm, OrthSymmetry]:
    if not 0 <= pivot < q.n:
        raise StructureError(f"pivot {pivot} out of range for dimension {q.n}")
    rest = [i for i in range(q.n) if i != pivot]
    d = q.coeffs[pivot]
    return scale(-d, q.restrict(rest)), sigma.restrict(rest).scaled(-sigma.signs[pivot])


def even_reduce(q: QuadForm, sigma: OrthSymmetry, pivot: int = 0) -> IsoCertificate:
    """C_0(q), J^sigma -> C(V', -d q'), J^{sigma'} with sigma' = -eps sigma|V'."""
    sigma.check_matches(q)
    q2, s2 = reduced_form(q, sigma, pivot)
    C0 = even_model(q, sigma)
    v = CliffordElement.generator(q, pivot)
    rest = [i for i in range(q.n) if i != pivot]
    images = [clifford_to_alg(C0, v * CliffordElement.generator(q, i)) for i in rest]
    G = clifford_map_factor(images, q2, C0, verify=False)
    g_cert = certify(clifford_model(q2, s2), C0, G, f"G: C({q2}) -> C0({q}) via e_{pivot + 1}")
    g_cert.require()
    cert = invert(g_cert, f"even reduction of C0({q}) at e{pivot + 1}")
    cert.meta.update(form=q2, sym=s2, g_certificate=g_cert)
    return cert.require()


def even_scaling(q: QuadForm, sigma: OrthSymmetry, a, pivot: int = 0) -> CertChain:
    """C_0(q), J^sigma -> C_0(a q), J^sigma through two even reductions."""
    a = as_scalar(a, q.field)
    E1 = even_reduce(q, sigma, pivot)
    E2 = even_reduce(scale(a, q), sigma, pivot)
    target_form = E2.meta["form"]
    S = scaling_isometry(target_form, E2.meta["sym"], a.inverse())
    chain = CertChain()
    chain.add("even reduction of q", E1)
    chain.add("isometry between reduced forms", S)
    chain.add("inverse even reduction of a.q", invert(E2))
    return chain


# -- quaternions --------------------------------------------------------------

REALIZE_MODES = ("symplectic", "orthogonal_id", "orthogonal_reflection")


def realize_quaternion(a, b, mode: str):
    """Return (form, symmetry, certificate quaternion model -> Clifford model)."""
    a, b = as_scalar(a), as_scalar(b)
    if a.is_zero() or b.is_zero():
        raise StructureError("quaternion parameters must be nonzero")
    if mode == "symplectic":
        Q = quaternion(a, b, "canonical")
        form, sym = QuadForm((a, b)), OrthSymmetry((-1, -1))
        images = [Q.basis(1), Q.basis(2)]
    elif mode == "orthogonal_id":
        Q = quaternion(a, b, "orthogonal_wv")
        form, sym = QuadForm((-a * b, b)), OrthSymmetry((1, 1))
        images = [Q.basis(3), Q.basis(2)]
    elif mode == "orthogonal_reflection":
        Q = quaternion(a, b, "orthogonal_uv")
        form, sym = QuadForm((a, b)), OrthSymmetry((-1, 1))
        images = [-Q.basis(1), Q.basis(2)]
    else:
        raise StructureError(f"unknown realization mode {mode!r}")
    C = clifford_model(form, sym)
    phi = certify(C, Q, clifford_map_factor(images, form, Q), f"C({form}) -> quaternion ({a},{b})")
    cert = invert(phi, f"quaternion ({a},{b}) -> C({form}), J^{sym}")
    cert.meta.update(form=form, sym=sym)
    return form, sym, cert


def quaternion_swap(alpha, beta) -> IsoCertificate:
    """C(<alpha,beta>), J^{++} -> C(<-alpha/beta, beta>), J^{-+} with e1 -> e1 e2, e2 -> e2."""
    alpha, beta = as_scalar(alpha), as_scalar(beta)
    src_form = QuadForm((alpha, beta))
    tgt_form = QuadForm((-alpha / beta, beta))
    T = clifford_model(tgt_form, OrthSymmetry((-1, 1)))
    images = [T.basis(3), T.basis(2)]
    M = clifford_map_factor(images, src_form, T, verify=False)
    cert = certify(clifford_model(src_form, OrthSymmetry((1, 1))), T, M,
                   f"swap C({src_form}), J^++ -> C({tgt_form}), J^-+")
    cert.meta.update(form=tgt_form, sym=OrthSymmetry((-1, 1)))
    return cert.require()


# -- type prediction -----------------------------------------------------------

def predict_type(n: int, s: int) -> str:
    if n % 2 or n < 0:
        raise StructureError("predict_type needs an even dimension")
    if not 0 <= s <= n:
        raise StructureError(f"s={s} outside [0, {n}]")
    return "orthogonal" if (n - 2 * s) % 8 in (0, 2) else "symplectic"


def identity_types(n: int) -> dict:
    """Types of J^{id} and J^{-id} on C(q), n even."""
    return {"id": predict_type(n, 0), "-id": predict_type(n, n)}


def type_reflection(n: int) -> str:
    return predict_type(n, 1)


def type_even_identity(n: int) -> str:
    """Type of J^{id} on C_0(q), n odd, via the even reduction C_0(q) = C(-d q'), J^{-id}."""
    if n % 2 == 0:
        raise StructureError("needs an odd dimension")
    return predict_type(n - 1, n - 1)


# -- multiquaternion synthesis -------------------------------------------------

_SYMP = ("symplectic", "canonical", "s")
_ORTH = ("orthogonal", "orthogonal_uv", "orthogonal_wv", "orthogonal_id",
         "orthogonal_reflection", "o")


def _mode_kind(mode: str) -> str:
    if mode in _SYMP:
        return "symplectic"
    if mode in _ORTH:
        return "orthogonal"
    raise StructureError(f"unknown involution mode {mode!r}")


@dataclass
class CliffordFactor:
    """A tensor factor of the form (C(form), J^{sign * id})."""
    form: QuadForm
    sign: int

    @property
    def sym(self) -> OrthSymmetry:
        return OrthSymmetry((self.sign,) * self.form.n)

    @property
    def kind(self) -> str:
        return "orthogonal" if self.sign > 0 else "symplectic"

    def model(self) -> InvolutiveAlgebra:
        return clifford_model(self.form, self.sym)


def target_pattern(n: int, product_type: str, prefer: str = "plus") -> tuple[str, list[str]]:
    """Normalized symmetry (plus, minus, reflection) and the factor kinds it needs."""
    if n % 2:
        if (n % 4 == 1) == (product_type == "symplectic"):
            shape = "minus"
        else:
            shape = "plus"
    else:
        matches = (n % 4 == 0 and product_type == "orthogonal") or \
                  (n % 4 == 2 and product_type == "symplectic")
        shape = prefer if matches else "reflection"
    if shape == "plus":
        kinds = ["orthogonal" if k % 2 == 0 else "symplectic" for k in range(n)]
    elif shape == "minus":
        kinds = ["symplectic" if k % 2 == 0 else "orthogonal" for k in range(n)]
    else:
        kinds = ["orthogonal" if k % 2 == 0 else "symplectic" for k in range(n - 1)] + ["orthogonal"]
    return shape, kinds


def biquaternion_rewrite(f1: CliffordFactor, f2: CliffordFactor):
    """(C(q1),J^{+-id}) (x) (C(q2),J^{+-id}) with equal signs -> the opposite signs.

    Returns (new factors, certificate).
    """
    if f1.sign != f2.sign or f1.form.n != 2 or f2.form.n != 2:
        raise StructureError("rewrite needs two quaternion factors of the same kind")
    c1 = compose_full(f1.form, f1.sym, f2.form, f2.sym)
    form, sym = c1.meta["form"], c1.meta["sym"]
    P = coordinate_permutation(form, sym, [2, 3, 0, 1])
    pform, psym = P.meta["form"], P.meta["sym"]
    D = decompose_full(pform.restrict([0, 1]), psym.restrict([0, 1]),
                       pform.restrict([2, 3]), psym.restrict([2, 3]))
    g1, g2 = D.meta["forms"]
    s1, s2 = D.meta["syms"]
    new = [CliffordFactor(g1, s1.signs[0]), CliffordFactor(g2, s2.signs[0])]
    if any(f.sign == f1.sign for f in new):
        raise StructureError("rewrite did not flip the involution kinds")
    cert = compose(compose(c1, P), D, f"rewrite two {f1.kind} factors as two {new[0].kind} ones")
    return new, cert.require()


def synthesize_from_factors(factors: Sequence[CliffordFactor], shape: str,
                            kinds: Sequence[str]) -> tuple[QuadForm, OrthSymmetry, CertChain]:
    """Chain from (x) C(form_k), J^{+-id} to one Clifford algebra with a normalized symmetry."""
    chain = CertChain()
    facs = list(factors)
    n = len(facs)
    need = sum(1 for k in kinds if k == "symplectic")
    have = sum(1 for f in facs if f.kind == "symplectic")
    if (need - have) % 2:
        raise StructureError("factor kinds cannot reach the target pattern")
    # Pick the pairs to rewrite and move them to the front.
    src_kind = "symplectic" if have > need else "orthogonal"
    pool = [i for i, f in enumerate(facs) if f.kind == src_kind]
    chosen = pool[:abs(have - need)]
    order = chosen + [i for i in range(n) if i not in chosen]
    if order != list(range(n)):
        chain.add("reorder factors for rewriting",
                  factor_permutation_certificate([f.model() for f in facs], order))
        facs = [facs[i] for i in order]
    for t in range(0, len(chosen), 2):
        new, cert = biquaternion_rewrite(facs[t], facs[t + 1])
        left = [f.model() for f in facs[:t]]
        right = [f.model() for f in facs[t + 2:]]
        chain.add(cert.description, lift(cert, left, right))
        facs[t:t + 2] = new
    # Arrange factor kinds to match the pattern.
    slots = {"symplectic": [i for i, f in enumerate(facs) if f.kind == "symplectic"],
             "orthogonal": [i for i, f in enumerate(facs) if f.kind == "orthogonal"]}
    order = [slots[k].pop(0) for k in kinds]
    if order != list(range(n)):
        chain.add("reorder factors to the target pattern",
                  factor_permutation_certificate([f.model() for f in facs], order))
        facs = [facs[i] for i in order]
    models = [f.model() for f in facs]
    last_form, last_sym = facs[-1].form, facs[-1].sym
    if shape == "reflection":
        sw = quaternion_swap(last_form.coeffs[0], last_form.coeffs[1])
        chain.add("realize the last factor with a reflection", lift(sw, models[:-1]))
        last_form, last_sym = sw.meta["form"], sw.meta["sym"]
        models[-1] = sw.target
    F, S = last_form, last_sym
    for k in range(n - 2, -1, -1):
        cf = compose_full(facs[k].form, facs[k].sym, F, S)
        chain.add(f"absorb factor {k + 1}", lift(cf, models[:k]))
        F, S = cf.meta["form"], cf.meta["sym"]
    if not chain.steps:
        chain.add("identity", certify(models[0], models[0],
                                      LinearMapTable.identity(models[0].dim, RATIONALS), "identity"))
    return F, S, chain


def _parse_factor(f) -> tuple:
    if len(f) != 3:
        raise StructureError(f"factor {f!r} must be (a, b, mode)")
    a, b, mode = f
    return as_scalar(a), as_scalar(b), _mode_kind(mode)


def synthesize_multiquaternion(factors: Sequence, prefer: str = "plus"):
    """(x) (Q_k, J_k) -> (C(q), J^sigma) with dim q = 2n and sigma normalized.

    Returns (form, symmetry, chain, info) where info records the product type
    and the pattern used.
    """
    if not factors:
        raise StructureError("empty factor list")
    parsed = [_parse_factor(f) for f in factors]
    n = len(parsed)
    quats = [quaternion(a, b, "canonical" if k == "symplectic" else "orthogonal_wv")
             for a, b, k in parsed]
    model = tensor_many(quats)
    ptype = classify(model).type
    shape, kinds = target_pattern(n, ptype, prefer)
    realized = []
    certs = []
    for a, b, k in parsed:
        mode = "symplectic" if k == "symplectic" else "orthogonal_id"
        form, sym, cert = realize_quaternion(a, b, mode)
        realized.append(CliffordFactor(form, sym.signs[0]))
        certs.append(cert)
    chain = CertChain()
    M = certs[0].map
    for c in certs[1:]:
        M = M.kron(c.map)
    chain.add("realize each quaternion factor",
              certify(model, tensor_many([c.target for c in certs]), M,
                      "realize each quaternion factor"))
    F, S, rest = synthesize_from_factors(realized, shape, kinds)
    if not _is_trivial(rest):
        chain.extend(rest)
    info = {"product_type": ptype, "shape": shape, "kinds": list(kinds)}
    return F, S, chain, info


# -- second kind ---------------------------------------------------------------

def _check_nonsquare(c) -> FieldScalar:
    c = as_scalar(c)
    if c.is_zero() or is_square(c):
        raise StructureError(f"{c} is a square; the extension degenerates")
    return c


def orthogonalize_first_factor(a, b, c):
    """(Q_(a,b), gamma) (x) (K, conj) -> (C(<d,e>), J^{id}) (x) (C(<c>), J^-).

    Returns (d, e, chain).  The chain runs through C(<a,b,-abc>), J^{--+}.
    """
    a, b, c = as_scalar(a), as_scalar(b), _check_nonsquare(c)
    K = quadratic_extension_algebra(c)
    Q = quaternion(a, b, "canonical")
    kform, ksym = QuadForm((c,)), OrthSymmetry((-1,))
    chain = CertChain()
    form, sym, rq = realize_quaternion(a, b, "symplectic")
    Kc = clifford_model(kform, ksym)
    chain.add("realize (Q, gamma) (x) (K, conj) as Clifford factors",
              certify(tensor(Q, K), tensor(rq.target, Kc), rq.map.kron(
                  LinearMapTable.identity(2, RATIONALS)), "realize Q and K"))
    c1 = compose_full(form, sym, kform, ksym)
    chain.add("compose into C(<a,b,-abc>)", c1)
    P = coordinate_permutation(c1.meta["form"], c1.meta["sym"], [1, 2, 0])
    chain.add("move e1 last", P)
    pf, ps = P.meta["form"], P.meta["sym"]
    D = decompose_full(pf.restrict([0, 1]), ps.restrict([0, 1]), pf.restrict([2]), ps.restrict([2]))
    chain.add("split off a quaternion factor", D)
    (f1, f2), (s1, s2) = D.meta["forms"], D.meta["syms"]
    # f2 = <a * d0> = (ab)^2 <c>; rescale to <c>.
    lam = a * b
    if scale(lam * lam, kform) != f2:
        raise StructureError("unexpected second factor form")
    H = scaling_isometry(kform, s2, lam)
    chain.add("rescale the extension factor", lift(H, [D.target.factors[0]]))
    # Corollary swap backwards: C(<A,B>), J^{-+} -> C(<-AB, B>), J^{++}.
    A_, B_ = f1.coeffs
    d, e = -A_ * B_, B_
    sw = invert(quaternion_swap(d, e), "swap to an orthogonal quaternion factor")
    chain.add(sw.description, lift(sw, [], [Kc]))
    return d, e, chain


def second_kind_realize(a, b, c) -> dict:
    """Realization of (Q_(a,b), gamma) (x) (Q(sqrt c), conj).

    Returns a dict with the clause (ii) tensor model, the clause (iii)
    orthogonal-factor model, the clause (iv) form and symmetry, the full
    chain and the per-stage classifications.
    """
    a, b, c = as_scalar(a), as_scalar(b), _check_nonsquare(c)
    d, e, chain = orthogonalize_first_factor(a, b, c)
    iii_model = chain.target
    kform, ksym = QuadForm((c,)), OrthSymmetry((-1,))
    cf = compose_full(QuadForm((d, e)), OrthSymmetry((1, 1)), kform, ksym)
    chain.add("compose into a 3-dimensional form", cf)
    P = coordinate_permutation(cf.meta["form"], cf.meta["sym"], [2, 0, 1])
    chain.add("order as <-dec, d, e>", P)
    form, sym = P.meta["form"], P.meta["sym"]
    stages = [classify(chain.source)] + [classify(cert.target) for _, cert in chain.steps]
    disc = signed_disc(form)
    return {
        "d": d, "e": e,
        "form": form, "sym": sym,
        "chain": chain,
        "model_ii": chain.source,
        "model_iii": iii_model,
        "stages": stages,
        "disc": disc,
        "disc_matches_c": is_square(disc / c),
    }


def _kmodel(c):
    return clifford_model(QuadForm((c,)), OrthSymmetry((-1,)))


def _is_trivial(chain: CertChain) -> bool:
    return len(chain) == 1 and chain.steps[0][0] == "identity"


def _minus_pattern_chain(factors: Sequence[CliffordFactor], c):
    """(x) factors (x) K -> C(q), J^{-id} (x) K; requires a compatible mix."""
    n = len(factors)
    kinds = ["symplectic" if k % 2 == 0 else "orthogonal" for k in range(n)]
    F, S, chain = synthesize_from_factors(factors, "minus", kinds)
    K = _kmodel(c)
    lifted = CertChain()
    for desc, cert in chain.steps:
        lifted.add(desc, lift(cert, [], [K]))
    return F, S, lifted


def unitary_synthesize(factors: Sequence, c) -> dict:
    """Realize (Q_1,gamma_1) (x) ... (x) (Q_n,gamma_n) (x) (K, conj), K = Q(sqrt c).

    Clause (iii): a form of dimension 2n+1 whose Clifford algebra with J^{id}
    (n odd) or J^{-id} (n even) is isomorphic to the product.  Clause (iv)
    (n even): C_0 of a (2n+2)-dimensional form with J^{id}.  Clause (v)
    (n odd): C_0 of a (2n+2)-dimensional form with a reflection.
    """
    c = _check_nonsquare(c)
    pairs = [(as_scalar(f[0]), as_scalar(f[1])) for f in factors]
    n = len(pairs)
    if n < 1:
        raise StructureError("need at least one quaternion factor")
    result = {"n": n, "c": c}
    result["iii"] = _clause_iii(pairs, c)
    if n % 2 == 0:
        result["iv"] = _clause_iv(pairs, c)
    else:
        result["v"] = _clause_v(pairs, c)
    return result


def _product_model(pairs, c):
    return tensor_many([quaternion(a, b, "canonical") for a, b in pairs] +
                       [quadratic_extension_algebra(c)])


def _realize_all(pairs, c, chain: CertChain):
    """Add the realize step; return the Clifford factors (all -id)."""
    model = _product_model(pairs, c)
    certs = [realize_quaternion(a, b, "symplectic")[2] for a, b in pairs]
    M = certs[0].map
    for cc in certs[1:]:
        M = M.kron(cc.map)
    M = M.kron(LinearMapTable.identity(2, RATIONALS))
    tgt = tensor_many([cc.target for cc in certs] + [_kmodel(c)])
    chain.add("realize each factor", certify(model, tgt, M, "realize each factor"))
    return [CliffordFactor(QuadForm((a, b)), -1) for a, b in pairs]


def _to_minus_clifford(pairs, c):
    """Chain (x) Q_k (x) K -> C(q), J^{-id} (x) C(<c>), J^- ; dim q = 2n."""
    n = len(pairs)
    chain = CertChain()
    facs = _realize_all(pairs, c, chain)
    need = (n + 1) // 2
    if (n - need) % 2:
        # One replacement turns the first factor orthogonal.
        K = _kmodel(c)
        models = [f.model() for f in facs]
        order = [0, n] + list(range(1, n))
        if n > 1:
            chain.add("bring K next to the first factor",
                      factor_permutation_certificate(models + [K], order))
        d, e, ortho = orthogonalize_first_factor(*pairs[0], c)
        for desc, cert in ortho.steps[1:]:
            chain.add(desc, lift(cert, [], models[1:]))
        facs[0] = CliffordFactor(QuadForm((d, e)), 1)
        if n > 1:
            back = [0] + list(range(2, n + 1)) + [1]
            current = [facs[0].model(), K] + models[1:]
            chain.add("move K back to the end", factor_permutation_certificate(current, back))
    F, S, rest = _minus_pattern_chain(facs, c)
    if not _is_trivial(rest):
        chain.extend(rest)
    return F, S, chain


def _stages(chain: CertChain) -> list:
    return [classify(chain.source)] + [classify(cert.target) for _, cert in chain.steps]


def _clause_iii(pairs, c) -> dict:
    n = len(pairs)
    F, S, chain = _to_minus_clifford(pairs, c)
    kform, ksym = QuadForm((c,)), OrthSymmetry((-1,))
    cf = compose_full(F, S, kform, ksym)
    chain.add("absorb K", cf)
    form, sym = cf.meta["form"], cf.meta["sym"]
    if n % 2:
        m = form.n
        order = [m - 2, m - 1] + list(range(m - 2))
        P = coordinate_permutation(form, sym, order)
        chain.add("move the mixed block first", P)
        pf, ps = P.meta["form"], P.meta["sym"]
        D = decompose_full(pf.restrict([0, 1]), ps.restrict([0, 1]),
                           pf.restrict(range(2, m)), ps.restrict(range(2, m)))
        chain.add("split off the mixed quaternion", D)
        (g1, g2), (t1, t2) = D.meta["forms"], D.meta["syms"]
        A_, B_ = g1.coeffs
        sw = invert(quaternion_swap(-A_ * B_, B_), "swap the mixed quaternion to J^{++}")
        chain.add(sw.description, lift(sw, [], [D.target.factors[1]]))
        cf2 = compose_full(sw.target.form, sw.target.sigma, g2, t2)
        chain.add("recombine", cf2)
        form, sym = cf2.meta["form"], cf2.meta["sym"]
    disc = signed_disc(form)
    return {"form": form, "sym": sym, "chain": chain, "disc": disc,
            "disc_nontrivial": not is_square(disc), "disc_matches_c": is_square(disc / c),
            "stages": _stages(chain)}


def _clause_iv(pairs, c) -> dict:
    F, S, chain = _to_minus_clifford(pairs, c)
    kform, ksym = QuadForm((c,)), OrthSymmetry((-1,))
    one = QuadForm((-1,))
    D = decompose_even(one, OrthSymmetry((1,)), F, OrthSymmetry.identity(F.n))
    back = invert(D, "C(q), J^{-id} -> C0(<-1> + q), J^{id}")
    chain.add(back.description, lift(back, [], [_kmodel(c)]))
    q1 = orth_sum(one, F)
    ce = compose_even(q1, OrthSymmetry.identity(q1.n), kform, ksym)
    chain.add("absorb K into the even algebra", ce)
    return {"form": ce.meta["form"], "sym": ce.meta["sym"], "chain": chain,
            "stages": _stages(chain)}


def _clause_v(pairs, c) -> dict:
    n = len(pairs)
    chain = CertChain()
    facs = _realize_all(pairs, c, chain)
    K = _kmodel(c)
    models = [f.model() for f in facs]
    # Replacement on Q_1 (x) K makes the first factor orthogonal.
    if n > 1:
        chain.add("bring K next to the first factor",
                  factor_permutation_certificate(models + [K], [0, n] + list(range(1, n))))
    d, e, ortho = orthogonalize_first_factor(*pairs[0], c)
    for desc, cert in ortho.steps[1:]:
        chain.add(desc, lift(cert, [], models[1:]))
    q1 = QuadForm((d, e))
    first = clifford_model(q1, OrthSymmetry((1, 1)))
    one = QuadForm((-1,))
    tau = OrthSymmetry((-1,))
    D = decompose_even(one, tau, q1, OrthSymmetry((1, 1)))
    back = invert(D, "C(q1), J^{id} -> C0(<-1> + q1), J^tau")
    chain.add(back.description, lift(back, [], [K] + models[1:]))
    qprime = orth_sum(one, q1)
    tauprime = tau.oplus(OrthSymmetry((1, 1)))
    E = even_model(qprime, tauprime)
    if n > 1:
        chain.add("move K to the end",
                  factor_permutation_certificate([E, K] + models[1:],
                                                 [0] + list(range(2, n + 1)) + [1]))
        sub = _clause_iii(pairs[1:], c)
        rest_form, rest_sym = sub["form"], sub["sym"]
        for desc, cert in sub["chain"].steps:
            chain.add(desc, lift(cert, [E]))
    else:
        rest_form, rest_sym = QuadForm((c,)), OrthSymmetry((-1,))
    ce = compose_even(qprime, tauprime, rest_form, rest_sym)
    chain.add("combine into one even algebra", ce)
    return {"form": ce.meta["form"], "sym": ce.meta["sym"], "chain": chain,
            "stages": _stages(chain)}
