"""Exact Clifford algebras with involutions induced by orthogonal symmetries."""

from .exactfield import RATIONALS, FieldDescriptor, FieldScalar, quad_ext
from .qspace import OrthSymmetry, QuadForm, orth_sum, scale, signed_disc, symmetry_disc
from .clifford import CliffordAlgebra, CliffordElement
from .algwithinv import (IsoCertificate, InvolutionClass, InvolutiveAlgebra, classify,
                         from_clifford, from_even_clifford, quaternion, tensor,
                         verify_certificate)

__version__ = "0.1.0"

__all__ = [
    "RATIONALS", "FieldDescriptor", "FieldScalar", "quad_ext",
    "OrthSymmetry", "QuadForm", "orth_sum", "scale", "signed_disc", "symmetry_disc",
    "CliffordAlgebra", "CliffordElement",
    "IsoCertificate", "InvolutionClass", "InvolutiveAlgebra", "classify",
    "from_clifford", "from_even_clifford", "quaternion", "tensor", "verify_certificate",
]
