"""Exact computer algebra for the cross-product quantum algebra A_{r,s} = GL_r(2) ⋊ C[f, f^-1]."""

from .algebra import Algebra, AlgebraElement
from .calculus import Calculus, OneForm, convention_search
from .dual import DEFAULT, Pairing, PairingConvention
from .hopf import Hopf, Tensor
from .rmatrix import RMatrix, build_R, check_rtt, check_ybe, invert
from .scalar import Params, Scalar, specialize

__all__ = [
    "Algebra", "AlgebraElement", "Calculus", "OneForm", "convention_search", "DEFAULT", "Pairing",
    "PairingConvention", "Hopf", "Tensor", "RMatrix", "build_R", "check_rtt", "check_ybe", "invert",
    "Params", "Scalar", "specialize",
]
