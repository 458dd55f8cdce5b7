"""isodual: exact elliptic-curve isogenies over small finite fields.

Builds isogenies from finite kernels by Velu's construction, decomposes
maps into separable parts and Frobenius powers, and computes dual isogenies
with machine-checkable certificates of dual o phi = [deg phi].
"""

from . import accel, errors
from .curve import (Curve, Point, Subgroup, embed_curve, embed_point,
                    enumerate_points, mul_by_m_map, point_add, point_neg,
                    point_order, scalar_mul, subgroup_from_generator,
                    subgroup_from_points, trivial_subgroup)
from .dualctor import (Decomposition, DualCertificate, dual_isogeny,
                       factor_through, frobenius_dual, normalize,
                       pullback_constant, quotient_isogeny,
                       separable_decompose, verify_dual)
from .ff import Embedding, FieldContext, FieldElement, embed, make_field
from .isogeny import (IsogenyMap, Isomorphism, frobenius_isogeny,
                      identity_isogeny, iso_compose, iso_equal, iso_eval,
                      iso_eval_batch, kernel_of, velu_from_kernel_polys,
                      velu_isogeny, velu_pointwise)
from .polyrat import (Poly, RatFunc, lagrange_interpolate, poly_gcd,
                      resultant, roots_bruteforce, squarefree_part)

__version__ = "0.1.0"

__all__ = [
    "accel", "errors", "__version__",
    "FieldContext", "FieldElement", "Embedding", "make_field", "embed",
    "Poly", "RatFunc", "poly_gcd", "squarefree_part", "roots_bruteforce",
    "lagrange_interpolate", "resultant",
    "Curve", "Point", "Subgroup", "point_add", "point_neg", "scalar_mul",
    "point_order", "enumerate_points", "subgroup_from_generator",
    "subgroup_from_points", "trivial_subgroup", "mul_by_m_map",
    "embed_curve", "embed_point",
    "IsogenyMap", "Isomorphism", "identity_isogeny", "velu_pointwise",
    "velu_isogeny", "velu_from_kernel_polys", "iso_eval", "iso_eval_batch",
    "iso_compose", "iso_equal", "kernel_of", "frobenius_isogeny",
    "Decomposition", "DualCertificate", "separable_decompose",
    "pullback_constant", "normalize", "quotient_isogeny", "factor_through",
    "frobenius_dual", "dual_isogeny", "verify_dual",
]
