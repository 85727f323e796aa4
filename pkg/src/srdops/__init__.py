"""Two-sided ideals of differential operators on Stanley-Reisner rings.

The subpackages follow the chain complex -> face ring -> Weyl algebra ->
ideal lattice, with a separate characteristic-p view in ``frobenius``.
"""
from .kernels import BACKEND
from .simplicial import (
    SimplicialComplex,
    build_complex,
    closed_star,
    complex_from_json,
    complex_to_json,
    f_vector,
    is_face,
    join,
    nerve_complex,
    open_complement,
    simplex,
    star_leq,
    star_poset,
)
from .weyl import GF, QQ, FieldSpec, WeylElement
from .dideals import (
    TwoSidedIdeal,
    contract,
    enumerate_ideals,
    ideal_of_element,
    localization_kernel,
    principal_ideal,
)
from .frobenius import hk_bruteforce, hk_polynomial, multiplicities, operator_matrix, reblock

__version__ = "0.1.0"
