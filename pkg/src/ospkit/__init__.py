"""ospkit: exact-arithmetic toolkit for orthosymplectic tensor invariants.

Grassmann algebras, graded supermatrix calculus, the orthosymplectic
superspace with its graded Gram-Schmidt process, Brauer diagram algebras,
the functor from diagrams to tensor operators, and brute-force rational
verification of the invariant-theory dualities, including the super
Pfaffian and the determinant-twist gap.
"""

from .errors import (
    DegreeBoundMismatch,
    DeltaMismatch,
    InhomogeneousInput,
    IrrationalCompletion,
    NoPfaffianFound,
    NotEvenPoint,
    NotInvertible,
    NotNilpotent,
    NotNormalized,
    NotOrthosymplectic,
    OspkitError,
    ShapeMismatch,
    SingularCayley,
    TooLarge,
)
from .grassmann import GrassmannElt, ga_invert, ga_mul, ga_promote, ga_specialise
from .superlinalg import (
    EVEN,
    ODD,
    RATIONAL,
    GrassmannRing,
    SuperMatrix,
    dagger,
    in_S,
    in_S_plus,
    omega,
    omega_s,
    sm_mul,
    split_pm,
    supertranspose,
)
from .ospgeom import (
    FormSpec,
    OspBasis,
    SuperVector,
    basis_change,
    cayley,
    exp_nilpotent,
    gl_basis,
    gram_matrix,
    is_osp_group_element,
    osp_basis,
    pair,
    reflection,
    super_gram_schmidt,
)
from .brauercat import (
    BrauerDiagram,
    BrauerElt,
    brauer_algebra,
    compose,
    enumerate_diagrams,
    tensor,
    transfer_A,
    transfer_U,
)
from .tensorfunctor import (
    F_diagram,
    F_diagram_via_top,
    TensorOp,
    cap_op,
    cup_op,
    identity_op,
    kron,
    lie_action,
    perm_action,
    tau_op,
)
from .invariantsolver import (
    DEFAULT_SIZE_BOUND,
    diagram_image_rank,
    hom_space_group,
    hom_space_lie,
    transfer_op_check,
    verify_fft,
    verify_gap,
    verify_gl_sw,
    verify_relations,
    verify_swb,
    verify_transfer,
)
from .superpoly import (
    SuperPoly,
    invariant_subspace,
    pfaffian_leading_check,
    quadratic_invariants,
    sp_derivation_action,
    sp_evaluate,
    sp_mul,
    super_pfaffian,
)
from .report import TOOL_VERSION, InvariantReport

__version__ = TOOL_VERSION
