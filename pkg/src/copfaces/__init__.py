"""copfaces: exact zeros, faces and dual cones of the copositive cone, with
facial reduction for linear copositive programs.

All arithmetic is exact rational; see the README for the CLI and formats.
"""

from ._kernels import BACKEND as kernel_backend
from .core import (
    IndexSet,
    SimplexVector,
    SymMatrix,
    horn_matrix,
    matvec_row,
    quad_form,
    support,
    unit_vector,
)
from .copreg import (
    ImmobileCertificate,
    LinearCopProblem,
    RegularizedProblem,
    equivalent_membership,
    feasible_membership,
    find_immobile_zeros,
    minimal_face_of_problem,
    regularize,
    solve_discretized,
)
from .dual import (
    DualDecomposition,
    assemble,
    promote_tilde_to_bar,
    refute_g_membership_paper_example,
    verify_duality,
)
from .faces import (
    FaceData,
    FaceSpec,
    canonicalize_face,
    copositivity_via_zeros,
    face_membership,
    face_of_matrix,
    is_exposed,
    membership_kbar,
    membership_khat,
    minimal_face,
    minimally_active_element,
)
from .geometry import (
    VectorFamily,
    in_n,
    in_omega,
    l1_distance_to_hull,
    omega_grid,
    sigma,
    simplex_grid,
    support_cover_witness,
)
from .lp import LinearProgram, linear_program, solve_lp
from .oracle import (
    SimplexQPResult,
    SupportPiece,
    is_copositive,
    min_quad_over_simplex,
    minimal_zeros_of_matrix,
    zero_pieces_of_matrix,
)
from .zeros import MatrixSet, ZeroCatalog, catalog, m_sets, minimal_zeros, slater_holds, zero_set

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
