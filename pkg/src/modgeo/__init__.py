"""Log-affine geodesics between faithful states of a full matrix algebra."""

from .abelian import (
    ClassicalAmplitude,
    FiniteMeasureSpace,
    classical_geodesic,
    classical_state,
    embed_diagonal,
    exp_tangent_check,
    exp_tangent_check_grid,
)
from .cocycle import (
    Cocycle,
    check_cocycle_identity,
    cocycle_from_positive,
    eval_U,
    state_from_cocycle,
    u_half,
    verify_half_continuation,
    verify_half_operators,
    verify_strip_bound,
    verify_three_forms,
    x_op,
    xi,
    y_op,
)
from .geodesic import (
    ExpFamily,
    GeodesicPath,
    T_op,
    check_log_affine,
    connect,
    expfam_state,
    geodesic_from_expfam,
    left_log_derivative,
    path_cocycle,
    path_state,
    rescale_check,
    right_log_derivative,
    sym_log_derivative,
    synth_cocycle,
    tangent_functional,
    x_operator,
)
from .gns import DensityMatrix, GnsSpace, act_left, act_right, delta_power, make_gns, op_J, op_S, tau
from .matfun import HermitianEigen, apply_fn, frechet_fn, herm_eig, imaginary_power, sym_solve
from .report import VerificationReport

__version__ = "0.1.0"
