"""Generalized Stieltjes and Cauchy transforms of measures.

Numerical toolkit for transforms of the form ``z -> int (z+t)^-alpha
mu(dt)``: product and convolution formulas, weighted norm inequalities,
Hilbert-transform identities, representability criteria, and order
liftings, all with residual-checked verification reports.
"""

from .measures import (
    Atom,
    DensityPiece,
    HALF_LINE,
    LINE,
    Measure,
    atom_measure,
    density_measure,
    norm_beta,
    norm_beta_log,
    power_tail,
    tabulated,
    transform_measure,
    window,
)
from .quadrature import ConvergenceError, QuadratureConfig, integrate
from .transforms import cauchy_eval, f_alpha_log, stieltjes_defined, stieltjes_eval
from .stconv import (
    ConvolutionResult,
    InequalityConstants,
    convolution_norm,
    convolve,
    inequality_constants,
    transform_of_convolution,
    verify_inequality_suite,
    verify_product,
)
from .hilbert import (
    WeightedFunction,
    from_piece,
    hilbert_pv,
    parseval_residual,
    plemelj_boundary,
    stieltjes_product_density,
    tricomi_residual,
)
from .represent import (
    GammaEstimate,
    ScalarFunction,
    StieltjesRepresentation,
    gamma_limit,
    kato_density,
    phi_beta,
    psi_functional,
    rescale_beta,
    sokal_condition_check,
)
from .cauchy import (
    CauchyProductResult,
    PositivityVerdict,
    c11_sufficient_integral,
    cauchy_convolve,
    cauchy_convolve_general,
    cauchy_convolve_separated,
    criterion_g11,
    j_functional,
    kac_check,
    lift_1_to_2,
    lift_alpha_to_1_check,
    lift_by_beta,
    lift_to_plus_two,
    positivity_check_11,
    q_alpha,
    verify_lift,
    verify_positivity_witness,
)
from .report import VerificationReport
from .serialization import (
    DocumentError,
    grid_from_spec,
    load_measure,
    measure_from_dict,
    measure_to_dict,
    parse_complex,
    save_measure,
)

__version__ = "1.0.0"
