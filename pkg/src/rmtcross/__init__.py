"""Analytics and Monte Carlo for the chGOE-GAOE symmetry crossover ensemble.

A parameter-dependent ensemble of two Gaussian real random matrices
interpolates, through a coupling a in (0, 1), between the chiral Gaussian
orthogonal ensemble and the ensemble of antisymmetric Hermitian matrices,
with the number of exact zero modes pinned by the matrix parity.  The
spectral statistics form a Pfaffian point process; this package provides
the closed-form weights, skew-orthogonal polynomials, kernels, correlation
functions and smallest-eigenvalue expansion, together with samplers that
cross-validate all of it.
"""

from .ensemble import (
    Histogram,
    SamplerConfig,
    heine_mc,
    mc_density_histogram,
    mc_smallest_histogram,
    mc_split_compare,
    sample_three_matrix,
    sample_two_matrix,
)
from .errors import (
    ConvergenceError,
    DimensionError,
    DomainError,
    ParityError,
    RangeError,
    RmtCrossError,
    SizeLimitError,
)
from .jpdf import corr_Rk_bruteforce, jpdf_const, jpdf_eval, selberg
from .kernels import (
    KernelSlice,
    corr_R2,
    corr_Rk,
    density_R1,
    density_chgoe_ref,
    density_gaoe_ref,
    kernel_slice,
    smallest_exact_chgoe,
    smallest_p1_curve,
    smallest_p1_truncated,
    transform_bar,
    transform_tilde,
)
from .linalg import (
    SpectrumPairs,
    pfaffian,
    pfaffian_recursive,
    singular_values_antisym,
    sym_eigen,
    vandermonde_sq,
)
from .params import TransitionParams
from .sop import (
    SopPair,
    SqPolynomial,
    norm_h,
    p_limit_chgoe,
    p_limit_gaoe,
    p_limit_split,
    p_poly,
    p_poly_laguerre,
    q_limit_chgoe,
    q_poly,
    skew_product_even,
    skew_product_odd,
    sop_pair,
)
from .weights import G_bar, G_weight, H_weight, g_bar, g_weight

__version__ = "0.1.0"
