"""Numerical laboratory for reproducing-kernel testing of Hankel operators.

Construct Hankel operators from finite antianalytic symbols, compute exact
operator norms and kernel testing bounds, verify the Green/Littlewood-Paley/
subharmonic-weight identities behind the 2*sqrt(e) estimate on a
log-weighted disk quadrature, search for extremal symbols, and test the
generalized (model-space) embedding estimate with constant 4e.
"""

from ._kernels import BACKEND as kernel_backend
from .disk import (
    DiskQuadrature,
    PolyZZbar,
    ddbar,
    green_residual,
    int1_slack,
    integrate_log,
    littlewood_paley_residual,
    proof_identity_residual,
    uchiyama_ratio,
)
from .embedding import (
    BlaschkeProduct,
    DiscreteMeasure,
    EmbeddingReport,
    carleson_box_constant,
    elementary_projection,
    embedding_norm,
    model_projection,
    rkt_embedding_test,
)
from .hankel import (
    HankelMatrix,
    HankelSymbol,
    apply_symbol,
    build_matrix,
    garsia_value,
    garsia_values,
    kernel_image_norm_direct,
    operator_norm,
    toeplitz_eigen_residual,
)
from .hardy import (
    TrigPolynomial,
    conjugate_function,
    harmonic_extension,
    inner_product,
    multiply,
    reproducing_kernel,
    riesz_project,
)
from .rkt import RKT_BOUND, LambdaGrid, RktReport, random_symbol, sup_garsia, verify_rkt
from .search import SearchConfig, SearchTrace, perturb, search

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "kernel_backend",
    "TrigPolynomial",
    "harmonic_extension",
    "riesz_project",
    "reproducing_kernel",
    "inner_product",
    "multiply",
    "conjugate_function",
    "HankelSymbol",
    "HankelMatrix",
    "build_matrix",
    "apply_symbol",
    "operator_norm",
    "kernel_image_norm_direct",
    "garsia_value",
    "garsia_values",
    "toeplitz_eigen_residual",
    "PolyZZbar",
    "DiskQuadrature",
    "ddbar",
    "integrate_log",
    "green_residual",
    "littlewood_paley_residual",
    "uchiyama_ratio",
    "proof_identity_residual",
    "int1_slack",
    "LambdaGrid",
    "RktReport",
    "RKT_BOUND",
    "sup_garsia",
    "verify_rkt",
    "random_symbol",
    "SearchConfig",
    "SearchTrace",
    "search",
    "perturb",
    "BlaschkeProduct",
    "DiscreteMeasure",
    "EmbeddingReport",
    "model_projection",
    "elementary_projection",
    "embedding_norm",
    "rkt_embedding_test",
    "carleson_box_constant",
]
