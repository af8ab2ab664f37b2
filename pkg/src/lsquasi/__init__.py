"""Lewenstein-Sanpera decompositions of two-qubit Werner states."""

from .entanglement import (
    concurrence_pure,
    entanglement_from_concurrence,
    entanglement_pure_entropy,
    is_separable,
    ls_entanglement_measure,
    ppt_min_eigenvalue,
    wootters_concurrence_mixed,
)
from .lsdecomp import (
    LSDecomposition,
    SolverOptions,
    closed_form_delta_max,
    closed_form_x_min,
    concurrence_product,
    entropy_product,
    optimal_for_rho_half,
    quasi_optimal_decomposition,
    solve_quasi_optimal,
    threshold_scan,
    verify_decomposition,
)
from .numerics import RejectedInputError
from .states import (
    DensityMatrix,
    PauliForm,
    PureState,
    ThetaParam,
    bell_state,
    psi_theta,
    pseudo_mixture,
    rho_half,
    werner,
)

__version__ = "0.1.0"
