"""Entanglement quantifiers for two qubits."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .numerics import DEFAULT_PSD_TOL, SIGMA_Y, RejectedInputError, check_hermitian, hermitian_eigenvalues, min_eigenvalue
from .states import TRACE_TOL, DensityMatrix, PureState, partial_trace, partial_transpose_b, werner_matrix

_YY = np.kron(SIGMA_Y, SIGMA_Y)


@dataclass(frozen=True)
class EntanglementReport:
    concurrence: float
    entanglement: float


def concurrence_pure(psi: PureState) -> float:
    """2 |c0 c3 - c1 c2|."""
    c0, c1, c2, c3 = psi.amplitudes
    return min(1.0, 2.0 * abs(c0 * c3 - c1 * c2))


def binary_entropy(p: float) -> float:
    """Shannon entropy in bits with 0 log 0 = 0."""
    return -sum(q * math.log2(q) for q in (p, 1.0 - p) if q > 0.0)


def entanglement_from_concurrence(c: float) -> float:
    if not (-1e-12 <= c <= 1.0 + 1e-12):
        raise RejectedInputError(f"concurrence {c!r} outside [0, 1]")
    c = min(max(c, 0.0), 1.0)
    root = math.sqrt(max(0.0, 1.0 - c * c))
    return binary_entropy((1.0 + root) / 2.0)


def entanglement_pure_entropy(psi: PureState) -> float:
    """von Neumann entropy (bits) of the reduced state on subsystem A."""
    reduced = partial_trace(psi.projector(), "B")
    lams = hermitian_eigenvalues(reduced).eigenvalues
    return max(0.0, -sum(float(lam) * math.log2(lam) for lam in lams if lam > 0.0))


def entanglement_report(psi: PureState) -> EntanglementReport:
    c = concurrence_pure(psi)
    return EntanglementReport(concurrence=c, entanglement=entanglement_from_concurrence(c))


def ppt_min_eigenvalue(rho) -> float:
    m = rho.matrix if isinstance(rho, DensityMatrix) else check_hermitian(rho)
    tr = np.trace(m)
    if abs(tr - 1.0) > TRACE_TOL:
        raise RejectedInputError(f"trace is {tr.real!r}, expected 1")
    return min_eigenvalue(partial_transpose_b(m))


def is_separable(rho: DensityMatrix, tol: float = DEFAULT_PSD_TOL) -> bool:
    """Peres-Horodecki test; necessary and sufficient for two qubits."""
    if not isinstance(rho, DensityMatrix):
        rho = DensityMatrix(rho)
    return ppt_min_eigenvalue(rho) >= -tol


def wootters_concurrence_mixed(rho: DensityMatrix) -> float:
    """max(0, s1 - s2 - s3 - s4) with s_k = sqrt(mu_k), mu_k the spectrum of rho (YY) rho* (YY).

    The s_k are obtained as singular values of W^T (YY) W where rho = W W^H, which
    avoids square roots of near-zero eigenvalues. Uses numpy's LAPACK routines so the
    result does not depend on the Jacobi solver.
    """
    if not isinstance(rho, DensityMatrix):
        rho = DensityMatrix(rho)
    lam, vecs = np.linalg.eigh(rho.matrix)
    w = vecs * np.sqrt(np.clip(lam, 0.0, None))
    s = np.linalg.svd(w.T @ _YY @ w, compute_uv=False)
    return float(max(0.0, s[0] - s[1] - s[2] - s[3]))


def ls_entanglement_measure(lam: float, psi: PureState) -> float:
    """(1 - lambda) times the entropy of entanglement of ``psi``."""
    if not (0.0 <= lam <= 1.0):
        raise RejectedInputError(f"weight lambda = {lam!r} outside [0, 1]")
    return (1.0 - lam) * entanglement_pure_entropy(psi)


def werner_ppt_boundary(xtol: float = 1e-12) -> float:
    """Bisect the Werner parameter at which the partial transpose acquires a negative eigenvalue."""
    lo, hi = 0.0, 1.0  # PPT at 0, NPT at 1
    while hi - lo > xtol:
        mid = 0.5 * (lo + hi)
        if ppt_min_eigenvalue(werner_matrix(mid)) >= 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
