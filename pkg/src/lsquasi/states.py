"""Two-qubit states: pure states, Bell states, the Werner family, the singlet-angle family
and its pseudo-mixtures, plus Pauli-basis conversion and partial operations.

Basis order is |00>, |01>, |10>, |11> with subsystem A as the left tensor factor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .numerics import (
    DEFAULT_PSD_TOL,
    HERMITIAN_TOL,
    I2,
    PAULIS,
    RejectedInputError,
    as_matrix,
    check_hermitian,
    kron,
    min_eigenvalue,
)

NORM_TOL = 1e-12
TRACE_TOL = 1e-12

# sigma_i (x) I, I (x) sigma_i, sigma_i (x) sigma_j
_LOCAL_A = np.array([kron(s, I2) for s in PAULIS])
_LOCAL_B = np.array([kron(I2, s) for s in PAULIS])
_CORREL = np.array([[kron(si, sj) for sj in PAULIS] for si in PAULIS])


@dataclass(frozen=True)
class PureState:
    amplitudes: np.ndarray  # (c0, c1, c2, c3)

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amps.shape != (4,) or not np.all(np.isfinite(amps)):
            raise RejectedInputError("a two-qubit pure state needs 4 finite amplitudes")
        norm = float(np.sum(np.abs(amps) ** 2))
        if abs(norm - 1.0) > NORM_TOL:
            raise RejectedInputError(f"pure state is not normalized: sum |c_i|^2 = {norm!r}")
        object.__setattr__(self, "amplitudes", amps)

    def projector(self) -> np.ndarray:
        return np.outer(self.amplitudes, self.amplitudes.conj())


@dataclass(frozen=True)
class DensityMatrix:
    matrix: np.ndarray
    psd_tolerance: float = DEFAULT_PSD_TOL

    def __post_init__(self):
        m = check_hermitian(as_matrix(self.matrix, dims=(4,)))
        if m.ndim != 2:
            raise RejectedInputError("density matrix must be a single 4x4 matrix")
        tr = np.trace(m)
        if abs(tr - 1.0) > TRACE_TOL:
            raise RejectedInputError(f"density matrix trace is {tr.real!r}, expected 1")
        lowest = min_eigenvalue(m)
        if lowest < -self.psd_tolerance:
            raise RejectedInputError(
                f"density matrix is not positive: min eigenvalue {lowest:.3e} < -{self.psd_tolerance:.0e}"
            )
        object.__setattr__(self, "matrix", m)


@dataclass(frozen=True)
class PauliForm:
    """Coefficients of rho = (1/4)[I(x)I + a.sigma(x)I + I(x)b.sigma + sum t_ij sigma_i(x)sigma_j]."""

    a: np.ndarray = field(default_factory=lambda: np.zeros(3))
    b: np.ndarray = field(default_factory=lambda: np.zeros(3))
    t: np.ndarray = field(default_factory=lambda: np.zeros((3, 3)))

    def __post_init__(self):
        a = np.asarray(self.a, dtype=float)
        b = np.asarray(self.b, dtype=float)
        t = np.asarray(self.t, dtype=float)
        if a.shape != (3,) or b.shape != (3,) or t.shape != (3, 3):
            raise RejectedInputError("PauliForm needs a, b of length 3 and t of shape 3x3")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "t", t)

    def to_dict(self) -> dict:
        return {"a": self.a.tolist(), "b": self.b.tolist(), "t": self.t.tolist()}

    @classmethod
    def from_dict(cls, data: dict) -> "PauliForm":
        return cls(a=data["a"], b=data["b"], t=data["t"])


@dataclass(frozen=True)
class ThetaParam:
    """Mixing angle of cos(theta)|01> - sin(theta)|10>, theta in [0, pi/2]."""

    theta: float
    sin2theta: float = field(default=None)

    def __post_init__(self):
        theta = float(self.theta)
        if not (0.0 <= theta <= math.pi / 2) or math.isnan(theta):
            raise RejectedInputError(f"theta = {theta!r} outside [0, pi/2]")
        s = math.sin(2.0 * theta) if self.sin2theta is None else float(self.sin2theta)
        if abs(s - math.sin(2.0 * theta)) > 1e-14:
            raise RejectedInputError("cached sin2theta inconsistent with theta")
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "sin2theta", min(max(s, 0.0), 1.0))

    @classmethod
    def from_sin2theta(cls, s: float, upper: bool = False) -> "ThetaParam":
        """Angle with the given sin 2theta; ``upper`` picks the branch theta >= pi/4."""
        s = float(s)
        if not (0.0 <= s <= 1.0):
            raise RejectedInputError(f"sin2theta = {s!r} outside [0, 1]")
        theta = 0.5 * math.asin(s)
        if upper:
            theta = math.pi / 2 - theta
        return cls(theta, s)

    def mirror(self) -> "ThetaParam":
        return ThetaParam(math.pi / 2 - self.theta, self.sin2theta)


def pure_to_density(psi: PureState) -> DensityMatrix:
    return DensityMatrix(psi.projector())


_S = 1 / math.sqrt(2)
_BELL = {
    "phi+": (_S, 0, 0, _S),
    "phi-": (_S, 0, 0, -_S),
    "psi+": (0, _S, _S, 0),
    "psi-": (0, _S, -_S, 0),
}


def bell_state(which: str) -> PureState:
    """One of ``phi+``, ``phi-``, ``psi+``, ``psi-``; psi- = (|01> - |10>)/sqrt(2)."""
    key = which.lower().replace("⁺", "+").replace("⁻", "-").replace("Φ", "phi").replace("Ψ", "psi")
    key = key.replace("φ", "phi").replace("ψ", "psi")
    if key not in _BELL:
        raise RejectedInputError(f"unknown Bell state {which!r}")
    return PureState(_BELL[key])


SINGLET = bell_state("psi-")


def maximally_mixed() -> DensityMatrix:
    return DensityMatrix(np.eye(4, dtype=complex) / 4)


def werner_matrix(epsilon: float) -> np.ndarray:
    epsilon = float(epsilon)
    if not (0.0 <= epsilon <= 1.0):
        raise RejectedInputError(f"Werner parameter epsilon = {epsilon!r} outside [0, 1]")
    return (1 - epsilon) * np.eye(4, dtype=complex) / 4 + epsilon * SINGLET.projector()


def werner(epsilon: float) -> DensityMatrix:
    """(1 - epsilon) I/4 + epsilon |psi-><psi-|."""
    return DensityMatrix(werner_matrix(epsilon))


def rho_half() -> DensityMatrix:
    return werner(0.5)


def psi_theta(p: ThetaParam) -> PureState:
    return PureState((0.0, math.cos(p.theta), -math.sin(p.theta), 0.0))


def pseudo_mixture(p: ThetaParam, x) -> np.ndarray:
    """(1 + x) rho_half - x |psi(theta)><psi(theta)|, unvalidated.

    ``x`` may be an array, in which case a stack of matrices is returned.
    """
    xs = np.asarray(x, dtype=float)
    if np.any(xs < 0) or np.any(np.isnan(xs)):
        raise RejectedInputError("pseudo-mixture weight x must be non-negative")
    rho = werner_matrix(0.5)
    proj = psi_theta(p).projector()
    xs = xs[..., None, None]
    return (1 + xs) * rho - xs * proj


def to_pauli_form(rho) -> PauliForm:
    rho = check_hermitian(as_matrix(rho, dims=(4,)))
    tr = np.trace(rho)
    if abs(tr - 1.0) > TRACE_TOL:
        raise RejectedInputError(f"trace is {tr.real!r}, expected 1")
    a = np.einsum("kij,ji->k", _LOCAL_A, rho)
    b = np.einsum("kij,ji->k", _LOCAL_B, rho)
    t = np.einsum("klij,ji->kl", _CORREL, rho)
    for coeffs in (a, b, t):
        if np.max(np.abs(coeffs.imag)) > HERMITIAN_TOL:
            raise RejectedInputError("Pauli coefficients are not real")
    return PauliForm(a.real, b.real, t.real)


def from_pauli_form(f: PauliForm) -> np.ndarray:
    m = np.eye(4, dtype=complex)
    m = m + np.einsum("k,kij->ij", f.a, _LOCAL_A)
    m = m + np.einsum("k,kij->ij", f.b, _LOCAL_B)
    m = m + np.einsum("kl,klij->ij", f.t, _CORREL)
    return m / 4


def partial_transpose_b(rho) -> np.ndarray:
    """Transpose subsystem B: ((a,b),(a',b')) -> ((a,b'),(a',b)). Works on stacks."""
    rho = as_matrix(rho, dims=(4,))
    lead = rho.shape[:-2]
    r = rho.reshape(lead + (2, 2, 2, 2))
    return np.swapaxes(r, -3, -1).reshape(lead + (4, 4))


def partial_trace(rho, which: str) -> np.ndarray:
    """Trace out subsystem ``which`` ("A" or "B"), leaving a 2x2 matrix."""
    rho = check_hermitian(as_matrix(rho, dims=(4,)))
    r = rho.reshape(2, 2, 2, 2)
    if which.upper() == "B":
        return np.einsum("ikjk->ij", r)
    if which.upper() == "A":
        return np.einsum("kikj->ij", r)
    raise RejectedInputError(f"subsystem must be 'A' or 'B', got {which!r}")
