"""Dense complex matrix primitives and a Jacobi eigensolver for small Hermitian matrices.

Matrices are plain ``numpy`` complex arrays. Eigenvalues come from cyclic Jacobi
sweeps on the real-symmetric embedding ``[[Re M, -Im M], [Im M, Re M]]``, whose
spectrum is that of ``M`` with every eigenvalue doubled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

HERMITIAN_TOL = 1e-12
DEFAULT_PSD_TOL = 1e-9
ALLOWED_DIMS = (2, 3, 4)

I2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)


class RejectedInputError(ValueError):
    """Raised when an operation's preconditions are not met."""


class NonHermitianError(RejectedInputError):
    def __init__(self, asymmetry: float, tol: float = HERMITIAN_TOL):
        self.asymmetry = asymmetry
        self.tol = tol
        super().__init__(f"matrix is not Hermitian: max |M - M^H| = {asymmetry:.3e} > {tol:.0e}")


@dataclass(frozen=True)
class EigenResult:
    eigenvalues: np.ndarray  # ascending
    residual: float  # max_k ||M v_k - lambda_k v_k||


def as_matrix(m, dims=ALLOWED_DIMS) -> np.ndarray:
    """Coerce ``m`` to a finite square complex array (batched leading axes allowed)."""
    arr = np.asarray(m, dtype=complex)
    if arr.ndim < 2 or arr.shape[-1] != arr.shape[-2]:
        raise RejectedInputError(f"expected a square matrix, got shape {arr.shape}")
    if dims is not None and arr.shape[-1] not in dims:
        raise RejectedInputError(f"matrix dimension {arr.shape[-1]} not in {dims}")
    if not np.all(np.isfinite(arr)):
        raise RejectedInputError("matrix contains NaN or Inf")
    return arr


def _same_shape(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape:
        raise RejectedInputError(f"dimension mismatch: {a.shape} vs {b.shape}")


def matrix_algebra(op: str, a, b=None):
    """Apply ``op`` (add, subtract, scale, multiply, adjoint, trace) to ``a`` and ``b``.

    ``scale`` takes a scalar as ``b``. ``trace`` returns a complex scalar.
    """
    a = as_matrix(a)
    if op == "adjoint":
        return a.conj().swapaxes(-1, -2)
    if op == "trace":
        return complex(np.trace(a))
    if op == "scale":
        if b is None or np.ndim(b) != 0:
            raise RejectedInputError("scale requires a scalar operand")
        return complex(b) * a
    if b is None:
        raise RejectedInputError(f"{op} requires a second matrix operand")
    b = as_matrix(b)
    _same_shape(a, b)
    if op == "add":
        return a + b
    if op == "subtract":
        return a - b
    if op == "multiply":
        return a @ b
    raise RejectedInputError(f"unknown matrix op {op!r}")


def kron(a, b) -> np.ndarray:
    """Kronecker product of two 2x2 matrices; ``a`` acts on the left factor (subsystem A)."""
    a = as_matrix(a, dims=(2,))
    b = as_matrix(b, dims=(2,))
    if a.ndim != 2 or b.ndim != 2:
        raise RejectedInputError("kron expects single 2x2 matrices")
    return np.kron(a, b)


def hermitian_asymmetry(m: np.ndarray) -> float:
    return float(np.max(np.abs(m - m.conj().swapaxes(-1, -2)), initial=0.0))


def check_hermitian(m, tol: float = HERMITIAN_TOL) -> np.ndarray:
    m = as_matrix(m)
    asym = hermitian_asymmetry(m)
    if asym > tol:
        raise NonHermitianError(asym, tol)
    return m


def real_embedding(m: np.ndarray) -> np.ndarray:
    re, im = m.real, m.imag
    top = np.concatenate([re, -im], axis=-1)
    bottom = np.concatenate([im, re], axis=-1)
    return np.concatenate([top, bottom], axis=-2)


def _jacobi_single(a: list, vectors: bool, max_sweeps: int):
    # scalar twin of the batched loop below; numpy per-call overhead dominates at batch size 1
    n = len(a)
    v = [[float(i == j) for j in range(n)] for i in range(n)] if vectors else None
    scale = max(sum(x * x for row in a for x in row), np.finfo(float).tiny)
    negligible = 1e-18 * math.sqrt(scale)
    pairs = [(p, q) for p in range(n) for q in range(p + 1, n)]
    for _ in range(max_sweeps):
        if sum(a[p][q] ** 2 for p, q in pairs) <= 1e-32 * scale:
            break
        for p, q in pairs:
            apq = a[p][q]
            if abs(apq) <= negligible:
                continue
            theta = (a[q][q] - a[p][p]) / (2.0 * apq)
            t = 1.0 if theta == 0.0 else math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
            c = 1.0 / math.sqrt(t * t + 1.0)
            s = t * c
            for row in a:
                rp, rq = row[p], row[q]
                row[p] = c * rp - s * rq
                row[q] = s * rp + c * rq
            row_p, row_q = a[p], a[q]
            a[p] = [c * x - s * y for x, y in zip(row_p, row_q)]
            a[q] = [s * x + c * y for x, y in zip(row_p, row_q)]
            a[p][q] = a[q][p] = 0.0
            if vectors:
                for row in v:
                    vp, vq = row[p], row[q]
                    row[p] = c * vp - s * vq
                    row[q] = s * vp + c * vq
    return [a[i][i] for i in range(n)], v


def jacobi_eigh(a: np.ndarray, *, vectors: bool = True, max_sweeps: int = 64):
    """Cyclic Jacobi diagonalisation of real symmetric matrices, batched over leading axes.

    Pivot pairs are visited in fixed row-major order, so output is bit-reproducible.
    Returns ``(w, v)`` with ``w`` of shape ``(batch, n)`` ascending and ``v`` of shape
    ``(batch, n, n)`` holding eigenvectors as columns (``None`` when ``vectors`` is false).
    """
    a = np.asarray(a, dtype=float)
    n = a.shape[-1]
    if a.size == n * n:
        d, vs = _jacobi_single(a.reshape(n, n).tolist(), vectors, max_sweeps)
        order = np.argsort(d, kind="stable")
        w = np.asarray(d)[order][None, :]
        return w, (np.asarray(vs)[:, order][None] if vectors else None)
    # batch on the trailing axis keeps every pivot row/column update contiguous
    a = a.reshape(-1, n, n).transpose(1, 2, 0).copy()
    batch = a.shape[-1]
    v = np.broadcast_to(np.eye(n)[:, :, None], a.shape).copy() if vectors else None
    scale = np.maximum(np.sum(a * a, axis=(0, 1)), np.finfo(float).tiny)
    negligible = 1e-18 * np.sqrt(scale)
    iu = np.triu_indices(n, 1)
    pairs = list(zip(*iu))

    for _ in range(max_sweeps):
        off = np.sum(a[iu[0], iu[1]] ** 2, axis=0)
        if np.all(off <= 1e-32 * scale):
            break
        for p, q in pairs:
            apq = a[p, q]
            active = np.abs(apq) > negligible
            if not active.any():
                continue
            theta = (a[q, q] - a[p, p]) / (2.0 * np.where(active, apq, 1.0))
            t = np.sign(theta) / (np.abs(theta) + np.hypot(theta, 1.0))
            t[theta == 0.0] = 1.0
            t[~active] = 0.0
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c

            col_p = a[:, p].copy()
            col_q = a[:, q].copy()
            a[:, p] = c * col_p - s * col_q
            a[:, q] = s * col_p + c * col_q
            row_p = a[p].copy()
            row_q = a[q].copy()
            a[p] = c * row_p - s * row_q
            a[q] = s * row_p + c * row_q
            a[p, q] = 0.0
            a[q, p] = 0.0

            if vectors:
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq

    w = np.diagonal(a, axis1=0, axis2=1)  # (batch, n)
    order = np.argsort(w, axis=-1, kind="stable")
    w = np.take_along_axis(w, order, axis=-1)
    if vectors:
        v = np.take_along_axis(v.transpose(2, 0, 1), order[:, None, :], axis=-1)
    return w, v


def hermitian_spectra(ms) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and eigen-residuals for a stack of Hermitian matrices.

    Returns arrays of shape ``(..., n)`` and ``(...)``.
    """
    ms = check_hermitian(ms)
    lead, n = ms.shape[:-2], ms.shape[-1]
    emb = real_embedding(ms).reshape(-1, 2 * n, 2 * n)
    w, v = jacobi_eigh(emb)
    residual = np.max(np.linalg.norm(emb @ v - v * w[:, None, :], axis=-2), axis=-1)
    # embedded spectrum lists every eigenvalue twice
    return w[:, 0::2].reshape(lead + (n,)), residual.reshape(lead)


def hermitian_eigenvalues(m) -> EigenResult:
    m = as_matrix(m)
    if m.ndim != 2:
        raise RejectedInputError("hermitian_eigenvalues expects a single matrix")
    w, residual = hermitian_spectra(m)
    return EigenResult(eigenvalues=w, residual=float(residual))


def min_eigenvalues(ms) -> np.ndarray:
    """Smallest eigenvalue of each Hermitian matrix in a stack of shape ``(..., n, n)``."""
    ms = check_hermitian(ms)
    if np.any(ms.imag):
        w, _ = jacobi_eigh(real_embedding(ms), vectors=False)
    else:
        # embedding of a real matrix is block-diagonal with two copies of it
        w, _ = jacobi_eigh(ms.real, vectors=False)
    return w[:, 0].reshape(ms.shape[:-2])


def min_eigenvalue(m) -> float:
    m = as_matrix(m)
    if m.ndim != 2:
        raise RejectedInputError("min_eigenvalue expects a single matrix")
    return float(min_eigenvalues(m))


def is_psd(m, tol: float = DEFAULT_PSD_TOL) -> bool:
    if tol < 0:
        raise RejectedInputError("tolerance must be non-negative")
    return min_eigenvalue(m) >= -tol


def frobenius_distance(a, b) -> float:
    a, b = as_matrix(a), as_matrix(b)
    _same_shape(a, b)
    return float(np.sqrt(np.sum(np.abs(a - b) ** 2)))


def matrix_to_json(m) -> list:
    """Nested ``[re, im]`` pairs, row-major."""
    m = as_matrix(m)
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def matrix_from_json(data) -> np.ndarray:
    arr = np.asarray(data, dtype=float)
    if arr.ndim != 3 or arr.shape[-1] != 2:
        raise RejectedInputError("expected nested [re, im] pairs")
    return as_matrix(arr[..., 0] + 1j * arr[..., 1])
