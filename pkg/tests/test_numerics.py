import math

import numpy as np
import pytest

from conftest import random_hermitian
from lsquasi.numerics import (
    I2,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    NonHermitianError,
    RejectedInputError,
    frobenius_distance,
    hermitian_eigenvalues,
    hermitian_spectra,
    is_psd,
    jacobi_eigh,
    kron,
    matrix_algebra,
    matrix_from_json,
    matrix_to_json,
    min_eigenvalue,
    min_eigenvalues,
)
from lsquasi.states import SINGLET, partial_transpose_b, rho_half


def test_matrix_algebra_examples():
    assert matrix_algebra("trace", np.eye(4)) == 4 + 0j
    np.testing.assert_array_equal(matrix_algebra("adjoint", SIGMA_Y), SIGMA_Y)
    np.testing.assert_array_equal(matrix_algebra("multiply", SIGMA_X, SIGMA_Y), 1j * SIGMA_Z)
    np.testing.assert_array_equal(matrix_algebra("add", I2, I2), 2 * I2)
    np.testing.assert_array_equal(matrix_algebra("subtract", I2, I2), 0 * I2)
    np.testing.assert_array_equal(matrix_algebra("scale", SIGMA_X, 2j), 2j * SIGMA_X)


@pytest.mark.parametrize("op", ["add", "subtract", "multiply"])
def test_matrix_algebra_dimension_mismatch(op):
    with pytest.raises(RejectedInputError):
        matrix_algebra(op, I2, np.eye(4))


def test_matrix_algebra_rejects_bad_input():
    with pytest.raises(RejectedInputError):
        matrix_algebra("frobnicate", I2, I2)
    with pytest.raises(RejectedInputError):
        matrix_algebra("add", np.eye(5), np.eye(5))
    with pytest.raises(RejectedInputError):
        matrix_algebra("trace", [[np.nan, 0], [0, 1]])


def test_kron_examples():
    np.testing.assert_array_equal(kron(I2, I2), np.eye(4))
    np.testing.assert_array_equal(kron(SIGMA_Z, SIGMA_Z), np.diag([1, -1, -1, 1]))
    np.testing.assert_array_equal(kron(SIGMA_X, SIGMA_X), np.fliplr(np.eye(4)))
    with pytest.raises(RejectedInputError):
        kron(np.eye(4), I2)


def test_kron_is_bilinear(rng):
    for _ in range(100):
        a, b, c = (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)) for _ in range(3))
        np.testing.assert_allclose(kron(a + b, c), kron(a, c) + kron(b, c), atol=1e-12, rtol=0)


@pytest.mark.parametrize(
    "m, expected",
    [
        (np.eye(4), [1, 1, 1, 1]),
        (np.diag([4.0, 3.0, 2.0, 1.0]), [1, 2, 3, 4]),
        (SIGMA_X, [-1, 1]),
        (SIGMA_Y, [-1, 1]),
    ],
)
def test_hermitian_eigenvalues_examples(m, expected):
    result = hermitian_eigenvalues(m)
    np.testing.assert_allclose(result.eigenvalues, expected, atol=1e-14)
    assert result.residual <= 1e-10


def test_hermitian_eigenvalues_3x3_against_lapack(rng):
    m = random_hermitian(rng, n=3)
    np.testing.assert_allclose(hermitian_eigenvalues(m).eigenvalues, np.linalg.eigvalsh(m), atol=1e-12)


def test_non_hermitian_rejected_with_asymmetry():
    m = np.array([[1, 2], [0, 1]], dtype=complex)
    with pytest.raises(NonHermitianError) as info:
        hermitian_eigenvalues(m)
    assert info.value.asymmetry == pytest.approx(2.0)


def test_hermiticity_tolerance_boundary():
    m = np.diag([1.0, 2.0]).astype(complex)
    m[0, 1] = 5e-13
    hermitian_eigenvalues(m)
    m[0, 1] = 5e-12
    with pytest.raises(NonHermitianError):
        hermitian_eigenvalues(m)


def test_eigensolver_is_deterministic(rng):
    m = random_hermitian(rng)
    a = hermitian_eigenvalues(m).eigenvalues
    b = hermitian_eigenvalues(m.copy()).eigenvalues
    assert a.tobytes() == b.tobytes()


def test_eigensolver_does_not_mutate_input(rng):
    m = random_hermitian(rng)
    before = m.copy()
    hermitian_eigenvalues(m)
    min_eigenvalues(m[None])
    np.testing.assert_array_equal(m, before)


def test_random_hermitian_residual_and_trace(rng):
    ms = random_hermitian(rng, size=1000)
    w, residual = hermitian_spectra(ms)
    assert residual.max() <= 1e-10
    np.testing.assert_allclose(w.sum(axis=-1), np.trace(ms, axis1=-2, axis2=-1).real, atol=1e-10)
    # LAPACK as an independent oracle
    np.testing.assert_allclose(w, np.linalg.eigvalsh(ms), atol=1e-10)


def test_batched_min_eigenvalues_match_single(rng):
    ms = random_hermitian(rng, size=20)
    singles = [min_eigenvalue(m) for m in ms]
    np.testing.assert_allclose(min_eigenvalues(ms), singles, atol=1e-12)
    real = ms.real + 0j
    np.testing.assert_allclose(min_eigenvalues(real), np.linalg.eigvalsh(real)[:, 0], atol=1e-12)


def test_jacobi_eigenvectors_are_orthonormal(rng):
    a = rng.normal(size=(5, 6, 6))
    a = a + a.transpose(0, 2, 1)
    w, v = jacobi_eigh(a)
    for k in range(5):
        np.testing.assert_allclose(v[k].T @ v[k], np.eye(6), atol=1e-12)
        np.testing.assert_allclose(a[k] @ v[k], v[k] * w[k], atol=1e-10)


def test_min_eigenvalue_examples():
    assert min_eigenvalue(np.eye(4) / 4) == pytest.approx(0.25, abs=1e-14)
    # spectrum of rho_half is {5/8, 1/8, 1/8, 1/8}; LAPACK as oracle
    assert np.linalg.eigvalsh(rho_half().matrix)[0] == pytest.approx(0.125, abs=1e-14)
    assert min_eigenvalue(rho_half().matrix) == pytest.approx(0.125, abs=1e-12)
    pt = partial_transpose_b(SINGLET.projector())
    assert np.linalg.eigvalsh(pt)[0] == pytest.approx(-0.5, abs=1e-14)
    assert min_eigenvalue(pt) == pytest.approx(-0.5, abs=1e-12)


@pytest.mark.parametrize("eps", [0.1, 1.0])
def test_min_eigenvalue_shift(rng, eps):
    for _ in range(50):
        m = random_hermitian(rng)
        assert min_eigenvalue(m + eps * np.eye(4)) == pytest.approx(min_eigenvalue(m) + eps, abs=1e-10)


def test_is_psd_examples():
    from lsquasi.states import ThetaParam, pseudo_mixture

    assert is_psd(np.eye(4) / 4, 1e-9)
    assert not is_psd(kron(SIGMA_Z, I2), 1e-9)
    assert is_psd(pseudo_mixture(ThetaParam(math.pi / 4), 1 / 3), 1e-9)
    with pytest.raises(RejectedInputError):
        is_psd(np.eye(4), -1.0)


def test_frobenius_distance():
    assert frobenius_distance(np.eye(4), np.eye(4)) == 0.0
    assert frobenius_distance(I2, np.zeros((2, 2))) == pytest.approx(math.sqrt(2))
    assert frobenius_distance(SIGMA_X, SIGMA_Z) == pytest.approx(2.0)
    assert frobenius_distance(SIGMA_Z, SIGMA_X) == frobenius_distance(SIGMA_X, SIGMA_Z)
    with pytest.raises(RejectedInputError):
        frobenius_distance(I2, np.eye(4))


def test_json_round_trip_is_bit_exact(rng):
    m = random_hermitian(rng) / 3.0
    back = matrix_from_json(matrix_to_json(m))
    assert back.tobytes() == m.tobytes()
    with pytest.raises(RejectedInputError):
        matrix_from_json([[1, 2], [3, 4]])
