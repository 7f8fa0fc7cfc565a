import numpy as np
import pytest

from bellherald import kernels


def test_coefficient_table_is_kraus_normalized():
    # sum_j k[j, m-j]^2 = 1 for every column m (trace preservation)
    for eta in (0.05, 0.5, 0.95):
        k = kernels.damping_coefficients(30, eta)
        for m in range(30):
            total = sum(k[j, m - j] ** 2 for j in range(m + 1))
            assert total == pytest.approx(1.0, abs=1e-12)
        assert np.all(k <= 1.0 + 1e-12)
        assert np.all(k >= 0.0)


def test_backends_agree():
    if kernels._losskern is None:
        pytest.skip("compiled kernel not built")
    rng = np.random.default_rng(8)
    for dim in (3, 17, 101):
        m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        for eta in (0.0, 0.3, 1.0):
            a = kernels.damp_pure(m, eta)
            b = kernels.damp_compiled(m, eta)
            assert np.max(np.abs(a - b)) < 1e-13


def test_damp_rejects_bad_eta():
    with pytest.raises(ValueError):
        kernels.damp(np.eye(3, dtype=complex), 1.5)


def test_full_damping_sends_everything_to_vacuum():
    rng = np.random.default_rng(9)
    m = rng.normal(size=(12, 12)) + 1j * rng.normal(size=(12, 12))
    m = m @ m.conj().T
    m /= np.trace(m).real
    out = kernels.damp(m, 0.0)  # eta = 0: no photon survives
    expect = np.zeros_like(m)
    expect[0, 0] = 1.0
    assert np.max(np.abs(out - expect)) < 1e-12


def test_hermiticity_commutes_with_channel():
    rng = np.random.default_rng(10)
    m = rng.normal(size=(20, 20)) + 1j * rng.normal(size=(20, 20))
    a = kernels.damp(m.conj().T, 0.6)
    b = kernels.damp(m, 0.6).conj().T
    assert np.max(np.abs(a - b)) < 1e-13
