"""Photon-loss propagation kernel with compiled and pure-numpy backends.

The damping map in the photon-number basis is

    out[n, m] = sum_j k[j, n] k[j, m] rho[n+j, m+j]
    k[j, n]   = sqrt(binom(n+j, j)) * eta^(n/2) * (1-eta)^(j/2),   eta = e^{-gamma t}

where every coefficient k[j, n] lies in [0, 1] (they are the nonzero entries
of the loss Kraus operators), so the sum is numerically stable at any cutoff.

The triple loop is the hot spot of the lossy sweeps; a Cython version is
compiled at install time when a toolchain is available.  Import-time selection
falls back to the vectorized numpy implementation, and setting the environment
variable BELLHERALD_PURE=1 forces the fallback (used by the benchmark and the
backend-equivalence tests).
"""

import os

import numpy as np

try:
    from . import _losskern
except ImportError:
    _losskern = None

USE_COMPILED = _losskern is not None and os.environ.get("BELLHERALD_PURE", "") != "1"


def backend_name():
    return "compiled" if USE_COMPILED else "pure"


def damping_coefficients(dim, eta):
    """Kraus coefficient table k[j, n] (zero where n + j >= dim)."""
    k = np.zeros((dim, dim), dtype=np.float64)
    q = 1.0 - eta
    k[0] = eta ** (np.arange(dim) / 2.0)
    sq = np.sqrt(q)
    for j in range(dim - 1):
        n = np.arange(dim - j - 1, dtype=np.float64)
        # binom(n+j+1, j+1) = binom(n+j, j) * (n+j+1)/(j+1)
        k[j + 1, : dim - j - 1] = k[j, : dim - j - 1] * np.sqrt((n + j + 1.0) / (j + 1.0)) * sq
    return k


def damp_pure(rho, eta):
    """Pure-numpy damping map."""
    rho = np.ascontiguousarray(rho, dtype=np.complex128)
    dim = rho.shape[0]
    k = damping_coefficients(dim, eta)
    out = np.zeros_like(rho)
    for j in range(dim):
        kj = k[j, : dim - j]
        out[: dim - j, : dim - j] += (kj[:, None] * kj[None, :]) * rho[j:, j:]
    return out


def damp_compiled(rho, eta):
    rho = np.ascontiguousarray(rho, dtype=np.complex128)
    dim = rho.shape[0]
    k = damping_coefficients(dim, eta)
    out = np.zeros_like(rho)
    _losskern.damp(rho, k, out)
    return out


def damp(rho, eta):
    """Apply the photon-loss map with survival probability eta = e^{-gamma t}."""
    if not 0.0 <= eta <= 1.0:
        raise ValueError("eta must lie in [0, 1]")
    if USE_COMPILED:
        return damp_compiled(rho, eta)
    return damp_pure(rho, eta)
