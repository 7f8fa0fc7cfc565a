"""Truncated single-mode Fock-space linear algebra.

States are plain complex vectors indexed by photon number n = 0..n_max,
operators are dense (n_max+1) x (n_max+1) complex matrices.  hbar = 1
throughout the package, so energies are angular frequencies.
"""

from dataclasses import dataclass

import numpy as np
from scipy.special import gammainc

from .errors import NumericsError, TruncationError

# Tail mass a coherent state may leave above the cutoff.
COHERENT_TAIL_TOL = 1e-12

# Relative Hermiticity tolerance for spectral routines.
HERMITICITY_TOL = 1e-12


def coherent_tail_mass(nbar, n_max):
    """Probability mass of a Poisson(nbar) photon distribution above n_max."""
    if nbar <= 0.0:
        return 0.0
    # P(N > n_max) for N ~ Poisson(nbar), via the regularized incomplete gamma.
    return float(gammainc(n_max + 1, nbar))


def default_n_max(nbar):
    """Smallest cutoff >= ceil(nbar + 10*sqrt(nbar)) with tail mass < 1e-12.

    The ten-sigma rule is already sufficient for nbar >= 25; for small nbar the
    cutoff is bumped until the tail bound holds.
    """
    n = max(1, int(np.ceil(nbar + 10.0 * np.sqrt(max(nbar, 0.0)))))
    while coherent_tail_mass(nbar, n) >= COHERENT_TAIL_TOL:
        n += 1
    return n


def coherent_state(alpha, n_max):
    """Coherent-state amplitude vector e^{-|a|^2/2} a^n / sqrt(n!).

    Amplitudes are computed by the recurrence c_{n+1} = c_n * alpha/sqrt(n+1),
    which avoids factorials entirely.  Raises TruncationError when the cutoff
    would leave more than 1e-12 probability above n_max.
    """
    alpha = complex(alpha)
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    nbar = abs(alpha) ** 2
    tail = coherent_tail_mass(nbar, n_max)
    if tail >= COHERENT_TAIL_TOL:
        raise TruncationError(
            f"n_max={n_max} keeps only 1-{tail:.3e} of the |alpha|^2={nbar:.6g} "
            f"coherent state; need n_max >= {default_n_max(nbar)}"
        )
    v = np.zeros(n_max + 1, dtype=np.complex128)
    v[0] = np.exp(-nbar / 2.0)
    for n in range(n_max):
        v[n + 1] = v[n] * alpha / np.sqrt(n + 1.0)
    return v


def vacuum(n_max):
    v = np.zeros(n_max + 1, dtype=np.complex128)
    v[0] = 1.0
    return v


def overlap(bra, ket):
    """<bra|ket> with conjugation on the first argument."""
    return complex(np.vdot(bra, ket))


def number_phases(n_max, angle):
    """Diagonal of the number-phase unitary exp(-i*angle*n)."""
    return np.exp(-1j * angle * np.arange(n_max + 1))


@dataclass(frozen=True)
class SpectralDecomp:
    """Eigendecomposition of a Hermitian operator, eigenvalues descending."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray  # columns, unitary

    def reconstruct(self):
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def _check_hermitian(m):
    m = np.asarray(m, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("expected a square matrix")
    scale = np.max(np.abs(m))
    if scale > 0.0:
        dev = np.max(np.abs(m - m.conj().T))
        if dev >= HERMITICITY_TOL * scale:
            raise NumericsError(
                f"matrix is not Hermitian: max|M - M^+| = {dev:.3e} vs scale {scale:.3e}"
            )
    return m


def hermitian_eig(m):
    """Spectral decomposition of a Hermitian matrix, eigenvalues descending.

    Ties are broken by the original (ascending-eigh) index so the output is
    deterministic for regression tests.
    """
    m = _check_hermitian(m)
    vals, vecs = np.linalg.eigh((m + m.conj().T) / 2.0)
    order = np.argsort(-vals, kind="stable")
    return SpectralDecomp(eigenvalues=vals[order], eigenvectors=vecs[:, order])


def trace_norm(m):
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    m = _check_hermitian(m)
    vals = np.linalg.eigvalsh((m + m.conj().T) / 2.0)
    return float(np.sum(np.abs(vals)))
