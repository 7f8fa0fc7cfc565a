"""Large-photon-number linearization of the branch dynamics.

For mean photon numbers nbar >> 1 and moderate interaction times the
photon-number-dependent Rabi frequencies can be linearized around nbar.  Every
field branch then becomes a short superposition of phase-shifted coherent
states alpha e^{-i omega t} e^{i k theta}, k in {-2..2}, with

    theta   = ombar0^2 tau / (2 ombar nbar)
    omega_c = ombar (1 - ombar0^2 / (2 ombar^2))

and simple closed forms follow for the heralding prior and the branch
overlaps.  These serve as an independent cross-check of the exact pipeline.

Overlap magnitudes of the shifted coherent states decay with the dephasing
exponent

    x1 = [ombar0^2 tau / (2 ombar sqrt(nbar))]^2 / 2        (|k - k'| = 1)

which follows from nbar theta^2 / 2; a |k - k'| shift scales the exponent by
(k - k')^2.
"""

from dataclasses import dataclass

import numpy as np

from . import fock

DEFAULT_MARGIN = 0.1


def _check_nbar(params):
    if params.nbar <= 0.0:
        raise ValueError("linearization needs a nonzero mean photon number")


@dataclass(frozen=True)
class LinearizedParams:
    """Derived quantities of the linearized dynamics."""

    theta: float
    omega_c: float
    validity_lhs: float

    @classmethod
    def from_params(cls, params):
        _check_nbar(params)
        om0, om, nbar = params.omega_bar0, params.omega_bar, params.nbar
        return cls(
            theta=om0**2 * params.tau / (2.0 * om * nbar),
            omega_c=om * (1.0 - om0**2 / (2.0 * om**2)),
            validity_lhs=om0**4 * params.tau / (8.0 * nbar * om**3),
        )


def linearization_valid(params, margin=DEFAULT_MARGIN):
    """(is_valid, lhs): the curvature term must stay well below pi."""
    lhs = LinearizedParams.from_params(params).validity_lhs
    return bool(lhs < margin * np.pi), lhs


def dephasing_exponent(params, k_shift=1):
    """Gaussian exponent of |<alpha e^{ik theta}|alpha e^{ik' theta}>| for |k-k'| = k_shift."""
    _check_nbar(params)
    x = params.omega_bar0**2 * params.tau / (2.0 * params.omega_bar * np.sqrt(params.nbar))
    return (k_shift * x) ** 2 / 2.0


def coherent_shift_overlap(k, k_prime, params):
    """Overlap magnitude of two theta-shifted coherent states."""
    return float(np.exp(-dephasing_exponent(params, k_prime - k)))


def approx_branches(params):
    """Branch decompositions as {name: [(k, weight), ...]}.

    Each (k, weight) pair stands for weight * |alpha e^{-i omega t} e^{i k theta}>.
    """
    _check_nbar(params)
    lin = LinearizedParams.from_params(params)
    d = params.delta / (2.0 * params.omega_bar)
    r = params.omega_bar0 / params.omega_bar
    ph = np.exp(1j * params.g_phase)
    ec = np.exp(1j * lin.omega_c * params.tau)

    return {
        "g1": [
            (1, ec * (1.0 + d) / (2.0 * np.sqrt(2.0))),
            (-1, ec.conjugate() * (1.0 - d) / (2.0 * np.sqrt(2.0))),
        ],
        "g2": [
            (1, -ph * r / 4.0 * ec),
            (-1, ph * r / 4.0 * ec.conjugate()),
        ],
        "g3": [
            (2, ec**2 * (1.0 + d) ** 2 / 8.0),
            (-2, ec.conjugate() ** 2 * (1.0 - d) ** 2 / 8.0),
            (0, (1.0 - d**2) / 4.0),
        ],
        "g4": [
            (2, -ph * r / 8.0 * ec**2 * (1.0 + d)),
            (-2, ph * r / 8.0 * ec.conjugate() ** 2 * (1.0 - d)),
            (0, ph * r / 8.0 * 2.0 * d),
        ],
        "g5": [
            (2, -ph * r / 8.0 * ec**2 * (1.0 + d)),
            (-2, ph * r / 8.0 * ec.conjugate() ** 2 * (1.0 - d)),
            (0, ph * r / 8.0 * 2.0 * d),
        ],
        "g6": [
            (2, ph**2 * r**2 / 8.0 * ec**2),
            (-2, ph**2 * r**2 / 8.0 * ec.conjugate() ** 2),
            (0, -ph**2 * r**2 / 4.0),
        ],
    }


def branch_vector(params, terms):
    """Materialize a (k, weight) decomposition in the truncated Fock basis."""
    lin = LinearizedParams.from_params(params)
    base = params.alpha * np.exp(-1j * params.omega * params.t)
    out = np.zeros(params.n_max + 1, dtype=np.complex128)
    for k, w in terms:
        out += w * fock.coherent_state(base * np.exp(1j * k * lin.theta), params.n_max)
    return out


def approx_prior(params):
    """Closed-form heralding prior of the linearized dynamics."""
    _check_nbar(params)
    om, om0, tau = params.omega_bar, params.omega_bar0, params.tau
    d = params.delta
    damp = np.exp(-dephasing_exponent(params, 2))
    return float(
        d**2 / (8.0 * om**2)
        + (0.25 - (d / (4.0 * om)) ** 2) * (1.0 + np.cos(2.0 * om * tau) * damp)
    )


def approx_overlaps(params):
    """Closed forms of <alpha e^{-i omega t}|g1> and <g3|g1>."""
    _check_nbar(params)
    om, tau = params.omega_bar, params.tau
    d = params.delta / (2.0 * om)
    x1 = dephasing_exponent(params, 1)
    x3 = dephasing_exponent(params, 3)

    ov_a_g1 = (
        np.exp(-x1) * (np.cos(om * tau) + 1j * d * np.sin(om * tau)) / np.sqrt(2.0)
    )

    em = np.exp(-1j * om * tau)
    s = 16.0 * np.sqrt(2.0)
    ov_g3_g1 = (
        np.exp(-x1) * (em * (1.0 + d) ** 3 / s + em.conjugate() * (1.0 - d) ** 3 / s)
        + np.exp(-x3)
        * (
            em**3 * (1.0 + d) ** 2 * (1.0 - d) / s
            + em.conjugate() ** 3 * (1.0 + d) * (1.0 - d) ** 2 / s
        )
        + np.exp(-x1)
        * (1.0 - d**2)
        * (em.conjugate() * (1.0 + d) + em * (1.0 - d))
        / (8.0 * np.sqrt(2.0))
    )
    return complex(ov_a_g1), complex(ov_g3_g1)


def resonant_zero_times(k, params):
    """Interaction times where the branch overlaps vanish on resonance."""
    if params.delta != 0.0:
        raise ValueError("zero-time formula only holds on resonance (delta = 0)")
    _check_nbar(params)
    return float((np.pi + 2.0 * np.pi * k) / (2.0 * params.omega_bar0))
