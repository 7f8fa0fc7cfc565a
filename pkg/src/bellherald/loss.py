"""Photon loss between the two interaction windows.

During the field handover the single occupied mode is damped at rate gamma
for a time T; only the dimensionless product gamma*T enters.  The map has a
closed-form solution in the photon-number basis (implemented in ``kernels``)
and a one-line form on coherences between coherent states; both are exposed
here, together with the full lossy heralding pipeline:

1. system A interacts (closed-form window amplitudes on matter-A x field),
2. every field block of the resulting density operator is damped,
3. system B interacts (the same window unitary the propagator oracle uses),
4. the mixed-state discrimination chain produces the heralding scalars.
"""

from dataclasses import dataclass

import numpy as np

from . import fock, kernels, povm
from .dynamics import (
    InteractionParams,
    JointState,
    N_MATTER,
    interaction_kick,
)
from .errors import NumericsError


@dataclass(frozen=True)
class LossParams:
    """Dimensionless damping strength gamma*T of the handover."""

    gamma_t: float

    def __post_init__(self):
        if self.gamma_t < 0.0:
            raise ValueError("gamma_t must be >= 0")

    @property
    def eta(self):
        """Survival probability e^{-gamma T} of each photon."""
        return float(np.exp(-self.gamma_t))


@dataclass(frozen=True)
class JointDensity:
    """Mixed state over (matter A) x (matter B) x field.

    blocks[m, mp] is the field operator paired with |m><mp| in the 9-dim
    matter product basis.
    """

    blocks: np.ndarray  # shape (9, 9, nf, nf)

    @property
    def n_max(self):
        return self.blocks.shape[2] - 1

    def trace(self):
        return float(np.einsum("mmii->", self.blocks).real)

    def check(self, tol=1e-10):
        dev = np.max(np.abs(self.blocks - self.blocks.conj().transpose(1, 0, 3, 2)))
        if dev > tol:
            raise NumericsError(f"joint density not Hermitian: {dev:.3e}")
        tr = self.trace()
        if abs(tr - 1.0) > tol:
            raise NumericsError(f"joint density trace {tr!r} != 1")
        return self

    @classmethod
    def from_pure(cls, state: JointState):
        blocks = np.einsum("mi,nj->mnij", state.amps, state.amps.conj())
        return cls(blocks=blocks)


def damp_number_matrix(rho, loss):
    """Closed-form damping of one field operator in the number basis.

    Valid for arbitrary operators (coherence blocks included); positivity of
    the input is not assumed.
    """
    return kernels.damp(np.asarray(rho, dtype=np.complex128), loss.eta)


def damp_coherent_coherence(beta, alpha, loss):
    """Damping of |beta><alpha|: returns (prefactor, beta_out, alpha_out)."""
    beta = complex(beta)
    alpha = complex(alpha)
    decay = np.exp(-loss.gamma_t / 2.0)
    pref = np.exp(
        -(1.0 - loss.eta) * (abs(alpha) ** 2 / 2.0 + abs(beta) ** 2 / 2.0 - beta * np.conj(alpha))
    )
    return complex(pref), beta * decay, alpha * decay


def gammaT_to_fiber_length(gamma_t, d_db_per_m):
    """Fiber length (m) whose intensity loss D (dB/m) matches gamma*T."""
    if d_db_per_m <= 0.0:
        raise ValueError("attenuation must be positive")
    return gamma_t * 20.0 / (d_db_per_m * np.log(10.0))


def fiber_length_to_gammaT(length_m, d_db_per_m):
    """Inverse of gammaT_to_fiber_length."""
    if d_db_per_m <= 0.0:
        raise ValueError("attenuation must be positive")
    return length_m * d_db_per_m * np.log(10.0) / 20.0


class LossyPipeline:
    """Heralding analysis with a damped handover, reusable across gamma_t.

    The window unitary (one eigendecomposition) and the system-A field
    amplitudes are prepared once; ``result(loss)`` then costs one damping pass
    plus the discrimination chain.
    """

    def __init__(self, params: InteractionParams):
        self.params = params
        nf = params.n_max + 1

        # System-A window on (matter A) x field applied to the initial state:
        # three field vectors, one per matter-A level.
        vec_m = np.array([1.0, 1.0, 0.0], dtype=np.complex128) / np.sqrt(2.0)
        coh = fock.coherent_state(params.alpha, params.n_max)
        field0 = vec_m[:, None] * coh[None, :]
        k_a = interaction_kick(params, "a").reshape(3, nf, 3, nf)
        self.field_a = np.einsum("ancm,cm->an", k_a, field0)  # (3, nf)

        # System-B window restricted to the occupied matter-B input (|0>+|1>)/sqrt(2):
        # columns of the kick against that input, per output level q.
        k_b = interaction_kick(params, "b").reshape(3, nf, 3, nf)
        self.v_b = np.einsum("qncm,c->qnm", k_b, vec_m)  # (3, nf, nf)

    def damped_a_blocks(self, loss: LossParams):
        """Matter-A field blocks after the handover damping, shape (3,3,nf,nf)."""
        nf = self.params.n_max + 1
        f_a = self.field_a
        damped = np.empty((3, 3, nf, nf), dtype=np.complex128)
        for a in range(3):
            for ap in range(a, 3):
                block = np.outer(f_a[a], f_a[ap].conj())
                damped[a, ap] = damp_number_matrix(block, loss)
                if ap != a:
                    damped[ap, a] = damped[a, ap].conj().T
        return damped

    def joint_density(self, loss: LossParams):
        """Full mixed state after damping and the system-B window."""
        nf = self.params.n_max + 1
        damped = self.damped_a_blocks(loss)
        vb = self.v_b.reshape(3 * nf, nf)  # stacked V_q, output level major
        blocks = np.empty((N_MATTER, N_MATTER, nf, nf), dtype=np.complex128)
        for a in range(3):
            for ap in range(a, 3):
                big = vb @ damped[a, ap] @ vb.conj().T  # (3nf, 3nf)
                big4 = big.reshape(3, nf, 3, nf)
                for q in range(3):
                    for qp in range(3):
                        blocks[3 * a + q, 3 * ap + qp] = big4[q, :, qp, :]
                        if ap != a:
                            blocks[3 * ap + qp, 3 * a + q] = big4[q, :, qp, :].conj().T
        return JointDensity(blocks=blocks)

    def result(self, loss: LossParams):
        """Heralding scalars of the damped protocol."""
        return povm.povm_result(self.joint_density(loss))


def lossy_scenario(params: InteractionParams, loss: LossParams):
    """One-shot lossy heralding analysis (see LossyPipeline for sweeps)."""
    return LossyPipeline(params).result(loss)
