"""Minimum-error discrimination of the heralding field components.

Given the joint matter-field state after the interaction sequence, the field
is split into the component paired with the target two-qubit state (prior p,
state rho1) and the rest (rho2).  The optimal two-outcome measurement keeping
outcome 1 is the projector onto the strictly positive spectrum of
A = p rho1 - (1-p) rho2; the module computes the projector, the minimum error
probability, the heralding success probability, the postselected two-qubit
density matrix and its fidelity with the target state.
"""

from dataclasses import dataclass

import numpy as np

from . import fock
from .dynamics import JointState, N_MATTER, psi_plus_vector
from .errors import DegeneratePriorError, NumericsError

# Relative eigenvalue threshold for the "strictly positive" projector.  The
# spectral kernel is excluded: at tau = 0 the two components coincide, A = 0,
# and keeping zero modes would spuriously report a 1/2 success probability.
ZERO_TOL = 1e-12

PRIOR_EPS = 1e-14

# Eigenvalues of a postselected density matrix in [-NEG_TOL, 0) are clipped to
# zero (truncation noise); anything more negative is an error.
NEG_TOL = 1e-10


@dataclass(frozen=True)
class FieldComponents:
    """Prior and the two normalized field states to be discriminated."""

    p: float
    rho1: np.ndarray
    rho2: np.ndarray

    def rho_f(self):
        return self.p * self.rho1 + (1.0 - self.p) * self.rho2

    def helstrom_operator(self):
        # Hermitian by construction; symmetrizing removes the roundoff
        # asymmetry that would otherwise dominate the relative Hermiticity
        # check when the two components nearly coincide (completed Rabi
        # cycles, where this operator is close to zero)
        a = self.p * self.rho1 - (1.0 - self.p) * self.rho2
        return (a + a.conj().T) / 2.0


@dataclass(frozen=True)
class PovmResult:
    """Scalar figures of merit of the optimal heralding measurement."""

    p_prior: float
    e_min: float
    p_bell: float
    f_opt: float
    t1_rank: int


def _psi_plus_block(dense):
    """Weight and field operator of the Bell-diagonal matter block.

    dense has shape (9, 9, nf, nf): matter-indexed field blocks F[m, m'].
    """
    i, j = 1, 3  # labels (0,1) and (1,0)
    block = 0.5 * (dense[i, i] + dense[j, j] + dense[i, j] + dense[j, i])
    return block


def field_components(state):
    """Split the field into (p, rho1, rho2).

    Accepts a pure ``JointState`` or a mixed ``JointDensity``-like object
    exposing ``blocks`` of shape (9, 9, nf, nf).  p and rho1 come from the
    Bell-diagonal matter block; rho2 is the normalized remainder of the
    reduced field state.
    """
    if isinstance(state, JointState):
        f_plus = state.psi_plus_field()
        rho1_un = np.outer(f_plus, f_plus.conj())
        rho_f = state.amps.T @ state.amps.conj()  # sum_m |f_m><f_m|
    else:
        blocks = state.blocks
        rho1_un = _psi_plus_block(blocks)
        rho_f = np.einsum("mmij->ij", blocks)

    p = float(np.trace(rho1_un).real)
    if not PRIOR_EPS < p < 1.0 - PRIOR_EPS:
        raise DegeneratePriorError(f"prior p = {p!r} leaves nothing to discriminate")
    rho2_un = rho_f - rho1_un
    return FieldComponents(p=p, rho1=rho1_un / p, rho2=rho2_un / (1.0 - p))


def helstrom_projector(fc, zero_tol=ZERO_TOL):
    """Projector onto the strictly positive spectrum of p rho1 - (1-p) rho2.

    The threshold is relative to the total weight p + (1-p) = 1 of the two
    components, so that the numerically-zero difference operator arising from
    identical components keeps no spectral noise.
    """
    a = fc.helstrom_operator()
    dec = fock.hermitian_eig(a)
    scale = max(float(np.max(np.abs(dec.eigenvalues), initial=0.0)), 1.0)
    keep = dec.eigenvalues > zero_tol * scale
    v = dec.eigenvectors[:, keep]
    return v @ v.conj().T


def min_error(fc):
    """Smallest achievable average discrimination error probability."""
    return 0.5 * (1.0 - fock.trace_norm(fc.helstrom_operator()))


def bell_success(fc, t1):
    """Probability that the measurement heralds the target Bell state."""
    return float(fc.p * np.trace(fc.rho1 @ t1).real)


def postselected_state(state, t1):
    """Normalized 9x9 matter density matrix conditioned on outcome 1."""
    if isinstance(state, JointState):
        # (rho_AB)_{m,m'} = <f_{m'}| T1 |f_m>
        proj = state.amps @ t1.T  # row m: (T1 |f_m>)^T
        rho = proj @ state.amps.conj().T
    else:
        # (rho_AB)_{m,m'} = Tr(F[m,m'] T1)
        rho = np.einsum("mnij,ji->mn", state.blocks, t1)

    total = float(np.trace(rho).real)
    if total <= PRIOR_EPS:
        raise NumericsError("zero success probability, nothing to postselect")
    # positivity is policed before normalizing: roundoff lives at the scale of
    # the unit-trace input, and dividing by a tiny success probability would
    # amplify it past any fixed threshold
    rho = (rho + rho.conj().T) / 2.0
    vals, vecs = np.linalg.eigh(rho)
    if vals[0] < -NEG_TOL:
        raise NumericsError(f"postselected state has negativity {vals[0]:.3e}")
    if vals[0] < 0.0:
        vals = np.clip(vals, 0.0, None)
        rho = (vecs * vals) @ vecs.conj().T
    return rho / np.trace(rho).real


def bell_fidelity(rho_ab):
    """sqrt of the target Bell-state population of a 9x9 matter state."""
    psi = psi_plus_vector()
    val = float(np.real(psi.conj() @ rho_ab @ psi))
    return float(np.sqrt(max(val, 0.0)))


def povm_result(state, zero_tol=ZERO_TOL):
    """Full heralding analysis of a joint state: one call, all scalars."""
    fc = field_components(state)
    t1 = helstrom_projector(fc, zero_tol)
    rank = int(round(np.trace(t1).real))
    p_bell = bell_success(fc, t1)
    e = min_error(fc)
    if rank == 0:
        f_opt = 0.0
    else:
        f_opt = bell_fidelity(postselected_state(state, t1))
    return PovmResult(p_prior=fc.p, e_min=e, p_bell=p_bell, f_opt=f_opt, t1_rank=rank)
