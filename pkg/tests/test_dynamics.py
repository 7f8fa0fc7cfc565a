import numpy as np
import pytest

from bellherald import fock
from bellherald.dynamics import (
    InteractionParams,
    branch_states,
    effective_rabi,
    interaction_kick,
    jc_unitary_oracle,
    joint_pure_state,
    window_unitary,
)


def random_params(rng, nbar=None, delta_ratio=None, phase_tau=None):
    nbar = rng.choice([1.0, 10.0, 100.0]) if nbar is None else nbar
    g = 0.5 + rng.random()
    om0 = g * np.sqrt(nbar)
    delta = (rng.choice([0.0, 1.0, 5.0]) if delta_ratio is None else delta_ratio) * om0
    ombar = np.sqrt(delta**2 / 4.0 + om0**2)
    tau = (rng.uniform(0.0, 20.0 * np.pi) if phase_tau is None else phase_tau) / ombar
    return InteractionParams(
        alpha=np.sqrt(nbar) * np.exp(1j * rng.uniform(0, 2 * np.pi)),
        g_mag=g,
        g_phase=rng.uniform(0, 2 * np.pi),
        delta=delta,
        omega=rng.uniform(0, 2.0),
        tau=tau,
        t=rng.uniform(0.0, 2.0 * tau + 1.0),
        e0=rng.uniform(-1, 1),
        e1=rng.uniform(0, 2),
    )


def test_effective_rabi_values():
    p = InteractionParams(alpha=1.0, g_mag=1.0, tau=0.1)
    assert effective_rabi(0, p) == 0.0
    p2 = InteractionParams(alpha=1.0, g_mag=1.0, delta=2.0, tau=0.1)
    assert effective_rabi(0, p2) == 1.0
    p3 = InteractionParams(alpha=10.0, g_mag=1.0, tau=0.1)
    assert effective_rabi(100, p3) == pytest.approx(10.0, abs=0)


def test_branches_at_zero_interaction_time():
    p = InteractionParams(alpha=3.0, g_mag=1.0, tau=0.0)
    br = branch_states(p)
    coh = fock.coherent_state(3.0, p.n_max)
    assert np.max(np.abs(br.g2)) == 0.0
    assert np.max(np.abs(br.g4)) == 0.0
    assert np.max(np.abs(br.g5)) == 0.0
    assert np.max(np.abs(br.g6)) == 0.0
    assert np.allclose(br.g1, coh / np.sqrt(2.0), atol=1e-15)
    assert np.allclose(br.g3, coh / 2.0, atol=1e-15)
    assert np.allclose(br.a0, coh / 2.0, atol=1e-15)


def test_normalization_identity_random_draws():
    rng = np.random.default_rng(42)
    for _ in range(100):
        p = random_params(rng)
        assert abs(branch_states(p).norm_identity() - 1.0) < 1e-10


def test_joint_state_norm_and_trace():
    rng = np.random.default_rng(1)
    for _ in range(10):
        st = joint_pure_state(random_params(rng))
        assert abs(st.norm_sq() - 1.0) < 1e-10
        rho_f = st.amps.T @ st.amps.conj()
        assert abs(np.trace(rho_f).real - 1.0) < 1e-10


def test_tau_zero_is_free_evolution_of_initial_state():
    p = InteractionParams(alpha=2.0, g_mag=1.0, tau=0.0, t=0.0)
    st = joint_pure_state(p)
    coh = fock.coherent_state(2.0, p.n_max)
    # (|0>+|1>)(|0>+|1>)/2 x |alpha>: four equal matter branches
    for m in (0, 1, 3, 4):
        assert np.allclose(st.amps[m], coh / 2.0, atol=1e-14)
    for m in (2, 5, 6, 7, 8):
        assert np.max(np.abs(st.amps[m])) == 0.0


def test_oracle_identity_at_tau_zero():
    p = InteractionParams(alpha=2.0, g_mag=1.0, tau=0.0, t=0.0)
    st = jc_unitary_oracle(p)
    ref = joint_pure_state(p)
    assert np.max(np.abs(st.amps - ref.amps)) < 1e-13


def test_window_block_matches_two_level_solution():
    # the {|1,1>, |2,0>} block of the window unitary is the textbook solution
    p = InteractionParams(alpha=1.0, g_mag=1.3, delta=0.7, omega=0.9, tau=0.8, n_max=6)
    w = window_unitary(p)
    nf = p.n_max + 1
    i11 = 1 * nf + 1  # level 1, one photon
    i20 = 2 * nf + 0  # level 2, zero photons
    om = effective_rabi(1, p)
    common = np.exp(-1j * (p.e1 + p.omega + p.delta / 2.0) * p.tau)
    stay = np.cos(om * p.tau) + 1j * (p.delta / (2 * om)) * np.sin(om * p.tau)
    swap = -1j * (p.g * np.sqrt(1.0) / om) * np.sin(om * p.tau)
    assert abs(w[i11, i11] - common * stay) < 1e-12
    assert abs(w[i20, i11] - common * swap) < 1e-12
    assert abs(w[i20, i20] - common * np.conj(stay)) < 1e-12


def test_kick_is_unitary():
    p = InteractionParams(alpha=2.0, g_mag=1.0, delta=1.5, omega=0.4, tau=1.7)
    for system in ("a", "b"):
        k = interaction_kick(p, system)
        assert np.max(np.abs(k.conj().T @ k - np.eye(k.shape[0]))) < 1e-12


@pytest.mark.parametrize("seed", range(4))
def test_oracle_equivalence_random(seed):
    rng = np.random.default_rng(100 + seed)
    for _ in range(3):
        p = random_params(rng)
        a = joint_pure_state(p)
        b = jc_unitary_oracle(p)
        assert np.max(np.abs(a.amps - b.amps)) < 1e-10


def test_free_evolution_invariance_of_branch_geometry():
    # a number-phase rotation changes no branch norm and no overlap magnitude
    p = InteractionParams(alpha=10.0, g_mag=1.0, tau=1.1)
    names = ("a0", "g1", "g2", "g3", "g4", "g5", "g6")
    br0 = branch_states(p)
    br1 = branch_states(
        InteractionParams(alpha=10.0, g_mag=1.0, tau=1.1, omega=0.9, t=2.3)
    )
    for ni in names:
        a0, a1 = getattr(br0, ni), getattr(br1, ni)
        assert abs(np.linalg.norm(a0) - np.linalg.norm(a1)) < 1e-12
        for nj in names:
            b0, b1 = getattr(br0, nj), getattr(br1, nj)
            assert abs(abs(np.vdot(a0, b0)) - abs(np.vdot(a1, b1))) < 1e-12
