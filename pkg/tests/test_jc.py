import math

import numpy as np
import pytest

from ecsim import (
    coherent_product,
    default_cutoff,
    dispersive_transit,
    hybrid_to_fock,
    jc_evolve,
    jc_interaction_propagator,
    lindblad_damp_oracle,
    phase_compensated_fidelity,
    ramsey,
)
from ecsim.cli import dispersive_check
from ecsim.states import FockVector, coherent_fock
from helpers import dense_single_mode_density


class TestPropagator:
    def test_decoupled_limit_is_identity(self):
        prop = jc_interaction_propagator(g=0.0, delta=3.0, t=1.7, cutoff=10)
        for n in range(10):
            assert prop.blocks[n] == pytest.approx(np.eye(2), abs=1e-12)
        assert prop.ground_phase == pytest.approx(1.0)

    def test_resonant_rabi_oscillation(self):
        g, t = 1.3, 0.9
        prop = jc_interaction_propagator(g=g, delta=0.0, t=t, cutoff=8)
        for n in range(8):
            pop = abs(prop.blocks[n][0, 0]) ** 2
            assert pop == pytest.approx(math.cos(g * math.sqrt(n + 1) * t) ** 2, abs=1e-12)

    def test_blocks_unitary(self):
        prop = jc_interaction_propagator(g=0.8, delta=11.0, t=2.3, cutoff=20)
        for n in range(20):
            u = prop.blocks[n]
            assert u @ u.conjugate().T == pytest.approx(np.eye(2), abs=1e-12)

    def test_lab_frame_semigroup(self):
        # stripping the interaction-picture phases must leave a semigroup
        g, delta = 0.6, 7.0
        t1, t2 = 0.8, 1.9

        def lab_blocks(t):
            prop = jc_interaction_propagator(g, delta, t, cutoff=6)
            free = np.diag([np.exp(1j * delta * t / 2), np.exp(-1j * delta * t / 2)])
            return np.array([np.linalg.inv(free) @ b for b in prop.blocks])

        composed = np.array([b2 @ b1 for b1, b2 in zip(lab_blocks(t1), lab_blocks(t2))])
        assert composed == pytest.approx(lab_blocks(t1 + t2), abs=1e-10)


class TestEvolve:
    def test_identity_propagator(self):
        prop = jc_interaction_propagator(g=0.0, delta=5.0, t=1.0, cutoff=15)
        v = hybrid_to_fock(coherent_product((1.0,), atom_word="e"), 15)
        w = jc_evolve(v, 0, 0, prop)
        assert w.amps == pytest.approx(v.amps, abs=1e-12)

    def test_norm_drift(self):
        prop = jc_interaction_propagator(g=1.0, delta=30.0, t=0.5, cutoff=25)
        v = hybrid_to_fock(ramsey(coherent_product((1.0,), atom_word="e"), 0), 25)
        n0 = float(np.sum(np.abs(v.amps) ** 2))
        for _ in range(10):
            v = jc_evolve(v, 0, 0, prop)
        assert abs(float(np.sum(np.abs(v.amps) ** 2)) - n0) < 1e-10

    def test_sequential_transits_match_dispersive_prediction(self):
        # three cavities, delta/g = 50, theta = pi/2 per transit
        alpha, ratio = 1.0, 50.0
        g, delta = 1.0, 50.0
        lam = g * g / delta
        tau = (math.pi / 2) / lam
        cutoff = default_cutoff(alpha, 1e-10) + 10
        start = ramsey(coherent_product((alpha,) * 3, atom_word="e"), 0)
        v = hybrid_to_fock(start, cutoff)
        prop = jc_interaction_propagator(g, delta, tau, cutoff)
        for m in range(3):
            v = jc_evolve(v, 0, m, prop)
        predicted = start
        for m in range(3):
            predicted = dispersive_transit(predicted, 0, m, math.pi / 2)
        ref = hybrid_to_fock(predicted, cutoff)
        vn = FockVector(1, 3, cutoff, v.amps / np.linalg.norm(v.amps), v.tail_bound)
        rn = FockVector(1, 3, cutoff, ref.amps / np.linalg.norm(ref.amps), ref.tail_bound)
        raw, comp = phase_compensated_fidelity(vn, rn, atom=0)
        assert comp >= 0.99
        assert raw <= comp + 1e-12


class TestPhaseCompensatedFidelity:
    def _vec(self, amps):
        return FockVector(1, 1, amps.shape[1] - 1, amps, 0.0)

    def test_identical(self):
        amps = np.zeros((2, 4), dtype=complex)
        amps[0, 1] = 1 / math.sqrt(2)
        amps[1, 2] = 1 / math.sqrt(2)
        raw, comp = phase_compensated_fidelity(self._vec(amps), self._vec(amps), 0)
        assert raw == pytest.approx(1.0, abs=1e-12)
        assert comp == pytest.approx(1.0, abs=1e-12)

    def test_pure_sector_phase(self):
        amps = np.zeros((2, 4), dtype=complex)
        amps[0, 1] = 1 / math.sqrt(2)
        amps[1, 2] = 1 / math.sqrt(2)
        chi = 0.8
        shifted = amps.copy()
        shifted[0] *= np.exp(1j * chi)
        raw, comp = phase_compensated_fidelity(self._vec(shifted), self._vec(amps), 0)
        assert comp == pytest.approx(1.0, abs=1e-12)
        assert raw == pytest.approx(abs(0.5 * np.exp(1j * chi) + 0.5) ** 2, abs=1e-12)

    def test_monotone_in_detuning_ratio(self):
        comps = [
            dispersive_check(1, 1.0, math.pi / 2, r)["compensated_fidelity"]
            for r in (10, 20, 50, 100)
        ]
        assert all(b > a for a, b in zip(comps, comps[1:]))
        assert comps[2] >= 0.99


class TestLindbladOracle:
    def test_zero_rate_identity(self):
        rho = np.diag([0.25, 0.75]).astype(complex)
        assert lindblad_damp_oracle(rho, 0.0, 1.0) == pytest.approx(rho)

    def test_coherent_state_stays_coherent(self):
        alpha, kappa, t = 1.2, 1.0, 0.3
        cutoff = default_cutoff(alpha, 1e-13) + 5
        vec, _ = coherent_fock(alpha, cutoff)
        rho = np.outer(vec, vec.conjugate())
        out = lindblad_damp_oracle(rho, kappa, t)
        shrunk, _ = coherent_fock(alpha * math.exp(-kappa * t / 2), cutoff)
        expected = np.outer(shrunk, shrunk.conjugate())
        assert np.max(np.abs(out - expected)) < 1e-6

    def test_cat_coherence_decay_law(self):
        alpha, kappa, t = 1.5, 1.0, 0.2
        cutoff = default_cutoff(alpha, 1e-13) + 5
        plus, _ = coherent_fock(alpha, cutoff)
        minus, _ = coherent_fock(-alpha, cutoff)
        # Hermitized off-diagonal block |a><-a| + |-a><a|
        rho = np.outer(plus, minus.conjugate()) + np.outer(minus, plus.conjugate())
        out = lindblad_damp_oracle(rho, kappa, t)
        eta = math.exp(-kappa * t)
        p2, _ = coherent_fock(alpha * math.sqrt(eta), cutoff)
        m2, _ = coherent_fock(-alpha * math.sqrt(eta), cutoff)
        factor = math.exp(-2 * alpha**2 * (1 - eta))
        expected = factor * (
            np.outer(p2, m2.conjugate()) + np.outer(m2, p2.conjugate())
        )
        assert np.max(np.abs(out - expected)) < 1e-6

    def test_trace_and_positivity(self):
        alpha = 1.0
        cutoff = 20
        vec, _ = coherent_fock(alpha, cutoff)
        rho = np.outer(vec, vec.conjugate())
        out = lindblad_damp_oracle(rho, 1.0, 0.4)
        assert np.trace(out).real == pytest.approx(np.trace(rho).real, abs=1e-8)
        assert np.min(np.linalg.eigvalsh(out)) >= -1e-8

    def test_rejects_non_hermitian(self):
        bad = np.array([[1.0, 1.0], [0.0, 0.0]], dtype=complex)
        with pytest.raises(ValueError):
            lindblad_damp_oracle(bad, 1.0, 1.0)
