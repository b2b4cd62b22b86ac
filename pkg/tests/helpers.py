"""Independent numeric oracles shared by the tests.

Everything here goes through the dense truncated-Fock representation (or
plain linear algebra on Gram matrices), never through the closed-form path
it is used to check.
"""
import numpy as np

from ecsim import (
    Branch,
    DensityHybrid,
    HybridState,
    coherent_fock,
    default_cutoff,
    fock_inner,
    fock_norm2,
    hybrid_to_fock,
    overlap,
)


def fock_cutoff_for(*states, eps=1e-12):
    biggest = max(
        (abs(m) for s in states for b in s.branches for m in b.modes), default=0.0
    )
    return default_cutoff(biggest, eps) + 5


def fock_inner_oracle(a: HybridState, b: HybridState, cutoff=None) -> complex:
    cutoff = cutoff or fock_cutoff_for(a, b)
    return fock_inner(hybrid_to_fock(a, cutoff), hybrid_to_fock(b, cutoff))


def fock_norm2_oracle(s: HybridState, cutoff=None) -> float:
    cutoff = cutoff or fock_cutoff_for(s)
    return fock_norm2(hybrid_to_fock(s, cutoff))


def fock_outcome_probability(s: HybridState, word: str, cutoff=None) -> float:
    """P(joint atomic outcome) from the dense expansion of the full state."""
    cutoff = cutoff or fock_cutoff_for(s)
    v = hybrid_to_fock(s, cutoff)
    amps = v.amps
    for i, ch in enumerate(word):
        amps = np.take(amps, 0 if ch == "e" else 1, axis=0)
    return float(np.sum(np.abs(amps) ** 2) / fock_norm2(v))


def gram_reduced_eigs(s: HybridState, keep_modes) -> np.ndarray:
    """Reduced-state spectrum over `keep_modes` straight from Gram matrices.

    For |psi> = sum_k c_k |keep_k>|rest_k>, the reduced operator is
    sum_kl c_k conj(c_l) <rest_l|rest_k> |keep_k><keep_l|, whose spectrum is
    eig(S^{1/2} M S^{1/2}) with S the keep-side Gram matrix.
    """
    assert s.n_atoms == 0
    keep = set(keep_modes)
    k = len(s.branches)
    m = np.empty((k, k), dtype=complex)
    gs = np.empty((k, k), dtype=complex)
    for i, bi in enumerate(s.branches):
        for j, bj in enumerate(s.branches):
            rest = 1.0 + 0.0j
            kp = 1.0 + 0.0j
            for mode in range(s.n_modes):
                if mode in keep:
                    kp *= overlap(bi.modes[mode], bj.modes[mode])
                else:
                    rest *= overlap(bj.modes[mode], bi.modes[mode])
            m[i, j] = bi.coeff * bj.coeff.conjugate() * rest
            gs[i, j] = kp
    w, v = np.linalg.eigh(gs)
    root = (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conjugate().T
    return np.linalg.eigvalsh(root @ m @ root)


def dense_single_mode_density(rho: DensityHybrid, cutoff: int) -> np.ndarray:
    """Dense Fock matrix of a single-mode DensityHybrid."""
    assert rho.n_atoms == 0 and rho.n_modes == 1
    vecs = [coherent_fock(ms[0], cutoff)[0] for _, ms in rho.kets]
    out = np.zeros((cutoff + 1, cutoff + 1), dtype=complex)
    for k, vk in enumerate(vecs):
        for l, vl in enumerate(vecs):
            out += rho.coeff[k, l] * np.outer(vk, vl.conjugate())
    return out


def random_pm_state(rng, beta: complex, n_modes: int, max_branches: int = 3) -> HybridState:
    """Random field-only state whose amplitudes are all +beta or -beta."""
    branches = []
    for _ in range(rng.integers(1, max_branches + 1)):
        modes = tuple(beta if rng.random() < 0.5 else -beta for _ in range(n_modes))
        branches.append(Branch("", complex(rng.normal(), rng.normal()), modes))
    return HybridState(0, n_modes, tuple(branches))


def random_hybrid_state(rng, n_atoms: int, n_modes: int, max_branches: int = 4,
                        alpha_scale: float = 1.5) -> HybridState:
    branches = []
    for _ in range(rng.integers(1, max_branches + 1)):
        word = "".join(rng.choice(["e", "g"]) for _ in range(n_atoms))
        modes = tuple(
            complex(rng.normal(scale=alpha_scale), rng.normal(scale=alpha_scale))
            for _ in range(n_modes)
        )
        branches.append(Branch(word, complex(rng.normal(), rng.normal()), modes))
    return HybridState(n_atoms, n_modes, tuple(branches))
