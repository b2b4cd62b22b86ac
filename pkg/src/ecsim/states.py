"""Exact algebra of superpositions of multimode coherent states.

A pure atom-field state is kept as a finite sum of "branches", each branch
being an atomic basis word, a complex coefficient and one coherent amplitude
per cavity mode.  All inner products, norms and fidelities are evaluated in
closed form through the coherent-state overlap, so nothing in this module
carries truncation error.  The only approximate objects are the explicit
truncated-Fock conversions at the bottom, which record their own tail bound
and serve as an independent numeric oracle for the closed-form algebra.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import reduce

import numpy as np

PRUNE_TOL = 1e-12
ZERO_NORM_TOL = 1e-24
DEFAULT_TAIL_EPS = 1e-10

ATOM_LETTERS = "eg"


class ZeroNormError(ValueError):
    """A state (or a measurement branch) has vanishing norm."""


class ShapeMismatchError(ValueError):
    """Branches or states disagree on (n_atoms, n_modes)."""


def overlap(alpha: complex, beta: complex) -> complex:
    """Coherent-state inner product <alpha|beta>.

    Evaluated as exp(-(|a|^2 + |b|^2)/2 + conj(a)*b).  The exponent is
    assembled directly (never via a complex logarithm of a product), so no
    branch-cut ambiguity can enter downstream damping formulas.
    """
    a = complex(alpha)
    b = complex(beta)
    if not (cmath.isfinite(a) and cmath.isfinite(b)):
        raise ValueError("coherent amplitudes must be finite")
    return cmath.exp(-(abs(a) ** 2 + abs(b) ** 2) / 2 + a.conjugate() * b)


@dataclass(frozen=True)
class Branch:
    """One coherent-product term: |atom_word> x |modes[0]> x ... with a weight."""

    atom_word: str
    coeff: complex
    modes: tuple[complex, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeff", complex(self.coeff))
        object.__setattr__(self, "modes", tuple(complex(m) for m in self.modes))
        if any(ch not in ATOM_LETTERS for ch in self.atom_word):
            raise ValueError(f"atom word {self.atom_word!r} not over {{e,g}}")
        if not cmath.isfinite(self.coeff):
            raise ValueError("branch coefficient must be finite")
        if not all(cmath.isfinite(m) for m in self.modes):
            raise ValueError("mode amplitudes must be finite")


@dataclass(frozen=True)
class HybridState:
    """Pure atom-field state as a finite sum of coherent-product branches."""

    n_atoms: int
    n_modes: int
    branches: tuple[Branch, ...]

    def __post_init__(self):
        object.__setattr__(self, "branches", tuple(self.branches))
        for b in self.branches:
            if len(b.atom_word) != self.n_atoms or len(b.modes) != self.n_modes:
                raise ShapeMismatchError(
                    f"branch ({b.atom_word!r}, {len(b.modes)} modes) does not fit "
                    f"state with {self.n_atoms} atoms, {self.n_modes} modes"
                )

    def coeffs(self) -> np.ndarray:
        return np.array([b.coeff for b in self.branches], dtype=complex)

    def scaled(self, factor: complex) -> "HybridState":
        return HybridState(
            self.n_atoms,
            self.n_modes,
            tuple(Branch(b.atom_word, factor * b.coeff, b.modes) for b in self.branches),
        )


@dataclass(frozen=True, eq=False)
class DensityHybrid:
    """Mixed state: coefficient matrix over coherent-product kets.

    Entry (k, l) of `coeff` multiplies |ket_k><ket_l|.  Kets are plain
    (atom_word, modes) pairs; the matrix must be conjugate-symmetric.
    """

    n_atoms: int
    n_modes: int
    kets: tuple[tuple[str, tuple[complex, ...]], ...]
    coeff: np.ndarray

    def __post_init__(self):
        object.__setattr__(
            self,
            "kets",
            tuple((w, tuple(complex(m) for m in ms)) for w, ms in self.kets),
        )
        m = np.asarray(self.coeff, dtype=complex)
        if m.shape != (len(self.kets), len(self.kets)):
            raise ShapeMismatchError("coefficient matrix does not match ket count")
        object.__setattr__(self, "coeff", m)


def coherent_product(alphas, atom_word: str = "", coeff: complex = 1.0) -> HybridState:
    """Single-branch product state |atom_word> |alphas[0]> ... |alphas[-1]>."""
    modes = tuple(complex(a) for a in alphas)
    return HybridState(len(atom_word), len(modes), (Branch(atom_word, coeff, modes),))


def vacuum(n_modes: int, atom_word: str = "") -> HybridState:
    return coherent_product((0.0,) * n_modes, atom_word)


def branch_overlap(b1: Branch, b2: Branch) -> complex:
    """<b1|b2> including both coefficients; zero if the atomic words differ."""
    if len(b1.atom_word) != len(b2.atom_word) or len(b1.modes) != len(b2.modes):
        raise ShapeMismatchError("branches have different shapes")
    if b1.atom_word != b2.atom_word:
        return 0.0j
    out = b1.coeff.conjugate() * b2.coeff
    for a, b in zip(b1.modes, b2.modes):
        out *= overlap(a, b)
    return out


def gram(s: HybridState) -> np.ndarray:
    """Gram matrix of the branch geometry (coefficients stripped)."""
    k = len(s.branches)
    g = np.empty((k, k), dtype=complex)
    for i, bi in enumerate(s.branches):
        for j, bj in enumerate(s.branches):
            if j < i:
                g[i, j] = g[j, i].conjugate()
                continue
            if bi.atom_word != bj.atom_word:
                g[i, j] = 0.0
                continue
            val = 1.0 + 0.0j
            for a, b in zip(bi.modes, bj.modes):
                val *= overlap(a, b)
            g[i, j] = val
    return g


def cross_gram(a: HybridState, b: HybridState) -> np.ndarray:
    """Matrix of coefficient-stripped overlaps <a_branch_k | b_branch_l>."""
    if (a.n_atoms, a.n_modes) != (b.n_atoms, b.n_modes):
        raise ShapeMismatchError("states have different shapes")
    g = np.empty((len(a.branches), len(b.branches)), dtype=complex)
    for i, bi in enumerate(a.branches):
        for j, bj in enumerate(b.branches):
            if bi.atom_word != bj.atom_word:
                g[i, j] = 0.0
                continue
            val = 1.0 + 0.0j
            for x, y in zip(bi.modes, bj.modes):
                val *= overlap(x, y)
            g[i, j] = val
    return g


def hybrid_inner(a: HybridState, b: HybridState) -> complex:
    """<a|b> over the full branch decomposition."""
    ca = a.coeffs()
    cb = b.coeffs()
    return complex(ca.conjugate() @ cross_gram(a, b) @ cb)


def norm2(s: HybridState) -> float:
    c = s.coeffs()
    return float((c.conjugate() @ gram(s) @ c).real)


def normalize(s: HybridState) -> HybridState:
    n2 = norm2(s)
    if n2 < ZERO_NORM_TOL:
        raise ZeroNormError(f"cannot normalize state with norm^2 = {n2:g}")
    return s.scaled(1.0 / math.sqrt(n2))


def fidelity_pure(a: HybridState, b: HybridState) -> float:
    """|<a|b>|^2 / (norm2(a) * norm2(b))."""
    return abs(hybrid_inner(a, b)) ** 2 / (norm2(a) * norm2(b))


def prune(s: HybridState, tol: float = PRUNE_TOL) -> HybridState:
    """Merge branches with matching word and (within tol) equal amplitudes.

    Merged coefficients below tol in magnitude are dropped.  Protocol phases
    are exact multiples of pi/2, so ties are exact and tol only guards float
    noise.
    """
    merged: list[list] = []  # [word, modes, coeff]
    for b in s.branches:
        for m in merged:
            if m[0] == b.atom_word and all(
                abs(x - y) <= tol for x, y in zip(m[1], b.modes)
            ):
                m[2] += b.coeff
                break
        else:
            merged.append([b.atom_word, b.modes, b.coeff])
    branches = tuple(
        Branch(w, c, modes) for w, modes, c in merged if abs(c) > tol
    )
    return HybridState(s.n_atoms, s.n_modes, branches)


def to_density(s: HybridState) -> DensityHybrid:
    c = s.coeffs()
    kets = tuple((b.atom_word, b.modes) for b in s.branches)
    return DensityHybrid(s.n_atoms, s.n_modes, kets, np.outer(c, c.conjugate()))


def ket_gram(rho: DensityHybrid) -> np.ndarray:
    """Gram matrix S[k, l] = <ket_k|ket_l> of the density's ket set."""
    k = len(rho.kets)
    g = np.empty((k, k), dtype=complex)
    for i, (wi, mi) in enumerate(rho.kets):
        for j, (wj, mj) in enumerate(rho.kets):
            if wi != wj:
                g[i, j] = 0.0
                continue
            val = 1.0 + 0.0j
            for a, b in zip(mi, mj):
                val *= overlap(a, b)
            g[i, j] = val
    return g


def density_trace(rho: DensityHybrid) -> float:
    # tr(rho) = sum_kl M[k,l] <ket_l|ket_k>
    s = ket_gram(rho)
    return float(np.trace(s @ rho.coeff).real)


def density_eigenvalues(rho: DensityHybrid) -> np.ndarray:
    """Spectrum of the density operator on the span of its kets.

    The non-orthogonal coefficient matrix M is orthogonalized through the ket
    Gram matrix S: the operator spectrum equals eig(S^{1/2} M S^{1/2}).
    """
    s = ket_gram(rho)
    w, v = np.linalg.eigh(s)
    sqrt_s = (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conjugate().T
    return np.linalg.eigvalsh(sqrt_s @ rho.coeff @ sqrt_s)


# ---------------------------------------------------------------------------
# Truncated-Fock conversions (numeric oracle backend)
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FockVector:
    """Dense amplitudes over (atoms) x (photon numbers), with a tail bound.

    `amps` has shape (2,)*n_atoms + (cutoff+1,)*n_modes, atom index 0 = |e>,
    1 = |g>.  `tail_bound` is a conservative upper bound on the probability
    mass lost to truncation.
    """

    n_atoms: int
    n_modes: int
    cutoff: int
    amps: np.ndarray
    tail_bound: float

    def __post_init__(self):
        expected = (2,) * self.n_atoms + (self.cutoff + 1,) * self.n_modes
        a = np.asarray(self.amps, dtype=complex)
        if a.shape != expected:
            raise ShapeMismatchError(f"amps shape {a.shape} != {expected}")
        object.__setattr__(self, "amps", a)
        if self.tail_bound < 0:
            raise ValueError("tail bound must be non-negative")


def coherent_fock(alpha: complex, cutoff: int) -> tuple[np.ndarray, float]:
    """Fock amplitudes of |alpha> up to `cutoff`, plus the exact tail mass.

    Uses the stable recurrence a_{n+1} = a_n * alpha / sqrt(n+1); factorials
    are never formed, so cutoffs of a few hundred are safe.
    """
    alpha = complex(alpha)
    a = np.zeros(cutoff + 1, dtype=complex)
    a[0] = math.exp(-abs(alpha) ** 2 / 2)
    for n in range(cutoff):
        a[n + 1] = a[n] * alpha / math.sqrt(n + 1)
    tail = max(0.0, 1.0 - float(np.sum(np.abs(a) ** 2)))
    return a, tail


def default_cutoff(max_abs_alpha: float, eps: float = DEFAULT_TAIL_EPS) -> int:
    """Smallest cutoff whose Poisson tail mass is below eps at |alpha|."""
    mean = max_abs_alpha**2
    p = math.exp(-mean)
    cum = p
    n = 0
    while 1.0 - cum > eps and n < 100000:
        n += 1
        p *= mean / n
        cum += p
    return max(n, 1)


def hybrid_to_fock(s: HybridState, cutoff: int) -> FockVector:
    """Expand a branch sum into a dense truncated-Fock vector.

    The tail bound is a union bound: the truncated amplitude of each branch is
    at most |coeff| * sqrt(sum of per-mode tails), and bounds add in norm.
    """
    shape = (2,) * s.n_atoms + (cutoff + 1,) * s.n_modes
    amps = np.zeros(shape, dtype=complex)
    amp_bound = 0.0
    for b in s.branches:
        factors = []
        for ch in b.atom_word:
            vec = np.zeros(2, dtype=complex)
            vec[ATOM_LETTERS.index(ch)] = 1.0
            factors.append(vec)
        tails = 0.0
        for alpha in b.modes:
            arr, tl = coherent_fock(alpha, cutoff)
            factors.append(arr)
            tails += tl
        term = reduce(np.multiply.outer, factors) if factors else np.ones(())
        amps = amps + b.coeff * term.reshape(shape)
        amp_bound += abs(b.coeff) * math.sqrt(tails)
    return FockVector(s.n_atoms, s.n_modes, cutoff, amps, amp_bound**2)


def fock_inner(a: FockVector, b: FockVector) -> complex:
    if a.amps.shape != b.amps.shape:
        raise ShapeMismatchError("Fock vectors have different shapes")
    return complex(np.vdot(a.amps, b.amps))


def fock_norm2(v: FockVector) -> float:
    return float(np.sum(np.abs(v.amps) ** 2))


def mode_mean_photon(v: FockVector, mode: int) -> float:
    """Expectation of the photon number of one mode (unnormalized state)."""
    axis = v.n_atoms + mode
    n = np.arange(v.cutoff + 1)
    prob = np.sum(np.abs(v.amps) ** 2, axis=tuple(i for i in range(v.amps.ndim) if i != axis))
    return float(np.sum(n * prob))
