"""Protocol steps and drivers for the GHZ- and W-type cavity schemes.

All steps act on `HybridState` branch sums and are exact: the dispersive
transit only rotates coherent amplitudes, the Ramsey pulse is the unitary
pi/2 map with explicit 1/sqrt(2) normalization, and measurement projects via
the Gram algebra.  The drivers tabulate every atomic outcome together with
its probability and the fidelity to the matching reference entangled
coherent state.
"""
from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass

from .states import (
    Branch,
    HybridState,
    ZeroNormError,
    coherent_product,
    fidelity_pure,
    norm2,
    normalize,
    prune,
    vacuum,
)

PROB_FLOOR = 1e-24
PROB_SUM_TOL = 1e-9


class ToleranceError(RuntimeError):
    """An internal consistency check (probability completeness) failed."""


@dataclass(frozen=True)
class DispersiveParams:
    """Physical transit parameters; theta = (g^2/delta) * tau."""

    g: float
    delta: float
    tau: float

    def __post_init__(self):
        if self.delta == 0:
            raise ValueError("detuning must be non-zero")

    @property
    def lam(self) -> float:
        return self.g**2 / self.delta

    @property
    def theta(self) -> float:
        return self.lam * self.tau

    @property
    def in_dispersive_regime(self) -> bool:
        return abs(self.delta / self.g) >= 10 if self.g != 0 else True


@dataclass(frozen=True)
class OutcomeRecord:
    probability: float
    post_state: HybridState | None
    reference_fidelity: float | None


@dataclass(frozen=True)
class ProtocolResult:
    outcomes: dict[str, OutcomeRecord]
    pre_measurement: HybridState

    def __post_init__(self):
        total = sum(rec.probability for rec in self.outcomes.values())
        if abs(total - 1.0) > PROB_SUM_TOL:
            raise ToleranceError(f"outcome probabilities sum to {total!r}")


# ---------------------------------------------------------------------------
# Elementary steps
# ---------------------------------------------------------------------------

def _check_atom(s: HybridState, atom: int):
    if not 0 <= atom < s.n_atoms:
        raise IndexError(f"atom index {atom} out of range for {s.n_atoms} atoms")


def _check_mode(s: HybridState, mode: int):
    if not 0 <= mode < s.n_modes:
        raise IndexError(f"mode index {mode} out of range for {s.n_modes} modes")


def inject(s: HybridState, mode: int, gamma: complex) -> HybridState:
    """Displace one mode by gamma in every branch.

    D(gamma)|a> = exp((gamma*conj(a) - conj(gamma)*a)/2) |a + gamma>, so on
    the vacuum this produces exactly |gamma> with no extra phase.
    """
    _check_mode(s, mode)
    gamma = complex(gamma)
    branches = []
    for b in s.branches:
        a = b.modes[mode]
        phase = cmath.exp((gamma * a.conjugate() - gamma.conjugate() * a) / 2)
        modes = b.modes[:mode] + (a + gamma,) + b.modes[mode + 1 :]
        branches.append(Branch(b.atom_word, b.coeff * phase, modes))
    return HybridState(s.n_atoms, s.n_modes, tuple(branches))


def dispersive_transit(s: HybridState, atom: int, mode: int, theta: float) -> HybridState:
    """Conditional coherent phase rotation of one mode by one atom.

    |e>|a> -> |e>|a e^{-i theta}>, |g>|a> -> |g>|a e^{+i theta}>.
    """
    _check_atom(s, atom)
    _check_mode(s, mode)
    rot_e = cmath.exp(-1j * theta)
    rot_g = cmath.exp(+1j * theta)
    branches = []
    for b in s.branches:
        rot = rot_e if b.atom_word[atom] == "e" else rot_g
        modes = b.modes[:mode] + (b.modes[mode] * rot,) + b.modes[mode + 1 :]
        branches.append(Branch(b.atom_word, b.coeff, modes))
    return HybridState(s.n_atoms, s.n_modes, tuple(branches))


def ramsey(s: HybridState, atom: int) -> HybridState:
    """pi/2 pulse on one atom: |e> -> (|e>+|g>)/sqrt2, |g> -> (|g>-|e>)/sqrt2."""
    _check_atom(s, atom)
    inv = 1.0 / math.sqrt(2.0)
    branches = []
    for b in s.branches:
        letter = b.atom_word[atom]
        for new_letter, sign in (("e", 1.0), ("g", 1.0)) if letter == "e" else (
            ("g", 1.0),
            ("e", -1.0),
        ):
            word = b.atom_word[:atom] + new_letter + b.atom_word[atom + 1 :]
            branches.append(Branch(word, b.coeff * sign * inv, b.modes))
    return HybridState(s.n_atoms, s.n_modes, tuple(branches))


def _project(s: HybridState, assignments: dict[int, str]) -> tuple[float, HybridState | None]:
    """Probability of a joint atomic outcome and the renormalized remainder.

    The measured atoms are removed from the atomic word (the detector absorbs
    the atom).  Returns post_state None when the outcome is impossible.
    """
    total = norm2(s)
    kept = [b for b in s.branches if all(b.atom_word[a] == v for a, v in assignments.items())]
    if not kept:
        return 0.0, None
    projected = HybridState(s.n_atoms, s.n_modes, tuple(kept))
    p = norm2(projected) / total
    if p < PROB_FLOOR:
        return p, None
    removed = sorted(assignments)
    post_branches = tuple(
        Branch(
            "".join(ch for i, ch in enumerate(b.atom_word) if i not in assignments),
            b.coeff,
            b.modes,
        )
        for b in kept
    )
    post = HybridState(s.n_atoms - len(removed), s.n_modes, post_branches)
    return p, normalize(post)


def measure(s: HybridState, atom: int, outcome: str) -> tuple[float, HybridState]:
    """Project one atom onto |outcome> and drop it from the register."""
    _check_atom(s, atom)
    if outcome not in ("e", "g"):
        raise ValueError(f"outcome must be 'e' or 'g', got {outcome!r}")
    p, post = _project(s, {atom: outcome})
    if post is None:
        raise ZeroNormError(f"outcome {outcome!r} on atom {atom} has probability {p:g}")
    return p, post


# ---------------------------------------------------------------------------
# Reference states
# ---------------------------------------------------------------------------

def reference_ghz(n: int, beta: complex, sign: int) -> HybridState:
    """Normalized |b..b> + sign |-b..-b> over n modes (sign is +1 or -1)."""
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    beta = complex(beta)
    branches = (
        Branch("", 1.0, (beta,) * n),
        Branch("", float(sign), (-beta,) * n),
    )
    return normalize(HybridState(0, n, branches))


def reference_w(n: int, beta: complex, signs, weights=None) -> HybridState:
    """Normalized sum_i s_i w_i |b..(-b at slot i)..b> over n modes."""
    beta = complex(beta)
    signs = tuple(int(x) for x in signs)
    if len(signs) != n or any(x not in (+1, -1) for x in signs):
        raise ValueError("signs must be a length-n sequence over {+1, -1}")
    if weights is None:
        weights = (1.0,) * n
    branches = []
    for i in range(n):
        modes = tuple(-beta if j == i else beta for j in range(n))
        branches.append(Branch("", signs[i] * complex(weights[i]), modes))
    return normalize(HybridState(0, n, tuple(branches)))


def w_atom_register(n: int, n_modes: int, weights=None) -> HybridState:
    """n-atom W state (all words with a single e) over vacuum modes."""
    if n < 2:
        raise ValueError("the W register needs at least two atoms")
    if weights is None:
        weights = (1.0 / math.sqrt(n),) * n
    branches = []
    for i in range(n):
        word = "".join("e" if j == i else "g" for j in range(n))
        branches.append(Branch(word, complex(weights[i]), (0.0,) * n_modes))
    return HybridState(n, n_modes, tuple(branches))


def w_outcome_signs(word: str) -> tuple[int, ...]:
    """Sign pattern of the field superposition heralded by an atomic outcome.

    Branch i (the one whose atom was excited) picks up a Ramsey sign
    (-1)^(number of e-detections among the other atoms).
    """
    n_e = word.count("e")
    return tuple((-1) ** (n_e - (1 if ch == "e" else 0)) for ch in word)


# ---------------------------------------------------------------------------
# Drivers
# ---------------------------------------------------------------------------

def _tabulate(s: HybridState, references) -> ProtocolResult:
    """Measure every remaining atom; references maps outcome word -> state."""
    outcomes: dict[str, OutcomeRecord] = {}
    for letters in itertools.product("ge", repeat=s.n_atoms):
        word = "".join(letters)
        p, post = _project(s, dict(enumerate(letters)))
        fid = None
        if post is not None and references is not None:
            ref = references(word)
            if ref is not None:
                fid = fidelity_pure(post, ref)
        outcomes[word] = OutcomeRecord(p, post, fid)
    return ProtocolResult(outcomes, s)


def run_ghz(n: int, alpha: complex, theta: float) -> ProtocolResult:
    """GHZ scheme: one atom in (|e>+|g>)/sqrt2 crosses n cavities in |alpha>.

    After the closing Ramsey pulse the g / e outcomes herald the plus / minus
    entangled coherent state with beta = alpha e^{-i theta}.
    """
    if n < 1:
        raise ValueError("need at least one cavity")
    alpha = complex(alpha)
    s = vacuum(n, atom_word="e")
    for m in range(n):
        s = inject(s, m, alpha)
    s = ramsey(s, 0)
    for m in range(n):
        s = dispersive_transit(s, 0, m, theta)
    s = ramsey(s, 0)
    s = prune(s)

    beta = alpha * cmath.exp(-1j * theta)

    def references(word: str) -> HybridState | None:
        sign = +1 if word == "g" else -1
        try:
            return reference_ghz(n, beta, sign)
        except ZeroNormError:
            return None

    return _tabulate(s, references)


def run_w(n: int, alpha: complex, theta: float, weights=None) -> ProtocolResult:
    """W scheme: n atoms sharing a W state cross n cavities in parallel.

    Each 2^n outcome heralds a signed W-type entangled coherent state with
    beta = alpha e^{+i theta} (the excited-atom slot carries alpha e^{-i
    theta} = -beta at theta = pi/2).
    """
    if n < 2:
        raise ValueError("the W scheme needs at least two cavities")
    alpha = complex(alpha)
    s = w_atom_register(n, n, weights)
    for m in range(n):
        s = inject(s, m, alpha)
    for i in range(n):
        s = dispersive_transit(s, i, i, theta)
    for i in range(n):
        s = ramsey(s, i)
    s = prune(s)

    beta = alpha * cmath.exp(+1j * theta)

    def references(word: str) -> HybridState | None:
        try:
            return reference_w(n, beta, w_outcome_signs(word), weights)
        except ZeroNormError:
            return None

    return _tabulate(s, references)
