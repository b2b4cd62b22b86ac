"""Command-line front end.

Subcommands: run-ghz, run-w, run-spec, validate-dispersive, decohere,
sweep-entanglement, timescales.  Reports are JSON documents written to
stdout (or --out); sweep tables can additionally be written as CSV files.
Everything is deterministic: measurement outcomes are tabulated, not
sampled, unless --sample is given together with an explicit --seed.

Exit codes: 0 ok, 2 spec/argument validation error, 3 impossible outcome,
4 internal tolerance failure.
"""
from __future__ import annotations

import argparse
import cmath
import csv
import json
import math
import re
import sys
import time

import numpy as np

from . import __version__
from .damping import damp, damp_all, damped_fidelity, experiment_timescales, timescale_report, TimescaleParams
from .jc import jc_evolve, jc_interaction_propagator, phase_compensated_fidelity
from .protocols import (
    ToleranceError,
    dispersive_transit,
    inject,
    ramsey,
    reference_ghz,
    reference_w,
    w_atom_register,
    w_outcome_signs,
)
from .entanglement import entanglement_sweep
from .states import (
    Branch,
    HybridState,
    ZeroNormError,
    coherent_product,
    default_cutoff,
    fidelity_pure,
    hybrid_to_fock,
    norm2,
    normalize,
    prune,
    to_density,
)

PROB_FLOOR = 1e-24
PROB_SUM_TOL = 1e-9

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_IMPOSSIBLE = 3
EXIT_TOLERANCE = 4


class SpecValidationError(ValueError):
    """The protocol spec (file or flags) failed validation."""


# ---------------------------------------------------------------------------
# Parsing helpers
# ---------------------------------------------------------------------------

_ANGLE_RE = re.compile(r"^([+-]?[0-9.]*)\s*\*?\s*pi\s*(?:/\s*([0-9.]+))?$")


def parse_angle(text) -> float:
    """Parse an angle; 'pi/2', '3*pi/4', '-pi' are exact multiples of pi."""
    if isinstance(text, (int, float)):
        return float(text)
    s = str(text).strip().lower()
    m = _ANGLE_RE.match(s)
    if m:
        num = m.group(1)
        coef = 1.0 if num in ("", "+") else -1.0 if num == "-" else float(num)
        den = float(m.group(2)) if m.group(2) else 1.0
        return coef * math.pi / den
    try:
        return float(s)
    except ValueError as exc:
        raise SpecValidationError(f"cannot parse angle {text!r}") from exc


def parse_complex(value) -> complex:
    """Parse a complex number from '1+2i', a float, or an [re, im] pair."""
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise SpecValidationError(f"complex pair must have two entries: {value!r}")
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, (int, float, complex)):
        return complex(value)
    s = str(value).strip().replace("i", "j")
    try:
        return complex(s)
    except ValueError as exc:
        raise SpecValidationError(f"cannot parse complex number {value!r}") from exc


def _pair(z: complex) -> list[float]:
    return [z.real, z.imag]


def _branch_dicts(s: HybridState) -> list[dict]:
    return [
        {"atoms": b.atom_word, "coeff": _pair(b.coeff), "modes": [_pair(m) for m in b.modes]}
        for b in s.branches
    ]


# ---------------------------------------------------------------------------
# Protocol spec construction and execution
# ---------------------------------------------------------------------------

def build_ghz_spec(n: int, alpha: complex, theta: str) -> dict:
    steps: list[dict] = [
        {"op": "inject", "mode": m, "gamma": _pair(alpha)} for m in range(n)
    ]
    steps.append({"op": "ramsey", "atom": 0})
    steps += [{"op": "transit", "atom": 0, "mode": m, "theta": theta} for m in range(n)]
    steps.append({"op": "ramsey", "atom": 0})
    steps.append({"op": "measure", "atom": 0, "outcome": "tabulate"})
    return {
        "n_modes": n,
        "initial_alphas": [[0.0, 0.0] for _ in range(n)],
        "atoms": ["e"],
        "steps": steps,
        "references": {"family": "ghz", "alpha": _pair(alpha), "theta": theta},
    }


def build_w_spec(n: int, alpha: complex, theta: str) -> dict:
    steps: list[dict] = [
        {"op": "inject", "mode": m, "gamma": _pair(alpha)} for m in range(n)
    ]
    steps += [{"op": "transit", "atom": i, "mode": i, "theta": theta} for i in range(n)]
    steps += [{"op": "ramsey", "atom": i} for i in range(n)]
    steps.append({"op": "measure", "atom": 0, "outcome": "tabulate"})
    return {
        "n_modes": n,
        "initial_alphas": [[0.0, 0.0] for _ in range(n)],
        "atoms": {"kind": "w", "n": n},
        "steps": steps,
        "references": {"family": "w", "alpha": _pair(alpha), "theta": theta},
    }


def _initial_state(spec: dict) -> HybridState:
    n_modes = spec["n_modes"]
    alphas = [parse_complex(a) for a in spec.get("initial_alphas", [0.0] * n_modes)]
    if len(alphas) != n_modes:
        raise SpecValidationError("initial_alphas length does not match n_modes")
    atoms = spec.get("atoms", [])
    if isinstance(atoms, dict):
        if atoms.get("kind") != "w":
            raise SpecValidationError(f"unknown atom register kind {atoms.get('kind')!r}")
        n_at = int(atoms.get("n", n_modes))
        weights = atoms.get("weights")
        state = w_atom_register(n_at, n_modes, weights)
        state = HybridState(
            state.n_atoms,
            n_modes,
            tuple(Branch(b.atom_word, b.coeff, tuple(alphas)) for b in state.branches),
        )
        return state
    # product register over letters; '+' means (|e> + |g>)/sqrt(2)
    state = coherent_product(alphas, atom_word="")
    for letter in atoms:
        if letter == "e" or letter == "g":
            state = HybridState(
                state.n_atoms + 1,
                n_modes,
                tuple(Branch(b.atom_word + letter, b.coeff, b.modes) for b in state.branches),
            )
        elif letter == "+":
            inv = 1.0 / math.sqrt(2.0)
            branches = []
            for b in state.branches:
                branches.append(Branch(b.atom_word + "e", b.coeff * inv, b.modes))
                branches.append(Branch(b.atom_word + "g", b.coeff * inv, b.modes))
            state = HybridState(state.n_atoms + 1, n_modes, tuple(branches))
        else:
            raise SpecValidationError(f"unknown atom descriptor {letter!r}")
    return state


def _reference_lookup(spec: dict, n_modes: int):
    refs = spec.get("references")
    if refs is None:
        return None
    family = refs.get("family")
    alpha = parse_complex(refs.get("alpha", 0.0))
    theta = parse_angle(refs.get("theta", "pi/2"))
    weights = refs.get("weights")
    if family == "ghz":
        beta = alpha * cmath.exp(-1j * theta)

        def lookup(word: str):
            if len(word) != 1:
                return None
            try:
                return reference_ghz(n_modes, beta, +1 if word == "g" else -1)
            except ZeroNormError:
                return None

        return lookup
    if family == "w":
        beta = alpha * cmath.exp(+1j * theta)

        def lookup(word: str):
            try:
                return reference_w(n_modes, beta, w_outcome_signs(word), weights)
            except ZeroNormError:
                return None

        return lookup
    raise SpecValidationError(f"unknown reference family {family!r}")


def run_spec_dict(spec: dict) -> dict:
    """Validate and execute a protocol spec, returning the report document."""
    try:
        n_modes = int(spec["n_modes"])
    except (KeyError, TypeError, ValueError) as exc:
        raise SpecValidationError("spec needs an integer n_modes") from exc
    state = _initial_state(spec)
    n_atoms = state.n_atoms
    # original atom label -> current position in the word, None once measured
    position = {i: i for i in range(n_atoms)}
    fixed: list[dict] = []
    steps = spec.get("steps", [])
    tabulate_seen = False

    def atom_pos(label, step_no):
        if label not in position:
            raise SpecValidationError(f"step {step_no}: atom index {label} out of range")
        if position[label] is None:
            raise SpecValidationError(f"step {step_no}: atom {label} was already measured")
        return position[label]

    for step_no, step in enumerate(steps):
        if tabulate_seen:
            raise SpecValidationError(f"step {step_no}: steps after a tabulate block")
        op = step.get("op")
        if op == "inject":
            mode = int(step["mode"])
            if not 0 <= mode < n_modes:
                raise SpecValidationError(f"step {step_no}: mode index {mode} out of range")
            state = inject(state, mode, parse_complex(step["gamma"]))
        elif op == "transit":
            pos = atom_pos(int(step["atom"]), step_no)
            mode = int(step["mode"])
            if not 0 <= mode < n_modes:
                raise SpecValidationError(f"step {step_no}: mode index {mode} out of range")
            if "theta" in step:
                theta = parse_angle(step["theta"])
            else:
                try:
                    g, delta, tau = float(step["g"]), float(step["delta"]), float(step["tau"])
                except KeyError as exc:
                    raise SpecValidationError(
                        f"step {step_no}: transit needs theta or (g, delta, tau)"
                    ) from exc
                if delta == 0:
                    raise SpecValidationError(f"step {step_no}: zero detuning")
                theta = (g * g / delta) * tau
            state = dispersive_transit(state, pos, mode, theta)
        elif op == "ramsey":
            state = ramsey(state, atom_pos(int(step["atom"]), step_no))
        elif op == "measure":
            outcome = step.get("outcome")
            if outcome == "tabulate":
                tabulate_seen = True
                continue
            if outcome not in ("e", "g"):
                raise SpecValidationError(f"step {step_no}: outcome must be e, g or tabulate")
            label = int(step["atom"])
            pos = atom_pos(label, step_no)
            total = norm2(state)
            kept = tuple(b for b in state.branches if b.atom_word[pos] == outcome)
            p = (
                norm2(HybridState(state.n_atoms, n_modes, kept)) / total
                if kept
                else 0.0
            )
            if p < PROB_FLOOR:
                raise ZeroNormError(
                    f"step {step_no}: outcome {outcome!r} on atom {label} is impossible"
                )
            state = normalize(
                HybridState(
                    state.n_atoms - 1,
                    n_modes,
                    tuple(
                        Branch(b.atom_word[:pos] + b.atom_word[pos + 1 :], b.coeff, b.modes)
                        for b in kept
                    ),
                )
            )
            fixed.append({"atom": label, "outcome": outcome, "probability": p})
            position[label] = None
            for other, cur in position.items():
                if cur is not None and cur > pos:
                    position[other] = cur - 1
        else:
            raise SpecValidationError(f"step {step_no}: unknown op {op!r}")

    state = prune(state)
    result: dict = {
        "pre_measurement": {"norm2": norm2(state), "branches": _branch_dicts(state)},
        "fixed_measurements": fixed,
    }

    if tabulate_seen and state.n_atoms > 0:
        lookup = _reference_lookup(spec, n_modes)
        outcomes: dict[str, dict] = {}
        total = norm2(state)
        import itertools

        prob_sum = 0.0
        posts: dict[str, HybridState | None] = {}
        for letters in itertools.product("ge", repeat=state.n_atoms):
            word = "".join(letters)
            kept = tuple(
                b
                for b in state.branches
                if all(b.atom_word[i] == ch for i, ch in enumerate(letters))
            )
            p = norm2(HybridState(state.n_atoms, n_modes, kept)) / total if kept else 0.0
            post = None
            if p >= PROB_FLOOR:
                post = normalize(
                    HybridState(
                        0,
                        n_modes,
                        tuple(Branch("", b.coeff, b.modes) for b in kept),
                    )
                )
            posts[word] = post
            fid = None
            if post is not None and lookup is not None:
                ref = lookup(word)
                if ref is not None:
                    fid = fidelity_pure(post, ref)
            outcomes[word] = {
                "probability": p,
                "reference_fidelity": fid,
                "post_branches": _branch_dicts(post) if post is not None else None,
            }
            prob_sum += p
        if abs(prob_sum - 1.0) > PROB_SUM_TOL:
            raise ToleranceError(f"outcome probabilities sum to {prob_sum!r}")
        result["outcomes"] = outcomes

        damping_block = spec.get("damping")
        if damping_block is not None:
            kappa = float(damping_block["kappa"])
            t = float(damping_block["t"])
            modes = damping_block.get("modes", list(range(n_modes)))
            eta = math.exp(-kappa * t)
            root = math.sqrt(eta)
            deco: dict[str, dict] = {}
            for word, post in posts.items():
                if post is None:
                    continue
                rho = to_density(post)
                for mode in modes:
                    rho = damp(rho, int(mode), kappa, t)
                rescaled = HybridState(
                    0,
                    n_modes,
                    tuple(
                        Branch(
                            "",
                            b.coeff,
                            tuple(
                                m * root if i in set(int(x) for x in modes) else m
                                for i, m in enumerate(b.modes)
                            ),
                        )
                        for b in post.branches
                    ),
                )
                deco[word] = {
                    "eta": eta,
                    "fidelity_to_rescaled": damped_fidelity(rho, normalize(rescaled)),
                }
            result["decoherence"] = {"kappa": kappa, "t": t, "modes": list(modes), "outcomes": deco}

    return {
        "tool": {"name": "ecsim", "version": __version__},
        "spec": spec,
        "result": result,
    }


# ---------------------------------------------------------------------------
# Dispersive-approximation validation against the exact propagator
# ---------------------------------------------------------------------------

def dispersive_check(n_modes: int, alpha: complex, theta: float, ratio: float,
                     tail_eps: float = 1e-10) -> dict:
    """Exact transit sequence vs the conditional-rotation prediction.

    The atom starts in (|e>+|g>)/sqrt(2) with every mode in |alpha| and
    crosses each mode once with g = 1, delta = ratio, tau = theta/lambda.
    """
    g = 1.0
    delta = ratio * g
    lam = g * g / delta
    tau = theta / lam
    cutoff = default_cutoff(abs(alpha), tail_eps) + 10
    start = coherent_product((alpha,) * n_modes, atom_word="e")
    start = ramsey(start, 0)
    v = hybrid_to_fock(start, cutoff)
    prop = jc_interaction_propagator(g, delta, tau, cutoff)
    for m in range(n_modes):
        v = jc_evolve(v, 0, m, prop)
    predicted = start
    for m in range(n_modes):
        predicted = dispersive_transit(predicted, 0, m, theta)
    ref = hybrid_to_fock(predicted, cutoff)
    # normalize away the (bounded) truncation deficit before comparing
    v_n = v.amps / np.linalg.norm(v.amps)
    r_n = ref.amps / np.linalg.norm(ref.amps)
    from .states import FockVector

    raw, comp = phase_compensated_fidelity(
        FockVector(v.n_atoms, v.n_modes, cutoff, v_n, v.tail_bound),
        FockVector(ref.n_atoms, ref.n_modes, cutoff, r_n, ref.tail_bound),
        atom=0,
    )
    return {
        "detuning_ratio": ratio,
        "g": g,
        "delta": delta,
        "tau": tau,
        "theta": theta,
        "cutoff": cutoff,
        "tail_bound": max(v.tail_bound, ref.tail_bound),
        "raw_fidelity": raw,
        "compensated_fidelity": comp,
    }


# ---------------------------------------------------------------------------
# Output helpers
# ---------------------------------------------------------------------------

def _emit(report: dict, out_path: str | None):
    text = json.dumps(report, indent=2, allow_nan=False)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _write_csv(rows: list[dict], fieldnames: list[str], path: str):
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=fieldnames)
        writer.writeheader()
        for row in rows:
            writer.writerow(row)


def _sample_block(outcomes: dict, count: int, seed: int) -> dict:
    words = list(outcomes)
    probs = np.array([outcomes[w]["probability"] for w in words], dtype=float)
    probs = probs / probs.sum()
    rng = np.random.default_rng(seed)
    draws = rng.multinomial(count, probs)
    return {"seed": seed, "count": count, "counts": {w: int(c) for w, c in zip(words, draws)}}


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def _cmd_run_ghz(args) -> int:
    alpha = parse_complex(args.alpha)
    spec = build_ghz_spec(args.n, alpha, args.theta)
    report = run_spec_dict(spec)
    if args.sample:
        if args.seed is None:
            raise SpecValidationError("--sample requires an explicit --seed")
        report["samples"] = _sample_block(report["result"]["outcomes"], args.sample, args.seed)
    if args.validate_fock:
        report["fock_validation"] = dispersive_check(
            args.n, alpha, parse_angle(args.theta), args.detuning_ratio
        )
    _emit(report, args.out)
    return EXIT_OK


def _cmd_run_w(args) -> int:
    alpha = parse_complex(args.alpha)
    spec = build_w_spec(args.n, alpha, args.theta)
    report = run_spec_dict(spec)
    if args.sample:
        if args.seed is None:
            raise SpecValidationError("--sample requires an explicit --seed")
        report["samples"] = _sample_block(report["result"]["outcomes"], args.sample, args.seed)
    _emit(report, args.out)
    return EXIT_OK


def _cmd_run_spec(args) -> int:
    try:
        with open(args.path) as fh:
            spec = json.load(fh)
    except OSError as exc:
        raise SpecValidationError(f"cannot read spec file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SpecValidationError(f"spec file does not parse: {exc}") from exc
    report = run_spec_dict(spec)
    _emit(report, args.out)
    return EXIT_OK


def _cmd_validate_dispersive(args) -> int:
    ratios = [float(x) for x in args.ratios.split(",")]
    theta = parse_angle(args.theta)
    alpha = parse_complex(args.alpha)
    rows = [dispersive_check(1, alpha, theta, r) for r in ratios]
    comp = [r["compensated_fidelity"] for r in rows]
    report = {
        "tool": {"name": "ecsim", "version": __version__},
        "theta": theta,
        "alpha": _pair(alpha),
        "rows": rows,
        "compensated_monotone_increasing": bool(
            all(b > a for a, b in zip(comp, comp[1:]))
        ),
    }
    if args.csv:
        _write_csv(
            [
                {
                    "detuning_ratio": r["detuning_ratio"],
                    "raw_fidelity": r["raw_fidelity"],
                    "compensated_fidelity": r["compensated_fidelity"],
                }
                for r in rows
            ],
            ["detuning_ratio", "raw_fidelity", "compensated_fidelity"],
            args.csv,
        )
    _emit(report, args.out)
    return EXIT_OK


def _cmd_decohere(args) -> int:
    alphas = [parse_complex(x) for x in args.alpha.split(",")]
    eta = math.exp(-args.kappa * args.t)
    root = math.sqrt(eta)
    rows = []
    for alpha in alphas:
        if args.family == "ghz-plus":
            state = reference_ghz(args.n, alpha, +1)
            target = reference_ghz(args.n, root * alpha, +1)
        elif args.family == "ghz-minus":
            state = reference_ghz(args.n, alpha, -1)
            target = reference_ghz(args.n, root * alpha, -1)
        elif args.family == "w":
            state = reference_w(args.n, alpha, (+1,) * args.n)
            target = reference_w(args.n, root * alpha, (+1,) * args.n)
        else:
            raise SpecValidationError(f"unknown family {args.family!r}")
        rho = damp_all(to_density(state), args.kappa, args.t)
        rows.append(
            {
                "alpha": _pair(alpha),
                "eta": eta,
                "fidelity_to_rescaled": damped_fidelity(rho, target),
            }
        )
    report = {
        "tool": {"name": "ecsim", "version": __version__},
        "family": args.family,
        "n": args.n,
        "kappa": args.kappa,
        "t": args.t,
        "rows": rows,
    }
    if args.csv:
        _write_csv(
            [
                {
                    "alpha_re": r["alpha"][0],
                    "alpha_im": r["alpha"][1],
                    "eta": r["eta"],
                    "fidelity_to_rescaled": r["fidelity_to_rescaled"],
                }
                for r in rows
            ],
            ["alpha_re", "alpha_im", "eta", "fidelity_to_rescaled"],
            args.csv,
        )
    _emit(report, args.out)
    return EXIT_OK


def _cmd_sweep_entanglement(args) -> int:
    betas = [parse_complex(x) for x in args.betas.split(",")]
    sweep = entanglement_sweep(args.family, args.n, betas)
    rows = [
        {
            "beta": _pair(r["beta"]),
            "bipartition": r["bipartition"],
            "entropy_bits": r["entropy_bits"],
            "negativity": r["negativity"],
        }
        for r in sweep["rows"]
    ]
    report = {
        "tool": {"name": "ecsim", "version": __version__},
        "family": sweep["family"],
        "n": sweep["n"],
        "rows": rows,
        "constant_flags": sweep["constant_flags"],
    }
    if args.csv:
        _write_csv(
            [
                {
                    "beta_re": r["beta"][0],
                    "beta_im": r["beta"][1],
                    "bipartition": r["bipartition"],
                    "entropy_bits": r["entropy_bits"],
                    "negativity": r["negativity"],
                }
                for r in rows
            ],
            ["beta_re", "beta_im", "bipartition", "entropy_bits", "negativity"],
            args.csv,
        )
    _emit(report, args.out)
    return EXIT_OK


def _cmd_timescales(args) -> int:
    params = TimescaleParams(
        t_atomic=args.t_atomic,
        t_cavity=args.t_cavity,
        transit=args.transit,
        quality=args.quality,
        nu0=args.nu0,
    )
    report = {
        "tool": {"name": "ecsim", "version": __version__},
        "params": {
            "t_atomic": params.t_atomic,
            "t_cavity": params.t_cavity,
            "transit": params.transit,
            "quality": params.quality,
            "nu0": params.nu0,
        },
        "report": timescale_report(params),
    }
    _emit(report, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ecsim",
        description="Simulator for GHZ- and W-type entangled coherent states of cavity fields",
    )
    parser.add_argument("--version", action="version", version=f"ecsim {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    defaults = experiment_timescales()

    p = sub.add_parser("run-ghz", help="run the single-atom GHZ scheme")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--alpha", default="2")
    p.add_argument("--theta", default="pi/2")
    p.add_argument("--validate-fock", action="store_true")
    p.add_argument("--detuning-ratio", type=float, default=50.0)
    p.add_argument("--sample", type=int, default=0, metavar="N")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_run_ghz)

    p = sub.add_parser("run-w", help="run the n-atom W scheme")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--alpha", default="1")
    p.add_argument("--theta", default="pi/2")
    p.add_argument("--sample", type=int, default=0, metavar="N")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_run_w)

    p = sub.add_parser("run-spec", help="execute a protocol spec file (JSON)")
    p.add_argument("path")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_run_spec)

    p = sub.add_parser("validate-dispersive", help="exact JC evolution vs conditional rotation")
    p.add_argument("--ratios", default="10,20,50,100")
    p.add_argument("--alpha", default="1")
    p.add_argument("--theta", default="pi/2")
    p.add_argument("--csv")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_validate_dispersive)

    p = sub.add_parser("decohere", help="amplitude damping of an ECS family")
    p.add_argument("--family", default="ghz-plus", choices=["ghz-plus", "ghz-minus", "w"])
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--alpha", default="0.5,1,2")
    p.add_argument("--kappa", type=float, default=1.0 / defaults.t_cavity)
    p.add_argument("--t", type=float, default=defaults.transit)
    p.add_argument("--csv")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_decohere)

    p = sub.add_parser("sweep-entanglement", help="entropy/negativity across a beta grid")
    p.add_argument("--family", default="ghz-plus", choices=["ghz-plus", "ghz-minus", "w"])
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--betas", default="0.3,1,2,3")
    p.add_argument("--csv")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_sweep_entanglement)

    p = sub.add_parser("timescales", help="feasibility ratios for the lab timescales")
    p.add_argument("--t-atomic", type=float, default=defaults.t_atomic)
    p.add_argument("--t-cavity", type=float, default=defaults.t_cavity)
    p.add_argument("--transit", type=float, default=defaults.transit)
    p.add_argument("--quality", type=float, default=defaults.quality)
    p.add_argument("--nu0", type=float, default=defaults.nu0)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_timescales)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.monotonic()
    try:
        code = args.func(args)
    except SpecValidationError as exc:
        print(f"ecsim: validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ZeroNormError as exc:
        print(f"ecsim: impossible outcome: {exc}", file=sys.stderr)
        return EXIT_IMPOSSIBLE
    except ToleranceError as exc:
        print(f"ecsim: internal tolerance failure: {exc}", file=sys.stderr)
        return EXIT_TOLERANCE
    # wall clock goes to stderr so reports stay byte-identical across runs
    print(f"ecsim: done in {time.monotonic() - start:.3f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
