"""Analytic amplitude-damping channel on branch densities, plus timescales.

Photon loss at rate kappa sends every coherent amplitude to sqrt(eta)*alpha
with eta = e^{-kappa t}, and multiplies the (k, l) coefficient by

    exp{ (1 - eta) [ conj(beta_l) alpha_k - (|alpha_k|^2 + |beta_l|^2)/2 ] }

where alpha_k / beta_l are the mode amplitudes on the ket / bra side.  The
exponent is assembled directly (no complex powers of an overlap), which keeps
the channel single-valued.  The map is trace-preserving and a semigroup in t.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .states import DensityHybrid, HybridState, overlap


def damp(rho: DensityHybrid, mode: int, kappa: float, t: float) -> DensityHybrid:
    """Amplitude damping of a single mode for a time t at rate kappa."""
    if not 0 <= mode < rho.n_modes:
        raise IndexError(f"mode index {mode} out of range for {rho.n_modes} modes")
    if kappa < 0 or t < 0:
        raise ValueError("rate and duration must be non-negative")
    eta = math.exp(-kappa * t)
    root = math.sqrt(eta)
    amps = [ms[mode] for _, ms in rho.kets]
    kets = tuple(
        (w, ms[:mode] + (root * ms[mode],) + ms[mode + 1 :]) for w, ms in rho.kets
    )
    k = len(amps)
    factor = np.empty((k, k), dtype=complex)
    for i, ai in enumerate(amps):
        for j, bj in enumerate(amps):
            expo = (1.0 - eta) * (
                bj.conjugate() * ai - (abs(ai) ** 2 + abs(bj) ** 2) / 2.0
            )
            factor[i, j] = cmath.exp(expo)
    return DensityHybrid(rho.n_atoms, rho.n_modes, kets, rho.coeff * factor)


def damp_all(rho: DensityHybrid, kappa: float, t: float) -> DensityHybrid:
    """Same (kappa, t) damping on every mode; channels on distinct modes commute."""
    for mode in range(rho.n_modes):
        rho = damp(rho, mode, kappa, t)
    return rho


def damped_fidelity(rho: DensityHybrid, psi: HybridState) -> float:
    """<psi|rho|psi>, evaluated entirely with branch overlaps."""
    if (rho.n_atoms, rho.n_modes) != (psi.n_atoms, psi.n_modes):
        raise ValueError("density and state have different shapes")
    u = np.zeros(len(rho.kets), dtype=complex)
    for l, (w, ms) in enumerate(rho.kets):
        for b in psi.branches:
            if b.atom_word != w:
                continue
            val = b.coeff
            for x, y in zip(ms, b.modes):
                val *= overlap(x, y)
            u[l] += val
    return float((u.conjugate() @ rho.coeff @ u).real)


@dataclass(frozen=True)
class TimescaleParams:
    """Laboratory timescales of the circular-Rydberg / microwave-cavity setup."""

    t_atomic: float  # atomic radiative lifetime (s)
    t_cavity: float  # cavity field lifetime (s)
    transit: float  # atom transit time through one cavity (s)
    quality: float  # cavity quality factor
    nu0: float  # atomic transition frequency (Hz)

    def __post_init__(self):
        for name, value in (
            ("t_atomic", self.t_atomic),
            ("t_cavity", self.t_cavity),
            ("transit", self.transit),
            ("quality", self.quality),
            ("nu0", self.nu0),
        ):
            if value <= 0:
                raise ValueError(f"{name} must be positive")


def experiment_timescales() -> TimescaleParams:
    """Published circular-Rydberg figures: 30 ms lifetime, 1 ms cavity, 0.1 ms transit."""
    return TimescaleParams(
        t_atomic=30e-3, t_cavity=1e-3, transit=0.1e-3, quality=3e8, nu0=51e9
    )


# A transit an order of magnitude below both lifetimes is taken as the
# "decoherence negligible during the protocol" regime.
FEASIBILITY_RATIO = 0.15


def timescale_report(p: TimescaleParams) -> dict:
    """Feasibility ratios for running the protocols faster than decoherence."""
    ratio_atomic = p.transit / p.t_atomic
    ratio_cavity = p.transit / p.t_cavity
    t_cavity_from_q = p.quality / (2.0 * math.pi * p.nu0)
    return {
        "transit_over_t_atomic": ratio_atomic,
        "transit_over_t_cavity": ratio_cavity,
        "kappa_t_per_transit": ratio_cavity,
        "t_cavity_from_q": t_cavity_from_q,
        "criterion_threshold": FEASIBILITY_RATIO,
        "feasible": bool(
            ratio_atomic < FEASIBILITY_RATIO and ratio_cavity < FEASIBILITY_RATIO
        ),
    }
