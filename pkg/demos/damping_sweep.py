"""Photon loss during storage: fidelity of damped cats vs amplitude.

Larger cats decohere faster: the inter-branch coherence decays like
exp(-2|alpha|^2 (1 - e^(-kappa t))), so the fidelity to the amplitude-
rescaled target drops with alpha at fixed storage time.
"""
import math

from ecsim import damp_all, damped_fidelity, experiment_timescales, reference_ghz, to_density

params = experiment_timescales()
kappa = 1.0 / params.t_cavity

print(f"cavity lifetime {params.t_cavity * 1e3:.1f} ms, storage = transit time")
print(f"{'alpha':>6} {'eta':>8} {'fidelity':>10}")
for alpha in (0.5, 1.0, 1.5, 2.0, 3.0):
    rho = damp_all(to_density(reference_ghz(3, alpha, +1)), kappa, params.transit)
    eta = math.exp(-kappa * params.transit)
    target = reference_ghz(3, alpha * math.sqrt(eta), +1)
    print(f"{alpha:>6.1f} {eta:>8.4f} {damped_fidelity(rho, target):>10.6f}")
