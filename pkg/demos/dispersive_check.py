"""Compare exact Jaynes-Cummings transits against the dispersive shortcut.

The protocol analysis replaces each atom-cavity crossing with a conditional
phase rotation, valid when the detuning dominates the vacuum coupling.
This script quantifies the error of that replacement as the ratio grows.
"""
import math

from ecsim.cli import dispersive_check

print(f"{'delta/g':>8} {'raw fidelity':>14} {'compensated':>14}")
for ratio in (5, 10, 20, 50, 100, 200):
    row = dispersive_check(1, 1.0, math.pi / 2, ratio)
    print(
        f"{ratio:>8} {row['raw_fidelity']:>14.6f} "
        f"{row['compensated_fidelity']:>14.6f}"
    )
print(
    "\nThe raw column stays near 0.5 because the exact evolution adds a"
    "\nStark phase to the excited sector; after compensating that known"
    "\nphase the agreement improves steadily with the detuning ratio."
)
