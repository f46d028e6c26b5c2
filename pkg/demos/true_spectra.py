#!/usr/bin/env python3
"""How per-sensor noise deviations bend an eigenvalue spectrum.

With equal noise across sensors, everything past the source eigenvalues is
one flat noise floor, and counting sources is just counting eigenvalues that
stick out of it.  The bundled presets share the same three sources and
differ only in the noise profile, so printing their true-covariance spectra
side by side shows exactly what the deviations do to the floor.
"""

import numpy as np

from sourcecount import build_true_covariance, eig_hermitian, preset_scenario

presets = ("fig1", "fig2", "fig4")
labels = {
    "fig1": "flat noise floor",
    "fig2": "mild deviations (up to 10%)",
    "fig4": "strong deviations (up to 50%)",
}

spectra = {}
for name in presets:
    cfg = preset_scenario(name)
    spectra[name] = eig_hermitian(build_true_covariance(cfg)).values

print(f"{'':>4}" + "".join(f"{name:>10}" for name in presets))
for i in range(10):
    row = "".join(f"{spectra[name][i]:>10.3f}" for name in presets)
    print(f"{i + 1:>4}{row}")

print()
for name in presets:
    tail = spectra[name][3:]
    print(f"{name}: {labels[name]:<32} trailing spread = {tail.max() - tail.min():.3f}")

print()
print("The three source eigenvalues barely move, but the seven noise")
print("eigenvalues fan out as the deviations grow.  An estimator that")
print("expects a flat floor reads that fan-out as extra sources.")
