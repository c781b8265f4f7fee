"""
Decoherence over packet width and noise scale
=============================================
"""

import os

import matplotlib
import numpy as np

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from mzfringe import (MomentumSpectrum, ShiftDistribution,
                      epsilon_gaussian_packet, generalized_visibility)

OUT_DIR = os.path.join(os.path.dirname(__file__), "output")
os.makedirs(OUT_DIR, exist_ok=True)

# Gaussian jitter on a Gaussian packet has a closed form, so every cell
# of the surface can be cross-checked against the numerical pipeline.
k0 = 1.0
deltas = np.linspace(0.5, 12.0, 24)
sigmas = np.linspace(0.0, 3.0, 25)

surface = np.empty((deltas.size, sigmas.size))
worst = 0.0
for i, delta in enumerate(deltas):
    spectrum = MomentumSpectrum.gaussian_packet(k0, float(delta))
    for j, sigma in enumerate(sigmas):
        closed = epsilon_gaussian_packet(k0, float(delta), float(sigma))
        surface[i, j] = closed
        # spot-check a sparse subset numerically (full grid is slow)
        if i % 8 == 0 and j % 8 == 0:
            dist = ShiftDistribution.gaussian(float(sigma))
            numeric = generalized_visibility(spectrum, dist).epsilon
            worst = max(worst, abs(numeric - closed))

print(f"spot-checked cells: max |numeric - closed| = {worst:.2e}")

# at fixed jitter a spatially tight packet (broad spectrum) keeps more
# visibility than a wide one, which behaves like a plane wave
print(f"epsilon at k0 sigma = {k0 * sigmas[-1]:g}:",
      ", ".join(f"k0*delta={k0 * d:g}: {surface[i, -1]:.3f}"
                for i, d in enumerate(deltas) if i % 8 == 0))

fig, ax = plt.subplots(figsize=(7.0, 5.0))
mesh = ax.pcolormesh(k0 * sigmas, k0 * deltas, surface, shading="auto",
                     vmin=0.0, vmax=1.0)
fig.colorbar(mesh, ax=ax, label="decoherence parameter")
ax.set_xlabel("k0 sigma")
ax.set_ylabel("k0 delta")
ax.set_title("decoherence of a jittered Gaussian packet")
fig.tight_layout()
path = os.path.join(OUT_DIR, "packet_width_surface.png")
fig.savefig(path, dpi=150)
plt.close(fig)
print(f"wrote {path}")
