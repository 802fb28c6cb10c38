#!/usr/bin/env python3
"""Resonant transfer and how good the two-level picture really is.

Integrates the full 101-level spectrum, compares the searched-state
population against sin^2(Omega t), and draws the amplitude pair on the
unit circle.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from zenoflip import (
    build_coupling,
    integrate_full,
    linear_spectrum,
    resonance_params,
    two_level_amplitudes,
    two_level_probabilities,
    validate_two_level,
)

spectrum = linear_spectrum(100)
params = resonance_params(spectrum.size)
print(f"search set N={spectrum.size}, Omega={params.omega}, tau={params.tau:.4f}")

trajectory = integrate_full(spectrum, build_coupling(spectrum), params.tau, dt=1e-3)
times = np.array([state.time for state in trajectory])
p_s = np.array([state.probability(spectrum.searched_index) for state in trajectory])
model = np.array([two_level_probabilities(t, params).p_s for t in times])

report = validate_two_level(spectrum, dt=1e-3)
print(f"P_s(tau) full spectrum : {report.p_s_final:.4f}")
print(f"sup |full - two-level| : {report.sup_deviation:.4f}")
print(f"norm drift             : {report.norm_drift:.2e}")

fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(11, 4.5))
ax1.plot(times, model, label=r"$\sin^2(\Omega t)$")
ax1.plot(times, p_s, "--", label="full spectrum")
ax1.set_xlabel("t")
ax1.set_ylabel(r"$P_s$")
ax1.legend()
ax1.set_title("Population transfer")

circle_t = np.linspace(0.0, params.tau, 200)
a = np.array([two_level_amplitudes(t, params) for t in circle_t])
ax2.plot(a[:, 0], a[:, 1])
ax2.set_xlabel(r"$a_j$")
ax2.set_ylabel(r"$a_s$")
ax2.set_aspect("equal")
ax2.set_title("Amplitudes on the unit circle")

fig.tight_layout()
fig.savefig("demo_resonance.png", dpi=150)
print("wrote demo_resonance.png")
