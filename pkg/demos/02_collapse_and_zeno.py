#!/usr/bin/env python3
"""Repeated collapse: interval dependence and the Zeno freeze.

Prints the closed-form mixing coefficients for growing measurement
counts inside one transfer time, checks them against the step-matrix
oracle and a Monte Carlo run, and shows the long-run 50/50 mixing for
a fixed interval.
"""

import math

from zenoflip import (
    MeasurementSchedule,
    iterate_matrices,
    propagate_schedule,
    regular_coefficients,
    sample_final_states,
    zeno_coefficients,
)

TAU = math.pi / 2  # omega = 1

print("m measurements in [0, tau]:")
print(f"{'m':>5} {'beta closed':>12} {'beta matrices':>14} {'beta sampled':>13}")
for m in (1, 2, 3, 4, 8, 16, 64):
    closed = zeno_coefficients(m).beta
    schedule = MeasurementSchedule.zeno(m, TAU)
    stepped = iterate_matrices(schedule, 1.0).p_s
    sampled = sample_final_states(schedule, 1.0, 200_000, seed=m).mean()
    print(f"{m:>5} {closed:>12.6f} {stepped:>14.6f} {sampled:>13.6f}")

print("\nbeta(1000 measurements in [0, tau]) =", f"{zeno_coefficients(1000).beta:.5f}")
print("frequent collapse pins the system to its initial state")

print("\nfixed interval tau/3, growing number of measurements:")
for m in (1, 10, 100, 1000):
    beta = regular_coefficients(m, TAU / 3, 1.0).beta
    print(f"  m={m:<5} beta={beta:.9f}")
print("with the total time free, both populations mix to 1/2")

uneven = MeasurementSchedule((0.2, 1.2))
even = MeasurementSchedule((0.6, 1.2))
print("\nsame final time, different intervals:")
print(f"  measure at 0.2 then 1.2 -> beta={propagate_schedule(uneven, 1.0).beta:.4f}")
print(f"  measure at 0.6 then 1.2 -> beta={propagate_schedule(even, 1.0).beta:.4f}")
print("the transition matrix depends on the interval, not just the endpoint")
