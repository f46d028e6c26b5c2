#!/usr/bin/env python3
"""Watch the alternating fit descend.

The model fit alternates two closed-form half-steps: project onto the best
rank-q-plus-floor spectrum, then absorb the leftover diagonal into the
per-sensor deviations.  Each half-step is exact for its own parameter
group, so the squared error can only go down.  This prints the trace for a
sampled strong-mismatch covariance at the true source count.
"""

from sourcecount import (
    RngStream,
    generate_snapshots,
    preset_scenario,
    rmdl_fit,
    sample_covariance,
)

cfg = preset_scenario("fig4")
R = sample_covariance(generate_snapshots(cfg, 2000, RngStream(seed=1)))
fit = rmdl_fit(R, cfg.q)

print(f"p = {cfg.p}, q = {fit.q}, N = 2000")
print(f"{'iter':>6}  {'squared error':>16}  {'sum(w)':>12}")
shown = list(range(0, min(10, fit.iterations)))
shown += list(range(10, fit.iterations, max(1, fit.iterations // 8)))
shown = sorted(set(shown) | {fit.iterations - 1})
for i in shown:
    print(f"{i + 1:>6}  {fit.error_trace[i]:>16.8e}  {fit.w_sum_trace[i]:>12.2e}")

print()
print(f"converged = {fit.converged} after {fit.iterations} iterations")
print(f"fitted sigma2 = {fit.sigma2:.4f}")
print(f"fitted deviations w = {[round(float(v), 3) for v in fit.w]}")
print()
print("The error never rises, and w sums to zero at every iteration --")
print("the fitted deviations stay inside the trace-free family.")
