#!/usr/bin/env python3
"""How far apart must sources be before they are counted correctly?

Three sources at directions [0, rho, 2*rho] under strong noise mismatch,
250 snapshots.  At small separations the sources blur into fewer
eigenvalue bumps and both estimators undercount.  As rho grows the robust
estimator locks onto the right answer; the eigenvalue-only estimator keeps
stumbling over the uneven noise floor no matter how well separated the
sources are.
"""

import sys

from sourcecount import EstimatorConfig, preset_scenario, sweep_separation

trials = int(sys.argv[1]) if len(sys.argv) > 1 else 40

res = sweep_separation(
    preset_scenario("fig5"),
    rho_list_deg=[2.0, 4.0, 6.0, 8.0, 12.0],
    n_snapshots=250,
    trials=trials,
    est=EstimatorConfig(),
    seed=0,
)

print(f"fig5 preset, N=250, {trials} trials per point (seed 0)\n")
print(f"{'rho (deg)':>10}{'pcd_gmdl':>10}{'pcd_rmdl':>10}")
for pt in res.points:
    marker = "  <- robust estimator ahead" if pt.pcd_rmdl > pt.pcd_gmdl else ""
    print(f"{pt.axis_value:>10.1f}{pt.pcd_gmdl:>10.2f}{pt.pcd_rmdl:>10.2f}{marker}")

print()
print("Half-power beamwidth for this ten-element array is about 10 degrees,")
print("so the interesting action happens right where the sources start to")
print("be resolvable at all.")
