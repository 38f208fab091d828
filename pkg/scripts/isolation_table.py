#!/usr/bin/env python3
"""Reproduce the component-budget table for a range of clock rates.

For a fixed damage-threshold photon flux and leakage target, the required
round-trip isolation grows 10 dB for every decade the clock slows down
(same number of photons spread over fewer pulses).  For each clock rate
this prints the requirement and the cheapest feasible component stack,
once with a lossy attenuator allowed and once without (the no-attenuator
column is what a single-photon source or a receiver has to live with).
"""

import argparse

from thabound.budget import plan_budget, required_isolation


def describe(budget):
    parts = []
    if budget.isolator_count:
        parts.append(f"{budget.isolator_count} x {budget.isolator_db:g} dB iso")
    if budget.attenuator_db:
        parts.append(f"{budget.attenuator_db:g} dB att")
    if budget.reflectivity_db:
        parts.append(f"{budget.reflectivity_db:g} dB refl")
    if budget.filter_db:
        parts.append(f"{budget.filter_db:g} dB filt")
    return ", ".join(parts) if parts else "nothing needed"


def run(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--mu-out", type=float, default=1e-6,
                        help="tolerable leakage in photons per pulse")
    parser.add_argument("--photon-flux", type=float, default=1e20,
                        help="damage-limited injection rate, photons/s")
    parser.add_argument("--clock-hz", type=float, nargs="*",
                        default=[1e9, 1e6, 1e3], help="clock rates to tabulate")
    args = parser.parse_args(argv)

    print(f"leakage target {args.mu_out:g} photons/pulse, "
          f"flux {args.photon_flux:g} photons/s")
    print(f"{'clock':>10}  {'required':>9}  {'with attenuator':<44}"
          f"{'without attenuator'}")
    for clock in args.clock_hz:
        gamma = required_isolation(args.mu_out, args.photon_flux, clock)
        with_att = plan_budget(gamma)
        without = plan_budget(gamma, allow_attenuator=False)
        left = describe(with_att[0]) if with_att else "infeasible"
        right = describe(without[0]) if without else "infeasible"
        print(f"{clock:>10g}  {gamma:>6g} dB  {left:<44}{right}")
    return 0


if __name__ == "__main__":
    raise SystemExit(run())
