#!/usr/bin/env python3
"""Tabulate leakage thresholds and reach for every attack/source pairing.

Answers the planning question "how much Trojan light can this transmitter
leak before the key dies, and how far does it still reach at a given
leakage".  Output is the same JSON the `threshold` subcommand emits, so
the numbers can be diffed against CLI runs.
"""

import argparse
import json

from thabound.channel import ChannelParams, decoy_state, single_photon
from thabound.keyrate import (
    NoPositiveRateError,
    max_distance,
    mu_out_threshold,
)
from thabound.attacks import AttackModel


def run(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--mu-out", type=float, nargs="*",
                        default=[0.0, 1e-6, 1e-2],
                        help="leakage values to evaluate reach at")
    parser.add_argument("--decoy-s", type=float, default=0.5,
                        help="signal intensity of the decoy source")
    args = parser.parse_args(argv)

    channel = ChannelParams(0.2, 0.125, 0.01, 1e-5, 1.2)
    reports = []
    for source in (single_photon(), decoy_state(args.decoy_s)):
        for kind in ("general", "passive", "usd"):
            threshold = mu_out_threshold(channel, source, kind)
            reach = {}
            for mu in args.mu_out:
                try:
                    reach[repr(mu)] = max_distance(
                        channel, source, AttackModel(kind, mu))
                except NoPositiveRateError:
                    reach[repr(mu)] = None
            reports.append({
                "attack_kind": kind,
                "source": source.label(),
                "mu_out_threshold": threshold,
                "max_distance_at": reach,
            })
    print(json.dumps({"reports": reports}, indent=2))
    return 0


if __name__ == "__main__":
    raise SystemExit(run())
