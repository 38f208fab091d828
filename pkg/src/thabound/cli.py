"""Command-line front end.

Subcommands:
  sweep         rate-versus-distance CSV plus a gnuplot script
  threshold     leakage thresholds and reachable distances, as JSON
  budget        isolation budget planning from a damage-threshold flux
  reflectivity  worst-case reflectivity bound from an OTDR peak list
  lidt          damage-threshold flux conversions and rescalings
  convexity     randomized midpoint-convexity check of the rate formulas

Exit codes: 0 success, 1 usage or parse error, 2 infeasible or insecure
result.  All output is deterministic for a fixed config: floats are written
with repr (shortest round-trip form) in CSV cells and with fixed-width
formats in text reports.
"""

import argparse
import dataclasses
import json
import os
import random
import sys

from thabound import attacks as attacks_mod
from thabound import budget as budget_mod
from thabound.attacks import AttackModel, no_attack
from thabound.channel import (
    ChannelParams,
    DECOY,
    SINGLE_PHOTON,
    SourceModel,
    decoy_state,
    single_photon,
    source_from_label,
)
from thabound.characterize import (
    TraceParseError,
    parse_trace,
    reflectivity_bound,
)
from thabound.keyrate import (
    NoPositiveRateError,
    max_distance,
    mu_out_threshold,
    rate_at,
    sweep_distance,
    verify_convexity,
)

SWEEP_CSV_HEADER = "length_km,mu_out,attack,source,rate"

# Channel used by all figure presets: 0.2 dB/km fiber, 12.5% detection
# efficiency, 1% optical error, 1e-5 dark-count probability, error
# correction at 1.2 times the Shannon limit.
PRESET_CHANNEL = ChannelParams(alpha_db_per_km=0.2, eta_det=0.125,
                               e_opt=0.01, p_dark=1e-5, f_ec=1.2)

PRESET_SWEEP = (0.0, 200.0, 1.0)


class UsageError(Exception):
    """Bad command line; mapped to exit code 1."""


@dataclasses.dataclass(frozen=True)
class RunConfig:
    """Everything a sweep or threshold run needs, JSON-serializable."""

    channel: ChannelParams
    source: SourceModel
    attacks: tuple[AttackModel, ...]
    sweep: tuple[float, float, float]
    output_path: str

    def to_dict(self) -> dict:
        source = {"kind": self.source.kind}
        if self.source.kind == DECOY:
            source["s"] = self.source.s
        return {
            "channel": {
                "alpha_db_per_km": self.channel.alpha_db_per_km,
                "eta_det": self.channel.eta_det,
                "e_opt": self.channel.e_opt,
                "p_dark": self.channel.p_dark,
                "f_ec": self.channel.f_ec,
            },
            "source": source,
            "attacks": [
                {"kind": a.kind, "mu_out": a.mu_out} for a in self.attacks
            ],
            "sweep": {
                "l_min_km": self.sweep[0],
                "l_max_km": self.sweep[1],
                "step_km": self.sweep[2],
            },
            "output_path": self.output_path,
        }


def config_from_dict(data: dict) -> RunConfig:
    try:
        channel = ChannelParams(**data["channel"])
        source_data = data["source"]
        if source_data["kind"] == SINGLE_PHOTON:
            source = single_photon()
        else:
            source = decoy_state(float(source_data["s"]))
        attack_list = tuple(
            AttackModel(entry["kind"], float(entry.get("mu_out", 0.0)))
            for entry in data["attacks"])
        sweep_data = data["sweep"]
        sweep = (float(sweep_data["l_min_km"]), float(sweep_data["l_max_km"]),
                 float(sweep_data["step_km"]))
        return RunConfig(channel, source, attack_list, sweep,
                         str(data["output_path"]))
    except (KeyError, TypeError) as exc:
        raise ValueError(f"bad config: {exc}") from None


def config_to_json(config: RunConfig) -> str:
    return json.dumps(config.to_dict(), indent=2) + "\n"


def config_from_json(text: str) -> RunConfig:
    return config_from_dict(json.loads(text))


def _preset_config(name: str) -> RunConfig:
    general_mu = (1e-8, 1e-6, 1e-4, 1e-2)
    passive_mu = (1e-2, 1e-1, 3e-1)
    usd_mu = (1e-3, 1e-2, 3e-2)
    table = {
        "fig3": (single_photon(), attacks_mod.GENERAL, general_mu),
        "fig4": (decoy_state(0.5), attacks_mod.GENERAL, general_mu),
        "fig9": (single_photon(), attacks_mod.PASSIVE, passive_mu),
        "fig10": (decoy_state(0.5), attacks_mod.PASSIVE, passive_mu),
        "fig11": (single_photon(), attacks_mod.USD, usd_mu),
        "fig12": (decoy_state(0.5), attacks_mod.USD, usd_mu),
    }
    if name not in table:
        raise UsageError(f"unknown preset {name!r}")
    source, kind, mu_values = table[name]
    attack_list = (no_attack(),) + tuple(AttackModel(kind, mu) for mu in mu_values)
    return RunConfig(PRESET_CHANNEL, source, attack_list, PRESET_SWEEP,
                     f"{name}.csv")


PRESET_NAMES = ("fig3", "fig4", "fig9", "fig10", "fig11", "fig12")


def _parse_attack_spec(spec: str) -> AttackModel:
    """Parse an --attack value: 'none', or 'kind:mu' like 'general:1e-6'."""
    kind, _, mu_text = spec.partition(":")
    if kind not in attacks_mod.ATTACK_KINDS:
        raise argparse.ArgumentTypeError(
            f"unknown attack kind {kind!r}; choose from "
            f"{', '.join(attacks_mod.ATTACK_KINDS)}")
    try:
        return AttackModel(kind, float(mu_text) if mu_text else 0.0)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--preset", choices=PRESET_NAMES,
                       help="bundled figure configuration")
    group.add_argument("--config", metavar="PATH",
                       help="JSON config file")
    parser.add_argument("--source", choices=(SINGLE_PHOTON, DECOY),
                        help="source model override")
    parser.add_argument("--decoy-s", type=float, metavar="S",
                        help="signal intensity for the decoy source")
    parser.add_argument("--attack", action="append", type=_parse_attack_spec,
                        metavar="KIND[:MU]", dest="attack_list",
                        help="attack entry, e.g. general:1e-6; repeatable")
    parser.add_argument("--l-min", type=float, metavar="KM")
    parser.add_argument("--l-max", type=float, metavar="KM")
    parser.add_argument("--step", type=float, metavar="KM")
    parser.add_argument("--output", metavar="PATH",
                        help="output path override")
    parser.add_argument("--alpha-db-per-km", type=float, metavar="DB")
    parser.add_argument("--eta-det", type=float, metavar="P")
    parser.add_argument("--e-opt", type=float, metavar="P")
    parser.add_argument("--p-dark", type=float, metavar="P")
    parser.add_argument("--f-ec", type=float, metavar="F")


def _resolve_config(args: argparse.Namespace) -> RunConfig:
    if args.preset:
        config = _preset_config(args.preset)
    elif args.config:
        with open(args.config, encoding="utf-8") as handle:
            config = config_from_json(handle.read())
    else:
        config = RunConfig(PRESET_CHANNEL, single_photon(), (),
                           PRESET_SWEEP, "sweep.csv")

    channel_fields = {}
    for field in ("alpha_db_per_km", "eta_det", "e_opt", "p_dark", "f_ec"):
        value = getattr(args, field)
        if value is not None:
            channel_fields[field] = value
    if channel_fields:
        config = dataclasses.replace(
            config, channel=dataclasses.replace(config.channel, **channel_fields))

    if args.source == SINGLE_PHOTON:
        config = dataclasses.replace(config, source=single_photon())
    elif args.source == DECOY:
        if args.decoy_s is None and config.source.kind != DECOY:
            raise UsageError("--source decoy needs --decoy-s")
        s = args.decoy_s if args.decoy_s is not None else config.source.s
        config = dataclasses.replace(config, source=decoy_state(s))
    elif args.decoy_s is not None:
        if config.source.kind != DECOY:
            raise UsageError("--decoy-s only applies to a decoy source")
        config = dataclasses.replace(config, source=decoy_state(args.decoy_s))

    if args.attack_list:
        config = dataclasses.replace(config, attacks=tuple(args.attack_list))

    sweep = list(config.sweep)
    for index, name in enumerate(("l_min", "l_max", "step")):
        value = getattr(args, name)
        if value is not None:
            sweep[index] = value
    config = dataclasses.replace(config, sweep=tuple(sweep))

    if args.output:
        config = dataclasses.replace(config, output_path=args.output)
    return config


def _fmt(value: float) -> str:
    """Shortest exact decimal form of a float, for CSV cells."""
    return repr(float(value))


def _sorted_attacks(config: RunConfig) -> list[AttackModel]:
    """Attack blocks in output order; an empty list means baseline only."""
    entries = list(config.attacks) or [no_attack()]
    return sorted(entries, key=lambda a: (a.kind, a.mu_out))


def _gnuplot_script(csv_path: str, blocks: list[AttackModel],
                    source: SourceModel) -> str:
    base = os.path.basename(csv_path)
    stem = os.path.splitext(base)[0]
    lines = [
        f"# key rate vs distance, data in {base}",
        'set datafile separator ","',
        "set terminal pngcairo size 900,600",
        f'set output "{stem}.png"',
        'set xlabel "fiber length (km)"',
        'set ylabel "secret key rate (bits per pulse)"',
        "set logscale y",
        "set yrange [1e-12:1]",
        "set key top right",
        f'set title "{stem} ({source.label()})"',
        "plot \\",
    ]
    clauses = []
    for attack in blocks:
        mu_cell = _fmt(attack.mu_out)
        if attack.kind == attacks_mod.NO_ATTACK:
            title = "no attack"
        else:
            title = f"{attack.kind} mu_out={mu_cell}"
        clauses.append(
            f'  "{base}" skip 1 using 1:((strcol(3) eq "{attack.kind}" '
            f'&& strcol(2) eq "{mu_cell}" && $5 > 0) ? $5 : NaN) '
            f'with lines title "{title}"')
    lines.append(", \\\n".join(clauses))
    return "\n".join(lines) + "\n"


def cmd_sweep(args: argparse.Namespace) -> int:
    config = _resolve_config(args)
    blocks = _sorted_attacks(config)
    l_min, l_max, step = config.sweep

    rows = [SWEEP_CSV_HEADER]
    for attack in blocks:
        series = sweep_distance(config.channel, config.source, attack,
                                l_min, l_max, step)
        for point in series.points:
            rate_cell = _fmt(point.rate) if point.secure else "0"
            rows.append(",".join((
                _fmt(point.length_km), _fmt(attack.mu_out), attack.kind,
                config.source.label(), rate_cell)))

    with open(config.output_path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write("\n".join(rows) + "\n")
    script_path = os.path.splitext(config.output_path)[0] + ".gp"
    with open(script_path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(_gnuplot_script(config.output_path, blocks, config.source))

    print(f"wrote {config.output_path} ({len(rows) - 1} rows)")
    print(f"wrote {script_path}")
    return 0


@dataclasses.dataclass(frozen=True)
class SweepRow:
    length_km: float
    mu_out: float
    attack: str
    source: str
    rate: float


def read_sweep_csv(path: str) -> list[SweepRow]:
    """Re-parse a CSV produced by cmd_sweep."""
    with open(path, encoding="utf-8") as handle:
        lines = handle.read().splitlines()
    if not lines or lines[0] != SWEEP_CSV_HEADER:
        raise ValueError(f"{path}: not a sweep CSV (bad header)")
    rows = []
    for line in lines[1:]:
        fields = line.split(",")
        if len(fields) != 5:
            raise ValueError(f"{path}: bad row {line!r}")
        rows.append(SweepRow(float(fields[0]), float(fields[1]), fields[2],
                             fields[3], float(fields[4])))
    return rows


def cmd_threshold(args: argparse.Namespace) -> int:
    config = _resolve_config(args)
    entries = _sorted_attacks(config)
    kinds = sorted({a.kind for a in entries})

    reports = []
    for kind in kinds:
        if kind == attacks_mod.NO_ATTACK:
            threshold = None
        else:
            threshold = mu_out_threshold(config.channel, config.source, kind)
        distances = {}
        for attack in entries:
            if attack.kind != kind:
                continue
            try:
                km = max_distance(config.channel, config.source, attack)
            except NoPositiveRateError:
                km = None
            distances[_fmt(attack.mu_out)] = km
        reports.append({
            "attack_kind": kind,
            "source": config.source.label(),
            "mu_out_threshold": threshold,
            "max_distance_at": distances,
        })

    text = json.dumps({"reports": reports}, indent=2) + "\n"
    sys.stdout.write(text)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
    return 0


def _catalog_from_config(path: str | None) -> budget_mod.ComponentCatalog:
    if path is None:
        return budget_mod.ComponentCatalog()
    with open(path, encoding="utf-8") as handle:
        data = json.loads(handle.read())
    entry = data.get("catalog", {})
    kwargs = {}
    for key in ("isolator_db_values", "reflectivity_db_values",
                "filter_db_values"):
        if key in entry:
            kwargs[key] = tuple(float(v) for v in entry[key])
    return budget_mod.ComponentCatalog(**kwargs)


def cmd_budget(args: argparse.Namespace) -> int:
    gamma = budget_mod.required_isolation(args.mu_out, args.photon_flux,
                                          args.clock_hz)
    print(f"required isolation: {gamma:.6g} dB")
    catalog = _catalog_from_config(args.config)
    max_att = -abs(args.max_attenuator_db)
    budgets = budget_mod.plan_budget(gamma, catalog=catalog,
                                     max_attenuator_db=max_att,
                                     allow_attenuator=not args.no_attenuator)

    if not budgets:
        print("no feasible component combination reaches the target")
        return 2

    print(f"feasible combinations: {len(budgets)}")
    print("  isolators      attenuator_db  reflectivity_db  filter_db  total_db")
    for entry in budgets:
        total = budget_mod.isolation_total(entry)
        isolators = (f"{entry.isolator_count} x {entry.isolator_db:g}"
                     if entry.isolator_count else "0")
        print(f"  {isolators:<13}  {entry.attenuator_db:>13g}  "
              f"{entry.reflectivity_db:>15g}  {entry.filter_db:>9g}  "
              f"{total:>8g}")

    if args.output:
        payload = {
            "required_isolation_db": gamma,
            "budgets": [
                dataclasses.asdict(entry)
                | {"total_db": budget_mod.isolation_total(entry)}
                for entry in budgets
            ],
        }
        with open(args.output, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(json.dumps(payload, indent=2) + "\n")
    return 0


def cmd_reflectivity(args: argparse.Namespace) -> int:
    with open(args.trace, encoding="utf-8") as handle:
        peaks = parse_trace(handle.read())
    d_min, d_max = args.region
    print("  distance_m  reflectivity_db  polarization  in_region")
    for peak in peaks:
        in_region = "yes" if d_min <= peak.distance_m <= d_max else "no"
        print(f"  {peak.distance_m:>10g}  {peak.reflectivity_db:>15g}  "
              f"{peak.polarization:<12}  {in_region}")
    bound = reflectivity_bound(peaks, (d_min, d_max))
    if bound is None:
        print(f"no reflectors in region {d_min:g} m to {d_max:g} m")
    else:
        print(f"reflectivity bound ({d_min:g} m to {d_max:g} m): {bound:.2f} dB")
    return 0


def _lidt_base_spec(args: argparse.Namespace) -> budget_mod.LidtSpec:
    if args.preset is not None:
        if args.preset == "conservative":
            return budget_mod.conservative_preset(args.bend_edge_compensation)
        return budget_mod.fiber_fuse_preset(args.bend_edge_compensation)
    if args.power is None:
        raise UsageError("lidt needs --preset or --power")
    if args.wavelength_m is None:
        raise UsageError("--power needs --lambda (wavelength in meters)")
    flux = budget_mod.photon_flux_from_power(args.power, args.wavelength_m)
    # A raw power rating is treated as continuous exposure.
    return budget_mod.LidtSpec(photon_flux=flux, pulse_width_ref_s=1.0,
                               wavelength_ref_m=args.wavelength_m)


def cmd_lidt(args: argparse.Namespace) -> int:
    spec = _lidt_base_spec(args)
    if args.preset is not None:
        print(f"preset: {args.preset}")
    else:
        print(f"input power: {args.power:.4e} W at {args.wavelength_m:.4e} m")
    print(f"photon flux: {spec.photon_flux:.4e} photons/s")
    print(f"reference pulse width: {spec.pulse_width_ref_s:.4e} s")
    print(f"reference wavelength: {spec.wavelength_ref_m:.4e} m")
    if args.pulse_width is not None:
        spec = budget_mod.lidt_scale_pulse_width(spec, args.pulse_width)
        print(f"flux at pulse width {args.pulse_width:.4e} s: "
              f"{spec.photon_flux:.4e} photons/s")
    if args.wavelength is not None:
        spec = budget_mod.lidt_scale_wavelength(spec, args.wavelength)
        print(f"flux at wavelength {args.wavelength:.4e} m: "
              f"{spec.photon_flux:.4e} photons/s")
    return 0


CONVEXITY_LENGTHS_KM = (0.0, 50.0, 100.0)


def cmd_convexity(args: argparse.Namespace) -> int:
    rng = random.Random(args.seed)
    sources = (single_photon(), decoy_state(0.5))
    kinds = (attacks_mod.GENERAL, attacks_mod.PASSIVE, attacks_mod.USD)
    total = 0
    violations = 0
    for kind in kinds:
        for source in sources:
            bad = 0
            for index in range(args.pairs):
                mu1 = rng.uniform(0.0, args.mu_max)
                mu2 = rng.uniform(0.0, args.mu_max)
                length = CONVEXITY_LENGTHS_KM[index % len(CONVEXITY_LENGTHS_KM)]
                if not verify_convexity(PRESET_CHANNEL, source, kind,
                                        length, mu1, mu2):
                    bad += 1
            print(f"{kind}/{source.label()}: {args.pairs} pairs, {bad} violations")
            total += args.pairs
            violations += bad
    print(f"checked {total} pairs, {violations} violations")
    return 0 if violations == 0 else 2


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="thabound",
                     description="Trojan-horse leakage bounds for QKD "
                                 "transmitters: key rates, thresholds, and "
                                 "isolation budgets.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_sweep = sub.add_parser("sweep", help="rate vs distance CSV + plot script")
    _add_config_flags(p_sweep)
    p_sweep.set_defaults(func=cmd_sweep)

    p_thresh = sub.add_parser("threshold",
                              help="leakage thresholds and max distances")
    _add_config_flags(p_thresh)
    p_thresh.set_defaults(func=cmd_threshold)

    p_budget = sub.add_parser("budget", help="plan an isolation budget")
    p_budget.add_argument("--mu-out", type=float, required=True,
                          help="target leakage (photons per pulse)")
    p_budget.add_argument("--photon-flux", type=float, required=True,
                          help="damage-threshold flux N (photons per second)")
    p_budget.add_argument("--clock-hz", type=float, required=True,
                          help="system clock rate f_A")
    p_budget.add_argument("--config", metavar="PATH",
                          help="JSON file with a component catalog")
    p_budget.add_argument("--no-attenuator", action="store_true",
                          help="exclude attenuators (single-photon sources)")
    p_budget.add_argument("--max-attenuator-db", type=float, default=35.0,
                          help="deepest attenuator to consider (dB magnitude)")
    p_budget.add_argument("--output", metavar="PATH",
                          help="also write the budgets as JSON")
    p_budget.set_defaults(func=cmd_budget)

    p_refl = sub.add_parser("reflectivity",
                            help="reflectivity bound from an OTDR peak CSV")
    p_refl.add_argument("--trace", required=True, metavar="PATH")
    p_refl.add_argument("--region", type=float, nargs=2, required=True,
                        metavar=("MIN_M", "MAX_M"))
    p_refl.set_defaults(func=cmd_reflectivity)

    p_lidt = sub.add_parser("lidt", help="damage-threshold conversions")
    p_lidt.add_argument("--preset", choices=("conservative", "fiber-fuse"))
    p_lidt.add_argument("--power", type=float, metavar="W")
    p_lidt.add_argument("--lambda", type=float, dest="wavelength_m",
                        metavar="M", help="wavelength of the input power")
    p_lidt.add_argument("--pulse-width", type=float, metavar="S",
                        help="rescale the flux to this pulse width")
    p_lidt.add_argument("--wavelength", type=float, metavar="M",
                        help="rescale the flux to this wavelength")
    p_lidt.add_argument("--bend-edge-compensation", action="store_true",
                        help="allow the 10%% headroom of probing at the "
                             "bend-loss edge")
    p_lidt.set_defaults(func=cmd_lidt)

    p_conv = sub.add_parser("convexity",
                            help="randomized convexity check of the rates")
    p_conv.add_argument("--pairs", type=int, default=200)
    p_conv.add_argument("--seed", type=int, default=0)
    p_conv.add_argument("--mu-max", type=float, default=0.6)
    p_conv.set_defaults(func=cmd_convexity)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except TraceParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except NoPositiveRateError as exc:
        print(f"insecure: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
