"""Command-line front end.

Commands: solve, rates, certify, validate, gen.  Exit codes: 0 success or
pass, 1 validation failure (including refusal of non-rank inputs), 2
scenario parse error, 3 enumeration budget exceeded, 4 certification
failure.  Output is deterministic: identical inputs produce byte-identical
output regardless of --jobs.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .axioms import AxiomReport, validate_rank_axioms
from .channels import DEFAULT_AXIOM_TOL, Channel, RankFunctionSet
from .errors import (
    CapacityError,
    NonRankInputError,
    ScenarioParseError,
    ValidationError,
)
from .generate import GENERATOR_KINDS, generate_channel
from .greedy import SolveReport, greedy_profile
from .oracle import CertificationReport, EnumerationBudget, certify
from .ordering import DecodingProfile, decode_sequence, render_order
from .rates import min_rate, rate_vector
from .scenario import dump_scenario, load_scenario, save_scenario

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_PARSE = 2
EXIT_BUDGET = 3
EXIT_CERTIFICATION = 4


@dataclass(frozen=True)
class RunConfig:
    command: str
    scenario: str | None = None
    fmt: str = "human"
    seed: int | None = None
    tol: float = DEFAULT_AXIOM_TOL
    force: bool = False
    jobs: int = 1
    profile: str | None = None
    kind: str = "gaussian"
    num_users: int = 3
    out: str | None = None
    power: float | None = None
    noise: float | None = None


def _fmt_set(users) -> str:
    return "{" + ", ".join(str(u) for u in sorted(users)) + "}"


def _profile_sequences(profile: DecodingProfile) -> list[list[int]]:
    return [list(decode_sequence(order)) for order in profile.orders]


def _emit(doc: dict) -> None:
    print(json.dumps(doc, indent=2))


def _parse_profile_arg(text: str, num_users: int) -> DecodingProfile:
    """Profile argument: inline ``"2 1; 2"`` or ``@file`` with a JSON doc."""
    if text.startswith("@"):
        path = Path(text[1:])
        try:
            doc = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ValidationError(f"cannot read profile from {path}: {exc}") from exc
        sequences = doc.get("profile") if isinstance(doc, dict) else doc
        if not isinstance(sequences, list):
            raise ValidationError(
                f"profile document {path} must hold a 'profile' list of decode sequences"
            )
    else:
        sequences = []
        for group in text.split(";"):
            try:
                sequences.append([int(tok) for tok in group.replace(",", " ").split()])
            except ValueError as exc:
                raise ValidationError(f"cannot parse profile group {group!r}") from exc
    if len(sequences) != num_users:
        raise ValidationError(
            f"profile lists {len(sequences)} receivers, scenario has {num_users}"
        )
    return DecodingProfile.from_decode_sequences(sequences)


def _print_solve_human(channel_kind: str, report: SolveReport) -> None:
    print(f"backend: {channel_kind}")
    print(f"users: {len(report.rates)}")
    print("decoding orders:")
    for order in report.profile.orders:
        print(f"  {render_order(order)}")
    print("decoded users per receiver:")
    for j, users in enumerate(report.decoded_sets, start=1):
        print(f"  receiver {j} decodes {_fmt_set(users)}")
    print("decoding receivers per user:")
    for k, receivers in enumerate(report.decoder_sets, start=1):
        print(f"  user {k} decoded at {_fmt_set(receivers)}")
    print("rates (bits/use):")
    for k, rate in enumerate(report.rates, start=1):
        print(f"  user {k}: {rate!r}")
    print(f"min rate: {report.min_rate!r}")
    print(f"bottleneck users: {_fmt_set(report.bottleneck_users)}")


def cmd_solve(cfg: RunConfig) -> int:
    channel = load_scenario(cfg.scenario)
    ranks = RankFunctionSet.for_channel(channel)
    report = greedy_profile(ranks, tol=cfg.tol, force=cfg.force)
    if cfg.fmt == "structured":
        _emit(
            {
                "command": "solve",
                "kind": ranks.kind,
                "K": ranks.num_users,
                "profile": _profile_sequences(report.profile),
                "decoded_sets": [sorted(s) for s in report.decoded_sets],
                "decoder_sets": [sorted(s) for s in report.decoder_sets],
                "rates": list(report.rates),
                "min_rate": report.min_rate,
                "bottleneck_users": sorted(report.bottleneck_users),
            }
        )
    else:
        _print_solve_human(ranks.kind, report)
    return EXIT_OK


def cmd_rates(cfg: RunConfig) -> int:
    channel = load_scenario(cfg.scenario)
    ranks = RankFunctionSet.for_channel(channel)
    profile = _parse_profile_arg(cfg.profile, ranks.num_users)
    rates = rate_vector(ranks, profile, clamp_tol=cfg.tol)
    value, bottleneck = min_rate(rates)
    if cfg.fmt == "structured":
        _emit(
            {
                "command": "rates",
                "kind": ranks.kind,
                "K": ranks.num_users,
                "profile": _profile_sequences(profile),
                "rates": list(rates),
                "min_rate": value,
                "bottleneck_users": sorted(bottleneck),
            }
        )
    else:
        print(f"backend: {ranks.kind}")
        print("profile:")
        for order in profile.orders:
            print(f"  {render_order(order)}")
        print("rates (bits/use):")
        for k, rate in enumerate(rates, start=1):
            print(f"  user {k}: {rate!r}")
        print(f"min rate: {value!r}")
        print(f"bottleneck users: {_fmt_set(bottleneck)}")
    return EXIT_OK


def cmd_certify(cfg: RunConfig) -> int:
    channel = load_scenario(cfg.scenario)
    ranks = RankFunctionSet.for_channel(channel)
    report: CertificationReport = certify(
        ranks, EnumerationBudget(), tol=cfg.tol, jobs=cfg.jobs, force=cfg.force
    )
    if cfg.fmt == "structured":
        _emit(
            {
                "command": "certify",
                "kind": ranks.kind,
                "K": ranks.num_users,
                "greedy_min_rate": report.greedy_min_rate,
                "oracle_min_rate": report.oracle_min_rate,
                "gap": report.gap,
                "num_configs": report.num_configs,
                "passed": report.passed,
                "greedy_profile": _profile_sequences(report.greedy.profile),
                "oracle_profile": _profile_sequences(report.oracle_best_profile),
                "counterexample": (
                    None
                    if report.counterexample is None
                    else _profile_sequences(report.counterexample)
                ),
            }
        )
    else:
        print(f"backend: {ranks.kind}")
        print(f"users: {ranks.num_users}")
        print(f"profiles enumerated: {report.num_configs}")
        print(f"greedy min rate: {report.greedy_min_rate!r}")
        print(f"oracle min rate: {report.oracle_min_rate!r}")
        print(f"gap: {report.gap!r}")
        if report.counterexample is not None:
            print("counterexample profile:")
            for order in report.counterexample.orders:
                print(f"  {render_order(order)}")
        print(f"certification: {'PASS' if report.passed else 'FAIL'}")
    return EXIT_OK if report.passed else EXIT_CERTIFICATION


def cmd_validate(cfg: RunConfig) -> int:
    channel = load_scenario(cfg.scenario)
    ranks = RankFunctionSet.for_channel(channel)
    report: AxiomReport = validate_rank_axioms(ranks, cfg.tol)
    if cfg.fmt == "structured":
        _emit(
            {
                "command": "validate",
                "kind": ranks.kind,
                "K": ranks.num_users,
                "tol": report.tol,
                "passed": report.passed,
                "receivers": [
                    {
                        "receiver": r.receiver,
                        "normalization_violation": r.normalization_violation,
                        "monotonicity_violation": r.monotonicity_violation,
                        "submodularity_violation": r.submodularity_violation,
                        "passed": r.passed(report.tol),
                    }
                    for r in report.receivers
                ],
            }
        )
    else:
        print(f"backend: {ranks.kind}")
        print(f"tolerance: {report.tol!r}")
        for r in report.receivers:
            verdict = "pass" if r.passed(report.tol) else "FAIL"
            print(
                f"  receiver {r.receiver}: normalization {r.normalization_violation!r}, "
                f"monotonicity {r.monotonicity_violation!r}, "
                f"submodularity {r.submodularity_violation!r} -> {verdict}"
            )
        print(f"axioms: {'PASS' if report.passed else 'FAIL'}")
    return EXIT_OK if report.passed else EXIT_VALIDATION


def cmd_gen(cfg: RunConfig) -> int:
    channel: Channel = generate_channel(
        cfg.kind, cfg.num_users, cfg.seed, power=cfg.power, noise=cfg.noise
    )
    if cfg.out is None:
        sys.stdout.write(dump_scenario(channel))
    else:
        save_scenario(channel, cfg.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fairsic",
        description=(
            "Max-min fair successive-decoding orders for K-user interference "
            "channels"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, *, scenario: bool = True) -> None:
        if scenario:
            p.add_argument("--scenario", required=True, help="scenario JSON path")
        p.add_argument(
            "--format",
            choices=("human", "structured"),
            default="human",
            dest="fmt",
            help="output format (structured = JSON)",
        )
        p.add_argument(
            "--tol",
            type=float,
            default=DEFAULT_AXIOM_TOL,
            help="numerical tolerance for this command",
        )

    p = sub.add_parser("solve", help="compute the max-min optimal decoding orders")
    add_common(p)
    p.add_argument(
        "--force",
        action="store_true",
        help="solve even if a tabulated backend fails the rank axioms",
    )

    p = sub.add_parser("rates", help="evaluate the rates of a supplied profile")
    add_common(p)
    p.add_argument(
        "--profile",
        required=True,
        help=(
            "per-receiver decode sequences ending with the receiver's own "
            "user, e.g. '2 1; 2', or @file with a JSON 'profile' field"
        ),
    )

    p = sub.add_parser("certify", help="check the greedy result against brute force")
    add_common(p)
    p.add_argument("--force", action="store_true", help="skip the rank-axiom gate")
    p.add_argument("--jobs", type=int, default=1, help="parallel scan workers")

    p = sub.add_parser("validate", help="check the rank axioms by enumeration")
    add_common(p)

    p = sub.add_parser("gen", help="generate a random scenario from a seed")
    p.add_argument("--kind", choices=GENERATOR_KINDS, default="gaussian")
    p.add_argument("--k", type=int, default=3, dest="num_users", help="user count")
    p.add_argument("--seed", type=int, required=True, help="generator seed")
    p.add_argument("--out", help="output path (default: stdout)")
    p.add_argument("--power", type=float, help="pin all transmit powers (gaussian)")
    p.add_argument("--noise", type=float, help="pin all noise variances (gaussian)")
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    fields = {k: v for k, v in vars(args).items() if v is not None}
    return RunConfig(**fields)


_COMMANDS = {
    "solve": cmd_solve,
    "rates": cmd_rates,
    "certify": cmd_certify,
    "validate": cmd_validate,
    "gen": cmd_gen,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = _config_from_args(args)
    try:
        return _COMMANDS[cfg.command](cfg)
    except ScenarioParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (NonRankInputError, ValidationError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
