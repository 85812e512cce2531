import argparse
import json
import sys
import time
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Optional

import yaml
from jinja2 import TemplateError
from pydantic import ValidationError

from stsig.base.code import (
    DecodeStatus,
    ObservedTones,
    StsCode,
    SymbolVector,
    check_disambiguation,
    check_mds,
    check_offset_recovery,
    decode_multi,
    decode_single,
    min_distance_bruteforce,
)
from stsig.base.configuration import Configuration
from stsig.base.data_sources import JsonFile
from stsig.base.gf import FieldSpec
from stsig.base.utils import build_logger

from stsig.sim import __version__
from stsig.sim.data_sources import TableFile
from stsig.sim.experiments import CATALOG_PATH, DEFAULTS_PATH, parse_suite
from stsig.sim.manifest import RunManifest

EXIT_OK = 0
EXIT_ERASURE = 1
EXIT_USAGE = 2

EXPERIMENTS = ("sts-link", "data-impact", "network")

logger = build_logger("stsig.cli")


def _code(args: argparse.Namespace) -> StsCode:
    return StsCode(FieldSpec(args.field), args.n, args.k, beta=args.beta)


def _emit(report: Dict[str, Any], out: Optional[Path]) -> None:
    if out is None:
        print(json.dumps(report, indent=2))
    else:
        JsonFile(out).write(report)


def cmd_encode(args: argparse.Namespace) -> int:
    """Encode a message index, or raw information symbols, into tone indices."""
    code = _code(args)
    if args.symbols is not None:
        u = SymbolVector(tuple(code.field.element(s) for s in args.symbols))
        message = code.symbols_to_message(u)
    else:
        message = args.message
        u = code.message_to_symbols(message)
    codeword = code.encode(u)
    report = {
        "field": code.p,
        "n": code.n,
        "k": code.k,
        "beta": code.beta.value,
        "message": message,
        "symbols": list(u.values),
        "codeword": list(codeword.indices),
    }
    _emit(report, args.out)
    return EXIT_OK


def cmd_decode(args: argparse.Namespace) -> int:
    """Decode an observation file; exits with 1 on an erasure."""
    code = _code(args)
    obs = ObservedTones.from_json(JsonFile(args.observations).read())
    if args.multi or obs.multi:
        if not obs.multi:
            obs = ObservedTones.from_sets([list(s) for s in obs.symbols])
        result = decode_multi(obs, code, theta=args.theta, offset_window=args.offset_window)
    else:
        result = decode_single(obs, code, offset_window=args.offset_window)
    report = {"code": repr(code), "observations": obs.to_json(), **result.to_json()}
    _emit(report, args.out)
    return EXIT_OK if result.status is DecodeStatus.DECODED else EXIT_ERASURE


def cmd_check(args: argparse.Namespace) -> int:
    """Run the code property checks; exits with 1 when any of them fails."""
    code = _code(args)
    d_min = min_distance_bruteforce(code)
    report: Dict[str, Any] = {
        "code": repr(code),
        "min_distance": d_min,
        "singleton_bound": code.n - code.k + 1,
        "mds_failures": check_mds(code),
        "offset_failures": check_offset_recovery(code, seed=args.seed),
    }
    if args.signals is not None:
        report["signals"] = args.signals
        report["instances"] = args.instances
        report["disambiguation_failures"] = check_disambiguation(code, args.signals, args.instances, seed=args.seed)
    _emit(report, args.out)
    failures = [value for key, value in report.items() if key.endswith("_failures")]
    return EXIT_OK if sum(failures) == 0 else EXIT_ERASURE


def _resolve_run(args: argparse.Namespace) -> RunManifest:
    """The manifest of the run to perform: a previous manifest, or the command-line settings."""
    if args.manifest is not None:
        previous = RunManifest.read(args.manifest)
        assert previous.experiment == args.name, (
            f"Manifest {args.manifest} is for experiment `{previous.experiment}`, not `{args.name}`."
        )
        seed = previous.seed if args.seed is None else args.seed
        return RunManifest("experiment", args.name, previous.parameters, seed, __version__, args.threads)
    return RunManifest("experiment", args.name, {}, args.seed, __version__, args.threads)


def cmd_experiment(args: argparse.Namespace) -> int:
    """Run one experiment suite and write its tables, summary and manifest to the output directory."""
    run = _resolve_run(args)
    parameters_paths: List[Path] = [DEFAULTS_PATH]
    if args.config is not None:
        assert args.config.exists(), f"Config file {args.config} does not exist."
        parameters_paths.append(args.config)
    configuration = Configuration.from_hierarchical_config(
        parameters_paths=parameters_paths,
        catalog_path=CATALOG_PATH,
        overrides=run.parameters,
        config_converter=parse_suite,
        initialised_parameters={"seed": run.seed, "threads": run.threads},
    )
    run.parameters = configuration.parameters

    out: Path = args.out
    results_names = [f"{name}.csv" for name in _expected_tables(args.name)] + ["summary.json"]
    run.outputs = [str(out / name) for name in results_names]
    run.started_at = datetime.now(timezone.utc).isoformat()
    run.write(out / "manifest.json")

    start = time.perf_counter()
    results = configuration.catalog.run(args.name, skip_validation=args.skip_validation)
    for name, table in results.tables().items():
        TableFile(out / f"{name}.csv").write(table)
    JsonFile(out / "summary.json").write(results.summaries())

    run.outputs = [str(out / f"{name}.csv") for name in results.tables()] + [str(out / "summary.json")]
    run.wall_clock_s = time.perf_counter() - start
    run.write(out / "manifest.json")
    logger.info(f"Wrote {len(run.outputs)} files to {out}")
    return EXIT_OK


def _expected_tables(name: str) -> List[str]:
    return {
        "sts-link": ["link", "curves"],
        "data-impact": ["uplink", "curves"],
        "network": ["rates", "percentiles", "cdf", "curves"],
    }[name]


def _add_code_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--field", type=int, required=True, help="Prime field size p.")
    parser.add_argument("--n", "--N", dest="n", type=int, required=True, help="Block length N.")
    parser.add_argument("--k", "--K", dest="k", type=int, default=1, help="Information symbols K. Defaults to 1.")
    parser.add_argument("--beta", type=int, default=None, help="Evaluation-point generator; default is deterministic.")
    parser.add_argument("--out", type=Path, default=None, help="Write the JSON report here instead of stdout.")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stsig", description="Single-tone signaling codec and simulations.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    encode = commands.add_parser("encode", help="Encode a message into tone indices.")
    _add_code_arguments(encode)
    payload = encode.add_mutually_exclusive_group(required=True)
    payload.add_argument("--message", type=int, help="Message index.")
    payload.add_argument("--symbols", type=int, nargs="+", help="Raw information symbols u_1..u_K.")
    encode.set_defaults(func=cmd_encode)

    decode = commands.add_parser("decode", help="Decode observed tone indices.")
    _add_code_arguments(decode)
    decode.add_argument("--observations", type=Path, required=True, help="JSON observation file.")
    decode.add_argument("--multi", action="store_true", help="Decode every signal present.")
    decode.add_argument("--theta", type=int, default=None, help="Acceptance threshold of the multi-signal decoder.")
    decode.add_argument("--offset-window", type=int, default=0, help="Largest frequency offset to hypothesise.")
    decode.set_defaults(func=cmd_decode)

    check = commands.add_parser("check", help="Check the code properties.")
    _add_code_arguments(check)
    check.add_argument("--signals", type=int, default=None, help="Superposed signals G for disambiguation.")
    check.add_argument("--instances", type=int, default=1000, help="Disambiguation instances. Defaults to 1000.")
    check.add_argument("--seed", type=int, default=0, help="Seed of the sampled checks. Defaults to 0.")
    check.set_defaults(func=cmd_check)

    experiment = commands.add_parser("experiment", help="Run an experiment suite.")
    experiment.add_argument("name", choices=EXPERIMENTS, help="Experiment to run.")
    experiment.add_argument("--config", type=Path, default=None, help="YAML or JSON settings layered on the defaults.")
    experiment.add_argument("--out", type=Path, required=True, help="Output directory.")
    experiment.add_argument("--seed", type=int, default=None, help="Master seed; required unless --manifest is given.")
    experiment.add_argument("--threads", type=int, default=1, help="Worker threads. Defaults to 1.")
    experiment.add_argument("--manifest", type=Path, default=None, help="Re-run the settings of a previous manifest.")
    experiment.add_argument("--skip-validation", action="store_true", help="Skip the result checks.")
    experiment.set_defaults(func=cmd_experiment)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Entry point of the `stsig` command.

    Exit codes: 0 on success, 1 on a decode erasure or a failed property check, 2 on usage,
    configuration or input errors.

    Args:
        argv (Optional[List[str]]): Arguments without the program name. Defaults to `sys.argv[1:]`.

    Returns:
        int: The exit code.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "experiment" and args.seed is None and args.manifest is None:
            parser.error("--seed is required for experiment commands (or re-run a --manifest).")
    except SystemExit as exit_:
        return int(exit_.code or 0)

    try:
        return args.func(args)
    except ValidationError as e:
        logger.error(f"Invalid configuration:\n{e}")
    except (AssertionError, OSError, ValueError, yaml.YAMLError, TemplateError) as e:
        logger.error(f"{args.command} failed: {e}")
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
