"""Command-line front end.

Subcommands::

    gptcomp list                      # registry names and anchors
    gptcomp run <name>                # run a scenario, report json/csv
    gptcomp check <mode> <file.json>  # popt | effect | state | game

Flags ``--tolerance``, ``--grid-density``, ``--seed`` and ``--format``
apply to every subcommand and may also be set through the environment
variables ``GPTCOMP_TOLERANCE``, ``GPTCOMP_GRID_DENSITY``,
``GPTCOMP_SEED`` and ``GPTCOMP_FORMAT`` (flags win).

Exit codes: 0 success, 1 expectation/verdict failure, 2 usage or schema
error. JSON output is emitted with sorted keys so identical inputs and
configuration give byte-identical output (scenario reports additionally
carry a wall_time_s field, the one intentionally non-reproducible value).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .composition import (
    CompositionRule,
    SeparableCertificate,
    is_effect,
    is_state,
    popt_membership,
)
from .config import OUTPUT_FORMATS, RunConfig
from .errors import GptcompError, SchemaError
from .game import GameReport, IcStrategy, play_ic_game
from .operators import HermitianOperator, identity, min_eigenvalue
from .scenarios import ScenarioReport, builtin_registry, run_scenario
from .systems import GptSystem, GptVector, Measurement

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def _emit_json(doc: dict) -> None:
    print(json.dumps(doc, indent=2, sort_keys=True))


def _env_default(name: str, cast, fallback):
    raw = os.environ.get(f"GPTCOMP_{name}")
    if raw is None:
        return fallback
    try:
        return cast(raw)
    except ValueError as exc:
        raise SchemaError(f"GPTCOMP_{name}", f"cannot parse {raw!r}") from exc


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--tolerance", type=float, default=None,
        help="absolute numeric tolerance (default 1e-9)",
    )
    common.add_argument(
        "--grid-density", type=int, default=None,
        help="angular grid points per Bloch-sphere axis (default 32)",
    )
    common.add_argument(
        "--seed", type=int, default=None,
        help="seed for randomized property sweeps (default 0)",
    )
    common.add_argument(
        "--format", choices=OUTPUT_FORMATS, default=None, help="output format",
    )
    parser = argparse.ArgumentParser(
        prog="gptcomp",
        description="composite state/effect cones, toy systems and IC games",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("list", help="list registered scenarios", parents=[common])
    run_p = sub.add_parser("run", help="run one scenario", parents=[common])
    run_p.add_argument("name")
    check_p = sub.add_parser(
        "check", help="evaluate a JSON operator or strategy", parents=[common]
    )
    check_p.add_argument("mode", choices=("popt", "effect", "state", "game"))
    check_p.add_argument("file")
    return parser


def _config_from_args(args) -> RunConfig:
    tolerance = args.tolerance if args.tolerance is not None else _env_default(
        "TOLERANCE", float, 1e-9)
    grid = args.grid_density if args.grid_density is not None else _env_default(
        "GRID_DENSITY", int, 32)
    seed = args.seed if args.seed is not None else _env_default("SEED", int, 0)
    fmt = args.format if args.format is not None else _env_default(
        "FORMAT", str, "json")
    return RunConfig(tolerance=tolerance, grid_density=grid, seed=seed, output_format=fmt)


# ---------------------------------------------------------------------------
# JSON input parsing with first-offending-field reporting.
# ---------------------------------------------------------------------------

def _require(obj: dict, key: str, path: str):
    if not isinstance(obj, dict):
        raise SchemaError(path or ".", f"expected an object, got {type(obj).__name__}")
    if key not in obj:
        raise SchemaError(f"{path}.{key}" if path else key, "missing required field")
    return obj[key]


def _parse_operator(obj, path: str) -> HermitianOperator:
    dim = _require(obj, "dim", path)
    entries = _require(obj, "entries", path)
    if not isinstance(dim, int) or dim < 1:
        raise SchemaError(f"{path}.dim", f"expected a positive integer, got {dim!r}")
    if not isinstance(entries, list) or len(entries) != dim * dim:
        raise SchemaError(
            f"{path}.entries",
            f"expected {dim * dim} [re, im] pairs",
        )
    for i, pair in enumerate(entries):
        if not (isinstance(pair, list) and len(pair) == 2
                and all(isinstance(x, (int, float)) for x in pair)):
            raise SchemaError(f"{path}.entries[{i}]", "expected an [re, im] pair")
    try:
        return HermitianOperator.from_dict({"dim": dim, "entries": entries})
    except GptcompError as exc:
        raise SchemaError(f"{path}", str(exc)) from exc


def _parse_certificate(obj, path: str) -> SeparableCertificate:
    terms = _require(obj, "terms", path)
    if not isinstance(terms, list) or not terms:
        raise SchemaError(f"{path}.terms", "expected a nonempty list")
    parsed = []
    for i, term in enumerate(terms):
        a = _parse_operator(_require(term, "a", f"{path}.terms[{i}]"), f"{path}.terms[{i}].a")
        b = _parse_operator(_require(term, "b", f"{path}.terms[{i}]"), f"{path}.terms[{i}].b")
        parsed.append((a, b))
    return SeparableCertificate(tuple(parsed))


def _parse_rule(obj, path: str) -> CompositionRule:
    rule = _require(obj, "rule", path)
    try:
        return CompositionRule.from_string(str(rule))
    except GptcompError as exc:
        raise SchemaError(f"{path}.rule" if path else "rule", str(exc)) from exc


def _parse_coords(obj, path: str, role: str) -> GptVector:
    if not (isinstance(obj, list) and len(obj) == 3
            and all(isinstance(x, (int, float)) for x in obj)):
        raise SchemaError(path, "expected a [x, y, z] triple")
    try:
        return GptVector(obj, role)
    except GptcompError as exc:
        raise SchemaError(path, str(exc)) from exc


def _parse_game(doc: dict) -> tuple:
    medium_obj = _require(doc, "medium", "")
    n_bits = _require(doc, "n_bits", "")
    if not isinstance(n_bits, int):
        raise SchemaError("n_bits", f"expected an integer, got {n_bits!r}")
    if "rule" in medium_obj:
        medium = _parse_rule(medium_obj, "medium")
        state_parser = lambda obj, path: _parse_operator(obj, path)
        effect_parser = state_parser
    elif "system" in medium_obj:
        try:
            medium = GptSystem.from_dict(medium_obj["system"])
        except (GptcompError, KeyError, TypeError) as exc:
            raise SchemaError("medium.system", str(exc)) from exc
        state_parser = lambda obj, path: _parse_coords(obj, path, "state")
        effect_parser = lambda obj, path: _parse_coords(obj, path, "effect")
    else:
        raise SchemaError("medium", "expected a 'rule' or 'system' field")

    enc_obj = _require(doc, "encoding", "")
    encoding = {}
    for bits in IcStrategy.input_strings(n_bits):
        encoding[bits] = state_parser(
            _require(enc_obj, bits, "encoding"), f"encoding.{bits}"
        )
    cert_obj = doc.get("encoding_certificates")
    certificates = None
    if cert_obj is not None:
        certificates = {
            bits: _parse_certificate(val, f"encoding_certificates.{bits}")
            for bits, val in cert_obj.items()
        }

    dec_obj = _require(doc, "decodings", "")
    decodings = {}
    for b in range(1, n_bits + 1):
        key = str(b)
        entry = _require(dec_obj, key, "decodings")
        path = f"decodings.{key}"
        effs = _require(entry, "effects", path)
        labels = _require(entry, "labels", path)
        if not isinstance(effs, list) or not isinstance(labels, list):
            raise SchemaError(path, "effects and labels must be lists")
        effects = tuple(
            effect_parser(e, f"{path}.effects[{i}]") for i, e in enumerate(effs)
        )
        certs = None
        if entry.get("certificates") is not None:
            certs = tuple(
                None if c is None else _parse_certificate(c, f"{path}.certificates[{i}]")
                for i, c in enumerate(entry["certificates"])
            )
        try:
            meas = Measurement(effects, tuple(labels), certificates=certs)
        except GptcompError as exc:
            raise SchemaError(path, str(exc)) from exc
        guesses_obj = _require(entry, "guesses", path)
        guesses = {}
        for label in meas.labels:
            if label not in guesses_obj:
                raise SchemaError(f"{path}.guesses.{label}", "missing required field")
            g = guesses_obj[label]
            if g not in (0, 1, "random"):
                raise SchemaError(f"{path}.guesses.{label}", "must be 0, 1 or 'random'")
            guesses[label] = g
        decodings[b] = (meas, guesses)

    strategy = IcStrategy(
        n_bits=n_bits,
        encoding=encoding,
        decodings=decodings,
        encoding_certificates=certificates,
    )
    return strategy, medium


# ---------------------------------------------------------------------------
# Subcommands.
# ---------------------------------------------------------------------------

def cmd_list() -> int:
    for scenario in builtin_registry():
        print(f"{scenario.name} - {scenario.anchor}")
    return EXIT_OK


def cmd_run(name: str, config: RunConfig) -> int:
    names = [s.name for s in builtin_registry()]
    if name not in names:
        print(f"unknown scenario {name!r}; available:", file=sys.stderr)
        for n in names:
            print(f"  {n}", file=sys.stderr)
        return EXIT_USAGE
    report = run_scenario(name, config)
    if config.output_format == "csv":
        print(ScenarioReport.csv_header())
        print(report.csv_row())
    else:
        _emit_json(report.to_dict())
    if not report.passed:
        for c in report.checks:
            if not c.passed:
                print(
                    f"FAIL {name}: {c.label} expected {c.expected!r} "
                    f"got {c.actual!r} (tolerance {c.tolerance!r})",
                    file=sys.stderr,
                )
        return EXIT_FAIL
    return EXIT_OK


def _load_doc(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise SchemaError(path, "file not found") from None
    except json.JSONDecodeError as exc:
        raise SchemaError(path, f"invalid JSON: {exc}") from exc


def cmd_check(mode: str, path: str, config: RunConfig) -> int:
    doc = _load_doc(path)
    if mode == "popt":
        op = _parse_operator(doc, "")
        verdict = popt_membership(op, config.grid_density, config.tolerance)
        _emit_json({"mode": "popt", **verdict.to_dict()})
        return EXIT_OK
    if mode in ("effect", "state"):
        rule = _parse_rule(doc, "")
        op = _parse_operator(_require(doc, "operator", ""), "operator")
        cert = None
        comp_cert = None
        if doc.get("certificate") is not None:
            cert = _parse_certificate(doc["certificate"], "certificate")
        if doc.get("complement_certificate") is not None:
            comp_cert = _parse_certificate(
                doc["complement_certificate"], "complement_certificate")
        if mode == "effect":
            valid = is_effect(
                op, rule, cert, comp_cert,
                grid_density=config.grid_density, tol=config.tolerance,
            )
            diagnostics = {
                "min_eigenvalue": min_eigenvalue(op),
                "complement_min_eigenvalue": min_eigenvalue(identity(op.dim) - op),
            }
            if rule is CompositionRule.MINIMAL:
                diagnostics["pure_tensor_min"] = popt_membership(
                    op, config.grid_density, config.tolerance).min_value
        else:
            valid = is_state(
                op, rule, cert,
                grid_density=config.grid_density, tol=config.tolerance,
            )
            diagnostics = {"trace": op.trace, "min_eigenvalue": min_eigenvalue(op)}
            if rule is CompositionRule.MAXIMAL:
                diagnostics["pure_tensor_min"] = popt_membership(
                    op, config.grid_density, config.tolerance).min_value
        _emit_json({
            "mode": mode,
            "rule": rule.value,
            "valid": bool(valid),
            "diagnostics": diagnostics,
        })
        return EXIT_OK
    # mode == "game"
    strategy, medium = _parse_game(doc)
    report = play_ic_game(
        strategy, medium, tol=config.tolerance, grid_density=config.grid_density,
    )
    if config.output_format == "csv":
        print(GameReport.csv_header())
        print(report.csv_row())
    else:
        _emit_json({"mode": "game", **report.to_dict()})
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        config = _config_from_args(args)
    except GptcompError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.command == "list":
            return cmd_list()
        if args.command == "run":
            return cmd_run(args.name, config)
        return cmd_check(args.mode, args.file, config)
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GptcompError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
