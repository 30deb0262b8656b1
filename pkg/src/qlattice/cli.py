"""Command-line client over the operation layer.

The CLI is a thin shell around the same request models the HTTP app
serves: it assembles a job from flags and/or a JSON config file, runs it
in-process and writes the JSON (or CSV) result.  Exit codes are a stable
contract: 0 success, 1 identity failure, 2 input error, 3 degenerate
parameters, 4 classification scope.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Any

from pydantic import ValidationError

from . import api
from .errors import ClassificationScopeError, DegenerateParameterError, QLatticeError

EXIT_OK = 0
EXIT_IDENTITY_FAILURE = 1
EXIT_INPUT_ERROR = 2
EXIT_DEGENERATE = 3
EXIT_CLASSIFICATION_SCOPE = 4

COMMANDS = ("construct", "verify", "coeffs", "classify")

_FAMILY_KEYS = ("a", "b", "c", "d", "p")
_TOP_LEVEL_KEYS = ("phi", "psi", "lambda_offset", "relation", "checks", "n_cap")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qlattice",
        description="Construct, verify and classify classical orthogonal "
        "polynomials of the quadratic and q-quadratic variable, exactly.",
    )
    parser.add_argument("--command", choices=COMMANDS, help="job to run")
    parser.add_argument("--config", help="JSON config file; flags override it")
    parser.add_argument("--family", help="family name, e.g. wilson")
    parser.add_argument(
        "--params",
        help='JSON object of parameters, e.g. \'{"a":"1","b":"1","c":"1","d":"1"}\'',
    )
    parser.add_argument("--lattice", help="lattice as JSON (classify)")
    parser.add_argument("--n", type=int, help="single degree")
    parser.add_argument("--n-max", type=int, dest="n_max", help="maximum degree")
    parser.add_argument("--output", default="-", help="output path, '-' for stdout")
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    return parser


def _load_json(text: str, what: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"invalid JSON for {what}: {exc}") from exc


def assemble_job(args: argparse.Namespace) -> tuple[str, dict[str, Any]]:
    """Merge the config file and flags into (command, payload)."""
    payload: dict[str, Any] = {}
    if args.config:
        with open(args.config, "r", encoding="utf-8") as handle:
            try:
                loaded = json.load(handle)
            except json.JSONDecodeError as exc:
                raise ValueError(f"invalid JSON config: {exc}") from exc
        if not isinstance(loaded, dict):
            raise ValueError("config must be a JSON object")
        payload.update(loaded)
    command = args.command or payload.pop("command", None)
    if command not in COMMANDS:
        raise ValueError("missing or unknown command")
    if args.family:
        payload.setdefault("family", {})
        if not isinstance(payload["family"], dict):
            raise ValueError("family in config must be an object")
        payload["family"]["family"] = args.family
    if args.params:
        params = _load_json(args.params, "--params")
        if not isinstance(params, dict):
            raise ValueError("--params must be a JSON object")
        for key, value in params.items():
            if key in _FAMILY_KEYS:
                payload.setdefault("family", {})[key] = value
            elif key in _TOP_LEVEL_KEYS:
                payload[key] = value
            else:
                raise ValueError(f"unknown parameter {key!r}")
    if args.lattice:
        lattice = _load_json(args.lattice, "--lattice")
        if not isinstance(lattice, dict):
            raise ValueError("--lattice must be a JSON object")
        payload["lattice"] = lattice
    if args.n is not None:
        payload["n"] = args.n
    if args.n_max is not None:
        payload["n_max"] = args.n_max
    return command, payload


def run_job(command: str, payload: dict[str, Any]) -> dict[str, Any]:
    if command == "construct":
        req = api.ConstructRequest(**payload)
        return api.run_construct(req).model_dump(exclude_none=True)
    if command == "verify":
        req = api.VerifyRequest(**payload)
        return api.run_verify(req).model_dump(exclude_none=True)
    if command == "coeffs":
        req = api.CoeffsRequest(**payload)
        return api.run_coeffs(req).model_dump(exclude_none=True)
    req = api.ClassifyRequest(**payload)
    return api.run_classify(req).model_dump(exclude_none=True)


def to_json_text(result: dict[str, Any]) -> str:
    return json.dumps(result, indent=2, sort_keys=True, separators=(",", ": ")) + "\n"


def to_csv_text(command: str, result: dict[str, Any]) -> str:
    """Lossy tabular view of the canonical JSON payload."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    if command == "construct":
        writer.writerow(["degree", "coefficients"])
        for degree, row in enumerate(result["rows"]):
            writer.writerow([degree, " ".join(row)])
    elif command == "verify":
        writer.writerow(["identity", "n", "ok", "detail"])
        for row in result["results"]:
            writer.writerow([row["identity"], row["n"], row["ok"], row.get("detail", "")])
    elif command == "coeffs":
        writer.writerow(["relation", "n", "offset", "value", "closed_form", "match"])
        for report in result["reports"]:
            closed = report.get("closed_form", {})
            match = report.get("closed_form_match", "")
            for offset in sorted(report["window"], key=int):
                writer.writerow(
                    [
                        report["relation"],
                        report["n"],
                        offset,
                        report["window"][offset],
                        closed.get(offset, ""),
                        match,
                    ]
                )
    else:
        writer.writerow(["family", "params", "u"])
        writer.writerow(
            [result["family"], " ".join(result["params"]), result.get("u", "")]
        )
    return buffer.getvalue()


def _write(text: str, output: str) -> None:
    if output == "-":
        sys.stdout.write(text)
    else:
        with open(output, "w", encoding="utf-8") as handle:
            handle.write(text)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        command, payload = assemble_job(args)
        result = run_job(command, payload)
    except DegenerateParameterError as exc:
        print(f"error: degenerate parameters: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except ClassificationScopeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CLASSIFICATION_SCOPE
    except (ValueError, ValidationError, OSError, QLatticeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    text = (
        to_json_text(result) if args.format == "json" else to_csv_text(command, result)
    )
    _write(text, args.output)
    if command == "verify" and not result["ok"]:
        failures = [r for r in result["results"] if not r["ok"]]
        first = failures[0]
        print(
            f"verification failed: {first['identity']} n={first['n']} "
            f"({len(failures)} failing)",
            file=sys.stderr,
        )
        return EXIT_IDENTITY_FAILURE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
