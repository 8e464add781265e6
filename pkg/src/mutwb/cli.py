"""Command-line interface.

Exit codes: 0 success, 1 parse/usage errors, 2 blocked mutation
(self-crossing curve or non-regular local system), 3 budget exceeded.
Indices on the command line are 1-based.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .curves import EXAMPLE_NAMES
from .errors import BudgetExceeded, NotRegular, NotSimple, WorkbenchError
from .exchange import (
    config_orbit_to_json,
    explore,
    explore_config,
    graph_to_dot,
    graph_to_json,
)
from .curves import GeodesicConfig
from .quivers import quiver_from_arrows, quiver_of_seed, quiver_to_dot, reduce_quiver
from .service import SEED_NAMES, serve
from .sessions import (
    MalformedPayload,
    SessionState,
    initial_state,
    mutate_state,
    render_state,
    state_to_json,
)

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_BLOCKED = 2
EXIT_BUDGET = 3


def _fail(message: str, code: int) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _load_json_file(path: str) -> dict:
    return json.loads(Path(path).read_text(encoding="utf-8"))


def _payload_from_args(args) -> dict:
    payload: dict = {}
    if getattr(args, "example", None):
        payload["example"] = args.example
    elif getattr(args, "config", None):
        payload["config"] = _load_json_file(args.config)
    elif getattr(args, "seed", None):
        raw = args.seed
        if raw.lower() in SEED_NAMES:
            payload["seed"] = raw.lower()
        else:
            payload["seed"] = _load_json_file(raw)
    else:
        raise MalformedPayload("one of --example/--config/--seed is required")
    if getattr(args, "character", None):
        a, _, b = args.character.partition(",")
        payload["character"] = {"a": a.strip(), "b": b.strip() or "1"}
    return payload


def _parse_sequence(text: str) -> list[int]:
    if not text:
        return []
    out = []
    for piece in text.split(","):
        piece = piece.strip()
        if not piece.lstrip("-").isdigit():
            raise ValueError(f"bad index {piece!r}")
        out.append(int(piece))
    return out


def _print_report(state: SessionState) -> None:
    doc = state_to_json(state)
    print(f"kind: {doc['kind']}")
    if "classes" in doc:
        print("classes:", " ".join(str(tuple(v)) for v in doc["classes"]))
    if "seed" in doc:
        print("vectors:", " ".join(str(tuple(v)) for v in doc["seed"]["vectors"]))
        print("signing:", doc["seed"]["signing"])
    if "ledger" in doc:
        print("ledger P:", doc["ledger"]["P"])
        print("ledger s:", doc["ledger"]["s"])
    quiver = doc.get("reduced_quiver")
    if quiver:
        arrows = quiver["arrows"]
        labels = [
            f"{i + 1}->{j + 1}:{arrows[i][j]}"
            for i in range(len(arrows))
            for j in range(len(arrows))
            if arrows[i][j]
        ]
        print("quiver:", "{" + ", ".join(labels) + "}")
    for i, text in enumerate(doc.get("xvars", [])):
        print(f"x[{i + 1}] = {text}")
    if "character" in doc:
        print("character:", doc["character"])
    if doc["history"]:
        print("history:", ",".join(str(k) for k in doc["history"]))


def cmd_examples(_args) -> int:
    for name in EXAMPLE_NAMES:
        print(name)
    for name in SEED_NAMES:
        print(f"seed:{name}")
    return EXIT_OK


def cmd_mutate(args) -> int:
    try:
        payload = _payload_from_args(args)
        state = initial_state(payload)
        sequence = _parse_sequence(args.sequence or "")
    except (MalformedPayload, ValueError, OSError, json.JSONDecodeError) as exc:
        return _fail(str(exc), EXIT_PARSE)
    for step, index in enumerate(sequence, start=1):
        try:
            state = mutate_state(state, index - 1)
        except (NotSimple, NotRegular) as exc:
            return _fail(f"blocked at step {step} (index {index}): {exc}", EXIT_BLOCKED)
        except BudgetExceeded as exc:
            return _fail(f"budget exceeded at step {step}: {exc}", EXIT_BUDGET)
        except IndexError as exc:
            return _fail(str(exc), EXIT_PARSE)
    output = render_state(state) if args.json else None
    if args.out:
        Path(args.out).write_text((output or render_state(state)) + "\n", encoding="utf-8")
    if args.json:
        print(output)
    else:
        _print_report(state)
    return EXIT_OK


def cmd_explore(args) -> int:
    try:
        payload = _payload_from_args(args)
        state = initial_state(payload)
    except (MalformedPayload, ValueError, OSError, json.JSONDecodeError) as exc:
        return _fail(str(exc), EXIT_PARSE)
    try:
        if state.classes is not None:
            orbit = explore_config(GeodesicConfig(state.classes), args.depth)
            doc = config_orbit_to_json(orbit)
            dot = None
        elif state.decorated is not None:
            graph = explore(state.decorated, args.depth, expr_budget=args.budget)
            doc = graph_to_json(graph)
            dot = graph_to_dot(graph)
        else:
            return _fail("ledger-only configurations cannot be explored", EXIT_PARSE)
    except BudgetExceeded as exc:
        return _fail(str(exc), EXIT_BUDGET)
    if args.dot:
        if dot is None:
            return _fail("DOT export is only available for seed exploration", EXIT_PARSE)
        text = dot
    else:
        text = json.dumps(doc, sort_keys=True, separators=(",", ":"))
    if args.out:
        Path(args.out).write_text(text + ("\n" if not text.endswith("\n") else ""), encoding="utf-8")
    else:
        print(text)
    return EXIT_OK


def cmd_export(args) -> int:
    try:
        payload = _payload_from_args(args)
        state = initial_state(payload)
    except (MalformedPayload, ValueError, OSError, json.JSONDecodeError) as exc:
        return _fail(str(exc), EXIT_PARSE)
    if args.dot:
        if state.decorated is not None:
            quiver = quiver_of_seed(state.decorated.seed)
        elif state.ledger is not None:
            quiver = reduce_quiver(quiver_from_arrows(state.ledger.P, state.ledger.s))
        else:
            return _fail("nothing to export", EXIT_PARSE)
        text = quiver_to_dot(quiver)
    else:
        text = render_state(state) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_serve(args) -> int:
    print(f"serving on http://127.0.0.1:{args.port}", file=sys.stderr)
    serve(args.port, journal_path=args.journal, static_dir=args.static)
    return EXIT_OK


def _add_input_flags(parser: argparse.ArgumentParser, with_character: bool = False) -> None:
    parser.add_argument("--example", help="named example configuration")
    parser.add_argument("--config", help="path to a config JSON file")
    parser.add_argument("--seed", help="named seed (a2/a3/d4/markov) or seed JSON path")
    if with_character:
        parser.add_argument("--character", help="rank-1 character 'a,b' (nonzero rationals)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mutwb", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("examples", help="list named examples and seeds")
    p.set_defaults(func=cmd_examples)

    p = sub.add_parser("mutate", help="apply a mutation sequence and report the result")
    _add_input_flags(p, with_character=True)
    p.add_argument("--sequence", default="", help="comma-separated 1-based indices")
    p.add_argument("--json", action="store_true", help="print the canonical state JSON")
    p.add_argument("--out", help="also write the state JSON to a file")
    p.set_defaults(func=cmd_mutate)

    p = sub.add_parser("explore", help="breadth-first mutation orbit")
    _add_input_flags(p)
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--budget", type=int, default=None, help="expression-size cap override")
    p.add_argument("--dot", action="store_true", help="emit DOT instead of JSON")
    p.add_argument("--out", help="write output to a file")
    p.set_defaults(func=cmd_explore)

    p = sub.add_parser("export", help="export the initial state (--json) or quiver (--dot)")
    _add_input_flags(p)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--dot", action="store_true")
    group.add_argument("--json", action="store_true")
    p.add_argument("--out", help="write output to a file")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("serve", help="run the JSON HTTP service")
    p.add_argument("--port", type=int, default=8645)
    p.add_argument("--journal", help="append-only journal file for crash recovery")
    p.add_argument("--static", help="directory with the explorer UI bundle")
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except WorkbenchError as exc:
        return _fail(str(exc), EXIT_PARSE)


if __name__ == "__main__":
    sys.exit(main())
