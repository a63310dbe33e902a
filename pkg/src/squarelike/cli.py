"""Command-line front end: one query per invocation, one JSON object out.

Exit codes: 0 on success, 1 on malformed input (error JSON on stderr),
2 when a constructed witness fails its own verification.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Optional, Sequence

from .classifier import discriminating_companion, is_discriminating, is_square_like
from .consistency import satisfiable_szmielew
from .decider import InvariantViolation, in_theory, satisfiable_square_like
from .evaluator import eval_sentence
from .normalizer import to_positive_dnf
from .parser import ParseError, descriptor_to_json, parse_descriptor, parse_sentence

MODES = ("szmielew", "discriminating", "square-like")


class UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    # argparse prints usage and exits 2 by default; route it through our JSON errors
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    ap = _ArgumentParser(prog="squarelike", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    p = sub.add_parser("eval", help="evaluate a sentence in a descriptor")
    p.add_argument("--group", required=True, help="descriptor JSON file ('-' for stdin)")
    p.add_argument("--sentence", required=True)

    p = sub.add_parser("classify", help="discriminating / square-like test")
    p.add_argument("--group", required=True, help="descriptor JSON file ('-' for stdin)")

    p = sub.add_parser("sat", help="search for a satisfying group")
    p.add_argument("--sentence", required=True)
    p.add_argument("--mode", choices=MODES, default="square-like")

    p = sub.add_parser("prove", help="membership in the square-like theory")
    p.add_argument("--sentence", required=True)
    return ap


def _read_group(path: str):
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse_descriptor(text)


def _sat_szmielew(sentence):
    for c in to_positive_dnf(sentence):
        W = satisfiable_szmielew(c)
        if W is not None:
            if not eval_sentence(sentence, W):
                raise InvariantViolation(f"witness {W} falsifies the input sentence")
            return W
    return None


def dispatch(args: argparse.Namespace) -> dict[str, Any]:
    if args.command == "eval":
        A = _read_group(args.group)
        return {"result": eval_sentence(parse_sentence(args.sentence), A)}
    if args.command == "classify":
        A = _read_group(args.group)
        out: dict[str, Any] = {
            "discriminating": is_discriminating(A),
            "square_like": is_square_like(A),
        }
        if out["square_like"]:
            out["companion"] = descriptor_to_json(discriminating_companion(A))
        return out
    if args.command == "sat":
        s = parse_sentence(args.sentence)
        W = _sat_szmielew(s) if args.mode == "szmielew" else satisfiable_square_like(s)
        out = {"satisfiable": W is not None}
        if W is not None:
            out["witness"] = descriptor_to_json(W)
        return out
    if args.command == "prove":
        verdict = in_theory(parse_sentence(args.sentence))
        out = {"member": verdict.member}
        if verdict.counter_model is not None:
            out["counter_model"] = descriptor_to_json(verdict.counter_model)
        return out
    raise UsageError(f"unknown command {args.command!r}")  # pragma: no cover


def _emit_error(kind: str, message: str, position: Optional[int] = None) -> None:
    err: dict[str, Any] = {"error": kind, "message": message}
    if position is not None:
        err["position"] = position
    print(json.dumps(err), file=sys.stderr)


def run(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        result = dispatch(args)
    except ParseError as exc:
        _emit_error("parse", exc.message, exc.position)
        return 1
    except UsageError as exc:
        _emit_error("usage", str(exc))
        return 1
    except ValueError as exc:
        _emit_error("validation", str(exc))
        return 1
    except InvariantViolation as exc:
        _emit_error("invariant", str(exc))
        return 2
    except Exception as exc:  # noqa: BLE001 - never leak a traceback
        _emit_error("internal", f"{type(exc).__name__}: {exc}")
        return 2
    print(json.dumps(result, sort_keys=True))
    return 0


def main() -> None:
    sys.exit(run())
