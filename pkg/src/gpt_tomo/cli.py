"""Command-line interface.

Exit status is 0 when every verdict passes, 2 when a verdict fails and 1
on usage or contract errors.  Output is JSON tagged with the schema
version.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from ._json import dumps
from .demo import DEMO_NAMES, run_demo
from .entanglement import classify
from .errors import GptError
from .model import SCHEMA_TAG, CompositeSystem, is_tomographically_local, validate_composition, validate_system
from .theories import THEORY_NAMES, named_states, resolve_theory
from .tomography import decompose, verify_projector_laws

SEED_ENV = "GPT_TOMO_SEED"

EXIT_OK, EXIT_USAGE, EXIT_VERDICT = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _seed(text: str) -> int:
    try:
        return int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}") from None


def _bit(text: str) -> int:
    if text not in ("0", "1"):
        raise argparse.ArgumentTypeError(f"bit must be 0 or 1, got {text!r}")
    return int(text)


def _message(text: str) -> tuple[int, int]:
    if len(text) != 2 or set(text) - {"0", "1"}:
        raise argparse.ArgumentTypeError(f"message must be two bits such as 01, got {text!r}")
    return int(text[0]), int(text[1])


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gpt-tomo", description="Tomographic locality toolkit for GPTs.")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def common(p, state=False):
        p.add_argument("--theory", default="two-rebit", help=f"theory selector ({', '.join(THEORY_NAMES)})")
        p.add_argument("--seed", type=_seed, default=None, help=f"random seed ({SEED_ENV} overrides)")
        p.add_argument("--output", type=Path, default=None, help="write JSON here instead of stdout")
        if state:
            p.add_argument("--state", default=None, help="named state or inline JSON coordinates")

    common(sub.add_parser("validate", help="check the composition axioms"))
    common(sub.add_parser("decompose", help="build the tomographic decomposition"))
    common(sub.add_parser("classify", help="classify a state's entanglement"), state=True)
    common(sub.add_parser("report", help="summary of a theory and its named states"))
    demo = sub.add_parser("demo", help="run a protocol demonstration")
    demo.add_argument("demo_name", choices=DEMO_NAMES)
    common(demo, state=True)
    demo.add_argument("--bit", type=_bit, default=None)
    demo.add_argument("--message", type=_message, default=(0, 0))
    return parser


def _state(theory: str, text: str | None, default: str | None = None):
    """Resolve ``--state`` to ``(name, coordinates)``."""
    text = default if text is None else text
    if text is None:
        raise UsageError("--state is required")
    stripped = text.strip()
    if stripped.startswith(("[", "{")):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise UsageError(f"invalid inline state: {exc}") from None
        if isinstance(data, dict):
            data = data.get("coordinates")
        try:
            return "inline", np.asarray(data, dtype=float)
        except (TypeError, ValueError):
            raise UsageError("inline state must be a list of numbers") from None
    states = named_states(theory)
    if text not in states:
        raise UsageError(f"unknown state {text!r} for {theory!r}; known: {', '.join(sorted(states))}")
    return text, states[text]


def _composite(theory: str) -> CompositeSystem:
    system = resolve_theory(theory)
    if not isinstance(system, CompositeSystem):
        raise UsageError(f"{theory!r} is a single system; this command needs a composite")
    return system


def cmd_validate(args):
    system = resolve_theory(args.theory)
    if isinstance(system, CompositeSystem):
        report = validate_composition(system)
        return {"theory": args.theory, "passed": report.passed, "report": report.to_dict()}, report.passed
    checks = validate_system(system)
    passed = all(v <= 1e-9 for v in checks.values())
    return {"theory": args.theory, "passed": passed, "report": {"checks": checks}}, passed


def cmd_decompose(args):
    comp = _composite(args.theory)
    dec = decompose(comp)
    laws = verify_projector_laws(dec)
    return {
        "theory": args.theory,
        "dims": dec.dims,
        "tomographically_local": is_tomographically_local(comp),
        "pi_tl": dec.pi_tl,
        "pi_tnl": dec.pi_tnl,
        "h_state_basis": dec.h_state.basis,
        "h_effect_basis": dec.h_effect.basis,
        "projector_laws": laws.to_dict(),
        "passed": laws.passed,
    }, laws.passed


def cmd_classify(args):
    comp = _composite(args.theory)
    name, omega = _state(args.theory, args.state)
    report = classify(comp, omega)
    return {"theory": args.theory, "state": name, **report.to_dict()}, True


def cmd_report(args):
    system = resolve_theory(args.theory)
    if not isinstance(system, CompositeSystem):
        return cmd_validate(args)
    validation = validate_composition(system)
    dec = decompose(system)
    laws = verify_projector_laws(dec)
    states = {}
    try:
        named = named_states(args.theory)
    except GptError:
        named = {}
    for name, omega in sorted(named.items()):
        r = classify(system, omega, dec)
        states[name] = {"separable": r.separable, "has_tl": r.has_tl, "has_tnl": r.has_tnl, "kinds": sorted(r.kinds)}
    passed = validation.passed and laws.passed
    return {
        "theory": args.theory,
        "dims": dec.dims,
        "tomographically_local": is_tomographically_local(system),
        "validation_passed": validation.passed,
        "failed_items": validation.failed_items,
        "projector_laws_passed": laws.passed,
        "states": states,
        "passed": passed,
    }, passed


def cmd_demo(args):
    omega, name = None, None
    if args.state is not None:
        name, omega = _state(args.theory, args.state)
    transcript = run_demo(
        args.demo_name, theory=args.theory, state=name, omega=omega, seed=args.seed, bit=args.bit, message=args.message
    )
    return transcript.to_dict(), transcript.passed


COMMANDS = {
    "validate": cmd_validate,
    "decompose": cmd_decompose,
    "classify": cmd_classify,
    "report": cmd_report,
    "demo": cmd_demo,
}


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    """Parse ``argv``, run the command and return the exit status."""
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    try:
        args = build_parser().parse_args(argv)
        env = os.environ.get(SEED_ENV)
        if env is not None:
            args.seed = _seed(env)
        payload, passed = COMMANDS[args.verb](args)
    except (UsageError, argparse.ArgumentTypeError, GptError, ValueError) as exc:
        print(f"gpt-tomo: error: {exc}", file=stderr)
        return EXIT_USAGE
    payload = {"schema": SCHEMA_TAG, "command": args.verb, **payload}
    text = dumps(payload) + "\n"
    if args.output is not None:
        args.output.write_text(text)
    else:
        stdout.write(text)
    return EXIT_OK if passed else EXIT_VERDICT


def main(argv: list[str] | None = None) -> int:
    return run(argv)


if __name__ == "__main__":
    raise SystemExit(main())
