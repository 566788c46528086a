"""Batch driver: check, elaborate, and run strategic programs.

Exit codes: 0 success, 1 strategy failure (FAIL), 2 type error,
3 fuel exhausted, 4 parse error, 5 engine error.
"""

import argparse
import os
import sys

from .elaborate import elaborate_program
from .errors import InapplicableType, ParseError, StaticError
from .evaluate import EngineFailure, EvalConfig, EvalState, run_program
from .parser import parse_program, parse_term
from .prelude import load_prelude
from .printer import render_program, render_stype, render_term
from .terms import Ok, type_of_term
from .typecheck import apply_type, check_program


def _build_argparser():
    ap = argparse.ArgumentParser(prog="stratcalc",
                                 description="typed strategic term rewriting")
    ap.add_argument("command", choices=["check", "run", "elaborate"])
    ap.add_argument("file")
    ap.add_argument("--term", help="input term (literal or path to a file)")
    ap.add_argument("--fuel", type=int, default=100000,
                    help="combinator expansions allowed; 0 means unlimited")
    ap.add_argument("--trace", action="store_true")
    ap.add_argument("--no-prelude", action="store_true")
    ap.add_argument("--prelude", help="replacement prelude file")
    return ap


def _load(args):
    prelude = None
    if args.prelude:
        with open(args.prelude) as f:
            prelude = parse_program(f.read(), require_main=False)
    elif not args.no_prelude:
        prelude = load_prelude()
    with open(args.file) as f:
        text = f.read()
    program = parse_program(text, prelude=prelude)
    return program, prelude


def main(argv=None):
    args = _build_argparser().parse_args(argv)
    try:
        program, prelude = _load(args)
    except ParseError as e:
        print(str(e), file=sys.stderr)
        return 4
    except StaticError as e:
        print(e.render(), file=sys.stderr)
        return 2

    diags, main_type = check_program(program)
    if diags:
        for d in diags:
            print(d.render(), file=sys.stderr)
        return 2

    if args.command == "check":
        print(render_stype(main_type))
        return 0

    if args.command == "elaborate":
        elaborated = elaborate_program(program)
        skip = set(prelude.definitions) if prelude is not None else ()
        sys.stdout.write(render_program(elaborated, skip_defs=skip))
        return 0

    # run
    if args.term is None:
        print("run needs --term", file=sys.stderr)
        return 2
    text = args.term
    if os.path.exists(text):
        with open(text) as f:
            text = f.read().strip()
    try:
        term = parse_term(text, program.context)
    except ParseError as e:
        print(str(e), file=sys.stderr)
        return 4
    except StaticError as e:
        print(e.render(), file=sys.stderr)
        return 2
    try:
        apply_type(program.context, main_type, type_of_term(program.context, term))
    except InapplicableType as e:
        print(e.render(), file=sys.stderr)
        return 2

    elaborated = elaborate_program(program)
    state = EvalState()
    cfg = EvalConfig(fuel=args.fuel, trace=args.trace)
    outcome = run_program(elaborated, term, cfg, state)
    if args.trace:
        for line in state.trace_lines:
            print(line, file=sys.stderr)
    if isinstance(outcome, Ok):
        print(render_term(outcome.term))
        return 0
    if isinstance(outcome, EngineFailure):
        print("%s: %s" % (outcome.kind, outcome.detail), file=sys.stderr)
        return 3 if outcome.kind == "FuelExhausted" else 5
    print("FAIL")
    return 1


if __name__ == "__main__":
    sys.exit(main())
