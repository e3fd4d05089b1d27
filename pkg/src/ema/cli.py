"""Command-line front end: run, translate, check, compare.

Exit codes: runs map outcomes to 0 (accepted), 1 (rejected), 2 (stuck),
3 (step limit); translation out of class is 4; usage errors are 64 and
unreadable or invalid files are 65.  Results go to stdout, diagnostics to
stderr.
"""

from __future__ import annotations

import argparse
import random
import sys

from .classes import check_class
from .documents import (
    InputSpec,
    dump_path,
    load_path,
    resolve_input_for_ema,
)
from .engine import DEFAULT_MAX_STEPS, Scripted, Seeded, render_trace, run
from .errors import ClassViolationError, DocumentError, EmaError
from .machines import grammar_step, tm_run, tram_run
from .translate import (
    ema_to_grammar,
    ema_to_tm,
    ema_to_tram,
    grammar_to_ema,
    lockstep_grammar,
    lockstep_tm,
    lockstep_tram,
    tm_to_ema,
    tram_to_ema,
)

EXIT_OK = 0
EXIT_REJECTED = 1
EXIT_STUCK = 2
EXIT_STEP_LIMIT = 3
EXIT_CLASS = 4
EXIT_USAGE = 64
EXIT_BAD_FILE = 65

_OUTCOME_EXITS = {
    "Accepted": EXIT_OK,
    "Rejected": EXIT_REJECTED,
    "Stuck": EXIT_STUCK,
    "StepLimit": EXIT_STEP_LIMIT,
    "accept": EXIT_OK,
    "reject": EXIT_REJECTED,
    "stuck": EXIT_STUCK,
    "step_limit": EXIT_STEP_LIMIT,
}


class UsageError(EmaError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="ema", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a machine file and print its trace")
    p_run.add_argument("file")
    p_run.add_argument("--input")
    p_run.add_argument("--max-steps", type=int, default=DEFAULT_MAX_STEPS)
    p_run.add_argument("--choices")
    p_run.add_argument("--seed", type=int)
    p_run.add_argument("--trace", help="also write the trace to this path")
    p_run.add_argument("--reachable-depth", type=int)

    p_tr = sub.add_parser("translate", help="translate between machine kinds")
    p_tr.add_argument("--from", dest="src", required=True,
                      choices=("tm", "tram", "grammar", "ema"))
    p_tr.add_argument("--to", dest="dst", required=True,
                      choices=("tm", "tram", "grammar", "ema"))
    p_tr.add_argument("infile")
    p_tr.add_argument("outfile")

    p_chk = sub.add_parser("check", help="check class membership")
    p_chk.add_argument("--class", dest="class_id", required=True,
                       choices=("wt", "tram", "gra"))
    p_chk.add_argument("file")

    p_cmp = sub.add_parser("compare", help="lockstep-compare a machine and an ema")
    p_cmp.add_argument("--machine", required=True)
    p_cmp.add_argument("--ema", dest="ema_file", required=True)
    p_cmp.add_argument("--input")
    p_cmp.add_argument("--max-steps", type=int, default=1000)
    p_cmp.add_argument("--choices")
    p_cmp.add_argument("--seed", type=int, default=0)
    return parser


def _load_input(path) -> InputSpec:
    if path is None:
        return InputSpec()
    _, spec = load_path(path, ("input",))
    return spec


def _machine_exit(outcome: str) -> int:
    return _OUTCOME_EXITS[outcome]


def _render_tm_trace(trace) -> str:
    lines = []
    for t, cfg in enumerate(trace.configs):
        tapes = []
        for i, tape in enumerate(cfg.tapes, start=1):
            cells = ",".join(f"{p}->{x}" for p, x in sorted(tape.items()))
            tapes.append(f"head{i}={cfg.heads[i - 1]} tape{i}={{{cells}}}")
        lines.append(f"t={t} state={cfg.state} " + " ".join(tapes))
    lines.append(f"outcome={_render_machine_outcome(trace.outcome)} steps={trace.steps}")
    return "\n".join(lines) + "\n"


def _render_tram_trace(trace) -> str:
    lines = []
    for t, cfg in enumerate(trace.configs):
        cells = ",".join(f"{a}->{v}" for a, v in sorted(cfg.memory.items()))
        lines.append(f"t={t} state={cfg.state} memory={{{cells}}}")
    lines.append(f"outcome={_render_machine_outcome(trace.outcome)} steps={trace.steps}")
    return "\n".join(lines) + "\n"


def _render_machine_outcome(outcome: str) -> str:
    return {
        "accept": "Accepted",
        "reject": "Rejected",
        "stuck": "Stuck:transition-undefined",
        "step_limit": "StepLimit",
    }[outcome]


def _grammar_script(args, width: int, steps: int):
    if args.choices:
        _, source = load_path(args.choices, ("choices",))
        script = []
        for t in range(min(steps, len(source.branches), len(source.externals))):
            ext = source.externals[t]
            if "Choose" not in ext:
                raise DocumentError("choices document must script 'Choose'")
            script.append((source.branches[t], ext["Choose"]))
        return script
    rng = random.Random(args.seed or 0)
    return [(rng.randrange(width), rng.randrange(64)) for _ in range(steps)]


def _cmd_run(args) -> int:
    kind, obj = load_path(args.file, ("ema", "tm", "tram", "grammar"))
    spec = _load_input(args.input)

    if args.reachable_depth is not None:
        if kind != "ema":
            raise UsageError("--reachable-depth needs an ema file")
        from .engine import reachable_words
        from .algebra import render_value

        inp = resolve_input_for_ema(spec, obj)
        words = reachable_words(obj, inp, args.reachable_depth)
        out = "\n".join(render_value(obj.domains, w).strip('"') for w in words)
        print(out)
        return EXIT_OK

    if kind == "ema":
        if args.choices:
            _, choices = load_path(args.choices, ("choices",))
        elif args.seed is not None:
            choices = Seeded(args.seed)
        else:
            choices = Scripted()
        inp = resolve_input_for_ema(spec, obj)
        trace = run(obj, inp, choices=choices, max_steps=args.max_steps)
        text = render_trace(trace)
        exit_code = _OUTCOME_EXITS[trace.outcome.kind]
    elif kind == "tm":
        trace = tm_run(obj, spec.word or (), args.max_steps)
        text = _render_tm_trace(trace)
        exit_code = _machine_exit(trace.outcome)
    elif kind == "tram":
        trace = tram_run(obj, spec.memory or {}, args.max_steps)
        text = _render_tram_trace(trace)
        exit_code = _machine_exit(trace.outcome)
    else:  # grammar: replay a scripted rewrite sequence
        script = _grammar_script(args, len(obj.rules), args.max_steps)
        word = tuple(spec.word or ())
        lines = [f't=0 w="{"".join(word)}"']
        for t, (rule, pos) in enumerate(script, start=1):
            if rule >= len(obj.rules):
                raise UsageError(f"branch {rule} out of range for the grammar")
            word = grammar_step(obj, word, rule, pos)
            lines.append(f't={t} w="{"".join(word)}"')
        lines.append(f"outcome=StepLimit steps={len(script)}")
        text = "\n".join(lines) + "\n"
        exit_code = EXIT_STEP_LIMIT

    sys.stdout.write(text)
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as fh:
            fh.write(text)
    return exit_code


_TRANSLATIONS = {
    ("tm", "ema"): tm_to_ema,
    ("ema", "tm"): ema_to_tm,
    ("tram", "ema"): tram_to_ema,
    ("ema", "tram"): ema_to_tram,
    ("grammar", "ema"): grammar_to_ema,
    ("ema", "grammar"): ema_to_grammar,
}


def _cmd_translate(args) -> int:
    fn = _TRANSLATIONS.get((args.src, args.dst))
    if fn is None:
        raise UsageError(f"cannot translate {args.src} to {args.dst}")
    _, obj = load_path(args.infile, (args.src,))
    try:
        out = fn(obj)
    except ClassViolationError as exc:
        sys.stderr.write(exc.report.render() + "\n")
        return EXIT_CLASS
    dump_path(args.outfile, out)
    return EXIT_OK


def _cmd_check(args) -> int:
    _, ema = load_path(args.file, ("ema",))
    report = check_class(ema, args.class_id)
    print(report.render())
    return EXIT_OK if report.ok else 1


def _cmd_compare(args) -> int:
    mkind, machine = load_path(args.machine, ("tm", "tram", "grammar"))
    _, ema = load_path(args.ema_file, ("ema",))
    spec = _load_input(args.input)
    try:
        if mkind == "tm":
            report = lockstep_tm(machine, ema, spec.word or (), args.max_steps)
        elif mkind == "tram":
            report = lockstep_tram(machine, ema, spec.memory or {}, args.max_steps)
        else:
            script = _grammar_script(args, len(machine.rules), args.max_steps)
            report = lockstep_grammar(machine, ema, spec.word or (), script)
    except ClassViolationError as exc:
        sys.stderr.write(exc.report.render() + "\n")
        return EXIT_CLASS
    if report.equivalent:
        print(f"equivalent for {report.steps} steps")
        return EXIT_OK
    print(f"divergence: {report.detail}")
    return 1


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "translate":
            return _cmd_translate(args)
        if args.command == "check":
            return _cmd_check(args)
        if args.command == "compare":
            return _cmd_compare(args)
        raise UsageError(f"unknown command {args.command!r}")
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except DocumentError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_BAD_FILE
    except ClassViolationError as exc:
        sys.stderr.write(exc.report.render() + "\n")
        return EXIT_CLASS
    except EmaError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_BAD_FILE


if __name__ == "__main__":
    sys.exit(main())
