"""Machine assembly, initial states, and run execution with traces.

A machine couples a signature and multidomain with a frozen static frame,
initial values for the dynamic part, and one or more functionals (one for
deterministic machines, several for per-step bounded choice).  External
symbols get a fresh value every step from a choice source and are never
persisted in states.

A run stops in one of four ways: the status constant reaches ``acc`` or
``rej`` (halting), the functional is undefined at a go-status state
(stuck, recorded in the trace rather than in the algebra), or the step
budget runs out.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

from .errors import (
    BadBranch,
    ChoiceExhausted,
    ClassShapeError,
    CoverageError,
    EmaTypeError,
    MissingExternal,
    SignatureError,
    UnsupportedOperation,
)
from .algebra import (
    Domain,
    FiniteEnum,
    IntLine,
    MaybeElement,
    Naturals,
    PartialInterpretation,
    State,
    Status,
    Value,
    Words,
    element,
    render_value,
    validate_state,
    value_sort_key,
)
from .functional import (
    Presentation,
    UndefinedAt,
    Updates,
    apply_presentation,
    validate_presentation,
)
from .signature import STATUS_NAME, Signature, validate_signature

DEFAULT_MAX_STEPS = 10**6


@dataclass
class Ema:
    """An assembled machine: signature, domains, statics, initials, functionals."""

    signature: Signature
    domains: tuple[Domain, ...]
    statics: dict[str, PartialInterpretation]
    initials: dict[str, PartialInterpretation]
    functionals: tuple[Presentation, ...]

    def __post_init__(self):
        report = validate_signature(self.signature)
        if not report.ok:
            raise SignatureError("; ".join(report.violations))
        if len(self.domains) != self.signature.sort_count:
            raise CoverageError(
                f"{len(self.domains)} domains for {self.signature.sort_count} sorts"
            )
        if not isinstance(self.domains[-1], Status):
            raise CoverageError("last sort must carry the status domain")
        _require_cover(self.statics, [s.name for s in self.signature.static], "static")
        _require_cover(
            self.initials, [s.name for s in self.signature.dynamic], "dynamic"
        )
        if not self.functionals:
            raise CoverageError("a machine needs at least one functional")
        for p in self.functionals:
            validate_presentation(p, self.signature)

    @property
    def width(self) -> int:
        return len(self.functionals)


def _require_cover(mapping, names, label):
    missing = set(names) - mapping.keys()
    extra = mapping.keys() - set(names)
    if missing or extra:
        raise CoverageError(
            f"{label} interpretations missing {sorted(missing)}, extra {sorted(extra)}"
        )


@dataclass
class Input:
    """Interpretations for the two input parts of the signature.

    The dynamic part may omit the status constant; it then starts at
    ``go``.
    """

    static: dict[str, PartialInterpretation] = field(default_factory=dict)
    dynamic: dict[str, PartialInterpretation] = field(default_factory=dict)


# ---------------------------------------------------------------------------
# Choice sources


@dataclass(frozen=True)
class Scripted:
    """Replayable choices: branch indices and per-step external values.

    Branches default to 0 once the list runs out; running out of external
    values while external symbols still need them is an error.
    """

    branches: tuple[int, ...] = ()
    externals: tuple[dict, ...] = ()

    def start(self, ema: Ema) -> "_Drawer":
        return _ScriptedDrawer(self, ema)


@dataclass(frozen=True)
class Seeded:
    """Pseudo-random choices drawn deterministically from a seed.

    External naturals are drawn uniformly below ``external_bound``.
    """

    seed: int
    external_bound: int = 64

    def start(self, ema: Ema) -> "_Drawer":
        return _SeededDrawer(self, ema)


class _Drawer:
    def draw(self, t: int):  # pragma: no cover - interface stub
        raise NotImplementedError


class _ScriptedDrawer(_Drawer):
    def __init__(self, source: Scripted, ema: Ema):
        self.source = source
        self.ema = ema

    def draw(self, t: int):
        branches = self.source.branches
        branch = branches[t] if t < len(branches) else 0
        ext_syms = self.ema.signature.external
        values: dict[str, Value] = {}
        if ext_syms:
            if t >= len(self.source.externals):
                raise ChoiceExhausted(
                    f"scripted externals exhausted at step {t}"
                )
            supplied = self.source.externals[t]
            for sym in ext_syms:
                if sym.name not in supplied:
                    raise MissingExternal(
                        f"no scripted value for {sym.name!r} at step {t}"
                    )
                raw = supplied[sym.name]
                values[sym.name] = (
                    raw
                    if isinstance(raw, Value)
                    else Value(sym.sort_type.result, raw)
                )
        return branch, values


class _SeededDrawer(_Drawer):
    def __init__(self, source: Seeded, ema: Ema):
        self.source = source
        self.ema = ema
        self.rng = random.Random(source.seed)

    def draw(self, t: int):
        branch = self.rng.randrange(self.ema.width)
        values: dict[str, Value] = {}
        bound = self.source.external_bound
        for sym in self.ema.signature.external:
            sort = sym.sort_type.result
            dom = self.ema.domains[sort - 1]
            if isinstance(dom, Naturals):
                payload = self.rng.randrange(bound)
            elif isinstance(dom, IntLine):
                payload = self.rng.randrange(-bound, bound)
            elif isinstance(dom, (FiniteEnum, Status)):
                payload = dom.labels[self.rng.randrange(len(dom.labels))]
            else:
                raise UnsupportedOperation(
                    f"cannot draw seeded values for external {sym.name!r}"
                )
            values[sym.name] = Value(sort, payload)
        return branch, values


# ---------------------------------------------------------------------------
# Traces


@dataclass(frozen=True)
class Outcome:
    kind: str  # Accepted | Rejected | Stuck | StepLimit
    reason: Optional[str] = None

    def render(self) -> str:
        if self.kind == "Stuck":
            return f"Stuck:{self.reason}"
        return self.kind


ACCEPTED = Outcome("Accepted")
REJECTED = Outcome("Rejected")
STEP_LIMIT = Outcome("StepLimit")


@dataclass
class Trace:
    states: list[State]
    outcome: Outcome

    @property
    def steps(self) -> int:
        return len(self.states) - 1


# ---------------------------------------------------------------------------
# Execution


def init_state(ema: Ema, inp: Input) -> State:
    """Assemble the step-0 state from statics, initials, and the input."""
    sig = ema.signature
    _require_cover(
        inp.static, [s.name for s in sig.static_input], "static input"
    )
    interps: dict[str, PartialInterpretation] = {}
    interps.update(ema.statics)
    interps.update(ema.initials)
    interps.update(inp.static)
    dyn_names = {s.name for s in sig.dynamic_input}
    extra = inp.dynamic.keys() - dyn_names
    if extra:
        raise CoverageError(f"dynamic input names {sorted(extra)} not in signature")
    for sym in sig.dynamic_input:
        if sym.name in inp.dynamic:
            interps[sym.name] = inp.dynamic[sym.name]
        elif sym.name == STATUS_NAME:
            interps[sym.name] = element(sym, Value(sig.status_sort, "go"))
        else:
            raise CoverageError(f"dynamic input missing {sym.name!r}")
    for sym in sig.external:
        interps[sym.name] = element(sym, None)
    state = State(sig, ema.domains, interps)
    validate_state(state)
    return state


@dataclass
class StepOutcome:
    kind: str  # next | halted | stuck
    state: Optional[State] = None
    status: Optional[str] = None
    reason: Optional[UndefinedAt] = None


def step(
    ema: Ema,
    state: State,
    choice: int = 0,
    externals: Optional[dict[str, Value]] = None,
) -> StepOutcome:
    """Fire one functional application, or report halting/stuckness."""
    status = state.status()
    if status != "go":
        return StepOutcome("halted", status=status)
    if not 0 <= choice < ema.width:
        raise BadBranch(f"branch {choice} out of range 0..{ema.width - 1}")
    externals = externals or {}
    replacements = {}
    for sym in ema.signature.external:
        if sym.name not in externals:
            raise MissingExternal(f"no value supplied for external {sym.name!r}")
        v = externals[sym.name]
        if v.sort != sym.sort_type.result:
            raise EmaTypeError(
                f"external {sym.name!r} expects sort {sym.sort_type.result}"
            )
        replacements[sym.name] = element(sym, v)
    probe = state.with_interps(replacements) if replacements else state
    result = apply_presentation(probe, ema.functionals[choice])
    if isinstance(result, UndefinedAt):
        return StepOutcome("stuck", reason=result)
    assert isinstance(result, Updates)
    deltas = {
        name: (delta.z, delta.g) for name, delta in result.per_symbol.items()
    }
    return StepOutcome("next", state=state.with_updates(deltas))


def run(
    ema: Ema,
    inp: Input,
    choices=None,
    max_steps: int = DEFAULT_MAX_STEPS,
) -> Trace:
    """Iterate steps from the initial state; deterministic given its inputs."""
    drawer = (choices or Scripted()).start(ema)
    states = [init_state(ema, inp)]
    t = 0
    while True:
        status = states[-1].status()
        if status == "acc":
            return Trace(states, ACCEPTED)
        if status == "rej":
            return Trace(states, REJECTED)
        if t >= max_steps:
            return Trace(states, STEP_LIMIT)
        branch, externals = drawer.draw(t)
        out = step(ema, states[-1], branch, externals)
        if out.kind == "stuck":
            return Trace(states, Outcome("Stuck", out.reason.kind))
        assert out.kind == "next"
        states.append(out.state)
        t += 1


# ---------------------------------------------------------------------------
# Reachability over external choice (grammar-shaped machines)


def reachable_words(ema: Ema, inp: Input, depth: int) -> tuple[Value, ...]:
    """All values the word constant can reach within ``depth`` steps.

    Breadth-first over every branch choice and every external position
    that can touch the word; positions at or past the end leave the word
    unchanged, so only in-word positions are explored.
    """
    sig = ema.signature
    word_syms = [
        s
        for s in sig.updatable()
        if s.sort_type.arity == 0
        and isinstance(ema.domains[s.sort_type.result - 1], Words)
    ]
    if len(word_syms) != 1:
        raise ClassShapeError(
            f"need exactly one word-sorted dynamic constant, found {len(word_syms)}"
        )
    word_sym = word_syms[0]
    if len(sig.external) > 1:
        raise ClassShapeError("at most one external choice symbol is supported")
    ext = sig.external[0] if sig.external else None
    if ext is not None and not isinstance(
        ema.domains[ext.sort_type.result - 1], Naturals
    ):
        raise ClassShapeError("the external choice symbol must range over naturals")

    base = init_state(ema, inp)
    start = base.value_of(word_sym.name)
    if start is None:
        raise ClassShapeError("the word constant must start defined")

    seen = {start}
    frontier = [start]
    for _ in range(depth):
        next_frontier = []
        for w in frontier:
            state = base.with_updates(
                {word_sym.name: (frozenset({()}), {(): w})}
            )
            positions = range(max(len(w.payload), 1)) if ext else (None,)
            for branch in range(ema.width):
                for pos in positions:
                    externals = (
                        {ext.name: Value(ext.sort_type.result, pos)} if ext else {}
                    )
                    out = step(ema, state, branch, externals)
                    if out.kind != "next":
                        continue
                    w2 = out.state.value_of(word_sym.name)
                    if w2 is not None and w2 not in seen:
                        seen.add(w2)
                        next_frontier.append(w2)
        frontier = next_frontier
        if not frontier:
            break
    return tuple(sorted(seen, key=lambda v: value_sort_key(ema.domains, v)))


# ---------------------------------------------------------------------------
# Trace rendering


def render_interp(domains, pi: PartialInterpretation) -> str:
    from .algebra import Builtin, DefaultedTable, FiniteTable

    body = pi.body
    if isinstance(body, MaybeElement):
        return "!" if body.value is None else render_value(domains, body.value)
    if isinstance(body, DefaultedTable):
        norm = body.normalized()
        items = sorted(
            norm.exceptions.items(),
            key=lambda kv: tuple(value_sort_key(domains, a) for a in kv[0]),
        )
        parts = [
            ",".join(render_value(domains, a) for a in args)
            + "->"
            + ("!" if v is None else render_value(domains, v))
            for args, v in items
        ]
        parts.append("*->" + render_value(domains, norm.default))
        return "{" + ",".join(parts) + "}"
    if isinstance(body, FiniteTable):
        items = sorted(
            body.entries.items(),
            key=lambda kv: tuple(value_sort_key(domains, a) for a in kv[0]),
        )
        parts = [
            ",".join(render_value(domains, a) for a in args)
            + "->"
            + render_value(domains, v)
            for args, v in items
        ]
        return "{" + ",".join(parts) + "}"
    if isinstance(body, Builtin):
        return f"<{body.kind}>"
    return repr(body)


def render_trace(trace: Trace) -> str:
    """One line per state, dynamic symbols only, plus the outcome line."""
    lines = []
    for t, state in enumerate(trace.states):
        sig = state.signature
        shown = [s for s in sig.updatable() if s.name != STATUS_NAME]
        fields = ";".join(
            f"{s.name}={render_interp(state.domains, state.interps[s.name])}"
            for s in shown
        )
        line = f"t={t} status={state.status()}"
        if fields:
            line += " " + fields
        lines.append(line)
    lines.append(f"outcome={trace.outcome.render()} steps={trace.steps}")
    return "\n".join(lines) + "\n"
