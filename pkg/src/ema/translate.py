"""Bidirectional translators between machine models and their classes.

Each machine model compiles to a canonical member of its class, and every
class member in canonical form decompiles back to the machine, making the
two readings of one device interchangeable:

  - window machine -> class member: one guard per state test and per
    (tape, offset, letter) window test; one table row per local
    configuration.  Transitions write the state, status, every window
    cell and every head offset explicitly; halting configurations write
    only the status; missing transitions compile to a clash pair (two
    updates aimed at the same cell), the one in-signature way to leave
    the functional undefined at exactly those valuations.
  - class member -> window machine: probe one concrete state per local
    configuration (heads at 0, tape holding the window) and read the
    fired updates back off as transition table entries.
  - transition RAM <-> class member: the same scheme over control state
    plus Boolean test vectors, with update terms mapped symbolically
    between arithmetic terms and ground terms over the addressed
    registers (no concrete probing; the memory is unbounded).
  - grammar <-> class member: one functional per rule rewriting the word
    through its substitution symbol at an externally chosen position;
    the rules live verbatim in the substitution builtins.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .algebra import (
    DefaultedTable,
    PartialInterpretation,
    State,
    Value,
    element,
)
from .classes import (
    ClassReport,
    GRA_NAT_SORT,
    check_class,
    gra_domains,
    gra_input,
    gra_signature,
    gra_statics,
    tram_domains,
    tram_initials,
    tram_input,
    tram_signature,
    tram_statics,
    wt_domains,
    wt_initials,
    wt_input,
    wt_signature,
    wt_statics,
)
from .engine import Ema, Scripted, run
from .errors import ClassViolationError, UnsupportedOperation
from .functional import (
    BetaRow,
    BetaTable,
    GuardPair,
    Presentation,
    UndefinedAt,
    apply_presentation,
    normalize_presentation,
    presentation_normal_equal,
)
from .machines import (
    Content,
    Grammar,
    MachineTrace,
    OpApply,
    Tram,
    WindowTm,
    boolean_test_count,
    grammar_step,
    tm_run,
    tram_run,
)
from .signature import STATUS_NAME, GroundTerm, term


def _violation(class_id: str, message: str) -> ClassViolationError:
    return ClassViolationError(
        ClassReport(class_id, False, {}, (("shape", message),))
    )


def _require_class(ema: Ema, class_id: str) -> ClassReport:
    report = check_class(ema, class_id)
    if not report.ok:
        raise ClassViolationError(report)
    return report


def normalize_ema(ema: Ema) -> Ema:
    """Normalize every functional; statics and initials are already value-like."""
    return Ema(
        ema.signature,
        ema.domains,
        ema.statics,
        ema.initials,
        tuple(normalize_presentation(p) for p in ema.functionals),
    )


def emas_normal_equal(a: Ema, b: Ema) -> bool:
    """Structural equality up to presentation normalization."""
    if (
        a.signature != b.signature
        or a.domains != b.domains
        or a.statics != b.statics
        or a.initials != b.initials
        or len(a.functionals) != len(b.functionals)
    ):
        return False
    return all(
        presentation_normal_equal(pa, pb)
        for pa, pb in zip(a.functionals, b.functionals)
    )


# ---------------------------------------------------------------------------
# Window machines


class _WtTerms:
    """Shared ground-term pool for one window-machine shape."""

    def __init__(self, n: int, k: int, r: int, s: int):
        self.n, self.k, self.r, self.s = n, k, r, s
        self.offsets = range(-k, k + 1)
        self.off: dict[tuple[int, int], GroundTerm] = {}
        for i in range(1, n + 1):
            self.off[(i, 0)] = term(f"pos{i}")
            for o in range(1, k + 1):
                self.off[(i, o)] = term(f"Succ{i}", self.off[(i, o - 1)])
                self.off[(i, -o)] = term(f"Pred{i}", self.off[(i, -(o - 1))])
        self.cell = {
            (i, o): term(f"c{i}", self.off[(i, o)])
            for i in range(1, n + 1)
            for o in self.offsets
        }
        self.qconst = tuple(term(f"q{j}") for j in range(r))
        self.sigma = tuple(term(f"sigma{l}") for l in range(s))
        self.q = term("q")
        self.go = term("go")
        self.acc = term("acc")
        self.rej = term("rej")

    def guards(self) -> tuple[GuardPair, ...]:
        out = [GuardPair(self.q, self.qconst[j]) for j in range(self.r)]
        for i in range(1, self.n + 1):
            for o in self.offsets:
                for l in range(self.s):
                    out.append(GuardPair(self.cell[(i, o)], self.sigma[l]))
        return tuple(out)

    def pattern(self, j: int, windows: tuple[tuple[int, ...], ...]) -> str:
        bits = ["1" if jj == j else "0" for jj in range(self.r)]
        for i in range(1, self.n + 1):
            for o in self.offsets:
                letter = windows[i - 1][o + self.k]
                bits.extend(
                    "1" if l == letter else "0" for l in range(self.s)
                )
        return "".join(bits)

    def clash_pair(self):
        # Two distinct updates aimed at the scanned cell of tape 1: the
        # canonical way to make the step undefined at one valuation.
        from .functional import UpdateTuple

        point = (self.off[(1, 0)],)
        return (
            UpdateTuple(point, self.sigma[0]),
            UpdateTuple(point, self.cell[(1, 0)]),
        )


def tm_to_ema(m: WindowTm) -> Ema:
    """Compile a window machine into its canonical class member."""
    from .functional import UpdateTuple

    n, k = m.tapes, m.radius
    r, s = len(m.states), len(m.alphabet)
    pool = _WtTerms(n, k, r, s)
    sig = wt_signature(n, r, s)
    state_index = {q: j for j, q in enumerate(m.states)}
    letter_index = {x: l for l, x in enumerate(m.alphabet)}

    rows: dict[str, list[BetaRow]] = {s.name: [] for s in sig.updatable()}
    for j in range(r):
        for widx in itertools.product(
            *[range(s)] * (n * (2 * k + 1))
        ):
            windows = tuple(
                widx[(i - 1) * (2 * k + 1) : i * (2 * k + 1)]
                for i in range(1, n + 1)
            )
            mcfg = (
                m.states[j],
                tuple(
                    tuple(m.alphabet[l] for l in w) for w in windows
                ),
            )
            pattern = pool.pattern(j, windows)
            updates: dict[str, tuple] = {name: () for name in rows}
            if mcfg in m.accept:
                updates[STATUS_NAME] = (UpdateTuple((), pool.acc),)
            elif mcfg in m.reject:
                updates[STATUS_NAME] = (UpdateTuple((), pool.rej),)
            elif mcfg in m.delta:
                updates[STATUS_NAME] = (UpdateTuple((), pool.go),)
                updates["q"] = (
                    UpdateTuple((), pool.qconst[state_index[m.delta[mcfg]]]),
                )
                for i in range(1, n + 1):
                    updates[f"pos{i}"] = (
                        UpdateTuple((), pool.off[(i, m.moves[mcfg][i - 1])]),
                    )
                    updates[f"c{i}"] = tuple(
                        UpdateTuple(
                            (pool.off[(i, o)],),
                            pool.sigma[letter_index[m.writes[mcfg][i - 1][o + k]]],
                        )
                        for o in pool.offsets
                    )
            else:
                updates["c1"] = pool.clash_pair()
            for name in rows:
                rows[name].append(BetaRow(pattern, updates[name]))

    q_total = len(pool.guards())
    tables = []
    for name in sorted(rows):
        catch_all = pool.clash_pair() if name == "c1" else ()
        tables.append(
            BetaTable(
                name, tuple(rows[name]) + (BetaRow("*" * q_total, catch_all),)
            )
        )
    return Ema(
        sig,
        wt_domains(n, r, s),
        wt_statics(sig, n, r, s),
        wt_initials(sig, n),
        (Presentation(pool.guards(), tuple(tables)),),
    )


def ema_to_tm(ema: Ema) -> WindowTm:
    """Decompile a class member by probing one state per local configuration.

    The window radius is the largest head offset named anywhere in the
    functional; each probe pins the heads at 0 with the candidate window
    written around them, and the fired updates are read back off as the
    machine's transition entries.
    """
    report = _require_class(ema, "wt")
    n, k = report.parameters["n"], report.parameters["k"]
    r, s = report.parameters["r"], report.parameters["s"]
    sig = ema.signature
    qsort, ssort, stsort = n + 1, n + 2, n + 3
    qlabels = ema.domains[n].labels
    slabels = ema.domains[n + 1].labels
    p = ema.functionals[0]
    blank = Value(ssort, slabels[0])

    accept, reject = set(), set()
    delta, writes, moves = {}, {}, {}

    base = dict(ema.statics)
    base["q"] = element(sig.symbol("q"), None)
    base[STATUS_NAME] = element(sig.symbol(STATUS_NAME), Value(stsort, "go"))

    for j in range(r):
        for widx in itertools.product(*[range(s)] * (n * (2 * k + 1))):
            windows = tuple(
                widx[(i - 1) * (2 * k + 1) : i * (2 * k + 1)]
                for i in range(1, n + 1)
            )
            interps = dict(base)
            interps["q"] = element(sig.symbol("q"), Value(qsort, qlabels[j]))
            for i in range(1, n + 1):
                exceptions = {
                    (Value(i, o),): Value(ssort, slabels[l])
                    for o, l in zip(range(-k, k + 1), windows[i - 1])
                    if l != 0
                }
                interps[f"pos{i}"] = element(sig.symbol(f"pos{i}"), Value(i, 0))
                interps[f"c{i}"] = PartialInterpretation(
                    sig.symbol(f"c{i}"), DefaultedTable(blank, exceptions)
                )
            probe = State(sig, ema.domains, interps)
            result = apply_presentation(probe, p)
            lc = (
                qlabels[j],
                tuple(tuple(slabels[l] for l in w) for w in windows),
            )
            if isinstance(result, UndefinedAt):
                continue  # outside the machine's transition domain
            per = result.per_symbol
            status_label = "go"
            if STATUS_NAME in per:
                g = per[STATUS_NAME].g
                if () not in g:
                    raise UnsupportedOperation(
                        "a step may not leave the status undefined"
                    )
                status_label = g[()].payload
            if status_label == "acc":
                accept.add(lc)
                continue
            if status_label == "rej":
                reject.add(lc)
                continue
            new_state = lc[0]
            if "q" in per:
                g = per["q"].g
                if () not in g:
                    raise UnsupportedOperation("a step may not delete the state")
                new_state = g[()].payload
            delta[lc] = new_state
            mv, ws = [], []
            for i in range(1, n + 1):
                offset = 0
                name = f"pos{i}"
                if name in per:
                    g = per[name].g
                    if () not in g:
                        raise UnsupportedOperation("a step may not delete a head")
                    offset = g[()].payload
                mv.append(offset)
                window = list(lc[1][i - 1])
                cname = f"c{i}"
                if cname in per:
                    d = per[cname]
                    for args in d.z:
                        if args not in d.g:
                            raise UnsupportedOperation(
                                "a step may not delete a tape cell"
                            )
                        window[args[0].payload + k] = d.g[args].payload
                ws.append(tuple(window))
            moves[lc] = tuple(mv)
            writes[lc] = tuple(ws)

    return WindowTm(
        tapes=n,
        radius=k,
        alphabet=slabels,
        states=qlabels,
        accept=frozenset(accept),
        reject=frozenset(reject),
        delta=delta,
        writes=writes,
        moves=moves,
    )


# ---------------------------------------------------------------------------
# Transition RAMs


class _TramTerms:
    """Shared ground-term pool for one transition-RAM shape."""

    def __init__(self, n: int, k: int, r: int):
        self.n, self.k, self.r = n, k, r
        self.targets = [
            (i, j) for i in range(1, n + 1) for j in range(k + 1)
        ]
        self.addr: dict[tuple[int, int], GroundTerm] = {}
        self.content: dict[tuple[int, int], GroundTerm] = {}
        for i in range(1, n + 1):
            self.addr[(i, 0)] = term("cast", term(f"reg{i}"))
            self.content[(i, 0)] = term("c", self.addr[(i, 0)])
            for j in range(1, k + 1):
                self.addr[(i, j)] = term("cast", self.content[(i, j - 1)])
                self.content[(i, j)] = term("c", self.addr[(i, j)])
        self.zero = term("zero")
        self.qconst = tuple(term(f"q{j}") for j in range(r))
        self.q = term("q")
        self.go = term("go")
        self.acc = term("acc")
        self.rej = term("rej")

    def guards(self) -> tuple[GuardPair, ...]:
        out = [GuardPair(self.q, self.qconst[j]) for j in range(self.r)]
        for tgt in self.targets:
            out.append(GuardPair(self.content[tgt], self.zero))
        for a, b in itertools.combinations(self.targets, 2):
            out.append(GuardPair(self.content[a], self.content[b]))
        return tuple(out)

    def pattern(self, j: int, bools: str) -> str:
        return "".join("1" if jj == j else "0" for jj in range(self.r)) + bools

    def clash_pair(self):
        from .functional import UpdateTuple

        point = (self.addr[(1, 0)],)
        return (
            UpdateTuple(point, self.zero),
            UpdateTuple(point, self.content[(1, 0)]),
        )


def tram_to_ema(t: Tram) -> Ema:
    """Compile a transition RAM into its canonical class member."""
    from .functional import UpdateTuple

    if "zero" not in t.ops:
        raise UnsupportedOperation(
            "compiling zero tests needs the nullary zero operation in the catalog"
        )
    n, k, r = t.registers, t.depth, len(t.states)
    b = boolean_test_count(n, k)
    pool = _TramTerms(n, k, r)
    sig = tram_signature(n, t.ops, r)
    state_index = {q: j for j, q in enumerate(t.states)}

    def arith_to_term(a) -> GroundTerm:
        if isinstance(a, Content):
            return pool.content[(a.base, a.depth)]
        return term(a.op, *(arith_to_term(x) for x in a.args))

    rows: dict[str, list[BetaRow]] = {"c": [], "q": [], STATUS_NAME: []}
    for j in range(r):
        for combo in itertools.product("01", repeat=b):
            bools = "".join(combo)
            key = (t.states[j], bools)
            pattern = pool.pattern(j, bools)
            updates = {"c": (), "q": (), STATUS_NAME: ()}
            if key in t.accept:
                updates[STATUS_NAME] = (UpdateTuple((), pool.acc),)
            elif key in t.reject:
                updates[STATUS_NAME] = (UpdateTuple((), pool.rej),)
            elif key in t.delta:
                updates[STATUS_NAME] = (UpdateTuple((), pool.go),)
                updates["q"] = (
                    UpdateTuple((), pool.qconst[state_index[t.delta[key]]]),
                )
                updates["c"] = tuple(
                    UpdateTuple(
                        (pool.addr[tgt],), arith_to_term(t.writes[key][tgt])
                    )
                    for tgt in pool.targets
                )
            else:
                updates["c"] = pool.clash_pair()
            for name in rows:
                rows[name].append(BetaRow(pattern, updates[name]))

    q_total = r + b
    tables = []
    for name in sorted(rows):
        catch_all = pool.clash_pair() if name == "c" else ()
        tables.append(
            BetaTable(
                name, tuple(rows[name]) + (BetaRow("*" * q_total, catch_all),)
            )
        )
    return Ema(
        sig,
        tram_domains(r),
        tram_statics(sig, n, t.ops, r),
        tram_initials(sig),
        (Presentation(pool.guards(), tuple(tables)),),
    )


def _solve_tram_depth(n: int, guard_count: int, r: int) -> Optional[int]:
    for k in range(0, 64):
        if r + boolean_test_count(n, k) == guard_count:
            return k
        if r + boolean_test_count(n, k) > guard_count:
            return None
    return None


def ema_to_tram(ema: Ema) -> Tram:
    """Decompile a class member by enumerating (state, test vector) pairs.

    The memory is unbounded so nothing is probed concretely: the selected
    row per pair is read symbolically, with update targets matched against
    the addressed-register terms and value terms mapped back onto the
    machine's arithmetic term family.
    """
    report = _require_class(ema, "tram")
    n, r = report.parameters["n"], report.parameters["r"]
    ops = report.parameters["ops"]
    sig = ema.signature
    qlabels = ema.domains[2].labels
    p = ema.functionals[0]

    k = _solve_tram_depth(n, len(p.guards), r)
    if k is None:
        raise _violation(
            "tram", "guard count does not fit any addressing depth"
        )
    pool = _TramTerms(n, k, r)
    if p.guards != pool.guards():
        raise _violation(
            "tram",
            "guards are not the canonical state, zero and equality tests",
        )
    b = boolean_test_count(n, k)
    addr_target = {t: tgt for tgt, t in pool.addr.items()}
    content_target = {t: tgt for tgt, t in pool.content.items()}
    tables = {t.symbol: t for t in p.tables}

    def term_to_arith(tm: GroundTerm):
        if tm in content_target:
            return Content(*content_target[tm])
        if tm.head in ops:
            return OpApply(tm.head, tuple(term_to_arith(a) for a in tm.args))
        raise _violation(
            "tram",
            f"update value {tm.head!r} is outside the machine's term family",
        )

    accept, reject = set(), set()
    delta, writes = {}, {}
    for j in range(r):
        for combo in itertools.product("01", repeat=b):
            bools = "".join(combo)
            bits = pool.pattern(j, bools)
            key = (qlabels[j], bools)

            status_row = tables[STATUS_NAME].row_for(bits)
            status_label = "go"
            for u in status_row.updates:
                head = u.value.head if isinstance(u.value, GroundTerm) else None
                if head in ("go", "acc", "rej"):
                    status_label = head
                elif head == STATUS_NAME:
                    status_label = "go"
                else:
                    raise _violation(
                        "tram", "status updates must use the status constants"
                    )
            if status_label == "acc":
                accept.add(key)
                continue
            if status_label == "rej":
                reject.add(key)
                continue

            c_row = tables["c"].row_for(bits)
            seen_args = set()
            clashed = False
            entries = {}
            for u in c_row.updates:
                arg = u.args[0]
                if arg in seen_args:
                    clashed = True
                    break
                seen_args.add(arg)
                if arg not in addr_target:
                    raise _violation(
                        "tram",
                        "updates must target addressed registers within the depth",
                    )
                entries[addr_target[arg]] = term_to_arith(u.value)
            if clashed:
                continue  # undefined at this pair: outside the transition domain

            q_row = tables["q"].row_for(bits)
            new_state = qlabels[j]
            for u in q_row.updates:
                head = u.value.head if isinstance(u.value, GroundTerm) else None
                if head in qlabels:
                    new_state = head
                elif head == "q":
                    new_state = qlabels[j]
                else:
                    raise _violation(
                        "tram", "state updates must use the state constants"
                    )
            for tgt in pool.targets:
                entries.setdefault(tgt, Content(*tgt))
            delta[key] = new_state
            writes[key] = entries

    return Tram(
        registers=n,
        depth=k,
        ops=ops,
        states=qlabels,
        accept=frozenset(accept),
        reject=frozenset(reject),
        delta=delta,
        writes=writes,
    )


# ---------------------------------------------------------------------------
# Grammars


def grammar_to_ema(g: Grammar) -> Ema:
    """Compile a grammar: one functional per rule, choosing the position
    through the external symbol."""
    from .functional import UpdateTuple

    count = len(g.rules)
    if count < 1:
        raise UnsupportedOperation("a grammar needs at least one rule")
    sig = gra_signature(count)
    domains = gra_domains(g.alphabet)
    choose = term("Choose")
    w = term("w")
    functionals = []
    for i in range(1, count + 1):
        rewrite = UpdateTuple((), term(f"subst{i}", choose, w))
        tables = (
            BetaTable(STATUS_NAME, (BetaRow("", ()),)),
            BetaTable("w", (BetaRow("", (rewrite,)),)),
        )
        functionals.append(Presentation((), tables))
    return Ema(sig, domains, gra_statics(sig, g.rules), {}, tuple(functionals))


def ema_to_grammar(ema: Ema) -> Grammar:
    """Read the rule pairs back out of the substitution builtins."""
    report = _require_class(ema, "gra")
    count = report.parameters["rules"]
    alphabet = ema.domains[1].alphabet
    rules = []
    for i in range(1, count + 1):
        body = ema.statics[f"subst{i}"].body
        rules.append((body.params[0], body.params[1]))
    return Grammar(alphabet=alphabet, rules=tuple(rules))


# ---------------------------------------------------------------------------
# Lockstep comparison


@dataclass
class LockstepReport:
    equivalent: bool
    steps: int
    detail: Optional[str] = None


def _project_tm_state(ema: Ema, state: State, m: WindowTm):
    n = m.tapes
    qlabels = ema.domains[n].labels
    slabels = ema.domains[n + 1].labels
    q = state.value_of("q")
    if q is None:
        return None, "state constant undefined"
    mstate = m.states[qlabels.index(q.payload)]
    heads = []
    for i in range(1, n + 1):
        pos = state.value_of(f"pos{i}")
        if pos is None:
            return None, f"head {i} undefined"
        heads.append(pos.payload)
    tapes = []
    for i in range(1, n + 1):
        body = state.interp(f"c{i}").body
        norm = body.normalized()
        tape = {}
        for args, v in norm.exceptions.items():
            if v is None:
                return None, f"tape {i} has an undefined cell"
            tape[args[0].payload] = m.alphabet[slabels.index(v.payload)]
        tapes.append(tape)
    from .machines import TmConfig

    return TmConfig(mstate, tuple(heads), tuple(tapes)), None


def lockstep_tm(
    m: WindowTm, ema: Ema, word, max_steps: int
) -> LockstepReport:
    """Run both sides on one input and compare configuration by
    configuration, with the one extra trailing status-commit state on
    halting runs."""
    mt = tm_run(m, word, max_steps)
    letter_index = {x: l for l, x in enumerate(m.alphabet)}
    inp = wt_input(ema.signature, m.tapes, [letter_index[x] for x in word])
    et = run(ema, inp, max_steps=mt.steps + 1)
    return _compare_traces(
        mt,
        et,
        lambda state: _project_tm_state(ema, state, m),
        steps=mt.steps,
    )


def _project_tram_state(ema: Ema, state: State, t: Tram):
    qlabels = ema.domains[2].labels
    q = state.value_of("q")
    if q is None:
        return None, "state constant undefined"
    mstate = t.states[qlabels.index(q.payload)]
    body = state.interp("c").body
    norm = body.normalized()
    memory = {}
    for args, v in norm.exceptions.items():
        if v is None:
            return None, "memory has an undefined register"
        memory[args[0].payload] = v.payload
    from .machines import TramConfig

    return TramConfig(mstate, memory), None


def lockstep_tram(
    t: Tram, ema: Ema, memory: dict, max_steps: int
) -> LockstepReport:
    mt = tram_run(t, memory, max_steps)
    inp = tram_input(ema.signature, memory)
    et = run(ema, inp, max_steps=mt.steps + 1)
    return _compare_traces(
        mt,
        et,
        lambda state: _project_tram_state(ema, state, t),
        steps=mt.steps,
    )


def _compare_traces(mt: MachineTrace, et, project, steps: int) -> LockstepReport:
    for i, cfg in enumerate(mt.configs):
        if i >= len(et.states):
            return LockstepReport(False, steps, f"run ends early at step {i}")
        projected, problem = project(et.states[i])
        if problem is not None:
            return LockstepReport(False, steps, f"step {i}: {problem}")
        if projected != cfg:
            return LockstepReport(
                False,
                steps,
                f"step {i}: machine {cfg} vs projection {projected}",
            )
    expected = {
        "accept": "Accepted",
        "reject": "Rejected",
        "stuck": "Stuck",
        "step_limit": "StepLimit",
    }[mt.outcome]
    if mt.outcome in ("accept", "reject"):
        if et.outcome.kind != expected:
            return LockstepReport(
                False, steps, f"outcomes differ: {mt.outcome} vs {et.outcome.kind}"
            )
        if len(et.states) != len(mt.configs) + 1:
            return LockstepReport(
                False,
                steps,
                "halting runs must end with exactly one status-commit state",
            )
        projected, problem = project(et.states[-1])
        if problem is not None or projected != mt.configs[-1]:
            return LockstepReport(
                False, steps, "the status-commit step must change nothing else"
            )
    elif mt.outcome == "stuck":
        if et.outcome.kind != "Stuck" or len(et.states) != len(mt.configs):
            return LockstepReport(
                False, steps, f"outcomes differ: stuck vs {et.outcome.kind}"
            )
    return LockstepReport(True, steps, None)


def lockstep_grammar(
    g: Grammar, ema: Ema, word, script: list[tuple[int, int]]
) -> LockstepReport:
    """Replay one scripted rewrite sequence on both sides."""
    words = [tuple(word)]
    for rule, pos in script:
        words.append(grammar_step(g, words[-1], rule, pos))
    branches = tuple(rule for rule, _ in script)
    externals = tuple(
        {"Choose": Value(GRA_NAT_SORT, pos)} for _, pos in script
    )
    inp = gra_input(ema.signature, word)
    et = run(
        ema,
        inp,
        choices=Scripted(branches, externals),
        max_steps=len(script),
    )
    for i, w in enumerate(words):
        if i >= len(et.states):
            return LockstepReport(False, len(script), f"run ends early at step {i}")
        got = et.states[i].value_of("w")
        if got is None or got.payload != w:
            return LockstepReport(
                False,
                len(script),
                f"step {i}: word {''.join(w)!r} vs {got}",
            )
    return LockstepReport(True, len(script), None)
