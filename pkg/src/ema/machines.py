"""Direct simulators for the three concrete machine models.

These are the independent oracles for all equivalence testing: a window
Turing machine (radius-k read/write window per tape, halting decided by
local configurations), a transition RAM (register machine driven by a
transition function over Boolean tests on the addressed registers), and a
type-0 grammar with positioned factor substitution.

Conventions shared with the translators:
  - the first alphabet letter is blank and the first state is initial;
  - writes and arithmetic read the pre-step contents, then every change
    (cells, heads, state, registers) commits at once;
  - transition maps may be partial, and an undefined local configuration
    means the machine is stuck;
  - two register writes aimed at the same address make a transition RAM
    stuck, mirroring the clash rule on the algebra side.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .errors import EmaError, EmptyLeftHandSide
from .natops import NAT_OPS, apply_nat_op


class MachineError(EmaError):
    """Structurally invalid machine description."""


# ---------------------------------------------------------------------------
# Window Turing machines

Window = tuple[str, ...]
LocalConfig = tuple[str, tuple[Window, ...]]


@dataclass(eq=True)
class WindowTm:
    """Deterministic n-tape machine scanning a window of radius ``radius``.

    ``delta``, ``writes`` and ``moves`` must be defined on exactly the
    same local configurations.  ``accept`` and ``reject`` are disjoint
    sets of local configurations; the machine halts *at* such a
    configuration, before any transition fires.
    """

    tapes: int
    radius: int
    alphabet: tuple[str, ...]
    states: tuple[str, ...]
    accept: frozenset[LocalConfig]
    reject: frozenset[LocalConfig]
    delta: dict[LocalConfig, str]
    writes: dict[LocalConfig, tuple[Window, ...]]
    moves: dict[LocalConfig, tuple[int, ...]]

    def __post_init__(self):
        if self.tapes < 1:
            raise MachineError("need at least one tape")
        if self.radius < 0:
            raise MachineError("window radius cannot be negative")
        if not self.alphabet or len(set(self.alphabet)) != len(self.alphabet):
            raise MachineError("alphabet must be nonempty and duplicate-free")
        if not self.states or len(set(self.states)) != len(self.states):
            raise MachineError("states must be nonempty and duplicate-free")
        if self.accept & self.reject:
            raise MachineError("accepting and rejecting configurations overlap")
        if not (self.delta.keys() == self.writes.keys() == self.moves.keys()):
            raise MachineError("delta, writes and moves must share one domain")
        width = 2 * self.radius + 1
        for lc in itertools.chain(self.delta, self.accept, self.reject):
            self._check_config(lc, width)
        for lc, q in self.delta.items():
            if q not in self.states:
                raise MachineError(f"transition to unknown state {q!r}")
            ws = self.writes[lc]
            if len(ws) != self.tapes or any(len(w) != width for w in ws):
                raise MachineError(f"write for {lc!r} must cover every window")
            for w in ws:
                for letter in w:
                    if letter not in self.alphabet:
                        raise MachineError(f"write uses unknown letter {letter!r}")
            ms = self.moves[lc]
            if len(ms) != self.tapes or any(abs(m) > self.radius for m in ms):
                raise MachineError(f"moves for {lc!r} must stay within the radius")

    def _check_config(self, lc: LocalConfig, width: int):
        state, windows = lc
        if state not in self.states:
            raise MachineError(f"local configuration uses unknown state {state!r}")
        if len(windows) != self.tapes:
            raise MachineError("local configuration must have one window per tape")
        for w in windows:
            if len(w) != width or any(x not in self.alphabet for x in w):
                raise MachineError(f"bad window {w!r}")

    @property
    def blank(self) -> str:
        return self.alphabet[0]

    @property
    def initial(self) -> str:
        return self.states[0]


@dataclass(eq=True)
class TmConfig:
    state: str
    heads: tuple[int, ...]
    tapes: tuple[dict, ...]  # per-tape position -> non-blank letter


def tm_initial_config(m: WindowTm, word) -> TmConfig:
    letters = tuple(word)
    for x in letters:
        if x not in m.alphabet:
            raise MachineError(f"input letter {x!r} outside the alphabet")
    tape0 = {i: x for i, x in enumerate(letters) if x != m.blank}
    tapes = (tape0,) + tuple({} for _ in range(m.tapes - 1))
    return TmConfig(m.initial, (0,) * m.tapes, tapes)


def tm_local_config(m: WindowTm, c: TmConfig) -> LocalConfig:
    """The state plus the scanned window contents of every tape."""
    windows = tuple(
        tuple(
            c.tapes[i].get(c.heads[i] + o, m.blank)
            for o in range(-m.radius, m.radius + 1)
        )
        for i in range(m.tapes)
    )
    return (c.state, windows)


TmStepOutcome = Union[TmConfig, str]  # "accept" | "reject" | "stuck"


def tm_step(m: WindowTm, c: TmConfig) -> TmStepOutcome:
    lc = tm_local_config(m, c)
    if lc in m.accept:
        return "accept"
    if lc in m.reject:
        return "reject"
    if lc not in m.delta:
        return "stuck"
    writes, moves = m.writes[lc], m.moves[lc]
    tapes = []
    for i in range(m.tapes):
        tape = dict(c.tapes[i])
        for o in range(-m.radius, m.radius + 1):
            letter = writes[i][o + m.radius]
            pos = c.heads[i] + o
            if letter == m.blank:
                tape.pop(pos, None)
            else:
                tape[pos] = letter
        tapes.append(tape)
    heads = tuple(c.heads[i] + moves[i] for i in range(m.tapes))
    return TmConfig(m.delta[lc], heads, tuple(tapes))


@dataclass
class MachineTrace:
    configs: list
    outcome: str  # accept | reject | stuck | step_limit

    @property
    def steps(self) -> int:
        return len(self.configs) - 1


def tm_run(m: WindowTm, word, max_steps: int) -> MachineTrace:
    """Run from the standard initial configuration (word on tape 1).

    Halting and stuckness are decided at a configuration without firing a
    transition, so they are reported even at the step budget boundary;
    the budget only cuts off transitions that would otherwise fire.
    """
    configs = [tm_initial_config(m, word)]
    while True:
        out = tm_step(m, configs[-1])
        if isinstance(out, str):
            return MachineTrace(configs, out)
        if len(configs) > max_steps:
            return MachineTrace(configs, "step_limit")
        configs.append(out)


def normalize_window_tm(m: WindowTm) -> WindowTm:
    """Rename states and letters to their canonical index names."""
    qmap = {q: f"q{j}" for j, q in enumerate(m.states)}
    smap = {x: f"sigma{l}" for l, x in enumerate(m.alphabet)}

    def conv(lc: LocalConfig) -> LocalConfig:
        state, windows = lc
        return (qmap[state], tuple(tuple(smap[x] for x in w) for w in windows))

    return WindowTm(
        tapes=m.tapes,
        radius=m.radius,
        alphabet=tuple(smap[x] for x in m.alphabet),
        states=tuple(qmap[q] for q in m.states),
        accept=frozenset(conv(lc) for lc in m.accept),
        reject=frozenset(conv(lc) for lc in m.reject),
        delta={conv(lc): qmap[q] for lc, q in m.delta.items()},
        writes={
            conv(lc): tuple(tuple(smap[x] for x in w) for w in ws)
            for lc, ws in m.writes.items()
        },
        moves={conv(lc): ms for lc, ms in m.moves.items()},
    )


# ---------------------------------------------------------------------------
# Transition RAMs


@dataclass(frozen=True, slots=True)
class Content:
    """The pre-step contents of addressed register (base, depth)."""

    base: int
    depth: int


@dataclass(frozen=True, slots=True)
class OpApply:
    op: str
    args: tuple

    def __post_init__(self):
        if self.op not in NAT_OPS:
            raise MachineError(f"unknown operation {self.op!r}")
        if len(self.args) != NAT_OPS[self.op][0]:
            raise MachineError(f"operation {self.op!r} applied at wrong arity")


ArithTerm = Union[Content, OpApply]

TramKey = tuple[str, str]  # (state, boolean test string)


def boolean_test_count(n: int, k: int) -> int:
    """Number of Boolean tests for n base registers and depth k.

    Evaluates the product form n(1+k)(1 + (n(1+k)-1)/2) exactly and checks
    it against the test enumeration m + m(m-1)/2 with m = n(1+k).
    """
    m = n * (1 + k)
    via_product = m * (1 + Fraction(m - 1, 2))
    via_tests = m + m * (m - 1) // 2
    if via_product != via_tests:
        raise MachineError("boolean test count formulas disagree")
    return via_tests


@dataclass(eq=True)
class Tram:
    """Transition RAM over ``registers`` base registers and depth ``depth``.

    Each step addresses the base registers and everything reachable from
    them by at most ``depth`` content-as-address hops; the transition is
    chosen by the control state plus the zero/equality tests over those
    addressed contents.  A defined transition writes every addressed
    register (identity terms keep a register unchanged).
    """

    registers: int
    depth: int
    ops: tuple[str, ...]
    states: tuple[str, ...]
    accept: frozenset[TramKey]
    reject: frozenset[TramKey]
    delta: dict[TramKey, str]
    writes: dict[TramKey, dict[tuple[int, int], ArithTerm]]

    def __post_init__(self):
        if self.registers < 1:
            raise MachineError("need at least one base register")
        if self.depth < 0:
            raise MachineError("addressing depth cannot be negative")
        for op in self.ops:
            if op not in NAT_OPS:
                raise MachineError(f"unknown operation {op!r}")
        if not self.states or len(set(self.states)) != len(self.states):
            raise MachineError("states must be nonempty and duplicate-free")
        if self.accept & self.reject:
            raise MachineError("accepting and rejecting keys overlap")
        if self.delta.keys() != self.writes.keys():
            raise MachineError("delta and writes must share one domain")
        b = boolean_test_count(self.registers, self.depth)
        targets = {
            (i, j)
            for i in range(1, self.registers + 1)
            for j in range(self.depth + 1)
        }
        for key in itertools.chain(self.delta, self.accept, self.reject):
            state, bools = key
            if state not in self.states:
                raise MachineError(f"unknown state {state!r}")
            if len(bools) != b or any(c not in "01" for c in bools):
                raise MachineError(f"boolean vector {bools!r} must have length {b}")
        for key, q in self.delta.items():
            if q not in self.states:
                raise MachineError(f"transition to unknown state {q!r}")
            ws = self.writes[key]
            if ws.keys() != targets:
                raise MachineError(
                    f"writes for {key!r} must cover every addressed register"
                )
            for term in ws.values():
                self._check_term(term)

    def _check_term(self, term: ArithTerm):
        if isinstance(term, Content):
            if not (
                1 <= term.base <= self.registers and 0 <= term.depth <= self.depth
            ):
                raise MachineError(f"content reference {term!r} out of range")
            return
        if isinstance(term, OpApply):
            if term.op not in self.ops:
                raise MachineError(f"operation {term.op!r} not in the catalog")
            for a in term.args:
                self._check_term(a)
            return
        raise MachineError(f"bad arithmetic term {term!r}")

    @property
    def initial(self) -> str:
        return self.states[0]

    @property
    def addressed_count(self) -> int:
        return self.registers * (1 + self.depth)


@dataclass(eq=True)
class TramConfig:
    state: str
    memory: dict  # address -> nonzero contents


def mem_get(memory: dict, addr: int) -> int:
    return memory.get(addr, 0)


def tram_addressed(t: Tram, c: TramConfig) -> list[int]:
    """Addresses reachable by iterated content-as-address hops, in
    (base 1, depths 0..k), (base 2, depths 0..k), ... order."""
    out = []
    for i in range(1, t.registers + 1):
        addr = i
        out.append(addr)
        for _ in range(t.depth):
            addr = mem_get(c.memory, addr)
            out.append(addr)
    return out


def tram_bools(t: Tram, c: TramConfig) -> str:
    """Zero tests in address order, then pairwise equality tests in
    lexicographic pair order."""
    addrs = tram_addressed(t, c)
    contents = [mem_get(c.memory, a) for a in addrs]
    bits = ["1" if x == 0 else "0" for x in contents]
    for a, b in itertools.combinations(range(len(addrs)), 2):
        bits.append("1" if contents[a] == contents[b] else "0")
    return "".join(bits)


def eval_arith(term: ArithTerm, contents_by_target: dict) -> int:
    if isinstance(term, Content):
        return contents_by_target[(term.base, term.depth)]
    return apply_nat_op(term.op, [eval_arith(a, contents_by_target) for a in term.args])


TramStepOutcome = Union[TramConfig, str]


def tram_step(t: Tram, c: TramConfig) -> TramStepOutcome:
    bools = tram_bools(t, c)
    key = (c.state, bools)
    if key in t.accept:
        return "accept"
    if key in t.reject:
        return "reject"
    if key not in t.delta:
        return "stuck"
    addrs = tram_addressed(t, c)
    targets = [
        (i, j) for i in range(1, t.registers + 1) for j in range(t.depth + 1)
    ]
    addr_of = dict(zip(targets, addrs))
    if len(set(addrs)) != len(addrs):
        return "stuck"  # two writes aimed at one register
    contents = {tgt: mem_get(c.memory, a) for tgt, a in addr_of.items()}
    memory = dict(c.memory)
    for tgt, term in t.writes[key].items():
        value = eval_arith(term, contents)
        addr = addr_of[tgt]
        if value == 0:
            memory.pop(addr, None)
        else:
            memory[addr] = value
    return TramConfig(t.delta[key], memory)


def tram_run(t: Tram, memory: dict, max_steps: int) -> MachineTrace:
    start = {a: v for a, v in memory.items() if v != 0}
    configs = [TramConfig(t.initial, start)]
    while True:
        out = tram_step(t, configs[-1])
        if isinstance(out, str):
            return MachineTrace(configs, out)
        if len(configs) > max_steps:
            return MachineTrace(configs, "step_limit")
        configs.append(out)


def normalize_tram(t: Tram) -> Tram:
    qmap = {q: f"q{j}" for j, q in enumerate(t.states)}
    return Tram(
        registers=t.registers,
        depth=t.depth,
        ops=t.ops,
        states=tuple(qmap[q] for q in t.states),
        accept=frozenset((qmap[q], b) for q, b in t.accept),
        reject=frozenset((qmap[q], b) for q, b in t.reject),
        delta={(qmap[q], b): qmap[q2] for (q, b), q2 in t.delta.items()},
        writes={(qmap[q], b): ws for (q, b), ws in t.writes.items()},
    )


# ---------------------------------------------------------------------------
# Grammars

Word = tuple[str, ...]


@dataclass(eq=True)
class Grammar:
    alphabet: tuple[str, ...]
    rules: tuple[tuple[Word, Word], ...]

    def __post_init__(self):
        if not self.alphabet or len(set(self.alphabet)) != len(self.alphabet):
            raise MachineError("alphabet must be nonempty and duplicate-free")
        for u, v in self.rules:
            if not u:
                raise EmptyLeftHandSide("grammar rule with empty left-hand side")
            for x in u + v:
                if x not in self.alphabet:
                    raise MachineError(f"rule uses unknown letter {x!r}")


def grammar_step(g: Grammar, w: Word, rule: int, pos: int) -> Word:
    """Replace the rule's left word at ``pos`` if it occurs there,
    otherwise return ``w`` unchanged (including out-of-range positions)."""
    u, v = g.rules[rule]
    if pos + len(u) <= len(w) and w[pos : pos + len(u)] == u:
        return w[:pos] + v + w[pos + len(u) :]
    return w


def grammar_neighbors(g: Grammar, w: Word):
    for rule in range(len(g.rules)):
        for pos in range(max(len(w), 1)):
            yield grammar_step(g, w, rule, pos)


def grammar_closure(g: Grammar, start: Word, depth: int) -> set[Word]:
    """All words derivable from ``start`` in at most ``depth`` rewrites."""
    seen = {start}
    frontier = [start]
    for _ in range(depth):
        nxt = []
        for w in frontier:
            for w2 in grammar_neighbors(g, w):
                if w2 not in seen:
                    seen.add(w2)
                    nxt.append(w2)
        frontier = nxt
        if not frontier:
            break
    return seen


def grammar_derives(
    g: Grammar, start: Word, goal: Word, depth_bound: int
) -> tuple[bool, Optional[list[Word]]]:
    """Breadth-first search for a derivation, returning a witness sequence."""
    if start == goal:
        return True, [start]
    parents: dict[Word, Word] = {start: start}
    frontier = [start]
    for _ in range(depth_bound):
        nxt = []
        for w in frontier:
            for w2 in grammar_neighbors(g, w):
                if w2 in parents:
                    continue
                parents[w2] = w
                if w2 == goal:
                    path = [w2]
                    while path[-1] != start:
                        path.append(parents[path[-1]])
                    return True, list(reversed(path))
                nxt.append(w2)
        frontier = nxt
        if not frontier:
            break
    return False, None


def normalize_grammar(g: Grammar) -> Grammar:
    return g
