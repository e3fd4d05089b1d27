"""Seeded random machines, class members, presentations, and states."""

import itertools

from ema.algebra import (
    DefaultedTable,
    PartialInterpretation,
    State,
    Value,
    element,
)
from ema.classes import wt_domains, wt_signature, wt_statics
from ema.engine import Ema
from ema.functional import BetaRow, BetaTable, Presentation, UpdateTuple
from ema.machines import Content, OpApply, Tram, WindowTm, boolean_test_count
from ema.signature import STATUS_NAME, term
from ema.translate import tm_to_ema, tram_to_ema

TRAM_OPS = ("zero", "successor", "addition")


# ---------------------------------------------------------------------------
# Random window machines


def random_window_tm(
    rng, max_tapes=2, max_radius=1, max_states=3, max_letters=3, max_cells=None
):
    """Draw a machine inside the parameter box; ``max_cells`` caps the
    local-configuration count so heavyweight shapes can be rationed."""
    while True:
        n = rng.randint(1, max_tapes)
        k = rng.randint(0, max_radius)
        r = rng.randint(1, max_states)
        s = (
            rng.randint(1, max_letters)
            if rng.random() < 0.2
            else rng.randint(2, max_letters)
        )
        if max_cells is None or r * s ** (n * (2 * k + 1)) <= max_cells:
            break
    if rng.random() < 0.5:
        states = tuple(f"q{j}" for j in range(r))
        alphabet = tuple(f"sigma{l}" for l in range(s))
    else:
        states = ("go_on", "think", "spin")[:r]
        alphabet = ("blank", "one", "two")[:s]
    return random_window_tm_shaped(rng, n, k, states, alphabet)


def random_window_tm_shaped(rng, n, k, states, alphabet):
    r, s = len(states), len(alphabet)
    width = 2 * k + 1
    accept, reject = set(), set()
    delta, writes, moves = {}, {}, {}
    for j in range(r):
        for combo in itertools.product(range(s), repeat=n * width):
            windows = tuple(
                tuple(alphabet[combo[i * width + o]] for o in range(width))
                for i in range(n)
            )
            lc = (states[j], windows)
            roll = rng.random()
            if roll < 0.06:
                accept.add(lc)
            elif roll < 0.12:
                reject.add(lc)
            elif roll < 0.30:
                pass  # transition gap
            else:
                delta[lc] = states[rng.randrange(r)]
                writes[lc] = tuple(
                    tuple(alphabet[rng.randrange(s)] for _ in range(width))
                    for _ in range(n)
                )
                moves[lc] = tuple(rng.randint(-k, k) for _ in range(n))
    return WindowTm(
        tapes=n,
        radius=k,
        alphabet=alphabet,
        states=states,
        accept=frozenset(accept),
        reject=frozenset(reject),
        delta=delta,
        writes=writes,
        moves=moves,
    )


def random_wt_class_ema(rng, max_cells=None) -> Ema:
    """A random class member in canonical shape, with the normalization
    freedoms (row order, update order, table order) shuffled away."""
    while True:
        n = rng.randint(1, 2)
        k = rng.randint(0, 1)
        r = rng.randint(1, 3)
        s = rng.randint(1, 3)
        if max_cells is None or r * s ** (n * (2 * k + 1)) <= max_cells:
            break
    states = tuple(f"q{j}" for j in range(r))
    alphabet = tuple(f"sigma{l}" for l in range(s))
    machine = random_window_tm_shaped(rng, n, k, states, alphabet)
    return shuffle_ema(tm_to_ema(machine), rng)


def shuffle_ema(e: Ema, rng) -> Ema:
    functionals = []
    for p in e.functionals:
        tables = []
        for t in p.tables:
            rows = list(t.rows[:-1])
            rng.shuffle(rows)
            shuffled = []
            for row in rows:
                ups = list(row.updates)
                rng.shuffle(ups)
                shuffled.append(BetaRow(row.pattern, tuple(ups)))
            tables.append(BetaTable(t.symbol, tuple(shuffled) + (t.rows[-1],)))
        rng.shuffle(tables)
        functionals.append(Presentation(p.guards, tuple(tables)))
    return Ema(e.signature, e.domains, e.statics, e.initials, tuple(functionals))


# ---------------------------------------------------------------------------
# Random transition RAMs


def random_arith(rng, targets, depth=2):
    if depth == 0 or rng.random() < 0.45:
        return Content(*targets[rng.randrange(len(targets))])
    op = TRAM_OPS[rng.randrange(len(TRAM_OPS))]
    arity = {"zero": 0, "successor": 1, "addition": 2}[op]
    return OpApply(op, tuple(random_arith(rng, targets, depth - 1) for _ in range(arity)))


def random_tram(rng, allow_two_registers=True, two_register_rate=0.1) -> Tram:
    n = 2 if (allow_two_registers and rng.random() < two_register_rate) else 1
    k = 1
    r = rng.randint(1, 2 if n == 2 else 3)
    states = tuple(f"q{j}" for j in range(r))
    b = boolean_test_count(n, k)
    targets = [(i, j) for i in range(1, n + 1) for j in range(k + 1)]
    accept, reject = set(), set()
    delta, writes = {}, {}
    for j in range(r):
        for combo in itertools.product("01", repeat=b):
            key = (states[j], "".join(combo))
            roll = rng.random()
            if roll < 0.08:
                accept.add(key)
            elif roll < 0.16:
                reject.add(key)
            elif roll < 0.35:
                pass
            else:
                delta[key] = states[rng.randrange(r)]
                writes[key] = {
                    tgt: random_arith(rng, targets) for tgt in targets
                }
    return Tram(
        registers=n,
        depth=k,
        ops=TRAM_OPS,
        states=states,
        accept=frozenset(accept),
        reject=frozenset(reject),
        delta=delta,
        writes=writes,
    )


def random_tram_class_ema(rng, two_register_rate=0.1) -> Ema:
    return shuffle_ema(
        tram_to_ema(random_tram(rng, two_register_rate=two_register_rate)), rng
    )


def random_memory(rng, max_support=4):
    memory = {}
    for _ in range(rng.randint(0, max_support)):
        memory[rng.randint(0, 9)] = rng.randint(0, 9)
    return {a: v for a, v in memory.items() if v != 0}


# ---------------------------------------------------------------------------
# Random presentations and states over the 2-state, 2-letter window shape

WT_SIG = wt_signature(1, 2, 2)
WT_DOMAINS = wt_domains(1, 2, 2)
WT_STATICS = wt_statics(WT_SIG, 1, 2, 2)

_Z_TERMS = (
    term("pos1"),
    term("Succ1", term("pos1")),
    term("Pred1", term("pos1")),
    term("Succ1", term("Succ1", term("pos1"))),
)
_SIGMA_TERMS = (
    term("sigma0"),
    term("sigma1"),
    term("c1", _Z_TERMS[0]),
    term("c1", _Z_TERMS[1]),
    term("c1", _Z_TERMS[2]),
)
_Q_TERMS = (term("q"), term("q0"), term("q1"))
_STATUS_TERMS = (term(STATUS_NAME), term("go"), term("acc"), term("rej"))

_TERMS_BY_SORT = {1: _Z_TERMS, 2: _Q_TERMS, 3: _SIGMA_TERMS, 4: _STATUS_TERMS}


def random_guarded_presentation(rng) -> Presentation:
    from ema.functional import GuardPair

    q = rng.randint(1, 4)
    guards = []
    for _ in range(q):
        sort = rng.choice((1, 2, 3, 4))
        pool = _TERMS_BY_SORT[sort]
        guards.append(GuardPair(rng.choice(pool), rng.choice(pool)))

    def random_updates(symbol):
        count = rng.randint(0, 2)
        ups = []
        for _ in range(count):
            if symbol == "c1":
                ups.append(
                    UpdateTuple((rng.choice(_Z_TERMS),), rng.choice(_SIGMA_TERMS))
                )
            elif symbol == "pos1":
                ups.append(UpdateTuple((), rng.choice(_Z_TERMS)))
            elif symbol == "q":
                ups.append(UpdateTuple((), rng.choice(_Q_TERMS)))
            else:
                ups.append(UpdateTuple((), rng.choice(_STATUS_TERMS)))
        return tuple(ups)

    tables = []
    for sym in WT_SIG.updatable():
        rows = []
        for _ in range(rng.randint(0, 2)):
            pattern = "".join(rng.choice("01*") for _ in range(q))
            rows.append(BetaRow(pattern, random_updates(sym.name)))
        rows.append(BetaRow("*" * q, random_updates(sym.name)))
        tables.append(BetaTable(sym.name, tuple(rows)))
    return Presentation(tuple(guards), tuple(tables))


def random_wt_state(rng) -> State:
    interps = dict(WT_STATICS)
    sig = WT_SIG
    pos = rng.choice((None, -1, 0, 1))
    interps["pos1"] = element(
        sig.symbol("pos1"), None if pos is None else Value(1, pos)
    )
    qv = rng.choice((None, "q0", "q1"))
    interps["q"] = element(sig.symbol("q"), None if qv is None else Value(2, qv))
    interps[STATUS_NAME] = element(sig.symbol(STATUS_NAME), Value(4, "go"))
    exceptions = {}
    for p in range(-2, 3):
        roll = rng.random()
        if roll < 0.25:
            exceptions[(Value(1, p),)] = Value(3, "sigma1")
        elif roll < 0.35:
            exceptions[(Value(1, p),)] = None  # an undefined tape cell
    interps["c1"] = PartialInterpretation(
        sig.symbol("c1"), DefaultedTable(Value(3, "sigma0"), exceptions)
    )
    return State(sig, WT_DOMAINS, interps)
