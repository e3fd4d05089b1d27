"""Small built-in machines used by the demo scripts and the test suite.

Window-machine moves are bounded by the window radius, so radius-0
machines are stationary: they rewrite the scanned cell and halt or loop.
Anything that walks the tape needs radius >= 1 (and may then also read
and write its neighbours).  The corpus covers radius 0, 1 and 2, two
tapes, divergence, and a transition gap; the RAM corpus covers indirect
addressing, write aliasing, and a counting loop; the grammars include
the bracket-matching classic.
"""

from __future__ import annotations

import itertools

from .machines import Content, Grammar, OpApply, Tram, WindowTm


def _windows(alphabet, tapes, radius):
    width = tapes * (2 * radius + 1)
    for combo in itertools.product(alphabet, repeat=width):
        yield tuple(
            combo[i * (2 * radius + 1) : (i + 1) * (2 * radius + 1)]
            for i in range(tapes)
        )


def tm_flip_first() -> WindowTm:
    """Radius 0: flip the scanned letter in place, then accept."""
    a, b = "a", "b"
    delta, writes, moves = {}, {}, {}
    for x, y in ((a, b), (b, a)):
        lc = ("start", ((x,),))
        delta[lc] = "done"
        writes[lc] = ((y,),)
        moves[lc] = (0,)
    accept = frozenset({("done", ((x,),)) for x in (a, b)})
    return WindowTm(
        tapes=1,
        radius=0,
        alphabet=(a, b),
        states=("start", "done"),
        accept=accept,
        reject=frozenset(),
        delta=delta,
        writes=writes,
        moves=moves,
    )


def tm_toggler() -> WindowTm:
    """Radius 0: rewrite the scanned cell back and forth forever."""
    blank, mark = "_", "x"
    other = {blank: mark, mark: blank}
    delta, writes, moves = {}, {}, {}
    for q, q2 in (("ping", "pong"), ("pong", "ping")):
        for x in (blank, mark):
            lc = (q, ((x,),))
            delta[lc] = q2
            writes[lc] = ((other[x],),)
            moves[lc] = (0,)
    return WindowTm(
        tapes=1,
        radius=0,
        alphabet=(blank, mark),
        states=("ping", "pong"),
        accept=frozenset(),
        reject=frozenset(),
        delta=delta,
        writes=writes,
        moves=moves,
    )


def tm_blank_seeker() -> WindowTm:
    """Radius 1: walk right over marks and accept at the first blank."""
    blank, mark = "_", "x"
    alphabet = (blank, mark)
    delta, writes, moves = {}, {}, {}
    accept = set()
    for (w,) in _windows(alphabet, 1, 1):
        lc = ("seek", (w,))
        if w[1] == blank:
            accept.add(lc)
        else:
            delta[lc] = "seek"
            writes[lc] = (w,)
            moves[lc] = (1,)
    return WindowTm(
        tapes=1,
        radius=1,
        alphabet=alphabet,
        states=("seek",),
        accept=frozenset(accept),
        reject=frozenset(),
        delta=delta,
        writes=writes,
        moves=moves,
    )


def tm_parity() -> WindowTm:
    """Radius 1: erase marks left to right, tracking their parity; accept
    at the first blank on even parity, reject on odd."""
    blank, mark = "_", "1"
    alphabet = (blank, mark)
    states = ("even", "odd")
    delta, writes, moves = {}, {}, {}
    accept, reject = set(), set()
    for q in states:
        flip = "odd" if q == "even" else "even"
        for (w,) in _windows(alphabet, 1, 1):
            lc = (q, (w,))
            if w[1] == blank:
                (accept if q == "even" else reject).add(lc)
            else:
                delta[lc] = flip
                writes[lc] = ((w[0], blank, w[2]),)
                moves[lc] = (1,)
    return WindowTm(
        tapes=1,
        radius=1,
        alphabet=alphabet,
        states=states,
        accept=frozenset(accept),
        reject=frozenset(reject),
        delta=delta,
        writes=writes,
        moves=moves,
    )


def tm_eraser2() -> WindowTm:
    """Radius 2: blank out the whole window and jump two cells right while
    any scanned cell is marked; accept on an all-blank window."""
    blank, mark = "_", "#"
    alphabet = (blank, mark)
    width = 5
    delta, writes, moves = {}, {}, {}
    accept = set()
    for (w,) in _windows(alphabet, 1, 2):
        lc = ("wipe", (w,))
        if all(x == blank for x in w):
            accept.add(lc)
        else:
            delta[lc] = "wipe"
            writes[lc] = ((blank,) * width,)
            moves[lc] = (2,)
    return WindowTm(
        tapes=1,
        radius=2,
        alphabet=alphabet,
        states=("wipe",),
        accept=frozenset(accept),
        reject=frozenset(),
        delta=delta,
        writes=writes,
        moves=moves,
    )


def tm_copier() -> WindowTm:
    """Two tapes, radius 1: copy tape 1 onto tape 2 until the first blank,
    then accept."""
    blank = "_"
    alphabet = (blank, "a", "b")
    delta, writes, moves = {}, {}, {}
    accept = set()
    for w1, w2 in _windows(alphabet, 2, 1):
        lc = ("copy", (w1, w2))
        if w1[1] == blank:
            accept.add(lc)
        else:
            delta[lc] = "copy"
            writes[lc] = (w1, (w2[0], w1[1], w2[2]))
            moves[lc] = (1, 1)
    return WindowTm(
        tapes=2,
        radius=1,
        alphabet=alphabet,
        states=("copy",),
        accept=frozenset(accept),
        reject=frozenset(),
        delta=delta,
        writes=writes,
        moves=moves,
    )


def tm_diverger() -> WindowTm:
    """Radius 1: move right forever."""
    blank, mark = "_", "x"
    alphabet = (blank, mark)
    delta, writes, moves = {}, {}, {}
    for (w,) in _windows(alphabet, 1, 1):
        lc = ("run", (w,))
        delta[lc] = "run"
        writes[lc] = (w,)
        moves[lc] = (1,)
    return WindowTm(
        tapes=1,
        radius=1,
        alphabet=alphabet,
        states=("run",),
        accept=frozenset(),
        reject=frozenset(),
        delta=delta,
        writes=writes,
        moves=moves,
    )


def tm_gapped() -> WindowTm:
    """Radius 1: defined only when the scanned cell is blank, so the walk
    gets stuck at the first mark."""
    blank, mark = "_", "x"
    alphabet = (blank, mark)
    delta, writes, moves = {}, {}, {}
    for (w,) in _windows(alphabet, 1, 1):
        if w[1] != blank:
            continue
        lc = ("walk", (w,))
        delta[lc] = "walk"
        writes[lc] = (w,)
        moves[lc] = (1,)
    return WindowTm(
        tapes=1,
        radius=1,
        alphabet=alphabet,
        states=("walk",),
        accept=frozenset(),
        reject=frozenset(),
        delta=delta,
        writes=writes,
        moves=moves,
    )


def tm_corpus() -> dict[str, WindowTm]:
    return {
        "flip_first": tm_flip_first(),
        "toggler": tm_toggler(),
        "blank_seeker": tm_blank_seeker(),
        "parity": tm_parity(),
        "eraser2": tm_eraser2(),
        "copier": tm_copier(),
        "diverger": tm_diverger(),
        "gapped": tm_gapped(),
    }


# ---------------------------------------------------------------------------
# Transition RAMs (n=1, depth=1: three Boolean tests)

_OPS = ("zero", "successor", "addition")


def tram_indirect_bump() -> Tram:
    """One state: write contents(addr(1,1)) + 1 into register 1 while no
    addressed register holds 0; stuck once one does."""
    delta, writes = {}, {}
    for combo in itertools.product("01", repeat=3):
        bools = "".join(combo)
        if bools[0] == "0" and bools[1] == "0":
            key = ("bump", bools)
            delta[key] = "bump"
            writes[key] = {
                (1, 0): OpApply(
                    "addition",
                    (Content(1, 1), OpApply("successor", (OpApply("zero", ()),))),
                ),
                (1, 1): Content(1, 1),
            }
    return Tram(
        registers=1,
        depth=1,
        ops=_OPS,
        states=("bump",),
        accept=frozenset(),
        reject=frozenset(),
        delta=delta,
        writes=writes,
    )


def tram_counter() -> Tram:
    """Count register 1 upward by two and accept once both the register
    and the register it addresses are nonzero."""
    accept, delta, writes = set(), {}, {}
    for combo in itertools.product("01", repeat=3):
        bools = "".join(combo)
        key = ("count", bools)
        if bools[0] == "0" and bools[1] == "0":
            accept.add(key)
        else:
            delta[key] = "count"
            writes[key] = {
                (1, 0): OpApply(
                    "successor", (OpApply("successor", (Content(1, 0),)),)
                ),
                (1, 1): Content(1, 1),
            }
    return Tram(
        registers=1,
        depth=1,
        ops=_OPS,
        states=("count",),
        accept=frozenset(accept),
        reject=frozenset(),
        delta=delta,
        writes=writes,
    )


def tram_equal_halt() -> Tram:
    """Hop to a halting state; accept unless register 1 and the register
    it addresses hold equal contents."""
    accept, reject, delta, writes = set(), set(), {}, {}
    identity = {(1, 0): Content(1, 0), (1, 1): Content(1, 1)}
    for combo in itertools.product("01", repeat=3):
        bools = "".join(combo)
        if bools[2] == "1":
            reject.add(("halt", bools))
        else:
            accept.add(("halt", bools))
        delta[("look", bools)] = "halt"
        writes[("look", bools)] = dict(identity)
    return Tram(
        registers=1,
        depth=1,
        ops=_OPS,
        states=("look", "halt"),
        accept=frozenset(accept),
        reject=frozenset(reject),
        delta=delta,
        writes=writes,
    )


def tram_corpus() -> dict[str, Tram]:
    return {
        "indirect_bump": tram_indirect_bump(),
        "counter": tram_counter(),
        "equal_halt": tram_equal_halt(),
    }


# ---------------------------------------------------------------------------
# Grammars


def grammar_corpus() -> dict[str, Grammar]:
    def w(s):
        return tuple(s)

    return {
        "bracket_pairs": Grammar(
            ("S", "a", "b"), ((w("S"), w("aSb")), (w("S"), w("ab")))
        ),
        "single_rule": Grammar(("S", "a", "b"), ((w("S"), w("ab")),)),
        "swapper": Grammar(("a", "b"), ((w("ab"), w("ba")),)),
        "doubler": Grammar(("a",), ((w("a"), w("aa")),)),
        "eraser": Grammar(("a", "b"), ((w("ab"), ()),)),
    }
