"""Canonical machine-class shapes and the class membership checker.

Each of the three classes fixes a multidomain, a static framework with
fixed interpretations, the input signatures, and the initial values of
the dynamic symbols; it places no condition on the functionals beyond
well-formedness (and, for the deterministic classes, that there is
exactly one).  ``check_class`` verifies every numbered clause of a class
definition and reports violations as data.

Canonical symbol names (ASCII renderings used by every builder, checker
and file format):

  window machine class (``wt``):
      sorts: integer copies 1..n, then the state and letter enums, then
      the status sort; statics ``q0..``, ``sigma0..``, ``go/acc/rej``,
      ``Succ<i>``/``Pred<i>``; dynamics ``pos<i>``, ``q``; dynamic inputs
      ``c<i>`` and ``status``.

  transition RAM class (``tram``):
      sorts: naturals, address copy, state enum, status; statics
      ``reg1..regn`` (valued 1..n), ``q0..``, ``go/acc/rej``, ``cast``,
      and the catalog operations; dynamic ``q``; dynamic inputs ``c`` and
      ``status``.

  grammar class (``gra``):
      sorts: naturals, words, status; statics ``subst1..substn``;
      dynamic inputs ``w`` and ``status``; external ``Choose``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import (
    Builtin,
    DefaultedTable,
    Domain,
    FiniteEnum,
    IntLine,
    MaybeElement,
    Naturals,
    PartialInterpretation,
    Status,
    Value,
    Words,
    element,
    interpretations_equal,
)
from .engine import Ema, Input
from .errors import EmaError, IncomparableInterpretations
from .natops import NAT_OPS, nat_op_arity
from .signature import (
    STATUS_LABELS,
    STATUS_NAME,
    GroundTerm,
    NSortType,
    Signature,
    Symbol,
    constant_type,
)

CLASS_IDS = ("wt", "tram", "gra")


# ---------------------------------------------------------------------------
# Window machine class builders


def wt_domains(n: int, r: int, s: int) -> tuple[Domain, ...]:
    return tuple(IntLine(i) for i in range(1, n + 1)) + (
        FiniteEnum(tuple(f"q{j}" for j in range(r))),
        FiniteEnum(tuple(f"sigma{l}" for l in range(s))),
        Status(),
    )


def wt_signature(n: int, r: int, s: int) -> Signature:
    qsort, ssort, stsort = n + 1, n + 2, n + 3
    static = (
        tuple(Symbol(f"q{j}", constant_type(qsort)) for j in range(r))
        + tuple(Symbol(f"sigma{l}", constant_type(ssort)) for l in range(s))
        + tuple(Symbol(lbl, constant_type(stsort)) for lbl in STATUS_LABELS)
        + tuple(
            Symbol(name, NSortType((i,), (i,)))
            for i in range(1, n + 1)
            for name in (f"Succ{i}", f"Pred{i}")
        )
    )
    dynamic = tuple(Symbol(f"pos{i}", constant_type(i)) for i in range(1, n + 1)) + (
        Symbol("q", constant_type(qsort)),
    )
    dynamic_input = tuple(
        Symbol(f"c{i}", NSortType((i,), (ssort,))) for i in range(1, n + 1)
    ) + (Symbol(STATUS_NAME, constant_type(stsort)),)
    return Signature(
        sort_count=n + 3,
        static=static,
        dynamic_input=dynamic_input,
        dynamic=dynamic,
    )


def wt_statics(sig: Signature, n: int, r: int, s: int) -> dict:
    qsort, ssort, stsort = n + 1, n + 2, n + 3
    out = {}
    for j in range(r):
        out[f"q{j}"] = element(sig.symbol(f"q{j}"), Value(qsort, f"q{j}"))
    for l in range(s):
        out[f"sigma{l}"] = element(sig.symbol(f"sigma{l}"), Value(ssort, f"sigma{l}"))
    for lbl in STATUS_LABELS:
        out[lbl] = element(sig.symbol(lbl), Value(stsort, lbl))
    for i in range(1, n + 1):
        out[f"Succ{i}"] = PartialInterpretation(sig.symbol(f"Succ{i}"), Builtin("succ"))
        out[f"Pred{i}"] = PartialInterpretation(sig.symbol(f"Pred{i}"), Builtin("pred"))
    return out


def wt_initials(sig: Signature, n: int) -> dict:
    qsort = n + 1
    out = {}
    for i in range(1, n + 1):
        out[f"pos{i}"] = element(sig.symbol(f"pos{i}"), Value(i, 0))
    out["q"] = element(sig.symbol("q"), Value(qsort, "q0"))
    return out


def wt_input(sig: Signature, n: int, letter_indices, status: str = "go") -> Input:
    """Input writing the word (as letter indices) on tape 1."""
    ssort, stsort = n + 2, n + 3
    dynamic = {}
    blank = Value(ssort, "sigma0")
    for i in range(1, n + 1):
        exceptions = {}
        if i == 1:
            for p, idx in enumerate(letter_indices):
                if idx != 0:
                    exceptions[(Value(1, p),)] = Value(ssort, f"sigma{idx}")
        dynamic[f"c{i}"] = PartialInterpretation(
            sig.symbol(f"c{i}"), DefaultedTable(blank, exceptions)
        )
    dynamic[STATUS_NAME] = element(sig.symbol(STATUS_NAME), Value(stsort, status))
    return Input(dynamic=dynamic)


# ---------------------------------------------------------------------------
# Transition RAM class builders


def tram_domains(r: int) -> tuple[Domain, ...]:
    return (
        Naturals(),
        Naturals("addr"),
        FiniteEnum(tuple(f"q{j}" for j in range(r))),
        Status(),
    )


NAT_SORT, ADDR_SORT, TRAM_Q_SORT, TRAM_STATUS_SORT = 1, 2, 3, 4


def tram_signature(n: int, ops: tuple[str, ...], r: int) -> Signature:
    static = (
        tuple(Symbol(f"reg{i}", constant_type(NAT_SORT)) for i in range(1, n + 1))
        + tuple(Symbol(f"q{j}", constant_type(TRAM_Q_SORT)) for j in range(r))
        + tuple(Symbol(lbl, constant_type(TRAM_STATUS_SORT)) for lbl in STATUS_LABELS)
        + (Symbol("cast", NSortType((NAT_SORT,), (ADDR_SORT,))),)
        + tuple(
            Symbol(op, NSortType((NAT_SORT,) * nat_op_arity(op), (NAT_SORT,)))
            for op in ops
        )
    )
    dynamic = (Symbol("q", constant_type(TRAM_Q_SORT)),)
    dynamic_input = (
        Symbol("c", NSortType((ADDR_SORT,), (NAT_SORT,))),
        Symbol(STATUS_NAME, constant_type(TRAM_STATUS_SORT)),
    )
    return Signature(
        sort_count=4, static=static, dynamic_input=dynamic_input, dynamic=dynamic
    )


def tram_statics(sig: Signature, n: int, ops: tuple[str, ...], r: int) -> dict:
    out = {}
    for i in range(1, n + 1):
        out[f"reg{i}"] = element(sig.symbol(f"reg{i}"), Value(NAT_SORT, i))
    for j in range(r):
        out[f"q{j}"] = element(sig.symbol(f"q{j}"), Value(TRAM_Q_SORT, f"q{j}"))
    for lbl in STATUS_LABELS:
        out[lbl] = element(sig.symbol(lbl), Value(TRAM_STATUS_SORT, lbl))
    out["cast"] = PartialInterpretation(sig.symbol("cast"), Builtin("cast"))
    for op in ops:
        out[op] = PartialInterpretation(sig.symbol(op), Builtin(op))
    return out


def tram_initials(sig: Signature) -> dict:
    return {"q": element(sig.symbol("q"), Value(TRAM_Q_SORT, "q0"))}


def tram_input(sig: Signature, memory: dict, status: str = "go") -> Input:
    zero = Value(NAT_SORT, 0)
    exceptions = {
        (Value(ADDR_SORT, a),): Value(NAT_SORT, v)
        for a, v in memory.items()
        if v != 0
    }
    dynamic = {
        "c": PartialInterpretation(
            sig.symbol("c"), DefaultedTable(zero, exceptions)
        ),
        STATUS_NAME: element(
            sig.symbol(STATUS_NAME), Value(TRAM_STATUS_SORT, status)
        ),
    }
    return Input(dynamic=dynamic)


# ---------------------------------------------------------------------------
# Grammar class builders

GRA_NAT_SORT, GRA_WORD_SORT, GRA_STATUS_SORT = 1, 2, 3


def gra_domains(alphabet: tuple[str, ...]) -> tuple[Domain, ...]:
    return (Naturals(), Words(alphabet), Status())


def gra_signature(rule_count: int) -> Signature:
    static = tuple(
        Symbol(
            f"subst{i}",
            NSortType((GRA_NAT_SORT, GRA_WORD_SORT), (GRA_WORD_SORT,)),
        )
        for i in range(1, rule_count + 1)
    )
    dynamic_input = (
        Symbol("w", constant_type(GRA_WORD_SORT)),
        Symbol(STATUS_NAME, constant_type(GRA_STATUS_SORT)),
    )
    external = (Symbol("Choose", constant_type(GRA_NAT_SORT)),)
    return Signature(
        sort_count=3,
        static=static,
        dynamic_input=dynamic_input,
        external=external,
    )


def gra_statics(sig: Signature, rules) -> dict:
    out = {}
    for i, (u, v) in enumerate(rules, start=1):
        out[f"subst{i}"] = PartialInterpretation(
            sig.symbol(f"subst{i}"), Builtin("subst", (tuple(u), tuple(v)))
        )
    return out


def gra_input(sig: Signature, word, status: str = "go") -> Input:
    dynamic = {
        "w": element(sig.symbol("w"), Value(GRA_WORD_SORT, tuple(word))),
        STATUS_NAME: element(
            sig.symbol(STATUS_NAME), Value(GRA_STATUS_SORT, status)
        ),
    }
    return Input(dynamic=dynamic)


# ---------------------------------------------------------------------------
# Term-shape measurements


def _int_line_offset(t: GroundTerm) -> int:
    if t.head.startswith("Succ"):
        return _int_line_offset(t.args[0]) + 1
    if t.head.startswith("Pred"):
        return _int_line_offset(t.args[0]) - 1
    return 0


def _walk_terms(ema: Ema):
    """Every distinct subterm object in the functionals, shared subterms
    visited once."""
    from .functional import PairedMultiterm

    stack = []
    for p in ema.functionals:
        for gp in p.guards:
            stack.append(gp.left)
            stack.append(gp.right)
        for table in p.tables:
            for row in table.rows:
                for u in row.updates:
                    stack.extend(u.args)
                    if isinstance(u.value, PairedMultiterm):
                        stack.append(u.value.source)
                    else:
                        stack.append(u.value)
    seen = set()
    while stack:
        t = stack.pop()
        if id(t) in seen:
            continue
        seen.add(id(t))
        yield t
        stack.extend(t.args)


def wt_window_radius(ema: Ema) -> int:
    """Largest head offset named anywhere in the functionals."""
    sig = ema.signature
    k = 0
    for t in _walk_terms(ema):
        if sig.has(t.head):
            st = sig.symbol(t.head).sort_type
            if not st.is_product and isinstance(
                ema.domains[st.result - 1], IntLine
            ):
                k = max(k, abs(_int_line_offset(t)))
    return k


def tram_addressing_depth(ema: Ema) -> int:
    """Deepest content-as-address chain named anywhere in the functionals."""

    def chain_depth(t: GroundTerm) -> int:
        # cast(reg_i) has depth 0; each further cast(c(..)) adds one hop.
        if t.head == "cast":
            inner = t.args[0]
            if inner.head == "c":
                return 1 + chain_depth(inner.args[0])
            return 0
        return 0

    k = 0
    for t in _walk_terms(ema):
        if t.head == "cast":
            k = max(k, chain_depth(t))
    return k


# ---------------------------------------------------------------------------
# The checker


@dataclass
class ClassReport:
    class_id: str
    ok: bool
    parameters: dict = field(default_factory=dict)
    violations: tuple = ()

    def render(self) -> str:
        if self.ok:
            params = " ".join(
                f"{k}={_render_param(v)}" for k, v in self.parameters.items()
            )
            return f"ok {self.class_id} {params}".rstrip()
        lines = [f"not ok {self.class_id}"]
        lines += [f"clause {c}: {m}" for c, m in self.violations]
        return "\n".join(lines)


def _render_param(v) -> str:
    if isinstance(v, (tuple, list)):
        return ",".join(str(x) for x in v)
    return str(v)


class _Check:
    def __init__(self, class_id: str):
        self.class_id = class_id
        self.violations: list[tuple[str, str]] = []

    def fail(self, clause: str, msg: str):
        self.violations.append((clause, msg))

    def report(self, parameters: dict) -> ClassReport:
        ok = not self.violations
        return ClassReport(
            self.class_id, ok, parameters if ok else {}, tuple(self.violations)
        )


def _diff_symbols(chk: _Check, clause: str, label: str, got, expected):
    got_by_name = {s.name: s for s in got}
    exp_by_name = {s.name: s for s in expected}
    for name in exp_by_name:
        if name not in got_by_name:
            chk.fail(clause, f"{label} signature is missing symbol {name!r}")
        elif got_by_name[name].sort_type != exp_by_name[name].sort_type:
            chk.fail(clause, f"{label} symbol {name!r} has the wrong sort type")
    for name in got_by_name:
        if name not in exp_by_name:
            chk.fail(clause, f"{label} signature has extra symbol {name!r}")


def _diff_interps(chk: _Check, clause: str, label: str, got: dict, expected: dict):
    for name, want in expected.items():
        have = got.get(name)
        if have is None:
            continue  # the missing symbol was already reported
        try:
            same = have.symbol.sort_type == want.symbol.sort_type and (
                interpretations_equal(have, want)
            )
        except (IncomparableInterpretations, EmaError):
            same = False
        if not same:
            chk.fail(clause, f"{label} interpretation of {name!r} is not the fixed one")


def _check_shape(chk: _Check, ema: Ema, deterministic: bool, allow_external: bool):
    if deterministic and len(ema.functionals) != 1:
        chk.fail(
            "0",
            f"class is deterministic: expected one functional, got {len(ema.functionals)}",
        )
    if not allow_external and ema.signature.external:
        names = [s.name for s in ema.signature.external]
        chk.fail("0", f"class has no external symbols, found {names}")


def check_class(ema: Ema, class_id: str) -> ClassReport:
    """Check every numbered clause of a class definition against ``ema``.

    Clause 0 covers tuple-level shape (determinism width, external part);
    clauses 1-5 follow the class definition: multidomain, static
    framework and its fixed interpretations, static input emptiness,
    dynamic symbols and their initial values, dynamic input symbols.
    The functionals themselves are not inspected beyond well-formedness.
    """
    if class_id == "wt":
        return _check_wt(ema)
    if class_id == "tram":
        return _check_tram(ema)
    if class_id == "gra":
        return _check_gra(ema)
    raise EmaError(f"unknown class id {class_id!r}")


def _check_wt(ema: Ema) -> ClassReport:
    chk = _Check("wt")
    _check_shape(chk, ema, deterministic=True, allow_external=False)
    sig = ema.signature

    n = sig.sort_count - 3
    if n < 1:
        chk.fail("1", f"multidomain needs n+3 sorts with n >= 1, got {sig.sort_count}")
        return chk.report({})
    r = s = None
    qdom = ema.domains[n]
    sdom = ema.domains[n + 1]
    for i in range(n):
        if ema.domains[i] != IntLine(i + 1):
            chk.fail("1", f"sort {i + 1} must be integer copy {i + 1}")
    if isinstance(qdom, FiniteEnum) and qdom.labels == tuple(
        f"q{j}" for j in range(len(qdom.labels))
    ):
        r = len(qdom.labels)
    else:
        chk.fail("1", f"sort {n + 1} must be a state enum q0..q(r-1)")
    if isinstance(sdom, FiniteEnum) and sdom.labels == tuple(
        f"sigma{l}" for l in range(len(sdom.labels))
    ):
        s = len(sdom.labels)
    else:
        chk.fail("1", f"sort {n + 2} must be a letter enum sigma0..sigma(s-1)")
    if not isinstance(ema.domains[n + 2], Status):
        chk.fail("1", f"sort {n + 3} must be the status sort")
    if r is None or s is None:
        return chk.report({})

    expected_sig = wt_signature(n, r, s)
    _diff_symbols(chk, "2", "static", sig.static, expected_sig.static)
    _diff_interps(chk, "2", "static", ema.statics, wt_statics(expected_sig, n, r, s))
    if sig.static_input:
        chk.fail(
            "3",
            f"static input signature must be empty, found {[x.name for x in sig.static_input]}",
        )
    _diff_symbols(chk, "4", "dynamic", sig.dynamic, expected_sig.dynamic)
    _diff_interps(chk, "4", "initial", ema.initials, wt_initials(expected_sig, n))
    _diff_symbols(
        chk, "5", "dynamic input", sig.dynamic_input, expected_sig.dynamic_input
    )
    return chk.report(
        {"n": n, "k": wt_window_radius(ema), "r": r, "s": s}
    )


def _check_tram(ema: Ema) -> ClassReport:
    chk = _Check("tram")
    _check_shape(chk, ema, deterministic=True, allow_external=False)
    sig = ema.signature

    if sig.sort_count != 4:
        chk.fail("1", f"multidomain must have 4 sorts, got {sig.sort_count}")
        return chk.report({})
    r = None
    if ema.domains[0] != Naturals():
        chk.fail("1", "sort 1 must be the naturals")
    if ema.domains[1] != Naturals("addr"):
        chk.fail("1", "sort 2 must be the address copy of the naturals")
    qdom = ema.domains[2]
    if isinstance(qdom, FiniteEnum) and qdom.labels == tuple(
        f"q{j}" for j in range(len(qdom.labels))
    ):
        r = len(qdom.labels)
    else:
        chk.fail("1", "sort 3 must be a state enum q0..q(r-1)")
    if not isinstance(ema.domains[3], Status):
        chk.fail("1", "sort 4 must be the status sort")
    if r is None:
        return chk.report({})

    reg_names = [x.name for x in sig.static if x.name.startswith("reg")]
    n = len(reg_names)
    ops = tuple(x.name for x in sig.static if x.name in NAT_OPS)
    if n < 1 or reg_names != [f"reg{i}" for i in range(1, n + 1)]:
        chk.fail("2", "static signature must name base registers reg1..regn")
        return chk.report({})
    expected_sig = tram_signature(n, ops, r)
    _diff_symbols(chk, "2", "static", sig.static, expected_sig.static)
    _diff_interps(chk, "2", "static", ema.statics, tram_statics(expected_sig, n, ops, r))
    if sig.static_input:
        chk.fail(
            "3",
            f"static input signature must be empty, found {[x.name for x in sig.static_input]}",
        )
    _diff_symbols(chk, "4", "dynamic", sig.dynamic, expected_sig.dynamic)
    _diff_interps(chk, "4", "initial", ema.initials, tram_initials(expected_sig))
    _diff_symbols(
        chk, "5", "dynamic input", sig.dynamic_input, expected_sig.dynamic_input
    )
    return chk.report(
        {"n": n, "k": tram_addressing_depth(ema), "r": r, "ops": ops}
    )


def _check_gra(ema: Ema) -> ClassReport:
    chk = _Check("gra")
    sig = ema.signature

    if sig.sort_count != 3:
        chk.fail("1", f"multidomain must have 3 sorts, got {sig.sort_count}")
        return chk.report({})
    if ema.domains[0] != Naturals():
        chk.fail("1", "sort 1 must be the naturals")
    if not isinstance(ema.domains[1], Words):
        chk.fail("1", "sort 2 must be a word domain")
    if not isinstance(ema.domains[2], Status):
        chk.fail("1", "sort 3 must be the status sort")

    subst_names = [x.name for x in sig.static if x.name.startswith("subst")]
    count = len(subst_names)
    if count < 1 or subst_names != [f"subst{i}" for i in range(1, count + 1)]:
        chk.fail("2", "static signature must be substitution symbols subst1..substn")
        return chk.report({})
    expected_sig = gra_signature(count)
    _diff_symbols(chk, "2", "static", sig.static, expected_sig.static)
    for name in subst_names:
        have = ema.statics.get(name)
        if have is None:
            continue
        body = have.body
        if not (isinstance(body, Builtin) and body.kind == "subst"):
            chk.fail("2", f"static symbol {name!r} must be a substitution builtin")
        elif not body.params or not body.params[0]:
            chk.fail("2", f"substitution {name!r} has an empty left-hand side")
    if sig.static_input or sig.dynamic:
        found = [x.name for x in sig.static_input + sig.dynamic]
        chk.fail("3", f"static input and dynamic signatures must be empty, found {found}")
    _diff_symbols(
        chk, "4", "dynamic input", sig.dynamic_input, expected_sig.dynamic_input
    )
    _diff_symbols(chk, "5", "external", sig.external, expected_sig.external)
    alphabet = (
        ema.domains[1].alphabet if isinstance(ema.domains[1], Words) else ()
    )
    return chk.report({"rules": count, "alphabet": alphabet})
