"""JSON document formats for machines, inputs, and choice scripts.

Every file is an envelope ``{"kind": ..., "version": "1", "body": ...}``
with no other top-level keys.  Output is canonical: object keys sorted,
arrays in declaration order, compact separators, one trailing newline, so
identical structures always serialize to identical bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from .algebra import (
    Atoms,
    Builtin,
    DefaultedTable,
    Domain,
    FiniteEnum,
    FiniteSubsets,
    FiniteTable,
    IntLine,
    MaybeElement,
    Naturals,
    PartialInterpretation,
    Status,
    Value,
    Words,
    value_sort_key,
)
from .classes import gra_input, tram_input, wt_input
from .engine import Ema, Input, Scripted
from .errors import DocumentError, EmaError
from .functional import (
    BetaRow,
    BetaTable,
    GuardPair,
    PairedMultiterm,
    Presentation,
    UpdateTuple,
)
from .machines import Content, Grammar, OpApply, Tram, WindowTm
from .signature import (
    GroundTerm,
    NSortType,
    Signature,
    Symbol,
)

FORMAT_VERSION = "1"
KINDS = ("ema", "tm", "tram", "grammar", "input", "choices")


def canonical_json(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def wrap(kind: str, body: dict) -> dict:
    return {"kind": kind, "version": FORMAT_VERSION, "body": body}


def unwrap(doc, expected: Optional[tuple] = None) -> tuple[str, dict]:
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    extra = set(doc) - {"kind", "version", "body"}
    if extra:
        raise DocumentError(f"unknown top-level keys {sorted(extra)}")
    for key in ("kind", "version", "body"):
        if key not in doc:
            raise DocumentError(f"missing top-level key {key!r}")
    if doc["version"] != FORMAT_VERSION:
        raise DocumentError(f"unsupported version {doc['version']!r}")
    kind = doc["kind"]
    if kind not in KINDS:
        raise DocumentError(f"unknown kind {kind!r}")
    if expected and kind not in expected:
        raise DocumentError(f"expected a {'/'.join(expected)} document, got {kind!r}")
    return kind, doc["body"]


# ---------------------------------------------------------------------------
# Values and domains


def _word_to_json(letters):
    if all(len(x) == 1 for x in letters):
        return "".join(letters)
    return list(letters)


def _word_from_json(raw, where: str):
    if isinstance(raw, str):
        return tuple(raw)
    if isinstance(raw, list):
        return tuple(raw)
    raise DocumentError(f"{where}: a word must be a string or a list of letters")


def payload_to_json(domain: Domain, payload):
    if isinstance(domain, (FiniteEnum, Status)):
        return payload
    if isinstance(domain, (IntLine, Naturals, Atoms)):
        return payload
    if isinstance(domain, Words):
        return _word_to_json(payload)
    if isinstance(domain, FiniteSubsets):
        return sorted(
            (payload_to_json(domain.base, x) for x in payload), key=repr
        )
    raise DocumentError(f"cannot serialize values of {domain!r}")


def payload_from_json(domain: Domain, raw, where: str):
    if isinstance(domain, (FiniteEnum, Status)):
        if raw not in domain.labels:
            raise DocumentError(f"{where}: unknown label {raw!r}")
        return raw
    if isinstance(domain, (IntLine, Naturals, Atoms)):
        if not isinstance(raw, int) or isinstance(raw, bool):
            raise DocumentError(f"{where}: expected an integer, got {raw!r}")
        return raw
    if isinstance(domain, Words):
        return _word_from_json(raw, where)
    if isinstance(domain, FiniteSubsets):
        if not isinstance(raw, list):
            raise DocumentError(f"{where}: expected a list")
        return frozenset(payload_from_json(domain.base, x, where) for x in raw)
    raise DocumentError(f"{where}: cannot read values of {domain!r}")


def domain_to_json(d: Domain) -> dict:
    if isinstance(d, Status):
        return {"kind": "status"}
    if isinstance(d, FiniteEnum):
        return {"kind": "enum", "labels": list(d.labels)}
    if isinstance(d, IntLine):
        return {"kind": "int_line", "copy": d.copy_tag}
    if isinstance(d, Naturals):
        return {"kind": "naturals", "tag": d.tag}
    if isinstance(d, Words):
        return {"kind": "words", "alphabet": list(d.alphabet)}
    if isinstance(d, Atoms):
        return {"kind": "atoms"}
    if isinstance(d, FiniteSubsets):
        return {"kind": "finite_subsets", "base": domain_to_json(d.base)}
    raise DocumentError(f"cannot serialize domain {d!r}")


def domain_from_json(raw, where: str) -> Domain:
    kind = _get(raw, "kind", where)
    if kind == "status":
        return Status()
    if kind == "enum":
        return FiniteEnum(tuple(_get(raw, "labels", where)))
    if kind == "int_line":
        return IntLine(_get(raw, "copy", where))
    if kind == "naturals":
        return Naturals(raw.get("tag", ""))
    if kind == "words":
        return Words(tuple(_get(raw, "alphabet", where)))
    if kind == "atoms":
        return Atoms()
    if kind == "finite_subsets":
        return FiniteSubsets(domain_from_json(_get(raw, "base", where), where))
    raise DocumentError(f"{where}: unknown domain kind {kind!r}")


def _get(raw, key, where):
    if not isinstance(raw, dict) or key not in raw:
        raise DocumentError(f"{where}: missing key {key!r}")
    return raw[key]


# ---------------------------------------------------------------------------
# Terms, updates, presentations


def term_to_json(t: GroundTerm) -> dict:
    return {"head": t.head, "args": [term_to_json(a) for a in t.args]}


def term_from_json(raw, where: str) -> GroundTerm:
    head = _get(raw, "head", where)
    return GroundTerm(
        head, tuple(term_from_json(a, where) for a in raw.get("args", []))
    )


def _update_to_json(u: UpdateTuple) -> dict:
    if isinstance(u.value, PairedMultiterm):
        value = {
            "source": term_to_json(u.value.source),
            "component": u.value.component,
        }
    else:
        value = term_to_json(u.value)
    return {"args": [term_to_json(a) for a in u.args], "value": value}


def _update_from_json(raw, where: str) -> UpdateTuple:
    value_raw = _get(raw, "value", where)
    if "source" in value_raw:
        value = PairedMultiterm(
            term_from_json(_get(value_raw, "source", where), where),
            _get(value_raw, "component", where),
        )
    else:
        value = term_from_json(value_raw, where)
    return UpdateTuple(
        tuple(term_from_json(a, where) for a in raw.get("args", [])), value
    )


def presentation_to_json(p: Presentation) -> dict:
    return {
        "guards": [
            {"left": term_to_json(g.left), "right": term_to_json(g.right)}
            for g in p.guards
        ],
        "tables": [
            {
                "symbol": t.symbol,
                "rows": [
                    {
                        "pattern": row.pattern,
                        "updates": [_update_to_json(u) for u in row.updates],
                    }
                    for row in t.rows
                ],
            }
            for t in p.tables
        ],
    }


def presentation_from_json(raw, where: str) -> Presentation:
    guards = tuple(
        GuardPair(
            term_from_json(_get(g, "left", where), where),
            term_from_json(_get(g, "right", where), where),
        )
        for g in _get(raw, "guards", where)
    )
    tables = []
    for traw in _get(raw, "tables", where):
        rows = tuple(
            BetaRow(
                _get(rraw, "pattern", where),
                tuple(
                    _update_from_json(u, where) for u in rraw.get("updates", [])
                ),
            )
            for rraw in _get(traw, "rows", where)
        )
        tables.append(BetaTable(_get(traw, "symbol", where), rows))
    return Presentation(guards, tuple(tables))


# ---------------------------------------------------------------------------
# Interpretations


def _args_to_json(domains, sorts, args):
    return [payload_to_json(domains[s - 1], v.payload) for s, v in zip(sorts, args)]


def _args_from_json(domains, sorts, raw, where):
    if not isinstance(raw, list) or len(raw) != len(sorts):
        raise DocumentError(f"{where}: argument tuple must have {len(sorts)} entries")
    return tuple(
        Value(s, payload_from_json(domains[s - 1], x, where))
        for s, x in zip(sorts, raw)
    )


def interp_to_json(domains, pi: PartialInterpretation) -> dict:
    st = pi.symbol.sort_type
    body = pi.body
    if isinstance(body, MaybeElement):
        value = (
            None
            if body.value is None
            else payload_to_json(domains[st.result - 1], body.value.payload)
        )
        return {"kind": "element", "value": value}
    if isinstance(body, FiniteTable):
        entries = sorted(
            body.entries.items(),
            key=lambda kv: tuple(value_sort_key(domains, a) for a in kv[0]),
        )
        return {
            "kind": "finite",
            "entries": [
                [
                    _args_to_json(domains, st.args, args),
                    payload_to_json(domains[st.result - 1], v.payload),
                ]
                for args, v in entries
            ],
        }
    if isinstance(body, DefaultedTable):
        norm = body.normalized()
        entries = sorted(
            norm.exceptions.items(),
            key=lambda kv: tuple(value_sort_key(domains, a) for a in kv[0]),
        )
        return {
            "kind": "defaulted",
            "default": payload_to_json(domains[st.result - 1], norm.default.payload),
            "entries": [
                [
                    _args_to_json(domains, st.args, args),
                    None
                    if v is None
                    else payload_to_json(domains[st.result - 1], v.payload),
                ]
                for args, v in entries
            ],
        }
    if isinstance(body, Builtin):
        out = {"kind": "builtin", "op": body.kind}
        if body.kind == "subst":
            out["lhs"] = list(body.params[0])
            out["rhs"] = list(body.params[1])
        return out
    raise DocumentError(f"cannot serialize interpretation {body!r}")


def interp_from_json(domains, symbol: Symbol, raw, where: str) -> PartialInterpretation:
    st = symbol.sort_type
    kind = _get(raw, "kind", where)
    if kind == "element":
        value = raw.get("value")
        v = (
            None
            if value is None
            else Value(
                st.result, payload_from_json(domains[st.result - 1], value, where)
            )
        )
        return PartialInterpretation(symbol, MaybeElement(v))
    if kind == "finite":
        entries = {}
        for args_raw, v_raw in _get(raw, "entries", where):
            args = _args_from_json(domains, st.args, args_raw, where)
            entries[args] = Value(
                st.result, payload_from_json(domains[st.result - 1], v_raw, where)
            )
        return PartialInterpretation(symbol, FiniteTable(entries))
    if kind == "defaulted":
        default = Value(
            st.result,
            payload_from_json(domains[st.result - 1], _get(raw, "default", where), where),
        )
        exceptions = {}
        for args_raw, v_raw in raw.get("entries", []):
            args = _args_from_json(domains, st.args, args_raw, where)
            exceptions[args] = (
                None
                if v_raw is None
                else Value(
                    st.result,
                    payload_from_json(domains[st.result - 1], v_raw, where),
                )
            )
        return PartialInterpretation(symbol, DefaultedTable(default, exceptions))
    if kind == "builtin":
        op = _get(raw, "op", where)
        params = ()
        if op == "subst":
            params = (
                tuple(_word_from_json(_get(raw, "lhs", where), where)),
                tuple(_word_from_json(_get(raw, "rhs", where), where)),
            )
        return PartialInterpretation(symbol, Builtin(op, params))
    raise DocumentError(f"{where}: unknown interpretation kind {kind!r}")


# ---------------------------------------------------------------------------
# Machine documents


def _symbol_to_json(s: Symbol) -> dict:
    return {
        "name": s.name,
        "args": list(s.sort_type.args),
        "results": list(s.sort_type.results),
    }


def _symbol_from_json(raw, where) -> Symbol:
    return Symbol(
        _get(raw, "name", where),
        NSortType(
            tuple(raw.get("args", [])), tuple(_get(raw, "results", where))
        ),
    )


def ema_to_document(ema: Ema) -> dict:
    sig = ema.signature
    body = {
        "signature": {
            "sorts": sig.sort_count,
            "static": [_symbol_to_json(s) for s in sig.static],
            "static_input": [_symbol_to_json(s) for s in sig.static_input],
            "dynamic_input": [_symbol_to_json(s) for s in sig.dynamic_input],
            "dynamic": [_symbol_to_json(s) for s in sig.dynamic],
            "external": [_symbol_to_json(s) for s in sig.external],
        },
        "domains": [domain_to_json(d) for d in ema.domains],
        "statics": {
            name: interp_to_json(ema.domains, pi)
            for name, pi in ema.statics.items()
        },
        "initials": {
            name: interp_to_json(ema.domains, pi)
            for name, pi in ema.initials.items()
        },
        "functionals": [presentation_to_json(p) for p in ema.functionals],
    }
    return wrap("ema", body)


def ema_from_document(doc) -> Ema:
    _, body = unwrap(doc, ("ema",))
    where = "ema document"
    sraw = _get(body, "signature", where)
    sig = Signature(
        sort_count=_get(sraw, "sorts", where),
        static=tuple(_symbol_from_json(x, where) for x in sraw.get("static", [])),
        static_input=tuple(
            _symbol_from_json(x, where) for x in sraw.get("static_input", [])
        ),
        dynamic_input=tuple(
            _symbol_from_json(x, where) for x in sraw.get("dynamic_input", [])
        ),
        dynamic=tuple(_symbol_from_json(x, where) for x in sraw.get("dynamic", [])),
        external=tuple(_symbol_from_json(x, where) for x in sraw.get("external", [])),
    )
    domains = tuple(
        domain_from_json(d, where) for d in _get(body, "domains", where)
    )
    statics = {
        name: interp_from_json(domains, sig.symbol(name), raw, f"statics.{name}")
        for name, raw in _get(body, "statics", where).items()
    }
    initials = {
        name: interp_from_json(domains, sig.symbol(name), raw, f"initials.{name}")
        for name, raw in _get(body, "initials", where).items()
    }
    functionals = tuple(
        presentation_from_json(p, where) for p in _get(body, "functionals", where)
    )
    try:
        return Ema(sig, domains, statics, initials, functionals)
    except EmaError as exc:
        raise DocumentError(f"invalid ema document: {exc}") from exc


def _lc_to_json(lc) -> dict:
    state, windows = lc
    return {"state": state, "windows": [list(w) for w in windows]}


def _lc_from_json(raw, where):
    return (
        _get(raw, "state", where),
        tuple(tuple(w) for w in _get(raw, "windows", where)),
    )


def tm_to_document(m: WindowTm) -> dict:
    def lc_key(lc):
        state, windows = lc
        return (m.states.index(state), tuple(tuple(m.alphabet.index(x) for x in w) for w in windows))

    rules = [
        {
            "when": _lc_to_json(lc),
            "state": m.delta[lc],
            "write": [list(w) for w in m.writes[lc]],
            "move": list(m.moves[lc]),
        }
        for lc in sorted(m.delta, key=lc_key)
    ]
    body = {
        "tapes": m.tapes,
        "radius": m.radius,
        "alphabet": list(m.alphabet),
        "states": list(m.states),
        "accept": [_lc_to_json(lc) for lc in sorted(m.accept, key=lc_key)],
        "reject": [_lc_to_json(lc) for lc in sorted(m.reject, key=lc_key)],
        "rules": rules,
    }
    return wrap("tm", body)


def tm_from_document(doc) -> WindowTm:
    _, body = unwrap(doc, ("tm",))
    where = "tm document"
    delta, writes, moves = {}, {}, {}
    for rule in _get(body, "rules", where):
        lc = _lc_from_json(_get(rule, "when", where), where)
        delta[lc] = _get(rule, "state", where)
        writes[lc] = tuple(tuple(w) for w in _get(rule, "write", where))
        moves[lc] = tuple(_get(rule, "move", where))
    try:
        return WindowTm(
            tapes=_get(body, "tapes", where),
            radius=_get(body, "radius", where),
            alphabet=tuple(_get(body, "alphabet", where)),
            states=tuple(_get(body, "states", where)),
            accept=frozenset(
                _lc_from_json(x, where) for x in body.get("accept", [])
            ),
            reject=frozenset(
                _lc_from_json(x, where) for x in body.get("reject", [])
            ),
            delta=delta,
            writes=writes,
            moves=moves,
        )
    except EmaError as exc:
        raise DocumentError(f"invalid tm document: {exc}") from exc


def _arith_to_json(t) -> dict:
    if isinstance(t, Content):
        return {"content": [t.base, t.depth]}
    return {"op": t.op, "args": [_arith_to_json(a) for a in t.args]}


def _arith_from_json(raw, where):
    if "content" in raw:
        base, depth = raw["content"]
        return Content(base, depth)
    return OpApply(
        _get(raw, "op", where),
        tuple(_arith_from_json(a, where) for a in raw.get("args", [])),
    )


def tram_to_document(t: Tram) -> dict:
    def key(k):
        state, bools = k
        return (t.states.index(state), bools)

    rules = [
        {
            "state": state,
            "bools": bools,
            "next": t.delta[(state, bools)],
            "writes": [
                {
                    "base": i,
                    "depth": j,
                    "term": _arith_to_json(t.writes[(state, bools)][(i, j)]),
                }
                for (i, j) in sorted(t.writes[(state, bools)])
            ],
        }
        for state, bools in sorted(t.delta, key=key)
    ]
    body = {
        "registers": t.registers,
        "depth": t.depth,
        "ops": list(t.ops),
        "states": list(t.states),
        "accept": [
            {"state": s, "bools": b} for s, b in sorted(t.accept, key=key)
        ],
        "reject": [
            {"state": s, "bools": b} for s, b in sorted(t.reject, key=key)
        ],
        "rules": rules,
    }
    return wrap("tram", body)


def tram_from_document(doc) -> Tram:
    _, body = unwrap(doc, ("tram",))
    where = "tram document"
    delta, writes = {}, {}
    for rule in _get(body, "rules", where):
        key = (_get(rule, "state", where), _get(rule, "bools", where))
        delta[key] = _get(rule, "next", where)
        writes[key] = {
            (_get(w, "base", where), _get(w, "depth", where)): _arith_from_json(
                _get(w, "term", where), where
            )
            for w in _get(rule, "writes", where)
        }
    try:
        return Tram(
            registers=_get(body, "registers", where),
            depth=_get(body, "depth", where),
            ops=tuple(_get(body, "ops", where)),
            states=tuple(_get(body, "states", where)),
            accept=frozenset(
                (x["state"], x["bools"]) for x in body.get("accept", [])
            ),
            reject=frozenset(
                (x["state"], x["bools"]) for x in body.get("reject", [])
            ),
            delta=delta,
            writes=writes,
        )
    except EmaError as exc:
        raise DocumentError(f"invalid tram document: {exc}") from exc


def grammar_to_document(g: Grammar) -> dict:
    body = {
        "alphabet": list(g.alphabet),
        "rules": [
            [_word_to_json(u), _word_to_json(v)] for u, v in g.rules
        ],
    }
    return wrap("grammar", body)


def grammar_from_document(doc) -> Grammar:
    _, body = unwrap(doc, ("grammar",))
    where = "grammar document"
    try:
        return Grammar(
            alphabet=tuple(_get(body, "alphabet", where)),
            rules=tuple(
                (
                    _word_from_json(u, where),
                    _word_from_json(v, where),
                )
                for u, v in _get(body, "rules", where)
            ),
        )
    except EmaError as exc:
        raise DocumentError(f"invalid grammar document: {exc}") from exc


# ---------------------------------------------------------------------------
# Inputs and choices


@dataclass
class InputSpec:
    """Parsed input document, resolved against a machine when used."""

    status: str = "go"
    word: Optional[tuple[str, ...]] = None
    memory: Optional[dict[int, int]] = None
    static_raw: dict = field(default_factory=dict)
    dynamic_raw: dict = field(default_factory=dict)


def input_to_document(spec: InputSpec) -> dict:
    body: dict = {}
    if spec.status != "go":
        body["status"] = spec.status
    if spec.word is not None:
        body["word"] = _word_to_json(spec.word)
    if spec.memory is not None:
        body["memory"] = {str(a): v for a, v in spec.memory.items()}
    if spec.static_raw:
        body["static"] = spec.static_raw
    if spec.dynamic_raw:
        body["dynamic"] = spec.dynamic_raw
    return wrap("input", body)


def input_from_document(doc) -> InputSpec:
    _, body = unwrap(doc, ("input",))
    where = "input document"
    known = {"status", "word", "memory", "static", "dynamic"}
    extra = set(body) - known
    if extra:
        raise DocumentError(f"{where}: unknown keys {sorted(extra)}")
    spec = InputSpec()
    spec.status = body.get("status", "go")
    if spec.status not in ("go", "acc", "rej"):
        raise DocumentError(f"{where}: bad status {spec.status!r}")
    if "word" in body:
        spec.word = _word_from_json(body["word"], where)
    if "memory" in body:
        raw = body["memory"]
        if not isinstance(raw, dict):
            raise DocumentError(f"{where}: memory must be an object")
        spec.memory = {int(a): v for a, v in raw.items()}
    spec.static_raw = body.get("static", {})
    spec.dynamic_raw = body.get("dynamic", {})
    return spec


def resolve_input_for_ema(spec: InputSpec, ema: Ema) -> Input:
    """Build an engine input from a spec, using the machine's shape to
    interpret the word/memory shorthands."""
    if spec.static_raw or spec.dynamic_raw:
        static = {
            name: interp_from_json(
                ema.domains, ema.signature.symbol(name), raw, f"static.{name}"
            )
            for name, raw in spec.static_raw.items()
        }
        dynamic = {
            name: interp_from_json(
                ema.domains, ema.signature.symbol(name), raw, f"dynamic.{name}"
            )
            for name, raw in spec.dynamic_raw.items()
        }
        return Input(static=static, dynamic=dynamic)
    sig = ema.signature
    if spec.memory is not None:
        if not sig.has("c"):
            raise DocumentError("memory inputs need a register-machine shape")
        return tram_input(sig, spec.memory, spec.status)
    if spec.word is not None:
        if sig.has("w"):
            return gra_input(sig, spec.word, spec.status)
        if sig.has("c1"):
            n = sum(1 for s in sig.dynamic_input if s.name.startswith("c"))
            slabels = ema.domains[sig.symbol("c1").sort_type.result - 1].labels
            indices = []
            for x in spec.word:
                if x not in slabels:
                    raise DocumentError(f"input letter {x!r} not in the alphabet")
                indices.append(slabels.index(x))
            return wt_input(sig, n, indices, spec.status)
        raise DocumentError("word inputs need a tape or word shape")
    # Bare input: empty word / empty memory / just a status.
    if sig.has("c") and not sig.has("c1"):
        return tram_input(sig, {}, spec.status)
    if sig.has("c1"):
        n = sum(1 for s in sig.dynamic_input if s.name.startswith("c"))
        return wt_input(sig, n, [], spec.status)
    if sig.has("w"):
        return gra_input(sig, (), spec.status)
    raise DocumentError("cannot infer an input shape; give static/dynamic maps")


def choices_to_document(source: Scripted) -> dict:
    body = {
        "branches": list(source.branches),
        "externals": [
            {name: (v.payload if isinstance(v, Value) else v) for name, v in ext.items()}
            for ext in source.externals
        ],
    }
    return wrap("choices", body)


def choices_from_document(doc) -> Scripted:
    _, body = unwrap(doc, ("choices",))
    where = "choices document"
    known = {"branches", "externals"}
    extra = set(body) - known
    if extra:
        raise DocumentError(f"{where}: unknown keys {sorted(extra)}")
    return Scripted(
        branches=tuple(body.get("branches", [])),
        externals=tuple(dict(x) for x in body.get("externals", [])),
    )


# ---------------------------------------------------------------------------
# Dispatch


def object_to_document(obj) -> dict:
    if isinstance(obj, Ema):
        return ema_to_document(obj)
    if isinstance(obj, WindowTm):
        return tm_to_document(obj)
    if isinstance(obj, Tram):
        return tram_to_document(obj)
    if isinstance(obj, Grammar):
        return grammar_to_document(obj)
    if isinstance(obj, InputSpec):
        return input_to_document(obj)
    if isinstance(obj, Scripted):
        return choices_to_document(obj)
    raise DocumentError(f"cannot serialize {type(obj).__name__}")


_PARSERS = {
    "ema": ema_from_document,
    "tm": tm_from_document,
    "tram": tram_from_document,
    "grammar": grammar_from_document,
    "input": input_from_document,
    "choices": choices_from_document,
}


def parse_document(doc, expected: Optional[tuple] = None):
    kind, _ = unwrap(doc, expected)
    return kind, _PARSERS[kind](doc)


def load_path(path, expected: Optional[tuple] = None):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path} is not valid JSON: {exc}") from exc
    return parse_document(doc, expected)


def dump_path(path, obj) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(canonical_json(object_to_document(obj)))
