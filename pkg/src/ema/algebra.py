"""Semantic domains, sort-tagged values, partial interpretations, evaluation.

A state is a multidomain plus one partial interpretation per signature
symbol.  Interpretations come in four shapes: a possibly-undefined element
(constants), a finite table (finite argument domains), a finite-support
table over a default (tape and register contents), and builtins for the
fixed primitives.  Term evaluation is strict: an undefined subterm makes
the whole term undefined, and "undefined" is a legitimate result (``None``),
never an exception.

The update operator ``oplus`` rewrites a partial function on a finite set
``z`` of points: outside ``z`` the old function survives, inside ``z`` the
new assignments apply, and points of ``z`` without a new value become
undefined.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .errors import (
    ArityMismatch,
    CoverageError,
    EmaTypeError,
    IncomparableInterpretations,
    ProjectionRequired,
    UnknownSymbol,
)
from .natops import NAT_OPS, apply_nat_op
from .signature import (
    STATUS_LABELS,
    STATUS_NAME,
    GroundTerm,
    Signature,
    SortId,
    Symbol,
)

# ---------------------------------------------------------------------------
# Domains


class Domain:
    """Base class for carrier-set descriptors."""


@dataclass(frozen=True, slots=True)
class FiniteEnum(Domain):
    labels: tuple[str, ...]


@dataclass(frozen=True, slots=True)
class IntLine(Domain):
    """A disjoint copy of the integers, tagged so copies never mix."""

    copy_tag: int = 1


@dataclass(frozen=True, slots=True)
class Naturals(Domain):
    """The naturals, or a tagged copy of them (e.g. the address copy)."""

    tag: str = ""


@dataclass(frozen=True, slots=True)
class Words(Domain):
    alphabet: tuple[str, ...]


@dataclass(frozen=True, slots=True)
class Atoms(Domain):
    """An unstructured infinite supply of nodes, identified by counter ids."""


@dataclass(frozen=True, slots=True)
class FiniteSubsets(Domain):
    base: Domain


@dataclass(frozen=True, slots=True)
class Status(Domain):
    labels: tuple[str, ...] = STATUS_LABELS


def domain_is_finite(d: Domain) -> bool:
    if isinstance(d, (FiniteEnum, Status)):
        return True
    if isinstance(d, Words):
        return not d.alphabet
    if isinstance(d, FiniteSubsets):
        return domain_is_finite(d.base)
    return False


def payload_ok(d: Domain, payload) -> bool:
    if isinstance(d, (FiniteEnum, Status)):
        return payload in d.labels
    if isinstance(d, IntLine):
        return type(payload) is int
    if isinstance(d, Naturals):
        return type(payload) is int and payload >= 0
    if isinstance(d, Words):
        return isinstance(payload, tuple) and all(x in d.alphabet for x in payload)
    if isinstance(d, Atoms):
        return type(payload) is int and payload >= 0
    if isinstance(d, FiniteSubsets):
        return isinstance(payload, frozenset) and all(
            payload_ok(d.base, x) for x in payload
        )
    return False


# ---------------------------------------------------------------------------
# Values


@dataclass(frozen=True, slots=True)
class Value:
    """A sort-tagged element of the multidomain.

    Structural equality compares sort and payload together, which is what
    table keys need.  Semantic equality between values of *different*
    sorts is a program error; use ``values_equal`` where the distinction
    matters.
    """

    sort: SortId
    payload: object


def values_equal(a: Value, b: Value) -> bool:
    if a.sort != b.sort:
        raise EmaTypeError(
            f"cannot compare values of sorts {a.sort} and {b.sort}"
        )
    return a.payload == b.payload


def make_value(domains: tuple[Domain, ...], sort: SortId, payload) -> Value:
    d = domains[sort - 1]
    if not payload_ok(d, payload):
        raise EmaTypeError(f"payload {payload!r} does not fit sort {sort} ({d})")
    return Value(sort, payload)


def value_sort_key(domains: tuple[Domain, ...], v: Value):
    """Deterministic ordering key used by canonical renderings."""
    d = domains[v.sort - 1]
    if isinstance(d, (FiniteEnum, Status)):
        return d.labels.index(v.payload)
    if isinstance(d, (IntLine, Naturals, Atoms)):
        return v.payload
    if isinstance(d, Words):
        return (len(v.payload), v.payload)
    if isinstance(d, FiniteSubsets):
        return (len(v.payload), tuple(sorted(map(repr, v.payload))))
    return repr(v.payload)


def render_value(domains: tuple[Domain, ...], v: Value) -> str:
    """Canonical one-line rendering used by traces and reports."""
    d = domains[v.sort - 1]
    if isinstance(d, (FiniteEnum, Status)):
        return str(v.payload)
    if isinstance(d, IntLine):
        return str(v.payload)
    if isinstance(d, Naturals):
        return f"{v.payload}@{d.tag}" if d.tag else str(v.payload)
    if isinstance(d, Words):
        return '"' + "".join(v.payload) + '"'
    if isinstance(d, Atoms):
        return f"atom_{v.payload}"
    if isinstance(d, FiniteSubsets):
        parts = sorted(_render_base(d.base, x) for x in v.payload)
        return "[" + ",".join(parts) + "]"
    return repr(v.payload)


def _render_base(d: Domain, payload) -> str:
    if isinstance(d, Atoms):
        return f"atom_{payload}"
    if isinstance(d, Words):
        return '"' + "".join(payload) + '"'
    if isinstance(d, FiniteSubsets):
        return "[" + ",".join(sorted(_render_base(d.base, x) for x in payload)) + "]"
    return str(payload)


# ---------------------------------------------------------------------------
# Partial interpretations

ArgTuple = tuple[Value, ...]


@dataclass
class MaybeElement:
    """A constant's interpretation: a value, or undefined."""

    value: Optional[Value] = None


@dataclass
class FiniteTable:
    """Explicit graph of a partial function over a finite argument domain."""

    entries: dict[ArgTuple, Value]


@dataclass
class DefaultedTable:
    """Finite-support function over an infinite argument sort.

    Every point maps to ``default`` except the listed exceptions; an
    exception of ``None`` means the function is undefined at that point.
    """

    default: Value
    exceptions: dict[ArgTuple, Optional[Value]]

    def normalized(self) -> "DefaultedTable":
        exc = {
            k: v
            for k, v in self.exceptions.items()
            if v is None or v.payload != self.default.payload
        }
        return DefaultedTable(self.default, exc)


@dataclass(frozen=True)
class Builtin:
    """A fixed primitive, identified by kind plus parameters.

    Kinds: ``succ``/``pred`` on an integer copy, ``cast`` (identity into
    the address copy), the natural-arithmetic catalog names, ``subst``
    (factor replacement, params = the rule's word pair), and ``new``
    (product-valued choice of a fresh atom).
    """

    kind: str
    params: tuple = ()


Body = Union[MaybeElement, FiniteTable, DefaultedTable, Builtin]


@dataclass
class PartialInterpretation:
    symbol: Symbol
    body: Body


def element(symbol: Symbol, value: Optional[Value]) -> PartialInterpretation:
    return PartialInterpretation(symbol, MaybeElement(value))


def _least_unused(ids: frozenset) -> int:
    n = 0
    while n in ids:
        n += 1
    return n


def _apply_builtin(pi: PartialInterpretation, args: ArgTuple):
    st = pi.symbol.sort_type
    kind = pi.body.kind
    if kind == "succ":
        return Value(st.result, args[0].payload + 1)
    if kind == "pred":
        return Value(st.result, args[0].payload - 1)
    if kind == "cast":
        return Value(st.result, args[0].payload)
    if kind in NAT_OPS:
        return Value(st.result, apply_nat_op(kind, [a.payload for a in args]))
    if kind == "subst":
        lhs, rhs = pi.body.params
        pos = args[0].payload
        word = args[1].payload
        if pos + len(lhs) <= len(word) and word[pos : pos + len(lhs)] == lhs:
            word = word[:pos] + rhs + word[pos + len(lhs) :]
        return Value(st.result, word)
    if kind == "new":
        current = args[0].payload
        fresh = _least_unused(current)
        atom_sort, set_sort = st.results
        return (
            Value(atom_sort, fresh),
            Value(set_sort, current | {fresh}),
        )
    raise EmaTypeError(f"unknown builtin kind {kind!r}")


def apply_interpretation(pi: PartialInterpretation, args: ArgTuple):
    """Look up or compute the (possibly undefined) result for ``args``."""
    body = pi.body
    if isinstance(body, MaybeElement):
        return body.value
    if isinstance(body, FiniteTable):
        return body.entries.get(args)
    if isinstance(body, DefaultedTable):
        if args in body.exceptions:
            return body.exceptions[args]
        return body.default
    return _apply_builtin(pi, args)


# ---------------------------------------------------------------------------
# States and evaluation


@dataclass
class State:
    """A snapshot multialgebra: every signature symbol interpreted.

    States are value-like; stepping builds a new state sharing unmodified
    interpretations.  Static and external interpretations are never
    rewritten through ``with_updates``.
    """

    signature: Signature
    domains: tuple[Domain, ...]
    interps: dict[str, PartialInterpretation]

    def interp(self, name: str) -> PartialInterpretation:
        try:
            return self.interps[name]
        except KeyError:
            raise UnknownSymbol(name) from None

    def value_of(self, name: str) -> Optional[Value]:
        body = self.interp(name).body
        if not isinstance(body, MaybeElement):
            raise EmaTypeError(f"symbol {name!r} is not a constant")
        return body.value

    def status(self) -> str:
        v = self.value_of(STATUS_NAME)
        if v is None:
            raise EmaTypeError("status constant is undefined")
        return v.payload

    def domain(self, sort: SortId) -> Domain:
        return self.domains[sort - 1]

    def with_interps(self, replacements: dict[str, PartialInterpretation]) -> "State":
        interps = dict(self.interps)
        interps.update(replacements)
        return State(self.signature, self.domains, interps)

    def with_updates(self, deltas: dict[str, tuple[frozenset, dict]]) -> "State":
        """Fold per-symbol (z, g) update pairs in with ``oplus``."""
        interps = dict(self.interps)
        for name, (z, g) in deltas.items():
            part = self.signature.part_of(name)
            if part not in ("dynamic", "dynamic_input"):
                raise EmaTypeError(f"cannot update {part} symbol {name!r}")
            interps[name] = oplus(self.interps[name], z, g)
        return State(self.signature, self.domains, interps)


def eval_term(state: State, t: GroundTerm, cache: Optional[dict] = None) -> Optional[Value]:
    """Bottom-up strict evaluation; returns ``None`` when undefined.

    ``cache`` memoizes by subterm identity within one evaluation context,
    so shared subterm objects are computed once.
    """
    if cache is not None:
        hit = cache.get(id(t), _MISS)
        if hit is not _MISS:
            return hit
    pi = state.interps.get(t.head)
    if pi is None:
        raise UnknownSymbol(t.head)
    st = pi.symbol.sort_type
    if len(st.results) > 1:
        raise ProjectionRequired(t.head)
    if len(t.args) != len(st.args):
        raise ArityMismatch(t.head, len(st.args), len(t.args))
    args = []
    defined = True
    for a in t.args:
        v = eval_term(state, a, cache)
        if v is None:
            defined = False
            break
        args.append(v)
    if not defined:
        result: Optional[Value] = None
    else:
        body = pi.body
        kind = type(body)
        if kind is MaybeElement:
            result = body.value
        elif kind is DefaultedTable:
            key = tuple(args)
            exc = body.exceptions
            result = exc[key] if key in exc else body.default
        elif kind is FiniteTable:
            result = body.entries.get(tuple(args))
        else:
            result = _apply_builtin(pi, tuple(args))
    if cache is not None:
        cache[id(t)] = result
    return result


_MISS = object()


def eval_multiterm(
    state: State, t: GroundTerm, cache: Optional[dict] = None
) -> Optional[tuple[Value, ...]]:
    """Evaluate a product-valued application, yielding the whole tuple.

    Both components come from the single application; strict in the
    arguments like ``eval_term``.
    """
    pi = state.interps.get(t.head)
    if pi is None:
        raise UnknownSymbol(t.head)
    st = pi.symbol.sort_type
    if not st.is_product:
        raise EmaTypeError(f"symbol {t.head!r} is not product-valued")
    if len(t.args) != st.arity:
        raise ArityMismatch(t.head, st.arity, len(t.args))
    args = []
    for a in t.args:
        v = eval_term(state, a, cache)
        if v is None:
            return None
        args.append(v)
    if not isinstance(pi.body, Builtin):
        raise EmaTypeError("product-valued symbols must be interpreted by builtins")
    out = _apply_builtin(pi, tuple(args))
    if out is None:
        return None
    return out


# ---------------------------------------------------------------------------
# The update operator


def _check_arg_tuple(st, args: ArgTuple):
    if len(args) != st.arity:
        raise EmaTypeError(
            f"argument tuple {args!r} has arity {len(args)}, expected {st.arity}"
        )
    for got, want in zip(args, st.args):
        if got.sort != want:
            raise EmaTypeError(f"argument sort {got.sort} does not match {want}")


def oplus(
    f: PartialInterpretation,
    z: frozenset,
    g: dict[ArgTuple, Optional[Value]],
) -> PartialInterpretation:
    """Override ``f`` on the points of ``z`` with the assignments of ``g``.

    The result is defined exactly on ``(dom f minus z) union (dom g
    intersect z)``; points of ``z`` with no defined entry in ``g`` become
    undefined.  With ``z`` empty the result is ``f`` unchanged.
    """
    st = f.symbol.sort_type
    for args in z:
        _check_arg_tuple(st, args)
    for args, v in g.items():
        _check_arg_tuple(st, args)
        if v is not None and v.sort != st.result:
            raise EmaTypeError(
                f"update value sort {v.sort} does not match result sort {st.result}"
            )
    body = f.body
    if isinstance(body, Builtin):
        if not z:
            return f
        raise EmaTypeError(
            f"cannot update builtin interpretation of {f.symbol.name!r}"
        )
    if isinstance(body, MaybeElement):
        if not z:
            return f
        return PartialInterpretation(f.symbol, MaybeElement(g.get((), None)))
    if isinstance(body, FiniteTable):
        entries = {k: v for k, v in body.entries.items() if k not in z}
        for args in z:
            v = g.get(args)
            if v is not None:
                entries[args] = v
        return PartialInterpretation(f.symbol, FiniteTable(entries))
    if isinstance(body, DefaultedTable):
        exceptions = {k: v for k, v in body.exceptions.items() if k not in z}
        for args in z:
            v = g.get(args)
            if v is None:
                exceptions[args] = None
            elif v.payload != body.default.payload:
                exceptions[args] = v
            else:
                exceptions.pop(args, None)
        return PartialInterpretation(
            f.symbol, DefaultedTable(body.default, exceptions)
        )
    raise EmaTypeError(f"unknown interpretation body {body!r}")


def interpretations_equal(
    a: PartialInterpretation, b: PartialInterpretation
) -> bool:
    """Extensional equality of two interpretations of the same sort type."""
    if a.symbol.sort_type != b.symbol.sort_type:
        raise EmaTypeError("cannot compare interpretations of different sort types")
    ab, bb = a.body, b.body
    if isinstance(ab, Builtin) or isinstance(bb, Builtin):
        if isinstance(ab, Builtin) and isinstance(bb, Builtin):
            return ab.kind == bb.kind and ab.params == bb.params
        raise IncomparableInterpretations(
            "builtin interpretations compare only with builtins"
        )
    if isinstance(ab, MaybeElement) and isinstance(bb, MaybeElement):
        if (ab.value is None) != (bb.value is None):
            return False
        return ab.value is None or ab.value == bb.value
    if isinstance(ab, FiniteTable) and isinstance(bb, FiniteTable):
        return ab.entries == bb.entries
    if isinstance(ab, DefaultedTable) and isinstance(bb, DefaultedTable):
        na, nb = ab.normalized(), bb.normalized()
        return na.default == nb.default and na.exceptions == nb.exceptions
    # A finite graph never equals a finite-support-over-default function:
    # the latter is defined almost everywhere.
    return False


# ---------------------------------------------------------------------------
# Whole-state validation (used by public constructors, not hot paths)


def validate_state(state: State) -> None:
    sig = state.signature
    if len(state.domains) != sig.sort_count:
        raise CoverageError(
            f"{len(state.domains)} domains for {sig.sort_count} sorts"
        )
    if not isinstance(state.domains[-1], Status):
        raise CoverageError("last sort must carry the status domain")
    names = {s.name for s in sig.all_symbols()}
    missing = names - state.interps.keys()
    extra = state.interps.keys() - names
    if missing or extra:
        raise CoverageError(
            f"interpretations missing {sorted(missing)}, extra {sorted(extra)}"
        )
    for name, pi in state.interps.items():
        sym = sig.symbol(name)
        if pi.symbol != sym:
            raise CoverageError(f"interpretation of {name!r} bound to wrong symbol")
        _validate_interp(state.domains, pi)
    status = state.interps[STATUS_NAME].body
    if not isinstance(status, MaybeElement) or status.value is None:
        raise CoverageError("status must be a defined constant")


def _validate_interp(domains, pi: PartialInterpretation) -> None:
    st = pi.symbol.sort_type
    body = pi.body
    if isinstance(body, MaybeElement):
        if st.arity != 0 or st.is_product:
            raise EmaTypeError(f"{pi.symbol.name!r}: element body needs a constant")
        if body.value is not None:
            _check_value(domains, st.result, body.value, pi.symbol.name)
        return
    if isinstance(body, FiniteTable):
        if st.arity == 0 or st.is_product:
            raise EmaTypeError(f"{pi.symbol.name!r}: finite table needs arguments")
        if not all(domain_is_finite(domains[s - 1]) for s in st.args):
            raise EmaTypeError(
                f"{pi.symbol.name!r}: finite tables need finite argument sorts"
            )
        for args, v in body.entries.items():
            _check_arg_tuple(st, args)
            for a in args:
                _check_value(domains, a.sort, a, pi.symbol.name)
            _check_value(domains, st.result, v, pi.symbol.name)
        return
    if isinstance(body, DefaultedTable):
        if st.arity != 1 or st.is_product:
            raise EmaTypeError(
                f"{pi.symbol.name!r}: defaulted tables are for unary symbols"
            )
        if domain_is_finite(domains[st.args[0] - 1]):
            raise EmaTypeError(
                f"{pi.symbol.name!r}: defaulted tables need an infinite argument sort"
            )
        _check_value(domains, st.result, body.default, pi.symbol.name)
        for args, v in body.exceptions.items():
            _check_arg_tuple(st, args)
            for a in args:
                _check_value(domains, a.sort, a, pi.symbol.name)
            if v is not None:
                _check_value(domains, st.result, v, pi.symbol.name)
        return
    if isinstance(body, Builtin):
        known = {"succ", "pred", "cast", "subst", "new"} | set(NAT_OPS)
        if body.kind not in known:
            raise EmaTypeError(f"unknown builtin kind {body.kind!r}")
        return
    raise EmaTypeError(f"unknown interpretation body {body!r}")


def _check_value(domains, sort: SortId, v: Value, owner: str) -> None:
    if v.sort != sort:
        raise EmaTypeError(f"{owner!r}: value of sort {v.sort} where {sort} expected")
    if not payload_ok(domains[sort - 1], v.payload):
        raise EmaTypeError(
            f"{owner!r}: payload {v.payload!r} does not fit sort {sort}"
        )
