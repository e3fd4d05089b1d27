"""Sorts, typed symbols, ground terms, and five-part signatures.

Sorts are 1-based indices into an ordered multidomain; the last sort is
reserved for the run status and its three-element carrier.  A signature
partitions its symbols into five parts: static framework, static input,
dynamic input, dynamic, and external.  Exactly one symbol may involve the
status sort: the constant named ``status`` in the dynamic-input part.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator

from .errors import (
    ArityMismatch,
    ProjectionRequired,
    SignatureError,
    SortMismatch,
    UnknownSymbol,
)

SortId = int

STATUS_NAME = "status"
STATUS_LABELS = ("go", "acc", "rej")

PART_NAMES = ("static", "static_input", "dynamic_input", "dynamic", "external")


@dataclass(frozen=True, slots=True)
class NSortType:
    """Shape of a symbol: argument sorts plus one or more result sorts.

    A single result sort is the plain case; more than one marks a
    product-valued operation whose components always fire together.
    Arity 0 with one result denotes a constant that may be undefined.
    """

    args: tuple[SortId, ...]
    results: tuple[SortId, ...]

    def __post_init__(self):
        if not self.results:
            raise SignatureError("a sort type needs at least one result sort")

    @property
    def arity(self) -> int:
        return len(self.args)

    @property
    def is_product(self) -> bool:
        return len(self.results) > 1

    @property
    def result(self) -> SortId:
        if self.is_product:
            raise SignatureError("product-valued type has no single result sort")
        return self.results[0]


def constant_type(sort: SortId) -> NSortType:
    return NSortType((), (sort,))


@dataclass(frozen=True, slots=True)
class Symbol:
    name: str
    sort_type: NSortType


@dataclass(frozen=True, slots=True)
class GroundTerm:
    """Variable-free term: a head symbol applied to ground subterms."""

    head: str
    args: tuple["GroundTerm", ...] = ()


def term(head: str, *args: GroundTerm) -> GroundTerm:
    return GroundTerm(head, tuple(args))


@dataclass(frozen=True)
class Signature:
    """The five symbol parts of a machine, in serialization order."""

    sort_count: int
    static: tuple[Symbol, ...] = ()
    static_input: tuple[Symbol, ...] = ()
    dynamic_input: tuple[Symbol, ...] = ()
    dynamic: tuple[Symbol, ...] = ()
    external: tuple[Symbol, ...] = ()

    @cached_property
    def _by_name(self) -> dict[str, tuple[str, Symbol]]:
        out: dict[str, tuple[str, Symbol]] = {}
        for part in PART_NAMES:
            for sym in getattr(self, part):
                out.setdefault(sym.name, (part, sym))
        return out

    @property
    def status_sort(self) -> SortId:
        return self.sort_count

    def has(self, name: str) -> bool:
        return name in self._by_name

    def symbol(self, name: str) -> Symbol:
        try:
            return self._by_name[name][1]
        except KeyError:
            raise UnknownSymbol(name) from None

    def part_of(self, name: str) -> str:
        try:
            return self._by_name[name][0]
        except KeyError:
            raise UnknownSymbol(name) from None

    def all_symbols(self) -> Iterator[Symbol]:
        for part in PART_NAMES:
            yield from getattr(self, part)

    def updatable(self) -> tuple[Symbol, ...]:
        """Symbols a functional may rewrite: dynamic input, then dynamic."""
        return self.dynamic_input + self.dynamic


@dataclass(frozen=True)
class SignatureReport:
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def _is_ascii_identifier(name: str) -> bool:
    return name.isidentifier() and name.isascii()


def validate_signature(sig: Signature) -> SignatureReport:
    """Check every structural invariant; violations are data, not failures."""
    bad: list[str] = []
    if sig.sort_count < 1:
        bad.append("sort count must be at least 1")

    seen: set[str] = set()
    status_holders: list[str] = []
    for part in PART_NAMES:
        for sym in getattr(sig, part):
            if not _is_ascii_identifier(sym.name):
                bad.append(f"symbol name {sym.name!r} is not an ASCII identifier")
            if sym.name in seen:
                if sym.name == STATUS_NAME:
                    bad.append("duplicate status symbol")
                else:
                    bad.append(f"duplicate symbol name {sym.name!r}")
            seen.add(sym.name)
            st = sym.sort_type
            for s in st.args + st.results:
                if not 1 <= s <= sig.sort_count:
                    bad.append(
                        f"symbol {sym.name!r} references sort {s} outside 1..{sig.sort_count}"
                    )
            if part == "external" and (st.arity != 0 or st.is_product):
                bad.append(f"external symbol not a constant: {sym.name!r}")
            if sig.status_sort in st.args + st.results:
                # Static constants of the status sort name the status
                # values themselves; every other use of the status sort
                # is reserved for the one status symbol.
                is_static_label = (
                    part == "static"
                    and st.arity == 0
                    and st.results == (sig.status_sort,)
                )
                if not is_static_label:
                    status_holders.append(sym.name)

    if not status_holders:
        bad.append("missing status symbol")
    elif len(status_holders) > 1:
        if STATUS_NAME in status_holders and len(set(status_holders)) > 1:
            extra = sorted(set(status_holders) - {STATUS_NAME})
            bad.append(
                "only the status symbol may involve the status sort; also used by "
                + ", ".join(repr(n) for n in extra)
            )
        else:
            bad.append("duplicate status symbol")
    else:
        holder = status_holders[0]
        if holder != STATUS_NAME:
            bad.append(
                f"symbol involving the status sort must be named {STATUS_NAME!r}, got {holder!r}"
            )
        sym = sig._by_name.get(holder)
        if sym is not None:
            part, s = sym
            if s.sort_type.arity != 0 or s.sort_type.results != (sig.status_sort,):
                bad.append("status symbol must be a constant of the status sort")
            if part != "dynamic_input":
                bad.append("status symbol must live in the dynamic input part")

    return SignatureReport(tuple(bad))


def type_check_term(sig: Signature, t: GroundTerm) -> tuple[SortId, ...]:
    """Return the result sorts of ``t`` (one entry unless the head is product-valued).

    Subterms must be single-sorted and match the head's argument sorts
    positionally; a product-valued application nested inside another term
    raises ``ProjectionRequired``.
    """
    sym = sig.symbol(t.head)
    st = sym.sort_type
    if len(t.args) != st.arity:
        raise ArityMismatch(t.head, st.arity, len(t.args))
    for i, (sub, want) in enumerate(zip(t.args, st.args)):
        got = type_check_term(sig, sub)
        if len(got) > 1:
            raise ProjectionRequired(sub.head)
        if got[0] != want:
            raise SortMismatch(t.head, i, want, got[0])
    return st.results


def term_sort(sig: Signature, t: GroundTerm) -> SortId:
    """The unique sort of a single-sorted term."""
    sorts = type_check_term(sig, t)
    if len(sorts) > 1:
        raise ProjectionRequired(t.head)
    return sorts[0]


def subterms(t: GroundTerm) -> Iterator[GroundTerm]:
    yield t
    for a in t.args:
        yield from subterms(a)
