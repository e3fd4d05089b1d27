"""Finitary presentations of state-transforming functionals.

A presentation is a list of guard term pairs plus one update table per
rewritable symbol.  Applying it to a state evaluates every guard equality,
selects the first matching row of each table, and turns the selected
update tuples into per-symbol (z, g) pairs for the update operator.

Application can come out undefined in exactly three ways, and each is a
result rather than an exception: a guard term with no value, an update
argument term with no value, or two updates aimed at the same evaluated
point (a clash, regardless of the written values).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Union

from .errors import (
    EmaTypeError,
    GuardCountTooLarge,
    PresentationError,
)
from .algebra import State, Value, eval_multiterm, eval_term, values_equal
from .signature import GroundTerm, Signature, term_sort, type_check_term

WILDCARD = "*"


@dataclass(frozen=True, slots=True)
class GuardPair:
    """One guard: the equality test between two same-sorted ground terms."""

    left: GroundTerm
    right: GroundTerm


@dataclass(frozen=True, slots=True)
class PairedMultiterm:
    """One component of a product-valued application used as an update value.

    All components of the same source application must be consumed by the
    step that fires any of them, each exactly once.
    """

    source: GroundTerm
    component: int


ValueSpec = Union[GroundTerm, PairedMultiterm]


@dataclass(frozen=True, slots=True)
class UpdateTuple:
    args: tuple[GroundTerm, ...]
    value: ValueSpec


class BetaRow(NamedTuple):
    pattern: str
    updates: tuple[UpdateTuple, ...]


def row_matches(pattern: str, bits: str) -> bool:
    return all(p == WILDCARD or p == b for p, b in zip(pattern, bits))


@dataclass(eq=True)
class BetaTable:
    """First-match-wins rows mapping guard valuations to update sets.

    Patterns are strings over ``1``/``0``/``*``; the final row must be
    all-wildcard so the table is total.  An empty update set means the
    target symbol is left unchanged.
    """

    symbol: str
    rows: tuple[BetaRow, ...]
    _index: Optional[tuple] = field(
        default=None, init=False, repr=False, compare=False
    )

    def row_for(self, bits: str) -> BetaRow:
        if self._index is None:
            concrete: dict[str, tuple[int, BetaRow]] = {}
            wild: list[tuple[int, BetaRow]] = []
            for i, row in enumerate(self.rows):
                if WILDCARD in row.pattern:
                    wild.append((i, row))
                else:
                    concrete.setdefault(row.pattern, (i, row))
            self._index = (concrete, wild)
        concrete, wild = self._index
        best = concrete.get(bits)
        for i, row in wild:
            if best is not None and best[0] < i:
                break
            if row_matches(row.pattern, bits):
                return row
        if best is None:
            raise PresentationError(
                f"table for {self.symbol!r} matches no row for {bits!r}"
            )
        return best[1]


@dataclass(eq=True)
class Presentation:
    """Shared guard list plus one table per dynamic and dynamic-input symbol."""

    guards: tuple[GuardPair, ...]
    tables: tuple[BetaTable, ...]


def dedupe_updates(updates) -> tuple[UpdateTuple, ...]:
    seen = set()
    out = []
    for u in updates:
        if u not in seen:
            seen.add(u)
            out.append(u)
    return tuple(out)


def validate_presentation(p: Presentation, sig: Signature) -> None:
    """Raise ``PresentationError`` unless ``p`` is well-formed for ``sig``."""
    sort_cache: dict[int, int] = {}

    def cached_sort(t: GroundTerm) -> int:
        s = sort_cache.get(id(t))
        if s is None:
            s = term_sort(sig, t)
            sort_cache[id(t)] = s
        return s

    q = len(p.guards)
    for i, gp in enumerate(p.guards):
        ls = cached_sort(gp.left)
        rs = cached_sort(gp.right)
        if ls != rs:
            raise PresentationError(
                f"guard {i} compares sorts {ls} and {rs}"
            )
    wanted = [s.name for s in sig.updatable()]
    got = [t.symbol for t in p.tables]
    if sorted(got) != sorted(wanted):
        raise PresentationError(
            f"tables must target exactly {sorted(wanted)}, got {sorted(got)}"
        )
    for table in p.tables:
        target = sig.symbol(table.symbol)
        st = target.sort_type
        if not table.rows:
            raise PresentationError(f"table for {table.symbol!r} has no rows")
        for row in table.rows:
            if len(row.pattern) != q or row.pattern.strip("01*"):
                raise PresentationError(
                    f"bad pattern {row.pattern!r} in table for {table.symbol!r}"
                )
            for u in row.updates:
                if len(u.args) != st.arity:
                    raise PresentationError(
                        f"update for {table.symbol!r} has arity {len(u.args)}"
                    )
                for j, (a, want) in enumerate(zip(u.args, st.args)):
                    s = cached_sort(a)
                    if s != want:
                        raise PresentationError(
                            f"update argument {j} for {table.symbol!r} has sort {s}"
                        )
                if isinstance(u.value, PairedMultiterm):
                    sorts = type_check_term(sig, u.value.source)
                    if len(sorts) < 2:
                        raise PresentationError(
                            "paired value must come from a product-valued application"
                        )
                    if not 0 <= u.value.component < len(sorts):
                        raise PresentationError(
                            f"component {u.value.component} out of range"
                        )
                    if sorts[u.value.component] != st.result:
                        raise PresentationError(
                            f"component sort does not match {table.symbol!r}"
                        )
                else:
                    s = cached_sort(u.value)
                    if s != st.result:
                        raise PresentationError(
                            f"update value for {table.symbol!r} has sort {s}"
                        )
        if set(table.rows[-1].pattern) - {WILDCARD}:
            raise PresentationError(
                f"final row of table for {table.symbol!r} must be all-wildcard"
            )


# ---------------------------------------------------------------------------
# Step results


@dataclass(frozen=True)
class GuardTermUndefined:
    index: int
    side: str

    kind = "guard-undefined"


@dataclass(frozen=True)
class UpdateArgUndefined:
    symbol: str
    update: UpdateTuple

    kind = "update-arg-undefined"


@dataclass(frozen=True)
class Clash:
    symbol: str
    first: UpdateTuple
    second: UpdateTuple

    kind = "clash"


Reason = Union[GuardTermUndefined, UpdateArgUndefined, Clash]


@dataclass(frozen=True)
class UndefinedAt:
    reason: Reason

    @property
    def kind(self) -> str:
        return self.reason.kind


@dataclass
class SymbolDelta:
    z: frozenset
    g: dict


@dataclass
class Updates:
    per_symbol: dict[str, SymbolDelta]


StepResult = Union[Updates, UndefinedAt]


def evaluate_guards(
    state: State, guards: tuple[GuardPair, ...], cache: Optional[dict] = None
) -> Optional[list[bool]]:
    """Evaluate every guard equality; ``None`` if any side is undefined."""
    if cache is None:
        cache = {}
    out = []
    for gp in guards:
        lv = eval_term(state, gp.left, cache)
        if lv is None:
            return None
        rv = eval_term(state, gp.right, cache)
        if rv is None:
            return None
        out.append(values_equal(lv, rv))
    return out


def _guard_failure(state, guards, cache) -> GuardTermUndefined:
    for i, gp in enumerate(guards):
        if eval_term(state, gp.left, cache) is None:
            return GuardTermUndefined(i, "left")
        if eval_term(state, gp.right, cache) is None:
            return GuardTermUndefined(i, "right")
    raise AssertionError("no undefined guard term found")


def apply_presentation(state: State, p: Presentation) -> StepResult:
    """Compute the per-symbol update sets of one step, or why none exist.

    The caller is responsible for only applying presentations to states
    whose status is ``go``.
    """
    cache: dict = {}
    bools = evaluate_guards(state, p.guards, cache)
    if bools is None:
        return UndefinedAt(_guard_failure(state, p.guards, cache))
    bits = "".join("1" if b else "0" for b in bools)

    product_values: dict[GroundTerm, Optional[tuple[Value, ...]]] = {}
    product_uses: dict[GroundTerm, list[int]] = {}
    per_symbol: dict[str, SymbolDelta] = {}

    for table in p.tables:
        row = table.row_for(bits)
        updates = row.updates
        if not updates:
            continue
        seen: dict[tuple, UpdateTuple] = {}
        z = set()
        g = {}
        for u in updates:
            argvals = []
            for a in u.args:
                v = eval_term(state, a, cache)
                if v is None:
                    return UndefinedAt(UpdateArgUndefined(table.symbol, u))
                argvals.append(v)
            key = tuple(argvals)
            previous = seen.get(key)
            if previous is not None:
                if previous == u:
                    continue  # the same set element mentioned twice
                return UndefinedAt(Clash(table.symbol, previous, u))
            seen[key] = u
            z.add(key)
            if isinstance(u.value, PairedMultiterm):
                src = u.value.source
                if src not in product_values:
                    product_values[src] = eval_multiterm(state, src, cache)
                    product_uses[src] = []
                product_uses[src].append(u.value.component)
                components = product_values[src]
                v = None if components is None else components[u.value.component]
            else:
                v = eval_term(state, u.value, cache)
            if v is not None:
                g[key] = v
        per_symbol[table.symbol] = SymbolDelta(frozenset(z), g)

    for src, used in product_uses.items():
        width = len(state.signature.symbol(src.head).sort_type.results)
        if sorted(used) != list(range(width)):
            raise PresentationError(
                f"product application of {src.head!r} must fire each of its "
                f"{width} components exactly once, got components {sorted(used)}"
            )
    return Updates(per_symbol)


# ---------------------------------------------------------------------------
# Normal forms


def term_key(t: GroundTerm):
    return (t.head, tuple(term_key(a) for a in t.args))


def _value_spec_key(v: ValueSpec):
    if isinstance(v, PairedMultiterm):
        return (1, term_key(v.source), v.component)
    return (0, term_key(v), 0)


def update_key(u: UpdateTuple):
    return (tuple(term_key(a) for a in u.args), _value_spec_key(u.value))


def canonical_updates(updates) -> tuple[UpdateTuple, ...]:
    return tuple(sorted(dedupe_updates(updates), key=update_key))


MAX_NORMALIZED_GUARDS = 16


def _flatten_table(t: BetaTable):
    """Map each concrete pattern to its canonical update set, plus the
    catch-all; ``None`` when partially wildcarded rows make this unsound."""
    mapping: dict[str, tuple[UpdateTuple, ...]] = {}
    for row in t.rows:
        if WILDCARD in row.pattern:
            if set(row.pattern) == {WILDCARD}:
                return mapping, canonical_updates(row.updates)
            return None
        mapping.setdefault(row.pattern, canonical_updates(row.updates))
    return None  # no catch-all row: not total


def _flat_tables_equal(fa, fb) -> bool:
    map_a, catch_a = fa
    map_b, catch_b = fb
    if catch_a != catch_b:
        return False
    for pattern in map_a.keys() | map_b.keys():
        if map_a.get(pattern, catch_a) != map_b.get(pattern, catch_b):
            return False
    return True


def presentation_normal_equal(a: Presentation, b: Presentation) -> bool:
    """Normal-form equality of two presentations over one guard list.

    Equivalent to comparing the expanded normal forms, but computed
    without materializing them when every non-final row is concrete;
    otherwise both sides are expanded (guard cap applies).
    """
    if a.guards != b.guards:
        return False
    ta = {t.symbol: t for t in a.tables}
    tb = {t.symbol: t for t in b.tables}
    if ta.keys() != tb.keys():
        return False
    pending = []
    for name in ta:
        fa, fb = _flatten_table(ta[name]), _flatten_table(tb[name])
        if fa is None or fb is None:
            pending.append(name)
        elif not _flat_tables_equal(fa, fb):
            return False
    if pending:
        na, nb = normalize_presentation(a), normalize_presentation(b)
        nta = {t.symbol: t for t in na.tables}
        ntb = {t.symbol: t for t in nb.tables}
        return all(nta[name] == ntb[name] for name in pending)
    return True


def normalize_presentation(p: Presentation) -> Presentation:
    """Expand every table into one concrete row per guard valuation.

    The result lists all ``2**q`` valuations in pattern order followed by
    an all-wildcard empty row that keeps the table total; update sets are
    deduplicated and canonically sorted, and tables are ordered by target
    symbol.  Two presentations over identical guard lists denote the same
    functional on all states exactly when their normal forms are equal.
    """
    q = len(p.guards)
    if q > MAX_NORMALIZED_GUARDS:
        raise GuardCountTooLarge(
            f"{q} guards exceed the {MAX_NORMALIZED_GUARDS}-guard expansion cap"
        )
    tables = []
    for table in sorted(p.tables, key=lambda t: t.symbol):
        canon: dict[int, tuple[UpdateTuple, ...]] = {}
        rows = []
        for v in range(2**q):
            bits = "".join("1" if (v >> i) & 1 else "0" for i in range(q))
            row = table.row_for(bits)
            key = id(row)
            if key not in canon:
                canon[key] = canonical_updates(row.updates)
            rows.append(BetaRow(bits, canon[key]))
        rows.sort(key=lambda r: r.pattern)
        rows.append(BetaRow(WILDCARD * q, ()))
        tables.append(BetaTable(table.symbol, tuple(rows)))
    return Presentation(p.guards, tuple(tables))
