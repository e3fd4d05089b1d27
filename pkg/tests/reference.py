"""Deliberately slow re-implementation of one functional-application step.

Written from the definitions with no caching, no row indexing, and
quadratic distinctness checking, as an independent oracle for the fast
path.  Only the table-style interpretations and the integer-line builtins
are supported (everything the conformance generator produces).
"""

from ema.algebra import Builtin, DefaultedTable, FiniteTable, MaybeElement
from ema.functional import PairedMultiterm


def slow_eval(state, t):
    pi = state.interps[t.head]
    args = []
    for a in t.args:
        v = slow_eval(state, a)
        if v is None:
            return None
        args.append(v)
    body = pi.body
    if isinstance(body, MaybeElement):
        return body.value
    if isinstance(body, FiniteTable):
        for key, value in body.entries.items():
            if key == tuple(args):
                return value
        return None
    if isinstance(body, DefaultedTable):
        for key, value in body.exceptions.items():
            if key == tuple(args):
                return value
        return body.default
    if isinstance(body, Builtin):
        from ema.algebra import Value

        st = pi.symbol.sort_type
        if body.kind == "succ":
            return Value(st.result, args[0].payload + 1)
        if body.kind == "pred":
            return Value(st.result, args[0].payload - 1)
        raise NotImplementedError(f"slow oracle does not model {body.kind!r}")
    raise NotImplementedError(str(body))


def slow_apply(state, presentation):
    """Returns ("undefined", why) or ("updates", {symbol: (z, g)})."""
    guard_values = []
    for gp in presentation.guards:
        left = slow_eval(state, gp.left)
        right = slow_eval(state, gp.right)
        if left is None or right is None:
            return ("undefined", "guard")
        guard_values.append(left.payload == right.payload)

    deltas = {}
    for table in presentation.tables:
        chosen = None
        for row in table.rows:
            hit = True
            for ch, val in zip(row.pattern, guard_values):
                if ch == "*":
                    continue
                if (ch == "1") != val:
                    hit = False
                    break
            if hit:
                chosen = row
                break
        assert chosen is not None, "tables are total by construction"

        unique = []
        for u in chosen.updates:
            if u not in unique:
                unique.append(u)
        evaluated = []
        for u in unique:
            assert not isinstance(u.value, PairedMultiterm)
            args = []
            for a in u.args:
                v = slow_eval(state, a)
                if v is None:
                    return ("undefined", "arg")
                args.append(v)
            evaluated.append((tuple(args), slow_eval(state, u.value)))
        for i in range(len(evaluated)):
            for j in range(i + 1, len(evaluated)):
                if evaluated[i][0] == evaluated[j][0]:
                    return ("undefined", "clash")
        z = frozenset(args for args, _ in evaluated)
        g = {args: v for args, v in evaluated if v is not None}
        if z:
            deltas[table.symbol] = (z, g)
    return ("updates", deltas)
