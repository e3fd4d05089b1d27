"""Fixed catalog of total operations on the naturals.

Both the algebra builtins and the transition-RAM simulator draw from this
one table, so the two sides of every equivalence test agree on arithmetic
by construction.  Subtraction-like operations are truncated at zero.
"""

NAT_OPS = {
    "zero": (0, lambda: 0),
    "successor": (1, lambda x: x + 1),
    "predecessor": (1, lambda x: max(x - 1, 0)),
    "addition": (2, lambda x, y: x + y),
    "monus": (2, lambda x, y: max(x - y, 0)),
    "multiplication": (2, lambda x, y: x * y),
}


def nat_op_arity(name: str) -> int:
    return NAT_OPS[name][0]


def apply_nat_op(name: str, args) -> int:
    arity, fn = NAT_OPS[name]
    if len(args) != arity:
        raise ValueError(f"operation {name!r} expects {arity} arguments")
    return fn(*args)
