"""Exception taxonomy shared by the whole package.

Undefinedness of a term or of a step is *not* an error anywhere in this
package: it is modelled with ``None`` results and stuck outcomes.  The
exceptions below cover genuine misuse (ill-sorted data, malformed
structures, unusable files).
"""


class EmaError(Exception):
    """Base class for all package errors."""


class SignatureError(EmaError):
    """Structurally unusable signature or sort type."""


class EmaTypeError(EmaError):
    """Sort discipline violated at runtime (cross-sort comparison, bad payload)."""


class TermTypeError(EmaError):
    """Base class for ground-term type errors."""


class UnknownSymbol(TermTypeError):
    def __init__(self, name):
        super().__init__(f"unknown symbol {name!r}")
        self.name = name


class ArityMismatch(TermTypeError):
    def __init__(self, head, expected, got):
        super().__init__(f"symbol {head!r} expects {expected} arguments, got {got}")
        self.head = head
        self.expected = expected
        self.got = got


class SortMismatch(TermTypeError):
    def __init__(self, head, position, expected, got):
        super().__init__(
            f"argument {position} of {head!r} has sort {got}, expected {expected}"
        )
        self.head = head
        self.position = position
        self.expected = expected
        self.got = got


class ProjectionRequired(TermTypeError):
    """A product-valued application was used where a single sort is needed."""

    def __init__(self, head):
        super().__init__(
            f"product-valued application of {head!r} cannot be nested in a term"
        )
        self.head = head


class IncomparableInterpretations(EmaError):
    """Equality requested between a builtin and a table over an infinite domain."""


class PresentationError(EmaError):
    """Malformed functional presentation (guards, tables, or update tuples)."""


class GuardCountTooLarge(EmaError):
    """Normalization refuses to expand more than 2**16 guard valuations."""


class CoverageError(EmaError):
    """An interpretation map does not cover its signature part exactly."""


class BadBranch(EmaError):
    """Branch choice out of range for the machine's functional list."""


class MissingExternal(EmaError):
    """A step was attempted without a value for an external symbol."""


class ChoiceExhausted(EmaError):
    """A scripted choice source ran out of external values."""


class ClassShapeError(EmaError):
    """An operation needs a machine-class shape the structure does not have."""


class ClassViolationError(EmaError):
    """A translation was attempted on a structure outside the requested class."""

    def __init__(self, report):
        lines = ", ".join(f"clause {c}: {m}" for c, m in report.violations)
        super().__init__(f"not in class {report.class_id}: {lines}")
        self.report = report


class UnsupportedOperation(EmaError):
    """A translation hit a feature outside the target machine's term family."""


class EmptyLeftHandSide(EmaError):
    """Grammar rules must have a nonempty left-hand side."""


class DocumentError(EmaError):
    """A JSON document failed to parse or validate."""
