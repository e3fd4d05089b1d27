import pytest
from hypothesis import given, strategies as st

from ema.classes import gra_signature, tram_signature, wt_signature
from ema.errors import (
    ArityMismatch,
    ProjectionRequired,
    SortMismatch,
    UnknownSymbol,
)
from ema.signature import (
    STATUS_NAME,
    GroundTerm,
    NSortType,
    Signature,
    Symbol,
    constant_type,
    term,
    type_check_term,
    validate_signature,
)


def test_class_signatures_validate():
    for sig in (
        wt_signature(1, 2, 2),
        wt_signature(2, 3, 3),
        tram_signature(1, ("zero", "successor", "addition"), 2),
        gra_signature(2),
    ):
        report = validate_signature(sig)
        assert report.ok, report.violations


def test_duplicate_status_symbol():
    sig = Signature(
        sort_count=1,
        dynamic_input=(
            Symbol(STATUS_NAME, constant_type(1)),
            Symbol(STATUS_NAME, constant_type(1)),
        ),
    )
    report = validate_signature(sig)
    assert "duplicate status symbol" in report.violations


def test_second_symbol_on_status_sort_rejected():
    sig = Signature(
        sort_count=1,
        dynamic_input=(
            Symbol(STATUS_NAME, constant_type(1)),
            Symbol("mood", constant_type(1)),
        ),
    )
    report = validate_signature(sig)
    assert not report.ok
    assert any("mood" in v for v in report.violations)


def test_external_symbol_must_be_constant():
    sig = Signature(
        sort_count=2,
        dynamic_input=(Symbol(STATUS_NAME, constant_type(2)),),
        external=(Symbol("pick", NSortType((1,), (1,))),),
    )
    report = validate_signature(sig)
    assert any(v.startswith("external symbol not a constant") for v in report.violations)


def test_missing_status_and_bad_sort_range():
    sig = Signature(sort_count=1, static=(Symbol("x", constant_type(5)),))
    report = validate_signature(sig)
    assert "missing status symbol" in report.violations
    assert any("outside" in v for v in report.violations)


class TestTypeCheck:
    sig = wt_signature(1, 2, 2)

    def test_successor_chain(self):
        assert type_check_term(self.sig, term("Succ1", term("pos1"))) == (1,)

    def test_sort_mismatch_position(self):
        with pytest.raises(SortMismatch) as exc:
            type_check_term(self.sig, term("c1", term("q")))
        assert exc.value.position == 0

    def test_unknown_and_arity(self):
        with pytest.raises(UnknownSymbol):
            type_check_term(self.sig, term("nosuch"))
        with pytest.raises(ArityMismatch):
            type_check_term(self.sig, term("Succ1"))

    def test_product_type_and_projection(self):
        sig = Signature(
            sort_count=3,
            static=(Symbol("new", NSortType((2,), (1, 2))),),
            dynamic=(Symbol("nodes", constant_type(2)),),
            dynamic_input=(Symbol(STATUS_NAME, constant_type(3)),),
        )
        assert type_check_term(sig, term("new", term("nodes"))) == (1, 2)
        with pytest.raises(ProjectionRequired):
            type_check_term(sig, term("new", term("new", term("nodes"))))


@st.composite
def _small_terms(draw, depth=3):
    # Terms over the 1-tape, 2-state, 2-letter shape, by sort.
    sort = draw(st.sampled_from([1, 2, 3, 4]))
    return _draw_term(draw, sort, depth)


def _draw_term(draw, sort, depth):
    if sort == 1:
        if depth == 0 or draw(st.booleans()):
            return term("pos1")
        head = draw(st.sampled_from(["Succ1", "Pred1"]))
        return term(head, _draw_term(draw, 1, depth - 1))
    if sort == 2:
        return term(draw(st.sampled_from(["q", "q0", "q1"])))
    if sort == 3:
        if depth == 0 or draw(st.booleans()):
            return term(draw(st.sampled_from(["sigma0", "sigma1"])))
        return term("c1", _draw_term(draw, 1, depth - 1))
    return term(draw(st.sampled_from([STATUS_NAME, "go", "acc", "rej"])))


@given(_small_terms())
def test_type_uniqueness(t: GroundTerm):
    sig = wt_signature(1, 2, 2)
    first = type_check_term(sig, t)
    second = type_check_term(sig, t)
    assert first == second and len(first) == 1
