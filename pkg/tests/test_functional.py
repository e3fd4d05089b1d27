import random

import pytest

from ema.algebra import Value, element
from ema.errors import GuardCountTooLarge, PresentationError
from ema.functional import (
    BetaRow,
    BetaTable,
    Clash,
    GuardPair,
    PairedMultiterm,
    Presentation,
    UndefinedAt,
    Updates,
    UpdateTuple,
    apply_presentation,
    evaluate_guards,
    normalize_presentation,
    presentation_normal_equal,
    validate_presentation,
)
from ema.signature import STATUS_NAME, term

from generators import WT_SIG, random_guarded_presentation, random_wt_state
from test_algebra import wt_state


def _tables(**updates_by_symbol):
    """Single all-wildcard-row tables over the 1-tape shape (q guards = 0
    unless patterns given)."""
    tables = []
    for sym in WT_SIG.updatable():
        ups = updates_by_symbol.get(sym.name, ())
        tables.append(BetaTable(sym.name, (BetaRow("", tuple(ups)),)))
    return tuple(tables)


class TestEvaluateGuards:
    def test_true_and_false(self):
        state = wt_state(q="q0")
        guards = (
            GuardPair(term("q"), term("q0")),
            GuardPair(term("c1", term("pos1")), term("sigma1")),
        )
        assert evaluate_guards(state, guards) == [True, False]

    def test_undefined_side(self):
        state = wt_state(q=None)
        assert evaluate_guards(state, (GuardPair(term("q"), term("q0")),)) is None


class TestApplyPresentation:
    def test_unchanged_tables_yield_no_deltas(self):
        p = Presentation((), _tables())
        out = apply_presentation(wt_state(), p)
        assert isinstance(out, Updates) and out.per_symbol == {}

    def test_write_and_move(self):
        p = Presentation(
            (),
            _tables(
                c1=[UpdateTuple((term("pos1"),), term("sigma1"))],
                pos1=[UpdateTuple((), term("Succ1", term("pos1")))],
            ),
        )
        out = apply_presentation(wt_state(pos=0), p)
        assert out.per_symbol["c1"].g == {(Value(1, 0),): Value(3, "sigma1")}
        assert out.per_symbol["pos1"].g == {(): Value(1, 1)}

    def test_guard_undefined(self):
        p = Presentation(
            (GuardPair(term("q"), term("q0")),),
            tuple(
                BetaTable(s.name, (BetaRow("*", ()),)) for s in WT_SIG.updatable()
            ),
        )
        out = apply_presentation(wt_state(q=None), p)
        assert isinstance(out, UndefinedAt) and out.kind == "guard-undefined"

    def test_update_arg_undefined(self):
        p = Presentation(
            (),
            _tables(c1=[UpdateTuple((term("pos1"),), term("sigma1"))]),
        )
        out = apply_presentation(wt_state(pos=None), p)
        assert isinstance(out, UndefinedAt) and out.kind == "update-arg-undefined"

    def test_clash_even_with_equal_values(self):
        # Two distinct update tuples aimed at one point clash regardless
        # of what they write.
        p = Presentation(
            (),
            _tables(
                c1=[
                    UpdateTuple((term("pos1"),), term("sigma0")),
                    UpdateTuple((term("Succ1", term("Pred1", term("pos1"))),), term("sigma0")),
                ]
            ),
        )
        out = apply_presentation(wt_state(pos=0, tape={0: "sigma0"}), p)
        assert isinstance(out, UndefinedAt) and isinstance(out.reason, Clash)

    def test_undefined_value_deletes_point(self):
        p = Presentation(
            (),
            _tables(c1=[UpdateTuple((term("pos1"),), term("c1", term("Succ1", term("pos1"))))]),
        )
        out = apply_presentation(wt_state(pos=0, tape={1: None}), p)
        assert out.per_symbol["c1"].z == frozenset({(Value(1, 0),)})
        assert out.per_symbol["c1"].g == {}

    def test_first_match_wins(self):
        rows = (
            BetaRow("1", (UpdateTuple((), term("q1")),)),
            BetaRow("*", (UpdateTuple((), term("q0")),)),
        )
        tables = tuple(
            BetaTable(s.name, rows if s.name == "q" else (BetaRow("*", ()),))
            for s in WT_SIG.updatable()
        )
        p = Presentation((GuardPair(term("q"), term("q0")),), tables)
        out = apply_presentation(wt_state(q="q0"), p)
        assert out.per_symbol["q"].g == {(): Value(2, "q1")}


class TestMultitermCorrelation:
    def _presentation(self, components):
        from test_algebra import SMM_SIG

        src = term("new", term("nodes"))
        tables = [
            BetaTable(
                "nodes",
                (BetaRow("", tuple(
                    UpdateTuple((), PairedMultiterm(src, c)) for c in components
                )),),
            ),
            BetaTable(STATUS_NAME, (BetaRow("", ()),)),
        ]
        return Presentation((), tuple(tables))

    def test_all_components_must_fire(self):
        from test_algebra import smm_state

        p = self._presentation([1])  # component 0 never consumed
        with pytest.raises(PresentationError):
            apply_presentation(smm_state(frozenset()), p)


class TestValidatePresentation:
    def test_rejects_mixed_sort_guard(self):
        p = Presentation(
            (GuardPair(term("q"), term("sigma0")),),
            tuple(BetaTable(s.name, (BetaRow("*", ()),)) for s in WT_SIG.updatable()),
        )
        with pytest.raises(PresentationError):
            validate_presentation(p, WT_SIG)

    def test_rejects_missing_table(self):
        p = Presentation((), (BetaTable("q", (BetaRow("", ()),)),))
        with pytest.raises(PresentationError):
            validate_presentation(p, WT_SIG)

    def test_rejects_non_wildcard_final_row(self):
        tables = tuple(
            BetaTable(s.name, (BetaRow("1", ()),)) for s in WT_SIG.updatable()
        )
        p = Presentation((GuardPair(term("q"), term("q0")),), tables)
        with pytest.raises(PresentationError):
            validate_presentation(p, WT_SIG)

    def test_accepts_random_generated(self):
        rng = random.Random(5)
        for _ in range(25):
            validate_presentation(random_guarded_presentation(rng), WT_SIG)


class TestNormalize:
    def test_wildcard_expansion_single_guard(self):
        ups = (UpdateTuple((), term("q0")),)
        tables = tuple(
            BetaTable(s.name, (BetaRow("*", ups if s.name == "q" else ()),))
            for s in WT_SIG.updatable()
        )
        p = Presentation((GuardPair(term("q"), term("q0")),), tables)
        n = normalize_presentation(p)
        qtab = {t.symbol: t for t in n.tables}["q"]
        assert [row.pattern for row in qtab.rows] == ["0", "1", "*"]
        assert qtab.rows[0].updates == ups and qtab.rows[1].updates == ups

    def test_idempotent(self):
        rng = random.Random(11)
        for _ in range(10):
            p = random_guarded_presentation(rng)
            n = normalize_presentation(p)
            assert normalize_presentation(n) == n

    def test_guard_cap(self):
        q = 17
        guards = tuple(GuardPair(term("q"), term("q0")) for _ in range(q))
        tables = tuple(
            BetaTable(s.name, (BetaRow("*" * q, ()),)) for s in WT_SIG.updatable()
        )
        with pytest.raises(GuardCountTooLarge):
            normalize_presentation(Presentation(guards, tables))

    def test_normal_equal_matches_literal_normalize(self):
        rng = random.Random(23)
        for _ in range(40):
            a = random_guarded_presentation(rng)
            b = random_guarded_presentation(rng)
            if len(a.guards) != len(b.guards):
                continue
            b = Presentation(a.guards, b.tables)
            literal = normalize_presentation(a) == normalize_presentation(b)
            assert presentation_normal_equal(a, b) == literal
            assert presentation_normal_equal(a, a)
