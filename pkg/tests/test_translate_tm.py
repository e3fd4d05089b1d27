import itertools
import random

import pytest

from ema.algebra import FiniteEnum, IntLine, Status, Value
from ema.classes import check_class, wt_window_radius
from ema.errors import ClassViolationError
from ema.machines import normalize_window_tm, tm_run
from ema.translate import (
    emas_normal_equal,
    ema_to_tm,
    lockstep_tm,
    normalize_ema,
    tm_to_ema,
)

from generators import random_window_tm, random_wt_class_ema, shuffle_ema
from mutations import bare_wt_ema


class TestCompiledShape:
    def test_multidomain_for_one_tape(self, tms):
        e = tm_to_ema(tms["parity"])
        assert len(e.domains) == 4
        assert e.domains == (
            IntLine(1),
            FiniteEnum(("q0", "q1")),
            FiniteEnum(("sigma0", "sigma1")),
            Status(),
        )

    def test_static_symbol_counts(self, tms):
        e = tm_to_ema(tms["parity"])  # r=2, s=2, n=1
        statics = e.signature.static
        constants = [s for s in statics if s.sort_type.arity == 0]
        unary = [s for s in statics if s.sort_type.arity == 1]
        assert len(constants) == 2 + 2 + 3
        assert len(unary) == 2

    def test_guard_terms_reach_the_radius(self, tms):
        e = tm_to_ema(tms["eraser2"])
        assert wt_window_radius(e) == 2

    def test_halting_rows_write_only_the_status(self, tms):
        e = tm_to_ema(tms["blank_seeker"])
        m2 = ema_to_tm(e)
        # Accepting configurations carry no transition data.
        for lc in m2.accept:
            assert lc not in m2.delta


class TestRoundTrip:
    def test_corpus_machines(self, tms):
        for name, m in tms.items():
            assert ema_to_tm(tm_to_ema(m)) == normalize_window_tm(m), name

    def test_random_machines(self):
        rng = random.Random(101)
        for _ in range(40):
            m = random_window_tm(rng)
            assert ema_to_tm(tm_to_ema(m)) == normalize_window_tm(m)

    def test_random_class_members(self):
        rng = random.Random(202)
        for _ in range(25):
            e = random_wt_class_ema(rng)
            back = tm_to_ema(ema_to_tm(e))
            assert emas_normal_equal(back, e)

    def test_shuffled_corpus_members(self, tms):
        rng = random.Random(303)
        for name, m in tms.items():
            e = shuffle_ema(tm_to_ema(m), rng)
            assert emas_normal_equal(tm_to_ema(ema_to_tm(e)), e), name

    def test_normalize_idempotent_on_compiled(self, tms):
        e = tm_to_ema(tms["flip_first"])
        n1 = normalize_ema(e)
        assert normalize_ema(n1) == n1


class TestRadiusExtraction:
    def test_extracted_radius_is_minimal(self, tms):
        for name, m in tms.items():
            e = tm_to_ema(m)
            assert wt_window_radius(e) == m.radius, name

    def test_move_range_matches_radius(self, tms):
        m2 = ema_to_tm(tm_to_ema(tms["eraser2"]))
        assert m2.radius == 2
        assert all(abs(mv) <= 2 for moves in m2.moves.values() for mv in moves)


class TestFinalConfigurations:
    def test_status_update_becomes_membership(self):
        # A member whose functional accepts exactly at (q1, center mark).
        from ema.functional import (
            BetaRow,
            BetaTable,
            GuardPair,
            Presentation,
            UpdateTuple,
        )
        from ema.signature import term
        from ema.engine import Ema

        bare = bare_wt_ema()
        guards = (
            GuardPair(term("q"), term("q1")),
            GuardPair(term("c1", term("pos1")), term("sigma1")),
        )
        tables = []
        for sym in bare.signature.updatable():
            if sym.name == "status":
                rows = (
                    BetaRow("11", (UpdateTuple((), term("acc")),)),
                    BetaRow("**", ()),
                )
            else:
                rows = (BetaRow("**", ()),)
            tables.append(BetaTable(sym.name, rows))
        e = Ema(
            bare.signature,
            bare.domains,
            bare.statics,
            bare.initials,
            (Presentation(guards, tuple(tables)),),
        )
        m = ema_to_tm(e)
        # Only the scanned cell is mentioned, so the radius collapses to 0
        # and the accepting configurations are single-cell windows.
        assert m.radius == 0
        assert m.accept == frozenset({("q1", (("sigma1",),))})

    def test_class_violation_raises(self, tms):
        e = tm_to_ema(tms["parity"])
        mutated = bare_wt_ema()
        from ema.translate import ema_to_tram

        with pytest.raises(ClassViolationError):
            ema_to_tram(e)
        assert check_class(mutated, "wt").ok


class TestLockstep:
    def test_corpus_short_words(self, tms):
        for name, m in tms.items():
            letters = m.alphabet[:2]
            for length in range(4):
                for word in itertools.product(letters, repeat=length):
                    e = tm_to_ema(m)
                    report = lockstep_tm(m, e, word, 60)
                    assert report.equivalent, (name, word, report.detail)

    def test_divergence_is_reported(self, tms):
        m = tms["blank_seeker"]
        e = tm_to_ema(m)
        # Sabotage the compiled member: move left instead of right.
        from ema.functional import BetaTable, Presentation, BetaRow, UpdateTuple
        from ema.signature import term
        from ema.engine import Ema

        p = e.functionals[0]
        tables = []
        for t in p.tables:
            if t.symbol != "pos1":
                tables.append(t)
                continue
            rows = []
            for row in t.rows:
                if row.updates:
                    rows.append(
                        BetaRow(
                            row.pattern,
                            (UpdateTuple((), term("Pred1", term("pos1"))),),
                        )
                    )
                else:
                    rows.append(row)
            tables.append(BetaTable(t.symbol, tuple(rows)))
        bad = Ema(
            e.signature, e.domains, e.statics, e.initials,
            (Presentation(p.guards, tuple(tables)),),
        )
        report = lockstep_tm(m, bad, ("x", "x"), 30)
        assert not report.equivalent
        assert "step 1" in report.detail

    def test_halting_commit_state_is_pure(self, tms):
        m = tms["flip_first"]
        e = tm_to_ema(m)
        report = lockstep_tm(m, e, ("b",), 10)
        assert report.equivalent

    def test_zero_budget_compares_initials(self, tms):
        m = tms["diverger"]
        e = tm_to_ema(m)
        report = lockstep_tm(m, e, ("x",), 0)
        assert report.equivalent and report.steps == 0
