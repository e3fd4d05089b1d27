import random

import pytest

from ema.algebra import Naturals
from ema.classes import check_class, tram_addressing_depth
from ema.errors import ClassViolationError, UnsupportedOperation
from ema.machines import Content, OpApply, Tram, normalize_tram
from ema.translate import (
    emas_normal_equal,
    ema_to_tram,
    lockstep_tram,
    tram_to_ema,
)

from generators import random_memory, random_tram, random_tram_class_ema

MEMORIES = ({}, {1: 7, 7: 2}, {1: 1}, {4: 9}, {2: 3, 3: 1}, {1: 2, 2: 4, 4: 8})


class TestCompiledShape:
    def test_multidomain(self, trams):
        e = tram_to_ema(trams["counter"])
        assert len(e.domains) == 4
        assert e.domains[0] == Naturals() and e.domains[1] == Naturals("addr")

    def test_static_counts(self, trams):
        t = trams["equal_halt"]  # n=1, r=2, 3 ops
        e = tram_to_ema(t)
        names = [s.name for s in e.signature.static]
        # n register constants + r states + 3 statuses + cast + the ops.
        assert len(names) == 1 + 2 + 3 + 1 + 3
        assert "cast" in names and "zero" in names

    def test_guard_count_matches_test_formula(self, trams):
        e = tram_to_ema(trams["counter"])  # n=1, k=1, r=1
        assert len(e.functionals[0].guards) == 1 + 3

    def test_zero_op_is_required(self):
        t = Tram(
            registers=1,
            depth=1,
            ops=("successor",),
            states=("s",),
            accept=frozenset(),
            reject=frozenset(),
            delta={},
            writes={},
        )
        with pytest.raises(UnsupportedOperation):
            tram_to_ema(t)


class TestRoundTrip:
    def test_corpus(self, trams):
        for name, t in trams.items():
            assert ema_to_tram(tram_to_ema(t)) == normalize_tram(t), name

    def test_random_machines(self):
        rng = random.Random(404)
        for _ in range(30):
            t = random_tram(rng)
            assert ema_to_tram(tram_to_ema(t)) == normalize_tram(t)

    def test_random_class_members(self):
        rng = random.Random(505)
        for _ in range(20):
            e = random_tram_class_ema(rng)
            assert emas_normal_equal(tram_to_ema(ema_to_tram(e)), e)

    def test_depth_extraction(self, trams):
        for name, t in trams.items():
            e = tram_to_ema(t)
            assert tram_addressing_depth(e) == t.depth, name
            assert check_class(e, "tram").parameters["k"] == t.depth

    def test_update_outside_term_family_rejected(self, trams):
        e = tram_to_ema(trams["counter"])
        # Replace one write value with a bare register-index constant,
        # which the machine's term family cannot express.
        from ema.functional import (
            BetaRow,
            BetaTable,
            Presentation,
            UpdateTuple,
        )
        from ema.signature import term
        from ema.engine import Ema

        p = e.functionals[0]
        tables = []
        for t2 in p.tables:
            if t2.symbol != "c":
                tables.append(t2)
                continue
            rows = []
            for row in t2.rows:
                if row.updates and len(row.updates) > 1:
                    first = row.updates[0]
                    rows.append(
                        BetaRow(
                            row.pattern,
                            (UpdateTuple(first.args, term("reg1")),)
                            + row.updates[1:],
                        )
                    )
                else:
                    rows.append(row)
            tables.append(BetaTable(t2.symbol, tuple(rows)))
        bad = Ema(
            e.signature, e.domains, e.statics, e.initials,
            (Presentation(p.guards, tuple(tables)),),
        )
        with pytest.raises(ClassViolationError):
            ema_to_tram(bad)


class TestLockstep:
    def test_corpus_memories(self, trams):
        for name, t in trams.items():
            e = tram_to_ema(t)
            for memory in MEMORIES:
                report = lockstep_tram(t, e, memory, 50)
                assert report.equivalent, (name, memory, report.detail)

    def test_alias_maps_to_clash(self, trams):
        t = trams["equal_halt"]
        e = tram_to_ema(t)
        report = lockstep_tram(t, e, {1: 1}, 50)
        assert report.equivalent  # both sides stick at the aliasing step

    def test_random_machines_and_memories(self):
        rng = random.Random(606)
        for _ in range(15):
            t = random_tram(rng, allow_two_registers=False)
            e = tram_to_ema(t)
            for _ in range(4):
                memory = random_memory(rng)
                report = lockstep_tram(t, e, memory, 50)
                assert report.equivalent, (memory, report.detail)
