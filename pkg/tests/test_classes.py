import pytest

from ema.classes import check_class
from ema.errors import EmaError
from ema.translate import grammar_to_ema, tm_to_ema, tram_to_ema

from mutations import ALL_MUTATIONS, bare_gra_ema, bare_tram_ema, bare_wt_ema


class TestOkReports:
    def test_compiled_tms_are_in_class(self, tms):
        for name, m in tms.items():
            report = check_class(tm_to_ema(m), "wt")
            assert report.ok, (name, report.violations)
            assert report.parameters["n"] == m.tapes
            assert report.parameters["k"] == m.radius
            assert report.parameters["r"] == len(m.states)
            assert report.parameters["s"] == len(m.alphabet)

    def test_compiled_trams_are_in_class(self, trams):
        for name, t in trams.items():
            report = check_class(tram_to_ema(t), "tram")
            assert report.ok, (name, report.violations)
            assert report.parameters["n"] == t.registers
            assert report.parameters["k"] == t.depth
            assert report.parameters["ops"] == t.ops

    def test_compiled_grammars_are_in_class(self, grammars):
        for name, g in grammars.items():
            report = check_class(grammar_to_ema(g), "gra")
            assert report.ok, (name, report.violations)
            assert report.parameters["rules"] == len(g.rules)

    def test_bare_members_are_in_class(self):
        assert check_class(bare_wt_ema(), "wt").ok
        assert check_class(bare_tram_ema(), "tram").ok
        assert check_class(bare_gra_ema(), "gra").ok

    def test_render_ok_line(self, tms):
        report = check_class(tm_to_ema(tms["parity"]), "wt")
        assert report.render() == "ok wt n=1 k=1 r=2 s=2"

    def test_wrong_class_for_shape(self, tms):
        report = check_class(tm_to_ema(tms["parity"]), "tram")
        assert not report.ok
        assert {c for c, _ in report.violations} >= {"1"}

    def test_unknown_class_id(self, tms):
        with pytest.raises(EmaError):
            check_class(tm_to_ema(tms["parity"]), "smm")


@pytest.mark.parametrize("class_id", ["wt", "tram", "gra"])
def test_mutations_flip_the_right_clause(class_id):
    catalog = ALL_MUTATIONS[class_id]()
    assert len(catalog) >= 20
    for name, build, clause in catalog:
        mutant = build()
        report = check_class(mutant, class_id)
        assert not report.ok, f"{class_id}/{name} unexpectedly in class"
        clauses = {c for c, _ in report.violations}
        assert clause in clauses, (
            f"{class_id}/{name}: expected clause {clause}, got {report.violations}"
        )
