import json

import pytest

from ema.documents import (
    InputSpec,
    canonical_json,
    choices_from_document,
    choices_to_document,
    ema_from_document,
    ema_to_document,
    input_from_document,
    input_to_document,
    load_path,
    object_to_document,
    parse_document,
    resolve_input_for_ema,
    unwrap,
)
from ema.engine import Scripted, init_state, run
from ema.errors import DocumentError
from ema.translate import grammar_to_ema, tm_to_ema, tram_to_ema


class TestEnvelope:
    def test_unknown_top_level_key(self):
        with pytest.raises(DocumentError):
            unwrap({"kind": "tm", "version": "1", "body": {}, "notes": "x"})

    def test_missing_keys_and_bad_kind(self):
        with pytest.raises(DocumentError):
            unwrap({"kind": "tm", "body": {}})
        with pytest.raises(DocumentError):
            unwrap({"kind": "smm", "version": "1", "body": {}})

    def test_kind_mismatch(self):
        with pytest.raises(DocumentError):
            unwrap({"kind": "tm", "version": "1", "body": {}}, ("ema",))


class TestRoundTrips:
    def test_machines_and_members(self, tms, trams, grammars):
        for obj in (
            tms["parity"],
            tms["copier"],
            trams["indirect_bump"],
            grammars["bracket_pairs"],
            tm_to_ema(tms["flip_first"]),
            tram_to_ema(trams["equal_halt"]),
            grammar_to_ema(grammars["eraser"]),
        ):
            doc = json.loads(canonical_json(object_to_document(obj)))
            kind, back = parse_document(doc)
            assert back == obj, kind

    def test_canonical_bytes_are_stable(self, tms):
        e = tm_to_ema(tms["parity"])
        s1 = canonical_json(ema_to_document(e))
        e2 = ema_from_document(json.loads(s1))
        s2 = canonical_json(ema_to_document(e2))
        assert s1 == s2

    def test_choices(self):
        source = Scripted((0, 1, 0), ({"Choose": 2}, {"Choose": 0}, {"Choose": 5}))
        doc = json.loads(canonical_json(choices_to_document(source)))
        assert choices_from_document(doc) == source

    def test_input_spec(self):
        spec = InputSpec(status="rej", word=("a", "b"))
        doc = json.loads(canonical_json(input_to_document(spec)))
        assert input_from_document(doc) == spec

    def test_file_io(self, tmp_path, tms):
        from ema.documents import dump_path

        path = tmp_path / "m.json"
        dump_path(path, tms["parity"])
        kind, back = load_path(path)
        assert kind == "tm" and back == tms["parity"]


class TestInputResolution:
    def test_word_for_tape_member(self, tms):
        e = tm_to_ema(tms["parity"])
        inp = resolve_input_for_ema(InputSpec(word=("sigma1", "sigma1")), e)
        state = init_state(e, inp)
        assert len(state.interp("c1").body.exceptions) == 2

    def test_word_for_grammar_member(self, grammars):
        e = grammar_to_ema(grammars["single_rule"])
        inp = resolve_input_for_ema(InputSpec(word=("S",)), e)
        state = init_state(e, inp)
        assert state.value_of("w").payload == ("S",)

    def test_memory_for_register_member(self, trams):
        e = tram_to_ema(trams["counter"])
        inp = resolve_input_for_ema(InputSpec(memory={1: 4, 4: 1}), e)
        state = init_state(e, inp)
        assert len(state.interp("c").body.exceptions) == 2

    def test_unknown_letter_rejected(self, tms):
        e = tm_to_ema(tms["parity"])
        with pytest.raises(DocumentError):
            resolve_input_for_ema(InputSpec(word=("zeta",)), e)

    def test_status_shorthand_runs(self, tms):
        e = tm_to_ema(tms["diverger"])
        inp = resolve_input_for_ema(InputSpec(status="acc"), e)
        trace = run(e, inp, max_steps=5)
        assert trace.outcome.kind == "Accepted" and trace.steps == 0

    def test_raw_dynamic_maps(self, tms):
        e = tm_to_ema(tms["parity"])
        raw = {
            "dynamic": {
                "c1": {"kind": "defaulted", "default": "sigma0",
                        "entries": [[[0], "sigma1"]]},
                "status": {"kind": "element", "value": "go"},
            }
        }
        doc = {"kind": "input", "version": "1", "body": raw}
        spec = input_from_document(doc)
        inp = resolve_input_for_ema(spec, e)
        state = init_state(e, inp)
        assert state.interp("c1").body.exceptions != {}
