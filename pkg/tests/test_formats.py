from __future__ import annotations

import json
import random

import pytest

from arginst.attacks import AttackType, compute_attacks
from arginst.formats import (
    InstanceError,
    argument_label,
    emit_flat_facts,
    export_apx,
    export_dot,
    export_json,
    import_json,
    load_instance,
    parse_flat_facts,
    read_formulas,
    write_text,
)
from arginst.formula import parse_formula
from arginst.instantiate import Argument, enumerate_arguments
from arginst.semantics import ArgumentationFramework

import oracles
from running_example import RUNNING_CLAIMS, RUNNING_DIRECT_DEFEATS, RUNNING_KB

P = parse_formula
FACTS_INPUT = """\
kb(a). kb(imp(a,b)). kb(neg(b)).
cl(a). cl(imp(a,b)). cl(neg(b)). cl(neg(a)). cl(b). cl(and(a,neg(b))).
"""
RUNNING_AF = ArgumentationFramework(6, frozenset(RUNNING_DIRECT_DEFEATS))


@pytest.fixture
def files(tmp_path):
    def make(name, text):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return make


# --------------------------------------------------------------------------
# loading


def test_load_single_fact_file(files):
    inst = load_instance(files("in.lp", FACTS_INPUT))
    assert list(inst.kb) == [P("a"), P("a -> b"), P("!b")]
    assert list(inst.claims) == RUNNING_CLAIMS


def test_load_split_fact_files(files):
    kb = files("kb.lp", "% knowledge base\nkb(a).\nkb(imp(a,b)).\nkb(neg(b)).\n")
    cl = files("cl.lp", "cl(b). cl(neg(a)).\n")
    inst = load_instance(kb, cl)
    assert list(inst.kb) == RUNNING_KB
    assert list(inst.claims) == [P("b"), P("!a")]


def test_plain_style_equals_fact_style(files):
    plain = files("kb.txt", "# comment\n\na\na -> b   # trailing comment\nneg(b)\n")
    facts = files("kb.lp", "kb(a). kb(imp(a,b)). kb(neg(b)).")
    empty = files("cl.txt", "")
    assert list(load_instance(plain, empty).kb) == list(load_instance(facts, empty).kb)
    assert read_formulas(plain, "kb")["kb"][1] == read_formulas(facts, "kb")["kb"][1] == P("imp(a,b)")


def test_empty_claims_file(files):
    inst = load_instance(files("kb.txt", "a\n"), files("cl.txt", "\n# nothing\n"))
    assert len(inst.claims) == 0
    assert enumerate_arguments(inst.kb, inst.claims) == []


def test_load_errors(files, tmp_path):
    cl = files("cl.txt", "a\n")
    with pytest.raises(InstanceError, match="empty"):
        load_instance(files("empty.txt", "# nothing here\n"), cl)
    with pytest.raises(InstanceError, match=r"kb\.txt:3: .*offset 2"):
        load_instance(files("kb.txt", "a\n\na $ b\n"), cl)
    with pytest.raises(InstanceError, match="cl/1 fact"):
        load_instance(files("kb.lp", "kb(a).\ncl(a).\n"), cl)
    with pytest.raises(InstanceError, match="kb/1 fact"):
        load_instance(files("kb2.lp", "kb(a)."), files("cl.lp", "cl(a). kb(b)."))
    with pytest.raises(InstanceError, match="cannot read"):
        load_instance(tmp_path / "missing.txt", cl)
    with pytest.raises(InstanceError, match=r":2: fact must end"):
        load_instance(files("bad.lp", "kb(a).\nkb(b)\n"), cl)
    with pytest.raises(InstanceError, match="unbalanced"):
        load_instance(files("bad2.lp", "kb(and(a,b).\n"), cl)
    with pytest.raises(InstanceError, match="needs a role"):
        load_instance(files("plain.txt", "a\n"))


def test_duplicates_dropped(files):
    inst = load_instance(files("kb.txt", "a\nb\na\n"), files("cl.txt", "b\nb\n"))
    assert list(inst.kb) == [P("a"), P("b")]
    assert list(inst.claims) == [P("b")]


# --------------------------------------------------------------------------
# flattened facts


def test_emit_flat_facts_reference_lines():
    a1 = Argument(1, 0b001, 0)
    a3 = Argument(3, 0b011, RUNNING_CLAIMS.index(P("b")))
    assert emit_flat_facts([a1], RUNNING_KB, RUNNING_CLAIMS) == "as(1,fs,a).\nas(1,sclaim,a)."
    assert (
        emit_flat_facts([a3], RUNNING_KB, RUNNING_CLAIMS)
        == "as(3,fs,a).\nas(3,fs,imp(a,b)).\nas(3,sclaim,b)."
    )
    assert emit_flat_facts([], RUNNING_KB, RUNNING_CLAIMS) == ""
    # ids ascending whatever the input order
    both = emit_flat_facts([a3, a1], RUNNING_KB, RUNNING_CLAIMS)
    assert both.startswith("as(1,fs,a).") and both.endswith("as(3,sclaim,b).")


def test_flat_facts_round_trip():
    rng = random.Random(6)
    for _ in range(50):
        kb, cs = oracles.random_instance(rng)
        args = enumerate_arguments(kb, cs)
        assert parse_flat_facts(emit_flat_facts(args, kb, cs), kb, cs) == args


def test_flat_facts_import_errors():
    with pytest.raises(InstanceError, match="two claims"):
        parse_flat_facts("as(1,fs,a). as(1,sclaim,a). as(1,sclaim,b).", RUNNING_KB, RUNNING_CLAIMS)
    with pytest.raises(InstanceError, match="at least one fs"):
        parse_flat_facts("as(1,sclaim,a).", RUNNING_KB, RUNNING_CLAIMS)
    with pytest.raises(InstanceError, match="not in the knowledge base"):
        parse_flat_facts("as(1,fs,c). as(1,sclaim,a).", RUNNING_KB, RUNNING_CLAIMS)


# --------------------------------------------------------------------------
# apx / dot / json


def test_export_apx():
    text = export_apx(RUNNING_AF)
    lines = text.split("\n")
    assert lines[:6] == [f"arg(a{i})." for i in range(1, 7)]
    assert len(lines) == 15
    assert lines[6] == "att(a3,a4)."
    assert lines[-1] == "att(a6,a4)."
    assert export_apx(ArgumentationFramework(0)) == ""
    assert export_apx(ArgumentationFramework(1)) == "arg(a1)."


def test_export_dot():
    one = export_dot(ArgumentationFramework(1))
    assert one == 'digraph af {\n  a1 [label="a1"];\n}'
    fig = export_dot(RUNNING_AF)
    assert fig.count("[label=") == 6
    assert fig.count(" -> ") == 9
    assert "  a3 -> a4;" in fig


def test_export_dot_labels():
    args = enumerate_arguments(RUNNING_KB, RUNNING_CLAIMS)
    labels = {x.id: argument_label(x, RUNNING_KB, RUNNING_CLAIMS) for x in args}
    af = ArgumentationFramework(len(args))
    text = export_dot(af, labels)
    a4 = next(line for line in text.split("\n") if line.startswith("  a4 "))
    assert "neg(a)" in a4 and "neg(b)" in a4 and "imp(a,b)" in a4
    assert labels[4] == "a4: neg(a) ⊢ {imp(a,b), neg(b)}"
    assert export_dot(ArgumentationFramework(1), {1: 'say "hi"'}).count('\\"hi\\"') == 1


def test_export_json():
    empty = json.loads(export_json([], [], RUNNING_KB, RUNNING_CLAIMS))
    assert empty == {"arguments": [], "attacks": []}
    args = enumerate_arguments(RUNNING_KB, RUNNING_CLAIMS)
    attacks = compute_attacks(args, [AttackType.DIRECT_DEFEAT], RUNNING_KB, RUNNING_CLAIMS)
    text = export_json(args, attacks, RUNNING_KB, RUNNING_CLAIMS)
    doc = json.loads(text)
    assert len(doc["arguments"]) == 6 and len(doc["attacks"]) == 9
    assert list(doc["arguments"][0]) == ["id", "support", "claim"]
    assert doc["arguments"][3] == {"id": 4, "support": ["imp(a,b)", "neg(b)"], "claim": "neg(a)"}
    assert doc["attacks"][0] == {"from": 4, "to": 1, "kind": "direct_defeat"}
    back_args, back_attacks = import_json(text, RUNNING_KB, RUNNING_CLAIMS)
    assert back_args == args and back_attacks == attacks
    assert export_json(back_args, back_attacks, RUNNING_KB, RUNNING_CLAIMS) == text


def test_import_json_errors():
    with pytest.raises(InstanceError):
        import_json("{}", RUNNING_KB, RUNNING_CLAIMS)
    with pytest.raises(InstanceError):
        import_json('{"arguments": [{"id": 1, "support": ["zz"], "claim": "a"}], "attacks": []}', RUNNING_KB, RUNNING_CLAIMS)


def test_write_text_is_atomic_and_lf(tmp_path):
    path = tmp_path / "out.apx"
    write_text(path, "arg(a1).")
    assert path.read_bytes() == b"arg(a1).\n"
    write_text(path, "")
    assert path.read_bytes() == b""
    assert [p.name for p in tmp_path.iterdir()] == ["out.apx"]
