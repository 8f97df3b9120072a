import json
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from uqpadic import get_group
from uqpadic.cli import CACHE_ENV, SessionConfig, emit, main, run_verify
from uqpadic.expr import ParseError, parse_expression
from uqpadic.oqsl2 import OqElement, OqSL2
from uqpadic.suites import random_word
from uqpadic.words import WordElement


# -- parser ------------------------------------------------------------------------------


def test_parse_examples(A2):
    x = parse_expression("E1*F1 - F1*E1", 2, A2.spec)
    assert x == WordElement({(("E", 0), ("F", 0)): 1, (("F", 0), ("E", 0)): -1})
    assert parse_expression("K[1,0]*E2^2", 2, A2.spec) == WordElement({(("K", (1, 0)), ("E", 1), ("E", 1)): 1})
    assert parse_expression("(3/2)*q*F1", 2, A2.spec) == WordElement({(("F", 0),): Fraction(3, 2) * A2.q})


def test_parse_scalars_and_powers(A2):
    spec = A2.spec
    assert parse_expression("qq^3", 2, spec) == WordElement({(): spec.qprime**3})
    assert parse_expression("q^(-1) * 2", 2, spec) == WordElement({(): 2 / spec.q})
    assert parse_expression("K[1,-1]^-2", 2, spec) == WordElement({(("K", (-2, 2)),): 1})
    assert parse_expression(" E 1 *  E2 ", 2, spec) == parse_expression("E1*E2", 2, spec)
    assert parse_expression("E1*E2*E1", 2, spec) == parse_expression("(E1*E2)*E1", 2, spec)
    assert parse_expression("K[0,0]*E1", 2, spec) == parse_expression("E1", 2, spec)


def test_parse_oq():
    x = parse_expression("a*d - q*b*c", None, OqSL2().spec)
    assert isinstance(x, OqElement) and x == 1


@pytest.mark.parametrize("text,pos", [
    ("E1 + * E2", 5),
    ("E3", 0),
    ("K[1]", 0),
    ("E1 $ E2", 3),
    ("(E1", 3),
    ("E1^-1", 0),
    ("a*E1", 0),
    ("E", 1),
    ("E1/2", 1),
])
def test_parse_errors(A2, text, pos):
    with pytest.raises(ParseError) as exc:
        parse_expression(text, 2, A2.spec)
    assert exc.value.pos == pos


# -- emit --------------------------------------------------------------------------------


def test_emit_one():
    assert json.loads(emit(1, "json")) == [{"coeff": "1/1", "lambda": [], "r": [], "s": []}]


def test_emit_formats(A2):
    x = A2.E(0) * A2.F(1) + Fraction(1, 3) * A2.K((1, 0))
    js = json.loads(emit(x, "json"))
    assert A2.from_json(js) == x
    csv = emit(x, "csv").splitlines()
    assert csv[0] == "r,lambda,s,coeff" and len(csv) == 3
    table = emit(x, "table").splitlines()
    assert table[0].split() == ["r", "lambda", "s", "coeff"]


def test_emit_byte_stable(A2):
    x = A2.E(0) * A2.E(1)
    y = A2.word_to_pbw(WordElement({(("E", 0), ("E", 1)): 1}))
    assert x == y
    for fmt in ("json", "csv", "table", "expr"):
        assert emit(x, fmt) == emit(y, fmt)


def test_weight_table_sorted_by_weight(capsys):
    assert main(["verma", "--type", "A2", "--lambda", "1,0", "--depth", "2", "--format", "csv"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "mu,depth,dim,maximal_vectors"
    mus = [tuple(int(v) for v in line.split(",")[0].split()) for line in lines[1:]]
    assert mus == sorted(mus, reverse=True)


@pytest.mark.parametrize("name", ["A1", "A2", "B2"])
@given(seed=st.integers(0, 10**6))
def test_parse_emit_round_trip(name, seed):
    qg = get_group(name)
    w = random_word(qg, random.Random(seed), 6)
    x = qg.word_to_pbw(w)
    text = emit(x, "expr")
    back = qg.word_to_pbw(parse_expression(text, qg.n, qg.spec))
    assert back == x
    assert emit(back, "expr") == text


@given(st.text(alphabet="abcd", max_size=6))
def test_oq_emit_round_trip(w):
    ring = OqSL2()
    x = ring.normal_form(w)
    assert parse_expression(emit(x, "expr"), None, ring.spec, oq_ring=ring) == x


# -- configuration and runner -----------------------------------------------------------


def test_config_validation(tmp_path):
    with pytest.raises(ValueError):
        SessionConfig(p=4).validate()
    with pytest.raises(ValueError):
        SessionConfig(lie_type="G", rank=2, p=3).validate()
    with pytest.raises(ValueError):
        SessionConfig(height_cap=0).validate()
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"p": 7, "lie_type": "B", "rank": 2, "word": [2, 1, 2, 1], "seed": 4}))
    cfg = SessionConfig.from_file(path).validate()
    assert cfg.group().word == (2, 1, 2, 1) and cfg.spec().p == 7
    path.write_text(json.dumps({"bogus": 1}))
    with pytest.raises(ValueError):
        SessionConfig.from_file(path)


def test_run_verify_examples():
    empty = run_verify(SessionConfig())
    assert empty.passed and empty.checks == []
    rep = run_verify(SessionConfig(lie_type="A", rank=2, suites=["serre"]))
    assert rep.passed and len(rep.checks) == 4
    rep = run_verify(SessionConfig(lie_type="A", rank=1, suites=["casimir"]))
    assert rep.passed and rep.header["seed"] == 0


def test_run_verify_deterministic():
    cfg = SessionConfig(lie_type="A", rank=2, suites=["norms", "oq", "blocks"], seed=9)
    assert emit(run_verify(cfg)) == emit(run_verify(cfg))


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_verify(SessionConfig(suites=["nope"]))


def test_cli_subcommands(capsys):
    assert main(["normal-form", "E2*E1", "--type", "A2"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert {tuple(t["s"]) for t in out} == {(1, 0, 1), (0, 1, 0)}
    assert main(["norm", "5*E1", "-n", "1", "--type", "A2"]) == 0
    assert json.loads(capsys.readouterr().out) == {"in_lattice": True, "log_norm": 0, "n": 1}
    assert main(["braid", "E2", "-w", "1", "--type", "A2", "--format", "expr"]) == 0
    assert "E1*E2" in capsys.readouterr().out
    assert main(["oq", "d*a", "-n", "1", "--hopf"]) == 0
    assert json.loads(capsys.readouterr().out)["counit"] == "1/1"
    assert main(["blocks", "--type", "A1", "--grid", "2", "--format", "csv"]) == 0
    assert capsys.readouterr().out.startswith("representative,size,members")
    assert main(["rootdata", "--type", "G2"]) == 0
    assert len(json.loads(capsys.readouterr().out)["beta_sequence"]) == 6
    assert main(["verify", "--suite", "serre", "--type", "A2", "--format", "table"]) == 0
    capsys.readouterr()


def test_cli_errors(capsys):
    assert main(["normal-form", "E1 +", "--type", "A2"]) == 2
    assert "parse error" in capsys.readouterr().err
    assert main(["normal-form", "E1", "--type", "G2", "--p", "3"]) == 2
    capsys.readouterr()
    assert main(["casimir", "--format", "expr"]) == 2
    assert "only applies to algebra elements" in capsys.readouterr().err


def test_cache_dir(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv(CACHE_ENV, str(tmp_path))
    assert main(["verify", "--suite", "serre", "--type", "B2", "--p", "7"]) == 0
    files = list(tmp_path.glob("rootvectors_*.json"))
    assert len(files) == 1
    data = json.loads(files[0].read_text())
    assert data["schema_version"] == 1
    assert sorted(data["root_vectors"]) == ["0", "1", "2", "3"]
    # a second run reads the cache back; a stale schema is ignored
    assert main(["verify", "--suite", "serre", "--type", "B2", "--p", "7"]) == 0
    files[0].write_text(json.dumps({"schema_version": 0, "root_vectors": {"0": []}}))
    assert main(["verify", "--suite", "serre", "--type", "B2", "--p", "7"]) == 0
    capsys.readouterr()
