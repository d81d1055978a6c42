import pytest

from conftest import T, load, manifest, x, y
from popstar.generators import corpus_text
from popstar.parsing import (ParseError, parse_certificate, parse_problem, print_certificate,
                             print_problem, tokenize)
from popstar.terms import App, Var


def test_every_corpus_file_round_trips():
    for e in manifest():
        pf = parse_problem(corpus_text(e["file"]))
        again = parse_problem(print_problem(pf.trs, pf.safe_mapping))
        assert again.trs.rules == pf.trs.rules, e["id"]
        assert again.trs.signature == pf.trs.signature, e["id"]
        if pf.safe_mapping is not None:
            assert dict(again.safe_mapping.items()) == dict(pf.safe_mapping.items())
        if "cert" in e:
            cert = parse_certificate(corpus_text(e["cert"]), pf.trs)
            back = parse_certificate(print_certificate(cert), pf.trs)
            assert back.describe() == cert.describe()


def test_minimal_problem():
    trs = parse_problem("(VAR x)(RULES f(x) -> x)").trs
    assert trs.rules[0].lhs == T("f", x) and trs.rules[0].rhs == x
    assert trs.signature.defined == ["f"]


def test_mul_signature():
    trs = load("mul")
    assert len(trs.rules) == 4
    assert set(trs.signature.defined) == {"+", "*"}
    assert set(trs.signature.constructors) == {"0", "s"}


def test_native_syntax():
    pf = parse_problem("(RULES f(x; y) -> g(;y)  g(;y) -> c())")
    assert pf.format == "native"
    assert list(pf.safe_mapping.safe("f")) == [2]
    assert list(pf.safe_mapping.safe("g")) == [1]
    assert pf.trs.rules[1].rhs == App("c")
    assert isinstance(pf.trs.rules[0].lhs.args[0], Var)


def test_tokens_carry_positions():
    toks = tokenize("(RULES\n  f(x)->x)")
    arrow = [t for t in toks if t.text == "->"][0]
    assert (arrow.line, arrow.col) == (2, 7)


@pytest.mark.parametrize("text", [
    "(VAR x)(RULES f(x) -> )",
    "(VAR x)(RULES f(x) x)",
    "(VAR x)(RULES f(x -> x)",
    "(VAR x y)(RULES f(x) -> y)",
    "(VAR x)(RULES f(x) -> f(x, x))",
    "(VAR x)(RULES x(x) -> x)",
    "(RULES f(x; y) -> f(x, y; ))",
])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_problem(text)


def test_certificate_errors():
    trs = load("mul")
    with pytest.raises(ParseError):
        parse_certificate("rank nosuch 1\n", trs)
    with pytest.raises(ParseError):
        parse_certificate("bogus line\n", trs)
    with pytest.raises(ParseError):
        parse_certificate("rank + one\n", trs)
