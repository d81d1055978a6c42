import json

import pytest

from popstar.generators import corpus_text
from popstar.parsing import parse_certificate, parse_problem
from popstar.terms import App, Var


def load(stem):
    return parse_problem(corpus_text(stem + ".trs")).trs


def load_cert(stem, trs=None):
    trs = trs or load(stem)
    return parse_certificate(corpus_text(stem + ".cert"), trs)


def manifest():
    return json.loads(corpus_text("manifest.json"))


def num(n):
    t = App("0")
    for _ in range(n):
        t = App("s", [t])
    return t


def T(sym, *args):
    return App(sym, list(args))


x, y, z = Var("x"), Var("y"), Var("z")


@pytest.fixture(scope="session")
def corpus():
    return {e["id"]: e for e in manifest()}
