"""Fixture generators: the counter systems R_k, fragments of the rewrite
characterisation of Bellantoni and Cook's class B, and start-term families
for empirical runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Callable, Dict, List, Sequence, Tuple, Union

from .terms import (App, Certificate, OrderKind, Precedence, Rule, SafeMapping, Term, Trs, Var,
                    make_trs)

ZERO = App("0")


def s(t: Term) -> Term:
    return App("s", [t])


def numeral(n: int) -> Term:
    t = ZERO
    for _ in range(n):
        t = s(t)
    return t


def gen_rk(k: int) -> Trs:
    """k rules over s, 0 for one defined symbol ``f<k>``; runtime at least n^k."""
    if k < 1:
        raise ValueError("k must be positive")
    f = f"f{k}"
    xs = [Var(f"x{i}") for i in range(1, k + 1)]
    rules = []
    for i in range(1, k + 1):
        lhs = [ZERO] * (i - 1) + [s(xs[i - 1])] + xs[i:]
        rhs = [xs[i - 1]] * i + xs[i:]
        rules.append(Rule(App(f, lhs), App(f, rhs), name=f"{f}.{i}"))
    return make_trs(rules, constructors={"0": 0})  # start terms need 0 even for k = 1


def rk_start(k: int, n: int) -> Term:
    return App(f"f{k}", [numeral(n)] * k)


# ----------------------------------------------------------------------------
# Fragments of the class B
#
# A spec is a nested tuple:
#   ("eps",) ("S1",) ("S2",) ("P",) ("C",) ("I", k, l, j) ("O", k, l)
#   ("SC", h, [r...], [s...])    ("SRN", g, h1, h2)
# A list of specs generates the union of their fragments.

BSpec = Union[tuple, list]
B_CONSTRUCTORS = ("eps", "S1", "S2")


class BSpecError(ValueError):
    pass


@dataclass
class _BNode:
    name: str
    k: int
    l: int
    lh: int
    defined: bool


def _xs(k, prefix="x"):
    return [Var(f"{prefix}{i}") for i in range(1, k + 1)]


class _BBuilder:
    def __init__(self):
        self.rules: Dict[str, List[Rule]] = {}
        self.nodes: Dict[str, _BNode] = {}

    def node(self, spec) -> _BNode:
        if not isinstance(spec, tuple) or not spec:
            raise BSpecError(f"malformed spec {spec!r}")
        tag = spec[0]
        handler = getattr(self, "_" + tag, None)
        if handler is None:
            raise BSpecError(f"unknown B symbol {tag!r}")
        nd = handler(*spec[1:])
        old = self.nodes.setdefault(nd.name, nd)
        if (old.k, old.l) != (nd.k, nd.l):
            raise BSpecError(f"conflicting arities for {nd.name}")
        return nd

    def _add(self, name, rules):
        self.rules.setdefault(name, rules)

    def _eps(self):
        return _BNode("eps", 0, 0, 0, False)

    def _S1(self):
        return _BNode("S1", 0, 1, 0, False)

    def _S2(self):
        return _BNode("S2", 0, 1, 0, False)

    def _P(self):
        x = Var("x")
        eps = App("eps")
        self._add("P", [Rule(App("P", [eps]), eps)] +
                  [Rule(App("P", [App(c, [x])]), x) for c in ("S1", "S2")])
        return _BNode("P", 0, 1, 0, True)

    def _C(self):
        x, y, z1, z2 = Var("x"), Var("y"), Var("z1"), Var("z2")
        self._add("C", [Rule(App("C", [App("eps"), y, z1, z2]), y),
                        Rule(App("C", [App("S1", [x]), y, z1, z2]), z1),
                        Rule(App("C", [App("S2", [x]), y, z1, z2]), z2)])
        return _BNode("C", 0, 4, 0, True)

    def _I(self, k, l, j):
        if not 1 <= j <= k + l:
            raise BSpecError(f"projection index {j} out of range for {k}+{l}")
        name = f"I_{k}_{l}_{j}"
        args = _xs(k) + _xs(l, "y")
        self._add(name, [Rule(App(name, args), args[j - 1])])
        return _BNode(name, k, l, 0, True)

    def _O(self, k, l):
        name = f"O_{k}_{l}"
        self._add(name, [Rule(App(name, _xs(k) + _xs(l, "y")), App("eps"))])
        return _BNode(name, k, l, 0, True)

    def _SC(self, h, rs, ss):
        hn = self.node(h)
        rn = [self.node(r) for r in rs]
        sn = [self.node(x) for x in ss]
        if (hn.k, hn.l) != (len(rn), len(sn)):
            raise BSpecError(f"{hn.name} expects {hn.k} normal and {hn.l} safe arguments")
        if not rn and not sn:
            raise BSpecError("composition needs at least one argument function")
        ks = {r.k for r in rn} | {x.k for x in sn}
        ls = {x.l for x in sn}
        if len(ks) != 1 or any(r.l for r in rn) or len(ls) > 1:
            raise BSpecError("argument functions of a composition disagree on arities")
        k = ks.pop()
        l = ls.pop() if ls else 0
        name = "SC[" + hn.name + "/" + "+".join(r.name for r in rn) + "/" + \
            "+".join(x.name for x in sn) + "]"
        x, y = _xs(k), _xs(l, "y")
        rhs = App(hn.name, [App(r.name, x) for r in rn] + [App(q.name, x + y) for q in sn])
        self._add(name, [Rule(App(name, x + y), rhs)])
        lh = 1 + hn.lh + sum(r.lh for r in rn) + sum(q.lh for q in sn)
        return _BNode(name, k, l, lh, True)

    def _SRN(self, g, h1, h2):
        gn, hn1, hn2 = self.node(g), self.node(h1), self.node(h2)
        k, l = gn.k, gn.l
        for h in (hn1, hn2):
            if (h.k, h.l) != (k + 1, l + 1):
                raise BSpecError(f"step function {h.name} must have {k + 1} normal and {l + 1} safe arguments")
        name = f"SRN[{gn.name}/{hn1.name}/{hn2.name}]"
        z, x, y = Var("z"), _xs(k), _xs(l, "y")
        rules = [Rule(App(name, [App("eps")] + x + y), App(gn.name, x + y))]
        for c, h in (("S1", hn1), ("S2", hn2)):
            rec = App(name, [z] + x + y)
            rules.append(Rule(App(name, [App(c, [z])] + x + y), App(h.name, [z] + x + y + [rec])))
        self._add(name, rules)
        return _BNode(name, k + 1, l, 1 + gn.lh + hn1.lh + hn2.lh, True)


def gen_b_fragment(spec: BSpec) -> Tuple[Trs, Certificate]:
    """Rules for every symbol in ``spec`` plus the certificate ranked by lh."""
    b = _BBuilder()
    for sp in (spec if isinstance(spec, list) else [spec]):
        b.node(sp)
    rules = [r for name in b.rules for r in b.rules[name]]
    defined = [n.name for n in b.nodes.values() if n.defined]
    trs = make_trs(rules, defined)
    sig = trs.signature
    ranks = {n.name: n.lh for n in b.nodes.values() if n.defined and n.name in sig}
    safe = {n.name: range(n.k + 1, n.k + n.l + 1) for n in b.nodes.values() if n.defined}
    cert = Certificate(Precedence(sig, ranks), SafeMapping(sig, safe), OrderKind.POP)
    return trs, cert


def b_lh(spec) -> int:
    return _BBuilder().node(spec).lh


B_FRAGMENTS: Dict[str, BSpec] = {
    "b-proj": [("I", 2, 1, 1), ("I", 2, 1, 3), ("P",), ("O", 1, 1)],
    "b-sc": ("SC", ("C",), [], [("I", 1, 1, 2), ("I", 1, 1, 1), ("O", 1, 1), ("I", 1, 1, 2)]),
    "b-srn": ("SRN", ("I", 0, 1, 1),
              ("SC", ("S1",), [], [("I", 1, 2, 3)]),
              ("SC", ("S2",), [], [("I", 1, 2, 3)])),
}


# ----------------------------------------------------------------------------
# Bundled problems and start-term families

def corpus_text(name: str) -> str:
    return resources.files("popstar.corpus").joinpath(name).read_text(encoding="utf-8")


@lru_cache(maxsize=None)
def corpus_trs(stem: str) -> Trs:
    from .parsing import parse_problem

    return parse_problem(corpus_text(stem + ".trs")).trs


def _lst(n: int) -> Term:
    t = App("nil")
    for i in range(n):
        t = App("cons", [numeral(i % 2), t])
    return t


@dataclass(frozen=True)
class Family:
    name: str
    trs: Callable[[], Trs]
    start: Callable[[int], Term]
    note: str = ""


def family(spec: str) -> Family:
    """``rk:K``, ``bin``, ``mul``, ``dup``, ``dc`` or ``rev``."""
    if spec.startswith("rk:"):
        k = int(spec[3:])
        return Family(spec, lambda: gen_rk(k), lambda n: rk_start(k, n), f"expected degree {k}")
    table = {
        "bin": ("bin", lambda n: App("bin", [numeral(n), numeral(n)]), "exponential"),
        "mul": ("mul", lambda n: App("*", [numeral(n), numeral(n)]), "expected degree 2"),
        "dup": ("dup", lambda n: App("btree", [numeral(n)]), "expected degree 1"),
        "dc": ("dc", lambda n: App("q", [numeral(n)]), "expected degree 2"),
        "rev": ("rev", lambda n: App("rev", [_lst(n)]), "expected degree 1"),
    }
    if spec not in table:
        raise KeyError(f"unknown family {spec!r}")
    stem, start, note = table[spec]
    return Family(spec, lambda: corpus_trs(stem), start, note)


FAMILIES = ("rk:1", "rk:2", "rk:3", "bin", "mul", "dup", "dc", "rev")
