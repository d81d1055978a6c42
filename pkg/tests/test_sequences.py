import itertools
import random

import pytest

from conftest import T, load, load_cert, num, x, y
from seq_oracle import Naive
from popstar.sequences import (NIL, STAR, Caps, EmbeddingChecker, NApp, PredInterp, SeqList,
                               SeqOrder, SeqPrecedence, SlowEstimator, SVar, bound_constants,
                               canon, concat, equivalent, homo, length, mslow, norm,
                               sample_embeddings, tally, width)
from popstar.terms import App, Rule, SafeMapping, Var

KEYS = {"f": 2, "f2": 2, "h": 1, "g": 1}
ARITY = {"f": 1, "f2": 1, "h": 1, "g": 2}
PREC = SeqPrecedence.from_ranks(KEYS, ARITY)
SX = SVar("x")


def _rand_term(rng, d, ground):
    if d <= 0 or rng.random() < 0.3:
        return rng.choice([STAR, STAR] + ([] if ground else [SX]))
    f = rng.choice(list(ARITY))
    return NApp(f, [SeqList([_rand_term(rng, d - 1, ground) for _ in range(rng.randint(0, 2))])
                    for _ in range(ARITY[f])])


def _rand(rng, d=2, ground=True):
    if rng.random() < 0.5:
        return _rand_term(rng, d, ground)
    return SeqList([_rand_term(rng, d, ground) for _ in range(rng.randint(0, 3))])


def _pairs(seed, count, ground=True):
    rng = random.Random(seed)
    return [(_rand(rng, ground=ground), _rand(rng, ground=ground)) for _ in range(count)]


# --- basic operations --------------------------------------------------------

def test_tally_width_length():
    assert tally(0) == NIL and length(tally(3)) == 3
    assert tally(1) == SeqList([STAR])
    assert width(NIL) == 0 and length(NIL) == 0
    assert width(NApp("f", [tally(2)])) == 2
    a, b = NApp("h", [NIL]), NApp("f", [tally(2)])
    ab = concat(SeqList([a]), b)
    assert length(ab) == 2 and width(ab) == width(a) + width(b)
    assert concat(tally(1), concat(tally(2), NIL)) == tally(3)


def test_norm():
    sig = load("mul").signature
    sm = SafeMapping(sig, {"+": [2], "*": []})
    assert norm(T("*", num(1), num(1)), sm) == 1
    assert norm(T("+", num(1), num(2)), sm) == 4
    for n in range(5):
        assert norm(num(n), sm) == n + 1


def test_interpretations():
    trs = load("pint")
    sm = SafeMapping(trs.signature, {"f": [2], "g": [2], "h": []})
    pi = PredInterp(trs, sm)
    assert pi.S(num(2)) == NIL
    assert pi.N(num(2)) == tally(3)
    for n in range(4):
        s = T("f", num(n), num(1))
        assert pi.S(s) == SeqList([NApp("f", [tally(n + 1)])])


def test_canonical_equivalence():
    a = NApp("g", [tally(1), SeqList([NApp("h", [NIL])])])
    b = NApp("g", [SeqList([NApp("h", [NIL])]), tally(1)])
    assert canon(a, PREC) == canon(b, PREC)
    assert equivalent(NApp("f", [NIL]), NApp("f2", [NIL]), PREC)
    assert not equivalent(NApp("f", [NIL]), NApp("h", [NIL]), PREC)
    assert equivalent(STAR, SeqList([STAR]), PREC)


def test_equivalence_matches_permutation_search():
    nv = Naive(KEYS, 1)
    o = SeqOrder(PREC, 1)
    for a, b in _pairs(3, 1500, ground=False):
        assert o.eqv(a, b) == nv.eq(a, b), (a, b)
    for a, _ in _pairs(4, 300, ground=False):
        assert o.eqv(a, canon(a, PREC))


# --- the orders ----------------------------------------------------------------

@pytest.mark.parametrize("ground", [True, False])
def test_order_matches_naive_definition(ground):
    for k in (1, 2):
        o, nv = SeqOrder(PREC, k), Naive(KEYS, k)
        for a, b in _pairs(10 + k, 800, ground):
            for l in (1, 2, 3):
                for full in (False, True):
                    assert o.gt(full, l, a, b) == nv.gt(full, l, a, b), (k, l, full, a, b)
        assert not o.length_violations


def test_worked_descents():
    P = SeqPrecedence.from_ranks({"f": 2, "g": 1, "h": 1}, {"f": 1, "g": 1, "h": 1})
    for n in range(5):
        o1, o2 = SeqOrder(P, 1), SeqOrder(P, 2)
        fa = NApp("f", [tally(n + 1)])
        hn = NApp("h", [tally(n)])
        assert o1.gt(True, 2, tally(n + 1), tally(n))
        assert o1.gt(False, 2, tally(n + 1), tally(n))
        assert o1.gt(False, 3, fa, hn)
        assert o1.gt(False, 4, fa, SeqList([hn, STAR]))
        assert o1.gt(True, 3, fa, NApp("f", [tally(n)]))
        rhs = SeqList([NApp("g", [SeqList([hn, STAR])]), NApp("f", [tally(n)])])
        assert o1.gt(True, 6, SeqList([fa]), rhs)
        for dy in range(3):
            assert o2.gt(True, 6, concat(SeqList([fa]), tally(dy + 1)), concat(rhs, tally(dy + 2)))
        assert not o1.gt(True, 6, tally(n), tally(n))
        assert not o1.length_violations and not o2.length_violations


def test_aux_order_lacks_equal_precedence_case():
    o = SeqOrder(PREC, 1)
    a, b = NApp("f", [tally(2)]), NApp("f2", [tally(1)])
    assert o.gt(True, 3, a, b)
    assert not o.gt(False, 3, a, b)


def test_monotone_in_parameters_and_flavour():
    pairs = _pairs(21, 600)
    for k in (1, 2):
        o, o_up = SeqOrder(PREC, k), SeqOrder(PREC, k + 1)
        for a, b in pairs:
            for l in (1, 2, 3):
                aux, full = o.gt(False, l, a, b), o.gt(True, l, a, b)
                if aux:
                    assert full
                if full:
                    assert o.gt(True, l + 1, a, b)
                    assert o_up.gt(True, l, a, b)


def test_compatible_with_equivalence():
    rng = random.Random(8)
    o = SeqOrder(PREC, 2)

    def shuffle(a):
        if isinstance(a, SeqList):
            es = [shuffle(e) for e in a.elems]
            rng.shuffle(es)
            return SeqList(es)
        if isinstance(a, NApp) and a.symbol is not None:
            sym = {"f": "f2", "f2": "f"}.get(a.symbol, a.symbol)
            args = [shuffle(e) for e in a.args]
            rng.shuffle(args)
            return NApp(sym, args)
        return a

    for a, b in _pairs(9, 500):
        a2, b2 = shuffle(a), shuffle(b)
        assert o.eqv(a, a2) and o.eqv(b, b2)
        assert o.gt(True, 2, a, b) == o.gt(True, 2, a2, b2)


def test_closed_under_concatenation_contexts():
    rng = random.Random(13)
    for k in (1, 2):
        o = SeqOrder(PREC, k)
        hits = 0
        for a, b in _pairs(30 + k, 600):
            if not o.gt(True, k, a, b):
                continue
            hits += 1
            c1, c2 = _rand(rng, 1), _rand(rng, 1)
            assert o.gt(True, k, concat(c1, a, c2), concat(c1, b, c2)), (a, b, c1, c2)
        assert hits > 50
        assert not o.length_violations


def test_irreflexive():
    o = SeqOrder(PREC, 2)
    for a, _ in _pairs(40, 400, ground=False):
        for l in (1, 2, 3):
            assert not o.gt(True, l, a, a)


# --- embeddings ------------------------------------------------------------------

def test_embedding_examples():
    mul = load("mul")
    chk = EmbeddingChecker(mul, load_cert("mul", mul))
    plus2 = mul.rules[1]
    assert chk.check(plus2, {"x": num(0), "y": num(0)}).ok
    pint = load("pint")
    chk = EmbeddingChecker(pint, load_cert("pint", pint))
    assert chk.check(pint.rules[1], {"x": num(0), "y": num(0)}).ok
    rev = load("rev")
    chk = EmbeddingChecker(rev, load_cert("rev", rev))
    nil = App("nil")
    assert chk.check(rev.rules[1], {"x": nil, "xs": T("cons", nil, nil), "ys": nil}).ok
    with pytest.raises(ValueError):
        chk.check(rev.rules[1], {"x": nil, "xs": T("rev", nil), "ys": nil})


def test_embedding_samples_small():
    for stem in ("mul", "dc", "rev"):
        trs = load(stem)
        res = sample_embeddings(trs, load_cert(stem, trs), 20, random.Random(1))
        assert all(r.ok for r in res), stem


# --- Slow and the bounding constants ---------------------------------------------

def test_slow_values():
    P = SeqPrecedence.from_ranks({"f": 1, "h": 0}, {"f": 1, "h": 1})
    caps = Caps(max_depth=2, max_width=6, symbol_universe=((None, 0), ("h", 1), ("f", 1)))
    e1 = SlowEstimator(P, 1, caps)
    assert e1.slow(NIL) == 0
    assert e1.slow(STAR) == 1
    assert e1.slow(NApp("h", [NIL])) == 2
    assert e1.slow(NApp("h", [tally(1)])) == 3
    for n in range(5):
        assert e1.slow(tally(n)) == n * e1.slow(STAR)
    e2 = SlowEstimator(P, 2, caps)
    assert e2.slow(NApp("h", [NIL])) == 4
    assert e2.slow(SeqList([NApp("h", [NIL]), STAR])) == 5


def _universe(depth, maxlen):
    syms = (("h", 1), ("f", 1))
    terms = [STAR]
    for _ in range(depth):
        lists = [SeqList(c) for m in range(maxlen + 1)
                 for c in itertools.combinations_with_replacement(terms, m)]
        terms = list({STAR} | {NApp(f, args) for f, n in syms
                               for args in itertools.combinations_with_replacement(lists, n)})
    lists = [SeqList(c) for m in range(maxlen + 1)
             for c in itertools.combinations_with_replacement(terms, m)]
    return terms + lists


def test_successor_enumeration_matches_filter():
    P = SeqPrecedence.from_ranks({"f": 2, "h": 1}, {"f": 1, "h": 1})
    caps = Caps(max_depth=2, max_width=2, symbol_universe=((None, 0), ("h", 1), ("f", 1)))
    for k in (1, 2):
        est = SlowEstimator(P, k, caps)
        o = SeqOrder(P, k)
        uni = list({o.c(u) for u in _universe(2, 2) if est.fits(u)})
        rng = random.Random(k)
        for a in rng.sample(uni, 40):
            for l in range(1, k + 2):
                for full in (False, True):
                    want = {b for b in uni if o.gt(full, l, a, b)}
                    assert est.succ(full, l, a) == want


def test_bound_constants_and_homo():
    assert bound_constants(1, 0) == (1, 2)
    assert bound_constants(2, 0) == (4, 3)
    assert bound_constants(1, 1) == (1, 5)
    assert bound_constants(2, 1) == ((4 * 2) ** (6 + 36), 217)
    assert homo([3, 1], 2, 4) == 13
    assert homo([1, 3], 2, 4) == 13
    assert mslow([3, 1], 2) == 13
    with pytest.raises(ValueError):
        homo([4], 1, 4)
    with pytest.raises(ValueError):
        bound_constants(0, 0)


def test_homo_and_zero_padding():
    # padding a multiset with zeros is a strict multiset increase that homo
    # cannot see; every other strict decrease is preserved
    def dm(m, n):
        from collections import Counter
        m, n = Counter(m), Counter(n)
        return m != n and all(any(a > b for a in m - n) for b in n - m)

    ms = [c for n in range(4) for c in itertools.combinations_with_replacement(range(5), n)]
    for m, n in itertools.product(ms, ms):
        if dm(m, n):
            hm, hn = homo(m, 3, 5), homo(n, 3, 5)
            assert hm >= hn
            if hm == hn:
                assert [v for v in m if v] == [v for v in n if v]
            elif 0 not in m + n:
                assert hm > hn
    assert homo((0,), 1, 1) == homo((), 1, 1) == 0
