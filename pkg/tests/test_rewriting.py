import itertools
import random

from conftest import T, load, num, x
from popstar.generators import gen_rk, rk_start
from popstar.rewriting import (derivation_height, innermost_successors, is_normal_form, normalize,
                               rc_fit)
from popstar.terms import App, Rule, make_trs, match, substitute


# --- independent reference: innermost steps straight from the definition ---

def _redex_rules(t, trs):
    out = []
    for r in trs.rules:
        s = match(r.lhs, t)
        if s is not None:
            out.append(substitute(r.rhs, s))
    return out


def _nf(t, trs):
    if not isinstance(t, App):
        return True
    return all(_nf(a, trs) for a in t.args) and not _redex_rules(t, trs)


def _steps(t, trs):
    if not isinstance(t, App):
        return []
    out = []
    if all(_nf(a, trs) for a in t.args):
        out += _redex_rules(t, trs)
    for i, a in enumerate(t.args):
        for b in _steps(a, trs):
            args = list(t.args)
            args[i] = b
            out.append(App(t.symbol, args))
    return out


def oracle_height(t, trs, memo=None):
    memo = {} if memo is None else memo
    if t not in memo:
        memo[t] = max((1 + oracle_height(u, trs, memo) for u in _steps(t, trs)), default=0)
    return memo[t]


def _basic_terms(trs, depth_max):
    sig = trs.signature
    values = [App(c) for c in sig.constructors if sig.arity(c) == 0]
    for _ in range(depth_max - 1):
        new = list(values)
        for c in sig.constructors:
            n = sig.arity(c)
            if n:
                new += [App(c, args) for args in itertools.product(values, repeat=n)]
        values = list(dict.fromkeys(new))
    for f in sig.defined:
        for args in itertools.product(values, repeat=sig.arity(f)):
            yield App(f, args)


def test_height_matches_oracle_on_small_basic_terms():
    for stem, d in (("mul", 4), ("dc", 4), ("dup", 4), ("bin", 4), ("rev", 3)):
        trs = load(stem)
        memo = {}
        for t in _basic_terms(trs, d):
            st = derivation_height(t, trs)
            assert not st.capped
            assert st.height == oracle_height(t, trs, memo), (stem, t)


def test_height_matches_oracle_on_nondeterministic_system():
    trs = load("sat")
    rng = random.Random(5)
    lits = [T("+", T("Z", App("eps"))), T("-", T("O", App("eps"))), T("+", T("O", App("eps")))]

    def lst(xs):
        t = App("nil")
        for a in reversed(xs):
            t = T("cons", a, t)
        return t

    for _ in range(15):
        clauses = [lst(rng.sample(lits, rng.randint(1, 2))) for _ in range(rng.randint(1, 2))]
        t = T("issat", lst(clauses))
        assert derivation_height(t, trs).height == oracle_height(t, trs)


def test_successors_examples():
    mul = load("mul")
    assert innermost_successors(T("+", num(1), num(0)), mul) == {T("s", T("+", num(0), num(0)))}
    assert innermost_successors(num(0), mul) == set()
    sat = load("sat")
    a, b = T("+", App("eps")), T("-", App("eps"))
    t = T("choice", T("cons", a, T("cons", b, App("nil"))))
    assert len(innermost_successors(t, sat)) == 2


def test_successors_agree_with_reference():
    for stem in ("mul", "sat", "dc"):
        trs = load(stem)
        for t in itertools.islice(_basic_terms(trs, 3), 60):
            assert innermost_successors(t, trs) == set(_steps(t, trs))


def test_normal_forms():
    mul = load("mul")
    assert is_normal_form(num(2), mul)
    assert not is_normal_form(T("+", num(0), num(0)), mul)
    assert is_normal_form(x, mul)


def test_height_examples():
    mul = load("mul")
    assert derivation_height(T("*", num(1), num(1)), mul).height == 4
    assert derivation_height(num(3), mul).height == 0
    st = derivation_height(T("bin", num(8), num(8)), load("bin"))
    assert not st.capped and st.height >= 2 ** 8


def test_normalize_counts_steps():
    nf, steps = normalize(T("*", num(2), num(2)), load("mul"))
    assert nf == num(4)
    assert steps == derivation_height(T("*", num(2), num(2)), load("mul")).height


def test_cap_yields_lower_bound():
    trs = load("bin")
    t = T("bin", num(9), num(9))
    exact = derivation_height(t, trs)
    capped = derivation_height(t, trs, cap=50)
    assert capped.capped and 0 < capped.height <= exact.height


def test_rk_heights_are_monotone_and_fitted():
    fit = rc_fit(gen_rk(1), lambda n: rk_start(1, n), 12)
    assert fit.heights == sorted(fit.heights)
    assert abs(fit.slope - 1) < 0.3
    assert not fit.superpolynomial


def test_exponential_family_is_flagged():
    bin_ = load("bin")
    fit = rc_fit(bin_, lambda n: T("bin", num(n), num(n)), 12)
    assert fit.superpolynomial and not fit.capped


def test_rk_rules_shape():
    r1 = gen_rk(1)
    assert [str(r) for r in r1.rules] == ["f1(s(x1)) -> f1(x1)"]
    assert len(gen_rk(2).rules) == 2
    assert make_trs([Rule(T("f", x), x)]).rules
