import itertools
import random

import pytest

from conftest import T, load, load_cert, manifest, x, y
from popstar.orders import verify_certificate
from popstar.sat.cnf import export_dimacs, parse_dimacs, to_cnf
from popstar.sat.encoding import (Encoder, EncodingError, certificate_assignment, decode,
                                  encode_problem, rank_width)
from popstar.sat.formula import (FALSE, TRUE, atom, conj, disj, exactly_one, iff, implies, neg,
                                 substitute_atoms, zero_or_one)
from popstar.sat.solver import ExternalSolver, SolverError, parse_solver_output, solve
from popstar.terms import App, OrderKind, Rule, Var, make_trs


# --- a formula generator whose truth table is computed without the package ---

def random_expr(rng, names, d):
    if d == 0 or rng.random() < 0.25:
        r = rng.random()
        if r < 0.05:
            return ("const", rng.random() < 0.5)
        return ("var", rng.choice(names))
    op = rng.choice(["and", "or", "not", "iff", "imp"])
    if op == "not":
        return (op, random_expr(rng, names, d - 1))
    if op in ("iff", "imp"):
        return (op, random_expr(rng, names, d - 1), random_expr(rng, names, d - 1))
    return (op,) + tuple(random_expr(rng, names, d - 1) for _ in range(rng.randint(2, 4)))


def ev(e, a):
    op = e[0]
    if op == "const":
        return e[1]
    if op == "var":
        return a[e[1]]
    if op == "not":
        return not ev(e[1], a)
    if op == "and":
        return all(ev(c, a) for c in e[1:])
    if op == "or":
        return any(ev(c, a) for c in e[1:])
    if op == "iff":
        return ev(e[1], a) == ev(e[2], a)
    return (not ev(e[1], a)) or ev(e[2], a)


def build(e):
    op = e[0]
    if op == "const":
        return TRUE if e[1] else FALSE
    if op == "var":
        return atom(e[1])
    if op == "not":
        return neg(build(e[1]))
    if op == "and":
        return conj([build(c) for c in e[1:]])
    if op == "or":
        return disj([build(c) for c in e[1:]])
    if op == "iff":
        return iff(build(e[1]), build(e[2]))
    return implies(build(e[1]), build(e[2]))


def truth_table_sat(e, names):
    return any(ev(e, dict(zip(names, bits)))
               for bits in itertools.product([False, True], repeat=len(names)))


def check_random_formulas(count, seed):
    rng = random.Random(seed)
    for _ in range(count):
        names = [f"p{i}" for i in range(rng.randint(1, 12))]
        e = random_expr(rng, names, rng.randint(1, 6))
        cnf = to_cnf(build(e))
        model = solve(cnf)
        assert (model is not None) == truth_table_sat(e, names), e
        if model is not None:
            assign = {n: model.get(n, False) for n in names}
            assert ev(e, assign)


def test_cnf_equisatisfiable_on_random_formulas():
    check_random_formulas(500, 2024)


def test_cnf_small_examples():
    c = to_cnf(atom("x"))
    assert c.clauses == [[c.atom_vars["x"]]]
    c = to_cnf(conj(atom("x"), atom("y")))
    vx, vy = c.atom_vars["x"], c.atom_vars["y"]
    d = c.num_vars
    assert sorted(map(sorted, c.clauses)) == sorted(map(sorted, [[d], [-d, vx], [-d, vy]]))


def test_dimacs_roundtrip_and_header():
    c = to_cnf(disj(conj(atom("a"), neg(atom("b"))), iff(atom("c"), atom("a"))))
    text = export_dimacs(c)
    assert f"p cnf {c.num_vars} {len(c.clauses)}" in text.splitlines()
    nv, clauses = parse_dimacs(text)
    assert nv == c.num_vars and clauses == c.clauses


def _project(f, names):
    """Truth table of f over ``names``, other atoms existentially quantified."""
    out = {}
    for bits in itertools.product([False, True], repeat=len(names)):
        g = substitute_atoms(f, dict(zip(names, bits)))
        out[bits] = solve(to_cnf(g)) is not None
    return out


def test_cardinality_constraints():
    X, Y = atom("x"), atom("y")
    assert exactly_one([X]) == X
    assert exactly_one([]) == FALSE
    assert _project(zero_or_one([X, Y]), ["x", "y"]) == \
        {b: not (b[0] and b[1]) for b in itertools.product([False, True], repeat=2)}
    xs = [atom(f"v{i}") for i in range(5)]
    tab = _project(exactly_one(xs, "t"), [f"v{i}" for i in range(5)])
    assert all(tab[b] == (sum(b) == 1) for b in tab)


def test_rank_width_and_precedence_atoms():
    assert rank_width(3) == 2
    one = make_trs([Rule(T("f", x), x)])
    assert Encoder(one).encode_precedence() == TRUE
    two = make_trs([Rule(T("f", x), x), Rule(T("g", x), x)])
    e = Encoder(two)
    assert e.width == 1
    cyc = conj(e.encode_precedence(), e.gt("f", "g"), e.gt("g", "f"))
    assert solve(to_cnf(cyc)) is None


def test_comparison_encodings():
    trs = make_trs([Rule(T("f", x), x), Rule(T("g", x, y), T("c", x))], ["f", "g"])
    e = Encoder(trs, memo=False)
    t = T("g", x, y)
    assert e.encode_eqis(t, t) == TRUE
    assert e.encode_eqis(x, y) == FALSE
    trs2 = make_trs([Rule(T("f", x), T("c", T("d", x)))])
    e2 = Encoder(trs2, memo=False)
    assert e2.encode_eqis(T("c", x), T("d", x)) == TRUE
    assert e.encode_gsq(x, t) == FALSE
    assert e.encode_below(x, "f") == TRUE
    tab = _project(e.encode_gsq(T("f", x), x), [("safe", "f", 1)])
    assert tab == {(False,): True, (True,): False}


def _sat(f):
    return solve(to_cnf(f)) is not None


def test_rule_encodings():
    mul = load("mul")
    e = Encoder(mul)
    times1 = conj(e.encode_precedence(), e.encode_gpop(T("*", App("0"), y), App("0")),
                  *[implies(d, body) for d, body in e.defs.items()])
    assert _sat(times1)
    t2a = load("times2a")
    f, _ = encode_problem(t2a, OrderKind.POP)
    assert not _sat(f)
    rev = load("rev")
    lhs = T("revt", T("cons", x, Var("xs")), Var("ys"))
    rhs = T("revt", Var("xs"), T("cons", x, Var("ys")))
    for ps, want in ((False, False), (True, True)):
        e = Encoder(rev, OrderKind.POPPS if ps else OrderKind.POP, memo=False)
        g = e.encode_gpopps(lhs, rhs) if ps else e.encode_gpop(lhs, rhs)
        assert _sat(conj(e.encode_precedence(), g)) is want


def test_problem_encodings():
    f, reg = encode_problem(load("mul"))
    m = solve(to_cnf(f))
    assert m is not None
    assert verify_certificate(load("mul"), decode(m, reg)).ok
    f, _ = encode_problem(load("exp"))
    assert solve(to_cnf(f)) is None
    dc = load("dc")
    f, reg = encode_problem(dc)
    cert = decode(solve(to_cnf(f)), reg)
    p = cert.precedence
    assert p.gt("q", "d") and p.gt("d", "s")


def test_memo_and_plain_encodings_agree():
    for e in manifest():
        trs = load(e["id"])
        for order in OrderKind:
            try:
                fm, _ = encode_problem(trs, order, True)
                fp, _ = encode_problem(trs, order, False)
            except EncodingError:
                assert e["expected"][order.value] == "StructuralReject"
                continue
            assert _sat(fm) == _sat(fp), (e["id"], order)


def test_bundled_certificates_satisfy_their_encodings():
    for stem in ("mul", "dup", "dc", "rev", "sat", "pint"):
        trs = load(stem)
        cert = load_cert(stem, trs)
        f, reg = encode_problem(trs, cert.order_kind)
        g = substitute_atoms(f, certificate_assignment(cert, reg.width))
        assert _sat(g), stem


def test_solver_output_parsing():
    assert parse_solver_output("s UNSATISFIABLE\n") is None
    assert parse_solver_output("s SATISFIABLE\nv 1 -2\nv 3 0\n") == [1, -2, 3]
    with pytest.raises(SolverError):
        parse_solver_output("garbage")


def test_missing_external_solver_is_reported():
    with pytest.raises(SolverError):
        ExternalSolver("definitely-not-a-solver-binary").solve(to_cnf(atom("x")))
