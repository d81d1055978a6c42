"""Predicative interpretations of one rewrite step, and Slow on small sequences."""

import random

from popstar.generators import corpus_text, corpus_trs, numeral
from popstar.parsing import parse_certificate
from popstar.sequences import (NIL, STAR, Caps, EmbeddingChecker, NApp, SeqPrecedence,
                               SlowEstimator, bound_constants, sample_embeddings, tally)

trs = corpus_trs("mul")
cert = parse_certificate(corpus_text("mul.cert"), trs)
chk = EmbeddingChecker(trs, cert)
rule = trs.rules[3]
res = chk.check(rule, {"x": numeral(2), "y": numeral(1)})
print("rule", rule, "with x=2, y=1, l =", res.ell)
print("  S:", chk.pi.S(res.lhs), " >", chk.pi.S(res.rhs), res.s_ok)
print("  N:", chk.pi.N(res.lhs), " >", chk.pi.N(res.rhs), res.n_ok)
print("100 random samples ok:", all(r.ok for r in sample_embeddings(trs, cert, 100, random.Random(0))))

prec = SeqPrecedence.from_ranks({"f": 1, "h": 0}, {"f": 1, "h": 1})
caps = Caps(max_depth=2, max_width=6, symbol_universe=((None, 0), ("h", 1), ("f", 1)))
for k in (1, 2):
    for a in (NIL, STAR, tally(3), NApp("h", [NIL]), NApp("h", [tally(1)])):
        est = SlowEstimator(prec, k, caps)
        print(f"k={k} Slow({a}) = {est.slow(a)}")
for k in (1, 2):
    for p in (0, 1):
        c, d = bound_constants(k, p)
        print(f"c_{k},{p} has {len(str(c))} digits, d_{k},{p} = {d}")
