"""Propositional encoding of orientability by POP*, POP*ps and MPO.

Atoms used (keys of ``formula.atom``):

    ("safe", f, i)          position i of defined f is safe
    ("gt", f, g)            f strictly above g, f and g defined
    ("eq", f, g)            f equivalent to g, f < g by name
    ("rank", f, b)          bit b (most significant first) of f's rank
    ("perm", site, i, j)    permutation maps argument i to j
    ("alpha", site, j)      argument j may leave T(below f)
    ("gamma", site, i, j)   left argument i covers right argument j
    ("eps", site, i)        left argument i covers by equivalence
    ("delta", rel, s, t)    shorthand for a memoised comparison
    ("aux", tag, i)         counter atoms of cardinality constraints

A site is ``(rel, s, t)``, so atoms belonging to different comparisons never
collide while repeated occurrences of one comparison share them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, Hashable, List, Mapping, Optional, Tuple

from ..terms import (App, Certificate, OrderKind, Precedence, SafeMapping, Signature, Term,
                     Trs, Var, is_constructor_trs)
from .formula import (FALSE, TRUE, Formula, atom, conj, disj, exactly_one, iff, implies, neg,
                      zero_or_one)


class EncodingError(ValueError):
    pass


def rank_width(n_defined: int) -> int:
    return max(1, math.ceil(math.log2(n_defined))) if n_defined > 1 else 1


def _bits_gt(a: List[Formula], b: List[Formula]) -> Formula:
    if not a:
        return FALSE
    return disj(conj(a[0], neg(b[0])), conj(iff(a[0], b[0]), _bits_gt(a[1:], b[1:])))


def _bits_eq(a: List[Formula], b: List[Formula]) -> Formula:
    return conj([iff(x, y) for x, y in zip(a, b)])


@dataclass
class Registry:
    """What ``decode`` needs to turn a model into a certificate."""
    signature: Signature
    order: OrderKind
    width: int
    defined: Tuple[str, ...]


class Encoder:
    def __init__(self, trs: Trs, order: OrderKind = OrderKind.POP, memo: bool = True):
        self.trs = trs
        self.sig = trs.signature
        self.order = order
        self.memo = memo
        self.defs: Dict[Formula, Formula] = {}
        self._cache: Dict[tuple, Formula] = {}
        self.width = rank_width(len(self.sig.defined))

    # -- symbols -------------------------------------------------------------

    def is_defined(self, f):
        return self.sig.is_defined(f)

    def safe(self, f: str, i: int) -> Formula:
        if not self.is_defined(f):
            return TRUE
        return atom("safe", f, i)

    def gt(self, f: str, g: str) -> Formula:
        fd, gd = self.is_defined(f), self.is_defined(g)
        if fd and not gd:
            return TRUE
        if not fd or f == g:
            # constructors are minimal
            return FALSE
        return atom("gt", f, g)

    def eq(self, f: str, g: str) -> Formula:
        fd, gd = self.is_defined(f), self.is_defined(g)
        if f == g or (not fd and not gd):
            return TRUE
        if fd != gd:
            return FALSE
        return atom("eq", *sorted((f, g)))

    def rank_bits(self, f: str) -> List[Formula]:
        return [atom("rank", f, b) for b in range(self.width)]

    def encode_precedence(self, defined=None) -> Formula:
        ds = list(self.sig.defined if defined is None else defined)
        parts = []
        for f in ds:
            for g in ds:
                if f == g:
                    continue
                parts.append(implies(self.gt(f, g), _bits_gt(self.rank_bits(f), self.rank_bits(g))))
                if f < g:
                    parts.append(implies(self.eq(f, g), _bits_eq(self.rank_bits(f), self.rank_bits(g))))
        return conj(parts)

    # -- memoisation ---------------------------------------------------------

    def _compare(self, rel: str, s: Term, t: Term, build) -> Formula:
        key = (rel, s, t)
        if key in self._cache:
            return self._cache[key]
        body = build()
        if self.memo and not body.is_const and body.op != "atom":
            d = atom("delta", rel, s, t)
            self.defs[d] = body
            res = d
        else:
            res = body
        self._cache[key] = res
        return res

    # -- safe equivalence ----------------------------------------------------

    def encode_eqis(self, s: Term, t: Term, erase_safe: bool = False) -> Formula:
        rel = "eqmpo" if erase_safe else "eqis"
        key = (rel, s, t)
        if key not in self._cache:
            self._cache[key] = self._eqis(s, t, erase_safe, rel)
        return self._cache[key]

    def _eqis(self, s, t, erase_safe, rel):
        if s == t:
            return TRUE
        if isinstance(s, Var) or isinstance(t, Var) or len(s.args) != len(t.args):
            return FALSE
        root = self.eq(s.symbol, t.symbol)
        if root == FALSE:
            return FALSE
        n = len(s.args)
        site = (rel, s, t)
        if n == 1:
            perm = {(0, 0): TRUE}
        else:
            perm = {(i, j): atom("perm", site, i + 1, j + 1) for i in range(n) for j in range(n)}
        parts = [root]
        if n > 1:
            for i in range(n):
                parts.append(exactly_one([perm[i, j] for j in range(n)], (site, "row", i)))
            for j in range(n):
                # constraining rows only would admit non-injective maps
                parts.append(exactly_one([perm[i, j] for i in range(n)], (site, "col", j)))
        for i in range(n):
            for j in range(n):
                body = self.encode_eqis(s.args[i], t.args[j], erase_safe)
                if not erase_safe:
                    body = conj(body, iff(self.safe(s.symbol, i + 1), self.safe(t.symbol, j + 1)))
                parts.append(implies(perm[i, j], body))
        return conj(parts)

    # -- auxiliary order -----------------------------------------------------

    def encode_below(self, t: Term, f: str) -> Formula:
        if isinstance(t, Var):
            return TRUE
        return conj([self.gt(f, t.symbol)] + [self.encode_below(a, f) for a in t.args])

    def encode_gsq(self, s: Term, t: Term) -> Formula:
        if isinstance(s, Var):
            return FALSE
        return self._compare("gsq", s, t, lambda: self._gsq(s, t))

    def _gsq(self, s, t):
        f = s.symbol
        st = []
        for i, si in enumerate(s.args, 1):
            guard = neg(self.safe(f, i)) if self.is_defined(f) else TRUE
            st.append(conj(disj(self.encode_gsq(si, t), self.encode_eqis(si, t)), guard))
        ia = FALSE
        if self.is_defined(f) and isinstance(t, App):
            ia = conj([self.gt(f, t.symbol)] + [self.encode_gsq(s, tj) for tj in t.args])
        return disj(st + [ia])

    # -- POP* / POP*ps -------------------------------------------------------

    def encode_gpop(self, s: Term, t: Term) -> Formula:
        if isinstance(s, Var):
            return FALSE
        return self._compare("gpop", s, t, lambda: self._pop(s, t, False))

    def encode_gpopps(self, s: Term, t: Term) -> Formula:
        if isinstance(s, Var):
            return FALSE
        return self._compare("gpopps", s, t, lambda: self._pop(s, t, True))

    def _gt_rec(self, s, t, ps):
        return self.encode_gpopps(s, t) if ps else self.encode_gpop(s, t)

    def _pop(self, s, t, ps):
        f = s.symbol
        rel = "gpopps" if ps else "gpop"
        st = [disj(self._gt_rec(si, t, ps), self.encode_eqis(si, t)) for si in s.args]
        if not self.is_defined(f) or isinstance(t, Var):
            return disj(st)
        g = t.symbol
        site = (rel, s, t)
        ia = self._pop_ia(s, t, ps, site)
        ep = self._pop_ep(s, t, ps, site)
        return disj(st + [ia, ep])

    def _pop_ia(self, s, t, ps, site):
        f, g = s.symbol, t.symbol
        root = self.gt(f, g)
        if root == FALSE:
            return FALSE
        m = len(t.args)
        alphas = [atom("alpha", site, j) for j in range(1, m + 1)]
        parts = [root]
        for j, tj in enumerate(t.args, 1):
            sj = self.safe(g, j)
            parts.append(implies(sj, self._gt_rec(s, tj, ps)))
            parts.append(implies(neg(sj), self.encode_gsq(s, tj)))
        parts.append(zero_or_one(alphas, (site, "alpha")))
        for j, tj in enumerate(t.args, 1):
            parts.append(implies(neg(alphas[j - 1]), self.encode_below(tj, f)))
        return conj(parts)

    def _pop_ep(self, s, t, ps, site):
        f, g = s.symbol, t.symbol
        root = self.eq(f, g)
        if root == FALSE or not self.is_defined(g):
            return FALSE
        n, m = len(s.args), len(t.args)
        gam = {(i, j): atom("gamma", site, i, j) for i in range(1, n + 1) for j in range(1, m + 1)}
        eps = {i: atom("eps", site, i) for i in range(1, n + 1)}
        parts = [root]
        for i in range(1, n + 1):
            si, sfi = s.args[i - 1], self.safe(f, i)
            for j in range(1, m + 1):
                tj, sgj = t.args[j - 1], self.safe(g, j)
                cond = conj(implies(eps[i], self.encode_eqis(si, tj)),
                            implies(neg(eps[i]), self._gt_rec(si, tj, ps)))
                if ps:
                    cond = conj(cond, neg(sfi), neg(sgj))
                else:
                    cond = conj(cond, iff(sfi, sgj))
                parts.append(implies(gam[i, j], cond))
        for j in range(1, m + 1):
            col = exactly_one([gam[i, j] for i in range(1, n + 1)], (site, "col", j))
            if ps:
                sgj, tj = self.safe(g, j), t.args[j - 1]
                parts.append(implies(neg(sgj), col))
                parts.append(implies(sgj, conj(self.encode_gpopps(s, tj), self.encode_below(tj, f))))
            else:
                parts.append(col)
        for i in range(1, n + 1):
            row = exactly_one([gam[i, j] for j in range(1, m + 1)], (site, "row", i))
            parts.append(implies(eps[i], row))
        parts.append(disj([conj(neg(self.safe(f, i)), neg(eps[i])) for i in range(1, n + 1)]))
        return conj(parts)

    # -- MPO -----------------------------------------------------------------

    def encode_mpo(self, s: Term, t: Term) -> Formula:
        if isinstance(s, Var):
            return FALSE
        return self._compare("mpo", s, t, lambda: self._mpo(s, t))

    def _mpo(self, s, t):
        st = [disj(self.encode_mpo(si, t), self.encode_eqis(si, t, True)) for si in s.args]
        if isinstance(t, Var):
            return disj(st)
        f, g = s.symbol, t.symbol
        site = ("mpo", s, t)
        ia = conj([self.gt(f, g)] + [self.encode_mpo(s, tj) for tj in t.args])
        ep = FALSE
        root = self.eq(f, g)
        if root != FALSE:
            n, m = len(s.args), len(t.args)
            gam = {(i, j): atom("gamma", site, i, j) for i in range(1, n + 1) for j in range(1, m + 1)}
            eps = {i: atom("eps", site, i) for i in range(1, n + 1)}
            parts = [root]
            for (i, j), gv in gam.items():
                si, tj = s.args[i - 1], t.args[j - 1]
                parts.append(implies(gv, conj(implies(eps[i], self.encode_eqis(si, tj, True)),
                                              implies(neg(eps[i]), self.encode_mpo(si, tj)))))
            for j in range(1, m + 1):
                parts.append(exactly_one([gam[i, j] for i in range(1, n + 1)], (site, "col", j)))
            for i in range(1, n + 1):
                parts.append(implies(eps[i], exactly_one([gam[i, j] for j in range(1, m + 1)],
                                                         (site, "row", i))))
            parts.append(disj([neg(eps[i]) for i in range(1, n + 1)]))
            ep = conj(parts)
        return disj(st + [ia, ep])

    # -- whole problems ------------------------------------------------------

    def orient(self, s: Term, t: Term) -> Formula:
        if self.order is OrderKind.POPPS:
            return self.encode_gpopps(s, t)
        if self.order is OrderKind.MPO:
            return self.encode_mpo(s, t)
        return self.encode_gpop(s, t)

    def encode(self) -> Tuple[Formula, Registry]:
        if self.order is not OrderKind.MPO and not is_constructor_trs(self.trs):
            raise EncodingError("not a constructor TRS")
        rules = conj([self.orient(r.lhs, r.rhs) for r in self.trs.rules])
        # definitions may create further definitions; close the set
        done = set()
        defs = []
        while True:
            todo = [d for d in self.defs if d not in done]
            if not todo:
                break
            for d in todo:
                done.add(d)
                defs.append(implies(d, self.defs[d]))
        f = conj([self.encode_precedence(), rules] + defs)
        reg = Registry(self.sig, self.order, self.width, tuple(self.sig.defined))
        return f, reg


def encode_problem(trs: Trs, order: OrderKind = OrderKind.POP, memo: bool = True):
    return Encoder(trs, order, memo).encode()


# ----------------------------------------------------------------------------
# Models and certificates

def decode(model, reg: Registry) -> Certificate:
    ranks = {}
    for f in reg.defined:
        v = 0
        for b in range(reg.width):
            v = 2 * v + (1 if model.get(("rank", f, b), False) else 0)
        ranks[f] = v
    safe = {f: [i for i in range(1, reg.signature.arity(f) + 1)
                if model.get(("safe", f, i), False)] for f in reg.defined}
    kind = reg.order
    return Certificate(Precedence(reg.signature, ranks), SafeMapping(reg.signature, safe), kind)


def certificate_assignment(cert: Certificate, width: Optional[int] = None) -> Dict[Hashable, bool]:
    """Truth values of the precedence and safe-mapping atoms a certificate induces."""
    sig = cert.precedence.signature
    ds = sig.defined
    width = width or rank_width(len(ds))
    prec = cert.precedence
    levels = sorted({prec.rank(f) for f in ds})
    dense = {f: levels.index(prec.rank(f)) for f in ds}
    out: Dict[Hashable, bool] = {}
    for f in ds:
        for b in range(width):
            out[("rank", f, b)] = bool((dense[f] >> (width - 1 - b)) & 1)
        for i in range(1, sig.arity(f) + 1):
            out[("safe", f, i)] = cert.safe_mapping.is_safe(f, i)
        for g in ds:
            if f != g:
                out[("gt", f, g)] = prec.gt(f, g)
                if f < g:
                    out[("eq", f, g)] = prec.eq(f, g)
    return out
