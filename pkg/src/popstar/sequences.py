"""Terms with sequence arguments, predicative interpretations and the
polynomial path order on sequences.

Sequence terms are built from ``SVar``, ``NApp`` (a normalised symbol applied
to argument *lists*) and ``SeqList``.  The tally constant is ``STAR``, an
``NApp`` whose symbol is ``None`` so it can never clash with a user symbol.

Permutation equivalence is decided through canonical forms: arguments and
list elements are sorted, and symbols are replaced by a fixed representative
of their precedence class.  Two terms are equivalent iff their canonical forms
are equal, so canonical forms double as memo keys.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Set, Tuple, Union

from .multiset import find_cover
from .rewriting import _index
from .terms import App, Certificate, Precedence, Rule, SafeMapping, Term, Trs, Var, size, substitute


class SVar:
    __slots__ = ("name", "_key")

    def __init__(self, name):
        self.name = name
        self._key = (0, name)

    def __eq__(self, other):
        return isinstance(other, SVar) and other.name == self.name

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return self.name


class NApp:
    __slots__ = ("symbol", "args", "_key", "_hash")

    def __init__(self, symbol: Optional[str], args: Iterable["SeqList"] = ()):
        self.symbol = symbol
        self.args = tuple(args)
        for a in self.args:
            if not isinstance(a, SeqList):
                raise TypeError("arguments of normalised symbols are sequences")
        self._key = (1,) if symbol is None else (2, symbol, tuple(a._key for a in self.args))
        self._hash = hash(self._key)

    def __eq__(self, other):
        return isinstance(other, NApp) and other._hash == self._hash and other._key == self._key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        if self.symbol is None:
            return "*"
        return f"{self.symbol}^n({', '.join(map(repr, self.args))})"


class SeqList:
    __slots__ = ("elems", "_key", "_hash")

    def __init__(self, elems: Iterable = ()):
        flat = []
        for e in elems:
            if isinstance(e, SeqList):
                flat.extend(e.elems)
            else:
                flat.append(e)
        self.elems = tuple(flat)
        self._key = (3, tuple(e._key for e in self.elems))
        self._hash = hash(self._key)

    def __eq__(self, other):
        return isinstance(other, SeqList) and other._hash == self._hash and other._key == self._key

    def __hash__(self):
        return self._hash

    def __len__(self):
        return len(self.elems)

    def __repr__(self):
        return "<" + " ".join(map(repr, self.elems)) + ">"


SeqTerm = Union[SVar, NApp, SeqList]
STAR = NApp(None)
NIL = SeqList()


def tolst(a: SeqTerm) -> SeqList:
    return a if isinstance(a, SeqList) else SeqList([a])


def concat(*parts: SeqTerm) -> SeqList:
    return SeqList(parts)


def length(a: SeqTerm) -> int:
    return len(tolst(a).elems)


def width(a: SeqTerm) -> int:
    if isinstance(a, SVar):
        return 1
    if isinstance(a, NApp):
        return max([1] + [width(x) for x in a.args])
    return sum(width(x) for x in a.elems)


def seq_depth(a: SeqTerm) -> int:
    """Nesting of normalised symbols (lists are transparent)."""
    if isinstance(a, SVar):
        return 1
    if isinstance(a, NApp):
        return 1 + max([0] + [seq_depth(x) for x in a.args])
    return max([0] + [seq_depth(x) for x in a.elems])


def symbols_of(a: SeqTerm) -> Set[Optional[str]]:
    out = set()
    stack = [a]
    while stack:
        x = stack.pop()
        if isinstance(x, NApp):
            out.add(x.symbol)
            stack.extend(x.args)
        elif isinstance(x, SeqList):
            stack.extend(x.elems)
    return out


def tally(n: int) -> SeqList:
    if n < 0:
        raise ValueError("tally of a negative number")
    return SeqList([STAR] * n)


# ----------------------------------------------------------------------------
# Precedence on the normalised signature

class SeqPrecedence:
    """Precedence on normalised symbols; the tally constant is strictly minimal."""

    def __init__(self, keys: Mapping[str, tuple], arities: Optional[Mapping[str, int]] = None):
        self.keys = dict(keys)
        self.arities = dict(arities or {})
        self._rep: Dict[Optional[str], Optional[str]] = {None: None}
        groups: Dict[tuple, List[str]] = {}
        for f, kf in self.keys.items():
            groups.setdefault((kf, self.arities.get(f)), []).append(f)
        for (kf, ar), names in groups.items():
            rep = min(names)
            for f in names:
                self._rep[f] = rep

    @classmethod
    def from_ranks(cls, ranks: Mapping[str, int], arities: Optional[Mapping[str, int]] = None):
        return cls({f: (r,) for f, r in ranks.items()}, arities)

    @classmethod
    def from_precedence(cls, prec: Precedence, sm: SafeMapping):
        sig = prec.signature
        keys = {f: prec._key(f) for f in sig.symbols}
        return cls(keys, {f: len(sm.normal(f)) for f in sig.symbols})

    def key(self, f):
        if f is None:
            return None
        return self.keys[f]

    def gt(self, f, g) -> bool:
        if f is None:
            return False
        if g is None:
            return True
        return self.keys[f] > self.keys[g]

    def eq(self, f, g) -> bool:
        if f == g:
            return True
        if f is None or g is None:
            return False
        return self.keys[f] == self.keys[g]

    def rep(self, f):
        return self._rep.get(f, f)

    def rank(self, f) -> int:
        """Length of the longest strictly descending chain below f."""
        if f is None:
            return 0
        below = [g for g in self.keys if self.gt(f, g)]
        return 1 + max([self.rank(g) for g in below] + [0])


def canon(a: SeqTerm, prec: SeqPrecedence) -> SeqTerm:
    if isinstance(a, SVar):
        return a
    if isinstance(a, NApp):
        if a.symbol is None:
            return a
        args = sorted((canon(x, prec) for x in a.args), key=lambda x: x._key)
        return NApp(prec.rep(a.symbol), args)
    return SeqList(sorted((canon(x, prec) for x in a.elems), key=lambda x: x._key))


def equivalent(a: SeqTerm, b: SeqTerm, prec: SeqPrecedence) -> bool:
    if isinstance(a, SeqList) != isinstance(b, SeqList):
        a, b = tolst(a), tolst(b)
    return canon(a, prec) == canon(b, prec)


# ----------------------------------------------------------------------------
# The orders on sequences

class SeqOrder:
    """Decides the auxiliary (``full=False``) and full order with width bound k.

    A term compared against a list is read as the singleton list, which is
    how the subterm clause lets a list argument dominate a term.  Every
    positive verdict is checked against the length bound; violations are
    collected in ``length_violations``.
    """

    def __init__(self, prec: SeqPrecedence, k: int):
        if k < 1:
            raise ValueError("k must be positive")
        self.prec = prec
        self.k = k
        self._memo: Dict[tuple, bool] = {}
        self._canon: Dict[SeqTerm, SeqTerm] = {}
        self.length_violations: List[Tuple[SeqTerm, SeqTerm]] = []
        self.checked = 0

    def c(self, a):
        r = self._canon.get(a)
        if r is None:
            r = canon(a, self.prec)
            self._canon[a] = r
            self._canon[r] = r
        return r

    def eqv(self, a, b) -> bool:
        if isinstance(a, SeqList) != isinstance(b, SeqList):
            a, b = tolst(a), tolst(b)
        return self.c(a) == self.c(b)

    def ge(self, full, l, a, b):
        return self.eqv(a, b) or self.gt(full, l, a, b)

    def gt(self, full: bool, l: int, a: SeqTerm, b: SeqTerm) -> bool:
        if l <= 0 or isinstance(a, SVar):
            return False
        a, b = self.c(a), self.c(b)
        key = (full, l, a, b)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        res = self._decide(full, l, a, b)
        self._memo[key] = res
        if res:
            self.checked += 1
            if length(b) > width(a) + self.k:
                self.length_violations.append((a, b))
        return res

    def _decide(self, full, l, a, b):
        k = self.k
        if isinstance(a, SeqList):
            return self._ms(full, l, a, tolst(b))
        # a = f(xs); subterm clause first
        for x in a.args:
            if self.eqv(x, b) or self.gt(full, l, x, b):
                return True
        if isinstance(b, SVar):
            return False
        if isinstance(b, NApp):
            m = len(b.args)
            if m > k:
                return False
            if self.prec.gt(a.symbol, b.symbol):
                if all(self.gt(False, l - 1, a, y) for y in b.args):
                    return True
            if full and self.prec.eq(a.symbol, b.symbol):
                cover = find_cover(list(a.args), list(b.args),
                                   lambda x, y: self.gt(True, l, x, y), self.eqv, True)
                if cover is not None:
                    return True
            return False
        return self._ialst(full, l, a, b)

    def _ialst(self, full, l, a, b: SeqList):
        if len(b.elems) > width(a) + self.k:
            return False
        loose = [y for y in b.elems if not self.gt(False, l - 1, a, y)]
        if not loose:
            return True
        return full and len(loose) == 1 and self.gt(True, l - 1, a, loose[0])

    def _ms(self, full, l, a: SeqList, b: SeqList):
        """Partition b into one group per element of a.

        Groups are chosen element by element of a, memoised on the multiset
        still to be placed.  For ground sequences an element y can only sit
        in the group of a_i if a_i hosts y on its own (equivalent, or greater
        than y or <y>); this is used to prune and is skipped otherwise.
        """
        k = self.k
        n = len(a.elems)
        if len(b.elems) > width(a) + k or n == 0:
            return False
        kinds: Dict[SeqTerm, int] = {}
        for y in b.elems:
            kinds[y] = kinds.get(y, 0) + 1
        types = sorted(kinds, key=lambda y: y._key)
        counts0 = tuple(kinds[y] for y in types)
        caps = [width(x) + k for x in a.elems]
        prune = is_ground(a) and is_ground(b)
        group_memo: Dict[Tuple[int, Tuple[int, ...]], Optional[bool]] = {}

        def group_status(i, cnt):
            # None: invalid; False: valid by equivalence; True: valid strictly
            key = (i, cnt)
            if key in group_memo:
                return group_memo[key]
            g = [y for y, c in zip(types, cnt) for _ in range(c)]
            x = a.elems[i]
            if isinstance(x, SVar):
                res = False if (len(g) == 1 and g[0] == x) else None
            elif not g:
                res = True
            elif len(g) == 1 and (self.gt(full, l, x, g[0]) or self.gt(full, l, x, SeqList(g))):
                res = True
            elif len(g) == 1 and self.eqv(x, g[0]):
                res = False
            elif len(g) > 1 and self.gt(full, l, x, SeqList(g)):
                res = True
            else:
                res = None
            group_memo[key] = res
            return res

        unit = [tuple(int(t == j) for j in range(len(types))) for t in range(len(types))]
        if prune:
            host = [[group_status(i, unit[t]) is not None for t in range(len(types))]
                    for i in range(n)]
            # suffix[i][t]: some a_j with j >= i can host type t
            suffix = [[False] * len(types) for _ in range(n + 1)]
            for i in range(n - 1, -1, -1):
                suffix[i] = [suffix[i + 1][t] or host[i][t] for t in range(len(types))]
        else:
            host = [[True] * len(types) for _ in range(n)]
            suffix = None
        memo: Dict[tuple, bool] = {}

        def go(i, rem, strict):
            if suffix is not None and any(c and not suffix[i][t] for t, c in enumerate(rem)):
                return False
            if i == n - 1:
                if sum(rem) > caps[i] and sum(rem) > 1:
                    return False
                st = group_status(i, rem)
                return st is not None and (strict or st)
            key = (i, rem, strict)
            if key in memo:
                return memo[key]
            ranges = [range(c + 1) if host[i][t] else range(1) for t, c in enumerate(rem)]
            res = False
            for take in itertools.product(*ranges):
                size = sum(take)
                if size > caps[i] and size > 1:
                    continue
                st = group_status(i, take)
                if st is None:
                    continue
                if go(i + 1, tuple(c - d for c, d in zip(rem, take)), strict or st):
                    res = True
                    break
            memo[key] = res
            return res

        return go(0, counts0, False)


def is_ground(a: SeqTerm) -> bool:
    if isinstance(a, SVar):
        return False
    if isinstance(a, NApp):
        return all(is_ground(x) for x in a.args)
    return all(is_ground(x) for x in a.elems)


def gppv(k: int, l: int, a: SeqTerm, b: SeqTerm, prec: SeqPrecedence,
         order: Optional[SeqOrder] = None) -> bool:
    order = order or SeqOrder(prec, k)
    return order.gt(False, l, a, b)


def gpopv(k: int, l: int, a: SeqTerm, b: SeqTerm, prec: SeqPrecedence,
          order: Optional[SeqOrder] = None) -> bool:
    order = order or SeqOrder(prec, k)
    return order.gt(True, l, a, b)


# ----------------------------------------------------------------------------
# Predicative interpretation

def norm(t: Term, sm: SafeMapping) -> int:
    if isinstance(t, Var):
        return 1
    return 1 + max([0] + [norm(t.args[j - 1], sm) for j in sm.safe(t.symbol)])


class PredInterp:
    def __init__(self, trs: Trs, safe_mapping: SafeMapping):
        self.trs = trs
        self.sm = safe_mapping
        self._idx = _index(trs)
        self._nf: Dict[Term, bool] = {}
        self._s: Dict[Term, SeqList] = {}

    def is_nf(self, t: Term) -> bool:
        hit = self._nf.get(t)
        if hit is None:
            hit = isinstance(t, Var) or (all(self.is_nf(a) for a in t.args)
                                         and not self._idx.is_redex(t))
            self._nf[t] = hit
        return hit

    def S(self, t: Term) -> SeqList:
        hit = self._s.get(t)
        if hit is not None:
            return hit
        if self.is_nf(t):
            res = NIL
        else:
            f = t.symbol
            head = NApp(f, [self.N(t.args[i - 1]) for i in self.sm.normal(f)])
            res = concat(head, *[self.S(t.args[j - 1]) for j in self.sm.safe(f)])
        self._s[t] = res
        return res

    def N(self, t: Term) -> SeqList:
        return concat(self.S(t), tally(norm(t, self.sm)))


def interp_S(t: Term, pi: PredInterp) -> SeqList:
    return pi.S(t)


def interp_N(t: Term, pi: PredInterp) -> SeqList:
    return pi.N(t)


# ----------------------------------------------------------------------------
# Embedding of rewrite steps

HOLE = "[]"


def plug(context: Term, t: Term) -> Term:
    if isinstance(context, Var):
        return t if context.name == HOLE else context
    return App(context.symbol, [plug(a, t) for a in context.args])


def embedding_parameter(trs: Trs, sm: SafeMapping) -> int:
    sig = trs.signature
    arities = [len(sm.normal(f)) for f in sig.symbols]
    sizes = [2 * size(r.rhs) for r in trs.rules]
    return max(arities + sizes + [1])


@dataclass
class EmbeddingCheck:
    ok: bool
    ell: int
    s_ok: bool
    n_ok: bool
    lhs: Term
    rhs: Term


class EmbeddingChecker:
    """Checks S(C[l sigma]) > S(C[r sigma]) and the same for N, under one order instance."""

    def __init__(self, trs: Trs, cert: Certificate):
        self.trs = trs
        self.cert = cert
        self.pi = PredInterp(trs, cert.safe_mapping)
        self.ell = embedding_parameter(trs, cert.safe_mapping)
        self.prec = SeqPrecedence.from_precedence(cert.precedence, cert.safe_mapping)
        self.order = SeqOrder(self.prec, self.ell)

    def check(self, rule: Rule, sigma: Mapping[str, Term], context: Optional[Term] = None) -> EmbeddingCheck:
        for x, v in sigma.items():
            if not self.pi.is_nf(v):
                raise ValueError(f"substitution for {x} is not a normal form")
        ctx = context if context is not None else Var(HOLE)
        s = plug(ctx, substitute(rule.lhs, sigma))
        t = plug(ctx, substitute(rule.rhs, sigma))
        ell = self.ell
        s_ok = self.order.gt(True, ell, self.pi.S(s), self.pi.S(t))
        n_ok = self.order.gt(True, ell, self.pi.N(s), self.pi.N(t))
        return EmbeddingCheck(s_ok and n_ok, ell, s_ok, n_ok, s, t)


def check_embedding(trs: Trs, cert: Certificate, rule: Rule, sigma: Mapping[str, Term],
                    position: Optional[Term] = None) -> bool:
    return EmbeddingChecker(trs, cert).check(rule, sigma, position).ok


# ----------------------------------------------------------------------------
# Slow on capped universes

@dataclass
class Caps:
    max_depth: int = 3
    max_width: int = 6
    symbol_universe: Tuple[Tuple[Optional[str], int], ...] = ((None, 0),)
    max_candidates: int = 20000


class SlowEstimator:
    """Longest descending chains of the full order with parameters (k, k).

    Successors are generated clause by clause from the definition and kept
    when they fit the caps.  ``approximate`` records whether a candidate was
    discarded for exceeding the caps, in which case values are lower bounds.
    """

    def __init__(self, prec: SeqPrecedence, k: int, caps: Caps):
        self.prec = prec
        self.k = k
        self.caps = caps
        self.order = SeqOrder(prec, k)
        self.universe = [(f, n) for f, n in caps.symbol_universe if n <= k]
        self.allowed = {f for f, _ in caps.symbol_universe}
        self.approximate = False
        self._succ: Dict[tuple, frozenset] = {}
        self._slow: Dict[SeqTerm, int] = {}

    def fits(self, b: SeqTerm) -> bool:
        cp = self.caps
        return (seq_depth(b) <= cp.max_depth and width(b) <= cp.max_width
                and length(b) <= cp.max_width and symbols_of(b) <= self.allowed)

    def _keep(self, out: Set[SeqTerm], b: SeqTerm):
        b = self.order.c(b)
        if self.fits(b):
            out.add(b)
        else:
            self.approximate = True

    def succ(self, full: bool, l: int, a: SeqTerm) -> frozenset:
        if l <= 0 or isinstance(a, SVar):
            return frozenset()
        a = self.order.c(a)
        key = (full, l, a)
        if key in self._succ:
            return self._succ[key]
        self._succ[key] = frozenset()
        out: Set[SeqTerm] = set()
        if isinstance(a, SeqList):
            self._succ_ms(full, l, a, out)
        else:
            self._succ_term(full, l, a, out)
        res = frozenset(out)
        self._succ[key] = res
        return res

    def _with_singletons(self, items, out):
        for c in items:
            self._keep(out, c)
            if isinstance(c, SeqList) and len(c.elems) == 1:
                self._keep(out, c.elems[0])

    def _succ_term(self, full, l, a: NApp, out):
        k = self.k
        # subterm clause
        for x in a.args:
            self._with_singletons([x], out)
            self._with_singletons(self.succ(full, l, x), out)
        aux_below = self.succ(False, l - 1, a)
        aux_lists = sorted((y for y in aux_below if isinstance(y, SeqList)), key=lambda y: y._key)
        aux_terms = sorted((y for y in aux_below if not isinstance(y, SeqList)), key=lambda y: y._key)
        # ia
        for g, m in self.universe:
            if not self.prec.gt(a.symbol, g):
                continue
            if g is None:
                self._keep(out, STAR)
                continue
            for args in self._bounded(itertools.combinations_with_replacement(aux_lists, m)):
                self._keep(out, NApp(g, args))
        # ep
        if full:
            for g, m in self.universe:
                if g is None or not self.prec.eq(a.symbol, g):
                    continue
                for args in self._ep_args(l, list(a.args), m):
                    self._keep(out, NApp(g, args))
        # ialst
        bound = min(width(a) + k, self.caps.max_width)
        full_terms = []
        if full:
            full_below = self.succ(True, l - 1, a)
            full_terms = sorted((y for y in full_below if not isinstance(y, SeqList)),
                                key=lambda y: y._key)
        for m in range(0, bound + 1):
            for elems in self._bounded(itertools.combinations_with_replacement(aux_terms, m)):
                self._keep(out, SeqList(elems))
            if m >= 1:
                for extra in full_terms:
                    for elems in self._bounded(itertools.combinations_with_replacement(aux_terms, m - 1)):
                        self._keep(out, SeqList(elems + (extra,)))

    def _bounded(self, it):
        for n, x in enumerate(it):
            if n >= self.caps.max_candidates:
                self.approximate = True
                return
            yield x

    def _ep_args(self, l, lefts, m):
        """Argument multisets of size m strictly below ``lefts`` in the multiset extension."""
        options = []
        for x in lefts:
            smaller = sorted((y for y in self.succ(True, l, x) if isinstance(y, SeqList)),
                             key=lambda y: y._key)
            options.append(smaller)
        out = set()

        def go(i, left, acc, strict):
            if i == len(lefts):
                if left == 0 and strict:
                    out.add(tuple(sorted(acc, key=lambda y: y._key)))
                return
            if left >= 1:
                go(i + 1, left - 1, acc + [lefts[i]], strict)
            for cnt in range(0, left + 1):
                for pick in self._bounded(itertools.combinations_with_replacement(options[i], cnt)):
                    go(i + 1, left - cnt, acc + list(pick), True)

        go(0, m, [], False)
        return sorted(out, key=lambda t: tuple(y._key for y in t))

    def _succ_ms(self, full, l, a: SeqList, out):
        k = self.k
        bound = min(width(a) + k, self.caps.max_width)
        options = []
        for x in a.elems:
            opts = [((x,), False)]
            for c in self.succ(full, l, x):
                opts.append((tolst(c).elems, True))
            options.append(opts)
        seen = set()
        count = [0]

        def go(i, acc, strict):
            if len(acc) > bound:
                self.approximate = self.approximate or len(acc) <= width(a) + k
                return
            if i == len(options):
                if strict:
                    lst = SeqList(acc)
                    if lst not in seen:
                        seen.add(lst)
                        self._with_singletons([lst], out)
                return
            count[0] += 1
            if count[0] > self.caps.max_candidates * 10:
                self.approximate = True
                return
            for elems, st in options[i]:
                go(i + 1, acc + list(elems), strict or st)

        go(0, [], False)

    def slow(self, a: SeqTerm) -> int:
        a = self.order.c(a)
        if not self.fits(a):
            raise ValueError("caps too small to contain the start term")
        return self._slow_of(a)

    def _slow_of(self, a):
        # iterative longest-path over the successor DAG
        if a in self._slow:
            return self._slow[a]
        stack = [(a, None)]
        while stack:
            x, it = stack[-1]
            if x in self._slow:
                stack.pop()
                continue
            if it is None:
                succs = sorted(self.succ(True, self.k, x), key=lambda y: y._key)
                stack[-1] = (x, succs)
                pending = [y for y in succs if y not in self._slow]
                for y in pending:
                    stack.append((y, None))
                continue
            best = 0
            for y in it:
                if y not in self._slow:
                    break
                best = max(best, 1 + self._slow[y])
            else:
                self._slow[x] = best
                stack.pop()
                continue
            # a successor is still open: push it again
            stack.append((y, None))
        return self._slow[a]


def slow_estimate(a: SeqTerm, k: int, caps: Caps, prec: Optional[SeqPrecedence] = None) -> int:
    prec = prec or SeqPrecedence({})
    return SlowEstimator(prec, k, caps).slow(a)


# ----------------------------------------------------------------------------
# Bounding constants

def bound_constants(k: int, p: int) -> Tuple[int, int]:
    """The constants (c_{k,p}, d_{k,p}) bounding descent lengths."""
    if k < 1 or p < 0:
        raise ValueError("need k >= 1 and p >= 0")
    c, d = k ** k, k + 1
    for _ in range(p):
        c, d = (c * k) ** sum((k * d) ** i for i in range(1, k + 1)), (d * k) ** (k + 1) + 1
    return c, d


def homo(values: Sequence[int], k: int, c: int) -> int:
    values = list(values)
    if len(values) > k:
        raise ValueError("more values than k")
    if any(v >= c or v < 0 for v in values):
        raise ValueError("base must exceed every value")
    srt = sorted(values, reverse=True)
    return sum(v * c ** (k - i) for i, v in enumerate(srt, 1))


def mslow(slows: Sequence[int], k: int) -> int:
    c = 1 + max(slows, default=0)
    return homo(slows, k, c)


# ----------------------------------------------------------------------------
# Random instances of rewrite steps

def random_value(sig, rng, max_depth: int) -> Term:
    cons = [(c, sig.arity(c)) for c in sig.constructors]
    leaves = [c for c, n in cons if n == 0]
    if not leaves:
        raise ValueError("no constant constructor to build values from")
    if max_depth <= 1:
        return App(rng.choice(leaves))
    c, n = rng.choice(cons)
    return App(c, [random_value(sig, rng, max_depth - 1) for _ in range(n)])


def random_context(sig, rng, max_depth: int) -> Term:
    """A context of depth at most ``max_depth`` (the hole alone has depth 0)."""
    d = rng.randint(0, max_depth)
    ctx: Term = Var(HOLE)
    for _ in range(d):
        cands = [f for f in sig.symbols if sig.arity(f) > 0]
        f = rng.choice(cands)
        n = sig.arity(f)
        hole = rng.randrange(n)
        args = [ctx if i == hole else random_value(sig, rng, 3) for i in range(n)]
        ctx = App(f, args)
    return ctx


def sample_embeddings(trs: Trs, cert: Certificate, samples: int, rng,
                      value_depth: int = 4, context_depth: int = 2) -> List[EmbeddingCheck]:
    from .terms import variables

    checker = EmbeddingChecker(trs, cert)
    sig = trs.signature
    out = []
    for _ in range(samples):
        rule = rng.choice(trs.rules)
        sigma = {x: random_value(sig, rng, rng.randint(1, value_depth))
                 for x in sorted(variables(rule.lhs))}
        ctx = random_context(sig, rng, context_depth)
        out.append(checker.check(rule, sigma, ctx))
    return out
