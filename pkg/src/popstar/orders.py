"""Direct decision procedures for the predicative path orders.

Given a precedence and a safe mapping, these functions decide safe
equivalence, the auxiliary order ``gsq``, the polynomial path order ``gpop``,
its parameter-substitution variant ``gpopps``, and the classical multiset
path order ``mpo``.  They serve as the independent checker for certificates
found by the SAT encoding, so they share no code with it.

Positive answers carry a witness tree (``Trace``) recording the first clause
found for each comparison; ``replay`` re-checks such a tree clause by clause.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .multiset import find_cover
from .terms import (App, Certificate, OrderKind, Precedence, Rule, SafeMapping, Term,
                    Trs, Var, is_constructor_trs, subterms)


class StructuralError(ValueError):
    """The rewrite system is outside the class the orders apply to."""


class CertificateError(ValueError):
    pass


class Result(enum.Enum):
    GREATER = "Greater"
    EQUIVALENT = "EquivalentSafe"
    INCOMPARABLE = "Incomparable"


Greater = Result.GREATER
EquivalentSafe = Result.EQUIVALENT
Incomparable = Result.INCOMPARABLE


@dataclass
class Trace:
    """One applied clause.

    ``rel`` is the relation proved (``gsq``, ``gpop``, ``gpopps``, ``mpo`` or
    ``eqis``), ``clause`` is ``st``, ``ia``, ``ep`` or ``eq``; ``info`` holds
    the clause-specific choice (argument index, cover), ``children`` the
    sub-proofs in a clause-specific order.
    """
    rel: str
    clause: str
    s: Term
    t: Term
    info: tuple = ()
    children: Tuple["Trace", ...] = ()

    def render(self, indent: int = 0) -> str:
        pad = "  " * indent
        head = f"{pad}{self.s} {self.rel}[{self.clause}] {self.t}"
        if self.info:
            head += f"  {self.info}"
        return "\n".join([head] + [c.render(indent + 1) for c in self.children])

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)


@dataclass
class Comparison:
    result: Result
    trace: Optional[Trace] = None

    @property
    def greater(self) -> bool:
        return self.result is Greater

    def __bool__(self):
        return self.greater


class OrderContext:
    def __init__(self, trs: Trs, certificate: Certificate):
        self.trs = trs
        self.certificate = certificate
        self.sig = trs.signature
        self.prec: Precedence = certificate.precedence
        self.sm: SafeMapping = certificate.safe_mapping
        if not self.prec.is_admissible():
            raise CertificateError("precedence is not admissible")
        for f in self.sig.defined:
            if self.prec.rank(f) is None:
                raise CertificateError(f"no rank for defined symbol {f}")
            if certificate.order_kind is not OrderKind.MPO and f not in self.sm:
                raise CertificateError(f"no safe-mapping entry for {f}")
        self._memo: Dict[tuple, Optional[Trace]] = {}
        self._below: Dict[tuple, bool] = {}

    # -- helpers -------------------------------------------------------------

    def is_defined(self, f):
        return self.sig.is_defined(f)

    def safe(self, f, i):
        return self.sm.is_safe(f, i)

    def below(self, t: Term, f: str) -> bool:
        """t is built from variables and symbols strictly below f."""
        key = (t, f)
        if key not in self._below:
            self._below[key] = all(isinstance(u, Var) or self.prec.gt(f, u.symbol)
                                   for u in subterms(t))
        return self._below[key]

    def _cached(self, key, compute):
        if key in self._memo:
            return self._memo[key]
        self._memo[key] = None  # comparisons are well-founded; guards reentry
        res = compute()
        self._memo[key] = res
        return res

    # -- safe equivalence ----------------------------------------------------

    def eqis_trace(self, s: Term, t: Term, erase_safe: bool = False) -> Optional[Trace]:
        rel = "eqmpo" if erase_safe else "eqis"
        return self._cached((rel, s, t), lambda: self._eqis(s, t, erase_safe, rel))

    def _eqis(self, s, t, erase_safe, rel):
        if s == t:
            return Trace(rel, "eq", s, t)
        if isinstance(s, Var) or isinstance(t, Var):
            return None
        if len(s.args) != len(t.args) or not self.prec.eq(s.symbol, t.symbol):
            return None
        n = len(s.args)
        used = [False] * n
        pairing: List[Tuple[int, int, Trace]] = []

        def assign(i):
            if i == n:
                return True
            for j in range(n):
                if used[j]:
                    continue
                if not erase_safe and self.safe(s.symbol, i + 1) != self.safe(t.symbol, j + 1):
                    continue
                sub = self.eqis_trace(s.args[i], t.args[j], erase_safe)
                if sub is None:
                    continue
                used[j] = True
                pairing.append((i, j, sub))
                if assign(i + 1):
                    return True
                pairing.pop()
                used[j] = False
            return False

        if not assign(0):
            return None
        perm = tuple(j + 1 for _, j, _ in pairing)
        return Trace(rel, "eq", s, t, ("perm", perm), tuple(tr for _, _, tr in pairing))

    # -- auxiliary order -----------------------------------------------------

    def gsq_trace(self, s: Term, t: Term) -> Optional[Trace]:
        return self._cached(("gsq", s, t), lambda: self._gsq(s, t))

    def _gsq(self, s, t):
        if isinstance(s, Var):
            return None
        f = s.symbol
        fdef = self.is_defined(f)
        for i, si in enumerate(s.args, 1):
            if fdef and self.safe(f, i):
                continue
            sub = self.eqis_trace(si, t) or self.gsq_trace(si, t)
            if sub is not None:
                return Trace("gsq", "st", s, t, ("arg", i), (sub,))
        if fdef and isinstance(t, App) and self.prec.gt(f, t.symbol):
            subs = []
            for tj in t.args:
                sub = self.gsq_trace(s, tj)
                if sub is None:
                    return None
                subs.append(sub)
            return Trace("gsq", "ia", s, t, (), tuple(subs))
        return None

    # -- POP* and POP*ps -----------------------------------------------------

    def pop_trace(self, s: Term, t: Term, ps: bool = False) -> Optional[Trace]:
        rel = "gpopps" if ps else "gpop"
        return self._cached((rel, s, t), lambda: self._pop(s, t, ps, rel))

    def _pop_ge(self, s, t, ps):
        return self.eqis_trace(s, t) or self.pop_trace(s, t, ps)

    def _pop(self, s, t, ps, rel):
        if isinstance(s, Var):
            return None
        f = s.symbol
        for i, si in enumerate(s.args, 1):
            sub = self._pop_ge(si, t, ps)
            if sub is not None:
                return Trace(rel, "st", s, t, ("arg", i), (sub,))
        if not self.is_defined(f) or isinstance(t, Var):
            return None
        g = t.symbol
        if self.prec.gt(f, g):
            tr = self._pop_ia(s, t, ps, rel)
            if tr is not None:
                return tr
        if self.prec.eq(f, g) and self.is_defined(g):
            return self._pop_ep(s, t, ps, rel)
        return None

    def _pop_ia(self, s, t, ps, rel):
        f, g = s.symbol, t.symbol
        outside = [j for j in range(1, len(t.args) + 1)
                   if self.safe(g, j) and not self.below(t.args[j - 1], f)]
        if len(outside) > 1:
            return None
        subs = []
        for j, tj in enumerate(t.args, 1):
            sub = self.pop_trace(s, tj, ps) if self.safe(g, j) else self.gsq_trace(s, tj)
            if sub is None:
                return None
            subs.append(sub)
        return Trace(rel, "ia", s, t, ("outside", tuple(outside)), tuple(subs))

    def _cover(self, lefts, rights, ps, want_strict):
        def gt(a, b):
            return self.pop_trace(a, b, ps) is not None

        def eq(a, b):
            return self.eqis_trace(a, b) is not None

        return find_cover(lefts, rights, gt, eq, want_strict)

    def _cover_children(self, lefts, rights, cover, ps):
        out = []
        for j, (i, is_eq) in enumerate(cover.assign):
            a, b = lefts[i], rights[j]
            out.append(self.eqis_trace(a, b) if is_eq else self.pop_trace(a, b, ps))
        return out

    def _pop_ep(self, s, t, ps, rel):
        f, g = s.symbol, t.symbol
        sn = [s.args[i - 1] for i in self.sm.normal(f)]
        ss = [s.args[i - 1] for i in self.sm.safe(f)]
        tn = [t.args[j - 1] for j in self.sm.normal(g)]
        ts = [t.args[j - 1] for j in self.sm.safe(g)]
        cn = self._cover(sn, tn, ps, want_strict=True)
        if cn is None:
            return None
        children = self._cover_children(sn, tn, cn, ps)
        if ps:
            for tj in ts:
                if not self.below(tj, f):
                    return None
                sub = self.pop_trace(s, tj, True)
                if sub is None:
                    return None
                children.append(sub)
            return Trace(rel, "ep", s, t, ("normal", cn.assign), tuple(children))
        cs = self._cover(ss, ts, ps, want_strict=False)
        if cs is None:
            return None
        children += self._cover_children(ss, ts, cs, ps)
        return Trace(rel, "ep", s, t, ("normal", cn.assign, "safe", cs.assign), tuple(children))

    # -- multiset path order -------------------------------------------------

    def mpo_trace(self, s: Term, t: Term) -> Optional[Trace]:
        return self._cached(("mpo", s, t), lambda: self._mpo(s, t))

    def _mpo(self, s, t):
        if isinstance(s, Var):
            return None
        for i, si in enumerate(s.args, 1):
            sub = self.eqis_trace(si, t, erase_safe=True) or self.mpo_trace(si, t)
            if sub is not None:
                return Trace("mpo", "st", s, t, ("arg", i), (sub,))
        if isinstance(t, Var):
            return None
        if self.prec.gt(s.symbol, t.symbol):
            subs = []
            for tj in t.args:
                sub = self.mpo_trace(s, tj)
                if sub is None:
                    return None
                subs.append(sub)
            return Trace("mpo", "ia", s, t, (), tuple(subs))
        if self.prec.eq(s.symbol, t.symbol):
            cover = find_cover(list(s.args), list(t.args),
                               lambda a, b: self.mpo_trace(a, b) is not None,
                               lambda a, b: self.eqis_trace(a, b, True) is not None, True)
            if cover is None:
                return None
            subs = [self.eqis_trace(s.args[i], t.args[j], True) if e
                    else self.mpo_trace(s.args[i], t.args[j])
                    for j, (i, e) in enumerate(cover.assign)]
            return Trace("mpo", "ep", s, t, ("all", cover.assign), tuple(subs))
        return None


# ----------------------------------------------------------------------------
# Public entry points

def _ctx_for(prec: Precedence, sm: Optional[SafeMapping] = None, trs: Optional[Trs] = None,
             kind=OrderKind.MPO):
    sig = prec.signature
    if trs is None:
        trs = Trs(sig, ())
    if sm is None:
        sm = SafeMapping(sig, {})
    return OrderContext(trs, Certificate(prec, sm, kind))


def eqis(s: Term, t: Term, ctx: OrderContext) -> bool:
    return ctx.eqis_trace(s, t) is not None


def gsq(s: Term, t: Term, ctx: OrderContext) -> bool:
    return ctx.gsq_trace(s, t) is not None


def _compare(s, t, ctx, ps):
    tr = ctx.pop_trace(s, t, ps)
    if tr is not None:
        return Comparison(Greater, tr)
    eq = ctx.eqis_trace(s, t)
    if eq is not None:
        return Comparison(EquivalentSafe, eq)
    return Comparison(Incomparable)


def gpop(s: Term, t: Term, ctx: OrderContext) -> Comparison:
    return _compare(s, t, ctx, False)


def gpopps(s: Term, t: Term, ctx: OrderContext) -> Comparison:
    return _compare(s, t, ctx, True)


def mpo(s: Term, t: Term, prec: Precedence) -> bool:
    return _ctx_for(prec).mpo_trace(s, t) is not None


def mpo_comparison(s: Term, t: Term, ctx: OrderContext) -> Comparison:
    tr = ctx.mpo_trace(s, t)
    if tr is not None:
        return Comparison(Greater, tr)
    eq = ctx.eqis_trace(s, t, erase_safe=True)
    return Comparison(EquivalentSafe, eq) if eq is not None else Comparison(Incomparable)


# ----------------------------------------------------------------------------
# Replay

def replay(tr: Trace, ctx: OrderContext) -> bool:
    """Re-check a witness tree clause by clause, without search."""
    s, t, rel = tr.s, tr.t, tr.rel
    prec, sm = ctx.prec, ctx.sm
    kids = tr.children
    if tr.clause == "eq":
        if s == t and not kids:
            return True
        if not (isinstance(s, App) and isinstance(t, App)):
            return False
        if not prec.eq(s.symbol, t.symbol) or len(s.args) != len(t.args):
            return False
        perm = tr.info[1]
        if sorted(perm) != list(range(1, len(s.args) + 1)) or len(kids) != len(perm):
            return False
        for i, (j, k) in enumerate(zip(perm, kids), 1):
            if rel == "eqis" and sm.is_safe(s.symbol, i) != sm.is_safe(t.symbol, j):
                return False
            if (k.s, k.t) != (s.args[i - 1], t.args[j - 1]) or k.rel != rel or not replay(k, ctx):
                return False
        return True
    if isinstance(s, Var):
        return False
    f = s.symbol
    if tr.clause == "st":
        i = tr.info[1]
        (k,) = kids
        if rel == "gsq" and ctx.is_defined(f) and sm.is_safe(f, i):
            return False
        ok_rel = {"gsq": ("gsq", "eqis"), "gpop": ("gpop", "eqis"),
                  "gpopps": ("gpopps", "eqis"), "mpo": ("mpo", "eqmpo")}[rel]
        return k.rel in ok_rel and (k.s, k.t) == (s.args[i - 1], t) and replay(k, ctx)
    if isinstance(t, Var):
        return False
    g = t.symbol
    if tr.clause == "ia":
        if rel != "mpo" and not ctx.is_defined(f):
            return False
        if not prec.gt(f, g) or len(kids) != len(t.args):
            return False
        if rel in ("gpop", "gpopps"):
            outside = [j for j in range(1, len(t.args) + 1)
                       if sm.is_safe(g, j) and not ctx.below(t.args[j - 1], f)]
            if len(outside) > 1:
                return False
        for j, k in enumerate(kids, 1):
            if rel in ("gpop", "gpopps"):
                want = rel if sm.is_safe(g, j) else "gsq"
            else:
                want = rel
            if k.rel != want or (k.s, k.t) != (s, t.args[j - 1]) or not replay(k, ctx):
                return False
        return True
    if tr.clause == "ep":
        if not prec.eq(f, g):
            return False
        strict_rel = "gpop" if rel == "gpop" else rel
        eq_rel = "eqmpo" if rel == "mpo" else "eqis"
        if rel == "mpo":
            groups = [(list(range(1, len(s.args) + 1)), list(range(1, len(t.args) + 1)),
                       tr.info[1], True)]
        else:
            if not ctx.is_defined(f):
                return False
            groups = [(list(sm.normal(f)), list(sm.normal(g)), tr.info[1], True)]
            if rel == "gpop":
                groups.append((list(sm.safe(f)), list(sm.safe(g)), tr.info[3], False))
        pos = 0
        for lpos, rpos, assign, need_strict in groups:
            if len(assign) != len(rpos):
                return False
            eq_used = [i for i, e in assign if e]
            if len(set(eq_used)) != len(eq_used):
                return False
            if need_strict and len(eq_used) == len(lpos):
                return False
            for j, (i, e) in enumerate(assign):
                k = kids[pos]
                pos += 1
                want = eq_rel if e else strict_rel
                if k.rel != want or (k.s, k.t) != (s.args[lpos[i] - 1], t.args[rpos[j] - 1]):
                    return False
                if not replay(k, ctx):
                    return False
        if rel == "gpopps":
            for j in sm.safe(g):
                k = kids[pos]
                pos += 1
                if not ctx.below(t.args[j - 1], f):
                    return False
                if k.rel != "gpopps" or (k.s, k.t) != (s, t.args[j - 1]) or not replay(k, ctx):
                    return False
        return pos == len(kids)
    return False


def replay_comparison(c: Comparison, s: Term, t: Term, ctx: OrderContext, ps: bool = False) -> Result:
    """Verdict reproduced from a comparison's trace.

    Positive traces are re-checked clause by clause; a negative verdict has no
    witness, so it is reproduced by deciding again on a fresh context.
    """
    if c.trace is not None and replay(c.trace, ctx):
        return Greater if c.trace.rel != "eqis" else EquivalentSafe
    fresh = OrderContext(ctx.trs, ctx.certificate)
    return _compare(s, t, fresh, ps).result


# ----------------------------------------------------------------------------
# Certificate verification

@dataclass
class RuleCheck:
    rule: Rule
    comparison: Comparison

    @property
    def ok(self) -> bool:
        return self.comparison.greater


@dataclass
class VerificationReport:
    certificate: Certificate
    checks: List[RuleCheck] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def failures(self) -> List[RuleCheck]:
        return [c for c in self.checks if not c.ok]

    def __bool__(self):
        return self.ok


def verify_certificate(trs: Trs, cert: Certificate) -> VerificationReport:
    if cert.order_kind is not OrderKind.MPO and not is_constructor_trs(trs):
        raise StructuralError("not a constructor TRS")
    ctx = OrderContext(trs, cert)
    report = VerificationReport(cert)
    for r in trs.rules:
        if cert.order_kind is OrderKind.MPO:
            c = mpo_comparison(r.lhs, r.rhs, ctx)
        elif cert.order_kind is OrderKind.POPPS:
            c = gpopps(r.lhs, r.rhs, ctx)
        else:
            c = gpop(r.lhs, r.rhs, ctx)
        report.checks.append(RuleCheck(r, c))
    return report
