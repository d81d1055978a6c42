"""Innermost rewriting, derivation heights and runtime-complexity sampling."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np

from .terms import App, Rule, Term, Trs, Var, depth, match, positions, replace_at, substitute


class _RuleIndex:
    def __init__(self, trs: Trs):
        self.by_root: Dict[str, List[Rule]] = {}
        for r in trs.rules:
            self.by_root.setdefault(r.lhs.symbol, []).append(r)

    def root_reducts(self, t: Term) -> List[Term]:
        if isinstance(t, Var):
            return []
        out = []
        for r in self.by_root.get(t.symbol, ()):
            sigma = match(r.lhs, t)
            if sigma is not None:
                out.append(substitute(r.rhs, sigma))
        return out

    def is_redex(self, t: Term) -> bool:
        if isinstance(t, Var):
            return False
        return any(match(r.lhs, t) is not None for r in self.by_root.get(t.symbol, ()))


_INDEX_CACHE: Dict[int, Tuple[Trs, _RuleIndex]] = {}


def _index(trs: Trs) -> _RuleIndex:
    hit = _INDEX_CACHE.get(id(trs))
    if hit is not None and hit[0] is trs:
        return hit[1]
    idx = _RuleIndex(trs)
    _INDEX_CACHE[id(trs)] = (trs, idx)
    return idx


def is_normal_form(t: Term, trs: Trs) -> bool:
    idx = _index(trs)
    stack = [t]
    while stack:
        s = stack.pop()
        if idx.is_redex(s):
            return False
        if isinstance(s, App):
            stack.extend(s.args)
    return True


def innermost_redexes(t: Term, trs: Trs) -> List[Tuple[int, ...]]:
    """Positions of redexes whose arguments are all normal forms."""
    idx = _index(trs)
    found = []

    def walk(s, pos):
        # returns True iff s is a normal form
        if isinstance(s, Var):
            return True
        nf = True
        for i, a in enumerate(s.args, 1):
            nf = walk(a, pos + (i,)) and nf
        if nf and idx.is_redex(s):
            found.append(pos)
            return False
        return nf

    walk(t, ())
    return found


def innermost_successors(t: Term, trs: Trs) -> Set[Term]:
    idx = _index(trs)
    out = set()
    for pos in innermost_redexes(t, trs):
        sub = dict(positions(t))[pos]
        for r in idx.root_reducts(sub):
            out.add(replace_at(t, pos, r))
    return out


def innermost_step(t: Term, trs: Trs) -> Optional[Term]:
    """One leftmost-innermost step, or None at a normal form."""
    redexes = innermost_redexes(t, trs)
    if not redexes:
        return None
    pos = min(redexes)
    sub = dict(positions(t))[pos]
    return replace_at(t, pos, _index(trs).root_reducts(sub)[0])


def normalize(t: Term, trs: Trs, max_steps: int = 100000) -> Tuple[Term, int]:
    steps = 0
    while steps < max_steps:
        u = innermost_step(t, trs)
        if u is None:
            return t, steps
        t, steps = u, steps + 1
    return t, steps


# ----------------------------------------------------------------------------
# Derivation height

@dataclass
class DerivationStats:
    start: Term
    height: int
    capped: bool
    explored: int
    normal_forms: Dict[Term, int] = field(default_factory=dict, repr=False)


class _Budget(Exception):
    pass


class _Cycle(Exception):
    pass


def _profile_frames(t: Term, idx: _RuleIndex, tick):
    """Coroutine computing the profile of ``t``.

    A profile maps every innermost normal form of ``t`` to the length of the
    longest innermost derivation reaching it.  Arguments rewrite
    independently and a root step needs normal arguments, so the profile of
    ``f(t1..tn)`` is assembled from the argument profiles and the profiles of
    the root reducts.  Subterm profiles are requested by yielding the term.
    """
    if isinstance(t, Var):
        return {t: 0}
    arg_profiles = []
    for a in t.args:
        arg_profiles.append((yield a))
    result: Dict[Term, int] = {}
    for combo in itertools.product(*(p.items() for p in arg_profiles)):
        tick()
        u = App(t.symbol, [nf for nf, _ in combo])
        cost = sum(d for _, d in combo)
        reducts = idx.root_reducts(u)
        if not reducts:
            if result.get(u, -1) < cost:
                result[u] = cost
            continue
        for r in reducts:
            pr = yield r
            for nf, d in pr.items():
                if result.get(nf, -1) < cost + 1 + d:
                    result[nf] = cost + 1 + d
    return result


def _profile(t: Term, idx: _RuleIndex, cap: int) -> Tuple[Dict[Term, int], int]:
    memo: Dict[Term, Dict[Term, int]] = {}
    active: Set[Term] = set()
    counter = [0]

    def tick():
        counter[0] += 1
        if counter[0] > cap:
            raise _Budget()

    stack = [(t, _profile_frames(t, idx, tick))]
    active.add(t)
    reply = None
    while stack:
        term, gen = stack[-1]
        try:
            want = gen.send(reply)
        except StopIteration as done:
            stack.pop()
            active.discard(term)
            memo[term] = done.value
            reply = done.value
            continue
        if want in memo:
            reply = memo[want]
        elif want in active:
            raise _Cycle()
        else:
            tick()
            active.add(want)
            stack.append((want, _profile_frames(want, idx, tick)))
            reply = None
    return memo[t], counter[0]


def derivation_height(t: Term, trs: Trs, cap: int = 200000) -> DerivationStats:
    """Longest innermost derivation from ``t``.

    ``cap`` bounds the number of explored states.  When it is exhausted (or a
    cycle is found) the height of one leftmost-innermost derivation, itself
    cut at ``cap`` steps, is returned as a lower bound with ``capped`` set.
    """
    idx = _index(trs)
    try:
        prof, explored = _profile(t, idx, cap)
    except (_Budget, _Cycle):
        _, steps = normalize(t, trs, max_steps=cap)
        return DerivationStats(t, steps, True, cap)
    return DerivationStats(t, max(prof.values()), False, explored, prof)


def brute_force_height(t: Term, trs: Trs) -> int:
    """Reference definition: one plus the maximum over innermost successors."""
    memo: Dict[Term, int] = {}

    def go(s):
        if s not in memo:
            memo[s] = max((1 + go(u) for u in innermost_successors(s, trs)), default=0)
        return memo[s]

    return go(t)


# ----------------------------------------------------------------------------
# Runtime complexity sampling

@dataclass
class RcFit:
    slope: float
    sizes: List[int]
    heights: List[int]
    capped: bool
    superpolynomial: bool
    exp_rate: float = 0.0
    abscissa: str = "depth"
    xs: List[float] = field(default_factory=list)
    slope_n: float = 0.0

    def __float__(self):
        return self.slope


def _loglog(xs, hs):
    slope, icpt = np.polyfit(np.log(xs), hs, 1)
    res = float(np.sum((np.polyval([slope, icpt], np.log(xs)) - hs) ** 2))
    return float(slope), res


def start_depth(t: Term) -> int:
    """Largest depth among the arguments of a start term."""
    if isinstance(t, Var) or not t.args:
        return 1
    return max(depth(a) for a in t.args)


def rc_fit(trs: Trs, generator: Callable[[int], Term], n_max: int,
           cap: int = 200000, n_min: int = 1, abscissa: str = "depth") -> RcFit:
    """Fit heights of ``generator(n)`` on a log-log scale.

    The abscissa is the largest argument depth of the start term (the
    quantity polynomial bounds are stated in) or, with ``abscissa="n"``, the
    family parameter itself; ``slope_n`` always holds the latter.  Slopes are
    least-squares exponents over the upper half of the sampled range.  The
    family is flagged superpolynomial when log(height) is fitted better by a
    line in n (with positive rate) than by a line in log(n).
    """
    if abscissa not in ("depth", "n"):
        raise ValueError("abscissa is 'depth' or 'n'")
    sizes, heights, depths, capped = [], [], [], False
    for n in range(n_min, n_max + 1):
        t = generator(n)
        st = derivation_height(t, trs, cap)
        sizes.append(n)
        depths.append(start_depth(t))
        # sampled rc is a running maximum, monotone by construction
        heights.append(max([st.height] + heights[-1:]))
        capped = capped or st.capped
    xs_all = depths if abscissa == "depth" else sizes
    keep = [i for i, (n, h) in enumerate(zip(sizes, heights)) if n >= (n_min + n_max) / 2 and h > 0]
    if len(keep) < 2 or len({heights[i] for i in keep}) == 1:
        return RcFit(0.0, sizes, heights, capped, False, 0.0, abscissa, xs_all)
    ns = np.array([sizes[i] for i in keep], dtype=float)
    xs = np.array([xs_all[i] for i in keep], dtype=float)
    hs = np.log(np.array([heights[i] for i in keep], dtype=float))
    slope, _ = _loglog(xs, hs)
    slope_n, res_pow = _loglog(ns, hs)
    rate, icpt2 = np.polyfit(ns, hs, 1)
    res_exp = float(np.sum((np.polyval([rate, icpt2], ns) - hs) ** 2))
    superpoly = bool(rate > 0 and res_exp < res_pow)
    return RcFit(slope, sizes, heights, capped, superpoly, float(rate), abscissa, xs_all, slope_n)
