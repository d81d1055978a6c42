"""Multiset extension of a strict order modulo an equivalence.

The comparison searches for a cover: every right element is assigned to a
left element, either as its unique equivalent partner or as one of the
arbitrarily many elements it strictly dominates.  Left elements that are not
used as equivalent partners count as strict covers (possibly of nothing), and
the comparison is strict exactly when such a left element exists.
"""

from __future__ import annotations

import enum
from functools import lru_cache
from typing import Callable, List, Optional, Sequence, Tuple, TypeVar

A = TypeVar("A")

_FREE, _EQ, _GT = 0, 1, 2


class MultisetResult(enum.Enum):
    STRICT = "StrictGreater"
    WEAK = "WeakGreaterOrEqual"
    INCOMPARABLE = "Incomparable"

    @property
    def weak(self) -> bool:
        return self is not MultisetResult.INCOMPARABLE


StrictGreater = MultisetResult.STRICT
WeakGreaterOrEqual = MultisetResult.WEAK
Incomparable = MultisetResult.INCOMPARABLE


class Cover:
    """Witness of a multiset comparison.

    ``assign[j] = (i, eq)`` says right element j is covered by left element
    i, equivalently when ``eq`` holds.
    """

    def __init__(self, assign: Sequence[Tuple[int, bool]], n_left: int):
        self.assign = tuple(assign)
        self.n_left = n_left

    @property
    def equal_lefts(self) -> frozenset:
        return frozenset(i for i, eq in self.assign if eq)

    @property
    def strict(self) -> bool:
        return len(self.equal_lefts) < self.n_left

    def __repr__(self):
        return f"Cover({list(self.assign)}, strict={self.strict})"


def find_cover(lefts: Sequence[A], rights: Sequence[A],
               strict: Callable[[A, A], bool], equiv: Callable[[A, A], bool],
               want_strict: bool) -> Optional[Cover]:
    n, m = len(lefts), len(rights)
    gt_cache, eq_cache = {}, {}

    def gt(i, j):
        if (i, j) not in gt_cache:
            gt_cache[i, j] = bool(strict(lefts[i], rights[j]))
        return gt_cache[i, j]

    def eq(i, j):
        if (i, j) not in eq_cache:
            eq_cache[i, j] = bool(equiv(lefts[i], rights[j]))
        return eq_cache[i, j]

    # rights with no possible partner at all fail immediately
    for j in range(m):
        if not any(gt(i, j) or eq(i, j) for i in range(n)):
            return None

    @lru_cache(maxsize=None)
    def search(j: int, modes: Tuple[int, ...]):
        if j == m:
            if want_strict and all(md == _EQ for md in modes):
                return None
            return ()
        seen = set()
        for i in range(n):
            md = modes[i]
            # identical lefts in the same mode are interchangeable
            if md != _EQ and gt(i, j):
                nxt = modes[:i] + (_GT,) + modes[i + 1:]
                sig = ("gt", md, _hashable(lefts[i]))
                if sig not in seen:
                    seen.add(sig)
                    rest = search(j + 1, nxt)
                    if rest is not None:
                        return ((i, False),) + rest
            if md == _FREE and eq(i, j):
                nxt = modes[:i] + (_EQ,) + modes[i + 1:]
                sig = ("eq", _hashable(lefts[i]))
                if sig not in seen:
                    seen.add(sig)
                    rest = search(j + 1, nxt)
                    if rest is not None:
                        return ((i, True),) + rest
        return None

    found = search(0, (_FREE,) * n)
    return None if found is None else Cover(found, n)


def _hashable(x):
    try:
        hash(x)
        return ("h", x)
    except TypeError:
        return ("id", id(x))


def multiset_compare(lefts: Sequence[A], rights: Sequence[A],
                     strict: Callable[[A, A], bool],
                     equiv: Callable[[A, A], bool]) -> MultisetResult:
    lefts, rights = list(lefts), list(rights)
    if find_cover(lefts, rights, strict, equiv, want_strict=True) is not None:
        return StrictGreater
    if find_cover(lefts, rights, strict, equiv, want_strict=False) is not None:
        return WeakGreaterOrEqual
    return Incomparable
