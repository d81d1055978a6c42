"""Multiset comparison against the textbook X/Y characterisation."""

import itertools
from collections import Counter

from popstar.multiset import (Incomparable, StrictGreater, WeakGreaterOrEqual, find_cover,
                              multiset_compare)


def _submultisets(m):
    c = Counter(m)
    keys = sorted(c)
    for counts in itertools.product(*(range(c[k] + 1) for k in keys)):
        yield Counter({k: n for k, n in zip(keys, counts) if n})


def oracle(M, N, gt):
    """M > N iff N = (M - X) + Y with X non-empty and every y in Y below some x in X."""
    M, N = Counter(M), Counter(N)
    strict = weak = False
    for X in _submultisets(M):
        rest = M - X
        if any(rest[k] > N[k] for k in rest):
            continue
        Y = N - rest
        if all(any(gt(a, b) for a in X) for b in Y):
            weak = True
            if sum(X.values()):
                strict = True
    if strict:
        return StrictGreater
    return WeakGreaterOrEqual if weak else Incomparable


def _all_multisets(carrier, max_size):
    for n in range(max_size + 1):
        yield from itertools.combinations_with_replacement(carrier, n)


def _check_against_oracle(carrier, gt):
    ms = list(_all_multisets(carrier, 4))
    for M in ms:
        for N in ms:
            want = oracle(M, N, gt)
            got = multiset_compare(M, N, gt, lambda a, b: a == b)
            assert got is want, (M, N, got, want)


def test_total_order_carrier():
    _check_against_oracle([0, 1, 2, 3], lambda a, b: a > b)


def test_partial_order_carrier():
    # strict divisibility on {1, 2, 3, 6}: 2 and 3 are incomparable
    _check_against_oracle([1, 2, 3, 6], lambda a, b: a != b and a % b == 0)


def test_examples():
    gt, eq = (lambda a, b: a > b), (lambda a, b: a == b)
    assert multiset_compare([2, 2], [2, 1, 1, 1], gt, eq) is StrictGreater
    assert multiset_compare([1], [], gt, eq) is StrictGreater
    assert multiset_compare([1, 2], [2, 1], gt, eq) is WeakGreaterOrEqual
    assert multiset_compare([], [1], gt, eq) is Incomparable


def test_cover_witness_is_consistent():
    gt, eq = (lambda a, b: a > b), (lambda a, b: a == b)
    L, R = [3, 2], [2, 1, 1]
    c = find_cover(L, R, gt, eq, want_strict=True)
    assert c is not None and c.strict
    used_eq = [i for i, e in c.assign if e]
    assert len(used_eq) == len(set(used_eq))
    for j, (i, e) in enumerate(c.assign):
        assert eq(L[i], R[j]) if e else gt(L[i], R[j])


def test_strict_extension_is_irreflexive_and_transitive():
    gt, eq = (lambda a, b: a > b), (lambda a, b: a == b)
    ms = list(_all_multisets([0, 1, 2], 3))
    above = {(M, N) for M in ms for N in ms if multiset_compare(M, N, gt, eq) is StrictGreater}
    assert not any((M, M) in above for M in ms)
    for (a, b) in above:
        for c in ms:
            if (b, c) in above:
                assert (a, c) in above
