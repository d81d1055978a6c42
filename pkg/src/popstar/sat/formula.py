"""Propositional formulas with truth constants.

Nodes are hash-consed tuples wrapped in ``Formula``; the smart constructors
``conj``, ``disj``, ``neg``, ``implies`` and ``iff`` simplify on the fly
(constant absorption, flattening, duplicate removal, double negation).
Atoms are identified by hashable keys such as ``("safe", "f", 1)``.
"""

from __future__ import annotations

import itertools
from typing import Dict, Hashable, Iterable, Iterator, List, Mapping, Optional


class Formula:
    __slots__ = ("op", "args", "key", "_hash")

    def __init__(self, op: str, args: tuple = (), key: Hashable = None):
        self.op = op
        self.args = args
        self.key = key
        self._hash = hash((op, args, key))

    def __eq__(self, other):
        if self is other:
            return True
        return (isinstance(other, Formula) and self._hash == other._hash
                and self.op == other.op and self.key == other.key and self.args == other.args)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        if self.op == "atom":
            return f"Atom{self.key!r}"
        if self.op in ("true", "false"):
            return self.op.upper()
        return f"{self.op.capitalize()}({', '.join(map(repr, self.args))})"

    @property
    def is_const(self):
        return self.op in ("true", "false")

    # operator sugar
    def __and__(self, other):
        return conj(self, other)

    def __or__(self, other):
        return disj(self, other)

    def __invert__(self):
        return neg(self)


TRUE = Formula("true")
FALSE = Formula("false")


def const(b: bool) -> Formula:
    return TRUE if b else FALSE


def atom(*key) -> Formula:
    return Formula("atom", (), key if len(key) != 1 else key[0])


def neg(x: Formula) -> Formula:
    if x is TRUE or x == TRUE:
        return FALSE
    if x is FALSE or x == FALSE:
        return TRUE
    if x.op == "not":
        return x.args[0]
    return Formula("not", (x,))


def _nary(op, unit, zero, xs):
    out = []
    seen = set()
    stack = list(reversed(xs))
    while stack:
        x = stack.pop()
        if x == zero:
            return zero
        if x == unit:
            continue
        if x.op == op:
            stack.extend(reversed(x.args))
            continue
        if x not in seen:
            seen.add(x)
            out.append(x)
    if not out:
        return unit
    if len(out) == 1:
        return out[0]
    return Formula(op, tuple(out))


def conj(*xs) -> Formula:
    if len(xs) == 1 and not isinstance(xs[0], Formula):
        xs = tuple(xs[0])
    return _nary("and", TRUE, FALSE, xs)


def disj(*xs) -> Formula:
    if len(xs) == 1 and not isinstance(xs[0], Formula):
        xs = tuple(xs[0])
    return _nary("or", FALSE, TRUE, xs)


def implies(a: Formula, b: Formula) -> Formula:
    return disj(neg(a), b)


def iff(a: Formula, b: Formula) -> Formula:
    if a == b:
        return TRUE
    if a.is_const:
        return b if a == TRUE else neg(b)
    if b.is_const:
        return a if b == TRUE else neg(a)
    return Formula("iff", (a, b))


# ----------------------------------------------------------------------------
# Traversal and evaluation

def nodes(f: Formula) -> Iterator[Formula]:
    """Every distinct node, children before parents."""
    seen = set()
    stack = [(f, False)]
    while stack:
        x, done = stack.pop()
        if done:
            yield x
            continue
        if x in seen:
            continue
        seen.add(x)
        stack.append((x, True))
        for a in x.args:
            if a not in seen:
                stack.append((a, False))


def atoms(f: Formula) -> List[Hashable]:
    return [x.key for x in nodes(f) if x.op == "atom"]


def size(f: Formula) -> int:
    return sum(1 for _ in nodes(f))


def evaluate(f: Formula, assignment: Mapping[Hashable, bool]) -> bool:
    val: Dict[Formula, bool] = {}
    for x in nodes(f):
        op = x.op
        if op == "true":
            v = True
        elif op == "false":
            v = False
        elif op == "atom":
            v = bool(assignment[x.key])
        elif op == "not":
            v = not val[x.args[0]]
        elif op == "and":
            v = all(val[a] for a in x.args)
        elif op == "or":
            v = any(val[a] for a in x.args)
        elif op == "iff":
            v = val[x.args[0]] == val[x.args[1]]
        else:
            raise ValueError(op)
        val[x] = v
    return val[f]


def substitute_atoms(f: Formula, assignment: Mapping[Hashable, bool]) -> Formula:
    """Replace the given atoms by constants and re-simplify."""
    out: Dict[Formula, Formula] = {}
    for x in nodes(f):
        if x.op == "atom":
            out[x] = const(assignment[x.key]) if x.key in assignment else x
        elif x.op == "not":
            out[x] = neg(out[x.args[0]])
        elif x.op == "and":
            out[x] = conj([out[a] for a in x.args])
        elif x.op == "or":
            out[x] = disj([out[a] for a in x.args])
        elif x.op == "iff":
            out[x] = iff(out[x.args[0]], out[x.args[1]])
        else:
            out[x] = x
    return out[f]


def brute_force_sat(f: Formula) -> bool:
    keys = sorted(set(atoms(f)), key=repr)
    for bits in itertools.product((False, True), repeat=len(keys)):
        if evaluate(f, dict(zip(keys, bits))):
            return True
    return False


# ----------------------------------------------------------------------------
# Cardinality constraints

_fresh = itertools.count()


def at_most_one(xs: Iterable[Formula], tag: Optional[Hashable] = None) -> Formula:
    """Pairwise exclusion up to six literals, a sequential counter beyond.

    The counter introduces auxiliary atoms, so the result is only
    equisatisfiable and must be used in positive position.
    """
    xs = [x for x in xs if x != FALSE]
    if len(xs) <= 6:
        return conj([disj(neg(a), neg(b)) for a, b in itertools.combinations(xs, 2)])
    if tag is None:
        tag = next(_fresh)
    s = [atom("aux", tag, i) for i in range(len(xs) - 1)]
    parts = [implies(xs[0], s[0])]
    for i in range(1, len(xs) - 1):
        parts += [implies(xs[i], s[i]), implies(s[i - 1], s[i]),
                  implies(xs[i], neg(s[i - 1]))]
    parts.append(implies(xs[-1], neg(s[-1])))
    return conj(parts)


def zero_or_one(xs: Iterable[Formula], tag: Optional[Hashable] = None) -> Formula:
    return at_most_one(xs, tag)


def exactly_one(xs: Iterable[Formula], tag: Optional[Hashable] = None) -> Formula:
    xs = list(xs)
    return conj(disj(xs), at_most_one(xs, tag))
