"""First-order terms, signatures and rewrite systems.

Terms are immutable. ``Var`` wraps a variable name, ``App`` a function symbol
applied to a tuple of argument terms. Both hash structurally (the hash of an
``App`` is computed once), so terms can be used freely as dictionary keys by
the memoising procedures elsewhere in the package.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Tuple, Union


class SignatureError(ValueError):
    """A symbol is undeclared or used with the wrong arity."""


class Kind(enum.Enum):
    DEFINED = "defined"
    CONSTRUCTOR = "constructor"


class Var:
    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name

    def __eq__(self, other):
        return isinstance(other, Var) and other.name == self.name

    def __hash__(self):
        return hash(("var", self.name))

    def __repr__(self):
        return f"Var({self.name!r})"

    def __str__(self):
        return self.name


class App:
    __slots__ = ("symbol", "args", "_hash")

    def __init__(self, symbol: str, args: Iterable["Term"] = ()):
        self.symbol = symbol
        self.args = tuple(args)
        self._hash = hash((symbol, self.args))

    def __eq__(self, other):
        if self is other:
            return True
        return (isinstance(other, App) and other._hash == self._hash
                and other.symbol == self.symbol and other.args == self.args)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"App({self.symbol!r}, {self.args!r})"

    def __str__(self):
        return render(self)


Term = Union[Var, App]


def render(t: Term, safe: Optional["SafeMapping"] = None) -> str:
    """Print ``t``; with a safe mapping, arguments are split as ``f(normal;safe)``."""
    if isinstance(t, Var):
        return t.name
    if safe is None:
        if not t.args:
            return t.symbol
        return f"{t.symbol}({','.join(render(a) for a in t.args)})"
    nrm = [render(t.args[i - 1], safe) for i in safe.normal(t.symbol)]
    sf = [render(t.args[i - 1], safe) for i in safe.safe(t.symbol)]
    if not t.args:
        return t.symbol
    return f"{t.symbol}({','.join(nrm)};{','.join(sf)})"


# ----------------------------------------------------------------------------
# Signatures and rewrite systems

@dataclass(frozen=True)
class Signature:
    symbols: Mapping[str, Tuple[int, Kind]]

    def __post_init__(self):
        object.__setattr__(self, "symbols", dict(self.symbols))

    def __contains__(self, name):
        return name in self.symbols

    def arity(self, f: str) -> int:
        try:
            return self.symbols[f][0]
        except KeyError:
            raise SignatureError(f"undeclared symbol {f!r}") from None

    def kind(self, f: str) -> Kind:
        try:
            return self.symbols[f][1]
        except KeyError:
            raise SignatureError(f"undeclared symbol {f!r}") from None

    def is_defined(self, f: str) -> bool:
        return self.kind(f) is Kind.DEFINED

    def is_constructor(self, f: str) -> bool:
        return self.kind(f) is Kind.CONSTRUCTOR

    @property
    def defined(self) -> List[str]:
        return sorted(f for f, (_, k) in self.symbols.items() if k is Kind.DEFINED)

    @property
    def constructors(self) -> List[str]:
        return sorted(f for f, (_, k) in self.symbols.items() if k is Kind.CONSTRUCTOR)

    def check(self, t: Term) -> None:
        for s in subterms(t):
            if isinstance(s, App) and self.arity(s.symbol) != len(s.args):
                raise SignatureError(
                    f"{s.symbol} has arity {self.arity(s.symbol)}, applied to {len(s.args)}")


class RuleError(ValueError):
    pass


@dataclass(frozen=True)
class Rule:
    lhs: Term
    rhs: Term
    name: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        if isinstance(self.lhs, Var):
            raise RuleError(f"left-hand side {self.lhs} is a variable")
        extra = variables(self.rhs) - variables(self.lhs)
        if extra:
            raise RuleError(f"rhs variables {sorted(extra)} do not occur in lhs {self.lhs}")

    def __str__(self):
        return f"{self.lhs} -> {self.rhs}"


@dataclass(frozen=True)
class Trs:
    signature: Signature
    rules: Tuple[Rule, ...]

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))
        for r in self.rules:
            self.signature.check(r.lhs)
            self.signature.check(r.rhs)

    @property
    def defined(self) -> List[str]:
        return self.signature.defined

    def __str__(self):
        return "\n".join(str(r) for r in self.rules)


def infer_signature(rules: Iterable[Rule], defined: Optional[Iterable[str]] = None) -> Signature:
    """Arities from use; defined symbols are the lhs roots unless ``defined`` is given."""
    rules = list(rules)
    arities: Dict[str, int] = {}
    for r in rules:
        for t in (r.lhs, r.rhs):
            for s in subterms(t):
                if isinstance(s, App):
                    if arities.setdefault(s.symbol, len(s.args)) != len(s.args):
                        raise SignatureError(f"arity clash for {s.symbol!r}")
    if defined is None:
        ds = {r.lhs.symbol for r in rules}
    else:
        ds = set(defined)
        for f in ds:
            arities.setdefault(f, 0)
    return Signature({f: (n, Kind.DEFINED if f in ds else Kind.CONSTRUCTOR)
                      for f, n in arities.items()})


def make_trs(rules: Iterable[Rule], defined: Optional[Iterable[str]] = None,
             constructors: Optional[Mapping[str, int]] = None) -> Trs:
    """``constructors`` declares extra constructor symbols with their arities."""
    rules = tuple(rules)
    sig = infer_signature(rules, defined)
    if constructors:
        syms = dict(sig.symbols)
        for c, n in constructors.items():
            if syms.setdefault(c, (n, Kind.CONSTRUCTOR)) != (n, Kind.CONSTRUCTOR):
                raise SignatureError(f"{c!r} clashes with the rules")
        sig = Signature(syms)
    return Trs(sig, rules)


# ----------------------------------------------------------------------------
# Structural operations

def subterms(t: Term) -> Iterator[Term]:
    yield t
    if isinstance(t, App):
        for a in t.args:
            yield from subterms(a)


def positions(t: Term, prefix: Tuple[int, ...] = ()) -> Iterator[Tuple[Tuple[int, ...], Term]]:
    yield prefix, t
    if isinstance(t, App):
        for i, a in enumerate(t.args, 1):
            yield from positions(a, prefix + (i,))


def replace_at(t: Term, pos: Tuple[int, ...], u: Term) -> Term:
    if not pos:
        return u
    i = pos[0]
    args = list(t.args)
    args[i - 1] = replace_at(args[i - 1], pos[1:], u)
    return App(t.symbol, args)


def variables(t: Term) -> frozenset:
    return frozenset(s.name for s in subterms(t) if isinstance(s, Var))


def variable_occurrences(t: Term) -> List[str]:
    return [s.name for s in subterms(t) if isinstance(s, Var)]


def depth(t: Term) -> int:
    if isinstance(t, Var):
        return 1
    return 1 + max((depth(a) for a in t.args), default=0)


def size(t: Term) -> int:
    if isinstance(t, Var):
        return 1
    return 1 + sum(size(a) for a in t.args)


def substitute(t: Term, sigma: Mapping[str, Term]) -> Term:
    if isinstance(t, Var):
        return sigma.get(t.name, t)
    return App(t.symbol, [substitute(a, sigma) for a in t.args])


def match(pattern: Term, t: Term, sigma: Optional[Dict[str, Term]] = None) -> Optional[Dict[str, Term]]:
    """Matching substitution with ``pattern sigma == t``, or None."""
    sigma = {} if sigma is None else sigma
    stack = [(pattern, t)]
    while stack:
        p, s = stack.pop()
        if isinstance(p, Var):
            bound = sigma.get(p.name)
            if bound is None:
                sigma[p.name] = s
            elif bound != s:
                return None
        elif isinstance(s, App) and s.symbol == p.symbol and len(s.args) == len(p.args):
            stack.extend(zip(p.args, s.args))
        else:
            return None
    return sigma


def unify(s: Term, t: Term) -> Optional[Dict[str, Term]]:
    """Most general unifier (triangular form resolved), or None."""
    sigma: Dict[str, Term] = {}

    def walk(u):
        while isinstance(u, Var) and u.name in sigma:
            u = sigma[u.name]
        return u

    def occurs(x, u):
        u = walk(u)
        if isinstance(u, Var):
            return u.name == x
        return any(occurs(x, a) for a in u.args)

    stack = [(s, t)]
    while stack:
        a, b = stack.pop()
        a, b = walk(a), walk(b)
        if isinstance(a, Var) and isinstance(b, Var) and a.name == b.name:
            continue
        if isinstance(a, Var):
            if occurs(a.name, b):
                return None
            sigma[a.name] = b
        elif isinstance(b, Var):
            if occurs(b.name, a):
                return None
            sigma[b.name] = a
        elif a.symbol == b.symbol and len(a.args) == len(b.args):
            stack.extend(zip(a.args, b.args))
        else:
            return None

    def resolve(u):
        u = walk(u)
        if isinstance(u, Var):
            return u
        return App(u.symbol, [resolve(x) for x in u.args])

    return {x: resolve(Var(x)) for x in sigma}


RENAME_PREFIX = "_r"


def rename(t: Term, tag: str) -> Term:
    return substitute(t, {x: Var(f"{RENAME_PREFIX}{tag}_{x}") for x in variables(t)})


def is_variant(r1: Rule, r2: Rule) -> bool:
    """Equal up to a bijective renaming of variables."""
    s1 = match(r1.lhs, r2.lhs)
    s2 = match(r2.lhs, r1.lhs)
    if s1 is None or s2 is None:
        return False
    if not all(isinstance(v, Var) for v in s1.values()):
        return False
    return substitute(r1.rhs, s1) == r2.rhs


# ----------------------------------------------------------------------------
# Term classes and structural predicates

class TermClass(enum.Enum):
    VALUE = "value"
    BASIC = "basic"
    GENERAL = "general"


def is_value(t: Term, sig: Signature) -> bool:
    return all(isinstance(s, Var) or sig.is_constructor(s.symbol) for s in subterms(t))


def classify(t: Term, sig: Signature) -> TermClass:
    sig.check(t)
    if is_value(t, sig):
        return TermClass.VALUE
    if sig.is_defined(t.symbol) and all(is_value(a, sig) for a in t.args):
        return TermClass.BASIC
    return TermClass.GENERAL


def is_basic(t: Term, sig: Signature) -> bool:
    return isinstance(t, Var) or classify(t, sig) is TermClass.BASIC


def is_constructor_trs(trs: Trs) -> bool:
    sig = trs.signature
    return all(classify(r.lhs, sig) is TermClass.BASIC for r in trs.rules)


def is_left_linear(trs: Trs) -> bool:
    for r in trs.rules:
        occ = variable_occurrences(r.lhs)
        if len(occ) != len(set(occ)):
            return False
    return True


def overlaps(trs: Trs) -> List[Tuple[int, int, Tuple[int, ...]]]:
    """Critical overlaps ``(i, j, p)``: rule j's lhs unifies with lhs_i at non-variable position p."""
    found = []
    rules = trs.rules
    for (i, r1), (j, r2) in itertools.product(enumerate(rules), repeat=2):
        l1 = rename(r1.lhs, "a")
        l2 = rename(r2.lhs, "b")
        for pos, sub in positions(l1):
            if isinstance(sub, Var):
                continue
            if not pos and is_variant(r1, r2):
                continue
            if unify(sub, l2) is not None:
                found.append((i, j, pos))
    return found


def is_orthogonal(trs: Trs) -> bool:
    return is_left_linear(trs) and not overlaps(trs)


# ----------------------------------------------------------------------------
# Safe mappings, precedences, certificates

class SafeMapping:
    """Safe argument positions (1-based) of defined symbols; constructors are all-safe."""

    def __init__(self, signature: Signature, safe: Mapping[str, Iterable[int]]):
        self.signature = signature
        self._safe = {}
        for f, ps in safe.items():
            if signature.is_constructor(f):
                continue
            ps = frozenset(ps)
            n = signature.arity(f)
            if not ps <= set(range(1, n + 1)):
                raise SignatureError(f"safe positions {sorted(ps)} out of range for {f}/{n}")
            self._safe[f] = ps

    def __contains__(self, f):
        return f in self._safe or self.signature.is_constructor(f)

    def safe(self, f: str) -> Tuple[int, ...]:
        n = self.signature.arity(f)
        if self.signature.is_constructor(f):
            return tuple(range(1, n + 1))
        return tuple(sorted(self._safe.get(f, ())))

    def normal(self, f: str) -> Tuple[int, ...]:
        s = set(self.safe(f))
        return tuple(i for i in range(1, self.signature.arity(f) + 1) if i not in s)

    def is_safe(self, f: str, i: int) -> bool:
        if self.signature.is_constructor(f):
            return True
        return i in self._safe.get(f, ())

    def items(self):
        return [(f, self.safe(f)) for f in self.signature.defined]

    def __eq__(self, other):
        return isinstance(other, SafeMapping) and self.items() == other.items()

    def __repr__(self):
        return f"SafeMapping({dict(self.items())})"


class PrecedenceError(ValueError):
    pass


class Precedence:
    """Quasi-precedence given by integer ranks.

    Without explicit constructor ranks, constructors are mutually equivalent
    and strictly below every defined symbol.
    """

    def __init__(self, signature: Signature, ranks: Mapping[str, int],
                 constructor_ranks: Optional[Mapping[str, int]] = None):
        self.signature = signature
        self.ranks = {f: int(r) for f, r in ranks.items() if signature.is_defined(f)}
        self.constructor_ranks = None if constructor_ranks is None else dict(constructor_ranks)
        if any(r < 0 for r in self.ranks.values()):
            raise PrecedenceError("ranks must be nonnegative")

    def rank(self, f: str) -> Optional[int]:
        if self.signature.is_defined(f):
            return self.ranks.get(f)
        if self.constructor_ranks is None:
            return None
        return self.constructor_ranks.get(f)

    def _key(self, f):
        r = self.rank(f)
        if self.signature.is_constructor(f) and self.constructor_ranks is None:
            return (0, 0)
        if r is None:
            return None
        return (1, r) if self.constructor_ranks is None else (0, r)

    def gt(self, f: str, g: str) -> bool:
        a, b = self._key(f), self._key(g)
        if a is None or b is None:
            return False
        return a > b

    def eq(self, f: str, g: str) -> bool:
        if f == g:
            return True
        a, b = self._key(f), self._key(g)
        return a is not None and a == b

    def ge(self, f: str, g: str) -> bool:
        return self.gt(f, g) or self.eq(f, g)

    def is_admissible(self) -> bool:
        for f in self.signature.defined:
            for c in self.signature.constructors:
                if self.eq(f, c):
                    return False
        return True

    def below(self, f: str) -> frozenset:
        return frozenset(g for g in self.signature.symbols if self.gt(f, g))

    def __repr__(self):
        return f"Precedence({self.ranks}, constructors={self.constructor_ranks})"


class OrderKind(enum.Enum):
    POP = "popstar"
    POPPS = "popstarps"
    MPO = "mpo"


@dataclass
class Certificate:
    precedence: Precedence
    safe_mapping: SafeMapping
    order_kind: OrderKind = OrderKind.POP

    def __post_init__(self):
        if not self.precedence.is_admissible():
            raise PrecedenceError("precedence is not admissible")

    def describe(self) -> str:
        lines = [f"order {self.order_kind.value}"]
        for f in self.precedence.signature.defined:
            r = self.precedence.rank(f)
            lines.append(f"rank {f} {0 if r is None else r}")
        for f in self.precedence.signature.defined:
            lines.append(f"safe {f} {','.join(map(str, self.safe_mapping.safe(f)))}".rstrip())
        return "\n".join(lines)
