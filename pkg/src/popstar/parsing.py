"""Readers and printers for rewrite systems and certificates.

Two problem formats are understood.  The classic TPDB text format::

    (VAR x y)
    (RULES
      +(0, y) -> y
      +(s(x), y) -> s(+(x, y))
    )

and a native annotated variant in which argument lists may be split by a
semicolon into normal and safe positions, ``+(s(;x);y)``, optionally with a
``(DEFINED f g)`` block fixing the defined symbols.  Certificates are plain
text with ``order``, ``rank``, ``crank`` and ``safe`` lines.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Set, Tuple

from .terms import (App, Certificate, Kind, OrderKind, Precedence, Rule, RuleError, SafeMapping,
                    Signature, SignatureError, Term, Trs, Var, infer_signature, render, variables)


class ParseError(ValueError):
    def __init__(self, msg, line=None, col=None):
        self.line, self.col = line, col
        where = f"{line}:{col}: " if line is not None else ""
        super().__init__(where + msg)


_TOKEN = re.compile(r"\s+|->|[(),;]|[^\s(),;]+?(?=->|[\s(),;]|$)")
KNOWN_SECTIONS = {"VAR", "RULES", "DEFINED", "COMMENT", "STRATEGY"}


@dataclass
class Tok:
    text: str
    line: int
    col: int


def tokenize(text: str) -> List[Tok]:
    toks = []
    line, col, pos = 1, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        s = m.group(0)
        if not s.isspace():
            toks.append(Tok(s, line, col))
        nl = s.count("\n")
        if nl:
            line += nl
            col = len(s) - s.rfind("\n")
        else:
            col += len(s)
        pos = m.end()
    return toks


@dataclass
class ProblemFile:
    trs: Trs
    format: str  # "tpdb" or "native"
    safe_mapping: Optional[SafeMapping] = None
    path: Optional[str] = None


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    def peek(self, off=0) -> Optional[Tok]:
        j = self.i + off
        return self.toks[j] if j < len(self.toks) else None

    def next(self) -> Tok:
        t = self.peek()
        if t is None:
            last = self.toks[-1] if self.toks else Tok("", 1, 1)
            raise ParseError("unexpected end of input", last.line, last.col)
        self.i += 1
        return t

    def expect(self, s: str) -> Tok:
        t = self.next()
        if t.text != s:
            raise ParseError(f"expected {s!r}, found {t.text!r}", t.line, t.col)
        return t

    def sections(self):
        out = []
        while self.peek() is not None:
            self.expect("(")
            head = self.next()
            name = head.text.upper()
            if name not in KNOWN_SECTIONS:
                raise ParseError(f"unknown section {head.text!r}", head.line, head.col)
            body_start = self.i
            level = 0
            while True:
                t = self.next()
                if t.text == "(":
                    level += 1
                elif t.text == ")":
                    if level == 0:
                        break
                    level -= 1
            out.append((name, head, self.toks[body_start:self.i - 1]))
        return out


# raw terms keep the split position so the native format can be read back
@dataclass
class _Raw:
    name: str
    args: Optional[List["_Raw"]]
    split: Optional[int]
    tok: Tok


def _parse_raw(toks: List[Tok], i: int) -> Tuple[_Raw, int]:
    t = toks[i]
    if t.text in ("(", ")", ",", ";", "->"):
        raise ParseError(f"expected a term, found {t.text!r}", t.line, t.col)
    i += 1
    if i < len(toks) and toks[i].text == "(":
        i += 1
        args: List[_Raw] = []
        split = None
        if toks[i].text == ")":
            return _Raw(t.text, args, None, t), i + 1
        if toks[i].text == ";":
            split = 0
            i += 1
        while True:
            if toks[i].text == ")":
                return _Raw(t.text, args, split, t), i + 1
            a, i = _parse_raw(toks, i)
            args.append(a)
            sep = toks[i]
            if sep.text == ",":
                i += 1
            elif sep.text == ";":
                if split is not None:
                    raise ParseError("second ';' in argument list", sep.line, sep.col)
                split = len(args)
                i += 1
            elif sep.text != ")":
                raise ParseError(f"expected ',' or ')', found {sep.text!r}", sep.line, sep.col)
    return _Raw(t.text, None, None, t), i


def _guard(toks, i):
    if i >= len(toks):
        last = toks[-1]
        raise ParseError("unexpected end of rule list", last.line, last.col)


def parse_problem(text: str, path: Optional[str] = None) -> ProblemFile:
    p = _Parser(text)
    try:
        secs = p.sections()
    except IndexError:
        raise ParseError("unbalanced parentheses")
    var_names: Optional[Set[str]] = None
    defined: Optional[Set[str]] = None
    rule_toks: List[Tok] = []
    for name, head, body in secs:
        if name == "VAR":
            var_names = (var_names or set()) | {t.text for t in body}
        elif name == "DEFINED":
            defined = (defined or set()) | {t.text for t in body}
        elif name == "RULES":
            rule_toks.extend(body)

    raws: List[Tuple[_Raw, _Raw, Tok]] = []
    i = 0
    try:
        while i < len(rule_toks):
            lhs, i = _parse_raw(rule_toks, i)
            _guard(rule_toks, i)
            arrow = rule_toks[i]
            if arrow.text != "->":
                raise ParseError(f"expected '->', found {arrow.text!r}", arrow.line, arrow.col)
            _guard(rule_toks, i + 1)
            rhs, i = _parse_raw(rule_toks, i + 1)
            raws.append((lhs, rhs, lhs.tok))
    except IndexError:
        last = rule_toks[-1]
        raise ParseError("unexpected end of rule list", last.line, last.col)

    native = defined is not None or any(_has_split(r) for l, r, _ in raws for r in (l, r))

    def is_var(r: _Raw) -> bool:
        if r.args is not None:
            return False
        if var_names is not None:
            return r.name in var_names
        return True  # without (VAR ...), constants are written c()

    splits: Dict[str, int] = {}
    arities: Dict[str, int] = {}

    def build(r: _Raw) -> Term:
        if is_var(r):
            return Var(r.name)
        if var_names is not None and r.name in var_names:
            raise ParseError(f"variable {r.name!r} applied to arguments", r.tok.line, r.tok.col)
        args = [build(a) for a in (r.args or [])]
        if arities.setdefault(r.name, len(args)) != len(args):
            raise ParseError(f"arity clash for {r.name!r}: {arities[r.name]} and {len(args)}",
                             r.tok.line, r.tok.col)
        if r.split is not None:
            old = splits.setdefault(r.name, r.split)
            if old != r.split:
                raise ParseError(f"inconsistent ';' position for {r.name!r}", r.tok.line, r.tok.col)
        return App(r.name, args)

    rules = []
    for lhs, rhs, tok in raws:
        try:
            rules.append(Rule(build(lhs), build(rhs)))
        except RuleError as e:
            raise ParseError(str(e), tok.line, tok.col) from None
    try:
        sig = infer_signature(rules, defined)
        trs = Trs(sig, rules)
    except SignatureError as e:
        raise ParseError(str(e)) from None

    sm = None
    if native:
        safe = {}
        for f in sig.defined:
            n = sig.arity(f)
            k = splits.get(f, n)
            safe[f] = range(k + 1, n + 1)
        sm = SafeMapping(sig, safe)
    return ProblemFile(trs, "native" if native else "tpdb", sm, path)


def _has_split(r: _Raw) -> bool:
    if r.args is None:
        return False
    return r.split is not None or any(_has_split(a) for a in r.args)


def parse_tpdb(text: str) -> Trs:
    return parse_problem(text).trs


def load_problem(path: str) -> ProblemFile:
    with open(path, encoding="utf-8") as fh:
        return parse_problem(fh.read(), path)


# ----------------------------------------------------------------------------
# Printing

def _print_term(t: Term, sm: Optional[SafeMapping]) -> str:
    if isinstance(t, Var):
        return t.name
    if not t.args:
        return t.symbol
    if sm is None or sm.signature.is_constructor(t.symbol):
        inner = ", ".join(_print_term(a, sm) for a in t.args)
        return f"{t.symbol}({inner})"
    nrm = [_print_term(t.args[i - 1], sm) for i in sm.normal(t.symbol)]
    sf = [_print_term(t.args[i - 1], sm) for i in sm.safe(t.symbol)]
    # positions must be normal-first for the split to be expressible
    order = list(sm.normal(t.symbol)) + list(sm.safe(t.symbol))
    if order != list(range(1, len(t.args) + 1)):
        raise ValueError(f"safe positions of {t.symbol} do not follow the normal ones")
    return f"{t.symbol}({', '.join(nrm)}; {', '.join(sf)})".replace("( ;", "(;").replace("; )", ";)")


def print_problem(trs: Trs, sm: Optional[SafeMapping] = None) -> str:
    vs = sorted(set().union(*[variables(r.lhs) for r in trs.rules]) if trs.rules else set())
    out = []
    out.append("(VAR " + " ".join(vs) + ")")
    inferred = {r.lhs.symbol for r in trs.rules}
    if sm is not None or inferred != set(trs.signature.defined):
        out.append("(DEFINED " + " ".join(trs.signature.defined) + ")")
    out.append("(RULES")
    for r in trs.rules:
        out.append(f"  {_print_term(r.lhs, sm)} -> {_print_term(r.rhs, sm)}")
    out.append(")")
    return "\n".join(out) + "\n"


def print_tpdb(trs: Trs) -> str:
    return print_problem(trs)


# ----------------------------------------------------------------------------
# Certificates

def parse_certificate(text: str, trs: Trs) -> Certificate:
    sig = trs.signature
    ranks: Dict[str, int] = {}
    cranks: Dict[str, int] = {}
    safe: Dict[str, List[int]] = {}
    kind = OrderKind.POP
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        head = parts[0]
        try:
            if head == "order":
                kind = OrderKind(parts[1])
            elif head == "rank":
                ranks[parts[1]] = int(parts[2])
            elif head == "crank":
                cranks[parts[1]] = int(parts[2])
            elif head == "safe":
                f = parts[1]
                pos = "".join(parts[2:])
                safe[f] = [int(x) for x in pos.split(",") if x and x != "-"]
            else:
                raise ParseError(f"unknown certificate line {head!r}", n, 1)
            for f in parts[1:2]:
                if head != "order" and f not in sig:
                    raise ParseError(f"unknown symbol {f!r}", n, 1)
        except (IndexError, ValueError) as e:
            if isinstance(e, ParseError):
                raise
            raise ParseError(f"malformed certificate line: {raw.strip()}", n, 1) from None
    prec = Precedence(sig, ranks, cranks or None)
    return Certificate(prec, SafeMapping(sig, safe), kind)


def print_certificate(cert: Certificate) -> str:
    lines = [cert.describe()]
    cr = cert.precedence.constructor_ranks
    if cr:
        lines += [f"crank {c} {r}" for c, r in sorted(cr.items())]
    return "\n".join(lines) + "\n"


def load_certificate(path: str, trs: Trs) -> Certificate:
    with open(path, encoding="utf-8") as fh:
        return parse_certificate(fh.read(), trs)
