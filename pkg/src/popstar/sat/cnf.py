"""Polarity-aware definitional CNF conversion."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Hashable, List, Tuple

from .formula import FALSE, TRUE, Formula, nodes

POS, NEG = 1, 2


@dataclass
class CnfInstance:
    clauses: List[List[int]]
    num_vars: int
    atom_vars: Dict[Hashable, int]
    polarity: Dict[int, int] = field(default_factory=dict)

    @property
    def var_atoms(self) -> Dict[int, Hashable]:
        return {v: k for k, v in self.atom_vars.items()}

    def __len__(self):
        return len(self.clauses)


def _polarities(root: Formula) -> Dict[Formula, int]:
    pol: Dict[Formula, int] = {}
    stack = [(root, POS)]
    while stack:
        x, p = stack.pop()
        old = pol.get(x, 0)
        if old | p == old:
            continue
        pol[x] = old | p
        new = (old | p) & ~old
        if x.op == "not":
            flipped = (POS if new & NEG else 0) | (NEG if new & POS else 0)
            stack.append((x.args[0], flipped))
        elif x.op in ("and", "or"):
            for a in x.args:
                stack.append((a, new))
        elif x.op == "iff":
            for a in x.args:
                stack.append((a, POS | NEG))
    return pol


def to_cnf(f: Formula) -> CnfInstance:
    """Plaisted–Greenbaum translation.

    Every compound node gets a definition variable; only the implications
    needed for the polarities in which the node occurs are emitted.
    """
    atom_vars: Dict[Hashable, int] = {}
    clauses: List[List[int]] = []
    if f == TRUE:
        return CnfInstance([], 0, {})
    if f == FALSE:
        return CnfInstance([[1], [-1]], 1, {})

    pol = _polarities(f)
    lit: Dict[Formula, int] = {}
    counter = [0]

    def fresh():
        counter[0] += 1
        return counter[0]

    # atoms first so their numbering is stable and compact
    for x in nodes(f):
        if x.op == "atom" and x.key not in atom_vars:
            atom_vars[x.key] = fresh()
            lit[x] = atom_vars[x.key]
        elif x.op == "atom":
            lit[x] = atom_vars[x.key]

    polarity_meta: Dict[int, int] = {}
    for x in nodes(f):
        if x.op == "atom":
            continue
        if x.op == "not":
            lit[x] = -lit[x.args[0]]
            continue
        if x.op in ("true", "false"):
            raise ValueError("constants survive only at the root")
        d = fresh()
        lit[x] = d
        p = pol[x]
        polarity_meta[d] = p
        kids = [lit[a] for a in x.args]
        if x.op == "and":
            if p & POS:
                clauses.extend([-d, k] for k in kids)
            if p & NEG:
                clauses.append([d] + [-k for k in kids])
        elif x.op == "or":
            if p & POS:
                clauses.append([-d] + kids)
            if p & NEG:
                clauses.extend([d, -k] for k in kids)
        elif x.op == "iff":
            a, b = kids
            if p & POS:
                clauses += [[-d, -a, b], [-d, a, -b]]
            if p & NEG:
                clauses += [[d, a, b], [d, -a, -b]]
    clauses.append([lit[f]])
    return CnfInstance(clauses, counter[0], atom_vars, polarity_meta)


def export_dimacs(c: CnfInstance, comments: bool = True) -> str:
    out = []
    if comments:
        for k, v in sorted(c.atom_vars.items(), key=lambda kv: kv[1]):
            out.append(f"c {v} {k!r}")
    out.append(f"p cnf {c.num_vars} {len(c.clauses)}")
    out.extend(" ".join(map(str, cl)) + " 0" for cl in c.clauses)
    return "\n".join(out) + "\n"


def parse_dimacs(text: str) -> Tuple[int, List[List[int]]]:
    nv, clauses, cur = 0, [], []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            nv = int(line.split()[2])
            continue
        for tok in line.split():
            v = int(tok)
            if v == 0:
                clauses.append(cur)
                cur = []
            else:
                cur.append(v)
    if cur:
        clauses.append(cur)
    return nv, clauses
