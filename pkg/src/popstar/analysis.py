"""End-to-end analysis of one problem: encode, solve, decode, verify."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Optional

from .orders import StructuralError, verify_certificate
from .parsing import print_certificate
from .rewriting import RcFit
from .sat.cnf import export_dimacs, to_cnf
from .sat.encoding import decode, encode_problem
from .sat.solver import SolverError, default_backend
from .terms import Certificate, OrderKind, Trs, is_constructor_trs

COMPATIBLE = "Compatible"
INCOMPATIBLE = "Incompatible"
STRUCTURAL = "StructuralReject"
REJECTED = "CertificateRejected"   # a supplied certificate failed the check
UNVERIFIED = "Unverified"          # satisfiable, verification switched off
ERROR = "Error"

DEFINITE = {COMPATIBLE, INCOMPATIBLE, STRUCTURAL, REJECTED, UNVERIFIED}


@dataclass
class AnalysisReport:
    problem: str
    order: OrderKind
    verdict: str
    certificate: Optional[Certificate] = None
    verified: bool = False
    encode_ms: float = 0.0
    solve_ms: float = 0.0
    verify_ms: float = 0.0
    reason: str = ""
    clauses: int = 0
    variables: int = 0
    fit: Optional[RcFit] = None

    def __post_init__(self):
        if self.verdict == COMPATIBLE and not self.verified:
            raise ValueError("a compatible verdict needs a verified certificate")

    @property
    def definite(self) -> bool:
        return self.verdict in DEFINITE

    def summary(self) -> str:
        return f"{self.problem} {self.order.value} {self.verdict} {self.encode_ms:.1f} {self.solve_ms:.1f}"

    def details(self) -> str:
        out = [self.summary()]
        if self.reason:
            out.append(f"  reason: {self.reason}")
        if self.clauses:
            out.append(f"  cnf: {self.variables} variables, {self.clauses} clauses")
        if self.certificate is not None:
            out += ["  " + ln for ln in print_certificate(self.certificate).splitlines()]
        return "\n".join(out)

    def to_json(self) -> str:
        d = {"problem": self.problem, "order": self.order.value, "verdict": self.verdict,
             "verified": self.verified, "encode_ms": round(self.encode_ms, 3),
             "solve_ms": round(self.solve_ms, 3), "verify_ms": round(self.verify_ms, 3)}
        if self.reason:
            d["reason"] = self.reason
        if self.certificate is not None:
            c = self.certificate
            d["ranks"] = {f: c.precedence.rank(f) for f in c.precedence.signature.defined}
            d["safe"] = {f: list(p) for f, p in c.safe_mapping.items()}
        return json.dumps(d, sort_keys=True)


def _ms(t0):
    return (time.perf_counter() - t0) * 1000.0


def check_certificate(problem: str, trs: Trs, cert: Certificate) -> AnalysisReport:
    t0 = time.perf_counter()
    try:
        rep = verify_certificate(trs, cert)
    except StructuralError as e:
        return AnalysisReport(problem, cert.order_kind, STRUCTURAL, reason=str(e))
    if rep.ok:
        return AnalysisReport(problem, cert.order_kind, COMPATIBLE, cert, True, verify_ms=_ms(t0))
    bad = "; ".join(str(c.rule) for c in rep.failures)
    return AnalysisReport(problem, cert.order_kind, REJECTED, verify_ms=_ms(t0),
                          reason=f"not oriented: {bad}")


def analyze(problem: str, trs: Trs, order: OrderKind = OrderKind.POP, verify: bool = True,
            backend=None, dimacs_path: Optional[str] = None, memo: bool = True) -> AnalysisReport:
    if order is not OrderKind.MPO and not is_constructor_trs(trs):
        return AnalysisReport(problem, order, STRUCTURAL, reason="not a constructor TRS")
    t0 = time.perf_counter()
    formula, reg = encode_problem(trs, order, memo)
    cnf = to_cnf(formula)
    enc = _ms(t0)
    if dimacs_path:
        with open(dimacs_path, "w", encoding="utf-8") as fh:
            fh.write(export_dimacs(cnf))
    t1 = time.perf_counter()
    try:
        model = (backend or default_backend()).solve(cnf)
    except SolverError as e:
        return AnalysisReport(problem, order, ERROR, encode_ms=enc, solve_ms=_ms(t1), reason=str(e))
    sol = _ms(t1)
    base = dict(encode_ms=enc, solve_ms=sol, clauses=len(cnf.clauses), variables=cnf.num_vars)
    if model is None:
        return AnalysisReport(problem, order, INCOMPATIBLE, **base)
    cert = decode(model, reg)
    if not verify:
        return AnalysisReport(problem, order, UNVERIFIED, cert, False, **base)
    t2 = time.perf_counter()
    rep = verify_certificate(trs, cert)
    ver = _ms(t2)
    if not rep.ok:
        bad = "; ".join(str(c.rule) for c in rep.failures)
        return AnalysisReport(problem, order, ERROR, verify_ms=ver,
                              reason=f"decoded certificate failed verification: {bad}", **base)
    return AnalysisReport(problem, order, COMPATIBLE, cert, True, verify_ms=ver, **base)
