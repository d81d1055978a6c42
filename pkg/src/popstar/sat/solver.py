"""Satisfiability backends.

A backend takes a ``CnfInstance`` and returns a ``Model`` or ``None`` for an
unsatisfiable instance.  The default calls picosat through ``pycosat``; any
DIMACS solver can be plugged in with ``ExternalSolver`` (or by setting
``POPSTAR_SOLVER`` to its command line).
"""

from __future__ import annotations

import os
import shlex
import subprocess
import tempfile
from dataclasses import dataclass
from typing import Dict, Hashable, List, Optional

from .cnf import CnfInstance, export_dimacs

SOLVER_ENV = "POPSTAR_SOLVER"


class SolverError(RuntimeError):
    pass


@dataclass
class Model:
    values: Dict[int, bool]
    atoms: Dict[Hashable, bool]

    def __getitem__(self, key):
        return self.atoms[key]

    def get(self, key, default=None):
        return self.atoms.get(key, default)


def _model_from(lits: List[int], c: CnfInstance) -> Model:
    values = {abs(v): v > 0 for v in lits if v != 0}
    for cl in c.clauses:
        if not any(values.get(abs(l), False) == (l > 0) for l in cl):
            raise SolverError("model violates clause " + " ".join(map(str, cl)))
    return Model(values, {k: values.get(v, False) for k, v in c.atom_vars.items()})


class PycosatSolver:
    name = "picosat"

    def solve(self, c: CnfInstance) -> Optional[Model]:
        import pycosat

        if not c.clauses:
            return Model({}, {k: False for k in c.atom_vars})
        res = pycosat.solve(c.clauses, vars=c.num_vars)
        if res == "UNSAT":
            return None
        if res == "UNKNOWN":
            raise SolverError("solver gave up")
        return _model_from(res, c)


def parse_solver_output(text: str) -> Optional[List[int]]:
    """Read ``s``/``v`` lines, or a bare literal list; None for UNSAT."""
    lits: List[int] = []
    status = None
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("s "):
            status = line[2:].strip().upper()
            continue
        if line.upper() in ("SAT", "SATISFIABLE"):
            status = "SATISFIABLE"
            continue
        if line.upper() in ("UNSAT", "UNSATISFIABLE"):
            status = "UNSATISFIABLE"
            continue
        if line.startswith("v "):
            line = line[2:]
        try:
            lits.extend(int(t) for t in line.split())
        except ValueError:
            continue
    if status == "UNSATISFIABLE":
        return None
    if status is None and not lits:
        raise SolverError("no verdict in solver output")
    return [l for l in lits if l != 0]


class ExternalSolver:
    """Run a DIMACS solver; the instance path is appended to ``command``."""

    def __init__(self, command: str, timeout: Optional[float] = None):
        self.command = command
        self.timeout = timeout
        self.name = command

    def solve(self, c: CnfInstance) -> Optional[Model]:
        with tempfile.NamedTemporaryFile("w", suffix=".cnf", delete=False) as fh:
            fh.write(export_dimacs(c, comments=False))
            path = fh.name
        try:
            proc = subprocess.run(shlex.split(self.command) + [path], capture_output=True,
                                  text=True, timeout=self.timeout)
        except FileNotFoundError as e:
            raise SolverError(f"solver backend missing: {self.command}") from e
        finally:
            os.unlink(path)
        lits = parse_solver_output(proc.stdout)
        if lits is None:
            return None
        return _model_from(lits, c)


def default_backend(command: Optional[str] = None):
    command = command or os.environ.get(SOLVER_ENV)
    if command:
        return ExternalSolver(command)
    return PycosatSolver()


def solve(c: CnfInstance, backend=None) -> Optional[Model]:
    return (backend or default_backend()).solve(c)
