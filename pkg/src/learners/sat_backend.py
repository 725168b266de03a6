"""SAT backends: the built-in pysat solver or an external DIMACS solver"""

import logging
import shlex
import subprocess
import tempfile
from pathlib import Path
from typing import List, Optional

from pysat.formula import CNF
from pysat.solvers import Solver

from src.learners.sample import LearnerError

logger = logging.getLogger("strchc")


class BackendFailure(LearnerError):
    pass


class PysatBackend:
    """In-process CDCL solver (glucose 4 by default)"""

    def __init__(self, name: str = "g4"):
        self.name = name

    def solve(self, cnf: CNF) -> Optional[List[int]]:
        """Satisfying assignment, or None when unsatisfiable"""
        try:
            with Solver(name=self.name, bootstrap_with=cnf.clauses) as solver:
                if solver.solve():
                    return solver.get_model() or []
                return None
        except Exception as e:
            raise BackendFailure(f"pysat solver '{self.name}' failed: {e}") from e


class DimacsBackend:
    """External solver reading a DIMACS file and printing s/v lines"""

    def __init__(self, command: str, timeout: Optional[float] = None):
        if not command.strip():
            raise BackendFailure("Empty SAT solver command")
        self.command = shlex.split(command)
        self.timeout = timeout

    def solve(self, cnf: CNF) -> Optional[List[int]]:
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "query.cnf"
            cnf.to_file(str(path))
            try:
                proc = subprocess.run(self.command + [str(path)], capture_output=True, text=True,
                                      timeout=self.timeout)
            except (OSError, subprocess.TimeoutExpired) as e:
                raise BackendFailure(f"External SAT solver failed: {e}") from e
        return parse_dimacs_output(proc.stdout)


def parse_dimacs_output(text: str) -> Optional[List[int]]:
    status = None
    model: List[int] = []
    for line in text.splitlines():
        line = line.strip()
        if line.startswith("s "):
            status = line[2:].strip()
        elif line.startswith("v "):
            model.extend(int(tok) for tok in line[2:].split() if tok != "0")
    if status == "SATISFIABLE":
        return model
    if status == "UNSATISFIABLE":
        return None
    raise BackendFailure(f"No solution line in SAT solver output: {text[:200]!r}")


def make_backend(spec: str = "g4", timeout: Optional[float] = None):
    """`g4`, `cadical153`, ... select a pysat solver; `dimacs:<command>` an external one"""
    if spec.startswith("dimacs:"):
        return DimacsBackend(spec[len("dimacs:"):], timeout)
    return PysatBackend(spec)
