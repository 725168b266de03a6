"""Standalone QF_S query files written as a by-product of learning"""

import logging
import threading
from pathlib import Path
from typing import Dict, List, Optional, Union

from src.automata.dfa import Dfa
from src.automata.elimination import dfa_to_regex
from src.automata.regex import Regex
from src.frontend.system import ClauseSystem, LanguageClause, TransClause
from src.smtlib.serializer import clause_query, serialize_query, standalone_script

logger = logging.getLogger("strchc")


class QueryDumper:
    """Writes {benchmark}_{kind}_{counter}.smt2 files; safe to share between threads"""

    def __init__(self, directory: Union[str, Path], benchmark: str, logic: str = "QF_S"):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)
        self.benchmark = benchmark
        self.logic = logic
        self._counter = 0
        self._lock = threading.Lock()
        self._regex_cache: Dict[Dfa, Regex] = {}
        self.written: List[Path] = []

    def write(self, kind: str, text: str) -> Path:
        with self._lock:
            self._counter += 1
            path = self.directory / f"{self.benchmark}_{kind}_{self._counter}.smt2"
            self.written.append(path)
        path.write_text(text, encoding="utf-8")
        logger.debug(f"Dumped {kind} query to {path}")
        return path

    def _regex_for(self, h: Dfa) -> Regex:
        with self._lock:
            cached = self._regex_cache.get(h)
        if cached is None:
            cached = dfa_to_regex(h)
            with self._lock:
                self._regex_cache[h] = cached
        return cached

    def record_equivalence(self, system: ClauseSystem, clause: Union[LanguageClause, TransClause],
                           h: Union[Dfa, Regex], sat: Optional[bool]) -> Path:
        """Dump the equivalence sub-query of `clause`; sat=None leaves the status unknown"""
        h_regex = self._regex_for(h) if isinstance(h, Dfa) else h
        query = clause_query(system, clause)
        status = None if sat is None else ("sat" if sat else "unsat")
        return self.write("equiv", serialize_query(query, h_regex, system.alphabet, self.logic, status))

    def record_membership(self, system: ClauseSystem, clause: Union[LanguageClause, TransClause],
                          w_in: str, w_out: Optional[str], sat: Optional[bool]) -> Path:
        query = clause_query(system, clause)
        status = None if sat is None else ("sat" if sat else "unsat")
        script = standalone_script(query, query.membership_terms(w_in, w_out), self.logic, status,
                                   comment=f"clause {clause.clause_index} membership of {w_in!r}")
        return self.write("member", script)

    @property
    def count(self) -> int:
        return self._counter
