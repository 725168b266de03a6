"""Teachers backed by an external SMT-LIB string solver"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Tuple, Union

from src.automata.dfa import Dfa
from src.automata.elimination import dfa_to_regex
from src.automata.regex import Regex
from src.automata.simplify import simplify_regex
from src.frontend.system import ClauseSystem, LanguageClause, TransClause
from src.oracles.counterexample import (
    Cex, Counterexample, Implication, InvalidCounterexample, Negative, Passed, Positive,
    TeacherVerdict, validate_counterexample,
)
from src.smtlib.model import ModelParseFailure, SmtlibError
from src.smtlib.serializer import (
    VAR_IN, VAR_OUT, ClauseQuery, clause_query, serialize_regex, standalone_script,
)
from src.smtlib.session import Answer, Session, SolverConfig, SolverError, run_script

logger = logging.getLogger("strchc")

Clause = Union[LanguageClause, TransClause]


class ExternalTeacher:
    """Equivalence and membership queries answered by an external solver.

    per-clause mode keeps one session per clause with the clause constraints
    asserted once; single mode shares one session and scopes each clause. With
    incremental=False every query runs as a standalone script in a fresh process.
    A solver configured with INTERACTIVE=false gets each standalone script on
    stdin in one piece and answers it before exiting.
    """

    def __init__(self, system: ClauseSystem, config: SolverConfig, dumper=None,
                 incremental: bool = True, single_session: Optional[bool] = None,
                 max_workers: int = 1):
        self.system = system
        self.config = config
        self.dumper = dumper
        self.incremental = incremental
        self.single_session = (config.session_mode == "single") if single_session is None else single_session
        self.max_workers = max_workers if not self.single_session else 1
        self.queries = {c.clause_index: clause_query(system, c) for c in system.all_clauses()}
        self._sessions: Dict[Optional[int], Session] = {}
        self._regex_cache: Dict[Dfa, Regex] = {}

    def ordered_clauses(self) -> List[Clause]:
        s = self.system
        return list(s.init_clauses) + list(s.bad_clauses) + list(s.trans_clauses)

    def _session(self, query: ClauseQuery) -> Session:
        key = None if self.single_session else query.clause_index
        session = self._sessions.get(key)
        if session is None:
            if key is None:
                preamble: List[str] = []
            else:
                preamble = list(query.declarations) + [f"(assert {t})" for t in query.fixed]
            session = Session(self.config, preamble, key).start()
            self._sessions[key] = session
        return session

    def _commands(self, query: ClauseQuery, extra) -> List[str]:
        """Assertions sent inside the scope of one query"""
        if self.single_session:
            head = list(query.declarations) + [f"(assert {t})" for t in query.fixed]
        else:
            head = []
        return head + [f"(assert {t})" for t in extra]

    def _run(self, query: ClauseQuery, extra) -> Tuple[Answer, Optional[Dict[str, str]]]:
        if not self.config.interactive:
            return self._run_batch(query, extra)
        if not self.incremental:
            return self._run_standalone(query, extra)
        session = self._session(query)
        for attempt in range(2):
            try:
                with session.scope():
                    for command in self._commands(query, extra):
                        session.send(command)
                    answer = session.check_sat()
                    values = session.get_values(query.value_vars) if answer is Answer.sat else None
                return answer, values
            except SmtlibError as e:
                if isinstance(e, ModelParseFailure) or attempt == 1:
                    logger.warning(f"Solver query for clause {query.clause_index} failed: {e}\n"
                                   f"{session.dump_transcript()}")
                    raise
                session.restart()

    def _run_standalone(self, query: ClauseQuery, extra) -> Tuple[Answer, Optional[Dict[str, str]]]:
        with Session(self.config) as session:
            for command in list(query.declarations) + [f"(assert {t})" for t in query.fixed + tuple(extra)]:
                session.send(command)
            answer = session.check_sat()
            values = session.get_values(query.value_vars) if answer is Answer.sat else None
        return answer, values

    def _run_batch(self, query: ClauseQuery, extra) -> Tuple[Answer, Optional[Dict[str, str]]]:
        script = standalone_script(query, extra, self.config.logic, values=query.value_vars)
        return run_script(self.config, script, query.value_vars)

    def hypothesis_regex(self, h: Union[Dfa, Regex]) -> Regex:
        if isinstance(h, Regex):
            return h
        if h not in self._regex_cache:
            self._regex_cache[h] = simplify_regex(dfa_to_regex(h))
        return self._regex_cache[h]

    def check_clause(self, clause: Clause, h_regex: Regex) -> Optional[Counterexample]:
        query = self.queries[clause.clause_index]
        h_smt = serialize_regex(h_regex, self.system.alphabet)
        answer, values = self._run(query, query.hypothesis_terms(h_smt))
        if self.dumper is not None:
            self.dumper.record_equivalence(self.system, clause, h_regex,
                                           sat=None if answer is Answer.unknown else answer is Answer.sat)
        if answer is Answer.unknown:
            raise SolverError(f"Solver answered unknown for clause {clause.clause_index}")
        if answer is Answer.unsat:
            return None
        return _counterexample(query, values)

    def query_equivalence(self, h: Union[Dfa, Regex]) -> TeacherVerdict:
        h_regex = self.hypothesis_regex(h)
        clauses = self.ordered_clauses()
        if self.max_workers > 1:
            with ThreadPoolExecutor(max_workers=self.max_workers) as pool:
                results = list(pool.map(lambda c: self.check_clause(c, h_regex), clauses))
        else:
            results = []
            for clause in clauses:
                results.append(self.check_clause(clause, h_regex))
                if results[-1] is not None:
                    break
        for cex in results:
            if cex is None:
                continue
            if isinstance(h, Dfa):
                try:
                    validate_counterexample(cex, h, self.system)
                except InvalidCounterexample as e:
                    raise ModelParseFailure(f"Solver model is not a counterexample: {e}") from e
            logger.debug(f"External teacher: {cex.describe()}")
            return Cex(cex)
        return Passed()

    def check(self, h: Dfa) -> TeacherVerdict:
        return self.query_equivalence(h)

    def query_membership(self, clause_index: int, w_in: str, w_out: Optional[str] = None) -> Answer:
        """Do the words satisfy the clause constraints?"""
        query = self.queries[clause_index]
        answer, _ = self._run(query, query.membership_terms(w_in, w_out))
        if self.dumper is not None:
            self.dumper.record_membership(self.system, self.system.clause(clause_index), w_in, w_out,
                                          sat=None if answer is Answer.unknown else answer is Answer.sat)
        return answer

    def close(self) -> None:
        for session in self._sessions.values():
            session.close()
        self._sessions.clear()

    def __enter__(self) -> "ExternalTeacher":
        return self

    def __exit__(self, exc_type, exc, tb):
        self.close()


def _counterexample(query: ClauseQuery, values: Optional[Dict[str, str]]) -> Counterexample:
    values = values or {}
    missing = [v for v in query.value_vars if v not in values]
    if missing:
        raise ModelParseFailure(f"Solver model lacks {missing}")
    if query.kind == "init":
        return Counterexample(Positive(values[VAR_IN]), query.clause_index)
    if query.kind == "bad":
        return Counterexample(Negative(values[VAR_OUT]), query.clause_index)
    return Counterexample(Implication(values[VAR_IN], values[VAR_OUT]), query.clause_index)


class HybridTeacher:
    """External solver first; structured systems fall back to the exact teacher"""

    def __init__(self, system: ClauseSystem, exact=None, external: Optional[ExternalTeacher] = None):
        self.system = system
        self.exact = exact
        self.external = external

    def check(self, h: Dfa) -> TeacherVerdict:
        if self.external is not None:
            try:
                return self.external.check(h)
            except SmtlibError as e:
                if self.exact is None:
                    raise
                logger.warning(f"External teacher unavailable ({e}); using the exact teacher")
                self.external.close()
                self.external = None
        if self.exact is None:
            raise SolverError("No teacher available for this system")
        return self.exact.check(h)

    def close(self) -> None:
        if self.external is not None:
            self.external.close()
