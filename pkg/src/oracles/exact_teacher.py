"""Exact inductiveness check of a hypothesis DFA against a clause system"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Tuple, Union

from src.automata.dfa import Dfa
from src.automata.operations import complement, intersection_witness
from src.automata.post_image import post_image_witness
from src.frontend.system import ClauseSystem, LanguageClause, TransClause
from src.oracles.counterexample import (
    Cex, Counterexample, Implication, Negative, Passed, Positive, RawClausePresent,
    TeacherVerdict, validate_counterexample,
)

logger = logging.getLogger("strchc")

Clause = Union[LanguageClause, TransClause]


class ExactTeacher:
    """Automata-based teacher; every witness is the least shortest word of its check"""

    def __init__(self, system: ClauseSystem, max_workers: int = 1, dumper=None):
        if system.has_raw:
            raw = [c.clause_index for c in system.trans_clauses if not c.is_structured]
            raise RawClausePresent(f"Clauses {raw} have no rule form; use the external teacher")
        self.system = system
        self.max_workers = max_workers
        self.dumper = dumper

    def ordered_clauses(self) -> List[Clause]:
        """Init clauses, then Bad clauses, then transitions, each in clause order"""
        s = self.system
        return list(s.init_clauses) + list(s.bad_clauses) + list(s.trans_clauses)

    def check_clause(self, h: Dfa, clause: Clause) -> Optional[Counterexample]:
        system = self.system
        if isinstance(clause, TransClause):
            witness = post_image_witness(h, clause.rule)
            cex = None if witness is None else Counterexample(
                Implication(witness.w_in, witness.w_out), clause.clause_index)
        elif clause in system.init_clauses:
            word = intersection_witness(system.language_dfa(clause), complement(h))
            cex = None if word is None else Counterexample(Positive(word), clause.clause_index)
        else:
            word = intersection_witness(h, system.language_dfa(clause))
            cex = None if word is None else Counterexample(Negative(word), clause.clause_index)

        if self.dumper is not None:
            self.dumper.record_equivalence(system, clause, h, sat=cex is not None)
        return cex

    def clause_results(self, h: Dfa) -> List[Tuple[int, Optional[Counterexample]]]:
        h.require_alphabet(self.system.init_dfa)
        clauses = self.ordered_clauses()
        if self.max_workers > 1:
            with ThreadPoolExecutor(max_workers=self.max_workers) as pool:
                results = list(pool.map(lambda c: self.check_clause(h, c), clauses))
        else:
            results = [self.check_clause(h, c) for c in clauses]
        return [(c.clause_index, r) for c, r in zip(clauses, results)]

    def check(self, h: Dfa) -> TeacherVerdict:
        for clause_index, cex in self.clause_results(h):
            if cex is not None:
                validate_counterexample(cex, h, self.system)
                logger.debug(f"Exact teacher: {cex.describe()}")
                return Cex(cex)
        logger.debug(f"Exact teacher: hypothesis with {h.num_states} states is inductive")
        return Passed()


def exact_check(h: Dfa, system: ClauseSystem, max_workers: int = 1) -> TeacherVerdict:
    return ExactTeacher(system, max_workers).check(h)
