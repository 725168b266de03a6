"""Enumeration-based teacher over words up to a length bound"""

import logging

from src.automata.dfa import Dfa
from src.automata.operations import enumerate_words
from src.frontend.system import ClauseSystem
from src.oracles.counterexample import (
    Cex, Counterexample, Implication, Negative, Passed, Positive, TeacherVerdict,
)
from src.oracles.matcher import clause_successors

logger = logging.getLogger("strchc")


def bounded_check(h: Dfa, system: ClauseSystem, max_len: int) -> TeacherVerdict:
    """Same check order as the exact teacher, restricted to words of length <= max_len.

    Passed means no counterexample exists among those words.
    """
    for clause in system.init_clauses:
        for word in enumerate_words(system.language_dfa(clause), max_len):
            if not h.accepts(word):
                return Cex(Counterexample(Positive(word), clause.clause_index))

    accepted = list(enumerate_words(h, max_len))
    for clause in system.bad_clauses:
        bad = system.language_dfa(clause)
        for word in accepted:
            if bad.accepts(word):
                return Cex(Counterexample(Negative(word), clause.clause_index))

    for clause in system.trans_clauses:
        best = None
        for w_in in accepted:
            for w_out in clause_successors(clause, w_in, system.alphabet, max_len):
                if len(w_out) <= max_len and not h.accepts(w_out):
                    key = (len(w_out), w_out)
                    if best is None or key < best[0]:
                        best = (key, w_in, w_out)
                    break
        if best is not None:
            _, w_in, w_out = best
            return Cex(Counterexample(Implication(w_in, w_out), clause.clause_index))

    logger.debug(f"Bounded teacher: no counterexample up to length {max_len}")
    return Passed()
