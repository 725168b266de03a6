"""SAT-based learner: smallest DFA consistent with the sample"""

import logging
from typing import Optional, Sequence, Tuple

from src.automata.dfa import Dfa
from src.learners.sample import LearnerError, Sample
from src.learners.sat_backend import PysatBackend
from src.learners.sat_encoding import encode, variable_summary
from src.oracles.counterexample import Counterexample

logger = logging.getLogger("strchc")


class BudgetExhausted(LearnerError):
    pass


def next_hypothesis(sample: Sample, alphabet: Sequence[str], n_start: int = 1, n_max: int = 16,
                    backend=None, symmetry_breaking: bool = False) -> Tuple[Dfa, int]:
    """Decoded DFA for the least n in [n_start, n_max] with a satisfiable encoding"""
    if n_start < 1:
        raise ValueError("n_start must be at least 1")
    backend = backend or PysatBackend()
    for n in range(n_start, n_max + 1):
        enc = encode(sample, n, alphabet, symmetry_breaking)
        model = backend.solve(enc.cnf)
        logger.debug(f"SAT with {n} states: {variable_summary(enc)} -> "
                     f"{'sat' if model is not None else 'unsat'}")
        if model is not None:
            return enc.decode(model), n
    raise BudgetExhausted(f"No DFA with at most {n_max} states is consistent with the sample")


class SatLearner:
    """Keeps the sample and the current state budget.

    The least consistent size never shrinks as examples are added, so each
    search starts from the previous size.
    """

    name = "sat"

    def __init__(self, alphabet: Sequence[str], max_states: int = 16, backend=None,
                 symmetry_breaking: bool = False, sample: Optional[Sample] = None):
        self.alphabet = tuple(alphabet)
        self.max_states = max_states
        self.backend = backend or PysatBackend()
        self.symmetry_breaking = symmetry_breaking
        self.sample = sample if sample is not None else Sample()
        self.size = 1

    def propose(self) -> Dfa:
        h, self.size = next_hypothesis(self.sample, self.alphabet, self.size, self.max_states,
                                       self.backend, self.symmetry_breaking)
        return h

    def add_counterexample(self, cex: Counterexample) -> None:
        self.sample.add_counterexample(cex)
