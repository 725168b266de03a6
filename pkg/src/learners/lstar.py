"""L* learner with reachability-backed membership"""

import logging
from typing import Callable, Optional, Sequence, Tuple, Union

from src.automata.dfa import Dfa
from src.learners.observation_table import ObservationTable
from src.learners.sample import LearnerError, Sample
from src.oracles.counterexample import Implication, Negative, Positive
from src.oracles.reachability import Inconclusive, ReachabilityOracle, Trace

logger = logging.getLogger("strchc")


class OracleFailure(LearnerError):
    pass


class OracleInconclusive(LearnerError):
    pass


class LStar:
    """Angluin's learner over an arbitrary membership function"""

    def __init__(self, alphabet: Sequence[str], membership: Callable[[str], bool]):
        self.table = ObservationTable(alphabet, membership)
        self.equivalence_queries = 0
        self._ready = False

    def propose(self) -> Dfa:
        if not self._ready:
            self.table.close_and_make_consistent()
            self._ready = True
        self.equivalence_queries += 1
        return self.table.hypothesis()

    def refine(self, word: str, label: Optional[bool] = None) -> None:
        """Process a counterexample; `label` overrides the membership answer for it"""
        if label is not None:
            self.table.record(word, label)
        self.table.add_counterexample(word)


def learn_dfa(alphabet: Sequence[str], membership: Callable[[str], bool],
              equivalence: Callable[[Dfa], Optional[str]], max_rounds: int = 1000) -> Tuple[Dfa, int]:
    """Plain L*: `equivalence` returns None or a word misclassified by the hypothesis"""
    learner = LStar(alphabet, membership)
    for _ in range(max_rounds):
        h = learner.propose()
        cex = equivalence(h)
        if cex is None:
            return h, learner.equivalence_queries
        learner.refine(cex)
    raise OracleFailure(f"No equivalent hypothesis after {max_rounds} rounds")


def resolve_implication(w_in: str, w_out: str, reach: ReachabilityOracle,
                        known_positive=frozenset()) -> Union[Positive, Negative]:
    """Turn an implication into a positive or negative example.

    Reachable input: the output is reachable too. Otherwise the input is
    rejected. Raises OracleInconclusive when reachability cannot decide.
    """
    if w_in in known_positive:
        return Positive(w_out)
    answer = reach.member(w_in)
    if isinstance(answer, Inconclusive):
        raise OracleInconclusive(f"Reachability of {w_in!r} undecided: {answer.reason}")
    return Positive(w_out) if answer else Negative(w_in)


class ChcLStarLearner:
    """L* driven by counterexamples from a clause-system teacher.

    Membership is "reachable within the length window"; inconclusive answers
    count as unreachable and are remembered as provisional.
    """

    name = "lstar"

    def __init__(self, alphabet: Sequence[str], reach: ReachabilityOracle):
        self.reach = reach
        self.sample = Sample()
        self.provisional = set()
        self.learner = LStar(alphabet, self.member)

    @property
    def size(self) -> int:
        return len({self.learner.table.row(s) for s in self.learner.table.prefixes})

    def member(self, word: str) -> bool:
        if word in self.sample.pos:
            return True
        if word in self.sample.neg:
            return False
        answer = self.reach.member(word)
        if isinstance(answer, Inconclusive):
            logger.warning(f"Membership of {word!r} inconclusive ({answer.reason}); answering no")
            self.provisional.add(word)
            return False
        return answer

    def propose(self) -> Dfa:
        return self.learner.propose()

    def label(self, kind: Union[Positive, Negative], clause_index: int,
              trace: Optional[Trace] = None) -> None:
        if isinstance(kind, Positive):
            self.sample.add_positive(kind.word, trace or [(kind.word, clause_index)])
            self.learner.refine(kind.word, True)
        else:
            self.sample.add_negative(kind.word)
            self.learner.refine(kind.word, False)

    def resolve(self, kind: Implication, clause_index: int) -> Tuple[Union[Positive, Negative], Optional[Trace]]:
        """Resolved example plus, for a positive one, the derivation that justifies it"""
        try:
            resolved = resolve_implication(kind.w_in, kind.w_out, self.reach, frozenset(self.sample.pos))
        except OracleInconclusive as e:
            logger.warning(f"{e}; treating {kind.w_in!r} as negative (provisional)")
            self.provisional.add(kind.w_in)
            return Negative(kind.w_in), None
        if isinstance(resolved, Negative):
            return resolved, None
        head = self.sample.pos_traces.get(kind.w_in) or self.reach.derivation(kind.w_in)
        trace = list(head) + [(kind.w_out, clause_index)] if head else None
        return resolved, trace
