"""Learning sample: positive, negative and implication examples"""

from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Set, Tuple

from src.automata.dfa import Dfa
from src.oracles.counterexample import Counterexample, Implication, Negative, Positive


class LearnerError(Exception):
    """Base class for learner errors"""
    pass


# (word, clause index); the first entry names the clause that made the word positive
Chain = List[Tuple[str, int]]


@dataclass
class Sample:
    pos: Set[str] = field(default_factory=set)
    neg: Set[str] = field(default_factory=set)
    imp: Set[Tuple[str, str, int]] = field(default_factory=set)
    pos_traces: Dict[str, Chain] = field(default_factory=dict)

    def add_positive(self, word: str, trace: Optional[Chain] = None) -> None:
        self.pos.add(word)
        if trace is not None and word not in self.pos_traces:
            self.pos_traces[word] = list(trace)

    def add_negative(self, word: str) -> None:
        self.neg.add(word)

    def add_implication(self, w_in: str, w_out: str, clause_index: int) -> None:
        self.imp.add((w_in, w_out, clause_index))

    def add_counterexample(self, cex: Counterexample) -> None:
        kind = cex.kind
        if isinstance(kind, Positive):
            self.add_positive(kind.word, [(kind.word, cex.clause_index)])
        elif isinstance(kind, Negative):
            self.add_negative(kind.word)
        else:
            self.add_implication(kind.w_in, kind.w_out, cex.clause_index)

    def words(self) -> Set[str]:
        words = set(self.pos) | set(self.neg)
        for w_in, w_out, _ in self.imp:
            words.add(w_in)
            words.add(w_out)
        return words

    def size(self) -> int:
        return len(self.pos) + len(self.neg) + len(self.imp)

    def is_empty(self) -> bool:
        return self.size() == 0

    def contradiction(self) -> Optional[Chain]:
        """Chain from a positive word to a negative one along implications.

        The chain starts with the stored trace of the positive word when one is
        known, so a chain built from teacher counterexamples is an unsafe trace.
        """
        if not self.neg:
            return None
        edges: Dict[str, List[Tuple[str, int]]] = {}
        for w_in, w_out, clause_index in sorted(self.imp):
            edges.setdefault(w_in, []).append((w_out, clause_index))

        parents: Dict[str, Optional[Tuple[str, int]]] = {}
        queue = deque()
        for word in sorted(self.pos, key=lambda w: (len(w), w)):
            parents[word] = None
            queue.append(word)
        while queue:
            word = queue.popleft()
            if word in self.neg:
                return self._chain(parents, word)
            for nxt, clause_index in edges.get(word, []):
                if nxt not in parents:
                    parents[nxt] = (word, clause_index)
                    queue.append(nxt)
        return None

    def _chain(self, parents, word: str) -> Chain:
        steps: Chain = []
        while parents[word] is not None:
            prev, clause_index = parents[word]
            steps.append((word, clause_index))
            word = prev
        head = self.pos_traces.get(word, [(word, -1)])
        return list(head) + list(reversed(steps))

    def consistent_with(self, h: Dfa) -> bool:
        if any(not h.accepts(w) for w in self.pos):
            return False
        if any(h.accepts(w) for w in self.neg):
            return False
        return all(not h.accepts(a) or h.accepts(b) for a, b, _ in self.imp)
