"""Observation table for the L* learner"""

import logging
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from src.automata.dfa import Dfa
from src.learners.sample import LearnerError

logger = logging.getLogger("strchc")


class TableNotClosed(LearnerError):
    pass


class MembershipInconsistent(LearnerError):
    """A word received two different membership answers"""
    pass


class ObservationTable:
    """Rows S ∪ S·Σ, columns E; cells are membership answers of s·e.

    `cache` holds every answer ever given, so each word is asked at most once.
    """

    def __init__(self, alphabet: Sequence[str], membership: Callable[[str], bool]):
        self.alphabet = tuple(alphabet)
        self.membership = membership
        self.prefixes: List[str] = [""]
        self.suffixes: List[str] = [""]
        self.cache: Dict[str, bool] = {}
        self.queries = 0

    def ask(self, word: str) -> bool:
        if word not in self.cache:
            self.cache[word] = bool(self.membership(word))
            self.queries += 1
        return self.cache[word]

    def record(self, word: str, answer: bool) -> None:
        """Store an answer learned elsewhere (a teacher counterexample)"""
        known = self.cache.get(word)
        if known is not None and known != answer:
            raise MembershipInconsistent(f"{word!r} was answered {known}, counterexample says {answer}")
        self.cache[word] = answer

    def extensions(self) -> List[str]:
        members = set(self.prefixes)
        return [s + a for s in self.prefixes for a in self.alphabet if s + a not in members]

    def fill(self) -> None:
        for s in self.prefixes + self.extensions():
            for e in self.suffixes:
                self.ask(s + e)

    def row(self, s: str) -> Tuple[bool, ...]:
        return tuple(self.ask(s + e) for e in self.suffixes)

    def unclosed_row(self) -> Optional[str]:
        rows = {self.row(s) for s in self.prefixes}
        for t in self.extensions():
            if self.row(t) not in rows:
                return t
        return None

    def inconsistency(self) -> Optional[str]:
        """A new suffix a·e separating two equal S rows, or None"""
        for i, s1 in enumerate(self.prefixes):
            for s2 in self.prefixes[i + 1:]:
                if self.row(s1) != self.row(s2):
                    continue
                for a in self.alphabet:
                    for e in self.suffixes:
                        if self.ask(s1 + a + e) != self.ask(s2 + a + e):
                            return a + e
        return None

    def add_prefix(self, s: str) -> None:
        if s not in self.prefixes:
            self.prefixes.append(s)

    def add_suffix(self, e: str) -> None:
        if e not in self.suffixes:
            self.suffixes.append(e)

    def close_and_make_consistent(self) -> None:
        self.fill()
        while True:
            missing = self.unclosed_row()
            if missing is not None:
                logger.debug(f"L*: row {missing!r} not closed, adding prefix")
                self.add_prefix(missing)
                self.fill()
                continue
            suffix = self.inconsistency()
            if suffix is not None:
                logger.debug(f"L*: inconsistent table, adding suffix {suffix!r}")
                self.add_suffix(suffix)
                self.fill()
                continue
            return

    def add_counterexample(self, word: str) -> None:
        """Classic prefix-adding: every prefix of the counterexample becomes a row"""
        for i in range(len(word) + 1):
            self.add_prefix(word[:i])
        self.close_and_make_consistent()

    def hypothesis(self) -> Dfa:
        if self.unclosed_row() is not None or self.inconsistency() is not None:
            raise TableNotClosed("Table must be closed and consistent before building a hypothesis")
        states: Dict[Tuple[bool, ...], int] = {}
        for s in self.prefixes:
            states.setdefault(self.row(s), len(states))
        # access word of each state: first prefix with that row
        access = {}
        for s in self.prefixes:
            access.setdefault(states[self.row(s)], s)
        delta = tuple(
            tuple(states[self.row(access[q] + a)] for a in self.alphabet)
            for q in range(len(states))
        )
        accepting = frozenset(q for q in range(len(states)) if self.ask(access[q]))
        return Dfa(len(states), self.alphabet, delta, states[self.row("")], accepting)
