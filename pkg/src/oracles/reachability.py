"""Forward reachability over words: membership answers and unsafe traces.

Exploration is a breadth-first search inside a length window: every init word no
longer than the window is a root, every applicable clause is applied at every
match position, and successors longer than the window are dropped. A finished
exploration of window |w| + C answers "w is not reachable"; hitting the depth or
node cap leaves the answer inconclusive.
"""

import logging
import threading
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple, Union

from src.automata.operations import enumerate_words
from src.frontend.system import ClauseSystem
from src.oracles.matcher import clause_relates, clause_successors

logger = logging.getLogger("strchc")

# (word, clause that produced it); the first step names an init clause
Trace = List[Tuple[str, int]]


@dataclass(frozen=True)
class Inconclusive:
    reason: str


@dataclass(frozen=True)
class NotFound:
    reason: str


Membership = Union[bool, Inconclusive]


@dataclass
class Exploration:
    """Result of one window exploration"""
    window: int
    parents: Dict[str, Tuple[Optional[str], int]] = field(default_factory=dict)
    order: List[str] = field(default_factory=list)
    complete: bool = False
    stop_reason: str = ""

    def derivation(self, word: str) -> Optional[Trace]:
        if word not in self.parents:
            return None
        steps = []
        current: Optional[str] = word
        while current is not None:
            parent, clause_index = self.parents[current]
            steps.append((current, clause_index))
            current = parent
        return list(reversed(steps))


def explore(system: ClauseSystem, window: int, depth_cap: int, node_cap: int) -> Exploration:
    result = Exploration(window)
    frontier = deque()
    for clause in system.init_clauses:
        for word in enumerate_words(system.language_dfa(clause), window):
            if word not in result.parents:
                result.parents[word] = (None, clause.clause_index)
                result.order.append(word)
                frontier.append((word, 0))

    while frontier:
        word, depth = frontier.popleft()
        for clause in system.trans_clauses:
            for nxt in clause_successors(clause, word, system.alphabet, window):
                if len(nxt) > window or nxt in result.parents:
                    continue
                if depth >= depth_cap:
                    result.stop_reason = f"depth cap {depth_cap} reached"
                    return result
                result.parents[nxt] = (word, clause.clause_index)
                result.order.append(nxt)
                if len(result.parents) > node_cap:
                    result.stop_reason = f"node cap {node_cap} reached"
                    return result
                frontier.append((nxt, depth + 1))

    result.complete = True
    return result


def replay_trace(trace: Trace, system: ClauseSystem) -> bool:
    """Check a derivation step by step against the clauses"""
    if not trace:
        return False
    first, init_index = trace[0]
    try:
        init_clause = system.clause(init_index)
        if init_clause not in system.init_clauses or not system.language_dfa(init_clause).accepts(first):
            return False
        for (prev, _), (word, clause_index) in zip(trace, trace[1:]):
            clause = system.clause(clause_index)
            if clause not in system.trans_clauses or not clause_relates(clause, prev, word):
                return False
    except KeyError:
        return False
    return True


class ReachabilityOracle:
    """Membership queries "is w reachable?" answered from cached window explorations"""

    def __init__(self, system: ClauseSystem, length_slack: int = 2,
                 depth_cap: int = 64, node_cap: int = 10 ** 6):
        self.system = system
        self.length_slack = 0 if system.is_length_preserving() else length_slack
        self.depth_cap = depth_cap
        self.node_cap = node_cap
        self._explorations: Dict[int, Exploration] = {}
        self._lock = threading.Lock()

    def exploration(self, window: int) -> Exploration:
        with self._lock:
            cached = self._explorations.get(window)
            if cached is None:
                cached = explore(self.system, window, self.depth_cap, self.node_cap)
                self._explorations[window] = cached
                logger.debug(f"Explored window {window}: {len(cached.parents)} words, "
                             f"complete={cached.complete}")
            return cached

    def window_for(self, word: str) -> int:
        return len(word) + self.length_slack

    def member(self, word: str) -> Membership:
        found = self.exploration(self.window_for(word))
        if word in found.parents:
            return True
        if found.complete:
            return False
        return Inconclusive(found.stop_reason)

    def derivation(self, word: str) -> Optional[Trace]:
        """Stored derivation of a word answered as reachable"""
        return self.exploration(self.window_for(word)).derivation(word)


def member_reachable(word: str, system: ClauseSystem, length_slack: int = 2,
                     depth_cap: int = 64, node_cap: int = 10 ** 6) -> Membership:
    return ReachabilityOracle(system, length_slack, depth_cap, node_cap).member(word)


def find_unsafe_trace(system: ClauseSystem, depth_cap: int = 64, node_cap: int = 10 ** 6,
                      max_window: int = 10) -> Union[Trace, NotFound]:
    """Shortest-window trace from an init word to a bad word.

    Windows grow one letter at a time up to max_window; the
    first window containing a bad word yields the trace of the earliest such word.
    """
    last_reason = f"no bad word within length {max_window}"
    for window in range(max_window + 1):
        found = explore(system, window, depth_cap, node_cap)
        for word in found.order:
            if system.bad_clause_of(word) is not None:
                trace = found.derivation(word)
                logger.info(f"Unsafe trace of {len(trace) - 1} steps reaches {word!r}")
                return trace
        if not found.complete:
            last_reason = found.stop_reason
            break
    return NotFound(last_reason)
