"""Deterministic witness search: lexicographically-least shortest words"""

import heapq
from dataclasses import dataclass
from typing import Callable, Dict, Hashable, Iterable, List, Optional, Tuple

# successor(node) yields (symbol or None for epsilon, next node, tag)
Successors = Callable[[Hashable], Iterable[Tuple[Optional[str], Hashable, object]]]


@dataclass(frozen=True)
class SearchHit:
    node: Hashable
    word: str
    steps: Tuple[Tuple[Optional[str], object], ...]  # (symbol, tag) along the path


def least_word_search(starts: Iterable[Hashable], successors: Successors,
                      is_goal: Callable[[Hashable], bool],
                      node_limit: Optional[int] = None) -> Optional[SearchHit]:
    """Best-first search keyed by (len(word), word).

    The first goal popped is reached by the lexicographically-least word among the
    shortest words reaching any goal. Epsilon moves keep the key unchanged.
    """
    heap: List[Tuple[int, str, int, Hashable]] = []
    parents: Dict[Hashable, Tuple[Optional[Hashable], Optional[str], object]] = {}
    best: Dict[Hashable, Tuple[int, str]] = {}
    counter = 0

    for node in starts:
        if node not in best:
            best[node] = (0, "")
            parents[node] = (None, None, None)
            heapq.heappush(heap, (0, "", counter, node))
            counter += 1

    settled = set()
    while heap:
        length, word, _, node = heapq.heappop(heap)
        if node in settled:
            continue
        settled.add(node)
        if is_goal(node):
            return SearchHit(node, word, _trace(parents, node))
        if node_limit is not None and len(settled) > node_limit:
            return None
        for symbol, nxt, tag in successors(node):
            key = (length, word) if symbol is None else (length + 1, word + symbol)
            if nxt in settled:
                continue
            if nxt not in best or key < best[nxt]:
                best[nxt] = key
                parents[nxt] = (node, symbol, tag)
                heapq.heappush(heap, (key[0], key[1], counter, nxt))
                counter += 1
    return None


def _trace(parents, node) -> Tuple[Tuple[Optional[str], object], ...]:
    steps = []
    while True:
        parent, symbol, tag = parents[node]
        if parent is None:
            break
        steps.append((symbol, tag))
        node = parent
    return tuple(reversed(steps))
