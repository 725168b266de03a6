"""Core DFA constructions: subset construction, Hopcroft minimization, products, witnesses"""

import logging
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, Iterator, List, Optional, Set, Tuple

from src.automata.dfa import Dfa
from src.automata.nfa import AutomataError, Nfa, regex_to_nfa
from src.automata.regex import Regex
from src.automata.search import least_word_search

logger = logging.getLogger("strchc")

DEFAULT_SUBSET_CAP = 2 ** 16
_subset_cap = DEFAULT_SUBSET_CAP


class StateBlowupLimit(AutomataError):
    pass


@dataclass(frozen=True)
class Equal:
    """Result of an equivalence check when the languages coincide"""
    pass


@dataclass(frozen=True)
class Witness:
    word: str


def set_subset_cap(cap: int) -> None:
    """Process-wide default limit for subset constructions"""
    global _subset_cap
    if cap < 1:
        raise ValueError("subset cap must be positive")
    _subset_cap = cap


def determinize(nfa: Nfa, max_states: Optional[int] = None) -> Dfa:
    """Subset construction; the empty subset becomes an explicit sink"""
    max_states = max_states or _subset_cap
    start = nfa.epsilon_closure(nfa.initials)
    index: Dict[FrozenSet[int], int] = {start: 0}
    order: List[FrozenSet[int]] = [start]
    rows: List[Tuple[int, ...]] = []
    queue = deque([start])

    while queue:
        subset = queue.popleft()
        row = []
        for symbol in nfa.alphabet:
            target = nfa.step(subset, symbol)
            if target not in index:
                if len(order) >= max_states:
                    raise StateBlowupLimit(f"Subset construction exceeded {max_states} states")
                index[target] = len(order)
                order.append(target)
                queue.append(target)
            row.append(index[target])
        rows.append(tuple(row))

    accepting = frozenset(i for i, subset in enumerate(order) if subset & nfa.accepting)
    return Dfa(len(order), nfa.alphabet, tuple(rows), 0, accepting)


def _reachable(d: Dfa) -> List[int]:
    seen = {d.initial}
    order = [d.initial]
    queue = deque([d.initial])
    while queue:
        q = queue.popleft()
        for target in d.delta[q]:
            if target not in seen:
                seen.add(target)
                order.append(target)
                queue.append(target)
    return order


def _hopcroft_partition(d: Dfa, states: List[int]) -> Dict[int, int]:
    """Coarsest stable partition of `states`; returns state -> block id"""
    state_set = set(states)
    inverse: Dict[Tuple[int, int], Set[int]] = {}
    for q in states:
        for i, target in enumerate(d.delta[q]):
            inverse.setdefault((i, target), set()).add(q)

    final = frozenset(q for q in states if q in d.accepting)
    non_final = frozenset(state_set - final)
    partition: Set[FrozenSet[int]] = {b for b in (final, non_final) if b}
    if len(partition) <= 1:
        return {q: 0 for q in states}

    block_of = {q: block for block in partition for q in block}
    work = {final if len(final) <= len(non_final) else non_final}

    while work:
        splitter = work.pop()
        for i in range(len(d.alphabet)):
            affected: Dict[FrozenSet[int], Set[int]] = {}
            for target in splitter:
                for q in inverse.get((i, target), ()):
                    affected.setdefault(block_of[q], set()).add(q)
            for block, overlap in affected.items():
                if len(overlap) == len(block):
                    continue
                part1 = frozenset(overlap)
                part2 = block - part1
                partition.remove(block)
                partition.update((part1, part2))
                for q in part1:
                    block_of[q] = part1
                for q in part2:
                    block_of[q] = part2
                if block in work:
                    work.remove(block)
                    work.update((part1, part2))
                else:
                    work.add(part1 if len(part1) <= len(part2) else part2)

    ids = {block: n for n, block in enumerate(partition)}
    return {q: ids[block_of[q]] for q in states}


def minimize(d: Dfa) -> Dfa:
    """Minimal DFA, states numbered in BFS order from the initial state (symbol order)"""
    states = _reachable(d)
    block = _hopcroft_partition(d, states)

    representative: Dict[int, int] = {}
    for q in states:
        representative.setdefault(block[q], q)

    numbering = {block[d.initial]: 0}
    order = [block[d.initial]]
    queue = deque(order)
    while queue:
        b = queue.popleft()
        for target in d.delta[representative[b]]:
            tb = block[target]
            if tb not in numbering:
                numbering[tb] = len(order)
                order.append(tb)
                queue.append(tb)

    rows = tuple(
        tuple(numbering[block[t]] for t in d.delta[representative[b]]) for b in order
    )
    accepting = frozenset(numbering[b] for b in order if representative[b] in d.accepting)
    return Dfa(len(order), d.alphabet, rows, 0, accepting)


def complement(d: Dfa) -> Dfa:
    return Dfa(d.num_states, d.alphabet, d.delta, d.initial,
               frozenset(range(d.num_states)) - d.accepting)


def _product(a: Dfa, b: Dfa, accept) -> Dfa:
    a.require_alphabet(b)
    start = (a.initial, b.initial)
    index = {start: 0}
    order = [start]
    rows = []
    queue = deque([start])
    while queue:
        p, q = queue.popleft()
        row = []
        for i in range(len(a.alphabet)):
            pair = (a.delta[p][i], b.delta[q][i])
            if pair not in index:
                index[pair] = len(order)
                order.append(pair)
                queue.append(pair)
            row.append(index[pair])
        rows.append(tuple(row))
    accepting = frozenset(
        n for n, (p, q) in enumerate(order) if accept(p in a.accepting, q in b.accepting)
    )
    return Dfa(len(order), a.alphabet, tuple(rows), 0, accepting)


def product_intersect(a: Dfa, b: Dfa) -> Dfa:
    return _product(a, b, lambda x, y: x and y)


def product_union(a: Dfa, b: Dfa) -> Dfa:
    return _product(a, b, lambda x, y: x or y)


def _dfa_successors(d: Dfa):
    def successors(q):
        for i, a in enumerate(d.alphabet):
            yield a, d.delta[q][i], None
    return successors


def shortest_word(d: Dfa) -> Optional[str]:
    """Lexicographically-least shortest accepted word, or None"""
    hit = least_word_search([d.initial], _dfa_successors(d), lambda q: q in d.accepting)
    return None if hit is None else hit.word


def is_empty(d: Dfa) -> bool:
    return shortest_word(d) is None


def dfa_equivalent(a: Dfa, b: Dfa):
    """Equal() or Witness(least shortest word of the symmetric difference)"""
    a.require_alphabet(b)

    def successors(pair):
        p, q = pair
        for i, sym in enumerate(a.alphabet):
            yield sym, (a.delta[p][i], b.delta[q][i]), None

    hit = least_word_search(
        [(a.initial, b.initial)], successors,
        lambda pair: (pair[0] in a.accepting) != (pair[1] in b.accepting),
    )
    return Equal() if hit is None else Witness(hit.word)


def intersection_witness(a: Dfa, b: Dfa) -> Optional[str]:
    """Least shortest word in L(a) ∩ L(b) without materializing the product"""
    a.require_alphabet(b)

    def successors(pair):
        p, q = pair
        for i, sym in enumerate(a.alphabet):
            yield sym, (a.delta[p][i], b.delta[q][i]), None

    hit = least_word_search(
        [(a.initial, b.initial)], successors,
        lambda pair: pair[0] in a.accepting and pair[1] in b.accepting,
    )
    return None if hit is None else hit.word


def enumerate_words(d: Dfa, max_len: int) -> Iterator[str]:
    """Accepted words of length <= max_len, by increasing length then lexicographically"""
    # co-reachability distance prunes branches that cannot accept in time
    distance = {q: 0 for q in d.accepting}
    frontier = set(d.accepting)
    depth = 0
    while frontier and depth < max_len:
        depth += 1
        frontier = {
            q for q in range(d.num_states)
            if q not in distance and any(t in frontier for t in d.delta[q])
        }
        for q in frontier:
            distance[q] = depth

    for length in range(max_len + 1):
        layer = [("", d.initial)]
        for position in range(length):
            remaining = length - position - 1
            nxt = []
            for word, q in layer:
                for i, a in enumerate(d.alphabet):
                    t = d.delta[q][i]
                    if distance.get(t, max_len + 1) <= remaining:
                        nxt.append((word + a, t))
            layer = nxt
        for word, q in layer:
            if q in d.accepting:
                yield word


@lru_cache(maxsize=1024)
def compile_regex(regex: Regex, alphabet: Tuple[str, ...],
                  max_states: Optional[int] = None) -> Dfa:
    """Minimal DFA of a regex over `alphabet` (memoized; regex nodes are hashable)"""
    return minimize(determinize(regex_to_nfa(regex, alphabet), max_states))
