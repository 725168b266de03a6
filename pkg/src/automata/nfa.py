"""Nondeterministic automata and the Thompson construction from regexes"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from src.automata.regex import (
    AllChar, Concat, EmptySet, Epsilon, Opt, Plus, Range, Regex, Star, Sym, Union,
)


class AutomataError(Exception):
    """Base class for automata construction errors"""
    pass


class SymbolOutsideAlphabet(AutomataError):
    pass


class AlphabetMismatch(AutomataError):
    pass


Transition = Tuple[int, Optional[str], int]


@dataclass(frozen=True)
class Nfa:
    """NFA with epsilon moves; a transition symbol of None is an epsilon move"""

    num_states: int
    alphabet: Tuple[str, ...]
    transitions: FrozenSet[Transition]
    initials: FrozenSet[int]
    accepting: FrozenSet[int]

    def __post_init__(self):
        for src, _, dst in self.transitions:
            if not (0 <= src < self.num_states and 0 <= dst < self.num_states):
                raise AutomataError(f"Transition ({src}, {dst}) references an unknown state")
        if any(not 0 <= q < self.num_states for q in self.initials | self.accepting):
            raise AutomataError("Initial/accepting state out of range")

    @cached_property
    def adjacency(self) -> Dict[int, List[Tuple[Optional[str], int]]]:
        adj: Dict[int, List[Tuple[Optional[str], int]]] = {q: [] for q in range(self.num_states)}
        for src, sym, dst in sorted(self.transitions, key=lambda t: (t[0], t[1] or "", t[2])):
            adj[src].append((sym, dst))
        return adj

    def epsilon_closure(self, states: Iterable[int]) -> FrozenSet[int]:
        closure: Set[int] = set(states)
        stack = list(closure)
        while stack:
            q = stack.pop()
            for sym, dst in self.adjacency[q]:
                if sym is None and dst not in closure:
                    closure.add(dst)
                    stack.append(dst)
        return frozenset(closure)

    def step(self, states: FrozenSet[int], symbol: str) -> FrozenSet[int]:
        moved = {dst for q in states for sym, dst in self.adjacency[q] if sym == symbol}
        return self.epsilon_closure(moved)

    def accepts(self, word: str) -> bool:
        current = self.epsilon_closure(self.initials)
        for symbol in word:
            current = self.step(current, symbol)
            if not current:
                return False
        return bool(current & self.accepting)


@dataclass
class _Builder:
    """Accumulates states and transitions during a construction"""

    alphabet: Tuple[str, ...]
    count: int = 0
    edges: Set[Transition] = field(default_factory=set)

    def new_state(self) -> int:
        self.count += 1
        return self.count - 1

    def add(self, src: int, symbol: Optional[str], dst: int) -> None:
        self.edges.add((src, symbol, dst))

    def build(self, initials: Iterable[int], accepting: Iterable[int]) -> Nfa:
        return Nfa(self.count, self.alphabet, frozenset(self.edges),
                   frozenset(initials), frozenset(accepting))


def regex_to_nfa(regex: Regex, alphabet: Iterable[str]) -> Nfa:
    """Thompson construction; AllChar ranges over `alphabet`"""
    sigma = tuple(sorted(set(alphabet)))
    outside = regex.symbols() - set(sigma)
    if outside:
        raise SymbolOutsideAlphabet(f"Symbols {sorted(outside)} are not in alphabet {list(sigma)}")

    builder = _Builder(sigma)

    def fragment(node: Regex) -> Tuple[int, int]:
        start, end = builder.new_state(), builder.new_state()
        if isinstance(node, EmptySet):
            pass
        elif isinstance(node, Epsilon):
            builder.add(start, None, end)
        elif isinstance(node, Sym):
            builder.add(start, node.char, end)
        elif isinstance(node, Range):
            for ch in node.chars():
                builder.add(start, ch, end)
        elif isinstance(node, AllChar):
            for ch in sigma:
                builder.add(start, ch, end)
        elif isinstance(node, Concat):
            previous = start
            for part in node.parts:
                s, e = fragment(part)
                builder.add(previous, None, s)
                previous = e
            builder.add(previous, None, end)
        elif isinstance(node, Union):
            for part in node.parts:
                s, e = fragment(part)
                builder.add(start, None, s)
                builder.add(e, None, end)
        elif isinstance(node, (Star, Plus, Opt)):
            s, e = fragment(node.child)
            builder.add(start, None, s)
            builder.add(e, None, end)
            if not isinstance(node, Opt):
                builder.add(e, None, s)
            if not isinstance(node, Plus):
                builder.add(start, None, end)
        else:
            raise AutomataError(f"Unknown regex node {type(node).__name__}")
        return start, end

    start, end = fragment(regex)
    return builder.build([start], [end])
