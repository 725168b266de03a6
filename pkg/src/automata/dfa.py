"""Total deterministic automata"""

from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, List, Tuple

from src.automata.nfa import AlphabetMismatch, AutomataError, Nfa, SymbolOutsideAlphabet


@dataclass(frozen=True)
class Dfa:
    """Total DFA; delta[q][i] is the successor of q on alphabet[i]"""

    num_states: int
    alphabet: Tuple[str, ...]
    delta: Tuple[Tuple[int, ...], ...]
    initial: int
    accepting: FrozenSet[int]

    def __post_init__(self):
        if not 0 <= self.initial < self.num_states:
            raise AutomataError(f"Initial state {self.initial} out of range")
        if len(self.delta) != self.num_states:
            raise AutomataError("Transition table does not cover every state")
        for row in self.delta:
            if len(row) != len(self.alphabet) or any(not 0 <= q < self.num_states for q in row):
                raise AutomataError("Transition table is not total")
        if any(not 0 <= q < self.num_states for q in self.accepting):
            raise AutomataError("Accepting state out of range")

    @cached_property
    def symbol_index(self) -> Dict[str, int]:
        return {a: i for i, a in enumerate(self.alphabet)}

    def step(self, state: int, symbol: str) -> int:
        try:
            return self.delta[state][self.symbol_index[symbol]]
        except KeyError:
            raise SymbolOutsideAlphabet(f"Symbol {symbol!r} is not in alphabet {list(self.alphabet)}")

    def run(self, word: str, state: int = None) -> int:
        q = self.initial if state is None else state
        for symbol in word:
            q = self.step(q, symbol)
        return q

    def accepts(self, word: str) -> bool:
        if any(c not in self.symbol_index for c in word):
            return False
        return self.run(word) in self.accepting

    def to_nfa(self) -> Nfa:
        edges = frozenset(
            (q, a, self.delta[q][i]) for q in range(self.num_states) for i, a in enumerate(self.alphabet)
        )
        return Nfa(self.num_states, self.alphabet, edges, frozenset((self.initial,)), self.accepting)

    def require_alphabet(self, other: "Dfa") -> None:
        if self.alphabet != other.alphabet:
            raise AlphabetMismatch(f"{list(self.alphabet)} != {list(other.alphabet)}")

    def to_dot(self, name: str = "invariant") -> str:
        """Render as Graphviz DOT; parallel edges are grouped into one label"""
        lines = [f"digraph {name} {{", "  rankdir=LR;", '  __start [shape=point, label=""];']
        for q in range(self.num_states):
            shape = "doublecircle" if q in self.accepting else "circle"
            lines.append(f'  q{q} [shape={shape}, label="{q}"];')
        lines.append(f"  __start -> q{self.initial};")
        grouped: Dict[Tuple[int, int], List[str]] = {}
        for q in range(self.num_states):
            for i, a in enumerate(self.alphabet):
                grouped.setdefault((q, self.delta[q][i]), []).append(a)
        for (src, dst), symbols in sorted(grouped.items()):
            label = ",".join(_dot_escape(s) for s in symbols)
            lines.append(f'  q{src} -> q{dst} [label="{label}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _dot_escape(symbol: str) -> str:
    if symbol in '"\\':
        return "\\" + symbol
    if not symbol.isprintable():
        return f"\\\\u{{{ord(symbol):x}}}"
    return symbol


def universal_dfa(alphabet: Tuple[str, ...]) -> Dfa:
    return Dfa(1, alphabet, ((0,) * len(alphabet),), 0, frozenset((0,)))


def empty_dfa(alphabet: Tuple[str, ...]) -> Dfa:
    return Dfa(1, alphabet, ((0,) * len(alphabet),), 0, frozenset())
