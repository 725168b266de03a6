"""Image of a regular language under a rewrite rule, and inductiveness witnesses.

For copy-free rules the post-image automaton simulates the hypothesis DFA on the
*input* word while emitting the *output* word. Nodes are

  ("C", j, i, q)  emitting the i-th letter of rhs block v_j; q is the h-state
                  after the input has also consumed lhs block u_j
  ("V", j, q)     reading letters of variable x_j; q tracks the input run.
                  The letter is emitted unless the rule drops x_j.

The jump over u_j is deterministic because h is a DFA; the only guessing is
where a variable ends, encoded as an epsilon move from ("V", j, q).

Copying rules (a variable repeated on the output side) have no regular image in
general. Their witness search reads the input word instead and runs one copy of
the output automaton per repetition, guessing the state each later copy starts
in and checking the guess once the variable is complete.
"""

from collections import deque
from dataclasses import dataclass
from itertools import product
from typing import Dict, Hashable, Iterator, List, Optional, Tuple

from src.automata.dfa import Dfa
from src.automata.nfa import AlphabetMismatch, AutomataError, Nfa
from src.automata.search import least_word_search
from src.frontend.rules import RewriteRule


class NonRegularImage(AutomataError):
    """The rule copies a variable, so its image need not be regular"""


def _require_symbols(h: Dfa, rule: RewriteRule) -> None:
    missing = rule.symbols() - set(h.alphabet)
    if missing:
        raise AlphabetMismatch(f"Rule {rule} uses symbols {sorted(missing)} outside the hypothesis alphabet")


class _PostImageGraph:
    def __init__(self, h: Dfa, rule: RewriteRule):
        _require_symbols(h, rule)
        if not rule.is_copy_free:
            raise NonRegularImage(f"Rule {rule} copies a variable")
        self.h = h
        self.u = rule.lhs_blocks
        self.v = rule.rhs_blocks
        self.emits = (False,) + tuple(c == 1 for c in rule.copy_counts)
        self.k = len(self.u) - 1

    def initial(self) -> Hashable:
        return ("C", 0, 0, self.h.run(self.u[0]))

    def is_final(self, node) -> bool:
        return (node[0] == "C" and node[1] == self.k and node[2] == len(self.v[self.k])
                and node[3] in self.h.accepting)

    def successors(self, node) -> Iterator[Tuple[Optional[str], Hashable, object]]:
        if node[0] == "C":
            _, j, i, q = node
            if i < len(self.v[j]):
                yield self.v[j][i], ("C", j, i + 1, q), None
            elif j < self.k:
                yield None, ("V", j + 1, q), None
        else:
            _, j, q = node
            for idx, a in enumerate(self.h.alphabet):
                yield (a if self.emits[j] else None), ("V", j, self.h.delta[q][idx]), ("x", a)
            yield None, ("C", j, 0, self.h.run(self.u[j], q)), ("u", j)


def post_image(h: Dfa, rule: RewriteRule) -> Nfa:
    """NFA for { rhs[σ] : lhs[σ] ∈ L(h) }; raises NonRegularImage for copying rules"""
    graph = _PostImageGraph(h, rule)
    start = graph.initial()
    index: Dict[Hashable, int] = {start: 0}
    queue = deque([start])
    edges = set()
    accepting = set()
    while queue:
        node = queue.popleft()
        if graph.is_final(node):
            accepting.add(index[node])
        for symbol, nxt, _ in graph.successors(node):
            if nxt not in index:
                index[nxt] = len(index)
                queue.append(nxt)
            edges.add((index[node], symbol, index[nxt]))
    return Nfa(len(index), h.alphabet, frozenset(edges), frozenset((0,)), frozenset(accepting))


@dataclass(frozen=True)
class ImageWitness:
    w_in: str
    w_out: str


def post_image_witness(h: Dfa, rule: RewriteRule, target: Optional[Dfa] = None) -> Optional[ImageWitness]:
    """A pair (w_in, w_out) related by the rule with w_in ∈ L(h) and w_out ∉ L(target).

    target defaults to h. For copy-free rules w_out is the least shortest such
    word; for copying rules w_in is.
    """
    target = h if target is None else target
    h.require_alphabet(target)
    if rule.is_copy_free:
        return _emitting_witness(h, rule, target)
    return _copying_witness(h, rule, target)


def _emitting_witness(h: Dfa, rule: RewriteRule, target: Dfa) -> Optional[ImageWitness]:
    graph = _PostImageGraph(h, rule)

    def successors(pair):
        node, out = pair
        for symbol, nxt, tag in graph.successors(node):
            out_next = out if symbol is None else target.delta[out][target.symbol_index[symbol]]
            yield symbol, (nxt, out_next), tag

    hit = least_word_search(
        [(graph.initial(), target.initial)], successors,
        lambda pair: graph.is_final(pair[0]) and pair[1] not in target.accepting,
    )
    if hit is None:
        return None

    # the input word is rebuilt from the tags on the witness path
    pieces = [graph.u[0]]
    for _, tag in hit.steps:
        if tag is None:
            continue
        if tag[0] == "x":
            pieces.append(tag[1])
        else:
            pieces.append(graph.u[tag[1]])
    return ImageWitness("".join(pieces), hit.word)


class _CopyingSearch:
    """Input-driven product search for rules that repeat a variable.

    Nodes:
      ("U", j, i, a, o)            spelling lhs block u_j; a is the h-state, o the output state
      ("S", j, a, o)               about to read variable x_j
      ("X", j, a, runs, guesses)   reading x_j; runs[i] is the output state of the i-th copy,
                                   guesses[i] the guessed start state of copy i+1
      ("F", a, o)                  input complete
    """

    def __init__(self, h: Dfa, rule: RewriteRule, target: Dfa):
        _require_symbols(h, rule)
        self.h = h
        self.target = target
        self.u = rule.lhs_blocks
        self.k = len(self.u) - 1
        prefix, self.copies = rule.rhs_layout
        self.prefix_state = target.run(prefix)

    def initial(self) -> Hashable:
        return ("U", 0, 0, self.h.initial, self.prefix_state)

    def _after_block(self, j: int, a: int, o: int) -> Hashable:
        return ("S", j, a, o) if j < self.k else ("F", a, o)

    def is_goal(self, node) -> bool:
        return node[0] == "F" and node[1] in self.h.accepting and node[2] not in self.target.accepting

    def successors(self, node) -> Iterator[Tuple[Optional[str], Hashable, object]]:
        h, t = self.h, self.target
        kind = node[0]
        if kind == "U":
            _, j, i, a, o = node
            block = self.u[j]
            if i < len(block):
                yield block[i], ("U", j, i + 1, h.step(a, block[i]), o), None
            else:
                yield None, self._after_block(j, a, o), None
        elif kind == "S":
            _, j, a, o = node
            count = len(self.copies[j])
            if count == 0:
                yield None, ("X", j, a, (o,), ()), None
                return
            for guesses in product(range(t.num_states), repeat=count - 1):
                yield None, ("X", j, a, (o,) + guesses, guesses), None
        elif kind == "X":
            _, j, a, runs, guesses = node
            for idx, sym in enumerate(h.alphabet):
                moved = tuple(t.delta[r][idx] for r in runs) if self.copies[j] else runs
                yield sym, ("X", j, h.delta[a][idx], moved, guesses), ("x", j)
            consts = self.copies[j]
            if not consts:
                yield None, ("U", j + 1, 0, a, runs[0]), ("end", j)
                return
            ends = [t.run(c, r) for c, r in zip(consts, runs)]
            if all(ends[i] == guesses[i] for i in range(len(guesses))):
                yield None, ("U", j + 1, 0, a, ends[-1]), ("end", j)

    def values(self, steps) -> Tuple[str, ...]:
        values: List[str] = []
        current: List[str] = []
        for symbol, tag in steps:
            if tag is None:
                continue
            if tag[0] == "x":
                current.append(symbol)
            else:
                values.append("".join(current))
                current = []
        return tuple(values)


def _copying_witness(h: Dfa, rule: RewriteRule, target: Dfa) -> Optional[ImageWitness]:
    search = _CopyingSearch(h, rule, target)
    hit = least_word_search([search.initial()], search.successors, search.is_goal)
    if hit is None:
        return None
    return ImageWitness(hit.word, rule.instantiate(search.values(hit.steps)))
