"""CNF encoding of "an n-state DFA consistent with the sample".

Variables:
  t(q, a, q')  transition from q on a goes to q'  (exactly one q' per (q, a))
  f(q)         q is accepting
  r(u, q)      the run on prefix u may end in q   (u ranges over sample prefixes)
  i(k)         the k-th implication's input word is accepted
Optional symmetry breaking fixes state numbers to BFS order.
"""

from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from pysat.card import CardEnc, EncType
from pysat.formula import CNF, IDPool

from src.automata.dfa import Dfa
from src.learners.sample import Sample


def prefix_closure(words) -> List[str]:
    prefixes = {""}
    for w in words:
        for i in range(1, len(w) + 1):
            prefixes.add(w[:i])
    return sorted(prefixes, key=lambda p: (len(p), p))


@dataclass
class Encoding:
    cnf: CNF
    pool: IDPool
    num_states: int
    alphabet: Tuple[str, ...]
    prefixes: List[str]
    sample: Sample

    def t(self, q: int, a: str, p: int) -> int:
        return self.pool.id(("t", q, a, p))

    def f(self, q: int) -> int:
        return self.pool.id(("f", q))

    def r(self, u: str, q: int) -> int:
        return self.pool.id(("r", u, q))

    def decode(self, model: Sequence[int]) -> Dfa:
        """Hypothesis read off a model.

        Transitions no sample run uses go to state 0; states no sample word ends
        in are accepting.
        """
        true = {lit for lit in model if lit > 0}
        n, sigma = self.num_states, self.alphabet
        delta = [[0] * len(sigma) for _ in range(n)]
        for q in range(n):
            for ai, a in enumerate(sigma):
                delta[q][ai] = next((p for p in range(n) if self.t(q, a, p) in true), 0)

        used = set()
        ends = set()
        sample_words = self.sample.words()
        for word in self.prefixes:
            q = 0
            for a in word:
                ai = sigma.index(a)
                used.add((q, ai))
                q = delta[q][ai]
            if word in sample_words:
                ends.add(q)
        for q in range(n):
            for ai in range(len(sigma)):
                if (q, ai) not in used:
                    delta[q][ai] = 0

        accepting = frozenset(q for q in range(n) if q not in ends or self.f(q) in true)
        return Dfa(n, sigma, tuple(tuple(row) for row in delta), 0, accepting)


def _exactly_one(cnf: CNF, lits: List[int], pool: IDPool) -> None:
    enc = CardEnc.equals(lits=lits, bound=1, vpool=pool, encoding=EncType.pairwise)
    cnf.extend(enc.clauses)


def _symmetry_breaking(enc: Encoding) -> None:
    """BFS-tree ordering: state j > 0 has a parent p(j) < j, parents are monotone,
    siblings are ordered by their least connecting symbol."""
    cnf, pool, n, sigma = enc.cnf, enc.pool, enc.num_states, enc.alphabet

    def edge(i, j):
        return pool.id(("e", i, j))

    def parent(j, i):
        return pool.id(("p", j, i))

    def minsym(i, a, j):
        return pool.id(("m", i, a, j))

    for i in range(n):
        for j in range(n):
            lits = [enc.t(i, a, j) for a in sigma]
            cnf.append([-edge(i, j)] + lits)
            for lit in lits:
                cnf.append([edge(i, j), -lit])
            for ai, a in enumerate(sigma):
                # m(i,a,j) <-> t(i,a,j) and no smaller symbol leads from i to j
                smaller = [enc.t(i, b, j) for b in sigma[:ai]]
                cnf.append([-minsym(i, a, j), enc.t(i, a, j)])
                for lit in smaller:
                    cnf.append([-minsym(i, a, j), -lit])
                cnf.append([minsym(i, a, j), -enc.t(i, a, j)] + smaller)

    for j in range(1, n):
        _exactly_one(cnf, [parent(j, i) for i in range(j)], pool)
        for i in range(j):
            # p(j,i) <-> e(i,j) and no k < i with e(k,j)
            cnf.append([-parent(j, i), edge(i, j)])
            for k in range(i):
                cnf.append([-parent(j, i), -edge(k, j)])
            cnf.append([parent(j, i), -edge(i, j)] + [edge(k, j) for k in range(i)])

    for j in range(1, n - 1):
        for i in range(j):
            for k in range(i):
                cnf.append([-parent(j, i), -parent(j + 1, k)])
            for ai, a in enumerate(sigma):
                for b in sigma[ai + 1:]:
                    cnf.append([-parent(j, i), -parent(j + 1, i), -minsym(i, a, j + 1), -minsym(i, b, j)])


def encode(sample: Sample, num_states: int, alphabet: Sequence[str],
           symmetry_breaking: bool = False) -> Encoding:
    if num_states < 1:
        raise ValueError("State count must be at least 1")
    sigma = tuple(alphabet)
    prefixes = prefix_closure(sample.words())
    enc = Encoding(CNF(), IDPool(), num_states, sigma, prefixes, sample)
    cnf, n = enc.cnf, num_states

    # reserve the transition and acceptance variables first so their ids are stable
    for q in range(n):
        enc.f(q)
        for a in sigma:
            for p in range(n):
                enc.t(q, a, p)

    for q in range(n):
        for a in sigma:
            _exactly_one(cnf, [enc.t(q, a, p) for p in range(n)], enc.pool)

    cnf.append([enc.r("", 0)])
    for q in range(1, n):
        cnf.append([-enc.r("", q)])
    for u in prefixes[1:]:
        base, a = u[:-1], u[-1]
        for q in range(n):
            for p in range(n):
                cnf.append([-enc.r(base, q), -enc.t(q, a, p), enc.r(u, p)])

    for w in sorted(sample.pos):
        for q in range(n):
            cnf.append([-enc.r(w, q), enc.f(q)])
    for w in sorted(sample.neg):
        for q in range(n):
            cnf.append([-enc.r(w, q), -enc.f(q)])
    for k, (w_in, w_out, _) in enumerate(sorted(sample.imp)):
        accepted = enc.pool.id(("i", k))
        for q in range(n):
            cnf.append([-enc.r(w_in, q), -enc.f(q), accepted])
            cnf.append([-accepted, -enc.r(w_out, q), enc.f(q)])

    if symmetry_breaking and n > 1:
        _symmetry_breaking(enc)
    return enc


def variable_summary(enc: Encoding) -> Dict[str, int]:
    return {"variables": enc.pool.top, "clauses": len(enc.cnf.clauses), "states": enc.num_states}

