"""Tests for regexes, NFAs, DFAs and the core DFA operations"""

import random
from itertools import product

import pytest

from src.automata.dfa import Dfa, empty_dfa, universal_dfa
from src.automata.nfa import AlphabetMismatch, AutomataError, Nfa, SymbolOutsideAlphabet, regex_to_nfa
from src.automata.operations import (
    Equal, StateBlowupLimit, Witness, compile_regex, complement, determinize, dfa_equivalent,
    enumerate_words, intersection_witness, is_empty, minimize, product_intersect, product_union,
    shortest_word,
)
from src.automata.regex import AllChar, EmptySet, Epsilon, Star, Sym, concat, literal, star, union

AB = ("a", "b")


def ends_with_abb():
    return concat(star(union(Sym("a"), Sym("b"))), literal("abb"))


class TestRegex:
    """Smart constructors and rendering"""

    def test_concat_flattens_and_drops_epsilon(self):
        r = concat(Sym("a"), Epsilon(), concat(Sym("b"), Sym("c")))
        assert r == literal("abc")

    def test_concat_with_empty_set_is_empty(self):
        assert concat(Sym("a"), EmptySet()) == EmptySet()

    def test_union_removes_duplicates_and_empty(self):
        assert union(Sym("a"), EmptySet(), Sym("a")) == Sym("a")
        assert union() == EmptySet()

    def test_star_of_star_collapses(self):
        assert star(star(Sym("a"))) == Star(Sym("a"))
        assert star(Epsilon()) == Epsilon()

    def test_symbols_and_rendering(self):
        r = concat(Sym("a"), star(union(Sym("b"), Sym("c"))))
        assert r.symbols() == frozenset("abc")
        assert str(r) == "a(b|c)*"


class TestNfa:
    """Thompson construction"""

    def test_literal_acceptance(self):
        nfa = regex_to_nfa(literal("ab"), AB)
        assert nfa.accepts("ab")
        assert not nfa.accepts("a")
        assert not nfa.accepts("abb")

    def test_allchar_ranges_over_alphabet(self):
        nfa = regex_to_nfa(concat(AllChar(), Sym("a")), ("a", "b", "c"))
        assert nfa.accepts("ca")
        assert not nfa.accepts("a")

    def test_symbol_outside_alphabet(self):
        with pytest.raises(SymbolOutsideAlphabet):
            regex_to_nfa(literal("z"), AB)


class TestDfa:
    """Construction invariants and simulation"""

    def test_partial_table_is_rejected(self):
        with pytest.raises(AutomataError):
            Dfa(2, AB, ((0, 1), (1,)), 0, frozenset())

    def test_initial_out_of_range(self):
        with pytest.raises(AutomataError):
            Dfa(1, AB, ((0, 0),), 3, frozenset())

    def test_run_and_accepts(self):
        parity = Dfa(2, ("a",), ((1,), (0,)), 0, frozenset({0}))
        assert parity.accepts("aa")
        assert not parity.accepts("aaa")
        assert not parity.accepts("ab")  # foreign symbol
        assert parity.run("a") == 1

    def test_universal_and_empty(self):
        assert universal_dfa(AB).accepts("abba")
        assert not empty_dfa(AB).accepts("")

    def test_to_dot(self):
        dot = universal_dfa(AB).to_dot("inv")
        assert dot.startswith("digraph inv {")
        assert "doublecircle" in dot
        assert 'label="a,b"' in dot


class TestOperations:
    """Subset construction, minimization, products and witnesses"""

    def test_minimal_dfa_of_abb(self):
        d = compile_regex(ends_with_abb(), AB)
        assert d.num_states == 4
        assert d.accepts("babb")
        assert not d.accepts("abab")

    def test_minimize_is_idempotent(self):
        d = compile_regex(ends_with_abb(), AB)
        assert minimize(d) == d

    def test_subset_cap(self):
        with pytest.raises(StateBlowupLimit):
            determinize(regex_to_nfa(ends_with_abb(), AB), max_states=2)

    def test_complement(self):
        d = compile_regex(literal("a"), AB)
        c = complement(d)
        assert not c.accepts("a")
        assert c.accepts("") and c.accepts("b")

    def test_products(self):
        a_first = compile_regex(concat(Sym("a"), star(AllChar())), AB)
        b_last = compile_regex(concat(star(AllChar()), Sym("b")), AB)
        both = product_intersect(a_first, b_last)
        either = product_union(a_first, b_last)
        assert both.accepts("ab") and not both.accepts("a")
        assert either.accepts("a") and either.accepts("b") and not either.accepts("")

    def test_product_alphabet_mismatch(self):
        with pytest.raises(AlphabetMismatch):
            product_intersect(universal_dfa(AB), universal_dfa(("a",)))

    def test_shortest_word_is_least(self):
        d = compile_regex(union(literal("bb"), literal("ab"), literal("b")), AB)
        assert shortest_word(d) == "b"
        d = compile_regex(union(literal("bb"), literal("ab")), AB)
        assert shortest_word(d) == "ab"

    def test_is_empty(self):
        assert is_empty(compile_regex(EmptySet(), AB))
        assert not is_empty(compile_regex(Epsilon(), AB))

    def test_equivalence_witness(self):
        x = compile_regex(star(Sym("a")), AB)
        y = compile_regex(star(literal("aa")), AB)
        assert isinstance(dfa_equivalent(x, x), Equal)
        assert dfa_equivalent(x, y) == Witness("a")

    def test_intersection_witness(self):
        x = compile_regex(star(Sym("a")), AB)
        y = compile_regex(concat(Sym("a"), Sym("a"), star(Sym("a"))), AB)
        assert intersection_witness(x, y) == "aa"
        assert intersection_witness(x, compile_regex(Sym("b"), AB)) is None

    def test_enumerate_words_order(self):
        d = universal_dfa(AB)
        assert list(enumerate_words(d, 2)) == ["", "a", "b", "aa", "ab", "ba", "bb"]

    def test_enumerate_words_prunes(self):
        d = compile_regex(literal("ba"), AB)
        assert list(enumerate_words(d, 5)) == ["ba"]


def random_dfa(rng, max_states=5):
    n = rng.randint(1, max_states)
    delta = tuple(tuple(rng.randrange(n) for _ in AB) for _ in range(n))
    return Dfa(n, AB, delta, 0, frozenset(q for q in range(n) if rng.random() < 0.5))


def random_nfa(rng, max_states=5):
    n = rng.randint(1, max_states)
    transitions = frozenset(
        (p, sym, q) for p in range(n) for sym in (None, "a", "b") for q in range(n)
        if rng.random() < (0.1 if sym is None else 0.3)
    )
    initials = frozenset({0} | {q for q in range(n) if rng.random() < 0.2})
    return Nfa(n, AB, transitions, initials, frozenset(q for q in range(n) if rng.random() < 0.4))


def disguise(rng, d):
    """Same language, different table: a split state, an unreachable state, shuffled numbering"""
    n = d.num_states
    rows = [list(row) for row in d.delta]
    # copy of state 0 that takes over its self-loops and edges from even states
    rows.append(list(d.delta[0]))
    for p in range(n + 1):
        for i, q in enumerate(rows[p]):
            if q == 0 and p % 2 == 0:
                rows[p][i] = n
    rows.append([rng.randrange(n + 2) for _ in AB])
    accepting = set(d.accepting) | ({n} if 0 in d.accepting else set()) | {n + 1}
    order = list(range(n + 2))
    rng.shuffle(order)
    rename = {old: new for new, old in enumerate(order)}
    delta = [None] * (n + 2)
    for old, row in enumerate(rows):
        delta[rename[old]] = tuple(rename[q] for q in row)
    return Dfa(n + 2, AB, tuple(delta), rename[0], frozenset(rename[q] for q in accepting))


ALL_WORDS = [w for n in range(13) for w in ("".join(p) for p in product(AB, repeat=n))]


class TestOperationProperties:
    """Operations on random automata agree with word enumeration up to length 12"""

    def test_determinize(self):
        rng = random.Random(7)
        for _ in range(15):
            nfa = random_nfa(rng)
            d = determinize(nfa)
            assert all(d.accepts(w) == nfa.accepts(w) for w in ALL_WORDS)

    def test_boolean_operations(self):
        rng = random.Random(8)
        for _ in range(15):
            a, b = random_dfa(rng), random_dfa(rng)
            both, either, neg = product_intersect(a, b), product_union(a, b), complement(a)
            for w in ALL_WORDS:
                x, y = a.accepts(w), b.accepts(w)
                assert both.accepts(w) == (x and y)
                assert either.accepts(w) == (x or y)
                assert neg.accepts(w) == (not x)

    def test_emptiness_and_equivalence(self):
        rng = random.Random(9)
        for _ in range(25):
            a, b = random_dfa(rng), random_dfa(rng)
            assert is_empty(a) == (not any(a.accepts(w) for w in ALL_WORDS))
            differ = next((w for w in ALL_WORDS if a.accepts(w) != b.accepts(w)), None)
            verdict = dfa_equivalent(a, b)
            if differ is None:
                # automata with n and m states that differ already do so below length n + m - 1
                assert isinstance(verdict, Equal)
            else:
                assert verdict == Witness(differ)

    def test_minimal_automata_are_canonical(self):
        rng = random.Random(10)
        for _ in range(40):
            d = random_dfa(rng)
            other = disguise(rng, d)
            assert other != d
            assert all(other.accepts(w) == d.accepts(w) for w in ALL_WORDS)
            assert minimize(other) == minimize(d)
            assert minimize(d).num_states <= d.num_states
