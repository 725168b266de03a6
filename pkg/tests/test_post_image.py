"""Tests for rule post-images and inductiveness witnesses, checked against brute force"""

import random
from itertools import product
from pathlib import Path

import pytest

from src.automata.dfa import Dfa, universal_dfa
from src.automata.post_image import NonRegularImage, post_image, post_image_witness
from src.frontend.parser import parse_file
from src.frontend.rules import Const, RewriteRule, Var

BENCHMARKS = Path(__file__).parent.parent / "benchmarks"
CORPUS = sorted(p.stem for p in BENCHMARKS.glob("*.smt2"))


def words(alphabet, max_len):
    for n in range(max_len + 1):
        for letters in product(alphabet, repeat=n):
            yield "".join(letters)


def random_dfa(rng, alphabet, max_states=4):
    n = rng.randint(1, max_states)
    delta = tuple(tuple(rng.randrange(n) for _ in alphabet) for _ in range(n))
    accepting = frozenset(q for q in range(n) if rng.random() < 0.5)
    return Dfa(n, alphabet, delta, 0, accepting)


def key(word):
    return len(word), word


def brute_images(h, rule, max_in):
    image = {}
    for w_in in words(h.alphabet, max_in):
        if h.accepts(w_in):
            for w_out in rule.apply(w_in):
                image.setdefault(w_out, w_in)
    return image


class TestPostImage:
    """NFA image of copy-free rules"""

    @pytest.mark.parametrize("name", CORPUS)
    def test_image_matches_brute_force(self, name):
        system = parse_file(BENCHMARKS / f"{name}.smt2")
        rng = random.Random(name)
        outputs = list(words(system.alphabet, 8))
        for clause_index, rule in system.rules:
            if not rule.is_copy_free:
                with pytest.raises(NonRegularImage):
                    post_image(universal_dfa(system.alphabet), rule)
                continue
            assert rule.is_linear, clause_index
            shrink = sum(map(len, rule.lhs_blocks)) - sum(map(len, rule.rhs_blocks))
            max_in = 8 + max(shrink, 0)
            for _ in range(3):
                h = random_dfa(rng, system.alphabet)
                image = brute_images(h, rule, max_in)
                nfa = post_image(h, rule)
                for w in outputs:
                    assert nfa.accepts(w) == (w in image), (str(rule), w)

    def test_copying_rule_has_no_image_automaton(self):
        rule = RewriteRule.of([Const("M"), Var(0)], [Const("M"), Var(0), Var(0)])
        with pytest.raises(NonRegularImage):
            post_image(universal_dfa(("I", "M", "U")), rule)

    def test_universal_hypothesis_is_closed(self, mu_system):
        h = universal_dfa(mu_system.alphabet)
        for _, rule in mu_system.rules:
            assert post_image_witness(h, rule) is None


class TestWitness:
    """Witness pairs are valid and minimal"""

    def test_mu_init_language(self, mu_system):
        h = mu_system.init_dfa
        append_u, double, _, _ = [rule for _, rule in mu_system.rules]
        assert post_image_witness(h, append_u).w_out == "MIU"
        found = post_image_witness(h, double)
        assert (found.w_in, found.w_out) == ("MI", "MII")

    def test_copy_free_witness_is_least_output(self, mu_system, eqdist_system):
        rng = random.Random(3)
        for system in (mu_system, eqdist_system):
            rules = [rule for _, rule in system.rules if rule.is_copy_free]
            for _ in range(15):
                h = random_dfa(rng, system.alphabet)
                for rule in rules:
                    found = post_image_witness(h, rule)
                    escaping = [w for w in brute_images(h, rule, 6) if not h.accepts(w)]
                    if found is None:
                        assert not escaping
                        continue
                    assert h.accepts(found.w_in) and not h.accepts(found.w_out)
                    assert rule.relates(found.w_in, found.w_out)
                    if escaping:
                        assert key(found.w_out) <= key(min(escaping, key=key))

    def test_copying_witness_is_least_input(self):
        rule = RewriteRule.of([Const("M"), Var(0)], [Const("M"), Var(0), Var(0)])
        alphabet = ("I", "M", "U")
        rng = random.Random(5)
        for _ in range(40):
            h = random_dfa(rng, alphabet)
            found = post_image_witness(h, rule)
            expected = next((w for w in words(alphabet, 6)
                             if h.accepts(w) and any(not h.accepts(o) for o in rule.apply(w))), None)
            if expected is None:
                assert found is None or len(found.w_in) > 6
                continue
            assert found is not None
            assert found.w_in == expected
            assert rule.relates(found.w_in, found.w_out)
            assert not h.accepts(found.w_out)

    def test_separate_target(self, mu_system):
        _, _, shrink_iii, _ = [rule for _, rule in mu_system.rules]
        h = universal_dfa(mu_system.alphabet)
        target = mu_system.init_dfa
        found = post_image_witness(h, shrink_iii, target)
        assert (found.w_in, found.w_out) == ("III", "U")
