"""Tests for the exact and bounded teachers, counterexample validation and reachability"""

import pytest

from src.automata.dfa import empty_dfa, universal_dfa
from src.oracles.bounded import bounded_check
from src.oracles.counterexample import (
    Cex, Counterexample, Implication, InvalidCounterexample, Negative, Passed, Positive,
    RawClausePresent, validate_counterexample,
)
from src.oracles.exact_teacher import ExactTeacher, exact_check
from src.oracles.reachability import (
    Inconclusive, NotFound, ReachabilityOracle, find_unsafe_trace, member_reachable, replay_trace,
)
from src.frontend.parser import parse_script


def same_classification(a, b) -> bool:
    return isinstance(a, Passed) == isinstance(b, Passed)


class TestExactTeacher:
    """Check order and witnesses"""

    def test_empty_hypothesis_misses_init(self, mu_system):
        verdict = exact_check(empty_dfa(mu_system.alphabet), mu_system)
        assert verdict == Cex(Counterexample(Positive("MI"), 1))

    def test_universal_hypothesis_hits_bad(self, mu_system):
        verdict = exact_check(universal_dfa(mu_system.alphabet), mu_system)
        assert verdict == Cex(Counterexample(Negative("MU"), 6))

    def test_init_language_is_not_closed(self, mu_system):
        verdict = exact_check(mu_system.init_dfa, mu_system)
        assert verdict == Cex(Counterexample(Implication("MI", "MIU"), 2))

    def test_mod_three_invariant_passes(self, mu_system, mu_invariant):
        assert exact_check(mu_invariant, mu_system) == Passed()

    def test_token_system_first_transition(self, eqdist_system):
        verdict = exact_check(eqdist_system.init_dfa, eqdist_system)
        assert isinstance(verdict, Cex)
        assert isinstance(verdict.counterexample.kind, Implication)
        assert verdict.counterexample.clause_index == 3

    def test_parallel_workers_agree(self, mu_system):
        h = mu_system.init_dfa
        assert ExactTeacher(mu_system, max_workers=4).check(h) == exact_check(h, mu_system)

    def test_raw_clauses_are_refused(self):
        system = parse_script(
            '(declare-fun inv (String) Bool)\n'
            '(assert (forall ((x String)) (=> (= x "ab") (inv x))))\n'
            '(assert (forall ((x String) (y String) (p String) (q String)) '
            '(=> (and (inv x) (= x (str.++ p "b" q)) (= y (str.++ q "b" p))) (inv y))))\n')
        with pytest.raises(RawClausePresent):
            ExactTeacher(system)


class TestBoundedTeacher:
    """Enumeration agrees with the exact teacher"""

    def test_agreement_on_fixed_hypotheses(self, mu_system, eqdist_system):
        for system in (mu_system, eqdist_system):
            hypotheses = [empty_dfa(system.alphabet), universal_dfa(system.alphabet), system.init_dfa]
            for h in hypotheses:
                exact = exact_check(h, system)
                bounded = bounded_check(h, system, 8)
                assert same_classification(exact, bounded)
                if isinstance(bounded, Cex):
                    validate_counterexample(bounded.counterexample, h, system)

    def test_invariant_passes_bounded(self, mu_system, mu_invariant):
        assert bounded_check(mu_invariant, mu_system, 8) == Passed()


class TestCounterexampleValidation:
    """Direct simulation of counterexamples"""

    def test_valid_counterexamples(self, mu_system):
        validate_counterexample(Counterexample(Positive("MI"), 1), empty_dfa(mu_system.alphabet), mu_system)
        validate_counterexample(Counterexample(Negative("MU"), 6), universal_dfa(mu_system.alphabet), mu_system)
        validate_counterexample(Counterexample(Implication("MI", "MIU"), 2), mu_system.init_dfa, mu_system)

    @pytest.mark.parametrize("cex", [
        Counterexample(Positive("MU"), 1),
        Counterexample(Negative("MI"), 6),
        Counterexample(Implication("MI", "MII"), 2),
        Counterexample(Implication("MI", "MIU"), 1),
        Counterexample(Positive("MI"), 42),
        Counterexample(Positive("MX"), 1),
    ])
    def test_invalid_counterexamples(self, mu_system, cex):
        with pytest.raises(InvalidCounterexample):
            validate_counterexample(cex, mu_system.init_dfa, mu_system)

    def test_describe(self):
        assert Counterexample(Implication("a", "b"), 3).describe() == "implication 'a' -> 'b' (clause 3)"
        assert Counterexample(Negative("x"), 2).words == ("x",)


class TestReachability:
    """Window explorations, membership and unsafe traces"""

    def test_reachable_word(self, mu_system):
        oracle = ReachabilityOracle(mu_system)
        assert oracle.member("MIIU") is True
        assert oracle.derivation("MIIU") == [("MI", 1), ("MII", 3), ("MIIU", 2)]

    def test_unreachable_word(self, mu_system):
        assert member_reachable("MU", mu_system, length_slack=4) is False

    def test_length_preserving_system_uses_no_slack(self, eqdist_system):
        oracle = ReachabilityOracle(eqdist_system, length_slack=5)
        assert oracle.length_slack == 0
        assert oracle.member("rnb") is True
        assert oracle.member("bnr") is False

    def test_node_cap_is_inconclusive(self, mu_system):
        answer = member_reachable("MUUUUU", mu_system, node_cap=3)
        assert isinstance(answer, Inconclusive)
        assert "node cap" in answer.reason

    def test_explorations_are_cached(self, mu_system):
        oracle = ReachabilityOracle(mu_system)
        assert oracle.exploration(5) is oracle.exploration(5)

    def test_unsafe_trace(self, mu_unsafe_system):
        trace = find_unsafe_trace(mu_unsafe_system)
        assert trace == [("MI", 1), ("MIU", 2)]
        assert replay_trace(trace, mu_unsafe_system)

    def test_safe_system_has_no_short_trace(self, mu_system):
        assert isinstance(find_unsafe_trace(mu_system, max_window=6), NotFound)

    def test_replay_rejects_bogus_steps(self, mu_system):
        assert not replay_trace([], mu_system)
        assert not replay_trace([("MU", 1)], mu_system)
        assert not replay_trace([("MI", 1), ("MU", 2)], mu_system)
        assert not replay_trace([("MI", -1)], mu_system)
