"""End-to-end CEGIS runs and the command-line entry point"""

import sys
from itertools import product
from pathlib import Path

import pytest

from main import EXIT_INPUT_ERROR, EXIT_SAFE, EXIT_UNKNOWN, EXIT_UNSAFE, main
from src.automata.dfa import Dfa
from src.automata.operations import compile_regex, dfa_equivalent, Equal
from src.automata.regex import AllChar, Star, concat, literal, star
from src.core.config import RunConfig
from src.core.pipeline import CegisPipeline, solve
from src.core.transcript import read_transcript
from src.core.verdict import Safe, Unknown, Unsafe
from src.frontend.parser import parse_file, parse_script
from src.frontend.sexpr import parse_sexprs
from src.oracles.bounded import bounded_check
from src.oracles.counterexample import Cex, Counterexample, Negative, Passed, validate_counterexample
from src.oracles.exact_teacher import exact_check
from src.oracles.matcher import evaluate_script
from src.oracles.reachability import replay_trace

ROOT = Path(__file__).parent.parent
BENCHMARKS = ROOT / "benchmarks"
CONFIG = str(ROOT / "config" / "learning.yaml")
FAKE_SOLVER = Path(__file__).parent / "fixtures" / "fake_solver.py"


def exact_config(**kwargs) -> RunConfig:
    return RunConfig(learner=kwargs.pop("learner", "sat"), teacher="exact", **kwargs)


def all_dfas(alphabet, n):
    """Every DFA with n states over `alphabet`, initial state 0"""
    k = len(alphabet)
    for targets in product(range(n), repeat=n * k):
        delta = tuple(tuple(targets[q * k:(q + 1) * k]) for q in range(n))
        for bits in product((False, True), repeat=n):
            yield Dfa(n, tuple(alphabet), delta, 0, frozenset(q for q in range(n) if bits[q]))


def write_solver_config(path: Path, mode: str) -> str:
    path.write_text(f"COMMAND={sys.executable}\nARGS={FAKE_SOLVER} --mode {mode}\nTIMEOUT_MS=10000\n")
    return str(path)


@pytest.fixture(scope="module")
def mu_run():
    pipeline = CegisPipeline(parse_file(BENCHMARKS / "mu_puzzle.smt2"), exact_config())
    return pipeline, pipeline.run()


@pytest.fixture(scope="module")
def eqdist_run():
    pipeline = CegisPipeline(parse_file(BENCHMARKS / "eqdist.smt2"), exact_config())
    return pipeline, pipeline.run()


class TestSafeSystems:
    """Invariants found with the SAT learner and the exact teacher"""

    def test_mu_puzzle(self, mu_run):
        pipeline, verdict = mu_run
        assert isinstance(verdict, Safe)
        assert verdict.learner_size == 3
        assert verdict.invariant_dfa.accepts("MI")
        assert not verdict.invariant_dfa.accepts("MU")
        assert exact_check(verdict.invariant_dfa, pipeline.system) == Passed()
        assert pipeline.elapsed < 60

    def test_regex_matches_automaton(self, mu_run):
        pipeline, verdict = mu_run
        rebuilt = compile_regex(verdict.invariant_regex, pipeline.system.alphabet)
        assert isinstance(dfa_equivalent(rebuilt, verdict.invariant_dfa), Equal)
        assert verdict.minimized_size == verdict.invariant_dfa.num_states

    def test_token_distance(self, eqdist_run):
        pipeline, verdict = eqdist_run
        assert isinstance(verdict, Safe)
        # n* r n(nn)* b n* is a five-state inductive invariant
        assert verdict.learner_size <= 5
        assert verdict.invariant_dfa.accepts("rnb")
        assert not verdict.invariant_dfa.accepts("bnr")
        assert exact_check(verdict.invariant_dfa, pipeline.system) == Passed()

    def test_odd_distance_language_is_not_safe(self, eqdist_system):
        sigma = AllChar()
        odd_distance = concat(star(literal("n")), sigma, literal("n"), Star(literal("nn")), sigma,
                              star(literal("n")))
        h = compile_regex(odd_distance, eqdist_system.alphabet)
        assert exact_check(h, eqdist_system) == Cex(Counterexample(Negative("bnr"), 2))

    @pytest.mark.parametrize("run", ["mu_run", "eqdist_run"])
    def test_teachers_agree_on_every_hypothesis(self, run, request):
        pipeline, _ = request.getfixturevalue(run)
        assert pipeline.hypotheses
        for h in pipeline.hypotheses:
            exact = exact_check(h, pipeline.system)
            bounded = bounded_check(h, pipeline.system, 10)
            assert isinstance(exact, Passed) == isinstance(bounded, Passed)
            for verdict in (exact, bounded):
                if isinstance(verdict, Cex):
                    validate_counterexample(verdict.counterexample, h, pipeline.system)

    @pytest.mark.parametrize("name", ["counter", "coffee_can", "token_pass"])
    def test_sat_learner_finds_smallest_invariant(self, name):
        system = parse_file(BENCHMARKS / f"{name}.smt2")
        verdict = solve(system, exact_config())
        assert isinstance(verdict, Safe)
        for n in range(1, verdict.learner_size):
            for h in all_dfas(system.alphabet, n):
                assert exact_check(h, system) != Passed(), h

    def test_lstar(self, counter_system):
        verdict = solve(counter_system, exact_config(learner="lstar"))
        assert isinstance(verdict, Safe)
        assert verdict.minimized_size == 2
        assert verdict.invariant_dfa.accepts("aaaa")
        assert not verdict.invariant_dfa.accepts("aaa")


class TestOtherVerdicts:
    """Unsafe systems, budgets and unusable teachers"""

    def test_unsafe_trace(self, mu_unsafe_system):
        pipeline = CegisPipeline(mu_unsafe_system, exact_config())
        verdict = pipeline.run()
        assert isinstance(verdict, Unsafe)
        assert verdict.trace == (("MI", 1), ("MIU", 2))
        assert replay_trace(list(verdict.trace), mu_unsafe_system)
        assert pipeline.elapsed < 1

    def test_iteration_cap(self, mu_system):
        verdict = solve(mu_system, exact_config(iteration_cap=0))
        assert isinstance(verdict, Unknown)
        assert verdict.reason.startswith("budget")

    def test_timeout(self, mu_system):
        verdict = solve(mu_system, exact_config(timeout=1e-9))
        assert isinstance(verdict, Unknown)
        assert verdict.reason.startswith("timeout")

    def test_state_budget_keeps_sample(self, mu_system):
        verdict = solve(mu_system, exact_config(max_states=2))
        assert isinstance(verdict, Unknown)
        assert "BudgetExhausted" in verdict.reason
        assert "MI" in verdict.partial_sample.pos

    def test_raw_clauses_without_solver(self):
        system = parse_script(
            '(declare-fun inv (String) Bool)\n'
            '(assert (forall ((x String)) (=> (= x "ab") (inv x))))\n'
            '(assert (forall ((x String) (y String) (p String) (q String)) '
            '(=> (and (inv x) (= x (str.++ p "b" q)) (= y (str.++ q "b" p))) (inv y))))\n')
        verdict = solve(system, RunConfig(teacher="hybrid"))
        assert isinstance(verdict, Unknown)
        assert "external solver" in verdict.reason

    def test_external_without_configuration(self, counter_system):
        verdict = solve(counter_system, RunConfig(teacher="external"))
        assert isinstance(verdict, Unknown)


class TestSolverTeachers:
    """Runs driven by a solver process"""

    def test_external_teacher(self, counter_system, tmp_path):
        config = RunConfig(teacher="external", solver_config=write_solver_config(tmp_path / "s.conf", "normal"))
        verdict = solve(counter_system, config)
        assert isinstance(verdict, Safe)
        assert verdict.learner_size == 2

    def test_hybrid_falls_back_to_exact(self, counter_system, tmp_path):
        config = RunConfig(teacher="hybrid", solver_config=write_solver_config(tmp_path / "s.conf", "crash"))
        verdict = solve(counter_system, config)
        assert isinstance(verdict, Safe)

    def test_missing_solver_configuration_file(self, counter_system, tmp_path):
        verdict = solve(counter_system, RunConfig(teacher="hybrid", solver_config=str(tmp_path / "none.conf")))
        assert isinstance(verdict, Safe)


class TestQueryDump:
    """Standalone query files written during a run"""

    @staticmethod
    def annotated(path):
        text = path.read_text(encoding="utf-8")
        return text, "sat" if "(set-info :status sat)" in text else "unsat"

    def test_dumped_queries(self, mu_system, tmp_path):
        pipeline = CegisPipeline(mu_system, exact_config(dump_dir=str(tmp_path)))
        assert isinstance(pipeline.run(), Safe)
        files = sorted(tmp_path.glob("*.smt2"))
        assert len(files) >= 20
        statuses = set()
        for path in files:
            text, status = self.annotated(path)
            assert parse_sexprs(text)
            statuses.add(status)
            if status == "unsat":
                assert evaluate_script(text, 4) is None, path.name
        assert statuses == {"sat", "unsat"}

    @pytest.mark.parametrize("name", ["counter", "coffee_can"])
    def test_status_matches_bounded_evaluation(self, name, tmp_path):
        system = parse_file(BENCHMARKS / f"{name}.smt2")
        assert isinstance(CegisPipeline(system, exact_config(dump_dir=str(tmp_path))).run(), Safe)
        files = sorted(tmp_path.glob("*.smt2"))
        assert files
        for path in files:
            text, status = self.annotated(path)
            # two-state hypotheses keep every witness well below eight letters
            assert (evaluate_script(text, 8) is not None) == (status == "sat"), path.name


class TestCommandLine:
    """Exit codes and output files"""

    def run(self, *args):
        return main([*args, "--config", CONFIG, "--log-level", "WARNING"])

    def test_safe(self, capsys, tmp_path):
        dot = tmp_path / "inv.dot"
        transcript = tmp_path / "rounds.jsonl"
        code = self.run(str(BENCHMARKS / "counter.smt2"), "--teacher", "exact",
                        "--dot", str(dot), "--transcript", str(transcript))
        assert code == EXIT_SAFE
        out = capsys.readouterr().out
        assert out.startswith("sat\n(define-fun inv ((w String)) Bool (str.in_re w ")
        assert dot.read_text(encoding="utf-8").startswith("digraph inv {")
        records = read_transcript(transcript)
        assert records[-1]["counterexample"] is None
        assert [r["round"] for r in records] == list(range(1, len(records) + 1))

    def test_unsafe(self, capsys):
        code = self.run(str(BENCHMARKS / "mu_unsafe.smt2"), "--teacher", "exact")
        assert code == EXIT_UNSAFE
        assert capsys.readouterr().out.startswith("unsat\n")

    def test_unknown(self, capsys):
        code = self.run(str(BENCHMARKS / "counter.smt2"), "--teacher", "exact", "--iteration-cap", "0")
        assert code == EXIT_UNKNOWN
        assert capsys.readouterr().out.startswith("unknown\n; budget")

    def test_missing_file(self, tmp_path):
        assert self.run(str(tmp_path / "absent.smt2")) == EXIT_INPUT_ERROR

    def test_malformed_file(self, tmp_path):
        path = tmp_path / "broken.smt2"
        path.write_text("(declare-fun inv (String) Bool")
        assert self.run(str(path)) == EXIT_INPUT_ERROR

    def test_invalid_setting(self):
        assert self.run(str(BENCHMARKS / "counter.smt2"), "--max-states", "0") == EXIT_INPUT_ERROR
