"""CEGIS loop: learner proposes, teacher checks, counterexamples refine"""

import logging
from typing import List, Optional, Union

from src.automata.dfa import Dfa
from src.automata.elimination import dfa_to_regex
from src.automata.nfa import AutomataError
from src.automata.operations import minimize, set_subset_cap
from src.automata.simplify import simplify_regex
from src.core.config import RunConfig
from src.core.progress import Deadline, operation_timer
from src.core.transcript import TranscriptWriter, round_record
from src.core.verdict import Safe, Unknown, Unsafe, Verdict
from src.frontend.system import ClauseSystem
from src.learners.lstar import ChcLStarLearner
from src.learners.observation_table import MembershipInconsistent
from src.learners.sample import LearnerError
from src.learners.sat_backend import make_backend
from src.learners.sat_learner import SatLearner
from src.oracles.counterexample import (
    Cex, Counterexample, Negative, OracleError, Passed, Positive,
)
from src.oracles.exact_teacher import ExactTeacher
from src.oracles.reachability import NotFound, ReachabilityOracle, Trace, find_unsafe_trace, replay_trace
from src.smtlib.client import ExternalTeacher, HybridTeacher
from src.smtlib.dump import QueryDumper
from src.smtlib.model import SmtlibError
from src.smtlib.session import SolverConfig

logger = logging.getLogger("strchc")

Learner = Union[SatLearner, ChcLStarLearner]


class _Stop(Exception):
    """Ends the loop early with a verdict"""

    def __init__(self, verdict: Verdict):
        super().__init__(getattr(verdict, "reason", verdict.status))
        self.verdict = verdict


class CegisPipeline:
    """Orchestrates one invariant synthesis run over a clause system"""

    def __init__(self, system: ClauseSystem, config: Optional[RunConfig] = None):
        self.system = system
        self.config = config or RunConfig()
        self.rounds = 0
        self.elapsed = 0.0
        self.hypotheses: List[Dfa] = []
        self.dumper: Optional[QueryDumper] = None
        if self.config.dump_dir:
            self.dumper = QueryDumper(self.config.dump_dir, system.name)
        self.reach = ReachabilityOracle(system, self.config.length_slack,
                                        self.config.depth_cap, self.config.node_cap)
        self.teacher = None
        self.learner: Optional[Learner] = None

    # -- construction -------------------------------------------------------

    def _external_teacher(self) -> Optional[ExternalTeacher]:
        if not self.config.solver_config:
            return None
        solver = SolverConfig.from_file(self.config.solver_config)
        return ExternalTeacher(self.system, solver, self.dumper,
                               incremental=self.config.incremental,
                               single_session=self.config.single_session or None,
                               max_workers=self.config.max_workers)

    def build_teacher(self):
        kind = self.config.teacher
        if kind == "exact":
            return ExactTeacher(self.system, self.config.max_workers, self.dumper)
        if kind == "external":
            try:
                external = self._external_teacher()
            except (OSError, ValueError) as e:
                raise _Stop(Unknown(f"solver configuration unusable: {e}"))
            if external is None:
                raise _Stop(Unknown("external teacher selected but no solver configuration given"))
            return external
        exact = None if self.system.has_raw else ExactTeacher(self.system, self.config.max_workers, self.dumper)
        try:
            external = self._external_teacher()
        except (OSError, ValueError) as e:
            logger.warning(f"Solver configuration unusable ({e}); continuing without it")
            external = None
        if exact is None and external is None:
            raise _Stop(Unknown("raw clauses need an external solver and none is configured"))
        return HybridTeacher(self.system, exact, external)

    def build_learner(self) -> Learner:
        if self.config.learner == "lstar":
            return ChcLStarLearner(self.system.alphabet, self.reach)
        return SatLearner(self.system.alphabet, self.config.max_states,
                          make_backend(self.config.sat_backend), self.config.symmetry_breaking)

    # -- unsafety -----------------------------------------------------------

    def _verified(self, trace: Optional[Trace]) -> Optional[Unsafe]:
        if not trace:
            return None
        if not replay_trace(trace, self.system) or self.system.bad_clause_of(trace[-1][0]) is None:
            logger.error(f"Discarding unsafe trace that does not replay: {trace}")
            return None
        return Unsafe(tuple((w, c) for w, c in trace))

    def _check_unsafe(self, round_no: int) -> None:
        found = self._verified(self.learner.sample.contradiction())
        if found is not None:
            raise _Stop(found)
        interval = self.config.unsafe_search_interval
        if round_no % interval == 0:
            trace = find_unsafe_trace(self.system, self.config.depth_cap, self.config.node_cap,
                                      self.config.unsafe_search_window)
            if isinstance(trace, NotFound):
                logger.debug(f"Bounded unsafe search: {trace.reason}")
                return
            found = self._verified(trace)
            if found is not None:
                raise _Stop(found)

    def _positive_reaches_bad(self, word: str, trace: Optional[Trace]) -> None:
        if trace and self.system.bad_clause_of(word) is not None:
            found = self._verified(trace)
            if found is not None:
                raise _Stop(found)

    # -- counterexamples ----------------------------------------------------

    def _refine(self, cex: Counterexample) -> None:
        if isinstance(self.learner, SatLearner):
            self.learner.add_counterexample(cex)
            return
        kind, clause_index = cex.kind, cex.clause_index
        if isinstance(kind, Positive):
            trace = [(kind.word, clause_index)]
            self._positive_reaches_bad(kind.word, trace)
            self.learner.label(kind, clause_index, trace)
        elif isinstance(kind, Negative):
            if self.reach.member(kind.word) is True:
                found = self._verified(self.reach.derivation(kind.word))
                if found is not None:
                    raise _Stop(found)
            self.learner.label(kind, clause_index)
        else:
            resolved, trace = self.learner.resolve(kind, clause_index)
            if isinstance(resolved, Positive):
                self._positive_reaches_bad(resolved.word, trace)
            self.learner.label(resolved, clause_index, trace)

    def _safe(self, h: Dfa) -> Safe:
        reduced = minimize(h)
        regex = dfa_to_regex(reduced)
        if self.config.simplify_regex:
            regex = simplify_regex(regex)
        size = self.learner.size if isinstance(self.learner, SatLearner) else h.num_states
        return Safe(reduced, regex, size, reduced.num_states)

    # -- main loop ----------------------------------------------------------

    def _loop(self, deadline: Deadline, transcript: TranscriptWriter) -> Verdict:
        seen = set()
        for round_no in range(1, self.config.iteration_cap + 1):
            if deadline.expired():
                return Unknown(f"timeout after {self.rounds} rounds", self.learner.sample)
            self.rounds = round_no
            self._check_unsafe(round_no)

            h = self.learner.propose()
            if h in seen:
                return Unknown("learner proposed a hypothesis twice", self.learner.sample)
            seen.add(h)
            self.hypotheses.append(h)

            answer = self.teacher.check(h)
            cex = answer.counterexample if isinstance(answer, Cex) else None
            transcript.write(round_record(round_no, self.learner.name, h.num_states, cex, deadline.elapsed))
            if isinstance(answer, Passed):
                logger.info(f"Round {round_no}: hypothesis with {h.num_states} states is inductive")
                return self._safe(h)
            logger.info(f"Round {round_no}: {h.num_states} states, {cex.describe()}")
            self._refine(cex)
        return Unknown(f"budget: iteration cap {self.config.iteration_cap} reached", self.learner.sample)

    def run(self) -> Verdict:
        """Execute the CEGIS loop until a verdict, the deadline or the round cap"""
        logger.info(f"Solving {self.system.name}: {self.system.summary()}")
        set_subset_cap(self.config.subset_cap)
        deadline = Deadline(self.config.timeout)
        try:
            with operation_timer(f"CEGIS on {self.system.name}"), \
                    TranscriptWriter(self.config.transcript) as transcript:
                self.teacher = self.build_teacher()
                self.learner = self.build_learner()
                verdict = self._loop(deadline, transcript)
        except _Stop as stop:
            verdict = stop.verdict
        except MembershipInconsistent as e:
            logger.error(f"Run on {self.system.name} gave up: {e}")
            verdict = Unknown(f"membership oracle inconsistent: {e}", self.learner.sample)
        except (LearnerError, OracleError, SmtlibError, AutomataError) as e:
            logger.error(f"Run on {self.system.name} gave up: {e}")
            verdict = Unknown(f"{type(e).__name__}: {e}")
            if self.learner is not None:
                verdict = Unknown(verdict.reason, self.learner.sample)
        finally:
            self.elapsed = deadline.elapsed
            if self.teacher is not None and hasattr(self.teacher, "close"):
                self.teacher.close()
        logger.info(f"Verdict for {self.system.name}: {verdict.status} after {self.rounds} rounds "
                    f"in {self.elapsed:.2f}s")
        return verdict


def solve(system: ClauseSystem, config: Optional[RunConfig] = None) -> Verdict:
    return CegisPipeline(system, config).run()
