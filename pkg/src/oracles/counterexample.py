"""Counterexamples returned by teachers and their direct validation"""

from dataclasses import dataclass
from typing import Union

from src.automata.dfa import Dfa
from src.frontend.system import ClauseSystem, TransClause
from src.oracles.matcher import clause_relates


class OracleError(Exception):
    """Base class for teacher and membership oracle errors"""
    pass


class RawClausePresent(OracleError):
    pass


class InvalidCounterexample(OracleError):
    pass


@dataclass(frozen=True)
class Positive:
    word: str


@dataclass(frozen=True)
class Negative:
    word: str


@dataclass(frozen=True)
class Implication:
    w_in: str
    w_out: str


CexKind = Union[Positive, Negative, Implication]


@dataclass(frozen=True)
class Counterexample:
    kind: CexKind
    clause_index: int

    @property
    def words(self):
        if isinstance(self.kind, Implication):
            return (self.kind.w_in, self.kind.w_out)
        return (self.kind.word,)

    def describe(self) -> str:
        if isinstance(self.kind, Implication):
            return f"implication {self.kind.w_in!r} -> {self.kind.w_out!r} (clause {self.clause_index})"
        label = "positive" if isinstance(self.kind, Positive) else "negative"
        return f"{label} {self.kind.word!r} (clause {self.clause_index})"


@dataclass(frozen=True)
class Passed:
    pass


@dataclass(frozen=True)
class Cex:
    counterexample: Counterexample


TeacherVerdict = Union[Passed, Cex]


def validate_counterexample(cex: Counterexample, h: Dfa, system: ClauseSystem) -> None:
    """Check a counterexample against the hypothesis and its origin clause by simulation"""
    for word in cex.words:
        if any(c not in system.alphabet for c in word):
            raise InvalidCounterexample(f"{cex.describe()} leaves the alphabet")
    try:
        clause = system.clause(cex.clause_index)
    except KeyError:
        raise InvalidCounterexample(f"{cex.describe()} names an unknown clause")

    kind = cex.kind
    if isinstance(kind, Positive):
        if clause not in system.init_clauses or not system.language_dfa(clause).accepts(kind.word):
            raise InvalidCounterexample(f"{cex.describe()} is not an initial word of its clause")
        if h.accepts(kind.word):
            raise InvalidCounterexample(f"{cex.describe()} is already accepted")
    elif isinstance(kind, Negative):
        if clause not in system.bad_clauses or not system.language_dfa(clause).accepts(kind.word):
            raise InvalidCounterexample(f"{cex.describe()} is not a bad word of its clause")
        if not h.accepts(kind.word):
            raise InvalidCounterexample(f"{cex.describe()} is already rejected")
    else:
        if not isinstance(clause, TransClause):
            raise InvalidCounterexample(f"{cex.describe()} does not come from a transition clause")
        if not h.accepts(kind.w_in) or h.accepts(kind.w_out):
            raise InvalidCounterexample(f"{cex.describe()} is not a closure violation of the hypothesis")
        if not clause_relates(clause, kind.w_in, kind.w_out):
            raise InvalidCounterexample(f"{cex.describe()} is not related by its clause")
