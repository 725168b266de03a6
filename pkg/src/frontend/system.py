"""Validated CHC systems over one unary string predicate"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple, Union

from src.automata.dfa import Dfa
from src.automata.operations import compile_regex
from src.automata.regex import Regex, union
from src.frontend.rules import RewriteRule
from src.frontend.sexpr import FrontendError
from src.frontend.terms import Atom, Eq, InRe, Not, Term, flatten_term

logger = logging.getLogger("strchc")


class EmptySystem(FrontendError):
    pass


class EmptyAlphabet(FrontendError):
    pass


@dataclass(frozen=True)
class LanguageClause:
    """Init or Bad clause: the predicate argument ranges over `regex`"""
    clause_index: int
    regex: Regex


@dataclass(frozen=True)
class RawClause:
    """Transition clause outside the rewrite-rule fragment, kept as its constraint atoms"""
    atoms: Tuple[Atom, ...]
    var_in: str
    var_out: str
    bound: Tuple[str, ...]

    def symbols(self) -> FrozenSet[str]:
        found = set()
        for atom in self.atoms:
            found |= atom_symbols(atom)
        return frozenset(found)


@dataclass(frozen=True)
class TransClause:
    clause_index: int
    rule: Optional[RewriteRule] = None
    raw: Optional[RawClause] = None

    def __post_init__(self):
        if (self.rule is None) == (self.raw is None):
            raise ValueError("A transition clause is either structured or raw")

    @property
    def is_structured(self) -> bool:
        return self.rule is not None


def _term_symbols(term: Term) -> FrozenSet[str]:
    return frozenset("".join(v for kind, v in flatten_term(term) if kind == "lit"))


def atom_symbols(atom: Atom) -> FrozenSet[str]:
    if isinstance(atom, Not):
        return atom_symbols(atom.atom)
    if isinstance(atom, InRe):
        return _term_symbols(atom.term) | atom.regex.symbols()
    if isinstance(atom, Eq):
        return _term_symbols(atom.left) | _term_symbols(atom.right)
    return frozenset()


@dataclass(frozen=True)
class ClauseSystem:
    predicate_name: str
    alphabet: Tuple[str, ...]
    init_clauses: Tuple[LanguageClause, ...]
    bad_clauses: Tuple[LanguageClause, ...]
    trans_clauses: Tuple[TransClause, ...]
    name: str = field(default="system", compare=False)

    def __post_init__(self):
        if not self.init_clauses:
            raise EmptySystem("The system has no initial clause")
        if not self.alphabet:
            raise EmptyAlphabet("No symbol occurs anywhere in the system")
        if tuple(sorted(set(self.alphabet))) != self.alphabet:
            raise ValueError("Alphabet must be sorted by code point without duplicates")
        missing = _clause_symbols(self) - set(self.alphabet)
        if missing:
            raise ValueError(f"Alphabet misses symbols {sorted(missing)}")
        indices = [c.clause_index for c in self.all_clauses()]
        if len(set(indices)) != len(indices):
            raise ValueError("Clause indices must be unique")

    def all_clauses(self) -> List[Union[LanguageClause, TransClause]]:
        clauses = list(self.init_clauses) + list(self.bad_clauses) + list(self.trans_clauses)
        return sorted(clauses, key=lambda c: c.clause_index)

    @property
    def has_raw(self) -> bool:
        return any(not c.is_structured for c in self.trans_clauses)

    @property
    def rules(self) -> List[Tuple[int, RewriteRule]]:
        return [(c.clause_index, c.rule) for c in self.trans_clauses if c.rule is not None]

    @cached_property
    def init_regex(self) -> Regex:
        return union(*(c.regex for c in self.init_clauses))

    @cached_property
    def bad_regex(self) -> Regex:
        return union(*(c.regex for c in self.bad_clauses))

    def language_dfa(self, clause: LanguageClause) -> Dfa:
        return compile_regex(clause.regex, self.alphabet)

    @cached_property
    def init_dfa(self) -> Dfa:
        return compile_regex(self.init_regex, self.alphabet)

    @cached_property
    def bad_dfa(self) -> Dfa:
        return compile_regex(self.bad_regex, self.alphabet)

    def is_length_preserving(self) -> bool:
        return not self.has_raw and all(rule.is_length_preserving() for _, rule in self.rules)

    def clause(self, clause_index: int) -> Union[LanguageClause, TransClause]:
        for c in self.all_clauses():
            if c.clause_index == clause_index:
                return c
        raise KeyError(clause_index)

    def init_clause_of(self, word: str) -> Optional[int]:
        """Index of the first Init clause whose language contains `word`"""
        return _first_clause(self, self.init_clauses, word)

    def bad_clause_of(self, word: str) -> Optional[int]:
        return _first_clause(self, self.bad_clauses, word)

    def summary(self) -> Dict[str, object]:
        return {
            "predicate": self.predicate_name,
            "alphabet": "".join(self.alphabet),
            "init": len(self.init_clauses),
            "bad": len(self.bad_clauses),
            "trans": len(self.trans_clauses),
            "raw": sum(1 for c in self.trans_clauses if not c.is_structured),
        }


def _first_clause(system: ClauseSystem, clauses: Iterable[LanguageClause], word: str) -> Optional[int]:
    for clause in clauses:
        if system.language_dfa(clause).accepts(word):
            return clause.clause_index
    return None


def _clause_symbols(system: ClauseSystem) -> FrozenSet[str]:
    return _symbols_of(
        [c.regex for c in system.init_clauses + system.bad_clauses],
        [c.rule for c in system.trans_clauses if c.rule is not None],
        [c.raw for c in system.trans_clauses if c.raw is not None],
    )


def _symbols_of(regexes: Iterable[Regex], rules: Iterable[RewriteRule],
                raws: Iterable[RawClause]) -> FrozenSet[str]:
    found = set()
    for r in regexes:
        found |= r.symbols()
    for rule in rules:
        found |= rule.symbols()
    for raw in raws:
        found |= raw.symbols()
    return frozenset(found)


def infer_alphabet(system: ClauseSystem) -> Tuple[str, ...]:
    """Symbols of every constant word and regex of the system, by code point"""
    found = _clause_symbols(system)
    if not found:
        raise EmptyAlphabet("No symbol occurs anywhere in the system")
    return tuple(sorted(found))


def alphabet_of(regexes: Iterable[Regex], rules: Iterable[RewriteRule],
                raws: Iterable[RawClause]) -> Tuple[str, ...]:
    """Sorted alphabet from loose clause parts, before a system exists"""
    found = _symbols_of(regexes, rules, raws)
    if not found:
        raise EmptyAlphabet("No symbol occurs anywhere in the system")
    return tuple(sorted(found))
