"""Syntactic regex simplification, re-verified by automata"""

import logging

from src.automata.elimination import InternalConsistencyError
from src.automata.nfa import regex_to_nfa
from src.automata.operations import Equal, determinize, dfa_equivalent
from src.automata.regex import (
    Concat, EmptySet, Epsilon, Opt, Plus, Regex, Star, Union, concat, star, union,
)

logger = logging.getLogger("strchc")

_PLACEHOLDER = "\ue000"  # a symbol no regex mentions


def _simplify_star(child: Regex) -> Regex:
    if isinstance(child, (Star, Plus, Opt)):
        return _simplify_star(child.child)
    if isinstance(child, Union):
        kept = [p for p in child.parts if not isinstance(p, Epsilon)]
        if len(kept) != len(child.parts):
            return _simplify_star(union(*kept))
    if isinstance(child, Concat) and all(isinstance(p, Star) for p in child.parts):
        return star(union(*(p.child for p in child.parts)))
    return star(child)


def _step(r: Regex) -> Regex:
    if isinstance(r, Concat):
        return concat(*(_step(p) for p in r.parts))
    if isinstance(r, Union):
        parts = [_step(p) for p in r.parts]
        if any(isinstance(p, Star) for p in parts):
            parts = [p for p in parts if not isinstance(p, Epsilon)]
        return union(*parts)
    if isinstance(r, Star):
        return _simplify_star(_step(r.child))
    if isinstance(r, Plus):
        child = _step(r.child)
        if isinstance(child, (Star, Epsilon, EmptySet)):
            return star(child) if not isinstance(child, EmptySet) else EmptySet()
        return Plus(child)
    if isinstance(r, Opt):
        child = _step(r.child)
        if isinstance(child, (Star, Epsilon)):
            return child
        if isinstance(child, EmptySet):
            return Epsilon()
        return Opt(child)
    return r


def _same_language(a: Regex, b: Regex) -> bool:
    symbols = a.symbols() | b.symbols()
    alphabet = tuple(sorted(symbols | {_PLACEHOLDER}))
    left = determinize(regex_to_nfa(a, alphabet))
    right = determinize(regex_to_nfa(b, alphabet))
    return isinstance(dfa_equivalent(left, right), Equal)


def simplify_regex(r: Regex, verify: bool = True) -> Regex:
    """Apply the rewrite rules to a fixpoint; language equality is checked on the result"""
    current = r
    while True:
        nxt = _step(current)
        if nxt == current:
            break
        current = nxt
    if verify and not _same_language(r, current):
        raise InternalConsistencyError(f"Simplification changed the language of {r}")
    logger.debug(f"Simplified regex of size {r.size()} to size {current.size()}")
    return current
