"""Bounded word-equation solving over equations and regular memberships.

Used wherever a clause has no structured rule form, and to evaluate dumped
query scripts without an external solver. Complete for words up to max_len.
"""

import itertools
import logging
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from src.automata.operations import compile_regex
from src.frontend.sexpr import Symbol, parse_sexprs, render
from src.frontend.system import RawClause, TransClause, atom_symbols
from src.frontend.terms import (
    Atom, Eq, InRe, Not, PredAtom, Term, UnsupportedConstruct, flatten_term, to_conjunction,
)

logger = logging.getLogger("strchc")

Env = Dict[str, str]


def words_up_to(alphabet: Sequence[str], max_len: int) -> Iterator[str]:
    """All words of length <= max_len, by length then lexicographically"""
    symbols = sorted(set(alphabet))
    for length in range(max_len + 1):
        for letters in itertools.product(symbols, repeat=length):
            yield "".join(letters)


def _value(term: Term, env: Env) -> Optional[str]:
    pieces = []
    for kind, value in flatten_term(term):
        if kind == "lit":
            pieces.append(value)
        elif value in env:
            pieces.append(env[value])
        else:
            return None
    return "".join(pieces)


def _evaluate(atom: Atom, env: Env, alphabet: Tuple[str, ...]) -> Optional[bool]:
    """True/False once every variable of `atom` is bound, else None"""
    if isinstance(atom, Not):
        inner = _evaluate(atom.atom, env, alphabet)
        return None if inner is None else not inner
    if isinstance(atom, Eq):
        left, right = _value(atom.left, env), _value(atom.right, env)
        if left is None or right is None:
            return None
        return left == right
    if isinstance(atom, InRe):
        word = _value(atom.term, env)
        if word is None:
            return None
        return compile_regex(atom.regex, alphabet).accepts(word)
    return True


def _split(items: List[Tuple[str, str]], word: str, env: Env) -> Iterator[Env]:
    """Bindings of the unbound variables of `items` under which they spell `word`"""
    if not items:
        if not word:
            yield {}
        return
    kind, value = items[0]
    if kind == "lit" or value in env:
        piece = value if kind == "lit" else env[value]
        if word.startswith(piece):
            yield from _split(items[1:], word[len(piece):], env)
        return
    for cut in range(len(word) + 1):
        binding = {value: word[:cut]}
        for rest in _split(items[1:], word[cut:], {**env, **binding}):
            yield {**binding, **rest}


def _atom_vars(atom: Atom) -> List[str]:
    if isinstance(atom, Not):
        return _atom_vars(atom.atom)
    if isinstance(atom, Eq):
        terms = [atom.left, atom.right]
    elif isinstance(atom, InRe):
        terms = [atom.term]
    else:
        return []
    return [v for t in terms for kind, v in flatten_term(t) if kind == "var"]


def solve(atoms: Sequence[Atom], env: Env, alphabet: Tuple[str, ...], max_len: int) -> Iterator[Env]:
    """Assignments extending `env` that satisfy every atom, free values bounded by max_len"""
    pending = []
    for atom in atoms:
        status = _evaluate(atom, env, alphabet)
        if status is False:
            return
        if status is None:
            pending.append(atom)
    if not pending:
        yield dict(env)
        return

    for atom in pending:
        if not isinstance(atom, Eq):
            continue
        for known, pattern in ((atom.left, atom.right), (atom.right, atom.left)):
            word = _value(known, env)
            if word is not None:
                for binding in _split(flatten_term(pattern), word, env):
                    yield from solve(atoms, {**env, **binding}, alphabet, max_len)
                return

    unbound = next(v for a in pending for v in _atom_vars(a) if v not in env)
    for word in words_up_to(alphabet, max_len):
        yield from solve(atoms, {**env, unbound: word}, alphabet, max_len)


def _raw_alphabet(raw: RawClause, words: Sequence[str]) -> Tuple[str, ...]:
    return tuple(sorted(set(raw.symbols()) | set("".join(words))))


def raw_relates(raw: RawClause, w_in: str, w_out: str, max_len: Optional[int] = None) -> bool:
    alphabet = _raw_alphabet(raw, [w_in, w_out])
    bound = len(w_in) + len(w_out) if max_len is None else max_len
    env = {raw.var_in: w_in, raw.var_out: w_out}
    return next(solve(raw.atoms, env, alphabet, bound), None) is not None


def raw_successors(raw: RawClause, word: str, alphabet: Sequence[str] = (),
                   max_len: Optional[int] = None) -> List[str]:
    """Words w_out with (word, w_out) in the clause relation, up to max_len"""
    sigma = tuple(sorted(set(alphabet) | set(_raw_alphabet(raw, [word]))))
    bound = 2 * len(word) + 2 if max_len is None else max_len
    found = set()
    for env in solve(raw.atoms, {raw.var_in: word}, sigma, bound):
        if raw.var_out in env:
            if len(env[raw.var_out]) <= bound:
                found.add(env[raw.var_out])
        else:
            found.update(words_up_to(sigma, bound))
    return sorted(found, key=lambda w: (len(w), w))


def evaluate_script(text: str, max_len: int = 6,
                    alphabet: Sequence[str] = ()) -> Optional[Env]:
    """Search a model of a standalone QF_S query script among bounded words.

    Returns the first model found, or None (no model up to max_len).
    """
    variables: Dict[str, str] = {}
    atoms: List[Atom] = []
    for command in parse_sexprs(text):
        if not isinstance(command, list) or not command:
            continue
        head = command[0]
        if head in ("declare-const", "declare-fun"):
            sort = command[-1]
            if sort != "String" or (head == "declare-fun" and command[2] != []):
                raise UnsupportedConstruct(f"Only String constants are supported: {render(command)}")
            variables[str(command[1])] = "String"
        elif head == "assert":
            found = to_conjunction(command[1], variables, {}, allow_negation=True)
            atoms.extend(a for a in found if not isinstance(a, PredAtom))
        elif isinstance(head, Symbol) and head in ("push", "pop"):
            raise UnsupportedConstruct("Query scripts must be standalone (no push/pop)")

    symbols = set(alphabet)
    for atom in atoms:
        symbols |= atom_symbols(atom)
    sigma = tuple(sorted(symbols)) or ("a",)
    model = next(solve(atoms, {}, sigma, max_len), None)
    logger.debug(f"Bounded evaluation (max_len={max_len}): {'model' if model is not None else 'no model'}")
    return model


def clause_successors(clause: TransClause, word: str, alphabet: Sequence[str] = (),
                      max_len: Optional[int] = None) -> List[str]:
    if clause.rule is not None:
        return clause.rule.apply(word)
    return raw_successors(clause.raw, word, alphabet, max_len)


def clause_relates(clause: TransClause, w_in: str, w_out: str) -> bool:
    if clause.rule is not None:
        return clause.rule.relates(w_in, w_out)
    return raw_relates(clause.raw, w_in, w_out)
