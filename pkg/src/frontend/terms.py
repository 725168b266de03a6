"""String terms, regexes and atoms read from s-expressions"""

from dataclasses import dataclass
from typing import Dict, List, Tuple, Union

from src.automata.regex import (
    AllChar, EmptySet, Opt, Plus, Range, Regex, Star, concat, literal, union,
)
from src.frontend.sexpr import FrontendError, SExpr, StringLiteral, Symbol, render


class UnsupportedConstruct(FrontendError):
    pass


@dataclass(frozen=True)
class StrVar:
    name: str


@dataclass(frozen=True)
class StrLit:
    value: str


@dataclass(frozen=True)
class StrConcat:
    parts: Tuple["Term", ...]


Term = Union[StrVar, StrLit, StrConcat]


@dataclass(frozen=True)
class PredAtom:
    predicate: str
    var: str


@dataclass(frozen=True)
class InRe:
    term: Term
    regex: Regex


@dataclass(frozen=True)
class Eq:
    left: Term
    right: Term


@dataclass(frozen=True)
class Not:
    atom: Union[InRe, Eq]


Atom = Union[PredAtom, InRe, Eq, Not]

# Operators that fall outside the word-equation/regular-membership fragment
_REJECTED = {
    "str.len", "str.<", "str.<=", "str.at", "str.substr", "str.prefixof", "str.suffixof",
    "str.contains", "str.indexof", "str.replace", "str.replace_all", "str.replace_re",
    "str.replace_re_all", "str.is_digit", "str.to_code", "str.from_code", "str.to_int",
    "str.from_int", "re.inter", "re.comp", "re.diff", "re.loop", "re.^", "exists", "forall",
    "or", "ite", "let", "+", "-", "*", "<", "<=", ">", ">=", "distinct",
}


def _head(expr: SExpr) -> str:
    if isinstance(expr, list) and expr and isinstance(expr[0], Symbol):
        return str(expr[0])
    if isinstance(expr, list) and expr and isinstance(expr[0], list):
        return render(expr[0])
    return ""


def flatten_term(term: Term) -> List[Tuple[str, str]]:
    """Concatenation as ("var", name) / ("lit", word) items, adjacent literals fused"""
    items: List[Tuple[str, str]] = []

    def walk(t: Term):
        if isinstance(t, StrConcat):
            for part in t.parts:
                walk(part)
        elif isinstance(t, StrLit):
            if not t.value:
                return
            if items and items[-1][0] == "lit":
                items[-1] = ("lit", items[-1][1] + t.value)
            else:
                items.append(("lit", t.value))
        else:
            items.append(("var", t.name))

    walk(term)
    return items


def term_vars(term: Term) -> List[str]:
    return [value for kind, value in flatten_term(term) if kind == "var"]


def to_term(expr: SExpr, variables: Dict[str, str]) -> Term:
    """Convert a string term; `variables` maps bound names to the String sort"""
    if isinstance(expr, StringLiteral):
        return StrLit(expr.value)
    if isinstance(expr, Symbol):
        if expr in variables:
            return StrVar(str(expr))
        raise UnsupportedConstruct(f"Unknown string symbol '{expr}'")
    head = _head(expr)
    if head == "str.++" and len(expr) >= 3:
        return StrConcat(tuple(to_term(e, variables) for e in expr[1:]))
    raise UnsupportedConstruct(f"Unsupported string term {render(expr)}")


def to_regex(expr: SExpr) -> Regex:
    if isinstance(expr, Symbol):
        if expr == "re.allchar":
            return AllChar()
        if expr == "re.none":
            return EmptySet()
        if expr == "re.all":
            return Star(AllChar())
        raise UnsupportedConstruct(f"Unknown regex constant '{expr}'")
    head = _head(expr)
    args = expr[1:] if isinstance(expr, list) else []
    if head == "str.to_re" and len(args) == 1 and isinstance(args[0], StringLiteral):
        return literal(args[0].value)
    if head == "re.++" and len(args) >= 2:
        return concat(*(to_regex(a) for a in args))
    if head == "re.union" and len(args) >= 2:
        return union(*(to_regex(a) for a in args))
    if head == "re.*" and len(args) == 1:
        return Star(to_regex(args[0]))
    if head == "re.+" and len(args) == 1:
        return Plus(to_regex(args[0]))
    if head == "re.opt" and len(args) == 1:
        return Opt(to_regex(args[0]))
    if head == "re.range" and len(args) == 2 and all(isinstance(a, StringLiteral) for a in args):
        lo, hi = args[0].value, args[1].value
        if len(lo) != 1 or len(hi) != 1 or lo > hi:
            return EmptySet()
        return Range(lo, hi)
    raise UnsupportedConstruct(f"Unsupported regular expression {render(expr)}")


def to_atom(expr: SExpr, variables: Dict[str, str], predicates: Dict[str, int]) -> Atom:
    head = _head(expr)
    if head in predicates:
        if len(expr) != 2 or not isinstance(expr[1], Symbol) or expr[1] not in variables:
            raise UnsupportedConstruct(f"Predicate must be applied to one bound variable: {render(expr)}")
        return PredAtom(head, str(expr[1]))
    if head == "str.in_re" and len(expr) == 3:
        return InRe(to_term(expr[1], variables), to_regex(expr[2]))
    if head == "=" and len(expr) == 3:
        return Eq(to_term(expr[1], variables), to_term(expr[2], variables))
    if head == "not" and len(expr) == 2:
        inner = to_atom(expr[1], variables, predicates)
        if isinstance(inner, (PredAtom, Not)):
            raise UnsupportedConstruct(f"Negated predicate atoms are not supported: {render(expr)}")
        return Not(inner)
    if head in _REJECTED or (isinstance(expr, Symbol) and expr in _REJECTED):
        raise UnsupportedConstruct(f"'{head or expr}' is outside the supported fragment")
    raise UnsupportedConstruct(f"Unsupported atom {render(expr)}")


def to_conjunction(expr: SExpr, variables: Dict[str, str], predicates: Dict[str, int],
                   allow_negation: bool = False) -> List[Atom]:
    """Atoms of `expr`, a single atom or a (possibly nested) and"""
    if _head(expr) == "and":
        atoms: List[Atom] = []
        for part in expr[1:]:
            atoms.extend(to_conjunction(part, variables, predicates, allow_negation))
        return atoms
    if isinstance(expr, Symbol) and expr == "true":
        return []
    atom = to_atom(expr, variables, predicates)
    if isinstance(atom, Not) and not allow_negation:
        raise UnsupportedConstruct(f"Negation in a clause body is not supported: {render(expr)}")
    return [atom]
