"""SMT-LIB 2.6 CHC-over-strings reader: command handling, clause classification, rule extraction"""

import logging
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from src.automata.regex import AllChar, Regex, Star, concat, literal
from src.frontend.rules import NotInFragment, RewriteRule, Var, build_rule
from src.frontend.sexpr import FrontendError, SExpr, Symbol, parse_sexprs, render
from src.frontend.system import (
    ClauseSystem, EmptySystem, LanguageClause, RawClause, TransClause, alphabet_of,
)
from src.frontend.terms import (
    Atom, Eq, InRe, PredAtom, StrConcat, StrVar, Term, UnsupportedConstruct,
    flatten_term, term_vars, to_conjunction,
)

logger = logging.getLogger("strchc")

_IGNORED_COMMANDS = {"set-logic", "set-info", "set-option", "check-sat", "exit", "get-model", "get-info"}


class MultiplePredicates(FrontendError):
    pass


class NonHornShape(FrontendError):
    pass


class ClauseKind(Enum):
    INIT = "init"
    BAD = "bad"
    TRANS = "trans"


@dataclass(frozen=True)
class HornClause:
    """One asserted implication after term conversion"""
    clause_index: int
    variables: Tuple[str, ...]
    body: Tuple[Atom, ...]
    head: Optional[PredAtom]

    @property
    def body_predicates(self) -> List[PredAtom]:
        return [a for a in self.body if isinstance(a, PredAtom)]

    @property
    def constraints(self) -> List[Atom]:
        return [a for a in self.body if not isinstance(a, PredAtom)]


def classify_clause(clause: HornClause) -> ClauseKind:
    """Init: no body predicate, predicate head. Bad: body predicate, head false. Trans: both."""
    preds = clause.body_predicates
    if len(preds) > 1:
        raise NonHornShape(f"Clause {clause.clause_index} has {len(preds)} predicate atoms in its body")
    if not preds and clause.head is not None:
        return ClauseKind.INIT
    if preds and clause.head is None:
        return ClauseKind.BAD
    if preds and clause.head is not None:
        return ClauseKind.TRANS
    raise NonHornShape(f"Clause {clause.clause_index} mentions no predicate")


def _contains_negated_predicate(expr: SExpr, predicates: Dict[str, int], negated: bool = False) -> bool:
    if not isinstance(expr, list) or not expr:
        return False
    head = expr[0]
    if isinstance(head, Symbol) and head in predicates and negated:
        return True
    now_negated = negated or (isinstance(head, Symbol) and head == "not")
    return any(_contains_negated_predicate(e, predicates, now_negated) for e in expr[1:])


def _read_clause(expr: SExpr, clause_index: int, predicates: Dict[str, int]) -> HornClause:
    if not (isinstance(expr, list) and len(expr) == 3 and expr[0] == "forall"):
        raise UnsupportedConstruct(f"Assertion {clause_index} is not a universally quantified clause")
    variables: Dict[str, str] = {}
    for binding in expr[1]:
        if not (isinstance(binding, list) and len(binding) == 2 and isinstance(binding[0], Symbol)):
            raise UnsupportedConstruct(f"Malformed binder {render(binding)}")
        if binding[1] != "String":
            raise UnsupportedConstruct(f"Variable {binding[0]} has sort {render(binding[1])}; only String is supported")
        variables[str(binding[0])] = "String"

    matrix = expr[2]
    if isinstance(matrix, list) and matrix and matrix[0] == "=>" and len(matrix) == 3:
        body_expr, head_expr = matrix[1], matrix[2]
    else:
        body_expr, head_expr = Symbol("true"), matrix

    if _contains_negated_predicate(body_expr, predicates):
        raise NonHornShape(f"Clause {clause_index} uses the predicate under a negation")

    if isinstance(head_expr, Symbol) and head_expr == "false":
        head = None
    elif isinstance(head_expr, list) and head_expr and isinstance(head_expr[0], Symbol) \
            and head_expr[0] in predicates:
        atoms = to_conjunction(head_expr, variables, predicates)
        head = atoms[0]
    else:
        raise NonHornShape(f"Clause {clause_index} has head {render(head_expr)}; expected a predicate atom or false")

    body = to_conjunction(body_expr, variables, predicates)
    return HornClause(clause_index, tuple(variables), tuple(body), head)


def _pattern_regex(term: Term, constraints: Dict[str, Regex], subject: str) -> Regex:
    parts = []
    seen = set()
    for kind, value in flatten_term(term):
        if kind == "lit":
            parts.append(literal(value))
            continue
        if value == subject or value in seen:
            raise UnsupportedConstruct(f"Pattern for {subject} repeats variable {value}")
        seen.add(value)
        parts.append(constraints.get(value, Star(AllChar())))
    return concat(*parts)


def _language_regex(clause: HornClause, subject: str) -> Regex:
    """Regex for the words `subject` may take under the clause constraints"""
    defining: List[Atom] = []
    side: Dict[str, Regex] = {}
    for atom in clause.constraints:
        if isinstance(atom, InRe) and atom.term == StrVar(subject):
            defining.append(atom)
        elif isinstance(atom, Eq) and StrVar(subject) in (atom.left, atom.right):
            defining.append(atom)
        elif isinstance(atom, InRe) and isinstance(atom.term, StrVar) and atom.term.name not in side:
            side[atom.term.name] = atom.regex
        else:
            raise UnsupportedConstruct(f"Clause {clause.clause_index}: unsupported constraint on {subject}")

    if not defining:
        if side:
            raise UnsupportedConstruct(f"Clause {clause.clause_index}: constraints do not mention {subject}")
        return Star(AllChar())
    if len(defining) > 1:
        raise UnsupportedConstruct(f"Clause {clause.clause_index}: {subject} is constrained more than once")

    atom = defining[0]
    if isinstance(atom, InRe):
        if side:
            raise UnsupportedConstruct(f"Clause {clause.clause_index}: stray constraints beside {subject}")
        return atom.regex
    pattern = atom.right if atom.left == StrVar(subject) else atom.left
    unused = set(side) - set(term_vars(pattern))
    if unused:
        raise UnsupportedConstruct(f"Clause {clause.clause_index}: constraints on unused variables {sorted(unused)}")
    return _pattern_regex(pattern, side, subject)


def _substitute(term: Term, name: str, replacement: Term) -> Term:
    if isinstance(term, StrVar) and term.name == name:
        return replacement
    if isinstance(term, StrConcat):
        return StrConcat(tuple(_substitute(p, name, replacement) for p in term.parts))
    return term


def extract_rewrite_rule(clause: HornClause) -> Union[RewriteRule, NotInFragment]:
    """Structured rule for a Trans clause, or NotInFragment when the shape is not a rewrite"""
    var_in = clause.body_predicates[0].var
    var_out = clause.head.var
    constraints = clause.constraints

    if var_in == var_out:
        if constraints:
            return NotInFragment("input and output coincide under extra constraints")
        return RewriteRule.of([Var(0)], [Var(0)])

    t_in: Optional[Term] = None
    t_out: Optional[Term] = None
    for atom in constraints:
        if not isinstance(atom, Eq):
            return NotInFragment("membership constraints inside a transition")
        for subject, other in ((atom.left, atom.right), (atom.right, atom.left)):
            if subject == StrVar(var_in) and other != StrVar(var_out) and t_in is None \
                    and var_in not in term_vars(other):
                t_in = other
                break
            if subject == StrVar(var_out) and t_out is None and var_out not in term_vars(other):
                t_out = other
                break
        else:
            return NotInFragment("equation that does not define the input or output word")

    if t_out is None:
        return NotInFragment("output word is not defined by an equation")
    if t_in is None:
        t_in = StrVar(var_in)
    else:
        t_out = _substitute(t_out, var_in, t_in)
    if var_out in term_vars(t_in):
        return NotInFragment("input pattern mentions the output word")
    return build_rule(flatten_term(t_in), flatten_term(t_out))


def read_clauses(text: str) -> Tuple[str, List[HornClause]]:
    """Predicate name and the asserted Horn clauses, before classification"""
    predicates: Dict[str, int] = {}
    clauses: List[HornClause] = []
    assert_count = 0

    for command in parse_sexprs(text):
        if not (isinstance(command, list) and command and isinstance(command[0], Symbol)):
            raise UnsupportedConstruct(f"Unexpected top-level form {render(command)}")
        head = command[0]
        if head in _IGNORED_COMMANDS:
            continue
        if head == "declare-fun":
            if len(command) != 4 or command[3] != "Bool":
                raise UnsupportedConstruct(f"Only Boolean predicates may be declared: {render(command)}")
            if command[2] != ["String"]:
                raise UnsupportedConstruct(f"Predicate {command[1]} must have exactly one String argument")
            if predicates:
                raise MultiplePredicates(f"Second predicate {command[1]} declared; only one is supported")
            predicates[str(command[1])] = 1
        elif head == "assert":
            assert_count += 1
            if not predicates:
                raise NonHornShape(f"Assertion {assert_count} precedes the predicate declaration")
            clauses.append(_read_clause(command[1], assert_count, predicates))
        else:
            raise UnsupportedConstruct(f"Unsupported command '{head}'")

    if not predicates:
        raise EmptySystem("No predicate is declared")
    return next(iter(predicates)), clauses


def raw_form(clause: HornClause) -> RawClause:
    """Transition clause kept as its constraint atoms"""
    return RawClause(tuple(clause.constraints), clause.body_predicates[0].var,
                     clause.head.var, clause.variables)


def parse_script(text: str, name: str = "system") -> ClauseSystem:
    """Parse a CHC script into a validated ClauseSystem"""
    predicate, clauses = read_clauses(text)

    init, bad, trans = [], [], []
    for clause in clauses:
        kind = classify_clause(clause)
        if kind is ClauseKind.INIT:
            init.append(LanguageClause(clause.clause_index, _language_regex(clause, clause.head.var)))
        elif kind is ClauseKind.BAD:
            subject = clause.body_predicates[0].var
            bad.append(LanguageClause(clause.clause_index, _language_regex(clause, subject)))
        else:
            rule = extract_rewrite_rule(clause)
            if isinstance(rule, NotInFragment):
                logger.warning(f"Clause {clause.clause_index} kept as raw constraint: {rule.reason}")
                trans.append(TransClause(clause.clause_index, raw=raw_form(clause)))
            else:
                trans.append(TransClause(clause.clause_index, rule=rule))

    if not init:
        raise EmptySystem("The system has no initial clause")

    alphabet = alphabet_of(
        [c.regex for c in init + bad],
        [c.rule for c in trans if c.rule is not None],
        [c.raw for c in trans if c.raw is not None],
    )
    system = ClauseSystem(predicate, alphabet, tuple(init), tuple(bad), tuple(trans), name)
    logger.info(f"Parsed {name}: {len(init)} init, {len(bad)} bad, {len(trans)} transition clauses "
                f"over alphabet {''.join(alphabet)!r}")
    return system


def parse_file(path: Union[str, Path]) -> ClauseSystem:
    path = Path(path)
    return parse_script(path.read_text(encoding="utf-8"), name=path.stem)
