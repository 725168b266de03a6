"""SMT-LIB 2.6 text for clause queries: fixed clause constraints plus per-hypothesis assertions"""

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

from src.automata.regex import AllChar, Regex, Star
from src.frontend.printer import atom_to_smtlib, regex_to_smtlib, segments_to_term, term_to_smtlib
from src.frontend.sexpr import encode_string_literal
from src.frontend.system import ClauseSystem, LanguageClause, TransClause
from src.frontend.terms import Atom, Eq, InRe, Not, StrConcat, StrVar, Term

VAR_IN = "var_in"
VAR_OUT = "var_out"


def serialize_regex(r: Regex, alphabet: Optional[Sequence[str]] = None) -> str:
    return regex_to_smtlib(r, alphabet)


def sigma_star(alphabet: Sequence[str]) -> str:
    return serialize_regex(Star(AllChar()), alphabet)


def segment_names(count: int) -> List[str]:
    return [f"seg{i}" for i in range(count)]


def _rename_term(term: Term, names: Dict[str, str]) -> Term:
    if isinstance(term, StrVar):
        return StrVar(names.get(term.name, term.name))
    if isinstance(term, StrConcat):
        return StrConcat(tuple(_rename_term(p, names) for p in term.parts))
    return term


def _rename_atom(atom: Atom, names: Dict[str, str]) -> Atom:
    if isinstance(atom, Not):
        return Not(_rename_atom(atom.atom, names))
    if isinstance(atom, InRe):
        return InRe(_rename_term(atom.term, names), atom.regex)
    if isinstance(atom, Eq):
        return Eq(_rename_term(atom.left, names), _rename_term(atom.right, names))
    return atom


@dataclass(frozen=True)
class ClauseQuery:
    """Constraints of one clause over var_in/var_out and fresh segment variables"""
    clause_index: int
    kind: str  # init | bad | trans
    declarations: Tuple[str, ...]
    fixed: Tuple[str, ...]
    value_vars: Tuple[str, ...]

    def hypothesis_terms(self, h_smt: str) -> Tuple[str, ...]:
        """Assertions making the clause fail for hypothesis h"""
        if self.kind == "init":
            return (f"(not (str.in_re {VAR_IN} {h_smt}))",)
        if self.kind == "bad":
            return (f"(str.in_re {VAR_OUT} {h_smt})",)
        return (f"(str.in_re {VAR_IN} {h_smt})", f"(not (str.in_re {VAR_OUT} {h_smt}))")

    def membership_terms(self, w_in: str, w_out: Optional[str] = None) -> Tuple[str, ...]:
        """Assertions binding the query words"""
        terms = []
        if self.kind in ("init", "trans"):
            terms.append(f"(= {VAR_IN} {encode_string_literal(w_in)})")
        if self.kind == "bad":
            terms.append(f"(= {VAR_OUT} {encode_string_literal(w_in)})")
        if self.kind == "trans" and w_out is not None:
            terms.append(f"(= {VAR_OUT} {encode_string_literal(w_out)})")
        return tuple(terms)


def clause_query(system: ClauseSystem, clause: Union[LanguageClause, TransClause]) -> ClauseQuery:
    domain = sigma_star(system.alphabet)
    if isinstance(clause, LanguageClause):
        is_init = clause in system.init_clauses
        var = VAR_IN if is_init else VAR_OUT
        return ClauseQuery(
            clause.clause_index, "init" if is_init else "bad",
            (f"(declare-const {var} String)",),
            (f"(str.in_re {var} {domain})", f"(str.in_re {var} {serialize_regex(clause.regex, system.alphabet)})"),
            (var,),
        )

    if clause.rule is not None:
        segs = segment_names(clause.rule.num_vars)
        t_in = term_to_smtlib(segments_to_term(clause.rule.lhs, segs))
        t_out = term_to_smtlib(segments_to_term(clause.rule.rhs, segs))
        fixed = [f"(= {VAR_IN} {t_in})", f"(= {VAR_OUT} {t_out})"]
    else:
        raw = clause.raw
        others = [v for v in raw.bound if v not in (raw.var_in, raw.var_out)]
        segs = segment_names(len(others))
        names = {raw.var_in: VAR_IN, raw.var_out: VAR_OUT, **dict(zip(others, segs))}
        fixed = [atom_to_smtlib(_rename_atom(a, names), system.alphabet) for a in raw.atoms]

    declarations = tuple(f"(declare-const {v} String)" for v in [VAR_IN, VAR_OUT] + segs)
    domains = [f"(str.in_re {VAR_IN} {domain})", f"(str.in_re {VAR_OUT} {domain})"]
    return ClauseQuery(clause.clause_index, "trans", declarations, tuple(domains + fixed), (VAR_IN, VAR_OUT))


def preamble(logic: str = "QF_S") -> List[str]:
    return [f"(set-logic {logic})", "(set-option :produce-models true)"]


def standalone_script(query: ClauseQuery, extra: Sequence[str], logic: str = "QF_S",
                      status: Optional[str] = None, comment: Optional[str] = None,
                      values: Sequence[str] = ()) -> str:
    """Non-incremental script: no push/pop, one check-sat, then get-value for `values`"""
    lines = []
    if comment:
        lines.append(f"; {comment}")
    lines.extend(preamble(logic) if values else [f"(set-logic {logic})"])
    if status is not None:
        lines.append(f"(set-info :status {status})")
    lines.extend(query.declarations)
    lines.extend(f"(assert {t})" for t in query.fixed + tuple(extra))
    lines.append("(check-sat)")
    if values:
        lines.append(f"(get-value ({' '.join(values)}))")
    lines.append("(exit)")
    return "\n".join(lines) + "\n"


def serialize_query(query: ClauseQuery, h_regex: Regex, alphabet: Sequence[str],
                    logic: str = "QF_S", status: Optional[str] = None) -> str:
    """Standalone equivalence sub-query for one clause against hypothesis h"""
    h_smt = serialize_regex(h_regex, alphabet)
    return standalone_script(query, query.hypothesis_terms(h_smt), logic, status,
                             comment=f"clause {query.clause_index} ({query.kind})")
