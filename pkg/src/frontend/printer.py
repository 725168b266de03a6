"""Render regexes, terms and whole clause systems back to SMT-LIB 2.6"""

from typing import List, Optional, Sequence

from src.automata.regex import (
    AllChar, Concat, EmptySet, Epsilon, Opt, Plus, Range, Regex, Star, Sym, Union,
)
from src.frontend.rules import Const, RewriteRule, Segment, Var
from src.frontend.sexpr import encode_string_literal, render
from src.frontend.system import ClauseSystem, LanguageClause, RawClause, TransClause
from src.frontend.terms import Atom, Eq, InRe, Not, PredAtom, StrConcat, StrLit, StrVar, Term


def regex_to_smtlib(r: Regex, alphabet: Optional[Sequence[str]] = None) -> str:
    """SMT-LIB regex term; with `alphabet`, re.allchar is expanded to a union over it"""
    if isinstance(r, EmptySet):
        return "re.none"
    if isinstance(r, Epsilon):
        return '(str.to_re "")'
    if isinstance(r, Sym):
        return f"(str.to_re {encode_string_literal(r.char)})"
    if isinstance(r, Range):
        return f"(re.range {encode_string_literal(r.lo)} {encode_string_literal(r.hi)})"
    if isinstance(r, AllChar):
        if alphabet is None:
            return "re.allchar"
        symbols = sorted(set(alphabet))
        if len(symbols) == 1:
            return f"(str.to_re {encode_string_literal(symbols[0])})"
        return "(re.union " + " ".join(f"(str.to_re {encode_string_literal(a)})" for a in symbols) + ")"
    if isinstance(r, Concat):
        # runs of symbols fuse into one literal
        items: List[str] = []
        run = ""
        for part in r.parts:
            if isinstance(part, Sym):
                run += part.char
                continue
            if run:
                items.append(f"(str.to_re {encode_string_literal(run)})")
                run = ""
            items.append(regex_to_smtlib(part, alphabet))
        if run:
            items.append(f"(str.to_re {encode_string_literal(run)})")
        if len(items) == 1:
            return items[0]
        return "(re.++ " + " ".join(items) + ")"
    if isinstance(r, Union):
        return "(re.union " + " ".join(regex_to_smtlib(p, alphabet) for p in r.parts) + ")"
    if isinstance(r, Star):
        return f"(re.* {regex_to_smtlib(r.child, alphabet)})"
    if isinstance(r, Plus):
        return f"(re.+ {regex_to_smtlib(r.child, alphabet)})"
    if isinstance(r, Opt):
        return f"(re.opt {regex_to_smtlib(r.child, alphabet)})"
    raise TypeError(f"Unknown regex node {type(r).__name__}")


def term_to_smtlib(term: Term) -> str:
    if isinstance(term, StrVar):
        return render(term.name)
    if isinstance(term, StrLit):
        return encode_string_literal(term.value)
    return "(str.++ " + " ".join(term_to_smtlib(p) for p in term.parts) + ")"


def atom_to_smtlib(atom: Atom, alphabet: Optional[Sequence[str]] = None) -> str:
    if isinstance(atom, PredAtom):
        return f"({render(atom.predicate)} {render(atom.var)})"
    if isinstance(atom, InRe):
        return f"(str.in_re {term_to_smtlib(atom.term)} {regex_to_smtlib(atom.regex, alphabet)})"
    if isinstance(atom, Eq):
        return f"(= {term_to_smtlib(atom.left)} {term_to_smtlib(atom.right)})"
    if isinstance(atom, Not):
        return f"(not {atom_to_smtlib(atom.atom, alphabet)})"
    raise TypeError(f"Unknown atom {type(atom).__name__}")


def segments_to_term(segments: Sequence[Segment], names: Sequence[str]) -> Term:
    """Rule side as a string term; Var(i) is named names[i]"""
    parts: List[Term] = [StrVar(names[s.index]) if isinstance(s, Var) else StrLit(s.word) for s in segments]
    if not parts:
        return StrLit("")
    if len(parts) == 1:
        return parts[0]
    return StrConcat(tuple(parts))


def rule_var_names(rule: RewriteRule, prefix: str = "x") -> List[str]:
    return [f"{prefix}{i}" for i in range(rule.num_vars)]


def _conjunction(atoms: Sequence[str]) -> str:
    if len(atoms) == 1:
        return atoms[0]
    return "(and " + " ".join(atoms) + ")"


def _language_clause(system: ClauseSystem, clause: LanguageClause, is_init: bool) -> str:
    p = render(system.predicate_name)
    member = f"(str.in_re w {regex_to_smtlib(clause.regex)})"
    if is_init:
        return f"(assert (forall ((w String)) (=> {member} ({p} w))))"
    return f"(assert (forall ((w String)) (=> (and ({p} w) {member}) false)))"


def _trans_clause(system: ClauseSystem, clause: TransClause) -> str:
    p = render(system.predicate_name)
    if clause.raw is not None:
        raw: RawClause = clause.raw
        binders = " ".join(f"({render(v)} String)" for v in raw.bound)
        body = [f"({p} {render(raw.var_in)})"] + [atom_to_smtlib(a) for a in raw.atoms]
        return f"(assert (forall ({binders}) (=> {_conjunction(body)} ({p} {render(raw.var_out)}))))"
    rule = clause.rule
    names = rule_var_names(rule)
    binders = " ".join(f"({v} String)" for v in ["vi", "vo"] + names)
    t_in = term_to_smtlib(segments_to_term(rule.lhs, names))
    t_out = term_to_smtlib(segments_to_term(rule.rhs, names))
    body = [f"({p} vi)", f"(= vi {t_in})", f"(= vo {t_out})"]
    return f"(assert (forall ({binders}) (=> {_conjunction(body)} ({p} vo))))"


def print_system(system: ClauseSystem) -> str:
    """SMT-LIB script that parses back to a structurally equal system"""
    lines = ["(set-logic HORN)", f"(declare-fun {render(system.predicate_name)} (String) Bool)"]
    init = {c.clause_index for c in system.init_clauses}
    for clause in system.all_clauses():
        if isinstance(clause, TransClause):
            lines.append(_trans_clause(system, clause))
        else:
            lines.append(_language_clause(system, clause, clause.clause_index in init))
    lines.append("(check-sat)")
    return "\n".join(lines) + "\n"
