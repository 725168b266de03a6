"""Run outcomes and their textual rendering"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence, Tuple, Union

from src.automata.dfa import Dfa
from src.automata.regex import Regex
from src.frontend.printer import regex_to_smtlib
from src.frontend.sexpr import encode_string_literal
from src.learners.sample import Sample


@dataclass(frozen=True)
class Safe:
    invariant_dfa: Dfa
    invariant_regex: Regex
    learner_size: int
    minimized_size: int

    status = "sat"


@dataclass(frozen=True)
class Unsafe:
    trace: Tuple[Tuple[str, int], ...]

    status = "unsat"


@dataclass(frozen=True)
class Unknown:
    reason: str
    partial_sample: Sample = field(default_factory=Sample, compare=False)

    status = "unknown"


Verdict = Union[Safe, Unsafe, Unknown]


def emit(verdict: Verdict, predicate_name: str = "inv", alphabet: Sequence[str] = ()) -> str:
    """Text printed on standard output for a verdict"""
    if isinstance(verdict, Safe):
        regex = regex_to_smtlib(verdict.invariant_regex, alphabet or None)
        return f"sat\n(define-fun {predicate_name} ((w String)) Bool (str.in_re w {regex}))\n"
    if isinstance(verdict, Unsafe):
        lines = ["unsat"]
        lines += [f"; step {k}: {encode_string_literal(word)} via clause {clause}" for k, (word, clause) in enumerate(verdict.trace)]
        return "\n".join(lines) + "\n"
    return f"unknown\n; {verdict.reason}\n"


def write_dot(verdict: Verdict, path: Union[str, Path], name: str = "invariant") -> Optional[Path]:
    """DOT file of a Safe verdict's invariant; nothing is written otherwise"""
    if not isinstance(verdict, Safe):
        return None
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(verdict.invariant_dfa.to_dot(name), encoding="utf-8")
    return path

