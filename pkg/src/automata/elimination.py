"""DFA to regular expression by state elimination on a generalized NFA"""

import logging
from typing import Dict, Set, Tuple

from src.automata.dfa import Dfa
from src.automata.nfa import AutomataError, regex_to_nfa
from src.automata.operations import Equal, determinize, dfa_equivalent
from src.automata.regex import EmptySet, Epsilon, Regex, Sym, concat, star, union

logger = logging.getLogger("strchc")


class InternalConsistencyError(AutomataError):
    """A construction produced a result that failed its own language check"""
    pass


def _useful_states(d: Dfa) -> Set[int]:
    forward = {d.initial}
    stack = [d.initial]
    while stack:
        q = stack.pop()
        for t in d.delta[q]:
            if t not in forward:
                forward.add(t)
                stack.append(t)

    backward = set(d.accepting)
    changed = True
    while changed:
        changed = False
        for q in range(d.num_states):
            if q not in backward and any(t in backward for t in d.delta[q]):
                backward.add(q)
                changed = True
    return forward & backward


def _eliminate(d: Dfa) -> Regex:
    useful = _useful_states(d)
    if d.initial not in useful:
        return EmptySet()

    start, final = d.num_states, d.num_states + 1
    edges: Dict[Tuple[int, int], Regex] = {(start, d.initial): Epsilon()}
    for q in sorted(useful):
        for i, a in enumerate(d.alphabet):
            t = d.delta[q][i]
            if t in useful:
                edges[(q, t)] = union(edges.get((q, t), EmptySet()), Sym(a))
        if q in d.accepting:
            edges[(q, final)] = Epsilon()

    remaining = set(useful)
    while remaining:
        def degree(s):
            ins = sum(1 for (p, r) in edges if r == s and p != s)
            outs = sum(1 for (p, r) in edges if p == s and r != s)
            return ins * outs, s

        s = min(remaining, key=degree)
        remaining.remove(s)
        loop = edges.pop((s, s), None)
        loop_star = Epsilon() if loop is None else star(loop)
        incoming = sorted((p, r) for (p, r) in edges if r == s)
        outgoing = sorted((p, r) for (p, r) in edges if p == s)
        for p, _ in incoming:
            for _, r in outgoing:
                path = concat(edges[(p, s)], loop_star, edges[(s, r)])
                edges[(p, r)] = union(edges.get((p, r), EmptySet()), path)
        for key in incoming + outgoing:
            del edges[key]

    return edges.get((start, final), EmptySet())


def dfa_to_regex(d: Dfa) -> Regex:
    """Regex with L(regex) = L(d); elimination order minimizes in-degree x out-degree"""
    regex = _eliminate(d)
    rebuilt = determinize(regex_to_nfa(regex, d.alphabet))
    check = dfa_equivalent(rebuilt, d)
    if not isinstance(check, Equal):
        logger.error(f"State elimination produced a wrong regex {regex}; witness {check.word!r}")
        raise InternalConsistencyError(f"Regex for a {d.num_states}-state DFA differs on {check.word!r}")
    return regex
