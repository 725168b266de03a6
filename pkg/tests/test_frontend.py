"""Tests for the s-expression reader, the CHC parser, rewrite rules and the printer"""

import random
from pathlib import Path

import pytest

from src.automata.operations import Equal, compile_regex, dfa_equivalent
from src.frontend.parser import (
    ClauseKind, MultiplePredicates, NonHornShape, classify_clause, extract_rewrite_rule, parse_script,
    raw_form, read_clauses,
)
from src.frontend.printer import print_system, regex_to_smtlib
from src.frontend.rules import Const, NotInFragment, RewriteRule, RuleShapeError, Var, build_rule
from src.frontend.sexpr import (
    SExpressionError, StringLiteral, decode_string_literal, encode_string_literal, parse_sexprs,
)
from src.frontend.system import EmptySystem
from src.frontend.terms import UnsupportedConstruct
from src.automata.regex import AllChar, Sym, concat, literal, star, union
from src.oracles.matcher import raw_successors, words_up_to

BENCHMARKS = Path(__file__).parent.parent / "benchmarks"
CORPUS = sorted(p.stem for p in BENCHMARKS.glob("*.smt2"))

HEADER = "(set-logic HORN)\n(declare-fun inv (String) Bool)\n"


def script(*clauses: str) -> str:
    return HEADER + "\n".join(clauses) + "\n(check-sat)\n"


INIT_A = '(assert (forall ((x String)) (=> (= x "a") (inv x))))'


class TestSExpressions:
    """Tokenizer and string literals"""

    def test_nested_lists(self):
        assert parse_sexprs("(a (b c)) d") == [["a", ["b", "c"]], "d"]

    def test_comments_are_skipped(self):
        assert parse_sexprs("; note\n(x) ; trailing\n") == [["x"]]

    def test_string_literal_escapes(self):
        (literal_,) = parse_sexprs('"say ""hi"" \\u{41}"')
        assert isinstance(literal_, StringLiteral)
        assert literal_.value == 'say "hi" A'

    def test_encode_decode(self):
        assert encode_string_literal('a"b') == '"a""b"'
        assert encode_string_literal("é") == '"\\u{e9}"'
        assert decode_string_literal("\\u{e9}") == "é"

    def test_unbalanced(self):
        with pytest.raises(SExpressionError):
            parse_sexprs("(a (b)")
        with pytest.raises(SExpressionError):
            parse_sexprs("a)")


class TestRewriteRules:
    """Rule shapes, matching and application"""

    def test_build_renames_by_input_position(self):
        rule = build_rule([("var", "p"), ("lit", "III"), ("var", "q")],
                          [("var", "p"), ("lit", "U"), ("var", "q")])
        assert rule == RewriteRule.of([Var(0), Const("III"), Var(1)], [Var(0), Const("U"), Var(1)])
        assert rule.lhs_blocks == ("", "III", "")
        assert rule.rhs_blocks == ("", "U", "")

    def test_apply_all_positions(self):
        rule = RewriteRule.of([Var(0), Const("III"), Var(1)], [Var(0), Const("U"), Var(1)])
        assert rule.apply("MIIII") == ["MIU", "MUI"]
        assert rule.relates("MIIII", "MUI")
        assert not rule.relates("MIIII", "MU")

    def test_copying_rule(self):
        rule = RewriteRule.of([Const("M"), Var(0)], [Const("M"), Var(0), Var(0)])
        assert rule.copy_counts == (2,)
        assert not rule.is_copy_free
        assert rule.apply("MIU") == ["MIUIU"]

    def test_dropping_rule(self):
        rule = RewriteRule.of([Var(0), Const("UU"), Var(1)], [Var(0), Var(1)])
        assert rule.is_copy_free
        assert rule.apply("MUUU") == ["MU"]
        assert not rule.is_length_preserving()

    def test_length_preserving(self):
        rule = RewriteRule.of([Var(0), Const("rb"), Var(1)], [Var(0), Const("br"), Var(1)])
        assert rule.is_linear and rule.is_length_preserving()

    def test_reordering_is_outside_fragment(self):
        result = build_rule([("var", "a"), ("var", "b")], [("var", "b"), ("var", "a")])
        assert isinstance(result, NotInFragment)
        assert "reordered" in result.reason

    def test_repeated_input_variable(self):
        result = build_rule([("var", "a"), ("var", "a")], [("var", "a")])
        assert isinstance(result, NotInFragment)

    def test_unbound_output_variable(self):
        assert isinstance(build_rule([("var", "a")], [("var", "z")]), NotInFragment)

    def test_unnormalized_sides_rejected(self):
        with pytest.raises(RuleShapeError):
            RewriteRule((Const("a"), Const("b")), (Var(0),))


class TestParser:
    """Clause classification and rule extraction"""

    def test_mu_puzzle(self, mu_system):
        assert mu_system.predicate_name == "inv"
        assert mu_system.alphabet == ("I", "M", "U")
        assert [c.clause_index for c in mu_system.init_clauses] == [1]
        assert [c.clause_index for c in mu_system.trans_clauses] == [2, 3, 4, 5]
        assert [c.clause_index for c in mu_system.bad_clauses] == [6]
        assert not mu_system.has_raw
        assert mu_system.init_dfa.accepts("MI")
        assert mu_system.bad_dfa.accepts("MU")
        assert not mu_system.trans_clauses[1].rule.is_copy_free
        assert not mu_system.is_length_preserving()

    def test_token_passing(self, eqdist_system):
        assert eqdist_system.alphabet == ("b", "n", "r")
        assert len(eqdist_system.init_clauses) == 1
        assert len(eqdist_system.bad_clauses) == 1
        assert len(eqdist_system.trans_clauses) == 3
        init = eqdist_system.init_dfa
        assert init.accepts("rnb") and init.accepts("rnnnb")
        assert not init.accepts("rnnb")
        assert eqdist_system.is_length_preserving()

    def test_whole_corpus_parses_without_raw_clauses(self, benchmark_paths):
        from src.frontend.parser import parse_file
        assert len(benchmark_paths) >= 7
        for path in benchmark_paths:
            assert not parse_file(path).has_raw, path.name

    def test_clause_lookup(self, mu_system):
        assert mu_system.init_clause_of("MI") == 1
        assert mu_system.bad_clause_of("MU") == 6
        assert mu_system.bad_clause_of("MI") is None

    def test_regex_constraint_init(self):
        system = parse_script(script(
            '(assert (forall ((x String)) (=> (str.in_re x (re.+ (str.to_re "ab"))) (inv x))))'))
        assert system.init_dfa.accepts("abab")
        assert not system.init_dfa.accepts("")

    def test_reordering_clause_is_kept_raw(self):
        system = parse_script(script(
            INIT_A,
            '(assert (forall ((x String) (y String) (p String) (q String)) '
            '(=> (and (inv x) (= x (str.++ p "b" q)) (= y (str.++ q "b" p))) (inv y))))'))
        assert system.has_raw
        assert not system.trans_clauses[0].is_structured

    def test_two_predicates(self):
        text = HEADER + "(declare-fun other (String) Bool)\n" + INIT_A
        with pytest.raises(MultiplePredicates):
            parse_script(text)

    def test_non_horn_head(self):
        with pytest.raises(NonHornShape):
            parse_script(script(
                INIT_A,
                '(assert (forall ((x String)) (=> (inv x) (str.in_re x re.all))))'))

    def test_negated_predicate(self):
        with pytest.raises(NonHornShape):
            parse_script(script(
                INIT_A,
                '(assert (forall ((x String)) (=> (not (inv x)) (inv x))))'))

    def test_no_initial_clause(self):
        with pytest.raises(EmptySystem):
            parse_script(script('(assert (forall ((x String)) (=> (and (inv x) (= x "a")) false)))'))

    def test_unsupported_sort(self):
        with pytest.raises(UnsupportedConstruct):
            parse_script(script('(assert (forall ((x Int)) (=> (= x "a") (inv x))))'))

    def test_unsupported_command(self):
        with pytest.raises(UnsupportedConstruct):
            parse_script(HEADER + "(push 1)\n")



class TestRuleExtraction:
    """Extracted rules relate exactly the pairs the clause constraints allow"""

    @pytest.mark.parametrize("name", CORPUS)
    def test_rules_agree_with_word_equations(self, name):
        text = (BENCHMARKS / f"{name}.smt2").read_text(encoding="utf-8")
        alphabet = parse_script(text, name).alphabet
        _, clauses = read_clauses(text)
        every = list(words_up_to(alphabet, 8))
        rng = random.Random(name)
        checked = 0
        for clause in clauses:
            if classify_clause(clause) is not ClauseKind.TRANS:
                continue
            rule = extract_rewrite_rule(clause)
            assert isinstance(rule, RewriteRule), clause.clause_index
            raw = raw_form(clause)
            for w_in in every:
                expected = set(raw_successors(raw, w_in, alphabet, 8))
                assert {w for w in rule.apply(w_in) if len(w) <= 8} == expected, (str(rule), w_in)
                assert all(rule.relates(w_in, w_out) for w_out in expected)
                for w_out in rng.sample(every, 3):
                    assert rule.relates(w_in, w_out) == (w_out in expected), (str(rule), w_in, w_out)
            checked += 1
        assert checked > 0


class TestPrinter:
    """Printed systems parse back to the same clauses"""

    def test_regex_rendering(self):
        r = concat(literal("ab"), star(union(Sym("c"), AllChar())))
        assert regex_to_smtlib(r) == '(re.++ (str.to_re "ab") (re.* (re.union (str.to_re "c") re.allchar)))'
        assert regex_to_smtlib(AllChar(), ("a", "b")) == '(re.union (str.to_re "a") (str.to_re "b"))'

    def test_corpus_round_trip(self, benchmark_paths):
        from src.frontend.parser import parse_file
        for path in benchmark_paths:
            system = parse_file(path)
            again = parse_script(print_system(system), name=system.name)
            assert again.alphabet == system.alphabet
            assert again.rules == system.rules
            for old, new in zip(system.init_clauses + system.bad_clauses,
                                again.init_clauses + again.bad_clauses):
                assert old.clause_index == new.clause_index
                a = compile_regex(old.regex, system.alphabet)
                b = compile_regex(new.regex, system.alphabet)
                assert isinstance(dfa_equivalent(a, b), Equal), path.name
