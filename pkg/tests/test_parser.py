import pytest
from hypothesis import given

from nanolog import Compound, Program, Var
from nanolog.parser import (
    BareVariableHead,
    ParseError,
    parse_program,
    parse_query,
    parse_rule,
    parse_term,
    print_program,
    print_rule,
    print_term,
)

from .gen import rules as rule_strategy
from .gen import terms as term_strategy


class TestParseTerm:
    def test_compound(self):
        assert parse_term("grandparent(X,Y)") == Compound(
            "grandparent", (Var("X"), Var("Y"))
        )

    def test_constant(self):
        assert parse_term("zero") == Compound("zero")

    def test_truncated_input(self):
        with pytest.raises(ParseError) as err:
            parse_term("f(")
        assert (err.value.position.line, err.value.position.column) == (1, 3)
        assert err.value.expected == "term"

    def test_whitespace_and_nesting(self):
        assert parse_term(" f( X , g(a ,Y) ) ") == parse_term("f(X,g(a,Y))")

    def test_rejects_trailing_garbage(self):
        with pytest.raises(ParseError):
            parse_term("f(a) b")

    def test_rejects_empty_arglist(self):
        with pytest.raises(ParseError):
            parse_term("f()")

    def test_rejects_wildcard(self):
        with pytest.raises(ParseError):
            parse_term("_")

    def test_rejects_renamed_variable_syntax(self):
        # X.3 is an internal name; the source syntax cannot produce it
        with pytest.raises(ParseError):
            parse_term("X.3")


class TestParseRule:
    def test_ancestor_compact_literal(self):
        rule = parse_rule("ancestor(X,Y) :- parent(Z,Y), ancestor(X,Z).")
        assert rule.conclusion == Compound("ancestor", (Var("X"), Var("Y")))
        assert rule.premises == (
            Compound("parent", (Var("Z"), Var("Y"))),
            Compound("ancestor", (Var("X"), Var("Z"))),
        )

    def test_fact(self):
        rule = parse_rule("parent(alice,bob).")
        assert rule.is_fact()
        assert rule.premises == ()

    def test_bare_variable_head(self):
        with pytest.raises(BareVariableHead):
            parse_rule("X :- p(X).")
        with pytest.raises(BareVariableHead):
            parse_rule("X.")

    def test_missing_period(self):
        with pytest.raises(ParseError):
            parse_rule("p(a)")


class TestParseProgram:
    def test_empty(self):
        assert parse_program("") == Program(())

    def test_comments_only(self):
        assert parse_program("% a comment\n   % another\n") == Program(())

    def test_two_rules_in_order(self):
        program = parse_program(
            "parent(alice,bob).\n% comment\nparent(bob,carol).\n"
        )
        assert [str(r) for r in program.rules] == [
            "parent(alice,bob).",
            "parent(bob,carol).",
        ]

    def test_rules_may_span_lines(self):
        program = parse_program("p(X) :-\n  q(X),\n  r(X).\n")
        assert len(program.rules) == 1


class TestParseQuery:
    def test_single_goal(self):
        assert parse_query("grandparent(alice,X)") == [
            Compound("grandparent", (Compound("alice"), Var("X")))
        ]

    def test_conjunction_with_period(self):
        goals = parse_query("parent(X,Y), parent(Y,Z).")
        assert len(goals) == 2

    def test_bare_comma(self):
        with pytest.raises(ParseError):
            parse_query(",")


class TestPrinting:
    def test_canonical_forms(self):
        assert print_term(parse_term("f(a,X)")) == "f(a,X)"
        assert print_rule(parse_rule("parent( alice , bob ).")) == "parent(alice,bob)."
        assert (
            print_rule(parse_rule("grandparent(X,Y):-parent(X,Z),parent(Z,Y)."))
            == "grandparent(X,Y) :- parent(X,Z), parent(Z,Y)."
        )

    def test_program_one_rule_per_line(self):
        program = parse_program("a. b.")
        assert print_program(program) == "a.\nb.\n"


class TestRoundTrip:
    @given(term_strategy)
    def test_terms(self, term):
        assert parse_term(print_term(term)) == term

    @given(rule_strategy)
    def test_rules(self, rule):
        assert parse_rule(print_rule(rule)) == rule

    @given(rule_strategy)
    def test_whitespace_and_comment_insensitivity(self, rule):
        text = print_rule(rule)
        spaced = text.replace(",", " , % c\n").replace(":-", " :- % c\n")
        assert parse_rule(spaced) == rule


def test_error_positions_inside_input():
    for bad in ["f(", "f(a,", "p(a) :-", "9", "f(a))", ",", ""]:
        with pytest.raises(ParseError) as err:
            parse_rule(bad)
        pos = err.value.position
        lines = bad.split("\n")
        assert 1 <= pos.line <= len(lines)
        assert 1 <= pos.column <= len(lines[pos.line - 1]) + 1
