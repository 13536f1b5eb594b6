import pytest
from hypothesis import given

from nanolog import (
    EMPTY_ENV,
    RENAME_SEPARATOR,
    BudgetExhausted,
    Compound,
    Env,
    Rule,
    Var,
    apply_subst_rule,
    apply_subst_term,
    apply_subst_terms,
    env_is_acyclic,
    rename_rule,
    term_vars,
)
from nanolog.parser import parse_rule, parse_term

from .gen import rules as rule_strategy
from .gen import terms as term_strategy
from .oracles import conv, show, subst_fixpoint


def t(src):
    return parse_term(src)


class TestConstruction:
    def test_variable_names_validated(self):
        Var("X")
        Var("Xs_1")
        Var("X.3")  # renamed form
        with pytest.raises(ValueError):
            Var("x")
        with pytest.raises(ValueError):
            Var("X.")
        with pytest.raises(ValueError):
            Var("")

    def test_functor_names_validated(self):
        Compound("f")
        Compound("fooBar_9")
        with pytest.raises(ValueError):
            Compound("F")
        with pytest.raises(ValueError):
            Compound("f.1")

    def test_rule_head_must_be_compound(self):
        with pytest.raises(ValueError):
            Rule(Var("X"), ())  # type: ignore[arg-type]

    def test_env_rejects_self_binding(self):
        with pytest.raises(ValueError):
            Env({"X": Var("X")})
        with pytest.raises(ValueError):
            EMPTY_ENV.bind("X", Var("X"))

    def test_env_is_immutable(self):
        env = Env({"X": t("a")})
        extended = env.bind("Y", t("b"))
        assert "Y" not in env
        assert "Y" in extended


class TestSubstitution:
    def test_direct_lookup(self):
        env = Env({"X": t("a")})
        assert apply_subst_term(env, Var("X")) == t("a")

    def test_chained_lookup_matches_fixpoint_oracle(self):
        # {X -> Y, Y -> b} applied to f(X, Z): oracle fixpoint gives f(b,Z)
        env = Env({"X": Var("Y"), "Y": t("b")})
        term = t("f(X,Z)")
        result = apply_subst_term(env, term)
        assert result == t("f(b,Z)")
        oracle = subst_fixpoint({"X": ("v", "Y"), "Y": ("f", "b", ())}, conv(term))
        assert show(conv(result)) == show(oracle)

    def test_cyclic_binding_exhausts_budget(self):
        env = Env({"X": t("f(X)")})
        with pytest.raises(BudgetExhausted):
            apply_subst_term(env, Var("X"), 16)

    def test_budget_must_be_positive(self):
        with pytest.raises(ValueError):
            apply_subst_term(EMPTY_ENV, Var("X"), 0)

    def test_deep_chain_within_budget(self):
        names = [f"X{i}" for i in range(2000)]
        env = Env(
            {names[i]: Var(names[i + 1]) for i in range(len(names) - 1)}
            | {names[-1]: t("a")}
        )
        assert apply_subst_term(env, Var(names[0]), 4096) == t("a")

    def test_terms_elementwise(self):
        assert apply_subst_terms(EMPTY_ENV, [Var("X"), t("a")]) == [Var("X"), t("a")]
        env = Env({"X": t("a")})
        assert apply_subst_terms(env, [Var("X"), Var("X")]) == [t("a"), t("a")]
        env = Env({"X": Var("Y"), "Y": t("g(b)")})
        assert apply_subst_terms(env, [t("f(X)")]) == [t("f(g(b))")]

    def test_rule_substitution(self):
        rule = parse_rule("p(X) :- q(X).")
        assert apply_subst_rule(EMPTY_ENV, rule) == rule
        env = Env({"X": t("a")})
        assert apply_subst_rule(env, rule) == parse_rule("p(a) :- q(a).")
        env = Env({"Y": t("s(Z)")})
        assert apply_subst_rule(env, parse_rule("add(zero,Y,Y).")) == parse_rule(
            "add(zero,s(Z),s(Z))."
        )

    @given(term_strategy)
    def test_empty_env_is_identity(self, term):
        assert apply_subst_term(EMPTY_ENV, term) == term

    @given(term_strategy)
    def test_idempotent_on_acyclic_envs(self, term):
        env = Env({"X": t("g(W)"), "Y": Var("W"), "Z": t("a")})
        once = apply_subst_term(env, term)
        assert apply_subst_term(env, once) == once


class TestRenaming:
    def test_definitional_examples(self):
        assert rename_rule(parse_rule("p(X) :- q(X)."), 3) == Rule(
            Compound("p", (Var("X.3"),)), (Compound("q", (Var("X.3"),)),)
        )
        fact = parse_rule("a.")
        assert rename_rule(fact, 7) == fact
        renamed = rename_rule(parse_rule("add(s(X),Y,s(Z)) :- add(X,Y,Z)."), 1)
        assert str(renamed) == "add(s(X.1),Y.1,s(Z.1)) :- add(X.1,Y.1,Z.1)."

    @given(rule_strategy)
    def test_fresh_across_instances(self, rule):
        first = rename_rule(rule, 1)
        second = rename_rule(rule, 2)
        vars_first = set(term_vars(first.conclusion))
        for p in first.premises:
            vars_first.update(term_vars(p))
        vars_second = set(term_vars(second.conclusion))
        for p in second.premises:
            vars_second.update(term_vars(p))
        assert not vars_first & vars_second
        # and disjoint from any parser-producible name
        assert all(RENAME_SEPARATOR in name for name in vars_first)

    @given(rule_strategy)
    def test_erasing_suffixes_restores_rule(self, rule):
        renamed = rename_rule(rule, 9)

        def erase(term):
            if isinstance(term, Var):
                return Var(term.name.rsplit(RENAME_SEPARATOR, 1)[0])
            return Compound(term.functor, tuple(erase(a) for a in term.args))

        restored = Rule(erase(renamed.conclusion), tuple(erase(p) for p in renamed.premises))
        assert restored == rule


class TestTermVars:
    def test_first_occurrence_order(self):
        assert term_vars(t("f(X,g(Y,X))")) == ["X", "Y"]
        assert term_vars(t("a")) == []
        assert term_vars(t("p(Z,Y,Z,X)")) == ["Z", "Y", "X"]


def test_env_is_acyclic():
    assert env_is_acyclic(Env({"X": t("a")}))
    assert not env_is_acyclic(Env({"X": t("f(X)")}), 64)
