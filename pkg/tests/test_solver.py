import time

import pytest

from nanolog import (
    Branch,
    SolutionLeaf,
    SolveOptions,
    SolveStream,
    Strategy,
    Truncated,
    build_tree,
    parse_program,
    parse_query,
    solve,
)
from nanolog.corpus import corpus_program

from .oracles import answer_set, sld_solutions

MINI_FAMILY = parse_program(
    """
    parent(alice,bob).
    parent(bob,carol).
    grandparent(X,Y) :- parent(X,Z), parent(Z,Y).
    """
)

PEANO = corpus_program("peano")
FAMILY = corpus_program("family")
LISTS = corpus_program("lists")
PATH = corpus_program("path")


def bindings_of(outcome):
    return [{k: str(v) for k, v in s.bindings.items()} for s in outcome.solutions]


def opts(**kwargs):
    return SolveOptions(**kwargs)


class TestSolve:
    def test_grandparent_single_solution(self):
        out = solve(MINI_FAMILY, parse_query("grandparent(alice,Q)"))
        assert bindings_of(out) == [{"Q": "carol"}]
        assert out.exhausted and out.budget_hit is None

    def test_peano_addition(self):
        out = solve(PEANO, parse_query("add(s(zero),s(zero),R)"))
        assert bindings_of(out) == [{"R": "s(s(zero))"}]

    def test_dead_end(self):
        out = solve(MINI_FAMILY, parse_query("married(alice,Q)"))
        assert out.solutions == [] and out.exhausted
        tree = build_tree(MINI_FAMILY, parse_query("married(alice,Q)"))
        assert tree == Branch(())

    def test_left_recursion_strategy_split(self):
        goals = parse_query("path(a,b)")
        dfs = solve(PATH, goals, opts(strategy=Strategy.DFS))
        assert dfs.solutions == []
        assert dfs.budget_hit == "max_depth" and not dfs.exhausted
        bfs = solve(PATH, goals, opts(strategy=Strategy.BFS))
        assert bindings_of(bfs) == [{}]
        iddfs = solve(PATH, goals, opts(strategy=Strategy.IDDFS))
        assert bindings_of(iddfs) == [{}]

    def test_goals_must_be_nonempty(self):
        with pytest.raises(ValueError):
            solve(PEANO, [])

    def test_options_accept_strategy_names(self):
        assert SolveOptions(strategy="bfs").strategy is Strategy.BFS
        with pytest.raises(ValueError):
            SolveOptions(strategy="dijkstra")
        with pytest.raises(ValueError):
            SolveOptions(max_depth=0)

    def test_trace_records_rules_in_application_order(self):
        out = solve(MINI_FAMILY, parse_query("grandparent(alice,Q)"))
        trace = out.solutions[0].trace
        assert [str(s.rule) for s in trace] == [
            "grandparent(X,Y) :- parent(X,Z), parent(Z,Y).",
            "parent(alice,bob).",
            "parent(bob,carol).",
        ]
        assert [s.instance_id for s in trace] == [1, 2, 3]
        assert str(trace[1].goal) == "parent(alice,Z.1)"

    def test_cyclic_solution_is_flagged_not_dropped(self):
        program = parse_program("eq(X,X).")
        out = solve(program, parse_query("eq(Y,f(Y))"))
        assert len(out.solutions) == 1
        assert out.solutions[0].cyclic

    def test_residual_variables_are_canonicalized(self):
        program = parse_program("id(X,X).")
        for strategy in Strategy:
            out = solve(program, parse_query("id(U,V)"), opts(strategy=strategy))
            assert bindings_of(out) == [{"U": "X.1", "V": "X.1"}]

    def test_max_solutions_budget(self):
        out = solve(FAMILY, parse_query("parent(X,Y)"), opts(max_solutions=3))
        assert len(out.solutions) == 3
        assert out.budget_hit == "max_solutions" and not out.exhausted

    def test_max_solutions_cap_equal_to_answer_count_is_exhausted(self):
        out = solve(FAMILY, parse_query("parent(X,Y)"), opts(max_solutions=6))
        assert len(out.solutions) == 6
        assert out.exhausted and out.budget_hit is None

    def test_step_budget(self):
        out = solve(PATH, parse_query("path(a,b)"), opts(step_budget=5))
        assert out.budget_hit == "step_budget"

    def test_time_budget(self):
        out = solve(
            PATH,
            parse_query("path(a,b)"),
            opts(max_depth=100_000, step_budget=10**9, time_limit=0.05),
        )
        assert out.budget_hit == "time"

    def test_determinism_including_instance_ids(self):
        goals = parse_query("grandparent(alice,Q)")
        first = solve(FAMILY, goals, opts(max_solutions=50))
        second = solve(FAMILY, goals, opts(max_solutions=50))
        assert bindings_of(first) == bindings_of(second)
        for a, b in zip(first.solutions, second.solutions):
            assert [s.instance_id for s in a.trace] == [s.instance_id for s in b.trace]


class TestStreaming:
    def test_early_stop_costs_nothing_more(self):
        stream = SolveStream(FAMILY, parse_query("parent(X,Y)"), opts(max_solutions=50))
        first = next(iter(stream))
        assert {k: str(v) for k, v in first.bindings.items()} == {
            "X": "alice",
            "Y": "bob",
        }

    def test_stream_reports_budget_after_exhaustion(self):
        stream = SolveStream(PATH, parse_query("path(a,b)"))
        assert list(stream) == []
        assert stream.budget_hit == "max_depth"
        assert not stream.exhausted


class TestDfsOrder:
    def test_solutions_arrive_in_prolog_order(self):
        out = solve(FAMILY, parse_query("parent(alice,X)"), opts(max_solutions=50))
        assert bindings_of(out) == [{"X": "bob"}, {"X": "ellen"}]
        out = solve(FAMILY, parse_query("grandparent(alice,X)"), opts(max_solutions=50))
        assert bindings_of(out) == [{"X": "carol"}, {"X": "frank"}]
        out = solve(FAMILY, parse_query("ancestor(X,dave)"), opts(max_solutions=50))
        assert bindings_of(out) == [{"X": "carol"}, {"X": "bob"}, {"X": "alice"}]


ORACLE_QUERIES = [
    (FAMILY, "parent(alice,X)"),
    (FAMILY, "parent(X,Y)"),
    (FAMILY, "grandparent(X,Y)"),
    (FAMILY, "grandparent(alice,Q)"),
    (FAMILY, "ancestor(X,carol)"),
    (FAMILY, "ancestor(X,dave)"),
    (FAMILY, "ancestor(alice,bob)"),
    (PEANO, "add(s(zero),s(zero),R)"),
    (PEANO, "add(X,Y,s(s(zero)))"),
    (PEANO, "add(s(zero),X,s(s(s(zero))))"),
    (PEANO, "mult(s(zero),s(zero),R)"),
    (PEANO, "mult(s(s(zero)),s(s(s(zero))),R)"),
    (LISTS, "length(cons(a,cons(b,nil)),N)"),
    (LISTS, "append(X,Y,cons(a,cons(b,nil)))"),
    (LISTS, "append(cons(a,nil),cons(b,nil),Z)"),
    (LISTS, "length(L,s(s(zero)))"),
]


class TestOracleEquivalence:
    @pytest.mark.parametrize("program,query", ORACLE_QUERIES, ids=lambda v: str(v)[:40])
    def test_dfs_matches_brute_force(self, program, query):
        goals = parse_query(query)
        out = solve(program, goals, opts(max_depth=8, max_solutions=1000))
        expected, truncated = sld_solutions(program.rules, goals, 8)
        assert out.exhausted == (not truncated)
        if out.exhausted:
            assert answer_set(bindings_of(out)) == answer_set(expected)

    @pytest.mark.parametrize("program,query", ORACLE_QUERIES, ids=lambda v: str(v)[:40])
    def test_strategies_agree_where_dfs_exhausts(self, program, query):
        goals = parse_query(query)
        dfs = solve(program, goals, opts(max_depth=8, max_solutions=1000))
        if not dfs.exhausted:
            pytest.skip("DFS did not exhaust at this depth")
        reference = sorted(tuple(sorted(b.items())) for b in bindings_of(dfs))
        for strategy in (Strategy.BFS, Strategy.IDDFS):
            other = solve(
                program, goals, opts(strategy=strategy, max_depth=8, max_solutions=1000)
            )
            got = sorted(tuple(sorted(b.items())) for b in bindings_of(other))
            assert got == reference, strategy


class TestRandomProgramsAgainstOracle:
    def test_random_programs_match_brute_force(self):
        import random

        from .gen import random_goal, random_program

        rng = random.Random(424242)
        compared = 0
        for _ in range(200):
            program = random_program(rng)
            goals = [random_goal(rng)]
            out = solve(
                program,
                goals,
                opts(max_depth=5, max_solutions=500, step_budget=500_000),
            )
            if any(s.cyclic for s in out.solutions):
                continue  # no-occurs-check artifacts; bindings incomparable
            try:
                expected, truncated = sld_solutions(program.rules, goals, 5)
            except RuntimeError:
                continue  # oracle hit a cyclic binding chain
            if out.budget_hit in ("step_budget", "max_solutions"):
                continue  # engine stopped for reasons the oracle has no notion of
            assert out.exhausted == (not truncated), str(program)
            if out.exhausted:
                got = answer_set(bindings_of(out))
                assert got == answer_set(expected), str(program)
                compared += 1
        assert compared >= 30, f"only {compared} exhaustive comparisons"


class TestBuildTree:
    def test_fact_query_is_branch_to_solution_leaf(self):
        program = parse_program("a.")
        tree = build_tree(program, parse_query("a"))
        assert isinstance(tree, Branch) and len(tree.edges) == 1
        rule, leaf = tree.edges[0]
        assert isinstance(leaf, SolutionLeaf)

    def test_dfs_traversal_matches_solve(self):
        goals = parse_query("grandparent(alice,Q)")
        out = solve(FAMILY, goals, opts(max_solutions=50))
        tree = build_tree(FAMILY, goals, opts(max_solutions=50))

        leaves = []

        def walk(node):
            if isinstance(node, SolutionLeaf):
                leaves.append(node.env)
            elif isinstance(node, Branch):
                for _, child in node.edges:
                    walk(child)

        walk(tree)
        assert leaves == [s.env for s in out.solutions]

    def test_left_recursion_truncates_at_depth(self):
        tree = build_tree(PATH, parse_query("path(a,b)"), opts(max_depth=4))

        found = []

        def walk(node, depth):
            if isinstance(node, Truncated):
                found.append(depth)
            elif isinstance(node, Branch):
                for _, child in node.edges:
                    walk(child, depth + 1)

        walk(tree, 0)
        assert found and all(d == 4 for d in found)
