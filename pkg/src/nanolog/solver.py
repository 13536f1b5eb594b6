"""Resolution over an explicit search tree, with pluggable search strategies.

A node of the search is a goal list plus the environment accumulated so
far.  Expanding a node tries every program rule in order against the first
goal: the rule is renamed with a fresh instance id, its conclusion unified
with the goal, and on success the renamed premises are prepended to the
remaining goals.  An empty goal list is a solution.

Strategies differ in how they walk this (potentially infinite) tree:

* ``dfs`` is standard Prolog order.  Depth is unbounded during the walk;
  the first time a path exceeds ``max_depth`` the whole search stops and
  reports it, which is how a left-recursive program shows up as a budget
  hit instead of a hang.
* ``bfs`` visits nodes level by level, pruning (not aborting) at
  ``max_depth``, so solutions at shallow depth are found even when some
  branch recurses forever.
* ``iddfs`` restarts a depth-limited DFS with limits 1, 2, ... up to
  ``max_depth``, deduplicating re-found solutions, and stops early when a
  round completes without pruning anything.

Every strategy also honors a global budget on unification attempts and an
optional wall-clock limit.
"""

from __future__ import annotations

import enum
import time
from collections import deque
from dataclasses import dataclass, field
from typing import Iterator, Sequence, Union

from .terms import (
    DEFAULT_SUBST_BUDGET,
    EMPTY_ENV,
    RENAME_SEPARATOR,
    BudgetExhausted,
    Compound,
    Env,
    NanologError,
    Program,
    Rule,
    Term,
    Var,
    apply_subst_term,
    rename_rule,
    term_vars,
)
from .unification import unify


class CyclicEnvironment(NanologError):
    """A solution's bindings could not be chased within the budget."""


class Strategy(str, enum.Enum):
    DFS = "dfs"
    BFS = "bfs"
    IDDFS = "iddfs"


@dataclass(frozen=True)
class SolveOptions:
    strategy: Strategy = Strategy.DFS
    max_depth: int = 256
    max_solutions: int = 10
    step_budget: int = 100_000
    subst_budget: int = DEFAULT_SUBST_BUDGET
    #: Wall-clock limit in seconds, measured from the start of the solve;
    #: None disables it.  Reported as budget_hit "time".
    time_limit: float | None = None

    def __post_init__(self) -> None:
        for name in ("max_depth", "max_solutions", "step_budget", "subst_budget"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")
        if not isinstance(self.strategy, Strategy):
            object.__setattr__(self, "strategy", Strategy(self.strategy))


@dataclass(frozen=True)
class TraceStep:
    """One rule application: the rule as written, its instance id, and the
    goal it was applied to (substituted under the environment in force)."""

    rule: Rule
    instance_id: int
    goal: Term


@dataclass(frozen=True)
class Solution:
    env: Env
    trace: tuple[TraceStep, ...]
    #: Query variables -> fully chased terms.  Leftover unbound variables
    #: introduced by rule renaming are canonicalized (first one with base
    #: name Y becomes Y.1, the next Y.2, ...) so that equal answers found
    #: by different strategies compare equal.
    bindings: dict[str, Term] = field(default_factory=dict)
    #: True when chasing hit the substitution budget; the affected values
    #: are left unchased rather than dropped.
    cyclic: bool = False


@dataclass(frozen=True)
class SolutionLeaf:
    env: Env


@dataclass(frozen=True)
class Truncated:
    """Placeholder for a subtree cut off at the depth bound."""

    depth: int


@dataclass(frozen=True)
class Branch:
    """Inner node: one edge per applicable rule, in program order.  A
    branch with no edges is a dead end."""

    edges: tuple[tuple[Rule, "SearchTree"], ...]


SearchTree = Union[SolutionLeaf, Branch, Truncated]


@dataclass
class SolveOutcome:
    solutions: list[Solution]
    #: True iff the search space was fully explored within all budgets.
    exhausted: bool
    #: Which budget stopped the search: "max_depth", "max_solutions",
    #: "step_budget", "time", or None.
    budget_hit: str | None

    def __post_init__(self) -> None:
        assert not (self.exhausted and self.budget_hit is not None)


_Node = tuple[Env, tuple[Term, ...], tuple[TraceStep, ...], int]


def _attempt(
    rule: Rule, instance_id: int, goal: Term, env: Env, subst_budget: int
) -> tuple[Rule, Env] | None:
    """Rename ``rule`` and unify its conclusion with ``goal``; None on failure.

    ``goal`` must already be substituted under ``env``.  A BudgetExhausted
    from substitution (a cyclic environment reached this branch) also
    counts as failure: the branch is abandoned rather than escalated.
    """
    renamed = rename_rule(rule, instance_id)
    try:
        env2 = unify(goal, renamed.conclusion, env, subst_budget)
    except BudgetExhausted:
        return None
    if env2 is None:
        return None
    return renamed, env2


class SolveStream:
    """Lazily yields solutions; consumers may stop early at no extra cost.

    ``exhausted`` and ``budget_hit`` are meaningful once iteration has
    ended (or stopped being consumed).
    """

    def __init__(self, program: Program, goals: Sequence[Term], opts: SolveOptions | None = None):
        if not goals:
            raise ValueError("goals must be nonempty")
        self._program = program
        self._goals = tuple(goals)
        self._opts = opts or SolveOptions()
        self._query_vars = _goal_vars(self._goals)
        self._instances = 0
        self._steps = 0
        self._started = time.monotonic()
        self._stop: str | None = None  # budget that aborted the search
        self._pruned_final = False  # depth pruning left the space unexplored
        self.exhausted = False
        self.budget_hit: str | None = None
        self._iter = self._drive()

    def __iter__(self) -> Iterator[Solution]:
        return self._iter

    # -- driving ---------------------------------------------------------

    def _drive(self) -> Iterator[Solution]:
        strategies = {
            Strategy.DFS: self._dfs,
            Strategy.BFS: self._bfs,
            Strategy.IDDFS: self._iddfs,
        }
        inner = strategies[self._opts.strategy]()
        count = 0
        for solution in inner:
            if count >= self._opts.max_solutions:
                # We only get here while probing for exhaustion after the
                # cap was reached; another solution exists, so the cap is
                # what cut the search short.
                self.budget_hit = "max_solutions"
                return
            count += 1
            yield solution
        if self._stop is not None:
            self.budget_hit = self._stop
        elif self._pruned_final:
            self.budget_hit = "max_depth"
        else:
            self.exhausted = True

    def _root(self) -> _Node:
        return (EMPTY_ENV, self._goals, (), 0)

    def _out_of_budget(self) -> bool:
        if self._steps >= self._opts.step_budget:
            self._stop = "step_budget"
            return True
        limit = self._opts.time_limit
        if limit is not None and time.monotonic() - self._started > limit:
            self._stop = "time"
            return True
        return False

    def _expand(self, node: _Node) -> Iterator[_Node]:
        env, goals, trace, depth = node
        goal, rest = goals[0], goals[1:]
        try:
            shown = apply_subst_term(env, goal, self._opts.subst_budget)
        except BudgetExhausted:
            return  # cyclic environment: nothing can unify with this goal
        for rule in self._program.rules:
            if self._out_of_budget():
                return
            self._steps += 1
            hit = _attempt(rule, self._instances + 1, shown, env, self._opts.subst_budget)
            if hit is None:
                continue
            renamed, env2 = hit
            self._instances += 1
            step = TraceStep(rule, self._instances, shown)
            yield (env2, renamed.premises + rest, trace + (step,), depth + 1)

    def _dfs(self) -> Iterator[Solution]:
        stack: list[Iterator[_Node]] = [iter([self._root()])]
        while stack:
            if self._stop is not None:
                return
            node = next(stack[-1], None)
            if node is None:
                stack.pop()
                continue
            if not node[1]:  # no goals left
                yield self._solution(node)
            elif node[3] >= self._opts.max_depth:
                self._stop = "max_depth"
                return
            else:
                stack.append(self._expand(node))

    def _bounded_dfs(self, limit: int) -> Iterator[Solution]:
        pruned = False
        stack: list[Iterator[_Node]] = [iter([self._root()])]
        while stack:
            if self._stop is not None:
                return
            node = next(stack[-1], None)
            if node is None:
                stack.pop()
                continue
            if not node[1]:
                yield self._solution(node)
            elif node[3] >= limit:
                pruned = True
            else:
                stack.append(self._expand(node))
        self._pruned_final = pruned

    def _bfs(self) -> Iterator[Solution]:
        queue: deque[_Node] = deque([self._root()])
        while queue:
            if self._stop is not None:
                return
            node = queue.popleft()
            if not node[1]:
                yield self._solution(node)
            elif node[3] >= self._opts.max_depth:
                self._pruned_final = True
            else:
                queue.extend(self._expand(node))

    def _iddfs(self) -> Iterator[Solution]:
        seen: set[tuple] = set()
        for limit in range(1, self._opts.max_depth + 1):
            for solution in self._bounded_dfs(limit):
                key = (_bindings_key(solution), len(solution.trace))
                if key in seen:
                    continue
                seen.add(key)
                yield solution
            if self._stop is not None:
                return
            if not self._pruned_final:
                return  # fully explored at this limit; deeper adds nothing

    # -- solutions -------------------------------------------------------

    def _solution(self, node: _Node) -> Solution:
        env, _, trace, _ = node
        bindings, cyclic = restrict_bindings(env, self._query_vars, self._opts.subst_budget)
        return Solution(env=env, trace=trace, bindings=bindings, cyclic=cyclic)


def restrict_bindings(
    env: Env, query_vars: Sequence[str], subst_budget: int = DEFAULT_SUBST_BUDGET
) -> tuple[dict[str, Term], bool]:
    """Chase each query variable; canonicalize residual renamed variables.

    Returns the bindings plus a cyclic flag; on a cyclic environment the
    affected variables keep their raw (unchased) bindings.
    """
    bindings: dict[str, Term] = {}
    cyclic = False
    for name in query_vars:
        try:
            bindings[name] = apply_subst_term(env, Var(name), subst_budget)
        except BudgetExhausted:
            cyclic = True
            bindings[name] = env.lookup(name) or Var(name)
    if not cyclic:
        bindings = _canonicalize_residuals(bindings)
    return bindings, cyclic


def _canonicalize_residuals(bindings: dict[str, Term]) -> dict[str, Term]:
    mapping: dict[str, Var] = {}
    counters: dict[str, int] = {}

    def canon(t: Term) -> Term:
        if isinstance(t, Var):
            if RENAME_SEPARATOR not in t.name:
                return t
            if t.name not in mapping:
                base = t.name.split(RENAME_SEPARATOR, 1)[0]
                counters[base] = counters.get(base, 0) + 1
                mapping[t.name] = Var(f"{base}{RENAME_SEPARATOR}{counters[base]}")
            return mapping[t.name]
        if not t.args:
            return t
        return Compound(t.functor, tuple(canon(a) for a in t.args))

    return {name: canon(value) for name, value in bindings.items()}


def _bindings_key(solution: Solution) -> tuple:
    return tuple(sorted((name, str(value)) for name, value in solution.bindings.items()))


def _goal_vars(goals: Sequence[Term]) -> list[str]:
    seen: set[str] = set()
    out: list[str] = []
    for goal in goals:
        for name in term_vars(goal):
            if name not in seen:
                seen.add(name)
                out.append(name)
    return out


def solve(program: Program, goals: Sequence[Term], opts: SolveOptions | None = None) -> SolveOutcome:
    """Run the search to completion (or budget) and collect the outcome."""
    stream = SolveStream(program, goals, opts)
    solutions = list(stream)
    return SolveOutcome(
        solutions=solutions, exhausted=stream.exhausted, budget_hit=stream.budget_hit
    )


def build_tree(program: Program, goals: Sequence[Term], opts: SolveOptions | None = None) -> SearchTree:
    """Materialize the search tree to ``max_depth``.

    Deeper nodes become Truncated markers; this never fails, it only cuts
    off.  Instance ids are allocated in depth-first order, so a DFS walk
    of the result matches ``solve``'s DFS run node for node.  Intended for
    inspection and tests at desk scale: the tree is built eagerly (the
    step budget still applies, truncating rather than stopping).
    """
    if not goals:
        raise ValueError("goals must be nonempty")
    options = opts or SolveOptions()
    counter = {"instances": 0, "steps": 0}

    def rec(env: Env, remaining: tuple[Term, ...], depth: int) -> SearchTree:
        if not remaining:
            return SolutionLeaf(env)
        if depth >= options.max_depth or counter["steps"] >= options.step_budget:
            return Truncated(depth)
        goal, rest = remaining[0], remaining[1:]
        try:
            shown = apply_subst_term(env, goal, options.subst_budget)
        except BudgetExhausted:
            return Branch(())
        edges: list[tuple[Rule, SearchTree]] = []
        for rule in program.rules:
            if counter["steps"] >= options.step_budget:
                break
            counter["steps"] += 1
            hit = _attempt(rule, counter["instances"] + 1, shown, env, options.subst_budget)
            if hit is None:
                continue
            renamed, env2 = hit
            counter["instances"] += 1
            edges.append((renamed, rec(env2, renamed.premises + rest, depth + 1)))
        return Branch(tuple(edges))

    return rec(EMPTY_ENV, tuple(goals), 0)
