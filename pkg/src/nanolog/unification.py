"""Substitute-then-unify over pairs of terms, threading an optional environment.

Unification first substitutes both terms under the environment, then walks
them structurally.  There is deliberately no occurs check: unifying X with
f(X) succeeds and produces a cyclic binding, which downstream substitution
budgets turn into prompt errors rather than hangs.
"""

from __future__ import annotations

from .terms import (
    DEFAULT_SUBST_BUDGET,
    EMPTY_ENV,
    Env,
    Term,
    Var,
    apply_subst_term,
)


def unify(
    t: Term,
    u: Term,
    env: Env | None = EMPTY_ENV,
    subst_budget: int = DEFAULT_SUBST_BUDGET,
) -> Env | None:
    """Unify ``t`` with ``u`` under ``env``; None means failure.

    A None environment short-circuits to None, so calls can be chained
    without checking in between.  On success the returned environment
    extends ``env``.  Raises BudgetExhausted only when ``env`` is already
    cyclic and substitution cannot resolve the inputs.
    """
    if env is None:
        return None
    return _uni(
        apply_subst_term(env, t, subst_budget),
        apply_subst_term(env, u, subst_budget),
        env,
        subst_budget,
    )


def _uni(t: Term, u: Term, env: Env, subst_budget: int) -> Env | None:
    # Both terms are fully substituted here, so any Var is unbound in env.
    if isinstance(t, Var):
        if isinstance(u, Var) and u.name == t.name:
            return env
        return env.bind(t.name, u)
    if isinstance(u, Var):
        return env.bind(u.name, t)
    if t.functor != u.functor or len(t.args) != len(u.args):
        return None
    out: Env | None = env
    for a, b in zip(t.args, u.args):
        out = unify(a, b, out, subst_budget)
        if out is None:
            return None
    return out
