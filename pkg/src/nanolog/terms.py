"""Core data model: terms, rules, programs, and substitution environments.

Everything here is immutable after construction and safe to share freely.
Substitution environments are triangular (a variable may be bound to a term
that itself contains bound variables), so lookups chase bindings; a depth
budget turns cyclic environments into errors instead of hangs.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Mapping, Union

#: Depth budget for chased substitution; large enough for any desk-scale
#: program, small enough that a cyclic environment fails promptly.
DEFAULT_SUBST_BUDGET = 4096

#: Separator used when renaming rule variables per instantiation.  Not
#: producible by the parser, so renamed variables can never collide with
#: source-level ones.
RENAME_SEPARATOR = "."

_VAR_NAME = re.compile(r"[A-Z][A-Za-z0-9_]*(?:\.[0-9]+)*\Z")
_FUNCTOR_NAME = re.compile(r"[a-z][A-Za-z0-9_]*\Z")


class NanologError(Exception):
    """Base class for all engine errors."""


class BudgetExhausted(NanologError):
    """A substitution chase exceeded its depth budget.

    Consumers treat this as "the environment is (effectively) cyclic":
    without an occurs check, unification can bind X to f(X), and the only
    way to notice is that chasing never bottoms out.
    """


@lru_cache(maxsize=None)
def is_var_name(name: str) -> bool:
    """True for a valid variable name, including renamed forms like X.3."""
    return bool(_VAR_NAME.match(name))


@lru_cache(maxsize=None)
def is_functor_name(name: str) -> bool:
    return bool(_FUNCTOR_NAME.match(name))


@dataclass(frozen=True)
class Var:
    """A logic variable, named with a leading capital letter."""

    name: str

    def __post_init__(self) -> None:
        if not is_var_name(self.name):
            raise ValueError(f"invalid variable name: {self.name!r}")

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Compound:
    """A functor applied to zero or more terms; zero args is a constant."""

    functor: str
    args: tuple["Term", ...] = ()

    def __post_init__(self) -> None:
        if not is_functor_name(self.functor):
            raise ValueError(f"invalid functor name: {self.functor!r}")
        if not isinstance(self.args, tuple):
            object.__setattr__(self, "args", tuple(self.args))

    def __str__(self) -> str:
        if not self.args:
            return self.functor
        return f"{self.functor}({','.join(str(a) for a in self.args)})"


Term = Union[Var, Compound]


@dataclass(frozen=True)
class Rule:
    """conclusion :- premises.  Empty premises make the rule a fact."""

    conclusion: Compound
    premises: tuple[Term, ...] = ()

    def __post_init__(self) -> None:
        if not isinstance(self.conclusion, Compound):
            raise ValueError("rule conclusion must be a compound term")
        if not isinstance(self.premises, tuple):
            object.__setattr__(self, "premises", tuple(self.premises))

    def is_fact(self) -> bool:
        return not self.premises

    def __str__(self) -> str:
        head = str(self.conclusion)
        if not self.premises:
            return f"{head}."
        body = ", ".join(str(p) for p in self.premises)
        return f"{head} :- {body}."


@dataclass(frozen=True)
class Program:
    """An ordered list of rules; resolution tries them in listed order."""

    rules: tuple[Rule, ...] = ()

    def __post_init__(self) -> None:
        if not isinstance(self.rules, tuple):
            object.__setattr__(self, "rules", tuple(self.rules))

    def __len__(self) -> int:
        return len(self.rules)

    def __str__(self) -> str:
        return "".join(f"{r}\n" for r in self.rules)


class Env:
    """A finite mapping from variable names to terms.

    Immutable: ``bind`` returns a new environment.  Self-bindings
    (``X -> X``) are rejected at construction time, since chasing one
    would never terminate.
    """

    __slots__ = ("_bindings",)

    def __init__(self, bindings: Mapping[str, Term] | None = None) -> None:
        data: dict[str, Term] = dict(bindings) if bindings else {}
        for name, term in data.items():
            _check_binding(name, term)
        object.__setattr__(self, "_bindings", data)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Env is immutable")

    def lookup(self, name: str) -> Term | None:
        return self._bindings.get(name)

    def bind(self, name: str, term: Term) -> "Env":
        """Return a new Env extended with name -> term."""
        _check_binding(name, term)
        env = Env.__new__(Env)
        data = dict(self._bindings)
        data[name] = term
        object.__setattr__(env, "_bindings", data)
        return env

    def names(self) -> Iterator[str]:
        return iter(self._bindings)

    def items(self) -> Iterator[tuple[str, Term]]:
        return iter(self._bindings.items())

    def as_dict(self) -> dict[str, Term]:
        return dict(self._bindings)

    def __contains__(self, name: str) -> bool:
        return name in self._bindings

    def __len__(self) -> int:
        return len(self._bindings)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Env):
            return NotImplemented
        return self._bindings == other._bindings

    def __repr__(self) -> str:
        inner = ", ".join(f"{k} -> {v}" for k, v in self._bindings.items())
        return f"Env({{{inner}}})"


def _check_binding(name: str, term: Term) -> None:
    if not is_var_name(name):
        raise ValueError(f"invalid variable name: {name!r}")
    if isinstance(term, Var) and term.name == name:
        raise ValueError(f"self-binding rejected: {name} -> {name}")


EMPTY_ENV = Env()


def apply_subst_term(env: Env, t: Term, depth_budget: int = DEFAULT_SUBST_BUDGET) -> Term:
    """Replace every bound variable in ``t`` by its fully chased binding.

    Unbound variables are left as-is.  Each chase step (following one
    binding) consumes budget; raises BudgetExhausted when a chain is
    longer than ``depth_budget``, which in practice means the environment
    is cyclic.
    """
    if depth_budget < 1:
        raise ValueError("depth_budget must be >= 1")
    # Explicit work stack: chase chains may legitimately be thousands of
    # steps long, which would overflow Python's recursion limit.
    work: list[tuple] = [("term", t, depth_budget)]
    results: list[Term] = []
    while work:
        op = work.pop()
        if op[0] == "term":
            _, node, budget = op
            while isinstance(node, Var):
                bound = env.lookup(node.name)
                if bound is None:
                    break
                if budget <= 0:
                    raise BudgetExhausted(
                        f"binding chain for {node.name} exceeds depth budget"
                    )
                budget -= 1
                node = bound
            if isinstance(node, Var) or not node.args:
                results.append(node)
            else:
                work.append(("build", node.functor, len(node.args)))
                for arg in reversed(node.args):
                    work.append(("term", arg, budget))
        else:
            _, functor, count = op
            args = tuple(results[-count:])
            del results[-count:]
            results.append(Compound(functor, args))
    return results[0]


def apply_subst_terms(
    env: Env, ts: list[Term] | tuple[Term, ...], depth_budget: int = DEFAULT_SUBST_BUDGET
) -> list[Term]:
    """Elementwise apply_subst_term; errors propagate."""
    return [apply_subst_term(env, t, depth_budget) for t in ts]


def apply_subst_rule(env: Env, r: Rule, depth_budget: int = DEFAULT_SUBST_BUDGET) -> Rule:
    conclusion = apply_subst_term(env, r.conclusion, depth_budget)
    assert isinstance(conclusion, Compound)
    return Rule(conclusion, tuple(apply_subst_terms(env, r.premises, depth_budget)))


def rename_rule(r: Rule, instance_id: int) -> Rule:
    """Suffix every variable in ``r`` with ``.instance_id``.

    With a fresh instance_id per rule application, the renamed rule shares
    no variables with any earlier goal, which is what makes recursive
    rules sound to apply repeatedly.
    """
    suffix = RENAME_SEPARATOR + str(instance_id)

    def go(t: Term) -> Term:
        if isinstance(t, Var):
            return Var(t.name + suffix)
        if not t.args:
            return t
        return Compound(t.functor, tuple(go(a) for a in t.args))

    conclusion = go(r.conclusion)
    assert isinstance(conclusion, Compound)
    return Rule(conclusion, tuple(go(p) for p in r.premises))


def term_vars(t: Term) -> list[str]:
    """Variable names in order of first occurrence, without duplicates."""
    seen: set[str] = set()
    out: list[str] = []
    stack: list[Term] = [t]
    while stack:
        node = stack.pop()
        if isinstance(node, Var):
            if node.name not in seen:
                seen.add(node.name)
                out.append(node.name)
        else:
            stack.extend(reversed(node.args))
    return out


def rule_vars(r: Rule) -> list[str]:
    """Variable names across conclusion and premises, first occurrence order."""
    seen: set[str] = set()
    out: list[str] = []
    for t in (r.conclusion, *r.premises):
        for name in term_vars(t):
            if name not in seen:
                seen.add(name)
                out.append(name)
    return out


def env_is_acyclic(env: Env, depth_budget: int = DEFAULT_SUBST_BUDGET) -> bool:
    """True when every binding chase terminates within the budget."""
    try:
        for name, _ in env.items():
            apply_subst_term(env, Var(name), depth_budget)
    except BudgetExhausted:
        return False
    return True
