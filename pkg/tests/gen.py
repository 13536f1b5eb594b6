"""Generators for random terms and rules (seeded RNG and hypothesis)."""

from __future__ import annotations

import random

from hypothesis import strategies as st

from nanolog import Compound, Rule, Var

FUNCTORS = ["f", "g", "h", "a", "b"]
VARIABLES = ["X", "Y", "Z", "W"]


def random_term(rng: random.Random, max_depth: int = 4, max_arity: int = 3):
    """A term over a 5-symbol functor alphabet and at most 4 variables."""
    if max_depth <= 0 or rng.random() < 0.35:
        if rng.random() < 0.5:
            return Var(rng.choice(VARIABLES))
        return Compound(rng.choice(FUNCTORS))
    arity = rng.randint(0, max_arity)
    args = tuple(random_term(rng, max_depth - 1, max_arity) for _ in range(arity))
    return Compound(rng.choice(FUNCTORS), args)


def random_rule(rng: random.Random, max_premises: int = 3):
    head = random_term(rng, max_depth=3)
    while not isinstance(head, Compound):
        head = random_term(rng, max_depth=3)
    premises = tuple(random_term(rng, max_depth=3) for _ in range(rng.randint(0, max_premises)))
    return Rule(head, premises)


def random_program(rng: random.Random, max_rules: int = 4):
    """A small Horn program: flat-ish heads so queries have a chance to
    match, premises shallow enough that bounded search stays cheap."""
    from nanolog import Program

    def flat_term():
        arity = rng.randint(0, 2)
        args = tuple(
            Var(rng.choice(VARIABLES)) if rng.random() < 0.5 else Compound(rng.choice(FUNCTORS))
            for _ in range(arity)
        )
        return Compound(rng.choice(FUNCTORS[:3]), args)

    rules = []
    for _ in range(rng.randint(1, max_rules)):
        premises = tuple(flat_term() for _ in range(rng.randint(0, 2)))
        rules.append(Rule(flat_term(), premises))
    return Program(tuple(rules))


def random_goal(rng: random.Random):
    arity = rng.randint(0, 2)
    args = tuple(
        Var(rng.choice(VARIABLES)) if rng.random() < 0.4 else Compound(rng.choice(FUNCTORS))
        for _ in range(arity)
    )
    return Compound(rng.choice(FUNCTORS[:3]), args)


# hypothesis strategies over the same shapes

var_names = st.sampled_from(VARIABLES)
functor_names = st.sampled_from(FUNCTORS)

terms = st.recursive(
    st.one_of(
        var_names.map(Var),
        functor_names.map(Compound),
    ),
    lambda children: st.builds(
        Compound, functor_names, st.lists(children, min_size=1, max_size=3).map(tuple)
    ),
    max_leaves=12,
)

compounds = terms.filter(lambda t: isinstance(t, Compound))

rules = st.builds(
    Rule, compounds, st.lists(terms, min_size=0, max_size=3).map(tuple)
)
