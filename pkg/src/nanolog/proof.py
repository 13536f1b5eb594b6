"""Interactive proof trees: the prover-mode engine.

A proof starts as a single open goal.  Applying a rule to an open node
unifies the (freshly renamed) rule conclusion with that node's goal; the
rule's premises become the node's children and the extended substitution
is re-applied to the displayed goals of the whole tree.  A node counts as
complete once a rule is applied and all its children are complete, so a
matching fact closes a leaf outright.

All operations are pure: they return a new state and leave the input
untouched, which is also what makes undo a straight snapshot restore.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .solver import TraceStep, restrict_bindings
from .terms import (
    DEFAULT_SUBST_BUDGET,
    EMPTY_ENV,
    Env,
    NanologError,
    Rule,
    Term,
    Var,
    apply_subst_term,
    is_var_name,
    rename_rule,
    term_vars,
)
from .unification import unify


class NodeNotOpen(NanologError):
    """A rule was dropped on a node that already has one applied."""


class UnificationFailed(NanologError):
    """The rule conclusion (or manual binding) does not fit; state unchanged."""


class BadPath(NanologError):
    """A node path does not address an existing node."""


class EmptyHistory(NanologError):
    """Undo with nothing to undo."""


class ReplayMismatch(NanologError):
    """A solver trace does not replay against this goal."""


class NodeStatus(str, Enum):
    OPEN = "open"
    COMPLETE = "complete"


@dataclass(frozen=True)
class Applied:
    rule: Rule  # as written, before renaming
    instance_id: int


@dataclass(frozen=True)
class ProofNode:
    #: The goal as displayed: ``original`` under the current global env.
    goal: Term
    #: The instance-renamed goal as it was introduced; display is always
    #: recomputed from this, never from a previous display.
    original: Term
    applied: Applied | None = None
    children: tuple["ProofNode", ...] = ()


@dataclass(frozen=True)
class StatusNode:
    status: NodeStatus
    rule_applied: bool
    children: tuple["StatusNode", ...]


Snapshot = tuple[ProofNode, Env, int]


@dataclass(frozen=True)
class ProofState:
    root: ProofNode
    env: Env
    next_instance: int
    history: tuple[Snapshot, ...] = ()


def new_proof(goal: Term) -> ProofState:
    node = ProofNode(goal=goal, original=goal)
    return ProofState(root=node, env=EMPTY_ENV, next_instance=1)


def node_at(root: ProofNode, path: Sequence[int]) -> ProofNode:
    node = root
    for index in path:
        if not 0 <= index < len(node.children):
            raise BadPath(f"no node at path {list(path)}")
        node = node.children[index]
    return node


def apply_rule(
    state: ProofState,
    path: Sequence[int],
    rule: Rule,
    subst_budget: int = DEFAULT_SUBST_BUDGET,
) -> ProofState:
    """Apply ``rule`` to the open node at ``path``.

    The conclusion goes on the left of the unification so that the goal
    side's variables survive in the display (dropping grandparent(X,Y) on
    grandparent(alice,Q) shows children over Q, not over a renamed Y).
    """
    target = node_at(state.root, path)
    if target.applied is not None:
        raise NodeNotOpen(f"node at {list(path)} already has a rule applied")
    renamed = rename_rule(rule, state.next_instance)
    env = unify(renamed.conclusion, target.original, state.env, subst_budget)
    if env is None:
        raise UnificationFailed(
            f"cannot unify {renamed.conclusion} with {target.goal}"
        )
    children = tuple(
        ProofNode(goal=premise, original=premise) for premise in renamed.premises
    )
    closed = ProofNode(
        goal=target.goal,
        original=target.original,
        applied=Applied(rule, state.next_instance),
        children=children,
    )
    root = _replace_at(state.root, path, closed)
    root = _redisplay(root, env, subst_budget)
    return ProofState(
        root=root,
        env=env,
        next_instance=state.next_instance + 1,
        history=state.history + (_snapshot(state),),
    )


def apply_manual_subst(
    state: ProofState,
    var: str,
    replacement: Term,
    subst_budget: int = DEFAULT_SUBST_BUDGET,
) -> ProofState:
    """Bind ``var`` to ``replacement`` and re-display the tree.

    Binding a variable that appears nowhere in the tree succeeds and is
    visually a no-op.
    """
    if not is_var_name(var):
        raise ValueError(f"invalid variable name: {var!r}")
    env = unify(Var(var), replacement, state.env, subst_budget)
    if env is None:
        raise UnificationFailed(f"{var} is already bound incompatibly")
    root = _redisplay(state.root, env, subst_budget)
    return ProofState(
        root=root,
        env=env,
        next_instance=state.next_instance,
        history=state.history + (_snapshot(state),),
    )


def undo(state: ProofState) -> ProofState:
    if not state.history:
        raise EmptyHistory("nothing to undo")
    root, env, next_instance = state.history[-1]
    return ProofState(
        root=root, env=env, next_instance=next_instance, history=state.history[:-1]
    )


def status(state: ProofState) -> StatusNode:
    """Per-node completion status, bottom-up; same shape as the proof tree."""
    return _status(state.root)


def is_complete(state: ProofState) -> bool:
    return status(state).status is NodeStatus.COMPLETE


def replay(
    goal: Term,
    trace: Sequence[TraceStep],
    subst_budget: int = DEFAULT_SUBST_BUDGET,
) -> ProofState:
    """Apply a solver trace record by record to the leftmost open goal.

    Solver traces visit goals in exactly leftmost-open order, so a valid
    trace closes the whole tree; anything else is a ReplayMismatch.
    """
    state = new_proof(goal)
    for step in trace:
        path = _leftmost_open(state.root)
        if path is None:
            raise ReplayMismatch("trace continues after the proof closed")
        try:
            state = apply_rule(state, path, step.rule, subst_budget)
        except UnificationFailed as exc:
            raise ReplayMismatch(f"trace rule does not fit: {exc}") from exc
    if not is_complete(state):
        raise ReplayMismatch("trace ended with open goals remaining")
    return state


def replay_bindings(
    goal: Term, state: ProofState, subst_budget: int = DEFAULT_SUBST_BUDGET
) -> dict[str, Term]:
    """The replayed proof's answer, restricted to the goal's variables."""
    bindings, _ = restrict_bindings(state.env, term_vars(goal), subst_budget)
    return bindings


def _snapshot(state: ProofState) -> Snapshot:
    return (state.root, state.env, state.next_instance)


def _replace_at(node: ProofNode, path: Sequence[int], replacement: ProofNode) -> ProofNode:
    if not path:
        return replacement
    index, rest = path[0], path[1:]
    children = list(node.children)
    children[index] = _replace_at(children[index], rest, replacement)
    return ProofNode(
        goal=node.goal,
        original=node.original,
        applied=node.applied,
        children=tuple(children),
    )


def _redisplay(node: ProofNode, env: Env, subst_budget: int) -> ProofNode:
    return ProofNode(
        goal=apply_subst_term(env, node.original, subst_budget),
        original=node.original,
        applied=node.applied,
        children=tuple(_redisplay(c, env, subst_budget) for c in node.children),
    )


def _status(node: ProofNode) -> StatusNode:
    children = tuple(_status(c) for c in node.children)
    if node.applied is None:
        st = NodeStatus.OPEN
    elif all(c.status is NodeStatus.COMPLETE for c in children):
        st = NodeStatus.COMPLETE
    else:
        st = NodeStatus.OPEN
    return StatusNode(status=st, rule_applied=node.applied is not None, children=children)


def _leftmost_open(node: ProofNode, prefix: tuple[int, ...] = ()) -> tuple[int, ...] | None:
    if node.applied is None:
        return prefix
    for index, child in enumerate(node.children):
        found = _leftmost_open(child, prefix + (index,))
        if found is not None:
            return found
    return None
