"""Wire formats shared by the HTTP service and the CLI's --json output.

Terms cross the wire as canonical text; the proof tree is structured JSON
because the UI renders it node by node.  The query response is serialized
here (compact, UTF-8) so the CLI can emit bytes identical to the service.
"""

from __future__ import annotations

import json

from .proof import ProofState, StatusNode, status
from .solver import Solution, SolveOutcome


def solution_payload(solution: Solution) -> dict:
    return {
        "bindings": {name: str(term) for name, term in solution.bindings.items()},
        "trace": [
            {"rule": str(step.rule), "goal": str(step.goal)} for step in solution.trace
        ],
        "cyclic": solution.cyclic,
    }


def outcome_payload(outcome: SolveOutcome) -> dict:
    return {
        "solutions": [solution_payload(s) for s in outcome.solutions],
        "exhausted": outcome.exhausted,
        "budget_hit": outcome.budget_hit,
    }


def outcome_json(outcome: SolveOutcome) -> bytes:
    return dump_json(outcome_payload(outcome))


def dump_json(payload: object) -> bytes:
    return json.dumps(payload, separators=(",", ":"), ensure_ascii=False).encode("utf-8")


def proof_tree_payload(state: ProofState) -> dict:
    """Nested {goal, applied_rule, status, children}; status is precomputed
    per node so the UI never re-derives semantics."""
    return _node_payload(state.root, status(state))


def _node_payload(node, st: StatusNode) -> dict:
    return {
        "goal": str(node.goal),
        "applied_rule": str(node.applied.rule) if node.applied else None,
        "status": st.status.value,
        "children": [
            _node_payload(child, st.children[i]) for i, child in enumerate(node.children)
        ],
    }
