"""Bundled example programs: family tree, Peano arithmetic, list processing,
a left-recursive graph, and a 4x4 Latin square puzzle."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .parser import parse_program
from .terms import Program

NAMES = ("family", "peano", "lists", "path", "latin4")


def corpus_text(name: str) -> str:
    if name not in NAMES:
        raise KeyError(f"unknown corpus program: {name!r}")
    return (resources.files(__package__) / "corpus" / f"{name}.pl").read_text("utf-8")


def corpus_program(name: str) -> Program:
    return parse_program(corpus_text(name))


def corpus_path(name: str) -> Path:
    """Filesystem path of a bundled program (for CLI --file usage)."""
    if name not in NAMES:
        raise KeyError(f"unknown corpus program: {name!r}")
    return Path(str(resources.files(__package__) / "corpus" / f"{name}.pl"))
