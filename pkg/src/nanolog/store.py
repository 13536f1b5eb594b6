"""File-backed workspace storage: one canonical program file per workspace.

Each workspace is ``<data-dir>/<id>.pl``, canonical-printed with one rule
per line, so teachers can read or edit it with any text editor.  Every
mutation rewrites the file via write-temp-then-rename, so a crash leaves
either the old file or the new one, never a torn mix.  Operations on one
workspace are serialized with a per-workspace lock; distinct workspaces
are independent.
"""

from __future__ import annotations

import os
import re
import tempfile
import threading
from pathlib import Path

from .parser import parse_program, parse_rule, print_rule
from .terms import NanologError, Program, Rule

_ID = re.compile(r"[a-z0-9-]{1,64}\Z")


class InvalidId(NanologError):
    """Workspace ids are 1-64 chars of [a-z0-9-]."""


class AlreadyExists(NanologError):
    pass


class NotFound(NanologError):
    pass


class BadIndex(NanologError):
    pass


class WorkspaceStore:
    def __init__(self, data_dir: str | os.PathLike, seed_file: str | os.PathLike | None = None):
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self._seed: tuple[Rule, ...] = ()
        if seed_file is not None:
            self._seed = parse_program(Path(seed_file).read_text(encoding="utf-8")).rules
        self._locks: dict[str, threading.Lock] = {}
        self._registry_lock = threading.Lock()

    # -- basics ----------------------------------------------------------

    def _lock(self, workspace_id: str) -> threading.Lock:
        with self._registry_lock:
            return self._locks.setdefault(workspace_id, threading.Lock())

    def _path(self, workspace_id: str) -> Path:
        if not _ID.match(workspace_id):
            raise InvalidId(f"invalid workspace id: {workspace_id!r}")
        return self.data_dir / f"{workspace_id}.pl"

    def _write(self, path: Path, rules: list[Rule] | tuple[Rule, ...]) -> None:
        text = "".join(f"{print_rule(r)}\n" for r in rules)
        fd, tmp = tempfile.mkstemp(dir=self.data_dir, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as handle:
                handle.write(text)
                handle.flush()
                os.fsync(handle.fileno())
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    def _read(self, path: Path, workspace_id: str) -> list[Rule]:
        if not path.exists():
            raise NotFound(f"no workspace {workspace_id!r}")
        return list(parse_program(path.read_text(encoding="utf-8")).rules)

    # -- operations ------------------------------------------------------

    def exists(self, workspace_id: str) -> bool:
        return self._path(workspace_id).exists()

    def create_workspace(self, workspace_id: str) -> tuple[Rule, ...]:
        """Create and persist an empty (or seeded) workspace; returns its rules."""
        path = self._path(workspace_id)
        with self._lock(workspace_id):
            if path.exists():
                raise AlreadyExists(f"workspace {workspace_id!r} already exists")
            self._write(path, self._seed)
            return self._seed

    def add_rule(self, workspace_id: str, rule_src: str) -> tuple[int, Rule]:
        """Parse, append, persist; returns (index, rule).  On a parse error
        the store is untouched."""
        path = self._path(workspace_id)
        rule = parse_rule(rule_src)
        with self._lock(workspace_id):
            rules = self._read(path, workspace_id)
            rules.append(rule)
            self._write(path, rules)
            return len(rules) - 1, rule

    def list_rules(self, workspace_id: str) -> list[tuple[int, str]]:
        path = self._path(workspace_id)
        with self._lock(workspace_id):
            rules = self._read(path, workspace_id)
        return [(i, print_rule(r)) for i, r in enumerate(rules)]

    def delete_rule(self, workspace_id: str, index: int) -> None:
        path = self._path(workspace_id)
        with self._lock(workspace_id):
            rules = self._read(path, workspace_id)
            if not 0 <= index < len(rules):
                raise BadIndex(f"no rule at index {index}")
            del rules[index]
            self._write(path, rules)

    def load_program(self, workspace_id: str) -> Program:
        path = self._path(workspace_id)
        with self._lock(workspace_id):
            return Program(tuple(self._read(path, workspace_id)))
