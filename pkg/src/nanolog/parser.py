"""Concrete syntax: a recursive-descent parser and the canonical printer.

Grammar (whitespace and %-comments allowed between any two tokens):

    term    := VAR | IDENT | IDENT '(' term (',' term)* ')'
    rule    := term '.' | term ':-' term (',' term)* '.'
    program := rule*
    query   := term (',' term)* '.'?

VAR is ``[A-Z][A-Za-z0-9_]*`` and IDENT is ``[a-z][A-Za-z0-9_]*``.  The
canonical printed form has no spaces inside argument lists and ``", "``
between rule premises; ``parse(print(v)) == v`` for every accepted value.
"""

from __future__ import annotations

from dataclasses import dataclass

from .terms import Compound, NanologError, Program, Rule, Term, Var


@dataclass(frozen=True)
class SourcePosition:
    line: int
    column: int

    def __str__(self) -> str:
        return f"{self.line}:{self.column}"


class ParseError(NanologError):
    def __init__(self, position: SourcePosition, expected: str, found: str) -> None:
        self.position = position
        self.expected = expected
        self.found = found
        super().__init__(f"{position}: expected {expected}, found {found}")


class BareVariableHead(ParseError):
    """A rule whose conclusion is a variable; only compounds may head a rule."""

    def __init__(self, position: SourcePosition, name: str) -> None:
        super().__init__(position, "compound term as rule head", f"variable {name}")


class _Scanner:
    def __init__(self, src: str) -> None:
        self.src = src
        self.pos = 0
        self.line = 1
        self.col = 1

    def position(self) -> SourcePosition:
        return SourcePosition(self.line, self.col)

    def error(self, expected: str) -> ParseError:
        if self.pos >= len(self.src):
            found = "end of input"
        else:
            found = repr(self.src[self.pos])
        return ParseError(self.position(), expected, found)

    def _advance(self, n: int = 1) -> None:
        for _ in range(n):
            if self.src[self.pos] == "\n":
                self.line += 1
                self.col = 1
            else:
                self.col += 1
            self.pos += 1

    def skip_layout(self) -> None:
        while self.pos < len(self.src):
            c = self.src[self.pos]
            if c in " \t\r\n":
                self._advance()
            elif c == "%":
                while self.pos < len(self.src) and self.src[self.pos] != "\n":
                    self._advance()
            else:
                return

    def at_end(self) -> bool:
        return self.pos >= len(self.src)

    def peek(self) -> str:
        return self.src[self.pos] if self.pos < len(self.src) else ""

    def try_literal(self, lit: str) -> bool:
        if self.src.startswith(lit, self.pos):
            self._advance(len(lit))
            return True
        return False

    def expect_literal(self, lit: str) -> None:
        if not self.try_literal(lit):
            raise self.error(f"'{lit}'")

    def read_name(self) -> str:
        start = self.pos
        while self.pos < len(self.src) and _is_name_char(self.src[self.pos]):
            self._advance()
        return self.src[start : self.pos]


def _is_name_char(c: str) -> bool:
    return "a" <= c <= "z" or "A" <= c <= "Z" or "0" <= c <= "9" or c == "_"


def _term(s: _Scanner) -> Term:
    s.skip_layout()
    c = s.peek()
    if "A" <= c <= "Z":
        return Var(s.read_name())
    if "a" <= c <= "z":
        functor = s.read_name()
        s.skip_layout()
        if not s.try_literal("("):
            return Compound(functor)
        args = [_term(s)]
        s.skip_layout()
        while s.try_literal(","):
            args.append(_term(s))
            s.skip_layout()
        s.expect_literal(")")
        return Compound(functor, tuple(args))
    raise s.error("term")


def _expect_end(s: _Scanner) -> None:
    s.skip_layout()
    if not s.at_end():
        raise s.error("end of input")


def _rule(s: _Scanner) -> Rule:
    s.skip_layout()
    head_pos = s.position()
    head = _term(s)
    s.skip_layout()
    if s.try_literal(":-"):
        premises = [_term(s)]
        s.skip_layout()
        while s.try_literal(","):
            premises.append(_term(s))
            s.skip_layout()
        s.expect_literal(".")
    else:
        premises = []
        s.expect_literal(".")
    if isinstance(head, Var):
        raise BareVariableHead(head_pos, head.name)
    return Rule(head, tuple(premises))


def parse_term(src: str) -> Term:
    s = _Scanner(src)
    t = _term(s)
    _expect_end(s)
    return t


def parse_rule(src: str) -> Rule:
    s = _Scanner(src)
    r = _rule(s)
    _expect_end(s)
    return r


def parse_program(src: str) -> Program:
    s = _Scanner(src)
    rules = []
    while True:
        s.skip_layout()
        if s.at_end():
            return Program(tuple(rules))
        rules.append(_rule(s))


def parse_query(src: str) -> list[Term]:
    """One or more comma-separated goals with an optional trailing period."""
    s = _Scanner(src)
    goals = [_term(s)]
    s.skip_layout()
    while s.try_literal(","):
        goals.append(_term(s))
        s.skip_layout()
    s.try_literal(".")
    _expect_end(s)
    return goals


def print_term(t: Term) -> str:
    return str(t)


def print_rule(r: Rule) -> str:
    return str(r)


def print_program(p: Program) -> str:
    return str(p)
