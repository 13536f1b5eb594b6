"""Command line front door: one-shot solving, an interactive REPL, and the
HTTP service launcher."""

from __future__ import annotations

import socket
import sys
from pathlib import Path

import click

from .parser import ParseError, parse_program, parse_query, print_program, print_rule
from .solver import SolveOptions, SolveOutcome, SolveStream, Strategy, solve
from .terms import Program, Term
from .wire import outcome_json

_STRATEGIES = [s.value for s in Strategy]


@click.group()
@click.version_option(package_name="nanolog")
def main() -> None:
    """nanolog: a tiny Prolog interpreter, prover service, and REPL."""


def _load_program(path: str) -> Program:
    try:
        return parse_program(Path(path).read_text(encoding="utf-8"))
    except ParseError as exc:
        click.echo(f"{path}: {exc}", err=True)
        sys.exit(2)


def _parse_goals(text: str) -> list[Term]:
    try:
        return parse_query(text)
    except ParseError as exc:
        click.echo(f"query: {exc}", err=True)
        sys.exit(2)


def _binding_lines(bindings: dict) -> list[str]:
    if not bindings:
        return ["true."]
    return [f"{name} = {term}" for name, term in bindings.items()]


def _trace_lines(trace) -> list[str]:
    # Reconstruct each application's depth in the proof tree: the goal
    # list is a stack, so premises push their parent's depth plus one.
    depths = [0]
    lines = []
    for step in trace:
        depth = depths.pop(0)
        lines.append("  " * depth + print_rule(step.rule))
        depths[0:0] = [depth + 1] * len(step.rule.premises)
    return lines


@main.command("solve")
@click.option("--file", "program_path", required=True, type=click.Path(exists=True, dir_okay=False), help="Program file to load.")
@click.option("--query", "query_text", required=True, help="Goal(s) to solve.")
@click.option("--strategy", type=click.Choice(_STRATEGIES), default="dfs", show_default=True)
@click.option("--max-depth", type=click.IntRange(min=1), default=256, show_default=True)
@click.option("--max-solutions", type=click.IntRange(min=1), default=10, show_default=True)
@click.option("--trace", "show_trace", is_flag=True, help="Print applied rules, indented by proof depth.")
@click.option("--json", "as_json", is_flag=True, help="Emit the service's query response JSON.")
def solve_command(program_path, query_text, strategy, max_depth, max_solutions, show_trace, as_json):
    """Solve a query against a program file and print the answers.

    Exits 0 when at least one solution was found, 1 when none, 2 on
    parse or usage errors.
    """
    program = _load_program(program_path)
    goals = _parse_goals(query_text)
    opts = SolveOptions(
        strategy=Strategy(strategy), max_depth=max_depth, max_solutions=max_solutions
    )
    outcome = solve(program, goals, opts)
    if as_json:
        sys.stdout.buffer.write(outcome_json(outcome))
        sys.stdout.buffer.flush()
    else:
        _print_outcome(outcome, show_trace)
    sys.exit(0 if outcome.solutions else 1)


def _print_outcome(outcome: SolveOutcome, show_trace: bool) -> None:
    for i, solution in enumerate(outcome.solutions):
        if i:
            click.echo()
        for line in _binding_lines({k: str(v) for k, v in solution.bindings.items()}):
            click.echo(line)
        if show_trace:
            for line in _trace_lines(solution.trace):
                click.echo(line)
    if not outcome.solutions:
        click.echo("no solutions.")
    if outcome.exhausted:
        click.echo("exhausted")
    else:
        click.echo(f"budget hit: {outcome.budget_hit}")


@main.command("repl")
@click.option("--file", "program_path", type=click.Path(exists=True, dir_okay=False), default=None, help="Program file to load at startup.")
@click.option("--max-depth", type=click.IntRange(min=1), default=256, show_default=True)
@click.option("--strategy", type=click.Choice(_STRATEGIES), default="dfs", show_default=True)
def repl_command(program_path, max_depth, strategy):
    """Interactive loop: enter queries, `;` asks for the next solution.

    Meta commands: :load <file> adds a file's rules, :rules lists the
    program, :quit leaves.
    """
    rules = list(_load_program(program_path).rules) if program_path else []
    opts = SolveOptions(
        strategy=Strategy(strategy), max_depth=max_depth, max_solutions=10**9
    )
    while True:
        try:
            line = input("?- ").strip()
        except EOFError:
            click.echo()
            return
        except KeyboardInterrupt:
            click.echo()
            return
        if not line:
            continue
        if line.startswith(":"):
            if _meta_command(line, rules):
                return
            continue
        try:
            goals = parse_query(line)
        except ParseError as exc:
            click.echo(f"error: {exc}")
            continue
        _run_interactive(Program(tuple(rules)), goals, opts)


def _meta_command(line: str, rules: list) -> bool:
    """Handle a :command; returns True when the REPL should exit."""
    parts = line.split(None, 1)
    command = parts[0]
    if command == ":quit":
        return True
    if command == ":rules":
        click.echo(print_program(Program(tuple(rules))), nl=False)
        return False
    if command == ":load":
        if len(parts) != 2:
            click.echo("usage: :load <file>")
            return False
        try:
            loaded = parse_program(Path(parts[1]).read_text(encoding="utf-8"))
        except (OSError, ParseError) as exc:
            click.echo(f"error: {exc}")
            return False
        rules.extend(loaded.rules)
        click.echo(f"loaded {len(loaded.rules)} rules.")
        return False
    click.echo(f"unknown command: {command}")
    return False


def _run_interactive(program: Program, goals: list[Term], opts: SolveOptions) -> None:
    stream = SolveStream(program, goals, opts)
    for solution in stream:
        text = ", ".join(
            _binding_lines({k: str(v) for k, v in solution.bindings.items()})
        )
        click.echo(f"{text} ", nl=False)
        try:
            answer = input()
        except EOFError:
            click.echo()
            return
        if answer.strip() != ";":
            return
    if stream.budget_hit is not None:
        click.echo(f"budget hit: {stream.budget_hit}")
    else:
        click.echo("false.")


@main.command("serve")
@click.option("--addr", default="127.0.0.1:8000", show_default=True, envvar="NANOLOG_ADDR", help="host:port to bind.")
@click.option("--data-dir", default="data", show_default=True, envvar="NANOLOG_DATA_DIR", help="Workspace storage directory (created if missing).")
@click.option("--seed-corpus", type=click.Path(exists=True, dir_okay=False), default=None, envvar="NANOLOG_SEED_CORPUS", help="Program file used to seed new workspaces.")
@click.option("--cors-origin", multiple=True, envvar="NANOLOG_CORS_ORIGIN", help="Allowed CORS origin (repeatable).")
@click.option("--ui-dir", type=click.Path(exists=True, file_okay=False), default=None, envvar="NANOLOG_UI_DIR", help="Serve web UI assets from this directory.")
@click.option("--query-timeout", type=float, default=2.0, show_default=True, envvar="NANOLOG_QUERY_TIMEOUT", help="Wall-clock budget per query, seconds.")
def serve_command(addr, data_dir, seed_corpus, cors_origin, ui_dir, query_timeout):
    """Run the JSON HTTP service.

    Every flag can also come from the environment (NANOLOG_ADDR,
    NANOLOG_DATA_DIR, NANOLOG_SEED_CORPUS, NANOLOG_CORS_ORIGIN,
    NANOLOG_UI_DIR, NANOLOG_QUERY_TIMEOUT).
    """
    import logging

    import uvicorn

    from .service import ServiceConfig, create_app

    request_log = logging.getLogger("nanolog.service")
    request_log.addHandler(logging.StreamHandler(sys.stdout))
    request_log.setLevel(logging.INFO)

    host, _, port_text = addr.rpartition(":")
    if not host or not port_text.isdigit():
        click.echo(f"invalid --addr {addr!r}: expected host:port", err=True)
        sys.exit(2)
    port = int(port_text)
    try:
        probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
        probe.bind((host, port))
        probe.close()
    except OSError as exc:
        click.echo(f"cannot bind {addr}: {exc}", err=True)
        sys.exit(2)
    config = ServiceConfig(
        data_dir=data_dir,
        seed_file=seed_corpus,
        cors_origins=tuple(cors_origin),
        query_timeout=query_timeout,
        ui_dir=ui_dir,
    )
    app = create_app(config)
    uvicorn.run(app, host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main()
