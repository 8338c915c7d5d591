"""``fpcat`` command line: run scripts, run verification suites, print the report schema."""

from __future__ import annotations

import json
import os
import sys
from importlib import resources

import click

from .config import configure
from .dsl import ScriptError, parse_script
from .errors import FpcatError
from .rings import builtin_ring
from .runner import SCHEMA_VERSION, render_text, run_program
from . import __version__


def _emit(data, fmt, text):
    if fmt == "json":
        click.echo(json.dumps(data, indent=2, ensure_ascii=False))
    else:
        click.echo(text, nl=False)


@click.group()
@click.version_option(__version__, prog_name="fpcat")
def main():
    """Computations with finitely presented functors over finite rings."""


@main.command()
@click.argument("script", type=click.Path(exists=True, dir_okay=False))
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="json")
@click.option("--seed", type=int, default=0)
@click.option("--max-module-size", type=int, default=None)
@click.option("--debug-extensional", is_flag=True)
@click.option("--timing", is_flag=True, help="Add per-statement wall times (breaks byte-identical output).")
def run(script, fmt, seed, max_module_size, debug_extensional, timing):
    """Parse and execute SCRIPT."""
    with open(script, encoding="utf-8") as fh:
        text = fh.read()
    try:
        program = parse_script(text)
    except ScriptError as exc:
        click.echo(f"{script}:{exc.line}:{exc.column}: {exc.bare}", err=True)
        sys.exit(2)
    report = run_program(program, seed=seed, max_module_size=max_module_size,
                         debug_extensional=debug_extensional, timing=timing,
                         base_dir=os.path.dirname(os.path.abspath(script)))
    if report.error:
        e = report.error
        click.echo(f"{script}:{e['line']}:{e['column']}: {e['type']}: {e['message']}", err=True)
    _emit(report.to_json(), fmt, render_text(report))
    sys.exit(0 if report.passed else 1)


@main.command()
@click.option("--ring", "ring_name", required=True, help="Z4, Z6, F2x2 or T2F2.")
@click.option("--maxgens", type=int, default=1)
@click.option("--samples", type=int, default=20)
@click.option("--seed", type=int, default=0)
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="text")
@click.option("--max-module-size", type=int, default=None)
def verify(ring_name, maxgens, samples, seed, fmt, max_module_size):
    """Run every verification suite on the corpus of RING."""
    from .suite import verify_suite

    changes = {} if max_module_size is None else {"max_module_size": max_module_size}
    try:
        with configure(**changes):
            rep = verify_suite(builtin_ring(ring_name), maxgens, seed, samples)
    except FpcatError as exc:
        click.echo(f"error: {type(exc).__name__}: {exc}", err=True)
        sys.exit(2)
    lines = [f"{c.status.upper():4} {c.anchor:28} {c.checked:5}  {c.claim}" for c in rep.claims]
    corpus = rep.corpus["right"]
    lines.insert(0, f"ring {rep.ring}, maxgens {maxgens}, seed {seed}: "
                    f"{corpus['modules']} modules, {corpus['functors']} functors")
    lines.append("PASS" if rep.passed else "FAIL")
    data = dict(schema_version=SCHEMA_VERSION, tool="fpcat", version=__version__, **rep.to_json())
    _emit(data, fmt, "\n".join(lines) + "\n")
    sys.exit(0 if rep.passed else 1)


@main.command()
def schema():
    """Print the JSON schema of run reports."""
    click.echo(resources.files("fpcat").joinpath("schema.json").read_text(encoding="utf-8"), nl=False)


if __name__ == "__main__":
    main()
