"""Command-line front end: build constructions, run verification queries,
export images, and replay the theorem suite."""

from __future__ import annotations

import json
from pathlib import Path
from typing import List, Optional

import click

from . import constructions as build_mod
from .constructions import NamedComplex
from .graph import DisconnectedImageError
from .serialization import (
    DocumentError,
    complex_to_document,
    document_to_complex,
    report_to_document,
    to_dot,
)
from .suite import run_suite
from .verifier import (
    FAILS,
    HOLDS,
    UNKNOWN,
    SearchBudget,
    is_freezing,
    is_limiting,
    is_minimal_freezing,
    is_s_cold,
    search_minimal_freezing,
)

EXIT_HOLDS = 0
EXIT_FAILS = 1
EXIT_USAGE = 2
EXIT_UNKNOWN = 3


@click.group()
@click.option("--budget-nodes", default=100_000_000, show_default=True, type=int)
@click.option("--budget-ms", default=120_000, show_default=True, type=int)
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--quiet", is_flag=True, default=False)
@click.pass_context
def main(ctx: click.Context, budget_nodes: int, budget_ms: int, seed: int, quiet: bool):
    """Digital-topology constructions and freezing-set verification."""
    try:
        budget = SearchBudget(max_nodes=budget_nodes, max_millis=budget_ms)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    ctx.obj = {"budget": budget, "seed": seed, "quiet": quiet}


def _load_complex(path: str) -> NamedComplex:
    try:
        return document_to_complex(json.loads(Path(path).read_text()))
    except (OSError, json.JSONDecodeError, DocumentError, ValueError) as exc:
        raise click.UsageError(f"cannot read image {path}: {exc}")


def _write_or_print(text: str, out: Optional[str], quiet: bool) -> None:
    if out:
        Path(out).write_text(text)
    elif not quiet:
        click.echo(text, nl=not text.endswith("\n"))


def _resolve_set(nc: NamedComplex, spec: str) -> List[int]:
    """A set spec is 'all', 'all-minus-<spec>', a +-joined union of named
    sets, or a path to a JSON id list."""
    if spec == "all":
        return list(range(nc.image.n))
    if spec.startswith("all-minus-"):
        removed = set(_resolve_set(nc, spec[len("all-minus-") :]))
        return [x for x in range(nc.image.n) if x not in removed]
    members: set = set()
    for term in spec.split("+"):
        if term in nc.named_sets:
            members |= nc.named_sets[term]
        elif Path(term).exists():
            try:
                ids = json.loads(Path(term).read_text())
            except (OSError, json.JSONDecodeError) as exc:
                raise click.UsageError(f"cannot read set file {term}: {exc}")
            members |= set(int(x) for x in ids)
        else:
            raise click.UsageError(
                f"unknown set {term!r}: not a named set of the image nor a file"
            )
    return sorted(members)


FAMILIES = [
    "interval",
    "box",
    "cycle",
    "cone",
    "suspension",
    "pyramid",
    "solid-pyramid",
    "bipyramid",
    "solid-bipyramid",
]


def _build_family(
    family: str,
    n: Optional[int],
    a: int,
    b: Optional[int],
    m: Optional[int],
    extents: Optional[str],
    u: int,
    base: Optional[str],
    base_image: Optional[str],
) -> NamedComplex:
    try:
        if family == "interval":
            if b is None:
                raise click.UsageError("interval requires --a and --b")
            return build_mod.interval(a, b)
        if family == "box":
            if not extents:
                raise click.UsageError("box requires --extents, e.g. --extents 2,2")
            dims = [int(tok) for tok in extents.split(",")]
            return build_mod.box(dims, u)
        if family == "cycle":
            if m is None:
                raise click.UsageError("cycle requires --m")
            return build_mod.simple_closed_curve(m)
        if family in ("cone", "suspension"):
            if base_image:
                base_nc = _load_complex(base_image)
            elif base:
                base_nc = _build_family(base, n, a, b, m, extents, u, None, None)
            else:
                raise click.UsageError(f"{family} requires --base or --base-image")
            builder = build_mod.cone if family == "cone" else build_mod.suspension
            return builder(base_nc.image)
        if n is None:
            raise click.UsageError(f"{family} requires --n")
        builder = {
            "pyramid": build_mod.pyramid,
            "solid-pyramid": build_mod.solid_pyramid,
            "bipyramid": build_mod.bipyramid,
            "solid-bipyramid": build_mod.solid_bipyramid,
        }[family]
        return builder(n)
    except ValueError as exc:
        raise click.UsageError(str(exc))


@main.command("build")
@click.argument("family", type=click.Choice(FAMILIES))
@click.option("--n", type=int, default=None, help="pyramid-family size")
@click.option("--a", type=int, default=0, help="interval lower endpoint")
@click.option("--b", type=int, default=None, help="interval upper endpoint")
@click.option("--m", type=int, default=None, help="cycle length")
@click.option("--extents", type=str, default=None, help="box extents, comma separated")
@click.option("--u", type=int, default=1, show_default=True, help="c_u adjacency index")
@click.option("--base", type=click.Choice(FAMILIES), default=None)
@click.option("--base-image", type=click.Path(), default=None)
@click.option("--out", type=click.Path(), default=None)
@click.pass_context
def cmd_build(ctx, family, n, a, b, m, extents, u, base, base_image, out):
    """Build a named construction and write its image document."""
    nc = _build_family(family, n, a, b, m, extents, u, base, base_image)
    text = json.dumps(complex_to_document(nc), indent=2) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        click.echo(text, nl=False)
    if not ctx.obj["quiet"]:
        click.echo(
            f"{family}: {nc.image.n} vertices, {len(nc.image.edges)} edges",
            err=True,
        )


@main.command("verify")
@click.argument(
    "property", type=click.Choice(["freezing", "cold", "limiting", "minimal"])
)
@click.option("--image", "image_path", required=True, type=click.Path())
@click.option("--set", "set_spec", required=True, type=str)
@click.option("--s", type=int, default=1, show_default=True, help="cold displacement bound")
@click.option("--m", type=int, default=None, help="limiting hypothesis bound")
@click.option("--n", type=int, default=None, help="limiting conclusion bound")
@click.option("--out", type=click.Path(), default=None)
@click.pass_context
def cmd_verify(ctx, property, image_path, set_spec, s, m, n, out):
    """Decide a freezing / cold / limiting / minimal-freezing query."""
    nc = _load_complex(image_path)
    subset = _resolve_set(nc, set_spec)
    budget = ctx.obj["budget"]
    try:
        if property == "freezing":
            report = is_freezing(nc.image, subset, budget)
        elif property == "cold":
            report = is_s_cold(nc.image, subset, s, budget)
        elif property == "limiting":
            if m is None or n is None:
                raise click.UsageError("limiting requires --m and --n")
            report = is_limiting(nc.image, subset, m, n, budget)
        else:
            report = is_minimal_freezing(nc.image, subset, budget)
    except DisconnectedImageError as exc:
        raise click.UsageError(str(exc))
    _write_or_print(
        json.dumps(report_to_document(report), indent=2), out, ctx.obj["quiet"]
    )
    ctx.exit({HOLDS: EXIT_HOLDS, FAILS: EXIT_FAILS, UNKNOWN: EXIT_UNKNOWN}[report.verdict])


@main.command("minimal")
@click.option("--image", "image_path", required=True, type=click.Path())
@click.option("--set", "set_spec", required=True, type=str)
@click.option("--out", type=click.Path(), default=None)
@click.pass_context
def cmd_minimal(ctx, image_path, set_spec, out):
    """Shorthand for `verify minimal`."""
    nc = _load_complex(image_path)
    subset = _resolve_set(nc, set_spec)
    try:
        report = is_minimal_freezing(nc.image, subset, ctx.obj["budget"])
    except DisconnectedImageError as exc:
        raise click.UsageError(str(exc))
    _write_or_print(
        json.dumps(report_to_document(report), indent=2), out, ctx.obj["quiet"]
    )
    ctx.exit({HOLDS: EXIT_HOLDS, FAILS: EXIT_FAILS, UNKNOWN: EXIT_UNKNOWN}[report.verdict])


@main.command("search-minimal")
@click.option("--image", "image_path", required=True, type=click.Path())
@click.option("--set", "set_spec", default=None, type=str, help="freezing seed set")
@click.pass_context
def cmd_search_minimal(ctx, image_path, set_spec):
    """Greedily shrink a freezing seed set to a minimal freezing set."""
    nc = _load_complex(image_path)
    seed_set = _resolve_set(nc, set_spec) if set_spec else None
    try:
        result = search_minimal_freezing(nc.image, seed_set, ctx.obj["budget"])
    except (ValueError, DisconnectedImageError) as exc:
        raise click.UsageError(str(exc))
    if result.members is None:
        click.echo("unknown: budget exhausted")
        ctx.exit(EXIT_UNKNOWN)
    click.echo(json.dumps(sorted(result.members)))


@main.command("metric")
@click.option("--image", "image_path", required=True, type=click.Path())
@click.option("--source", "src", type=int, default=None)
@click.option("--target", "dst", type=int, default=None)
@click.option("--diameter", "want_diameter", is_flag=True, default=False)
@click.pass_context
def cmd_metric(ctx, image_path, src, dst, want_diameter):
    """Report shortest-path distances or the diameter."""
    nc = _load_complex(image_path)
    try:
        if want_diameter:
            click.echo(str(nc.image.diameter()))
        elif src is not None and dst is not None:
            d = nc.image.distance(src, dst)
            click.echo("inf" if d == float("inf") else str(int(d)))
        else:
            raise click.UsageError("metric requires --diameter or --source/--target")
    except (DisconnectedImageError, KeyError, ValueError) as exc:
        raise click.UsageError(str(exc))


@main.command("export")
@click.option("--image", "image_path", required=True, type=click.Path())
@click.option("--format", "fmt", type=click.Choice(["dot", "json"]), default="dot")
@click.option("--out", type=click.Path(), default=None)
@click.pass_context
def cmd_export(ctx, image_path, fmt, out):
    """Export an image document as Graphviz DOT or canonical JSON."""
    nc = _load_complex(image_path)
    if fmt == "dot":
        text = to_dot(nc)
    else:
        text = json.dumps(complex_to_document(nc), indent=2) + "\n"
    _write_or_print(text, out, quiet=False)


@main.command("paper-suite")
@click.option("--scale", type=click.Choice(["1", "2"]), default="2", show_default=True)
@click.option("--rows", type=str, default=None, help="comma-separated row numbers")
@click.pass_context
def cmd_paper_suite(ctx, scale, rows):
    """Run every theorem-instance check and print a pass/fail table."""
    only = [int(tok) for tok in rows.split(",")] if rows else None
    results = run_suite(
        scale=int(scale), budget=ctx.obj["budget"], seed=ctx.obj["seed"], only=only
    )
    width = max(len(r.title) for r in results)
    for r in results:
        click.echo(
            f"{r.number:>2}  {r.title:<{width}}  {r.status.upper():<7} "
            f"({r.elapsed_ms:8.1f} ms)  {r.detail}"
        )
    statuses = {r.status for r in results}
    if "fail" in statuses:
        ctx.exit(EXIT_FAILS)
    if "unknown" in statuses:
        ctx.exit(EXIT_UNKNOWN)
    ctx.exit(EXIT_HOLDS)


if __name__ == "__main__":  # pragma: no cover
    main()
