"""``stepcomp`` command line.

Exit codes: 0 success or "yes", 1 "no", 2 usage or input error, 3 unsupported
step pair.
"""
from __future__ import annotations

import sys
from pathlib import Path
from typing import List, Optional, Sequence, Union

import click
from pydantic import ValidationError

from stepcomp import __version__
from stepcomp.core.arcfile import (
    emit_digraph,
    emit_graph,
    export_dot,
    read_any,
    read_digraph,
    write_text,
)
from stepcomp.core.digraph import Graph, PartitionedDigraph, PartitionSpec, underlying_graph
from stepcomp.core.errors import SelfVerificationError, StepcompError
from stepcomp.core.log import get_logger
from stepcomp.models.settings import CliConfig
from stepcomp.services.competition import (
    StepPair,
    competing_pairs_report,
    competition_graph,
    is_competitive,
)
from stepcomp.services.necessary import check_necessary, is_sharp
from stepcomp.services.oracle import (
    AuditRow,
    brute_force_orientable,
    partitions_up_to,
    random_digraph,
    run_audit,
    write_audit_csv,
)
from stepcomp.services.synthesis import (
    SEED_CATALOG,
    Outcome,
    SeedKind,
    construct,
    decide,
)

log = get_logger("cli")

EXIT_YES = 0
EXIT_NO = 1
EXIT_USAGE = 2
EXIT_UNSUPPORTED = 3

_OUTCOME_CODES = {
    Outcome.ORIENTABLE: EXIT_YES,
    Outcome.NOT_ORIENTABLE: EXIT_NO,
    Outcome.UNSUPPORTED: EXIT_UNSUPPORTED,
}

DEFAULT_AUDIT_STEPS = ("1,2", "1,3", "2,2", "3,3")
_TEXT_FIELDS = ("partition", "steps", "orientable", "witness_mask", "orientations_checked")


def _validation_message(exc: ValidationError) -> str:
    messages = []
    for error in exc.errors():
        location = ".".join(str(part) for part in error.get("loc", ()))
        text = str(error.get("msg", "invalid value")).removeprefix("Value error, ")
        messages.append(f"{location}: {text}" if location else text)
    return "; ".join(messages)


class _StepcompGroup(click.Group):
    """Maps library errors onto the exit-code contract."""

    def invoke(self, ctx: click.Context):
        try:
            return super().invoke(ctx)
        except ValidationError as exc:
            click.echo(f"error: {_validation_message(exc)}", err=True)
            ctx.exit(EXIT_USAGE)
        except SelfVerificationError as exc:
            log.error("internal error: %s", exc)
            click.echo(f"internal error: {exc}", err=True)
            ctx.exit(EXIT_USAGE)
        except StepcompError as exc:
            click.echo(f"error: {exc}", err=True)
            ctx.exit(EXIT_USAGE)
        except OSError as exc:
            log.error("i/o failure: %s", exc)
            click.echo(f"error: {exc}", err=True)
            ctx.exit(EXIT_USAGE)


def _config(subcommand: str, **values) -> CliConfig:
    config = CliConfig(subcommand=subcommand, **{k: v for k, v in values.items() if v is not None})
    for note in config.notices():
        log.info(note)
        click.echo(f"notice: {note}", err=True)
    return config


def _emit(text: str, out: Optional[Path]) -> None:
    if out is None:
        click.echo(text, nl=False)
    else:
        write_text(out, text)


def _graph_input(config: CliConfig) -> tuple[Graph, str]:
    """Graph named by ``--partition`` or read from a graph/digraph file."""

    spec = config.partition_spec
    if spec is not None:
        return spec.graph(), str(spec)
    assert config.input_path is not None
    loaded = read_any(config.input_path)
    if isinstance(loaded, Graph):
        return loaded, config.input_path.name
    if isinstance(loaded, PartitionedDigraph):
        return underlying_graph(loaded.digraph), config.input_path.name
    return underlying_graph(loaded), config.input_path.name


_steps_option = click.option("--steps", "steps", required=True, help="Step pair as 'i,j'.")
_partition_option = click.option(
    "--partition", "partition", default=None, help="Comma-separated partite-set sizes, e.g. 10,5."
)


@click.group(cls=_StepcompGroup)
@click.version_option(__version__, prog_name="stepcomp")
def cli() -> None:
    """(i,j)-step competitive orientations of digraphs and complete multipartite graphs."""


@cli.command("decide")
@click.option("--partition", "partition", required=True, help="Comma-separated partite-set sizes.")
@_steps_option
@click.pass_context
def cmd_decide(ctx: click.Context, partition: str, steps: str) -> None:
    """Decide whether K_{n1,...,nk} has an (i,j)-step competitive orientation."""

    config = _config("decide", partition=partition, steps=steps)
    verdict = decide(config.partition_spec, config.step_pair)
    click.echo(f"{verdict.partition.label()} steps=({verdict.steps}): {verdict.describe()}")
    ctx.exit(_OUTCOME_CODES[verdict.outcome])


@cli.command("construct")
@click.option("--partition", "partition", required=True, help="Comma-separated partite-set sizes.")
@_steps_option
@click.option("--format", "output_format", type=click.Choice(["text", "dot"]), default="text")
@click.option("--out", "out", type=click.Path(dir_okay=False, path_type=Path), default=None)
@click.option("--dot", "dot", type=click.Path(dir_okay=False, path_type=Path), default=None)
@click.option(
    "--seeds-dir",
    "seeds_dir",
    type=click.Path(file_okay=False, exists=True, path_type=Path),
    default=None,
)
@click.pass_context
def cmd_construct(
    ctx: click.Context,
    partition: str,
    steps: str,
    output_format: str,
    out: Optional[Path],
    dot: Optional[Path],
    seeds_dir: Optional[Path],
) -> None:
    """Build a verified orientation and print it as an arc list or DOT."""

    config = _config("construct", partition=partition, steps=steps, output_format=output_format)
    result = construct(config.partition_spec, config.step_pair, seeds_dir)
    if not result.ok:
        click.echo(result.verdict.describe(), err=True)
        ctx.exit(_OUTCOME_CODES[result.verdict.outcome])

    orientation = result.orientation
    rendered = export_dot(orientation) if config.output_format == "dot" else emit_digraph(orientation)
    _emit(rendered, out)
    if dot is not None:
        write_text(dot, export_dot(orientation))
    if out is not None:
        click.echo(
            f"wrote {orientation.digraph.size} arcs on {orientation.digraph.n} vertices to {out} "
            f"({result.verdict.describe()})",
            err=True,
        )
    ctx.exit(EXIT_YES)


@cli.command("verify")
@click.argument("path", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@_steps_option
@click.pass_context
def cmd_verify(ctx: click.Context, path: Path, steps: str) -> None:
    """Check that every pair of vertices (i,j)-step competes."""

    config = _config("verify", input_path=path, steps=steps)
    digraph = read_digraph(path)
    outcome = is_competitive(digraph, config.step_pair)
    if outcome:
        click.echo("competitive")
        ctx.exit(EXIT_YES)
    u, v = outcome.failing_pair
    click.echo(f"not competitive: pair ({u}, {v}) does not ({config.step_pair})-step compete")
    ctx.exit(EXIT_NO)


@cli.command("competition-graph")
@click.argument("path", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@_steps_option
@click.option("--format", "output_format", type=click.Choice(["text", "dot"]), default="text")
@click.option("--out", "out", type=click.Path(dir_okay=False, path_type=Path), default=None)
@click.pass_context
def cmd_competition_graph(
    ctx: click.Context, path: Path, steps: str, output_format: str, out: Optional[Path]
) -> None:
    """Print the (i,j)-step competition graph as an edge list or DOT."""

    config = _config("competition-graph", input_path=path, steps=steps, output_format=output_format)
    digraph = read_digraph(path)
    graph = competition_graph(digraph, config.step_pair)
    if config.output_format == "dot":
        _emit(export_dot(graph, name="C"), out)
        ctx.exit(EXIT_YES)

    text = emit_graph(graph)
    if isinstance(digraph, PartitionedDigraph):
        report = competing_pairs_report(digraph, config.step_pair)
        text += f"# missing same-block pairs: {_pairs(report.same_block)}\n"
        text += f"# missing cross-block pairs: {_pairs(report.cross_block)}\n"
    _emit(text, out)
    ctx.exit(EXIT_YES)


def _pairs(pairs: Sequence[tuple]) -> str:
    return " ".join(f"{u}-{v}" for u, v in pairs) if pairs else "none"


@cli.command("brute-force")
@click.argument(
    "path", required=False, type=click.Path(exists=True, dir_okay=False, path_type=Path)
)
@_partition_option
@_steps_option
@click.option("--count", "count", is_flag=True, help="Count every competitive orientation.")
@click.option("--edge-cap", "edge_cap", type=int, default=None)
@click.option("--jobs", "jobs", type=int, default=None)
@click.option(
    "--quick-reject",
    "quick_reject",
    is_flag=True,
    help="Answer 'no' without enumerating when a necessary condition fails.",
)
@click.option("--format", "output_format", type=click.Choice(["csv", "text"]), default="csv")
@click.pass_context
def cmd_brute_force(
    ctx: click.Context,
    path: Optional[Path],
    partition: Optional[str],
    steps: str,
    count: bool,
    edge_cap: Optional[int],
    jobs: Optional[int],
    quick_reject: bool,
    output_format: str,
) -> None:
    """Enumerate every orientation and report whether one is competitive."""

    config = _config(
        "brute-force",
        input_path=path,
        partition=partition,
        steps=steps,
        edge_cap=edge_cap,
        jobs=jobs,
        output_format=output_format,
    )
    graph, label = _graph_input(config)
    result = brute_force_orientable(
        graph,
        config.step_pair,
        count=count,
        edge_cap=config.edge_cap,
        jobs=config.jobs,
        audit=not quick_reject,
    )
    row = AuditRow.from_result(label, config.step_pair, result)
    if config.output_format == "csv":
        stream = click.get_text_stream("stdout")
        write_audit_csv([row], stream, extra_columns=("competitive_count",) if count else ())
    else:
        fields = row.serialize()
        parts = [f"{name}={fields[name]}" for name in _TEXT_FIELDS]
        if count:
            parts.append(f"competitive_count={fields['competitive_count']}")
        if result.quick_rejected:
            parts.append("quick_reject=" + ",".join(str(number) for number in result.rejected_by))
        click.echo(" ".join(parts))
    ctx.exit(EXIT_YES if result.orientable else EXIT_NO)


@cli.command("necessary")
@click.argument(
    "path", required=False, type=click.Path(exists=True, dir_okay=False, path_type=Path)
)
@_partition_option
@_steps_option
@click.pass_context
def cmd_necessary(ctx: click.Context, path: Optional[Path], partition: Optional[str], steps: str) -> None:
    """Evaluate the six necessary conditions and print the degree-two reduction."""

    config = _config("necessary", input_path=path, partition=partition, steps=steps)
    graph, label = _graph_input(config)
    report = check_necessary(graph, config.step_pair)
    click.echo(f"{label}: |V|={graph.n} |E|={graph.size} steps=({report.steps})")
    for result in report.conditions:
        click.echo(result.describe())

    trace = report.reduction
    if trace is None:
        click.echo("reduction: no degree-2 vertices")
    else:
        reduced = trace.graph
        shape = "no edges" if reduced.size == 0 else f"{reduced.size} edges"
        click.echo(
            f"reduction: deleted {list(trace.deleted)}, kept {list(trace.kept)} "
            f"({reduced.n} vertices, {shape})"
        )
    if is_sharp(graph):
        click.echo("sharp: |V| = 5 and |E| = 2|V|")
    ctx.exit(EXIT_YES if report.passed else EXIT_NO)


@cli.command("seeds")
@click.pass_context
def cmd_seeds(ctx: click.Context) -> None:
    """List the seed digraphs, their partitions and verified step pairs."""

    _config("seeds")
    for kind, (sizes, step_pairs) in SEED_CATALOG.items():
        label = PartitionSpec(sizes).label()
        verified = " ".join(f"({i},{j})" for i, j in step_pairs)
        click.echo(f"{kind.value:<4} {label:<16} {verified}")
    click.echo(f"{SeedKind.TK.value:<4} {'K_{1,...,1}':<16} (1,2)  k >= 5, generated")
    ctx.exit(EXIT_YES)


@cli.command("audit")
@click.option("--max-edges", "max_edges", type=int, default=12, show_default=True)
@click.option("--max-parts", "max_parts", type=int, default=None)
@click.option("--steps", "steps_list", multiple=True, default=DEFAULT_AUDIT_STEPS, show_default=True)
@click.option("--edge-cap", "edge_cap", type=int, default=None)
@click.option("--jobs", "jobs", type=int, default=None)
@click.option("--quick-reject", "quick_reject", is_flag=True)
@click.pass_context
def cmd_audit(
    ctx: click.Context,
    max_edges: int,
    max_parts: Optional[int],
    steps_list: Sequence[str],
    edge_cap: Optional[int],
    jobs: Optional[int],
    quick_reject: bool,
) -> None:
    """Compare the oracle with ``decide`` on every partition up to a size."""

    config = _config("audit", edge_cap=edge_cap, jobs=jobs, output_format="csv")
    step_pairs: List[StepPair] = [StepPair.parse(text).canonical() for text in steps_list]
    stream = click.get_text_stream("stdout")
    write_audit_csv([], stream, extra_columns=("decided",))
    disagreements = 0
    runs = run_audit(
        partitions_up_to(max_edges, max_parts),
        step_pairs,
        edge_cap=config.edge_cap,
        jobs=config.jobs,
        audit=not quick_reject,
    )
    for spec, steps, result in runs:
        verdict = decide(spec, steps)
        row = AuditRow.from_result(spec, steps, result, decided=verdict.outcome.value)
        write_audit_csv([row], stream, header=False, extra_columns=("decided",))
        if verdict.outcome is not Outcome.UNSUPPORTED and verdict.orientable != result.orientable:
            disagreements += 1
            log.error(
                "audit: %s steps=(%s) oracle=%s decided=%s",
                spec,
                steps,
                result.orientable,
                verdict.outcome.value,
            )
    if disagreements:
        click.echo(f"{disagreements} disagreement(s) between oracle and decide", err=True)
    ctx.exit(EXIT_NO if disagreements else EXIT_YES)


@cli.command("random")
@click.option("--vertices", "vertices", type=int, required=True)
@click.option("--p", "arc_probability", type=float, default=0.5, show_default=True)
@click.option("--seed", "rng_seed", type=int, default=None)
@click.option("--out", "out", type=click.Path(dir_okay=False, path_type=Path), default=None)
@click.pass_context
def cmd_random(
    ctx: click.Context, vertices: int, arc_probability: float, rng_seed: Optional[int], out: Optional[Path]
) -> None:
    """Write a random oriented graph as an arc list."""

    config = _config(
        "random", vertices=vertices, arc_probability=arc_probability, rng_seed=rng_seed
    )
    digraph = random_digraph(config.vertices, config.arc_probability, config.rng_seed)
    _emit(emit_digraph(digraph), out)
    ctx.exit(EXIT_YES)


def main(argv: Optional[Union[List[str], Sequence[str]]] = None) -> None:
    """Console entry point."""

    cli.main(args=list(argv) if argv is not None else None, prog_name="stepcomp")


if __name__ == "__main__":
    main(sys.argv[1:])
