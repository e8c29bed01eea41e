"""Operator command line: build, mine, rank, serve, export, synthesize."""

from __future__ import annotations

import json
import logging
import socket
import sys
from pathlib import Path

import click

from . import graph as graphmod
from . import mining, synth
from .api import AppState, create_app, default_ui_dist, resolve_port
from .graph import GraphError, build_graph, load_snapshot, save_snapshot
from .ranking import Measure, ranked_list
from .records import build_scholars, filter_by_field, parse_corpus_file

logger = logging.getLogger(__name__)


@click.group()
@click.option(
    "--log-level",
    default="warning",
    type=click.Choice(["debug", "info", "warning", "error"]),
    show_default=True,
)
def cli(log_level: str):
    """Scholar knowledge-graph toolkit."""
    logging.basicConfig(level=getattr(logging, log_level.upper()))


@cli.command()
@click.option("--corpus", required=True, type=click.Path(path_type=Path))
@click.option("--field", "field_tag", default=None, help="Keep only records with this field tag.")
@click.option("--geo", "geo_path", default=None, type=click.Path(path_type=Path))
@click.option("--snapshot", "snapshot_path", required=True, type=click.Path(path_type=Path))
def ingest(corpus: Path, field_tag: str | None, geo_path: Path | None, snapshot_path: Path):
    """Parse a line-record corpus into a graph snapshot (no edges yet)."""
    try:
        parsed = parse_corpus_file(corpus)
    except OSError as exc:
        raise click.ClickException(f"cannot read corpus: {exc}")
    for diag in parsed.diagnostics:
        click.echo(f"corpus {corpus}: {diag}", err=True)
    records = parsed.records
    if field_tag is not None:
        records = filter_by_field(records, field_tag)

    geo_table = None
    if geo_path is not None:
        try:
            geo_table = synth.load_geo_table(geo_path.read_text(encoding="utf-8"))
        except (OSError, ValueError) as exc:
            raise click.ClickException(f"cannot read geo table: {exc}")

    g = build_graph(records, geo_table)
    dangling = g.dangling_refs()
    if dangling:
        click.echo(f"{len(dangling)} dangling reference(s) recorded", err=True)
    save_snapshot(g, snapshot_path)
    click.echo(
        f"ingested {len(records)} records, {len(g.scholars)} scholars -> {snapshot_path}"
    )


def _parse_weights(text: str) -> tuple[float, float, float, float]:
    parts = [p for p in text.split(",") if p.strip()]
    if len(parts) != 4:
        raise click.BadParameter("expected four comma-separated numbers")
    try:
        return tuple(float(p) for p in parts)  # type: ignore[return-value]
    except ValueError as exc:
        raise click.BadParameter(str(exc))


@cli.command()
@click.option("--snapshot", "snapshot_path", required=True, type=click.Path(path_type=Path))
@click.option("--out", "out_path", default=None, type=click.Path(path_type=Path))
@click.option("--kinds", default="coauthor,advisor,cites,cocited,team", show_default=True)
@click.option("--tau", default=mining.DEFAULT_ADVISOR_THRESHOLD, show_default=True)
@click.option("--team-threshold", default=float(mining.DEFAULT_TEAM_THRESHOLD), show_default=True)
@click.option("--weights", default=None, help="Advisor feature weights w1,w2,w3,w4.")
@click.option("--bias", default=None, type=float, help="Advisor classifier bias.")
@click.option(
    "--labeled-pairs",
    "pairs_path",
    default=None,
    type=click.Path(path_type=Path),
    help="Fit advisor weights from this labeled-pairs file before mining.",
)
def mine(snapshot_path, out_path, kinds, tau, team_threshold, weights, bias, pairs_path):
    """Derive relationship edges and write the mined snapshot."""
    try:
        g = load_snapshot(snapshot_path)
    except (OSError, GraphError) as exc:
        raise click.ClickException(str(exc))

    w = _parse_weights(weights) if weights else mining.DEFAULT_ADVISOR_WEIGHTS
    b = bias if bias is not None else mining.DEFAULT_ADVISOR_BIAS

    if pairs_path is not None:
        try:
            rows = synth.load_labeled_pairs(pairs_path.read_text(encoding="utf-8"))
        except (OSError, ValueError) as exc:
            raise click.ClickException(f"cannot read labeled pairs: {exc}")
        labeled = _features_for_rows(g, rows)
        if not labeled:
            raise click.ClickException("labeled-pairs file matched no coauthor pairs")
        try:
            w, b = mining.fit_advisor_weights(labeled)
        except ValueError as exc:
            raise click.ClickException(f"cannot fit advisor weights: {exc}")
        click.echo(f"fitted weights: {tuple(round(x, 4) for x in w)} bias: {b:.4f}")

    options = mining.MineOptions(
        kinds=tuple(k.strip() for k in kinds.split(",") if k.strip()),
        advisor_weights=w,
        advisor_bias=b,
        tau=tau,
        team_threshold=team_threshold,
    )
    try:
        report = mining.mine_all(g, options)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    for kind, count in report.edge_counts.items():
        click.echo(f"{kind}: {count} edge(s)")
    if report.advisor_cycles:
        click.echo(f"warning: {len(report.advisor_cycles)} advisor cycle(s) found", err=True)
    save_snapshot(g, out_path or snapshot_path)
    click.echo(f"mined snapshot -> {out_path or snapshot_path}")


def _features_for_rows(g, rows):
    """Feature vectors for labeled (advisor, advisee) ids present as coauthors."""
    records = list(g.publications.values())
    joint = mining._joint_pubs(records)
    pubs_of: dict[str, list] = {}
    for rec in records:
        for sid in set(rec.author_ids()):
            pubs_of.setdefault(sid, []).append(rec)
    labeled = []
    skipped = 0
    for advisor_id, advisee_id, label in rows:
        key = (min(advisor_id, advisee_id), max(advisor_id, advisee_id))
        if advisor_id not in g.scholars or advisee_id not in g.scholars or key not in joint:
            skipped += 1
            continue
        feats, _, _ = mining.advisor_features(
            g.scholars[advisee_id], g.scholars[advisor_id], pubs_of[advisee_id], joint[key]
        )
        labeled.append((feats, label))
    if skipped:
        logger.info("skipped %d labeled pairs without coauthorship in corpus", skipped)
    return labeled


@cli.command()
@click.option("--snapshot", "snapshot_path", required=True, type=click.Path(path_type=Path))
@click.option("--measure", "measure_name", default=None,
              type=click.Choice([m.value for m in Measure]))
@click.option("--limit", default=20, show_default=True)
def rank(snapshot_path, measure_name, limit):
    """Print descending ranking lists."""
    try:
        g = load_snapshot(snapshot_path)
    except (OSError, GraphError) as exc:
        raise click.ClickException(str(exc))
    measures = [Measure(measure_name)] if measure_name else list(Measure)
    for m in measures:
        ranking = ranked_list(m, g)
        click.echo(f"# {m.value}")
        for sid, value in ranking.entries[:limit]:
            shown = int(value) if float(value).is_integer() else round(value, 6)
            click.echo(f"{sid}\t{g.scholars[sid].name}\t{shown}")


@cli.command()
@click.option("--snapshot", "snapshot_path", required=True, type=click.Path(path_type=Path))
@click.option("--port", default=None, type=int, help="Defaults to $WOS_PORT or 8787.")
@click.option("--host", default="127.0.0.1", show_default=True)
def serve(snapshot_path, port, host):
    """Serve the JSON API (and /ui/ when frontend assets exist)."""
    import uvicorn

    if not Path(snapshot_path).is_file():
        raise click.ClickException(f"snapshot not found: {snapshot_path}")
    try:
        g = load_snapshot(snapshot_path)
    except GraphError as exc:
        raise click.ClickException(str(exc))
    try:
        bound_port = resolve_port(port)
    except ValueError as exc:
        raise click.ClickException(str(exc))

    # fail fast with a readable message instead of a uvicorn traceback
    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    try:
        probe.bind((host, bound_port))
        bound_port = probe.getsockname()[1]
    except OSError as exc:
        raise click.ClickException(f"cannot bind {host}:{bound_port}: {exc}")
    finally:
        probe.close()

    app = create_app(AppState(g), ui_dist=default_ui_dist())
    click.echo(f"serving snapshot {snapshot_path} on http://{host}:{bound_port}")
    uvicorn.run(app, host=host, port=bound_port, log_level="warning")


@cli.command()
@click.option("--snapshot", "snapshot_path", required=True, type=click.Path(path_type=Path))
@click.option("--out", "out_path", default=None, type=click.Path(path_type=Path))
def export(snapshot_path, out_path):
    """Dump the snapshot as the node-link text format."""
    try:
        g = load_snapshot(snapshot_path)
    except (OSError, GraphError) as exc:
        raise click.ClickException(str(exc))
    text = graphmod.to_nodelink(g)
    if out_path is None:
        click.echo(text, nl=False)
    else:
        Path(out_path).write_text(text, encoding="utf-8")
        click.echo(f"exported -> {out_path}")


@cli.command("import")
@click.option("--nodelink", "nodelink_path", required=True, type=click.Path(path_type=Path))
@click.option("--snapshot", "snapshot_path", required=True, type=click.Path(path_type=Path))
def import_cmd(nodelink_path, snapshot_path):
    """Rebuild a snapshot from a node-link dump."""
    try:
        g = graphmod.from_nodelink(Path(nodelink_path).read_text(encoding="utf-8"))
    except (OSError, GraphError) as exc:
        raise click.ClickException(str(exc))
    save_snapshot(g, snapshot_path)
    click.echo(f"imported {nodelink_path} -> {snapshot_path}")


@cli.command("synth")
@click.option("--scholars", default=100, show_default=True)
@click.option("--pubs", default=400, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--out", "out_dir", required=True, type=click.Path(path_type=Path))
def synth_cmd(scholars, pubs, seed, out_dir):
    """Generate a seeded corpus with planted advisor pairs and a manifest."""
    try:
        result = synth.generate(synth.SynthConfig(scholars=scholars, pubs=pubs, seed=seed))
    except ValueError as exc:
        raise click.ClickException(str(exc))
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "corpus.jsonl").write_text(result.corpus_jsonl, encoding="utf-8")
    (out_dir / "advisor_pairs.tsv").write_text(result.labeled_pairs_tsv, encoding="utf-8")
    (out_dir / "geo.tsv").write_text(result.geo_tsv, encoding="utf-8")
    click.echo(json.dumps(result.counts, sort_keys=True))


def run(argv: list[str] | None = None) -> int:
    """Invoke the CLI programmatically; returns the process exit status."""
    try:
        cli.main(args=argv, standalone_mode=False)
        return 0
    except click.UsageError as exc:
        exc.show()
        return 2
    except click.ClickException as exc:
        exc.show()
        return 1
    except click.exceptions.Exit as exc:  # --help and friends
        return exc.exit_code
    except click.Abort:
        return 130


def main() -> None:  # console-script entry point
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
