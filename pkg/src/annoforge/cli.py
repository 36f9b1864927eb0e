"""Command line entry points: the annotation service and the metrics tool."""

from __future__ import annotations

import json
import os
import sys
from pathlib import Path

import click

from .errors import AnnoforgeError
from .metrics import LabeledPartition, purity, rand_index


@click.group()
def main():
    """annoforge: clustering and tree annotation for crowd workers."""


@main.command()
@click.option("--port", default=8000, show_default=True, type=int)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--data", default="annoforge-data", show_default=True,
              help="Persistence directory (ANNOFORGE_DATA overrides).")
@click.option("--config", "config_path", default=None,
              type=click.Path(exists=True, dir_okay=False),
              help="JSON config with layout params, palette, canvas.")
@click.option("--ui", "ui_path", default=None,
              type=click.Path(exists=True, file_okay=False),
              help="Directory with a built web UI to serve at /.")
def serve(port: int, host: str, data: str, config_path, ui_path):
    """Run the annotation HTTP service."""
    import uvicorn

    from .server import ServerConfig, TaskStore, create_app

    data_dir = os.environ.get("ANNOFORGE_DATA") or data
    config = (ServerConfig.from_file(config_path)
              if config_path else ServerConfig())
    store = TaskStore(Path(data_dir), config)
    app = create_app(store)
    if ui_path:
        from fastapi.staticfiles import StaticFiles
        app.mount("/", StaticFiles(directory=ui_path, html=True), name="ui")
    click.echo(f"annoforge serving on {host}:{port}, data in {data_dir}")
    uvicorn.run(app, host=host, port=port, log_level="warning")


@main.command(name="metrics")
@click.option("--system", "system_path", required=True,
              type=click.Path(exists=True, dir_okay=False),
              help="Cluster document produced by the toolkit (JSON).")
@click.option("--gold", "gold_path", required=True,
              type=click.Path(exists=True, dir_okay=False),
              help="JSON object mapping mention id to entity label.")
@click.option("--rand", "with_rand", is_flag=True,
              help="Also print the Rand index.")
def metrics_cmd(system_path: str, gold_path: str, with_rand: bool):
    """Score a cluster annotation against gold entity labels."""
    try:
        system_doc = json.loads(Path(system_path).read_text(encoding="utf-8"))
        gold_raw = json.loads(Path(gold_path).read_text(encoding="utf-8"))
        if not isinstance(gold_raw, dict):
            raise AnnoforgeError("gold file must map mention ids to labels")
        gold = {int(k): v for k, v in gold_raw.items()}
        partition = LabeledPartition.from_documents(system_doc, gold)
        click.echo(f"purity {purity(partition):.4f}")
        if with_rand:
            click.echo(f"rand_index {rand_index(partition):.4f}")
    except (AnnoforgeError, json.JSONDecodeError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)


if __name__ == "__main__":
    main()
