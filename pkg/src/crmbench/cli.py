"""The `crm` command line tool.

A thin HTTP client. By default it mounts the service in-process against
the local registry (CRM_HOME, default `.crm/`); with --server it talks to
a remote instance instead. Exit codes: 0 success, 1 verification failure,
2 usage or input error.
"""

from __future__ import annotations

import json
import sys

import click
import httpx


def _client(ctx: click.Context) -> httpx.Client:
    server = ctx.obj.get("server")
    if server:
        return httpx.Client(base_url=server, timeout=600.0)
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        from starlette.testclient import TestClient

    from .service import create_app

    # in-process ASGI bridge: same code path as a served instance
    return TestClient(create_app(ctx.obj.get("home")),
                      raise_server_exceptions=False)


def _call(ctx, method: str, path: str, **kwargs) -> httpx.Response:
    with _client(ctx) as client:
        resp = client.request(method, path, **kwargs)
    if resp.status_code >= 400:
        try:
            detail = resp.json().get("detail", resp.text)
        except ValueError:
            detail = resp.text
        click.echo(f"error: {detail}", err=True)
        sys.exit(2)
    return resp


def _print_json(data):
    click.echo(json.dumps(data, indent=2, sort_keys=True))


@click.group()
@click.option("--home", envvar="CRM_HOME", default=None,
              help="Registry directory (default .crm/).")
@click.option("--server", default=None, metavar="URL",
              help="Talk to a running service instead of the local registry.")
@click.pass_context
def main(ctx, home, server):
    """Compression benchmark harness: register data, run models, rank them."""
    ctx.ensure_object(dict)
    ctx.obj["home"] = home
    ctx.obj["server"] = server


@main.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--kind", required=True,
              type=click.Choice(["text", "integers", "reals", "image",
                                 "frame-triple", "bitstrings"]))
@click.option("--id", "dataset_id", default=None, help="Override the dataset id.")
@click.pass_context
def register(ctx, path, kind, dataset_id):
    """Register a dataset file under its checksum."""
    resp = _call(ctx, "POST", "/datasets",
                 json={"path": path, "kind": kind, "id": dataset_id})
    entry = resp.json()
    click.echo(f"registered {entry['id']} kind={entry['kind']} "
               f"sha256={entry['checksum'][:16]}...")


@main.command()
@click.option("--dataset", required=True)
@click.option("--model", required=True)
@click.option("--seed", default=0, show_default=True)
@click.pass_context
def run(ctx, dataset, model, seed):
    """Encode, verify round-trip, and record the net score."""
    resp = _call(ctx, "POST", "/runs",
                 json={"dataset": dataset, "model": model, "seed": seed})
    rep = resp.json()
    status = "verified" if rep["verified"] else "VERIFICATION FAILED"
    click.echo(f"{rep['dataset']} / {rep['model']}: "
               f"{rep['model_bits']} + {rep['payload_bits']} = "
               f"{rep['total_bits']} bits, {status} "
               f"({rep['wall_time']:.3f}s)")
    if not rep["verified"]:
        sys.exit(1)


@main.command()
@click.argument("dataset")
@click.pass_context
def leaderboard(ctx, dataset):
    """Show verified results for a dataset, champion first."""
    rows = _call(ctx, "GET", f"/leaderboard/{dataset}").json()["rows"]
    if not rows:
        click.echo(f"{dataset}: no verified results")
        return
    for rank, r in enumerate(rows, start=1):
        click.echo(f"{rank:>2}. {r['model']:<18} {r['total_bits']:>12} bits "
                   f"(model {r['model_bits']}, payload {r['payload_bits']})")


@main.command()
@click.option("--model", required=True)
@click.option("--count", required=True, type=click.IntRange(min=0))
@click.option("--seed", required=True, type=int)
@click.pass_context
def sample(ctx, model, count, seed):
    """Generate samples by decoding random bits through a model."""
    resp = _call(ctx, "POST", "/samples",
                 json={"model": model, "count": count, "seed": seed})
    sys.stdout.write(resp.json()["text"])


@main.command()
@click.option("--format", "fmt", default="table", show_default=True,
              type=click.Choice(["table", "json"]))
@click.pass_context
def report(ctx, fmt):
    """Dump every recorded run."""
    resp = _call(ctx, "GET", "/report", params={"format": fmt})
    if fmt == "table":
        sys.stdout.write(resp.text)
    else:
        _print_json(resp.json())


@main.group()
def bounds():
    """Generalization-bound calculators."""


def _class_payload(size, ln_size):
    if (size is None) == (ln_size is None):
        click.echo("error: give exactly one of --size / --ln-size", err=True)
        sys.exit(2)
    return {"size": size, "ln_size": ln_size}


@bounds.command("required-samples")
@click.option("--epsilon", required=True, type=float)
@click.option("--delta", required=True, type=float)
@click.option("--size", type=int, default=None, help="Hypothesis class size.")
@click.option("--ln-size", type=float, default=None, help="ln of the class size.")
@click.pass_context
def bounds_required(ctx, epsilon, delta, size, ln_size):
    """Samples needed before zero empirical error implies low true error."""
    resp = _call(ctx.parent.parent, "POST", "/bounds/required-samples",
                 json={"epsilon": epsilon, "delta": delta,
                       "hypothesis_class": _class_payload(size, ln_size)})
    _print_json(resp.json())


@bounds.command("max-class-size")
@click.option("-n", "--samples", "n", required=True, type=int)
@click.option("--epsilon", required=True, type=float)
@click.option("--delta", required=True, type=float)
@click.pass_context
def bounds_max_class(ctx, n, epsilon, delta):
    """Largest permissible ln class size for a sample budget."""
    resp = _call(ctx.parent.parent, "POST", "/bounds/max-class-size",
                 json={"n": n, "epsilon": epsilon, "delta": delta})
    data = resp.json()
    data["value_bits"] = data["value"] / 0.6931471805599453
    _print_json(data)


@bounds.command("rule-class-size")
@click.option("-k", "--thresholds", required=True, type=int)
@click.option("-e", "--indicators", required=True, type=int)
@click.option("-d", "--slots", required=True, type=int)
@click.pass_context
def bounds_rule_class(ctx, thresholds, indicators, slots):
    """ln count of conjunction rules over threshold and indicator atoms."""
    resp = _call(ctx.parent.parent, "POST", "/bounds/rule-class-size",
                 json={"k": thresholds, "e": indicators, "d": slots})
    data = resp.json()
    data["value_bits"] = data["value"] / 0.6931471805599453
    _print_json(data)


@bounds.command("hidden-worm")
@click.option("--size", required=True, type=int)
@click.option("--epsilon", required=True, type=float)
@click.option("-n", "--samples", "n", required=True, type=int)
@click.option("--trials", type=int, default=None,
              help="Also run a Monte Carlo check with this many trials.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.pass_context
def bounds_hidden_worm(ctx, size, epsilon, n, trials, seed):
    """Chance a zero-error hypothesis is still badly wrong."""
    resp = _call(ctx.parent.parent, "POST", "/bounds/hidden-worm",
                 json={"hypothesis_class": {"size": size}, "epsilon": epsilon,
                       "n": n, "trials": trials, "seed": seed})
    _print_json(resp.json())


@bounds.command("compression")
@click.option("--bits-per-sample", required=True, type=float)
@click.option("-n", "--samples", "n", required=True, type=int)
@click.option("--delta", required=True, type=float)
@click.pass_context
def bounds_compression(ctx, bits_per_sample, n, delta):
    """Risk bound implied by an achieved compression rate."""
    resp = _call(ctx.parent.parent, "POST", "/bounds/compression",
                 json={"bits_per_sample": bits_per_sample, "n": n,
                       "delta": delta})
    _print_json(resp.json())


@main.group()
def info():
    """Closed-form information quantities."""


@info.command()
@click.argument("rate", type=float)
@click.pass_context
def entropy(ctx, rate):
    """Entropy of a geometric source with the given rate."""
    _print_json(_call(ctx.parent.parent, "GET", "/info/entropy",
                      params={"rate": rate}).json())


@info.command()
@click.argument("p", type=float)
@click.argument("q", type=float)
@click.pass_context
def kl(ctx, p, q):
    """Cross-entropy and KL divergence between two geometric rates."""
    _print_json(_call(ctx.parent.parent, "GET", "/info/kl",
                      params={"p": p, "q": q}).json())


if __name__ == "__main__":
    main()
