"""Command-line front end.

Every subcommand is a thin client over the HTTP service: by default requests
go to the app in-process, `--server URL` points them at a running instance
instead.  Reports are deterministic; `--json` emits the canonical machine
report (sorted keys, rationals as {"num","den"} strings, no floats).

Exit codes: 0 consistent, 1 input/compute error, 2 red alarm.
"""

from __future__ import annotations

import json
import os
import sys
from pathlib import Path

import click

BOUND_ENV = "CITOR_BOUND"


class Client:
    """POSTs either to the in-process app or to a remote server."""

    def __init__(self, server: str | None):
        if server:
            import httpx

            self._client = httpx.Client(base_url=server, timeout=600.0)
        else:
            from fastapi.testclient import TestClient

            from .service import app

            self._client = TestClient(app)

    def post(self, path: str, payload: dict) -> tuple[int, dict]:
        r = self._client.post(path, json=payload)
        try:
            body = r.json()
        except ValueError:
            body = {"detail": r.text}
        return r.status_code, body


def canonical(report) -> str:
    return json.dumps(report, sort_keys=True, indent=2)


def _load(path: str, what: str) -> dict:
    p = Path(path)
    if not p.is_file():
        raise click.ClickException(f"{what} file not found: {path}")
    try:
        return json.loads(p.read_text())
    except json.JSONDecodeError as e:
        raise click.ClickException(f"{what} file {path} is not valid JSON: {e}")


def _payload(ring, m, n=None, bound=None, **extra) -> dict:
    payload = {"ring": _load(ring, "ring")}
    if m is not None:
        payload["M"] = _load(m, "module")
    if n is not None:
        payload["N"] = _load(n, "module")
    if bound is None and os.environ.get(BOUND_ENV):
        try:
            bound = int(os.environ[BOUND_ENV])
        except ValueError:
            raise click.ClickException(f"{BOUND_ENV} must be an integer")
    if bound is not None:
        payload["bound"] = bound
    payload.update({k: v for k, v in extra.items() if v is not None})
    return payload


def _emit(ctx, report: dict, table_lines: list[str]):
    if ctx.obj["json"]:
        click.echo(canonical(report))
    else:
        for line in table_lines:
            click.echo(line)


def _post_or_die(ctx, path: str, payload: dict) -> dict:
    status, body = ctx.obj["client"].post(path, payload)
    if status != 200:
        detail = body.get("detail", body)
        click.echo(f"error: {detail}", err=True)
        sys.exit(1)
    return body


def _fmt(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, dict) and set(v) == {"num", "den"}:
        return v["num"] if v["den"] == "1" else f"{v['num']}/{v['den']}"
    return str(v)


ring_opt = click.option("--ring", required=True, help="ring JSON file")
m_opt = click.option("--M", "m", required=True, help="module JSON file")
n_opt = click.option("--N", "n", required=True, help="second module JSON file")
bound_opt = click.option(
    "--bound", type=int, default=None, help=f"homological bound (default: ${BOUND_ENV} or ring-derived)"
)


@click.group()
@click.option("--server", default=None, help="URL of a running service (default: in-process)")
@click.option("--json", "as_json", is_flag=True, help="emit the canonical JSON report")
@click.pass_context
def main(ctx, server, as_json):
    """Exact homological invariants over graded complete intersections."""
    ctx.ensure_object(dict)
    ctx.obj["client"] = Client(server)
    ctx.obj["json"] = as_json


@main.command()
@ring_opt
@m_opt
@bound_opt
@click.pass_context
def betti(ctx, ring, m, bound):
    """Betti numbers of a minimal free resolution."""
    rep = _post_or_die(ctx, "/betti", _payload(ring, m, bound=bound))
    lines = ["i  b_i  graded"]
    for i, (b, g) in enumerate(zip(rep["betti"], rep["graded"])):
        lines.append(f"{i}  {b}  {g}")
    lines.append(f"pd = {rep['pd']}")
    _emit(ctx, rep, lines)


@main.command()
@ring_opt
@m_opt
@n_opt
@bound_opt
@click.pass_context
def tor(ctx, ring, m, n, bound):
    """Lengths and dimensions of Tor_i(M, N)."""
    rep = _post_or_die(ctx, "/tor", _payload(ring, m, n, bound=bound))
    lines = ["i  length  dim"]
    for i, (l, d) in enumerate(zip(rep["lengths"], rep["dims"])):
        lines.append(f"{i}  {_fmt(l)}  {_fmt(d)}")
    lines.append(f"finite length from: {_fmt(rep['finite_length_from'])}")
    lines.append(f"periodic: {_fmt(rep['periodic'])}")
    _emit(ctx, rep, lines)


@main.command()
@ring_opt
@m_opt
@n_opt
@bound_opt
@click.pass_context
def ext(ctx, ring, m, n, bound):
    """Lengths and dimensions of Ext^i(M, N)."""
    rep = _post_or_die(ctx, "/ext", _payload(ring, m, n, bound=bound))
    lines = ["i  length  dim  zero"]
    for row in rep["ext"]:
        lines.append(f"{row['i']}  {_fmt(row['length'])}  {_fmt(row['dim'])}  {row['zero']}")
    _emit(ctx, rep, lines)


@main.command()
@ring_opt
@m_opt
@click.pass_context
def depth(ctx, ring, m):
    """depth, dim, pd, and the MCM flag."""
    rep = _post_or_die(ctx, "/depth", _payload(ring, m))
    lines = [f"{k} = {_fmt(rep[k])}" for k in ("depth", "dim", "ring_dim", "pd", "mcm")]
    _emit(ctx, rep, lines)


@main.command()
@ring_opt
@m_opt
@click.option("--n", type=int, default=1, help="which Serre condition S_n")
@click.pass_context
def serre(ctx, ring, m, n):
    """Serre condition (S_n) with Ext evidence."""
    rep = _post_or_die(ctx, "/serre", _payload(ring, m, n=n))
    lines = [f"(S_{rep['n']}) holds: {rep['holds']}"]
    for e in rep["evidence"]:
        lines.append(f"  Ext^{e['i']}(M,R): dim {_fmt(e['ext_dim'])} <= {e['bound']}: {e['ok']}")
    _emit(ctx, rep, lines)


@main.command()
@ring_opt
@m_opt
@n_opt
@bound_opt
@click.pass_context
def theta(ctx, ring, m, n, bound):
    """Hypersurface theta pairing with its periodicity certificate."""
    rep = _post_or_die(ctx, "/theta", _payload(ring, m, n, bound=bound))
    lines = [
        f"theta = {_fmt(rep.get('value'))} ({rep['status']})",
        f"window = {rep.get('window')}",
        f"tail lengths = {rep.get('lengths')}",
    ]
    _emit(ctx, rep, lines)


@main.command()
@ring_opt
@m_opt
@n_opt
@bound_opt
@click.option("--e", type=int, default=None, help="order of the eta pairing (default: codim)")
@click.pass_context
def eta(ctx, ring, m, n, bound, e):
    """eta_e pairing via exact polynomial fit of alternating partial sums."""
    rep = _post_or_die(ctx, "/eta", _payload(ring, m, n, bound=bound, e=e))
    lines = [f"eta_{rep['e']} = {_fmt(rep.get('value'))} ({rep['status']})"]
    if rep["status"] == "ok":
        lines.append(f"window = {rep['window']}, degrees = ({rep['even_degree']}, {rep['odd_degree']})")
    _emit(ctx, rep, lines)


@main.command()
@ring_opt
@m_opt
@click.pass_context
def pushforward(ctx, ring, m):
    """Embedding M -> R^nu and its cokernel M1, with certificates."""
    rep = _post_or_die(ctx, "/pushforward", _payload(ring, m))
    lines = [
        f"nu = {rep['nu']}",
        f"embedding columns = {rep['embedding']['columns']}",
        f"M1: gens {rep['M1']['gens']}, relations {rep['M1']['relations']}",
        f"certificate = {rep['certificate']}",
    ]
    _emit(ctx, rep, lines)


@main.command()
@ring_opt
@m_opt
@click.pass_context
def quasilift(ctx, ring, m):
    """Quasi-lifting of M one step down the hypersurface tower."""
    rep = _post_or_die(ctx, "/quasilift", _payload(ring, m))
    lines = [
        f"nu = {rep['nu']}, dropped relation = {rep['dropped_relation']}",
        f"E (over the lower stage): gens {rep['E']['gens']}, relations {rep['E']['relations']}",
        f"M1: gens {rep['M1']['gens']}, relations {rep['M1']['relations']}",
    ]
    _emit(ctx, rep, lines)


@main.command()
@click.argument("theorem")
@ring_opt
@m_opt
@click.option("--N", "n", default=None, help="second module JSON file (default: M)")
@bound_opt
@click.option("--c", type=int, default=None, help="number of consecutive vanishing Tors")
@click.option("--e", type=int, default=None, help="eta order / Serre index parameter")
@click.option("--n-power", type=int, default=None, help="tensor power for the powers checker")
@click.pass_context
def check(ctx, theorem, ring, m, n, bound, c, e, n_power):
    """Run a theorem checker; exit 2 on a red alarm (should never happen)."""
    payload = _payload(ring, m, n, bound=bound, theorem=theorem, c=c, e=e)
    if n_power is not None:
        payload["n"] = n_power
    rep = _post_or_die(ctx, "/check", payload)
    lines = [f"theorem: {rep['theorem']}"]
    for h in rep["hypotheses"]:
        lines.append(f"  [{h['status']:>6}] {h['name']}")
    lines.append(f"conclusion: {rep['conclusion']['status']}")
    lines.append(f"red alarm: {rep['red_alarm']}")
    _emit(ctx, rep, lines)
    sys.exit(2 if rep["red_alarm"] else 0)


@main.group()
def corpus():
    """Bundled corpus of rings, modules, and expected-output cases."""


@corpus.command("list")
@click.pass_context
def corpus_list(ctx):
    """List bundled corpus cases."""
    from .corpus import list_cases

    rep = [{"id": c.id, "tags": c.tags, "operations": len(c.operations)} for c in list_cases()]
    _emit(ctx, {"cases": rep}, [f"{c['id']}  tags={','.join(c['tags'])}  ops={c['operations']}" for c in rep])


@corpus.command("run")
@click.option("--tags", default=None, help="comma-separated tag filter, e.g. fast or slow")
@click.option("--jobs", type=int, default=4, help="concurrent cases")
@click.pass_context
def corpus_run(ctx, tags, jobs):
    """Run corpus cases against their expected fragments."""
    from .corpus import run_corpus

    tag_list = [t.strip() for t in tags.split(",")] if tags else None
    results = run_corpus(ctx.obj["client"].post, tags=tag_list, jobs=jobs)
    if not results:
        click.echo("error: no corpus cases matched", err=True)
        sys.exit(1)
    report = []
    lines = []
    failed = red = False
    for r in results:
        entry = {
            "id": r.case.id,
            "passed": r.passed,
            "red_alarm": r.red_alarm,
            "failures": [d for o in r.ops for d in o.diff],
        }
        report.append(entry)
        mark = "PASS" if r.passed else "FAIL"
        lines.append(f"{mark}  {r.case.id}" + ("  RED ALARM" if r.red_alarm else ""))
        for d in entry["failures"]:
            lines.append(f"      {d}")
        failed = failed or not r.passed
        red = red or r.red_alarm
    summary = {"cases": report, "passed": not failed, "red_alarm": red}
    lines.append(f"{sum(e['passed'] for e in report)}/{len(report)} cases passed")
    _emit(ctx, summary, lines)
    sys.exit(2 if red else (1 if failed else 0))


@corpus.command("random")
@click.option("--ring", default=None, help="ring JSON file (default: every corpus ring)")
@click.option("--seed", type=int, default=0, help="RNG seed (reproducible)")
@click.option("--count", type=int, default=20, help="random module pairs per ring")
@bound_opt
@click.pass_context
def corpus_random(ctx, ring, seed, count, bound):
    """Seeded random-module sweep through every theorem checker."""
    from .corpus import data_root, load_json, ring_fixtures

    if ring:
        rings = {ring: _load(ring, "ring")}
    else:
        rings = {rel: load_json(rel) for rel in ring_fixtures()}
    summary = {}
    lines = []
    red = False
    for name, spec in sorted(rings.items()):
        payload = {"ring": spec, "seed": seed, "count": count}
        if bound is not None:
            payload["bound"] = bound
        rep = _post_or_die(ctx, "/randomcheck", payload)
        summary[name] = rep
        red = red or bool(rep["red_alarms"])
        lines.append(
            f"{name}: {count} pairs, conclusions {rep['conclusion_counts']}, "
            f"red alarms {len(rep['red_alarms'])}"
        )
    _emit(ctx, summary, lines)
    sys.exit(2 if red else 0)


@main.command()
@click.option("--host", default="127.0.0.1")
@click.option("--port", type=int, default=8000)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    from .service import app

    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
