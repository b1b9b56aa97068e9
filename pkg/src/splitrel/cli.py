"""Command-line front end.

Thin client over the service layer: each subcommand builds the same
request model the HTTP API takes, executes it (in-process by default,
or against a running server with --server), and renders the response.

Exit codes: 0 success (and grid matches for verify), 1 verify found a
mismatch against the known classification, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from pydantic import BaseModel, ValidationError

from .errors import SplitRelError
from .graphio import loads_graph
from .service import handlers
from .service import schemas as api

_ENDPOINTS = {
    api.ComputeRequest: ("/compute", handlers.handle_compute, api.ComputeResponse),
    api.CompareRequest: ("/compare", handlers.handle_compare, api.CompareResponse),
    api.FamilyRequest: ("/family", handlers.handle_family, api.FamilyResponse),
    api.EnumerateRequest: ("/enumerate", handlers.handle_enumerate, api.EnumerateResponse),
    api.OptimalRequest: ("/optimal", handlers.handle_optimal, api.OptimalResponse),
    api.VerifyRequest: ("/verify", handlers.handle_verify, api.VerifyResponse),
    api.PlotRequest: ("/plot", handlers.handle_plot, api.PlotResponse),
}


class UsageError(Exception):
    pass


def _execute(request: BaseModel, server: Optional[str]) -> BaseModel:
    path, handler, response_model = _ENDPOINTS[type(request)]
    if server is None:
        return handler(request)
    import httpx

    reply = httpx.post(
        server.rstrip("/") + path, json=request.model_dump(), timeout=None
    )
    if reply.status_code != 200:
        detail = reply.json().get("detail", reply.text)
        raise SplitRelError(f"server error ({reply.status_code}): {detail}")
    return response_model.model_validate(reply.json())


def _read_graph_model(path: str) -> api.GraphModel:
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read graph file {path!r}: {exc}") from exc
    G, tp = loads_graph(text)  # validates before shipping anywhere
    obj = json.loads(text)
    return api.GraphModel(
        n=G.n,
        edges=[tuple(e) for e in obj["edges"]],
        s=obj.get("s"),
        t=obj.get("t"),
    )


def _emit(args, response: BaseModel, text: str) -> None:
    if args.format == "structured":
        print(response.model_dump_json())
    else:
        print(text, end="" if text.endswith("\n") else "\n")


def _terminals(values) -> tuple[Optional[int], Optional[int]]:
    if values is None:
        return None, None
    return values[0], values[1]


# -- subcommand implementations ----------------------------------------------


def _cmd_compute(args) -> int:
    s, t = _terminals(args.terminals)
    req = api.ComputeRequest(
        graph=_read_graph_model(args.graph),
        measure=args.measure,
        engine=args.engine,
        s=s,
        t=t,
        k=args.k,
        max_slots=args.max_slots,
    )
    resp = _execute(req, args.server)
    lines = []
    if resp.note:
        lines.append(f"note: {resp.note}")
    if args.counts_only:
        lines.append(f"N: {_trim_counts(resp.nvector)}")
    else:
        lines.append(resp.polynomial)
        if resp.measure == "split":
            lines.append(f"N: {_trim_counts(resp.nvector)}")
            lines.append(f"c={resp.cutset_size}")
    if resp.engines_agree is not None:
        lines.append("engines agree" if resp.engines_agree else "ENGINES DISAGREE")
    _emit(args, resp, "\n".join(lines))
    if resp.engines_agree is False:
        return 1
    return 0


def _trim_counts(counts) -> str:
    out = list(counts or [])
    while out and out[-1] == 0:
        out.pop()
    return "[" + ",".join(str(c) for c in out) + "]"


def _cmd_compare(args) -> int:
    s1, t1 = _terminals(args.first_terminals)
    s2, t2 = _terminals(args.second_terminals)
    req = api.CompareRequest(
        first=api.CompareSide(graph=_read_graph_model(args.first), s=s1, t=t1),
        second=api.CompareSide(graph=_read_graph_model(args.second), s=s2, t=t2),
    )
    resp = _execute(req, args.server)
    label = resp.relation.upper()
    parts = [label]
    if resp.first_wins_at:
        parts.append(f"p1={resp.first_wins_at}")
    if resp.second_wins_at:
        parts.append(f"p2={resp.second_wins_at}")
    _emit(args, resp, " ".join(parts))
    return 0


def _cmd_family(args) -> int:
    req = api.FamilyRequest(spec=args.spec)
    resp = _execute(req, args.server)
    graph_json = json.dumps(
        {
            k: v
            for k, v in (
                ("n", resp.graph.n),
                ("edges", [list(e) for e in resp.graph.edges]),
                ("s", resp.graph.s),
                ("t", resp.graph.t),
            )
            if v is not None
        },
        separators=(",", ":"),
    )
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(graph_json + "\n")
    lines = [graph_json]
    if resp.stated_counts:
        lines.append(" ".join(f"{k}={v}" for k, v in sorted(resp.stated_counts.items())))
    if resp.closed_form:
        lines.append(f"closed form: {resp.closed_form}")
    _emit(args, resp, "\n".join(lines))
    return 0


def _cmd_enumerate(args) -> int:
    req = api.EnumerateRequest(n=args.n, m=args.m, mode=args.mode)
    resp = _execute(req, args.server)
    if args.format == "structured":
        print(resp.model_dump_json())
        return 0
    for g in resp.graphs:
        print(json.dumps({"n": g.n, "edges": [list(e) for e in g.edges]}, separators=(",", ":")))
    return 0


def _cmd_optimal(args) -> int:
    req = api.OptimalRequest(
        n=args.n,
        m=args.m,
        mode=args.mode,
        orbit_reduction=not args.no_orbit_reduction,
        workers=args.workers,
    )
    resp = _execute(req, args.server)
    lines = [
        f"(n={resp.n}, m={resp.m}, mode={resp.mode}): "
        f"{'optimal graph exists' if resp.exists else 'no optimal graph'}",
        f"classes={resp.class_count} distinct polynomials={resp.polynomial_count}",
    ]
    if resp.witness:
        lines.append(f"witness key={resp.witness.key}")
        lines.append(
            json.dumps(
                {
                    "n": resp.witness.graph.n,
                    "edges": [list(e) for e in resp.witness.graph.edges],
                    "s": resp.witness.graph.s,
                    "t": resp.witness.graph.t,
                },
                separators=(",", ":"),
            )
        )
        lines.append(f"polynomial: {resp.witness.polynomial}")
    for r in resp.refutations:
        lines.append(
            f"refuted {r.candidate_key[:16]}… by {r.beater_key[:16]}… at p*={r.point}"
        )
    _emit(args, resp, "\n".join(lines))
    return 0


def _cmd_verify(args) -> int:
    req = api.VerifyRequest(
        mode=args.mode,
        n_min=args.n_min,
        n_max=args.n_max,
        m_min=args.m_min,
        m_max=args.m_max,
        orbit_reduction=not args.no_orbit_reduction,
        workers=args.workers,
    )
    resp = _execute(req, args.server)
    lines = []
    for row in resp.rows:
        expected = "?" if row.expected is None else ("yes" if row.expected else "no")
        got = "yes" if row.exists else "no"
        status = "OK" if row.agrees else "MISMATCH"
        lines.append(
            f"n={row.n} m={row.m} computed={got} expected={expected} {status}"
        )
    lines.append("all rows match" if resp.all_match else "MISMATCHES FOUND")
    _emit(args, resp, "\n".join(lines))
    return 0 if resp.all_match else 1


def _cmd_plot(args) -> int:
    s, t = _terminals(args.terminals)
    req = api.PlotRequest(
        graph=_read_graph_model(args.graph), s=s, t=t, samples=args.samples
    )
    resp = _execute(req, args.server)
    if args.format == "structured":
        print(resp.model_dump_json())
    else:
        sys.stdout.write(resp.csv)
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run("splitrel.service.app:app", host=args.host, port=args.port)
    return 0


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="splitrel",
        description="Exact split-reliability computations on multigraphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=("text", "structured"), default="text")
        p.add_argument("--server", help="base URL of a running service; default runs in-process")

    p = sub.add_parser("compute", help="reliability polynomial of one graph")
    p.add_argument("--graph", required=True, help="graph file (JSON object), or - for stdin")
    p.add_argument("--terminals", nargs=2, type=int, metavar=("S", "T"))
    p.add_argument("--measure", choices=("split", "allterm", "twoterm", "kterm"), default="split")
    p.add_argument("--engine", choices=("oracle", "factoring", "both"), default="factoring")
    p.add_argument("--k", nargs="+", type=int, help="terminal set for kterm")
    p.add_argument("--max-slots", dest="max_slots", type=int, default=22)
    common(p)
    p.set_defaults(func=_cmd_compute, counts_only=False)

    p = sub.add_parser("counts", help="state counts of the split measure")
    p.add_argument("--graph", required=True)
    p.add_argument("--terminals", nargs=2, type=int, metavar=("S", "T"))
    p.add_argument("--engine", choices=("oracle", "factoring", "both"), default="factoring")
    p.add_argument("--max-slots", dest="max_slots", type=int, default=22)
    common(p)
    p.set_defaults(func=_cmd_compute, counts_only=True, measure="split", k=None)

    p = sub.add_parser("compare", help="dominance of two split reliabilities on (0,1)")
    p.add_argument("--first", required=True, help="first graph file")
    p.add_argument("--first-terminals", nargs=2, type=int, metavar=("S", "T"))
    p.add_argument("--second", required=True, help="second graph file")
    p.add_argument("--second-terminals", nargs=2, type=int, metavar=("S", "T"))
    common(p)
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("family", help="construct a named graph family")
    p.add_argument("--spec", required=True, help="e.g. family:Gnm:4,4")
    p.add_argument("--out", help="also write the graph file here")
    common(p)
    p.set_defaults(func=_cmd_family)

    p = sub.add_parser("enumerate", help="connected (n,m) classes up to isomorphism")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-m", type=int, required=True)
    p.add_argument("--mode", choices=("simple", "multi"), default="multi")
    common(p)
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("optimal", help="decide optimal-(n,m)-graph existence")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-m", type=int, required=True)
    p.add_argument("--mode", choices=("simple", "multi"), default="multi")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--no-orbit-reduction", action="store_true",
                   help="compare all terminal pairs instead of orbit representatives")
    common(p)
    p.set_defaults(func=_cmd_optimal)

    p = sub.add_parser("verify", help="existence grid against the known classification")
    p.add_argument("--mode", choices=("simple", "multi"), default="multi")
    p.add_argument("--n-min", dest="n_min", type=int, default=2)
    p.add_argument("--n-max", dest="n_max", type=int, default=6)
    p.add_argument("--m-min", dest="m_min", type=int)
    p.add_argument("--m-max", dest="m_max", type=int)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--no-orbit-reduction", action="store_true")
    common(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("plot", help="CSV curve data: p, split, allterm")
    p.add_argument("--graph", required=True)
    p.add_argument("--terminals", nargs=2, type=int, metavar=("S", "T"))
    p.add_argument("--samples", type=int, default=101)
    common(p)
    p.set_defaults(func=_cmd_plot)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SplitRelError, UsageError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
