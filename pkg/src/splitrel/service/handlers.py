"""Transport-free handlers mapping request models to response models.

Both the HTTP endpoints and the CLI call these; domain errors propagate
as SplitRelError subclasses for the caller to translate.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from .. import families as fam
from ..enumeration import enumerate_graphs
from ..errors import TerminalError
from ..graphio import format_fixed, graph_to_obj
from ..graphs import Multigraph, TerminalPair, build, is_connected
from ..optimality import find_optimal, dominates, verify_existence_grid
from ..polynomials import to_text
from ..reliability import (
    EngineCache,
    all_terminal_reliability,
    k_terminal_rel,
    split_reliability,
)
from . import schemas as api


def graph_from_model(model: api.GraphModel) -> tuple[Multigraph, Optional[TerminalPair]]:
    G = build(model.n, model.edges)
    terminals = None
    if model.s is not None or model.t is not None:
        if model.s is None or model.t is None:
            raise TerminalError("terminals need both s and t")
        terminals = TerminalPair(model.s, model.t)
    return G, terminals


def graph_to_model(G: Multigraph, terminals: Optional[TerminalPair] = None) -> api.GraphModel:
    obj = graph_to_obj(G, terminals)
    return api.GraphModel(
        n=obj["n"],
        edges=[tuple(e) for e in obj["edges"]],
        s=obj.get("s"),
        t=obj.get("t"),
    )


def _resolve_terminals(
    embedded: Optional[TerminalPair], s: Optional[int], t: Optional[int]
) -> Optional[TerminalPair]:
    if s is not None or t is not None:
        if s is None or t is None:
            raise TerminalError("terminals need both s and t")
        return TerminalPair(s, t)
    return embedded


def _fraction_str(x: Optional[Fraction]) -> Optional[str]:
    if x is None:
        return None
    return f"{x.numerator}/{x.denominator}"


def handle_compute(req: api.ComputeRequest) -> api.ComputeResponse:
    G, embedded = graph_from_model(req.graph)
    tp = _resolve_terminals(embedded, req.s, req.t)

    if req.measure == "allterm":
        poly, agree = all_terminal_reliability(G, engine=req.engine, max_slots=req.max_slots)
        return api.ComputeResponse(
            measure="allterm", n=G.n, m=G.m, polynomial=to_text(poly), engines_agree=agree
        )

    if req.measure in ("twoterm", "kterm"):
        if req.measure == "twoterm":
            if tp is None:
                raise TerminalError("twoterm needs terminals s and t")
            K = [tp.s, tp.t]
        else:
            if not req.k:
                raise TerminalError("kterm needs a nonempty terminal set k")
            K = req.k
        poly = k_terminal_rel(G, K, max_slots=req.max_slots)
        return api.ComputeResponse(
            measure=req.measure,
            n=G.n,
            m=G.m,
            polynomial=to_text(poly),
            note="subset-enumeration oracle",
        )

    if tp is None:
        raise TerminalError("split needs terminals s and t")
    note = None
    if not is_connected(G):
        note = (
            "disconnected input: with exactly two components separating the "
            "terminals the split reliability is the product of the two "
            "components' all-terminal reliabilities, otherwise 0"
        )
    result, agree = split_reliability(G, tp, engine=req.engine, max_slots=req.max_slots)
    return api.ComputeResponse(
        measure="split",
        n=G.n,
        m=G.m,
        polynomial=to_text(result.polynomial),
        nvector=list(result.nvector.counts),
        nvector_start=G.n - 2,
        cutset_size=result.cutset_size,
        engines_agree=agree,
        note=note,
    )


def handle_compare(req: api.CompareRequest) -> api.CompareResponse:
    cache = EngineCache()
    polys = []
    for side in (req.first, req.second):
        G, embedded = graph_from_model(side.graph)
        tp = _resolve_terminals(embedded, side.s, side.t)
        if tp is None:
            raise TerminalError("compare needs terminals on both sides")
        result, _ = split_reliability(G, tp, engine="factoring", cache=cache)
        polys.append(result.polynomial)
    verdict = dominates(polys[0], polys[1])
    return api.CompareResponse(
        relation=verdict.relation,
        first_wins_at=_fraction_str(verdict.first_wins_at),
        second_wins_at=_fraction_str(verdict.second_wins_at),
        first_polynomial=to_text(polys[0]),
        second_polynomial=to_text(polys[1]),
    )


def handle_family(req: api.FamilyRequest) -> api.FamilyResponse:
    spec = fam.parse_spec(req.spec)
    graph, terminals = fam.construct(spec)
    try:
        counts = fam.expected_ncounts(spec)
    except fam.FamilyParameterError:
        counts = {}
    try:
        closed = to_text(fam.closed_form_split(spec))
    except fam.FamilyParameterError:
        closed = None
    return api.FamilyResponse(
        tag=spec.tag,
        params=list(spec.params),
        graph=graph_to_model(graph, terminals),
        stated_counts={f"N_{i}": c for i, c in sorted(counts.items())},
        closed_form=closed,
    )


def handle_enumerate(req: api.EnumerateRequest) -> api.EnumerateResponse:
    graphs = [graph_to_model(g) for g in enumerate_graphs(req.n, req.m, req.mode)]
    return api.EnumerateResponse(count=len(graphs), graphs=graphs)


def handle_optimal(req: api.OptimalRequest) -> api.OptimalResponse:
    report = find_optimal(
        req.n,
        req.m,
        req.mode,
        use_orbits=req.orbit_reduction,
        workers=req.workers,
    )
    witness = None
    if report.witness is not None:
        witness = api.WitnessModel(
            key=report.witness.key.hex(),
            graph=graph_to_model(report.witness.graph, report.witness.terminals),
            polynomial=to_text(report.witness.polynomial),
        )
    refutations = [
        api.RefutationModel(
            candidate_key=r.candidate.key.hex(),
            beater_key=r.beater.key.hex(),
            point=_fraction_str(r.point),
            candidate_polynomial=to_text(r.candidate.polynomial),
            beater_polynomial=to_text(r.beater.polynomial),
        )
        for r in report.refutations
    ]
    return api.OptimalResponse(
        n=report.n,
        m=report.m,
        mode=report.mode,
        exists=report.exists,
        class_count=report.class_count,
        polynomial_count=report.polynomial_count,
        witness=witness,
        refutations=refutations,
    )


def handle_verify(req: api.VerifyRequest) -> api.VerifyResponse:
    report = verify_existence_grid(
        req.mode,
        req.n_min,
        req.n_max,
        req.m_min,
        req.m_max,
        use_orbits=req.orbit_reduction,
        workers=req.workers,
    )
    rows = [
        api.VerifyRow(n=r.n, m=r.m, exists=r.exists, expected=r.expected, agrees=r.agrees)
        for r in report.rows
    ]
    return api.VerifyResponse(mode=report.mode, rows=rows, all_match=report.all_match)


def handle_plot(req: api.PlotRequest) -> api.PlotResponse:
    G, embedded = graph_from_model(req.graph)
    tp = _resolve_terminals(embedded, req.s, req.t)
    if tp is None:
        raise TerminalError("plot needs terminals s and t")
    if not is_connected(G):
        raise TerminalError("plot needs a connected graph")
    cache = EngineCache()
    split, _ = split_reliability(G, tp, engine="factoring", cache=cache)
    allterm, _ = all_terminal_reliability(G, engine="factoring", cache=cache)
    lines = ["p,split,allterm"]
    for k in range(req.samples):
        p = Fraction(k, req.samples - 1)
        lines.append(
            ",".join(
                (
                    format_fixed(p),
                    format_fixed(split.polynomial.evaluate(p)),
                    format_fixed(allterm.evaluate(p)),
                )
            )
        )
    return api.PlotResponse(csv="\n".join(lines) + "\n")
