"""Graph text format and decimal rendering for CSV output.

A graph object is a single JSON object with fields ``n`` (integer),
``edges`` (array of [u, v] integer pairs, repetition = multiplicity),
and optional ``s``, ``t`` terminals.  Serialization is bit-exact:
edges sorted ascending by (min, max) with repeated pairs adjacent,
fixed key order, no whitespace variation.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Optional

from .errors import GraphFormatError
from .graphs import Multigraph, TerminalPair, build


def graph_to_obj(G: Multigraph, terminals: Optional[TerminalPair] = None) -> dict:
    obj: dict = {"n": G.n, "edges": [[u, v] for u, v in G.slots()]}
    if terminals is not None:
        obj["s"] = terminals.s
        obj["t"] = terminals.t
    return obj


def obj_to_graph(obj) -> tuple[Multigraph, Optional[TerminalPair]]:
    if not isinstance(obj, dict):
        raise GraphFormatError(f"graph object must be a JSON object, got {type(obj).__name__}")
    try:
        n = obj["n"]
        edges = obj["edges"]
    except KeyError as exc:
        raise GraphFormatError(f"graph object missing field {exc.args[0]!r}") from exc
    if not isinstance(n, int):
        raise GraphFormatError("field 'n' must be an integer")
    if not isinstance(edges, list):
        raise GraphFormatError("field 'edges' must be an array of [u, v] pairs")
    pairs = []
    for e in edges:
        if (
            not isinstance(e, list)
            or len(e) != 2
            or not all(isinstance(x, int) for x in e)
        ):
            raise GraphFormatError(f"bad edge entry {e!r}")
        pairs.append((e[0], e[1]))
    G = build(n, pairs)
    terminals = None
    if "s" in obj or "t" in obj:
        if "s" not in obj or "t" not in obj:
            raise GraphFormatError("terminals need both 's' and 't'")
        s, t = obj["s"], obj["t"]
        if not isinstance(s, int) or not isinstance(t, int):
            raise GraphFormatError("terminals must be integers")
        if not (0 <= s < n and 0 <= t < n):
            raise GraphFormatError(f"terminals ({s}, {t}) out of range for n = {n}")
        terminals = TerminalPair(s, t)
    return G, terminals


def dumps_graph(G: Multigraph, terminals: Optional[TerminalPair] = None) -> str:
    return json.dumps(graph_to_obj(G, terminals), separators=(",", ":"))


def loads_graph(text: str) -> tuple[Multigraph, Optional[TerminalPair]]:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"invalid JSON: {exc}") from exc
    return obj_to_graph(obj)


def format_fixed(value: Fraction, digits: int = 12) -> str:
    """Exact fixed-point decimal rendering (round half to even),
    locale-independent and bit-stable."""
    if digits < 0:
        raise ValueError("digits must be nonnegative")
    sign = "-" if value < 0 else ""
    scaled = abs(value) * 10**digits
    q, r = divmod(scaled.numerator, scaled.denominator)
    double = 2 * r
    if double > scaled.denominator or (double == scaled.denominator and q % 2 == 1):
        q += 1
    whole, frac = divmod(q, 10**digits)
    if digits == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{digits}d}"
