"""Named graph families with closed-form split reliabilities and stated
state-count values, used as ground truth against the engines.

Tags and their parameters:

    Path:n[,k]          path on n vertices, terminals at distance k (default n-1)
    Cycle:n[,k]         cycle on n vertices, terminals at distance k (default n//2)
    Bundle:m            two vertices joined by m parallel edges
    Gnm:n,m             s-t path of length n-1 with the m-n+2 extra edges
                        bundled on the first path edge (the unique candidate
                        for an optimal multigraph)
    HPendantBundle:n,m  s-t path of length n-2 plus one vertex bundled onto
                        the path vertex next to s with the remaining edges
    HTwoBundles:n,m     s-t path of length n-1 with bundles of sizes 2 and
                        m-n+1 on the first two path edges
    X55                 5-vertex, 5-edge counterexample: triangle with two
                        pendant terminals on adjacent corners
    Y66                 6-vertex, 6-edge counterexample: 4-cycle with pendant
                        terminals on opposite corners (same graph as Rn:6)
    PathTriangle:n      s-t path of length n-3 with a triangle through t
    B3:m,a              3 vertices, s - v - t path; bundle sizes a and m-a
    C3:m,a              3 vertices, terminals adjacent: s - t - v with bundle
                        a on the s-t side and m-a on the t-v side
    D3:m,a,b            triangle on s, t, v with bundle a on the s-t side,
                        b on the t-v side, and m-a-b on the s-v side
    Sn:n                n-vertex, n-edge simple candidate: s-t path of length
                        n-2 with the spare vertex forming a triangle on the
                        two path vertices after s
    Rn:n                n-vertex, n-edge simple counterexample: near-balanced
                        cycle on n-2 vertices with pendant terminals
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import FamilyParameterError
from .graphs import Multigraph, TerminalPair, from_weighted
from .polynomials import (
    ONE,
    IntPolynomial,
    P,
    ONE_MINUS_P,
    one_minus_p_power,
)

FAMILY_TAGS = (
    "Path",
    "Cycle",
    "Bundle",
    "Gnm",
    "HPendantBundle",
    "HTwoBundles",
    "X55",
    "Y66",
    "PathTriangle",
    "B3",
    "C3",
    "D3",
    "Sn",
    "Rn",
)

_ARITY = {
    "Path": (1, 2),
    "Cycle": (1, 2),
    "Bundle": (1, 1),
    "Gnm": (2, 2),
    "HPendantBundle": (2, 2),
    "HTwoBundles": (2, 2),
    "X55": (0, 0),
    "Y66": (0, 0),
    "PathTriangle": (1, 1),
    "B3": (2, 2),
    "C3": (2, 2),
    "D3": (3, 3),
    "Sn": (1, 1),
    "Rn": (1, 1),
}


@dataclass(frozen=True)
class FamilySpec:
    tag: str
    params: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.tag not in FAMILY_TAGS:
            raise FamilyParameterError(
                f"unknown family {self.tag!r}; known tags: {', '.join(FAMILY_TAGS)}"
            )
        lo, hi = _ARITY[self.tag]
        if not lo <= len(self.params) <= hi:
            raise FamilyParameterError(
                f"family {self.tag} takes {lo}..{hi} parameters, got {len(self.params)}"
            )

    def __str__(self) -> str:
        if not self.params:
            return f"family:{self.tag}"
        return f"family:{self.tag}:" + ",".join(str(x) for x in self.params)


_TAG_ALIASES = {"SnSimple": "Sn", "RnSimple": "Rn"}


def parse_spec(text: str) -> FamilySpec:
    """Parse ``family:<tag>:<params>`` (the leading ``family:`` is optional)."""
    parts = text.strip().split(":")
    if parts and parts[0] == "family":
        parts = parts[1:]
    if not parts or not parts[0]:
        raise FamilyParameterError(f"cannot parse family spec {text!r}")
    tag = _TAG_ALIASES.get(parts[0], parts[0])
    params: tuple[int, ...] = ()
    if len(parts) > 2:
        raise FamilyParameterError(f"cannot parse family spec {text!r}")
    if len(parts) == 2 and parts[1]:
        try:
            params = tuple(int(x) for x in parts[1].split(","))
        except ValueError as exc:
            raise FamilyParameterError(f"non-integer parameter in {text!r}") from exc
    return FamilySpec(tag, params)


def _need(cond: bool, message: str) -> None:
    if not cond:
        raise FamilyParameterError(message)


def _path_k(spec: FamilySpec) -> tuple[int, int]:
    n = spec.params[0]
    _need(n >= 2, f"{spec.tag} needs n >= 2, got n = {n}")
    k = spec.params[1] if len(spec.params) == 2 else n - 1
    _need(1 <= k <= n - 1, f"{spec.tag} needs 1 <= k <= n-1, got k = {k}")
    return n, k


def construct(spec: FamilySpec) -> tuple[Multigraph, TerminalPair]:
    """The exact labeled graph of the family with its designated terminals."""
    tag, params = spec.tag, spec.params

    if tag == "Path":
        n, k = _path_k(spec)
        g = from_weighted(n, [(i, i + 1, 1) for i in range(n - 1)])
        return g, TerminalPair(0, k)

    if tag == "Cycle":
        n = params[0]
        _need(n >= 3, f"Cycle needs n >= 3, got n = {n}")
        k = params[1] if len(params) == 2 else n // 2
        _need(1 <= k <= n - 1, f"Cycle needs 1 <= k <= n-1, got k = {k}")
        g = from_weighted(n, [(i, (i + 1) % n, 1) for i in range(n)])
        return g, TerminalPair(0, k)

    if tag == "Bundle":
        m = params[0]
        _need(m >= 1, f"Bundle needs m >= 1, got m = {m}")
        return from_weighted(2, [(0, 1, m)]), TerminalPair(0, 1)

    if tag == "Gnm":
        n, m = params
        _need(n >= 2, f"Gnm needs n >= 2, got n = {n}")
        _need(m >= n - 1, f"Gnm needs m >= n-1, got (n, m) = ({n}, {m})")
        triples = [(0, 1, m - n + 2)] + [(i, i + 1, 1) for i in range(1, n - 1)]
        return from_weighted(n, triples), TerminalPair(0, n - 1)

    if tag == "HPendantBundle":
        n, m = params
        _need(n >= 4, f"HPendantBundle needs n >= 4, got n = {n}")
        _need(m >= n - 1, f"HPendantBundle needs m >= n-1, got (n, m) = ({n}, {m})")
        triples = [(i, i + 1, 1) for i in range(n - 2)]
        triples.append((1, n - 1, m - n + 2))
        return from_weighted(n, triples), TerminalPair(0, n - 2)

    if tag == "HTwoBundles":
        n, m = params
        _need(n >= 4, f"HTwoBundles needs n >= 4, got n = {n}")
        _need(m >= n, f"HTwoBundles needs m >= n, got (n, m) = ({n}, {m})")
        triples = [(0, 1, 2), (1, 2, m - n + 1)]
        triples += [(i, i + 1, 1) for i in range(2, n - 1)]
        return from_weighted(n, triples), TerminalPair(0, n - 1)

    if tag == "X55":
        # triangle a=0, b=1, c=2 with s=3 pendant on b and t=4 pendant on c
        g = from_weighted(5, [(0, 1, 1), (1, 3, 1), (1, 2, 1), (0, 2, 1), (2, 4, 1)])
        return g, TerminalPair(3, 4)

    if tag == "Y66":
        # 4-cycle a=0, b=1, c=2, d=3 with s=4 on a and t=5 on the opposite corner c
        g = from_weighted(
            6, [(0, 1, 1), (1, 2, 1), (2, 5, 1), (0, 3, 1), (2, 3, 1), (0, 4, 1)]
        )
        return g, TerminalPair(4, 5)

    if tag == "PathTriangle":
        n = params[0]
        _need(n >= 5, f"PathTriangle needs n >= 5, got n = {n}")
        t = n - 3
        triples = [(i, i + 1, 1) for i in range(t)]
        triples += [(t, n - 2, 1), (n - 2, n - 1, 1), (n - 1, t, 1)]
        return from_weighted(n, triples), TerminalPair(0, t)

    if tag == "B3":
        m, a = params
        _need(m >= 2, f"B3 needs m >= 2, got m = {m}")
        _need(1 <= a <= m - 1, f"B3 needs 1 <= a <= m-1, got (m, a) = ({m}, {a})")
        return from_weighted(3, [(0, 1, a), (1, 2, m - a)]), TerminalPair(0, 2)

    if tag == "C3":
        m, a = params
        _need(m >= 2, f"C3 needs m >= 2, got m = {m}")
        _need(1 <= a <= m - 1, f"C3 needs 1 <= a <= m-1, got (m, a) = ({m}, {a})")
        return from_weighted(3, [(0, 1, a), (1, 2, m - a)]), TerminalPair(0, 1)

    if tag == "D3":
        m, a, b = params
        _need(a >= 1 and b >= 1 and m - a - b >= 1,
              f"D3 needs a, b >= 1 and m-a-b >= 1, got (m, a, b) = ({m}, {a}, {b})")
        g = from_weighted(3, [(0, 1, a), (1, 2, b), (0, 2, m - a - b)])
        return g, TerminalPair(0, 1)

    if tag == "Sn":
        n = params[0]
        _need(n >= 5, f"Sn needs n >= 5, got n = {n}")
        triples = [(i, i + 1, 1) for i in range(n - 2)]
        triples += [(1, n - 1, 1), (2, n - 1, 1)]
        return from_weighted(n, triples), TerminalPair(0, n - 2)

    if tag == "Rn":
        n = params[0]
        _need(n >= 5, f"Rn needs n >= 5, got n = {n}")
        ring = list(range(1, n - 1))
        triples = [(ring[i], ring[(i + 1) % len(ring)], 1) for i in range(len(ring))]
        u = 1
        v = 1 + (n - 2) // 2
        triples += [(0, u, 1), (n - 1, v, 1)]
        return from_weighted(n, triples), TerminalPair(0, n - 1)

    raise FamilyParameterError(f"unknown family {tag!r}")


_CLOSED_FORM_TAGS = ("Path", "Cycle", "Bundle", "Gnm", "B3", "C3", "D3")


def closed_form_split(spec: FamilySpec) -> IntPolynomial:
    """Exact expansion of the family's closed-form split reliability."""
    tag, params = spec.tag, spec.params
    if tag == "Path":
        n, k = _path_k(spec)
        return k * P ** (n - 2) * ONE_MINUS_P

    if tag == "Cycle":
        construct(spec)  # validate parameters
        n = params[0]
        k = params[1] if len(params) == 2 else n // 2
        return k * (n - k) * P ** (n - 2) * ONE_MINUS_P ** 2

    if tag == "Bundle":
        construct(spec)
        return one_minus_p_power(params[0])

    if tag == "Gnm":
        construct(spec)
        n, m = params
        bundle = m - n + 2
        if n == 2:
            return one_minus_p_power(m)
        return (n - 2) * ONE_MINUS_P * P ** (n - 3) * (
            ONE - one_minus_p_power(bundle)
        ) + one_minus_p_power(bundle) * P ** (n - 2)

    if tag == "B3":
        construct(spec)
        m, a = params
        return one_minus_p_power(a) + one_minus_p_power(m - a) - 2 * one_minus_p_power(m)

    if tag == "C3":
        construct(spec)
        m, a = params
        return one_minus_p_power(a) - one_minus_p_power(m)

    if tag == "D3":
        construct(spec)
        m, a, b = params
        inner = (
            one_minus_p_power(b)
            + one_minus_p_power(m - a - b)
            - 2 * one_minus_p_power(m - a)
        )
        return one_minus_p_power(a) * inner

    raise FamilyParameterError(
        f"family {tag} has no closed form (available: {', '.join(_CLOSED_FORM_TAGS)})"
    )


def expected_ncounts(spec: FamilySpec) -> dict[int, int]:
    """The stated operational-state counts for the family, as a map from
    state size i to N_i.  Only the documented entries are returned."""
    tag, params = spec.tag, spec.params
    construct(spec)  # validate parameters

    if tag == "Gnm":
        n, m = params
        _need(m >= n, f"Gnm state-count formulas need m >= n, got ({n}, {m})")
        return {n - 2: 1 + (n - 2) * (m - n + 2), m - 1: n - 2}

    if tag == "HPendantBundle":
        n, m = params
        return {n - 2: (n - 2) * (m - n + 2), m - 1: n - 2}

    if tag == "HTwoBundles":
        n, m = params
        return {n - 2: 2 * (m - n + 1) * (n - 3) + 2 + (m - n + 1)}

    if tag == "PathTriangle":
        n = params[0]
        return {n - 2: 3 * (n - 3)}

    if tag == "X55":
        return {3: 8}

    if tag == "Y66":
        return {4: 12}

    if tag == "Sn":
        n = params[0]
        _need(n >= 6, f"Sn state-count formulas need n >= 6, got n = {n}")
        return {n - 2: 3 * (n - 3) + 2, n - 1: n - 3}

    if tag == "Rn":
        n = params[0]
        half = (n - 2) // 2
        return {n - 2: 2 * (n - 2) + half * (n - 2 - half)}

    raise FamilyParameterError(f"family {tag} has no stated state counts")
