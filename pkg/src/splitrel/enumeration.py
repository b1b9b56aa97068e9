"""Exhaustive generation of connected (n, m) graphs up to isomorphism,
in simple and multigraph modes, plus terminal-pair orbit reduction.

Simple classes are grown level by level: trees by leaf augmentation,
then one edge at a time, deduplicating with canonical keys at every
level.  Above the halfway density it is cheaper to walk down from the
complete graph by single-edge deletions instead.  Multigraph classes
come from distributing the extra multiplicity units over each connected
simple support graph.  Levels are cached, so sweeping m for a fixed n
costs one pass.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from typing import Iterator

from .errors import CeilingError
from .graphs import (
    Multigraph,
    TerminalPair,
    build,
    canonical_key,
    from_weighted,
    is_connected,
    pair_orbits,
)

ENUMERATION_MAX_N = 8

MODES = ("simple", "multi")


def _check_mode(mode: str) -> None:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")


def _check_ceiling(n: int) -> None:
    if n > ENUMERATION_MAX_N:
        raise CeilingError(
            f"enumeration is limited to n <= {ENUMERATION_MAX_N}, got n = {n}"
        )


def _dedup(graphs) -> tuple[Multigraph, ...]:
    by_key: dict[bytes, Multigraph] = {}
    for g in graphs:
        by_key.setdefault(canonical_key(g), g)
    return tuple(by_key[k] for k in sorted(by_key))


@lru_cache(maxsize=64)
def trees(n: int) -> tuple[Multigraph, ...]:
    """All trees on n vertices up to isomorphism (leaf augmentation)."""
    _check_ceiling(n)
    if n < 1:
        return ()
    if n == 1:
        return (build(1, []),)
    grown = []
    for t in trees(n - 1):
        for v in range(t.n):
            grown.append(build(n, t.slots() + [(v, n - 1)]))
    return _dedup(grown)


@lru_cache(maxsize=4096)
def simple_classes(n: int, m: int) -> tuple[Multigraph, ...]:
    """All connected simple (n, m) graphs up to isomorphism."""
    _check_ceiling(n)
    if n < 1:
        return ()
    max_m = n * (n - 1) // 2
    if m < n - 1 or m > max_m:
        return ()
    if m == n - 1:
        return trees(n)
    if m == max_m:
        return (from_weighted(n, [(u, v, 1) for u, v in combinations(range(n), 2)]),)
    if m - (n - 1) <= max_m - m:
        grown = []
        for g in simple_classes(n, m - 1):
            present = set(g.pairs())
            for u, v in combinations(range(n), 2):
                if (u, v) not in present:
                    grown.append(build(n, g.slots() + [(u, v)]))
        return _dedup(grown)
    shrunk = []
    from .graphs import delete_edge

    for g in simple_classes(n, m + 1):
        for pair in g.pairs():
            smaller = delete_edge(g, pair)
            if is_connected(smaller):
                shrunk.append(smaller)
    return _dedup(shrunk)


@lru_cache(maxsize=2048)
def multi_classes(n: int, m: int) -> tuple[Multigraph, ...]:
    """All connected (n, m) multigraphs up to isomorphism: every connected
    simple support graph with the extra units distributed over its pairs."""
    _check_ceiling(n)
    if n < 1 or m < n - 1:
        return ()
    if n == 1:
        return (build(1, []),) if m == 0 else ()
    out = []
    max_support = min(m, n * (n - 1) // 2)
    for e in range(n - 1, max_support + 1):
        for support in simple_classes(n, e):
            pairs = support.pairs()
            extra = m - e
            for combo in combinations_with_replacement(range(e), extra):
                mult = [1] * e
                for idx in combo:
                    mult[idx] += 1
                out.append(
                    from_weighted(n, [(u, v, w) for (u, v), w in zip(pairs, mult)])
                )
    return _dedup(out)


def enumerate_graphs(n: int, m: int, mode: str = "multi") -> Iterator[Multigraph]:
    """Stream every connected (n, m) isomorphism class exactly once.

    m < n - 1 yields nothing (no connected graph is that sparse).
    """
    _check_mode(mode)
    classes = simple_classes(n, m) if mode == "simple" else multi_classes(n, m)
    yield from classes


def enumerate_terminal_classes(
    G: Multigraph, use_orbits: bool = True
) -> list[TerminalPair]:
    """One representative per orbit of the automorphism group on unordered
    vertex pairs.  ``use_orbits=False`` returns all pairs instead; the
    reduction is an optimization and must never change any verdict."""
    if use_orbits:
        return [TerminalPair(u, v) for u, v in pair_orbits(G)]
    return [TerminalPair(u, v) for u, v in combinations(range(G.n), 2)]
