"""Multigraphs with explicit edge multiplicities and the structural
operations the reliability engines are built on: connectivity,
deletion, contraction, minimum s-t cut, shortest paths, and canonical
labeling up to isomorphism.

Vertices are always labeled 0..n-1.  Parallel edges sharing endpoints
are stored as a single (pair, multiplicity) entry, which keeps
bundle-heavy graphs compact and makes "delete one edge of a bundle"
well defined without edge identities.  Loops are rejected outright:
they can never change which vertices communicate.

Graph values are immutable; every operation returns a new value, so
graphs can be shared freely between concurrent workers.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
from typing import Iterable, Optional, Sequence

from .errors import EdgeAbsentError, GraphBuildError, TerminalError

Pair = tuple[int, int]


@dataclass(frozen=True)
class TerminalPair:
    """An ordered designation of two distinct vertices s and t."""

    s: int
    t: int

    def __post_init__(self) -> None:
        if self.s == self.t:
            raise TerminalError(f"terminals must be distinct, got s = t = {self.s}")
        if self.s < 0 or self.t < 0:
            raise TerminalError(f"terminals must be nonnegative, got ({self.s}, {self.t})")

    def as_sorted(self) -> Pair:
        """The unordered view of the pair; splitting is symmetric in s, t."""
        return (self.s, self.t) if self.s < self.t else (self.t, self.s)


@dataclass(frozen=True)
class Multigraph:
    """A loopless multigraph on vertices 0..n-1.

    ``edges`` is a sorted tuple of ((u, v), multiplicity) entries with
    u < v and multiplicity >= 1; ``m`` is the total edge count with
    multiplicities and must agree with the stored entries.
    """

    n: int
    edges: tuple[tuple[Pair, int], ...]
    m: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise GraphBuildError(f"need at least one vertex, got n = {self.n}")
        total = 0
        prev: Optional[Pair] = None
        for (u, v), w in self.edges:
            if u == v:
                raise GraphBuildError(f"loop edge ({u}, {v}) is not allowed")
            if not (0 <= u < v < self.n):
                raise GraphBuildError(f"edge ({u}, {v}) out of range for n = {self.n}")
            if w < 1:
                raise GraphBuildError(f"multiplicity {w} on ({u}, {v}) must be >= 1")
            if prev is not None and prev >= (u, v):
                raise GraphBuildError("edge entries must be strictly sorted by endpoint pair")
            prev = (u, v)
            total += w
        if total != self.m:
            raise GraphBuildError(f"stored m = {self.m} disagrees with multiplicity sum {total}")

    # -- simple accessors -------------------------------------------------

    def multiplicity(self, pair: Pair) -> int:
        key = _norm_pair(pair)
        for p, w in self.edges:
            if p == key:
                return w
        return 0

    def degree(self, v: int) -> int:
        """Degree counting multiplicities."""
        return sum(w for (a, b), w in self.edges if a == v or b == v)

    def pairs(self) -> tuple[Pair, ...]:
        return tuple(p for p, _ in self.edges)

    def slots(self) -> list[Pair]:
        """Every physical edge as its own entry (parallel edges repeated)."""
        out: list[Pair] = []
        for p, w in self.edges:
            out.extend([p] * w)
        return out

    def adjacency(self) -> list[list[tuple[int, int]]]:
        """Per-vertex list of (neighbor, multiplicity)."""
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for (u, v), w in self.edges:
            adj[u].append((v, w))
            adj[v].append((u, w))
        return adj

    def is_simple(self) -> bool:
        return all(w == 1 for _, w in self.edges)


def _norm_pair(pair: Sequence[int]) -> Pair:
    u, v = pair
    return (u, v) if u <= v else (v, u)


def build(n: int, edge_list: Iterable[Sequence[int]]) -> Multigraph:
    """Build a normalized multigraph from an edge list with repetition.

    Repeated pairs merge into multiplicities; pairs are stored sorted.
    Loops and out-of-range endpoints are rejected.
    """
    counts: dict[Pair, int] = {}
    for e in edge_list:
        u, v = e
        if u == v:
            raise GraphBuildError(f"loop edge ({u}, {v}) is not allowed")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphBuildError(f"edge ({u}, {v}) out of range for n = {n}")
        key = _norm_pair((u, v))
        counts[key] = counts.get(key, 0) + 1
    edges = tuple(sorted(counts.items()))
    return Multigraph(n, edges, sum(counts.values()))


def from_weighted(n: int, weighted: Iterable[tuple[int, int, int]]) -> Multigraph:
    """Build from (u, v, multiplicity) triples."""
    counts: dict[Pair, int] = {}
    for u, v, w in weighted:
        if w < 0:
            raise GraphBuildError(f"negative multiplicity {w} on ({u}, {v})")
        if w == 0:
            continue
        if u == v:
            raise GraphBuildError(f"loop edge ({u}, {v}) is not allowed")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphBuildError(f"edge ({u}, {v}) out of range for n = {n}")
        key = _norm_pair((u, v))
        counts[key] = counts.get(key, 0) + w
    edges = tuple(sorted(counts.items()))
    return Multigraph(n, edges, sum(counts.values()))


# -- connectivity ---------------------------------------------------------


def components(G: Multigraph) -> list[tuple[int, ...]]:
    """Partition of the vertices into connected components.

    Blocks are sorted internally and ordered by smallest member.
    """
    adj = G.adjacency()
    seen = [False] * G.n
    out: list[tuple[int, ...]] = []
    for start in range(G.n):
        if seen[start]:
            continue
        seen[start] = True
        queue = deque([start])
        block = [start]
        while queue:
            x = queue.popleft()
            for y, _ in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    queue.append(y)
                    block.append(y)
        out.append(tuple(sorted(block)))
    return out


def is_connected(G: Multigraph) -> bool:
    """True iff all n vertices lie in one component (n = 1 is connected)."""
    return len(components(G)) == 1


def induced_subgraph(G: Multigraph, vertices: Iterable[int]) -> Multigraph:
    """Subgraph induced on ``vertices``, relabeled 0..k-1 in sorted order."""
    verts = sorted(set(vertices))
    index = {v: i for i, v in enumerate(verts)}
    triples = [
        (index[u], index[v], w)
        for (u, v), w in G.edges
        if u in index and v in index
    ]
    return from_weighted(len(verts), triples)


# -- edge deletion / contraction -------------------------------------------


def delete_edge(G: Multigraph, pair: Sequence[int]) -> Multigraph:
    """Remove one physical edge of the given endpoint pair."""
    key = _norm_pair(pair)
    out = []
    found = False
    for p, w in G.edges:
        if p == key:
            found = True
            if w > 1:
                out.append((p, w - 1))
        else:
            out.append((p, w))
    if not found:
        raise EdgeAbsentError(f"no edge {key} present to delete")
    return Multigraph(G.n, tuple(out), G.m - 1)


def contraction_map(n: int, pair: Sequence[int]) -> list[int]:
    """Vertex relabeling used by contraction: the merged vertex keeps
    min(u, v) and labels above max(u, v) shift down by one."""
    u, v = _norm_pair(pair)
    out = []
    for x in range(n):
        if x == u or x == v:
            out.append(u)
        elif x > v:
            out.append(x - 1)
        else:
            out.append(x)
    return out


def contract_edge(G: Multigraph, pair: Sequence[int]) -> Multigraph:
    """Contract the endpoint pair: merge its endpoints, drop all parallel
    copies of the pair (they would become loops), re-merge the rest."""
    key = _norm_pair(pair)
    if G.multiplicity(key) == 0:
        raise EdgeAbsentError(f"no edge {key} present to contract")
    cmap = contraction_map(G.n, key)
    triples = []
    for (u, v), w in G.edges:
        a, b = cmap[u], cmap[v]
        if a == b:
            continue
        triples.append((a, b, w))
    return from_weighted(G.n - 1, triples)


# -- terminal-based queries -------------------------------------------------


def check_terminals(G: Multigraph, tp: TerminalPair) -> None:
    if tp.s >= G.n or tp.t >= G.n:
        raise TerminalError(f"terminals ({tp.s}, {tp.t}) out of range for n = {G.n}")


def shortest_path_length(G: Multigraph, tp: TerminalPair) -> int:
    """Minimum edge count of an s-t path; multiplicities are irrelevant."""
    check_terminals(G, tp)
    adj = G.adjacency()
    dist = [-1] * G.n
    dist[tp.s] = 0
    queue = deque([tp.s])
    while queue:
        x = queue.popleft()
        if x == tp.t:
            return dist[x]
        for y, _ in adj[x]:
            if dist[y] < 0:
                dist[y] = dist[x] + 1
                queue.append(y)
    raise TerminalError(f"terminals ({tp.s}, {tp.t}) are not connected")


def min_st_cut(G: Multigraph, tp: TerminalPair) -> int:
    """Minimum number of edges whose removal separates s from t,
    counting parallel edges individually (unit-capacity max-flow)."""
    check_terminals(G, tp)
    n = G.n
    cap: dict[Pair, int] = {}
    adj: list[list[int]] = [[] for _ in range(n)]
    for (u, v), w in G.edges:
        cap[(u, v)] = cap.get((u, v), 0) + w
        cap[(v, u)] = cap.get((v, u), 0) + w
        adj[u].append(v)
        adj[v].append(u)
    s, t = tp.s, tp.t
    flow = 0
    while True:
        parent: dict[int, int] = {s: s}
        queue = deque([s])
        while queue and t not in parent:
            x = queue.popleft()
            for y in adj[x]:
                if y not in parent and cap.get((x, y), 0) > 0:
                    parent[y] = x
                    queue.append(y)
        if t not in parent:
            break
        bottleneck = None
        y = t
        while y != s:
            x = parent[y]
            c = cap[(x, y)]
            bottleneck = c if bottleneck is None else min(bottleneck, c)
            y = x
        y = t
        while y != s:
            x = parent[y]
            cap[(x, y)] -= bottleneck
            cap[(y, x)] += bottleneck
            y = x
        flow += bottleneck
    if flow == 0:
        raise TerminalError(f"terminals ({s}, {t}) are not connected")
    return flow


# -- canonical labeling -----------------------------------------------------
#
# Individualization-refinement over ordered color partitions.  The key of a
# (graph, optional unordered terminal pair) is the lexicographically least
# relabeled edge/terminal encoding over all labelings consistent with the
# refined partition.  Labelings reaching the least encoding differ exactly by
# automorphisms, which is how the automorphism group is enumerated.


def _initial_colors(G: Multigraph, terminals: Optional[Pair]) -> list[int]:
    adj = G.adjacency()
    tset = set(terminals) if terminals is not None else set()
    sigs = []
    for v in range(G.n):
        profile = tuple(sorted(w for _, w in adj[v]))
        sigs.append((v in tset, sum(profile), profile))
    ranking = {s: i for i, s in enumerate(sorted(set(sigs)))}
    return [ranking[s] for s in sigs]


def _refine(n: int, adj: list[list[tuple[int, int]]], colors: list[int]) -> list[int]:
    while True:
        sigs = []
        for v in range(n):
            nbr = sorted((colors[u], w) for u, w in adj[v])
            sigs.append((colors[v], tuple(nbr)))
        ranking = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranking[s] for s in sigs]
        if new == colors:
            return colors
        colors = new


def _encode(G: Multigraph, terminals: Optional[Pair], label: Sequence[int]) -> tuple:
    edges = []
    for (u, v), w in G.edges:
        a, b = label[u], label[v]
        edges.append((a, b, w) if a < b else (b, a, w))
    edges.sort()
    if terminals is None:
        tpart: tuple = ()
    else:
        a, b = label[terminals[0]], label[terminals[1]]
        tpart = (a, b) if a < b else (b, a)
    return (tuple(edges), tpart)


def _canonical_search(
    G: Multigraph, terminals: Optional[Pair], collect_all: bool
) -> tuple[tuple, list[tuple[int, ...]]]:
    n = G.n
    adj = G.adjacency()
    best: list = [None, []]  # encoding, labelings achieving it

    def rec(colors: list[int]) -> None:
        counts: dict[int, int] = {}
        for c in colors:
            counts[c] = counts.get(c, 0) + 1
        target = min((c for c, k in counts.items() if k > 1), default=None)
        if target is None:
            key = _encode(G, terminals, colors)
            if best[0] is None or key < best[0]:
                best[0] = key
                best[1] = [tuple(colors)]
            elif key == best[0] and collect_all:
                best[1].append(tuple(colors))
            return
        for v in range(n):
            if colors[v] != target:
                continue
            child = [
                c if (i == v or c < target) else c + 1
                for i, c in enumerate(colors)
            ]
            rec(_refine(n, adj, child))

    rec(_refine(n, adj, _initial_colors(G, terminals)))
    return best[0], best[1]


def _norm_terminals(terminals) -> Optional[Pair]:
    if terminals is None:
        return None
    if isinstance(terminals, TerminalPair):
        return terminals.as_sorted()
    s, t = terminals
    if s == t:
        raise TerminalError(f"terminals must be distinct, got s = t = {s}")
    return (s, t) if s < t else (t, s)


@lru_cache(maxsize=1 << 18)
def _canonical_key_cached(G: Multigraph, terminals: Optional[Pair]) -> bytes:
    encoding, _ = _canonical_search(G, terminals, collect_all=False)
    edges, tpart = encoding
    parts = [str(G.n)]
    parts.append(";".join(f"{a},{b},{w}" for a, b, w in edges))
    parts.append(",".join(str(x) for x in tpart))
    return "|".join(parts).encode()


def canonical_key(G: Multigraph, terminals=None) -> bytes:
    """Byte string identifying the isomorphism class of G, optionally with a
    distinguished unordered terminal pair.  Two inputs get equal keys iff an
    isomorphism maps one onto the other carrying {s, t} to {s', t'} as a set.
    """
    tkey = _norm_terminals(terminals)
    if tkey is not None and (tkey[0] >= G.n or tkey[1] >= G.n or tkey[0] < 0):
        raise TerminalError(f"terminals {tkey} out of range for n = {G.n}")
    return _canonical_key_cached(G, tkey)


@lru_cache(maxsize=1 << 14)
def _automorphisms_cached(G: Multigraph, terminals: Optional[Pair]) -> tuple[tuple[int, ...], ...]:
    _, labelings = _canonical_search(G, terminals, collect_all=True)
    base = labelings[0]
    inv = [0] * G.n
    for v, lab in enumerate(base):
        inv[lab] = v
    perms = {tuple(inv[lab[v]] for v in range(G.n)) for lab in labelings}
    return tuple(sorted(perms))


def automorphisms(G: Multigraph, terminals=None) -> tuple[tuple[int, ...], ...]:
    """All vertex permutations mapping G onto itself (preserving the
    unordered terminal pair when one is given)."""
    return _automorphisms_cached(G, _norm_terminals(terminals))


def isomorphic_brute_force(G: Multigraph, H: Multigraph,
                           gt: Optional[Pair] = None, ht: Optional[Pair] = None) -> bool:
    """Reference isomorphism test trying all n! bijections.  Exponential;
    only for cross-checking canonical keys on small graphs."""
    if G.n != H.n or G.m != H.m or len(G.edges) != len(H.edges):
        return False
    if (gt is None) != (ht is None):
        return False
    hedges = dict(H.edges)
    hts = _norm_terminals(ht) if ht is not None else None
    for perm in permutations(range(G.n)):
        ok = True
        for (u, v), w in G.edges:
            a, b = perm[u], perm[v]
            if hedges.get((a, b) if a < b else (b, a), 0) != w:
                ok = False
                break
        if ok and gt is not None:
            a, b = perm[gt[0]], perm[gt[1]]
            if ((a, b) if a < b else (b, a)) != hts:
                ok = False
        if ok:
            return True
    return False


def pair_orbits(G: Multigraph) -> list[Pair]:
    """One representative per orbit of the automorphism group acting on
    unordered vertex pairs; representatives are the orbit minima."""
    auts = automorphisms(G)
    seen: set[Pair] = set()
    reps: list[Pair] = []
    for u, v in combinations(range(G.n), 2):
        if (u, v) in seen:
            continue
        orbit = set()
        for perm in auts:
            a, b = perm[u], perm[v]
            orbit.add((a, b) if a < b else (b, a))
        seen |= orbit
        reps.append(min(orbit))
    return sorted(reps)
