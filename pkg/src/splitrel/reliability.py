"""Reliability engines.

Two independent routes to every split-reliability polynomial:

* an oracle that enumerates all 2^m edge-slot subsets and counts the
  operational states directly (each physical edge is its own
  independent Bernoulli slot), and
* a deletion-contraction recursion memoized on canonical keys, which is
  the fast path used by the enumeration and optimality searches.

Connectedness and all-terminal reliability share the same recursion
machinery.  A state is operational for splitting when the surviving
edges leave exactly two components, one containing s and the other t.
"""

from __future__ import annotations

from collections import OrderedDict
from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import CeilingError, TerminalError
from .graphs import (
    Multigraph,
    TerminalPair,
    build,
    check_terminals,
    canonical_key,
    components,
    contract_edge,
    contraction_map,
    delete_edge,
    induced_subgraph,
    is_connected,
    min_st_cut,
)
from .polynomials import (
    ONE,
    ZERO,
    IntPolynomial,
    NVector,
    from_nvector,
    one_minus_p_power,
    p_mix,
    state_polynomial,
    to_nvector,
)

DEFAULT_MAX_SLOTS = 22


class EngineCache:
    """Bounded LRU memo shared by the recursive engines within a run.

    Enumeration workloads revisit isomorphic minors constantly, so entries
    are keyed on canonical keys.  A fresh instance per worker is fine; the
    engines are pure, so all instances agree.
    """

    def __init__(self, capacity: int = 1_000_000) -> None:
        if capacity < 1:
            raise ValueError("cache capacity must be positive")
        self.capacity = capacity
        self._data: OrderedDict[bytes, IntPolynomial] = OrderedDict()
        self.hits = 0
        self.misses = 0

    def get(self, key: bytes) -> Optional[IntPolynomial]:
        val = self._data.get(key)
        if val is None:
            self.misses += 1
            return None
        self._data.move_to_end(key)
        self.hits += 1
        return val

    def put(self, key: bytes, value: IntPolynomial) -> None:
        self._data[key] = value
        self._data.move_to_end(key)
        if len(self._data) > self.capacity:
            self._data.popitem(last=False)

    def __len__(self) -> int:
        return len(self._data)


@dataclass(frozen=True)
class SplitResult:
    """Split-reliability polynomial together with its state counts and the
    minimum s-t cutset size c (counts above m - c are zero)."""

    polynomial: IntPolynomial
    nvector: NVector
    cutset_size: int


def _check_slots(m: int, max_slots: int) -> None:
    if m > max_slots:
        raise CeilingError(
            f"{m} edge slots exceed the oracle ceiling of {max_slots} "
            f"(2^{m} subsets); raise max_slots to force the enumeration"
        )


def _component_roots(n: int, slot_pairs: list[tuple[int, int]], mask: int) -> list[int]:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, (u, v) in enumerate(slot_pairs):
        if mask >> i & 1:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
    return [find(x) for x in range(n)]


def k_terminal_rel(
    G: Multigraph, K: Iterable[int], max_slots: int = DEFAULT_MAX_SLOTS
) -> IntPolynomial:
    """Probability that all vertices of K can communicate, by direct
    enumeration over the m edge slots (parallel edges expanded)."""
    K = sorted(set(K))
    if not K:
        raise TerminalError("terminal set K must be nonempty")
    if K[0] < 0 or K[-1] >= G.n:
        raise TerminalError(f"terminal set {K} out of range for n = {G.n}")
    _check_slots(G.m, max_slots)
    slots = G.slots()
    counts = [0] * (G.m + 1)
    for mask in range(1 << G.m):
        roots = _component_roots(G.n, slots, mask)
        r0 = roots[K[0]]
        if all(roots[k] == r0 for k in K[1:]):
            counts[bin(mask).count("1")] += 1
    return state_polynomial(G.m, counts)


def split_rel_oracle(
    G: Multigraph, tp: TerminalPair, max_slots: int = DEFAULT_MAX_SLOTS
) -> SplitResult:
    """Split reliability by enumerating all edge-slot subsets.

    A subset is operational iff the spanning subgraph has exactly two
    components with s in one and t in the other.
    """
    check_terminals(G, tp)
    if G.n < 2:
        raise TerminalError("split reliability needs at least two vertices")
    if not is_connected(G):
        raise TerminalError("oracle requires a connected graph")
    _check_slots(G.m, max_slots)
    slots = G.slots()
    counts = [0] * (G.m + 1)
    for mask in range(1 << G.m):
        roots = _component_roots(G.n, slots, mask)
        if roots[tp.s] != roots[tp.t] and len(set(roots)) == 2:
            counts[bin(mask).count("1")] += 1
    c = min_st_cut(G, tp)
    nv = NVector(G.m, tuple(counts[G.n - 2 :]))
    return SplitResult(from_nvector(nv, G.n), nv, c)


def _max_multiplicity_pair(G: Multigraph) -> tuple[int, int]:
    best = G.edges[0]
    for entry in G.edges[1:]:
        if entry[1] > best[1]:
            best = entry
    return best[0]


def all_terminal_rel(G: Multigraph, cache: Optional[EngineCache] = None) -> IntPolynomial:
    """All-terminal reliability via deletion-contraction, memoized on
    canonical keys.  Disconnected graphs give 0; a single vertex gives 1."""
    if cache is None:
        cache = EngineCache()
    return _all_terminal(G, cache)


def _all_terminal(G: Multigraph, cache: EngineCache) -> IntPolynomial:
    if not is_connected(G):
        return ZERO
    if G.n == 1:
        return ONE
    key = b"A" + canonical_key(G)
    hit = cache.get(key)
    if hit is not None:
        return hit
    pair = _max_multiplicity_pair(G)
    contracted = _all_terminal(contract_edge(G, pair), cache)
    deleted = _all_terminal(delete_edge(G, pair), cache)
    value = p_mix(contracted, deleted)
    cache.put(key, value)
    return value


def split_rel_factoring(
    G: Multigraph, tp: TerminalPair, cache: Optional[EngineCache] = None
) -> IntPolynomial:
    """Split reliability by deletion-contraction.

    Recursion on one edge of a maximum-multiplicity pair: take it
    operational (contract) or failed (delete).  Contracting the terminals
    together contributes nothing.  A graph already in exactly two
    components separating s from t contributes the product of the two
    components' all-terminal reliabilities; any other disconnected graph
    contributes 0.
    """
    check_terminals(G, tp)
    if G.n < 2:
        raise TerminalError("split reliability needs at least two vertices")
    if cache is None:
        cache = EngineCache()
    return _split_factor(G, tp.s, tp.t, cache)


def _split_factor(G: Multigraph, s: int, t: int, cache: EngineCache) -> IntPolynomial:
    comps = components(G)
    if len(comps) > 2:
        return ZERO
    if len(comps) == 2:
        first, second = comps
        in_first = s in first
        if in_first == (t in first):
            return ZERO
        return _all_terminal(induced_subgraph(G, first), cache) * _all_terminal(
            induced_subgraph(G, second), cache
        )
    if G.n == 2:
        return one_minus_p_power(G.m)
    key = b"S" + canonical_key(G, (s, t))
    hit = cache.get(key)
    if hit is not None:
        return hit
    pair = _max_multiplicity_pair(G)
    deleted = _split_factor(delete_edge(G, pair), s, t, cache)
    if pair == ((s, t) if s < t else (t, s)):
        contracted = ZERO
    else:
        cmap = contraction_map(G.n, pair)
        contracted = _split_factor(contract_edge(G, pair), cmap[s], cmap[t], cache)
    value = p_mix(contracted, deleted)
    cache.put(key, value)
    return value


def split_reliability(
    G: Multigraph,
    tp: TerminalPair,
    engine: str = "factoring",
    max_slots: int = DEFAULT_MAX_SLOTS,
    cache: Optional[EngineCache] = None,
) -> tuple[SplitResult, Optional[bool]]:
    """Front end used by the CLI and service.

    Returns the split result plus an agreement flag when both engines ran.
    Disconnected inputs are legal here: with exactly two components
    separating the terminals the result is the product of the components'
    all-terminal reliabilities, otherwise it is 0 (cutset size 0 either way).
    """
    check_terminals(G, tp)
    if G.n < 2:
        raise TerminalError("split reliability needs at least two vertices")
    if not is_connected(G):
        poly = _split_factor(G, tp.s, tp.t, cache or EngineCache())
        return SplitResult(poly, to_nvector(poly, G.n, G.m), 0), None
    if engine == "oracle":
        return split_rel_oracle(G, tp, max_slots), None
    if engine == "factoring":
        poly = split_rel_factoring(G, tp, cache=cache)
        return SplitResult(poly, to_nvector(poly, G.n, G.m), min_st_cut(G, tp)), None
    if engine == "both":
        oracle = split_rel_oracle(G, tp, max_slots)
        fact = split_rel_factoring(G, tp, cache=cache)
        return oracle, oracle.polynomial == fact
    raise ValueError(f"unknown engine {engine!r}")


def all_terminal_reliability(
    G: Multigraph,
    engine: str = "factoring",
    max_slots: int = DEFAULT_MAX_SLOTS,
    cache: Optional[EngineCache] = None,
) -> tuple[IntPolynomial, Optional[bool]]:
    """All-terminal front end; ``both`` cross-checks the subset oracle."""
    if engine == "oracle":
        return k_terminal_rel(G, range(G.n), max_slots), None
    if engine == "factoring":
        return all_terminal_rel(G, cache=cache), None
    if engine == "both":
        fact = all_terminal_rel(G, cache=cache)
        oracle = k_terminal_rel(G, range(G.n), max_slots)
        return fact, fact == oracle
    raise ValueError(f"unknown engine {engine!r}")


def add_pendant(G: Multigraph, u: int) -> Multigraph:
    """G plus a new vertex attached to u by a single edge."""
    if not 0 <= u < G.n:
        raise TerminalError(f"vertex {u} out of range for n = {G.n}")
    slots = G.slots()
    slots.append((u, G.n))
    return build(G.n + 1, slots)


def pendant_identity_check(
    G: Multigraph, s: int, u: int, cache: Optional[EngineCache] = None
) -> bool:
    """Attach a new terminal t to u and compare split(G'; s, t) against
    (1 - p) * all_terminal(G) + p * split(G; s, u).  Holds identically for
    connected G; exposed as a property check."""
    if cache is None:
        cache = EngineCache()
    if s == u:
        raise TerminalError("the existing terminal and attachment vertex must differ")
    if not is_connected(G):
        raise TerminalError("pendant identity needs a connected graph")
    extended = add_pendant(G, u)
    lhs = split_rel_factoring(extended, TerminalPair(s, G.n), cache=cache)
    rhs = p_mix(
        _split_factor(G, s, u, cache),
        _all_terminal(G, cache),
    )
    return lhs == rhs
