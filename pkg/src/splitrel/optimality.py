"""Dominance of split-reliability polynomials on (0, 1) and the
optimal-graph existence decision with verifiable certificates.

A connected (n, m) graph with terminals is optimal when its split
reliability is at least that of every other connected (n, m) graph with
any terminals, for every p in (0, 1).  The search computes one exact
polynomial per (graph class, terminal class), deduplicates equal
polynomials, and decides existence on the entrywise-maximal frontier of
state-count vectors:

* entrywise larger state counts dominate pointwise (the state basis is
  positive on (0, 1)), so every polynomial is dominated by some frontier
  member and a greatest element must sit on the frontier;
* opposite strict winners near p = 0 and p = 1 refute dominance cheaply;
* everything still undecided goes to the exact Sturm classifier.

When no optimal graph exists, every maximal candidate is certified
beaten: a rational point where some other polynomial is strictly larger,
checkable by exact evaluation.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .enumeration import (
    ENUMERATION_MAX_N,
    enumerate_graphs,
    enumerate_terminal_classes,
)
from .errors import BasisError, CeilingError
from .graphs import Multigraph, TerminalPair, canonical_key
from .polynomials import IntPolynomial, NVector, SignTag, sign_on_unit_interval, to_nvector
from .reliability import EngineCache, split_rel_factoring

FIRST, SECOND, TIE = "first", "second", "tie"

DOMINATES = "dominates"
DOMINATED_BY = "dominated_by"
EQUAL = "equal"
INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class DominanceVerdict:
    """Outcome of comparing f against g everywhere on (0, 1).

    Witness points are exact rationals in (0, 1); re-evaluating both
    polynomials there reproduces the claimed strict inequality.
    """

    relation: str
    first_wins_at: Optional[Fraction] = None
    second_wins_at: Optional[Fraction] = None


def dominates(f: IntPolynomial, g: IntPolynomial) -> DominanceVerdict:
    """Classify f - g on (0, 1).  Touching zeros do not break dominance:
    two polynomials that agree somewhere (or everywhere) still compare."""
    sign = sign_on_unit_interval(f - g)
    if sign.tag is SignTag.IDENTICALLY_ZERO:
        return DominanceVerdict(EQUAL)
    if sign.tag in (SignTag.POSITIVE, SignTag.NONNEGATIVE_WITH_ZEROS):
        return DominanceVerdict(DOMINATES, first_wins_at=sign.positive_witness)
    if sign.tag in (SignTag.NEGATIVE, SignTag.NONPOSITIVE_WITH_ZEROS):
        return DominanceVerdict(DOMINATED_BY, second_wins_at=sign.negative_witness)
    return DominanceVerdict(
        INCOMPARABLE,
        first_wins_at=sign.positive_witness,
        second_wins_at=sign.negative_witness,
    )


def compare_near_endpoints(nv1: NVector, nv2: NVector) -> tuple[str, str]:
    """Who wins sufficiently close to p = 0 and to p = 1.

    Near 0 the lowest-index strict difference in state counts decides;
    near 1 the highest-index strict difference decides.  Equal vectors
    tie at both ends.
    """
    if nv1.m != nv2.m or len(nv1.counts) != len(nv2.counts):
        raise BasisError("endpoint comparison needs matching (n, m) supports")
    near0 = TIE
    for a, b in zip(nv1.counts, nv2.counts):
        if a != b:
            near0 = FIRST if a > b else SECOND
            break
    near1 = TIE
    for a, b in zip(reversed(nv1.counts), reversed(nv2.counts)):
        if a != b:
            near1 = FIRST if a > b else SECOND
            break
    return near0, near1


@dataclass(frozen=True)
class ClassEntry:
    """One deduplicated polynomial with its least-key representative."""

    key: bytes
    graph: Multigraph
    terminals: TerminalPair
    polynomial: IntPolynomial
    nvector: NVector


@dataclass(frozen=True)
class Refutation:
    """Certificate that ``candidate`` is not optimal: at the rational point
    ``point`` the beater's polynomial is strictly larger."""

    candidate: ClassEntry
    beater: ClassEntry
    point: Fraction


@dataclass(frozen=True)
class OptimalityReport:
    n: int
    m: int
    mode: str
    exists: bool
    witness: Optional[ClassEntry]
    refutations: tuple[Refutation, ...]
    class_count: int
    polynomial_count: int


def _endpoint_witness(
    diff: IntPolynomial, near_zero: bool
) -> Optional[Fraction]:
    """Rational point close to an endpoint where diff is strictly positive."""
    for k in range(2, 200):
        x = Fraction(1, 2**k)
        if near_zero:
            point = x
        else:
            point = 1 - x
        if diff.evaluate(point) > 0:
            return point
    return None


def _verdict(e1: ClassEntry, e2: ClassEntry) -> DominanceVerdict:
    """Dominance with cheap prefilters before the exact classifier."""
    c1, c2 = e1.nvector.counts, e2.nvector.counts
    if c1 == c2:
        return DominanceVerdict(EQUAL)
    if all(a >= b for a, b in zip(c1, c2)):
        # positive combination of the state basis: strictly larger at 1/2
        return DominanceVerdict(DOMINATES, first_wins_at=Fraction(1, 2))
    if all(a <= b for a, b in zip(c1, c2)):
        return DominanceVerdict(DOMINATED_BY, second_wins_at=Fraction(1, 2))
    near0, near1 = compare_near_endpoints(e1.nvector, e2.nvector)
    if {near0, near1} == {FIRST, SECOND}:
        diff = e1.polynomial - e2.polynomial
        first_at = _endpoint_witness(diff, near_zero=(near0 == FIRST))
        second_at = _endpoint_witness(-diff, near_zero=(near0 == SECOND))
        if first_at is not None and second_at is not None:
            return DominanceVerdict(
                INCOMPARABLE, first_wins_at=first_at, second_wins_at=second_at
            )
    return dominates(e1.polynomial, e2.polynomial)


def _pareto_frontier(entries: list[ClassEntry]) -> list[ClassEntry]:
    """Entries whose state-count vectors are entrywise maximal.  Scanning by
    descending total count means any dominator is seen before its victims."""
    ordered = sorted(
        entries, key=lambda e: (-sum(e.nvector.counts), e.key)
    )
    frontier: list[ClassEntry] = []
    for entry in ordered:
        c = entry.nvector.counts
        if any(
            all(a >= b for a, b in zip(f.nvector.counts, c))
            for f in frontier
        ):
            continue
        frontier.append(entry)
    return sorted(frontier, key=lambda e: e.key)


_WORKER_CACHE: Optional[EngineCache] = None


def _worker_init() -> None:
    global _WORKER_CACHE
    _WORKER_CACHE = EngineCache()


def _graph_polynomials(
    task: tuple[Multigraph, bool]
) -> list[tuple[TerminalPair, IntPolynomial]]:
    graph, use_orbits = task
    cache = _WORKER_CACHE if _WORKER_CACHE is not None else EngineCache()
    return [
        (tp, split_rel_factoring(graph, tp, cache=cache))
        for tp in enumerate_terminal_classes(graph, use_orbits=use_orbits)
    ]


def find_optimal(
    n: int,
    m: int,
    mode: str = "multi",
    *,
    use_orbits: bool = True,
    workers: int = 1,
    cache: Optional[EngineCache] = None,
) -> OptimalityReport:
    """Decide whether an optimal connected (n, m) graph exists, with a
    witness when it does and per-candidate refutations when it does not.
    Output ordering is fixed by canonical keys, independent of scheduling.
    """
    if n < 2:
        raise CeilingError(f"need n >= 2, got n = {n}")
    if m < n - 1:
        raise CeilingError(f"no connected (n, m) graph has m < n - 1, got ({n}, {m})")
    if n > ENUMERATION_MAX_N:
        raise CeilingError(f"search is limited to n <= {ENUMERATION_MAX_N}")
    if mode == "simple" and m > n * (n - 1) // 2:
        raise CeilingError(
            f"no simple graph on {n} vertices has {m} edges (max {n * (n - 1) // 2})"
        )
    if cache is None:
        cache = EngineCache()

    graphs = sorted(enumerate_graphs(n, m, mode), key=canonical_key)

    if workers > 1:
        tasks = [(g, use_orbits) for g in graphs]
        with ProcessPoolExecutor(
            max_workers=workers, initializer=_worker_init
        ) as pool:
            per_graph = list(pool.map(_graph_polynomials, tasks))
    else:
        per_graph = [_graph_polynomials_local((g, use_orbits), cache) for g in graphs]

    by_poly: dict[tuple[int, ...], ClassEntry] = {}
    class_count = 0
    for graph, results in zip(graphs, per_graph):
        for tp, poly in results:
            class_count += 1
            entry = ClassEntry(
                key=canonical_key(graph, tp),
                graph=graph,
                terminals=tp,
                polynomial=poly,
                nvector=to_nvector(poly, n, m),
            )
            known = by_poly.get(poly.coeffs)
            if known is None or entry.key < known.key:
                by_poly[poly.coeffs] = entry

    entries = sorted(by_poly.values(), key=lambda e: e.key)
    frontier = _pareto_frontier(entries)

    verdicts: dict[tuple[bytes, bytes], DominanceVerdict] = {}

    def verdict(a: ClassEntry, b: ClassEntry) -> DominanceVerdict:
        got = verdicts.get((a.key, b.key))
        if got is None:
            got = _verdict(a, b)
            verdicts[(a.key, b.key)] = got
            verdicts[(b.key, a.key)] = DominanceVerdict(
                {DOMINATES: DOMINATED_BY, DOMINATED_BY: DOMINATES}.get(
                    got.relation, got.relation
                ),
                first_wins_at=got.second_wins_at,
                second_wins_at=got.first_wins_at,
            )
        return got

    champion = frontier[0]
    for entry in frontier[1:]:
        if verdict(champion, entry).relation != DOMINATES:
            champion = entry
    if all(
        entry is champion or verdict(champion, entry).relation == DOMINATES
        for entry in frontier
    ):
        return OptimalityReport(
            n=n,
            m=m,
            mode=mode,
            exists=True,
            witness=champion,
            refutations=(),
            class_count=class_count,
            polynomial_count=len(entries),
        )

    maximal = [
        c
        for c in frontier
        if not any(
            other is not c and verdict(other, c).relation == DOMINATES
            for other in frontier
        )
    ]
    refutations = []
    for candidate in maximal:
        for other in frontier:
            if other is candidate:
                continue
            v = verdict(candidate, other)
            if v.relation == INCOMPARABLE:
                refutations.append(
                    Refutation(candidate=candidate, beater=other, point=v.second_wins_at)
                )
                break
        else:
            raise AssertionError("maximal non-greatest candidate must be beaten somewhere")
    return OptimalityReport(
        n=n,
        m=m,
        mode=mode,
        exists=False,
        witness=None,
        refutations=tuple(refutations),
        class_count=class_count,
        polynomial_count=len(entries),
    )


def _graph_polynomials_local(
    task: tuple[Multigraph, bool], cache: EngineCache
) -> list[tuple[TerminalPair, IntPolynomial]]:
    graph, use_orbits = task
    return [
        (tp, split_rel_factoring(graph, tp, cache=cache))
        for tp in enumerate_terminal_classes(graph, use_orbits=use_orbits)
    ]


# -- existence grids ----------------------------------------------------------


def expected_exists(n: int, m: int, mode: str) -> Optional[bool]:
    """The known existence classification; None where it is open.

    Multigraphs: an optimal (n, m) graph exists iff n <= 3, m = n - 1, or
    n = m = 4.  Simple graphs: always for n <= 5; for n = 6 except
    m in {6, 8}; for n = 7 iff m = 6 or 14 <= m <= 21; and always when
    m is n - 1, the maximum, or one below the maximum.
    """
    if mode == "multi":
        return n <= 3 or m == n - 1 or (n, m) == (4, 4)
    top = n * (n - 1) // 2
    if m == n - 1 or m >= top - 1:
        return True
    if n <= 5:
        return True
    if n == 6:
        return m not in (6, 8)
    if n == 7:
        return m == 6 or 14 <= m <= 21
    return None


@dataclass(frozen=True)
class GridRow:
    n: int
    m: int
    exists: bool
    expected: Optional[bool]
    agrees: bool


@dataclass(frozen=True)
class GridReport:
    mode: str
    rows: tuple[GridRow, ...]
    all_match: bool


def default_m_range(n: int, mode: str) -> tuple[int, int]:
    """Grid defaults: multigraph sweeps n-1..n+3, simple sweeps the full
    range n-1..C(n,2)."""
    if mode == "multi":
        return n - 1, n + 3
    return n - 1, n * (n - 1) // 2


def verify_existence_grid(
    mode: str,
    n_lo: int,
    n_hi: int,
    m_lo: Optional[int] = None,
    m_hi: Optional[int] = None,
    *,
    use_orbits: bool = True,
    workers: int = 1,
    cache: Optional[EngineCache] = None,
) -> GridReport:
    """Run find_optimal over a grid and diff the verdicts against the known
    classification.  Rows with an open expected value always agree."""
    if cache is None:
        cache = EngineCache()
    rows = []
    for n in range(n_lo, n_hi + 1):
        lo, hi = default_m_range(n, mode)
        if m_lo is not None:
            lo = max(lo, m_lo)
        if m_hi is not None:
            hi = min(hi, m_hi)
        for m in range(lo, hi + 1):
            report = find_optimal(
                n, m, mode, use_orbits=use_orbits, workers=workers, cache=cache
            )
            expected = expected_exists(n, m, mode)
            rows.append(
                GridRow(
                    n=n,
                    m=m,
                    exists=report.exists,
                    expected=expected,
                    agrees=expected is None or report.exists == expected,
                )
            )
    return GridReport(mode=mode, rows=tuple(rows), all_match=all(r.agrees for r in rows))
