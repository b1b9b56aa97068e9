"""Exact integer polynomials in the edge probability p, conversion to and
from the state basis p^i (1-p)^(m-i), and rigorous sign classification on
the open interval (0, 1).

All verdict-relevant arithmetic is exact: integer coefficients, Fraction
evaluation, Sturm sequences over rationals.  Floating point never appears
on any decision path.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Optional, Sequence

from .errors import BasisError, PolynomialFormatError


class IntPolynomial:
    """Immutable polynomial with exact integer coefficients.

    Coefficients are stored ascending by power with no trailing zeros;
    the zero polynomial has an empty coefficient tuple.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()) -> None:
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    # -- structure ---------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other: object) -> bool:
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"IntPolynomial({to_text(self)!r})"

    # -- ring operations -----------------------------------------------------

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPolynomial(out)

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(-c for c in self.coeffs)

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial(c * other for c in self.coeffs)
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return ZERO
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "IntPolynomial":
        if k < 0:
            raise ValueError("negative powers are not defined")
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def evaluate(self, x) -> Fraction:
        """Exact Horner evaluation at a rational (or integer) point."""
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc


ZERO = IntPolynomial()
ONE = IntPolynomial((1,))
P = IntPolynomial((0, 1))
ONE_MINUS_P = IntPolynomial((1, -1))


@lru_cache(maxsize=256)
def one_minus_p_power(k: int) -> IntPolynomial:
    """(1 - p)^k expanded."""
    return IntPolynomial([comb(k, i) * (-1) ** i for i in range(k + 1)])


def p_mix(contracted: IntPolynomial, deleted: IntPolynomial) -> IntPolynomial:
    """p * contracted + (1 - p) * deleted, fused for the factoring engines."""
    a, b = contracted.coeffs, deleted.coeffs
    out = [0] * (max(len(a) + 1, len(b) + 1))
    for i, c in enumerate(a):
        out[i + 1] += c
    for i, c in enumerate(b):
        out[i] += c
        out[i + 1] -= c
    return IntPolynomial(out)


# -- state basis -------------------------------------------------------------


@dataclass(frozen=True)
class NVector:
    """Operational-state counts for a measure on a graph with m edges.

    ``counts`` lists N_{n-2}, ..., N_m for the associated vertex count n
    (so n is implied by m and the length).  Entries are nonnegative.
    """

    m: int
    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.m < 0:
            raise BasisError(f"edge count m = {self.m} must be nonnegative")
        if any(c < 0 for c in self.counts):
            raise BasisError(f"negative state count in {self.counts}")
        if len(self.counts) > self.m + 1:
            raise BasisError(
                f"{len(self.counts)} counts cannot fit sizes up to m = {self.m}"
            )

    @property
    def implied_n(self) -> int:
        """Vertex count for which this is the N_{n-2}..N_m listing."""
        return self.m - len(self.counts) + 3

    def trimmed(self) -> tuple[int, ...]:
        """Counts without trailing zeros (entries above m - c vanish)."""
        out = list(self.counts)
        while out and out[-1] == 0:
            out.pop()
        return tuple(out)


def state_polynomial(m: int, counts_by_size: Sequence[int]) -> IntPolynomial:
    """Sum of counts[i] * p^i * (1-p)^(m-i) over all sizes i."""
    acc = ZERO
    for i, c in enumerate(counts_by_size):
        if c == 0:
            continue
        term = one_minus_p_power(m - i) * c
        shifted = IntPolynomial([0] * i + list(term.coeffs))
        acc = acc + shifted
    return acc


def from_nvector(nv: NVector, n: int) -> IntPolynomial:
    """Standard-basis expansion of sum N_i p^i (1-p)^(m-i), i = n-2 .. m."""
    lo = n - 2
    if lo < 0:
        raise BasisError(f"vertex count n = {n} must be at least 2")
    expected = max(0, nv.m - lo + 1)
    if len(nv.counts) != expected:
        raise BasisError(
            f"expected {expected} counts for n = {n}, m = {nv.m}, "
            f"got {len(nv.counts)}"
        )
    full = [0] * min(lo, nv.m + 1) + list(nv.counts)
    return state_polynomial(nv.m, full)


def to_nvector(f: IntPolynomial, n: int, m: int) -> NVector:
    """Invert the state-basis expansion (the change of basis is triangular
    and exact).  Raises if f is not a valid state polynomial for (n, m):
    degree above m, a negative solved count, or support below n-2.
    """
    if n < 2:
        raise BasisError(f"vertex count n = {n} must be at least 2")
    if f.degree > m:
        raise BasisError(f"degree {f.degree} exceeds edge count m = {m}")
    coeffs = list(f.coeffs) + [0] * (m + 1 - len(f.coeffs))
    solved = [0] * (m + 1)
    for j in range(m + 1):
        acc = coeffs[j]
        for i in range(j):
            if solved[i]:
                acc -= solved[i] * ((-1) ** (j - i)) * comb(m - i, j - i)
        solved[j] = acc
    lo = n - 2
    for i in range(min(lo, m + 1)):
        if solved[i] != 0:
            raise BasisError(
                f"nonzero state count N_{i} = {solved[i]} below n - 2 = {lo}"
            )
    for i in range(lo, m + 1):
        if solved[i] < 0:
            raise BasisError(f"negative state count N_{i} = {solved[i]}")
    return NVector(m, tuple(solved[lo:]))


# -- text form ---------------------------------------------------------------


def to_text(f: IntPolynomial) -> str:
    """Render in descending powers, e.g. ``-6*p^5 + 20*p^4 - 22*p^3 + 8*p^2``."""
    if f.is_zero():
        return "0"
    parts: list[str] = []
    for k in range(f.degree, -1, -1):
        c = f.coeffs[k]
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        elif k == 1:
            body = "p" if mag == 1 else f"{mag}*p"
        else:
            body = f"p^{k}" if mag == 1 else f"{mag}*p^{k}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


_TERM_RE = re.compile(r"^([+-]?)(\d+)?(\*?p(\^(\d+))?)?$")


def from_text(text: str) -> IntPolynomial:
    """Parse the rendering produced by :func:`to_text` (bit-exact round trip)."""
    compact = text.replace(" ", "")
    if not compact:
        raise PolynomialFormatError("empty polynomial text")
    if compact == "0":
        return ZERO
    terms = re.findall(r"[+-]?[^+-]+", compact)
    if "".join(terms) != compact:
        raise PolynomialFormatError(f"cannot tokenize polynomial text {text!r}")
    coeffs: dict[int, int] = {}
    for term in terms:
        match = _TERM_RE.match(term)
        if not match or (match.group(2) is None and match.group(3) is None):
            raise PolynomialFormatError(f"bad term {term!r} in {text!r}")
        sign = -1 if match.group(1) == "-" else 1
        mag = int(match.group(2)) if match.group(2) is not None else 1
        if match.group(3) is None:
            power = 0
        elif match.group(5) is not None:
            power = int(match.group(5))
        else:
            power = 1
        coeffs[power] = coeffs.get(power, 0) + sign * mag
    out = [0] * (max(coeffs) + 1)
    for k, c in coeffs.items():
        out[k] = c
    return IntPolynomial(out)


# -- sign classification on (0, 1) -------------------------------------------


class SignTag(Enum):
    IDENTICALLY_ZERO = "identically_zero"
    POSITIVE = "positive_on_open"
    NEGATIVE = "negative_on_open"
    NONNEGATIVE_WITH_ZEROS = "nonnegative_with_zeros"
    NONPOSITIVE_WITH_ZEROS = "nonpositive_with_zeros"
    MIXED = "mixed"


@dataclass(frozen=True)
class IntervalSign:
    """Sign classification of a polynomial on the open interval (0, 1).

    Witnesses are rationals strictly inside (0, 1) where the polynomial
    takes the corresponding strict sign; MIXED carries both.
    """

    tag: SignTag
    positive_witness: Optional[Fraction] = None
    negative_witness: Optional[Fraction] = None


# Rational polynomials are plain coefficient lists (ascending, normalized).


def _norm(xs: list[Fraction]) -> list[Fraction]:
    while xs and xs[-1] == 0:
        xs.pop()
    return xs


def _deriv(xs: Sequence[Fraction]) -> list[Fraction]:
    return _norm([xs[i] * i for i in range(1, len(xs))])


def _eval(xs: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(xs):
        acc = acc * x + c
    return acc


def _divmod_poly(a: Sequence[Fraction], b: Sequence[Fraction]):
    a = list(a)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    inv = 1 / b[-1]
    for k in range(len(a) - len(b), -1, -1):
        coef = a[k + len(b) - 1] * inv
        q[k] = coef
        if coef:
            for i, bc in enumerate(b):
                a[k + i] -= coef * bc
    return _norm(q), _norm(a)


def _monic(xs: list[Fraction]) -> list[Fraction]:
    if not xs:
        return xs
    lead = xs[-1]
    return [c / lead for c in xs]


def _gcd_poly(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    a, b = _norm(list(a)), _norm(list(b))
    while b:
        _, r = _divmod_poly(a, b)
        a, b = b, r
    return _monic(a)


def _mul_poly(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _norm(out)


def _sub_poly(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    out = [
        (a[k] if k < len(a) else Fraction(0)) - (b[k] if k < len(b) else Fraction(0))
        for k in range(max(len(a), len(b)))
    ]
    return _norm(out)


def _squarefree_decomposition(xs: list[Fraction]) -> list[tuple[list[Fraction], int]]:
    """Yun's algorithm: monic squarefree factors with their multiplicities."""
    f = _monic(_norm(list(xs)))
    if len(f) <= 1:
        return []
    df = _deriv(f)
    g = _gcd_poly(f, df)
    if len(g) <= 1:
        return [(f, 1)]
    out: list[tuple[list[Fraction], int]] = []
    w, _ = _divmod_poly(f, g)
    y, _ = _divmod_poly(df, g)
    z = _sub_poly(y, _deriv(w))
    i = 1
    while len(w) > 1:
        gi = _gcd_poly(w, z)
        if len(gi) > 1:
            out.append((gi, i))
        w, _ = _divmod_poly(w, gi)
        y, _ = _divmod_poly(z, gi)
        z = _sub_poly(y, _deriv(w))
        i += 1
    return out


def _sturm_chain(xs: list[Fraction]) -> list[list[Fraction]]:
    chain = [_norm(list(xs)), _deriv(xs)]
    while chain[-1]:
        _, r = _divmod_poly(chain[-2], chain[-1])
        chain.append([-c for c in r])
    chain.pop()
    return chain


def _variations(values: Iterable[Fraction]) -> int:
    signs = [1 if v > 0 else -1 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _count_roots_open(chain: list[list[Fraction]], a: Fraction, b: Fraction) -> int:
    """Distinct roots of a squarefree polynomial in (a, b); requires the
    polynomial to be nonzero at both endpoints."""
    va = _variations(_eval(g, a) for g in chain)
    vb = _variations(_eval(g, b) for g in chain)
    return va - vb


def _strip_interval_endpoints(f: IntPolynomial) -> IntPolynomial:
    """Divide out all p and (1-p) factors; they are positive inside (0, 1)."""
    coeffs = list(f.coeffs)
    lo = 0
    while coeffs[lo] == 0:
        lo += 1
    coeffs = coeffs[lo:]
    while sum(coeffs) == 0:
        # exact division by (1 - p): q_i = h_i + q_{i-1}
        q = []
        acc = 0
        for c in coeffs[:-1]:
            acc += c
            q.append(acc)
        coeffs = q
    return IntPolynomial(coeffs)


def _pick_nonroot(h: list[Fraction], a: Fraction, b: Fraction) -> Fraction:
    """Deterministic point strictly inside (a, b) where h does not vanish."""
    mid = (a + b) / 2
    if _eval(h, mid) != 0:
        return mid
    d = max(len(h), 2)
    for k in range(1, d + 2):
        x = a + (b - a) * Fraction(k, d + 2)
        if a < x < b and _eval(h, x) != 0:
            return x
    raise AssertionError("no root-free sample point found")  # degree bound makes this unreachable


def _isolate_one_sign_change(
    h: list[Fraction], odd_chain: list[list[Fraction]]
) -> tuple[Fraction, Fraction]:
    """Interval (a, b) strictly inside (0, 1), endpoints not roots of h,
    containing exactly one odd-multiplicity root, so sign(h(a)) != sign(h(b))."""
    zero, one = Fraction(0), Fraction(1)
    stack = [(zero, one)]
    found = None
    while stack:
        a, b = stack.pop()
        cnt = _count_roots_open(odd_chain, a, b)
        if cnt == 0:
            continue
        if cnt == 1:
            found = (a, b)
            break
        mid = _pick_nonroot(h, a, b)
        stack.append((a, mid))
        stack.append((mid, b))
    if found is None:
        raise AssertionError("sign-change isolation failed")  # caller guarantees a root
    a, b = found
    while a == 0 or b == 1:
        mid = _pick_nonroot(h, a, b)
        if _count_roots_open(odd_chain, a, mid) == 1:
            b = mid
        else:
            a = mid
    return a, b


def sign_on_unit_interval(f: IntPolynomial) -> IntervalSign:
    """Classify the sign of f on the open interval (0, 1), exactly.

    Sign changes can only happen at odd-multiplicity roots; those are
    counted by Sturm's theorem on the odd part of the squarefree
    decomposition.  Interior even-multiplicity roots downgrade a strict
    sign to the with-zeros variants.
    """
    if f.is_zero():
        return IntervalSign(SignTag.IDENTICALLY_ZERO)

    h = _strip_interval_endpoints(f)
    hf = [Fraction(c) for c in h.coeffs]

    odd: list[Fraction] = [Fraction(1)]
    even: list[Fraction] = [Fraction(1)]
    for factor, mult in _squarefree_decomposition(hf):
        if mult % 2:
            odd = _mul_poly(odd, factor)
        else:
            even = _mul_poly(even, factor)

    odd_roots = 0
    odd_chain: list[list[Fraction]] = []
    if len(odd) > 1:
        odd_chain = _sturm_chain(odd)
        odd_roots = _count_roots_open(odd_chain, Fraction(0), Fraction(1))

    if odd_roots > 0:
        a, b = _isolate_one_sign_change(hf, odd_chain)
        va, vb = f.evaluate(a), f.evaluate(b)
        if va > 0 and vb < 0:
            return IntervalSign(SignTag.MIXED, positive_witness=a, negative_witness=b)
        if va < 0 and vb > 0:
            return IntervalSign(SignTag.MIXED, positive_witness=b, negative_witness=a)
        raise AssertionError("isolated interval did not bracket a sign change")

    # No sign change: the sign is constant away from even-multiplicity zeros.
    d = max(f.degree, 0)
    sample = None
    for k in range(1, d + 2):
        x = Fraction(k, d + 2)
        if _eval(hf, x) != 0:
            sample = x
            break
    assert sample is not None  # a degree-d polynomial has at most d roots
    value = f.evaluate(sample)

    even_roots = 0
    if len(even) > 1:
        even_roots = _count_roots_open(_sturm_chain(even), Fraction(0), Fraction(1))

    if value > 0:
        tag = SignTag.NONNEGATIVE_WITH_ZEROS if even_roots else SignTag.POSITIVE
        return IntervalSign(tag, positive_witness=sample)
    tag = SignTag.NONPOSITIVE_WITH_ZEROS if even_roots else SignTag.NEGATIVE
    return IntervalSign(tag, negative_witness=sample)
