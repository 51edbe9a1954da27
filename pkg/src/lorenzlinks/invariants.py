"""
Closed-form invariants of links generated by renormalizable kneading pairs.

Every formula takes the invariants of the factors (crossings, linking and
trip numbers of ``(X, Y)`` and of the inner pair) and predicts the
invariants of the product without building its braid.  The factor
invariants themselves come from :mod:`lorenzlinks.braid`.

All arithmetic uses Python integers, so values never wrap no matter how
large ``n`` gets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .braid import OrbitSet, all_linking, lorenz_braid, self_crossings
from .errors import ConsistencyError, DegeneratePairError, NotAKnotError
from .symbolic import (
    KneadingPair,
    SignCase,
    Word,
    is_primitive,
    sign_case,
    star,
    trip_number,
)

Matrix = list[list[int]]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    return [
        [sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))]
        for i in range(len(a))
    ]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def mat_pow(a: Matrix, n: int) -> Matrix:
    if n < 0:
        raise ValueError("negative matrix power")
    result = identity(len(a))
    base = a
    while n:
        if n & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        n >>= 1
    return result


def mat_add(a: Matrix, b: Matrix, scale: int = 1) -> Matrix:
    return [[x + scale * y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def row_times(v: list[int], a: Matrix) -> list[int]:
    return [sum(v[k] * a[k][j] for k in range(len(v))) for j in range(len(a[0]))]


def dot(u: list[int], v: list[int]) -> int:
    return sum(x * y for x, y in zip(u, v))


def _require_nondegenerate(*pairs: KneadingPair) -> None:
    for p in pairs:
        if p.degenerate:
            raise DegeneratePairError(
                f"pair ({p}) is degenerate: closed forms need s^n(X) != Y for all n"
            )


@dataclass(frozen=True)
class InvariantVector:
    c_X: int
    c_Y: int
    l_XY: int

    def as_row(self) -> list[int]:
        return [self.c_X, self.c_Y, self.l_XY]

    @property
    def total(self) -> int:
        """Crossings of the two-component link."""
        return self.c_X + self.c_Y + self.l_XY


@lru_cache(maxsize=4096)
def _link_vector(x: Word, y: Word) -> InvariantVector:
    br = lorenz_braid(OrbitSet((x, y)))
    both = br.crossings
    cx = self_crossings(br, 0)
    cy = self_crossings(br, 1)
    return InvariantVector(cx, cy, both - cx - cy)


@lru_cache(maxsize=4096)
def knot_crossings(w: Word) -> int:
    return lorenz_braid(OrbitSet((w,))).crossings


def invariant_vector(pair: KneadingPair) -> InvariantVector:
    """``[c(X), c(Y), l(X, Y)]`` read off the pair's braid."""
    _require_nondegenerate(pair)
    return _link_vector(pair.X, pair.Y)


@dataclass(frozen=True)
class CountMatrices:
    A33: Matrix
    B13: list[int]
    M2: Matrix


def count_matrices(inner: KneadingPair) -> CountMatrices:
    a, b = inner.X.n_L, inner.Y.n_L
    c, d = inner.X.n_R, inner.Y.n_R
    A33 = [
        [a * a, b * b, 2 * a * b],
        [c * c, d * d, 2 * c * d],
        [a * c, b * d, b * c + a * d],
    ]
    B13 = [(a + b) ** 2, (c + d) ** 2, (a + b) * (c + d)]
    return CountMatrices(A33, B13, [[a, b], [c, d]])


def _sign(pair: KneadingPair) -> int:
    return 1 if pair.tail_symbol == "L" else -1


def c_star(pair: KneadingPair, s: Word) -> int:
    """Crossing number of the knot ``(X, Y) * s``."""
    _require_nondegenerate(pair)
    v = invariant_vector(pair)
    nl, nr = s.n_L, s.n_R
    return v.c_X * nl**2 + v.c_Y * nr**2 + v.l_XY * nl * nr + _sign(pair) * knot_crossings(s)


def l_star(pair: KneadingPair, s: Word, w: Word) -> int:
    """Linking number of ``(X, Y) * s`` with ``(X, Y) * w``."""
    _require_nondegenerate(pair)
    v = invariant_vector(pair)
    inner_link = _link_vector(*OrbitSet((s, w)).words).l_XY
    return (
        2 * v.c_X * s.n_L * w.n_L
        + 2 * v.c_Y * s.n_R * w.n_R
        + v.l_XY * (w.n_L * s.n_R + w.n_R * s.n_L)
        + _sign(pair) * inner_link
    )


def c_star_pair(pair: KneadingPair, inner: KneadingPair) -> int:
    """Crossing number of the link ``(X, Y) * (S, W)``.

    The inner term is the total crossing count ``c(S) + c(W) + l(S, W)`` of
    the inner link.
    """
    _require_nondegenerate(pair, inner)
    v = invariant_vector(pair)
    mats = count_matrices(inner)
    return dot(v.as_row(), mats.B13) + _sign(pair) * invariant_vector(inner).total


def c_star_power(pair: KneadingPair, inner: KneadingPair, n: int) -> int:
    """Crossing number of the link ``(X, Y) * (S, W)^n``, ``n >= 1``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    case = sign_case(pair, inner)
    mats = count_matrices(inner)
    outer_v = invariant_vector(pair)
    inner_v = invariant_vector(inner)

    weighted = [[0] * 3 for _ in range(3)]
    power = identity(3)
    for i in range(n - 1):
        weighted = mat_add(weighted, power, case.a(i, n))
        power = mat_mul(power, mats.A33)
    # power is now A33^(n-1)
    row = [
        p + q
        for p, q in zip(row_times(outer_v.as_row(), power), row_times(inner_v.as_row(), weighted))
    ]
    return dot(row, mats.B13) + case.alpha(n) * inner_v.total


def string_index_power(pair: KneadingPair, inner: KneadingPair, n: int) -> int:
    """Strand count of the braid of ``(X, Y) * (S, W)^n``.

    Degenerate pairs are fine here: the count is the total word length.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    m2 = count_matrices(inner).M2
    row = row_times([len(pair.X), len(pair.Y)], mat_pow(m2, n))
    return row[0] + row[1]


def trip_star(pair: KneadingPair, s: Word) -> int:
    """Trip number of ``(X, Y) * s``.

    The correction term depends on the *last* symbols of X and Y, not on the
    tail symbol.
    """
    x, y = pair.X, pair.Y
    t = s.n_L * trip_number(x) + s.n_R * trip_number(y)
    if x[-1] != y[-1]:
        t += (1 if x[-1] == "L" else -1) * trip_number(s)
    return t


def _trip_coefficient(case: SignCase, i: int, n: int) -> int:
    if case.case_id == 1:
        return 1
    if case.case_id == 2:
        return (-1) ** (i + n + 1)
    if case.case_id == 3:
        return -1
    return (-1) ** (i + n)


def trip_star_power(pair: KneadingPair, inner: KneadingPair, n: int) -> tuple[int, int]:
    """Trip numbers of the two components of ``(X, Y) * (S, W)^n``.

    These are ``t((X,Y)*(S,W)^(n-1)*S)`` and ``t((X,Y)*(S,W)^(n-1)*W)``.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    x, y, s, w = pair.X, pair.Y, inner.X, inner.Y
    m = [[s.n_L, s.n_R], [w.n_L, w.n_R]]
    t_outer = [trip_number(x), trip_number(y)]
    t_inner = [trip_number(s), trip_number(w)]

    def apply(mat, v):
        return [dot(mat[0], v), dot(mat[1], v)]

    if x[-1] == y[-1]:
        return tuple(apply(mat_pow(m, n), t_outer))

    if s[-1] != w[-1]:
        # both tails have length 0, so the tail symbols are the last symbols
        case = SignCase({("L", "L"): 1, ("L", "R"): 2, ("R", "L"): 3, ("R", "R"): 4}[x[-1], s[-1]])
        result = apply(mat_pow(m, n), t_outer)
        power = identity(2)
        for i in range(n):
            term = apply(power, t_inner)
            a = _trip_coefficient(case, i, n)
            result = [r + a * t for r, t in zip(result, term)]
            power = mat_mul(power, m)
        return tuple(result)

    sign = 1 if x[-1] == "L" else -1
    first = [v + sign * t for v, t in zip(apply(m, t_outer), t_inner)]
    return tuple(apply(mat_pow(m, n - 1), first))


def genus_from_braid(crossings: int, strands: int, components: int) -> int:
    """Genus of a positive braid closure, ``(C - N - u)/2 + 1``."""
    num = crossings - strands - components
    if num % 2:
        raise ConsistencyError(
            f"C - N - u = {num} is odd (C={crossings}, N={strands}, u={components})"
        )
    return num // 2 + 1


def genus_star_knot(pair: KneadingPair, s: Word) -> int:
    _require_nondegenerate(pair)
    if not is_primitive(star(pair, s)):
        raise NotAKnotError(f"({pair})*{s} is a proper power, not a knot")
    v = invariant_vector(pair)
    nl, nr = s.n_L, s.n_R
    num = (
        v.c_X * nl**2
        + v.c_Y * nr**2
        + v.l_XY * nl * nr
        - nl * len(pair.X)
        - nr * len(pair.Y)
        + 1
        + _sign(pair) * knot_crossings(s)
    )
    if num % 2:
        raise ConsistencyError(f"genus numerator {num} is odd")
    return num // 2


def genus_star_link(pair: KneadingPair, inner: KneadingPair) -> int:
    """Genus of the two-component link ``(X, Y) * (S, W)``.

    The sign of ``c(S) + c(W)`` follows the tail symbol ``X[|X| - m - 1]``,
    the same index every other formula uses.
    """
    _require_nondegenerate(pair, inner)
    v = invariant_vector(pair)
    s, w = inner.X, inner.Y
    num = (
        v.c_X * (s.n_L**2 + w.n_L**2)
        + v.c_Y * (s.n_R**2 + w.n_R**2)
        + v.l_XY * (s.n_L * s.n_R + w.n_L * w.n_R)
        + _sign(pair) * (knot_crossings(s) + knot_crossings(w))
        + l_star(pair, s, w)
        - (s.n_L + w.n_L) * len(pair.X)
        - (s.n_R + w.n_R) * len(pair.Y)
    )
    if num % 2:
        raise ConsistencyError(f"genus numerator {num} is odd")
    return num // 2


def genus_power(pair: KneadingPair, inner: KneadingPair, n: int) -> int:
    num = c_star_power(pair, inner, n) - string_index_power(pair, inner, n)
    if num % 2:
        raise ConsistencyError(f"genus numerator {num} is odd")
    return num // 2


@dataclass
class InvariantReport:
    """Exact invariants of one Lorenz link.

    ``braid_index`` is the total trip number; for Lorenz links the two agree.
    """

    string_index: int
    crossing_number: int
    components: int
    trip: list[int]
    genus: int
    linking: dict[tuple[int, int], int] = field(default_factory=dict)
    mode: str = "direct"

    @property
    def braid_index(self) -> int:
        return sum(self.trip)

    def values(self) -> dict:
        return {
            "strands": self.string_index,
            "crossings": self.crossing_number,
            "components": self.components,
            "trip": list(self.trip),
            "genus": self.genus,
            "linking": dict(self.linking),
        }


def direct_report(orbits: OrbitSet) -> InvariantReport:
    br = lorenz_braid(orbits)
    c = br.crossings
    return InvariantReport(
        string_index=br.n,
        crossing_number=c,
        components=len(orbits),
        trip=[trip_number(w) for w in orbits.words],
        genus=genus_from_braid(c, br.n, len(orbits)),
        linking=all_linking(br),
        mode="direct",
    )


def closed_form_knot_report(pair: KneadingPair, s: Word) -> InvariantReport:
    x_len, y_len = pair.lengths
    return InvariantReport(
        string_index=s.n_L * x_len + s.n_R * y_len,
        crossing_number=c_star(pair, s),
        components=1,
        trip=[trip_star(pair, s)],
        genus=genus_star_knot(pair, s),
        mode="closed-form",
    )


def crossing_vector_power(pair: KneadingPair, inner: KneadingPair, n: int) -> list[int]:
    """``[c(A), c(B), l(A, B)]`` for ``(A, B) = (X, Y) * (S, W)^n``.

    Unrolls ``v(k) = v(k-1) A33 +/- [c(S), c(W), l(S, W)]`` with the sign
    taken from the predicted tail symbol of the ``(k-1)``-th product.  The
    entries sum to :func:`c_star_power`.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    case = sign_case(pair, inner)
    a33 = count_matrices(inner).A33
    v = invariant_vector(pair).as_row()
    inner_row = invariant_vector(inner).as_row()
    for k in range(n):
        sign = 1 if case.tail_symbol(k) == "L" else -1
        v = [p + sign * q for p, q in zip(row_times(v, a33), inner_row)]
    return v


def closed_form_report(pair: KneadingPair, inner: KneadingPair, n: int = 1) -> InvariantReport:
    """Invariants of ``(X, Y) * (S, W)^n`` from the closed forms alone."""
    if n < 1:
        raise ValueError("n must be at least 1")
    linking = l_star(pair, inner.X, inner.Y) if n == 1 else crossing_vector_power(pair, inner, n)[2]
    return InvariantReport(
        string_index=string_index_power(pair, inner, n),
        crossing_number=c_star_power(pair, inner, n),
        components=2,
        trip=list(trip_star_power(pair, inner, n)),
        genus=genus_power(pair, inner, n),
        linking={(0, 1): linking},
        mode="closed-form",
    )
