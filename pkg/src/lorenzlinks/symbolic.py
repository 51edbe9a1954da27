"""
Symbolic dynamics of Lorenz maps.

Words over {L, R} stand for both the finite sequence ``w0...w(k-1)0`` and the
periodic sequence ``(w0...w(k-1))^inf``.  The terminator ``0`` is never
stored; it only appears as a sentinel inside :func:`cmp_finite`, where the
order is ``L < 0 < R``.

Two orderings coexist on purpose.  Admissibility is decided on the finite
representation with strict inequalities, which accepts pairs such as
``(LR, RL)`` whose periodic extensions are shifts of each other.  Braid
construction needs the periodic order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property

from .errors import (
    ConsistencyError,
    DegeneratePairError,
    InadmissibleError,
    ResourceCapError,
    WordParseError,
)

DEFAULT_LENGTH_CAP = 10**6

_SENTINEL_RANK = {"L": 0, "0": 1, "R": 2}
_WORD_RE = re.compile(r"[LR]+0?")


@dataclass(frozen=True)
class Word:
    """Nonempty word over {L, R}.  Integer indexing is cyclic."""

    letters: str

    def __post_init__(self):
        if not self.letters or set(self.letters) - {"L", "R"}:
            raise WordParseError(f"not a word over {{L,R}}: {self.letters!r}")

    def __len__(self) -> int:
        return len(self.letters)

    def __getitem__(self, p: int) -> str:
        return self.letters[p % len(self.letters)]

    def __iter__(self):
        return iter(self.letters)

    def __str__(self) -> str:
        return self.letters

    def __repr__(self) -> str:
        return f"Word({self.letters!r})"

    def __add__(self, other: Word) -> Word:
        return Word(self.letters + other.letters)

    def rotate(self, p: int) -> Word:
        p %= len(self)
        return Word(self.letters[p:] + self.letters[:p])

    @cached_property
    def n_L(self) -> int:
        return self.letters.count("L")

    @cached_property
    def n_R(self) -> int:
        return self.letters.count("R")


def parse_word(text: str) -> Word:
    """Parse ``/[LR]+0?/``; a trailing terminator is dropped."""
    if not text:
        raise WordParseError("empty word")
    if not _WORD_RE.fullmatch(text):
        bad = next((c for c in text if c not in "LR0"), None)
        if bad is not None:
            raise WordParseError(f"illegal character {bad!r} in {text!r}")
        if text == "0":
            raise WordParseError("empty word")
        raise WordParseError(f"'0' may only appear in final position: {text!r}")
    return Word(text.rstrip("0"))


def _sign(a, b) -> int:
    return (a > b) - (a < b)


def cmp_periodic(a: Word, shift_a: int, b: Word, shift_b: int) -> int:
    """Compare ``s^shift_a(a^inf)`` with ``s^shift_b(b^inf)``.

    Returns -1, 0 or 1.  Two periodic sequences that agree on their first
    ``|a| + |b|`` symbols are identical (Fine-Wilf), so that many positions
    decide the comparison.
    """
    ka, kb = len(a), len(b)
    sa, sb = a.letters, b.letters
    for t in range(ka + kb):
        x = sa[(shift_a + t) % ka]
        y = sb[(shift_b + t) % kb]
        if x != y:
            return -1 if x == "L" else 1
    return 0


def cmp_finite(a: Word | str, b: Word | str) -> int:
    """Compare ``a0`` with ``b0`` as terminated finite sequences."""
    sa = str(a) + "0"
    sb = str(b) + "0"
    for x, y in zip(sa, sb):
        if x != y:
            return _sign(_SENTINEL_RANK[x], _SENTINEL_RANK[y])
    # both end in the sentinel, so a tie means equal strings
    return 0


def is_primitive(w: Word) -> bool:
    """True iff ``w`` is not a proper power of a shorter word."""
    s = w.letters
    # s is a proper power iff it occurs inside s+s at an offset other than 0 and |s|
    return (s + s).find(s, 1) == len(s)


def is_rotation(a: Word, b: Word) -> bool:
    return len(a) == len(b) and a.letters in b.letters + b.letters


def is_maximal(w: Word) -> bool:
    s = w.letters
    if s[0] != "L":
        return False
    return all(cmp_finite(s[i:], s) < 0 for i in range(1, len(s)) if s[i] == "L")


def is_minimal(w: Word) -> bool:
    s = w.letters
    if s[0] != "R":
        return False
    return all(cmp_finite(s[i:], s) > 0 for i in range(1, len(s)) if s[i] == "R")


@dataclass(frozen=True)
class Violation:
    """First failed admissibility condition.

    ``word`` is ``"X"`` or ``"Y"``; ``index`` is the shift that fails, or
    ``None`` when a first-symbol rule fails.
    """

    word: str
    index: int | None
    requirement: str

    def __str__(self) -> str:
        if self.index is None:
            return f"inadmissible: {self.requirement}"
        return f"inadmissible: {self.word}[{self.index}] requires {self.requirement}"


def find_violation(x: Word, y: Word) -> Violation | None:
    """Return the first failed admissibility condition for ``(x, y)``, if any."""
    if x[0] != "L":
        return Violation("X", None, "X0 = L")
    if y[0] != "R":
        return Violation("Y", None, "Y0 = R")
    xs, ys = x.letters, y.letters
    for name, z in (("X", xs), ("Y", ys)):
        for i in range(1, len(z)):
            tail = z[i:]
            if z[i] == "L" and cmp_finite(tail, xs) >= 0:
                return Violation(name, i, f"s^{i}({name}) = {tail}0 < X = {xs}0")
            if z[i] == "R" and cmp_finite(tail, ys) <= 0:
                return Violation(name, i, f"s^{i}({name}) = {tail}0 > Y = {ys}0")
    return None


def tail_length(x: Word, y: Word) -> int:
    """Length of the common (cyclic) suffix of ``x`` and ``y``.

    Terminates within ``|x| + |y|`` steps for any admissible pair since
    ``x0 != y0``.
    """
    kx, ky = len(x), len(y)
    for i in range(kx + ky + 1):
        if x[kx - 1 - i] != y[ky - 1 - i]:
            return i
    raise ConsistencyError(f"no differing suffix symbol in ({x}, {y})")


@dataclass(frozen=True)
class KneadingPair:
    """Admissible pair ``(X, Y)``.  Build it with :func:`check_admissible`."""

    X: Word
    Y: Word
    m: int
    tail_symbol: str
    degenerate: bool

    def __str__(self) -> str:
        return f"{self.X},{self.Y}"

    @property
    def lengths(self) -> tuple[int, int]:
        return len(self.X), len(self.Y)


def check_admissible(x: Word, y: Word) -> KneadingPair:
    """Validate ``(x, y)`` and return the pair with its cached quantities.

    Raises :class:`InadmissibleError` naming the first violated condition.
    """
    violation = find_violation(x, y)
    if violation is not None:
        raise InadmissibleError(violation)
    m = tail_length(x, y)
    return KneadingPair(
        X=x,
        Y=y,
        m=m,
        tail_symbol=x[len(x) - m - 1],
        degenerate=is_rotation(x, y),
    )


def parse_pair(text: str) -> KneadingPair:
    parts = text.split(",")
    if len(parts) != 2:
        raise WordParseError(f"expected 'X,Y', got {text!r}")
    return check_admissible(parse_word(parts[0].strip()), parse_word(parts[1].strip()))


def substitute(x: Word, y: Word, u: Word) -> Word:
    """Replace each L of ``u`` by ``x`` and each R by ``y``; no admissibility check."""
    xs, ys = x.letters, y.letters
    return Word("".join(xs if c == "L" else ys for c in u.letters))


def star(pair: KneadingPair, u: Word) -> Word:
    return substitute(pair.X, pair.Y, u)


def star_pair(pair: KneadingPair, inner: KneadingPair) -> KneadingPair:
    a, b = star(pair, inner.X), star(pair, inner.Y)
    try:
        return check_admissible(a, b)
    except InadmissibleError as exc:
        raise ConsistencyError(
            f"({pair})*({inner}) failed admissibility: {exc.violation}"
        ) from exc


def star_power_lengths(pair: KneadingPair, inner: KneadingPair, n: int) -> tuple[int, int]:
    """Component lengths of ``star_power(pair, inner, n)`` without expanding."""
    lx, ly = pair.lengths
    for _ in range(n):
        lx, ly = (
            inner.X.n_L * lx + inner.X.n_R * ly,
            inner.Y.n_L * lx + inner.Y.n_R * ly,
        )
    return lx, ly


def star_power(
    pair: KneadingPair,
    inner: KneadingPair,
    n: int,
    length_cap: int = DEFAULT_LENGTH_CAP,
) -> KneadingPair:
    """Left-iterated product ``(X, Y) * inner * ... * inner`` (``n`` factors)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    total = sum(star_power_lengths(pair, inner, n))
    if total > length_cap:
        raise ResourceCapError(
            f"star power of length {total} exceeds the cap of {length_cap} symbols"
        )
    result = pair
    for _ in range(n):
        result = star_pair(result, inner)
    return result


def counts(w: Word) -> tuple[int, int]:
    return w.n_L, w.n_R


def trip_number(w: Word) -> int:
    """Number of cyclic L -> R transitions in ``w``."""
    s = w.letters
    return s.count("LR") + (s[-1] == "L" and s[0] == "R")


@dataclass(frozen=True)
class SignCase:
    """One of the four sign cases, keyed by the tail symbols of outer and inner pair.

    =====  ===========  ===========
    case   outer tail   inner tail
    =====  ===========  ===========
    1      L            L
    2      L            R
    3      R            L
    4      R            R
    =====  ===========  ===========
    """

    case_id: int

    def a(self, i: int, n: int) -> int:
        if self.case_id == 1:
            return 1
        if self.case_id == 2:
            return (-1) ** (i + n)
        if self.case_id == 3:
            return -1
        return (-1) ** (i + n + 1)

    def alpha(self, n: int) -> int:
        if self.case_id == 1:
            return 1
        if self.case_id == 2:
            return (-1) ** (n + 1)
        if self.case_id == 3:
            return -1
        return (-1) ** n

    def tail_symbol(self, n: int) -> str:
        """Predicted tail symbol of the ``n``-th iterated product."""
        if self.case_id == 1:
            return "L"
        if self.case_id == 2:
            return "L" if n % 2 == 0 else "R"
        if self.case_id == 3:
            return "R"
        return "L" if n % 2 == 1 else "R"


_CASES = {("L", "L"): 1, ("L", "R"): 2, ("R", "L"): 3, ("R", "R"): 4}


def sign_case(outer: KneadingPair, inner: KneadingPair) -> SignCase:
    for p in (outer, inner):
        if p.degenerate:
            raise DegeneratePairError(f"pair ({p}) is degenerate")
    return SignCase(_CASES[outer.tail_symbol, inner.tail_symbol])
