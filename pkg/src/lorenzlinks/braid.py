"""
Lorenz braids of tuples of periodic words.

All shifts ``s^i(w)`` of all words are sorted in the periodic lexicographic
order; strand positions are the ranks, and each strand runs from the
position of ``s^i(w)`` to the position of ``s^(i+1)(w)``.  The result is a
simple positive braid, so every invariant here reduces to counting
inversions of its permutation.

Internally positions are 0-based numpy arrays.  Everything user facing
(``pi``, generator indices, ``phi``) is 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Sequence

import numpy as np

from .errors import DegeneratePairError, InvalidOrbitSetError
from .symbolic import KneadingPair, Word, is_primitive, is_rotation, star


@dataclass(frozen=True)
class OrbitSet:
    """Ordered tuple of primitive words, no two of them cyclic rotations."""

    words: tuple[Word, ...]

    def __post_init__(self):
        words = tuple(self.words)
        object.__setattr__(self, "words", words)
        if not words:
            raise InvalidOrbitSetError("an orbit set needs at least one word")
        for k, w in enumerate(words):
            if not is_primitive(w):
                raise InvalidOrbitSetError(
                    f"word {k} ({w}) is a proper power; its shifts repeat"
                )
        for a, b in combinations(range(len(words)), 2):
            if is_rotation(words[a], words[b]):
                raise InvalidOrbitSetError(
                    f"words {a} ({words[a]}) and {b} ({words[b]}) are rotations "
                    "of each other: duplicate shift sequences"
                )

    @classmethod
    def of(cls, *words: Word | str) -> OrbitSet:
        return cls(tuple(w if isinstance(w, Word) else Word(w) for w in words))

    def __len__(self) -> int:
        return len(self.words)

    @property
    def boundaries(self) -> list[int]:
        return list(np.cumsum([len(w) for w in self.words]))


def pair_orbits(pair: KneadingPair) -> OrbitSet:
    """Orbits carried by a pair: one knot if degenerate, two components otherwise."""
    if pair.degenerate:
        return OrbitSet((pair.X,))
    return OrbitSet((pair.X, pair.Y))


def _shift_ranks(words: Sequence[Word]) -> tuple[np.ndarray, np.ndarray]:
    """Dense ranks of every shift under the periodic order, by prefix doubling.

    Shifts are enumerated component by component, ``s^0 .. s^(k-1)``.
    Returns ``(ranks, successor)`` where ``successor[g]`` is the global index
    of the next shift in the same word.
    """
    lengths = np.array([len(w) for w in words], dtype=np.int64)
    starts = np.concatenate(([0], np.cumsum(lengths)[:-1]))
    total = int(lengths.sum())
    letters = np.frombuffer("".join(w.letters for w in words).encode(), dtype=np.uint8)
    _, rank = np.unique(letters, return_inverse=True)
    rank = rank.astype(np.int64)

    comp = np.repeat(np.arange(len(words)), lengths)
    local = np.arange(total) - starts[comp]
    successor = starts[comp] + (local + 1) % lengths[comp]

    # prefixes of length >= |a|+|b| separate distinct periodic sequences
    bound = 2 * int(lengths.max())
    jump = successor
    width = 1
    classes = int(rank.max()) + 1
    while width < bound and classes < total:
        key = rank * (total + 1) + rank[jump]
        _, rank = np.unique(key, return_inverse=True)
        rank = rank.astype(np.int64)
        new_classes = int(rank.max()) + 1
        jump = jump[jump]
        width *= 2
        if new_classes == classes:
            break
        classes = new_classes
    return rank, successor


@dataclass(frozen=True)
class LorenzBraid:
    """Simple positive braid of an orbit set.

    ``perm[p]`` is the 0-based target of the strand at 0-based position ``p``;
    ``components[p]`` is the word index that strand belongs to;
    ``positions[k][i]`` is the 0-based position of ``s^i(words[k])``.
    """

    orbits: OrbitSet
    perm: np.ndarray = field(repr=False)
    components: np.ndarray = field(repr=False)
    positions: tuple[np.ndarray, ...] = field(repr=False)

    @property
    def n(self) -> int:
        return len(self.perm)

    @property
    def pi(self) -> list[int]:
        """1-based image list."""
        return [int(v) + 1 for v in self.perm]

    @property
    def component_of(self) -> list[int]:
        return [int(c) for c in self.components]

    def phi(self, component: int, shift: int) -> int:
        """1-based position of ``s^shift(words[component])``."""
        w = self.orbits.words[component]
        return int(self.positions[component][shift % len(w)]) + 1

    @cached_property
    def word(self) -> list[int]:
        return braid_word(self.pi)

    @cached_property
    def crossings(self) -> int:
        return count_inversions(self.perm)

    def linking(self, a: int, b: int) -> int:
        return linking_number(self, a, b)


def sorted_shifts(orbits: OrbitSet) -> list[list[int]]:
    """1-based rank of each shift: ``result[k][i]`` ranks ``s^i(words[k])``.

    Following the usual convention ``s^k(w) = w``, entry ``i = 0`` is the
    word itself.
    """
    b = lorenz_braid(orbits)
    return [[int(p) + 1 for p in pos] for pos in b.positions]


def lorenz_braid(orbits: OrbitSet | Sequence[Word | str]) -> LorenzBraid:
    if not isinstance(orbits, OrbitSet):
        orbits = OrbitSet.of(*orbits)
    words = orbits.words
    rank, successor = _shift_ranks(words)
    if len(np.unique(rank)) != len(rank):
        # OrbitSet validation should make this unreachable
        dup = np.flatnonzero(np.bincount(rank) > 1)[0]
        where = np.flatnonzero(rank == dup)
        raise InvalidOrbitSetError(f"duplicate shift sequences at global indices {where.tolist()}")
    lengths = [len(w) for w in words]
    comp = np.repeat(np.arange(len(words)), lengths)
    perm = np.empty(len(rank), dtype=np.int64)
    perm[rank] = rank[successor]
    components = np.empty(len(rank), dtype=np.int64)
    components[rank] = comp
    offsets = np.concatenate(([0], np.cumsum(lengths)))
    positions = tuple(rank[offsets[k] : offsets[k + 1]] for k in range(len(words)))
    return LorenzBraid(orbits, perm, components, positions)


def lorenz_permutation(orbits: OrbitSet) -> list[int]:
    return lorenz_braid(orbits).pi


def count_inversions(values: Sequence[int] | np.ndarray) -> int:
    """Number of pairs ``i < j`` with ``values[i] > values[j]`` (values distinct).

    Bottom-up merge sort, each level vectorised across all blocks.
    """
    a = np.asarray(values, dtype=np.int64)
    n = len(a)
    if n < 2:
        return 0
    if n <= 64:
        return int(sum((a[i] > a[i + 1 :]).sum() for i in range(n - 1)))
    # compress to 0..n-1 then pad with larger increasing values (adds no inversions)
    a = np.argsort(np.argsort(a, kind="stable"), kind="stable")
    size = 1 << (n - 1).bit_length()
    a = np.concatenate((a, np.arange(n, size, dtype=np.int64)))
    total = 0
    width = 1
    while width < size:
        blocks = a.reshape(-1, 2, width)
        nb = blocks.shape[0]
        offset = (np.arange(nb, dtype=np.int64) * size)[:, None]
        left = (blocks[:, 0, :] + offset).ravel()
        right = blocks[:, 1, :] + offset
        # left elements <= x within the same block
        not_greater = np.searchsorted(left, right.ravel(), side="right").reshape(nb, width)
        not_greater -= (np.arange(nb, dtype=np.int64) * width)[:, None]
        total += int((width - not_greater).sum())
        a = np.sort(a.reshape(nb, 2 * width), axis=1).ravel()
        width *= 2
    return total


def braid_word(pi: Sequence[int]) -> list[int]:
    """Canonical positive word (1-based generators) for a simple braid.

    Repeated left-to-right passes of disjoint adjacent swaps wherever the
    left strand's target exceeds the right one's.  Every swap removes one
    inversion, so the length is the inversion count.
    """
    arr = list(pi)
    word = []
    n = len(arr)
    changed = True
    while changed:
        changed = False
        i = 0
        while i < n - 1:
            if arr[i] > arr[i + 1]:
                arr[i], arr[i + 1] = arr[i + 1], arr[i]
                word.append(i + 1)
                changed = True
                i += 2
            else:
                i += 1
    return word


def realized_permutation(word: Sequence[int], n: int) -> list[int]:
    """Apply a generator word to ``n`` strands; return 1-based final positions."""
    at = list(range(n))  # at[pos] = strand
    for g in word:
        at[g - 1], at[g] = at[g], at[g - 1]
    final = [0] * n
    for pos, strand in enumerate(at):
        final[strand] = pos + 1
    return final


def _as_braid(obj) -> LorenzBraid:
    return obj if isinstance(obj, LorenzBraid) else lorenz_braid(obj)


def crossing_number(orbits) -> int:
    return _as_braid(orbits).crossings


def self_crossings(orbits, a: int) -> int:
    b = _as_braid(orbits)
    return count_inversions(b.perm[b.components == a])


def linking_number(orbits, a: int, b: int) -> int:
    """Crossings between strands of components ``a`` and ``b`` (``a != b``)."""
    if a == b:
        raise ValueError("linking number needs two distinct components")
    br = _as_braid(orbits)
    both = count_inversions(br.perm[(br.components == a) | (br.components == b)])
    return both - self_crossings(br, a) - self_crossings(br, b)


def all_linking(orbits) -> dict[tuple[int, int], int]:
    br = _as_braid(orbits)
    k = len(br.orbits)
    return {(a, b): linking_number(br, a, b) for a, b in combinations(range(k), 2)}


@dataclass(frozen=True)
class TemplateWord:
    """Braided template word: the pair's braid on strips, closed by one branch chart."""

    strips: int
    sigmas: tuple[int, ...]
    branch: int
    sign: int

    @property
    def generators(self) -> list[tuple]:
        return [("sigma", i) for i in self.sigmas] + [("beta", self.branch, self.sign)]

    def __str__(self) -> str:
        parts = [f"sigma_{i}" for i in self.sigmas]
        parts.append(f"beta_{self.branch}" + ("" if self.sign > 0 else "^-"))
        return " ".join(parts)


def renorm_template(pair: KneadingPair) -> TemplateWord:
    """Renormalization subtemplate of an admissible pair."""
    br = lorenz_braid(pair_orbits(pair))
    j = br.phi(0, len(pair.X) - pair.m)
    return TemplateWord(
        strips=br.n,
        sigmas=tuple(br.word),
        branch=j,
        sign=1 if pair.tail_symbol == "L" else -1,
    )


@dataclass
class MainTheoremReport:
    passed: bool
    strands: int
    x_strip_population: int
    y_strip_population: int
    branch: int
    sign: int
    failures: list[str]

    def __str__(self) -> str:
        verdict = "pass" if self.passed else "FAIL"
        head = (
            f"{verdict}: {self.strands} strands, X-strips carry {self.x_strip_population}, "
            f"Y-strips carry {self.y_strip_population}, branch beta_{self.branch}"
            + ("" if self.sign > 0 else "^-")
        )
        return "\n".join([head, *self.failures])


def main_theorem_check(pair: KneadingPair, inner: OrbitSet) -> MainTheoremReport:
    """Verify the strip decomposition of the braid of ``(pair * Z for Z in inner)``.

    Each strand of the product braid is assigned the strip (shift of X or Y)
    it travels in.  Outside the common tail of X and Y a strand lies in the
    strip of its own letter block; inside the tail, where X and Y agree, it
    lies in the strip of the block that follows.  The check then confirms:

    * every X-strip holds exactly ``sum n_L(Z)`` consecutive strands and every
      Y-strip ``sum n_R(Z)``, laid out in the order of the pair's braid;
    * away from the branch chart, strips map onto their successors in parallel;
    * at the branch chart, taking the incoming X-strip before the incoming
      Y-strip, the strands are permuted exactly by the inner braid.  For the
      negative chart this is the strip swap absorbed by
      ``sigma_j beta_j^- = beta_j``.
    """
    if pair.degenerate:
        raise DegeneratePairError(f"pair ({pair}) is degenerate")
    X, Y, m = pair.X, pair.Y, pair.m
    sides = (X, Y)
    outer = lorenz_braid(pair_orbits(pair))
    products = OrbitSet(tuple(star(pair, z) for z in inner.words))
    big = lorenz_braid(products)
    inner_braid = lorenz_braid(inner)

    pop = (sum(z.n_L for z in inner.words), sum(z.n_R for z in inner.words))
    strip_order = np.argsort(np.concatenate(outer.positions))
    labels = [(w, p) for w in (0, 1) for p in range(len(sides[w]))]
    start = {}
    acc = 0
    for g in strip_order:
        lab = labels[g]
        start[lab] = acc
        acc += pop[lab[0]]

    failures = []
    if acc != big.n:
        failures.append(f"strip populations sum to {acc}, braid has {big.n} strands")

    strip_of = np.empty((big.n, 2), dtype=np.int64)
    for k, z in enumerate(inner.words):
        pos = big.positions[k]
        i = 0
        for b, u in enumerate(z.letters):
            w = 0 if u == "L" else 1
            lw = len(sides[w])
            nxt = 0 if z[b + 1] == "L" else 1
            for p in range(lw):
                if p >= lw - m:
                    strip_of[pos[i]] = (nxt, len(sides[nxt]) - (lw - p))
                else:
                    strip_of[pos[i]] = (w, p)
                i += 1

    for position in range(big.n):
        lab = tuple(int(v) for v in strip_of[position])
        lo = start[lab]
        if not lo <= position < lo + pop[lab[0]]:
            failures.append(
                f"strand at position {position + 1} belongs to strip {_strip_name(lab)} "
                f"but lies outside positions {lo + 1}..{lo + pop[lab[0]]}"
            )
            if len(failures) > 20:
                break

    incoming = [(0, len(X) - m - 1), (1, len(Y) - m - 1)]
    outgoing = [(0, (len(X) - m) % len(X)), (1, (len(Y) - m) % len(Y))]
    for lab in labels:
        if lab in incoming:
            continue
        target = (lab[0], (lab[1] + 1) % len(sides[lab[0]]))
        got = big.perm[start[lab] : start[lab] + pop[lab[0]]]
        want = np.arange(start[target], start[target] + pop[lab[0]])
        if not np.array_equal(got, want):
            failures.append(
                f"strip {_strip_name(lab)} -> {_strip_name(target)} is not parallel"
            )

    j = outer.phi(0, len(X) - m)
    if outer.phi(1, len(Y) - m) != j + 1:
        failures.append(
            f"outgoing branch strips at positions {j} and {outer.phi(1, len(Y) - m)} "
            "are not adjacent"
        )
    sign = 1 if pair.tail_symbol == "L" else -1
    x_in_left = outer.phi(*incoming[0]) < outer.phi(*incoming[1])
    if x_in_left != (sign > 0):
        failures.append("incoming X-strip is on the wrong side for the branch sign")

    ins = np.concatenate(
        (
            np.arange(start[incoming[0]], start[incoming[0]] + pop[0]),
            np.arange(start[incoming[1]], start[incoming[1]] + pop[1]),
        )
    )
    base = start[outgoing[0]]
    induced = big.perm[ins] - base
    if not np.array_equal(induced, inner_braid.perm):
        failures.append(
            f"branch chart permutation {[int(v) + 1 for v in induced]} differs from "
            f"the inner braid {inner_braid.pi}"
        )

    return MainTheoremReport(
        passed=not failures,
        strands=big.n,
        x_strip_population=pop[0],
        y_strip_population=pop[1],
        branch=j,
        sign=sign,
        failures=failures,
    )


def _strip_name(lab) -> str:
    return f"s^{lab[1]}({'XY'[lab[0]]})"
