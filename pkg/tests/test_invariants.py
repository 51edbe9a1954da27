import pytest
from conftest import all_words, small_pairs

from lorenzlinks import invariants as inv
from lorenzlinks.braid import OrbitSet, lorenz_braid, pair_orbits
from lorenzlinks.errors import ConsistencyError, DegeneratePairError, NotAKnotError
from lorenzlinks.symbolic import (
    Word,
    check_admissible,
    is_primitive,
    star,
    star_power,
    trip_number,
)

P = check_admissible(Word("LRRRL"), Word("RLLR"))


def direct(pair, inner, n):
    return inv.direct_report(pair_orbits(star_power(pair, inner, n)))


def seifert_genus(crossings, strands, components):
    # Euler characteristic of the canonical surface is N - C
    chi = strands - crossings
    return (2 - chi - components) // 2


# frozen values for the named pair, confirmed against the direct braid


@pytest.mark.parametrize(
    "n, strands, crossings, trip, genus, link",
    [
        (1, 40, 272, [6, 5], 116, 134),
        (2, 178, 5396, [28, 23], 2609, 2670),
        (3, 792, 106848, [126, 103], 53028, 52878),
    ],
)
def test_named_pair_values(n, strands, crossings, trip, genus, link):
    closed = inv.closed_form_report(P, P, n)
    assert closed.string_index == strands
    assert closed.crossing_number == crossings
    assert closed.trip == trip
    assert closed.genus == genus
    assert closed.linking == {(0, 1): link}
    assert closed.values() == direct(P, P, n).values()
    assert closed.genus == seifert_genus(crossings, strands, 2)


def test_knot_example():
    s = Word("LRRRL")
    w = star(P, s)
    assert len(w) == 22
    assert inv.trip_star(P, s) == trip_number(w) == 6
    assert inv.c_star(P, s) == lorenz_braid([w]).crossings
    rep = inv.closed_form_knot_report(P, s)
    assert rep.values() == inv.direct_report(OrbitSet((w,))).values()


def test_worked_example_genus():
    rep = inv.direct_report(OrbitSet.of("LRRLR"))
    assert (rep.crossing_number, rep.string_index, rep.trip, rep.genus) == (6, 5, [2], 1)


# exhaustive sweeps over short words

PAIRS = small_pairs(5)
INNERS = small_pairs(4)
KNOT_WORDS = [Word(w) for w in all_words(4) if is_primitive(Word(w))]


def test_knot_formulas_sweep():
    for p in PAIRS:
        for s in KNOT_WORDS:
            w = star(p, s)
            if not is_primitive(w):
                continue
            c = lorenz_braid([w]).crossings
            assert inv.c_star(p, s) == c, (str(p), s)
            assert inv.genus_star_knot(p, s) == seifert_genus(c, len(w), 1)
            assert inv.trip_star(p, s) == trip_number(w)


def test_pair_formulas_sweep():
    for p in PAIRS:
        for q in INNERS:
            a, b = star(p, q.X), star(p, q.Y)
            br = lorenz_braid([a, b])
            assert inv.l_star(p, q.X, q.Y) == br.linking(0, 1)
            assert inv.c_star_pair(p, q) == br.crossings
            assert inv.genus_star_link(p, q) == seifert_genus(br.crossings, br.n, 2)


@pytest.mark.parametrize("n", [1, 2])
def test_power_formulas_sweep(n):
    for p in PAIRS[::3]:
        for q in INNERS:
            assert inv.closed_form_report(p, q, n).values() == direct(p, q, n).values(), (str(p), str(q))


def test_crossing_vector_sums_to_c_star_power():
    for p in PAIRS[::5]:
        for q in INNERS:
            for n in (1, 2, 3):
                assert sum(inv.crossing_vector_power(p, q, n)) == inv.c_star_power(p, q, n)


# reductions


def test_reductions():
    q = check_admissible(Word("LRR"), Word("RL"))
    assert inv.c_star_power(P, q, 1) == inv.c_star_pair(P, q)
    assert inv.string_index_power(P, q, 0) == 9
    assert inv.crossing_vector_power(P, q, 0) == inv.invariant_vector(P).as_row()
    assert inv.trip_star_power(P, q, 1) == (inv.trip_star(P, q.X), inv.trip_star(P, q.Y))
    for p in PAIRS[::4]:
        for r in INNERS:
            assert inv.genus_power(p, r, 1) == inv.genus_star_link(p, r)


def test_trip_formulas_allow_degenerate_pairs():
    d = check_admissible(Word("LR"), Word("RL"))
    for p in (d, P):
        for q in (d, P):
            for n in (1, 2):
                got = inv.trip_star_power(p, q, n)
                e = star_power(p, q, n)
                assert got == (trip_number(e.X), trip_number(e.Y))
                assert inv.string_index_power(p, q, n) == len(e.X) + len(e.Y)


# errors


def test_degenerate_rejected():
    d = check_admissible(Word("LR"), Word("RL"))
    with pytest.raises(DegeneratePairError):
        inv.c_star(d, Word("LR"))
    with pytest.raises(DegeneratePairError):
        inv.c_star_power(P, d, 2)
    with pytest.raises(DegeneratePairError):
        inv.genus_star_link(d, P)


def test_not_a_knot():
    with pytest.raises(NotAKnotError):
        inv.genus_star_knot(P, Word("LL"))


def test_genus_from_braid_parity_guard():
    assert inv.genus_from_braid(6, 5, 1) == 1
    with pytest.raises(ConsistencyError):
        inv.genus_from_braid(6, 5, 2)


def test_power_bounds():
    with pytest.raises(ValueError):
        inv.c_star_power(P, P, 0)
    with pytest.raises(ValueError):
        inv.closed_form_report(P, P, 0)


def test_exact_beyond_int64():
    rep = inv.closed_form_report(P, P, 20)
    assert rep.crossing_number > 2**63
    assert rep.genus == (rep.crossing_number - rep.string_index) // 2


def test_matrix_helpers():
    a = [[2, 2], [3, 2]]
    assert inv.mat_pow(a, 0) == inv.identity(2)
    assert inv.mat_pow(a, 3) == inv.mat_mul(a, inv.mat_mul(a, a))
    assert inv.count_matrices(P).M2 == [[2, 2], [3, 2]]


def test_genus_link_sign_index():
    # the sign must come from X[|X|-m-1]; reading it from X[|X|-m] breaks on some pairs
    disagreements = 0
    for p in PAIRS:
        alt = p.X[len(p.X) - p.m]
        if alt == p.tail_symbol:
            continue
        for q in INNERS:
            br = lorenz_braid([star(p, q.X), star(p, q.Y)])
            truth = seifert_genus(br.crossings, br.n, 2)
            assert inv.genus_star_link(p, q) == truth
            shift = inv.knot_crossings(q.X) + inv.knot_crossings(q.Y)
            flipped = inv.genus_star_link(p, q) + (shift if alt == "L" else -shift)
            disagreements += flipped != truth
    assert disagreements > 0
