"""Acceptance criteria, one test per criterion.

Run ``pytest tests/test_acceptance.py -v``; a summary with one PASS/FAIL line
per criterion is printed at the end of the session.
"""

import math
import time

import numpy as np
from conftest import small_pairs

from lorenzlinks import invariants as inv
from lorenzlinks.braid import OrbitSet, lorenz_braid, main_theorem_check, pair_orbits
from lorenzlinks.symbolic import (
    Word,
    check_admissible,
    find_violation,
    is_maximal,
    is_minimal,
    is_primitive,
    sign_case,
    star,
    star_power,
    star_power_lengths,
    substitute,
    trip_number,
)
from lorenzlinks.verify import (
    DEFAULT_SEED,
    VerifyConfig,
    gen_admissible_pair,
    growth_table,
    random_primitive_word,
    run_suite,
)

NAMED = check_admissible(Word("LRRRL"), Word("RLLR"))
CAP = 10**6


def test_criterion_1_worked_example():
    start = time.perf_counter()
    br = lorenz_braid(["LRRLR"])
    report = inv.direct_report(OrbitSet.of("LRRLR"))
    elapsed = time.perf_counter() - start
    assert br.pi == [4, 5, 1, 2, 3]
    cycle, p = [1], br.pi[0]
    while p != 1:
        cycle.append(p)
        p = br.pi[p - 1]
    assert cycle == [1, 4, 2, 5, 3]
    assert len(br.word) == 6 and all(g >= 1 for g in br.word)
    from lorenzlinks.braid import realized_permutation

    assert realized_permutation(br.word, 5) == br.pi
    assert br.crossings == 6
    assert report.trip == [2]
    assert report.genus == 1
    assert elapsed < 1.0


def test_criterion_2_star_products():
    p = check_admissible(Word("LR"), Word("RL"))
    a, b = star(p, Word("LR")), star(p, Word("RL"))
    assert str(a) == "LRRL" and str(b) == "RLLR"
    assert is_maximal(a) and is_minimal(b)


def test_criterion_3_expansion():
    z = Word("LRRRL")
    w = star(NAMED, z)
    assert str(w) == "LRRRL" + "RLLR" + "RLLR" + "RLLR" + "LRRRL"
    assert len(w) == 22
    formula = 2 * trip_number(NAMED.X) + 3 * trip_number(NAMED.Y) + trip_number(z)
    assert trip_number(w) == 6 == formula == inv.trip_star(NAMED, z)
    assert inv.string_index_power(NAMED, NAMED, 1) == 40
    assert sum(len(v) for v in (star(NAMED, NAMED.X), star(NAMED, NAMED.Y))) == 40


def test_criterion_4_oracle_sweep():
    cfg = VerifyConfig(
        seed=DEFAULT_SEED,
        trials=200,
        max_outer_len=8,
        max_inner_len=6,
        require_nondegenerate=True,
    )
    report = run_suite(cfg)
    names = ("c_star", "l_star", "c_star_pair", "trip_star", "genus_star_knot", "genus_star_link")
    for name in names:
        t = report.formulas[name]
        assert t.failed == 0, (name, t.counterexample)
        assert t.passed == 200, (name, t.skip_reasons)
    assert report.seconds < 60


def _power_checks(pair, inner):
    for n in (1, 2, 3):
        e = star_power(pair, inner, n, CAP)
        br = lorenz_braid(pair_orbits(e))
        assert inv.c_star_power(pair, inner, n) == br.crossings
        assert inv.trip_star_power(pair, inner, n) == (trip_number(e.X), trip_number(e.Y))
        assert inv.string_index_power(pair, inner, n) == br.n
        assert inv.genus_power(pair, inner, n) == inv.genus_from_braid(br.crossings, br.n, 2)


def test_criterion_5_iterated_formulas():
    _power_checks(NAMED, NAMED)
    assert inv.string_index_power(NAMED, NAMED, 2) == 178
    rng = np.random.default_rng(DEFAULT_SEED)
    checked = 0
    while checked < 5:
        outer = gen_admissible_pair(rng, 6, nondegenerate=True)
        inner = gen_admissible_pair(rng, 6, nondegenerate=True)
        if sum(star_power_lengths(outer, inner, 3)) > CAP:
            continue
        _power_checks(outer, inner)
        checked += 1


def test_criterion_6_sign_case_recurrence():
    pairs = small_pairs(5)
    by_case = {1: [], 2: [], 3: [], 4: []}
    for outer in pairs:
        for inner in pairs:
            total = sum(star_power_lengths(outer, inner, 6))
            if total <= CAP:
                by_case[sign_case(outer, inner).case_id].append((total, str(outer), str(inner), outer, inner))
    for case_id, found in by_case.items():
        assert found, f"no pair for case {case_id}"
        for *_, outer, inner in sorted(found, key=lambda f: f[:3])[:3]:
            case = sign_case(outer, inner)
            assert case.case_id == case_id
            for n in range(1, 7):
                assert star_power(outer, inner, n, CAP).tail_symbol == case.tail_symbol(n), (
                    case_id, str(outer), str(inner), n,
                )


def test_criterion_7_main_theorem():
    rng = np.random.default_rng(DEFAULT_SEED)
    for k in range(50):
        pair = gen_admissible_pair(rng, 8, nondegenerate=True)
        if k % 2 == 0:
            orbits = OrbitSet((random_primitive_word(rng, 6),))
        else:
            inner = gen_admissible_pair(rng, 6, nondegenerate=True)
            orbits = OrbitSet((inner.X, inner.Y))
        report = main_theorem_check(pair, orbits)
        assert report.passed, (str(pair), [str(w) for w in orbits.words], report.failures)
        pops = [w.n_L for w in orbits.words], [w.n_R for w in orbits.words]
        assert (report.x_strip_population, report.y_strip_population) == tuple(map(sum, pops))


def _link_parity(pair):
    br = lorenz_braid(pair_orbits(pair))
    return (br.crossings - br.n - len(pair_orbits(pair))) % 2


def test_criterion_8_parity_and_admissibility():
    rng = np.random.default_rng(DEFAULT_SEED)
    mismatches = []
    for k in range(100):
        outer = gen_admissible_pair(rng, 6)
        inner = gen_admissible_pair(rng, 6)
        words = [str(outer.X), str(outer.Y), str(inner.X), str(inner.Y)]
        if rng.random() < 0.5:
            which = int(rng.integers(4))
            at = int(rng.integers(len(words[which])))
            w = words[which]
            words[which] = w[:at] + ("R" if w[at] == "L" else "L") + w[at + 1:]
        x, y, s, w = map(Word, words)
        outer_ok = find_violation(x, y) is None
        inner_ok = find_violation(s, w) is None
        a, b = substitute(x, y, s), substitute(x, y, w)
        product_ok = find_violation(a, b) is None
        for ok, p in ((outer_ok, (x, y)), (inner_ok, (s, w)), (product_ok, (a, b))):
            if ok:
                assert _link_parity(check_admissible(*p)) == 0, [str(v) for v in p]
        if product_ok != (outer_ok and inner_ok):
            mismatches.append((k, words, outer_ok, inner_ok, product_ok))
    assert not mismatches, mismatches


def test_criterion_9_growth():
    start = time.perf_counter()
    rows = growth_table(NAMED, NAMED, 10, oracle_cap=0)
    elapsed = time.perf_counter() - start
    lam = 2 + math.sqrt(6)
    for r in rows:
        if r.n >= 6:
            assert abs(float(r.string_ratio) - lam) / lam < 0.01
    for prev, cur in zip(rows, rows[1:]):
        assert cur.genus > prev.genus
        assert cur.trip[0] > prev.trip[0] and cur.trip[1] > prev.trip[1]
    assert elapsed < 5.0
    # cross-check the rows the oracle can reach within the timing budget
    assert all(r.verified for r in growth_table(NAMED, NAMED, 4))
