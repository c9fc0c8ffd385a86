"""Convexity verdicts, dimension reports, and the exhaustive 1-D oracle."""

from __future__ import annotations

import random
from itertools import combinations

import pytest

from convexa.codes import (
    EMPTY_WORD,
    NeuralCode,
    closure,
    is_subword,
    parse_code,
    parse_word,
    word_key,
)
from convexa.decision import (
    CONVEX,
    DIM_AT_MOST_2,
    DIM_EXACTLY_1,
    DIM_EXACTLY_2,
    MAX_INTERSECTION_CASE,
    NOT_CONVEX,
    ORACLE_MAX_NEURONS,
    PATH_CASE,
    UNSUPPORTED,
    brute_force_1d_realizable,
    choose_parents,
    decide,
)
from convexa.errors import NoParent
from convexa.realize1d import construct_base_1d, realized_code_1d
from convexa.topology import minimal_code, path_of_facets


def w(text: str) -> int:
    return parse_word(text)


# --- decide ------------------------------------------------------------------


def test_decide_figure_min_code_is_dim1():
    verdict = decide(parse_code("1356\n123\n124\n12\n13\n"))
    assert verdict.outcome == CONVEX
    assert verdict.dim_report == DIM_EXACTLY_1
    assert verdict.plan.strategy == PATH_CASE
    assert verdict.plan.extras == ()
    assert verdict.obstructions is None


def test_decide_code_d_needs_the_plane():
    verdict = decide(parse_code("1356\n123\n124\n12\n13\n23\n24\n5\n6\n"))
    assert verdict.outcome == CONVEX
    # n = 7 exceeds the oracle bound, so dimension 1 is not ruled out
    assert verdict.dim_report == DIM_AT_MOST_2
    extras = {(t, p) for t, p in verdict.plan.extras}
    assert (w("23"), w("123")) in extras
    assert (w("5"), w("1356")) in extras


def test_decide_triangle_code_exactly2():
    verdict = decide(parse_code("12\n13\n23\n1\n2\n3\n"))
    assert verdict.outcome == CONVEX
    assert verdict.plan.strategy == MAX_INTERSECTION_CASE
    # pairwise-overlapping intervals on a line would share a common point,
    # so the oracle proves dimension 1 impossible
    assert verdict.dim_report == DIM_EXACTLY_2


def test_decide_not_convex_names_obstructions():
    verdict = decide(parse_code("12\n13\n23\n"))
    assert verdict.outcome == NOT_CONVEX
    assert verdict.dim_report is None
    assert {r.sigma for r in verdict.obstructions} == {w("1"), w("2"), w("3")}


def test_decide_four_maximal_unsupported():
    verdict = decide(parse_code("12\n34\n56\n78\n"))
    assert verdict.outcome == UNSUPPORTED
    assert verdict.plan is None


def test_decide_single_and_empty_codes():
    assert decide(parse_code("123\n12\n")).outcome == CONVEX
    empty = NeuralCode(0, frozenset({EMPTY_WORD}))
    verdict = decide(empty)
    assert verdict.outcome == CONVEX
    assert verdict.dim_report == DIM_EXACTLY_1


def test_decide_verdict_obstruction_consistency_random():
    rng = random.Random(20)
    for _ in range(300):
        n = rng.randint(1, 5)
        words = {EMPTY_WORD}
        for _ in range(rng.randint(1, 6)):
            words.add(rng.randrange(1 << n))
        verdict = decide(NeuralCode(n, frozenset(words)), use_dim_oracle=False)
        if verdict.outcome == CONVEX:
            assert verdict.obstructions is None
            assert verdict.plan is not None
        elif verdict.outcome == NOT_CONVEX:
            assert verdict.obstructions
        else:
            assert verdict.outcome == UNSUPPORTED


def test_dim_oracle_flag_only_affects_report():
    code = parse_code("12\n13\n23\n1\n2\n3\n")
    lazy = decide(code, use_dim_oracle=False)
    eager = decide(code, use_dim_oracle=True)
    assert lazy.outcome == eager.outcome == CONVEX
    assert lazy.dim_report == DIM_AT_MOST_2
    assert eager.dim_report == DIM_EXACTLY_2


# --- choose_parents ------------------------------------------------------------


def test_choose_parents_prefers_smallest_container():
    base = parse_code("123\n145\n245\n1\n2\n45\n")
    code = NeuralCode(base.n, base.words | {w("4"), w("12")})
    pairs = dict(choose_parents(code, base))
    assert pairs[w("4")] == w("45")  # beats the facets 145, 245
    assert pairs[w("12")] == w("123")


def test_choose_parents_tie_breaks_lexicographically():
    base = parse_code("12\n13\n")
    code = NeuralCode(base.n, base.words | {w("1")})
    pairs = dict(choose_parents(code, base))
    assert pairs[w("1")] == w("12")


def test_choose_parents_in_lexicographic_order():
    base = parse_code("1356\n123\n124\n12\n13\n")
    code = parse_code("1356\n123\n124\n12\n13\n23\n24\n5\n6\n")
    extras = choose_parents(code, base)
    keys = [word_key(t) for t, _ in extras]
    assert keys == sorted(keys)


def test_choose_parents_no_container_raises():
    base = parse_code("12\n")
    code = NeuralCode(4, base.words | {w("3")})
    with pytest.raises(NoParent):
        choose_parents(code, base)


# --- the brute-force interval oracle --------------------------------------------


def test_oracle_simple_yes_cases():
    assert brute_force_1d_realizable(parse_code("1\n")) is True
    assert brute_force_1d_realizable(parse_code("12\n1\n2\n")) is True
    assert brute_force_1d_realizable(parse_code("12\n23\n1\n2\n3\n")) is True


def test_oracle_helly_no_case():
    # three intervals meeting pairwise must share a point on the line
    assert brute_force_1d_realizable(parse_code("12\n13\n23\n1\n2\n3\n")) is False


def test_oracle_gives_up_above_bound():
    code = parse_code("1\n2\n3\n4\n5\n")
    assert code.n > ORACLE_MAX_NEURONS
    assert brute_force_1d_realizable(code) is None


def test_oracle_agrees_with_interval_construction():
    """Whenever the path-case table realizes the code in 1-D, the oracle
    must agree that a 1-D realization exists."""
    from tests_helpers import antichain_complexes

    checked = 0
    for cpx in antichain_complexes(ORACLE_MAX_NEURONS, 3):
        witness = path_of_facets(cpx)
        if witness is None:
            continue
        code = minimal_code(cpx)
        base = construct_base_1d(cpx, witness)
        assert realized_code_1d(base).words == code.words
        assert brute_force_1d_realizable(code) is True
        checked += 1
    assert checked >= 12


def test_oracle_false_implies_no_exactly1_report():
    rng = random.Random(31)
    for _ in range(150):
        n = rng.randint(2, 4)
        words = {EMPTY_WORD}
        for _ in range(rng.randint(1, 5)):
            words.add(rng.randrange(1 << n))
        code = NeuralCode(n, frozenset(words))
        verdict = decide(code)
        if verdict.outcome != CONVEX:
            continue
        oracle = brute_force_1d_realizable(code)
        if verdict.dim_report == DIM_EXACTLY_1:
            assert oracle is True
        elif verdict.dim_report == DIM_EXACTLY_2:
            assert oracle is False
