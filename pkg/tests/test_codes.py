"""Core codeword / complex machinery: parsing, display, closure, links."""

from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from convexa.codes import (
    EMPTY_WORD,
    NeuralCode,
    SimplicialComplex,
    closure,
    facet_intersections,
    format_code,
    is_max_intersection_complete,
    is_subword,
    iter_subwords,
    link,
    maximal_codewords,
    nerve,
    parse_code,
    parse_word,
    word_from_ids,
    word_ids,
    word_key,
    word_str,
)
from convexa.errors import NotAFace, ParseError


def w(text: str) -> int:
    return parse_word(text)


# --- words and display -------------------------------------------------------


def test_word_roundtrip_basics():
    assert word_from_ids([1, 3, 5, 6]) == w("1356")
    assert word_ids(w("1356")) == (1, 3, 5, 6)
    assert word_str(EMPTY_WORD, 4) == "{}"
    assert word_str(w("1356"), 7) == "1356"


def test_word_str_large_ids_use_commas():
    word = word_from_ids([3, 10])
    assert word_str(word, 11) == "3,10"


def test_is_subword():
    assert is_subword(w("13"), w("1356"))
    assert not is_subword(w("14"), w("1356"))
    assert is_subword(EMPTY_WORD, w("2"))


def test_iter_subwords_counts():
    subs = list(iter_subwords(w("123")))
    assert len(subs) == 8
    assert EMPTY_WORD in subs and w("123") in subs


@given(st.integers(min_value=0, max_value=(1 << 9) - 1))
def test_display_parse_roundtrip(word):
    assert parse_word(word_str(word, 9)) == word


@given(st.integers(min_value=0, max_value=(1 << 14) - 1))
def test_display_parse_roundtrip_commas(word):
    assert parse_word(word_str(word, 14)) == word


def test_word_key_is_lexicographic_on_ids():
    words = [w("12"), w("2"), w("1"), w("123"), EMPTY_WORD]
    ordered = sorted(words, key=word_key)
    assert [word_str(x, 4) for x in ordered] == ["{}", "1", "12", "123", "2"]


# --- text format -------------------------------------------------------------


def test_parse_code_digit_lines():
    code = parse_code("1356\n123\n124\n12\n13\n")
    assert code.n == 7
    assert w("1356") in code.words
    assert EMPTY_WORD in code.words  # implied


def test_parse_code_comments_and_blanks():
    code = parse_code("# a comment\n\n12\n  # indented comment\n3\n")
    assert code.words == frozenset({EMPTY_WORD, w("12"), w("3")})


def test_parse_code_comma_tokens_are_ids():
    # a trailing comma marks token mode: "12," is the single neuron 12
    code = parse_code("12,\n")
    assert code.words == frozenset({EMPTY_WORD, 1 << 12})
    assert code.n == 13


def test_parse_code_space_separated_ids():
    code = parse_code("0 2 11\n")
    assert code.words == frozenset({EMPTY_WORD, word_from_ids([0, 2, 11])})


def test_parse_code_reports_line_numbers():
    with pytest.raises(ParseError) as err:
        parse_code("12\nnope\n")
    assert "line 2" in str(err.value)


def test_parse_code_rejects_negative_and_huge():
    with pytest.raises(ParseError):
        parse_code("-1\n")
    with pytest.raises(ParseError):
        parse_code("64,\n")  # neuron id 64 exceeds the bitmask width


def test_format_code_roundtrip():
    code = parse_code("12\n13\n23\n1\n")
    again = parse_code(format_code(code))
    assert again.words == code.words


# --- structures --------------------------------------------------------------


def test_neural_code_always_contains_empty_word():
    code = NeuralCode(3, frozenset({w("12")}))
    assert EMPTY_WORD in code.words


def test_simplicial_complex_rejects_non_antichain():
    with pytest.raises(ValueError):
        SimplicialComplex(3, frozenset({w("12"), w("1")}))


def test_maximal_codewords_antichain_and_covering():
    code = parse_code("1356\n123\n124\n12\n13\n")
    maxes = maximal_codewords(code)
    assert maxes == {w("1356"), w("123"), w("124")}
    for word in code.words:
        assert any(is_subword(word, f) for f in maxes)
    for a in maxes:
        for b in maxes:
            assert a == b or not is_subword(a, b)


def test_closure_faces_are_all_subwords():
    cpx = closure(parse_code("123\n14\n"))
    faces = set(cpx.iter_faces())
    assert faces == {
        s for f in (w("123"), w("14")) for s in iter_subwords(f)
    }


def test_closure_idempotent():
    cpx = closure(parse_code("1356\n123\n124\n"))
    again = closure(NeuralCode(cpx.n, frozenset(cpx.iter_faces())))
    assert again.facets == cpx.facets


def test_link_by_exhaustive_face_formula():
    """Faces of link(Δ, σ) are exactly {ω : σ∩ω = ∅ and σ∪ω ∈ Δ}."""
    rng = random.Random(7)
    for _ in range(40):
        n = rng.randint(2, 6)
        facets = set()
        while len(facets) < rng.randint(1, 3):
            cand = rng.randrange(1, 1 << n)
            if not any(
                is_subword(cand, f) or is_subword(f, cand) for f in facets
            ):
                facets.add(cand)
        cpx = SimplicialComplex(n, frozenset(facets))
        all_faces = set(cpx.iter_faces())
        sigma = rng.choice(sorted(all_faces))
        lk = link(cpx, sigma)
        expected = {
            omega
            for omega in range(1 << n)
            if omega & sigma == 0 and cpx.is_face(omega | sigma)
        }
        assert set(lk.iter_faces()) == expected


def test_link_rejects_non_face():
    cpx = closure(parse_code("12\n13\n"))
    with pytest.raises(NotAFace):
        link(cpx, w("23"))


def test_nerve_of_overlapping_sets():
    # sets {1,2}, {1,3}, {2,3}: every pair meets, the triple is empty
    cpx = nerve([w("12"), w("13"), w("23")])
    faces = set(cpx.iter_faces())
    assert word_from_ids([0, 1]) in faces
    assert word_from_ids([0, 1, 2]) not in faces


def test_nerve_monotone_under_removal():
    rng = random.Random(11)
    for _ in range(30):
        sets = [rng.randrange(0, 1 << 6) for _ in range(rng.randint(2, 4))]
        full = set(nerve(sets, n_hint=len(sets)).iter_faces())
        smaller = nerve(sets[:-1], n_hint=len(sets)).iter_faces()
        # removing a set never creates new faces among the remaining indices
        assert set(smaller) <= full


def test_facet_intersections_three_facets():
    cpx = closure(parse_code("1356\n123\n124\n"))
    assert facet_intersections(cpx) == {
        w("13"),  # 1356 ∩ 123
        w("1"),  # 1356 ∩ 124 and the triple
        w("12"),  # 123 ∩ 124
    } | {w("1")}


def test_is_max_intersection_complete_examples():
    assert not is_max_intersection_complete(
        parse_code("1356\n123\n124\n12\n13\n3\n")
    )
    assert is_max_intersection_complete(parse_code("1234\n12\n3\n4\n"))
    assert is_max_intersection_complete(parse_code("12\n13\n23\n1\n2\n3\n"))


def test_facet_intersections_requires_two_facets():
    single = closure(parse_code("123\n"))
    assert facet_intersections(single) == frozenset()
