from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from fkalg.freealg import (Element, compose, format_element, inverse, letter, normalize_pair,
                           parse_element, relabel, reverse, sn_degree, support_partition,
                           transposition, words_of_degree)

N = 5
LETTERS = [letter(i, j) for i in range(1, N + 1) for j in range(i + 1, N + 1)]
words = st.lists(st.sampled_from(LETTERS), max_size=5).map(tuple)
perms = st.permutations(range(1, N + 1)).map(tuple)


def test_normalize_pair():
    assert normalize_pair(1, 2) == (1, letter(1, 2))
    assert normalize_pair(2, 1) == (-1, letter(1, 2))
    assert normalize_pair(3, 1) == (-1, letter(1, 3))
    with pytest.raises(ValueError):
        normalize_pair(2, 2)


def test_multiply_is_free_concatenation():
    x12, x13 = Element.gen(3, 1, 2), Element.gen(3, 1, 3)
    assert (x12 * Element.gen(3, 2, 3)).terms == {(letter(1, 2), letter(2, 3)): 1}
    assert (x12 + x13) * Element(3) == 0
    assert (x12.scale(2) * x12.scale(3)).terms == {(letter(1, 2),) * 2: 6}
    with pytest.raises(ValueError):
        x12 * Element.gen(4, 1, 2)


def test_exact_coefficients():
    e = Element.word(3, (letter(1, 2),), Fraction(1, 3)) + Element.word(3, (letter(1, 2),), Fraction(1, 6))
    assert e.terms[(letter(1, 2),)] == Fraction(1, 2)


def test_sn_degree_examples():
    assert sn_degree((), 3) == (1, 2, 3)
    assert sn_degree((letter(1, 2),), 3) == (2, 1, 3)
    # 1 -> 2, 2 -> 3, 3 -> 1
    assert sn_degree((letter(1, 2), letter(2, 3)), 3) == (2, 3, 1)


def test_support_partition():
    w = (letter(1, 2), letter(2, 3), letter(4, 5), letter(1, 3))
    assert support_partition(w, 5) == ((1, 2, 3), (4, 5))
    assert support_partition((), 3) == ((1,), (2,), (3,))


def test_reverse_and_relabel_examples():
    x12, x23 = Element.gen(3, 1, 2), Element.gen(3, 2, 3)
    assert reverse(x12 * x23) == x23 * x12
    assert relabel((1, 2, 3), x12 * x23) == x12 * x23
    assert relabel((2, 1, 3), x12) == -x12
    assert relabel((3, 2, 1), x12 * x23) == x23 * x12


def test_words_of_degree_counts():
    assert len(list(words_of_degree([1, 2], 2))) == 4
    assert list(words_of_degree([5, 7], 0)) == [()]
    k3 = [letter(1, 2), letter(1, 3), letter(2, 3)]
    ws = list(words_of_degree(k3, 3))
    assert len(ws) == 27 and ws == sorted(ws)


def test_text_round_trip_and_lenient_input():
    e = parse_element("+1*x12.x23 -1*x13.x12 +1/2*1", 3)
    assert parse_element(format_element(e), 3) == e
    assert parse_element("x12.x23 - x13", 3) == parse_element("+1*x12.x23 -1*x13", 3)
    assert parse_element("x21", 3) == -Element.gen(3, 1, 2)
    assert format_element(Element(3)) == "0"
    assert parse_element("+1*x3_10", 10) == Element.gen(10, 3, 10)
    with pytest.raises(ValueError):
        parse_element("x14", 3)


@given(words, words)
def test_sn_degree_multiplicative(u, v):
    assert sn_degree(u + v, N) == compose(sn_degree(u, N), sn_degree(v, N))


@given(perms, perms, words)
def test_relabel_composes(s, t, w):
    e = Element.word(N, w)
    assert relabel(s, relabel(t, e)) == relabel(compose(s, t), e)


@given(perms, words)
def test_sn_degree_conjugation(s, w):
    e = relabel(s, Element.word(N, w))
    (v,) = e.terms
    assert sn_degree(v, N) == compose(compose(s, sn_degree(w, N)), inverse(s))


@given(words, words)
def test_support_partition_of_product_is_common_coarsening(u, v):
    joint = support_partition(u + v, N)
    for part in (support_partition(u, N), support_partition(v, N)):
        for block in part:
            assert any(set(block) <= set(b) for b in joint)
    # and nothing coarser: merging u's and v's blocks reproduces it
    merged = [set(b) for b in support_partition(u, N)]
    for block in support_partition(v, N):
        hit = [m for m in merged if m & set(block)]
        merged = [m for m in merged if not m & set(block)] + [set().union(*hit)]
    assert sorted(tuple(sorted(m)) for m in merged) == sorted(joint)


def test_transposition():
    assert transposition(4, 2, 4) == (1, 4, 3, 2)
