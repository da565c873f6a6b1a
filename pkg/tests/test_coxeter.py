import random
from math import comb

import pytest

from fkalg.coxeter import (AffinePerm, box_partitions, d_word, delta_tableau, dn_mcr, dn_mcr_names,
                           dn_pairing_check, ek_terms, evaluate, format_reduced, gamma,
                           gamma_word, identity, is_primitive, length, longest_element,
                           nilcox_mult, pi, primitive_elements, primitive_length_formula,
                           primitive_length_series, primitive_pairing, primitive_search,
                           reduced_word, rk_element, s, theta, y, y_power)
from fkalg.freealg import Element, letter, reverse
from fkalg.graphs import named_graph, orient_for_theta
from fkalg.series import GradedSeries, qint


def test_lengths():
    assert length(identity(4)) == 0
    assert all(length(pi(4) ** k) == 0 for k in range(5))
    assert all(length(s(4, i)) == 1 for i in range(4))
    assert length(pi(3) * s(3, 0)) == 1
    assert length(y(3, 1)) == 2


def test_pi_is_y1_s1_s2():
    assert pi(3) == y(3, 1) * s(3, 1) * s(3, 2)
    assert pi(5) == y(5, 1) * s(5, 1) * s(5, 2) * s(5, 3) * s(5, 4)


def test_central_shift_is_identity():
    assert y_power(3, (1, 1, 1)) == identity(3)
    assert pi(3) ** 3 == identity(3)


def test_window_validation():
    with pytest.raises(ValueError):
        AffinePerm(3, (1, 4, 2))


def test_nilcoxeter_products():
    assert nilcox_mult(s(3, 1), s(3, 1)) is None
    w0 = longest_element(4)
    assert all(nilcox_mult(w0, s(4, i)) is None for i in (1, 2, 3))
    lhs = s(4, 1) * s(4, 2) * s(4, 1)
    assert lhs == s(4, 2) * s(4, 1) * s(4, 2) and length(lhs) == 3


def test_reduced_word_examples():
    assert reduced_word(identity(3)) == (0, ())
    assert reduced_word(pi(3) ** 2 * s(3, 0)) == (2, (0,))
    k, word = reduced_word(y(3, 1))
    assert len(word) == 2 and evaluate(k, word, 3) == y(3, 1)
    assert format_reduced(1, (4, 3, 2, 1)) == "pi*4321"
    assert format_reduced(0, (10, 2)) == "10.2"
    assert format_reduced(0, ()) == "id"


def test_reduced_word_round_trip_random():
    rng = random.Random(7)
    for _ in range(200):
        n = rng.randint(2, 6)
        w = pi(n) ** rng.randint(0, n - 1)
        for _ in range(rng.randint(0, 10)):
            w = w * s(n, rng.randrange(n))
        k, word = reduced_word(w)
        assert evaluate(k, word, n) == w and len(word) == length(w)


def test_length_additivity_audit():
    rng = random.Random(11)
    for _ in range(200):
        n = rng.randint(2, 5)
        u = evaluate(rng.randrange(n), [rng.randrange(n) for _ in range(rng.randint(0, 6))], n)
        v = evaluate(rng.randrange(n), [rng.randrange(n) for _ in range(rng.randint(0, 6))], n)
        got = nilcox_mult(u, v)
        assert (got is not None) == (length(u) + length(v) == length(u * v))


def test_delta_rule():
    assert gamma_word((), 4, 8) == ()
    assert gamma((), 4, 8) == identity(8)
    assert delta_tableau((1,), 2, 4) == {(1, 1): 2}
    # same group element as the reduced word 6 2 4 5 3 4
    assert gamma((3, 2, 1, 0), 4, 8) == evaluate(0, (6, 2, 4, 5, 3, 4), 8)
    with pytest.raises(ValueError):
        delta_tableau((5,), 4, 8)


@pytest.mark.parametrize("n", range(2, 7))
def test_box_identity(n):
    for k in range(1, n):
        box = (n - k,) * k
        prod = identity(n)
        for j in range(1, k + 1):
            prod = prod * y(n, j)
        assert prod == pi(n) ** k * gamma(box, k, n)


@pytest.mark.parametrize("n", range(2, 7))
def test_ek_audit(n):
    from itertools import combinations
    for k in range(1, n):
        terms = ek_terms(n, k)
        assert len(terms) == comb(n, k) == len(box_partitions(k, n - k))
        elems = [evaluate(kk, w, n) for _, kk, w in terms]
        assert len(set(elems)) == len(elems)
        assert all(len(w) == k * (n - k) for _, _, w in terms)
        products = set()
        for idx in combinations(range(1, n + 1), k):
            p = identity(n)
            for j in idx:
                p = p * y(n, j)
            products.add(p)
        assert set(elems) == products


def test_r1_listing_for_five():
    words = [format_reduced(k, w) for _, k, w in ek_terms(5, 1)]
    assert sorted(words) == sorted(["pi*4321", "pi*0432", "pi*1043", "pi*2104", "pi*3210"])


def test_rk_examples():
    r3 = rk_element(4, 3)
    a, b, c, d = (Element.gen(4, 1, 2), Element.gen(4, 2, 3), Element.gen(4, 3, 4), Element.gen(4, 4, 1))
    assert r3 == a * b * c + b * c * d + c * d * a + d * a * b
    for n in (3, 4, 5, 6):
        for k in range(1, n):
            e = rk_element(n, k)
            assert len(e.terms) == comb(n, k) and e.degrees() == {k * (n - k)}
            if k in (1, n - 1):
                assert reverse(e) == rk_element(n, n - k)


def test_reversed_rk_are_relations(rs4):
    # for 1 < k < n-1 the reversal is a different element, but still a relation
    for k in (1, 2, 3):
        assert rs4.is_zero(reverse(rk_element(4, k)))
    assert reverse(rk_element(4, 2)) != rk_element(4, 2)


def test_theta():
    og = orient_for_theta(named_graph("A", [3]))
    # letters index the oriented edges in order
    assert theta((0, 1, 0), og) == Element.word(3, (letter(1, 2), letter(2, 3), letter(1, 2)))
    assert theta((), og) == Element.one(3)
    with pytest.raises(ValueError):
        theta((5,), og)


def test_theta_braid_vanishes(rs3):
    og = orient_for_theta(named_graph("A", [3]))
    assert rs3.is_zero(theta((0, 1, 0), og) - theta((1, 0, 1), og))


def test_primitives_s3():
    got = {reduced_word(w) for w in primitive_elements(3)}
    assert got == {(0, ()), (1, ()), (2, ()), (1, (0,)), (2, (0,)), (0, (0,))}
    assert primitive_length_series(3) == [3, 3]
    assert primitive_length_formula(3) == [3, 3]


@pytest.mark.parametrize("n", range(2, 7))
def test_primitive_counts_and_closure(n):
    from math import factorial
    prims = primitive_elements(n)
    assert len(set(prims)) == factorial(n)
    assert all(is_primitive(w) for w in prims)
    assert {pi(n) * w for w in prims} == set(prims)
    assert primitive_length_series(n) == primitive_length_formula(n)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_primitive_search_agrees(n):
    assert set(primitive_search(n)) == set(primitive_elements(n))


def _ball(n, radius):
    seen = {identity(n).window: identity(n)}
    frontier = [identity(n)]
    for _ in range(radius):
        frontier = [v for w in frontier for i in range(n)
                    for v in [w * s(n, i)] if seen.setdefault(v.window, v) is v]
    return list(seen.values())


@pytest.mark.parametrize("n", [3, 4])
def test_dominant_factorization_samples(n):
    # w ranges over affine elements with no finite right descents
    lams = [(2, 1, 0, 0)[:n], (1,) * (n - 1) + (0,), (3, 1) + (0,) * (n - 2)]
    reps = [w for w in _ball(n, 5)
            if all(length(w * s(n, i)) > length(w) for i in range(1, n))]
    assert len(reps) > 5
    for lam in lams:
        t = y_power(n, lam)
        for w in reps:
            assert length(t * w.inverse()) == length(t) + length(w)


@pytest.mark.parametrize("n", [3, 4])
def test_primitive_pairing(n):
    assert all(primitive_pairing(v) == 1 for v in primitive_elements(n))


def test_dn_mcr():
    assert dn_mcr_names(3) == [[], ["a"], ["b"], ["a", "b"], ["b", "a"], ["a", "b", "a"]]
    names5 = ["".join(w) for w in dn_mcr_names(5)]
    assert names5 == ["", "2", "12", "a12", "b12", "ab12", "ba12", "aba12", "1aba12", "21aba12"]
    for n in (4, 5, 6):
        degs = [0] * (2 * n)
        for w in dn_mcr_names(n):
            degs[len(w)] += 1
        want = qint(n) * GradedSeries([1] + [0] * (n - 3) + [1])
        assert GradedSeries(degs) == want
        assert len(dn_mcr(n)) == 2 * n


@pytest.mark.parametrize("n,want", [(3, 1), (4, -1), (5, 1), (6, -1)])
def test_dn_pairing(n, want):
    assert dn_pairing_check(n) == want


def test_d_word_uses_fixed_labeling():
    assert d_word(4, ["a"]) == -Element.gen(4, 1, 3)
    assert d_word(4, ["1"]) == -Element.gen(4, 3, 4)
