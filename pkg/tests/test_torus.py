import math
import random

import pytest

from profam.torus import (
    TL_IDENTITY,
    TLElement,
    TLParams,
    ZPair,
    is_zieschang_pair,
    kernel_rank,
    pair_elements,
    pi_of_word,
    reidemeister_schreier_kernel,
    schreier_transversal,
    tl_from_word,
    tl_invert,
    tl_multiply,
    tl_pi,
    tl_power,
    tl_to_word,
    zieschang_pairs,
)
from profam.words import Word, parse_word, reduce_word

P33 = TLParams(3, 3)
P23 = TLParams(2, 3)


def rand_word(rng, max_len=14):
    return reduce_word(2, [rng.choice([1, -1, 2, -2]) for _ in range(rng.randrange(0, max_len))])


def test_params_validation():
    with pytest.raises(ValueError):
        TLParams(1, 5)


def test_normal_form_of_relator_and_powers():
    assert tl_from_word(P33, Word.gen(2, 1, 3)) == TLElement(1, ())
    assert tl_from_word(P33, parse_word("x^3*y^-3", 2)).is_identity
    sq = tl_from_word(P33, Word.gen(2, 1, 2))
    assert tl_multiply(P33, sq, sq) == TLElement(1, (("x", 1),))


def test_distinct_elements_distinguished():
    a = tl_from_word(P33, parse_word("x*y*x^-1", 2))
    b = tl_from_word(P33, parse_word("y", 2))
    assert a != b


def test_distinct_elements_have_distinct_matrix_images():
    # congruence oracle: the GL12 representation mod 3 separates them
    from profam.reps import TorusMatrixRep

    rep = TorusMatrixRep()
    a = rep.phi_word(parse_word("x*y*x^-1", 2)).mod(3)
    b = rep.phi_word(parse_word("y", 2)).mod(3)
    assert a != b


def test_alternation_validation():
    with pytest.raises(ValueError):
        TLElement(0, (("x", 1), ("x", 1)))
    with pytest.raises(ValueError):
        TLElement(0, (("x", 0),))


def test_multiplication_matches_word_concatenation():
    rng = random.Random(11)
    for _ in range(500):
        u, v = rand_word(rng), rand_word(rng)
        assert tl_from_word(P33, u * v) == tl_multiply(
            P33, tl_from_word(P33, u), tl_from_word(P33, v)
        )


def test_inverse_and_identity_laws():
    rng = random.Random(12)
    for _ in range(200):
        e = tl_from_word(P33, rand_word(rng))
        assert tl_multiply(P33, e, tl_invert(P33, e)).is_identity
        assert tl_multiply(P33, e, TL_IDENTITY) == e


def test_center_is_central():
    rng = random.Random(13)
    z = tl_from_word(P33, Word.gen(2, 1, 3))
    for _ in range(100):
        e = tl_from_word(P33, rand_word(rng))
        assert tl_multiply(P33, z, e) == tl_multiply(P33, e, z)


def test_to_word_roundtrip():
    rng = random.Random(14)
    for _ in range(200):
        e = tl_from_word(P33, rand_word(rng))
        assert tl_from_word(P33, tl_to_word(P33, e)) == e


def test_pi_values():
    assert tl_pi(P33, tl_from_word(P33, Word.gen(2, 1))) == 1
    assert tl_pi(P33, TLElement(1, ())) == 0
    assert tl_pi(P23, tl_from_word(P23, parse_word("x*x*y", 2))) == 2
    assert pi_of_word(P23, parse_word("x*x*y", 2)) == 2


def test_pi_is_homomorphism():
    rng = random.Random(15)
    for _ in range(200):
        e1 = tl_from_word(P33, rand_word(rng))
        e2 = tl_from_word(P33, rand_word(rng))
        lhs = tl_pi(P33, tl_multiply(P33, e1, e2))
        assert lhs == (tl_pi(P33, e1) + tl_pi(P33, e2)) % 3


@pytest.mark.parametrize(
    "p,q,k",
    [(3, 3, 2), (2, 3, 2), (4, 6, 8), (2, 2, 1), (2, 5, 4), (3, 4, 6)],
)
def test_kernel_rank_formula(p, q, k):
    params = TLParams(p, q)
    assert kernel_rank(params) == k
    # Euler characteristic identity: lcm*(1/p + 1/q - 1) = 1 - k
    lcm = params.lcm
    assert lcm * q + lcm * p - lcm * p * q == (1 - k) * p * q


def test_transversal_for_33():
    transversal, _ = schreier_transversal(P33)
    assert [str(w) for w in transversal] == ["1", "x", "x*x"]


@pytest.mark.parametrize("p,q", [(2, 2), (2, 3), (3, 3), (2, 5), (3, 4), (4, 6)])
def test_kernel_presentation_abelianization(p, q):
    params = TLParams(p, q)
    pres = reidemeister_schreier_kernel(params)
    free, torsion = pres.abelianization()
    assert free == kernel_rank(params) + 1
    assert torsion == ()


def test_rewrite_preserves_value():
    # rewriting a kernel word and evaluating back gives the same element
    pres = reidemeister_schreier_kernel(P33)
    rng = random.Random(16)
    count = 0
    while count < 50:
        w = rand_word(rng)
        if pi_of_word(P33, w) != 0:
            continue
        count += 1
        rewritten = pres.rewrite(w)
        assert tl_from_word(P33, pres.evaluate(rewritten)) == tl_from_word(P33, w)


def test_rewrite_rejects_non_kernel_words():
    pres = reidemeister_schreier_kernel(P33)
    with pytest.raises(ValueError):
        pres.rewrite(Word.gen(2, 1))


def test_zieschang_examples():
    assert [(z.a, z.b) for z in zieschang_pairs(P33, 1)] == [(1, 1)]
    assert not is_zieschang_pair(P33, 2, 2)  # gcd(a, b) = 2
    assert is_zieschang_pair(P33, 4, 5)  # gcds 1; 8 <= 15; 10 <= 12
    pairs = zieschang_pairs(P33, 12)
    assert [(z.a, z.b) for z in pairs[:5]] == [(1, 1), (4, 5), (5, 7), (7, 8), (7, 10)]


def test_zieschang_counts_grow():
    counts = [len(zieschang_pairs(P33, b)) for b in (10, 25, 50)]
    assert counts[0] < counts[1] < counts[2]


def test_zieschang_needs_hypotheses():
    with pytest.raises(ValueError):
        zieschang_pairs(TLParams(2, 2), 5)


def test_zieschang_no_swap_quotient_when_p_ne_q():
    pairs = zieschang_pairs(TLParams(3, 4), 10)
    # no a <= b quotienting for p != q: (4, 3) satisfies all five conditions
    assert ZPair(4, 3) in pairs


def test_pair_elements():
    xa, yb = pair_elements(P33, ZPair(4, 5))
    assert xa == tl_from_word(P33, Word.gen(2, 1, 4))
    assert yb == tl_from_word(P33, Word.gen(2, 2, 5))


def test_element_json_roundtrip():
    e = tl_from_word(P33, parse_word("x*y^-1*x*x", 2))
    assert TLElement.from_json(e.to_json()) == e
