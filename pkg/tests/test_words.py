import random

import pytest
from hypothesis import given, strategies as st

from profam.words import (
    FreeEndo,
    NielsenMove,
    Word,
    apply_nielsen,
    compose,
    format_word,
    pair_move_set,
    parse_word,
    reduce_word,
    verify_automorphism,
)


def naive_reduce(letters):
    """Oracle: repeatedly delete adjacent canceling pairs until stable."""
    out = list(letters)
    changed = True
    while changed:
        changed = False
        for i in range(len(out) - 1):
            if out[i] == -out[i + 1]:
                del out[i : i + 2]
                changed = True
                break
    return tuple(out)


letters_st = st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), max_size=40)


def test_reduce_examples():
    assert reduce_word(1, (1, -1)).letters == ()
    assert reduce_word(2, (1, 2, -2, 1)).letters == (1, 1)


@given(letters_st)
def test_reduce_matches_stack_oracle(raw):
    assert reduce_word(3, raw).letters == naive_reduce(raw)


@given(letters_st)
def test_reduce_idempotent(raw):
    w = reduce_word(3, raw)
    assert reduce_word(3, w.letters) == w


@given(letters_st, letters_st)
def test_reduction_confluent_across_split(u, v):
    # reducing pieces first then concatenating equals reducing the whole
    whole = reduce_word(3, tuple(u) + tuple(v))
    assert reduce_word(3, u) * reduce_word(3, v) == whole


def test_word_validation():
    with pytest.raises(ValueError):
        Word(2, (3,))
    with pytest.raises(ValueError):
        Word(2, (1, -1))
    with pytest.raises(ValueError):
        reduce_word(2, (0,))


def test_inverse_and_power():
    w = parse_word("x*y^-1*x", 2)
    assert (w * w.inverse()).is_identity
    assert w**0 == Word.identity(2)
    assert w**-2 == (w.inverse()) ** 2


def test_parse_format_roundtrip():
    for text in ("x3^-1*x0*x0", "1", "x0", "x8^-1"):
        assert format_word(parse_word(text, 9)) == text
    w = parse_word("x^3*y^-3", 2)
    assert w.letters == (1, 1, 1, -2, -2, -2)


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse_word("w", 2)
    with pytest.raises(ValueError):
        parse_word("x^two", 2)


def test_apply_endo_examples():
    # x0 -> x0*x1 fixes the rest
    f0 = FreeEndo.from_map(9, {1: Word(9, (1, 2))})
    assert f0(Word.gen(9, 1)) == Word(9, (1, 2))
    assert f0(Word.gen(9, 5)) == Word.gen(9, 5)
    ident = FreeEndo.identity(9)
    for i in range(1, 10):
        assert ident(Word.gen(9, i)) == Word.gen(9, i)


def test_double_substitution():
    # (h0 . f0)(x0) = x1 x0 x1, computed by substituting twice by hand
    f0 = FreeEndo.from_map(9, {1: Word(9, (1, 2))})
    h0 = FreeEndo.from_map(9, {1: Word(9, (2, 1))})
    assert compose(h0, f0)(Word.gen(9, 1)) == Word(9, (2, 1, 2))
    assert compose(f0, h0)(Word.gen(9, 1)) == Word(9, (2, 1, 2))


def test_compose_identity_and_action_order():
    e = FreeEndo.from_map(2, {1: parse_word("x*y", 2)})
    assert compose(FreeEndo.identity(2), e) == e
    assert compose(e, FreeEndo.identity(2)) == e
    # compose(e1, e2) applies e2 first
    swap = FreeEndo(2, (Word.gen(2, 2), Word.gen(2, 1)))
    both = compose(e, swap)
    assert both(Word.gen(2, 1)) == e(swap(Word.gen(2, 1)))


@given(letters_st, letters_st)
def test_endo_is_monoid_action(u, v):
    e = FreeEndo(3, (parse_word("x1*x2", 3, ("x1", "x2", "x3")), Word.gen(3, 3), Word.gen(3, 1)))
    wu, wv = reduce_word(3, u), reduce_word(3, v)
    assert e(wu * wv) == e(wu) * e(wv)


def test_verify_automorphism():
    f0 = FreeEndo.from_map(9, {1: Word(9, (1, 2))})
    f0_inv = FreeEndo.from_map(9, {1: Word(9, (1, -2))})
    assert verify_automorphism(f0, f0_inv)
    # x -> x^2 on F_1 admits no inverse
    square = FreeEndo(1, (Word(1, (1, 1)),))
    assert not verify_automorphism(square, square)
    assert not verify_automorphism(square, FreeEndo.identity(1))


def test_nielsen_moves_on_free_tuples():
    mul = lambda a, b: a * b
    inv = lambda a: a.inverse()
    x, y = Word.gen(2, 1), Word.gen(2, 2)
    assert apply_nielsen(NielsenMove("swap", 0, 1), (x, y), mul, inv) == (y, x)
    t = apply_nielsen(NielsenMove("invert", 0), (x, y), mul, inv)
    assert apply_nielsen(NielsenMove("invert", 0), t, mul, inv) == (x, y)
    # left multiply: t_0 <- t_1 * t_0
    assert apply_nielsen(NielsenMove("lmul", 0, 1), (x, y), mul, inv) == (y * x, y)


@pytest.mark.parametrize("move", pair_move_set())
def test_every_move_has_elementary_inverse(move):
    mul = lambda a, b: a * b
    inv = lambda a: a.inverse()
    rng = random.Random(7)
    for _ in range(5):
        t = tuple(
            reduce_word(2, [rng.choice([1, -1, 2, -2]) for _ in range(rng.randrange(0, 8))])
            for _ in range(2)
        )
        forward = apply_nielsen(move, t, mul, inv)
        assert apply_nielsen(move.inverse(), forward, mul, inv) == t


def test_move_validation():
    with pytest.raises(ValueError):
        NielsenMove("lmul", 1, 1)
    with pytest.raises(ValueError):
        NielsenMove("frob", 0, 1)


def test_subgroup_invariance_under_moves():
    # in a finite evaluation context the generated subgroup is unchanged
    from profam.fingroup import symmetric

    s4 = symmetric(4)
    rng = random.Random(3)
    moves = pair_move_set()
    for _ in range(20):
        t = (rng.randrange(24), rng.randrange(24))
        before = s4.closure(t)
        move = rng.choice(moves)
        after = s4.closure(apply_nielsen(move, t, s4.mul, s4.inv))
        assert before == after
