import math

import pytest
from hypothesis import given, settings, strategies as st

from profam.intmat import (
    IntMatrix,
    block_diag,
    bounded_relation_search,
    column_hnf,
    congruence_closure,
    permutation_matrix,
    sanov_pair,
    smith_normal_form,
)


def test_identity_and_multiplication():
    a = IntMatrix.from_rows([[1, 2], [3, 4]])
    assert a * IntMatrix.identity(2) == a
    assert (a + (-a)) == IntMatrix.zeros(2, 2)
    assert a.transpose().transpose() == a


def test_determinant_and_inverse():
    a = IntMatrix.from_rows([[2, 1], [1, 1]])
    assert a.det() == 1
    assert (a * a.inverse()).is_identity()
    singular = IntMatrix.from_rows([[1, 2], [2, 4]])
    assert singular.det() == 0
    with pytest.raises(ValueError):
        singular.inverse()


def test_snf_diag_examples():
    snf = smith_normal_form(IntMatrix.identity(2))
    assert snf.divisors == (1, 1)
    snf = smith_normal_form(IntMatrix.from_rows([[2, 0], [0, 3]]))
    assert snf.divisors == (1, 6)
    assert snf.cokernel_invariants() == (0, (6,))


def test_snf_cokernel_oracle_for_diag_2_3():
    # oracle: |Z^2 / L| equals |det| = 6 and the exponent of the quotient
    # is the least k with k*e_i in L for all i, which is 6; with the
    # divisibility chain this forces (1, 6).
    lattice = [(2, 0), (0, 3)]

    def in_lattice(v):
        # solve a*(2,0) + b*(0,3) = v over Z
        return v[0] % 2 == 0 and v[1] % 3 == 0

    exponent = next(
        k for k in range(1, 7) if in_lattice((k, 0)) and in_lattice((0, k))
    )
    assert exponent == 6
    snf = smith_normal_form(IntMatrix.from_rows(lattice))
    assert math.prod(snf.divisors) == 6
    assert snf.divisors[-1] == exponent


def test_snf_zero_matrix_cokernel():
    snf = smith_normal_form(IntMatrix.zeros(2, 3))
    assert snf.cokernel_invariants() == (2, ())


@settings(max_examples=60)
@given(
    st.integers(1, 4),
    st.integers(1, 4),
    st.data(),
)
def test_snf_random_verifies_factorization(rows, cols, data):
    entries = [
        [data.draw(st.integers(-9, 9)) for _ in range(cols)] for _ in range(rows)
    ]
    m = IntMatrix.from_rows(entries)
    snf = smith_normal_form(m)
    assert snf.u * m * snf.v == snf.s
    assert abs(snf.u.det()) == 1
    assert abs(snf.v.det()) == 1
    for d1, d2 in zip(snf.divisors, snf.divisors[1:]):
        assert d2 % d1 == 0
    # off-diagonal entries all vanish
    for i in range(rows):
        for j in range(cols):
            if i != j:
                assert snf.s.entries[i][j] == 0


def test_column_hnf_canonical():
    # two generating sets of the same lattice give the same basis
    b1 = column_hnf([(2, 0), (0, 3), (2, 3)], 2)
    b2 = column_hnf([(2, 3), (2, 0)], 2)
    assert b1 == b2
    assert column_hnf([(0, 0)], 2) == ()


def test_block_diag_and_permutation():
    eye2 = IntMatrix.identity(2)
    assert block_diag([eye2, eye2]) == IntMatrix.identity(4)
    sigma = permutation_matrix([(j + 2) % 6 for j in range(6)], block_size=2)
    assert (sigma**3).is_identity()
    assert not (sigma**2).is_identity()


def test_sanov_pair_exact():
    a, b = sanov_pair()
    assert a.entries == ((1, 2), (0, 1))
    assert b.entries == ((1, 0), (2, 1))
    assert (a * a.inverse()).is_identity()
    assert a * b != b * a


def test_relation_search_planted():
    a, _ = sanov_pair()
    found = bounded_relation_search([a, a.inverse()], 2)
    assert found is not None and found.letters == (1, 2)


def test_relation_search_order_three():
    sigma = permutation_matrix([1, 2, 0])
    found = bounded_relation_search([sigma], 3)
    assert found is not None and found.letters == (1, 1, 1)
    # no shorter relation
    assert bounded_relation_search([sigma], 2) is None


def test_relation_search_sanov_free_to_length_12():
    a, b = sanov_pair()
    assert bounded_relation_search([a, b], 12) is None


def test_relation_search_rejects_singular():
    with pytest.raises(ValueError):
        bounded_relation_search([IntMatrix.from_rows([[1, 2], [2, 4]])], 2)


def test_congruence_closure_examples():
    a, b = sanov_pair()
    assert congruence_closure([a], 2).order == 1  # A = I mod 2
    assert congruence_closure([a], 3).order == 3  # unipotent of order 3
    assert congruence_closure([IntMatrix.identity(2)], 5).order == 1
    full = congruence_closure([a, b], 3)
    assert full.order == 24  # SL2(F3)
    assert 48 % full.order == 0  # divides |GL2(F3)|


def test_congruence_closure_cap():
    a, b = sanov_pair()
    capped = congruence_closure([a, b], 5, cap=10)
    assert capped.capped and capped.order is None


def test_matrix_json_roundtrip():
    a, _ = sanov_pair()
    assert IntMatrix.from_json(a.to_json()) == a
    with pytest.raises(ValueError):
        IntMatrix.from_json({"rows": 3, "cols": 2, "entries": [[1, 0], [0, 1]]})
