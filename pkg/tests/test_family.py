import random

import pytest

from profam.family import (
    BudgetExceeded,
    FamilyMember,
    abelian_hom_count,
    abelianization_invariants,
    brute_force_hom_count,
    build_beta_isomorphism,
    build_family,
    congruence_images_equal,
    congruence_suite,
    family_from_json,
    family_to_json,
    fingerprint,
    hom_count,
    hom_count_matrices,
    member_congruence_image,
)
from profam.fingroup import (
    cyclic,
    dicyclic,
    dihedral,
    direct_product,
    symmetric,
)
from profam.intmat import IntMatrix
from profam.reps import TorusMatrixRep
from profam.torus import TLParams, ZPair, zieschang_pairs


@pytest.fixture(scope="module")
def rep():
    return TorusMatrixRep()


@pytest.fixture(scope="module")
def members(rep):
    return build_family(rep, zieschang_pairs(TLParams(3, 3), 50)[:3])


TOY_CASES = [
    (IntMatrix.from_rows([[0, -1], [1, 0]]), IntMatrix.from_rows([[1, 1], [0, 1]])),
    (IntMatrix.from_rows([[1, 2], [0, 1]]), IntMatrix.from_rows([[1, 0], [0, -1]])),
    (IntMatrix.from_rows([[1, 0], [0, 1]]), IntMatrix.from_rows([[-1, 0], [0, -1]])),
]

TOY_TARGETS = [
    cyclic(1),
    cyclic(2),
    cyclic(3),
    cyclic(4),
    direct_product(cyclic(2), cyclic(2)),
    symmetric(3),
    cyclic(6),
    dihedral(4),
    dicyclic(2),
]


@pytest.mark.parametrize("mx,my", TOY_CASES)
@pytest.mark.parametrize("Q", TOY_TARGETS, ids=lambda g: g.name)
def test_pruned_engine_matches_brute_force(mx, my, Q):
    pruned = hom_count_matrices(mx, my, Q, double_check=True)
    assert pruned == brute_force_hom_count(mx, my, Q)


def test_trivial_target(members):
    assert hom_count(members[0], cyclic(1)) == (1, 1)


def test_hom_count_rejects_oversize_target():
    with pytest.raises(BudgetExceeded):
        hom_count_matrices(*TOY_CASES[0], cyclic(25))


def test_build_family_validates_pairs(rep):
    with pytest.raises(ValueError):
        build_family(rep, [ZPair(2, 2)])


def test_member_matrices(rep, members):
    m0 = members[0]
    assert m0.label == (1, 1)
    assert m0.mx == rep.phi_x and m0.my == rep.phi_y
    assert m0.mx**3 == m0.my**3  # the defining relator survives
    m45 = members[1]
    assert m45.label == (4, 5)
    assert m45.mx == rep.phi_x**4 and m45.my == rep.phi_y**5


def test_member_validation():
    with pytest.raises(ValueError):
        FamilyMember(1, 1, IntMatrix.from_rows([[2, 0], [0, 1]]), IntMatrix.identity(2))


def test_abelianization_trivial_action():
    m = FamilyMember(1, 1, IntMatrix.identity(12), IntMatrix.identity(12))
    assert abelianization_invariants(m) == (14, ())


def test_abelianization_regression(members):
    # frozen output of the deterministic pipeline
    assert abelianization_invariants(members[0]) == (3, (2, 2, 2))
    assert all(abelianization_invariants(m) == (3, (2, 2, 2)) for m in members)


def test_abelian_oracle_matches_engine(members):
    for Q in (cyclic(2), cyclic(4), direct_product(cyclic(2), cyclic(2)), cyclic(9)):
        hom, _ = hom_count(members[0], Q)
        assert hom == abelian_hom_count(members[0], Q)


def test_abelian_oracle_rejects_nonabelian(members):
    with pytest.raises(ValueError):
        abelian_hom_count(members[0], symmetric(3))


def test_hom_count_c2_is_two_to_the_rank(members):
    # |Hom(G, C2)| = 2^(2-rank of H_1): rank 3 free + (Z/2)^3 torsion
    hom, _ = hom_count(members[0], cyclic(2))
    assert hom == 2 ** (3 + 3)


def test_fingerprint_small_library_equal_across_members(members):
    lib = [cyclic(1), cyclic(2), cyclic(3), cyclic(4), symmetric(3)]
    fps = [fingerprint(m, lib) for m in members]
    assert fps[0].entries == fps[1].entries == fps[2].entries
    assert fps[0].entries[0] == ("C1", 1, 1)


def test_fingerprint_validation():
    from profam.family import Fingerprint

    with pytest.raises(ValueError):
        Fingerprint((("Q", 1, 2),))  # epi > hom


def test_congruence_images(members):
    cmp23 = congruence_images_equal(members[0], members[1], 3)
    assert cmp23.status == "equal"
    assert cmp23.orders[0] == cmp23.orders[1] == 41472
    cmp2 = congruence_images_equal(members[0], members[2], 2)
    assert cmp2.status == "equal" and cmp2.orders[0] == 3


def test_congruence_cap(members):
    out = congruence_images_equal(members[0], members[1], 5, cap=1000)
    assert out.status == "cap_exceeded"


def test_congruence_negative_control(members):
    # a member with a non-generating pair (Mx alone twice) mod 3 differs
    planted = FamilyMember(1, 1, members[0].mx, members[0].mx)
    cmp = congruence_images_equal(members[0], planted, 3)
    assert cmp.status == "different"
    assert cmp.orders[1] < cmp.orders[0]


def test_congruence_suite_statuses(members):
    report = congruence_suite(members[:2], (2, 4), cap=10**6)
    assert report.ok
    capped = congruence_suite(members[:2], (5,), cap=100)
    assert capped.checks[0].status == "inconclusive"


def test_family_json_roundtrip(members):
    back = family_from_json(family_to_json(members))
    assert back == list(members)
    with pytest.raises(ValueError):
        family_from_json({"schema": 2, "members": []})


def test_beta_isomorphism_z7_example():
    # N = Z/7, Q = Z/3 acting by *2 and *4 = *2^2; gamma = squaring
    c7, c3 = cyclic(7), cyclic(3)
    mul2 = tuple((2 * n) % 7 for n in range(7))
    mul4 = tuple((4 * n) % 7 for n in range(7))
    ident = tuple(range(7))
    phi1 = [ident, mul2, mul4]
    phi2 = [ident, mul4, mul2]
    gamma = tuple((2 * q) % 3 for q in range(3))
    alpha = tuple(range(7))
    result = build_beta_isomorphism(c7, c3, phi1, phi2, alpha, gamma)
    assert result.ok
    assert result.beta.is_homomorphism() and result.beta.is_injective()


def test_beta_isomorphism_identity_case():
    c7, c3 = cyclic(7), cyclic(3)
    mul2 = tuple((2 * n) % 7 for n in range(7))
    mul4 = tuple((4 * n) % 7 for n in range(7))
    phi = [tuple(range(7)), mul2, mul4]
    result = build_beta_isomorphism(
        c7, c3, phi, phi, tuple(range(7)), tuple(range(3))
    )
    assert result.ok


def test_beta_isomorphism_refusal_names_generator():
    c7, c3 = cyclic(7), cyclic(3)
    mul2 = tuple((2 * n) % 7 for n in range(7))
    mul4 = tuple((4 * n) % 7 for n in range(7))
    phi1 = [tuple(range(7)), mul2, mul4]
    phi2 = [tuple(range(7)), mul4, mul2]
    # corrupted gamma: identity does not intertwine distinct actions
    result = build_beta_isomorphism(c7, c3, phi1, phi2, tuple(range(7)), tuple(range(3)))
    assert not result.ok
    assert result.violated_generator == 1


def test_beta_isomorphism_rejects_non_automorphisms():
    c7, c3 = cyclic(7), cyclic(3)
    phi = [tuple(range(7))] * 3
    with pytest.raises(ValueError):
        build_beta_isomorphism(c7, c3, phi, phi, (0,) * 7, tuple(range(3)))
