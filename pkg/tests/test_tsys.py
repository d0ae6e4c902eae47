import random

import pytest

from profam.family import build_family
from profam.fingroup import cyclic, dicyclic, direct_product, symmetric
from profam.reps import TorusMatrixRep
from profam.torus import TLParams, ZPair, zieschang_pairs
from profam.tsys import (
    apply_pair_move,
    canonical_pair_separation,
    congruence_image_group,
    generating_tuples,
    invariant_report,
    nielsen_bfs,
    nielsen_orbits,
    planted_path_recovery,
    replay_path,
    tsystem_orbits,
    tuple_move_set,
    zpair_state,
)
from profam.words import pair_move_set

P33 = TLParams(3, 3)


@pytest.fixture(scope="module")
def rep():
    return TorusMatrixRep()


@pytest.fixture(scope="module")
def members(rep):
    return build_family(rep, zieschang_pairs(TLParams(3, 3), 50)[:3])


def test_bfs_trivial():
    s = zpair_state(P33, ZPair(1, 1))
    result = nielsen_bfs(P33, s, s)
    assert result.status == "found" and result.path == ()


def test_bfs_single_move():
    s = zpair_state(P33, ZPair(1, 1))
    moves = pair_move_set()
    t = apply_pair_move(P33, moves[0], s)
    result = nielsen_bfs(P33, s, t, depth=2, word_cap=30)
    assert result.status == "found"
    assert replay_path(P33, s, result.path) == t


def test_bfs_planted_paths_recover():
    report = planted_path_recovery(P33, [ZPair(1, 1), ZPair(4, 5)], trials_per_pair=5)
    assert report.ok
    assert len(report.checks) == 10


def test_bfs_separates_canonical_pairs():
    pairs = [z for z in zieschang_pairs(P33, 12) if z.a + z.b <= 12]
    assert [(z.a, z.b) for z in pairs] == [(1, 1), (4, 5), (5, 7)]
    report = canonical_pair_separation(P33, pairs, depth=4, word_cap=40)
    assert report.ok


def test_found_paths_replay():
    rng = random.Random(41)
    moves = pair_move_set()
    source = zpair_state(P33, ZPair(1, 1))
    target = source
    for _ in range(4):
        target = apply_pair_move(P33, rng.choice(moves), target)
    result = nielsen_bfs(P33, source, target, depth=5, word_cap=50)
    assert result.status == "found"
    assert replay_path(P33, source, result.path) == target


def test_tuple_move_set_sizes():
    assert len(tuple_move_set(1)) == 1  # only inversion
    assert len(tuple_move_set(2)) == 11


def test_nielsen_orbits_c5_rank1():
    table = nielsen_orbits(cyclic(5), 1)
    assert sorted(rep for rep, _ in table.orbits) == [(1,), (2,)]
    assert table.generating_tuple_count == 4
    merged = tsystem_orbits(cyclic(5), 1)
    assert len(merged.orbits) == 1
    assert merged.generating_tuple_count == 4


def test_nielsen_orbits_v4_pairs():
    v4 = direct_product(cyclic(2), cyclic(2))
    table = nielsen_orbits(v4, 2)
    assert len(table.orbits) == 1
    assert table.generating_tuple_count == len(generating_tuples(v4, 2))


def test_orbit_id_invariant_under_moves():
    from profam.words import apply_nielsen

    q8 = dicyclic(2)
    table = nielsen_orbits(q8, 2)
    rng = random.Random(42)
    moves = tuple_move_set(2)
    tuples = generating_tuples(q8, 2)
    for _ in range(50):
        t = rng.choice(tuples)
        m = rng.choice(moves)
        t2 = apply_nielsen(m, t, q8.mul, q8.inv)
        assert table.orbit_of(t) == table.orbit_of(t2)


def test_tsystem_coarsens_nielsen():
    s3 = symmetric(3)
    nt = nielsen_orbits(s3, 2)
    tt = tsystem_orbits(s3, 2)
    assert len(tt.orbits) <= len(nt.orbits)
    assert tt.generating_tuple_count == nt.generating_tuple_count
    # every nielsen orbit sits inside exactly one tsystem orbit
    for rep_tuple, _ in nt.orbits:
        tid = tt.orbit_of(rep_tuple)
        rng = random.Random(43)
        moves = tuple_move_set(2)
        t = rep_tuple
        for _ in range(10):
            from profam.words import apply_nielsen

            t = apply_nielsen(rng.choice(moves), t, s3.mul, s3.inv)
            assert tt.orbit_of(t) == tid


def test_orbits_budget():
    with pytest.raises(ValueError):
        generating_tuples(symmetric(4), 2, budget=100)


def test_congruence_image_group_mod4(members):
    built = congruence_image_group(members[0], 4)
    assert built is not None
    Q, (gx, gy) = built
    assert Q.order == 24
    assert Q.generates((gx, gy))


def test_congruence_image_group_capped(members):
    assert congruence_image_group(members[0], 5, cap=1000) is None


def test_invariant_report(members):
    report = invariant_report(members, (2, 4, 5), cap=5000)
    moduli_seen = {r.modulus for r in report.rows}
    assert moduli_seen == {2, 4}
    assert {m for m, _ in report.skipped} == {5}
    for r in report.rows:
        assert r.generates
    statuses = dict(report.verdicts)
    assert set(statuses) == {2, 4}
    assert all(s in ("conclusive", "inconclusive") for s in statuses.values())
    js = report.to_json()
    assert set(js) == {"rows", "skipped", "verdicts"}
