"""Acceptance suite: one test per criterion, run at full stated scale.

Each test prints a single `criterion NN PASS/FAIL (…s)` line (visible
with pytest -s, and in captured output otherwise) and asserts both the
criterion and its runtime bound.
"""

import math
import time

import pytest

from profam.cli import (
    example32_suite,
    fingerprint_suite,
    gaschutz_suite,
    kernel_suite,
    krasner_suite,
    nielsen_suite,
    normal_closure_suite,
)
from profam.family import build_family, congruence_suite
from profam.groups_lib import load_library
from profam.reps import TorusMatrixRep, verify_autF9_relations, verify_gl12_relations, verify_phi
from profam.torus import TLParams, zieschang_pairs

SEED = 20339


@pytest.fixture(scope="module")
def rep():
    return TorusMatrixRep()


@pytest.fixture(scope="module")
def members(rep):
    return build_family(rep, zieschang_pairs(TLParams(3, 3), 50)[:5])


def finish(num: int, desc: str, ok: bool, t0: float, limit_s: float):
    elapsed = time.time() - t0
    print(f"criterion {num:02d} {'PASS' if ok else 'FAIL'} ({elapsed:.1f}s): {desc}")
    assert ok, f"criterion {num} failed: {desc}"
    assert elapsed < limit_s, f"criterion {num} exceeded {limit_s}s ({elapsed:.1f}s)"


def test_criterion_01_example32():
    t0 = time.time()
    report = example32_suite()
    finish(1, "order-32 example: all five claims against complete Aut(G)", report.ok, t0, 60)


def test_criterion_02_kernel_ranks():
    t0 = time.time()
    report = kernel_suite()
    finish(2, "kernel presentations abelianize to Z^(k+1), Euler identity", report.ok, t0, 60)


def test_criterion_03_gl12():
    t0 = time.time()
    report = verify_gl12_relations(search_len=10)
    finish(3, "GL12 relation suite incl. no (a0,b0) relation to length 10", report.ok, t0, 60)


def test_criterion_04_autf9():
    t0 = time.time()
    report = verify_autF9_relations(search_len=8)
    finish(4, "Aut(F9) relation suite incl. no trivial (f0,g0) word to length 8", report.ok, t0, 300)


def test_criterion_05_phi(rep):
    t0 = time.time()
    report = verify_phi(rep, pairs=500, seed=SEED)
    finish(5, "Phi: relator, 500-pair multiplicativity, bounded injectivity", report.ok, t0, 600)


def test_criterion_06_fingerprints(members):
    t0 = time.time()
    library = load_library(max_order=14)  # 24 groups of order <= 12 + C13, D7
    assert sum(1 for g in library if g.order <= 12) == 24
    report, fingerprints = fingerprint_suite(members, library)
    equal = all(
        len({fp.entries[i][1:] for fp in fingerprints}) == 1 for i in range(len(library))
    )
    finish(
        6,
        "fingerprints equal componentwise across 5 members; abelian oracle agrees",
        report.ok and equal,
        t0,
        7200,
    )


def test_criterion_07_congruence(members):
    t0 = time.time()
    report = congruence_suite(members, (2, 3, 4, 5), cap=10**6)
    completed = [c for c in report.checks if c.status != "inconclusive"]
    finish(
        7,
        f"congruence images equal at every completing modulus ({len(completed)}/4 completed)",
        report.ok and len(completed) >= 3,
        t0,
        1800,
    )


def test_criterion_08_nielsen():
    t0 = time.time()
    report = nielsen_suite(SEED, trials=20, depth=6, word_cap=60)
    separations = [c for c in report.checks if c.name.startswith("no path")]
    plants = [c for c in report.checks if c.name.startswith("recovered")]
    finish(
        8,
        f"no Nielsen path between distinct canonical pairs (depth 6); "
        f"{len(plants)}/20 planted paths recovered",
        report.ok and len(plants) == 20 and len(separations) == 3,
        t0,
        1800,
    )


def test_criterion_09_gaschutz():
    t0 = time.time()
    report = gaschutz_suite(trials=200, seed=SEED)
    finish(9, "Gaschutz lifting succeeds on 200 seeded instances", report.ok and len(report.checks) == 200, t0, 600)


def test_criterion_10_normal_closure():
    t0 = time.time()
    report = normal_closure_suite(trials=20, seed=SEED)
    finish(10, "normal-closure formula on 20 seeded semidirect products", report.ok and len(report.checks) == 20, t0, 300)


def test_criterion_11_krasner():
    t0 = time.time()
    report = krasner_suite(pairs=500, seed=SEED)
    finish(11, "Krasner embeddings exhaustive (|G| <= 64) and T(3,3) on 500 pairs", report.ok, t0, 300)
