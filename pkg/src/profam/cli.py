"""profam command line: construction, verification, certificates.

Subcommand tree: torus | fingroup | reps | family | tsys | verify.
Every verification writes a JSON certificate (stdout or --out); exit
codes: 0 pass, 2 usage, 3 check failure, 4 I/O failure.  Randomized
suites take --seed and default to a fixed seed, so certificates are
byte-identical across runs apart from the wall_time_s field.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import random
import sys
import time
from pathlib import Path

from . import __version__
from .checks import Check, CheckReport
from .family import (
    BudgetExceeded,
    abelian_hom_count,
    abelianization_invariants,
    build_family,
    congruence_suite,
    family_from_json,
    family_to_json,
    fingerprint,
    hom_count,
    member_congruence_image,
)
from .fingroup import (
    FiniteExtension,
    FiniteGroup,
    FiniteHom,
    alternating,
    automorphisms,
    cyclic,
    dicyclic,
    dihedral,
    direct_product,
    gaschutz_lift,
    hom_from_generator_images,
    krasner_embed,
    normal_closure,
    quotient,
    semidirect,
    symmetric,
    verify_example_32,
    verify_normal_closure_formula,
)
from .groups_lib import load_library
from .reps import (
    TorusMatrixRep,
    all_normal_forms,
    derive_kernel_basis,
    verify_autF9_relations,
    verify_gl12_relations,
    verify_phi,
)
from .torus import (
    TLParams,
    ZPair,
    kernel_rank,
    reidemeister_schreier_kernel,
    tl_from_word,
    zieschang_pairs,
)
from .tsys import (
    canonical_pair_separation,
    invariant_report,
    nielsen_bfs,
    nielsen_orbits,
    planted_path_recovery,
    tsystem_orbits,
    zpair_state,
)
from .words import Word, format_word, parse_word

DEFAULT_SEED = 20339
EXIT_OK, EXIT_USAGE, EXIT_CHECK, EXIT_IO = 0, 2, 3, 4

_REP_CACHE: dict[str, TorusMatrixRep] = {}


def matrix_rep() -> TorusMatrixRep:
    if "rep" not in _REP_CACHE:
        _REP_CACHE["rep"] = TorusMatrixRep()
    return _REP_CACHE["rep"]


def write_certificate(report: CheckReport, args, parameters: dict, t0: float) -> int:
    cert = {
        "schema": 1,
        "tool": f"profam {__version__}",
        "command": report.title,
        "parameters": parameters,
        "wall_time_s": round(time.time() - t0, 3),
        "pass": report.ok,
        "checks": report.to_json()["checks"],
    }
    text = json.dumps(cert, indent=2) + "\n"
    out = getattr(args, "out", None)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)
    for check in report.failures():
        print(f"FAIL {check.name}", file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_CHECK


# --- instance pools for the randomized suites -----------------------------------


def _group_pool(max_order: int) -> list[FiniteGroup]:
    pool = [
        cyclic(n) for n in (2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 15, 16, 20, 24, 36, 48)
    ]
    pool += [dihedral(n) for n in (3, 4, 5, 6, 8, 10, 12)]
    pool += [dicyclic(n) for n in (2, 3, 4, 6)]
    pool += [symmetric(3), symmetric(4), alternating(4)]
    pool += [
        direct_product(cyclic(2), cyclic(2)),
        direct_product(cyclic(4), cyclic(2)),
        direct_product(cyclic(2), direct_product(cyclic(2), cyclic(2)), name="C2xC2xC2"),
        direct_product(cyclic(3), cyclic(3)),
        direct_product(cyclic(6), cyclic(2)),
        direct_product(cyclic(4), cyclic(4)),
        direct_product(cyclic(2), dihedral(4), name="C2xD4"),
        direct_product(cyclic(3), symmetric(3), name="C3xS3"),
        direct_product(cyclic(2), alternating(4), name="C2xA4"),
        direct_product(cyclic(2), dicyclic(2), name="C2xQ8"),
    ]
    return [g for g in pool if g.order <= max_order]


def gaschutz_suite(trials: int, seed: int, max_order: int = 48) -> CheckReport:
    """Random lifting instances: quotient a pool group by a random normal
    subgroup, pick a random generating tuple downstairs, lift it."""
    rng = random.Random(seed)
    pool = _group_pool(max_order)
    mingens = {id(g): g.minimal_generating_tuple() for g in pool}
    report = CheckReport("gaschutz lifting")
    done = 0
    while done < trials:
        d = rng.choice((2, 3))
        candidates = [g for g in pool if len(mingens[id(g)]) <= d]
        gamma = rng.choice(candidates)
        seeds = [rng.randrange(gamma.order) for _ in range(rng.choice((1, 2)))]
        kernel_ids = normal_closure(gamma, seeds)
        delta, qmap = quotient(gamma, gamma.subgroup(kernel_ids))
        p = FiniteHom(gamma, delta, qmap)
        while True:
            delta_tuple = tuple(rng.randrange(delta.order) for _ in range(d))
            if delta.generates(delta_tuple):
                break
        try:
            lift = gaschutz_lift(p, delta_tuple, rng=rng)
        except ValueError as exc:
            report.add(f"trial {done}: lift exists ({gamma.name} -> {delta.name}, d={d})", False, str(exc))
            done += 1
            continue
        ok = gamma.generates(lift) and all(p(g) == dd for g, dd in zip(lift, delta_tuple))
        report.add(f"trial {done}: lift generates and projects ({gamma.name}, d={d})", ok)
        done += 1
    return report


def _automorphism_group(N: FiniteGroup) -> tuple[FiniteGroup, list[tuple[int, ...]]]:
    maps = [a.mapping for a in automorphisms(N)]
    index = {m: i for i, m in enumerate(maps)}
    table = [
        [index[tuple(mi[mj[x]] for x in range(N.order))] for mj in maps] for mi in maps
    ]
    return FiniteGroup(table, name=f"Aut({N.name})", check=False), maps


def normal_closure_suite(trials: int, seed: int, max_order: int = 24) -> CheckReport:
    """Random semidirect products and random normal L <= H; the normal
    closure of L in N x| H must equal D * L."""
    rng = random.Random(seed)
    pool = [g for g in _group_pool(max_order) if g.order <= max_order]
    report = CheckReport("normal closure formula")
    done = 0
    while done < trials:
        N = rng.choice([g for g in pool if g.order <= 12])
        H = rng.choice([g for g in pool if g.order * N.order <= 288])
        aut_group, aut_maps = _automorphism_group(N)
        gens = H.minimal_generating_tuple()
        action = None
        for _ in range(40):
            images = tuple(rng.randrange(aut_group.order) for _ in gens)
            hom = hom_from_generator_images(H, aut_group, gens, images)
            if hom is not None:
                action = [aut_maps[hom(q)] for q in range(H.order)]
                break
        if action is None:
            action = [tuple(range(N.order)) for _ in range(H.order)]
        seeds = [rng.randrange(H.order) for _ in range(rng.choice((1, 2)))]
        L = normal_closure(H, seeds)
        ok = verify_normal_closure_formula(N, H, action, L)
        report.add(
            f"trial {done}: <<L>>_G = D*L  (N={N.name}, H={H.name}, |L|={len(L)})", ok
        )
        done += 1
    return report


def krasner_suite(pairs: int, seed: int) -> CheckReport:
    """Exhaustive wreath embeddings for small extensions, then the
    T(3,3) embedding: multiplicativity on random word pairs and
    injectivity on bounded normal forms."""
    report = CheckReport("krasner embeddings")

    def split_ext(G: FiniteGroup, kernel_ids) -> FiniteExtension:
        sub = G.subgroup(kernel_ids)
        n_abs, emb = sub.as_group()
        Q, qmap = quotient(G, sub)
        return FiniteExtension(G, n_abs, emb, Q, tuple(qmap))

    c4 = cyclic(4)
    s3 = symmetric(3)
    q8 = dicyclic(2)
    d4 = dihedral(4)
    from .fingroup import build_example32

    g32, n1, _ = build_example32()
    three_cycle = next(x for x in range(s3.order) if s3.element_order(x) == 3)
    d4_rot = next(x for x in range(d4.order) if d4.element_order(x) == 4)
    cases = [
        ("C4 over C2", split_ext(c4, (0, 2))),
        ("S3 over C2", split_ext(s3, s3.closure([three_cycle]))),
        ("Q8 over V4", split_ext(q8, q8.center)),
        ("D4 over C2", split_ext(d4, d4.closure([d4_rot]))),
        ("order-32 example over C4", split_ext(g32, n1.elements)),
    ]
    for name, ext in cases:
        ts = []
        for c in range(ext.Q.order):
            ts.append(next(g for g in range(ext.G.order) if ext.qmap[g] == c))
        try:
            emb = krasner_embed(ext, ts)
            report.add(f"{name}: injective + multiplicative (|G|={ext.G.order})", True,
                       witness={"wreath_order": emb.wreath.order})
        except AssertionError as exc:
            report.add(f"{name}: injective + multiplicative", False, str(exc))

    rep = matrix_rep()
    params = rep.params
    rng = random.Random(seed)
    from .words import reduce_word

    ok = True
    for _ in range(pairs):
        w1 = reduce_word(2, [rng.choice([1, -1, 2, -2]) for _ in range(rng.randrange(0, 10))])
        w2 = reduce_word(2, [rng.choice([1, -1, 2, -2]) for _ in range(rng.randrange(0, 10))])
        e1 = tl_from_word(params, w1)
        e2 = tl_from_word(params, w2)
        if rep.kappa(tl_from_word(params, w1 * w2)) != rep.kappa(e1) * rep.kappa(e2):
            ok = False
            break
    report.add(f"T(3,3) embedding multiplicative on {pairs} random word pairs", ok)
    forms = all_normal_forms(params, max_syllables=4, max_central=2)
    images = {rep.kappa(e) for e in forms}
    report.add(
        f"T(3,3) embedding injective on {len(forms)} bounded normal forms",
        len(images) == len(forms),
    )
    return report


def kernel_suite() -> CheckReport:
    report = CheckReport("kernel presentations")
    for p, q in ((2, 2), (2, 3), (3, 3), (2, 5), (3, 4), (4, 6)):
        params = TLParams(p, q)
        k = kernel_rank(params)
        pres = reidemeister_schreier_kernel(params)
        free, torsion = pres.abelianization()
        report.add(
            f"T({p},{q}): kernel abelianizes to Z^{k + 1}",
            free == k + 1 and torsion == (),
            witness={"free_rank": free, "torsion": list(torsion)},
        )
        lcm = params.lcm
        chi_num = lcm * q + lcm * p - lcm * p * q  # lcm*(1/p + 1/q - 1) * pq / pq
        report.add(
            f"T({p},{q}): Euler characteristic lcm(1/p+1/q-1) = 1-k",
            chi_num == (1 - k) * p * q,
        )
    return report


def example32_suite() -> CheckReport:
    rep = verify_example_32()
    report = CheckReport("order-32 example")
    report.add("|G| = 32", rep.group_order == 32)
    report.add("N1 iso C4 x C2", rep.n1_iso_c4xc2)
    report.add("N2 iso C4 x C2", rep.n2_iso_c4xc2)
    report.add("N1 characteristic", rep.n1_characteristic)
    report.add("N2 characteristic", rep.n2_characteristic)
    report.add("G/N1 iso C4", rep.quotient1_iso_c4)
    report.add("G/N2 iso C4", rep.quotient2_iso_c4)
    report.add("no automorphism carries N1 to N2", rep.no_automorphism_swaps,
               witness={"aut_order": rep.aut_order})
    report.add("(N1, N2) is the unique such pair", rep.subgroup_pair_unique)
    return report


def _fingerprint_one(payload):
    member_json, group_json, budget = payload
    from .family import FamilyMember, hom_count as hc

    member = FamilyMember.from_json(member_json)
    Q = FiniteGroup.from_json(group_json)
    return hc(member, Q, budget)


def fingerprint_suite(
    members, library, jobs: int = 1, branch_budget: int = 20_000_000
) -> tuple[CheckReport, list]:
    from .family import Fingerprint

    report = CheckReport("fingerprint equality")
    fingerprints = []
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        tasks = [
            (m.to_json(), Q.to_json(), branch_budget) for m in members for Q in library
        ]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_fingerprint_one, tasks))
        k = len(library)
        for i, m in enumerate(members):
            entries = tuple(
                (library[j].name, *results[i * k + j]) for j in range(k)
            )
            fingerprints.append(Fingerprint(entries))
    else:
        for m in members:
            fingerprints.append(fingerprint(m, library, branch_budget))

    base = fingerprints[0]
    for Q_idx, Q in enumerate(library):
        counts = {fp.entries[Q_idx][1:] for fp in fingerprints}
        report.add(
            f"(hom, epi) into {Q.name} agree across members",
            len(counts) == 1,
            witness={"hom": base.entries[Q_idx][1], "epi": base.entries[Q_idx][2]},
        )
    for Q_idx, Q in enumerate(library):
        if Q.is_abelian:
            oracle = abelian_hom_count(members[0], Q)
            report.add(
                f"abelian oracle matches for {Q.name}",
                oracle == base.entries[Q_idx][1],
                witness={"oracle": oracle},
            )
    invs = {abelianization_invariants(m) for m in members}
    inv0 = abelianization_invariants(members[0])
    report.add(
        "abelianization invariants identical across members",
        len(invs) == 1,
        witness={"rank": inv0[0], "torsion": list(inv0[1])},
    )
    return report, fingerprints


def nielsen_suite(seed: int, trials: int = 20, depth: int = 6, word_cap: int = 60) -> CheckReport:
    params = TLParams(3, 3)
    pairs = [z for z in zieschang_pairs(params, 12) if z.a + z.b <= 12]
    report = canonical_pair_separation(params, pairs, depth, word_cap)
    base = len(pairs)
    per_pair = [trials // base + (1 if i < trials % base else 0) for i in range(base)]
    for pair, n in zip(pairs, per_pair):
        sub = planted_path_recovery(params, [pair], trials_per_pair=n, depth=depth,
                                    word_cap=word_cap, seed=seed + pair.a * 100 + pair.b)
        report.checks.extend(sub.checks)
    report.title = "nielsen evidence"
    return report


def default_members(count: int = 5):
    params = TLParams(3, 3)
    pairs = zieschang_pairs(params, 50)[:count]
    return build_family(matrix_rep(), pairs)


# --- argument parsing -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="profam",
        description="Families of Z^12 x| F2 sharing all finite quotients: "
        "construction and mechanical verification.",
    )
    parser.add_argument("--version", action="version", version=f"profam {__version__}")
    sub = parser.add_subparsers(dest="module", required=True)

    torus = sub.add_parser("torus", help="torus link group computations")
    tsub = torus.add_subparsers(dest="command", required=True)
    nf = tsub.add_parser("nf", help="normal form of a word")
    nf.add_argument("--p", type=int, required=True)
    nf.add_argument("--q", type=int, required=True)
    nf.add_argument("--word", required=True, help="word over x, y, e.g. x*y*x^-1")
    kern = tsub.add_parser("kernel", help="Reidemeister-Schreier presentation of ker pi")
    kern.add_argument("--p", type=int, required=True)
    kern.add_argument("--q", type=int, required=True)
    zp = tsub.add_parser("pairs", help="canonical Zieschang pairs")
    zp.add_argument("--p", type=int, required=True)
    zp.add_argument("--q", type=int, required=True)
    zp.add_argument("--bound", type=int, default=50)

    fin = sub.add_parser("fingroup", help="finite group verifications")
    fsub = fin.add_subparsers(dest="command", required=True)
    ex = fsub.add_parser("example32", help="the order-32 counterexample")
    ex.add_argument("--out")
    ga = fsub.add_parser("gaschutz", help="random generating-tuple lifts")
    ga.add_argument("--trials", type=int, default=200)
    ga.add_argument("--seed", type=int, default=DEFAULT_SEED)
    ga.add_argument("--out")
    kr = fsub.add_parser("krasner", help="wreath embedding of an extension")
    kr.add_argument("--input", required=True, help="JSON: {group, kernel, transversal?}")
    kr.add_argument("--out")

    reps = sub.add_parser("reps", help="matrix and Aut(F9) realizations")
    rsub = reps.add_subparsers(dest="command", required=True)
    gl = rsub.add_parser("gl12", help="the 12x12 generator family")
    gl.add_argument("--verify", action="store_true")
    gl.add_argument("--out")
    af = rsub.add_parser("autf9", help="the Aut(F9) generator family")
    af.add_argument("--verify", action="store_true")
    af.add_argument("--one-based", action="store_true",
                    help="name the basis x1..x9 instead of x0..x8")
    af.add_argument("--out")
    ap = rsub.add_parser("apply", help="apply a composite of the ten generators to a word in F9")
    ap.add_argument("--endo", required=True,
                    help="composition like f0*sigma^-1 (leftmost acts last)")
    ap.add_argument("--word", required=True)
    ap.add_argument("--one-based", action="store_true",
                    help="read and print the basis as x1..x9 instead of x0..x8")
    ph = rsub.add_parser("phi", help="evaluate Phi on a word in x, y")
    ph.add_argument("--word", required=True)
    ph.add_argument("--out", help="write the matrix JSON here")
    kb = rsub.add_parser("kernel-basis", help="derived basis of ker pi")
    kb.add_argument("--p", type=int, default=3)
    kb.add_argument("--q", type=int, default=3)

    fam = sub.add_parser("family", help="the semidirect-product family")
    famsub = fam.add_subparsers(dest="command", required=True)
    fb = famsub.add_parser("build", help="construct members from canonical pairs")
    fb.add_argument("--pairs", type=int, default=5)
    fb.add_argument("--out", required=True)
    ff = famsub.add_parser("fingerprint", help="hom/epi counts into the library")
    ff.add_argument("--family", required=True)
    ff.add_argument("--max-order", type=int, default=14,
                    help="largest library group order (budget reduction)")
    ff.add_argument("--report", help="write the fingerprint report JSON (+ csv, png)")
    ff.add_argument("--no-figures", action="store_true")
    ff.add_argument("--jobs", type=int, default=0, help="parallel workers (0 = auto)")
    ff.add_argument("--budget", type=int, default=20_000_000)
    ff.add_argument("--out")
    fc = famsub.add_parser("congruence", help="compare congruence images")
    fc.add_argument("--family", required=True)
    fc.add_argument("--mod", type=int, required=True)
    fc.add_argument("--cap", type=int, default=10**6)
    fc.add_argument("--out")

    ts = sub.add_parser("tsys", help="Nielsen and T-system computations")
    tssub = ts.add_subparsers(dest="command", required=True)
    tb = tssub.add_parser("bfs", help="bounded Nielsen search between canonical pairs")
    tb.add_argument("--p", type=int, required=True)
    tb.add_argument("--q", type=int, required=True)
    tb.add_argument("--from", dest="source", required=True, help="a,b")
    tb.add_argument("--to", dest="target", required=True, help="c,d")
    tb.add_argument("--depth", type=int, default=6)
    tb.add_argument("--cap", type=int, default=60)
    tb.add_argument("--out")
    to = tssub.add_parser("orbits", help="orbits of generating tuples")
    to.add_argument("--group", required=True, help="group table JSON file")
    to.add_argument("--d", type=int, default=2)
    to.add_argument("--mode", choices=("nielsen", "tsystem"), default="nielsen")
    to.add_argument("--budget", type=int, default=10**6)
    to.add_argument("--out")
    ti = tssub.add_parser("invariants", help="orbit ids of induced pairs per modulus")
    ti.add_argument("--family", required=True)
    ti.add_argument("--mods", required=True, help="comma separated, e.g. 3,4,5")
    ti.add_argument("--report", help="write the report JSON (+ csv, png)")
    ti.add_argument("--no-figures", action="store_true")
    ti.add_argument("--out")

    ver = sub.add_parser("verify", help="acceptance suites")
    ver.add_argument(
        "suite",
        choices=(
            "all",
            "example32",
            "kernels",
            "gl12",
            "autf9",
            "phi",
            "fingerprints",
            "gaschutz",
            "closure",
            "krasner",
            "congruence",
            "nielsen",
        ),
    )
    ver.add_argument("--out")
    ver.add_argument("--seed", type=int, default=DEFAULT_SEED)
    ver.add_argument("--trials", type=int, default=None)
    ver.add_argument("--max-order", type=int, default=14)
    ver.add_argument("--members", type=int, default=5)
    ver.add_argument("--jobs", type=int, default=0,
                     help="parallel workers for fingerprints (0 = auto)")
    return parser


# --- command handlers ---------------------------------------------------------------


def cmd_torus(args) -> int:
    params = TLParams(args.p, args.q)
    if args.command == "nf":
        e = tl_from_word(params, parse_word(args.word, 2))
        print(json.dumps(e.to_json()))
        return EXIT_OK
    if args.command == "kernel":
        pres = reidemeister_schreier_kernel(params)
        free, torsion = pres.abelianization()
        out = {
            "p": args.p,
            "q": args.q,
            "kernel_rank": kernel_rank(params),
            "generators": [format_word(w) for w in pres.gens_xy],
            "relators": [format_word(r, [f"g{i}" for i in range(pres.rank())]) for r in pres.relators],
            "abelianization": {"free_rank": free, "torsion": list(torsion)},
        }
        print(json.dumps(out, indent=2))
        return EXIT_OK
    if args.command == "pairs":
        pairs = zieschang_pairs(params, args.bound)
        print(json.dumps([[z.a, z.b] for z in pairs]))
        return EXIT_OK
    raise AssertionError


def cmd_fingroup(args) -> int:
    t0 = time.time()
    if args.command == "example32":
        return write_certificate(example32_suite(), args, {}, t0)
    if args.command == "gaschutz":
        report = gaschutz_suite(args.trials, args.seed)
        return write_certificate(report, args, {"trials": args.trials, "seed": args.seed}, t0)
    if args.command == "krasner":
        data = json.loads(Path(args.input).read_text())
        G = FiniteGroup.from_json(data["group"])
        sub = G.subgroup(data["kernel"])
        n_abs, emb = sub.as_group()
        Q, qmap = quotient(G, sub)
        ext = FiniteExtension(G, n_abs, emb, Q, tuple(qmap))
        ts = data.get("transversal")
        if ts is None:
            ts = [next(g for g in range(G.order) if qmap[g] == c) for c in range(Q.order)]
        report = CheckReport("krasner embedding")
        try:
            embd = krasner_embed(ext, ts)
            report.add(
                "embedding injective + multiplicative",
                True,
                witness={"group_order": G.order, "wreath_order": embd.wreath.order},
            )
        except (AssertionError, ValueError) as exc:
            report.add("embedding injective + multiplicative", False, str(exc))
        return write_certificate(report, args, {"input": args.input}, t0)
    raise AssertionError


def cmd_reps(args) -> int:
    t0 = time.time()
    if args.command == "gl12":
        report = verify_gl12_relations()
        if args.verify or args.out:
            return write_certificate(report, args, {}, t0)
        gens = build_gl12_names()
        print(json.dumps(gens, indent=1))
        return EXIT_OK
    if args.command == "autf9":
        if args.verify or args.out:
            report = verify_autF9_relations()
            return write_certificate(report, args, {}, t0)
        from .reps import build_autF9_generators

        names = _f9_names(args.one_based)
        table = {
            key: [format_word(w, names) for w in endo.images]
            for key, endo in build_autF9_generators().items()
        }
        print(json.dumps(table, indent=1))
        return EXIT_OK
    if args.command == "apply":
        from .reps import autF9_inverses, build_autF9_generators
        from .words import FreeEndo, compose as compose_endo

        gens = build_autF9_generators()
        invs = autF9_inverses()
        names = _f9_names(args.one_based)
        endo = FreeEndo.identity(9)
        for token in args.endo.split("*"):
            name, _, exp = token.strip().partition("^")
            if name not in gens:
                raise ValueError(f"unknown generator {name!r}")
            power = int(exp) if exp else 1
            piece = gens[name] if power > 0 else invs[name]
            for _ in range(abs(power)):
                endo = compose_endo(endo, piece)
        image = endo(parse_word(args.word, 9, names))
        print(format_word(image, names))
        return EXIT_OK
    if args.command == "phi":
        rep = matrix_rep()
        m = rep.phi_word(parse_word(args.word, 2))
        payload = json.dumps(m.to_json(), indent=1) + "\n"
        if args.out:
            Path(args.out).write_text(payload)
        else:
            sys.stdout.write(payload)
        return EXIT_OK
    if args.command == "kernel-basis":
        params = TLParams(args.p, args.q)
        basis = derive_kernel_basis(params)
        out = {
            "u": format_word(basis.u),
            "v": format_word(basis.v),
            "z": format_word(basis.z),
            "abelianization": {"free_rank": 3, "torsion": []},
        }
        print(json.dumps(out, indent=2))
        return EXIT_OK
    raise AssertionError


def build_gl12_names() -> dict:
    from .reps import build_gl12_generators

    return {k: m.to_json() for k, m in build_gl12_generators().items()}


def _f9_names(one_based: bool) -> tuple[str, ...]:
    return tuple(f"x{i + 1 if one_based else i}" for i in range(9))


def cmd_family(args) -> int:
    t0 = time.time()
    if args.command == "build":
        members = default_members(args.pairs)
        Path(args.out).write_text(json.dumps(family_to_json(members), indent=1) + "\n")
        print(f"wrote {len(members)} members to {args.out}")
        return EXIT_OK
    members = family_from_json(json.loads(Path(args.family).read_text()))
    if args.command == "fingerprint":
        library = load_library(max_order=args.max_order)
        jobs = args.jobs if args.jobs > 0 else (os.cpu_count() or 1)
        report, fingerprints = fingerprint_suite(members, library, jobs, args.budget)
        if args.report:
            labels = [m.label for m in members]
            payload = {
                "schema": 1,
                "members": [list(l) for l in labels],
                "targets": [g.name for g in library],
                "fingerprints": [fp.to_json() for fp in fingerprints],
                "all_equal": report.ok,
            }
            path = Path(args.report)
            path.write_text(json.dumps(payload, indent=1) + "\n")
            from . import report as figs

            figs.fingerprint_csv(path.with_suffix(".csv"), labels, fingerprints)
            if not args.no_figures:
                figs.fingerprint_figure(path.with_suffix(".png"), labels, fingerprints)
        return write_certificate(
            report, args, {"max_order": args.max_order, "members": len(members)}, t0
        )
    if args.command == "congruence":
        report = congruence_suite(members, (args.mod,), args.cap)
        return write_certificate(report, args, {"mod": args.mod, "cap": args.cap}, t0)
    raise AssertionError


def cmd_tsys(args) -> int:
    t0 = time.time()
    if args.command == "bfs":
        params = TLParams(args.p, args.q)
        a, b = (int(x) for x in args.source.split(","))
        c, d = (int(x) for x in args.target.split(","))
        result = nielsen_bfs(
            params,
            zpair_state(params, ZPair(a, b)),
            zpair_state(params, ZPair(c, d)),
            args.depth,
            args.cap,
        )
        out = {
            "status": result.status,
            "depth": result.depth,
            "states_visited": result.states_visited,
            "path": None
            if result.path is None
            else [[m.kind, m.i, m.j, m.sign] for m in result.path],
        }
        payload = json.dumps(out, indent=1) + "\n"
        if args.out:
            Path(args.out).write_text(payload)
        else:
            sys.stdout.write(payload)
        return EXIT_OK
    if args.command == "orbits":
        G = FiniteGroup.from_json(json.loads(Path(args.group).read_text()))
        table = (
            nielsen_orbits(G, args.d, args.budget)
            if args.mode == "nielsen"
            else tsystem_orbits(G, args.d, args.budget)
        )
        payload = json.dumps(table.to_json(), indent=1) + "\n"
        if args.out:
            Path(args.out).write_text(payload)
        else:
            sys.stdout.write(payload)
        return EXIT_OK
    if args.command == "invariants":
        members = family_from_json(json.loads(Path(args.family).read_text()))
        moduli = tuple(int(x) for x in args.mods.split(","))
        rep = invariant_report(members, moduli)
        payload = json.dumps(rep.to_json(), indent=1) + "\n"
        if args.report:
            path = Path(args.report)
            path.write_text(payload)
            from . import report as figs

            figs.invariant_csv(path.with_suffix(".csv"), rep)
            if not args.no_figures and rep.rows:
                figs.invariant_figure(path.with_suffix(".png"), rep)
        else:
            sys.stdout.write(payload)
        return EXIT_OK
    raise AssertionError


def cmd_verify(args) -> int:
    t0 = time.time()
    suite = args.suite
    if suite == "example32":
        return write_certificate(example32_suite(), args, {}, t0)
    if suite == "kernels":
        return write_certificate(kernel_suite(), args, {}, t0)
    if suite == "gl12":
        return write_certificate(verify_gl12_relations(), args, {}, t0)
    if suite == "autf9":
        return write_certificate(verify_autF9_relations(), args, {}, t0)
    if suite == "phi":
        return write_certificate(verify_phi(matrix_rep(), seed=args.seed), args,
                                 {"seed": args.seed}, t0)
    if suite == "gaschutz":
        trials = args.trials if args.trials is not None else 200
        return write_certificate(
            gaschutz_suite(trials, args.seed), args, {"trials": trials, "seed": args.seed}, t0
        )
    if suite == "closure":
        trials = args.trials if args.trials is not None else 20
        return write_certificate(
            normal_closure_suite(trials, args.seed), args,
            {"trials": trials, "seed": args.seed}, t0,
        )
    if suite == "krasner":
        return write_certificate(
            krasner_suite(500, args.seed), args, {"pairs": 500, "seed": args.seed}, t0
        )
    if suite == "fingerprints":
        members = default_members(args.members)
        library = load_library(max_order=args.max_order)
        jobs = args.jobs if args.jobs > 0 else (os.cpu_count() or 1)
        report, _ = fingerprint_suite(members, library, jobs)
        return write_certificate(
            report, args, {"max_order": args.max_order, "members": args.members}, t0
        )
    if suite == "congruence":
        members = default_members(args.members)
        report = congruence_suite(members, (2, 3, 4, 5))
        return write_certificate(report, args, {"members": args.members}, t0)
    if suite == "nielsen":
        trials = args.trials if args.trials is not None else 20
        return write_certificate(
            nielsen_suite(args.seed, trials), args, {"trials": trials, "seed": args.seed}, t0
        )
    # all
    combined = CheckReport("verify all")
    suite_order = (
        "example32", "kernels", "gl12", "autf9", "phi", "krasner",
        "gaschutz", "closure", "congruence", "nielsen", "fingerprints",
    )
    builders = {
        "example32": example32_suite,
        "kernels": kernel_suite,
        "gl12": verify_gl12_relations,
        "autf9": verify_autF9_relations,
        "phi": lambda: verify_phi(matrix_rep(), seed=args.seed),
        "krasner": lambda: krasner_suite(500, args.seed),
        "gaschutz": lambda: gaschutz_suite(args.trials or 200, args.seed),
        "closure": lambda: normal_closure_suite(args.trials or 20, args.seed),
        "congruence": lambda: congruence_suite(default_members(args.members), (2, 3, 4, 5)),
        "nielsen": lambda: nielsen_suite(args.seed, args.trials or 20),
        "fingerprints": lambda: fingerprint_suite(
            default_members(args.members),
            load_library(max_order=args.max_order),
            args.jobs if args.jobs > 0 else (os.cpu_count() or 1),
        )[0],
    }
    for name in suite_order:
        sub = builders[name]()
        status = "pass" if sub.ok else "FAIL"
        print(f"{status}  {name}  ({len(sub.checks)} checks)", file=sys.stderr)
        for c in sub.checks:
            combined.checks.append(Check(f"{name}: {c.name}", c.status, c.witness))
    return write_certificate(combined, args, {"seed": args.seed}, t0)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.module == "torus":
            return cmd_torus(args)
        if args.module == "fingroup":
            return cmd_fingroup(args)
        if args.module == "reps":
            return cmd_reps(args)
        if args.module == "family":
            return cmd_family(args)
        if args.module == "tsys":
            return cmd_tsys(args)
        if args.module == "verify":
            return cmd_verify(args)
        raise AssertionError("unreachable")
    except (OSError, json.JSONDecodeError) as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, BudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
