"""Nielsen-equivalence and T-system computations.

Bounded bidirectional BFS over generating pairs of T(p,q) (states are
normal-form pairs, edges the elementary Nielsen moves), product
replacement orbits of generating tuples of finite groups, and the
orbit-id invariant vectors used as finite-level non-equivalence evidence
for the family.  Negative searches and budget hits are first-class
results: the classification they probe is theorem-level, so finite
evidence is reported, never asserted as proof.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import partial
from typing import Sequence

import numpy as np

from .checks import CheckReport
from .family import FamilyMember, member_congruence_image
from .fingroup import FiniteGroup, automorphisms
from .torus import TLElement, TLParams, ZPair, pair_elements, tl_invert, tl_multiply
from .words import NielsenMove, apply_nielsen, pair_move_set

PairState = tuple[TLElement, TLElement]


@dataclass(frozen=True)
class NielsenSearchResult:
    status: str  # "found" | "exhausted" | "budget_hit"
    path: tuple[NielsenMove, ...] | None
    depth: int
    states_visited: int


def zpair_state(params: TLParams, pair: ZPair) -> PairState:
    return pair_elements(params, pair)


def apply_pair_move(params: TLParams, move: NielsenMove, state: PairState) -> PairState:
    mul = partial(tl_multiply, params)
    inv = partial(tl_invert, params)
    return apply_nielsen(move, state, mul, inv)


def replay_path(params: TLParams, source: PairState, path: Sequence[NielsenMove]) -> PairState:
    state = source
    for move in path:
        state = apply_pair_move(params, move, state)
    return state


def _expand(
    params: TLParams,
    layer: dict[PairState, tuple[NielsenMove, ...]],
    seen: dict[PairState, tuple[NielsenMove, ...]],
    moves: tuple[NielsenMove, ...],
    word_cap: int,
) -> tuple[dict, bool]:
    nxt: dict[PairState, tuple[NielsenMove, ...]] = {}
    pruned = False
    for state, path in layer.items():
        for move in moves:
            new = apply_pair_move(params, move, state)
            if max(e.syllable_length() for e in new) > word_cap:
                pruned = True
                continue
            if new not in seen:
                seen[new] = path + (move,)
                nxt[new] = path + (move,)
    return nxt, pruned


def nielsen_bfs(
    params: TLParams,
    source: PairState,
    target: PairState,
    depth: int = 6,
    word_cap: int = 60,
) -> NielsenSearchResult:
    """Bidirectional meet-in-the-middle search for a Nielsen path.

    A found path replays exactly (verified before returning).  When no
    path exists within the depth, the result is "exhausted" if no state
    was pruned by the syllable cap, else "budget_hit".
    """
    moves = pair_move_set()
    if source == target:
        return NielsenSearchResult("found", (), 0, 1)
    fwd_seen = {source: ()}
    bwd_seen = {target: ()}
    fwd_layer, bwd_layer = dict(fwd_seen), dict(bwd_seen)
    pruned_any = False
    half = (depth + 1) // 2

    def meeting() -> tuple[NielsenMove, ...] | None:
        common = set(fwd_seen) & set(bwd_seen)
        best = None
        for state in common:
            back = tuple(m.inverse() for m in reversed(bwd_seen[state]))
            path = fwd_seen[state] + back
            if len(path) <= depth and (best is None or len(path) < len(best)):
                best = path
        return best

    for _ in range(half):
        fwd_layer, p1 = _expand(params, fwd_layer, fwd_seen, moves, word_cap)
        pruned_any = pruned_any or p1
        path = meeting()
        if path is not None:
            break
        bwd_layer, p2 = _expand(params, bwd_layer, bwd_seen, moves, word_cap)
        pruned_any = pruned_any or p2
        path = meeting()
        if path is not None:
            break
    states = len(fwd_seen) + len(bwd_seen)
    if path is None:
        return NielsenSearchResult("budget_hit" if pruned_any else "exhausted", None, depth, states)
    if replay_path(params, source, path) != target:
        raise AssertionError("found path fails to replay")
    return NielsenSearchResult("found", path, depth, states)


# --- orbits of generating tuples of finite groups -------------------------------


def tuple_move_set(d: int) -> tuple[NielsenMove, ...]:
    """Elementary Nielsen moves on d-tuples, closed under inverses."""
    moves: list[NielsenMove] = [NielsenMove("invert", i) for i in range(d)]
    moves.extend(NielsenMove("swap", i, j) for i in range(d) for j in range(i + 1, d))
    for i in range(d):
        for j in range(d):
            if i == j:
                continue
            for kind in ("lmul", "rmul"):
                for sign in (1, -1):
                    moves.append(NielsenMove(kind, i, j, sign))
    return tuple(moves)


@dataclass(frozen=True)
class OrbitTable:
    group_name: str
    d: int
    mode: str  # "nielsen" | "tsystem"
    orbits: tuple[tuple[tuple[int, ...], int], ...]  # (representative, size)
    _index: dict

    def orbit_of(self, tup: tuple[int, ...]) -> int:
        return self._index[tup]

    @property
    def generating_tuple_count(self) -> int:
        return sum(size for _, size in self.orbits)

    def to_json(self) -> dict:
        return {
            "group": self.group_name,
            "d": self.d,
            "mode": self.mode,
            "orbits": [{"representative": list(rep), "size": size} for rep, size in self.orbits],
        }


def generating_tuples(Q: FiniteGroup, d: int, budget: int = 10**6) -> list[tuple[int, ...]]:
    if Q.order**d > budget:
        raise ValueError(f"|Q|^d = {Q.order ** d} exceeds budget {budget}")
    return [t for t in itertools.product(range(Q.order), repeat=d) if Q.generates(t)]


def nielsen_orbits(Q: FiniteGroup, d: int, budget: int = 10**6) -> OrbitTable:
    """All generating d-tuples partitioned under elementary Nielsen moves."""
    tuples = generating_tuples(Q, d, budget)
    moves = tuple_move_set(d)
    index: dict[tuple[int, ...], int] = {}
    orbits = []
    for start in tuples:
        if start in index:
            continue
        oid = len(orbits)
        frontier = [start]
        index[start] = oid
        members = [start]
        while frontier:
            nxt = []
            for tup in frontier:
                for move in moves:
                    new = apply_nielsen(move, tup, Q.mul, Q.inv)
                    if new not in index:
                        index[new] = oid
                        nxt.append(new)
                        members.append(new)
            frontier = nxt
        orbits.append((min(members), len(members)))
    return OrbitTable(Q.name, d, "nielsen", tuple(orbits), index)


def tsystem_orbits(Q: FiniteGroup, d: int, budget: int = 10**6) -> OrbitTable:
    """Nielsen orbits merged under the Aut(Q) action on tuples."""
    base = nielsen_orbits(Q, d, budget)
    auts = automorphisms(Q)
    parent = list(range(len(base.orbits)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for oid, (rep, _) in enumerate(base.orbits):
        for aut in auts:
            image = tuple(aut(x) for x in rep)
            other = base.orbit_of(image)
            ra, rb = find(oid), find(other)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)

    merged: dict[int, list] = {}
    index: dict[tuple[int, ...], int] = {}
    for tup, oid in base._index.items():
        merged.setdefault(find(oid), []).append(tup)
    orbits = []
    remap = {}
    for root in sorted(merged, key=lambda r: min(merged[r])):
        remap[root] = len(orbits)
        orbits.append((min(merged[root]), len(merged[root])))
    for tup, oid in base._index.items():
        index[tup] = remap[find(oid)]
    return OrbitTable(Q.name, d, "tsystem", tuple(orbits), index)


# --- congruence-image invariant vectors ------------------------------------------


def congruence_image_group(
    member: FamilyMember, modulus: int, cap: int = 10**6, table_budget: int = 10**6
) -> tuple[FiniteGroup, tuple[int, int]] | None:
    """The image of the member mod m as a table group, with the ids of
    the induced generating pair; None when capped or too large to table.
    """
    img = member_congruence_image(member, modulus, cap)
    if img.capped or img.elements is None or img.order**2 > table_budget:
        return None
    n = member.dim
    keys = img.elements
    index = {k: i for i, k in enumerate(keys)}
    mats = [np.frombuffer(k, dtype=np.uint8).reshape(n, n).astype(np.int64) for k in keys]
    table = [
        [index[((a @ b) % modulus).astype(np.uint8).tobytes()] for b in mats] for a in mats
    ]
    Q = FiniteGroup(table, name=f"image-mod-{modulus}", check=False)
    gx = index[np.array(member.mx.mod(modulus).entries, dtype=np.uint8).tobytes()]
    gy = index[np.array(member.my.mod(modulus).entries, dtype=np.uint8).tobytes()]
    return Q, (gx, gy)


@dataclass(frozen=True)
class InvariantRow:
    member: tuple[int, int]
    modulus: int
    generates: bool
    nielsen_orbit: int | None
    tsystem_orbit: int | None


@dataclass(frozen=True)
class InvariantReport:
    rows: tuple[InvariantRow, ...]
    skipped: tuple[tuple[int, str], ...]  # (modulus, reason)
    verdicts: tuple[tuple[int, str], ...]  # (modulus, "conclusive" | "inconclusive")

    def to_json(self) -> dict:
        return {
            "rows": [
                {
                    "member": list(r.member),
                    "modulus": r.modulus,
                    "generates": r.generates,
                    "nielsen_orbit": r.nielsen_orbit,
                    "tsystem_orbit": r.tsystem_orbit,
                }
                for r in self.rows
            ],
            "skipped": [{"modulus": m, "reason": why} for m, why in self.skipped],
            "verdicts": [{"modulus": m, "status": s} for m, s in self.verdicts],
        }


def invariant_report(
    members: Sequence[FamilyMember],
    moduli: Sequence[int],
    cap: int = 10**6,
    table_budget: int = 10**6,
) -> InvariantReport:
    """Per member and modulus, the (nielsen, tsystem) orbit ids of the
    induced generating pair of the shared congruence image.  Differing
    vectors certify inequivalence at that finite level; identical vectors
    are inconclusive.  Members are checked to induce the same image.
    """
    rows: list[InvariantRow] = []
    skipped: list[tuple[int, str]] = []
    verdicts: list[tuple[int, str]] = []
    for modulus in moduli:
        first = member_congruence_image(members[0], modulus, cap)
        if first.capped or first.elements is None or first.order**2 > table_budget:
            skipped.append((modulus, "image exceeds cap or table budget"))
            continue
        digests = {first.digest} | {
            member_congruence_image(m, modulus, cap).digest for m in members[1:]
        }
        if len(digests) != 1:
            skipped.append((modulus, "members induce different images"))
            continue
        built = congruence_image_group(members[0], modulus, cap, table_budget)
        if built is None:
            skipped.append((modulus, "image exceeds cap or table budget"))
            continue
        Q, _ = built
        ntable = nielsen_orbits(Q, 2, budget=table_budget)
        ttable = tsystem_orbits(Q, 2, budget=table_budget)
        vectors = []
        for m in members:
            _, (gx, gy) = congruence_image_group(m, modulus, cap, table_budget)
            pair = (gx, gy)
            gen = Q.generates(pair)
            if not gen:
                rows.append(InvariantRow(m.label, modulus, False, None, None))
                continue
            nid = ntable.orbit_of(pair)
            tid = ttable.orbit_of(pair)
            rows.append(InvariantRow(m.label, modulus, True, nid, tid))
            vectors.append((nid, tid))
        verdicts.append(
            (modulus, "conclusive" if len(set(vectors)) > 1 else "inconclusive")
        )
    return InvariantReport(tuple(rows), tuple(skipped), tuple(verdicts))


# --- the bounded-distinctness suite ------------------------------------------------


def canonical_pair_separation(
    params: TLParams,
    pairs: Sequence[ZPair],
    depth: int = 6,
    word_cap: int = 60,
) -> CheckReport:
    """No bounded Nielsen path may connect distinct canonical pairs."""
    report = CheckReport("nielsen separation")
    for i, p1 in enumerate(pairs):
        for p2 in pairs[i + 1 :]:
            result = nielsen_bfs(
                params, zpair_state(params, p1), zpair_state(params, p2), depth, word_cap
            )
            report.add(
                f"no path ({p1.a},{p1.b}) -> ({p2.a},{p2.b}) at depth {depth}",
                result.status != "found",
                witness=result.status,
            )
    return report


def planted_path_recovery(
    params: TLParams,
    pairs: Sequence[ZPair],
    trials_per_pair: int,
    plant_length: int = 5,
    depth: int = 6,
    word_cap: int = 60,
    seed: int = 0xBF5,
) -> CheckReport:
    """Perturb each canonical pair by random moves and require the search
    to find a path back (it replays by construction)."""
    import random

    rng = random.Random(seed)
    moves = pair_move_set()
    report = CheckReport("planted path recovery")
    for pair in pairs:
        for trial in range(trials_per_pair):
            source = zpair_state(params, pair)
            target = source
            for _ in range(plant_length):
                target = apply_pair_move(params, rng.choice(moves), target)
            result = nielsen_bfs(params, source, target, depth, word_cap)
            report.add(
                f"recovered plant #{trial} from ({pair.a},{pair.b})",
                result.status == "found",
                witness=result.status,
            )
    return report
