"""The family G_(a,b) = Z^12 x| F2 indexed by Zieschang pairs of T(3,3),
and its finite-quotient fingerprints.

A member sends the two free generators to Phi(x)^a and Phi(y)^b in
GL12(Z).  Homomorphisms G -> Q for finite Q are counted exactly: a hom
is a pair (q1, q2) in Q^2 together with pairwise-commuting images
v_1..v_12 of the lattice basis satisfying the twist equations

    q_l v_j q_l^-1 = prod_k v_k^(M_l[k,j])      (l = 1, 2).

Counting runs per conjugacy class of (q1, q2) (simultaneous conjugation
preserves solutions) and, within a class, by depth-first assignment over
generators of the quotient of (Z/exp Q)^12 by the lattice of forced
relations (consequences of the relations of (q1, q2) in Q and of central
words, closed under the matrix action).  Every surviving assignment is
checked against the original twist equations, so preprocessing can never
add spurious solutions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .fingroup import FiniteGroup, FiniteHom, semidirect
from .intmat import CongruenceImage, IntMatrix, column_hnf, congruence_closure, smith_normal_form
from .torus import TLParams, ZPair, is_zieschang_pair
from .words import reduce_letters


class BudgetExceeded(Exception):
    """A computation would exceed its configured search budget."""


HARD_ORDER_CAP = 24


@dataclass(frozen=True)
class FamilyMember:
    """One semidirect product Z^n x| F2: label (a, b) and the images of
    the two free generators as integer matrices."""

    a: int
    b: int
    mx: IntMatrix
    my: IntMatrix

    def __post_init__(self):
        if self.mx.rows != self.mx.cols or self.my.rows != self.my.cols:
            raise ValueError("actions must be square matrices")
        if self.mx.rows != self.my.rows:
            raise ValueError("actions must have equal dimension")
        if abs(self.mx.det()) != 1 or abs(self.my.det()) != 1:
            raise ValueError("action matrices must be unimodular")

    @property
    def dim(self) -> int:
        return self.mx.rows

    @property
    def label(self) -> tuple[int, int]:
        return (self.a, self.b)

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b, "mx": self.mx.to_json(), "my": self.my.to_json()}

    @staticmethod
    def from_json(obj: dict) -> "FamilyMember":
        return FamilyMember(
            obj["a"], obj["b"], IntMatrix.from_json(obj["mx"]), IntMatrix.from_json(obj["my"])
        )


def build_family(rep, pairs: Sequence[ZPair]) -> list[FamilyMember]:
    """Members with Mx = Phi(x)^a, My = Phi(y)^b per Zieschang pair."""
    params = TLParams(3, 3)
    members = []
    for pair in pairs:
        if not is_zieschang_pair(params, pair.a, pair.b):
            raise ValueError(f"({pair.a},{pair.b}) is not a canonical pair for T(3,3)")
        members.append(FamilyMember(pair.a, pair.b, rep.phi_x**pair.a, rep.phi_y**pair.b))
    return members


def family_to_json(members: Sequence[FamilyMember]) -> dict:
    return {"schema": 1, "p": 3, "q": 3, "members": [m.to_json() for m in members]}


def family_from_json(obj: dict) -> list[FamilyMember]:
    if obj.get("schema") != 1:
        raise ValueError("unsupported family schema")
    return [FamilyMember.from_json(m) for m in obj["members"]]


# --- abelianization -------------------------------------------------------------


def abelianization_invariants(member: FamilyMember) -> tuple[int, tuple[int, ...]]:
    """(free rank, torsion divisors) of H_1 = Z^2 + coker[Mx - I; My - I]."""
    n = member.dim
    eye = IntMatrix.identity(n)
    stacked = IntMatrix(tuple((member.mx - eye).entries + (member.my - eye).entries))
    snf = smith_normal_form(stacked)
    free = n - len(snf.divisors)
    return 2 + free, tuple(d for d in snf.divisors if d > 1)


def abelian_hom_count(member: FamilyMember, Q: FiniteGroup) -> int:
    """|Hom(G, Q)| for abelian Q via the abelianization: the independent
    oracle for the abelian entries of a fingerprint."""
    if not Q.is_abelian:
        raise ValueError("the abelianization formula needs an abelian target")
    rank, divisors = abelianization_invariants(member)
    count = Q.order**rank
    for d in divisors:
        count *= sum(1 for x in range(Q.order) if Q.power(x, d) == Q.identity)
    return count


# --- exact homomorphism counting -------------------------------------------------


def _pair_orbit_reps(Q: FiniteGroup) -> list[tuple[tuple[int, int], int]]:
    """Representatives of Q-conjugation orbits on Q^2, with orbit sizes."""
    seen: set[tuple[int, int]] = set()
    reps = []
    for q1 in range(Q.order):
        for q2 in range(Q.order):
            if (q1, q2) in seen:
                continue
            orbit = {(Q.conj(g, q1), Q.conj(g, q2)) for g in range(Q.order)}
            seen |= orbit
            reps.append(((q1, q2), len(orbit)))
    return reps


def _subgroup_words(Q: FiniteGroup, q1: int, q2: int):
    """BFS of <q1, q2> with positive words over letters 1 (q1), 2 (q2).

    Returns (word_of: elt -> letters, relation_words) where the relation
    words are Schreier generators of the kernel of F2 -> <q1, q2>.
    """
    gens = {1: q1, 2: q2}
    word_of = {Q.identity: ()}
    queue = [Q.identity]
    edges = []
    while queue:
        nxt = []
        for u in queue:
            for letter, g in gens.items():
                t = Q.mul(u, g)
                if t not in word_of:
                    word_of[t] = word_of[u] + (letter,)
                    nxt.append(t)
                else:
                    edges.append((u, letter, t))
        queue = nxt
    relations = []
    for u, letter, t in edges:
        w = word_of[u] + (letter,) + tuple(-a for a in reversed(word_of[t]))
        w = reduce_letters(w)
        if w:
            relations.append(w)
    return word_of, relations


def _word_matrix(word, mats, E: int) -> np.ndarray:
    n = mats[1].shape[0]
    out = np.eye(n, dtype=np.int64)
    for a in word:
        out = (out @ mats[a]) % E
    return out


def _forced_lattice(
    relations, central_words, mats, E: int, n: int
) -> tuple[tuple[int, ...], ...]:
    """HNF basis of the lattice of exponent vectors u with v^u = 1 forced,
    closed under the matrix action; always contains E*Z^n."""
    eye = np.eye(n, dtype=np.int64)
    cols = [tuple(E * eye[:, j]) for j in range(n)]
    for w in list(relations) + list(central_words):
        m = (_word_matrix(w, mats, E) - eye) % E
        cols.extend(tuple(int(x) for x in m[:, j]) for j in range(n))
    basis = column_hnf(cols, n)
    while True:
        extended = [list(b) for b in basis]
        for key in (1, -1, 2, -2):
            m = mats[key]
            for b in basis:
                extended.append(((m @ np.array(b, dtype=np.int64)) % E).tolist())
        new_basis = column_hnf(extended, n)
        if new_basis == basis:
            return basis
        basis = new_basis


def hom_count_matrices(
    mx: IntMatrix,
    my: IntMatrix,
    Q: FiniteGroup,
    branch_budget: int = 20_000_000,
    double_check: bool = False,
) -> tuple[int, int]:
    """Exact (homomorphism count, epimorphism count) from Z^n x| F2 to Q.

    With double_check=True every accepted assignment is re-verified
    against the original per-column twist equations (slower; used by the
    engine's own validation tests).
    """
    if Q.order > HARD_ORDER_CAP:
        raise BudgetExceeded(f"target order {Q.order} exceeds the hard cap {HARD_ORDER_CAP}")
    n = mx.rows
    E = Q.exponent
    mxe, mye = mx.mod(E), my.mod(E)
    mxi, myi = mx.inverse().mod(E), my.inverse().mod(E)
    mats = {
        1: np.array(mxe.entries, dtype=np.int64),
        -1: np.array(mxi.entries, dtype=np.int64),
        2: np.array(mye.entries, dtype=np.int64),
        -2: np.array(myi.entries, dtype=np.int64),
    }
    order = Q.order
    pow_table = [[Q.power(x, k) for k in range(E + 1)] for x in range(order)]
    center = set(Q.center)
    identity = Q.identity

    total_hom = 0
    total_epi = 0
    epi_cache: dict[frozenset, bool] = {}
    nodes = 0

    for (q1, q2), orbit_size in _pair_orbit_reps(Q):
        word_of, relations = _subgroup_words(Q, q1, q2)
        central_words = [w for elt, w in word_of.items() if elt in center and w]
        basis = _forced_lattice(relations, central_words, mats, E, n)
        hmat = IntMatrix.from_rows([[basis[j][i] for j in range(n)] for i in range(n)])
        snf = smith_normal_form(hmat)
        diag = [snf.s.entries[i][i] for i in range(n)]
        gen_pos = [i for i in range(n) if diag[i] > 1]
        t = len(gen_pos)
        cands = [
            [x for x in range(order) if pow_table[x][diag[i]] == identity] for i in gen_pos
        ]
        conj_tables = {q: tuple(Q.conj(q, x) for x in range(order)) for q in {q1, q2}}

        # twist equations on module generators: for generator a and l,
        # conj_{q_l}(w_a) = prod_b w_b^(C_l[b,a]) with C_l = U M_l U^-1.
        u_mat = snf.u
        u_inv = u_mat.inverse()
        equations_at: dict[int, list] = {d: [] for d in range(t)}
        for key, q in ((1, q1), (2, q2)):
            mexact = mxe if key == 1 else mye
            c_mat = (u_mat * mexact * u_inv).entries
            for a in range(t):
                terms = []
                for b in range(t):
                    e = c_mat[gen_pos[b]][gen_pos[a]] % diag[gen_pos[b]]
                    if e:
                        terms.append((b, e))
                check_at = max([a] + [b for b, _ in terms])
                equations_at[check_at].append((q, a, tuple(terms)))

        pair_hom = 0
        pair_epi = 0

        # exponents of e_j on the surviving generators (for double_check)
        exps = [[(u_mat.entries[i][j] % diag[i]) for j in range(n)] for i in gen_pos]

        def original_equations_hold(chosen: tuple[int, ...]) -> bool:
            v = []
            for j in range(n):
                val = identity
                for s, w in enumerate(chosen):
                    e = exps[s][j]
                    if e:
                        val = Q.mul(val, pow_table[w][e])
                v.append(val)
            for key, q in ((1, q1), (2, q2)):
                m = mats[key]
                for j in range(n):
                    rhs = identity
                    for k in range(n):
                        e = int(m[k][j])
                        if e:
                            rhs = Q.mul(rhs, pow_table[v[k]][e])
                    if conj_tables[q][v[j]] != rhs:
                        return False
            return True

        def assign(idx: int, chosen: tuple[int, ...]):
            nonlocal pair_hom, pair_epi, nodes
            if idx == t:
                if double_check and not original_equations_hold(chosen):
                    raise AssertionError("generator equations disagree with column equations")
                pair_hom += 1
                gen_key = frozenset((q1, q2) + chosen)
                full = epi_cache.get(gen_key)
                if full is None:
                    full = len(Q.closure(gen_key)) == order
                    epi_cache[gen_key] = full
                if full:
                    pair_epi += 1
                return
            for x in cands[idx]:
                nodes += 1
                if nodes > branch_budget:
                    raise BudgetExceeded(
                        f"assignment search exceeded {branch_budget} nodes at pair {(q1, q2)}"
                    )
                if not all(Q.mul(x, c) == Q.mul(c, x) for c in chosen):
                    continue
                tmp = chosen + (x,)
                ok = True
                for q, a, terms in equations_at[idx]:
                    rhs = identity
                    for b, e in terms:
                        rhs = Q.mul(rhs, pow_table[tmp[b]][e])
                    if conj_tables[q][tmp[a]] != rhs:
                        ok = False
                        break
                if ok:
                    assign(idx + 1, tmp)

        if t == 0:
            pair_hom = 1
            gen_key = frozenset((q1, q2))
            full = epi_cache.get(gen_key)
            if full is None:
                full = len(Q.closure(gen_key)) == order
                epi_cache[gen_key] = full
            pair_epi = 1 if full else 0
        else:
            assign(0, ())

        total_hom += orbit_size * pair_hom
        total_epi += orbit_size * pair_epi
    return total_hom, total_epi


def hom_count(
    member: FamilyMember, Q: FiniteGroup, branch_budget: int = 5_000_000
) -> tuple[int, int]:
    return hom_count_matrices(member.mx, member.my, Q, branch_budget)


def brute_force_hom_count(
    mx: IntMatrix, my: IntMatrix, Q: FiniteGroup
) -> tuple[int, int]:
    """Brute force over all (q1, q2, v_1..v_n); feasible only for toy
    dimensions.  Validates the pruned engine."""
    import itertools

    n = mx.rows
    E = Q.exponent
    mex = mx.mod(E).entries
    mey = my.mod(E).entries
    hom = epi = 0
    for q1 in range(Q.order):
        for q2 in range(Q.order):
            for v in itertools.product(range(Q.order), repeat=n):
                if any(
                    Q.mul(v[i], v[j]) != Q.mul(v[j], v[i]) for i in range(n) for j in range(i)
                ):
                    continue
                good = True
                for q, m in ((q1, mex), (q2, mey)):
                    for j in range(n):
                        rhs = Q.identity
                        for k in range(n):
                            rhs = Q.mul(rhs, Q.power(v[k], m[k][j] % E))
                        if Q.conj(q, v[j]) != rhs:
                            good = False
                            break
                    if not good:
                        break
                if good:
                    hom += 1
                    if len(Q.closure((q1, q2) + v)) == Q.order:
                        epi += 1
    return hom, epi


# --- fingerprints ----------------------------------------------------------------


@dataclass(frozen=True)
class Fingerprint:
    """Ordered (target name, hom count, epi count) entries."""

    entries: tuple[tuple[str, int, int], ...]

    def __post_init__(self):
        for name, hom, epi in self.entries:
            if not (hom >= epi >= 0 and hom >= 1):
                raise ValueError(f"implausible counts for {name}: hom={hom} epi={epi}")

    def to_json(self) -> dict:
        return {"entries": [[n, h, e] for n, h, e in self.entries]}


def fingerprint(
    member: FamilyMember,
    library: Sequence[FiniteGroup],
    branch_budget: int = 5_000_000,
) -> Fingerprint:
    entries = []
    for Q in library:
        hom, epi = hom_count(member, Q, branch_budget)
        entries.append((Q.name, hom, epi))
    return Fingerprint(tuple(entries))


# --- congruence images -------------------------------------------------------------


@dataclass(frozen=True)
class CongruenceComparison:
    modulus: int
    status: str  # "equal" | "different" | "cap_exceeded"
    orders: tuple[int | None, int | None]


def member_congruence_image(member: FamilyMember, modulus: int, cap: int = 10**6) -> CongruenceImage:
    return congruence_closure([member.mx, member.my], modulus, cap)


def congruence_images_equal(
    m1: FamilyMember, m2: FamilyMember, modulus: int, cap: int = 10**6
) -> CongruenceComparison:
    c1 = member_congruence_image(m1, modulus, cap)
    if c1.capped:
        return CongruenceComparison(modulus, "cap_exceeded", (None, None))
    c2 = member_congruence_image(m2, modulus, cap)
    if c2.capped:
        return CongruenceComparison(modulus, "cap_exceeded", (c1.order, None))
    status = "equal" if c1.digest == c2.digest else "different"
    return CongruenceComparison(modulus, status, (c1.order, c2.order))


def congruence_suite(members: Sequence[FamilyMember], moduli: Sequence[int], cap: int = 10**6):
    """Per-modulus equality of all members' congruence images, computing
    each image once.  Cap hits are reported (inconclusive), not failed;
    equality is required at every modulus that completes."""
    from .checks import CheckReport

    report = CheckReport("congruence images")
    for modulus in moduli:
        digests = []
        orders = []
        capped = False
        for m in members:
            img = member_congruence_image(m, modulus, cap)
            if img.capped:
                capped = True
                break
            digests.append(img.digest)
            orders.append(img.order)
        name = f"images mod {modulus} coincide across members"
        if capped:
            report.add_inconclusive(name, witness=f"cap {cap} exceeded")
        else:
            report.add(name, all(d == digests[0] for d in digests), witness={"order": orders[0]})
    return report


# --- the explicit isomorphism builder ----------------------------------------------


@dataclass(frozen=True)
class BetaResult:
    ok: bool
    violated_generator: int | None = None
    beta: FiniteHom | None = None


def build_beta_isomorphism(
    N: FiniteGroup,
    Q: FiniteGroup,
    phi1: Sequence[Sequence[int]],
    phi2: Sequence[Sequence[int]],
    alpha: Sequence[int],
    gamma: Sequence[int],
) -> BetaResult:
    """If alpha phi1 alpha^-1 = phi2 . gamma, materialize the isomorphism
    (n, q) -> (alpha(n), gamma(q)) between N x|_phi1 Q and N x|_phi2 Q
    and verify it exhaustively; otherwise refuse, naming the first q
    where the conjugation identity fails.
    """
    if not FiniteHom(N, N, tuple(alpha)).is_homomorphism() or len(set(alpha)) != N.order:
        raise ValueError("alpha is not an automorphism of N")
    if not FiniteHom(Q, Q, tuple(gamma)).is_homomorphism() or len(set(gamma)) != Q.order:
        raise ValueError("gamma is not an automorphism of Q")
    alpha_inv = [0] * N.order
    for i, a in enumerate(alpha):
        alpha_inv[a] = i
    for q in range(Q.order):
        lhs = tuple(alpha[phi1[q][alpha_inv[n]]] for n in range(N.order))
        rhs = tuple(phi2[gamma[q]])
        if lhs != rhs:
            return BetaResult(ok=False, violated_generator=q)
    G1 = semidirect(N, Q, phi1)
    G2 = semidirect(N, Q, phi2)
    mapping = tuple(
        alpha[g // Q.order] * Q.order + gamma[g % Q.order] for g in range(G1.order)
    )
    beta = FiniteHom(G1, G2, mapping)
    if not beta.is_homomorphism() or not beta.is_injective():
        raise AssertionError("materialized beta failed verification")
    return BetaResult(ok=True, beta=beta)
