"""Exact finite-group machinery on multiplication tables.

Groups are n x n Cayley tables over element ids 0..n-1.  Everything is
exhaustive and exact: subgroup closure, automorphism groups by pruned
backtracking, isomorphism testing, quotients, semidirect and wreath
products, the Gaschutz lifting of generating tuples, the Krasner
universal embedding, and the normal-closure formula for semidirect
products.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Sequence

FULL_ASSOC_CHECK_BOUND = 64
AUT_ORDER_BOUND = 512


class FiniteGroup:
    """A finite group as a multiplication table with element ids."""

    def __init__(self, table, name="G", names=None, check=True):
        self.table = tuple(tuple(int(x) for x in row) for row in table)
        self.order = len(self.table)
        self.name = name
        self.names = tuple(names) if names else tuple(str(i) for i in range(self.order))
        if len(self.names) != self.order:
            raise ValueError("need one name per element")
        for row in self.table:
            if len(row) != self.order or any(not 0 <= x < self.order for x in row):
                raise ValueError("malformed multiplication table")
        self.identity = self._find_identity()
        self.inverse = self._find_inverses()
        if check:
            self._check_associativity()

    # -- construction-time validation

    def _find_identity(self) -> int:
        for e in range(self.order):
            if all(self.table[e][x] == x == self.table[x][e] for x in range(self.order)):
                return e
        raise ValueError("no identity element")

    def _find_inverses(self) -> tuple[int, ...]:
        inv = [None] * self.order
        for a in range(self.order):
            for b in range(self.order):
                if self.table[a][b] == self.identity and self.table[b][a] == self.identity:
                    inv[a] = b
                    break
            if inv[a] is None:
                raise ValueError(f"element {a} has no inverse")
        return tuple(inv)

    def _check_associativity(self) -> None:
        n = self.order
        if n <= FULL_ASSOC_CHECK_BOUND:
            triples = itertools.product(range(n), repeat=3)
        else:
            rng = random.Random(0x5EED)
            triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(4000))
        t = self.table
        for a, b, c in triples:
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise ValueError(f"table not associative at ({a},{b},{c})")

    # -- basic operations

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def conj(self, g: int, x: int) -> int:
        """g x g^-1."""
        return self.table[self.table[g][x]][self.inverse[g]]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inverse[a], -k
        out = self.identity
        for _ in range(k):
            out = self.table[out][a]
        return out

    def element_order(self, a: int) -> int:
        x, n = a, 1
        while x != self.identity:
            x = self.table[x][a]
            n += 1
        return n

    @cached_property
    def exponent(self) -> int:
        e = 1
        for a in range(self.order):
            e = math.lcm(e, self.element_order(a))
        return e

    @cached_property
    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.order) for b in range(a))

    @cached_property
    def center(self) -> tuple[int, ...]:
        t = self.table
        return tuple(
            a for a in range(self.order) if all(t[a][b] == t[b][a] for b in range(self.order))
        )

    @cached_property
    def conjugacy_classes(self) -> tuple[tuple[int, ...], ...]:
        seen = [False] * self.order
        classes = []
        for a in range(self.order):
            if seen[a]:
                continue
            orbit = sorted({self.conj(g, a) for g in range(self.order)})
            for x in orbit:
                seen[x] = True
            classes.append(tuple(orbit))
        return tuple(classes)

    @cached_property
    def class_size(self) -> tuple[int, ...]:
        size = [0] * self.order
        for cls in self.conjugacy_classes:
            for x in cls:
                size[x] = len(cls)
        return tuple(size)

    @cached_property
    def order_histogram(self) -> tuple[tuple[int, int], ...]:
        counts: dict[int, int] = {}
        for a in range(self.order):
            d = self.element_order(a)
            counts[d] = counts.get(d, 0) + 1
        return tuple(sorted(counts.items()))

    def closure(self, generators: Iterable[int]) -> tuple[int, ...]:
        """Least subgroup containing the generators (breadth-first)."""
        gens = list(generators)
        for g in gens:
            if not 0 <= g < self.order:
                raise ValueError(f"element id {g} out of range")
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = self.table[a][g]
                    if b not in seen:
                        seen.add(b)
                        nxt.append(b)
            frontier = nxt
        return tuple(sorted(seen))

    def generates(self, generators: Iterable[int]) -> bool:
        return len(self.closure(generators)) == self.order

    def minimal_generating_tuple(self) -> tuple[int, ...]:
        n = self.order
        if n == 1:
            return ()
        for g in range(n):
            if len(self.closure([g])) == n:
                return (g,)
        if n <= 64:
            for i in range(n):
                for j in range(i + 1, n):
                    if len(self.closure([i, j])) == n:
                        return (i, j)
            if n <= 32:
                for tup in itertools.combinations(range(n), 3):
                    if len(self.closure(tup)) == n:
                        return tup
        # greedy fallback (small but maybe not minimal)
        gens = [max(range(n), key=lambda a: (self.element_order(a), -a))]
        current = self.closure(gens)
        while len(current) < n:
            nxt = next(a for a in range(n) if a not in current)
            gens.append(nxt)
            current = self.closure(gens)
        return tuple(gens)

    # -- subgroup views

    def subgroup(self, elements: Iterable[int]) -> "Subgroup":
        return Subgroup(self, tuple(sorted(set(elements))))

    def is_isomorphic(self, other: "FiniteGroup") -> bool:
        return find_isomorphism(self, other) is not None

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name!r}, order={self.order})"

    def to_json(self) -> dict:
        return {"name": self.name, "order": self.order, "table": [list(r) for r in self.table], "names": list(self.names)}

    @staticmethod
    def from_json(obj: dict) -> "FiniteGroup":
        return FiniteGroup(obj["table"], name=obj.get("name", "G"), names=obj.get("names"))


@dataclass(frozen=True)
class Subgroup:
    """A subgroup presented as a sorted element-id set of its parent."""

    parent: FiniteGroup
    elements: tuple[int, ...]

    def __post_init__(self):
        elems = set(self.elements)
        G = self.parent
        if G.identity not in elems:
            raise ValueError("subgroup must contain the identity")
        for a in self.elements:
            if G.inv(a) not in elems:
                raise ValueError("subgroup not closed under inversion")
            for b in self.elements:
                if G.mul(a, b) not in elems:
                    raise ValueError("subgroup not closed under products")

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, a: int) -> bool:
        return a in set(self.elements)

    def is_normal(self) -> bool:
        G = self.parent
        elems = set(self.elements)
        return all(G.conj(g, a) in elems for g in range(G.order) for a in self.elements)

    def as_group(self, name: str | None = None) -> tuple[FiniteGroup, tuple[int, ...]]:
        """The subgroup as an abstract group plus the id embedding."""
        G = self.parent
        index = {a: i for i, a in enumerate(self.elements)}
        table = [[index[G.mul(a, b)] for b in self.elements] for a in self.elements]
        names = [G.names[a] for a in self.elements]
        return (
            FiniteGroup(table, name=name or f"{G.name}-sub{self.order}", names=names, check=False),
            self.elements,
        )


def closure(G: FiniteGroup, generators: Iterable[int]) -> Subgroup:
    return G.subgroup(G.closure(generators))


# --- homomorphisms ------------------------------------------------------------


@dataclass(frozen=True)
class FiniteHom:
    """Materialized homomorphism between finite groups."""

    source: FiniteGroup
    target: FiniteGroup
    mapping: tuple[int, ...]

    def __call__(self, a: int) -> int:
        return self.mapping[a]

    def is_homomorphism(self) -> bool:
        m, s, t = self.mapping, self.source, self.target
        return all(
            m[s.mul(a, b)] == t.mul(m[a], m[b]) for a in range(s.order) for b in range(s.order)
        )

    def image_ids(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.mapping)))

    def kernel_ids(self) -> tuple[int, ...]:
        e = self.target.identity
        return tuple(a for a in range(self.source.order) if self.mapping[a] == e)

    def is_surjective(self) -> bool:
        return len(set(self.mapping)) == self.target.order

    def is_injective(self) -> bool:
        return len(set(self.mapping)) == self.source.order


def hom_from_generator_images(
    G: FiniteGroup, H: FiniteGroup, gens: Sequence[int], images: Sequence[int]
) -> FiniteHom | None:
    """Extend gen |-> image to a homomorphism, or None if inconsistent.

    Walks the Cayley graph of G on ``gens``; every edge is checked, so a
    successful extension is a genuine homomorphism on <gens>.  Requires
    the gens to generate G.
    """
    fmap: list[int | None] = [None] * G.order
    fmap[G.identity] = H.identity
    queue = [G.identity]
    while queue:
        nxt = []
        for a in queue:
            for g, img in zip(gens, images):
                b = G.mul(a, g)
                fb = H.mul(fmap[a], img)  # type: ignore[arg-type]
                if fmap[b] is None:
                    fmap[b] = fb
                    nxt.append(b)
                elif fmap[b] != fb:
                    return None
        queue = nxt
    if any(v is None for v in fmap):
        raise ValueError("generators do not generate the source group")
    return FiniteHom(G, H, tuple(fmap))  # type: ignore[arg-type]


def _image_candidates(G: FiniteGroup, H: FiniteGroup, g: int) -> list[int]:
    """Elements of H sharing the (order, class size) fingerprint of g."""
    og, cg = G.element_order(g), G.class_size[g]
    return [h for h in range(H.order) if H.element_order(h) == og and H.class_size[h] == cg]


def find_isomorphism(G: FiniteGroup, H: FiniteGroup) -> FiniteHom | None:
    """Backtracking isomorphism search with invariant pre-checks."""
    if G.order != H.order:
        return None
    if G.order_histogram != H.order_histogram or G.is_abelian != H.is_abelian:
        return None
    if sorted(len(c) for c in G.conjugacy_classes) != sorted(len(c) for c in H.conjugacy_classes):
        return None
    gens = G.minimal_generating_tuple()
    if not gens:
        return FiniteHom(G, H, (H.identity,))
    cand = [_image_candidates(G, H, g) for g in gens]
    for images in itertools.product(*cand):
        hom = hom_from_generator_images(G, H, gens, images)
        if hom is not None and hom.is_injective():
            return hom
    return None


def automorphisms(G: FiniteGroup) -> list[FiniteHom]:
    """The complete automorphism group, as materialized maps."""
    if G.order > AUT_ORDER_BOUND:
        raise ValueError(f"automorphism search capped at order {AUT_ORDER_BOUND}")
    gens = G.minimal_generating_tuple()
    if not gens:
        return [FiniteHom(G, G, (G.identity,))]
    out = []
    cand = [_image_candidates(G, G, g) for g in gens]
    for images in itertools.product(*cand):
        hom = hom_from_generator_images(G, G, gens, images)
        if hom is not None and hom.is_injective():
            out.append(hom)
    return out


def inner_automorphism_maps(G: FiniteGroup) -> set[tuple[int, ...]]:
    return {tuple(G.conj(g, x) for x in range(G.order)) for g in range(G.order)}


# --- constructors -------------------------------------------------------------


def cyclic(n: int) -> FiniteGroup:
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return FiniteGroup(table, name=f"C{n}", check=False)


def direct_product(A: FiniteGroup, B: FiniteGroup, name: str | None = None) -> FiniteGroup:
    n, m = A.order, B.order
    table = [
        [A.mul(a1, a2) * m + B.mul(b1, b2) for a2 in range(n) for b2 in range(m)]
        for a1 in range(n)
        for b1 in range(m)
    ]
    names = [f"({A.names[a]},{B.names[b]})" for a in range(n) for b in range(m)]
    return FiniteGroup(table, name=name or f"{A.name}x{B.name}", names=names, check=False)


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order 2n: rotations r^i, reflections r^i s."""

    def idx(i, f):
        return i * 2 + f

    table = [[0] * (2 * n) for _ in range(2 * n)]
    for i, f in itertools.product(range(n), range(2)):
        for j, g in itertools.product(range(n), range(2)):
            k = (i + j) % n if f == 0 else (i - j) % n
            table[idx(i, f)][idx(j, g)] = idx(k, (f + g) % 2)
    names = [f"r{i}" if f == 0 else f"r{i}s" for i in range(n) for f in range(2)]
    return FiniteGroup(table, name=f"D{n}", names=names, check=False)


def dicyclic(n: int) -> FiniteGroup:
    """Dicyclic group of order 4n: <a, b | a^(2n)=1, b^2=a^n, bab^-1=a^-1>.
    n = 2 gives the quaternion group Q8."""
    order = 4 * n

    def idx(i, j):
        return i * 2 + j

    table = [[0] * order for _ in range(order)]
    for i, j in itertools.product(range(2 * n), range(2)):
        for k, l in itertools.product(range(2 * n), range(2)):
            if j == 0:
                i2, j2 = (i + k) % (2 * n), l
            else:
                i2, j2 = (i - k) % (2 * n), (1 + l) % 2
                if 1 + l == 2:
                    i2 = (i2 + n) % (2 * n)
            table[idx(i, j)][idx(k, l)] = idx(i2, j2)
    name = "Q8" if n == 2 else f"Dic{n}"
    return FiniteGroup(table, name=name, check=False)


def symmetric(n: int) -> FiniteGroup:
    perms = sorted(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = [
        [index[tuple(p[q[i]] for i in range(n))] for q in perms]
        for p in perms
    ]
    return FiniteGroup(table, name=f"S{n}", check=False)


def alternating(n: int) -> FiniteGroup:
    def parity(p):
        inv = sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])
        return inv % 2

    perms = sorted(p for p in itertools.permutations(range(n)) if parity(p) == 0)
    index = {p: i for i, p in enumerate(perms)}
    table = [
        [index[tuple(p[q[i]] for i in range(n))] for q in perms]
        for p in perms
    ]
    return FiniteGroup(table, name=f"A{n}", check=False)


def semidirect(
    N: FiniteGroup, Q: FiniteGroup, action: Sequence[Sequence[int]], name: str | None = None
) -> FiniteGroup:
    """Semidirect product N x| Q for an action Q -> Aut(N).

    ``action[q]`` is the permutation of N-ids giving the automorphism by
    which q acts; the homomorphism property and each automorphism are
    verified.  Element (n, q) has id n*|Q| + q.
    """
    n_ord, q_ord = N.order, Q.order
    if len(action) != q_ord:
        raise ValueError("need one automorphism per element of Q")
    acts = [tuple(a) for a in action]
    for q, perm in enumerate(acts):
        if sorted(perm) != list(range(n_ord)):
            raise ValueError(f"action of {q} is not a bijection")
        for a in range(n_ord):
            for b in range(n_ord):
                if perm[N.mul(a, b)] != N.mul(perm[a], perm[b]):
                    raise ValueError(f"action of {q} is not an automorphism")
    for q1 in range(q_ord):
        for q2 in range(q_ord):
            composed = tuple(acts[q1][acts[q2][x]] for x in range(n_ord))
            if acts[Q.mul(q1, q2)] != composed:
                raise ValueError("action is not a homomorphism Q -> Aut(N)")

    def idx(n, q):
        return n * q_ord + q

    table = [[0] * (n_ord * q_ord) for _ in range(n_ord * q_ord)]
    for n1, q1 in itertools.product(range(n_ord), range(q_ord)):
        for n2, q2 in itertools.product(range(n_ord), range(q_ord)):
            table[idx(n1, q1)][idx(n2, q2)] = idx(N.mul(n1, acts[q1][n2]), Q.mul(q1, q2))
    names = [f"({N.names[n]},{Q.names[q]})" for n in range(n_ord) for q in range(q_ord)]
    return FiniteGroup(table, name=name or f"{N.name}x|{Q.name}", names=names, check=False)


def trivial_action(N: FiniteGroup, Q: FiniteGroup) -> list[tuple[int, ...]]:
    return [tuple(range(N.order)) for _ in range(Q.order)]


def quotient(G: FiniteGroup, N: Subgroup) -> tuple[FiniteGroup, tuple[int, ...]]:
    """The quotient G/N (N normal) and the quotient map on ids."""
    if N.parent is not G:
        raise ValueError("subgroup belongs to a different parent")
    if not N.is_normal():
        raise ValueError("subgroup is not normal")
    rep_of = [None] * G.order
    reps = []
    for g in range(G.order):
        if rep_of[g] is None:
            coset = sorted(G.mul(g, h) for h in N.elements)
            for x in coset:
                rep_of[x] = coset[0]
            reps.append(coset[0])
    reps.sort()
    coset_index = {r: i for i, r in enumerate(reps)}
    qmap = tuple(coset_index[rep_of[g]] for g in range(G.order))
    table = [[qmap[G.mul(a, b)] for b in reps] for a in reps]
    Q = FiniteGroup(table, name=f"{G.name}/N{N.order}", check=False)
    return Q, qmap


# --- extensions and the Krasner embedding -------------------------------------


@dataclass(frozen=True)
class FiniteExtension:
    """An N-by-Q extension: 1 -> N -> G -> Q -> 1 with explicit maps."""

    G: FiniteGroup
    N: FiniteGroup
    iota: tuple[int, ...]  # N-id -> G-id
    Q: FiniteGroup
    qmap: tuple[int, ...]  # G-id -> Q-id

    def __post_init__(self):
        if not FiniteHom(self.N, self.G, self.iota).is_homomorphism():
            raise ValueError("iota is not a homomorphism")
        if len(set(self.iota)) != self.N.order:
            raise ValueError("iota is not injective")
        proj = FiniteHom(self.G, self.Q, self.qmap)
        if not proj.is_homomorphism() or not proj.is_surjective():
            raise ValueError("quotient map is not a surjective homomorphism")
        if set(proj.kernel_ids()) != set(self.iota):
            raise ValueError("kernel of the quotient map is not iota(N)")

    def kernel_subgroup(self) -> Subgroup:
        return self.G.subgroup(self.iota)

    def induced_outer_action(self, q: int) -> tuple[int, ...]:
        """phi(q) in Aut(N) for one choice of lift; well-defined in Out(N)."""
        g = next(g for g in range(self.G.order) if self.qmap[g] == q)
        pull = {gid: nid for nid, gid in enumerate(self.iota)}
        return tuple(pull[self.G.conj(g, self.iota[n])] for n in range(self.N.order))


def split_extension(N: FiniteGroup, Q: FiniteGroup, action: Sequence[Sequence[int]]) -> FiniteExtension:
    G = semidirect(N, Q, action)
    iota = tuple(n * Q.order + Q.identity for n in range(N.order))
    qmap = tuple(g % Q.order for g in range(G.order))
    return FiniteExtension(G, N, iota, Q, qmap)


@dataclass(frozen=True)
class WreathElement:
    coords: tuple[int, ...]  # one N-id per Q-id
    shift: int  # Q-id


class WreathGroup:
    """N wr Q = N^|Q| x| Q with Q permuting coordinates from the left:
    (f, s)(f', s') = (c -> f(c) f'(s^-1 c), s s')."""

    def __init__(self, N: FiniteGroup, Q: FiniteGroup):
        self.N = N
        self.Q = Q
        self.order = N.order**Q.order * Q.order

    def identity(self) -> WreathElement:
        return WreathElement((self.N.identity,) * self.Q.order, self.Q.identity)

    def mul(self, a: WreathElement, b: WreathElement) -> WreathElement:
        Q, N = self.Q, self.N
        s_inv = Q.inv(a.shift)
        coords = tuple(
            N.mul(a.coords[c], b.coords[Q.mul(s_inv, c)]) for c in range(Q.order)
        )
        return WreathElement(coords, Q.mul(a.shift, b.shift))

    def inv(self, a: WreathElement) -> WreathElement:
        Q, N = self.Q, self.N
        s_inv = Q.inv(a.shift)
        coords = tuple(N.inv(a.coords[Q.mul(a.shift, c)]) for c in range(Q.order))
        return WreathElement(coords, s_inv)


@dataclass(frozen=True)
class KrasnerEmbedding:
    wreath: WreathGroup
    mapping: tuple[WreathElement, ...]  # G-id -> wreath element


def krasner_embed(ext: FiniteExtension, transversal: Sequence[int]) -> KrasnerEmbedding:
    """The universal embedding G -> N wr Q with cocycle
    f_g(c) = t_c^-1 * g * t_{pi(g)^-1 c}, verified injective and
    multiplicative on all of G.
    """
    G, N, Q = ext.G, ext.N, ext.Q
    ts = list(transversal)
    if len(ts) != Q.order or [ext.qmap[t] for t in ts] != list(range(Q.order)):
        raise ValueError("invalid transversal: need t_c with pi(t_c) = c for each c")
    pull = {gid: nid for nid, gid in enumerate(ext.iota)}
    W = WreathGroup(N, Q)

    def embed(g: int) -> WreathElement:
        s = ext.qmap[g]
        s_inv = Q.inv(s)
        coords = []
        for c in range(Q.order):
            target = ts[Q.mul(s_inv, c)]
            val = G.mul(G.mul(G.inv(ts[c]), g), target)
            if val not in pull:
                raise AssertionError("cocycle value escaped the kernel")
            coords.append(pull[val])
        return WreathElement(tuple(coords), s)

    mapping = tuple(embed(g) for g in range(G.order))
    if len(set(mapping)) != G.order:
        raise AssertionError("Krasner embedding is not injective")
    for a in range(G.order):
        for b in range(G.order):
            if W.mul(mapping[a], mapping[b]) != mapping[G.mul(a, b)]:
                raise AssertionError("Krasner embedding is not multiplicative")
    return KrasnerEmbedding(W, mapping)


# --- Gaschutz lifting ----------------------------------------------------------


def gaschutz_lift(
    p: FiniteHom, delta_tuple: Sequence[int], rng: random.Random | None = None
) -> tuple[int, ...]:
    """Lift a generating tuple of the quotient to one of the source.

    Searches the fibers p^-1(delta_i); existence is guaranteed whenever
    the source is d-generated (d = len(delta_tuple)), so exhausting the
    search reports exactly that precondition failure.
    """
    gamma_g, delta_g = p.source, p.target
    if not p.is_surjective():
        raise ValueError("p must be surjective")
    if not delta_g.generates(delta_tuple):
        raise ValueError("delta tuple does not generate the quotient")
    fibers = [[g for g in range(gamma_g.order) if p(g) == d] for d in delta_tuple]
    if rng is not None:
        fibers = [rng.sample(f, len(f)) for f in fibers]
    for lift in itertools.product(*fibers):
        if gamma_g.generates(lift):
            return tuple(lift)
    raise ValueError(f"source group is not {len(delta_tuple)}-generated")


# --- normal closures in semidirect products ------------------------------------


def normal_closure(G: FiniteGroup, seed: Iterable[int]) -> tuple[int, ...]:
    """Smallest normal subgroup containing the seed elements."""
    conjugates = {G.conj(g, s) for s in seed for g in range(G.order)}
    return G.closure(conjugates)


def verify_normal_closure_formula(
    N: FiniteGroup, H: FiniteGroup, action: Sequence[Sequence[int]], L_ids: Sequence[int]
) -> bool:
    """Check <<L>>_G = D * L in G = N x| H for L normal in H, where D is
    the normal closure in N of { n * phi(l)(n^-1) }."""
    L_sub = H.subgroup(L_ids)
    if not L_sub.is_normal():
        raise ValueError("L must be normal in H")
    G = semidirect(N, H, action)

    def gid(n, h):
        return n * H.order + h

    closure_L = set(normal_closure(G, [gid(N.identity, l) for l in L_ids]))

    twisted = {
        N.mul(n, N.inv(action[l][n])) for l in L_ids for n in range(N.order)
    }
    D = set(normal_closure(N, twisted))
    product_set = {gid(d, l) for d in D for l in L_ids}
    return closure_L == product_set


# --- similarity diagrams --------------------------------------------------------


def induced_hom_conjugacy_check(
    ext1: FiniteExtension,
    ext2: FiniteExtension,
    alpha: Sequence[int],
    beta: Sequence[int],
    gamma: Sequence[int],
) -> bool:
    """For a similarity (alpha, beta, gamma) of extensions, test the
    induced-action identity  conj(alpha) . phi1(q) . conj(alpha)^-1 =
    phi2(gamma(q))  inside Out(N), i.e. modulo inner automorphisms.

    Raises if the triple is not a genuine similarity (diagram must
    commute with beta an isomorphism).
    """
    N, Q = ext1.N, ext1.Q
    if ext2.N is not N or ext2.Q is not Q:
        raise ValueError("extensions must share kernel and quotient groups")
    beta_hom = FiniteHom(ext1.G, ext2.G, tuple(beta))
    if not beta_hom.is_homomorphism() or not beta_hom.is_injective():
        raise ValueError("beta is not an isomorphism")
    alpha_hom = FiniteHom(N, N, tuple(alpha))
    if not alpha_hom.is_homomorphism() or not alpha_hom.is_injective():
        raise ValueError("alpha is not an automorphism of N")
    gamma_hom = FiniteHom(Q, Q, tuple(gamma))
    if not gamma_hom.is_homomorphism() or not gamma_hom.is_injective():
        raise ValueError("gamma is not an automorphism of Q")
    for n in range(N.order):
        if beta[ext1.iota[n]] != ext2.iota[alpha[n]]:
            raise ValueError("left square of the similarity diagram does not commute")
    for g in range(ext1.G.order):
        if ext2.qmap[beta[g]] != gamma[ext1.qmap[g]]:
            raise ValueError("right square of the similarity diagram does not commute")

    inner = inner_automorphism_maps(N)
    alpha_inv = [0] * N.order
    for n in range(N.order):
        alpha_inv[alpha[n]] = n
    for q in range(Q.order):
        phi1 = ext1.induced_outer_action(q)
        phi2 = ext2.induced_outer_action(gamma[q])
        # alpha . phi1(q) . alpha^-1 composed with phi2(gamma q)^-1
        phi2_inv = [0] * N.order
        for n in range(N.order):
            phi2_inv[phi2[n]] = n
        composite = tuple(phi2_inv[alpha[phi1[alpha_inv[n]]]] for n in range(N.order))
        if composite not in inner:
            return False
    return True


# --- the order-32 example -------------------------------------------------------


@dataclass(frozen=True)
class Example32Report:
    group_order: int
    n1_iso_c4xc2: bool
    n2_iso_c4xc2: bool
    n1_characteristic: bool
    n2_characteristic: bool
    quotient1_iso_c4: bool
    quotient2_iso_c4: bool
    no_automorphism_swaps: bool
    subgroup_pair_unique: bool
    aut_order: int

    @property
    def all_hold(self) -> bool:
        return (
            self.group_order == 32
            and self.n1_iso_c4xc2
            and self.n2_iso_c4xc2
            and self.n1_characteristic
            and self.n2_characteristic
            and self.quotient1_iso_c4
            and self.quotient2_iso_c4
            and self.no_automorphism_swaps
        )


def build_example32() -> tuple[FiniteGroup, Subgroup, Subgroup]:
    """(Z/4) x| (Z/8) with the unique nontrivial action y x y^-1 = x^-1,
    and its two distinct characteristic subgroups N1 = <x, y^4> and
    N2 = <x y^2, y^4>, each isomorphic to C4 x C2 with quotient C4.

    These are the only two subgroups with that property (checked in
    verify_example_32), so the pair is canonical.
    """
    c4, c8 = cyclic(4), cyclic(8)
    invert = tuple((-n) % 4 for n in range(4))
    ident = tuple(range(4))
    action = [ident if j % 2 == 0 else invert for j in range(8)]
    G = semidirect(c4, c8, action, name="C4x|C8")

    def gid(i, j):
        return i * 8 + j

    n1 = closure(G, [gid(1, 0), gid(0, 4)])
    n2 = closure(G, [gid(1, 2), gid(0, 4)])
    return G, n1, n2


def _order8_c4xc2_characteristic_c4_quotient(G: FiniteGroup, auts) -> list[tuple[int, ...]]:
    """All subgroups of G that are characteristic, iso to C4 x C2, and
    have quotient iso to C4 (exhaustive over 2-generated subgroups; any
    C4 x C2 subgroup is 2-generated)."""
    c4xc2 = direct_product(cyclic(4), cyclic(2))
    c4 = cyclic(4)
    found = set()
    for a in range(G.order):
        for b in range(a + 1, G.order):
            elems = G.closure([a, b])
            if len(elems) != 8 or elems in found:
                continue
            sub = G.subgroup(elems)
            sg, _ = sub.as_group()
            if not sg.is_isomorphic(c4xc2):
                continue
            if not all({f(x) for x in elems} == set(elems) for f in auts):
                continue
            if not sub.is_normal():
                continue
            q, _ = quotient(G, sub)
            if q.is_isomorphic(c4):
                found.add(elems)
    return sorted(found)


def verify_example_32() -> Example32Report:
    """Check the five claims about the order-32 counterexample, plus the
    canonicity of the subgroup pair."""
    G, n1, n2 = build_example32()
    c4xc2 = direct_product(cyclic(4), cyclic(2))
    c4 = cyclic(4)

    n1_grp, _ = n1.as_group()
    n2_grp, _ = n2.as_group()
    q1, _ = quotient(G, n1)
    q2, _ = quotient(G, n2)

    auts = automorphisms(G)
    set1, set2 = set(n1.elements), set(n2.elements)
    n1_char = all({a(x) for x in set1} == set1 for a in auts)
    n2_char = all({a(x) for x in set2} == set2 for a in auts)
    swaps = any({a(x) for x in set1} == set2 for a in auts)
    pair = _order8_c4xc2_characteristic_c4_quotient(G, auts)
    unique = sorted(pair) == sorted([n1.elements, n2.elements])

    return Example32Report(
        group_order=G.order,
        n1_iso_c4xc2=n1_grp.is_isomorphic(c4xc2),
        n2_iso_c4xc2=n2_grp.is_isomorphic(c4xc2),
        n1_characteristic=n1_char,
        n2_characteristic=n2_char,
        quotient1_iso_c4=q1.is_isomorphic(c4),
        quotient2_iso_c4=q2.is_isomorphic(c4),
        no_automorphism_swaps=not swaps,
        subgroup_pair_unique=unique,
        aut_order=len(auts),
    )
