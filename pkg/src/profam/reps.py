"""Explicit realizations of W = (F2 x Z) wr (Z/3) and of T(3,3) inside it.

Three commuting copies of F2 x Z sit inside GL12(Z) as 2x2 blocks (the
Sanov pair A, B in the odd blocks, A again as the central Z in the even
blocks) and inside Aut(F9) as transvection-style automorphisms; a cyclic
shift sigma permutes the copies.  Composing the transversal-cocycle
embedding of T(3,3) into W (coordinates written in a derived free basis
u, v, z of ker pi) with the matrix realization gives an exact
homomorphism Phi: T(3,3) -> GL12(Z).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .checks import CheckReport
from .intmat import IntMatrix, block_diag, bounded_relation_search, permutation_matrix, sanov_pair
from .torus import (
    KernelPresentation,
    TLElement,
    TLParams,
    reidemeister_schreier_kernel,
    tl_from_word,
    tl_invert,
    tl_multiply,
    tl_pi,
    tl_to_word,
)
from .words import FreeEndo, Word, compose, reduce_letters, verify_automorphism

# --- the ten 12x12 matrices ---------------------------------------------------


def build_gl12_generators() -> dict[str, IntMatrix]:
    """a_i, b_i (Sanov pair in block 2i) and c_i (A in block 2i+1) for
    i = 0, 1, 2, plus the block shift sigma moving each 2x2 block two
    places to the right."""
    a, b = sanov_pair()
    eye = IntMatrix.identity(2)

    def placed(mat: IntMatrix, block: int) -> IntMatrix:
        return block_diag([mat if j == block else eye for j in range(6)])

    gens = {}
    for i in range(3):
        gens[f"a{i}"] = placed(a, 2 * i)
        gens[f"b{i}"] = placed(b, 2 * i)
        gens[f"c{i}"] = placed(a, 2 * i + 1)
    gens["sigma"] = permutation_matrix([(j + 2) % 6 for j in range(6)], block_size=2)
    return gens


def verify_gl12_relations(search_len: int = 10) -> CheckReport:
    """All structural identities of the matrix realization, exactly."""
    g = build_gl12_generators()
    sigma = g["sigma"]
    sigma_inv = sigma.inverse()
    eye = IntMatrix.identity(12)
    report = CheckReport("gl12 relations")

    report.add("sigma^3 = I", (sigma * sigma * sigma).is_identity())
    for fam in "abc":
        for i in range(3):
            lhs = sigma * g[f"{fam}{i}"] * sigma_inv
            report.add(f"sigma {fam}{i} sigma^-1 = {fam}{(i + 1) % 3}", lhs == g[f"{fam}{(i + 1) % 3}"])
    for i in range(3):
        for j in range(3):
            if i == j:
                continue
            for x in "abc":
                for y in "abc":
                    m1, m2 = g[f"{x}{i}"], g[f"{y}{j}"]
                    report.add(f"[{x}{i},{y}{j}] = I", m1 * m2 == m2 * m1)
    for i in range(3):
        for x in "ab":
            m1, m2 = g[f"{x}{i}"], g[f"c{i}"]
            report.add(f"[{x}{i},c{i}] = I", m1 * m2 == m2 * m1)
    a0, b0 = g["a0"], g["b0"]
    report.add("[a0,b0] != I", a0 * b0 != b0 * a0)
    relator = bounded_relation_search([a0, b0], search_len)
    report.add(
        f"no (a0,b0) relation of length <= {search_len}",
        relator is None,
        witness=None if relator is None else str(relator),
    )
    return report


# --- the ten automorphisms of F9 ----------------------------------------------


def build_autF9_generators() -> dict[str, FreeEndo]:
    """f_i: x_{3i} -> x_{3i} x_{3i+1};  g_i: x_{3i} -> x_{3i} x_{3i+2};
    h_i: x_{3i} -> x_{3i+1} x_{3i};  sigma: x_i -> x_{i+3 mod 9}.

    Indices here are zero-based like the basis names x0..x8; the Word
    alphabet is 1-based underneath.
    """
    gens = {}
    for i in range(3):
        base = 3 * i + 1  # 1-based index of x_{3i}
        gens[f"f{i}"] = FreeEndo.from_map(9, {base: Word(9, (base, base + 1))})
        gens[f"g{i}"] = FreeEndo.from_map(9, {base: Word(9, (base, base + 2))})
        gens[f"h{i}"] = FreeEndo.from_map(9, {base: Word(9, (base + 1, base))})
    gens["sigma"] = FreeEndo(9, tuple(Word.gen(9, (i + 3) % 9 + 1) for i in range(9)))
    return gens


def autF9_inverses() -> dict[str, FreeEndo]:
    inv = {}
    for i in range(3):
        base = 3 * i + 1
        inv[f"f{i}"] = FreeEndo.from_map(9, {base: Word(9, (base, -(base + 1)))})
        inv[f"g{i}"] = FreeEndo.from_map(9, {base: Word(9, (base, -(base + 2)))})
        inv[f"h{i}"] = FreeEndo.from_map(9, {base: Word(9, (-(base + 1), base))})
    inv["sigma"] = FreeEndo(9, tuple(Word.gen(9, (i + 6) % 9 + 1) for i in range(9)))
    return inv


def verify_autF9_relations(search_len: int = 8) -> CheckReport:
    g = build_autF9_generators()
    inv = autF9_inverses()
    sigma, sigma_inv = g["sigma"], inv["sigma"]
    report = CheckReport("autF9 relations")

    for name in g:
        report.add(f"{name} is an automorphism", verify_automorphism(g[name], inv[name]))
    report.add("sigma^3 = id", compose(compose(sigma, sigma), sigma).is_identity)
    for fam in "fgh":
        for i in range(3):
            lhs = compose(compose(sigma, g[f"{fam}{i}"]), sigma_inv)
            report.add(
                f"sigma {fam}{i} sigma^-1 = {fam}{(i + 1) % 3}", lhs == g[f"{fam}{(i + 1) % 3}"]
            )
    for i in range(3):
        for j in range(3):
            if i == j:
                continue
            for x in "fgh":
                for y in "fgh":
                    e1, e2 = g[f"{x}{i}"], g[f"{y}{j}"]
                    report.add(f"{x}{i} {y}{j} commute", compose(e1, e2) == compose(e2, e1))
    for i in range(3):
        for x in "fg":
            e1, e2 = g[f"{x}{i}"], g[f"h{i}"]
            report.add(f"{x}{i} h{i} commute", compose(e1, e2) == compose(e2, e1))
    report.add("f0 g0 do not commute", compose(g["f0"], g["g0"]) != compose(g["g0"], g["f0"]))

    # bounded identity search over reduced words in f0, g0
    letters = {1: g["f0"], -1: inv["f0"], 2: g["g0"], -2: inv["g0"]}
    trivial = None

    def dfs(word: tuple[int, ...], endo: FreeEndo):
        nonlocal trivial
        if trivial is not None:
            return
        if word and endo.is_identity:
            trivial = word
            return
        if len(word) == search_len:
            return
        for a in (1, -1, 2, -2):
            if word and word[-1] == -a:
                continue
            dfs(word + (a,), compose(endo, letters[a]))

    dfs((), FreeEndo.identity(9))
    report.add(
        f"no (f0,g0) word of length <= {search_len} acts trivially",
        trivial is None,
        witness=trivial,
    )
    return report


# --- wreath elements over (F2 x Z)^3 x| (Z/3) ----------------------------------


@dataclass(frozen=True, slots=True)
class WreathElement:
    """Element of (F2 x Z) wr (Z/3): three coordinates (word in u,v;
    central power) and a shift, acting on coordinates from the left."""

    coords: tuple[tuple[Word, int], ...]
    shift: int

    def __post_init__(self):
        if len(self.coords) != 3 or not 0 <= self.shift < 3:
            raise ValueError("wreath element needs 3 coordinates and shift mod 3")

    @staticmethod
    def identity() -> "WreathElement":
        e = Word.identity(2)
        return WreathElement(((e, 0), (e, 0), (e, 0)), 0)

    def __mul__(self, other: "WreathElement") -> "WreathElement":
        coords = []
        for c in range(3):
            w1, n1 = self.coords[c]
            w2, n2 = other.coords[(c - self.shift) % 3]
            coords.append((w1 * w2, n1 + n2))
        return WreathElement(tuple(coords), (self.shift + other.shift) % 3)

    def inverse(self) -> "WreathElement":
        coords = []
        for c in range(3):
            w, n = self.coords[(c + self.shift) % 3]
            coords.append((w.inverse(), -n))
        return WreathElement(tuple(coords), (-self.shift) % 3)

    @property
    def is_identity(self) -> bool:
        return self.shift == 0 and all(w.is_identity and n == 0 for w, n in self.coords)


# --- kernel basis for ker pi <= T(3,3) -----------------------------------------


@dataclass(frozen=True)
class KernelBasis:
    """A verified basis (u, v, z) of ker pi = F2 x Z for T(3,3):
    z = x^3 central, (u, v) a free basis of the F2 factor, with an exact
    rewriter from x,y-words in the kernel to (u,v)-word plus z-power."""

    params: TLParams
    u: Word
    v: Word
    z: Word
    presentation: KernelPresentation
    z_letter: int
    uv_letters: tuple[int, int]

    def coords(self, w: Word) -> tuple[Word, int]:
        """Rewrite a kernel word as ((u,v)-word, z-exponent); loud
        roundtrip verification on every call."""
        rewritten = self.presentation.rewrite(w)
        n = 0
        letters = []
        for a in rewritten.letters:
            if abs(a) == self.z_letter:
                n += 1 if a > 0 else -1
            else:
                idx = self.uv_letters.index(abs(a)) + 1
                letters.append(idx if a > 0 else -idx)
        uv_word = Word(2, reduce_letters(letters))

        rebuilt = Word.identity(2)
        for a in uv_word.letters:
            part = self.u if abs(a) == 1 else self.v
            rebuilt = rebuilt * (part if a > 0 else part.inverse())
        rebuilt = rebuilt * self.z**n
        if tl_from_word(self.params, rebuilt) != tl_from_word(self.params, w):
            raise AssertionError(f"kernel rewriting failed on {w}")
        return uv_word, n


def derive_kernel_basis(params: TLParams = TLParams(3, 3), freeness_len: int = 8) -> KernelBasis:
    """Derive and verify the kernel basis from the Reidemeister-Schreier
    presentation over the transversal {1, x, x^2}.

    Verification battery: u, v, z lie in ker pi; z = x^p is central;
    the presentation abelianizes to Z^3; no reduced word in u, v of
    length <= freeness_len is trivial or central in T(3,3).
    """
    if (params.p, params.q) != (3, 3):
        raise ValueError("the kernel basis pipeline is specific to T(3,3)")
    z_word = Word.gen(2, 1, params.p)
    pres = reidemeister_schreier_kernel(params, protect=[z_word])
    if pres.rank() != 3:
        raise AssertionError(f"expected 3 surviving generators, got {pres.rank()}")
    z_form = tl_from_word(params, z_word)
    z_positions = [i for i, w in enumerate(pres.gens_xy) if tl_from_word(params, w) == z_form]
    if len(z_positions) != 1:
        raise AssertionError("central generator x^3 not found among survivors")
    z_letter = z_positions[0] + 1
    uv = tuple(i + 1 for i in range(3) if i + 1 != z_letter)
    u_word, v_word = (pres.gens_xy[i - 1] for i in uv)
    basis = KernelBasis(params, u_word, v_word, z_word, pres, z_letter, uv)

    for w in (u_word, v_word, z_word):
        if tl_pi(params, tl_from_word(params, w)) != 0:
            raise AssertionError("basis word does not lie in ker pi")
    z_el = tl_from_word(params, z_word)
    for w in (u_word, v_word):
        e = tl_from_word(params, w)
        if tl_multiply(params, z_el, e) != tl_multiply(params, e, z_el):
            raise AssertionError("z = x^3 fails to be central against the basis")
    if pres.abelianization() != (3, ()):
        raise AssertionError("kernel presentation does not abelianize to Z^3")

    u_el = tl_from_word(params, u_word)
    v_el = tl_from_word(params, v_word)
    steps = {
        1: u_el,
        -1: tl_invert(params, u_el),
        2: v_el,
        -2: tl_invert(params, v_el),
    }

    def dfs(last: int, depth: int, value: TLElement):
        if depth > 0 and not value.syllables:
            raise AssertionError("found a trivial-or-central short word in u, v")
        if depth == freeness_len:
            return
        for a in (1, -1, 2, -2):
            if last == -a:
                continue
            dfs(a, depth + 1, tl_multiply(params, value, steps[a]))

    from .torus import TL_IDENTITY

    dfs(0, 0, TL_IDENTITY)
    return basis


# --- Phi = theta . kappa --------------------------------------------------------


class TorusMatrixRep:
    """The exact homomorphism Phi: T(3,3) -> GL12(Z), factored as the
    transversal-cocycle embedding kappa into (F2 x Z) wr (Z/3) followed
    by the block-matrix realization theta."""

    def __init__(self, basis: KernelBasis | None = None):
        self.params = TLParams(3, 3)
        self.basis = basis if basis is not None else derive_kernel_basis(self.params)
        self.gl = build_gl12_generators()
        self._inv = {k: m.inverse() for k, m in self.gl.items()}
        self._sigma_pow = [IntMatrix.identity(12), self.gl["sigma"], self.gl["sigma"] * self.gl["sigma"]]

    def kappa(self, e: TLElement) -> WreathElement:
        """Cocycle embedding with transversal t_c = x^c:
        coordinate c is t_c^-1 * e * t_{(c - pi(e)) mod 3} in (u,v,z)."""
        params = self.params
        shift = tl_pi(params, e)
        word = tl_to_word(params, e)
        ts = self.basis.presentation.transversal
        coords = []
        for c in range(3):
            f = ts[c].inverse() * word * ts[(c - shift) % 3]
            coords.append(self.basis.coords(f))
        return WreathElement(tuple(coords), shift)

    def theta(self, w: WreathElement) -> IntMatrix:
        """Coordinate i maps onto (a_i, b_i)-words times c_i-powers; the
        shift maps onto the corresponding sigma power."""
        out = IntMatrix.identity(12)
        for i in range(3):
            uv, n = w.coords[i]
            for a in uv.letters:
                key = f"{'ab'[abs(a) - 1]}{i}"
                out = out * (self.gl[key] if a > 0 else self._inv[key])
            if n:
                out = out * (self.gl[f"c{i}"] ** n)
        return out * self._sigma_pow[w.shift]

    def phi(self, e: TLElement) -> IntMatrix:
        return self.theta(self.kappa(e))

    def phi_word(self, w: Word) -> IntMatrix:
        return self.phi(tl_from_word(self.params, w))

    @cached_property
    def phi_x(self) -> IntMatrix:
        return self.phi_word(Word.gen(2, 1))

    @cached_property
    def phi_y(self) -> IntMatrix:
        return self.phi_word(Word.gen(2, 2))


def all_normal_forms(params: TLParams, max_syllables: int, max_central: int):
    """Every TLElement with at most the given syllable count and |central|
    bound (exponents range over the full (0,p) x (0,q) box)."""
    seqs: list[tuple[tuple[str, int], ...]] = [()]
    frontier: list[tuple[tuple[str, int], ...]] = [()]
    for _ in range(max_syllables):
        nxt = []
        for seq in frontier:
            for axis in ("x", "y"):
                if seq and seq[-1][0] == axis:
                    continue
                for exp in range(1, params.base(axis)):
                    nxt.append(seq + ((axis, exp),))
        seqs.extend(nxt)
        frontier = nxt
    return [
        TLElement(k, seq) for seq in seqs for k in range(-max_central, max_central + 1)
    ]


def verify_phi(rep: TorusMatrixRep | None = None, pairs: int = 500, seed: int = 0xF1E) -> CheckReport:
    """Relator, multiplicativity, and injectivity evidence for Phi."""
    import random

    from .words import reduce_word

    rep = rep or TorusMatrixRep()
    params = rep.params
    report = CheckReport("phi suite")

    px, py = rep.phi_x, rep.phi_y
    report.add("Phi(x)^3 = Phi(y)^3", px**3 == py**3)
    report.add("Phi(1) = I", rep.phi(tl_from_word(params, Word.identity(2))).is_identity())

    rng = random.Random(seed)
    ok = True
    for _ in range(pairs):
        w1 = reduce_word(2, [rng.choice([1, -1, 2, -2]) for _ in range(rng.randrange(0, 10))])
        w2 = reduce_word(2, [rng.choice([1, -1, 2, -2]) for _ in range(rng.randrange(0, 10))])
        if rep.phi_word(w1 * w2) != rep.phi_word(w1) * rep.phi_word(w2):
            ok = False
            break
    report.add(f"multiplicative on {pairs} random word pairs", ok)

    forms = all_normal_forms(params, max_syllables=4, max_central=2)
    images = {rep.phi(e).key() for e in forms}
    report.add(
        f"injective on {len(forms)} normal forms (syllables <= 4, |central| <= 2)",
        len(images) == len(forms),
    )
    return report
