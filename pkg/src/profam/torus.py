"""The torus link groups T(p,q) = <x,y | x^p = y^q>.

T(p,q) is the amalgam of two copies of Z over the central subgroup
generated by z := x^p = y^q.  Every element has a unique normal form

    z^k * s_1 * s_2 * ... * s_r

where the syllables s_i alternate between x-syllables x^e (0 < e < p)
and y-syllables y^e (0 < e < q), with the central part collected on the
left.  Normal forms make the word problem, the projection pi onto
Z/lcm(p,q), and Reidemeister-Schreier kernel presentations exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .intmat import IntMatrix, smith_normal_form
from .words import Word, reduce_letters

X = "x"
Y = "y"


@dataclass(frozen=True, slots=True)
class TLParams:
    p: int
    q: int

    def __post_init__(self):
        if self.p < 2 or self.q < 2:
            raise ValueError("torus link parameters need p, q >= 2")

    @property
    def lcm(self) -> int:
        return self.p * self.q // math.gcd(self.p, self.q)

    def base(self, axis: str) -> int:
        return self.p if axis == X else self.q


@dataclass(frozen=True, slots=True)
class TLElement:
    """Amalgam normal form: central exponent of z = x^p, then alternating
    syllables (axis, exponent) with exponents inside (0, p) resp. (0, q)."""

    central: int
    syllables: tuple[tuple[str, int], ...]

    def __post_init__(self):
        for (a1, _), (a2, _) in zip(self.syllables, self.syllables[1:]):
            if a1 == a2:
                raise ValueError("adjacent syllables must alternate axes")
        for axis, exp in self.syllables:
            if axis not in (X, Y) or exp <= 0:
                raise ValueError(f"bad syllable {(axis, exp)!r}")

    @property
    def is_identity(self) -> bool:
        return self.central == 0 and not self.syllables

    def syllable_length(self) -> int:
        return len(self.syllables)

    def to_json(self) -> dict:
        return {"central": self.central, "syllables": [[a, e] for a, e in self.syllables]}

    @staticmethod
    def from_json(obj: dict) -> "TLElement":
        return TLElement(obj["central"], tuple((a, e) for a, e in obj["syllables"]))


TL_IDENTITY = TLElement(0, ())


def _check(params: TLParams, e: TLElement) -> None:
    for axis, exp in e.syllables:
        if exp >= params.base(axis):
            raise ValueError(f"syllable {(axis, exp)} out of range for {params}")


def _append_letter(params: TLParams, central: int, sylls: list, axis: str, sign: int) -> int:
    """Right-multiply the normal form by x^sign or y^sign."""
    base = params.base(axis)
    if sylls and sylls[-1][0] == axis:
        e = sylls[-1][1] + sign
        if e == 0:
            sylls.pop()
        elif e == base:
            sylls.pop()
            central += 1
        else:
            sylls[-1] = (axis, e)
    else:
        if sign == 1:
            sylls.append((axis, 1))
        else:
            central -= 1
            sylls.append((axis, base - 1))
    return central


def _append_syllable(params: TLParams, central: int, sylls: list, axis: str, exp: int) -> int:
    """Right-multiply by an in-range syllable, merging at the junction."""
    base = params.base(axis)
    if sylls and sylls[-1][0] == axis:
        c = sylls[-1][1] + exp
        if c == base:
            sylls.pop()
            central += 1
        elif c > base:
            sylls[-1] = (axis, c - base)
            central += 1
        else:
            sylls[-1] = (axis, c)
    else:
        sylls.append((axis, exp))
    return central


def tl_from_word(params: TLParams, w: Word) -> TLElement:
    """Normal form of a word over the rank-2 alphabet {x, y}."""
    if w.rank != 2:
        raise ValueError("torus link words live over the rank-2 alphabet")
    central = 0
    sylls: list[tuple[str, int]] = []
    for a in w.letters:
        axis = X if abs(a) == 1 else Y
        central = _append_letter(params, central, sylls, axis, 1 if a > 0 else -1)
    return TLElement(central, tuple(sylls))


def tl_multiply(params: TLParams, e1: TLElement, e2: TLElement) -> TLElement:
    _check(params, e1)
    _check(params, e2)
    central = e1.central + e2.central
    sylls = list(e1.syllables)
    for axis, exp in e2.syllables:
        central = _append_syllable(params, central, sylls, axis, exp)
    return TLElement(central, tuple(sylls))


def tl_invert(params: TLParams, e: TLElement) -> TLElement:
    _check(params, e)
    central = -e.central - len(e.syllables)
    sylls = tuple((axis, params.base(axis) - exp) for axis, exp in reversed(e.syllables))
    return TLElement(central, sylls)


def tl_power(params: TLParams, e: TLElement, n: int) -> TLElement:
    base = e if n >= 0 else tl_invert(params, e)
    out = TL_IDENTITY
    for _ in range(abs(n)):
        out = tl_multiply(params, out, base)
    return out


def tl_to_word(params: TLParams, e: TLElement) -> Word:
    """A word over {x, y} representing the element (z^k as x^(pk))."""
    w = Word.gen(2, 1, params.p * e.central) if e.central else Word.identity(2)
    for axis, exp in e.syllables:
        w = w * Word.gen(2, 1 if axis == X else 2, exp)
    return w


def tl_pi(params: TLParams, e: TLElement) -> int:
    """The projection onto Z/lcm(p,q): x -> lcm/p, y -> lcm/q."""
    lcm = params.lcm
    val = 0
    for axis, exp in e.syllables:
        val += exp * (lcm // params.base(axis))
    return val % lcm


def pi_of_word(params: TLParams, w: Word) -> int:
    lcm = params.lcm
    val = 0
    for a in w.letters:
        step = lcm // (params.p if abs(a) == 1 else params.q)
        val += step if a > 0 else -step
    return val % lcm


def kernel_rank(params: TLParams) -> int:
    """Rank k of the free factor in ker(pi) = F_k x Z."""
    p, q = params.p, params.q
    return (p * q - p - q) // math.gcd(p, q) + 1


# --- Reidemeister-Schreier for ker(pi) ---------------------------------------


def schreier_transversal(params: TLParams) -> tuple[tuple[Word, ...], set[tuple[int, int]]]:
    """BFS transversal of ker(pi): shortest positive words, prefix-closed,
    indexed by pi-value, expanding x before y (so T(3,3) gets 1, x, x^2).

    Positive letters suffice: the steps generate the finite cyclic group
    Z/lcm as a semigroup.  Returns (transversal, tree) where tree holds
    the pairs (coset, gen) -- gen 1 for x, 2 for y -- whose Schreier
    generator is trivial.
    """
    lcm = params.lcm
    steps = {1: lcm // params.p, 2: lcm // params.q}
    reps: dict[int, Word] = {0: Word.identity(2)}
    tree: set[tuple[int, int]] = set()
    queue = [0]
    while queue:
        nxt = []
        for c in queue:
            for g in (1, 2):
                d = (c + steps[g]) % lcm
                if d not in reps:
                    reps[d] = reps[c] * Word(2, (g,))
                    tree.add((c, g))
                    nxt.append(d)
        queue = nxt
    if len(reps) != lcm:
        raise AssertionError("transversal BFS failed to reach every coset")
    return tuple(reps[c] for c in range(lcm)), tree


def _substitute(word: tuple[int, ...], gen: int, repl: tuple[int, ...]) -> tuple[int, ...]:
    out: list[int] = []
    inv_repl = tuple(-a for a in reversed(repl))
    for a in word:
        if a == gen:
            out.extend(repl)
        elif a == -gen:
            out.extend(inv_repl)
        else:
            out.append(a)
    return reduce_letters(out)


@dataclass(frozen=True)
class KernelPresentation:
    """Presentation of ker(pi) on simplified Schreier generators.

    ``gens_xy[i]`` is the i-th surviving generator as a word in x, y;
    ``relators`` are words over the surviving alphabet.  ``rewrite`` maps
    any word in ker(pi) to the surviving alphabet, through the raw
    Schreier rewriting followed by the recorded Tietze substitutions.
    """

    params: TLParams
    transversal: tuple[Word, ...]
    raw_gens_xy: tuple[Word, ...]
    gens_xy: tuple[Word, ...]
    relators: tuple[Word, ...]
    _edge_to_raw: dict
    _raw_expr: tuple[tuple[int, ...], ...]  # raw gen -> word over final alphabet
    _live_raw: tuple[int, ...]

    def rank(self) -> int:
        return len(self.gens_xy)

    def _raw_letters(self, w: Word, start: int = 0) -> tuple[int, ...]:
        """Reidemeister-Schreier rewriting of a kernel word into raw
        Schreier generators, scanning cosets from ``start``."""
        lcm = self.params.lcm
        steps = {1: lcm // self.params.p, 2: lcm // self.params.q}
        out: list[int] = []
        c = start
        for a in w.letters:
            g = abs(a)
            if a > 0:
                idx = self._edge_to_raw.get((c, g))
                if idx is not None:
                    out.append(idx + 1)
                c = (c + steps[g]) % lcm
            else:
                c = (c - steps[g]) % lcm
                idx = self._edge_to_raw.get((c, g))
                if idx is not None:
                    out.append(-(idx + 1))
        if c != start:
            raise ValueError("word does not lie in ker(pi)")
        return reduce_letters(out)

    def rewrite(self, w: Word) -> Word:
        letters: list[int] = []
        for a in self._raw_letters(w):
            expr = self._raw_expr[abs(a) - 1]
            letters.extend(expr if a > 0 else tuple(-x for x in reversed(expr)))
        return Word(self.rank(), reduce_letters(letters))

    def evaluate(self, w: Word) -> Word:
        """Expand a word over the surviving generators into x,y letters."""
        letters: list[int] = []
        for a in w.letters:
            img = self.gens_xy[abs(a) - 1]
            letters.extend(img.letters if a > 0 else img.inverse().letters)
        return Word(2, reduce_letters(letters))

    def abelianization(self) -> tuple[int, tuple[int, ...]]:
        """(free rank, torsion divisors) of H_1 of the presented group."""
        r = self.rank()
        if not self.relators:
            return r, ()
        matrix = IntMatrix.from_rows([w.exponent_sums() for w in self.relators])
        snf = smith_normal_form(matrix)
        free = r - len(snf.divisors)
        return free, tuple(d for d in snf.divisors if d > 1)


def reidemeister_schreier_kernel(
    params: TLParams, protect: Sequence[Word] = ()
) -> KernelPresentation:
    """Presentation of ker(pi) over the BFS transversal, Tietze-simplified.

    Simplification is limited to free reduction and eliminating a
    generator that occurs exactly once in some relator.  Generators whose
    x,y-words normal-form-equal one of ``protect`` are never eliminated.
    """
    lcm = params.lcm
    transversal, tree = schreier_transversal(params)
    steps = {1: lcm // params.p, 2: lcm // params.q}

    edge_to_raw: dict[tuple[int, int], int] = {}
    raw_gens: list[Word] = []
    for c in range(lcm):
        for g in (1, 2):
            if (c, g) in tree:
                continue
            d = (c + steps[g]) % lcm
            word = transversal[c] * Word(2, (g,)) * transversal[d].inverse()
            edge_to_raw[(c, g)] = len(raw_gens)
            raw_gens.append(word)

    protected = set()
    protect_forms = [tl_from_word(params, w) for w in protect]
    for i, w in enumerate(raw_gens):
        if any(tl_from_word(params, w) == f for f in protect_forms):
            protected.add(i)

    # raw relators: the rewriting of t_c (x^p y^-q) t_c^-1 for each coset c
    relator_xy = Word.gen(2, 1, params.p) * Word.gen(2, 2, -params.q)
    pres_stub = KernelPresentation(
        params, transversal, tuple(raw_gens), (), (), edge_to_raw, (), ()
    )
    relators: list[tuple[int, ...]] = []
    for c in range(lcm):
        rel = pres_stub._raw_letters(relator_xy, start=c)
        if rel:
            relators.append(rel)
        # sanity: the relator must evaluate to the identity of T(p,q)
        value = TL_IDENTITY
        for a in rel:
            w = raw_gens[abs(a) - 1]
            piece = tl_from_word(params, w if a > 0 else w.inverse())
            value = tl_multiply(params, value, piece)
        if not value.is_identity:
            raise AssertionError("rewritten relator is not a relation")

    # Tietze elimination of single-occurrence generators
    live = [True] * len(raw_gens)
    expr: list[tuple[int, ...]] = [(i + 1,) for i in range(len(raw_gens))]
    while True:
        candidate = None
        for ridx, rel in enumerate(relators):
            counts: dict[int, int] = {}
            for a in rel:
                counts[abs(a)] = counts.get(abs(a), 0) + 1
            for g, cnt in counts.items():
                if cnt == 1 and (g - 1) not in protected:
                    key = (len(rel), ridx, -g)
                    if candidate is None or key < candidate[0]:
                        candidate = (key, ridx, g)
        if candidate is None:
            break
        _, ridx, g = candidate
        rel = relators[ridx]
        pos = next(k for k, a in enumerate(rel) if abs(a) == g)
        u, eps, v = rel[:pos], rel[pos], rel[pos + 1 :]
        u_inv = tuple(-a for a in reversed(u))
        v_inv = tuple(-a for a in reversed(v))
        repl = reduce_letters(u_inv + v_inv) if eps > 0 else reduce_letters(v + u)
        relators = [
            r for k, r in ((k, _substitute(r, g, repl)) for k, r in enumerate(relators)) if r and k != ridx
        ]
        expr = [_substitute(e, g, repl) for e in expr]
        live[g - 1] = False

    live_raw = tuple(i for i, alive in enumerate(live) if alive)
    renumber = {old + 1: new + 1 for new, old in enumerate(live_raw)}

    def renum(word: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(renumber[a] if a > 0 else -renumber[-a] for a in word)

    rank = len(live_raw)
    gens_xy = tuple(raw_gens[i] for i in live_raw)
    final_relators = tuple(Word(rank, renum(r)) for r in relators)
    raw_expr = tuple(renum(e) for e in expr)
    return KernelPresentation(
        params,
        transversal,
        tuple(raw_gens),
        gens_xy,
        final_relators,
        edge_to_raw,
        raw_expr,
        live_raw,
    )


# --- Zieschang canonical generating pairs ------------------------------------


@dataclass(frozen=True, slots=True)
class ZPair:
    """Canonical label (a, b) of the generating pair (x^a, y^b)."""

    a: int
    b: int


def is_zieschang_pair(params: TLParams, a: int, b: int) -> bool:
    p, q = params.p, params.q
    return (
        a > 0
        and b > 0
        and math.gcd(a, b) == 1
        and math.gcd(a, p) == 1
        and math.gcd(b, q) == 1
        and 2 * a <= p * b
        and 2 * b <= q * a
    )


def zieschang_pairs(params: TLParams, bound: int) -> tuple[ZPair, ...]:
    """All canonical pairs with a, b <= bound, sorted by (a+b, a).

    When p = q the swap automorphism of T(p,q) makes (a,b) and (b,a)
    T-equivalent, so enumeration is quotiented by a <= b.
    """
    if params.p + params.q < 5:
        raise ValueError("Zieschang enumeration needs p + q >= 5")
    found = []
    for a in range(1, bound + 1):
        for b in range(1, bound + 1):
            if params.p == params.q and a > b:
                continue
            if is_zieschang_pair(params, a, b):
                found.append(ZPair(a, b))
    found.sort(key=lambda z: (z.a + z.b, z.a))
    return tuple(found)


def pair_elements(params: TLParams, pair: ZPair) -> tuple[TLElement, TLElement]:
    """The generating pair (x^a, y^b) as normal forms."""
    xa = tl_from_word(params, Word.gen(2, 1, pair.a))
    yb = tl_from_word(params, Word.gen(2, 2, pair.b))
    return xa, yb
