"""Reduced words, endomorphisms and Nielsen moves over a free group F_r.

A letter is a nonzero signed integer: ``+i`` is the i-th basis generator
(1-based), ``-i`` its inverse.  Words are stored freely reduced, so two
words are equal as group elements iff they are equal as tuples.

The text format is ``x0*x2^-1*x0`` style: tokens joined by ``*``, with an
optional integer exponent after ``^``.  The empty word prints as ``1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence, TypeVar


def reduce_letters(letters: Iterable[int]) -> tuple[int, ...]:
    """Freely reduce a letter sequence with a single stack pass."""
    out: list[int] = []
    for a in letters:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


@dataclass(frozen=True, slots=True)
class Word:
    """A freely reduced word over a ranked free basis."""

    rank: int
    letters: tuple[int, ...]

    def __post_init__(self):
        for a in self.letters:
            if not isinstance(a, int) or a == 0 or abs(a) > self.rank:
                raise ValueError(f"letter {a!r} out of range for rank {self.rank}")
        for x, y in zip(self.letters, self.letters[1:]):
            if x == -y:
                raise ValueError("letter sequence is not freely reduced")

    @staticmethod
    def identity(rank: int) -> "Word":
        return Word(rank, ())

    @staticmethod
    def gen(rank: int, i: int, power: int = 1) -> "Word":
        """The word x_i^power (i is 1-based)."""
        if not 1 <= i <= rank:
            raise ValueError(f"generator index {i} out of range")
        sign = 1 if power >= 0 else -1
        return Word(rank, (sign * i,) * abs(power))

    def __mul__(self, other: "Word") -> "Word":
        if self.rank != other.rank:
            raise ValueError("rank mismatch")
        return Word(self.rank, reduce_letters(self.letters + other.letters))

    def inverse(self) -> "Word":
        return Word(self.rank, tuple(-a for a in reversed(self.letters)))

    def __pow__(self, n: int) -> "Word":
        base = self if n >= 0 else self.inverse()
        result = Word.identity(self.rank)
        for _ in range(abs(n)):
            result = result * base
        return result

    def __len__(self) -> int:
        return len(self.letters)

    @property
    def is_identity(self) -> bool:
        return not self.letters

    def exponent_sums(self) -> tuple[int, ...]:
        """Abelianized image: exponent sum per generator."""
        sums = [0] * self.rank
        for a in self.letters:
            sums[abs(a) - 1] += 1 if a > 0 else -1
        return tuple(sums)

    def __str__(self) -> str:
        return format_word(self)


def reduce_word(rank: int, raw: Sequence[int]) -> Word:
    """Build the unique freely reduced word from a raw letter sequence."""
    for a in raw:
        if a == 0 or abs(a) > rank:
            raise ValueError(f"letter {a!r} out of range for rank {rank}")
    return Word(rank, reduce_letters(raw))


def default_names(rank: int) -> tuple[str, ...]:
    """Zero-based basis names x0..x{rank-1}; rank 2 uses x, y."""
    if rank == 2:
        return ("x", "y")
    return tuple(f"x{i}" for i in range(rank))


def format_word(w: Word, names: Sequence[str] | None = None) -> str:
    names = names or default_names(w.rank)
    if not w.letters:
        return "1"
    parts = []
    for a in w.letters:
        name = names[abs(a) - 1]
        parts.append(name if a > 0 else name + "^-1")
    return "*".join(parts)


def parse_word(text: str, rank: int, names: Sequence[str] | None = None) -> Word:
    """Parse the ``*``-separated format; inverse of :func:`format_word`."""
    names = names or default_names(rank)
    index = {name: i + 1 for i, name in enumerate(names)}
    text = text.strip()
    if text in ("", "1"):
        return Word.identity(rank)
    letters: list[int] = []
    for token in text.split("*"):
        token = token.strip()
        name, _, exp = token.partition("^")
        if name not in index:
            raise ValueError(f"unknown generator {name!r} in {text!r}")
        power = 1
        if exp:
            try:
                power = int(exp)
            except ValueError:
                raise ValueError(f"bad exponent in token {token!r}") from None
        i = index[name]
        letters.extend([i if power > 0 else -i] * abs(power))
    return reduce_word(rank, letters)


@dataclass(frozen=True, slots=True)
class FreeEndo:
    """Endomorphism of F_rank given by the images of the basis generators.

    Equality is letterwise equality of the reduced basis images, which
    coincides with equality as maps.
    """

    rank: int
    images: tuple[Word, ...]

    def __post_init__(self):
        if len(self.images) != self.rank:
            raise ValueError("need one image per basis generator")
        for w in self.images:
            if w.rank != self.rank:
                raise ValueError("image word has mismatched rank")

    @staticmethod
    def identity(rank: int) -> "FreeEndo":
        return FreeEndo(rank, tuple(Word.gen(rank, i) for i in range(1, rank + 1)))

    @staticmethod
    def from_map(rank: int, assignments: dict[int, Word]) -> "FreeEndo":
        """Identity except on the listed generators (1-based indices)."""
        images = [Word.gen(rank, i) for i in range(1, rank + 1)]
        for i, w in assignments.items():
            images[i - 1] = w
        return FreeEndo(rank, tuple(images))

    def __call__(self, w: Word) -> Word:
        if w.rank != self.rank:
            raise ValueError("rank mismatch")
        letters: list[int] = []
        for a in w.letters:
            img = self.images[abs(a) - 1]
            if a < 0:
                img = img.inverse()
            letters.extend(img.letters)
        return Word(self.rank, reduce_letters(letters))

    @property
    def is_identity(self) -> bool:
        return self == FreeEndo.identity(self.rank)


def compose(e1: FreeEndo, e2: FreeEndo) -> FreeEndo:
    """The endomorphism acting as e1 after e2 (e2 applied first)."""
    if e1.rank != e2.rank:
        raise ValueError("rank mismatch")
    return FreeEndo(e1.rank, tuple(e1(w) for w in e2.images))


def verify_automorphism(e: FreeEndo, inv: FreeEndo) -> bool:
    """True iff inv is a two-sided inverse of e, hence e an automorphism."""
    if e.rank != inv.rank:
        raise ValueError("rank mismatch")
    return compose(e, inv).is_identity and compose(inv, e).is_identity


# --- Nielsen moves on generating tuples -------------------------------------
#
# Moves act on tuples of elements of an arbitrary ambient group supplied
# through mul/inv callables.  Multiply moves carry a sign so that every
# move has an elementary inverse.

T = TypeVar("T")

MOVE_KINDS = ("swap", "invert", "lmul", "rmul")


@dataclass(frozen=True, slots=True)
class NielsenMove:
    """swap(i,j) | invert(i) | lmul(i,j,sign): t_i <- t_j^sign * t_i |
    rmul(i,j,sign): t_i <- t_i * t_j^sign.  Indices are 0-based."""

    kind: str
    i: int
    j: int = -1
    sign: int = 1

    def __post_init__(self):
        if self.kind not in MOVE_KINDS:
            raise ValueError(f"unknown move kind {self.kind!r}")
        if self.kind in ("swap", "lmul", "rmul") and self.i == self.j:
            raise ValueError("multiply/swap moves need distinct indices")
        if self.kind in ("lmul", "rmul") and self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    def inverse(self) -> "NielsenMove":
        if self.kind in ("swap", "invert"):
            return self
        return NielsenMove(self.kind, self.i, self.j, -self.sign)


def apply_nielsen(
    move: NielsenMove,
    tup: tuple[T, ...],
    mul: Callable[[T, T], T],
    inv: Callable[[T], T],
) -> tuple[T, ...]:
    """Apply one elementary Nielsen move to a generating tuple."""
    n = len(tup)
    if not (0 <= move.i < n and (move.kind == "invert" or 0 <= move.j < n)):
        raise ValueError("move index out of range for tuple")
    items = list(tup)
    if move.kind == "swap":
        items[move.i], items[move.j] = items[move.j], items[move.i]
    elif move.kind == "invert":
        items[move.i] = inv(items[move.i])
    else:
        other = items[move.j] if move.sign == 1 else inv(items[move.j])
        if move.kind == "lmul":
            items[move.i] = mul(other, items[move.i])
        else:
            items[move.i] = mul(items[move.i], other)
    return tuple(items)


def pair_move_set() -> tuple[NielsenMove, ...]:
    """The elementary moves on 2-tuples: swap, two inversions, and the
    eight signed one-sided multiplications.  Closed under inverses."""
    moves = [NielsenMove("swap", 0, 1), NielsenMove("invert", 0), NielsenMove("invert", 1)]
    for i, j in ((0, 1), (1, 0)):
        for kind in ("lmul", "rmul"):
            for sign in (1, -1):
                moves.append(NielsenMove(kind, i, j, sign))
    return tuple(moves)
