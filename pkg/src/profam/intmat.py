"""Exact integer matrix algebra: arbitrary precision, Smith normal form,
block constructors, bounded free-relation search, congruence images.

Everything here is exact; numpy is used only for the mod-m closure BFS,
where entries are bounded and int64 cannot overflow.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .words import Word, reduce_letters


@dataclass(frozen=True, slots=True)
class IntMatrix:
    """Dense integer matrix, row-major tuple of row tuples."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.entries or not self.entries[0]:
            raise ValueError("matrix must have positive dimensions")
        width = len(self.entries[0])
        for row in self.entries:
            if len(row) != width:
                raise ValueError("ragged rows")

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @staticmethod
    def from_rows(rows: Iterable[Iterable[int]]) -> "IntMatrix":
        return IntMatrix(tuple(tuple(int(x) for x in row) for row in rows))

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @staticmethod
    def zeros(rows: int, cols: int) -> "IntMatrix":
        return IntMatrix(tuple((0,) * cols for _ in range(rows)))

    def __mul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        bt = tuple(zip(*other.entries))
        return IntMatrix(
            tuple(
                tuple(sum(a * b for a, b in zip(row, col)) for col in bt)
                for row in self.entries
            )
        )

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("dimension mismatch")
        return IntMatrix(
            tuple(tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.entries, other.entries))
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + (-other)

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(tuple(tuple(-a for a in row) for row in self.entries))

    def __pow__(self, n: int) -> "IntMatrix":
        if self.rows != self.cols:
            raise ValueError("power of non-square matrix")
        base = self if n >= 0 else self.inverse()
        result = IntMatrix.identity(self.rows)
        for _ in range(abs(n)):
            result = result * base
        return result

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(zip(*self.entries)))

    def mod(self, m: int) -> "IntMatrix":
        return IntMatrix(tuple(tuple(a % m for a in row) for row in self.entries))

    def det(self) -> int:
        """Exact determinant by fraction-free Bareiss elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of non-square matrix")
        n = self.rows
        a = [list(row) for row in self.entries]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
                a[i][k] = 0
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def inverse(self) -> "IntMatrix":
        """Inverse of a unimodular matrix (exact; raises otherwise)."""
        snf = smith_normal_form(self)
        if any(d != 1 for d in snf.divisors) or len(snf.divisors) < self.rows:
            raise ValueError("matrix is not invertible over the integers")
        return snf.v * snf.u

    def is_identity(self) -> bool:
        return self.rows == self.cols and self == IntMatrix.identity(self.rows)

    def key(self) -> bytes:
        """Canonical byte encoding, for exact dedup in hash sets."""
        return repr(self.entries).encode()

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols, "entries": [list(r) for r in self.entries]}

    @staticmethod
    def from_json(obj: dict) -> "IntMatrix":
        m = IntMatrix.from_rows(obj["entries"])
        if (m.rows, m.cols) != (obj["rows"], obj["cols"]):
            raise ValueError("entry grid does not match declared dimensions")
        return m


def block_diag(blocks: Sequence[IntMatrix]) -> IntMatrix:
    """Block-diagonal assembly of square or rectangular blocks."""
    if not blocks:
        raise ValueError("need at least one block")
    total_r = sum(b.rows for b in blocks)
    total_c = sum(b.cols for b in blocks)
    grid = [[0] * total_c for _ in range(total_r)]
    r0 = c0 = 0
    for b in blocks:
        for i, row in enumerate(b.entries):
            grid[r0 + i][c0 : c0 + b.cols] = row
        r0 += b.rows
        c0 += b.cols
    return IntMatrix.from_rows(grid)


def permutation_matrix(perm: Sequence[int], block_size: int = 1) -> IntMatrix:
    """Matrix sending coordinate block j to block perm[j].

    perm is a permutation of 0..k-1; each block has block_size coordinates.
    """
    k = len(perm)
    if sorted(perm) != list(range(k)):
        raise ValueError("not a permutation")
    n = k * block_size
    grid = [[0] * n for _ in range(n)]
    for j, pj in enumerate(perm):
        for t in range(block_size):
            grid[pj * block_size + t][j * block_size + t] = 1
    return IntMatrix.from_rows(grid)


# --- Smith normal form -------------------------------------------------------


@dataclass(frozen=True)
class SmithDecomposition:
    """U*M*V = S with U, V unimodular and S diagonal with d1 | d2 | ..."""

    s: IntMatrix
    u: IntMatrix
    v: IntMatrix
    divisors: tuple[int, ...]  # nonzero diagonal entries, divisibility chain

    def cokernel_invariants(self) -> tuple[int, tuple[int, ...]]:
        """(free rank, torsion divisors > 1) of Z^rows / M Z^cols."""
        free = self.s.rows - len(self.divisors)
        return free, tuple(d for d in self.divisors if d > 1)


def smith_normal_form(m: IntMatrix) -> SmithDecomposition:
    """Exact SNF by elementary moves, pivot = minimal |nonzero| entry.

    The factorisation U*M*V = S is re-verified by exact multiplication
    before returning.
    """
    rows, cols = m.rows, m.cols
    a = [list(row) for row in m.entries]
    u = [[1 if i == j else 0 for j in range(rows)] for i in range(rows)]
    v = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):  # row_dst += c * row_src
        a[dst] = [x + c * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + c * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, c):  # col_dst += c * col_src
        for row in a:
            row[dst] += c * row[src]
        for row in v:
            row[dst] += c * row[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    def diagonalize():
        t = 0
        while True:
            pivot = None
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    if a[i][j] != 0 and (best is None or abs(a[i][j]) < best):
                        best = abs(a[i][j])
                        pivot = (i, j)
            if pivot is None:
                return
            swap_rows(t, pivot[0])
            swap_cols(t, pivot[1])
            if a[t][t] < 0:
                negate_row(t)
            edged = False
            for i in range(t + 1, rows):
                if a[i][t] != 0:
                    add_row(t, i, -(a[i][t] // a[t][t]))
                    edged = edged or a[i][t] != 0
            for j in range(t + 1, cols):
                if a[t][j] != 0:
                    add_col(t, j, -(a[t][j] // a[t][t]))
                    edged = edged or a[t][j] != 0
            if not edged:
                t += 1
            # otherwise nonzero remainders < |pivot| remain in the block;
            # re-running pivot selection performs the gcd descent

    diagonalize()
    # enforce the divisibility chain d_i | d_{i+1}: fold the offender into
    # column i and re-diagonalize (the leading minors' gcds only shrink)
    while True:
        bad = None
        for i in range(min(rows, cols) - 1):
            di, dj = a[i][i], a[i + 1][i + 1]
            if di != 0 and dj != 0 and dj % di != 0:
                bad = i
                break
        if bad is None:
            break
        add_col(bad + 1, bad, 1)
        diagonalize()

    s_m = IntMatrix.from_rows(a)
    u_m = IntMatrix.from_rows(u)
    v_m = IntMatrix.from_rows(v)
    if u_m * m * v_m != s_m:
        raise AssertionError("SNF transform verification failed")
    if abs(u_m.det()) != 1 or abs(v_m.det()) != 1:
        raise AssertionError("SNF transforms are not unimodular")
    divisors = []
    for i in range(min(rows, cols)):
        d = s_m.entries[i][i]
        if d != 0:
            divisors.append(d)
    for d1, d2 in zip(divisors, divisors[1:]):
        if d2 % d1 != 0:
            raise AssertionError("SNF divisibility chain violated")
    return SmithDecomposition(s_m, u_m, v_m, tuple(divisors))


def column_hnf(vectors: Sequence[Sequence[int]], dim: int) -> tuple[tuple[int, ...], ...]:
    """Canonical column Hermite basis of the lattice spanned by vectors.

    Basis columns are echelon by pivot row with positive pivots, and each
    earlier column is reduced mod the later pivots, so two lattices are
    equal iff their bases are identical tuples.
    """
    cols = [list(v) for v in vectors if any(v)]
    basis: list[tuple[int, list[int]]] = []  # (pivot row, column)
    for r in range(dim):
        carrier = None
        rest = []
        for c in cols:
            if c[r] == 0:
                rest.append(c)
                continue
            if carrier is None:
                carrier = c
                continue
            while c[r] != 0:  # gcd elimination at row r
                if abs(c[r]) < abs(carrier[r]):
                    carrier, c = c, carrier
                q = c[r] // carrier[r]
                for k in range(r, dim):
                    c[k] -= q * carrier[k]
            if any(c):
                rest.append(c)
        cols = rest
        if carrier is not None:
            if carrier[r] < 0:
                carrier = [-x for x in carrier]
            basis.append((r, carrier))
    for idx, (r, b) in enumerate(basis):
        for _, earlier in basis[:idx]:
            if earlier[r] != 0:
                q = earlier[r] // b[r]
                for k in range(r, dim):
                    earlier[k] -= q * b[k]
    return tuple(tuple(b) for _, b in basis)


# --- The Sanov pair and relation search --------------------------------------


def sanov_pair() -> tuple[IntMatrix, IntMatrix]:
    """The classical free generating pair of a rank-2 subgroup of GL2(Z)."""
    a = IntMatrix.from_rows([[1, 2], [0, 1]])
    b = IntMatrix.from_rows([[1, 0], [2, 1]])
    return a, b


def bounded_relation_search(gens: Sequence[IntMatrix], max_len: int) -> Word | None:
    """First nontrivial reduced word of length <= max_len evaluating to I.

    Exhaustive via meet-in-the-middle: all reduced words of length up to
    ceil(max_len/2) are evaluated (in length-lexicographic order, letter
    order g1 < g1^-1 < g2 < ...); a value collision between words u and w
    yields the relator u^-1 * w.  Returns None iff the generators satisfy
    no relation of reduced length <= max_len.
    """
    k = len(gens)
    inverses = [g.inverse() for g in gens]  # raises on non-invertible input

    def value(letter: int) -> IntMatrix:
        return gens[letter - 1] if letter > 0 else inverses[-letter - 1]

    half = (max_len + 1) // 2
    # letters ordered g1, g1^-1, g2, g2^-1, ...
    alphabet = [s * i for i in range(1, k + 1) for s in (1, -1)]
    seen: dict[bytes, list[tuple[tuple[int, ...], int]]] = {}
    found: Word | None = None

    frontier: list[tuple[tuple[int, ...], IntMatrix]] = [((), IntMatrix.identity(gens[0].rows))]
    for length in range(0, half + 1):
        for letters, mat in frontier:
            key = mat.key()
            for prior, plen in seen.get(key, ()):
                if prior == letters:
                    continue
                relator = reduce_letters(tuple(-a for a in reversed(prior)) + letters)
                if relator and len(relator) <= max_len:
                    candidate = Word(k, relator)
                    if found is None or len(candidate) < len(found):
                        found = candidate
            seen.setdefault(key, []).append((letters, length))
        if found is not None:
            return found
        if length == half:
            break
        nxt = []
        for letters, mat in frontier:
            for a in alphabet:
                if letters and letters[-1] == -a:
                    continue
                nxt.append((letters + (a,), mat * value(a)))
        frontier = nxt
    return None


# --- Congruence images --------------------------------------------------------


@dataclass(frozen=True)
class CongruenceImage:
    """BFS closure of the generators mod m, or a cap-exceeded signal."""

    modulus: int
    order: int | None  # None iff capped
    capped: bool
    digest: frozenset[bytes]  # 16-byte digests of the reduced matrices
    elements: tuple[bytes, ...] | None  # full byte keys, kept when small


def _mat_bytes(arr: np.ndarray) -> bytes:
    return arr.astype(np.uint8).tobytes()


def _digest(key: bytes) -> bytes:
    return hashlib.sha256(key).digest()[:16]


def congruence_closure(
    gens: Sequence[IntMatrix],
    m: int,
    cap: int = 10**6,
    keep_elements_below: int = 200_000,
) -> CongruenceImage:
    """Closure of the reduced generators mod m under multiplication.

    Pure semigroup BFS: the generated set is finite, hence a group.  If
    the closure exceeds ``cap`` the result carries ``capped=True`` and no
    element data.
    """
    if m < 2:
        raise ValueError("modulus must be >= 2")
    n = gens[0].rows
    mats = [np.array(g.mod(m).entries, dtype=np.int64) for g in gens]
    identity = np.eye(n, dtype=np.int64)
    visited: dict[bytes, np.ndarray] = {_mat_bytes(identity): identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for mat in frontier:
            for g in mats:
                prod = (mat @ g) % m
                key = _mat_bytes(prod)
                if key not in visited:
                    visited[key] = prod
                    nxt.append(prod)
                    if len(visited) > cap:
                        return CongruenceImage(m, None, True, frozenset(), None)
        frontier = nxt
    keys = tuple(sorted(visited))
    digest = frozenset(_digest(k) for k in keys)
    elements = keys if len(keys) <= keep_elements_below else None
    return CongruenceImage(m, len(keys), False, digest, elements)
