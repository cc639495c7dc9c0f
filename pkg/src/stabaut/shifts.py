"""Alphabets, SFT presentations, words, and periodic points.

Shifts of finite type are presented by square non-negative integer
matrices; points of the edge shift are bi-infinite walks in the graph
with entry (i, j) counting parallel edges from vertex i to vertex j.
The full shift on n symbols is the 1x1 matrix (n).

Words are plain tuples of letter indices.  Everything here is an
immutable value and every function is pure.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

Word = tuple[int, ...]


@dataclass(frozen=True)
class Alphabet:
    """Finite alphabet; letters are 0 .. size-1."""

    size: int

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("alphabet size must be >= 1")

    def check_letter(self, a: int) -> None:
        if not 0 <= a < self.size:
            raise ValueError(f"letter {a} out of range for alphabet of size {self.size}")

    def check_word(self, word) -> Word:
        word = tuple(int(a) for a in word)
        for a in word:
            self.check_letter(a)
        return word


@dataclass(frozen=True)
class SftMatrix:
    """Adjacency matrix presentation of a shift of finite type.

    Edges are canonically enumerated sorted by (source, target,
    multiplicity index); all downstream labelings depend on this order.
    """

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        d = len(self.entries)
        if d < 1 or any(len(row) != d for row in self.entries):
            raise ValueError("entries must form a square matrix")
        if any(e < 0 for row in self.entries for e in row):
            raise ValueError("entries must be non-negative")
        object.__setattr__(self, "entries", tuple(tuple(int(e) for e in row) for row in self.entries))

    @classmethod
    def full_shift(cls, n: int) -> "SftMatrix":
        if n < 1:
            raise ValueError("full shift needs n >= 1")
        return cls(((n,),))

    @property
    def dim(self) -> int:
        return len(self.entries)

    @property
    def edge_count(self) -> int:
        return sum(sum(row) for row in self.entries)

    @property
    def is_full_shift(self) -> bool:
        return self.dim == 1

    def edges(self) -> tuple[tuple[int, int, int], ...]:
        """Canonical edge list: (source, target, multiplicity index)."""
        out = []
        for i in range(self.dim):
            for j in range(self.dim):
                for m in range(self.entries[i][j]):
                    out.append((i, j, m))
        return tuple(out)

    def edge_endpoints(self) -> tuple[tuple[int, int], ...]:
        return tuple((s, t) for s, t, _ in self.edges())


def matrix_power_trace(sft: SftMatrix, k: int) -> int:
    """trace(A^k) with exact integer arithmetic."""
    d = sft.dim
    acc = [[1 if i == j else 0 for j in range(d)] for i in range(d)]
    base = [list(row) for row in sft.entries]
    e = k
    while e:
        if e & 1:
            acc = _matmul(acc, base)
        base = _matmul(base, base)
        e >>= 1
    return sum(acc[i][i] for i in range(d))


def _matmul(x, y):
    d = len(x)
    return [[sum(x[i][k] * y[k][j] for k in range(d)) for j in range(d)] for i in range(d)]


def language_words(sft: SftMatrix, length: int) -> list[Word]:
    """Admissible edge-words of the given length, lexicographically ordered.

    A word is a path: the target of each edge is the source of the next.
    For the full shift this is all n^length words.
    """
    if length < 1:
        raise ValueError("length must be >= 1")
    ends = sft.edge_endpoints()
    if not ends:
        return []
    words: list[Word] = []

    def extend(prefix: list[int], tail_vertex: int | None):
        if len(prefix) == length:
            words.append(tuple(prefix))
            return
        for e, (s, t) in enumerate(ends):
            if tail_vertex is None or s == tail_vertex:
                prefix.append(e)
                extend(prefix, t)
                prefix.pop()

    extend([], None)
    return words


def count_periodic(sft: SftMatrix, k: int) -> int:
    """Number of points fixed by the k-th power of the shift: trace(A^k)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return matrix_power_trace(sft, k)


@lru_cache(maxsize=None)
def _mobius(n: int) -> int:
    result, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    if m > 1:
        result = -result
    return result


def count_least_period_orbits(n: int, p: int) -> int:
    """Number of shift orbits of least period exactly p in the full n-shift.

    Moebius inversion of n^p = sum_{d|p} d * (orbit count at d).
    """
    if n < 1 or p < 1:
        raise ValueError("need n >= 1 and p >= 1")
    total = sum(_mobius(p // d) * n**d for d in range(1, p + 1) if p % d == 0)
    assert total % p == 0
    return total // p


def power_alphabet_index(n: int, k: int, block) -> int:
    """Leftmost-significant index of a length-k block in A^k."""
    block = tuple(block)
    if len(block) != k:
        raise ValueError(f"block length {len(block)} != {k}")
    idx = 0
    for a in block:
        if not 0 <= a < n:
            raise ValueError(f"letter {a} out of range for alphabet of size {n}")
        idx = idx * n + a
    return idx


def index_to_block(n: int, k: int, idx: int) -> Word:
    """Inverse of power_alphabet_index."""
    if not 0 <= idx < n**k:
        raise ValueError("index out of range")
    letters = []
    for _ in range(k):
        idx, a = divmod(idx, n)
        letters.append(a)
    return tuple(reversed(letters))


def all_blocks(n: int, k: int):
    """All length-k blocks in index order."""
    return itertools.product(range(n), repeat=k)


@dataclass(frozen=True, eq=False)
class PeriodicPoint:
    """Periodic point x with x_z = block[(z + phase) mod len(block)].

    Equality is rotation-aware and reduces to the least period, so two
    representations are equal exactly when they define the same
    bi-infinite sequence.
    """

    block: Word
    phase: int = 0

    def __post_init__(self):
        if len(self.block) < 1:
            raise ValueError("block must be nonempty")
        object.__setattr__(self, "block", tuple(int(a) for a in self.block))
        object.__setattr__(self, "phase", self.phase % len(self.block))

    @property
    def period(self) -> int:
        return len(self.block)

    def letter(self, z: int) -> int:
        return self.block[(z + self.phase) % len(self.block)]

    def window(self, lo: int, hi: int) -> Word:
        """Letters at positions lo..hi inclusive."""
        return tuple(self.letter(z) for z in range(lo, hi + 1))

    def shifted(self, j: int = 1) -> "PeriodicPoint":
        """Image under the j-th power of the shift: y_z = x_{z+j}."""
        return PeriodicPoint(self.block, self.phase + j)

    def canonical(self) -> tuple[int, Word, int]:
        """(least period, lex-least rotation of the primitive block, phase)."""
        seq = tuple(self.letter(z) for z in range(self.period))
        p = self.period
        for d in range(1, self.period + 1):
            if self.period % d == 0 and all(seq[i] == seq[i % d] for i in range(self.period)):
                p = d
                break
        word = seq[:p]
        best_t = min(range(p), key=lambda t: word[t:] + word[:t])
        best = word[best_t:] + word[:best_t]
        return (p, best, (-best_t) % p)

    def __eq__(self, other):
        if not isinstance(other, PeriodicPoint):
            return NotImplemented
        return self.canonical() == other.canonical()

    def __hash__(self):
        return hash(self.canonical())

    def __repr__(self):
        return f"PeriodicPoint(block={self.block}, phase={self.phase})"


def periodic_points(n: int, period: int) -> list[PeriodicPoint]:
    """All points of the full n-shift fixed by shift^period, as distinct points."""
    return [PeriodicPoint(b, 0) for b in all_blocks(n, period)]


def prime_factors(n: int) -> list[int]:
    """Sorted distinct prime divisors, by trial division."""
    if n < 2:
        raise ValueError("need n >= 2")
    out, m, p = [], n, 2
    while p * p <= m:
        if m % p == 0:
            out.append(p)
            while m % p == 0:
                m //= p
        p += 1 if p == 2 else 2
    if m > 1:
        out.append(m)
    return out


def prime_exponents(n: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(sorted primes of n, their exponents in n)."""
    primes = prime_factors(n)
    exps = []
    for p in primes:
        e, m = 0, n
        while m % p == 0:
            e += 1
            m //= p
        exps.append(e)
    return tuple(primes), tuple(exps)


def lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)
