"""Stabilized sliding block codes and verified automorphisms.

A code of period k and radius r over the n-letter full shift is a
k-tuple of lookup tables beta_0..beta_{k-1}, each mapping windows in
A^{2r+1} (indexed leftmost-significant) to letters, with semantics

    phi(x)_z = beta_{z mod k}(x_{z-r}, ..., x_{z+r}).

Tables are dense numpy arrays, so every comparison below is an exact,
exhaustive check over all windows.  Size guards keep that honest:
operations refuse to build tables they cannot enumerate.
"""

from __future__ import annotations

import itertools
from dataclasses import InitVar, dataclass, field

import numpy as np

from .shifts import (
    PeriodicPoint,
    SftMatrix,
    language_words,
    lcm,
    power_alphabet_index,
)

# Largest total table size (entries summed over position classes) any
# operation is willing to materialize.  Exceeding it raises rather than
# silently degrading exactness.
MAX_TABLE_ENTRIES = 60_000_000


class CodeSizeExceeded(ValueError):
    """A table or comparison would exceed the exhaustive-check budget."""


class BudgetExceeded(ValueError):
    """An enumeration would exceed its configured candidate budget."""


def _table_dtype(n: int):
    return np.int16 if n < 2**15 else np.int32


def window_count(n: int, radius: int) -> int:
    return n ** (2 * radius + 1)


def _check_size(n: int, radius: int, period: int) -> None:
    if window_count(n, radius) * period > MAX_TABLE_ENTRIES:
        raise CodeSizeExceeded(
            f"{period} tables of {window_count(n, radius)} entries exceed the exact-check budget"
        )


def window_digits(n: int, radius: int) -> np.ndarray:
    """(n^(2r+1), 2r+1) matrix of all windows, row i = letters of window i."""
    width = 2 * radius + 1
    idx = np.arange(window_count(n, radius), dtype=np.int64)
    cols = []
    for pos in range(width):
        shift = n ** (width - 1 - pos)
        cols.append((idx // shift) % n)
    return np.stack(cols, axis=1).astype(_table_dtype(n))


WINDOW_CHUNK = 1 << 19


def iter_window_chunks(n: int, radius: int, chunk: int = WINDOW_CHUNK):
    """Yield (start, digits) pieces of the full window enumeration.

    Keeps peak memory bounded for large radii; digits rows are the
    letters of windows start .. start+len-1 in index order.
    """
    width = 2 * radius + 1
    total = window_count(n, radius)
    shifts = [n ** (width - 1 - pos) for pos in range(width)]
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        digits = np.empty((idx.size, width), dtype=np.int64)
        for pos, shift in enumerate(shifts):
            digits[:, pos] = (idx // shift) % n
        yield start, digits


def encode_windows(n: int, digits: np.ndarray) -> np.ndarray:
    """Indices of the windows whose letters are the rows of `digits`."""
    width = digits.shape[-1]
    powers = np.array([n ** (width - 1 - i) for i in range(width)], dtype=np.int64)
    return digits.astype(np.int64) @ powers


@dataclass(frozen=True, eq=False)
class StabilizedCode:
    """k position-dependent block maps of common radius r over A = {0..n-1}.

    `block_map` and `shift_by` are redundant structural metadata.  A
    block_map records that the code acts blockwise on aligned
    length-`period` blocks by that permutation of block indices; a
    shift_by records that the code is a pure shift power.  Either lets
    compose() produce the structured result directly instead of growing
    the radius.
    """

    n: int
    period: int
    radius: int
    tables: tuple[np.ndarray, ...]
    block_map: tuple[int, ...] | None = field(default=None)
    shift_by: int | None = field(default=None)

    def __post_init__(self):
        if self.n < 1 or self.period < 1 or self.radius < 0:
            raise ValueError("bad code shape")
        if len(self.tables) != self.period:
            raise ValueError("need one table per position class")
        want = window_count(self.n, self.radius)
        fixed = []
        for t in self.tables:
            arr = np.asarray(t, dtype=_table_dtype(self.n))
            if arr.shape != (want,):
                raise ValueError(f"table must have exactly {want} entries")
            if arr.size and (arr.min() < 0 or arr.max() >= self.n):
                raise ValueError("table entry out of letter range")
            arr = arr.copy()
            arr.flags.writeable = False
            fixed.append(arr)
        object.__setattr__(self, "tables", tuple(fixed))
        if self.block_map is not None:
            bm = tuple(int(b) for b in self.block_map)
            if sorted(bm) != list(range(self.n**self.period)):
                raise ValueError("block_map must permute the aligned blocks")
            object.__setattr__(self, "block_map", bm)

    # -- constructors ------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "StabilizedCode":
        return cls(n, 1, 0, (np.arange(n, dtype=_table_dtype(n)),),
                   block_map=tuple(range(n)), shift_by=0)

    @classmethod
    def shift(cls, n: int, j: int) -> "StabilizedCode":
        """The j-th shift power: output at z copies the input at z + j."""
        if j == 0:
            return cls.identity(n)
        r = abs(j)
        idx = np.arange(window_count(n, r), dtype=np.int64)
        pos = r + j  # window slot holding x_{z+j}
        table = (idx // (n ** (2 * r - pos))) % n
        return cls(n, 1, r, (table,), shift_by=j)

    @classmethod
    def from_rule(cls, n: int, period: int, radius: int, rule) -> "StabilizedCode":
        """Build dense tables from rule(position_class, window_letters) -> letter."""
        _check_size(n, radius, period)
        digits = window_digits(n, radius)
        tables = []
        for c in range(period):
            tables.append(np.fromiter(
                (rule(c, tuple(int(a) for a in row)) for row in digits),
                dtype=_table_dtype(n), count=digits.shape[0]))
        return cls(n, period, radius, tuple(tables))

    @classmethod
    def from_block_permutation(cls, n: int, k: int, images: tuple[int, ...]) -> "StabilizedCode":
        """Code acting on aligned k-blocks by a permutation of block indices."""
        if sorted(images) != list(range(n**k)):
            raise ValueError("images must permute the n^k blocks")
        radius = k - 1
        _check_size(n, radius, k)
        digits = window_digits(n, radius)
        img = np.asarray(images, dtype=np.int64)
        tables = []
        for c in range(k):
            # block containing the centre at class c occupies window
            # positions radius-c .. radius-c+k-1
            blk = encode_windows(n, digits[:, radius - c: radius - c + k])
            out_blocks = img[blk]
            letter = (out_blocks // (n ** (k - 1 - c))) % n
            tables.append(letter.astype(_table_dtype(n)))
        return cls(n, k, radius, tuple(tables), block_map=tuple(int(i) for i in images))

    # -- evaluation ---------------------------------------------------

    def evaluate(self, position_class: int, window) -> int:
        """beta_{position_class}(window); window must have length 2r+1."""
        window = tuple(window)
        if len(window) != 2 * self.radius + 1:
            raise ValueError(f"window length {len(window)} != {2 * self.radius + 1}")
        idx = power_alphabet_index(self.n, len(window), window)
        return int(self.tables[position_class % self.period][idx])

    def evaluate_indices(self, position_class: int, indices: np.ndarray) -> np.ndarray:
        return self.tables[position_class % self.period][indices]

    # -- structural transforms -----------------------------------------

    def refine(self, period: int, radius: int) -> "StabilizedCode":
        """Semantically identical code with larger period and/or radius."""
        if period % self.period != 0:
            raise ValueError(f"{period} is not a multiple of period {self.period}")
        if radius < self.radius:
            raise ValueError("cannot shrink the radius")
        if period == self.period and radius == self.radius:
            return self
        _check_size(self.n, radius, period)
        pad = radius - self.radius
        if pad == 0:
            tables = [self.tables[c % self.period] for c in range(period)]
            return StabilizedCode(self.n, period, radius, tuple(tables))
        n = self.n
        total = window_count(n, radius)
        dtype = _table_dtype(n)
        new = [np.empty(total, dtype=dtype) for _ in range(period)]
        for start, digits in iter_window_chunks(n, radius):
            gather = encode_windows(n, digits[:, pad:-pad])
            for c in range(period):
                new[c][start: start + gather.size] = self.tables[c % self.period][gather]
        return StabilizedCode(self.n, period, radius, tuple(new))

    def __repr__(self):
        return f"StabilizedCode(n={self.n}, period={self.period}, radius={self.radius})"


def compose(f: StabilizedCode, g: StabilizedCode) -> StabilizedCode:
    """The code computing f(g(x)).

    Pure shifts compose to the summed shift and aligned blockwise codes
    compose by permutation composition; otherwise the result has period
    lcm(k_f, k_g) and radius r_f + r_g.
    """
    if f.n != g.n:
        raise ValueError("alphabet mismatch")
    n = f.n
    if f.shift_by is not None and g.shift_by is not None:
        return StabilizedCode.shift(n, f.shift_by + g.shift_by)
    if (
        f.block_map is not None
        and g.block_map is not None
        and f.period == g.period
    ):
        # both act blockwise on aligned period-length blocks: compose the
        # block permutations; radius does not grow.
        images = tuple(f.block_map[b] for b in g.block_map)
        return StabilizedCode.from_block_permutation(n, f.period, images)
    period = lcm(f.period, g.period)
    radius = f.radius + g.radius
    _check_size(n, radius, period)
    total = window_count(n, radius)
    dtype = _table_dtype(n)
    tables = [np.empty(total, dtype=dtype) for _ in range(period)]
    for start, digits in iter_window_chunks(n, radius):
        inner_by_offset = []
        for d in range(-f.radius, f.radius + 1):
            lo = radius + d - g.radius
            inner_by_offset.append(encode_windows(n, digits[:, lo: lo + 2 * g.radius + 1]))
        for c in range(period):
            cols = [
                g.evaluate_indices(c + d, inner_by_offset[d + f.radius])
                for d in range(-f.radius, f.radius + 1)
            ]
            outer = encode_windows(n, np.stack(cols, axis=1))
            tables[c][start: start + outer.size] = f.evaluate_indices(c, outer)
    return StabilizedCode(n, period, radius, tuple(tables))


def compose_all(*codes: StabilizedCode) -> StabilizedCode:
    """compose(codes[0], codes[1], ...) applied right to left."""
    out = codes[-1]
    for c in reversed(codes[:-1]):
        out = compose(c, out)
    return out


def code_power(code: StabilizedCode, m: int) -> StabilizedCode:
    if m < 1:
        raise ValueError("m must be >= 1")
    out = code
    for _ in range(m - 1):
        out = compose(code, out)
    return out


def _admissible_window_indices(n: int, radius: int, sft: SftMatrix) -> np.ndarray:
    words = language_words(sft, 2 * radius + 1)
    return np.array([power_alphabet_index(n, 2 * radius + 1, w) for w in words], dtype=np.int64)


def _inflate_block_map(n: int, k: int, images: tuple[int, ...], t: int) -> tuple[int, ...]:
    """Diagonal action of an aligned k-block permutation on kt-blocks."""
    nk = n**k
    out = []
    for b in range(nk**t):
        subs = []
        for _ in range(t):
            b, lo = divmod(b, nk)
            subs.append(lo)
        subs.reverse()
        acc = 0
        for s in subs:
            acc = acc * nk + images[s]
        out.append(acc)
    return tuple(out)


def equals(f: StabilizedCode, g: StabilizedCode, sft: SftMatrix | None = None) -> bool:
    """Exact pointwise equality of the induced maps.

    Both codes are refined to a common period and radius and their
    tables compared entrywise.  With `sft` given, only windows
    admissible for that shift of finite type are compared.
    """
    if f.n != g.n:
        raise ValueError("alphabet mismatch")
    period = lcm(f.period, g.period)
    if (
        sft is None
        and f.block_map is not None
        and g.block_map is not None
    ):
        # aligned blockwise codes agree as maps iff their block
        # permutations agree after inflating to the common period
        fm = _inflate_block_map(f.n, f.period, f.block_map, period // f.period)
        gm = _inflate_block_map(g.n, g.period, g.block_map, period // g.period)
        return fm == gm
    radius = max(f.radius, g.radius)
    fr = f.refine(period, radius)
    gr = g.refine(period, radius)
    if sft is None:
        return all(np.array_equal(a, b) for a, b in zip(fr.tables, gr.tables))
    idx = _admissible_window_indices(f.n, radius, sft)
    return all(np.array_equal(a[idx], b[idx]) for a, b in zip(fr.tables, gr.tables))


def commutes_with_shift_power(code: StabilizedCode, m: int, sft: SftMatrix | None = None) -> bool:
    """Whether shift^m conjugation fixes the code.

    After refining to period lcm(k, m), conjugating by shift^m shifts
    the position-class index by m, so commutation is invariance of the
    table tuple under that index shift.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    period = lcm(code.period, m)
    r = code.refine(period, code.radius)
    if sft is None:
        return all(
            np.array_equal(r.tables[c], r.tables[(c + m) % period])
            for c in range(period)
        )
    idx = _admissible_window_indices(code.n, code.radius, sft)
    return all(
        np.array_equal(r.tables[c][idx], r.tables[(c + m) % period][idx])
        for c in range(period)
    )


def verify_inverse_pair(f: StabilizedCode, g: StabilizedCode, sft: SftMatrix | None = None) -> bool:
    """True iff f and g are two-sided inverses as maps."""
    if f.n != g.n:
        raise ValueError("alphabet mismatch")
    ident = StabilizedCode.identity(f.n)
    return equals(compose(f, g), ident, sft) and equals(compose(g, f), ident, sft)


def apply_to_periodic(code: StabilizedCode, x: PeriodicPoint) -> PeriodicPoint:
    """Image of a periodic point; the result has period lcm(P, k)."""
    length = lcm(x.period, code.period)
    letters = []
    for z in range(length):
        window = x.window(z - code.radius, z + code.radius)
        letters.append(code.evaluate(z % code.period, window))
    return PeriodicPoint(tuple(letters), 0)


@dataclass(frozen=True, eq=False)
class Automorphism:
    """A stabilized code together with a verified two-sided inverse.

    Verification composes the pair both ways and compares against the
    identity over every window.  Callers composing already-verified
    pairs may pass verify=False when the identity holds by construction
    and the exhaustive check would not fit the table budget.
    """

    forward: StabilizedCode
    inverse: StabilizedCode
    verify: InitVar[bool] = True

    def __post_init__(self, verify: bool = True):
        if self.forward.n != self.inverse.n:
            raise ValueError("alphabet mismatch")
        if verify and not verify_inverse_pair(self.forward, self.inverse):
            raise ValueError("inverse verification failed")

    @property
    def n(self) -> int:
        return self.forward.n

    @property
    def period(self) -> int:
        return lcm(self.forward.period, self.inverse.period)

    @property
    def radius(self) -> int:
        return self.forward.radius

    def inverted(self) -> "Automorphism":
        return Automorphism(self.inverse, self.forward, verify=False)

    def __repr__(self):
        return (f"Automorphism(n={self.n}, period={self.period}, "
                f"radius={self.forward.radius}/{self.inverse.radius})")


def _verification_fits(fwd: StabilizedCode, inv: StabilizedCode) -> bool:
    period = lcm(fwd.period, inv.period)
    return window_count(fwd.n, fwd.radius + inv.radius) * period <= MAX_TABLE_ENTRIES


def aut_compose(a: Automorphism, b: Automorphism) -> Automorphism:
    """Composition a after b; the inverse pair is composed the other way
    round, so the inverse identity holds by construction."""
    fwd = compose(a.forward, b.forward)
    inv = compose(b.inverse, a.inverse)
    return Automorphism(fwd, inv, verify=_verification_fits(fwd, inv))


def aut_commutator(a: Automorphism, b: Automorphism) -> Automorphism:
    """a b a^-1 b^-1."""
    fwd = compose_all(a.forward, b.forward, a.inverse, b.inverse)
    inv = compose_all(b.forward, a.forward, b.inverse, a.inverse)
    return Automorphism(fwd, inv, verify=_verification_fits(fwd, inv))


def aut_equals(a: Automorphism, b: Automorphism) -> bool:
    return equals(a.forward, b.forward)


def find_inverse(code: StabilizedCode, max_radius: int) -> StabilizedCode | None:
    """Search for an inverse code of radius <= max_radius by constraint propagation.

    For an inverse g of radius s, g(f(x))_z = x_z pins the g-table entry
    at every f-output window; any conflict rules out that radius.  A
    consistent, fully verified candidate is returned, otherwise None.
    """
    n, k, r = code.n, code.period, code.radius
    for s in range(max_radius + 1):
        span = s + r
        digits = window_digits(n, span)
        ok = True
        tables = []
        for c in range(k):
            cols = []
            for d in range(-s, s + 1):
                lo = span + d - r
                inner = encode_windows(n, digits[:, lo: lo + 2 * r + 1])
                cols.append(code.evaluate_indices(c + d, inner))
            out_idx = encode_windows(n, np.stack(cols, axis=1))
            centre = digits[:, span].astype(_table_dtype(n))
            table = np.full(window_count(n, s), -1, dtype=np.int64)
            table[out_idx] = centre
            conflict = table[out_idx] != centre
            if conflict.any():
                ok = False
                break
            table[table < 0] = 0
            tables.append(table.astype(_table_dtype(n)))
        if not ok:
            continue
        cand = StabilizedCode(n, k, s, tuple(tables))
        if verify_inverse_pair(code, cand):
            return cand
    return None


def enumerate_automorphisms(
    n: int,
    r: int,
    k: int,
    inverse_radius: int | None = None,
    budget: int = 200_000,
) -> list[Automorphism]:
    """Exhaustive census of invertible codes of the given shape.

    Every code with period k and radius r whose inverse has radius at
    most `inverse_radius` (default 2r) is returned with that inverse, in
    the canonical order of the table-index tuples.
    """
    if inverse_radius is None:
        inverse_radius = 2 * r
    w = window_count(n, r)
    candidates = n ** (w * k)
    if candidates > budget:
        raise BudgetExceeded(f"{candidates} candidates exceed budget {budget}")

    survivors = _bijective_on_periodics(n, r, k)
    out = []
    for tbl_indices in survivors:
        tables = tuple(
            np.array(_table_from_index(n, w, ti), dtype=_table_dtype(n))
            for ti in tbl_indices
        )
        code = StabilizedCode(n, k, r, tables)
        inv = find_inverse(code, inverse_radius)
        if inv is not None:
            out.append(Automorphism(code, inv))
    return out


def _table_from_index(n: int, w: int, idx: int) -> tuple[int, ...]:
    letters = []
    for _ in range(w):
        idx, a = divmod(idx, n)
        letters.append(a)
    return tuple(reversed(letters))


def _bijective_on_periodics(n: int, r: int, k: int) -> list[tuple[int, ...]]:
    """Candidate table tuples inducing bijections on small periodic points.

    A cheap exact prefilter: an invertible code permutes the points of
    each period, so any candidate failing to permute P_L is discarded
    before the inverse search.  Candidates are returned in ascending
    canonical order.
    """
    w = window_count(n, r)
    per_table = n**w
    length = k
    while length < max(2 * r + 1, 4):
        length += k
    # periodic blocks of length `length`
    pts = np.zeros((n**length, length), dtype=np.int64)
    idx = np.arange(n**length, dtype=np.int64)
    for pos in range(length):
        pts[:, pos] = (idx // (n ** (length - 1 - pos))) % n
    # window index of each point at each position (cyclic)
    win_idx = np.zeros((n**length, length), dtype=np.int64)
    for z in range(length):
        acc = np.zeros(n**length, dtype=np.int64)
        for off in range(-r, r + 1):
            acc = acc * n + pts[:, (z + off) % length]
        win_idx[:, z] = acc
    # all tables as (per_table, w) digit matrix
    tdig = np.zeros((per_table, w), dtype=np.int64)
    tidx = np.arange(per_table, dtype=np.int64)
    for pos in range(w):
        tdig[:, pos] = (tidx // (n ** (w - 1 - pos))) % n
    # partial contribution of each table choice per residue class
    weights = [n ** (length - 1 - z) for z in range(length)]
    partial = []
    for c in range(k):
        cols = [z for z in range(length) if z % k == c]
        contrib = np.zeros((per_table, n**length), dtype=np.int64)
        for z in cols:
            contrib += tdig[:, win_idx[:, z]] * weights[z]
        partial.append(contrib)
    target = np.sort(idx)
    survivors = []
    for combo in itertools.product(range(per_table), repeat=k):
        image = partial[0][combo[0]].copy()
        for c in range(1, k):
            image += partial[c][combo[c]]
        image.sort()
        if np.array_equal(image, target):
            survivors.append(combo)
    return survivors
