"""
Words, colored heaps, and normal forms for the locally free group LF_n
and its positive semigroup LF_n^+.

LF_n is the group on generators f_1, ..., f_n subject only to the
commutation relations f_i f_j = f_j f_i for |i - j| >= 2; neighboring
generators (|i - j| = 1) satisfy no relation at all. Every element has a
unique normal form

    w = f_{a_1}^{m_1} f_{a_2}^{m_2} ... f_{a_s}^{m_s},    m_t != 0,

whose index sequence obeys the succession rules: after index 1 the next
index lies in {2, ..., n}; after index k with 2 <= k <= n-1 the next
index is either k-1 or lies in {k+1, ..., n}; after index n only n-1 may
follow. The reduced length of w is K(w) = sum |m_t|.

Elements are stored here as colored heaps: stacks of unit cells in an
n-column strip, one column per generator index. Pushing the letter
f_i^s drops a cell into column i from above; it comes to rest one level
above the highest cell among columns i-1, i, i+1, and is colored by the
sign s. In group mode the push cancels instead of landing when the cell
it would rest on sits in the same column, is currently removable (top of
its three-column neighborhood), and carries the opposite color. The heap
is the canonical object: two words spell the same element iff they build
the same heap, so heap equality is group-element equality and the cell
count is the reduced length.

A valid heap satisfies, and every operation here preserves:

  1. no two cells in horizontally adjacent columns share a level;
  2. every cell above level 1 rests on a cell one level below in
     columns i-1, i, or i+1;
  3. vertically touching cells in one column share a color (and in
     semigroup mode every color is +1).

The roof of a heap is the set of columns whose top cell has no cell at
the same or greater level in an adjacent column; exactly these top cells
can be removed (by multiplying with the inverse letter) while leaving a
valid heap, so the roof is the set of achievable generators and its
size drives the drift and entropy estimators in the walk module.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

GROUP = "group"
SEMIGROUP = "semigroup"

MODES = (GROUP, SEMIGROUP)

# A cell is (level, color) with level >= 1 and color in {+1, -1}.
Cell = tuple[int, int]

_U32 = struct.Struct("<I")


@dataclass(frozen=True)
class Letter:
    """A single generator letter f_index^sign, sign in {+1, -1}."""

    index: int
    sign: int = 1

    def inverse(self) -> "Letter":
        return Letter(self.index, -self.sign)


@dataclass(frozen=True)
class Syllable:
    """A maximal run f_index^exponent in a normal form; exponent != 0."""

    index: int
    exponent: int


@dataclass(frozen=True)
class NormalWord:
    """A syllable spelling whose index sequence obeys the succession rules."""

    syllables: tuple[Syllable, ...]
    n: int

    @property
    def length(self) -> int:
        """Reduced length K = sum of |exponent| over syllables."""
        return sum(abs(s.exponent) for s in self.syllables)

    def index_sequence(self) -> tuple[int, ...]:
        return tuple(s.index for s in self.syllables)

    def letters(self) -> list[Letter]:
        """Letter-by-letter spelling, one Letter per unit of length."""
        out: list[Letter] = []
        for s in self.syllables:
            sign = 1 if s.exponent > 0 else -1
            out.extend(Letter(s.index, sign) for _ in range(abs(s.exponent)))
        return out


def succession_allowed(n: int, a: int, b: int) -> bool:
    """May syllable index b directly follow index a in a normal form on n columns?"""
    if a == 1:
        return 2 <= b <= n
    if a == n:
        return b == n - 1
    return b == a - 1 or a < b <= n


def validate_normal_word(word: NormalWord) -> None:
    """Raise ValueError unless the word satisfies all normal-form invariants."""
    n = word.n
    if n < 1:
        raise ValueError("alphabet size must be >= 1")
    prev = None
    for s in word.syllables:
        if not 1 <= s.index <= n:
            raise ValueError(f"syllable index {s.index} out of range 1..{n}")
        if s.exponent == 0:
            raise ValueError("syllable exponent must be nonzero")
        if prev is not None and not succession_allowed(n, prev, s.index):
            raise ValueError(f"index {s.index} may not follow {prev} (n={n})")
        prev = s.index


@dataclass(frozen=True)
class ColoredHeap:
    """
    Immutable heap of colored cells in an n-column strip.

    columns[i] is the stack of cells of column i+1 in ascending level
    order. Levels are stored explicitly (not inferred from stack
    position) so neighbor comparisons are O(1) per column. The empty
    heap is the group identity.
    """

    n: int
    mode: str = GROUP
    columns: tuple[tuple[Cell, ...], ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if not self.columns:
            object.__setattr__(self, "columns", ((),) * self.n)
        elif len(self.columns) != self.n:
            raise ValueError("columns length must equal n")

    @property
    def length(self) -> int:
        """Cell count = reduced word length K(w)."""
        return sum(len(col) for col in self.columns)

    @property
    def is_empty(self) -> bool:
        return all(not col for col in self.columns)

    def top_level(self, i: int) -> int:
        """Level of the top cell of column i (1-based); 0 if empty."""
        col = self.columns[i - 1]
        return col[-1][0] if col else 0

    def top_color(self, i: int) -> int:
        """Color of the top cell of column i; 0 if the column is empty."""
        col = self.columns[i - 1]
        return col[-1][1] if col else 0


def empty_heap(n: int, mode: str = GROUP) -> ColoredHeap:
    return ColoredHeap(n, mode)


def push_letter(heap: ColoredHeap, letter: Letter) -> ColoredHeap:
    """
    Heap of w * f_i^s given the heap of w.

    The arriving cell falls to drop level 1 + max(top of i-1, i, i+1).
    Group mode cancels when the same-column top cell sits exactly at
    drop level - 1 (equivalently: it is the unique maximum of the
    neighborhood, hence in the roof) and has color -s. The cell count
    changes by exactly +1 or -1.
    """
    i, s = letter.index, letter.sign
    n = heap.n
    if not 1 <= i <= n:
        raise ValueError(f"letter index {i} out of range 1..{n}")
    if s not in (1, -1):
        raise ValueError("letter sign must be +1 or -1")
    if heap.mode == SEMIGROUP and s != 1:
        raise ValueError("semigroup heaps accept only positive letters")

    cols = heap.columns
    col = cols[i - 1]
    mid = col[-1][0] if col else 0
    left = cols[i - 2][-1][0] if i >= 2 and cols[i - 2] else 0
    right = cols[i][-1][0] if i <= n - 1 and cols[i] else 0
    drop = 1 + max(left, mid, right)

    if heap.mode == GROUP and col and mid == drop - 1 and col[-1][1] == -s:
        new_col = col[:-1]
    else:
        new_col = col + ((drop, s),)
    return ColoredHeap(n, heap.mode, cols[: i - 1] + (new_col,) + cols[i:])


def heap_from_word(letters, n: int, mode: str = GROUP) -> ColoredHeap:
    """
    Left fold of push_letter over a letter sequence.

    Accepts Letter values or bare (index, sign) pairs. The result is
    invariant under swapping adjacent input letters whose indices
    differ by 2 or more.
    """
    heap = empty_heap(n, mode)
    for item in letters:
        if not isinstance(item, Letter):
            item = Letter(item[0], item[1])
        heap = push_letter(heap, item)
    return heap


def roof_of(heap: ColoredHeap) -> "RoofSet":
    """
    Columns whose top cell is removable in one step.

    Column i is marked iff it is nonempty and its top level is >= the
    top levels of columns i-1 and i+1; the mark carries the top cell's
    color, which is the sign whose inverse letter performs the removal.
    """
    n = heap.n
    cols = heap.columns
    tops = [col[-1][0] if col else 0 for col in cols]
    marks = []
    for i in range(n):
        t = tops[i]
        if t == 0:
            marks.append(0)
            continue
        if (i == 0 or t >= tops[i - 1]) and (i == n - 1 or t >= tops[i + 1]):
            marks.append(cols[i][-1][1])
        else:
            marks.append(0)
    return RoofSet(n, tuple(marks))


@dataclass(frozen=True)
class RoofSet:
    """Per-column roof indicator; marks[i] is the top color of column i+1 or 0."""

    n: int
    marks: tuple[int, ...]

    @property
    def size(self) -> int:
        return sum(1 for m in self.marks if m)

    def columns(self) -> tuple[int, ...]:
        """1-based marked column indices, ascending."""
        return tuple(i + 1 for i, m in enumerate(self.marks) if m)

    def __contains__(self, column: int) -> bool:
        return 1 <= column <= self.n and self.marks[column - 1] != 0


def normal_form_readout(heap: ColoredHeap) -> NormalWord:
    """
    The unique normal form of the heap's element.

    Cells are emitted greedily: among all cells that are currently
    lowest in their own column and strictly below the lowest remaining
    cell of each adjacent column, take the one in the left-most column.
    Consecutive emissions from one column are vertically touching,
    hence share a color, and merge into a syllable. The output spells
    a word whose heap is the input; ties cannot arise because adjacent
    columns never hold cells at equal levels.
    """
    n = heap.n
    pending = heap.columns
    ptr = [0] * n
    remaining = heap.length
    runs: list[list[int]] = []  # [index, signed exponent]

    def lowest(j: int) -> int | None:
        return pending[j][ptr[j]][0] if ptr[j] < len(pending[j]) else None

    while remaining:
        for i in range(n):
            lvl = lowest(i)
            if lvl is None:
                continue
            lo_left = lowest(i - 1) if i >= 1 else None
            lo_right = lowest(i + 1) if i < n - 1 else None
            if (lo_left is None or lvl < lo_left) and (lo_right is None or lvl < lo_right):
                color = pending[i][ptr[i]][1]
                if runs and runs[-1][0] == i + 1:
                    runs[-1][1] += color
                else:
                    runs.append([i + 1, color])
                ptr[i] += 1
                remaining -= 1
                break
        else:
            raise ValueError("heap has no emittable cell; support invariant broken")

    word = NormalWord(tuple(Syllable(i, e) for i, e in runs), n)
    validate_normal_word(word)
    return word


def canonical_key(heap: ColoredHeap) -> bytes:
    """
    Injective byte serialization of the heap.

    Layout: u32 little-endian n; then per column in ascending index, a
    u32 cell count followed by (u32 level, one color byte) per cell in
    ascending level order. Color bytes: 0x01 for +1, 0xFF for -1. Equal
    group elements produce equal keys and conversely.
    """
    pack = _U32.pack
    parts = [pack(heap.n)]
    for col in heap.columns:
        parts.append(pack(len(col)))
        for level, color in col:
            parts.append(pack(level))
            parts.append(b"\x01" if color == 1 else b"\xff")
    return b"".join(parts)


def validate_heap(heap: ColoredHeap) -> None:
    """
    Raise ValueError unless the heap satisfies every structural invariant.

    Checked: strictly ascending levels per column; no level shared by
    adjacent columns; a supporting cell one level below every cell
    above level 1 (which also forces drop levels to be minimal); equal
    colors on vertically touching cells; positive colors only in
    semigroup mode.
    """
    n = heap.n
    cols = heap.columns
    levels = [set() for _ in range(n)]
    for i, col in enumerate(cols):
        prev_level = 0
        prev_color = 0
        for level, color in col:
            if color not in (1, -1):
                raise ValueError(f"column {i + 1}: color {color} invalid")
            if heap.mode == SEMIGROUP and color != 1:
                raise ValueError(f"column {i + 1}: negative color in semigroup mode")
            if level <= prev_level:
                raise ValueError(f"column {i + 1}: levels not strictly ascending")
            if level == prev_level + 1 and prev_color and color != prev_color:
                raise ValueError(f"column {i + 1}: touching cells of unequal color")
            levels[i].add(level)
            prev_level, prev_color = level, color
    for i in range(n - 1):
        shared = levels[i] & levels[i + 1]
        if shared:
            raise ValueError(f"columns {i + 1},{i + 2} share level {min(shared)}")
    for i, col in enumerate(cols):
        for level, _ in col:
            if level == 1:
                continue
            below = level - 1
            supported = any(
                below in levels[j] for j in range(max(0, i - 1), min(n, i + 2))
            )
            if not supported:
                raise ValueError(
                    f"column {i + 1}: cell at level {level} has no support"
                )
