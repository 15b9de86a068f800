"""Fixed-length binary words packed into ints, plus deletion primitives.

A word x_1..x_n (1 <= n <= 24) is stored as the integer whose binary
rendering, zero-padded to n digits, equals the word read left to right:
bit n-i of the int holds x_i. Canonical order over equal-length words is
therefore plain integer order.

The Word/WordSet classes are the public face; the module also exposes the
raw int helpers (delete_position, surface_values, insertion_values) that
the graph, search, and constraint generators use in their hot loops.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

MAX_LEN = 24


def _check_length(n: int) -> None:
    if not isinstance(n, int) or isinstance(n, bool):
        raise ValueError(f"word length must be an int, got {n!r}")
    if not 1 <= n <= MAX_LEN:
        raise ValueError(f"word length must be in 1..{MAX_LEN}, got {n}")


@dataclass(frozen=True, order=True, slots=True)
class Word:
    """One binary word; position 1 is the leftmost symbol."""

    n: int
    value: int

    def __post_init__(self) -> None:
        _check_length(self.n)
        if not 0 <= self.value < (1 << self.n):
            raise ValueError(
                f"value {self.value} does not fit in {self.n} bits"
            )

    @classmethod
    def parse(cls, text: str) -> "Word":
        """Build a word from a string of '0' and '1' characters."""
        if not text or any(ch not in "01" for ch in text):
            raise ValueError(f"not a binary word: {text!r}")
        return cls(len(text), int(text, 2))

    def bit(self, i: int) -> int:
        """Symbol at 1-based position i, counted from the left."""
        if not 1 <= i <= self.n:
            raise ValueError(f"position {i} out of range 1..{self.n}")
        return (self.value >> (self.n - i)) & 1

    def __str__(self) -> str:
        return format(self.value, f"0{self.n}b")

    def __repr__(self) -> str:
        return f"Word.parse({str(self)!r})"


class WordSet:
    """An immutable set of words sharing one length, iterated canonically."""

    __slots__ = ("n", "_sorted", "_members")

    def __init__(self, n: int, values: Iterable[int | Word] = ()):
        _check_length(n)
        vals = set()
        for v in values:
            if isinstance(v, Word):
                if v.n != n:
                    raise ValueError(
                        f"word {v} has length {v.n}, expected {n}"
                    )
                vals.add(v.value)
            else:
                if not 0 <= v < (1 << n):
                    raise ValueError(f"value {v} does not fit in {n} bits")
                vals.add(v)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "_sorted", tuple(sorted(vals)))
        object.__setattr__(self, "_members", frozenset(vals))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("WordSet is immutable")

    @classmethod
    def from_words(cls, words: Iterable[Word]) -> "WordSet":
        ws = list(words)
        if not ws:
            raise ValueError("cannot infer length from an empty iterable")
        return cls(ws[0].n, ws)

    @property
    def values(self) -> tuple[int, ...]:
        """Member values in ascending order."""
        return self._sorted

    def has_value(self, value: int) -> bool:
        return value in self._members

    def __len__(self) -> int:
        return len(self._sorted)

    def __iter__(self) -> Iterator[Word]:
        n = self.n
        return (Word(n, v) for v in self._sorted)

    def __contains__(self, item: object) -> bool:
        if isinstance(item, Word):
            return item.n == self.n and item.value in self._members
        return False

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WordSet):
            return NotImplemented
        return self.n == other.n and self._sorted == other._sorted

    def __hash__(self) -> int:
        return hash((self.n, self._sorted))

    def __repr__(self) -> str:
        if len(self._sorted) <= 8:
            body = ", ".join(format(v, f"0{self.n}b") for v in self._sorted)
            return f"WordSet(n={self.n}, {{{body}}})"
        return f"WordSet(n={self.n}, size={len(self._sorted)})"


def hamming_weight(x: Word) -> int:
    """Number of 1 symbols in x."""
    return x.value.bit_count()


def runs_of(value: int, n: int, b: int) -> int:
    """Number of maximal runs of symbol b in the n-bit packed value."""
    if b == 0:
        value = ~value & ((1 << n) - 1)
    elif b != 1:
        raise ValueError(f"symbol must be 0 or 1, got {b}")
    # each run contributes exactly one bit that has a 0 above it
    return (value & ~(value >> 1)).bit_count()


def run_count(x: Word, b: int) -> int:
    """Number of maximal runs of symbol b in x."""
    return runs_of(x.value, x.n, b)


def levenshtein_id(x: Word, y: Word) -> int:
    """Insertion/deletion edit distance: n + m - 2 * lcs(x, y)."""
    a, b = str(x), str(y)
    if len(a) < len(b):
        a, b = b, a
    prev = [0] * (len(b) + 1)
    for ca in a:
        cur = [0]
        for j, cb in enumerate(b, start=1):
            if ca == cb:
                cur.append(prev[j - 1] + 1)
            else:
                cur.append(max(prev[j], cur[j - 1]))
        prev = cur
    return len(a) + len(b) - 2 * prev[-1]


def delete_position(value: int, n: int, i: int) -> int:
    """Packed value with 1-based position i removed (result has n-1 bits)."""
    k = n - i
    return ((value >> (k + 1)) << k) | (value & ((1 << k) - 1))


def surface_values(n: int, value: int) -> set[int]:
    """Distinct packed values reachable from value by one deletion."""
    return {delete_position(value, n, i) for i in range(1, n + 1)}


def insertion_values(n: int, value: int) -> set[int]:
    """Distinct packed values reachable from an n-bit value by one insertion."""
    out = set()
    for j in range(1, n + 2):  # insertion lands at position j of the result
        k = n - j + 1
        high = value >> k
        low = value & ((1 << k) - 1)
        for b in (0, 1):
            out.add((((high << 1) | b) << k) | low)
    return out


def deletion_surface(x: Word, t: int = 1) -> WordSet:
    """All distinct words obtained from x by deleting exactly t symbols.

    Iterates single deletions t times with dedup at every level; the radius-1
    surface of x has run_count(x, 0) + run_count(x, 1) members.
    """
    if not isinstance(t, int) or isinstance(t, bool) or t < 1:
        raise ValueError(f"deletion count must be a positive int, got {t!r}")
    if t >= x.n:
        raise ValueError(f"cannot delete {t} symbols from a length-{x.n} word")
    level = {x.value}
    n = x.n
    for _ in range(t):
        level = {d for v in level for d in surface_values(n, v)}
        n -= 1
    return WordSet(n, level)


def concat(parts: Iterable[Word]) -> Word:
    """Concatenate words left to right into one word."""
    parts = list(parts)
    if not parts:
        raise ValueError("concat needs at least one word")
    n = 0
    value = 0
    for p in parts:
        n += p.n
        if n > MAX_LEN:
            raise ValueError(f"concatenated length {n} exceeds {MAX_LEN}")
        value = (value << p.n) | p.value
    return Word(n, value)


def complement(x: Word) -> Word:
    """Flip every symbol of x."""
    return Word(x.n, x.value ^ ((1 << x.n) - 1))


def enumerate_words(n: int) -> Iterator[Word]:
    """All words of length n in canonical (ascending value) order."""
    _check_length(n)
    return (Word(n, v) for v in range(1 << n))
