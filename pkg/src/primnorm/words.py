"""Free-group word algebra: reduction, cyclic canonical forms, abelianization.

Letters are nonzero signed integers: ``+k`` is the generator with index
``k - 1`` and ``-k`` is its inverse.  In text form the generators are
``a`` through ``z`` and capital letters denote inverses, so ``abAB`` is
the commutator of the first two generators.  All word values are
immutable and freely reduced by construction.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence


class WordError(ValueError):
    """Base error for malformed words or incompatible operands."""


class ParseError(WordError):
    """Word text does not conform to the grammar."""


class RankError(WordError):
    """A letter lies outside the rank, or operand ranks differ."""


def gen(index: int, sign: int = 1) -> int:
    """Letter for the generator `index` (0-based) with the given sign."""
    if sign not in (1, -1):
        raise WordError(f"sign must be +1 or -1, got {sign!r}")
    if index < 0:
        raise WordError(f"generator index must be >= 0, got {index}")
    return sign * (index + 1)


def index_of(letter: int) -> int:
    return abs(letter) - 1


def sign_of(letter: int) -> int:
    return 1 if letter > 0 else -1


def letter_key(letter: int) -> tuple[int, int]:
    """Sort key: index ascending, positive before inverse."""
    return (abs(letter), 0 if letter > 0 else 1)


def letter_text(letter: int) -> str:
    idx = abs(letter) - 1
    if not 0 <= idx < 26:
        raise WordError(f"letter {letter} has no text form (index beyond z)")
    ch = chr(ord("a") + idx)
    return ch if letter > 0 else ch.upper()


def _check_letters(rank: int, letters: Sequence[int]) -> None:
    if rank < 1:
        raise RankError(f"rank must be >= 1, got {rank}")
    for v in letters:
        if v == 0 or abs(v) > rank:
            raise RankError(f"letter {v} out of range for rank {rank}")


def _reduce_letters(letters: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for v in letters:
        if out and out[-1] == -v:
            out.pop()
        else:
            out.append(v)
    return tuple(out)


@dataclass(frozen=True, slots=True)
class Word:
    """A freely reduced word in the free group of the given rank."""

    rank: int
    letters: tuple[int, ...]

    def __post_init__(self) -> None:
        _check_letters(self.rank, self.letters)
        for i in range(len(self.letters) - 1):
            if self.letters[i] == -self.letters[i + 1]:
                raise WordError(
                    f"letters not freely reduced at position {i}; "
                    "use free_reduce or Word.make"
                )

    @classmethod
    def make(cls, rank: int, letters: Iterable[int]) -> "Word":
        """Build a word, freely reducing the given letters."""
        seq = tuple(letters)
        _check_letters(rank, seq)
        return cls(rank, _reduce_letters(seq))

    @classmethod
    def identity(cls, rank: int) -> "Word":
        return cls(rank, ())

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return word_to_text(self)

    def is_identity(self) -> bool:
        return not self.letters


@dataclass(frozen=True, slots=True)
class CyclicWord:
    """A cyclically reduced word in canonical (least) rotation.

    Values of this type represent conjugacy classes: two words are
    conjugate iff their cyclic reductions are the same ``CyclicWord``.
    Construct via :func:`cyclic_reduce` or :func:`canonical_rotation`.
    """

    rank: int
    letters: tuple[int, ...]

    def __post_init__(self) -> None:
        _check_letters(self.rank, self.letters)
        n = len(self.letters)
        for i in range(n):
            if n > 1 and self.letters[i] == -self.letters[(i + 1) % n]:
                raise WordError("letters not cyclically reduced")
        if n:
            r = _least_rotation([letter_key(v) for v in self.letters])
            if self.letters[r:] + self.letters[:r] != self.letters:
                raise WordError("letters are not in canonical rotation")

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return word_to_text(self.as_word())

    def as_word(self) -> Word:
        return Word(self.rank, self.letters)


def _least_rotation(seq: list) -> int:
    """Index of the lexicographically least rotation (Booth's algorithm)."""
    s = seq + seq
    n = len(s)
    fail = [-1] * n
    k = 0
    for j in range(1, n):
        sj = s[j]
        i = fail[j - k - 1]
        while i != -1 and sj != s[k + i + 1]:
            if sj < s[k + i + 1]:
                k = j - i - 1
            i = fail[i]
        if sj != s[k + i + 1]:
            if sj < s[k]:
                k = j
            fail[j - k] = -1
        else:
            fail[j - k] = i + 1
    return k


def parse_word(text: str, rank: int) -> Word:
    """Parse word text (``a``-``z``, capitals for inverses, optional ``^k``).

    Whitespace is ignored.  Raises :class:`ParseError` on bad syntax and
    :class:`RankError` when a letter lies beyond the rank.
    """
    if rank < 1:
        raise RankError(f"rank must be >= 1, got {rank}")
    stripped = "".join(text.split())
    letters: list[int] = []
    i = 0
    n = len(stripped)
    while i < n:
        ch = stripped[i]
        if ch.isalpha() and ch.isascii():
            letter = gen(ord(ch.lower()) - ord("a"), 1 if ch.islower() else -1)
            if abs(letter) > rank:
                raise RankError(f"letter {ch!r} beyond rank {rank}")
            i += 1
            count = 1
            if i < n and stripped[i] == "^":
                i += 1
                j = i
                while j < n and stripped[j].isdigit():
                    j += 1
                if j == i:
                    raise ParseError(f"malformed exponent after {ch!r}")
                count = int(stripped[i:j])
                if count < 1:
                    raise ParseError(f"exponent must be positive, got {count}")
                i = j
            letters.extend([letter] * count)
        elif ch == "^":
            raise ParseError("exponent without a preceding letter")
        else:
            raise ParseError(f"invalid character {ch!r}")
    return Word(rank, _reduce_letters(letters))


def word_to_text(w: Word | CyclicWord) -> str:
    """Text form of a word, collapsing runs to ``^k``."""
    parts: list[str] = []
    letters = w.letters
    i = 0
    while i < len(letters):
        j = i
        while j < len(letters) and letters[j] == letters[i]:
            j += 1
        parts.append(letter_text(letters[i]))
        if j - i > 1:
            parts.append(f"^{j - i}")
        i = j
    return "".join(parts)


def free_reduce(rank: int, letters: Iterable[int]) -> Word:
    """Freely reduce a letter sequence into a word."""
    return Word.make(rank, letters)


def invert(w: Word) -> Word:
    return Word(w.rank, tuple(-v for v in reversed(w.letters)))


def concat(u: Word, v: Word) -> Word:
    if u.rank != v.rank:
        raise RankError(f"rank mismatch: {u.rank} vs {v.rank}")
    return Word(u.rank, _reduce_letters(u.letters + v.letters))


def power(w: Word, n: int) -> Word:
    if n < 0:
        return power(invert(w), -n)
    out = Word.identity(w.rank)
    for _ in range(n):
        out = concat(out, w)
    return out


def conjugate(z: Word, w: Word) -> Word:
    """The word ``z w z^-1``."""
    return concat(concat(z, w), invert(z))


def canonical_rotation(rank: int, letters: Iterable[int]) -> CyclicWord:
    """Canonical rotation of a cyclically reduced letter sequence.

    All rotations of the input map to the same value.  Raises
    :class:`WordError` if the input is not cyclically reduced.
    """
    seq = tuple(letters)
    _check_letters(rank, seq)
    n = len(seq)
    for i in range(n):
        if n > 1 and seq[i] == -seq[(i + 1) % n]:
            raise WordError("input is not cyclically reduced")
    if not seq:
        return CyclicWord(rank, ())
    r = _least_rotation([letter_key(v) for v in seq])
    return CyclicWord(rank, seq[r:] + seq[:r])


def cyclic_reduce(w: Word) -> tuple[CyclicWord, Word]:
    """Cyclic reduction ``(c, z)`` with ``w == z * c * z^-1``.

    ``c`` is the canonical rotation of the cyclically reduced core, so it
    identifies the conjugacy class of ``w``.
    """
    letters = w.letters
    lo, hi = 0, len(letters)
    while hi - lo >= 2 and letters[lo] == -letters[hi - 1]:
        lo += 1
        hi -= 1
    core = letters[lo:hi]
    if not core:
        return CyclicWord(w.rank, ()), Word(w.rank, letters[:lo])
    r = _least_rotation([letter_key(v) for v in core])
    canonical = core[r:] + core[:r]
    conjugator = letters[:lo] + core[:r]
    return CyclicWord(w.rank, canonical), Word(w.rank, conjugator)


def abelianize(w: Word | CyclicWord) -> tuple[int, ...]:
    """Exponent-sum vector of the word, one entry per generator."""
    sums = [0] * w.rank
    for v in w.letters:
        sums[abs(v) - 1] += 1 if v > 0 else -1
    return tuple(sums)


def random_word(rank: int, length: int, rng: random.Random) -> Word:
    """Uniformly random freely reduced word of exactly `length` letters."""
    alphabet = [g for k in range(1, rank + 1) for g in (k, -k)]
    letters: list[int] = []
    for _ in range(length):
        choices = [v for v in alphabet if not letters or v != -letters[-1]]
        letters.append(rng.choice(choices))
    return Word(rank, tuple(letters))


def words_to_json(w: Word) -> dict:
    return {"rank": w.rank, "letters": [[index_of(v), sign_of(v)] for v in w.letters]}


def word_from_json(data: dict) -> Word:
    letters = [gen(idx, sign) for idx, sign in data["letters"]]
    return Word.make(int(data["rank"]), letters)
