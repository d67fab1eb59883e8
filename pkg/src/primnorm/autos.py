"""Automorphisms of free groups built from elementary moves.

Two kinds of elementary move are provided: signed permutations of the
generators, and multiplier moves that fix one letter ``a`` and send each
other generator ``x`` to one of ``x``, ``a x``, ``x a^-1``, ``a x a^-1``.
Automorphisms are only constructible as compositions of these moves,
which keeps every value invertible without ever deciding whether an
arbitrary endomorphism is invertible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence, Union

from .words import (
    RankError,
    Word,
    WordError,
    abelianize,
    gen,
    letter_text,
    invert as invert_word,
)

ACTIONS = ("fix", "left", "right", "conjugate")


@dataclass(frozen=True)
class PermutationMove:
    """Signed permutation of the generators."""

    rank: int
    images: tuple[int, ...]  # images[i] = letter image of generator i+1

    def __post_init__(self) -> None:
        if len(self.images) != self.rank:
            raise WordError("permutation must list one image per generator")
        if sorted(abs(v) for v in self.images) != list(range(1, self.rank + 1)):
            raise WordError("images must be a signed permutation of the generators")

    def letter_image(self, letter: int) -> tuple[int, ...]:
        img = self.images[abs(letter) - 1]
        return (img,) if letter > 0 else (-img,)

    def is_identity(self) -> bool:
        return self.images == tuple(range(1, self.rank + 1))

    def inverse(self) -> "PermutationMove":
        inv = [0] * self.rank
        for i, img in enumerate(self.images):
            inv[abs(img) - 1] = (i + 1) if img > 0 else -(i + 1)
        return PermutationMove(self.rank, tuple(inv))

    def describe(self) -> str:
        pairs = ", ".join(
            f"{letter_text(i + 1)}->{letter_text(img)}" for i, img in enumerate(self.images)
        )
        return f"perm({pairs})"


@dataclass(frozen=True)
class WhiteheadMove:
    """Multiplier move: fixes `multiplier`, acts on the other generators.

    ``actions[i]`` applies to generator ``i+1``; the multiplier's own
    slot must be ``fix``.
    """

    rank: int
    multiplier: int
    actions: tuple[str, ...]

    def __post_init__(self) -> None:
        if self.rank < 2:
            raise WordError("multiplier moves need rank >= 2")
        if self.multiplier == 0 or abs(self.multiplier) > self.rank:
            raise RankError(f"multiplier {self.multiplier} out of range")
        if len(self.actions) != self.rank:
            raise WordError("one action per generator required")
        for act in self.actions:
            if act not in ACTIONS:
                raise WordError(f"unknown action {act!r}")
        if self.actions[abs(self.multiplier) - 1] != "fix":
            raise WordError("the multiplier's own generator must be fixed")

    def letter_image(self, letter: int) -> tuple[int, ...]:
        a = self.multiplier
        x = abs(letter)
        act = self.actions[x - 1]
        if act == "fix":
            img = (x,)
        elif act == "left":
            img = (a, x)
        elif act == "right":
            img = (x, -a)
        else:
            img = (a, x, -a)
        if letter > 0:
            return img
        return tuple(-v for v in reversed(img))

    def is_identity(self) -> bool:
        return all(act == "fix" for act in self.actions)

    def inverse(self) -> "WhiteheadMove":
        # Same action pattern with the multiplier inverted undoes the move.
        return WhiteheadMove(self.rank, -self.multiplier, self.actions)

    def describe(self) -> str:
        pairs = ", ".join(
            f"{letter_text(i + 1)}->" + "".join(letter_text(v) for v in self.letter_image(i + 1))
            for i in range(self.rank)
        )
        return f"wh({pairs})"


ElementaryMove = Union[PermutationMove, WhiteheadMove]


def apply_move(move: ElementaryMove, w: Word) -> Word:
    if move.rank != w.rank:
        raise RankError(f"rank mismatch: move {move.rank} vs word {w.rank}")
    out: list[int] = []
    for letter in w.letters:
        for v in move.letter_image(letter):
            if out and out[-1] == -v:
                out.pop()
            else:
                out.append(v)
    return Word(w.rank, tuple(out))


@dataclass(frozen=True)
class Automorphism:
    """Automorphism given by generator images plus its elementary factorization.

    ``moves`` lists the factorization in application order: the first
    move acts first.
    """

    rank: int
    images: tuple[Word, ...]
    moves: tuple[ElementaryMove, ...]

    @classmethod
    def identity(cls, rank: int) -> "Automorphism":
        images = tuple(Word(rank, (i,)) for i in range(1, rank + 1))
        return cls(rank, images, ())

    @classmethod
    def from_moves(cls, rank: int, moves: Iterable[ElementaryMove]) -> "Automorphism":
        seq = tuple(moves)
        images = [Word(rank, (i,)) for i in range(1, rank + 1)]
        for move in seq:
            if move.rank != rank:
                raise RankError("all moves must share the automorphism rank")
            images = [apply_move(move, img) for img in images]
        return cls(rank, tuple(images), seq)

    @classmethod
    def from_move(cls, move: ElementaryMove) -> "Automorphism":
        return cls.from_moves(move.rank, (move,))

    def apply(self, w: Word) -> Word:
        if self.rank != w.rank:
            raise RankError(f"rank mismatch: {self.rank} vs {w.rank}")
        out: list[int] = []
        for letter in w.letters:
            img = self.images[abs(letter) - 1].letters
            if letter < 0:
                img = tuple(-v for v in reversed(img))
            for v in img:
                if out and out[-1] == -v:
                    out.pop()
                else:
                    out.append(v)
        return Word(w.rank, tuple(out))

    def is_identity(self) -> bool:
        return all(img.letters == (i + 1,) for i, img in enumerate(self.images))

    def __str__(self) -> str:
        return ", ".join(
            f"{letter_text(i + 1)}->{img}" for i, img in enumerate(self.images)
        )


def apply(psi: Automorphism, w: Word) -> Word:
    return psi.apply(w)


def compose(psi: Automorphism, phi: Automorphism) -> Automorphism:
    """The automorphism ``psi after phi``: ``compose(psi, phi)(w) == psi(phi(w))``."""
    if psi.rank != phi.rank:
        raise RankError(f"rank mismatch: {psi.rank} vs {phi.rank}")
    return Automorphism.from_moves(psi.rank, phi.moves + psi.moves)


def invert(psi: Automorphism) -> Automorphism:
    inv = Automorphism.from_moves(
        psi.rank, tuple(m.inverse() for m in reversed(psi.moves))
    )
    for i in range(psi.rank):
        g = Word(psi.rank, (i + 1,))
        if inv.apply(psi.apply(g)) != g:
            raise WordError("inversion post-check failed; factorization corrupt")
    return inv


def enumerate_permutation_moves(rank: int) -> tuple[PermutationMove, ...]:
    if rank < 1:
        raise RankError(f"rank must be >= 1, got {rank}")
    moves = []
    for perm in itertools.permutations(range(1, rank + 1)):
        for signs in itertools.product((1, -1), repeat=rank):
            moves.append(PermutationMove(rank, tuple(s * p for s, p in zip(signs, perm))))
    return tuple(moves)


def enumerate_whitehead_moves(rank: int) -> tuple[WhiteheadMove, ...]:
    """All multiplier moves: ``2*rank * 4**(rank-1)`` of them.

    The all-fix identity is emitted once per multiplier; callers that
    walk orbits deduplicate states, not moves.
    """
    if rank < 2:
        raise RankError("no nontrivial multiplier moves below rank 2")
    moves = []
    letters = [g for k in range(1, rank + 1) for g in (k, -k)]
    for a in letters:
        others = [i for i in range(rank) if i != abs(a) - 1]
        for combo in itertools.product(ACTIONS, repeat=rank - 1):
            actions = ["fix"] * rank
            for idx, act in zip(others, combo):
                actions[idx] = act
            moves.append(WhiteheadMove(rank, a, tuple(actions)))
    return tuple(moves)


def enumerate_permutation_autos(rank: int) -> tuple[Automorphism, ...]:
    return tuple(Automorphism.from_move(m) for m in enumerate_permutation_moves(rank))


def enumerate_whitehead_autos(rank: int) -> tuple[Automorphism, ...]:
    return tuple(Automorphism.from_move(m) for m in enumerate_whitehead_moves(rank))


def conjugation_moves(rank: int, z: Word) -> tuple[WhiteheadMove, ...]:
    """Moves composing to conjugation by ``z`` (``w -> z w z^-1``).

    Conjugation by a single letter is the multiplier move that conjugates
    every other generator; a word conjugates letter by letter.  Requires
    rank >= 2 (conjugation is trivial in rank 1).
    """
    if rank < 2:
        return ()
    moves = []
    for letter in reversed(z.letters):
        actions = tuple(
            "fix" if i == abs(letter) - 1 else "conjugate" for i in range(rank)
        )
        moves.append(WhiteheadMove(rank, letter, actions))
    return tuple(moves)


def inner_automorphism(rank: int, z: Word) -> Automorphism:
    return Automorphism.from_moves(rank, conjugation_moves(rank, z))


def abelianization_matrix(psi: Automorphism) -> tuple[tuple[int, ...], ...]:
    """Integer matrix of the induced map on the abelianization (columns are
    generator images)."""
    cols = [abelianize(img) for img in psi.images]
    return tuple(
        tuple(cols[j][i] for j in range(psi.rank)) for i in range(psi.rank)
    )


def determinant(matrix: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant (fraction-free Bareiss elimination)."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise WordError("matrix must be square")
    if n == 0:
        return 1
    a = [list(row) for row in matrix]
    sign = 1
    prev = 1
    for i in range(n - 1):
        if a[i][i] == 0:
            for r in range(i + 1, n):
                if a[r][i] != 0:
                    a[i], a[r] = a[r], a[i]
                    sign = -sign
                    break
            else:
                return 0
        for r in range(i + 1, n):
            for c in range(i + 1, n):
                a[r][c] = (a[r][c] * a[i][i] - a[r][i] * a[i][c]) // prev
        prev = a[i][i]
    return sign * a[n - 1][n - 1]


def invert_first_generator(rank: int) -> Automorphism:
    """The involution sending the first generator to its inverse."""
    images = tuple(-(1) if i == 0 else i + 1 for i in range(rank))
    return Automorphism.from_move(PermutationMove(rank, images))


@lru_cache(maxsize=None)
def f2_aut_generators() -> tuple[Automorphism, Automorphism, Automorphism]:
    """A classical generating triple of the rank-2 automorphism group:
    invert ``a``; swap ``a`` and ``b``; send ``a`` to ``ab``."""
    flip = invert_first_generator(2)
    swap = Automorphism.from_move(PermutationMove(2, (2, 1)))
    shear = Automorphism.from_move(WhiteheadMove(2, -2, ("right", "fix")))
    return (flip, swap, shear)


def move_to_json(move: ElementaryMove) -> dict:
    if isinstance(move, PermutationMove):
        return {"kind": "permutation", "rank": move.rank, "images": list(move.images)}
    return {
        "kind": "whitehead",
        "rank": move.rank,
        "multiplier": move.multiplier,
        "actions": list(move.actions),
    }


def move_from_json(data: dict) -> ElementaryMove:
    if data["kind"] == "permutation":
        return PermutationMove(int(data["rank"]), tuple(data["images"]))
    if data["kind"] == "whitehead":
        return WhiteheadMove(
            int(data["rank"]), int(data["multiplier"]), tuple(data["actions"])
        )
    raise WordError(f"unknown move kind {data.get('kind')!r}")


def automorphism_to_json(psi: Automorphism) -> dict:
    return {
        "rank": psi.rank,
        "images": [str(img) for img in psi.images],
        "factorization": [move_to_json(m) for m in psi.moves],
    }


def automorphism_from_json(data: dict) -> Automorphism:
    psi = Automorphism.from_moves(
        int(data["rank"]), tuple(move_from_json(m) for m in data["factorization"])
    )
    expected = [str(img) for img in psi.images]
    if data.get("images") and list(data["images"]) != expected:
        raise WordError("images do not match the factorization")
    return psi
