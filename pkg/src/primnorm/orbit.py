"""Whitehead orbit machinery: length reduction, level sets, orbit equality.

Minimal-length representatives are found by greedy steepest descent over
all multiplier moves; the level set of minimal conjugacy classes is then
closed up by breadth-first search over permutation moves and
length-preserving multiplier moves.  Both steps rest on the fact that a
non-minimal cyclic word always admits a strictly shortening multiplier
move, and that minimal classes in one orbit are connected by
length-preserving elementary moves.
"""

from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping, Optional

from . import whitehead_graph
from .autos import (
    Automorphism,
    ElementaryMove,
    apply_move,
    conjugation_moves,
    enumerate_permutation_moves,
    enumerate_whitehead_moves,
    invert as invert_auto,
)
from .words import (
    CyclicWord,
    RankError,
    Word,
    WordError,
    abelianize,
    concat,
    cyclic_reduce,
    invert as invert_word,
)

DEFAULT_CAP = 200_000


class CapExceededError(RuntimeError):
    """Level-set enumeration hit the state cap; the answer is unknown."""

    def __init__(self, cap: int, reached: int):
        super().__init__(f"level set exceeded cap {cap} (reached {reached} classes)")
        self.cap = cap
        self.reached = reached


class InconsistencyError(RuntimeError):
    """An internal invariant failed; indicates a bug, not a bad input."""


@dataclass(frozen=True)
class ReductionTrace:
    """Greedy length reduction from ``start`` down to a minimal class.

    Each step strictly shortens the cyclic word; when the trace ends, no
    multiplier move shortens ``final``, which certifies that ``final``
    has the minimal length in its automorphic orbit.
    """

    start: CyclicWord
    steps: tuple[tuple[ElementaryMove, CyclicWord], ...]
    final: CyclicWord

    def automorphism(self) -> Automorphism:
        return Automorphism.from_moves(self.start.rank, tuple(m for m, _ in self.steps))


@dataclass(frozen=True)
class LevelSet:
    """All minimal-length conjugacy classes in one automorphic orbit.

    ``edges`` holds every length-preserving elementary transition between
    classes (identity moves are skipped); ``tree`` maps each class to the
    move sequence of its breadth-first discovery path from ``basepoint``.
    """

    basepoint: CyclicWord
    classes: frozenset[CyclicWord]
    edges: tuple[tuple[CyclicWord, ElementaryMove, CyclicWord], ...]
    tree: Mapping[CyclicWord, tuple[ElementaryMove, ...]] = field(hash=False)


@dataclass(frozen=True)
class SeparabilityEvidence:
    minimal: CyclicWord
    graph: whitehead_graph.WhiteheadGraph
    connected: bool
    cut_letters: frozenset[int]


@lru_cache(maxsize=None)
def _level_moves(rank: int) -> tuple[ElementaryMove, ...]:
    perms = tuple(m for m in enumerate_permutation_moves(rank) if not m.is_identity())
    if rank < 2:
        return perms
    whs = tuple(m for m in enumerate_whitehead_moves(rank) if not m.is_identity())
    return perms + whs


def _move_class(move: ElementaryMove, c: CyclicWord) -> CyclicWord:
    image, _ = cyclic_reduce(apply_move(move, c.as_word()))
    return image


def reduce_to_minimal(c: CyclicWord) -> ReductionTrace:
    """Shorten ``c`` greedily until no multiplier move reduces it further.

    Among all moves the one yielding the shortest cyclic reduction is
    applied (first in enumeration order on ties).  Rank-1 words are
    already minimal.
    """
    steps: list[tuple[ElementaryMove, CyclicWord]] = []
    current = c
    if c.rank >= 2:
        moves = enumerate_whitehead_moves(c.rank)
        while True:
            best: Optional[tuple[ElementaryMove, CyclicWord]] = None
            for move in moves:
                image = _move_class(move, current)
                if len(image) < len(current) and (best is None or len(image) < len(best[1])):
                    best = (move, image)
            if best is None:
                break
            steps.append(best)
            current = best[1]
    return ReductionTrace(c, tuple(steps), current)


def minimal_level_set(c: CyclicWord, cap: int = DEFAULT_CAP) -> LevelSet:
    """Breadth-first closure of the minimal class of ``c`` under
    permutation moves and length-preserving multiplier moves."""
    if cap < 1:
        raise WordError(f"cap must be >= 1, got {cap}")
    base = reduce_to_minimal(c).final
    m = len(base)
    moves = _level_moves(base.rank)
    classes: set[CyclicWord] = {base}
    tree: dict[CyclicWord, tuple[ElementaryMove, ...]] = {base: ()}
    edges: list[tuple[CyclicWord, ElementaryMove, CyclicWord]] = []
    queue: deque[CyclicWord] = deque([base])
    while queue:
        state = queue.popleft()
        for move in moves:
            target = _move_class(move, state)
            if len(target) != m:
                continue
            edges.append((state, move, target))
            if target not in classes:
                if len(classes) >= cap:
                    raise CapExceededError(cap, len(classes) + 1)
                classes.add(target)
                tree[target] = tree[state] + (move,)
                queue.append(target)
    return LevelSet(base, frozenset(classes), tuple(edges), tree)


def _gcd_vector(w: Word) -> int:
    return math.gcd(*abelianize(w)) if w.rank > 1 else abs(abelianize(w)[0])


def orbit_equal(
    u: Word, v: Word, cap: int = DEFAULT_CAP
) -> tuple[bool, Optional[Automorphism]]:
    """Decide whether some automorphism maps ``u`` to ``v``.

    On success the witness satisfies ``witness.apply(u) == v`` exactly
    (a conjugation is folded in).  Inner automorphisms are automorphisms,
    so the decision reduces to conjugacy classes: the minimal level sets
    of the two inputs either coincide or are disjoint.
    """
    if u.rank != v.rank:
        raise RankError(f"rank mismatch: {u.rank} vs {v.rank}")
    rank = u.rank
    if rank == 1:
        if u == v:
            return True, Automorphism.identity(1)
        if u == invert_word(v):
            from .autos import PermutationMove

            return True, Automorphism.from_move(PermutationMove(1, (-1,)))
        return False, None
    cu, _ = cyclic_reduce(u)
    cv, _ = cyclic_reduce(v)
    trace_u = reduce_to_minimal(cu)
    trace_v = reduce_to_minimal(cv)
    if len(trace_u.final) != len(trace_v.final):
        return False, None
    if _gcd_vector(u) != _gcd_vector(v):
        return False, None
    if trace_u.final == trace_v.final:
        path: tuple[ElementaryMove, ...] = ()
    else:
        level = minimal_level_set(trace_u.final, cap)
        if trace_v.final not in level.classes:
            return False, None
        path = level.tree[trace_v.final]
    moves_u = tuple(m for m, _ in trace_u.steps)
    moves_v_inv = tuple(m.inverse() for m, _ in reversed(trace_v.steps))
    core = Automorphism.from_moves(rank, moves_u + path + moves_v_inv)
    image = core.apply(u)
    c_img, p = cyclic_reduce(image)
    c_v, q = cyclic_reduce(v)
    if c_img != c_v:
        raise InconsistencyError("witness does not land in the target class")
    z = concat(q, invert_word(p))
    witness = Automorphism.from_moves(rank, core.moves + conjugation_moves(rank, z))
    if witness.apply(u) != v:
        raise InconsistencyError("witness conjugation fix-up failed")
    return True, witness


def is_primitive(w: Word, cap: int | None = None) -> bool:
    """True when ``w`` belongs to some free basis.

    Primitives form a single automorphic orbit, so ``w`` is primitive
    exactly when its minimal cyclic length is 1.  ``cap`` is accepted for
    interface symmetry but unused: the reduction terminates on its own.
    """
    del cap
    if w.is_identity():
        raise WordError("the identity is not primitive; nonempty word required")
    if w.rank == 1:
        return w.letters in ((1,), (-1,))
    c, _ = cyclic_reduce(w)
    return len(reduce_to_minimal(c).final) == 1


def is_separable(
    w: Word, cap: int | None = None
) -> tuple[bool, SeparabilityEvidence]:
    """Decide whether ``w`` conjugates into a proper free factor.

    The minimal form ``y`` of ``w`` is computed; ``w`` is separable iff
    the Whitehead graph of ``y`` is disconnected.  At minimal length a
    connected graph cannot have a cut-vertex (a cut-vertex would yield a
    shortening move); that combination raises :class:`InconsistencyError`.
    """
    del cap
    if w.is_identity():
        raise WordError("separability is undefined for the identity")
    c, _ = cyclic_reduce(w)
    if w.rank == 1:
        g = whitehead_graph.build(c)
        ev = SeparabilityEvidence(
            c, g, whitehead_graph.is_connected(g), whitehead_graph.cut_vertices(g)
        )
        return False, ev
    y = reduce_to_minimal(c).final
    g = whitehead_graph.build(y)
    connected = whitehead_graph.is_connected(g)
    cuts = whitehead_graph.cut_vertices(g)
    ev = SeparabilityEvidence(y, g, connected, cuts)
    if connected and cuts:
        raise InconsistencyError(
            "minimal word has a connected graph with a cut-vertex; "
            "a shortening move should have existed"
        )
    return (not connected), ev


def random_primitive(rank: int, steps: int, seed: int) -> Word:
    """Image of the first generator under `steps` seeded random elementary
    moves; primitive by construction and reproducible per seed."""
    if steps < 0:
        raise WordError(f"steps must be >= 0, got {steps}")
    rng = random.Random(seed)
    pool = _random_move_pool(rank)
    w = Word(rank, (1,))
    for _ in range(steps):
        w = apply_move(rng.choice(pool), w)
    return w


@lru_cache(maxsize=None)
def _random_move_pool(rank: int) -> tuple[ElementaryMove, ...]:
    perms = enumerate_permutation_moves(rank)
    if rank < 2:
        return perms
    return perms + enumerate_whitehead_moves(rank)
