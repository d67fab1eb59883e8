"""Stabilizer graphs on minimal level sets.

The labeled graph whose vertices are the minimal-length conjugacy
classes of an orbit and whose edges are elementary moves between them
presents the stabilizer of the basepoint class: reading labels around
loops generates it.  A finite generating set comes from the fundamental
loops of a spanning tree plus the self-loops, conjugated back to the
basepoint along tree paths.
"""

from __future__ import annotations

from dataclasses import dataclass

from .autos import (
    Automorphism,
    ElementaryMove,
    abelianization_matrix,
    determinant,
    move_to_json,
)
from .orbit import DEFAULT_CAP, InconsistencyError, LevelSet, minimal_level_set
from .words import CyclicWord, cyclic_reduce, letter_key


@dataclass(frozen=True)
class McCoolGraph:
    level: LevelSet

    @property
    def basepoint(self) -> CyclicWord:
        return self.level.basepoint

    @property
    def vertices(self) -> frozenset[CyclicWord]:
        return self.level.classes

    @property
    def edges(self) -> tuple[tuple[CyclicWord, ElementaryMove, CyclicWord], ...]:
        return self.level.edges


def build_mccool_graph(c: CyclicWord, cap: int = DEFAULT_CAP) -> McCoolGraph:
    """Stabilizer graph over the minimal level set of ``c``.

    Edges carry every non-identity elementary move that preserves the
    minimal length, including self-loops (moves fixing a class).
    """
    return McCoolGraph(minimal_level_set(c, cap))


def _tree_moves(g: McCoolGraph, v: CyclicWord) -> tuple[ElementaryMove, ...]:
    return g.level.tree[v]


def loop_generators(g: McCoolGraph) -> tuple[Automorphism, ...]:
    """Generators of the stabilizer of the basepoint class.

    One generator per non-tree edge ``s --move--> t``: follow the tree to
    ``s``, apply the move, return from ``t`` along the tree.  Tree edges
    read the trivial loop and are skipped.  Every returned automorphism
    fixes the basepoint's conjugacy class (checked).
    """
    rank = g.basepoint.rank
    generators: list[Automorphism] = []
    tree = g.level.tree
    for source, move, target in g.edges:
        if tree.get(target) == tree[source] + (move,):
            continue  # the spanning-tree edge itself
        back = tuple(m.inverse() for m in reversed(_tree_moves(g, target)))
        psi = Automorphism.from_moves(rank, _tree_moves(g, source) + (move,) + back)
        image, _ = cyclic_reduce(psi.apply(g.basepoint.as_word()))
        if image != g.basepoint:
            raise InconsistencyError("loop generator does not fix the basepoint class")
        generators.append(psi)
    return tuple(generators)


def stabilizer_in_aut_plus(g: McCoolGraph) -> bool:
    """True iff every loop generator acts with determinant +1 on homology."""
    return all(
        determinant(abelianization_matrix(psi)) == 1 for psi in loop_generators(g)
    )


def _vertex_order(g: McCoolGraph) -> list[CyclicWord]:
    return sorted(g.vertices, key=lambda c: (len(c), [letter_key(v) for v in c.letters]))


def to_dot(g: McCoolGraph) -> str:
    order = _vertex_order(g)
    ids = {c: i for i, c in enumerate(order)}
    lines = ["digraph stabilizer {"]
    for c in order:
        lines.append(f'  v{ids[c]} [label="{c}"];')
    for source, move, target in g.edges:
        lines.append(f'  v{ids[source]} -> v{ids[target]} [label="{move.describe()}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json(g: McCoolGraph) -> dict:
    order = _vertex_order(g)
    ids = {c: i for i, c in enumerate(order)}
    return {
        "basepoint": str(g.basepoint),
        "vertices": [str(c) for c in order],
        "edges": [
            {"source": ids[s], "move": move_to_json(m), "target": ids[t]}
            for s, m, t in g.edges
        ],
    }
