"""Whitehead graphs of cyclic words: connectivity and cut-vertex analysis.

The graph of a cyclic word ``w`` has a vertex for each letter symbol
(``2 * rank`` vertices) and, for every cyclically consecutive pair
``(w[i], w[i+1])``, one edge joining ``w[i]`` to the inverse of
``w[i+1]``.  It is stored as a dense symmetric multiplicity matrix; a
diagonal entry counts a self-edge once.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .words import CyclicWord, Word, WordError, letter_text


def vertex_of_letter(letter: int) -> int:
    """Vertex id ``2*index + (0 if positive else 1)``."""
    return 2 * (abs(letter) - 1) + (0 if letter > 0 else 1)


def letter_of_vertex(vertex: int) -> int:
    idx = vertex // 2 + 1
    return idx if vertex % 2 == 0 else -idx


def vertex_label(vertex: int) -> str:
    base = letter_text(vertex // 2 + 1)
    return base if vertex % 2 == 0 else base + "'"


@dataclass(frozen=True)
class WhiteheadGraph:
    rank: int
    multiplicity: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        n = 2 * self.rank
        if len(self.multiplicity) != n or any(len(row) != n for row in self.multiplicity):
            raise WordError(f"multiplicity matrix must be {n}x{n}")
        for i in range(n):
            for j in range(n):
                if self.multiplicity[i][j] < 0:
                    raise WordError("edge multiplicities must be nonnegative")
                if self.multiplicity[i][j] != self.multiplicity[j][i]:
                    raise WordError("multiplicity matrix must be symmetric")

    @property
    def vertex_count(self) -> int:
        return 2 * self.rank

    def edges(self) -> Iterator[tuple[int, int, int]]:
        """Yield ``(v, w, multiplicity)`` with ``v <= w`` and multiplicity > 0."""
        n = self.vertex_count
        for i in range(n):
            for j in range(i, n):
                if self.multiplicity[i][j]:
                    yield i, j, self.multiplicity[i][j]

    def edge_count(self) -> int:
        return sum(m for _, _, m in self.edges())

    def neighbors(self, v: int) -> list[int]:
        """Adjacent vertices in the underlying simple graph, self excluded."""
        return [w for w in range(self.vertex_count) if w != v and self.multiplicity[v][w]]


def build(c: CyclicWord) -> WhiteheadGraph:
    """Whitehead graph of a cyclic word (edge count equals ``len(c)``)."""
    n = 2 * c.rank
    mult = [[0] * n for _ in range(n)]
    m = len(c.letters)
    for i in range(m):
        u = vertex_of_letter(c.letters[i])
        v = vertex_of_letter(-c.letters[(i + 1) % m])
        mult[u][v] += 1
        if u != v:
            mult[v][u] += 1
    return WhiteheadGraph(c.rank, tuple(tuple(row) for row in mult))


def build_linear(w: Word) -> WhiteheadGraph:
    """Pair graph of a linear word: like :func:`build` but without the
    wrap-around edge.  Used for subword containment arguments, where
    occurrences are linear while the cyclic graph closes up."""
    n = 2 * w.rank
    mult = [[0] * n for _ in range(n)]
    for i in range(len(w.letters) - 1):
        u = vertex_of_letter(w.letters[i])
        v = vertex_of_letter(-w.letters[i + 1])
        mult[u][v] += 1
        if u != v:
            mult[v][u] += 1
    return WhiteheadGraph(w.rank, tuple(tuple(row) for row in mult))


def connected_components(g: WhiteheadGraph) -> list[frozenset[int]]:
    """Connected components over all ``2 * rank`` vertices.

    Isolated vertices form their own components, so the graph of a word
    omitting a generator is never connected.
    """
    seen: set[int] = set()
    comps: list[frozenset[int]] = []
    for start in range(g.vertex_count):
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        seen.add(start)
        while stack:
            v = stack.pop()
            for w in g.neighbors(v):
                if w not in seen:
                    seen.add(w)
                    comp.add(w)
                    stack.append(w)
        comps.append(frozenset(comp))
    return comps


def is_connected(g: WhiteheadGraph) -> bool:
    return len(connected_components(g)) == 1


def cut_vertices(g: WhiteheadGraph) -> frozenset[int]:
    """Articulation points, returned as letters.

    A vertex is a cut-vertex when removing it strictly increases the
    number of connected components.  Multiplicities and self-edges do
    not affect the answer; the search runs on the underlying simple
    graph by depth-first discovery/low-link traversal.
    """
    n = g.vertex_count
    adj = [g.neighbors(v) for v in range(n)]
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    arts: set[int] = set()
    counter = 0

    def dfs(root: int) -> None:
        nonlocal counter
        stack: list[tuple[int, int | None, Iterator[int]]] = [(root, None, iter(adj[root]))]
        disc[root] = low[root] = counter
        counter += 1
        root_children = 0
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w not in disc:
                    disc[w] = low[w] = counter
                    counter += 1
                    if v == root:
                        root_children += 1
                    stack.append((w, v, iter(adj[w])))
                    advanced = True
                    break
                if w != parent:
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                pv = stack[-1][0]
                low[pv] = min(low[pv], low[v])
                if pv != root and low[v] >= disc[pv]:
                    arts.add(pv)
        if root_children >= 2:
            arts.add(root)

    for v in range(n):
        if v not in disc:
            dfs(v)
    return frozenset(letter_of_vertex(v) for v in arts)


def to_dot(g: WhiteheadGraph) -> str:
    """DOT text; parallel edges are repeated, self-edges rendered once each."""
    lines = ["graph whitehead {"]
    for v in range(g.vertex_count):
        lines.append(f'  v{v} [label="{vertex_label(v)}"];')
    for u, v, mult in g.edges():
        for _ in range(mult):
            lines.append(f"  v{u} -- v{v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json(g: WhiteheadGraph) -> dict:
    return {
        "rank": g.rank,
        "edges": [[u, v, mult] for u, v, mult in g.edges()],
    }
