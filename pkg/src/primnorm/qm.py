"""Counting quasimorphisms: subword counts, homogenization, defect reports.

``brooks(q, x)`` counts overlapping occurrences of the base pattern in
``x`` minus those in ``x^-1``.  Homogenization is computed exactly by
counting occurrences per period of the cyclic reduction inside the
periodic word, not by numeric limits, so certificate values carry no
tolerances.  Counting acts on reduced linear words; cyclic counting is a
separate operation because both semantics are needed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from . import whitehead_graph
from .autos import Automorphism
from .orbit import random_primitive
from .words import (
    CyclicWord,
    RankError,
    Word,
    WordError,
    canonical_rotation,
    concat,
    cyclic_reduce,
    invert,
    random_word,
)


@dataclass(frozen=True)
class BrooksQm:
    """Counting quasimorphism with a fixed nonempty base pattern."""

    base: Word

    def __post_init__(self) -> None:
        if self.base.is_identity():
            raise WordError("the base pattern must be nonempty")

    @property
    def rank(self) -> int:
        return self.base.rank


def default_defect_bound(base: Word) -> int:
    """Default claimed defect bound for a counting quasimorphism: twice the
    number of junction slots of the pattern.  This is a certificate input
    validated by sampling, not a proved constant."""
    return 2 * (len(base) - 1)


def _encode(letters: tuple[int, ...]) -> bytes:
    # letters lie in [-rank, rank] with rank <= 26 in practice; shift into bytes
    return bytes(v + 32 for v in letters)


def _count_overlapping(haystack: bytes, needle: bytes) -> int:
    count = 0
    start = 0
    while True:
        idx = haystack.find(needle, start)
        if idx < 0:
            return count
        count += 1
        start = idx + 1


def count_occurrences(pattern: Word, x: Word) -> int:
    """Occurrences of `pattern` in `x` as a linear subword, overlaps counted."""
    if pattern.is_identity():
        raise WordError("the empty pattern has no occurrence count")
    if pattern.rank != x.rank:
        raise RankError(f"rank mismatch: {pattern.rank} vs {x.rank}")
    return _count_overlapping(_encode(x.letters), _encode(pattern.letters))


def count_cyclic(pattern: Word, c: CyclicWord) -> int:
    """Start positions in one period of ``c`` at which `pattern` occurs in
    the periodic word ``c c c ...``."""
    if pattern.is_identity():
        raise WordError("the empty pattern has no occurrence count")
    if pattern.rank != c.rank:
        raise RankError(f"rank mismatch: {pattern.rank} vs {c.rank}")
    m = len(c.letters)
    if m == 0:
        return 0
    reps = -(-len(pattern.letters) // m) + 1  # ceil + 1 periods of runway
    text = _encode(c.letters * reps)
    needle = _encode(pattern.letters)
    return sum(1 for i in range(m) if text.startswith(needle, i))


def brooks(q: BrooksQm, x: Word) -> int:
    if q.rank != x.rank:
        raise RankError(f"rank mismatch: {q.rank} vs {x.rank}")
    return count_occurrences(q.base, x) - count_occurrences(q.base, invert(x))


def homogenized(q: BrooksQm, x: Word) -> int:
    """Exact limit of ``brooks(q, x^n) / n``.

    Equals the per-period count of the base in the periodic word built
    from the cyclic reduction ``r`` of ``x``, minus the same count for
    ``r^-1``.  Conjugation-invariant by construction.
    """
    if q.rank != x.rank:
        raise RankError(f"rank mismatch: {q.rank} vs {x.rank}")
    r, _ = cyclic_reduce(x)
    if len(r) == 0:
        return 0
    r_inv, _ = cyclic_reduce(invert(r.as_word()))
    return count_cyclic(q.base, r) - count_cyclic(q.base, r_inv)


def symmetrize(q: BrooksQm, sigma: Automorphism, x: Word, homogeneous: bool = True) -> int:
    """Value of the symmetrized quasimorphism ``x -> q(x) + q(sigma(x))``."""
    fn = homogenized if homogeneous else brooks
    return fn(q, x) + fn(q, sigma.apply(x))


@dataclass(frozen=True)
class DefectReport:
    claimed_bound: int
    empirical_max: int
    samples: int
    max_len: int
    seed: int
    worst_pair: Optional[tuple[str, str]]
    passed: bool

    def to_json(self) -> dict:
        return {
            "claimed_bound": self.claimed_bound,
            "empirical_max": self.empirical_max,
            "samples": self.samples,
            "max_len": self.max_len,
            "seed": self.seed,
            "worst_pair": list(self.worst_pair) if self.worst_pair else None,
            "passed": self.passed,
        }


def estimate_defect(
    q: BrooksQm,
    samples: int,
    max_len: int = 24,
    seed: int = 0,
    claimed_bound: int | None = None,
) -> DefectReport:
    """Sample pairs ``(a, b)`` and report the largest observed deviation
    ``|q(a) - q(ab) + q(b)|`` against the claimed bound.

    A failing report invalidates the claimed bound, not the library: the
    true defect of a counting quasimorphism is not computed exactly here.
    """
    if samples < 1:
        raise WordError(f"samples must be >= 1, got {samples}")
    if claimed_bound is None:
        claimed_bound = default_defect_bound(q.base)
    rng = random.Random(seed)
    worst = 0
    worst_pair: Optional[tuple[str, str]] = None
    for _ in range(samples):
        a = random_word(q.rank, rng.randint(0, max_len), rng)
        b = random_word(q.rank, rng.randint(0, max_len), rng)
        value = abs(brooks(q, a) - brooks(q, concat(a, b)) + brooks(q, b))
        if value > worst:
            worst = value
            worst_pair = (str(a), str(b))
    return DefectReport(
        claimed_bound, worst, samples, max_len, seed, worst_pair, worst <= claimed_bound
    )


@dataclass(frozen=True)
class PrimitiveBoundViolation:
    primitive: str
    check: str
    value: int


@dataclass(frozen=True)
class PrimitiveBoundReport:
    bound: int
    samples: int
    seed: int
    violations: tuple[PrimitiveBoundViolation, ...]

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "bound": self.bound,
            "samples": self.samples,
            "seed": self.seed,
            "passed": self.passed,
            "violations": [
                {"primitive": v.primitive, "check": v.check, "value": v.value}
                for v in self.violations
            ],
        }


def square_root_of_base(q: BrooksQm) -> Word:
    """The word ``x`` with base ``x^2``; errors when the base is not a square."""
    n = len(q.base)
    if n % 2 != 0:
        raise WordError("base pattern is not a square")
    half = q.base.letters[: n // 2]
    if half != q.base.letters[n // 2 :]:
        raise WordError("base pattern is not a square")
    return Word(q.base.rank, half)


def check_primitive_bound(
    q: BrooksQm,
    samples: int,
    seed: int = 0,
    max_steps: int = 12,
    claimed_bound: int | None = None,
    probes: tuple[Word, ...] = (),
) -> PrimitiveBoundReport:
    """Sample random primitives and check the two boundedness facts for a
    square base ``x^2``:

    - the cyclic reduction of a primitive never contains ``x^2`` or
      ``x^-2`` (checked cyclically, covering every rotation), and
    - the raw counting value on the primitive itself is bounded by
      ``2 * len(x)``.

    Requires the Whitehead graph of ``x`` to be connected without a
    cut-vertex; anything else is a precondition error.  ``probes`` adds
    deterministic extra elements to the sample (they are checked as
    given).
    """
    x = square_root_of_base(q)
    graph = whitehead_graph.build(canonical_rotation(x.rank, x.letters))
    if not whitehead_graph.is_connected(graph):
        raise WordError("base root has a disconnected Whitehead graph")
    if whitehead_graph.cut_vertices(graph):
        raise WordError("base root's Whitehead graph has a cut-vertex")
    bound = 2 * len(x) if claimed_bound is None else claimed_bound
    x2 = q.base
    x2_inv = invert(q.base)
    rng = random.Random(seed)
    violations: list[PrimitiveBoundViolation] = []
    elements = list(probes)
    for _ in range(samples):
        elements.append(
            random_primitive(q.rank, rng.randint(0, max_steps), rng.getrandbits(32))
        )
    for b in elements:
        cb, _ = cyclic_reduce(b)
        fwd = count_cyclic(x2, cb)
        bwd = count_cyclic(x2_inv, cb)
        if fwd:
            violations.append(PrimitiveBoundViolation(str(b), "cyclic_square", fwd))
        if bwd:
            violations.append(
                PrimitiveBoundViolation(str(b), "cyclic_inverse_square", bwd)
            )
        value = brooks(q, b)
        if abs(value) > bound:
            violations.append(PrimitiveBoundViolation(str(b), "raw_bound", value))
    return PrimitiveBoundReport(bound, samples, seed, tuple(violations))
