"""Verification suite for the staircase word family ``a^k b^2k a^3k b^4k``.

These rank-2 words have tightly understood orbit behavior once ``k > 1``:
their minimal level set is exactly the eight signed-permutation images
(the permutation group acts freely on it), every multiplier move fixes a
level-set class or strictly lengthens it, no member is automorphic to
its inverse, distinct ``k`` give distinct orbits (the gcd of the
exponent-sum vector separates them), and the class stabilizer lies in
the determinant-+1 subgroup.  ``check_family`` reruns all of that
exhaustively and reports per-check outcomes.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass

import math

from .autos import (
    abelianization_matrix,
    apply_move,
    determinant,
    enumerate_permutation_moves,
    enumerate_whitehead_moves,
    invert_first_generator,
)
from .orbit import DEFAULT_CAP, minimal_level_set, orbit_equal
from .stabilizer import build_mccool_graph, stabilizer_in_aut_plus
from .words import Word, WordError, abelianize, cyclic_reduce, invert


def staircase_word(k: int, rank: int = 2) -> Word:
    """The word ``a^k b^2k a^3k b^4k`` in the given rank (>= 2)."""
    if rank < 2:
        raise WordError("the staircase family needs two generators")
    letters = (1,) * k + (2,) * (2 * k) + (1,) * (3 * k) + (2,) * (4 * k)
    return Word(rank, letters)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass(frozen=True)
class FamilyReport:
    ks: tuple[int, ...]
    results: tuple[tuple[int, tuple[CheckResult, ...]], ...]
    pair_results: tuple[CheckResult, ...]
    elapsed: tuple[tuple[int, float], ...]

    @property
    def passed(self) -> bool:
        per_k = all(r.passed for _, checks in self.results for r in checks)
        return per_k and all(r.passed for r in self.pair_results)

    def to_json(self) -> dict:
        return {
            "ks": list(self.ks),
            "passed": self.passed,
            "per_k": {
                str(k): [r.to_json() for r in checks] for k, checks in self.results
            },
            "pairs": [r.to_json() for r in self.pair_results],
            "elapsed_seconds": {str(k): round(t, 3) for k, t in self.elapsed},
        }


def _check_free_permutation_action(k: int) -> CheckResult:
    x = staircase_word(k)
    c, _ = cyclic_reduce(x)
    images = set()
    for move in enumerate_permutation_moves(2):
        img, _ = cyclic_reduce(apply_move(move, c.as_word()))
        images.add(img)
    return CheckResult(
        "free_permutation_action",
        len(images) == 8,
        f"{len(images)} distinct permutation images (expected 8)",
    )


def _check_fix_or_lengthen(k: int, cap: int) -> CheckResult:
    x = staircase_word(k)
    c, _ = cyclic_reduce(x)
    level = minimal_level_set(c, cap)
    if len(level.classes) != 8:
        return CheckResult(
            "whitehead_fix_or_lengthen",
            False,
            f"level set has {len(level.classes)} classes (expected 8)",
        )
    moves = enumerate_whitehead_moves(2)
    bad = 0
    for cls in level.classes:
        for move in moves:
            image, _ = cyclic_reduce(apply_move(move, cls.as_word()))
            if image != cls and len(image) <= len(cls):
                bad += 1
    return CheckResult(
        "whitehead_fix_or_lengthen",
        bad == 0,
        f"{len(level.classes)} classes x {len(moves)} moves, {bad} violations",
    )


def _check_not_inverted(k: int, cap: int) -> CheckResult:
    x = staircase_word(k)
    equal, _ = orbit_equal(x, invert(x), cap)
    return CheckResult(
        "not_automorphic_to_inverse",
        not equal,
        "x and x^-1 share an orbit" if equal else "x and x^-1 in distinct orbits",
    )


def _check_stabilizer(k: int, cap: int) -> tuple[CheckResult, CheckResult]:
    x = staircase_word(k)
    c, _ = cyclic_reduce(x)
    graph = build_mccool_graph(c, cap)
    in_plus = stabilizer_in_aut_plus(graph)
    stab = CheckResult(
        "stabilizer_in_determinant_plus_one",
        in_plus,
        "all loop generators have determinant +1" if in_plus else "determinant -1 generator found",
    )
    sigma = invert_first_generator(2)
    flipped = sigma.apply(x)
    equal, witness = orbit_equal(x, flipped, cap)
    det = determinant(abelianization_matrix(witness)) if witness else 0
    mirror = CheckResult(
        "mirror_witness_determinant",
        equal and det == -1,
        f"orbit_equal: {equal}, witness determinant {det} (expected -1)",
    )
    return stab, mirror


def _pair_checks(ks: tuple[int, ...], cap: int) -> list[CheckResult]:
    sigma = invert_first_generator(2)
    results: list[CheckResult] = []
    for k in ks:
        x = staircase_word(k)
        flipped_inv = invert(sigma.apply(x))
        equal, _ = orbit_equal(x, flipped_inv, cap)
        results.append(
            CheckResult(
                f"k={k}: x vs mirror(x)^-1 distinct orbits",
                not equal,
                "distinct" if not equal else "unexpectedly equal",
            )
        )
    for k, l in itertools.combinations(ks, 2):
        xk, xl = staircase_word(k), staircase_word(l)
        gk = math.gcd(*abelianize(xk))
        gl = math.gcd(*abelianize(xl))
        results.append(
            CheckResult(
                f"k={k},l={l}: gcd separation",
                gk == 2 * k and gl == 2 * l and gk != gl,
                f"gcds {gk} vs {gl}",
            )
        )
        sigma_xk = sigma.apply(xk)
        sigma_xl = sigma.apply(xl)
        pairs = (
            (f"k={k},l={l}: x_k vs mirror(x_l)", xk, sigma_xl),
            (f"k={k},l={l}: x_k vs mirror(x_l)^-1", xk, invert(sigma_xl)),
            (f"k={k},l={l}: mirror(x_k) vs mirror(x_l)", sigma_xk, sigma_xl),
            (f"k={k},l={l}: mirror(x_k) vs mirror(x_l)^-1", sigma_xk, invert(sigma_xl)),
        )
        for name, left, right in pairs:
            equal, _ = orbit_equal(left, right, cap)
            results.append(
                CheckResult(name, not equal, "distinct" if not equal else "equal")
            )
    return results


def check_family(ks, cap: int = DEFAULT_CAP) -> FamilyReport:
    """Run the whole staircase-family suite for each ``k`` (all >= 2)."""
    ks = tuple(sorted(set(int(k) for k in ks)))
    if not ks:
        raise WordError("at least one k value required")
    for k in ks:
        if k < 2:
            raise WordError(f"family checks need k >= 2, got {k}")
    results = []
    elapsed = []
    for k in ks:
        t0 = time.perf_counter()
        checks = [
            _check_free_permutation_action(k),
            _check_fix_or_lengthen(k, cap),
            _check_not_inverted(k, cap),
        ]
        checks.extend(_check_stabilizer(k, cap))
        results.append((k, tuple(checks)))
        elapsed.append((k, time.perf_counter() - t0))
    pair_results = tuple(_pair_checks(ks, cap))
    return FamilyReport(ks, tuple(results), pair_results, tuple(elapsed))
