"""Distortion classification with machine-checkable certificates.

Every nontrivial word falls in exactly one of two cases.  Either its
minimal form has a disconnected Whitehead graph: then the word
conjugates into a proper free factor and its powers stay within
primitive-norm 2, witnessed by a factor ``p`` with ``x^n p`` and
``p^-1`` both primitive.  Or the minimal form ``y`` has a connected
graph with no cut-vertex: then the counting quasimorphism with base
``y^2`` is bounded on primitives and its homogenization is nonzero on
``y``, which forces ``|x^n|`` to grow linearly.

Certificates serialize to the stable JSON schema ``distortion-cert/1``
so external tools can re-verify every claim from primitives.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from . import whitehead_graph
from .autos import Automorphism, automorphism_to_json, invert as invert_auto
from .orbit import InconsistencyError, ReductionTrace, is_primitive, reduce_to_minimal
from .qm import (
    BrooksQm,
    DefectReport,
    PrimitiveBoundReport,
    check_primitive_bound,
    default_defect_bound,
    estimate_defect,
    homogenized,
)
from .words import (
    CyclicWord,
    Word,
    WordError,
    concat,
    conjugate,
    cyclic_reduce,
    invert,
    power,
)

CERT_SCHEMA = "distortion-cert/1"


@dataclass(frozen=True)
class BoundedSeparable:
    """Witness that the cyclic subgroup of ``word`` is norm-bounded.

    For every ``n``, ``word^n * witness_factor`` and the inverse of
    ``witness_factor`` are primitive, hence ``word^n`` is a product of
    two primitives.
    """

    word: Word
    witness_factor: Word

    @property
    def kind(self) -> str:
        return "bounded_separable"

    def to_json(self) -> dict:
        return {
            "schema": CERT_SCHEMA,
            "kind": self.kind,
            "rank": self.word.rank,
            "word": str(self.word),
            "witness_factor": str(self.witness_factor),
            "statement": (
                "word^n * witness_factor and witness_factor^-1 are primitive "
                "for every n, so every power has primitive norm at most 2"
            ),
        }


@dataclass(frozen=True)
class Undistorted:
    """Witness that powers of ``word`` grow linearly in the primitive norm.

    ``minimizing_automorphism`` carries ``word`` into the conjugacy class
    of ``reduced``; the homogenized counting quasimorphism with base
    ``reduced^2`` is bounded by ``primitive_bound + defect_bound`` on
    primitives and nonzero on ``reduced``, giving the growth ``slope``.
    """

    word: Word
    minimizing_automorphism: Automorphism
    reduced: CyclicWord
    qm: BrooksQm
    primitive_bound: int
    defect_bound: int
    homogenized_value: int
    slope: Fraction

    @property
    def kind(self) -> str:
        return "undistorted"

    def to_json(self) -> dict:
        return {
            "schema": CERT_SCHEMA,
            "kind": self.kind,
            "rank": self.word.rank,
            "word": str(self.word),
            "minimizing_automorphism": automorphism_to_json(
                self.minimizing_automorphism
            ),
            "reduced": str(self.reduced),
            "qm_base": str(self.qm.base),
            "primitive_bound": self.primitive_bound,
            "defect_bound": self.defect_bound,
            "homogenized_value": self.homogenized_value,
            "slope": [self.slope.numerator, self.slope.denominator],
        }


DistortionVerdict = Union[BoundedSeparable, Undistorted]


def _reduction_data(x: Word) -> tuple[ReductionTrace, Automorphism, Word]:
    """Reduce ``x`` and return the trace, its automorphism and the
    conjugator ``d`` with ``psi(x) == d * final * d^-1``."""
    c, _ = cyclic_reduce(x)
    trace = reduce_to_minimal(c)
    psi = trace.automorphism()
    image = psi.apply(x)
    final_check, d = cyclic_reduce(image)
    if final_check != trace.final:
        raise InconsistencyError("reduction trace does not match its automorphism")
    return trace, psi, d


def classify(x: Word, cap: int | None = None, defect_bound: int | None = None) -> DistortionVerdict:
    """Run the distortion dichotomy on a nonempty word.

    ``defect_bound`` overrides the claimed defect bound recorded in an
    undistorted certificate (default ``2 * (len(base) - 1)``).
    """
    del cap
    if x.is_identity():
        raise WordError("the identity generates a trivial subgroup; nothing to classify")
    trace, psi, d = _reduction_data(x)
    y = trace.final
    graph = whitehead_graph.build(y)
    if not whitehead_graph.is_connected(graph):
        used = {abs(v) for v in y.letters}
        missing = [g for g in range(1, x.rank + 1) if g not in used]
        if not missing:
            raise InconsistencyError(
                "disconnected minimal graph but every generator occurs; "
                "a component must be inverse-closed and this should not happen"
            )
        spare = Word(x.rank, (missing[0],))
        p = invert_auto(psi).apply(conjugate(d, spare))
        if not is_primitive(concat(x, p)) or not is_primitive(invert(p)):
            raise InconsistencyError("separable witness factor failed its sanity check")
        return BoundedSeparable(x, p)
    if whitehead_graph.cut_vertices(graph):
        raise InconsistencyError(
            "minimal word has a connected graph with a cut-vertex"
        )
    base = concat(y.as_word(), y.as_word())
    q = BrooksQm(base)
    c_bound = 2 * len(y)
    d_bound = default_defect_bound(base) if defect_bound is None else defect_bound
    h = homogenized(q, y.as_word())
    if h == 0:
        raise InconsistencyError("homogenized value vanished on the minimal word")
    slope = Fraction(abs(h), c_bound + 2 * d_bound)
    return Undistorted(x, psi, y, q, c_bound, d_bound, h, slope)


@dataclass(frozen=True)
class CheckOutcome:
    name: str
    passed: bool
    detail: str

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass(frozen=True)
class VerificationReport:
    kind: str
    passed: bool
    checks: tuple[CheckOutcome, ...]
    lower_bounds: tuple[tuple[int, Fraction], ...]
    notes: tuple[str, ...]
    primitive_report: Optional[PrimitiveBoundReport] = None
    defect_report: Optional[DefectReport] = None

    def to_json(self) -> dict:
        data = {
            "kind": self.kind,
            "passed": self.passed,
            "checks": [c.to_json() for c in self.checks],
            "lower_bounds": [
                [n, [s.numerator, s.denominator]] for n, s in self.lower_bounds
            ],
            "notes": list(self.notes),
        }
        if self.primitive_report is not None:
            data["primitive_report"] = self.primitive_report.to_json()
        if self.defect_report is not None:
            data["defect_report"] = self.defect_report.to_json()
        return data


def verify(
    verdict: DistortionVerdict,
    x: Word,
    n_max: int = 10,
    samples: int = 200,
    seed: int = 0,
    defect_max_len: int = 24,
) -> VerificationReport:
    """Re-derive every certificate claim from primitives.

    Separable verdicts: both factors of ``x^n = (x^n p) p^-1`` must be
    primitive for each ``n`` up to ``n_max``.  Undistorted verdicts: the
    graph conditions, nonvanishing homogenized value, sampled
    boundedness of the counting value on primitives (a paper-asserted
    bound validated empirically) and the defect claim are rechecked, and
    the certified lower bounds ``n * slope`` are emitted.
    """
    if verdict.word != x:
        raise WordError("verdict was produced for a different word")
    if isinstance(verdict, BoundedSeparable):
        return _verify_separable(verdict, x, n_max)
    return _verify_undistorted(verdict, x, n_max, samples, seed, defect_max_len)


def _verify_separable(
    verdict: BoundedSeparable, x: Word, n_max: int
) -> VerificationReport:
    checks: list[CheckOutcome] = []
    p = verdict.witness_factor
    inv_ok = is_primitive(invert(p))
    checks.append(
        CheckOutcome("inverse_factor_primitive", inv_ok, f"p^-1 = {invert(p)}")
    )
    for n in range(1, n_max + 1):
        factor = concat(power(x, n), p)
        ok = is_primitive(factor)
        checks.append(
            CheckOutcome(
                f"power_{n}_factor_primitive", ok, f"x^{n} * p has length {len(factor)}"
            )
        )
    notes = []
    used = {abs(v) for v in cyclic_reduce(x)[0].letters}
    if len(used) <= 1:
        notes.append("degenerate case: the word conjugates into a rank-1 free factor")
    passed = all(c.passed for c in checks)
    return VerificationReport("bounded_separable", passed, tuple(checks), (), tuple(notes))


def _verify_undistorted(
    verdict: Undistorted,
    x: Word,
    n_max: int,
    samples: int,
    seed: int,
    defect_max_len: int,
) -> VerificationReport:
    checks: list[CheckOutcome] = []
    y = verdict.reduced
    image, _ = cyclic_reduce(verdict.minimizing_automorphism.apply(x))
    checks.append(
        CheckOutcome(
            "automorphism_reaches_reduced",
            image == y,
            f"psi(x) lies in the class of {y}",
        )
    )
    graph = whitehead_graph.build(y)
    connected = whitehead_graph.is_connected(graph)
    cuts = whitehead_graph.cut_vertices(graph)
    checks.append(CheckOutcome("graph_connected", connected, "Whitehead graph of y"))
    checks.append(
        CheckOutcome("graph_no_cut_vertex", not cuts, f"cut vertices: {sorted(cuts)}")
    )
    base_ok = verdict.qm.base == concat(y.as_word(), y.as_word())
    checks.append(CheckOutcome("qm_base_is_square_of_reduced", base_ok, str(verdict.qm.base)))
    h = homogenized(verdict.qm, y.as_word())
    checks.append(
        CheckOutcome(
            "homogenized_nonzero",
            h != 0 and h == verdict.homogenized_value,
            f"homogenized value {h}",
        )
    )
    slope_ok = verdict.slope == Fraction(
        abs(verdict.homogenized_value),
        verdict.primitive_bound + 2 * verdict.defect_bound,
    )
    checks.append(
        CheckOutcome("slope_consistent", slope_ok, f"slope {verdict.slope}")
    )
    prim_report = check_primitive_bound(
        verdict.qm, samples, seed=seed, claimed_bound=verdict.primitive_bound
    )
    checks.append(
        CheckOutcome(
            "primitive_boundedness_sampled",
            prim_report.passed,
            f"{len(prim_report.violations)} violation(s) in {samples} samples",
        )
    )
    defect_report = estimate_defect(
        verdict.qm,
        samples,
        max_len=defect_max_len,
        seed=seed,
        claimed_bound=verdict.defect_bound,
    )
    checks.append(
        CheckOutcome(
            "defect_bound_sampled",
            defect_report.passed,
            f"empirical max {defect_report.empirical_max} vs claimed {defect_report.claimed_bound}",
        )
    )
    lower_bounds = tuple((n, n * verdict.slope) for n in range(1, n_max + 1))
    notes = ("primitive_bound is paper-asserted and validated empirically",)
    passed = all(c.passed for c in checks)
    return VerificationReport(
        "undistorted",
        passed,
        tuple(checks),
        lower_bounds,
        notes,
        primitive_report=prim_report,
        defect_report=defect_report,
    )


def primitive_norm_upper_bound(x: Word, budget: int) -> Optional[int]:
    """Iterative-deepening search for a factorization of ``x`` into at most
    ``budget`` primitives; returns the count found, or None on exhaustion.

    Candidate first factors are prefixes of the reduced word plus
    single-letter augmentations ``x * g`` (so the separable pattern
    ``x = (x g) g^-1`` is always in reach).  The result is an upper bound
    for the primitive norm; it is exact only when it is at most 2.
    """
    if x.is_identity():
        return 0
    for depth in range(1, budget + 1):
        if _writable_as_primitives(x, depth):
            return depth
    return None


def _first_factor_candidates(x: Word) -> list[Word]:
    candidates = [Word(x.rank, x.letters[:i]) for i in range(1, len(x))]
    for g in range(1, x.rank + 1):
        for s in (1, -1):
            candidates.append(concat(x, Word(x.rank, (s * g,))))
            candidates.append(Word.make(x.rank, (s * g,)))
    return candidates


def _writable_as_primitives(x: Word, depth: int) -> bool:
    if x.is_identity():
        return False
    if depth == 1:
        return is_primitive(x)
    if is_primitive(x):
        return True
    seen: set[tuple[int, ...]] = set()
    for u in _first_factor_candidates(x):
        if u.is_identity() or u.letters in seen:
            continue
        seen.add(u.letters)
        if not is_primitive(u):
            continue
        rest = concat(invert(u), x)
        if _writable_as_primitives(rest, depth - 1):
            return True
    return False
