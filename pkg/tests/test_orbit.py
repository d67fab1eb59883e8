import math
import random

import pytest

from primnorm.autos import (
    Automorphism,
    abelianization_matrix,
    apply,
    apply_move,
    determinant,
    enumerate_permutation_moves,
    enumerate_whitehead_moves,
)
from primnorm.orbit import (
    CapExceededError,
    is_primitive,
    is_separable,
    minimal_level_set,
    orbit_equal,
    random_primitive,
    reduce_to_minimal,
)
from primnorm.words import (
    Word,
    WordError,
    abelianize,
    concat,
    conjugate,
    cyclic_reduce,
    invert,
    parse_word,
    random_word,
)


def cyc(text, rank=2):
    return cyclic_reduce(parse_word(text, rank))[0]


def staircase(k, rank=2):
    return parse_word(f"a^{k}b^{2*k}a^{3*k}b^{4*k}", rank)


def test_reduce_conjugate_needs_no_moves():
    trace = reduce_to_minimal(cyc("baB"))
    assert trace.final.letters == (1,)
    assert trace.steps == ()


def test_commutator_is_minimal():
    trace = reduce_to_minimal(cyc("abAB"))
    assert len(trace.final) == 4
    assert trace.steps == ()
    # exhaustive: no multiplier move shortens it
    for move in enumerate_whitehead_moves(2):
        image, _ = cyclic_reduce(apply_move(move, trace.final.as_word()))
        assert len(image) >= 4


def test_staircase_is_minimal():
    trace = reduce_to_minimal(cyclic_reduce(staircase(2))[0])
    assert len(trace.final) == 20
    assert trace.steps == ()


def test_reduction_steps_strictly_decrease():
    rng = random.Random(31)
    for _ in range(50):
        w = random_word(2, rng.randint(1, 12), rng)
        trace = reduce_to_minimal(cyclic_reduce(w)[0])
        lengths = [len(trace.start)] + [len(c) for _, c in trace.steps]
        assert all(a > b for a, b in zip(lengths, lengths[1:]))
        # minimality witness: no move shortens the final word
        for move in enumerate_whitehead_moves(2):
            image, _ = cyclic_reduce(apply_move(move, trace.final.as_word()))
            assert len(image) >= len(trace.final)


def test_trace_automorphism_reaches_final():
    rng = random.Random(32)
    for _ in range(30):
        w = random_word(2, rng.randint(1, 12), rng)
        trace = reduce_to_minimal(cyclic_reduce(w)[0])
        image, _ = cyclic_reduce(apply(trace.automorphism(), w))
        assert image == trace.final


def test_level_set_of_generator():
    level = minimal_level_set(cyc("a"))
    assert {str(c) for c in level.classes} == {"a", "A", "b", "B"}


def test_level_set_of_staircase_has_eight_classes():
    level = minimal_level_set(cyclic_reduce(staircase(2))[0])
    assert len(level.classes) == 8


def test_level_set_cap():
    with pytest.raises(CapExceededError):
        minimal_level_set(cyclic_reduce(staircase(2))[0], cap=1)


def test_level_set_classes_share_length_and_gcd():
    rng = random.Random(41)
    for _ in range(20):
        w = random_word(2, rng.randint(1, 10), rng)
        level = minimal_level_set(cyclic_reduce(w)[0])
        lengths = {len(c) for c in level.classes}
        assert len(lengths) == 1
        gcds = {math.gcd(*abelianize(c.as_word())) for c in level.classes}
        assert len(gcds) == 1


def test_orbit_equal_conjugates():
    x = parse_word("abAB", 2)
    w = parse_word("bba", 2)
    equal, witness = orbit_equal(x, conjugate(w, x))
    assert equal
    assert apply(witness, x) == conjugate(w, x)


def test_orbit_equal_staircase_vs_inverse():
    x = staircase(2)
    equal, witness = orbit_equal(x, invert(x))
    assert not equal and witness is None


def test_orbit_equal_distinct_staircases():
    equal, _ = orbit_equal(staircase(2), staircase(3))
    assert not equal


def test_orbit_equal_reflexive_and_symmetric():
    rng = random.Random(44)
    for _ in range(25):
        u = random_word(2, rng.randint(1, 10), rng)
        v = random_word(2, rng.randint(1, 10), rng)
        eq_self, wit_self = orbit_equal(u, u)
        assert eq_self and apply(wit_self, u) == u
        assert orbit_equal(u, v)[0] == orbit_equal(v, u)[0]


def test_orbit_equal_witness_soundness():
    rng = random.Random(45)
    pool = enumerate_permutation_moves(2) + enumerate_whitehead_moves(2)
    for _ in range(25):
        u = random_word(2, rng.randint(1, 8), rng)
        psi = Automorphism.from_moves(2, tuple(rng.choice(pool) for _ in range(4)))
        v = conjugate(random_word(2, rng.randint(0, 4), rng), apply(psi, u))
        equal, witness = orbit_equal(u, v)
        assert equal
        assert apply(witness, u) == v
        assert cyclic_reduce(apply(witness, u))[0] == cyclic_reduce(v)[0]


def test_orbit_equal_gcd_fast_path_consistency():
    rng = random.Random(46)
    for _ in range(40):
        u = random_word(2, rng.randint(1, 10), rng)
        v = random_word(2, rng.randint(1, 10), rng)
        if math.gcd(*abelianize(u)) != math.gcd(*abelianize(v)):
            assert not orbit_equal(u, v)[0]


def test_orbit_equal_rank_one():
    a = parse_word("a", 1)
    assert orbit_equal(a, invert(a))[0]
    assert not orbit_equal(a, parse_word("a^2", 1))[0]


def test_is_primitive_examples():
    assert is_primitive(parse_word("a", 2))
    assert is_primitive(parse_word("aab", 2))
    assert not is_primitive(parse_word("abAB", 2))


def test_is_primitive_rank_one():
    assert is_primitive(parse_word("a", 1))
    assert is_primitive(parse_word("A", 1))
    assert not is_primitive(parse_word("a^2", 1))


def test_is_primitive_rejects_identity():
    with pytest.raises(WordError):
        is_primitive(Word.identity(2))


def test_is_separable_examples():
    assert is_separable(parse_word("a", 2))[0]
    assert is_separable(parse_word("ab", 2))[0]
    separable, evidence = is_separable(parse_word("abAB", 2))
    assert not separable
    assert evidence.connected and not evidence.cut_letters
    assert len(evidence.minimal) == 4


def test_is_separable_rank_one_always_false():
    assert not is_separable(parse_word("a^3", 1))[0]


def test_is_separable_rejects_identity():
    with pytest.raises(WordError):
        is_separable(Word.identity(2))


def test_primitivity_and_separability_are_orbit_invariants():
    rng = random.Random(47)
    pool = enumerate_permutation_moves(2) + enumerate_whitehead_moves(2)
    for _ in range(20):
        w = random_word(2, rng.randint(1, 8), rng)
        psi = Automorphism.from_moves(2, tuple(rng.choice(pool) for _ in range(3)))
        image = apply(psi, w)
        if image.is_identity():
            continue
        assert is_primitive(image) == is_primitive(w)
        assert is_separable(image)[0] == is_separable(w)[0]


def test_random_primitive_basics():
    assert random_primitive(2, 0, seed=1) == parse_word("a", 2)
    assert random_primitive(3, 7, seed=42) == random_primitive(3, 7, seed=42)
    for seed in range(20):
        assert is_primitive(random_primitive(2, 9, seed))
