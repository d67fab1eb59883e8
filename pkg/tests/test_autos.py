import itertools
import math
import random

import pytest
from hypothesis import given, strategies as st

from primnorm.autos import (
    Automorphism,
    PermutationMove,
    WhiteheadMove,
    abelianization_matrix,
    apply,
    apply_move,
    automorphism_from_json,
    automorphism_to_json,
    compose,
    determinant,
    enumerate_permutation_autos,
    enumerate_permutation_moves,
    enumerate_whitehead_autos,
    enumerate_whitehead_moves,
    f2_aut_generators,
    inner_automorphism,
    invert,
    invert_first_generator,
)
from primnorm.words import (
    RankError,
    Word,
    WordError,
    abelianize,
    concat,
    conjugate,
    invert as invert_word,
    parse_word,
    random_word,
)

from conftest import reduced_words


@pytest.mark.parametrize("rank,count", [(1, 2), (2, 8), (3, 48)])
def test_permutation_counts(rank, count):
    autos = enumerate_permutation_autos(rank)
    assert len(autos) == count
    assert len({a.images for a in autos}) == count


@pytest.mark.parametrize("rank,count", [(2, 16), (3, 96)])
def test_whitehead_counts(rank, count):
    moves = enumerate_whitehead_moves(rank)
    assert len(moves) == count


def test_whitehead_rank_one_rejected():
    with pytest.raises(RankError):
        enumerate_whitehead_moves(1)


def test_whitehead_images_stay_in_allowed_set():
    for move in enumerate_whitehead_moves(2):
        a = move.multiplier
        for x in range(1, 3):
            if x == abs(a):
                assert move.letter_image(x) == (x,)
                continue
            img = move.letter_image(x)
            assert img in ((x,), (a, x), (x, -a), (a, x, -a))


def test_apply_examples():
    shear = Automorphism.from_move(WhiteheadMove(2, -2, ("right", "fix")))
    assert apply(shear, parse_word("a", 2)) == parse_word("ab", 2)
    identity = Automorphism.identity(2)
    w = parse_word("aBab", 2)
    assert apply(identity, w) == w


def test_flip_on_staircase_words():
    # inverting the first generator sends a^k b^2k a^3k b^4k
    # to a^-k b^2k a^-3k b^4k
    sigma = invert_first_generator(2)
    for k in (2, 3):
        x = parse_word(f"a^{k}b^{2*k}a^{3*k}b^{4*k}", 2)
        expected = parse_word(f"A^{k}b^{2*k}A^{3*k}b^{4*k}", 2)
        assert apply(sigma, x) == expected


@given(reduced_words(rank=2, max_len=8), reduced_words(rank=2, max_len=8))
def test_apply_is_homomorphism(u, v):
    psi = Automorphism.from_moves(
        2,
        (
            WhiteheadMove(2, 1, ("fix", "left")),
            PermutationMove(2, (2, -1)),
            WhiteheadMove(2, -2, ("conjugate", "fix")),
        ),
    )
    assert apply(psi, concat(u, v)) == concat(apply(psi, u), apply(psi, v))


def test_compose_and_invert_round_trip():
    rng = random.Random(23)
    pool = enumerate_permutation_moves(3) + enumerate_whitehead_moves(3)
    for _ in range(50):
        moves = tuple(rng.choice(pool) for _ in range(rng.randint(0, 6)))
        psi = Automorphism.from_moves(3, moves)
        inv = invert(psi)
        w = random_word(3, rng.randint(0, 12), rng)
        assert apply(inv, apply(psi, w)) == w
        assert compose(inv, psi).is_identity()


def test_compose_order():
    # compose(psi, phi) applies phi first
    shear = Automorphism.from_move(WhiteheadMove(2, -2, ("right", "fix")))  # a -> ab
    swap = Automorphism.from_move(PermutationMove(2, (2, 1)))
    both = compose(swap, shear)
    assert apply(both, parse_word("a", 2)) == parse_word("ba", 2)


def test_invert_shear():
    shear = Automorphism.from_move(WhiteheadMove(2, -2, ("right", "fix")))
    inv = invert(shear)
    assert apply(inv, parse_word("a", 2)) == parse_word("aB", 2)
    assert apply(inv, parse_word("b", 2)) == parse_word("b", 2)


def test_permutations_closed_under_composition():
    autos = enumerate_permutation_autos(2)
    perm_images = {a.images for a in autos}
    for f, g in itertools.product(autos[:4], autos[:4]):
        assert compose(f, g).images in perm_images


def test_abelianization_identity_and_flip():
    assert abelianization_matrix(Automorphism.identity(2)) == ((1, 0), (0, 1))
    sigma = invert_first_generator(2)
    m = abelianization_matrix(sigma)
    assert m == ((-1, 0), (0, 1))
    assert determinant(m) == -1


@pytest.mark.parametrize("rank", [2, 3])
def test_whitehead_moves_have_determinant_one(rank):
    for move in enumerate_whitehead_moves(rank):
        psi = Automorphism.from_move(move)
        assert determinant(abelianization_matrix(psi)) == 1


def test_abelianization_is_multiplicative():
    rng = random.Random(3)
    pool = enumerate_permutation_moves(2) + enumerate_whitehead_moves(2)
    for _ in range(40):
        f = Automorphism.from_moves(2, tuple(rng.choice(pool) for _ in range(3)))
        g = Automorphism.from_moves(2, tuple(rng.choice(pool) for _ in range(3)))
        mf, mg = abelianization_matrix(f), abelianization_matrix(g)
        product = tuple(
            tuple(sum(mf[i][k] * mg[k][j] for k in range(2)) for j in range(2))
            for i in range(2)
        )
        assert abelianization_matrix(compose(f, g)) == product


def test_gcd_of_abelianization_is_invariant():
    rng = random.Random(17)
    pool = enumerate_permutation_moves(2) + enumerate_whitehead_moves(2)
    for _ in range(60):
        w = random_word(2, rng.randint(1, 12), rng)
        psi = Automorphism.from_moves(2, tuple(rng.choice(pool) for _ in range(4)))
        assert math.gcd(*abelianize(w)) == math.gcd(*abelianize(apply(psi, w)))


def naive_determinant(matrix):
    n = len(matrix)
    total = 0
    for perm in itertools.permutations(range(n)):
        sign = 1
        seen = list(perm)
        for i in range(n):  # count inversions
            for j in range(i + 1, n):
                if seen[i] > seen[j]:
                    sign = -sign
        term = 1
        for i in range(n):
            term *= matrix[i][perm[i]]
        total += sign * term
    return total


def test_determinant_matches_permutation_expansion():
    rng = random.Random(2)
    for _ in range(100):
        n = rng.randint(1, 4)
        m = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)]
        assert determinant(m) == naive_determinant(m)


def test_inner_automorphism_conjugates():
    rng = random.Random(8)
    for _ in range(30):
        z = random_word(2, rng.randint(0, 6), rng)
        w = random_word(2, rng.randint(0, 8), rng)
        inner = inner_automorphism(2, z)
        assert apply(inner, w) == conjugate(z, w)


def test_f2_generator_triple():
    flip, swap, shear = f2_aut_generators()
    assert apply(flip, parse_word("a", 2)) == parse_word("A", 2)
    assert apply(swap, parse_word("a", 2)) == parse_word("b", 2)
    assert apply(swap, parse_word("b", 2)) == parse_word("a", 2)
    assert apply(shear, parse_word("a", 2)) == parse_word("ab", 2)
    assert apply(shear, parse_word("b", 2)) == parse_word("b", 2)


def test_json_round_trip():
    psi = Automorphism.from_moves(
        2, (PermutationMove(2, (-2, 1)), WhiteheadMove(2, 1, ("fix", "conjugate")))
    )
    data = automorphism_to_json(psi)
    assert data["images"] == [str(img) for img in psi.images]
    again = automorphism_from_json(data)
    assert again.images == psi.images


def test_json_rejects_mismatched_images():
    psi = Automorphism.from_move(PermutationMove(2, (2, 1)))
    data = automorphism_to_json(psi)
    data["images"] = ["a", "b"]
    with pytest.raises(WordError):
        automorphism_from_json(data)


def test_move_validation():
    with pytest.raises(WordError):
        PermutationMove(2, (1, 1))
    with pytest.raises(WordError):
        WhiteheadMove(2, 1, ("left", "fix"))  # multiplier slot must be fixed
    with pytest.raises(WordError):
        WhiteheadMove(2, 1, ("fix", "sideways"))
