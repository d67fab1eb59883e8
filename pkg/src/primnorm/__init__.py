"""Whitehead-orbit analysis and distortion certificates for free groups."""

from .words import (
    CyclicWord,
    ParseError,
    RankError,
    Word,
    WordError,
    abelianize,
    canonical_rotation,
    concat,
    cyclic_reduce,
    free_reduce,
    invert,
    parse_word,
    power,
)
from .whitehead_graph import WhiteheadGraph, build, cut_vertices, is_connected
from .autos import (
    Automorphism,
    PermutationMove,
    WhiteheadMove,
    abelianization_matrix,
    apply,
    compose,
    determinant,
    enumerate_permutation_autos,
    enumerate_whitehead_autos,
)
from .orbit import (
    CapExceededError,
    LevelSet,
    ReductionTrace,
    is_primitive,
    is_separable,
    minimal_level_set,
    orbit_equal,
    random_primitive,
    reduce_to_minimal,
)
from .stabilizer import McCoolGraph, build_mccool_graph, loop_generators, stabilizer_in_aut_plus
from .qm import BrooksQm, brooks, count_occurrences, estimate_defect, homogenized
from .certify import (
    BoundedSeparable,
    DistortionVerdict,
    Undistorted,
    classify,
    primitive_norm_upper_bound,
    verify,
)
from .family import check_family, staircase_word

__version__ = "0.1.0"
