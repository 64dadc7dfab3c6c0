"""Exact total-unimodularity decisions, certificates, and constructive
witness extraction for disjoint (mixed) hypergraph incidence matrices."""

from .core import (
    Hypergraph,
    MixedHypergraph,
    SubSelection,
    as_mixed,
    fixture,
    incidence_matrix,
    induce,
    is_disjoint,
    is_eulerian,
    load_instance,
    mixed_from_matrix,
    support_size,
)
from .detect import (
    MixedOddCycleWitness,
    MixedOddTreeHouseWitness,
    OddCycleWitness,
    OddTreeHouseWitness,
    compute_ocp,
    decide_unimodular_disjoint,
    decide_unimodular_mixed_disjoint,
    find_mixed_odd_cycle,
    find_mixed_odd_tree_house,
    find_odd_cycle,
    find_odd_tree_house,
    verify_witness,
)
from .extract import extract_witness
from .gen import GenConfig, Plant, Xoshiro256StarStar, generate
from .linalg import (
    camion_unimodular,
    camion_unimodular_mixed,
    det_exact,
    is_almost_tu,
    is_tu_bruteforce,
    max_abs_subdet,
)
from .mixed import (
    build_r_matrix,
    classify_almost_tu_disjoint,
    even_cycle_nullvector,
    normalize_to_hypergraph,
)

__version__ = "0.1.0"
