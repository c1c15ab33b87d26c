"""Deciding which torus knots and cables of torus knots realize a small
Seifert fibered space by non-integer surgery, with changemaker-lattice
certificates, standard bases, and surgery-diagram oracles."""

from .changemaker import (
    ChangemakerLattice,
    SigmaTuple,
    StandardBasis,
    VertexSetType,
    brown_criterion,
    build_cm_lattice,
    is_changemaker,
    match_plumbing,
    mu_norms,
    stable_from_torsion,
    standard_basis,
    vi_minimization,
    vi_sequence,
)
from .exact import neg_cf_eval, neg_cf_expand, parse_rational
from .kirby import (
    ChainDiagram,
    blow_down,
    marked_modification,
    reduce_to_empty,
    reverse_slam_dunk,
    slam_dunk,
)
from .knots import (
    AlexanderPoly,
    CableKnot,
    TorusKnot,
    alexander,
    cable_surgery,
    e_window,
    genus,
    parse_knot,
    surgery,
    torsion_coeffs,
    torus_surgery,
)
from .lattice import (
    GramLattice,
    SublatticeBasis,
    gram_of,
    is_irreducible,
    is_unbreakable,
    lattice_isomorphic,
    orthogonal_complement,
)
from .plumbing import (
    SeifertForm,
    StarPlumbing,
    epsilon,
    gram,
    is_quasi_alternating,
    normalize,
    orientation_reverse,
    q_form_eval,
    star_plumbing,
    surjectivity_check,
    verify_inequalities,
)
from .realize import RealizationQuery, RealizationResult, consistency_q9, realize

__version__ = "0.1.0"
