"""Laboratory for cellular automata over Z^d and free groups: exact 1D
decision procedures, Garden of Eden window searches, entropy computations,
linear automata over group rings, and the classical free-group
counterexamples."""

from .automaton import (
    CellularAutomaton,
    apply_to_finite_config,
    apply_to_pattern,
    apply_to_periodic,
    compose,
    equivariance_spot_check,
    identity_ca,
    minimal_memory_set,
    wolfram_number,
    wolfram_rule,
)
from .decide1d import (
    Verdict,
    count_preimages,
    decide_injective,
    decide_preinjective,
    decide_surjective,
    image_presentation,
    me_check_subshift,
)
from .entropy import (
    image_entropy_check,
    no_surjection_bigger_alphabet_check,
    pattern_count_entropy,
    perron_entropy,
    tiling_entropy_bound_check,
)
from .errors import BudgetExceededError, GroupMismatchError, UnsupportedGroupError
from .goe_search import (
    SearchBudget,
    find_goe_pattern,
    find_me_pair,
    greedy_tiling,
    image_pattern_set,
    me_check,
    n0_bound,
    semi_decide,
)
from .groups import FreeGroup, Zd
from .linear_ca import (
    GroupRingElement,
    MatrixCA,
    adjoint,
    convolution,
    duality_check,
    involution,
    kernel_finite_support,
    to_cellular_automaton,
)
from .patterns import Alphabet, BINARY, FiniteConfig, Pattern, PeriodicConfig
from .subshift import (
    SFTPresentation,
    SoficPresentation1D,
    determinize,
    even_shift,
    full_shift,
    golden_mean,
    hard_ball,
    irreducible,
    language_count,
    ledrappier,
    locally_admissible_count,
    mixing_gap,
    sofic_equal,
    word_appears,
)

__version__ = "0.1.0"
