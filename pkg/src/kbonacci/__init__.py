"""k-bonacci substitution combinatorics and thermodynamic formalism.

Exact language machinery for the k-bonacci substitutions, the break
function delta measuring distance to the subshift, the renormalization
operator on potentials (g + h) / delta^alpha with its explicit fixed
point, and numerical pressure estimation exhibiting the freezing phase
transition.
"""

from .errors import (
    BudgetExceededError,
    InconclusiveWindowError,
    KbonacciError,
    OutOfIndexError,
    UncertifiedConfigurationError,
)
from .potentials import CylinderFunction, Potential
from .pressure import (
    BetaCReport,
    BispecialLadder,
    PressureCurve,
    bispecial_ladder,
    bispecial_length_law,
    birkhoff_bounds,
    brute_bispecials,
    default_beta_grid,
    find_beta_c,
    overlap_length,
    overlap_ratios,
    pressure_bounds,
    pressure_curve,
    recurrence_gaps,
    verify_ladder,
)
from .recognition import (
    Configuration,
    CutPointSet,
    INFINITE,
    brute_delta,
    cut_points,
    delta,
    delta_after_power,
    delta_shifted,
    distance_to_subshift,
    maximal_prefix_after_power,
    tribonacci_appendix_checks,
    verify_recognizability,
)
from .renorm import (
    ConvergenceStudy,
    convergence_study,
    eval_potential,
    fixed_point_U,
    renorm_apply,
    renorm_once,
    renorm_power,
    shift_config,
    substitute_config,
    tribonacci_fixed_point_cases,
    verify_fixed_point,
)
from .sampling import random_certified_configuration, sample_configurations
from .spectral import (
    GrowthDecomposition,
    SpectralData,
    ergodic_integral,
    growth_decomposition,
    left_eigenvector,
    letter_frequencies,
    perron_root,
    spectral_data,
    tribonacci_cardan,
    word_frequency,
)
from .substitution import (
    FixedPointStream,
    Substitution,
    check_recurrence,
    fixed_prefix,
    is_kbonacci,
    kbonacci,
)
from .words import LanguageIndex, build_language, complexity, in_language, special_words

__version__ = "0.1.0"
