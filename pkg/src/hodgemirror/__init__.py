"""Exact closed and open mirror symmetry for one-parameter Calabi-Yau threefolds.

Everything is computed over the rationals with :class:`fractions.Fraction`;
the only transcendental constants are the formal symbols of
:class:`~hodgemirror.series.FormalConstant`.
"""

from .series import (FormalConstant, PuiseuxLogSeries, exp_series, log_series, series_compose,
                     series_reverse, theta, theta_antiderivative)
from .picard_fuchs import (FrobeniusBasis, PFOperator, apply_operator, frobenius_mum_basis,
                           hypergeometric_operator, quintic_operator, solve_inhomogeneous)
from .closed import (ClosedMirrorData, IntegralMonodromy, MirrorMap, closed_pipeline,
                     flat_period_matrix, instanton_invert, limiting_period_matrix, mirror_map,
                     monodromy_matrices, multicover_sum, prepotential_recover, yukawa_coupling)
from .extension import (InconsistentChargeError, SuperpotentialDecomposition, abel_jacobi_limit,
                        domain_wall, extended_monodromy, infinitesimal_invariant,
                        ogw_axioms_check, ogw_table_from_ntilde, open_potential_q,
                        real_quintic_tau, superpotential, superpotential_decompose)
from .hodge import (NilpotentOperator, WeightFiltration, check_filtration_properties,
                    extended_candidate_filtration, extended_filtration_check, gamma_class,
                    weight_filtration)

__version__ = "0.1.0"

__all__ = [
    "ClosedMirrorData",
    "FormalConstant",
    "FrobeniusBasis",
    "InconsistentChargeError",
    "IntegralMonodromy",
    "MirrorMap",
    "NilpotentOperator",
    "PFOperator",
    "PuiseuxLogSeries",
    "SuperpotentialDecomposition",
    "WeightFiltration",
    "abel_jacobi_limit",
    "apply_operator",
    "check_filtration_properties",
    "closed_pipeline",
    "domain_wall",
    "exp_series",
    "extended_candidate_filtration",
    "extended_filtration_check",
    "extended_monodromy",
    "flat_period_matrix",
    "frobenius_mum_basis",
    "gamma_class",
    "hypergeometric_operator",
    "infinitesimal_invariant",
    "instanton_invert",
    "limiting_period_matrix",
    "log_series",
    "mirror_map",
    "monodromy_matrices",
    "multicover_sum",
    "ogw_axioms_check",
    "ogw_table_from_ntilde",
    "open_potential_q",
    "prepotential_recover",
    "quintic_operator",
    "real_quintic_tau",
    "series_compose",
    "series_reverse",
    "solve_inhomogeneous",
    "superpotential",
    "superpotential_decompose",
    "theta",
    "theta_antiderivative",
    "weight_filtration",
    "yukawa_coupling",
]
