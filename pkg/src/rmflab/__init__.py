"""Desk-scale lab for Dirichlet polynomials with random multiplicative
coefficients: exact divisor tables, seeded Steinhaus sampling, certified
supremum search, and moment experiments."""

from ._kernels import BACKEND
from .dirichlet import (DirichletPolynomial, GridSpec, INV_SQRT_N,
                        MomentEstimate, SupResult, UNNORMALIZED,
                        bohr_lift_eval, empirical_moment, eval_at, eval_grid,
                        expected_moment_exact, independent_moment_exact,
                        restrict_support, sup_search)
from .errors import (BudgetError, ConfigError, ContractError, DomainError,
                     InfeasibleError, NumericalError, RmflabError)
from .experiments import ExperimentConfig, ExperimentReport, run_experiment
from .numbercore import (ConstructionFamily, DivisorTables, FactorSieve,
                         RegularityProfile, build_construction,
                         build_divisor_tables, build_sieve,
                         divisor_power_sum, hardy_ramanujan_count,
                         harmonic_square_partial_sum, irregular_sum,
                         permutation_pair_count, regularity_profile,
                         restricted_second_moment,
                         short_interval_regular_sum, tau_k, tau_restricted,
                         tau_restricted_regular)
from .reporting import emit_outputs
from .rmf import (IndependentSample, MultiplicativeSample, PrimePhaseTable,
                  derive_seed, extend_multiplicatively, sample_independent,
                  sample_phases)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BudgetError",
    "ConfigError",
    "ConstructionFamily",
    "ContractError",
    "DirichletPolynomial",
    "DivisorTables",
    "DomainError",
    "ExperimentConfig",
    "ExperimentReport",
    "FactorSieve",
    "GridSpec",
    "INV_SQRT_N",
    "IndependentSample",
    "InfeasibleError",
    "MomentEstimate",
    "MultiplicativeSample",
    "NumericalError",
    "PrimePhaseTable",
    "RegularityProfile",
    "RmflabError",
    "SupResult",
    "UNNORMALIZED",
    "bohr_lift_eval",
    "build_construction",
    "build_divisor_tables",
    "build_sieve",
    "derive_seed",
    "divisor_power_sum",
    "emit_outputs",
    "empirical_moment",
    "eval_at",
    "eval_grid",
    "expected_moment_exact",
    "extend_multiplicatively",
    "hardy_ramanujan_count",
    "harmonic_square_partial_sum",
    "independent_moment_exact",
    "irregular_sum",
    "permutation_pair_count",
    "regularity_profile",
    "restrict_support",
    "restricted_second_moment",
    "run_experiment",
    "sample_independent",
    "sample_phases",
    "short_interval_regular_sum",
    "sup_search",
    "tau_k",
    "tau_restricted",
    "tau_restricted_regular",
]
