__all__ = ["numParams", "hvksError", "realFunction", "spectralMeasure",
           "eigendecompose", "apply_function", "pushforward_check",
           "commutes", "common_generator", "pureState", "bornDistribution",
           "ghzSystem", "born_distribution", "expectation", "build_ghz",
           "finiteHVModel", "observableRegistry", "trivial_embedding",
           "generator_embedding", "check_ks1", "check_ks2",
           "check_product_rule", "check_sum_rule", "signConstraint",
           "contradictionReport", "derive_constraints", "exhaustive_search",
           "run_ks_theorem", "sphereObservable", "sphereDensity",
           "quadratureEstimate", "monteCarloEstimate",
           "sphere_observable_from_matrix", "value_function",
           "density_from_state", "ks1_probability", "ks2_pointwise_check",
           "parse", "evaluate", "pretty_print", "verificationReport",
           "__version__"]

__version__ = "0.1.0"

from .num_params import numParams
from .exceptions import hvksError
from .matrix_core import (realFunction, spectralMeasure, eigendecompose,
                          apply_function, pushforward_check, commutes,
                          common_generator)
from .quantum_state import (pureState, bornDistribution, ghzSystem,
                            born_distribution, expectation, build_ghz)
from .hv_embedding import (finiteHVModel, observableRegistry,
                           trivial_embedding, generator_embedding, check_ks1,
                           check_ks2, check_product_rule, check_sum_rule)
from .ghz_contradiction import (signConstraint, contradictionReport,
                                derive_constraints, exhaustive_search,
                                run_ks_theorem)
from .sphere_model import (sphereObservable, sphereDensity,
                           quadratureEstimate, monteCarloEstimate,
                           sphere_observable_from_matrix, value_function,
                           density_from_state, ks1_probability,
                           ks2_pointwise_check)
from .operator_expr import parse, evaluate, pretty_print
from .report import verificationReport
