"""Exact spinor algebra, twisted descent conditions and fixed point localization."""

from types import ModuleType as _ModuleType

from .clifford import (
    CliffordElement,
    blade_sign,
    clifford_product,
    max_dim,
    reversal,
    vector_conjugation,
    volume_element,
)
from .laurent import HalfIntLaurent, Limit, RationalFunction
from .localization import (
    FixedPointDatum,
    IndexResult,
    IntegralityError,
    VanishingViolation,
    contribution,
    equivariant_index,
    generate_tangent_exponents,
    generate_twist_exponents,
    limits,
    satisfies_inequality,
)
from .report import CheckRecord, Report
from .scalars import GaussianRational, I, TrigScalar
from .series import TruncatedSeries, ahat_factor_series, formal_genus_truncation
from .spin import (
    SpinMatrix,
    chirality_split,
    kappa,
    kernel_check,
    torus_spin_element,
    weight_eigencheck,
)
from .twist import (
    PowerProfile,
    UncoveredCase,
    closed_form_condition,
    cross_validate,
    oracle_condition,
)
from .weights import (
    EnumerationGuardError,
    Factor,
    GroupElementParams,
    RepDescriptor,
    RootOfUnity,
    Weight,
    delta_n_action,
    delta_weights,
    descends,
    element_action_on_rep,
    evaluate_weight,
    factor_weights,
    structure_group_generators,
    tangent_weight_assignment,
)

__version__ = "0.1.0"

__all__ = [k for k, v in dict(globals()).items() if not k.startswith("_") and not isinstance(v, _ModuleType)]
