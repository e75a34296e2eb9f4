"""Series-parallel networks of unit resistors: exact enumeration, counting,
resistance distributions, binary-circuit closed forms, and asymptotics."""

from .asymptotics import (
    AsymptoticFit,
    ci_qn_limit_check,
    estimate_d_extrapolate,
    estimate_d_root,
    upper_bound,
    verify_gf_identities,
    zeta_three_halves_partial,
)
from .biscuits import (
    Biscuit,
    BiscuitClosedForms,
    biscuit_closed_forms,
    enumerate_biscuits,
    phi_parallel,
    phi_series,
    resistance_levels,
)
from .circuits import (
    UNIT,
    Circuit,
    canonicalize,
    depth,
    enumerate_circuits,
    invert,
    k_resistance,
    omnicircuit,
    parallel,
    parse,
    resistance,
    serialize,
    series,
)
from .counting import (
    CountTable,
    Partition,
    appearance_table,
    appearances_closed_form,
    circuits_from_partition,
    count_table,
    partitions,
)
from .distribution import (
    FloatSummary,
    ResistanceDistribution,
    SummaryRow,
    distributions,
    float_distributions,
    geometric_mean_check,
    mean_k,
    summary,
)
from .errors import (
    AlternationError,
    ArityError,
    BracketingError,
    BudgetExceededError,
    InternalConsistencyError,
    ParseError,
    SPCircuitsError,
    TableUnderflowError,
)
from .numerics import PowerSeries, binomial, bisect_root, euler_product

__version__ = "0.1.0"
