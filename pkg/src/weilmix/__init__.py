"""Exact mixing-rate bounds for tensor-product chains driven by Weil characters
of finite general linear, unitary, and symplectic groups, with brute-force
enumeration oracles and Monte Carlo verification at small rank."""

__version__ = "0.1.0"

SCHEMA_VERSION = 1

from .clgroups import Family, GroupSpec, group_order, make_spec  # noqa: E402
from .ffield import FieldSpec, SquareClass, ff_make, gf  # noqa: E402
from .fixdist import (  # noqa: E402
    fixed_space_distribution,
    gu_fixed_count_bound,
    rs_gu_fixed_dim,
    rs_sp_fixed_dim,
)
from .mixbounds import (  # noqa: E402
    ChainSpec,
    charbound_sum,
    chebyshev_lower,
    lower_closed,
    moments,
    profile,
    upper_closed,
    weighted_weil_sum,
)
from .mcengine import mc_fixed_dim, mc_transv_product, verify  # noqa: E402
from .transprod import (  # noqa: E402
    PairMode,
    SpClassLabel,
    classify_sp_pair,
    codim_dist_gl,
    codim_dist_gu,
    codim_dist_sp,
    sp_odd_class_dist,
)
from .weilchar import (  # noqa: E402
    WeilScalar,
    WeilVariant,
    weil_degree,
    weil_value_by_codim,
    weil_value_sp_odd_class,
)

__all__ = [
    "SCHEMA_VERSION",
    "ChainSpec",
    "Family",
    "FieldSpec",
    "GroupSpec",
    "PairMode",
    "SpClassLabel",
    "SquareClass",
    "WeilScalar",
    "WeilVariant",
    "charbound_sum",
    "chebyshev_lower",
    "classify_sp_pair",
    "codim_dist_gl",
    "codim_dist_gu",
    "codim_dist_sp",
    "ff_make",
    "fixed_space_distribution",
    "gf",
    "group_order",
    "gu_fixed_count_bound",
    "lower_closed",
    "make_spec",
    "mc_fixed_dim",
    "mc_transv_product",
    "moments",
    "profile",
    "rs_gu_fixed_dim",
    "rs_sp_fixed_dim",
    "sp_odd_class_dist",
    "upper_closed",
    "verify",
    "weighted_weil_sum",
    "weil_degree",
    "weil_value_by_codim",
    "weil_value_sp_odd_class",
]
