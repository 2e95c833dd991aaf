"""Exact Hilbert series of 3d N=4 Coulomb branches via the monopole formula."""

from .series import FugacityGroup, FugacityPoly, TruncatedSeries, geometric_series, plethystic_exp
from .rootdata import RootDatum, builtin, product, so_even, so_odd, sp, su, torus, u
from .theory import (
    BAD,
    GOOD,
    UGLY,
    Classification,
    GaugeTheory,
    MatterWeights,
    build_abelian,
    build_quiver,
    build_so_instanton,
    classify,
    monopole_dimension,
    quiver_balance,
)
from .monopole import EnumerationPlan, LaurentWindow, enumerate_dominant, glue_series, hilbert_series, plan_enumeration

__version__ = "0.1.0"

__all__ = [
    "BAD",
    "GOOD",
    "UGLY",
    "Classification",
    "EnumerationPlan",
    "FugacityGroup",
    "FugacityPoly",
    "GaugeTheory",
    "LaurentWindow",
    "MatterWeights",
    "RootDatum",
    "TruncatedSeries",
    "build_abelian",
    "build_quiver",
    "build_so_instanton",
    "builtin",
    "classify",
    "enumerate_dominant",
    "geometric_series",
    "glue_series",
    "hilbert_series",
    "monopole_dimension",
    "plan_enumeration",
    "plethystic_exp",
    "product",
    "quiver_balance",
    "so_even",
    "so_odd",
    "sp",
    "su",
    "torus",
    "u",
]
