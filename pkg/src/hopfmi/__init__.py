"""Exact computer algebra for the Hopf algebras of decorated multi-indices and rooted forests."""
__version__ = "0.1.0"

from hopfmi.errors import (
    AlphabetError,
    BoundError,
    HopfMIError,
    ParseError,
    SortError,
    WeightError,
)
from hopfmi.linear import LinComb
from hopfmi.multiindex import (
    MICut,
    MonomialBag,
    MultiIndex,
    bags_of_degree,
    dbar,
    dbar_pow,
    d_partial,
    mi_admissible_cuts,
    novikov,
    weight_minus_one_monomials,
)
from hopfmi.forests import (
    Forest,
    Tree,
    antipode_bck,
    bck_cuts,
    bminus,
    bplus,
    coproduct_bck,
    cut_graft_counts,
    enumerate_forests,
    enumerate_trees,
    gl_forest,
    graft,
    guin_oudom_forest,
    tree_sigma,
)
from hopfmi.lot import (
    Lbar,
    antipode_lot,
    coproduct_dual_oracle,
    coproduct_lot,
    gl_bags,
    go_bags,
)
from hopfmi.fertility import jmath, phi, phi_preimage
from hopfmi.bseries import Poly, bseries_truncated, elementary_differential
from hopfmi.textio import format_lincomb, parse
from hopfmi.verify import ALL_IDENTITIES, VerifyReport, verify_identity

__all__ = [
    "__version__",
    "AlphabetError",
    "BoundError",
    "HopfMIError",
    "ParseError",
    "SortError",
    "WeightError",
    "MICut",
    "MonomialBag",
    "MultiIndex",
    "bags_of_degree",
    "dbar",
    "dbar_pow",
    "d_partial",
    "mi_admissible_cuts",
    "novikov",
    "weight_minus_one_monomials",
    "Forest",
    "Tree",
    "antipode_bck",
    "bck_cuts",
    "bminus",
    "bplus",
    "coproduct_bck",
    "cut_graft_counts",
    "enumerate_forests",
    "enumerate_trees",
    "gl_forest",
    "graft",
    "guin_oudom_forest",
    "tree_sigma",
    "Lbar",
    "antipode_lot",
    "coproduct_dual_oracle",
    "coproduct_lot",
    "gl_bags",
    "go_bags",
    "LinComb",
    "jmath",
    "phi",
    "phi_preimage",
    "Poly",
    "bseries_truncated",
    "elementary_differential",
    "format_lincomb",
    "parse",
    "ALL_IDENTITIES",
    "VerifyReport",
    "verify_identity",
]
