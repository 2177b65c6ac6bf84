"""Colouring towers, verifiers, subset colourings and bound tables."""

from ._core import (
    Error,
    InvalidArgument,
    InvalidData,
    ParseError,
    SubsetColouring,
    Tower,
    WidthCapExceeded,
    alpha,
    alpha_digits,
    chain_bounds,
    comparison_table,
    corollary_bound,
    delta,
    eta,
    eta_effective,
    f_of_r,
    histogram,
    is_caterpillar,
    k_complete_lower,
    k_n_r_bracket,
    load_tower,
    parse_tower,
    schur_compose,
    schur_search,
    subset_colouring,
    tower,
    type_of,
    verify,
)

__all__ = [name for name in dir() if not name.startswith("_")]
