"""Exact invariants of squarefree path and cycle ideals.

Extended binomial coefficients, alpha-vectors with a brute-force oracle,
beta transforms and Hilbert depth, and exact checks of the inequality
families built from them.
"""

__version__ = "0.1.0"

from .extbinom import binom, coeff_row, ext_binom, ext_binom_ie  # noqa: E402
from .hilbert import (  # noqa: E402
    alpha_from_beta,
    beta_from_alpha,
    beta_incremental,
    chu_vandermonde,
    depth_bounds_cycle,
    depth_bounds_path,
    phi,
    qdepth,
)
from .ideals import (  # noqa: E402
    AlphaVector,
    CycleFamily,
    GeneralIdealSpec,
    PathFamily,
    QuotientId,
    RunSequence,
    alpha_cycle_ideal,
    alpha_cycle_quotient,
    alpha_cycle_rel,
    alpha_path_ideal,
    alpha_path_quotient,
    alpha_vector,
    enumerate_alpha,
    in_cycle_ideal,
    in_path_ideal,
    monomial_to_seq,
    seq_to_monomial,
)
