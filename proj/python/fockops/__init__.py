"""Berezin-transform classification of Volterra-type and weighted composition
operators on Fock spaces.

Pairs are dicts in the config schema: {"g": [...]} or {"u": [...]}, with
optional "exponent" and "psi": {"a": ..., "b": ...}; complex numbers are
[re, im] pairs or plain reals.
"""

from ._core import (  # noqa: F401
    SCHEMA_VERSION,
    FockopsError,
    berezin_at,
    berezin_profile,
    build_matrix,
    classify,
    hilbert_schmidt_integral,
    kernel_image_norm,
    lp_integral,
    oracle_classify,
    run,
    spectral_summary,
)
