"""Heights of cyclotomic and ternary inclusion-exclusion polynomials."""

__version__ = "0.1.0"

from .cyclo import (  # noqa: E402
    HeightRecord,
    TernaryTriple,
    height,
    inclusion_exclusion_coeffs,
    phi_coeffs,
    reduce_to_core,
)
from .constructions import (  # noqa: E402
    explore_M,
    jump_probe,
    jump_sequence,
    lemma1_triple,
    lemma2_range,
    lemma4_triple,
    prime_chain,
    theorem1_witness,
    verify_certificate,
)

__all__ = [
    "HeightRecord",
    "TernaryTriple",
    "explore_M",
    "height",
    "inclusion_exclusion_coeffs",
    "jump_probe",
    "jump_sequence",
    "lemma1_triple",
    "lemma2_range",
    "lemma4_triple",
    "phi_coeffs",
    "prime_chain",
    "reduce_to_core",
    "theorem1_witness",
    "verify_certificate",
]
