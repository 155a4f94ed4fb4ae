"""wzlab: exact verification of a WZ telescoping certificate and the
family of hypergeometric supercongruences it implies.

Layers, bottom to top: ``exact`` (rationals, Z/p^e, valuations),
``sequences`` (Euler/Bernoulli/harmonic/Pochhammer), ``series`` (the sums
under test, exact and fast-modular paths), ``poly``/``wz`` (the certificate
engine and telescoping decompositions), ``claims`` (the congruence registry,
checkpoint suite and scan reports), ``cli`` (the wzlab command).
"""

from .claims import (
    CHECKPOINT_IDS,
    CLAIM_IDS,
    REGISTRY,
    PredicateViolation,
    Report,
    Verdict,
    evaluate_claim,
    evaluate_sigma_identities,
    guo_schlosser_p3_check,
    proof_step_checks,
    scan,
)
from .exact import (
    NonPIntegral,
    NotInvertible,
    Rat,
    Residue,
    ValuedResidue,
    fermat_quotient_2,
    legendre_symbol,
    mod_inverse,
    padic_valuation,
    reduce_mod,
)
from .sequences import (
    bernoulli_poly_mod,
    central_binomial,
    euler_mod,
    euler_numbers,
    harmonic,
    pochhammer,
)
from .series import (
    MAIN,
    SeriesSpec,
    main_term,
    partial_sum_exact,
    partial_sum_mod,
    tail_vanishing_check,
)
from .wz import (
    Certificate,
    CertificateFormatError,
    NotIdentity,
    ShiftRatioMismatch,
    builtin_certificate,
    eval_F,
    eval_G,
    kernel_value,
    load_certificate,
    telescoping_decomposition_1,
    telescoping_decomposition_2,
    verify_pair_numeric,
    verify_pair_symbolic,
)

__version__ = "0.1.0"
