"""Decision procedures for Boolean combinations of alphabetic open sets and BSigma2 over finite and infinite words."""
from .algebra import (
    AlphImage,
    FiniteMonoid,
    Hom,
    RecognizedLanguage,
    alph_image,
    coset,
    generate,
    green_R_equivalent,
    idempotent_power,
    linked_pairs,
    syntactic_quotient,
    up_membership,
)
from .buchi import Buchi, lasso_accepts, parse_regex, recognize, regex_language, to_automaton
from .decide import (
    Answer,
    Block,
    Verdict,
    Witness,
    check_witness,
    construct_representation,
    decide_alphabetic_boolean,
    decide_bsigma2,
    decide_cantor_boolean,
    saturation_evidence,
    up_membership_basic,
    verify_representation,
)
from .errors import (
    BudgetExceeded,
    DepthExceeded,
    MonoidError,
    NotMember,
    NullableOmega,
    OmegaFragError,
    PreconditionViolated,
    RegexSyntaxError,
    TailKindMismatch,
)
from .monomials import (
    Monomial,
    contains,
    enumerate_k_monomials,
    equiv_k,
    equiv_k_inf,
    n_k,
    refine,
    to_sigma2_formula,
)
from .words import UPWord, alph, canonicalize, im, is_subword, up

__version__ = "0.1.0"
