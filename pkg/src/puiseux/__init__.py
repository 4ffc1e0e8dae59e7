"""Exact factorization theory for additive monoids of nonnegative rationals.

Descriptors name a generating family (builtin infinite families or explicit
finite lists); on top of them the package computes classifications, atom
certificates, unique atomic decompositions, membership verdicts with
machine-checkable certificates, factorization and length-set enumerations
with completeness certificates, and divisibility-chain witnesses.  All
arithmetic is exact; nothing here touches floating point.
"""

from .chains import (
    ChainVerification,
    ChainWitness,
    DescentMeasure,
    descent_measure,
    gap_chain,
    grams_chain,
    verify_chain,
)
from .decomposition import (
    AtomicDecomposition,
    Bounds,
    Member,
    MembershipVerdict,
    NotMember,
    Unknown,
    atomic_decompose,
    divides,
    enumerate_decompositions,
    has_unique_decomposition,
    member,
    render_decomposition,
)
from .errors import NotInMonoidError, UnsupportedFamilyError
from .factorization import (
    AtomCertificate,
    Completeness,
    Factorization,
    FactorizationSet,
    LengthSet,
    enumerate_factorizations,
    factorizations_of_length,
    is_atom,
    length_set,
    relevant_indices,
)
from .monoids import (
    ClassificationReport,
    Flag,
    GeneratorTerm,
    IndexSet,
    Monoid,
    classify,
    custom,
    descriptor_from_dict,
    descriptor_to_dict,
    gap,
    generator,
    generator_value,
    geometric,
    grams,
    index_set_for_prime,
    mixed_5_2,
    normalize_strongly_bounded,
    power_reciprocal,
    prime_reciprocal,
    scale,
)
from .primes import PrimeSequence, factor, is_prime, nth_prime, primes_up_to
from .rationals import (
    ExactRational,
    make_rational,
    num_den,
    p_adic_valuation,
    parse_rational,
)

__version__ = "0.1.0"

__all__ = [
    "AtomCertificate",
    "AtomicDecomposition",
    "Bounds",
    "ChainVerification",
    "ChainWitness",
    "ClassificationReport",
    "Completeness",
    "DescentMeasure",
    "ExactRational",
    "Factorization",
    "FactorizationSet",
    "Flag",
    "GeneratorTerm",
    "IndexSet",
    "LengthSet",
    "Member",
    "MembershipVerdict",
    "Monoid",
    "NotInMonoidError",
    "NotMember",
    "PrimeSequence",
    "Unknown",
    "UnsupportedFamilyError",
    "atomic_decompose",
    "classify",
    "custom",
    "descent_measure",
    "descriptor_from_dict",
    "descriptor_to_dict",
    "divides",
    "enumerate_decompositions",
    "enumerate_factorizations",
    "factor",
    "factorizations_of_length",
    "gap",
    "gap_chain",
    "generator",
    "generator_value",
    "geometric",
    "grams",
    "grams_chain",
    "has_unique_decomposition",
    "index_set_for_prime",
    "is_atom",
    "is_prime",
    "length_set",
    "make_rational",
    "member",
    "mixed_5_2",
    "normalize_strongly_bounded",
    "nth_prime",
    "num_den",
    "p_adic_valuation",
    "parse_rational",
    "power_reciprocal",
    "prime_reciprocal",
    "primes_up_to",
    "relevant_indices",
    "render_decomposition",
    "scale",
    "verify_chain",
]
