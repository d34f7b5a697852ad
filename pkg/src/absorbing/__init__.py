"""Finite commutative rings, their ideal lattices and the (weakly) 1-absorbing prime hierarchy."""

from .errors import AbsorbingError, CapExceeded, DomainError, InternalError, InvalidSpec, ParseError
from .ideals import (
    Ideal,
    annihilator,
    colon,
    ideal_generated,
    ideal_sum,
    intersect,
    make_ideal,
    power,
    product,
    radical,
)
from .lattice import (
    IdealLattice,
    enumerate_ideals,
    jacobson_radical,
    maximal_ideals,
    minimal_primes_over,
    prime_ideals,
)
from .predicates import (
    PREDICATE_NAMES,
    ClassificationProfile,
    TripleZero,
    classify,
    find_triple_zero,
    is_almost_prime,
    is_free_triple_zero,
    is_one_absorbing_primary,
    is_one_absorbing_prime,
    is_primary,
    is_prime,
    is_triple_zero,
    is_two_absorbing,
    is_two_prime,
    is_weakly_one_absorbing_prime,
    is_weakly_prime,
    is_weakly_two_absorbing,
    witness,
)
from .ring import (
    FiniteRing,
    ModuleSpec,
    ValidationReport,
    build_idealization,
    build_product,
    build_quotient,
    build_zmod,
    is_field,
    is_local,
    is_reduced,
    is_unit,
    natural_module,
    nilradical,
    projection_module,
    validate_ring,
)
from .spec import Idealization, Product, Quotient, Zmod, build_spec, format_spec, parse_spec

__all__ = [
    "AbsorbingError",
    "CapExceeded",
    "ClassificationProfile",
    "DomainError",
    "FiniteRing",
    "Ideal",
    "IdealLattice",
    "Idealization",
    "InternalError",
    "InvalidSpec",
    "ModuleSpec",
    "PREDICATE_NAMES",
    "ParseError",
    "Product",
    "Quotient",
    "TripleZero",
    "ValidationReport",
    "Zmod",
    "annihilator",
    "build_idealization",
    "build_product",
    "build_quotient",
    "build_spec",
    "build_zmod",
    "classify",
    "colon",
    "enumerate_ideals",
    "find_triple_zero",
    "format_spec",
    "ideal_generated",
    "ideal_sum",
    "intersect",
    "is_almost_prime",
    "is_field",
    "is_free_triple_zero",
    "is_local",
    "is_one_absorbing_primary",
    "is_one_absorbing_prime",
    "is_primary",
    "is_prime",
    "is_reduced",
    "is_triple_zero",
    "is_two_absorbing",
    "is_two_prime",
    "is_unit",
    "is_weakly_one_absorbing_prime",
    "is_weakly_prime",
    "is_weakly_two_absorbing",
    "jacobson_radical",
    "make_ideal",
    "maximal_ideals",
    "minimal_primes_over",
    "natural_module",
    "nilradical",
    "parse_spec",
    "power",
    "prime_ideals",
    "product",
    "projection_module",
    "radical",
    "validate_ring",
    "witness",
]
