"""Subalgebra lattices of finite-dimensional left Leibniz algebras over GF(p)."""

from .algebra import (
    DiamondWitness,
    LeibnizAlgebra,
    OneGeneratorData,
    Signature,
    analyze_one_generator,
    check_left_leibniz,
    classify_subalgebras_onegen,
    diamond_witness,
    generated_subalgebra,
    leibniz_kernel,
    multiply,
    nilpotent_generator,
    one_generator_algebra,
    signature,
)
from .exactalg import (
    FieldElement,
    Matrix,
    Polynomial,
    PrimeField,
    PrimePowerFactorization,
    Subspace,
    canonicalize,
    contains,
    factor,
    intersect,
    inverse,
    minimal_polynomial,
    subspace_sum,
)
from .lattice import (
    LatticeMap,
    SubalgebraLattice,
    build_lattice,
    enumerate_subalgebras,
    find_isomorphisms,
    find_pentagon,
    interval,
    is_chain_product,
    is_vector_space_lattice,
    maximal_subalgebras,
)
from .verify import (
    CatalogSpec,
    VerificationReport,
    generate_catalog,
    run_verification,
    verify_diamond_exception,
    verify_kernel_fixed,
    verify_kernel_pair,
    verify_onegen_classification,
)

__version__ = "0.1.0"

__all__ = [
    "DiamondWitness",
    "LeibnizAlgebra",
    "OneGeneratorData",
    "Signature",
    "analyze_one_generator",
    "check_left_leibniz",
    "classify_subalgebras_onegen",
    "diamond_witness",
    "generated_subalgebra",
    "leibniz_kernel",
    "multiply",
    "nilpotent_generator",
    "one_generator_algebra",
    "signature",
    "FieldElement",
    "Matrix",
    "Polynomial",
    "PrimeField",
    "PrimePowerFactorization",
    "Subspace",
    "canonicalize",
    "contains",
    "factor",
    "intersect",
    "inverse",
    "minimal_polynomial",
    "subspace_sum",
    "LatticeMap",
    "SubalgebraLattice",
    "build_lattice",
    "enumerate_subalgebras",
    "find_isomorphisms",
    "find_pentagon",
    "interval",
    "is_chain_product",
    "is_vector_space_lattice",
    "maximal_subalgebras",
    "CatalogSpec",
    "VerificationReport",
    "generate_catalog",
    "run_verification",
    "verify_diamond_exception",
    "verify_kernel_fixed",
    "verify_kernel_pair",
    "verify_onegen_classification",
]
