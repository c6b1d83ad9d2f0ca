"""Exact computations with the big bracket on wedge(V) (x) wedge(V*), Gerstenhaber-Schack
complexes of finite bialgebras, the resolutions computing H_GS(U g), and the
linear algebra behind intrinsic formality of H."""

from .bracket import (
    Classification,
    ProtoStructure,
    ad,
    bracket,
    bracket_oracle,
    classify_proto,
    deformation_cohomology,
    mc_check,
    pairing_gram,
    verify_poisson,
)
from .formality import (
    boundary_construct,
    ce_differential,
    degree_census,
    h1_vanishing_check,
    invariant_form_space,
)
from .graded import Element, Monomial, dim_by_degree, enumerate_basis, koszul_sign, multiply
from .gs import FiniteBialgebra, GSCochain, builtin_bialgebra, gs_cohomology, gs_d1, gs_d2, gs_differential
from .lie import LieAlgebraData, lambda_element
from .linalg import ChainComplex, RationalMatrix, cohomology_dims, kernel_basis, rank, solve
from .tetra import (
    abelian_transport_check,
    coinduced_differential,
    hom_complex,
    induced_differential,
    yoneda_product,
)

__version__ = "0.1.0"
