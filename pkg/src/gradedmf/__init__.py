"""Exact workbench for graded matrix factorizations of f = prod_i (x + s_i q).

The package computes, over the rationals and without any rounding:

* the rank-one factorizations F_I indexed by proper nonempty subsets I of
  the root set, their morphism spaces in the homotopy category, phases and
  spectra;
* the grading shift tau, the triangulated shift T (with T^2 = tau^h on the
  nose), direct sums, mapping cones and reduction to constant-free form;
* exceptionality and strong exceptionality of the length-2mu collections
  attached to an order of the roots, Gram matrices, left mutations and the
  mutation-chain Serre comparison;
* the generation replay: every triangle used to show the collection
  generates all shifted rank-one objects and the stabilized residue field,
  re-verified as an explicit cone computation.
"""

__version__ = "0.1.0"

from .poly import (
    ANY_TWIST,
    BivariatePolynomial,
    PolySyntaxError,
    poly_parse,
    poly_print,
)
from .params import (
    DeformationParams,
    DuplicateRootError,
    GenericityCertificate,
    NonzeroSumError,
    elementary_symmetric,
    is_generic_isolated,
    params_from_roots,
    resultant_dehom,
)
from .mf import (
    GradedMF,
    Homotopy,
    InvalidFactorization,
    MFMorphism,
    MismatchedPotential,
    NotReducedError,
    compose,
    cone,
    direct_sum,
    identity_morphism,
    make_mf,
    make_morphism,
    mf_from_json,
    mf_to_json,
    mf_violations,
    morphism_shift_power,
    morphism_tau,
    morphism_translate,
    morphism_violations,
    phase,
    reduce_mf,
    shift_power,
    tau_shift,
    translate,
    zero_mf,
)
from .rank_one import (
    DecompositionMismatchError,
    EmptyOrFullSubsetError,
    RankNotOneError,
    UnrecognizedFactorError,
    build_f_I,
    build_phi,
    build_phibar,
    monomial_split_x_q,
    rank1_normal_form,
    recognize_rank1_sum,
    residue_field_stab,
    split_components,
    stab_codim2,
    subset_label,
)
from .hom import (
    HomTable,
    Spectrum,
    audit_hom_calls,
    hom_basis,
    hom_dim,
    hom_table,
    is_nullhomotopic,
    spectrum,
    twist_window,
)
from .oracle import oracle_hom_dim
from .collections import (
    CollectionReport,
    GenerationReport,
    IsoVerdict,
    SerreResult,
    check_collection,
    collection_objects,
    is_exceptional,
    iso_equivalent,
    left_mutation_step,
    object_label,
    serre_check,
    t_power_dims,
    verify_generation,
)
