//! Grades of ideals and Cohen-Macaulayness with respect to Serre classes.
//!
//! The library computes, over polynomial rings GF(p)[x_1..x_n] and their
//! quotients, the Koszul and Ext grades of an ideal on a finitely presented
//! graded module relative to a decidable Serre class, verifies weak regular
//! sequences, and decides class-relative Cohen-Macaulayness through the
//! annihilator product of the below-top local cohomology modules (computed
//! by graded duality). A combinatorial oracle for monomial inputs provides
//! independent ground truth for the whole homological stack.
//!
//! Batch-parallel inner loops (cohomology layer scans, monomial prime
//! sweeps, link homology) run on rayon under the default `parallel`
//! feature and fall back to sequential iteration without it; results are
//! identical either way.

pub mod cm;
pub mod error;
pub mod exec;
pub mod field;
pub mod grade;
pub mod groebner;
pub mod ideal;
pub mod koszul;
pub mod module;
pub mod monomial;
pub mod oracle;
pub mod poly;
pub mod resolution;
pub mod ring;
pub mod serre;
pub mod vector;

pub use cm::{
    a_invariant, quotient_stability_check, s_cm_oracle_locus, s_cm_oracle_sweep, s_cm_test,
    s_dimension, s_height, CMReport, CmPart, CmRoute, StabilityReport,
};
pub use error::{Error, Result};
pub use field::PrimeField;
pub use grade::{
    check_weak_sequence, classical_grade, ext_grade, find_max_weak_sequence, koszul_grade,
    koszul_grade_on_sequence, named_depth, GradeReport, GradeRoute, GradeValue, LayerWitness,
    NamedDepth, WeakSequenceReport, WeakSequenceStep, Witnesses,
};
pub use groebner::{buchberger, normal_form, syzygy_module, GroebnerBasis};
pub use ideal::Ideal;
pub use koszul::{koszul_cohomology, KoszulComplex};
pub use module::FPModule;
pub use monomial::{Monomial, MonomialOrder};
pub use oracle::MonomialIdeal;
pub use poly::{div_rem, parse_poly, Polynomial};
pub use resolution::{ext_module, free_resolution, FreeResolution};
pub use ring::{QuotientRing, Ring};
pub use serre::SerreClassSpec;
