//! Isotopisms between pre-semifields: verification, the constructive
//! isotopisms within Family S, degree screening and class counting.

mod family_s;
mod monomial;
mod reductions;
mod screen;
mod strong;
mod triple;

pub use family_s::{
    count_classes_family_s, orbit_of_a, qbar_isotopism, verify_between, Branch, Case, ClassCensus, ClassMember,
    EvidenceKind, IsotopyClass, OrbitEntry, OrbitReport, PairEvidence, CENSUS_CAP,
};
pub use monomial::{monomial_search, MonomialTriple, SShape, SearchOutcome};
pub use reductions::{
    b3_class_bound, b4_admissible, b4_class_bound, bh_reduction_q_big, component_swap, dickson_reduction_q1,
    BierbrauerBound, DicksonReduction,
};
pub use screen::{
    compare, degree_pattern_screen, zp_noniso_check, CompareReport, DegreeRelation, DegreeVerdict, Verdict, ZpCheck,
};
pub use strong::{calibration_search, strong_vs_plain_isotopy, twisted_square, StrongReport, StrongVerdict, CALIBRATION_CAP};
pub use triple::{fit_outer, verify_isotopism, Isotopism, Verifier};
