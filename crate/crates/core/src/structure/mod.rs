//! Kaplansky unitalization, nuclei, and the autotopism centralizer of
//! Family S pre-semifields.

mod centralizer;
mod semifield;

pub use centralizer::{
    centralizer_elements, centralizer_enumerate, gamma_a, verify_autotopism, AuditCounts, CentralizerElement,
    CentralizerReport,
};
pub use semifield::{nuclei, presemifield_nuclei, unitalize, unitalize_default, NucleiReport, NucleusData, Semifield};
