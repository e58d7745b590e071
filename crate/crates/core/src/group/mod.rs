//! Finitely generated self-similar groups given by wreath recursions.

mod action;
mod checks;
mod commutator;
mod presentation;
mod quotient;
mod schreier;
mod source;
mod word;

pub use action::{portrait_group_order, VertexAction};
pub use checks::{
    check_fractal, check_mixing_certificate, check_super_strongly_fractal, kg_depth, subtree_transitivity,
    verify_pseudomixing, KgReport, LevelVerdict, MixingCertificate, ProjectionReport, ProjectionVerdict,
    PseudomixingReport,
};
pub use commutator::{commutator_search, validate_witness, CommutatorOutcome, CommutatorWitness, WITNESS_CHECK_DEPTH};
pub use presentation::{
    Generator, GeneratorJson, PresentationJson, WreathPresentation, DEFAULT_WORD_BUDGET,
};
pub use quotient::{FiniteQuotient, QuotientExport, QuotientTower, DEFAULT_ELEMENT_BUDGET};
pub use schreier::{orbit_labels, Perm, StabilizerChain};
pub use source::{names_at_depth, FullAut, GroupSource};
pub use word::{GroupWord, Letter};
