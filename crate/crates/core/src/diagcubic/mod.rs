//! Diagonal cubics, Euler's 3-covering and local triviality of its class.

mod certificate;
mod covering;
mod criteria;
mod curve;
mod witness;

pub use certificate::{local_divisibility_certificate, CertificateOptions, LocalCertificate, SpotCheck};
pub use covering::{projective_congruence, three_torsion_locus, Congruence, CoveringMap};
pub use criteria::{
    case_from_pattern, case_holds, corollary43_case_table, corollary43_check, lemma42_case, rational_three_torsion,
    zeta3_roots, zeta3_with_cube_multiple, zeta9, CaseId, CasePattern,
};
pub use curve::{CoordRing, DiagonalCubic, ProjPoint};
pub use witness::{verify_lemma42_point, Lemma42Witness};
