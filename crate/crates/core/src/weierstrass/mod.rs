//! Elliptic curves with full rational 2-torsion and their 2-descent map.

mod curve;
mod descent;
mod reduction;

pub use curve::{ECPoint, FactoredCubicCurve};
pub use descent::{
    delta2, delta2_is_homomorphism_check, expected_local_image_order, global_torsion_delta2_membership,
    image_by_reduction, local_kummer_image, local_torsion_delta2_membership, two_torsion_delta2_image, KummerSampling,
    SquareClassPair,
};
pub use reduction::{
    good_reduction, reduction_count, two_primary_torsion_is_two_torsion, within_hasse_bound, TorsionCertificate,
};
