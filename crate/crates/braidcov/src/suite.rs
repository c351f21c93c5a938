//! The verification suite with its independent parts run in parallel.

use braidcov_core::atlas::{assemble_report, classify, relator_image_check, AtlasError, ClassificationReport, SurfaceKind};
use braidcov_core::rewriting::{certify_claims, Budget, ClaimCertificate, SearchMode};

/// Claim certificates and the relator-image check run on separate threads;
/// the report is assembled once both finish, so the output does not depend on scheduling.
pub fn verify(n: u32, budget: &Budget) -> Result<ClassificationReport, AtlasError> {
    classify(SurfaceKind::Rp2, n)?;
    let (certificates, relators) =
        rayon::join(|| certify_claims(n, SearchMode::Seeded, budget), || relator_image_check(n, budget));
    assemble_report(n, certificates, relators)
}

/// Seeded certificates for several n at once.
pub fn certify_many(ns: &[u32], budget: &Budget) -> Vec<(u32, Vec<ClaimCertificate>)> {
    use rayon::prelude::*;
    ns.par_iter().map(|&n| (n, certify_claims(n, SearchMode::Seeded, budget))).collect()
}
