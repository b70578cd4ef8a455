//! The meridian-preserving map `G(K) → G(K̂)` and its verification.

use std::time::Instant;

use serde::Serialize;

use crate::alexander::{alexander_polynomial_knot, alexander_polynomial_with, verify_factorization};
use crate::construct::{LabeledDiagram, Origin};
use crate::error::{Error, Result};
use crate::freeword::{bounded_triviality, matching_relator, Presentation, TrivialityResult, Word, DEFAULT_BEAM, DEFAULT_DEPTH};
use crate::laurent::LaurentPoly;
use crate::par::{self, Exec};
use crate::tangle::Diagram;

/// A map between Wirtinger presentations sending each generator to a
/// generator. Meridians go to meridians by construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomMap {
    pub source: Presentation,
    pub target: Presentation,
    pub assignment: Vec<usize>,
}

impl HomMap {
    pub fn image(&self, w: &Word) -> Word {
        w.substitute(&self.assignment)
    }
}

/// Sends every arc of `K` to the arc of `K̂` its `D` or `D*` edges came
/// from; arcs lying only in `T` go to `x_b`.
pub fn build_epimorphism(ld: &LabeledDiagram) -> Result<HomMap> {
    let khat_arc = |e: usize| -> Result<usize> {
        match ld.khat_edge[e] {
            Some(ke) => Ok(ld.khat.edge_arc(ke)),
            None if ld.khat.diagram().edge_count() == 0 => Ok(0),
            None => Err(Error::MissingProvenance(e)),
        }
    };
    let provenance = ld.arc_provenance();
    let mut assignment = Vec::with_capacity(provenance.len());
    for (arc, origins) in provenance.iter().enumerate() {
        let mut image: Option<usize> = None;
        for o in origins {
            let x = match *o {
                Origin::D(e) | Origin::DStar(e) => khat_arc(e)?,
                Origin::T(_) => ld.x_b,
            };
            match image {
                None => image = Some(x),
                Some(y) if y != x => return Err(Error::ProvenanceConflict { arc, first: y, second: x }),
                _ => {}
            }
        }
        let image = match image {
            Some(x) => x,
            // a crossingless knot has a single arc with no edges
            None if ld.knot.diagram().edge_count() == 0 => ld.x_a,
            None => return Err(Error::MissingProvenance(arc)),
        };
        assignment.push(image);
    }
    if assignment.is_empty() {
        assignment.push(ld.x_a);
    }
    Ok(HomMap { source: ld.presentation(), target: ld.khat_presentation(), assignment })
}

/// How one relator image was accepted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum RelatorOutcome {
    FreelyTrivial,
    /// A cyclic permutation of a target relator or its inverse.
    TargetRelator { index: usize },
    Failed { image: Word },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomomorphismCheck {
    pub relators_checked: usize,
    pub relators_ok: usize,
    pub outcomes: Vec<RelatorOutcome>,
}

impl HomomorphismCheck {
    pub fn passed(&self) -> bool {
        self.relators_ok == self.relators_checked
    }
}

/// Every source relator must map to the empty word after free reduction or
/// to a target relator up to rotation and inversion.
pub fn verify_homomorphism(h: &HomMap) -> HomomorphismCheck {
    let outcomes: Vec<RelatorOutcome> = h
        .source
        .relators
        .iter()
        .map(|r| {
            let img = h.image(r);
            if img.free_reduce().is_empty() {
                RelatorOutcome::FreelyTrivial
            } else if let Some(index) = matching_relator(&img, &h.target.relators) {
                RelatorOutcome::TargetRelator { index }
            } else {
                RelatorOutcome::Failed { image: img.free_reduce() }
            }
        })
        .collect();
    let ok = outcomes.iter().filter(|o| !matches!(o, RelatorOutcome::Failed { .. })).count();
    HomomorphismCheck { relators_checked: outcomes.len(), relators_ok: ok, outcomes }
}

/// The source meridian lands on a target generator, and on the target's
/// distinguished meridian.
pub fn verify_meridian(h: &HomMap) -> bool {
    h.assignment.get(h.source.meridian).is_some_and(|&x| x < h.target.generator_count && x == h.target.meridian)
}

/// Every target generator is hit, so the image contains a generating set.
pub fn verify_surjective(h: &HomMap) -> bool {
    let mut hit = vec![false; h.target.generator_count];
    for &x in &h.assignment {
        if let Some(slot) = hit.get_mut(x) {
            *slot = true;
        }
    }
    hit.into_iter().all(|b| b)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum LongitudeStatus {
    VerifiedFree,
    VerifiedBounded { depth: usize },
    Inconclusive { note: String },
}

impl LongitudeStatus {
    pub fn is_verified(&self) -> bool {
        !matches!(self, LongitudeStatus::Inconclusive { .. })
    }
}

/// Image of `λ` is freely trivial, or certified trivial by a bounded search
/// in the target group.
pub fn verify_longitude_trivial(h: &HomMap, longitude: &Word, depth: usize, beam: usize) -> LongitudeStatus {
    let img = h.image(longitude).free_reduce();
    if img.is_empty() {
        return LongitudeStatus::VerifiedFree;
    }
    match bounded_triviality(&img, &h.target, depth, beam) {
        TrivialityResult::Verified { depth } => LongitudeStatus::VerifiedBounded { depth },
        TrivialityResult::Inconclusive { note } => LongitudeStatus::Inconclusive { note },
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub depth: usize,
    pub beam: usize,
    pub exec: Exec,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { depth: DEFAULT_DEPTH, beam: DEFAULT_BEAM, exec: Exec::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub instance: String,
    #[serde(rename = "delta_K")]
    pub delta_k: LaurentPoly,
    #[serde(rename = "delta_NT")]
    pub delta_nt: LaurentPoly,
    #[serde(rename = "delta_Khat")]
    pub delta_khat: LaurentPoly,
    pub factorization_ok: bool,
    pub relators_checked: usize,
    pub relators_ok: usize,
    pub longitude_status: LongitudeStatus,
    pub meridian_ok: bool,
    pub surjective_ok: bool,
    pub elapsed_ms: u128,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.factorization_ok
            && self.relators_ok == self.relators_checked
            && self.longitude_status.is_verified()
            && self.meridian_ok
            && self.surjective_ok
    }
}

/// Runs the full suite on one assembled knot: the Alexander factorization
/// and every property of the map onto the partial knot group.
pub fn verify_instance(ld: &LabeledDiagram, opts: VerifyOptions) -> Result<VerificationReport> {
    let start = Instant::now();
    let delta_k = alexander_polynomial_with(&ld.presentation(), opts.exec)?;
    let delta_nt = alexander_polynomial_knot(&ld.partial_numerator())?;
    let delta_khat = alexander_polynomial_with(&ld.khat_presentation(), opts.exec)?;
    let factorization_ok = verify_factorization(&delta_k, &delta_nt, &delta_khat);
    let h = build_epimorphism(ld)?;
    let hom = verify_homomorphism(&h);
    let longitude_status = verify_longitude_trivial(&h, &ld.longitude(), opts.depth, opts.beam);
    Ok(VerificationReport {
        instance: ld.name.clone(),
        delta_k,
        delta_nt,
        delta_khat,
        factorization_ok,
        relators_checked: hom.relators_checked,
        relators_ok: hom.relators_ok,
        longitude_status,
        meridian_ok: verify_meridian(&h),
        surjective_ok: verify_surjective(&h),
        elapsed_ms: start.elapsed().as_millis(),
    })
}

/// Verifies many instances, fanning out across instances.
pub fn verify_all(instances: &[LabeledDiagram], opts: VerifyOptions) -> Vec<Result<VerificationReport>> {
    let inner = VerifyOptions { exec: Exec::Sequential, ..opts };
    par::map_with(opts.exec, instances, |ld| verify_instance(ld, inner))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{extended_symmetric_union, symmetric_union_single_twist};
    use crate::tangle::Tangle;
    use crate::wirtinger::LongitudeReading;

    #[test]
    fn trefoil_union_map() {
        let ld = symmetric_union_single_twist(&Tangle::twist(3), 2).unwrap();
        let h = build_epimorphism(&ld).unwrap();
        assert_eq!(h.target.generator_count, 3);
        assert!(verify_surjective(&h));
        assert!(verify_meridian(&h));
        let hom = verify_homomorphism(&h);
        assert!(hom.passed(), "{:?}", hom.outcomes);
        assert_eq!(verify_longitude_trivial(&h, &ld.longitude(), 10, 1000), LongitudeStatus::VerifiedFree);
    }

    #[test]
    fn t_arcs_share_one_image() {
        let ld = extended_symmetric_union(&Tangle::twist(3), &Tangle::rational(-7, 4).unwrap()).unwrap();
        let h = build_epimorphism(&ld).unwrap();
        for (arc, origins) in ld.arc_provenance().iter().enumerate() {
            if origins.iter().all(|o| matches!(o, Origin::T(_))) {
                assert_eq!(h.assignment[arc], ld.x_b);
            }
        }
    }

    #[test]
    fn corrupted_assignment_fails() {
        let ld = extended_symmetric_union(&Tangle::twist(3), &Tangle::rational(-7, 4).unwrap()).unwrap();
        assert_ne!(ld.x_a, ld.x_b);
        let mut h = build_epimorphism(&ld).unwrap();
        let t_only = ld
            .arc_provenance()
            .iter()
            .position(|o| o.iter().all(|o| matches!(o, Origin::T(_))))
            .expect("T has an interior arc");
        h.assignment[t_only] = ld.x_a;
        assert!(!verify_homomorphism(&h).passed());
    }

    #[test]
    fn unknot_target() {
        let ld = extended_symmetric_union(&Tangle::zero(), &Tangle::rational(1, 2).unwrap()).unwrap();
        let r = verify_instance(&ld, VerifyOptions::default()).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.delta_khat.is_one());
    }

    #[test]
    fn standard_longitude_also_dies() {
        let ld = symmetric_union_single_twist(&Tangle::twist(3), -2).unwrap();
        let h = build_epimorphism(&ld).unwrap();
        let w = ld.longitude_with(LongitudeReading::Writhe);
        assert!(verify_longitude_trivial(&h, &w, 10, 20_000).is_verified());
    }

    #[test]
    fn report_json_shape() {
        let ld = symmetric_union_single_twist(&Tangle::twist(3), 2).unwrap().with_name("su");
        let r = verify_instance(&ld, VerifyOptions::default()).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        for key in ["instance", "delta_K", "delta_NT", "delta_Khat", "factorization_ok", "relators_checked", "relators_ok", "longitude_status", "meridian_ok", "surjective_ok", "elapsed_ms"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert_eq!(v["longitude_status"]["status"], "verified_free");
    }
}
