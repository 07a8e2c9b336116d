//! Desk-scale comparison experiments for pairs of dynamical systems:
//! preperiodic-set scans, canonical-height difference profiles, and the
//! polarization-independence check.
//!
//! Scan verdicts are statements about the scanned window only; the report
//! records the parameters and the threshold used to flag a non-constant
//! overlap, never a theorem-level claim.

use crate::config::Caps;
use crate::dynamics::{self, RationalMap};
use crate::error::{FfhError, Result};
use crate::projheights::{enumerate_points, ProjPoint};
use crate::rat::{rat_int, Rat};
use num::Signed;
use rayon::prelude::*;

/// Outcome of a preperiodic-set comparison scan over the points of
/// coordinate degree <= deg_bound in P^1(F_{q^m}(t)).
#[derive(Clone, Debug)]
pub struct ComparisonReport {
    pub ext_index: u32,
    pub deg_bound: u32,
    pub points_scanned: usize,
    pub in_both: Vec<ProjPoint>,
    pub only_f: Vec<ProjPoint>,
    pub only_g: Vec<ProjPoint>,
    pub agree_on_scan: bool,
    /// Overlap count strictly beyond the constant locus, and the
    /// configured threshold for calling the overlap "large".
    pub nonconstant_overlap: usize,
    pub overlap_threshold: usize,
}

/// Exact preperiodic sets of f and g over the scan window, partitioned
/// into the common part and the two differences.
pub fn common_prep_scan(
    f: &RationalMap,
    g: &RationalMap,
    m: u32,
    deg_bound: u32,
    caps: &Caps,
) -> Result<ComparisonReport> {
    if f.field() != g.field() {
        return Err(FfhError::validation(
            "maps must be defined over a common field",
        ));
    }
    let pts = enumerate_points(f.field(), m, deg_bound, caps)?;
    let flags: Vec<(bool, bool)> = pts
        .par_iter()
        .map(|x| {
            (
                dynamics::is_preperiodic(f, x),
                dynamics::is_preperiodic(g, x),
            )
        })
        .collect();
    let mut in_both = Vec::new();
    let mut only_f = Vec::new();
    let mut only_g = Vec::new();
    for (x, (pf, pg)) in pts.iter().zip(&flags) {
        match (pf, pg) {
            (true, true) => in_both.push(x.clone()),
            (true, false) => only_f.push(x.clone()),
            (false, true) => only_g.push(x.clone()),
            (false, false) => {}
        }
    }
    let nonconstant_overlap = in_both.iter().filter(|x| x.coord_degree() > 0).count();
    Ok(ComparisonReport {
        ext_index: m,
        deg_bound,
        points_scanned: pts.len(),
        agree_on_scan: only_f.is_empty() && only_g.is_empty(),
        in_both,
        only_f,
        only_g,
        nonconstant_overlap,
        overlap_threshold: 1,
    })
}

/// Statistics of h_f - h_g over a sample, with propagated bounds.
#[derive(Clone, Debug)]
pub struct DifferenceProfile {
    /// (point, difference of values, propagated error bound)
    pub per_point: Vec<(ProjPoint, Rat, Rat)>,
    pub min: Rat,
    pub max: Rat,
    pub spread: Rat,
}

pub fn height_difference_profile(
    f: &RationalMap,
    g: &RationalMap,
    sample: &[ProjPoint],
    eps: &Rat,
    caps: &Caps,
) -> Result<DifferenceProfile> {
    if sample.is_empty() {
        return Err(FfhError::validation("empty sample"));
    }
    let mut per_point = Vec::with_capacity(sample.len());
    let mut min: Option<Rat> = None;
    let mut max: Option<Rat> = None;
    for x in sample {
        let hf = dynamics::canonical_height(f, x, eps, caps)?;
        let hg = dynamics::canonical_height(g, x, eps, caps)?;
        let diff = hf.value - hg.value;
        let bound = hf.error_bound + hg.error_bound;
        min = Some(match min {
            None => diff.clone(),
            Some(m) => m.min(diff.clone()),
        });
        max = Some(match max {
            None => diff.clone(),
            Some(m) => m.max(diff.clone()),
        });
        per_point.push((x.clone(), diff, bound));
    }
    let min = min.unwrap();
    let max = max.unwrap();
    Ok(DifferenceProfile {
        per_point,
        spread: max.clone() - min.clone(),
        min,
        max,
    })
}

/// One row of the polarization-independence report.
#[derive(Clone, Debug)]
pub struct PolarizationRow {
    pub point: ProjPoint,
    /// Height computed with the O(d) polarization.
    pub scaled: Rat,
    /// d times the O(1) height.
    pub reference: Rat,
    pub within_bound: bool,
    pub zero_class_agrees: bool,
}

#[derive(Clone, Debug)]
pub struct PolarizationReport {
    pub degree: u32,
    pub rows: Vec<PolarizationRow>,
    pub pass: bool,
}

/// Compare the O(d)-polarized canonical height (an independently stopped
/// limit of d*h(f^n x)/q^n) against d times the O(1) height: they must
/// agree within (d+1) eps pointwise and classify the same points as
/// eps-zero.
pub fn polarization_independence_check(
    f: &RationalMap,
    d: u32,
    sample: &[ProjPoint],
    eps: &Rat,
    caps: &Caps,
) -> Result<PolarizationReport> {
    if d < 1 {
        return Err(FfhError::validation("polarization degree must be >= 1"));
    }
    let bound = rat_int(d as i64 + 1) * eps.clone();
    let mut rows = Vec::with_capacity(sample.len());
    let mut pass = true;
    for x in sample {
        let scaled = dynamics::canonical_height_scaled(f, x, d, eps, caps)?;
        let reference = dynamics::canonical_height(f, x, eps, caps)?;
        let ref_val = rat_int(d as i64) * reference.value.clone();
        let within = (scaled.value.clone() - ref_val.clone()).abs() <= bound;
        let zero_scaled = scaled.value.abs() <= rat_int(d as i64) * eps.clone();
        let zero_ref = reference.value.abs() <= eps.clone();
        let zero_agree = zero_scaled == zero_ref;
        pass &= within && zero_agree;
        rows.push(PolarizationRow {
            point: x.clone(),
            scaled: scaled.value,
            reference: ref_val,
            within_bound: within,
            zero_class_agrees: zero_agree,
        });
    }
    Ok(PolarizationReport {
        degree: d,
        rows,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::{ConstExt, GroundField};
    use crate::rat::rat;

    fn f2() -> GroundField {
        GroundField::new(2, 1).unwrap()
    }

    #[test]
    fn identical_maps_agree() {
        let k = f2();
        let f = RationalMap::parse("z^2+t", &k).unwrap();
        let rep = common_prep_scan(&f, &f, 1, 2, &Caps::default()).unwrap();
        assert!(rep.agree_on_scan);
        assert!(rep.only_f.is_empty() && rep.only_g.is_empty());
    }

    #[test]
    fn squaring_vs_cubing_over_f4() {
        let base = f2();
        let ext = ConstExt::new(&base, 2).unwrap();
        let f = RationalMap::parse("z^2", &base).unwrap().base_change(&ext);
        let g = RationalMap::parse("z^3", &base).unwrap().base_change(&ext);
        let rep = common_prep_scan(&f, &g, 2, 2, &Caps::default()).unwrap();
        assert!(rep.agree_on_scan);
        // the common set is exactly P^1(F_4)
        assert_eq!(rep.in_both.len(), 5);
        assert!(rep.in_both.iter().all(|p| p.coord_degree() == 0));
    }

    #[test]
    fn squaring_vs_shifted_squaring_disagree() {
        let k = f2();
        let f = RationalMap::parse("z^2", &k).unwrap();
        let g = RationalMap::parse("z^2+t", &k).unwrap();
        let rep = common_prep_scan(&f, &g, 1, 2, &Caps::default()).unwrap();
        assert!(!rep.agree_on_scan);
        // intersection is exactly the fixed point at infinity
        assert_eq!(rep.in_both.len(), 1);
        assert!(rep.in_both[0].is_infinity());
        assert!(!rep.only_f.is_empty());
        assert!(rep.only_g.is_empty());
    }

    #[test]
    fn profile_of_identical_maps_is_flat() {
        let k = f2();
        let f = RationalMap::parse("z^2+t", &k).unwrap();
        let sample: Vec<ProjPoint> = ["[t:1]", "[0:1]", "[t+1:t]"]
            .iter()
            .map(|s| ProjPoint::parse(s, 1, &k).unwrap())
            .collect();
        let eps = rat(1, 1000);
        let prof = height_difference_profile(&f, &f, &sample, &eps, &Caps::default()).unwrap();
        assert!(prof.spread <= rat_int(2) * eps);
        for (_, diff, bound) in &prof.per_point {
            assert!(diff.abs() <= bound.clone());
        }
    }

    #[test]
    fn polarization_scaling() {
        let k = f2();
        let caps = Caps::default();
        let eps = rat(1, 1000);
        // monomial: exact scaling
        let f = RationalMap::parse("z^2", &k).unwrap();
        let x = ProjPoint::parse("[t:1]", 1, &k).unwrap();
        let rep = polarization_independence_check(&f, 2, &[x], &eps, &caps).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.rows[0].scaled, rat_int(2));
        // z^2 + t at the point 0 with d = 3: 3/2 vs 3 * (1/2)
        let g = RationalMap::parse("z^2+t", &k).unwrap();
        let y = ProjPoint::parse("[0:1]", 1, &k).unwrap();
        let rep = polarization_independence_check(&g, 3, &[y], &eps, &caps).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.rows[0].scaled, rat(3, 2));
        assert_eq!(rep.rows[0].reference, rat(3, 2));
        // d = 1 is the identity comparison
        let z = ProjPoint::parse("[t:1]", 1, &k).unwrap();
        let rep = polarization_independence_check(&g, 1, &[z], &eps, &caps).unwrap();
        assert!(rep.pass);
    }

    /// Determinism: scans agree across thread pool sizes.
    #[test]
    fn scan_is_thread_count_independent() {
        let k = f2();
        let f = RationalMap::parse("z^2", &k).unwrap();
        let g = RationalMap::parse("z^2+1", &k).unwrap();
        let run = |threads: usize| {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap();
            pool.install(|| common_prep_scan(&f, &g, 1, 2, &Caps::default()).unwrap())
        };
        let a = run(1);
        let b = run(4);
        assert_eq!(a.in_both, b.in_both);
        assert_eq!(a.only_f, b.only_f);
        assert_eq!(a.only_g, b.only_g);
    }
}
