//! Points of P^1 over constant extensions K_m = F_{q^m}(t), their naive
//! heights, local height decompositions, and bounded enumeration.
//!
//! A point is stored as coprime polynomial coordinates [a : b] with b monic
//! when nonzero (else a monic), so representatives are unique and equality
//! is plain structural equality. Heights are normalized relative to the
//! base field K: a point over K_m with coordinate degree d has height d/m.
//!
//! Enumeration bounds are expressed in coordinate degree over F_{q^m}; see
//! `enumerate_points` for the exact convention.

use crate::config::Caps;
use crate::error::{FfhError, Result};
use crate::ffield::factor::factor;
use crate::ffield::{GroundField, Place, Poly, RatFunc};
use crate::rat::{rat_int, Rat};
use rayon::prelude::*;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ProjPoint {
    a: Poly,
    b: Poly,
    /// Constant-extension index m: coordinates live over F_{q^m}[t].
    m: u32,
}

impl ProjPoint {
    /// Normalize raw coordinates: clear denominators, strip the gcd, make
    /// the representative unique (b monic if b != 0, else a monic).
    pub fn from_coords(a: &RatFunc, b: &RatFunc, m: u32, k: &GroundField) -> Result<ProjPoint> {
        if a.is_zero() && b.is_zero() {
            return Err(FfhError::domain("[0 : 0] is not a projective point"));
        }
        let mut pa = a.num().mul(b.den(), k);
        let mut pb = b.num().mul(a.den(), k);
        let g = pa.gcd(&pb, k);
        if g.degree() > 0 {
            pa = pa.div_exact(&g, k)?;
            pb = pb.div_exact(&g, k)?;
        }
        Ok(Self::from_coprime(pa, pb, m, k))
    }

    /// Coordinates already coprime; just fix the scaling.
    pub(crate) fn from_coprime(mut a: Poly, mut b: Poly, m: u32, k: &GroundField) -> ProjPoint {
        debug_assert!(!(a.is_zero() && b.is_zero()));
        if !b.is_zero() {
            if !b.is_monic(k) {
                let inv = k.inv(&b.leading(k)).expect("nonzero leading");
                a = a.scale(&inv, k);
                b = b.scale(&inv, k);
            }
        } else if !a.is_monic(k) {
            let inv = k.inv(&a.leading(k)).expect("nonzero leading");
            a = a.scale(&inv, k);
        }
        ProjPoint { a, b, m }
    }

    pub fn parse(s: &str, m: u32, k: &GroundField) -> Result<ProjPoint> {
        let (a, b) = crate::ffield::parse::parse_point_coords(s, k)?;
        ProjPoint::from_coords(&a, &b, m, k)
    }

    pub fn infinity(k: &GroundField, m: u32) -> ProjPoint {
        ProjPoint {
            a: Poly::one(k),
            b: Poly::zero(),
            m,
        }
    }

    /// The point `[x : 1]` for x in K_m.
    pub fn from_ratfunc(x: &RatFunc, m: u32, k: &GroundField) -> ProjPoint {
        // x = n/d reduced, so [n : d] is already coprime; d is monic
        ProjPoint::from_coprime(x.num().clone(), x.den().clone(), m, k)
    }

    pub fn a(&self) -> &Poly {
        &self.a
    }

    pub fn b(&self) -> &Poly {
        &self.b
    }

    pub fn ext_index(&self) -> u32 {
        self.m
    }

    pub fn is_infinity(&self) -> bool {
        self.b.is_zero()
    }

    /// Coordinate degree max(deg a, deg b) over `F_{q^m}[t]`.
    pub fn coord_degree(&self) -> i64 {
        self.a.degree().max(self.b.degree()).max(0)
    }

    /// Deterministic total order: finite points by (degree, b, a), then
    /// the point at infinity last.
    pub fn key_cmp(&self, other: &ProjPoint) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        match (self.is_infinity(), other.is_infinity()) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Greater,
            (false, true) => return Ordering::Less,
            _ => {}
        }
        match self.coord_degree().cmp(&other.coord_degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        match self.b.key_cmp(&other.b) {
            Ordering::Equal => {}
            ord => return ord,
        }
        self.a.key_cmp(&other.a)
    }

    pub fn to_string_t(&self, k: &GroundField) -> String {
        format!("[{} : {}]", self.a.to_string_t(k), self.b.to_string_t(k))
    }
}

/// One local contribution per place, all but finitely many zero (zeros are
/// omitted from the listing). `total` is sum deg(v) * contribution_v.
#[derive(Clone, Debug)]
pub struct LocalHeightProfile {
    pub entries: Vec<(Place, Rat)>,
    pub total: Rat,
}

/// Naive Weil height h(x) = max(deg a, deg b) / m.
pub fn height(x: &ProjPoint) -> Rat {
    Rat::new(x.coord_degree().into(), (x.m as i64).into())
}

/// Local decomposition lambda_v(x) = -min(ord_v a, ord_v b) / m, computed
/// literally from valuations over the support of a*b and at infinity.
pub fn local_heights(x: &ProjPoint, k: &GroundField) -> Result<LocalHeightProfile> {
    let m = rat_int(x.m as i64);
    let mut entries: Vec<(Place, Rat)> = Vec::new();
    let mut total = rat_int(0);

    // finite places in the support of the coordinates
    let support = x.a.mul(&x.b, k);
    if !support.is_zero() && !support.is_constant() {
        for (pi, _) in factor(&support, k)?.factors {
            let orda = if x.a.is_zero() {
                i64::MAX
            } else {
                x.a.ord_at(&pi, k)?
            };
            let ordb = if x.b.is_zero() {
                i64::MAX
            } else {
                x.b.ord_at(&pi, k)?
            };
            let lam = -(orda.min(ordb));
            if lam != 0 {
                let contrib = rat_int(lam) / m.clone();
                total += rat_int(pi.degree()) * contrib.clone();
                entries.push((Place::finite_unchecked(pi), contrib));
            }
        }
    }

    // infinite place: ord_inf(poly c) = -deg c
    let orda = if x.a.is_zero() {
        i64::MAX
    } else {
        -x.a.degree()
    };
    let ordb = if x.b.is_zero() {
        i64::MAX
    } else {
        -x.b.degree()
    };
    let lam = -(orda.min(ordb));
    if lam != 0 {
        let contrib = rat_int(lam) / m;
        total += contrib.clone();
        entries.push((Place::infinite(), contrib));
    }

    Ok(LocalHeightProfile { entries, total })
}

/// Exact number of points of P^1(F_Q(t)) with coordinate degree <= d:
/// Q^(2d+1) + 1. None on overflow.
pub fn point_count(q_m: u64, d: u32) -> Option<u64> {
    let mut c: u64 = 1;
    for _ in 0..(2 * d + 1) {
        c = c.checked_mul(q_m)?;
    }
    c.checked_add(1)
}

/// All points of P^1(F_{q^m}(t)) with coordinate degree <= `deg_bound`
/// over F_{q^m} (equivalently, K-normalized height <= deg_bound / m), in
/// the canonical order. Refuses to run when the predicted count
/// Q^(2*deg_bound+1) + 1 exceeds the enumeration cap.
pub fn enumerate_points(
    k: &GroundField,
    m: u32,
    deg_bound: u32,
    caps: &Caps,
) -> Result<Vec<ProjPoint>> {
    let q_m = k.order()?;
    let predicted = point_count(q_m, deg_bound);
    match predicted {
        Some(c) if c <= caps.enum_cap => {}
        _ => {
            return Err(FfhError::resource(format!(
                "enumeration of {} points (formula q^(m*(2H+1))+1 = {}^{}+1) exceeds cap {}",
                predicted
                    .map(|c| c.to_string())
                    .unwrap_or_else(|| "overflowing".into()),
                q_m,
                2 * deg_bound + 1,
                caps.enum_cap
            )));
        }
    }

    // [1 : 0] plus, for each monic b, every a of degree <= bound coprime to b
    let monic_bs: Vec<Poly> = (0..=deg_bound)
        .flat_map(|d| crate::ffield::place::monic_polys_of_degree(d as usize, k))
        .collect();
    let all_as: Vec<Poly> =
        crate::ffield::place::polys_up_to_degree(deg_bound as usize, k).collect();

    let mut pts: Vec<ProjPoint> = monic_bs
        .par_iter()
        .flat_map_iter(|b| {
            all_as.iter().filter_map(move |a| {
                if b.degree() > 0 {
                    let g = a.gcd(b, k);
                    if g.degree() > 0 {
                        return None;
                    }
                }
                Some(ProjPoint {
                    a: a.clone(),
                    b: b.clone(),
                    m,
                })
            })
        })
        .collect();
    pts.push(ProjPoint::infinity(k, m));
    pts.sort_by(|x, y| x.key_cmp(y));
    Ok(pts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::parse::parse_ratfunc;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f(q: u64) -> GroundField {
        GroundField::from_order(q).unwrap()
    }

    #[test]
    fn height_examples() {
        let f3 = f(3);
        let x = ProjPoint::parse("[t^2+1 : t]", 1, &f3).unwrap();
        assert_eq!(height(&x), rat_int(2));
        let one = ProjPoint::parse("[1 : 1]", 1, &f3).unwrap();
        assert_eq!(height(&one), rat_int(0));
        // coordinates (t/(t+1), 1) normalize to [t : t+1], height 1
        let a = parse_ratfunc("t/(t+1)", &f3).unwrap();
        let b = parse_ratfunc("1", &f3).unwrap();
        let y = ProjPoint::from_coords(&a, &b, 1, &f3).unwrap();
        assert_eq!(y.to_string_t(&f3), "[t : t+1]");
        assert_eq!(height(&y), rat_int(1));
    }

    #[test]
    fn height_invariant_under_scaling() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let k = f(4);
        for _ in 0..100 {
            let mk_poly = |rng: &mut ChaCha8Rng| {
                let coeffs: Vec<_> = (0..rng.gen_range(1..5))
                    .map(|_| {
                        let d: Vec<u64> = (0..2).map(|_| rng.gen_range(0..2)).collect();
                        k.from_digits(&d).unwrap()
                    })
                    .collect();
                Poly::from_coeffs(&k, coeffs)
            };
            let a = mk_poly(&mut rng);
            let b = mk_poly(&mut rng);
            if a.is_zero() && b.is_zero() {
                continue;
            }
            let ra = RatFunc::from_poly(a, &k);
            let rb = RatFunc::from_poly(b, &k);
            let x = ProjPoint::from_coords(&ra, &rb, 2, &k).unwrap();
            // scale both coordinates by a random nonzero rational function
            let s = {
                let mut s = mk_poly(&mut rng);
                if s.is_zero() {
                    s = Poly::one(&k);
                }
                RatFunc::new(s, Poly::t(&k), &k).unwrap()
            };
            let y = ProjPoint::from_coords(&ra.mul(&s, &k), &rb.mul(&s, &k), 2, &k).unwrap();
            assert_eq!(x, y, "normalization must kill scaling");
            assert_eq!(height(&x), height(&y));
        }
    }

    #[test]
    fn local_heights_examples() {
        let f2 = f(2);
        let x = ProjPoint::parse("[t : 1]", 1, &f2).unwrap();
        let prof = local_heights(&x, &f2).unwrap();
        assert_eq!(prof.total, rat_int(1));
        assert_eq!(prof.entries.len(), 1);
        assert!(prof.entries[0].0.is_infinite());

        let f3 = f(3);
        let y = ProjPoint::parse("[t^2+1 : t]", 1, &f3).unwrap();
        let prof = local_heights(&y, &f3).unwrap();
        assert_eq!(prof.total, rat_int(2));
        assert_eq!(prof.entries.len(), 1);

        let one = ProjPoint::parse("[1 : 1]", 1, &f3).unwrap();
        let prof = local_heights(&one, &f3).unwrap();
        assert!(prof.entries.is_empty());
        assert_eq!(prof.total, rat_int(0));
    }

    #[test]
    fn local_total_equals_height_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for q in [2u64, 3, 5] {
            let base = f(q);
            for m in 1..=2u32 {
                let ext = crate::ffield::ConstExt::new(&base, m).unwrap();
                let kk = ext.field();
                for _ in 0..80 {
                    let mk_poly = |rng: &mut ChaCha8Rng| {
                        let n = kk.degree();
                        let coeffs: Vec<_> = (0..rng.gen_range(1..6))
                            .map(|_| {
                                let d: Vec<u64> =
                                    (0..n).map(|_| rng.gen_range(0..kk.p())).collect();
                                kk.from_digits(&d).unwrap()
                            })
                            .collect();
                        Poly::from_coeffs(kk, coeffs)
                    };
                    let a = mk_poly(&mut rng);
                    let b = mk_poly(&mut rng);
                    if a.is_zero() && b.is_zero() {
                        continue;
                    }
                    let x = ProjPoint::from_coords(
                        &RatFunc::from_poly(a, kk),
                        &RatFunc::from_poly(b, kk),
                        m,
                        kk,
                    )
                    .unwrap();
                    let prof = local_heights(&x, kk).unwrap();
                    assert_eq!(prof.total, height(&x));
                }
            }
        }
    }

    #[test]
    fn enumerate_counts() {
        let caps = Caps::default();
        // q=2, m=1, H=0: the three points of P^1(F_2)
        let f2 = f(2);
        let pts = enumerate_points(&f2, 1, 0, &caps).unwrap();
        let strs: Vec<_> = pts.iter().map(|p| p.to_string_t(&f2)).collect();
        assert_eq!(strs, vec!["[0 : 1]", "[1 : 1]", "[1 : 0]"]);
        // q=2, m=2, H=0: q^m + 1 = 5 points
        let f4 = f(4);
        let pts = enumerate_points(&f4, 2, 0, &caps).unwrap();
        assert_eq!(pts.len(), 5);
        // count formula: Q^(2H+1) + 1
        let pts = enumerate_points(&f2, 1, 1, &caps).unwrap();
        assert_eq!(pts.len() as u64, point_count(2, 1).unwrap());
        assert_eq!(pts.len(), 9);
    }

    /// Brute-force double loop over raw coordinate pairs, dedup by
    /// normalization: must agree with enumerate_points for q=2, H <= 2.
    #[test]
    fn enumerate_matches_bruteforce_oracle() {
        let caps = Caps::default();
        let k = f(2);
        for h in 0..=2u32 {
            let fast = enumerate_points(&k, 1, h, &caps).unwrap();
            let mut brute: Vec<ProjPoint> = Vec::new();
            let all: Vec<Poly> = crate::ffield::place::polys_up_to_degree(h as usize, &k).collect();
            for a in &all {
                for b in &all {
                    if a.is_zero() && b.is_zero() {
                        continue;
                    }
                    let p = ProjPoint::from_coords(
                        &RatFunc::from_poly(a.clone(), &k),
                        &RatFunc::from_poly(b.clone(), &k),
                        1,
                        &k,
                    )
                    .unwrap();
                    if p.coord_degree() <= h as i64 && !brute.contains(&p) {
                        brute.push(p);
                    }
                }
            }
            brute.sort_by(|x, y| x.key_cmp(y));
            assert_eq!(fast, brute, "H = {h}");
            for w in fast.windows(2) {
                assert!(w[0].key_cmp(&w[1]) == std::cmp::Ordering::Less);
            }
        }
    }

    #[test]
    fn enumeration_cap_enforced() {
        let caps = Caps {
            enum_cap: 10,
            ..Caps::default()
        };
        let k = f(2);
        let err = enumerate_points(&k, 1, 3, &caps).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("formula"));
    }
}
