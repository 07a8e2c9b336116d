//! Rational self-maps of P^1 over K, canonical heights with certified
//! error, and exact preperiodicity decisions.
//!
//! A map f = F/G of degree q >= 2 is stored as a jointly primitive pair of
//! z-polynomials with `F_{q^m}[t]` coefficients. Three quantities drive all
//! certified bounds:
//!
//!   * the resultant R of the degree-q homogenizations (nonzero iff f is a
//!     morphism); the gcd of evaluated coordinate forms always divides R,
//!     which both certifies the height gap and lets `evaluate` clear
//!     common factors without a general gcd;
//!   * the coefficient height H = max t-degree of the coefficients;
//!   * the gap constant C(f) = (2q-1)*H, with C = 0 for constant
//!     coefficients. For every point x over every constant extension,
//!     |h(f(x)) - q*h(x)| <= C(f): the upper side is immediate from
//!     degrees, the lower side combines the Bezout bound gcd | R at finite
//!     places with the same bound for the t -> 1/t twisted forms at
//!     infinity, whose resultant has order 2qH - deg R there.
//!
//! Canonical heights come from the telescoping limit h(f^N x)/q^N with
//! certified error C/(q^N (q-1)); preperiodicity is decided exactly by the
//! height cutoff C/(q-1) plus cycle detection inside the finite ball.

use crate::config::Caps;
use crate::error::{FfhError, Result};
use crate::ffield::{ConstExt, GroundField, Poly, RatFunc};
use crate::projheights::{height, ProjPoint};
use crate::rat::{rat_int, rat_zero, Rat};
use num::Zero;
use rayon::prelude::*;
use std::collections::HashSet;

/// A certified estimate: the true value lies in [value - error_bound,
/// value + error_bound]; `exact` forces error_bound = 0.
#[derive(Clone, Debug, PartialEq)]
pub struct HeightEstimate {
    pub value: Rat,
    pub error_bound: Rat,
    pub exact: bool,
}

impl HeightEstimate {
    pub fn exact(value: Rat) -> HeightEstimate {
        HeightEstimate {
            value,
            error_bound: rat_zero(),
            exact: true,
        }
    }

    pub fn approx(value: Rat, error_bound: Rat) -> HeightEstimate {
        HeightEstimate {
            value,
            error_bound,
            exact: false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RationalMap {
    k: GroundField,
    /// Numerator z-coefficients (t-polynomials), little-endian, len q+1.
    num: Vec<Poly>,
    /// Denominator z-coefficients, little-endian, len q+1.
    den: Vec<Poly>,
    q: u32,
    coeff_height: i64,
    resultant: Poly,
    gap: Rat,
}

impl RationalMap {
    /// Build from coefficient lists over K (as produced by the parser),
    /// clearing denominators and content so the pair is jointly primitive.
    pub fn from_pairs(
        num: Vec<RatFunc>,
        den: Vec<RatFunc>,
        k: &GroundField,
    ) -> Result<RationalMap> {
        let deg_num = num.iter().rposition(|c| !c.is_zero());
        let deg_den = den.iter().rposition(|c| !c.is_zero());
        let (dn, dd) = match (deg_num, deg_den) {
            (Some(a), Some(b)) => (a, b),
            _ => {
                return Err(FfhError::domain(
                    "rational map must have nonzero num and den",
                ))
            }
        };
        let q = dn.max(dd);
        if q < 2 {
            return Err(FfhError::domain(format!(
                "dynamical degree must be >= 2, got {q}"
            )));
        }
        // common denominator of all coefficients
        let mut common = Poly::one(k);
        for c in num.iter().chain(den.iter()) {
            if c.is_zero() {
                continue;
            }
            let g = common.gcd(c.den(), k);
            common = common.mul(&c.den().div_exact(&g, k)?, k);
        }
        let clear = |c: &RatFunc| -> Result<Poly> {
            if c.is_zero() {
                return Ok(Poly::zero());
            }
            let extra = common.div_exact(c.den(), k)?;
            Ok(c.num().mul(&extra, k))
        };
        let mut pnum: Vec<Poly> = Vec::with_capacity(q + 1);
        let mut pden: Vec<Poly> = Vec::with_capacity(q + 1);
        for i in 0..=q {
            pnum.push(clear(num.get(i).unwrap_or(&RatFunc::zero(k)))?);
            pden.push(clear(den.get(i).unwrap_or(&RatFunc::zero(k)))?);
        }
        // strip joint content
        let mut content = Poly::zero();
        for c in pnum.iter().chain(pden.iter()) {
            if !c.is_zero() {
                content = if content.is_zero() {
                    c.clone()
                } else {
                    content.gcd(c, k)
                };
            }
        }
        if content.degree() > 0 {
            for c in pnum.iter_mut().chain(pden.iter_mut()) {
                if !c.is_zero() {
                    *c = c.div_exact(&content, k)?;
                }
            }
        }
        Self::from_cleared(pnum, pden, k)
    }

    fn from_cleared(num: Vec<Poly>, den: Vec<Poly>, k: &GroundField) -> Result<RationalMap> {
        let q = num.len() - 1;
        let resultant = crate::ffield::resultant::form_resultant(&num, &den, q, k)?;
        if resultant.is_zero() {
            return Err(FfhError::domain(
                "numerator and denominator share a root: not a morphism of P^1",
            ));
        }
        let coeff_height = num
            .iter()
            .chain(den.iter())
            .map(|c| c.degree())
            .max()
            .unwrap()
            .max(0);
        let gap = if coeff_height == 0 {
            rat_zero()
        } else {
            rat_int((2 * q as i64 - 1) * coeff_height)
        };
        Ok(RationalMap {
            k: k.clone(),
            num,
            den,
            q: q as u32,
            coeff_height,
            resultant,
            gap,
        })
    }

    /// Parse a map literal like "(z^2+t)/z" over the given field.
    pub fn parse(s: &str, k: &GroundField) -> Result<RationalMap> {
        let (num, den) = crate::ffield::parse::parse_map_pair(s, k)?;
        RationalMap::from_pairs(num, den, k)
    }

    pub fn field(&self) -> &GroundField {
        &self.k
    }

    pub fn degree(&self) -> u32 {
        self.q
    }

    pub fn coeff_height(&self) -> i64 {
        self.coeff_height
    }

    pub fn resultant(&self) -> &Poly {
        &self.resultant
    }

    /// The certified height-gap constant C(f).
    pub fn gap_constant(&self) -> Rat {
        self.gap.clone()
    }

    /// Height cutoff for preperiodicity: C(f)/(q-1). Preperiodic points
    /// have every orbit height <= this.
    pub fn prep_cutoff(&self) -> Rat {
        self.gap.clone() / rat_int(self.q as i64 - 1)
    }

    /// View the map over a constant extension of its field of definition.
    pub fn base_change(&self, ext: &ConstExt) -> RationalMap {
        if ext.index() == 1 {
            return self.clone();
        }
        RationalMap {
            k: ext.field().clone(),
            num: self.num.iter().map(|c| ext.embed_poly(c)).collect(),
            den: self.den.iter().map(|c| ext.embed_poly(c)).collect(),
            q: self.q,
            coeff_height: self.coeff_height,
            resultant: ext.embed_poly(&self.resultant),
            gap: self.gap.clone(),
        }
    }

    pub fn to_string_z(&self) -> String {
        let term = |coeffs: &[Poly]| -> String {
            let mut parts = Vec::new();
            for i in (0..coeffs.len()).rev() {
                let c = &coeffs[i];
                if c.is_zero() {
                    continue;
                }
                let cs = c.to_string_t(&self.k);
                let wrapped = if cs.contains('+') || cs.contains('*') {
                    format!("({cs})")
                } else {
                    cs.clone()
                };
                let t = match i {
                    0 => wrapped,
                    1 if cs == "1" => "z".to_string(),
                    1 => format!("{wrapped}*z"),
                    _ if cs == "1" => format!("z^{i}"),
                    _ => format!("{wrapped}*z^{i}"),
                };
                parts.push(t);
            }
            if parts.is_empty() {
                "0".into()
            } else {
                parts.join("+")
            }
        };
        format!("({})/({})", term(&self.num), term(&self.den))
    }
}

/// Homogeneous evaluation with certified clearing of common factors.
pub fn evaluate(f: &RationalMap, x: &ProjPoint) -> ProjPoint {
    let k = &f.k;
    let q = f.q as usize;
    let m = x.ext_index();
    // powers a^i b^(q-i)
    let mut a_pows = Vec::with_capacity(q + 1);
    let mut b_pows = Vec::with_capacity(q + 1);
    a_pows.push(Poly::one(k));
    b_pows.push(Poly::one(k));
    for i in 1..=q {
        a_pows.push(a_pows[i - 1].mul(x.a(), k));
        b_pows.push(b_pows[i - 1].mul(x.b(), k));
    }
    let mut u = Poly::zero();
    let mut v = Poly::zero();
    for i in 0..=q {
        let mono = a_pows[i].mul(&b_pows[q - i], k);
        if !f.num[i].is_zero() {
            u = u.add(&f.num[i].mul(&mono, k), k);
        }
        if !f.den[i].is_zero() {
            v = v.add(&f.den[i].mul(&mono, k), k);
        }
    }
    if u.is_zero() {
        return ProjPoint::from_coprime(Poly::zero(), Poly::one(k), m, k);
    }
    if v.is_zero() {
        return ProjPoint::from_coprime(Poly::one(k), Poly::zero(), m, k);
    }
    // gcd(u, v) divides the resultant, so only its factors need clearing
    let mut rbar = f.resultant.clone();
    while rbar.degree() > 0 {
        let g1 = rbar.gcd(&u.rem(&rbar, k).expect("nonzero"), k);
        if g1.degree() == 0 {
            break;
        }
        let g = g1.gcd(&v.rem(&g1, k).expect("nonzero"), k);
        if g.degree() == 0 {
            break;
        }
        u = u.div_exact(&g, k).expect("common factor");
        v = v.div_exact(&g, k).expect("common factor");
        rbar = rbar.div_exact(&g, k).expect("divides resultant");
    }
    debug_assert!(u.gcd(&v, k).degree() == 0, "uncleared common factor");
    ProjPoint::from_coprime(u, v, m, k)
}

/// Composition f(g(z)) as a rational map; degrees multiply.
pub fn compose(f: &RationalMap, g: &RationalMap) -> Result<RationalMap> {
    let k = &f.k;
    let qf = f.q as usize;
    // z-polynomials with Poly coefficients
    let zp_mul = |a: &Vec<Poly>, b: &Vec<Poly>| -> Vec<Poly> {
        let mut out = vec![Poly::zero(); a.len() + b.len() - 1];
        for (i, ca) in a.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (j, cb) in b.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&ca.mul(cb, k), k);
            }
        }
        out
    };
    let zp_add = |a: &Vec<Poly>, b: &Vec<Poly>| -> Vec<Poly> {
        let mut out = vec![Poly::zero(); a.len().max(b.len())];
        for (i, o) in out.iter_mut().enumerate() {
            let x = a.get(i).cloned().unwrap_or_else(Poly::zero);
            let y = b.get(i).cloned().unwrap_or_else(Poly::zero);
            *o = x.add(&y, k);
        }
        out
    };
    // powers of g's coordinate pair
    let mut gn_pows = vec![vec![Poly::one(k)]];
    let mut gd_pows = vec![vec![Poly::one(k)]];
    for i in 1..=qf {
        gn_pows.push(zp_mul(&gn_pows[i - 1], &g.num));
        gd_pows.push(zp_mul(&gd_pows[i - 1], &g.den));
    }
    let mut num = vec![Poly::zero()];
    let mut den = vec![Poly::zero()];
    for i in 0..=qf {
        let mono = zp_mul(&gn_pows[i], &gd_pows[qf - i]);
        if !f.num[i].is_zero() {
            let scaled: Vec<Poly> = mono.iter().map(|c| c.mul(&f.num[i], k)).collect();
            num = zp_add(&num, &scaled);
        }
        if !f.den[i].is_zero() {
            let scaled: Vec<Poly> = mono.iter().map(|c| c.mul(&f.den[i], k)).collect();
            den = zp_add(&den, &scaled);
        }
    }
    let want = qf * g.q as usize + 1;
    num.resize(want, Poly::zero());
    den.resize(want, Poly::zero());
    // strip joint content
    let mut content = Poly::zero();
    for c in num.iter().chain(den.iter()) {
        if !c.is_zero() {
            content = if content.is_zero() {
                c.clone()
            } else {
                content.gcd(c, k)
            };
        }
    }
    if content.degree() > 0 {
        for c in num.iter_mut().chain(den.iter_mut()) {
            if !c.is_zero() {
                *c = c.div_exact(&content, k)?;
            }
        }
    }
    RationalMap::from_cleared(num, den, k)
}

/// Canonical height with certified error <= eps: value = h(f^N x)/q^N at
/// the least N with C(f)/(q^N (q-1)) <= eps. Exact (error 0) when C = 0 or
/// when the orbit is detected to cycle (then the height is exactly zero).
pub fn canonical_height(
    f: &RationalMap,
    x: &ProjPoint,
    eps: &Rat,
    caps: &Caps,
) -> Result<HeightEstimate> {
    canonical_height_scaled(f, x, 1, eps, caps)
}

/// Canonical height for the polarization O(d), d >= 1: the limit of
/// d*h(f^n x)/q^n computed with its own stopping rule (so it is an
/// independent route, not d times the O(1) estimate).
pub fn canonical_height_scaled(
    f: &RationalMap,
    x: &ProjPoint,
    d: u32,
    eps: &Rat,
    caps: &Caps,
) -> Result<HeightEstimate> {
    if eps <= &rat_zero() {
        return Err(FfhError::validation("eps must be positive"));
    }
    if d == 0 {
        return Err(FfhError::validation("polarization degree must be >= 1"));
    }
    let q = rat_int(f.q as i64);
    let scale = rat_int(d as i64);
    let c = f.gap.clone() * scale.clone();
    let mut n: u32 = 0;
    let mut err = c.clone() / rat_int(f.q as i64 - 1);
    while !err.is_zero() && &err > eps {
        n += 1;
        if n > caps.iter_cap {
            return Err(FfhError::resource(format!(
                "canonical height needs N = {n} iterations, cap is {}",
                caps.iter_cap
            )));
        }
        err /= q.clone();
    }
    let mut y = x.clone();
    let mut seen: HashSet<ProjPoint> = HashSet::new();
    for _ in 0..n {
        if !seen.insert(y.clone()) {
            // the orbit cycles: canonical height is exactly zero
            return Ok(HeightEstimate::exact(rat_zero()));
        }
        y = evaluate(f, &y);
    }
    let mut qn = rat_int(1);
    for _ in 0..n {
        qn *= q.clone();
    }
    let value = scale * height(&y) / qn;
    if c.is_zero() {
        Ok(HeightEstimate::exact(value))
    } else {
        Ok(HeightEstimate::approx(value, err))
    }
}

/// Exact preperiodicity: orbit heights above C(f)/(q-1) certify an
/// infinite orbit; otherwise the orbit lives in a finite Northcott ball
/// and cycle detection terminates. Always terminates, never errs.
pub fn is_preperiodic(f: &RationalMap, x: &ProjPoint) -> bool {
    let cutoff = f.prep_cutoff();
    let mut seen: HashSet<ProjPoint> = HashSet::new();
    let mut y = x.clone();
    loop {
        if height(&y) > cutoff {
            return false;
        }
        if !seen.insert(y.clone()) {
            return true;
        }
        y = evaluate(f, &y);
    }
}

/// All preperiodic points among the points of coordinate degree <= deg_bound
/// over F_{q^m}, in canonical order.
pub fn prep_set(f: &RationalMap, m: u32, deg_bound: u32, caps: &Caps) -> Result<Vec<ProjPoint>> {
    let pts = crate::projheights::enumerate_points(&f.k, m, deg_bound, caps)?;
    let flags: Vec<Option<ProjPoint>> = pts
        .par_iter()
        .map(|x| {
            if is_preperiodic(f, x) {
                Some(x.clone())
            } else {
                None
            }
        })
        .collect();
    Ok(flags.into_iter().flatten().collect())
}
