//! Places of K_m = F_{q^m}(t): monic irreducibles of `F_{q^m}[t]` and the
//! point at infinity, with ord_inf(a) = deg(den) - deg(num). The product
//! formula sum_v deg(v) * ord_v(a) = 0 is the contract every height
//! computation downstream leans on.

use super::factor::factor;
use super::{GroundField, Poly, RatFunc};
use crate::error::{FfhError, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum PlaceKind {
    Finite(Poly),
    Infinite,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Place {
    kind: PlaceKind,
    degree: u32,
}

impl Place {
    pub fn infinite() -> Place {
        Place {
            kind: PlaceKind::Infinite,
            degree: 1,
        }
    }

    /// A finite place from a monic irreducible polynomial.
    pub fn finite(pi: Poly, k: &GroundField) -> Result<Place> {
        if !pi.is_monic(k) {
            return Err(FfhError::validation("place polynomial must be monic"));
        }
        if !pi.is_irreducible(k)? {
            return Err(FfhError::validation(format!(
                "place polynomial {} is not irreducible",
                pi.to_string_t(k)
            )));
        }
        let degree = pi.degree() as u32;
        Ok(Place {
            kind: PlaceKind::Finite(pi),
            degree,
        })
    }

    /// Internal constructor for polynomials already known irreducible.
    pub(crate) fn finite_unchecked(pi: Poly) -> Place {
        let degree = pi.degree() as u32;
        Place {
            kind: PlaceKind::Finite(pi),
            degree,
        }
    }

    pub fn kind(&self) -> &PlaceKind {
        &self.kind
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self.kind, PlaceKind::Infinite)
    }

    pub fn to_string_t(&self, k: &GroundField) -> String {
        match &self.kind {
            PlaceKind::Infinite => "inf".into(),
            PlaceKind::Finite(pi) => pi.to_string_t(k),
        }
    }
}

/// ord_v(a) for nonzero a in K_m.
pub fn ord(v: &Place, a: &RatFunc, k: &GroundField) -> Result<i64> {
    if a.is_zero() {
        return Err(FfhError::domain("valuation of zero is undefined"));
    }
    match &v.kind {
        PlaceKind::Infinite => Ok(a.den().degree() - a.num().degree()),
        PlaceKind::Finite(pi) => Ok(a.num().ord_at(pi, k)? - a.den().ord_at(pi, k)?),
    }
}

/// sum_v deg(v) * ord_v(a), computed literally from a factorization of the
/// numerator and denominator plus the infinite place. The product formula
/// says this is always zero; callers assert, this function computes.
pub fn product_formula_defect(a: &RatFunc, k: &GroundField) -> Result<i64> {
    if a.is_zero() {
        return Err(FfhError::domain("product formula defect of zero"));
    }
    let mut total: i64 = a.den().degree() - a.num().degree(); // infinite place
    if !a.num().is_constant() {
        for (pi, e) in factor(a.num(), k)?.factors {
            total += pi.degree() * (e as i64);
        }
    }
    if !a.den().is_constant() {
        for (pi, e) in factor(a.den(), k)?.factors {
            total -= pi.degree() * (e as i64);
        }
    }
    Ok(total)
}

/// All places of degree <= d: infinity first, then finite places ordered by
/// degree and then by the canonical polynomial order.
pub fn places_up_to(d: u32, k: &GroundField) -> Result<Vec<Place>> {
    if d < 1 {
        return Err(FfhError::validation("place degree bound must be >= 1"));
    }
    let mut out = vec![Place::infinite()];
    for deg in 1..=d {
        let mut of_degree: Vec<Poly> = Vec::new();
        for f in monic_polys_of_degree(deg as usize, k) {
            if f.is_irreducible(k)? {
                of_degree.push(f);
            }
        }
        of_degree.sort_by(|a, b| a.key_cmp(b));
        out.extend(of_degree.into_iter().map(Place::finite_unchecked));
    }
    Ok(out)
}

/// Monic polynomials of exact degree `deg`, in canonical order.
pub fn monic_polys_of_degree(deg: usize, k: &GroundField) -> impl Iterator<Item = Poly> + '_ {
    let n = k.degree();
    let p = k.p();
    // flat odometer: digit j of coefficient i lives at slot i*n + j
    let mut digits = vec![0u64; deg * n];
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let mut coeffs = Vec::with_capacity(deg + 1);
        for i in 0..deg {
            coeffs.push(
                k.from_digits(&digits[i * n..(i + 1) * n])
                    .expect("digits fit"),
            );
        }
        coeffs.push(k.one());
        let out = Poly::from_coeffs(k, coeffs);
        let mut i = 0;
        loop {
            if i == digits.len() {
                done = true;
                break;
            }
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
        Some(out)
    })
}

/// All polynomials of degree <= `deg` (including zero), in canonical order
/// (by degree, then coefficient key).
pub fn polys_up_to_degree(deg: usize, k: &GroundField) -> impl Iterator<Item = Poly> + '_ {
    let mut d: i64 = -1;
    let mut inner: Option<Box<dyn Iterator<Item = Poly> + '_>> = None;
    std::iter::from_fn(move || loop {
        if let Some(it) = inner.as_mut() {
            if let Some(f) = it.next() {
                return Some(f);
            }
        }
        d += 1;
        if d > deg as i64 {
            return None;
        }
        if d == 0 {
            // zero plus the nonzero constants, i.e. all constants
            let consts: Vec<Poly> = k.iter_elements().map(|e| Poly::constant(k, e)).collect();
            inner = Some(Box::new(consts.into_iter()));
        } else {
            // non-monic leading coefficients too: scale monic ones by each
            // nonzero constant, keeping canonical order within a degree
            let dd = d as usize;
            let mut all: Vec<Poly> = Vec::new();
            for m in monic_polys_of_degree(dd, k) {
                all.push(m);
            }
            let mut scaled: Vec<Poly> = Vec::new();
            for c in k.iter_elements() {
                if k.is_zero(&c) {
                    continue;
                }
                for m in &all {
                    scaled.push(m.scale(&c, k));
                }
            }
            scaled.sort_by(|a, b| a.key_cmp(b));
            inner = Some(Box::new(scaled.into_iter()));
        }
    })
}

/// Number of monic irreducibles of degree e over F_q: the necklace count
/// (1/e) sum_{j | e} mu(j) q^(e/j). Used as an independent oracle in tests.
pub fn necklace_count(q: u64, e: u32) -> u64 {
    let mobius = |mut n: u32| -> i64 {
        let mut m = 1i64;
        let mut d = 2;
        while d * d <= n {
            if n % d == 0 {
                n /= d;
                if n % d == 0 {
                    return 0;
                }
                m = -m;
            }
            d += 1;
        }
        if n > 1 {
            m = -m;
        }
        m
    };
    let mut total: i64 = 0;
    for j in 1..=e {
        if e % j == 0 {
            let mu = mobius(j);
            if mu != 0 {
                total += mu * (q as i64).pow(e / j);
            }
        }
    }
    (total / e as i64) as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::parse::parse_ratfunc;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn ord_examples() {
        let f3 = GroundField::new(3, 1).unwrap();
        let t = Poly::t(&f3);
        let v_t = Place::finite(t.clone(), &f3).unwrap();
        let v_inf = Place::infinite();
        // ord_(t)(t^2/(t+1)) = 2, ord_inf = -1
        let a = parse_ratfunc("t^2/(t+1)", &f3).unwrap();
        assert_eq!(ord(&v_t, &a, &f3).unwrap(), 2);
        assert_eq!(ord(&v_inf, &a, &f3).unwrap(), -1);
        // ord_(t+1)((t+1)^3) = 3
        let v_t1 = Place::finite(t.add(&Poly::one(&f3), &f3), &f3).unwrap();
        let b = parse_ratfunc("(t+1)^3", &f3).unwrap();
        assert_eq!(ord(&v_t1, &b, &f3).unwrap(), 3);
        // valuation of zero is a domain error
        let z = RatFunc::zero(&f3);
        assert!(ord(&v_t, &z, &f3).is_err());
    }

    #[test]
    fn ord_is_additive_on_products() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let k = GroundField::new(5, 1).unwrap();
        let places = places_up_to(2, &k).unwrap();
        for _ in 0..40 {
            let mk = |rng: &mut ChaCha8Rng| {
                let coeffs: Vec<_> = (0..rng.gen_range(1..5))
                    .map(|_| k.from_u64(rng.gen_range(0..5)))
                    .collect();
                Poly::from_coeffs(&k, coeffs)
            };
            let (n1, d1, n2, d2) = (mk(&mut rng), mk(&mut rng), mk(&mut rng), mk(&mut rng));
            if n1.is_zero() || d1.is_zero() || n2.is_zero() || d2.is_zero() {
                continue;
            }
            let a = RatFunc::new(n1, d1, &k).unwrap();
            let b = RatFunc::new(n2, d2, &k).unwrap();
            let ab = a.mul(&b, &k);
            for v in &places {
                assert_eq!(
                    ord(v, &ab, &k).unwrap(),
                    ord(v, &a, &k).unwrap() + ord(v, &b, &k).unwrap()
                );
                // ultrametric: ord(a+b) >= min(ord a, ord b)
                let s = a.add(&b, &k);
                if !s.is_zero() {
                    assert!(
                        ord(v, &s, &k).unwrap()
                            >= ord(v, &a, &k).unwrap().min(ord(v, &b, &k).unwrap())
                    );
                }
            }
        }
    }

    #[test]
    fn product_formula_spec_examples() {
        let f3 = GroundField::new(3, 1).unwrap();
        let a = parse_ratfunc("(t^2+1)/t", &f3).unwrap();
        assert_eq!(product_formula_defect(&a, &f3).unwrap(), 0);
        let one = RatFunc::one(&f3);
        assert_eq!(product_formula_defect(&one, &f3).unwrap(), 0);
        let t5 = parse_ratfunc("t^5", &f3).unwrap();
        assert_eq!(product_formula_defect(&t5, &f3).unwrap(), 0);
    }

    #[test]
    fn places_listing() {
        let f2 = GroundField::new(2, 1).unwrap();
        let ps = places_up_to(1, &f2).unwrap();
        assert_eq!(ps.len(), 3); // inf, t, t+1
        assert!(ps[0].is_infinite());
        assert_eq!(ps[1].to_string_t(&f2), "t");
        assert_eq!(ps[2].to_string_t(&f2), "t+1");
        // degree 2 adds exactly t^2+t+1
        let ps2 = places_up_to(2, &f2).unwrap();
        assert_eq!(ps2.len(), 4);
        assert_eq!(ps2[3].to_string_t(&f2), "t^2+t+1");

        let f3 = GroundField::new(3, 1).unwrap();
        let ps3 = places_up_to(1, &f3).unwrap();
        let names: Vec<_> = ps3.iter().map(|p| p.to_string_t(&f3)).collect();
        assert_eq!(names, vec!["inf", "t", "t+1", "t+2"]);
    }

    #[test]
    fn place_counts_match_necklace_formula() {
        for q in [2u64, 3, 4, 5] {
            let k = GroundField::from_order(q).unwrap();
            let d = 4u32;
            let ps = places_up_to(d, &k).unwrap();
            for e in 1..=d {
                let got = ps
                    .iter()
                    .filter(|p| !p.is_infinite() && p.degree() == e)
                    .count() as u64;
                assert_eq!(got, necklace_count(q, e), "degree {e} places over F_{q}");
            }
        }
    }
}
