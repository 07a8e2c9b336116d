//! Rational functions in t: the field K_m = F_{q^m}(t).
//!
//! Canonical representative: denominator monic and coprime to the
//! numerator; zero is 0/1.

use super::{FFElem, GroundField, Poly};
use crate::error::{FfhError, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly, k: &GroundField) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(FfhError::domain("zero denominator in rational function"));
        }
        let mut r = RatFunc { num, den };
        r.reduce(k);
        Ok(r)
    }

    pub fn from_poly(p: Poly, k: &GroundField) -> RatFunc {
        RatFunc {
            num: p,
            den: Poly::one(k),
        }
    }

    pub fn zero(k: &GroundField) -> RatFunc {
        RatFunc::from_poly(Poly::zero(), k)
    }

    pub fn one(k: &GroundField) -> RatFunc {
        RatFunc::from_poly(Poly::one(k), k)
    }

    pub fn constant(k: &GroundField, c: FFElem) -> RatFunc {
        RatFunc::from_poly(Poly::constant(k, c), k)
    }

    pub fn t(k: &GroundField) -> RatFunc {
        RatFunc::from_poly(Poly::t(k), k)
    }

    fn reduce(&mut self, k: &GroundField) {
        if self.num.is_zero() {
            self.den = Poly::one(k);
            return;
        }
        let g = self.num.gcd(&self.den, k);
        if g.degree() > 0 {
            self.num = self.num.div_exact(&g, k).expect("gcd divides");
            self.den = self.den.div_exact(&g, k).expect("gcd divides");
        }
        if !self.den.is_monic(k) {
            let inv = k.inv(&self.den.leading(k)).expect("nonzero leading");
            self.num = self.num.scale(&inv, k);
            self.den = self.den.scale(&inv, k);
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == 0
    }

    /// True when both numerator and denominator are constants.
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn as_poly(&self) -> Result<Poly> {
        if !self.is_polynomial() {
            return Err(FfhError::domain("rational function is not a polynomial"));
        }
        Ok(self.num.clone())
    }

    pub fn add(&self, rhs: &RatFunc, k: &GroundField) -> RatFunc {
        let num = self.num.mul(&rhs.den, k).add(&rhs.num.mul(&self.den, k), k);
        let den = self.den.mul(&rhs.den, k);
        RatFunc::new(num, den, k).expect("nonzero denominator")
    }

    pub fn sub(&self, rhs: &RatFunc, k: &GroundField) -> RatFunc {
        self.add(&rhs.neg(k), k)
    }

    pub fn neg(&self, k: &GroundField) -> RatFunc {
        RatFunc {
            num: self.num.neg(k),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, rhs: &RatFunc, k: &GroundField) -> RatFunc {
        let num = self.num.mul(&rhs.num, k);
        let den = self.den.mul(&rhs.den, k);
        RatFunc::new(num, den, k).expect("nonzero denominator")
    }

    pub fn inv(&self, k: &GroundField) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(FfhError::domain("inverse of zero rational function"));
        }
        RatFunc::new(self.den.clone(), self.num.clone(), k)
    }

    pub fn div(&self, rhs: &RatFunc, k: &GroundField) -> Result<RatFunc> {
        Ok(self.mul(&rhs.inv(k)?, k))
    }

    pub fn pow(&self, e: u64, k: &GroundField) -> RatFunc {
        RatFunc {
            num: self.num.pow(e, k),
            den: self.den.pow(e, k),
        }
    }

    /// Naive height as an element of K: max of numerator/denominator degree.
    pub fn k_height(&self) -> i64 {
        if self.is_zero() {
            0
        } else {
            self.num.degree().max(self.den.degree())
        }
    }

    pub fn to_string_t(&self, k: &GroundField) -> String {
        if self.is_polynomial() {
            self.num.to_string_t(k)
        } else {
            format!(
                "({})/({})",
                self.num.to_string_t(k),
                self.den.to_string_t(k)
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_and_identities() {
        let k = GroundField::new(3, 1).unwrap();
        let t = RatFunc::t(&k);
        let one = RatFunc::one(&k);
        // (t^2 - 1)/(t - 1) reduces to t + 1
        let num = t.mul(&t, &k).sub(&one, &k);
        let den = t.sub(&one, &k);
        let r = num.div(&den, &k).unwrap();
        assert!(r.is_polynomial());
        let expect = t.add(&one, &k);
        assert_eq!(r, expect);
    }

    #[test]
    fn denominator_is_monic() {
        let k = GroundField::new(5, 1).unwrap();
        let t = Poly::t(&k);
        let two_t = t.scale(&k.from_u64(2), &k);
        // 1 / (2t) normalizes to 3 / t  (since 2^{-1} = 3 mod 5)
        let r = RatFunc::new(Poly::one(&k), two_t, &k).unwrap();
        assert!(r.den().is_monic(&k));
        assert_eq!(r.num(), &Poly::constant(&k, k.from_u64(3)));
    }

    #[test]
    fn zero_handling() {
        let k = GroundField::new(2, 1).unwrap();
        let z = RatFunc::zero(&k);
        assert!(z.is_zero());
        assert!(z.inv(&k).is_err());
        let t = RatFunc::t(&k);
        assert_eq!(t.sub(&t, &k), z);
    }
}
