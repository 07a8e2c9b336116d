//! Constant-field extensions K -> K_m = F_{q^m}(t).
//!
//! The extension field F_{p^(n*m)} is built with its own canonical modulus,
//! and the base field embeds by sending the base generator to the least
//! root of the base modulus in the extension (least in the canonical
//! element order). One deterministic hop from the base field to the active
//! field is all the library ever needs; ramified extensions of K are out of
//! scope and rejected where they would arise.

use super::factor::factor;
use super::{FFElem, GroundField, Poly, RatFunc};
use crate::error::{FfhError, Result};

/// A constant extension of the base field, with the embedding data.
#[derive(Clone, Debug)]
pub struct ConstExt {
    base: GroundField,
    m: u32,
    field: GroundField,
    /// Image of the base generator in the extension field.
    gen_image: FFElem,
}

impl ConstExt {
    pub fn new(base: &GroundField, m: u32) -> Result<ConstExt> {
        if m == 0 {
            return Err(FfhError::validation("extension index must be >= 1"));
        }
        if m == 1 {
            return Ok(ConstExt {
                base: base.clone(),
                m,
                field: base.clone(),
                gen_image: base.generator(),
            });
        }
        let field = GroundField::new(base.p(), base.degree() * m as usize)?;
        let gen_image = if base.degree() == 1 {
            field.generator() // never used: prime-field elements are constants
        } else {
            least_root_of_base_modulus(base, &field)?
        };
        Ok(ConstExt {
            base: base.clone(),
            m,
            field,
            gen_image,
        })
    }

    pub fn base(&self) -> &GroundField {
        &self.base
    }

    pub fn index(&self) -> u32 {
        self.m
    }

    /// The active constant field F_{q^m}.
    pub fn field(&self) -> &GroundField {
        &self.field
    }

    pub fn embed_elem(&self, a: &FFElem) -> FFElem {
        if self.m == 1 {
            return a.clone();
        }
        // Horner in the generator image
        let mut acc = self.field.zero();
        for i in (0..self.base.degree()).rev() {
            acc = self.field.mul(&acc, &self.gen_image);
            let d = a.digits()[i];
            acc = self.field.add(&acc, &self.field.from_u64(d));
        }
        acc
    }

    pub fn embed_poly(&self, f: &Poly) -> Poly {
        if self.m == 1 {
            return f.clone();
        }
        Poly::from_coeffs(
            &self.field,
            f.coeffs().iter().map(|c| self.embed_elem(c)).collect(),
        )
    }

    pub fn embed_ratfunc(&self, r: &RatFunc) -> RatFunc {
        if self.m == 1 {
            return r.clone();
        }
        RatFunc::new(
            self.embed_poly(r.num()),
            self.embed_poly(r.den()),
            &self.field,
        )
        .expect("nonzero denominator embeds to nonzero")
    }
}

fn least_root_of_base_modulus(base: &GroundField, ext: &GroundField) -> Result<FFElem> {
    // view the base modulus (digits over F_p) as a polynomial over the
    // extension field with prime-field coefficients
    let coeffs: Vec<FFElem> = base
        .modulus_digits()
        .iter()
        .map(|&d| ext.from_u64(d))
        .collect();
    let modulus = Poly::from_coeffs(ext, coeffs);
    let fac = factor(&modulus, ext)?;
    let mut roots: Vec<FFElem> = Vec::new();
    for (f, _) in fac.factors {
        if f.degree() == 1 {
            // monic t + c has root -c
            roots.push(ext.neg(&f.coeff(0, ext)));
        }
    }
    if roots.len() != base.degree() {
        return Err(FfhError::validation(
            "base modulus does not split in the extension (degree mismatch)",
        ));
    }
    roots.sort_by(|a, b| a.key_cmp(b));
    Ok(roots.into_iter().next().unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_extension_is_identity() {
        let f4 = GroundField::new(2, 2).unwrap();
        let e = ConstExt::new(&f4, 1).unwrap();
        let g = f4.generator();
        assert_eq!(e.embed_elem(&g), g);
    }

    #[test]
    fn embedding_is_a_field_homomorphism() {
        // F_4 into F_16 and F_9 into F_81
        for (p, n, m) in [(2u64, 2usize, 2u32), (3, 2, 2), (2, 2, 3)] {
            let base = GroundField::new(p, n).unwrap();
            let ext = ConstExt::new(&base, m).unwrap();
            let elems: Vec<FFElem> = base.iter_elements().collect();
            for a in &elems {
                for b in &elems {
                    let ea = ext.embed_elem(a);
                    let eb = ext.embed_elem(b);
                    assert_eq!(ext.field().add(&ea, &eb), ext.embed_elem(&base.add(a, b)));
                    assert_eq!(ext.field().mul(&ea, &eb), ext.embed_elem(&base.mul(a, b)));
                }
            }
            // injective on a sample: distinct elements stay distinct
            let imgs: std::collections::HashSet<_> =
                elems.iter().map(|a| ext.embed_elem(a)).collect();
            assert_eq!(imgs.len(), elems.len());
        }
    }

    #[test]
    fn prime_field_embeds_as_constants() {
        let f5 = GroundField::new(5, 1).unwrap();
        let ext = ConstExt::new(&f5, 3).unwrap();
        assert_eq!(ext.field().order().unwrap(), 125);
        for c in 0..5 {
            assert_eq!(ext.embed_elem(&f5.from_u64(c)), ext.field().from_u64(c));
        }
    }
}
