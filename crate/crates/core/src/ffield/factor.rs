//! Polynomial factorization over F_{p^n}: squarefree decomposition,
//! distinct-degree splitting, then randomized equal-degree splitting
//! (Cantor-Zassenhaus, with the trace construction in characteristic 2).
//!
//! The equal-degree stage is the only randomized code in the crate; it runs
//! on a ChaCha stream from an explicit seed so factorizations are
//! bit-reproducible. `DEFAULT_FACTOR_SEED` is used unless the caller
//! supplies one.

use super::{GroundField, Poly};
use crate::error::{FfhError, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_FACTOR_SEED: u64 = 0x0ffba11;

/// Monic irreducible factors with multiplicities, plus the leading
/// coefficient of the input, so that lead * prod(f_i^e_i) reconstructs it.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub lead: super::FFElem,
    pub factors: Vec<(Poly, u32)>,
    pub seed: u64,
}

pub fn factor(f: &Poly, k: &GroundField) -> Result<Factorization> {
    factor_seeded(f, k, DEFAULT_FACTOR_SEED)
}

pub fn factor_seeded(f: &Poly, k: &GroundField, seed: u64) -> Result<Factorization> {
    if f.is_zero() {
        return Err(FfhError::domain("factorization of the zero polynomial"));
    }
    let lead = f.leading(k);
    let mut out: Vec<(Poly, u32)> = Vec::new();
    let monic = f.monic(k);
    if monic.degree() > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for (g, mult) in squarefree_parts(&monic, k)? {
            for (d, h) in distinct_degree(&g, k)? {
                for irr in equal_degree(&h, d, k, &mut rng)? {
                    out.push((irr, mult));
                }
            }
        }
    }
    out.sort_by(|a, b| a.0.key_cmp(&b.0));
    Ok(Factorization {
        lead,
        factors: out,
        seed,
    })
}

/// Yoshida/standard squarefree decomposition, handling the inseparable case
/// f' = 0 by extracting p-th roots coefficientwise.
fn squarefree_parts(f: &Poly, k: &GroundField) -> Result<Vec<(Poly, u32)>> {
    let p = k.p();
    let mut out: Vec<(Poly, u32)> = Vec::new();
    let mut stack: Vec<(Poly, u32)> = vec![(f.monic(k), 1)];
    while let Some((f, scale)) = stack.pop() {
        if f.degree() == 0 {
            continue;
        }
        let df = f.derivative(k);
        if df.is_zero() {
            // f = g(t^p): pull back through Frobenius
            let mut coeffs = Vec::new();
            for i in (0..=f.degree() as usize).step_by(p as usize) {
                coeffs.push(k.pth_root(&f.coeff(i, k)));
            }
            let g = Poly::from_coeffs(k, coeffs);
            stack.push((g, scale * p as u32));
            continue;
        }
        // separable part loop (Musser): c = gcd(f, f')
        let mut c = f.gcd(&df, k);
        let mut w = f.div_exact(&c, k)?;
        let mut i = 1u32;
        while w.degree() > 0 {
            let y = w.gcd(&c, k);
            let part = w.div_exact(&y, k)?;
            if part.degree() > 0 {
                out.push((part, scale * i));
            }
            w = y;
            c = c.div_exact(&w, k)?;
            i += 1;
        }
        if c.degree() > 0 {
            // leftover is again a p-th power
            stack.push((c, scale));
        }
    }
    Ok(out)
}

/// Split a squarefree monic polynomial into products of irreducibles of the
/// same degree: returns (degree, product) pairs.
fn distinct_degree(f: &Poly, k: &GroundField) -> Result<Vec<(usize, Poly)>> {
    let q = k.order()? as u128;
    let mut out = Vec::new();
    let mut f = f.clone();
    let x = Poly::t(k);
    let mut xq = x.rem(&f, k)?;
    let mut d = 0usize;
    while f.degree() > 0 {
        d += 1;
        if (f.degree() as usize) < 2 * d {
            // what is left is irreducible
            out.push((f.degree() as usize, f.clone()));
            break;
        }
        xq = xq.powmod(q, &f, k)?;
        let g = f.gcd(&xq.sub(&x, k), k);
        if g.degree() > 0 {
            out.push((d, g.clone()));
            f = f.div_exact(&g, k)?;
            xq = xq.rem(&f, k)?;
        }
    }
    Ok(out)
}

/// Cantor-Zassenhaus equal-degree splitting of a product of irreducibles of
/// known degree d.
fn equal_degree(f: &Poly, d: usize, k: &GroundField, rng: &mut ChaCha8Rng) -> Result<Vec<Poly>> {
    let deg = f.degree() as usize;
    if deg == d {
        return Ok(vec![f.monic(k)]);
    }
    let split = if k.p() == 2 {
        equal_degree_split_char2(f, d, k, rng)?
    } else {
        equal_degree_split_odd(f, d, k, rng)?
    };
    let other = f.div_exact(&split, k)?;
    let mut out = equal_degree(&split, d, k, rng)?;
    out.extend(equal_degree(&other, d, k, rng)?);
    Ok(out)
}

fn random_poly_below(deg: usize, k: &GroundField, rng: &mut ChaCha8Rng) -> Poly {
    let p = k.p();
    let n = k.degree();
    let coeffs: Vec<_> = (0..deg)
        .map(|_| {
            let digits: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
            k.from_digits(&digits).expect("digits fit")
        })
        .collect();
    Poly::from_coeffs(k, coeffs)
}

fn equal_degree_split_odd(
    f: &Poly,
    d: usize,
    k: &GroundField,
    rng: &mut ChaCha8Rng,
) -> Result<Poly> {
    let q = k.order()? as u128;
    // (q^d - 1) / 2
    let mut qd: u128 = 1;
    for _ in 0..d {
        qd = qd
            .checked_mul(q)
            .ok_or_else(|| FfhError::resource("field too large for equal-degree splitting"))?;
    }
    let e = (qd - 1) / 2;
    loop {
        let r = random_poly_below(f.degree() as usize, k, rng);
        if r.degree() < 1 {
            continue;
        }
        let g = f.gcd(&r, k);
        if g.degree() > 0 && g.degree() < f.degree() {
            return Ok(g);
        }
        let h = r.powmod(e, f, k)?;
        let g = f.gcd(&h.sub(&Poly::one(k), k), k);
        if g.degree() > 0 && g.degree() < f.degree() {
            return Ok(g);
        }
    }
}

fn equal_degree_split_char2(
    f: &Poly,
    d: usize,
    k: &GroundField,
    rng: &mut ChaCha8Rng,
) -> Result<Poly> {
    // trace over F_2: T(r) = r + r^2 + r^4 + ... + r^(2^(nd-1)) mod f
    let bits = k.degree() * d;
    loop {
        let r = random_poly_below(f.degree() as usize, k, rng);
        if r.degree() < 1 {
            continue;
        }
        let mut tr = r.clone();
        let mut cur = r.clone();
        for _ in 1..bits {
            cur = cur.mul(&cur, k).rem(f, k)?;
            tr = tr.add(&cur, k);
        }
        let g = f.gcd(&tr, k);
        if g.degree() > 0 && g.degree() < f.degree() {
            return Ok(g);
        }
    }
}

impl Factorization {
    /// Expand the factorization back into a polynomial.
    pub fn expand(&self, k: &GroundField) -> Poly {
        let mut acc = Poly::constant(k, self.lead.clone());
        for (f, e) in &self.factors {
            acc = acc.mul(&f.pow(*e as u64, k), k);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn spec_examples() {
        // t^2 + t over F_2 -> t * (t+1)
        let f2 = GroundField::new(2, 1).unwrap();
        let t = Poly::t(&f2);
        let f = t.mul(&t, &f2).add(&t, &f2);
        let fac = factor(&f, &f2).unwrap();
        assert_eq!(fac.factors.len(), 2);
        assert!(fac.factors.iter().all(|(_, e)| *e == 1));

        // t^2 + 1 over F_2 -> (t+1)^2
        let g = t.mul(&t, &f2).add(&Poly::one(&f2), &f2);
        let fac = factor(&g, &f2).unwrap();
        assert_eq!(fac.factors.len(), 1);
        assert_eq!(fac.factors[0].1, 2);
        assert_eq!(fac.factors[0].0.degree(), 1);

        // t^2 + 1 over F_3 stays irreducible
        let f3 = GroundField::new(3, 1).unwrap();
        let t3 = Poly::t(&f3);
        let h = t3.mul(&t3, &f3).add(&Poly::one(&f3), &f3);
        let fac = factor(&h, &f3).unwrap();
        assert_eq!(fac.factors.len(), 1);
        assert_eq!(fac.factors[0].1, 1);
        assert_eq!(fac.factors[0].0.degree(), 2);
    }

    #[test]
    fn zero_is_domain_error() {
        let f2 = GroundField::new(2, 1).unwrap();
        assert!(factor(&Poly::zero(), &f2).is_err());
    }

    /// Round-trip: refactoring the expanded product reproduces the multiset.
    #[test]
    fn factor_round_trip_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for q in [2u64, 3, 4, 5, 9, 8] {
            let k = GroundField::from_order(q).unwrap();
            for _ in 0..40 {
                let deg = rng.gen_range(1..9);
                let f = super::random_poly_below(deg + 1, &k, &mut rng);
                if f.is_zero() || f.degree() == 0 {
                    continue;
                }
                let fac = factor(&f, &k).unwrap();
                assert_eq!(fac.expand(&k), f, "expand(factor(f)) != f over F_{q}");
                for (g, _) in &fac.factors {
                    assert!(g.is_monic(&k));
                    assert!(g.is_irreducible(&k).unwrap(), "non-irreducible factor");
                }
                // refactor the expansion: same multiset
                let fac2 = factor_seeded(&fac.expand(&k), &k, 999).unwrap();
                assert_eq!(fac.factors, fac2.factors);
            }
        }
    }

    /// Inseparable inputs: (t^3 + g)^3 over F_9 etc.
    #[test]
    fn perfect_power_factors() {
        let k = GroundField::new(3, 2).unwrap();
        let g = k.generator();
        let base = Poly::t(&k)
            .mul(&Poly::t(&k), &k)
            .add(&Poly::constant(&k, g), &k);
        let f = base.pow(3, &k); // derivative vanishes
        let fac = factor(&f, &k).unwrap();
        assert_eq!(fac.expand(&k), f);
        assert_eq!(fac.factors.iter().map(|(_, e)| e).sum::<u32>() % 3, 0);
    }
}
