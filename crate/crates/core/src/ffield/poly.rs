//! Dense univariate polynomials over a [`GroundField`].
//!
//! Coefficients are little-endian with no trailing zeros; the zero
//! polynomial is the empty vector. All operations take the field context
//! explicitly.
//!
//! Multiplication dispatches to a bit-packed kernel in characteristic 2
//! (one u64 word per 64 coefficients, one slice per generator power), which
//! is what keeps canonical-height orbits of degree ~10^4 cheap.

use super::{FFElem, GroundField};
use crate::error::{FfhError, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    coeffs: Vec<FFElem>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: vec![] }
    }

    pub fn one(k: &GroundField) -> Poly {
        Poly {
            coeffs: vec![k.one()],
        }
    }

    /// The variable t.
    pub fn t(k: &GroundField) -> Poly {
        Poly {
            coeffs: vec![k.zero(), k.one()],
        }
    }

    pub fn constant(k: &GroundField, c: FFElem) -> Poly {
        if k.is_zero(&c) {
            Poly::zero()
        } else {
            Poly { coeffs: vec![c] }
        }
    }

    pub fn from_coeffs(k: &GroundField, coeffs: Vec<FFElem>) -> Poly {
        let mut p = Poly { coeffs };
        p.trim(k);
        p
    }

    fn trim(&mut self, k: &GroundField) {
        while self.coeffs.last().map(|c| k.is_zero(c)) == Some(true) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports -1 for convenience in formulas.
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[FFElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize, k: &GroundField) -> FFElem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| k.zero())
    }

    pub fn leading(&self, k: &GroundField) -> FFElem {
        self.coeffs.last().cloned().unwrap_or_else(|| k.zero())
    }

    pub fn is_monic(&self, k: &GroundField) -> bool {
        self.coeffs.last().map(|c| k.is_one(c)) == Some(true)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn add(&self, rhs: &Poly, k: &GroundField) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i);
            let b = rhs.coeffs.get(i);
            out.push(match (a, b) {
                (Some(a), Some(b)) => k.add(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Poly::from_coeffs(k, out)
    }

    pub fn sub(&self, rhs: &Poly, k: &GroundField) -> Poly {
        self.add(&rhs.neg(k), k)
    }

    pub fn neg(&self, k: &GroundField) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| k.neg(c)).collect(),
        }
    }

    pub fn scale(&self, c: &FFElem, k: &GroundField) -> Poly {
        if k.is_zero(c) {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| k.mul(a, c)).collect(),
        }
    }

    pub fn mul(&self, rhs: &Poly, k: &GroundField) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        if k.p() == 2 {
            return mul_char2(self, rhs, k);
        }
        if k.degree() == 1 && k.p() < (1 << 31) {
            // u128 accumulation in the packed kernel needs p^2 headroom
            return mul_prime_packed(self, rhs, k);
        }
        let mut out = vec![k.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if k.is_zero(a) {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if k.is_zero(b) {
                    continue;
                }
                let prod = k.mul(a, b);
                out[i + j] = k.add(&out[i + j], &prod);
            }
        }
        Poly::from_coeffs(k, out)
    }

    /// t^n.
    pub fn t_power(k: &GroundField, n: usize) -> Poly {
        let mut coeffs = vec![k.zero(); n + 1];
        coeffs[n] = k.one();
        Poly { coeffs }
    }

    pub fn shift(&self, n: usize, k: &GroundField) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![k.zero(); n];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn divrem(&self, rhs: &Poly, k: &GroundField) -> Result<(Poly, Poly)> {
        if rhs.is_zero() {
            return Err(FfhError::domain("polynomial division by zero"));
        }
        let mut rem = self.clone();
        if rem.degree() < rhs.degree() {
            return Ok((Poly::zero(), rem));
        }
        let lead_inv = k.inv(&rhs.leading(k))?;
        let mut quo = vec![k.zero(); (rem.degree() - rhs.degree() + 1) as usize];
        while !rem.is_zero() && rem.degree() >= rhs.degree() {
            let shift = (rem.degree() - rhs.degree()) as usize;
            let c = k.mul(&rem.leading(k), &lead_inv);
            quo[shift] = c.clone();
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if k.is_zero(b) {
                    continue;
                }
                let s = k.mul(&c, b);
                rem.coeffs[shift + j] = k.sub(&rem.coeffs[shift + j], &s);
            }
            rem.trim(k);
        }
        Ok((Poly::from_coeffs(k, quo), rem))
    }

    pub fn rem(&self, rhs: &Poly, k: &GroundField) -> Result<Poly> {
        Ok(self.divrem(rhs, k)?.1)
    }

    /// Exact division; errors when the remainder is nonzero.
    pub fn div_exact(&self, rhs: &Poly, k: &GroundField) -> Result<Poly> {
        let (q, r) = self.divrem(rhs, k)?;
        if !r.is_zero() {
            return Err(FfhError::domain("inexact polynomial division"));
        }
        Ok(q)
    }

    /// Monic gcd.
    pub fn gcd(&self, rhs: &Poly, k: &GroundField) -> Poly {
        let mut r0 = self.clone();
        let mut r1 = rhs.clone();
        while !r1.is_zero() {
            let r = r0.rem(&r1, k).expect("nonzero divisor");
            r0 = std::mem::replace(&mut r1, r);
        }
        r0.monic(k)
    }

    /// Extended gcd: returns (g, u, v) with u*self + v*rhs = g, g monic (or zero).
    pub fn xgcd(&self, rhs: &Poly, k: &GroundField) -> (Poly, Poly, Poly) {
        let mut r0 = self.clone();
        let mut r1 = rhs.clone();
        let mut s0 = Poly::one(k);
        let mut s1 = Poly::zero();
        let mut t0 = Poly::zero();
        let mut t1 = Poly::one(k);
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1, k).expect("nonzero divisor");
            let s = s0.sub(&q.mul(&s1, k), k);
            let t = t0.sub(&q.mul(&t1, k), k);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let c = k.inv(&r0.leading(k)).expect("nonzero leading");
        let cc = FFElem::clone(&c);
        (r0.scale(&c, k), s0.scale(&cc, k), t0.scale(&cc, k))
    }

    pub fn monic(&self, k: &GroundField) -> Poly {
        if self.is_zero() || self.is_monic(k) {
            return self.clone();
        }
        let inv = k.inv(&self.leading(k)).expect("nonzero leading");
        self.scale(&inv, k)
    }

    pub fn derivative(&self, k: &GroundField) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            let mut m = k.zero();
            // i * c computed by repeated addition mod p via i mod p
            let imod = (i as u64) % k.p();
            if imod != 0 {
                let factor = k.from_u64(imod);
                m = k.mul(&factor, c);
            }
            out.push(m);
        }
        Poly::from_coeffs(k, out)
    }

    pub fn eval(&self, x: &FFElem, k: &GroundField) -> FFElem {
        let mut acc = k.zero();
        for c in self.coeffs.iter().rev() {
            acc = k.mul(&acc, x);
            acc = k.add(&acc, c);
        }
        acc
    }

    /// Multiplicity of the monic irreducible `pi` in `self`.
    pub fn ord_at(&self, pi: &Poly, k: &GroundField) -> Result<i64> {
        if self.is_zero() {
            return Err(FfhError::domain("valuation of the zero polynomial"));
        }
        let mut m = 0i64;
        let mut cur = self.clone();
        loop {
            let (q, r) = cur.divrem(pi, k)?;
            if !r.is_zero() {
                return Ok(m);
            }
            m += 1;
            cur = q;
        }
    }

    pub fn pow(&self, mut e: u64, k: &GroundField) -> Poly {
        let mut acc = Poly::one(k);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, k);
            }
            base = base.mul(&base, k);
            e >>= 1;
        }
        acc
    }

    pub fn powmod(&self, mut e: u128, m: &Poly, k: &GroundField) -> Result<Poly> {
        let mut acc = Poly::one(k).rem(m, k)?;
        let mut base = self.rem(m, k)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, k).rem(m, k)?;
            }
            base = base.mul(&base, k).rem(m, k)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Irreducibility over the active field.
    pub fn is_irreducible(&self, k: &GroundField) -> Result<bool> {
        let n = self.degree();
        if n <= 0 {
            return Ok(false);
        }
        if n == 1 {
            return Ok(true);
        }
        let q = k.order()? as u128;
        let f = self.monic(k);
        let x = Poly::t(k);
        // x^(q^n) == x mod f
        let mut xq = x.rem(&f, k)?;
        for _ in 0..n {
            xq = xq.powmod(q, &f, k)?;
        }
        if !xq.sub(&x, k).rem(&f, k)?.is_zero() {
            return Ok(false);
        }
        let mut primes = vec![];
        let mut m = n as usize;
        let mut d = 2usize;
        while d * d <= m {
            if m % d == 0 {
                primes.push(d);
                while m % d == 0 {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            primes.push(m);
        }
        for r in primes {
            let mut xe = x.rem(&f, k)?;
            for _ in 0..(n as usize / r) {
                xe = xe.powmod(q, &f, k)?;
            }
            let g = f.gcd(&xe.sub(&x, k), k);
            if g.degree() != 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Canonical total order: by degree, then coefficients from the leading
    /// term down (each by its digit key). Used for deterministic listings.
    pub fn key_cmp(&self, other: &Poly) -> std::cmp::Ordering {
        match self.coeffs.len().cmp(&other.coeffs.len()) {
            std::cmp::Ordering::Equal => {}
            ord => return ord,
        }
        for i in (0..self.coeffs.len()).rev() {
            match self.coeffs[i].key_cmp(&other.coeffs[i]) {
                std::cmp::Ordering::Equal => {}
                ord => return ord,
            }
        }
        std::cmp::Ordering::Equal
    }

    /// Render in the variable `var`; multi-term coefficients get parenthesized
    /// so the printer and parser round-trip exactly.
    pub fn to_string_in(&self, k: &GroundField, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for i in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[i];
            if k.is_zero(c) {
                continue;
            }
            let cs = k.elem_to_string(c);
            let needs_parens = cs.contains('+');
            let coeff_part = if needs_parens {
                format!("({cs})")
            } else {
                cs.clone()
            };
            let term = match i {
                0 => coeff_part,
                _ => {
                    let v = if i == 1 {
                        var.to_string()
                    } else {
                        format!("{var}^{i}")
                    };
                    if k.is_one(c) {
                        v
                    } else {
                        format!("{coeff_part}*{v}")
                    }
                }
            };
            terms.push(term);
        }
        terms.join("+")
    }

    pub fn to_string_t(&self, k: &GroundField) -> String {
        self.to_string_in(k, "t")
    }
}

// ---------------------------------------------------------------------------
// Prime-field kernel for odd p: coefficients unpack to raw u64 digits, the
// product runs as Karatsuba over u128-accumulated schoolbook blocks.
// ---------------------------------------------------------------------------

const KARATSUBA_CUTOFF: usize = 48;

fn mul_prime_packed(a: &Poly, b: &Poly, k: &GroundField) -> Poly {
    let p = k.p();
    let av: Vec<u64> = a.coeffs.iter().map(|c| c.digits()[0]).collect();
    let bv: Vec<u64> = b.coeffs.iter().map(|c| c.digits()[0]).collect();
    let out = kara_mod(&av, &bv, p);
    Poly::from_coeffs(k, out.into_iter().map(|c| k.from_u64(c)).collect())
}

fn schoolbook_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![0u128; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            acc[i + j] += ai as u128 * bj as u128;
        }
    }
    acc.into_iter().map(|c| (c % p as u128) as u64).collect()
}

fn add_mod_into(dst: &mut [u64], src: &[u64], p: u64) {
    for (d, &s) in dst.iter_mut().zip(src) {
        let v = *d + s;
        *d = if v >= p { v - p } else { v };
    }
}

fn sub_mod_into(dst: &mut [u64], src: &[u64], p: u64) {
    for (d, &s) in dst.iter_mut().zip(src) {
        *d = if *d >= s { *d - s } else { *d + p - s };
    }
}

fn kara_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    if a.len().min(b.len()) <= KARATSUBA_CUTOFF {
        return schoolbook_mod(a, b, p);
    }
    let h = a.len().max(b.len()) / 2;
    let (a0, a1) = a.split_at(h.min(a.len()));
    let (b0, b1) = b.split_at(h.min(b.len()));
    let z0 = kara_mod(a0, b0, p);
    let z2 = if a1.is_empty() || b1.is_empty() {
        vec![]
    } else {
        kara_mod(a1, b1, p)
    };
    // (a0 + a1)(b0 + b1)
    let mut asum = vec![0u64; a0.len().max(a1.len())];
    asum[..a0.len()].copy_from_slice(a0);
    add_mod_into(&mut asum[..a1.len()], a1, p);
    let mut bsum = vec![0u64; b0.len().max(b1.len())];
    bsum[..b0.len()].copy_from_slice(b0);
    add_mod_into(&mut bsum[..b1.len()], b1, p);
    let mut z1 = kara_mod(&asum, &bsum, p);
    sub_mod_into(&mut z1[..z0.len()], &z0, p);
    if !z2.is_empty() {
        sub_mod_into(&mut z1[..z2.len()], &z2, p);
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    add_mod_into(&mut out[..z0.len()], &z0, p);
    add_mod_into(&mut out[h..h + z1.len()], &z1, p);
    if !z2.is_empty() {
        add_mod_into(&mut out[2 * h..2 * h + z2.len()], &z2, p);
    }
    out
}

// ---------------------------------------------------------------------------
// Characteristic-2 kernel: each generator-power slice of the coefficients is
// packed into u64 words and multiplied carrylessly; slices recombine through
// the field modulus.
// ---------------------------------------------------------------------------

fn pack_slice(p: &Poly, slice: usize) -> Vec<u64> {
    let n = p.coeffs.len();
    let mut words = vec![0u64; (n + 63) / 64];
    for (i, c) in p.coeffs.iter().enumerate() {
        if c.digits().get(slice).copied().unwrap_or(0) & 1 == 1 {
            words[i / 64] |= 1u64 << (i % 64);
        }
    }
    words
}

fn clmul_words(a: &[u64], b: &[u64], out_bits: usize) -> Vec<u64> {
    let mut out = vec![0u64; (out_bits + 63) / 64];
    for (i, &aw) in a.iter().enumerate() {
        if aw == 0 {
            continue;
        }
        let mut w = aw;
        while w != 0 {
            let bit = w.trailing_zeros() as usize;
            w &= w - 1;
            let shift = bit;
            for (j, &bw) in b.iter().enumerate() {
                if bw == 0 {
                    continue;
                }
                let pos = i + j;
                out[pos] ^= bw << shift;
                if shift > 0 && pos + 1 < out.len() {
                    out[pos + 1] ^= bw >> (64 - shift);
                }
            }
        }
        // fold the whole-word offset of i into the loop above via pos = i + j
    }
    out
}

fn mul_char2(a: &Poly, b: &Poly, k: &GroundField) -> Poly {
    let n = k.degree();
    let out_len = a.coeffs.len() + b.coeffs.len() - 1;
    let out_bits = out_len;
    // slice products indexed by total generator power (0 .. 2n-2)
    let mut power_words: Vec<Vec<u64>> = vec![vec![0u64; (out_bits + 63) / 64]; 2 * n - 1];
    let a_slices: Vec<Vec<u64>> = (0..n).map(|s| pack_slice(a, s)).collect();
    let b_slices: Vec<Vec<u64>> = (0..n).map(|s| pack_slice(b, s)).collect();
    for i in 0..n {
        if a_slices[i].iter().all(|&w| w == 0) {
            continue;
        }
        for j in 0..n {
            if b_slices[j].iter().all(|&w| w == 0) {
                continue;
            }
            let prod = clmul_words(&a_slices[i], &b_slices[j], out_bits);
            let target = &mut power_words[i + j];
            for (t, w) in target.iter_mut().zip(prod) {
                *t ^= w;
            }
        }
    }
    // reduce generator powers >= n via g^m = sum modulus[j] g^(m-n+j)  (char 2)
    let modulus = k.modulus_digits().to_vec();
    for m in (n..2 * n - 1).rev() {
        let src = std::mem::take(&mut power_words[m]);
        if src.iter().all(|&w| w == 0) {
            power_words[m] = src;
            continue;
        }
        for j in 0..n {
            if modulus[j] & 1 == 1 {
                for (t, &w) in power_words[m - n + j].iter_mut().zip(&src) {
                    *t ^= w;
                }
            }
        }
    }
    // unpack
    let mut coeffs = Vec::with_capacity(out_len);
    for idx in 0..out_len {
        let word = idx / 64;
        let bit = idx % 64;
        let mut digits = vec![0u64; n];
        for (s, d) in digits.iter_mut().enumerate() {
            *d = (power_words[s][word] >> bit) & 1;
        }
        coeffs.push(k.from_digits(&digits).expect("digit count matches field"));
    }
    Poly::from_coeffs(k, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_poly(k: &GroundField, deg: usize, rng: &mut ChaCha8Rng) -> Poly {
        let p = k.p();
        let n = k.degree();
        let coeffs: Vec<FFElem> = (0..=deg)
            .map(|_| {
                let digits: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
                k.from_digits(&digits).unwrap()
            })
            .collect();
        Poly::from_coeffs(k, coeffs)
    }

    #[test]
    fn degree_is_additive() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for q in [2u64, 3, 4, 5, 9] {
            let k = GroundField::from_order(q).unwrap();
            for _ in 0..50 {
                let f = random_poly(&k, rng.gen_range(0..8), &mut rng);
                let g = random_poly(&k, rng.gen_range(0..8), &mut rng);
                if f.is_zero() || g.is_zero() {
                    continue;
                }
                assert_eq!(f.mul(&g, &k).degree(), f.degree() + g.degree());
            }
        }
    }

    #[test]
    fn karatsuba_matches_schoolbook_odd_char() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for q in [3u64, 5, 7] {
            let k = GroundField::from_order(q).unwrap();
            for _ in 0..6 {
                let f = random_poly(&k, rng.gen_range(100..300), &mut rng);
                let g = random_poly(&k, rng.gen_range(100..300), &mut rng);
                let fast = f.mul(&g, &k);
                let mut slow = Poly::zero();
                for (i, c) in f.coeffs().iter().enumerate() {
                    let term = g.scale(c, &k).shift(i, &k);
                    slow = slow.add(&term, &k);
                }
                assert_eq!(fast, slow);
            }
        }
    }

    #[test]
    fn char2_kernel_matches_schoolbook() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for q in [2u64, 4, 8, 16] {
            let k = GroundField::from_order(q).unwrap();
            for _ in 0..30 {
                let f = random_poly(&k, rng.gen_range(0..90), &mut rng);
                let g = random_poly(&k, rng.gen_range(0..90), &mut rng);
                let fast = f.mul(&g, &k);
                // reference: plain convolution
                let mut slow = Poly::zero();
                for (i, c) in f.coeffs().iter().enumerate() {
                    let term = g.scale(c, &k).shift(i, &k);
                    slow = slow.add(&term, &k);
                }
                assert_eq!(fast, slow);
            }
        }
    }

    #[test]
    fn divrem_reconstructs() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for q in [2u64, 3, 5, 4] {
            let k = GroundField::from_order(q).unwrap();
            for _ in 0..60 {
                let f = random_poly(&k, rng.gen_range(0..10), &mut rng);
                let g = random_poly(&k, rng.gen_range(0..5), &mut rng);
                if g.is_zero() {
                    continue;
                }
                let (quo, rem) = f.divrem(&g, &k).unwrap();
                assert_eq!(quo.mul(&g, &k).add(&rem, &k), f);
                assert!(rem.degree() < g.degree());
            }
        }
    }

    #[test]
    fn xgcd_bezout_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for q in [2u64, 3, 4, 5] {
            let k = GroundField::from_order(q).unwrap();
            for _ in 0..60 {
                let f = random_poly(&k, rng.gen_range(0..8), &mut rng);
                let g = random_poly(&k, rng.gen_range(0..8), &mut rng);
                let (d, u, v) = f.xgcd(&g, &k);
                let lhs = u.mul(&f, &k).add(&v.mul(&g, &k), &k);
                assert_eq!(lhs, d);
                if !f.is_zero() {
                    assert!(f.rem(&d, &k).unwrap().is_zero());
                }
                if !g.is_zero() {
                    assert!(g.rem(&d, &k).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn irreducibility_examples() {
        let f2 = GroundField::new(2, 1).unwrap();
        let t = Poly::t(&f2);
        // t^2 + t + 1 irreducible over F_2
        let f = t.mul(&t, &f2).add(&t, &f2).add(&Poly::one(&f2), &f2);
        assert!(f.is_irreducible(&f2).unwrap());
        // t^2 + 1 = (t+1)^2 over F_2
        let g = t.mul(&t, &f2).add(&Poly::one(&f2), &f2);
        assert!(!g.is_irreducible(&f2).unwrap());
        // t^2 + 1 irreducible over F_3
        let f3 = GroundField::new(3, 1).unwrap();
        let t3 = Poly::t(&f3);
        let h = t3.mul(&t3, &f3).add(&Poly::one(&f3), &f3);
        assert!(h.is_irreducible(&f3).unwrap());
    }
}
