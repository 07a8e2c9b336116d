//! Exact arithmetic in `F_{p^n}`, `F_{p^n}[t]` and `F_{p^n}(t)`.
//!
//! A [`GroundField`] is a concrete finite field `F_{p^n}` presented as
//! `F_p[g]/(modulus)` where the modulus is the lexicographically least monic
//! irreducible of degree n (coefficients compared from the leading term
//! down, 0 < 1 < ... < p-1). Fixing the modulus this way makes every
//! serialized element portable between runs and implementations.
//!
//! Elements do not carry a field pointer; all arithmetic goes through the
//! field context, mirroring the usual ring-context style for runtime-sized
//! algebra. Everything here is immutable and pure.

pub mod ext;
pub mod factor;
pub mod parse;
pub mod place;
pub mod poly;
pub mod ratfunc;
pub mod resultant;

pub use ext::ConstExt;
pub use place::{Place, PlaceKind};
pub use poly::Poly;
pub use ratfunc::RatFunc;

use crate::error::{FfhError, Result};
use smallvec::SmallVec;

/// Largest supported characteristic: products of two coefficients must fit
/// in a u128, sums of two in a u64.
pub const MAX_P: u64 = (1 << 62) - 1;

type Digits = SmallVec<[u64; 4]>;

/// An element of F_{p^n}: the reduced representative polynomial in the
/// generator g, little-endian, always exactly n digits.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FFElem {
    digits: Digits,
}

impl FFElem {
    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    /// Total order used for canonical choices (least embedding root,
    /// enumeration order): compare digit vectors from the highest power down.
    pub fn key_cmp(&self, other: &FFElem) -> std::cmp::Ordering {
        debug_assert_eq!(self.digits.len(), other.digits.len());
        for i in (0..self.digits.len()).rev() {
            match self.digits[i].cmp(&other.digits[i]) {
                std::cmp::Ordering::Equal => {}
                ord => return ord,
            }
        }
        std::cmp::Ordering::Equal
    }
}

/// The constant field F_{p^n}, with its defining modulus.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroundField {
    p: u64,
    n: usize,
    /// Monic irreducible of degree n over F_p, little-endian, n+1 digits.
    /// For n = 1 this is g itself, so F_p[g]/(g) = F_p.
    modulus: Vec<u64>,
}

impl GroundField {
    /// Build F_{p^n}. `p` must be prime and fit in a machine word
    /// (p < 2^62); `n` must be positive.
    pub fn new(p: u64, n: usize) -> Result<GroundField> {
        if p > MAX_P {
            return Err(FfhError::validation(format!(
                "characteristic {p} exceeds the machine-word limit {MAX_P}"
            )));
        }
        if !is_prime_u64(p) {
            return Err(FfhError::validation(format!("{p} is not prime")));
        }
        if n == 0 {
            return Err(FfhError::validation("extension degree must be positive"));
        }
        let modulus = least_irreducible(p, n);
        Ok(GroundField { p, n, modulus })
    }

    /// Parse a prime power q = p^n into the field F_q.
    pub fn from_order(q: u64) -> Result<GroundField> {
        if q < 2 {
            return Err(FfhError::validation(format!("{q} is not a prime power")));
        }
        let mut p = q;
        // smallest prime factor
        let mut d = 2u64;
        while d * d <= p {
            if p % d == 0 {
                p = d;
                break;
            }
            d += 1;
        }
        let mut n = 0usize;
        let mut rest = q;
        while rest % p == 0 {
            rest /= p;
            n += 1;
        }
        if rest != 1 {
            return Err(FfhError::validation(format!("{q} is not a prime power")));
        }
        GroundField::new(p, n)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// q = p^n, erroring on overflow.
    pub fn order(&self) -> Result<u64> {
        let mut q: u64 = 1;
        for _ in 0..self.n {
            q = q
                .checked_mul(self.p)
                .ok_or_else(|| FfhError::resource("field order overflows u64"))?;
        }
        Ok(q)
    }

    pub fn modulus_digits(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> FFElem {
        FFElem {
            digits: smallvec::smallvec![0; self.n],
        }
    }

    pub fn one(&self) -> FFElem {
        self.from_u64(1)
    }

    pub fn from_u64(&self, c: u64) -> FFElem {
        let mut digits: Digits = smallvec::smallvec![0; self.n];
        digits[0] = c % self.p;
        FFElem { digits }
    }

    pub fn from_i64(&self, c: i64) -> FFElem {
        let m = c.rem_euclid(self.p as i64) as u64;
        self.from_u64(m)
    }

    /// The generator g of F_{p^n} over F_p (zero when n = 1).
    pub fn generator(&self) -> FFElem {
        let mut digits: Digits = smallvec::smallvec![0; self.n];
        if self.n > 1 {
            digits[1] = 1;
        }
        FFElem { digits }
    }

    /// Element from explicit digits (little-endian, reduced mod p, padded/truncated to n).
    pub fn from_digits(&self, d: &[u64]) -> Result<FFElem> {
        if d.len() > self.n && d[self.n..].iter().any(|&c| c % self.p != 0) {
            return Err(FfhError::validation(
                "element digits exceed the field degree",
            ));
        }
        let mut digits: Digits = smallvec::smallvec![0; self.n];
        for (i, &c) in d.iter().take(self.n).enumerate() {
            digits[i] = c % self.p;
        }
        Ok(FFElem { digits })
    }

    pub fn is_zero(&self, a: &FFElem) -> bool {
        a.digits.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self, a: &FFElem) -> bool {
        a.digits[0] == 1 && a.digits[1..].iter().all(|&c| c == 0)
    }

    /// True when the element lies in the prime field F_p.
    pub fn is_prime_field(&self, a: &FFElem) -> bool {
        a.digits[1..].iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &FFElem, b: &FFElem) -> FFElem {
        let mut digits = a.digits.clone();
        for i in 0..self.n {
            digits[i] = addm(digits[i], b.digits[i], self.p);
        }
        FFElem { digits }
    }

    pub fn sub(&self, a: &FFElem, b: &FFElem) -> FFElem {
        let mut digits = a.digits.clone();
        for i in 0..self.n {
            digits[i] = subm(digits[i], b.digits[i], self.p);
        }
        FFElem { digits }
    }

    pub fn neg(&self, a: &FFElem) -> FFElem {
        let mut digits = a.digits.clone();
        for d in digits.iter_mut() {
            *d = subm(0, *d, self.p);
        }
        FFElem { digits }
    }

    pub fn mul(&self, a: &FFElem, b: &FFElem) -> FFElem {
        if self.n == 1 {
            let mut digits: Digits = smallvec::smallvec![0];
            digits[0] = mulm(a.digits[0], b.digits[0], self.p);
            return FFElem { digits };
        }
        // schoolbook product then reduction by the modulus
        let mut prod = vec![0u64; 2 * self.n - 1];
        for (i, &ai) in a.digits.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.digits.iter().enumerate() {
                prod[i + j] = addm(prod[i + j], mulm(ai, bj, self.p), self.p);
            }
        }
        self.reduce_digits(&mut prod);
        let mut digits: Digits = smallvec::smallvec![0; self.n];
        digits.copy_from_slice(&prod[..self.n]);
        FFElem { digits }
    }

    /// Reduce a digit polynomial in place modulo the field modulus.
    fn reduce_digits(&self, v: &mut Vec<u64>) {
        let n = self.n;
        let p = self.p;
        for i in (n..v.len()).rev() {
            let c = v[i];
            if c == 0 {
                continue;
            }
            v[i] = 0;
            // g^i = -sum_{j<n} modulus[j] g^{i-n+j}  (modulus monic)
            for j in 0..n {
                let m = self.modulus[j];
                if m != 0 {
                    let sub = mulm(c, m, p);
                    v[i - n + j] = subm(v[i - n + j], sub, p);
                }
            }
        }
        v.truncate(n.max(1));
        while v.len() < n {
            v.push(0);
        }
    }

    pub fn inv(&self, a: &FFElem) -> Result<FFElem> {
        if self.is_zero(a) {
            return Err(FfhError::domain("inverse of zero"));
        }
        if self.n == 1 {
            let r = inv_mod_p(a.digits[0], self.p);
            return Ok(self.from_u64(r));
        }
        // extended Euclid in F_p[g] against the modulus
        let mut r0: Vec<u64> = self.modulus.clone();
        let mut r1: Vec<u64> = a.digits.to_vec();
        trim(&mut r1);
        let mut s0: Vec<u64> = vec![];
        let mut s1: Vec<u64> = vec![1];
        while !r1.is_empty() {
            let (q, r) = digit_divrem(&r0, &r1, self.p);
            let qs1 = digit_mul(&q, &s1, self.p);
            let s = digit_sub(&s0, &qs1, self.p);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // r0 = gcd, a nonzero constant since the modulus is irreducible
        debug_assert_eq!(r0.len(), 1);
        let c = inv_mod_p(r0[0], self.p);
        let mut digits: Digits = smallvec::smallvec![0; self.n];
        for (i, &v) in s0.iter().enumerate() {
            digits[i] = mulm(v, c, self.p);
        }
        Ok(FFElem { digits })
    }

    pub fn div(&self, a: &FFElem, b: &FFElem) -> Result<FFElem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &FFElem, mut e: u128) -> FFElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Frobenius x -> x^p.
    pub fn frobenius(&self, a: &FFElem) -> FFElem {
        self.pow(a, self.p as u128)
    }

    /// p-th root, i.e. the inverse of Frobenius: x^(p^(n-1)).
    pub fn pth_root(&self, a: &FFElem) -> FFElem {
        let mut e: u128 = 1;
        for _ in 0..self.n.saturating_sub(1) {
            e *= self.p as u128;
        }
        self.pow(a, e)
    }

    /// Square root by exhaustive search; only intended for small fields.
    pub fn sqrt(&self, a: &FFElem) -> Result<Option<FFElem>> {
        let q = self.order()?;
        if q > 1 << 20 {
            return Err(FfhError::resource(format!(
                "square-root search not supported for field order {q}"
            )));
        }
        for e in self.iter_elements() {
            if self.mul(&e, &e) == *a {
                return Ok(Some(e));
            }
        }
        Ok(None)
    }

    /// All field elements in canonical (odometer) order.
    pub fn iter_elements(&self) -> impl Iterator<Item = FFElem> + '_ {
        let n = self.n;
        let p = self.p;
        let mut digits: Digits = smallvec::smallvec![0; n];
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let out = FFElem {
                digits: digits.clone(),
            };
            // increment
            let mut i = 0;
            loop {
                if i == n {
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

    /// Render in the generator symbol: "g^2+2*g+1", "g", "3", "0".
    pub fn elem_to_string(&self, a: &FFElem) -> String {
        if self.is_zero(a) {
            return "0".into();
        }
        let mut terms: Vec<String> = Vec::new();
        for i in (0..self.n).rev() {
            let c = a.digits[i];
            if c == 0 {
                continue;
            }
            let t = match i {
                0 => c.to_string(),
                1 => {
                    if c == 1 {
                        "g".into()
                    } else {
                        format!("{c}*g")
                    }
                }
                _ => {
                    if c == 1 {
                        format!("g^{i}")
                    } else {
                        format!("{c}*g^{i}")
                    }
                }
            };
            terms.push(t);
        }
        terms.join("+")
    }
}

#[inline]
fn addm(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
fn subm(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod_p(a: u64, p: u64) -> u64 {
    // Fermat; p is prime and a != 0
    let mut e = p - 2;
    let mut base = a % p;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulm(acc, base, p);
        }
        base = mulm(base, base, p);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, valid for all u64.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let pow_mod = |mut b: u64, mut e: u64| -> u64 {
        let mut acc = 1u64;
        b %= n;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulm(acc, b, n);
            }
            b = mulm(b, b, n);
            e >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulm(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

// ---------------------------------------------------------------------------
// Digit polynomials over F_p: just enough arithmetic to pick field moduli and
// run the extended Euclid inside FFElem inversion. Little-endian, trimmed.
// ---------------------------------------------------------------------------

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn digit_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = addm(out[i + j], mulm(ai, bj, p), p);
        }
    }
    trim(&mut out);
    out
}

fn digit_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = subm(x, y, p);
    }
    trim(&mut out);
    out
}

fn digit_divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut rem = a.to_vec();
    trim(&mut rem);
    if rem.len() < b.len() {
        return (vec![], rem);
    }
    let mut quo = vec![0u64; rem.len() - b.len() + 1];
    let lead_inv = inv_mod_p(*b.last().unwrap(), p);
    while rem.len() >= b.len() && !rem.is_empty() {
        let shift = rem.len() - b.len();
        let c = mulm(*rem.last().unwrap(), lead_inv, p);
        quo[shift] = c;
        for (j, &bj) in b.iter().enumerate() {
            let s = mulm(c, bj, p);
            rem[shift + j] = subm(rem[shift + j], s, p);
        }
        trim(&mut rem);
    }
    trim(&mut quo);
    (quo, rem)
}

fn digit_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    while !r1.is_empty() {
        let (_, r) = digit_divrem(&r0, &r1, p);
        r0 = std::mem::replace(&mut r1, r);
    }
    r0
}

fn digit_powmod_x(e: u64, modulus: &[u64], p: u64) -> Vec<u64> {
    // x^e mod modulus
    let mut acc = vec![1u64];
    let mut base = vec![0u64, 1];
    let (_, r) = digit_divrem(&base, modulus, p);
    base = r;
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            let m = digit_mul(&acc, &base, p);
            acc = digit_divrem(&m, modulus, p).1;
        }
        let m = digit_mul(&base, &base, p);
        base = digit_divrem(&m, modulus, p).1;
        e >>= 1;
    }
    acc
}

/// Irreducibility over F_p via the standard x^(p^d) = x criteria.
fn digit_is_irreducible(f: &[u64], p: u64) -> bool {
    let n = f.len() - 1;
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    // x^(p^n) == x mod f
    let mut xq = vec![0u64, 1];
    for _ in 0..n {
        xq = digit_pow_qth(&xq, f, p);
    }
    let x = vec![0u64, 1];
    if digit_sub(&xq, &x, p) != Vec::<u64>::new() {
        return false;
    }
    // gcd(x^(p^(n/r)) - x, f) = 1 for every prime r | n
    let mut primes = vec![];
    let mut m = n;
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
        let mut xe = vec![0u64, 1];
        for _ in 0..(n / r) {
            xe = digit_pow_qth(&xe, f, p);
        }
        let diff = digit_sub(&xe, &x, p);
        let g = digit_gcd(f, &diff, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// h -> h^p mod f, by repeated squaring of the exponent p.
fn digit_pow_qth(h: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    // compute h(x)^p mod f: since coefficients are in F_p, h(x)^p = h(x^p),
    // so substitute x^p (reduced) into h.
    let xp = digit_powmod_x(p, f, p);
    let mut acc: Vec<u64> = vec![];
    for i in (0..h.len()).rev() {
        acc = digit_mul(&acc, &xp, p);
        acc = digit_divrem(&acc, f, p).1;
        if h[i] != 0 {
            if acc.is_empty() {
                acc = vec![h[i]];
            } else {
                acc[0] = addm(acc[0], h[i], p);
            }
            trim(&mut acc);
        }
    }
    acc
}

/// The lexicographically least monic irreducible of degree n over F_p,
/// where candidates are ordered by their digit value sum(c_i p^i).
fn least_irreducible(p: u64, n: usize) -> Vec<u64> {
    if n == 1 {
        return vec![0, 1]; // g itself; F_p[g]/(g) = F_p
    }
    let mut digits = vec![0u64; n]; // low coefficients, leading 1 implicit
    loop {
        let mut f = digits.clone();
        f.push(1);
        if digit_is_irreducible(&f, p) {
            return f;
        }
        let mut i = 0;
        loop {
            assert!(i < n, "no irreducible of degree {n} found (impossible)");
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modulus_selection_is_canonical() {
        // F_4: g^2 + g + 1 is the only irreducible quadratic over F_2.
        let f4 = GroundField::new(2, 2).unwrap();
        assert_eq!(f4.modulus_digits(), &[1, 1, 1]);
        // F_16: g^4 + g + 1 beats every lexicographically smaller candidate.
        let f16 = GroundField::new(2, 4).unwrap();
        assert_eq!(f16.modulus_digits(), &[1, 1, 0, 0, 1]);
        // F_9: g^2 + 1 is irreducible over F_3 (since -1 is a non-square).
        let f9 = GroundField::new(3, 2).unwrap();
        assert_eq!(f9.modulus_digits(), &[1, 0, 1]);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(GroundField::new(4, 1).is_err());
        assert!(GroundField::new(2, 0).is_err());
        assert!(GroundField::from_order(12).is_err());
        assert!(GroundField::from_order(1).is_err());
        assert_eq!(GroundField::from_order(25).unwrap().p(), 5);
        assert_eq!(GroundField::from_order(64).unwrap().degree(), 6);
    }

    /// Field axioms checked exhaustively for every field of order <= 16.
    #[test]
    fn field_axioms_small_orders() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
            let k = GroundField::from_order(q).unwrap();
            let elems: Vec<FFElem> = k.iter_elements().collect();
            assert_eq!(elems.len() as u64, q);
            for a in &elems {
                assert_eq!(k.add(a, &k.zero()), *a);
                assert_eq!(k.mul(a, &k.one()), *a);
                assert_eq!(k.add(a, &k.neg(a)), k.zero());
                if !k.is_zero(a) {
                    let inv = k.inv(a).unwrap();
                    assert_eq!(k.mul(a, &inv), k.one());
                }
                for b in &elems {
                    assert_eq!(k.add(a, b), k.add(b, a));
                    assert_eq!(k.mul(a, b), k.mul(b, a));
                    for c in &elems {
                        assert_eq!(k.mul(a, &k.add(b, c)), k.add(&k.mul(a, b), &k.mul(a, c)));
                        assert_eq!(k.mul(&k.mul(a, b), c), k.mul(a, &k.mul(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_fixes_prime_field() {
        let k = GroundField::new(2, 4).unwrap();
        assert_eq!(k.frobenius(&k.one()), k.one());
        let g = k.generator();
        // Frobenius iterated n times is the identity
        let mut x = g.clone();
        for _ in 0..4 {
            x = k.frobenius(&x);
        }
        assert_eq!(x, g);
        // pth_root inverts Frobenius
        let y = k.frobenius(&g);
        assert_eq!(k.pth_root(&y), g);
    }

    #[test]
    fn sqrt_small_field() {
        let k = GroundField::new(5, 1).unwrap();
        let four = k.from_u64(4);
        let r = k.sqrt(&four).unwrap().unwrap();
        assert_eq!(k.mul(&r, &r), four);
        // 2 is not a square mod 5
        assert!(k.sqrt(&k.from_u64(2)).unwrap().is_none());
    }
}
