//! Resultants of binary forms with `F_{q^m}[t]` coefficients, via a
//! fraction-free Bareiss determinant of the Sylvester matrix. Entries stay
//! polynomials throughout; every division in the elimination is exact.

use super::{GroundField, Poly};
use crate::error::Result;

/// Determinant of a square matrix of t-polynomials (Bareiss).
pub fn poly_mat_det(mat: &[Vec<Poly>], k: &GroundField) -> Result<Poly> {
    let n = mat.len();
    if n == 0 {
        return Ok(Poly::one(k));
    }
    let mut m: Vec<Vec<Poly>> = mat.to_vec();
    let mut sign = false;
    let mut prev = Poly::one(k);
    for pivot in 0..n - 1 {
        if m[pivot][pivot].is_zero() {
            // swap in a row with a nonzero pivot
            let swap = (pivot + 1..n).find(|&r| !m[r][pivot].is_zero());
            match swap {
                Some(r) => {
                    m.swap(pivot, r);
                    sign = !sign;
                }
                None => return Ok(Poly::zero()),
            }
        }
        for i in pivot + 1..n {
            for j in pivot + 1..n {
                let a = m[i][j].mul(&m[pivot][pivot], k);
                let b = m[i][pivot].mul(&m[pivot][j], k);
                let num = a.sub(&b, k);
                m[i][j] = num.div_exact(&prev, k)?;
            }
            m[i][pivot] = Poly::zero();
        }
        prev = m[pivot][pivot].clone();
    }
    let mut det = m[n - 1][n - 1].clone();
    if sign {
        det = det.neg(k);
    }
    Ok(det)
}

/// Resultant of two binary forms of degree d, given by their padded
/// coefficient vectors (length d+1, coefficient of X^i Y^(d-i) at index i).
/// Zero iff the forms share a projective root over the algebraic closure.
pub fn form_resultant(f: &[Poly], g: &[Poly], d: usize, k: &GroundField) -> Result<Poly> {
    assert_eq!(f.len(), d + 1);
    assert_eq!(g.len(), d + 1);
    let n = 2 * d;
    let mut mat = vec![vec![Poly::zero(); n]; n];
    // d rows of f-coefficients, d rows of g-coefficients, descending powers
    for row in 0..d {
        for (i, c) in f.iter().enumerate() {
            mat[row][row + d - i] = c.clone();
        }
        for (i, c) in g.iter().enumerate() {
            mat[row + d][row + d - i] = c.clone();
        }
    }
    poly_mat_det(&mat, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::parse::parse_poly;

    fn p(s: &str, k: &GroundField) -> Poly {
        parse_poly(s, k).unwrap()
    }

    #[test]
    fn det_small_cases() {
        let k = GroundField::new(5, 1).unwrap();
        // det [[t, 1], [1, t]] = t^2 - 1
        let m = vec![vec![p("t", &k), p("1", &k)], vec![p("1", &k), p("t", &k)]];
        let d = poly_mat_det(&m, &k).unwrap();
        assert_eq!(d, p("t^2+4", &k));
        // singular matrix
        let m2 = vec![vec![p("t", &k), p("t", &k)], vec![p("t", &k), p("t", &k)]];
        assert!(poly_mat_det(&m2, &k).unwrap().is_zero());
    }

    #[test]
    fn resultant_of_coprime_forms_is_nonzero() {
        let k = GroundField::new(2, 1).unwrap();
        // z^2 + t over 1: forms X^2 + tY^2 and Y^2; resultant is a unit
        let f = vec![p("t", &k), p("0", &k), p("1", &k)]; // X^2 + t Y^2, index i = coeff of X^i Y^(2-i)
        let g = vec![p("1", &k), p("0", &k), p("0", &k)]; // Y^2
        let r = form_resultant(&f, &g, 2, &k).unwrap();
        assert_eq!(r.degree(), 0);
    }

    #[test]
    fn resultant_detects_common_root() {
        let k = GroundField::new(5, 1).unwrap();
        // both forms divisible by (X - tY)
        // f = (X - tY)(X) = X^2 - tXY, g = (X - tY)(Y) = XY - tY^2
        let f = vec![p("0", &k), p("4*t", &k), p("1", &k)];
        let g = vec![p("4*t", &k), p("1", &k), p("0", &k)];
        let r = form_resultant(&f, &g, 2, &k).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn resultant_multiplicativity_spot_check() {
        // Res((X+tY)(X+Y), g) should equal g(-t,1)*g(-1,1) up to sign, for
        // g = X^2 + tY^2 over F_3: the resultant is the product of g over
        // the roots of the first form.
        let k = GroundField::new(3, 1).unwrap();
        let g = vec![p("t", &k), p("0", &k), p("1", &k)];
        // (X + tY)(X + Y) = X^2 + (1+t)XY + tY^2
        let f12 = vec![p("t", &k), p("t+1", &k), p("1", &k)];
        let r12 = form_resultant(&f12, &g, 2, &k).unwrap();
        let at_minus_t = p("t^2+t", &k); // g(-t, 1)
        let at_minus_1 = p("t+1", &k); // g(-1, 1)
        let prod = at_minus_t.mul(&at_minus_1, &k);
        assert!(
            r12 == prod || r12 == prod.neg(&k),
            "{} vs {}",
            r12.to_string_t(&k),
            prod.to_string_t(&k)
        );
    }
}
