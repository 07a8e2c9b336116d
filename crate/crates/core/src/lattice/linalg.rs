//! Exact rational linear algebra for the fiber-matrix checks and flat
//! corrections: Gaussian elimination with exact pivots, kernel bases, and
//! a pivoted symmetric elimination that certifies negative semidefiniteness.
//! No floating point anywhere.

use crate::rat::{rat_int, rat_zero, Rat};
use num::Zero;

/// Solve A x = b exactly. Returns None when the system is inconsistent or
/// the solution is not unique.
pub fn solve(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.len();
    if n == 0 {
        return Some(vec![]);
    }
    let cols = a[0].len();
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let mut pivot_row = 0usize;
    let mut pivots = Vec::new();
    for col in 0..cols {
        let Some(r) = (pivot_row..n).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(pivot_row, r);
        let inv = rat_int(1) / m[pivot_row][col].clone();
        for v in m[pivot_row].iter_mut() {
            *v *= inv.clone();
        }
        for r2 in 0..n {
            if r2 != pivot_row && !m[r2][col].is_zero() {
                let f = m[r2][col].clone();
                for c2 in 0..=cols {
                    let sub = f.clone() * m[pivot_row][c2].clone();
                    m[r2][c2] -= sub;
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
        if pivot_row == n {
            break;
        }
    }
    // inconsistent?
    for r in pivot_row..n {
        if !m[r][cols].is_zero() {
            return None;
        }
    }
    if pivots.len() != cols {
        return None; // underdetermined
    }
    let mut x = vec![rat_zero(); cols];
    for (row, &col) in pivots.iter().enumerate() {
        x[col] = m[row][cols].clone();
    }
    Some(x)
}

/// Basis of the kernel of A.
pub fn kernel_basis(a: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let n = a.len();
    if n == 0 {
        return vec![];
    }
    let cols = a[0].len();
    let mut m: Vec<Vec<Rat>> = a.to_vec();
    let mut pivot_row = 0usize;
    let mut pivot_cols = Vec::new();
    for col in 0..cols {
        let Some(r) = (pivot_row..n).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(pivot_row, r);
        let inv = rat_int(1) / m[pivot_row][col].clone();
        for v in m[pivot_row].iter_mut() {
            *v *= inv.clone();
        }
        for r2 in 0..n {
            if r2 != pivot_row && !m[r2][col].is_zero() {
                let f = m[r2][col].clone();
                for c2 in 0..cols {
                    let sub = f.clone() * m[pivot_row][c2].clone();
                    m[r2][c2] -= sub;
                }
            }
        }
        pivot_cols.push(col);
        pivot_row += 1;
        if pivot_row == n {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    let mut basis = Vec::new();
    for &fc in &free {
        let mut v = vec![rat_zero(); cols];
        v[fc] = rat_int(1);
        for (row, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -m[row][fc].clone();
        }
        basis.push(v);
    }
    basis
}

/// Outcome of the exact semidefiniteness check.
#[derive(Clone, Debug)]
pub struct NsdReport {
    pub semidefinite: bool,
    /// Diagonal pivots of the symmetric elimination (all <= 0 iff NSD).
    pub pivots: Vec<Rat>,
    pub kernel_dim: usize,
    /// Row index witnessing failure, with a description.
    pub witness: Option<(usize, String)>,
}

/// Certified negative-semidefiniteness of a symmetric rational matrix by
/// symmetric Gaussian elimination: a positive diagonal entry or a zero
/// diagonal with a nonzero residual row both refute NSD (the latter via an
/// indefinite 2x2 principal minor).
pub fn negative_semidefinite(sym: &[Vec<Rat>]) -> NsdReport {
    let n = sym.len();
    let mut m: Vec<Vec<Rat>> = sym.to_vec();
    let mut pivots = Vec::new();
    let mut kernel_dim = 0usize;
    let mut eliminated = vec![false; n];
    loop {
        // choose a strictly negative diagonal pivot
        let mut pivot = None;
        for i in 0..n {
            if eliminated[i] {
                continue;
            }
            if m[i][i] > rat_zero() {
                return NsdReport {
                    semidefinite: false,
                    pivots,
                    kernel_dim,
                    witness: Some((i, format!("positive diagonal entry {}", m[i][i]))),
                };
            }
            if m[i][i] < rat_zero() {
                pivot = Some(i);
                break;
            }
        }
        let Some(pi) = pivot else {
            // all remaining diagonal entries are zero: rows must vanish
            for i in 0..n {
                if eliminated[i] {
                    continue;
                }
                for j in 0..n {
                    if !eliminated[j] && !m[i][j].is_zero() {
                        return NsdReport {
                            semidefinite: false,
                            pivots,
                            kernel_dim,
                            witness: Some((
                                i,
                                format!(
                                    "zero diagonal with nonzero entry {} in column {j}",
                                    m[i][j]
                                ),
                            )),
                        };
                    }
                }
                kernel_dim += 1;
            }
            return NsdReport {
                semidefinite: true,
                pivots,
                kernel_dim,
                witness: None,
            };
        };
        let d = m[pi][pi].clone();
        pivots.push(d.clone());
        eliminated[pi] = true;
        // symmetric update m_ij -= m_i,pi * m_pi,j / d
        for i in 0..n {
            if eliminated[i] || m[i][pi].is_zero() {
                continue;
            }
            let f = m[i][pi].clone() / d.clone();
            for j in 0..n {
                if eliminated[j] {
                    continue;
                }
                let sub = f.clone() * m[pi][j].clone();
                m[i][j] -= sub;
            }
        }
    }
}
