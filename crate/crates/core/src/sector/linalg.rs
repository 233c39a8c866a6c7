//! Exact linear algebra on Gram blocks. Blocks met in practice are a single
//! graded monomial times a rational matrix; that monomial is factored out so
//! the work happens over the rationals.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::Rational;
use crate::scalar::GradedScalar;

/// `(m, R)` with `matrix = m * R`, `m` a positive graded monomial.
pub(crate) fn homogenize(matrix: &[Vec<GradedScalar>]) -> Result<(GradedScalar, Vec<Vec<Rational>>)> {
    let unit = matrix
        .iter()
        .flatten()
        .find(|g| !g.is_zero())
        .and_then(|g| g.terms().next().map(|(j, k, _)| GradedScalar::monomial(Rational::one(), j, k)))
        .unwrap_or_else(GradedScalar::one);
    let mut out = Vec::with_capacity(matrix.len());
    for row in matrix {
        let mut r = Vec::with_capacity(row.len());
        for g in row {
            let q = g
                .checked_div(&unit)
                .and_then(|v| v.as_rational())
                .ok_or_else(|| Error::NotApplicable(format!("Gram entry {g} is not a rational multiple of {unit}")))?;
            r.push(q);
        }
        out.push(r);
    }
    Ok((unit, out))
}

/// Diagonal of a congruence diagonalization `P^T A P` of a symmetric matrix.
///
/// Pivots on the first nonzero diagonal entry; when the remaining diagonal
/// vanishes but an off-diagonal entry `a_ij` does not, row/column `j` is added
/// to `i`, which puts `2 a_ij` on the diagonal.
pub(crate) fn congruence_diagonal(a: &[Vec<Rational>]) -> Vec<Rational> {
    let mut m: Vec<Vec<Rational>> = a.to_vec();
    let mut active: Vec<usize> = (0..m.len()).collect();
    let mut diag = Vec::with_capacity(m.len());
    while !active.is_empty() {
        let pivot = match active.iter().position(|&i| !m[i][i].is_zero()) {
            Some(p) => p,
            None => {
                let pair = active.iter().enumerate().find_map(|(pi, &i)| {
                    active.iter().find(|&&j| j != i && !m[i][j].is_zero()).map(|&j| (pi, i, j))
                });
                match pair {
                    Some((pi, i, j)) => {
                        for &k in &active {
                            let v = m[k][j].clone();
                            m[k][i] += v;
                        }
                        for &k in &active {
                            let v = m[j][k].clone();
                            m[i][k] += v;
                        }
                        pi
                    }
                    None => {
                        diag.extend(active.iter().map(|_| Rational::zero()));
                        break;
                    }
                }
            }
        };
        let p = active.remove(pivot);
        let d = m[p][p].clone();
        for &i in &active {
            let f = &m[i][p] / &d;
            for &j in &active {
                let v = &f * &m[p][j];
                m[i][j] -= v;
            }
        }
        diag.push(d);
    }
    diag
}

/// Basis of the kernel of `a` from its reduced row echelon form.
pub(crate) fn kernel(a: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<Rational>> = a.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (x, p) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rational::zero(); cols];
            v[free] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[row][free].clone();
            }
            v
        })
        .collect()
}

pub(crate) fn count_signs(diag: &[Rational]) -> (usize, usize, usize) {
    let pos = diag.iter().filter(|d| d.is_positive()).count();
    let neg = diag.iter().filter(|d| d.is_negative()).count();
    (pos, neg, diag.len() - pos - neg)
}
