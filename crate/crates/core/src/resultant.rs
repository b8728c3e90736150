//! Resultants via Sylvester matrices with fraction-free elimination.
//!
//! Entries are full multivariate polynomials, so the determinant is computed
//! with the Bareiss scheme: every division is exact in the polynomial ring
//! and intermediate growth stays under control. Resultants drive both the
//! singular-locus solver and the intersection profiles, where the degree of
//! the resultant doubles as a cleanliness certificate.

use std::fmt;

use crate::poly::MultiPoly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ResultantError {
    /// Res(0, 0) is not defined; the inputs share every component.
    BothZero,
}

impl fmt::Display for ResultantError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResultantError::BothZero => write!(f, "resultant of two zero polynomials"),
        }
    }
}

impl std::error::Error for ResultantError {}

/// Determinant by fraction-free Gaussian elimination (Bareiss). Consumes the
/// matrix. Divisions are exact by the Sylvester identity; a failed division
/// here means the matrix was not over an integral domain and is a bug.
pub fn bareiss_det(mut m: Vec<Vec<MultiPoly>>) -> MultiPoly {
    let n = m.len();
    if n == 0 {
        panic!("determinant of empty matrix");
    }
    let vars = m[0][0].vars().clone();
    for row in &m {
        assert_eq!(row.len(), n, "matrix must be square");
    }
    let mut sign_flip = false;
    let mut prev_pivot = MultiPoly::one(&vars);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            // Find a row below with a nonzero entry in this column.
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign_flip = !sign_flip;
                }
                None => return MultiPoly::zero(&vars),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num
                    .try_div(&prev_pivot)
                    .expect("Bareiss division is exact");
            }
            m[i][k] = MultiPoly::zero(&vars);
        }
        prev_pivot = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_flip {
        det.neg()
    } else {
        det
    }
}

/// Resultant of f and g with respect to variable `var`. The result does not
/// involve `var`. Degenerate cases: if exactly one input is zero the
/// resultant is zero; if both are zero that is an error. For constant c,
/// Res(f, c) = c^deg(f) and Res(c, g) = c^deg(g), with Res of two constants
/// equal to one (empty matrix).
pub fn resultant(f: &MultiPoly, g: &MultiPoly, var: usize) -> Result<MultiPoly, ResultantError> {
    let vars = f.vars().clone();
    if f.is_zero() && g.is_zero() {
        return Err(ResultantError::BothZero);
    }
    if f.is_zero() || g.is_zero() {
        return Ok(MultiPoly::zero(&vars));
    }
    let df = f.degree_in(var).unwrap_or(0) as usize;
    let dg = g.degree_in(var).unwrap_or(0) as usize;
    if df == 0 && dg == 0 {
        return Ok(MultiPoly::one(&vars));
    }
    if df == 0 {
        return Ok(f.pow(dg as u32));
    }
    if dg == 0 {
        return Ok(g.pow(df as u32));
    }
    // Sylvester matrix: dg rows of f's coefficients (descending), then df
    // rows of g's, each shifted one column per row.
    let fc = f.coeffs_in(var);
    let gc = g.coeffs_in(var);
    let n = df + dg;
    let zero = MultiPoly::zero(&vars);
    let mut m = vec![vec![zero.clone(); n]; n];
    for row in 0..dg {
        for (k, c) in fc.iter().enumerate() {
            // descending order: coefficient of var^(df - j) goes in column j.
            let col = row + (df - k);
            m[row][col] = c.clone();
        }
    }
    for row in 0..df {
        for (k, c) in gc.iter().enumerate() {
            let col = row + (dg - k);
            m[dg + row][col] = c.clone();
        }
    }
    Ok(bareiss_det(m))
}
