//! Row reduction and small dense solves over complex vectors.
//!
//! The echelon form used throughout the crate places the pivot of each
//! row at its *highest* nonzero index. Rows are kept sorted so pivot
//! indices strictly increase, each pivot is normalized to exactly `1`,
//! pivot columns of the other rows are zeroed exactly, and entries above
//! a row's own pivot (all below the pivot threshold by construction)
//! are snapped to exact zeros. Under these rules the reduced form of a
//! span is unique.

use num_complex::Complex64;

use crate::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Reduced row-echelon form with pivots at highest indices.
#[derive(Debug, Clone)]
pub struct Echelon {
    /// Reduced rows, sorted by pivot index ascending.
    pub rows: Vec<Vec<Complex64>>,
    /// Pivot index of each row; strictly increasing.
    pub pivots: Vec<usize>,
    /// Common length of the rows.
    pub width: usize,
}

impl Echelon {
    /// Number of independent rows.
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Columns that carry no pivot, ascending.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.width).filter(|c| !self.pivots.contains(c)).collect()
    }
}

/// Max modulus over a vector.
pub fn linf(v: &[Complex64]) -> f64 {
    v.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// Bilinear pairing `sum_k a_k b_k`.
pub fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Hermitian pairing `sum_k conj(a_k) b_k`.
pub fn hdot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn highest_entry_over(row: &[Complex64], threshold: f64) -> Option<usize> {
    row.iter().rposition(|c| c.norm() > threshold)
}

/// Reduces `rows` to echelon form with pivots at highest indices.
///
/// `threshold` is the absolute modulus below which an entry cannot act
/// as a pivot; callers derive it from a relative tolerance and the
/// largest row norm. Rows that reduce below the threshold everywhere
/// are dropped.
pub fn echelon_highest(rows: &[Vec<Complex64>], width: usize, threshold: f64) -> Echelon {
    let mut work: Vec<Vec<Complex64>> = rows
        .iter()
        .map(|r| {
            let mut v = r.clone();
            v.resize(width, ZERO);
            v
        })
        .collect();
    let mut out_rows: Vec<Vec<Complex64>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();

    loop {
        let mut best: Option<(usize, usize, f64)> = None;
        for (i, row) in work.iter().enumerate() {
            if let Some(p) = highest_entry_over(row, threshold) {
                let mag = row[p].norm();
                let better = match best {
                    None => true,
                    Some((_, bp, bmag)) => p > bp || (p == bp && mag > bmag),
                };
                if better {
                    best = Some((i, p, mag));
                }
            }
        }
        let Some((idx, p, _)) = best else { break };
        let mut pivot_row = work.swap_remove(idx);
        let inv = ONE / pivot_row[p];
        for c in pivot_row.iter_mut() {
            *c *= inv;
        }
        pivot_row[p] = ONE;
        for c in pivot_row.iter_mut().skip(p + 1) {
            *c = ZERO;
        }
        for row in work.iter_mut().chain(out_rows.iter_mut()) {
            let factor = row[p];
            if factor != ZERO {
                for (c, pc) in row.iter_mut().zip(&pivot_row) {
                    *c -= factor * pc;
                }
                row[p] = ZERO;
            }
        }
        out_rows.push(pivot_row);
        pivots.push(p);
    }

    let mut order: Vec<usize> = (0..pivots.len()).collect();
    order.sort_by_key(|&i| pivots[i]);
    let rows = order.iter().map(|&i| out_rows[i].clone()).collect();
    let pivots = order.iter().map(|&i| pivots[i]).collect();
    Echelon { rows, pivots, width }
}

/// Basis of the joint kernel of the rows under the bilinear pairing.
///
/// One vector per free column `j`, ascending: the unit coordinate at
/// `j` corrected at the pivot columns above `j` so every echelon row
/// pairs to zero with it. Each vector's lowest nonzero entry sits at
/// its free column and equals exactly `1`.
pub fn null_space(e: &Echelon) -> Vec<Vec<Complex64>> {
    e.free_columns()
        .iter()
        .map(|&j| {
            let mut v = vec![ZERO; e.width];
            v[j] = ONE;
            for (row, &p) in e.rows.iter().zip(&e.pivots) {
                if p > j {
                    v[p] = -row[j];
                }
            }
            v
        })
        .collect()
}

/// Subtracts the row-space component of `v` that is visible at the
/// pivot columns; what remains is supported off the pivots.
pub fn reduce_in_place(e: &Echelon, v: &mut [Complex64]) {
    for (row, &p) in e.rows.iter().zip(&e.pivots) {
        let factor = v[p];
        if factor != ZERO {
            for (c, rc) in v.iter_mut().zip(row) {
                *c -= factor * rc;
            }
            v[p] = ZERO;
        }
    }
}

/// Max-norm distance from `v` to the row space of `e`.
pub fn residual_off_rowspace(e: &Echelon, v: &[Complex64]) -> f64 {
    let mut w = v.to_vec();
    w.resize(e.width, ZERO);
    reduce_in_place(e, &mut w);
    linf(&w)
}

/// Whether `v` lies in the row space of `e`, with tolerance relative to
/// the magnitude of `v`.
pub fn in_row_space(e: &Echelon, v: &[Complex64], rel_tol: f64) -> bool {
    residual_off_rowspace(e, v) <= rel_tol * (1.0 + linf(v))
}

/// Whether two echelon forms describe the same span, up to `rel_tol`
/// relative to the larger row magnitude. Relies on uniqueness of the
/// reduced form: equal spans give equal pivots and nearby rows.
pub fn span_eq(a: &Echelon, b: &Echelon, rel_tol: f64) -> bool {
    if a.width != b.width || a.pivots != b.pivots {
        return false;
    }
    let scale = 1.0 + a.rows.iter().chain(&b.rows).map(|r| linf(r)).fold(0.0, f64::max);
    a.rows.iter().zip(&b.rows).all(|(ra, rb)| {
        ra.iter().zip(rb).all(|(x, y)| (x - y).norm() <= rel_tol * scale)
    })
}

/// Solves the square dense system `a x = b` by Gaussian elimination
/// with partial pivoting.
pub fn solve(a: &[Vec<Complex64>], b: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = b.len();
    let mut m: Vec<Vec<Complex64>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut v = row.clone();
            v.push(*rhs);
            v
        })
        .collect();
    let scale = 1.0 + m.iter().map(|r| linf(&r[..n])).fold(0.0, f64::max);
    for col in 0..n {
        let (best, mag) = (col..n)
            .map(|r| (r, m[r][col].norm()))
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .expect("nonempty pivot search");
        if mag <= 1e-13 * scale {
            return Err(Error::SingularSystem);
        }
        m.swap(col, best);
        let inv = ONE / m[col][col];
        for c in m[col].iter_mut() {
            *c *= inv;
        }
        m[col][col] = ONE;
        for r in 0..n {
            if r != col {
                let factor = m[r][col];
                if factor != ZERO {
                    let pivot_row = m[col].clone();
                    for (c, pc) in m[r].iter_mut().zip(&pivot_row) {
                        *c -= factor * pc;
                    }
                    m[r][col] = ZERO;
                }
            }
        }
    }
    Ok(m.iter().map(|row| row[n]).collect())
}
