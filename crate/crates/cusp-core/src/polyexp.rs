//! Functions of the form `p(z) e^(q(z))` with polynomial `p`, `q`, and
//! certified polynomial root finding.
//!
//! These closed forms matter because their zero set in the plane is
//! exactly the root set of `p`: the exponential factor never vanishes.
//! Jets, powers, and pointwise values are all computable exactly from
//! the two coefficient lists.

use num_complex::Complex64;

use crate::{Error, Jet, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Horner evaluation of an ascending coefficient list.
pub(crate) fn poly_eval(poly: &[Complex64], z: Complex64) -> Complex64 {
    poly.iter().rev().fold(ZERO, |acc, c| acc * z + c)
}

/// Full product of two ascending coefficient lists.
pub(crate) fn poly_mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![ZERO; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Synthetic division by `(z - root)`: returns the quotient and the
/// remainder `p(root)`.
pub(crate) fn poly_deflate(poly: &[Complex64], root: Complex64) -> (Vec<Complex64>, Complex64) {
    let mut quotient = vec![ZERO; poly.len() - 1];
    let mut carry = *poly.last().expect("nonempty polynomial");
    for k in (0..poly.len() - 1).rev() {
        quotient[k] = carry;
        carry = poly[k] + carry * root;
    }
    (quotient, carry)
}

/// Coefficientwise difference, padded to the longer length.
pub(crate) fn poly_sub(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let len = a.len().max(b.len());
    (0..len)
        .map(|k| {
            a.get(k).copied().unwrap_or(ZERO) - b.get(k).copied().unwrap_or(ZERO)
        })
        .collect()
}

/// A function `z -> p(z) e^(q(z))`, stored as the two ascending
/// coefficient lists. Its zeros are exactly the roots of `p`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyExpFunction {
    p: Vec<Complex64>,
    q: Vec<Complex64>,
}

impl PolyExpFunction {
    /// Wraps the factor polynomial and the exponent polynomial. An
    /// empty exponent means `q = 0`.
    ///
    /// # Panics
    ///
    /// Panics when `p` is empty.
    pub fn new(p: Vec<Complex64>, q: Vec<Complex64>) -> Self {
        assert!(!p.is_empty(), "the polynomial factor needs at least one coefficient");
        PolyExpFunction { p, q }
    }

    /// The polynomial factor, ascending.
    pub fn polynomial(&self) -> &[Complex64] {
        &self.p
    }

    /// The exponent polynomial, ascending.
    pub fn exponent(&self) -> &[Complex64] {
        &self.q
    }

    /// Pointwise value `p(z) e^(q(z))`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        poly_eval(&self.p, z) * poly_eval(&self.q, z).exp()
    }

    /// The Taylor jet at the origin, exact to the truncation.
    pub fn jet(&self, truncation: usize) -> Jet {
        let p = Jet::from_polynomial(&self.p, truncation);
        let q = Jet::from_polynomial(&self.q, truncation);
        p.mul(&q.exp()).expect("common truncation")
    }

    /// The `k`-th power: `p^k e^(k q)`.
    pub fn pow(&self, k: usize) -> PolyExpFunction {
        let mut p = vec![Complex64::new(1.0, 0.0)];
        for _ in 0..k {
            p = poly_mul(&p, &self.p);
        }
        let scale = k as f64;
        let q = self.q.iter().map(|c| c * scale).collect();
        PolyExpFunction { p, q }
    }

    /// Multiplication by the coordinate `z`: shifts the polynomial
    /// factor up one degree.
    pub fn times_z(&self) -> PolyExpFunction {
        let mut p = Vec::with_capacity(self.p.len() + 1);
        p.push(ZERO);
        p.extend_from_slice(&self.p);
        PolyExpFunction { p, q: self.q.clone() }
    }
}

/// All roots of a polynomial by simultaneous Aberth iteration, sorted
/// by real part then imaginary part. Every returned root is certified
/// by the residual bound `|p(r)| <= 1e-12 sum_k |c_k| |r|^k`; failure
/// to certify is an error, never a silent result.
pub fn aberth_roots(poly: &[Complex64]) -> Result<Vec<Complex64>> {
    let scale = poly.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Ok(Vec::new());
    }
    let degree = poly
        .iter()
        .rposition(|c| c.norm() > 1e-14 * scale)
        .unwrap_or(0);
    if degree == 0 {
        return Ok(Vec::new());
    }
    let monic: Vec<Complex64> = poly[..=degree]
        .iter()
        .map(|c| c / poly[degree])
        .collect();
    let mut roots: Vec<Complex64> = if degree == 1 {
        vec![-monic[0]]
    } else {
        let radius = 1.0 + monic.iter().map(|c| c.norm()).fold(0.0, f64::max);
        (0..degree)
            .map(|i| {
                let angle =
                    2.0 * std::f64::consts::PI * (i as f64 + 0.37) / degree as f64;
                Complex64::from_polar(radius.min(2.0 + i as f64 * 0.1), angle)
            })
            .collect()
    };

    if degree > 1 {
        for _ in 0..400 {
            let mut shift = 0.0f64;
            for i in 0..degree {
                let z = roots[i];
                let mut value = ZERO;
                let mut derivative = ZERO;
                for c in monic.iter().rev() {
                    derivative = derivative * z + value;
                    value = value * z + c;
                }
                if value == ZERO {
                    continue;
                }
                let newton = if derivative == ZERO {
                    Complex64::new(1e-8, 1e-8)
                } else {
                    value / derivative
                };
                let mut s = ZERO;
                for (j, other) in roots.iter().enumerate() {
                    if j != i {
                        let diff = z - other;
                        if diff == ZERO {
                            s += Complex64::new(1e8, 0.0);
                        } else {
                            s += Complex64::new(1.0, 0.0) / diff;
                        }
                    }
                }
                let denom = Complex64::new(1.0, 0.0) - newton * s;
                let step = if denom == ZERO { newton } else { newton / denom };
                roots[i] = z - step;
                shift = shift.max(step.norm() / (1.0 + roots[i].norm()));
            }
            if shift <= 1e-15 {
                break;
            }
        }
    }

    for r in &roots {
        let magnitude: f64 = poly
            .iter()
            .enumerate()
            .map(|(k, c)| c.norm() * r.norm().powi(k as i32))
            .sum();
        if poly_eval(poly, *r).norm() > 1e-12 * magnitude {
            return Err(Error::RootsNotConverged);
        }
    }
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(roots)
}
