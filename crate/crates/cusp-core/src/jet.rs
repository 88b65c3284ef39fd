//! Arithmetic of truncated complex power series at the origin.
//!
//! A [`Jet`] stores the Taylor coefficients `c_0..c_N` of a holomorphic
//! germ; `N` is the truncation. The basis is Taylor coefficients rather
//! than raw derivatives, so the `k`-th entry multiplies `z^k` and any
//! factor of `k!` belongs to the I/O boundary, never to the arithmetic.
//!
//! Binary operations require equal truncations. Mixing truncations is a
//! hard error, not a silent restriction to the shorter jet.

use num_complex::Complex64;

use crate::{Error, Result, DEFAULT_COEFF_TOL};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A truncated Taylor expansion at the origin with complex coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    coeffs: Vec<Complex64>,
}

impl Jet {
    /// Wraps a coefficient vector `c_0..c_N`; the truncation is `len - 1`.
    ///
    /// # Panics
    ///
    /// Panics when `coeffs` is empty: a jet carries at least a constant
    /// coefficient.
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        assert!(!coeffs.is_empty(), "a jet needs at least the constant coefficient");
        Jet { coeffs }
    }

    /// The zero jet at the given truncation.
    pub fn zero(truncation: usize) -> Self {
        Jet { coeffs: vec![ZERO; truncation + 1] }
    }

    /// The constant jet `1` at the given truncation.
    pub fn one(truncation: usize) -> Self {
        Self::monomial(truncation, 0, ONE)
    }

    /// The identity jet `z` at the given truncation.
    ///
    /// # Panics
    ///
    /// Panics when `truncation` is zero.
    pub fn identity(truncation: usize) -> Self {
        Self::monomial(truncation, 1, ONE)
    }

    /// The jet `c z^degree` at the given truncation.
    ///
    /// # Panics
    ///
    /// Panics when `degree > truncation`.
    pub fn monomial(truncation: usize, degree: usize, c: Complex64) -> Self {
        assert!(degree <= truncation, "monomial degree exceeds truncation");
        let mut coeffs = vec![ZERO; truncation + 1];
        coeffs[degree] = c;
        Jet { coeffs }
    }

    /// The jet of a polynomial given by ascending coefficients, padded
    /// with zeros or truncated to the requested truncation.
    pub fn from_polynomial(poly: &[Complex64], truncation: usize) -> Self {
        let mut coeffs = vec![ZERO; truncation + 1];
        for (k, c) in poly.iter().enumerate().take(truncation + 1) {
            coeffs[k] = *c;
        }
        Jet { coeffs }
    }

    /// The truncation `N`.
    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// The `k`-th Taylor coefficient; zero beyond the truncation.
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or(ZERO)
    }

    /// The stored coefficients `c_0..c_N`.
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Max-norm of the coefficient vector.
    pub fn linf(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Lowest index whose coefficient exceeds `threshold` in modulus,
    /// or `None` when every coefficient is at or below it.
    pub fn order(&self, threshold: f64) -> Option<usize> {
        self.coeffs.iter().position(|c| c.norm() > threshold)
    }

    /// Coefficientwise comparison with absolute tolerance `tol`.
    /// Jets of different truncations never compare equal.
    pub fn approx_eq(&self, other: &Jet, tol: f64) -> bool {
        self.coeffs.len() == other.coeffs.len()
            && self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .all(|(a, b)| (a - b).norm() <= tol)
    }

    fn check_same_truncation(&self, other: &Jet) -> Result<()> {
        if self.coeffs.len() != other.coeffs.len() {
            return Err(Error::TruncationMismatch {
                left: self.truncation(),
                right: other.truncation(),
            });
        }
        Ok(())
    }

    /// Coefficientwise sum; the truncations must agree.
    pub fn add(&self, other: &Jet) -> Result<Jet> {
        self.check_same_truncation(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Jet { coeffs })
    }

    /// Coefficientwise difference; the truncations must agree.
    pub fn sub(&self, other: &Jet) -> Result<Jet> {
        self.check_same_truncation(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Jet { coeffs })
    }

    /// Coefficientwise negation.
    pub fn neg(&self) -> Jet {
        Jet { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    /// Multiplication by a scalar.
    pub fn scale(&self, s: Complex64) -> Jet {
        Jet { coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    /// Cauchy product truncated at the common truncation.
    pub fn mul(&self, other: &Jet) -> Result<Jet> {
        self.check_same_truncation(other)?;
        let n = self.truncation();
        let mut coeffs = vec![ZERO; n + 1];
        for i in 0..=n {
            if self.coeffs[i] == ZERO {
                continue;
            }
            for j in 0..=(n - i) {
                coeffs[i + j] += self.coeffs[i] * other.coeffs[j];
            }
        }
        Ok(Jet { coeffs })
    }

    /// The `k`-th power at the same truncation; `pow(0)` is the
    /// constant jet `1`.
    pub fn pow(&self, k: usize) -> Jet {
        let mut out = Jet::one(self.truncation());
        for _ in 0..k {
            out = out.mul(self).expect("equal truncations by construction");
        }
        out
    }

    /// Composition `self ∘ inner` by Horner's scheme.
    ///
    /// The inner jet must vanish at the origin (within the default
    /// coefficient tolerance); its constant term is then treated as an
    /// exact zero so that rounding dust cannot leak into the result.
    pub fn compose(&self, inner: &Jet) -> Result<Jet> {
        self.check_same_truncation(inner)?;
        if inner.coeff(0).norm() > DEFAULT_COEFF_TOL {
            return Err(Error::InnerConstantTerm);
        }
        let n = self.truncation();
        let mut psi = inner.clone();
        psi.coeffs[0] = ZERO;
        let mut acc = Jet::zero(n);
        for k in (0..=n).rev() {
            acc = acc.mul(&psi)?;
            acc.coeffs[0] += self.coeffs[k];
        }
        Ok(acc)
    }

    /// Compositional inverse: the jet `g` with `self ∘ g = z`, computed
    /// coefficient by coefficient through back-substitution.
    ///
    /// Requires a univalent germ: vanishing constant term and nonzero
    /// linear term.
    pub fn revert(&self) -> Result<Jet> {
        let c1 = self.coeff(1);
        if self.coeff(0).norm() > DEFAULT_COEFF_TOL || c1.norm() <= DEFAULT_COEFF_TOL {
            return Err(Error::NotUnivalent);
        }
        let n = self.truncation();
        let mut g = Jet::zero(n);
        if n >= 1 {
            g.coeffs[1] = ONE / c1;
        }
        for k in 2..=n {
            let partial = self.compose(&g)?;
            g.coeffs[k] = -partial.coeff(k) / c1;
        }
        Ok(g)
    }

    /// Square root of a jet with a double zero: returns `chi` with
    /// `chi * chi = self` through the truncation and `chi` vanishing
    /// simply at the origin.
    ///
    /// Writing `self = z^2 u(z)`, the result is `z sqrt(u)` where the
    /// constant term of `sqrt(u)` is the principal square root of the
    /// second Taylor coefficient. Coefficients of `u` beyond the stored
    /// window are read as zero, which fixes the otherwise free top
    /// coefficient of the result.
    pub fn sqrt_order2(&self) -> Result<Jet> {
        let n = self.truncation();
        let c2 = self.coeff(2);
        if self.coeff(0).norm() > DEFAULT_COEFF_TOL
            || self.coeff(1).norm() > DEFAULT_COEFF_TOL
            || c2.norm() <= DEFAULT_COEFF_TOL
        {
            return Err(Error::NotOrderTwo);
        }
        // s = sqrt(u) with u_k = c_{k+2}; then chi_k = s_{k-1}.
        let m = n - 1;
        let mut s = vec![ZERO; m + 1];
        s[0] = c2.sqrt();
        for k in 1..=m {
            let mut acc = self.coeff(k + 2);
            for i in 1..k {
                acc -= s[i] * s[k - i];
            }
            s[k] = acc / (s[0] + s[0]);
        }
        let mut coeffs = vec![ZERO; n + 1];
        coeffs[1..=m + 1].copy_from_slice(&s);
        Ok(Jet { coeffs })
    }

    /// Exponential of a jet, via the recurrence obtained from
    /// `(exp q)' = q' exp(q)`:
    ///
    /// ```text
    /// r_0 = exp(q_0),    k r_k = sum_{j=1..k} j q_j r_{k-j}.
    /// ```
    pub fn exp(&self) -> Jet {
        let n = self.truncation();
        let mut r = vec![ZERO; n + 1];
        r[0] = self.coeffs[0].exp();
        for k in 1..=n {
            let mut acc = ZERO;
            for j in 1..=k {
                acc += (j as f64) * self.coeffs[j] * r[k - j];
            }
            r[k] = acc / (k as f64);
        }
        Jet { coeffs: r }
    }

    /// Multiplicative inverse of a jet with nonzero constant term.
    pub fn reciprocal(&self) -> Result<Jet> {
        let c0 = self.coeffs[0];
        if c0.norm() <= DEFAULT_COEFF_TOL {
            return Err(Error::ZeroConstantTerm);
        }
        let n = self.truncation();
        let mut r = vec![ZERO; n + 1];
        r[0] = ONE / c0;
        for k in 1..=n {
            let mut acc = ZERO;
            for j in 1..=k {
                acc += self.coeffs[j] * r[k - j];
            }
            r[k] = -acc / c0;
        }
        Ok(Jet { coeffs: r })
    }

    /// Quotient `self / other`; the divisor needs a nonzero constant
    /// term.
    pub fn div(&self, other: &Jet) -> Result<Jet> {
        self.mul(&other.reciprocal()?)
    }

    /// Multiplication by `z^k`; the truncation grows by `k` so that no
    /// coefficient is lost.
    pub fn shift_up(&self, k: usize) -> Jet {
        let mut coeffs = vec![ZERO; self.coeffs.len() + k];
        coeffs[k..].copy_from_slice(&self.coeffs);
        Jet { coeffs }
    }

    /// Division by `z^k`; the truncation shrinks by `k`.
    ///
    /// The coefficients below `z^k` must not exceed `threshold` in
    /// modulus; they are discarded as rounding residue.
    pub fn shift_down(&self, k: usize, threshold: f64) -> Result<Jet> {
        if k > self.truncation() {
            return Err(Error::TruncationTooSmall { needed: k, got: self.truncation() });
        }
        if self.coeffs[..k].iter().any(|c| c.norm() > threshold) {
            return Err(Error::NotDivisible { power: k });
        }
        Ok(Jet { coeffs: self.coeffs[k..].to_vec() })
    }
}
