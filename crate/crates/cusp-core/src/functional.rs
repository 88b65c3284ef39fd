//! Local functionals at the origin and finite connections of them.
//!
//! A [`LocalFunctional`] pairs a jet with a coefficient vector in the
//! Taylor basis: `L(f) = sum_k t_k fhat(k)` where `fhat(k)` is the
//! `k`-th Taylor coefficient. Derivative evaluations enter through
//! [`LocalFunctional::delta`], which carries the factorial.
//!
//! A [`Connection`] is the span of finitely many functionals, stored in
//! reduced echelon form with each row's pivot at its highest Taylor
//! order. The pivot indices are then exactly the leading orders of the
//! span, which the rest of the crate reads off structurally.

use num_complex::Complex64;

use crate::linalg::{self, Echelon};
use crate::{Error, Jet, Result, Tolerance};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// A linear functional on jets, stored in the Taylor basis.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalFunctional {
    taylor: Vec<Complex64>,
}

impl LocalFunctional {
    /// Wraps Taylor-basis coefficients `t_0..t_N`.
    ///
    /// # Panics
    ///
    /// Panics when `taylor` is empty.
    pub fn new(taylor: Vec<Complex64>) -> Self {
        assert!(!taylor.is_empty(), "a functional needs at least one coefficient");
        LocalFunctional { taylor }
    }

    /// The derivative evaluation `f -> f^(j)(0)` at the given
    /// truncation. In Taylor coordinates this is `j!` at index `j`.
    ///
    /// # Panics
    ///
    /// Panics when `j > truncation`.
    pub fn delta(truncation: usize, j: usize) -> Self {
        assert!(j <= truncation, "derivative order exceeds truncation");
        let mut taylor = vec![ZERO; truncation + 1];
        let mut factorial = 1.0;
        for i in 1..=j {
            factorial *= i as f64;
        }
        taylor[j] = Complex64::new(factorial, 0.0);
        LocalFunctional { taylor }
    }

    /// Builds a functional from coefficients on derivative evaluations:
    /// `L(f) = sum_j d_j f^(j)(0)`.
    pub fn from_derivative_coeffs(derivs: &[Complex64]) -> Self {
        assert!(!derivs.is_empty(), "a functional needs at least one coefficient");
        let mut factorial = 1.0;
        let taylor = derivs
            .iter()
            .enumerate()
            .map(|(j, d)| {
                if j > 0 {
                    factorial *= j as f64;
                }
                d * factorial
            })
            .collect();
        LocalFunctional { taylor }
    }

    /// The Taylor-basis coefficients.
    pub fn taylor(&self) -> &[Complex64] {
        &self.taylor
    }

    /// The truncation this functional is defined at.
    pub fn truncation(&self) -> usize {
        self.taylor.len() - 1
    }

    /// Max modulus of the coefficients.
    pub fn linf(&self) -> f64 {
        linalg::linf(&self.taylor)
    }

    /// Leading order: the highest index whose coefficient exceeds
    /// `threshold` in modulus.
    pub fn leading_order(&self, threshold: f64) -> Option<usize> {
        self.taylor.iter().rposition(|c| c.norm() > threshold)
    }

    /// Applies the functional to a jet of the same truncation.
    pub fn apply(&self, f: &Jet) -> Result<Complex64> {
        if self.truncation() != f.truncation() {
            return Err(Error::TruncationMismatch {
                left: self.truncation(),
                right: f.truncation(),
            });
        }
        Ok(linalg::dot(&self.taylor, f.coeffs()))
    }

    /// Transports the functional along the invertible germ `psi`:
    /// the result is `f -> L(f o psi)`, with Taylor coefficients
    /// `t'_j = L(psi^j)`.
    ///
    /// The constant term of `psi` must be negligible and is treated as
    /// an exact zero, so powers of `psi` keep exact zeros below their
    /// order and the top coefficient obeys `t'_N = t_N [z^N](psi^N)`
    /// without rounding contamination from lower orders.
    pub fn pushforward(&self, psi: &Jet) -> Result<LocalFunctional> {
        let n = self.truncation();
        if psi.truncation() != n {
            return Err(Error::TruncationMismatch { left: n, right: psi.truncation() });
        }
        if psi.coeff(0).norm() > crate::DEFAULT_COEFF_TOL {
            return Err(Error::InnerConstantTerm);
        }
        if psi.coeff(1).norm() <= crate::DEFAULT_COEFF_TOL {
            return Err(Error::NotUnivalent);
        }
        let mut coeffs = psi.coeffs().to_vec();
        coeffs[0] = ZERO;
        let inner = Jet::new(coeffs);
        let mut power = Jet::one(n);
        let mut taylor = vec![ZERO; n + 1];
        for (j, slot) in taylor.iter_mut().enumerate() {
            *slot = linalg::dot(&self.taylor, power.coeffs());
            if j < n {
                power = power.mul(&inner).expect("common truncation");
            }
        }
        Ok(LocalFunctional { taylor })
    }
}

/// The span of finitely many local functionals, in reduced echelon
/// form with pivots at the highest Taylor orders.
#[derive(Debug, Clone)]
pub struct Connection {
    echelon: Echelon,
    tol: Tolerance,
}

impl Connection {
    /// Echelonizes the span of the given functionals. All functionals
    /// must share one truncation.
    ///
    /// # Panics
    ///
    /// Panics when `functionals` is empty.
    pub fn new(functionals: &[LocalFunctional], tol: Tolerance) -> Result<Self> {
        assert!(!functionals.is_empty(), "a connection needs at least one functional");
        let truncation = functionals[0].truncation();
        for f in functionals {
            if f.truncation() != truncation {
                return Err(Error::TruncationMismatch {
                    left: truncation,
                    right: f.truncation(),
                });
            }
        }
        let rows: Vec<Vec<Complex64>> =
            functionals.iter().map(|f| f.taylor.clone()).collect();
        let scale = rows.iter().map(|r| linalg::linf(r)).fold(0.0, f64::max);
        let echelon = linalg::echelon_highest(&rows, truncation + 1, tol.pivot_rel * scale);
        Ok(Connection { echelon, tol })
    }

    /// Dimension of the span.
    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }

    /// The truncation the functionals are defined at.
    pub fn truncation(&self) -> usize {
        self.echelon.width - 1
    }

    /// The tolerance bundle this connection was built with.
    pub fn tolerance(&self) -> Tolerance {
        self.tol
    }

    /// Leading orders of the echelon basis, strictly increasing.
    pub fn leading_orders(&self) -> &[usize] {
        &self.echelon.pivots
    }

    /// Largest leading order, or `None` for the zero span.
    pub fn max_order(&self) -> Option<usize> {
        self.echelon.pivots.last().copied()
    }

    /// The echelonized basis as functionals, ascending leading order.
    pub fn basis(&self) -> Vec<LocalFunctional> {
        self.echelon
            .rows
            .iter()
            .map(|r| LocalFunctional { taylor: r.clone() })
            .collect()
    }

    /// Whether every functional in the span kills `f`, within the
    /// membership tolerance relative to the magnitude of `f`.
    pub fn annihilated(&self, f: &Jet) -> Result<bool> {
        if self.truncation() != f.truncation() {
            return Err(Error::TruncationMismatch {
                left: self.truncation(),
                right: f.truncation(),
            });
        }
        let bound = self.tol.member_rel * (1.0 + f.linf());
        Ok(self
            .echelon
            .rows
            .iter()
            .all(|row| linalg::dot(row, f.coeffs()).norm() <= bound))
    }

    /// Whether `lam` lies in the span.
    pub fn contains_functional(&self, lam: &LocalFunctional) -> Result<bool> {
        if self.truncation() != lam.truncation() {
            return Err(Error::TruncationMismatch {
                left: self.truncation(),
                right: lam.truncation(),
            });
        }
        Ok(linalg::in_row_space(&self.echelon, &lam.taylor, self.tol.member_rel))
    }

    /// Basis of the jets killed by the whole span, one per free Taylor
    /// order, ascending. Each basis jet's lowest nonzero coefficient is
    /// exactly `1` at its free order.
    pub fn annihilator_basis(&self) -> Vec<Jet> {
        linalg::null_space(&self.echelon)
            .into_iter()
            .map(Jet::new)
            .collect()
    }

    /// Whether constants are killed: the Taylor order `0` coefficient
    /// of every basis functional is negligible.
    pub fn constants_annihilated(&self) -> bool {
        self.echelon
            .rows
            .iter()
            .all(|row| row[0].norm() <= self.tol.member_rel * (1.0 + linalg::linf(row)))
    }

    /// Whether the annihilated jets form an algebra: constants are
    /// killed and every product of annihilator basis jets is killed
    /// again. Conclusive whenever the truncation reaches the largest
    /// leading order, since the functionals never see higher
    /// coefficients.
    pub fn is_algebraic(&self) -> bool {
        if !self.constants_annihilated() {
            return false;
        }
        let basis = self.annihilator_basis();
        for (i, a) in basis.iter().enumerate() {
            for b in &basis[i..] {
                let prod = a.mul(b).expect("common truncation");
                if !self.annihilated(&prod).expect("common truncation") {
                    return false;
                }
            }
        }
        true
    }

    /// Transports the span along the invertible germ `psi`: each
    /// functional `L` becomes `f -> L(f o psi)`, whose Taylor
    /// coefficients are `L(psi^j)`. The result is re-echelonized at the
    /// same truncation.
    pub fn pushforward(&self, psi: &Jet) -> Result<Connection> {
        let n = self.truncation();
        if psi.truncation() != n {
            return Err(Error::TruncationMismatch { left: n, right: psi.truncation() });
        }
        if psi.coeff(0).norm() > self.tol.coeff {
            return Err(Error::InnerConstantTerm);
        }
        if psi.coeff(1).norm() <= self.tol.coeff {
            return Err(Error::NotUnivalent);
        }
        let mut inner = psi.clone();
        let mut coeffs = inner.coeffs().to_vec();
        coeffs[0] = ZERO;
        inner = Jet::new(coeffs);

        let mut power = Jet::one(n);
        let mut images: Vec<Vec<Complex64>> = vec![vec![ZERO; n + 1]; self.dim()];
        for j in 0..=n {
            for (image, row) in images.iter_mut().zip(&self.echelon.rows) {
                image[j] = linalg::dot(row, power.coeffs());
            }
            if j < n {
                power = power.mul(&inner)?;
            }
        }
        let functionals: Vec<LocalFunctional> =
            images.into_iter().map(|taylor| LocalFunctional { taylor }).collect();
        Connection::new(&functionals, self.tol)
    }
}
