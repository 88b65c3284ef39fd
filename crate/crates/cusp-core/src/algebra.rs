//! Cusp algebras: validated invariants, membership, primitives, the
//! even-order filtration, and the polynomial-plus-remainder
//! decomposition of members.
//!
//! A [`CuspAlgebra`] wraps an algebraic [`Connection`] that annihilates
//! constants and has contact at least one. Its invariants are read off
//! the echelon form: `cod` is the dimension of the connection, `ord`
//! the largest leading order, `con` the longest run of derivative
//! evaluations contained in the span. Simple means `con = 1`.

use num_complex::Complex64;

use crate::functional::{Connection, LocalFunctional};
use crate::linalg;
use crate::{Error, Jet, Result, Tolerance};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Canonical parameters of a simple cusp algebra: the coefficients
/// `alpha_1..alpha_n` of the primitive
/// `z^2 + alpha_1 z^3 + alpha_2 z^5 + ... + alpha_n z^(2n+1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModuliPoint {
    alphas: Vec<Complex64>,
}

impl ModuliPoint {
    /// Wraps the parameter vector; its length is `n`.
    pub fn new(alphas: Vec<Complex64>) -> Self {
        ModuliPoint { alphas }
    }

    /// Number of parameters.
    pub fn n(&self) -> usize {
        self.alphas.len()
    }

    /// The parameters `alpha_1..alpha_n`.
    pub fn alphas(&self) -> &[Complex64] {
        &self.alphas
    }

    /// Ascending coefficients of the canonical primitive polynomial:
    /// `1` at degree 2 and `alpha_j` at degree `2j+1`.
    pub fn primitive_polynomial(&self) -> Vec<Complex64> {
        let n = self.n();
        let mut poly = vec![ZERO; (2 * n + 2).max(3)];
        poly[2] = ONE;
        for (j, a) in self.alphas.iter().enumerate() {
            poly[2 * (j + 1) + 1] = *a;
        }
        poly
    }

    /// The canonical primitive as a jet. The truncation must reach the
    /// polynomial degree: `2n+1`, or `2` when there are no parameters.
    pub fn primitive_jet(&self, truncation: usize) -> Result<Jet> {
        let degree = (2 * self.n() + 1).max(2);
        if truncation < degree {
            return Err(Error::TruncationTooSmall { needed: degree, got: truncation });
        }
        Ok(Jet::from_polynomial(&self.primitive_polynomial(), truncation))
    }
}

/// Dimensions of the quotients `A_k / A_{k+1}` along the filtration
/// `A_k = A` intersected with jets vanishing to order `2k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiltrationProfile {
    /// `dims[k]` counts jet basis orders in `{2k, 2k+1}`, over every
    /// window fully visible at the truncation.
    pub dims: Vec<usize>,
    /// Index of the last window of dimension one.
    pub last_rank_one: usize,
}

/// Result of decomposing a member as a polynomial in a primitive plus
/// a shifted remainder.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    /// Ascending coefficients `c_0..c_{n0}` of the polynomial part.
    pub poly: Vec<Complex64>,
    /// The remainder `g`, already divided by `z^(2 n0 + 2)`.
    pub remainder: Jet,
}

impl Decomposition {
    /// Rebuilds `p(pi) + z^(2 n0 + 2) g` at the truncation of `pi`.
    pub fn reconstruct(&self, pi: &Jet) -> Result<Jet> {
        let shift = 2 * self.poly.len();
        let mut acc = Jet::zero(pi.truncation());
        let mut power = Jet::one(pi.truncation());
        for (k, c) in self.poly.iter().enumerate() {
            if k > 0 {
                power = power.mul(pi)?;
            }
            acc = acc.add(&power.scale(*c))?;
        }
        acc.add(&self.remainder.shift_up(shift))
    }
}

/// A finite-codimensional subalgebra of disk functions, presented by
/// its annihilating connection.
#[derive(Debug, Clone)]
pub struct CuspAlgebra {
    gamma: Connection,
    jet_basis: Vec<Jet>,
    cod: usize,
    ord: usize,
    con: usize,
}

impl CuspAlgebra {
    /// Validates a connection as a cusp algebra. The truncation must
    /// be at least `2 dim + 3` so that downstream constructions have
    /// room to see orders past the top of the filtration.
    pub fn from_connection(gamma: Connection) -> Result<Self> {
        let needed = 2 * gamma.dim() + 3;
        Self::validate(gamma, needed)
    }

    /// Builds the algebra generated by the canonical primitive of `m`:
    /// the span of `1, pi, .., pi^n` together with every monomial from
    /// `z^(2n+2)` up to the truncation, presented by its annihilator.
    pub fn from_moduli(m: &ModuliPoint, truncation: usize, tol: Tolerance) -> Result<Self> {
        let n = m.n();
        if truncation < 2 * n + 3 {
            return Err(Error::TruncationTooSmall { needed: 2 * n + 3, got: truncation });
        }
        let pi = m.primitive_jet(truncation)?;
        let mut rows: Vec<Vec<Complex64>> = Vec::with_capacity(truncation - n);
        let mut power = Jet::one(truncation);
        rows.push(power.coeffs().to_vec());
        for _ in 1..=n {
            power = power.mul(&pi)?;
            rows.push(power.coeffs().to_vec());
        }
        for degree in (2 * n + 2)..=truncation {
            rows.push(Jet::monomial(truncation, degree, ONE).coeffs().to_vec());
        }
        let scale = rows.iter().map(|r| linalg::linf(r)).fold(0.0, f64::max);
        let echelon = linalg::echelon_highest(&rows, truncation + 1, tol.pivot_rel * scale);
        let functionals: Vec<LocalFunctional> = linalg::null_space(&echelon)
            .into_iter()
            .map(LocalFunctional::new)
            .collect();
        let gamma = Connection::new(&functionals, tol)?;
        Self::validate(gamma, 2 * n + 3)
    }

    fn validate(gamma: Connection, needed: usize) -> Result<Self> {
        let truncation = gamma.truncation();
        if truncation < needed {
            return Err(Error::TruncationTooSmall { needed, got: truncation });
        }
        if !gamma.constants_annihilated() {
            return Err(Error::ConstantsNotAnnihilated);
        }
        if !gamma.is_algebraic() {
            return Err(Error::NotAlgebraic);
        }
        let Some(ord) = gamma.max_order() else {
            return Err(Error::NotCusp);
        };
        let mut con = 0;
        for j in 1..=ord {
            if gamma.contains_functional(&LocalFunctional::delta(truncation, j))? {
                con = j;
            } else {
                break;
            }
        }
        if con == 0 {
            return Err(Error::NotCusp);
        }
        let jet_basis = gamma.annihilator_basis();
        Ok(CuspAlgebra { cod: gamma.dim(), ord, con, gamma, jet_basis })
    }

    /// The annihilating connection.
    pub fn connection(&self) -> &Connection {
        &self.gamma
    }

    /// The working truncation.
    pub fn truncation(&self) -> usize {
        self.gamma.truncation()
    }

    /// The tolerance bundle inherited from the connection.
    pub fn tolerance(&self) -> Tolerance {
        self.gamma.tolerance()
    }

    /// Codimension: dimension of the connection.
    pub fn codimension(&self) -> usize {
        self.cod
    }

    /// Order: the largest leading order of the connection, i.e. the
    /// least `k` such that everything vanishing past order `k` belongs
    /// to the algebra.
    pub fn order(&self) -> usize {
        self.ord
    }

    /// Contact: the longest initial run of derivative evaluations
    /// contained in the connection.
    pub fn contact(&self) -> usize {
        self.con
    }

    /// Whether the contact is one.
    pub fn is_simple(&self) -> bool {
        self.con == 1
    }

    /// Cached basis of member jets, one per free Taylor order,
    /// ascending by leading order.
    pub fn jet_basis(&self) -> &[Jet] {
        &self.jet_basis
    }

    /// Membership test. The jet may carry any truncation at or above
    /// the order of the algebra; the functionals see nothing higher.
    pub fn contains(&self, f: &Jet) -> Result<bool> {
        if f.truncation() < self.ord {
            return Err(Error::TruncationTooSmall { needed: self.ord, got: f.truncation() });
        }
        let bound = self.tolerance().member_rel * (1.0 + f.linf());
        Ok(self.gamma.basis().iter().all(|lam| {
            let value: Complex64 = lam
                .taylor()
                .iter()
                .zip(f.coeffs())
                .map(|(t, c)| t * c)
                .sum();
            value.norm() <= bound
        }))
    }

    /// A primitive: a member vanishing to order exactly two with unit
    /// leading coefficient. Among all such members the one of minimal
    /// coefficient norm is returned, which pins down the free tail.
    pub fn find_primitive(&self) -> Result<Jet> {
        if self.con != 1 {
            return Err(Error::NotSimple { contact: self.con });
        }
        let threshold = self.tolerance().coeff;
        let base = self
            .jet_basis
            .iter()
            .find(|b| b.order(threshold) == Some(2))
            .ok_or(Error::NotPrimitive)?
            .clone();
        let tail: Vec<&Jet> = self
            .jet_basis
            .iter()
            .filter(|b| b.order(threshold).map_or(false, |o| o >= 3))
            .collect();
        if tail.is_empty() {
            return Ok(base);
        }
        let gram: Vec<Vec<Complex64>> = tail
            .iter()
            .map(|wi| {
                tail.iter()
                    .map(|wj| linalg::hdot(wi.coeffs(), wj.coeffs()))
                    .collect()
            })
            .collect();
        let rhs: Vec<Complex64> = tail
            .iter()
            .map(|wi| -linalg::hdot(wi.coeffs(), base.coeffs()))
            .collect();
        let coeffs = linalg::solve(&gram, &rhs)?;
        let mut pi = base;
        for (c, w) in coeffs.iter().zip(&tail) {
            pi = pi.add(&w.scale(*c))?;
        }
        Ok(pi)
    }

    /// Dimensions along the filtration by vanishing order, over every
    /// window `{2k, 2k+1}` fully visible at the truncation, plus the
    /// index of the last rank-one window.
    pub fn filtration_profile(&self) -> Result<FiltrationProfile> {
        if self.con != 1 {
            return Err(Error::NotSimple { contact: self.con });
        }
        let threshold = self.tolerance().coeff;
        let orders: Vec<usize> = self
            .jet_basis
            .iter()
            .filter_map(|b| b.order(threshold))
            .collect();
        let windows = (self.truncation() - 1) / 2;
        let dims: Vec<usize> = (0..=windows)
            .map(|k| {
                orders
                    .iter()
                    .filter(|&&o| o == 2 * k || o == 2 * k + 1)
                    .count()
            })
            .collect();
        let last_rank_one = dims
            .iter()
            .rposition(|&d| d == 1)
            .expect("window 0 always has dimension one");
        Ok(FiltrationProfile { dims, last_rank_one })
    }

    pub(crate) fn check_primitive(&self, pi: &Jet) -> Result<()> {
        let c = self.tolerance().coeff * (1.0 + pi.linf());
        if pi.coeff(0).norm() > c
            || pi.coeff(1).norm() > c
            || (pi.coeff(2) - ONE).norm() > c
            || !self.contains(pi)?
        {
            return Err(Error::NotPrimitive);
        }
        Ok(())
    }

    /// Splits a member as `p(pi) + z^(2 n0 + 2) g` with `n0 = cod - 1`:
    /// the polynomial coefficients are extracted greedily from the
    /// even orders `0, 2, .., 2 n0`, which determine them uniquely, and
    /// the residual is divided down by `z^(2 n0 + 2)`.
    pub fn decompose(&self, f: &Jet, pi: &Jet) -> Result<Decomposition> {
        let n = self.truncation();
        if f.truncation() != n || pi.truncation() != n {
            return Err(Error::TruncationMismatch {
                left: n,
                right: if f.truncation() != n { f.truncation() } else { pi.truncation() },
            });
        }
        self.check_primitive(pi)?;
        if !self.contains(f)? {
            return Err(Error::NotMember);
        }
        let n0 = self.cod - 1;
        let mut rem = f.clone();
        let mut power = Jet::one(n);
        let mut poly = Vec::with_capacity(n0 + 1);
        let mut scale = f.linf();
        for k in 0..=n0 {
            if k > 0 {
                power = power.mul(pi)?;
            }
            let c = rem.coeff(2 * k);
            poly.push(c);
            let term = power.scale(c);
            scale = scale.max(term.linf());
            rem = rem.sub(&term)?;
        }
        let threshold = self.tolerance().member_rel * (1.0 + scale);
        let remainder = rem.shift_down(2 * n0 + 2, threshold)?;
        Ok(Decomposition { poly, remainder })
    }
}
