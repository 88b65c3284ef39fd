//! Polynomial-exponential members, zero-free primitives, and the pair of
//! functions that embeds a simple cusp algebra into the plane.

use num_complex::Complex64;

use crate::algebra::CuspAlgebra;
use crate::linalg;
use crate::moduli;
use crate::polyexp::{aberth_roots, poly_deflate, poly_eval, poly_sub};
use crate::{Error, Jet, PolyExpFunction, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Zeros of a purged cofactor must stay this far outside the closed disk.
const ROOT_MARGIN: f64 = 1e-6;

/// Two polynomial-exponential functions whose monomials in two variables
/// recover every member of a simple cusp algebra up to high order.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingPair {
    /// Zero-free primitive of order two.
    pub first: PolyExpFunction,
    /// Odd companion `z * first^cod`.
    pub second: PolyExpFunction,
}

fn membership_residual(algebra: &CuspAlgebra, f: &Jet) -> Result<f64> {
    let mut worst = 0.0f64;
    for lam in algebra.connection().basis() {
        worst = worst.max(lam.apply(f)?.norm());
    }
    Ok(worst)
}

/// Finds `(z - location) e^h` annihilated by the connection, with `h`
/// supported on the leading orders of the echelon basis.
///
/// The system is triangular: the functional with leading order `o` pins
/// the coefficient of `z^o` in `h` and is affine in it, so each unknown
/// is read off from two evaluations.
fn solve_single_zero(algebra: &CuspAlgebra, location: Complex64) -> Result<PolyExpFunction> {
    let n = algebra.truncation();
    let linear = vec![-location, ONE];
    let mut exponent = vec![ZERO; algebra.order() + 1];
    let basis = algebra.connection().basis();
    let orders = algebra.connection().leading_orders().to_vec();
    for (lam, &ord) in basis.iter().zip(&orders) {
        let low = lam.apply(&PolyExpFunction::new(linear.clone(), exponent.clone()).jet(n))?;
        exponent[ord] = ONE;
        let high = lam.apply(&PolyExpFunction::new(linear.clone(), exponent.clone()).jet(n))?;
        let slope = high - low;
        if slope.norm() <= 1e-14 * (1.0 + low.norm()) {
            return Err(Error::SingularSystem);
        }
        exponent[ord] = -low / slope;
    }
    Ok(PolyExpFunction::new(linear, exponent))
}

/// Member of the algebra with a single simple zero at `alpha`, in the
/// form `(z - alpha) e^h`. The location must satisfy `0 < |alpha| < 1`.
pub fn solve_psi_alpha(algebra: &CuspAlgebra, alpha: Complex64) -> Result<PolyExpFunction> {
    let modulus = alpha.norm();
    if modulus <= 0.0 || modulus >= 1.0 {
        return Err(Error::ZeroLocationOutOfRange { modulus });
    }
    if !algebra.is_simple() {
        return Err(Error::NotSimple { contact: algebra.contact() });
    }
    let psi = solve_single_zero(algebra, alpha)?;
    let jet = psi.jet(algebra.truncation());
    let residual = membership_residual(algebra, &jet)?;
    if residual > algebra.tolerance().member_rel * (1.0 + jet.linf()) {
        return Err(Error::ResidualTooLarge { residual });
    }
    Ok(psi)
}

/// Inverts a member whose constant term is nonzero, verifying that the
/// reciprocal jet stays inside the algebra.
pub fn invert_in_algebra(algebra: &CuspAlgebra, f: &Jet) -> Result<Jet> {
    if !algebra.contains(f)? {
        return Err(Error::NotMember);
    }
    let recip = f.reciprocal()?;
    if !algebra.contains(&recip)? {
        return Err(Error::QuotientLeftAlgebra);
    }
    Ok(recip)
}

/// Divides a member by an interpolation function with zero at `alpha`,
/// verifying that the quotient jet stays inside the algebra.
pub fn divide_by_psi(
    algebra: &CuspAlgebra,
    f: &Jet,
    psi: &PolyExpFunction,
    alpha: Complex64,
) -> Result<Jet> {
    debug_assert!(
        poly_eval(psi.polynomial(), alpha).norm()
            <= 1e-9 * (1.0 + linalg::linf(psi.polynomial())),
        "psi must vanish at alpha"
    );
    if !algebra.contains(f)? {
        return Err(Error::NotMember);
    }
    let quotient = f.div(&psi.jet(f.truncation()))?;
    if !algebra.contains(&quotient)? {
        return Err(Error::QuotientLeftAlgebra);
    }
    Ok(quotient)
}

/// Primitive of the algebra in the form `p(z) e^q(z)` whose only zero in
/// the closed unit disk is the double point at the origin.
///
/// Starting from the canonical polynomial primitive, every cofactor root
/// inside the disk is deflated out of `p` and traded for an exponential
/// factor, then the order-two coefficient is scaled back to one.
pub fn zero_free_primitive(algebra: &CuspAlgebra) -> Result<PolyExpFunction> {
    let n = algebra.truncation();
    let form = moduli::canonical_form(algebra)?;
    let mut p = form.primitive_polynomial();
    let mut q = vec![ZERO; algebra.order() + 1];
    loop {
        let roots = aberth_roots(&p[2..])?;
        let Some(root) = roots.into_iter().find(|r| r.norm() <= 1.0 + ROOT_MARGIN) else {
            break;
        };
        let correction = solve_single_zero(algebra, root)?;
        let (quotient, _) = poly_deflate(&p, root);
        p = quotient;
        q = poly_sub(&q, correction.exponent());
    }
    let scale = linalg::linf(&p);
    for c in &mut p[..2] {
        if c.norm() <= 1e-12 * scale {
            *c = ZERO;
        }
    }
    let lead = PolyExpFunction::new(p.clone(), q.clone()).jet(n).coeff(2);
    if lead.norm() == 0.0 {
        return Err(Error::SingularSystem);
    }
    for c in &mut p {
        *c /= lead;
    }
    if let Some(bad) = aberth_roots(&p[2..])?
        .into_iter()
        .find(|r| r.norm() <= 1.0 + ROOT_MARGIN)
    {
        return Err(Error::ZeroLocationOutOfRange { modulus: bad.norm() });
    }
    let primitive = PolyExpFunction::new(p, q);
    algebra.check_primitive(&primitive.jet(n))?;
    Ok(primitive)
}

/// Builds the embedding pair `(h1, h2)` with `h1` a zero-free primitive
/// and `h2 = z * h1^cod`, and verifies joint density.
pub fn embedding_pair(algebra: &CuspAlgebra) -> Result<EmbeddingPair> {
    let first = zero_free_primitive(algebra)?;
    let second = first.pow(algebra.codimension()).times_z();
    if !algebra.contains(&second.jet(algebra.truncation()))? {
        return Err(Error::NotMember);
    }
    let pair = EmbeddingPair { first, second };
    if !density_check(algebra, &pair)? {
        return Err(Error::DensityCheckFailed);
    }
    Ok(pair)
}

fn unit_row(coeffs: &[Complex64]) -> Vec<Complex64> {
    let scale = linalg::linf(coeffs);
    if scale == 0.0 {
        return coeffs.to_vec();
    }
    coeffs.iter().map(|c| c / scale).collect()
}

/// Checks that the jets of `first^i * second^j` span the algebra: the
/// monomials with total order within the truncation are echelonized and
/// compared against the span of the jet basis. Rows are scaled to unit
/// sup-norm first, since high powers can dwarf the low ones.
pub fn density_check(algebra: &CuspAlgebra, pair: &EmbeddingPair) -> Result<bool> {
    let n = algebra.truncation();
    let needed = 2 * algebra.codimension() + 1;
    if n < needed {
        return Err(Error::TruncationTooSmall { needed, got: n });
    }
    let tol = algebra.tolerance();
    let first = pair.first.jet(n);
    let second = pair.second.jet(n);
    let (Some(o1), Some(o2)) = (first.order(tol.coeff), second.order(tol.coeff)) else {
        return Ok(false);
    };
    if o1 == 0 || o2 == 0 {
        return Ok(false);
    }
    let mut rows = Vec::new();
    let mut i = 0;
    while i * o1 <= n {
        let base = first.pow(i);
        let mut j = 0;
        while i * o1 + j * o2 <= n {
            rows.push(unit_row(base.mul(&second.pow(j))?.coeffs()));
            j += 1;
        }
        i += 1;
    }
    let basis_rows: Vec<Vec<Complex64>> =
        algebra.jet_basis().iter().map(|b| unit_row(b.coeffs())).collect();
    let spanned = linalg::echelon_highest(&rows, n + 1, tol.pivot_rel);
    let target = linalg::echelon_highest(&basis_rows, n + 1, tol.pivot_rel);
    Ok(linalg::span_eq(&spanned, &target, tol.member_rel))
}

/// Samples the embedded cusp on a polar grid: radial rings outermost,
/// angles innermost, radii strictly inside the unit circle.
pub fn render_cusp(
    pair: &EmbeddingPair,
    radial_steps: usize,
    angular_steps: usize,
) -> Vec<(Complex64, Complex64)> {
    assert!(radial_steps > 0 && angular_steps > 0, "grid steps must be positive");
    let mut samples = Vec::with_capacity(radial_steps * angular_steps);
    for i in 0..radial_steps {
        let r = (i + 1) as f64 / (radial_steps + 1) as f64;
        for j in 0..angular_steps {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / angular_steps as f64;
            let z = Complex64::from_polar(r, theta);
            samples.push((pair.first.eval(z), pair.second.eval(z)));
        }
    }
    samples
}
