//! Canonical forms and equivalence of simple cusp algebras.
//!
//! Every primitive can be pushed to the canonical shape
//! `z^2 + alpha_1 z^3 + alpha_2 z^5 + ... + alpha_n z^(2n+1)` by
//! repeatedly subtracting powers of itself; the surviving odd
//! coefficients are a complete invariant up to the circle action
//! `alpha_j -> tau^(2j-1) alpha_j` with unimodular `tau`. This module
//! computes the canonical parameters, decides equivalence by
//! enumerating the finitely many candidate twists, picks a
//! deterministic orbit representative, and builds the local coordinate
//! change between two primitives through their square roots.

use num_complex::Complex64;

use crate::algebra::{CuspAlgebra, ModuliPoint};
use crate::{Error, Jet, Result, DEFAULT_COEFF_TOL, UNIMODULAR_TOL};

/// Relative tolerance for matching moduli coordinates.
const EQUIV_TOL: f64 = 1e-8;

/// Relative bound on the internal verification residual of
/// [`local_equivalence_map`].
const LOCAL_MAP_TOL: f64 = 1e-9;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

fn check_primitive_shape(pi: &Jet) -> Result<()> {
    let c = DEFAULT_COEFF_TOL * (1.0 + pi.linf());
    if pi.coeff(0).norm() > c || pi.coeff(1).norm() > c || (pi.coeff(2) - ONE).norm() > c {
        return Err(Error::NotPrimitive);
    }
    Ok(())
}

/// Canonical parameters of a primitive: clears the even coefficients
/// `z^4 .. z^(2n)` by the iteration
/// `chi <- chi - chihat(2k) chi^k` for `k = 2..n`, then reads
/// `alpha_j` off the coefficient of `z^(2j+1)`.
///
/// Requires the normalized primitive shape `(0, 0, 1, ...)` and a
/// truncation reaching `2n+1`. The cleared even coefficients are
/// checked to vanish within `1e-10` relative to the result.
pub fn normalize_primitive(pi: &Jet, n: usize) -> Result<ModuliPoint> {
    check_primitive_shape(pi)?;
    if pi.truncation() < 2 * n + 1 {
        return Err(Error::TruncationTooSmall { needed: 2 * n + 1, got: pi.truncation() });
    }
    let mut chi = pi.clone();
    for k in 2..=n {
        let c = chi.coeff(2 * k);
        chi = chi.sub(&chi.pow(k).scale(c))?;
    }
    let bound = 1e-10 * (1.0 + chi.linf());
    for k in 2..=n {
        let residual = chi.coeff(2 * k).norm();
        if residual > bound {
            return Err(Error::ResidualTooLarge { residual });
        }
    }
    let alphas = (1..=n).map(|j| chi.coeff(2 * j + 1)).collect();
    Ok(ModuliPoint::new(alphas))
}

/// Canonical parameters of a simple cusp algebra: a primitive is found
/// and normalized with `n = cod - 1`.
pub fn canonical_form(algebra: &CuspAlgebra) -> Result<ModuliPoint> {
    let pi = algebra.find_primitive()?;
    normalize_primitive(&pi, algebra.codimension() - 1)
}

fn twist(tau: Complex64, alphas: &[Complex64]) -> Vec<Complex64> {
    alphas
        .iter()
        .enumerate()
        .map(|(i, a)| tau.powu(2 * i as u32 + 1) * a)
        .collect()
}

/// Decides global equivalence of two canonical parameter vectors: a
/// unimodular `tau` with `beta_j = tau^(2j-1) alpha_j` for all `j`, or
/// `None` when no candidate twist works. The candidate set is the
/// finite solution set at the first nonzero coordinate, tried in order
/// of increasing angle.
pub fn equivalent_cusps(a: &ModuliPoint, b: &ModuliPoint) -> Result<Option<Complex64>> {
    if a.n() != b.n() {
        return Err(Error::ModuliLengthMismatch { left: a.n(), right: b.n() });
    }
    let alphas = a.alphas();
    let betas = b.alphas();
    let Some(i0) = alphas.iter().position(|x| x.norm() > EQUIV_TOL) else {
        let b_zero = betas.iter().all(|x| x.norm() <= EQUIV_TOL);
        return Ok(if b_zero { Some(ONE) } else { None });
    };
    let m = 2 * i0 + 1;
    if (betas[i0].norm() - alphas[i0].norm()).abs() > EQUIV_TOL * (1.0 + alphas[i0].norm()) {
        return Ok(None);
    }
    let base_angle = (betas[i0] / alphas[i0]).arg();
    let mut angles: Vec<f64> = (0..m)
        .map(|t| {
            let mut angle =
                (base_angle + 2.0 * std::f64::consts::PI * t as f64) / m as f64;
            if angle < 0.0 {
                angle += 2.0 * std::f64::consts::PI;
            }
            angle
        })
        .collect();
    angles.sort_by(f64::total_cmp);
    for angle in angles {
        let tau = Complex64::from_polar(1.0, angle);
        debug_assert!((tau.norm() - 1.0).abs() <= UNIMODULAR_TOL);
        let image = twist(tau, alphas);
        let ok = image
            .iter()
            .zip(betas)
            .zip(alphas)
            .all(|((im, be), al)| (be - im).norm() <= EQUIV_TOL * (1.0 + al.norm()));
        if ok {
            return Ok(Some(tau));
        }
    }
    Ok(None)
}

fn lex_less(a: &[Complex64], b: &[Complex64]) -> bool {
    for (x, y) in a.iter().zip(b) {
        match x.re.total_cmp(&y.re) {
            std::cmp::Ordering::Less => return true,
            std::cmp::Ordering::Greater => return false,
            std::cmp::Ordering::Equal => {}
        }
        match x.im.total_cmp(&y.im) {
            std::cmp::Ordering::Less => return true,
            std::cmp::Ordering::Greater => return false,
            std::cmp::Ordering::Equal => {}
        }
    }
    false
}

/// Deterministic orbit representative under the unimodular twist: the
/// first nonzero coordinate is rotated onto the positive real axis,
/// and among the finitely many twists achieving that, the
/// lexicographically smallest parameter vector (by real part, then
/// imaginary part, in index order) is returned. Idempotent; the zero
/// vector is a fixed point.
pub fn moduli_coordinates(a: &ModuliPoint) -> ModuliPoint {
    let alphas = a.alphas();
    let Some(i0) = alphas.iter().position(|x| x.norm() > EQUIV_TOL) else {
        return a.clone();
    };
    let m = 2 * i0 + 1;
    let base_angle = -alphas[i0].arg();
    let mut best: Option<Vec<Complex64>> = None;
    for t in 0..m {
        let angle = (base_angle + 2.0 * std::f64::consts::PI * t as f64) / m as f64;
        let tau = Complex64::from_polar(1.0, angle);
        let mut image = twist(tau, alphas);
        for v in &mut image {
            // scrub negative zeros so the lexicographic order never keys
            // on the sign of a vanished component
            if v.re == 0.0 {
                v.re = 0.0;
            }
            if v.im == 0.0 {
                v.im = 0.0;
            }
        }
        image[i0] = Complex64::new(alphas[i0].norm(), 0.0);
        match &best {
            Some(current) if !lex_less(&image, current) => {}
            _ => best = Some(image),
        }
    }
    ModuliPoint::new(best.expect("at least one twist candidate"))
}

/// The coordinate change carrying one primitive to another: with
/// `chi_i` the square roots of the `pi_i`, returns
/// `phi = revert(chi_2) o chi_1`, which satisfies `pi_2 o phi = pi_1`
/// through the truncation. The identity is verified internally.
pub fn local_equivalence_map(pi1: &Jet, pi2: &Jet) -> Result<Jet> {
    let chi1 = pi1.sqrt_order2()?;
    let chi2 = pi2.sqrt_order2()?;
    let phi = chi2.revert()?.compose(&chi1)?;
    let residual = pi2.compose(&phi)?.sub(pi1)?.linf();
    if residual > LOCAL_MAP_TOL * (1.0 + pi1.linf()) {
        return Err(Error::ResidualTooLarge { residual });
    }
    Ok(phi)
}
