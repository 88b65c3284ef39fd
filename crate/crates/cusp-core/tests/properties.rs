//! Randomized invariants for jet arithmetic, connections, and algebras.

use cusp_core::moduli::{equivalent_cusps, moduli_coordinates};
use cusp_core::{Connection, CuspAlgebra, Jet, ModuliPoint, Tolerance};
use num_complex::Complex64;
use proptest::prelude::*;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

fn complex_in(radius: f64) -> impl Strategy<Value = Complex64> {
    (-radius..radius, -radius..radius).prop_map(|(re, im)| Complex64::new(re, im))
}

fn jet(truncation: usize) -> impl Strategy<Value = Jet> {
    proptest::collection::vec(complex_in(1.0), truncation + 1).prop_map(Jet::new)
}

fn vanishing_jet(truncation: usize) -> impl Strategy<Value = Jet> {
    proptest::collection::vec(complex_in(0.5), truncation).prop_map(|tail| {
        let mut coeffs = vec![ZERO];
        coeffs.extend(tail);
        Jet::new(coeffs)
    })
}

fn univalent_jet(truncation: usize) -> impl Strategy<Value = Jet> {
    (
        0.5f64..1.5,
        -3.1f64..3.1,
        proptest::collection::vec(complex_in(0.3), truncation - 1),
    )
        .prop_map(|(modulus, angle, tail)| {
            let mut coeffs = vec![ZERO, Complex64::from_polar(modulus, angle)];
            coeffs.extend(tail);
            Jet::new(coeffs)
        })
}

fn moduli_point(n: usize) -> impl Strategy<Value = ModuliPoint> {
    proptest::collection::vec(complex_in(1.0), n).prop_map(ModuliPoint::new)
}

fn close(a: &Jet, b: &Jet, rel: f64) -> bool {
    a.sub(b).unwrap().linf() <= rel * (1.0 + a.linf().max(b.linf()))
}

proptest! {
    #[test]
    fn multiplication_commutes_and_distributes(
        f in jet(10),
        g in jet(10),
        h in jet(10),
    ) {
        let fg = f.mul(&g).unwrap();
        let gf = g.mul(&f).unwrap();
        prop_assert!(close(&fg, &gf, 1e-12));

        let lhs = f.add(&g).unwrap().mul(&h).unwrap();
        let rhs = f.mul(&h).unwrap().add(&g.mul(&h).unwrap()).unwrap();
        prop_assert!(close(&lhs, &rhs, 1e-11));

        let assoc_l = fg.mul(&h).unwrap();
        let assoc_r = f.mul(&g.mul(&h).unwrap()).unwrap();
        prop_assert!(close(&assoc_l, &assoc_r, 1e-11));
    }

    #[test]
    fn composition_is_associative(
        f in jet(8),
        g in vanishing_jet(8),
        h in vanishing_jet(8),
    ) {
        let lhs = f.compose(&g).unwrap().compose(&h).unwrap();
        let rhs = f.compose(&g.compose(&h).unwrap()).unwrap();
        prop_assert!(close(&lhs, &rhs, 1e-10));
    }

    #[test]
    fn reversion_inverts_composition(psi in univalent_jet(8)) {
        let inv = psi.revert().unwrap();
        let id = Jet::identity(8);
        let forward = psi.compose(&inv).unwrap();
        let backward = inv.compose(&psi).unwrap();
        prop_assert!(close(&forward, &id, 1e-9));
        prop_assert!(close(&backward, &id, 1e-9));
    }

    #[test]
    fn square_roots_square_back(w in univalent_jet(7)) {
        let f = w.mul(&w).unwrap();
        let s = f.sqrt_order2().unwrap();
        let squared = s.mul(&s).unwrap();
        prop_assert!(close(&squared, &f, 1e-9));
    }

    #[test]
    fn exponentials_turn_sums_into_products(
        p in vanishing_jet(8),
        q in vanishing_jet(8),
    ) {
        let lhs = p.add(&q).unwrap().exp();
        let rhs = p.exp().mul(&q.exp()).unwrap();
        prop_assert!(close(&lhs, &rhs, 1e-11));

        let unit = p.exp().mul(&p.neg().exp()).unwrap();
        prop_assert!(close(&unit, &Jet::one(8), 1e-11));
    }

    #[test]
    fn reciprocals_multiply_to_one(
        f in jet(8),
        modulus in 0.5f64..1.5,
        angle in -3.1f64..3.1,
    ) {
        let mut coeffs = f.coeffs().to_vec();
        coeffs[0] = Complex64::from_polar(modulus, angle);
        let g = Jet::new(coeffs);
        let unit = g.mul(&g.reciprocal().unwrap()).unwrap();
        prop_assert!(close(&unit, &Jet::one(8), 1e-10));
    }

    #[test]
    fn pushforward_preserves_connection_shape(
        m in moduli_point(2),
        psi in univalent_jet(9),
    ) {
        let algebra = CuspAlgebra::from_moduli(&m, 9, Tolerance::default()).unwrap();
        let gamma = algebra.connection();
        let moved = gamma.pushforward(&psi).unwrap();
        prop_assert_eq!(moved.dim(), gamma.dim());
        prop_assert_eq!(moved.leading_orders(), gamma.leading_orders());
        prop_assert!(moved.is_algebraic());
    }

    #[test]
    fn pushforward_is_functorial(
        m in moduli_point(1),
        psi1 in univalent_jet(7),
        psi2 in univalent_jet(7),
    ) {
        let algebra = CuspAlgebra::from_moduli(&m, 7, Tolerance::default()).unwrap();
        let gamma = algebra.connection();
        let stepwise = gamma.pushforward(&psi1).unwrap().pushforward(&psi2).unwrap();
        let direct = gamma.pushforward(&psi2.compose(&psi1).unwrap()).unwrap();
        prop_assert_eq!(stepwise.leading_orders(), direct.leading_orders());
        for (a, b) in stepwise.basis().iter().zip(direct.basis()) {
            let scale: f64 = 1.0 + a.linf().max(b.linf());
            for (x, y) in a.taylor().iter().zip(b.taylor()) {
                prop_assert!((x - y).norm() <= 1e-8 * scale);
            }
        }
    }

    #[test]
    fn decomposition_reconstructs_members(
        m in moduli_point(2),
        poly in proptest::collection::vec(complex_in(1.0), 3),
        tail in proptest::collection::vec(complex_in(1.0), 4),
    ) {
        let truncation = 9;
        let algebra = CuspAlgebra::from_moduli(&m, truncation, Tolerance::default()).unwrap();
        let pi = m.primitive_jet(truncation).unwrap();
        let mut f = Jet::zero(truncation);
        for (k, c) in poly.iter().enumerate() {
            f = f.add(&pi.pow(k).scale(*c)).unwrap();
        }
        for (j, c) in tail.iter().enumerate() {
            f = f.add(&Jet::monomial(truncation, 6 + j, *c)).unwrap();
        }
        let parts = algebra.decompose(&f, &pi).unwrap();
        let back = parts.reconstruct(&pi).unwrap();
        prop_assert!(close(&back, &f, 1e-9));
    }

    #[test]
    fn membership_covers_generators_and_rejects_low_orders(
        m in moduli_point(2),
    ) {
        let truncation = 9;
        let algebra = CuspAlgebra::from_moduli(&m, truncation, Tolerance::default()).unwrap();
        let pi = m.primitive_jet(truncation).unwrap();
        for k in 0..=3 {
            prop_assert!(algebra.contains(&pi.pow(k)).unwrap());
        }
        for j in 6..=truncation {
            prop_assert!(algebra.contains(&Jet::monomial(truncation, j, ONE)).unwrap());
        }
        prop_assert!(!algebra.contains(&Jet::identity(truncation)).unwrap());
    }

    #[test]
    fn twisted_moduli_stay_equivalent(
        m in moduli_point(3),
        angle in -3.1f64..3.1,
    ) {
        let tau = Complex64::from_polar(1.0, angle);
        let twisted: Vec<Complex64> = m
            .alphas()
            .iter()
            .enumerate()
            .map(|(i, a)| tau.powu(2 * i as u32 + 1) * a)
            .collect();
        let b = ModuliPoint::new(twisted);
        let found = equivalent_cusps(&m, &b).unwrap();
        prop_assert!(found.is_some());
        let w = found.unwrap();
        for (i, a) in m.alphas().iter().enumerate() {
            let moved = w.powu(2 * i as u32 + 1) * a;
            prop_assert!((moved - b.alphas()[i]).norm() <= 1e-8 * (1.0 + a.norm()));
        }
        for (x, y) in moduli_coordinates(&m).alphas().iter().zip(b.alphas()) {
            prop_assert!((x.norm() - y.norm()).abs() <= 1e-9 * (1.0 + y.norm()));
        }
    }

    #[test]
    fn connections_reject_affine_perturbations(
        m in moduli_point(1),
        c in complex_in(1.0),
    ) {
        let algebra = CuspAlgebra::from_moduli(&m, 7, Tolerance::default()).unwrap();
        let mut taylor = vec![ZERO; 8];
        taylor[0] = ONE + Complex64::new(0.5, 0.0) * c * c;
        taylor[2] = ONE;
        let lam = cusp_core::LocalFunctional::new(taylor);
        let gamma = Connection::new(&[lam], Tolerance::default()).unwrap();
        prop_assert!(!gamma.constants_annihilated());
        prop_assert!(algebra.connection().constants_annihilated());
    }
}
