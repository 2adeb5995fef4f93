//! Randomized properties: golden-field axioms, exact sign vs. floating
//! cross-check, parse/print round-trips, and reduction invariants.

mod common;

use common::*;
use num::BigRational;
use poly120::{GoldenNumber, GoldenVector4, ProofSymbol};
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = BigRational> {
    (-20i64..=20, 1i64..=12).prop_map(|(num, den)| {
        BigRational::new(num.into(), den.into())
    })
}

fn golden_number() -> impl Strategy<Value = GoldenNumber> {
    (small_rational(), small_rational()).prop_map(|(a, b)| GoldenNumber::new(a, b))
}

fn golden_vector() -> impl Strategy<Value = GoldenVector4> {
    [golden_number(), golden_number(), golden_number(), golden_number()]
        .prop_map(GoldenVector4::new)
}

proptest! {
    #[test]
    fn field_axioms(x in golden_number(), y in golden_number(), z in golden_number()) {
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x + &GoldenNumber::zero(), x.clone());
        prop_assert_eq!(&x * &GoldenNumber::one(), x.clone());
        prop_assert_eq!(&x - &x, GoldenNumber::zero());
    }

    #[test]
    fn inverses_and_division(x in golden_number(), y in golden_number()) {
        if x.is_zero() {
            prop_assert!(x.inverse().is_err());
        } else {
            prop_assert_eq!(&x * &x.inverse().unwrap(), GoldenNumber::one());
            prop_assert_eq!(&(&y / &x) * &x, y.clone());
        }
    }

    #[test]
    fn tau_satisfies_its_equation(x in golden_number()) {
        let tau = GoldenNumber::tau();
        prop_assert_eq!(&(&tau * &tau) - &tau, GoldenNumber::one());
        // Multiplying by τ in coordinates: (a + bτ)τ = b + (a + b)τ.
        let product = &x * &tau;
        prop_assert_eq!(product.rational_part(), x.golden_part());
        prop_assert_eq!(
            product.golden_part(),
            &(x.rational_part() + x.golden_part())
        );
    }

    #[test]
    fn galois_conjugation_is_an_automorphism(x in golden_number(), y in golden_number()) {
        prop_assert_eq!(x.galois_conjugate().galois_conjugate(), x.clone());
        prop_assert_eq!(
            (&x + &y).galois_conjugate(),
            &x.galois_conjugate() + &y.galois_conjugate()
        );
        prop_assert_eq!(
            (&x * &y).galois_conjugate(),
            &x.galois_conjugate() * &y.galois_conjugate()
        );
        // x·conj(x) lands in the rationals and equals the norm.
        let product = &x * &x.galois_conjugate();
        prop_assert!(product.golden_part().numer().bits() == 0);
        prop_assert_eq!(product.rational_part(), &x.norm());
    }

    #[test]
    fn exact_sign_matches_float(x in golden_number()) {
        // For coefficients this small the embedding is bounded away from
        // zero by |norm| ≥ 1/12⁴ unless exactly zero, so f64 cannot lie.
        let approx = x.approx_value();
        match x.sign() {
            0 => prop_assert_eq!(approx, 0.0),
            s => {
                prop_assert!(approx.abs() > 1e-9);
                prop_assert_eq!(s as f64, approx.signum());
            }
        }
    }

    #[test]
    fn golden_display_roundtrip(x in golden_number()) {
        let text = x.to_string();
        let back: GoldenNumber = text.parse().unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn inner_product_is_symmetric_bilinear(
        u in golden_vector(),
        v in golden_vector(),
        w in golden_vector(),
        c in golden_number(),
    ) {
        prop_assert_eq!(u.inner_product(&v), v.inner_product(&u));
        let scaled = GoldenVector4::new(std::array::from_fn(|i| &v.components()[i] * &c));
        let sum = GoldenVector4::new(std::array::from_fn(|i| {
            &scaled.components()[i] + &w.components()[i]
        }));
        prop_assert_eq!(
            u.inner_product(&sum),
            &(&u.inner_product(&v) * &c) + &u.inner_product(&w)
        );
        prop_assert_eq!(u.is_orthogonal_to(&v), u.inner_product(&v).is_zero());
    }

    #[test]
    fn canonicalization_fixes_the_sign(v in golden_vector()) {
        if v.is_zero() {
            prop_assert!(v.canonicalize().is_err());
        } else {
            // Rays are projective via the first-nonzero-positive sign rule:
            // the canonical form is v or −v, idempotent, and antipode-stable.
            let canonical = v.canonicalize().unwrap();
            prop_assert!(canonical == v || canonical == -&v);
            prop_assert_eq!(canonical.canonicalize().unwrap(), canonical.clone());
            let first = canonical.components().iter().find(|x| !x.is_zero()).unwrap();
            prop_assert_eq!(first.sign(), 1);
            prop_assert_eq!((-&v).canonicalize().unwrap(), canonical);
        }
    }

    #[test]
    fn proof_symbol_roundtrip(
        counts in proptest::collection::vec(1u32..=99, 1..=3),
        basis_count in (1u32..=49).prop_map(|n| 2 * n + 1),
    ) {
        // Multiplicities 2, 4, 6, … ascending, one per drawn count.
        let ray_part: Vec<(u32, u32)> =
            counts.iter().enumerate().map(|(i, &c)| (c, 2 * (i as u32 + 1))).collect();
        let symbol = ProofSymbol { ray_part, basis_count };
        let text = symbol.to_string();
        let back: ProofSymbol = text.parse().unwrap();
        prop_assert_eq!(back, symbol);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reduction_invariants(indices in proptest::collection::btree_set(0usize..25, 0..=25)) {
        let all = poly120::Cell24Label::all();
        let drop: Vec<_> = indices.iter().map(|&i| all[i]).collect();
        let full = full_system();
        let reduced = full.reduce(&drop);

        // Idempotence: dropping the same cells again changes nothing.
        let again = reduced.reduce(&drop);
        prop_assert_eq!(reduced.rays(), again.rays());
        prop_assert_eq!(reduced.basis_count(), again.basis_count());

        // The signature accounts for every ray-in-basis incidence.
        let signature = reduced.signature();
        prop_assert!(signature.accounting_holds());
        prop_assert_eq!(signature.ray_count() as usize, reduced.ray_count());

        // Surviving bases are exactly the full-system bases avoiding the
        // dropped rays, and they keep their ids.
        let dropped_rays: std::collections::BTreeSet<u32> =
            drop.iter().flat_map(|c| c.ray_indices()).collect();
        for b in reduced.bases() {
            prop_assert!(b.rays.iter().all(|r| !dropped_rays.contains(r)));
            prop_assert_eq!(&full.basis(b.id).unwrap().rays, &b.rays);
        }
        let expected = full
            .bases()
            .iter()
            .filter(|b| b.rays.iter().all(|r| !dropped_rays.contains(r)))
            .count();
        prop_assert_eq!(reduced.basis_count(), expected);

        // Multiplicities equal incidence-matrix row weights.
        let matrix = reduced.incidence_matrix();
        for (i, &ray) in reduced.rays().iter().enumerate() {
            prop_assert_eq!(reduced.multiplicity(ray), matrix.row_weight(i));
        }

        // Every kernel-basis vector really lies in the kernel.
        for vector in matrix.kernel_basis() {
            prop_assert!(matrix.mul_indicator(&vector).iter().all(|&w| w == 0));
        }
    }

    #[test]
    fn deeper_reduction_shrinks_bases(
        first in proptest::collection::btree_set(0usize..25, 0..=12),
        second in proptest::collection::btree_set(0usize..25, 0..=12),
    ) {
        let all = poly120::Cell24Label::all();
        let drop_a: Vec<_> = first.iter().map(|&i| all[i]).collect();
        let drop_b: Vec<_> = first.union(&second).map(|&i| all[i]).collect();
        let full = full_system();
        let shallow = full.reduce(&drop_a);
        let deep = full.reduce(&drop_b);
        let shallow_ids: std::collections::BTreeSet<u32> =
            shallow.bases().iter().map(|b| b.id).collect();
        prop_assert!(deep.bases().iter().all(|b| shallow_ids.contains(&b.id)));
        prop_assert!(deep.ray_count() <= shallow.ray_count());
    }
}
