mod common;

use std::sync::Arc;

use proptest::prelude::*;

use pastedef::exactlinalg::{Field, Matrix};
use pastedef::hochschild::{coboundary, h_bar, identity_functor, Cochain, CochainSpace};
use pastedef::lincat::NatTransf;

use common::{random_category, random_cochain, rng, scalar};

fn field_of(p: u8) -> Field {
    match p {
        0 => Field::Rational,
        1 => Field::prime(2).unwrap(),
        _ => Field::prime(5).unwrap(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn coboundary_squares_to_zero(seed in any::<u64>(), p in 0u8..3, n in 0usize..3) {
        let mut r = rng(seed);
        let c = Arc::new(random_category(&mut r, field_of(p)));
        let phi = random_cochain(&mut r, CochainSpace::category(&c, n));
        prop_assert!(coboundary(&coboundary(&phi)).is_zero());
    }

    #[test]
    fn retraction_is_idempotent(seed in any::<u64>(), p in 0u8..3, n in 0usize..4) {
        let mut r = rng(seed);
        let c = Arc::new(random_category(&mut r, field_of(p)));
        let phi = random_cochain(&mut r, CochainSpace::category(&c, n));
        let once = h_bar(&phi);
        prop_assert!(once.is_normalized());
        prop_assert_eq!(h_bar(&once), once);
    }

    #[test]
    fn naturality_is_closedness(seed in any::<u64>(), p in 0u8..3) {
        let mut r = rng(seed);
        let field = field_of(p);
        let c = Arc::new(random_category(&mut r, field));
        let id = identity_functor(&c);
        let comps = (0..c.n_objects())
            .map(|x| (0..c.hom_dim(x, x)).map(|_| scalar(&mut r, field)).collect())
            .collect();
        let s = NatTransf::new("s", id.clone(), id, comps).unwrap();
        prop_assert_eq!(s.validate().is_ok(), coboundary(&Cochain::from_nat(&s)).is_zero());
    }

    #[test]
    fn rank_plus_nullity(rows in 1usize..6, cols in 1usize..6, entries in prop::collection::vec(-2i64..3, 36), p in 0u8..3) {
        let field = field_of(p);
        let data: Vec<Vec<_>> =
            (0..rows).map(|i| (0..cols).map(|j| field.from_i64(entries[i * 6 + j])).collect()).collect();
        let m = Matrix::from_rows(field, data).unwrap();
        let kernel = m.kernel_basis();
        prop_assert_eq!(m.rank() + kernel.len(), cols);
        for v in &kernel {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn prime_field_inverses(a in -40i64..40, p in 1u8..3) {
        let field = field_of(p);
        let x = field.from_i64(a);
        match x.inverse() {
            Ok(inv) => prop_assert!((&x * &inv).is_one()),
            Err(_) => prop_assert!(x.is_zero()),
        }
    }
}
