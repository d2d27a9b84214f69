mod common;
mod oracle;

use std::sync::Arc;

use pastedef::defcomplex::{build_complex, ComplexOptions, Subject};
use pastedef::exactlinalg::Field;
use pastedef::lincat::examples::k1_k1;

use oracle::Algebra;

fn engine_dims(cat: pastedef::lincat::LinCategory, top: i64) -> Vec<usize> {
    let cat = Arc::new(cat);
    let opts = ComplexOptions { window: Some((0, top + 1)), max_degree: top as usize + 1 };
    let cx = build_complex(Subject::Category(&cat), &opts).unwrap();
    (0..=top).map(|n| cx.cohomology_dim(n).unwrap()).collect()
}

fn from_algebra(name: &str, a: &Algebra) -> pastedef::lincat::LinCategory {
    common::one_object(name, Field::Rational, &a.mult)
}

#[test]
fn oracle_differential_squares_to_zero() {
    for a in [oracle::field(), oracle::truncated_polynomial(2), oracle::split_pair(), oracle::upper_triangular()] {
        for n in 0..3 {
            assert!(oracle::square_is_zero(&a, n));
        }
    }
}

#[test]
fn oracle_reproduces_known_values() {
    assert_eq!(oracle::hochschild_dims(&oracle::field(), 3), vec![1, 0, 0, 0]);
    assert_eq!(oracle::hochschild_dims(&oracle::truncated_polynomial(2), 3), vec![2, 1, 1, 1]);
    assert_eq!(oracle::hochschild_dims(&oracle::split_pair(), 3), vec![2, 0, 0, 0]);
    assert_eq!(oracle::hochschild_dims(&oracle::upper_triangular(), 3), vec![1, 0, 0, 0]);
}

#[test]
fn one_object_categories_match_the_oracle() {
    let algebras = [
        ("K", oracle::field()),
        ("D", oracle::truncated_polynomial(2)),
        ("T3", oracle::truncated_polynomial(3)),
        ("S", oracle::split_pair()),
        ("U", oracle::upper_triangular()),
    ];
    for (name, a) in algebras {
        let top = if a.dim <= 2 { 3 } else { 2 };
        assert_eq!(engine_dims(from_algebra(name, &a), top), oracle::hochschild_dims(&a, top as usize), "{name}");
    }
}

#[test]
fn two_objects_match_their_algebra() {
    // the category with two objects and only identities has the algebra k × k
    assert_eq!(engine_dims(k1_k1(Field::Rational), 3), oracle::hochschild_dims(&oracle::split_pair(), 3));
}
