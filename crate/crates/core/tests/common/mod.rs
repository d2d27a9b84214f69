//! Generators shared by the integration tests.

#![allow(dead_code)]

use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use pastedef::defcomplex::{build_complex, ComplexOptions, Subject};
use pastedef::deform::{classify_first_order, constant, CategoryDeformation, CategoryEquivalence, Deformable, Series};
use pastedef::exactlinalg::{Field, Scalar};
use pastedef::hochschild::{Cochain, CochainSpace};
use pastedef::lincat::{CategoryBuilder, LinCategory};

pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn scalar(rng: &mut Rng8, field: Field) -> Scalar {
    field.from_i64(rng.gen_range(-3..=3))
}

pub fn nonzero_scalar(rng: &mut Rng8, field: Field) -> Scalar {
    loop {
        let s = scalar(rng, field);
        if !s.is_zero() {
            return s;
        }
    }
}

/// A category with at most three objects and hom spaces of dimension at
/// most two. Every product of two non-identity arrows vanishes except
/// `t;t = a·t` on an optional extra endomorphism `t`, which keeps the table
/// associative while mixing nilpotent and idempotent behaviour.
pub fn random_category(rng: &mut Rng8, field: Field) -> LinCategory {
    let n = rng.gen_range(1..=3);
    let objs: Vec<String> = (0..n).map(|i| format!("o{i}")).collect();
    let mut b = CategoryBuilder::new("R", field);
    for o in &objs {
        b.object(o.clone());
    }
    let mut loops = Vec::new();
    for (x, ox) in objs.iter().enumerate() {
        for (y, oy) in objs.iter().enumerate() {
            let names: Vec<String> = if x == y {
                let mut v = vec![format!("1_{ox}")];
                if rng.gen_bool(0.5) {
                    v.push(format!("t_{ox}"));
                    loops.push(x);
                }
                v
            } else {
                (0..rng.gen_range(0..=2)).map(|i| format!("f{x}{y}_{i}")).collect()
            };
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            b.hom(ox, oy, &refs).unwrap();
        }
        b.identity(ox, &format!("1_{ox}")).unwrap();
    }
    for x in loops {
        let o = objs[x].as_str();
        let t = format!("t_{o}");
        let a = field.from_i64(rng.gen_range(0..=1));
        b.product((o, o, o), &t, &t, &[(t.as_str(), a)]).unwrap();
    }
    let c = b.build().unwrap();
    assert!(c.validate().is_ok(), "generator produced an invalid category: {}", c.validate());
    c
}

/// A one-object category from structure constants; basis element 0 is the
/// identity and `table[i][j]` lists the coefficients of `e_i ; e_j`.
pub fn one_object(name: &str, field: Field, table: &[Vec<Vec<i64>>]) -> LinCategory {
    let d = table.len();
    let names: Vec<String> = (0..d).map(|i| format!("e{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut b = CategoryBuilder::new(name, field);
    b.object("*");
    b.hom("*", "*", &refs).unwrap();
    b.identity("*", "e0").unwrap();
    for i in 1..d {
        for j in 1..d {
            let out: Vec<(&str, Scalar)> =
                (0..d).filter(|&k| table[i][j][k] != 0).map(|k| (refs[k], field.from_i64(table[i][j][k]))).collect();
            if !out.is_empty() {
                b.product(("*", "*", "*"), refs[i], refs[j], &out).unwrap();
            }
        }
    }
    b.build().unwrap()
}

pub fn random_cochain(rng: &mut Rng8, space: Arc<CochainSpace>) -> Cochain {
    let f = space.field();
    let data = (0..space.dim()).map(|_| scalar(rng, f)).collect();
    Cochain::from_data(space, data).unwrap()
}

/// A random cochain vanishing whenever an argument is an identity.
pub fn random_normalized(rng: &mut Rng8, space: Arc<CochainSpace>) -> Cochain {
    let a = space.src().clone();
    let f = space.field();
    let (fun, g) = (space.f().clone(), space.g().clone());
    Cochain::tabulate(space, |objs, idx| {
        let x0 = objs[0];
        let xn = *objs.last().unwrap();
        let dim = a_dim(&fun, &g, x0, xn);
        let hits_identity = objs.windows(2).zip(idx).any(|(w, &i)| w[0] == w[1] && i == a.identity_index(w[0]));
        if hits_identity {
            vec![f.zero(); dim]
        } else {
            (0..dim).map(|_| scalar(rng, f)).collect()
        }
    })
}

fn a_dim(f: &Arc<pastedef::lincat::LinFunctor>, g: &Arc<pastedef::lincat::LinFunctor>, x: usize, y: usize) -> usize {
    f.tgt().hom_dim(f.obj(x), g.obj(y))
}

/// A random valid first-order deformation pushed onto `zero` (an order-0
/// deformation of `subject`): a random combination of class representatives
/// plus a random coboundary, in normalized coordinates.
pub fn random_first_order<D: Deformable>(rng: &mut Rng8, zero: &D, subject: Subject<'_>, opts: &ComplexOptions) -> D {
    let nc = build_complex(subject, opts).unwrap().normalized().unwrap();
    let cl = classify_first_order(subject, opts).unwrap();
    let g = cl.degree;
    let field = nc.field();
    let mut w = vec![field.zero(); nc.dim(g).unwrap()];
    for v in &cl.vectors {
        let c = scalar(rng, field);
        for (a, b) in w.iter_mut().zip(v) {
            *a = &*a + &(&c * b);
        }
    }
    if g > nc.window().0 {
        let r: Vec<Scalar> = (0..nc.dim(g - 1).unwrap()).map(|_| scalar(rng, field)).collect();
        let db = nc.diff(g - 1).unwrap().mul_vec(&r).unwrap();
        for (a, b) in w.iter_mut().zip(&db) {
            *a = &*a + b;
        }
    }
    let parts = nc.split(g, &w).unwrap();
    zero.push_parts(&parts).unwrap()
}

/// `d` transported along `Φ = id + Σ ε^k φ_k`: `μ'(f, g) = Φ(Φ⁻¹f ⋆ Φ⁻¹g)`
/// and `ι' = Φ(ι)`. With `φ_k` not vanishing on identities the result has
/// deformed identities.
pub fn transport(d: &CategoryDeformation, phi: Vec<Cochain>) -> CategoryDeformation {
    let n = d.order();
    let base = d.base().clone();
    let field = d.field();
    let big = CategoryEquivalence { phi };
    let inverse = |x: usize, y: usize, v: Vec<Scalar>| -> Series {
        let mut s = constant(field, v, n);
        for k in 1..=n {
            let r = big.apply(x, y, &s);
            s[k] = s[k].iter().zip(&r[k]).map(|(a, b)| a - b).collect();
        }
        s
    };
    let mu: Vec<Cochain> = (1..=n)
        .map(|k| {
            Cochain::tabulate(CochainSpace::category(&base, 2), |o, idx| {
                let (x, y, z) = (o[0], o[1], o[2]);
                let a = inverse(x, y, base.unit(x, y, idx[0]));
                let b = inverse(y, z, base.unit(y, z, idx[1]));
                big.apply(x, z, &d.compose((x, y, z), &a, &b))[k].clone()
            })
        })
        .collect();
    let iota: Vec<Cochain> = (1..=n)
        .map(|k| {
            Cochain::tabulate(CochainSpace::category(&base, 0), |o, _| big.apply(o[0], o[0], &d.unit(o[0]))[k].clone())
        })
        .collect();
    CategoryDeformation::new(base, mu, iota).unwrap()
}

/// Writes a result line that survives the test harness's output capture.
pub fn report(line: &str) {
    use std::io::Write;
    let _ = writeln!(std::io::stderr(), "{line}");
}
