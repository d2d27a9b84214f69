//! Replacing a deformation by an equivalent one whose identities are the
//! undeformed identities.
//!
//! With `κ_x` the inverse of `1_x` in the deformed endomorphism algebra
//! (`κ_x·1_x = ι̂_x`), the composition `f ⋆̃ g = (f·κ_y)·g` has unit `1`,
//! and `Φ(g) = 1_x·g` is an isomorphism from the old deformation to it.

use crate::exactlinalg::Scalar;
use crate::hochschild::CochainSpace;

use super::obstruct::Deformable;
use super::{
    constant, tabulate_orders, CategoryDeformation, CategoryEquivalence, DeformError, FunctorDeformation,
    FunctorEquivalence, NatDeformation, NatEquivalence, Series,
};
use super::{check_category_equivalence, check_functor_equivalence, check_nat_equivalence};

fn require_valid<D: Deformable>(d: &D) -> Result<(), DeformError> {
    let rep = d.validate();
    if rep.is_ok() {
        return Ok(());
    }
    Err(DeformError::Invalid { order: d.first_invalid_order().unwrap_or(0), report: rep })
}

/// `κ_x` order by order: `κ^{(n)} = ι^{(n)} − Σ_{i ≥ 1} μ^{(i)}(κ^{(n−i)}, 1_x)`.
fn kappa(d: &CategoryDeformation, x: usize) -> Series {
    let n = d.order();
    let one = constant(d.field(), d.base().identity_vec(x), n);
    let iota = d.unit(x);
    let mut k = constant(d.field(), d.base().identity_vec(x), n);
    for m in 1..=n {
        // with κ^{(m)} still zero the order-m coefficient is the correction sum
        let c = d.compose((x, x, x), &k, &one);
        k[m] = iota[m].iter().zip(&c[m]).map(|(a, b)| a - b).collect::<Vec<Scalar>>();
    }
    k
}

fn check(rep: crate::report::Report, what: &str) -> Result<(), DeformError> {
    if rep.is_ok() {
        Ok(())
    } else {
        Err(DeformError::Internal(format!("{what} normalization fails its own check:\n{rep}")))
    }
}

fn normalize_unchecked(d: &CategoryDeformation) -> Result<(CategoryDeformation, CategoryEquivalence), DeformError> {
    let base = d.base();
    let n = d.order();
    let kappas: Vec<Series> = (0..base.n_objects()).map(|x| kappa(d, x)).collect();
    let mu = tabulate_orders(&CochainSpace::category(base, 2), n, |o, idx| {
        let (x, y, z) = (o[0], o[1], o[2]);
        let fk = d.compose((x, y, y), &d.basis_series(x, y, idx[0]), &kappas[y]);
        d.compose((x, y, z), &fk, &d.basis_series(y, z, idx[1]))
    });
    let phi = tabulate_orders(&CochainSpace::category(base, 1), n, |o, idx| {
        let (x, y) = (o[0], o[1]);
        d.compose((x, x, y), &constant(d.field(), base.identity_vec(x), n), &d.basis_series(x, y, idx[0]))
    });
    let iota = vec![crate::hochschild::Cochain::zero(CochainSpace::category(base, 0)); n];
    Ok((CategoryDeformation::new(base.clone(), mu, iota)?, CategoryEquivalence { phi }))
}

/// An equivalent deformation with `ι^{(i)} = 0`, and the equivalence from
/// `d` to it.
pub fn normalize_category_units(d: &CategoryDeformation) -> Result<(CategoryDeformation, CategoryEquivalence), DeformError> {
    require_valid(d)?;
    let (nd, w) = normalize_unchecked(d)?;
    check(check_category_equivalence(d, &nd, &w), "category")?;
    check(nd.validate(), "category")?;
    Ok((nd, w))
}

/// `F̃(f) = 1·F̂(κ·f)` over the normalized source and target.
fn transport_functor(
    f: &FunctorDeformation,
    src: &CategoryDeformation,
    tgt: &CategoryDeformation,
) -> Result<FunctorDeformation, DeformError> {
    let (a, b) = (f.src(), f.tgt());
    let fun = f.functor();
    let n = f.order();
    let terms = tabulate_orders(&CochainSpace::new(fun, fun, 1), n, |o, idx| {
        let (x, y) = (o[0], o[1]);
        let kf = a.compose((x, x, y), &kappa(a, x), &a.basis_series(x, y, idx[0]));
        let (fx, fy) = (fun.obj(x), fun.obj(y));
        b.compose((fx, fx, fy), &constant(b.field(), b.base().identity_vec(fx), n), &f.apply(x, y, &kf))
    });
    FunctorDeformation::new(fun.clone(), src.clone(), tgt.clone(), terms)
}

pub fn normalize_functor_units(f: &FunctorDeformation) -> Result<(FunctorDeformation, FunctorEquivalence), DeformError> {
    require_valid(f)?;
    let (src, gamma) = normalize_unchecked(f.src())?;
    let (tgt, delta) = normalize_unchecked(f.tgt())?;
    let nf = transport_functor(f, &src, &tgt)?;
    let phi = vec![crate::hochschild::Cochain::zero(CochainSpace::new(f.functor(), f.functor(), 0)); f.order()];
    let w = FunctorEquivalence { gamma, delta, phi };
    check(check_functor_equivalence(f, &nf, &w), "functor")?;
    check(nf.validate(), "functor")?;
    Ok((nf, w))
}

pub fn normalize_nat_units(s: &NatDeformation) -> Result<(NatDeformation, NatEquivalence), DeformError> {
    require_valid(s)?;
    let (src, gamma) = normalize_unchecked(s.src().src())?;
    let (tgt, delta) = normalize_unchecked(s.src().tgt())?;
    let nf = transport_functor(s.src(), &src, &tgt)?;
    let ng = transport_functor(s.tgt(), &src, &tgt)?;
    let (f, g) = (s.nat().src(), s.nat().tgt());
    let b = s.src().tgt();
    let n = s.order();
    let terms = tabulate_orders(&CochainSpace::new(f, g, 0), n, |o, _| {
        let x = o[0];
        b.compose((f.obj(x), f.obj(x), g.obj(x)), &constant(b.field(), b.base().identity_vec(f.obj(x)), n), &s.component(x))
    });
    let ns = NatDeformation::new(s.nat().clone(), nf, ng, terms)?;
    let zero = |h| vec![crate::hochschild::Cochain::zero(CochainSpace::new(h, h, 0)); n];
    let w = NatEquivalence { gamma, delta, phi: zero(f), psi: zero(g) };
    check(check_nat_equivalence(s, &ns, &w), "transformation")?;
    check(ns.validate(), "transformation")?;
    Ok((ns, w))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::exactlinalg::Field;
    use crate::hochschild::{identity_functor, Cochain};
    use crate::lincat::examples::dual;

    /// DUAL transported along `f ↦ f + ε·x·f`: `ι¹ = x`, `μ¹(f, g) = −x·f·g`.
    fn shifted_units(q: Field) -> CategoryDeformation {
        let cat = Arc::new(dual(q));
        let mut iota = Cochain::zero(CochainSpace::category(&cat, 0));
        iota.set(&[0], &[], &[q.zero(), q.one()]).unwrap();
        let mut mu = Cochain::zero(CochainSpace::category(&cat, 2));
        mu.set(&[0, 0, 0], &[0, 0], &[q.zero(), q.from_i64(-1)]).unwrap();
        CategoryDeformation::new(cat, vec![mu], vec![iota]).unwrap()
    }

    #[test]
    fn shifted_units_normalize_to_the_trivial_deformation() {
        let q = Field::Rational;
        let d = shifted_units(q);
        assert!(d.validate().is_ok(), "{}", d.validate());
        let (nd, w) = normalize_category_units(&d).unwrap();
        assert!(nd.has_trivial_units());
        assert!(check_category_equivalence(&d, &nd, &w).is_ok());
        assert!(nd.mu_terms().iter().all(Cochain::is_zero));
    }

    #[test]
    fn functor_and_transformation_follow_their_categories() {
        let q = Field::Rational;
        let d = shifted_units(q);
        let cat = d.base().clone();
        let id = identity_functor(&cat);
        let fd = FunctorDeformation::trivial(id.clone(), d.clone(), d.clone()).unwrap();
        assert!(fd.validate().is_ok(), "{}", fd.validate());
        let (nf, _) = normalize_functor_units(&fd).unwrap();
        assert!(nf.src().has_trivial_units() && nf.tgt().has_trivial_units());
        let s = crate::deform::identity_nat_def(&fd).unwrap();
        assert!(s.validate().is_ok(), "{}", s.validate());
        let (ns, _) = normalize_nat_units(&s).unwrap();
        // the identity transformation becomes the undeformed identity
        assert!(ns.terms().iter().all(Cochain::is_zero));
    }

    #[test]
    fn invalid_input_is_refused() {
        let q = Field::Rational;
        let cat = Arc::new(dual(q));
        let mut iota = Cochain::zero(CochainSpace::category(&cat, 0));
        iota.set(&[0], &[], &[q.zero(), q.one()]).unwrap();
        let mu = Cochain::zero(CochainSpace::category(&cat, 2));
        let d = CategoryDeformation::new(cat, vec![mu], vec![iota]).unwrap();
        assert!(matches!(normalize_category_units(&d), Err(DeformError::Invalid { order: 1, .. })));
    }
}
