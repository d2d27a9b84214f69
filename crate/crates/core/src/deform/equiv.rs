//! Equivalences of deformations: direct checks of the defining equations
//! at every order, and first-order witnesses found by linear algebra.

use std::sync::Arc;

use crate::defcomplex::{build_complex, AssembledComplex, ComplexOptions, Subject};
use crate::exactlinalg::{add_scaled_vec, Form, Scalar};
use crate::hochschild::{eval, forms_to_matrix, Arg, Cochain, CochainSpace, Unknown};
use crate::lincat::{same_category, same_functor, LinFunctor};
use crate::report::Report;

use super::{
    note_residual, sub_series, tabulate_orders, CategoryDeformation, DeformError, FunctorDeformation, NatDeformation,
    Series,
};

/// An identity-on-objects functor `Φ̂ = id + Σ Φ^{(i)} ε^i` between two
/// deformations of one category.
#[derive(Clone, Debug, PartialEq)]
pub struct CategoryEquivalence {
    pub phi: Vec<Cochain>,
}

/// `(Γ̂, Δ̂, φ̂)` with `φ̂: F̂₁Δ̂ ⇒ Γ̂F̂₂` and `φ^{(0)} = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct FunctorEquivalence {
    pub gamma: CategoryEquivalence,
    pub delta: CategoryEquivalence,
    pub phi: Vec<Cochain>,
}

/// `(Γ̂, Δ̂, φ̂, ψ̂)` for the source and target functors of a transformation.
#[derive(Clone, Debug, PartialEq)]
pub struct NatEquivalence {
    pub gamma: CategoryEquivalence,
    pub delta: CategoryEquivalence,
    pub phi: Vec<Cochain>,
    pub psi: Vec<Cochain>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum EquivalenceWitness {
    Category(CategoryEquivalence),
    Functor(FunctorEquivalence),
    Nat(NatEquivalence),
}

impl CategoryEquivalence {
    pub fn identity(base: &Arc<crate::lincat::LinCategory>, order: usize) -> Self {
        CategoryEquivalence { phi: vec![Cochain::zero(CochainSpace::category(base, 1)); order] }
    }

    pub fn order(&self) -> usize {
        self.phi.len()
    }

    /// `Φ̂` applied to a series of arrows `x → y`.
    pub fn apply(&self, x: usize, y: usize, s: &Series) -> Series {
        let mut out = s.clone();
        let Some(one) = self.phi.first().map(|p| p.field().one()) else {
            return out;
        };
        for (l, v) in s.iter().enumerate() {
            for (j, p) in self.phi.iter().enumerate() {
                let k = l + j + 1;
                if k >= out.len() {
                    break;
                }
                add_scaled_vec(&mut out[k], &one, &p.eval(&[x, y], &[Arg::Vec(v)]));
            }
        }
        out
    }
}

/// Endomorphism series `1 + Σ φ^{(i)}_x ε^i` of a 0-cochain list.
fn unit_series(cat: &crate::lincat::LinCategory, fx: usize, x: usize, terms: &[Cochain]) -> Series {
    let mut s = vec![cat.identity_vec(fx)];
    s.extend(terms.iter().map(|t| t.at(&[x], &[])));
    s
}

/// Checks catequiv: `Φ̂(ι̂₁) = ι̂₂` and `Φ̂(f·₁g) = Φ̂(f)·₂Φ̂(g)` at every order.
pub fn check_category_equivalence(d1: &CategoryDeformation, d2: &CategoryDeformation, w: &CategoryEquivalence) -> Report {
    let mut rep = Report::new();
    if !same_category(d1.base(), d2.base()) {
        rep.push("the deformations have different bases");
        return rep;
    }
    let n = d1.order();
    if d2.order() != n || w.order() != n {
        rep.push(format!("orders differ: {}, {} and witness {}", n, d2.order(), w.order()));
        return rep;
    }
    let base = d1.base();
    let units = tabulate_orders(&CochainSpace::category(base, 0), n, |o, _| {
        let x = o[0];
        sub_series(&w.apply(x, x, &d1.unit(x)), &d2.unit(x))
    });
    let mult = tabulate_orders(&CochainSpace::category(base, 2), n, |o, idx| {
        let (a, b) = (d1.basis_series(o[0], o[1], idx[0]), d1.basis_series(o[1], o[2], idx[1]));
        let l = w.apply(o[0], o[2], &d1.compose((o[0], o[1], o[2]), &a, &b));
        let r = d2.compose((o[0], o[1], o[2]), &w.apply(o[0], o[1], &a), &w.apply(o[1], o[2], &b));
        sub_series(&l, &r)
    });
    for (k, (u, m)) in units.iter().zip(&mult).enumerate() {
        note_residual(&mut rep, "equivalence preserves identities", k + 1, u);
        note_residual(&mut rep, "equivalence preserves composition", k + 1, m);
    }
    rep
}

/// `Δ̂(F̂₁(f))·φ̂_y − φ̂_x·F̂₂(Γ̂(f))` at orders `1..=N`.
fn functor_square(
    f1: &FunctorDeformation,
    f2: &FunctorDeformation,
    gamma: &CategoryEquivalence,
    delta: &CategoryEquivalence,
    phi: &[Cochain],
) -> Vec<Cochain> {
    let f = f1.functor();
    let b2 = f2.tgt();
    tabulate_orders(&CochainSpace::new(f, f, 1), f1.order(), |o, idx| {
        let (x, y) = (o[0], o[1]);
        let (fx, fy) = (f.obj(x), f.obj(y));
        let a = f1.src().basis_series(x, y, idx[0]);
        let l = b2.compose((fx, fy, fy), &delta.apply(fx, fy, &f1.apply(x, y, &a)), &unit_series(b2.base(), fy, y, phi));
        let r = b2.compose((fx, fx, fy), &unit_series(b2.base(), fx, x, phi), &f2.apply(x, y, &gamma.apply(x, y, &a)));
        sub_series(&l, &r)
    })
}

/// Checks a weak equivalence of functor deformations at every order.
pub fn check_functor_equivalence(f1: &FunctorDeformation, f2: &FunctorDeformation, w: &FunctorEquivalence) -> Report {
    let mut rep = Report::new();
    if !same_functor(f1.functor(), f2.functor()) {
        rep.push("the deformations have different functors");
        return rep;
    }
    if f1.order() != f2.order() || w.phi.len() != f1.order() {
        rep.push("orders differ");
        return rep;
    }
    rep.absorb("source equivalence", check_category_equivalence(f1.src(), f2.src(), &w.gamma));
    rep.absorb("target equivalence", check_category_equivalence(f1.tgt(), f2.tgt(), &w.delta));
    for (k, c) in functor_square(f1, f2, &w.gamma, &w.delta, &w.phi).iter().enumerate() {
        note_residual(&mut rep, "naturality of the comparison", k + 1, c);
    }
    rep
}

/// Checks a weak equivalence of transformation deformations at every order:
/// both functor squares and `Δ̂(σ̂₁)·ψ̂ = φ̂·σ̂₂`.
pub fn check_nat_equivalence(s1: &NatDeformation, s2: &NatDeformation, w: &NatEquivalence) -> Report {
    let mut rep = Report::new();
    if !same_functor(s1.nat().src(), s2.nat().src()) || !same_functor(s1.nat().tgt(), s2.nat().tgt()) {
        rep.push("the deformations have different boundaries");
        return rep;
    }
    let fw = FunctorEquivalence { gamma: w.gamma.clone(), delta: w.delta.clone(), phi: w.phi.clone() };
    rep.absorb("source functor", check_functor_equivalence(s1.src(), s2.src(), &fw));
    if !rep.is_ok() {
        return rep;
    }
    for (k, c) in functor_square(s1.tgt(), s2.tgt(), &w.gamma, &w.delta, &w.psi).iter().enumerate() {
        note_residual(&mut rep, "target functor: naturality of the comparison", k + 1, c);
    }
    let (f, g) = (s1.nat().src(), s1.nat().tgt());
    let b2 = s2.src().tgt();
    let sq = tabulate_orders(&CochainSpace::new(f, g, 0), s1.order(), |o, _| {
        let x = o[0];
        let (fx, gx) = (f.obj(x), g.obj(x));
        let l = b2.compose((fx, gx, gx), &w.delta.apply(fx, gx, &s1.component(x)), &unit_series(b2.base(), gx, x, &w.psi));
        let r = b2.compose((fx, fx, gx), &unit_series(b2.base(), fx, x, &w.phi), &s2.component(x));
        sub_series(&l, &r)
    });
    for (k, c) in sq.iter().enumerate() {
        note_residual(&mut rep, "compatibility with the transformations", k + 1, c);
    }
    rep
}

/// Rows `Φ(1_x)` for the unknown 1-cochain summand at `offset`.
fn unit_forms(space: &Arc<CochainSpace>, offset: usize) -> Vec<Form> {
    let cat = space.src().clone();
    let u = Unknown(space.clone());
    (0..cat.n_objects())
        .flat_map(|x| {
            let id = cat.identity_vec(x);
            eval(&u, &[x, x], &[Arg::Vec(&id)])
        })
        .map(|f| Form(f.0.into_iter().map(|(i, c)| (i + offset, c)).collect()))
        .collect()
}

/// `ι₂^{(1)} − ι₁^{(1)}` listed object by object.
fn unit_gap(d1: &CategoryDeformation, d2: &CategoryDeformation) -> Vec<Scalar> {
    let (a, b) = (d1.iota(1).expect("order one"), d2.iota(1).expect("order one"));
    (0..d1.base().n_objects())
        .flat_map(|x| b.at(&[x], &[]).into_iter().zip(a.at(&[x], &[])).map(|(p, q)| &p - &q).collect::<Vec<_>>())
        .collect()
}

/// `F^*ι`: the 0-cochain `x ↦ ι_{F(x)}`.
fn pulled_units(f: &Arc<LinFunctor>, d: &CategoryDeformation) -> Cochain {
    let iota = d.iota(1).expect("order one");
    Cochain::tabulate(CochainSpace::new(f, f, 0), |o, _| iota.at(&[f.obj(o[0])], &[]))
}

/// Solves `d_p x = rhs` together with unit rows on the given 1-cochain
/// summands of degree `p`.
fn solve_with_units(
    cx: &AssembledComplex,
    p: i64,
    rhs: Vec<Scalar>,
    units: &[(usize, Vec<Scalar>)],
) -> Result<Option<Vec<Cochain>>, DeformError> {
    let d = cx.diff(p)?;
    let offs = cx.offsets(p)?;
    let group = cx.group(p)?;
    let mut forms = Vec::new();
    let mut b = rhs;
    for (i, gap) in units {
        let space = group[*i].space.as_ref().expect("unit summands have degree one");
        forms.extend(unit_forms(space, offs[*i]));
        b.extend(gap.iter().cloned());
    }
    let m = d.vstack(&forms_to_matrix(cx.field(), d.cols(), &forms))?;
    Ok(match m.solve_linear(&b)? {
        None => None,
        Some(x) => Some(cx.split(p, &x)?.into_iter().flatten().collect()),
    })
}

fn join_owned(cx: &AssembledComplex, p: i64, parts: &[Cochain]) -> Result<Vec<Scalar>, DeformError> {
    let g = cx.group(p)?;
    let mut it = parts.iter();
    let refs: Vec<Option<&Cochain>> = g.iter().map(|s| s.space.as_ref().and_then(|_| it.next())).collect();
    Ok(cx.join(p, &refs)?)
}

fn first_order_parts<'a>(a: &'a [Cochain], b: &'a [Cochain]) -> Result<(&'a Cochain, &'a Cochain), DeformError> {
    match (a.first(), b.first()) {
        (Some(x), Some(y)) => Ok((x, y)),
        _ => Err(DeformError::Order("first-order equivalence needs order at least one".into())),
    }
}

fn verify(rep: Report) -> Result<(), DeformError> {
    if rep.is_ok() {
        Ok(())
    } else {
        Err(DeformError::Internal(format!("solved witness fails the direct check:\n{rep}")))
    }
}

fn category_first_order(d1: &CategoryDeformation, d2: &CategoryDeformation) -> Result<Option<CategoryEquivalence>, DeformError> {
    if !same_category(d1.base(), d2.base()) {
        return Err(DeformError::Mismatch("deformations of different categories".into()));
    }
    let (m1, m2) = first_order_parts(d1.mu_terms(), d2.mu_terms())?;
    let (d1, d2) = (d1.truncate(1), d2.truncate(1));
    let cx = build_complex(Subject::Category(d1.base()), &ComplexOptions::default())?;
    let rhs = join_owned(&cx, 2, &[m1.sub(m2)?])?;
    let Some(x) = solve_with_units(&cx, 1, rhs, &[(0, unit_gap(&d1, &d2))])? else {
        return Ok(None);
    };
    let w = CategoryEquivalence { phi: x };
    verify(check_category_equivalence(&d1, &d2, &w))?;
    Ok(Some(w))
}

fn functor_first_order(f1: &FunctorDeformation, f2: &FunctorDeformation) -> Result<Option<FunctorEquivalence>, DeformError> {
    if !same_functor(f1.functor(), f2.functor()) {
        return Err(DeformError::Mismatch("deformations of different functors".into()));
    }
    let (t1, t2) = first_order_parts(f1.terms(), f2.terms())?;
    let (f1, f2) = (f1.truncate(1), f2.truncate(1));
    let cx = build_complex(Subject::Functor(f1.functor()), &ComplexOptions::default())?;
    let mu = |d: &CategoryDeformation| d.mu(1).expect("order one").clone();
    let rhs = join_owned(
        &cx,
        1,
        &[mu(f2.src()).sub(&mu(f1.src()))?, mu(f2.tgt()).sub(&mu(f1.tgt()))?, t2.sub(t1)?],
    )?;
    let units = [(0, unit_gap(f1.src(), f2.src())), (1, unit_gap(f1.tgt(), f2.tgt()))];
    let Some(x) = solve_with_units(&cx, 0, rhs, &units)? else {
        return Ok(None);
    };
    let phi = x[2].recast(&CochainSpace::new(f1.functor(), f1.functor(), 0))?.add(&pulled_units(f1.functor(), f2.tgt()))?;
    let w = FunctorEquivalence {
        gamma: CategoryEquivalence { phi: vec![x[0].clone()] },
        delta: CategoryEquivalence { phi: vec![x[1].clone()] },
        phi: vec![phi],
    };
    verify(check_functor_equivalence(&f1, &f2, &w))?;
    Ok(Some(w))
}

fn nat_first_order(s1: &NatDeformation, s2: &NatDeformation) -> Result<Option<NatEquivalence>, DeformError> {
    if !same_functor(s1.nat().src(), s2.nat().src())
        || !same_functor(s1.nat().tgt(), s2.nat().tgt())
        || s1.nat().components() != s2.nat().components()
    {
        return Err(DeformError::Mismatch("deformations of different transformations".into()));
    }
    let (t1, t2) = first_order_parts(s1.terms(), s2.terms())?;
    let (s1, s2) = (s1.truncate(1), s2.truncate(1));
    let cx = build_complex(Subject::Nat(s1.nat()), &ComplexOptions::default())?;
    let mu = |d: &CategoryDeformation| d.mu(1).expect("order one").clone();
    let term = |f: &FunctorDeformation| f.term(1).expect("order one").clone();
    let rhs = join_owned(
        &cx,
        0,
        &[
            mu(s1.src().src()).sub(&mu(s2.src().src()))?,
            mu(s1.src().tgt()).sub(&mu(s2.src().tgt()))?,
            term(s1.src()).sub(&term(s2.src()))?,
            term(s1.tgt()).sub(&term(s2.tgt()))?,
            t1.sub(t2)?,
        ],
    )?;
    let units = [(0, unit_gap(s1.src().src(), s2.src().src())), (1, unit_gap(s1.src().tgt(), s2.src().tgt()))];
    let Some(x) = solve_with_units(&cx, -1, rhs, &units)? else {
        return Ok(None);
    };
    let (f, g) = (s1.nat().src(), s1.nat().tgt());
    let b2 = s2.src().tgt();
    let phi = x[2].recast(&CochainSpace::new(f, f, 0))?.add(&pulled_units(f, b2))?;
    let psi = x[3].recast(&CochainSpace::new(g, g, 0))?.add(&pulled_units(g, b2))?;
    let w = NatEquivalence {
        gamma: CategoryEquivalence { phi: vec![x[0].clone()] },
        delta: CategoryEquivalence { phi: vec![x[1].clone()] },
        phi: vec![phi],
        psi: vec![psi],
    };
    verify(check_nat_equivalence(&s1, &s2, &w))?;
    Ok(Some(w))
}

/// Deformations whose first-order equivalence can be decided.
pub trait FirstOrderEquivalence {
    fn equivalence_first_order(&self, other: &Self) -> Result<Option<EquivalenceWitness>, DeformError>;
}

impl FirstOrderEquivalence for CategoryDeformation {
    fn equivalence_first_order(&self, other: &Self) -> Result<Option<EquivalenceWitness>, DeformError> {
        Ok(category_first_order(self, other)?.map(EquivalenceWitness::Category))
    }
}

impl FirstOrderEquivalence for FunctorDeformation {
    fn equivalence_first_order(&self, other: &Self) -> Result<Option<EquivalenceWitness>, DeformError> {
        Ok(functor_first_order(self, other)?.map(EquivalenceWitness::Functor))
    }
}

impl FirstOrderEquivalence for NatDeformation {
    fn equivalence_first_order(&self, other: &Self) -> Result<Option<EquivalenceWitness>, DeformError> {
        Ok(nat_first_order(self, other)?.map(EquivalenceWitness::Nat))
    }
}

/// Whether the order-one truncations of `d1` and `d2` are equivalent, with
/// a witness verified against the defining equations.
pub fn check_equivalence_first_order<D: FirstOrderEquivalence>(
    d1: &D,
    d2: &D,
) -> Result<Option<EquivalenceWitness>, DeformError> {
    d1.equivalence_first_order(d2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlinalg::Field;
    use crate::hochschild::{coboundary, identity_functor};
    use crate::lincat::examples::{a2, dual};
    use crate::lincat::NatTransf;

    const Q: Field = Field::Rational;

    fn dual_family(q: Field, c: i64) -> CategoryDeformation {
        let cat = Arc::new(dual(q));
        let mut mu = Cochain::zero(CochainSpace::category(&cat, 2));
        mu.set(&[0, 0, 0], &[1, 1], &[q.from_i64(c), q.zero()]).unwrap();
        CategoryDeformation::new(cat.clone(), vec![mu], vec![Cochain::zero(CochainSpace::category(&cat, 0))]).unwrap()
    }

    fn witness(w: Option<EquivalenceWitness>) -> bool {
        w.is_some()
    }

    #[test]
    fn representative_plus_coboundary_is_equivalent() {
        let d = dual_family(Q, 1);
        let cat = d.base().clone();
        // φ(x) = x
        let mut phi = Cochain::zero(CochainSpace::category(&cat, 1));
        phi.set(&[0, 0], &[1], &[Q.zero(), Q.one()]).unwrap();
        let mu2 = d.mu(1).unwrap().add(&coboundary(&phi)).unwrap();
        let d2 = CategoryDeformation::new(cat.clone(), vec![mu2], d.iota_terms().to_vec()).unwrap();
        assert!(d2.validate().is_ok());
        let w = check_equivalence_first_order(&d, &d2).unwrap();
        let Some(EquivalenceWitness::Category(w)) = w else { panic!("no witness") };
        assert!(check_category_equivalence(&d, &d2, &w).is_ok());
        assert!(!witness(check_equivalence_first_order(&d, &CategoryDeformation::trivial(cat, 1)).unwrap()));
        // rescaling ε is not an equivalence here
        assert!(!witness(check_equivalence_first_order(&d, &dual_family(Q, 2)).unwrap()));
    }

    #[test]
    fn coboundary_functor_deformations_are_trivial() {
        let base = Arc::new(a2(Q));
        let id = identity_functor(&base);
        let mut h = Cochain::zero(CochainSpace::category(&base, 0));
        h.set(&[0], &[], &[Q.one()]).unwrap();
        let d = CategoryDeformation::trivial(base, 1);
        let f1 = FunctorDeformation::new(id.clone(), d.clone(), d.clone(), vec![coboundary(&h)]).unwrap();
        let f2 = FunctorDeformation::trivial(id, d.clone(), d).unwrap();
        let Some(EquivalenceWitness::Functor(w)) = check_equivalence_first_order(&f1, &f2).unwrap() else {
            panic!("no witness")
        };
        assert!(check_functor_equivalence(&f1, &f2, &w).is_ok());
    }

    #[test]
    fn transformation_terms_up_to_equivalence() {
        let cat = Arc::new(dual(Q));
        let id = identity_functor(&cat);
        let x = Arc::new(NatTransf::new("x", id.clone(), id.clone(), vec![vec![Q.zero(), Q.one()]]).unwrap());
        let d = CategoryDeformation::trivial(cat, 1);
        let fd = FunctorDeformation::trivial(id.clone(), d.clone(), d).unwrap();
        let with = |a: i64, b: i64| {
            let mut s = Cochain::zero(CochainSpace::new(&id, &id, 0));
            s.set(&[0], &[], &[Q.from_i64(a), Q.from_i64(b)]).unwrap();
            NatDeformation::new(x.clone(), fd.clone(), fd.clone(), vec![s]).unwrap()
        };
        let Some(EquivalenceWitness::Nat(w)) = check_equivalence_first_order(&with(0, 1), &with(0, 0)).unwrap() else {
            panic!("no witness")
        };
        assert!(check_nat_equivalence(&with(0, 1), &with(0, 0), &w).is_ok());
        assert!(!witness(check_equivalence_first_order(&with(1, 0), &with(0, 0)).unwrap()));
    }

    #[test]
    fn deformed_units_are_matched() {
        // DUAL transported along f ↦ f + ε·x·f against the trivial deformation
        let cat = Arc::new(dual(Q));
        let mut iota = Cochain::zero(CochainSpace::category(&cat, 0));
        iota.set(&[0], &[], &[Q.zero(), Q.one()]).unwrap();
        let mut mu = Cochain::zero(CochainSpace::category(&cat, 2));
        mu.set(&[0, 0, 0], &[0, 0], &[Q.zero(), Q.from_i64(-1)]).unwrap();
        let d = CategoryDeformation::new(cat.clone(), vec![mu], vec![iota]).unwrap();
        let t = CategoryDeformation::trivial(cat, 1);
        assert!(witness(check_equivalence_first_order(&t, &d).unwrap()));
        assert!(witness(check_equivalence_first_order(&d, &t).unwrap()));
    }
}
