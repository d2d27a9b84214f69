//! Deformations induced on composites: functor composites, whiskerings,
//! vertical composites and pasting composites along a sequentialization.

use std::sync::Arc;

use crate::computad::Sequentialization;
use crate::hochschild::{compose_cached, CochainSpace};
use crate::lincat::NatTransf;

use super::{tabulate_orders, DeformError, DiagramDeformation, FunctorDeformation, NatDeformation};

/// `F̂;Ĝ` with `(F;G)^{(i)} = Σ_{j+k=i} G^{(j)} ∘ F^{(k)}`.
pub fn compose_functor_defs(f: &FunctorDeformation, g: &FunctorDeformation) -> Result<FunctorDeformation, DeformError> {
    if !f.tgt().same_as(g.src()) {
        return Err(DeformError::Mismatch(format!(
            "{} lands in a different deformation than {} starts from",
            f.functor().name(),
            g.functor().name()
        )));
    }
    let fg = compose_cached(f.functor(), g.functor());
    let ff = f.functor();
    let space = CochainSpace::new(&fg, &fg, 1);
    let terms = tabulate_orders(&space, f.order(), |o, idx| {
        let a = f.src().basis_series(o[0], o[1], idx[0]);
        g.apply(ff.obj(o[0]), ff.obj(o[1]), &f.apply(o[0], o[1], &a))
    });
    FunctorDeformation::new(fg, f.src().clone(), g.tgt().clone(), terms)
}

/// `K̂;σ̂` with components `σ̂_{K(x)}`.
pub fn whisker_left_def(k: &FunctorDeformation, s: &NatDeformation) -> Result<NatDeformation, DeformError> {
    let src = compose_functor_defs(k, s.src())?;
    let tgt = compose_functor_defs(k, s.tgt())?;
    let kf = k.functor();
    let comps = (0..kf.src().n_objects()).map(|x| s.nat().component(kf.obj(x)).to_vec()).collect();
    let nat = Arc::new(NatTransf::new(format!("{}_{}", s.nat().name(), kf.name()), src.functor().clone(), tgt.functor().clone(), comps)?);
    let space = CochainSpace::new(src.functor(), tgt.functor(), 0);
    let terms = tabulate_orders(&space, s.order(), |o, _| s.component(kf.obj(o[0])));
    NatDeformation::new(nat, src, tgt, terms)
}

/// `σ̂;Ĥ` with `(σH)^{(i)}_x = Σ_{j+k=i} H^{(j)}(σ^{(k)}_x)`.
pub fn whisker_right_def(s: &NatDeformation, h: &FunctorDeformation) -> Result<NatDeformation, DeformError> {
    let src = compose_functor_defs(s.src(), h)?;
    let tgt = compose_functor_defs(s.tgt(), h)?;
    let (f, g) = (s.nat().src(), s.nat().tgt());
    let hf = h.functor();
    let comps = (0..f.src().n_objects())
        .map(|x| hf.apply(f.obj(x), g.obj(x), s.nat().component(x)))
        .collect();
    let nat = Arc::new(NatTransf::new(format!("{}({})", hf.name(), s.nat().name()), src.functor().clone(), tgt.functor().clone(), comps)?);
    let space = CochainSpace::new(src.functor(), tgt.functor(), 0);
    let terms = tabulate_orders(&space, s.order(), |o, _| {
        let x = o[0];
        h.apply(f.obj(x), g.obj(x), &s.component(x))
    });
    NatDeformation::new(nat, src, tgt, terms)
}

/// `σ̂·τ̂` with `(στ)^{(i)} = Σ_{j+k+l=i} ν^{(k)}(σ^{(j)}, τ^{(l)})`.
pub fn vertical_def(s: &NatDeformation, t: &NatDeformation) -> Result<NatDeformation, DeformError> {
    if !s.tgt().same_as(t.src()) {
        return Err(DeformError::Mismatch(format!(
            "target of {} differs from the source of {}",
            s.nat().name(),
            t.nat().name()
        )));
    }
    let nat = Arc::new(s.nat().then(t.nat())?);
    let (f, g, h) = (s.nat().src(), s.nat().tgt(), t.nat().tgt());
    let b = s.src().tgt();
    let space = CochainSpace::new(f, h, 0);
    let terms = tabulate_orders(&space, s.order(), |o, _| {
        let x = o[0];
        b.compose((f.obj(x), g.obj(x), h.obj(x)), &s.component(x), &t.component(x))
    });
    NatDeformation::new(nat, s.src().clone(), t.tgt().clone(), terms)
}

/// The identity of `F̂`, whose components are the deformed identities
/// `ι̂_{F(x)}` of the target.
pub fn identity_nat_def(f: &FunctorDeformation) -> Result<NatDeformation, DeformError> {
    let nat = Arc::new(NatTransf::identity(f.functor().clone()));
    let space = CochainSpace::new(f.functor(), f.functor(), 0);
    let terms = tabulate_orders(&space, f.order(), |o, _| f.tgt().unit(f.functor().obj(o[0])));
    NatDeformation::new(nat, f.clone(), f.clone(), terms)
}

/// The deformation induced on a pasting composite, fired step by step:
/// each face is whiskered by the deformations of its prefix and suffix
/// paths and the results are composed vertically from the left.
pub fn induce_scheme(dd: &DiagramDeformation, seq: &Sequentialization) -> Result<NatDeformation, DeformError> {
    let mut acc: Option<NatDeformation> = None;
    for step in &seq.steps {
        let mut w = dd.cell(step.cell)?;
        if !step.prefix.is_empty() {
            w = whisker_left_def(&dd.path(&step.prefix)?, &w)?;
        }
        if !step.suffix.is_empty() {
            w = whisker_right_def(&w, &dd.path(&step.suffix)?)?;
        }
        acc = Some(match acc {
            None => w,
            Some(a) => vertical_def(&a, &w)?,
        });
    }
    match acc {
        Some(a) => Ok(a),
        None => identity_nat_def(&dd.path(&seq.dom)?),
    }
}
