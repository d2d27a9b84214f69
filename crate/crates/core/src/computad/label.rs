use std::sync::Arc;

use crate::hochschild::{compose_cached, identity_functor};
use crate::lincat::{same_category, same_functor, LinCategory, LinFunctor, NatTransf};
use crate::report::Report;

use super::{sequentialize, validate_computad3, Computad3, ComputadError, Path, Scheme, Sequentialization};

/// A labelling of a 3-computad: a category per vertex, a functor per edge
/// and a natural transformation per 2-cell. Each 2-cell label is stored with
/// the composites of its boundary paths as source and target.
#[derive(Clone, Debug)]
pub struct DiagramLabel {
    pub computad: Arc<Computad3>,
    pub categories: Vec<Arc<LinCategory>>,
    pub functors: Vec<Arc<LinFunctor>>,
    pub nats: Vec<Arc<NatTransf>>,
}

/// Left-to-right composite of the labels along a path; the empty path gives
/// the identity functor of its vertex.
pub fn compose_path(label: &DiagramLabel, p: &Path) -> Arc<LinFunctor> {
    p.edges
        .iter()
        .fold(identity_functor(&label.categories[p.start]), |acc, &e| compose_cached(&acc, &label.functors[e]))
}

impl DiagramLabel {
    /// Checks shapes and boundaries, then re-homes every 2-cell label onto
    /// the composites of its boundary paths.
    pub fn new(
        computad: Arc<Computad3>,
        categories: Vec<Arc<LinCategory>>,
        functors: Vec<Arc<LinFunctor>>,
        nats: Vec<Arc<NatTransf>>,
    ) -> Result<DiagramLabel, ComputadError> {
        let k = &computad;
        let structural = validate_computad3(k);
        if !structural.is_ok() {
            return Err(ComputadError::Boundary(structural.to_string()));
        }
        if categories.len() != k.vertices.len() || functors.len() != k.edges.len() || nats.len() != k.cells2.len() {
            return Err(ComputadError::Boundary("label counts do not match the computad".into()));
        }
        for (e, f) in k.edges.iter().zip(&functors) {
            if !same_category(f.src(), &categories[e.src]) || !same_category(f.tgt(), &categories[e.tgt]) {
                return Err(ComputadError::Boundary(format!(
                    "edge {} is labelled {}: {} → {}, but its endpoints carry {} and {}",
                    e.id,
                    f.name(),
                    f.src().name(),
                    f.tgt().name(),
                    categories[e.src].name(),
                    categories[e.tgt].name()
                )));
            }
        }
        let mut label = DiagramLabel { computad: computad.clone(), categories, functors, nats: Vec::new() };
        for (c, s) in k.cells2.iter().zip(nats) {
            let (p, q) = (compose_path(&label, &c.dom), compose_path(&label, &c.cod));
            if !same_functor(&p, s.src()) || !same_functor(&q, s.tgt()) {
                return Err(ComputadError::Boundary(format!(
                    "2-cell {} is labelled {}: {} ⇒ {}, which is not the composite of {} ⇒ {}",
                    c.id,
                    s.name(),
                    s.src().name(),
                    s.tgt().name(),
                    c.dom.describe(k),
                    c.cod.describe(k)
                )));
            }
            label.nats.push(Arc::new(NatTransf::new(s.name(), p, q, s.components().to_vec())?));
        }
        Ok(label)
    }

    pub fn computad(&self) -> &Computad3 {
        &self.computad
    }

    /// Axioms of every label plus the equalities asserted by 3-cells.
    pub fn validate(&self) -> Report {
        let k = &self.computad;
        let mut rep = Report::new();
        for (v, c) in k.vertices.iter().zip(&self.categories) {
            rep.absorb(&format!("vertex {v}"), c.validate());
        }
        for (e, f) in k.edges.iter().zip(&self.functors) {
            rep.absorb(&format!("edge {}", e.id), f.validate());
        }
        for (c, s) in k.cells2.iter().zip(&self.nats) {
            rep.absorb(&format!("2-cell {}", c.id), s.validate());
        }
        if !rep.is_ok() {
            return rep;
        }
        for c in &k.cells3 {
            let (s, t) = (&k.schemes[c.dom], &k.schemes[c.cod]);
            match (compose_2_diagram(self, s), compose_2_diagram(self, t)) {
                (Ok(a), Ok(b)) => {
                    let b_cat = a.src().tgt().clone();
                    for x in 0..a.src().src().n_objects() {
                        if a.component(x) != b.component(x) {
                            let (fx, gx) = (a.src().obj(x), a.tgt().obj(x));
                            rep.push(format!(
                                "3-cell {}: composites differ at {}: {} vs {}",
                                c.id,
                                a.src().src().object_name(x),
                                b_cat.describe(fx, gx, a.component(x)),
                                b_cat.describe(fx, gx, b.component(x))
                            ));
                        }
                    }
                }
                (Err(e), _) | (_, Err(e)) => rep.push(format!("3-cell {}: {e}", c.id)),
            }
        }
        rep
    }
}

/// The whiskered 2-cell of one step, from the composite of the frontier
/// before it to the composite after it.
pub fn whiskered_step(
    label: &DiagramLabel,
    step: &super::Step,
) -> Result<NatTransf, ComputadError> {
    let k = &label.computad;
    let cell = &k.cells2[step.cell];
    let before = step.prefix.concat(&cell.dom).concat(&step.suffix);
    let after = step.prefix.concat(&cell.cod).concat(&step.suffix);
    let (l, r) = (compose_path(label, &step.prefix), compose_path(label, &step.suffix));
    let sigma = &label.nats[step.cell];
    let comps = (0..l.src().n_objects())
        .map(|x| {
            let y = l.obj(x);
            r.apply(sigma.src().obj(y), sigma.tgt().obj(y), sigma.component(y))
        })
        .collect();
    let name = cell.id.clone();
    Ok(NatTransf::new(name, compose_path(label, &before), compose_path(label, &after), comps)?)
}

/// Vertical composite of the whiskered steps of a sequentialization.
pub fn compose_along(label: &DiagramLabel, seq: &Sequentialization) -> Result<NatTransf, ComputadError> {
    let mut acc = NatTransf::identity(compose_path(label, &seq.dom));
    for step in &seq.steps {
        acc = acc.then(&whiskered_step(label, step)?)?;
    }
    Ok(acc)
}

/// The pasting composite of a scheme, along its leftmost sequentialization.
pub fn compose_2_diagram(label: &DiagramLabel, s: &Scheme) -> Result<NatTransf, ComputadError> {
    let seq = sequentialize(&label.computad, s)?;
    Ok(compose_along(label, &seq)?.renamed(s.id.clone()))
}
