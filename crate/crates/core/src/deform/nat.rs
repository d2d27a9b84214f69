use std::sync::Arc;

use crate::exactlinalg::Field;
use crate::hochschild::{Cochain, CochainSpace};
use crate::lincat::{same_functor, NatTransf};
use crate::report::Report;

use super::{note_residual, recast_terms, sub_series, tabulate_orders, zero_terms, DeformError, FunctorDeformation, Series};

/// `σ̂ = Σ σ^{(i)} ε^i` between two functor deformations over the same pair
/// of category deformations.
#[derive(Clone, Debug)]
pub struct NatDeformation {
    nat: Arc<NatTransf>,
    src: FunctorDeformation,
    tgt: FunctorDeformation,
    terms: Vec<Cochain>,
}

impl NatDeformation {
    pub fn new(
        nat: Arc<NatTransf>,
        src: FunctorDeformation,
        tgt: FunctorDeformation,
        terms: Vec<Cochain>,
    ) -> Result<Self, DeformError> {
        if !same_functor(nat.src(), src.functor()) || !same_functor(nat.tgt(), tgt.functor()) {
            return Err(DeformError::Mismatch(format!(
                "{} runs {} ⇒ {}, not {} ⇒ {}",
                nat.name(),
                nat.src().name(),
                nat.tgt().name(),
                src.functor().name(),
                tgt.functor().name()
            )));
        }
        if !src.src().same_as(tgt.src()) || !src.tgt().same_as(tgt.tgt()) {
            return Err(DeformError::Mismatch(format!(
                "{} and {} are deformed over different category deformations",
                src.functor().name(),
                tgt.functor().name()
            )));
        }
        let space = CochainSpace::new(nat.src(), nat.tgt(), 0);
        let terms = recast_terms(nat.name(), terms, src.order(), &space)?;
        Ok(NatDeformation { nat, src, tgt, terms })
    }

    pub fn trivial(nat: Arc<NatTransf>, src: FunctorDeformation, tgt: FunctorDeformation) -> Result<Self, DeformError> {
        let terms = zero_terms(&CochainSpace::new(nat.src(), nat.tgt(), 0), src.order());
        NatDeformation::new(nat, src, tgt, terms)
    }

    pub fn nat(&self) -> &Arc<NatTransf> {
        &self.nat
    }
    pub fn src(&self) -> &FunctorDeformation {
        &self.src
    }
    pub fn tgt(&self) -> &FunctorDeformation {
        &self.tgt
    }
    pub fn terms(&self) -> &[Cochain] {
        &self.terms
    }
    pub fn order(&self) -> usize {
        self.terms.len()
    }
    pub fn field(&self) -> Field {
        self.src.field()
    }

    pub fn truncate(&self, n: usize) -> Self {
        let n = n.min(self.order());
        NatDeformation {
            nat: self.nat.clone(),
            src: self.src.truncate(n),
            tgt: self.tgt.truncate(n),
            terms: self.terms[..n].to_vec(),
        }
    }

    pub fn push_order(&self, src: FunctorDeformation, tgt: FunctorDeformation, term: Cochain) -> Result<Self, DeformError> {
        let mut terms = self.terms.clone();
        terms.push(term);
        NatDeformation::new(self.nat.clone(), src, tgt, terms)
    }

    pub fn same_as(&self, other: &NatDeformation) -> bool {
        same_functor(self.nat.src(), other.nat.src())
            && same_functor(self.nat.tgt(), other.nat.tgt())
            && self.nat.components() == other.nat.components()
            && self.src.same_as(&other.src)
            && self.tgt.same_as(&other.tgt)
            && self.terms == other.terms
    }

    /// `σ̂_x` as a series.
    pub fn component(&self, x: usize) -> Series {
        let mut s = vec![self.nat.component(x).to_vec()];
        s.extend(self.terms.iter().map(|c| c.at(&[x], &[])));
        s
    }

    /// `F̂(f)·σ̂_y − σ̂_x·Ĝ(f)` at orders `1..=N`, as 1-cochains over `(F, G)`.
    pub fn residuals(&self) -> Vec<Cochain> {
        let (f, g) = (self.nat.src(), self.nat.tgt());
        let b = self.src.tgt();
        let c1 = CochainSpace::new(f, g, 1);
        tabulate_orders(&c1, self.order(), |o, idx| {
            let (x, y) = (o[0], o[1]);
            let a = self.src.src().basis_series(x, y, idx[0]);
            let l = b.compose((f.obj(x), f.obj(y), g.obj(y)), &self.src.apply(x, y, &a), &self.component(y));
            let r = b.compose((f.obj(x), g.obj(x), g.obj(y)), &self.component(x), &self.tgt.apply(x, y, &a));
            sub_series(&l, &r)
        })
    }

    pub fn equation_report(&self) -> Report {
        let mut rep = Report::new();
        for (n, r) in self.residuals().iter().enumerate() {
            note_residual(&mut rep, &format!("naturality of {}", self.nat.name()), n + 1, r);
        }
        rep
    }

    /// Categories, both functors and naturality.
    pub fn validate(&self) -> Report {
        let mut rep = Report::new();
        rep.absorb("source", self.src.src().validate());
        rep.absorb("target", self.src.tgt().validate());
        for f in self.src.equation_report().findings.into_iter().chain(self.tgt.equation_report().findings) {
            rep.push(f);
        }
        for f in self.equation_report().findings {
            rep.push(f);
        }
        rep
    }
}
