use std::sync::Arc;

use crate::exactlinalg::{add_scaled_vec, is_zero_vec, Field, Scalar};
use crate::hochschild::{Arg, Cochain, CochainSpace};
use crate::lincat::{same_category, same_functor, LinFunctor};
use crate::report::Report;

use super::{note_residual, recast_terms, sub_series, tabulate_orders, zero_terms, CategoryDeformation, DeformError, Series};

/// `F̂ = Σ F^{(i)} ε^i` between deformations of its source and target, with
/// `F^{(0)}` the functor itself.
#[derive(Clone, Debug)]
pub struct FunctorDeformation {
    functor: Arc<LinFunctor>,
    src: CategoryDeformation,
    tgt: CategoryDeformation,
    terms: Vec<Cochain>,
}

#[derive(Clone, Debug)]
pub struct FunctorResidual {
    /// `F̂(f·g) − F̂(f)·F̂(g)`, a 2-cochain over `F`.
    pub mult: Cochain,
    /// `F̂(ι̂_x) − λ̂_{F(x)}`, a 0-cochain over `F`.
    pub unit: Cochain,
}

impl FunctorDeformation {
    pub fn new(
        functor: Arc<LinFunctor>,
        src: CategoryDeformation,
        tgt: CategoryDeformation,
        terms: Vec<Cochain>,
    ) -> Result<Self, DeformError> {
        if !same_category(functor.src(), src.base()) || !same_category(functor.tgt(), tgt.base()) {
            return Err(DeformError::Mismatch(format!(
                "{} does not run from {} to {}",
                functor.name(),
                src.base().name(),
                tgt.base().name()
            )));
        }
        if src.order() != tgt.order() {
            return Err(DeformError::Order(format!(
                "source has order {} and target has order {}",
                src.order(),
                tgt.order()
            )));
        }
        let space = CochainSpace::new(&functor, &functor, 1);
        let terms = recast_terms(functor.name(), terms, src.order(), &space)?;
        Ok(FunctorDeformation { functor, src, tgt, terms })
    }

    /// All higher coefficients of the functor zero.
    pub fn trivial(functor: Arc<LinFunctor>, src: CategoryDeformation, tgt: CategoryDeformation) -> Result<Self, DeformError> {
        let terms = zero_terms(&CochainSpace::new(&functor, &functor, 1), src.order());
        FunctorDeformation::new(functor, src, tgt, terms)
    }

    pub fn functor(&self) -> &Arc<LinFunctor> {
        &self.functor
    }
    pub fn src(&self) -> &CategoryDeformation {
        &self.src
    }
    pub fn tgt(&self) -> &CategoryDeformation {
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

    /// `F^{(i)}` for `1 ≤ i ≤ N`.
    pub fn term(&self, i: usize) -> Option<&Cochain> {
        i.checked_sub(1).and_then(|k| self.terms.get(k))
    }

    pub fn truncate(&self, n: usize) -> Self {
        let n = n.min(self.order());
        FunctorDeformation {
            functor: self.functor.clone(),
            src: self.src.truncate(n),
            tgt: self.tgt.truncate(n),
            terms: self.terms[..n].to_vec(),
        }
    }

    /// Replaces both category deformations, keeping the functor terms.
    pub fn over(&self, src: CategoryDeformation, tgt: CategoryDeformation) -> Result<Self, DeformError> {
        FunctorDeformation::new(self.functor.clone(), src, tgt, self.terms.clone())
    }

    pub fn push_order(&self, src: CategoryDeformation, tgt: CategoryDeformation, term: Cochain) -> Result<Self, DeformError> {
        let mut terms = self.terms.clone();
        terms.push(term);
        FunctorDeformation::new(self.functor.clone(), src, tgt, terms)
    }

    pub fn same_as(&self, other: &FunctorDeformation) -> bool {
        same_functor(&self.functor, &other.functor)
            && self.src.same_as(&other.src)
            && self.tgt.same_as(&other.tgt)
            && self.terms == other.terms
    }

    /// `F^{(k)}(v)` for `v: x → y`.
    pub fn term_coeff(&self, k: usize, x: usize, y: usize, v: &[Scalar]) -> Vec<Scalar> {
        if k == 0 {
            self.functor.apply(x, y, v)
        } else {
            self.terms[k - 1].eval(&[x, y], &[Arg::Vec(v)])
        }
    }

    /// `F̂` applied to a series of arrows `x → y`.
    pub fn apply(&self, x: usize, y: usize, s: &Series) -> Series {
        let n = s.len().min(self.order() + 1);
        let f = &self.functor;
        let dim = f.tgt().hom_dim(f.obj(x), f.obj(y));
        let one = self.field().one();
        let mut out = vec![vec![self.field().zero(); dim]; n];
        for (l, v) in s.iter().enumerate().take(n) {
            if is_zero_vec(v) {
                continue;
            }
            for k in 0..n - l {
                add_scaled_vec(&mut out[k + l], &one, &self.term_coeff(k, x, y, v));
            }
        }
        out
    }

    /// Residuals of orders `1..=N`.
    pub fn residuals(&self) -> Vec<FunctorResidual> {
        let n = self.order();
        let f = &self.functor;
        let c2 = CochainSpace::new(f, f, 2);
        let mult = tabulate_orders(&c2, n, |o, idx| {
            let a = self.src.basis_series(o[0], o[1], idx[0]);
            let b = self.src.basis_series(o[1], o[2], idx[1]);
            let l = self.apply(o[0], o[2], &self.src.compose((o[0], o[1], o[2]), &a, &b));
            let (fa, fb) = (self.apply(o[0], o[1], &a), self.apply(o[1], o[2], &b));
            let r = self.tgt.compose((f.obj(o[0]), f.obj(o[1]), f.obj(o[2])), &fa, &fb);
            sub_series(&l, &r)
        });
        let c0 = CochainSpace::new(f, f, 0);
        let unit = tabulate_orders(&c0, n, |o, _| {
            let x = o[0];
            sub_series(&self.apply(x, x, &self.src.unit(x)), &self.tgt.unit(f.obj(x)))
        });
        mult.into_iter().zip(unit).map(|(mult, unit)| FunctorResidual { mult, unit }).collect()
    }

    /// The functor equations only.
    pub fn equation_report(&self) -> Report {
        let mut rep = Report::new();
        for (n, r) in self.residuals().iter().enumerate() {
            note_residual(&mut rep, &format!("{} preserves identities", self.functor.name()), n + 1, &r.unit);
            note_residual(&mut rep, &format!("{} preserves composition", self.functor.name()), n + 1, &r.mult);
        }
        rep
    }

    /// Both category deformations and the functor equations.
    pub fn validate(&self) -> Report {
        let mut rep = Report::new();
        rep.absorb("source", self.src.validate());
        rep.absorb("target", self.tgt.validate());
        for f in self.equation_report().findings {
            rep.push(f);
        }
        rep
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hochschild::{coboundary, cup};
    use crate::lincat::examples::a2;

    const Q: Field = Field::Rational;

    #[test]
    fn trivial_and_coboundary_deformations_of_the_identity() {
        let base = Arc::new(a2(Q));
        let id = crate::hochschild::identity_functor(&base);
        let d = CategoryDeformation::trivial(base.clone(), 2);
        let t = FunctorDeformation::trivial(id.clone(), d.clone(), d.clone()).unwrap();
        assert!(t.validate().is_ok());
        // F¹ = a 1-cocycle (a derivation) gives a valid first-order deformation
        let s0 = CochainSpace::category(&base, 0);
        let mut h = Cochain::zero(s0);
        h.set(&[0], &[], &[Q.one()]).unwrap();
        let der = coboundary(&h);
        let d1 = CategoryDeformation::trivial(base.clone(), 1);
        let one = FunctorDeformation::new(id.clone(), d1.clone(), d1, vec![der.clone()]).unwrap();
        assert!(one.validate().is_ok(), "{}", one.validate());
        // its square is what order two must cobound
        let two = FunctorDeformation::new(id, d.clone(), d, vec![der.clone(), Cochain::zero(der.space().clone())]).unwrap();
        let res = two.residuals();
        assert_eq!(res[1].mult, cup(&der, &der).unwrap().neg());
    }
}
