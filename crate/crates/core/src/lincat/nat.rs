use std::sync::Arc;

use crate::exactlinalg::Scalar;
use crate::report::Report;

use super::{same_category, same_functor, LinFunctor, LincatError};

/// A natural transformation `σ: F ⇒ G`, one component `σ_x: F(x) → G(x)` per
/// object of the common source.
#[derive(Clone, Debug)]
pub struct NatTransf {
    name: String,
    src: Arc<LinFunctor>,
    tgt: Arc<LinFunctor>,
    components: Vec<Vec<Scalar>>,
}

impl PartialEq for NatTransf {
    fn eq(&self, other: &Self) -> bool {
        same_functor(&self.src, &other.src) && same_functor(&self.tgt, &other.tgt) && self.components == other.components
    }
}

impl Eq for NatTransf {}

/// Which side a functor is whiskered on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `σ_K`: precompose with `K`, components `σ_{K(x)}`.
    Pre,
    /// `K(σ)`: postcompose with `K`, components `K(σ_x)`.
    Post,
}

impl NatTransf {
    pub fn new(
        name: impl Into<String>,
        src: Arc<LinFunctor>,
        tgt: Arc<LinFunctor>,
        components: Vec<Vec<Scalar>>,
    ) -> Result<NatTransf, LincatError> {
        if !same_category(src.src(), tgt.src()) || !same_category(src.tgt(), tgt.tgt()) {
            return Err(LincatError::Boundary(format!("{} and {} are not parallel", src.name(), tgt.name())));
        }
        let a = src.src();
        if components.len() != a.n_objects() {
            return Err(LincatError::MissingComponent(format!(
                "{} components for {} objects",
                components.len(),
                a.n_objects()
            )));
        }
        for (x, c) in components.iter().enumerate() {
            let d = src.tgt().hom_dim(src.obj(x), tgt.obj(x));
            if c.len() != d {
                return Err(LincatError::Shape(format!(
                    "component at {} has length {}, expected {d}",
                    a.object_name(x),
                    c.len()
                )));
            }
        }
        Ok(NatTransf { name: name.into(), src, tgt, components })
    }

    pub fn identity(f: Arc<LinFunctor>) -> NatTransf {
        let b = f.tgt().clone();
        let components = (0..f.src().n_objects()).map(|x| b.identity_vec(f.obj(x))).collect();
        NatTransf { name: format!("1_{}", f.name()), src: f.clone(), tgt: f, components }
    }

    pub fn zero(src: Arc<LinFunctor>, tgt: Arc<LinFunctor>) -> Result<NatTransf, LincatError> {
        let b = src.tgt().clone();
        let comps = (0..src.src().n_objects()).map(|x| b.zero_vec(src.obj(x), tgt.obj(x))).collect();
        NatTransf::new("0", src, tgt, comps)
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn src(&self) -> &Arc<LinFunctor> {
        &self.src
    }
    pub fn tgt(&self) -> &Arc<LinFunctor> {
        &self.tgt
    }
    pub fn component(&self, x: usize) -> &[Scalar] {
        &self.components[x]
    }
    pub fn components(&self) -> &[Vec<Scalar>] {
        &self.components
    }

    pub fn renamed(&self, name: impl Into<String>) -> NatTransf {
        NatTransf { name: name.into(), ..self.clone() }
    }

    /// Checks `F(f);σ_y = σ_x;G(f)` on every basis arrow `f: x → y`.
    pub fn validate(&self) -> Report {
        let mut rep = Report::new();
        let (f, g) = (&self.src, &self.tgt);
        let (a, b) = (f.src(), f.tgt());
        for x in 0..a.n_objects() {
            for y in 0..a.n_objects() {
                for i in 0..a.hom_dim(x, y) {
                    let lhs = b.compose(f.obj(x), f.obj(y), g.obj(y), &f.apply_basis(x, y, i), &self.components[y]);
                    let rhs = b.compose(f.obj(x), g.obj(x), g.obj(y), &self.components[x], &g.apply_basis(x, y, i));
                    if lhs != rhs {
                        rep.push(format!(
                            "{} is not natural at {}: {} vs {}",
                            self.name,
                            a.basis(x, y)[i],
                            b.describe(f.obj(x), g.obj(y), &lhs),
                            b.describe(f.obj(x), g.obj(y), &rhs)
                        ));
                    }
                }
            }
        }
        rep
    }

    /// Vertical composite `σ;τ` with components `σ_x;τ_x`.
    pub fn then(&self, next: &NatTransf) -> Result<NatTransf, LincatError> {
        if !same_functor(&self.tgt, &next.src) {
            return Err(LincatError::Boundary(format!(
                "target {} of {} differs from source {} of {}",
                self.tgt.name(),
                self.name,
                next.src.name(),
                next.name
            )));
        }
        let b = self.src.tgt();
        let comps = (0..self.components.len())
            .map(|x| {
                b.compose(self.src.obj(x), self.tgt.obj(x), next.tgt.obj(x), &self.components[x], &next.components[x])
            })
            .collect();
        Ok(NatTransf {
            name: format!("{};{}", self.name, next.name),
            src: self.src.clone(),
            tgt: next.tgt.clone(),
            components: comps,
        })
    }

    /// Whiskers by a functor on the given side.
    pub fn whisker(&self, side: Side, k: &Arc<LinFunctor>) -> Result<NatTransf, LincatError> {
        match side {
            Side::Pre => {
                let src = Arc::new(k.then(&self.src)?);
                let tgt = Arc::new(k.then(&self.tgt)?);
                let comps = (0..k.src().n_objects()).map(|x| self.components[k.obj(x)].clone()).collect();
                Ok(NatTransf { name: format!("{}_{}", self.name, k.name()), src, tgt, components: comps })
            }
            Side::Post => {
                let src = Arc::new(self.src.then(k)?);
                let tgt = Arc::new(self.tgt.then(k)?);
                let comps = (0..self.components.len())
                    .map(|x| k.apply(self.src.obj(x), self.tgt.obj(x), &self.components[x]))
                    .collect();
                Ok(NatTransf { name: format!("{}({})", k.name(), self.name), src, tgt, components: comps })
            }
        }
    }
}

pub fn vertical_compose_nats(s: &NatTransf, t: &NatTransf) -> Result<NatTransf, LincatError> {
    s.then(t)
}

pub fn whisker(side: Side, s: &NatTransf, k: &Arc<LinFunctor>) -> Result<NatTransf, LincatError> {
    s.whisker(side, k)
}
