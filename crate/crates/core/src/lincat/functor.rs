use std::sync::Arc;

use crate::exactlinalg::{Coef, Matrix, Scalar};
use crate::report::Report;

use super::{same_category, Arrow, LinCategory, LincatError};

/// A k-linear functor: an object map plus one matrix per ordered pair of
/// objects, of shape `dim hom(Fx, Fy) × dim hom(x, y)`.
#[derive(Clone, Debug)]
pub struct LinFunctor {
    name: String,
    src: Arc<LinCategory>,
    tgt: Arc<LinCategory>,
    obj_map: Vec<usize>,
    hom_maps: Vec<Matrix>,
}

impl PartialEq for LinFunctor {
    fn eq(&self, other: &Self) -> bool {
        same_category(&self.src, &other.src)
            && same_category(&self.tgt, &other.tgt)
            && self.obj_map == other.obj_map
            && self.hom_maps == other.hom_maps
    }
}

impl Eq for LinFunctor {}

/// Structural equality with a pointer fast path.
pub fn same_functor(a: &Arc<LinFunctor>, b: &Arc<LinFunctor>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl LinFunctor {
    pub fn new(
        name: impl Into<String>,
        src: Arc<LinCategory>,
        tgt: Arc<LinCategory>,
        obj_map: Vec<usize>,
        hom_maps: Vec<Matrix>,
    ) -> Result<LinFunctor, LincatError> {
        let n = src.n_objects();
        if obj_map.len() != n {
            return Err(LincatError::Shape(format!("object map has {} entries, expected {n}", obj_map.len())));
        }
        if obj_map.iter().any(|&y| y >= tgt.n_objects()) {
            return Err(LincatError::IndexOutOfRange("object map target".into()));
        }
        if hom_maps.len() != n * n {
            return Err(LincatError::Shape("hom map count".into()));
        }
        if src.field() != tgt.field() {
            return Err(LincatError::FieldMismatch);
        }
        for x in 0..n {
            for y in 0..n {
                let m = &hom_maps[x * n + y];
                let want = (tgt.hom_dim(obj_map[x], obj_map[y]), src.hom_dim(x, y));
                if (m.rows(), m.cols()) != want {
                    return Err(LincatError::Shape(format!(
                        "matrix for hom({}, {}) is {}x{}, expected {}x{}",
                        src.object_name(x),
                        src.object_name(y),
                        m.rows(),
                        m.cols(),
                        want.0,
                        want.1
                    )));
                }
                if m.field() != src.field() {
                    return Err(LincatError::FieldMismatch);
                }
            }
        }
        Ok(LinFunctor { name: name.into(), src, tgt, obj_map, hom_maps })
    }

    /// Builds a functor from images of basis arrows given as coordinate
    /// vectors. Identities not listed are sent to identities.
    pub fn from_images(
        name: impl Into<String>,
        src: Arc<LinCategory>,
        tgt: Arc<LinCategory>,
        obj_map: Vec<usize>,
        images: impl Fn(usize, usize, usize) -> Option<Vec<Scalar>>,
    ) -> Result<LinFunctor, LincatError> {
        let n = src.n_objects();
        let mut maps = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let (fx, fy) = (obj_map[x], obj_map[y]);
                let mut cols = Vec::new();
                for i in 0..src.hom_dim(x, y) {
                    let col = match images(x, y, i) {
                        Some(v) => v,
                        None if x == y && i == src.identity_index(x) => tgt.identity_vec(fx),
                        None => tgt.zero_vec(fx, fy),
                    };
                    if col.len() != tgt.hom_dim(fx, fy) {
                        return Err(LincatError::Shape(format!(
                            "image of {} has length {}",
                            src.basis(x, y)[i],
                            col.len()
                        )));
                    }
                    cols.push(col);
                }
                maps.push(Matrix::from_columns(src.field(), tgt.hom_dim(fx, fy), &cols));
            }
        }
        LinFunctor::new(name, src, tgt, obj_map, maps)
    }

    pub fn identity(cat: Arc<LinCategory>) -> LinFunctor {
        let n = cat.n_objects();
        let mut maps = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                maps.push(Matrix::identity(cat.field(), cat.hom_dim(x, y)));
            }
        }
        LinFunctor {
            name: format!("id:{}", cat.name()),
            src: cat.clone(),
            tgt: cat,
            obj_map: (0..n).collect(),
            hom_maps: maps,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn src(&self) -> &Arc<LinCategory> {
        &self.src
    }
    pub fn tgt(&self) -> &Arc<LinCategory> {
        &self.tgt
    }
    #[inline]
    pub fn obj(&self, x: usize) -> usize {
        self.obj_map[x]
    }
    pub fn obj_map(&self) -> &[usize] {
        &self.obj_map
    }
    pub fn hom_map(&self, x: usize, y: usize) -> &Matrix {
        &self.hom_maps[x * self.src.n_objects() + y]
    }

    pub fn renamed(&self, name: impl Into<String>) -> LinFunctor {
        LinFunctor { name: name.into(), ..self.clone() }
    }

    pub fn is_identity(&self) -> bool {
        same_category(&self.src, &self.tgt)
            && self.obj_map.iter().enumerate().all(|(i, &j)| i == j)
            && self.hom_maps.iter().all(|m| *m == Matrix::identity(m.field(), m.rows()))
    }

    /// `F(v)` for `v ∈ hom(x, y)`.
    pub fn apply(&self, x: usize, y: usize, v: &[Scalar]) -> Vec<Scalar> {
        self.apply_v(x, y, v)
    }

    pub fn apply_v<V: Coef>(&self, x: usize, y: usize, v: &[V]) -> Vec<V> {
        let m = self.hom_map(x, y);
        let field = self.src.field();
        let mut out = vec![V::zero(field); m.rows()];
        for (j, vj) in v.iter().enumerate() {
            if vj.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let c = m.get(i, j);
                if !c.is_zero() {
                    o.add_scaled(c, vj);
                }
            }
        }
        out
    }

    /// Image of the basis arrow `e_i: x → y`.
    pub fn apply_basis(&self, x: usize, y: usize, i: usize) -> Vec<Scalar> {
        self.hom_map(x, y).column(i)
    }

    pub fn apply_arrow(&self, f: &Arrow) -> Arrow {
        Arrow { src: self.obj(f.src), tgt: self.obj(f.tgt), coeffs: self.apply(f.src, f.tgt, &f.coeffs) }
    }

    /// Checks preservation of identities and of all basis composites.
    pub fn validate(&self) -> Report {
        let mut rep = Report::new();
        let (a, b) = (&self.src, &self.tgt);
        let n = a.n_objects();
        for x in 0..n {
            let fx = self.obj(x);
            if self.apply(x, x, &a.identity_vec(x)) != b.identity_vec(fx) {
                rep.push(format!("{} does not preserve the identity of {}", self.name, a.object_name(x)));
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for i in 0..a.hom_dim(x, y) {
                        for j in 0..a.hom_dim(y, z) {
                            let fg = self.apply(x, z, a.product(x, y, z, i, j));
                            let (fx, fy, fz) = (self.obj(x), self.obj(y), self.obj(z));
                            let ff = b.compose(fx, fy, fz, &self.apply_basis(x, y, i), &self.apply_basis(y, z, j));
                            if fg != ff {
                                rep.push(format!(
                                    "{} is not multiplicative on {};{}: {} vs {}",
                                    self.name,
                                    a.basis(x, y)[i],
                                    a.basis(y, z)[j],
                                    b.describe(fx, fz, &fg),
                                    b.describe(fx, fz, &ff)
                                ));
                            }
                        }
                    }
                }
            }
        }
        rep
    }

    /// Diagrammatic composite: `self` first, then `next`.
    pub fn then(&self, next: &LinFunctor) -> Result<LinFunctor, LincatError> {
        if !same_category(&self.tgt, &next.src) {
            return Err(LincatError::Boundary(format!(
                "cannot compose {}: {} -> {} with {}: {} -> {}",
                self.name,
                self.src.name(),
                self.tgt.name(),
                next.name,
                next.src.name(),
                next.tgt.name()
            )));
        }
        let n = self.src.n_objects();
        let mut maps = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let m = next.hom_map(self.obj(x), self.obj(y)).mul(self.hom_map(x, y)).expect("shapes agree");
                maps.push(m);
            }
        }
        Ok(LinFunctor {
            name: format!("{};{}", self.name, next.name),
            src: self.src.clone(),
            tgt: next.tgt.clone(),
            obj_map: self.obj_map.iter().map(|&y| next.obj(y)).collect(),
            hom_maps: maps,
        })
    }
}

/// `compose_functors(F, G)` is "F then G", i.e. `G∘F`.
pub fn compose_functors(f: &LinFunctor, g: &LinFunctor) -> Result<LinFunctor, LincatError> {
    f.then(g)
}
