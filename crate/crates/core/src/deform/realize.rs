//! The deformed category itself, over `k[ε]/ε^{N+1}`, for spot checks.

use crate::exactlinalg::Scalar;
use crate::report::Report;

use super::{basis_vec, sub_series, series_is_zero, CategoryDeformation, DeformError, Series};

/// Objects of the base; arrows `x → y` are tuples `(f_0, …, f_N)` of
/// coordinate vectors in `hom(x, y)`, read as `Σ f_j ε^j`.
#[derive(Clone, Debug)]
pub struct RealizedCategory {
    d: CategoryDeformation,
}

pub fn realize(d: &CategoryDeformation) -> RealizedCategory {
    RealizedCategory { d: d.clone() }
}

impl RealizedCategory {
    pub fn deformation(&self) -> &CategoryDeformation {
        &self.d
    }

    pub fn n_objects(&self) -> usize {
        self.d.base().n_objects()
    }

    /// Dimension over `k` of `hom(x, y) ⊗ k[ε]/ε^{N+1}`.
    pub fn hom_dim(&self, x: usize, y: usize) -> usize {
        self.d.base().hom_dim(x, y) * (self.d.order() + 1)
    }

    fn check(&self, x: usize, y: usize, a: &Series) -> Result<(), DeformError> {
        let dim = self.d.base().hom_dim(x, y);
        if a.len() != self.d.order() + 1 || a.iter().any(|v| v.len() != dim) {
            return Err(DeformError::Mismatch(format!(
                "an arrow {} → {} needs {} vectors of length {dim}",
                self.d.base().object_name(x),
                self.d.base().object_name(y),
                self.d.order() + 1
            )));
        }
        Ok(())
    }

    pub fn compose(&self, (x, y, z): (usize, usize, usize), a: &Series, b: &Series) -> Result<Series, DeformError> {
        self.check(x, y, a)?;
        self.check(y, z, b)?;
        Ok(self.d.compose((x, y, z), a, b))
    }

    pub fn identity(&self, x: usize) -> Series {
        self.d.unit(x)
    }

    /// `e_i ε^j`.
    pub fn basis_arrow(&self, x: usize, y: usize, i: usize, j: usize) -> Series {
        let f = self.d.field();
        let dim = self.d.base().hom_dim(x, y);
        (0..=self.d.order())
            .map(|k| if k == j { basis_vec(f, dim, i) } else { vec![f.zero(); dim] })
            .collect()
    }

    /// Flat coordinates, order-major.
    pub fn flatten(a: &Series) -> Vec<Scalar> {
        a.iter().flatten().cloned().collect()
    }

    /// Associativity and unit laws on every triple of basis arrows of the
    /// base (ε-linearity covers the rest).
    pub fn check_laws(&self) -> Report {
        let mut rep = Report::new();
        let base = self.d.base();
        let n = base.n_objects();
        for x in 0..n {
            for y in 0..n {
                for i in 0..base.hom_dim(x, y) {
                    let f = self.d.basis_series(x, y, i);
                    let l = self.d.compose((x, x, y), &self.identity(x), &f);
                    let r = self.d.compose((x, y, y), &f, &self.identity(y));
                    if !series_is_zero(&sub_series(&l, &f)) || !series_is_zero(&sub_series(&r, &f)) {
                        rep.push(format!("identities fail on {}", base.basis(x, y)[i]));
                    }
                    for z in 0..n {
                        for j in 0..base.hom_dim(y, z) {
                            let g = self.d.basis_series(y, z, j);
                            let fg = self.d.compose((x, y, z), &f, &g);
                            for w in 0..n {
                                for k in 0..base.hom_dim(z, w) {
                                    let h = self.d.basis_series(z, w, k);
                                    let a = self.d.compose((x, z, w), &fg, &h);
                                    let b = self.d.compose((x, y, w), &f, &self.d.compose((y, z, w), &g, &h));
                                    if !series_is_zero(&sub_series(&a, &b)) {
                                        rep.push(format!(
                                            "associativity fails on ({}, {}, {})",
                                            base.basis(x, y)[i],
                                            base.basis(y, z)[j],
                                            base.basis(z, w)[k]
                                        ));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        rep
    }
}
