use std::sync::Arc;

use crate::exactlinalg::{add_scaled_vec, is_zero_vec, Field, Scalar};
use crate::hochschild::{brace, coboundary, Arg, Cochain, CochainSpace};
use crate::lincat::{same_category, LinCategory};
use crate::report::Report;

use super::{basis_vec, constant, note_residual, recast_terms, sub_series, tabulate_orders, zero_terms, DeformError, Series};

/// `μ = Σ μ^{(i)} ε^i` and `ι = Σ ι^{(i)} ε^i` with `μ^{(0)}` the composition
/// of `base` and `ι^{(0)}` its identities.
#[derive(Clone, Debug)]
pub struct CategoryDeformation {
    base: Arc<LinCategory>,
    mu: Vec<Cochain>,
    iota: Vec<Cochain>,
}

/// Defects of the defining equations at one order.
#[derive(Clone, Debug)]
pub struct CategoryResidual {
    /// `(a·b)·c − a·(b·c)`, a 3-cochain.
    pub assoc: Cochain,
    /// `ι·f − f`, a 1-cochain.
    pub left_unit: Cochain,
    /// `f·ι − f`, a 1-cochain.
    pub right_unit: Cochain,
}

impl CategoryDeformation {
    pub fn new(base: Arc<LinCategory>, mu: Vec<Cochain>, iota: Vec<Cochain>) -> Result<Self, DeformError> {
        let n = mu.len();
        let mu = recast_terms("composition", mu, n, &CochainSpace::category(&base, 2))?;
        let iota = recast_terms("identities", iota, n, &CochainSpace::category(&base, 0))?;
        Ok(CategoryDeformation { base, mu, iota })
    }

    /// All higher coefficients zero.
    pub fn trivial(base: Arc<LinCategory>, order: usize) -> Self {
        let mu = zero_terms(&CochainSpace::category(&base, 2), order);
        let iota = zero_terms(&CochainSpace::category(&base, 0), order);
        CategoryDeformation { base, mu, iota }
    }

    pub fn base(&self) -> &Arc<LinCategory> {
        &self.base
    }

    pub fn field(&self) -> Field {
        self.base.field()
    }

    pub fn order(&self) -> usize {
        self.mu.len()
    }

    /// `μ^{(i)}` for `1 ≤ i ≤ N`.
    pub fn mu(&self, i: usize) -> Option<&Cochain> {
        i.checked_sub(1).and_then(|k| self.mu.get(k))
    }

    /// `ι^{(i)}` for `1 ≤ i ≤ N`.
    pub fn iota(&self, i: usize) -> Option<&Cochain> {
        i.checked_sub(1).and_then(|k| self.iota.get(k))
    }

    pub fn mu_terms(&self) -> &[Cochain] {
        &self.mu
    }

    pub fn iota_terms(&self) -> &[Cochain] {
        &self.iota
    }

    pub fn truncate(&self, n: usize) -> Self {
        let n = n.min(self.order());
        CategoryDeformation { base: self.base.clone(), mu: self.mu[..n].to_vec(), iota: self.iota[..n].to_vec() }
    }

    /// Appends one order.
    pub fn push_order(&self, mu: Cochain, iota: Cochain) -> Result<Self, DeformError> {
        let mut out = self.clone();
        out.mu.push(mu.recast(&CochainSpace::category(&self.base, 2))?);
        out.iota.push(iota.recast(&CochainSpace::category(&self.base, 0))?);
        Ok(out)
    }

    /// Appends one order with zero coefficients.
    pub fn with_zero_order(&self) -> Self {
        let mut out = self.clone();
        out.mu.push(Cochain::zero(CochainSpace::category(&self.base, 2)));
        out.iota.push(Cochain::zero(CochainSpace::category(&self.base, 0)));
        out
    }

    pub fn has_trivial_units(&self) -> bool {
        self.iota.iter().all(Cochain::is_zero)
    }

    /// Same base and the same coefficients.
    pub fn same_as(&self, other: &CategoryDeformation) -> bool {
        same_category(&self.base, &other.base) && self.mu == other.mu && self.iota == other.iota
    }

    /// `μ^{(k)}(a, b)` for arrows `a: x → y`, `b: y → z`.
    pub fn mu_coeff(&self, k: usize, (x, y, z): (usize, usize, usize), a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        if k == 0 {
            self.base.compose(x, y, z, a, b)
        } else {
            self.mu[k - 1].eval(&[x, y, z], &[Arg::Vec(a), Arg::Vec(b)])
        }
    }

    /// Deformed composite of two series, truncated at the common order.
    pub fn compose(&self, xyz: (usize, usize, usize), a: &Series, b: &Series) -> Series {
        let n = a.len().min(b.len()).min(self.order() + 1);
        let dim = self.base.hom_dim(xyz.0, xyz.2);
        let one = self.field().one();
        let mut out = vec![vec![self.field().zero(); dim]; n];
        for (p, ap) in a.iter().enumerate().take(n) {
            if is_zero_vec(ap) {
                continue;
            }
            for (q, bq) in b.iter().enumerate().take(n - p) {
                if is_zero_vec(bq) {
                    continue;
                }
                for k in 0..n - p - q {
                    let v = self.mu_coeff(k, xyz, ap, bq);
                    add_scaled_vec(&mut out[p + q + k], &one, &v);
                }
            }
        }
        out
    }

    /// The deformed identity `ι̂_x`.
    pub fn unit(&self, x: usize) -> Series {
        let mut s = vec![self.base.identity_vec(x)];
        s.extend(self.iota.iter().map(|c| c.at(&[x], &[])));
        s
    }

    /// A basis arrow as a constant series.
    pub fn basis_series(&self, x: usize, y: usize, i: usize) -> Series {
        constant(self.field(), basis_vec(self.field(), self.base.hom_dim(x, y), i), self.order())
    }

    /// Residuals of orders `1..=N`.
    pub fn residuals(&self) -> Vec<CategoryResidual> {
        let n = self.order();
        let c3 = CochainSpace::category(&self.base, 3);
        let assoc = tabulate_orders(&c3, n, |o, idx| {
            let (a, b, c) =
                (self.basis_series(o[0], o[1], idx[0]), self.basis_series(o[1], o[2], idx[1]), self.basis_series(o[2], o[3], idx[2]));
            let ab = self.compose((o[0], o[1], o[2]), &a, &b);
            let bc = self.compose((o[1], o[2], o[3]), &b, &c);
            let l = self.compose((o[0], o[2], o[3]), &ab, &c);
            let r = self.compose((o[0], o[1], o[3]), &a, &bc);
            sub_series(&l, &r)
        });
        let c1 = CochainSpace::category(&self.base, 1);
        let left = tabulate_orders(&c1, n, |o, idx| {
            let f = self.basis_series(o[0], o[1], idx[0]);
            sub_series(&self.compose((o[0], o[0], o[1]), &self.unit(o[0]), &f), &f)
        });
        let right = tabulate_orders(&c1, n, |o, idx| {
            let f = self.basis_series(o[0], o[1], idx[0]);
            sub_series(&self.compose((o[0], o[1], o[1]), &f, &self.unit(o[1])), &f)
        });
        assoc
            .into_iter()
            .zip(left)
            .zip(right)
            .map(|((assoc, left_unit), right_unit)| CategoryResidual { assoc, left_unit, right_unit })
            .collect()
    }

    /// The Maurer–Cartan residual `δμ^{(n)} − Σ_{0<i<n} μ^{(n−i)}{μ^{(i)}}` of
    /// every order, computed with the brace operations. It equals minus the
    /// associativity residual.
    pub fn mc_residual(&self) -> Vec<Cochain> {
        (1..=self.order())
            .map(|n| {
                let mut r = coboundary(&self.mu[n - 1]);
                for i in 1..n {
                    let b = brace(&self.mu[n - i - 1], &[&self.mu[i - 1]]).expect("composable braces");
                    r = r.sub(&b).expect("same space");
                }
                r
            })
            .collect()
    }

    /// Checks the unit and associativity equations at every order and
    /// cross-checks associativity against the Maurer–Cartan form.
    pub fn validate(&self) -> Report {
        let mut rep = Report::new();
        let mc = self.mc_residual();
        for (n, (r, m)) in self.residuals().iter().zip(&mc).enumerate() {
            let n = n + 1;
            note_residual(&mut rep, "left unit equation", n, &r.left_unit);
            note_residual(&mut rep, "right unit equation", n, &r.right_unit);
            note_residual(&mut rep, "associativity", n, &r.assoc);
            if r.assoc.neg() != *m {
                rep.push(format!("order {n}: Maurer-Cartan form disagrees with the associativity equation"));
            }
        }
        rep
    }

    /// The first order at which the equations fail.
    pub fn first_invalid_order(&self) -> Option<usize> {
        (1..=self.order()).find(|&n| !self.truncate(n).validate().is_ok())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hochschild::coboundary;
    use crate::lincat::examples::{a2, dual};

    const Q: Field = Field::Rational;

    pub(crate) fn dual_family(field: Field) -> CategoryDeformation {
        let base = Arc::new(dual(field));
        let mut mu = Cochain::zero(CochainSpace::category(&base, 2));
        // μ¹(x, x) = 1
        mu.set(&[0, 0, 0], &[1, 1], &[field.one(), field.zero()]).unwrap();
        CategoryDeformation::new(base.clone(), vec![mu], vec![Cochain::zero(CochainSpace::category(&base, 0))]).unwrap()
    }

    #[test]
    fn trivial_is_valid() {
        for base in [dual(Q), a2(Q)] {
            let d = CategoryDeformation::trivial(Arc::new(base), 3);
            assert!(d.validate().is_ok());
            assert!(d.mc_residual().iter().all(Cochain::is_zero));
        }
    }

    #[test]
    fn dual_numbers_deform_to_x_squared_eps() {
        let d = dual_family(Q);
        assert!(d.validate().is_ok(), "{}", d.validate());
        assert!(d.mc_residual()[0].is_zero());
    }

    #[test]
    fn unnormalized_composition_is_reported() {
        let base = Arc::new(dual(Q));
        let mut mu = Cochain::zero(CochainSpace::category(&base, 2));
        // μ¹(1, x) = x
        mu.set(&[0, 0, 0], &[0, 1], &[Q.zero(), Q.one()]).unwrap();
        let d = CategoryDeformation::new(base.clone(), vec![mu], vec![Cochain::zero(CochainSpace::category(&base, 0))])
            .unwrap();
        let rep = d.validate();
        assert!(rep.findings.iter().any(|f| f.contains("left unit equation fails on (x)")), "{rep}");
    }

    #[test]
    fn non_cocycle_residual_is_its_coboundary() {
        let base = Arc::new(dual(Q));
        let mut mu = Cochain::zero(CochainSpace::category(&base, 2));
        // μ¹(1, x) = x is not a cocycle: δμ¹(1, 1, x) = x
        mu.set(&[0, 0, 0], &[0, 1], &[Q.zero(), Q.one()]).unwrap();
        let d = CategoryDeformation::new(base.clone(), vec![mu.clone()], vec![Cochain::zero(CochainSpace::category(&base, 0))])
            .unwrap();
        let mc = d.mc_residual();
        assert_eq!(mc[0], coboundary(&mu));
        assert!(!mc[0].is_zero());
        assert!(!d.validate().is_ok());
        assert_eq!(d.residuals()[0].assoc.neg(), mc[0]);
    }

    #[test]
    fn series_composition_is_associative_for_the_family() {
        let d = dual_family(Field::Prime(5)).with_zero_order();
        // x·x = ε at order one; (x·x)·x has no order-two term
        let x = d.basis_series(0, 0, 1);
        let xx = d.compose((0, 0, 0), &x, &x);
        assert_eq!(xx[1], vec![Field::Prime(5).one(), Field::Prime(5).zero()]);
        let l = d.compose((0, 0, 0), &xx, &x);
        let r = d.compose((0, 0, 0), &x, &xx);
        assert_eq!(l, r);
    }
}
