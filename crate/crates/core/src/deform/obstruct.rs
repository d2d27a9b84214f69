//! Obstructions, order-by-order extension and first-order classification,
//! all run through the assembled deformation complexes.

use crate::defcomplex::{build_complex, AssembledComplex, CellRef, ComplexKind, ComplexOptions, Subject};
use crate::exactlinalg::{is_zero_vec, Scalar};
use crate::hochschild::{Cochain, CochainSpace};
use crate::report::Report;

use super::{CategoryDeformation, DeformError, DiagramDeformation, FunctorDeformation, NatDeformation};

/// What the obstruction machinery needs from a deformation.
///
/// The residual of the top order is linear in the top-order coefficients:
/// with those coefficients set to the parts of a vector `x` one degree below
/// the obstruction degree, each summand changes by `−c·(dx)` where `c` is
/// [`Deformable::coefficient`] of that summand. The obstruction is therefore
/// `c·R(0)` summand by summand, and `dx = ω` kills the residual.
pub trait Deformable: Clone {
    fn kind(&self) -> ComplexKind;
    fn order(&self) -> usize;
    fn truncate(&self, n: usize) -> Self;
    fn with_zero_order(&self) -> Self;
    fn validate(&self) -> Report;
    fn has_trivial_units(&self) -> bool;
    /// The complex of the undeformed subject.
    fn complex(&self, opts: &ComplexOptions) -> Result<AssembledComplex, DeformError>;
    /// Residual of the top order, one cochain per summand of the
    /// obstruction group.
    fn top_residual(&self) -> Result<Vec<Option<Cochain>>, DeformError>;
    /// Appends one order whose coefficients are the parts of a vector one
    /// degree below the obstruction degree; identities stay undeformed.
    fn push_parts(&self, parts: &[Option<Cochain>]) -> Result<Self, DeformError>;

    /// Degree of the obstruction group.
    fn obstruction_degree(&self) -> i64 {
        obstruction_degree(self.kind())
    }

    fn coefficient(&self, cell: CellRef) -> i64 {
        coefficient(self.kind(), cell)
    }

    /// The first order at which the equations fail.
    fn first_invalid_order(&self) -> Option<usize> {
        (1..=self.order()).find(|&n| !self.truncate(n).validate().is_ok())
    }
}

fn obstruction_degree(kind: ComplexKind) -> i64 {
    match kind {
        ComplexKind::Category => 3,
        ComplexKind::Functor | ComplexKind::Pair => 2,
        ComplexKind::Nat | ComplexKind::Identity3 => 1,
        ComplexKind::Diagram => 0,
    }
}

/// Sign relating the residual of a summand to the differential.
fn coefficient(kind: ComplexKind, cell: CellRef) -> i64 {
    use CellRef::*;
    match (kind, cell) {
        (ComplexKind::Category, _) => 1,
        (ComplexKind::Functor, Vertex(_)) => -1,
        (ComplexKind::Functor, _) => 1,
        (ComplexKind::Nat, Vertex(_)) => 1,
        (ComplexKind::Nat, _) => -1,
        (ComplexKind::Diagram, Vertex(_)) => -1,
        (ComplexKind::Diagram, _) => 1,
        _ => 1,
    }
}

fn part<'a>(parts: &'a [Option<Cochain>], i: usize, what: &str) -> Result<&'a Cochain, DeformError> {
    parts
        .get(i)
        .and_then(Option::as_ref)
        .ok_or_else(|| DeformError::Mismatch(format!("missing {what} coefficient")))
}

fn zero_units(base: &CategoryDeformation) -> Cochain {
    Cochain::zero(CochainSpace::category(base.base(), 0))
}

impl Deformable for CategoryDeformation {
    fn kind(&self) -> ComplexKind {
        ComplexKind::Category
    }
    fn order(&self) -> usize {
        CategoryDeformation::order(self)
    }
    fn truncate(&self, n: usize) -> Self {
        CategoryDeformation::truncate(self, n)
    }
    fn with_zero_order(&self) -> Self {
        CategoryDeformation::with_zero_order(self)
    }
    fn validate(&self) -> Report {
        CategoryDeformation::validate(self)
    }
    fn has_trivial_units(&self) -> bool {
        CategoryDeformation::has_trivial_units(self)
    }
    fn complex(&self, opts: &ComplexOptions) -> Result<AssembledComplex, DeformError> {
        Ok(build_complex(Subject::Category(self.base()), opts)?)
    }
    fn top_residual(&self) -> Result<Vec<Option<Cochain>>, DeformError> {
        let n = self.order();
        let assoc = self.residuals().swap_remove(n - 1).assoc;
        // the brace form of the same quantity
        let mc = self.mc_residual().swap_remove(n - 1);
        if assoc.neg() != mc {
            return Err(DeformError::Internal(format!("order {n}: brace form disagrees with direct evaluation")));
        }
        Ok(vec![Some(assoc)])
    }
    fn push_parts(&self, parts: &[Option<Cochain>]) -> Result<Self, DeformError> {
        self.push_order(part(parts, 0, "composition")?.clone(), zero_units(self))
    }
}

impl Deformable for FunctorDeformation {
    fn kind(&self) -> ComplexKind {
        ComplexKind::Functor
    }
    fn order(&self) -> usize {
        FunctorDeformation::order(self)
    }
    fn truncate(&self, n: usize) -> Self {
        FunctorDeformation::truncate(self, n)
    }
    fn with_zero_order(&self) -> Self {
        let z = Cochain::zero(CochainSpace::new(self.functor(), self.functor(), 1));
        self.push_order(self.src().with_zero_order(), self.tgt().with_zero_order(), z).expect("zero terms fit")
    }
    fn validate(&self) -> Report {
        FunctorDeformation::validate(self)
    }
    fn has_trivial_units(&self) -> bool {
        self.src().has_trivial_units() && self.tgt().has_trivial_units()
    }
    fn complex(&self, opts: &ComplexOptions) -> Result<AssembledComplex, DeformError> {
        Ok(build_complex(Subject::Functor(self.functor()), opts)?)
    }
    fn top_residual(&self) -> Result<Vec<Option<Cochain>>, DeformError> {
        let n = self.order();
        Ok(vec![
            Some(self.src().residuals().swap_remove(n - 1).assoc),
            Some(self.tgt().residuals().swap_remove(n - 1).assoc),
            Some(self.residuals().swap_remove(n - 1).mult),
        ])
    }
    fn push_parts(&self, parts: &[Option<Cochain>]) -> Result<Self, DeformError> {
        let src = self.src().push_order(part(parts, 0, "source")?.clone(), zero_units(self.src()))?;
        let tgt = self.tgt().push_order(part(parts, 1, "target")?.clone(), zero_units(self.tgt()))?;
        self.push_order(src, tgt, part(parts, 2, "functor")?.clone())
    }
}

impl Deformable for NatDeformation {
    fn kind(&self) -> ComplexKind {
        ComplexKind::Nat
    }
    fn order(&self) -> usize {
        NatDeformation::order(self)
    }
    fn truncate(&self, n: usize) -> Self {
        NatDeformation::truncate(self, n)
    }
    fn with_zero_order(&self) -> Self {
        let (f, g) = (self.src(), self.tgt());
        let (a, b) = (f.src().with_zero_order(), f.tgt().with_zero_order());
        let zf = Cochain::zero(CochainSpace::new(f.functor(), f.functor(), 1));
        let zg = Cochain::zero(CochainSpace::new(g.functor(), g.functor(), 1));
        let f = f.push_order(a.clone(), b.clone(), zf).expect("zero terms fit");
        let g = g.push_order(a, b, zg).expect("zero terms fit");
        let zs = Cochain::zero(CochainSpace::new(self.nat().src(), self.nat().tgt(), 0));
        self.push_order(f, g, zs).expect("zero terms fit")
    }
    fn validate(&self) -> Report {
        NatDeformation::validate(self)
    }
    fn has_trivial_units(&self) -> bool {
        self.src().src().has_trivial_units() && self.src().tgt().has_trivial_units()
    }
    fn complex(&self, opts: &ComplexOptions) -> Result<AssembledComplex, DeformError> {
        Ok(build_complex(Subject::Nat(self.nat()), opts)?)
    }
    fn top_residual(&self) -> Result<Vec<Option<Cochain>>, DeformError> {
        let n = self.order();
        let (f, g) = (self.src(), self.tgt());
        Ok(vec![
            Some(f.src().residuals().swap_remove(n - 1).assoc),
            Some(f.tgt().residuals().swap_remove(n - 1).assoc),
            Some(f.residuals().swap_remove(n - 1).mult),
            Some(g.residuals().swap_remove(n - 1).mult),
            Some(self.residuals().swap_remove(n - 1)),
        ])
    }
    fn push_parts(&self, parts: &[Option<Cochain>]) -> Result<Self, DeformError> {
        let (f, g) = (self.src(), self.tgt());
        let a = f.src().push_order(part(parts, 0, "source")?.clone(), zero_units(f.src()))?;
        let b = f.tgt().push_order(part(parts, 1, "target")?.clone(), zero_units(f.tgt()))?;
        let f = f.push_order(a.clone(), b.clone(), part(parts, 2, "source functor")?.clone())?;
        let g = g.push_order(a, b, part(parts, 3, "target functor")?.clone())?;
        self.push_order(f, g, part(parts, 4, "transformation")?.clone())
    }
}

impl Deformable for DiagramDeformation {
    fn kind(&self) -> ComplexKind {
        ComplexKind::Diagram
    }
    fn order(&self) -> usize {
        DiagramDeformation::order(self)
    }
    fn truncate(&self, n: usize) -> Self {
        DiagramDeformation::truncate(self, n)
    }
    fn with_zero_order(&self) -> Self {
        DiagramDeformation::with_zero_order(self)
    }
    fn validate(&self) -> Report {
        DiagramDeformation::validate(self)
    }
    fn has_trivial_units(&self) -> bool {
        DiagramDeformation::has_trivial_units(self)
    }
    fn complex(&self, opts: &ComplexOptions) -> Result<AssembledComplex, DeformError> {
        Ok(build_complex(Subject::Diagram(self.label()), opts)?)
    }
    fn top_residual(&self) -> Result<Vec<Option<Cochain>>, DeformError> {
        let r = self.residual(self.order())?;
        Ok(r.vertices.into_iter().chain(r.edges).chain(r.cells).chain(r.cells3).map(Some).collect())
    }
    fn push_parts(&self, parts: &[Option<Cochain>]) -> Result<Self, DeformError> {
        let k = &self.label().computad;
        let (nv, ne, nc) = (k.vertices.len(), k.edges.len(), k.cells2.len());
        let take = |from: usize, n: usize, what: &str| -> Result<Vec<Cochain>, DeformError> {
            (from..from + n).map(|i| part(parts, i, what).cloned()).collect()
        };
        self.push_order(take(0, nv, "vertex")?, take(nv, ne, "edge")?, take(nv + ne, nc, "2-cell")?)
    }
}

/// An obstruction cocycle, decoded per summand.
#[derive(Clone, Debug)]
pub struct Obstruction {
    pub order: usize,
    pub degree: i64,
    pub labels: Vec<String>,
    pub parts: Vec<Option<Cochain>>,
    /// Coordinates in the full complex.
    pub vector: Vec<Scalar>,
}

impl Obstruction {
    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.vector)
    }

    pub fn nonzero_summands(&self) -> Vec<&str> {
        self.labels
            .iter()
            .zip(&self.parts)
            .filter(|(_, p)| p.as_ref().is_some_and(|c| !c.is_zero()))
            .map(|(l, _)| l.as_str())
            .collect()
    }
}

/// A nonzero class: the obstruction with a basis of the coboundaries it was
/// tested against, both in normalized coordinates.
#[derive(Clone, Debug)]
pub struct ObstructionClass {
    pub obstruction: Obstruction,
    pub normalized_vector: Vec<Scalar>,
    pub boundary_basis: Vec<Vec<Scalar>>,
}

#[derive(Clone, Debug)]
pub enum Extension<D> {
    Extended(D),
    Obstructed(ObstructionClass),
}

fn check_prefix<D: Deformable>(d: &D, n: usize) -> Result<D, DeformError> {
    if n == 0 {
        return Err(DeformError::Order("obstructions start at order 1".into()));
    }
    if d.order() + 1 < n {
        return Err(DeformError::Order(format!("order {n} needs a deformation through order {}", n - 1)));
    }
    let base = d.truncate(n - 1);
    if let Some(k) = base.first_invalid_order() {
        return Err(DeformError::Invalid { order: k, report: base.truncate(k).validate() });
    }
    Ok(base)
}

fn obstruction_in<D: Deformable>(base: &D, n: usize, cx: &AssembledComplex) -> Result<Obstruction, DeformError> {
    let padded = base.with_zero_order();
    let g = base.obstruction_degree();
    let res = padded.top_residual()?;
    let group = cx.group(g)?;
    let parts: Vec<Option<Cochain>> = res
        .into_iter()
        .zip(group)
        .map(|(r, s)| r.filter(|_| s.space.is_some()).map(|c| c.scale(&cx.field().from_i64(base.coefficient(s.cell)))))
        .collect();
    let refs: Vec<Option<&Cochain>> = parts.iter().map(Option::as_ref).collect();
    let vector = cx.join(g, &refs)?;
    let dv = cx.diff(g)?.mul_vec(&vector)?;
    if !is_zero_vec(&dv) {
        return Err(DeformError::NotClosed(n));
    }
    Ok(Obstruction { order: n, degree: g, labels: group.iter().map(|s| s.label.clone()).collect(), parts, vector })
}

/// The obstruction to extending `d` (valid through order `n − 1`) to order
/// `n`. Its closedness is checked against the assembled differential.
pub fn obstruction<D: Deformable>(d: &D, n: usize, opts: &ComplexOptions) -> Result<Obstruction, DeformError> {
    let base = check_prefix(d, n)?;
    let cx = base.complex(opts)?;
    obstruction_in(&base, n, &cx)
}

/// [`obstruction`] for diagrams; the 3-cell summands are the differences of
/// the induced composites.
pub fn obstruction_diagram(dd: &DiagramDeformation, n: usize, opts: &ComplexOptions) -> Result<Obstruction, DeformError> {
    obstruction(dd, n, opts)
}

/// Extends `d` from order `n − 1` to order `n` by solving `dx = ω` among
/// normalized cochains, or reports the class of `ω`.
pub fn extend_order<D: Deformable>(d: &D, n: usize, opts: &ComplexOptions) -> Result<Extension<D>, DeformError> {
    let base = check_prefix(d, n)?;
    if !base.has_trivial_units() {
        return Err(DeformError::Units);
    }
    let cx = base.complex(opts)?;
    let ob = obstruction_in(&base, n, &cx)?;
    let nc = cx.normalized()?;
    let g = ob.degree;
    let refs: Vec<Option<&Cochain>> = ob.parts.iter().map(Option::as_ref).collect();
    let w = nc
        .join(g, &refs)
        .map_err(|e| DeformError::Internal(format!("obstruction is not normalized: {e}")))?;
    match nc.solve_coboundary(g, &w)? {
        Some(x) => {
            let parts = nc.split(g - 1, &x)?;
            let ext = base.push_parts(&parts)?;
            let rep = ext.validate();
            if !rep.is_ok() {
                return Err(DeformError::Internal(format!("extension to order {n} does not validate:\n{rep}")));
            }
            Ok(Extension::Extended(ext))
        }
        None => {
            let b = nc.diff(g - 1)?;
            let boundary_basis = b.independent_columns().into_iter().map(|j| b.column(j)).collect();
            Ok(Extension::Obstructed(ObstructionClass { obstruction: ob, normalized_vector: w, boundary_basis }))
        }
    }
}

/// First-order deformations up to equivalence: the cohomology one degree
/// below the obstruction degree, with representative cocycles.
#[derive(Clone, Debug)]
pub struct Classification {
    pub kind: ComplexKind,
    pub degree: i64,
    pub dimension: usize,
    pub labels: Vec<String>,
    /// Representatives in normalized coordinates.
    pub vectors: Vec<Vec<Scalar>>,
    /// The same representatives split per summand.
    pub representatives: Vec<Vec<Option<Cochain>>>,
}

pub fn classify_first_order(subject: Subject<'_>, opts: &ComplexOptions) -> Result<Classification, DeformError> {
    let kind = subject.kind();
    if matches!(kind, ComplexKind::Pair | ComplexKind::Identity3) {
        return Err(DeformError::Mismatch(format!("{kind} complexes do not classify deformations")));
    }
    let degree = obstruction_degree(kind) - 1;
    let nc = build_complex(subject, opts)?.normalized()?;
    let vectors = nc.cohomology_basis(degree)?;
    let representatives = vectors.iter().map(|v| nc.split(degree, v)).collect::<Result<Vec<_>, _>>()?;
    Ok(Classification {
        kind,
        degree,
        dimension: vectors.len(),
        labels: nc.group(degree)?.iter().map(|s| s.label.clone()).collect(),
        vectors,
        representatives,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::computad::examples::{bigon, commutative_square, dual_nat, interchange_square};
    use crate::exactlinalg::Field;
    use crate::hochschild::identity_functor;
    use crate::lincat::examples::{a2, dual, k1, k1_k1};
    use crate::lincat::{LinFunctor, NatTransf};

    const Q: Field = Field::Rational;

    /// `R(x) − R(0) = −c·(dx)` summand by summand, for every basis vector
    /// one degree below the obstruction degree.
    fn check_linearization<D: Deformable>(d: &D) {
        let cx = d.complex(&ComplexOptions::default()).unwrap();
        let g = d.obstruction_degree();
        let r0 = d.with_zero_order().top_residual().unwrap();
        let group = cx.group(g).unwrap();
        let field = cx.field();
        for j in 0..cx.dim(g - 1).unwrap() {
            let mut v = vec![field.zero(); cx.dim(g - 1).unwrap()];
            v[j] = field.one();
            let rx = d.push_parts(&cx.split(g - 1, &v).unwrap()).unwrap().top_residual().unwrap();
            let dv = cx.split(g, &cx.diff(g - 1).unwrap().mul_vec(&v).unwrap()).unwrap();
            for (i, s) in group.iter().enumerate() {
                let (Some(a), Some(b)) = (&rx[i], &r0[i]) else { continue };
                let Some(dx) = &dv[i] else { continue };
                let c = field.from_i64(-d.coefficient(s.cell));
                assert_eq!(a.sub(b).unwrap(), dx.scale(&c), "{}: summand {} for basis vector {j}", d.kind(), s.label);
            }
        }
    }

    fn x_squared_eps() -> CategoryDeformation {
        let cat = Arc::new(dual(Q));
        let mut mu = Cochain::zero(CochainSpace::category(&cat, 2));
        mu.set(&[0, 0, 0], &[1, 1], &[Q.one(), Q.zero()]).unwrap();
        CategoryDeformation::new(cat.clone(), vec![mu], vec![Cochain::zero(CochainSpace::category(&cat, 0))]).unwrap()
    }

    fn x_on_dual(order: usize) -> NatDeformation {
        let cat = Arc::new(dual(Q));
        let id = identity_functor(&cat);
        let x = Arc::new(NatTransf::new("x", id.clone(), id.clone(), vec![vec![Q.zero(), Q.one()]]).unwrap());
        let d = CategoryDeformation::trivial(cat, order);
        let fd = FunctorDeformation::trivial(id, d.clone(), d).unwrap();
        NatDeformation::trivial(x, fd.clone(), fd).unwrap()
    }

    #[test]
    fn residuals_linearize_to_the_differential() {
        check_linearization(&CategoryDeformation::trivial(Arc::new(a2(Q)), 0));
        check_linearization(&x_squared_eps());
        let a = Arc::new(a2(Q));
        let id = identity_functor(&a);
        let t = CategoryDeformation::trivial(a, 0);
        check_linearization(&FunctorDeformation::trivial(id, t.clone(), t).unwrap());
        let d = x_squared_eps();
        let idd = identity_functor(d.base());
        check_linearization(&FunctorDeformation::trivial(idd, d.clone(), d).unwrap());
        check_linearization(&x_on_dual(0));
        check_linearization(&x_on_dual(1));
        let f = Field::Prime(3);
        for l in [interchange_square(f), commutative_square(f, (0, 1))] {
            check_linearization(&DiagramDeformation::trivial(Arc::new(l), 0));
        }
    }

    #[test]
    fn dual_numbers_extend_order_by_order() {
        let mut d = x_squared_eps();
        for n in 2..=3 {
            match extend_order(&d, n, &ComplexOptions::default()).unwrap() {
                Extension::Extended(e) => d = e,
                Extension::Obstructed(c) => panic!("order {n} obstructed: {:?}", c.obstruction.nonzero_summands()),
            }
            assert_eq!(d.order(), n);
            assert!(d.validate().is_ok());
        }
        let k = Arc::new(k1_k1(Q));
        let e = extend_order(&CategoryDeformation::trivial(k, 1), 2, &ComplexOptions::default()).unwrap();
        assert!(matches!(e, Extension::Extended(_)));
    }

    #[test]
    fn extension_needs_normalized_units_and_a_valid_prefix() {
        let cat = Arc::new(dual(Q));
        let mut iota = Cochain::zero(CochainSpace::category(&cat, 0));
        iota.set(&[0], &[], &[Q.zero(), Q.one()]).unwrap();
        let mut mu = Cochain::zero(CochainSpace::category(&cat, 2));
        mu.set(&[0, 0, 0], &[0, 0], &[Q.zero(), Q.from_i64(-1)]).unwrap();
        let d = CategoryDeformation::new(cat.clone(), vec![mu.clone()], vec![iota]).unwrap();
        assert!(matches!(extend_order(&d, 2, &ComplexOptions::default()), Err(DeformError::Units)));
        let mut bad = Cochain::zero(CochainSpace::category(&cat, 2));
        bad.set(&[0, 0, 0], &[0, 1], &[Q.zero(), Q.one()]).unwrap();
        let d = CategoryDeformation::new(cat.clone(), vec![bad], vec![Cochain::zero(CochainSpace::category(&cat, 0))]).unwrap();
        assert!(matches!(extend_order(&d, 2, &ComplexOptions::default()), Err(DeformError::Invalid { order: 1, .. })));
        assert!(matches!(extend_order(&d, 0, &ComplexOptions::default()), Err(DeformError::Order(_))));
    }

    #[test]
    fn first_order_classes() {
        let opts = ComplexOptions::default();
        let k = Arc::new(k1(Q));
        assert_eq!(classify_first_order(Subject::Category(&k), &opts).unwrap().dimension, 0);
        let d = Arc::new(dual(Q));
        let c = classify_first_order(Subject::Category(&d), &opts).unwrap();
        assert_eq!(c.dimension, 1);
        assert_eq!(c.degree, 2);
        let f = Arc::new(LinFunctor::identity(d.clone()));
        let s = dual_nat("s", &f, &f, 0, 1);
        let l = bigon(d.clone(), d.clone(), s.clone());
        assert_eq!(classify_first_order(Subject::Diagram(&l), &opts).unwrap().degree, -1);
        assert!(classify_first_order(Subject::Pair(&f, &f), &opts).is_err());
    }

    #[test]
    fn obstruction_of_a_valid_prefix_is_closed_and_reported_per_summand() {
        let d = x_squared_eps();
        let ob = obstruction(&d.with_zero_order(), 2, &ComplexOptions::default()).unwrap();
        assert_eq!(ob.degree, 3);
        assert_eq!(ob.order, 2);
        assert_eq!(ob.labels.len(), 1);
    }
}
