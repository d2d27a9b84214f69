use std::sync::Arc;

use crate::computad::{compose_path, sequentialize, DiagramLabel, Path};
use crate::exactlinalg::Field;
use crate::hochschild::{identity_functor, Cochain, CochainSpace};
use crate::lincat::same_category;
use crate::report::Report;

use super::{
    compose_functor_defs, induce_scheme, note_residual, recast_terms, zero_terms, CategoryDeformation, DeformError,
    FunctorDeformation, NatDeformation,
};

/// Deformations of every part of a labelled diagram, of one common order.
/// Edge terms live over the edge labels and 2-cell terms over the composites
/// of the boundary paths.
#[derive(Clone, Debug)]
pub struct DiagramDeformation {
    label: Arc<DiagramLabel>,
    order: usize,
    vertices: Vec<CategoryDeformation>,
    edges: Vec<Vec<Cochain>>,
    cells: Vec<Vec<Cochain>>,
}

/// The defects of one order, one cochain per cell.
#[derive(Clone, Debug)]
pub struct DiagramResidual {
    pub order: usize,
    /// Associativity at each vertex (3-cochains).
    pub vertices: Vec<Cochain>,
    /// Compatibility with composition along each edge (2-cochains).
    pub edges: Vec<Cochain>,
    /// Naturality of each 2-cell against its boundary composites (1-cochains).
    pub cells: Vec<Cochain>,
    /// Induced composite of the domain minus that of the codomain, per 3-cell
    /// (0-cochains).
    pub cells3: Vec<Cochain>,
}

impl DiagramResidual {
    pub fn is_zero(&self) -> bool {
        self.vertices.iter().chain(&self.edges).chain(&self.cells).chain(&self.cells3).all(Cochain::is_zero)
    }
}

fn edge_space(label: &DiagramLabel, e: usize) -> Arc<CochainSpace> {
    CochainSpace::new(&label.functors[e], &label.functors[e], 1)
}

fn cell_space(label: &DiagramLabel, c: usize) -> Arc<CochainSpace> {
    let s = &label.nats[c];
    CochainSpace::new(s.src(), s.tgt(), 0)
}

impl DiagramDeformation {
    pub fn new(
        label: Arc<DiagramLabel>,
        vertices: Vec<CategoryDeformation>,
        edges: Vec<Vec<Cochain>>,
        cells: Vec<Vec<Cochain>>,
    ) -> Result<Self, DeformError> {
        let k = label.computad.clone();
        if vertices.len() != k.vertices.len() || edges.len() != k.edges.len() || cells.len() != k.cells2.len() {
            return Err(DeformError::Mismatch("deformation counts do not match the diagram".into()));
        }
        let order = vertices.first().map_or_else(|| edges.first().map_or(0, Vec::len), |v| v.order());
        for (i, (v, c)) in vertices.iter().zip(&label.categories).enumerate() {
            if !same_category(v.base(), c) {
                return Err(DeformError::Mismatch(format!("vertex {} deforms the wrong category", k.vertices[i])));
            }
            if v.order() != order {
                return Err(DeformError::Order(format!("vertex {} has order {}, expected {order}", k.vertices[i], v.order())));
            }
        }
        let edges = edges
            .into_iter()
            .enumerate()
            .map(|(e, t)| recast_terms(&format!("edge {}", k.edges[e].id), t, order, &edge_space(&label, e)))
            .collect::<Result<Vec<_>, _>>()?;
        let cells = cells
            .into_iter()
            .enumerate()
            .map(|(c, t)| recast_terms(&format!("2-cell {}", k.cells2[c].id), t, order, &cell_space(&label, c)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(DiagramDeformation { label, order, vertices, edges, cells })
    }

    /// Every part trivially deformed.
    pub fn trivial(label: Arc<DiagramLabel>, order: usize) -> Self {
        let vertices = label.categories.iter().map(|c| CategoryDeformation::trivial(c.clone(), order)).collect();
        let edges = (0..label.functors.len()).map(|e| zero_terms(&edge_space(&label, e), order)).collect();
        let cells = (0..label.nats.len()).map(|c| zero_terms(&cell_space(&label, c), order)).collect();
        DiagramDeformation { label, order, vertices, edges, cells }
    }

    pub fn label(&self) -> &DiagramLabel {
        &self.label
    }
    pub fn label_arc(&self) -> &Arc<DiagramLabel> {
        &self.label
    }
    pub fn order(&self) -> usize {
        self.order
    }
    pub fn field(&self) -> Field {
        self.label.categories.first().map_or(Field::Rational, |c| c.field())
    }
    pub fn vertex(&self, v: usize) -> &CategoryDeformation {
        &self.vertices[v]
    }
    pub fn vertices(&self) -> &[CategoryDeformation] {
        &self.vertices
    }
    pub fn edge_terms(&self, e: usize) -> &[Cochain] {
        &self.edges[e]
    }
    pub fn cell_terms(&self, c: usize) -> &[Cochain] {
        &self.cells[c]
    }

    pub fn truncate(&self, n: usize) -> Self {
        let n = n.min(self.order);
        DiagramDeformation {
            label: self.label.clone(),
            order: n,
            vertices: self.vertices.iter().map(|v| v.truncate(n)).collect(),
            edges: self.edges.iter().map(|t| t[..n].to_vec()).collect(),
            cells: self.cells.iter().map(|t| t[..n].to_vec()).collect(),
        }
    }

    /// Appends one order: a composition term per vertex (identities stay
    /// undeformed), a term per edge and a term per 2-cell.
    pub fn push_order(&self, vertices: Vec<Cochain>, edges: Vec<Cochain>, cells: Vec<Cochain>) -> Result<Self, DeformError> {
        let (nv, ne, nc) = (self.vertices.len(), self.edges.len(), self.cells.len());
        if vertices.len() != nv || edges.len() != ne || cells.len() != nc {
            return Err(DeformError::Mismatch("term counts do not match the diagram".into()));
        }
        let mut out = self.clone();
        out.order += 1;
        for (v, mu) in vertices.into_iter().enumerate() {
            let zero = Cochain::zero(CochainSpace::category(self.vertices[v].base(), 0));
            out.vertices[v] = self.vertices[v].push_order(mu, zero)?;
        }
        for (e, t) in edges.into_iter().enumerate() {
            out.edges[e].push(t.recast(&edge_space(&self.label, e))?);
        }
        for (c, t) in cells.into_iter().enumerate() {
            out.cells[c].push(t.recast(&cell_space(&self.label, c))?);
        }
        Ok(out)
    }

    pub fn with_zero_order(&self) -> Self {
        let zv = self.vertices.iter().map(|v| Cochain::zero(CochainSpace::category(v.base(), 2))).collect();
        let ze = (0..self.edges.len()).map(|e| Cochain::zero(edge_space(&self.label, e))).collect();
        let zc = (0..self.cells.len()).map(|c| Cochain::zero(cell_space(&self.label, c))).collect();
        self.push_order(zv, ze, zc).expect("zero terms fit")
    }

    pub fn has_trivial_units(&self) -> bool {
        self.vertices.iter().all(CategoryDeformation::has_trivial_units)
    }

    /// The deformation of one edge label between its endpoint deformations.
    pub fn edge(&self, e: usize) -> Result<FunctorDeformation, DeformError> {
        let edge = &self.label.computad.edges[e];
        FunctorDeformation::new(
            self.label.functors[e].clone(),
            self.vertices[edge.src].clone(),
            self.vertices[edge.tgt].clone(),
            self.edges[e].clone(),
        )
    }

    /// The deformation induced on the composite of a path.
    pub fn path(&self, p: &Path) -> Result<FunctorDeformation, DeformError> {
        let v = &self.vertices[p.start];
        let mut acc = FunctorDeformation::trivial(identity_functor(v.base()), v.clone(), v.clone())?;
        for &e in &p.edges {
            acc = compose_functor_defs(&acc, &self.edge(e)?)?;
        }
        debug_assert!(crate::lincat::same_functor(acc.functor(), &compose_path(&self.label, p)));
        Ok(acc)
    }

    /// A 2-cell against the induced deformations of its boundary paths.
    pub fn cell(&self, c: usize) -> Result<NatDeformation, DeformError> {
        let cell = &self.label.computad.cells2[c];
        NatDeformation::new(self.label.nats[c].clone(), self.path(&cell.dom)?, self.path(&cell.cod)?, self.cells[c].clone())
    }

    /// The deformation induced on the composite of a scheme, along its
    /// leftmost sequentialization.
    pub fn scheme_composite(&self, s: usize) -> Result<NatDeformation, DeformError> {
        let k = &self.label.computad;
        induce_scheme(self, &sequentialize(k, &k.schemes[s])?)
    }

    /// Difference of the induced composites of the two sides of a 3-cell, at
    /// orders `1..=N`.
    fn cell3_differences(&self, c: usize) -> Result<Vec<Cochain>, DeformError> {
        let k = &self.label.computad;
        let w = &k.cells3[c];
        let (s, t) = (self.scheme_composite(w.dom)?, self.scheme_composite(w.cod)?);
        let dom = &k.schemes[w.dom];
        let space = CochainSpace::new(&compose_path(&self.label, &dom.dom), &compose_path(&self.label, &dom.cod), 0);
        s.terms()
            .iter()
            .zip(t.terms())
            .map(|(a, b)| Ok(a.recast(&space)?.sub(&b.recast(&space)?)?))
            .collect()
    }

    /// Residual cochains of order `n`.
    pub fn residual(&self, n: usize) -> Result<DiagramResidual, DeformError> {
        if n == 0 || n > self.order {
            return Err(DeformError::Order(format!("no order {n} in a deformation of order {}", self.order)));
        }
        let k = &self.label.computad;
        let vertices = self.vertices.iter().map(|v| v.residuals()[n - 1].assoc.clone()).collect();
        let edges = (0..k.edges.len())
            .map(|e| Ok(self.edge(e)?.residuals()[n - 1].mult.clone()))
            .collect::<Result<_, DeformError>>()?;
        let cells = (0..k.cells2.len())
            .map(|c| Ok(self.cell(c)?.residuals()[n - 1].clone()))
            .collect::<Result<_, DeformError>>()?;
        let cells3 = (0..k.cells3.len())
            .map(|c| Ok(self.cell3_differences(c)?[n - 1].clone()))
            .collect::<Result<_, DeformError>>()?;
        Ok(DiagramResidual { order: n, vertices, edges, cells, cells3 })
    }

    /// Every equation of every part, plus equality of the induced composites
    /// across each 3-cell.
    pub fn validate(&self) -> Report {
        let mut rep = Report::new();
        let k = self.label.computad.clone();
        rep.absorb("labelling", self.label.validate());
        for (v, d) in self.vertices.iter().enumerate() {
            rep.absorb(&format!("vertex {}", k.vertices[v]), d.validate());
        }
        for (e, edge) in k.edges.iter().enumerate() {
            match self.edge(e) {
                Ok(f) => rep.absorb(&format!("edge {}", edge.id), f.equation_report()),
                Err(err) => rep.push(format!("edge {}: {err}", edge.id)),
            }
        }
        for (c, cell) in k.cells2.iter().enumerate() {
            match self.cell(c) {
                Ok(s) => rep.absorb(&format!("2-cell {}", cell.id), s.equation_report()),
                Err(err) => rep.push(format!("2-cell {}: {err}", cell.id)),
            }
        }
        for (c, cell) in k.cells3.iter().enumerate() {
            let what = format!("3-cell {}", cell.id);
            match self.cell3_differences(c) {
                Ok(diffs) => {
                    let mut sub = Report::new();
                    for (n, d) in diffs.iter().enumerate() {
                        note_residual(&mut sub, "equality of the induced composites", n + 1, d);
                    }
                    rep.absorb(&what, sub);
                }
                Err(err) => rep.push(format!("{what}: {err}")),
            }
        }
        rep
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::computad::examples::{commutative_square, interchange_square, loop_endofunctor};
    use crate::computad::enumerate_sequentializations;
    use crate::exactlinalg::Field;

    const F3: Field = Field::Prime(3);

    #[test]
    fn trivial_diagram_deformations_are_valid() {
        for l in [interchange_square(F3), loop_endofunctor(F3), commutative_square(F3, (0, 1))] {
            let d = DiagramDeformation::trivial(Arc::new(l), 2);
            assert!(d.validate().is_ok(), "{}", d.validate());
            assert!(d.residual(2).unwrap().is_zero());
        }
    }

    /// `D(x) = x`, the Euler derivation of the dual numbers.
    fn euler(label: &DiagramLabel, e: usize) -> Cochain {
        let mut d = Cochain::zero(edge_space(label, e));
        d.set(&[0, 0], &[1], &[F3.zero(), F3.one()]).unwrap();
        d
    }

    #[test]
    fn edge_deformation_breaking_a_three_cell_is_caught() {
        let l = Arc::new(commutative_square(F3, (0, 1)));
        let e = l.computad.edge("E").unwrap();
        let mut edges: Vec<Vec<Cochain>> = (0..3).map(|i| vec![Cochain::zero(edge_space(&l, i))]).collect();
        edges[e] = vec![euler(&l, e)];
        let vertices = l.categories.iter().map(|c| CategoryDeformation::trivial(c.clone(), 1)).collect();
        let cells = (0..2).map(|c| vec![Cochain::zero(cell_space(&l, c))]).collect();
        let dd = DiagramDeformation::new(l.clone(), vertices, edges, cells).unwrap();
        let rep = dd.validate();
        assert_eq!(rep.len(), 1, "{rep}");
        assert!(rep.findings[0].starts_with("3-cell w"), "{rep}");
        let r = dd.residual(1).unwrap();
        assert!(r.vertices.iter().chain(&r.edges).chain(&r.cells).all(Cochain::is_zero));
        // E¹(σ) = D(x) = x
        assert_eq!(r.cells3[0].at(&[0], &[]), vec![F3.zero(), F3.one()]);
    }

    #[test]
    fn interchange_composites_agree_across_sequentializations() {
        let l = Arc::new(interchange_square(F3));
        let k = l.computad.clone();
        // deform both 2-cells and one edge by central terms
        let mut dd = DiagramDeformation::trivial(l.clone(), 1);
        let mut a1 = Cochain::zero(cell_space(&l, 0));
        a1.set(&[0], &[], &[F3.one(), F3.one()]).unwrap();
        let mut b1 = Cochain::zero(cell_space(&l, 1));
        b1.set(&[0], &[], &[F3.zero(), F3.from_i64(2)]).unwrap();
        dd.cells[0][0] = a1;
        dd.cells[1][0] = b1;
        let g = k.edge("G").unwrap();
        dd.edges[g][0] = euler(&l, g);
        let g2 = k.edge("G2").unwrap();
        dd.edges[g2][0] = euler(&l, g2);
        assert!(dd.validate().is_ok(), "{}", dd.validate());
        let seqs = enumerate_sequentializations(&k, &k.schemes[0], 10);
        assert_eq!(seqs.len(), 2);
        let outs: Vec<_> = seqs.iter().map(|s| induce_scheme(&dd, s).unwrap()).collect();
        assert_eq!(outs[0].terms(), outs[1].terms());
        assert!(outs[0].validate().is_ok(), "{}", outs[0].validate());
    }
}
