use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::computad::{compose_path, sequentialize, DiagramLabel};
use crate::exactlinalg::{Field, Form, Matrix};
use crate::hochschild::{
    brace_v, coboundary_v, cup_sv, cup_vs, identity_functor, pullback_v, pushforward_v, Cochain, CochainSpace,
    HochschildError, Unknown, Values,
};
use crate::lincat::{LinCategory, LinFunctor, NatTransf};

use super::whisker::{sandwich, to_values, whisker_v, SchemeFrame};
use super::{AssembledComplex, CellRef, DefcomplexError, Summand};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ComplexKind {
    Category,
    Functor,
    Pair,
    Nat,
    Identity3,
    Diagram,
}

impl ComplexKind {
    /// Default degree window, before clamping to the maximal cochain degree.
    pub fn default_window(self) -> (i64, i64) {
        match self {
            ComplexKind::Category => (0, 4),
            ComplexKind::Functor | ComplexKind::Pair => (-1, 3),
            ComplexKind::Nat | ComplexKind::Identity3 | ComplexKind::Diagram => (-2, 2),
        }
    }

    /// Largest shift between the window degree and a summand's Hochschild
    /// degree.
    fn top_shift(self) -> i64 {
        match self {
            ComplexKind::Category => 0,
            ComplexKind::Functor | ComplexKind::Pair => 1,
            ComplexKind::Nat => 2,
            ComplexKind::Identity3 | ComplexKind::Diagram => 3,
        }
    }
}

impl fmt::Display for ComplexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComplexKind::Category => "category",
            ComplexKind::Functor => "functor",
            ComplexKind::Pair => "pair",
            ComplexKind::Nat => "nat",
            ComplexKind::Identity3 => "identity3",
            ComplexKind::Diagram => "diagram",
        })
    }
}

impl FromStr for ComplexKind {
    type Err = DefcomplexError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "category" => ComplexKind::Category,
            "functor" => ComplexKind::Functor,
            "pair" => ComplexKind::Pair,
            "nat" => ComplexKind::Nat,
            "identity3" => ComplexKind::Identity3,
            "diagram" => ComplexKind::Diagram,
            other => return Err(DefcomplexError::Context(format!("unknown complex kind `{other}`"))),
        })
    }
}

/// What a complex is built from.
#[derive(Clone, Copy, Debug)]
pub enum Subject<'a> {
    Category(&'a Arc<LinCategory>),
    Functor(&'a Arc<LinFunctor>),
    Pair(&'a Arc<LinFunctor>, &'a Arc<LinFunctor>),
    Nat(&'a Arc<NatTransf>),
    Identity3(&'a Arc<NatTransf>),
    Diagram(&'a DiagramLabel),
}

impl Subject<'_> {
    pub fn kind(&self) -> ComplexKind {
        match self {
            Subject::Category(_) => ComplexKind::Category,
            Subject::Functor(_) => ComplexKind::Functor,
            Subject::Pair(..) => ComplexKind::Pair,
            Subject::Nat(_) => ComplexKind::Nat,
            Subject::Identity3(_) => ComplexKind::Identity3,
            Subject::Diagram(_) => ComplexKind::Diagram,
        }
    }

    fn field(&self) -> Field {
        match self {
            Subject::Category(c) => c.field(),
            Subject::Functor(f) | Subject::Pair(f, _) => f.src().field(),
            Subject::Nat(s) | Subject::Identity3(s) => s.src().src().field(),
            Subject::Diagram(l) => l.categories.first().map_or(Field::Rational, |c| c.field()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ComplexOptions {
    /// Explicit window; the default is the kind's window clamped so that no
    /// summand exceeds `max_degree`.
    pub window: Option<(i64, i64)>,
    pub max_degree: usize,
}

impl Default for ComplexOptions {
    fn default() -> Self {
        ComplexOptions { window: None, max_degree: 4 }
    }
}

/// One summand before its degree is fixed: the group in degree `p` holds
/// `C^{p + shift}(f, g)`.
struct Slot {
    label: String,
    cell: CellRef,
    shift: i64,
    f: Arc<LinFunctor>,
    g: Arc<LinFunctor>,
}

fn slot(label: impl Into<String>, cell: CellRef, shift: i64, f: &Arc<LinFunctor>, g: &Arc<LinFunctor>) -> Slot {
    Slot { label: label.into(), cell, shift, f: f.clone(), g: g.clone() }
}

fn cat_slot(label: impl Into<String>, cell: CellRef, shift: i64, c: &Arc<LinCategory>) -> Slot {
    let id = identity_functor(c);
    slot(label, cell, shift, &id, &id)
}

type OpResult = Result<Values<Form>, HochschildError>;

/// Accumulates the blocks of one differential.
struct Writer<'a> {
    m: Matrix,
    rows: &'a [Summand],
    cols: &'a [Summand],
    row_off: Vec<usize>,
    col_off: Vec<usize>,
}

impl<'a> Writer<'a> {
    fn new(field: Field, rows: &'a [Summand], cols: &'a [Summand]) -> Writer<'a> {
        let offs = |g: &[Summand]| {
            let mut at = 0;
            g.iter()
                .map(|s| {
                    let o = at;
                    at += s.dim();
                    o
                })
                .collect::<Vec<_>>()
        };
        let (nr, nc) = (rows.iter().map(Summand::dim).sum(), cols.iter().map(Summand::dim).sum());
        Writer { m: Matrix::zeros(field, nr, nc), rows, cols, row_off: offs(rows), col_off: offs(cols) }
    }

    /// Adds `sign · op` as the block from column summand `c` to row summand
    /// `r`. Blocks touching a zero summand are skipped.
    fn add(&mut self, r: usize, c: usize, sign: i64, op: impl FnOnce(&Unknown) -> OpResult) -> Result<(), DefcomplexError> {
        let (Some(rs), Some(cs)) = (&self.rows[r].space, &self.cols[c].space) else {
            return Ok(());
        };
        let out = op(&Unknown(cs.clone()))?;
        if !out.space.same_as(rs) {
            return Err(DefcomplexError::Context(format!(
                "block from {} lands in {}, expected {}",
                self.cols[c].describe(),
                out.space.label(),
                rs.label()
            )));
        }
        let field = self.m.field();
        let s = field.from_i64(sign);
        for (i, form) in out.data.iter().enumerate() {
            for (j, v) in &form.0 {
                let (a, b) = (self.row_off[r] + i, self.col_off[c] + j);
                let cur = self.m.get(a, b).clone();
                let mut next = cur;
                next.add_mul(&s, v);
                self.m.set(a, b, next);
            }
        }
        Ok(())
    }
}

fn delta(u: &Unknown) -> OpResult {
    Ok(Values::new(coboundary_v(u)))
}

fn ident(u: &Unknown) -> OpResult {
    Ok(to_values(u))
}

/// Builds the complex of a subject over a degree window, checking `d² = 0`.
pub fn build_complex(subject: Subject<'_>, opts: &ComplexOptions) -> Result<AssembledComplex, DefcomplexError> {
    let kind = subject.kind();
    let field = subject.field();
    let shift = kind.top_shift();
    let max = opts.max_degree as i64;
    let (lo, hi) = match opts.window {
        Some(w) => w,
        None => {
            let (lo, hi) = kind.default_window();
            (lo, hi.min(max - shift))
        }
    };
    if lo >= hi {
        return Err(DefcomplexError::Window(format!("empty window [{lo}, {hi}] for a {kind} complex")));
    }
    if hi + shift > max {
        return Err(DefcomplexError::Degree(format!(
            "degree {hi} of a {kind} complex needs cochains of degree {}, above the maximum {max}",
            hi + shift
        )));
    }
    let frames = match subject {
        Subject::Diagram(label) => {
            let rep = label.validate();
            if !rep.is_ok() {
                return Err(DefcomplexError::Context(format!("invalid labelling:\n{rep}")));
            }
            diagram_frames(label)?
        }
        _ => Vec::new(),
    };
    let slots = layout(subject)?;
    let group = |p: i64| -> Vec<Summand> {
        slots
            .iter()
            .map(|s| {
                let hdeg = p + s.shift;
                let space = (hdeg >= 0).then(|| CochainSpace::new(&s.f, &s.g, hdeg as usize));
                let coords = space.as_ref().map_or(Vec::new(), |sp| (0..sp.dim()).collect());
                Summand { label: s.label.clone(), cell: s.cell, hdeg, space, coords }
            })
            .collect()
    };
    let groups: Vec<Vec<Summand>> = (lo..=hi).map(group).collect();
    let bottom_zero = slots.iter().all(|s| lo - 1 + s.shift < 0);
    let mut diffs = Vec::new();
    for w in groups.windows(2) {
        let mut wr = Writer::new(field, &w[1], &w[0]);
        fill(subject, &frames, &mut wr)?;
        diffs.push(wr.m);
    }
    let x = AssembledComplex { kind, field, lo, hi, groups, diffs, normalized: false, bottom_zero };
    let rep = x.verify_d_squared();
    if !rep.is_ok() {
        return Err(DefcomplexError::NotComplex(rep.to_string()));
    }
    Ok(x)
}

fn layout(subject: Subject<'_>) -> Result<Vec<Slot>, DefcomplexError> {
    use CellRef::*;
    Ok(match subject {
        Subject::Category(c) => vec![cat_slot(c.name(), Vertex(0), 0, c)],
        Subject::Functor(f) => vec![
            cat_slot(format!("source {}", f.src().name()), Vertex(0), 1, f.src()),
            cat_slot(format!("target {}", f.tgt().name()), Vertex(1), 1, f.tgt()),
            slot(f.name(), Edge(0), 0, f, f),
        ],
        Subject::Pair(f, g) => {
            if !crate::lincat::same_category(f.src(), g.src()) || !crate::lincat::same_category(f.tgt(), g.tgt()) {
                return Err(DefcomplexError::Context(format!("{} and {} are not parallel", f.name(), g.name())));
            }
            vec![
                cat_slot(format!("source {}", f.src().name()), Vertex(0), 1, f.src()),
                cat_slot(format!("target {}", f.tgt().name()), Vertex(1), 1, f.tgt()),
                slot(f.name(), Edge(0), 0, f, f),
                slot(g.name(), Edge(1), 0, g, g),
            ]
        }
        Subject::Nat(s) => {
            let (f, g) = (s.src(), s.tgt());
            vec![
                cat_slot(format!("source {}", f.src().name()), Vertex(0), 2, f.src()),
                cat_slot(format!("target {}", f.tgt().name()), Vertex(1), 2, f.tgt()),
                slot(f.name(), Edge(0), 1, f, f),
                slot(g.name(), Edge(1), 1, g, g),
                slot(s.name(), Face(0), 0, f, g),
            ]
        }
        Subject::Identity3(s) => {
            let (f, g) = (s.src(), s.tgt());
            vec![
                cat_slot(format!("source {}", f.src().name()), Vertex(0), 3, f.src()),
                cat_slot(format!("target {}", f.tgt().name()), Vertex(1), 3, f.tgt()),
                slot(f.name(), Edge(0), 2, f, f),
                slot(g.name(), Edge(1), 2, g, g),
                slot(format!("{} (first copy)", s.name()), Face(0), 1, f, g),
                slot(format!("{} (second copy)", s.name()), Face(1), 1, f, g),
                slot(format!("identity on {}", s.name()), Cell3(0), 0, f, g),
            ]
        }
        Subject::Diagram(l) => {
            let k = &l.computad;
            let mut out = Vec::new();
            for (v, c) in k.vertices.iter().zip(&l.categories) {
                out.push(cat_slot(format!("vertex {v}"), Vertex(out.len()), 3, c));
            }
            for (i, (e, f)) in k.edges.iter().zip(&l.functors).enumerate() {
                out.push(slot(format!("edge {}", e.id), Edge(i), 2, f, f));
            }
            for (i, (c, s)) in k.cells2.iter().zip(&l.nats).enumerate() {
                out.push(slot(format!("2-cell {}", c.id), Face(i), 1, s.src(), s.tgt()));
            }
            for (i, c) in k.cells3.iter().enumerate() {
                let s = &k.schemes[c.dom];
                out.push(slot(
                    format!("3-cell {}", c.id),
                    Cell3(i),
                    0,
                    &compose_path(l, &s.dom),
                    &compose_path(l, &s.cod),
                ));
            }
            out
        }
    })
}

/// One frame per 3-cell: (domain scheme, codomain scheme).
fn diagram_frames(label: &DiagramLabel) -> Result<Vec<(SchemeFrame, SchemeFrame)>, DefcomplexError> {
    let k = &label.computad;
    k.cells3
        .iter()
        .map(|c| {
            let s = SchemeFrame::new(label, sequentialize(k, &k.schemes[c.dom])?)?;
            let t = SchemeFrame::new(label, sequentialize(k, &k.schemes[c.cod])?)?;
            Ok((s, t))
        })
        .collect()
}

/// Rows of a functor-style block: `−δa`, `−δb` and `−F_*a + F^*b + δf` with
/// the functor summand at `fi` and the row signs multiplied by `sign`.
fn functor_rows(w: &mut Writer<'_>, f: &Arc<LinFunctor>, fi: usize, sign: i64) -> Result<(), DefcomplexError> {
    w.add(fi, 0, -sign, |u| Ok(Values::new(pushforward_v(f, u)?)))?;
    w.add(fi, 1, sign, |u| Ok(Values::new(pullback_v(f, u)?)))?;
    w.add(fi, fi, sign, delta)
}

/// Row of a 2-cell-style block: `−ψ{σ} + f∪σ − σ∪g` on the columns
/// (`bi`, `fi`, `gi`), times `sign`.
fn dagger_row(w: &mut Writer<'_>, row: usize, s: &Cochain, (bi, fi, gi): (usize, usize, usize), sign: i64) -> Result<(), DefcomplexError> {
    w.add(row, bi, -sign, |u| Ok(Values::new(brace_v(u, &[s])?)))?;
    w.add(row, fi, sign, |u| Ok(Values::new(cup_vs(u, s)?)))?;
    w.add(row, gi, -sign, |u| Ok(Values::new(cup_sv(s, u)?)))
}

fn fill(
    subject: Subject<'_>,
    frames: &[(SchemeFrame, SchemeFrame)],
    w: &mut Writer<'_>,
) -> Result<(), DefcomplexError> {
    match subject {
        Subject::Category(_) => w.add(0, 0, 1, delta),
        Subject::Functor(f) => {
            w.add(0, 0, -1, delta)?;
            w.add(1, 1, -1, delta)?;
            functor_rows(w, f, 2, 1)
        }
        Subject::Pair(f, g) => {
            w.add(0, 0, -1, delta)?;
            w.add(1, 1, -1, delta)?;
            functor_rows(w, f, 2, 1)?;
            functor_rows(w, g, 3, 1)
        }
        Subject::Nat(s) => {
            w.add(0, 0, 1, delta)?;
            w.add(1, 1, 1, delta)?;
            functor_rows(w, s.src(), 2, -1)?;
            functor_rows(w, s.tgt(), 3, -1)?;
            let sc = Cochain::from_nat(s);
            dagger_row(w, 4, &sc, (1, 2, 3), 1)?;
            w.add(4, 4, 1, delta)
        }
        Subject::Identity3(s) => {
            w.add(0, 0, -1, delta)?;
            w.add(1, 1, -1, delta)?;
            functor_rows(w, s.src(), 2, 1)?;
            functor_rows(w, s.tgt(), 3, 1)?;
            let sc = Cochain::from_nat(s);
            for y in [4, 5] {
                dagger_row(w, y, &sc, (1, 2, 3), -1)?;
                w.add(y, y, -1, delta)?;
            }
            w.add(6, 4, 1, ident)?;
            w.add(6, 5, -1, ident)?;
            w.add(6, 6, 1, delta)
        }
        Subject::Diagram(l) => fill_diagram(l, frames, w),
    }
}

fn fill_diagram(l: &DiagramLabel, frames: &[(SchemeFrame, SchemeFrame)], w: &mut Writer<'_>) -> Result<(), DefcomplexError> {
    let k = &l.computad;
    let (nv, ne, nf) = (k.vertices.len(), k.edges.len(), k.cells2.len());
    let edge = |e: usize| nv + e;
    let face = |f: usize| nv + ne + f;
    let cell3 = |c: usize| nv + ne + nf + c;

    for v in 0..nv {
        w.add(v, v, -1, delta)?;
    }
    for (e, ed) in k.edges.iter().enumerate() {
        let f = &l.functors[e];
        w.add(edge(e), edge(e), 1, delta)?;
        w.add(edge(e), ed.tgt, 1, |u| Ok(Values::new(pullback_v(f, u)?)))?;
        w.add(edge(e), ed.src, -1, |u| Ok(Values::new(pushforward_v(f, u)?)))?;
    }
    for (fi, cell) in k.cells2.iter().enumerate() {
        let sc = Cochain::from_nat(&l.nats[fi]);
        let r = face(fi);
        w.add(r, r, -1, delta)?;
        w.add(r, cell.dom.end(k), 1, |u| Ok(Values::new(brace_v(u, &[&sc])?)))?;
        for (side, path) in [(-1, &cell.dom), (1, &cell.cod)] {
            for j in 0..path.len() {
                let (left, right) = (path.slice(k, 0, j), path.slice(k, j + 1, path.len()));
                w.add(r, edge(path.edges[j]), side, |u| {
                    let x = whisker_v(l, &left, &right, u)?;
                    Ok(if side < 0 { Values::new(cup_vs(&x, &sc)?) } else { Values::new(cup_sv(&sc, &x)?) })
                })?;
            }
        }
    }
    for (ci, (fs, ft)) in frames.iter().enumerate() {
        let r = cell3(ci);
        w.add(r, r, 1, delta)?;
        for (frame, sign) in [(ft, 1), (fs, -1)] {
            scheme_terms(l, frame, w, r, sign, &edge, &face)?;
        }
    }
    Ok(())
}

/// The linearized pasting composite of a scheme: how its value moves when
/// the faces, the edges after each face, and the composition of the sink
/// category move.
fn scheme_terms(
    l: &DiagramLabel,
    frame: &SchemeFrame,
    w: &mut Writer<'_>,
    r: usize,
    sign: i64,
    edge: &dyn Fn(usize) -> usize,
    face: &dyn Fn(usize) -> usize,
) -> Result<(), DefcomplexError> {
    let k = &l.computad;
    let m = frame.len();
    if m == 0 {
        return Ok(());
    }
    let sink = frame.seq.dom.end(k);
    for (i, step) in frame.seq.steps.iter().enumerate() {
        let (pre, post) = (frame.pre[i].as_ref(), frame.post[i].as_ref());
        w.add(r, face(step.cell), sign, |u| {
            sandwich(pre, whisker_v(l, &step.prefix, &step.suffix, u)?, post)
        })?;
        let sigma = Cochain::from_nat(&l.nats[step.cell]);
        let suffix = &step.suffix;
        for j in 0..suffix.len() {
            let before = suffix.slice(k, 0, j);
            let after = suffix.slice(k, j + 1, suffix.len());
            let tau = whisker_v(l, &step.prefix, &before, &sigma)?;
            let tau = Cochain::from_data(tau.space, tau.data)?;
            w.add(r, edge(suffix.edges[j]), sign, |u| {
                let b = Values::new(brace_v(u, &[&tau])?);
                let b = if after.is_empty() { b } else { Values::new(pushforward_v(&compose_path(l, &after), &b)?) };
                sandwich(pre, b, post)
            })?;
        }
    }
    for j in 1..m {
        let (before, here) = (frame.pre[j].as_ref().expect("j ≥ 1"), &frame.steps[j]);
        let post = frame.post[j].as_ref();
        w.add(r, sink, sign, |u| sandwich(None, Values::new(brace_v(u, &[before, here])?), post))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::computad::examples::*;
    use crate::computad::Computad3;
    use crate::lincat::examples::*;

    const Q: Field = Field::Rational;
    const F3: Field = Field::Prime(3);

    fn opts() -> ComplexOptions {
        ComplexOptions::default()
    }

    #[test]
    fn dual_second_cohomology() {
        let d = Arc::new(dual(Q));
        let x = build_complex(Subject::Category(&d), &opts()).unwrap();
        let xn = x.normalized().unwrap();
        for n in 0..=3 {
            assert_eq!(x.cohomology_dim(n).unwrap(), xn.cohomology_dim(n).unwrap(), "H^{n}");
        }
        assert_eq!(x.cohomology_dim(2).unwrap(), 1);
        assert_eq!(xn.cohomology_basis(2).unwrap().len(), 1);
    }

    #[test]
    fn separable_two_objects_rigid() {
        let c = Arc::new(k1_k1(Q));
        let x = build_complex(Subject::Category(&c), &opts()).unwrap();
        for n in 1..=3 {
            assert_eq!(x.cohomology_dim(n).unwrap(), 0);
        }
    }

    #[test]
    fn functor_summands_of_identity() {
        let d = Arc::new(dual(Q));
        let f = identity_functor(&d);
        let x = build_complex(Subject::Functor(&f), &opts()).unwrap();
        assert_eq!(x.window(), (-1, 3));
        let g = x.group(0).unwrap();
        assert_eq!(g.iter().map(|s| s.hdeg).collect::<Vec<_>>(), vec![1, 1, 0]);
    }

    fn sigma_x(field: Field) -> Arc<NatTransf> {
        let d = Arc::new(dual(field));
        let f = identity_functor(&d);
        dual_nat("s", &f, &f, 0, 1)
    }

    #[test]
    fn identity3_shifts_nat_cohomology() {
        for field in [Q, F3] {
            let s = sigma_x(field);
            let nat = build_complex(Subject::Nat(&s), &opts()).unwrap().normalized().unwrap();
            let id3 = build_complex(Subject::Identity3(&s), &opts()).unwrap().normalized().unwrap();
            assert_eq!(id3.window(), (-2, 1));
            for n in [-1, 0] {
                assert_eq!(id3.cohomology_dim(n).unwrap(), nat.cohomology_dim(n + 1).unwrap(), "{field} H^{n}");
            }
        }
    }

    #[test]
    fn pair_complex_squares_to_zero() {
        let d = Arc::new(dual(Q));
        let f = identity_functor(&d);
        let g = Arc::new(
            LinFunctor::from_images("N", d.clone(), d.clone(), vec![0], |_, _, i| (i == 1).then(|| vec![Q.zero(), Q.from_i64(2)])).unwrap(),
        );
        build_complex(Subject::Pair(&f, &g), &opts()).unwrap();
    }

    #[test]
    fn diagram_complexes_square_to_zero() {
        for l in [interchange_square(F3), loop_endofunctor(Q), commutative_square(F3, (0, 1))] {
            let x = build_complex(Subject::Diagram(&l), &opts()).unwrap();
            assert_eq!(x.window(), (-2, 1));
            x.normalized().unwrap();
        }
    }

    #[test]
    fn diagram_complexes_at_degree_five() {
        let o = ComplexOptions { window: Some((-2, 2)), max_degree: 5 };
        for l in [interchange_square(F3), commutative_square(F3, (0, 1))] {
            build_complex(Subject::Diagram(&l), &o).unwrap();
        }
    }

    #[test]
    fn bigon_group_and_nat_comparison() {
        let s = sigma_x(Q);
        let d = s.src().src().clone();
        let l = bigon(d.clone(), d, s.clone());
        let x = build_complex(Subject::Diagram(&l), &opts()).unwrap().normalized().unwrap();
        let hd: Vec<i64> = x.group(-1).unwrap().iter().map(|s| s.hdeg).collect();
        assert_eq!(hd, vec![2, 2, 1, 1, 0]);
        let nat = build_complex(Subject::Nat(&s), &opts()).unwrap().normalized().unwrap();
        assert_eq!(x.cohomology_dim(-1).unwrap(), nat.cohomology_dim(0).unwrap());
        assert_eq!(x.cohomology_dim(0).unwrap(), nat.cohomology_dim(1).unwrap());
    }

    #[test]
    fn single_edge_diagram_is_the_functor_complex() {
        let a = Arc::new(a2(Q));
        let d = Arc::new(dual(Q));
        let f = Arc::new(
            LinFunctor::from_images("P", a.clone(), d.clone(), vec![0, 0], |x, y, _| (x != y).then(|| vec![Q.zero(), Q.one()])).unwrap(),
        );
        let mut k = Computad3::new();
        k.add_vertex("u").unwrap();
        k.add_vertex("v").unwrap();
        k.add_edge("P", "u", "v").unwrap();
        let l = DiagramLabel::new(Arc::new(k), vec![a, d], vec![f.clone()], Vec::new()).unwrap();
        let x = build_complex(Subject::Diagram(&l), &opts()).unwrap();
        let y = build_complex(Subject::Functor(&f), &opts()).unwrap();
        for p in [-1, 0] {
            assert_eq!(x.cohomology_dim(p).unwrap(), y.cohomology_dim(p + 2).unwrap(), "H^{p}");
        }
    }
}
