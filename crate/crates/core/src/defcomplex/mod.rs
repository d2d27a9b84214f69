//! Deformation complexes of categories, functors, natural transformations
//! and labelled diagrams, assembled as explicit finite complexes of matrices.

mod assemble;
mod whisker;

pub use assemble::{build_complex, ComplexKind, ComplexOptions, Subject};
pub use whisker::{
    sandwich, to_values, whisker_cochain_1, whisker_cochain_2, whisker_v, PathContext, SchemeContext, SchemeFrame,
};

use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;

use crate::exactlinalg::{is_zero_vec, Field, LinalgError, Matrix, Scalar};
use crate::hochschild::{Cochain, CochainSpace, HochschildError};
use crate::report::Report;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DefcomplexError {
    #[error("window: {0}")]
    Window(String),
    #[error("degree: {0}")]
    Degree(String),
    #[error("context: {0}")]
    Context(String),
    #[error("differential does not square to zero: {0}")]
    NotComplex(String),
    #[error(transparent)]
    Hochschild(#[from] HochschildError),
    #[error(transparent)]
    Computad(#[from] crate::computad::ComputadError),
    #[error(transparent)]
    Lincat(#[from] crate::lincat::LincatError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Which cell of the subject a summand belongs to. For the non-diagram
/// kinds the indices follow the order of the summands: source and target
/// categories, then functors, then transformations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CellRef {
    Vertex(usize),
    Edge(usize),
    Face(usize),
    Cell3(usize),
}

#[derive(Clone, Debug)]
pub struct Summand {
    pub label: String,
    pub cell: CellRef,
    /// Hochschild degree; negative degrees contribute nothing.
    pub hdeg: i64,
    pub space: Option<Arc<CochainSpace>>,
    /// Coordinates of `space` spanned by this summand.
    pub coords: Vec<usize>,
}

impl Summand {
    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn describe(&self) -> String {
        match &self.space {
            Some(s) => format!("{} [{}]", s.label(), self.label),
            None => format!("0 [{}, degree {}]", self.label, self.hdeg),
        }
    }
}

/// A finite window `[lo, hi]` of a cochain complex. Differentials go from
/// degree `p` to `p + 1` for `lo ≤ p < hi`.
#[derive(Clone, Debug)]
pub struct AssembledComplex {
    kind: ComplexKind,
    field: Field,
    lo: i64,
    hi: i64,
    groups: Vec<Vec<Summand>>,
    pub(crate) diffs: Vec<Matrix>,
    normalized: bool,
    /// Whether the group just below the window is zero.
    bottom_zero: bool,
}

impl AssembledComplex {
    pub fn kind(&self) -> ComplexKind {
        self.kind
    }
    pub fn field(&self) -> Field {
        self.field
    }
    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }
    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    fn check(&self, p: i64) -> Result<usize, DefcomplexError> {
        if p < self.lo || p > self.hi {
            return Err(DefcomplexError::Window(format!("degree {p} is outside [{}, {}]", self.lo, self.hi)));
        }
        Ok((p - self.lo) as usize)
    }

    pub fn group(&self, p: i64) -> Result<&[Summand], DefcomplexError> {
        Ok(&self.groups[self.check(p)?])
    }

    pub fn dim(&self, p: i64) -> Result<usize, DefcomplexError> {
        Ok(self.group(p)?.iter().map(Summand::dim).sum())
    }

    /// The differential out of degree `p`.
    pub fn diff(&self, p: i64) -> Result<&Matrix, DefcomplexError> {
        let i = self.check(p)?;
        self.diffs
            .get(i)
            .ok_or_else(|| DefcomplexError::Window(format!("no differential out of the top degree {p}")))
    }

    /// Offsets of the summands of degree `p` in the group's coordinates.
    pub fn offsets(&self, p: i64) -> Result<Vec<usize>, DefcomplexError> {
        let mut out = Vec::new();
        let mut at = 0;
        for s in self.group(p)? {
            out.push(at);
            at += s.dim();
        }
        Ok(out)
    }

    /// Exact check that consecutive differentials compose to zero.
    pub fn verify_d_squared(&self) -> Report {
        let mut rep = Report::new();
        for (i, w) in self.diffs.windows(2).enumerate() {
            let p = self.lo + i as i64;
            match w[1].mul(&w[0]) {
                Ok(m) if m.is_zero() => {}
                Ok(m) => {
                    let bad = (0..m.rows()).flat_map(|r| (0..m.cols()).map(move |c| (r, c))).find(|&(r, c)| !m.get(r, c).is_zero());
                    let (r, c) = bad.expect("nonzero matrix");
                    rep.push(format!(
                        "d^{} d^{p} ≠ 0: entry ({r}, {c}) is {}, from {} into {}",
                        p + 1,
                        m.get(r, c),
                        self.locate(p, c),
                        self.locate(p + 2, r)
                    ));
                }
                Err(e) => rep.push(format!("d^{} d^{p}: {e}", p + 1)),
            }
        }
        rep
    }

    /// Names the summand holding a coordinate of degree `p`.
    fn locate(&self, p: i64, coord: usize) -> String {
        let Ok(g) = self.group(p) else { return format!("degree {p}") };
        let mut at = 0;
        for s in g {
            if coord < at + s.dim() {
                return s.describe();
            }
            at += s.dim();
        }
        format!("degree {p}")
    }

    fn incoming_rank(&self, n: i64) -> Result<usize, DefcomplexError> {
        if n > self.lo {
            Ok(self.diff(n - 1)?.rank())
        } else if self.bottom_zero {
            Ok(0)
        } else {
            Err(DefcomplexError::Window(format!(
                "degree {} is needed below the window [{}, {}]",
                n - 1,
                self.lo,
                self.hi
            )))
        }
    }

    /// `dim ker d^n − rank d^{n−1}`.
    pub fn cohomology_dim(&self, n: i64) -> Result<usize, DefcomplexError> {
        let d = self.diff(n)?;
        let kernel = d.cols() - d.rank();
        Ok(kernel - self.incoming_rank(n)?)
    }

    /// Cocycles of degree `n` whose classes form a basis of `H^n`.
    pub fn cohomology_basis(&self, n: i64) -> Result<Vec<Vec<Scalar>>, DefcomplexError> {
        let kernel = self.diff(n)?.kernel_basis();
        self.incoming_rank(n)?;
        let dim = self.dim(n)?;
        let mut cols: Vec<Vec<Scalar>> = Vec::new();
        if n > self.lo {
            let b = self.diff(n - 1)?;
            cols.extend((0..b.cols()).map(|j| b.column(j)));
        }
        let nb = cols.len();
        cols.extend(kernel.iter().cloned());
        let m = Matrix::from_columns(self.field, dim, &cols);
        Ok(m.independent_columns().into_iter().filter(|&j| j >= nb).map(|j| cols[j].clone()).collect())
    }

    /// A preimage of `v` under `d^{n−1}`, if `v` is a coboundary.
    pub fn solve_coboundary(&self, n: i64, v: &[Scalar]) -> Result<Option<Vec<Scalar>>, DefcomplexError> {
        if n > self.lo {
            return Ok(self.diff(n - 1)?.solve_linear(v)?);
        }
        self.incoming_rank(n)?;
        Ok(is_zero_vec(v).then(Vec::new))
    }

    /// The subcomplex spanned by normalized cochains.
    pub fn normalized(&self) -> Result<AssembledComplex, DefcomplexError> {
        if self.normalized {
            return Ok(self.clone());
        }
        let keep = |g: &[Summand]| -> Vec<usize> {
            let mut out = Vec::new();
            let mut at = 0;
            for s in g {
                if let Some(space) = &s.space {
                    let norm = space.normalized_coords();
                    let mut ni = norm.iter().peekable();
                    for (i, c) in s.coords.iter().enumerate() {
                        while ni.peek().is_some_and(|&&x| x < *c) {
                            ni.next();
                        }
                        if ni.peek() == Some(&c) {
                            out.push(at + i);
                        }
                    }
                }
                at += s.dim();
            }
            out
        };
        let kept: Vec<Vec<usize>> = self.groups.iter().map(|g| keep(g)).collect();
        let mut diffs = Vec::new();
        for (i, d) in self.diffs.iter().enumerate() {
            let (rows, cols) = (&kept[i + 1], &kept[i]);
            let mut in_rows = vec![false; d.rows()];
            for &r in rows {
                in_rows[r] = true;
            }
            for &c in cols {
                for r in (0..d.rows()).filter(|&r| !in_rows[r]) {
                    if !d.get(r, c).is_zero() {
                        return Err(DefcomplexError::NotComplex(format!(
                            "normalized {} maps outside the normalized part, into {}",
                            self.locate(self.lo + i as i64, c),
                            self.locate(self.lo + i as i64 + 1, r)
                        )));
                    }
                }
            }
            let mut m = Matrix::zeros(self.field, rows.len(), cols.len());
            for (a, &r) in rows.iter().enumerate() {
                for (b, &c) in cols.iter().enumerate() {
                    m.set(a, b, d.get(r, c).clone());
                }
            }
            diffs.push(m);
        }
        let groups = self
            .groups
            .iter()
            .map(|g| {
                g.iter()
                    .map(|s| {
                        let coords = match &s.space {
                            Some(sp) => {
                                let norm = sp.normalized_coords();
                                s.coords.iter().copied().filter(|c| norm.binary_search(c).is_ok()).collect()
                            }
                            None => Vec::new(),
                        };
                        Summand { coords, ..s.clone() }
                    })
                    .collect()
            })
            .collect();
        Ok(AssembledComplex { groups, diffs, normalized: true, ..self.clone() })
    }

    /// Splits a vector of degree `p` into one cochain per summand (absent for
    /// summands of negative degree).
    pub fn split(&self, p: i64, v: &[Scalar]) -> Result<Vec<Option<Cochain>>, DefcomplexError> {
        let dim = self.dim(p)?;
        if v.len() != dim {
            return Err(DefcomplexError::Context(format!("vector of length {} in degree {p} of dimension {dim}", v.len())));
        }
        let mut at = 0;
        let mut out = Vec::new();
        for s in self.group(p)? {
            out.push(match &s.space {
                Some(space) => {
                    let mut data = vec![self.field.zero(); space.dim()];
                    for (i, &c) in s.coords.iter().enumerate() {
                        data[c] = v[at + i].clone();
                    }
                    Some(Cochain::from_data(space.clone(), data)?)
                }
                None => None,
            });
            at += s.dim();
        }
        Ok(out)
    }

    /// Inverse of [`split`](Self::split); cochains are recast onto the
    /// summand spaces. Fails if a cochain has weight outside the summand's
    /// coordinates.
    pub fn join(&self, p: i64, parts: &[Option<&Cochain>]) -> Result<Vec<Scalar>, DefcomplexError> {
        let g = self.group(p)?;
        if parts.len() != g.len() {
            return Err(DefcomplexError::Context(format!("{} parts for {} summands", parts.len(), g.len())));
        }
        let mut out = Vec::with_capacity(self.dim(p)?);
        for (s, part) in g.iter().zip(parts) {
            match (&s.space, part) {
                (Some(space), Some(c)) => {
                    let c = c.recast(space)?;
                    let mut used = vec![false; space.dim()];
                    for &k in &s.coords {
                        used[k] = true;
                        out.push(c.data()[k].clone());
                    }
                    if let Some(k) = (0..space.dim()).find(|&k| !used[k] && !c.data()[k].is_zero()) {
                        let (block, idx, _) = space.decode(k);
                        return Err(DefcomplexError::Context(format!(
                            "{} has weight on the excluded coordinate {:?} {:?}",
                            s.describe(),
                            block.objs,
                            idx
                        )));
                    }
                }
                (Some(_), None) => out.extend(std::iter::repeat_n(self.field.zero(), s.dim())),
                (None, _) => {}
            }
        }
        Ok(out)
    }

    /// Per degree: summands with dimensions, then differential shapes and,
    /// optionally, the matrices themselves.
    pub fn report(&self, matrices: bool) -> String {
        let mut out = String::new();
        let norm = if self.normalized { ", normalized" } else { "" };
        let _ = writeln!(out, "{} complex over {}{norm}, degrees {}..{}", self.kind, self.field, self.lo, self.hi);
        for (i, g) in self.groups.iter().enumerate() {
            let p = self.lo + i as i64;
            let total: usize = g.iter().map(Summand::dim).sum();
            let _ = writeln!(out, "degree {p}: dim {total}");
            for s in g {
                let _ = writeln!(out, "  {:>6}  {}", s.dim(), s.describe());
            }
            if let Some(d) = self.diffs.get(i) {
                let _ = writeln!(out, "  d^{p}: {} x {}", d.rows(), d.cols());
                if matrices {
                    for line in d.to_string().lines() {
                        let _ = writeln!(out, "    {line}");
                    }
                }
            }
        }
        out
    }
}
