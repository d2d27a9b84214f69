use std::fmt;
use std::sync::Arc;

use crate::exactlinalg::{Coef, Field, Form, Scalar};
use crate::lincat::{LinFunctor, NatTransf};

use super::{CochainSpace, HochschildError};

/// Something whose coordinates can be read as coefficients: a concrete
/// cochain (scalars) or an unknown cochain (unit linear forms).
pub trait Operand {
    type V: Coef;
    fn space(&self) -> &Arc<CochainSpace>;
    fn coord(&self, c: usize) -> Self::V;
}

/// A concrete Hochschild cochain.
#[derive(Clone)]
pub struct Cochain {
    space: Arc<CochainSpace>,
    data: Vec<Scalar>,
}

/// The generic element of a cochain space; formulas applied to it produce
/// matrix rows.
pub struct Unknown(pub Arc<CochainSpace>);

impl Operand for Cochain {
    type V = Scalar;
    fn space(&self) -> &Arc<CochainSpace> {
        &self.space
    }
    #[inline]
    fn coord(&self, c: usize) -> Scalar {
        self.data[c].clone()
    }
}

impl Operand for Unknown {
    type V = Form;
    fn space(&self) -> &Arc<CochainSpace> {
        &self.0
    }
    #[inline]
    fn coord(&self, c: usize) -> Form {
        Form::unit(self.0.field(), c)
    }
}

/// Coordinates of any coefficient type on a cochain space; lets linear
/// operations be chained on unknown cochains.
#[derive(Clone, Debug)]
pub struct Values<V> {
    pub space: Arc<CochainSpace>,
    pub data: Vec<V>,
}

impl<V: Coef> Values<V> {
    pub fn new((space, data): (Arc<CochainSpace>, Vec<V>)) -> Values<V> {
        debug_assert_eq!(space.dim(), data.len());
        Values { space, data }
    }

    /// Moves the data to a structurally equal space.
    pub fn recast(self, space: &Arc<CochainSpace>) -> Result<Values<V>, HochschildError> {
        if !self.space.same_as(space) {
            return Err(HochschildError::Context(format!("{} vs {}", self.space.label(), space.label())));
        }
        Ok(Values { space: space.clone(), data: self.data })
    }
}

impl<V: Coef> Operand for Values<V> {
    type V = V;
    fn space(&self) -> &Arc<CochainSpace> {
        &self.space
    }
    #[inline]
    fn coord(&self, c: usize) -> V {
        self.data[c].clone()
    }
}

impl From<Cochain> for Values<Scalar> {
    fn from(c: Cochain) -> Values<Scalar> {
        Values { space: c.space, data: c.data }
    }
}

/// An argument of a cochain: a basis arrow or an arbitrary coordinate vector.
#[derive(Clone, Copy, Debug)]
pub enum Arg<'a> {
    Basis(usize),
    Vec(&'a [Scalar]),
}

/// `φ(args)` with `args` running along the object chain `objs`.
pub fn eval<O: Operand + ?Sized>(op: &O, objs: &[usize], args: &[Arg<'_>]) -> Vec<O::V> {
    let space = op.space();
    debug_assert_eq!(objs.len(), space.degree() + 1);
    debug_assert_eq!(args.len(), space.degree());
    let field = space.field();
    let out_dim = space.out_dim(objs);
    let mut out = vec![O::V::zero(field); out_dim];
    let Some(block) = space.block(objs) else {
        return out;
    };
    // nonzero support of every argument
    let mut supports: Vec<Vec<(usize, Scalar)>> = Vec::with_capacity(args.len());
    for a in args {
        let s: Vec<(usize, Scalar)> = match a {
            Arg::Basis(i) => vec![(*i, field.one())],
            Arg::Vec(v) => v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect(),
        };
        if s.is_empty() {
            return out;
        }
        supports.push(s);
    }
    let mut pos = vec![0usize; supports.len()];
    loop {
        let mut coeff = field.one();
        let mut flat = 0;
        for (s, (p, d)) in supports.iter().zip(pos.iter().zip(&block.arg_dims)) {
            let (i, c) = &s[*p];
            flat = flat * d + i;
            if !c.is_one() {
                coeff = &coeff * c;
            }
        }
        let base = block.offset + flat * block.out_dim;
        for (k, o) in out.iter_mut().enumerate() {
            o.add_scaled(&coeff, &op.coord(base + k));
        }
        let mut s = supports.len();
        loop {
            if s == 0 {
                return out;
            }
            s -= 1;
            pos[s] += 1;
            if pos[s] < supports[s].len() {
                break;
            }
            pos[s] = 0;
        }
    }
}

/// `φ(e_{i_1}, …, e_{i_n})`.
pub fn eval_basis<O: Operand + ?Sized>(op: &O, objs: &[usize], idx: &[usize]) -> Vec<O::V> {
    let space = op.space();
    match space.block(objs) {
        None => vec![O::V::zero(space.field()); space.out_dim(objs)],
        Some(block) => {
            let base = block.offset + block.flat(idx) * block.out_dim;
            (0..block.out_dim).map(|k| op.coord(base + k)).collect()
        }
    }
}

impl Cochain {
    pub fn zero(space: Arc<CochainSpace>) -> Cochain {
        let data = vec![space.field().zero(); space.dim()];
        Cochain { space, data }
    }

    pub fn from_data(space: Arc<CochainSpace>, data: Vec<Scalar>) -> Result<Cochain, HochschildError> {
        if data.len() != space.dim() {
            return Err(HochschildError::Dimension(format!(
                "{} coordinates for a space of dimension {}",
                data.len(),
                space.dim()
            )));
        }
        Ok(Cochain { space, data })
    }

    /// Builds a cochain from its values on basis chains.
    pub fn tabulate(space: Arc<CochainSpace>, value: impl FnMut(&[usize], &[usize]) -> Vec<Scalar>) -> Cochain {
        let data = space.tabulate(value);
        Cochain { space, data }
    }

    /// A natural transformation as a 0-cochain.
    pub fn from_nat(s: &NatTransf) -> Cochain {
        let space = CochainSpace::new(s.src(), s.tgt(), 0);
        Cochain::tabulate(space, |objs, _| s.component(objs[0]).to_vec())
    }

    /// Reads a 0-cochain back as a family of components.
    pub fn to_nat(&self, name: &str) -> Result<NatTransf, HochschildError> {
        if self.space.degree() != 0 {
            return Err(HochschildError::Degree(format!("expected a 0-cochain, got degree {}", self.space.degree())));
        }
        let comps = (0..self.space.src().n_objects()).map(|x| eval_basis(self, &[x], &[])).collect();
        Ok(NatTransf::new(name, self.space.f().clone(), self.space.g().clone(), comps)?)
    }

    /// The 1-cochain `𝕂 ∈ C¹(K, K)` given by the action of `K` on homs.
    pub fn of_functor(k: &Arc<LinFunctor>) -> Cochain {
        let space = CochainSpace::new(k, k, 1);
        Cochain::tabulate(space, |objs, idx| k.apply_basis(objs[0], objs[1], idx[0]))
    }

    pub fn space(&self) -> &Arc<CochainSpace> {
        &self.space
    }
    pub fn degree(&self) -> usize {
        self.space.degree()
    }
    pub fn field(&self) -> Field {
        self.space.field()
    }
    pub fn data(&self) -> &[Scalar] {
        &self.data
    }
    pub fn into_data(self) -> Vec<Scalar> {
        self.data
    }
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn eval(&self, objs: &[usize], args: &[Arg<'_>]) -> Vec<Scalar> {
        eval(self, objs, args)
    }

    pub fn at(&self, objs: &[usize], idx: &[usize]) -> Vec<Scalar> {
        eval_basis(self, objs, idx)
    }

    /// Sets the value on one basis chain.
    pub fn set(&mut self, objs: &[usize], idx: &[usize], value: &[Scalar]) -> Result<(), HochschildError> {
        let block = self
            .space
            .block(objs)
            .ok_or_else(|| HochschildError::Dimension("object chain has no coordinates".into()))?;
        if value.len() != block.out_dim || idx.len() != block.arg_dims.len() {
            return Err(HochschildError::Dimension("value or argument count".into()));
        }
        if idx.iter().zip(&block.arg_dims).any(|(i, d)| i >= d) {
            return Err(HochschildError::Dimension("basis index out of range".into()));
        }
        let base = block.offset + block.flat(idx) * block.out_dim;
        self.data[base..base + block.out_dim].clone_from_slice(value);
        Ok(())
    }

    fn check_same(&self, other: &Cochain) -> Result<(), HochschildError> {
        if !self.space.same_as(&other.space) {
            return Err(HochschildError::Context(format!(
                "{} vs {}",
                self.space.label(),
                other.space.label()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain, HochschildError> {
        self.check_same(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(Cochain { space: self.space.clone(), data })
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain, HochschildError> {
        self.check_same(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(Cochain { space: self.space.clone(), data })
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, c: &Scalar, other: &Cochain) -> Result<(), HochschildError> {
        self.check_same(other)?;
        crate::exactlinalg::axpy(&mut self.data, c, &other.data);
        Ok(())
    }

    pub fn scale(&self, c: &Scalar) -> Cochain {
        Cochain { space: self.space.clone(), data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn neg(&self) -> Cochain {
        Cochain { space: self.space.clone(), data: self.data.iter().map(|a| -a).collect() }
    }

    /// Reinterprets the data in a structurally equal space.
    pub fn recast(&self, space: &Arc<CochainSpace>) -> Result<Cochain, HochschildError> {
        if !self.space.same_as(space) {
            return Err(HochschildError::Context(format!("{} vs {}", self.space.label(), space.label())));
        }
        Ok(Cochain { space: space.clone(), data: self.data.clone() })
    }

    /// Sparse listing: `(objects, basis tuple, target basis index, value)` for
    /// every nonzero coordinate.
    pub fn entries(&self) -> Vec<(Vec<usize>, Vec<usize>, usize, Scalar)> {
        let mut out = Vec::new();
        for (c, v) in self.data.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let (block, idx, k) = self.space.decode(c);
            out.push((block.objs.clone(), idx, k, v.clone()));
        }
        out
    }

    /// Whether the cochain vanishes on every chain containing an identity.
    pub fn is_normalized(&self) -> bool {
        self.data.iter().enumerate().all(|(c, v)| v.is_zero() || !self.space.is_degenerate(c))
    }
}

impl PartialEq for Cochain {
    fn eq(&self, other: &Self) -> bool {
        self.space.same_as(&other.space) && self.data == other.data
    }
}

impl fmt::Debug for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.space.label())?;
        let a = self.space.src();
        let b = self.space.tgt();
        let mut list = f.debug_list();
        for (objs, idx, k, v) in self.entries() {
            let args: Vec<&str> = objs.windows(2).zip(&idx).map(|(w, &i)| a.basis(w[0], w[1])[i].as_str()).collect();
            let (s, t) = (self.space.f().obj(objs[0]), self.space.g().obj(*objs.last().unwrap()));
            list.entry(&format!("({}) -> {v}*{}", args.join(","), b.basis(s, t)[k]));
        }
        list.finish()
    }
}
