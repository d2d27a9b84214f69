use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::exactlinalg::{Coef, Field};
use crate::lincat::{same_functor, LinCategory, LinFunctor};

/// The coordinates of `C^n(F, G)` for parallel `F, G: A → B`.
///
/// Coordinates are grouped in blocks, one per object chain `x_0 … x_n` with
/// nonzero hom-spaces along it and nonzero `B(F x_0, G x_n)`. Within a block
/// the coordinate of `(i_1, …, i_n; k)` is `offset + flat(i)·d_out + k` where
/// `flat` is the mixed-radix index with `i_1` most significant.
pub struct CochainSpace {
    f: Arc<LinFunctor>,
    g: Arc<LinFunctor>,
    degree: usize,
    blocks: Vec<Block>,
    lookup: Vec<u32>,
    dim: usize,
}

#[derive(Clone, Debug)]
pub struct Block {
    pub objs: Vec<usize>,
    pub offset: usize,
    pub arg_dims: Vec<usize>,
    pub out_dim: usize,
    pub n_tuples: usize,
}

impl Block {
    pub fn size(&self) -> usize {
        self.n_tuples * self.out_dim
    }

    #[inline]
    pub fn flat(&self, idx: &[usize]) -> usize {
        let mut f = 0;
        for (i, d) in idx.iter().zip(&self.arg_dims) {
            f = f * d + i;
        }
        f
    }

    pub fn unflat(&self, mut f: usize) -> Vec<usize> {
        let mut idx = vec![0; self.arg_dims.len()];
        for (slot, d) in idx.iter_mut().zip(&self.arg_dims).rev() {
            *slot = f % d;
            f /= d;
        }
        idx
    }
}

thread_local! {
    static CACHE: RefCell<HashMap<(usize, usize, usize), Arc<CochainSpace>>> = RefCell::new(HashMap::new());
    static IDENTITIES: RefCell<HashMap<usize, Arc<LinFunctor>>> = RefCell::new(HashMap::new());
    static COMPOSITES: RefCell<HashMap<(usize, usize), (Arc<LinFunctor>, Arc<LinFunctor>, Arc<LinFunctor>)>> =
        RefCell::new(HashMap::new());
}

/// Diagrammatic composite `f;g`, shared per pair of allocations so that
/// cochain spaces over composites are cached too. Identity factors are
/// dropped, so `f;id` is `f` itself.
pub fn compose_cached(f: &Arc<LinFunctor>, g: &Arc<LinFunctor>) -> Arc<LinFunctor> {
    let key = (Arc::as_ptr(f) as usize, Arc::as_ptr(g) as usize);
    if let Some(c) = COMPOSITES.with(|m| m.borrow().get(&key).map(|e| e.2.clone())) {
        return c;
    }
    let c = if g.is_identity() {
        f.clone()
    } else if f.is_identity() {
        g.clone()
    } else {
        Arc::new(f.then(g).expect("composable functors"))
    };
    COMPOSITES.with(|m| m.borrow_mut().insert(key, (f.clone(), g.clone(), c.clone())));
    c
}

/// The identity functor of a category, shared per category allocation.
pub fn identity_functor(cat: &Arc<LinCategory>) -> Arc<LinFunctor> {
    let key = Arc::as_ptr(cat) as usize;
    IDENTITIES.with(|m| {
        m.borrow_mut()
            .entry(key)
            .or_insert_with(|| Arc::new(LinFunctor::identity(cat.clone())))
            .clone()
    })
}

impl CochainSpace {
    /// `C^n(F, G)`. Spaces are cached per thread, keyed by the functor
    /// allocations; the cache keeps those allocations alive.
    pub fn new(f: &Arc<LinFunctor>, g: &Arc<LinFunctor>, degree: usize) -> Arc<CochainSpace> {
        assert!(
            crate::lincat::same_category(f.src(), g.src()) && crate::lincat::same_category(f.tgt(), g.tgt()),
            "cochain context needs parallel functors"
        );
        let key = (Arc::as_ptr(f) as usize, Arc::as_ptr(g) as usize, degree);
        if let Some(s) = CACHE.with(|c| c.borrow().get(&key).cloned()) {
            return s;
        }
        let s = Arc::new(CochainSpace::build(f.clone(), g.clone(), degree));
        CACHE.with(|c| c.borrow_mut().insert(key, s.clone()));
        s
    }

    /// `C^n(A) = C^n(Id_A, Id_A)`.
    pub fn category(cat: &Arc<LinCategory>, degree: usize) -> Arc<CochainSpace> {
        let id = identity_functor(cat);
        CochainSpace::new(&id, &id, degree)
    }

    /// Same context, another degree.
    pub fn with_degree(&self, degree: usize) -> Arc<CochainSpace> {
        CochainSpace::new(&self.f, &self.g, degree)
    }

    fn build(f: Arc<LinFunctor>, g: Arc<LinFunctor>, degree: usize) -> CochainSpace {
        let a = f.src().clone();
        let b = f.tgt().clone();
        let n = a.n_objects();
        let slots = n.checked_pow(degree as u32 + 1).expect("cochain degree too large");
        assert!(slots <= 1 << 24, "too many object chains for degree {degree}");
        let mut blocks = Vec::new();
        let mut lookup = vec![0u32; slots];
        let mut dim = 0;
        let mut chain = Vec::with_capacity(degree + 1);
        fn rec(
            a: &LinCategory,
            chain: &mut Vec<usize>,
            degree: usize,
            out: &mut dyn FnMut(&[usize]),
        ) {
            if chain.len() == degree + 1 {
                out(chain);
                return;
            }
            for y in 0..a.n_objects() {
                if let Some(&x) = chain.last() {
                    if a.hom_dim(x, y) == 0 {
                        continue;
                    }
                }
                chain.push(y);
                rec(a, chain, degree, out);
                chain.pop();
            }
        }
        rec(&a, &mut chain, degree, &mut |objs: &[usize]| {
            let out_dim = b.hom_dim(f.obj(objs[0]), g.obj(objs[degree]));
            if out_dim == 0 {
                return;
            }
            let arg_dims: Vec<usize> = objs.windows(2).map(|w| a.hom_dim(w[0], w[1])).collect();
            let n_tuples = arg_dims.iter().product();
            let code = objs.iter().rev().fold(0, |acc, &x| acc * n + x);
            blocks.push(Block { objs: objs.to_vec(), offset: dim, arg_dims, out_dim, n_tuples });
            lookup[code] = blocks.len() as u32;
            dim += n_tuples * out_dim;
        });
        CochainSpace { f, g, degree, blocks, lookup, dim }
    }

    pub fn f(&self) -> &Arc<LinFunctor> {
        &self.f
    }
    pub fn g(&self) -> &Arc<LinFunctor> {
        &self.g
    }
    pub fn src(&self) -> &Arc<LinCategory> {
        self.f.src()
    }
    pub fn tgt(&self) -> &Arc<LinCategory> {
        self.f.tgt()
    }
    pub fn degree(&self) -> usize {
        self.degree
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn field(&self) -> Field {
        self.src().field()
    }
    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    #[inline]
    pub fn block(&self, objs: &[usize]) -> Option<&Block> {
        let n = self.src().n_objects();
        let code = objs.iter().rev().fold(0, |acc, &x| acc * n + x);
        match self.lookup[code] {
            0 => None,
            b => Some(&self.blocks[b as usize - 1]),
        }
    }

    /// Dimension of the value space at an object chain.
    pub fn out_dim(&self, objs: &[usize]) -> usize {
        self.tgt().hom_dim(self.f.obj(objs[0]), self.g.obj(*objs.last().unwrap()))
    }

    /// Whether this and `other` are the same context and degree.
    pub fn same_as(&self, other: &CochainSpace) -> bool {
        std::ptr::eq(self, other)
            || (self.degree == other.degree && same_functor(&self.f, &other.f) && same_functor(&self.g, &other.g))
    }

    /// Same context, ignoring degree.
    pub fn same_context(&self, other: &CochainSpace) -> bool {
        same_functor(&self.f, &other.f) && same_functor(&self.g, &other.g)
    }

    /// Decodes a coordinate into (block, basis tuple, output index).
    pub fn decode(&self, coord: usize) -> (&Block, Vec<usize>, usize) {
        let b = self
            .blocks
            .partition_point(|b| b.offset + b.size() <= coord);
        let block = &self.blocks[b];
        let rel = coord - block.offset;
        (block, block.unflat(rel / block.out_dim), rel % block.out_dim)
    }

    /// Whether the coordinate has an identity basis arrow among its arguments.
    pub fn is_degenerate(&self, coord: usize) -> bool {
        let (block, idx, _) = self.decode(coord);
        let a = self.src();
        block.objs.windows(2).zip(&idx).any(|(w, &i)| w[0] == w[1] && i == a.identity_index(w[0]))
    }

    /// Coordinates spanning the normalized subcomplex.
    pub fn normalized_coords(&self) -> Vec<usize> {
        let a = self.src();
        let mut out = Vec::new();
        for block in &self.blocks {
            for t in 0..block.n_tuples {
                let idx = block.unflat(t);
                let degenerate =
                    block.objs.windows(2).zip(&idx).any(|(w, &i)| w[0] == w[1] && i == a.identity_index(w[0]));
                if !degenerate {
                    out.extend(block.offset + t * block.out_dim..block.offset + (t + 1) * block.out_dim);
                }
            }
        }
        out
    }

    /// Evaluates `value(objs, idx)` on every basis chain, in coordinate order.
    pub fn tabulate<V: Coef>(&self, mut value: impl FnMut(&[usize], &[usize]) -> Vec<V>) -> Vec<V> {
        let mut out = Vec::with_capacity(self.dim);
        for block in &self.blocks {
            let mut idx = vec![0; self.degree];
            for _ in 0..block.n_tuples {
                let v = value(&block.objs, &idx);
                debug_assert_eq!(v.len(), block.out_dim);
                out.extend(v);
                for s in (0..self.degree).rev() {
                    idx[s] += 1;
                    if idx[s] < block.arg_dims[s] {
                        break;
                    }
                    idx[s] = 0;
                }
            }
        }
        out
    }

    pub fn label(&self) -> String {
        if self.f.is_identity() && Arc::ptr_eq(&self.f, &self.g) {
            format!("C^{}({})", self.degree, self.src().name())
        } else {
            format!("C^{}({}, {})", self.degree, self.f.name(), self.g.name())
        }
    }
}

impl fmt::Debug for CochainSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [dim {}]", self.label(), self.dim)
    }
}
