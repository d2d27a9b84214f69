use std::collections::HashMap;
use std::sync::Arc;

use crate::exactlinalg::{Coef, Field, Scalar};
use crate::report::Report;

use super::LincatError;

/// A finite k-linear category: objects, hom bases, and composition structure
/// constants. Composition is written in diagrammatic order, `f;g` = "f then g".
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinCategory {
    name: String,
    field: Field,
    objects: Vec<String>,
    hom_basis: Vec<Vec<String>>,
    /// Indexed by `(x*n + y)*n + z`; entry `(i*d_yz + j)*d_xz + k`.
    comp: Vec<Vec<Scalar>>,
    identity: Vec<usize>,
}

/// An arrow given by coordinates in the basis of its hom-space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub src: usize,
    pub tgt: usize,
    pub coeffs: Vec<Scalar>,
}

/// Incrementally declares a category; `build` checks table shapes.
#[derive(Clone, Debug)]
pub struct CategoryBuilder {
    name: String,
    field: Field,
    objects: Vec<String>,
    homs: HashMap<(usize, usize), Vec<String>>,
    identities: HashMap<usize, String>,
    products: Vec<(usize, usize, usize, String, String, Vec<(String, Scalar)>)>,
}

impl CategoryBuilder {
    pub fn new(name: impl Into<String>, field: Field) -> Self {
        CategoryBuilder {
            name: name.into(),
            field,
            objects: Vec::new(),
            homs: HashMap::new(),
            identities: HashMap::new(),
            products: Vec::new(),
        }
    }

    pub fn object(&mut self, id: impl Into<String>) -> &mut Self {
        self.objects.push(id.into());
        self
    }

    fn idx(&self, id: &str) -> Result<usize, LincatError> {
        self.objects
            .iter()
            .position(|o| o == id)
            .ok_or_else(|| LincatError::UnknownObject(id.to_string()))
    }

    pub fn hom(&mut self, src: &str, tgt: &str, basis: &[&str]) -> Result<&mut Self, LincatError> {
        let key = (self.idx(src)?, self.idx(tgt)?);
        self.homs.entry(key).or_default().extend(basis.iter().map(|s| s.to_string()));
        Ok(self)
    }

    pub fn identity(&mut self, obj: &str, basis: &str) -> Result<&mut Self, LincatError> {
        let x = self.idx(obj)?;
        self.identities.insert(x, basis.to_string());
        Ok(self)
    }

    /// Declares `left ; right = Σ coeff · basis`. Products not declared are
    /// zero, except those involving identities, which are filled in.
    pub fn product(
        &mut self,
        (x, y, z): (&str, &str, &str),
        left: &str,
        right: &str,
        result: &[(&str, Scalar)],
    ) -> Result<&mut Self, LincatError> {
        let t = (self.idx(x)?, self.idx(y)?, self.idx(z)?);
        self.products.push((
            t.0,
            t.1,
            t.2,
            left.to_string(),
            right.to_string(),
            result.iter().map(|(b, s)| (b.to_string(), s.clone())).collect(),
        ));
        Ok(self)
    }

    pub fn build(&self) -> Result<LinCategory, LincatError> {
        let n = self.objects.len();
        for (i, o) in self.objects.iter().enumerate() {
            if self.objects[..i].contains(o) {
                return Err(LincatError::Duplicate(format!("object {o}")));
            }
        }
        let mut hom_basis = vec![Vec::new(); n * n];
        for (&(x, y), b) in &self.homs {
            for (i, name) in b.iter().enumerate() {
                if b[..i].contains(name) {
                    return Err(LincatError::Duplicate(format!("basis arrow {name}")));
                }
            }
            hom_basis[x * n + y] = b.clone();
        }
        let find = |x: usize, y: usize, name: &str| -> Result<usize, LincatError> {
            hom_basis[x * n + y].iter().position(|b| b == name).ok_or_else(|| {
                LincatError::UnknownArrow(format!(
                    "{name} in hom({}, {})",
                    self.objects[x], self.objects[y]
                ))
            })
        };
        let mut identity = Vec::with_capacity(n);
        for x in 0..n {
            let name = self
                .identities
                .get(&x)
                .ok_or_else(|| LincatError::MissingIdentity(self.objects[x].clone()))?;
            identity.push(find(x, x, name)?);
        }
        let dim = |x: usize, y: usize| hom_basis[x * n + y].len();
        let mut comp = Vec::with_capacity(n * n * n);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    comp.push(vec![self.field.zero(); dim(x, y) * dim(y, z) * dim(x, z)]);
                }
            }
        }
        let mut set = |x: usize, y: usize, z: usize, i: usize, j: usize, k: usize, v: Scalar| {
            let (dyz, dxz) = (dim(y, z), dim(x, z));
            comp[(x * n + y) * n + z][(i * dyz + j) * dxz + k] = v;
        };
        // identities act as units unless overridden below
        for x in 0..n {
            for y in 0..n {
                for i in 0..dim(x, y) {
                    set(x, x, y, identity[x], i, i, self.field.one());
                    set(x, y, y, i, identity[y], i, self.field.one());
                }
            }
        }
        let mut seen = std::collections::HashSet::new();
        for (x, y, z, l, r, res) in &self.products {
            let (i, j) = (find(*x, *y, l)?, find(*y, *z, r)?);
            if !seen.insert((*x, *y, *z, i, j)) {
                return Err(LincatError::Duplicate(format!("product {l};{r}")));
            }
            for k in 0..dim(*x, *z) {
                set(*x, *y, *z, i, j, k, self.field.zero());
            }
            for (b, s) in res {
                if s.field() != self.field {
                    return Err(LincatError::FieldMismatch);
                }
                let k = find(*x, *z, b)?;
                set(*x, *y, *z, i, j, k, s.clone());
            }
        }
        Ok(LinCategory {
            name: self.name.clone(),
            field: self.field,
            objects: self.objects.clone(),
            hom_basis,
            comp,
            identity,
        })
    }
}

impl LinCategory {
    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn field(&self) -> Field {
        self.field
    }
    pub fn n_objects(&self) -> usize {
        self.objects.len()
    }
    pub fn objects(&self) -> &[String] {
        &self.objects
    }
    pub fn object_name(&self, x: usize) -> &str {
        &self.objects[x]
    }
    pub fn object_index(&self, id: &str) -> Result<usize, LincatError> {
        self.objects
            .iter()
            .position(|o| o == id)
            .ok_or_else(|| LincatError::UnknownObject(id.to_string()))
    }

    #[inline]
    pub fn hom_dim(&self, x: usize, y: usize) -> usize {
        self.hom_basis[x * self.objects.len() + y].len()
    }

    pub fn basis(&self, x: usize, y: usize) -> &[String] {
        &self.hom_basis[x * self.objects.len() + y]
    }

    pub fn basis_index(&self, x: usize, y: usize, name: &str) -> Result<usize, LincatError> {
        self.basis(x, y).iter().position(|b| b == name).ok_or_else(|| {
            LincatError::UnknownArrow(format!(
                "{name} in hom({}, {})",
                self.objects[x], self.objects[y]
            ))
        })
    }

    /// Locates a basis arrow by name anywhere in the category.
    pub fn find_basis(&self, name: &str) -> Option<(usize, usize, usize)> {
        let n = self.n_objects();
        (0..n * n).find_map(|xy| {
            self.hom_basis[xy].iter().position(|b| b == name).map(|i| (xy / n, xy % n, i))
        })
    }

    pub fn identity_index(&self, x: usize) -> usize {
        self.identity[x]
    }

    pub fn identity_vec(&self, x: usize) -> Vec<Scalar> {
        self.unit(x, x, self.identity[x])
    }

    /// Basis vector `e_i` of `hom(x, y)`.
    pub fn unit(&self, x: usize, y: usize, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.hom_dim(x, y)];
        v[i] = self.field.one();
        v
    }

    pub fn zero_vec(&self, x: usize, y: usize) -> Vec<Scalar> {
        vec![self.field.zero(); self.hom_dim(x, y)]
    }

    /// Structure constants of `e_i ; e_j` as a vector in `hom(x, z)`.
    #[inline]
    pub fn product(&self, x: usize, y: usize, z: usize, i: usize, j: usize) -> &[Scalar] {
        let n = self.objects.len();
        let dxz = self.hom_dim(x, z);
        let dyz = self.hom_dim(y, z);
        let t = &self.comp[(x * n + y) * n + z];
        &t[(i * dyz + j) * dxz..(i * dyz + j + 1) * dxz]
    }

    /// `a ; b` for `a: x → y`, `b: y → z`, with `a` concrete and `b` generic.
    pub fn compose_sv<V: Coef>(&self, x: usize, y: usize, z: usize, a: &[Scalar], b: &[V]) -> Vec<V> {
        let mut out = vec![V::zero(self.field); self.hom_dim(x, z)];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                for (k, c) in self.product(x, y, z, i, j).iter().enumerate() {
                    if !c.is_zero() {
                        out[k].add_scaled(&(ai * c), bj);
                    }
                }
            }
        }
        out
    }

    /// `a ; b` with `a` generic and `b` concrete.
    pub fn compose_vs<V: Coef>(&self, x: usize, y: usize, z: usize, a: &[V], b: &[Scalar]) -> Vec<V> {
        let mut out = vec![V::zero(self.field); self.hom_dim(x, z)];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                for (k, c) in self.product(x, y, z, i, j).iter().enumerate() {
                    if !c.is_zero() {
                        out[k].add_scaled(&(bj * c), ai);
                    }
                }
            }
        }
        out
    }

    pub fn compose(&self, x: usize, y: usize, z: usize, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        self.compose_sv(x, y, z, a, b)
    }

    pub fn compose_arrows(&self, f: &Arrow, g: &Arrow) -> Result<Arrow, LincatError> {
        if f.tgt != g.src {
            return Err(LincatError::NotComposable(format!(
                "{} -> {} then {} -> {}",
                self.objects[f.src], self.objects[f.tgt], self.objects[g.src], self.objects[g.tgt]
            )));
        }
        self.check_arrow(f)?;
        self.check_arrow(g)?;
        Ok(Arrow { src: f.src, tgt: g.tgt, coeffs: self.compose(f.src, f.tgt, g.tgt, &f.coeffs, &g.coeffs) })
    }

    pub fn check_arrow(&self, f: &Arrow) -> Result<(), LincatError> {
        let n = self.n_objects();
        if f.src >= n || f.tgt >= n {
            return Err(LincatError::IndexOutOfRange("arrow endpoint".into()));
        }
        if f.coeffs.len() != self.hom_dim(f.src, f.tgt) {
            return Err(LincatError::Shape(format!(
                "arrow has {} coefficients, hom has dimension {}",
                f.coeffs.len(),
                self.hom_dim(f.src, f.tgt)
            )));
        }
        Ok(())
    }

    pub fn basis_arrow(&self, x: usize, y: usize, i: usize) -> Arrow {
        Arrow { src: x, tgt: y, coeffs: self.unit(x, y, i) }
    }

    pub fn identity_arrow(&self, x: usize) -> Arrow {
        Arrow { src: x, tgt: x, coeffs: self.identity_vec(x) }
    }

    pub fn describe(&self, x: usize, y: usize, v: &[Scalar]) -> String {
        let terms: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                if c.is_one() {
                    self.basis(x, y)[i].clone()
                } else {
                    format!("{c}*{}", self.basis(x, y)[i])
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    /// Total number of basis arrows.
    pub fn total_dim(&self) -> usize {
        self.hom_basis.iter().map(Vec::len).sum()
    }

    /// Checks associativity on all basis triples and the unit laws.
    pub fn validate(&self) -> Report {
        let mut rep = Report::new();
        let n = self.n_objects();
        for x in 0..n {
            for y in 0..n {
                for i in 0..self.hom_dim(x, y) {
                    let f = self.unit(x, y, i);
                    let name = &self.basis(x, y)[i];
                    if self.compose(x, x, y, &self.identity_vec(x), &f) != f {
                        rep.push(format!("left unit fails on {name}"));
                    }
                    if self.compose(x, y, y, &f, &self.identity_vec(y)) != f {
                        rep.push(format!("right unit fails on {name}"));
                    }
                }
            }
        }
        for w in 0..n {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        for i in 0..self.hom_dim(w, x) {
                            for j in 0..self.hom_dim(x, y) {
                                let ab = self.product(w, x, y, i, j).to_vec();
                                for k in 0..self.hom_dim(y, z) {
                                    let c = self.unit(y, z, k);
                                    let left = self.compose(w, y, z, &ab, &c);
                                    let bc = self.product(x, y, z, j, k).to_vec();
                                    let right = self.compose(w, x, z, &self.unit(w, x, i), &bc);
                                    if left != right {
                                        rep.push(format!(
                                            "associativity fails on ({};{});{}: {} vs {}",
                                            self.basis(w, x)[i],
                                            self.basis(x, y)[j],
                                            self.basis(y, z)[k],
                                            self.describe(w, z, &left),
                                            self.describe(w, z, &right)
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

    /// Copy with one structure constant replaced; used to build invalid
    /// inputs for validator tests.
    pub fn with_product(&self, (x, y, z): (usize, usize, usize), i: usize, j: usize, value: Vec<Scalar>) -> LinCategory {
        let mut c = self.clone();
        let n = self.n_objects();
        let (dyz, dxz) = (self.hom_dim(y, z), self.hom_dim(x, z));
        assert_eq!(value.len(), dxz);
        let t = &mut c.comp[(x * n + y) * n + z];
        t[(i * dyz + j) * dxz..(i * dyz + j + 1) * dxz].clone_from_slice(&value);
        c
    }

    pub fn renamed(&self, name: impl Into<String>) -> LinCategory {
        LinCategory { name: name.into(), ..self.clone() }
    }
}

/// Structural equality with a pointer fast path.
pub fn same_category(a: &Arc<LinCategory>, b: &Arc<LinCategory>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Small named examples used throughout tests and the bundled projects.
pub mod examples {
    use super::*;

    /// The field as a one-object category.
    pub fn k1(field: Field) -> LinCategory {
        let mut b = CategoryBuilder::new("K1", field);
        b.object("*");
        b.hom("*", "*", &["e"]).unwrap();
        b.identity("*", "e").unwrap();
        b.build().unwrap()
    }

    /// Dual numbers `k[x]/x²`.
    pub fn dual(field: Field) -> LinCategory {
        let mut b = CategoryBuilder::new("DUAL", field);
        b.object("*");
        b.hom("*", "*", &["1", "x"]).unwrap();
        b.identity("*", "1").unwrap();
        b.build().unwrap()
    }

    /// Two objects and one arrow `f: a → b`.
    pub fn a2(field: Field) -> LinCategory {
        let mut b = CategoryBuilder::new("A2", field);
        b.object("a").object("b");
        b.hom("a", "a", &["1a"]).unwrap();
        b.hom("b", "b", &["1b"]).unwrap();
        b.hom("a", "b", &["f"]).unwrap();
        b.identity("a", "1a").unwrap();
        b.identity("b", "1b").unwrap();
        b.build().unwrap()
    }

    /// Two objects with only their identities (the algebra k × k).
    pub fn k1_k1(field: Field) -> LinCategory {
        let mut b = CategoryBuilder::new("K1xK1", field);
        b.object("a").object("b");
        b.hom("a", "a", &["1a"]).unwrap();
        b.hom("b", "b", &["1b"]).unwrap();
        b.identity("a", "1a").unwrap();
        b.identity("b", "1b").unwrap();
        b.build().unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::examples::*;
    use super::*;

    const Q: Field = Field::Rational;

    #[test]
    fn bundled_categories_are_valid() {
        for c in [k1(Q), dual(Q), a2(Q), k1_k1(Q), dual(Field::Prime(3))] {
            assert!(c.validate().is_ok(), "{}: {}", c.name(), c.validate());
        }
    }

    #[test]
    fn dual_with_x_squared_one_is_invalid() {
        let d = dual(Q);
        // x;x = 1 is associative (k[x]/(x²-1)); break the unit law instead by
        // also changing 1;x.
        let bad = d.with_product((0, 0, 0), 1, 1, vec![Q.one(), Q.zero()]);
        assert!(bad.validate().is_ok());
        let bad = bad.with_product((0, 0, 0), 0, 1, vec![Q.one(), Q.zero()]);
        let rep = bad.validate();
        assert!(!rep.is_ok());
        assert!(rep.findings.iter().any(|f| f.contains("unit")));
    }

    #[test]
    fn compose_examples() {
        let d = dual(Q);
        let x = d.basis_arrow(0, 0, 1);
        assert_eq!(d.compose_arrows(&x, &x).unwrap().coeffs, d.zero_vec(0, 0));
        assert_eq!(d.compose_arrows(&x, &d.identity_arrow(0)).unwrap(), x);
        let a = a2(Q);
        let f = a.basis_arrow(0, 1, 0);
        assert_eq!(a.compose_arrows(&a.identity_arrow(0), &f).unwrap(), f);
        assert!(a.compose_arrows(&f, &f).is_err());
    }

    #[test]
    fn non_associative_table_is_reported() {
        // x;x = y and y;x = x, so (x;x);x = x but x;(x;x) = x;y = 0
        let mut b = CategoryBuilder::new("bad", Q);
        b.object("*");
        b.hom("*", "*", &["1", "x", "y"]).unwrap();
        b.identity("*", "1").unwrap();
        b.product(("*", "*", "*"), "x", "x", &[("y", Q.one())]).unwrap();
        b.product(("*", "*", "*"), "y", "x", &[("x", Q.one())]).unwrap();
        let rep = b.build().unwrap().validate();
        assert!(rep.findings.iter().any(|f| f.contains("associativity")));
    }
}
