use super::{Field, Scalar};

/// Values that cochain formulas can be evaluated in: plain scalars, or
/// sparse linear forms in the coordinates of an unknown cochain. Evaluating a
/// linear formula on forms yields the rows of its matrix directly.
pub trait Coef: Clone + std::fmt::Debug {
    fn zero(field: Field) -> Self;
    fn is_zero(&self) -> bool;
    /// `self += c * x`
    fn add_scaled(&mut self, c: &Scalar, x: &Self);
}

impl Coef for Scalar {
    fn zero(field: Field) -> Self {
        field.zero()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    #[inline]
    fn add_scaled(&mut self, c: &Scalar, x: &Self) {
        self.add_mul(c, x);
    }
}

/// Sparse linear form: sorted `(coordinate, coefficient)` pairs, no zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Form(pub Vec<(usize, Scalar)>);

impl Form {
    pub fn unit(field: Field, coord: usize) -> Form {
        Form(vec![(coord, field.one())])
    }
}

impl Coef for Form {
    fn zero(_: Field) -> Self {
        Form(Vec::new())
    }
    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
    fn add_scaled(&mut self, c: &Scalar, x: &Self) {
        if c.is_zero() || x.0.is_empty() {
            return;
        }
        if self.0.is_empty() {
            self.0 = x.0.iter().map(|(i, v)| (*i, c * v)).collect();
            return;
        }
        let mut out = Vec::with_capacity(self.0.len() + x.0.len());
        let (mut a, mut b) = (self.0.iter().peekable(), x.0.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, u)), Some((j, v))) => {
                    if i < j {
                        out.push((*i, u.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, c * v));
                        b.next();
                    } else {
                        let mut s = u.clone();
                        s.add_mul(c, v);
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, u)), None) => {
                    out.push((*i, u.clone()));
                    a.next();
                }
                (None, Some((j, v))) => {
                    out.push((*j, c * v));
                    b.next();
                }
                (None, None) => break,
            }
        }
        self.0 = out;
    }
}

/// Scales a vector of coefficients.
pub fn scale_vec<V: Coef>(field: Field, c: &Scalar, v: &[V]) -> Vec<V> {
    v.iter()
        .map(|x| {
            let mut z = V::zero(field);
            z.add_scaled(c, x);
            z
        })
        .collect()
}

/// `acc += c * v` for coefficient vectors.
pub fn add_scaled_vec<V: Coef>(acc: &mut [V], c: &Scalar, v: &[V]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        a.add_scaled(c, x);
    }
}
