use std::sync::Arc;

use super::cochain::{eval_basis, Cochain};
use super::ops::coboundary;
use super::CochainSpace;

/// `s^k φ (f_1, …, f_{n-1}) = φ(f_1, …, f_k, 1, f_{k+1}, …)`; zero when
/// `k ≥ n`. Returns `None` on 0-cochains, which have no lower degree.
pub fn s_k(k: usize, phi: &Cochain) -> Option<Cochain> {
    let n = phi.degree();
    if n == 0 {
        return None;
    }
    let t: Arc<CochainSpace> = phi.space().with_degree(n - 1);
    if k >= n {
        return Some(Cochain::zero(t));
    }
    let a = phi.space().src().clone();
    Some(Cochain::tabulate(t, |objs, idx| {
        let mut o = objs.to_vec();
        o.insert(k, objs[k]);
        let mut i = idx.to_vec();
        i.insert(k, a.identity_index(objs[k]));
        eval_basis(phi, &o, &i)
    }))
}

fn sub(a: &Cochain, b: &Cochain) -> Cochain {
    a.sub(b).expect("same space")
}

/// `g^k = (−1)^k s^k`, the homotopy behind `h^k`.
fn g_k(k: usize, phi: &Cochain) -> Option<Cochain> {
    let s = s_k(k, phi)?;
    Some(if k.is_multiple_of(2) { s } else { s.neg() })
}

/// `h^k = id − δg^k − g^kδ` with `g^k = (−1)^k s^k`. On cochains killed by
/// `s^0, …, s^{k-1}` its image is killed by `s^k` as well.
pub fn h_k(k: usize, phi: &Cochain) -> Cochain {
    let mut out = phi.clone();
    if let Some(g) = g_k(k, phi) {
        out = sub(&out, &coboundary(&g).recast(phi.space()).expect("same space"));
    }
    let d = coboundary(phi);
    let gd = g_k(k, &d).expect("positive degree");
    sub(&out, &gd.recast(phi.space()).expect("same space"))
}

/// Result of the normalizing retraction on one cochain.
#[derive(Clone, Debug)]
pub struct Retraction {
    /// `h̄φ`, a normalized cochain.
    pub image: Cochain,
    /// `Hφ` in degree `n − 1` (absent for `n = 0`), with
    /// `h̄φ − φ = δ(Hφ) + H(δφ)`.
    pub homotopy: Option<Cochain>,
}

/// `h̄ = h^n ∘ … ∘ h^1 ∘ h^0` on `C^n` (the higher `h^k` act trivially).
pub fn h_bar(phi: &Cochain) -> Cochain {
    let mut cur = phi.clone();
    for k in 0..=phi.degree() {
        cur = h_k(k, &cur);
    }
    cur
}

/// The homotopy `H = −(g^0 + g^1h^0 + g^2h^1h^0 + …)` from `i∘h̄` to the
/// identity, so that `i∘h̄ − id = δH + Hδ`.
pub fn homotopy(phi: &Cochain) -> Option<Cochain> {
    let n = phi.degree();
    if n == 0 {
        return None;
    }
    let mut acc = Cochain::zero(phi.space().with_degree(n - 1));
    let mut cur = phi.clone();
    for k in 0..n {
        let g = g_k(k, &cur).expect("positive degree");
        acc = sub(&acc, &g);
        cur = h_k(k, &cur);
    }
    Some(acc)
}

pub fn normalize_retraction(phi: &Cochain) -> Retraction {
    Retraction { image: h_bar(phi), homotopy: homotopy(phi) }
}

/// Projection onto the normalized coordinates (zeroes degenerate ones). This
/// is not a chain map; it is used only to read off normalized coordinates.
pub fn normalized_part(phi: &Cochain) -> Cochain {
    let space = phi.space().clone();
    let keep = space.normalized_coords();
    let mut data = vec![space.field().zero(); space.dim()];
    for c in keep {
        data[c] = phi.data()[c].clone();
    }
    Cochain::from_data(space, data).expect("same length")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlinalg::Field;
    use crate::lincat::examples::*;

    const Q: Field = Field::Rational;

    #[test]
    fn k1_one_cochain() {
        let s = CochainSpace::category(&Arc::new(k1(Q)), 1);
        let psi = Cochain::from_data(s, vec![Q.one()]).unwrap();
        assert!(!psi.is_normalized());
        let r = normalize_retraction(&psi);
        assert!(r.image.is_normalized());
        let h = r.homotopy.unwrap();
        let lhs = r.image.sub(&psi).unwrap();
        let rhs = coboundary(&h).add(&homotopy(&coboundary(&psi)).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn higher_degrees_land_in_normalized_cochains() {
        // odd k needs the sign in g^k; degree 1 alone does not see it
        let d = Arc::new(dual(Q));
        for n in 2..=3 {
            let s = CochainSpace::category(&d, n);
            let data = (0..s.dim()).map(|i| Q.from_i64(i as i64 % 5 - 2)).collect();
            let phi = Cochain::from_data(s, data).unwrap();
            let r = normalize_retraction(&phi);
            assert!(r.image.is_normalized(), "degree {n}");
            let lhs = r.image.sub(&phi).unwrap();
            let dh = coboundary(&r.homotopy.unwrap()).recast(phi.space()).unwrap();
            let hd = homotopy(&coboundary(&phi)).unwrap().recast(phi.space()).unwrap();
            assert_eq!(lhs, dh.add(&hd).unwrap(), "degree {n}");
        }
    }

    #[test]
    fn normalized_cochains_are_fixed() {
        let d = Arc::new(dual(Q));
        let s = CochainSpace::category(&d, 2);
        let mut phi = Cochain::zero(s);
        phi.set(&[0, 0, 0], &[1, 1], &[Q.one(), Q.from_i64(5)]).unwrap();
        assert!(phi.is_normalized());
        assert_eq!(h_bar(&phi), phi);
        let z = Cochain::from_data(CochainSpace::category(&d, 0), vec![Q.one(), Q.one()]).unwrap();
        assert_eq!(h_bar(&z), z);
    }
}
