//! Small labelled diagrams used by tests and the bundled projects.

use std::sync::Arc;

use crate::exactlinalg::Field;
use crate::lincat::examples::dual;
use crate::lincat::{LinCategory, LinFunctor, NatTransf};

use super::{Computad3, DiagramLabel};

fn named_identity(cat: &Arc<LinCategory>, name: &str) -> Arc<LinFunctor> {
    Arc::new(LinFunctor::identity(cat.clone()).renamed(name))
}

/// `a + b·x` as a natural endomorphism of an identity on DUAL.
pub fn dual_nat(name: &str, f: &Arc<LinFunctor>, g: &Arc<LinFunctor>, a: i64, b: i64) -> Arc<NatTransf> {
    let k = f.src().field();
    Arc::new(NatTransf::new(name, f.clone(), g.clone(), vec![vec![k.from_i64(a), k.from_i64(b)]]).unwrap())
}

/// Two parallel edges `F, F': A → B` with one 2-cell between them.
pub fn bigon(a: Arc<LinCategory>, b: Arc<LinCategory>, s: Arc<NatTransf>) -> DiagramLabel {
    let mut k = Computad3::new();
    k.add_vertex("A").unwrap();
    k.add_vertex("B").unwrap();
    k.add_edge("F", "A", "B").unwrap();
    k.add_edge("F'", "A", "B").unwrap();
    let (d, c) = (k.path("A", &["F"]).unwrap(), k.path("A", &["F'"]).unwrap());
    k.add_cell2("sigma", d, c).unwrap();
    DiagramLabel::new(Arc::new(k), vec![a, b], vec![s.src().clone(), s.tgt().clone()], vec![s]).unwrap()
}

/// Interchange square over DUAL: vertices `a, b, c`, edges `F, F2: a → b`
/// and `G, G2: b → c` (all identities), 2-cells `alpha = x` and
/// `beta = 1 + x`, and the scheme `sq` pasting them side by side.
pub fn interchange_square(field: Field) -> DiagramLabel {
    let mut k = Computad3::new();
    for v in ["a", "b", "c"] {
        k.add_vertex(v).unwrap();
    }
    for (e, s, t) in [("F", "a", "b"), ("F2", "a", "b"), ("G", "b", "c"), ("G2", "b", "c")] {
        k.add_edge(e, s, t).unwrap();
    }
    let p = |k: &Computad3, s, e: &[&str]| k.path(s, e).unwrap();
    let (d, c) = (p(&k, "a", &["F"]), p(&k, "a", &["F2"]));
    k.add_cell2("alpha", d, c).unwrap();
    let (d, c) = (p(&k, "b", &["G"]), p(&k, "b", &["G2"]));
    k.add_cell2("beta", d, c).unwrap();
    let (d, c) = (p(&k, "a", &["F", "G"]), p(&k, "a", &["F2", "G2"]));
    k.add_scheme("sq", &["alpha", "beta"], d, c).unwrap();
    let cat = Arc::new(dual(field));
    let fs: Vec<_> = ["F", "F2", "G", "G2"].iter().map(|n| named_identity(&cat, n)).collect();
    let alpha = dual_nat("alpha", &fs[0], &fs[1], 0, 1);
    let beta = dual_nat("beta", &fs[2], &fs[3], 1, 1);
    DiagramLabel::new(Arc::new(k), vec![cat.clone(), cat.clone(), cat], fs, vec![alpha, beta]).unwrap()
}

/// One vertex carrying DUAL and one loop edge labelled `x ↦ −x`.
pub fn loop_endofunctor(field: Field) -> DiagramLabel {
    let mut k = Computad3::new();
    k.add_vertex("A").unwrap();
    k.add_edge("F", "A", "A").unwrap();
    let cat = Arc::new(dual(field));
    let f = LinFunctor::from_images("F", cat.clone(), cat.clone(), vec![0], |_, _, i| {
        (i == 1).then(|| vec![field.zero(), -field.one()])
    })
    .unwrap();
    DiagramLabel::new(Arc::new(k), vec![cat], vec![Arc::new(f)], Vec::new()).unwrap()
}

/// Vertices `b, c, d` carrying DUAL; identity edges `G, H: b → c` and
/// `E: c → d`; 2-cells `sigma: G ⇒ H` and `tau: G;E ⇒ H;E`; and a 3-cell
/// `w` asserting that `sigma` whiskered by `E` equals `tau`. The labels are
/// `sigma = x` and `tau = tau0 + tau1·x`.
pub fn commutative_square(field: Field, tau: (i64, i64)) -> DiagramLabel {
    let mut k = Computad3::new();
    for v in ["b", "c", "d"] {
        k.add_vertex(v).unwrap();
    }
    for (e, s, t) in [("G", "b", "c"), ("H", "b", "c"), ("E", "c", "d")] {
        k.add_edge(e, s, t).unwrap();
    }
    let (d, c) = (k.path("b", &["G"]).unwrap(), k.path("b", &["H"]).unwrap());
    k.add_cell2("sigma", d, c).unwrap();
    let (d, c) = (k.path("b", &["G", "E"]).unwrap(), k.path("b", &["H", "E"]).unwrap());
    k.add_cell2("tau", d.clone(), c.clone()).unwrap();
    k.add_scheme("sigmaE", &["sigma"], d, c).unwrap();
    k.add_cell3("w", "sigmaE", "tau").unwrap();
    let cat = Arc::new(dual(field));
    let fs: Vec<_> = ["G", "H", "E"].iter().map(|n| named_identity(&cat, n)).collect();
    let sigma = dual_nat("sigma", &fs[0], &fs[1], 0, 1);
    let tau = dual_nat("tau", &fs[0], &fs[1], tau.0, tau.1);
    DiagramLabel::new(Arc::new(k), vec![cat.clone(), cat.clone(), cat], fs, vec![sigma, tau]).unwrap()
}
