use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::report::Report;

use super::ComputadError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub src: usize,
    pub tgt: usize,
}

/// A path of edges starting at a vertex. The empty path at `start` stands for
/// the identity there.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub start: usize,
    pub edges: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell2 {
    pub id: String,
    pub dom: Path,
    pub cod: Path,
}

/// A 2-pasting scheme: a set of faces (2-cells) filling the region between
/// two paths `dom` and `cod` from the source `s(G)` to the sink `t(G)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scheme {
    pub id: String,
    pub cells: Vec<usize>,
    pub dom: Path,
    pub cod: Path,
    /// Vertices declared in addition to those on the edges.
    pub extra_vertices: Vec<usize>,
}

/// A 3-cell between two schemes with the same boundary paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell3 {
    pub id: String,
    pub dom: usize,
    pub cod: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Computad3 {
    pub vertices: Vec<String>,
    pub edges: Vec<Edge>,
    pub cells2: Vec<Cell2>,
    pub schemes: Vec<Scheme>,
    pub cells3: Vec<Cell3>,
}

/// One firing: the face `cell` whiskered by `prefix` and `suffix`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub prefix: Path,
    pub cell: usize,
    pub suffix: Path,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sequentialization {
    pub dom: Path,
    pub cod: Path,
    pub steps: Vec<Step>,
}

impl Path {
    pub fn empty(start: usize) -> Path {
        Path { start, edges: Vec::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn end(&self, k: &Computad3) -> usize {
        self.edges.last().map_or(self.start, |&e| k.edges[e].tgt)
    }

    /// Vertex before edge position `i` (`i = len` gives the end).
    pub fn vertex_at(&self, k: &Computad3, i: usize) -> usize {
        if i == 0 {
            self.start
        } else {
            k.edges[self.edges[i - 1]].tgt
        }
    }

    pub fn slice(&self, k: &Computad3, from: usize, to: usize) -> Path {
        Path { start: self.vertex_at(k, from), edges: self.edges[from..to].to_vec() }
    }

    pub fn concat(&self, other: &Path) -> Path {
        let mut edges = self.edges.clone();
        edges.extend(&other.edges);
        Path { start: self.start, edges }
    }

    /// Index of the first edge not following its predecessor, if any.
    fn broken_at(&self, k: &Computad3) -> Option<usize> {
        let mut at = self.start;
        for (i, &e) in self.edges.iter().enumerate() {
            if k.edges[e].src != at {
                return Some(i);
            }
            at = k.edges[e].tgt;
        }
        None
    }

    pub fn describe(&self, k: &Computad3) -> String {
        if self.edges.is_empty() {
            format!("[] at {}", k.vertices[self.start])
        } else {
            let ids: Vec<&str> = self.edges.iter().map(|&e| k.edges[e].id.as_str()).collect();
            format!("[{}]", ids.join(","))
        }
    }
}

fn find(list: impl Iterator<Item = impl AsRef<str>>, id: &str, kind: &'static str) -> Result<usize, ComputadError> {
    let mut list = list;
    list.position(|x| x.as_ref() == id).ok_or_else(|| ComputadError::UnknownId { kind, id: id.to_string() })
}

impl Computad3 {
    pub fn new() -> Computad3 {
        Computad3::default()
    }

    pub fn vertex(&self, id: &str) -> Result<usize, ComputadError> {
        find(self.vertices.iter(), id, "vertex")
    }
    pub fn edge(&self, id: &str) -> Result<usize, ComputadError> {
        find(self.edges.iter().map(|e| &e.id), id, "edge")
    }
    pub fn cell2(&self, id: &str) -> Result<usize, ComputadError> {
        find(self.cells2.iter().map(|c| &c.id), id, "2-cell")
    }
    pub fn scheme(&self, id: &str) -> Result<usize, ComputadError> {
        find(self.schemes.iter().map(|c| &c.id), id, "scheme")
    }
    pub fn cell3(&self, id: &str) -> Result<usize, ComputadError> {
        find(self.cells3.iter().map(|c| &c.id), id, "3-cell")
    }

    fn fresh(&self, kind: &'static str, id: &str) -> Result<(), ComputadError> {
        let taken = match kind {
            "vertex" => self.vertex(id).is_ok(),
            "edge" => self.edge(id).is_ok(),
            "2-cell" => self.cell2(id).is_ok(),
            "scheme" => self.scheme(id).is_ok() || self.cell2(id).is_ok(),
            _ => self.cell3(id).is_ok(),
        };
        if taken {
            return Err(ComputadError::Duplicate { kind, id: id.to_string() });
        }
        Ok(())
    }

    pub fn add_vertex(&mut self, id: &str) -> Result<usize, ComputadError> {
        self.fresh("vertex", id)?;
        self.vertices.push(id.to_string());
        Ok(self.vertices.len() - 1)
    }

    pub fn add_edge(&mut self, id: &str, src: &str, tgt: &str) -> Result<usize, ComputadError> {
        self.fresh("edge", id)?;
        let (src, tgt) = (self.vertex(src)?, self.vertex(tgt)?);
        self.edges.push(Edge { id: id.to_string(), src, tgt });
        Ok(self.edges.len() - 1)
    }

    /// A path given by a start vertex and edge ids. Composability is checked
    /// by the validators, not here.
    pub fn path(&self, start: &str, edges: &[&str]) -> Result<Path, ComputadError> {
        let start = self.vertex(start)?;
        let edges = edges.iter().map(|e| self.edge(e)).collect::<Result<_, _>>()?;
        Ok(Path { start, edges })
    }

    pub fn add_cell2(&mut self, id: &str, dom: Path, cod: Path) -> Result<usize, ComputadError> {
        self.fresh("2-cell", id)?;
        self.cells2.push(Cell2 { id: id.to_string(), dom, cod });
        Ok(self.cells2.len() - 1)
    }

    pub fn add_scheme(&mut self, id: &str, cells: &[&str], dom: Path, cod: Path) -> Result<usize, ComputadError> {
        self.fresh("scheme", id)?;
        let cells = cells.iter().map(|c| self.cell2(c)).collect::<Result<_, _>>()?;
        self.schemes.push(Scheme { id: id.to_string(), cells, dom, cod, extra_vertices: Vec::new() });
        Ok(self.schemes.len() - 1)
    }

    pub fn add_cell3(&mut self, id: &str, dom: &str, cod: &str) -> Result<usize, ComputadError> {
        self.fresh("3-cell", id)?;
        let (dom, cod) = (self.scheme_or_cell(dom)?, self.scheme_or_cell(cod)?);
        self.cells3.push(Cell3 { id: id.to_string(), dom, cod });
        Ok(self.cells3.len() - 1)
    }

    /// A scheme id, or a 2-cell id standing for its one-face scheme (which is
    /// then registered under the cell's id).
    pub fn scheme_or_cell(&mut self, id: &str) -> Result<usize, ComputadError> {
        if let Ok(s) = self.scheme(id) {
            return Ok(s);
        }
        let c = self.cell2(id)?;
        let cell = &self.cells2[c];
        self.schemes.push(Scheme {
            id: id.to_string(),
            cells: vec![c],
            dom: cell.dom.clone(),
            cod: cell.cod.clone(),
            extra_vertices: Vec::new(),
        });
        Ok(self.schemes.len() - 1)
    }

    /// The scheme consisting of a single 2-cell.
    pub fn cell_scheme(&self, c: usize) -> Scheme {
        let cell = &self.cells2[c];
        Scheme {
            id: cell.id.clone(),
            cells: vec![c],
            dom: cell.dom.clone(),
            cod: cell.cod.clone(),
            extra_vertices: Vec::new(),
        }
    }
}

fn check_path(k: &Computad3, p: &Path, what: &str, rep: &mut Report) -> bool {
    if p.start >= k.vertices.len() || p.edges.iter().any(|&e| e >= k.edges.len()) {
        rep.push(format!("{what}: dangling reference"));
        return false;
    }
    if let Some(i) = p.broken_at(k) {
        rep.push(format!("{what}: edge {} does not continue the path", k.edges[p.edges[i]].id));
        return false;
    }
    true
}

/// Checks boundary compatibility of all cells and validates every scheme.
pub fn validate_computad3(k: &Computad3) -> Report {
    let mut rep = Report::new();
    for (kind, ids) in [
        ("vertex", k.vertices.clone()),
        ("edge", k.edges.iter().map(|e| e.id.clone()).collect()),
        ("2-cell", k.cells2.iter().map(|c| c.id.clone()).collect()),
        ("3-cell", k.cells3.iter().map(|c| c.id.clone()).collect()),
    ] {
        let mut seen = HashSet::new();
        for id in ids {
            if !seen.insert(id.clone()) {
                rep.push(format!("duplicate {kind} {id}"));
            }
        }
    }
    for e in &k.edges {
        if e.src >= k.vertices.len() || e.tgt >= k.vertices.len() {
            rep.push(format!("edge {} has a dangling endpoint", e.id));
        }
    }
    if !rep.is_ok() {
        return rep;
    }
    for c in &k.cells2 {
        let ok = check_path(k, &c.dom, &format!("2-cell {} domain", c.id), &mut rep)
            & check_path(k, &c.cod, &format!("2-cell {} codomain", c.id), &mut rep);
        if ok && (c.dom.start != c.cod.start || c.dom.end(k) != c.cod.end(k)) {
            rep.push(format!(
                "2-cell {}: domain {} and codomain {} have different endpoints",
                c.id,
                c.dom.describe(k),
                c.cod.describe(k)
            ));
        }
    }
    if !rep.is_ok() {
        return rep;
    }
    for s in &k.schemes {
        rep.absorb(&format!("scheme {}", s.id), validate_pasting_scheme2(k, s));
    }
    for c in &k.cells3 {
        if c.dom >= k.schemes.len() || c.cod >= k.schemes.len() {
            rep.push(format!("3-cell {}: dangling scheme", c.id));
            continue;
        }
        let (s, t) = (&k.schemes[c.dom], &k.schemes[c.cod]);
        if s.dom != t.dom || s.cod != t.cod {
            rep.push(format!(
                "3-cell {}: boundaries differ ({} => {} vs {} => {})",
                c.id,
                s.dom.describe(k),
                s.cod.describe(k),
                t.dom.describe(k),
                t.cod.describe(k)
            ));
        }
    }
    rep
}

/// Face-boundary, reachability and Euler checks on one scheme, plus a
/// composability check by sequentializing it.
pub fn validate_pasting_scheme2(k: &Computad3, s: &Scheme) -> Report {
    let mut rep = Report::new();
    if s.cells.iter().any(|&c| c >= k.cells2.len()) {
        rep.push("dangling face");
        return rep;
    }
    let ok = check_path(k, &s.dom, "domain", &mut rep) & check_path(k, &s.cod, "codomain", &mut rep);
    if !ok {
        return rep;
    }
    let (src, snk) = (s.dom.start, s.dom.end(k));
    if s.cod.start != src || s.cod.end(k) != snk {
        rep.push(format!("domain {} and codomain {} have different endpoints", s.dom.describe(k), s.cod.describe(k)));
        return rep;
    }
    let mut seen = HashSet::new();
    for &c in &s.cells {
        if !seen.insert(c) {
            rep.push(format!("face {} listed twice", k.cells2[c].id));
        }
    }
    let mut edges = BTreeSet::new();
    let mut vertices = BTreeSet::from([src, snk]);
    vertices.extend(s.extra_vertices.iter().copied());
    let mut paths = vec![&s.dom, &s.cod];
    paths.extend(s.cells.iter().flat_map(|&c| [&k.cells2[c].dom, &k.cells2[c].cod]));
    for p in paths {
        vertices.insert(p.start);
        for &e in &p.edges {
            edges.insert(e);
            vertices.insert(k.edges[e].src);
            vertices.insert(k.edges[e].tgt);
        }
    }
    // every vertex lies on a path from the source to the sink
    let reach = |from: usize, forward: bool| {
        let mut seen = BTreeSet::from([from]);
        let mut stack = vec![from];
        while let Some(v) = stack.pop() {
            for &e in &edges {
                let (a, b) = if forward { (k.edges[e].src, k.edges[e].tgt) } else { (k.edges[e].tgt, k.edges[e].src) };
                if a == v && seen.insert(b) {
                    stack.push(b);
                }
            }
        }
        seen
    };
    let (fwd, bwd) = (reach(src, true), reach(snk, false));
    for &v in &vertices {
        if !fwd.contains(&v) || !bwd.contains(&v) {
            rep.push(format!("vertex {} is not on a path from {} to {}", k.vertices[v], k.vertices[src], k.vertices[snk]));
        }
    }
    // Euler surrogate on the planar graph the scheme unfolds to: every edge
    // occurrence is created once (scheme domain or a face codomain) and used
    // up once (scheme codomain or a face domain). Counting distinct edges
    // instead would reject stacks that reuse an edge label.
    let mut balance: BTreeMap<usize, i64> = BTreeMap::new();
    for &e in s.dom.edges.iter().chain(s.cells.iter().flat_map(|&c| &k.cells2[c].cod.edges)) {
        *balance.entry(e).or_default() += 1;
    }
    for &e in s.cod.edges.iter().chain(s.cells.iter().flat_map(|&c| &k.cells2[c].dom.edges)) {
        *balance.entry(e).or_default() -= 1;
    }
    for (e, b) in balance.into_iter().filter(|&(_, b)| b != 0) {
        rep.push(format!(
            "Euler surrogate: edge {} is produced {} more time(s) than it is consumed",
            k.edges[e].id,
            b
        ));
    }
    if rep.is_ok() {
        if let Err(e) = sequentialize(k, s) {
            rep.push(e.to_string());
        }
    }
    rep
}

/// Positions at which `cell` can fire on `frontier`.
fn firing_positions(k: &Computad3, frontier: &Path, cell: &Cell2) -> Vec<usize> {
    let d = &cell.dom.edges;
    if d.len() > frontier.len() {
        return Vec::new();
    }
    (0..=frontier.len() - d.len())
        .filter(|&i| frontier.edges[i..i + d.len()] == d[..] && frontier.vertex_at(k, i) == cell.dom.start)
        .collect()
}

fn fire(k: &Computad3, frontier: &Path, c: usize, pos: usize) -> (Step, Path) {
    let cell = &k.cells2[c];
    let n = cell.dom.len();
    let prefix = frontier.slice(k, 0, pos);
    let suffix = frontier.slice(k, pos + n, frontier.len());
    let next = prefix.concat(&cell.cod).concat(&suffix);
    (Step { prefix, cell: c, suffix }, next)
}

/// The leftmost greedy firing order: at each stage fire the face matching
/// the frontier furthest left, ties broken by face id.
pub fn sequentialize(k: &Computad3, s: &Scheme) -> Result<Sequentialization, ComputadError> {
    let mut frontier = s.dom.clone();
    let mut left: Vec<usize> = s.cells.clone();
    let mut steps = Vec::new();
    while !left.is_empty() {
        let best = left
            .iter()
            .enumerate()
            .filter_map(|(slot, &c)| firing_positions(k, &frontier, &k.cells2[c]).first().map(|&p| (p, slot, c)))
            .min_by(|a, b| (a.0, &k.cells2[a.2].id).cmp(&(b.0, &k.cells2[b.2].id)));
        let Some((pos, slot, c)) = best else {
            let ids: Vec<&str> = left.iter().map(|&c| k.cells2[c].id.as_str()).collect();
            return Err(ComputadError::NotComposable(format!(
                "no face fires on frontier {}; unfired: {}",
                frontier.describe(k),
                ids.join(", ")
            )));
        };
        let (step, next) = fire(k, &frontier, c, pos);
        steps.push(step);
        frontier = next;
        left.remove(slot);
    }
    if frontier != s.cod {
        return Err(ComputadError::NotComposable(format!(
            "firing every face ends at {}, not the codomain {}",
            frontier.describe(k),
            s.cod.describe(k)
        )));
    }
    Ok(Sequentialization { dom: s.dom.clone(), cod: s.cod.clone(), steps })
}

/// Every firing order (over faces and match positions) that ends at the
/// codomain, up to `limit` of them.
pub fn enumerate_sequentializations(k: &Computad3, s: &Scheme, limit: usize) -> Vec<Sequentialization> {
    fn go(
        k: &Computad3,
        s: &Scheme,
        frontier: &Path,
        left: &mut Vec<usize>,
        steps: &mut Vec<Step>,
        out: &mut Vec<Sequentialization>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        if left.is_empty() {
            if *frontier == s.cod {
                out.push(Sequentialization { dom: s.dom.clone(), cod: s.cod.clone(), steps: steps.clone() });
            }
            return;
        }
        for slot in 0..left.len() {
            let c = left[slot];
            for pos in firing_positions(k, frontier, &k.cells2[c]) {
                let (step, next) = fire(k, frontier, c, pos);
                left.remove(slot);
                steps.push(step);
                go(k, s, &next, left, steps, out, limit);
                steps.pop();
                left.insert(slot, c);
            }
        }
    }
    let mut out = Vec::new();
    go(k, s, &s.dom, &mut s.cells.clone(), &mut Vec::new(), &mut out, limit);
    out
}
