//! The project file: a TOML document declaring categories, functors,
//! transformations, labelled diagrams and deformations, and its conversion
//! into library values.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::computad::{Computad3, DiagramLabel, Path};
use crate::deform::{CategoryDeformation, DiagramDeformation, FunctorDeformation, NatDeformation};
use crate::exactlinalg::{Field, Scalar};
use crate::hochschild::{Cochain, CochainSpace};
use crate::lincat::{CategoryBuilder, LinCategory, LinFunctor, NatTransf};

use super::CliError;

/// A field element written as an integer or as a string such as `"-3/4"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarSpec {
    Int(i64),
    Text(String),
}

/// A sparse vector: `[basis arrow, coefficient]` pairs.
pub type SparseVec = Vec<(String, ScalarSpec)>;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Settings {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<(i64, i64)>,
}

impl Settings {
    fn is_empty(&self) -> bool {
        self.max_degree.is_none() && self.window.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomSpec {
    pub src: String,
    pub tgt: String,
    pub basis: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductSpec {
    pub left: String,
    pub right: String,
    #[serde(default)]
    pub result: SparseVec,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategorySpec {
    pub id: String,
    pub objects: Vec<String>,
    #[serde(default)]
    pub homs: Vec<HomSpec>,
    pub identities: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub products: Vec<ProductSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorSpec {
    pub id: String,
    /// Shorthand for the identity functor of a category.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identity_of: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub src: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tgt: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub objects: BTreeMap<String, String>,
    /// Images of basis arrows; identities default to identities and
    /// everything else to zero.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub images: BTreeMap<String, SparseVec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NatSpec {
    pub id: String,
    pub src: String,
    pub tgt: String,
    /// Missing components are zero.
    #[serde(default)]
    pub components: BTreeMap<String, SparseVec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexSpec {
    pub id: String,
    pub category: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeSpec {
    pub id: String,
    pub src: String,
    pub tgt: String,
    pub functor: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Cell2Spec {
    pub id: String,
    pub dom: Vec<String>,
    pub cod: Vec<String>,
    /// Start vertex; needed only when both boundary paths are empty.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub at: Option<String>,
    pub nat: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemeSpec {
    pub id: String,
    pub cells: Vec<String>,
    pub dom: Vec<String>,
    pub cod: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub at: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Cell3Spec {
    pub id: String,
    pub dom: String,
    pub cod: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramSpec {
    pub id: String,
    pub vertices: Vec<VertexSpec>,
    #[serde(default)]
    pub edges: Vec<EdgeSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cells2: Vec<Cell2Spec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub schemes: Vec<SchemeSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cells3: Vec<Cell3Spec>,
}

/// One value of a cochain: on a chain of basis arrows, or at an object for
/// degree 0.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntrySpec {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub args: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub object: Option<String>,
    pub value: SparseVec,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub order: usize,
    pub part: String,
    #[serde(default)]
    pub entries: Vec<EntrySpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeformationSpec {
    pub id: String,
    /// `category`, `functor`, `nat` or `diagram`.
    pub kind: String,
    pub subject: String,
    pub order: usize,
    /// Deformations of the boundary: category deformations for a functor,
    /// functor deformations for a transformation. Missing means trivial.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub src: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tgt: Option<String>,
    #[serde(default)]
    pub terms: Vec<TermSpec>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProjectFile {
    pub field: String,
    #[serde(default, skip_serializing_if = "Settings::is_empty")]
    pub settings: Settings,
    #[serde(default, rename = "category", skip_serializing_if = "Vec::is_empty")]
    pub categories: Vec<CategorySpec>,
    #[serde(default, rename = "functor", skip_serializing_if = "Vec::is_empty")]
    pub functors: Vec<FunctorSpec>,
    #[serde(default, rename = "nat", skip_serializing_if = "Vec::is_empty")]
    pub nats: Vec<NatSpec>,
    #[serde(default, rename = "diagram", skip_serializing_if = "Vec::is_empty")]
    pub diagrams: Vec<DiagramSpec>,
    #[serde(default, rename = "deformation", skip_serializing_if = "Vec::is_empty")]
    pub deformations: Vec<DeformationSpec>,
    /// Written by `--emit`; ignored on input.
    #[serde(default, skip_serializing_if = "toml::Table::is_empty")]
    pub results: toml::Table,
}

/// A deformation of any kind.
#[derive(Clone, Debug)]
pub enum AnyDeformation {
    Category(CategoryDeformation),
    Functor(FunctorDeformation),
    Nat(NatDeformation),
    Diagram(DiagramDeformation),
}

impl AnyDeformation {
    pub fn kind(&self) -> &'static str {
        match self {
            AnyDeformation::Category(_) => "category",
            AnyDeformation::Functor(_) => "functor",
            AnyDeformation::Nat(_) => "nat",
            AnyDeformation::Diagram(_) => "diagram",
        }
    }

    pub fn order(&self) -> usize {
        match self {
            AnyDeformation::Category(d) => d.order(),
            AnyDeformation::Functor(d) => d.order(),
            AnyDeformation::Nat(d) => d.order(),
            AnyDeformation::Diagram(d) => d.order(),
        }
    }

    pub fn validate(&self) -> crate::Report {
        match self {
            AnyDeformation::Category(d) => d.validate(),
            AnyDeformation::Functor(d) => d.validate(),
            AnyDeformation::Nat(d) => d.validate(),
            AnyDeformation::Diagram(d) => d.validate(),
        }
    }
}

/// A parsed and built project. Every table keeps declaration order.
#[derive(Clone, Debug)]
pub struct Project {
    pub file: ProjectFile,
    pub field: Field,
    pub categories: Vec<(String, Arc<LinCategory>)>,
    pub functors: Vec<(String, Arc<LinFunctor>)>,
    pub nats: Vec<(String, Arc<NatTransf>)>,
    pub diagrams: Vec<(String, Arc<DiagramLabel>)>,
    pub deformations: Vec<(String, AnyDeformation)>,
}

fn perr(section: &str, id: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Parse(format!("[{section}] {id}: {msg}"))
}

fn lookup<'a, T>(items: &'a [(String, T)], id: &str) -> Option<&'a T> {
    items.iter().find(|(k, _)| k == id).map(|(_, v)| v)
}

pub fn parse_scalar(field: Field, s: &ScalarSpec) -> Result<Scalar, CliError> {
    match s {
        ScalarSpec::Int(i) => Ok(field.from_i64(*i)),
        ScalarSpec::Text(t) => field.parse(t).map_err(|e| CliError::Parse(e.to_string())),
    }
}

pub fn scalar_spec(s: &Scalar) -> ScalarSpec {
    let text = s.to_string();
    text.parse::<i64>().map(ScalarSpec::Int).unwrap_or(ScalarSpec::Text(text))
}

/// `(src, tgt, index)` of a basis arrow, which must be unique in `cat`.
fn find_arrow(cat: &LinCategory, name: &str) -> Option<(usize, usize, usize)> {
    cat.find_basis(name)
}

/// A sparse vector in `hom(x, y)`.
fn sparse_in(cat: &LinCategory, x: usize, y: usize, v: &SparseVec) -> Result<Vec<Scalar>, String> {
    let mut out = cat.zero_vec(x, y);
    for (name, c) in v {
        let i = cat.basis_index(x, y, name).map_err(|_| {
            format!("`{name}` is not a basis arrow {} → {}", cat.object_name(x), cat.object_name(y))
        })?;
        let c = parse_scalar(cat.field(), c).map_err(|e| e.to_string())?;
        out[i] = &out[i] + &c;
    }
    Ok(out)
}

/// The inverse of [`sparse_in`].
pub fn sparse_of(cat: &LinCategory, x: usize, y: usize, v: &[Scalar]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (cat.basis(x, y)[i].clone(), scalar_spec(c)))
        .collect()
}

fn build_category(field: Field, spec: &CategorySpec) -> Result<LinCategory, CliError> {
    let e = |m: String| perr("category", &spec.id, m);
    let mut b = CategoryBuilder::new(spec.id.clone(), field);
    for o in &spec.objects {
        b.object(o.clone());
    }
    let mut seen: HashMap<&str, ()> = HashMap::new();
    for h in &spec.homs {
        for n in &h.basis {
            if seen.insert(n.as_str(), ()).is_some() {
                return Err(e(format!("basis arrow `{n}` is declared twice")));
            }
        }
        let names: Vec<&str> = h.basis.iter().map(String::as_str).collect();
        b.hom(&h.src, &h.tgt, &names).map_err(|x| e(x.to_string()))?;
    }
    for (o, n) in &spec.identities {
        b.identity(o, n).map_err(|x| e(x.to_string()))?;
    }
    // identities are needed to resolve names; build once without products
    let shape = b.build().map_err(|x| e(x.to_string()))?;
    for p in &spec.products {
        let (x, y, _) = find_arrow(&shape, &p.left).ok_or_else(|| e(format!("unknown arrow `{}`", p.left)))?;
        let (y2, z, _) = find_arrow(&shape, &p.right).ok_or_else(|| e(format!("unknown arrow `{}`", p.right)))?;
        if y != y2 {
            return Err(e(format!("`{}` and `{}` are not composable", p.left, p.right)));
        }
        let v = sparse_in(&shape, x, z, &p.result).map_err(|m| e(format!("product {};{}: {m}", p.left, p.right)))?;
        let result: Vec<(&str, Scalar)> = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (shape.basis(x, z)[i].as_str(), c.clone()))
            .collect();
        let ids = (shape.object_name(x), shape.object_name(y), shape.object_name(z));
        b.product(ids, &p.left, &p.right, &result).map_err(|x| e(x.to_string()))?;
    }
    b.build().map_err(|x| e(x.to_string()))
}

fn object(cat: &LinCategory, name: &str) -> Result<usize, String> {
    cat.object_index(name).map_err(|_| format!("unknown object `{name}` of {}", cat.name()))
}

impl Project {
    pub fn category(&self, id: &str) -> Option<&Arc<LinCategory>> {
        lookup(&self.categories, id)
    }
    pub fn functor(&self, id: &str) -> Option<&Arc<LinFunctor>> {
        lookup(&self.functors, id)
    }
    pub fn nat(&self, id: &str) -> Option<&Arc<NatTransf>> {
        lookup(&self.nats, id)
    }
    pub fn diagram(&self, id: &str) -> Option<&Arc<DiagramLabel>> {
        lookup(&self.diagrams, id)
    }
    pub fn deformation(&self, id: &str) -> Option<&AnyDeformation> {
        lookup(&self.deformations, id)
    }

    /// Parses TOML text; `field` overrides the declared field.
    pub fn parse(text: &str, field: Option<Field>) -> Result<Project, CliError> {
        let file: ProjectFile = toml::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
        Project::build(file, field)
    }

    pub fn build(file: ProjectFile, field: Option<Field>) -> Result<Project, CliError> {
        let field = match field {
            Some(f) => f,
            None => file.field.parse().map_err(|e| CliError::Parse(format!("field: {e}")))?,
        };
        let mut p = Project {
            file: ProjectFile::default(),
            field,
            categories: Vec::new(),
            functors: Vec::new(),
            nats: Vec::new(),
            diagrams: Vec::new(),
            deformations: Vec::new(),
        };
        let mut ids: HashMap<String, &'static str> = HashMap::new();
        let mut fresh = |id: &str, section: &'static str| -> Result<(), CliError> {
            match ids.insert(id.to_string(), section) {
                Some(prev) => Err(perr(section, id, format!("id already used by a {prev}"))),
                None => Ok(()),
            }
        };
        for c in &file.categories {
            fresh(&c.id, "category")?;
            p.categories.push((c.id.clone(), Arc::new(build_category(field, c)?)));
        }
        for f in &file.functors {
            fresh(&f.id, "functor")?;
            let fun = p.build_functor(f)?;
            p.functors.push((f.id.clone(), Arc::new(fun)));
        }
        for s in &file.nats {
            fresh(&s.id, "nat")?;
            let nat = p.build_nat(s)?;
            p.nats.push((s.id.clone(), Arc::new(nat)));
        }
        for d in &file.diagrams {
            fresh(&d.id, "diagram")?;
            let l = p.build_diagram(d)?;
            p.diagrams.push((d.id.clone(), Arc::new(l)));
        }
        for d in &file.deformations {
            fresh(&d.id, "deformation")?;
            let def = p.build_deformation(d)?;
            p.deformations.push((d.id.clone(), def));
        }
        p.file = file;
        Ok(p)
    }

    fn build_functor(&self, f: &FunctorSpec) -> Result<LinFunctor, CliError> {
        let e = |m: String| perr("functor", &f.id, m);
        if let Some(c) = &f.identity_of {
            let cat = self.category(c).ok_or_else(|| e(format!("unknown category `{c}`")))?;
            return Ok(LinFunctor::identity(cat.clone()).renamed(f.id.clone()));
        }
        let get = |c: &Option<String>, what: &str| -> Result<Arc<LinCategory>, CliError> {
            let c = c.as_ref().ok_or_else(|| e(format!("missing {what} category")))?;
            self.category(c).cloned().ok_or_else(|| e(format!("unknown category `{c}`")))
        };
        let (src, tgt) = (get(&f.src, "source")?, get(&f.tgt, "target")?);
        let mut obj_map = Vec::with_capacity(src.n_objects());
        for x in 0..src.n_objects() {
            let name = src.object_name(x);
            let img = f.objects.get(name).ok_or_else(|| e(format!("no image for object `{name}`")))?;
            obj_map.push(object(&tgt, img).map_err(e)?);
        }
        for o in f.objects.keys() {
            object(&src, o).map_err(e)?;
        }
        let mut images: HashMap<(usize, usize, usize), Vec<Scalar>> = HashMap::new();
        for (a, v) in &f.images {
            let (x, y, i) = find_arrow(&src, a).ok_or_else(|| e(format!("unknown arrow `{a}`")))?;
            let img = sparse_in(&tgt, obj_map[x], obj_map[y], v).map_err(|m| e(format!("image of {a}: {m}")))?;
            images.insert((x, y, i), img);
        }
        LinFunctor::from_images(f.id.clone(), src, tgt, obj_map, |x, y, i| images.get(&(x, y, i)).cloned())
            .map_err(|x| e(x.to_string()))
    }

    fn build_nat(&self, s: &NatSpec) -> Result<NatTransf, CliError> {
        let e = |m: String| perr("nat", &s.id, m);
        let f = self.functor(&s.src).ok_or_else(|| e(format!("unknown functor `{}`", s.src)))?;
        let g = self.functor(&s.tgt).ok_or_else(|| e(format!("unknown functor `{}`", s.tgt)))?;
        let (a, b) = (f.src(), f.tgt());
        for o in s.components.keys() {
            object(a, o).map_err(e)?;
        }
        let mut comps = Vec::with_capacity(a.n_objects());
        for x in 0..a.n_objects() {
            let v = match s.components.get(a.object_name(x)) {
                Some(v) => sparse_in(b, f.obj(x), g.obj(x), v).map_err(|m| e(format!("component at {}: {m}", a.object_name(x))))?,
                None => b.zero_vec(f.obj(x), g.obj(x)),
            };
            comps.push(v);
        }
        NatTransf::new(s.id.clone(), f.clone(), g.clone(), comps).map_err(|x| e(x.to_string()))
    }

    fn build_diagram(&self, d: &DiagramSpec) -> Result<DiagramLabel, CliError> {
        let e = |m: String| perr("diagram", &d.id, m);
        let mut k = Computad3::new();
        let mut cats = Vec::new();
        for v in &d.vertices {
            k.add_vertex(&v.id).map_err(|x| e(x.to_string()))?;
            cats.push(self.category(&v.category).cloned().ok_or_else(|| e(format!("unknown category `{}`", v.category)))?);
        }
        let mut funs = Vec::new();
        for ed in &d.edges {
            k.add_edge(&ed.id, &ed.src, &ed.tgt).map_err(|x| e(x.to_string()))?;
            funs.push(self.functor(&ed.functor).cloned().ok_or_else(|| e(format!("unknown functor `{}`", ed.functor)))?);
        }
        let path = |k: &Computad3, at: &Option<String>, edges: &[String], other: &[String]| -> Result<Path, CliError> {
            let start = match (at, edges.first().or(other.first())) {
                (Some(v), _) => v.clone(),
                (None, Some(first)) => {
                    let ed = k.edge(first).map_err(|x| e(x.to_string()))?;
                    k.vertices[k.edges[ed].src].clone()
                }
                (None, None) => return Err(e("a cell with two empty boundaries needs `at`".into())),
            };
            let names: Vec<&str> = edges.iter().map(String::as_str).collect();
            k.path(&start, &names).map_err(|x| e(x.to_string()))
        };
        let mut nats = Vec::new();
        for c in &d.cells2 {
            let (dom, cod) = (path(&k, &c.at, &c.dom, &c.cod)?, path(&k, &c.at, &c.cod, &c.dom)?);
            k.add_cell2(&c.id, dom, cod).map_err(|x| e(x.to_string()))?;
            nats.push(self.nat(&c.nat).cloned().ok_or_else(|| e(format!("unknown nat `{}`", c.nat)))?);
        }
        for s in &d.schemes {
            let (dom, cod) = (path(&k, &s.at, &s.dom, &s.cod)?, path(&k, &s.at, &s.cod, &s.dom)?);
            let cells: Vec<&str> = s.cells.iter().map(String::as_str).collect();
            k.add_scheme(&s.id, &cells, dom, cod).map_err(|x| e(x.to_string()))?;
        }
        for c in &d.cells3 {
            k.add_cell3(&c.id, &c.dom, &c.cod).map_err(|x| e(x.to_string()))?;
        }
        DiagramLabel::new(Arc::new(k), cats, funs, nats).map_err(|x| e(x.to_string()))
    }

    fn build_deformation(&self, d: &DeformationSpec) -> Result<AnyDeformation, CliError> {
        let e = |m: String| perr("deformation", &d.id, m);
        for t in &d.terms {
            if t.order == 0 || t.order > d.order {
                return Err(e(format!("term of order {} outside 1..={}", t.order, d.order)));
            }
        }
        let terms = |part: &str, space: &Arc<CochainSpace>| -> Result<Vec<Cochain>, CliError> {
            (1..=d.order)
                .map(|n| {
                    let mut c = Cochain::zero(space.clone());
                    for t in d.terms.iter().filter(|t| t.order == n && t.part == part) {
                        add_entries(&mut c, &t.entries).map_err(|m| e(format!("order {n}, part {part}: {m}")))?;
                    }
                    Ok(c)
                })
                .collect()
        };
        let known = |parts: &[String]| -> Result<(), CliError> {
            match d.terms.iter().find(|t| !parts.contains(&t.part)) {
                Some(t) => Err(e(format!("unknown part `{}` (expected one of {})", t.part, parts.join(", ")))),
                None => Ok(()),
            }
        };
        match d.kind.as_str() {
            "category" => {
                known(&["mu".into(), "iota".into()])?;
                let cat = self.category(&d.subject).ok_or_else(|| e(format!("unknown category `{}`", d.subject)))?;
                let mu = terms("mu", &CochainSpace::category(cat, 2))?;
                let iota = terms("iota", &CochainSpace::category(cat, 0))?;
                Ok(AnyDeformation::Category(wrap(&d.id, CategoryDeformation::new(cat.clone(), mu, iota))?))
            }
            "functor" => {
                known(&["functor".into()])?;
                let f = self.functor(&d.subject).ok_or_else(|| e(format!("unknown functor `{}`", d.subject)))?;
                let side = |r: &Option<String>, cat: &Arc<LinCategory>| -> Result<CategoryDeformation, CliError> {
                    match r {
                        None => Ok(CategoryDeformation::trivial(cat.clone(), d.order)),
                        Some(id) => match self.deformation(id) {
                            Some(AnyDeformation::Category(c)) if c.order() == d.order => Ok(c.clone()),
                            Some(AnyDeformation::Category(c)) => Err(e(format!("`{id}` has order {}", c.order()))),
                            _ => Err(e(format!("`{id}` is not a category deformation declared earlier"))),
                        },
                    }
                };
                let (a, b) = (side(&d.src, f.src())?, side(&d.tgt, f.tgt())?);
                let t = terms("functor", &CochainSpace::new(f, f, 1))?;
                Ok(AnyDeformation::Functor(wrap(&d.id, FunctorDeformation::new(f.clone(), a, b, t))?))
            }
            "nat" => {
                known(&["nat".into()])?;
                let s = self.nat(&d.subject).ok_or_else(|| e(format!("unknown nat `{}`", d.subject)))?;
                let given = |r: &Option<String>| -> Result<Option<FunctorDeformation>, CliError> {
                    match r {
                        None => Ok(None),
                        Some(id) => match self.deformation(id) {
                            Some(AnyDeformation::Functor(f)) if f.order() == d.order => Ok(Some(f.clone())),
                            Some(AnyDeformation::Functor(f)) => Err(e(format!("`{id}` has order {}", f.order()))),
                            _ => Err(e(format!("`{id}` is not a functor deformation declared earlier"))),
                        },
                    }
                };
                let (fs, gs) = (given(&d.src)?, given(&d.tgt)?);
                // a missing side is trivial over the other side's categories
                let (a, b) = match (&fs, &gs) {
                    (Some(f), _) | (None, Some(f)) => (f.src().clone(), f.tgt().clone()),
                    (None, None) => (
                        CategoryDeformation::trivial(s.src().src().clone(), d.order),
                        CategoryDeformation::trivial(s.src().tgt().clone(), d.order),
                    ),
                };
                let f = match fs {
                    Some(f) => f,
                    None => wrap(&d.id, FunctorDeformation::trivial(s.src().clone(), a.clone(), b.clone()))?,
                };
                let g = match gs {
                    Some(g) => g,
                    None => wrap(&d.id, FunctorDeformation::trivial(s.tgt().clone(), a, b))?,
                };
                let t = terms("nat", &CochainSpace::new(s.src(), s.tgt(), 0))?;
                Ok(AnyDeformation::Nat(wrap(&d.id, NatDeformation::new(s.clone(), f, g, t))?))
            }
            "diagram" => {
                let l = self.diagram(&d.subject).ok_or_else(|| e(format!("unknown diagram `{}`", d.subject)))?;
                let k = &l.computad;
                let mut parts: Vec<String> = Vec::new();
                for v in &k.vertices {
                    parts.push(format!("mu:{v}"));
                    parts.push(format!("iota:{v}"));
                }
                parts.extend(k.edges.iter().map(|x| format!("edge:{}", x.id)));
                parts.extend(k.cells2.iter().map(|x| format!("cell:{}", x.id)));
                known(&parts)?;
                let mut vertices = Vec::new();
                for (v, cat) in k.vertices.iter().zip(&l.categories) {
                    let mu = terms(&format!("mu:{v}"), &CochainSpace::category(cat, 2))?;
                    let iota = terms(&format!("iota:{v}"), &CochainSpace::category(cat, 0))?;
                    vertices.push(wrap(&d.id, CategoryDeformation::new(cat.clone(), mu, iota))?);
                }
                let edges = k
                    .edges
                    .iter()
                    .zip(&l.functors)
                    .map(|(x, f)| terms(&format!("edge:{}", x.id), &CochainSpace::new(f, f, 1)))
                    .collect::<Result<Vec<_>, _>>()?;
                let cells = k
                    .cells2
                    .iter()
                    .zip(&l.nats)
                    .map(|(x, s)| terms(&format!("cell:{}", x.id), &CochainSpace::new(s.src(), s.tgt(), 0)))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(AnyDeformation::Diagram(wrap(&d.id, DiagramDeformation::new(l.clone(), vertices, edges, cells))?))
            }
            other => Err(e(format!("unknown kind `{other}` (expected category, functor, nat or diagram)"))),
        }
    }
}

fn wrap<T>(id: &str, r: Result<T, crate::deform::DeformError>) -> Result<T, CliError> {
    r.map_err(|x| perr("deformation", id, x))
}

/// Adds the listed values to `c`.
fn add_entries(c: &mut Cochain, entries: &[EntrySpec]) -> Result<(), String> {
    let space = c.space().clone();
    let (a, b) = (space.src().clone(), space.tgt().clone());
    let (f, g) = (space.f().clone(), space.g().clone());
    for en in entries {
        let (objs, idx) = if space.degree() == 0 {
            if !en.args.is_empty() {
                return Err("a degree-0 value takes `object`, not `args`".into());
            }
            let o = en.object.as_ref().ok_or("a degree-0 value needs `object`")?;
            (vec![object(&a, o)?], Vec::new())
        } else {
            if en.object.is_some() || en.args.len() != space.degree() {
                return Err(format!("expected {} arguments", space.degree()));
            }
            let mut objs = Vec::new();
            let mut idx = Vec::new();
            for n in &en.args {
                let (x, y, i) = find_arrow(&a, n).ok_or_else(|| format!("unknown arrow `{n}`"))?;
                if let Some(&last) = objs.last() {
                    if last != x {
                        return Err(format!("arguments {:?} are not composable", en.args));
                    }
                } else {
                    objs.push(x);
                }
                objs.push(y);
                idx.push(i);
            }
            (objs, idx)
        };
        let (x0, xn) = (objs[0], *objs.last().expect("nonempty"));
        let v = sparse_in(&b, f.obj(x0), g.obj(xn), &en.value)?;
        let cur = c.at(&objs, &idx);
        let sum: Vec<Scalar> = cur.iter().zip(&v).map(|(p, q)| p + q).collect();
        c.set(&objs, &idx, &sum).map_err(|x| x.to_string())?;
    }
    Ok(())
}

/// Sparse entries of a cochain, in storage order.
pub fn entries_of(c: &Cochain) -> Vec<EntrySpec> {
    let space = c.space();
    let (a, b) = (space.src(), space.tgt());
    let (f, g) = (space.f(), space.g());
    let mut grouped: Vec<((Vec<usize>, Vec<usize>), Vec<Scalar>)> = Vec::new();
    for (objs, idx, k, v) in c.entries() {
        let key = (objs, idx);
        if grouped.last().map(|(k0, _)| k0 != &key).unwrap_or(true) {
            let (x0, xn) = (key.0[0], *key.0.last().expect("nonempty"));
            grouped.push((key.clone(), b.zero_vec(f.obj(x0), g.obj(xn))));
        }
        grouped.last_mut().expect("just pushed").1[k] = v;
    }
    grouped
        .into_iter()
        .map(|((objs, idx), v)| {
            let (x0, xn) = (objs[0], *objs.last().expect("nonempty"));
            let value = sparse_of(b, f.obj(x0), g.obj(xn), &v);
            if space.degree() == 0 {
                EntrySpec { args: Vec::new(), object: Some(a.object_name(x0).to_string()), value }
            } else {
                let args = objs.windows(2).zip(&idx).map(|(w, &i)| a.basis(w[0], w[1])[i].clone()).collect();
                EntrySpec { args, object: None, value }
            }
        })
        .collect()
}

fn term_specs(part: &str, cs: &[Cochain]) -> Vec<TermSpec> {
    cs.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(n, c)| TermSpec { order: n + 1, part: part.to_string(), entries: entries_of(c) })
        .collect()
}

fn spec(id: &str, kind: &str, subject: &str, order: usize, terms: Vec<TermSpec>) -> DeformationSpec {
    DeformationSpec { id: id.into(), kind: kind.into(), subject: subject.into(), order, src: None, tgt: None, terms }
}

impl Project {
    fn category_id(&self, c: &Arc<LinCategory>) -> String {
        self.categories
            .iter()
            .find(|(_, x)| crate::lincat::same_category(x, c))
            .map_or_else(|| c.name().to_string(), |(k, _)| k.clone())
    }

    /// Declarations reproducing `d` under the id `id`; boundary deformations
    /// get ids derived from it and come first.
    pub fn deformation_specs(&self, id: &str, subject: &str, d: &AnyDeformation) -> Vec<DeformationSpec> {
        match d {
            AnyDeformation::Category(c) => {
                let mut t = term_specs("mu", c.mu_terms());
                t.extend(term_specs("iota", c.iota_terms()));
                vec![spec(id, "category", subject, c.order(), t)]
            }
            AnyDeformation::Functor(f) => {
                let (a, b) = (format!("{id}:src"), format!("{id}:tgt"));
                let mut out = self.deformation_specs(&a, &self.category_id(f.src().base()), &AnyDeformation::Category(f.src().clone()));
                out.extend(self.deformation_specs(&b, &self.category_id(f.tgt().base()), &AnyDeformation::Category(f.tgt().clone())));
                let mut s = spec(id, "functor", subject, f.order(), term_specs("functor", f.terms()));
                s.src = Some(a);
                s.tgt = Some(b);
                out.push(s);
                out
            }
            AnyDeformation::Nat(n) => {
                let (a, b) = (format!("{id}:src"), format!("{id}:tgt"));
                let fid = |f: &Arc<LinFunctor>| {
                    self.functors
                        .iter()
                        .find(|(_, x)| crate::lincat::same_functor(x, f) && x.name() == f.name())
                        .map_or_else(|| f.name().to_string(), |(k, _)| k.clone())
                };
                let mut out = self.deformation_specs(&a, &fid(n.nat().src()), &AnyDeformation::Functor(n.src().clone()));
                out.extend(self.deformation_specs(&b, &fid(n.nat().tgt()), &AnyDeformation::Functor(n.tgt().clone())));
                let mut s = spec(id, "nat", subject, n.order(), term_specs("nat", n.terms()));
                s.src = Some(a);
                s.tgt = Some(b);
                out.push(s);
                out
            }
            AnyDeformation::Diagram(dd) => {
                let k = &dd.label().computad;
                let mut t = Vec::new();
                for (v, c) in k.vertices.iter().zip(dd.vertices()) {
                    t.extend(term_specs(&format!("mu:{v}"), c.mu_terms()));
                    t.extend(term_specs(&format!("iota:{v}"), c.iota_terms()));
                }
                for (i, x) in k.edges.iter().enumerate() {
                    t.extend(term_specs(&format!("edge:{}", x.id), dd.edge_terms(i)));
                }
                for (i, x) in k.cells2.iter().enumerate() {
                    t.extend(term_specs(&format!("cell:{}", x.id), dd.cell_terms(i)));
                }
                vec![spec(id, "diagram", subject, dd.order(), t)]
            }
        }
    }
}

