use std::sync::Arc;

use crate::computad::{compose_along, enumerate_sequentializations, DiagramLabel};
use crate::defcomplex::{build_complex, ComplexKind, ComplexOptions, Subject};
use crate::deform::{
    check_equivalence_first_order, classify_first_order, extend_order, normalize_category_units,
    normalize_functor_units, normalize_nat_units, obstruction, CategoryDeformation, Deformable, Extension,
    FirstOrderEquivalence, FunctorDeformation, NatDeformation, Obstruction,
};
use crate::hochschild::Cochain;
use crate::report::Report;

use super::project::{entries_of, ScalarSpec, SparseVec};
use super::{AnyDeformation, CliError, Command, Flags, Outcome, Project};

/// Upper bound on the firing orders compared by `compose`.
const SEQUENTIALIZATION_LIMIT: usize = 1000;

pub fn run(cmd: &Command, p: &Project, flags: &Flags) -> Result<Outcome, CliError> {
    let mut o = Outcome::new(cmd.echo());
    let opts = flags.complex_options(p);
    match cmd {
        Command::Validate => validate(p, &mut o),
        Command::Compose { scheme } => compose(p, scheme, &mut o)?,
        Command::Cohomology { subject, kind, degrees } => cohomology(p, subject, kind, degrees, &opts, flags.matrices, &mut o)?,
        Command::Classify { subject, kind } => classify(p, subject, kind.as_deref(), &opts, &mut o)?,
        Command::Obstruct { deformation, order } => obstruct(p, deformation, *order, &opts, &mut o)?,
        Command::Extend { deformation, order } => extend(p, deformation, *order, &opts, &mut o)?,
        Command::Equiv { first, second } => equiv(p, first, second, &mut o)?,
        Command::NormalizeUnits { deformation } => normalize(p, deformation, &mut o)?,
    }
    Ok(o)
}

fn show_value(v: &SparseVec) -> String {
    if v.is_empty() {
        return "0".into();
    }
    let term = |(name, c): &(String, ScalarSpec)| match c {
        ScalarSpec::Int(1) => name.clone(),
        ScalarSpec::Int(i) => format!("{i}·{name}"),
        ScalarSpec::Text(t) => format!("({t})·{name}"),
    };
    v.iter().map(term).collect::<Vec<_>>().join(" + ")
}

/// One line per nonzero value of `c`.
fn show_cochain(c: &Cochain, indent: &str) -> Vec<String> {
    entries_of(c)
        .into_iter()
        .map(|e| {
            let at = match &e.object {
                Some(x) => x.clone(),
                None => format!("({})", e.args.join(", ")),
            };
            format!("{indent}{at} ↦ {}", show_value(&e.value))
        })
        .collect()
}

fn show_parts(labels: &[String], parts: &[Option<Cochain>], indent: &str) -> Vec<String> {
    let mut out = Vec::new();
    for (l, c) in labels.iter().zip(parts) {
        if let Some(c) = c.as_ref().filter(|c| !c.is_zero()) {
            out.push(format!("{indent}{l}:"));
            out.extend(show_cochain(c, &format!("{indent}  ")));
        }
    }
    out
}

fn validate(p: &Project, o: &mut Outcome) {
    let mut rep = Report::new();
    for (id, c) in &p.categories {
        rep.absorb(&format!("category {id}"), c.validate());
    }
    for (id, f) in &p.functors {
        rep.absorb(&format!("functor {id}"), f.validate());
    }
    for (id, s) in &p.nats {
        rep.absorb(&format!("nat {id}"), s.validate());
    }
    for (id, l) in &p.diagrams {
        rep.absorb(&format!("diagram {id}"), l.validate());
    }
    for (id, d) in &p.deformations {
        rep.absorb(&format!("deformation {id}"), d.validate());
    }
    o.result("categories", p.categories.len() as i64);
    o.result("functors", p.functors.len() as i64);
    o.result("nats", p.nats.len() as i64);
    o.result("diagrams", p.diagrams.len() as i64);
    o.result("deformations", p.deformations.len() as i64);
    o.result("valid", rep.is_ok());
    for f in rep.findings {
        o.fail(f);
    }
}

/// `diagram/scheme`, or a scheme id found in exactly one diagram.
fn find_scheme<'a>(p: &'a Project, name: &str) -> Result<(&'a str, &'a Arc<DiagramLabel>, usize), CliError> {
    if let Some((d, s)) = name.split_once('/') {
        let (id, l) = p
            .diagrams
            .iter()
            .find(|(k, _)| k == d)
            .ok_or_else(|| CliError::Usage(format!("unknown diagram `{d}`")))?;
        let i = l.computad.scheme(s).map_err(|e| CliError::Usage(e.to_string()))?;
        return Ok((id.as_str(), l, i));
    }
    let hits: Vec<_> = p
        .diagrams
        .iter()
        .filter_map(|(id, l)| l.computad.scheme(name).ok().map(|i| (id.as_str(), l, i)))
        .collect();
    match hits.as_slice() {
        [one] => Ok(*one),
        [] => Err(CliError::Usage(format!("no diagram has a scheme `{name}`"))),
        _ => Err(CliError::Usage(format!("scheme `{name}` is ambiguous; write diagram/{name}"))),
    }
}

fn compose(p: &Project, name: &str, o: &mut Outcome) -> Result<(), CliError> {
    let (did, l, s) = find_scheme(p, name)?;
    let k = &l.computad;
    let scheme = &k.schemes[s];
    let seqs = enumerate_sequentializations(k, scheme, SEQUENTIALIZATION_LIMIT);
    if seqs.is_empty() {
        o.fail(format!("scheme {} has no sequentialization", scheme.id));
        return Ok(());
    }
    let composites = seqs.iter().map(|q| compose_along(l, q)).collect::<Result<Vec<_>, _>>()?;
    let first = &composites[0];
    let agree = composites.iter().all(|c| c.components() == first.components());
    o.result("diagram", did);
    o.result("scheme", scheme.id.as_str());
    o.result("sequentializations", seqs.len() as i64);
    o.result("agree", agree);
    if !agree {
        o.fail("composites differ between sequentializations");
    }
    let (a, b) = (first.src().src(), first.src().tgt());
    let mut comps = toml::Table::new();
    o.details.push(format!("composite {} ⇒ {}:", scheme.dom.describe(k), scheme.cod.describe(k)));
    for x in 0..a.n_objects() {
        let (fx, gx) = (first.src().obj(x), first.tgt().obj(x));
        let v = super::project::sparse_of(b, fx, gx, first.component(x));
        o.details.push(format!("  {} ↦ {}", a.object_name(x), b.describe(fx, gx, first.component(x))));
        comps.insert(a.object_name(x).to_string(), sparse_value(&v));
    }
    o.result("components", comps);
    Ok(())
}

fn sparse_value(v: &SparseVec) -> toml::Value {
    let pairs = v
        .iter()
        .map(|(n, c)| {
            let c = match c {
                ScalarSpec::Int(i) => toml::Value::Integer(*i),
                ScalarSpec::Text(t) => toml::Value::String(t.clone()),
            };
            toml::Value::Array(vec![toml::Value::String(n.clone()), c])
        })
        .collect();
    toml::Value::Array(pairs)
}

/// `lo:hi`, a single degree, or a comma-separated list.
fn parse_degrees(s: &str) -> Result<Vec<i64>, CliError> {
    let bad = || CliError::Usage(format!("degrees `{s}` are not `n`, `lo:hi` or `a,b,…`"));
    if let Some((a, b)) = s.split_once(':') {
        let (lo, hi): (i64, i64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
        if lo > hi {
            return Err(bad());
        }
        return Ok((lo..=hi).collect());
    }
    s.split(',').map(|t| t.trim().parse().map_err(|_| bad())).collect()
}

fn cohomology(
    p: &Project,
    subject: &str,
    kind: &str,
    degrees: &str,
    opts: &ComplexOptions,
    matrices: bool,
    o: &mut Outcome,
) -> Result<(), CliError> {
    let kind: ComplexKind = kind.parse().map_err(|e: crate::defcomplex::DefcomplexError| CliError::Usage(e.to_string()))?;
    let degrees = parse_degrees(degrees)?;
    let unknown = |what: &str, id: &str| CliError::Usage(format!("unknown {what} `{id}`"));
    let pair;
    let sub = match kind {
        ComplexKind::Category => Subject::Category(p.category(subject).ok_or_else(|| unknown("category", subject))?),
        ComplexKind::Functor => Subject::Functor(p.functor(subject).ok_or_else(|| unknown("functor", subject))?),
        ComplexKind::Pair => {
            let (f, g) = subject
                .split_once(',')
                .ok_or_else(|| CliError::Usage("a pair subject is written `F,G`".into()))?;
            pair = (
                p.functor(f.trim()).ok_or_else(|| unknown("functor", f))?,
                p.functor(g.trim()).ok_or_else(|| unknown("functor", g))?,
            );
            Subject::Pair(pair.0, pair.1)
        }
        ComplexKind::Nat => Subject::Nat(p.nat(subject).ok_or_else(|| unknown("nat", subject))?),
        ComplexKind::Identity3 => Subject::Identity3(p.nat(subject).ok_or_else(|| unknown("nat", subject))?),
        ComplexKind::Diagram => Subject::Diagram(p.diagram(subject).ok_or_else(|| unknown("diagram", subject))?),
    };
    // without an explicit window, cover the requested degrees
    let mut opts = *opts;
    if opts.window.is_none() {
        let (lo, _) = kind.default_window();
        let (a, b) = (degrees.iter().min(), degrees.iter().max());
        if let (Some(&a), Some(&b)) = (a, b) {
            opts.window = Some((lo.min(a), b + 1));
        }
    }
    let cx = build_complex(sub, &opts)?;
    let dd = cx.verify_d_squared();
    o.result("kind", kind.to_string());
    let (lo, hi) = cx.window();
    o.result("window", toml::Value::Array(vec![lo.into(), hi.into()]));
    o.result("d_squared_zero", dd.is_ok());
    for f in dd.findings {
        o.fail(format!("d² ≠ 0: {f}"));
    }
    let mut dims = toml::Table::new();
    for n in degrees {
        let h = cx.cohomology_dim(n)?;
        o.details.push(format!("H^{n} = {h}"));
        dims.insert(n.to_string(), (h as i64).into());
    }
    o.result("dimensions", dims);
    o.details.push(cx.report(false).trim_end().to_string());
    if matrices {
        o.matrices = Some(cx.report(true));
    }
    Ok(())
}

/// The kind of whatever `id` names.
fn infer_kind(p: &Project, id: &str) -> Result<ComplexKind, CliError> {
    if p.category(id).is_some() {
        Ok(ComplexKind::Category)
    } else if p.functor(id).is_some() {
        Ok(ComplexKind::Functor)
    } else if p.nat(id).is_some() {
        Ok(ComplexKind::Nat)
    } else if p.diagram(id).is_some() {
        Ok(ComplexKind::Diagram)
    } else {
        Err(CliError::Usage(format!("`{id}` is not a category, functor, nat or diagram")))
    }
}

fn classify(p: &Project, subject: &str, kind: Option<&str>, opts: &ComplexOptions, o: &mut Outcome) -> Result<(), CliError> {
    let kind = match kind {
        Some(k) => k.parse().map_err(|e: crate::defcomplex::DefcomplexError| CliError::Usage(e.to_string()))?,
        None => infer_kind(p, subject)?,
    };
    let unknown = |what: &str| CliError::Usage(format!("unknown {what} `{subject}`"));
    // a representative becomes an order-1 deformation pushed onto the
    // undeformed structure
    let (cl, zero): (_, AnyDeformation) = match kind {
        ComplexKind::Category => {
            let c = p.category(subject).ok_or_else(|| unknown("category"))?;
            (
                classify_first_order(Subject::Category(c), opts)?,
                AnyDeformation::Category(CategoryDeformation::trivial(c.clone(), 0)),
            )
        }
        ComplexKind::Functor => {
            let f = p.functor(subject).ok_or_else(|| unknown("functor"))?;
            (classify_first_order(Subject::Functor(f), opts)?, AnyDeformation::Functor(trivial_functor(f)?))
        }
        ComplexKind::Nat => {
            let s = p.nat(subject).ok_or_else(|| unknown("nat"))?;
            let (f, g) = (trivial_functor(s.src())?, trivial_functor(s.tgt())?);
            (
                classify_first_order(Subject::Nat(s), opts)?,
                AnyDeformation::Nat(NatDeformation::trivial(s.clone(), f, g)?),
            )
        }
        ComplexKind::Diagram => {
            let l = p.diagram(subject).ok_or_else(|| unknown("diagram"))?;
            (
                classify_first_order(Subject::Diagram(l), opts)?,
                AnyDeformation::Diagram(crate::deform::DiagramDeformation::trivial(l.clone(), 0)),
            )
        }
        other => return Err(CliError::Usage(format!("{other} complexes do not classify deformations"))),
    };
    o.result("kind", kind.to_string());
    o.result("degree", cl.degree);
    o.result("dimension", cl.dimension as i64);
    o.details.push(format!("first-order classes: H^{} has dimension {}", cl.degree, cl.dimension));
    for (i, parts) in cl.representatives.iter().enumerate() {
        let id = format!("{subject}.class{}", i + 1);
        o.details.push(format!("representative {id}:"));
        o.details.extend(show_parts(&cl.labels, parts, "  "));
        let d = match &zero {
            AnyDeformation::Category(z) => AnyDeformation::Category(z.push_parts(parts)?),
            AnyDeformation::Functor(z) => AnyDeformation::Functor(z.push_parts(parts)?),
            AnyDeformation::Nat(z) => AnyDeformation::Nat(z.push_parts(parts)?),
            AnyDeformation::Diagram(z) => AnyDeformation::Diagram(z.push_parts(parts)?),
        };
        let rep = d.validate();
        if !rep.is_ok() {
            o.fail(format!("representative {id} does not validate: {rep}"));
        }
        o.deformations.extend(p.deformation_specs(&id, subject, &d));
    }
    Ok(())
}

fn trivial_functor(f: &Arc<crate::lincat::LinFunctor>) -> Result<FunctorDeformation, CliError> {
    Ok(FunctorDeformation::trivial(
        f.clone(),
        CategoryDeformation::trivial(f.src().clone(), 0),
        CategoryDeformation::trivial(f.tgt().clone(), 0),
    )?)
}

fn deformation<'a>(p: &'a Project, id: &str) -> Result<&'a AnyDeformation, CliError> {
    p.deformation(id).ok_or_else(|| CliError::Usage(format!("unknown deformation `{id}`")))
}

fn subject_of<'a>(p: &'a Project, id: &str) -> &'a str {
    p.file.deformations.iter().find(|d| d.id == id).map_or("", |d| d.subject.as_str())
}

fn report_obstruction(ob: &Obstruction, o: &mut Outcome) {
    let zero = ob.is_zero();
    o.result("order", ob.order as i64);
    o.result("degree", ob.degree);
    o.result("cocycle_zero", zero);
    let nz: Vec<String> = ob.nonzero_summands().into_iter().map(String::from).collect();
    o.result("nonzero_summands", nz);
    if !zero {
        o.details.push(format!("obstruction at order {} (degree {}):", ob.order, ob.degree));
        o.details.extend(show_parts(&ob.labels, &ob.parts, "  "));
    }
}

fn obstruct_as<D: Deformable>(d: &D, n: usize, opts: &ComplexOptions, o: &mut Outcome) -> Result<(), CliError> {
    let ob = obstruction(d, n, opts)?;
    report_obstruction(&ob, o);
    // whether the class vanishes needs normalized identities
    let base = d.truncate(n - 1);
    if base.has_trivial_units() {
        let ext = matches!(extend_order(&base, n, opts)?, Extension::Extended(_));
        o.result("extendable", ext);
    } else {
        o.details.push("identities are deformed; normalize units to decide extendability".into());
    }
    // the given order-n coefficients, if any, must solve their equation
    if d.order() >= n {
        let t = d.truncate(n);
        let labels: Vec<String> = t.complex(opts)?.group(ob.degree)?.iter().map(|s| s.label.clone()).collect();
        let res = t.top_residual()?;
        let bad: Vec<String> = labels
            .iter()
            .zip(&res)
            .filter(|(_, r)| r.as_ref().is_some_and(|c| !c.is_zero()))
            .map(|(l, _)| l.clone())
            .collect();
        o.result("residual_zero", bad.is_empty());
        if !bad.is_empty() {
            o.details.push(format!("residual of the order-{n} coefficients:"));
            o.details.extend(show_parts(&labels, &res, "  "));
            o.fail(format!("order {n} does not satisfy its equations: nonzero in {}", bad.join(", ")));
        }
    }
    Ok(())
}

fn obstruct(p: &Project, id: &str, n: usize, opts: &ComplexOptions, o: &mut Outcome) -> Result<(), CliError> {
    match deformation(p, id)? {
        AnyDeformation::Category(d) => obstruct_as(d, n, opts, o),
        AnyDeformation::Functor(d) => obstruct_as(d, n, opts, o),
        AnyDeformation::Nat(d) => obstruct_as(d, n, opts, o),
        AnyDeformation::Diagram(d) => obstruct_as(d, n, opts, o),
    }
}

/// Extends order by order; `None` once an order is obstructed, with the
/// class reported into `o`.
fn extend_to<D: Deformable>(d: &D, to: usize, opts: &ComplexOptions, o: &mut Outcome) -> Result<Option<D>, CliError> {
    if to <= d.order() {
        return Err(CliError::Usage(format!("the deformation already has order {}", d.order())));
    }
    let mut cur = d.clone();
    for n in d.order() + 1..=to {
        match extend_order(&cur, n, opts)? {
            Extension::Extended(next) => cur = next,
            Extension::Obstructed(class) => {
                report_obstruction(&class.obstruction, o);
                o.fail(format!(
                    "obstructed at order {n}: nonzero class in {}",
                    class.obstruction.nonzero_summands().join(", ")
                ));
                return Ok(None);
            }
        }
    }
    Ok(Some(cur))
}

fn extend(p: &Project, id: &str, to: usize, opts: &ComplexOptions, o: &mut Outcome) -> Result<(), CliError> {
    let ext = match deformation(p, id)? {
        AnyDeformation::Category(d) => extend_to(d, to, opts, o)?.map(AnyDeformation::Category),
        AnyDeformation::Functor(d) => extend_to(d, to, opts, o)?.map(AnyDeformation::Functor),
        AnyDeformation::Nat(d) => extend_to(d, to, opts, o)?.map(AnyDeformation::Nat),
        AnyDeformation::Diagram(d) => extend_to(d, to, opts, o)?.map(AnyDeformation::Diagram),
    };
    o.result("extended", ext.is_some());
    if let Some(d) = ext {
        let new_id = format!("{id}@{to}");
        o.result("id", new_id.as_str());
        o.result("order", to as i64);
        let specs = p.deformation_specs(&new_id, subject_of(p, id), &d);
        if let Some(main) = specs.last() {
            o.details.push(format!("{new_id}:"));
            let from = p.deformation(id).map_or(0, AnyDeformation::order) + 1;
            for n in from..=to {
                let terms: Vec<_> = main.terms.iter().filter(|t| t.order == n).collect();
                if terms.is_empty() {
                    o.details.push(format!("  order {n}: zero"));
                }
                for t in terms {
                    o.details.push(format!("  order {n} {}:", t.part));
                    for e in &t.entries {
                        let at = e.object.clone().unwrap_or_else(|| format!("({})", e.args.join(", ")));
                        o.details.push(format!("    {at} ↦ {}", show_value(&e.value)));
                    }
                }
            }
        }
        o.deformations.extend(specs);
    }
    Ok(())
}

fn equiv_as<D: FirstOrderEquivalence>(a: &D, b: &D, o: &mut Outcome) -> Result<(), CliError> {
    let w = check_equivalence_first_order(a, b)?;
    o.result("equivalent", w.is_some());
    if w.is_none() {
        o.fail("no first-order equivalence exists");
    }
    Ok(())
}

fn equiv(p: &Project, a: &str, b: &str, o: &mut Outcome) -> Result<(), CliError> {
    match (deformation(p, a)?, deformation(p, b)?) {
        (AnyDeformation::Category(x), AnyDeformation::Category(y)) => equiv_as(x, y, o),
        (AnyDeformation::Functor(x), AnyDeformation::Functor(y)) => equiv_as(x, y, o),
        (AnyDeformation::Nat(x), AnyDeformation::Nat(y)) => equiv_as(x, y, o),
        (AnyDeformation::Diagram(_), AnyDeformation::Diagram(_)) => {
            Err(CliError::Usage("equivalence is decided for category, functor and nat deformations".into()))
        }
        (x, y) => Err(CliError::Usage(format!("cannot compare a {} deformation with a {} deformation", x.kind(), y.kind()))),
    }
}

fn normalize(p: &Project, id: &str, o: &mut Outcome) -> Result<(), CliError> {
    let nd = match deformation(p, id)? {
        AnyDeformation::Category(d) => AnyDeformation::Category(normalize_category_units(d)?.0),
        AnyDeformation::Functor(d) => AnyDeformation::Functor(normalize_functor_units(d)?.0),
        AnyDeformation::Nat(d) => AnyDeformation::Nat(normalize_nat_units(d)?.0),
        AnyDeformation::Diagram(_) => {
            return Err(CliError::Usage("identities are normalized for category, functor and nat deformations".into()))
        }
    };
    let new_id = format!("{id}.normalized");
    o.result("id", new_id.as_str());
    o.result("witness_checked", true);
    o.deformations.extend(p.deformation_specs(&new_id, subject_of(p, id), &nd));
    Ok(())
}
