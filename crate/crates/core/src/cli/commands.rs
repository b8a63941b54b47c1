use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use super::trace_spec::{build_trace, BuiltTrace, SeedSpec, TraceSpec};
use super::{load_category, read, Command, Emitter, RunConfig, EXIT_INADMISSIBLE, EXIT_OK};
use crate::category::{Category, ObjectRef};
use crate::diagram::{close, parse_diagram_file, signature_name, Diagram, DiagramFile};
use crate::error::{Error, Result};
use crate::exact::Scalar;
use crate::ideal::{is_projective, membership, IdealSpec, WitnessForm};
use crate::invariant::{edge_colors, invariance_audit, invariant, trivalent_pair_check, Variant};
use crate::modified::{compute_a, modified_dim, simple_projectives, slope_table, well_definedness_audit};
use crate::trace::{solve_ambidextrous, Mode, Side};

pub(super) fn dispatch(cfg: &RunConfig, em: &mut Emitter) -> Result<i32> {
    match &cfg.command {
        Command::Validate => unreachable!("handled by run"),
        Command::Eval { diagram, name } => eval(cfg, em, diagram, name.as_deref()),
        Command::SolveAmbi { objects, mode, middles } => {
            let c = load_category(cfg, None)?;
            let objs = objects_of(&c, objects)?;
            let mids = objects_of(&c, middles)?;
            let mode = Mode::parse(mode)?;
            let sols = solve_ambidextrous(&c, &objs, mode, &mids)?;
            em.record("SOLUTIONS", &[("mode", mode.to_string()), ("dim", sols.len().to_string())]);
            for (i, s) in sols.iter().enumerate() {
                em.record("FORM", &[("index", i.to_string()), ("forms", s.describe(&c))]);
            }
            Ok(EXIT_OK)
        }
        Command::Ideal { spec, test } => {
            let c = load_category(cfg, None)?;
            let spec = IdealSpec::parse(&c, spec)?;
            for u in objects_of(&c, test)? {
                let mut fields = vec![("object", c.name(&u)), ("spec", spec.describe(&c))];
                let found = match &spec {
                    IdealSpec::Proj => {
                        let p = is_projective(&c, &u)?.is_some();
                        fields.push(("witness", if p { "splitting of a free cover" } else { "none" }.into()));
                        p
                    }
                    _ => match membership(&c, &u, &spec)? {
                        Some(w) => {
                            let form = match w.form {
                                WitnessForm::Left => format!("f in End({}⊗({})*)", c.name(&u), c.name(&w.full_generator())),
                                WitnessForm::Right => format!("f in End(({})*⊗{})", c.name(&w.full_generator()), c.name(&u)),
                            };
                            fields.push(("witness", format!("{} form, {form}", w.form)));
                            true
                        }
                        None => {
                            fields.push(("witness", "none".into()));
                            false
                        }
                    },
                };
                fields.insert(1, ("status", if found { "member" } else { "not found" }.into()));
                em.record("MEMBER", &fields);
            }
            Ok(EXIT_OK)
        }
        Command::Dims { seed, side, objects, middles, unchecked } => {
            let c = load_category(cfg, None)?;
            let t = seed_trace(&c, seed, side, middles, *unchecked)?;
            let mut code = EXIT_OK;
            for v in objects_of(&c, objects)? {
                match modified_dim(&c, t.as_dyn(), &v) {
                    Ok(d) => em.record("DIM", &[("object", c.name(&v)), ("d", d.to_string())]),
                    Err(e @ (Error::NotAdmissible(_) | Error::NotInDomain(_))) => {
                        em.record("DIM", &[("object", c.name(&v)), ("status", "not admissible".into()), ("detail", e.to_string())]);
                        code = EXIT_INADMISSIBLE;
                    }
                    Err(e) => return Err(e),
                }
            }
            Ok(code)
        }
        Command::Slope { seed, side, objects, middles, triples } => {
            let c = load_category(cfg, None)?;
            let t = seed_trace(&c, seed, side, middles, false)?;
            let objs = if objects.is_empty() {
                simple_projectives(&c, &c.named_objects())?
            } else {
                objects_of(&c, objects)?
            };
            let triples = match triples {
                Some(s) => parse_triples(&c, s)?,
                None => Vec::new(),
            };
            let (table, report) = slope_table(&c, t.as_dyn(), &objs, &triples)?;
            for e in &table.entries {
                em.record(
                    "SLOPE",
                    &[
                        ("object", c.name(&e.object)),
                        ("d", e.d.to_string()),
                        ("d_dual", e.d_dual.to_string()),
                        ("slope", e.slope.to_string()),
                    ],
                );
            }
            Ok(status(em.report(&report)))
        }
        Command::Invariant { trace, presentation, variant } => {
            let mut files = Files::default();
            let (path, name) = split_ref(presentation)?;
            let c = files.category(cfg, &path)?;
            let t = TraceSpec::parse(trace)?.build(&c)?;
            let d = files.load(&c, &path)?.get(&name)?.clone();
            let variant = Variant::parse(variant)?;
            let a = a_set(&c, &t, variant, std::slice::from_ref(&d))?;
            let v = invariant(&c, t.as_dyn(), &d, variant, a.as_deref())?;
            em.record(
                "INVARIANT",
                &[("presentation", presentation.clone()), ("variant", variant.to_string()), ("value", v.to_string())],
            );
            Ok(EXIT_OK)
        }
        Command::Audit { trace, presentations, variant, well_defined, trials } => {
            if presentations.is_empty() == well_defined.is_empty() {
                return Err(Error::Validation("give exactly one of --presentations and --well-defined".into()));
            }
            let mut files = Files::default();
            let c = match presentations.first() {
                Some(p) => files.category(cfg, &split_ref(p)?.0)?,
                None => load_category(cfg, None)?,
            };
            let t = TraceSpec::parse(trace)?.build(&c)?;
            let mut clean = true;
            if !presentations.is_empty() {
                let mut ds = Vec::new();
                for p in presentations {
                    let (path, name) = split_ref(p)?;
                    ds.push(files.load(&c, &path)?.get(&name)?.clone());
                }
                let variant = Variant::parse(variant)?;
                let a = a_set(&c, &t, variant, &ds)?;
                clean &= em.report(&invariance_audit(&c, t.as_dyn(), &ds, variant, a.as_deref())?);
            }
            if !well_defined.is_empty() {
                let ext = t
                    .extended()
                    .ok_or_else(|| Error::Validation("well-definedness audits need a seeded trace".into()))?;
                for u in objects_of(&c, well_defined)? {
                    clean &= em.report(&well_definedness_audit(&c, ext, &u, *trials)?);
                }
            }
            Ok(status(clean))
        }
        Command::TrivalentCheck { diagram, graphs, b, dims, trace } => {
            let dims: Vec<&String> = dims.iter().filter(|s| !s.trim().is_empty()).collect();
            let mut files = Files::default();
            let c = files.category(cfg, diagram)?;
            let file = files.load(&c, diagram)?.clone();
            let graphs: Vec<Vec<Diagram>> = graphs
                .split(';')
                .filter(|g| !g.trim().is_empty())
                .map(|g| {
                    g.split(',')
                        .map(str::trim)
                        .filter(|n| !n.is_empty())
                        .map(|n| file.get(n).cloned())
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<_>>()?;
            let b = objects_of(&c, b)?;
            let t = trace.as_deref().map(|s| TraceSpec::parse(s)?.build(&c)).transpose()?;
            let d: Vec<(ObjectRef, Scalar)> = if b.is_empty() {
                Vec::new()
            } else if dims.is_empty() {
                let t = t.as_ref().ok_or_else(|| Error::Validation("give --dims or --trace".into()))?;
                let mut d = Vec::new();
                for v in &b {
                    d.push((v.clone(), modified_dim(&c, t.as_dyn(), v)?));
                    d.push((v.dual(), modified_dim(&c, t.as_dyn(), &v.dual())?));
                }
                d
            } else if dims.len() == b.len() {
                b.iter()
                    .zip(dims)
                    .map(|(v, s)| Ok((v.clone(), c.field().parse_literal(s)?)))
                    .collect::<Result<_>>()?
            } else {
                return Err(Error::Validation(format!("{} dimensions for {} objects of B", dims.len(), b.len())));
            };
            let all: Vec<Diagram> = graphs.iter().flatten().cloned().collect();
            let a = match &t {
                Some(t) => a_set(&c, t, Variant::AColored, &all)?,
                None => None,
            };
            let pair = t.as_ref().zip(a.as_deref()).map(|(t, a)| (t.as_dyn(), a));
            Ok(status(em.report(&trivalent_pair_check(&c, &b, &d, &graphs, pair)?)))
        }
    }
}

fn status(clean: bool) -> i32 {
    if clean { EXIT_OK } else { EXIT_INADMISSIBLE }
}

fn objects_of(c: &Category, names: &[String]) -> Result<Vec<ObjectRef>> {
    names.iter().filter(|n| !n.trim().is_empty()).map(|n| c.object(n)).collect()
}

fn seed_trace(c: &Category, seed: &str, side: &str, middles: &[String], unchecked: bool) -> Result<BuiltTrace> {
    let mids = objects_of(c, middles)?;
    build_trace(c, &SeedSpec::parse(seed)?, Side::parse(side)?, &mids, unchecked)
}

/// `U<V⊗W;…`.
fn parse_triples(c: &Category, text: &str) -> Result<Vec<(ObjectRef, ObjectRef, ObjectRef)>> {
    text.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            let bad = || Error::Validation(format!("bad triple {s:?}; expected U<V⊗W"));
            let (u, vw) = s.split_once('<').ok_or_else(bad)?;
            let (v, w) = vw.split_once(['⊗', '&']).ok_or_else(bad)?;
            Ok((c.object(u)?, c.object(v)?, c.object(w)?))
        })
        .collect()
}

/// `file.pd#Name`.
fn split_ref(text: &str) -> Result<(PathBuf, String)> {
    match text.rsplit_once('#') {
        Some((p, n)) if !p.is_empty() && !n.is_empty() => Ok((PathBuf::from(p), n.to_string())),
        _ => Err(Error::Validation(format!("expected FILE#NAME, got {text:?}"))),
    }
}

/// A for the A-colored variant: the candidates are the named objects and every edge color of
/// the closed presentations, with their duals.
fn a_set(c: &Category, t: &BuiltTrace, variant: Variant, ds: &[Diagram]) -> Result<Option<Vec<ObjectRef>>> {
    if variant != Variant::AColored {
        return Ok(None);
    }
    let mut cands = c.named_objects();
    for d in ds {
        for col in edge_colors(&close(d, Side::Left)?) {
            for x in [col.dual(), col] {
                if !cands.contains(&x) {
                    cands.push(x);
                }
            }
        }
    }
    Ok(Some(compute_a(c, t.as_dyn(), &cands)?.members))
}

/// Diagram files parsed once each.
#[derive(Default)]
struct Files {
    parsed: BTreeMap<PathBuf, DiagramFile>,
}

impl Files {
    /// The category from `--category`, else from the file's `use` line.
    fn category(&self, cfg: &RunConfig, path: &Path) -> Result<Category> {
        let text = read(path)?;
        load_category(cfg, DiagramFile::use_line(&text).as_deref())
    }

    fn load(&mut self, c: &Category, path: &Path) -> Result<&DiagramFile> {
        if !self.parsed.contains_key(path) {
            let f = parse_diagram_file(c, &read(path)?)?;
            self.parsed.insert(path.to_path_buf(), f);
        }
        Ok(&self.parsed[path])
    }
}

fn eval(cfg: &RunConfig, em: &mut Emitter, path: &Path, name: Option<&str>) -> Result<i32> {
    let (path, name) = match (name, path.to_str().and_then(|s| s.rsplit_once('#'))) {
        (None, Some((p, n))) => (PathBuf::from(p), Some(n.to_string())),
        _ => (path.to_path_buf(), name.map(str::to_string)),
    };
    let mut files = Files::default();
    let c = files.category(cfg, &path)?;
    let file = files.load(&c, &path)?;
    let d = file.select(name.as_deref())?;
    let label = name.unwrap_or_else(|| file.diagrams[0].0.clone());
    let m = d.evaluate(&c)?;
    em.record(
        "MATRIX",
        &[
            ("name", label),
            ("source", signature_name(&c, d.source())),
            ("target", signature_name(&c, d.target())),
            ("rows", m.matrix.rows().to_string()),
            ("cols", m.matrix.cols().to_string()),
        ],
    );
    for i in 0..m.matrix.rows() {
        let row: Vec<String> = m.matrix.row(i).iter().map(ToString::to_string).collect();
        em.record("ROW", &[("index", i.to_string()), ("values", row.join(" "))]);
    }
    Ok(EXIT_OK)
}
