//! Invariants of closed graphs from their cutting presentations.
//!
//! A theta graph over F2[Z/2] is zero under the usual trace but not under the two-sided
//! modified trace, and every cut gives the same value. Over Q(ζ3) a one-sided trace is
//! invariant on graphs colored in A and not beyond.

use pivotrace::cli::category_from_use;
use pivotrace::diagram::{cutting_presentations, parse_diagram_file, Diagram, DiagramFile};
use pivotrace::invariant::{invariance_audit, invariant, trivalent_pair_check, Variant};
use pivotrace::modified::{compute_a, modified_dim, ExtendedTrace};
use pivotrace::trace::{solve_ambidextrous, Mode, Side, TraceFamily};
use pivotrace::{Category, ObjectRef};

fn load(path: &str) -> Result<(Category, DiagramFile), Box<dyn std::error::Error>> {
    let text = std::fs::read_to_string(path)?;
    let c = category_from_use(&DiagramFile::use_line(&text).ok_or("no use line")?, None)?;
    let f = parse_diagram_file(&c, &text)?;
    Ok((c, f))
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (c, f) = load("examples/data/theta_f2.pd")?;
    let theta = f.get("Theta")?;
    let mids = c.named_objects();
    let reg = c.object("reg")?;
    let seed = solve_ambidextrous(&c, &[reg], Mode::Spherical, &mids)?.remove(0);
    let t = ExtendedTrace::extend(&c, seed, &mids)?;
    let cuts: Vec<Diagram> = cutting_presentations(theta, Side::TwoSided)?.into_iter().map(|k| k.diagram).collect();
    println!("theta over F2: closed value {}", theta.evaluate(&c)?.matrix.get(0, 0));
    for (i, d) in cuts.iter().enumerate() {
        println!("  cut {i}: {}", invariant(&c, &t, d, Variant::TwoSided, None)?);
    }
    print!("  {}", invariance_audit(&c, &t, &cuts, Variant::TwoSided, None)?);

    let (c, f) = load("examples/data/aset_cyc3.pd")?;
    let chi1 = c.object("chi1")?;
    let t = ExtendedTrace::extend(&c, TraceFamily::bracket(&c, &chi1, Side::Left)?, &[])?;
    let cands: Vec<ObjectRef> = ["k", "chi1", "chi2", "chi1⊗chi2"].iter().map(|s| c.object(s).unwrap()).collect();
    let a = compute_a(&c, &t, &cands)?.members;
    println!("A = {{{}}}", a.iter().map(|x| c.name(x)).collect::<Vec<_>>().join(", "));
    let pres = f.get("T")?.clone();
    print!("  {}", invariance_audit(&c, &t, &[pres], Variant::AColored, Some(&a))?);
    print!("  {}", invariance_audit(&c, &t, &[f.get("H")?.clone()], Variant::Left, None)?);

    let (c, f) = load("examples/data/theta_cyc3.pd")?;
    let b: Vec<ObjectRef> = ["k", "chi1", "chi2"].iter().map(|s| c.object(s).unwrap()).collect();
    let k = c.object("k")?;
    let t = ExtendedTrace::extend(&c, TraceFamily::bracket(&c, &k, Side::TwoSided)?, &b)?;
    let d = b.iter().map(|v| Ok((v.clone(), modified_dim(&c, &t, v)?))).collect::<pivotrace::Result<Vec<_>>>()?;
    let cuts: Vec<Diagram> =
        cutting_presentations(f.get("Theta")?, Side::TwoSided)?.into_iter().map(|k| k.diagram).collect();
    let a = compute_a(&c, &t, &b)?.members;
    print!("{}", trivalent_pair_check(&c, &b, &d, &[cuts], Some((&t, &a)))?);
    Ok(())
}
