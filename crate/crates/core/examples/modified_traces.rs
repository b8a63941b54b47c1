//! Extend ambidextrous seeds to their ideals: modified dimensions, well-definedness audits,
//! the set A and the slope table.

use pivotrace::exact::Field;
use pivotrace::modified::{
    compute_a, modified_dim, simple_projectives, slope_table, well_definedness_audit, ExtendedTrace,
};
use pivotrace::trace::{solve_ambidextrous, Mode, Side, TraceFamily};
use pivotrace::Category;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // a left trace that is not right: F3[Z/3] with a non-trivial pivot
    let c = Category::group_algebra(3, Field::Prime(3), 1)?;
    let reg = c.object("reg")?;
    let seed = solve_ambidextrous(&c, &[reg.clone()], Mode::Left, &[])?.remove(0);
    let t = ExtendedTrace::extend(&c, seed, &[])?;
    println!("F3[Z/3], left seed {}", t.seed().describe(&c));
    for name in ["reg", "reg*", "k⊗reg", "reg⊗k"] {
        let u = c.object(name)?;
        let audit = well_definedness_audit(&c, &t, &u, 4)?;
        println!("  d({name}) = {}; {}", modified_dim(&c, &t, &u)?, audit.to_string().trim_end());
    }

    // two-sided on F2[Z/2]: A is the whole ideal
    let c = Category::group_algebra(2, Field::Prime(2), 0)?;
    let reg = c.object("reg")?;
    let mids = c.named_objects();
    let seed = solve_ambidextrous(&c, &[reg.clone()], Mode::Spherical, &mids)?.remove(0);
    let t = ExtendedTrace::extend(&c, seed, &mids)?;
    let a = compute_a(&c, &t, &[reg.clone(), c.object("reg⊗k")?, c.object("k")?])?;
    let names = |v: &[pivotrace::ObjectRef]| v.iter().map(|x| c.name(x)).collect::<Vec<_>>().join(", ");
    println!("F2[Z/2], two-sided: A ∋ {}; outside the ideal: {}", names(&a.members), names(&a.undetermined));

    // slopes on Q(ζ3)[Z/3] with pivot c
    let c = Category::group_algebra(3, Field::parse("Cyclotomic 3")?, 1)?;
    let chi1 = c.object("chi1")?;
    let t = ExtendedTrace::extend(&c, TraceFamily::bracket(&c, &chi1, Side::Left)?, &[])?;
    let v = simple_projectives(&c, &c.named_objects())?;
    let o = |s: &str| c.object(s).unwrap();
    let triples = [(o("chi1"), o("chi2"), o("chi2")), (o("k"), o("chi1"), o("chi2"))];
    let (table, report) = slope_table(&c, &t, &v, &triples)?;
    println!("Q(z)[Z/3], left seed <.>_chi1:");
    for e in &table.entries {
        println!("  s({}) = {} / {} = {}", c.name(&e.object), e.d, e.d_dual, e.slope);
    }
    print!("  {report}");
    Ok(())
}
