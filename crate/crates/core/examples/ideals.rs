//! Membership in ideals generated by an object, with witnesses and retract data.

use pivotrace::ideal::{is_member, is_projective, retract_from_witness, witnesses, IdealSpec};
use pivotrace::Category;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let c = Category::sweedler();
    let p = c.object("P+")?;
    for spec in ["left:{P+}", "right:{P+}", "two-sided:{P+};probes:{k-}", "proj"] {
        let spec = IdealSpec::parse(&c, spec)?;
        println!("{}", spec.describe(&c));
        for name in ["k+", "k-", "P+", "P-", "reg", "P-⊗k-"] {
            let u = c.object(name)?;
            println!("  {name}: {}", if is_member(&c, &u, &spec)? { "member" } else { "not found" });
        }
    }

    let u = c.object("P-")?;
    let ws = witnesses(&c, &u, &IdealSpec::left(vec![p.clone()]))?;
    let w = &ws[0];
    let r = retract_from_witness(&c, &u, w)?;
    println!(
        "P- is a retract of {} ({} form, {} kernel directions, pq = id: {})",
        c.name(&r.ambient()),
        w.form,
        w.kernel.len(),
        r.verify(&c)?
    );
    println!("P+ projective: {}", is_projective(&c, &p)?.is_some());
    println!("k+ projective: {}", is_projective(&c, &c.object("k+")?)?.is_some());
    Ok(())
}
