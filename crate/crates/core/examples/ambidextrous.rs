//! Solve the ambidexterity equations on the fixtures and compare with the usual traces.

use pivotrace::exact::Field;
use pivotrace::trace::{dims, solve_ambidextrous, Mode};
use pivotrace::Category;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cases = [
        ("sweedler", Category::sweedler(), "P+", Mode::Left, vec![]),
        ("sweedler", Category::sweedler(), "P+", Mode::Right, vec![]),
        ("F3[Z/3], pivot c", Category::group_algebra(3, Field::Prime(3), 1)?, "reg", Mode::Left, vec![]),
        ("F3[Z/3], pivot c", Category::group_algebra(3, Field::Prime(3), 1)?, "reg", Mode::Spherical, vec!["k", "reg"]),
        ("F2[Z/2]", Category::group_algebra(2, Field::Prime(2), 0)?, "reg", Mode::Spherical, vec!["k", "reg"]),
    ];
    for (label, c, obj, mode, middles) in cases {
        let x = c.object(obj)?;
        let mids = middles.iter().map(|m| c.object(m)).collect::<Result<Vec<_>, _>>()?;
        let sols = solve_ambidextrous(&c, &[x.clone()], mode, &mids)?;
        let (dl, dr) = dims(&c, &x);
        println!("{label}: {mode} solutions on {obj}: {} (usual dims {dl}, {dr})", sols.len());
        for s in &sols {
            println!("  {}", s.describe(&c));
        }
    }
    Ok(())
}
