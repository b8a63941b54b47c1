//! Validate the built-in Hopf algebras and print one of them as a category file.
//!
//! cargo run --example category_files                 # summary of every builtin
//! cargo run --example category_files -- sweedler Q   # the file for one builtin

use pivotrace::exact::Field;
use pivotrace::hopf::{validate_hopf, validate_module, write_category, Builtin};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if let [name, field] = args.as_slice() {
        let (h, mods) = Builtin::parse(name, Some(Field::parse(field)?))?.build()?;
        print!("{}", write_category(&h, &mods));
        return Ok(());
    }
    let fixtures = [
        ("sweedler", "Q"),
        ("group_algebra:2:0", "F2"),
        ("group_algebra:3:1", "F3"),
        ("group_algebra:3:1", "Cyclotomic 3"),
        ("group_algebra:3:0", "Cyclotomic 3"),
    ];
    for (name, field) in fixtures {
        let (h, mods) = Builtin::parse(name, Some(Field::parse(field)?))?.build()?;
        let mut report = validate_hopf(&h);
        for m in &mods {
            report.failures.extend(validate_module(&h, m)?.failures);
        }
        let names: Vec<&str> = mods.iter().map(|m| m.name.as_str()).collect();
        println!("{name} over {field}: dim {}, modules {}", h.dim(), names.join(" "));
        print!("  {report}");
    }
    Ok(())
}
