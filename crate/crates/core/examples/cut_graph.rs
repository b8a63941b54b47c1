//! Cut a closed diagram along each admissible edge and print the presentations as a
//! diagram file, ready for `pivotrace invariant` and `pivotrace audit`.
//!
//! cargo run --example cut_graph -- examples/data/theta_f2.pd Theta two-sided

use pivotrace::cli::category_from_use;
use pivotrace::diagram::{cutting_presentations, parse_diagram_file, write_coupons, DiagramFile};
use pivotrace::trace::Side;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let [path, name, side] = args.as_slice() else {
        return Err("usage: cut_graph FILE.pd NAME left|right|two-sided".into());
    };
    let text = std::fs::read_to_string(path)?;
    let using = DiagramFile::use_line(&text).ok_or("the file needs a use line")?;
    let c = category_from_use(&using, None)?;
    let file = parse_diagram_file(&c, &text)?;
    let d = file.get(name)?;
    let side = Side::parse(side)?;
    println!("use {using}\n");
    print!("{}", write_coupons(&c, &file.coupons));
    for (i, cut) in cutting_presentations(d, side)?.iter().enumerate() {
        println!(
            "\n# edge at boundary {}, strand {}, section {}",
            cut.boundary,
            cut.position,
            cut.section.name(&c)
        );
        print!("{}", cut.diagram.to_text(&c, &format!("{name}{}", i + 1)));
    }
    Ok(())
}
