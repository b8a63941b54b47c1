//! Parse a diagram file, evaluate its diagrams, and check rotation and closure against the
//! category's own duality maps and traces.
//!
//! cargo run --example string_diagrams -- examples/data/zigzag.pd

use pivotrace::cli::category_from_use;
use pivotrace::diagram::{close, parse_diagram_file, psi, rotate_dual, DiagramFile};
use pivotrace::trace::{partial_trace, Side};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args().nth(1).unwrap_or_else(|| "examples/data/zigzag.pd".into());
    let text = std::fs::read_to_string(&path)?;
    let c = category_from_use(&DiagramFile::use_line(&text).ok_or("no use line")?, None)?;
    let file = parse_diagram_file(&c, &text)?;
    for (name, d) in &file.diagrams {
        let m = d.evaluate(&c)?;
        println!("{name}: {} -> {}", c.name(&m.source), c.name(&m.target));
        print!("{}", m.matrix);

        // ψ_out ∘ F(T*) = F(T)* ∘ ψ_in
        let rot = rotate_dual(d)?.evaluate(&c)?;
        let lhs = c.chain(&[&rot, &psi(&c, d.source())])?;
        let rhs = c.chain(&[&psi(&c, d.target()), &c.dual_mor(&m)])?;
        println!("  rotation agrees with the dual: {}", lhs.matrix == rhs.matrix);

        if m.is_endo() && !d.source().is_empty() {
            for side in [Side::Left, Side::Right] {
                let closed = close(d, side)?.evaluate(&c)?;
                let tr = partial_trace(&c, &m, &m.source, side)?;
                println!("  {side} closure {} = {side} trace {}", closed.matrix.get(0, 0), tr.matrix.get(0, 0));
            }
        }
    }
    Ok(())
}
