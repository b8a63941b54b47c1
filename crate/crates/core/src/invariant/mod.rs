//! Invariants of closed graphs from cutting presentations, and their audits.

use std::fmt;

use crate::category::{Category, ObjectRef};
use crate::diagram::{close, edges, rotate_dual, Diagram, Pair};
use crate::error::{Error, Result};
use crate::exact::Scalar;
use crate::report::Report;
use crate::trace::{LinearTrace, Side};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Left,
    Right,
    TwoSided,
    /// Spherical graphs with every edge colored in A, for a one-sided trace.
    AColored,
}

impl Variant {
    pub fn parse(s: &str) -> Result<Variant> {
        match s {
            "left" | "l" => Ok(Variant::Left),
            "right" | "r" => Ok(Variant::Right),
            "two-sided" | "two_sided" => Ok(Variant::TwoSided),
            "A" | "a" | "a-colored" | "A-colored" => Ok(Variant::AColored),
            _ => Err(Error::Validation(format!("unknown variant {s:?}"))),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Left => "left",
            Variant::Right => "right",
            Variant::TwoSided => "two-sided",
            Variant::AColored => "A-colored",
        })
    }
}

/// The colors of the edges of a closed diagram, one per edge.
pub fn edge_colors(d: &Diagram) -> Vec<ObjectRef> {
    edges(d)
        .iter()
        .map(|e| {
            let (b, j) = e.visits[0];
            d.boundary(b)[j].obj.clone()
        })
        .collect()
}

fn in_class(c: &Category, x: &ObjectRef, class: &[ObjectRef]) -> bool {
    class.iter().any(|a| a == x) || class.iter().any(|a| c.dim(a) == c.dim(x) && c.find_isomorphism(a, x).is_some())
}

fn section(t: &Diagram) -> Result<Pair> {
    match t.source().as_slice() {
        [p] if t.source() == t.target() => Ok(p.clone()),
        _ => Err(Error::Precondition("a cutting presentation is a diagram [(V,ε)] → [(V,ε)]".into())),
    }
}

/// t_{V^ε}(F(T)) for a cutting presentation T with section (V, ε), after checking that the
/// presentation is admissible for `variant`. `a_set` is required for the A-colored variant.
pub fn invariant(
    c: &Category,
    t: &dyn LinearTrace,
    presentation: &Diagram,
    variant: Variant,
    a_set: Option<&[ObjectRef]>,
) -> Result<Scalar> {
    let p = section(presentation)?;
    let v = p.value();
    let side_ok = match variant {
        Variant::Left => t.side().includes_left(),
        Variant::Right => t.side().includes_right(),
        Variant::TwoSided => t.side() == Side::TwoSided,
        Variant::AColored => true,
    };
    if !side_ok {
        return Err(Error::NotAdmissible(format!("a {} trace does not give the {variant} invariant", t.side())));
    }
    if !t.admits(c, &v) {
        return Err(Error::NotAdmissible(format!("section {} is outside the ideal", p.name(c))));
    }
    if variant == Variant::AColored {
        let a = a_set.ok_or_else(|| Error::Precondition("the A-colored invariant needs the set A".into()))?;
        let closed = close(presentation, Side::Left)?;
        for col in edge_colors(&closed) {
            if !in_class(c, &col, a) {
                return Err(Error::NotAdmissible(format!("edge colored {} is not in A", c.name(&col))));
            }
        }
    }
    t.eval(c, &presentation.evaluate(c)?)
}

/// Evaluate every presentation and its rotation T*, and report disagreements.
///
/// For the two-sided and A-colored variants all values, rotations included, must agree. For
/// one-sided variants the rotations are only recorded: outside A there is no claim.
pub fn invariance_audit(
    c: &Category,
    t: &dyn LinearTrace,
    presentations: &[Diagram],
    variant: Variant,
    a_set: Option<&[ObjectRef]>,
) -> Result<Report> {
    let mut r = Report::new(format!("{variant} invariance of {}", t.label()));
    let mut values: Vec<(String, Scalar)> = Vec::new();
    for (i, pres) in presentations.iter().enumerate() {
        let v = invariant(c, t, pres, variant, a_set)?;
        values.push((format!("presentation {i}"), v.clone()));
        let rot = rotate_dual(pres)?;
        match variant {
            Variant::TwoSided | Variant::AColored => {
                let w = invariant(c, t, &rot, variant, a_set)?;
                values.push((format!("rotation of presentation {i}"), w));
            }
            Variant::Left | Variant::Right => match invariant(c, t, &rot, variant, a_set) {
                Ok(w) if w == v => r.note(format!("rotation of presentation {i} agrees")),
                Ok(w) => r.note(format!("rotation of presentation {i} gives {w} vs {v}: outside A, no claim")),
                Err(e) => r.note(format!("rotation of presentation {i} not evaluated: {e}")),
            },
        }
    }
    if let Some((_, first)) = values.first() {
        for (what, v) in &values[1..] {
            r.check(v == first, || format!("{what} gives {v}, presentation 0 gives {first}"));
        }
    }
    Ok(r)
}

/// Check d(V)⟨T⟩ across the cuttings of each graph and against `t` on the A-colored graphs.
///
/// `d` gives the dimension of every object of B; sections must be End-rank one.
pub fn trivalent_pair_check(
    c: &Category,
    b: &[ObjectRef],
    d: &[(ObjectRef, Scalar)],
    graphs: &[Vec<Diagram>],
    t: Option<(&dyn LinearTrace, &[ObjectRef])>,
) -> Result<Report> {
    let mut r = Report::new("trivalent pair");
    if b.is_empty() {
        r.note("B is empty for this category: the check is vacuous");
        return Ok(r);
    }
    let dim_of = |x: &ObjectRef| -> Option<Scalar> {
        d.iter().find(|(y, _)| y == x).or_else(|| d.iter().find(|(y, _)| in_class(c, x, std::slice::from_ref(y)))).map(|(_, s)| s.clone())
    };
    for v in b {
        if !c.is_simple(v) {
            return Err(Error::NotSimple(c.name(v), c.end_basis(v).dim()));
        }
        match (dim_of(v), dim_of(&v.dual())) {
            (Some(x), Some(y)) => {
                r.check(x == y, || format!("d({}) = {x} but d({}*) = {y}", c.name(v), c.name(v)));
            }
            _ => r.violation(format!("B is not closed under duals at {}", c.name(v))),
        }
    }
    for (gi, cuts) in graphs.iter().enumerate() {
        let mut vals = Vec::new();
        for (k, pres) in cuts.iter().enumerate() {
            let v = section(pres)?.value();
            if !c.is_simple(&v) {
                return Err(Error::NotSimple(c.name(&v), c.end_basis(&v).dim()));
            }
            let dv = dim_of(&v).ok_or_else(|| Error::NotAdmissible(format!("{} is not colored in B", c.name(&v))))?;
            let g = &dv * &c.bracket(&pres.evaluate(c)?)?;
            if let Some((t, a)) = t {
                let f = invariant(c, t, pres, Variant::AColored, Some(a))?;
                r.check(f == g, || format!("graph {gi} cutting {k}: G = {g} but the trace gives {f}"));
            }
            vals.push(g);
        }
        for (k, g) in vals.iter().enumerate().skip(1) {
            r.check(*g == vals[0], || format!("graph {gi}: cutting {k} gives {g}, cutting 0 gives {}", vals[0]));
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests;
