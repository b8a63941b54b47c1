use super::ops::{cap, cap_rev, cup, cup_rev};
use super::{dual_signature, Diagram, Gen, Pair};
use crate::error::{Error, Result};
use crate::trace::Side;

/// A maximal strand path, listed as (boundary, position) visits in increasing order.
///
/// Paths run through identities, cups and caps; coupons end them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub visits: Vec<(usize, usize)>,
}

impl Edge {
    /// Highest boundary, leftmost position there.
    pub fn topmost(&self) -> (usize, usize) {
        let b = self.visits.iter().map(|v| v.0).max().expect("edges are nonempty");
        *self.visits.iter().find(|v| v.0 == b).expect("present")
    }
}

fn union(a: usize, b: usize, parent: &mut [usize]) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    parent[ra.max(rb)] = ra.min(rb);
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

pub fn edges(d: &Diagram) -> Vec<Edge> {
    let sigs: Vec<usize> = (0..=d.rows.len()).map(|b| d.boundary(b).len()).collect();
    let offset: Vec<usize> = sigs.iter().scan(0, |acc, n| {
        let o = *acc;
        *acc += n;
        Some(o)
    }).collect();
    let total: usize = sigs.iter().sum();
    let mut parent: Vec<usize> = (0..total).collect();
    for (r, row) in d.rows.iter().enumerate() {
        let (mut i, mut o) = (0, 0);
        for g in row {
            let (s, t) = g.signature(&d.coupons).expect("typechecked");
            let (lo, hi) = (offset[r], offset[r + 1]);
            match g {
                Gen::Id(_) => union(lo + i, hi + o, &mut parent),
                Gen::Ev(_) | Gen::Tev(_) => union(lo + i, lo + i + 1, &mut parent),
                Gen::Coev(_) | Gen::Tcoev(_) => union(hi + o, hi + o + 1, &mut parent),
                Gen::Coupon(_) => {}
            }
            i += s.len();
            o += t.len();
        }
    }
    let mut out: Vec<(usize, Edge)> = Vec::new();
    for b in 0..sigs.len() {
        for p in 0..sigs[b] {
            let root = find(&mut parent, offset[b] + p);
            match out.iter_mut().find(|(r, _)| *r == root) {
                Some((_, e)) => e.visits.push((b, p)),
                None => out.push((root, Edge { visits: vec![(b, p)] })),
            }
        }
    }
    out.into_iter().map(|(_, e)| e).collect()
}

/// A 1-1 diagram T and its strand (V, ε) obtained by opening a closed diagram.
#[derive(Clone, Debug)]
pub struct Cut {
    pub boundary: usize,
    pub position: usize,
    pub diagram: Diagram,
    pub section: Pair,
}

/// Open a closed diagram at a strand crossing boundary `b`.
///
/// The part above the cut moves to the bottom of T, and the strands left and right of the cut
/// are bent around the corresponding sides, so the left closure of T recovers the diagram.
pub fn cut_at(d: &Diagram, b: usize, j: usize) -> Result<Cut> {
    if !d.is_closed() {
        return Err(Error::Precondition("only closed diagrams can be cut".into()));
    }
    if b > d.rows.len() {
        return Err(Error::OutOfRange(format!("boundary {b}")));
    }
    let sig = d.boundary(b);
    if j >= sig.len() {
        return Err(Error::OutOfRange(format!("strand {j} at boundary {b}")));
    }
    let co = &d.coupons;
    let (w, rest) = sig.split_at(j);
    let (x, z) = (rest[0].clone(), &rest[1..]);
    let (w_dual, z_dual) = (dual_signature(w), dual_signature(z));
    let id = |s: &[Pair]| Diagram::identity(s.to_vec(), co.clone());
    let lower = d.slice(0, b);
    let upper = d.slice(b, d.rows.len());
    let opened = Diagram::stack(&[
        cup_rev(w, co).beside(&id(std::slice::from_ref(&x)))?.beside(&cup(z, co))?,
        id(&w_dual).beside(&upper)?.beside(&id(&z_dual))?,
        id(&w_dual).beside(&lower)?.beside(&id(&z_dual))?,
        cap(w, co).beside(&id(std::slice::from_ref(&x)))?.beside(&cap_rev(z, co))?,
    ])?;
    Ok(Cut { boundary: b, position: j, diagram: opened, section: x })
}

impl Cut {
    /// Whether the closure on `side` is planar isotopic to the diagram that was cut, and not
    /// only isotopic on the sphere: the cut strand must be outermost on that side.
    pub fn is_planar_for(&self, d: &Diagram, side: Side) -> bool {
        let n = d.boundary(self.boundary).len();
        match side {
            Side::Left => self.position + 1 == n,
            Side::Right => self.position == 0,
            Side::TwoSided => false,
        }
    }
}

/// Open `e` at its topmost visit.
pub fn cut_edge(d: &Diagram, e: &Edge) -> Result<Cut> {
    let (b, j) = e.topmost();
    cut_at(d, b, j)
}

/// Cutting presentations of a closed diagram, one per edge.
///
/// For `TwoSided` each edge is opened at its topmost visit and the presentations are valid on
/// the sphere. For `Left` (`Right`) only edges with a visit that is rightmost (leftmost) at
/// its boundary are used, opened at the topmost such visit, so the closure on that side is
/// planar isotopic to `d`.
pub fn cutting_presentations(d: &Diagram, side: Side) -> Result<Vec<Cut>> {
    let widths: Vec<usize> = (0..=d.rows.len()).map(|b| d.boundary(b).len()).collect();
    let mut out = Vec::new();
    for e in edges(d) {
        let pick = match side {
            Side::TwoSided => Some(e.topmost()),
            Side::Left => e.visits.iter().rev().find(|&&(b, j)| j + 1 == widths[b]).copied(),
            Side::Right => e.visits.iter().rev().find(|&&(_, j)| j == 0).copied(),
        };
        if let Some((b, j)) = pick {
            out.push(cut_at(d, b, j)?);
        }
    }
    Ok(out)
}
