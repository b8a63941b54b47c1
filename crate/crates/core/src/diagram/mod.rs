//! Sliced diagrams of the category of colored ribbon graphs, and the evaluation functor F.

mod cut;
mod ops;
mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

pub use cut::{cut_at, cut_edge, cutting_presentations, edges, Cut, Edge};
pub use ops::{cap, cap_rev, close, cup, cup_rev, partial_close, psi, rotate_dual};
pub use parse::{parse_diagram_file, write_coupons, DiagramFile};

use crate::category::{Category, Morphism, ObjectRef};
use crate::error::{Error, Result};
use crate::exact::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// A signature entry (X, ε); F sends it to X or X*.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pair {
    pub obj: ObjectRef,
    pub sign: Sign,
}

impl Pair {
    pub fn plus(obj: ObjectRef) -> Pair {
        Pair { obj, sign: Sign::Plus }
    }

    pub fn minus(obj: ObjectRef) -> Pair {
        Pair { obj, sign: Sign::Minus }
    }

    pub fn flip(&self) -> Pair {
        Pair { obj: self.obj.clone(), sign: self.sign.flip() }
    }

    /// X^ε.
    pub fn value(&self) -> ObjectRef {
        match self.sign {
            Sign::Plus => self.obj.clone(),
            Sign::Minus => self.obj.dual(),
        }
    }

    pub fn name(&self, c: &Category) -> String {
        format!("{}{}", c.name(&self.obj), self.sign.symbol())
    }

    /// `P++` is (P+, +), `k--` is (k-, −).
    pub fn parse(c: &Category, text: &str) -> Result<Pair> {
        let mut chars: Vec<char> = text.trim().chars().collect();
        let sign = match chars.pop() {
            Some('+') => Sign::Plus,
            Some('-') | Some('−') => Sign::Minus,
            _ => return Err(Error::Validation(format!("{text:?} does not end in a sign"))),
        };
        Ok(Pair { obj: c.object(&chars.into_iter().collect::<String>())?, sign })
    }
}

pub fn signature(c: &Category, pairs: &[&str]) -> Result<Signature> {
    pairs.iter().map(|p| Pair::parse(c, p)).collect()
}

pub type Signature = Vec<Pair>;

/// Reverse and negate.
pub fn dual_signature(s: &[Pair]) -> Signature {
    s.iter().rev().map(Pair::flip).collect()
}

/// F of a signature.
pub fn signature_object(s: &[Pair]) -> ObjectRef {
    ObjectRef::tensor_all(s.iter().map(Pair::value).collect::<Vec<_>>().iter())
}

pub fn signature_name(c: &Category, s: &[Pair]) -> String {
    format!("[{}]", s.iter().map(|p| p.name(c)).collect::<Vec<_>>().join(", "))
}

/// A coupon: a registered morphism between two signatures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coupon {
    pub source: Signature,
    pub target: Signature,
    pub matrix: Matrix,
}

impl Coupon {
    /// Σ (k+1)·b_k over the hom basis: a fixed intertwiner that avoids accidental zeros.
    pub fn generic(c: &Category, source: Signature, target: Signature) -> Result<Coupon> {
        let h = c.hom_basis(&signature_object(&source), &signature_object(&target));
        if h.basis.is_empty() {
            return Err(Error::Precondition(format!(
                "no nonzero intertwiner {} -> {}",
                signature_name(c, &source),
                signature_name(c, &target)
            )));
        }
        let f = c.field();
        let mut m = Matrix::zeros(f, h.basis[0].matrix.rows(), h.basis[0].matrix.cols());
        for (k, b) in h.basis.iter().enumerate() {
            m = m.add(&b.matrix.scale(&f.from_i64(k as i64 + 1)))?;
        }
        Ok(Coupon { source, target, matrix: m })
    }
}

pub type CouponTable = BTreeMap<String, Coupon>;

/// Check a coupon's matrix against its declared signatures.
pub fn check_coupon(c: &Category, name: &str, cp: &Coupon) -> Result<()> {
    let (s, t) = (signature_object(&cp.source), signature_object(&cp.target));
    c.morphism(&s, &t, cp.matrix.clone()).map(|_| ()).map_err(|e| match e {
        Error::NotIntertwiner(_) => Error::NotIntertwiner(format!("coupon {name}")),
        Error::Shape(m) => Error::Shape(format!("coupon {name}: {m}")),
        e => e,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Gen {
    Id(Pair),
    /// [X−, X+] → []
    Ev(ObjectRef),
    /// [] → [X+, X−]
    Coev(ObjectRef),
    /// [X+, X−] → []
    Tev(ObjectRef),
    /// [] → [X−, X+]
    Tcoev(ObjectRef),
    Coupon(String),
}

impl Gen {
    /// Source and target signatures.
    pub fn signature(&self, coupons: &CouponTable) -> Result<(Signature, Signature)> {
        let (p, m) = (|x: &ObjectRef| Pair::plus(x.clone()), |x: &ObjectRef| Pair::minus(x.clone()));
        Ok(match self {
            Gen::Id(q) => (vec![q.clone()], vec![q.clone()]),
            Gen::Ev(x) => (vec![m(x), p(x)], vec![]),
            Gen::Coev(x) => (vec![], vec![p(x), m(x)]),
            Gen::Tev(x) => (vec![p(x), m(x)], vec![]),
            Gen::Tcoev(x) => (vec![], vec![m(x), p(x)]),
            Gen::Coupon(n) => {
                let cp = coupons.get(n).ok_or_else(|| Error::UnknownCoupon(n.clone()))?;
                (cp.source.clone(), cp.target.clone())
            }
        })
    }

    pub fn evaluate(&self, c: &Category, coupons: &CouponTable) -> Result<Morphism> {
        Ok(match self {
            Gen::Id(q) => c.identity(&q.value()),
            Gen::Ev(x) => c.ev(x),
            Gen::Coev(x) => c.coev(x),
            Gen::Tev(x) => c.tev(x),
            Gen::Tcoev(x) => c.tcoev(x),
            Gen::Coupon(n) => {
                let cp = coupons.get(n).ok_or_else(|| Error::UnknownCoupon(n.clone()))?;
                let (s, t) = (signature_object(&cp.source), signature_object(&cp.target));
                Morphism { source: s, target: t, matrix: cp.matrix.clone() }
            }
        })
    }

    pub fn is_id(&self) -> bool {
        matches!(self, Gen::Id(_))
    }

    pub fn text(&self, c: &Category) -> String {
        match self {
            Gen::Id(q) => format!("id {}", q.name(c)),
            Gen::Ev(x) => format!("ev {}", c.name(x)),
            Gen::Coev(x) => format!("coev {}", c.name(x)),
            Gen::Tev(x) => format!("tev {}", c.name(x)),
            Gen::Tcoev(x) => format!("tcoev {}", c.name(x)),
            Gen::Coupon(n) => format!("coupon {n}"),
        }
    }
}

/// A sliced diagram: rows of generators, bottom row first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    source: Signature,
    target: Signature,
    rows: Vec<Vec<Gen>>,
    coupons: Arc<CouponTable>,
}

impl Diagram {
    /// Build and typecheck. Rows in errors are numbered from 1 at the bottom.
    pub fn new(source: Signature, target: Signature, rows: Vec<Vec<Gen>>, coupons: Arc<CouponTable>) -> Result<Diagram> {
        let mut cur = source.clone();
        for (i, row) in rows.iter().enumerate() {
            let mut input = Vec::new();
            let mut output = Vec::new();
            for g in row {
                let (s, t) = g.signature(&coupons).map_err(|e| Error::Typecheck { row: i + 1, msg: e.to_string() })?;
                input.extend(s);
                output.extend(t);
            }
            if input != cur {
                return Err(Error::Typecheck {
                    row: i + 1,
                    msg: format!("row consumes {} pairs that do not match the {} incoming pairs", input.len(), cur.len()),
                });
            }
            cur = output;
        }
        if cur != target {
            return Err(Error::Typecheck { row: rows.len(), msg: "top of diagram does not match the declared target".into() });
        }
        Ok(Diagram { source, target, rows, coupons })
    }

    pub fn identity(sig: Signature, coupons: Arc<CouponTable>) -> Diagram {
        Diagram { source: sig.clone(), target: sig, rows: Vec::new(), coupons }
    }

    pub fn generator(g: Gen, coupons: Arc<CouponTable>) -> Result<Diagram> {
        let (s, t) = g.signature(&coupons)?;
        Ok(Diagram { source: s, target: t, rows: vec![vec![g]], coupons })
    }

    pub fn source(&self) -> &Signature {
        &self.source
    }

    pub fn target(&self) -> &Signature {
        &self.target
    }

    pub fn rows(&self) -> &[Vec<Gen>] {
        &self.rows
    }

    pub fn coupons(&self) -> &Arc<CouponTable> {
        &self.coupons
    }

    pub fn is_closed(&self) -> bool {
        self.source.is_empty() && self.target.is_empty()
    }

    /// Signature at boundary `b`; boundary 0 is the source, boundary `rows().len()` the target.
    pub fn boundary(&self, b: usize) -> Signature {
        let mut cur = self.source.clone();
        for row in &self.rows[..b] {
            cur = row.iter().flat_map(|g| g.signature(&self.coupons).expect("typechecked").1).collect();
        }
        cur
    }

    /// Rows `lo..hi` as a diagram from boundary `lo` to boundary `hi`.
    pub fn slice(&self, lo: usize, hi: usize) -> Diagram {
        Diagram {
            source: self.boundary(lo),
            target: self.boundary(hi),
            rows: self.rows[lo..hi].to_vec(),
            coupons: self.coupons.clone(),
        }
    }

    /// The evaluation functor F.
    pub fn evaluate(&self, c: &Category) -> Result<Morphism> {
        let mut acc = c.identity(&signature_object(&self.source));
        for row in &self.rows {
            let gens = row.iter().map(|g| g.evaluate(c, &self.coupons)).collect::<Result<Vec<_>>>()?;
            let layer = c.tensor_all(&gens.iter().collect::<Vec<_>>())?;
            acc = c.compose(&layer, &acc)?;
        }
        Ok(acc)
    }

    fn merged(&self, other: &Diagram) -> Result<Arc<CouponTable>> {
        if Arc::ptr_eq(&self.coupons, &other.coupons) {
            return Ok(self.coupons.clone());
        }
        let mut t = (*self.coupons).clone();
        for (k, v) in other.coupons.iter() {
            match t.get(k) {
                Some(w) if w != v => return Err(Error::Precondition(format!("coupon {k} is defined twice"))),
                _ => {
                    t.insert(k.clone(), v.clone());
                }
            }
        }
        Ok(Arc::new(t))
    }

    /// `self` on top of `below`.
    pub fn after(&self, below: &Diagram) -> Result<Diagram> {
        if below.target != self.source {
            return Err(Error::Typecheck { row: below.rows.len() + 1, msg: "composed diagrams do not meet".into() });
        }
        let mut rows = below.rows.clone();
        rows.extend(self.rows.iter().cloned());
        Ok(Diagram { source: below.source.clone(), target: self.target.clone(), rows, coupons: self.merged(below)? })
    }

    /// Compose bottom to top.
    pub fn stack(parts: &[Diagram]) -> Result<Diagram> {
        let mut it = parts.iter();
        let mut acc = it.next().ok_or_else(|| Error::Precondition("empty stack".into()))?.clone();
        for d in it {
            acc = d.after(&acc)?;
        }
        Ok(acc)
    }

    /// Side by side; the shorter diagram is padded with identities at the top.
    pub fn beside(&self, right: &Diagram) -> Result<Diagram> {
        let n = self.rows.len().max(right.rows.len());
        let ids = |s: &Signature| s.iter().cloned().map(Gen::Id).collect::<Vec<_>>();
        let rows = (0..n)
            .map(|i| {
                let mut r = self.rows.get(i).cloned().unwrap_or_else(|| ids(&self.target));
                r.extend(right.rows.get(i).cloned().unwrap_or_else(|| ids(&right.target)));
                r
            })
            .collect();
        let mut source = self.source.clone();
        source.extend(right.source.iter().cloned());
        let mut target = self.target.clone();
        target.extend(right.target.iter().cloned());
        Ok(Diagram { source, target, rows, coupons: self.merged(right)? })
    }

    pub fn beside_all(parts: &[Diagram], coupons: Arc<CouponTable>) -> Result<Diagram> {
        parts.iter().try_fold(Diagram::identity(vec![], coupons), |acc, d| acc.beside(d))
    }

    /// Text in the diagram language.
    pub fn to_text(&self, c: &Category, name: &str) -> String {
        let mut s = format!(
            "diagram {name} : {} -> {} {{\n",
            signature_name(c, &self.source),
            signature_name(c, &self.target)
        );
        for row in &self.rows {
            let gens = row.iter().map(|g| g.text(c)).collect::<Vec<_>>().join(", ");
            s.push_str(&format!("  row {gens} ;\n"));
        }
        s.push_str("}\n");
        s
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

#[cfg(test)]
mod tests;
