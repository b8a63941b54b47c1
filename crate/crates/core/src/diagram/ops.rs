use std::sync::Arc;

use super::{dual_signature, CouponTable, Diagram, Gen, Pair, Sign, Signature};
use crate::category::{Category, Morphism};
use crate::error::{Error, Result};
use crate::trace::Side;

fn ids(sig: &[Pair], coupons: &Arc<CouponTable>) -> Diagram {
    Diagram::identity(sig.to_vec(), coupons.clone())
}

fn one(g: Gen, coupons: &Arc<CouponTable>) -> Diagram {
    Diagram::generator(g, coupons.clone()).expect("duality generators always typecheck")
}

fn framed(left: &[Pair], d: Diagram, right: &[Pair]) -> Diagram {
    let co = d.coupons().clone();
    ids(left, &co).beside(&d).and_then(|x| x.beside(&ids(right, &co))).expect("shared coupon table")
}

/// [] → S ⊗ S*, nested with the first pair outermost.
pub fn cup(s: &[Pair], coupons: &Arc<CouponTable>) -> Diagram {
    let mut acc = ids(&[], coupons);
    for (k, p) in s.iter().enumerate() {
        let g = match p.sign {
            Sign::Plus => Gen::Coev(p.obj.clone()),
            Sign::Minus => Gen::Tcoev(p.obj.clone()),
        };
        let layer = framed(&s[..k], one(g, coupons), &dual_signature(&s[..k]));
        acc = layer.after(&acc).expect("cups nest");
    }
    acc
}

/// [] → S* ⊗ S, nested with the last pair outermost.
pub fn cup_rev(s: &[Pair], coupons: &Arc<CouponTable>) -> Diagram {
    let mut acc = ids(&[], coupons);
    for k in (0..s.len()).rev() {
        let p = &s[k];
        let g = match p.sign {
            Sign::Plus => Gen::Tcoev(p.obj.clone()),
            Sign::Minus => Gen::Coev(p.obj.clone()),
        };
        let layer = framed(&dual_signature(&s[k + 1..]), one(g, coupons), &s[k + 1..]);
        acc = layer.after(&acc).expect("cups nest");
    }
    acc
}

/// S* ⊗ S → [].
pub fn cap(s: &[Pair], coupons: &Arc<CouponTable>) -> Diagram {
    let mut src = dual_signature(s);
    src.extend(s.iter().cloned());
    let mut acc = ids(&src, coupons);
    for (k, p) in s.iter().enumerate() {
        let g = match p.sign {
            Sign::Plus => Gen::Ev(p.obj.clone()),
            Sign::Minus => Gen::Tev(p.obj.clone()),
        };
        let layer = framed(&dual_signature(&s[k + 1..]), one(g, coupons), &s[k + 1..]);
        acc = layer.after(&acc).expect("caps nest");
    }
    acc
}

/// S ⊗ S* → [].
pub fn cap_rev(s: &[Pair], coupons: &Arc<CouponTable>) -> Diagram {
    let mut src = s.to_vec();
    src.extend(dual_signature(s));
    let mut acc = ids(&src, coupons);
    for k in (0..s.len()).rev() {
        let p = &s[k];
        let g = match p.sign {
            Sign::Plus => Gen::Tev(p.obj.clone()),
            Sign::Minus => Gen::Ev(p.obj.clone()),
        };
        let layer = framed(&s[..k], one(g, coupons), &dual_signature(&s[..k]));
        acc = layer.after(&acc).expect("caps nest");
    }
    acc
}

fn rotate_gen(g: &Gen, coupons: &Arc<CouponTable>) -> Result<Diagram> {
    Ok(match g {
        Gen::Id(p) => one(Gen::Id(p.flip()), coupons),
        Gen::Ev(x) => one(Gen::Tcoev(x.clone()), coupons),
        Gen::Coev(x) => one(Gen::Tev(x.clone()), coupons),
        Gen::Tev(x) => one(Gen::Coev(x.clone()), coupons),
        Gen::Tcoev(x) => one(Gen::Ev(x.clone()), coupons),
        Gen::Coupon(n) => {
            let cp = coupons.get(n).ok_or_else(|| Error::UnknownCoupon(n.clone()))?;
            let (s, t) = (&cp.source, &cp.target);
            let (s_dual, t_dual) = (dual_signature(s), dual_signature(t));
            Diagram::stack(&[
                framed(&t_dual, cup(s, coupons), &[]),
                framed(&t_dual, one(g.clone(), coupons), &s_dual),
                framed(&[], cap(t, coupons), &s_dual),
            ])?
        }
    })
}

/// The rotation T ↦ T* by a half turn.
pub fn rotate_dual(d: &Diagram) -> Result<Diagram> {
    let co = d.coupons();
    let mut acc = ids(&dual_signature(d.target()), co);
    for row in d.rows().iter().rev() {
        let parts = row.iter().rev().map(|g| rotate_gen(g, co)).collect::<Result<Vec<_>>>()?;
        acc = Diagram::beside_all(&parts, co.clone())?.after(&acc)?;
    }
    Ok(acc)
}

/// ⊗ψ: F(S*) → F(S)*, with ψ the identity on positive pairs and the pivot on negative ones.
pub fn psi(c: &Category, s: &[Pair]) -> Morphism {
    let parts: Vec<Morphism> = s
        .iter()
        .rev()
        .map(|p| match p.sign {
            Sign::Plus => c.identity(&p.obj.dual()),
            Sign::Minus => c.pivot_iso(&p.obj),
        })
        .collect();
    c.tensor_all(&parts.iter().collect::<Vec<_>>()).expect("same field")
}

/// Close the `k` leftmost (or rightmost) strands of an endomorphism diagram.
pub fn partial_close(d: &Diagram, k: usize, side: Side) -> Result<Diagram> {
    if d.source() != d.target() {
        return Err(Error::NotEndomorphism("diagram source and target differ".into()));
    }
    let s: &Signature = d.source();
    if k > s.len() {
        return Err(Error::OutOfRange(format!("cannot close {k} of {} strands", s.len())));
    }
    let co = d.coupons();
    match side {
        Side::Left => {
            let (a, b) = s.split_at(k);
            Diagram::stack(&[
                framed(&[], cup_rev(a, co), b),
                framed(&dual_signature(a), d.clone(), &[]),
                framed(&[], cap(a, co), b),
            ])
        }
        Side::Right => {
            let (a, b) = s.split_at(s.len() - k);
            Diagram::stack(&[
                framed(a, cup(b, co), &[]),
                framed(&[], d.clone(), &dual_signature(b)),
                framed(a, cap_rev(b, co), &[]),
            ])
        }
        Side::TwoSided => Err(Error::Precondition("a closure is left or right".into())),
    }
}

/// The left or right closure of a 1-1 diagram.
pub fn close(d: &Diagram, side: Side) -> Result<Diagram> {
    if d.source().len() != 1 || d.source() != d.target() {
        return Err(Error::Precondition("closure needs a diagram [(V,ε)] → [(V,ε)]".into()));
    }
    partial_close(d, 1, side)
}
