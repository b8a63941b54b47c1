use std::sync::Arc;

use super::*;
use crate::diagram::{cutting_presentations, partial_close, signature, Coupon, CouponTable, Gen};
use crate::exact::Field;
use crate::modified::{compute_a, ExtendedTrace};
use crate::trace::{solve_ambidextrous, Mode, TraceFamily, UsualTrace};

fn table(c: &Category, spec: &[(&str, &[&str], &[&str])]) -> Arc<CouponTable> {
    let mut t = CouponTable::new();
    for (name, s, tg) in spec {
        let cp = Coupon::generic(c, signature(c, s).unwrap(), signature(c, tg).unwrap()).unwrap();
        t.insert(name.to_string(), cp);
    }
    Arc::new(t)
}

fn coupon(name: &str, co: &Arc<CouponTable>) -> Diagram {
    Diagram::generator(Gen::Coupon(name.into()), co.clone()).unwrap()
}

fn theta(co: &Arc<CouponTable>, split: &str, merge: &str) -> Diagram {
    let t = Diagram::stack(&[coupon(merge, co), coupon(split, co)]).unwrap();
    partial_close(&t, 2, Side::Left).unwrap()
}

#[test]
fn usual_trace_matches_the_closure() {
    let c = Category::group_algebra(3, Field::parse("Cyclotomic 3").unwrap(), 1).unwrap();
    let co = table(&c, &[("p", &["reg+"], &["chi1+"]), ("i", &["chi1+"], &["reg+"])]);
    let t = Diagram::stack(&[coupon("p", &co), coupon("i", &co)]).unwrap();
    for (side, variant) in [(Side::Left, Variant::Left), (Side::Right, Variant::Right)] {
        let v = invariant(&c, &UsualTrace(side), &t, variant, None).unwrap();
        assert_eq!(&v, close(&t, side).unwrap().evaluate(&c).unwrap().matrix.get(0, 0));
    }
    assert!(invariant(&c, &UsualTrace(Side::Left), &t, Variant::Right, None).is_err());
}

#[test]
fn two_sided_invariance_on_theta_graphs() {
    let c = Category::group_algebra(2, Field::Prime(2), 0).unwrap();
    let reg = c.object("reg").unwrap();
    let middles = c.named_objects();
    let seed = solve_ambidextrous(&c, &[reg.clone()], Mode::Spherical, &middles).unwrap().remove(0);
    let t = ExtendedTrace::extend(&c, seed, &middles).unwrap();
    let co = table(&c, &[("m", &["reg+", "reg+"], &["reg+"]), ("n", &["reg+"], &["reg+", "reg+"])]);
    let d = theta(&co, "n", "m");
    assert_eq!(edges(&d).len(), 3);
    let cuts: Vec<Diagram> = cutting_presentations(&d, Side::TwoSided).unwrap().into_iter().map(|k| k.diagram).collect();
    assert_eq!(cuts.len(), 3);
    let r = invariance_audit(&c, &t, &cuts, Variant::TwoSided, None).unwrap();
    assert!(r.is_clean(), "{r}");
    // a k-colored section is outside the ideal
    let kco = table(&c, &[("e", &["k+"], &["k+"])]);
    let e = coupon("e", &kco);
    assert!(matches!(invariant(&c, &t, &e, Variant::TwoSided, None), Err(Error::NotAdmissible(_))));
}

#[test]
fn a_colored_rotation() {
    let c = Category::group_algebra(3, Field::parse("Cyclotomic 3").unwrap(), 1).unwrap();
    let chi1 = c.object("chi1").unwrap();
    let t = ExtendedTrace::extend(&c, TraceFamily::bracket(&c, &chi1, Side::Left).unwrap(), &[]).unwrap();
    let cands: Vec<ObjectRef> = ["k", "chi1", "chi2", "chi1⊗chi2", "k⊗k"].iter().map(|s| c.object(s).unwrap()).collect();
    let a = compute_a(&c, &t, &cands).unwrap().members;
    assert_eq!(a.len(), 3);
    let co = table(&c, &[("f", &["chi1⊗chi2+"], &["k+"]), ("g", &["k+"], &["chi1⊗chi2+"])]);
    let pres = Diagram::stack(&[coupon("f", &co), coupon("g", &co)]).unwrap();
    let r = invariance_audit(&c, &t, &[pres.clone()], Variant::AColored, Some(&a)).unwrap();
    assert!(r.is_clean(), "{r}");
    // a chi1 strand is not in A: the rotation changes the value and no claim is made
    let co1 = table(&c, &[("h", &["chi1+"], &["chi1+"])]);
    let h = coupon("h", &co1);
    assert!(matches!(invariant(&c, &t, &h, Variant::AColored, Some(&a)), Err(Error::NotAdmissible(_))));
    let r = invariance_audit(&c, &t, &[h], Variant::Left, None).unwrap();
    assert!(r.is_clean());
    assert!(r.notes.iter().any(|n| n.contains("no claim")), "{r}");
}

#[test]
fn trivalent_theta() {
    let c = Category::group_algebra(3, Field::parse("Cyclotomic 3").unwrap(), 0).unwrap();
    let b: Vec<ObjectRef> = ["k", "chi1", "chi2"].iter().map(|s| c.object(s).unwrap()).collect();
    let d: Vec<(ObjectRef, Scalar)> = b.iter().map(|x| (x.clone(), c.field().one())).collect();
    let co = table(&c, &[("m", &["chi1+", "chi1+"], &["chi2+"]), ("n", &["chi2+"], &["chi1+", "chi1+"])]);
    let g = theta(&co, "n", "m");
    let cuts: Vec<Diagram> = cutting_presentations(&g, Side::TwoSided).unwrap().into_iter().map(|k| k.diagram).collect();
    let k = c.object("k").unwrap();
    let t = ExtendedTrace::extend(&c, TraceFamily::bracket(&c, &k, Side::TwoSided).unwrap(), &b).unwrap();
    let a = compute_a(&c, &t, &b).unwrap().members;
    assert_eq!(a.len(), 3);
    let r = trivalent_pair_check(&c, &b, &d, &[cuts], Some((&t, &a))).unwrap();
    assert!(r.is_clean(), "{r}");
    let f2 = Category::group_algebra(2, Field::Prime(2), 0).unwrap();
    let r = trivalent_pair_check(&f2, &[], &[], &[], None).unwrap();
    assert!(r.notes[0].contains("vacuous"));
}
