use std::sync::Arc;

use super::*;
use crate::exact::Field;
use crate::trace::{partial_trace, trace_endo, Side};

fn cyclo() -> Category {
    Category::group_algebra(3, Field::parse("Cyclotomic 3").unwrap(), 1).unwrap()
}

fn pr(c: &Category, s: &str) -> Pair {
    Pair::parse(c, s).unwrap()
}

fn sig(c: &Category, s: &[&str]) -> Signature {
    signature(c, s).unwrap()
}

/// Coupons on the cyclotomic fixture, each the first hom basis vector.
fn coupons(c: &Category) -> Arc<CouponTable> {
    let mut t = CouponTable::new();
    for (name, s, tg) in [
        ("p", vec!["reg+"], vec!["chi1+"]),
        ("i", vec!["chi1+"], vec!["reg+"]),
        ("m", vec!["reg+", "chi1-"], vec!["reg+"]),
        ("n", vec!["reg+"], vec!["reg+", "chi1-"]),
        ("m2", vec!["reg+", "chi1+"], vec!["reg+"]),
        ("u", vec!["reg-"], vec!["reg-"]),
    ] {
        t.insert(name.into(), Coupon::generic(c, sig(c, &s), sig(c, &tg)).unwrap());
    }
    for (n, cp) in &t {
        check_coupon(c, n, cp).unwrap();
    }
    Arc::new(t)
}

fn gen(g: Gen, co: &Arc<CouponTable>) -> Diagram {
    Diagram::generator(g, co.clone()).unwrap()
}

fn probes(c: &Category, co: &Arc<CouponTable>) -> Vec<Diagram> {
    let chi = c.object("chi1").unwrap();
    let g = |n: &str| gen(Gen::Coupon(n.into()), co);
    let id = |s: &str| gen(Gen::Id(pr(c, s)), co);
    let ip = Diagram::stack(&[g("p"), g("i")]).unwrap();
    let nm = Diagram::stack(&[g("n"), ip.beside(&id("chi1-")).unwrap(), g("m")]).unwrap();
    let bent = Diagram::stack(&[
        id("reg+").beside(&gen(Gen::Tcoev(chi.clone()), co)).unwrap(),
        g("m").beside(&id("chi1+")).unwrap(),
        g("m2"),
    ])
    .unwrap();
    let wide = Diagram::stack(&[g("m"), g("n")]).unwrap();
    let capped = Diagram::stack(&[
        gen(Gen::Coev(chi.clone()), co).beside(&id("chi1+")).unwrap(),
        id("chi1+").beside(&gen(Gen::Ev(chi), co)).unwrap(),
        g("i"),
    ])
    .unwrap();
    vec![ip, nm, bent, wide, capped, g("m"), g("n")]
}

#[test]
fn zigzags_evaluate_to_identities() {
    let c = Category::sweedler();
    let co = Arc::new(CouponTable::new());
    let x = c.object("P+").unwrap();
    let id = |s: &str| gen(Gen::Id(pr(&c, s)), &co);
    let z1 = Diagram::stack(&[
        gen(Gen::Coev(x.clone()), &co).beside(&id("P++")).unwrap(),
        id("P++").beside(&gen(Gen::Ev(x.clone()), &co)).unwrap(),
    ])
    .unwrap();
    let z2 = Diagram::stack(&[
        id("P++").beside(&gen(Gen::Tcoev(x.clone()), &co)).unwrap(),
        gen(Gen::Tev(x.clone()), &co).beside(&id("P++")).unwrap(),
    ])
    .unwrap();
    for z in [z1, z2] {
        assert!(z.evaluate(&c).unwrap().matrix.is_identity());
    }
    let bad = Diagram::new(sig(&c, &["P++"]), sig(&c, &["P++"]), vec![vec![Gen::Ev(x)]], co);
    assert!(matches!(bad, Err(crate::Error::Typecheck { row: 1, .. })));
}

#[test]
fn interchange_law() {
    let c = cyclo();
    let co = coupons(&c);
    let p = gen(Gen::Coupon("p".into()), &co);
    let u = gen(Gen::Coupon("u".into()), &co);
    let a = Diagram::stack(&[p.beside(&Diagram::identity(sig(&c, &["reg-"]), co.clone())).unwrap(),
        Diagram::identity(sig(&c, &["chi1+"]), co.clone()).beside(&u).unwrap()]).unwrap();
    let b = Diagram::stack(&[Diagram::identity(sig(&c, &["reg+"]), co.clone()).beside(&u).unwrap(),
        p.beside(&Diagram::identity(sig(&c, &["reg-"]), co.clone())).unwrap()]).unwrap();
    assert_eq!(a.evaluate(&c).unwrap(), b.evaluate(&c).unwrap());
    assert_eq!(a.evaluate(&c).unwrap(), p.beside(&u).unwrap().evaluate(&c).unwrap());
}

#[test]
fn rotation_is_the_dual_up_to_psi() {
    let c = cyclo();
    let co = coupons(&c);
    for t in probes(&c, &co) {
        let f = t.evaluate(&c).unwrap();
        let r = rotate_dual(&t).unwrap();
        assert_eq!(r.source(), &dual_signature(t.target()));
        assert_eq!(r.target(), &dual_signature(t.source()));
        let lhs = r.evaluate(&c).unwrap();
        let psi_in = psi(&c, t.target());
        let psi_out = psi(&c, t.source());
        let psi_out_inv = Morphism {
            source: psi_out.target.clone(),
            target: psi_out.source.clone(),
            matrix: psi_out.matrix.inverse().unwrap(),
        };
        let rhs = c.chain(&[&psi_in, &c.dual_mor(&f), &psi_out_inv]).unwrap();
        assert_eq!(lhs.matrix, rhs.matrix, "{}", t.to_text(&c, "t"));
        let rr = rotate_dual(&r).unwrap();
        assert_eq!(rr.source(), t.source());
    }
}

#[test]
fn closures_are_traces() {
    let c = cyclo();
    let co = coupons(&c);
    let ip = &probes(&c, &co)[0];
    let f = ip.evaluate(&c).unwrap();
    for side in [Side::Left, Side::Right] {
        let v = close(ip, side).unwrap().evaluate(&c).unwrap();
        assert_eq!(v.matrix.get(0, 0), &trace_endo(&c, &f, side).unwrap());
    }
    // mixed signs: F of the partial closure equals the partial trace
    for t in probes(&c, &co) {
        if t.source() != t.target() || t.source().len() < 2 {
            continue;
        }
        let f = t.evaluate(&c).unwrap();
        let s = t.source();
        for k in 1..s.len() {
            let left = partial_close(&t, k, Side::Left).unwrap().evaluate(&c).unwrap();
            assert_eq!(left.matrix, partial_trace(&c, &f, &signature_object(&s[..k]), Side::Left).unwrap().matrix);
            let right = partial_close(&t, k, Side::Right).unwrap().evaluate(&c).unwrap();
            let x = signature_object(&s[s.len() - k..]);
            assert_eq!(right.matrix, partial_trace(&c, &f, &x, Side::Right).unwrap().matrix);
        }
    }
    assert!(close(&probes(&c, &co)[1], Side::TwoSided).is_err());
}

#[test]
fn cuts_recover_the_closed_value() {
    let c = cyclo();
    let co = coupons(&c);
    let mut nonzero = 0;
    for t in probes(&c, &co) {
        if t.source() != t.target() {
            continue;
        }
        for side in [Side::Left, Side::Right] {
            let d = partial_close(&t, t.source().len(), side).unwrap();
            let val = d.evaluate(&c).unwrap().matrix.get(0, 0).clone();
            nonzero += usize::from(!val.is_zero());
            let es = edges(&d);
            assert!(!es.is_empty());
            for e in &es {
                for &(b, j) in &e.visits {
                    let cut = cut_at(&d, b, j).unwrap();
                    let ct = &cut.diagram;
                    assert_eq!(ct.source(), &vec![cut.section.clone()]);
                    let f = ct.evaluate(&c).unwrap();
                    let reclosed = close(ct, Side::Left).unwrap().evaluate(&c).unwrap();
                    assert_eq!(reclosed.matrix.get(0, 0), &trace_endo(&c, &f, Side::Left).unwrap());
                    for s in [Side::Left, Side::Right] {
                        if cut.is_planar_for(&d, s) {
                            assert_eq!(trace_endo(&c, &f, s).unwrap(), val);
                        }
                    }
                }
            }
            for s in [Side::Left, Side::Right] {
                let cuts = cutting_presentations(&d, s).unwrap();
                assert!(!cuts.is_empty());
                assert!(cuts.iter().all(|k| k.is_planar_for(&d, s)));
            }
            assert_eq!(cutting_presentations(&d, Side::TwoSided).unwrap().len(), es.len());
        }
    }
    assert!(nonzero >= 4, "{nonzero}");
}

#[test]
fn sphere_cuts_disagree_without_sphericality() {
    let c = cyclo();
    let co = coupons(&c);
    let d = close(&probes(&c, &co)[0], Side::Left).unwrap();
    let val = d.evaluate(&c).unwrap().matrix.get(0, 0).clone();
    let cut = cut_at(&d, 1, 0).unwrap();
    assert!(!cut.is_planar_for(&d, Side::Left));
    let f = cut.diagram.evaluate(&c).unwrap();
    assert_ne!(trace_endo(&c, &f, Side::Left).unwrap(), val);
}

#[test]
fn parse_round_trip() {
    let c = Category::sweedler();
    let text = "use sweedler\n\
        coupon h : [P++] -> [k++]\n\
        matrix h = ( 1 0 )\n\
        diagram loop : [] -> [] {\n  row coev P+ ;\n  row id P++, id P+- ;\n  row tev P+ ;\n}\n\
        diagram hd : [P++] -> [k++] { row h ; }\n";
    let file = parse_diagram_file(&c, text).unwrap();
    assert_eq!(file.category.as_deref(), Some("sweedler"));
    assert_eq!(DiagramFile::use_line(text).as_deref(), Some("sweedler"));
    let d = file.get("loop").unwrap();
    assert!(d.is_closed());
    assert!(d.evaluate(&c).unwrap().matrix.get(0, 0).is_zero());
    let again = format!("{}{}", write_coupons(&c, &file.coupons), file.get("hd").unwrap().to_text(&c, "hd"));
    let file2 = parse_diagram_file(&c, &again).unwrap();
    assert_eq!(file2.get("hd").unwrap().evaluate(&c).unwrap(), file.get("hd").unwrap().evaluate(&c).unwrap());
    assert!(matches!(file.select(None), Err(crate::Error::Validation(_))));
}

#[test]
fn parse_errors() {
    let c = Category::sweedler();
    let err = parse_diagram_file(&c, "diagram d : [P++] -> [P++] {\n  row id Q++ ;\n}\n").unwrap_err();
    assert!(matches!(err, crate::Error::Parse { line: 2, col: 10, .. }), "{err}");
    let err = parse_diagram_file(&c, "diagram d : [P++] -> [P++] {\n  row id P+- ;\n}\n").unwrap_err();
    assert!(matches!(err, crate::Error::Typecheck { row: 1, .. }), "{err}");
    let err = parse_diagram_file(&c, "coupon h : [P++] -> [k++]\nmatrix h = ( 0 1 )\n").unwrap_err();
    assert!(matches!(err, crate::Error::Parse { line: 1, .. }), "{err}");
    let err = parse_diagram_file(&c, "diagram d : [P++ -> [] { }").unwrap_err();
    assert!(matches!(err, crate::Error::Parse { line: 1, col: 18, .. }), "{err}");
    let err = parse_diagram_file(&c, "diagram d : [] -> [] { row g ; }").unwrap_err();
    assert!(matches!(err, crate::Error::Parse { line: 1, col: 28, .. }), "{err}");
}

