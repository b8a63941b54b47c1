use super::*;
use crate::exact::Field;

fn obj(c: &Category, s: &str) -> ObjectRef {
    c.object(s).unwrap()
}

#[test]
fn generators_are_members() {
    let c = Category::sweedler();
    for x in c.named_objects() {
        for spec in [IdealSpec::left(vec![x.clone()]), IdealSpec::right(vec![x.clone()])] {
            let w = membership(&c, &x, &spec).unwrap();
            if c.dim(&x) == 0 {
                continue;
            }
            let w = w.unwrap_or_else(|| panic!("{}", c.name(&x)));
            assert!(retract_from_witness(&c, &x, &w).unwrap().verify(&c).unwrap());
        }
    }
}

#[test]
fn sweedler_projectives_form_the_ideal_of_p_plus() {
    let c = Category::sweedler();
    let spec = IdealSpec::left(vec![obj(&c, "P+")]);
    let w = membership(&c, &obj(&c, "P-"), &spec).unwrap().expect("P- in the left ideal of P+");
    let r = retract_from_witness(&c, &obj(&c, "P-"), &w).unwrap();
    assert_eq!(r.ambient(), obj(&c, "P-⊗P+*⊗P+"));
    assert_eq!(c.compose(&r.p, &r.q).unwrap().matrix, Matrix::identity(c.field(), 2));
    assert!(membership(&c, &obj(&c, "k+"), &spec).unwrap().is_none());
    assert!(membership(&c, &obj(&c, "k-"), &spec).unwrap().is_none());
    // twisting by an automorphism keeps the retract identity
    let a = c.identity(&obj(&c, "P-")).scale(&c.field().from_i64(3));
    assert!(r.twisted(&c, &a).unwrap().verify(&c).unwrap());
    // kernel shifts are witnesses too
    for k in &w.kernel {
        let r2 = retract_from_witness(&c, &obj(&c, "P-"), &w.shifted(k).unwrap()).unwrap();
        assert!(r2.verify(&c).unwrap());
    }
    let two = IdealSpec::two_sided(vec![obj(&c, "P+")], vec![obj(&c, "k-")]);
    assert!(witnesses(&c, &obj(&c, "P-"), &two).unwrap().len() >= 3);
    assert!(membership(&c, &obj(&c, "k+"), &two).unwrap().is_none());
}

#[test]
fn projectivity_and_epis() {
    let c = Category::sweedler();
    assert!(is_projective(&c, &obj(&c, "P+")).unwrap().is_some());
    assert!(is_projective(&c, &obj(&c, "reg")).unwrap().is_some());
    assert!(is_projective(&c, &obj(&c, "k+")).unwrap().is_none());
    assert!(is_projective(&c, &obj(&c, "k-⊗k-")).unwrap().is_none());
    assert!(is_epi(&c.ev(&obj(&c, "P+"))));
    assert!(is_epi(&c.identity(&obj(&c, "P-"))));
    let zero = Morphism {
        source: obj(&c, "P+"),
        target: obj(&c, "k+"),
        matrix: Matrix::zeros(c.field(), 1, 2),
    };
    assert!(!is_epi(&zero));
    let f2 = Category::group_algebra(2, Field::Prime(2), 0).unwrap();
    let s = is_projective(&f2, &obj(&f2, "reg")).unwrap().unwrap();
    assert_eq!(s.shape(), (4, 2));
    assert!(is_projective(&f2, &obj(&f2, "k")).unwrap().is_none());
}

#[test]
fn proj_is_an_ideal() {
    let c = Category::sweedler();
    for p in ["P+", "P-"] {
        for y in c.named_objects() {
            if c.dim(&y) > 2 {
                continue;
            }
            let p = obj(&c, p);
            assert!(is_projective(&c, &y.tensor(&p)).unwrap().is_some());
            assert!(is_projective(&c, &p.tensor(&y)).unwrap().is_some());
        }
    }
}

#[test]
fn projectives_lie_in_ideals_of_projectives_with_epi_evaluation() {
    let c = Category::sweedler();
    for p in ["P+", "P-"] {
        let p = obj(&c, p);
        assert!(is_epi(&c.ev(&p)));
        for q in ["P+", "P-", "P+*", "P-⊗k-"] {
            let q = obj(&c, q);
            assert!(is_member(&c, &q, &IdealSpec::Proj).unwrap());
            assert!(membership(&c, &q, &IdealSpec::left(vec![p.clone()])).unwrap().is_some());
        }
    }
}

#[test]
fn membership_duality_and_repleteness() {
    for c in [Category::sweedler(), Category::group_algebra(2, Field::Prime(2), 0).unwrap()] {
        let named = c.named_objects();
        let mut us = named.clone();
        us.extend(named.iter().filter(|x| c.dim(x) <= 2).map(|x| x.tensor(&named[0])));
        for o in &named {
            for u in &us {
                if c.dim(u) * c.dim(o) > MAX_SOLVE_DIM {
                    continue;
                }
                let l = membership(&c, u, &IdealSpec::left(vec![o.clone()])).unwrap().is_some();
                let r = membership(&c, &u.dual(), &IdealSpec::right(vec![o.dual()])).unwrap().is_some();
                assert_eq!(l, r, "{} in left ideal of {}", c.name(u), c.name(o));
                if let Some(v) = c.identify(u) {
                    let lv = membership(&c, &v, &IdealSpec::left(vec![o.clone()])).unwrap().is_some();
                    assert_eq!(l, lv);
                }
            }
        }
    }
}

#[test]
fn spec_text() {
    let c = Category::sweedler();
    for t in ["left:{P+}", "right:{P+,k-}", "two-sided:{P+};probes:{k-}", "proj"] {
        let s = IdealSpec::parse(&c, t).unwrap();
        assert_eq!(s.describe(&c), t);
    }
    assert!(IdealSpec::parse(&c, "left:{Q}").is_err());
    assert!(IdealSpec::parse(&c, "left:P+").is_err());
    assert!(IdealSpec::parse(&c, "left:{P+};probes:{k-}").is_err());
}
