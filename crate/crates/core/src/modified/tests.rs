use super::*;
use crate::exact::Field;
use crate::trace::{check_trace_axioms, solve_ambidextrous, UsualTrace};

fn obj(c: &Category, s: &str) -> ObjectRef {
    c.object(s).unwrap()
}

fn f3() -> Category {
    Category::group_algebra(3, Field::Prime(3), 1).unwrap()
}

fn f3_left(c: &Category) -> ExtendedTrace {
    let reg = obj(c, "reg");
    let sols = solve_ambidextrous(c, &[reg], Mode::Left, &[]).unwrap();
    assert_eq!(sols.len(), 1);
    ExtendedTrace::extend(c, sols[0].clone(), &[]).unwrap()
}

#[test]
fn sweedler_bracket_is_not_extendable() {
    let c = Category::sweedler();
    let seed = TraceFamily::bracket(&c, &obj(&c, "P+"), Side::Left).unwrap();
    assert!(ExtendedTrace::extend(&c, seed.clone(), &[]).is_err());
    let t = ExtendedTrace::unchecked(seed, vec![]);
    assert!(modified_dim(&c, &t, &obj(&c, "P+")).unwrap().is_one());
    assert!(matches!(modified_dim(&c, &t, &obj(&c, "k+")), Err(Error::NotAdmissible(_))));
}

#[test]
fn one_sided_extension_is_a_trace() {
    let c = f3();
    let t = f3_left(&c);
    let reg = obj(&c, "reg");
    assert_eq!(t.form(&c, &reg).unwrap(), t.seed().forms[0]);
    let probes = [reg.clone(), obj(&c, "k⊗reg"), obj(&c, "reg*")];
    let r = check_trace_axioms(&c, &t, &probes, &[obj(&c, "k")]);
    assert!(r.is_clean(), "{r}");
    for u in &probes {
        let a = well_definedness_audit(&c, &t, u, 4).unwrap();
        assert!(a.is_clean(), "{a}");
        assert!(a.notes.iter().any(|n| n.contains("presentations")), "{a}");
        // duality for one-sided traces
        for f in &c.end_basis(u).basis {
            let ff = c.dual_mor(&c.dual_mor(f));
            assert_eq!(t.eval(&c, &ff).unwrap(), t.eval(&c, f).unwrap());
        }
    }
    assert!(!t.admits(&c, &obj(&c, "k")));
    assert!(!modified_dim(&c, &t, &reg).unwrap().is_zero() || t.form(&c, &reg).unwrap().iter().any(|x| !x.is_zero()));
}

#[test]
fn corrupted_seed_is_caught() {
    let c = f3();
    let t = f3_left(&c);
    let mut seed = t.seed().clone();
    let one = c.field().one();
    seed.forms[0][0] = &seed.forms[0][0] + &one;
    let bad = ExtendedTrace::unchecked(seed, vec![]);
    let reg = obj(&c, "reg");
    let a = well_definedness_audit(&c, &bad, &reg, 4).unwrap();
    assert!(!a.is_clean(), "{a}");
}

#[test]
fn two_sided_extension_is_self_dual() {
    let c = Category::group_algebra(2, Field::Prime(2), 0).unwrap();
    let reg = obj(&c, "reg");
    let middles = c.named_objects();
    let sols = solve_ambidextrous(&c, &[reg.clone()], Mode::Spherical, &middles).unwrap();
    let t = ExtendedTrace::extend(&c, sols[0].clone(), &middles).unwrap();
    for u in [reg.clone(), obj(&c, "reg*"), obj(&c, "k⊗reg"), obj(&c, "reg⊗k")] {
        let a = well_definedness_audit(&c, &t, &u, 5).unwrap();
        assert!(a.is_clean(), "{a}");
        for f in &c.end_basis(&u).basis {
            assert_eq!(t.eval(&c, &c.dual_mor(f)).unwrap(), t.eval(&c, f).unwrap());
        }
    }
    let d = modified_dim(&c, &t, &reg).unwrap();
    assert_eq!(d, modified_dim(&c, &t, &reg.dual()).unwrap());
    let a = compute_a(&c, &t, &[reg.clone(), obj(&c, "k⊗reg")]).unwrap();
    assert_eq!(a.members.len(), 2);
    assert_eq!(a.undetermined, vec![] as Vec<ObjectRef>);
    assert_eq!(compute_a(&c, &t, &[obj(&c, "k")]).unwrap().undetermined.len(), 1);
}

#[test]
fn slopes_on_the_cyclotomic_fixture() {
    let c = Category::group_algebra(3, Field::parse("Cyclotomic 3").unwrap(), 1).unwrap();
    let chi1 = obj(&c, "chi1");
    let seed = TraceFamily::bracket(&c, &chi1, Side::Left).unwrap();
    let t = ExtendedTrace::extend(&c, seed, &[]).unwrap();
    let a5 = simple_projectives(&c, &c.named_objects()).unwrap();
    assert_eq!(a5.len(), 3);
    let triples = vec![
        (chi1.clone(), obj(&c, "chi2"), obj(&c, "chi2")),
        (obj(&c, "k"), chi1.clone(), obj(&c, "chi2")),
        (obj(&c, "chi2"), chi1.clone(), chi1.clone()),
    ];
    let (table, r) = slope_table(&c, &t, &a5, &triples).unwrap();
    assert!(r.is_clean(), "{r}");
    assert_eq!(table.slope(&chi1), Some(&c.field().zeta().unwrap()));
    assert!(table.slope(&obj(&c, "k")).unwrap().is_one());
    let bad = slope_table(&c, &t, &a5, &[(chi1.clone(), chi1.clone(), chi1.clone())]).unwrap().1;
    assert!(!bad.is_clean());
    let a = compute_a(&c, &t, &c.named_objects()).unwrap();
    assert_eq!(a.members, vec![obj(&c, "k")]);
    // contrast with the usual trace: it is the bracket seed up to a scalar here
    let u = UsualTrace(Side::Left);
    let lam = t.eval(&c, &c.identity(&obj(&c, "reg"))).unwrap();
    let mu = modified_dim(&c, &u, &obj(&c, "reg")).unwrap();
    assert_eq!(&lam * &modified_dim(&c, &u, &chi1).unwrap(), mu);
}
