use super::*;

fn sw() -> Category {
    Category::sweedler()
}

fn objects(c: &Category) -> Vec<ObjectRef> {
    let mut out = vec![ObjectRef::unit()];
    out.extend(c.named_objects());
    for a in ["P+", "k-", "P-"] {
        for b in ["P+", "k+"] {
            out.push(c.object(&format!("{a}⊗{b}*")).unwrap());
        }
    }
    out
}

#[test]
fn names_round_trip() {
    let c = sw();
    let x = c.object("P+⊗k-*&P-**").unwrap();
    assert_eq!(c.name(&x), "P+⊗k-*⊗P-**");
    assert_eq!(c.object(&c.name(&x)).unwrap(), x);
    assert!(c.object("1").unwrap().is_unit());
    assert!(matches!(c.object("Q"), Err(Error::UnknownObject(_))));
    assert_eq!(c.dim(&x), 4);
}

#[test]
fn duality_maps_are_intertwiners_and_zigzags_hold() {
    let c = sw();
    for x in objects(&c) {
        let (ev, coev, tev, tcoev) = c.duality_morphisms(&x);
        for m in [&ev, &coev, &tev, &tcoev] {
            assert!(c.is_intertwiner(&m.source, &m.target, &m.matrix), "{}", c.name(&x));
        }
        let xs = x.dual();
        let (ix, ixs) = (c.identity(&x), c.identity(&xs));
        // (Id_X ⊗ ev)(coev ⊗ Id_X) = Id_X
        let z = c.chain(&[&c.tensor(&coev, &ix).unwrap(), &c.tensor(&ix, &ev).unwrap()]).unwrap();
        assert_eq!(z, ix);
        let z = c.chain(&[&c.tensor(&ixs, &coev).unwrap(), &c.tensor(&ev, &ixs).unwrap()]).unwrap();
        assert_eq!(z, ixs);
        let z = c.chain(&[&c.tensor(&ix, &tcoev).unwrap(), &c.tensor(&tev, &ix).unwrap()]).unwrap();
        assert_eq!(z, ix);
        let z = c.chain(&[&c.tensor(&tcoev, &ixs).unwrap(), &c.tensor(&ixs, &tev).unwrap()]).unwrap();
        assert_eq!(z, ixs);
    }
    let u = ObjectRef::unit();
    assert!(c.ev(&u).matrix.is_identity());
    assert!(c.pivot_iso(&u).matrix.is_identity());
}

#[test]
fn dim_r_of_projective_vanishes() {
    let c = sw();
    let p = c.object("P+").unwrap();
    let v = c.compose(&c.tev(&p), &c.coev(&p)).unwrap();
    assert!(v.matrix.is_zero());
    assert_eq!(c.ev(&p).matrix.rank(), 1);
}

#[test]
fn pivot_is_action_of_g_natural_and_monoidal() {
    let c = sw();
    for x in objects(&c) {
        let phi = c.pivot_iso(&x);
        assert_eq!(phi.matrix, c.pivot_action(&x), "{}", c.name(&x));
        assert_eq!(phi.target, x.dual().dual());
        assert!(c.is_intertwiner(&phi.source, &phi.target, &phi.matrix));
    }
    let p = c.object("P+").unwrap();
    let pp = p.tensor(&p);
    for b in &c.end_basis(&pp).basis {
        let bb = c.dual_mor(&c.dual_mor(b));
        let phi = c.pivot_iso(&pp);
        let lhs = c.compose(&phi, b).unwrap();
        let rhs = c.compose(&bb, &phi).unwrap();
        assert_eq!(lhs, rhs);
    }
    for a in c.named_objects() {
        for b in c.named_objects().into_iter().take(4) {
            let ab = a.tensor(&b);
            let lhs = c.pivot_iso(&ab).matrix;
            let rhs = c.tensor(&c.pivot_iso(&a), &c.pivot_iso(&b)).unwrap().matrix;
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn dual_morphism_matches_both_composites() {
    let c = sw();
    let x = c.object("P+").unwrap();
    let y = c.object("P+⊗k-").unwrap();
    for f in &c.hom_basis(&x, &y).basis {
        let fs = c.dual_mor(f);
        let (xs, ys) = (x.dual(), y.dual());
        // (ev_Y ⊗ Id_{X*})(Id_{Y*} ⊗ f ⊗ Id_{X*})(Id_{Y*} ⊗ coev_X)
        let left = c
            .chain(&[
                &c.tensor(&c.identity(&ys), &c.coev(&x)).unwrap(),
                &c.tensor_all(&[&c.identity(&ys), f, &c.identity(&xs)]).unwrap(),
                &c.tensor(&c.ev(&y), &c.identity(&xs)).unwrap(),
            ])
            .unwrap();
        // (Id_{X*} ⊗ tev_Y)(Id_{X*} ⊗ f ⊗ Id_{Y*})(tcoev_X ⊗ Id_{Y*})
        let right = c
            .chain(&[
                &c.tensor(&c.tcoev(&x), &c.identity(&ys)).unwrap(),
                &c.tensor_all(&[&c.identity(&xs), f, &c.identity(&ys)]).unwrap(),
                &c.tensor(&c.identity(&xs), &c.tev(&y)).unwrap(),
            ])
            .unwrap();
        assert_eq!(left, fs);
        assert_eq!(right, fs);
        assert!(c.is_intertwiner(&fs.source, &fs.target, &fs.matrix));
    }
    let id = c.identity(&x);
    assert_eq!(c.dual_mor(&id), c.identity(&x.dual()));
}

#[test]
fn hom_spaces() {
    let c = sw();
    let o = |s: &str| c.object(s).unwrap();
    assert_eq!(c.hom_basis(&o("1"), &o("1")).dim(), 1);
    assert_eq!(c.hom_basis(&o("k+"), &o("k-")).dim(), 0);
    assert_eq!(c.hom_basis(&o("P+"), &o("P+")).dim(), 1);
    assert_eq!(c.hom_basis(&o("P+"), &o("k+")).dim(), 1);
    assert!(c.is_simple(&o("P+")));
    assert!(c.is_simple(&o("1")));
    assert!(!c.is_simple(&o("reg")));
    let km = o("k-");
    assert!(c.find_isomorphism(&km.dual(), &km).is_some());
    assert!(c.find_isomorphism(&o("P+*"), &o("P-")).is_some());
    assert!(c.find_isomorphism(&o("P+*"), &o("P+")).is_none());
    assert_eq!(c.identify(&o("P+*")), Some(o("P-")));
    let f = c.identity(&o("P+")).scale(&c.field().from_i64(3));
    assert_eq!(c.bracket(&f).unwrap(), c.field().from_i64(3));
    assert!(matches!(c.bracket(&c.identity(&o("reg"))), Err(Error::NotSimple(_, _))));
    let hs = c.end_basis(&o("P+⊗P+"));
    for b in &hs.basis {
        let co = hs.coords(&b.matrix);
        assert_eq!(co.iter().filter(|x| x.is_one()).count(), 1);
    }
}

#[test]
fn checked_morphisms() {
    let c = sw();
    let p = c.object("P+").unwrap();
    let k = c.object("k+").unwrap();
    let m = Matrix::from_i64(c.field(), &[&[0, 1]]);
    assert!(matches!(c.morphism(&p, &k, m), Err(Error::NotIntertwiner(_))));
    let m = Matrix::from_i64(c.field(), &[&[1, 0]]);
    assert!(c.morphism(&p, &k, m).is_ok());
    assert!(matches!(c.morphism(&p, &k, Matrix::identity(c.field(), 2)), Err(Error::Shape(_))));
}

#[test]
fn nonspherical_group_algebra_pivot() {
    let f = Field::parse("Cyclotomic 3").unwrap();
    let c = Category::group_algebra(3, f.clone(), 1).unwrap();
    let x = c.object("chi1").unwrap();
    let phi = c.pivot_iso(&x);
    assert_eq!(phi.matrix.get(0, 0), &f.zeta().unwrap());
}
