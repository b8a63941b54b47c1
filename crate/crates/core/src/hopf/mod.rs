//! Pivotal Hopf algebras given by structure constants, their modules, and fixtures.

mod algebra;
mod builtin;
mod file;
mod module;

pub use algebra::{validate_hopf, AxiomFailure, HopfAlgebra, ValidationReport};
pub use builtin::{builtin, group_algebra, sweedler, Builtin};
pub use file::{parse_category, parse_matrix_body, write_category};
pub use module::{validate_module, ModuleObject};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{Field, Matrix};

    #[test]
    fn sweedler_is_a_pivotal_hopf_algebra() {
        let (h, mods) = sweedler(&Field::Rationals).unwrap();
        let r = validate_hopf(&h);
        assert!(r.is_empty(), "{r}");
        for m in &mods {
            assert!(validate_module(&h, m).unwrap().is_empty(), "{}", m.name);
        }
        assert_eq!(h.generators(), vec![1, 2]);
    }

    #[test]
    fn identity_antipode_is_rejected() {
        let (mut h, _) = sweedler(&Field::Rationals).unwrap();
        h.antipode = Matrix::identity(h.field(), 4);
        let r = validate_hopf(&h);
        assert!(r.fails("antipode"));
    }

    #[test]
    fn transposed_x_action_breaks_relations() {
        let f = Field::Rationals;
        let (h, mods) = sweedler(&f).unwrap();
        let mut p = mods.iter().find(|m| m.name == "P+").unwrap().clone();
        // ρ(gx) keeps its old value, so ρ(g)ρ(x) = ρ(gx) breaks
        p.action[2] = p.action[2].transpose();
        assert!(validate_module(&h, &p).unwrap().fails("module relation"));
        let zero = ModuleObject::new("0", 0, vec![Matrix::zeros(&f, 0, 0); 4]);
        assert!(validate_module(&h, &zero).unwrap().is_empty());
        let short = ModuleObject::new("bad", 2, vec![Matrix::identity(&f, 2)]);
        assert!(validate_module(&h, &short).is_err());
    }

    #[test]
    fn group_algebras_validate() {
        for (n, f, piv) in [
            (2, Field::Prime(2), 0),
            (5, Field::Prime(5), 0),
            (3, Field::parse("Cyclotomic 3").unwrap(), 1),
            (4, Field::Prime(5), 1),
        ] {
            let (h, mods) = group_algebra(n, &f, piv).unwrap();
            assert!(validate_hopf(&h).is_empty());
            for m in &mods {
                assert!(validate_module(&h, m).unwrap().is_empty());
            }
        }
        let (_, mods) = group_algebra(2, &Field::Prime(2), 0).unwrap();
        assert_eq!(mods.iter().find(|m| m.name == "reg").unwrap().dim, 2);
        let (_, mods) = group_algebra(3, &Field::parse("Cyclotomic 3").unwrap(), 1).unwrap();
        assert_eq!(mods.len(), 4);
    }

    #[test]
    fn unknown_builtin() {
        assert!(builtin("nope", &Field::Rationals, &[]).is_err());
        assert!(Builtin::parse("group_algebra:x", None).is_err());
        assert_eq!(
            Builtin::parse("group_algebra:3:1", Some(Field::Prime(7))).unwrap(),
            Builtin::GroupAlgebra { order: 3, field: Field::Prime(7), pivot: 1 }
        );
    }

    #[test]
    fn category_file_round_trip() {
        let (h, mods) = sweedler(&Field::Rationals).unwrap();
        let text = write_category(&h, &mods);
        let (h2, mods2) = parse_category(&text).unwrap();
        assert_eq!(h, h2);
        assert_eq!(mods, mods2);
        let (h, mods) = group_algebra(3, &Field::parse("Cyclotomic 3").unwrap(), 1).unwrap();
        let (h2, mods2) = parse_category(&write_category(&h, &mods)).unwrap();
        assert_eq!(h, h2);
        assert_eq!(mods, mods2);
    }

    #[test]
    fn category_file_errors_carry_positions() {
        let err = parse_category("field Q\nhopf dim 2\nmult 0 5 -> (1 0)\n").unwrap_err();
        assert!(matches!(err, crate::Error::Parse { line: 3, col: 8, .. }), "{err}");
        let err = parse_category("hopf dim 2\n").unwrap_err();
        assert!(matches!(err, crate::Error::Parse { line: 1, .. }));
        let err = parse_category("field Q\nhopf dim 1\nfrobnicate\n").unwrap_err();
        assert!(matches!(err, crate::Error::Parse { line: 3, .. }));
    }
}
