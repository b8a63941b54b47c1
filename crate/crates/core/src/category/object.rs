/// A named module dualised `depth` times.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub module: usize,
    pub depth: u8,
}

impl Atom {
    pub fn dual(self) -> Atom {
        Atom { module: self.module, depth: self.depth + 1 }
    }
}

/// A tensor word of atoms; the empty word is the unit object.
///
/// Tensor products are concatenation and duals reverse the word, so associators, unitors and
/// the identification (X⊗Y)* = Y*⊗X* are literal equalities.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ObjectRef {
    atoms: Vec<Atom>,
}

impl ObjectRef {
    pub fn unit() -> ObjectRef {
        ObjectRef { atoms: Vec::new() }
    }

    pub fn atom(module: usize) -> ObjectRef {
        ObjectRef { atoms: vec![Atom { module, depth: 0 }] }
    }

    pub fn from_atoms(atoms: Vec<Atom>) -> ObjectRef {
        ObjectRef { atoms }
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn is_unit(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn tensor(&self, other: &ObjectRef) -> ObjectRef {
        let mut atoms = self.atoms.clone();
        atoms.extend_from_slice(&other.atoms);
        ObjectRef { atoms }
    }

    pub fn tensor_all<'a>(objs: impl IntoIterator<Item = &'a ObjectRef>) -> ObjectRef {
        objs.into_iter().fold(ObjectRef::unit(), |acc, o| acc.tensor(o))
    }

    pub fn dual(&self) -> ObjectRef {
        ObjectRef { atoms: self.atoms.iter().rev().map(|a| a.dual()).collect() }
    }

    /// Split after the first `k` atoms.
    pub fn split_at(&self, k: usize) -> (ObjectRef, ObjectRef) {
        let (a, b) = self.atoms.split_at(k);
        (ObjectRef { atoms: a.to_vec() }, ObjectRef { atoms: b.to_vec() })
    }

    pub fn starts_with(&self, prefix: &ObjectRef) -> bool {
        self.atoms.starts_with(&prefix.atoms)
    }

    pub fn ends_with(&self, suffix: &ObjectRef) -> bool {
        self.atoms.ends_with(&suffix.atoms)
    }
}
