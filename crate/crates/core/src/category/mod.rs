//! The pivotal category of finite-dimensional modules over a pivotal Hopf algebra.

mod object;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

pub use object::{Atom, ObjectRef};

use crate::error::{Error, Result};
use crate::exact::{Field, Matrix, Scalar};
use crate::hopf::{
    parse_category, validate_hopf, validate_module, Builtin, HopfAlgebra, ModuleObject,
    ValidationReport,
};

/// A module map between two objects, as a (dim target × dim source) matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub source: ObjectRef,
    pub target: ObjectRef,
    pub matrix: Matrix,
}

impl Morphism {
    pub fn is_endo(&self) -> bool {
        self.source == self.target
    }

    pub fn scale(&self, c: &Scalar) -> Morphism {
        Morphism { source: self.source.clone(), target: self.target.clone(), matrix: self.matrix.scale(c) }
    }

    pub fn add(&self, other: &Morphism) -> Result<Morphism> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::Shape("adding morphisms with different source or target".into()));
        }
        Ok(Morphism {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.add(&other.matrix)?,
        })
    }
}

/// Basis of an intertwiner space.
///
/// The basis comes out of a reduced kernel computation: basis element k has entry 1 at flat
/// position `free[k]` and entry 0 at every other free position, so coordinates are read off.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub source: ObjectRef,
    pub target: ObjectRef,
    pub basis: Vec<Morphism>,
    free: Vec<usize>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `m` against the basis; `m` must lie in the space.
    pub fn coords(&self, m: &Matrix) -> Vec<Scalar> {
        let c: Vec<Scalar> = self.free.iter().map(|&i| m.entries()[i].clone()).collect();
        debug_assert!(
            self.combine_matrix(&c, m.field()) == *m,
            "matrix is not in the intertwiner space"
        );
        c
    }

    fn combine_matrix(&self, coeffs: &[Scalar], field: &Field) -> Matrix {
        let dims = (self.basis.first().map(|b| b.matrix.shape())).unwrap_or((0, 0));
        let mut acc = Matrix::zeros(field, dims.0, dims.1);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if !c.is_zero() {
                acc = acc.add(&b.matrix.scale(c)).expect("shape");
            }
        }
        acc
    }

    pub fn combine(&self, coeffs: &[Scalar], field: &Field, rows: usize, cols: usize) -> Morphism {
        let matrix = if self.basis.is_empty() {
            Matrix::zeros(field, rows, cols)
        } else {
            self.combine_matrix(coeffs, field)
        };
        Morphism { source: self.source.clone(), target: self.target.clone(), matrix }
    }
}

type ActionTable = Arc<Vec<Matrix>>;

/// The category itself: a validated Hopf algebra, its named modules and memo tables.
pub struct Category {
    hopf: HopfAlgebra,
    modules: Vec<ModuleObject>,
    gens: Vec<usize>,
    pivot_inv: Vec<Scalar>,
    atom_actions: RwLock<HashMap<Atom, ActionTable>>,
    actions: RwLock<HashMap<ObjectRef, ActionTable>>,
    homs: RwLock<HashMap<(ObjectRef, ObjectRef), Arc<HomSpace>>>,
}

impl fmt::Debug for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.modules.iter().map(|m| m.name.as_str()).collect();
        f.debug_struct("Category")
            .field("field", &self.hopf.field().to_string())
            .field("dim", &self.hopf.dim())
            .field("modules", &names)
            .finish()
    }
}

/// Full validation of algebra and modules.
pub fn validate_all(h: &HopfAlgebra, modules: &[ModuleObject]) -> Result<ValidationReport> {
    let mut r = validate_hopf(h);
    for m in modules {
        r.failures.extend(validate_module(h, m)?.failures);
    }
    Ok(r)
}

fn digits(dims: &[usize], mut idx: usize) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for (k, d) in dims.iter().enumerate().rev() {
        out[k] = idx % d;
        idx /= d;
    }
    out
}

/// Lexicographic index of the reversed digit string in the reversed dimensions.
fn rev_index(dims: &[usize], idx: usize) -> usize {
    let ds = digits(dims, idx);
    let mut out = 0;
    for (k, d) in dims.iter().enumerate().rev() {
        out = out * d + ds[k];
    }
    out
}

impl Category {
    /// Validate and build; a nonempty validation report is an error.
    pub fn new(hopf: HopfAlgebra, modules: Vec<ModuleObject>) -> Result<Category> {
        let report = validate_all(&hopf, &modules)?;
        if !report.is_empty() {
            return Err(Error::Validation(report.to_string().trim_end().replace('\n', "; ")));
        }
        Category::unchecked(hopf, modules)
    }

    /// Build without running the axiom checks; only the pivot inverse is required.
    pub fn unchecked(hopf: HopfAlgebra, modules: Vec<ModuleObject>) -> Result<Category> {
        let pivot_inv = hopf
            .pivot_inverse()
            .ok_or_else(|| Error::Validation("pivot is not invertible".into()))?;
        for (i, m) in modules.iter().enumerate() {
            if modules[..i].iter().any(|o| o.name == m.name) {
                return Err(Error::Validation(format!("duplicate module name {}", m.name)));
            }
        }
        let gens = hopf.generators();
        Ok(Category {
            hopf,
            modules,
            gens,
            pivot_inv,
            atom_actions: RwLock::default(),
            actions: RwLock::default(),
            homs: RwLock::default(),
        })
    }

    pub fn from_builtin(b: &Builtin) -> Result<Category> {
        let (h, m) = b.build()?;
        Category::new(h, m)
    }

    pub fn sweedler() -> Category {
        Category::from_builtin(&Builtin::Sweedler { field: Field::Rationals }).expect("fixture validates")
    }

    pub fn group_algebra(order: usize, field: Field, pivot: usize) -> Result<Category> {
        Category::from_builtin(&Builtin::GroupAlgebra { order, field, pivot })
    }

    pub fn from_text(text: &str) -> Result<Category> {
        let (h, m) = parse_category(text)?;
        Category::new(h, m)
    }

    pub fn hopf(&self) -> &HopfAlgebra {
        &self.hopf
    }

    pub fn field(&self) -> &Field {
        self.hopf.field()
    }

    pub fn modules(&self) -> &[ModuleObject] {
        &self.modules
    }

    /// Every named module as an object, in catalogue order.
    pub fn named_objects(&self) -> Vec<ObjectRef> {
        (0..self.modules.len()).map(ObjectRef::atom).collect()
    }

    pub fn module_index(&self, name: &str) -> Option<usize> {
        self.modules.iter().position(|m| m.name == name)
    }

    /// Parse `P+`, `P+*`, `P+⊗k-*`, `1` (factors may also be separated by `&`).
    pub fn object(&self, text: &str) -> Result<ObjectRef> {
        let t = text.trim();
        if t.is_empty() || t == "1" || t == "𝟙" {
            return Ok(ObjectRef::unit());
        }
        let mut atoms = Vec::new();
        for factor in t.split(|c| c == '⊗' || c == '&') {
            let factor = factor.trim();
            let base = factor.trim_end_matches('*');
            let depth = (factor.len() - base.len()) as u8;
            if base == "1" || base == "𝟙" {
                continue;
            }
            let module = self.module_index(base).ok_or_else(|| Error::UnknownObject(base.to_string()))?;
            atoms.push(Atom { module, depth });
        }
        Ok(ObjectRef::from_atoms(atoms))
    }

    pub fn name(&self, x: &ObjectRef) -> String {
        if x.is_unit() {
            return "1".to_string();
        }
        x.atoms()
            .iter()
            .map(|a| format!("{}{}", self.modules[a.module].name, "*".repeat(a.depth as usize)))
            .collect::<Vec<_>>()
            .join("⊗")
    }

    fn atom_dims(&self, x: &ObjectRef) -> Vec<usize> {
        x.atoms().iter().map(|a| self.modules[a.module].dim).collect()
    }

    pub fn dim(&self, x: &ObjectRef) -> usize {
        self.atom_dims(x).iter().product()
    }

    fn atom_action(&self, a: Atom) -> ActionTable {
        if let Some(t) = self.atom_actions.read().unwrap().get(&a) {
            return t.clone();
        }
        let table: Vec<Matrix> = if a.depth == 0 {
            self.modules[a.module].action.clone()
        } else {
            // ρ_{A*}(e_i) = ρ_A(S(e_i))ᵀ
            let inner = self.atom_action(Atom { module: a.module, depth: a.depth - 1 });
            let s = self.hopf.antipode_matrix();
            (0..self.hopf.dim())
                .map(|i| {
                    let mut acc = Matrix::zeros(self.field(), inner[0].rows(), inner[0].cols());
                    for (j, m) in inner.iter().enumerate() {
                        let c = s.get(j, i);
                        if !c.is_zero() {
                            acc = acc.add(&m.scale(c)).expect("shape");
                        }
                    }
                    acc.transpose()
                })
                .collect()
        };
        let table = Arc::new(table);
        self.atom_actions.write().unwrap().insert(a, table.clone());
        table
    }

    /// ρ_X(e_i) for every basis element; tensor words act through Δ.
    pub fn action(&self, x: &ObjectRef) -> ActionTable {
        if let Some(t) = self.actions.read().unwrap().get(x) {
            return t.clone();
        }
        let h = &self.hopf;
        let f = self.field();
        let table: Vec<Matrix> = match x.atoms() {
            [] => (0..h.dim()).map(|i| Matrix::diag(f, &[h.counit_vector()[i].clone()])).collect(),
            [a] => self.atom_action(*a).as_ref().clone(),
            atoms => {
                let (head, last) = atoms.split_at(atoms.len() - 1);
                let left = self.action(&ObjectRef::from_atoms(head.to_vec()));
                let right = self.atom_action(last[0]);
                (0..h.dim())
                    .map(|i| {
                        let delta = h.comult_of_basis(i);
                        let (r1, r2) = (left[0].rows(), right[0].rows());
                        let mut acc = Matrix::zeros(f, r1 * r2, r1 * r2);
                        for j in 0..h.dim() {
                            for k in 0..h.dim() {
                                let c = delta.get(j, k);
                                if !c.is_zero() {
                                    let t = left[j].kron(&right[k]).expect("same field");
                                    acc = acc.add(&t.scale(c)).expect("shape");
                                }
                            }
                        }
                        acc
                    })
                    .collect()
            }
        };
        let table = Arc::new(table);
        self.actions.write().unwrap().insert(x.clone(), table.clone());
        table
    }

    /// ρ_X(a) for an arbitrary algebra element.
    pub fn act(&self, x: &ObjectRef, a: &[Scalar]) -> Matrix {
        let table = self.action(x);
        let n = self.dim(x);
        let mut acc = Matrix::zeros(self.field(), n, n);
        for (i, c) in a.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&table[i].scale(c)).expect("shape");
            }
        }
        acc
    }

    pub fn pivot_action(&self, x: &ObjectRef) -> Matrix {
        self.act(x, self.hopf.pivot())
    }

    pub fn pivot_inverse_action(&self, x: &ObjectRef) -> Matrix {
        self.act(x, &self.pivot_inv)
    }

    pub fn is_intertwiner(&self, source: &ObjectRef, target: &ObjectRef, m: &Matrix) -> bool {
        if m.shape() != (self.dim(target), self.dim(source)) || m.field() != self.field() {
            return false;
        }
        let (s, t) = (self.action(source), self.action(target));
        (0..self.hopf.dim()).all(|i| t[i].mul(m).unwrap() == m.mul(&s[i]).unwrap())
    }

    /// A checked morphism.
    pub fn morphism(&self, source: &ObjectRef, target: &ObjectRef, matrix: Matrix) -> Result<Morphism> {
        if matrix.shape() != (self.dim(target), self.dim(source)) {
            return Err(Error::Shape(format!(
                "a {}x{} matrix cannot map {} to {}",
                matrix.rows(),
                matrix.cols(),
                self.name(source),
                self.name(target)
            )));
        }
        if !self.is_intertwiner(source, target, &matrix) {
            return Err(Error::NotIntertwiner(format!("{} -> {}", self.name(source), self.name(target))));
        }
        Ok(Morphism { source: source.clone(), target: target.clone(), matrix })
    }

    pub fn identity(&self, x: &ObjectRef) -> Morphism {
        Morphism { source: x.clone(), target: x.clone(), matrix: Matrix::identity(self.field(), self.dim(x)) }
    }

    /// g ∘ f.
    pub fn compose(&self, g: &Morphism, f: &Morphism) -> Result<Morphism> {
        if f.target != g.source {
            return Err(Error::Shape(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.name(&g.source),
                self.name(&g.target),
                self.name(&f.source),
                self.name(&f.target)
            )));
        }
        Ok(Morphism { source: f.source.clone(), target: g.target.clone(), matrix: g.matrix.mul(&f.matrix)? })
    }

    /// Compose a chain listed in application order: `chain(&[f, g, h]) = h ∘ g ∘ f`.
    pub fn chain(&self, ms: &[&Morphism]) -> Result<Morphism> {
        let (first, rest) = ms.split_first().ok_or_else(|| Error::Shape("empty chain".into()))?;
        rest.iter().try_fold((*first).clone(), |acc, m| self.compose(m, &acc))
    }

    pub fn tensor(&self, f: &Morphism, g: &Morphism) -> Result<Morphism> {
        Ok(Morphism {
            source: f.source.tensor(&g.source),
            target: f.target.tensor(&g.target),
            matrix: f.matrix.kron(&g.matrix)?,
        })
    }

    pub fn tensor_all(&self, ms: &[&Morphism]) -> Result<Morphism> {
        let unit = self.identity(&ObjectRef::unit());
        ms.iter().try_fold(unit, |acc, m| self.tensor(&acc, m))
    }

    pub fn dual_obj(&self, x: &ObjectRef) -> ObjectRef {
        x.dual()
    }

    /// f*: Y* → X*, the transpose read in the word bases of the duals.
    pub fn dual_mor(&self, f: &Morphism) -> Morphism {
        let (dx, dy) = (self.atom_dims(&f.source), self.atom_dims(&f.target));
        let (nx, ny) = (self.dim(&f.source), self.dim(&f.target));
        let mut m = Matrix::zeros(self.field(), nx, ny);
        for j in 0..ny {
            for i in 0..nx {
                let x = f.matrix.get(j, i);
                if !x.is_zero() {
                    m.set(rev_index(&dx, i), rev_index(&dy, j), x.clone());
                }
            }
        }
        Morphism { source: f.target.dual(), target: f.source.dual(), matrix: m }
    }

    /// The canonical isomorphism from the coordinate dual of X (action ρ_X(S(a))ᵀ, basis e^I in
    /// lexicographic order) onto the word X*.
    pub fn coordinate_dual_iso(&self, x: &ObjectRef) -> Matrix {
        let dims = self.atom_dims(x);
        let n = self.dim(x);
        let mut m = Matrix::zeros(self.field(), n, n);
        for i in 0..n {
            m.set(rev_index(&dims, i), i, self.field().one());
        }
        m
    }

    /// ev_X: X*⊗X → 𝟙, φ⊗v ↦ φ(v).
    pub fn ev(&self, x: &ObjectRef) -> Morphism {
        let dims = self.atom_dims(x);
        let n = self.dim(x);
        let mut m = Matrix::zeros(self.field(), 1, n * n);
        for i in 0..n {
            m.set(0, rev_index(&dims, i) * n + i, self.field().one());
        }
        Morphism { source: x.dual().tensor(x), target: ObjectRef::unit(), matrix: m }
    }

    /// coev_X: 𝟙 → X⊗X*, 1 ↦ Σ e_i⊗e^i.
    pub fn coev(&self, x: &ObjectRef) -> Morphism {
        let dims = self.atom_dims(x);
        let n = self.dim(x);
        let mut m = Matrix::zeros(self.field(), n * n, 1);
        for i in 0..n {
            m.set(i * n + rev_index(&dims, i), 0, self.field().one());
        }
        Morphism { source: ObjectRef::unit(), target: x.tensor(&x.dual()), matrix: m }
    }

    /// tev_X: X⊗X* → 𝟙, v⊗φ ↦ φ(gv).
    pub fn tev(&self, x: &ObjectRef) -> Morphism {
        let dims = self.atom_dims(x);
        let n = self.dim(x);
        let g = self.pivot_action(x);
        let mut m = Matrix::zeros(self.field(), 1, n * n);
        for i in 0..n {
            for j in 0..n {
                m.set(0, i * n + rev_index(&dims, j), g.get(j, i).clone());
            }
        }
        Morphism { source: x.tensor(&x.dual()), target: ObjectRef::unit(), matrix: m }
    }

    /// tcoev_X: 𝟙 → X*⊗X, 1 ↦ Σ e^i⊗g⁻¹e_i.
    pub fn tcoev(&self, x: &ObjectRef) -> Morphism {
        let dims = self.atom_dims(x);
        let n = self.dim(x);
        let gi = self.pivot_inverse_action(x);
        let mut m = Matrix::zeros(self.field(), n * n, 1);
        for i in 0..n {
            for j in 0..n {
                m.set(rev_index(&dims, i) * n + j, 0, gi.get(j, i).clone());
            }
        }
        Morphism { source: ObjectRef::unit(), target: x.dual().tensor(x), matrix: m }
    }

    /// (ev_X, coev_X, tev_X, tcoev_X).
    pub fn duality_morphisms(&self, x: &ObjectRef) -> (Morphism, Morphism, Morphism, Morphism) {
        (self.ev(x), self.coev(x), self.tev(x), self.tcoev(x))
    }

    /// φ_X = (tev_X ⊗ Id_{X**})(Id_X ⊗ coev_{X*}).
    pub fn pivot_iso(&self, x: &ObjectRef) -> Morphism {
        let xs = x.dual();
        let step1 = self.tensor(&self.identity(x), &self.coev(&xs)).expect("same field");
        let step2 = self.tensor(&self.tev(x), &self.identity(&xs.dual())).expect("same field");
        self.compose(&step2, &step1).expect("composable")
    }

    /// φ_X⁻¹: X** → X.
    pub fn pivot_iso_inv(&self, x: &ObjectRef) -> Morphism {
        let phi = self.pivot_iso(x);
        let inv = phi.matrix.inverse().expect("pivot is invertible");
        Morphism { source: phi.target, target: phi.source, matrix: inv }
    }

    /// Basis of Hom(X, Y) from the commutation constraints on algebra generators.
    pub fn hom_basis(&self, x: &ObjectRef, y: &ObjectRef) -> Arc<HomSpace> {
        let key = (x.clone(), y.clone());
        if let Some(h) = self.homs.read().unwrap().get(&key) {
            return h.clone();
        }
        let (dx, dy) = (self.dim(x), self.dim(y));
        let n = dx * dy;
        let (ax, ay) = (self.action(x), self.action(y));
        let f = self.field();
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        // unknown M[r][c] sits at r*dx + c; constraint (ρ_Y(a)M − Mρ_X(a))[r][c] = 0
        for &g in &self.gens {
            let (px, py) = (&ax[g], &ay[g]);
            for r in 0..dy {
                for c in 0..dx {
                    let mut row = vec![f.zero(); n];
                    for k in 0..dy {
                        let v = py.get(r, k);
                        if !v.is_zero() {
                            row[k * dx + c] = &row[k * dx + c] + v;
                        }
                    }
                    for k in 0..dx {
                        let v = px.get(k, c);
                        if !v.is_zero() {
                            row[r * dx + k] = &row[r * dx + k] - v;
                        }
                    }
                    if row.iter().any(|v| !v.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
        let (basis_vecs, free) = if rows.is_empty() {
            let basis = (0..n)
                .map(|i| {
                    let mut v = vec![f.zero(); n];
                    v[i] = f.one();
                    v
                })
                .collect();
            (basis, (0..n).collect())
        } else {
            let ns = Matrix::from_rows(f, rows).expect("constraint rows").nullspace();
            (ns.basis, ns.free)
        };
        let basis = basis_vecs
            .into_iter()
            .map(|v| Morphism {
                source: x.clone(),
                target: y.clone(),
                matrix: Matrix::new(f, dy, dx, v).expect("shape"),
            })
            .collect();
        let space = Arc::new(HomSpace { source: x.clone(), target: y.clone(), basis, free });
        self.homs.write().unwrap().insert(key, space.clone());
        space
    }

    pub fn end_basis(&self, x: &ObjectRef) -> Arc<HomSpace> {
        self.hom_basis(x, x)
    }

    /// End(X) has rank one.
    pub fn is_simple(&self, x: &ObjectRef) -> bool {
        self.end_basis(x).dim() == 1
    }

    /// λ with f = λ·Id for f ∈ End(X), X simple.
    pub fn bracket(&self, f: &Morphism) -> Result<Scalar> {
        if !f.is_endo() {
            return Err(Error::NotEndomorphism(format!(
                "{} -> {}",
                self.name(&f.source),
                self.name(&f.target)
            )));
        }
        let rank = self.end_basis(&f.source).dim();
        if rank != 1 {
            return Err(Error::NotSimple(self.name(&f.source), rank));
        }
        if self.dim(&f.source) == 0 {
            return Err(Error::NotSimple(self.name(&f.source), 0));
        }
        let lambda = f.matrix.get(0, 0).clone();
        if f.matrix != Matrix::identity(self.field(), self.dim(&f.source)).scale(&lambda) {
            return Err(Error::NotIntertwiner(format!("{} is not a multiple of Id", self.name(&f.source))));
        }
        Ok(lambda)
    }

    /// Search Hom(X, Y) for an invertible element.
    pub fn find_isomorphism(&self, x: &ObjectRef, y: &ObjectRef) -> Option<Morphism> {
        if self.dim(x) != self.dim(y) {
            return None;
        }
        let hs = self.hom_basis(x, y);
        let m = hs.dim();
        if m == 0 {
            return (self.dim(x) == 0).then(|| Morphism {
                source: x.clone(),
                target: y.clone(),
                matrix: Matrix::zeros(self.field(), 0, 0),
            });
        }
        let f = self.field();
        let n = self.dim(x);
        let try_coeffs = |c: &[Scalar]| {
            let mor = hs.combine(c, f, n, n);
            mor.matrix.inverse().map(|_| mor)
        };
        let p = f.characteristic();
        if p != 0 && (p as f64).powi(m as i32) <= 4096.0 {
            let total = p.pow(m as u32);
            for code in 1..total {
                let mut c = Vec::with_capacity(m);
                let mut k = code;
                for _ in 0..m {
                    c.push(f.from_i64((k % p) as i64));
                    k /= p;
                }
                if let Some(iso) = try_coeffs(&c) {
                    return Some(iso);
                }
            }
            return None;
        }
        for k in 0..m {
            let mut c = vec![f.zero(); m];
            c[k] = f.one();
            if let Some(iso) = try_coeffs(&c) {
                return Some(iso);
            }
        }
        let mut state: u64 = 0x9e37_79b9_7f4a_7c15;
        for _ in 0..32 {
            let c: Vec<Scalar> = (0..m)
                .map(|_| {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    f.from_i64(((state >> 33) % 97) as i64 - 48)
                })
                .collect();
            if let Some(iso) = try_coeffs(&c) {
                return Some(iso);
            }
        }
        None
    }

    /// A named fixture isomorphic to `x`, if any.
    pub fn identify(&self, x: &ObjectRef) -> Option<ObjectRef> {
        self.named_objects().into_iter().find(|o| self.find_isomorphism(x, o).is_some())
    }
}

#[cfg(test)]
mod tests;
