use std::fmt;

use crate::error::{Error, Result};
use crate::exact::{solve_linear, Field, Matrix, Scalar, Solution};

/// A finite-dimensional Hopf algebra with a grouplike pivot, given by structure constants
/// on a basis e_0, …, e_{n-1}.
#[derive(Clone, Debug, PartialEq)]
pub struct HopfAlgebra {
    pub(crate) field: Field,
    pub(crate) dim: usize,
    /// `mult[i][j]` = coefficients of e_i e_j.
    pub(crate) mult: Vec<Vec<Vec<Scalar>>>,
    pub(crate) unit: Vec<Scalar>,
    /// `comult[i]` has entry (j, k) = coefficient of e_j ⊗ e_k in Δ(e_i).
    pub(crate) comult: Vec<Matrix>,
    pub(crate) counit: Vec<Scalar>,
    /// Column i holds S(e_i).
    pub(crate) antipode: Matrix,
    pub(crate) pivot: Vec<Scalar>,
}

/// One violated axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomFailure {
    pub axiom: &'static str,
    pub detail: String,
}

/// List of failed axioms; empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub failures: Vec<AxiomFailure>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn fails(&self, axiom: &str) -> bool {
        self.failures.iter().any(|f| f.axiom == axiom)
    }

    pub(crate) fn push(&mut self, axiom: &'static str, detail: impl Into<String>) {
        self.failures.push(AxiomFailure { axiom, detail: detail.into() });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.failures.is_empty() {
            return writeln!(f, "all axioms hold");
        }
        for x in &self.failures {
            writeln!(f, "{}: {}", x.axiom, x.detail)?;
        }
        Ok(())
    }
}

fn vec_add(a: &mut [Scalar], b: &[Scalar], c: &Scalar) {
    if c.is_zero() {
        return;
    }
    for (x, y) in a.iter_mut().zip(b) {
        if !y.is_zero() {
            *x = &*x + &(c * y);
        }
    }
}

impl HopfAlgebra {
    /// Assemble from raw structure constants, checking only shapes.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        field: &Field,
        dim: usize,
        mult: Vec<Vec<Vec<Scalar>>>,
        unit: Vec<Scalar>,
        comult: Vec<Matrix>,
        counit: Vec<Scalar>,
        antipode: Matrix,
        pivot: Vec<Scalar>,
    ) -> Result<HopfAlgebra> {
        let bad = |what: &str| Err(Error::DimensionMismatch(format!("hopf {what}")));
        if dim == 0 {
            return bad("dimension must be positive");
        }
        if mult.len() != dim || mult.iter().any(|r| r.len() != dim || r.iter().any(|v| v.len() != dim))
        {
            return bad("multiplication table shape");
        }
        if unit.len() != dim || counit.len() != dim || pivot.len() != dim {
            return bad("unit/counit/pivot length");
        }
        if comult.len() != dim || comult.iter().any(|m| m.shape() != (dim, dim)) {
            return bad("comultiplication shape");
        }
        if antipode.shape() != (dim, dim) {
            return bad("antipode shape");
        }
        Ok(HopfAlgebra { field: field.clone(), dim, mult, unit, comult, counit, antipode, pivot })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.dim];
        v[i] = self.field.one();
        v
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn pivot(&self) -> &[Scalar] {
        &self.pivot
    }

    pub fn counit_of(&self, a: &[Scalar]) -> Scalar {
        a.iter().zip(&self.counit).fold(self.field.zero(), |acc, (x, y)| &acc + &(x * y))
    }

    pub fn counit_vector(&self) -> &[Scalar] {
        &self.counit
    }

    pub fn multiply(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.dim];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    vec_add(&mut out, &self.mult[i][j], &(x * y));
                }
            }
        }
        out
    }

    pub fn antipode_of(&self, a: &[Scalar]) -> Vec<Scalar> {
        let col = Matrix::column(&self.field, a.to_vec());
        self.antipode.mul(&col).expect("antipode shape").into_entries()
    }

    pub fn antipode_matrix(&self) -> &Matrix {
        &self.antipode
    }

    /// Δ(a) as a dim×dim coefficient matrix.
    pub fn coproduct(&self, a: &[Scalar]) -> Matrix {
        let mut out = Matrix::zeros(&self.field, self.dim, self.dim);
        for (i, x) in a.iter().enumerate() {
            if !x.is_zero() {
                out = out.add(&self.comult[i].scale(x)).expect("shape");
            }
        }
        out
    }

    pub fn comult_of_basis(&self, i: usize) -> &Matrix {
        &self.comult[i]
    }

    pub fn mult_of_basis(&self, i: usize, j: usize) -> &[Scalar] {
        &self.mult[i][j]
    }

    /// Left-multiplication matrix of a: column j holds a·e_j.
    pub fn left_mult_matrix(&self, a: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(&self.field, self.dim, self.dim);
        for j in 0..self.dim {
            let col = self.multiply(a, &self.basis(j));
            for (i, x) in col.into_iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn inverse_of(&self, a: &[Scalar]) -> Option<Vec<Scalar>> {
        let l = self.left_mult_matrix(a);
        let rhs = Matrix::column(&self.field, self.unit.clone());
        match solve_linear(&l, &rhs).ok()? {
            Solution::Solved { particular, .. } => {
                let b = particular.into_entries();
                (self.multiply(&b, a) == self.unit).then_some(b)
            }
            Solution::Inconsistent => None,
        }
    }

    pub fn pivot_inverse(&self) -> Option<Vec<Scalar>> {
        self.inverse_of(&self.pivot)
    }

    /// A small generating set of the algebra, chosen greedily in basis order.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span_vecs: Vec<Vec<Scalar>> = vec![self.unit.clone()];
        let rank_of = |vs: &[Vec<Scalar>]| {
            Matrix::from_rows(&self.field, vs.to_vec()).map(|m| m.rank()).unwrap_or(0)
        };
        for i in 0..self.dim {
            let mut candidate = span_vecs.clone();
            candidate.push(self.basis(i));
            if rank_of(&candidate) == rank_of(&span_vecs) {
                continue;
            }
            gens.push(i);
            // close the span under multiplication by generators
            let mut vs = candidate;
            loop {
                let before = rank_of(&vs);
                let mut extra = Vec::new();
                for v in &vs {
                    for &g in &gens {
                        extra.push(self.multiply(&self.basis(g), v));
                    }
                }
                vs.extend(extra);
                let m = Matrix::from_rows(&self.field, vs.clone()).expect("rows");
                let (r, piv) = m.rref();
                vs = (0..piv.len()).map(|k| r.row(k).to_vec()).collect();
                if vs.len() == before {
                    break;
                }
            }
            span_vecs = vs;
            if span_vecs.len() == self.dim {
                break;
            }
        }
        gens
    }

    fn tensor_mul(&self, a: &Matrix, b: &Matrix) -> Matrix {
        let d = self.dim;
        let mut out = Matrix::zeros(&self.field, d, d);
        for j in 0..d {
            for k in 0..d {
                let x = a.get(j, k);
                if x.is_zero() {
                    continue;
                }
                for l in 0..d {
                    for m in 0..d {
                        let y = b.get(l, m);
                        if y.is_zero() {
                            continue;
                        }
                        let c = x * y;
                        let left = &self.mult[j][l];
                        let right = &self.mult[k][m];
                        for (p, u) in left.iter().enumerate() {
                            if u.is_zero() {
                                continue;
                            }
                            for (q, v) in right.iter().enumerate() {
                                if !v.is_zero() {
                                    let cur = out.get(p, q) + &(&c * &(u * v));
                                    out.set(p, q, cur);
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

/// Check every Hopf and pivot axiom on the basis.
pub fn validate_hopf(h: &HopfAlgebra) -> ValidationReport {
    let mut report = ValidationReport::default();
    let d = h.dim;
    let f = &h.field;
    let e = |i| h.basis(i);

    for i in 0..d {
        for j in 0..d {
            let ij = &h.mult[i][j];
            for k in 0..d {
                let left = h.multiply(ij, &e(k));
                let right = h.multiply(&e(i), &h.mult[j][k]);
                if left != right {
                    report.push("associativity", format!("(e{i} e{j}) e{k} != e{i} (e{j} e{k})"));
                }
            }
        }
        if h.multiply(&h.unit, &e(i)) != e(i) || h.multiply(&e(i), &h.unit) != e(i) {
            report.push("unit", format!("1 e{i} != e{i} or e{i} 1 != e{i}"));
        }
    }

    // coassociativity as 3-tensors indexed (a, b, c)
    for i in 0..d {
        let di = &h.comult[i];
        let mut left = vec![f.zero(); d * d * d];
        let mut right = vec![f.zero(); d * d * d];
        for j in 0..d {
            for k in 0..d {
                let c = di.get(j, k);
                if c.is_zero() {
                    continue;
                }
                let dj = &h.comult[j];
                let dk = &h.comult[k];
                for a in 0..d {
                    for b in 0..d {
                        let x = dj.get(a, b);
                        if !x.is_zero() {
                            let idx = (a * d + b) * d + k;
                            left[idx] = &left[idx] + &(c * x);
                        }
                        let y = dk.get(a, b);
                        if !y.is_zero() {
                            let idx = (j * d + a) * d + b;
                            right[idx] = &right[idx] + &(c * y);
                        }
                    }
                }
            }
        }
        if left != right {
            report.push("coassociativity", format!("(Δ⊗id)Δ(e{i}) != (id⊗Δ)Δ(e{i})"));
        }
        let mut l = vec![f.zero(); d];
        let mut r = vec![f.zero(); d];
        for j in 0..d {
            for k in 0..d {
                let c = di.get(j, k);
                if !c.is_zero() {
                    l[k] = &l[k] + &(c * &h.counit[j]);
                    r[j] = &r[j] + &(c * &h.counit[k]);
                }
            }
        }
        if l != e(i) || r != e(i) {
            report.push("counit", format!("(ε⊗id)Δ(e{i}) or (id⊗ε)Δ(e{i}) != e{i}"));
        }
    }

    let one_one = h.coproduct(&h.unit);
    let mut expect = Matrix::zeros(f, d, d);
    for j in 0..d {
        for k in 0..d {
            expect.set(j, k, &h.unit[j] * &h.unit[k]);
        }
    }
    if one_one != expect {
        report.push("comultiplication is an algebra map", "Δ(1) != 1⊗1");
    }
    if !h.counit_of(&h.unit).is_one() {
        report.push("counit is an algebra map", "ε(1) != 1");
    }
    for i in 0..d {
        for j in 0..d {
            let lhs = h.coproduct(&h.mult[i][j]);
            let rhs = h.tensor_mul(&h.comult[i], &h.comult[j]);
            if lhs != rhs {
                report.push(
                    "comultiplication is an algebra map",
                    format!("Δ(e{i} e{j}) != Δ(e{i})Δ(e{j})"),
                );
            }
            if h.counit_of(&h.mult[i][j]) != &h.counit[i] * &h.counit[j] {
                report.push("counit is an algebra map", format!("ε(e{i} e{j}) != ε(e{i})ε(e{j})"));
            }
        }
    }

    for i in 0..d {
        let di = &h.comult[i];
        let mut l = vec![f.zero(); d];
        let mut r = vec![f.zero(); d];
        for j in 0..d {
            for k in 0..d {
                let c = di.get(j, k);
                if c.is_zero() {
                    continue;
                }
                vec_add(&mut l, &h.multiply(&h.antipode_of(&e(j)), &e(k)), c);
                vec_add(&mut r, &h.multiply(&e(j), &h.antipode_of(&e(k))), c);
            }
        }
        let expect: Vec<Scalar> = h.unit.iter().map(|u| u * &h.counit[i]).collect();
        if l != expect || r != expect {
            report.push("antipode", format!("m(S⊗id)Δ(e{i}) or m(id⊗S)Δ(e{i}) != ε(e{i})1"));
        }
    }

    let g = &h.pivot;
    let mut gg = Matrix::zeros(f, d, d);
    for j in 0..d {
        for k in 0..d {
            gg.set(j, k, &g[j] * &g[k]);
        }
    }
    if h.coproduct(g) != gg || !h.counit_of(g).is_one() {
        report.push("pivot grouplike", "Δ(g) != g⊗g or ε(g) != 1");
    }
    match h.pivot_inverse() {
        None => report.push("pivot invertible", "g has no inverse"),
        Some(gi) => {
            for i in 0..d {
                let s2 = h.antipode_of(&h.antipode_of(&e(i)));
                let conj = h.multiply(&h.multiply(g, &e(i)), &gi);
                if s2 != conj {
                    report.push("S^2 = Ad(g)", format!("S²(e{i}) != g e{i} g⁻¹"));
                }
            }
        }
    }
    report
}
