use super::algebra::{HopfAlgebra, ValidationReport};
use crate::error::{Error, Result};
use crate::exact::{Matrix, Scalar};

/// A named finite-dimensional left module: one action matrix per Hopf basis element.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleObject {
    pub name: String,
    pub dim: usize,
    pub action: Vec<Matrix>,
}

impl ModuleObject {
    pub fn new(name: impl Into<String>, dim: usize, action: Vec<Matrix>) -> ModuleObject {
        ModuleObject { name: name.into(), dim, action }
    }

    /// ρ(a) for an arbitrary algebra element.
    pub fn act(&self, h: &HopfAlgebra, a: &[Scalar]) -> Matrix {
        let mut out = Matrix::zeros(h.field(), self.dim, self.dim);
        for (i, x) in a.iter().enumerate() {
            if !x.is_zero() {
                out = out.add(&self.action[i].scale(x)).expect("action shape");
            }
        }
        out
    }

    /// The left regular module.
    pub fn regular(h: &HopfAlgebra, name: &str) -> ModuleObject {
        let action = (0..h.dim()).map(|i| h.left_mult_matrix(&h.basis(i))).collect();
        ModuleObject::new(name, h.dim(), action)
    }

    /// One-dimensional module through an algebra character given on the basis.
    pub fn character(h: &HopfAlgebra, name: &str, values: &[Scalar]) -> ModuleObject {
        let f = h.field();
        let action = values.iter().map(|v| Matrix::diag(f, std::slice::from_ref(v))).collect();
        ModuleObject::new(name, 1, action)
    }
}

/// Check ρ(e_i)ρ(e_j) = ρ(e_i e_j) and ρ(1) = Id.
pub fn validate_module(h: &HopfAlgebra, m: &ModuleObject) -> Result<ValidationReport> {
    if m.action.len() != h.dim() {
        return Err(Error::DimensionMismatch(format!(
            "module {} has {} action matrices for a {}-dimensional algebra",
            m.name,
            m.action.len(),
            h.dim()
        )));
    }
    if let Some(bad) = m.action.iter().find(|a| a.shape() != (m.dim, m.dim)) {
        return Err(Error::DimensionMismatch(format!(
            "module {} declares dim {} but has a {}x{} action matrix",
            m.name,
            m.dim,
            bad.rows(),
            bad.cols()
        )));
    }
    if let Some(bad) = m.action.iter().find(|a| a.field() != h.field()) {
        return Err(Error::FieldMismatch(h.field().to_string(), bad.field().to_string()));
    }
    let mut report = ValidationReport::default();
    for i in 0..h.dim() {
        for j in 0..h.dim() {
            let lhs = m.action[i].mul(&m.action[j])?;
            let rhs = m.act(h, h.mult_of_basis(i, j));
            if lhs != rhs {
                report.push("module relation", format!("{}: ρ(e{i})ρ(e{j}) != ρ(e{i} e{j})", m.name));
            }
        }
    }
    if !m.act(h, h.unit()).is_identity() {
        report.push("module unit", format!("{}: ρ(1) != Id", m.name));
    }
    Ok(report)
}
