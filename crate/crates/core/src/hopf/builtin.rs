//! Hard-coded fixtures. Nothing here is trusted: callers run the validators.

use super::algebra::HopfAlgebra;
use super::module::ModuleObject;
use crate::error::{Error, Result};
use crate::exact::{Field, Matrix, Scalar};

/// Parameters of a built-in category.
#[derive(Clone, Debug, PartialEq)]
pub enum Builtin {
    /// Sweedler's four-dimensional algebra.
    Sweedler { field: Field },
    /// k[Z/n] with pivot c^pivot for the generator c.
    GroupAlgebra { order: usize, field: Field, pivot: usize },
}

impl Builtin {
    /// Parse `sweedler` or `group_algebra:N[:PIVOT]`, with the field supplied separately.
    pub fn parse(name: &str, field: Option<Field>) -> Result<Builtin> {
        let parts: Vec<&str> = name.split(':').collect();
        match parts.as_slice() {
            ["sweedler"] => Ok(Builtin::Sweedler { field: field.unwrap_or(Field::Rationals) }),
            ["group_algebra", rest @ ..] if rest.len() <= 2 => {
                let num = |s: &str| {
                    s.parse::<usize>().map_err(|_| Error::UnknownBuiltin(name.to_string()))
                };
                let order = match rest.first() {
                    Some(s) => num(s)?,
                    None => 2,
                };
                let pivot = match rest.get(1) {
                    Some(s) => num(s)?,
                    None => 0,
                };
                let field = field.unwrap_or(Field::Prime(2));
                Ok(Builtin::GroupAlgebra { order, field, pivot })
            }
            _ => Err(Error::UnknownBuiltin(name.to_string())),
        }
    }

    pub fn build(&self) -> Result<(HopfAlgebra, Vec<ModuleObject>)> {
        match self {
            Builtin::Sweedler { field } => sweedler(field),
            Builtin::GroupAlgebra { order, field, pivot } => group_algebra(*order, field, *pivot),
        }
    }
}

/// `builtin(name, params)`; params are `[order]` or `[order, pivot]` for the group algebra.
pub fn builtin(name: &str, field: &Field, params: &[usize]) -> Result<(HopfAlgebra, Vec<ModuleObject>)> {
    match name {
        "sweedler" => sweedler(field),
        "group_algebra" => group_algebra(
            params.first().copied().unwrap_or(2),
            field,
            params.get(1).copied().unwrap_or(0),
        ),
        _ => Err(Error::UnknownBuiltin(name.to_string())),
    }
}

fn ints(f: &Field, v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| f.from_i64(x)).collect()
}

/// Basis 1, g, x, gx with g² = 1, x² = 0, xg = −gx, Δ(g) = g⊗g, Δ(x) = x⊗1 + g⊗x, pivot g.
pub fn sweedler(f: &Field) -> Result<(HopfAlgebra, Vec<ModuleObject>)> {
    if f.characteristic() == 2 {
        return Err(Error::InvalidField("Sweedler's algebra needs characteristic != 2".into()));
    }
    let d = 4;
    // basis index of g^a x^b is a + 2b
    let mut mult = vec![vec![vec![f.zero(); d]; d]; d];
    for i in 0..d {
        for j in 0..d {
            let (a, b) = (i % 2, i / 2);
            let (c, e) = (j % 2, j / 2);
            if b + e >= 2 {
                continue;
            }
            let sign = if b * c == 1 { -1 } else { 1 };
            mult[i][j][(a + c) % 2 + 2 * (b + e)] = f.from_i64(sign);
        }
    }
    let unit = ints(f, &[1, 0, 0, 0]);
    let mut comult = vec![Matrix::zeros(f, d, d); d];
    comult[0].set(0, 0, f.one());
    comult[1].set(1, 1, f.one());
    // Δ(x) = x⊗1 + g⊗x
    comult[2].set(2, 0, f.one());
    comult[2].set(1, 2, f.one());
    // Δ(gx) = gx⊗g + 1⊗gx
    comult[3].set(3, 1, f.one());
    comult[3].set(0, 3, f.one());
    let counit = ints(f, &[1, 1, 0, 0]);
    // S(1)=1, S(g)=g, S(x)=−gx, S(gx)=x
    let antipode = Matrix::from_i64(f, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 0, 1], &[0, 0, -1, 0]]);
    let pivot = ints(f, &[0, 1, 0, 0]);
    let h = HopfAlgebra::new(f, d, mult, unit, comult, counit, antipode, pivot)?;

    let one_dim = |name: &str, s: i64| {
        ModuleObject::character(&h, name, &ints(f, &[1, s, 0, 0]))
    };
    let proj = |name: &str, s: i64| {
        let g = Matrix::from_i64(f, &[&[s, 0], &[0, -s]]);
        let x = Matrix::from_i64(f, &[&[0, 0], &[1, 0]]);
        let gx = g.mul(&x).expect("2x2");
        ModuleObject::new(name, 2, vec![Matrix::identity(f, 2), g, x, gx])
    };
    let modules = vec![
        one_dim("k+", 1),
        one_dim("k-", -1),
        proj("P+", 1),
        proj("P-", -1),
        ModuleObject::regular(&h, "reg"),
    ];
    Ok((h, modules))
}

/// k[Z/n] with basis c⁰, …, c^{n−1}; modules: trivial `k`, regular `reg`, and the characters
/// `chi1`, `chi2`, … for the nontrivial n-th roots of unity present in the field.
pub fn group_algebra(n: usize, f: &Field, pivot: usize) -> Result<(HopfAlgebra, Vec<ModuleObject>)> {
    if n == 0 {
        return Err(Error::InvalidField("group order must be positive".into()));
    }
    let mut mult = vec![vec![vec![f.zero(); n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            mult[i][j][(i + j) % n] = f.one();
        }
    }
    let e = |i: usize| {
        let mut v = vec![f.zero(); n];
        v[i % n] = f.one();
        v
    };
    let comult = (0..n)
        .map(|i| {
            let mut m = Matrix::zeros(f, n, n);
            m.set(i, i, f.one());
            m
        })
        .collect();
    let mut antipode = Matrix::zeros(f, n, n);
    for i in 0..n {
        antipode.set((n - i) % n, i, f.one());
    }
    let h = HopfAlgebra::new(f, n, mult, e(0), comult, vec![f.one(); n], antipode, e(pivot))?;
    let mut modules = vec![
        ModuleObject::character(&h, "k", &vec![f.one(); n]),
        ModuleObject::regular(&h, "reg"),
    ];
    let roots = f.roots_of_unity(n as u64);
    for (k, w) in roots.iter().enumerate().skip(1) {
        let values: Vec<Scalar> = (0..n as u64).map(|i| w.pow(i)).collect();
        modules.push(ModuleObject::character(&h, &format!("chi{k}"), &values));
    }
    Ok((h, modules))
}
