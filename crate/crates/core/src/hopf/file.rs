//! Line-oriented category files.
//!
//! ```text
//! field Q
//! hopf dim 2
//! mult 1 1 -> (1 0)
//! comult 1 -> (1 1 1)        # terms `j k c`: c e_j⊗e_k, comma separated
//! antipode 1 -> (0 1)
//! counit (1 1)
//! pivot (1 0)
//! module sign dim 1
//! action sign 1 -> (-1)
//! ```
//! Omitted multiplication, comultiplication and antipode entries are zero, the unit defaults to
//! e_0 and unspecified actions are zero except on the unit, where they default to the identity.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::algebra::HopfAlgebra;
use super::module::ModuleObject;
use crate::error::{Error, Result};
use crate::exact::{Field, Matrix, Scalar};

struct Line<'a> {
    no: usize,
    text: &'a str,
}

impl<'a> Line<'a> {
    fn err(&self, at: &str, msg: impl Into<String>) -> Error {
        // column of the first occurrence of `at`, 1-based
        let col = self.text.find(at).map_or(1, |c| c + 1);
        Error::parse(self.no, col, msg)
    }

    /// Contents of the parenthesised group after the last `(`.
    fn group(&self) -> Result<&'a str> {
        let open = self.text.find('(').ok_or_else(|| self.err("", "expected '('"))?;
        let close = self.text.rfind(')').ok_or_else(|| self.err("(", "missing ')'"))?;
        if close < open {
            return Err(self.err(")", "unbalanced parentheses"));
        }
        Ok(&self.text[open + 1..close])
    }

    fn head(&self) -> &'a str {
        let arrow = self.text.find("->").unwrap_or(self.text.len());
        let paren = self.text.find('(').unwrap_or(self.text.len());
        &self.text[..arrow.min(paren)]
    }
}

fn literals(line: &Line, field: &Field, s: &str) -> Result<Vec<Scalar>> {
    s.split_whitespace()
        .map(|w| field.parse_literal(w).map_err(|e| line.err(w, e.to_string())))
        .collect()
}

fn index(line: &Line, w: &str, dim: usize) -> Result<usize> {
    let i: usize = w.parse().map_err(|_| line.err(w, format!("expected an index, found {w:?}")))?;
    if i >= dim {
        return Err(line.err(w, format!("index {i} out of range for dimension {dim}")));
    }
    Ok(i)
}

fn vector(line: &Line, field: &Field, dim: usize) -> Result<Vec<Scalar>> {
    let v = literals(line, field, line.group()?)?;
    if v.len() != dim {
        return Err(line.err("(", format!("expected {dim} coefficients, found {}", v.len())));
    }
    Ok(v)
}

/// Parse a matrix literal body `a b ; c d`.
pub fn parse_matrix_body(field: &Field, body: &str) -> std::result::Result<Matrix, String> {
    let rows: Vec<Vec<Scalar>> = body
        .split(';')
        .map(|r| {
            r.split_whitespace()
                .map(|w| field.parse_literal(w).map_err(|e| e.to_string()))
                .collect::<std::result::Result<Vec<_>, _>>()
        })
        .collect::<std::result::Result<_, _>>()?;
    let rows: Vec<Vec<Scalar>> = if rows.len() == 1 && rows[0].is_empty() { Vec::new() } else { rows };
    Matrix::from_rows(field, rows).map_err(|e| e.to_string())
}

pub fn parse_category(text: &str) -> Result<(HopfAlgebra, Vec<ModuleObject>)> {
    let mut field: Option<Field> = None;
    let mut dim: Option<usize> = None;
    let mut mult: BTreeMap<(usize, usize), Vec<Scalar>> = BTreeMap::new();
    let mut comult: BTreeMap<usize, Matrix> = BTreeMap::new();
    let mut antipode: BTreeMap<usize, Vec<Scalar>> = BTreeMap::new();
    let mut unit = None;
    let mut counit = None;
    let mut pivot = None;
    let mut modules: Vec<(String, usize, BTreeMap<usize, Matrix>)> = Vec::new();

    for (no, raw) in text.lines().enumerate() {
        let text = raw.split('#').next().unwrap_or("");
        if text.trim().is_empty() {
            continue;
        }
        let line = Line { no: no + 1, text };
        let words: Vec<&str> = line.head().split_whitespace().collect();
        let need_field = || field.clone().ok_or_else(|| line.err("", "`field` must come first"));
        let need_dim = || dim.ok_or_else(|| line.err("", "`hopf dim N` must precede structure constants"));
        match words.as_slice() {
            ["field", ..] => {
                field = Some(Field::parse(text).map_err(|e| line.err("field", e.to_string()))?)
            }
            ["hopf", "dim", n] => {
                need_field()?;
                let n: usize = n.parse().map_err(|_| line.err(n, "bad dimension"))?;
                if n == 0 {
                    return Err(line.err(words[2], "dimension must be positive"));
                }
                dim = Some(n);
            }
            ["unit"] => unit = Some(vector(&line, &need_field()?, need_dim()?)?),
            ["counit"] => counit = Some(vector(&line, &need_field()?, need_dim()?)?),
            ["pivot"] => pivot = Some(vector(&line, &need_field()?, need_dim()?)?),
            ["mult", i, j] => {
                let d = need_dim()?;
                let key = (index(&line, i, d)?, index(&line, j, d)?);
                mult.insert(key, vector(&line, &need_field()?, d)?);
            }
            ["antipode", i] => {
                let d = need_dim()?;
                antipode.insert(index(&line, i, d)?, vector(&line, &need_field()?, d)?);
            }
            ["comult", i] => {
                let d = need_dim()?;
                let f = need_field()?;
                let i = index(&line, i, d)?;
                let mut m = Matrix::zeros(&f, d, d);
                for term in line.group()?.split(',').filter(|t| !t.trim().is_empty()) {
                    let ws: Vec<&str> = term.split_whitespace().collect();
                    let (j, k, c) = match ws.as_slice() {
                        [j, k] => (*j, *k, f.one()),
                        [j, k, c] => (*j, *k, f.parse_literal(c).map_err(|e| line.err(c, e.to_string()))?),
                        _ => return Err(line.err(term.trim(), "expected `j k [coefficient]`")),
                    };
                    let (j, k) = (index(&line, j, d)?, index(&line, k, d)?);
                    let cur = m.get(j, k) + &c;
                    m.set(j, k, cur);
                }
                comult.insert(i, m);
            }
            ["module", name, "dim", n] => {
                need_dim()?;
                let n: usize = n.parse().map_err(|_| line.err(n, "bad module dimension"))?;
                if modules.iter().any(|m| m.0 == *name) {
                    return Err(line.err(name, format!("module {name} declared twice")));
                }
                modules.push((name.to_string(), n, BTreeMap::new()));
            }
            ["action", name, i] => {
                let d = need_dim()?;
                let f = need_field()?;
                let i = index(&line, i, d)?;
                let Some(m) = modules.iter_mut().find(|m| m.0 == *name) else {
                    return Err(line.err(name, format!("action for undeclared module {name}")));
                };
                let mat = parse_matrix_body(&f, line.group()?).map_err(|e| line.err("(", e))?;
                if mat.shape() != (m.1, m.1) && !(m.1 == 0 && mat.rows() == 0) {
                    return Err(line.err("(", format!("expected a {0}x{0} matrix", m.1)));
                }
                m.2.insert(i, mat);
            }
            _ => return Err(line.err(text.trim(), format!("unrecognised line {:?}", text.trim()))),
        }
    }

    let field = field.ok_or_else(|| Error::parse(1, 1, "missing `field` line"))?;
    let d = dim.ok_or_else(|| Error::parse(1, 1, "missing `hopf dim` line"))?;
    let zero = vec![field.zero(); d];
    let mut basis0 = zero.clone();
    basis0[0] = field.one();
    let unit = unit.unwrap_or(basis0);
    let mult_t = (0..d)
        .map(|i| (0..d).map(|j| mult.get(&(i, j)).cloned().unwrap_or_else(|| zero.clone())).collect())
        .collect();
    let comult_t = (0..d).map(|i| comult.get(&i).cloned().unwrap_or_else(|| Matrix::zeros(&field, d, d))).collect();
    let mut s = Matrix::zeros(&field, d, d);
    for (i, col) in &antipode {
        for (r, x) in col.iter().enumerate() {
            s.set(r, *i, x.clone());
        }
    }
    let h = HopfAlgebra::new(
        &field,
        d,
        mult_t,
        unit.clone(),
        comult_t,
        counit.unwrap_or_else(|| zero.clone()),
        s,
        pivot.unwrap_or(unit.clone()),
    )?;
    let unit_index = unit.iter().position(|x| x.is_one()).filter(|_| unit.iter().filter(|x| !x.is_zero()).count() == 1);
    let mods = modules
        .into_iter()
        .map(|(name, n, acts)| {
            let action = (0..d)
                .map(|i| {
                    acts.get(&i).cloned().unwrap_or_else(|| {
                        if Some(i) == unit_index {
                            Matrix::identity(&field, n)
                        } else {
                            Matrix::zeros(&field, n, n)
                        }
                    })
                })
                .collect();
            ModuleObject::new(name, n, action)
        })
        .collect();
    Ok((h, mods))
}

fn join(v: &[Scalar]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn matrix_body(m: &Matrix) -> String {
    (0..m.rows()).map(|i| join(m.row(i))).collect::<Vec<_>>().join(" ; ")
}

/// Serialise to the category file format; `parse_category` inverts this exactly.
pub fn write_category(h: &HopfAlgebra, modules: &[ModuleObject]) -> String {
    let mut out = String::new();
    let d = h.dim();
    let _ = writeln!(out, "field {}", h.field());
    let _ = writeln!(out, "hopf dim {d}");
    let _ = writeln!(out, "unit ({})", join(h.unit()));
    for i in 0..d {
        for j in 0..d {
            let v = h.mult_of_basis(i, j);
            if v.iter().any(|x| !x.is_zero()) {
                let _ = writeln!(out, "mult {i} {j} -> ({})", join(v));
            }
        }
    }
    for i in 0..d {
        let m = h.comult_of_basis(i);
        let mut terms = Vec::new();
        for j in 0..d {
            for k in 0..d {
                if !m.get(j, k).is_zero() {
                    terms.push(format!("{j} {k} {}", m.get(j, k)));
                }
            }
        }
        let _ = writeln!(out, "comult {i} -> ({})", terms.join(", "));
    }
    let s = h.antipode_matrix();
    for i in 0..d {
        let col: Vec<Scalar> = (0..d).map(|r| s.get(r, i).clone()).collect();
        let _ = writeln!(out, "antipode {i} -> ({})", join(&col));
    }
    let _ = writeln!(out, "counit ({})", join(h.counit_vector()));
    let _ = writeln!(out, "pivot ({})", join(h.pivot()));
    for m in modules {
        let _ = writeln!(out, "module {} dim {}", m.name, m.dim);
        for (i, a) in m.action.iter().enumerate() {
            let _ = writeln!(out, "action {} {i} -> ({})", m.name, matrix_body(a));
        }
    }
    out
}
