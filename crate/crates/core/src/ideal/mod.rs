//! Ideals: membership through the partial-trace criterion, retracts, projectivity.

use std::fmt;

use crate::category::{Category, Morphism, ObjectRef};
use crate::error::{Error, Result};
use crate::exact::{solve_linear, Matrix, Solution};
use crate::trace::{partial_trace, Side};

/// Solves whose unknown endomorphism acts on a space larger than this are skipped.
pub const MAX_SOLVE_DIM: usize = 18;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealSpec {
    /// The left, right or two-sided ideal generated by `generators`. Two-sided membership also
    /// tries ambients built from `probes`.
    Generated { side: Side, generators: Vec<ObjectRef>, probes: Vec<ObjectRef> },
    Proj,
}

fn parse_set(c: &Category, text: &str) -> Result<Vec<ObjectRef>> {
    let inner = text
        .trim()
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .ok_or_else(|| Error::parse(1, 1, format!("expected {{...}}, found {text:?}")))?;
    inner.split(',').map(str::trim).filter(|s| !s.is_empty()).map(|s| c.object(s)).collect()
}

impl IdealSpec {
    pub fn left(generators: Vec<ObjectRef>) -> IdealSpec {
        IdealSpec::Generated { side: Side::Left, generators, probes: Vec::new() }
    }

    pub fn right(generators: Vec<ObjectRef>) -> IdealSpec {
        IdealSpec::Generated { side: Side::Right, generators, probes: Vec::new() }
    }

    pub fn two_sided(generators: Vec<ObjectRef>, probes: Vec<ObjectRef>) -> IdealSpec {
        IdealSpec::Generated { side: Side::TwoSided, generators, probes }
    }

    /// `left:{P+}`, `right:{..}`, `two-sided:{..}` with an optional `;probes:{..}`, or `proj`.
    pub fn parse(c: &Category, text: &str) -> Result<IdealSpec> {
        let text = text.trim();
        if text.eq_ignore_ascii_case("proj") {
            return Ok(IdealSpec::Proj);
        }
        let (main, probes) = match text.split_once(';') {
            Some((m, p)) => {
                let p = p.trim().strip_prefix("probes:").ok_or_else(|| Error::parse(1, m.len() + 2, "expected probes:{...}"))?;
                (m, parse_set(c, p)?)
            }
            None => (text, Vec::new()),
        };
        let (side, set) = main.split_once(':').ok_or_else(|| Error::parse(1, 1, "expected side:{...}"))?;
        let side = Side::parse(side.trim())?;
        if side != Side::TwoSided && !probes.is_empty() {
            return Err(Error::Precondition("probes only apply to two-sided ideals".into()));
        }
        Ok(IdealSpec::Generated { side, generators: parse_set(c, set)?, probes })
    }

    pub fn describe(&self, c: &Category) -> String {
        match self {
            IdealSpec::Proj => "proj".into(),
            IdealSpec::Generated { side, generators, probes } => {
                let g = generators.iter().map(|x| c.name(x)).collect::<Vec<_>>().join(",");
                let mut s = format!("{side}:{{{g}}}");
                if !probes.is_empty() {
                    let p = probes.iter().map(|x| c.name(x)).collect::<Vec<_>>().join(",");
                    s.push_str(&format!(";probes:{{{p}}}"));
                }
                s
            }
        }
    }
}

/// Which partial-trace criterion a witness satisfies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessForm {
    /// f ∈ End(U⊗G*) with tr_r^{G*}(f) = Id_U, where G = X⊗Z.
    Left,
    /// f ∈ End(G*⊗U) with tr_l^{G*}(f) = Id_U, where G = Y⊗X.
    Right,
}

#[derive(Clone, Debug)]
pub struct Witness {
    pub form: WitnessForm,
    /// The generator X.
    pub generator: ObjectRef,
    /// Z for the left form, Y for the right form.
    pub probe: ObjectRef,
    pub f: Morphism,
    /// Solutions of the homogeneous equation; adding one to `f` gives another witness.
    pub kernel: Vec<Morphism>,
}

impl Witness {
    pub fn new(form: WitnessForm, generator: ObjectRef, f: Morphism) -> Witness {
        Witness { form, generator, probe: ObjectRef::unit(), f, kernel: Vec::new() }
    }

    /// G = X⊗Z or Y⊗X.
    pub fn full_generator(&self) -> ObjectRef {
        match self.form {
            WitnessForm::Left => self.generator.tensor(&self.probe),
            WitnessForm::Right => self.probe.tensor(&self.generator),
        }
    }

    /// The same witness with `f` shifted by a kernel element.
    pub fn shifted(&self, k: &Morphism) -> Result<Witness> {
        Ok(Witness { f: self.f.add(k)?, kernel: self.kernel.clone(), ..self.clone() })
    }
}

/// U as a retract of Y⊗X⊗Z with X a generator: p: Y⊗X⊗Z → U and q: U → Y⊗X⊗Z.
#[derive(Clone, Debug)]
pub struct RetractData {
    pub u: ObjectRef,
    pub left: ObjectRef,
    pub core: ObjectRef,
    pub right: ObjectRef,
    pub p: Morphism,
    pub q: Morphism,
}

impl RetractData {
    pub fn ambient(&self) -> ObjectRef {
        self.left.tensor(&self.core).tensor(&self.right)
    }

    /// U inside itself.
    pub fn trivial(c: &Category, u: &ObjectRef) -> RetractData {
        RetractData {
            u: u.clone(),
            left: ObjectRef::unit(),
            core: u.clone(),
            right: ObjectRef::unit(),
            p: c.identity(u),
            q: c.identity(u),
        }
    }

    /// Compose with an automorphism a of U: (a⁻¹p, qa).
    pub fn twisted(&self, c: &Category, a: &Morphism) -> Result<RetractData> {
        let inv = a.matrix.inverse().ok_or_else(|| Error::Precondition("twist is not invertible".into()))?;
        let inv = Morphism { source: a.target.clone(), target: a.source.clone(), matrix: inv };
        Ok(RetractData { p: c.compose(&inv, &self.p)?, q: c.compose(&self.q, a)?, ..self.clone() })
    }

    pub fn verify(&self, c: &Category) -> Result<bool> {
        Ok(c.compose(&self.p, &self.q)?.matrix.is_identity())
    }
}

/// Solve the criterion for one generator shape. `None` when the system is inconsistent.
fn solve_criterion(c: &Category, u: &ObjectRef, g: &ObjectRef, form: WitnessForm) -> Result<Option<(Morphism, Vec<Morphism>)>> {
    let gd = g.dual();
    let (amb, side) = match form {
        WitnessForm::Left => (u.tensor(&gd), Side::Right),
        WitnessForm::Right => (gd.tensor(u), Side::Left),
    };
    let space = c.end_basis(&amb);
    let du = c.dim(u);
    let f = c.field();
    let n = space.dim();
    let mut a = Matrix::zeros(f, du * du, n);
    for (j, b) in space.basis.iter().enumerate() {
        let t = partial_trace(c, b, &gd, side)?;
        for (i, x) in t.matrix.entries().iter().enumerate() {
            a.set(i, j, x.clone());
        }
    }
    let id = Matrix::identity(f, du);
    let rhs = Matrix::column(f, id.into_entries());
    let dim = c.dim(&amb);
    Ok(match solve_linear(&a, &rhs)? {
        Solution::Inconsistent => None,
        Solution::Solved { particular, kernel } => {
            let w = space.combine(&particular.to_vec(), f, dim, dim);
            let ks = kernel.iter().map(|k| space.combine(&k.to_vec(), f, dim, dim)).collect();
            Some((w, ks))
        }
    })
}

/// Every witness found for U, in generator order (then probe order).
///
/// An empty result means no single generator (with the declared probes) certifies membership;
/// it is not a proof of non-membership for two-sided ideals.
pub fn witnesses(c: &Category, u: &ObjectRef, spec: &IdealSpec) -> Result<Vec<Witness>> {
    let IdealSpec::Generated { side, generators, probes } = spec else {
        return Err(Error::Precondition("membership in proj is decided by is_projective".into()));
    };
    let mut shapes: Vec<(WitnessForm, ObjectRef, ObjectRef)> = Vec::new();
    let mut extra = vec![ObjectRef::unit()];
    extra.extend(probes.iter().cloned());
    for x in generators {
        match side {
            Side::Left => shapes.push((WitnessForm::Left, x.clone(), ObjectRef::unit())),
            Side::Right => shapes.push((WitnessForm::Right, x.clone(), ObjectRef::unit())),
            Side::TwoSided => {
                for z in &extra {
                    shapes.push((WitnessForm::Left, x.clone(), z.clone()));
                }
                for y in &extra {
                    shapes.push((WitnessForm::Right, x.clone(), y.clone()));
                }
            }
        }
    }
    let mut out = Vec::new();
    for (form, x, probe) in shapes {
        let g = match form {
            WitnessForm::Left => x.tensor(&probe),
            WitnessForm::Right => probe.tensor(&x),
        };
        if c.dim(u) * c.dim(&g) > MAX_SOLVE_DIM {
            continue;
        }
        if let Some((f, kernel)) = solve_criterion(c, u, &g, form)? {
            out.push(Witness { form, generator: x, probe, f, kernel });
        }
    }
    Ok(out)
}

/// The first witness, if any.
pub fn membership(c: &Category, u: &ObjectRef, spec: &IdealSpec) -> Result<Option<Witness>> {
    if let IdealSpec::Proj = spec {
        return Err(Error::Precondition("membership in proj is decided by is_projective".into()));
    }
    Ok(witnesses(c, u, spec)?.into_iter().next())
}

/// Membership for any spec, projectivity included.
pub fn is_member(c: &Category, u: &ObjectRef, spec: &IdealSpec) -> Result<bool> {
    match spec {
        IdealSpec::Proj => Ok(is_projective(c, u)?.is_some()),
        _ => Ok(membership(c, u, spec)?.is_some()),
    }
}

/// Retract data from a witness; p∘q = Id_U is checked exactly.
pub fn retract_from_witness(c: &Category, u: &ObjectRef, w: &Witness) -> Result<RetractData> {
    let g = w.full_generator();
    let gd = g.dual();
    let id_u = c.identity(u);
    let id_g = c.identity(&g);
    let r = match w.form {
        WitnessForm::Left => {
            let p = c.tensor(&id_u, &c.ev(&g))?;
            let q = c.compose(&c.tensor(&w.f, &id_g)?, &c.tensor(&id_u, &c.tcoev(&g))?)?;
            RetractData { u: u.clone(), left: u.tensor(&gd), core: w.generator.clone(), right: w.probe.clone(), p, q }
        }
        WitnessForm::Right => {
            let p = c.tensor(&c.tev(&g), &id_u)?;
            let q = c.compose(&c.tensor(&id_g, &w.f)?, &c.tensor(&c.coev(&g), &id_u)?)?;
            RetractData { u: u.clone(), left: w.probe.clone(), core: w.generator.clone(), right: gd.tensor(u), p, q }
        }
    };
    if !r.verify(c)? {
        return Err(Error::Precondition(format!("witness for {} does not satisfy the trace criterion", c.name(u))));
    }
    Ok(r)
}

/// A module splitting s: P → H^{⊕dim P} of the action map, or `None` when P is not projective.
pub fn is_projective(c: &Category, p: &ObjectRef) -> Result<Option<Matrix>> {
    let h = c.hopf();
    let f = c.field();
    let (hd, n) = (h.dim(), c.dim(p));
    let m = hd * n;
    let act = c.action(p);
    // unknown s[r][v] sits at r*n + v, with r = a*n + w indexing e_a ⊗ w
    let unknowns = m * n;
    let mut rows: Vec<Vec<crate::exact::Scalar>> = Vec::new();
    let mut rhs = Vec::new();
    for g in h.generators() {
        let l = h.left_mult_matrix(&h.basis(g));
        let pg = &act[g];
        for a in 0..hd {
            for w in 0..n {
                for v in 0..n {
                    // (ρ_F(g)s)[(a,w)][v] − (s ρ_P(g))[(a,w)][v]
                    let mut row = vec![f.zero(); unknowns];
                    for b in 0..hd {
                        let x = l.get(a, b);
                        if !x.is_zero() {
                            let k = (b * n + w) * n + v;
                            row[k] = &row[k] + x;
                        }
                    }
                    for k in 0..n {
                        let x = pg.get(k, v);
                        if !x.is_zero() {
                            let idx = (a * n + w) * n + k;
                            row[idx] = &row[idx] - x;
                        }
                    }
                    rows.push(row);
                    rhs.push(f.zero());
                }
            }
        }
    }
    // μ(e_a ⊗ w) = ρ_P(e_a) w, and μ s = Id
    for i in 0..n {
        for v in 0..n {
            let mut row = vec![f.zero(); unknowns];
            for a in 0..hd {
                for w in 0..n {
                    let x = act[a].get(i, w);
                    if !x.is_zero() {
                        let k = (a * n + w) * n + v;
                        row[k] = &row[k] + x;
                    }
                }
            }
            rows.push(row);
            rhs.push(if i == v { f.one() } else { f.zero() });
        }
    }
    if unknowns == 0 {
        return Ok(Some(Matrix::zeros(f, 0, 0)));
    }
    let a = Matrix::from_rows(f, rows)?;
    let b = Matrix::column(f, rhs);
    Ok(match solve_linear(&a, &b)? {
        Solution::Inconsistent => None,
        Solution::Solved { particular, .. } => Some(Matrix::new(f, m, n, particular.into_entries())?),
    })
}

/// Surjectivity.
pub fn is_epi(f: &Morphism) -> bool {
    f.matrix.rank() == f.matrix.rows()
}

impl fmt::Display for WitnessForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WitnessForm::Left => "left",
            WitnessForm::Right => "right",
        })
    }
}

#[cfg(test)]
mod tests;
