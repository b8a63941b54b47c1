//! Partial traces, left and right traces, trace families and the ambidexterity solver.

use std::fmt;

use crate::category::{Category, Morphism, ObjectRef};
use crate::error::{Error, Result};
use crate::exact::{Matrix, Scalar};
use crate::report::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
    TwoSided,
}

impl Side {
    pub fn parse(s: &str) -> Result<Side> {
        match s {
            "left" | "l" => Ok(Side::Left),
            "right" | "r" => Ok(Side::Right),
            "two-sided" | "two_sided" | "both" | "sphere" | "spherical" => Ok(Side::TwoSided),
            _ => Err(Error::Validation(format!("unknown side {s:?}"))),
        }
    }

    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
            Side::TwoSided => Side::TwoSided,
        }
    }

    pub fn includes_left(self) -> bool {
        matches!(self, Side::Left | Side::TwoSided)
    }

    pub fn includes_right(self) -> bool {
        matches!(self, Side::Right | Side::TwoSided)
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
            Side::TwoSided => "two-sided",
        })
    }
}

/// Which ambidexterity equations to impose.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Left,
    Right,
    Spherical,
}

impl Mode {
    pub fn parse(s: &str) -> Result<Mode> {
        match s {
            "left" => Ok(Mode::Left),
            "right" => Ok(Mode::Right),
            "spherical" | "two-sided" | "sphere" => Ok(Mode::Spherical),
            _ => Err(Error::Validation(format!("unknown mode {s:?}"))),
        }
    }

    pub fn side(self) -> Side {
        match self {
            Mode::Left => Side::Left,
            Mode::Right => Side::Right,
            Mode::Spherical => Side::TwoSided,
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Left => "left",
            Mode::Right => "right",
            Mode::Spherical => "spherical",
        })
    }
}

fn shape_err(c: &Category, f: &Morphism, what: &str) -> Error {
    Error::Shape(format!("{} -> {} {what}", c.name(&f.source), c.name(&f.target)))
}

/// tr_l^X (f) for f: X⊗Y → X⊗Z, or tr_r^X (f) for f: Y⊗X → Z⊗X, by direct contraction.
pub fn partial_trace(c: &Category, f: &Morphism, x: &ObjectRef, side: Side) -> Result<Morphism> {
    let n = c.dim(x);
    let fld = c.field();
    match side {
        Side::Left => {
            if !f.source.starts_with(x) || !f.target.starts_with(x) {
                return Err(shape_err(c, f, &format!("does not start with {}", c.name(x))));
            }
            let y = f.source.split_at(x.len()).1;
            let z = f.target.split_at(x.len()).1;
            let (dy, dz) = (c.dim(&y), c.dim(&z));
            let gi = c.pivot_inverse_action(x);
            let mut out = Matrix::zeros(fld, dz, dy);
            for i in 0..n {
                for j in 0..n {
                    let w = gi.get(j, i);
                    if w.is_zero() {
                        continue;
                    }
                    for zz in 0..dz {
                        for yy in 0..dy {
                            let e = f.matrix.get(i * dz + zz, j * dy + yy);
                            if !e.is_zero() {
                                let cur = out.get(zz, yy) + &(w * e);
                                out.set(zz, yy, cur);
                            }
                        }
                    }
                }
            }
            Ok(Morphism { source: y, target: z, matrix: out })
        }
        Side::Right => {
            if !f.source.ends_with(x) || !f.target.ends_with(x) {
                return Err(shape_err(c, f, &format!("does not end with {}", c.name(x))));
            }
            let y = f.source.split_at(f.source.len() - x.len()).0;
            let z = f.target.split_at(f.target.len() - x.len()).0;
            let (dy, dz) = (c.dim(&y), c.dim(&z));
            let g = c.pivot_action(x);
            let mut out = Matrix::zeros(fld, dz, dy);
            for i in 0..n {
                for a in 0..n {
                    let w = g.get(i, a);
                    if w.is_zero() {
                        continue;
                    }
                    for zz in 0..dz {
                        for yy in 0..dy {
                            let e = f.matrix.get(zz * n + a, yy * n + i);
                            if !e.is_zero() {
                                let cur = out.get(zz, yy) + &(w * e);
                                out.set(zz, yy, cur);
                            }
                        }
                    }
                }
            }
            Ok(Morphism { source: y, target: z, matrix: out })
        }
        Side::TwoSided => Err(Error::Precondition("a partial trace is taken on one side".into())),
    }
}

/// The same partial traces built from the duality morphisms, used as a cross-check.
pub fn partial_trace_composite(c: &Category, f: &Morphism, x: &ObjectRef, side: Side) -> Result<Morphism> {
    match side {
        Side::Left => {
            if !f.source.starts_with(x) || !f.target.starts_with(x) {
                return Err(shape_err(c, f, "has the wrong prefix"));
            }
            let y = f.source.split_at(x.len()).1;
            let z = f.target.split_at(x.len()).1;
            // (ev_X ⊗ Id_Z)(Id_{X*} ⊗ f)(tcoev_X ⊗ Id_Y)
            c.chain(&[
                &c.tensor(&c.tcoev(x), &c.identity(&y))?,
                &c.tensor(&c.identity(&x.dual()), f)?,
                &c.tensor(&c.ev(x), &c.identity(&z))?,
            ])
        }
        Side::Right => {
            if !f.source.ends_with(x) || !f.target.ends_with(x) {
                return Err(shape_err(c, f, "has the wrong suffix"));
            }
            let y = f.source.split_at(f.source.len() - x.len()).0;
            let z = f.target.split_at(f.target.len() - x.len()).0;
            // (Id_Z ⊗ tev_X)(f ⊗ Id_{X*})(Id_Y ⊗ coev_X)
            c.chain(&[
                &c.tensor(&c.identity(&y), &c.coev(x))?,
                &c.tensor(f, &c.identity(&x.dual()))?,
                &c.tensor(&c.identity(&z), &c.tev(x))?,
            ])
        }
        Side::TwoSided => Err(Error::Precondition("a partial trace is taken on one side".into())),
    }
}

/// tr_l(f) or tr_r(f) for an endomorphism.
pub fn trace_endo(c: &Category, f: &Morphism, side: Side) -> Result<Scalar> {
    if !f.is_endo() {
        return Err(Error::NotEndomorphism(format!("{} -> {}", c.name(&f.source), c.name(&f.target))));
    }
    let side = if side == Side::TwoSided { Side::Left } else { side };
    let m = partial_trace(c, f, &f.source, side)?;
    Ok(m.matrix.get(0, 0).clone())
}

/// (dim_l X, dim_r X).
pub fn dims(c: &Category, x: &ObjectRef) -> (Scalar, Scalar) {
    let id = c.identity(x);
    (trace_endo(c, &id, Side::Left).unwrap(), trace_endo(c, &id, Side::Right).unwrap())
}

/// A family of linear forms t_X on End(X) for X in some class of objects.
pub trait LinearTrace: Send + Sync {
    fn side(&self) -> Side;
    fn label(&self) -> String;
    /// Whether t_X is defined.
    fn admits(&self, c: &Category, x: &ObjectRef) -> bool;
    fn eval(&self, c: &Category, f: &Morphism) -> Result<Scalar>;
}

/// The usual left or right trace, defined on every object.
#[derive(Clone, Copy, Debug)]
pub struct UsualTrace(pub Side);

impl LinearTrace for UsualTrace {
    fn side(&self) -> Side {
        self.0
    }

    fn label(&self) -> String {
        format!("usual {} trace", self.0)
    }

    fn admits(&self, _: &Category, _: &ObjectRef) -> bool {
        true
    }

    fn eval(&self, c: &Category, f: &Morphism) -> Result<Scalar> {
        trace_endo(c, f, self.0)
    }
}

/// Linear forms on finitely many End spaces, stored as coefficients against `end_basis`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceFamily {
    pub side: Side,
    pub domain: Vec<ObjectRef>,
    pub forms: Vec<Vec<Scalar>>,
}

impl TraceFamily {
    pub fn new(c: &Category, side: Side, domain: Vec<ObjectRef>, forms: Vec<Vec<Scalar>>) -> Result<TraceFamily> {
        if domain.len() != forms.len() {
            return Err(Error::Shape("one form per domain object".into()));
        }
        for (x, f) in domain.iter().zip(&forms) {
            let n = c.end_basis(x).dim();
            if f.len() != n {
                return Err(Error::Shape(format!("End({}) has rank {n}, got {} coefficients", c.name(x), f.len())));
            }
        }
        Ok(TraceFamily { side, domain, forms })
    }

    /// ⟨·⟩_V on a single End-rank-one object, so t_V(Id) = 1.
    pub fn bracket(c: &Category, v: &ObjectRef, side: Side) -> Result<TraceFamily> {
        let hs = c.end_basis(v);
        if hs.dim() != 1 {
            return Err(Error::NotSimple(c.name(v), hs.dim()));
        }
        let lambda = c.bracket(&hs.basis[0])?;
        Ok(TraceFamily { side, domain: vec![v.clone()], forms: vec![vec![lambda]] })
    }

    /// Restriction of another trace to a finite class.
    pub fn restrict(c: &Category, t: &dyn LinearTrace, domain: &[ObjectRef]) -> Result<TraceFamily> {
        let forms = domain
            .iter()
            .map(|x| c.end_basis(x).basis.iter().map(|b| t.eval(c, b)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(TraceFamily { side: t.side(), domain: domain.to_vec(), forms })
    }

    pub fn form(&self, x: &ObjectRef) -> Option<&[Scalar]> {
        self.domain.iter().position(|d| d == x).map(|i| self.forms[i].as_slice())
    }

    /// Coefficients against `end_basis(x)` of any trace, as a comparable linear form.
    pub fn coefficients(c: &Category, t: &dyn LinearTrace, x: &ObjectRef) -> Result<Vec<Scalar>> {
        c.end_basis(x).basis.iter().map(|b| t.eval(c, b)).collect()
    }

    /// Human-readable description of the forms.
    pub fn describe(&self, c: &Category) -> String {
        self.domain
            .iter()
            .zip(&self.forms)
            .map(|(x, f)| {
                let cs: Vec<String> = f.iter().map(ToString::to_string).collect();
                format!("{}: [{}]", c.name(x), cs.join(", "))
            })
            .collect::<Vec<_>>()
            .join("; ")
    }
}

fn dot(a: &[Scalar], b: &[Scalar], zero: Scalar) -> Scalar {
    a.iter().zip(b).fold(zero, |acc, (x, y)| acc + x * y)
}

impl LinearTrace for TraceFamily {
    fn side(&self) -> Side {
        self.side
    }

    fn label(&self) -> String {
        format!("{} family on {} objects", self.side, self.domain.len())
    }

    fn admits(&self, _: &Category, x: &ObjectRef) -> bool {
        self.domain.contains(x)
    }

    fn eval(&self, c: &Category, f: &Morphism) -> Result<Scalar> {
        if !f.is_endo() {
            return Err(Error::NotEndomorphism(c.name(&f.source)));
        }
        let form = self.form(&f.source).ok_or_else(|| Error::NotInDomain(c.name(&f.source)))?;
        let co = c.end_basis(&f.source).coords(&f.matrix);
        Ok(dot(form, &co, c.field().zero()))
    }
}

/// t∨_X(f) = t_{X*}(f*).
pub struct DualTrace<'a>(pub &'a dyn LinearTrace);

impl LinearTrace for DualTrace<'_> {
    fn side(&self) -> Side {
        self.0.side().opposite()
    }

    fn label(&self) -> String {
        format!("dual of {}", self.0.label())
    }

    fn admits(&self, c: &Category, x: &ObjectRef) -> bool {
        self.0.admits(c, &x.dual())
    }

    fn eval(&self, c: &Category, f: &Morphism) -> Result<Scalar> {
        self.0.eval(c, &c.dual_mor(f))
    }
}

fn try_eq(c: &Category, t: &dyn LinearTrace, lhs: &Morphism, rhs: &Morphism) -> Result<(Scalar, Scalar)> {
    Ok((t.eval(c, lhs)?, t.eval(c, rhs)?))
}

/// Check t_{Y⊗X}(f) = t_X(tr_l^Y f) (and the right analogue) on End bases, plus cyclicity
/// t_V(gh) = t_U(hg) between probe pairs. Every split of a probe word is tried, together with
/// the products `middle ⊗ probe` and `probe ⊗ middle`.
pub fn check_trace_axioms(
    c: &Category,
    t: &dyn LinearTrace,
    probes: &[ObjectRef],
    middles: &[ObjectRef],
) -> Report {
    let mut r = Report::new(format!("trace axioms for {}", t.label()));
    let mut shapes: Vec<(ObjectRef, usize)> = Vec::new();
    for w in probes {
        for k in 1..w.len() {
            shapes.push((w.clone(), k));
        }
        for y in middles.iter().filter(|y| !y.is_unit()) {
            shapes.push((y.tensor(w), y.len()));
            shapes.push((w.tensor(y), w.len()));
        }
    }
    shapes.sort();
    shapes.dedup();
    for (w, k) in &shapes {
        let (y, x) = w.split_at(*k);
        let checks: [(Side, &ObjectRef, &ObjectRef); 2] = [(Side::Left, &y, &x), (Side::Right, &x, &y)];
        for (side, traced, rest) in checks {
            let wanted = match side {
                Side::Left => t.side().includes_left(),
                _ => t.side().includes_right(),
            };
            if !wanted {
                continue;
            }
            if !t.admits(c, w) || !t.admits(c, rest) {
                r.note(format!("{} or {} outside the domain", c.name(w), c.name(rest)));
                continue;
            }
            for f in &c.end_basis(w).basis {
                match partial_trace(c, f, traced, side).and_then(|p| try_eq(c, t, f, &p)) {
                    Ok((a, b)) => {
                        r.check(a == b, || {
                            format!("{side} partial trace over {} on End({}): {a} vs {b}", c.name(traced), c.name(w))
                        });
                    }
                    Err(e) => r.violation(format!("{}: {e}", c.name(w))),
                }
            }
        }
    }
    for u in probes {
        for v in probes {
            if !t.admits(c, u) || !t.admits(c, v) {
                continue;
            }
            let hs_uv = c.hom_basis(u, v);
            let hs_vu = c.hom_basis(v, u);
            for g in &hs_uv.basis {
                for h in &hs_vu.basis {
                    let gh = c.compose(g, h).unwrap();
                    let hg = c.compose(h, g).unwrap();
                    match (t.eval(c, &gh), t.eval(c, &hg)) {
                        (Ok(a), Ok(b)) => {
                            r.check(a == b, || format!("cyclicity between {} and {}: {a} vs {b}", c.name(u), c.name(v)));
                        }
                        (Err(e), _) | (_, Err(e)) => r.violation(e.to_string()),
                    }
                }
            }
        }
    }
    r
}

/// One ambidexterity equation t_X(lhs) = t_{X'}(rhs), with lhs ∈ End(X), rhs ∈ End(X').
struct AmbiInstance {
    x: ObjectRef,
    xp: ObjectRef,
    lhs: Morphism,
    rhs: Morphism,
    what: String,
}

/// φ_X⁻¹ m* φ_X for m ∈ End(X*).
fn pull_back_dual(c: &Category, x: &ObjectRef, m: &Morphism) -> Morphism {
    let ms = c.dual_mor(m);
    c.chain(&[&c.pivot_iso(x), &ms, &c.pivot_iso_inv(x)]).expect("composable")
}

fn ambi_instances(c: &Category, objs: &[ObjectRef], mode: Mode, middles: &[ObjectRef]) -> Result<Vec<AmbiInstance>> {
    let mut out = Vec::new();
    let mut ys = vec![ObjectRef::unit()];
    if mode == Mode::Spherical {
        ys.extend(middles.iter().filter(|m| !m.is_unit()).cloned());
    }
    for x in objs {
        let xs = x.dual();
        for xp in objs {
            for y in &ys {
                if matches!(mode, Mode::Left | Mode::Spherical) {
                    // f ∈ End(X'⊗Y⊗X*)
                    let w = ObjectRef::tensor_all([xp, y, &xs]);
                    for (k, f) in c.end_basis(&w).basis.iter().enumerate() {
                        let l = partial_trace(c, f, &xp.tensor(y), Side::Left)?;
                        let rhs = partial_trace(c, f, &y.tensor(&xs), Side::Right)?;
                        out.push(AmbiInstance {
                            x: x.clone(),
                            xp: xp.clone(),
                            lhs: pull_back_dual(c, x, &l),
                            rhs,
                            what: format!("left equation, basis {k} of End({})", c.name(&w)),
                        });
                    }
                }
                if matches!(mode, Mode::Right | Mode::Spherical) {
                    // g ∈ End(X*⊗Y⊗X')
                    let w = ObjectRef::tensor_all([&xs, y, xp]);
                    for (k, g) in c.end_basis(&w).basis.iter().enumerate() {
                        let l = partial_trace(c, g, &y.tensor(xp), Side::Right)?;
                        let rhs = partial_trace(c, g, &xs.tensor(y), Side::Left)?;
                        out.push(AmbiInstance {
                            x: x.clone(),
                            xp: xp.clone(),
                            lhs: pull_back_dual(c, x, &l),
                            rhs,
                            what: format!("right equation, basis {k} of End({})", c.name(&w)),
                        });
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Check the ambidexterity equations of `mode` for t on `objs`, on End bases. In spherical
/// mode both equations are checked for Y = 𝟙 and every declared middle object.
pub fn check_ambidextrous(
    c: &Category,
    t: &dyn LinearTrace,
    objs: &[ObjectRef],
    mode: Mode,
    middles: &[ObjectRef],
) -> Report {
    let mut r = Report::new(format!("{mode} ambidexterity of {}", t.label()));
    if mode == Mode::Spherical {
        let names: Vec<String> = middles.iter().map(|m| c.name(m)).collect();
        r.note(format!("verified on probes 1, {}", names.join(", ")));
    }
    let instances = match ambi_instances(c, objs, mode, middles) {
        Ok(i) => i,
        Err(e) => {
            r.violation(e.to_string());
            return r;
        }
    };
    for inst in instances {
        match (t.eval(c, &inst.lhs), t.eval(c, &inst.rhs)) {
            (Ok(a), Ok(b)) => {
                r.check(a == b, || {
                    format!("X={}, X'={}, {}: {a} vs {b}", c.name(&inst.x), c.name(&inst.xp), inst.what)
                });
            }
            (Err(e), _) | (_, Err(e)) => r.violation(e.to_string()),
        }
    }
    r
}

/// All families on `objs` satisfying the ambidexterity equations: a kernel basis.
pub fn solve_ambidextrous(c: &Category, objs: &[ObjectRef], mode: Mode, middles: &[ObjectRef]) -> Result<Vec<TraceFamily>> {
    let mut objs_unique: Vec<ObjectRef> = Vec::new();
    for o in objs {
        if !objs_unique.contains(o) {
            objs_unique.push(o.clone());
        }
    }
    let objs = objs_unique;
    let fld = c.field();
    let mut offsets = Vec::new();
    let mut total = 0;
    for o in &objs {
        offsets.push(total);
        total += c.end_basis(o).dim();
    }
    let block = |x: &ObjectRef| offsets[objs.iter().position(|o| o == x).unwrap()];
    let mut rows = Vec::new();
    for inst in ambi_instances(c, &objs, mode, middles)? {
        let mut row = vec![fld.zero(); total];
        let a = c.end_basis(&inst.x).coords(&inst.lhs.matrix);
        let b = c.end_basis(&inst.xp).coords(&inst.rhs.matrix);
        for (k, v) in a.into_iter().enumerate() {
            let i = block(&inst.x) + k;
            row[i] = &row[i] + &v;
        }
        for (k, v) in b.into_iter().enumerate() {
            let i = block(&inst.xp) + k;
            row[i] = &row[i] - &v;
        }
        if row.iter().any(|v| !v.is_zero()) {
            rows.push(row);
        }
    }
    let basis: Vec<Vec<Scalar>> = if rows.is_empty() {
        (0..total)
            .map(|i| {
                let mut v = vec![fld.zero(); total];
                v[i] = fld.one();
                v
            })
            .collect()
    } else {
        Matrix::from_rows(fld, rows)?.nullspace().basis
    };
    Ok(basis
        .into_iter()
        .map(|v| {
            let forms = objs
                .iter()
                .enumerate()
                .map(|(i, o)| v[offsets[i]..offsets[i] + c.end_basis(o).dim()].to_vec())
                .collect();
            TraceFamily { side: mode.side(), domain: objs.clone(), forms }
        })
        .collect())
}
