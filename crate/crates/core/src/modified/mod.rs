//! Extension of ambidextrous traces to generated ideals, modified dimensions, the set A and slopes.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::category::{Category, Morphism, ObjectRef};
use crate::error::{Error, Result};
use crate::exact::Scalar;
use crate::ideal::{is_epi, is_projective, retract_from_witness, witnesses, IdealSpec, RetractData};
use crate::report::Report;
use crate::trace::{check_ambidextrous, partial_trace, DualTrace, LinearTrace, Mode, Side, TraceFamily};

#[derive(Debug)]
struct Cached {
    retract: RetractData,
    form: Vec<Scalar>,
}

/// The unique trace on the ideal generated by the seed's domain that restricts to the seed.
///
/// t_U(α) = t_X(tr_l^Y tr_r^Z(qαp)) for a retract U ≤ Y⊗X⊗Z, where Z = 𝟙 for left traces and
/// Y = 𝟙 for right traces. Forms on End(U) are cached per object.
#[derive(Debug)]
pub struct ExtendedTrace {
    seed: TraceFamily,
    spec: IdealSpec,
    cache: RwLock<HashMap<ObjectRef, Option<Arc<Cached>>>>,
}

pub fn mode_of(side: Side) -> Mode {
    match side {
        Side::Left => Mode::Left,
        Side::Right => Mode::Right,
        Side::TwoSided => Mode::Spherical,
    }
}

impl ExtendedTrace {
    /// No ambidexterity check; an unsuitable seed gives an ill-defined extension.
    pub fn unchecked(seed: TraceFamily, probes: Vec<ObjectRef>) -> ExtendedTrace {
        let spec = IdealSpec::Generated {
            side: seed.side,
            generators: seed.domain.clone(),
            probes: if seed.side == Side::TwoSided { probes } else { Vec::new() },
        };
        ExtendedTrace { seed, spec, cache: RwLock::new(HashMap::new()) }
    }

    /// Extend a seed that passes the ambidexterity check for its side, with `middles` as the
    /// probe objects for both the check and two-sided membership.
    pub fn extend(c: &Category, seed: TraceFamily, middles: &[ObjectRef]) -> Result<ExtendedTrace> {
        let r = check_ambidextrous(c, &seed, &seed.domain, mode_of(seed.side), middles);
        if !r.is_clean() {
            return Err(Error::Precondition(format!("seed is not ambidextrous: {}", r.violations[0])));
        }
        Ok(ExtendedTrace::unchecked(seed, middles.to_vec()))
    }

    pub fn seed(&self) -> &TraceFamily {
        &self.seed
    }

    pub fn spec(&self) -> &IdealSpec {
        &self.spec
    }

    /// Every retract presentation found for U: the trivial one when U is in the seed's
    /// domain, then one per witness, then kernel shifts, at most `limit` in total.
    pub fn presentations(&self, c: &Category, u: &ObjectRef, limit: usize) -> Result<Vec<RetractData>> {
        let mut out = Vec::new();
        if self.seed.domain.contains(u) {
            out.push(RetractData::trivial(c, u));
        }
        let ws = witnesses(c, u, &self.spec)?;
        for w in &ws {
            out.push(retract_from_witness(c, u, w)?);
        }
        for w in &ws {
            for k in &w.kernel {
                if out.len() >= limit {
                    break;
                }
                out.push(retract_from_witness(c, u, &w.shifted(k)?)?);
            }
        }
        out.truncate(limit);
        Ok(out)
    }

    /// The formula for one retract presentation.
    pub fn eval_via(&self, c: &Category, r: &RetractData, alpha: &Morphism) -> Result<Scalar> {
        let mut m = c.chain(&[&r.p, alpha, &r.q])?;
        if !r.right.is_unit() {
            m = partial_trace(c, &m, &r.right, Side::Right)?;
        }
        if !r.left.is_unit() {
            m = partial_trace(c, &m, &r.left, Side::Left)?;
        }
        self.seed.eval(c, &m)
    }

    fn cached(&self, c: &Category, u: &ObjectRef) -> Result<Option<Arc<Cached>>> {
        if let Some(hit) = self.cache.read().unwrap().get(u) {
            return Ok(hit.clone());
        }
        let retract = if self.seed.domain.contains(u) {
            Some(RetractData::trivial(c, u))
        } else {
            witnesses(c, u, &self.spec)?.first().map(|w| retract_from_witness(c, u, w)).transpose()?
        };
        let entry = match retract {
            None => None,
            Some(retract) => {
                let form = c
                    .end_basis(u)
                    .basis
                    .iter()
                    .map(|b| self.eval_via(c, &retract, b))
                    .collect::<Result<Vec<_>>>()?;
                Some(Arc::new(Cached { retract, form }))
            }
        };
        self.cache.write().unwrap().insert(u.clone(), entry.clone());
        Ok(entry)
    }

    /// Retract data used for U, or a not-admissible error.
    pub fn retract(&self, c: &Category, u: &ObjectRef) -> Result<RetractData> {
        Ok(self.require(c, u)?.retract.clone())
    }

    fn require(&self, c: &Category, u: &ObjectRef) -> Result<Arc<Cached>> {
        self.cached(c, u)?
            .ok_or_else(|| Error::NotAdmissible(format!("{} has no retract witness at current probes", c.name(u))))
    }

    /// Coefficients of t_U against `end_basis(U)`.
    pub fn form(&self, c: &Category, u: &ObjectRef) -> Result<Vec<Scalar>> {
        Ok(self.require(c, u)?.form.clone())
    }
}

impl LinearTrace for ExtendedTrace {
    fn side(&self) -> Side {
        self.seed.side
    }

    fn label(&self) -> String {
        let n = self.seed.domain.len();
        format!("{} extension of a seed on {n} object{}", self.seed.side, if n == 1 { "" } else { "s" })
    }

    fn admits(&self, c: &Category, x: &ObjectRef) -> bool {
        matches!(self.cached(c, x), Ok(Some(_)))
    }

    fn eval(&self, c: &Category, f: &Morphism) -> Result<Scalar> {
        if !f.is_endo() {
            return Err(Error::NotEndomorphism(c.name(&f.source)));
        }
        let entry = self.require(c, &f.source)?;
        let co = c.end_basis(&f.source).coords(&f.matrix);
        Ok(entry.form.iter().zip(&co).fold(c.field().zero(), |acc, (a, b)| acc + a * b))
    }
}

/// Evaluate t_U on a basis of End(U) through every presentation and report disagreements.
pub fn well_definedness_audit(c: &Category, t: &ExtendedTrace, u: &ObjectRef, trials: usize) -> Result<Report> {
    let mut r = Report::new(format!("well-definedness on {}", c.name(u)));
    let pres = t.presentations(c, u, trials.max(2))?;
    if pres.len() < 2 {
        r.note(format!("audit skipped: {} presentation(s) of {}", pres.len(), c.name(u)));
        return Ok(r);
    }
    r.note(format!("{} presentations", pres.len()));
    let basis = c.end_basis(u);
    let reference: Vec<Scalar> = basis.basis.iter().map(|b| t.eval_via(c, &pres[0], b)).collect::<Result<_>>()?;
    for (i, p) in pres.iter().enumerate().skip(1) {
        for (k, b) in basis.basis.iter().enumerate() {
            let v = t.eval_via(c, p, b)?;
            r.check(v == reference[k], || {
                format!(
                    "presentation {i} through {} gives {v} on basis {k}, presentation 0 gives {}",
                    c.name(&p.ambient()),
                    reference[k]
                )
            });
        }
    }
    Ok(r)
}

/// d(V) = t_V(Id_V).
pub fn modified_dim(c: &Category, t: &dyn LinearTrace, v: &ObjectRef) -> Result<Scalar> {
    if !t.admits(c, v) {
        return Err(Error::NotAdmissible(c.name(v)));
    }
    t.eval(c, &c.identity(v))
}

/// t∨ restricted to `domain`.
pub fn dual_family(c: &Category, t: &dyn LinearTrace, domain: &[ObjectRef]) -> Result<TraceFamily> {
    TraceFamily::restrict(c, &DualTrace(t), domain)
}

/// Whether t_V = t∨_V as forms on End(V); `None` when either side is not admissible.
pub fn self_dual_on(c: &Category, t: &dyn LinearTrace, v: &ObjectRef) -> Result<Option<bool>> {
    if !t.admits(c, v) || !t.admits(c, &v.dual()) {
        return Ok(None);
    }
    let d = DualTrace(t);
    let a = TraceFamily::coefficients(c, t, v)?;
    let b = TraceFamily::coefficients(c, &d, v)?;
    Ok(Some(a == b))
}

/// The candidates split into members of A = {V ∈ I∩I* : t_V = t∨_V}, non-members, and those
/// whose membership in I or I* could not be witnessed.
#[derive(Clone, Debug, Default)]
pub struct AClassification {
    pub members: Vec<ObjectRef>,
    pub excluded: Vec<ObjectRef>,
    pub undetermined: Vec<ObjectRef>,
}

pub fn compute_a(c: &Category, t: &dyn LinearTrace, candidates: &[ObjectRef]) -> Result<AClassification> {
    let mut out = AClassification::default();
    for v in candidates {
        match self_dual_on(c, t, v)? {
            Some(true) => out.members.push(v.clone()),
            Some(false) => out.excluded.push(v.clone()),
            None => out.undetermined.push(v.clone()),
        }
    }
    Ok(out)
}

/// Simple projectives V with ev_V and tev_V epi: the class on which slopes are defined.
pub fn simple_projectives(c: &Category, candidates: &[ObjectRef]) -> Result<Vec<ObjectRef>> {
    let mut out = Vec::new();
    for v in candidates {
        if c.dim(v) > 0
            && c.is_simple(v)
            && is_projective(c, v)?.is_some()
            && is_epi(&c.ev(v))
            && is_epi(&c.tev(v))
        {
            out.push(v.clone());
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlopeEntry {
    pub object: ObjectRef,
    pub d: Scalar,
    pub d_dual: Scalar,
    pub slope: Scalar,
}

#[derive(Clone, Debug, Default)]
pub struct SlopeTable {
    pub entries: Vec<SlopeEntry>,
}

impl SlopeTable {
    pub fn slope(&self, v: &ObjectRef) -> Option<&Scalar> {
        self.entries.iter().find(|e| &e.object == v).map(|e| &e.slope)
    }
}

fn slope_of(c: &Category, t: &dyn LinearTrace, v: &ObjectRef) -> Result<std::result::Result<SlopeEntry, String>> {
    let (d, d_dual) = match (modified_dim(c, t, v), modified_dim(c, t, &v.dual())) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return Ok(Err(format!("{}: {e}", c.name(v)))),
    };
    if d.is_zero() || d_dual.is_zero() {
        return Ok(Err(format!(
            "{}: zero modified dimension (d = {d}, d* = {d_dual}); nonvanishing needs a simple projective with epi evaluation and a nonzero trace",
            c.name(v)
        )));
    }
    let slope = d.checked_div(&d_dual)?;
    Ok(Ok(SlopeEntry { object: v.clone(), d, d_dual, slope }))
}

/// Slopes on `objects` with checks of s(V*) = s(V)⁻¹, s(U) = s(V)s(W) on the retract triples
/// (U, V, W) meaning U ≤ V⊗W, and t∨_V = t_V exactly when s(V) = 1.
pub fn slope_table(
    c: &Category,
    t: &dyn LinearTrace,
    objects: &[ObjectRef],
    triples: &[(ObjectRef, ObjectRef, ObjectRef)],
) -> Result<(SlopeTable, Report)> {
    let mut r = Report::new("slope properties");
    let mut table = SlopeTable::default();
    for v in objects {
        match slope_of(c, t, v)? {
            Ok(e) => table.entries.push(e),
            Err(msg) => r.note(format!("entry rejected: {msg}")),
        }
    }
    for e in &table.entries {
        let v = &e.object;
        match slope_of(c, t, &v.dual())? {
            Ok(dual) => {
                let prod = &e.slope * &dual.slope;
                r.check(prod.is_one(), || format!("s({}) s({}*) = {prod}", c.name(v), c.name(v)));
            }
            Err(msg) => r.note(format!("(a) not checked for {}: {msg}", c.name(v))),
        }
        match self_dual_on(c, t, v)? {
            Some(same) => {
                r.check(same == e.slope.is_one(), || {
                    format!("{}: t∨ = t is {same} but s = {}", c.name(v), e.slope)
                });
            }
            None => r.note(format!("(c) not checked for {}", c.name(v))),
        }
    }
    for (u, v, w) in triples {
        if !is_retract(c, u, &v.tensor(w)) {
            r.violation(format!("{} is not a retract of {}⊗{}", c.name(u), c.name(v), c.name(w)));
            continue;
        }
        let s = |x: &ObjectRef| -> Result<Option<Scalar>> {
            Ok(match table.slope(x) {
                Some(s) => Some(s.clone()),
                None => slope_of(c, t, x)?.ok().map(|e| e.slope),
            })
        };
        match (s(u)?, s(v)?, s(w)?) {
            (Some(su), Some(sv), Some(sw)) => {
                let prod = &sv * &sw;
                r.check(su == prod, || {
                    format!("s({}) = {su} but s({}) s({}) = {prod}", c.name(u), c.name(v), c.name(w))
                });
            }
            _ => r.note(format!("(b) not checked for {} ≤ {}⊗{}", c.name(u), c.name(v), c.name(w))),
        }
    }
    Ok((table, r))
}

/// U is a retract of X, decided for End-rank-one U by a nonzero composite of hom basis maps.
pub fn is_retract(c: &Category, u: &ObjectRef, x: &ObjectRef) -> bool {
    if !c.is_simple(u) {
        return c.find_isomorphism(u, x).is_some();
    }
    let ps = c.hom_basis(x, u);
    let qs = c.hom_basis(u, x);
    ps.basis.iter().any(|p| qs.basis.iter().any(|q| !c.compose(p, q).unwrap().matrix.is_zero()))
}

#[cfg(test)]
mod tests;
