//! `--seed` and `--trace` option values.

use crate::category::{Category, Morphism, ObjectRef};
use crate::error::{Error, Result};
use crate::exact::Scalar;
use crate::modified::{mode_of, ExtendedTrace};
use crate::trace::{solve_ambidextrous, LinearTrace, Side, TraceFamily, UsualTrace};


/// How the seed family is obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeedSpec {
    /// `usual`: the usual trace of the requested side, on every object.
    Usual,
    /// `bracket:V`: ⟨·⟩_V on an End-rank-one V.
    Bracket(String),
    /// `solve:X|Y`: first basis vector of the ambidextrous solution space.
    Solve(Vec<String>),
    /// `forms:X=[a,b]|Y=[c]`: explicit coefficients against the End bases.
    Forms(Vec<(String, Vec<String>)>),
}

/// Split on commas that are not inside brackets.
pub(crate) fn split_top(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in text.chars() {
        match ch {
            '[' | '(' | '{' => depth += 1,
            ']' | ')' | '}' => depth -= 1,
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur));
                continue;
            }
            _ => {}
        }
        cur.push(ch);
    }
    out.push(cur);
    out.into_iter().map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
}

fn bad(text: &str, why: &str) -> Error {
    Error::Validation(format!("bad seed {text:?}: {why}"))
}

impl SeedSpec {
    pub fn parse(text: &str) -> Result<SeedSpec> {
        let t = text.trim();
        if t == "usual" {
            return Ok(SeedSpec::Usual);
        }
        let (kind, rest) = t.split_once(':').ok_or_else(|| bad(t, "expected KIND:ARGS"))?;
        let items: Vec<&str> = rest.split('|').map(str::trim).filter(|s| !s.is_empty()).collect();
        if items.is_empty() {
            return Err(bad(t, "no objects"));
        }
        match kind {
            "bracket" if items.len() == 1 => Ok(SeedSpec::Bracket(items[0].to_string())),
            "solve" => Ok(SeedSpec::Solve(items.iter().map(|s| s.to_string()).collect())),
            "forms" => items
                .iter()
                .map(|item| {
                    let (obj, vals) = item.split_once('=').ok_or_else(|| bad(t, "expected OBJ=[..]"))?;
                    let vals = vals.trim();
                    let inner = vals
                        .strip_prefix('[')
                        .and_then(|v| v.strip_suffix(']'))
                        .ok_or_else(|| bad(t, "coefficients go in brackets"))?;
                    let cs = inner.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
                    Ok((obj.trim().to_string(), cs))
                })
                .collect::<Result<Vec<_>>>()
                .map(SeedSpec::Forms),
            _ => Err(bad(t, "kinds are usual, bracket:V, solve:X|Y, forms:X=[..]")),
        }
    }

    /// The seed family, or `None` for the usual trace.
    pub fn family(&self, c: &Category, side: Side, middles: &[ObjectRef]) -> Result<Option<TraceFamily>> {
        match self {
            SeedSpec::Usual => Ok(None),
            SeedSpec::Bracket(v) => TraceFamily::bracket(c, &c.object(v)?, side).map(Some),
            SeedSpec::Solve(objs) => {
                let objs = objs.iter().map(|o| c.object(o)).collect::<Result<Vec<_>>>()?;
                let sols = solve_ambidextrous(c, &objs, mode_of(side), middles)?;
                sols.into_iter()
                    .next()
                    .map(Some)
                    .ok_or_else(|| Error::NotAdmissible("the ambidextrous solution space is zero".into()))
            }
            SeedSpec::Forms(items) => {
                let mut domain = Vec::new();
                let mut forms = Vec::new();
                for (o, cs) in items {
                    domain.push(c.object(o)?);
                    forms.push(cs.iter().map(|s| c.field().parse_literal(s)).collect::<Result<Vec<Scalar>>>()?);
                }
                TraceFamily::new(c, side, domain, forms).map(Some)
            }
        }
    }
}

/// `seed=…,side=…,middles=X|Y,unchecked`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceSpec {
    pub seed: SeedSpec,
    pub side: Side,
    pub middles: Vec<String>,
    pub unchecked: bool,
}

impl TraceSpec {
    pub fn parse(text: &str) -> Result<TraceSpec> {
        let mut seed = None;
        let mut side = Side::Left;
        let mut middles = Vec::new();
        let mut unchecked = false;
        for part in split_top(text) {
            match part.split_once('=') {
                Some(("seed", v)) => seed = Some(SeedSpec::parse(v)?),
                Some(("side", v)) => side = Side::parse(v.trim())?,
                Some(("middles", v)) => {
                    middles = v.split('|').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
                }
                None if part == "unchecked" => unchecked = true,
                _ => return Err(Error::Validation(format!("bad trace field {part:?}"))),
            }
        }
        let seed = seed.ok_or_else(|| Error::Validation("trace needs seed=…".into()))?;
        Ok(TraceSpec { seed, side, middles, unchecked })
    }

    pub fn build(&self, c: &Category) -> Result<BuiltTrace> {
        let middles = self.middles.iter().map(|m| c.object(m)).collect::<Result<Vec<_>>>()?;
        build_trace(c, &self.seed, self.side, &middles, self.unchecked)
    }
}

/// A trace ready for evaluation.
pub enum BuiltTrace {
    Usual(UsualTrace),
    Extended(ExtendedTrace),
}

impl BuiltTrace {
    pub fn as_dyn(&self) -> &dyn LinearTrace {
        match self {
            BuiltTrace::Usual(t) => t,
            BuiltTrace::Extended(t) => t,
        }
    }

    pub fn extended(&self) -> Option<&ExtendedTrace> {
        match self {
            BuiltTrace::Extended(t) => Some(t),
            BuiltTrace::Usual(_) => None,
        }
    }

    pub fn eval(&self, c: &Category, f: &Morphism) -> Result<Scalar> {
        self.as_dyn().eval(c, f)
    }
}

pub(crate) fn build_trace(
    c: &Category,
    seed: &SeedSpec,
    side: Side,
    middles: &[ObjectRef],
    unchecked: bool,
) -> Result<BuiltTrace> {
    match seed.family(c, side, middles)? {
        None if side == Side::TwoSided => {
            Err(Error::Validation("the usual trace is one-sided; pick side=left or side=right".into()))
        }
        None => Ok(BuiltTrace::Usual(UsualTrace(side))),
        Some(fam) if unchecked => Ok(BuiltTrace::Extended(ExtendedTrace::unchecked(fam, middles.to_vec()))),
        Some(fam) => ExtendedTrace::extend(c, fam, middles).map(BuiltTrace::Extended),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_respects_brackets() {
        assert_eq!(
            split_top("seed=forms:reg=[0,1,0]|k=[1],side=left, unchecked"),
            vec!["seed=forms:reg=[0,1,0]|k=[1]", "side=left", "unchecked"]
        );
    }

    #[test]
    fn trace_spec_fields() {
        let t = TraceSpec::parse("seed=bracket:P+,side=two-sided,middles=k+|P-").unwrap();
        assert_eq!(t.seed, SeedSpec::Bracket("P+".into()));
        assert_eq!(t.side, Side::TwoSided);
        assert_eq!(t.middles, vec!["k+", "P-"]);
        assert!(!t.unchecked);
        let t = TraceSpec::parse("seed=forms:reg=[0,1,0]|k=[1],unchecked").unwrap();
        assert_eq!(
            t.seed,
            SeedSpec::Forms(vec![("reg".into(), vec!["0".into(), "1".into(), "0".into()]), ("k".into(), vec!["1".into()])])
        );
        assert!(t.unchecked);
        assert!(TraceSpec::parse("side=left").is_err());
        assert!(TraceSpec::parse("seed=bracket:P+,colour=red").is_err());
        assert!(SeedSpec::parse("bracket:P+|P-").is_err());
        assert_eq!(SeedSpec::parse("solve:P+|P-").unwrap(), SeedSpec::Solve(vec!["P+".into(), "P-".into()]));
    }
}
