//! Batch front end: argument parsing, category loading, record output and exit codes.

mod commands;
mod trace_spec;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::category::Category;
use crate::error::{Error, Result};
use crate::exact::Field;
use crate::hopf::{parse_category, validate_hopf, Builtin};
use crate::report::Report;

pub use trace_spec::{SeedSpec, TraceSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_INADMISSIBLE: i32 = 3;
pub const EXIT_PARSE: i32 = 4;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Output {
    #[default]
    Human,
    Records,
}

#[derive(Clone, Debug, Parser)]
#[command(name = "pivotrace", version, about = "Exact modified traces and graph invariants for pivotal Hopf module categories")]
pub struct RunConfig {
    /// Builtin name (`sweedler`, `group_algebra:N:PIVOT`) or path to a category file.
    #[arg(long, global = true)]
    pub category: Option<String>,
    /// Ground field for builtins: Q, F<p>, Cyclotomic <n>.
    #[arg(long, global = true)]
    pub field: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Output::Human)]
    pub output: Output,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Check the Hopf algebra axioms and every module.
    Validate,
    /// Evaluate a diagram.
    Eval {
        #[arg(long)]
        diagram: PathBuf,
        #[arg(long)]
        name: Option<String>,
    },
    /// Solve the ambidexterity equations on a class of objects.
    SolveAmbi {
        #[arg(long, value_delimiter = ',')]
        objects: Vec<String>,
        #[arg(long, default_value = "left")]
        mode: String,
        #[arg(long, value_delimiter = ',')]
        middles: Vec<String>,
    },
    /// Test membership in an ideal: `left:{P+}`, `right:{..}`, `two-sided:{..};probes:{..}`, `proj`.
    Ideal {
        #[arg(long)]
        spec: String,
        #[arg(long, value_delimiter = ',')]
        test: Vec<String>,
    },
    /// Modified dimensions of an extended trace.
    Dims {
        #[arg(long)]
        seed: String,
        #[arg(long, default_value = "left")]
        side: String,
        #[arg(long, value_delimiter = ',')]
        objects: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        middles: Vec<String>,
        /// Skip the ambidexterity check on the seed.
        #[arg(long)]
        unchecked: bool,
    },
    /// Slope table with the duality, product and self-duality checks.
    Slope {
        #[arg(long)]
        seed: String,
        #[arg(long, default_value = "left")]
        side: String,
        /// Defaults to the simple projectives with epi evaluations among the named objects.
        #[arg(long, value_delimiter = ',')]
        objects: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        middles: Vec<String>,
        /// Retract triples `U<V⊗W`, separated by ';'.
        #[arg(long)]
        triples: Option<String>,
    },
    /// The invariant of a cutting presentation, `file.pd#name`.
    Invariant {
        #[arg(long)]
        trace: String,
        #[arg(long)]
        presentation: String,
        #[arg(long, default_value = "left")]
        variant: String,
    },
    /// Invariance audit of presentations, or well-definedness audit of objects.
    Audit {
        #[arg(long)]
        trace: String,
        #[arg(long, value_delimiter = ',')]
        presentations: Vec<String>,
        #[arg(long, default_value = "two-sided")]
        variant: String,
        #[arg(long, value_delimiter = ',')]
        well_defined: Vec<String>,
        #[arg(long, default_value_t = 4)]
        trials: usize,
    },
    /// d(V)⟨T⟩ across cuttings of trivalent graphs.
    TrivalentCheck {
        #[arg(long)]
        diagram: PathBuf,
        /// Presentation names, graphs separated by ';' and cuttings by ','.
        #[arg(long)]
        graphs: String,
        #[arg(long, value_delimiter = ',')]
        b: Vec<String>,
        /// One dimension per B entry; taken from the trace when omitted.
        #[arg(long, value_delimiter = ',')]
        dims: Vec<String>,
        #[arg(long)]
        trace: Option<String>,
    },
}

/// Writes one record per line: `KIND key="value" …` or a human-readable variant.
pub struct Emitter<'a> {
    out: &'a mut dyn Write,
    format: Output,
}

fn quote(v: &str) -> String {
    format!("\"{}\"", v.replace('\\', "\\\\").replace('"', "\\\""))
}

impl<'a> Emitter<'a> {
    pub fn new(out: &'a mut dyn Write, format: Output) -> Emitter<'a> {
        Emitter { out, format }
    }

    pub fn record(&mut self, kind: &str, fields: &[(&str, String)]) {
        let line = match self.format {
            Output::Records => {
                let fs: Vec<String> = fields.iter().map(|(k, v)| format!("{k}={}", quote(v))).collect();
                if fs.is_empty() { kind.to_string() } else { format!("{kind} {}", fs.join(" ")) }
            }
            Output::Human => {
                let fs: Vec<String> = fields.iter().map(|(k, v)| format!("{k}: {v}")).collect();
                format!("{:<10} {}", kind.to_lowercase(), fs.join(", "))
            }
        };
        let _ = writeln!(self.out, "{line}");
    }

    /// Emit a report; returns whether it is clean.
    pub fn report(&mut self, r: &Report) -> bool {
        let status = if r.is_clean() { "clean" } else { "violations" };
        self.record(
            "REPORT",
            &[("title", r.title.clone()), ("status", status.into()), ("checked", r.checked.to_string())],
        );
        for v in &r.violations {
            self.record("VIOLATION", &[("detail", v.clone())]);
        }
        for n in &r.notes {
            self.record("NOTE", &[("detail", n.clone())]);
        }
        r.is_clean()
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::Literal { .. } | Error::Typecheck { .. } => EXIT_PARSE,
        Error::NotAdmissible(_) | Error::NotInDomain(_) | Error::Precondition(_) | Error::NotSimple(..) => EXIT_INADMISSIBLE,
        _ => EXIT_VALIDATION,
    }
}

fn field_override(cfg: &RunConfig) -> Result<Option<Field>> {
    cfg.field.as_deref().map(Field::parse).transpose()
}

/// Load the category named by `--category`, or by a `use` line when the flag is absent.
pub fn load_category(cfg: &RunConfig, fallback: Option<&str>) -> Result<Category> {
    match (&cfg.category, fallback) {
        (Some(n), _) => resolve_category(n, field_override(cfg)?),
        (None, Some(u)) => category_from_use(u, field_override(cfg)?),
        (None, None) => Err(Error::Validation("no --category given".into())),
    }
}

/// A `use` line value, which may name the field: `group_algebra:3:1 over Cyclotomic 3`.
/// An explicit `field` wins.
pub fn category_from_use(text: &str, field: Option<Field>) -> Result<Category> {
    match text.split_once(" over ") {
        Some((n, f)) => resolve_category(n.trim(), Some(field.map_or_else(|| Field::parse(f.trim()), Ok)?)),
        None => resolve_category(text.trim(), field),
    }
}

/// A builtin name or the path of a category file.
pub fn resolve_category(name: &str, field: Option<Field>) -> Result<Category> {
    if Path::new(name).is_file() {
        return Category::from_text(&read(Path::new(name))?);
    }
    Category::from_builtin(&Builtin::parse(name, field)?)
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Run one command, writing records to `out`; returns the exit code.
pub fn run(cfg: &RunConfig, out: &mut dyn Write) -> i32 {
    let mut em = Emitter::new(out, cfg.output);
    if let Command::Validate = cfg.command {
        return validate(cfg, &mut em);
    }
    match commands::dispatch(cfg, &mut em) {
        Ok(code) => code,
        Err(e) => {
            em.record("ERROR", &[("kind", error_kind(&e).into()), ("detail", e.to_string())]);
            exit_code(&e)
        }
    }
}

fn error_kind(e: &Error) -> &'static str {
    match exit_code(e) {
        EXIT_PARSE => "parse",
        EXIT_INADMISSIBLE => "inadmissible",
        _ => "validation",
    }
}

fn validate(cfg: &RunConfig, em: &mut Emitter) -> i32 {
    let name = cfg.category.clone().unwrap_or_default();
    let loaded = if Path::new(&name).is_file() {
        read(Path::new(&name)).and_then(|t| parse_category(&t))
    } else {
        field_override(cfg).and_then(|f| Builtin::parse(&name, f)).and_then(|b| b.build())
    };
    let (h, mods) = match loaded {
        Ok(x) => x,
        Err(e) => {
            em.record("ERROR", &[("kind", error_kind(&e).into()), ("detail", e.to_string())]);
            return exit_code(&e);
        }
    };
    let mut failures = validate_hopf(&h).failures;
    for m in &mods {
        match crate::hopf::validate_module(&h, m) {
            Ok(r) => failures.extend(r.failures),
            Err(e) => {
                em.record("ERROR", &[("kind", "validation".into()), ("detail", format!("{}: {e}", m.name))]);
                return EXIT_VALIDATION;
            }
        }
    }
    em.record(
        "VALIDATE",
        &[
            ("category", name),
            ("field", h.field().to_string()),
            ("dim", h.dim().to_string()),
            ("modules", mods.iter().map(|m| m.name.clone()).collect::<Vec<_>>().join(",")),
            ("status", if failures.is_empty() { "ok" } else { "failed" }.into()),
        ],
    );
    for f in &failures {
        em.record("FAILURE", &[("axiom", f.axiom.to_string()), ("detail", f.detail.clone())]);
    }
    if failures.is_empty() { EXIT_OK } else { EXIT_VALIDATION }
}

/// Parse arguments and run; for the binary.
pub fn main_from_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(cfg) => run(&cfg, &mut std::io::stdout().lock()),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_VALIDATION } else { EXIT_OK };
            let _ = e.print();
            code
        }
    }
}
