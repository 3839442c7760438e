//! Command-line front end.
//!
//! Results go to stdout as JSON (keys sorted) or as a document; a short
//! human summary goes to stderr. Exit codes: 0 success, 1 domain error
//! (bad document, failed check, exhausted budget), 2 usage error.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use collapsar_core::collapse::{euler_characteristic, replay_simple, strong_to_simple};
use collapsar_core::functors::{classifying_space, face_poset_category, sd_category, sd_delta};
use collapsar_core::oracle::{
    check_theorem, random_acyclic_category, random_delta_complex, GeneratorParams, Instance, InstanceKind,
    OracleConfig, TheoremError, TheoremTag, Verdict,
};
use collapsar_core::{AcyclicCategory, DeltaComplex};

use crate::budget::Deadline;
use crate::document::{
    load_any, load_category, load_complex, save_category, save_complex, CategoryDocument, ComplexDocument, Document,
    LoadError,
};
use crate::render::{category_dot, complex_dot};

#[derive(Parser, Debug)]
#[command(name = "collapsar", version, about = "Strong homotopy of acyclic categories and unordered Δ-complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that a document is well formed and satisfies its axioms.
    Validate {
        /// Document path, or `-` for stdin.
        doc: String,
        /// Source complex of a map document (defaults to the path it names).
        #[arg(long)]
        source: Option<PathBuf>,
        /// Target complex of a map document (defaults to the path it names).
        #[arg(long)]
        target: Option<PathBuf>,
    },
    /// Greedy strong collapse to a core.
    Core { doc: String },
    /// One elementary strong collapse, at a named object or vertex or at the first one available.
    Collapse {
        doc: String,
        #[arg(long)]
        at: Option<String>,
    },
    /// Decide isomorphism of two documents of the same kind.
    Iso { first: String, second: String },
    /// Classifying space of a category.
    Bspace { doc: String },
    /// Face poset of a complex, as a category document.
    FacetPoset { doc: String },
    /// Barycentric subdivision of a category or complex.
    Sd { doc: String },
    /// Expand the strong collapse of a dominated vertex into simple collapses.
    SimpleCollapse {
        doc: String,
        /// Vertex to remove.
        #[arg(long)]
        vertex: String,
        /// Dominating vertex; found automatically when omitted.
        #[arg(long)]
        onto: Option<String>,
    },
    /// Run a theorem checker on seeded random instances or on one document.
    Check {
        /// One of beat_dominated, B_minimal, B_collapse, chi_minimal, chi_collapse,
        /// sd_cat_collapse, sd_delta_collapse, adjunction, contiguity_retraction.
        #[arg(long)]
        theorem: String,
        /// Check this document instead of random instances.
        doc: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: u64,
        /// Largest instance size (objects or vertices).
        #[arg(long)]
        max_size: Option<usize>,
    },
    /// Generate a seeded random category or complex.
    Random {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        max_size: Option<usize>,
        #[arg(long)]
        max_parallel: Option<usize>,
        #[arg(long)]
        max_dim: Option<usize>,
        #[arg(long)]
        density: Option<f64>,
        #[arg(long)]
        quotient: Option<f64>,
        #[arg(long)]
        multiplicity: Option<f64>,
    },
    /// Graphviz DOT of a category or of a complex's face relation.
    Render {
        doc: String,
        /// Draw the covering relation of the underlying poset only.
        #[arg(long)]
        poset: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Category,
    Complex,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("cannot read `{path}`: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Load(#[from] LoadError),
    #[error("{message}")]
    Domain { tag: &'static str, message: String },
}

impl CliError {
    fn tag(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "IoError",
            CliError::Load(e) => e.tag(),
            CliError::Domain { tag, .. } => tag,
        }
    }

    fn domain(tag: &'static str, message: impl Into<String>) -> Self {
        CliError::Domain { tag, message: message.into() }
    }
}

impl From<TheoremError> for CliError {
    fn from(e: TheoremError) -> Self {
        CliError::Domain { tag: e.tag(), message: e.to_string() }
    }
}

/// What a command produced.
struct Output {
    stdout: String,
    summary: String,
    /// Domain failure detected after producing output, e.g. a counterexample.
    failed: bool,
}

impl Output {
    fn json(value: Value, summary: impl Into<String>) -> Self {
        let mut stdout = serde_json::to_string_pretty(&value).expect("JSON values serialize");
        stdout.push('\n');
        Output { stdout, summary: summary.into(), failed: false }
    }

    fn text(stdout: String, summary: impl Into<String>) -> Self {
        Output { stdout, summary: summary.into(), failed: false }
    }
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
}

impl Io<'_> {
    fn read(&mut self, path: &str) -> Result<String, CliError> {
        if path == "-" {
            let mut text = String::new();
            self.stdin.read_to_string(&mut text).map_err(|source| CliError::Io { path: "<stdin>".into(), source })?;
            Ok(text)
        } else {
            std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString>,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = stdout.write_all(e.render().to_string().as_bytes());
            return 0;
        }
        Err(e) => {
            let _ = write!(stderr, "{}\n{}", e.render(), usage_help(&args));
            return 2;
        }
    };
    let mut io = Io { stdin };
    match execute(cli.command, &mut io) {
        Ok(out) => {
            let _ = stdout.write_all(out.stdout.as_bytes());
            if !out.summary.is_empty() {
                let _ = writeln!(stderr, "{}", out.summary);
            }
            i32::from(out.failed)
        }
        Err(e) => {
            let _ = writeln!(stderr, "error[{}]: {e}", e.tag());
            1
        }
    }
}

/// Help for the subcommand named in `args`, or the top-level help listing
/// every subcommand.
fn usage_help(args: &[std::ffi::OsString]) -> String {
    let mut root = Cli::command();
    root.build();
    let named = args.iter().skip(1).find_map(|a| a.to_str().filter(|a| !a.starts_with('-')).map(str::to_owned));
    match named.and_then(|n| root.find_subcommand_mut(&n).cloned()) {
        Some(mut sub) => sub.render_help().to_string(),
        None => root.render_help().to_string(),
    }
}

fn document_value(doc: &Document) -> Value {
    match doc {
        Document::Category(a) => serde_json::to_value(CategoryDocument::from_category(a)),
        Document::Complex(x) => serde_json::to_value(ComplexDocument::from_complex(x)),
        Document::Map(m) => serde_json::to_value(m),
    }
    .expect("documents serialize")
}

fn plural(n: usize, word: &str) -> String {
    if n == 1 {
        format!("1 {word}")
    } else {
        format!("{n} {word}s")
    }
}

fn execute(command: Command, io: &mut Io<'_>) -> Result<Output, CliError> {
    match command {
        Command::Validate { doc, source, target } => validate(io, &doc, source, target),
        Command::Core { doc } => match load_any(&io.read(&doc)?)? {
            Document::Category(a) => Ok(core_category(&a)),
            Document::Complex(x) => core_complex(&x),
            Document::Map(_) => Err(wrong_kind("category or complex", "map")),
        },
        Command::Collapse { doc, at } => match load_any(&io.read(&doc)?)? {
            Document::Category(a) => collapse_category(&a, at.as_deref()),
            Document::Complex(x) => collapse_complex(&x, at.as_deref()),
            Document::Map(_) => Err(wrong_kind("category or complex", "map")),
        },
        Command::Iso { first, second } => {
            let a = load_any(&io.read(&first)?)?;
            let b = load_any(&io.read(&second)?)?;
            iso(&a, &b)
        }
        Command::Bspace { doc } => {
            let a = load_category(&io.read(&doc)?)?;
            let b = classifying_space(&a).complex;
            let summary =
                format!("B(A): {} over {}", plural(b.simplex_count(), "simplex"), plural(b.vertex_count(), "vertex"));
            Ok(Output::text(save_complex(&b), summary))
        }
        Command::FacetPoset { doc } => {
            let x = load_complex(&io.read(&doc)?)?;
            let chi = face_poset_category(&x).category;
            Ok(Output::text(save_category(&chi), format!("χ(X): {}", plural(chi.object_count(), "element"))))
        }
        Command::Sd { doc } => match load_any(&io.read(&doc)?)? {
            Document::Category(a) => {
                let sd = sd_category(&a);
                Ok(Output::text(
                    save_category(&sd),
                    format!("sd(A): poset with {}", plural(sd.object_count(), "element")),
                ))
            }
            Document::Complex(x) => {
                let sd = sd_delta(&x);
                let summary = format!(
                    "sd(X): {}, {}",
                    plural(sd.simplex_count(), "simplex"),
                    if sd.is_simplicial() { "simplicial" } else { "not simplicial" }
                );
                Ok(Output::text(save_complex(&sd), summary))
            }
            Document::Map(_) => Err(wrong_kind("category or complex", "map")),
        },
        Command::SimpleCollapse { doc, vertex, onto } => {
            let x = load_complex(&io.read(&doc)?)?;
            simple_collapse(&x, &vertex, onto.as_deref())
        }
        Command::Check { theorem, doc, seed, count, max_size } => {
            let tag: TheoremTag = theorem.parse()?;
            match doc {
                Some(path) => {
                    let instance = match load_any(&io.read(&path)?)? {
                        Document::Category(a) => Instance::Category(a),
                        Document::Complex(x) => Instance::Complex(x),
                        Document::Map(_) => return Err(wrong_kind("category or complex", "map")),
                    };
                    check(tag, std::iter::once((None, instance)))
                }
                None => {
                    let config = OracleConfig::default();
                    let size = max_size.unwrap_or(match tag.kind() {
                        InstanceKind::Category => config.max_objects,
                        InstanceKind::Complex => config.max_vertices,
                    });
                    let instances = (seed..seed.saturating_add(count)).map(|s| {
                        let p = GeneratorParams { max_size: size, ..GeneratorParams::with_seed(s) };
                        let instance = match tag.kind() {
                            InstanceKind::Category => Instance::Category(random_acyclic_category(&p)),
                            InstanceKind::Complex => Instance::Complex(random_delta_complex(&p)),
                        };
                        (Some(s), instance)
                    });
                    check(tag, instances)
                }
            }
        }
        Command::Random { kind, seed, max_size, max_parallel, max_dim, density, quotient, multiplicity } => {
            let mut p = GeneratorParams::with_seed(seed);
            if let Some(v) = max_size {
                p.max_size = v;
            }
            if let Some(v) = max_parallel {
                p.max_parallel = v;
            }
            if let Some(v) = max_dim {
                p.max_dim = v;
            }
            for (slot, value, name) in [
                (&mut p.density, density, "density"),
                (&mut p.quotient, quotient, "quotient"),
                (&mut p.multiplicity, multiplicity, "multiplicity"),
            ] {
                if let Some(v) = value {
                    if !(0.0..=1.0).contains(&v) {
                        return Err(CliError::domain(
                            "InvalidParameter",
                            format!("{name} must lie in [0, 1], got {v}"),
                        ));
                    }
                    *slot = v;
                }
            }
            Ok(match kind {
                Kind::Category => {
                    let a = random_acyclic_category(&p);
                    let summary =
                        format!("{}, {}", plural(a.object_count(), "object"), plural(a.morphism_count(), "morphism"));
                    Output::text(save_category(&a), summary)
                }
                Kind::Complex => {
                    let x = random_delta_complex(&p);
                    let summary =
                        format!("{} over {}", plural(x.simplex_count(), "simplex"), plural(x.vertex_count(), "vertex"));
                    Output::text(save_complex(&x), summary)
                }
            })
        }
        Command::Render { doc, poset } => match load_any(&io.read(&doc)?)? {
            Document::Category(a) => Ok(Output::text(category_dot(&a, poset), "")),
            Document::Complex(x) => Ok(Output::text(complex_dot(&x), "")),
            Document::Map(_) => Err(wrong_kind("category or complex", "map")),
        },
    }
}

fn wrong_kind(expected: &'static str, found: &'static str) -> CliError {
    CliError::Load(LoadError::WrongKind { expected, found })
}

fn validate(io: &mut Io<'_>, path: &str, source: Option<PathBuf>, target: Option<PathBuf>) -> Result<Output, CliError> {
    Ok(match load_any(&io.read(path)?)? {
        Document::Category(a) => Output::json(
            json!({
                "kind": "category",
                "valid": true,
                "digest": a.digest().to_string(),
                "objects": a.object_count(),
                "morphisms": a.morphism_count(),
                "poset": a.is_poset(),
            }),
            format!(
                "valid category: {}, {}",
                plural(a.object_count(), "object"),
                plural(a.morphism_count(), "morphism")
            ),
        ),
        Document::Complex(x) => Output::json(
            json!({
                "kind": "complex",
                "valid": true,
                "digest": x.digest().to_string(),
                "vertices": x.vertex_count(),
                "simplices": x.simplex_count(),
                "dimension": x.dimension(),
                "simplicial": x.is_simplicial(),
                "euler_characteristic": euler_characteristic(&x),
            }),
            format!(
                "valid complex: {} over {}",
                plural(x.simplex_count(), "simplex"),
                plural(x.vertex_count(), "vertex")
            ),
        ),
        Document::Map(m) => {
            // Referenced documents are resolved relative to the map document.
            let base = if path == "-" {
                PathBuf::from(".")
            } else {
                Path::new(path).parent().unwrap_or(Path::new(".")).to_path_buf()
            };
            let source = source.unwrap_or_else(|| base.join(&m.source));
            let target = target.unwrap_or_else(|| base.join(&m.target));
            let x = load_complex(&io.read(&source.to_string_lossy())?)?;
            let y = load_complex(&io.read(&target.to_string_lossy())?)?;
            let map = m.resolve(&x, &y)?;
            Output::json(
                json!({ "kind": "map", "valid": true, "identity": map.is_identity() && x == y }),
                format!("valid Δ-map on {}", plural(x.simplex_count(), "simplex")),
            )
        }
    })
}

fn core_category(a: &AcyclicCategory) -> Output {
    let (core, sequence) = a.core();
    let steps: Vec<Value> = sequence
        .steps
        .iter()
        .map(|s| {
            json!({
                "object": s.object_name,
                "direction": s.witness.direction.as_str(),
                "morphism": s.morphism_name,
                "snapshot": s.snapshot.to_string(),
            })
        })
        .collect();
    let removed: Vec<&str> = sequence.removed_objects().collect();
    let summary =
        format!("removed {}; core has {}", plural(removed.len(), "object"), plural(core.object_count(), "object"));
    Output::json(
        json!({
            "minimal": removed.is_empty(),
            "removed": removed,
            "steps": steps,
            "strongly_collapsible": core.object_count() == 1,
            "core": document_value(&Document::Category(core)),
        }),
        summary,
    )
}

fn core_complex(x: &DeltaComplex) -> Result<Output, CliError> {
    let (core, sequence) = x.core().map_err(LoadError::from)?;
    let steps: Vec<Value> = sequence
        .steps
        .iter()
        .map(|s| json!({ "vertex": s.vertex_name, "dominated_by": s.dominating_name, "snapshot": s.snapshot.to_string() }))
        .collect();
    let removed: Vec<&str> = sequence.removed_vertices().collect();
    let summary =
        format!("removed {}; core has {}", plural(removed.len(), "vertex"), plural(core.vertex_count(), "vertex"));
    Ok(Output::json(
        json!({
            "minimal": removed.is_empty(),
            "removed": removed,
            "steps": steps,
            "strongly_collapsible": core.vertex_count() == 1,
            "core": document_value(&Document::Complex(core)),
        }),
        summary,
    ))
}

fn collapse_category(a: &AcyclicCategory, at: Option<&str>) -> Result<Output, CliError> {
    let witness = match at {
        Some(name) => {
            let x = a
                .object_by_name(name)
                .ok_or_else(|| CliError::domain("UnknownObject", format!("no object `{name}`")))?;
            a.find_beat(x).ok_or_else(|| CliError::domain("NotBeatObject", format!("`{name}` is not a beat object")))?
        }
        None => a.first_beat().ok_or_else(|| CliError::domain("AlreadyMinimal", "the category has no beat object"))?,
    };
    let result = a.remove_object(witness.object);
    let name = a.object_name(witness.object);
    Ok(Output::json(
        json!({
            "removed": name,
            "direction": witness.direction.as_str(),
            "morphism": a.morphism_name(witness.morphism),
            "partner": a.object_name(witness.partner(a)),
            "result": document_value(&Document::Category(result)),
        }),
        format!("removed {} beat object `{name}`", witness.direction.as_str()),
    ))
}

fn collapse_complex(x: &DeltaComplex, at: Option<&str>) -> Result<Output, CliError> {
    let witness = match at {
        Some(name) => {
            let v = x.by_name(name).filter(|&v| x.dim(v) == 0);
            let v = v.ok_or_else(|| CliError::domain("UnknownVertex", format!("no vertex `{name}`")))?;
            x.find_domination(v)
                .ok_or_else(|| CliError::domain("NotDominated", format!("`{name}` is not dominated")))?
        }
        None => x
            .first_dominated()
            .ok_or_else(|| CliError::domain("AlreadyMinimal", "the complex has no dominated vertex"))?,
    };
    let result = x.remove_vertex(witness.vertex);
    let name = x.name(witness.vertex);
    Ok(Output::json(
        json!({
            "removed": name,
            "dominated_by": x.name(witness.dominating),
            "result": document_value(&Document::Complex(result)),
        }),
        format!("removed dominated vertex `{name}`"),
    ))
}

fn iso(a: &Document, b: &Document) -> Result<Output, CliError> {
    let (found, value) = match (a, b) {
        (Document::Category(a), Document::Category(b)) => match a.isomorphism_to(b) {
            None => (false, json!({ "isomorphic": false })),
            Some(f) => {
                let objects: serde_json::Map<String, Value> = a
                    .object_ids()
                    .map(|x| (a.object_name(x).to_string(), json!(b.object_name(f.objects[x.0]))))
                    .collect();
                let morphisms: serde_json::Map<String, Value> = a
                    .morphism_ids()
                    .map(|m| (a.morphism_name(m).to_string(), json!(b.morphism_name(f.morphisms[m.0]))))
                    .collect();
                (true, json!({ "isomorphic": true, "objects": objects, "morphisms": morphisms }))
            }
        },
        (Document::Complex(x), Document::Complex(y)) => match x.isomorphism_to(y) {
            None => (false, json!({ "isomorphic": false })),
            Some(f) => {
                let simplices: serde_json::Map<String, Value> =
                    x.simplex_ids().map(|s| (x.name(s).to_string(), json!(y.name(f.simplices[s.0])))).collect();
                (true, json!({ "isomorphic": true, "simplices": simplices }))
            }
        },
        (Document::Map(_), _) | (_, Document::Map(_)) => return Err(wrong_kind("category or complex", "map")),
        (Document::Category(_), _) => return Err(wrong_kind("category", "complex")),
        (Document::Complex(_), _) => return Err(wrong_kind("complex", "category")),
    };
    Ok(Output::json(value, if found { "isomorphic" } else { "not isomorphic" }))
}

fn simple_collapse(x: &DeltaComplex, vertex: &str, onto: Option<&str>) -> Result<Output, CliError> {
    let find = |name: &str| {
        x.by_name(name)
            .filter(|&v| x.dim(v) == 0)
            .ok_or_else(|| CliError::domain("UnknownVertex", format!("no vertex `{name}`")))
    };
    let v = find(vertex)?;
    let witness = match onto {
        Some(name) => x.dominated_by(v, find(name)?),
        None => x.find_domination(v),
    }
    .ok_or_else(|| CliError::domain("NotDominated", format!("`{vertex}` is not dominated")))?;
    let steps = strong_to_simple(x, &witness).map_err(|e| CliError::domain(e.tag(), e.to_string()))?;
    let mut current = x.clone();
    let mut rows = Vec::with_capacity(steps.len());
    for step in &steps {
        current = replay_simple(&current, std::slice::from_ref(step))
            .map_err(|e| CliError::domain(e.tag(), e.to_string()))?;
        rows.push(
            json!({ "face": step.face, "coface": step.coface, "euler_characteristic": euler_characteristic(&current) }),
        );
    }
    let summary = format!("{} removing `{vertex}`", plural(steps.len(), "simple collapse"));
    Ok(Output::json(
        json!({
            "vertex": vertex,
            "dominated_by": x.name(witness.dominating),
            "steps": rows,
            "result": document_value(&Document::Complex(current)),
        }),
        summary,
    ))
}

fn check(tag: TheoremTag, instances: impl Iterator<Item = (Option<u64>, Instance)>) -> Result<Output, CliError> {
    let mut reports = Vec::new();
    let mut counterexamples = 0;
    for (seed, instance) in instances {
        let mut budget = Deadline::from_env();
        let report = check_theorem(tag, &instance, &mut budget)?;
        let mut row = json!({
            "theorem": tag.as_str(),
            "digest": report.digest.to_string(),
            "verdict": if report.holds() { "holds" } else { "counterexample" },
        });
        if let Some(seed) = seed {
            row["seed"] = json!(seed);
        }
        if let Verdict::Counterexample(detail) = &report.verdict {
            counterexamples += 1;
            row["detail"] = json!(detail);
            // The instance itself, so the failure can be replayed with `check DOC`.
            let doc = match report.instance {
                Instance::Category(a) => Document::Category(a),
                Instance::Complex(x) => Document::Complex(x),
            };
            row["instance"] = document_value(&doc);
        }
        reports.push(row);
    }
    let summary = format!("{tag}: {} checked, {} found", reports.len(), plural(counterexamples, "counterexample"));
    let mut out = Output::json(Value::Array(reports), summary);
    out.failed = counterexamples > 0;
    Ok(out)
}
