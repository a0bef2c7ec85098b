use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use cubeworks::cubical::{
    boundary, iterated_pushout_product, kan_check, open_box, standard_cube, tensor, CubicalSet, Factor,
    MAP_SEARCH_LIMIT,
};
use cubeworks::enriched::{
    build_e, build_h, build_p, extend_inverse, homotopy_category, interval, interval_tilde, james, james_cubical,
    localize, mapping_space_with, point as enriched_point, EnrichedPresentation, TruncationOptions, MAX_LETTERS,
    WORD_LIMIT,
};
use cubeworks::homology::{
    circle, cubical_homology, homology, point as simplicial_point, simplicial_chains, standard_simplex,
    wedge_of_intervals, Pipeline, SimplicialSet,
};
use cubeworks::json::{self, Artifact, Workspace, WORKSPACE_ENV};
use cubeworks::realization::{broken_cylinder, check_quillen, standard_cylinder, QUILLEN_MAX_DIM};
use cubeworks::{verify, Error};

#[derive(Parser)]
#[command(name = "cubeworks", version, about = "Cubical sets, their homology, and cubically enriched categories")]
struct Cli {
    /// Worker threads for independent checks.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Artifact directory; inputs are looked up here after the builtins.
    #[arg(long, global = true, env = WORKSPACE_ENV)]
    workspace: Option<PathBuf>,
    /// Also store the result in the workspace under this name.
    #[arg(long, global = true)]
    save: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cubical sets.
    #[command(subcommand)]
    Cube(CubeCommand),
    /// Integral homology of a cubical set.
    Homology {
        x: String,
        #[arg(long, value_enum, default_value = "both")]
        pipeline: PipelineArg,
    },
    /// Cubically enriched presentations.
    #[command(subcommand)]
    Enriched(EnrichedCommand),
    /// The word-length truncation of the James construction.
    James {
        /// A simplicial builtin (circle, wedgeK, simplexN, spoint) or any cubical input.
        x: String,
        #[arg(long)]
        bound: usize,
        /// Base vertex, as a cell index; defaults to the first vertex.
        #[arg(long)]
        base: Option<usize>,
        /// Print cell counts and homology instead of the whole set.
        #[arg(long)]
        summary: bool,
    },
    /// Model-structure checks on chain realizations.
    #[command(subcommand)]
    Quillen(QuillenCommand),
    /// The acceptance suite.
    #[command(subcommand)]
    Verify(VerifyCommand),
}

#[derive(Subcommand)]
enum CubeCommand {
    /// Build a standard shape.
    #[command(subcommand)]
    Build(Shape),
    /// The tensor product of two cubical sets.
    Tensor { a: String, b: String },
    /// An iterated pushout-product of `d` (∂□¹ → □¹), `j0` and `j1`.
    PushoutProduct {
        #[arg(required = true)]
        factors: Vec<String>,
    },
    /// Box-filling check up to a dimension.
    KanCheck {
        x: String,
        #[arg(long)]
        max_dim: usize,
        /// Most box maps enumerated per search.
        #[arg(long, default_value_t = MAP_SEARCH_LIMIT)]
        limit: u64,
    },
}

#[derive(Subcommand)]
enum Shape {
    Cube { n: usize },
    Boundary { n: usize },
    Box { n: usize, k: usize, eps: u8 },
}

#[derive(Subcommand)]
enum EnrichedCommand {
    /// Build a named presentation.
    Build {
        #[arg(value_enum)]
        name: Builtin,
    },
    /// A word-length truncation of a mapping space.
    MapSpace {
        c: String,
        x: String,
        y: String,
        #[arg(long)]
        bound: usize,
        #[arg(long)]
        max_dim: Option<usize>,
        #[arg(long, default_value_t = MAX_LETTERS)]
        max_letters: usize,
        #[arg(long, default_value_t = WORD_LIMIT)]
        word_limit: u64,
        /// Print the cubical set itself rather than the summary.
        #[arg(long)]
        space: bool,
    },
    /// Adjoin a strict inverse to a generator.
    Localize { c: String, f: String },
    /// The homotopy category read off a truncation.
    HCat {
        c: String,
        #[arg(long)]
        bound: usize,
    },
    /// Search for homotopy inverses and a map out of E.
    ExtendInverse {
        c: String,
        f: String,
        #[arg(long)]
        bound: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Builtin {
    Point,
    Interval,
    Tilde,
    #[value(name = "P")]
    P,
    #[value(name = "H")]
    H,
    #[value(name = "E")]
    E,
}

#[derive(Subcommand)]
enum QuillenCommand {
    Check {
        #[arg(long, default_value_t = QUILLEN_MAX_DIM)]
        max_dim: usize,
        #[arg(long, value_enum, default_value = "standard")]
        cylinder: CylinderArg,
    },
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Run every criterion (or those given with --only).
    All {
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PipelineArg {
    Cubical,
    Triangulated,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum CylinderArg {
    Standard,
    Broken,
}

/// What a command produced: an artifact for stdout, and whether the check
/// it ran (if any) passed.
struct Outcome {
    artifact: Artifact,
    passed: bool,
}

impl Outcome {
    fn ok(artifact: Artifact) -> Self {
        Outcome { artifact, passed: true }
    }
}

fn parse_number<T: std::str::FromStr>(s: &str) -> Option<T> {
    (!s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())).then(|| s.parse().ok()).flatten()
}

/// `cubeN`, `boundaryN`, `boxN_K_E`, `point`.
fn builtin_cubical(name: &str) -> cubeworks::Result<Option<CubicalSet>> {
    let arc = |m: cubeworks::cubical::CubicalMap| m.source().as_ref().clone();
    if name == "point" {
        return standard_cube(0).map(Some);
    }
    if let Some(n) = name.strip_prefix("cube").and_then(parse_number) {
        return standard_cube(n).map(Some);
    }
    if let Some(n) = name.strip_prefix("boundary").and_then(parse_number) {
        return boundary(n).map(arc).map(Some);
    }
    if let Some(rest) = name.strip_prefix("box") {
        let parts: Vec<Option<usize>> = rest.split('_').map(parse_number).collect();
        if let [Some(n), Some(k), Some(eps)] = parts[..] {
            let eps = u8::try_from(eps).map_err(|_| Error::OutOfRange(format!("endpoint {eps}")))?;
            return open_box(n, k, eps).map(arc).map(Some);
        }
    }
    Ok(None)
}

fn builtin_simplicial(name: &str) -> cubeworks::Result<Option<SimplicialSet>> {
    if name == "circle" {
        return Ok(Some(circle()));
    }
    if name == "spoint" {
        return Ok(Some(simplicial_point()));
    }
    if let Some(k) = name.strip_prefix("wedge").and_then(parse_number) {
        return Ok(Some(wedge_of_intervals(k)));
    }
    if let Some(n) = name.strip_prefix("simplex").and_then(parse_number) {
        return standard_simplex(n).map(Some);
    }
    Ok(None)
}

fn builtin_presentation(b: Builtin) -> cubeworks::Result<EnrichedPresentation> {
    match b {
        Builtin::Point => Ok(enriched_point()),
        Builtin::Interval => interval(&standard_cube(0)?),
        Builtin::Tilde => interval_tilde(),
        Builtin::P => build_p(),
        Builtin::H => build_h(),
        Builtin::E => build_e(),
    }
}

struct Inputs {
    workspace: Option<PathBuf>,
}

impl Inputs {
    fn workspace(&self) -> cubeworks::Result<Workspace> {
        match &self.workspace {
            Some(p) => Workspace::open(p),
            None => Workspace::from_env(),
        }
    }

    /// A workspace artifact, or a JSON file when `name` names one.
    fn artifact(&self, name: &str) -> cubeworks::Result<Artifact> {
        let path = Path::new(name);
        if name.ends_with(".json") && path.is_file() {
            return json::parse(&std::fs::read_to_string(path)?);
        }
        let ws = self.workspace()?;
        if ws.contains(name) {
            return ws.load(name);
        }
        Err(Error::NotFound(format!("{name:?} is neither a builtin, a workspace artifact nor a JSON file")))
    }

    fn cubical(&self, name: &str) -> cubeworks::Result<CubicalSet> {
        if let Some(x) = builtin_cubical(name)? {
            return Ok(x);
        }
        match self.artifact(name)? {
            Artifact::Cubical(x) => Ok(x),
            other => Err(Error::Invalid(format!("{name} is a {}, not a cubical set", other.kind()))),
        }
    }

    fn presentation(&self, name: &str) -> cubeworks::Result<EnrichedPresentation> {
        if let Ok(b) = Builtin::from_str(name, false) {
            return builtin_presentation(b);
        }
        match self.artifact(name)? {
            Artifact::Presentation(c) => Ok(c),
            other => Err(Error::Invalid(format!("{name} is a {}, not a presentation", other.kind()))),
        }
    }
}

fn factor(token: &str) -> cubeworks::Result<Factor> {
    match token {
        "d" | "boundary" => Ok(Factor::Boundary),
        "j0" => Ok(Factor::Endpoint(0)),
        "j1" => Ok(Factor::Endpoint(1)),
        _ => Err(Error::Invalid(format!("unknown factor {token:?}; expected d, j0 or j1"))),
    }
}

fn homology_command(x: &CubicalSet, pipeline: PipelineArg) -> cubeworks::Result<Outcome> {
    let mut reports = serde_json::Map::new();
    let mut results = Vec::new();
    for (arg, p, key) in [
        (PipelineArg::Cubical, Pipeline::Cubical, "cubical"),
        (PipelineArg::Triangulated, Pipeline::Triangulated, "triangulated"),
    ] {
        if pipeline == arg || pipeline == PipelineArg::Both {
            let h = cubical_homology(x, p)?;
            reports.insert(key.into(), json!({ "summary": h.summary(), "report": h }));
            results.push(h);
        }
    }
    let agree = results.windows(2).all(|w| w[0] == w[1]);
    let body = json!({ "command": "homology", "counts": x.counts(), "pipelines": reports, "agree": agree });
    Ok(Outcome { artifact: Artifact::Report(body), passed: agree })
}

fn run(cli: Cli) -> cubeworks::Result<Outcome> {
    let inputs = Inputs { workspace: cli.workspace.clone() };
    match cli.command {
        Command::Cube(c) => match c {
            CubeCommand::Build(shape) => {
                let x = match shape {
                    Shape::Cube { n } => standard_cube(n)?,
                    Shape::Boundary { n } => boundary(n)?.source().as_ref().clone(),
                    Shape::Box { n, k, eps } => open_box(n, k, eps)?.source().as_ref().clone(),
                };
                Ok(Outcome::ok(Artifact::Cubical(x)))
            }
            CubeCommand::Tensor { a, b } => {
                let (a, b) = (inputs.cubical(&a)?, inputs.cubical(&b)?);
                Ok(Outcome::ok(Artifact::Cubical(tensor(&a, &b).object.as_ref().clone())))
            }
            CubeCommand::PushoutProduct { factors } => {
                let fs = factors.iter().map(|t| factor(t)).collect::<cubeworks::Result<Vec<_>>>()?;
                let m = iterated_pushout_product(&fs)?;
                let source = json::to_value(&Artifact::Cubical(m.source().as_ref().clone()));
                let labels: Vec<&str> = m.image_cells().iter().map(|&c| m.target().label(c)).collect();
                let body = json!({
                    "command": "pushout-product",
                    "factors": factors,
                    "source_counts": m.source().counts(),
                    "image": labels,
                    "source": source,
                });
                Ok(Outcome::ok(Artifact::Report(body)))
            }
            CubeCommand::KanCheck { x, max_dim, limit } => {
                let x = Arc::new(inputs.cubical(&x)?);
                let r = kan_check(&x, max_dim, limit)?;
                Ok(Outcome { passed: r.passed, artifact: json::report(&r) })
            }
        },
        Command::Homology { x, pipeline } => homology_command(&inputs.cubical(&x)?, pipeline),
        Command::Enriched(e) => match e {
            EnrichedCommand::Build { name } => Ok(Outcome::ok(Artifact::Presentation(builtin_presentation(name)?))),
            EnrichedCommand::MapSpace { c, x, y, bound, max_dim, max_letters, word_limit, space } => {
                let c = inputs.presentation(&c)?;
                let (x, y) = (c.object(&x)?, c.object(&y)?);
                let opts = TruncationOptions { max_dim, max_letters, word_limit };
                let m = mapping_space_with(&c, x, y, bound, &opts)?;
                if space {
                    return Ok(Outcome::ok(Artifact::Cubical(m.space.as_ref().clone())));
                }
                let words: Vec<String> = m.words.iter().map(|w| c.word_text(w)).collect();
                let body = json!({
                    "command": "map-space",
                    "source": c.objects()[x],
                    "target": c.objects()[y],
                    "truncation": m,
                    "words": words,
                });
                Ok(Outcome::ok(Artifact::Report(body)))
            }
            EnrichedCommand::Localize { c, f } => {
                Ok(Outcome::ok(Artifact::Presentation(localize(&inputs.presentation(&c)?, &f)?)))
            }
            EnrichedCommand::HCat { c, bound } => {
                let h = homotopy_category(&inputs.presentation(&c)?, bound)?;
                Ok(Outcome::ok(json::report(&h)))
            }
            EnrichedCommand::ExtendInverse { c, f, bound } => {
                let r = extend_inverse(&inputs.presentation(&c)?, &f, bound)?;
                Ok(Outcome::ok(json::report(&r)))
            }
        },
        Command::James { x, bound, base, summary } => {
            let j = match builtin_simplicial(&x)? {
                Some(s) => {
                    let base = base.or_else(|| s.cells_of_dim(0).first().copied()).unwrap_or(0);
                    james(&s, base, bound)?
                }
                None => {
                    let c = inputs.cubical(&x)?;
                    let base = base.or_else(|| c.cells_of_dim(0).first().copied()).unwrap_or(0);
                    james_cubical(&c, base, bound)?
                }
            };
            if !summary {
                return Ok(Outcome::ok(Artifact::Simplicial(j)));
            }
            let h = homology(&simplicial_chains(&j))?;
            let body = json!({ "command": "james", "bound": bound, "counts": j.counts(), "homology": h.summary(), "report": h });
            Ok(Outcome::ok(Artifact::Report(body)))
        }
        Command::Quillen(QuillenCommand::Check { max_dim, cylinder }) => {
            let cyl = match cylinder {
                CylinderArg::Standard => standard_cylinder(),
                CylinderArg::Broken => broken_cylinder(),
            };
            let r = check_quillen(&cyl, max_dim)?;
            Ok(Outcome { passed: r.passed, artifact: json::report(&r) })
        }
        Command::Verify(VerifyCommand::All { only }) => {
            let r = verify::run(&only);
            for c in &r.criteria {
                eprintln!("{}", c.line());
            }
            Ok(Outcome { passed: r.passed, artifact: json::report(&r) })
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    // a bound too small to read the answer off is a resource limit too
    if e.is_resource_guard() || matches!(e, Error::NotStable(_)) {
        3
    } else {
        2
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(jobs) = cli.jobs {
        if let Err(e) = cubeworks::set_jobs(jobs) {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let save = cli.save.clone();
    let workspace = cli.workspace.clone();
    let outcome = run(cli).and_then(|o| {
        if let Some(name) = save {
            let mut ws = match workspace {
                Some(p) => Workspace::open(p)?,
                None => Workspace::from_env()?,
            };
            let path = ws.store(&name, &o.artifact)?;
            eprintln!("saved {}", path.display());
        }
        Ok(o)
    });
    match outcome {
        Ok(o) => {
            print!("{}", json::emit(&o.artifact));
            if o.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
