//! Command-line front end: argument handling, input loading, and JSON
//! reports for every pipeline stage.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use hombound::coloring::chromatic_number_capped;
use hombound::format::{self, BettiReport, GraphFormat};
use hombound::theorem::{
    acted_hom, bound_certificate, classify_test_graph, construct_lambda, hom_bound_certificate, test_graph_check,
    verify_lambda, PipelineOptions,
};
use hombound::topology::{
    build_eng, homological_connectivity_with, homology::is_prime, homology_ranks, order_complex, SimplicialComplex,
    DEFAULT_DIM_CAP, DEFAULT_PRIMES,
};
use hombound::{build_compat_graph, build_hom_poset, check_loops, cyclic_group, named_graph, Caps, GPoset, Graph};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Overrides default caps, e.g. `elements=5000,nodes=1000000,chains=50000`.
pub const CAPS_ENV: &str = "HOMBOUND_CAPS";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] hombound::Error),
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("invalid configuration: {0}")]
    Config(String),
}

impl CliError {
    pub fn category(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.category(),
            CliError::Io { .. } | CliError::Config(_) => "input",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.category() {
            "input" => 2,
            "resource" => 3,
            "theorem-violation" => 4,
            _ => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "hombound", version, about = "Certified topological lower bounds for chromatic numbers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: GlobalArgs,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Maximum Hom-poset elements.
    #[arg(long, global = true)]
    pub max_elements: Option<u64>,
    /// Maximum backtracking nodes (enumeration and coloring search).
    #[arg(long, global = true)]
    pub max_nodes: Option<u64>,
    /// Maximum chains in an order complex.
    #[arg(long, global = true)]
    pub max_chains: Option<u64>,
    /// Primes for homology, comma separated.
    #[arg(long, global = true, value_delimiter = ',')]
    pub primes: Option<Vec<u64>>,
    /// Chains longer than this dimension are not enumerated.
    #[arg(long, global = true)]
    pub dim_cap: Option<usize>,
    /// Graph file format; by default chosen from the extension.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Auto)]
    pub format: FormatArg,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Print a human-readable summary to stderr (repeat for more).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Auto,
    DimacsCol,
    Json,
}

/// Where the G-poset comes from: a Hom poset `Hom(T, H)` or `--poset`.
#[derive(Clone, Debug, Default, Args)]
pub struct SourceArgs {
    /// Source graph T: file path or built-in (K2..., C4..., petersen, kneser:n:k).
    #[arg(long = "T")]
    pub t: Option<String>,
    /// Target graph H: file path or built-in.
    #[arg(long = "H")]
    pub h: Option<String>,
    /// G-poset JSON file, or `eng:r:n` for Z_r x {1..n+1}.
    #[arg(long)]
    pub poset: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate Hom_p(T, H) and attach the test-graph action.
    BuildHom {
        #[command(flatten)]
        source: SourceArgs,
    },
    /// Compatibility graph C_P of a G-poset.
    Compat {
        #[command(flatten)]
        source: SourceArgs,
    },
    /// Reduced homology and homological connectivity.
    Homology {
        /// Simplicial complex JSON file (facet list).
        #[arg(long)]
        complex: Option<PathBuf>,
        #[command(flatten)]
        source: SourceArgs,
    },
    /// Full bound certificate conn_H + 1 + |G| <= chi(C_P) <= chi(H).
    Bound {
        #[command(flatten)]
        source: SourceArgs,
    },
    /// Build the equivariant map from a coloring of C_P and audit it.
    VerifyLambda {
        /// Coloring JSON `{chi, colors}` for C_P; default: an optimal one.
        #[arg(long)]
        coloring: Option<PathBuf>,
        #[command(flatten)]
        source: SourceArgs,
    },
    /// Exact chromatic number with a witness coloring.
    Chi {
        /// Graph file or built-in name.
        #[arg(long)]
        input: String,
    },
    /// Check chi(H) >= k + 1 + chi(T) for a test graph T.
    TestGraph {
        #[command(flatten)]
        source: SourceArgs,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::BuildHom { .. } => "build-hom",
            Command::Compat { .. } => "compat",
            Command::Homology { .. } => "homology",
            Command::Bound { .. } => "bound",
            Command::VerifyLambda { .. } => "verify-lambda",
            Command::Chi { .. } => "chi",
            Command::TestGraph { .. } => "test-graph",
        }
    }
}

/// Everything a run needs, validated.
#[derive(Debug)]
pub struct RunConfig {
    pub command: Command,
    pub options: PipelineOptions,
    pub format: FormatArg,
    pub out: Option<PathBuf>,
    pub verbosity: u8,
}

impl RunConfig {
    /// Caps come from defaults, then `env_caps` (the value of
    /// [`CAPS_ENV`]), then flags.
    pub fn from_cli(cli: Cli, env_caps: Option<&str>) -> CliResult<Self> {
        let mut caps = Caps::default();
        if let Some(spec) = env_caps {
            apply_caps_spec(&mut caps, spec)?;
        }
        let g = cli.global;
        caps.max_elements = g.max_elements.unwrap_or(caps.max_elements);
        caps.max_nodes = g.max_nodes.unwrap_or(caps.max_nodes);
        caps.max_chains = g.max_chains.unwrap_or(caps.max_chains);
        if caps.max_elements == 0 || caps.max_nodes == 0 || caps.max_chains == 0 {
            return Err(CliError::Config("caps must be positive".into()));
        }
        let primes = g.primes.unwrap_or_else(|| DEFAULT_PRIMES.to_vec());
        if primes.is_empty() {
            return Err(CliError::Config("at least one prime is required".into()));
        }
        if let Some(&p) = primes.iter().find(|&&p| !is_prime(p)) {
            return Err(CliError::Config(format!("{p} is not prime")));
        }
        let dim_cap = g.dim_cap.unwrap_or(DEFAULT_DIM_CAP);
        if dim_cap == 0 {
            return Err(CliError::Config("dim-cap must be at least 1".into()));
        }
        Ok(RunConfig {
            command: cli.command,
            options: PipelineOptions { caps, dim_cap, primes },
            format: g.format,
            out: g.out,
            verbosity: g.verbose,
        })
    }
}

fn apply_caps_spec(caps: &mut Caps, spec: &str) -> CliResult<()> {
    for part in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("{CAPS_ENV}: expected key=value, got '{part}'")))?;
        let value: u64 = value
            .trim()
            .parse()
            .map_err(|_| CliError::Config(format!("{CAPS_ENV}: '{value}' is not a number")))?;
        match key.trim() {
            "elements" => caps.max_elements = value,
            "nodes" => caps.max_nodes = value,
            "chains" => caps.max_chains = value,
            other => return Err(CliError::Config(format!("{CAPS_ENV}: unknown cap '{other}'"))),
        }
    }
    Ok(())
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: &'static str,
    pub version: &'static str,
    /// Milliseconds per stage, in execution order.
    pub timings_ms: Vec<(String, u64)>,
    pub result: Value,
    pub warnings: Vec<String>,
    /// Human-readable summary for `-v`; not part of the JSON.
    #[serde(skip)]
    pub summary: String,
}

impl Report {
    /// The report without timings; identical across repeated runs.
    pub fn payload(&self) -> Value {
        json!({
            "command": self.command,
            "version": self.version,
            "result": self.result,
            "warnings": self.warnings,
        })
    }
}

struct Stages {
    last: Instant,
    timings: Vec<(String, u64)>,
}

impl Stages {
    fn new() -> Self {
        Stages { last: Instant::now(), timings: Vec::new() }
    }

    fn mark(&mut self, name: &str) {
        let now = Instant::now();
        self.timings.push((name.to_string(), (now - self.last).as_millis() as u64));
        self.last = now;
    }
}

struct Ctx<'a> {
    config: &'a RunConfig,
    stages: Stages,
    warnings: Vec<String>,
}

impl Ctx<'_> {
    fn caps(&self) -> &Caps {
        &self.config.options.caps
    }

    /// A named built-in unless a file of that name exists.
    fn graph(&mut self, spec: &str) -> CliResult<Graph> {
        let path = Path::new(spec);
        if !path.exists() {
            if let Ok(g) = named_graph(spec) {
                return Ok(g);
            }
        }
        let text = read(path)?;
        let fmt = match self.config.format {
            FormatArg::Auto => GraphFormat::from_path(spec),
            FormatArg::DimacsCol => GraphFormat::DimacsCol,
            FormatArg::Json => GraphFormat::Json,
        };
        let parsed = format::parse_graph(&text, fmt)?;
        self.warnings.extend(parsed.warnings.into_iter().map(|w| format!("{spec}: {w}")));
        Ok(parsed.graph)
    }

    fn poset(&mut self, spec: &str) -> CliResult<GPoset> {
        if let Some(rest) = spec.strip_prefix("eng:") {
            let bad = || CliError::Config(format!("expected eng:r:n, got '{spec}'"));
            let (r, n) = rest.split_once(':').ok_or_else(bad)?;
            let r: usize = r.parse().map_err(|_| bad())?;
            let n: usize = n.parse().map_err(|_| bad())?;
            return Ok(build_eng(&cyclic_group(r)?, n)?);
        }
        Ok(format::parse_gposet_json(&read(Path::new(spec))?)?)
    }

    fn pair(&mut self, source: &SourceArgs) -> CliResult<(String, String, Graph, Graph)> {
        match (&source.t, &source.h) {
            (Some(t), Some(h)) => {
                let (tg, hg) = (self.graph(t)?, self.graph(h)?);
                Ok((t.clone(), h.clone(), tg, hg))
            }
            _ => Err(CliError::Config("both --T and --H are required".into())),
        }
    }

    fn warn_connectivity(&mut self, conn: &hombound::Connectivity) {
        if conn.truncated {
            self.warnings.push(format!(
                "order complex truncated at dimension {}; connectivity capped at {}",
                self.config.options.dim_cap, conn.conn
            ));
        }
        if conn.torsion_warning {
            self.warnings.push(format!("Betti numbers differ across primes {:?} (torsion)", conn.primes));
        }
    }
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

/// Runs one command and assembles its report.
pub fn run(config: &RunConfig) -> CliResult<Report> {
    let mut ctx = Ctx { config, stages: Stages::new(), warnings: Vec::new() };
    let (result, summary) = match &config.command {
        Command::BuildHom { source } => build_hom(&mut ctx, source)?,
        Command::Compat { source } => compat(&mut ctx, source)?,
        Command::Homology { complex, source } => homology(&mut ctx, complex.as_deref(), source)?,
        Command::Bound { source } => bound(&mut ctx, source)?,
        Command::VerifyLambda { coloring, source } => lambda(&mut ctx, coloring.as_deref(), source)?,
        Command::Chi { input } => chi(&mut ctx, input)?,
        Command::TestGraph { source } => test_graph(&mut ctx, source)?,
    };
    Ok(Report {
        command: config.command.name(),
        version: VERSION,
        timings_ms: ctx.stages.timings,
        result,
        warnings: ctx.warnings,
        summary,
    })
}

type Output = (Value, String);

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

fn build_hom(ctx: &mut Ctx, source: &SourceArgs) -> CliResult<Output> {
    let (t, h, tg, hg) = ctx.pair(source)?;
    ctx.stages.mark("parse");
    let hom = build_hom_poset(&tg, &hg, ctx.caps())?;
    ctx.stages.mark("enumerate");
    let mut result = json!({
        "T": t,
        "H": h,
        "elements": hom.len(),
        "height": hom.poset().height(),
        "poset": format::hom_poset_to_json_value(&hom),
    });
    let summary;
    if classify_test_graph(&tg).is_ok() {
        let acted = acted_hom(&tg, &hg, ctx.caps())?;
        let orbits = acted.gposet().orbits().len();
        result["action"] = to_value(&acted.action());
        result["group_order"] = json!(acted.gposet().group().order());
        result["free"] = json!(acted.is_free());
        result["orbits"] = json!(orbits);
        summary = format!("Hom({t}, {h}): {} elements, {orbits} orbits, free = {}", hom.len(), acted.is_free());
    } else {
        result["action"] = Value::Null;
        ctx.warnings.push(format!("{t} is not a supported test graph; no action attached"));
        summary = format!("Hom({t}, {h}): {} elements", hom.len());
    }
    ctx.stages.mark("action");
    Ok((result, summary))
}

fn source_gposet(ctx: &mut Ctx, source: &SourceArgs) -> CliResult<(GPoset, String)> {
    if let Some(spec) = &source.poset {
        let p = ctx.poset(spec)?;
        return Ok((p, spec.clone()));
    }
    let (t, h, tg, hg) = ctx.pair(source)?;
    let acted = acted_hom(&tg, &hg, ctx.caps())?;
    Ok((acted.gposet().clone(), format!("Hom({t}, {h})")))
}

fn compat(ctx: &mut Ctx, source: &SourceArgs) -> CliResult<Output> {
    let (p, name) = source_gposet(ctx, source)?;
    ctx.stages.mark("load");
    let c = build_compat_graph(&p)?;
    let loops = check_loops(&c);
    ctx.stages.mark("compat");
    if !loops.is_loop_free() {
        ctx.warnings.push(format!("compatibility graph has {} loops (action not free)", loops.loops.len()));
    }
    let summary = format!("C_P of {name}: {} vertices, {} edges, {} loops", c.vertex_count(), c.edge_count(), loops.loops.len());
    let result = json!({
        "source": name,
        "elements": p.len(),
        "group_order": p.group().order(),
        "free": p.is_free_action(),
        "edges": c.edge_count(),
        "loops": loops.loops,
        "graph": format::graph_to_json_value(&c),
    });
    Ok((result, summary))
}

fn homology(ctx: &mut Ctx, complex: Option<&Path>, source: &SourceArgs) -> CliResult<Output> {
    let opts = ctx.config.options.clone();
    let (k, name): (SimplicialComplex, String) = match complex {
        Some(path) => {
            let k = format::parse_complex_json(&read(path)?, Some(opts.dim_cap), opts.caps.max_chains)?;
            (k, path.display().to_string())
        }
        None => {
            let (p, name) = source_gposet(ctx, source)?;
            (order_complex(p.poset(), opts.dim_cap, &opts.caps)?, name)
        }
    };
    ctx.stages.mark("complex");
    let betti = opts.primes.iter().map(|&p| homology_ranks(&k, p)).collect::<hombound::Result<Vec<_>>>()?;
    let conn = homological_connectivity_with(&k, &opts.primes)?;
    ctx.stages.mark("homology");
    ctx.warn_connectivity(&conn);
    let reports: Vec<BettiReport> = betti.iter().map(BettiReport::from).collect();
    let summary = format!(
        "{name}: f-vector {:?}, reduced Betti {:?}, conn_H = {}{}",
        k.f_vector(),
        reports.iter().map(|b| (b.p, b.betti.clone())).collect::<Vec<_>>(),
        conn.conn,
        if conn.capped { " (capped)" } else { "" }
    );
    let result = json!({
        "source": name,
        "vertex_count": k.vertex_count(),
        "dim_cap": k.dim_cap(),
        "truncated": k.is_truncated(),
        "dimension": k.dimension(),
        "f_vector": k.f_vector(),
        "betti": reports,
        "connectivity": conn,
    });
    Ok((result, summary))
}

fn bound(ctx: &mut Ctx, source: &SourceArgs) -> CliResult<Output> {
    let opts = ctx.config.options.clone();
    let cert = if let Some(spec) = &source.poset {
        let p = ctx.poset(spec)?;
        let h = match &source.h {
            Some(h) => Some(ctx.graph(h)?),
            None => None,
        };
        ctx.stages.mark("load");
        bound_certificate(&p, h.as_ref(), &opts)?
    } else {
        let (t, h, tg, hg) = ctx.pair(source)?;
        let acted = acted_hom(&tg, &hg, &opts.caps)?;
        ctx.stages.mark("load");
        hom_bound_certificate(&acted, (&t, &h), &opts)?
    };
    ctx.stages.mark("certify");
    ctx.warn_connectivity(&cert.connectivity);
    if cert.vacuous {
        ctx.warnings.push("poset is empty; the inequality chain is vacuous".into());
    }
    Ok((to_value(&cert), cert.to_string()))
}

fn lambda(ctx: &mut Ctx, coloring: Option<&Path>, source: &SourceArgs) -> CliResult<Output> {
    let (p, name) = source_gposet(ctx, source)?;
    let c = match coloring {
        Some(path) => format::parse_coloring_json(&read(path)?)?,
        None => {
            let compat = build_compat_graph(&p)?;
            chromatic_number_capped(&compat, ctx.caps().max_nodes)?.1
        }
    };
    ctx.stages.mark("load");
    let map = construct_lambda(&p, &c)?;
    let report = verify_lambda(&map);
    ctx.stages.mark("verify");
    if !report.is_ok() {
        return Err(hombound::Error::TheoremViolation(format!(
            "induced map has {} violations",
            report.violation_count()
        ))
        .into());
    }
    let summary = format!(
        "{name}: {} colors, map into G x {{1..{}}}, {} actions and {} comparable pairs checked, 0 violations",
        c.color_count(),
        map.levels(),
        report.checked_actions,
        report.checked_comparable_pairs
    );
    let result = json!({
        "source": name,
        "colors": c.color_count(),
        "levels": map.levels(),
        "lambda": map.assignment(),
        "report": report,
        "ok": true,
    });
    Ok((result, summary))
}

fn chi(ctx: &mut Ctx, input: &str) -> CliResult<Output> {
    let g = ctx.graph(input)?;
    ctx.stages.mark("parse");
    let (chi, coloring) = chromatic_number_capped(&g, ctx.caps().max_nodes)?;
    ctx.stages.mark("color");
    let result = json!({
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
        "chi": chi,
        "colors": coloring.assignment(),
    });
    Ok((result, format!("{input}: chi = {chi}")))
}

fn test_graph(ctx: &mut Ctx, source: &SourceArgs) -> CliResult<Output> {
    let (t, h, tg, hg) = ctx.pair(source)?;
    ctx.stages.mark("parse");
    let report = test_graph_check(&tg, &hg, (&t, &h), &ctx.config.options)?;
    ctx.stages.mark("certify");
    ctx.warn_connectivity(&report.certificate.connectivity);
    let status = if report.vacuous { "vacuous" } else { "holds" };
    let summary = format!(
        "chi({h}) = {} >= k + 1 + chi({t}) = {} + 1 + {} [{status}, slack {}]",
        report.chi_h, report.k, report.chi_t, report.slack
    );
    Ok((to_value(&report), summary))
}

/// Serializes a report: full JSON with timings.
pub fn render(report: &Report) -> String {
    let mut text = serde_json::to_string_pretty(&json!({
        "command": report.command,
        "version": report.version,
        "timings_ms": report.timings_ms.iter().map(|(k, v)| json!({ "stage": k, "ms": v })).collect::<Vec<_>>(),
        "result": report.result,
        "warnings": report.warnings,
    }))
    .expect("report serializes");
    text.push('\n');
    text
}

/// JSON body for a failed run.
pub fn render_error(command: &str, err: &CliError) -> String {
    let body = json!({
        "command": command,
        "version": VERSION,
        "error": { "category": err.category(), "message": err.to_string() },
    });
    serde_json::to_string_pretty(&body).expect("error serializes") + "\n"
}
