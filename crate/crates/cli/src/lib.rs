//! `antlab` command line: run, detect, certify, classify, construct, search,
//! render and stats. Every command writes JSON (to `--out` or stdout).
//!
//! Exit codes: 0 found / success, 1 nothing found, 2 usage or input error,
//! 3 resource limit (`ANTLAB_MAX_CELLS` caps the number of non-zero cells).

pub mod render;

use std::fs;
use std::path::{Path, PathBuf};

use antlab_core::digest::{config_digest, hex};
use antlab_core::{AntConfiguration, Pattern, Pos, Rect, RuleWord, RunLimits, SimError, StepEvent};
use antlab_detect::{
    certify_highway, classify_behavior, detect_highway, visit_histogram, BehaviorClass, CertificateJson,
    ClassifyBudget, DetectBudget, Rejection,
};
use antlab_seed::{search, shipped, BehaviorCatalog, SeedSearchSpec, WidgetSetJson};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use render::{Crop, Format, RenderSpec};

pub const MAX_CELLS_ENV: &str = "ANTLAB_MAX_CELLS";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Found = 0,
    NotFound = 1,
    Usage = 2,
    Resource = 3,
}

#[derive(Debug)]
pub struct Failure {
    pub exit: Exit,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { exit: Exit::Usage, message: message.into() }
    }
}

impl From<SimError> for Failure {
    fn from(e: SimError) -> Self {
        let exit = match e {
            SimError::ResourceLimit { .. } => Exit::Resource,
            SimError::StateOutOfRange { .. } => Exit::Usage,
        };
        Self { exit, message: e.to_string() }
    }
}

type CmdResult = Result<Exit, Failure>;

#[derive(Parser, Debug)]
#[command(name = "antlab", version, about = "Generalised ants: simulation, highway certificates, behaviour search")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Simulate and print a summary of the final configuration.
    Run(RunArgs),
    /// Search for a certified highway.
    Detect(DetectArgs),
    /// Check a proposed highway (onset, period, drift).
    Certify(CertifyArgs),
    /// Highway, increasing rectangle, cone or unknown.
    Classify(ClassifyArgs),
    /// Build member `k` of a pattern family.
    Construct(ConstructArgs),
    /// Classify a stream of seeds into a catalog.
    Search(SearchArgs),
    /// Write a PGM or SVG image after some steps.
    Render(RenderArgs),
    /// Per-cell visit counts.
    Stats(StatsArgs),
}

#[derive(Args, Debug, Clone)]
pub struct Input {
    /// Rule word over {L, R}; defaults to the pattern's word.
    #[arg(long)]
    pub word: Option<String>,
    /// Pattern file, or `builtin:NAME` for a bundled pattern. Default: all-zero grid, ant at the origin facing up.
    #[arg(long)]
    pub pattern: Option<String>,
    /// Output file for the JSON report (default stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct ImageArgs {
    /// pgm or svg; default from the file extension.
    #[arg(long)]
    pub format: Option<String>,
    #[arg(long, default_value_t = 4)]
    pub cell_size: u32,
    /// Auto-crop margin in cells (at least 1).
    #[arg(long, default_value_t = 2)]
    pub margin: i64,
    /// Explicit crop `x0,y0,x1,y1` (inclusive).
    #[arg(long, allow_hyphen_values = true)]
    pub crop: Option<String>,
    #[arg(long)]
    pub no_ant: bool,
}

#[derive(Args, Debug)]
pub struct RunArgs {
    #[command(flatten)]
    pub input: Input,
    #[arg(long)]
    pub steps: u64,
    /// Write the trace (one digit per step) as JSON.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    /// Write the positions after each step as JSON.
    #[arg(long)]
    pub trajectory: Option<PathBuf>,
    /// Also render the final configuration.
    #[arg(long)]
    pub render: Option<PathBuf>,
    #[command(flatten)]
    pub image: ImageArgs,
}

#[derive(Args, Debug)]
pub struct DetectArgs {
    #[command(flatten)]
    pub input: Input,
    #[arg(long, default_value_t = 1_000_000)]
    pub max_steps: u64,
    #[arg(long, default_value_t = 10_000)]
    pub max_period: u64,
}

#[derive(Args, Debug)]
pub struct CertifyArgs {
    #[command(flatten)]
    pub input: Input,
    #[arg(long)]
    pub t0: u64,
    #[arg(long)]
    pub period: u64,
    /// `a,b`
    #[arg(long, allow_hyphen_values = true)]
    pub drift: String,
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub input: Input,
    #[arg(long, default_value_t = 1_000_000)]
    pub max_steps: u64,
    #[arg(long, default_value_t = 10_000)]
    pub max_period: u64,
    /// Steps recorded by the recurrence detector.
    #[arg(long, default_value_t = 200_000)]
    pub recurrence_steps: u64,
    #[arg(long, default_value_t = 8)]
    pub window_radius: i64,
    #[arg(long, default_value_t = 10.0)]
    pub cone_ratio: f64,
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    /// Bundled family: zeta or gamma.
    #[arg(long, conflicts_with = "widgets")]
    pub family: Option<String>,
    /// Widget-set JSON file (name, step, main, link, bouncer).
    #[arg(long)]
    pub widgets: Option<PathBuf>,
    #[arg(long)]
    pub k: usize,
    /// Pattern file to write (default stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    /// Search spec JSON: word, generator, budget, dedupe.
    #[arg(long)]
    pub spec: PathBuf,
    /// Catalog file to write.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Merge into the catalog at `--out` instead of replacing it.
    #[arg(long)]
    pub append: bool,
}

#[derive(Args, Debug)]
pub struct RenderArgs {
    #[command(flatten)]
    pub input: Input,
    #[arg(long, default_value_t = 0)]
    pub steps: u64,
    /// Image file.
    #[arg(long)]
    pub image: PathBuf,
    #[command(flatten)]
    pub opts: ImageArgs,
}

#[derive(Args, Debug)]
pub struct StatsArgs {
    #[command(flatten)]
    pub input: Input,
    #[arg(long)]
    pub steps: u64,
    /// Also list every visited cell with its count.
    #[arg(long)]
    pub cells: bool,
}

pub fn limits_from_env() -> Result<RunLimits, Failure> {
    match std::env::var(MAX_CELLS_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(RunLimits::max_cells)
            .map_err(|_| Failure::usage(format!("{MAX_CELLS_ENV}={v:?} is not a cell count"))),
        Err(_) => Ok(RunLimits::NONE),
    }
}

fn load(input: &Input) -> Result<(RuleWord, AntConfiguration), Failure> {
    let pattern = match &input.pattern {
        Some(spec) => Some(match spec.strip_prefix("builtin:") {
            Some(name) => shipped::pattern(name).ok_or_else(|| Failure::usage(format!("no bundled pattern {name:?}")))?,
            None => Pattern::parse(&read(Path::new(spec))?).map_err(|e| Failure::usage(format!("{spec}: {e}")))?,
        }),
        None => None,
    };
    let word = match (&input.word, &pattern) {
        (Some(w), _) => RuleWord::parse(w).map_err(|e| Failure::usage(format!("rule word {w:?}: {e}")))?,
        (None, Some(p)) => p.word.clone(),
        (None, None) => return Err(Failure::usage("either --word or --pattern is required")),
    };
    let conf = match pattern {
        Some(p) => {
            if p.word != word {
                return Err(Failure::usage(format!("pattern is for {}, not {word}", p.word)));
            }
            p.check_states(&word).map_err(|e| Failure::usage(e.to_string()))?;
            p.to_configuration()
        }
        None => AntConfiguration::zero(),
    };
    Ok((word, conf))
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    fs::write(path, bytes).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialise") + "\n"
}

fn emit<T: Serialize>(out: &Option<PathBuf>, value: &T) -> Result<(), Failure> {
    let text = json(value);
    match out {
        Some(p) => write(p, text.as_bytes()),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pair(s: &str) -> Result<Pos, Failure> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts[..] {
        [a, b] => match (a.parse(), b.parse()) {
            (Ok(a), Ok(b)) => Ok(Pos::new(a, b)),
            _ => Err(Failure::usage(format!("{s:?} is not a pair a,b"))),
        },
        _ => Err(Failure::usage(format!("{s:?} is not a pair a,b"))),
    }
}

fn render_spec(path: &Path, a: &ImageArgs) -> Result<RenderSpec, Failure> {
    let format = match a.format.as_deref() {
        Some("pgm") => Format::Pgm,
        Some("svg") => Format::Svg,
        Some(f) => return Err(Failure::usage(format!("unknown image format {f:?}"))),
        None => Format::from_path(path).ok_or_else(|| Failure::usage("image format: use .pgm/.svg or --format"))?,
    };
    let crop = match &a.crop {
        Some(c) => {
            let v: Vec<i64> = c.split(',').map(|s| s.trim().parse()).collect::<Result<_, _>>().map_err(|_| Failure::usage("--crop x0,y0,x1,y1"))?;
            match v[..] {
                [x0, y0, x1, y1] if x0 <= x1 && y0 <= y1 => Crop::Explicit(Rect { min: Pos::new(x0, y0), max: Pos::new(x1, y1) }),
                _ => return Err(Failure::usage("--crop x0,y0,x1,y1 with x0 <= x1, y0 <= y1")),
            }
        }
        None => Crop::Auto { margin: a.margin.max(1) },
    };
    Ok(RenderSpec { format, cell_size: a.cell_size, crop, ant_marker: !a.no_ant })
}

#[derive(Serialize)]
struct RunSummary {
    word: String,
    steps: u64,
    position: [i64; 2],
    heading: char,
    support: usize,
    digest: String,
}

fn summary(word: &RuleWord, steps: u64, c: &AntConfiguration) -> RunSummary {
    RunSummary {
        word: word.to_string(),
        steps,
        position: [c.position.x, c.position.y],
        heading: c.heading.letter(),
        support: c.grid.support_len(),
        digest: hex(config_digest(c)),
    }
}

fn cmd_run(a: &RunArgs, limits: RunLimits) -> CmdResult {
    let (word, mut conf) = load(&a.input)?;
    let spec = a.render.as_ref().map(|p| render_spec(p, &a.image)).transpose()?;
    let (want_trace, want_traj) = (a.trace.is_some(), a.trajectory.is_some());
    let mut trace = String::new();
    let mut traj: Vec<[i64; 2]> = Vec::new();
    conf.advance(&word, a.steps, limits, &mut |e: &StepEvent| {
        if want_trace {
            trace.push(char::from(b'0' + e.read));
        }
        if want_traj {
            traj.push([e.to.x, e.to.y]);
        }
    })?;
    if let Some(p) = &a.trace {
        write(p, json(&serde_json::json!({ "word": word.to_string(), "trace": trace })).as_bytes())?;
    }
    if let Some(p) = &a.trajectory {
        write(p, json(&serde_json::json!({ "word": word.to_string(), "trajectory": traj })).as_bytes())?;
    }
    if let (Some(p), Some(spec)) = (&a.render, spec) {
        write(p, &render::render(&conf, &word, &spec))?;
    }
    emit(&a.input.out, &summary(&word, a.steps, &conf))?;
    Ok(Exit::Found)
}

#[derive(Serialize)]
struct DetectReport {
    found: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<CertificateJson>,
}

fn cmd_detect(a: &DetectArgs, limits: RunLimits) -> CmdResult {
    let (word, conf) = load(&a.input)?;
    let budget = DetectBudget { max_steps: a.max_steps, max_period: a.max_period, limits };
    let found = detect_highway(&conf, &word, &budget)?;
    let report = DetectReport { found: found.is_some(), certificate: found.map(|d| d.certificate.to_json()) };
    emit(&a.input.out, &report)?;
    Ok(if report.found { Exit::Found } else { Exit::NotFound })
}

#[derive(Serialize)]
struct CertifyReport {
    valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<CertificateJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rejection: Option<Rejection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    message: Option<String>,
}

fn cmd_certify(a: &CertifyArgs, limits: RunLimits) -> CmdResult {
    let (word, conf) = load(&a.input)?;
    let drift = pair(&a.drift)?;
    let report = match certify_highway(&conf, &word, a.t0, a.period, drift, limits) {
        Ok(c) => CertifyReport { valid: true, certificate: Some(c.to_json()), rejection: None, message: None },
        Err(r @ Rejection::BudgetExceeded(_)) => {
            emit(&a.input.out, &CertifyReport { valid: false, certificate: None, message: Some(r.to_string()), rejection: Some(r) })?;
            return Ok(Exit::Resource);
        }
        Err(r) => CertifyReport { valid: false, certificate: None, message: Some(r.to_string()), rejection: Some(r) },
    };
    emit(&a.input.out, &report)?;
    Ok(if report.valid { Exit::Found } else { Exit::NotFound })
}

fn cmd_classify(a: &ClassifyArgs, limits: RunLimits) -> CmdResult {
    let (word, conf) = load(&a.input)?;
    let mut budget = ClassifyBudget::default().with_limits(limits);
    budget.highway.max_steps = a.max_steps;
    budget.highway.max_period = a.max_period;
    budget.recurrence.max_steps = a.recurrence_steps;
    if a.window_radius < 1 {
        return Err(Failure::usage("--window-radius must be at least 1"));
    }
    budget.recurrence.window_radius = a.window_radius;
    budget.cone_ratio = a.cone_ratio;
    let report = classify_behavior(&conf, &word, &budget)?;
    emit(&a.input.out, &report.to_json())?;
    Ok(match (report.class, report.resource_limited) {
        (_, true) => Exit::Resource,
        (BehaviorClass::Unknown, false) => Exit::NotFound,
        _ => Exit::Found,
    })
}

fn cmd_construct(a: &ConstructArgs) -> CmdResult {
    let ws = match (&a.family, &a.widgets) {
        (Some(f), None) => match f.as_str() {
            "zeta" => shipped::zeta(),
            "gamma" => shipped::gamma(),
            _ => return Err(Failure::usage(format!("unknown family {f:?} (zeta, gamma)"))),
        },
        (None, Some(path)) => {
            let j: WidgetSetJson =
                serde_json::from_str(&read(path)?).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
            j.into_widgets().map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?
        }
        _ => return Err(Failure::usage("give one of --family or --widgets")),
    };
    let p = ws.construct(a.k).map_err(|e| Failure::usage(e.to_string()))?;
    match &a.out {
        Some(path) => write(path, p.to_text().as_bytes())?,
        None => print!("{}", p.to_text()),
    }
    Ok(Exit::Found)
}

#[derive(Serialize)]
struct SearchSummary {
    word: String,
    seeds: usize,
    highway: usize,
    increasing_rectangle: usize,
    cone: usize,
    unknown: usize,
    highway_classes: usize,
    rotation_classes: usize,
}

fn cmd_search(a: &SearchArgs, limits: RunLimits) -> CmdResult {
    let mut spec: SeedSearchSpec =
        serde_json::from_str(&read(&a.spec)?).map_err(|e| Failure::usage(format!("{}: {e}", a.spec.display())))?;
    if limits.max_cells.is_some() {
        spec.budget = spec.budget.with_limits(limits);
    }
    let found = search(&spec).map_err(|e| Failure::usage(e.to_string()))?;
    let cat = match &a.out {
        Some(p) if a.append => found.append_to(p).map_err(|e| Failure::usage(e.to_string()))?,
        Some(p) => {
            found.save(p).map_err(|e| Failure::usage(e.to_string()))?;
            found
        }
        None => found,
    };
    print!("{}", json(&search_summary(&cat)));
    Ok(Exit::Found)
}

fn search_summary(cat: &BehaviorCatalog) -> SearchSummary {
    SearchSummary {
        word: cat.word.clone(),
        seeds: cat.entries.len(),
        highway: cat.count(BehaviorClass::Highway),
        increasing_rectangle: cat.count(BehaviorClass::IncreasingRectangle),
        cone: cat.count(BehaviorClass::Cone),
        unknown: cat.count(BehaviorClass::Unknown),
        highway_classes: cat.highway_classes.len(),
        rotation_classes: cat.rotation_classes(),
    }
}

fn cmd_render(a: &RenderArgs, limits: RunLimits) -> CmdResult {
    let (word, mut conf) = load(&a.input)?;
    let spec = render_spec(&a.image, &a.opts)?;
    conf.advance(&word, a.steps, limits, &mut ())?;
    write(&a.image, &render::render(&conf, &word, &spec))?;
    emit(&a.input.out, &summary(&word, a.steps, &conf))?;
    Ok(Exit::Found)
}

#[derive(Serialize)]
struct StatsReport {
    word: String,
    #[serde(flatten)]
    summary: antlab_detect::HistogramSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    cells: Option<Vec<[i64; 3]>>,
}

fn cmd_stats(a: &StatsArgs, limits: RunLimits) -> CmdResult {
    let (word, conf) = load(&a.input)?;
    let h = visit_histogram(&conf, &word, a.steps, limits)?;
    let cells = a.cells.then(|| h.sorted().into_iter().map(|(p, c)| [p.x, p.y, c as i64]).collect());
    emit(&a.input.out, &StatsReport { word: word.to_string(), summary: h.summary(), cells })?;
    Ok(Exit::Found)
}

/// Runs one parsed command; errors are reported on stderr.
pub fn execute(cli: &Cli) -> Exit {
    let result = limits_from_env().and_then(|limits| match &cli.command {
        Command::Run(a) => cmd_run(a, limits),
        Command::Detect(a) => cmd_detect(a, limits),
        Command::Certify(a) => cmd_certify(a, limits),
        Command::Classify(a) => cmd_classify(a, limits),
        Command::Construct(a) => cmd_construct(a),
        Command::Search(a) => cmd_search(a, limits),
        Command::Render(a) => cmd_render(a, limits),
        Command::Stats(a) => cmd_stats(a, limits),
    });
    match result {
        Ok(code) => code,
        Err(f) => {
            eprintln!("antlab: {}", f.message);
            f.exit
        }
    }
}
