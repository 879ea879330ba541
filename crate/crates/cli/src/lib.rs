//! The `harmonica` command line: theorem verification suites, scene checking,
//! reduction traces and figure rendering.
//!
//! Exit codes are 0 for success, 1 when a verification or assertion fails and
//! 2 for usage and input errors. [`run`] writes only to the given streams, so
//! it can be driven in-process.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use harmonica::polygon::Strategy;
use harmonica::suite::{Backend, Polarity};
use harmonica_scene::{evaluate, parse, Evaluation, Scene};

pub mod reduce;
pub mod render;
pub mod verify;

pub const REPORT_SCHEMA: u64 = 1;

/// Exit statuses.
pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "harmonica", version, about = "Projective incidence theorems, checked exactly")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the randomized suite of one theorem, or of all of them.
    Verify(verify::VerifyArgs),
    /// Evaluate the assertions of a scene file.
    Check(CheckArgs),
    /// Reduce the gon of a scene to a triangle and print the trace.
    Reduce(reduce::ReduceArgs),
    /// Draw a scene as SVG or TikZ.
    Render(RenderArgs),
    /// Print one generated instance of a theorem.
    Gen(GenArgs),
}

#[derive(Args, Debug)]
struct CheckArgs {
    scene: PathBuf,
    /// Defaults to float when the scene has decimal literals, exact otherwise.
    #[arg(long)]
    backend: Option<Backend>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct RenderArgs {
    scene: PathBuf,
    #[arg(long, default_value = "svg")]
    format: render::Format,
    /// x0,y0,x1,y1; defaults to the padded bounding box of the points.
    #[arg(long, allow_hyphen_values = true)]
    viewport: Option<render::Viewport>,
    /// SVG width in pixels.
    #[arg(long, default_value_t = 400.0)]
    width: f64,
    #[arg(long)]
    backend: Option<Backend>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct GenArgs {
    theorem: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value = "positive", value_parser = parse_polarity)]
    polarity: Polarity,
    /// `json` or `scene`.
    #[arg(long, default_value = "json")]
    format: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// A command failed before producing a verdict; reported with exit 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl<T: std::fmt::Display> From<T> for UsageError {
    fn from(e: T) -> Self {
        UsageError(e.to_string())
    }
}

pub type CmdResult = Result<i32, UsageError>;

pub fn parse_polarity(s: &str) -> Result<Polarity, String> {
    match s {
        "positive" => Ok(Polarity::Positive),
        "negative" => Ok(Polarity::Negative),
        _ => Err(format!("unknown polarity `{s}` (expected positive or negative)")),
    }
}

/// Reduction order given on the command line.
///
/// `first`, `exhaustive`, `seed:K`, `sampled:SEED:COUNT` or `fixed:I,J,...`
/// with 1-based step indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderArg(pub Strategy);

impl FromStr for OrderArg {
    type Err = String;
    fn from_str(s: &str) -> Result<OrderArg, String> {
        let num = |t: &str| t.trim().parse::<u64>().map_err(|_| format!("bad number `{t}` in order `{s}`"));
        let (head, rest) = s.split_once(':').unwrap_or((s, ""));
        let strategy = match (head, rest) {
            ("first", "") => Strategy::First,
            ("exhaustive", "") => Strategy::Exhaustive,
            ("seed", k) if !k.is_empty() => Strategy::Seeded(num(k)?),
            ("sampled", r) => {
                let (seed, count) = r.split_once(':').ok_or_else(|| format!("order `{s}`: expected sampled:SEED:COUNT"))?;
                Strategy::Sampled { seed: num(seed)?, orders: num(count)? as usize }
            }
            ("fixed", r) if !r.is_empty() => {
                Strategy::Fixed(r.split(',').map(|t| num(t).map(|v| v as usize)).collect::<Result<_, _>>()?)
            }
            _ => {
                return Err(format!(
                    "unknown order `{s}` (expected first, exhaustive, seed:K, sampled:SEED:COUNT or fixed:I,J,...)"
                ))
            }
        };
        Ok(OrderArg(strategy))
    }
}

/// Run the command line `args` (without the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv = std::iter::once(OsString::from("harmonica")).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    let result = match cli.command {
        Command::Verify(a) => verify::cmd(a, out, err),
        Command::Check(a) => cmd_check(a, out, err),
        Command::Reduce(a) => reduce::cmd(a, out, err),
        Command::Render(a) => cmd_render(a, out),
        Command::Gen(a) => cmd_gen(a, out),
    };
    match result {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

pub(crate) fn read_file(path: &Path) -> Result<String, UsageError> {
    std::fs::read_to_string(path).map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))
}

pub(crate) fn load_scene(path: &Path) -> Result<Scene, UsageError> {
    let text = read_file(path)?;
    parse(&text).map_err(|e| UsageError(format!("{}:{e}", path.display())))
}

pub(crate) fn scene_backend(scene: &Scene, requested: Option<Backend>) -> Backend {
    requested.unwrap_or(if scene.has_decimals() { Backend::Float } else { Backend::Exact })
}

fn evaluate_scene(path: &Path, scene: &Scene, backend: Backend) -> Result<Evaluation, UsageError> {
    evaluate(scene, backend).map_err(|e| UsageError(format!("{}:{e}", path.display())))
}

/// Write `text` to `path`, or to `out` when no path is given.
pub(crate) fn emit(text: &str, path: Option<&Path>, out: &mut dyn Write) -> Result<(), UsageError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| UsageError(format!("cannot write {}: {e}", p.display()))),
        None => out.write_all(text.as_bytes()).map_err(UsageError::from),
    }
}

pub(crate) fn pretty(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn cmd_check(a: CheckArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let scene = load_scene(&a.scene)?;
    let eval = evaluate_scene(&a.scene, &scene, scene_backend(&scene, a.backend))?;
    let report = &eval.report;
    emit(&pretty(report), a.out.as_deref(), out)?;
    for f in report.failures() {
        let why = f.detail.as_deref().map(|d| format!(" ({d})")).unwrap_or_default();
        writeln!(err, "FAIL {}:{}:{}: {}{why}", a.scene.display(), f.line, f.col, f.text)?;
    }
    Ok(if report.passed { EXIT_OK } else { EXIT_FAIL })
}

fn cmd_render(a: RenderArgs, out: &mut dyn Write) -> CmdResult {
    if !(a.width.is_finite() && a.width > 0.0) {
        return Err(UsageError(format!("width must be positive, got {}", a.width)));
    }
    let scene = load_scene(&a.scene)?;
    let eval = evaluate_scene(&a.scene, &scene, scene_backend(&scene, a.backend))?;
    let view = a.viewport.unwrap_or_else(|| render::Viewport::fit(&eval.figure));
    let text = render::render(&eval.figure, &view, a.format, a.width);
    emit(&text, a.out.as_deref(), out)?;
    Ok(EXIT_OK)
}

fn cmd_gen(a: GenArgs, out: &mut dyn Write) -> CmdResult {
    let t = verify::lookup(&a.theorem)?;
    let spec = harmonica::generate::GenSpec::default().with_seed(a.seed);
    let mut g = harmonica::generate::Generator::new(spec);
    let inst = t.generate(&mut g, a.n, a.polarity)?;
    let text = match a.format.as_str() {
        "json" => pretty(&serde_json::json!({
            "schema": REPORT_SCHEMA,
            "theorem": t.id,
            "seed": a.seed,
            "polarity": a.polarity,
            "instance": inst,
        })),
        "scene" => harmonica_scene::format(&harmonica_scene::export::instance_scene(t.id, &inst)?),
        other => return Err(UsageError(format!("unknown format `{other}` (expected json or scene)"))),
    };
    emit(&text, a.out.as_deref(), out)?;
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_syntax() {
        assert_eq!("first".parse::<OrderArg>().unwrap().0, Strategy::First);
        assert_eq!("seed:7".parse::<OrderArg>().unwrap().0, Strategy::Seeded(7));
        assert_eq!(
            "sampled:3:100".parse::<OrderArg>().unwrap().0,
            Strategy::Sampled { seed: 3, orders: 100 }
        );
        assert_eq!("fixed:2,1".parse::<OrderArg>().unwrap().0, Strategy::Fixed(vec![2, 1]));
        for bad in ["", "seed", "seed:", "fixed:", "sampled:1", "fixed:1,x", "last"] {
            assert!(bad.parse::<OrderArg>().is_err(), "{bad}");
        }
    }
}
