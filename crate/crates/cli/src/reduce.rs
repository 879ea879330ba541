//! `reduce`: step-by-step reduction of a scene's gon, and trace replay.
//!
//! The trace (JSON lines) goes to `--out` or stdout and a one-line summary to
//! stderr. A degenerate step still emits the steps applied before it.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use harmonica::polygon::{read_header, reduce_with, replay, CevaGon, MenelaosGon, ReductionTrace, TraceError, Traceable};
use harmonica::suite::Backend;
use harmonica::{Approx, GeomError, Rational, Scalar};
use harmonica_scene::eval::{ceva_binding, environment, menelaos_binding, strategy, Env};
use harmonica_scene::{OrderSpec, Scene};
use serde_json::json;

use crate::{emit, load_scene, read_file, scene_backend, CmdResult, OrderArg, UsageError, EXIT_FAIL, EXIT_OK, REPORT_SCHEMA};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Ceva,
    Menelaos,
}

#[derive(Args, Debug)]
pub struct ReduceArgs {
    /// Scene file; not needed with `--replay`.
    pub scene: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Mode::Ceva)]
    pub mode: Mode,
    /// Overrides the order given in the scene.
    #[arg(long)]
    pub order: Option<OrderArg>,
    /// Use the assertion on this gon instead of the first one.
    #[arg(long)]
    pub gon: Option<String>,
    #[arg(long)]
    pub backend: Option<Backend>,
    /// Recompute a saved trace and compare it byte for byte.
    #[arg(long, conflicts_with = "scene")]
    pub replay: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

trait Gon: Traceable {
    type S: Scalar;
    fn bind(scene: &Scene, env: &Env<Self::S>, gon: Option<&str>) -> Option<harmonica::Result<(Self, Option<OrderSpec>)>>;
    fn lines(trace: &ReductionTrace<Self>) -> String;
}

impl<S: Scalar> Gon for CevaGon<S> {
    type S = S;
    fn bind(scene: &Scene, env: &Env<S>, gon: Option<&str>) -> Option<harmonica::Result<(Self, Option<OrderSpec>)>> {
        ceva_binding(scene, env, gon)
    }
    fn lines(trace: &ReductionTrace<Self>) -> String {
        trace.to_json_lines()
    }
}

impl<S: Scalar> Gon for MenelaosGon<S> {
    type S = S;
    fn bind(scene: &Scene, env: &Env<S>, gon: Option<&str>) -> Option<harmonica::Result<(Self, Option<OrderSpec>)>> {
        menelaos_binding(scene, env, gon)
    }
    fn lines(trace: &ReductionTrace<Self>) -> String {
        trace.to_json_lines()
    }
}

pub fn cmd(a: ReduceArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    if let Some(path) = &a.replay {
        return replay_file(path, out, err);
    }
    let path = a.scene.clone().ok_or_else(|| UsageError("reduce needs a scene file or --replay".into()))?;
    let scene = load_scene(&path)?;
    match (a.mode, scene_backend(&scene, a.backend)) {
        (Mode::Ceva, Backend::Exact) => reduce_scene::<CevaGon<Rational>>(&a, &path, &scene, out, err),
        (Mode::Ceva, Backend::Float) => reduce_scene::<CevaGon<Approx>>(&a, &path, &scene, out, err),
        (Mode::Menelaos, Backend::Exact) => reduce_scene::<MenelaosGon<Rational>>(&a, &path, &scene, out, err),
        (Mode::Menelaos, Backend::Float) => reduce_scene::<MenelaosGon<Approx>>(&a, &path, &scene, out, err),
    }
}

fn reduce_scene<G: Gon>(a: &ReduceArgs, path: &Path, scene: &Scene, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let env = environment::<G::S>(scene).map_err(|e| UsageError(format!("{}:{e}", path.display())))?;
    let mode = match a.mode {
        Mode::Ceva => "ceva",
        Mode::Menelaos => "menelaos",
    };
    let (gon, order) = G::bind(scene, &env, a.gon.as_deref())
        .ok_or_else(|| {
            let which = a.gon.as_deref().map(|g| format!(" on gon `{g}`")).unwrap_or_default();
            UsageError(format!("{}: no {mode} assertion{which} to reduce", path.display()))
        })?
        .map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
    let strat = a.order.as_ref().map_or_else(|| strategy(order.as_ref()), |o| o.0.clone());
    match reduce_with(&gon, &strat) {
        Ok(r) => {
            emit(&G::lines(&r.trace), a.out.as_deref(), out)?;
            let summary = json!({
                "schema": REPORT_SCHEMA,
                "mode": mode,
                "n": gon.size(),
                "indices": r.trace.indices,
                "holds": r.holds,
                "agreement": r.agreement,
                "orders_checked": r.orders_checked,
                "degenerate_orders": r.degenerate_orders,
            });
            writeln!(err, "{summary}")?;
            Ok(if r.agreement { EXIT_OK } else { EXIT_FAIL })
        }
        Err(GeomError::DegenerateStep { step, index, reason, prefix }) => {
            let mut gons = Vec::new();
            for &i in &prefix {
                let next = gons.last().unwrap_or(&gon).step(i)?;
                gons.push(next);
            }
            let partial = ReductionTrace { start: gon.clone(), indices: prefix.clone(), gons };
            emit(&G::lines(&partial), a.out.as_deref(), out)?;
            writeln!(err, "error: degenerate step {step} at index {index}: {reason}; applied prefix {prefix:?}")?;
            Ok(EXIT_FAIL)
        }
        Err(e) => Err(UsageError(e.to_string())),
    }
}

fn replay_file(path: &Path, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let text = read_file(path)?;
    let header = read_header(&text).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
    match (header.kind.as_str(), header.backend.as_str()) {
        ("ceva", "exact") => replay_as::<CevaGon<Rational>>(path, &text, out, err),
        ("ceva", "float") => replay_as::<CevaGon<Approx>>(path, &text, out, err),
        ("menelaos", "exact") => replay_as::<MenelaosGon<Rational>>(path, &text, out, err),
        ("menelaos", "float") => replay_as::<MenelaosGon<Approx>>(path, &text, out, err),
        (k, b) => Err(UsageError(format!("{}: unsupported trace kind `{k}` with backend `{b}`", path.display()))),
    }
}

fn replay_as<G: Gon>(path: &Path, text: &str, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    match replay::<G>(text) {
        Ok(trace) => {
            if G::lines(&trace) != text {
                writeln!(err, "FAIL {}: steps recompute but the file is not in canonical form", path.display())?;
                return Ok(EXIT_FAIL);
            }
            let summary = json!({
                "schema": REPORT_SCHEMA,
                "replay": "identical",
                "steps": trace.indices.len(),
                "holds": trace.last().triangle_holds(),
            });
            writeln!(out, "{summary}")?;
            Ok(EXIT_OK)
        }
        Err(e @ (TraceError::Mismatch { .. } | TraceError::Geom(_))) => {
            writeln!(err, "FAIL {}: {e}", path.display())?;
            Ok(EXIT_FAIL)
        }
        Err(e) => Err(UsageError(format!("{}: {e}", path.display()))),
    }
}
