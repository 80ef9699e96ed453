// Copyright 2026 The Bellchain Developers
// SPDX-License-Identifier: Apache-2.0

//! Command dispatch: config in, CSV files and a manifest out.

use std::path::{Path, PathBuf};
use std::time::Instant;

use bellchain_core::evolution::{build_generator, diagonalize, initial_amplitudes};
use bellchain_core::experiments::{self, DisorderSummary, PerturbationSummary};
use bellchain_core::{oracle, rng, sweep, ChainSpec, Executor, Objective, OptimalPoint};

use crate::config::{self, OracleSection, RunConfig};
use crate::error::{HarnessError, Result};
use crate::formats::{self, fmt_num, schema};
use crate::manifest::{self, RunManifest};
use crate::pool::{self, Pool};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Trace,
    Sweep,
    Compare,
    Disorder,
    Perturb,
    Single,
    OracleCheck,
}

impl Command {
    pub fn as_str(self) -> &'static str {
        match self {
            Command::Trace => "trace",
            Command::Sweep => "sweep",
            Command::Compare => "compare",
            Command::Disorder => "disorder",
            Command::Perturb => "perturb",
            Command::Single => "single",
            Command::OracleCheck => "oracle-check",
        }
    }
}

/// Options that override the config file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub workers: Option<usize>,
}

/// What a finished run produced.
#[derive(Debug, Clone)]
pub struct RunReport {
    pub files: Vec<PathBuf>,
    pub lines: Vec<String>,
    pub manifest: RunManifest,
}

struct Output<'a> {
    dir: &'a Path,
    files: Vec<PathBuf>,
    lines: Vec<String>,
}

impl Output<'_> {
    fn path(&mut self, name: &str) -> PathBuf {
        let p = self.dir.join(name);
        self.files.push(p.clone());
        p
    }

    fn say(&mut self, line: String) {
        self.lines.push(line);
    }
}

/// Runs `command` with the config at `config_path`, writing into `out_dir`.
pub fn run(command: Command, config_path: &Path, out_dir: &Path, overrides: &Overrides) -> Result<RunReport> {
    let (cfg, text) = RunConfig::load(config_path)?;
    run_config(command, &cfg, &text, out_dir, overrides)
}

pub fn run_config(command: Command, cfg: &RunConfig, text: &str, out_dir: &Path, overrides: &Overrides) -> Result<RunReport> {
    let started = Instant::now();
    let seed = overrides.seed.unwrap_or(cfg.seed);
    let workers = overrides.workers.or(cfg.workers).unwrap_or_else(pool::default_workers);
    if workers == 0 {
        return Err(HarnessError::Invalid("workers must be at least 1".into()));
    }
    let pool = Pool::new(workers)?;
    std::fs::create_dir_all(out_dir).map_err(|e| HarnessError::io(out_dir, e))?;
    let mut out = Output { dir: out_dir, files: Vec::new(), lines: Vec::new() };

    match command {
        Command::Trace => trace(cfg, &mut out)?,
        Command::Sweep => sweep_cmd(cfg, &pool, &mut out)?,
        Command::Compare => compare(cfg, &pool, &mut out)?,
        Command::Disorder => disorder(cfg, seed, &pool, &mut out)?,
        Command::Perturb => perturb(cfg, seed, &pool, &mut out)?,
        Command::Single => single(cfg, &pool, &mut out)?,
        Command::OracleCheck => oracle_check(cfg, &mut out)?,
    }

    let files = out.files.iter().map(|p| manifest::digest_file(p)).collect::<Result<Vec<_>>>()?;
    let manifest = RunManifest {
        tool: env!("CARGO_PKG_NAME").into(),
        version: env!("CARGO_PKG_VERSION").into(),
        command: command.as_str().into(),
        base_seed: seed,
        prng: rng::PRNG_NAME.into(),
        workers: pool.workers(),
        duration_seconds: started.elapsed().as_secs_f64(),
        config: cfg.clone(),
        config_text: text.to_owned(),
        files,
    };
    manifest.write(out_dir)?;
    Ok(RunReport { files: out.files, lines: out.lines, manifest })
}

fn trace(cfg: &RunConfig, out: &mut Output) -> Result<()> {
    let spec = cfg.chain()?.spec()?;
    let t = cfg.trace()?;
    let records = sweep::time_trace(&spec, cfg.state()?, t.tau_max.0, t.tau_step)?;
    formats::write_trace(&out.path("trace.csv"), &records)?;
    if let Some(best) = records.iter().max_by(|a, b| a.eof.total_cmp(&b.eof).then(b.tau.total_cmp(&a.tau))) {
        out.say(format!("peak EoF {} at tau {}", fmt_num(best.eof), fmt_num(best.tau)));
    }
    Ok(())
}

fn write_optimum(out: &mut Output, name: &str, p: &OptimalPoint) -> Result<()> {
    formats::write_table(
        &out.path(name),
        schema::OPTIMUM,
        [vec![fmt_num(p.jm_star), fmt_num(p.tau_star), fmt_num(p.objective_value), p.objective.to_string()]],
    )
}

fn sweep_cmd(cfg: &RunConfig, pool: &Pool, out: &mut Output) -> Result<()> {
    let template = cfg.chain()?.spec()?.clean();
    let sc = cfg.sweep()?.config()?;
    let o = sweep::optimize(&template, cfg.state()?, &sc, pool)?;
    formats::write_sweep(&out.path("sweep.csv"), &o.coarse)?;
    formats::write_sweep(&out.path("sweep_refined.csv"), &o.refined)?;
    write_optimum(out, "optimum.csv", &o.optimum)?;
    out.say(describe(&o.optimum));
    Ok(())
}

fn describe(p: &OptimalPoint) -> String {
    format!(
        "jm_star {} tau_star {} {} {}",
        fmt_num(p.jm_star),
        fmt_num(p.tau_star),
        p.objective,
        fmt_num(p.objective_value)
    )
}

fn compare(cfg: &RunConfig, pool: &Pool, out: &mut Output) -> Result<()> {
    let n = cfg.chain()?.n_chain;
    let sc = cfg.sweep()?.config()?;
    let table = experiments::configuration_comparison(n, &sc, pool)?;
    let rows = table.iter().map(|r| {
        let c = r.preset.couplings;
        let o = r.outcome.optimum;
        vec![
            r.preset.label.to_string(),
            r.preset.kind.as_str().to_string(),
            fmt_num(c.j_a),
            fmt_num(c.j_a_tilde),
            fmt_num(c.j_b),
            fmt_num(c.j_b_tilde),
            fmt_num(o.jm_star),
            fmt_num(o.tau_star),
            fmt_num(o.objective_value),
        ]
    });
    formats::write_table(&out.path("compare.csv"), schema::COMPARE, rows)?;
    for r in &table {
        out.say(format!("({}) {}: {}", r.preset.label, r.preset.description, describe(&r.outcome.optimum)));
    }
    Ok(())
}

/// `(jm*, τ*)` from the section, or from a sweep over `[sweep]`.
fn resolve_point(cfg: &RunConfig, template: &ChainSpec, jm: Option<f64>, tau: Option<f64>, pool: &Pool, out: &mut Output) -> Result<OptimalPoint> {
    match (jm, tau) {
        (Some(jm_star), Some(tau_star)) => {
            let value = sweep::objective_at(&template.with_j_m(jm_star)?, bellchain_core::InitialState::PsiPlus, Objective::ReceiverEof, tau_star)?;
            Ok(OptimalPoint { jm_star, tau_star, objective_value: value, objective: Objective::ReceiverEof })
        }
        (None, None) => {
            let sc = cfg.sweep()?.config()?;
            let sc = bellchain_core::SweepConfig { objective: Objective::ReceiverEof, ..sc };
            let o = sweep::optimize(template, bellchain_core::InitialState::PsiPlus, &sc, pool)?;
            write_optimum(out, "optimum.csv", &o.optimum)?;
            out.say(format!("clean optimum: {}", describe(&o.optimum)));
            Ok(o.optimum)
        }
        _ => Err(HarnessError::Invalid("give both jm_star and tau_star, or neither".into())),
    }
}

fn disorder(cfg: &RunConfig, seed: u64, pool: &Pool, out: &mut Output) -> Result<()> {
    let template = cfg.chain()?.spec()?.clean();
    let d = cfg.disorder()?;
    let point = resolve_point(cfg, &template, d.jm_star, d.tau_star, pool, out)?;
    let grid = d.p_grid.values()?;
    let s = experiments::disorder_study(&template, &point, seed, d.n_realizations, &grid, pool)?;
    write_disorder(out, &s)
}

pub fn write_disorder(out_dir_files: &mut impl FileSink, s: &DisorderSummary) -> Result<()> {
    let samples = s.rows.iter().flat_map(|r| {
        r.samples.iter().enumerate().map(move |(i, e)| vec![fmt_num(r.p), i.to_string(), fmt_num(*e)])
    });
    formats::write_table(&out_dir_files.file("disorder.csv"), schema::DISORDER, samples)?;
    let summary = s.rows.iter().map(|r| {
        vec![fmt_num(r.p), fmt_num(r.mean), fmt_num(r.min), fmt_num(r.max), fmt_num(r.fraction_above_reference)]
    });
    formats::write_table(&out_dir_files.file("disorder_summary.csv"), schema::DISORDER_SUMMARY, summary)?;
    formats::write_table(
        &out_dir_files.file("disorder_clean.csv"),
        schema::DISORDER_CLEAN,
        [vec![
            fmt_num(s.jm_star),
            fmt_num(s.tau_star),
            fmt_num(s.clean_value),
            s.base_seed.to_string(),
            s.n_realizations.to_string(),
        ]],
    )?;
    out_dir_files.note(format!("clean EoF {} at jm {} tau {}", fmt_num(s.clean_value), fmt_num(s.jm_star), fmt_num(s.tau_star)));
    for r in &s.rows {
        out_dir_files.note(format!(
            "p {}: mean {} min {} max {} beating clean {}",
            fmt_num(r.p),
            fmt_num(r.mean),
            fmt_num(r.min),
            fmt_num(r.max),
            fmt_num(r.fraction_above_reference)
        ));
    }
    Ok(())
}

/// Destination for result files and progress notes.
pub trait FileSink {
    fn file(&mut self, name: &str) -> PathBuf;
    fn note(&mut self, line: String);
}

impl FileSink for Output<'_> {
    fn file(&mut self, name: &str) -> PathBuf {
        self.path(name)
    }

    fn note(&mut self, line: String) {
        self.say(line)
    }
}

fn perturb(cfg: &RunConfig, seed: u64, pool: &Pool, out: &mut Output) -> Result<()> {
    let template = cfg.chain()?.spec()?.clean();
    let p = cfg.perturb()?;
    let point = resolve_point(cfg, &template, p.jm_star, p.tau_star, pool, out)?;
    let grid = p.p_grid.values()?;
    let s = experiments::perturbation_study(&template, &point, &grid, p.n_per_p, seed, pool)?;
    write_perturbation(out, &s)
}

pub fn write_perturbation(sink: &mut impl FileSink, s: &PerturbationSummary) -> Result<()> {
    let draws = s.rows.iter().flat_map(|r| {
        r.draws.iter().enumerate().map(move |(i, d)| {
            vec![
                fmt_num(r.stats.p),
                i.to_string(),
                fmt_num(d.delta_alpha),
                fmt_num(d.delta_gamma),
                fmt_num(d.eof),
                fmt_num(d.ratio),
            ]
        })
    });
    formats::write_table(&sink.file("perturb.csv"), schema::PERTURB, draws)?;
    let summary = s
        .rows
        .iter()
        .map(|r| vec![fmt_num(r.stats.p), fmt_num(r.stats.mean), fmt_num(r.stats.min), fmt_num(r.stats.max)]);
    formats::write_table(&sink.file("perturb_summary.csv"), schema::PERTURB_SUMMARY, summary)?;
    sink.note(format!("clean EoF {} at jm {} tau {}", fmt_num(s.clean_value), fmt_num(s.jm_star), fmt_num(s.tau_star)));
    for r in &s.rows {
        sink.note(format!("p {}: mean ratio {} min ratio {}", fmt_num(r.stats.p), fmt_num(r.stats.mean), fmt_num(r.stats.min)));
    }
    Ok(())
}

fn single(cfg: &RunConfig, pool: &Pool, out: &mut Output) -> Result<()> {
    let n = cfg.chain()?.n_chain;
    let sc = bellchain_core::SweepConfig { objective: Objective::ReceiverSingleFidelity, ..cfg.sweep()?.config()? };
    let r = experiments::single_excitation_study(n, &sc, pool)?;
    let rows = [("branched", &r.branched.optimum), ("standard", &r.standard.optimum)]
        .map(|(m, o)| vec![m.to_string(), fmt_num(o.jm_star), fmt_num(o.tau_star), fmt_num(o.objective_value)]);
    formats::write_table(&out.path("single.csv"), schema::SINGLE, rows)?;
    out.say(format!("branched: {}", describe(&r.branched.optimum)));
    out.say(format!("standard: {}", describe(&r.standard.optimum)));
    Ok(())
}

fn oracle_check(cfg: &RunConfig, out: &mut Output) -> Result<()> {
    let spec = cfg.chain()?.spec()?;
    let section = cfg.oracle.clone().unwrap_or_default();
    let OracleSection { tau_max, samples, states, tolerance } = section;
    if samples < 2 {
        return Err(HarnessError::Invalid("oracle.samples must be at least 2".into()));
    }
    let taus: Vec<f64> = (0..samples).map(|k| tau_max.0 * k as f64 / (samples - 1) as f64).collect();
    let prop = diagonalize(&build_generator(&spec))?;
    let mut rows = Vec::new();
    let mut worst = 0.0f64;
    let mut worst_leak = 0.0f64;
    for name in &states {
        let state = config::parse_state(name, 0.0, 0.0)?;
        let c0 = initial_amplitudes(state, &spec)?;
        let full = oracle::full_space_trace(&spec, state, &taus)?;
        for (tau, o) in taus.iter().zip(&full) {
            let c = prop.evolve(&c0, *tau)?;
            let dev = c
                .amplitudes()
                .iter()
                .zip(o.amplitudes.amplitudes())
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            worst = worst.max(dev);
            worst_leak = worst_leak.max(o.leakage);
            rows.push(vec![
                spec.kind().as_str().to_string(),
                spec.n_chain().to_string(),
                name.clone(),
                fmt_num(*tau),
                fmt_num(dev),
                fmt_num(o.leakage),
            ]);
        }
    }
    formats::write_table(&out.path("oracle.csv"), schema::ORACLE, rows)?;
    out.say(format!("max amplitude deviation {worst:e}, max leakage {worst_leak:e}"));
    if worst >= tolerance || worst_leak >= 1e-12 {
        return Err(HarnessError::Check(format!("oracle mismatch: deviation {worst:e}, leakage {worst_leak:e}")));
    }
    Ok(())
}
