// Copyright 2026 The Bellchain Developers
// SPDX-License-Identifier: Apache-2.0

//! Acceptance suite. Prints one PASS or FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use bellchain::commands::{self, FileSink};
use bellchain::pool::{self, Pool};
use bellchain_core::evolution::{build_generator, diagonalize, initial_amplitudes};
use bellchain_core::experiments::{self, DisorderSummary, PerturbationSummary};
use bellchain_core::measures::{self, ReducedPair};
use bellchain_core::{
    oracle, rng, sweep, ChainSpec, Complex64, CouplingSet, InitialState, Objective, OptimalPoint, SweepConfig,
};

struct Suite {
    failed: usize,
}

impl Suite {
    fn check(&mut self, id: &str, name: &str, started: Instant, result: Result<String, String>) {
        let secs = started.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS criterion {id:>2}: {name}: {detail} ({secs:.1}s)"),
            Err(detail) => {
                self.failed += 1;
                println!("FAIL criterion {id:>2}: {name}: {detail} ({secs:.1}s)")
            }
        }
    }
}

/// Collects failed sub-checks and formats measured values.
#[derive(Default)]
struct Checks {
    notes: Vec<String>,
    failures: Vec<String>,
}

impl Checks {
    fn require(&mut self, ok: bool, what: String) {
        if ok {
            self.notes.push(what);
        } else {
            self.failures.push(what);
        }
    }

    fn close(&mut self, label: &str, value: f64, target: f64, tol: f64) {
        self.require((value - target).abs() <= tol, format!("{label} {value:.5} (want {target} ± {tol})"));
    }

    fn at_least(&mut self, label: &str, value: f64, bound: f64) {
        self.require(value >= bound, format!("{label} {value:.5} (want ≥ {bound})"));
    }

    fn at_most(&mut self, label: &str, value: f64, bound: f64) {
        self.require(value <= bound, format!("{label} {value:.3e} (want ≤ {bound:e})"));
    }

    fn finish(self) -> Result<String, String> {
        if self.failures.is_empty() {
            Ok(self.notes.join(", "))
        } else {
            Err(format!("{} | passed: {}", self.failures.join(", "), self.notes.join(", ")))
        }
    }
}

fn branched(n: usize) -> ChainSpec {
    ChainSpec::branched(n, CouplingSet::symmetric(1.0)).unwrap()
}

fn standard(n: usize) -> ChainSpec {
    ChainSpec::standard(n, CouplingSet::standard(1.0)).unwrap()
}

fn eof_sweep(template: &ChainSpec, lo: f64, hi: f64, tau_max: f64, exec: &Pool) -> OptimalPoint {
    let cfg = SweepConfig::new(Objective::ReceiverEof, lo, hi, tau_max);
    sweep::optimize(template, InitialState::PsiPlus, &cfg, exec).unwrap().optimum
}

fn describe(p: &OptimalPoint) -> String {
    format!("J_m {:.3} τ {:.3} value {:.5}", p.jm_star, p.tau_star, p.objective_value)
}

const SEED: u64 = 2024;

/// Operating point of the restricted N=100 search.
const N100_POINT: (f64, f64) = (2.863, 9.542);

fn n100_point() -> OptimalPoint {
    let spec = branched(100).with_j_m(N100_POINT.0).unwrap();
    let value = sweep::objective_at(&spec, InitialState::PsiPlus, Objective::ReceiverEof, N100_POINT.1).unwrap();
    OptimalPoint { jm_star: N100_POINT.0, tau_star: N100_POINT.1, objective_value: value, objective: Objective::ReceiverEof }
}

fn disorder_grid() -> Vec<f64> {
    (1..=50).map(|k| k as f64 / 1000.0).collect()
}

fn perturb_grid() -> Vec<f64> {
    (0..=50).map(|k| k as f64 * 0.002).collect()
}

fn run_disorder(exec: &Pool) -> DisorderSummary {
    experiments::disorder_study(&branched(100), &n100_point(), SEED, 10_000, &disorder_grid(), exec).unwrap()
}

fn run_perturbation(exec: &Pool) -> PerturbationSummary {
    experiments::perturbation_study(&branched(100), &n100_point(), &perturb_grid(), 1000, SEED, exec).unwrap()
}

struct Dir {
    path: PathBuf,
}

impl FileSink for Dir {
    fn file(&mut self, name: &str) -> PathBuf {
        self.path.join(name)
    }

    fn note(&mut self, _line: String) {}
}

fn csv_bytes(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut v: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read(&p).unwrap()))
        .collect();
    v.sort();
    v
}

fn criterion_1(exec: &Pool) -> Result<String, String> {
    let o = eof_sweep(&branched(50), -50.0, 50.0, 25.0 * PI, exec);
    let mut c = Checks::default();
    c.notes.push(describe(&o));
    c.at_least("EoF", o.objective_value, 0.99);
    c.close("EoF", o.objective_value, 0.997, 0.01);
    c.finish()
}

fn criterion_2(exec: &Pool) -> Result<String, String> {
    let o = eof_sweep(&branched(100), 0.0, 5.0, 25.0 * PI, exec);
    let mut c = Checks::default();
    c.close("J_m", o.jm_star, 2.863, 0.01);
    c.close("τ", o.tau_star, 9.542, 0.05);
    c.close("EoF", o.objective_value, 0.82, 0.02);
    c.finish()
}

fn criterion_3(exec: &Pool) -> Result<String, String> {
    let o = eof_sweep(&branched(100), 0.0, 50.0, 25.0 * PI, exec);
    let mut c = Checks::default();
    c.close("J_m", o.jm_star, 49.98, 0.01);
    c.close("τ", o.tau_star, 20.535, 0.1);
    c.at_least("EoF", o.objective_value, 0.97);
    c.finish()
}

fn criterion_4(exec: &Pool) -> Result<String, String> {
    let o100 = eof_sweep(&standard(100), 0.0, 50.0, 25.0 * PI, exec);
    let o1000 = eof_sweep(&standard(1000), 0.0, 5.0, 80.0 * PI, exec);
    let mut c = Checks::default();
    c.close("N=100 EoF", o100.objective_value, 0.40, 0.05);
    c.close("N=1000 EoF", o1000.objective_value, 0.12, 0.03);
    c.notes.push(format!("N=100 at J_m {:.3}, N=1000 at J_m {:.3}", o100.jm_star, o1000.jm_star));
    c.finish()
}

fn criterion_5(exec: &Pool) -> Result<String, String> {
    let o = eof_sweep(&branched(1000), 0.0, 5.0, 80.0 * PI, exec);
    let mut c = Checks::default();
    c.close("J_m", o.jm_star, 4.253, 0.01);
    c.close("τ", o.tau_star, 60.04, 0.1);
    c.close("EoF", o.objective_value, 0.70, 0.03);
    c.finish()
}

fn criterion_6(s: &DisorderSummary) -> Result<String, String> {
    let mut c = Checks::default();
    c.notes.push(format!("clean EoF {:.5}", s.clean_value));
    let low = s.rows.iter().filter(|r| r.p <= 0.01 + 1e-12);
    let worst = low.min_by(|a, b| a.fraction_above_reference.total_cmp(&b.fraction_above_reference)).unwrap();
    c.at_least(&format!("min fraction beating clean for p ≤ 1% (at p={})", worst.p), worst.fraction_above_reference, 0.20);
    let at = |p: f64| s.rows.iter().find(|r| (r.p - p).abs() < 1e-12).unwrap();
    let mean5 = at(0.05).mean;
    c.require(mean5 > 0.7, format!("mean EoF at p=5% {mean5:.5} (want > 0.7)"));
    let mid = s.rows.iter().filter(|r| r.p >= 0.01 - 1e-12);
    let (lo, hi) = mid.fold((1.0f64, 0.0f64), |(lo, hi), r| (lo.min(r.fraction_above_mean), hi.max(r.fraction_above_mean)));
    c.require((0.35..=0.65).contains(&lo) && (0.35..=0.65).contains(&hi), format!("fraction above mean for p ≥ 1% in [{lo:.3}, {hi:.3}] (want within [0.35, 0.65])"));
    let mean05 = at(0.005).mean;
    c.require(mean5 <= mean05, format!("mean(5%) {mean5:.5} ≤ mean(0.5%) {mean05:.5}"));
    c.finish()
}

fn criterion_7(s: &PerturbationSummary) -> Result<String, String> {
    let row = s.rows.iter().find(|r| (r.stats.p - 0.10).abs() < 1e-12).unwrap();
    let mut c = Checks::default();
    c.require(row.draws.len() == 1000, format!("{} draws at p=10%", row.draws.len()));
    c.at_least("mean ratio", row.stats.mean, 0.93);
    c.at_least("min ratio", row.stats.min, 0.82);
    c.finish()
}

fn criterion_8() -> Result<String, String> {
    let mut worst = 0.0f64;
    let mut leak = 0.0f64;
    let mut cases = 0;
    let taus: Vec<f64> = (0..50).map(|k| 25.0 * k as f64 / 49.0).collect();
    for n in [4, 5] {
        for spec in [branched(n), standard(n)] {
            let prop = diagonalize(&build_generator(&spec)).unwrap();
            for state in [InitialState::PsiPlus, InitialState::SingleExcitation] {
                let c0 = initial_amplitudes(state, &spec).unwrap();
                let full = oracle::full_space_trace(&spec, state, &taus).unwrap();
                for (tau, o) in taus.iter().zip(&full) {
                    let c = prop.evolve(&c0, *tau).unwrap();
                    for (a, b) in c.amplitudes().iter().zip(o.amplitudes.amplitudes()) {
                        worst = worst.max((a - b).norm());
                    }
                    leak = leak.max(o.leakage);
                }
                cases += 1;
            }
        }
    }
    let mut c = Checks::default();
    c.notes.push(format!("{cases} cases × 50 times"));
    c.at_most("max componentwise deviation", worst, 1e-8);
    c.at_most("leakage out of the subspace", leak, 1e-12);
    c.finish()
}

fn criterion_9() -> Result<String, String> {
    let mut c = Checks::default();
    let spec = branched(100).with_j_m(N100_POINT.0).unwrap();
    let prop = diagonalize(&build_generator(&spec)).unwrap();
    let plus = initial_amplitudes(InitialState::PsiPlus, &spec).unwrap();
    let minus = initial_amplitudes(InitialState::PsiMinus, &spec).unwrap();
    let minus_pop = minus.populations();
    let (mut drift, mut mirror, mut stationary, mut identity) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for k in 0..=2500 {
        let tau = 0.1 * k as f64;
        let c = prop.evolve(&plus, tau).unwrap();
        drift = drift.max((c.norm_sqr() - 1.0).abs());
        let [n, b] = spec.receiver_pair();
        mirror = mirror.max((c.amplitudes()[n] - c.amplitudes()[b]).norm());
        let pair = measures::reduce_to_receiver_pair(&c, &spec).unwrap();
        let two_cb = 2.0 * pair.c_b.norm_sqr();
        identity = identity
            .max((measures::concurrence_x(&pair) - two_cb).abs())
            .max((measures::bell_fidelity(&pair) - two_cb).abs());
        let m = prop.evolve(&minus, tau).unwrap();
        for (p, q) in m.populations().iter().zip(&minus_pop) {
            stationary = stationary.max((p - q).abs());
        }
    }
    let disordered = spec.with_multipliers((0..spec.edge_count()).map(|i| 1.0 + 0.04 * ((i * 37 % 11) as f64 / 5.0 - 1.0)).collect()).unwrap();
    let dprop = diagonalize(&build_generator(&disordered)).unwrap();
    let d0 = initial_amplitudes(InitialState::PsiPlus, &disordered).unwrap();
    for k in 0..=250 {
        drift = drift.max((dprop.evolve(&d0, k as f64).unwrap().norm_sqr() - 1.0).abs());
    }
    c.at_most("unitarity drift over τ ≤ 250", drift, 1e-10);
    c.at_most("|c_N − c_B|", mirror, 1e-10);
    c.at_most("|Ψ−⟩ population change", stationary, 1e-10);
    c.at_most("|C − 2|c_B|²|, |F − 2|c_B|²|", identity, 1e-10);

    let mut s = rng::stream(&[0x5eed, 9]);
    let mut wootters = 0.0f64;
    for _ in 0..1000 {
        let r = rng::unit(&mut s).sqrt();
        let theta = PI / 2.0 * rng::unit(&mut s);
        let c_n = Complex64::from_polar(r * theta.cos(), 2.0 * PI * rng::unit(&mut s));
        let c_b = Complex64::from_polar(r * theta.sin(), 2.0 * PI * rng::unit(&mut s));
        let pair = ReducedPair::new(c_n, c_b).unwrap();
        let general = measures::wootters_general(&pair.density_matrix()).unwrap();
        wootters = wootters.max((measures::concurrence_x(&pair) - general).abs());
    }
    c.at_most("closed form vs general concurrence", wootters, 1e-10);

    let mut monotone = true;
    let mut prev = measures::eof_from_concurrence(0.0).unwrap();
    for k in 1..=10_000 {
        let e = measures::eof_from_concurrence(k as f64 / 10_000.0).unwrap();
        monotone &= e > prev;
        prev = e;
    }
    c.require(monotone && (prev - 1.0).abs() < 1e-12, "EoF strictly increasing in C on [0, 1]".into());
    c.finish()
}

fn criterion_10(exec: &Pool) -> Result<String, String> {
    let mut c = Checks::default();
    let mut worst = 0.0f64;
    for (n, jm) in [(100, 2.863), (100, 49.98), (50, 1.0), (20, 7.5)] {
        let spec = branched(n).with_j_m(jm).unwrap();
        for r in sweep::time_trace(&spec, InitialState::SingleExcitation, 25.0 * PI, 0.01).unwrap() {
            worst = worst.max(r.fidelity);
        }
    }
    c.at_most("branched single-site fidelity over traces", worst, 0.5 + 1e-10);
    let cfg = SweepConfig::new(Objective::ReceiverSingleFidelity, 0.0, 50.0, 25.0 * PI);
    let r = experiments::single_excitation_study(100, &cfg, exec).unwrap();
    c.at_most("branched optimized fidelity", r.branched.optimum.objective_value, 0.5 + 1e-10);
    c.at_least("standard N=100 optimized fidelity", r.standard.optimum.objective_value, 0.9);
    c.finish()
}

fn criterion_11(disorder: &DisorderSummary, perturbation: &PerturbationSummary, serial: &Pool) -> Result<String, String> {
    let root = tempfile::tempdir().unwrap();
    let write = |tag: &str, d: &DisorderSummary, p: &PerturbationSummary| {
        let path = root.path().join(tag);
        std::fs::create_dir_all(&path).unwrap();
        let mut sink = Dir { path: path.clone() };
        commands::write_disorder(&mut sink, d).unwrap();
        commands::write_perturbation(&mut sink, p).unwrap();
        csv_bytes(&path)
    };
    let first = write("pool3", disorder, perturbation);
    let second = write("pool1", &run_disorder(serial), &run_perturbation(serial));
    let mut c = Checks::default();
    c.require(first.len() == 5, format!("{} files compared", first.len()));
    c.require(first == second, "byte-identical CSVs with 3 and 1 workers".into());
    let repeat = run_perturbation(&Pool::new(3).unwrap());
    c.require(repeat == *perturbation, "repeated perturbation run identical".into());
    c.finish()
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.iter().any(|a| a == "--list") {
        println!("acceptance: test");
        return ExitCode::SUCCESS;
    }
    // cargo test forwards name filters; run only when unfiltered or asked for
    if args.iter().any(|a| !a.starts_with('-') && !"acceptance".contains(a.as_str())) {
        return ExitCode::SUCCESS;
    }

    let exec = Pool::new(pool::default_workers()).unwrap();
    let three = Pool::new(3).unwrap();
    let serial = Pool::new(1).unwrap();
    let mut suite = Suite { failed: 0 };
    let total = Instant::now();

    let t = Instant::now();
    suite.check("1", "N=50 branched, J_m ∈ [−50, 50]", t, criterion_1(&exec));
    let t = Instant::now();
    suite.check("2", "N=100 restricted sweep", t, criterion_2(&exec));
    let t = Instant::now();
    suite.check("3", "N=100 wide sweep", t, criterion_3(&exec));
    let t = Instant::now();
    suite.check("4", "standard-model collapse", t, criterion_4(&exec));
    let t = Instant::now();
    suite.check("5", "N=1000 restricted sweep", t, criterion_5(&exec));
    let t = Instant::now();
    let disorder = run_disorder(&three);
    suite.check("6", "disorder study, N=100", t, criterion_6(&disorder));
    let t = Instant::now();
    let perturbation = run_perturbation(&three);
    suite.check("7", "perturbed inputs, N=100", t, criterion_7(&perturbation));
    let t = Instant::now();
    suite.check("8", "full-space oracle equivalence", t, criterion_8());
    let t = Instant::now();
    suite.check("9", "invariant suite", t, criterion_9());
    let t = Instant::now();
    suite.check("10", "single-excitation bound", t, criterion_10(&exec));
    let t = Instant::now();
    suite.check("11", "determinism of studies", t, criterion_11(&disorder, &perturbation, &serial));

    println!("acceptance: {} failed of 11 ({:.0}s)", suite.failed, total.elapsed().as_secs_f64());
    if suite.failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}

