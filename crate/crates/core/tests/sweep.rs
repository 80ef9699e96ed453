// Copyright 2026 The Bellchain Developers
// SPDX-License-Identifier: Apache-2.0

use std::sync::Mutex;

use bellchain_core::evolution::{build_generator, diagonalize, initial_amplitudes};
use bellchain_core::experiments::{self, disorder_study, perturbation_study};
use bellchain_core::measures::{self, reduce_to_receiver_pair};
use bellchain_core::sweep::{self, objective_at, time_trace};
use bellchain_core::{ChainSpec, CouplingSet, Executor, InitialState, Objective, OptimalPoint, Serial, SweepConfig};

/// Evaluates in reverse order, returns in index order.
struct Backwards;

impl Executor for Backwards {
    fn map<T, F>(&self, len: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        let slots: Mutex<Vec<Option<T>>> = Mutex::new((0..len).map(|_| None).collect());
        for i in (0..len).rev() {
            let v = f(i);
            slots.lock().unwrap()[i] = Some(v);
        }
        slots.into_inner().unwrap().into_iter().map(Option::unwrap).collect()
    }

    fn workers(&self) -> usize {
        3
    }
}

fn small_cfg() -> SweepConfig {
    SweepConfig {
        jm_coarse_step: 0.1,
        jm_refine_step: 0.01,
        tau_step: 0.05,
        tau_refine_step: None,
        ..SweepConfig::new(Objective::ReceiverEof, 0.0, 5.0, 30.0)
    }
}

#[test]
fn trace_starts_empty_and_matches_direct_evolution() {
    let spec = ChainSpec::branched(20, CouplingSet::symmetric(2.0)).unwrap();
    let trace = time_trace(&spec, InitialState::PsiPlus, 20.0, 0.01).unwrap();
    assert_eq!(trace.len(), 2001);
    assert_eq!(trace[0].tau, 0.0);
    assert!(trace[0].concurrence < 1e-12 && trace[0].eof < 1e-12 && trace[0].fidelity < 1e-12);
    let prop = diagonalize(&build_generator(&spec)).unwrap();
    let c0 = initial_amplitudes(InitialState::PsiPlus, &spec).unwrap();
    for r in trace.iter().step_by(97) {
        let pair = reduce_to_receiver_pair(&prop.evolve(&c0, r.tau).unwrap(), &spec).unwrap();
        assert!((r.concurrence - measures::concurrence_x(&pair)).abs() < 1e-11);
        assert!((r.fidelity - measures::bell_fidelity(&pair)).abs() < 1e-11);
    }
}

#[test]
fn psi_minus_is_not_transmitted() {
    let spec = ChainSpec::branched(30, CouplingSet::symmetric(2.863)).unwrap();
    let trace = time_trace(&spec, InitialState::PsiMinus, 80.0, 0.01).unwrap();
    assert!(trace.iter().all(|r| r.eof < 1e-10));
}

#[test]
fn optimum_agrees_with_the_trace_at_the_chosen_coupling() {
    let template = ChainSpec::branched(16, CouplingSet::symmetric(1.0)).unwrap();
    let cfg = small_cfg();
    let out = sweep::optimize(&template, InitialState::PsiPlus, &cfg, &Serial).unwrap();
    let opt = out.optimum;
    let spec = template.with_j_m(opt.jm_star).unwrap();
    let trace = time_trace(&spec, InitialState::PsiPlus, cfg.tau_max, cfg.tau_step).unwrap();
    let best = trace.iter().map(|r| r.eof).fold(0.0, f64::max);
    assert!((best - opt.objective_value).abs() < 1e-12, "{best} vs {}", opt.objective_value);
    assert!(opt.jm_star >= cfg.jm_lo && opt.jm_star <= cfg.jm_hi);
    assert!(opt.tau_star >= 0.0 && opt.tau_star <= cfg.tau_max);

    // With the fine time pass the value is the direct evaluation at τ*.
    let fine = SweepConfig { tau_refine_step: Some(0.001), ..cfg };
    let f = sweep::optimize(&template, InitialState::PsiPlus, &fine, &Serial).unwrap().optimum;
    let direct = objective_at(&template.with_j_m(f.jm_star).unwrap(), InitialState::PsiPlus, Objective::ReceiverEof, f.tau_star).unwrap();
    assert!((direct - f.objective_value).abs() < 1e-12);
    assert!(f.objective_value >= opt.objective_value - 1e-12);
}

#[test]
fn outcome_does_not_depend_on_schedule() {
    let template = ChainSpec::standard(14, CouplingSet::standard(1.0)).unwrap();
    let cfg = small_cfg();
    let a = sweep::optimize(&template, InitialState::PsiPlus, &cfg, &Serial).unwrap();
    let b = sweep::optimize(&template, InitialState::PsiPlus, &cfg, &Backwards).unwrap();
    assert_eq!(a, b);
}

#[test]
fn enlarging_the_search_never_hurts() {
    let template = ChainSpec::branched(18, CouplingSet::symmetric(1.0)).unwrap();
    let base = small_cfg();
    let narrow = sweep::optimize(&template, InitialState::PsiPlus, &SweepConfig { jm_hi: 2.0, tau_max: 15.0, ..base }, &Serial)
        .unwrap()
        .optimum;
    let wider_jm = sweep::optimize(&template, InitialState::PsiPlus, &SweepConfig { tau_max: 15.0, ..base }, &Serial)
        .unwrap()
        .optimum;
    let wider_tau = sweep::optimize(&template, InitialState::PsiPlus, &SweepConfig { jm_hi: 2.0, ..base }, &Serial)
        .unwrap()
        .optimum;
    assert!(wider_jm.objective_value >= narrow.objective_value);
    assert!(wider_tau.objective_value >= narrow.objective_value);
}

#[test]
fn eof_and_fidelity_peak_together_on_symmetric_chains() {
    let template = ChainSpec::branched(20, CouplingSet::symmetric(1.0)).unwrap();
    let cfg = small_cfg();
    let e = sweep::optimize(&template, InitialState::PsiPlus, &cfg, &Serial).unwrap().optimum;
    let f = sweep::optimize(&template, InitialState::PsiPlus, &SweepConfig { objective: Objective::ReceiverPairFidelity, ..cfg }, &Serial)
        .unwrap()
        .optimum;
    assert_eq!((e.jm_star, e.tau_star), (f.jm_star, f.tau_star));
}

#[test]
fn symmetric_branched_single_excitation_is_capped() {
    let cfg = SweepConfig { objective: Objective::ReceiverSingleFidelity, ..small_cfg() };
    let r = experiments::single_excitation_study(12, &cfg, &Serial).unwrap();
    assert!(r.branched.optimum.objective_value <= 0.5 + 1e-10);
    assert!(r.standard.optimum.objective_value > r.branched.optimum.objective_value);
}

#[test]
fn configuration_presets_rank_uniform_ends_first() {
    let cfg = SweepConfig { jm_lo: -10.0, jm_hi: 10.0, tau_max: 40.0, ..small_cfg() };
    let table = experiments::configuration_comparison(20, &cfg, &Serial).unwrap();
    assert_eq!(table.len(), 6);
    assert_eq!(table[0].preset.label, "a");
    for w in table.windows(2) {
        assert!(w[0].outcome.optimum.objective_value >= w[1].outcome.optimum.objective_value);
    }
}

fn fixed_point() -> OptimalPoint {
    OptimalPoint { jm_star: 2.0, tau_star: 7.3, objective_value: 0.0, objective: Objective::ReceiverEof }
}

#[test]
fn studies_are_reproducible_across_executors() {
    let clean = ChainSpec::branched(24, CouplingSet::symmetric(1.0)).unwrap();
    let grid = [0.0, 0.01, 0.05];
    let a = disorder_study(&clean, &fixed_point(), 11, 64, &grid, &Serial).unwrap();
    let b = disorder_study(&clean, &fixed_point(), 11, 64, &grid, &Backwards).unwrap();
    assert_eq!(a, b);
    let c = disorder_study(&clean, &fixed_point(), 12, 64, &grid, &Serial).unwrap();
    assert_ne!(a.rows[1].samples, c.rows[1].samples);
    for row in &a.rows {
        assert_eq!(row.samples.len(), 64);
        assert!(row.min <= row.mean && row.mean <= row.max);
        assert!((0.0..=1.0).contains(&row.fraction_above_reference));
    }

    let pa = perturbation_study(&clean, &fixed_point(), &grid, 50, 3, &Serial).unwrap();
    let pb = perturbation_study(&clean, &fixed_point(), &grid, 50, 3, &Backwards).unwrap();
    assert_eq!(pa, pb);
    assert!(pa.rows[0].stats.samples.iter().all(|&r| r == 1.0));
    assert!(pa.rows.iter().all(|r| r.stats.samples.iter().all(|&x| x >= 0.0)));
}

#[test]
fn disorder_is_applied_to_every_edge_within_bounds() {
    let clean = ChainSpec::branched(10, CouplingSet { j_a: 1.0, j_a_tilde: 0.5, j_m: 3.0, j_b: 2.0, j_b_tilde: 1.5 }).unwrap();
    let d = bellchain_core::DisorderSpec::new(0.05, 5, 200).unwrap();
    let base = clean.edge_list();
    let mut moved = vec![false; base.len()];
    for i in 0..200 {
        let s = clean.sample_disorder(&d, i).unwrap();
        for (k, (e, e0)) in s.edge_list().iter().zip(&base).enumerate() {
            let ratio = e.strength / e0.strength;
            assert!((ratio - 1.0).abs() <= 0.05 + 1e-15);
            moved[k] |= ratio != 1.0;
        }
    }
    assert!(moved.iter().all(|&m| m));
}
