//! Genetic-algorithm fitting of noise parameters: minimize the Hellinger
//! distance between the unified model's exact output and a target
//! distribution.
//!
//! The parameter census follows the per-qubit / per-coupled-pair counting of
//! the noise-parameter tables: one single-qubit rate for every qubit the
//! circuit actually operates on, one two-qubit rate for every coupled pair
//! among those qubits, one measurement rate per measured qubit and one
//! preparation rate per prepared qubit. With decoherence included, T1 and
//! T2 per operated qubit are appended and the physical constraint
//! `T2 ≤ 2·T1` is enforced after every variation step.

use std::time::Instant;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::calibration::CalibrationData;
use crate::circuit::{Architecture, Circuit};
use crate::error::{Error, Result};
use crate::metrics;
use crate::noise::{NoiseModel, Variant};
use crate::qstate::Distribution;

/// Which qubits and pairs of a circuit carry optimizable noise parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    /// Qubits operated on by body gates, ascending.
    pub single_qubit: Vec<usize>,
    /// Coupled pairs (unordered, ascending) with both endpoints operated on.
    pub pairs: Vec<(usize, usize)>,
    /// Measured qubits, ascending.
    pub measured: Vec<usize>,
    /// Prepared qubits, ascending.
    pub prepared: Vec<usize>,
}

impl Census {
    /// (r_s, r_t, m, s)
    pub fn counts(&self) -> (usize, usize, usize, usize) {
        (
            self.single_qubit.len(),
            self.pairs.len(),
            self.measured.len(),
            self.prepared.len(),
        )
    }

    pub fn rate_parameters(&self) -> usize {
        self.single_qubit.len() + self.pairs.len() + self.measured.len() + self.prepared.len()
    }

    pub fn parameters(&self, mode: OptimizeMode) -> usize {
        match mode {
            OptimizeMode::RatesOnly => self.rate_parameters(),
            OptimizeMode::WithDecoherence => self.rate_parameters() + 2 * self.single_qubit.len(),
        }
    }

    /// Human-readable label per genome slot.
    pub fn labels(&self, mode: OptimizeMode) -> Vec<String> {
        let mut out = Vec::with_capacity(self.parameters(mode));
        for &q in &self.single_qubit {
            out.push(format!("Sq({q})"));
        }
        for &(a, b) in &self.pairs {
            out.push(format!("CNOT({a},{b})"));
        }
        for &q in &self.measured {
            out.push(format!("M({q})"));
        }
        for &q in &self.prepared {
            out.push(format!("P({q})"));
        }
        if mode == OptimizeMode::WithDecoherence {
            for &q in &self.single_qubit {
                out.push(format!("T1({q})"));
                out.push(format!("T2({q})"));
            }
        }
        out
    }
}

/// Count the circuit's noise parameters against an architecture.
pub fn census(circuit: &Circuit, arch: &Architecture) -> Census {
    let active = circuit.active_qubits();
    let pairs = arch
        .unordered_pairs()
        .into_iter()
        .filter(|&(a, b)| active.contains(&a) && active.contains(&b))
        .collect();
    let mut measured = circuit.measured();
    measured.sort_unstable();
    let mut prepared = circuit.prepared();
    prepared.sort_unstable();
    Census {
        single_qubit: active,
        pairs,
        measured,
        prepared,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OptimizeMode {
    /// Depolarizing and SPAM rates only (the default).
    RatesOnly,
    /// Rates plus per-qubit T1/T2 times.
    WithDecoherence,
}

/// GA hyperparameters. The defaults keep exact-mode fitness affordable on
/// walk workspaces while leaving room for the operators to act.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaConfig {
    pub population_size: usize,
    pub generations: usize,
    pub elite_count: usize,
    pub tournament_size: usize,
    pub crossover_rate: f64,
    pub mutation_rate: f64,
    /// Relative sigma of the Gaussian mutation (plus a 1e-4 floor).
    pub mutation_scale: f64,
    pub seed: u64,
}

impl Default for GaConfig {
    fn default() -> Self {
        Self {
            population_size: 30,
            generations: 50,
            elite_count: 2,
            tournament_size: 3,
            crossover_rate: 0.9,
            mutation_rate: 0.15,
            mutation_scale: 0.2,
            seed: 0,
        }
    }
}

impl GaConfig {
    pub fn validate(&self) -> Result<()> {
        if self.population_size < 2 {
            return Err(Error::InvalidConfig("population must be at least 2".into()));
        }
        if self.elite_count >= self.population_size {
            return Err(Error::InvalidConfig(
                "elite count must be smaller than the population".into(),
            ));
        }
        if self.tournament_size == 0 {
            return Err(Error::InvalidConfig(
                "tournament size must be positive".into(),
            ));
        }
        for (name, value) in [
            ("crossover_rate", self.crossover_rate),
            ("mutation_rate", self.mutation_rate),
        ] {
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::InvalidConfig(format!(
                    "{name} = {value} outside [0, 1]"
                )));
            }
        }
        if self.mutation_scale < 0.0 {
            return Err(Error::InvalidConfig("negative mutation scale".into()));
        }
        Ok(())
    }
}

/// Outcome of a GA run.
#[derive(Debug, Clone)]
pub struct OptimizationResult {
    pub labels: Vec<String>,
    /// Genome holding the base calibration's values.
    pub baseline_genome: Vec<f64>,
    /// Hellinger distance of the base calibration (HD pre).
    pub baseline_distance: f64,
    pub best_genome: Vec<f64>,
    /// Hellinger distance of the best genome (HD post).
    pub best_distance: f64,
    /// Best-so-far distance after the initial population and after each
    /// generation; non-increasing.
    pub history: Vec<f64>,
    pub wall_time_s: f64,
}

impl OptimizationResult {
    pub fn percent_change(&self) -> f64 {
        if self.baseline_distance == 0.0 {
            return 0.0;
        }
        (self.baseline_distance - self.best_distance) / self.baseline_distance * 100.0
    }
}

/// Read the genome slots out of a calibration document.
pub fn genome_from_calibration(
    cal: &CalibrationData,
    census: &Census,
    mode: OptimizeMode,
) -> Vec<f64> {
    let mut g = Vec::with_capacity(census.parameters(mode));
    for &q in &census.single_qubit {
        g.push(cal.qubit_mean_single_rate(q).unwrap_or(0.0));
    }
    for &(a, b) in &census.pairs {
        g.push(cal.pair_rate(a, b).unwrap_or_else(|| cal.mean_pair_rate()));
    }
    for &q in &census.measured {
        g.push(cal.qubit(q).map(|c| c.readout_error).unwrap_or(0.0));
    }
    for &q in &census.prepared {
        g.push(cal.qubit(q).map(|c| c.prep_error).unwrap_or(0.0));
    }
    if mode == OptimizeMode::WithDecoherence {
        for &q in &census.single_qubit {
            let qc = cal.qubit(q).expect("census qubit in calibration");
            g.push(qc.t1_us);
            g.push(qc.t2_us);
        }
    }
    g
}

/// Write genome slots onto a copy of the base calibration.
pub fn overlay_genome(
    base: &CalibrationData,
    census: &Census,
    mode: OptimizeMode,
    genome: &[f64],
) -> Result<CalibrationData> {
    let expected = census.parameters(mode);
    if genome.len() != expected {
        return Err(Error::GenomeLengthMismatch {
            expected,
            got: genome.len(),
        });
    }
    let mut cal = base.clone();
    let mut idx = 0;
    for &q in &census.single_qubit {
        cal.set_single_qubit_rates(q, genome[idx]);
        idx += 1;
    }
    for &(a, b) in &census.pairs {
        cal.set_pair_rate(a, b, genome[idx]);
        idx += 1;
    }
    for &q in &census.measured {
        cal.set_readout_error(q, genome[idx]);
        idx += 1;
    }
    for &q in &census.prepared {
        cal.set_prep_error(q, genome[idx]);
        idx += 1;
    }
    if mode == OptimizeMode::WithDecoherence {
        for &q in &census.single_qubit {
            cal.set_times(q, genome[idx], genome[idx + 1]);
            idx += 2;
        }
    }
    Ok(cal)
}

/// Hellinger distance between the unified model simulated with `genome`
/// overlaid on `base` and the target distribution.
pub fn fitness(
    genome: &[f64],
    circuit: &Circuit,
    arch: &Architecture,
    base: &CalibrationData,
    target: &Distribution,
    mode: OptimizeMode,
) -> Result<f64> {
    let cen = census(circuit, arch);
    fitness_with_census(genome, circuit, arch, base, target, mode, &cen)
}

fn fitness_with_census(
    genome: &[f64],
    circuit: &Circuit,
    arch: &Architecture,
    base: &CalibrationData,
    target: &Distribution,
    mode: OptimizeMode,
    cen: &Census,
) -> Result<f64> {
    let cal = overlay_genome(base, cen, mode, genome)?;
    let model = NoiseModel::new_relaxed(cal, arch.clone(), Variant::Unm)?;
    let out = model.simulate_exact(circuit)?;
    Ok(metrics::hellinger(&out, target))
}

#[derive(Debug, Clone, Copy)]
enum Bound {
    Rate,
    Time { lo: f64, hi: f64 },
}

impl Bound {
    fn clamp(&self, x: f64) -> f64 {
        match *self {
            Bound::Rate => x.clamp(0.0, 1.0),
            Bound::Time { lo, hi } => x.clamp(lo, hi),
        }
    }
}

fn bounds_for(census: &Census, mode: OptimizeMode, baseline: &[f64]) -> Vec<Bound> {
    let mut bounds = vec![Bound::Rate; census.rate_parameters()];
    if mode == OptimizeMode::WithDecoherence {
        for &t in &baseline[census.rate_parameters()..] {
            let base = if t.is_finite() { t } else { 1e7 };
            bounds.push(Bound::Time {
                lo: (base / 100.0).max(1e-3),
                hi: (base * 100.0).min(1e9),
            });
        }
    }
    bounds
}

/// Clamp to bounds and restore `T2 ≤ 2·T1` for every time pair.
fn enforce(genome: &mut [f64], bounds: &[Bound], census: &Census, mode: OptimizeMode) {
    for (g, b) in genome.iter_mut().zip(bounds) {
        *g = b.clamp(*g);
    }
    if mode == OptimizeMode::WithDecoherence {
        let base = census.rate_parameters();
        for i in 0..census.single_qubit.len() {
            let t1 = genome[base + 2 * i];
            let t2 = &mut genome[base + 2 * i + 1];
            if *t2 > 2.0 * t1 {
                *t2 = 2.0 * t1;
            }
        }
    }
}

/// Run the GA: elitist selection, tournament parent choice, uniform
/// crossover and Gaussian mutation clamped to bounds. Deterministic per
/// seed. The initial population is the base calibration plus relative
/// Gaussian perturbations of it.
pub fn optimize(
    circuit: &Circuit,
    arch: &Architecture,
    base: &CalibrationData,
    target: &Distribution,
    cfg: &GaConfig,
    mode: OptimizeMode,
) -> Result<OptimizationResult> {
    cfg.validate()?;
    let started = Instant::now();
    let cen = census(circuit, arch);
    let labels = cen.labels(mode);
    let baseline = genome_from_calibration(base, &cen, mode);
    let bounds = bounds_for(&cen, mode, &baseline);
    let dims = baseline.len();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

    let mut population: Vec<Vec<f64>> = Vec::with_capacity(cfg.population_size);
    {
        let mut first = baseline.clone();
        enforce(&mut first, &bounds, &cen, mode);
        population.push(first);
    }
    while population.len() < cfg.population_size {
        let mut ind = baseline.clone();
        for g in ind.iter_mut() {
            let z: f64 = rng.sample(StandardNormal);
            *g *= 1.0 + 0.3 * z;
        }
        enforce(&mut ind, &bounds, &cen, mode);
        population.push(ind);
    }

    let eval = |pop: &[Vec<f64>]| -> Result<Vec<f64>> {
        pop.iter()
            .map(|g| fitness_with_census(g, circuit, arch, base, target, mode, &cen))
            .collect()
    };

    let baseline_distance =
        fitness_with_census(&baseline, circuit, arch, base, target, mode, &cen)?;

    let mut scores = eval(&population)?;
    let mut order = rank(&scores);
    let mut best_genome = population[order[0]].clone();
    let mut best_distance = scores[order[0]];
    let mut history = vec![best_distance];

    for _ in 0..cfg.generations {
        let mut next: Vec<Vec<f64>> = Vec::with_capacity(cfg.population_size);
        for &i in order.iter().take(cfg.elite_count) {
            next.push(population[i].clone());
        }
        while next.len() < cfg.population_size {
            let pa = tournament(&scores, cfg.tournament_size, &mut rng);
            let pb = tournament(&scores, cfg.tournament_size, &mut rng);
            let mut child = if rng.random::<f64>() < cfg.crossover_rate {
                // uniform crossover
                (0..dims)
                    .map(|d| {
                        if rng.random::<bool>() {
                            population[pa][d]
                        } else {
                            population[pb][d]
                        }
                    })
                    .collect::<Vec<f64>>()
            } else {
                population[pa].clone()
            };
            for g in child.iter_mut() {
                if rng.random::<f64>() < cfg.mutation_rate {
                    let sigma = cfg.mutation_scale * g.abs() + 1e-4;
                    let z: f64 = rng.sample(StandardNormal);
                    *g += sigma * z;
                }
            }
            enforce(&mut child, &bounds, &cen, mode);
            next.push(child);
        }
        population = next;
        scores = eval(&population)?;
        order = rank(&scores);
        if scores[order[0]] < best_distance {
            best_distance = scores[order[0]];
            best_genome = population[order[0]].clone();
        }
        history.push(best_distance);
    }

    Ok(OptimizationResult {
        labels,
        baseline_genome: baseline,
        baseline_distance,
        best_genome,
        best_distance,
        history,
        wall_time_s: started.elapsed().as_secs_f64(),
    })
}

fn rank(scores: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..scores.len()).collect();
    idx.sort_by(|&a, &b| scores[a].total_cmp(&scores[b]).then(a.cmp(&b)));
    idx
}

fn tournament(scores: &[f64], size: usize, rng: &mut ChaCha8Rng) -> usize {
    let mut best = rng.random_range(0..scores.len());
    for _ in 1..size {
        let cand = rng.random_range(0..scores.len());
        if scores[cand] < scores[best] {
            best = cand;
        }
    }
    best
}
