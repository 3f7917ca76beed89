//! Acceptance suite: one test per release criterion, each printing a
//! PASS line with the measured values (run with `-- --nocapture` to see
//! them; the test names double as the pass/fail report).

use std::path::Path;
use std::process::Command;
use std::time::Instant;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use noisim::channels::{self, ChoiMatrix, ThermalParams};
use noisim::linalg::{self, CMat};
use noisim::metrics::{counts_to_distribution, hellinger};
use noisim::optimizer::{self, GaConfig, OptimizeMode};
use noisim::walks::{ideal_walk_distribution, walk_circuit, WalkSpec};
use noisim::{Architecture, CalibrationData, DensityMatrix, Distribution, NoiseModel, Variant};

fn random_density_1q(rng: &mut ChaCha8Rng) -> DensityMatrix {
    let mut a = CMat::zeros(2, 2);
    for i in 0..2 {
        for j in 0..2 {
            a[(i, j)] = linalg::C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5);
        }
    }
    let psd = &a * a.adjoint();
    let tr: linalg::C64 = psd.diagonal().iter().sum();
    DensityMatrix::from_matrix(1, psd.map(|e| e / tr)).unwrap()
}

#[test]
fn criterion_01_cptp_over_parameter_grid() {
    let started = Instant::now();
    let mut worst = 0.0f64;
    for p in [0.0, 0.25, 0.5, 0.75, 1.0] {
        worst = worst.max(channels::depolarizing(p).unwrap().completeness_defect());
        worst = worst.max(channels::spam(p).unwrap().completeness_defect());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for tg in [0.0, 50.0, 500.0] {
        for theta in [0.0, 0.015] {
            for _ in 0..25 {
                let t1 = 5.0 + 95.0 * rng.random::<f64>();
                let t2 = ((0.1 + 1.9 * rng.random::<f64>()) * t1).min(2.0 * t1);
                let tp = ThermalParams::new(t1, t2, tg, theta, 4.9801e9).unwrap();
                let defect = channels::thermal(&tp).unwrap().completeness_defect();
                assert!(
                    defect <= 1e-10,
                    "thermal defect {defect:.3e} at T1={t1} T2={t2} Tg={tg} theta={theta}"
                );
                worst = worst.max(defect);
            }
        }
    }
    assert!(worst <= 1e-10, "worst completeness defect {worst:.3e}");
    println!(
        "[criterion 1] PASS: CPTP grid, worst defect {:.3e} ({:.2}s)",
        worst,
        started.elapsed().as_secs_f64()
    );
}

#[test]
fn criterion_02_excitation_weight_worked_value() {
    let w = channels::excitation_weight(4.9801e9, 0.015);
    let reference = 1.44532e-14;
    let rel = (w - reference).abs() / reference;
    assert!(rel < 0.01, "w_e = {w:.6e}, relative error {rel:.4}");
    println!("[criterion 2] PASS: w_e = {w:.6e} within {rel:.5} of the worked value");
}

#[test]
fn criterion_03_choi_kraus_oracle_equivalence() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst = 0.0f64;
    for case in 0..50 {
        // random valid thermal Choi: p_T2^2 <= 1 - p_reset keeps it PSD
        let p_reset: f64 = rng.random::<f64>() * 0.999;
        let p_t2: f64 = rng.random::<f64>() * (1.0 - p_reset).sqrt();
        let mut mat = CMat::zeros(4, 4);
        mat[(0, 0)] = linalg::ONE;
        mat[(2, 2)] = linalg::re(p_reset);
        mat[(3, 3)] = linalg::re(1.0 - p_reset);
        mat[(0, 3)] = linalg::re(p_t2);
        mat[(3, 0)] = linalg::re(p_t2);
        let choi = ChoiMatrix::new(mat).unwrap();
        let kraus = channels::choi_to_kraus(&choi)
            .unwrap_or_else(|e| panic!("case {case}: conversion failed: {e}"));
        for _ in 0..20 {
            let rho = random_density_1q(&mut rng);
            let via_kraus = rho.apply_kraus(&kraus, &[0]).unwrap();
            let via_choi = channels::apply_choi(&rho, &choi).unwrap();
            let err = linalg::max_abs_diff(via_kraus.matrix(), via_choi.matrix());
            assert!(err <= 1e-9, "case {case}: error {err:.3e}");
            worst = worst.max(err);
        }
    }
    println!(
        "[criterion 3] PASS: 50 Choi conversions x 20 states, max error {:.3e} ({:.2}s)",
        worst,
        started.elapsed().as_secs_f64()
    );
}

#[test]
fn criterion_04_ideal_walk_distribution_parity_workspace() {
    let started = Instant::now();
    // exact one-step outcome
    let spec = WalkSpec::new(4, 1, 0).unwrap();
    let d = ideal_walk_distribution(&spec).unwrap();
    assert!((d.prob(1) - 0.5).abs() <= 1e-12);
    assert!((d.prob(3) - 0.5).abs() <= 1e-12);
    assert!(d.prob(0).abs() <= 1e-12 && d.prob(2).abs() <= 1e-12);
    // parity invariant
    for n in [4usize, 8, 16] {
        for steps in [1usize, 3] {
            let spec = WalkSpec::new(n, steps, 0).unwrap();
            let d = ideal_walk_distribution(&spec).unwrap();
            let even: f64 = (0..n).step_by(2).map(|x| d.prob(x)).sum();
            assert!(even <= 1e-10, "N={n} steps={steps}: even mass {even:.3e}");
        }
    }
    // workspace sizes (largest sizes generated, not simulated)
    for (n, ws) in [(4, 4), (8, 6), (16, 8), (32, 10), (64, 12)] {
        let spec = WalkSpec::new(n, 1, 0).unwrap();
        let circuit = walk_circuit(&spec).unwrap();
        assert_eq!(circuit.n_qubits(), ws, "N={n}");
    }
    println!(
        "[criterion 4] PASS: walk distribution, parity, workspace sizes ({:.2}s)",
        started.elapsed().as_secs_f64()
    );
}

#[test]
fn criterion_05_zero_noise_equivalence() {
    let mut worst = 0.0f64;
    for n in [4usize, 8] {
        let spec = WalkSpec::new(n, 1, 0).unwrap();
        let circuit = walk_circuit(&spec).unwrap();
        let arch = Architecture::linear(circuit.n_qubits());
        let cal = CalibrationData::noiseless(circuit.n_qubits(), arch.coupling().to_vec());
        let unm = NoiseModel::new(cal, arch, Variant::Unm)
            .unwrap()
            .simulate_exact(&circuit)
            .unwrap();
        let ideal = ideal_walk_distribution(&spec).unwrap();
        for x in 0..n {
            let diff = (unm.prob(x) - ideal.prob(x)).abs();
            assert!(diff <= 1e-12, "N={n} x={x}: diff {diff:.3e}");
            worst = worst.max(diff);
        }
    }
    println!("[criterion 5] PASS: zero-noise UNM = IDEAL, max diff {worst:.3e}");
}

#[test]
fn criterion_06_sampling_consistency() {
    let started = Instant::now();
    let spec = WalkSpec::new(4, 1, 0).unwrap();
    let circuit = walk_circuit(&spec).unwrap();
    let arch = Architecture::linear(4);
    let cal = CalibrationData::template(4, arch.coupling().to_vec());
    let model = NoiseModel::new(cal, arch, Variant::Unm).unwrap();
    let exact = model.simulate_exact(&circuit).unwrap();
    let counts = model.simulate_shots(&circuit, 100_000, 1).unwrap();
    let h = hellinger(&exact, &counts_to_distribution(&counts).unwrap());
    assert!(h <= 0.01, "h = {h}");
    println!(
        "[criterion 6] PASS: h(exact, 100k shots) = {:.5} ({:.2}s)",
        h,
        started.elapsed().as_secs_f64()
    );
}

#[test]
fn criterion_07_hellinger_metric_axioms() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    fn random_dist(n: usize, rng: &mut ChaCha8Rng) -> Distribution {
        let raw: Vec<f64> = (0..n).map(|_| rng.random::<f64>() + 1e-12).collect();
        let sum: f64 = raw.iter().sum();
        Distribution::new(raw.into_iter().map(|x| x / sum).collect()).unwrap()
    }
    for _ in 0..1000 {
        let n = 2 + rng.random_range(0..9_usize);
        let p = random_dist(n, &mut rng);
        let q = random_dist(n, &mut rng);
        let r = random_dist(n, &mut rng);
        let hpq = hellinger(&p, &q);
        assert_eq!(hpq, hellinger(&q, &p), "symmetry must be exact");
        assert!((0.0..=1.0).contains(&hpq));
        assert!(hpq <= hellinger(&p, &r) + hellinger(&r, &q) + 1e-12);
    }
    // identity of indiscernibles and disjoint supports
    let p = Distribution::new(vec![1.0, 0.0]).unwrap();
    let q = Distribution::new(vec![0.0, 1.0]).unwrap();
    assert_eq!(hellinger(&p, &p), 0.0);
    assert!((hellinger(&p, &q) - 1.0).abs() < 1e-15);
    println!(
        "[criterion 7] PASS: metric axioms on 1000 random triples ({:.2}s)",
        started.elapsed().as_secs_f64()
    );
}

#[test]
fn criterion_08_parameter_census_counts() {
    let spec = WalkSpec::new(4, 1, 0).unwrap();
    let circuit = walk_circuit(&spec).unwrap();
    let cen = optimizer::census(&circuit, &Architecture::linear(4));
    assert_eq!(cen.counts(), (4, 3, 2, 0));
    assert_eq!(cen.rate_parameters(), 9);

    let spec = WalkSpec::new(8, 1, 0).unwrap();
    let circuit = walk_circuit(&spec).unwrap();
    let cen = optimizer::census(&circuit, &Architecture::linear(6));
    assert_eq!(cen.counts(), (6, 5, 3, 0));
    assert_eq!(cen.rate_parameters(), 14);
    println!("[criterion 8] PASS: census counts 9 (N=4) and 14 (N=8)");
}

#[test]
fn criterion_09_ga_self_calibration() {
    let started = Instant::now();
    let spec = WalkSpec::new(4, 1, 0).unwrap();
    let circuit = walk_circuit(&spec).unwrap();
    let arch = Architecture::linear(4);
    let base = CalibrationData::template(4, arch.coupling().to_vec());

    // synthetic target: every rate scaled by a seed-fixed uniform factor in
    // [0.5, 2], clamped to [0, 1]
    let cen = optimizer::census(&circuit, &arch);
    let baseline = optimizer::genome_from_calibration(&base, &cen, OptimizeMode::RatesOnly);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let perturbed: Vec<f64> = baseline
        .iter()
        .map(|&r| (r * (0.5 + 1.5 * rng.random::<f64>())).clamp(0.0, 1.0))
        .collect();
    let perturbed_cal =
        optimizer::overlay_genome(&base, &cen, OptimizeMode::RatesOnly, &perturbed).unwrap();
    let target = NoiseModel::new(perturbed_cal, arch.clone(), Variant::Unm)
        .unwrap()
        .simulate_exact(&circuit)
        .unwrap();

    let cfg = GaConfig {
        population_size: 30,
        generations: 50,
        seed: 7,
        ..GaConfig::default()
    };
    let result = optimizer::optimize(
        &circuit,
        &arch,
        &base,
        &target,
        &cfg,
        OptimizeMode::RatesOnly,
    )
    .unwrap();

    for w in result.history.windows(2) {
        assert!(w[1] <= w[0], "best-so-far increased: {} -> {}", w[0], w[1]);
    }
    let initial = result.baseline_distance;
    let final_hd = result.best_distance;
    assert!(
        final_hd <= 0.5 * initial,
        "HD {final_hd:.6} did not reach 50% of initial {initial:.6}"
    );
    println!(
        "[criterion 9] PASS: GA HD {:.6} -> {:.6} ({:.1}% reduction) in {:.1}s",
        initial,
        final_hd,
        result.percent_change(),
        started.elapsed().as_secs_f64()
    );
}

fn run_cli(dir: &Path, args: &[&str]) {
    let status = Command::new(env!("CARGO_BIN_EXE_noisim"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs");
    assert!(
        status.status.success(),
        "noisim {args:?} failed: {}",
        String::from_utf8_lossy(&status.stderr)
    );
}

fn dir_snapshot(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files = Vec::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for entry in std::fs::read_dir(&d).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                stack.push(path);
            } else {
                let rel = path
                    .strip_prefix(dir)
                    .unwrap()
                    .to_string_lossy()
                    .to_string();
                files.push((rel, std::fs::read(&path).unwrap()));
            }
        }
    }
    files.sort();
    files
}

#[test]
fn criterion_10_cli_determinism() {
    let started = Instant::now();
    let base = tempfile::tempdir().unwrap();
    let invocations: Vec<Vec<String>> = vec![
        vec!["gen-calib", "--qubits", "4", "--out", "cal.json"],
        vec![
            "walk", "--states", "4", "--steps", "1", "--model", "unm", "--calib", "cal.json",
            "--shots", "100000", "--seed", "7", "--out", "w",
        ],
        vec![
            "compare", "--states", "4", "--steps", "1", "--calib", "cal.json", "--seed", "3",
            "--out", "c",
        ],
        vec![
            "optimize",
            "--states",
            "4",
            "--steps",
            "1",
            "--target",
            "w/distribution.csv",
            "--calib",
            "cal.json",
            "--generations",
            "5",
            "--population",
            "8",
            "--seed",
            "9",
            "--out",
            "o",
        ],
    ]
    .into_iter()
    .map(|v| v.into_iter().map(String::from).collect())
    .collect();

    let mut snapshots = Vec::new();
    for run in 0..2 {
        let dir = base.path().join(format!("run{run}"));
        std::fs::create_dir_all(&dir).unwrap();
        for inv in &invocations {
            let args: Vec<&str> = inv.iter().map(String::as_str).collect();
            run_cli(&dir, &args);
        }
        snapshots.push(dir_snapshot(&dir));
    }
    assert_eq!(
        snapshots[0].len(),
        snapshots[1].len(),
        "different file sets"
    );
    for (a, b) in snapshots[0].iter().zip(&snapshots[1]) {
        assert_eq!(a.0, b.0, "file names differ");
        assert_eq!(a.1, b.1, "bytes differ for {}", a.0);
    }
    println!(
        "[criterion 10] PASS: {} result files byte-identical across repeated runs ({:.1}s)",
        snapshots[0].len(),
        started.elapsed().as_secs_f64()
    );
}
