//! `noisim walk`: build a walk circuit, simulate it under one variant, and
//! write the distribution plus a summary with distances to the ideal and
//! uniform baselines.

use serde::Serialize;

use noisim::metrics::{counts_to_distribution, hellinger, uniform_distribution};
use noisim::walks::{ideal_walk_distribution, walk_circuit};

use crate::common::{self, CliResult};
use crate::{output, WalkArgs};

#[derive(Serialize)]
struct WalkSummary {
    command: &'static str,
    states: usize,
    steps: usize,
    start: usize,
    model: String,
    seed: u64,
    workspace_qubits: usize,
    gate_count: usize,
    hellinger_to_ideal: f64,
    hellinger_to_uniform: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    shots: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    hellinger_shots_vs_exact: Option<f64>,
}

pub fn run(args: &WalkArgs) -> CliResult<()> {
    let spec = common::walk_spec(args.states, args.steps, args.start)?;
    let circuit = walk_circuit(&spec)?;

    let calib = match &args.calib {
        Some(path) => Some(common::load_calibration(path)?),
        None => None,
    };
    let model = common::build_model(
        &circuit,
        calib.as_ref(),
        args.model.variant(),
        args.assume_full_connectivity,
        args.control_trc.control_trc(),
    )?;

    let exact = model.simulate_exact(&circuit)?;
    let ideal = ideal_walk_distribution(&spec)?;
    let uniform = uniform_distribution(spec.n_states)?;

    let mut summary = WalkSummary {
        command: "walk",
        states: spec.n_states,
        steps: spec.steps,
        start: spec.initial_position,
        model: args.model.variant().name().to_string(),
        seed: args.seed,
        workspace_qubits: circuit.n_qubits(),
        gate_count: circuit.len(),
        hellinger_to_ideal: hellinger(&exact, &ideal),
        hellinger_to_uniform: hellinger(&exact, &uniform),
        shots: None,
        hellinger_shots_vs_exact: None,
    };

    common::write_file(&args.out.join("circuit.txt"), &circuit.to_text())?;
    common::write_file(
        &args.out.join("distribution.csv"),
        &output::distribution_csv(&exact),
    )?;

    if let Some(shots) = args.shots {
        let counts = exact.sample(shots, args.seed)?;
        let empirical = counts_to_distribution(&counts)?;
        summary.shots = Some(shots);
        summary.hellinger_shots_vs_exact = Some(hellinger(&exact, &empirical));
        common::write_file(&args.out.join("counts.csv"), &output::counts_csv(&counts))?;
    }

    common::write_file(
        &args.out.join("summary.json"),
        &output::to_json_pretty(&summary),
    )?;
    eprintln!(
        "walk N={} steps={} model={}: h(ideal) = {:.6}, h(uniform) = {:.6}",
        spec.n_states,
        spec.steps,
        summary.model,
        summary.hellinger_to_ideal,
        summary.hellinger_to_uniform
    );
    Ok(())
}
