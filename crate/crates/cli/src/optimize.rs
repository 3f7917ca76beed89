//! `noisim optimize`: run the GA against a target distribution and write
//! the report (pre/post distances, per-parameter table, history).

use serde::Serialize;

use noisim::walks::walk_circuit;
use noisim::{optimizer, Circuit, GaConfig};

use crate::common::{self, CliError, CliResult};
use crate::{output, OptimizeArgs};

#[derive(Serialize)]
struct ParameterRow {
    name: String,
    pre: f64,
    post: f64,
}

#[derive(Serialize)]
struct OptimizeReport {
    command: &'static str,
    circuit: String,
    mode: &'static str,
    generations: usize,
    population: usize,
    seed: u64,
    pre_hd: f64,
    post_hd: f64,
    percent_change: f64,
    parameters: Vec<ParameterRow>,
    history: Vec<f64>,
}

fn circuit_for(args: &OptimizeArgs) -> CliResult<(Circuit, String)> {
    if let Some(path) = &args.circuit {
        Ok((common::load_circuit(path)?, path.display().to_string()))
    } else if let Some(states) = args.states {
        let spec = common::walk_spec(states, args.steps, args.start)?;
        Ok((
            walk_circuit(&spec)?,
            format!("walk(N={}, steps={})", states, args.steps),
        ))
    } else {
        Err(CliError::usage("either --states or --circuit is required"))
    }
}

pub fn run(args: &OptimizeArgs) -> CliResult<()> {
    let (circuit, circuit_label) = circuit_for(args)?;
    let calib = common::load_calibration(&args.calib)?;
    let target = common::load_distribution(&args.target)?;

    let measured_space = 1usize << circuit.measured().len();
    if target.len() > measured_space {
        return Err(CliError::Run(format!(
            "target has {} outcomes but the circuit measures only {} ({} outcomes)",
            target.len(),
            circuit.measured().len(),
            measured_space
        )));
    }

    let arch = common::build_architecture(&circuit, Some(&calib), args.assume_full_connectivity)?;
    let cfg = GaConfig {
        population_size: args.population,
        generations: args.generations,
        seed: args.seed,
        ..GaConfig::default()
    };
    let mode = args.mode.mode();
    let result = optimizer::optimize(&circuit, &arch, &calib, &target, &cfg, mode)?;

    let parameters: Vec<ParameterRow> = result
        .labels
        .iter()
        .zip(&result.baseline_genome)
        .zip(&result.best_genome)
        .map(|((name, &pre), &post)| ParameterRow {
            name: name.clone(),
            pre,
            post,
        })
        .collect();

    let report = OptimizeReport {
        command: "optimize",
        circuit: circuit_label,
        mode: match mode {
            noisim::OptimizeMode::RatesOnly => "rates",
            noisim::OptimizeMode::WithDecoherence => "decoherence",
        },
        generations: cfg.generations,
        population: cfg.population_size,
        seed: cfg.seed,
        pre_hd: result.baseline_distance,
        post_hd: result.best_distance,
        percent_change: result.percent_change(),
        parameters,
        history: result.history.clone(),
    };

    common::write_file(
        &args.out.join("report.json"),
        &output::to_json_pretty(&report),
    )?;
    common::write_file(
        &args.out.join("history.csv"),
        &output::history_csv(&result.history),
    )?;
    common::write_file(
        &args.out.join("parameters.csv"),
        &output::parameters_csv(&result.labels, &result.baseline_genome, &result.best_genome),
    )?;
    // wall time goes to stderr only; result files stay byte-identical per seed
    eprintln!(
        "optimize: HD {:.6} -> {:.6} ({:.2}% change) in {:.2}s",
        result.baseline_distance,
        result.best_distance,
        result.percent_change(),
        result.wall_time_s
    );
    Ok(())
}
