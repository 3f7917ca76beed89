//! `noisim compare`: pairwise Hellinger distances among model variants plus
//! the uniform baseline on one circuit.

use serde::Serialize;

use noisim::metrics::{hellinger, uniform_distribution};
use noisim::walks::walk_circuit;
use noisim::{Circuit, Distribution};

use crate::common::{self, CliError, CliResult};
use crate::{output, CompareArgs};

#[derive(Serialize)]
struct PairDistance {
    a: String,
    b: String,
    hellinger: f64,
}

#[derive(Serialize)]
struct CompareSummary {
    command: &'static str,
    circuit: String,
    seed: u64,
    labels: Vec<String>,
    pairwise: Vec<PairDistance>,
}

fn circuit_for(args: &CompareArgs) -> CliResult<(Circuit, String)> {
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

pub fn run(args: &CompareArgs) -> CliResult<()> {
    if args.models.len() < 2 {
        return Err(CliError::usage("compare needs at least two models"));
    }
    let mut requested = args.models.clone();
    requested.dedup();

    let (circuit, circuit_label) = circuit_for(args)?;
    let calib = match &args.calib {
        Some(path) => Some(common::load_calibration(path)?),
        None => None,
    };

    let mut labels: Vec<String> = Vec::new();
    let mut dists: Vec<Distribution> = Vec::new();
    for model_arg in &requested {
        let model = common::build_model(
            &circuit,
            calib.as_ref(),
            model_arg.variant(),
            args.assume_full_connectivity,
            args.control_trc.control_trc(),
        )?;
        labels.push(model_arg.variant().name().to_string());
        dists.push(model.simulate_exact(&circuit)?);
    }
    // uniform baseline over the measured space
    let m = circuit.measured().len();
    labels.push("uniform".to_string());
    dists.push(uniform_distribution(1 << m)?);

    let mut pairwise = Vec::new();
    let mut csv = String::from("model");
    for l in &labels {
        csv.push(',');
        csv.push_str(l);
    }
    csv.push('\n');
    for (i, li) in labels.iter().enumerate() {
        csv.push_str(li);
        for (j, lj) in labels.iter().enumerate() {
            let h = hellinger(&dists[i], &dists[j]);
            csv.push_str(&format!(",{h}"));
            if i < j {
                pairwise.push(PairDistance {
                    a: li.clone(),
                    b: lj.clone(),
                    hellinger: h,
                });
            }
        }
        csv.push('\n');
    }

    let summary = CompareSummary {
        command: "compare",
        circuit: circuit_label,
        seed: args.seed,
        labels,
        pairwise,
    };
    common::write_file(&args.out.join("compare.csv"), &csv)?;
    common::write_file(
        &args.out.join("compare.json"),
        &output::to_json_pretty(&summary),
    )?;
    eprintln!("compare: wrote {} model columns", summary.labels.len());
    Ok(())
}
