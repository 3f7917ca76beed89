//! `noisim gen-calib`: write a template calibration file pre-filled with
//! average parameters for quick starts.

use noisim::CalibrationData;

use crate::common::{self, CliError, CliResult};
use crate::{CouplingArg, GenCalibArgs};

pub fn run(args: &GenCalibArgs) -> CliResult<()> {
    if args.qubits == 0 {
        return Err(CliError::usage("--qubits must be at least 1"));
    }
    let coupling = match args.coupling {
        CouplingArg::Linear => (1..args.qubits).map(|q| (q - 1, q)).collect(),
        CouplingArg::Full => {
            let mut pairs = Vec::new();
            for a in 0..args.qubits {
                for b in 0..args.qubits {
                    if a != b {
                        pairs.push((a, b));
                    }
                }
            }
            pairs
        }
    };
    let cal = CalibrationData::template(args.qubits, coupling);
    let mut text = cal.to_json_string();
    text.push('\n');
    common::write_file(&args.out, &text)?;
    eprintln!("wrote {}", args.out.display());
    Ok(())
}
