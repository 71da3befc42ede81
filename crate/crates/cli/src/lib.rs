//! Command-line front end for `spinvec`.
//!
//! Every invocation produces one [`ReportDocument`], rendered either as text
//! tables or as a single JSON object. Exit codes: 0 success, 2 usage error or
//! inadmissible input, 3 numerical verification failure.

pub mod args;
pub mod paper_table;
pub mod render;
pub mod report;

use spinvec::spin_ops::parse_twice;
use spinvec::{coupled_state, single_spin_report, vector_sum_report, Axis, SpinQuantumNumber, SpinSystem};

pub use args::{Cli, Command};
pub use report::{ReportDocument, Request};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VERIFICATION: i32 = 3;

/// Environment variable overriding the sampler thread count.
pub const THREADS_ENV: &str = "SPINVEC_THREADS";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Spin(#[from] spinvec::Error),
}

fn twice_of(frac: &Option<String>, twice: Option<i64>, name: &str) -> Result<i64, CliError> {
    match (frac, twice) {
        (Some(s), _) => Ok(parse_twice(s)?),
        (None, Some(t)) => Ok(t),
        (None, None) => Err(CliError::Usage(format!("missing --{name} (or --twice-{name})"))),
    }
}

fn quantum_numbers(spin: &args::SpinArgs) -> Result<(u32, i32), CliError> {
    let tj = twice_of(&spin.j, spin.twice_j, "j")?;
    let tm = twice_of(&spin.m, spin.twice_m, "m")?;
    let tj = u32::try_from(tj).map_err(|_| CliError::Usage(format!("j must be non-negative, got {tj}/2")))?;
    let tm = i32::try_from(tm)
        .ok()
        .filter(|m| m.unsigned_abs() <= tj)
        .ok_or_else(|| CliError::Usage(format!("m = {tm}/2 violates |m| ≤ j with j = {tj}/2")))?;
    Ok((tj, tm))
}

fn state_request(state: &args::StateArgs, tolerance: f64) -> Result<(Request, spinvec::CoupledState), CliError> {
    let (tj, tm) = quantum_numbers(&state.spin)?;
    let system = SpinSystem::new(state.n)?;
    let built = coupled_state(system, tj, tm, state.path.as_deref())?;
    let request = Request {
        n_sites: Some(state.n),
        twice_j: Some(tj),
        twice_m: Some(tm),
        path: state.path.clone(),
        tolerance,
        ..Request::default()
    };
    Ok((request, built))
}

/// Runs one command; the caller picks the output format and exit code.
pub fn run(cli: &Cli) -> Result<ReportDocument, CliError> {
    if cli.tolerance.is_nan() || cli.tolerance < 0.0 {
        return Err(CliError::Usage(format!(
            "--tolerance must be non-negative, got {}",
            cli.tolerance
        )));
    }
    match &cli.command {
        Command::Single(spin) => {
            let (tj, tm) = quantum_numbers(spin)?;
            let request = Request {
                twice_j: Some(tj),
                twice_m: Some(tm),
                tolerance: cli.tolerance,
                ..Request::default()
            };
            let mut doc = ReportDocument::new("single", request);
            doc.single = Some(single_spin_report(SpinQuantumNumber::from_twice(tj), tm)?);
            Ok(doc)
        }
        Command::Couple(a) => {
            let (mut request, state) = state_request(&a.state, cli.tolerance)?;
            let sampler = match a.sample {
                Some(n) => {
                    request.samples = Some(n);
                    request.seed = Some(cli.seed);
                    Some(report::compare_sampler(
                        state.system(),
                        state.vector(),
                        &Axis::ALL,
                        n,
                        cli.seed,
                        cli.tolerance,
                    )?)
                }
                None => None,
            };
            let mut doc = ReportDocument::new("couple", request);
            doc.coupled = Some(vector_sum_report(&state)?);
            doc.sampler = sampler;
            Ok(doc)
        }
        Command::Sample(a) => {
            let (mut request, state) = state_request(&a.state, cli.tolerance)?;
            request.axis = a.axis;
            request.samples = Some(a.samples);
            request.seed = Some(cli.seed);
            let axes = a.axis.map_or(Axis::ALL.to_vec(), |axis| vec![axis]);
            let mut doc = ReportDocument::new("sample", request);
            doc.sampler = Some(report::compare_sampler(
                state.system(),
                state.vector(),
                &axes,
                a.samples,
                cli.seed,
                cli.tolerance,
            )?);
            Ok(doc)
        }
        Command::PaperTable => {
            let request = Request {
                tolerance: cli.tolerance,
                ..Request::default()
            };
            let mut doc = ReportDocument::new("paper-table", request);
            doc.paper_table = Some(paper_table::run(cli.tolerance)?);
            Ok(doc)
        }
    }
}

/// Output text and exit code for a parsed command line.
pub fn execute(cli: &Cli) -> (String, i32) {
    match run(cli) {
        Ok(doc) => {
            let code = if doc.verified() { EXIT_OK } else { EXIT_VERIFICATION };
            let text = if cli.json {
                serde_json::to_string_pretty(&doc).expect("report serializes") + "\n"
            } else {
                render::render_text(&doc)
            };
            (text, code)
        }
        Err(e) => (format!("error: {e}\n"), EXIT_USAGE),
    }
}
