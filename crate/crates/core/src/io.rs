//! CSV and JSON emission.
//!
//! CSV is UTF-8 with `\n` line endings, a header row and bare comma
//! separated fields. Numbers use the shortest representation that parses
//! back to the same `f64`.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::optim::ConvergenceHistory;
use crate::shooting::{MatrixRow, SolveReport};

pub const PROFILE_HEADER: &str = "eta,f,fp,fpp";
pub const CONVERGENCE_HEADER: &str = "iteration,best_fitness,alpha,eta_inf";
pub const MATRIX_HEADER: &str = "beta0,beta,algorithm,seed,alpha,eta_inf,residual,status";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.extension())
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format `{other}` (expected csv or json)")),
        }
    }
}

/// Shortest round-trip decimal.
pub fn decimal(v: f64) -> String {
    format!("{v}")
}

pub fn emit_profile<W: Write + ?Sized>(report: &SolveReport, format: Format, sink: &mut W) -> io::Result<()> {
    match format {
        Format::Csv => {
            writeln!(sink, "{PROFILE_HEADER}")?;
            for s in &report.profile {
                writeln!(sink, "{},{},{},{}", decimal(s.eta), decimal(s.f), decimal(s.fp), decimal(s.fpp))?;
            }
            Ok(())
        }
        Format::Json => emit_report_json(report, sink),
    }
}

/// The whole report as one JSON object.
pub fn emit_report_json<W: Write + ?Sized>(report: &SolveReport, sink: &mut W) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *sink, report).map_err(io::Error::other)?;
    writeln!(sink)
}

pub fn emit_convergence<W: Write + ?Sized>(history: &ConvergenceHistory, sink: &mut W) -> io::Result<()> {
    writeln!(sink, "{CONVERGENCE_HEADER}")?;
    for e in &history.entries {
        writeln!(
            sink,
            "{},{},{},{}",
            e.iteration,
            decimal(e.best_fitness),
            decimal(e.best[0]),
            decimal(e.best[1])
        )?;
    }
    Ok(())
}

/// One line per matrix cell; failed cells keep their message in `status`.
pub fn emit_matrix<W: Write + ?Sized>(table: &[MatrixRow], sink: &mut W) -> io::Result<()> {
    writeln!(sink, "{MATRIX_HEADER}")?;
    for row in table {
        for cell in &row.cells {
            let (b0, b) = (decimal(row.params.beta0), decimal(row.params.beta));
            match &cell.outcome {
                Ok(r) => writeln!(
                    sink,
                    "{b0},{b},{},{},{},{},{},ok",
                    cell.algorithm,
                    cell.seed,
                    decimal(r.best.alpha),
                    decimal(r.best.eta_inf),
                    decimal(r.residual)
                )?,
                Err(msg) => writeln!(
                    sink,
                    "{b0},{b},{},{},,,,error: {}",
                    cell.algorithm,
                    cell.seed,
                    msg.replace([',', '\n'], ";")
                )?,
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::optim::{Algorithm, SearchBounds};
    use crate::problem::{Candidate, ProfileSample, WedgeParams};
    use crate::shooting::ConfigEcho;

    fn report(profile: Vec<ProfileSample>) -> SolveReport {
        let mut history = ConvergenceHistory::default();
        history.push(1, 0.5, &[0.3, 9.0]);
        history.push(2, 0.25, &[0.33, 10.0]);
        SolveReport {
            params: WedgeParams::BLASIUS,
            best: Candidate::new(0.332, 10.0),
            residual: 1e-9,
            history,
            profile,
            config: ConfigEcho {
                optimizer: Algorithm::Jaya,
                seed: 1,
                winning_seed: 1,
                restarts: 1,
                n_steps: 1000,
                report_steps: 4000,
                population_size: 20,
                max_iterations: 2,
                bounds: SearchBounds::falkner_skan_default(),
            },
        }
    }

    #[test]
    fn decimals_are_shortest_round_trip() {
        assert_eq!(decimal(0.0), "0");
        assert_eq!(decimal(0.1), "0.1");
        assert_eq!(decimal(0.33205733621519630), "0.3320573362151963");
        let v = 1.0 / 3.0;
        assert_eq!(decimal(v).parse::<f64>().unwrap(), v);
    }

    #[test]
    fn empty_profile_is_header_only() {
        let mut out = Vec::new();
        emit_profile(&report(vec![]), Format::Csv, &mut out).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "eta,f,fp,fpp\n");
    }

    #[test]
    fn profile_rows() {
        let prof = vec![
            ProfileSample { eta: 0.0, f: 0.0, fp: 0.0, fpp: 0.332 },
            ProfileSample { eta: 0.5, f: 0.04, fp: 0.166, fpp: 0.331 },
        ];
        let mut out = Vec::new();
        emit_profile(&report(prof), Format::Csv, &mut out).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "eta,f,fp,fpp\n0,0,0,0.332\n0.5,0.04,0.166,0.331\n");
    }

    #[test]
    fn convergence_rows() {
        let mut out = Vec::new();
        emit_convergence(&report(vec![]).history, &mut out).unwrap();
        assert_eq!(
            String::from_utf8(out).unwrap(),
            "iteration,best_fitness,alpha,eta_inf\n1,0.5,0.3,9\n2,0.25,0.33,10\n"
        );
    }

    #[test]
    fn json_has_the_expected_keys() {
        let mut out = Vec::new();
        emit_profile(&report(vec![]), Format::Json, &mut out).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&out).unwrap();
        let mut keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        keys.sort_unstable();
        assert_eq!(keys, vec!["best", "config", "history", "params", "profile", "residual"]);
    }

    #[test]
    fn formats_parse() {
        assert_eq!("csv".parse::<Format>().unwrap(), Format::Csv);
        assert_eq!("json".parse::<Format>().unwrap(), Format::Json);
        assert!("xml".parse::<Format>().is_err());
    }
}
