use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use sdist_core::formats::{ConfigFile, ReportJson};
use sdist_core::suites::{Suite, SuiteReport};
use sdist_core::{catalog, field, geometry, invariants, polyspace, Configuration, Error, RankCertificate};

#[derive(Parser)]
#[command(name = "sdist", version, about = "Exact analysis of few-distance sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    /// Write output here instead of stdout (`-` for stdout)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a configuration file (`-` for stdin)
    Analyze {
        input: PathBuf,
        /// Attach exact rank certificates
        #[arg(long)]
        certificates: bool,
    },
    /// Emit a catalog configuration
    Catalog {
        name: String,
        #[arg(long)]
        n: Option<i64>,
        #[arg(long)]
        d: Option<i64>,
        #[arg(long)]
        q: Option<i64>,
        #[arg(long)]
        w: Option<i64>,
    },
    /// Run certificate suites
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Recover the normalized spectrum from integer invariants
    Recover {
        /// Comma-separated k values, e.g. "2,-1"
        #[arg(long, allow_hyphen_values = true)]
        k: String,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
}

enum Failure {
    Input(Error),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e)
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Parse(_) => "parse",
        Error::NoConvergence { .. } => "no_convergence",
        Error::InconsistentK(_) => "inconsistent_k",
        Error::NotRealizable(..) => "not_realizable",
        Error::DuplicatePoints(..) => "duplicate_points",
        Error::NotDistanceSet(_) => "not_distance_set",
        Error::InvalidQ(_) | Error::UnsupportedN(_) | Error::InvalidParameter(_) => "invalid_parameter",
        _ => "invalid_input",
    }
}

fn read_input(path: &PathBuf) -> Result<String, Error> {
    let mut s = String::new();
    if path.as_os_str() == "-" {
        io::stdin().read_to_string(&mut s).map_err(|e| Error::Parse(e.to_string()))?;
    } else {
        s = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {}", path.display(), e)))?;
    }
    Ok(s)
}

fn write_output(out: Option<&PathBuf>, text: &str) -> Result<(), Error> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match out {
        Some(p) if p.as_os_str() != "-" => {
            fs::write(p, text).map_err(|e| Error::InvalidParameter(format!("{}: {}", p.display(), e)))
        }
        _ => io::stdout().write_all(text.as_bytes()).map_err(|e| Error::InvalidParameter(e.to_string())),
    }
}

fn certificates(cfg: &Configuration) -> Result<Vec<RankCertificate>, Error> {
    let d = cfg.sdm()?;
    let s = geometry::distance_spectrum(&d)?.s();
    let mut out = Vec::new();
    if s >= 2 {
        for i in 0..s {
            out.push(polyspace::evaluation_certificate(&d, i)?);
        }
    }
    if let Some(x) = cfg.points() {
        if s >= 2 {
            for i in 0..s {
                out.push(polyspace::independence_theorem3(x, i)?);
            }
        }
        out.push(polyspace::bbs_check(x)?);
    }
    Ok(out)
}

fn analyze(input: &PathBuf, with_certs: bool, format: Format) -> Result<String, Failure> {
    let cfg = ConfigFile::from_json(&read_input(input)?)?.to_configuration()?;
    let report = invariants::analyze(&cfg)?;
    let certs = if with_certs { certificates(&cfg)? } else { Vec::new() };
    let json = ReportJson::new(&report, certs);
    Ok(match format {
        Format::Json => json.to_json(),
        Format::Text => json.to_text(),
    })
}

fn catalog_entry(name: &str, params: [(&str, Option<i64>); 4]) -> Result<String, Failure> {
    let map: BTreeMap<String, i64> = params.iter().filter_map(|(k, v)| v.map(|v| (k.to_string(), v))).collect();
    let entry = catalog::by_name(name, &map)?;
    Ok(ConfigFile::from_entry(&entry).to_json())
}

fn verify(selector: &str, format: Format) -> Result<(String, bool), Failure> {
    let suites = Suite::parse(selector)?;
    let results: Vec<Result<SuiteReport, Error>> = std::thread::scope(|scope| {
        let handles: Vec<_> = suites.iter().map(|&s| scope.spawn(move || s.run())).collect();
        handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
    });
    let reports = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    let pass = reports.iter().all(|r| r.pass);
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&reports).expect("reports serialize"),
        Format::Text => {
            let mut out = String::new();
            for r in &reports {
                let failed = r.failures().count();
                out.push_str(&format!(
                    "{}: {} ({} checks, {} failed)\n",
                    r.suite,
                    if r.pass { "pass" } else { "FAIL" },
                    r.checks.len(),
                    failed
                ));
                for c in r.failures() {
                    out.push_str(&format!("  FAIL {}\n", c.claim));
                }
            }
            out
        }
    };
    Ok((text, pass))
}

fn recover(k: &str, tol: f64) -> Result<String, Failure> {
    let ks = k
        .split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|e| Error::Parse(format!("k value `{}`: {}", t.trim(), e))))
        .collect::<Result<Vec<_>, _>>()?;
    let gamma = invariants::recover_distances(&ks, tol)?;
    Ok(gamma.iter().map(|&g| field::format_sig(g, 12)).collect::<Vec<_>>().join(", "))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.out.as_ref();
    let result = match &cli.command {
        Command::Analyze { input, certificates } => analyze(input, *certificates, cli.format).map(|t| (t, true)),
        Command::Catalog { name, n, d, q, w } => {
            catalog_entry(name, [("n", *n), ("d", *d), ("q", *q), ("w", *w)]).map(|t| (t, true))
        }
        Command::Verify { suite } => verify(suite, cli.format),
        Command::Recover { k, tol } => recover(k, *tol).map(|t| (t, true)),
    };
    let result = result.and_then(|(text, pass)| {
        write_output(out, &text)?;
        if pass {
            Ok(())
        } else {
            Err(Failure::Verification("one or more checks failed".into()))
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("{}", serde_json::json!({ "error": "verification_failed", "message": msg }));
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("{}", serde_json::json!({ "error": error_kind(&e), "message": e.to_string() }));
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recover_formats_twelve_digits() {
        assert_eq!(recover("2, -1", 1e-9).ok().unwrap(), "0.5, 1");
        assert!(matches!(recover("2,x", 1e-9), Err(Failure::Input(Error::Parse(_)))));
        assert!(matches!(recover("2,-1", -1.0), Err(Failure::Input(_))));
    }

    #[test]
    fn catalog_params_are_forwarded() {
        let text = catalog_entry("johnson", [("n", Some(5)), ("d", None), ("q", None), ("w", Some(2))]).ok().unwrap();
        let f = ConfigFile::from_json(&text).unwrap();
        assert_eq!(f.data.len(), 10);
    }
}
