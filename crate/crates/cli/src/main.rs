use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::Parser;

use keyvar::claims::{emit_report, parse_field, run_manifest, ClaimManifest, Format, RunConfig};

/// Runs claim manifests against the keyvar engines and reports the results.
///
/// Exit status: 0 when no claim fails, 1 when one does, 2 on a usage error,
/// 3 when a claim hit a resource limit under --strict-limits.
#[derive(Parser, Debug)]
#[command(name = "keyvar", version)]
struct Args {
    /// Comma-separated claim ids, or `all`.
    #[arg(long, default_value = "all")]
    run: String,

    /// List the manifest's claims and exit.
    #[arg(long)]
    list: bool,

    /// Coefficient field: a prime, `p` for 32003, or `Q` [default: manifest, else 32003].
    #[arg(long = "char")]
    characteristic: Option<String>,

    /// Global seed [default: manifest, else 1].
    #[arg(long)]
    seed: Option<u64>,

    /// Default sample count for sampling claims.
    #[arg(long, default_value_t = 100)]
    samples: usize,

    #[arg(long, default_value = "text", value_parser = ["text", "json"])]
    format: String,

    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Exit with status 3 if any claim hit a resource limit.
    #[arg(long)]
    strict_limits: bool,

    /// Manifest file; the built-in `paper-core` manifest when omitted.
    #[arg(long)]
    manifest: Option<PathBuf>,

    /// Worker threads (0 = one per core).
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

/// Errors here are the caller's fault and map to exit status 2.
fn prepare(args: &Args) -> Result<(ClaimManifest, RunConfig)> {
    let mut manifest = match &args.manifest {
        Some(path) => std::fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))?
            .parse::<ClaimManifest>()?,
        None => ClaimManifest::builtin("paper-core")?,
    };
    if args.run != "all" {
        let ids: Vec<String> = args.run.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
        let unknown: Vec<&String> = ids.iter().filter(|i| !manifest.claims.iter().any(|c| &c.id == *i)).collect();
        if !unknown.is_empty() {
            bail!("unknown claim ids: {unknown:?}");
        }
        manifest.select(&ids);
    }
    let mut cfg = RunConfig::from_manifest(&manifest)?;
    if let Some(c) = &args.characteristic {
        cfg.field = parse_field(c)?;
    }
    if let Some(s) = args.seed {
        cfg.seed = s;
    }
    cfg.samples = args.samples;
    cfg.jobs = args.jobs;
    Ok((manifest, cfg))
}

fn main() -> ExitCode {
    let args = Args::parse();
    let (manifest, cfg) = match prepare(&args) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("keyvar: {e:#}");
            return ExitCode::from(2);
        }
    };
    if args.list {
        for c in &manifest.claims {
            println!("{:<6} {:<34} {}", c.id, c.op, c.anchor);
        }
        return ExitCode::SUCCESS;
    }
    let format: Format = args.format.parse().expect("clap restricts the value");
    let report = run_manifest(&manifest, &cfg);
    if let Err(e) = emit_report(&report, format, args.out.as_deref()) {
        eprintln!("keyvar: writing report: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(report.exit_code(args.strict_limits) as u8)
}
