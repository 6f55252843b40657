mod args;
mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use config::{Resolver, UsageError};
use output::{manifest_path, write_manifest, write_tables, ErrorRecord, Manifest, RunOutput};

fn dispatch(cmd: &Command, r: &mut Resolver) -> anyhow::Result<RunOutput> {
    match cmd {
        Command::Spectrum(a) => commands::spectrum(a, r),
        Command::Series(a) => commands::series(a, r),
        Command::Radius(a) => commands::radius(a, r),
        Command::Projector(a) => commands::projector(a, r),
        Command::Evolve(a) => commands::evolve(a, r),
        Command::Scan(a) => commands::scan(a, r),
        Command::Resultant(a) => commands::resultant(a, r),
        Command::Pauli(a) => commands::pauli(a, r),
        Command::Resources(a) => commands::resources(a, r),
        Command::Trotter(a) => commands::trotter(a, r),
        Command::LatticeSweep(a) => commands::lattice_sweep(a, r),
        Command::Riemann(a) => commands::riemann(a, r),
    }
}

fn error_kind(e: &anyhow::Error) -> String {
    if let Some(c) = e.downcast_ref::<phi4::Error>() {
        c.kind().to_string()
    } else if e.is::<UsageError>() {
        "usage".into()
    } else {
        "io".into()
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let mut r = Resolver::from_sources(cli.config.as_deref())?;
    let out: PathBuf = r.get("out_dir", cli.out.as_ref().map(|p| p.display().to_string()), ".")?;
    let format: String = r.get("format", cli.json.then_some("csv+json"), "csv")?;
    let json = match format.as_str() {
        "csv" => false,
        "csv+json" | "json" => true,
        other => return Err(UsageError(format!("unknown format '{other}'")).into()),
    };
    let threads: usize = r.get("threads", cli.threads, "0")?;
    if threads > 0 {
        // fails only if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }

    let name = cli.command.name();
    let mut manifest = Manifest::new(name);
    let result = dispatch(&cli.command, &mut r);
    manifest.config = r.resolved().clone();
    match result {
        Ok(o) => {
            manifest.artifacts = write_tables(&out, &o.tables, json)?;
            manifest.summary = o.summary;
            manifest.warnings = o.warnings;
            for w in &manifest.warnings {
                eprintln!("warning: {w}");
            }
            write_manifest(&out, &manifest)?;
            Ok(ExitCode::SUCCESS)
        }
        Err(e) if e.is::<UsageError>() => Err(e),
        Err(e) => {
            eprintln!("error: {e:#}");
            manifest.error = Some(ErrorRecord { kind: error_kind(&e), message: format!("{e:#}") });
            write_manifest(&out, &manifest)?;
            eprintln!("manifest: {}", manifest_path(&out, name).display());
            Ok(ExitCode::from(1))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(c) => c,
        Err(e) if e.is::<UsageError>() => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
