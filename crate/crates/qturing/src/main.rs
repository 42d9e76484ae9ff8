//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when a verification run fails or a simulation
//! errors out, 2 for malformed usage or configuration.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qturing::analytic::{predict, standard_indices, zeno};
use qturing::clusterops::expect_k;
use qturing::config::{
    parse_angle, parse_config, preset_machine, resolve_out_path, IndexSelection, RunConfig,
};
use qturing::machine::{period, run, MachineSpec};
use qturing::records::{sort_records, write_csv, write_file, CorrelationRecord, Format, Source};
use qturing::verify::{run_verify, VerifyReport, VERIFY_TOL};
use qturing::Error;

#[derive(Parser)]
#[command(
    name = "qturing",
    about = "Cyclic quantum Turing machine simulator and verification suite",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate a machine and emit end-of-cycle correlation records.
    Run(RunArgs),
    /// Run the differential verification suite against one machine.
    Verify(VerifyArgs),
    /// Print the head polarization freeze-out value for a ring of M cells.
    Zeno(ZenoArgs),
}

#[derive(Args)]
struct RunArgs {
    /// TOML configuration file.
    #[arg(long, conflicts_with = "preset")]
    config: Option<PathBuf>,
    /// Built-in machine: zeno, coin or cat.
    #[arg(long)]
    preset: Option<String>,
    /// Ring size for --preset.
    #[arg(long, short = 'm')]
    cells: Option<usize>,
    /// Number of cycles (overrides the config file).
    #[arg(long)]
    cycles: Option<u64>,
    /// Write records here instead of stdout (CSV unless it ends in .json).
    #[arg(long, short = 'o')]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// TOML configuration file.
    #[arg(long, conflicts_with = "preset")]
    config: Option<PathBuf>,
    /// Built-in machine: zeno, coin or cat.
    #[arg(long)]
    preset: Option<String>,
    /// Ring size for --preset.
    #[arg(long, short = 'm')]
    cells: Option<usize>,
    /// Rotation angles, e.g. --angles pi/2 0 0 0
    #[arg(long, num_args = 1.., conflicts_with_all = ["config", "preset"])]
    angles: Option<Vec<String>>,
    /// Cycle cap (the verified period wins when smaller).
    #[arg(long, default_value_t = 64)]
    cycles: u64,
    /// Seed for the randomized spot checks.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Offset added to every closed-form value; exercises the failure path.
    #[arg(long, hide = true, default_value_t = 0.0)]
    corrupt_analytic: f64,
}

#[derive(Args)]
struct ZenoArgs {
    /// Ring size M >= 2.
    #[arg(long, short = 'm', default_value_t = 8)]
    cells: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Zeno(args) => cmd_zeno(args),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Config(_) | Error::Io(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn load_machine(
    config: &Option<PathBuf>,
    preset: &Option<String>,
    cells: Option<usize>,
    angles: Option<&[String]>,
) -> qturing::Result<(MachineSpec, Option<RunConfig>)> {
    if let Some(path) = config {
        let text = std::fs::read_to_string(path)?;
        let cfg = parse_config(&text)?;
        return Ok((cfg.spec.clone(), Some(cfg)));
    }
    if let Some(list) = angles {
        let parsed = list
            .iter()
            .map(|s| parse_angle(s))
            .collect::<qturing::Result<Vec<_>>>()?;
        return Ok((MachineSpec::new(parsed)?, None));
    }
    if let Some(name) = preset {
        return Ok((preset_machine(name, cells)?, None));
    }
    Err(Error::Config(
        "choose a machine with --config, --preset or --angles".into(),
    ))
}

fn cmd_run(args: RunArgs) -> qturing::Result<ExitCode> {
    let (spec, cfg) = load_machine(&args.config, &args.preset, args.cells, None)?;
    let cycles = args.cycles.or(cfg.as_ref().map(|c| c.cycles)).unwrap_or(1);
    if cycles < 1 {
        return Err(Error::Config("cycles must be >= 1".into()));
    }
    let indices = match cfg.as_ref().map(|c| &c.indices) {
        Some(IndexSelection::Explicit(v)) => v.clone(),
        _ => standard_indices(spec.num_cells()),
    };

    let steps = spec.num_steps();
    let mut records = Vec::new();
    let mut hook_err = None;
    run(&spec, cycles, |label, psi| {
        if hook_err.is_some() || label.step != steps {
            return;
        }
        for idx in &indices {
            match expect_k(psi, idx) {
                Ok(value) => records.push(CorrelationRecord {
                    cycle: label.cycle,
                    step: label.step,
                    index: idx.clone(),
                    value,
                    source: Source::BruteForce,
                }),
                Err(e) => {
                    hook_err = Some(e);
                    return;
                }
            }
        }
        if !spec.has_overrides() {
            if let Ok(set) = predict(label.cycle, &spec) {
                for rec in set.entries {
                    if indices.contains(&rec.index) {
                        records.push(rec);
                    }
                }
            }
        }
    })?;
    if let Some(e) = hook_err {
        return Err(e);
    }
    sort_records(&mut records);

    let output = args
        .out
        .map(|p| {
            let format = match p.extension().and_then(|e| e.to_str()) {
                Some("json") => Format::Json,
                _ => Format::Csv,
            };
            (resolve_out_path(p), format)
        })
        .or(cfg.and_then(|c| c.output).map(|o| (o.path, o.format)));
    match output {
        Some((path, format)) => {
            write_file(&path, format, &records)?;
            eprintln!("wrote {} records to {}", records.len(), path.display());
        }
        None => write_csv(std::io::stdout().lock(), &records)?,
    }
    Ok(ExitCode::SUCCESS)
}

fn print_report(report: &VerifyReport) {
    match report.period {
        Some(p) => eprintln!("period: {p} cycles (checked {})", report.cycles_checked),
        None => eprintln!(
            "period: none detected (checked {} cycles)",
            report.cycles_checked
        ),
    }
    for f in &report.families {
        let status = if f.pass() { "PASS" } else { "FAIL" };
        let worst = f.worst.as_deref().unwrap_or("-");
        println!(
            "{status} {:22} max residual {:.3e} over {} checks, worst at {worst}",
            f.name, f.max_residual, f.checks
        );
    }
}

fn cmd_verify(args: VerifyArgs) -> qturing::Result<ExitCode> {
    let (spec, cfg) = load_machine(
        &args.config,
        &args.preset,
        args.cells,
        args.angles.as_deref(),
    )?;
    let cycles = cfg
        .map(|c| c.cycles.max(args.cycles))
        .unwrap_or(args.cycles);
    let report = run_verify(&spec, cycles, args.seed, args.corrupt_analytic)?;
    print_report(&report);
    if report.all_pass() {
        println!("verification passed (tolerance {VERIFY_TOL:.1e})");
        Ok(ExitCode::SUCCESS)
    } else {
        let bad: Vec<_> = report
            .families
            .iter()
            .filter(|f| !f.pass())
            .map(|f| f.name)
            .collect();
        eprintln!("verification FAILED in: {}", bad.join(", "));
        Ok(ExitCode::from(1))
    }
}

fn cmd_zeno(args: ZenoArgs) -> qturing::Result<ExitCode> {
    let spec = MachineSpec::zeno(args.cells)?;
    let closed = zeno(args.cells)?;
    let psi = qturing::machine::run_silent(&spec, 1)?;
    let k3 = psi.bloch_vector(0)?.k3;
    let p = period(&spec);
    println!("M = {}", args.cells);
    println!("head K3 after one cycle: {k3:.15}");
    println!("closed form -cos^M(pi/M): {closed:.15}");
    println!("residual: {:.3e}", (k3 - closed).abs());
    if let Some(p) = p {
        println!("machine period: {p} cycles");
    }
    if (k3 - closed).abs() <= VERIFY_TOL {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}
