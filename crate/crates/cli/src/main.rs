use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};

use weylcert_cli::claims::{self, ClaimResult};
use weylcert_cli::output;
use weylcert_core::criteria::{self, ScanOptions};
use weylcert_core::excision::Hyperplane;
use weylcert_core::rootsys::{Family, RootSystem, Weight, WeightSpec};
use weylcert_core::weightset::{self, weight_system};

/// Exact computations on B/C/D root systems: orbits, weight systems,
/// excision counts, and non-smoothness certificates.
#[derive(Parser)]
#[command(name = "weylcert", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SystemArgs {
    /// Family letter: B, C, or D.
    family: char,
    /// Rank (B: >= 2, C: >= 3, D: >= 4).
    rank: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Root counts, Weyl order, lattice index, simple roots, boundary
    /// subset, and the family of corank-two subsystems.
    Info {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long)]
        json: bool,
    },
    /// The full weight system of a dominant weight: counts, multiplicities,
    /// dimension, and the orthogonality indicator.
    Weights {
        #[command(flatten)]
        system: SystemArgs,
        /// Weight as coordinates ("1/2,1/2,1/2") or coefficients ("fw:0,0,1").
        lambda: String,
        /// List every weight with its multiplicity.
        #[arg(long)]
        full: bool,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate a certificate: a witness subset of the extremal orbit,
    /// separated by semicolons.
    Certify {
        #[command(flatten)]
        system: SystemArgs,
        lambda: String,
        /// Witness weights, e.g. "1/2,-3/2,1/2;1/2,1/2,-3/2".
        omega: String,
        #[arg(long)]
        json: bool,
    },
    /// Decide every dominant weight up to a coefficient-sum bound:
    /// obstructed, survivor, or inconclusive.
    Scan {
        #[command(flatten)]
        system: SystemArgs,
        /// Bound on the fundamental-coefficient sum.
        #[arg(long, default_value_t = 2)]
        sum: u32,
        /// Cap on the witness subset size (default: rank + 1).
        #[arg(long)]
        omega_max: Option<usize>,
        /// Search budget in visited nodes; 0 makes everything inconclusive.
        #[arg(long, default_value_t = 2_000_000)]
        budget: u64,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        csv: bool,
        /// Include per-weight runtimes (makes JSON output nondeterministic).
        #[arg(long)]
        timing: bool,
    },
    /// Run the claims manifest and report pass/fail per claim.
    VerifyPaper {
        /// Restrict to one family letter.
        #[arg(long)]
        only: Option<char>,
        /// Also run the brute-force oracle cross-checks.
        #[arg(long)]
        with_oracle: bool,
        /// Seed for the randomized oracle cross-checks.
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Alternative manifest file (defaults to the built-in table).
        #[arg(long)]
        manifest: Option<std::path::PathBuf>,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        csv: bool,
    },
}

fn parse_system(args: &SystemArgs) -> anyhow::Result<RootSystem> {
    let family = Family::from_letter(args.family)
        .ok_or_else(|| anyhow!("unknown family {:?}; expected B, C, or D", args.family))?;
    Ok(RootSystem::new(family, args.rank)?)
}

fn main() -> ExitCode {
    // Die quietly when the consumer of a pipe goes away.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Info { system, json } => {
            let rs = parse_system(&system)?;
            let info = output::info_json(&rs);
            if json {
                println!("{}", serde_json::to_string_pretty(&info)?);
            } else {
                println!("type {}{}", info.family, info.rank);
                println!("roots: {} ({} positive)", info.roots, info.positive_roots);
                println!("Weyl order: {}", info.weyl_order);
                println!(
                    "[P:Q] = {} (invariant factors {:?})",
                    info.pq_index, info.snf_divisors
                );
                println!("simple roots:");
                for (i, a) in info.simple_roots.iter().enumerate() {
                    println!("  alpha_{} = {}", i + 1, a);
                }
                println!("fundamental weights:");
                for (i, w) in info.fundamental_weights.iter().enumerate() {
                    println!("  phi_{} = {}", i + 1, w);
                }
                println!("boundary subset: {{{}}}", info.boundary.join("; "));
                if !info.pc_members.is_empty() {
                    let parts: Vec<String> = info
                        .pc_members
                        .iter()
                        .map(|m| {
                            let names: Vec<String> =
                                m.iter().map(|i| format!("alpha_{i}")).collect();
                            format!("{{{}}}", names.join(", "))
                        })
                        .collect();
                    println!("corank-two subsystems: {}", parts.join(", "));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Weights {
            system,
            lambda,
            full,
            json,
        } => {
            let rs = parse_system(&system)?;
            let lambda = WeightSpec::parse(&lambda)?.resolve(&rs)?;
            let ws = weight_system(&rs, &lambda)?;
            let dim = weightset::weyl_dimension(&rs, &lambda)?.to_string();
            let payload = output::weights_json(&ws, &dim, full);
            if json {
                println!("{}", serde_json::to_string_pretty(&payload)?);
            } else {
                println!(
                    "{}{}  lambda = {}  (fw {:?})",
                    payload.family, payload.rank, payload.lambda, payload.lambda_fw
                );
                println!("orbit size:        {}", payload.orbit_count);
                println!("distinct weights:  {}", payload.distinct_weights);
                println!("with multiplicity: {}", payload.total_multiplicity);
                println!("dimension:         {}", payload.dimension);
                println!("delta:             {}", payload.delta);
                if let Some(weights) = payload.weights {
                    for e in weights {
                        println!("  {}  x{}", e.weight, e.multiplicity);
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Certify {
            system,
            lambda,
            omega,
            json,
        } => {
            let rs = parse_system(&system)?;
            let lambda = WeightSpec::parse(&lambda)?.resolve(&rs)?;
            let ws = weight_system(&rs, &lambda)?;
            let omega: Vec<Weight> = omega
                .split(';')
                .map(|s| Ok(WeightSpec::parse(s.trim())?.resolve(&rs)?))
                .collect::<anyhow::Result<_>>()?;
            let cert = criteria::check_nosm(&ws, &omega)?;
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&output::certificate_json(&rs, &cert))?
                );
            } else {
                println!("lambda = {}  delta = {}", cert.lambda, cert.delta);
                for w in &cert.omega {
                    println!("  omega: {w}");
                }
                if let Some(normal) = &cert.normal {
                    println!(
                        "span = {}",
                        output::hyperplane_str(&Hyperplane::from_normal(normal.clone())?)
                    );
                }
                println!(
                    "counts: off-H set {}, multiset {}, orbit {}, roots {}",
                    cert.weights_off_set,
                    cert.weights_off_multiset,
                    cert.orbit_off,
                    cert.roots_off
                );
                println!("inequality: {} > {}", cert.lhs, cert.rhs);
                println!("verdict: {}", output::verdict_str(&cert));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Scan {
            system,
            sum,
            omega_max,
            budget,
            json,
            csv,
            timing,
        } => {
            let rs = parse_system(&system)?;
            let opts = ScanOptions {
                coeff_sum_bound: sum,
                omega_max,
                budget,
                use_templates: true,
            };
            let (report, runtimes) = run_scan(&rs, &opts)?;
            if budget == 0 {
                eprintln!("warning: zero budget, every weight is inconclusive");
            }
            if json {
                let payload =
                    output::scan_report_json(&report, timing.then_some(runtimes.as_slice()));
                println!("{}", serde_json::to_string_pretty(&payload)?);
            } else if csv {
                print!("{}", output::scan_csv(&report));
            } else {
                println!(
                    "scan {}{} with coefficient sum <= {}",
                    report.family, report.rank, report.coeff_sum_bound
                );
                for e in &report.entries {
                    let polar = if e.listed_polar { "  (listed polar)" } else { "" };
                    println!(
                        "  fw {:?}  {}  [{}]{}",
                        e.fw,
                        e.verdict.name(),
                        e.mechanism,
                        polar
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyPaper {
            only,
            with_oracle,
            seed,
            manifest,
            json,
            csv,
        } => {
            let text = match &manifest {
                Some(path) => std::fs::read_to_string(path)
                    .with_context(|| format!("cannot read {}", path.display()))?,
                None => weylcert_cli::BUILTIN_MANIFEST.to_string(),
            };
            let manifest = claims::parse_manifest(&text)?;
            let mut results = claims::run_manifest(&manifest, only);
            if with_oracle {
                results.extend(claims::oracle_results(seed));
            }
            let failed = results.iter().filter(|r| !r.passed).count();
            if json {
                print_claims_json(&results)?;
            } else if csv {
                print_claims_csv(&results);
            } else {
                for r in &results {
                    print_claim_line(r);
                }
                println!(
                    "{} claims: {} passed, {} failed",
                    results.len(),
                    results.len() - failed,
                    failed
                );
            }
            Ok(if failed == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

/// Runs the scan, fanning the independent weights out across the number of
/// workers named by WEYLCERT_THREADS (default 1). Output order is
/// deterministic regardless of the worker count.
fn run_scan(
    rs: &RootSystem,
    opts: &ScanOptions,
) -> anyhow::Result<(criteria::ScanReport, Vec<u64>)> {
    let lambdas = criteria::enumerate_dominant(rs, opts.coeff_sum_bound);
    let threads: usize = std::env::var("WEYLCERT_THREADS")
        .ok()
        .and_then(|v| v.parse().ok())
        .filter(|&n| n > 0)
        .unwrap_or(1);
    let n = lambdas.len();
    let mut entries: Vec<Option<(criteria::ScanEntry, u64)>> = Vec::new();
    entries.resize_with(n, || None);
    if threads <= 1 {
        for (slot, (fw, _)) in entries.iter_mut().zip(&lambdas) {
            let start = Instant::now();
            let entry = criteria::scan_lambda(rs, fw, opts)?;
            *slot = Some((entry, start.elapsed().as_millis() as u64));
        }
    } else {
        type ScanSlot = std::sync::Mutex<Option<anyhow::Result<(criteria::ScanEntry, u64)>>>;
        let next = std::sync::atomic::AtomicUsize::new(0);
        let slots: Vec<ScanSlot> = (0..n).map(|_| std::sync::Mutex::new(None)).collect();
        std::thread::scope(|scope| {
            for _ in 0..threads.min(n) {
                scope.spawn(|| loop {
                    let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                    if i >= n {
                        break;
                    }
                    let start = Instant::now();
                    let out = criteria::scan_lambda(rs, &lambdas[i].0, opts)
                        .map(|e| (e, start.elapsed().as_millis() as u64))
                        .map_err(anyhow::Error::from);
                    *slots[i].lock().unwrap() = Some(out);
                });
            }
        });
        for (slot, cell) in entries.iter_mut().zip(slots) {
            *slot = Some(cell.into_inner().unwrap().expect("worker finished")?);
        }
    }
    let mut report_entries = Vec::with_capacity(n);
    let mut runtimes = Vec::with_capacity(n);
    for slot in entries.into_iter().flatten() {
        report_entries.push(slot.0);
        runtimes.push(slot.1);
    }
    Ok((
        criteria::ScanReport {
            family: rs.family(),
            rank: rs.rank(),
            coeff_sum_bound: opts.coeff_sum_bound,
            entries: report_entries,
        },
        runtimes,
    ))
}

fn print_claim_line(r: &ClaimResult) {
    if r.passed {
        println!("PASS {}  {}", r.id, r.computed);
    } else {
        println!("FAIL {}  expected [{}] got [{}]", r.id, r.expected, r.computed);
    }
}

fn print_claims_csv(results: &[ClaimResult]) {
    println!("id,criterion,status,expected,computed");
    for r in results {
        let esc = |s: &str| s.replace(',', ";");
        println!(
            "{},{},{},{},{}",
            r.id,
            r.criterion,
            if r.passed { "pass" } else { "fail" },
            esc(&r.expected),
            esc(&r.computed)
        );
    }
}

fn print_claims_json(results: &[ClaimResult]) -> anyhow::Result<()> {
    #[derive(serde::Serialize)]
    struct Line<'a> {
        id: &'a str,
        criterion: u32,
        status: &'a str,
        expected: &'a str,
        computed: &'a str,
        about: &'a str,
    }
    let lines: Vec<Line> = results
        .iter()
        .map(|r| Line {
            id: &r.id,
            criterion: r.criterion,
            status: if r.passed { "pass" } else { "fail" },
            expected: &r.expected,
            computed: &r.computed,
            about: &r.about,
        })
        .collect();
    println!("{}", serde_json::to_string_pretty(&lines)?);
    Ok(())
}
