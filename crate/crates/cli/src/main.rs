use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use pgm_core::analysis::{exponent, exponent_check_p2, lower_central_series, maximal_class_frame_with_choice};
use pgm_core::harness::{
    in_theorem_range, load_fixture, multiplier, run_suite, GroupReport, Method, Options, Status, Suite,
};
use pgm_core::{Error, NuGroup, Subgroup};

#[derive(Parser)]
#[command(name = "pgm", version, about = "Schur multipliers of finite p-groups via nu(G)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Common {
    /// Presentation file in the `pcgroup` format.
    file: PathBuf,
    /// Print a JSON report on stdout.
    #[arg(long)]
    json: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random tuples per sampled identity.
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    /// Subgroups up to this order are enumerated exactly.
    #[arg(long, default_value_t = 1_000_000)]
    max_enum: u64,
}

impl Common {
    fn options(&self) -> Options {
        Options { seed: self.seed, samples: self.samples, max_enum: self.max_enum, ..Options::default() }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Order, lower central series, exponent and maximal-class data.
    Analyze {
        #[command(flatten)]
        common: Common,
    },
    /// Prints a consistent presentation of nu(G).
    Nu {
        #[command(flatten)]
        common: Common,
        /// Report the order added at each class of the quotient computation.
        #[arg(long)]
        trace_classes: bool,
    },
    /// Abelian invariants of M(G).
    Multiplier {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "nu", value_parser = parse_method)]
        method: Method,
    },
    /// Runs verification suites (all applicable ones unless `--suite` is given).
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_parser = parse_suite)]
        suite: Option<Suite>,
    },
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Exit status 2: the input could not be used at all.
fn is_input_error(e: &Error) -> bool {
    matches!(e, Error::Parse { .. } | Error::Input(_) | Error::Io(_) | Error::CapExceeded { .. } | Error::Corpus(_))
}

fn print_json(text: serde_json::Result<String>) {
    println!("{}", text.expect("reports serialize"));
}

fn analyze(common: &Common) -> pgm_core::Result<bool> {
    let f = load_fixture(&common.file)?;
    let g = &f.pres;
    let policy = common.options().policy();
    let report = GroupReport::new(&f.name, g);
    let lcs: Vec<usize> = lower_central_series(g).orders();
    let exp = exponent(&Subgroup::whole(g), &policy);
    let p2 = if report.maximal_class && g.prime() != 2 && g.ngens() >= 4 {
        let frame = maximal_class_frame_with_choice(g, 0, &policy)?;
        Some(exponent_check_p2(&frame, &policy).0)
    } else {
        None
    };
    let consistent = g.is_consistent();
    if common.json {
        print_json(serde_json::to_string_pretty(&json!({
            "group": report.group,
            "order": report.order,
            "class": report.class,
            "maximal_class": report.maximal_class,
            "consistent": consistent,
            "lower_central_orders": lcs,
            "exponent": { "value": exp.value, "sampled": exp.sampled },
            "exponent_p2": p2.as_ref().map(|e| json!({ "value": e.value, "sampled": e.sampled })),
        })));
    } else {
        println!("group          {}", report.group);
        println!("order          {}", report.order);
        println!("consistent     {consistent}");
        println!("class          {}", report.class);
        println!("maximal class  {}", report.maximal_class);
        let lcs_text: Vec<String> = lcs.iter().map(|e| format!("{}^{e}", g.prime())).collect();
        println!("gamma orders   {}", lcs_text.join(" > "));
        println!("exponent       {}{}", exp.value, if exp.sampled { " (sampled)" } else { "" });
        if let Some(e) = p2 {
            println!("exp P_2        {}{}", e.value, if e.sampled { " (sampled)" } else { "" });
        }
    }
    Ok(consistent)
}

fn nu(common: &Common, trace: bool) -> pgm_core::Result<bool> {
    let f = load_fixture(&common.file)?;
    let nu = NuGroup::new(&f.pres)?;
    if trace {
        eprint!("{}", nu.result.trace());
    }
    if common.json {
        print_json(serde_json::to_string_pretty(&json!({
            "group": f.name,
            "order": nu.nu().order().to_string(),
            "class": nu.class(),
            "section_ranks": nu.result.section_ranks.iter().map(|(_, e)| e).collect::<Vec<_>>(),
            "presentation": nu.nu().to_string(),
        })));
    } else {
        print!("{}", nu.nu());
    }
    Ok(true)
}

fn multiplier_cmd(common: &Common, method: Method) -> pgm_core::Result<bool> {
    let f = load_fixture(&common.file)?;
    let mut report = GroupReport::new(&f.name, &f.pres);
    let m = multiplier(&f.pres, method, &common.options())?;
    if common.json {
        report.multiplier = Some(m);
        print_json(serde_json::to_string_pretty(&report));
    } else {
        let text: Vec<String> = m.invariants.iter().map(u64::to_string).collect();
        println!("M({}) = [{}]", f.name, text.join(","));
    }
    Ok(true)
}

fn verify(common: &Common, suite: Option<Suite>) -> pgm_core::Result<bool> {
    let f = load_fixture(&common.file)?;
    let opts = common.options();
    let mut report = GroupReport::new(&f.name, &f.pres);
    report.multiplier = Some(multiplier(&f.pres, Method::Nu, &opts)?);
    // without --suite, the maximal-class suites run only where their hypotheses hold
    let suites: Vec<Suite> = match suite {
        Some(s) => vec![s],
        None => Suite::ALL
            .into_iter()
            .filter(|s| in_theorem_range(&f.pres) || !matches!(s, Suite::Theorem1 | Suite::Theorem2))
            .collect(),
    };
    for s in suites {
        report.suites.push(run_suite(s, &f.name, &f.pres, &f.expected, &opts)?);
    }
    if common.json {
        print_json(serde_json::to_string_pretty(&report));
    } else {
        for r in &report.suites {
            for c in &r.checks {
                let mark = match c.status {
                    Status::Pass => "pass",
                    Status::Sampled => "pass (sampled)",
                    Status::Fail => "FAIL",
                };
                print!("{:<10} {mark:<15} {}", r.suite.name(), c.name);
                if let Some(w) = &c.witness {
                    print!("  [witness: {w}]");
                }
                println!();
            }
        }
        let failed = report.suites.iter().flat_map(|r| r.failures()).count();
        println!("{}: {}", f.name, if failed == 0 { "all checks passed".to_string() } else { format!("{failed} check(s) failed") });
    }
    Ok(report.passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Analyze { common } => analyze(common),
        Command::Nu { common, trace_classes } => nu(common, *trace_classes),
        Command::Multiplier { common, method } => multiplier_cmd(common, *method),
        Command::Verify { common, suite } => verify(common, *suite),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("pgm: {e}");
            ExitCode::from(if is_input_error(&e) { 2 } else { 1 })
        }
    }
}
