use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};
use posetsat::construction::{build_saturated_family_with, Construction, Options, Ordering};
use posetsat::export::family_to_dot;
use posetsat::oracle::{
    enumerate_saturated, exact_sat_star, DEFAULT_BUDGET, ENUMERATE_MAX_N, EXACT_MAX_N,
};
use posetsat::verifier::{check_saturated, legs_certificate_with, Codomain, CopyJson, Violation};
use posetsat::{Error, Family, Poset};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "posetsat", version, about = "Induced poset saturation in the Boolean lattice")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the lantern family that is induced K_{s,t}-saturated on [n].
    Construct {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        s: u32,
        #[arg(long)]
        t: u32,
        /// Write the family JSON here instead of stdout.
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
        /// Print the size accounting table.
        #[arg(long)]
        report: bool,
        /// Shuffle the greedy order of the bounded part with this seed.
        #[arg(long, value_name = "SEED")]
        randomize_f5_seed: Option<u64>,
    },
    /// Check that a family is induced K_{s,t}-free and saturated. Exits 1 if not.
    Verify {
        #[arg(long, value_name = "PATH")]
        family: PathBuf,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
        /// Write one copy through each missing set to this file.
        #[arg(long, value_name = "PATH")]
        witnesses: Option<PathBuf>,
    },
    /// Check the n+1 lower-bound certificate for a poset with legs. Exits 1 if invalid.
    Certify {
        #[arg(long, value_name = "PATH")]
        family: PathBuf,
        #[arg(long, value_name = "PATH")]
        poset: PathBuf,
        /// Map into F minus the empty and full sets (bound min(2^n, n+2)).
        #[arg(long)]
        proper: bool,
    },
    /// Exact minimum size of an induced P-saturated family on [n] (n <= 5; enumeration n <= 4).
    Exact {
        #[arg(long, value_parser = clap::value_parser!(u32).range(0..=EXACT_MAX_N as i64))]
        n: u32,
        #[arg(long, value_name = "PATH")]
        poset: PathBuf,
        /// List every saturated family of size at most --cap.
        #[arg(long, requires = "cap")]
        enumerate: bool,
        #[arg(long, requires = "enumerate")]
        cap: Option<usize>,
        /// Search node budget.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Graphviz DOT for a family (Hasse diagram) or a poset.
    #[command(group(ArgGroup::new("input").required(true).args(["family", "poset"])))]
    Export {
        #[arg(long, value_name = "PATH")]
        family: Option<PathBuf>,
        #[arg(long, value_name = "PATH")]
        poset: Option<PathBuf>,
        /// Write here instead of stdout.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
}

#[derive(Serialize)]
struct WitnessFile {
    v: u32,
    n: u32,
    s: usize,
    t: usize,
    witnesses: Vec<WitnessEntry>,
}

#[derive(Serialize)]
struct WitnessEntry {
    missing: Vec<u32>,
    #[serde(flatten)]
    copy: CopyJson,
}

enum Outcome {
    Ok,
    Failed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Defect(_) | Error::CertificateInvalid(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(command: Command) -> posetsat::Result<Outcome> {
    match command {
        Command::Construct { n, s, t, json, report, randomize_f5_seed } => {
            let options = Options {
                f5: randomize_f5_seed.map_or(Ordering::Canonical, Ordering::Shuffled),
                ..Options::default()
            };
            let con = build_saturated_family_with(n, s, t, options)?;
            let text = con.family.to_json_string();
            match &json {
                Some(path) => write_file(path, &text)?,
                None => print!("{text}"),
            }
            if report {
                let table = report_table(&con);
                // keep stdout pure JSON when the family goes there
                if json.is_some() {
                    print!("{table}");
                } else {
                    eprint!("{table}");
                }
            }
            Ok(Outcome::Ok)
        }
        Command::Verify { family, s, t, witnesses } => {
            let fam = read_family(&family)?;
            let report = check_saturated(&fam, s, t);
            println!("n = {}, |F| = {}, K_{{{s},{t}}}", fam.n(), fam.len());
            println!("free: {}", report.free);
            println!("missing sets checked: {}", report.missing_checked);
            for v in report.violations.iter().take(10) {
                match v {
                    Violation::CopyInside(c) => println!("copy inside F: {:?}", c.to_json()),
                    Violation::NotSaturatedAt(x) => println!("no copy through {x}"),
                }
            }
            if report.violations.len() > 10 {
                println!("... {} violations in total", report.violations.len());
            }
            println!("saturated: {}", report.saturated);
            if let Some(path) = witnesses {
                let file = WitnessFile {
                    v: 1,
                    n: fam.n(),
                    s,
                    t,
                    witnesses: report
                        .witnesses
                        .iter()
                        .map(|(x, c)| WitnessEntry { missing: x.elements(), copy: c.to_json() })
                        .collect(),
                };
                write_file(&path, &(serde_json::to_string(&file)? + "\n"))?;
            }
            Ok(if report.saturated { Outcome::Ok } else { Outcome::Failed })
        }
        Command::Certify { family, poset, proper } => {
            let fam = read_family(&family)?;
            let p = read_poset(&poset)?;
            let codomain = if proper { Codomain::Proper } else { Codomain::NonEmpty };
            let cert = legs_certificate_with(&fam, &p, codomain)?;
            println!("legs: {} {}", cert.legs.0, cert.legs.1);
            for (x, image) in &cert.f_map {
                match cert.partners.get(x) {
                    Some(c) => println!("f({x}) = {image}  (partner {c})"),
                    None => println!("f({x}) = {image}"),
                }
            }
            for f in &cert.failures {
                println!("failure: {f}");
            }
            println!("|F| = {}, certified bound {}", cert.family_size, cert.lower_bound);
            println!("valid: {}", cert.valid);
            Ok(if cert.valid { Outcome::Ok } else { Outcome::Failed })
        }
        Command::Exact { n, poset, enumerate, cap, budget } => {
            let p = read_poset(&poset)?;
            if enumerate {
                if n > ENUMERATE_MAX_N {
                    return Err(Error::Usage(format!("enumeration is capped at n <= {ENUMERATE_MAX_N}")));
                }
                let fams = enumerate_saturated(n, &p, cap.expect("clap requires cap"))?;
                for f in &fams {
                    print!("{}", f.to_json_string());
                }
                eprintln!("{} saturated families", fams.len());
                return Ok(Outcome::Ok);
            }
            let r = exact_sat_star(n, &p, budget)?;
            match r.value {
                Some(v) if !r.exhausted => {
                    println!("{v}");
                    eprintln!(
                        "{} minimum families{}, {} nodes",
                        r.witnesses.len(),
                        if r.truncated { " (truncated)" } else { "" },
                        r.nodes
                    );
                    Ok(Outcome::Ok)
                }
                _ => {
                    println!("unknown");
                    eprintln!("budget exhausted after {} nodes; value >= {}", r.nodes, r.lower_bound);
                    Ok(Outcome::Failed)
                }
            }
        }
        Command::Export { family, poset, out } => {
            let dot = match (family, poset) {
                (Some(f), _) => family_to_dot(&read_family(&f)?),
                (_, Some(p)) => read_poset(&p)?.to_dot(),
                (None, None) => unreachable!("clap requires one input"),
            };
            match out {
                Some(path) => write_file(&path, &dot)?,
                None => print!("{dot}"),
            }
            Ok(Outcome::Ok)
        }
    }
}

fn report_table(con: &Construction) -> String {
    let p = &con.parts;
    let (s, t) = con.oriented();
    let mut rows = vec![
        ("F1", p.f1.len().to_string()),
        ("F2", p.f2.len().to_string()),
        ("F3", p.f3.len().to_string()),
        ("F4", p.f4.len().to_string()),
        ("F5 (greedy, may overlap)", con.f5.len().to_string()),
        ("|F|", con.family.len().to_string()),
        ("coefficient", con.coefficient.to_string()),
        ("coefficient*n", con.linear_bound().to_string()),
        ("observed constant c", con.constant_observed.to_string()),
        ("bound coefficient*n + c", (con.linear_bound() + con.constant_observed as u64).to_string()),
        ("bound coefficient*n + |F5|", con.bound().to_string()),
        ("|G1|, |G2|", format!("{}, {}", con.g1_size, con.g2_size)),
    ];
    if con.mirrored {
        rows.push(("built as complement of", format!("K_{{{s},{t}}}")));
    }
    let mut out = format!("n = {}, K_{{{},{}}}\n", con.n, con.s, con.t);
    for (k, v) in rows {
        out.push_str(&format!("{k:<30}{v}\n"));
    }
    out
}

fn read_text(path: &Path) -> posetsat::Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))
}

fn read_family(path: &Path) -> posetsat::Result<Family> {
    Family::from_json_str(&read_text(path)?)
}

fn read_poset(path: &Path) -> posetsat::Result<Poset> {
    Poset::from_json_str(&read_text(path)?)
}

fn write_file(path: &Path, text: &str) -> posetsat::Result<()> {
    let mut f = fs::File::create(path)
        .map_err(|e| Error::Usage(format!("cannot write {}: {e}", path.display())))?;
    f.write_all(text.as_bytes())?;
    Ok(())
}
