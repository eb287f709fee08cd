use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use umbracomb::noncrossing::{enumerate_nc, flag_vectors, maximal_chain_count, NcKind};
use umbracomb::parking::{enumerate_parking, orbit_representatives, volume_poly};
use umbracomb::symfunc::{hstar, pf, pf_k, pf_typeb, HstarMethod};
use umbracomb::{ParkingKind, SymFunc, VolumeKind, VolumeMethod};

use umbracomb_cli::{exit_code, render_json, render_text, run_suite, Suite};

/// Exact computations for parking functions, volume polynomials, umbral
/// evaluations, and noncrossing partition lattices.
#[derive(Parser)]
#[command(name = "umbracomb", version, about, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TypeArg {
    A,
    B,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Definition,
    ClosedForm,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum HstarArg {
    Formula,
    Inversion,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ObjectArg {
    /// Classical parking functions.
    Park,
    /// Type B parking functions (all of [n]^n).
    ParkB,
    /// k-parking functions (requires --k).
    ParkK,
    /// Orbits of parking functions: the nondecreasing ones.
    Orbits,
    /// Noncrossing partitions of [n].
    Nc,
    /// k-divisible noncrossing partitions of [kn] (requires --k).
    NcK,
    /// Sign-invariant noncrossing partitions of the signed set.
    NcB,
    /// Maximal chains of the noncrossing lattice.
    ChainsNc,
    /// Maximal chains of the type B noncrossing lattice.
    ChainsNcB,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Counts,
    Symfunc,
    Umbral,
    Volume,
    Flags,
    Typeb,
    All,
}

impl SuiteArg {
    fn into_suite(self) -> Suite {
        match self {
            SuiteArg::Counts => Suite::Counts,
            SuiteArg::Symfunc => Suite::Symfunc,
            SuiteArg::Umbral => Suite::Umbral,
            SuiteArg::Volume => Suite::Volume,
            SuiteArg::Flags => Suite::Flags,
            SuiteArg::Typeb => Suite::Typeb,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Parking-function symmetric function in the h-basis.
    Pf {
        /// Degree.
        #[arg(long)]
        n: u32,
        /// k-parking variant (type A only).
        #[arg(long)]
        k: Option<u32>,
        /// Coxeter type.
        #[arg(long = "type", value_enum, default_value = "a")]
        r#type: TypeArg,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Volume polynomial as a type aggregate.
    Volume {
        #[arg(long)]
        n: u32,
        #[arg(long = "type", value_enum, default_value = "a")]
        r#type: TypeArg,
        /// How to compute the aggregate.
        #[arg(long, value_enum, default_value = "closed-form")]
        kind: MethodArg,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Macdonald's inverse-system symmetric function.
    Hstar {
        #[arg(long)]
        n: u32,
        /// Which route to use.
        #[arg(long, value_enum, default_value = "formula")]
        kind: HstarArg,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Count a combinatorial family by exhaustive enumeration.
    Count {
        #[arg(long, value_enum)]
        object: ObjectArg,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Flag f- and h-vectors of the noncrossing lattice on [n+1].
    Flags {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Run a verification suite and report each check.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        /// Upper bound for the per-check parameter (self-clamped).
        #[arg(long = "max-n", default_value_t = 5, value_parser = clap::value_parser!(u32).range(1..))]
        max_n: u32,
        /// Worker threads across independent checks.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=64))]
        jobs: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
}

fn usage_error(message: &str) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(2)
}

/// Truncation order for the umbral checks: UMBRACOMB_ORDER or 12.
fn resolve_order() -> Result<usize, String> {
    match std::env::var("UMBRACOMB_ORDER") {
        Err(std::env::VarError::NotPresent) => Ok(12),
        Err(std::env::VarError::NotUnicode(_)) => {
            Err("UMBRACOMB_ORDER must be valid unicode".into())
        }
        Ok(raw) => match raw.parse::<usize>() {
            Ok(order) if (1..=16).contains(&order) => Ok(order),
            _ => Err(format!(
                "UMBRACOMB_ORDER must be an integer in 1..=16, got {raw:?}"
            )),
        },
    }
}

fn print_symfunc(f: &SymFunc, format: FormatArg) {
    match format {
        FormatArg::Text => println!("{f}"),
        FormatArg::Json => println!("{}", serde_json::to_string(&f.to_json()).expect("serializes")),
    }
}

fn run_pf(n: u32, k: Option<u32>, r#type: TypeArg, format: FormatArg) -> ExitCode {
    if n < 1 || n > 10 {
        return usage_error("pf supports --n in 1..=10");
    }
    let f = match (r#type, k) {
        (TypeArg::A, None) => pf(n),
        (TypeArg::A, Some(k)) => {
            if !(1..=4).contains(&k) {
                return usage_error("pf supports --k in 1..=4");
            }
            if n > 8 {
                return usage_error("pf with --k supports --n in 1..=8");
            }
            match pf_k(n, k) {
                Ok(f) => f,
                Err(e) => return usage_error(&e.to_string()),
            }
        }
        (TypeArg::B, None) => match pf_typeb(n) {
            Ok(f) => f,
            Err(e) => return usage_error(&e.to_string()),
        },
        (TypeArg::B, Some(_)) => {
            return usage_error("--k applies to type a only");
        }
    };
    print_symfunc(&f, format);
    ExitCode::SUCCESS
}

fn run_volume(n: u32, r#type: TypeArg, kind: MethodArg, format: FormatArg) -> ExitCode {
    let cap = match kind {
        MethodArg::Definition => 6,
        MethodArg::ClosedForm => 12,
    };
    if n < 1 || n > cap {
        return usage_error(&format!("volume supports --n in 1..={cap} for this kind"));
    }
    let volume_kind = match r#type {
        TypeArg::A => VolumeKind::A,
        TypeArg::B => VolumeKind::B,
    };
    let method = match kind {
        MethodArg::Definition => VolumeMethod::Definition,
        MethodArg::ClosedForm => VolumeMethod::ClosedForm,
    };
    let aggregate = volume_poly(n, volume_kind, method);
    match format {
        FormatArg::Text => println!("{aggregate}"),
        FormatArg::Json => println!(
            "{}",
            serde_json::to_string(&aggregate.to_json()).expect("serializes")
        ),
    }
    ExitCode::SUCCESS
}

fn run_hstar(n: u32, kind: HstarArg, format: FormatArg) -> ExitCode {
    if n < 1 || n > 8 {
        return usage_error("hstar supports --n in 1..=8");
    }
    let method = match kind {
        HstarArg::Formula => HstarMethod::LagrangeFormula,
        HstarArg::Inversion => HstarMethod::SeriesInversion,
    };
    match hstar(n, method) {
        Ok(f) => {
            print_symfunc(&f, format);
            ExitCode::SUCCESS
        }
        Err(e) => usage_error(&e.to_string()),
    }
}

fn run_count(object: ObjectArg, n: u32, k: Option<u32>, format: FormatArg) -> ExitCode {
    if n < 1 {
        return usage_error("count supports --n >= 1");
    }
    let needs_k = matches!(object, ObjectArg::ParkK | ObjectArg::NcK);
    if needs_k && k.is_none() {
        return usage_error("this object requires --k");
    }
    if !needs_k && k.is_some() {
        return usage_error("--k does not apply to this object");
    }
    let count: u64 = match object {
        ObjectArg::Park => {
            if n > 7 {
                return usage_error("count park supports --n in 1..=7");
            }
            enumerate_parking(n, ParkingKind::Classical).len() as u64
        }
        ObjectArg::ParkB => {
            if n > 7 {
                return usage_error("count park-b supports --n in 1..=7");
            }
            enumerate_parking(n, ParkingKind::TypeB).len() as u64
        }
        ObjectArg::ParkK => {
            let k = k.expect("checked above");
            if k < 1 || k * n > 12 {
                return usage_error("count park-k supports k >= 1 with k*n <= 12");
            }
            enumerate_parking(n, ParkingKind::KParking(k)).len() as u64
        }
        ObjectArg::Orbits => {
            if n > 10 {
                return usage_error("count orbits supports --n in 1..=10");
            }
            orbit_representatives(n).len() as u64
        }
        ObjectArg::Nc => {
            if n > 9 {
                return usage_error("count nc supports --n in 1..=9");
            }
            enumerate_nc(n, NcKind::A).len() as u64
        }
        ObjectArg::NcK => {
            let k = k.expect("checked above");
            if k < 1 || k * n > 8 {
                return usage_error("count nc-k supports k >= 1 with k*n <= 8");
            }
            enumerate_nc(n, NcKind::KDivisible(k)).len() as u64
        }
        ObjectArg::NcB => {
            if n > 4 {
                return usage_error("count nc-b supports --n in 1..=4");
            }
            enumerate_nc(n, NcKind::B).len() as u64
        }
        ObjectArg::ChainsNc => {
            if n > 6 {
                return usage_error("count chains-nc supports --n in 1..=6");
            }
            maximal_chain_count(n, NcKind::A)
        }
        ObjectArg::ChainsNcB => {
            if n > 4 {
                return usage_error("count chains-nc-b supports --n in 1..=4");
            }
            maximal_chain_count(n, NcKind::B)
        }
    };
    match format {
        FormatArg::Text => println!("{count}"),
        FormatArg::Json => {
            let mut obj = serde_json::Map::new();
            let name = object
                .to_possible_value()
                .expect("no skipped variants")
                .get_name()
                .to_string();
            obj.insert("object".into(), name.into());
            obj.insert("n".into(), n.into());
            if let Some(k) = k {
                obj.insert("k".into(), k.into());
            }
            obj.insert("count".into(), count.into());
            println!(
                "{}",
                serde_json::to_string(&serde_json::Value::Object(obj)).expect("serializes")
            );
        }
    }
    ExitCode::SUCCESS
}

fn run_flags(n: u32, format: FormatArg) -> ExitCode {
    if n < 1 || n > 5 {
        return usage_error("flags supports --n in 1..=5");
    }
    let fv = flag_vectors(n);
    match format {
        FormatArg::Text => {
            for (s, alpha, beta) in fv.entries() {
                let set = s
                    .iter()
                    .map(|r| r.to_string())
                    .collect::<Vec<_>>()
                    .join(",");
                println!("S={{{set}}} alpha={alpha} beta={beta}");
            }
        }
        FormatArg::Json => {
            let mut alpha = serde_json::Map::new();
            let mut beta = serde_json::Map::new();
            for (s, a, b) in fv.entries() {
                let key = s
                    .iter()
                    .map(|r| r.to_string())
                    .collect::<Vec<_>>()
                    .join(",");
                alpha.insert(key.clone(), (*a).into());
                beta.insert(key, (*b).into());
            }
            let mut obj = serde_json::Map::new();
            obj.insert("n".into(), n.into());
            obj.insert("alpha".into(), serde_json::Value::Object(alpha));
            obj.insert("beta".into(), serde_json::Value::Object(beta));
            println!(
                "{}",
                serde_json::to_string(&serde_json::Value::Object(obj)).expect("serializes")
            );
        }
    }
    ExitCode::SUCCESS
}

fn run_verify(suite: SuiteArg, max_n: u32, jobs: u64, format: FormatArg) -> ExitCode {
    let order = match resolve_order() {
        Ok(order) => order,
        Err(message) => return usage_error(&message),
    };
    let reports = run_suite(suite.into_suite(), max_n, jobs as usize, order);
    match format {
        FormatArg::Text => print!("{}", render_text(&reports)),
        FormatArg::Json => println!(
            "{}",
            serde_json::to_string(&render_json(&reports)).expect("serializes")
        ),
    }
    ExitCode::from(exit_code(&reports))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Pf {
            n,
            k,
            r#type,
            format,
        } => run_pf(n, k, r#type, format),
        Command::Volume {
            n,
            r#type,
            kind,
            format,
        } => run_volume(n, r#type, kind, format),
        Command::Hstar { n, kind, format } => run_hstar(n, kind, format),
        Command::Count {
            object,
            n,
            k,
            format,
        } => run_count(object, n, k, format),
        Command::Flags { n, format } => run_flags(n, format),
        Command::Verify {
            suite,
            max_n,
            jobs,
            format,
        } => run_verify(suite, max_n, jobs, format),
    }
}
