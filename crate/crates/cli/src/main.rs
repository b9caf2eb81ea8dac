//! `e7dirac`: prints the chamber data, censuses and fixture-derived counts
//! of the Dirac series screening, and runs the acceptance suite.
//!
//! Exit codes: 0 success, 1 verification failure or other error, 2 usage
//! error, 3 missing fixture.

mod table;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dirac_core::atlas::{self, FixtureKind, Records};
use dirac_core::rational::{fmt_rational, parse_rational};
use dirac_core::structure::{InfChar, KType, RANK};
use dirac_core::verify::{Suite, SuiteConfig};
use dirac_core::{norms, screening, Engine, Error};

use table::{tuple, Format, Table};

#[derive(Parser, Debug)]
#[command(name = "e7dirac", version, about = "Exact Dirac series screening for E7(-25)")]
struct Cli {
    /// Directory holding the fixture files.
    #[arg(long, global = true, env = "DIRAC_FIXTURES")]
    fixtures: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "tsv")]
    format: Format,
    /// Largest atlas height in the bounded u-large gap check.
    #[arg(long, global = true, default_value_t = 400, value_parser = clap::value_parser!(i64).range(1..))]
    height_cap: i64,
    /// Coordinate cap for the Φ search; an error is raised if it is reached.
    #[arg(long, global = true, default_value_t = atlas::DEFAULT_COORD_CAP, value_parser = clap::value_parser!(i64).range(1..))]
    coord_cap: i64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The 56 chambers: ρ^(j) and ρ_n^(j) in ambient coordinates.
    Chambers,
    /// Every u-small K-type.
    Usmall,
    /// u-small K-types with gap at least 94.
    Certs,
    /// Dominant integral Λ with 108 ≤ ‖Λ‖² ≤ 469/2.
    Omega,
    /// Φ split by largest coordinate (needs the involution fixture).
    Phi {
        /// Print every member instead of the part sizes.
        #[arg(long)]
        list: bool,
    },
    /// Parameter counts at one infinitesimal character under the two norm bounds.
    HjExample {
        /// Parameter fixture inside the fixture directory.
        #[arg(long, default_value = dirac_core::verify::HJ_EXAMPLE_PARAMS)]
        params: String,
    },
    /// Spin norms of K-types and which of them are spin lowest K-types.
    SpinLkt {
        /// Infinitesimal character, seven ζ-coordinates.
        #[arg(long, value_parser = parse_inf_char)]
        inf_char: InfChar,
        /// K-types as a,b,c,d,e,f,g; repeatable.
        #[arg(long = "ktype", value_parser = parse_ktype)]
        ktypes: Vec<KType>,
        /// Branching fixture inside the fixture directory, used instead of --ktype.
        #[arg(long)]
        branching: Option<String>,
        /// Only branching entries up to this height.
        #[arg(long)]
        max_height: Option<i64>,
    },
    /// K-dominant weights wΛ − ρ_c, w ∈ W¹.
    DiracCandidates {
        #[arg(long, value_parser = parse_inf_char)]
        inf_char: InfChar,
    },
    /// String counts N_0..N_6 and their total (needs the counts fixture).
    Strings,
    /// Run the acceptance suite; exits 1 if any criterion fails.
    Verify {
        /// Run only these criteria.
        #[arg(long = "only")]
        only: Vec<u32>,
    },
}

fn parse_ints(s: &str) -> Result<[i64; RANK], String> {
    let v: Vec<i64> = s
        .trim_matches(|c| c == '[' || c == ']')
        .split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| format!("bad integer {t:?}")))
        .collect::<Result<_, _>>()?;
    v.try_into().map_err(|v: Vec<i64>| format!("need {RANK} entries, got {}", v.len()))
}

fn parse_ktype(s: &str) -> Result<KType, String> {
    KType::new(parse_ints(s)?).map_err(|e| e.to_string())
}

fn parse_inf_char(s: &str) -> Result<InfChar, String> {
    let v = s
        .trim_matches(|c| c == '[' || c == ']')
        .split(',')
        .map(|t| parse_rational(t).ok_or_else(|| format!("bad rational {t:?}")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(InfChar(v.try_into().map_err(|v: Vec<_>| format!("need {RANK} entries, got {}", v.len()))?))
}

fn fixture(cli: &Cli, name: &str) -> Result<PathBuf, Error> {
    let dir = cli.fixtures.as_deref().ok_or_else(|| Error::FixtureMissing(Path::new(name).to_path_buf()))?;
    let p = dir.join(name);
    if !p.exists() {
        return Err(Error::FixtureMissing(p));
    }
    Ok(p)
}

enum Failure {
    Error(Error),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let e = Engine::shared();
    let f = cli.format;
    Ok(match &cli.command {
        Command::Chambers => {
            let mut t = Table::new(&["j", "word", "rho_j", "rho_n_j", "rho_n_j_varpi"]);
            for c in &e.chambers {
                t.push(vec![
                    c.index.to_string(),
                    c.word.to_string(),
                    c.rho_j.to_string(),
                    c.rho_n_j.to_string(),
                    tuple(&e.lat.to_varpi(&c.rho_n_w)),
                ]);
            }
            t.render(f)
        }
        Command::Usmall => {
            let us = screening::enumerate_usmall_ktypes(e);
            let mut t = Table::new(&["ktype"]);
            for k in &us {
                t.push(vec![k.to_string()]);
            }
            t.note(format!("{} u-small K-types", us.len()));
            t.render(f)
        }
        Command::Certs => {
            let us = screening::enumerate_usmall_ktypes(e);
            let certs = screening::compute_certs(e, &us)?;
            let mut t = Table::new(&["ktype", "gap", "lambda_norm_sq"]);
            for c in &certs {
                t.push(vec![c.ktype.to_string(), fmt_rational(&c.gap), fmt_rational(&c.lambda_norm_sq)]);
            }
            t.note(format!("{} K-types", certs.len()));
            t.render(f)
        }
        Command::Omega => {
            let om = screening::enumerate_omega(e);
            let mut t = Table::new(&["inf_char", "norm_sq"]);
            for l in &om {
                t.push(vec![l.to_string(), fmt_rational(&norms::infchar_norm_sq(e, l))]);
            }
            t.note(format!("{} infinitesimal characters", om.len()));
            t.render(f)
        }
        Command::Phi { list } => {
            let kgb = atlas::load_kgb(&fixture(cli, atlas::KGB_FILE)?)?;
            let census = atlas::enumerate_phi(e, &kgb, cli.coord_cap)?;
            if *list {
                let mut t = Table::new(&["part", "inf_char"]);
                for (m, part) in &census.parts {
                    for w in part {
                        t.push(vec![m.to_string(), tuple(w)]);
                    }
                }
                t.note(format!("{} members", census.phi.len()));
                t.render(f)
            } else {
                let mut t = Table::new(&["part", "size"]);
                for (m, n) in census.part_sizes() {
                    t.push(vec![m.to_string(), n.to_string()]);
                }
                t.note(format!("total {}", census.phi.len()));
                t.render(f)
            }
        }
        Command::HjExample { params } => {
            let ps = match atlas::load(FixtureKind::Params, &fixture(cli, params)?)? {
                Records::Params(p) => p,
                _ => unreachable!("params fixture"),
            };
            let h = atlas::hj_filter(e, &ps, &Default::default());
            let mut t = Table::new(&["total", "fully_supported", "nu_sq_le_399/2", "nu_sq_lt_94"]);
            t.push(vec![
                h.total.to_string(),
                h.fully_supported.to_string(),
                h.old_bound.to_string(),
                h.new_bound.to_string(),
            ]);
            t.render(f)
        }
        Command::SpinLkt { inf_char, ktypes, branching, max_height } => {
            let mut list: Vec<(KType, u64)> = ktypes.iter().map(|k| (*k, 1)).collect();
            if let Some(b) = branching {
                for r in atlas::load_branching(&fixture(cli, b)?)? {
                    if max_height.map_or(true, |h| r.height <= h) {
                        list.push((r.ktype, r.mult));
                    }
                }
            }
            let s = screening::spin_lkts(e, &list, inf_char)?;
            let mut t = Table::new(&["ktype", "spin_norm_sq", "spin_lkt"]);
            let mut sorted = list.clone();
            sorted.sort();
            sorted.dedup();
            for (k, _) in &sorted {
                let n = norms::spin_norm_sq(e, k);
                let lkt = s.achievers.iter().any(|(a, _)| a == k);
                t.push(vec![k.to_string(), fmt_rational(&n), (lkt as u8).to_string()]);
            }
            t.note(format!(
                "‖Λ‖² = {}, minimum spin norm² = {}, Dirac cohomology {}",
                fmt_rational(&norms::infchar_norm_sq(e, inf_char)),
                fmt_rational(&s.min_spin_sq),
                if s.hd_nonzero { "nonzero" } else { "zero" }
            ));
            t.render(f)
        }
        Command::DiracCandidates { inf_char } => {
            let c = screening::dirac_candidate_gammas(e, inf_char);
            let mut t = Table::new(&["gamma_varpi", "chamber"]);
            for (g, j) in &c.gammas {
                let parts: Vec<String> = g.iter().map(fmt_rational).collect();
                t.push(vec![format!("[{}]", parts.join(",")), j.to_string()]);
            }
            t.note(format!("dominant Λ = {}, {} weights", c.inf_char, c.gammas.len()));
            t.render(f)
        }
        Command::Strings => {
            let counts = atlas::load_dirac_counts(&fixture(cli, atlas::COUNTS_FILE)?)?;
            let s = atlas::count_strings(&counts)?;
            let mut t = Table::new(&["i", "N_i"]);
            for (i, n) in s.n.iter().enumerate() {
                t.push(vec![i.to_string(), n.to_string()]);
            }
            t.note(format!("total {}", s.total));
            t.render(f)
        }
        Command::Verify { only } => {
            let cfg = SuiteConfig { fixtures: cli.fixtures.clone(), height_cap: cli.height_cap, coord_cap: cli.coord_cap };
            let suite = Suite::new(e, cfg);
            let ids: Vec<u32> = if only.is_empty() { (1..=13).collect() } else { only.clone() };
            let mut ok = true;
            for id in ids {
                if !(1..=13).contains(&id) {
                    return Err(Error::Domain(format!("no criterion {id}")).into());
                }
                let r = suite.run(id);
                ok &= r.passed();
                println!("{r}");
            }
            if !ok {
                return Err(Failure::Verification);
            }
            String::new()
        }
    })
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
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("e7dirac: {e}");
            return ExitCode::from(1);
        }
    }
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Verification) => {
            eprintln!("e7dirac: verification failed");
            ExitCode::from(1)
        }
        Err(Failure::Error(e @ Error::FixtureMissing(_))) => {
            eprintln!("e7dirac: {e}");
            ExitCode::from(3)
        }
        Err(Failure::Error(e)) => {
            eprintln!("e7dirac: {e}");
            ExitCode::from(1)
        }
    }
}
