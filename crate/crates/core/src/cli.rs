//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when a counterexample or mismatch is found,
//! 2 on usage errors (bad flags, invalid parameters, caps exceeded).

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::branching::{
    analyze_mult2_family, build_mult2_family, induction_table, verify_mult2_classification,
    verify_nonextending_components, verify_theorem_bound,
};
use crate::error::{Error, Result};
use crate::irrep::GroupParams;
use crate::laws::{
    verify_affine_lemma, verify_coset_lemma, verify_necklace_suite, verify_twins_structure, Bounds,
    ChildRelation, Enumeration, LawConfig, LawReport,
};
use crate::oracle::{compare_canonical, restriction_table_oracle, Verdict};
use crate::partition::Partition;
use crate::symbreak::{builtin_groups, check_symmetry_breaking};

#[derive(Parser, Debug)]
#[command(
    name = "reflect-branch",
    version,
    about = "Branching tables for G(de,e,r+1) > G(de,e,r)"
)]
struct Cli {
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the table G(de,e,R) -> G(de,e,R-1).
    Table {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        e: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Run the necklace verifiers for 2 <= n <= max-n, every alphabet size
    /// up to the given one and every orbit count up to the given one, plus
    /// the coset and affine lemmas up to max-n.
    VerifyLaws {
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        alphabet: usize,
        #[arg(long, default_value_t = 1)]
        orbits: usize,
        /// Enumerate every system instead of one per symmetry class.
        #[arg(long)]
        exhaustive: bool,
        /// Run only the twins verifier with unordered pearls; succeeds when
        /// it finds a counterexample.
        #[arg(long)]
        negative_control: bool,
    },
    /// Check the multiplicity bound and the extension statements for
    /// ranks up to rmax.
    VerifyTheorem {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        e: usize,
        #[arg(long)]
        rmax: usize,
    },
    /// Check symmetry breaking on the builtin groups.
    VerifySymbreak {
        #[arg(long)]
        max_order: usize,
        #[arg(long, default_value_t = 3)]
        max_pearls: usize,
    },
    /// Compare the combinatorial table against the character-table oracle.
    OracleCompare {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        e: usize,
        #[arg(long)]
        r: usize,
    },
    /// Build a member of the multiplicity-2 family and analyse its
    /// restriction.
    Family {
        #[arg(long)]
        e: usize,
        #[arg(long)]
        u: usize,
        #[arg(long, default_value = "[1]")]
        lambda0: String,
        #[arg(long, default_value = "[]")]
        mu0: String,
        /// One partition per nontrivial coset, e.g. `--filler [2]`.
        #[arg(long = "filler")]
        fillers: Vec<String>,
    },
}

#[derive(Serialize)]
struct OracleReport {
    upper: GroupParams,
    lower: GroupParams,
    prime: u64,
    combinatorial_row_dims: Vec<u64>,
    oracle_row_degrees: Vec<u64>,
    oracle_max_entry: u32,
    verdict: Verdict,
}

fn usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::InvalidParams(_)
            | Error::CapExceeded { .. }
            | Error::Precondition(_)
            | Error::InvalidPartition(_)
            | Error::InvalidNecklace(_)
            | Error::ShapeMismatch(_)
    )
}

fn json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Invariant(e.to_string()))?;
    writeln!(out, "{text}").map_err(|e| Error::Invariant(e.to_string()))
}

fn reports_ok(reports: &[LawReport]) -> bool {
    reports.iter().all(LawReport::holds)
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<bool> {
    match command {
        Command::Table { d, e, r, format } => {
            let t = induction_table(&GroupParams::new(d, e, r)?)?;
            match format {
                Format::Json => json(out, &t.to_json())?,
                Format::Csv => {
                    write!(out, "{}", t.to_csv()?).map_err(|e| Error::Invariant(e.to_string()))?
                }
            }
            Ok(true)
        }
        Command::VerifyLaws {
            max_n,
            alphabet,
            orbits,
            exhaustive,
            negative_control,
        } => {
            let cfg = LawConfig {
                enumeration: if exhaustive {
                    Enumeration::Exhaustive
                } else {
                    Enumeration::Reduced
                },
                ..LawConfig::default()
            };
            if max_n < 2 || alphabet < 2 || orbits < 1 {
                return Err(Error::InvalidParams(
                    "need max-n >= 2, alphabet >= 2 and orbits >= 1".into(),
                ));
            }
            if negative_control {
                let r = verify_twins_structure(
                    Bounds::new(max_n, alphabet, orbits),
                    ChildRelation::Perp,
                    &cfg,
                )?;
                let found = !r.holds();
                json(out, &[r])?;
                return Ok(found);
            }
            let mut reports = Vec::new();
            for n in 2..=max_n {
                for k in 2..=alphabet {
                    for o in 1..=orbits {
                        reports.extend(verify_necklace_suite(Bounds::new(n, k, o), &cfg)?);
                    }
                }
            }
            for n1 in 1..=max_n {
                for n2 in 1..=max_n {
                    reports.push(verify_coset_lemma(n1, n2)?);
                }
            }
            for n in 3..=max_n {
                reports.push(verify_affine_lemma(n)?);
            }
            json(out, &reports)?;
            Ok(reports_ok(&reports))
        }
        Command::VerifyTheorem { d, e, rmax } => {
            GroupParams::new(d, e, rmax)?;
            let mut reports = vec![
                verify_theorem_bound(d, e, rmax)?,
                verify_nonextending_components(d, e, rmax)?,
            ];
            if d == 1 {
                reports.push(verify_mult2_classification(e, rmax)?);
            }
            json(out, &reports)?;
            Ok(reports_ok(&reports))
        }
        Command::VerifySymbreak {
            max_order,
            max_pearls,
        } => {
            if max_pearls < 2 {
                return Err(Error::InvalidParams("max-pearls must be at least 2".into()));
            }
            let mut reports = Vec::new();
            for g in builtin_groups(max_order)? {
                for pearls in 2..=max_pearls {
                    reports.push(check_symmetry_breaking(&g, pearls)?);
                }
            }
            json(out, &reports)?;
            Ok(reports_ok(&reports))
        }
        Command::OracleCompare { d, e, r } => {
            let p = GroupParams::new(d, e, r)?;
            let table = induction_table(&p)?;
            let oracle = restriction_table_oracle(&p)?;
            let verdict = compare_canonical(&table, &oracle)?;
            let ok = verdict.is_match();
            json(
                out,
                &OracleReport {
                    upper: oracle.upper,
                    lower: oracle.lower,
                    prime: oracle.prime,
                    combinatorial_row_dims: table
                        .row_dims()?
                        .into_iter()
                        .map(|x| x as u64)
                        .collect(),
                    oracle_row_degrees: oracle.row_degrees.clone(),
                    oracle_max_entry: oracle.max_entry(),
                    verdict,
                },
            )?;
            Ok(ok)
        }
        Command::Family {
            e,
            u,
            lambda0,
            mu0,
            fillers,
        } => {
            let fillers = fillers
                .iter()
                .map(|s| s.parse::<Partition>())
                .collect::<Result<Vec<_>>>()?;
            let c = build_mult2_family(e, u, &fillers, &lambda0.parse()?, &mu0.parse()?)?;
            let analysis = analyze_mult2_family(e, u, &c)?;
            json(out, &analysis)?;
            Ok(analysis.meets_guarantee())
        }
    }
}

/// Runs the command line `argv` (including the program name), writing
/// results to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 2 {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            let _ = writeln!(err, "error: --jobs must be positive");
            return 2;
        }
        builder = builder.num_threads(jobs);
    }
    let pool = match builder.build() {
        Ok(pool) => pool,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    let mut buffer = Vec::new();
    let result = pool.install(|| dispatch(cli.command, &mut buffer));
    if out.write_all(&buffer).and_then(|_| out.flush()).is_err() {
        return 1;
    }
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if usage_error(&e) {
                2
            } else {
                1
            }
        }
    }
}
