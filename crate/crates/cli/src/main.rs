use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use supertheory::gtheory::{gb_action, Space};
use supertheory::orbits::{dot_action_on_dual, dot_action_on_u, partition_orbits};
use supertheory::table::{table_doc, to_csv, to_json};
use supertheory::theory::SuperTheory;
use supertheory::verify::{check_supertheory, config_json, run_suite, Fault, Suite};
use supertheory::{Error, Family, GroupSpec, Guards, Session};

/// Supercharacter theories of parabolic subgroups of finite orthogonal and
/// symplectic groups.
#[derive(Parser)]
#[command(name = "supertheory", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Describe the group: block structure, roots and orders.
    Spec(Common),
    /// Orbits of Ub, Hb or Gb on u or u*.
    Orbits {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "u")]
        space: SpaceArg,
        #[arg(long, value_enum, default_value = "Ub")]
        group: GroupArg,
    },
    /// Build the Ub-theory, check its axioms and print its table.
    Utheory {
        #[command(flatten)]
        common: Common,
        /// Build the theory of U instead of G.
        #[arg(long, value_enum, default_value = "g")]
        target: TargetArg,
    },
    /// Build the Gb-theory of G, check its axioms and print its table.
    Gtheory(Common),
    /// Run a verification suite; exit status 1 if any check fails.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "all")]
        suite: String,
        /// Corrupt the theories before checking them: `character` or `class`.
        #[arg(long)]
        inject_fault: Option<String>,
        /// Report wall-clock time per section.
        #[arg(long)]
        timings: bool,
    },
    /// Print a supercharacter table without the build summary.
    Table {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "gb")]
        theory: TheoryArg,
    },
}

#[derive(Args)]
struct Common {
    /// B, C or D.
    #[arg(long)]
    family: String,
    /// Rank.
    #[arg(long)]
    n: usize,
    /// Odd prime.
    #[arg(long)]
    q: u64,
    /// Block sizes for k = l..1, then the middle block (omit it when empty).
    /// Defaults to the Borel subgroup.
    #[arg(long, value_delimiter = ',')]
    blocks: Option<Vec<usize>>,
    /// Non-square used for the special coefficients; the smallest by default.
    #[arg(long)]
    delta: Option<u32>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, env = "SUPERTHEORY_MAX_LEVI", default_value_t = Guards::default().levi as u64)]
    max_levi: u64,
    #[arg(long, env = "SUPERTHEORY_MAX_SPACE", default_value_t = Guards::default().space as u64)]
    max_space: u64,
    #[arg(long, env = "SUPERTHEORY_MAX_GROUP", default_value_t = Guards::default().group)]
    max_group: usize,
    #[arg(long, env = "SUPERTHEORY_MAX_TABLE", default_value_t = Guards::default().table as u64)]
    max_table: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum SpaceArg {
    U,
    Ustar,
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "verbatim")]
enum GroupArg {
    Ub,
    Hb,
    Gb,
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    U,
    G,
}

#[derive(Clone, Copy, ValueEnum)]
enum TheoryArg {
    /// Ub-theory of U.
    UbU,
    /// Ub-theory of G.
    UbG,
    /// Gb-theory of G.
    Gb,
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_usage() {
            Failure::Usage(e.to_string())
        } else {
            Failure::Check(e.to_string())
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Check(e.to_string())
    }
}

impl Common {
    fn session(&self) -> Result<Session, Failure> {
        let family: Family = self.family.parse()?;
        let spec = match &self.blocks {
            Some(b) => GroupSpec::from_half_blocks(family, self.n, self.q, b)?,
            None => GroupSpec::borel(family, self.n, self.q)?,
        };
        let guards = Guards {
            levi: self.max_levi as u128,
            space: self.max_space as u128,
            group: self.max_group,
            table: self.max_table as u128,
        };
        Ok(Session::new(spec, guards, self.delta)?)
    }

    fn emit(&self, text: &str) -> Result<(), Failure> {
        match &self.out {
            Some(p) => std::fs::write(p, text)?,
            None => std::io::stdout().lock().write_all(text.as_bytes())?,
        }
        Ok(())
    }

    fn emit_json(&self, v: &Value) -> Result<(), Failure> {
        if matches!(self.format, Format::Csv) {
            return Err(Failure::Usage("this command only writes JSON".into()));
        }
        let mut s = serde_json::to_string_pretty(v).map_err(Error::from)?;
        s.push('\n');
        self.emit(&s)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Check(m)) => {
            eprintln!("{m}");
            ExitCode::from(1)
        }
    }
}

fn run(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Spec(c) => {
            let s = c.session()?;
            c.emit_json(&describe(&s))
        }
        Command::Orbits { common, space, group } => {
            let s = common.session()?;
            let par = &s.parabolic;
            let action = match (group, space) {
                (GroupArg::Gb, SpaceArg::U) => gb_action(par, Space::U),
                (GroupArg::Gb, SpaceArg::Ustar) => gb_action(par, Space::Dual),
                (g, sp) => {
                    let tag = match g {
                        GroupArg::Ub => supertheory::groups::SubgroupTag::Ub,
                        _ => supertheory::groups::SubgroupTag::Hb,
                    };
                    let gens = par.generators(tag);
                    match sp {
                        SpaceArg::U => dot_action_on_u(par, "", &gens),
                        SpaceArg::Ustar => dot_action_on_dual(par, "", &gens),
                    }
                }
            };
            let parts = partition_orbits(&action, s.guards.space)?;
            let orbits: Vec<Value> = parts
                .orbits
                .iter()
                .map(|o| json!({ "representative": par.decode_u(o.representative), "size": o.len() }))
                .collect();
            common.emit_json(&json!({
                "config": config_json(&s),
                "space": match space { SpaceArg::U => "u", SpaceArg::Ustar => "u*" },
                "group": match group { GroupArg::Ub => "Ub", GroupArg::Hb => "Hb", GroupArg::Gb => "Gb" },
                "roots": par.u_roots().iter().map(|r| r.label()).collect::<Vec<_>>(),
                "count": orbits.len(),
                "orbits": orbits,
            }))
        }
        Command::Utheory { common, target } => {
            let s = common.session()?;
            let u = match target {
                TargetArg::U => s.u_theory_of_u()?,
                TargetArg::G => s.u_theory_of_g()?,
            };
            let summary = json!({
                "generated_characters": u.generated_characters,
                "generated_classes": u.generated_classes,
            });
            emit_theory(&common, &s, &u.theory, Some(summary))
        }
        Command::Gtheory(common) => {
            let s = common.session()?;
            let g = s.g_theory()?;
            let summary = json!({
                "basic_pairs": g.pairs.len(),
                "orbits_on_u": g.on_u.orbits.orbits.len(),
                "orbits_on_dual": g.on_dual.orbits.orbits.len(),
            });
            emit_theory(&common, &s, &g.theory, Some(summary))
        }
        Command::Table { common, theory } => {
            let s = common.session()?;
            let t = match theory {
                TheoryArg::UbU => &s.u_theory_of_u()?.theory,
                TheoryArg::UbG => &s.u_theory_of_g()?.theory,
                TheoryArg::Gb => &s.g_theory()?.theory,
            };
            emit_theory(&common, &s, t, None)
        }
        Command::Verify {
            common,
            suite,
            inject_fault,
            timings,
        } => {
            let suite: Suite = suite.parse()?;
            let fault: Option<Fault> = inject_fault.as_deref().map(str::parse).transpose()?;
            let s = common.session()?;
            let start = Instant::now();
            let report = run_suite(&s, suite, fault, timings)?;
            common.emit_json(&serde_json::to_value(&report).map_err(Error::from)?)?;
            if timings {
                eprintln!("total {} ms", start.elapsed().as_millis());
            }
            if report.passed {
                Ok(())
            } else {
                let failed: Vec<&str> = report
                    .checks
                    .iter()
                    .filter(|c| !c.passed())
                    .map(|c| c.name.as_str())
                    .collect();
                Err(Failure::Check(format!("failed: {}", failed.join("; "))))
            }
        }
    }
}

/// Checks the axioms, then writes the table (with `summary` for JSON).
fn emit_theory(common: &Common, s: &Session, t: &SuperTheory, summary: Option<Value>) -> Result<(), Failure> {
    let par = &s.parabolic;
    let failed: Vec<_> = check_supertheory(par, t).into_iter().filter(|c| !c.passed()).collect();
    if !failed.is_empty() {
        let report = serde_json::to_string_pretty(&failed).map_err(Error::from)?;
        eprintln!("{report}");
        return Err(Failure::Check(format!("{} does not satisfy the axioms", t.name)));
    }
    let doc = table_doc(par, config_json(s), t)?;
    match common.format {
        Format::Csv => common.emit(&to_csv(&doc)?),
        Format::Json => match summary {
            None => common.emit(&to_json(&doc)?),
            Some(sum) => {
                let mut v = serde_json::to_value(&doc).map_err(Error::from)?;
                v["summary"] = sum;
                common.emit_json(&v)
            }
        },
    }
}

fn describe(s: &Session) -> Value {
    let par = &s.parabolic;
    let spec = s.spec();
    json!({
        "config": config_json(s),
        "dimension": spec.dim(),
        "indices": spec.indices(),
        "segments": spec.segments().iter().map(|g| json!({ "label": g.label, "size": g.size })).collect::<Vec<_>>(),
        "roots": par.roots().iter().map(|r| json!({ "root": [r.i, r.j], "sign": r.sign, "in_u": r.crosses })).collect::<Vec<_>>(),
        "dim_u": par.dim_u(),
        "dim_uc": par.uc_dim(),
        "order_L": par.levi().len(),
        "order_U": par.u_size(),
        "order_G": par.g_order(),
    })
}
