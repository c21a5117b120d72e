use std::collections::BTreeSet;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use quadcycles::edi::{self, EdiTable, WittContext};
use quadcycles::expr::{parse_expr, Value};
use quadcycles::report::{Check, Report};
use quadcycles::verify::run_verify;
use quadcycles::{MiddleConvention, Orientation, QuadricContext};

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CONTRADICTION: u8 = 3;

#[derive(Parser)]
#[command(name = "quadcycles", version, about = "Mod-2 cycle calculus on split quadrics")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Dimension of the quadric.
    #[arg(long, global = true)]
    n: Option<u32>,
    /// Which middle class of an even quadric is named l_d.
    #[arg(long, global = true, value_enum, default_value_t = Side::Ld)]
    orientation: Side,
    /// Middle class used in the last term of the delta cycles.
    #[arg(long, global = true, value_enum, default_value_t = Side::Ld)]
    delta_middle_convention: Side,
    /// Emit JSON reports, one per line.
    #[arg(long, global = true)]
    json: bool,
    /// Print every check, or the rule firings behind an EDI result.
    #[arg(long, global = true)]
    trace: bool,
    /// Largest dimension accepted by verify and edi.
    #[arg(long, global = true, default_value_t = edi::DEFAULT_MAX_N)]
    max_n: u32,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Side {
    Ld,
    Ldprime,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Propagate,
    Enumerate,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a cycle expression.
    Eval {
        expr: String,
        /// Compare the value against a second expression; mismatch exits 1.
        #[arg(long)]
        expect: Option<String>,
    },
    /// Run the identity suites.
    Verify {
        #[arg(long)]
        n_min: Option<u32>,
        #[arg(long)]
        n_max: Option<u32>,
        /// Only suites whose name contains this string.
        #[arg(long, default_value = "")]
        suite: String,
    },
    /// Propagate or enumerate elementary discrete invariant tables.
    Edi {
        #[arg(long, value_enum, default_value_t = Mode::Propagate)]
        mode: Mode,
        /// Assume the form is anisotropic.
        #[arg(long)]
        aniso: bool,
        /// First Witt index; implies --aniso.
        #[arg(long)]
        i1: Option<u32>,
        /// Seed membership LEVEL:M; repeatable.
        #[arg(long = "seed", value_parser = parse_seed)]
        seeds: Vec<(u32, u32)>,
        /// Restrict enumeration to these levels.
        #[arg(long, value_delimiter = ',')]
        levels: Option<Vec<u32>>,
    },
}

fn parse_seed(s: &str) -> Result<(u32, u32), String> {
    let (level, m) = s.split_once(':').ok_or_else(|| format!("expected LEVEL:M, got `{s}`"))?;
    let parse = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("`{t}`: {e}"));
    Ok((parse(level)?, parse(m)?))
}

impl Global {
    fn context(&self, n: u32) -> Result<QuadricContext, String> {
        let orientation = match self.orientation {
            Side::Ld => Orientation::Ld,
            Side::Ldprime => Orientation::LdPrime,
        };
        let middle = match self.delta_middle_convention {
            Side::Ld => MiddleConvention::Ld,
            Side::Ldprime => MiddleConvention::LdPrime,
        };
        QuadricContext::new(n)
            .map(|c| c.with_orientation(orientation).with_delta_middle(middle))
            .map_err(|e| e.to_string())
    }

    fn report(&self, ctx: &QuadricContext) -> Report {
        Report::new(ctx.n())
            .convention("orientation", ctx.orientation().to_string())
            .convention("delta_middle", ctx.delta_middle().to_string())
    }

    fn require_n(&self) -> Result<u32, String> {
        self.n.ok_or_else(|| "--n is required".to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Eval { expr, expect } => eval(&cli.global, expr, expect.as_deref()),
        Command::Verify { n_min, n_max, suite } => verify(&cli.global, *n_min, *n_max, suite),
        Command::Edi { mode, aniso, i1, seeds, levels } => {
            run_edi(&cli.global, *mode, *aniso, *i1, seeds, levels.as_deref())
        }
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn eval(g: &Global, text: &str, expect: Option<&str>) -> Result<u8, String> {
    let ctx = g.context(g.require_n()?)?;
    let ast = parse_expr(text).map_err(|e| e.to_string())?;
    let value = ast.eval(&ctx).map_err(|e| e.to_string())?;
    let kind = |v: &Value| match v {
        Value::Cycle(_) => "cycle",
        Value::Degree(_) => "degree",
        Value::Truth(_) => "truth",
    };
    let mut check =
        Check::new("eval").param("expr", ast.to_string()).param("kind", kind(&value)).param("value", value.to_string());
    if let Some(expected_text) = expect {
        let expected_ast = parse_expr(expected_text).map_err(|e| e.to_string())?;
        let expected = expected_ast.eval(&ctx).map_err(|e| e.to_string())?;
        check = check.param("expect", expected_ast.to_string());
        check = match (&value, &expected) {
            (a, b) if a == b => check.passed(),
            (Value::Cycle(a), Value::Cycle(b)) => match a.add(b) {
                Ok(diff) => check.failed(format!("difference {diff}")),
                Err(e) => check.failed(e.to_string()),
            },
            (a, b) => check.failed(format!("{a} vs {b}")),
        };
    }
    let pass = check.pass;
    if g.json {
        let mut report = g.report(&ctx);
        report.push(check);
        println!("{}", report.to_json());
    } else {
        if g.trace {
            println!("{ast}");
        }
        println!("{value}");
        if let Some(w) = &check.witness {
            println!("FAIL: {w}");
        }
    }
    Ok(if pass { 0 } else { EXIT_CHECK_FAILED })
}

fn verify(g: &Global, n_min: Option<u32>, n_max: Option<u32>, filter: &str) -> Result<u8, String> {
    let (lo, hi) = match (g.n, n_min, n_max) {
        (Some(n), None, None) => (n, n),
        (None, Some(lo), Some(hi)) => (lo, hi),
        (None, Some(lo), None) => (lo, lo),
        (None, None, Some(hi)) => (1, hi),
        (None, None, None) => return Err("give --n or --n-min/--n-max".into()),
        _ => return Err("--n conflicts with --n-min/--n-max".into()),
    };
    let reports = run_verify(lo, hi, filter, g.max_n).map_err(|e| e.to_string())?;
    let mut failed = 0;
    for r in &reports {
        failed += r.failures().count();
        if g.json {
            println!("{}", r.to_json());
            continue;
        }
        for c in &r.checks {
            if g.trace || !c.pass {
                let status = if c.pass { "pass" } else { "FAIL" };
                let params = serde_json::to_string(&c.params).expect("plain JSON");
                match &c.witness {
                    Some(w) => println!("{status} {} {params}: {w}", c.name),
                    None => println!("{status} {} {params}", c.name),
                }
            }
        }
        println!("n={}: {} checks, {} failed", r.n, r.checks.len(), r.failures().count());
    }
    Ok(if failed == 0 { 0 } else { EXIT_CHECK_FAILED })
}

fn run_edi(
    g: &Global,
    mode: Mode,
    aniso: bool,
    i1: Option<u32>,
    seeds: &[(u32, u32)],
    levels: Option<&[u32]>,
) -> Result<u8, String> {
    let n = g.require_n()?;
    if n > g.max_n {
        return Err(edi::EdiError::BoundExceeded { n, max: g.max_n }.to_string());
    }
    let ctx = g.context(n)?;
    let w = match i1 {
        Some(i1) => WittContext::with_first_witt_index(n, i1).map_err(|e| e.to_string())?,
        None if aniso => WittContext::anisotropic(),
        None => WittContext::generic(),
    };
    let witt = match (w.is_anisotropic(), w.i1()) {
        (_, Some(i1)) => format!("anisotropic, i1={i1}"),
        (true, None) => "anisotropic".to_string(),
        (false, None) => "generic".to_string(),
    };
    let seed_text: Vec<String> = seeds.iter().map(|(l, m)| format!("{l}:{m}")).collect();
    let base = || g.report(&ctx).convention("witt", witt.clone());
    match mode {
        Mode::Propagate => {
            let seed = EdiTable::with_members(n, seeds.iter().copied()).map_err(|e| e.to_string())?;
            let check = Check::new("edi-propagate").param("seeds", seed_text);
            match edi::propagate(&seed, &w) {
                Ok(closure) => {
                    let mut report = base();
                    report.push(check.param("rounds", closure.rounds).passed());
                    report.push_table(&closure.table);
                    if g.json {
                        println!("{}", report.to_json());
                    } else {
                        if g.trace {
                            for f in &closure.trail {
                                println!("{f}");
                            }
                        }
                        print!("{}", closure.table);
                        println!("admissible under the rules (not a realizability certificate)");
                    }
                    Ok(0)
                }
                Err(contradiction) => {
                    let mut report = base();
                    report.push(
                        check.param("rule", contradiction.firing.rule.id()).failed(contradiction.firing.to_string()),
                    );
                    report.push_table(&contradiction.table);
                    if g.json {
                        println!("{}", report.to_json());
                    } else {
                        if g.trace {
                            for f in &contradiction.trail {
                                println!("{f}");
                            }
                        }
                        println!("contradiction: {}", contradiction.firing);
                    }
                    Ok(EXIT_CONTRADICTION)
                }
            }
        }
        Mode::Enumerate => {
            let filter: Option<BTreeSet<u32>> = levels.map(|l| l.iter().copied().collect());
            let count = edi::enumerate_admissible(n, &w, filter.as_ref(), g.max_n, |t| {
                if g.json {
                    let mut report = base();
                    report.push_table(t);
                    println!("{}", report.to_json());
                } else if g.trace {
                    print!("{t}");
                    println!();
                }
            })
            .map_err(|e| e.to_string())?;
            if g.json {
                let mut report = base();
                report.push(Check::new("edi-enumerate").param("count", count).passed());
                println!("{}", report.to_json());
            } else {
                println!("{count} admissible tables (rule-closed and contradiction-free; not necessarily realizable)");
            }
            Ok(0)
        }
    }
}
