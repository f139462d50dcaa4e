//! Batch command-line front end: parsing, normal forms, grids, the
//! legitimacy and synthesis procedures, theory-indexed decisions, semantic
//! evaluation, the axiom-schema runner, lattice reduction and arrow
//! restriction.
//!
//! Exit codes: 0 success / equal / yes; 1 not-equal / no / not-legitimate;
//! 2 outside the decided fragment; 3 input error.

use std::collections::BTreeSet;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use intermute::decide::{decide_equal, decide_exists, purity_scan, Existence, Verdict};
use intermute::error::Error;
use intermute::formula::parse_formula;
use intermute::grid::{grid, render, RenderStyle};
use intermute::legit::{check_legitimate, exists_bfs, synthesize, LegitOutcome};
use intermute::semantics::{catalogue, eval_mat, eval_rel, lattice_reduce, run_schema};
use intermute::sterm::{parse_strict, restrict_arrow, Mode};
use intermute::strict::{parse_form_seq, tblr};
use intermute::term::{develop, parse_arrow, Theory};

#[derive(Parser)]
#[command(
    name = "intermute",
    about = "decision procedures and semantics for free categories with intermutation",
    version
)]
struct Cli {
    /// Emit structured JSON instead of plain text where available.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum StyleArg {
    Ascii,
    Svg,
}

#[derive(Args)]
struct TheoryArg {
    /// Theory name: A, N, K0, NA, KA0, Ck, ACk, ACkU, S, SCk, SCkU or L.
    #[arg(long, value_parser = parse_theory)]
    theory: Theory,
}

fn parse_theory(s: &str) -> Result<Theory, String> {
    Theory::parse(s).ok_or_else(|| format!("unknown theory `{s}`"))
}

#[derive(Subcommand)]
enum Command {
    /// Parse a formula or an arrow term and echo its canonical form.
    Parse {
        #[arg(short = 'f', long = "formula")]
        formula: Option<String>,
        #[arg(short = 'a', long = "arrow")]
        arrow: Option<String>,
    },
    /// Print the normal form of a formula.
    Nf {
        #[arg(short = 'f', long = "formula")]
        formula: String,
    },
    /// Print the rectangular grid of a constant-free formula.
    Grid {
        #[arg(short = 'f', long = "formula")]
        formula: String,
        #[arg(long, value_enum, default_value = "ascii")]
        style: StyleArg,
    },
    /// Print the top, bottom, left and right letter sequences.
    Tblr {
        #[arg(short = 'f', long = "formula")]
        formula: String,
    },
    /// Decide whether a pair of form sequences is legitimate.
    Legit {
        #[arg(short = 'x')]
        x: String,
        #[arg(short = 'y')]
        y: String,
    },
    /// Synthesize the canonical strict arrow for a legitimate pair.
    Synth {
        #[arg(short = 'x')]
        x: String,
        #[arg(short = 'y')]
        y: String,
    },
    /// Decide arrow existence between two formulas in a theory.
    Exists {
        #[command(flatten)]
        theory: TheoryArg,
        #[arg(short = 'x')]
        x: String,
        #[arg(short = 'y')]
        y: String,
        /// Also run the breadth-first oracle and report agreement
        /// (biassociative intermuting theory on constant-free input only).
        #[arg(long)]
        oracle: bool,
    },
    /// Decide equality of two arrow terms in a theory.
    Equal {
        #[command(flatten)]
        theory: TheoryArg,
        /// The two arrow terms, given as two occurrences of -a.
        #[arg(short = 'a', long = "arrow", num_args = 1, action = clap::ArgAction::Append)]
        arrows: Vec<String>,
    },
    /// Evaluate an arrow term under the relation or matrix semantics.
    Eval {
        #[arg(long, conflicts_with = "mat")]
        rel: bool,
        #[arg(long)]
        mat: bool,
        #[arg(short = 'a', long = "arrow")]
        arrow: String,
    },
    /// Factor an arrow term into single-generator steps.
    Develop {
        #[arg(short = 'a', long = "arrow")]
        arrow: String,
    },
    /// Run the equation-schema catalogue on random instantiations.
    Axioms {
        /// Restrict to schemas whose generators live in this theory.
        #[arg(long, value_parser = parse_theory)]
        theory: Option<Theory>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Seed for the random instantiations.
        #[arg(long, default_value_t = 0xD05E)]
        seed: u64,
    },
    /// Scan purity propagation along the developed factors of a term.
    Purity {
        #[command(flatten)]
        theory: TheoryArg,
        #[arg(short = 'a', long = "arrow")]
        arrow: String,
    },
    /// Rewrite a bijective lattice arrow into the symmetric intermuting
    /// fragment.
    ReduceLattice {
        #[arg(short = 'a', long = "arrow")]
        arrow: String,
    },
    /// Restrict a strict arrow term by deleting a set of letters.
    Restrict {
        #[arg(short = 'a', long = "arrow")]
        arrow: String,
        /// Comma-separated letters to delete.
        #[arg(short = 'P', long = "letters")]
        letters: String,
    },
}

const EXIT_OK: u8 = 0;
const EXIT_NO: u8 = 1;
const EXIT_OUTSIDE: u8 = 2;
const EXIT_INPUT: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Error> {
    match &cli.command {
        Command::Parse { formula, arrow } => match (formula, arrow) {
            (Some(f), None) => {
                println!("{}", parse_formula(f)?);
                Ok(EXIT_OK)
            }
            (None, Some(a)) => {
                let t = parse_arrow(a)?;
                t.type_of()?;
                println!("{t}");
                Ok(EXIT_OK)
            }
            _ => Err(Error::Parse {
                at: 0,
                msg: "give exactly one of -f or -a".into(),
            }),
        },
        Command::Nf { formula } => {
            println!("{}", parse_formula(formula)?.normal_form());
            Ok(EXIT_OK)
        }
        Command::Grid { formula, style } => {
            let x = parse_form_seq(formula)?;
            let g = grid(&x);
            if cli.json {
                println!("{}", g.to_json());
            } else {
                print!(
                    "{}",
                    render(
                        &g,
                        match style {
                            StyleArg::Ascii => RenderStyle::Ascii,
                            StyleArg::Svg => RenderStyle::Svg,
                        }
                    )
                );
            }
            Ok(EXIT_OK)
        }
        Command::Tblr { formula } => {
            let x = parse_form_seq(formula)?;
            let [t, b, l, r] = tblr(&x);
            if cli.json {
                let row = |v: &[String]| {
                    let q: Vec<String> = v.iter().map(|p| format!("\"{p}\"")).collect();
                    format!("[{}]", q.join(","))
                };
                println!(
                    "{{\"top\":{},\"bottom\":{},\"left\":{},\"right\":{}}}",
                    row(&t),
                    row(&b),
                    row(&l),
                    row(&r)
                );
            } else {
                println!("T: {}", t.join(" "));
                println!("B: {}", b.join(" "));
                println!("L: {}", l.join(" "));
                println!("R: {}", r.join(" "));
            }
            Ok(EXIT_OK)
        }
        Command::Legit { x, y } => {
            let xs = parse_form_seq(x)?;
            let ys = parse_form_seq(y)?;
            match check_legitimate(&xs, &ys)? {
                LegitOutcome::Legitimate(w) => {
                    if cli.json {
                        println!("{}", w.to_json());
                    } else {
                        print!("{w}");
                    }
                    Ok(EXIT_OK)
                }
                LegitOutcome::NotLegitimate(reason) => {
                    println!("not legitimate: {reason}");
                    Ok(EXIT_NO)
                }
            }
        }
        Command::Synth { x, y } => {
            let xs = parse_form_seq(x)?;
            let ys = parse_form_seq(y)?;
            match synthesize(&xs, &ys) {
                Ok(t) => {
                    println!("{t}");
                    Ok(EXIT_OK)
                }
                Err(Error::NotLegitimate(reason)) => {
                    println!("not legitimate: {reason}");
                    Ok(EXIT_NO)
                }
                Err(e) => Err(e),
            }
        }
        Command::Exists { theory, x, y, oracle } => {
            let xf = parse_formula(x)?;
            let yf = parse_formula(y)?;
            let answer = decide_exists(&xf, &yf, theory.theory)?;
            if *oracle && theory.theory == Theory::ACk {
                let xs = parse_form_seq(x)?;
                let ys = parse_form_seq(y)?;
                let bfs = exists_bfs(&xs, &ys)?;
                println!("oracle: {}", if bfs { "yes" } else { "no" });
            }
            println!("{answer}");
            Ok(match answer {
                Existence::Yes => EXIT_OK,
                Existence::No => EXIT_NO,
                Existence::OutsideFragment(_) => EXIT_OUTSIDE,
            })
        }
        Command::Equal { theory, arrows } => {
            if arrows.len() != 2 {
                return Err(Error::Parse {
                    at: 0,
                    msg: "equal needs exactly two -a arguments".into(),
                });
            }
            let f = parse_arrow(&arrows[0])?;
            let g = parse_arrow(&arrows[1])?;
            let verdict = decide_equal(&f, &g, theory.theory)?;
            if cli.json {
                println!("{}", verdict.to_json());
            } else {
                println!("{verdict}");
            }
            Ok(match verdict {
                Verdict::Equal => EXIT_OK,
                Verdict::NotEqual(_) => EXIT_NO,
                Verdict::OutsideFragment(_) => EXIT_OUTSIDE,
            })
        }
        Command::Eval { rel, mat, arrow } => {
            let t = parse_arrow(arrow)?;
            if *mat {
                let m = eval_mat(&t)?;
                if cli.json {
                    println!("{}", m.to_json());
                } else {
                    println!("{m}");
                }
            } else {
                let _ = rel;
                let r = eval_rel(&t)?;
                if cli.json {
                    println!("{}", r.to_json());
                } else {
                    println!("{r}");
                }
            }
            Ok(EXIT_OK)
        }
        Command::Develop { arrow } => {
            let t = parse_arrow(arrow)?;
            let dev = develop(&t)?;
            if dev.steps.is_empty() {
                println!("id{{{}}}", dev.source);
                return Ok(EXIT_OK);
            }
            for factor in dev.factors()? {
                println!("{factor}");
            }
            Ok(EXIT_OK)
        }
        Command::Axioms { theory, trials, seed } => {
            let mut all_ok = true;
            for schema in catalogue() {
                if let Some(t) = theory {
                    if !schema_fits(&schema, *t) {
                        continue;
                    }
                }
                let report = run_schema(&schema, *trials, *seed)?;
                println!(
                    "{} {} ({} trials)",
                    if report.passed { "pass" } else { "FAIL" },
                    report.name,
                    report.trials
                );
                all_ok &= report.passed;
            }
            Ok(if all_ok { EXIT_OK } else { EXIT_NO })
        }
        Command::Purity { theory, arrow } => {
            let t = parse_arrow(arrow)?;
            let report = purity_scan(&t, theory.theory)?;
            print!("{report}");
            Ok(if report.ok() { EXIT_OK } else { EXIT_NO })
        }
        Command::ReduceLattice { arrow } => {
            let t = parse_arrow(arrow)?;
            match lattice_reduce(&t)? {
                Some(out) => {
                    println!("{out}");
                    Ok(EXIT_OK)
                }
                None => {
                    println!("not reducible: the relation image is not a bijection on a constant-free type");
                    Ok(EXIT_NO)
                }
            }
        }
        Command::Restrict { arrow, letters } => {
            let t = parse_strict(arrow, Mode::Set)?;
            let p: BTreeSet<String> = letters
                .split(',')
                .map(|s| s.trim().to_string())
                .filter(|s| !s.is_empty())
                .collect();
            let out = restrict_arrow(&t, &p)?;
            println!("{out}");
            Ok(EXIT_OK)
        }
    }
}

/// A schema belongs to a theory run when its own theory's generators are a
/// subset of the requested theory's.
fn schema_fits(schema: &intermute::semantics::Schema, t: Theory) -> bool {
    use intermute::term::GenKind::*;
    const ALL: [intermute::term::GenKind; 26] = [
        HbPlus, HbMinus, VbPlus, VbMinus, Hc, Vc, HdPlus, HdMinus, HsPlus, HsMinus, VdPlus,
        VdMinus, VsPlus, VsMinus, HwBotPlus, HwBotMinus, VwTopPlus, VwTopMinus, Kappa, Ck, Hw, Vw,
        Hk1, Hk2, Vk1, Vk2,
    ];
    ALL.iter().all(|&k| !schema.theory.allows(k) || t.allows(k))
}
