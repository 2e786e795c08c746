//! `paritycx`: build, combine and check parity complexes, list free cells,
//! and run nerves, descent and chain-level computations on JSON files.
//!
//! Exit codes: 0 success, 1 validation failure or disagreement, 2 structural
//! or I/O error, 3 capacity exceeded.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use paritycx::chain::{chain_complex, theta_cat};
use paritycx::constructions::{cube, find_isomorphism, glob, interval, join, left_cone, point, product, right_cone, simplex};
use paritycx::cosimplicial::{constant, cosimp_hom};
use paritycx::descent::{desc1, desc2, desc_general, isomorphism_by_ids};
use paritycx::freecat::{atom, atom_by_id, cell_dim, enumerate_cells};
use paritycx::homotopy::{homotopy_group, pi0};
use paritycx::ncat::{free_snapshot, validate_cat, FiniteNCat};
use paritycx::simplicial::{classical_nerve, nerve};
use paritycx::{json, Error, ParityComplex};

const DEFAULT_CAP: usize = 100_000;

#[derive(Parser)]
#[command(name = "paritycx", version, about = "Parity complexes, free ω-categories, nerves and descent")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Point,
    Interval,
    Simplex,
    Cube,
    Glob,
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    Product,
    Join,
    Rcone,
    Lcone,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Explicit,
    General,
    Both,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a standard parity complex.
    Build {
        kind: Kind,
        /// Dimension; ignored for point and interval.
        #[arg(default_value_t = 0)]
        n: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Product, join or cone of complexes.
    Combine {
        op: Op,
        #[arg(required = true, num_args = 1..=2)]
        inputs: Vec<PathBuf>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Validate a complex, category, chain complex or cosimplicial category.
    Check { input: PathBuf },
    /// List the cells of the free category on a complex, one per line.
    Cells {
        input: PathBuf,
        /// Only cells of dimension at most this.
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        cap: Option<usize>,
        /// Only the atoms ⟨x⟩.
        #[arg(long)]
        atoms_only: bool,
    },
    /// The atom of one element, as JSON.
    Atom { input: PathBuf, id: String },
    /// A linear extension of the solid triangle order, or its DOT graph.
    Order {
        input: PathBuf,
        #[arg(long)]
        dot: bool,
    },
    /// The free category on a complex as an explicit category.
    Snapshot {
        input: PathBuf,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        cap: Option<usize>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// The nerve of a category, truncated at `levels`.
    Nerve {
        input: PathBuf,
        #[arg(long, default_value_t = 3)]
        levels: usize,
        /// The classical nerve of a 1-category instead of the oriental one.
        #[arg(long)]
        classical: bool,
        #[arg(long)]
        cap: Option<usize>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Build a cosimplicial category.
    #[command(subcommand)]
    Cosimp(CosimpCmd),
    /// The descent category of a cosimplicial category.
    Desc {
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Method::Explicit)]
        method: Method,
        #[arg(long)]
        cap: Option<usize>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// The chain complex of a parity complex.
    Chain {
        input: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Ranks of the homology of a chain complex.
    Homology { input: PathBuf },
    /// The category ϑR of a mod-p chain complex, or its homotopy group orders.
    Theta {
        input: PathBuf,
        /// Print |π_k| at the zero object for k = 0, 1, 2.
        #[arg(long)]
        groups: bool,
        /// Reduce the coefficients mod this prime first.
        #[arg(long)]
        modulus: Option<u64>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Find an isomorphism between two complexes.
    Iso { left: PathBuf, right: PathBuf },
}

#[derive(Subcommand)]
enum CosimpCmd {
    /// `[Ner A, X]` from the classical nerve of a 1-category `A`.
    Hom {
        source: PathBuf,
        target: PathBuf,
        #[arg(long, default_value_t = 3)]
        top: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// The constant diagram at a category.
    Constant {
        input: PathBuf,
        #[arg(long, default_value_t = 3)]
        top: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    /// Exit 1, with the report already on stdout or stderr.
    Invalid,
    Lib(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn emit(text: &str, out: Option<&Path>) -> Outcome {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        None => {
            let mut o = std::io::stdout().lock();
            o.write_all(text.as_bytes()).map_err(|e| Failure::Io(e.to_string()))
        }
    }
}

fn complex(path: &Path) -> Result<ParityComplex, Failure> {
    Ok(json::complex_from_json(&read(path)?)?)
}

fn category(path: &Path) -> Result<FiniteNCat, Failure> {
    Ok(json::cat_from_json(&read(path)?)?)
}

/// `--cap`, else `PARITY_DESC_CAP`, else the default.
fn cap(flag: Option<usize>) -> usize {
    flag.or_else(|| std::env::var("PARITY_DESC_CAP").ok()?.trim().parse().ok()).unwrap_or(DEFAULT_CAP)
}

fn run(cli: Cli) -> Outcome {
    match cli.cmd {
        Cmd::Build { kind, n, out } => {
            let c = match kind {
                Kind::Point => point(),
                Kind::Interval => interval(),
                Kind::Simplex => simplex(n),
                Kind::Cube => cube(n),
                Kind::Glob => glob(n),
            };
            emit(&json::complex_to_json(&c), out.as_deref())
        }
        Cmd::Combine { op, inputs, out } => {
            let cs = inputs.iter().map(|p| complex(p)).collect::<Result<Vec<_>, _>>()?;
            let c = match (op, cs.as_slice()) {
                (Op::Product, [a, b]) => product(a, b)?,
                (Op::Join, [a, b]) => join(a, b)?,
                (Op::Rcone, [a]) => right_cone(a)?,
                (Op::Lcone, [a]) => left_cone(a)?,
                _ => return Err(Failure::Io("product and join take two inputs, cones take one".into())),
            };
            emit(&json::complex_to_json(&c), out.as_deref())
        }
        Cmd::Check { input } => check(&read(&input)?),
        Cmd::Cells { input, dim, cap: c, atoms_only } => {
            let cx = complex(&input)?;
            let bound = dim.unwrap_or(cx.dim());
            let mut lines = String::new();
            if atoms_only {
                for x in (0..cx.len()).filter(|&x| cx.elem_dim(x) <= bound) {
                    lines.push_str(&format!("{}\t{}\n", cx.elem_dim(x), atom(&cx, x).display(&cx)));
                }
            } else {
                for cell in enumerate_cells(&cx, bound, cap(c))? {
                    lines.push_str(&format!("{}\t{}\n", cell_dim(&cx, &cell), cell.display(&cx)));
                }
            }
            emit(&lines, None)
        }
        Cmd::Atom { input, id } => {
            let cx = complex(&input)?;
            emit(&json::cell_to_json(&cx, &atom_by_id(&cx, &id)?), None)
        }
        Cmd::Order { input, dot } => {
            let cx = complex(&input)?;
            let order = cx.triangle_order();
            if dot {
                return emit(&order.to_dot(&cx), None);
            }
            let lines: String = order.linear_extension().into_iter().map(|x| format!("{}\n", cx.id(x))).collect();
            emit(&lines, None)?;
            if let Some(cycle) = order.cycle() {
                let ids: Vec<&str> = cycle.iter().map(|&x| cx.id(x)).collect();
                eprintln!("not antisymmetric: {}", ids.join(" ◁ "));
                return Err(Failure::Invalid);
            }
            Ok(())
        }
        Cmd::Snapshot { input, dim, cap: c, out } => {
            let cx = complex(&input)?;
            let a = free_snapshot(&cx, dim.unwrap_or(cx.dim()), cap(c))?;
            emit(&json::cat_to_json(&a), out.as_deref())
        }
        Cmd::Nerve { input, levels, classical, cap: c, out } => {
            let a = category(&input)?;
            let s = if classical { classical_nerve(&a, levels)? } else { nerve(&a, levels, cap(c))?.0 };
            emit(&json::simplicial_to_json(&s), out.as_deref())
        }
        Cmd::Cosimp(CosimpCmd::Hom { source, target, top, out }) => {
            let (a, x) = (category(&source)?, category(&target)?);
            let e = cosimp_hom(&classical_nerve(&a, top)?, &x)?;
            emit(&json::cosimp_to_json(&e), out.as_deref())
        }
        Cmd::Cosimp(CosimpCmd::Constant { input, top, out }) => {
            let x = category(&input)?;
            emit(&json::cosimp_to_json(&constant(&x, top)), out.as_deref())
        }
        Cmd::Desc { input, n, method, cap: c, out } => {
            let e = json::cosimp_from_json(&read(&input)?)?;
            let explicit = || -> Result<FiniteNCat, Failure> {
                match n {
                    1 => Ok(desc1(&e)?),
                    2 => Ok(desc2(&e)?),
                    _ => Err(Failure::Io(format!("no explicit descent construction for n = {n}"))),
                }
            };
            let result = match method {
                Method::Explicit => explicit()?,
                Method::General => desc_general(&e, n, cap(c))?.cat,
                Method::Both => {
                    let a = explicit()?;
                    let g = desc_general(&e, n, cap(c))?;
                    emit(&json::cat_to_json(&a), out.as_deref())?;
                    return match isomorphism_by_ids(&g.cat, &a, g.composed) {
                        Ok(_) => {
                            eprintln!("AGREE");
                            Ok(())
                        }
                        Err(why) => {
                            eprintln!("DISAGREE: {why}");
                            Err(Failure::Invalid)
                        }
                    };
                }
            };
            emit(&json::cat_to_json(&result), out.as_deref())
        }
        Cmd::Chain { input, out } => emit(&json::chain_to_json(&chain_complex(&complex(&input)?)), out.as_deref()),
        Cmd::Homology { input } => {
            let r = json::chain_from_json(&read(&input)?)?;
            let lines: String = (0..=r.top()).map(|k| format!("H{k}\t{}\n", r.homology(k))).collect();
            emit(&lines, None)
        }
        Cmd::Theta { input, groups, modulus, out } => {
            let mut r = json::chain_from_json(&read(&input)?)?;
            if let Some(p) = modulus {
                r = r.reduce_mod(p)?;
            }
            let t = theta_cat(&r)?;
            if !groups {
                return emit(&json::cat_to_json(&t), out.as_deref());
            }
            let zero = t
                .zero_cells()
                .iter()
                .copied()
                .find(|&x| t.id(x).chars().all(|ch| matches!(ch, '0' | '[' | ']' | ',')))
                .ok_or_else(|| Failure::Io("ϑR has no zero object".into()))?;
            let mut lines = format!("pi0\t{}\n", pi0(&t).len());
            for k in 1..=2 {
                lines.push_str(&format!("pi{k}\t{}\n", homotopy_group(&t, zero, k)?.order()));
            }
            emit(&lines, out.as_deref())
        }
        Cmd::Iso { left, right } => {
            let (a, b) = (complex(&left)?, complex(&right)?);
            match find_isomorphism(&a, &b) {
                Some(map) => {
                    let lines: String = map.iter().enumerate().map(|(x, &y)| format!("{}\t{}\n", a.id(x), b.id(y))).collect();
                    emit(&lines, None)
                }
                None => {
                    eprintln!("not isomorphic");
                    Err(Failure::Invalid)
                }
            }
        }
    }
}

/// Validates whichever kind of object the file holds.
fn check(text: &str) -> Outcome {
    let value: serde_json::Value = serde_json::from_str(text).map_err(Error::from)?;
    let report: Vec<String> = if value.get("elements").is_some() {
        let c = json::complex_from_json(text)?;
        c.validate().violations.iter().map(|v| v.to_string()).collect()
    } else if value.get("cells").is_some() {
        validate_cat(&json::cat_from_json(text)?).violations.iter().map(|v| v.to_string()).collect()
    } else if value.get("levels").is_some() && value.get("cofaces").is_some() {
        json::cosimp_from_json(text)?.violations()
    } else if value.get("basis").is_some() {
        json::chain_from_json(text)?.dd_defects().iter().map(|k| format!("d{} ∘ d{k} ≠ 0", k - 1)).collect()
    } else if value.get("levels").is_some() {
        json::simplicial_from_json(text)?.identity_violations()
    } else {
        return Err(Failure::Io("unrecognized JSON document".into()));
    };
    if report.is_empty() {
        println!("ok");
        Ok(())
    } else {
        for line in report {
            println!("{line}");
        }
        Err(Failure::Invalid)
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid) => ExitCode::from(1),
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if matches!(e, Error::CapacityExceeded(_)) { 3 } else { 2 })
        }
    }
}
