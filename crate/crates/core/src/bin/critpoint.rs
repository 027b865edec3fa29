//! `critpoint` command-line tool.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use critpoint::algebra::{MonomialOrder, PrimeField, DEFAULT_PRIME};
use critpoint::bench::{
    bench_grid, fig1_grid, fig1_points, fig2_grid, fig2_points, least_squares_slope, read_csv,
    shapes, two_column, write_csv, BenchGrid,
};
use critpoint::critical::{load_instance, random_instance, write_instance, ProblemShape};
use critpoint::eagon_northcott::{alternating_numerator, build_complex, verify_complex, MAX_N};
use critpoint::grothendieck::{determinantal_permutation, evaluate_kpoly, grothendieck_poly};
use critpoint::hilbert::{averages, hs_critical, hs_determinantal};
use critpoint::macaulay::{dwit_empirical_from, solve};
use critpoint::reference::fglm;
use critpoint::{Error, Result};

#[derive(Parser)]
#[command(
    name = "critpoint",
    version,
    about = "Critical points of polynomial optimization problems over GF(p)"
)]
struct Cli {
    /// Prime modulus of the coefficient field.
    #[arg(long, global = true, env = "CRITPOINT_PRIME", default_value_t = DEFAULT_PRIME)]
    prime: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct ShapeArgs {
    /// Number of variables.
    #[arg(long)]
    n: usize,
    /// Number of constraints.
    #[arg(long)]
    p: usize,
    /// Degrees d0,d1,...,dp (objective first).
    #[arg(long, value_delimiter = ',', required = true)]
    degrees: Vec<u32>,
}

impl ShapeArgs {
    fn shape(&self) -> Result<ProblemShape> {
        ProblemShape::new(self.n, self.p, self.degrees.clone())
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Figure {
    Fig1,
    Fig2,
}

#[derive(Subcommand)]
enum Command {
    /// Write a random instance file.
    Gen {
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file (stdout when absent).
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Closed-form complexity predictors and Hilbert series of a shape.
    Analyze {
        #[command(flatten)]
        shape: ShapeArgs,
    },
    /// Grevlex and lex Gröbner bases of the critical ideal of an instance.
    Solve { input: PathBuf },
    /// Grothendieck polynomial of the shape's permutation and its K-polynomial.
    Kpoly {
        #[command(flatten)]
        shape: ShapeArgs,
    },
    /// Build and verify the Eagon-Northcott complex of a shape.
    EnCheck {
        #[command(flatten)]
        shape: ShapeArgs,
    },
    /// Compare the three K-polynomial computations over a grid of shapes.
    Sweep {
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        #[arg(long, default_value_t = 3)]
        max_degree: u32,
    },
    /// Time the solver over a grid of shapes and seeds, writing CSV.
    Bench {
        #[arg(long, value_enum, default_value = "fig1")]
        grid: Figure,
        #[arg(long, default_value_t = 3)]
        seeds: u64,
        #[arg(long, default_value_t = 1)]
        first_seed: u64,
        /// Worker threads.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Common degree of the fig2 grid.
        #[arg(long, default_value_t = 3)]
        degree: u32,
        /// Largest n of the fig2 grid.
        #[arg(long, default_value_t = 5)]
        max_n: usize,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Two-column plot series from a bench CSV.
    PlotData {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "fig1")]
        figure: Figure,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<()> {
    match output {
        Some(path) => {
            fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
        }
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Error::Io(e.to_string())),
    }
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn analyze(shape: &ProblemShape) -> Result<String> {
    let prof = averages(shape);
    let hs = hs_critical(shape)?;
    Ok(format!(
        "shape: {shape}\nA: {} ({:.6})\nG: {}^(1/{}) ({:.6})\nlogA_over_logG: {:.6}\ndelta: {}\ndreg: {}\ndwit_bound: {}\nhilbert_series: {}\n",
        prof.a,
        prof.a_f64(),
        prof.g_radicand,
        prof.g_root,
        prof.g,
        prof.log_a_over_log_g(),
        prof.delta,
        prof.dreg,
        prof.dwit_bound,
        join(hs.coeffs()),
    ))
}

fn solve_file(input: &std::path::Path) -> Result<String> {
    let sys = load_instance(input)?;
    let sol = solve(&sys)?;
    let delta = sol
        .basis
        .quotient_dimension(critpoint::groebner::DEFAULT_STAIRCASE_CAP)?;
    let lex = fglm(&sol.basis, MonomialOrder::Lex, delta)?;
    let dwit = dwit_empirical_from(&sys, &sol)?;
    Ok(format!(
        "grevlex:\n{}lex:\n{}delta: {delta}\ndwit_empirical: {dwit}\n",
        sol.basis, lex
    ))
}

fn kpoly(shape: &ProblemShape) -> Result<String> {
    let w = determinantal_permutation(shape);
    let g = grothendieck_poly(&w)?;
    let k = evaluate_kpoly(shape)?;
    Ok(format!("permutation: {w}\ngrothendieck: {g}\nkpoly: {k}\n"))
}

fn en_check(shape: &ProblemShape) -> Result<String> {
    let c = build_complex(shape)?;
    let report = verify_complex(&c)?;
    let mut out = format!("ranks: {}\n", join(&c.ranks()));
    for (k, m) in c.modules().iter().enumerate() {
        out += &format!("shifts[{k}]: {}\n", join(&m.shifts));
    }
    out += &format!(
        "composites_checked: {}\nentries_checked: {}\nnumerator: {}\nverified: ok\n",
        report.composites_checked,
        report.entries_checked,
        alternating_numerator(&c)
    );
    Ok(out)
}

/// Returns the report and whether every shape agreed.
fn sweep(max_n: usize, max_degree: u32) -> Result<(String, bool)> {
    let mut out = String::new();
    let mut all_ok = true;
    for shape in shapes(max_n, 1..=max_n, 1..=max_degree, max_degree) {
        let num = hs_determinantal(&shape).numerator;
        let mut ok = evaluate_kpoly(&shape)? == num;
        if shape.n() <= MAX_N.min(6) {
            ok &= alternating_numerator(&build_complex(&shape)?) == num;
        }
        let hs = hs_critical(&shape)?;
        let prof = averages(&shape);
        ok &=
            hs.eval(1) as u64 == prof.delta && hs.degree().map(|d| d as u32 + 1) == Some(prof.dreg);
        all_ok &= ok;
        out += &format!("{shape}: {}\n", if ok { "ok" } else { "MISMATCH" });
    }
    Ok((out, all_ok))
}

fn run(cli: Cli) -> Result<ExitCode> {
    let field = PrimeField::new(cli.prime)?;
    match cli.command {
        Command::Gen {
            shape,
            seed,
            output,
        } => {
            let sys = random_instance(&shape.shape()?, field, seed);
            emit(&output, &write_instance(&sys))?;
        }
        Command::Analyze { shape } => emit(&None, &analyze(&shape.shape()?)?)?,
        Command::Solve { input } => emit(&None, &solve_file(&input)?)?,
        Command::Kpoly { shape } => emit(&None, &kpoly(&shape.shape()?)?)?,
        Command::EnCheck { shape } => emit(&None, &en_check(&shape.shape()?)?)?,
        Command::Sweep { max_n, max_degree } => {
            let (text, ok) = sweep(max_n, max_degree)?;
            emit(&None, &text)?;
            if !ok {
                return Ok(ExitCode::from(2));
            }
        }
        Command::Bench {
            grid,
            seeds,
            first_seed,
            jobs,
            degree,
            max_n,
            output,
        } => {
            let cells = match grid {
                Figure::Fig1 => fig1_grid(),
                Figure::Fig2 => fig2_grid(degree, max_n),
            };
            let records = bench_grid(
                &BenchGrid {
                    cells,
                    seeds,
                    first_seed,
                },
                field,
                jobs,
            )?;
            let mut buf = Vec::new();
            write_csv(&records, &mut buf)?;
            emit(&output, &String::from_utf8_lossy(&buf))?;
            if let Figure::Fig1 = grid {
                if let Some(s) = least_squares_slope(&fig1_points(&records)) {
                    eprintln!("slope: {s:.6}");
                }
            }
        }
        Command::PlotData {
            input,
            figure,
            output,
        } => {
            let file = fs::File::open(&input)
                .map_err(|e| Error::Io(format!("{}: {e}", input.display())))?;
            let records = read_csv(file)?;
            let points = match figure {
                Figure::Fig1 => fig1_points(&records),
                Figure::Fig2 => fig2_points(&records)?,
            };
            emit(&output, &two_column(&points))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Parse { .. }
                | Error::Io(_)
                | Error::InvalidShape(_)
                | Error::InvalidModulus(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}
