//! Experiment harness: run the solver pipeline over grids of shapes and
//! seeds, record timings next to the complexity predictors, and turn the
//! records into plot series.

use std::io::{Read, Write};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{MonomialOrder, PrimeField};
use crate::combinat::binomial;
use crate::critical::{random_instance, CriticalSystem, ProblemShape};
use crate::error::{Error, Result};
use crate::hilbert::{averages, witness_degree_bound};
use crate::macaulay::{dwit_empirical_from, solve};
use crate::reference::fglm;

/// Column order of the bench CSV.
pub const CSV_HEADER: [&str; 14] = [
    "seed",
    "n",
    "p",
    "degrees",
    "delta",
    "dreg",
    "dwit_bound",
    "dwit_empirical",
    "A",
    "G",
    "logA_over_logG",
    "solve_time_seconds",
    "fglm_time_seconds",
    "status",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    GenericityFailure,
    PositiveDimension,
    DegreeMismatch,
    Error,
}

impl Status {
    fn of_error(e: &Error) -> Self {
        match e {
            Error::GenericityFailure { .. } => Status::GenericityFailure,
            Error::PositiveDimension { .. } => Status::PositiveDimension,
            _ => Status::Error,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub seed: u64,
    pub n: usize,
    pub p: usize,
    /// Degrees `d_0;...;d_p`.
    pub degrees: String,
    pub delta: u64,
    pub dreg: u32,
    pub dwit_bound: u32,
    pub dwit_empirical: Option<u32>,
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "G")]
    pub g: f64,
    #[serde(rename = "logA_over_logG")]
    pub log_a_over_log_g: f64,
    pub solve_time_seconds: f64,
    pub fglm_time_seconds: f64,
    pub status: Status,
}

impl BenchRecord {
    pub fn shape(&self) -> Result<ProblemShape> {
        let degrees = self
            .degrees
            .split(';')
            .map(|d| {
                d.parse()
                    .map_err(|_| Error::UndefinedInput(format!("bad degree list {}", self.degrees)))
            })
            .collect::<Result<Vec<u32>>>()?;
        ProblemShape::new(self.n, self.p, degrees)
    }

    pub fn total_time(&self) -> f64 {
        self.solve_time_seconds + self.fglm_time_seconds
    }
}

/// Outcome of one pipeline run before timing bookkeeping.
struct Run {
    dwit_empirical: Option<u32>,
    solve_time: f64,
    fglm_time: f64,
    status: Status,
}

fn run_instance(sys: &CriticalSystem, delta: u64) -> Run {
    let t = Instant::now();
    let solved = solve(sys);
    let solve_time = t.elapsed().as_secs_f64();
    let mut run = Run {
        dwit_empirical: None,
        solve_time,
        fglm_time: 0.0,
        status: Status::Ok,
    };
    let sol = match solved {
        Ok(s) => s,
        Err(e) => {
            run.status = Status::of_error(&e);
            return run;
        }
    };
    let cap = (10 * delta).max(16) as usize;
    let t = Instant::now();
    let lex = fglm(&sol.basis, MonomialOrder::Lex, cap);
    run.fglm_time = t.elapsed().as_secs_f64();
    let dims = lex.and_then(|lex| {
        Ok((
            sol.basis.quotient_dimension(cap)?,
            lex.quotient_dimension(cap)?,
        ))
    });
    match dims {
        Ok((a, b)) if a as u64 == delta && b as u64 == delta => {}
        Ok(_) => {
            run.status = Status::DegreeMismatch;
            return run;
        }
        Err(e) => {
            run.status = Status::of_error(&e);
            return run;
        }
    }
    match dwit_empirical_from(sys, &sol) {
        Ok(d) => run.dwit_empirical = Some(d),
        Err(e) => run.status = Status::of_error(&e),
    }
    run
}

/// Solve and change order for one `(shape, seed)`, timing both steps.
pub fn bench_instance(shape: &ProblemShape, field: PrimeField, seed: u64) -> BenchRecord {
    let prof = averages(shape);
    let sys = random_instance(shape, field, seed);
    let run = run_instance(&sys, prof.delta);
    BenchRecord {
        seed,
        n: shape.n(),
        p: shape.p(),
        degrees: shape.degrees_string().replace(',', ";"),
        delta: prof.delta,
        dreg: prof.dreg,
        dwit_bound: prof.dwit_bound,
        dwit_empirical: run.dwit_empirical,
        a: prof.a_f64(),
        g: prof.g,
        log_a_over_log_g: prof.log_a_over_log_g(),
        solve_time_seconds: run.solve_time,
        fglm_time_seconds: run.fglm_time,
        status: run.status,
    }
}

#[derive(Clone, Debug)]
pub struct BenchGrid {
    pub cells: Vec<ProblemShape>,
    pub seeds: u64,
    pub first_seed: u64,
}

/// Runs every cell with a discarded warm-up run first. Cells run on a pool
/// of `jobs` workers; records come back ordered by cell, then seed.
pub fn bench_grid(grid: &BenchGrid, field: PrimeField, jobs: usize) -> Result<Vec<BenchRecord>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Internal(e.to_string()))?;
    let seeds: Vec<u64> = (grid.first_seed..grid.first_seed + grid.seeds).collect();
    let per_cell: Vec<Vec<BenchRecord>> = pool.install(|| {
        grid.cells
            .par_iter()
            .map(|shape| {
                if let Some(&s) = seeds.first() {
                    bench_instance(shape, field, s);
                }
                seeds
                    .iter()
                    .map(|&s| bench_instance(shape, field, s))
                    .collect()
            })
            .collect()
    });
    Ok(per_cell.into_iter().flatten().collect())
}

/// All valid shapes with `n <= max_n`, `p` in `p_range`, `d_0` in
/// `d0_range` and constraint degrees in `2..=max_d`.
pub fn shapes(
    max_n: usize,
    p_range: std::ops::RangeInclusive<usize>,
    d0_range: std::ops::RangeInclusive<u32>,
    max_d: u32,
) -> Vec<ProblemShape> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for p in p_range.clone().filter(|&p| p < n) {
            let mut lists: Vec<Vec<u32>> = d0_range.clone().map(|d| vec![d]).collect();
            for _ in 0..p {
                lists = lists
                    .into_iter()
                    .flat_map(|l| {
                        (2..=max_d).map(move |d| {
                            let mut l = l.clone();
                            l.push(d);
                            l
                        })
                    })
                    .collect();
            }
            out.extend(
                lists
                    .into_iter()
                    .filter_map(|d| ProblemShape::new(n, p, d).ok()),
            );
        }
    }
    out
}

/// Number of Macaulay columns at the witness degree bound.
pub fn macaulay_columns(shape: &ProblemShape) -> u64 {
    let n = shape.n() as u64;
    binomial(n + witness_degree_bound(shape) as u64, n)
}

/// Largest Macaulay matrix width admitted in the default grids.
pub const DESK_COLUMNS: u64 = 3000;

/// Desk-scale grid for the time against `log(A)/log(G)` experiment: `n = 4`,
/// every `p`, `d_0 <= 8`, constraint degrees 2 or 3, some degree at least 3.
pub fn fig1_grid() -> Vec<ProblemShape> {
    shapes(4, 1..=3, 1..=8, 3)
        .into_iter()
        .filter(|s| s.n() == 4 && s.max_degree() >= 3 && macaulay_columns(s) <= DESK_COLUMNS)
        .collect()
}

/// Fixed degree `d` everywhere, `p = 1`, `n` from 2 to `max_n`.
pub fn fig2_grid(d: u32, max_n: usize) -> Vec<ProblemShape> {
    (2..=max_n)
        .filter_map(|n| ProblemShape::new(n, 1, vec![d, d]).ok())
        .collect()
}

pub fn write_csv<W: Write>(records: &[BenchRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if records.is_empty() {
        w.write_record(CSV_HEADER).map_err(io_error)?;
    }
    for r in records {
        w.serialize(r).map_err(io_error)?;
    }
    w.flush().map_err(|e| Error::Io(e.to_string()))
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<BenchRecord>> {
    let mut rd = csv::Reader::from_reader(input);
    let header: Vec<String> = rd
        .headers()
        .map_err(io_error)?
        .iter()
        .map(String::from)
        .collect();
    if header != CSV_HEADER {
        return Err(Error::UndefinedInput(format!(
            "unexpected CSV header {}",
            header.join(",")
        )));
    }
    rd.deserialize().map(|r| r.map_err(io_error)).collect()
}

fn io_error(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

/// `(log(A)/log(G), log(time)/log(delta))` for ok rows with `delta > 1`,
/// time being the grevlex solve time in seconds.
pub fn fig1_points(records: &[BenchRecord]) -> Vec<(f64, f64)> {
    records
        .iter()
        .filter(|r| r.status == Status::Ok && r.delta > 1 && r.log_a_over_log_g.is_finite())
        .map(|r| {
            (
                r.log_a_over_log_g,
                log_seconds(r.solve_time_seconds) / (r.delta as f64).ln(),
            )
        })
        .collect()
}

/// `(n, log(time)/log(D))` with `D` the largest degree of the row.
pub fn fig2_points(records: &[BenchRecord]) -> Result<Vec<(f64, f64)>> {
    let mut out = Vec::new();
    for r in records.iter().filter(|r| r.status == Status::Ok) {
        let d = r.shape()?.max_degree() as f64;
        out.push((r.n as f64, log_seconds(r.solve_time_seconds) / d.ln()));
    }
    Ok(out)
}

fn log_seconds(t: f64) -> f64 {
    t.max(1e-9).ln()
}

/// Least-squares slope of `y` against `x`; `None` when `x` is constant.
pub fn least_squares_slope(points: &[(f64, f64)]) -> Option<f64> {
    let k = points.len() as f64;
    if points.len() < 2 {
        return None;
    }
    let mx = points.iter().map(|p| p.0).sum::<f64>() / k;
    let my = points.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx <= f64::EPSILON * k {
        return None;
    }
    Some(sxy / sxx)
}

/// Gnuplot-ready two-column text.
pub fn two_column(points: &[(f64, f64)]) -> String {
    points.iter().map(|(x, y)| format!("{x} {y}\n")).collect()
}
