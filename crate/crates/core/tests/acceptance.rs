//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit status
//! if any criterion fails or exceeds its time limit.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use critpoint::algebra::{parse_polynomial, MonomialOrder, PolyRing, PrimeField};
use critpoint::bench::{
    bench_grid, fig1_grid, fig1_points, least_squares_slope, read_csv, write_csv, BenchGrid,
    Status, CSV_HEADER,
};
use critpoint::combinat::binomial;
use critpoint::critical::{
    critical_generators, highest_system, random_instance, CriticalSystem, ProblemShape,
};
use critpoint::eagon_northcott::{alternating_numerator, build_complex, verify_complex};
use critpoint::grothendieck::{
    determinantal_permutation, evaluate_kpoly, grothendieck_poly, IntPolyMV,
};
use critpoint::hilbert::{
    algebraic_degree, degree_of_regularity, hs_critical, hs_determinantal, witness_degree_bound,
};
use critpoint::macaulay::{dwit_empirical_from, solve};
use critpoint::reference::{buchberger, fglm, hilbert_bruteforce, is_groebner};
use critpoint::univariate::IntPoly;
use critpoint::Error;

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn field() -> PrimeField {
    PrimeField::default()
}

fn shape(n: usize, p: usize, d: &[u32]) -> ProblemShape {
    ProblemShape::new(n, p, d.to_vec()).unwrap()
}

/// Every degree vector with `d_0` in `d0s` and constraint degrees in `ds`.
fn degree_vectors(p: usize, d0s: &[u32], ds: &[u32]) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = d0s.iter().map(|&d| vec![d]).collect();
    for _ in 0..p {
        out = out
            .into_iter()
            .flat_map(|v| {
                ds.iter().map(move |&d| {
                    let mut w = v.clone();
                    w.push(d);
                    w
                })
            })
            .collect();
    }
    out
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn kpoly_golden() -> Outcome {
    let s = shape(3, 1, &[3, 2]);
    let want = IntPoly::from_coeffs(vec![1, 0, 0, -3, 1, 1]);
    let det = hs_determinantal(&s).numerator;
    let groth = evaluate_kpoly(&s).map_err(|e| e.to_string())?;
    let en = alternating_numerator(&build_complex(&s).map_err(|e| e.to_string())?);
    check(det == want, || format!("hs_determinantal numerator {det}"))?;
    check(groth == want, || format!("Grothendieck evaluation {groth}"))?;
    check(en == want, || format!("Eagon-Northcott numerator {en}"))?;
    Ok(format!("all three give {want}"))
}

fn grothendieck_golden() -> Outcome {
    let w = determinantal_permutation(&shape(3, 1, &[3, 2]));
    let g = grothendieck_poly(&w).map_err(|e| e.to_string())?;
    let m = g.nvars();
    let t = |e: [u8; 2], c: i64| {
        let mut v = vec![0u8; m];
        v[..2].copy_from_slice(&e);
        IntPolyMV::term(m, v, c)
    };
    let want = t([2, 1], 1)
        .add(&t([1, 2], 1))
        .add(&t([1, 1], -3))
        .add(&t([0, 0], 1));
    check(g == want, || format!("got {g} for {w}"))?;
    Ok(format!("{w} -> {g}"))
}

fn hilbert_cross_check() -> Outcome {
    let mut count = 0;
    let mut resamples = 0;
    for n in 2..=4 {
        for p in 1..n {
            for d in degree_vectors(p, &[1, 2, 3], &[2, 3]) {
                let s = shape(n, p, &d);
                let hs = hs_critical(&s).map_err(|e| e.to_string())?;
                // independent values: delta by direct expansion, dreg by the closed formula
                let delta = direct_algebraic_degree(&d, n, p);
                check(hs.eval(1) as u64 == delta, || {
                    format!("{s}: HS(1) = {} but delta = {delta}", hs.eval(1))
                })?;
                check(hs.eval(1) as u64 == algebraic_degree(&s), || {
                    format!("{s}: HS(1) differs from algebraic_degree")
                })?;
                check(
                    hs.degree().map(|k| k as u32 + 1) == Some(degree_of_regularity(&s)),
                    || format!("{s}: deg HS + 1 differs from dreg"),
                )?;
                let mut matched = false;
                for seed in 0..5u64 {
                    let h = highest_system(&random_instance(&s, field(), seed))
                        .map_err(|e| e.to_string())?;
                    let trunc = hs.coeffs().len() as u32 + 2;
                    match hilbert_bruteforce(&critical_generators(&h).all(), trunc) {
                        Ok(b) if b == hs => {
                            matched = true;
                            break;
                        }
                        Ok(_) | Err(Error::HilbertMismatch { .. }) => resamples += 1,
                        Err(e) => return Err(format!("{s}: {e}")),
                    }
                }
                check(matched, || {
                    format!("{s}: brute force disagrees on 5 samples")
                })?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} shapes, {resamples} resamples"))
}

/// `prod_{i>=1} d_i * sum over i_0 + ... + i_p = n - p of prod (d_j - 1)^{i_j}`,
/// enumerated by recursion on the exponent of each letter.
fn direct_algebraic_degree(d: &[u32], n: usize, p: usize) -> u64 {
    fn sum(w: &[u64], left: u32) -> u64 {
        match w {
            [] => u64::from(left == 0),
            [first, rest @ ..] => (0..=left).map(|e| first.pow(e) * sum(rest, left - e)).sum(),
        }
    }
    let w: Vec<u64> = d.iter().map(|&x| x as u64 - 1).collect();
    d[1..].iter().map(|&x| x as u64).product::<u64>() * sum(&w, (n - p) as u32)
}

fn eagon_northcott_exactness() -> Outcome {
    let mut count = 0;
    for n in 1..=6 {
        for p in 0..n {
            let d0s: &[u32] = if p == 0 { &[2, 3] } else { &[1, 3] };
            for d in degree_vectors(p, d0s, &[2, 3]).into_iter().take(2) {
                let s = shape(n, p, &d);
                let c = build_complex(&s).map_err(|e| format!("{s}: {e}"))?;
                verify_complex(&c).map_err(|e| format!("{s}: {e}"))?;
                let ranks = c.ranks();
                for (k, &r) in ranks.iter().enumerate().skip(1) {
                    let want = binomial(n as u64, (p + k) as u64)
                        * binomial((p + k - 1) as u64, (k - 1) as u64);
                    check(r as u64 == want, || {
                        format!("{s}: rank of stage {k} is {r}, expected {want}")
                    })?;
                }
                count += 1;
            }
        }
    }
    for (d0, d1) in [(2u32, 2u32), (3, 2), (2, 3), (4, 3)] {
        let s = shape(4, 1, &[d0, d1]);
        let c = build_complex(&s).map_err(|e| e.to_string())?;
        check(c.ranks() == vec![1, 6, 8, 3], || {
            format!("{s}: ranks {:?}", c.ranks())
        })?;
        let mut expected = [
            vec![0],
            vec![d0 + d1 - 2; 6],
            [vec![2 * d0 + d1 - 3; 4], vec![d0 + 2 * d1 - 3; 4]].concat(),
            vec![3 * d0 + d1 - 4, 2 * d0 + 2 * d1 - 4, d0 + 3 * d1 - 4],
        ];
        for (k, m) in c.modules().iter().enumerate() {
            let mut got = m.shifts.clone();
            got.sort_unstable();
            expected[k].sort_unstable();
            check(got == expected[k], || {
                format!("{s}: stage {k} shifts {got:?}, expected {:?}", expected[k])
            })?;
        }
    }
    Ok(format!(
        "{count} complexes verified, n=4 p=1 ranks and shifts match"
    ))
}

fn solver_equivalence() -> Outcome {
    const SEEDS: usize = 20;
    let mut shapes = Vec::new();
    for n in 1..=4 {
        for p in 0..=2usize.min(n - 1) {
            let d0s: &[u32] = if p == 0 { &[2, 3] } else { &[1, 2, 3] };
            shapes.extend(
                degree_vectors(p, d0s, &[2, 3])
                    .into_iter()
                    .map(|d| shape(n, p, &d)),
            );
        }
    }
    let mut instances = 0;
    let mut resamples = 0;
    for s in &shapes {
        let delta = algebraic_degree(s) as usize;
        let bound = witness_degree_bound(s);
        let mut ok = 0;
        let mut seed = 0u64;
        while ok < SEEDS {
            let sys = random_instance(s, field(), seed);
            seed += 1;
            let sol = match solve(&sys) {
                Ok(sol) => sol,
                Err(Error::GenericityFailure { .. }) if resamples < 5 * shapes.len() => {
                    resamples += 1;
                    continue;
                }
                Err(e) => return Err(format!("{s} seed {}: {e}", seed - 1)),
            };
            let oracle = buchberger(&critical_generators(&sys).all(), MonomialOrder::Grevlex)
                .map_err(|e| e.to_string())?;
            check(sol.basis == oracle, || {
                format!(
                    "{s} seed {}: Macaulay basis differs from Buchberger",
                    seed - 1
                )
            })?;
            let emp = dwit_empirical_from(&sys, &sol).map_err(|e| e.to_string())?;
            check(emp <= bound, || {
                format!(
                    "{s} seed {}: dwit_empirical {emp} > bound {bound}",
                    seed - 1
                )
            })?;
            let stair = sol
                .basis
                .quotient_dimension(10 * delta)
                .map_err(|e| e.to_string())?;
            check(stair == delta, || {
                format!("{s} seed {}: staircase {stair} != delta {delta}", seed - 1)
            })?;
            let lex =
                fglm(&sol.basis, MonomialOrder::Lex, 10 * delta).map_err(|e| e.to_string())?;
            check(is_groebner(lex.polynomials()), || {
                format!("{s} seed {}: FGLM output is not a Groebner basis", seed - 1)
            })?;
            let lex_dim = lex
                .quotient_dimension(10 * delta)
                .map_err(|e| e.to_string())?;
            check(lex_dim == delta, || {
                format!("{s} seed {}: lex quotient dimension {lex_dim}", seed - 1)
            })?;
            ok += 1;
            instances += 1;
        }
    }
    Ok(format!(
        "{} shapes, {instances} instances, {resamples} resamples",
        shapes.len()
    ))
}

fn quadratic_specialization() -> Outcome {
    let mut count = 0;
    for n in 1..=5 {
        for p in 0..=3usize.min(n - 1) {
            let s = shape(n, p, &vec![2; p + 1]);
            let bound = witness_degree_bound(&s);
            check(bound == 2 * p as u32 + 1, || {
                format!("{s}: dwit_bound {bound}")
            })?;
            let want = (1u64 << p) * binomial(n as u64, p as u64);
            for seed in 0..3 {
                let sys = random_instance(&s, field(), seed);
                let sol = solve(&sys).map_err(|e| format!("{s}: {e}"))?;
                let got = sol
                    .basis
                    .quotient_dimension(10 * want as usize)
                    .map_err(|e| e.to_string())?;
                check(got as u64 == want, || {
                    format!("{s} seed {seed}: {got} critical points, expected {want}")
                })?;
                let emp = dwit_empirical_from(&sys, &sol).map_err(|e| e.to_string())?;
                check(emp <= bound, || {
                    format!("{s} seed {seed}: dwit_empirical {emp}")
                })?;
            }
            count += 1;
        }
    }
    Ok(format!("{count} shapes"))
}

fn running_example() -> Outcome {
    let r = PolyRing::standard(field(), 2);
    let p = |s| parse_polynomial(&r, s).unwrap();
    let sys = CriticalSystem::new(shape(2, 1, &[1, 2]), p("X1"), vec![p("X1^2+X2^2-1")])
        .map_err(|e| e.to_string())?;
    let sol = solve(&sys).map_err(|e| e.to_string())?;
    let lex = fglm(&sol.basis, MonomialOrder::Lex, 20).map_err(|e| e.to_string())?;
    let lr = lex.ring().clone();
    let want = [
        parse_polynomial(&lr, "X2").unwrap(),
        parse_polynomial(&lr, "X1^2-1").unwrap(),
    ];
    check(lex.polynomials() == want, || {
        format!("lex basis {:?}", lex.to_string())
    })?;
    let delta = lex.quotient_dimension(20).map_err(|e| e.to_string())?;
    check(delta == 2, || format!("delta {delta}"))?;
    let emp = dwit_empirical_from(&sys, &sol).map_err(|e| e.to_string())?;
    check(emp == 2, || format!("dwit_empirical {emp}"))?;
    Ok("lex basis {X2, X1^2-1}, delta 2, dwit 2".into())
}

fn bench_trend() -> Outcome {
    let grid = BenchGrid {
        cells: fig1_grid(),
        seeds: 3,
        first_seed: 1,
    };
    check(grid.cells.iter().all(|s| s.max_degree() >= 3), || {
        "grid has an all-quadratic cell".into()
    })?;
    let records = bench_grid(&grid, field(), 1).map_err(|e| e.to_string())?;
    let mut buf = Vec::new();
    write_csv(&records, &mut buf).map_err(|e| e.to_string())?;
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("acceptance-bench.csv");
    std::fs::write(&path, &buf).map_err(|e| e.to_string())?;
    let text = String::from_utf8(buf).map_err(|e| e.to_string())?;
    check(
        text.lines().next() == Some(CSV_HEADER.join(",").as_str()),
        || "CSV header mismatch".into(),
    )?;
    let back = read_csv(text.as_bytes()).map_err(|e| e.to_string())?;
    check(back.len() == records.len(), || {
        "CSV round trip lost rows".into()
    })?;
    for r in records.iter().filter(|r| r.status == Status::Ok) {
        check(r.dwit_empirical.is_some_and(|d| d <= r.dwit_bound), || {
            format!("row {r:?} exceeds the bound")
        })?;
    }
    let points = fig1_points(&records);
    let slope = least_squares_slope(&points).ok_or("degenerate grid")?;
    check(slope > 0.0, || format!("slope {slope:.4} is not positive"))?;
    let failed = records.iter().filter(|r| r.status != Status::Ok).count();
    Ok(format!(
        "{} rows ({failed} not ok), slope {slope:.4}, CSV at {}",
        records.len(),
        path.display()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("K-polynomial golden", Duration::from_secs(1), kpoly_golden),
        (
            "Grothendieck golden",
            Duration::from_secs(1),
            grothendieck_golden,
        ),
        (
            "Hilbert series cross-check",
            Duration::from_secs(60),
            hilbert_cross_check,
        ),
        (
            "Eagon-Northcott exactness",
            Duration::from_secs(60),
            eagon_northcott_exactness,
        ),
        (
            "solver-oracle equivalence",
            Duration::from_secs(600),
            solver_equivalence,
        ),
        (
            "quadratic specialization",
            Duration::from_secs(120),
            quadratic_specialization,
        ),
        ("running example", Duration::from_secs(1), running_example),
        (
            "bench trend and CSV schema",
            Duration::from_secs(900),
            bench_trend,
        ),
    ];
    let mut failures = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let verdict = match outcome {
            Ok(detail) if took <= *limit => ("PASS", detail),
            Ok(detail) => ("FAIL", format!("exceeded {:.0?} limit; {detail}", limit)),
            Err(msg) => ("FAIL", msg),
        };
        if verdict.0 == "FAIL" {
            failures += 1;
        }
        println!(
            "{} {}. {name} ({:.2}s): {}",
            verdict.0,
            i + 1,
            took.as_secs_f64(),
            verdict.1
        );
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
