//! Acceptance suite: one line per criterion, nonzero exit on any failure.
//! All comparisons are exact.

#![allow(clippy::manual_div_ceil)]

use std::process::ExitCode;
use std::time::Instant;

use levels::config::{binomial, cocyclic, cyclic, gen_cocyclic, gen_random};
use levels::exactnum::rat;
use levels::faces::{dependency_patterns, f_matrix, farkas_complement_oracle};
use levels::gmatrix::{check_contraction_deletion, g_closed_form_neighborly, g_of_pair, MinorMode};
use levels::motion::{detect_with_perturbation, g_of_path, mutation_rich_path};
use levels::relations::{
    check_antipodal, check_dehn_sommerville, check_duality, check_totals, total_face_count,
};
use levels::span::{f_affine_span_rank, g_span_rank, Mode};
use levels::{FMatrix, Rat};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn face_totals() -> Outcome {
    let f = f_matrix(&cyclic(6, 3));
    let sums = f.row_sums();
    ensure(sums == vec![32, 60, 30], || format!("row sums {sums:?}"))?;
    for (s, &sum) in sums.iter().enumerate() {
        let formula = total_face_count(6, 2, s).map_err(|e| e.to_string())?;
        ensure(sum == formula, || {
            format!("s={s}: counted {sum}, formula {formula}")
        })?;
    }
    // (1+x)^i terms of f(x,1) with d = 2, n = 6
    let by_binomials: Vec<i64> = (0..=2)
        .map(|s| {
            (s..=2)
                .map(|i| binomial(6, i) * (1 + (-1i64).pow((2 - i) as u32)) * binomial(i, s))
                .sum()
        })
        .collect();
    ensure(by_binomials == sums, || {
        format!("binomial expansion {by_binomials:?}")
    })?;
    Ok("row sums s=0,1,2: 32, 60, 30".into())
}

fn dehn_sommerville() -> Outcome {
    let mut count = 0;
    for i in 0..100u64 {
        let r = 2 + (i % 4) as usize;
        let n = r + ((i / 4) % 5) as usize;
        let v = gen_random(n, r, 1000 + i, i % 2 == 0).map_err(|e| e.to_string())?;
        let rep = check_dehn_sommerville(&f_matrix(&v));
        ensure(rep.holds, || {
            format!("(n,r)=({n},{r}) seed {}: {:?}", 1000 + i, rep.witness)
        })?;
        count += 1;
    }
    Ok(format!("{count} configurations, both forms agree"))
}

fn duality() -> Outcome {
    let mut count = 0;
    for i in 0..30u64 {
        let r = 1 + (i % 4) as usize;
        let n = r + 1 + ((i / 4) as usize % (7 - r));
        let v = gen_random(n, r, 2000 + i, i % 3 == 0).map_err(|e| e.to_string())?;
        let oracle = farkas_complement_oracle(&v).map_err(|e| e.to_string())?;
        let gale = dependency_patterns(&v);
        ensure(oracle == gale, || {
            format!("(n,r)=({n},{r}) seed {}: pattern sets differ", 2000 + i)
        })?;
        let rep = check_duality(&v);
        ensure(rep.holds, || format!("(n,r)=({n},{r}): {:?}", rep.witness))?;
        count += 1;
    }
    Ok(format!("{count} configurations with n <= 7"))
}

fn g_well_defined() -> Outcome {
    let mut pairs = 0;
    let mut perturbed = 0;
    for (n, r) in [(4, 2), (5, 3), (6, 3), (6, 4)] {
        for i in 0..6u64 {
            let seed = 3000 + 10 * n as u64 + i;
            let pointed = i % 2 == 1;
            let v = gen_random(n, r, seed, pointed).map_err(|e| e.to_string())?;
            let w = gen_random(n, r, seed + 500, pointed).map_err(|e| e.to_string())?;
            let (target, path) =
                detect_with_perturbation(&v, &w, seed).map_err(|e| e.to_string())?;
            if target != w {
                perturbed += 1;
            }
            let moved = g_of_path(r, n, &path.events);
            let algebraic = g_of_pair(&v, &w).map_err(|e| e.to_string())?;
            ensure(moved == algebraic, || {
                format!(
                    "(n,r)=({n},{r}) seed {seed}: motion {:?} vs algebraic {:?}",
                    moved.rows(),
                    algebraic.rows()
                )
            })?;
            pairs += 1;
        }
    }
    Ok(format!(
        "{pairs} pairs, {perturbed} needed a perturbed target"
    ))
}

fn closed_form() -> Outcome {
    for (n, r) in [(5, 3), (6, 3), (7, 3), (7, 4)] {
        let got = g_of_pair(&cocyclic(n, r), &cyclic(n, r))
            .map_err(|e| e.to_string())?
            .small();
        let want = g_closed_form_neighborly(n, r).map_err(|e| e.to_string())?;
        ensure(got == want, || {
            format!("(n,r)=({n},{r}): {:?} vs {:?}", got.g, want.g)
        })?;
        if (n, r) == (5, 3) {
            ensure(got.g == vec![vec![1], vec![2]], || {
                format!("(5,3) small g {:?}", got.g)
            })?;
        }
    }
    Ok("4 shapes, (5,3) small g = [[1],[2]]".into())
}

fn contraction_deletion() -> Outcome {
    for i in 0..10u64 {
        let v = gen_random(6, 3, 4000 + i, i % 2 == 0).map_err(|e| e.to_string())?;
        let w = gen_random(6, 3, 4100 + i, i % 3 == 0).map_err(|e| e.to_string())?;
        for mode in [MinorMode::Contract, MinorMode::Delete] {
            let rep = check_contraction_deletion(&v, &w, mode).map_err(|e| e.to_string())?;
            ensure(rep.holds, || {
                format!("pair {i} {mode:?}: {:?}", rep.witness)
            })?;
        }
    }
    Ok("10 pairs at (6,3), contraction and deletion".into())
}

fn span_dimensions() -> Outcome {
    let mut summary = Vec::new();
    for (n, r) in [(6, 3), (7, 3), (7, 4), (8, 5)] {
        for mode in [Mode::General, Mode::Pointed] {
            let g = g_span_rank(n, r, mode, 12, 5000).map_err(|e| e.to_string())?;
            let f = f_affine_span_rank(n, r, mode, 12, 5000).map_err(|e| e.to_string())?;
            ensure(g.reached && f.reached, || {
                format!(
                    "(n,r)=({n},{r}) {mode:?}: g rank {}, f rank {}, dimension {}",
                    g.achieved_rank, f.achieved_rank, g.theoretical_dim
                )
            })?;
            let rows = if mode == Mode::General {
                (r + 1) / 2
            } else {
                (r - 1) / 2
            };
            let dim = rows * ((n - r + 1) / 2);
            ensure(g.theoretical_dim == dim, || {
                format!("(n,r)=({n},{r}) {mode:?}: bound {}", g.theoretical_dim)
            })?;
            let label = if mode == Mode::General {
                "general"
            } else {
                "pointed"
            };
            summary.push(format!("({n},{r}) {label} {dim}"));
        }
    }
    Ok(summary.join(", "))
}

fn rigidity() -> Outcome {
    let reference = f_matrix(&cyclic(6, 3));
    let mut found = 0;
    let mut seed = 6000u64;
    while found < 10 {
        let v = gen_random(6, 3, seed, true).map_err(|e| e.to_string())?;
        seed += 1;
        ensure(seed < 8000, || {
            format!("only {found} convex-position samples")
        })?;
        if v.neighborliness_degree() < 1 {
            continue;
        }
        let f = f_matrix(&v);
        ensure(f == reference, || {
            format!("seed {}: f differs from cyclic(6,3)", seed - 1)
        })?;
        found += 1;
    }
    let reference = f_matrix(&cocyclic(6, 3));
    let mut rng = ChaCha8Rng::seed_from_u64(6100);
    for sample in 0..5 {
        let mut params: Vec<Rat> = Vec::new();
        let mut t = rat(rng.gen_range(-50..50), 7);
        for _ in 0..6 {
            params.push(t.clone());
            t += rat(rng.gen_range(1..40), rng.gen_range(1..9));
        }
        let v = gen_cocyclic(6, 3, &params).map_err(|e| e.to_string())?;
        ensure(v.is_coneighborly(), || {
            format!("cocyclic sample {sample} is not coneighborly")
        })?;
        ensure(f_matrix(&v) == reference, || {
            format!("cocyclic sample {sample}: f differs")
        })?;
    }
    Ok(format!(
        "10 convex 6-gons (scanned {} seeds), 5 cocyclic samples",
        seed - 6000
    ))
}

fn mutation_coverage() -> Outcome {
    let path = mutation_rich_path(8, 5, 0).map_err(|e| e.to_string())?;
    ensure(path.configs.iter().all(|c| c.is_pointed()), || {
        "a configuration is not pointed".into()
    })?;
    let missing = path.missing_types(8, 5);
    ensure(missing.is_empty(), || format!("missing types {missing:?}"))?;
    for (j, k) in [(1, 0), (1, 1), (2, 0), (2, 1)] {
        ensure(path.events.iter().any(|e| e.has_type(5, 8, j, k)), || {
            format!("type ({j},{k}) absent")
        })?;
    }
    Ok(format!(
        "{} events over {} pointed configurations",
        path.events.len(),
        path.configs.len()
    ))
}

fn negative_control() -> Outcome {
    let mut corrupted = 0;
    for v in [
        cyclic(6, 3),
        gen_random(7, 4, 7000, false).map_err(|e| e.to_string())?,
    ] {
        let f = f_matrix(&v);
        for s in 0..f.rows().len() {
            for t in 0..f.rows()[s].len() {
                for delta in [-1i64, 1] {
                    let mut rows = f.rows().to_vec();
                    rows[s][t] += delta;
                    let bad = FMatrix::new(f.d(), f.n(), rows).map_err(|e| e.to_string())?;
                    let reports = [
                        check_antipodal(&bad),
                        check_totals(&bad),
                        check_dehn_sommerville(&bad),
                    ];
                    let failing: Vec<_> = reports.iter().filter(|r| !r.holds).collect();
                    ensure(!failing.is_empty(), || {
                        format!("f[{s}][{t}] {delta:+} went unnoticed")
                    })?;
                    ensure(failing.iter().all(|r| r.witness.is_some()), || {
                        "failure without witness".into()
                    })?;
                    corrupted += 1;
                }
            }
        }
    }
    Ok(format!("{corrupted} corruptions all detected"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("face totals", face_totals),
        ("Dehn-Sommerville", dehn_sommerville),
        ("duality", duality),
        ("g well-definedness", g_well_defined),
        ("closed form", closed_form),
        ("contraction/deletion", contraction_deletion),
        ("span dimensions", span_dimensions),
        ("rigidity", rigidity),
        ("mutation coverage", mutation_coverage),
        ("negative control", negative_control),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] {:>2} {name} ({secs:.2}s): {detail}", i + 1),
            Err(why) => {
                failures += 1;
                println!("[FAIL] {:>2} {name} ({secs:.2}s): {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
