//! Exact ranks of the linear spans of g-matrices, f-matrices and
//! f*-matrices over sampled configurations.

use std::collections::BTreeSet;
use std::thread;

use num_traits::Zero;
use serde::Serialize;

use crate::config::{cocyclic, cyclic, gen_random, VectorConfig};
use crate::exactnum::{int, rank, Mat, Rat};
use crate::faces::{f_matrix, fstar_matrix};
use crate::gmatrix::{apply_s, g_of_pair, GMatrix};
use crate::motion::mutation_rich_path;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    General,
    Pointed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Quantity {
    G,
    F,
    Fstar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpanReport {
    pub n: usize,
    pub r: usize,
    pub mode: Mode,
    pub quantity: Quantity,
    pub samples_used: usize,
    pub achieved_rank: usize,
    pub theoretical_dim: usize,
    pub reached: bool,
    /// Descriptors of the sampled configurations picked by [`greedy_basis`].
    pub basis_seeds: Vec<String>,
}

impl SpanReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// `floor((r+1)/2) * floor((n-r+1)/2)` in general mode and
/// `floor((r-1)/2) * floor((n-r+1)/2)` for pointed configurations.
pub fn theoretical_dim(n: usize, r: usize, mode: Mode) -> usize {
    let rows = match mode {
        Mode::General => (r + 1) / 2,
        Mode::Pointed => (r - 1) / 2,
    };
    rows * ((n - r + 1) / 2)
}

/// A labelled configuration compared against the base `cyclic(n, r)`.
#[derive(Clone, Debug)]
pub struct Sample {
    pub label: String,
    pub config: VectorConfig,
}

/// `samples` configurations: `cocyclic` (general mode only) followed by
/// seeded random ones, pointed in pointed mode.
pub fn sample_configs(
    n: usize,
    r: usize,
    mode: Mode,
    samples: usize,
    seed: u64,
) -> Result<Vec<Sample>> {
    let mut out = Vec::with_capacity(samples);
    if mode == Mode::General && samples > 0 {
        out.push(Sample {
            label: "cocyclic".into(),
            config: cocyclic(n, r),
        });
    }
    let pointed = mode == Mode::Pointed;
    let mut i = 0u64;
    while out.len() < samples {
        let s = seed.wrapping_add(i);
        out.push(Sample {
            label: format!("random(seed={s})"),
            config: gen_random(n, r, s, pointed)?,
        });
        i += 1;
    }
    Ok(out)
}

/// Configurations taken around the first occurrence of each mutation type on
/// a mutation-rich pointed path. Consecutive configurations differ by one
/// mutation, so these reach every basis direction of the pointed space.
pub fn rich_path_samples(n: usize, r: usize, seed: u64) -> Result<Vec<Sample>> {
    let path = mutation_rich_path(n, r, seed)?;
    let mut seen = BTreeSet::new();
    let mut picks = BTreeSet::new();
    for (i, e) in path.events.iter().enumerate() {
        if seen.insert(e.mtype) {
            picks.insert(i);
            picks.insert(i + 1);
        }
    }
    Ok(picks
        .into_iter()
        .map(|i| Sample {
            label: format!("rich-path(seed={seed},step={i})"),
            config: path.configs[i].clone(),
        })
        .collect())
}

fn par_map<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> Result<U> + Sync) -> Result<Vec<U>> {
    let workers = thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(items.len().max(1));
    let chunk = items.len().div_ceil(workers).max(1);
    thread::scope(|scope| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|c| scope.spawn(|| c.iter().map(&f).collect::<Result<Vec<U>>>()))
            .collect();
        let mut out = Vec::with_capacity(items.len());
        for h in handles {
            out.extend(h.join().expect("span worker panicked")?);
        }
        Ok(out)
    })
}

/// Flattened small g-matrix of `cyclic -> V`; pointed mode drops row 0 after
/// checking that it vanishes.
fn g_vector(base: &VectorConfig, s: &Sample, mode: Mode) -> Result<Vec<Rat>> {
    let g: GMatrix = g_of_pair(base, &s.config)?;
    let small = g.small();
    let rows = match mode {
        Mode::General => &small.g[..],
        Mode::Pointed => {
            if small
                .g
                .first()
                .is_some_and(|row| row.iter().any(|&x| x != 0))
            {
                return Err(Error::CrossCheck(format!(
                    "pointed pair cyclic -> {} has nonzero row g_0: {:?}",
                    s.label, small.g[0]
                )));
            }
            small.g.get(1..).unwrap_or(&[])
        }
    };
    Ok(rows.iter().flatten().map(|&x| int(x)).collect())
}

fn report(
    n: usize,
    r: usize,
    mode: Mode,
    quantity: Quantity,
    samples: &[Sample],
    vectors: &[Vec<Rat>],
) -> SpanReport {
    let theoretical_dim = theoretical_dim(n, r, mode);
    let achieved_rank = if vectors.is_empty() || vectors[0].is_empty() {
        0
    } else {
        rank(&Mat::from_rows(vectors.to_vec()).expect("equal lengths"))
    };
    let basis = greedy_basis(vectors);
    debug_assert_eq!(basis.len(), achieved_rank);
    SpanReport {
        n,
        r,
        mode,
        quantity,
        samples_used: samples.len(),
        achieved_rank,
        theoretical_dim,
        reached: achieved_rank == theoretical_dim,
        basis_seeds: basis
            .into_iter()
            .map(|i| samples[i].label.clone())
            .collect(),
    }
}

fn check_shape(n: usize, r: usize) -> Result<()> {
    if r == 0 || n <= r {
        return Err(Error::Dimension(format!(
            "span needs n > r >= 1, got n={n}, r={r}"
        )));
    }
    Ok(())
}

/// Rank of the g-matrices `g(cyclic -> V_i)` over the given samples.
pub fn g_span_rank_of(n: usize, r: usize, mode: Mode, samples: &[Sample]) -> Result<SpanReport> {
    check_shape(n, r)?;
    let base = cyclic(n, r);
    let vectors = par_map(samples, |s| g_vector(&base, s, mode))?;
    Ok(report(n, r, mode, Quantity::G, samples, &vectors))
}

/// Rank of `{f(V_i) - f(cyclic)}` over the given samples.
pub fn f_affine_span_rank_of(
    n: usize,
    r: usize,
    mode: Mode,
    samples: &[Sample],
) -> Result<SpanReport> {
    check_shape(n, r)?;
    let f0 = f_matrix(&cyclic(n, r));
    let vectors = par_map(samples, |s| {
        let f = f_matrix(&s.config);
        Ok(f.rows()
            .iter()
            .flatten()
            .zip(f0.rows().iter().flatten())
            .map(|(a, b)| int(a - b))
            .collect())
    })?;
    Ok(report(n, r, mode, Quantity::F, samples, &vectors))
}

/// Rank of `{f*(V_i) - f*(cyclic)}`, each difference checked against `S`
/// applied to the g-matrix of the pair.
pub fn fstar_span_rank_of(
    n: usize,
    r: usize,
    mode: Mode,
    samples: &[Sample],
) -> Result<SpanReport> {
    check_shape(n, r)?;
    let base = cyclic(n, r);
    let f0 = fstar_matrix(&base);
    let vectors = par_map(samples, |s| {
        let f = fstar_matrix(&s.config);
        let diff: Vec<Vec<i64>> = f
            .rows()
            .iter()
            .zip(f0.rows())
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect())
            .collect();
        let via_s = apply_s(&g_of_pair(&base, &s.config)?);
        if via_s != diff {
            return Err(Error::CrossCheck(format!(
                "f*(cyclic -> {}) differs from S applied to its g-matrix",
                s.label
            )));
        }
        Ok(diff.into_iter().flatten().map(int).collect())
    })?;
    Ok(report(n, r, mode, Quantity::Fstar, samples, &vectors))
}

/// Samples for `(n, r, mode)`, topped up with mutation-rich path
/// configurations in pointed mode when random ones fall short.
fn samples_for(
    n: usize,
    r: usize,
    mode: Mode,
    samples: usize,
    seed: u64,
    quantity: Quantity,
) -> Result<(Vec<Sample>, SpanReport)> {
    let mut pool = sample_configs(n, r, mode, samples, seed)?;
    let run = |pool: &[Sample]| match quantity {
        Quantity::G => g_span_rank_of(n, r, mode, pool),
        Quantity::F => f_affine_span_rank_of(n, r, mode, pool),
        Quantity::Fstar => fstar_span_rank_of(n, r, mode, pool),
    };
    let mut rep = run(&pool)?;
    if !rep.reached && mode == Mode::Pointed && samples >= rep.theoretical_dim {
        pool.extend(rich_path_samples(n, r, seed)?);
        rep = run(&pool)?;
    }
    Ok((pool, rep))
}

/// Samples `samples` configurations and reports the rank of their g-matrices
/// relative to `cyclic(n, r)`.
pub fn g_span_rank(
    n: usize,
    r: usize,
    mode: Mode,
    samples: usize,
    seed: u64,
) -> Result<SpanReport> {
    check_shape(n, r)?;
    Ok(samples_for(n, r, mode, samples, seed, Quantity::G)?.1)
}

/// Like [`g_span_rank`] for the affine span of f-matrices.
pub fn f_affine_span_rank(
    n: usize,
    r: usize,
    mode: Mode,
    samples: usize,
    seed: u64,
) -> Result<SpanReport> {
    check_shape(n, r)?;
    Ok(samples_for(n, r, mode, samples, seed, Quantity::F)?.1)
}

/// Like [`g_span_rank`] for the affine span of f*-matrices.
pub fn fstar_span_rank(
    n: usize,
    r: usize,
    mode: Mode,
    samples: usize,
    seed: u64,
) -> Result<SpanReport> {
    check_shape(n, r)?;
    Ok(samples_for(n, r, mode, samples, seed, Quantity::Fstar)?.1)
}

/// Indices of a maximal linearly independent subfamily, chosen greedily in
/// input order.
pub fn greedy_basis(vectors: &[Vec<Rat>]) -> Vec<usize> {
    // rows kept in echelon form as (pivot, row)
    let mut echelon: Vec<(usize, Vec<Rat>)> = Vec::new();
    let mut picked = Vec::new();
    for (idx, v) in vectors.iter().enumerate() {
        let mut w = v.clone();
        for (pivot, row) in &echelon {
            if w[*pivot].is_zero() {
                continue;
            }
            let factor = &w[*pivot] / &row[*pivot];
            for (x, y) in w.iter_mut().zip(row) {
                *x -= &factor * y;
            }
        }
        if let Some(pivot) = w.iter().position(|x| !x.is_zero()) {
            echelon.push((pivot, w));
            picked.push(idx);
        }
    }
    picked
}
