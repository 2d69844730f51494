//! Mutations along straight-line motions between configurations, found and
//! typed exactly. Also builds pointed paths on which every type occurs.

use itertools::Itertools;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::{lerp_mat, VectorConfig};
use crate::exactnum::{
    self, det, int, isolate_roots, kernel_basis, rat, solve, Mat, Rat, RootInterval, UniPoly,
};
use crate::faces;
use crate::gmatrix::{g_of_pair, GMatrix};
use crate::{Error, Result};

/// Default entry-wise perturbation size used by [`perturb`].
pub fn default_magnitude() -> Rat {
    rat(1, 1_000_000)
}

/// Perturbation attempts made before a motion or a perturbation gives up.
pub const PERTURB_BUDGET: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Flip {
    #[serde(rename = "+-")]
    PosToNeg,
    #[serde(rename = "-+")]
    NegToPos,
}

impl Flip {
    pub fn as_str(self) -> &'static str {
        match self {
            Flip::PosToNeg => "+-",
            Flip::NegToPos => "-+",
        }
    }
}

/// One mutation: the `r`-subset `R` whose determinant changes sign at a
/// simple root isolated by `interval`, and the type of the simplex created.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MutationEvent {
    pub subset: Vec<usize>,
    pub interval: RootInterval,
    pub mtype: (usize, usize),
    pub flip: Flip,
}

impl MutationEvent {
    /// Whether this event has type `(j, k)` up to `(j,k) ≡ (r-j, n-r-k)`.
    pub fn has_type(&self, r: usize, n: usize, j: usize, k: usize) -> bool {
        self.mtype == (j, k) || (j <= r && k <= n - r && self.mtype == (r - j, n - r - k))
    }
}

#[derive(Serialize)]
struct EventJson {
    #[serde(rename = "R")]
    subset: Vec<usize>,
    interval: [String; 2],
    #[serde(rename = "type")]
    mtype: [usize; 2],
    flip: Flip,
}

impl Serialize for MutationEvent {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        EventJson {
            subset: self.subset.iter().map(|i| i + 1).collect(),
            interval: [
                exactnum::format_rat(&self.interval.lo),
                exactnum::format_rat(&self.interval.hi),
            ],
            mtype: [self.mtype.0, self.mtype.1],
            flip: self.flip,
        }
        .serialize(s)
    }
}

/// The motion `V(t) = (1 - t) V + t W` with its mutations in order.
#[derive(Clone, Debug)]
pub struct MotionPath {
    pub start: VectorConfig,
    pub end: VectorConfig,
    pub events: Vec<MutationEvent>,
    /// `samples[i]` lies strictly between event `i` and the next event (or 1).
    pub samples: Vec<Rat>,
}

impl MotionPath {
    /// Configurations before the first event and after each event.
    pub fn configs(&self) -> Vec<VectorConfig> {
        let mut out = vec![self.start.clone()];
        for t in &self.samples {
            out.push(
                self.start
                    .lerp(&self.end, t)
                    .expect("sample points avoid every root"),
            );
        }
        out
    }

    pub fn trace_json(&self) -> String {
        serde_json::to_string_pretty(&self.events).expect("events serialize")
    }
}

struct Candidate {
    subset: Vec<usize>,
    poly: UniPoly,
    interval: RootInterval,
}

/// `det` of the columns `subset` of `(1-t)A + tB` as a polynomial in `t`.
fn det_polynomial(a: &Mat, b: &Mat, subset: &[usize]) -> UniPoly {
    let (sa, sb) = (a.select_columns(subset), b.select_columns(subset));
    let points: Vec<(Rat, Rat)> = (0..=subset.len() as i64)
        .map(|t| {
            let t = int(t);
            let m = lerp_mat(&sa, &sb, &t).expect("same shape");
            let d = det(&m).expect("square");
            (t, d)
        })
        .collect();
    UniPoly::interpolate(&points)
}

/// Finds, validates and classifies every mutation of the straight-line
/// motion from `v` to `w`.
pub fn detect_mutations(v: &VectorConfig, w: &VectorConfig) -> Result<MotionPath> {
    if (v.r(), v.n()) != (w.r(), w.n()) {
        return Err(Error::Dimension(
            "motion between configurations of different shape".into(),
        ));
    }
    let (a, b) = (v.vectors(), w.vectors());
    let (zero, one) = (Rat::zero(), Rat::one());
    let mut cands = Vec::new();
    for subset in (0..v.n()).combinations(v.r()) {
        let poly = det_polynomial(a, b, &subset);
        if poly.is_zero() {
            return Err(Error::NotGeneric {
                reason: "determinant vanishes along the whole path".into(),
                subsets: vec![subset],
            });
        }
        for interval in isolate_roots(&poly, &zero, &one)? {
            if !interval.simple {
                return Err(Error::NotGeneric {
                    reason: "determinant has a multiple root".into(),
                    subsets: vec![subset],
                });
            }
            cands.push(Candidate {
                subset: subset.clone(),
                poly: poly.clone(),
                interval,
            });
        }
    }
    separate(&mut cands)?;

    let mut samples = Vec::with_capacity(cands.len());
    for (i, c) in cands.iter().enumerate() {
        let next = cands.get(i + 1).map_or(&one, |n| &n.interval.lo);
        samples.push((&c.interval.hi + next) / int(2));
    }
    let mut events = Vec::with_capacity(cands.len());
    for (c, t_plus) in cands.iter_mut().zip(&samples) {
        events.push(classify(a, b, c, t_plus)?);
    }
    Ok(MotionPath {
        start: v.clone(),
        end: w.clone(),
        events,
        samples,
    })
}

/// Refines isolating intervals until they are pairwise disjoint, failing if
/// two determinants share a root.
fn separate(cands: &mut [Candidate]) -> Result<()> {
    loop {
        cands.sort_by(|x, y| x.interval.lo.cmp(&y.interval.lo));
        let mut clash = None;
        'outer: for i in 0..cands.len() {
            for j in i + 1..cands.len() {
                if cands[j].interval.lo >= cands[i].interval.hi {
                    break;
                }
                if cands[i].interval.overlaps(&cands[j].interval) {
                    clash = Some((i, j));
                    break 'outer;
                }
            }
        }
        let Some((i, j)) = clash else {
            return Ok(());
        };
        let lo = (&cands[i].interval.lo).max(&cands[j].interval.lo).clone();
        let hi = (&cands[i].interval.hi).min(&cands[j].interval.hi).clone();
        let g = cands[i].poly.gcd(&cands[j].poly);
        if g.degree().unwrap_or(0) > 0 && g.count_roots(&lo, &hi) > 0 {
            return Err(Error::NotGeneric {
                reason: "two subsets become dependent at the same time".into(),
                subsets: vec![cands[i].subset.clone(), cands[j].subset.clone()],
            });
        }
        let (pi, pj) = (cands[i].poly.clone(), cands[j].poly.clone());
        cands[i].interval.bisect(&pi);
        cands[j].interval.bisect(&pj);
    }
}

/// Picks between `(j, k)` and `(r - j, n - r - k)` the one with the smaller
/// `(k, j)`.
pub fn canonical_type(r: usize, n: usize, j: usize, k: usize) -> (usize, usize) {
    let other = (r - j, n - r - k);
    if (other.1, other.0) < (k, j) {
        other
    } else {
        (j, k)
    }
}

/// The signs of the dependency among the columns `R` at the root are read
/// off a cofactor column of `M_R(t)`. At the sample `t+` just after the root,
/// the point `p` with `<v_i(t+), p> = eps_i` (`i` in `R`) lies in the small
/// simplex created by the mutation, and its signature gives the type.
fn classify(a: &Mat, b: &Mat, c: &mut Candidate, t_plus: &Rat) -> Result<MutationEvent> {
    let r = c.subset.len();
    let n = a.cols();
    let (sa, sb) = (a.select_columns(&c.subset), b.select_columns(&c.subset));
    let grid: Vec<(Rat, Mat)> = (0..=r as i64)
        .map(|t| {
            let t = int(t);
            let m = lerp_mat(&sa, &sb, &t).expect("same shape");
            (t, m)
        })
        .collect();

    let mut eps = None;
    for row in 0..r {
        let cof: Vec<UniPoly> = (0..r)
            .map(|col| {
                let pts: Vec<(Rat, Rat)> = grid
                    .iter()
                    .map(|(t, m)| {
                        let minor = drop_row_col(m, row, col);
                        let mut d = det(&minor).expect("square");
                        if (row + col) % 2 == 1 {
                            d = -d;
                        }
                        (t.clone(), d)
                    })
                    .collect();
                UniPoly::interpolate(&pts)
            })
            .collect();
        let mut interval = c.interval.clone();
        let signs: Vec<i8> = cof
            .iter()
            .map(|q| interval.sign_at_root(&c.poly, q))
            .collect();
        if signs.iter().all(|&s| s != 0) {
            eps = Some(signs);
            break;
        }
    }
    let eps = eps.ok_or_else(|| Error::NotGeneric {
        reason: "an (r-1)-subset becomes dependent at a mutation".into(),
        subsets: vec![c.subset.clone()],
    })?;

    let v_plus = lerp_mat(a, b, t_plus)?;
    let m_plus = v_plus.select_columns(&c.subset).transpose();
    let rhs: Vec<Rat> = eps.iter().map(|&s| int(s as i64)).collect();
    let p = solve(&m_plus, &rhs).ok_or_else(|| {
        Error::CrossCheck(format!(
            "columns {:?} are dependent at a sample point",
            c.subset
        ))
    })?;
    let j = eps.iter().filter(|&&s| s < 0).count();
    let mut k = 0;
    for m in (0..n).filter(|m| !c.subset.contains(m)) {
        let dot: Rat = (0..a.rows()).map(|x| v_plus.get(x, m) * &p[x]).sum();
        match exactnum::sgn(&dot) {
            -1 => k += 1,
            0 => {
                return Err(Error::CrossCheck(format!(
                    "sample point of the simplex for {:?} lies on hyperplane {}",
                    c.subset,
                    m + 1
                )))
            }
            _ => {}
        }
    }
    let slope = c.interval.sign_at_root(&c.poly, &c.poly.derivative());
    let flip = if slope > 0 {
        Flip::NegToPos
    } else {
        Flip::PosToNeg
    };
    Ok(MutationEvent {
        subset: c.subset.clone(),
        interval: c.interval.clone(),
        mtype: canonical_type(r, n, j, k),
        flip,
    })
}

fn drop_row_col(m: &Mat, row: usize, col: usize) -> Mat {
    let k = m.rows();
    let mut data = Vec::with_capacity((k - 1) * (k - 1));
    for i in (0..k).filter(|&i| i != row) {
        for j in (0..k).filter(|&j| j != col) {
            data.push(m.get(i, j).clone());
        }
    }
    Mat::new(k - 1, k - 1, data).expect("square minor")
}

/// Sum of the per-mutation g-increments along the straight-line motion.
pub fn g_from_motion(v: &VectorConfig, w: &VectorConfig) -> Result<GMatrix> {
    let path = detect_mutations(v, w)?;
    Ok(g_of_path(v.r(), v.n(), &path.events))
}

pub fn g_of_path(r: usize, n: usize, events: &[MutationEvent]) -> GMatrix {
    let mut g = GMatrix::zeros(r, n);
    for e in events {
        g.add_mutation(e.mtype.0, e.mtype.1);
    }
    g
}

/// g-matrix of the pair computed along a motion and from the two
/// f-matrices; fails unless they agree.
pub fn g_cross_checked(v: &VectorConfig, w: &VectorConfig) -> Result<GMatrix> {
    let moved = g_from_motion(v, w)?;
    let algebraic = g_of_pair(v, w)?;
    if moved != algebraic {
        return Err(Error::CrossCheck(format!(
            "motion gives {:?}, f-matrices give {:?}",
            moved.rows(),
            algebraic.rows()
        )));
    }
    Ok(moved)
}

/// Runs [`detect_mutations`], perturbing the target on genericity failures.
/// Only perturbations that keep `f(W)` are accepted, so the g-matrix of the
/// returned path is `g(V -> W)`. Returns the target actually used.
pub fn detect_with_perturbation(
    v: &VectorConfig,
    w: &VectorConfig,
    seed: u64,
) -> Result<(VectorConfig, MotionPath)> {
    let mut last = match detect_mutations(v, w) {
        Ok(path) => return Ok((w.clone(), path)),
        Err(e @ Error::NotGeneric { .. }) => e,
        Err(e) => return Err(e),
    };
    let fw = faces::f_matrix(w);
    let mut magnitude = default_magnitude();
    for attempt in 0..PERTURB_BUDGET as u64 {
        let target = perturb(w, seed.wrapping_add(attempt), &magnitude)?;
        if faces::f_matrix(&target) != fw {
            magnitude /= int(10);
            continue;
        }
        match detect_mutations(v, &target) {
            Ok(path) => return Ok((target, path)),
            Err(e @ Error::NotGeneric { .. }) => last = e,
            Err(e) => return Err(e),
        }
    }
    Err(last)
}

/// Nudges every entry by `magnitude * k / 1000` for a seeded `k` in
/// `[-1000, 1000]`, redrawing until the result is in general position.
pub fn perturb(w: &VectorConfig, seed: u64, magnitude: &Rat) -> Result<VectorConfig> {
    if magnitude.is_zero() {
        return Ok(w.clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let step = magnitude / int(1000);
    for _ in 0..PERTURB_BUDGET {
        let mut m = w.vectors().clone();
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let k: i64 = rng.gen_range(-1000..=1000);
                let v = m.get(i, j) + &step * int(k);
                m.set(i, j, v);
            }
        }
        if let Ok(c) = VectorConfig::from_mat(m) {
            return Ok(c);
        }
    }
    Err(Error::ResamplingExhausted(PERTURB_BUDGET))
}

/// A pointed path whose consecutive configurations differ by one mutation.
#[derive(Clone, Debug)]
pub struct RichPath {
    pub configs: Vec<VectorConfig>,
    pub events: Vec<MutationEvent>,
}

impl RichPath {
    /// Types `(j, k)` with `1 <= j <= (r-1)/2`, `0 <= k <= (n-r-1)/2` that
    /// no event realizes, up to equivalence.
    pub fn missing_types(&self, n: usize, r: usize) -> Vec<(usize, usize)> {
        let mut missing = Vec::new();
        if n <= r {
            return missing;
        }
        for j in 1..=(r - 1) / 2 {
            for k in 0..=(n - r - 1) / 2 {
                if !self.events.iter().any(|e| e.has_type(r, n, j, k)) {
                    missing.push((j, k));
                }
            }
        }
        missing
    }
}

const EPS_RETRIES: usize = 24;

/// Point-set construction: `d - 1` stationary points `a_1..a_{d-1}`, a
/// cluster of `n - d` points near `a_d`, and one moving point that crosses
/// `aff(A)` along a perpendicular line through each region `R_sigma(A)`.
/// All configurations are lifts `(1, p)`.
pub fn mutation_rich_path(n: usize, r: usize, seed: u64) -> Result<RichPath> {
    if r < 3 || n <= r {
        let c = crate::config::cyclic(n, r);
        return Ok(RichPath {
            configs: vec![c],
            events: Vec::new(),
        });
    }
    let d = r - 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = anchor_points(d, &mut rng);
    let normal = {
        let rows: Vec<Vec<Rat>> = (0..d - 1).map(|i| sub(&a[i], &a[d - 1])).collect();
        kernel_basis(&Mat::from_rows(rows)?).column(0)
    };
    let lines: Vec<(Vec<usize>, Vec<Rat>)> = (1..=d)
        .flat_map(|size| (0..d).combinations(size))
        .map(|sigma| {
            let center = region_point(&a, &sigma);
            (sigma, center)
        })
        .collect();

    let offsets: Vec<Vec<Rat>> = (0..n - d)
        .map(|_| {
            (0..d)
                .map(|_| rat(rng.gen_range(-100..=100), 100))
                .collect()
        })
        .collect();
    let mut eps = rat(1, 10);
    let mut cluster = None;
    for _ in 0..EPS_RETRIES {
        let pts: Vec<Vec<Rat>> = offsets
            .iter()
            .map(|o| a[d - 1].iter().zip(o).map(|(x, y)| x + &eps * y).collect())
            .collect();
        if lines_meet_regions(&a, &pts, &lines, &normal)? {
            cluster = Some(pts);
            break;
        }
        eps /= int(2);
    }
    let cluster = cluster.ok_or_else(|| {
        Error::CrossCheck(format!(
            "no cluster radius worked after {EPS_RETRIES} halvings"
        ))
    })?;

    let mut stationary: Vec<Vec<Rat>> = a[..d - 1].to_vec();
    stationary.extend(cluster);

    // along each line, go far enough to cross every hyperplane aff(Q)
    let mut reach = Rat::one();
    for (_, center) in &lines {
        for q in &stationary[d - 1..] {
            let mut pts: Vec<Vec<Rat>> = a[..d - 1].to_vec();
            pts.push(q.clone());
            if let Some((s, _)) = line_hits_hyperplane(center, &normal, &pts) {
                let s = if s < Rat::zero() { -s } else { s };
                if s > reach {
                    reach = s;
                }
            }
        }
    }
    reach = reach * int(2) + int(1);

    let mut waypoints = Vec::new();
    for (idx, (_, center)) in lines.iter().enumerate() {
        let dir = if idx % 2 == 0 {
            -reach.clone()
        } else {
            reach.clone()
        };
        waypoints.push(axpy(center, &dir, &normal));
        waypoints.push(axpy(center, &(-dir), &normal));
    }

    let lift = |p: &[Rat]| -> Result<VectorConfig> {
        let mut cols: Vec<Vec<Rat>> = stationary
            .iter()
            .chain(std::iter::once(&p.to_vec()))
            .map(|x| {
                std::iter::once(Rat::one())
                    .chain(x.iter().cloned())
                    .collect()
            })
            .collect();
        cols.truncate(n);
        VectorConfig::new(r, cols)
    };

    let mut config = jiggle_until(&mut rng, &waypoints[0], &lift)?;
    let mut configs = vec![config.clone()];
    let mut events = Vec::new();
    for target in &waypoints[1..] {
        let mut tries = 0;
        loop {
            let tconf = jiggle_until(&mut rng, target, &lift)?;
            match detect_mutations(&config, &tconf) {
                Ok(path) => {
                    configs.extend(path.configs().into_iter().skip(1));
                    events.extend(path.events);
                    config = tconf;
                    break;
                }
                Err(Error::NotGeneric { .. }) if tries < PERTURB_BUDGET => tries += 1,
                Err(e) => return Err(e),
            }
        }
    }
    Ok(RichPath { configs, events })
}

/// Lifts `target`, nudged slightly if it is not in general position with
/// the stationary points.
fn jiggle_until(
    rng: &mut ChaCha8Rng,
    target: &[Rat],
    lift: &dyn Fn(&[Rat]) -> Result<VectorConfig>,
) -> Result<VectorConfig> {
    let mut p = target.to_vec();
    for _ in 0..PERTURB_BUDGET {
        if let Ok(c) = lift(&p) {
            return Ok(c);
        }
        p = target
            .iter()
            .map(|x| x + rat(rng.gen_range(-1000..=1000), 1_000_000))
            .collect();
    }
    Err(Error::ResamplingExhausted(PERTURB_BUDGET))
}

/// `d` integer points in general position in `R^d`.
fn anchor_points(d: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<Rat>> {
    loop {
        let pts: Vec<Vec<Rat>> = (0..d)
            .map(|_| (0..d).map(|_| int(rng.gen_range(-10..=10))).collect())
            .collect();
        let diffs: Vec<Vec<Rat>> = (0..d - 1).map(|i| sub(&pts[i], &pts[d - 1])).collect();
        if exactnum::rank(&Mat::from_rows(diffs).expect("rectangular")) == d - 1 {
            return pts;
        }
    }
}

/// Affine combination with coefficient `-1` off `sigma` and the remaining
/// weight spread evenly over `sigma`.
fn region_point(a: &[Vec<Rat>], sigma: &[usize]) -> Vec<Rat> {
    let d = a.len();
    let inside = rat((1 + d - sigma.len()) as i64, sigma.len() as i64);
    let mut p = vec![Rat::zero(); d];
    for (i, ai) in a.iter().enumerate() {
        let alpha = if sigma.contains(&i) {
            inside.clone()
        } else {
            int(-1)
        };
        for (x, y) in p.iter_mut().zip(ai) {
            *x += &alpha * y;
        }
    }
    p
}

/// Where the line `c + s N` meets `aff(pts)`: the parameter `s` and the
/// affine coordinates of the meeting point.
fn line_hits_hyperplane(c: &[Rat], normal: &[Rat], pts: &[Vec<Rat>]) -> Option<(Rat, Vec<Rat>)> {
    let d = c.len();
    // unknowns alpha_1..alpha_d, s
    let mut m = Mat::zeros(d + 1, d + 1);
    let mut rhs = Vec::with_capacity(d + 1);
    for row in 0..d {
        for (i, q) in pts.iter().enumerate() {
            m.set(row, i, q[row].clone());
        }
        m.set(row, d, -normal[row].clone());
        rhs.push(c[row].clone());
    }
    for i in 0..d {
        m.set(d, i, Rat::one());
    }
    rhs.push(Rat::one());
    let x = solve(&m, &rhs)?;
    Some((x[d].clone(), x[..d].to_vec()))
}

fn lines_meet_regions(
    a: &[Vec<Rat>],
    cluster: &[Vec<Rat>],
    lines: &[(Vec<usize>, Vec<Rat>)],
    normal: &[Rat],
) -> Result<bool> {
    let d = a.len();
    for q in cluster {
        let mut pts: Vec<Vec<Rat>> = a[..d - 1].to_vec();
        pts.push(q.clone());
        for (sigma, center) in lines {
            let Some((_, alpha)) = line_hits_hyperplane(center, normal, &pts) else {
                return Ok(false);
            };
            for (i, al) in alpha.iter().enumerate() {
                let want = if sigma.contains(&i) { 1 } else { -1 };
                if exactnum::sgn(al) != want {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn sub(x: &[Rat], y: &[Rat]) -> Vec<Rat> {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

fn axpy(x: &[Rat], s: &Rat, dir: &[Rat]) -> Vec<Rat> {
    x.iter().zip(dir).map(|(a, b)| a + s * b).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{cocyclic, cyclic, gen_random};
    use crate::faces::f_matrix;
    use crate::gmatrix::{delta_f, g_closed_form_neighborly};
    use crate::poly2::BiPoly;
    use proptest::prelude::*;

    fn cfg(r: usize, cols: Vec<Vec<Rat>>) -> VectorConfig {
        VectorConfig::new(r, cols).unwrap()
    }

    fn star() -> VectorConfig {
        VectorConfig::from_i64(2, &[&[1, 0], &[0, 1], &[-1, -1]]).unwrap()
    }

    fn star_target() -> VectorConfig {
        cfg(
            2,
            vec![
                vec![int(1), int(0)],
                vec![int(0), int(1)],
                vec![int(1), rat(9, 10)],
            ],
        )
    }

    #[test]
    fn single_swap_in_the_plane() {
        let v = VectorConfig::from_i64(2, &[&[1, 0], &[0, 1]]).unwrap();
        let w = VectorConfig::from_i64(2, &[&[1, 0], &[1, -1]]).unwrap();
        let path = detect_mutations(&v, &w).unwrap();
        assert_eq!(path.events.len(), 1);
        let e = &path.events[0];
        assert_eq!(e.subset, vec![0, 1]);
        assert!(e.interval.lo < rat(1, 2) && rat(1, 2) < e.interval.hi);
        assert_eq!(e.mtype, (1, 0));
        assert_eq!(e.flip, Flip::PosToNeg);
        assert!(g_from_motion(&v, &w).unwrap().is_zero());
    }

    #[test]
    fn path_through_the_origin_is_rejected() {
        let w = VectorConfig::from_i64(2, &[&[1, 0], &[0, 1], &[1, 1]]).unwrap();
        match detect_mutations(&star(), &w) {
            Err(Error::NotGeneric { subsets, .. }) => {
                let mut s = subsets;
                s.sort();
                assert_eq!(s, vec![vec![0, 2], vec![1, 2]]);
            }
            other => panic!("{other:?}"),
        }
        let (_, path) = detect_with_perturbation(&star(), &w, 3).unwrap();
        assert_eq!(path.events.len(), 2);
    }

    #[test]
    fn star_to_pointed() {
        let path = detect_mutations(&star(), &star_target()).unwrap();
        assert_eq!(path.events.len(), 2);
        let (e1, e2) = (&path.events[0], &path.events[1]);
        assert_eq!(e1.subset, vec![1, 2]);
        assert!(e1.interval.lo < rat(1, 2) && rat(1, 2) < e1.interval.hi);
        assert_eq!(e1.mtype, (0, 0));
        assert_eq!(e2.subset, vec![0, 2]);
        assert!(e2.interval.lo < rat(10, 19) && rat(10, 19) < e2.interval.hi);
        assert_eq!(e2.mtype, (1, 0));
        let g = g_cross_checked(&star(), &star_target()).unwrap();
        assert_eq!(g.rows(), &[vec![1, -1], vec![0, 0], vec![-1, 1]]);

        let json = path.trace_json();
        assert!(
            json.contains("\"R\": [\n      2,\n      3\n    ]"),
            "{json}"
        );
        assert!(json.contains("\"flip\""));
    }

    #[test]
    fn static_motion_is_empty() {
        let v = cyclic(5, 3);
        assert!(g_from_motion(&v, &v).unwrap().is_zero());
    }

    #[test]
    fn cocyclic_to_cyclic_matches_closed_form() {
        let (v, w) = (cocyclic(5, 3), cyclic(5, 3));
        let (target, path) = detect_with_perturbation(&v, &w, 1).unwrap();
        assert_eq!(f_matrix(&target), f_matrix(&w));
        let g = g_of_path(3, 5, &path.events);
        assert_eq!(g.small(), g_closed_form_neighborly(5, 3).unwrap());
    }

    #[test]
    fn perturbation_basics() {
        let w = cyclic(4, 2);
        assert_eq!(perturb(&w, 1, &Rat::zero()).unwrap(), w);
        let a = perturb(&w, 9, &default_magnitude()).unwrap();
        assert_eq!(a, perturb(&w, 9, &default_magnitude()).unwrap());
        assert_ne!(a, w);
        for (x, y) in a
            .columns()
            .iter()
            .flatten()
            .zip(w.columns().iter().flatten())
        {
            let diff = x - y;
            assert!(diff <= default_magnitude() && -diff <= default_magnitude());
        }
    }

    #[test]
    fn canonical_types() {
        assert_eq!(canonical_type(2, 3, 1, 1), (1, 0));
        assert_eq!(canonical_type(3, 6, 3, 3), (0, 0));
        assert_eq!(canonical_type(3, 6, 1, 1), (1, 1));
    }

    fn mutation_delta(r: usize, n: usize, j: usize, k: usize) -> BiPoly {
        let x = BiPoly::x();
        let y = BiPoly::y();
        let x1 = &x + &BiPoly::one();
        let xy = &x + &y;
        let left = &y.pow(k as u32) - &y.pow((n - r - k) as u32);
        let right = &(&x1.pow((r - j) as u32) * &xy.pow(j as u32))
            - &(&x1.pow(j as u32) * &xy.pow((r - j) as u32));
        &left * &right
    }

    #[test]
    fn rich_path_covers_8_5() {
        let p = mutation_rich_path(8, 5, 0).unwrap();
        assert!(p.configs.iter().all(|c| c.is_pointed() && c.is_lifted()));
        assert!(
            p.missing_types(8, 5).is_empty(),
            "{:?}",
            p.missing_types(8, 5)
        );
        for (pair, e) in p.configs.windows(2).zip(&p.events).take(40) {
            let g = g_of_pair(&pair[0], &pair[1]).unwrap();
            assert_eq!(g, g_of_path(5, 8, std::slice::from_ref(e)));
        }
    }

    #[test]
    fn rich_path_small() {
        let p = mutation_rich_path(5, 3, 0).unwrap();
        assert!(p.configs.iter().all(|c| c.is_lifted()));
        assert!(p.events.iter().any(|e| e.has_type(3, 5, 1, 0)));
        assert!(p.missing_types(5, 3).is_empty());
        assert_eq!(p.configs.len(), p.events.len() + 1);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]

        #[test]
        fn motion_agrees_with_f_matrices(
            shape in prop::sample::select(vec![(4usize, 2usize), (5, 3), (5, 2), (6, 3)]),
            s1 in any::<u64>(),
            s2 in any::<u64>(),
            pointed in any::<bool>(),
        ) {
            let (n, r) = shape;
            let v = gen_random(n, r, s1, pointed).unwrap();
            let w = gen_random(n, r, s2, pointed).unwrap();
            let (target, path) = detect_with_perturbation(&v, &w, s1 ^ s2).unwrap();
            let moved = g_of_path(r, n, &path.events);
            prop_assert_eq!(moved, g_of_pair(&v, &target).unwrap());

            // per-event f-change, and sign flips
            let configs = path.configs();
            for (i, e) in path.events.iter().enumerate() {
                let (before, after) = (&configs[i], &configs[i + 1]);
                let df = delta_f(&f_matrix(before), &f_matrix(after)).unwrap();
                let got = BiPoly::from_matrix(&df, crate::poly2::Var::X, crate::poly2::Var::Y);
                prop_assert_eq!(got, mutation_delta(r, n, e.mtype.0, e.mtype.1));
                let (db, da) = (exactnum::sgn(&before.minor(&e.subset)), exactnum::sgn(&after.minor(&e.subset)));
                let want = if e.flip == Flip::PosToNeg { (1, -1) } else { (-1, 1) };
                prop_assert_eq!((db, da), want);
            }
        }

        #[test]
        fn antipodal_type_gives_same_increment(r in 1usize..6, extra in 0usize..5, j in 0usize..6, k in 0usize..5) {
            let n = r + extra;
            prop_assume!(j <= r && k <= n - r);
            let mut a = GMatrix::zeros(r, n);
            let mut b = GMatrix::zeros(r, n);
            a.add_mutation(j, k);
            b.add_mutation(r - j, n - r - k);
            prop_assert_eq!(a, b);
        }
    }
}
