//! Vector configurations in general position: construction, generators,
//! Gale duality, contraction and deletion.

use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::exactnum::{self, det, int, kernel_basis, Mat, Rat};
use crate::faces::{self, Sign, SignVector};
use crate::{Error, Result};

/// Attempts made by [`gen_random`] before giving up.
pub const RESAMPLE_BUDGET: usize = 1000;

/// `n` vectors in `R^r`, stored as the columns of an `r x n` matrix, with
/// every `r`-subset linearly independent.
#[derive(Clone, PartialEq, Eq)]
pub struct VectorConfig {
    vectors: Mat,
}

impl VectorConfig {
    /// Builds a configuration from its columns. Fails with the first
    /// dependent `r`-subset if the columns are not in general position.
    pub fn new(r: usize, columns: Vec<Vec<Rat>>) -> Result<Self> {
        let n = columns.len();
        if r == 0 {
            return Err(Error::Dimension("rank must be at least 1".into()));
        }
        if n < r {
            return Err(Error::Dimension(format!("n = {n} < r = {r}")));
        }
        if let Some(bad) = columns.iter().position(|c| c.len() != r) {
            return Err(Error::Dimension(format!(
                "vector {} has {} coordinates, expected {r}",
                bad + 1,
                columns[bad].len()
            )));
        }
        Self::from_mat(Mat::from_columns(r, &columns)?)
    }

    pub fn from_i64(r: usize, columns: &[&[i64]]) -> Result<Self> {
        let cols = columns
            .iter()
            .map(|c| c.iter().map(|&x| int(x)).collect())
            .collect();
        Self::new(r, cols)
    }

    /// Wraps an `r x n` matrix, validating general position.
    pub fn from_mat(vectors: Mat) -> Result<Self> {
        let (r, n) = (vectors.rows(), vectors.cols());
        if r == 0 || n < r {
            return Err(Error::Dimension(format!("{r}x{n} is not a configuration")));
        }
        if let Some(subset) = first_dependent_subset(&vectors) {
            return Err(Error::NotGeneralPosition { subset });
        }
        Ok(Self { vectors })
    }

    pub fn r(&self) -> usize {
        self.vectors.rows()
    }

    pub fn n(&self) -> usize {
        self.vectors.cols()
    }

    /// Dimension of the sphere `S^d` cut by the arrangement.
    pub fn d(&self) -> usize {
        self.r() - 1
    }

    pub fn vectors(&self) -> &Mat {
        &self.vectors
    }

    pub fn vector(&self, i: usize) -> Vec<Rat> {
        self.vectors.column(i)
    }

    pub fn columns(&self) -> Vec<Vec<Rat>> {
        self.vectors.columns()
    }

    /// Determinant of the columns indexed by `subset`, in that order.
    pub fn minor(&self, subset: &[usize]) -> Rat {
        det(&self.vectors.select_columns(subset)).expect("square by construction")
    }

    /// Signs of `<v_i, u>` for every column.
    pub fn signature(&self, u: &[Rat]) -> SignVector {
        let signs = (0..self.n())
            .map(|i| {
                let dot: Rat = (0..self.r()).map(|k| self.vectors.get(k, i) * &u[k]).sum();
                Sign::of(&dot)
            })
            .collect();
        SignVector::new(signs)
    }

    /// Gale dual: the rank-`(n - r)` configuration whose rows span the
    /// kernel of `V`.
    pub fn gale_dual(&self) -> Result<Self> {
        if self.n() == self.r() {
            return Err(Error::EmptyDual);
        }
        let k = kernel_basis(&self.vectors);
        Self::from_mat(k.transpose())
    }

    /// `V / v_i`: the other columns projected to `v_i^perp`, written in a
    /// rational basis of that hyperplane.
    pub fn contract(&self, i: usize) -> Result<Self> {
        self.check_index(i)?;
        if self.r() < 2 {
            return Err(Error::Dimension(
                "cannot contract a rank-1 configuration".into(),
            ));
        }
        let vi = Mat::from_columns(self.r(), &[self.vector(i)])?.transpose();
        let basis = kernel_basis(&vi);
        let rest = self.vectors.select_columns(&others(self.n(), i));
        Self::from_mat(basis.transpose().mul(&rest)?)
    }

    /// `V \ v_i`.
    pub fn delete(&self, i: usize) -> Result<Self> {
        self.check_index(i)?;
        if self.n() == self.r() {
            return Err(Error::Dimension("deleting from n = r leaves n < r".into()));
        }
        Self::from_mat(self.vectors.select_columns(&others(self.n(), i)))
    }

    /// `A V` for a square matrix `A`.
    pub fn transform(&self, a: &Mat) -> Result<Self> {
        Self::from_mat(a.mul(&self.vectors)?)
    }

    /// Straight-line interpolation `(1 - t) V + t W` evaluated at `t`.
    /// May fail if the result is not in general position.
    pub fn lerp(&self, other: &Self, t: &Rat) -> Result<Self> {
        Self::from_mat(lerp_mat(&self.vectors, &other.vectors, t)?)
    }

    /// Whether every column has first coordinate 1, i.e. the configuration
    /// is the lift of a point set.
    pub fn is_lifted(&self) -> bool {
        (0..self.n()).all(|i| self.vectors.get(0, i).is_one())
    }

    /// Whether all vectors lie in a common open halfspace.
    pub fn is_pointed(&self) -> bool {
        self.is_extremal(&[])
    }

    /// Whether some linear hyperplane contains exactly the vectors in
    /// `subset` and has every other vector strictly on its positive side.
    pub fn is_extremal(&self, subset: &[usize]) -> bool {
        if subset.len() >= self.r() {
            return false;
        }
        let target = SignVector::new(
            (0..self.n())
                .map(|i| {
                    if subset.contains(&i) {
                        Sign::Zero
                    } else {
                        Sign::Pos
                    }
                })
                .collect(),
        );
        faces::dissection_patterns(self)
            .binary_search(&target)
            .is_ok()
    }

    /// Largest `j` such that every subset of at most `j` vectors is
    /// extremal; `-1` when the configuration is not pointed.
    pub fn neighborliness_degree(&self) -> i64 {
        let f = faces::f_matrix(self);
        let mut j = -1;
        for s in 0..=self.d() {
            if f.get(s, 0) != binomial(self.n(), s) {
                break;
            }
            j = s as i64;
        }
        j
    }

    /// Largest `k` with `f_{s,t} = 0` for all `s` and all `t <= k`; `-1` when
    /// the configuration is pointed.
    pub fn coneighborliness_degree(&self) -> i64 {
        let f = faces::f_matrix(self);
        let mut k = -1;
        for t in 0..=self.n() {
            if (0..=self.d()).any(|s| f.get(s, t) != 0) {
                break;
            }
            k = t as i64;
        }
        k
    }

    pub fn is_neighborly(&self) -> bool {
        self.neighborliness_degree() >= ((self.r() as i64) - 1).div_euclid(2)
    }

    pub fn is_coneighborly(&self) -> bool {
        self.coneighborliness_degree() >= ((self.n() - self.r()) as i64 - 1).div_euclid(2)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("configurations always serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.n() {
            return Err(Error::IndexOutOfRange {
                index: i + 1,
                n: self.n(),
            });
        }
        Ok(())
    }
}

impl fmt::Debug for VectorConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cols: Vec<String> = self
            .columns()
            .iter()
            .map(|c| format!("({})", c.iter().map(exactnum::format_rat).join(",")))
            .collect();
        write!(f, "VectorConfig(r={}, [{}])", self.r(), cols.join(", "))
    }
}

#[derive(Serialize, Deserialize)]
struct ConfigJson {
    r: usize,
    n: usize,
    #[serde(with = "exactnum::rat_strings")]
    vectors: Vec<Vec<Rat>>,
}

impl Serialize for VectorConfig {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ConfigJson {
            r: self.r(),
            n: self.n(),
            vectors: self.columns(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for VectorConfig {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = ConfigJson::deserialize(d)?;
        if raw.vectors.len() != raw.n {
            return Err(D::Error::custom(format!(
                "field \"n\" is {} but \"vectors\" has {} entries",
                raw.n,
                raw.vectors.len()
            )));
        }
        VectorConfig::new(raw.r, raw.vectors).map_err(D::Error::custom)
    }
}

fn others(n: usize, i: usize) -> Vec<usize> {
    (0..n).filter(|&j| j != i).collect()
}

fn first_dependent_subset(m: &Mat) -> Option<Vec<usize>> {
    (0..m.cols())
        .combinations(m.rows())
        .find(|s| det(&m.select_columns(s)).expect("square").is_zero())
}

pub(crate) fn lerp_mat(a: &Mat, b: &Mat, t: &Rat) -> Result<Mat> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::Dimension(
            "interpolating configurations of different shape".into(),
        ));
    }
    let s = Rat::one() - t;
    let mut out = Mat::zeros(a.rows(), a.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            out.set(i, j, &s * a.get(i, j) + t * b.get(i, j));
        }
    }
    Ok(out)
}

pub fn binomial(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i64 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i64 / (i + 1) as i64;
    }
    acc
}

/// `v_i = (1, t_i, ..., t_i^{r-1})`.
pub fn gen_cyclic(n: usize, r: usize, params: &[Rat]) -> Result<VectorConfig> {
    check_params(n, params)?;
    let cols = params.iter().map(|t| moment(t, r)).collect();
    VectorConfig::new(r, cols)
}

/// `(-1)^i v_i` with `v_i` as in [`gen_cyclic`], columns labelled from 1.
pub fn gen_cocyclic(n: usize, r: usize, params: &[Rat]) -> Result<VectorConfig> {
    check_params(n, params)?;
    let cols = params
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let v = moment(t, r);
            if i % 2 == 0 {
                v.into_iter().map(|x| -x).collect()
            } else {
                v
            }
        })
        .collect();
    VectorConfig::new(r, cols)
}

/// Parameters `0, 1, ..., n-1`.
pub fn default_params(n: usize) -> Vec<Rat> {
    (0..n as i64).map(int).collect()
}

pub fn cyclic(n: usize, r: usize) -> VectorConfig {
    gen_cyclic(n, r, &default_params(n)).expect("moment curve is in general position")
}

pub fn cocyclic(n: usize, r: usize) -> VectorConfig {
    gen_cocyclic(n, r, &default_params(n)).expect("moment curve is in general position")
}

fn moment(t: &Rat, r: usize) -> Vec<Rat> {
    let mut v = Vec::with_capacity(r);
    let mut p = Rat::one();
    for _ in 0..r {
        v.push(p.clone());
        p *= t;
    }
    v
}

fn check_params(n: usize, params: &[Rat]) -> Result<()> {
    if params.len() != n {
        return Err(Error::Dimension(format!(
            "{} parameters for {n} vectors",
            params.len()
        )));
    }
    if params.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::NonIncreasingParams);
    }
    Ok(())
}

/// Integer entries drawn uniformly from `[-100 n, 100 n]`, resampled until
/// in general position. With `pointed`, the first coordinate is fixed at 1.
pub fn gen_random(n: usize, r: usize, seed: u64, pointed: bool) -> Result<VectorConfig> {
    if r == 0 || n < r {
        return Err(Error::Dimension(format!("n = {n}, r = {r}")));
    }
    let bound = 100 * n as i64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RESAMPLE_BUDGET {
        let cols: Vec<Vec<Rat>> = (0..n)
            .map(|_| {
                (0..r)
                    .map(|k| {
                        if pointed && k == 0 {
                            Rat::one()
                        } else {
                            Rat::from_integer(BigInt::from(rng.gen_range(-bound..=bound)))
                        }
                    })
                    .collect()
            })
            .collect();
        if let Ok(v) = VectorConfig::new(r, cols) {
            return Ok(v);
        }
    }
    Err(Error::ResamplingExhausted(RESAMPLE_BUDGET))
}
