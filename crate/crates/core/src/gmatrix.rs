//! g-matrices of pairs of configurations: the linear maps `T` and `S` taking
//! a g-matrix to the change in f- and f\*-matrices, the inversion of `T`,
//! closed forms, and the contraction/deletion sum identities.

use std::fmt;

use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::config::{binomial, VectorConfig};
use crate::exactnum::{int, Rat, UniPoly};
use crate::faces::{self, FMatrix};
use crate::poly2::BiPoly;
use crate::relations::RelationReport;
use crate::{Error, Result};

/// `C(n, k)` extended by zero to negative arguments.
pub(crate) fn binom(n: i64, k: i64) -> i64 {
    if n < 0 || k < 0 || k > n {
        0
    } else {
        binomial(n as usize, k as usize)
    }
}

/// `(r+1) x (n-r+1)` integer matrix `g_{j,k}` satisfying
/// `g_{j,k} = -g_{r-j,k} = -g_{j,n-r-k} = g_{r-j,n-r-k}`.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GMatrixJson", into = "GMatrixJson")]
pub struct GMatrix {
    r: usize,
    n: usize,
    g: Vec<Vec<i64>>,
}

#[derive(Serialize, Deserialize)]
struct GMatrixJson {
    r: usize,
    n: usize,
    g: Vec<Vec<i64>>,
}

impl TryFrom<GMatrixJson> for GMatrix {
    type Error = Error;
    fn try_from(j: GMatrixJson) -> Result<Self> {
        GMatrix::new(j.r, j.n, j.g)
    }
}

impl From<GMatrix> for GMatrixJson {
    fn from(g: GMatrix) -> Self {
        GMatrixJson {
            r: g.r,
            n: g.n,
            g: g.g,
        }
    }
}

impl GMatrix {
    pub fn new(r: usize, n: usize, g: Vec<Vec<i64>>) -> Result<Self> {
        if n < r || g.len() != r + 1 || g.iter().any(|row| row.len() != n - r + 1) {
            return Err(Error::Dimension(format!(
                "g-matrix for n={n}, r={r} must be {}x{}",
                r + 1,
                n.saturating_sub(r) + 1
            )));
        }
        let m = Self { r, n, g };
        if let Some((j, k)) = m.skew_violation() {
            return Err(Error::InconsistentInput(format!(
                "g-matrix violates skew-symmetry at (j,k)=({j},{k})"
            )));
        }
        Ok(m)
    }

    pub fn zeros(r: usize, n: usize) -> Self {
        Self {
            r,
            n,
            g: vec![vec![0; n - r + 1]; r + 1],
        }
    }

    /// Extends a small g-matrix by the skew-symmetries.
    pub fn from_small(small: &SmallGMatrix) -> Self {
        let (r, n) = (small.r, small.n);
        let mut m = Self::zeros(r, n);
        let c = n - r;
        for (j, row) in small.g.iter().enumerate() {
            for (k, &v) in row.iter().enumerate() {
                m.g[j][k] = v;
                m.g[r - j][k] = -v;
                m.g[j][c - k] = -v;
                m.g[r - j][c - k] = v;
            }
        }
        m
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.g
    }

    pub fn get(&self, j: usize, k: usize) -> i64 {
        self.g
            .get(j)
            .and_then(|row| row.get(k))
            .copied()
            .unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.g.iter().flatten().all(|&x| x == 0)
    }

    pub fn small(&self) -> SmallGMatrix {
        let (rows, cols) = SmallGMatrix::shape(self.r, self.n);
        SmallGMatrix {
            r: self.r,
            n: self.n,
            g: (0..rows).map(|j| self.g[j][..cols].to_vec()).collect(),
        }
    }

    /// `g(W -> V)` from `g(V -> W)`.
    pub fn negated(&self) -> Self {
        Self {
            r: self.r,
            n: self.n,
            g: self
                .g
                .iter()
                .map(|row| row.iter().map(|x| -x).collect())
                .collect(),
        }
    }

    /// Entrywise sum; shapes must agree.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if (self.r, self.n) != (other.r, other.n) {
            return Err(Error::Dimension(
                "adding g-matrices of different shape".into(),
            ));
        }
        let g = self
            .g
            .iter()
            .zip(&other.g)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        Ok(Self {
            r: self.r,
            n: self.n,
            g,
        })
    }

    /// `g(V* -> W*)_{k,j} = -g(V -> W)_{j,k}`.
    pub fn gale_dual(&self) -> Self {
        let g = (0..=self.n - self.r)
            .map(|k| (0..=self.r).map(|j| -self.g[j][k]).collect())
            .collect();
        Self {
            r: self.n - self.r,
            n: self.n,
            g,
        }
    }

    fn skew_violation(&self) -> Option<(usize, usize)> {
        let (r, c) = (self.r, self.n - self.r);
        for j in 0..=r {
            for k in 0..=c {
                let v = self.g[j][k];
                if v != -self.g[r - j][k] || v != -self.g[j][c - k] {
                    return Some((j, k));
                }
            }
        }
        None
    }

    /// Adds the increment of one mutation of type `(i, l)`: `+1` at `(i, l)`
    /// and `(r-i, n-r-l)`, `-1` at `(r-i, l)` and `(i, n-r-l)`; nothing when
    /// `2i = r` or `2l = n-r`.
    pub fn add_mutation(&mut self, i: usize, l: usize) {
        let (r, c) = (self.r, self.n - self.r);
        if 2 * i == r || 2 * l == c {
            return;
        }
        self.g[i][l] += 1;
        self.g[r - i][c - l] += 1;
        self.g[r - i][l] -= 1;
        self.g[i][c - l] -= 1;
    }
}

impl fmt::Debug for GMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GMatrix(r={}, n={}, {:?})", self.r, self.n, self.g)
    }
}

/// Rows `0..=floor((r-1)/2)`, columns `0..=floor((n-r-1)/2)` of a g-matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmallGMatrix {
    pub r: usize,
    pub n: usize,
    pub g: Vec<Vec<i64>>,
}

impl SmallGMatrix {
    /// `(floor((r+1)/2), floor((n-r+1)/2))`.
    pub fn shape(r: usize, n: usize) -> (usize, usize) {
        ((r + 1) / 2, (n - r + 1) / 2)
    }

    pub fn new(r: usize, n: usize, g: Vec<Vec<i64>>) -> Result<Self> {
        let (rows, cols) = Self::shape(r, n);
        if g.len() != rows || g.iter().any(|row| row.len() != cols) {
            return Err(Error::Dimension(format!(
                "small g-matrix for n={n}, r={r} must be {rows}x{cols}"
            )));
        }
        Ok(Self { r, n, g })
    }

    pub fn flatten(&self) -> Vec<i64> {
        self.g.iter().flatten().copied().collect()
    }

    /// Whether every entry is nonnegative. Known to hold for `r = 3`;
    /// reported, not asserted, elsewhere.
    pub fn is_nonnegative(&self) -> bool {
        self.g.iter().flatten().all(|&x| x >= 0)
    }
}

/// `sum g_{j,k} (x+y)^j (1+x)^{r-j} y^k`.
pub fn t_polynomial(g: &GMatrix) -> BiPoly {
    let x = BiPoly::x();
    let y = BiPoly::y();
    let xy = &x + &y;
    let x1 = &x + &BiPoly::one();
    let mut p = BiPoly::zero();
    for j in 0..=g.r {
        for k in 0..=g.n - g.r {
            let c = g.g[j][k];
            if c == 0 {
                continue;
            }
            let term = &(&xy.pow(j as u32) * &x1.pow((g.r - j) as u32)) * &y.pow(k as u32);
            p = &p + &term.scale(&int(c));
        }
    }
    p
}

/// `T(g)`: the change `f(W) - f(V)` as an `r x (n+1)` matrix, computed by
/// the binomial formula and checked against the polynomial expansion.
pub fn apply_t(g: &GMatrix) -> Vec<Vec<i64>> {
    let (r, n) = (g.r as i64, g.n as i64);
    let mut out = vec![vec![0i64; g.n + 1]; g.r];
    for s in 0..r {
        for t in 0..=n {
            let mut acc = 0;
            for j in 0..=r {
                for k in 0..=(n - r) {
                    let c = g.g[j as usize][k as usize];
                    if c != 0 {
                        acc += binom(j, t - k) * binom(r - j, s - j + t - k) * c;
                    }
                }
            }
            out[s as usize][t as usize] = acc;
        }
    }
    let poly = t_polynomial(g);
    let expected = BiPoly::from_matrix(&out, crate::poly2::Var::X, crate::poly2::Var::Y);
    assert_eq!(
        poly, expected,
        "binomial and polynomial forms of T disagree"
    );
    out
}

/// `f(W) - f(V)`.
pub fn delta_f(fv: &FMatrix, fw: &FMatrix) -> Result<Vec<Vec<i64>>> {
    if (fv.d(), fv.n()) != (fw.d(), fw.n()) {
        return Err(Error::Dimension("f-matrices of different shape".into()));
    }
    Ok(fw
        .rows()
        .iter()
        .zip(fv.rows())
        .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect())
        .collect())
}

/// Recovers `g(V -> W)` from `f(V)` and `f(W)` by inverting `T` one column
/// at a time.
///
/// Substituting `x = 1/(w-1)` in the `y^t` part of `T` and clearing
/// denominators gives, for `t = 0, ..., n-r`,
/// `sum_j g_{j,t} w^{r-j} = sum_s df_{s,t} (w-1)^{r-s}
///  - sum_j sum_{k<t} C(j,t-k) g_{j,k} w^{r-j} (w-1)^{t-k}`.
pub fn g_from_fmatrices(fv: &FMatrix, fw: &FMatrix) -> Result<GMatrix> {
    let df = delta_f(fv, fw)?;
    let (r, n) = (fv.r(), fv.n());
    let cols = n - r + 1;
    let w = UniPoly::from_i64(&[0, 1]);
    let wm1 = UniPoly::from_i64(&[-1, 1]);
    let pow = |p: &UniPoly, e: usize| (0..e).fold(UniPoly::from_i64(&[1]), |acc, _| &acc * p);
    let mut g = vec![vec![0i64; cols]; r + 1];
    for t in 0..cols {
        let mut c = UniPoly::zero();
        for (s, row) in df.iter().enumerate() {
            c = &c + &pow(&wm1, r - s).scale(&int(row[t]));
        }
        for j in 0..=r {
            for k in 0..t {
                let b = binom(j as i64, (t - k) as i64) * g[j][k];
                if b != 0 {
                    let term = &pow(&w, r - j) * &pow(&wm1, t - k);
                    c = &c - &term.scale(&int(b));
                }
            }
        }
        let coeffs = c.coeffs();
        if coeffs.len() > r + 1 {
            return Err(Error::InconsistentInput(format!(
                "column t={t} of f(W) - f(V) is not in the image of T"
            )));
        }
        for (j, row) in g.iter_mut().enumerate() {
            let v = coeffs.get(r - j).cloned().unwrap_or_else(Rat::zero);
            row[t] = integral(&v).ok_or_else(|| {
                Error::InconsistentInput(format!("g_{{{j},{t}}} = {v} is not an integer"))
            })?;
        }
    }
    let g = GMatrix::new(r, n, g)?;
    if apply_t(&g) != df {
        return Err(Error::InconsistentInput(
            "f(W) - f(V) is not the image of a skew-symmetric g-matrix".into(),
        ));
    }
    Ok(g)
}

fn integral(v: &Rat) -> Option<i64> {
    if v.is_integer() {
        v.to_integer().to_i64()
    } else {
        None
    }
}

/// `g(V -> W)` by enumerating both f-matrices.
pub fn g_of_pair(v: &VectorConfig, w: &VectorConfig) -> Result<GMatrix> {
    if (v.r(), v.n()) != (w.r(), w.n()) {
        return Err(Error::Dimension("configurations of different shape".into()));
    }
    g_from_fmatrices(&faces::f_matrix(v), &faces::f_matrix(w))
}

/// `S(g)`: the change `f*(W) - f*(V)` as an `(n+1) x (n+1)` matrix indexed
/// like an f\*-matrix, read off from
/// `sum_{j,k} g_{j,k}(W -> V) (x+y)^k (x+1)^{n-r-k} y^j` with `x^{n-s} y^t`.
pub fn apply_s(g: &GMatrix) -> Vec<Vec<i64>> {
    let (r, n) = (g.r, g.n);
    let x = BiPoly::x();
    let y = BiPoly::y();
    let xy = &x + &y;
    let x1 = &x + &BiPoly::one();
    let reverse = g.negated();
    let mut p = BiPoly::zero();
    for j in 0..=r {
        for k in 0..=n - r {
            let c = reverse.g[j][k];
            if c == 0 {
                continue;
            }
            let term = &(&xy.pow(k as u32) * &x1.pow((n - r - k) as u32)) * &y.pow(j as u32);
            p = &p + &term.scale(&int(c));
        }
    }
    let mut out = vec![vec![0i64; n + 1]; n + 1];
    for (&(dx, dy), c) in p.terms() {
        let v = integral(c).expect("integer combination");
        out[n - dx as usize][dy as usize] = v;
    }
    out
}

/// Small g-matrix of any pair `V -> W` with `V` coneighborly and `W`
/// neighborly:
/// `g_{j,k} = C(n-k-r+j, j) C(k+r-1-j, k) - C(n-k-r+j-1, j-1) C(k+r-j, k)`.
pub fn g_closed_form_neighborly(n: usize, r: usize) -> Result<SmallGMatrix> {
    if n <= r || r == 0 {
        return Err(Error::Dimension(format!(
            "need n > r >= 1, got n={n}, r={r}"
        )));
    }
    let (rows, cols) = SmallGMatrix::shape(r, n);
    let (ni, ri) = (n as i64, r as i64);
    let cumulative = |j: i64, k: i64| binom(ni - k - ri + j, j) * binom(k + ri - 1 - j, k);
    let mut g = vec![vec![0i64; cols]; rows];
    for (j, row) in g.iter_mut().enumerate() {
        for (k, cell) in row.iter_mut().enumerate() {
            let (j, k) = (j as i64, k as i64);
            let v = binom(ni - k - ri + j, j) * binom(k + ri - 1 - j, k)
                - binom(ni - k - ri + j - 1, j - 1) * binom(k + ri - j, k);
            if v <= 0 {
                return Err(Error::CrossCheck(format!(
                    "closed form g_{{{j},{k}}} = {v} is not positive"
                )));
            }
            *cell = v;
        }
    }
    for k in 0..cols {
        let mut running = 0;
        for (j, row) in g.iter().enumerate() {
            running += row[k];
            if running != cumulative(j as i64, k as i64) {
                return Err(Error::CrossCheck(format!(
                    "cumulative closed form fails at (j,k)=({j},{k})"
                )));
            }
        }
    }
    SmallGMatrix::new(r, n, g)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MinorMode {
    Contract,
    Delete,
}

/// Checks `sum_i g(V/v_i -> W/w_i) = (r-j) g_{j,k} + (j+1) g_{j+1,k}` or its
/// deletion analogue `(n-r-k) g_{j,k} + (k+1) g_{j,k+1}`.
pub fn check_contraction_deletion(
    v: &VectorConfig,
    w: &VectorConfig,
    mode: MinorMode,
) -> Result<RelationReport> {
    let name = match mode {
        MinorMode::Contract => "contraction",
        MinorMode::Delete => "deletion",
    };
    let g = g_of_pair(v, w)?;
    let (r, n) = (v.r(), v.n());
    let (minor_r, minor_n) = match mode {
        MinorMode::Contract => (r - 1, n - 1),
        MinorMode::Delete => (r, n - 1),
    };
    let mut sum = GMatrix::zeros(minor_r, minor_n);
    for i in 0..n {
        let (a, b) = match mode {
            MinorMode::Contract => (v.contract(i)?, w.contract(i)?),
            MinorMode::Delete => (v.delete(i)?, w.delete(i)?),
        };
        sum = sum.add(&g_of_pair(&a, &b)?)?;
    }
    for j in 0..=minor_r {
        for k in 0..=minor_n - minor_r {
            let (jj, kk) = (j as i64, k as i64);
            let rhs = match mode {
                MinorMode::Contract => (r as i64 - jj) * g.get(j, k) + (jj + 1) * g.get(j + 1, k),
                MinorMode::Delete => {
                    (n as i64 - r as i64 - kk) * g.get(j, k) + (kk + 1) * g.get(j, k + 1)
                }
            };
            if sum.get(j, k) != rhs {
                return Ok(RelationReport::fail(
                    name,
                    format!("(j,k)=({j},{k}): sum {} != {rhs}", sum.get(j, k)),
                ));
            }
        }
    }
    Ok(RelationReport::pass(name))
}
