//! Dissection and dependency patterns, and the f- and f\*-matrices that
//! count them.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::config::VectorConfig;
use crate::exactnum::{kernel_basis, sgn, Rat};
use crate::poly2::BiPoly;
use crate::{Error, Result};

/// Largest `n` accepted by [`farkas_complement_oracle`], which walks all
/// `3^n` sign vectors.
pub const FARKAS_MAX_N: usize = 9;

/// Ordered `- < 0 < +`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    pub fn of(x: &Rat) -> Self {
        match sgn(x) {
            -1 => Sign::Neg,
            0 => Sign::Zero,
            _ => Sign::Pos,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Neg => Sign::Pos,
            Sign::Zero => Sign::Zero,
            Sign::Pos => Sign::Neg,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Neg => '-',
            Sign::Zero => '0',
            Sign::Pos => '+',
        }
    }

    fn digit(self) -> usize {
        self as usize
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignVector(Vec<Sign>);

impl SignVector {
    pub fn new(signs: Vec<Sign>) -> Self {
        Self(signs)
    }

    pub fn signs(&self) -> &[Sign] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn count(&self, s: Sign) -> usize {
        self.0.iter().filter(|&&x| x == s).count()
    }

    pub fn negated(&self) -> Self {
        Self(self.0.iter().map(|s| s.flip()).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&s| s == Sign::Zero)
    }

    /// Conformal order: `self <= g` iff `self_+ ⊆ g_+` and `self_- ⊆ g_-`.
    pub fn conforms_to(&self, g: &SignVector) -> bool {
        self.0
            .iter()
            .zip(&g.0)
            .all(|(&a, &b)| a == Sign::Zero || a == b)
    }

    fn index(&self) -> usize {
        self.0.iter().fold(0, |acc, s| 3 * acc + s.digit())
    }

    fn from_index(mut idx: usize, n: usize) -> Self {
        let mut signs = vec![Sign::Zero; n];
        for slot in signs.iter_mut().rev() {
            *slot = [Sign::Neg, Sign::Zero, Sign::Pos][idx % 3];
            idx /= 3;
        }
        Self(signs)
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignVector({self})")
    }
}

impl FromStr for SignVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '-' => Ok(Sign::Neg),
                '0' => Ok(Sign::Zero),
                '+' => Ok(Sign::Pos),
                _ => Err(Error::Parse(format!("bad sign {c:?} in {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(SignVector)
    }
}

impl Serialize for SignVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SignVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `f_{s,t}`: number of dissection patterns with `|F_0| = s` and
/// `|F_-| = t`, over the window `0 <= s <= d`, `0 <= t <= n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FMatrix {
    d: usize,
    n: usize,
    rows: Vec<Vec<i64>>,
}

impl FMatrix {
    pub fn new(d: usize, n: usize, rows: Vec<Vec<i64>>) -> Result<Self> {
        if rows.len() != d + 1 || rows.iter().any(|r| r.len() != n + 1) {
            return Err(Error::Dimension(format!(
                "f-matrix for d = {d}, n = {n} must be {}x{}",
                d + 1,
                n + 1
            )));
        }
        Ok(Self { d, n, rows })
    }

    pub fn zeros(d: usize, n: usize) -> Self {
        Self {
            d,
            n,
            rows: vec![vec![0; n + 1]; d + 1],
        }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.d + 1
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// Zero outside the window.
    pub fn get(&self, s: usize, t: usize) -> i64 {
        self.rows
            .get(s)
            .and_then(|r| r.get(t))
            .copied()
            .unwrap_or(0)
    }

    pub fn set(&mut self, s: usize, t: usize, value: i64) {
        self.rows[s][t] = value;
    }

    pub fn row_sums(&self) -> Vec<i64> {
        self.rows.iter().map(|r| r.iter().sum()).collect()
    }

    /// `sum f_{s,t} x^s y^t`.
    pub fn polynomial(&self) -> BiPoly {
        BiPoly::from_matrix(&self.rows, crate::poly2::Var::X, crate::poly2::Var::Y)
    }

    pub fn to_csv(&self) -> String {
        self.rows
            .iter()
            .map(|r| r.iter().join(","))
            .map(|line| line + "\n")
            .collect()
    }
}

/// `f*_{s,t}`: number of dependency patterns with `|F_+| + |F_-| = s` and
/// `|F_-| = t`, stored densely over `0 <= s, t <= n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FStarMatrix {
    r: usize,
    n: usize,
    rows: Vec<Vec<i64>>,
}

impl FStarMatrix {
    pub fn zeros(r: usize, n: usize) -> Self {
        Self {
            r,
            n,
            rows: vec![vec![0; n + 1]; n + 1],
        }
    }

    pub fn new(r: usize, n: usize, rows: Vec<Vec<i64>>) -> Result<Self> {
        if rows.len() != n + 1 || rows.iter().any(|row| row.len() != n + 1) {
            return Err(Error::Dimension(format!(
                "f*-matrix for n = {n} must be {0}x{0}",
                n + 1
            )));
        }
        Ok(Self { r, n, rows })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn get(&self, s: usize, t: usize) -> i64 {
        self.rows
            .get(s)
            .and_then(|r| r.get(t))
            .copied()
            .unwrap_or(0)
    }

    /// `sum f*_{s,t} x^{n-s} y^t`.
    pub fn polynomial(&self) -> BiPoly {
        let mut p = BiPoly::zero();
        for (s, row) in self.rows.iter().enumerate() {
            for (t, &c) in row.iter().enumerate() {
                p.add_term((self.n - s) as u32, t as u32, crate::exactnum::int(c));
            }
        }
        p
    }

    /// Inverse of [`FStarMatrix::polynomial`]; fails on non-integral
    /// coefficients or monomials outside the window.
    pub fn from_polynomial(p: &BiPoly, r: usize, n: usize) -> Result<Self> {
        let mut m = Self::zeros(r, n);
        for (&(dx, dy), c) in p.terms() {
            let (dx, dy) = (dx as usize, dy as usize);
            if dx > n || dy > n || !c.is_integer() {
                return Err(Error::InconsistentInput(format!(
                    "term {c}*x^{dx}*y^{dy} is not an f*-coefficient for n = {n}"
                )));
            }
            m.rows[n - dx][dy] = i64::try_from(c.to_integer())
                .map_err(|_| Error::InconsistentInput("coefficient overflow".into()))?;
        }
        Ok(m)
    }

    pub fn to_csv(&self) -> String {
        self.rows
            .iter()
            .map(|r| r.iter().join(",") + "\n")
            .collect()
    }
}

/// All faces of the arrangement, as sorted sign vectors.
///
/// Every face closure contains a vertex, so it is enough to expand around
/// vertices: at the vertex `±u` cut out by a `d`-subset `R`, the signs off `R`
/// are fixed and the signs on `R` range freely over `{-,0,+}^d` because the
/// arrangement is simple.
pub fn dissection_patterns(v: &VectorConfig) -> Vec<SignVector> {
    let (n, r) = (v.n(), v.r());
    let d = r - 1;
    let mut out = Vec::with_capacity(2 * binom(n, d) * 3usize.pow(d as u32));
    for subset in (0..n).combinations(d) {
        let rows = v.vectors().select_columns(&subset).transpose();
        let k = kernel_basis(&rows);
        debug_assert_eq!(k.cols(), 1);
        let u = k.column(0);
        let base = v.signature(&u);
        for vertex in [base.clone(), base.negated()] {
            if subset.is_empty() {
                out.push(vertex);
                continue;
            }
            for assignment in (0..subset.len())
                .map(|_| [Sign::Neg, Sign::Zero, Sign::Pos])
                .multi_cartesian_product()
            {
                let mut signs = vertex.0.clone();
                for (&i, &s) in subset.iter().zip(&assignment) {
                    signs[i] = s;
                }
                out.push(SignVector(signs));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Sign vectors of nontrivial linear dependencies, via the Gale dual.
pub fn dependency_patterns(v: &VectorConfig) -> Vec<SignVector> {
    match v.gale_dual() {
        Ok(dual) => dissection_patterns(&dual),
        Err(_) => Vec::new(),
    }
}

/// Dependency patterns computed independently of the Gale dual: the nonzero
/// sign vectors not conformal to any dissection pattern.
pub fn farkas_complement_oracle(v: &VectorConfig) -> Result<Vec<SignVector>> {
    let n = v.n();
    if n > FARKAS_MAX_N {
        return Err(Error::Budget(format!(
            "Farkas oracle enumerates 3^n sign vectors; n = {n} exceeds {FARKAS_MAX_N}"
        )));
    }
    let mut covered = vec![false; 3usize.pow(n as u32)];
    for g in dissection_patterns(v) {
        let support: Vec<usize> = (0..n).filter(|&i| g.0[i] != Sign::Zero).collect();
        for mask in 0u32..(1 << support.len()) {
            let mut f = vec![Sign::Zero; n];
            for (b, &i) in support.iter().enumerate() {
                if mask & (1 << b) != 0 {
                    f[i] = g.0[i];
                }
            }
            covered[SignVector(f).index()] = true;
        }
    }
    Ok(covered
        .iter()
        .enumerate()
        .filter(|&(_, &c)| !c)
        .map(|(idx, _)| SignVector::from_index(idx, n))
        .filter(|f| !f.is_zero())
        .collect())
}

pub fn f_matrix_of(patterns: &[SignVector], d: usize, n: usize) -> FMatrix {
    let mut f = FMatrix::zeros(d, n);
    for p in patterns {
        f.rows[p.count(Sign::Zero)][p.count(Sign::Neg)] += 1;
    }
    f
}

pub fn f_matrix(v: &VectorConfig) -> FMatrix {
    f_matrix_of(&dissection_patterns(v), v.d(), v.n())
}

pub fn fstar_matrix_of(patterns: &[SignVector], r: usize, n: usize) -> FStarMatrix {
    let mut f = FStarMatrix::zeros(r, n);
    for p in patterns {
        let s = n - p.count(Sign::Zero);
        f.rows[s][p.count(Sign::Neg)] += 1;
    }
    f
}

pub fn fstar_matrix(v: &VectorConfig) -> FStarMatrix {
    fstar_matrix_of(&dependency_patterns(v), v.r(), v.n())
}

fn binom(n: usize, k: usize) -> usize {
    crate::config::binomial(n, k) as usize
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{cocyclic, cyclic, gen_random};
    use crate::exactnum::{int, rat};
    use proptest::prelude::*;

    fn sv(s: &str) -> SignVector {
        s.parse().unwrap()
    }

    fn three() -> VectorConfig {
        VectorConfig::from_i64(2, &[&[1, 0], &[0, 1], &[1, 1]]).unwrap()
    }

    /// Directions at every half degree (offset by a quarter degree so none
    /// lies on a line), rationalized through the tangent
    /// half-angle substitution so no floating point reaches a sign.
    fn circle_signatures(v: &VectorConfig) -> Vec<SignVector> {
        let mut out: Vec<SignVector> = (0..720)
            .map(|k| {
                let q = ((k as f64 + 0.5) * std::f64::consts::PI / 720.0).tan();
                let m = rat((q * 1e6).round() as i64, 1_000_000);
                let one = int(1);
                let den = &one + &m * &m;
                let u = vec![(&one - &m * &m) / &den, (int(2) * &m) / &den];
                v.signature(&u)
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }

    #[test]
    fn three_vectors_in_the_plane() {
        let v = three();
        let pats = dissection_patterns(&v);
        assert_eq!(pats.len(), 12);
        assert!(pats.contains(&sv("+++")) && pats.contains(&sv("-++")));
        assert_eq!(pats.iter().filter(|p| p.count(Sign::Zero) == 1).count(), 6);
        let cells: Vec<_> = pats
            .iter()
            .filter(|p| p.count(Sign::Zero) == 0)
            .cloned()
            .collect();
        assert_eq!(circle_signatures(&v), cells);

        let f = f_matrix(&v);
        assert_eq!(f.rows(), &[vec![1, 2, 2, 1], vec![2, 2, 2, 0]]);
        assert_eq!(f.to_csv(), "1,2,2,1\n2,2,2,0\n");
    }

    #[test]
    fn small_cases() {
        let v = VectorConfig::from_i64(2, &[&[1, 0], &[0, 1]]).unwrap();
        assert_eq!(dissection_patterns(&v).len(), 8);
        let w = VectorConfig::from_i64(1, &[&[2]]).unwrap();
        assert_eq!(dissection_patterns(&w), vec![sv("-"), sv("+")]);
        let c = VectorConfig::from_i64(1, &[&[2], &[-1], &[3]]).unwrap();
        assert_eq!(dissection_patterns(&c), vec![sv("-+-"), sv("+-+")]);
    }

    #[test]
    fn dependencies() {
        let v = three();
        assert_eq!(dependency_patterns(&v), vec![sv("--+"), sv("++-")]);
        assert_eq!(
            farkas_complement_oracle(&v).unwrap(),
            dependency_patterns(&v)
        );
        let fs = fstar_matrix(&v);
        assert_eq!((fs.get(3, 1), fs.get(3, 2)), (1, 1));
        assert_eq!(dependency_patterns(&cyclic(4, 2)).len(), 16);
        assert!(dependency_patterns(&cyclic(3, 3)).is_empty());
        for v in [cyclic(5, 3), cocyclic(5, 3)] {
            assert_eq!(
                farkas_complement_oracle(&v).unwrap(),
                dependency_patterns(&v)
            );
        }
        assert!(matches!(
            farkas_complement_oracle(&cyclic(10, 2)),
            Err(Error::Budget(_))
        ));
    }

    #[test]
    fn cyclic_row_sums() {
        assert_eq!(f_matrix(&cyclic(6, 3)).row_sums(), vec![32, 60, 30]);
    }

    #[test]
    fn sign_vector_text() {
        let p = sv("+-0+");
        assert_eq!(p.to_string(), "+-0+");
        assert_eq!(
            serde_json::to_string(&vec![p.clone()]).unwrap(),
            r#"["+-0+"]"#
        );
        assert!("+x".parse::<SignVector>().is_err());
        assert!(sv("-") < sv("0") && sv("0") < sv("+"));
    }

    fn any_config() -> impl Strategy<Value = VectorConfig> {
        (1usize..5, 0usize..4, any::<u64>(), any::<bool>()).prop_map(|(r, extra, seed, pointed)| {
            gen_random(r + extra, r, seed, pointed && r > 1).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn antipodal_closure(v in any_config()) {
            let pats = dissection_patterns(&v);
            for p in &pats {
                prop_assert!(pats.binary_search(&p.negated()).is_ok());
                prop_assert!(p.count(Sign::Zero) <= v.d());
            }
            let deps = dependency_patterns(&v);
            for p in &deps {
                prop_assert!(deps.binary_search(&p.negated()).is_ok());
                prop_assert!(p.len() - p.count(Sign::Zero) > v.r());
            }
        }

        #[test]
        fn vertex_count_and_totals(v in any_config()) {
            let pats = dissection_patterns(&v);
            let f = f_matrix(&v);
            prop_assert_eq!(f.rows().iter().flatten().sum::<i64>() as usize, pats.len());
            let vertices = pats.iter().filter(|p| p.count(Sign::Zero) == v.d()).count();
            prop_assert_eq!(vertices, 2 * binom(v.n(), v.d()));
        }

        #[test]
        fn sampled_directions_are_faces(v in any_config(), dirs in prop::collection::vec(prop::collection::vec(-50i64..51, 4), 8)) {
            let pats = dissection_patterns(&v);
            for u in dirs {
                let u: Vec<Rat> = u[..v.r()].iter().map(|&x| int(x)).collect();
                if u.iter().all(|x| x == &int(0)) { continue; }
                prop_assert!(pats.binary_search(&v.signature(&u)).is_ok());
            }
        }

        #[test]
        fn oracle_agrees(v in any_config()) {
            prop_assume!(v.n() <= 7);
            prop_assert_eq!(farkas_complement_oracle(&v).unwrap(), dependency_patterns(&v));
        }
    }
}
