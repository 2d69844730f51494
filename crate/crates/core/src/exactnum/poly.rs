use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{format_rat, int, sgn, Rat};
use crate::{Error, Result};

/// Dense univariate polynomial over the rationals. `coeffs[i]` is the
/// coefficient of `t^i`; trailing zeros are trimmed.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    /// `t - a`
    pub fn linear_root(a: &Rat) -> Self {
        Self::new(vec![-a.clone(), Rat::one()])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn eval(&self, t: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * t + c)
    }

    pub fn sign_at(&self, t: &Rat) -> i8 {
        sgn(&self.eval(t))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => Self::zero(),
        }
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rat::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let shift = rem.len() - 1 - dd;
            let c = rem.last().unwrap() / &lead;
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] -= &c * d;
            }
            quot[shift] = c;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (Self::new(quot), Self::new(rem))
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `p / gcd(p, p')`: same distinct roots, all simple.
    pub fn squarefree(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0
    }

    /// Newton interpolation through points with distinct abscissae.
    pub fn interpolate(points: &[(Rat, Rat)]) -> Self {
        let n = points.len();
        let mut dd: Vec<Rat> = points.iter().map(|(_, y)| y.clone()).collect();
        for level in 1..n {
            for i in (level..n).rev() {
                let num = &dd[i] - &dd[i - 1];
                let den = &points[i].0 - &points[i - level].0;
                dd[i] = num / den;
            }
        }
        let mut result = Self::zero();
        let mut basis = Self::constant(Rat::one());
        for (i, c) in dd.iter().enumerate() {
            result = &result + &basis.scale(c);
            basis = &basis * &Self::linear_root(&points[i].0);
        }
        result
    }

    fn sturm_chain(&self) -> Vec<UniPoly> {
        let mut chain = vec![self.clone(), self.derivative()];
        while !chain.last().unwrap().is_zero() {
            let k = chain.len();
            let (_, r) = chain[k - 2].div_rem(&chain[k - 1]);
            chain.push(-&r);
        }
        chain.pop();
        chain
    }

    fn variations(chain: &[UniPoly], t: &Rat) -> usize {
        let signs: Vec<i8> = chain
            .iter()
            .map(|p| p.sign_at(t))
            .filter(|&s| s != 0)
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Number of distinct real roots in the open interval `(lo, hi)`; both
    /// endpoints must be non-roots.
    pub fn count_roots(&self, lo: &Rat, hi: &Rat) -> usize {
        if self.degree().unwrap_or(0) == 0 {
            return 0;
        }
        let chain = self.squarefree().sturm_chain();
        Self::variations(&chain, lo) - Self::variations(&chain, hi)
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let z = Rat::zero();
        UniPoly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + rhs.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        self + &(-rhs)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("{}*t^{i}", format_rat(c)))
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Open interval `(lo, hi)` containing exactly one real root of a
/// polynomial; both endpoints are certified non-roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: Rat,
    pub hi: Rat,
    /// `true` iff the root is simple.
    pub simple: bool,
}

impl RootInterval {
    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / int(2)
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn overlaps(&self, other: &RootInterval) -> bool {
        self.lo < other.hi && other.lo < self.hi
    }

    /// Halves the interval around the root of `p` it isolates.
    pub fn bisect(&mut self, p: &UniPoly) {
        let m = self.midpoint();
        let sm = p.sign_at(&m);
        if sm == 0 {
            // the root is `m` itself
            self.lo = (&self.lo + &m) / int(2);
            self.hi = (&m + &self.hi) / int(2);
            return;
        }
        let left = if self.simple {
            sm != p.sign_at(&self.lo)
        } else {
            p.count_roots(&self.lo, &m) == 1
        };
        if left {
            self.hi = m;
        } else {
            self.lo = m;
        }
    }

    /// Sign of `q` at the root of `p` isolated by this interval, shrinking
    /// the interval as needed.
    pub fn sign_at_root(&mut self, p: &UniPoly, q: &UniPoly) -> i8 {
        if q.is_zero() {
            return 0;
        }
        let g = p.gcd(q);
        if g.degree().unwrap_or(0) > 0 && g.count_roots(&self.lo, &self.hi) > 0 {
            return 0;
        }
        loop {
            let (sl, sh) = (q.sign_at(&self.lo), q.sign_at(&self.hi));
            if sl != 0 && sl == sh && q.count_roots(&self.lo, &self.hi) == 0 {
                return sl;
            }
            self.bisect(p);
        }
    }
}

/// Isolates the distinct real roots of `p` in the open interval `(lo, hi)`.
///
/// Intervals are sorted and pairwise disjoint, each holds exactly one root,
/// and every endpoint is a non-root. The `simple` flag is set iff
/// `gcd(p, p')` has no root inside.
pub fn isolate_roots(p: &UniPoly, lo: &Rat, hi: &Rat) -> Result<Vec<RootInterval>> {
    if p.is_zero() {
        return Err(Error::DegeneratePolynomial);
    }
    if lo >= hi {
        return Err(Error::Dimension(
            "isolation interval must have lo < hi".into(),
        ));
    }
    for e in [lo, hi] {
        if p.sign_at(e) == 0 {
            return Err(Error::BoundaryRoot(format_rat(e)));
        }
    }
    if p.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let q = p.squarefree();
    let chain = q.sturm_chain();
    let count = |a: &Rat, b: &Rat| UniPoly::variations(&chain, a) - UniPoly::variations(&chain, b);
    let mut pending = vec![(lo.clone(), hi.clone())];
    let mut found = Vec::new();
    while let Some((a, b)) = pending.pop() {
        match count(&a, &b) {
            0 => {}
            1 => found.push((a, b)),
            _ => {
                let m = split_point(&q, &a, &b);
                pending.push((a, m.clone()));
                pending.push((m, b));
            }
        }
    }
    found.sort_by(|x, y| x.0.cmp(&y.0));
    let g = p.gcd(&p.derivative());
    Ok(found
        .into_iter()
        .map(|(a, b)| {
            let simple = g.degree().unwrap_or(0) == 0 || g.count_roots(&a, &b) == 0;
            RootInterval {
                lo: a,
                hi: b,
                simple,
            }
        })
        .collect())
}

/// A non-root of `q` strictly inside `(a, b)`, as close to the midpoint as
/// the dyadic ladder allows.
fn split_point(q: &UniPoly, a: &Rat, b: &Rat) -> Rat {
    let mid = (a + b) / int(2);
    let mut step = (b - a) / int(4);
    let mut m = mid.clone();
    while q.sign_at(&m) == 0 {
        m = &mid + &step;
        step /= int(2);
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;
    use proptest::prelude::*;

    #[test]
    fn isolate_linear() {
        let p = UniPoly::from_i64(&[1, -2]);
        let roots = isolate_roots(&p, &int(0), &int(1)).unwrap();
        assert_eq!(roots.len(), 1);
        assert!(roots[0].simple);
        assert!(roots[0].lo < rat(1, 2) && rat(1, 2) < roots[0].hi);
    }

    #[test]
    fn isolate_two_simple_roots() {
        // (t - 1/3)(t - 2/3) = t^2 - t + 2/9
        let p = UniPoly::new(vec![rat(2, 9), int(-1), int(1)]);
        let roots = isolate_roots(&p, &int(0), &int(1)).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots.iter().all(|r| r.simple));
        assert!(roots[0].lo < rat(1, 3) && rat(1, 3) < roots[0].hi);
        assert!(roots[1].lo < rat(2, 3) && rat(2, 3) < roots[1].hi);
        assert!(roots[0].hi <= roots[1].lo);
    }

    #[test]
    fn isolate_constant_and_errors() {
        assert!(isolate_roots(&UniPoly::from_i64(&[3]), &int(0), &int(1))
            .unwrap()
            .is_empty());
        assert!(matches!(
            isolate_roots(&UniPoly::zero(), &int(0), &int(1)),
            Err(Error::DegeneratePolynomial)
        ));
        assert!(matches!(
            isolate_roots(&UniPoly::from_i64(&[0, 1]), &int(0), &int(1)),
            Err(Error::BoundaryRoot(_))
        ));
    }

    #[test]
    fn double_root_is_flagged() {
        // (t - 1/2)^2 (t - 1/4)
        let a = UniPoly::linear_root(&rat(1, 2));
        let b = UniPoly::linear_root(&rat(1, 4));
        let p = &(&a * &a) * &b;
        let roots = isolate_roots(&p, &int(0), &int(1)).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots[0].simple);
        assert!(!roots[1].simple);
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = UniPoly::new(vec![rat(1, 3), int(-2), int(0), rat(5, 7)]);
        let pts: Vec<(Rat, Rat)> = (0..4).map(|i| (int(i), p.eval(&int(i)))).collect();
        assert_eq!(UniPoly::interpolate(&pts), p);
    }

    #[test]
    fn sign_at_rational_root_of_other() {
        let p = UniPoly::from_i64(&[1, -2]); // root 1/2
        let q = UniPoly::new(vec![rat(-1, 3), int(1)]); // root 1/3
        let mut iv = isolate_roots(&p, &int(0), &int(1)).unwrap().remove(0);
        assert_eq!(iv.sign_at_root(&p, &q), 1);
        let same = p.scale(&int(3));
        assert_eq!(iv.sign_at_root(&p, &same), 0);
    }

    fn roots_strategy() -> impl Strategy<Value = Vec<Rat>> {
        prop::collection::btree_set(1i64..40, 1..5)
            .prop_map(|s| s.into_iter().map(|k| rat(k, 40)).collect())
    }

    proptest! {
        #[test]
        fn isolation_matches_known_roots(roots in roots_strategy(), c in 1i64..5) {
            let mut p = UniPoly::constant(int(c));
            for r in &roots {
                p = &p * &UniPoly::linear_root(r);
            }
            let found = isolate_roots(&p, &int(0), &int(1)).unwrap();
            prop_assert_eq!(found.len(), roots.len());
            prop_assert_eq!(p.count_roots(&int(0), &int(1)), roots.len());
            for (iv, r) in found.iter().zip(&roots) {
                prop_assert!(iv.lo < *r && *r < iv.hi);
                prop_assert!(iv.simple);
                // bisection converges on the sign change
                let mut tight = iv.clone();
                for _ in 0..8 {
                    tight.bisect(&p);
                }
                prop_assert!(tight.lo < *r && *r < tight.hi);
                prop_assert!(p.sign_at(&tight.lo) * p.sign_at(&tight.hi) < 0);
            }
            for w in found.windows(2) {
                prop_assert!(w[0].hi <= w[1].lo);
            }
        }
    }
}
