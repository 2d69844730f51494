//! Sparse bivariate polynomials in `x`, `y` with rational coefficients.
//!
//! These carry the generating functions of f-, f\*- and g-matrices, and the
//! substitutions under which those satisfy their identities.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::exactnum::{format_rat, int, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    X,
    Y,
}

/// Map from `(deg_x, deg_y)` to a nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), Rat>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rat) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn x() -> Self {
        Self::monomial(Rat::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(Rat::one(), 0, 1)
    }

    pub fn monomial(c: Rat, dx: u32, dy: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(dx, dy, c);
        p
    }

    /// `sum_{s,t} m[s][t] * row^s * col^t`.
    pub fn from_matrix(m: &[Vec<i64>], row_var: Var, col_var: Var) -> Self {
        let mut p = Self::zero();
        for (s, row) in m.iter().enumerate() {
            for (t, &c) in row.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let (s, t) = (s as u32, t as u32);
                let (mut dx, mut dy) = (0, 0);
                match row_var {
                    Var::X => dx += s,
                    Var::Y => dy += s,
                }
                match col_var {
                    Var::X => dx += t,
                    Var::Y => dy += t,
                }
                p.add_term(dx, dy, int(c));
            }
        }
        p
    }

    pub fn add_term(&mut self, dx: u32, dy: u32, c: Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((dx, dy)).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(dx, dy));
        }
    }

    pub fn coeff(&self, dx: u32, dy: u32) -> Rat {
        self.terms.get(&(dx, dy)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rat)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree_x(&self) -> u32 {
        self.terms.keys().map(|k| k.0).max().unwrap_or(0)
    }

    pub fn degree_y(&self) -> u32 {
        self.terms.keys().map(|k| k.1).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut p = Self::zero();
        for (&(dx, dy), v) in &self.terms {
            p.add_term(dx, dy, v * c);
        }
        p
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact `p(sx, sy)`, expanded.
    pub fn substitute(&self, sx: &BiPoly, sy: &BiPoly) -> Self {
        let mut xpow = vec![Self::one()];
        let mut ypow = vec![Self::one()];
        for _ in 0..self.degree_x() {
            let next = xpow.last().unwrap() * sx;
            xpow.push(next);
        }
        for _ in 0..self.degree_y() {
            let next = ypow.last().unwrap() * sy;
            ypow.push(next);
        }
        let mut out = Self::zero();
        for (&(dx, dy), c) in &self.terms {
            let term = (&xpow[dx as usize] * &ypow[dy as usize]).scale(c);
            out = &out + &term;
        }
        out
    }

    /// Integer coefficient matrix `m[dx][dy]` of shape `rows x cols`;
    /// `None` if a coefficient is non-integral or falls outside the window.
    pub fn to_int_matrix(&self, rows: usize, cols: usize) -> Option<Vec<Vec<i64>>> {
        let mut m = vec![vec![0i64; cols]; rows];
        for (&(dx, dy), c) in &self.terms {
            let (dx, dy) = (dx as usize, dy as usize);
            if dx >= rows || dy >= cols || !c.is_integer() {
                return None;
            }
            m[dx][dy] = i64::try_from(c.to_integer()).ok()?;
        }
        Some(m)
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(dx, dy), c) in &rhs.terms {
            out.add_term(dx, dy, c.clone());
        }
        out
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        self + &(-rhs)
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        self.scale(&int(-1))
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(ax, ay), a) in &self.terms {
            for (&(bx, by), b) in &rhs.terms {
                out.add_term(ax + bx, ay + by, a * b);
            }
        }
        out
    }
}

/// Terms sorted by `(deg_x, deg_y)` descending, e.g. `30*x^2 + 60*x + 32`.
impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(dx, dy), c) in self.terms.iter().rev() {
            let neg = c < &Rat::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mut factors = Vec::new();
            if !mag.is_one() || (dx == 0 && dy == 0) {
                factors.push(format_rat(&mag));
            }
            for (v, e) in [("x", dx), ("y", dy)] {
                match e {
                    0 => {}
                    1 => factors.push(v.to_string()),
                    _ => factors.push(format!("{v}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ds_sub() -> (BiPoly, BiPoly) {
        let sx = -&(&(&BiPoly::x() + &BiPoly::y()) + &BiPoly::one());
        (sx, BiPoly::y())
    }

    #[test]
    fn substitution_examples() {
        let xy = &BiPoly::x() * &BiPoly::y();
        let sx = &(&BiPoly::x() + &BiPoly::y()) + &BiPoly::one();
        let got = xy.substitute(&sx, &BiPoly::y());
        let want = &(&(&BiPoly::x() * &BiPoly::y()) + &BiPoly::y().pow(2)) + &BiPoly::y();
        assert_eq!(got, want);

        let x2 = BiPoly::x().pow(2);
        assert_eq!(x2.substitute(&BiPoly::x(), &BiPoly::y()), x2);

        let p = &BiPoly::x() + &BiPoly::one();
        let (sx, sy) = ds_sub();
        assert_eq!(p.substitute(&sx, &sy), -&(&BiPoly::x() + &BiPoly::y()));
    }

    #[test]
    fn from_matrix_examples() {
        let f = vec![vec![1, 2, 2, 1], vec![2, 2, 2, 0]];
        let p = BiPoly::from_matrix(&f, Var::X, Var::Y);
        assert_eq!(
            p.to_string(),
            "2*x*y^2 + 2*x*y + 2*x + y^3 + 2*y^2 + 2*y + 1"
        );
        assert!(BiPoly::from_matrix(&[vec![0, 0]], Var::X, Var::Y).is_zero());
        assert_eq!(
            BiPoly::from_matrix(&[vec![1]], Var::X, Var::Y),
            BiPoly::one()
        );
        assert_eq!(p.to_int_matrix(2, 4), Some(f));
    }

    #[test]
    fn display_form() {
        let p = &(&BiPoly::monomial(int(30), 2, 0) + &BiPoly::monomial(int(60), 1, 0))
            + &BiPoly::constant(int(32));
        assert_eq!(p.to_string(), "30*x^2 + 60*x + 32");
        assert_eq!((-&BiPoly::x()).to_string(), "-x");
    }

    fn small_poly() -> impl Strategy<Value = BiPoly> {
        prop::collection::vec((0u32..4, 0u32..4, -5i64..6), 0..6).prop_map(|terms| {
            let mut p = BiPoly::zero();
            for (dx, dy, c) in terms {
                p.add_term(dx, dy, int(c));
            }
            p
        })
    }

    proptest! {
        #[test]
        fn identity_substitution(p in small_poly()) {
            prop_assert_eq!(p.substitute(&BiPoly::x(), &BiPoly::y()), p);
        }

        #[test]
        fn substitution_is_multiplicative(p in small_poly(), q in small_poly()) {
            let (sx, sy) = ds_sub();
            let lhs = (&p * &q).substitute(&sx, &sy);
            let rhs = &p.substitute(&sx, &sy) * &q.substitute(&sx, &sy);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn ds_substitution_is_involution(p in small_poly()) {
            let (sx, sy) = ds_sub();
            prop_assert_eq!(p.substitute(&sx, &sy).substitute(&sx, &sy), p);
        }
    }
}
