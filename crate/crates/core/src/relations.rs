//! Exact checks of the linear and polynomial identities satisfied by f- and
//! f\*-matrices.

use serde::{Deserialize, Serialize};

use crate::config::{binomial, VectorConfig};
use crate::exactnum::int;
use crate::faces::{self, FMatrix};
use crate::poly2::BiPoly;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationReport {
    pub relation: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl RelationReport {
    pub fn pass(relation: &str) -> Self {
        Self {
            relation: relation.to_string(),
            holds: true,
            witness: None,
        }
    }

    pub fn fail(relation: &str, witness: impl Into<String>) -> Self {
        Self {
            relation: relation.to_string(),
            holds: false,
            witness: Some(witness.into()),
        }
    }

    /// Passes unless `witness` is `Some`.
    pub fn from_witness(relation: &str, witness: Option<String>) -> Self {
        match witness {
            None => Self::pass(relation),
            Some(w) => Self::fail(relation, w),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    FToFStar,
    FStarToF,
}

fn sign(e: usize) -> i64 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Number of `(d - s)`-dimensional faces of a simple arrangement of `n`
/// hemispheres in `S^d`. Both closed forms are evaluated and must agree.
pub fn total_face_count(n: usize, d: usize, s: usize) -> Result<i64> {
    if s > d || n < d + 1 {
        return Err(Error::Dimension(format!(
            "need 0 <= s <= d < n, got n={n} d={d} s={s}"
        )));
    }
    let a = 2 * binomial(n, s) * (0..=d - s).map(|i| binomial(n - s - 1, i)).sum::<i64>();
    let b = (0..=d)
        .map(|i| (1 + sign(i)) * binomial(n, d - i) * binomial(d - i, s))
        .sum::<i64>();
    if a != b {
        return Err(Error::CrossCheck(format!(
            "total face count forms disagree at n={n} d={d} s={s}: {a} vs {b}"
        )));
    }
    Ok(a)
}

/// `f_{s,t} = f_{s,n-s-t}`, and `f_{s,t} = 0` for `t > n - s`.
pub fn check_antipodal(f: &FMatrix) -> RelationReport {
    let n = f.n();
    for s in 0..=f.d() {
        for t in 0..=n {
            let ok = if t + s > n {
                f.get(s, t) == 0
            } else {
                f.get(s, t) == f.get(s, n - s - t)
            };
            if !ok {
                return RelationReport::fail("antipodal", format!("(s,t)=({s},{t})"));
            }
        }
    }
    RelationReport::pass("antipodal")
}

/// Row sums against the closed-form totals, and `f(x, 1)` against its
/// expansion in powers of `1 + x`.
pub fn check_totals(f: &FMatrix) -> RelationReport {
    let (n, d) = (f.n(), f.d());
    if n < d + 1 {
        return RelationReport::fail("totals", format!("n={n} too small for d={d}"));
    }
    for (s, sum) in f.row_sums().into_iter().enumerate() {
        let want = total_face_count(n, d, s).expect("in range");
        if sum != want {
            return RelationReport::fail("totals", format!("row s={s}: {sum} != {want}"));
        }
    }
    let at_one = f.polynomial().substitute(&BiPoly::x(), &BiPoly::one());
    let x1 = &BiPoly::x() + &BiPoly::one();
    let mut expected = BiPoly::zero();
    for i in 0..=d {
        let c = binomial(n, i) * (1 + sign(d - i));
        expected = &expected + &x1.pow(i as u32).scale(&int(c));
    }
    if at_one != expected {
        return RelationReport::fail("totals", format!("f(x,1) = {at_one}, expected {expected}"));
    }
    RelationReport::pass("totals")
}

/// `f - (-1)^d f(-(x+y+1), y)`.
pub fn ds_substitution_residual(f: &FMatrix) -> BiPoly {
    let p = f.polynomial();
    let sx = -&(&(&BiPoly::x() + &BiPoly::y()) + &BiPoly::one());
    let image = p.substitute(&sx, &BiPoly::y()).scale(&int(sign(f.d())));
    &p - &image
}

/// `f_{s,t} - sum_{j,l} (-1)^{d-j} C(j,s) C(j-s,t-l) f_{j,l}` for
/// `0 <= s <= d`, `0 <= t <= n + d`, which covers every monomial the
/// substitution can produce.
pub fn ds_coefficient_residual(f: &FMatrix) -> Vec<Vec<i64>> {
    let (n, d) = (f.n(), f.d());
    let mut out = vec![vec![0i64; n + d + 1]; d + 1];
    for (s, row) in out.iter_mut().enumerate() {
        for (t, cell) in row.iter_mut().enumerate() {
            let mut rhs = 0i64;
            for j in s..=d {
                for l in 0..=t.min(n) {
                    let c = binomial(j, s) * binomial(j - s, t - l);
                    rhs += sign(d - j) * c * f.get(j, l);
                }
            }
            *cell = f.get(s, t) - rhs;
        }
    }
    out
}

/// Checks the Dehn–Sommerville relations in substitution form and in
/// coefficient form, and that the two residuals coincide.
pub fn check_dehn_sommerville(f: &FMatrix) -> RelationReport {
    let sub = ds_substitution_residual(f);
    let coef = ds_coefficient_residual(f);
    let from_coef = BiPoly::from_matrix(&coef, crate::poly2::Var::X, crate::poly2::Var::Y);
    if sub != from_coef {
        return RelationReport::fail(
            "dehn-sommerville",
            format!("substitution residual {sub} differs from coefficient residual {from_coef}"),
        );
    }
    for (s, row) in coef.iter().enumerate() {
        if let Some(t) = row.iter().position(|&c| c != 0) {
            return RelationReport::fail(
                "dehn-sommerville",
                format!("(s,t)=({s},{t}) off by {}", row[t]),
            );
        }
    }
    RelationReport::pass("dehn-sommerville")
}

/// Converts between f- and f\*-polynomials of a rank-`r` configuration of
/// `n` vectors. The substitution `x -> -x/(x+1)`, `y -> (x+y)/(x+1)` is
/// cleared by `(x+1)^n` so everything stays polynomial.
pub fn f_fstar_transform(p: &BiPoly, n: usize, r: usize, direction: Direction) -> Result<BiPoly> {
    let (top_sign, max_x) = match direction {
        Direction::FToFStar => (sign(r), r as i64 - 1),
        Direction::FStarToF => (sign(n - r), n as i64 - r as i64 - 1),
    };
    for (&(dx, dy), _) in p.terms() {
        if dx as i64 > max_x || (dx + dy) as usize > n {
            return Err(Error::Dimension(format!(
                "monomial x^{dx}*y^{dy} lies outside the window for n={n}, r={r}"
            )));
        }
    }
    let x = BiPoly::x();
    let y = BiPoly::y();
    let one = BiPoly::one();
    let x1 = &x + &one;
    let xy = &x + &y;
    let neg_x = -&x;
    let mut cleared = BiPoly::zero();
    for (&(s, t), c) in p.terms() {
        let term = &(&neg_x.pow(s) * &xy.pow(t)) * &x1.pow(n as u32 - s - t);
        cleared = &cleared + &term.scale(c);
    }
    let head = &(&xy + &one).pow(n as u32) - &x.pow(n as u32).scale(&int(top_sign));
    Ok(&head - &cleared)
}

/// f\*-polynomial predicted from the f-matrix against the one counted from
/// dependency patterns.
pub fn check_duality(v: &VectorConfig) -> RelationReport {
    let f = faces::f_matrix(v);
    let fstar = faces::fstar_matrix(v).polynomial();
    let predicted = f_fstar_transform(&f.polynomial(), v.n(), v.r(), Direction::FToFStar)
        .expect("enumerated f-matrix lies in its window");
    if predicted != fstar {
        return RelationReport::fail("duality", format!("predicted {predicted}, counted {fstar}"));
    }
    let back = f_fstar_transform(&fstar, v.n(), v.r(), Direction::FStarToF)
        .expect("enumerated f*-matrix lies in its window");
    if back != f.polynomial() {
        return RelationReport::fail("duality", format!("round trip gave {back}"));
    }
    RelationReport::pass("duality")
}

/// Antipodal symmetry, totals and Dehn–Sommerville for one configuration.
pub fn check_all(v: &VectorConfig) -> Vec<RelationReport> {
    let f = faces::f_matrix(v);
    vec![
        check_antipodal(&f),
        check_totals(&f),
        check_dehn_sommerville(&f),
    ]
}
