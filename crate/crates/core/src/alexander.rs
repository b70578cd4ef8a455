//! Fox calculus and Alexander invariants.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::freeword::{Presentation, Word};
use crate::laurent::LaurentPoly;
use crate::par::{self, Exec};
use crate::tangle::ClosedDiagram;
use crate::wirtinger::OrientedDiagram;

/// Rows beyond this size get their elimination updates fanned out.
const PAR_ROWS: usize = 24;

/// Fox derivative of `w` with respect to every generator, abelianized by
/// sending each generator to `t`. Entry `g` of the result is `∂w/∂x_g`.
pub fn fox_row(w: &Word, generators: usize) -> Vec<LaurentPoly> {
    let mut row = vec![LaurentPoly::zero(); generators];
    let mut prefix = 0i64;
    for l in w.letters() {
        if l.inverse {
            prefix -= 1;
            row[l.gen] = &row[l.gen] - &LaurentPoly::monomial(1, prefix);
        } else {
            row[l.gen] = &row[l.gen] + &LaurentPoly::monomial(1, prefix);
            prefix += 1;
        }
    }
    row
}

/// Alexander matrix: one row per relator, one column per generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlexanderMatrix {
    pub rows: Vec<Vec<LaurentPoly>>,
    pub cols: usize,
}

impl AlexanderMatrix {
    pub fn from_presentation(p: &Presentation) -> Self {
        let rows = p.relators.iter().map(|r| fox_row(r, p.generator_count)).collect();
        AlexanderMatrix { rows, cols: p.generator_count }
    }

    /// Square submatrix with one row and one column removed.
    pub fn minor(&self, row: usize, col: usize) -> Vec<Vec<LaurentPoly>> {
        self.rows
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != row)
            .map(|(_, r)| r.iter().enumerate().filter(|&(j, _)| j != col).map(|(_, x)| x.clone()).collect())
            .collect()
    }

    /// Integer matrix obtained by substituting `t = v`; rows are first
    /// shifted so that no negative powers remain.
    fn evaluate(&self, v: i64) -> Vec<Vec<BigInt>> {
        let v = BigInt::from(v);
        self.rows
            .iter()
            .map(|r| {
                let lo = r.iter().filter_map(|x| x.min_exp()).min().unwrap_or(0);
                r.iter().map(|x| x.shift(-lo).eval_int(&v).expect("shifted row is polynomial")).collect()
            })
            .collect()
    }
}

/// Exact integral-domain operations needed by fraction-free elimination.
trait Ring: Clone + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn neg(&self) -> Self;
    /// `a*d - b*c`, divided exactly by `e`.
    fn cross_div(a: &Self, d: &Self, b: &Self, c: &Self, e: &Self) -> Self;
}

impl Ring for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn one() -> Self {
        LaurentPoly::one()
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn cross_div(a: &Self, d: &Self, b: &Self, c: &Self, e: &Self) -> Self {
        let num = &(a * d) - &(b * c);
        if e.is_one() {
            return num;
        }
        num.div_exact(e).expect("Bareiss division is exact")
    }
}

impl Ring for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn cross_div(a: &Self, d: &Self, b: &Self, c: &Self, e: &Self) -> Self {
        (a * d - b * c) / e
    }
}

/// Fraction-free elimination with full pivoting. Returns the rank and, for
/// a square input of full rank, the determinant.
fn bareiss<R: Ring>(mut m: Vec<Vec<R>>, exec: Exec) -> (usize, R) {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut prev = R::one();
    let mut sign_flip = false;
    let mut rank = 0;
    for k in 0..rows.min(cols) {
        let pivot = (k..cols).find_map(|j| (k..rows).find(|&i| !m[i][j].is_zero()).map(|i| (i, j)));
        let Some((pi, pj)) = pivot else { break };
        if pi != k {
            m.swap(pi, k);
            sign_flip = !sign_flip;
        }
        if pj != k {
            for r in m.iter_mut() {
                r.swap(pj, k);
            }
            sign_flip = !sign_flip;
        }
        rank += 1;
        let (head, tail) = m.split_at_mut(k + 1);
        let prow = &head[k];
        let update = |_: usize, r: &mut Vec<R>| {
            let f = r[k].clone();
            for j in k + 1..cols {
                r[j] = R::cross_div(&r[j], &prow[k], &f, &prow[j], &prev);
            }
            r[k] = R::zero();
        };
        let exec = if tail.len() >= PAR_ROWS { exec } else { Exec::Sequential };
        par::for_each_mut(exec, tail, update);
        prev = m[k][k].clone();
    }
    let det = if rows == cols && rank == rows {
        if rows == 0 {
            R::one()
        } else if sign_flip {
            m[rows - 1][cols - 1].neg()
        } else {
            m[rows - 1][cols - 1].clone()
        }
    } else {
        R::zero()
    };
    (rank, det)
}

/// Exact determinant over `Z[t, t^-1]`.
pub fn determinant(m: Vec<Vec<LaurentPoly>>) -> LaurentPoly {
    determinant_with(m, Exec::default())
}

pub fn determinant_with(m: Vec<Vec<LaurentPoly>>, exec: Exec) -> LaurentPoly {
    assert!(m.iter().all(|r| r.len() == m.len()), "square matrix required");
    bareiss(m, exec).1
}

/// Rank over the fraction field of `Z[t]`.
pub fn rank(m: Vec<Vec<LaurentPoly>>, exec: Exec) -> usize {
    bareiss(m, exec).0
}

/// Alexander polynomial of a knot group presentation, in canonical form.
/// Two different minors are computed and must agree up to a unit.
pub fn alexander_polynomial(p: &Presentation) -> Result<LaurentPoly> {
    alexander_polynomial_with(p, Exec::default())
}

pub fn alexander_polynomial_with(p: &Presentation, exec: Exec) -> Result<LaurentPoly> {
    let g = p.generator_count;
    if g <= 1 && p.relators.iter().all(|r| r.free_reduce().is_empty()) {
        return Ok(LaurentPoly::one());
    }
    if p.relators.len() < g - 1 {
        return Err(Error::DegenerateMatrix);
    }
    let a = AlexanderMatrix::from_presentation(p);
    let r = p.relators.len();
    // delete `r - g + 1` rows so the minor is square: keep the first g - 1
    // rows but leave out a chosen one
    let square = |skip_row: usize, col: usize| -> Vec<Vec<LaurentPoly>> {
        let mut m = a.minor(skip_row, col);
        m.truncate(g - 1);
        m
    };
    let choices = [(r - 1, g - 1), (0, 0)];
    let dets = par::map_with(exec, &choices, |&(i, j)| determinant_with(square(i, j), exec));
    if dets[0].is_zero() || dets[1].is_zero() {
        return Err(Error::DegenerateMatrix);
    }
    if !dets[0].equal_up_to_unit(&dets[1]) {
        return Err(Error::SelfCheckFailed {
            name: "alexander".into(),
            reason: format!("minors disagree: {} vs {}", dets[0], dets[1]),
        });
    }
    dets[0].canonicalize_knot()
}

/// Alexander polynomial of a one-component diagram.
pub fn alexander_polynomial_knot(d: &ClosedDiagram) -> Result<LaurentPoly> {
    let od = OrientedDiagram::orient(d);
    if od.component_count() != 1 {
        return Err(Error::NotAKnot(od.component_count()));
    }
    alexander_polynomial(&od.wirtinger_presentation())
}

/// Points used to bound the rank from below before doing exact work.
const EVAL_POINTS: [i64; 3] = [2, 3, -2];

/// Whether every `(n-1)`-minor of the Alexander matrix vanishes, where `n`
/// is the number of generators.
pub fn first_elementary_ideal_vanishes(p: &Presentation) -> bool {
    first_elementary_ideal_vanishes_with(p, Exec::default())
}

pub fn first_elementary_ideal_vanishes_with(p: &Presentation, exec: Exec) -> bool {
    let n = p.generator_count;
    if n == 0 {
        return false;
    }
    let a = AlexanderMatrix::from_presentation(p);
    if a.rows.len() < n - 1 {
        return true;
    }
    // evaluation can only lower the rank
    if EVAL_POINTS.iter().any(|&v| bareiss(a.evaluate(v), exec).0 >= n - 1) {
        return false;
    }
    rank(a.rows, exec) < n - 1
}

/// Checks `Δ_K ≐ Δ_{N(T)} · Δ_{K̂}²`.
pub fn verify_factorization(delta_k: &LaurentPoly, delta_nt: &LaurentPoly, delta_khat: &LaurentPoly) -> bool {
    let rhs = delta_nt * &(delta_khat * delta_khat);
    delta_k.equal_up_to_unit(&rhs)
}

/// Determinant of a knot: `|Δ(-1)|`.
pub fn knot_determinant(delta: &LaurentPoly) -> BigInt {
    let lo = delta.min_exp().unwrap_or(0);
    delta.shift(-lo).eval_int(&BigInt::from(-1)).unwrap_or_default().abs()
}
