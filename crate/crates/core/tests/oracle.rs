//! Independent Alexander polynomial oracle.
//!
//! Works from textbook PD codes rather than the tangle calculus: arcs come
//! from a union-find over the over-strand labels, the Alexander matrix is
//! filled with the classical `(1 - t, t, -1)` rows, and the determinant of
//! a minor is evaluated at integer points with exact rational elimination
//! and recovered by Lagrange interpolation. Nothing here calls into the
//! library except to compare final answers.

use extsym::alexander::alexander_polynomial_knot;
use extsym::construct::{extended_symmetric_union, symmetric_union_single_twist, TABLE1};
use extsym::{catalog, LaurentPoly, Tangle};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

type Pd = &'static [[usize; 4]];

const PD_3_1: Pd = &[[1, 5, 2, 4], [3, 1, 4, 6], [5, 3, 6, 2]];
const PD_4_1: Pd = &[[4, 2, 5, 1], [8, 6, 1, 5], [6, 3, 7, 4], [2, 7, 3, 8]];
const PD_5_1: Pd = &[[2, 8, 3, 7], [4, 10, 5, 9], [6, 2, 7, 1], [8, 4, 9, 3], [10, 6, 1, 5]];
const PD_5_2: Pd = &[[1, 5, 2, 4], [3, 9, 4, 8], [5, 1, 6, 10], [7, 3, 8, 2], [9, 7, 10, 6]];

fn find(parent: &mut Vec<usize>, x: usize) -> usize {
    if parent[x] != x {
        let r = find(parent, parent[x]);
        parent[x] = r;
    }
    parent[x]
}

/// Alexander matrix over `Z[t]` as coefficient vectors, rows = crossings.
fn pd_matrix(pd: Pd) -> Vec<Vec<Vec<i64>>> {
    let n_labels = 2 * pd.len();
    let mut parent: Vec<usize> = (0..=n_labels).collect();
    for x in pd {
        let (a, b) = (find(&mut parent, x[1]), find(&mut parent, x[3]));
        parent[a] = b;
    }
    let mut arc_ids = std::collections::BTreeMap::new();
    for label in 1..=n_labels {
        let r = find(&mut parent, label);
        let next = arc_ids.len();
        arc_ids.entry(r).or_insert(next);
    }
    let n_arcs = arc_ids.len();
    let succ = |l: usize| if l == n_labels { 1 } else { l + 1 };
    pd.iter()
        .map(|x| {
            let arc = |l: usize| arc_ids[&find(&mut parent.clone(), l)];
            let (inc, out, over) = (arc(x[0]), arc(x[2]), arc(x[1]));
            // over strand runs x[3] -> x[1] when x[1] follows x[3]
            let positive = x[1] == succ(x[3]);
            let mut row = vec![vec![0i64; 2]; n_arcs];
            let (a, c) = if positive { ((1, 0), (0, -1)) } else { ((0, 1), (-1, 0)) };
            row[inc][0] += a.0;
            row[inc][1] += a.1;
            row[out][0] += c.0;
            row[out][1] += c.1;
            let s = if positive { 1 } else { -1 };
            row[over][0] -= s;
            row[over][1] += s;
            row
        })
        .collect()
}

fn det_rational(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut det = BigRational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return BigRational::zero();
        };
        if p != k {
            m.swap(p, k);
            det = -det;
        }
        det *= m[k][k].clone();
        for i in k + 1..n {
            let f = &m[i][k] / &m[k][k];
            let (top, bottom) = m.split_at_mut(i);
            for (x, y) in bottom[0][k..].iter_mut().zip(&top[k][k..]) {
                *x -= &f * y;
            }
        }
    }
    det
}

/// Determinant of the minor without `row` and `col`, as a polynomial in t.
fn minor_poly(m: &[Vec<Vec<i64>>], row: usize, col: usize) -> LaurentPoly {
    let size = m.len() - 1;
    let pts: Vec<i64> = (0..=size as i64).map(|k| k + 2).collect();
    let vals: Vec<BigRational> = pts
        .iter()
        .map(|&t| {
            let sub = m
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != row)
                .map(|(_, r)| {
                    r.iter()
                        .enumerate()
                        .filter(|&(j, _)| j != col)
                        .map(|(_, c)| BigRational::from_integer(BigInt::from(c[0] + c[1] * t)))
                        .collect()
                })
                .collect();
            det_rational(sub)
        })
        .collect();
    interpolate(&pts, &vals)
}

fn interpolate(xs: &[i64], ys: &[BigRational]) -> LaurentPoly {
    let n = xs.len();
    let mut coeffs = vec![BigRational::zero(); n];
    for i in 0..n {
        // basis polynomial prod_{j != i} (t - x_j) / (x_i - x_j)
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for j in 0..n {
            if j == i {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] += b;
                next[k] -= b * BigRational::from_integer(BigInt::from(xs[j]));
            }
            basis = next;
            denom *= BigRational::from_integer(BigInt::from(xs[i] - xs[j]));
        }
        for (k, b) in basis.iter().enumerate() {
            coeffs[k] += b * &ys[i] / &denom;
        }
    }
    LaurentPoly::from_terms(coeffs.into_iter().enumerate().map(|(k, c)| {
        assert!(c.is_integer(), "non-integral interpolated coefficient {c}");
        (k as i64, c.to_integer())
    }))
}

fn oracle(pd: Pd) -> LaurentPoly {
    let m = pd_matrix(pd);
    let a = minor_poly(&m, m.len() - 1, m.len() - 1);
    let b = minor_poly(&m, 0, 1);
    assert!(a.equal_up_to_unit(&b), "column deletion changed the minor: {a} vs {b}");
    normalize(&a)
}

/// Symmetric representative with positive value at 1, computed here
/// rather than through the library's canonical form.
fn normalize(p: &LaurentPoly) -> LaurentPoly {
    let lo = p.min_exp().unwrap();
    let hi = p.max_exp().unwrap();
    assert_eq!((hi - lo) % 2, 0, "odd span");
    let q = p.shift(-(lo + hi) / 2);
    if q.eval_one().is_negative() {
        -q
    } else {
        q
    }
}

fn lib(d: &extsym::ClosedDiagram) -> LaurentPoly {
    alexander_polynomial_knot(d).unwrap()
}

#[test]
fn textbook_polynomials() {
    assert_eq!(oracle(PD_3_1), LaurentPoly::from_coeffs(-1, &[1, -1, 1]));
    assert_eq!(oracle(PD_4_1), LaurentPoly::from_coeffs(-1, &[-1, 3, -1]));
    assert_eq!(oracle(PD_5_1), LaurentPoly::from_coeffs(-2, &[1, -1, 1, -1, 1]));
    assert_eq!(oracle(PD_5_2), LaurentPoly::from_coeffs(-1, &[2, -3, 2]));
}

#[test]
fn catalog_matches_oracle() {
    let cat = catalog::bundled().unwrap();
    for (name, pd) in [("3_1", PD_3_1), ("4_1", PD_4_1), ("5_1", PD_5_1), ("5_2", PD_5_2)] {
        let entry = cat.lookup(name).unwrap();
        assert_eq!(entry.expected_delta, oracle(pd), "{name}");
        assert_eq!(lib(&entry.knot()), oracle(pd), "{name}");
    }
    for (name, pd) in [("3_1D", PD_3_1), ("4_1D", PD_4_1), ("5_2D", PD_5_2)] {
        assert_eq!(cat.lookup(name).unwrap().expected_delta, oracle(pd), "{name}");
    }
    let sq = &oracle(PD_3_1) * &oracle(PD_3_1);
    assert_eq!(cat.lookup("3_1#3_1*").unwrap().expected_delta, sq);
}

#[test]
fn two_bridge_closures_match_oracle() {
    assert_eq!(lib(&Tangle::integer(3).numerator()), oracle(PD_3_1));
    assert_eq!(lib(&Tangle::rational(5, 2).unwrap().numerator()), oracle(PD_4_1));
    assert_eq!(lib(&Tangle::integer(-5).numerator()), oracle(PD_5_1));
    assert_eq!(lib(&Tangle::rational(7, 3).unwrap().numerator()), oracle(PD_5_2));
    assert_eq!(lib(&Tangle::rational(2, 7).unwrap().denominator()), oracle(PD_5_2));
}

#[test]
fn symmetric_unions_square_the_oracle() {
    let f8 = oracle(PD_4_1);
    let ld = symmetric_union_single_twist(&Tangle::rational(2, 5).unwrap(), 2).unwrap();
    assert_eq!(lib(ld.diagram()), &f8 * &f8);
    let tre = oracle(PD_3_1);
    let ld = extended_symmetric_union(&Tangle::twist(3), &Tangle::rational(1, 2).unwrap()).unwrap();
    assert_eq!(lib(ld.diagram()), &tre * &tre);
}

#[test]
fn table_products_from_oracle() {
    let by_name = |n: &str| match n {
        "unknot" => LaurentPoly::one(),
        "3_1" => oracle(PD_3_1),
        "4_1" => oracle(PD_4_1),
        "5_1" => oracle(PD_5_1),
        "5_2" => oracle(PD_5_2),
        other => panic!("{other}"),
    };
    for row in TABLE1 {
        let khat = by_name(row.khat.name());
        let expected = &by_name(row.numerator_knot) * &(&khat * &khat);
        assert_eq!(lib(row.build().unwrap().diagram()), expected, "{}", row.label);
    }
}

#[test]
fn hopf_link_minors_do_not_all_vanish() {
    // Hopf link: every 1x1 minor of its 2x2 Alexander matrix is an entry
    let hopf: Pd = &[[4, 1, 3, 2], [2, 3, 1, 4]];
    let m = pd_matrix(hopf);
    assert!(m.iter().flatten().any(|c| c.iter().any(|&x| x != 0)));
    let d = Tangle::integer(2).numerator();
    let p = extsym::wirtinger::OrientedDiagram::orient(&d).wirtinger_presentation();
    assert!(!extsym::alexander::first_elementary_ideal_vanishes(&p));
}
