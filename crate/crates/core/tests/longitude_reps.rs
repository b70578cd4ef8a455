//! The paired and standard longitude readings are different words for the
//! same element of the knot group. Checked through dihedral representations:
//! a Fox coloring mod p sends each meridian to a reflection of Z/p.

use extsym::catalog;
use extsym::construct::{extended_symmetric_union, LabeledDiagram};
use extsym::freeword::{Presentation, Word};
use extsym::wirtinger::LongitudeReading;
use extsym::Tangle;
use proptest::prelude::*;

/// Affine map `x -> s*x + b` on Z/p.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Affine {
    s: i64,
    b: i64,
}

fn compose(a: Affine, c: Affine, p: i64) -> Affine {
    Affine { s: (a.s * c.s).rem_euclid(p), b: (a.s * c.b + a.b).rem_euclid(p) }
}

fn eval(w: &Word, colors: &[i64], p: i64) -> Affine {
    // reflections are involutions, so inverse letters map the same way
    w.letters()
        .iter()
        .fold(Affine { s: 1, b: 0 }, |acc, l| compose(acc, Affine { s: p - 1, b: (2 * colors[l.gen]).rem_euclid(p) }, p))
}

/// Basis of the solution space of `c_i + c_k - 2 c_j = 0` at every crossing.
fn coloring_basis(pres: &Presentation, p: i64) -> Vec<Vec<i64>> {
    let n = pres.generator_count;
    let mut rows: Vec<Vec<i64>> = pres
        .relators
        .iter()
        .map(|r| {
            let mut row = vec![0i64; n];
            // every relator reads x_i x_j X_k X_j or x_j x_i X_j X_k
            let l = r.letters();
            let (i, j, k) = if l[1].gen == l[3].gen { (l[0].gen, l[1].gen, l[2].gen) } else { (l[1].gen, l[0].gen, l[3].gen) };
            row[i] += 1;
            row[k] += 1;
            row[j] -= 2;
            row.iter_mut().for_each(|x| *x = x.rem_euclid(p));
            row
        })
        .collect();
    let inv = |a: i64| (1..p).find(|x| (a * x) % p == 1).unwrap();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, pr);
        let f = inv(rows[r][c]);
        rows[r].iter_mut().for_each(|x| *x = (*x * f) % p);
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let g = rows[i][c];
                let pivot_row = rows[r].clone();
                rows[i].iter_mut().zip(&pivot_row).for_each(|(x, y)| *x = (*x - g * y).rem_euclid(p));
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![0i64; n];
            v[free] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = (-rows[row][free]).rem_euclid(p);
            }
            v
        })
        .collect()
}

fn check(ld: &LabeledDiagram, p: i64, coeffs: &[i64]) -> Result<(), TestCaseError> {
    let pres = ld.presentation();
    let basis = coloring_basis(&pres, p);
    prop_assert!(basis.len() >= 2, "expected a nontrivial coloring mod {p}");
    let colors: Vec<i64> = (0..pres.generator_count)
        .map(|g| basis.iter().zip(coeffs.iter().cycle()).map(|(v, c)| v[g] * c).sum::<i64>().rem_euclid(p))
        .collect();
    let id = Affine { s: 1, b: 0 };
    for r in &pres.relators {
        prop_assert_eq!(eval(r, &colors, p), id);
    }
    let paired = eval(&ld.longitude(), &colors, p);
    let standard = eval(&ld.longitude_with(LongitudeReading::Writhe), &colors, p);
    prop_assert_eq!(paired, standard);
    let m = eval(&Word::power(pres.meridian, 1), &colors, p);
    prop_assert_eq!(compose(m, paired, p), compose(paired, m, p));
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, ..ProptestConfig::default() })]

    #[test]
    fn readings_agree_in_dihedral_quotients(
        which in 0usize..3,
        h in -12i64..=12,
        q in 1i64..=5,
        coeffs in prop::collection::vec(0i64..7, 1..4),
    ) {
        let (name, prime) = [("3_1D", 3), ("4_1D", 5), ("5_2D", 7)][which];
        let (p, q) = (2 * h + 1, 2 * q);
        prop_assume!(num_integer::gcd(p, q) == 1);
        let d = catalog::bundled().unwrap().tangle(name).unwrap();
        let ld = extended_symmetric_union(&d, &Tangle::rational(p, q).unwrap()).unwrap();
        check(&ld, prime, &coeffs)?;
    }
}

#[test]
fn representation_detects_a_wrong_longitude() {
    let d = catalog::bundled().unwrap().tangle("3_1D").unwrap();
    let ld = extended_symmetric_union(&d, &Tangle::rational(-3, 2).unwrap()).unwrap();
    let pres = ld.presentation();
    let basis = coloring_basis(&pres, 3);
    // find a coloring where some generator is not the meridian's color
    let colors = basis.iter().find(|v| v.iter().any(|&c| c != v[0])).unwrap().clone();
    let g = (0..pres.generator_count).find(|&g| colors[g] != colors[pres.meridian]).unwrap();
    let bogus = ld.longitude().concat(&Word::power(g, 1)).concat(&Word::power(pres.meridian, -1));
    assert_ne!(eval(&bogus, &colors, 3), eval(&ld.longitude(), &colors, 3));
}
