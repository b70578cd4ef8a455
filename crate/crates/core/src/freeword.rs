//! Words in free groups, free and cyclic reduction, relator matching, and a
//! bounded search for triviality certificates in finitely presented groups.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::par;

/// One generator raised to `±1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: usize, exponent: i32) -> Self {
        debug_assert!(exponent == 1 || exponent == -1);
        Letter { gen, inverse: exponent < 0 }
    }

    pub fn pos(gen: usize) -> Self {
        Letter { gen, inverse: false }
    }

    pub fn neg(gen: usize) -> Self {
        Letter { gen, inverse: true }
    }

    pub fn exponent(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn inv(self) -> Self {
        Letter { gen: self.gen, inverse: !self.inverse }
    }

    fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.inverse != other.inverse
    }
}

/// A word over indexed generators. Not necessarily reduced; see [`Word::free_reduce`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_pairs(pairs: &[(usize, i32)]) -> Self {
        Word(pairs.iter().map(|&(g, e)| Letter::new(g, e)).collect())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    /// `g^e`, as `|e|` letters.
    pub fn power(gen: usize, e: i64) -> Self {
        let l = Letter::new(gen, if e < 0 { -1 } else { 1 });
        Word(vec![l; e.unsigned_abs() as usize])
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    /// Free reduction by a single left-to-right stack pass.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            match out.last() {
                Some(&top) if top.cancels(l) => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        Word(out)
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.0.windows(2).all(|w| !w[0].cancels(w[1]))
    }

    /// Free reduction followed by removal of cancelling first/last letters.
    /// The result is conjugate to the input.
    pub fn cyclic_reduce(&self) -> Word {
        let w = self.free_reduce().0;
        let (mut lo, mut hi) = (0, w.len());
        while hi - lo >= 2 && w[lo].cancels(w[hi - 1]) {
            lo += 1;
            hi -= 1;
        }
        Word(w[lo..hi].to_vec())
    }

    pub fn rotate(&self, k: usize) -> Word {
        let mut v = self.0.clone();
        if !v.is_empty() {
            let n = v.len();
            v.rotate_left(k % n);
        }
        Word(v)
    }

    pub fn exponent_sum(&self, gen: usize) -> i64 {
        self.0.iter().filter(|l| l.gen == gen).map(|l| l.exponent()).sum()
    }

    pub fn total_exponent(&self) -> i64 {
        self.0.iter().map(|l| l.exponent()).sum()
    }

    /// Replaces each generator by `map[gen]` (keeping the exponent).
    pub fn substitute(&self, map: &[usize]) -> Word {
        Word(self.0.iter().map(|l| Letter { gen: map[l.gen], inverse: l.inverse }).collect())
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.gen).max()
    }

    fn exponent_vector(&self, n: usize) -> Vec<i128> {
        let mut v = vec![0i128; n];
        for l in &self.0 {
            v[l.gen] += l.exponent() as i128;
        }
        v
    }
}

impl fmt::Display for Word {
    /// `x3 X1 x2`: lowercase is `+1`, uppercase `-1`. The empty word prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}{}", if l.inverse { 'X' } else { 'x' }, l.gen)?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let inverse = match tok.as_bytes()[0] {
                b'x' => false,
                b'X' => true,
                _ => return Err(Error::Malformed(format!("bad word letter {tok:?}"))),
            };
            let gen = tok[1..]
                .parse()
                .map_err(|_| Error::Malformed(format!("bad generator index in {tok:?}")))?;
            letters.push(Letter { gen, inverse });
        }
        Ok(Word(letters))
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Is `w` freely trivial, or a cyclic permutation of some relator or relator
/// inverse (compared after cyclic reduction)?
pub fn is_relator_consequence_syntactic(w: &Word, relators: &[Word]) -> bool {
    matching_relator(w, relators).is_some() || w.free_reduce().is_empty()
}

/// Index of the relator `w` matches up to cyclic permutation and inversion.
pub fn matching_relator(w: &Word, relators: &[Word]) -> Option<usize> {
    let target = w.cyclic_reduce();
    if target.is_empty() {
        return None;
    }
    relators.iter().position(|r| {
        let r = r.cyclic_reduce();
        r.len() == target.len() && (is_rotation(&r, &target) || is_rotation(&r.inverse(), &target))
    })
}

fn is_rotation(a: &Word, b: &Word) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    (0..a.len()).any(|k| a.0[k..].iter().chain(&a.0[..k]).eq(b.0.iter()))
}

/// A finite presentation with a distinguished meridian generator and an
/// optional longitude word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generator_count: usize,
    pub relators: Vec<Word>,
    pub meridian: usize,
    pub longitude: Option<Word>,
}

impl Presentation {
    pub fn new(generator_count: usize, relators: Vec<Word>, meridian: usize) -> Result<Self> {
        for r in &relators {
            if let Some(g) = r.max_generator() {
                if g >= generator_count {
                    return Err(Error::Malformed(format!(
                        "relator {r} uses x{g} but only {generator_count} generators exist"
                    )));
                }
            }
        }
        if generator_count > 0 && meridian >= generator_count {
            return Err(Error::Malformed(format!("meridian x{meridian} out of range")));
        }
        Ok(Presentation { generator_count, relators, meridian, longitude: None })
    }

    pub fn with_longitude(mut self, longitude: Word) -> Self {
        self.longitude = Some(longitude);
        self
    }

    fn relator_lattice(&self) -> AbelianLattice {
        let mut lattice = AbelianLattice::new(self.generator_count);
        for r in &self.relators {
            lattice.insert(r.exponent_vector(self.generator_count));
        }
        lattice
    }

    /// Free rank of the abelianization; 1 for every knot group.
    pub fn abelian_rank(&self) -> usize {
        self.generator_count - self.relator_lattice().rank()
    }

    /// Does `w` vanish in the abelianization? Necessary for triviality.
    pub fn abelianizes_trivially(&self, w: &Word) -> bool {
        self.relator_lattice().contains(w.exponent_vector(self.generator_count))
    }

    /// Text dump: header lines, then one relator per line.
    pub fn dump(&self) -> String {
        let mut s = format!("generators {}\nmeridian x{}\n", self.generator_count, self.meridian);
        if let Some(l) = &self.longitude {
            s.push_str(&format!("longitude {l}\n"));
        }
        for r in &self.relators {
            s.push_str(&format!("{r}\n"));
        }
        s
    }
}

/// Integer lattice in echelon (Hermite-style) form, for abelianization checks.
struct AbelianLattice {
    basis: Vec<Option<Vec<i128>>>,
}

impl AbelianLattice {
    fn new(n: usize) -> Self {
        AbelianLattice { basis: vec![None; n] }
    }

    fn insert(&mut self, mut v: Vec<i128>) {
        for col in 0..v.len() {
            if v[col] == 0 {
                continue;
            }
            let Some(mut b) = self.basis[col].take() else {
                self.basis[col] = Some(v);
                return;
            };
            // Euclid on the pivot column; afterwards b holds the gcd row and v[col] = 0.
            while v[col] != 0 {
                let q = b[col] / v[col];
                for (bi, vi) in b.iter_mut().zip(&v) {
                    *bi -= q * vi;
                }
                std::mem::swap(&mut b, &mut v);
            }
            self.basis[col] = Some(b);
        }
    }

    fn rank(&self) -> usize {
        self.basis.iter().filter(|b| b.is_some()).count()
    }

    fn contains(&self, mut v: Vec<i128>) -> bool {
        for col in 0..v.len() {
            if v[col] == 0 {
                continue;
            }
            let Some(b) = &self.basis[col] else { return false };
            if v[col] % b[col] != 0 {
                return false;
            }
            let q = v[col] / b[col];
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi -= q * bi;
            }
        }
        true
    }
}

/// Outcome of [`bounded_triviality`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum TrivialityResult {
    Verified { depth: usize },
    Inconclusive { note: String },
}

impl TrivialityResult {
    pub fn is_verified(&self) -> bool {
        matches!(self, TrivialityResult::Verified { .. })
    }
}

pub const DEFAULT_DEPTH: usize = 10;
pub const DEFAULT_BEAM: usize = 100_000;

/// Searches for a certificate that `w` is trivial in the group presented by
/// `p`: at most `depth` relator insertions, each followed by free and cyclic
/// reduction, keeping the `beam` shortest words per level. Only ever reports
/// `Verified` with an explicit derivation; words that survive in the
/// abelianization are rejected up front.
pub fn bounded_triviality(w: &Word, p: &Presentation, depth: usize, beam: usize) -> TrivialityResult {
    let start = w.cyclic_reduce();
    if start.is_empty() {
        return TrivialityResult::Verified { depth: 0 };
    }
    if !p.abelianizes_trivially(&start) {
        return TrivialityResult::Inconclusive {
            note: format!("abelianization obstruction: {start} is nonzero in H1"),
        };
    }
    let variants = relator_variants(&p.relators);
    if variants.is_empty() {
        return TrivialityResult::Inconclusive { note: "no relators available".into() };
    }

    let mut seen: HashSet<Word> = HashSet::new();
    seen.insert(start.clone());
    let mut frontier = vec![start];
    for level in 1..=depth {
        let expansions: Vec<Vec<Word>> = par::map(&frontier, |w| expand(w, &variants));
        let mut next: Vec<Word> = Vec::new();
        for cand in expansions.into_iter().flatten() {
            if cand.is_empty() {
                return TrivialityResult::Verified { depth: level };
            }
            if seen.insert(cand.clone()) {
                next.push(cand);
            }
        }
        if next.is_empty() {
            break;
        }
        next.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        next.truncate(beam);
        frontier = next;
    }
    TrivialityResult::Inconclusive { note: format!("no certificate within depth {depth}") }
}

/// Every cyclic rotation of every relator and relator inverse, cyclically reduced.
fn relator_variants(relators: &[Word]) -> Vec<Word> {
    let mut out: Vec<Word> = Vec::new();
    let mut seen = HashSet::new();
    for r in relators {
        let r = r.cyclic_reduce();
        for base in [r.clone(), r.inverse()] {
            for k in 0..base.len() {
                let v = base.rotate(k);
                if seen.insert(v.clone()) {
                    out.push(v);
                }
            }
        }
    }
    out
}

/// Insertions of a relator variant into the cyclic word `w` that cancel at
/// least one letter at the seam.
fn expand(w: &Word, variants: &[Word]) -> Vec<Word> {
    let n = w.len();
    let mut out = Vec::new();
    for v in variants {
        let first = v.0[0];
        let last = *v.0.last().unwrap();
        for i in 0..n {
            // insert between w[i-1] and w[i] (cyclically)
            let before = w.0[(i + n - 1) % n];
            let after = w.0[i];
            if !(before.cancels(first) || last.cancels(after)) {
                continue;
            }
            let mut letters = Vec::with_capacity(n + v.len());
            letters.extend_from_slice(&w.0[i..]);
            letters.extend_from_slice(&w.0[..i]);
            letters.extend_from_slice(&v.0);
            out.push(Word(letters).cyclic_reduce());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn trefoil() -> Presentation {
        // x0 x2 X1 X2, x1 x0 X2 X0, x2 x1 X0 X1
        Presentation::new(3, vec![w("x0 x2 X1 X2"), w("x1 x0 X2 X0"), w("x2 x1 X0 X1")], 0).unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert!(w("x0 x1 X1 X0").free_reduce().is_empty());
        assert!(w("X0 x1 X1 x0").free_reduce().is_empty());
        assert_eq!(w("x0 x1 X0").free_reduce(), w("x0 x1 X0"));
        assert_eq!(w("x0 x1 X0").cyclic_reduce(), w("x1"));
    }

    #[test]
    fn exponent_sums() {
        assert_eq!(w("x0 x1 X0").total_exponent(), 1);
        assert_eq!(w("x0 x1 X0").exponent_sum(0), 0);
        assert_eq!(Word::empty().total_exponent(), 0);
    }

    #[test]
    fn display_parse() {
        let word = w("x3 X1 x2");
        assert_eq!(word.to_string(), "x3 X1 x2");
        assert_eq!(Word::empty().to_string(), "1");
        assert_eq!(w("1"), Word::empty());
        assert!("y2".parse::<Word>().is_err());
    }

    #[test]
    fn syntactic_matching() {
        let rels = trefoil().relators;
        assert!(is_relator_consequence_syntactic(&Word::empty(), &rels));
        assert!(is_relator_consequence_syntactic(&w("x2 X1 X2 x0"), &rels));
        assert!(is_relator_consequence_syntactic(&w("x2 x1 X2 X0"), &rels));
        assert!(!is_relator_consequence_syntactic(&w("x0"), &rels));
        assert_eq!(matching_relator(&w("x1 X0 X1 x2"), &rels), Some(2));
    }

    #[test]
    fn bounded_search_examples() {
        let p = trefoil();
        assert_eq!(bounded_triviality(&Word::empty(), &p, 10, 1000), TrivialityResult::Verified { depth: 0 });
        assert_eq!(bounded_triviality(&p.relators[0], &p, 10, 1000), TrivialityResult::Verified { depth: 1 });
        assert!(!bounded_triviality(&w("x0"), &p, 10, 1000).is_verified());
        // conjugate of a relator product
        let c = w("x1").concat(&p.relators[0]).concat(&p.relators[1]).concat(&w("X1"));
        assert!(bounded_triviality(&c, &p, 4, 1000).is_verified());
    }

    #[test]
    fn abelianization_gate() {
        let p = trefoil();
        assert_eq!(p.abelian_rank(), 1);
        assert!(p.abelianizes_trivially(&w("x0 X1")));
        assert!(!p.abelianizes_trivially(&w("x0 x1")));
        let free = Presentation::new(2, vec![], 0).unwrap();
        assert_eq!(free.abelian_rank(), 2);
        assert!(!free.abelianizes_trivially(&w("x0 X1")));
    }

    #[test]
    fn presentation_rejects_out_of_range() {
        assert!(Presentation::new(2, vec![w("x0 x2")], 0).is_err());
    }
}
