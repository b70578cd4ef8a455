//! Planar tangles with four boundary points and the closed diagrams obtained
//! from them.
//!
//! A diagram is stored as a rotation system: each crossing lists the edges at
//! its four slots in counterclockwise order, and the strand through slot `s`
//! leaves through slot `s + 2`. One of the two strands is marked as the
//! over-strand. Every edge has exactly two ends, each attached to a crossing
//! slot or (for tangles) a boundary point. Crossingless circles are kept as a
//! separate count.
//!
//! ```text
//!   NW        NE        slot 3 (NW)   slot 2 (NE)
//!     \      /                 \     /
//!      tangle                   [ X ]
//!     /      \                 /     \
//!   SW        SE        slot 0 (SW)   slot 1 (SE)
//! ```
//!
//! The single crossing `[1]` has its over-strand on slots 0 and 2 (SW to NE).
//! Integer tangles `[n]` are horizontal sums of that crossing, `1/T` is the
//! quarter turn followed by a crossing switch, and a rational tangle for
//! `c1 + 1/(c2 + 1/(...))` is `[c1] + 1/(...)`. Under this convention the
//! numerator closure of the tangle with fraction `p/q` is the two-bridge link
//! of determinant `|p|`.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};

/// Boundary points in storage order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Corner {
    NW = 0,
    NE = 1,
    SW = 2,
    SE = 3,
}

impl Corner {
    pub const ALL: [Corner; 4] = [Corner::NW, Corner::NE, Corner::SW, Corner::SE];
}

/// Which pair of antipodal slots carries the over-strand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OverPair {
    /// slots 0 and 2
    Even,
    /// slots 1 and 3
    Odd,
}

impl OverPair {
    pub fn is_over(self, slot: usize) -> bool {
        match self {
            OverPair::Even => slot.is_multiple_of(2),
            OverPair::Odd => !slot.is_multiple_of(2),
        }
    }

    fn switched(self) -> Self {
        match self {
            OverPair::Even => OverPair::Odd,
            OverPair::Odd => OverPair::Even,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    /// Edge ids at slots 0..4, counterclockwise.
    pub edges: [usize; 4],
    pub over: OverPair,
}

/// Where an edge end is attached.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Port {
    Slot { crossing: usize, slot: usize },
    Boundary(Corner),
}

/// How the two strands of a tangle connect its boundary points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConnectivityPattern {
    /// NW–SW and NE–SE
    LeftRight,
    /// NW–NE and SW–SE
    TopBottom,
    /// NW–SE and NE–SW
    Diagonal,
}

impl fmt::Display for ConnectivityPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConnectivityPattern::LeftRight => "LeftRight",
            ConnectivityPattern::TopBottom => "TopBottom",
            ConnectivityPattern::Diagonal => "Diagonal",
        })
    }
}

/// Maps each edge of an input piece to its edge in a glued result; `None`
/// when the edge became part of a crossingless circle.
pub type EdgeMap = Vec<Option<usize>>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tangle {
    crossings: Vec<Crossing>,
    edge_count: usize,
    /// Edge ids at NW, NE, SW, SE.
    boundary: [usize; 4],
    loops: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClosedDiagram {
    crossings: Vec<Crossing>,
    edge_count: usize,
    loops: usize,
}

/// Shared read access for tangles and closed diagrams.
pub trait Diagram {
    fn crossings(&self) -> &[Crossing];
    fn edge_count(&self) -> usize;
    fn boundary_edges(&self) -> &[usize];
    fn loops(&self) -> usize;

    fn crossing_count(&self) -> usize {
        self.crossings().len()
    }

    /// The two ends of every edge.
    fn ports(&self) -> Vec<[Port; 2]> {
        let mut ends: Vec<Vec<Port>> = vec![Vec::with_capacity(2); self.edge_count()];
        for (c, x) in self.crossings().iter().enumerate() {
            for (slot, &e) in x.edges.iter().enumerate() {
                ends[e].push(Port::Slot { crossing: c, slot });
            }
        }
        for (i, &e) in self.boundary_edges().iter().enumerate() {
            ends[e].push(Port::Boundary(Corner::ALL[i]));
        }
        ends.into_iter()
            .map(|v| {
                assert_eq!(v.len(), 2, "edge with {} ends", v.len());
                [v[0], v[1]]
            })
            .collect()
    }
}

fn validate(crossings: &[Crossing], edge_count: usize, boundary: &[usize]) -> Result<()> {
    let mut uses = vec![0usize; edge_count];
    for (c, x) in crossings.iter().enumerate() {
        for &e in &x.edges {
            if e >= edge_count {
                return Err(Error::Malformed(format!("crossing {c} uses unknown edge {e}")));
            }
            uses[e] += 1;
        }
    }
    for &e in boundary {
        if e >= edge_count {
            return Err(Error::Malformed(format!("boundary uses unknown edge {e}")));
        }
        uses[e] += 1;
    }
    if let Some(e) = uses.iter().position(|&u| u != 2) {
        return Err(Error::Malformed(format!("edge {e} has {} ends", uses[e])));
    }
    Ok(())
}

/// Result of identifying edge pairs in a diagram.
struct Glued {
    crossings: Vec<Crossing>,
    ends: Vec<usize>,
    edge_count: usize,
    new_loops: usize,
    map: EdgeMap,
}

/// Identifies the given edge pairs, renumbers edges compactly (in order of
/// the smallest old id in each class) and counts classes left with no ends,
/// which are crossingless circles.
fn glue(crossings: Vec<Crossing>, ends: &[usize], edge_count: usize, pairs: &[(usize, usize)]) -> Glued {
    let mut parent: Vec<usize> = (0..edge_count).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &(a, b) in pairs {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let roots: Vec<usize> = (0..edge_count).map(|e| find(&mut parent, e)).collect();
    let mut used = vec![false; edge_count];
    for x in &crossings {
        for &e in &x.edges {
            used[roots[e]] = true;
        }
    }
    for &e in ends {
        used[roots[e]] = true;
    }
    let mut new_id = vec![None; edge_count];
    let mut next = 0;
    let mut new_loops = 0;
    for e in 0..edge_count {
        if roots[e] == e {
            if used[e] {
                new_id[e] = Some(next);
                next += 1;
            } else {
                new_loops += 1;
            }
        }
    }
    let map: EdgeMap = (0..edge_count).map(|e| new_id[roots[e]]).collect();
    let crossings = crossings
        .into_iter()
        .map(|x| Crossing { edges: x.edges.map(|e| map[e].unwrap()), over: x.over })
        .collect();
    let ends = ends.iter().map(|&e| map[e].unwrap()).collect();
    Glued { crossings, ends, edge_count: next, new_loops, map }
}

impl Tangle {
    pub fn new(crossings: Vec<Crossing>, edge_count: usize, boundary: [usize; 4], loops: usize) -> Result<Self> {
        validate(&crossings, edge_count, &boundary)?;
        Ok(Tangle { crossings, edge_count, boundary, loops })
    }

    pub fn boundary(&self) -> [usize; 4] {
        self.boundary
    }

    pub fn boundary_edge(&self, c: Corner) -> usize {
        self.boundary[c as usize]
    }

    /// `[0]`: two horizontal arcs, NW–NE and SW–SE.
    pub fn zero() -> Self {
        Tangle { crossings: vec![], edge_count: 2, boundary: [0, 0, 1, 1], loops: 0 }
    }

    /// `[∞]`: two vertical arcs, NW–SW and NE–SE.
    pub fn infinity() -> Self {
        Tangle { crossings: vec![], edge_count: 2, boundary: [0, 1, 0, 1], loops: 0 }
    }

    /// `[1]`: one crossing, over-strand SW to NE.
    pub fn unit_crossing() -> Self {
        Tangle {
            crossings: vec![Crossing { edges: [0, 1, 2, 3], over: OverPair::Even }],
            edge_count: 4,
            boundary: [3, 2, 0, 1],
            loops: 0,
        }
    }

    /// `[n]`: `|n|` horizontal half-twists, fraction `n`.
    pub fn integer(n: i64) -> Self {
        let unit = if n < 0 { Self::unit_crossing().switch() } else { Self::unit_crossing() };
        (0..n.unsigned_abs()).fold(Self::zero(), |acc, _| acc.sum(&unit))
    }

    /// `|n|` vertical half-twists with fraction `1/n`; `n = 0` is `[0]`.
    pub fn twist(n: i64) -> Self {
        if n == 0 {
            Self::zero()
        } else {
            Self::integer(n).reciprocal()
        }
    }

    /// Rational tangle with fraction `p/q`, assembled from the
    /// floor-quotient continued fraction of `p/q`.
    pub fn rational(p: i64, q: i64) -> Result<Self> {
        if q == 0 || p.gcd(&q) != 1 {
            return Err(Error::InvalidFraction(p, q));
        }
        let (p, q) = if q < 0 { (-p, -q) } else { (p, q) };
        Ok(Self::from_continued_fraction(&continued_fraction(p, q)))
    }

    /// Tangle for `c1 + 1/(c2 + 1/(... + 1/cr))`.
    pub fn from_continued_fraction(cs: &[i64]) -> Self {
        match cs {
            [] => Self::infinity(),
            [c] => Self::integer(*c),
            [c, rest @ ..] => Self::integer(*c).sum(&Self::from_continued_fraction(rest).reciprocal()),
        }
    }

    /// Exchanges over and under at every crossing; negates the fraction.
    pub fn switch(&self) -> Self {
        let mut t = self.clone();
        for x in &mut t.crossings {
            x.over = x.over.switched();
        }
        t
    }

    /// Counterclockwise quarter turn; sends fraction `f` to `-1/f`.
    pub fn rotate_half_pi(&self) -> Self {
        let [nw, ne, sw, se] = self.boundary;
        let mut t = self.clone();
        t.boundary = [ne, se, nw, sw];
        t
    }

    /// Quarter turn plus crossing switch; sends fraction `f` to `1/f`.
    pub fn reciprocal(&self) -> Self {
        self.rotate_half_pi().switch()
    }

    /// Rotation by π in the diagram plane.
    pub fn rotate_pi(&self) -> Self {
        let [nw, ne, sw, se] = self.boundary;
        let mut t = self.clone();
        t.boundary = [se, sw, ne, nw];
        t
    }

    /// Mirror image across the vertical axis of the page, i.e. the reflection
    /// of space in the plane orthogonal to the diagram. Over/under data is
    /// kept; the handedness of every crossing flips because the cyclic slot
    /// order is reversed. Edge ids are unchanged, so edge `e` of the result
    /// is the mirror partner of edge `e` of `self`.
    pub fn reflect(&self) -> Self {
        let [nw, ne, sw, se] = self.boundary;
        let crossings = self
            .crossings
            .iter()
            .map(|x| {
                let [a, b, c, d] = x.edges;
                Crossing { edges: [a, d, c, b], over: x.over }
            })
            .collect();
        Tangle { crossings, edge_count: self.edge_count, boundary: [ne, nw, se, sw], loops: self.loops }
    }

    /// Tangle sum: `self` on the left, `other` on the right.
    pub fn sum(&self, other: &Tangle) -> Tangle {
        self.sum_mapped(other).0
    }

    /// Tangle sum together with the edge maps of both summands. Crossings of
    /// `self` keep their indices; those of `other` are offset by
    /// `self.crossing_count()`.
    pub fn sum_mapped(&self, other: &Tangle) -> (Tangle, EdgeMap, EdgeMap) {
        let off = self.edge_count;
        let mut crossings = self.crossings.clone();
        crossings.extend(other.crossings.iter().map(|x| Crossing { edges: x.edges.map(|e| e + off), over: x.over }));
        let [a_nw, a_ne, a_sw, a_se] = self.boundary;
        let [b_nw, b_ne, b_sw, b_se] = other.boundary.map(|e| e + off);
        let g = glue(crossings, &[a_nw, b_ne, a_sw, b_se], off + other.edge_count, &[(a_ne, b_nw), (a_se, b_sw)]);
        let t = Tangle {
            crossings: g.crossings,
            edge_count: g.edge_count,
            boundary: [g.ends[0], g.ends[1], g.ends[2], g.ends[3]],
            loops: self.loops + other.loops + g.new_loops,
        };
        let a_map = g.map[..off].to_vec();
        let b_map = g.map[off..].to_vec();
        (t, a_map, b_map)
    }

    /// Joins NW–NE and SW–SE.
    pub fn numerator(&self) -> ClosedDiagram {
        self.numerator_mapped().0
    }

    pub fn numerator_mapped(&self) -> (ClosedDiagram, EdgeMap) {
        let [nw, ne, sw, se] = self.boundary;
        self.close(&[(nw, ne), (sw, se)])
    }

    /// Joins NW–SW and NE–SE.
    pub fn denominator(&self) -> ClosedDiagram {
        self.denominator_mapped().0
    }

    pub fn denominator_mapped(&self) -> (ClosedDiagram, EdgeMap) {
        let [nw, ne, sw, se] = self.boundary;
        self.close(&[(nw, sw), (ne, se)])
    }

    fn close(&self, pairs: &[(usize, usize)]) -> (ClosedDiagram, EdgeMap) {
        let g = glue(self.crossings.clone(), &[], self.edge_count, pairs);
        let d = ClosedDiagram { crossings: g.crossings, edge_count: g.edge_count, loops: self.loops + g.new_loops };
        (d, g.map)
    }

    /// Follows the strand entering at `corner` and returns the corner where it exits.
    pub fn strand_exit(&self, corner: Corner) -> Corner {
        let ports = self.ports();
        let crossings = &self.crossings;
        let mut e = self.boundary[corner as usize];
        let mut from = Port::Boundary(corner);
        loop {
            let [p, q] = ports[e];
            let to = if p == from { q } else { p };
            match to {
                Port::Boundary(c) => return c,
                Port::Slot { crossing, slot } => {
                    let out = (slot + 2) % 4;
                    e = crossings[crossing].edges[out];
                    from = Port::Slot { crossing, slot: out };
                }
            }
        }
    }

    pub fn connectivity_pattern(&self) -> ConnectivityPattern {
        match self.strand_exit(Corner::NW) {
            Corner::SW => ConnectivityPattern::LeftRight,
            Corner::NE => ConnectivityPattern::TopBottom,
            Corner::SE => ConnectivityPattern::Diagonal,
            Corner::NW => unreachable!("strand cannot return to its start"),
        }
    }

    /// Serializes in the line format read by [`Tangle::from_str`].
    pub fn to_text(&self) -> String {
        let mut s = crossings_text(&self.crossings);
        let [nw, ne, sw, se] = self.boundary;
        s.push_str(&format!("b NW={nw} NE={ne} SW={sw} SE={se}\n"));
        if self.loops > 0 {
            s.push_str(&format!("loops {}\n", self.loops));
        }
        s
    }
}

impl Diagram for Tangle {
    fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }
    fn edge_count(&self) -> usize {
        self.edge_count
    }
    fn boundary_edges(&self) -> &[usize] {
        &self.boundary
    }
    fn loops(&self) -> usize {
        self.loops
    }
}

impl ClosedDiagram {
    pub fn new(crossings: Vec<Crossing>, edge_count: usize, loops: usize) -> Result<Self> {
        validate(&crossings, edge_count, &[])?;
        Ok(ClosedDiagram { crossings, edge_count, loops })
    }

    /// `n` disjoint crossingless circles.
    pub fn unlink(n: usize) -> Self {
        ClosedDiagram { crossings: vec![], edge_count: 0, loops: n }
    }

    /// Every crossing switched: the diagram of the mirror image.
    pub fn mirror(&self) -> Self {
        let mut d = self.clone();
        for x in &mut d.crossings {
            x.over = x.over.switched();
        }
        d
    }

    /// Strand cycles through the crossings, plus crossingless circles.
    pub fn component_count(&self) -> usize {
        let ports = self.ports();
        let mut seen = vec![false; self.edge_count];
        let mut count = self.loops;
        for start in 0..self.edge_count {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut e = start;
            let mut from = ports[start][0];
            loop {
                seen[e] = true;
                let [p, q] = ports[e];
                let to = if p == from { q } else { p };
                let Port::Slot { crossing, slot } = to else { unreachable!() };
                let out = (slot + 2) % 4;
                e = self.crossings[crossing].edges[out];
                from = Port::Slot { crossing, slot: out };
                if e == start {
                    break;
                }
            }
        }
        count
    }

    pub fn to_text(&self) -> String {
        let mut s = crossings_text(&self.crossings);
        if self.loops > 0 {
            s.push_str(&format!("loops {}\n", self.loops));
        }
        s
    }
}

impl Diagram for ClosedDiagram {
    fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }
    fn edge_count(&self) -> usize {
        self.edge_count
    }
    fn boundary_edges(&self) -> &[usize] {
        &[]
    }
    fn loops(&self) -> usize {
        self.loops
    }
}

/// Floor-quotient continued fraction of `p/q` (`q > 0`): every entry after
/// the first is positive and the last exceeds 1 unless it is the only one.
pub fn continued_fraction(mut p: i64, mut q: i64) -> Vec<i64> {
    let mut out = Vec::new();
    while q != 0 {
        let a = Integer::div_floor(&p, &q);
        out.push(a);
        let r = p - a * q;
        p = q;
        q = r;
    }
    out
}

/// Value of `c1 + 1/(c2 + ... + 1/cr)` as a reduced fraction `(num, den)`
/// with `den >= 0`. Returns `None` for a zero denominator part way through.
pub fn continued_fraction_value(cs: &[i64]) -> Option<(i64, i64)> {
    let (&last, rest) = cs.split_last()?;
    let (mut num, mut den) = (last, 1i64);
    for &c in rest.iter().rev() {
        if num == 0 {
            return None;
        }
        // c + den/num
        let n = c.checked_mul(num)?.checked_add(den)?;
        den = num;
        num = n;
    }
    if den < 0 {
        num = -num;
        den = -den;
    }
    let g = num.gcd(&den);
    Some((num / g.max(1), den / g.max(1)))
}

/// Expansion `[c1, ..., cr]` of `p/q` with every entry even and `r` odd,
/// under the convention of [`continued_fraction_value`]. Such an expansion
/// exists exactly when `p` is even and `q` is odd. The fraction of a rational
/// tangle `β/α` with `α` even is the reciprocal of the expansion of `α/β`.
pub fn even_continued_fraction(p: i64, q: i64) -> Result<Vec<i64>> {
    if q == 0 || p.gcd(&q) != 1 {
        return Err(Error::InvalidFraction(p, q));
    }
    let (mut p, mut q) = if q < 0 { (-p, -q) } else { (p, q) };
    if p % 2 != 0 || q % 2 == 0 {
        return Err(Error::NoEvenExpansion(p, q));
    }
    // Subtracting the nearest even integer keeps |remainder| < q (the parities
    // differ), and the reciprocal alternates between even/odd and odd/even
    // shapes. Only the even/odd shape can terminate, hence the odd length.
    let mut out = Vec::new();
    loop {
        let c = 2 * Integer::div_floor(&(p + q), &(2 * q));
        out.push(c);
        let r = p - c * q;
        if r == 0 {
            break;
        }
        (p, q) = if r < 0 { (-q, -r) } else { (q, r) };
    }
    Ok(out)
}

fn crossings_text(crossings: &[Crossing]) -> String {
    let mut s = String::new();
    for (i, x) in crossings.iter().enumerate() {
        let [a, b, c, d] = x.edges;
        let flag = match x.over {
            OverPair::Even => "02",
            OverPair::Odd => "13",
        };
        s.push_str(&format!("c {i} {a} {b} {c} {d} {flag}\n"));
    }
    s
}

/// Parsed line-format body shared by tangles and closed diagrams.
struct RawDiagram {
    crossings: Vec<Crossing>,
    boundary: Option<[usize; 4]>,
    loops: usize,
}

fn parse_raw(text: &str) -> Result<RawDiagram> {
    let mut crossings = Vec::new();
    let mut boundary = None;
    let mut loops = 0;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let bad = |msg: &str| Error::Syntax { line: lineno + 1, column: 1, message: msg.to_string() };
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[0] {
            "c" => {
                if toks.len() != 7 {
                    return Err(bad("crossing line needs: c <id> <e0> <e1> <e2> <e3> <02|13>"));
                }
                let id: usize = toks[1].parse().map_err(|_| bad("bad crossing id"))?;
                if id != crossings.len() {
                    return Err(bad("crossing ids must be consecutive from 0"));
                }
                let mut edges = [0usize; 4];
                for (k, t) in toks[2..6].iter().enumerate() {
                    edges[k] = t.parse().map_err(|_| bad("bad edge id"))?;
                }
                let over = match toks[6] {
                    "02" => OverPair::Even,
                    "13" => OverPair::Odd,
                    _ => return Err(bad("over-pair flag must be 02 or 13")),
                };
                crossings.push(Crossing { edges, over });
            }
            "b" => {
                let mut b = [usize::MAX; 4];
                for t in &toks[1..] {
                    let (k, v) = t.split_once('=').ok_or_else(|| bad("boundary entries look like NW=3"))?;
                    let idx = match k {
                        "NW" => 0,
                        "NE" => 1,
                        "SW" => 2,
                        "SE" => 3,
                        _ => return Err(bad("unknown boundary point")),
                    };
                    b[idx] = v.parse().map_err(|_| bad("bad edge id"))?;
                }
                if b.contains(&usize::MAX) {
                    return Err(bad("boundary line must name NW, NE, SW and SE"));
                }
                boundary = Some(b);
            }
            "loops" => {
                loops = toks.get(1).and_then(|t| t.parse().ok()).ok_or_else(|| bad("loops needs a count"))?;
            }
            _ => return Err(bad("expected a c, b or loops line")),
        }
    }
    Ok(RawDiagram { crossings, boundary, loops })
}

fn edge_count_of(crossings: &[Crossing], boundary: &[usize]) -> usize {
    crossings.iter().flat_map(|x| x.edges).chain(boundary.iter().copied()).max().map_or(0, |m| m + 1)
}

impl FromStr for Tangle {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let raw = parse_raw(s)?;
        let boundary = raw.boundary.ok_or_else(|| Error::Malformed("tangle without boundary line".into()))?;
        let n = edge_count_of(&raw.crossings, &boundary);
        Tangle::new(raw.crossings, n, boundary, raw.loops)
    }
}

impl FromStr for ClosedDiagram {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let raw = parse_raw(s)?;
        if raw.boundary.is_some() {
            return Err(Error::Malformed("closed diagram with a boundary line".into()));
        }
        let n = edge_count_of(&raw.crossings, &[]);
        ClosedDiagram::new(raw.crossings, n, raw.loops)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ConnectivityPattern::*;

    #[test]
    fn twist_patterns() {
        assert_eq!(Tangle::twist(0).crossing_count(), 0);
        assert_eq!(Tangle::twist(0).connectivity_pattern(), TopBottom);
        assert_eq!(Tangle::twist(1).connectivity_pattern(), Diagonal);
        assert_eq!(Tangle::twist(2).crossing_count(), 2);
        for n in -6i64..=6 {
            let expected = match n {
                0 => TopBottom,
                n if n % 2 == 0 => LeftRight,
                _ => Diagonal,
            };
            assert_eq!(Tangle::twist(n).connectivity_pattern(), expected, "n = {n}");
            assert_eq!(Tangle::twist(n).crossing_count(), n.unsigned_abs() as usize);
        }
    }

    #[test]
    fn integer_patterns() {
        assert_eq!(Tangle::integer(2).connectivity_pattern(), TopBottom);
        assert_eq!(Tangle::integer(3).connectivity_pattern(), Diagonal);
        assert_eq!(Tangle::infinity().connectivity_pattern(), LeftRight);
    }

    #[test]
    fn sums() {
        let z = Tangle::zero().sum(&Tangle::zero());
        assert_eq!(z.crossing_count(), 0);
        assert_eq!(z.connectivity_pattern(), TopBottom);
        let d = Tangle::twist(3);
        let t0 = d.sum(&d.reflect());
        assert_eq!(t0.crossing_count(), 6);
        assert_eq!(t0.connectivity_pattern(), TopBottom);
        // identity element keeps the tangle up to edge renumbering
        let t = Tangle::rational(-3, 2).unwrap();
        let s = t.sum(&Tangle::zero());
        assert_eq!(s.crossing_count(), t.crossing_count());
        assert_eq!(s.connectivity_pattern(), t.connectivity_pattern());
    }

    #[test]
    fn closures() {
        let n1 = Tangle::twist(1).numerator();
        assert_eq!(n1.crossing_count(), 1);
        assert_eq!(n1.component_count(), 1);
        assert_eq!(Tangle::zero().numerator().component_count(), 2);
        assert_eq!(Tangle::zero().numerator().loops(), 2);
        assert_eq!(Tangle::zero().denominator().component_count(), 1);
        assert_eq!(Tangle::twist(2).denominator().component_count(), 2);
        let d = Tangle::twist(3);
        let t0 = d.sum(&d.reflect());
        assert_eq!(t0.numerator().component_count(), 2);
        assert_eq!(t0.denominator().component_count(), 1);
    }

    #[test]
    fn involutions() {
        let t = Tangle::rational(7, 4).unwrap().sum(&Tangle::twist(3));
        assert_eq!(t.rotate_pi().rotate_pi(), t);
        assert_eq!(t.reflect().reflect(), t);
        assert_eq!(t.switch().switch(), t);
        assert_eq!(t.rotate_half_pi().rotate_half_pi(), t.rotate_pi());
        assert_eq!(Tangle::twist(0).rotate_pi().connectivity_pattern(), TopBottom);
    }

    #[test]
    fn reflect_twist_is_opposite_twist() {
        for n in 1..5 {
            assert_eq!(Tangle::twist(n).reflect().connectivity_pattern(), Tangle::twist(-n).connectivity_pattern());
            // mirror of vertical twists equals the switched twists, as diagrams
            let r = Tangle::twist(n).reflect();
            assert_eq!(r.crossing_count(), n as usize);
        }
    }

    #[test]
    fn rational_patterns_follow_parity() {
        for (p, q) in [(1, 2), (-3, 2), (-7, 4), (-5, 4), (3, 8), (5, 6)] {
            assert_eq!(Tangle::rational(p, q).unwrap().connectivity_pattern(), LeftRight, "{p}/{q}");
        }
        assert_eq!(Tangle::rational(2, 5).unwrap().connectivity_pattern(), TopBottom);
        assert_eq!(Tangle::rational(3, 5).unwrap().connectivity_pattern(), Diagonal);
        assert!(Tangle::rational(1, 0).is_err());
        assert!(Tangle::rational(2, 4).is_err());
    }

    #[test]
    fn continued_fractions() {
        assert_eq!(continued_fraction(-3, 2), vec![-2, 2]);
        assert_eq!(continued_fraction(2, 5), vec![0, 2, 2]);
        assert_eq!(continued_fraction_value(&[2]), Some((2, 1)));
        assert_eq!(continued_fraction_value(&[-2, 2]), Some((-3, 2)));
        assert_eq!(continued_fraction_value(&[0, 2, 2]), Some((2, 5)));
        assert_eq!(continued_fraction_value(&[0]), Some((0, 1)));
        assert_eq!(continued_fraction_value(&[1, 0]), None);
    }

    #[test]
    fn even_expansions() {
        // tangle fraction 1/2 is the reciprocal of [2]
        assert_eq!(even_continued_fraction(2, 1).unwrap(), vec![2]);
        let cs = even_continued_fraction(-4, 7).unwrap();
        assert!(cs.iter().all(|c| c % 2 == 0) && cs.len() % 2 == 1);
        assert_eq!(continued_fraction_value(&cs), Some((-4, 7)));
        assert!(matches!(even_continued_fraction(1, 2), Err(Error::NoEvenExpansion(..))));
        assert!(matches!(even_continued_fraction(3, 5), Err(Error::NoEvenExpansion(..))));
    }

    #[test]
    fn text_round_trip() {
        let t = Tangle::rational(-7, 4).unwrap();
        let back: Tangle = t.to_text().parse().unwrap();
        assert_eq!(back, t);
        let d = t.numerator();
        let back: ClosedDiagram = d.to_text().parse().unwrap();
        assert_eq!(back, d);
        let unknot: ClosedDiagram = "loops 1\n".parse().unwrap();
        assert_eq!(unknot.component_count(), 1);
    }

    #[test]
    fn malformed_text_rejected() {
        assert!("c 0 0 1 2 3 02\n".parse::<Tangle>().is_err());
        assert!("c 0 0 0 1 1 02\nb NW=2 NE=3 SW=2 SE=3\n".parse::<Tangle>().is_ok());
        assert!("c 0 0 1 2 3 05\nb NW=0 NE=1 SW=2 SE=3\n".parse::<Tangle>().is_err());
        assert!("c 1 0 1 2 3 02\nb NW=0 NE=1 SW=2 SE=3\n".parse::<Tangle>().is_err());
        assert!("c 0 0 1 1 1 02\n".parse::<ClosedDiagram>().is_err());
    }
}
