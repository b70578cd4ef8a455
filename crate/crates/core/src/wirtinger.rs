//! Orientation, arcs and Wirtinger presentations of closed diagrams.

use crate::error::{Error, Result};
use crate::freeword::{Letter, Presentation, Word};
use crate::tangle::{ClosedDiagram, Diagram, Port};

/// Per-crossing data after orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CrossingData {
    pub over_arc: usize,
    /// Under-arc entering the crossing.
    pub in_arc: usize,
    /// Under-arc leaving the crossing.
    pub out_arc: usize,
    /// +1 when the under-strand passes right to left beneath the over-strand.
    pub sign: i8,
    pub under_in_slot: usize,
    pub over_in_slot: usize,
}

/// One pass of a traversal under or over a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Passage {
    crossing: usize,
    in_slot: usize,
}

#[derive(Clone, Debug)]
struct Component {
    /// Edges in traversal order, starting at the component's start edge.
    edges: Vec<usize>,
    /// `passages[i]` is the crossing passage at the head of `edges[i]`.
    passages: Vec<Passage>,
}

/// A closed diagram with every component oriented and its arcs enumerated.
#[derive(Clone, Debug)]
pub struct OrientedDiagram {
    diagram: ClosedDiagram,
    /// For each edge, the index into `ports()[e]` of its head.
    head: Vec<usize>,
    edge_arc: Vec<usize>,
    arc_count: usize,
    crossing_data: Vec<CrossingData>,
    components: Vec<Component>,
}

impl OrientedDiagram {
    /// Orients each component in traversal order, starting from the lowest
    /// unvisited edge.
    pub fn orient(d: &ClosedDiagram) -> Self {
        Self::orient_from(d, None)
    }

    /// As [`orient`](Self::orient), but the first component starts at
    /// `start.0` and runs towards `ports()[start.0][start.1]`. Arc 0 then
    /// contains the start edge.
    pub fn orient_from(d: &ClosedDiagram, start: Option<(usize, usize)>) -> Self {
        let ports = d.ports();
        let crossings = d.crossings();
        let m = d.edge_count();
        let mut head = vec![usize::MAX; m];
        let mut edge_arc = vec![usize::MAX; m];
        let mut components = Vec::new();
        let mut arc_count = 0;

        let mut starts: Vec<(usize, usize)> = start.into_iter().collect();
        starts.extend((0..m).map(|e| (e, 1)));
        for (e0, h0) in starts {
            if head[e0] != usize::MAX {
                continue;
            }
            let mut edges = Vec::new();
            let mut passages = Vec::new();
            let mut local = Vec::new();
            let mut label = 0usize;
            let (mut e, mut h) = (e0, h0);
            loop {
                head[e] = h;
                edges.push(e);
                local.push(label);
                let Port::Slot { crossing, slot } = ports[e][h] else {
                    unreachable!("closed diagrams have no boundary ports")
                };
                passages.push(Passage { crossing, in_slot: slot });
                if !crossings[crossing].over.is_over(slot) {
                    label += 1;
                }
                let out = (slot + 2) % 4;
                let next = crossings[crossing].edges[out];
                let tail = Port::Slot { crossing, slot: out };
                // the head of `next` is whichever end is not `tail`
                let nh = if ports[next][0] == tail { 1 } else { 0 };
                if next == e0 {
                    break;
                }
                e = next;
                h = nh;
            }
            // The segment after the last under-passage wraps onto arc 0.
            let unders = label;
            for (&e, &l) in edges.iter().zip(&local) {
                edge_arc[e] = arc_count + if unders == 0 { 0 } else { l % unders };
            }
            arc_count += unders.max(1);
            components.push(Component { edges, passages });
        }
        arc_count += d.loops();

        let crossing_data = crossings
            .iter()
            .enumerate()
            .map(|(c, x)| {
                // the entering slot of each strand is the one whose edge points inward
                let enters = |slot: usize| {
                    let e = x.edges[slot];
                    ports[e][head[e]] == Port::Slot { crossing: c, slot }
                };
                let (under_pair, over_pair) = if x.over.is_over(0) { ([1, 3], [0, 2]) } else { ([0, 2], [1, 3]) };
                let under_in = if enters(under_pair[0]) { under_pair[0] } else { under_pair[1] };
                let over_in = if enters(over_pair[0]) { over_pair[0] } else { over_pair[1] };
                let sign = if under_in == (over_in + 1) % 4 { 1 } else { -1 };
                CrossingData {
                    over_arc: edge_arc[x.edges[over_in]],
                    in_arc: edge_arc[x.edges[under_in]],
                    out_arc: edge_arc[x.edges[(under_in + 2) % 4]],
                    sign,
                    under_in_slot: under_in,
                    over_in_slot: over_in,
                }
            })
            .collect();

        OrientedDiagram { diagram: d.clone(), head, edge_arc, arc_count, crossing_data, components }
    }

    pub fn diagram(&self) -> &ClosedDiagram {
        &self.diagram
    }

    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    pub fn edge_arc(&self, e: usize) -> usize {
        self.edge_arc[e]
    }

    pub fn edge_arcs(&self) -> &[usize] {
        &self.edge_arc
    }

    pub fn crossing_data(&self) -> &[CrossingData] {
        &self.crossing_data
    }

    pub fn component_count(&self) -> usize {
        self.components.len() + self.diagram.loops()
    }

    /// Head port of edge `e`, as an index into `ports()[e]`.
    pub fn head(&self, e: usize) -> usize {
        self.head[e]
    }

    pub fn writhe(&self) -> i64 {
        self.crossing_data.iter().map(|c| c.sign as i64).sum()
    }

    /// One generator per arc, one relator per crossing:
    /// `x_i x_j X_k X_j` at positive and `x_j x_i X_j X_k` at negative
    /// crossings (`i` incoming under-arc, `j` over-arc, `k` outgoing under-arc).
    /// The meridian is arc 0.
    pub fn wirtinger_presentation(&self) -> Presentation {
        let relators = self.crossing_data.iter().map(wirtinger_relator).collect();
        let gens = self.arc_count.max(1);
        Presentation::new(gens, relators, 0).expect("arcs index generators")
    }

    /// Word of the preferred longitude read from `base_edge` along the
    /// orientation. The result always has total exponent zero.
    pub fn longitude_word(&self, base_edge: usize, reading: LongitudeReading) -> Result<Word> {
        let word = self.raw_longitude(base_edge, reading)?;
        let s = word.total_exponent();
        if s == 0 {
            return Ok(word);
        }
        Ok(word.concat(&Word::power(self.edge_arc[base_edge], -s)))
    }

    /// Total exponent of the longitude before the meridian correction.
    pub fn raw_longitude_exponent(&self, base_edge: usize, reading: LongitudeReading) -> Result<i64> {
        Ok(self.raw_longitude(base_edge, reading)?.total_exponent())
    }

    fn raw_longitude(&self, base_edge: usize, reading: LongitudeReading) -> Result<Word> {
        if self.component_count() != 1 {
            return Err(Error::NotAKnot(self.component_count()));
        }
        let Some(comp) = self.components.first() else {
            return Ok(Word::empty()); // crossingless circle
        };
        let start = comp
            .edges
            .iter()
            .position(|&e| e == base_edge)
            .ok_or_else(|| Error::Malformed(format!("edge {base_edge} not in the diagram")))?;
        let n = comp.edges.len();
        let mut word = Word::empty();
        let mut after_switch = false;
        for step in 0..n {
            let idx = (start + step) % n;
            if let LongitudeReading::Paired { switch_edge: Some(s) } = reading {
                if comp.edges[idx] == s && step > 0 {
                    after_switch = true;
                }
            }
            let p = comp.passages[idx];
            let x = &self.diagram.crossings()[p.crossing];
            if x.over.is_over(p.in_slot) {
                continue;
            }
            let cd = &self.crossing_data[p.crossing];
            let eps = cd.sign as i32;
            match reading {
                LongitudeReading::Writhe => word.push(Letter::new(cd.over_arc, eps)),
                LongitudeReading::Paired { .. } if !after_switch => {
                    word.push(Letter::new(cd.in_arc, -eps));
                    word.push(Letter::new(cd.over_arc, eps));
                }
                LongitudeReading::Paired { .. } => {
                    word.push(Letter::new(cd.over_arc, eps));
                    word.push(Letter::new(cd.out_arc, -eps));
                }
            }
        }
        Ok(word)
    }

    /// Edges of the (single) knot component in traversal order from its start.
    pub fn traversal(&self) -> &[usize] {
        self.components.first().map(|c| c.edges.as_slice()).unwrap_or(&[])
    }
}

pub fn wirtinger_relator(cd: &CrossingData) -> Word {
    let (i, j, k) = (cd.in_arc, cd.over_arc, cd.out_arc);
    if cd.sign > 0 {
        Word(vec![Letter::pos(i), Letter::pos(j), Letter::neg(k), Letter::neg(j)])
    } else {
        Word(vec![Letter::pos(j), Letter::pos(i), Letter::neg(j), Letter::neg(k)])
    }
}

/// How the longitude is read off the diagram. Both readings give the same
/// group element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LongitudeReading {
    /// Over-arc generator `x_j^ε` at every under-passage, then the base
    /// meridian raised to minus the writhe.
    Writhe,
    /// Two letters per under-passage with exponents `∓ε, ±ε`: incoming
    /// under-arc then over-arc until `switch_edge` is reached, over-arc then
    /// outgoing under-arc afterwards. Each pair is balanced, so no meridian
    /// correction is needed.
    Paired { switch_edge: Option<usize> },
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tangle::Tangle;

    fn trefoil() -> ClosedDiagram {
        Tangle::integer(3).numerator()
    }

    #[test]
    fn unknot_circle() {
        let od = OrientedDiagram::orient(&ClosedDiagram::unlink(1));
        assert_eq!(od.arc_count(), 1);
        assert!(od.crossing_data().is_empty());
        let p = od.wirtinger_presentation();
        assert_eq!(p.generator_count, 1);
        assert!(p.relators.is_empty());
        assert_eq!(od.longitude_word(0, LongitudeReading::Writhe).unwrap_or_default(), Word::empty());
    }

    #[test]
    fn trefoil_arcs_and_signs() {
        let od = OrientedDiagram::orient(&trefoil());
        assert_eq!(od.arc_count(), 3);
        assert_eq!(od.crossing_data().len(), 3);
        let s0 = od.crossing_data()[0].sign;
        assert!(od.crossing_data().iter().all(|c| c.sign == s0));
        let p = od.wirtinger_presentation();
        assert_eq!(p.relators.len(), 3);
        assert_eq!(p.abelian_rank(), 1);
        for r in &p.relators {
            assert_eq!(r.len(), 4);
            assert_eq!(r.total_exponent(), 0);
        }
    }

    #[test]
    fn one_crossing_unknot() {
        let od = OrientedDiagram::orient(&Tangle::twist(1).numerator());
        assert_eq!(od.arc_count(), 1);
        let p = od.wirtinger_presentation();
        assert_eq!(p.generator_count, 1);
        assert_eq!(p.abelian_rank(), 1);
    }

    #[test]
    fn hopf_link() {
        let d = Tangle::integer(2).numerator();
        assert_eq!(d.component_count(), 2);
        let od = OrientedDiagram::orient(&d);
        assert_eq!(od.arc_count(), 2);
        assert_eq!(od.component_count(), 2);
        assert!(matches!(od.longitude_word(0, LongitudeReading::Writhe), Err(Error::NotAKnot(2))));
    }

    #[test]
    fn trefoil_longitudes() {
        let od = OrientedDiagram::orient(&trefoil());
        for e in 0..od.diagram().edge_count() {
            let w = od.longitude_word(e, LongitudeReading::Writhe).unwrap();
            assert_eq!(w.len(), 6);
            assert_eq!(w.total_exponent(), 0);
            let p = od.longitude_word(e, LongitudeReading::Paired { switch_edge: None }).unwrap();
            assert_eq!(p.len(), 6);
            assert_eq!(od.raw_longitude_exponent(e, LongitudeReading::Paired { switch_edge: None }).unwrap(), 0);
        }
    }
}
