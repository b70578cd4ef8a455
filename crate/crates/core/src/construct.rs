//! Extended symmetric unions `K = N(rot(T) + (D + D*))` with edge provenance.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::catalog;
use crate::error::{Error, Result};
use crate::freeword::{Presentation, Word};
use crate::tangle::{continued_fraction_value, ClosedDiagram, ConnectivityPattern, Corner, Diagram, EdgeMap, Tangle};
use crate::wirtinger::{LongitudeReading, OrientedDiagram};

/// Where an edge of the assembled knot came from. Indices are edge ids of
/// the input tangles; a glued edge usually has several origins.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Origin {
    D(usize),
    DStar(usize),
    T(usize),
}

/// An assembled knot together with everything needed to build and check
/// the map onto the group of the partial knot `K̂ = D(D)`.
#[derive(Clone, Debug)]
pub struct LabeledDiagram {
    pub name: String,
    pub d: Tangle,
    pub t: Tangle,
    /// `K`, oriented so that arc 0 contains the edge `a0`.
    pub knot: OrientedDiagram,
    /// Origins of every edge of `K`.
    pub origins: Vec<Vec<Origin>>,
    /// Edge of `K` joining the NE end of `D` to `D*` (`None` only when `K`
    /// has no crossings).
    pub a0: Option<usize>,
    /// Edge of `K` joining the SE end of `D` to `D*`.
    pub a1: Option<usize>,
    /// `K̂ = D(D)`, oriented to agree with `K` along `D`.
    pub khat: OrientedDiagram,
    /// Edge of `K̂` for each edge of `D`; `None` if it closed into a circle.
    pub khat_edge: EdgeMap,
    /// Arc of `K̂` through the NE end of `D`.
    pub x_a: usize,
    /// Arc of `K̂` through the NW end of `D`, next to `T`.
    pub x_b: usize,
}

fn compose(first: &EdgeMap, second: &EdgeMap) -> EdgeMap {
    first.iter().map(|e| e.and_then(|e| second[e])).collect()
}

/// Assembles `N(rot_pi(T) + (D + reflect(D)))`.
pub fn extended_symmetric_union(d: &Tangle, t: &Tangle) -> Result<LabeledDiagram> {
    let pattern = t.connectivity_pattern();
    if pattern != ConnectivityPattern::LeftRight {
        return Err(Error::BadTanglePattern { expected: ConnectivityPattern::LeftRight.to_string(), found: pattern.to_string() });
    }
    let dstar = d.reflect();
    let (t0, d_in_t0, ds_in_t0) = d.sum_mapped(&dstar);
    let (s, t_in_s, t0_in_s) = t.rotate_pi().sum_mapped(&t0);
    let (k, s_in_k) = s.numerator_mapped();

    let d_in_k = compose(&compose(&d_in_t0, &t0_in_s), &s_in_k);
    let ds_in_k = compose(&compose(&ds_in_t0, &t0_in_s), &s_in_k);
    let t_in_k = compose(&t_in_s, &s_in_k);

    let mut origins = vec![Vec::new(); k.edge_count()];
    for (maps, tag) in [(&d_in_k, Origin::D as fn(usize) -> Origin), (&ds_in_k, Origin::DStar), (&t_in_k, Origin::T)] {
        for (e, img) in maps.iter().enumerate() {
            if let Some(ke) = img {
                origins[*ke].push(tag(e));
            }
        }
    }

    let a0 = d_in_k[d.boundary_edge(Corner::NE)];
    let a1 = d_in_k[d.boundary_edge(Corner::SE)];
    let knot = OrientedDiagram::orient_from(&k, a0.map(|e| (e, 1)));
    if knot.component_count() != 1 {
        return Err(Error::NotAKnot(knot.component_count()));
    }

    let (khat_diagram, khat_edge) = d.denominator_mapped();
    let khat = orient_partial_knot(&knot, t.crossing_count(), &khat_diagram, &khat_edge, d)?;
    if khat.component_count() != 1 {
        return Err(Error::NotAKnot(khat.component_count()));
    }
    let arc_of = |e: usize| -> Result<usize> {
        match khat_edge[e] {
            Some(ke) => Ok(khat.edge_arc(ke)),
            // a crossingless K̂ is one circle with one arc
            None if khat.diagram().crossing_count() == 0 => Ok(0),
            None => Err(Error::MissingProvenance(e)),
        }
    };
    let x_a = arc_of(d.boundary_edge(Corner::NE))?;
    let x_b = arc_of(d.boundary_edge(Corner::NW))?;

    Ok(LabeledDiagram {
        name: String::new(),
        d: d.clone(),
        t: t.clone(),
        knot,
        origins,
        a0,
        a1,
        khat,
        khat_edge,
        x_a,
        x_b,
    })
}

/// Orients `K̂` so that its strands run the same way as in `K` at every
/// crossing of `D`. Crossing `c` of `D` is crossing `t_crossings + c` of `K`
/// and crossing `c` of `K̂`.
fn orient_partial_knot(
    knot: &OrientedDiagram,
    t_crossings: usize,
    khat: &ClosedDiagram,
    khat_edge: &EdgeMap,
    d: &Tangle,
) -> Result<OrientedDiagram> {
    let Some(start) = khat_edge[d.boundary_edge(Corner::NE)] else {
        return Ok(OrientedDiagram::orient(khat));
    };
    for head in [1, 0] {
        let od = OrientedDiagram::orient_from(khat, Some((start, head)));
        let agrees = (0..d.crossing_count()).all(|c| {
            let (a, b) = (&knot.crossing_data()[t_crossings + c], &od.crossing_data()[c]);
            a.under_in_slot == b.under_in_slot && a.over_in_slot == b.over_in_slot
        });
        if agrees {
            return Ok(od);
        }
    }
    Err(Error::OrientationMismatch)
}

impl LabeledDiagram {
    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn diagram(&self) -> &ClosedDiagram {
        self.knot.diagram()
    }

    pub fn crossing_count(&self) -> usize {
        self.diagram().crossing_count()
    }

    pub fn presentation(&self) -> Presentation {
        self.knot.wirtinger_presentation()
    }

    pub fn khat_presentation(&self) -> Presentation {
        self.khat.wirtinger_presentation()
    }

    /// The knot `N(T)`.
    pub fn partial_numerator(&self) -> ClosedDiagram {
        self.t.numerator()
    }

    /// Preferred longitude of `K` based at `a0`, read so that its image
    /// under the epimorphism cancels freely.
    pub fn longitude(&self) -> Word {
        self.longitude_with(LongitudeReading::Paired { switch_edge: self.a1 })
    }

    pub fn longitude_with(&self, reading: LongitudeReading) -> Word {
        match self.a0 {
            Some(a0) => self.knot.longitude_word(a0, reading).expect("assembled diagram is a knot"),
            None => Word::empty(),
        }
    }

    /// Origins of every edge on each arc of `K`.
    pub fn arc_provenance(&self) -> Vec<Vec<Origin>> {
        let mut out = vec![Vec::new(); self.knot.arc_count()];
        for (e, o) in self.origins.iter().enumerate() {
            out[self.knot.edge_arc(e)].extend_from_slice(o);
        }
        out
    }
}

/// `extended_symmetric_union(D, twist(n))` for even nonzero `n`.
pub fn symmetric_union_single_twist(d: &Tangle, n: i64) -> Result<LabeledDiagram> {
    if n == 0 || n % 2 != 0 {
        return Err(Error::Semantic(format!("twist count must be even and nonzero, got {n}")));
    }
    extended_symmetric_union(d, &Tangle::twist(n))
}

/// Partial knots available as `K̂` for the Montesinos rows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PartialKnot {
    Trefoil,
    FigureEight,
}

impl PartialKnot {
    pub fn name(self) -> &'static str {
        match self {
            PartialKnot::Trefoil => "3_1",
            PartialKnot::FigureEight => "4_1",
        }
    }

    pub fn tangle_name(self) -> &'static str {
        match self {
            PartialKnot::Trefoil => "3_1D",
            PartialKnot::FigureEight => "4_1D",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "3_1" | "3_1D" => Some(PartialKnot::Trefoil),
            "4_1" | "4_1D" => Some(PartialKnot::FigureEight),
            _ => None,
        }
    }

    pub fn tangle(self) -> Result<Tangle> {
        catalog::bundled()?.tangle(self.tangle_name())
    }
}

/// Montesinos assembly with `T = T(e + β'/α)` and `D` the stored tangle for `K̂`.
pub fn montesinos_extsym(khat: PartialKnot, beta_prime: i64, alpha: i64, e: i64) -> Result<LabeledDiagram> {
    if alpha <= 0 || beta_prime <= -alpha || beta_prime >= alpha || num_integer::gcd(beta_prime, alpha) != 1 {
        return Err(Error::InvalidFraction(beta_prime, alpha));
    }
    let t = Tangle::rational(e * alpha + beta_prime, alpha)?;
    extended_symmetric_union(&khat.tangle()?, &t)
}

/// One row of the Montesinos table: the partial knot, `(β', α, e)` and the
/// catalog name of `N(T)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub label: &'static str,
    pub khat: PartialKnot,
    pub beta_prime: i64,
    pub alpha: i64,
    pub e: i64,
    pub numerator_knot: &'static str,
}

impl TableRow {
    pub fn build(&self) -> Result<LabeledDiagram> {
        Ok(montesinos_extsym(self.khat, self.beta_prime, self.alpha, self.e)?.with_name(self.label))
    }

    pub fn fraction(&self) -> (i64, i64) {
        (self.e * self.alpha + self.beta_prime, self.alpha)
    }
}

const fn row(label: &'static str, khat: PartialKnot, b: i64, a: i64, e: i64, nt: &'static str) -> TableRow {
    TableRow { label, khat, beta_prime: b, alpha: a, e, numerator_knot: nt }
}

pub const TABLE1: [TableRow; 10] = [
    row("8_10", PartialKnot::Trefoil, 1, 2, -2, "3_1"),
    row("8_20", PartialKnot::Trefoil, 1, 2, 0, "unknot"),
    row("9_24", PartialKnot::Trefoil, -1, 2, -2, "4_1"),
    row("10_62", PartialKnot::Trefoil, -1, 4, -1, "5_1"),
    row("10_65", PartialKnot::Trefoil, 1, 4, -2, "5_2"),
    row("10_77", PartialKnot::Trefoil, -1, 2, -3, "5_2"),
    row("10_140", PartialKnot::Trefoil, 1, 4, 0, "unknot"),
    row("10_143", PartialKnot::Trefoil, -3, 4, 0, "3_1"),
    row("10_59", PartialKnot::FigureEight, 1, 2, -2, "3_1"),
    row("10_137", PartialKnot::FigureEight, 1, 2, 0, "unknot"),
];

/// Twisted union of the stored unknot diagram with two vertical twists;
/// its Alexander polynomial is trivial.
pub fn kinoshita_terasaka() -> Result<LabeledDiagram> {
    let d = catalog::bundled()?.tangle("KT")?;
    Ok(extended_symmetric_union(&d, &Tangle::twist(2))?.with_name("KT"))
}

/// Trefoil partial knot with `T` the quarter-turned tangle `3_1 + 3_1*`.
pub fn build_10_99() -> Result<LabeledDiagram> {
    let cat = catalog::bundled()?;
    let x = cat.tangle("3_1#3_1*")?;
    let d = cat.tangle("3_1D")?;
    Ok(extended_symmetric_union(&d, &x.rotate_half_pi())?.with_name("10_99"))
}

/// One member of a non-fibered family: the even continued fraction and the
/// fraction of `T` it encodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyMember {
    pub entries: Vec<i64>,
    pub fraction: (i64, i64),
    pub diagram: LabeledDiagram,
}

/// Generates `count` knots over the fibered partial knot `khat`, each with
/// `T = T(1/[c1, ..., cr])` for a random even expansion of odd length in
/// which some `|ci| > 2`, `i >= 2`.
pub fn corollary_family(khat: &str, count: usize, seed: u64) -> Result<Vec<FamilyMember>> {
    let cat = catalog::bundled()?;
    let pk = PartialKnot::from_name(khat).ok_or_else(|| Error::NotFound(khat.to_string()))?;
    if cat.lookup(pk.name())?.fibered != Some(true) {
        return Err(Error::Semantic(format!("{khat} is not a fibered catalog knot")));
    }
    let d = pk.tangle()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let entries = random_even_expansion(&mut rng);
        let Some((num, den)) = continued_fraction_value(&entries) else { continue };
        if num == 0 || !seen.insert((num, den)) {
            continue;
        }
        // value num/den has num even; T carries the reciprocal den/num
        let fraction = if num < 0 { (-den, -num) } else { (den, num) };
        let t = Tangle::rational(fraction.0, fraction.1)?;
        let diagram = extended_symmetric_union(&d, &t)?.with_name(format!("{khat}:{entries:?}"));
        out.push(FamilyMember { entries, fraction, diagram });
    }
    Ok(out)
}

fn random_even_expansion(rng: &mut impl Rng) -> Vec<i64> {
    loop {
        let r = if rng.gen_bool(0.7) { 3 } else { 5 };
        let mut cs: Vec<i64> = (0..r).map(|_| 2 * rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 }).collect();
        cs[0] = 2 * rng.gen_range(-1..=1);
        if cs[1..].iter().any(|c| c.abs() > 2) {
            return cs;
        }
    }
}

impl PartialEq for LabeledDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.d == other.d && self.t == other.t
    }
}

impl Eq for LabeledDiagram {}
