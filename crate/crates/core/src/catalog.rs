//! Bundled knot and tangle data, each entry checked against its expected
//! Alexander polynomial when loaded.

use std::fmt::Write as _;
use std::path::Path;
use std::sync::OnceLock;

use crate::alexander::{alexander_polynomial_knot, first_elementary_ideal_vanishes};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::par;
use crate::tangle::{even_continued_fraction, ClosedDiagram, Tangle};
use crate::wirtinger::OrientedDiagram;

const BUNDLED: &str = include_str!("../data/catalog.txt");

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EntryKind {
    KnotDiagram,
    PartialTangle,
}

/// Whether an expected polynomial is quoted from the literature or was
/// computed here (and cross-checked by the test oracle).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeltaProvenance {
    Paper,
    Derived,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EntryData {
    Knot(ClosedDiagram),
    Tangle(Tangle),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub data: EntryData,
    /// Δ of the knot, or of the denominator closure for a tangle.
    pub expected_delta: LaurentPoly,
    pub provenance: DeltaProvenance,
    pub fibered: Option<bool>,
    /// Two-bridge fraction `p/q` of a knot entry.
    pub fraction: Option<(i64, i64)>,
    /// For tangles: the numerator closure must have vanishing first
    /// elementary ideal.
    pub numerator_vanishes: bool,
}

impl CatalogEntry {
    pub fn kind(&self) -> EntryKind {
        match self.data {
            EntryData::Knot(_) => EntryKind::KnotDiagram,
            EntryData::Tangle(_) => EntryKind::PartialTangle,
        }
    }

    /// The closed knot: the diagram itself, or the denominator closure.
    pub fn knot(&self) -> ClosedDiagram {
        match &self.data {
            EntryData::Knot(k) => k.clone(),
            EntryData::Tangle(t) => t.denominator(),
        }
    }

    pub fn self_check(&self) -> Result<()> {
        let fail = |reason: String| Error::SelfCheckFailed { name: self.name.clone(), reason };
        match self.expected_delta.canonicalize_knot() {
            Ok(c) if c == self.expected_delta => {}
            _ => return Err(fail(format!("expected polynomial {} is not canonical", self.expected_delta))),
        }
        let got = alexander_polynomial_knot(&self.knot()).map_err(|e| fail(e.to_string()))?;
        if got != self.expected_delta {
            return Err(fail(format!("computed {got}, expected {}", self.expected_delta)));
        }
        if let Some((p, q)) = self.fraction {
            let rational = Tangle::rational(p, q).map_err(|e| fail(e.to_string()))?;
            let two_bridge = alexander_polynomial_knot(&rational.numerator()).map_err(|e| fail(e.to_string()))?;
            if two_bridge != got {
                return Err(fail(format!("two-bridge knot {p}/{q} has {two_bridge}")));
            }
            if let Some(f) = self.fibered {
                if two_bridge_fibered(p, q)? != f {
                    return Err(fail(format!("fiberedness {f} contradicts the expansion of {p}/{q}")));
                }
                if got.is_monic()? != f {
                    return Err(fail(format!("fiberedness {f} contradicts the leading coefficient")));
                }
            }
        }
        if self.numerator_vanishes {
            let EntryData::Tangle(t) = &self.data else {
                return Err(fail("numerator check on a closed diagram".into()));
            };
            let p = OrientedDiagram::orient(&t.numerator()).wirtinger_presentation();
            if !first_elementary_ideal_vanishes(&p) {
                return Err(fail("first elementary ideal of the numerator does not vanish".into()));
            }
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("entry {}\n", self.name);
        let kind = match self.kind() {
            EntryKind::KnotDiagram => "knot-diagram",
            EntryKind::PartialTangle => "partial-tangle",
        };
        writeln!(s, "kind {kind}").unwrap();
        let terms: Vec<String> = self.expected_delta.terms().map(|(e, c)| format!("({e},{c})")).collect();
        writeln!(s, "delta {}", terms.join(" ")).unwrap();
        let prov = match self.provenance {
            DeltaProvenance::Paper => "paper",
            DeltaProvenance::Derived => "derived",
        };
        writeln!(s, "provenance {prov}").unwrap();
        if let Some(f) = self.fibered {
            writeln!(s, "fibered {f}").unwrap();
        }
        if let Some((p, q)) = self.fraction {
            writeln!(s, "fraction {p}/{q}").unwrap();
        }
        if self.numerator_vanishes {
            s.push_str("numerator_vanishes true\n");
        }
        match &self.data {
            EntryData::Knot(k) => s.push_str(&k.to_text()),
            EntryData::Tangle(t) => s.push_str(&t.to_text()),
        }
        s.push_str("end\n");
        s
    }
}

/// A 2-bridge knot `p/q` (p odd) is fibered exactly when the even expansion
/// of `q'/p`, with `q' ≡ q` chosen even, has all entries after the first
/// equal to ±2.
pub fn two_bridge_fibered(p: i64, q: i64) -> Result<bool> {
    let (p, q) = (p.abs(), q.rem_euclid(p.abs().max(1)));
    if p == 1 {
        return Ok(true);
    }
    let q_even = if q % 2 == 0 { q } else { p - q };
    let cs = even_continued_fraction(q_even, p)?;
    Ok(cs[1..].iter().all(|c| c.abs() == 2))
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Catalog {
    pub entries: Vec<CatalogEntry>,
}

impl Catalog {
    /// Parses without verifying.
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        let mut cur: Option<Builder> = None;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let syntax = |message: String| Error::Syntax { line: line_no, column: 1, message };
            let (key, rest) = line.split_once(char::is_whitespace).map_or((line, ""), |(k, r)| (k, r.trim()));
            match (key, cur.as_mut()) {
                ("entry", None) => cur = Some(Builder::new(rest, line_no)),
                ("entry", Some(_)) => return Err(syntax("entry inside an unterminated entry".into())),
                (_, None) => return Err(syntax(format!("`{key}` outside an entry"))),
                ("end", Some(_)) => entries.push(cur.take().unwrap().finish()?),
                (_, Some(b)) => b.line(key, rest, raw).map_err(syntax)?,
            }
        }
        if let Some(b) = cur {
            return Err(Error::Syntax { line: b.line, column: 1, message: format!("entry {} has no end", b.name) });
        }
        Ok(Catalog { entries })
    }

    /// Runs every entry's self-check.
    pub fn verify(&self) -> Result<()> {
        par::map(&self.entries, |e| e.self_check()).into_iter().collect()
    }

    pub fn lookup(&self, name: &str) -> Result<&CatalogEntry> {
        self.entries.iter().find(|e| e.name == name).ok_or_else(|| Error::NotFound(name.to_string()))
    }

    pub fn tangle(&self, name: &str) -> Result<Tangle> {
        match &self.lookup(name)?.data {
            EntryData::Tangle(t) => Ok(t.clone()),
            EntryData::Knot(_) => Err(Error::Semantic(format!("{name} is a knot diagram, not a tangle"))),
        }
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|e| e.name.as_str())
    }

    pub fn to_text(&self) -> String {
        self.entries.iter().map(|e| e.to_text()).collect::<Vec<_>>().join("\n")
    }
}

struct Builder {
    name: String,
    line: usize,
    kind: Option<EntryKind>,
    delta: Option<LaurentPoly>,
    provenance: Option<DeltaProvenance>,
    fibered: Option<bool>,
    fraction: Option<(i64, i64)>,
    numerator_vanishes: bool,
    body: String,
}

impl Builder {
    fn new(name: &str, line: usize) -> Self {
        Builder {
            name: name.to_string(),
            line,
            kind: None,
            delta: None,
            provenance: None,
            fibered: None,
            fraction: None,
            numerator_vanishes: false,
            body: String::new(),
        }
    }

    fn line(&mut self, key: &str, rest: &str, raw: &str) -> std::result::Result<(), String> {
        let parse_bool = |s: &str| s.parse::<bool>().map_err(|_| format!("expected true or false, got `{s}`"));
        match key {
            "kind" => {
                self.kind = Some(match rest {
                    "knot-diagram" => EntryKind::KnotDiagram,
                    "partial-tangle" => EntryKind::PartialTangle,
                    other => return Err(format!("unknown kind `{other}`")),
                })
            }
            "delta" => self.delta = Some(parse_delta(rest)?),
            "provenance" => {
                self.provenance = Some(match rest {
                    "paper" => DeltaProvenance::Paper,
                    "derived" => DeltaProvenance::Derived,
                    other => return Err(format!("unknown provenance `{other}`")),
                })
            }
            "fibered" => self.fibered = Some(parse_bool(rest)?),
            "numerator_vanishes" => self.numerator_vanishes = parse_bool(rest)?,
            "fraction" => {
                let (p, q) = rest.split_once('/').ok_or("fraction must look like p/q")?;
                let p = p.trim().parse().map_err(|_| format!("bad numerator `{p}`"))?;
                let q = q.trim().parse().map_err(|_| format!("bad denominator `{q}`"))?;
                self.fraction = Some((p, q));
            }
            "c" | "b" | "loops" => {
                self.body.push_str(raw);
                self.body.push('\n');
            }
            other => return Err(format!("unknown key `{other}`")),
        }
        Ok(())
    }

    fn finish(self) -> Result<CatalogEntry> {
        let missing = |what: &str| Error::Syntax { line: self.line, column: 1, message: format!("entry {} lacks `{what}`", self.name) };
        let data = match self.kind.ok_or_else(|| missing("kind"))? {
            EntryKind::KnotDiagram => EntryData::Knot(self.body.parse()?),
            EntryKind::PartialTangle => EntryData::Tangle(self.body.parse()?),
        };
        Ok(CatalogEntry {
            expected_delta: self.delta.clone().ok_or_else(|| missing("delta"))?,
            provenance: self.provenance.ok_or_else(|| missing("provenance"))?,
            name: self.name,
            data,
            fibered: self.fibered,
            fraction: self.fraction,
            numerator_vanishes: self.numerator_vanishes,
        })
    }
}

fn parse_delta(s: &str) -> std::result::Result<LaurentPoly, String> {
    let mut terms = Vec::new();
    for tok in s.split(')').map(str::trim).filter(|t| !t.is_empty()) {
        let inner = tok.strip_prefix('(').ok_or_else(|| format!("expected `(e,c)`, got `{tok})`"))?;
        let (e, c) = inner.split_once(',').ok_or_else(|| format!("expected `(e,c)`, got `{tok})`"))?;
        let e: i64 = e.trim().parse().map_err(|_| format!("bad exponent `{e}`"))?;
        let c: num_bigint::BigInt = c.trim().parse().map_err(|_| format!("bad coefficient `{c}`"))?;
        terms.push((e, c));
    }
    Ok(LaurentPoly::from_terms(terms))
}

/// Reads and verifies a catalog file.
pub fn load_catalog(path: impl AsRef<Path>) -> Result<Catalog> {
    let text = std::fs::read_to_string(path.as_ref()).map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))?;
    let cat = Catalog::parse(&text)?;
    cat.verify()?;
    Ok(cat)
}

/// The catalog compiled into the library, verified on first use.
pub fn bundled() -> Result<&'static Catalog> {
    static CELL: OnceLock<Result<Catalog>> = OnceLock::new();
    CELL.get_or_init(|| {
        let cat = Catalog::parse(BUNDLED)?;
        cat.verify()?;
        Ok(cat)
    })
    .as_ref()
    .map_err(Clone::clone)
}

pub fn bundled_text() -> &'static str {
    BUNDLED
}
