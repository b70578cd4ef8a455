//! Regenerates `data/catalog.txt` from the tangle constructors.
//!
//! cargo run -p extsym-core --example gen_catalog > crates/core/data/catalog.txt

use extsym::catalog::{Catalog, CatalogEntry, DeltaProvenance, EntryData};
use extsym::{ClosedDiagram, LaurentPoly, Tangle};

fn knot(name: &str, d: ClosedDiagram, delta: LaurentPoly, prov: DeltaProvenance, fibered: bool, fraction: (i64, i64)) -> CatalogEntry {
    CatalogEntry {
        name: name.into(),
        data: EntryData::Knot(d),
        expected_delta: delta,
        provenance: prov,
        fibered: Some(fibered),
        fraction: Some(fraction),
        numerator_vanishes: false,
    }
}

fn tangle(name: &str, t: Tangle, delta: LaurentPoly, prov: DeltaProvenance, vanishes: bool) -> CatalogEntry {
    CatalogEntry {
        name: name.into(),
        data: EntryData::Tangle(t),
        expected_delta: delta,
        provenance: prov,
        fibered: None,
        fraction: None,
        numerator_vanishes: vanishes,
    }
}

fn main() {
    use DeltaProvenance::*;
    let one = LaurentPoly::one();
    let d31 = LaurentPoly::from_coeffs(-1, &[1, -1, 1]);
    let d41 = LaurentPoly::from_coeffs(-1, &[-1, 3, -1]);
    let d51 = LaurentPoly::from_coeffs(-2, &[1, -1, 1, -1, 1]);
    let d52 = LaurentPoly::from_coeffs(-1, &[2, -3, 2]);
    let r = |p, q| Tangle::rational(p, q).unwrap();
    let t31 = Tangle::twist(3);

    let entries = vec![
        knot("unknot", ClosedDiagram::unlink(1), one.clone(), Derived, true, (1, 1)),
        knot("3_1", Tangle::integer(3).numerator(), d31.clone(), Paper, true, (3, 1)),
        knot("4_1", r(5, 2).numerator(), d41.clone(), Derived, true, (5, 2)),
        knot("5_1", Tangle::integer(5).numerator(), d51, Derived, true, (5, 1)),
        knot("5_2", r(7, 2).numerator(), d52.clone(), Paper, false, (7, 2)),
        tangle("unknotD", Tangle::zero(), one.clone(), Derived, false),
        tangle("3_1D", t31.clone(), d31.clone(), Paper, false),
        tangle("4_1D", r(2, 5), d41, Derived, false),
        tangle("5_2D", r(2, 7), d52, Paper, false),
        tangle("KT", r(1, 3).sum(&r(-1, 2)).rotate_half_pi(), one, Paper, false),
        tangle("3_1#3_1*", t31.sum(&t31.reflect()), &d31 * &d31, Derived, true),
    ];
    let cat = Catalog { entries };
    if let Err(e) = cat.verify() {
        eprintln!("generated catalog fails its own checks: {e}");
        std::process::exit(1);
    }
    print!("{}", cat.to_text());
}
