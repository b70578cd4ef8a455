use std::borrow::Cow;

use extsym::alexander::{alexander_polynomial_knot, first_elementary_ideal_vanishes};
use extsym::catalog::{self, Catalog, DeltaProvenance, EntryKind};
use extsym::construct::{corollary_family, extended_symmetric_union, TABLE1};
use extsym::epi::{verify_all, verify_instance, VerificationReport, VerifyOptions};
use extsym::expr::{eval_closure, eval_tangle, parse_closure, parse_tangle};
use extsym::par::Exec;
use extsym::wirtinger::OrientedDiagram;
use extsym::Diagram;
use serde_json::{json, Value};

use crate::{Cli, CliError, Command};

/// Runs one subcommand; `Ok(false)` means a verification did not pass.
pub fn run(cli: &Cli) -> Result<bool, CliError> {
    let opts = VerifyOptions {
        depth: cli.depth,
        beam: cli.beam,
        exec: if cli.sequential { Exec::Sequential } else { Exec::Parallel },
    };
    match &cli.command {
        Command::Alex { expr } => alex(cli, &expr.join(" ")),
        Command::VerifyThm1 { d, t } => verify_thm1(cli, opts, d, &t.join(" ")),
        Command::Table1 => table1(cli, opts),
        Command::Family { khat, count, seed } => family(cli, opts, khat, *count, *seed),
        Command::CatalogCheck => catalog_check(cli),
    }
}

fn load(cli: &Cli) -> Result<Cow<'static, Catalog>, CliError> {
    Ok(match &cli.catalog {
        Some(path) => Cow::Owned(catalog::load_catalog(path)?),
        None => Cow::Borrowed(catalog::bundled()?),
    })
}

fn emit(cli: &Cli, value: &Value, text: impl FnOnce() -> String) {
    if cli.json {
        println!("{}", serde_json::to_string_pretty(value).expect("json values serialize"));
    } else {
        print!("{}", text());
    }
}

fn alex(cli: &Cli, src: &str) -> Result<bool, CliError> {
    let cat = load(cli)?;
    let expr = parse_closure(src)?;
    let closed = eval_closure(&expr, &cat)?;
    let od = OrientedDiagram::orient(closed.diagram());
    let components = od.component_count();
    if components == 1 {
        let delta = alexander_polynomial_knot(closed.diagram())?;
        let value = json!({
            "expr": expr.to_string(),
            "components": 1,
            "crossings": closed.diagram().crossing_count(),
            "delta": delta,
            "delta_text": delta.to_string(),
        });
        emit(cli, &value, || format!("{delta}\n"));
    } else {
        let vanishes = first_elementary_ideal_vanishes(&od.wirtinger_presentation());
        let value = json!({
            "expr": expr.to_string(),
            "components": components,
            "crossings": closed.diagram().crossing_count(),
            "first_elementary_ideal_vanishes": vanishes,
        });
        emit(cli, &value, || format!("link with {components} components; first elementary ideal vanishes: {vanishes}\n"));
    }
    Ok(true)
}

fn report_text(r: &VerificationReport) -> String {
    let yn = |b: bool| if b { "ok" } else { "FAILED" };
    let mut s = String::new();
    s += &format!("instance        {}\n", r.instance);
    s += &format!("delta_K         {}\n", r.delta_k);
    s += &format!("delta_N(T)      {}\n", r.delta_nt);
    s += &format!("delta_Khat      {}\n", r.delta_khat);
    s += &format!("factorization   {}\n", yn(r.factorization_ok));
    s += &format!("relators        {}/{}\n", r.relators_ok, r.relators_checked);
    s += &format!("meridian        {}\n", yn(r.meridian_ok));
    s += &format!("surjective      {}\n", yn(r.surjective_ok));
    s += &format!("longitude       {}\n", longitude_text(r));
    s += &format!("result          {} ({} ms)\n", if r.passed() { "PASS" } else { "FAIL" }, r.elapsed_ms);
    s
}

fn longitude_text(r: &VerificationReport) -> String {
    use extsym::epi::LongitudeStatus::*;
    match &r.longitude_status {
        VerifiedFree => "trivial (free reduction)".into(),
        VerifiedBounded { depth } => format!("trivial (certified at depth {depth})"),
        Inconclusive { note } => format!("INCONCLUSIVE: {note}"),
    }
}

fn verify_thm1(cli: &Cli, opts: VerifyOptions, d_src: &str, t_src: &str) -> Result<bool, CliError> {
    let cat = load(cli)?;
    let d = eval_tangle(&parse_tangle(d_src)?, &cat)?;
    let t_expr = parse_tangle(t_src)?;
    let t = eval_tangle(&t_expr, &cat)?;
    let ld = extended_symmetric_union(&d, &t)?.with_name(format!("extsym({}, {t_expr})", d_src.trim()));
    let report = verify_instance(&ld, opts)?;
    emit(cli, &json!(report), || report_text(&report));
    Ok(report.passed())
}

fn table1(cli: &Cli, opts: VerifyOptions) -> Result<bool, CliError> {
    let cat = catalog::bundled()?;
    let builds = TABLE1.iter().map(|r| r.build()).collect::<Result<Vec<_>, _>>()?;
    let reports = verify_all(&builds, opts);
    let mut rows = Vec::new();
    let mut text = format!(
        "{:<8} {:<4} {:<10} {:>4}  {:<26} {:<7} {:<6} {:<9} {}\n",
        "row", "Khat", "(b'/a, e)", "X", "delta_N(T)", "N(T)", "factor", "longitude", "result"
    );
    let mut passed = 0;
    for ((row, ld), report) in TABLE1.iter().zip(&builds).zip(reports) {
        let report = report?;
        let expected = &cat.lookup(row.numerator_knot)?.expected_delta;
        let numerator_ok = report.delta_nt == *expected;
        let ok = numerator_ok && report.passed();
        passed += ok as usize;
        let lon = match report.longitude_status {
            extsym::epi::LongitudeStatus::VerifiedFree => "free".to_string(),
            extsym::epi::LongitudeStatus::VerifiedBounded { depth } => format!("depth {depth}"),
            extsym::epi::LongitudeStatus::Inconclusive { .. } => "UNKNOWN".to_string(),
        };
        text += &format!(
            "{:<8} {:<4} {:<10} {:>4}  {:<26} {:<7} {:<6} {:<9} {}\n",
            row.label,
            row.khat.name(),
            format!("({}/{}, {})", row.beta_prime, row.alpha, row.e),
            ld.crossing_count(),
            report.delta_nt.to_string(),
            if numerator_ok { row.numerator_knot } else { "MISMATCH" },
            if report.factorization_ok { "ok" } else { "FAIL" },
            lon,
            if ok { "PASS" } else { "FAIL" },
        );
        rows.push(json!({
            "row": row.label,
            "khat": row.khat.name(),
            "beta_prime": row.beta_prime,
            "alpha": row.alpha,
            "e": row.e,
            "crossings": ld.crossing_count(),
            "numerator_knot": row.numerator_knot,
            "numerator_ok": numerator_ok,
            "passed": ok,
            "report": report,
        }));
    }
    text += &format!("{passed}/{} rows pass\n", TABLE1.len());
    emit(cli, &json!({ "rows": rows, "passed": passed, "total": TABLE1.len() }), || text);
    Ok(passed == TABLE1.len())
}

fn family(cli: &Cli, opts: VerifyOptions, khat: &str, count: usize, seed: u64) -> Result<bool, CliError> {
    let members = corollary_family(khat, count, seed)?;
    let builds: Vec<_> = members.iter().map(|m| m.diagram.clone()).collect();
    let reports = verify_all(&builds, opts);
    let mut out = Vec::new();
    let mut text = String::new();
    let mut passed = 0;
    for (m, report) in members.iter().zip(reports) {
        let report = report?;
        let k_monic = report.delta_k.is_monic()?;
        let nt_monic = report.delta_nt.is_monic()?;
        let ok = report.passed() && !k_monic && !nt_monic;
        passed += ok as usize;
        text += &format!(
            "{:?} T({}/{}) X={} delta_K={} delta_N(T)={} monic={} {} {}\n",
            m.entries,
            m.fraction.0,
            m.fraction.1,
            m.diagram.crossing_count(),
            report.delta_k,
            report.delta_nt,
            k_monic,
            longitude_text(&report),
            if ok { "PASS" } else { "FAIL" }
        );
        out.push(json!({
            "entries": m.entries,
            "fraction": [m.fraction.0, m.fraction.1],
            "delta_K_monic": k_monic,
            "delta_NT_monic": nt_monic,
            "passed": ok,
            "report": report,
        }));
    }
    text += &format!("{passed}/{count} members pass\n");
    emit(cli, &json!({ "khat": khat, "seed": seed, "members": out, "passed": passed, "total": count }), || text);
    Ok(passed == count)
}

fn catalog_check(cli: &Cli) -> Result<bool, CliError> {
    let cat = load(cli)?;
    let mut entries = Vec::new();
    let mut text = String::new();
    for e in &cat.entries {
        let kind = match e.kind() {
            EntryKind::KnotDiagram => "knot-diagram",
            EntryKind::PartialTangle => "partial-tangle",
        };
        let prov = match e.provenance {
            DeltaProvenance::Paper => "paper",
            DeltaProvenance::Derived => "derived",
        };
        text += &format!("{:<10} {:<15} {:<8} {}\n", e.name, kind, prov, e.expected_delta);
        entries.push(json!({
            "name": e.name,
            "kind": kind,
            "provenance": prov,
            "delta": e.expected_delta,
            "fibered": e.fibered,
        }));
    }
    text += &format!("{} entries verified\n", cat.entries.len());
    emit(cli, &json!({ "entries": entries, "verified": cat.entries.len() }), || text);
    Ok(true)
}
