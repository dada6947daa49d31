use regmap_core::classical::GroupSpec;
use regmap_core::classify::{
    check_record, classify_signature, enumerate_triangle_pairs, infinite_family, verify_table_rows, verify_theorem_12,
    ClassificationRecord, Signature, Tier, THM12_ROWS,
};
use regmap_core::error::{Error, Result};
use regmap_core::euler::euler_characteristic;
use regmap_core::group::FiniteGroup;
use regmap_core::lie::{catalan_check, f_bound_check, primitive_prime_divisors, CatalanClass, LieFamily, LieSpec};
use regmap_core::primegraph::{f_value, group_gk};
use serde_json::json;

use crate::report::{to_value, Report};
use crate::{Common, Target, What};

fn build(spec: &str, cap: u64) -> Result<FiniteGroup> {
    spec.parse::<GroupSpec>()?.build(cap)
}

fn jobs(o: &Common) -> usize {
    o.jobs as usize
}

fn status(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn chi_text(chi: i64, factored: &str) -> String {
    if factored == chi.to_string() {
        format!("chi={chi}")
    } else {
        format!("chi={chi} = {factored}")
    }
}

fn record_line(r: &ClassificationRecord) -> String {
    let chi = match (r.chi(), &r.chi_factored) {
        (Some(c), Some(f)) => chi_text(c, f),
        _ => "chi=undefined".to_string(),
    };
    let mut s = format!("{} {{{},{}}} {chi} pairs={}", r.group, r.m, r.n, r.count);
    if let Some((x, y)) = r.witness {
        s += &format!(" witness=({x},{y})");
    }
    if let Some(k) = r.orbits {
        s += &format!(" orbits={k}");
    }
    s
}

pub fn chi(o: &Common, group: Option<&str>, order: Option<u64>, m: u64, n: u64) -> Result<Report> {
    let mut rep = Report::new("chi");
    let g = group.map(|s| build(s, o.max_order)).transpose()?;
    let order = g.as_ref().map_or_else(|| order.expect("clap requires --group or --order"), |g| g.order());
    let e = euler_characteristic(order, m, n)?;
    let factored = e.factored();
    rep.line(chi_text(e.chi, &factored));
    rep.line(format!("V={} E={} F={}", e.v, e.e, e.f));
    let mut v = to_value(&e);
    v["factored"] = json!(factored);
    if let Some(g) = &g {
        let rec = enumerate_triangle_pairs(g, m, n, jobs(o))?;
        rep.line(format!("pairs={}", rec.count));
        v["group"] = json!(g.name());
        v["pairs"] = json!(rec.count);
    }
    rep.results.push(v);
    Ok(rep)
}

pub fn verify(o: &Common, target: Target, tier: &str, a: u32) -> Result<Report> {
    match target {
        Target::Thm12 => verify_thm12(o),
        Target::Tables => verify_tables(o, tier.parse()?),
        Target::Bounds => verify_bounds(o),
        Target::Family => verify_family(a),
    }
}

fn verify_thm12(o: &Common) -> Result<Report> {
    let mut rep = Report::new("verify thm12");
    let r = verify_theorem_12(jobs(o))?;
    let mut found = 0;
    for (group, m, n, chi) in THM12_ROWS {
        let hit = r.hits.iter().find(|h| h.group == group && (h.m, h.n) == (m, n));
        let ok = hit.is_some_and(|h| h.chi() == Some(chi) && h.orbits == Some(1));
        found += usize::from(ok);
        match hit {
            Some(h) => rep.line(format!("{}: {}", record_line(h), status(ok))),
            None => rep.line(format!("{group} {{{m},{n}}} chi={chi}: FAIL not found")),
        }
    }
    for e in &r.extra {
        rep.line(format!("{e}: FAIL unexpected"));
    }
    let s = &r.scan;
    rep.line(format!(
        "scan p<={} a<={}: {} values, {} hits, {} mismatches: {}",
        s.p_limit,
        s.a_max,
        s.evaluated,
        s.hits.len(),
        s.mismatches.len(),
        status(s.pass && r.overlap_agrees)
    ));
    if !r.quotient_only.is_empty() {
        rep.line(format!("|G|/[m,n] = 2^a only: {}", r.quotient_only.join(", ")));
    }
    rep.line(format!("thm12: {found}/{} {}", THM12_ROWS.len(), status(r.pass)));
    for h in &r.hits {
        rep.push(h);
    }
    rep.results.push(json!({
        "missing": r.missing,
        "extra": r.extra,
        "quotient_only": r.quotient_only,
        "rigidity": to_value(&r.rigidity),
        "scan": to_value(&r.scan),
        "overlap_agrees": r.overlap_agrees,
    }));
    rep.pass = r.pass;
    Ok(rep)
}

fn verify_tables(o: &Common, tier: Tier) -> Result<Report> {
    let mut rep = Report::new("verify tables");
    let rows = verify_table_rows(o.max_order, tier, jobs(o))?;
    let count = |s: &str| rows.iter().filter(|r| r.status == s).count();
    for r in &rows {
        rep.line(r.to_string());
        rep.push(r);
        if r.status == "SKIP" && r.reason.contains("exceeds cap") {
            rep.capped = true;
        }
    }
    let (pass, fail, skip) = (count("PASS"), count("FAIL"), count("SKIP"));
    rep.pass = fail == 0;
    rep.line(format!("tables: {pass} PASS, {fail} FAIL, {skip} SKIP"));
    Ok(rep)
}

fn bound_specs() -> Vec<LieSpec> {
    let families = [
        (LieFamily::A, 1..=8),
        (LieFamily::TwoA, 2..=8),
        (LieFamily::B, 2..=8),
        (LieFamily::C, 2..=8),
        (LieFamily::D, 4..=8),
        (LieFamily::TwoD, 4..=8),
    ];
    let mut specs = Vec::new();
    for (fam, ranks) in families {
        for n in ranks {
            for q in [2u64, 3, 4, 5, 7, 8, 9] {
                specs.extend(LieSpec::new(fam.clone(), n, q));
            }
        }
    }
    for q in [8u64, 32, 128] {
        specs.extend(LieSpec::new(LieFamily::TwoB2, 2, q));
    }
    for q in [3u64, 4, 5, 7, 8, 9] {
        specs.extend(LieSpec::new(LieFamily::G2, 2, q));
    }
    specs
}

/// Groups small enough to compute the prime graph directly.
const BRUTE_FORCE: [(&str, &str); 10] = [
    ("A1:7", "PSL2:7"),
    ("A1:8", "PSL2:8"),
    ("A1:11", "PSL2:11"),
    ("A1:16", "PSL2:16"),
    ("A1:25", "PSL2:25"),
    ("A1:27", "PSL2:27"),
    ("A2:3", "PSL3:3"),
    ("A2:4", "PSL3:4"),
    ("2A2:3", "PSU3:3"),
    ("2A3:2", "PSU4:2"),
];

fn verify_bounds(o: &Common) -> Result<Report> {
    let mut rep = Report::new("verify bounds");
    let mut failed = 0;
    for spec in bound_specs() {
        let c = f_bound_check(&spec)?;
        let computed = c.computed.map_or("-".to_string(), |v| v.to_string());
        let st = if c.trusted { "TRUSTED" } else { status(c.ok) };
        rep.line(format!("{} claimed={} computed={computed}: {st}", c.spec, c.claimed));
        failed += usize::from(!c.ok);
        rep.push(&c);
    }
    for (lie, group) in BRUTE_FORCE {
        let c = f_bound_check(&lie.parse()?)?;
        let g = match build(group, o.max_order) {
            Err(Error::CapExceeded { .. }) => {
                rep.capped = true;
                rep.line(format!("{group}: SKIP exceeds cap {}", o.max_order));
                continue;
            }
            r => r?,
        };
        let f = f_value(&group_gk(&g))?;
        let ok = f >= c.claimed;
        failed += usize::from(!ok);
        rep.line(format!("{group} f={f} claimed={}: {}", c.claimed, status(ok)));
        rep.results.push(json!({"group": group, "f": f, "claimed": c.claimed, "ok": ok}));
    }
    rep.pass = failed == 0;
    rep.line(format!("bounds: {failed} failures"));
    Ok(rep)
}

fn verify_family(a: u32) -> Result<Report> {
    let mut rep = Report::new("verify family");
    let c = infinite_family(a)?;
    let target = -(1i128 << (a + 1));
    let checks = [
        ("x = (2^a+9)/29", c.x.to_string(), true),
        ("x mod 7 != 0", (c.x % 7).to_string(), !c.seven_divides_x),
        (
            "SL2:8 {7,9} generating pairs",
            c.base_case.count.to_string(),
            c.base_case.count > 0,
        ),
        ("closed form = -2^(a+1)", c.chi_closed_form.to_string(), c.closed_form_is_target),
        ("V-E+F = -2^(a+1)", c.chi_factored.clone(), c.chi_is_target),
        (
            "surrogate V-E+F = 144-448x",
            format!("{} x={}", c.surrogate.chi, c.surrogate.x),
            c.surrogate.chi == c.surrogate.euler_form,
        ),
    ];
    rep.line(format!("a={a} order={} {{m,n}}={{{},{}}} target={target}", c.order, c.m, c.n));
    for (name, value, ok) in checks {
        rep.line(format!("{name}: {value}: {}", status(ok)));
        rep.results.push(json!({"check": name, "value": value, "pass": ok}));
        rep.pass &= ok;
    }
    Ok(rep)
}

pub fn analyze(o: &Common, group: &str, what: What) -> Result<Report> {
    let g = build(group, o.max_order)?;
    let mut rep = Report::new(format!("analyze {}", what_name(what)));
    match what {
        What::Gk => {
            let gk = group_gk(&g);
            for line in gk.to_adjacency_text().lines() {
                rep.line(line);
            }
            for (i, &p) in gk.vertices.iter().enumerate() {
                let nbrs: Vec<u64> = gk.vertices.iter().copied().filter(|&q| gk.adjacent(p, q)).collect();
                rep.results.push(json!({"vertex": p, "cyclic": gk.cyclic[i], "neighbours": nbrs}));
            }
        }
        What::Spectrum => {
            let s: Vec<String> = g.spectrum().iter().map(u64::to_string).collect();
            rep.line(format!("{{{}}}", s.join(",")));
            rep.results.push(json!({"group": g.name(), "order": g.order(), "spectrum": g.spectrum()}));
        }
        What::Classes => {
            rep.line("order size centralizer");
            for c in g.classes() {
                let cent = g.centralizer_order(c.rep);
                rep.line(format!("{} {} {cent}", c.order, c.size));
                rep.results.push(json!({"order": c.order, "size": c.size, "centralizer": cent, "rep": c.rep}));
            }
        }
        What::F => {
            let gk = group_gk(&g);
            let f = f_value(&gk)?;
            rep.line(format!("f={f}"));
            rep.results.push(json!({"group": g.name(), "f": f, "non_cyclic": gk.non_cyclic()}));
        }
    }
    Ok(rep)
}

fn what_name(w: What) -> &'static str {
    match w {
        What::Gk => "gk",
        What::Spectrum => "spectrum",
        What::Classes => "classes",
        What::F => "f",
    }
}

pub fn classify(o: &Common, group: &str, mn: Option<(u64, u64)>, signature: &str) -> Result<Report> {
    let g = build(group, o.max_order)?;
    let mut rep = Report::new("classify");
    let records = match mn {
        Some((m, n)) => {
            let r = enumerate_triangle_pairs(&g, m, n, jobs(o))?;
            check_record(&g, &r)?;
            vec![r]
        }
        None => classify_signature(&g, signature.parse::<Signature>()?, jobs(o))?,
    };
    for r in &records {
        rep.line(record_line(r));
        rep.push(r);
    }
    rep.line(format!("{}: {} records", g.name(), records.len()));
    Ok(rep)
}

pub fn family(a: u32) -> Result<Report> {
    let c = infinite_family(a)?;
    let mut rep = Report::new("family");
    rep.line(format!("a={} x={} order={} {{m,n}}={{{},{}}}", c.a, c.x, c.order, c.m, c.n));
    rep.line(format!("7 divides x: {}", c.seven_divides_x));
    rep.line(format!("closed form: {}", c.chi_closed_form));
    rep.line(format!("V-E+F: {}", chi_text(c.chi, &c.chi_factored)));
    rep.line(record_line(&c.base_case));
    rep.line(format!("dihedral: {}", c.dihedral));
    rep.line(format!("generation: {}", c.generation));
    let s = &c.surrogate;
    rep.line(format!(
        "surrogate {} x={} order={} {{{},{}}} chi={} (144-448x = {}, -58x+18 = {})",
        s.group, s.x, s.order, s.m, s.n, s.chi, s.euler_form, s.closed_form
    ));
    rep.push(&c);
    Ok(rep)
}

pub fn zsigmondy(q: u64, a: Option<u32>) -> Result<Report> {
    let mut rep = Report::new("zsigmondy");
    let range = match a {
        Some(a) => a..=a,
        None => 1..=20,
    };
    for a in range {
        let c = primitive_prime_divisors(q, a);
        let ps: Vec<String> = c.primes.iter().map(|p| p.to_string()).collect();
        let mut s = match (ps.is_empty(), c.residual.is_some()) {
            (true, false) => format!("q={q} a={a}: none"),
            (true, true) => format!("q={q} a={a}:"),
            _ => format!("q={q} a={a}: {}", ps.join(" ")),
        };
        if let Some(e) = c.exception {
            s += &format!(" (exception {e})");
        }
        if let Some(r) = &c.residual {
            s += &format!(" (unsplit cofactor {r})");
        }
        rep.line(s);
        rep.push(&c);
    }
    if a.is_none() {
        if let Ok(k) = catalan_check(q) {
            rep.line(match k {
                CatalanClass::PrimeForm { c, sign } if sign > 0 => format!("q = 2^{c}+1 is prime"),
                CatalanClass::PrimeForm { c, .. } => format!("q = 2^{c}-1 is prime"),
                CatalanClass::ExceptionNine => "q = 9 = 2^3+1".to_string(),
                CatalanClass::NotOfForm => "q is not 2^c+-1".to_string(),
            });
            rep.results.push(json!({"q": q, "catalan": to_value(&k)}));
        }
    }
    Ok(rep)
}
