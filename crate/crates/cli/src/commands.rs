use std::fmt::Write as _;
use std::str::FromStr;

use serde_json::{json, Value};

use peakalg::enriched::{census_epp, census_epp_b, Alphabet, Census};
use peakalg::eulerian::{
    idempotents, negative_battery, order_polynomial, right_number_closure, rho,
    verify_rho_multiplicativity,
};
use peakalg::group_algebra::{
    class_sums, closure_check, count_sums, ideal_check, structure_constants_cached, verify_duality,
    AlgebraElement, Group, StructureTable, Witness,
};
use peakalg::perm_stats::{descent_set, fibonacci, peak_set, Flavor, Kind, SignedPermutation, StatSet, Window};
use peakalg::posets::{LabeledPoset, TypeBPoset};
use peakalg::qsym::{
    peak_function, peak_function_b, peak_function_b_f, peak_function_f, rank_of_span, QSymElement,
};

use crate::output::{join, Report, Table};
use crate::{verify, BasisArg, Cli, Command, Failure, Global, KindArg};

pub const MAX_N_A: usize = 8;
pub const MAX_N_B: usize = 6;

pub fn check_bounds(n: usize, kind: Kind, g: &Global) -> Result<(), Failure> {
    let max = match kind {
        Kind::A => MAX_N_A,
        Kind::B => MAX_N_B,
    };
    if n > max && !g.allow_large {
        return Err(Failure::usage(format!(
            "n = {n} exceeds the type {kind:?} bound {max}; pass --allow-large to proceed"
        )));
    }
    if n == 0 {
        return Err(Failure::usage("n must be at least 1"));
    }
    Ok(())
}

pub fn parse_flavor(s: &str) -> Result<Flavor, Failure> {
    Flavor::from_str(s).map_err(|_| {
        Failure::usage(format!(
            "unknown flavor {s:?} (interior, left, typeB, right, exterior, descentA, descentB)"
        ))
    })
}

/// `typeB` and `descentB` live on signed permutations; the rest default to type A.
pub fn default_kind(flavor: Flavor) -> Kind {
    match flavor {
        Flavor::TypeBPeak | Flavor::DescentB => Kind::B,
        _ => Kind::A,
    }
}

fn parse_set(s: &str) -> Result<Vec<i32>, Failure> {
    let s = s.trim().trim_start_matches('{').trim_end_matches('}');
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<i32>()
                .map_err(|_| Failure::usage(format!("cannot parse set element {t:?}")))
        })
        .collect()
}

pub fn witness_json(group: &Group, w: &Witness) -> Value {
    json!({
        "left": w.left,
        "right": w.right,
        "residualSupport": w.residual.len(),
        "residual": w.residual.iter()
            .map(|(r, x)| json!({ "window": group.window(*r), "value": x.to_string() }))
            .collect::<Vec<_>>(),
    })
}

pub fn run(cli: &Cli) -> Result<Report, Failure> {
    let g = &cli.global;
    match &cli.command {
        Command::Peaks { window, flavor } => peaks(window, flavor.as_deref()),
        Command::Extensions { file, type_b, n } => extensions(file, *type_b, *n, g),
        Command::Census { window, alphabet, k } => census(window, alphabet, *k, g),
        Command::Qsym {
            n,
            flavor,
            peaks,
            basis,
        } => qsym(*n, flavor, peaks.as_deref(), *basis, g),
        Command::Structure {
            flavor,
            n,
            kind,
            check,
        } => structure(flavor, *n, *kind, *check, g),
        Command::Closure {
            flavor,
            n,
            kind,
            numbers,
            ideal_in,
        } => closure(flavor, *n, *kind, *numbers, ideal_in.as_deref(), g),
        Command::Orderpoly { n, peaks } => orderpoly(*n, *peaks, g),
        Command::Idempotents { n } => idempotent_report(*n, g),
        Command::Negatives { n_max_a, n_max_b } => negatives(*n_max_a, *n_max_b, g),
        Command::Verify {
            n_max,
            n_max_b,
            k,
            strict,
        } => {
            let n_max_b = n_max_b.unwrap_or(n_max.saturating_sub(1).max(1));
            check_bounds(*n_max, Kind::A, g)?;
            check_bounds(n_max_b, Kind::B, g)?;
            Ok(verify::run(*n_max, n_max_b, *k, *strict, g))
        }
    }
}

fn peaks(window: &str, flavor: Option<&str>) -> Result<Report, Failure> {
    let w = SignedPermutation::from_str(window)?;
    let unsigned = w.is_unsigned();
    let flavors: Vec<Flavor> = match flavor {
        Some(f) => vec![parse_flavor(f)?],
        None if unsigned => vec![
            Flavor::InteriorPeak,
            Flavor::LeftPeak,
            Flavor::RightPeak,
            Flavor::ExteriorPeak,
            Flavor::DescentA,
        ],
        None => vec![
            Flavor::TypeBPeak,
            Flavor::LeftPeak,
            Flavor::RightPeak,
            Flavor::ExteriorPeak,
            Flavor::DescentB,
        ],
    };
    let mut sets = serde_json::Map::new();
    let mut text = String::new();
    let mut table = Table::new(&["flavor", "members"]);
    for f in flavors {
        let s = if f.is_peak() { peak_set(&w, f)? } else { descent_set(&w, f)? };
        if flavor.is_some() {
            writeln!(text, "{}", join(&s.members, true)).unwrap();
        } else {
            writeln!(text, "{:<9} {}", f.name(), join(&s.members, true)).unwrap();
        }
        table.push(vec![f.name().into(), join(&s.members, false)]);
        sets.insert(f.name().into(), json!(s.members));
    }
    Ok(Report {
        json: json!({
            "window": w.window(),
            "kind": if unsigned { "A" } else { "B" },
            "sets": sets,
        }),
        text,
        table,
        ok: true,
    })
}

fn extensions(path: &std::path::Path, type_b: bool, n: Option<usize>, g: &Global) -> Result<Report, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    let windows: Vec<Vec<i32>> = if type_b {
        let p = TypeBPoset::parse(&text, n)?;
        check_bounds(p.rank(), Kind::B, g)?;
        p.linear_extensions().into_iter().map(|e| e.into_window()).collect()
    } else {
        let p = LabeledPoset::parse(&text, n)?;
        check_bounds(p.size(), Kind::A, g)?;
        p.linear_extensions().into_iter().map(|e| e.into_window()).collect()
    };
    let mut table = Table::new(&["window"]);
    let mut out = String::new();
    for w in &windows {
        table.push(vec![join(w, false)]);
        writeln!(out, "{}", join(w, false)).unwrap();
    }
    writeln!(out, "{} linear extensions", windows.len()).unwrap();
    Ok(Report {
        json: json!({ "typeB": type_b, "count": windows.len(), "extensions": windows }),
        text: out,
        table,
        ok: true,
    })
}

fn monomial(exps: &[u8]) -> String {
    let parts: Vec<String> = exps
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| if e == 1 { format!("z{i}") } else { format!("z{i}^{e}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" ")
    }
}

fn census(window: &str, alphabet: &str, k: usize, g: &Global) -> Result<Report, Failure> {
    let w = SignedPermutation::from_str(window)?;
    let kind = if w.is_unsigned() && alphabet != "plusMinus" {
        Kind::A
    } else {
        Kind::B
    };
    check_bounds(w.size(), kind, g)?;
    let c: Census = match alphabet {
        "prime" | "left" => {
            let p = w
                .to_unsigned()
                .ok_or_else(|| Failure::usage("prime and left alphabets need an unsigned window"))?;
            let a = if alphabet == "prime" {
                Alphabet::prime(k)
            } else {
                Alphabet::left(k)
            };
            census_epp(&p, &a)?
        }
        "plusMinus" => census_epp_b(&w, &Alphabet::plus_minus(k))?,
        _ => return Err(Failure::usage(format!("unknown alphabet {alphabet:?} (prime, left, plusMinus)"))),
    };
    let header: Vec<String> = (0..c.n_vars).map(|i| format!("z{i}")).chain(["count".into()]).collect();
    let mut table = Table {
        header,
        rows: Vec::new(),
    };
    let mut text = String::new();
    for r in c.records() {
        writeln!(text, "{:>8}  {}", r.count, monomial(&r.exponents)).unwrap();
        table.push(r.exponents.iter().map(u8::to_string).chain([r.count.to_string()]).collect());
    }
    writeln!(text, "total {}", c.total()).unwrap();
    Ok(Report {
        json: json!({
            "window": w.window(),
            "alphabet": alphabet,
            "k": k,
            "total": c.total(),
            "records": c.records(),
        }),
        text,
        table,
        ok: true,
    })
}

fn qsym_table(e: &QSymElement) -> Table {
    let mut t = Table::new(&["parts", "coeff"]);
    for (c, x) in e.terms() {
        let parts: Vec<String> = c.parts.iter().map(u32::to_string).collect();
        t.push(vec![parts.join(" "), x.to_string()]);
    }
    t
}

fn qsym(n: usize, flavor: &str, peaks: Option<&str>, basis: BasisArg, g: &Global) -> Result<Report, Failure> {
    let f = parse_flavor(flavor)?;
    let (fib_index, type_b) = match f {
        Flavor::InteriorPeak => (n.wrapping_sub(1), false),
        Flavor::LeftPeak => (n, true),
        Flavor::TypeBPeak => (n + 1, true),
        _ => return Err(Failure::usage("qsym flavors are interior, left and typeB")),
    };
    check_bounds(n, if type_b { Kind::B } else { Kind::A }, g)?;
    let k_of = |set: &StatSet| -> Result<QSymElement, Failure> {
        Ok(match (type_b, basis) {
            (false, BasisArg::M) => peak_function(set, n)?,
            (false, BasisArg::F) => peak_function_f(set, n)?,
            (true, BasisArg::M) => peak_function_b(set, n)?,
            (true, BasisArg::F) => peak_function_b_f(set, n)?,
        })
    };
    if let Some(p) = peaks {
        let set = StatSet::new(parse_set(p)?, f, n)?;
        let e = k_of(&set)?;
        return Ok(Report {
            json: json!({ "n": n, "flavor": f.name(), "peaks": set.members, "function": e.to_json() }),
            text: format!("K_{} = {e}\n", join(&set.members, true)),
            table: qsym_table(&e),
            ok: true,
        });
    }
    let sets = peakalg::perm_stats::enumerate_peak_sets(n, f);
    let functions = sets.iter().map(&k_of).collect::<Result<Vec<_>, _>>()?;
    let rank = rank_of_span(&functions)?;
    let expected = fibonacci(fib_index) as usize;
    let ok = rank == expected && sets.len() == expected;
    let mut table = Table::new(&["n", "flavor", "peakSets", "rank", "expected"]);
    table.push(vec![
        n.to_string(),
        f.name().into(),
        sets.len().to_string(),
        rank.to_string(),
        expected.to_string(),
    ]);
    Ok(Report {
        json: json!({ "n": n, "flavor": f.name(), "peakSets": sets.len(), "rank": rank, "expected": expected }),
        text: format!(
            "{} peak sets for n = {n}: {}, rank {rank}, Fibonacci f_{fib_index} = {expected}\n",
            f.name(),
            sets.len()
        ),
        table,
        ok,
    })
}

fn group_for(flavor: Flavor, n: usize, kind: Option<KindArg>, g: &Global) -> Result<Group, Failure> {
    let kind = kind.map(Kind::from).unwrap_or(default_kind(flavor));
    check_bounds(n, kind, g)?;
    Ok(Group::new(n, kind))
}

pub fn table_for(group: &Group, flavor: Flavor, g: &Global) -> Result<StructureTable, Failure> {
    Ok(match &g.cache_dir {
        Some(dir) => {
            std::fs::create_dir_all(dir)
                .map_err(|e| Failure::usage(format!("cache directory {}: {e}", dir.display())))?;
            structure_constants_cached(group, flavor, dir)?
        }
        None => StructureTable::compute(group, flavor)?,
    })
}

fn structure(flavor: &str, n: usize, kind: Option<KindArg>, check: bool, g: &Global) -> Result<Report, Failure> {
    let f = parse_flavor(flavor)?;
    let group = group_for(f, n, kind, g)?;
    let t = table_for(&group, f, g)?;
    let mut table = Table::new(&["A", "B", "C", "count"]);
    let mut text = String::new();
    for ((a, b, c), count) in &t.entries {
        writeln!(text, "c[{}, {}; {}] = {count}", join(a, true), join(b, true), join(c, true)).unwrap();
        table.push(vec![join(a, false), join(b, false), join(c, false), count.to_string()]);
    }
    let mut json = serde_json::to_value(t.to_json()).expect("serializable");
    let mut ok = true;
    if check {
        let report = verify_duality(&group, &t)?;
        ok = report.passed();
        writeln!(
            text,
            "duality: {} ({} pairs, {} failing, {} audit failures)",
            if ok { "ok" } else { "FAILED" },
            report.pairs_checked,
            report.failures.len(),
            report.audit_failures.len()
        )
        .unwrap();
        json["duality"] = serde_json::to_value(&report).expect("serializable");
    }
    Ok(Report { json, text, table, ok })
}

fn basis(group: &Group, flavor: Flavor, numbers: bool) -> Result<Vec<AlgebraElement>, Failure> {
    Ok(if numbers {
        count_sums(group, flavor)?.into_iter().map(|p| p.1).collect()
    } else {
        class_sums(group, flavor)?.into_iter().map(|p| p.1).collect()
    })
}

fn closure(
    flavor: &str,
    n: usize,
    kind: Option<KindArg>,
    numbers: bool,
    ideal_in: Option<&str>,
    g: &Global,
) -> Result<Report, Failure> {
    let f = parse_flavor(flavor)?;
    let group = group_for(f, n, kind, g)?;
    let b = basis(&group, f, numbers)?;
    let report = closure_check(&group, &b)?;
    let mut ok = report.closed;
    let mut text = format!(
        "{} {} sums, {:?}{n}: dimension {}, {}\n",
        f.name(),
        if numbers { "number" } else { "set" },
        group.kind(),
        report.dim,
        if report.closed { "closed" } else { "NOT closed" }
    );
    let mut json = json!({
        "flavor": f.name(),
        "kind": group.kind(),
        "n": n,
        "numbers": numbers,
        "closed": report.closed,
        "dim": report.dim,
    });
    if let Some(w) = &report.witness {
        writeln!(text, "witness: basis {} * basis {} leaves the span ({} residual entries)", w.left, w.right, w.residual.len()).unwrap();
        json["witness"] = witness_json(&group, w);
    }
    let mut table = Table::new(&["flavor", "kind", "n", "closed", "dim", "ideal"]);
    let mut ideal_cell = String::new();
    if let Some(outer) = ideal_in {
        let of = parse_flavor(outer)?;
        let ob = basis(&group, of, numbers)?;
        let (is_ideal, w) = ideal_check(&group, &b, &ob)?;
        ok &= is_ideal;
        ideal_cell = is_ideal.to_string();
        writeln!(text, "ideal of {} span: {}", of.name(), if is_ideal { "yes" } else { "NO" }).unwrap();
        json["ideal"] = json!({
            "outer": of.name(),
            "isIdeal": is_ideal,
            "witness": w.map(|w| witness_json(&group, &w)),
        });
    }
    table.push(vec![
        f.name().into(),
        format!("{:?}", group.kind()),
        n.to_string(),
        report.closed.to_string(),
        report.dim.to_string(),
        ideal_cell,
    ]);
    Ok(Report { json, text, table, ok })
}

fn orderpoly(n: usize, peaks: Option<usize>, g: &Global) -> Result<Report, Failure> {
    check_bounds(n, Kind::A, g)?;
    let counts: Vec<usize> = match peaks {
        Some(i) => vec![i],
        None => (0..=(n - 1) / 2).collect(),
    };
    let mut entries = Vec::new();
    let mut text = String::new();
    let mut table = Table::new(&["peaks", "degree", "coeff"]);
    for i in counts {
        let p = order_polynomial(i, n)?;
        writeln!(text, "Ω({i}; x) = {p}").unwrap();
        for (d, c) in p.coeffs().iter().enumerate() {
            table.push(vec![i.to_string(), d.to_string(), c.to_string()]);
        }
        entries.push(json!({
            "peaks": i,
            "coeffs": p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        }));
    }
    Ok(Report {
        json: json!({ "n": n, "polynomials": entries }),
        text,
        table,
        ok: true,
    })
}

fn idempotent_report(n: usize, g: &Global) -> Result<Report, Failure> {
    check_bounds(n, Kind::A, g)?;
    let group = Group::new(n, Kind::A);
    let report = verify_rho_multiplicativity(&group)?;
    let ids = idempotents(&rho(&group)?, n);
    let mut text = format!(
        "n = {n}: {} idempotents, ρ(x)ρ(y) = ρ(xy) {}, wrong-parity terms {}, sum is identity: {}\n",
        ids.len(),
        if report.mismatches.is_empty() { "holds" } else { "FAILS" },
        if report.wrong_parity.is_empty() { "vanish" } else { "PRESENT" },
        report.sums_to_unit
    );
    let mut table = Table::new(&["index", "degree", "window", "coeff"]);
    let mut list = Vec::new();
    for e in &ids {
        writeln!(text, "e_{} (x^{}): {} terms", e.index, e.degree, e.element.terms().len()).unwrap();
        if n <= 3 {
            writeln!(text, "  {}", e.element.describe(&group)).unwrap();
        }
        for (&r, c) in e.element.terms() {
            table.push(vec![e.index.to_string(), e.degree.to_string(), join(group.window(r), false), c.to_string()]);
        }
        list.push(json!({
            "index": e.index,
            "degree": e.degree,
            "terms": e.element.terms().iter()
                .map(|(&r, c)| json!({ "window": group.window(r), "coeff": c.to_string() }))
                .collect::<Vec<_>>(),
        }));
    }
    Ok(Report {
        json: json!({ "n": n, "report": report, "idempotents": list }),
        text,
        table,
        ok: report.passed(),
    })
}

fn negatives(n_max_a: usize, n_max_b: usize, g: &Global) -> Result<Report, Failure> {
    check_bounds(n_max_a, Kind::A, g)?;
    check_bounds(n_max_b, Kind::B, g)?;
    let results = negative_battery(n_max_a, n_max_b)?;
    let mut ok = true;
    let mut text = String::new();
    let mut table = Table::new(&["statistic", "n", "closed", "closureDim"]);
    let mut list = Vec::new();
    for r in &results {
        ok &= !r.closed;
        if r.closed {
            writeln!(text, "!!! {}: closed for every n <= {} (no witness found)", r.statistic.name(), r.n).unwrap();
        } else {
            let w = r.witness.as_ref().expect("non-closed results carry a witness");
            writeln!(
                text,
                "{}: fails at n = {} (basis {} * basis {}, {} residual entries)",
                r.statistic.name(),
                r.n,
                w.left,
                w.right,
                w.residual.len()
            )
            .unwrap();
        }
        table.push(vec![r.statistic.name().into(), r.n.to_string(), r.closed.to_string(), String::new()]);
        list.push(serde_json::to_value(r.to_json()).expect("serializable"));
    }
    let rc = right_number_closure(4)?;
    ok &= rc.proper();
    writeln!(
        text,
        "right peak number, n = 4: sums span {}, generated algebra has dimension {} of {}",
        rc.input_dim, rc.closure_dim, rc.group_order
    )
    .unwrap();
    table.push(vec![
        "right peak number".into(),
        "4".into(),
        (rc.input_dim == rc.closure_dim).to_string(),
        rc.closure_dim.to_string(),
    ]);
    list.push(json!({
        "statistic": "right peak number",
        "n": 4,
        "closed": rc.input_dim == rc.closure_dim,
        "closureDim": rc.closure_dim,
    }));
    Ok(Report {
        json: Value::Array(list),
        text,
        table,
        ok,
    })
}
