//! The one-shot verification suite. Checks run in parallel on the installed
//! pool; results keep a fixed order, so output depends only on the arguments.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use peakalg::enriched::{
    census_epp, census_epp_b, count_epp, enumerate_poset_epp, enumerate_poset_epp_b, monomial_census,
    Alphabet, Census, ProductFlavor,
};
use peakalg::eulerian::{
    eulerian_basis, order_polynomial_of, right_number_closure, rho, same_span, search_violation,
    verify_rho_multiplicativity, EulerianFlavor, NegativeStatistic,
};
use peakalg::group_algebra::{
    bipartite_censuses, class_sums, closure_check, descent_algebra_containment, ideal_check,
    verify_duality, AlgebraElement, Group,
};
use peakalg::perm_stats::{
    enumerate_peak_sets, fibonacci, peak_set, Composition, Flavor, Kind, Permutation,
    SignedPermutation,
};
use peakalg::posets::{LabeledPoset, TypeBPoset};
use peakalg::qsym::{census_polynomial, peak_function, peak_function_b, poly_mul, rank_of_span, Basis, QSymElement};

use crate::commands::table_for;
use crate::output::{Report, Table};
use crate::Global;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Status {
    Pass,
    Fail,
    /// Failed, but documented as unattainable (type B peak algebra, n >= 3).
    KnownGap,
    /// The bound is too small for the check to be conclusive.
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

fn check(name: impl Into<String>, ok: bool) -> Check {
    Check {
        name: name.into(),
        status: if ok { Status::Pass } else { Status::Fail },
        detail: String::new(),
    }
}

fn gap(name: impl Into<String>, ok: bool, is_gap: bool) -> Check {
    let mut c = check(name, ok);
    if !ok && is_gap {
        c.status = Status::KnownGap;
    }
    c
}

fn errored(name: impl Into<String>, e: peakalg::Error) -> Check {
    Check {
        name: name.into(),
        status: Status::Fail,
        detail: e.to_string(),
    }
}

type Task<'a> = Box<dyn Fn() -> Vec<Check> + Send + Sync + 'a>;

fn guarded(name: String, f: impl Fn() -> peakalg::Result<Vec<Check>>) -> Vec<Check> {
    f().unwrap_or_else(|e| vec![errored(name, e)])
}

fn fib(m: usize) -> usize {
    fibonacci(m) as usize
}

fn examples() -> peakalg::Result<Vec<Check>> {
    let a = Permutation::new(vec![2, 1, 4, 3, 5])?;
    let b = SignedPermutation::new(vec![-2, 3, 4, -5, 1])?;
    Ok(vec![
        check("peak set of 2,1,4,3,5 is {3}", peak_set(&a, Flavor::InteriorPeak)?.members == [3]),
        check("left peak set of 2,1,4,3,5 is {1,3}", peak_set(&a, Flavor::LeftPeak)?.members == [1, 3]),
        check("type B peak set of -2,3,4,-5,1 is {0,3}", peak_set(&b, Flavor::TypeBPeak)?.members == [0, 3]),
    ])
}

fn ranks(n: usize, flavor: Flavor) -> peakalg::Result<Vec<Check>> {
    let sets = enumerate_peak_sets(n, flavor);
    let (functions, want) = match flavor {
        Flavor::InteriorPeak => (
            sets.iter().map(|s| peak_function(s, n)).collect::<Result<Vec<_>, _>>()?,
            fib(n - 1),
        ),
        Flavor::LeftPeak => (
            sets.iter().map(|s| peak_function_b(s, n)).collect::<Result<Vec<_>, _>>()?,
            fib(n),
        ),
        _ => (
            sets.iter().map(|s| peak_function_b(s, n)).collect::<Result<Vec<_>, _>>()?,
            fib(n + 1),
        ),
    };
    let kind = if flavor == Flavor::TypeBPeak { Kind::B } else { Kind::A };
    let realized = Group::new(n, kind).classify(flavor)?.sets.len();
    Ok(vec![
        check(format!("{} peak sets n={n}: count", flavor.name()), sets.len() == want && realized == want),
        check(format!("{} peak functions n={n}: rank", flavor.name()), rank_of_span(&functions)? == want),
    ])
}

fn additivity(n: usize, kind: Kind, k: usize, seed: u64) -> peakalg::Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((n as u64) << 8) ^ kind as u64);
    let mut ok = true;
    for _ in 0..5 {
        let density = rng.gen_range(0.2..0.8);
        match kind {
            Kind::A => {
                let p = LabeledPoset::random(n, density, &mut rng);
                for alpha in [Alphabet::prime(k), Alphabet::left(k)] {
                    let mut sum = Census::new(k + 1);
                    for pi in p.linear_extensions() {
                        sum.merge(&census_epp(&pi, &alpha)?);
                    }
                    ok &= monomial_census(&enumerate_poset_epp(&p, &alpha)?, k + 1) == sum;
                }
            }
            Kind::B => {
                let p = TypeBPoset::random(n, density, &mut rng);
                let alpha = Alphabet::plus_minus(k);
                let mut sum = Census::new(k + 1);
                for pi in p.linear_extensions() {
                    sum.merge(&census_epp_b(&pi, &alpha)?);
                }
                ok &= monomial_census(&enumerate_poset_epp_b(&p, &alpha)?, k + 1) == sum;
            }
        }
    }
    Ok(vec![check(format!("census additivity {kind:?}{n} k={k}"), ok)])
}

fn expansions(n: usize, kind: Kind) -> peakalg::Result<Vec<Check>> {
    let k = n + 1;
    let mut ok = true;
    match kind {
        Kind::A => {
            for pi in Permutation::all(n) {
                let i = peak_set(&pi, Flavor::InteriorPeak)?;
                let l = peak_set(&pi, Flavor::LeftPeak)?;
                ok &= peak_function(&i, n)?.truncate(k) == census_polynomial(&census_epp(&pi, &Alphabet::prime(k))?);
                ok &= peak_function_b(&l, n)?.truncate(k) == census_polynomial(&census_epp(&pi, &Alphabet::left(k))?);
            }
        }
        Kind::B => {
            for pi in SignedPermutation::all(n) {
                let b = peak_set(&pi, Flavor::TypeBPeak)?;
                ok &= peak_function_b(&b, n)?.truncate(k)
                    == census_polynomial(&census_epp_b(&pi, &Alphabet::plus_minus(k))?);
            }
        }
    }
    Ok(vec![check(format!("peak functions match censuses {kind:?}{n}"), ok)])
}

fn bipartite(n: usize, kind: Kind, k: usize) -> peakalg::Result<Vec<Check>> {
    let g = Group::new(n, kind);
    let flavors = match kind {
        Kind::A => vec![
            (ProductFlavor::Enriched, Alphabet::prime(k), Alphabet::prime(k)),
            (ProductFlavor::LeftLeft, Alphabet::left(k), Alphabet::left(k)),
            (ProductFlavor::LeftPrime, Alphabet::left(k), Alphabet::prime(k)),
        ],
        Kind::B => vec![(ProductFlavor::TypeB, Alphabet::plus_minus(k), Alphabet::plus_minus(k))],
    };
    let mut out = Vec::new();
    for (f, s, t) in flavors {
        let mut ok = true;
        for pi in 0..g.order() {
            let (lhs, rhs) = bipartite_censuses(&g, pi, &s, &t, f)?;
            ok &= lhs == rhs;
        }
        out.push(check(format!("bipartite census {f:?} {kind:?}{n} k={k}"), ok));
    }
    Ok(out)
}

fn algebra(n: usize, kind: Kind, g: &Global) -> peakalg::Result<Vec<Check>> {
    let group = Group::new(n, kind);
    let flavors: &[(Flavor, usize)] = match kind {
        Kind::A => &[(Flavor::InteriorPeak, fib(n - 1)), (Flavor::LeftPeak, fib(n))],
        Kind::B => &[(Flavor::TypeBPeak, fib(n + 1))],
    };
    let is_gap = kind == Kind::B && n >= 3;
    let mut out = Vec::new();
    for &(f, dim) in flavors {
        let name = format!("{} {kind:?}{n}", f.name());
        let table = match table_for(&group, f, g) {
            Ok(t) => t,
            Err(e) => {
                out.push(Check {
                    name: format!("{name}: structure table"),
                    status: Status::Fail,
                    detail: e.message,
                });
                continue;
            }
        };
        let d = verify_duality(&group, &table)?;
        out.push(gap(format!("{name}: duality"), d.failures.is_empty(), is_gap));
        let mut audit = gap(format!("{name}: representative audit"), d.audit_failures.is_empty(), is_gap);
        if !d.audit_failures.is_empty() {
            audit.detail = format!("{} elements disagree with their class representative", d.audit_failures.len());
        }
        out.push(audit);
        let basis: Vec<AlgebraElement> = class_sums(&group, f)?.into_iter().map(|p| p.1).collect();
        let c = closure_check(&group, &basis)?;
        out.push(gap(format!("{name}: closed"), c.closed, is_gap));
        out.push(check(format!("{name}: dimension {}", c.dim), c.dim == dim));
    }
    match kind {
        Kind::A => {
            let inner: Vec<AlgebraElement> = class_sums(&group, Flavor::InteriorPeak)?.into_iter().map(|p| p.1).collect();
            let outer: Vec<AlgebraElement> = class_sums(&group, Flavor::LeftPeak)?.into_iter().map(|p| p.1).collect();
            out.push(check(format!("interior span is an ideal of left span A{n}"), ideal_check(&group, &inner, &outer)?.0));
        }
        Kind::B => out.push(check(
            format!("typeB span inside descent algebra B{n}"),
            descent_algebra_containment(&group, Flavor::TypeBPeak)?,
        )),
    }
    Ok(out)
}

fn eulerian(n: usize) -> peakalg::Result<Vec<Check>> {
    let group = Group::new(n, Kind::A);
    let rep = verify_rho_multiplicativity(&group)?;
    let ids: Vec<AlgebraElement> = rho(&group)?.coeffs.into_iter().filter(|e| !e.is_zero()).collect();
    let big_e: Vec<AlgebraElement> = eulerian_basis(&group, EulerianFlavor::Interior)?.into_iter().map(|p| p.1).collect();
    let (equal, de, di) = same_span(&group, &big_e, &ids);
    let want = n.div_ceil(2);
    Ok(vec![
        check(format!("rho(x)rho(y) = rho(xy) A{n}"), rep.mismatches.is_empty()),
        check(format!("wrong-parity rho coefficients vanish A{n}"), rep.wrong_parity.is_empty()),
        check(format!("span of E_i equals span of e_i A{n}"), equal),
        check(format!("Eulerian dimension A{n}"), de == want && di == want && ids.len() == want),
    ])
}

fn battery(stat: NegativeStatistic, n_max: usize, conclusive: bool) -> peakalg::Result<Vec<Check>> {
    let r = search_violation(stat, n_max)?;
    let mut c = check(format!("{} is not closed", stat.name()), !r.closed);
    if r.closed {
        c.detail = format!("closed for every n <= {}", r.n);
        if !conclusive {
            c.status = Status::Skipped;
        }
    } else {
        c.detail = format!("witness at n = {}", r.n);
    }
    Ok(vec![c])
}

fn oracles(n: usize) -> peakalg::Result<Vec<Check>> {
    let mut ok = true;
    for pi in Permutation::all(n) {
        let omega = order_polynomial_of(&pi)?;
        for k in [n + 1, n + 2] {
            let x = num_rational::BigRational::from_integer(k.into());
            ok &= omega.eval(&x) == num_rational::BigRational::from_integer(count_epp(&pi, &Alphabet::prime(k))?.into());
        }
    }
    Ok(vec![check(format!("order polynomials out of sample A{n}"), ok)])
}

fn quasi_shuffles(max_degree: usize) -> peakalg::Result<Vec<Check>> {
    let mut out = Vec::new();
    for type_b in [false, true] {
        let comps: Vec<Composition> = (0..=max_degree).flat_map(|d| Composition::all(d, type_b)).collect();
        let mut ok = true;
        for a in &comps {
            for b in &comps {
                let ea = QSymElement::basis_element(a.clone(), Basis::M);
                let eb = QSymElement::basis_element(b.clone(), Basis::M);
                ok &= ea.quasi_shuffle(&eb)?.truncate(3) == poly_mul(&ea.truncate(3), &eb.truncate(3));
            }
        }
        out.push(check(format!("quasi-shuffle matches truncation (typeB {type_b}, degree <= {max_degree})"), ok));
    }
    Ok(out)
}

pub fn run(n_max: usize, n_max_b: usize, k: usize, strict: bool, g: &Global) -> Report {
    let seed = g.seed;
    let mut tasks: Vec<Task> = vec![Box::new(|| guarded("examples".into(), examples))];
    for n in 1..=n_max {
        tasks.push(Box::new(move || guarded(format!("interior ranks {n}"), || ranks(n, Flavor::InteriorPeak))));
        tasks.push(Box::new(move || guarded(format!("left ranks {n}"), || ranks(n, Flavor::LeftPeak))));
    }
    for n in 1..=n_max_b {
        tasks.push(Box::new(move || guarded(format!("typeB ranks {n}"), || ranks(n, Flavor::TypeBPeak))));
    }
    for n in 1..=n_max.min(6) {
        tasks.push(Box::new(move || guarded(format!("additivity A{n}"), || additivity(n, Kind::A, k, seed))));
    }
    for n in 1..=n_max_b.min(5) {
        tasks.push(Box::new(move || guarded(format!("additivity B{n}"), || additivity(n, Kind::B, k, seed))));
    }
    for n in 1..=n_max.min(5) {
        tasks.push(Box::new(move || guarded(format!("expansions A{n}"), || expansions(n, Kind::A))));
    }
    for n in 1..=n_max_b.min(4) {
        tasks.push(Box::new(move || guarded(format!("expansions B{n}"), || expansions(n, Kind::B))));
    }
    for n in 1..=n_max.min(4) {
        tasks.push(Box::new(move || guarded(format!("bipartite A{n}"), || bipartite(n, Kind::A, k))));
    }
    for n in 1..=n_max_b.min(3) {
        tasks.push(Box::new(move || guarded(format!("bipartite B{n}"), || bipartite(n, Kind::B, k))));
    }
    for n in 1..=n_max.min(5) {
        tasks.push(Box::new(move || guarded(format!("algebra A{n}"), || algebra(n, Kind::A, g))));
    }
    for n in 1..=n_max_b.min(4) {
        tasks.push(Box::new(move || guarded(format!("algebra B{n}"), || algebra(n, Kind::B, g))));
    }
    for n in 1..=n_max.min(6) {
        tasks.push(Box::new(move || guarded(format!("eulerian A{n}"), || eulerian(n))));
    }
    for stat in NegativeStatistic::BATTERY {
        let (bound, full) = match stat.kind() {
            Kind::A => (n_max.min(6), 6),
            Kind::B => (n_max_b.min(5), 5),
        };
        tasks.push(Box::new(move || guarded(stat.name().into(), || battery(stat, bound, bound >= full))));
    }
    if n_max >= 4 {
        tasks.push(Box::new(|| {
            guarded("right peak number".into(), || {
                let rc = right_number_closure(4)?;
                let mut c = check("right peak number sums generate a proper subalgebra A4", rc.proper());
                c.detail = format!("dimension {} of {}", rc.closure_dim, rc.group_order);
                Ok(vec![c])
            })
        }));
    }
    for n in 1..=n_max.min(5) {
        tasks.push(Box::new(move || guarded(format!("order polynomials A{n}"), || oracles(n))));
    }
    tasks.push(Box::new(move || guarded("quasi-shuffle".into(), || quasi_shuffles(n_max.min(4)))));

    let checks: Vec<Check> = tasks.par_iter().map(|t| t()).collect::<Vec<_>>().concat();
    summarize(checks, n_max, n_max_b, k, strict, seed)
}

fn summarize(checks: Vec<Check>, n_max: usize, n_max_b: usize, k: usize, strict: bool, seed: u64) -> Report {
    let count = |s: Status| checks.iter().filter(|c| c.status == s).count();
    let (passed, failed, gaps, skipped) = (
        count(Status::Pass),
        count(Status::Fail),
        count(Status::KnownGap),
        count(Status::Skipped),
    );
    let ok = failed == 0 && (!strict || gaps == 0);
    let mut text = String::new();
    let mut table = Table::new(&["name", "status", "detail"]);
    for c in &checks {
        let tag = match c.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::KnownGap => "GAP ",
            Status::Skipped => "SKIP",
        };
        if c.detail.is_empty() {
            writeln!(text, "{tag} {}", c.name).unwrap();
        } else {
            writeln!(text, "{tag} {} ({})", c.name, c.detail).unwrap();
        }
        table.push(vec![
            c.name.clone(),
            serde_json::to_value(c.status).unwrap().as_str().unwrap().to_string(),
            c.detail.clone(),
        ]);
    }
    writeln!(
        text,
        "verify: {passed} passed, {failed} failed, {gaps} known gaps, {skipped} skipped"
    )
    .unwrap();
    Report {
        json: json!({
            "nMax": n_max,
            "nMaxB": n_max_b,
            "k": k,
            "seed": seed,
            "strict": strict,
            "passed": passed,
            "failed": failed,
            "knownGaps": gaps,
            "skipped": skipped,
            "checks": checks,
        }),
        text,
        table,
        ok,
    }
}
