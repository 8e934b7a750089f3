//! Exact group algebras `ℚ[S_n]` and `ℚ[B_n]`: convolution, class sums,
//! factorization-count structure constants, and span/closure checks.
//!
//! Convolution is fixed as `(u·w)(π) = Σ_{στ=π} u(τ)·w(σ)`, so
//! `δ_τ · δ_σ = δ_{στ}` and `v_A · v_B = Σ_C c_{A,B}^C v_C` with
//! `c_{A,B}^C = #{(σ,τ) : στ = π, stat(τ) = A, stat(σ) = B}`.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enriched::{census_epp, census_epp_b, census_epp_product, Alphabet, Census, ProductFlavor};
use crate::error::{Error, Result};
use crate::linalg::SpanBasis;
use crate::perm_stats::{
    compose_windows, descent_set, group_order, inverse_window, lex_rank, lex_unrank, peak_set,
    signed_rank, signed_unrank, Flavor, Kind, Permutation, SignedPermutation, StatSet, Window,
};

/// Multiplication tables are built only up to this group order.
const TABLE_LIMIT: usize = 3840;

struct Slice<'a>(&'a [i32]);

impl Window for Slice<'_> {
    fn window(&self) -> &[i32] {
        self.0
    }
}

/// The elements of `S_n` or `B_n`, indexed by rank.
pub struct Group {
    n: usize,
    kind: Kind,
    order: usize,
    windows: Vec<i32>,
    inverses: Vec<u32>,
    table: OnceLock<Vec<u32>>,
}

impl Group {
    pub fn new(n: usize, kind: Kind) -> Self {
        let order = group_order(n, kind);
        let mut windows = Vec::with_capacity(order * n);
        for r in 0..order {
            match kind {
                Kind::A => windows.extend(lex_unrank(n, r)),
                Kind::B => windows.extend(signed_unrank(n, r)),
            }
        }
        let mut g = Self {
            n,
            kind,
            order,
            windows,
            inverses: Vec::new(),
            table: OnceLock::new(),
        };
        g.inverses = (0..order)
            .map(|r| g.rank_of(&inverse_window(g.window(r))) as u32)
            .collect();
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn window(&self, rank: usize) -> &[i32] {
        &self.windows[rank * self.n..(rank + 1) * self.n]
    }

    pub fn rank_of(&self, w: &[i32]) -> usize {
        match self.kind {
            Kind::A => lex_rank(w),
            Kind::B => signed_rank(w),
        }
    }

    /// The identity always has rank 0.
    pub fn identity(&self) -> usize {
        0
    }

    pub fn inverse(&self, rank: usize) -> usize {
        self.inverses[rank] as usize
    }

    fn compose_direct(&self, sigma: usize, tau: usize) -> usize {
        self.rank_of(&compose_windows(self.window(sigma), self.window(tau)))
    }

    /// Rank of `σ∘τ`.
    pub fn mul(&self, sigma: usize, tau: usize) -> usize {
        if self.order > TABLE_LIMIT {
            return self.compose_direct(sigma, tau);
        }
        let table = self.table.get_or_init(|| {
            (0..self.order * self.order)
                .into_par_iter()
                .map(|i| self.compose_direct(i / self.order, i % self.order) as u32)
                .collect()
        });
        table[sigma * self.order + tau] as usize
    }

    /// Statistic of the element with the given rank.
    pub fn stat(&self, rank: usize, flavor: Flavor) -> StatSet {
        let w = Slice(self.window(rank));
        if flavor.is_peak() {
            peak_set(&w, flavor).expect("peak flavor")
        } else {
            descent_set(&w, flavor).expect("descent flavor")
        }
    }

    fn check_flavor(&self, flavor: Flavor) -> Result<()> {
        if self.kind == Kind::A && matches!(flavor, Flavor::TypeBPeak | Flavor::DescentB) {
            return Err(Error::FlavorMismatch {
                flavor,
                operation: "statistic on S_n",
            });
        }
        Ok(())
    }

    /// Partition of the group by a statistic; classes sorted by their sets.
    pub fn classify(&self, flavor: Flavor) -> Result<Classification> {
        self.check_flavor(flavor)?;
        let stats: Vec<StatSet> = (0..self.order).map(|r| self.stat(r, flavor)).collect();
        let mut sets: Vec<StatSet> = stats.clone();
        sets.sort();
        sets.dedup();
        let index = stats
            .iter()
            .map(|s| sets.binary_search(s).expect("present") as u32)
            .collect();
        Ok(Classification { sets, index })
    }

    /// Partition by the number of peaks of a flavor; classes sorted by count.
    pub fn classify_by_count(&self, flavor: Flavor) -> Result<(Vec<usize>, Vec<u32>)> {
        self.check_flavor(flavor)?;
        let counts: Vec<usize> = (0..self.order).map(|r| self.stat(r, flavor).len()).collect();
        let mut realized = counts.clone();
        realized.sort_unstable();
        realized.dedup();
        let index = counts
            .iter()
            .map(|c| realized.binary_search(c).expect("present") as u32)
            .collect();
        Ok((realized, index))
    }
}

/// Realized classes of a statistic and the class index of every rank.
#[derive(Debug, Clone)]
pub struct Classification {
    pub sets: Vec<StatSet>,
    pub index: Vec<u32>,
}

impl Classification {
    pub fn position(&self, set: &StatSet) -> Option<usize> {
        self.sets.binary_search(set).ok()
    }
}

/// A finitely supported rational combination of group elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    pub n: usize,
    pub kind: Kind,
    coeffs: BTreeMap<usize, BigRational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraTermJson {
    pub rank: usize,
    pub coeff: String,
}

impl AlgebraElement {
    pub fn zero(n: usize, kind: Kind) -> Self {
        Self {
            n,
            kind,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn delta(group: &Group, rank: usize) -> Self {
        let mut e = Self::zero(group.n, group.kind);
        e.add_term(rank, BigRational::one());
        e
    }

    pub fn unit(group: &Group) -> Self {
        Self::delta(group, group.identity())
    }

    /// Builds an element from `(rank, coefficient)` pairs.
    pub fn from_terms(n: usize, kind: Kind, terms: impl IntoIterator<Item = (usize, BigRational)>) -> Self {
        let mut e = Self::zero(n, kind);
        for (r, c) in terms {
            e.add_term(r, c);
        }
        e
    }

    pub fn from_dense(group: &Group, v: &[BigRational]) -> Self {
        Self::from_terms(
            group.n,
            group.kind,
            v.iter().enumerate().map(|(r, c)| (r, c.clone())),
        )
    }

    pub fn add_term(&mut self, rank: usize, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(rank).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&rank);
        }
    }

    pub fn coeff(&self, rank: usize) -> BigRational {
        self.coeffs.get(&rank).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> &BTreeMap<usize, BigRational> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::SizeMismatch {
                left: self.n,
                right: other.n,
            });
        }
        if self.kind != other.kind {
            return Err(Error::KindMismatch {
                expected: self.kind,
                found: other.kind,
            });
        }
        Ok(())
    }

    fn check_group(&self, group: &Group) -> Result<()> {
        self.check_same(&Self::zero(group.n, group.kind))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (&r, c) in &other.coeffs {
            out.add_term(r, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_terms(self.n, self.kind, self.coeffs.iter().map(|(&r, v)| (r, v * c)))
    }

    /// Dense coefficient vector indexed by rank.
    pub fn to_dense(&self, group: &Group) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); group.order];
        for (&r, c) in &self.coeffs {
            v[r] = c.clone();
        }
        v
    }

    /// `(self·other)(π) = Σ_{στ=π} self(τ)·other(σ)`.
    pub fn convolve(&self, other: &Self, group: &Group) -> Result<Self> {
        self.check_same(other)?;
        self.check_group(group)?;
        let (u, du) = integral_terms(self);
        let (w, dw) = integral_terms(other);
        let mut acc = vec![BigInt::zero(); group.order];
        let mut touched = vec![false; group.order];
        for (tau, a) in &u {
            for (sigma, b) in &w {
                let p = group.mul(*sigma, *tau);
                acc[p] += a * b;
                touched[p] = true;
            }
        }
        let denom = du * dw;
        Ok(Self::from_terms(
            self.n,
            self.kind,
            acc.into_iter()
                .enumerate()
                .filter(|(p, _)| touched[*p])
                .map(|(p, x)| (p, BigRational::new(x, denom.clone()))),
        ))
    }

    pub fn to_json(&self) -> Vec<AlgebraTermJson> {
        self.coeffs
            .iter()
            .map(|(&rank, c)| AlgebraTermJson {
                rank,
                coeff: c.to_string(),
            })
            .collect()
    }

    /// Human-readable `coeff·[window]` listing.
    pub fn describe(&self, group: &Group) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        self.coeffs
            .iter()
            .map(|(&r, c)| {
                let w: Vec<String> = group.window(r).iter().map(i32::to_string).collect();
                format!("{c}·({})", w.join(","))
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Integer numerators over a common denominator.
fn integral_terms(e: &AlgebraElement) -> (Vec<(usize, BigInt)>, BigInt) {
    let d = e.coeffs.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let terms = e
        .coeffs
        .iter()
        .map(|(&r, c)| (r, c.numer() * (&d / c.denom())))
        .collect();
    (terms, d)
}

fn class_sum_from(group: &Group, index: &[u32], class: usize) -> AlgebraElement {
    AlgebraElement::from_terms(
        group.n,
        group.kind,
        index
            .iter()
            .enumerate()
            .filter(|(_, &c)| c as usize == class)
            .map(|(r, _)| (r, BigRational::one())),
    )
}

/// `v_I`: the sum of all elements whose statistic equals `set`.
pub fn class_sum(group: &Group, set: &StatSet) -> Result<AlgebraElement> {
    group.check_flavor(set.flavor)?;
    let checked = StatSet::new(set.members.clone(), set.flavor, group.n)?;
    Ok(AlgebraElement::from_terms(
        group.n,
        group.kind,
        (0..group.order)
            .filter(|&r| group.stat(r, set.flavor) == checked)
            .map(|r| (r, BigRational::one())),
    ))
}

/// Class sums of every realized class of a statistic, in class order.
pub fn class_sums(group: &Group, flavor: Flavor) -> Result<Vec<(StatSet, AlgebraElement)>> {
    let cl = group.classify(flavor)?;
    Ok(cl
        .sets
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), class_sum_from(group, &cl.index, i)))
        .collect())
}

/// Sums of elements sharing a peak count, one per realized count.
pub fn count_sums(group: &Group, flavor: Flavor) -> Result<Vec<(usize, AlgebraElement)>> {
    let (counts, index) = group.classify_by_count(flavor)?;
    Ok(counts
        .iter()
        .enumerate()
        .map(|(i, &c)| (c, class_sum_from(group, &index, i)))
        .collect())
}

/// `(A, B, C)` keyed factorization counts of a statistic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureTable {
    pub flavor: Flavor,
    pub n: usize,
    pub entries: BTreeMap<(Vec<i32>, Vec<i32>, Vec<i32>), u64>,
}

pub const STRUCTURE_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureEntryJson {
    #[serde(rename = "A")]
    pub a: Vec<i32>,
    #[serde(rename = "B")]
    pub b: Vec<i32>,
    #[serde(rename = "C")]
    pub c: Vec<i32>,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureTableJson {
    #[serde(rename = "formatVersion")]
    pub format_version: u32,
    pub flavor: String,
    pub n: usize,
    pub entries: Vec<StructureEntryJson>,
}

/// Counts `(A, B) ↦ #{τ : stat(τ) = A, stat(π τ⁻¹) = B}` for one `π`.
fn factorization_counts(group: &Group, cl: &Classification, pi: usize) -> Vec<u64> {
    let m = cl.sets.len();
    let mut counts = vec![0u64; m * m];
    for tau in 0..group.order {
        let sigma = group.mul(pi, group.inverse(tau));
        let a = cl.index[tau] as usize;
        let b = cl.index[sigma] as usize;
        counts[a * m + b] += 1;
    }
    counts
}

impl StructureTable {
    /// Counts from the first representative of each class.
    pub fn compute(group: &Group, flavor: Flavor) -> Result<Self> {
        let cl = group.classify(flavor)?;
        let m = cl.sets.len();
        let reps: Vec<usize> = (0..m)
            .map(|c| cl.index.iter().position(|&i| i as usize == c).expect("realized"))
            .collect();
        let rows: Vec<Vec<u64>> = reps
            .par_iter()
            .map(|&pi| factorization_counts(group, &cl, pi))
            .collect();
        let mut entries = BTreeMap::new();
        for (c, row) in rows.iter().enumerate() {
            for a in 0..m {
                for b in 0..m {
                    let k = row[a * m + b];
                    if k > 0 {
                        let key = (
                            cl.sets[a].members.clone(),
                            cl.sets[b].members.clone(),
                            cl.sets[c].members.clone(),
                        );
                        entries.insert(key, k);
                    }
                }
            }
        }
        Ok(Self {
            flavor,
            n: group.n,
            entries,
        })
    }

    pub fn get(&self, a: &[i32], b: &[i32], c: &[i32]) -> u64 {
        self.entries
            .get(&(a.to_vec(), b.to_vec(), c.to_vec()))
            .copied()
            .unwrap_or(0)
    }

    /// Re-counts from every element of every class; returns the ranks whose
    /// counts disagree with the table.
    pub fn audit(&self, group: &Group) -> Result<Vec<usize>> {
        let cl = group.classify(self.flavor)?;
        let m = cl.sets.len();
        let mut bad: Vec<usize> = (0..group.order)
            .into_par_iter()
            .filter(|&pi| {
                let counts = factorization_counts(group, &cl, pi);
                let c = &cl.sets[cl.index[pi] as usize].members;
                (0..m * m).any(|ab| {
                    let (a, b) = (ab / m, ab % m);
                    counts[ab] != self.get(&cl.sets[a].members, &cl.sets[b].members, c)
                })
            })
            .collect();
        bad.sort_unstable();
        Ok(bad)
    }

    /// Whether `c_{A,B}^C = c_{B,A}^C` for all entries.
    pub fn is_symmetric(&self) -> bool {
        self.entries
            .iter()
            .all(|((a, b, c), &k)| self.get(b, a, c) == k)
    }

    pub fn to_json(&self) -> StructureTableJson {
        StructureTableJson {
            format_version: STRUCTURE_FORMAT_VERSION,
            flavor: self.flavor.name().to_string(),
            n: self.n,
            entries: self
                .entries
                .iter()
                .map(|((a, b, c), &count)| StructureEntryJson {
                    a: a.clone(),
                    b: b.clone(),
                    c: c.clone(),
                    count,
                })
                .collect(),
        }
    }

    pub fn from_json(j: &StructureTableJson) -> Result<Self> {
        if j.format_version != STRUCTURE_FORMAT_VERSION {
            return Err(Error::Cache(format!(
                "structure table format {} (expected {STRUCTURE_FORMAT_VERSION})",
                j.format_version
            )));
        }
        let flavor: Flavor = j.flavor.parse()?;
        let entries = j
            .entries
            .iter()
            .map(|e| ((e.a.clone(), e.b.clone(), e.c.clone()), e.count))
            .collect();
        Ok(Self {
            flavor,
            n: j.n,
            entries,
        })
    }
}

pub fn structure_cache_path(dir: &Path, flavor: Flavor, n: usize) -> PathBuf {
    dir.join(format!("structure-{}-{n}.json", flavor.name()))
}

/// Loads a cached table or computes and stores it. A cache file that fails to
/// parse or has another format version is recomputed and overwritten.
pub fn structure_constants_cached(group: &Group, flavor: Flavor, dir: &Path) -> Result<StructureTable> {
    let path = structure_cache_path(dir, flavor, group.n);
    if let Ok(text) = fs::read_to_string(&path) {
        if let Ok(j) = serde_json::from_str::<StructureTableJson>(&text) {
            if let Ok(t) = StructureTable::from_json(&j) {
                if t.flavor == flavor && t.n == group.n {
                    return Ok(t);
                }
            }
        }
    }
    let table = StructureTable::compute(group, flavor)?;
    fs::create_dir_all(dir).map_err(|e| Error::Cache(format!("cannot create directory: {e}")))?;
    let text = serde_json::to_string(&table.to_json()).expect("serializable");
    let tmp = path.with_extension("json.tmp");
    fs::write(&tmp, text)
        .and_then(|_| fs::rename(&tmp, &path))
        .map_err(|e| Error::Cache(format!("cannot write {}: {e}", path.display())))?;
    Ok(table)
}

/// Result of comparing `v_A · v_B` with the structure-table expansion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub flavor: Flavor,
    pub n: usize,
    pub pairs_checked: usize,
    /// `(A, B)` pairs whose product disagrees with the table.
    pub failures: Vec<(Vec<i32>, Vec<i32>)>,
    /// Ranks whose factorization counts disagree with their class representative.
    pub audit_failures: Vec<usize>,
    pub symmetric: bool,
}

impl DualityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.audit_failures.is_empty()
    }
}

pub fn verify_duality(group: &Group, table: &StructureTable) -> Result<DualityReport> {
    let sums = class_sums(group, table.flavor)?;
    let pairs: Vec<(usize, usize)> = (0..sums.len())
        .flat_map(|a| (0..sums.len()).map(move |b| (a, b)))
        .collect();
    let results: Vec<Result<Option<(Vec<i32>, Vec<i32>)>>> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let (sa, va) = &sums[a];
            let (sb, vb) = &sums[b];
            let lhs = va.convolve(vb, group)?;
            let mut rhs = AlgebraElement::zero(group.n, group.kind);
            for (sc, vc) in &sums {
                let k = table.get(&sa.members, &sb.members, &sc.members);
                if k > 0 {
                    rhs = rhs.add(&vc.scale(&BigRational::from_integer(k.into())))?;
                }
            }
            Ok((lhs != rhs).then(|| (sa.members.clone(), sb.members.clone())))
        })
        .collect();
    let mut failures = Vec::new();
    for r in results {
        if let Some(f) = r? {
            failures.push(f);
        }
    }
    Ok(DualityReport {
        flavor: table.flavor,
        n: group.n,
        pairs_checked: pairs.len(),
        failures,
        audit_failures: table.audit(group)?,
        symmetric: table.is_symmetric(),
    })
}

/// A product escaping a span.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    /// Indices into the checked basis; the product is `basis[left] · basis[right]`.
    pub left: usize,
    pub right: usize,
    pub product: AlgebraElement,
    /// Primitive integer residual after projection, sparse by rank.
    pub residual: Vec<(usize, BigInt)>,
}

#[derive(Debug, Clone)]
pub struct ClosureReport {
    pub closed: bool,
    /// Dimension of the span of the input basis.
    pub dim: usize,
    /// For a closed span: `basis[i]·basis[j] = Σ c_k basis[k]` for every pair.
    pub expansions: Vec<((usize, usize), Vec<BigRational>)>,
    pub witness: Option<Witness>,
}

fn span_of(group: &Group, basis: &[AlgebraElement]) -> Result<SpanBasis> {
    let mut span = SpanBasis::new(group.order);
    for b in basis {
        b.check_group(group)?;
        span.insert(&b.to_dense(group));
    }
    Ok(span)
}

fn sparse_residual(residual: Vec<BigInt>) -> Vec<(usize, BigInt)> {
    residual
        .into_iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .collect()
}

/// Checks whether `left_factors[i] · right_factors[j]` (and, if `both_orders`,
/// `right · left`) lie in `span(target)`, stopping at the first violation.
fn products_in_span(
    group: &Group,
    span: &SpanBasis,
    left_factors: &[AlgebraElement],
    right_factors: &[AlgebraElement],
    both_orders: bool,
) -> Result<(Vec<((usize, usize), Vec<BigRational>)>, Option<Witness>)> {
    let mut expansions = Vec::new();
    for (i, x) in left_factors.iter().enumerate() {
        for (j, y) in right_factors.iter().enumerate() {
            let mut products = vec![x.convolve(y, group)?];
            if both_orders {
                products.push(y.convolve(x, group)?);
            }
            for product in products {
                let red = span.reduce(&product.to_dense(group));
                match red.coeffs {
                    Some(c) => expansions.push(((i, j), c)),
                    None => {
                        return Ok((
                            expansions,
                            Some(Witness {
                                left: i,
                                right: j,
                                product,
                                residual: sparse_residual(red.residual),
                            }),
                        ))
                    }
                }
            }
        }
    }
    Ok((expansions, None))
}

/// Whether `span(basis)` is closed under convolution.
pub fn closure_check(group: &Group, basis: &[AlgebraElement]) -> Result<ClosureReport> {
    let span = span_of(group, basis)?;
    let (expansions, witness) = products_in_span(group, &span, basis, basis, false)?;
    Ok(ClosureReport {
        closed: witness.is_none(),
        dim: span.rank(),
        expansions: if witness.is_none() { expansions } else { Vec::new() },
        witness,
    })
}

/// Whether `span(inner)` absorbs products with `outer` on both sides. The
/// witness indices are `(inner, outer)`.
pub fn ideal_check(group: &Group, inner: &[AlgebraElement], outer: &[AlgebraElement]) -> Result<(bool, Option<Witness>)> {
    let span = span_of(group, inner)?;
    let (_, witness) = products_in_span(group, &span, inner, outer, true)?;
    Ok((witness.is_none(), witness))
}

/// The subalgebra (without unit) generated by `basis`.
#[derive(Debug, Clone)]
pub struct GeneratedAlgebra {
    pub input_dim: usize,
    pub dim: usize,
    pub rounds: usize,
    pub basis: Vec<AlgebraElement>,
}

/// Closes `span(basis)` under convolution by iterating to a fixed point.
pub fn multiplicative_closure(group: &Group, basis: &[AlgebraElement]) -> Result<GeneratedAlgebra> {
    let mut span = SpanBasis::new(group.order);
    let mut members: Vec<AlgebraElement> = Vec::new();
    for b in basis {
        b.check_group(group)?;
        if span.insert(&b.to_dense(group)) {
            members.push(b.clone());
        }
    }
    let input_dim = members.len();
    let mut fresh_from = 0;
    let mut rounds = 0;
    while fresh_from < members.len() {
        rounds += 1;
        let old = members.len();
        let mut pending = Vec::new();
        for i in 0..old {
            for j in 0..old {
                if i < fresh_from && j < fresh_from {
                    continue;
                }
                pending.push(members[i].convolve(&members[j], group)?);
            }
        }
        for p in pending {
            if span.insert(&p.to_dense(group)) {
                members.push(p);
            }
        }
        fresh_from = old;
    }
    Ok(GeneratedAlgebra {
        input_dim,
        dim: members.len(),
        rounds,
        basis: members,
    })
}

/// Every peak-class sum is an integer combination of descent-class sums.
pub fn descent_algebra_containment(group: &Group, peak_flavor: Flavor) -> Result<bool> {
    let descent = match group.kind {
        Kind::A => Flavor::DescentA,
        Kind::B => Flavor::DescentB,
    };
    let des = class_sums(group, descent)?;
    let des_elems: Vec<AlgebraElement> = des.into_iter().map(|(_, e)| e).collect();
    let span = span_of(group, &des_elems)?;
    for (_, v) in class_sums(group, peak_flavor)? {
        match span.reduce(&v.to_dense(group)).coeffs {
            Some(c) if c.iter().all(|x| x.is_integer()) => {}
            _ => return Ok(false),
        }
    }
    Ok(true)
}

/// Closure of the descent-class span (the classical baseline).
pub fn solomon_baseline(group: &Group) -> Result<ClosureReport> {
    let descent = match group.kind {
        Kind::A => Flavor::DescentA,
        Kind::B => Flavor::DescentB,
    };
    let basis: Vec<AlgebraElement> = class_sums(group, descent)?.into_iter().map(|(_, e)| e).collect();
    closure_check(group, &basis)
}

/// Both sides of the bipartite census identity for `π`: the product-alphabet
/// census, and `Σ_{στ=π} census(τ; S) ⊗ census(σ; T)`.
pub fn bipartite_censuses(
    group: &Group,
    pi: usize,
    s: &Alphabet,
    t: &Alphabet,
    flavor: ProductFlavor,
) -> Result<(Census, Census)> {
    let signed = SignedPermutation::new(group.window(pi).to_vec())?;
    let lhs = census_epp_product(&signed, s, t, flavor)?;
    let mut rhs = Census::new(lhs.n_vars);
    for tau in 0..group.order {
        let sigma = group.mul(pi, group.inverse(tau));
        let (ct, cs) = match flavor {
            ProductFlavor::TypeB => (
                census_epp_b(&SignedPermutation::new(group.window(tau).to_vec())?, s)?,
                census_epp_b(&SignedPermutation::new(group.window(sigma).to_vec())?, t)?,
            ),
            _ => (
                census_epp(&Permutation::new(group.window(tau).to_vec())?, s)?,
                census_epp(&Permutation::new(group.window(sigma).to_vec())?, t)?,
            ),
        };
        rhs.merge(&ct.tensor(&cs));
    }
    Ok((lhs, rhs))
}
