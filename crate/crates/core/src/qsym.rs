//! Type A and type B quasisymmetric functions in the monomial (`M`) and
//! fundamental (`F`) bases, with exact rational coefficients.
//!
//! Keys are compositions (type A) or pseudo-compositions (type B); the subset
//! view `I(α)` comes from [`Composition::to_subset`]. Refinement `α ≤ β` is
//! containment `I(α) ⊆ I(β)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::enriched::Census;
use crate::error::{Error, Result};
use crate::linalg::SpanBasis;
use crate::perm_stats::{Composition, Flavor, StatSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Basis {
    M,
    F,
}

/// A finitely supported combination of `M_α` or `F_α`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSymElement {
    type_b: bool,
    basis: Basis,
    coeffs: BTreeMap<Composition, BigRational>,
}

/// Truncated polynomial: exponent vector (slot 0 is `x₀`) to coefficient.
pub type Polynomial = BTreeMap<Vec<u8>, BigRational>;

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn pow2(e: usize) -> BigRational {
    BigRational::from_integer(BigInt::one() << e)
}

impl QSymElement {
    pub fn zero(type_b: bool, basis: Basis) -> Self {
        Self {
            type_b,
            basis,
            coeffs: BTreeMap::new(),
        }
    }

    /// The unit: `M_()` in type A, `M_(0)` in type B.
    pub fn one(type_b: bool) -> Self {
        let key = Composition {
            parts: if type_b { vec![0] } else { vec![] },
            type_b,
        };
        Self::basis_element(key, Basis::M)
    }

    pub fn basis_element(key: Composition, basis: Basis) -> Self {
        let mut e = Self::zero(key.type_b, basis);
        e.coeffs.insert(key, BigRational::one());
        e
    }

    pub fn type_b(&self) -> bool {
        self.type_b
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> &BTreeMap<Composition, BigRational> {
        &self.coeffs
    }

    pub fn coeff(&self, key: &Composition) -> BigRational {
        self.coeffs.get(key).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Adds `c · key`; the key must match this element's type.
    pub fn add_term(&mut self, key: Composition, c: BigRational) {
        debug_assert_eq!(key.type_b, self.type_b);
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(key).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.retain(|_, v| !v.is_zero());
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.type_b != other.type_b || self.basis != other.basis {
            return Err(Error::BasisMismatch(format!(
                "({:?}, type B {}) vs ({:?}, type B {})",
                self.basis, self.type_b, other.basis, other.type_b
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero(self.type_b, self.basis);
        for (k, v) in &self.coeffs {
            out.add_term(k.clone(), v * c);
        }
        out
    }

    /// Degrees present in the support.
    pub fn degrees(&self) -> BTreeSet<usize> {
        self.coeffs.keys().map(Composition::size).collect()
    }

    /// Whether every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }

    /// Change of basis `M → F` via `M_α = Σ_{α ≤ β} (-1)^{l(β)-l(α)} F_β`.
    pub fn m_to_f(&self) -> Result<Self> {
        if self.basis != Basis::M {
            return Err(Error::BasisMismatch("m_to_f expects the M basis".into()));
        }
        Ok(self.change_basis(Basis::F, true))
    }

    /// Change of basis `F → M` via `F_α = Σ_{α ≤ β} M_β`.
    pub fn f_to_m(&self) -> Result<Self> {
        if self.basis != Basis::F {
            return Err(Error::BasisMismatch("f_to_m expects the F basis".into()));
        }
        Ok(self.change_basis(Basis::M, false))
    }

    /// Returns this element in the M basis, converting if needed.
    pub fn to_m(&self) -> Self {
        match self.basis {
            Basis::M => self.clone(),
            Basis::F => self.change_basis(Basis::M, false),
        }
    }

    pub fn to_f(&self) -> Self {
        match self.basis {
            Basis::F => self.clone(),
            Basis::M => self.change_basis(Basis::F, true),
        }
    }

    fn change_basis(&self, target: Basis, alternating: bool) -> Self {
        let mut out = Self::zero(self.type_b, target);
        for (alpha, c) in &self.coeffs {
            let n = alpha.size();
            let base = alpha.to_subset();
            for extra in supersets(&base, ambient(n, self.type_b)) {
                let sign = if alternating && (extra.len() - base.len()) % 2 == 1 {
                    -c.clone()
                } else {
                    c.clone()
                };
                let key = Composition::from_subset(&extra, n, self.type_b)
                    .expect("superset stays in the ambient interval");
                out.add_term(key, sign);
            }
        }
        out
    }

    /// Product in the M basis. Type A uses the quasi-shuffle of parts; type B
    /// adds the first (`x₀`) parts and quasi-shuffles the rest.
    pub fn quasi_shuffle(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        if self.basis != Basis::M {
            return Err(Error::BasisMismatch("quasi_shuffle expects the M basis".into()));
        }
        let mut out = Self::zero(self.type_b, Basis::M);
        for (a, ca) in &self.coeffs {
            for (b, cb) in &other.coeffs {
                let c = ca * cb;
                if self.type_b {
                    let head = a.parts[0] + b.parts[0];
                    for tail in stuffle(&a.parts[1..], &b.parts[1..]) {
                        let mut parts = Vec::with_capacity(tail.len() + 1);
                        parts.push(head);
                        parts.extend(tail);
                        out.add_term(Composition { parts, type_b: true }, c.clone());
                    }
                } else {
                    for parts in stuffle(&a.parts, &b.parts) {
                        out.add_term(Composition { parts, type_b: false }, c.clone());
                    }
                }
            }
        }
        Ok(out)
    }

    /// Evaluation at `x₁..x_k` (and `x₀` for type B), all other variables
    /// zero. Exponent vectors have `k + 1` slots; slot 0 is `x₀` and is always
    /// zero for type A.
    pub fn truncate(&self, k: usize) -> Polynomial {
        let m = self.to_m();
        let mut out = Polynomial::new();
        for (alpha, c) in &m.coeffs {
            let (head, tail) = if self.type_b {
                (alpha.parts[0], &alpha.parts[1..])
            } else {
                (0, &alpha.parts[..])
            };
            for idx in increasing_tuples(tail.len(), k) {
                let mut e = vec![0u8; k + 1];
                e[0] = head as u8;
                for (&i, &p) in idx.iter().zip(tail) {
                    e[i] = p as u8;
                }
                add_poly_term(&mut out, e, c.clone());
            }
        }
        out
    }

    pub fn to_json(&self) -> QSymJson {
        QSymJson {
            basis: self.basis,
            type_b: self.type_b,
            terms: self
                .coeffs
                .iter()
                .map(|(k, c)| TermJson {
                    parts: k.parts.clone(),
                    coeff: c.to_string(),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &QSymJson) -> Result<Self> {
        let mut out = Self::zero(j.type_b, j.basis);
        for t in &j.terms {
            let key = Composition::new(t.parts.clone(), j.type_b)?;
            let c: BigRational = t
                .coeff
                .parse()
                .map_err(|_| Error::BasisMismatch(format!("bad coefficient {:?}", t.coeff)))?;
            out.add_term(key, c);
        }
        Ok(out)
    }
}

impl fmt::Display for QSymElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let name = match (self.basis, self.type_b) {
            (Basis::M, false) => "M",
            (Basis::F, false) => "F",
            (Basis::M, true) => "M_B",
            (Basis::F, true) => "F_B",
        };
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .map(|(k, c)| format!("{c}·{name}{k}"))
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub parts: Vec<u32>,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QSymJson {
    pub basis: Basis,
    #[serde(rename = "typeB")]
    pub type_b: bool,
    pub terms: Vec<TermJson>,
}

fn ambient(n: usize, type_b: bool) -> Vec<i32> {
    let lo = if type_b { 0 } else { 1 };
    (lo..n as i32).collect()
}

/// All subsets of `ambient` that contain `base`.
fn supersets(base: &[i32], ambient: Vec<i32>) -> Vec<Vec<i32>> {
    let free: Vec<i32> = ambient.into_iter().filter(|x| !base.contains(x)).collect();
    (0..1u64 << free.len())
        .map(|mask| {
            let mut s: Vec<i32> = base.to_vec();
            s.extend((0..free.len()).filter(|b| mask >> b & 1 == 1).map(|b| free[b]));
            s.sort_unstable();
            s
        })
        .collect()
}

fn all_subsets(ambient: &[i32]) -> Vec<Vec<i32>> {
    supersets(&[], ambient.to_vec())
}

fn add_poly_term(p: &mut Polynomial, e: Vec<u8>, c: BigRational) {
    let entry = p.entry(e.clone()).or_insert_with(BigRational::zero);
    *entry += c;
    if entry.is_zero() {
        p.remove(&e);
    }
}

/// Strictly increasing `len`-tuples from `1..=k`.
fn increasing_tuples(len: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn rec(start: usize, len: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for i in start..=k {
            cur.push(i);
            rec(i + 1, len, k, cur, out);
            cur.pop();
        }
    }
    rec(1, len, k, &mut cur, &mut out);
    out
}

/// Quasi-shuffle (stuffle) of two part sequences, with multiplicity.
pub fn stuffle(a: &[u32], b: &[u32]) -> Vec<Vec<u32>> {
    if a.is_empty() {
        return vec![b.to_vec()];
    }
    if b.is_empty() {
        return vec![a.to_vec()];
    }
    let mut out = Vec::new();
    for rest in stuffle(&a[1..], b) {
        let mut v = vec![a[0]];
        v.extend(rest);
        out.push(v);
    }
    for rest in stuffle(a, &b[1..]) {
        let mut v = vec![b[0]];
        v.extend(rest);
        out.push(v);
    }
    for rest in stuffle(&a[1..], &b[1..]) {
        let mut v = vec![a[0] + b[0]];
        v.extend(rest);
        out.push(v);
    }
    out
}

fn check_peak_set(peaks: &StatSet, n: usize, allowed: &[Flavor]) -> Result<()> {
    if !allowed.contains(&peaks.flavor) {
        return Err(Error::FlavorMismatch {
            flavor: peaks.flavor,
            operation: "peak function",
        });
    }
    StatSet::new(peaks.members.clone(), peaks.flavor, n).map(|_| ())
}

/// `E ∪ (E + 1)` contains every member of `peaks`.
fn covered_by_union(peaks: &[i32], e: &[i32]) -> bool {
    peaks
        .iter()
        .all(|p| e.contains(p) || e.contains(&(p - 1)))
}

/// `D △ (D + 1)` contains every member of `peaks`.
fn covered_by_symdiff(peaks: &[i32], d: &[i32]) -> bool {
    peaks.iter().all(|p| d.contains(p) != d.contains(&(p - 1)))
}

/// `K_I = Σ_{E ⊆ [n-1], I ⊆ E ∪ (E+1)} 2^{|E|+1} M_E` for an interior peak set `I`.
pub fn peak_function(peaks: &StatSet, n: usize) -> Result<QSymElement> {
    check_peak_set(peaks, n, &[Flavor::InteriorPeak])?;
    let mut out = QSymElement::zero(false, Basis::M);
    if n == 0 {
        return Ok(QSymElement::one(false));
    }
    for e in all_subsets(&ambient(n, false)) {
        if covered_by_union(&peaks.members, &e) {
            let key = Composition::from_subset(&e, n, false)?;
            out.add_term(key, pow2(e.len() + 1));
        }
    }
    Ok(out)
}

/// `K_I = 2^{|I|+1} Σ_{D ⊆ [n-1], I ⊆ D △ (D+1)} F_D`.
pub fn peak_function_f(peaks: &StatSet, n: usize) -> Result<QSymElement> {
    check_peak_set(peaks, n, &[Flavor::InteriorPeak])?;
    let mut out = QSymElement::zero(false, Basis::F);
    if n == 0 {
        return Ok(QSymElement::one(false).to_f());
    }
    let c = pow2(peaks.len() + 1);
    for d in all_subsets(&ambient(n, false)) {
        if covered_by_symdiff(&peaks.members, &d) {
            out.add_term(Composition::from_subset(&d, n, false)?, c.clone());
        }
    }
    Ok(out)
}

/// `K_{B,I} = Σ_{E ⊆ [0,n-1], I ⊆ E ∪ (E+1)} 2^{|E|} M_{B,E}`. Accepts type B
/// peak sets and left peak sets (the latter never contain `0`).
pub fn peak_function_b(peaks: &StatSet, n: usize) -> Result<QSymElement> {
    check_peak_set(peaks, n, &[Flavor::TypeBPeak, Flavor::LeftPeak])?;
    let mut out = QSymElement::zero(true, Basis::M);
    for e in all_subsets(&ambient(n, true)) {
        if covered_by_union(&peaks.members, &e) {
            out.add_term(Composition::from_subset(&e, n, true)?, pow2(e.len()));
        }
    }
    Ok(out)
}

/// `K_{B,I} = 2^{|I|} Σ_{D ⊆ [0,n-1], I ⊆ D △ (D+1)} F_{B,D}`.
pub fn peak_function_b_f(peaks: &StatSet, n: usize) -> Result<QSymElement> {
    check_peak_set(peaks, n, &[Flavor::TypeBPeak, Flavor::LeftPeak])?;
    let mut out = QSymElement::zero(true, Basis::F);
    let c = pow2(peaks.len());
    for d in all_subsets(&ambient(n, true)) {
        if covered_by_symdiff(&peaks.members, &d) {
            out.add_term(Composition::from_subset(&d, n, true)?, c.clone());
        }
    }
    Ok(out)
}

/// Exact rank of the span of homogeneous elements sharing type and basis.
pub fn rank_of_span(elements: &[QSymElement]) -> Result<usize> {
    let Some(first) = elements.first() else {
        return Ok(0);
    };
    for e in elements {
        first.check_compatible(e)?;
    }
    let keys: BTreeSet<&Composition> = elements.iter().flat_map(|e| e.coeffs.keys()).collect();
    let index: BTreeMap<&Composition, usize> = keys.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    let mut span = SpanBasis::new(keys.len());
    for e in elements {
        let mut v = vec![BigRational::zero(); keys.len()];
        for (k, c) in &e.coeffs {
            v[index[k]] = c.clone();
        }
        span.insert(&v);
    }
    Ok(span.rank())
}

/// Expresses `target` in the span of `elements` (same type and basis), if possible.
pub fn solve_in_span(elements: &[QSymElement], target: &QSymElement) -> Result<Option<Vec<BigRational>>> {
    for e in elements {
        target.check_compatible(e)?;
    }
    let keys: BTreeSet<&Composition> = elements
        .iter()
        .chain(std::iter::once(target))
        .flat_map(|e| e.coeffs.keys())
        .collect();
    let index: BTreeMap<&Composition, usize> = keys.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    let vec_of = |e: &QSymElement| {
        let mut v = vec![BigRational::zero(); keys.len()];
        for (k, c) in &e.coeffs {
            v[index[k]] = c.clone();
        }
        v
    };
    let mut span = SpanBasis::new(keys.len());
    for e in elements {
        span.insert(&vec_of(e));
    }
    Ok(span.reduce(&vec_of(target)).coeffs)
}

/// Integer polynomial of a census, for comparison with [`QSymElement::truncate`].
pub fn census_polynomial(c: &Census) -> Polynomial {
    c.counts
        .iter()
        .map(|(e, &n)| (e.clone(), int(n as i64)))
        .collect()
}

/// Product of truncated polynomials.
pub fn poly_mul(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let mut out = Polynomial::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u8> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            add_poly_term(&mut out, e, ca * cb);
        }
    }
    out
}

/// Drops every monomial containing `x₀` (the specialization `x₀ = 0`).
pub fn poly_without_x0(p: &Polynomial) -> Polynomial {
    p.iter()
        .filter(|(e, _)| e[0] == 0)
        .map(|(e, c)| (e.clone(), c.clone()))
        .collect()
}

/// Largest power of two dividing every coefficient, as an exponent (for reporting).
pub fn min_two_adic(e: &QSymElement) -> Option<u32> {
    e.coeffs
        .values()
        .filter_map(|c| c.numer().abs().to_u64().map(|v| v.trailing_zeros()))
        .min()
}
