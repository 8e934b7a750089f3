//! Truncated doubled alphabets and exhaustive enumeration of enriched
//! P-partitions (ordinary, left, and type B), including maps into products of
//! two alphabets under the up-down order.
//!
//! Every letter of every alphabet here is a position on the single line
//!
//! ```text
//! ⋯ < -s₂ < -s₂⁻¹ < -s₁ < -s₁⁻¹ < s₀ < s₁⁻¹ < s₁ < s₂⁻¹ < s₂ < ⋯
//!       -4     -3      -2     -1     0     1      2     3      4
//! ```
//!
//! Even positions have exponent `ε = +1`, odd positions `ε = -1`, and
//! `|s_i^{±1}| = i`. The prime alphabet `S′` is positions `1..=2k` (written
//! `-1 < 1 < -2 < 2 < ⋯` in signed notation), the left alphabet `S^(ℓ)` adds
//! the zero letter at position `0`, and `±S′` is `-2k..=2k`. Negation is
//! `p ↦ -p`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm_stats::{descent_set, Flavor, Permutation, SignedPermutation, Window};
use crate::posets::{LabeledPoset, TypeBPoset};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum AlphabetVariant {
    /// `S′`: `2k` letters.
    Prime,
    /// `S^(ℓ)`: `2k + 1` letters with minimum `s₀`.
    Left,
    /// `±S′`: `4k + 1` letters.
    PlusMinus,
}

/// A letter, identified by its position on the common line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(pub i32);

impl Letter {
    pub const ZERO: Letter = Letter(0);

    /// `ε(s) ∈ {+1, -1}`; also the nonnegative/negative class of `S^(ℓ)`.
    pub fn eps(self) -> i8 {
        if self.0 % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn abs_index(self) -> usize {
        (self.0.unsigned_abs() as usize).div_ceil(2)
    }

    pub fn neg(self) -> Letter {
        Letter(-self.0)
    }

    /// Signed-integer name in `ℙ^(ℓ)` notation: `0, -1, 1, -2, 2, …`.
    pub fn signed_name(self) -> i32 {
        let i = self.abs_index() as i32;
        if self.eps() > 0 {
            i
        } else {
            -i
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.0 < 0 { "-" } else { "" };
        let i = self.abs_index();
        if self.eps() < 0 {
            write!(f, "{sign}{i}^-1")
        } else {
            write!(f, "{sign}{i}")
        }
    }
}

/// `s ≤⁺ t`: `s < t`, or `s = t` with `ε(s) > 0`.
pub fn letter_leq_plus(a: Letter, b: Letter) -> bool {
    a < b || (a == b && a.eps() > 0)
}

/// `s ≤⁻ t`: `s < t`, or `s = t` with `ε(s) < 0`.
pub fn letter_leq_minus(a: Letter, b: Letter) -> bool {
    a < b || (a == b && a.eps() < 0)
}

/// A truncation of `S′`, `S^(ℓ)` or `±S′` to base letters `s₁..s_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Alphabet {
    pub variant: AlphabetVariant,
    pub k: usize,
}

impl Alphabet {
    pub fn prime(k: usize) -> Self {
        Self {
            variant: AlphabetVariant::Prime,
            k,
        }
    }

    pub fn left(k: usize) -> Self {
        Self {
            variant: AlphabetVariant::Left,
            k,
        }
    }

    pub fn plus_minus(k: usize) -> Self {
        Self {
            variant: AlphabetVariant::PlusMinus,
            k,
        }
    }

    fn range(&self) -> (i32, i32) {
        let k = self.k as i32;
        match self.variant {
            AlphabetVariant::Prime => (1, 2 * k),
            AlphabetVariant::Left => (0, 2 * k),
            AlphabetVariant::PlusMinus => (-2 * k, 2 * k),
        }
    }

    /// Letters in increasing order.
    pub fn letters(&self) -> Vec<Letter> {
        let (lo, hi) = self.range();
        (lo..=hi).map(Letter).collect()
    }

    pub fn len(&self) -> usize {
        let (lo, hi) = self.range();
        (hi - lo + 1).max(0) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, l: Letter) -> bool {
        let (lo, hi) = self.range();
        lo <= l.0 && l.0 <= hi
    }

    pub fn has_zero(&self) -> bool {
        self.variant != AlphabetVariant::Prime
    }

    fn check(&self, l: Letter) -> Result<()> {
        if self.contains(l) {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch(format!(
                "letter at position {} is not in {:?}({})",
                l.0, self.variant, self.k
            )))
        }
    }

    pub fn leq_plus(&self, a: Letter, b: Letter) -> Result<bool> {
        self.check(a)?;
        self.check(b)?;
        Ok(letter_leq_plus(a, b))
    }

    pub fn leq_minus(&self, a: Letter, b: Letter) -> Result<bool> {
        self.check(a)?;
        self.check(b)?;
        Ok(letter_leq_minus(a, b))
    }
}

/// A pair `(s, t)` from `S × T` compared in the up-down order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ProductLetter(pub Letter, pub Letter);

impl ProductLetter {
    /// Up-down order: by `s`; within a column of `s` with `ε(s) > 0` read `t`
    /// upward, within a column with `ε(s) < 0` read `t` downward.
    pub fn cmp_updown(&self, other: &Self) -> Ordering {
        match self.0.cmp(&other.0) {
            Ordering::Equal if self.0.eps() > 0 => self.1.cmp(&other.1),
            Ordering::Equal => other.1.cmp(&self.1),
            o => o,
        }
    }

    pub fn neg(self) -> Self {
        ProductLetter(self.0.neg(), self.1.neg())
    }
}

impl fmt::Display for ProductLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.0, self.1)
    }
}

/// Which weak relation links two consecutive values of a chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Step {
    Plus,
    Minus,
}

/// The three-case rule on product letters: `(s,t) ≤⁺ (u,v)` iff `s < u`, or
/// `s = u` positive and `t ≤⁺ v`, or `s = u` negative and `t ≥⁻ v`; `≤⁻` swaps
/// the inner relations.
pub fn product_leq_pm(a: ProductLetter, b: ProductLetter, step: Step) -> bool {
    let (s, t) = (a.0, a.1);
    let (u, v) = (b.0, b.1);
    if s < u {
        return true;
    }
    if s != u {
        return false;
    }
    match (step, s.eps() > 0) {
        (Step::Plus, true) => letter_leq_plus(t, v),
        (Step::Plus, false) => letter_leq_minus(v, t),
        (Step::Minus, true) => letter_leq_minus(t, v),
        (Step::Minus, false) => letter_leq_plus(v, t),
    }
}

/// An alphabet compiled to dense indices: index order is the total order, and
/// each letter carries its exponent sign and the exponent slots
/// its weight increments.
#[derive(Debug, Clone)]
pub struct OrderedAlphabet<L> {
    letters: Vec<L>,
    eps: Vec<i8>,
    zero: Option<usize>,
    slots: Vec<Vec<usize>>,
    n_vars: usize,
}

impl OrderedAlphabet<Letter> {
    /// Weight of `s` is `z_{|s|}`; the exponent vector has `k + 1` slots `z₀..z_k`.
    pub fn new(alpha: &Alphabet) -> Self {
        let letters = alpha.letters();
        let (lo, _) = alpha.range();
        let index = |l: Letter| -> Option<usize> {
            alpha.contains(l).then(|| (l.0 - lo) as usize)
        };
        Self {
            eps: letters.iter().map(|l| l.eps()).collect(),
            zero: alpha.has_zero().then(|| index(Letter::ZERO)).flatten(),
            slots: letters.iter().map(|l| vec![l.abs_index()]).collect(),
            n_vars: alpha.k + 1,
            letters,
        }
    }
}

impl OrderedAlphabet<ProductLetter> {
    /// `S × T` in the up-down order. Weight of `(s,t)` is `x_{|s|} y_{|t|}`,
    /// with `x` in slots `0..=k_S` and `y` in slots `k_S+1..`.
    pub fn product(s: &Alphabet, t: &Alphabet) -> Self {
        let mut letters: Vec<ProductLetter> = s
            .letters()
            .into_iter()
            .flat_map(|a| t.letters().into_iter().map(move |b| ProductLetter(a, b)))
            .collect();
        letters.sort_by(|a, b| a.cmp_updown(b));
        let pos: HashMap<ProductLetter, usize> =
            letters.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let offset = s.k + 1;
        let zero = (s.has_zero() && t.has_zero())
            .then(|| pos.get(&ProductLetter(Letter::ZERO, Letter::ZERO)).copied())
            .flatten();
        Self {
            eps: letters.iter().map(|l| l.0.eps() * l.1.eps()).collect(),
            zero,
            slots: letters
                .iter()
                .map(|l| vec![l.0.abs_index(), offset + l.1.abs_index()])
                .collect(),
            n_vars: offset + t.k + 1,
            letters,
        }
    }
}

impl<L: Copy> OrderedAlphabet<L> {
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letter(&self, i: usize) -> L {
        self.letters[i]
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    fn leq(&self, a: usize, b: usize, step: Step) -> bool {
        a < b
            || (a == b
                && match step {
                    Step::Plus => self.eps[a] > 0,
                    Step::Minus => self.eps[a] < 0,
                })
    }

    fn first_allowed(&self, prev: usize, step: Step) -> usize {
        if self.leq(prev, prev, step) {
            prev
        } else {
            prev + 1
        }
    }

    /// Calls `visit` on every index sequence `c₁ ≤ ⋯ ≤ c_m` with
    /// `c_i ≤^{steps[i]} c_{i+1}`, and `zero ≤^{start} c₁` when `start` is given.
    pub fn for_each_chain(
        &self,
        steps: &[Step],
        len: usize,
        start: Option<Step>,
        visit: &mut impl FnMut(&[usize]),
    ) -> Result<()> {
        let lo = match start {
            None => 0,
            Some(step) => {
                let z = self.zero.ok_or_else(|| {
                    Error::AlphabetMismatch("alphabet has no zero letter".into())
                })?;
                self.first_allowed(z, step)
            }
        };
        let mut cur = Vec::with_capacity(len);
        self.chain_rec(steps, len, lo, &mut cur, visit);
        Ok(())
    }

    fn chain_rec(
        &self,
        steps: &[Step],
        len: usize,
        lo: usize,
        cur: &mut Vec<usize>,
        visit: &mut impl FnMut(&[usize]),
    ) {
        if cur.len() == len {
            visit(cur);
            return;
        }
        for c in lo..self.len() {
            let next_lo = if cur.len() + 1 < len {
                self.first_allowed(c, steps[cur.len()])
            } else {
                0
            };
            cur.push(c);
            self.chain_rec(steps, len, next_lo, cur, visit);
            cur.pop();
        }
    }

    fn add_weight(&self, i: usize, exps: &mut [u8]) {
        for &s in &self.slots[i] {
            exps[s] += 1;
        }
    }
}

/// A map `i ↦ f(i)` on the positive labels `1..=n` (index `i-1`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EnrichedMap<L = Letter> {
    pub values: Vec<L>,
}

/// Multiset of monomial weights `∏ z_{|f(i)|}`, keyed by exponent vector.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Census {
    pub n_vars: usize,
    pub counts: BTreeMap<Vec<u8>, u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub exponents: Vec<u8>,
    pub count: u64,
}

impl Census {
    pub fn new(n_vars: usize) -> Self {
        Self {
            n_vars,
            counts: BTreeMap::new(),
        }
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn add(&mut self, exps: &[u8], count: u64) {
        if count == 0 {
            return;
        }
        if let Some(c) = self.counts.get_mut(exps) {
            *c += count;
        } else {
            self.counts.insert(exps.to_vec(), count);
        }
    }

    /// Sum of two censuses (disjoint union of the underlying map sets).
    pub fn merge(&mut self, other: &Census) {
        assert_eq!(self.n_vars, other.n_vars, "census width mismatch");
        for (e, &c) in &other.counts {
            self.add(e, c);
        }
    }

    /// Product of generating functions in disjoint variable sets: exponent
    /// vectors are concatenated.
    pub fn tensor(&self, other: &Census) -> Census {
        let mut out = Census::new(self.n_vars + other.n_vars);
        let mut buf = Vec::with_capacity(out.n_vars);
        for (a, &ca) in &self.counts {
            for (b, &cb) in &other.counts {
                buf.clear();
                buf.extend_from_slice(a);
                buf.extend_from_slice(b);
                out.add(&buf, ca * cb);
            }
        }
        out
    }

    /// Specialization `z_slot = 0`: keeps only monomials free of that variable.
    pub fn without_var(&self, slot: usize) -> Census {
        Census {
            n_vars: self.n_vars,
            counts: self
                .counts
                .iter()
                .filter(|(e, _)| e[slot] == 0)
                .map(|(e, &c)| (e.clone(), c))
                .collect(),
        }
    }

    pub fn records(&self) -> Vec<CensusRecord> {
        self.counts
            .iter()
            .map(|(e, &c)| CensusRecord {
                exponents: e.clone(),
                count: c,
            })
            .collect()
    }
}

fn check_variant(alpha: &Alphabet, allowed: &[AlphabetVariant], what: &str) -> Result<()> {
    if allowed.contains(&alpha.variant) {
        Ok(())
    } else {
        Err(Error::AlphabetMismatch(format!(
            "{what} needs one of {allowed:?}, got {:?}",
            alpha.variant
        )))
    }
}

fn type_a_steps(pi: &Permutation) -> Vec<Step> {
    let des = descent_set(pi, Flavor::DescentA).expect("descent flavor");
    (1..pi.size() as i32)
        .map(|i| if des.contains(i) { Step::Minus } else { Step::Plus })
        .collect()
}

fn type_b_steps(pi: &SignedPermutation) -> (Option<Step>, Vec<Step>) {
    let des = descent_set(pi, Flavor::DescentB).expect("descent flavor");
    let step = |i: i32| if des.contains(i) { Step::Minus } else { Step::Plus };
    (Some(step(0)), (1..pi.size() as i32).map(step).collect())
}

/// Enriched `π`-partitions for an unsigned `π`: `S′` gives the ordinary
/// version, `S^(ℓ)` the left version.
pub fn enumerate_epp(pi: &Permutation, alpha: &Alphabet) -> Result<Vec<EnrichedMap>> {
    check_variant(
        alpha,
        &[AlphabetVariant::Prime, AlphabetVariant::Left],
        "enriched π-partitions",
    )?;
    let table = OrderedAlphabet::new(alpha);
    let w = pi.window();
    let mut out = Vec::new();
    table.for_each_chain(&type_a_steps(pi), w.len(), None, &mut |c| {
        let mut values = vec![Letter::ZERO; w.len()];
        for (i, &ci) in c.iter().enumerate() {
            values[w[i] as usize - 1] = table.letter(ci);
        }
        out.push(EnrichedMap { values });
    })?;
    Ok(out)
}

/// Type B enriched `π`-partitions into `±S′`. Values are listed for the labels
/// `1..=n`; `f(-i) = -f(i)` and `f(0) = s₀` are implied.
pub fn enumerate_epp_b(pi: &SignedPermutation, alpha: &Alphabet) -> Result<Vec<EnrichedMap>> {
    check_variant(alpha, &[AlphabetVariant::PlusMinus], "type B enriched π-partitions")?;
    let table = OrderedAlphabet::new(alpha);
    let w = pi.window();
    let (start, steps) = type_b_steps(pi);
    let mut out = Vec::new();
    table.for_each_chain(&steps, w.len(), start, &mut |c| {
        let mut values = vec![Letter::ZERO; w.len()];
        for (i, &ci) in c.iter().enumerate() {
            let l = table.letter(ci);
            values[w[i].unsigned_abs() as usize - 1] = if w[i] < 0 { l.neg() } else { l };
        }
        out.push(EnrichedMap { values });
    })?;
    Ok(out)
}

/// Census of all chains of `table` with the given steps; one weight per chain value.
fn chain_census<L: Copy>(
    table: &OrderedAlphabet<L>,
    steps: &[Step],
    len: usize,
    start: Option<Step>,
) -> Result<Census> {
    let mut acc: HashMap<Vec<u8>, u64> = HashMap::new();
    let mut buf = vec![0u8; table.n_vars()];
    table.for_each_chain(steps, len, start, &mut |c| {
        buf.iter_mut().for_each(|e| *e = 0);
        for &ci in c {
            table.add_weight(ci, &mut buf);
        }
        if let Some(v) = acc.get_mut(&buf[..]) {
            *v += 1;
        } else {
            acc.insert(buf.clone(), 1);
        }
    })?;
    Ok(Census {
        n_vars: table.n_vars(),
        counts: acc.into_iter().collect(),
    })
}

/// `Δ(π)` (prime alphabet) or `Δ^(ℓ)(π)` (left alphabet), truncated to `k` letters.
pub fn census_epp(pi: &Permutation, alpha: &Alphabet) -> Result<Census> {
    check_variant(
        alpha,
        &[AlphabetVariant::Prime, AlphabetVariant::Left],
        "enriched π-partitions",
    )?;
    let table = OrderedAlphabet::new(alpha);
    chain_census(&table, &type_a_steps(pi), pi.size(), None)
}

/// `Δ_B(π)` truncated to `k` letters.
pub fn census_epp_b(pi: &SignedPermutation, alpha: &Alphabet) -> Result<Census> {
    check_variant(alpha, &[AlphabetVariant::PlusMinus], "type B enriched π-partitions")?;
    let table = OrderedAlphabet::new(alpha);
    let (start, steps) = type_b_steps(pi);
    chain_census(&table, &steps, pi.size(), start)
}

/// Number of enriched `π`-partitions, counted by dynamic programming over the chain.
pub fn count_epp(pi: &Permutation, alpha: &Alphabet) -> Result<u64> {
    check_variant(
        alpha,
        &[AlphabetVariant::Prime, AlphabetVariant::Left],
        "enriched π-partitions",
    )?;
    let table = OrderedAlphabet::new(alpha);
    let steps = type_a_steps(pi);
    let m = table.len();
    if pi.size() == 0 {
        return Ok(1);
    }
    let mut ways = vec![1u64; m];
    for &step in &steps {
        let mut next = vec![0u64; m];
        for (prev, &w) in ways.iter().enumerate() {
            if w == 0 {
                continue;
            }
            for slot in next[table.first_allowed(prev, step)..].iter_mut() {
                *slot += w;
            }
        }
        ways = next;
    }
    Ok(ways.iter().sum())
}

/// Which product flavor a bipartite enumeration uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProductFlavor {
    /// `S′ × T′`.
    Enriched,
    /// `S^(ℓ) × T′`.
    LeftPrime,
    /// `S^(ℓ) × T^(ℓ)`.
    LeftLeft,
    /// `±S′ × ±T′`, type B chain conditions.
    TypeB,
}

impl ProductFlavor {
    fn check(self, s: &Alphabet, t: &Alphabet) -> Result<()> {
        use AlphabetVariant::*;
        let ok = match self {
            ProductFlavor::Enriched => s.variant == Prime && t.variant == Prime,
            ProductFlavor::LeftPrime => s.variant == Left && t.variant == Prime,
            ProductFlavor::LeftLeft => s.variant == Left && t.variant == Left,
            ProductFlavor::TypeB => s.variant == PlusMinus && t.variant == PlusMinus,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch(format!(
                "{self:?} product needs matching alphabets, got {:?} × {:?}",
                s.variant, t.variant
            )))
        }
    }
}

/// Product-valued enriched `π`-partitions (`f(π(i))` listed by label).
pub fn enumerate_epp_product(
    pi: &SignedPermutation,
    s: &Alphabet,
    t: &Alphabet,
    flavor: ProductFlavor,
) -> Result<Vec<EnrichedMap<ProductLetter>>> {
    flavor.check(s, t)?;
    let table = OrderedAlphabet::product(s, t);
    let w = pi.window();
    let (start, steps) = product_steps(pi, flavor)?;
    let mut out = Vec::new();
    table.for_each_chain(&steps, w.len(), start, &mut |c| {
        let mut values = vec![ProductLetter(Letter::ZERO, Letter::ZERO); w.len()];
        for (i, &ci) in c.iter().enumerate() {
            let l = table.letter(ci);
            values[w[i].unsigned_abs() as usize - 1] = if w[i] < 0 { l.neg() } else { l };
        }
        out.push(EnrichedMap { values });
    })?;
    Ok(out)
}

fn product_steps(pi: &SignedPermutation, flavor: ProductFlavor) -> Result<(Option<Step>, Vec<Step>)> {
    if flavor == ProductFlavor::TypeB {
        Ok(type_b_steps(pi))
    } else {
        let p = pi
            .to_unsigned()
            .ok_or_else(|| Error::AlphabetMismatch("type A product needs an unsigned π".into()))?;
        Ok((None, type_a_steps(&p)))
    }
}

/// Bipartite census `Δ(π)(XY)`: weight `x_{|s|} y_{|t|}` per value.
pub fn census_epp_product(
    pi: &SignedPermutation,
    s: &Alphabet,
    t: &Alphabet,
    flavor: ProductFlavor,
) -> Result<Census> {
    flavor.check(s, t)?;
    let table = OrderedAlphabet::product(s, t);
    let (start, steps) = product_steps(pi, flavor)?;
    chain_census(&table, &steps, pi.size(), start)
}

/// Census of an explicit list of maps. `n_vars` is the exponent-vector width.
pub fn monomial_census(maps: &[EnrichedMap], n_vars: usize) -> Census {
    let mut census = Census::new(n_vars);
    let mut buf = vec![0u8; n_vars];
    for f in maps {
        buf.iter_mut().for_each(|e| *e = 0);
        for l in &f.values {
            buf[l.abs_index()] += 1;
        }
        census.add(&buf, 1);
    }
    census
}

/// Enriched (or left enriched) `P`-partitions of a labeled poset, by
/// backtracking over labels with every relation checked once both ends are set.
pub fn enumerate_poset_epp(p: &LabeledPoset, alpha: &Alphabet) -> Result<Vec<EnrichedMap>> {
    check_variant(
        alpha,
        &[AlphabetVariant::Prime, AlphabetVariant::Left],
        "enriched P-partitions",
    )?;
    let n = p.size();
    let letters = alpha.letters();
    let rels = p.relations();
    let mut values: Vec<Option<Letter>> = vec![None; n];
    let mut out = Vec::new();
    fn ok(rels: &[(i32, i32)], values: &[Option<Letter>], x: i32) -> bool {
        rels.iter().filter(|&&(a, b)| a == x || b == x).all(|&(a, b)| {
            match (values[a as usize - 1], values[b as usize - 1]) {
                (Some(fa), Some(fb)) => {
                    if a < b {
                        letter_leq_plus(fa, fb)
                    } else {
                        letter_leq_minus(fa, fb)
                    }
                }
                _ => true,
            }
        })
    }
    fn rec(
        i: usize,
        n: usize,
        letters: &[Letter],
        rels: &[(i32, i32)],
        values: &mut Vec<Option<Letter>>,
        out: &mut Vec<EnrichedMap>,
    ) {
        if i == n {
            out.push(EnrichedMap {
                values: values.iter().map(|v| v.expect("assigned")).collect(),
            });
            return;
        }
        for &l in letters {
            values[i] = Some(l);
            if ok(rels, values, i as i32 + 1) {
                rec(i + 1, n, letters, rels, values, out);
            }
        }
        values[i] = None;
    }
    rec(0, n, &letters, &rels, &mut values, &mut out);
    Ok(out)
}

/// Type B enriched `P`-partitions: `f(-i) = -f(i)`, `f(0) = s₀`.
pub fn enumerate_poset_epp_b(p: &TypeBPoset, alpha: &Alphabet) -> Result<Vec<EnrichedMap>> {
    check_variant(alpha, &[AlphabetVariant::PlusMinus], "type B enriched P-partitions")?;
    let n = p.rank();
    let letters = alpha.letters();
    let rels = p.relations();
    let mut values: Vec<Option<Letter>> = vec![None; n];
    let mut out = Vec::new();
    fn value(values: &[Option<Letter>], a: i32) -> Option<Letter> {
        if a == 0 {
            Some(Letter::ZERO)
        } else if a > 0 {
            values[a as usize - 1]
        } else {
            values[(-a) as usize - 1].map(Letter::neg)
        }
    }
    fn ok(rels: &[(i32, i32)], values: &[Option<Letter>], x: i32) -> bool {
        rels.iter()
            .filter(|&&(a, b)| a.abs() == x || b.abs() == x)
            .all(|&(a, b)| match (value(values, a), value(values, b)) {
                (Some(fa), Some(fb)) => {
                    if a < b {
                        letter_leq_plus(fa, fb)
                    } else {
                        letter_leq_minus(fa, fb)
                    }
                }
                _ => true,
            })
    }
    fn rec(
        i: usize,
        n: usize,
        letters: &[Letter],
        rels: &[(i32, i32)],
        values: &mut Vec<Option<Letter>>,
        out: &mut Vec<EnrichedMap>,
    ) {
        if i == n {
            out.push(EnrichedMap {
                values: values.iter().map(|v| v.expect("assigned")).collect(),
            });
            return;
        }
        for &l in letters {
            values[i] = Some(l);
            if ok(rels, values, i as i32 + 1) {
                rec(i + 1, n, letters, rels, values, out);
            }
        }
        values[i] = None;
    }
    rec(0, n, &letters, &rels, &mut values, &mut out);
    Ok(out)
}

/// Whether `f` is an enriched `π`-partition (unsigned `π`, chain conditions only).
pub fn satisfies_chain(pi: &Permutation, f: &EnrichedMap) -> bool {
    let w = pi.window();
    let steps = type_a_steps(pi);
    steps.iter().enumerate().all(|(i, &step)| {
        let (a, b) = (f.values[w[i] as usize - 1], f.values[w[i + 1] as usize - 1]);
        match step {
            Step::Plus => letter_leq_plus(a, b),
            Step::Minus => letter_leq_minus(a, b),
        }
    })
}

/// Whether `f` is a type B enriched `π`-partition.
pub fn satisfies_chain_b(pi: &SignedPermutation, f: &EnrichedMap) -> bool {
    let w = pi.window();
    let val = |x: i32| {
        let l = f.values[x.unsigned_abs() as usize - 1];
        if x < 0 {
            l.neg()
        } else {
            l
        }
    };
    let (start, steps) = type_b_steps(pi);
    let rel = |step: Step, a: Letter, b: Letter| match step {
        Step::Plus => letter_leq_plus(a, b),
        Step::Minus => letter_leq_minus(a, b),
    };
    if w.is_empty() {
        return true;
    }
    rel(start.expect("type B start"), Letter::ZERO, val(w[0]))
        && steps
            .iter()
            .enumerate()
            .all(|(i, &step)| rel(step, val(w[i]), val(w[i + 1])))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(alpha: &Alphabet, pred: impl Fn(Letter) -> bool) -> Vec<i32> {
        let mut v: Vec<i32> = alpha
            .letters()
            .into_iter()
            .filter(|&l| pred(l))
            .map(|l| l.signed_name())
            .collect();
        v.sort();
        v
    }

    #[test]
    fn prime_and_left_orders() {
        let names_in_order: Vec<i32> = Alphabet::left(3)
            .letters()
            .into_iter()
            .map(|l| l.signed_name())
            .collect();
        assert_eq!(names_in_order, vec![0, -1, 1, -2, 2, -3, 3]);
        assert_eq!(Alphabet::prime(3).len(), 6);
        assert_eq!(Alphabet::plus_minus(2).len(), 9);
    }

    #[test]
    fn plus_minus_sets_below_three() {
        let alpha = Alphabet::left(3);
        let three = Letter(6);
        assert_eq!(three.signed_name(), 3);
        assert_eq!(
            names(&alpha, |s| letter_leq_plus(s, three)),
            vec![-3, -2, -1, 0, 1, 2, 3]
        );
        assert_eq!(
            names(&alpha, |s| letter_leq_minus(s, three)),
            vec![-3, -2, -1, 0, 1, 2]
        );
        let minus_three = Letter(5);
        assert_eq!(
            names(&alpha, |s| letter_leq_minus(s, minus_three)),
            vec![-3, -2, -1, 0, 1, 2]
        );
        let two = Letter(4);
        assert_eq!(
            names(&alpha, |s| letter_leq_plus(Letter::ZERO, s) && letter_leq_plus(s, two)),
            vec![-2, -1, 0, 1, 2]
        );
        assert_eq!(
            names(&alpha, |s| letter_leq_minus(Letter::ZERO, s) && letter_leq_plus(s, two)),
            vec![-2, -1, 1, 2]
        );
    }

    #[test]
    fn equality_splits_between_plus_and_minus() {
        for l in Alphabet::plus_minus(3).letters() {
            assert_ne!(letter_leq_plus(l, l), letter_leq_minus(l, l));
        }
        let neg = Letter(3);
        assert!(letter_leq_minus(neg, neg) && !letter_leq_plus(neg, neg));
        assert!(Alphabet::prime(2).leq_plus(Letter(0), Letter(1)).is_err());
    }

    #[test]
    fn three_case_rule_matches_compiled_order() {
        for (s, t) in [
            (Alphabet::prime(2), Alphabet::prime(2)),
            (Alphabet::left(2), Alphabet::prime(2)),
            (Alphabet::plus_minus(1), Alphabet::plus_minus(2)),
        ] {
            let table = OrderedAlphabet::product(&s, &t);
            for i in 0..table.len() {
                for j in 0..table.len() {
                    for step in [Step::Plus, Step::Minus] {
                        assert_eq!(
                            table.leq(i, j, step),
                            product_leq_pm(table.letter(i), table.letter(j), step)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn product_three_cases() {
        let p = |a, b| ProductLetter(Letter(a), Letter(b));
        // s < u
        assert!(product_leq_pm(p(1, 4), p(2, 1), Step::Plus));
        assert!(product_leq_pm(p(1, 4), p(2, 1), Step::Minus));
        // s = u positive: t ≤± v
        assert!(product_leq_pm(p(2, 3), p(2, 3), Step::Minus));
        assert!(!product_leq_pm(p(2, 3), p(2, 3), Step::Plus));
        // s = u negative: t ≥∓ v
        assert!(product_leq_pm(p(1, 4), p(1, 2), Step::Plus));
        assert!(product_leq_pm(p(1, 3), p(1, 3), Step::Plus));
        assert!(!product_leq_pm(p(1, 3), p(1, 3), Step::Minus));
    }

    #[test]
    fn small_counts() {
        for k in 1..=4 {
            let id1 = Permutation::identity(1);
            assert_eq!(enumerate_epp(&id1, &Alphabet::prime(k)).unwrap().len(), 2 * k);
            let id2 = Permutation::identity(2);
            assert_eq!(
                enumerate_epp(&id2, &Alphabet::prime(k)).unwrap().len(),
                2 * k * k
            );
            let b1 = SignedPermutation::identity(1);
            assert_eq!(
                enumerate_epp_b(&b1, &Alphabet::plus_minus(k)).unwrap().len(),
                2 * k + 1
            );
        }
        let empty = enumerate_epp(&Permutation::identity(0), &Alphabet::prime(3)).unwrap();
        assert_eq!(empty.len(), 1);
        assert!(enumerate_epp(&Permutation::identity(2), &Alphabet::plus_minus(2)).is_err());
        assert!(enumerate_epp_b(&SignedPermutation::identity(2), &Alphabet::prime(2)).is_err());
    }

    #[test]
    fn single_letter_censuses() {
        let k = 3;
        let c = census_epp(&Permutation::identity(1), &Alphabet::prime(k)).unwrap();
        let want: BTreeMap<Vec<u8>, u64> =
            (1..=k).map(|i| {
                let mut e = vec![0u8; k + 1];
                e[i] = 1;
                (e, 2)
            })
            .collect();
        assert_eq!(c.counts, want);

        let c = census_epp_b(&SignedPermutation::identity(1), &Alphabet::plus_minus(k)).unwrap();
        let mut want: BTreeMap<Vec<u8>, u64> = want;
        want.insert(vec![1, 0, 0, 0], 1);
        assert_eq!(c.counts, want);

        let c = census_epp(&Permutation::identity(0), &Alphabet::prime(k)).unwrap();
        assert_eq!(c.counts.len(), 1);
        assert_eq!(c.total(), 1);
    }

    #[test]
    fn dp_count_matches_enumeration() {
        for n in 0..=4 {
            for pi in Permutation::all(n) {
                for alpha in [Alphabet::prime(3), Alphabet::left(2)] {
                    let listed = enumerate_epp(&pi, &alpha).unwrap();
                    assert_eq!(count_epp(&pi, &alpha).unwrap(), listed.len() as u64);
                    assert_eq!(census_epp(&pi, &alpha).unwrap().total(), listed.len() as u64);
                    assert!(listed.iter().all(|f| satisfies_chain(&pi, f)));
                }
            }
        }
    }

    #[test]
    fn chain_enumeration_matches_filter() {
        for n in 0..=3 {
            for pi in SignedPermutation::all(n) {
                let alpha = Alphabet::plus_minus(2);
                let got: std::collections::BTreeSet<Vec<i32>> = enumerate_epp_b(&pi, &alpha)
                    .unwrap()
                    .into_iter()
                    .map(|f| f.values.iter().map(|l| l.0).collect())
                    .collect();
                let letters = alpha.letters();
                let mut want = std::collections::BTreeSet::new();
                let total = letters.len().pow(n as u32);
                for code in 0..total {
                    let mut c = code;
                    let values: Vec<Letter> = (0..n)
                        .map(|_| {
                            let l = letters[c % letters.len()];
                            c /= letters.len();
                            l
                        })
                        .collect();
                    let f = EnrichedMap { values };
                    if satisfies_chain_b(&pi, &f) {
                        want.insert(f.values.iter().map(|l| l.0).collect::<Vec<_>>());
                    }
                }
                assert_eq!(got, want, "π = {pi}");
            }
        }
    }

    #[test]
    fn poset_enumeration_on_small_example() {
        // 1 > 3 < 2 splits into the chains 312 and 321.
        let p = LabeledPoset::parse("3<1\n3<2", None).unwrap();
        let alpha = Alphabet::left(2);
        let all = enumerate_poset_epp(&p, &alpha).unwrap();
        let a = enumerate_epp(&"3,1,2".parse().unwrap(), &alpha).unwrap();
        let b = enumerate_epp(&"3,2,1".parse().unwrap(), &alpha).unwrap();
        assert_eq!(all.len(), a.len() + b.len());
    }
}
