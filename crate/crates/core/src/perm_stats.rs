//! Permutations of `[n]`, signed permutations of `±[n]`, and the descent and
//! peak statistics defined on their windows.
//!
//! Windows are written in one-line notation `π(1),…,π(n)`. Every statistic
//! reads the window with the boundary value `π(0) = 0`; right and exterior
//! peaks additionally use `π(n+1) = 0`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Type A (symmetric group) or type B (hyperoctahedral group).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    A,
    B,
}

/// Which statistic a [`StatSet`] records.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Flavor {
    InteriorPeak,
    LeftPeak,
    TypeBPeak,
    RightPeak,
    ExteriorPeak,
    DescentA,
    DescentB,
}

impl Flavor {
    pub const PEAKS: [Flavor; 5] = [
        Flavor::InteriorPeak,
        Flavor::LeftPeak,
        Flavor::TypeBPeak,
        Flavor::RightPeak,
        Flavor::ExteriorPeak,
    ];

    pub fn is_peak(self) -> bool {
        !matches!(self, Flavor::DescentA | Flavor::DescentB)
    }

    /// Inclusive ambient interval `[lo, hi]` for sets of this flavor. Empty when `lo > hi`.
    pub fn ambient(self, n: usize) -> (i32, i32) {
        let n = n as i32;
        match self {
            Flavor::InteriorPeak => (2, n - 1),
            Flavor::LeftPeak | Flavor::DescentA => (1, n - 1),
            Flavor::TypeBPeak | Flavor::DescentB => (0, n - 1),
            Flavor::RightPeak => (2, n),
            Flavor::ExteriorPeak => (1, n),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Flavor::InteriorPeak => "interior",
            Flavor::LeftPeak => "left",
            Flavor::TypeBPeak => "typeB",
            Flavor::RightPeak => "right",
            Flavor::ExteriorPeak => "exterior",
            Flavor::DescentA => "descentA",
            Flavor::DescentB => "descentB",
        }
    }
}

impl FromStr for Flavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "interior" => Flavor::InteriorPeak,
            "left" => Flavor::LeftPeak,
            "typeB" | "typeb" | "b" => Flavor::TypeBPeak,
            "right" => Flavor::RightPeak,
            "exterior" => Flavor::ExteriorPeak,
            "descentA" | "descent" => Flavor::DescentA,
            "descentB" => Flavor::DescentB,
            _ => return Err(Error::ParseWindow(format!("unknown flavor {s}"))),
        })
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Common read access to a window.
pub trait Window {
    fn window(&self) -> &[i32];

    fn size(&self) -> usize {
        self.window().len()
    }

    /// `π(i)` for `0 ≤ i ≤ n+1`, with `π(0) = π(n+1) = 0`.
    fn at(&self, i: i32) -> i32 {
        let w = self.window();
        if i <= 0 || i as usize > w.len() {
            0
        } else {
            w[i as usize - 1]
        }
    }
}

/// An element of the symmetric group `S_n` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    window: Vec<i32>,
}

/// An element of the hyperoctahedral group `B_n` in window notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation {
    window: Vec<i32>,
}

fn is_bijection_on_abs(window: &[i32]) -> bool {
    let n = window.len();
    let mut seen = vec![false; n + 1];
    for &v in window {
        let a = v.unsigned_abs() as usize;
        if a == 0 || a > n || seen[a] {
            return false;
        }
        seen[a] = true;
    }
    true
}

fn parse_window(s: &str) -> Result<Vec<i32>> {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')');
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| t.trim().parse::<i32>().map_err(|_| Error::ParseWindow(s.to_string())))
        .collect()
}

fn fmt_window(w: &[i32], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let parts: Vec<String> = w.iter().map(|v| v.to_string()).collect();
    f.write_str(&parts.join(","))
}

impl Permutation {
    pub fn new(window: Vec<i32>) -> Result<Self> {
        if window.iter().all(|&v| v > 0) && is_bijection_on_abs(&window) {
            Ok(Self { window })
        } else {
            Err(Error::InvalidWindow(window))
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            window: (1..=n as i32).collect(),
        }
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        check_size(self.size(), other.size())?;
        Ok(Self {
            window: compose_windows(&self.window, &other.window),
        })
    }

    pub fn inverse(&self) -> Self {
        Self {
            window: inverse_window(&self.window),
        }
    }

    /// Lexicographic rank among all of `S_n`.
    pub fn rank(&self) -> usize {
        lex_rank(&self.window)
    }

    pub fn unrank(n: usize, rank: usize) -> Self {
        Self {
            window: lex_unrank(n, rank),
        }
    }

    /// All of `S_n` in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        (0..factorial(n)).map(move |r| Permutation::unrank(n, r))
    }

    /// The same window viewed inside `B_n`.
    pub fn to_signed(&self) -> SignedPermutation {
        SignedPermutation {
            window: self.window.clone(),
        }
    }

    pub fn into_window(self) -> Vec<i32> {
        self.window
    }
}

impl SignedPermutation {
    pub fn new(window: Vec<i32>) -> Result<Self> {
        if is_bijection_on_abs(&window) {
            Ok(Self { window })
        } else {
            Err(Error::InvalidWindow(window))
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            window: (1..=n as i32).collect(),
        }
    }

    /// `π(i)` for any `i ∈ ±[n] ∪ {0}`, using `π(-i) = -π(i)`.
    pub fn apply(&self, i: i32) -> i32 {
        if i == 0 {
            0
        } else if i > 0 {
            self.window[i as usize - 1]
        } else {
            -self.window[(-i) as usize - 1]
        }
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        check_size(self.size(), other.size())?;
        Ok(Self {
            window: compose_windows(&self.window, &other.window),
        })
    }

    pub fn inverse(&self) -> Self {
        Self {
            window: inverse_window(&self.window),
        }
    }

    /// Bit `i` set iff `π(i+1) < 0`.
    pub fn sign_mask(&self) -> usize {
        self.window
            .iter()
            .enumerate()
            .filter(|(_, &v)| v < 0)
            .fold(0, |m, (i, _)| m | (1 << i))
    }

    /// Rank in `B_n`: sign mask major, lexicographic on `|π|` minor. Unsigned
    /// windows therefore occupy ranks `0..n!`.
    pub fn rank(&self) -> usize {
        signed_rank(&self.window)
    }

    pub fn unrank(n: usize, rank: usize) -> Self {
        Self {
            window: signed_unrank(n, rank),
        }
    }

    /// All of `B_n` in rank order.
    pub fn all(n: usize) -> impl Iterator<Item = SignedPermutation> {
        (0..group_order(n, Kind::B)).map(move |r| SignedPermutation::unrank(n, r))
    }

    pub fn is_unsigned(&self) -> bool {
        self.window.iter().all(|&v| v > 0)
    }

    pub fn to_unsigned(&self) -> Option<Permutation> {
        self.is_unsigned().then(|| Permutation {
            window: self.window.clone(),
        })
    }

    pub fn into_window(self) -> Vec<i32> {
        self.window
    }
}

impl Window for Permutation {
    fn window(&self) -> &[i32] {
        &self.window
    }
}

impl Window for SignedPermutation {
    fn window(&self) -> &[i32] {
        &self.window
    }
}

impl FromStr for Permutation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Permutation::new(parse_window(s)?)
    }
}

impl FromStr for SignedPermutation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        SignedPermutation::new(parse_window(s)?)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_window(&self.window, f)
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_window(&self.window, f)
    }
}

fn check_size(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::SizeMismatch { left: a, right: b })
    }
}

/// `(a∘b)(i) = a(b(i))`, with `a(-j) = -a(j)`.
pub fn compose_windows(a: &[i32], b: &[i32]) -> Vec<i32> {
    b.iter()
        .map(|&j| {
            let v = a[j.unsigned_abs() as usize - 1];
            if j < 0 {
                -v
            } else {
                v
            }
        })
        .collect()
}

pub fn inverse_window(w: &[i32]) -> Vec<i32> {
    let mut inv = vec![0; w.len()];
    for (i, &v) in w.iter().enumerate() {
        let pos = i as i32 + 1;
        inv[v.unsigned_abs() as usize - 1] = if v < 0 { -pos } else { pos };
    }
    inv
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

pub fn group_order(n: usize, kind: Kind) -> usize {
    match kind {
        Kind::A => factorial(n),
        Kind::B => factorial(n) << n,
    }
}

/// Lexicographic rank of a permutation of `[n]` (signs ignored).
pub fn lex_rank(w: &[i32]) -> usize {
    let n = w.len();
    let mut rank = 0;
    for i in 0..n {
        let smaller = w[i + 1..]
            .iter()
            .filter(|&&v| v.unsigned_abs() < w[i].unsigned_abs())
            .count();
        rank += smaller * factorial(n - 1 - i);
    }
    rank
}

pub fn lex_unrank(n: usize, mut rank: usize) -> Vec<i32> {
    let mut pool: Vec<i32> = (1..=n as i32).collect();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let f = factorial(n - 1 - i);
        out.push(pool.remove(rank / f));
        rank %= f;
    }
    out
}

pub fn signed_rank(w: &[i32]) -> usize {
    let mask = w
        .iter()
        .enumerate()
        .filter(|(_, &v)| v < 0)
        .fold(0usize, |m, (i, _)| m | (1 << i));
    mask * factorial(w.len()) + lex_rank(w)
}

pub fn signed_unrank(n: usize, rank: usize) -> Vec<i32> {
    let f = factorial(n);
    let (mask, lex) = (rank / f, rank % f);
    let mut w = lex_unrank(n, lex);
    for (i, v) in w.iter_mut().enumerate() {
        if mask >> i & 1 == 1 {
            *v = -*v;
        }
    }
    w
}

/// A set of positions recorded by a statistic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StatSet {
    pub members: Vec<i32>,
    pub flavor: Flavor,
    pub n: usize,
}

impl StatSet {
    /// Validates range, sortedness and (for peak flavors) sparsity.
    pub fn new(mut members: Vec<i32>, flavor: Flavor, n: usize) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        let (lo, hi) = flavor.ambient(n);
        if members.iter().any(|&m| m < lo || m > hi) {
            return Err(Error::SubsetOutOfRange { members, n, flavor });
        }
        if flavor.is_peak() && !is_sparse(&members) {
            return Err(Error::InvalidPeakSet { members, n, flavor });
        }
        Ok(Self { members, flavor, n })
    }

    pub fn contains(&self, i: i32) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

impl fmt::Display for StatSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.members.iter().map(|v| v.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// No two consecutive integers. Expects sorted input.
pub fn is_sparse(sorted: &[i32]) -> bool {
    sorted.windows(2).all(|p| p[1] - p[0] >= 2)
}

fn raw_peaks(w: &(impl Window + ?Sized), flavor: Flavor) -> Vec<i32> {
    let n = w.size();
    let (lo, hi) = flavor.ambient(n);
    let mut out = Vec::new();
    for i in lo..=hi {
        let is_peak = if i == 0 {
            w.at(1) < 0
        } else {
            w.at(i - 1) < w.at(i) && w.at(i) > w.at(i + 1)
        };
        if is_peak {
            out.push(i);
        }
    }
    out
}

fn raw_descents(w: &(impl Window + ?Sized), flavor: Flavor) -> Vec<i32> {
    let (lo, hi) = flavor.ambient(w.size());
    (lo..=hi).filter(|&i| w.at(i) > w.at(i + 1)).collect()
}

/// The peak set of the requested flavor. Peak flavors apply to both unsigned
/// and signed windows; descent flavors are rejected.
pub fn peak_set(w: &(impl Window + ?Sized), flavor: Flavor) -> Result<StatSet> {
    if !flavor.is_peak() {
        return Err(Error::FlavorMismatch {
            flavor,
            operation: "peak_set",
        });
    }
    Ok(StatSet {
        members: raw_peaks(w, flavor),
        flavor,
        n: w.size(),
    })
}

/// `Des` (positions `1..n-1`) or `Des_B` (positions `0..n-1`, with `π(0) = 0`).
pub fn descent_set(w: &(impl Window + ?Sized), flavor: Flavor) -> Result<StatSet> {
    if flavor.is_peak() {
        return Err(Error::FlavorMismatch {
            flavor,
            operation: "descent_set",
        });
    }
    Ok(StatSet {
        members: raw_descents(w, flavor),
        flavor,
        n: w.size(),
    })
}

/// Number of peaks of the given flavor, without allocating a [`StatSet`].
pub fn peak_count(w: &(impl Window + ?Sized), flavor: Flavor) -> usize {
    raw_peaks(w, flavor).len()
}

/// Fibonacci numbers with `f_0 = f_1 = 1`.
pub fn fibonacci(m: usize) -> u64 {
    let (mut a, mut b) = (1u64, 1u64);
    for _ in 0..m {
        (a, b) = (b, a + b);
    }
    a
}

/// Every sparse subset of the flavor's ambient interval, in lexicographic
/// order of the sorted member lists.
pub fn enumerate_peak_sets(n: usize, flavor: Flavor) -> Vec<StatSet> {
    let (lo, hi) = flavor.ambient(n);
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(next: i32, hi: i32, cur: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
        out.push(cur.clone());
        for i in next..=hi {
            cur.push(i);
            rec(i + 2, hi, cur, out);
            cur.pop();
        }
    }
    let mut raw = Vec::new();
    rec(lo, hi, &mut cur, &mut raw);
    raw.sort();
    for members in raw {
        out.push(StatSet { members, flavor, n });
    }
    out
}

/// An ordered tuple of parts. Type A compositions have positive parts; type B
/// pseudo-compositions may have a zero first part. The degree-0 element is the
/// empty tuple (type A) or `(0)` (type B).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Composition {
    pub parts: Vec<u32>,
    pub type_b: bool,
}

impl Composition {
    pub fn new(parts: Vec<u32>, type_b: bool) -> Result<Self> {
        let ok = if type_b {
            !parts.is_empty() && parts[1..].iter().all(|&p| p > 0)
        } else {
            parts.iter().all(|&p| p > 0)
        };
        if ok {
            Ok(Self { parts, type_b })
        } else {
            Err(Error::InvalidComposition { parts, type_b })
        }
    }

    pub fn size(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Partial sums `{α₁, α₁+α₂, …, α₁+⋯+α_{k−1}}`.
    pub fn to_subset(&self) -> Vec<i32> {
        let mut acc = 0i32;
        let mut out = Vec::with_capacity(self.parts.len().saturating_sub(1));
        for &p in &self.parts[..self.parts.len().saturating_sub(1)] {
            acc += p as i32;
            out.push(acc);
        }
        out
    }

    /// Inverse of [`Composition::to_subset`]: `members ⊆ [n-1]` (type A) or
    /// `⊆ [0, n-1]` (type B).
    pub fn from_subset(members: &[i32], n: usize, type_b: bool) -> Result<Self> {
        let mut sorted = members.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let lo = if type_b { 0 } else { 1 };
        let flavor = if type_b {
            Flavor::DescentB
        } else {
            Flavor::DescentA
        };
        if sorted.iter().any(|&m| m < lo || m > n as i32 - 1) {
            return Err(Error::SubsetOutOfRange {
                members: sorted,
                n,
                flavor,
            });
        }
        if !type_b && n == 0 {
            return Ok(Self {
                parts: Vec::new(),
                type_b,
            });
        }
        let mut parts = Vec::with_capacity(sorted.len() + 1);
        let mut prev = 0i32;
        for &m in sorted.iter().chain(std::iter::once(&(n as i32))) {
            parts.push((m - prev) as u32);
            prev = m;
        }
        Ok(Self { parts, type_b })
    }

    /// All compositions (type A, `2^{n-1}` of them for `n ≥ 1`) or
    /// pseudo-compositions (type B, `2^n`) of `n`.
    pub fn all(n: usize, type_b: bool) -> Vec<Composition> {
        let (lo, hi) = if type_b { (0, n as i32 - 1) } else { (1, n as i32 - 1) };
        let width = (hi - lo + 1).max(0) as u32;
        (0..1u64 << width)
            .map(|mask| {
                let members: Vec<i32> = (0..width)
                    .filter(|b| mask >> b & 1 == 1)
                    .map(|b| lo + b as i32)
                    .collect();
                Composition::from_subset(&members, n, type_b).expect("in range by construction")
            })
            .collect()
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn sp(s: &str) -> SignedPermutation {
        s.parse().unwrap()
    }

    #[test]
    fn peak_examples() {
        let pi = p("2,1,4,3,5");
        assert_eq!(peak_set(&pi, Flavor::InteriorPeak).unwrap().members, vec![3]);
        assert_eq!(peak_set(&pi, Flavor::LeftPeak).unwrap().members, vec![1, 3]);
        let b = sp("-2,3,4,-5,1");
        assert_eq!(peak_set(&b, Flavor::TypeBPeak).unwrap().members, vec![0, 3]);
        assert!(peak_set(&Permutation::identity(6), Flavor::InteriorPeak)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn descent_examples() {
        assert_eq!(
            descent_set(&p("2,1,4,3,5"), Flavor::DescentA).unwrap().members,
            vec![1, 3]
        );
        assert_eq!(
            descent_set(&sp("-2,3,4,-5,1"), Flavor::DescentB).unwrap().members,
            vec![0, 3]
        );
        assert!(descent_set(&Permutation::identity(4), Flavor::DescentA)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn flavor_mismatch_is_rejected() {
        let pi = p("2,1,3");
        assert!(matches!(
            peak_set(&pi, Flavor::DescentA),
            Err(Error::FlavorMismatch { .. })
        ));
        assert!(matches!(
            descent_set(&pi, Flavor::LeftPeak),
            Err(Error::FlavorMismatch { .. })
        ));
    }

    #[test]
    fn right_and_exterior_conventions() {
        let pi = p("2,1,4,3,5");
        assert_eq!(peak_set(&pi, Flavor::RightPeak).unwrap().members, vec![3, 5]);
        assert_eq!(
            peak_set(&pi, Flavor::ExteriorPeak).unwrap().members,
            vec![1, 3, 5]
        );
    }

    #[test]
    fn composition_examples() {
        let pi = p("1,3,2");
        let other = p("2,3,1");
        assert_eq!(pi.compose(&other).unwrap(), p("3,2,1"));
        assert_eq!(pi.compose(&pi.inverse()).unwrap(), Permutation::identity(3));
        let neg = sp("-1");
        assert_eq!(neg.compose(&neg).unwrap(), sp("1"));
        assert!(matches!(
            pi.compose(&Permutation::identity(2)),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn group_sizes_and_ranks() {
        assert_eq!(Permutation::all(3).count(), 6);
        assert_eq!(SignedPermutation::all(2).count(), 8);
        for k in 0..group_order(3, Kind::B) {
            assert_eq!(SignedPermutation::unrank(3, k).rank(), k);
        }
        let first: Vec<_> = Permutation::all(3).map(|p| p.to_string()).collect();
        assert_eq!(first[0], "1,2,3");
        assert_eq!(first[5], "3,2,1");
    }

    #[test]
    fn subset_composition_examples() {
        let a = Composition::new(vec![1, 2, 2], false).unwrap();
        assert_eq!(a.to_subset(), vec![1, 3]);
        assert_eq!(Composition::from_subset(&[1, 3], 5, false).unwrap(), a);
        let b = Composition::new(vec![0, 1], true).unwrap();
        assert_eq!(b.to_subset(), vec![0]);
        assert_eq!(Composition::from_subset(&[0], 1, true).unwrap(), b);
        let ones = Composition::new(vec![1; 4], false).unwrap();
        assert_eq!(ones.to_subset(), vec![1, 2, 3]);
        assert!(Composition::from_subset(&[0], 3, false).is_err());
        assert!(Composition::from_subset(&[3], 3, true).is_err());
        assert!(Composition::new(vec![0, 1], false).is_err());
        assert!(Composition::new(vec![1, 0], true).is_err());
    }

    #[test]
    fn composition_counts() {
        for n in 1..=6 {
            assert_eq!(Composition::all(n, false).len(), 1 << (n - 1));
            assert_eq!(Composition::all(n, true).len(), 1 << n);
        }
        assert_eq!(Composition::all(0, false), vec![Composition::new(vec![], false).unwrap()]);
        assert_eq!(Composition::all(0, true), vec![Composition::new(vec![0], true).unwrap()]);
    }

    #[test]
    fn peak_set_lists() {
        let sets: Vec<Vec<i32>> = enumerate_peak_sets(4, Flavor::InteriorPeak)
            .into_iter()
            .map(|s| s.members)
            .collect();
        assert_eq!(sets, vec![vec![], vec![2], vec![3]]);
        let sets: Vec<Vec<i32>> = enumerate_peak_sets(2, Flavor::TypeBPeak)
            .into_iter()
            .map(|s| s.members)
            .collect();
        assert_eq!(sets, vec![vec![], vec![0], vec![1]]);
        assert_eq!(enumerate_peak_sets(1, Flavor::InteriorPeak).len(), 1);
    }

    #[test]
    fn fibonacci_convention() {
        let f: Vec<u64> = (0..8).map(fibonacci).collect();
        assert_eq!(f, vec![1, 1, 2, 3, 5, 8, 13, 21]);
    }

    #[test]
    fn statset_validation() {
        assert!(StatSet::new(vec![2, 3], Flavor::InteriorPeak, 5).is_err());
        assert!(StatSet::new(vec![1], Flavor::InteriorPeak, 5).is_err());
        assert!(StatSet::new(vec![0, 2], Flavor::TypeBPeak, 3).is_ok());
        assert_eq!(
            StatSet::new(vec![3, 0], Flavor::TypeBPeak, 5).unwrap().to_string(),
            "{0,3}"
        );
    }
}
