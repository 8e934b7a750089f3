//! Finite labeled posets, type B posets, and their linear extensions.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::perm_stats::{Permutation, SignedPermutation};

/// A strict partial order on the labels `1..=n`, stored transitively closed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledPoset {
    n: usize,
    less: Vec<Vec<bool>>,
}

fn close_transitively(less: &mut [Vec<bool>]) {
    let m = less.len();
    for k in 0..m {
        for i in 0..m {
            if less[i][k] {
                for j in 0..m {
                    if less[k][j] {
                        less[i][j] = true;
                    }
                }
            }
        }
    }
}

fn parse_relation(line: &str) -> Result<Option<(i32, i32)>> {
    let line = line.trim();
    if line.is_empty() || line.starts_with('#') {
        return Ok(None);
    }
    let bad = || Error::InvalidPoset(format!("cannot parse relation {line:?}"));
    let (a, b, flip) = if let Some((a, b)) = line.split_once('<') {
        (a, b, false)
    } else if let Some((a, b)) = line.split_once('>') {
        (a, b, true)
    } else {
        return Err(bad());
    };
    let a: i32 = a.trim().parse().map_err(|_| bad())?;
    let b: i32 = b.trim().parse().map_err(|_| bad())?;
    Ok(Some(if flip { (b, a) } else { (a, b) }))
}

impl LabeledPoset {
    /// Builds the poset generated by `a < b` for each pair (labels in `1..=n`).
    pub fn from_relations(n: usize, pairs: &[(i32, i32)]) -> Result<Self> {
        let mut less = vec![vec![false; n]; n];
        for &(a, b) in pairs {
            if a < 1 || b < 1 || a as usize > n || b as usize > n {
                return Err(Error::InvalidPoset(format!("label out of range in {a}<{b}")));
            }
            less[a as usize - 1][b as usize - 1] = true;
        }
        close_transitively(&mut less);
        if (0..n).any(|i| less[i][i]) {
            return Err(Error::InvalidPoset("relations contain a cycle".into()));
        }
        Ok(Self { n, less })
    }

    /// Parses one `a<b` (or `a>b`) relation per line; `n` defaults to the largest label.
    pub fn parse(text: &str, n: Option<usize>) -> Result<Self> {
        let mut pairs = Vec::new();
        for line in text.lines() {
            if let Some(p) = parse_relation(line)? {
                pairs.push(p);
            }
        }
        let n = n.unwrap_or_else(|| {
            pairs
                .iter()
                .map(|&(a, b)| a.max(b).max(0) as usize)
                .max()
                .unwrap_or(0)
        });
        Self::from_relations(n, &pairs)
    }

    pub fn antichain(n: usize) -> Self {
        Self {
            n,
            less: vec![vec![false; n]; n],
        }
    }

    /// The total order of a permutation: `π(s) < π(s+1)`.
    pub fn chain(pi: &Permutation) -> Self {
        let w = crate::perm_stats::Window::window(pi);
        let pairs: Vec<(i32, i32)> = w.windows(2).map(|p| (p[0], p[1])).collect();
        Self::from_relations(w.len(), &pairs).expect("a chain is acyclic")
    }

    /// Random poset: a uniformly random total order, keeping each of its
    /// relations independently with probability `density`.
    pub fn random<R: Rng + ?Sized>(n: usize, density: f64, rng: &mut R) -> Self {
        let mut order: Vec<i32> = (1..=n as i32).collect();
        order.shuffle(rng);
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(density) {
                    pairs.push((order[i], order[j]));
                }
            }
        }
        Self::from_relations(n, &pairs).expect("subrelation of a total order")
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// `a <_P b` for labels in `1..=n`.
    pub fn less(&self, a: i32, b: i32) -> bool {
        self.less[a as usize - 1][b as usize - 1]
    }

    /// All strict relations `(a, b)` with `a <_P b`.
    pub fn relations(&self) -> Vec<(i32, i32)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if self.less[i][j] {
                    out.push((i as i32 + 1, j as i32 + 1));
                }
            }
        }
        out
    }

    /// `a <_P b` implies `π⁻¹(a) < π⁻¹(b)`.
    pub fn is_extended_by(&self, pi: &Permutation) -> bool {
        let inv = pi.inverse();
        let inv = crate::perm_stats::Window::window(&inv);
        self.relations()
            .iter()
            .all(|&(a, b)| inv[a as usize - 1] < inv[b as usize - 1])
    }

    /// The Jordan–Hölder set, by backtracking over minimal elements.
    pub fn linear_extensions(&self) -> Vec<Permutation> {
        let n = self.n;
        let mut below_count: Vec<usize> = (0..n)
            .map(|j| (0..n).filter(|&i| self.less[i][j]).count())
            .collect();
        let mut used = vec![false; n];
        let mut cur = Vec::with_capacity(n);
        let mut out = Vec::new();
        self.extend(&mut below_count, &mut used, &mut cur, &mut out);
        out
    }

    fn extend(
        &self,
        below_count: &mut [usize],
        used: &mut [bool],
        cur: &mut Vec<i32>,
        out: &mut Vec<Permutation>,
    ) {
        if cur.len() == self.n {
            out.push(Permutation::new(cur.clone()).expect("bijection by construction"));
            return;
        }
        for x in 0..self.n {
            if used[x] || below_count[x] > 0 {
                continue;
            }
            used[x] = true;
            cur.push(x as i32 + 1);
            for y in 0..self.n {
                if self.less[x][y] {
                    below_count[y] -= 1;
                }
            }
            self.extend(below_count, used, cur, out);
            for y in 0..self.n {
                if self.less[x][y] {
                    below_count[y] += 1;
                }
            }
            cur.pop();
            used[x] = false;
        }
    }
}

impl fmt::Display for LabeledPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, b) in self.relations() {
            writeln!(f, "{a}<{b}")?;
        }
        Ok(())
    }
}

/// The zig-zag poset on `π(1),…,π(n)`: `π(s) < π(s+1)` for `s ∉ I`,
/// `π(s) > π(s+1)` for `s ∈ I`.
pub fn zigzag_poset(pi: &Permutation, down: &[i32]) -> Result<LabeledPoset> {
    let w = crate::perm_stats::Window::window(pi);
    let n = w.len();
    if down.iter().any(|&s| s < 1 || s as usize >= n) {
        return Err(Error::InvalidPoset(format!(
            "zig-zag positions {down:?} not inside [1, {}]",
            n as i32 - 1
        )));
    }
    let pairs: Vec<(i32, i32)> = (1..n)
        .map(|s| {
            let (a, b) = (w[s - 1], w[s]);
            if down.contains(&(s as i32)) {
                (b, a)
            } else {
                (a, b)
            }
        })
        .collect();
    LabeledPoset::from_relations(n, &pairs)
}

/// A strict partial order on `{-n,…,0,…,n}` closed under `i < j ⇒ -j < -i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeBPoset {
    n: usize,
    less: Vec<Vec<bool>>,
}

impl TypeBPoset {
    /// Builds the type B poset generated by the given relations and their mirror images.
    pub fn from_relations(n: usize, pairs: &[(i32, i32)]) -> Result<Self> {
        let m = 2 * n + 1;
        let idx = |a: i32| (a + n as i32) as usize;
        let mut less = vec![vec![false; m]; m];
        for &(a, b) in pairs {
            if a.unsigned_abs() as usize > n || b.unsigned_abs() as usize > n {
                return Err(Error::InvalidPoset(format!("label out of range in {a}<{b}")));
            }
            less[idx(a)][idx(b)] = true;
            less[idx(-b)][idx(-a)] = true;
        }
        close_transitively(&mut less);
        if (0..m).any(|i| less[i][i]) {
            return Err(Error::InvalidPoset("relations contain a cycle".into()));
        }
        Ok(Self { n, less })
    }

    pub fn parse(text: &str, n: Option<usize>) -> Result<Self> {
        let mut pairs = Vec::new();
        for line in text.lines() {
            if let Some(p) = parse_relation(line)? {
                pairs.push(p);
            }
        }
        let n = n.unwrap_or_else(|| {
            pairs
                .iter()
                .map(|&(a, b)| a.unsigned_abs().max(b.unsigned_abs()) as usize)
                .max()
                .unwrap_or(0)
        });
        Self::from_relations(n, &pairs)
    }

    /// The total order `0 < π(1) < ⋯ < π(n)` of a signed permutation, mirrored.
    pub fn chain(pi: &SignedPermutation) -> Self {
        let w = crate::perm_stats::Window::window(pi);
        let mut pairs = Vec::with_capacity(w.len());
        let mut prev = 0;
        for &v in w {
            pairs.push((prev, v));
            prev = v;
        }
        Self::from_relations(w.len(), &pairs).expect("a chain is acyclic")
    }

    /// Random type B poset: a random signed total order, keeping each relation
    /// among `{0} ∪ {π(1..n)}` with probability `density`, then mirroring.
    pub fn random<R: Rng + ?Sized>(n: usize, density: f64, rng: &mut R) -> Self {
        let mut abs: Vec<i32> = (1..=n as i32).collect();
        abs.shuffle(rng);
        let upper: Vec<i32> = std::iter::once(0)
            .chain(abs.iter().map(|&a| if rng.gen_bool(0.5) { a } else { -a }))
            .collect();
        let mut pairs = Vec::new();
        for i in 0..upper.len() {
            for j in i + 1..upper.len() {
                if rng.gen_bool(density) {
                    pairs.push((upper[i], upper[j]));
                }
            }
        }
        Self::from_relations(n, &pairs).expect("subrelation of a symmetric total order")
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    fn idx(&self, a: i32) -> usize {
        (a + self.n as i32) as usize
    }

    pub fn less(&self, a: i32, b: i32) -> bool {
        self.less[self.idx(a)][self.idx(b)]
    }

    pub fn relations(&self) -> Vec<(i32, i32)> {
        let n = self.n as i32;
        let mut out = Vec::new();
        for a in -n..=n {
            for b in -n..=n {
                if self.less(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        self.relations().iter().all(|&(a, b)| self.less(-b, -a))
    }

    /// Whether the symmetric total order of `π` extends this poset.
    pub fn is_extended_by(&self, pi: &SignedPermutation) -> bool {
        let n = self.n as i32;
        let mut pos = vec![0i32; 2 * self.n + 1];
        for i in 1..=n {
            let v = pi.apply(i);
            pos[self.idx(v)] = i;
            pos[self.idx(-v)] = -i;
        }
        self.relations()
            .iter()
            .all(|&(a, b)| pos[self.idx(a)] < pos[self.idx(b)])
    }

    /// Linear extensions that are themselves type B posets, as signed windows.
    /// Built by placing `π(1), π(2), …` above `0` (and their negatives below),
    /// checking every relation once both endpoints have a position.
    pub fn linear_extensions(&self) -> Vec<SignedPermutation> {
        let mut pos: Vec<Option<i32>> = vec![None; 2 * self.n + 1];
        pos[self.idx(0)] = Some(0);
        let mut cur = Vec::with_capacity(self.n);
        let mut used = vec![false; self.n + 1];
        let mut out = Vec::new();
        self.extend_b(&mut pos, &mut used, &mut cur, &mut out);
        out
    }

    fn consistent(&self, pos: &[Option<i32>], x: i32) -> bool {
        let n = self.n as i32;
        for &a in &[x, -x] {
            let pa = pos[self.idx(a)].expect("just placed");
            for b in -n..=n {
                if let Some(pb) = pos[self.idx(b)] {
                    if self.less(a, b) && pa >= pb || self.less(b, a) && pb >= pa {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn extend_b(
        &self,
        pos: &mut [Option<i32>],
        used: &mut [bool],
        cur: &mut Vec<i32>,
        out: &mut Vec<SignedPermutation>,
    ) {
        if cur.len() == self.n {
            out.push(SignedPermutation::new(cur.clone()).expect("bijection by construction"));
            return;
        }
        let j = cur.len() as i32 + 1;
        for a in 1..=self.n as i32 {
            if used[a as usize] {
                continue;
            }
            for x in [-a, a] {
                pos[self.idx(x)] = Some(j);
                pos[self.idx(-x)] = Some(-j);
                if self.consistent(pos, x) {
                    used[a as usize] = true;
                    cur.push(x);
                    self.extend_b(pos, used, cur, out);
                    cur.pop();
                    used[a as usize] = false;
                }
                pos[self.idx(x)] = None;
                pos[self.idx(-x)] = None;
            }
        }
    }
}

impl fmt::Display for TypeBPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, b) in self.relations() {
            writeln!(f, "{a}<{b}")?;
        }
        Ok(())
    }
}
