//! Exact span computations over the rationals by fraction-free Gaussian
//! elimination. Rows are kept as primitive integer vectors in echelon form,
//! each carrying the integer combination of inserted inputs it equals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone)]
struct EchelonRow {
    pivot: usize,
    data: Vec<BigInt>,
    /// `data = Σ combo[i] · input[i]`
    combo: Vec<BigInt>,
}

/// An incrementally built basis of a subspace of `ℚ^dim`.
#[derive(Debug, Clone)]
pub struct SpanBasis {
    dim: usize,
    rows: Vec<EchelonRow>,
    inputs: usize,
}

/// Outcome of reducing a vector against a [`SpanBasis`].
#[derive(Debug, Clone)]
pub struct Reduction {
    /// Primitive integer residual; zero iff the vector lies in the span.
    pub residual: Vec<BigInt>,
    /// When the residual is zero: `v = Σ coeffs[i] · input[i]`.
    pub coeffs: Option<Vec<BigRational>>,
}

fn clear_denominators(v: &[BigRational]) -> (Vec<BigInt>, BigInt) {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints = v
        .iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect();
    (ints, lcm)
}

fn first_nonzero(v: &[BigInt]) -> Option<usize> {
    v.iter().position(|x| !x.is_zero())
}

fn content(parts: &[&[BigInt]]) -> BigInt {
    let mut g = BigInt::zero();
    for p in parts {
        for x in p.iter() {
            if !x.is_zero() {
                g = g.gcd(x);
                if g.is_one() {
                    return g;
                }
            }
        }
    }
    g
}

fn divide_all(v: &mut [BigInt], g: &BigInt) {
    for x in v.iter_mut() {
        *x = &*x / g;
    }
}

impl SpanBasis {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            rows: Vec::new(),
            inputs: 0,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Number of vectors passed to [`SpanBasis::insert`] so far.
    pub fn input_count(&self) -> usize {
        self.inputs
    }

    /// Reduces `w` in place; `self_coeff` and `combo` track
    /// `w = self_coeff · v + Σ combo[i] · input[i]`.
    fn reduce_ints(&self, w: &mut Vec<BigInt>, self_coeff: &mut BigInt, combo: &mut Vec<BigInt>) {
        combo.resize(self.inputs, BigInt::zero());
        for row in &self.rows {
            let b = w[row.pivot].clone();
            if b.is_zero() {
                continue;
            }
            let a = row.data[row.pivot].clone();
            let g = a.gcd(&b);
            let (a, b) = (&a / &g, &b / &g);
            for (x, y) in w.iter_mut().zip(&row.data) {
                if !y.is_zero() {
                    *x = &a * &*x - &b * y;
                } else if !x.is_zero() {
                    *x = &a * &*x;
                }
            }
            *self_coeff = &a * &*self_coeff;
            for (i, c) in combo.iter_mut().enumerate() {
                let rc = row.combo.get(i).cloned().unwrap_or_default();
                *c = &a * &*c - &b * rc;
            }
            let g = content(&[w, combo, std::slice::from_ref(self_coeff)]);
            if !g.is_zero() && !g.is_one() {
                divide_all(w, &g);
                divide_all(combo, &g);
                *self_coeff = &*self_coeff / &g;
            }
        }
    }

    /// Reduces `v` against the current rows without modifying the basis.
    pub fn reduce(&self, v: &[BigRational]) -> Reduction {
        assert_eq!(v.len(), self.dim, "vector length does not match span dimension");
        let (mut w, mut self_coeff) = clear_denominators(v);
        let mut combo = Vec::new();
        self.reduce_ints(&mut w, &mut self_coeff, &mut combo);
        let coeffs = first_nonzero(&w).is_none().then(|| {
            combo
                .iter()
                .map(|c| BigRational::new(-c.clone(), self_coeff.clone()))
                .collect()
        });
        let g = content(&[&w]);
        if !g.is_zero() {
            divide_all(&mut w, &g);
        }
        Reduction {
            residual: w,
            coeffs,
        }
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        self.reduce(v).coeffs.is_some()
    }

    /// Adds `v` as a new input; returns whether it enlarged the span.
    pub fn insert(&mut self, v: &[BigRational]) -> bool {
        assert_eq!(v.len(), self.dim, "vector length does not match span dimension");
        let (mut w, mut self_coeff) = clear_denominators(v);
        let mut combo = Vec::new();
        self.reduce_ints(&mut w, &mut self_coeff, &mut combo);
        let index = self.inputs;
        self.inputs += 1;
        let Some(pivot) = first_nonzero(&w) else {
            return false;
        };
        combo.resize(self.inputs, BigInt::zero());
        combo[index] = self_coeff;
        if w[pivot].is_negative() {
            w.iter_mut().for_each(|x| *x = -&*x);
            combo.iter_mut().for_each(|x| *x = -&*x);
        }
        let at = self.rows.partition_point(|r| r.pivot < pivot);
        self.rows.insert(
            at,
            EchelonRow {
                pivot,
                data: w,
                combo,
            },
        );
        true
    }

    /// Rational basis vectors of the span (echelon rows).
    pub fn basis_vectors(&self) -> Vec<Vec<BigRational>> {
        self.rows
            .iter()
            .map(|r| r.data.iter().map(|x| BigRational::from_integer(x.clone())).collect())
            .collect()
    }
}

/// Exact rank of a list of rational vectors of equal length.
pub fn rank(vectors: &[Vec<BigRational>]) -> usize {
    let Some(first) = vectors.first() else {
        return 0;
    };
    let mut span = SpanBasis::new(first.len());
    for v in vectors {
        span.insert(v);
    }
    span.rank()
}

pub fn to_rational(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&x| BigRational::from_integer(x.into())).collect()
}
