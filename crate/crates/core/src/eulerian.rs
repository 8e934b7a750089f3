//! Enriched order polynomials, the series `ρ(x) = Σ_π Ω(π; x/2) π`, its
//! idempotent coefficients, peak-number subalgebras, and a battery of
//! statistics whose class sums fail to close.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::enriched::{count_epp, Alphabet};
use crate::error::{Error, Result};
use crate::group_algebra::{
    class_sums, closure_check, count_sums, multiplicative_closure, AlgebraElement, Group, Witness,
};
use crate::linalg::SpanBasis;
use crate::perm_stats::{peak_count, Flavor, Kind, Permutation, Window};

/// Exact polynomial in one variable, ascending coefficients, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RationalPolynomial {
    coeffs: Vec<BigRational>,
}

impl RationalPolynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> BigRational {
        self.coeffs.get(d).cloned().unwrap_or_else(BigRational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// `p(c·x)`.
    pub fn rescale(&self, c: &BigRational) -> Self {
        let mut pow = BigRational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &pow);
            pow *= c;
        }
        Self::new(out)
    }

    fn mul_linear(&self, root: &BigRational) -> Self {
        // (x - root) · p
        let mut out = vec![BigRational::zero(); self.coeffs.len() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            out[i + 1] += a;
            out[i] -= a * root;
        }
        Self::new(out)
    }

    /// The unique polynomial of degree `< points.len()` through the points.
    pub fn interpolate(points: &[(BigRational, BigRational)]) -> Self {
        let mut acc = vec![BigRational::zero(); points.len()];
        for (i, (xi, yi)) in points.iter().enumerate() {
            let mut basis = Self::new(vec![BigRational::one()]);
            let mut denom = BigRational::one();
            for (j, (xj, _)) in points.iter().enumerate() {
                if i != j {
                    basis = basis.mul_linear(xj);
                    denom *= xi - xj;
                }
            }
            let scale = yi / denom;
            for (a, b) in acc.iter_mut().zip(basis.coeffs.iter()) {
                *a += b * &scale;
            }
        }
        Self::new(acc)
    }
}

impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            match (first, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            match d {
                0 => write!(f, "{mag}")?,
                1 => write!(f, "{mag}·x")?,
                _ => write!(f, "{mag}·x^{d}")?,
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

fn int(k: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

/// `Ω(π; x)`: interpolates `k ↦ |𝓔(π; prime(k))|` at `k = 0..=n`.
pub fn order_polynomial_of(pi: &Permutation) -> Result<RationalPolynomial> {
    let n = pi.window().len();
    let mut points = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let count = count_epp(pi, &Alphabet::prime(k))?;
        points.push((int(k), BigRational::from_integer(count.into())));
    }
    Ok(RationalPolynomial::interpolate(&points))
}

/// A permutation of `[n]` with `peaks` interior peaks: `1, 3, 2, 5, 4, …` pattern.
pub fn peak_count_representative(n: usize, peaks: usize) -> Result<Permutation> {
    if n == 0 && peaks == 0 {
        return Permutation::new(Vec::new());
    }
    if n == 0 || 2 * peaks + 1 > n {
        return Err(Error::UnrealizablePeakCount { n, peaks });
    }
    let mut w: Vec<i32> = (1..=n as i32).collect();
    for p in 0..peaks {
        w.swap(2 * p + 1, 2 * p + 2);
    }
    let pi = Permutation::new(w)?;
    debug_assert_eq!(peak_count(&pi, Flavor::InteriorPeak), peaks);
    Ok(pi)
}

/// `Ω(i; x)` for permutations of `[n]` with `i` interior peaks.
pub fn order_polynomial(peaks: usize, n: usize) -> Result<RationalPolynomial> {
    order_polynomial_of(&peak_count_representative(n, peaks)?)
}

/// A polynomial in `x` with group-algebra coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraPolynomial {
    pub coeffs: Vec<AlgebraElement>,
}

/// `ρ(x) = Σ_π Ω(π; x/2) π` over `S_n`, coefficient `d` of `x^d` at index `d`.
pub fn rho(group: &Group) -> Result<AlgebraPolynomial> {
    if group.kind() != Kind::A {
        return Err(Error::KindMismatch {
            expected: Kind::A,
            found: group.kind(),
        });
    }
    let n = group.n();
    let half = BigRational::new(1.into(), 2.into());
    let mut coeffs = vec![AlgebraElement::zero(n, Kind::A); n + 1];
    for r in 0..group.order() {
        let pi = Permutation::new(group.window(r).to_vec())?;
        let omega = order_polynomial_of(&pi)?.rescale(&half);
        for (d, c) in omega.coeffs().iter().enumerate() {
            coeffs[d].add_term(r, c.clone());
        }
    }
    Ok(AlgebraPolynomial { coeffs })
}

/// A nonzero coefficient of `ρ`, labeled by its power of `x` and by the
/// index of the displayed expansion (`x^{2i}` for even `n`, `x^{2i-1}` for odd `n`).
#[derive(Debug, Clone)]
pub struct Idempotent {
    pub degree: usize,
    pub index: usize,
    pub element: AlgebraElement,
}

pub fn idempotents(rho: &AlgebraPolynomial, n: usize) -> Vec<Idempotent> {
    rho.coeffs
        .iter()
        .enumerate()
        .filter(|(_, e)| !e.is_zero())
        .map(|(degree, e)| Idempotent {
            degree,
            index: if n.is_multiple_of(2) { degree / 2 } else { degree.div_ceil(2) },
            element: e.clone(),
        })
        .collect()
}

/// Outcome of comparing `ρ(x)ρ(y)` with `ρ(xy)`.
#[derive(Debug, Clone, Serialize)]
pub struct RhoReport {
    pub n: usize,
    /// `(a, b)` whose `x^a y^b` coefficients differ.
    pub mismatches: Vec<(usize, usize)>,
    /// Powers of `x` of the wrong parity with nonzero coefficient.
    pub wrong_parity: Vec<usize>,
    pub idempotent_count: usize,
    /// Whether the idempotents sum to the identity (reported, not required).
    pub sums_to_unit: bool,
}

impl RhoReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.wrong_parity.is_empty()
    }
}

/// `[x^a y^b] ρ(x)ρ(y) = c_a c_b` must equal `[x^a y^b] ρ(xy) = δ_{ab} c_a`.
pub fn verify_rho_multiplicativity(group: &Group) -> Result<RhoReport> {
    let n = group.n();
    let r = rho(group)?;
    let mut mismatches = Vec::new();
    for (a, ca) in r.coeffs.iter().enumerate() {
        for (b, cb) in r.coeffs.iter().enumerate() {
            let lhs = ca.convolve(cb, group)?;
            let rhs = if a == b {
                ca.clone()
            } else {
                AlgebraElement::zero(n, Kind::A)
            };
            if lhs != rhs {
                mismatches.push((a, b));
            }
        }
    }
    let wrong_parity = r
        .coeffs
        .iter()
        .enumerate()
        .filter(|(d, e)| d % 2 != n % 2 && !e.is_zero())
        .map(|(d, _)| d)
        .collect();
    let ids = idempotents(&r, n);
    let mut total = AlgebraElement::zero(n, Kind::A);
    for e in &ids {
        total = total.add(&e.element)?;
    }
    Ok(RhoReport {
        n,
        mismatches,
        wrong_parity,
        idempotent_count: ids.len(),
        sums_to_unit: total == AlgebraElement::unit(group),
    })
}

/// Statistics whose peak-number sums give an Eulerian-type basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum EulerianFlavor {
    Interior,
    Left,
    TypeB,
    RightNumber,
    ExteriorNumber,
}

impl EulerianFlavor {
    pub fn peak_flavor(self) -> Flavor {
        match self {
            EulerianFlavor::Interior => Flavor::InteriorPeak,
            EulerianFlavor::Left => Flavor::LeftPeak,
            EulerianFlavor::TypeB => Flavor::TypeBPeak,
            EulerianFlavor::RightNumber => Flavor::RightPeak,
            EulerianFlavor::ExteriorNumber => Flavor::ExteriorPeak,
        }
    }
}

impl std::str::FromStr for EulerianFlavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "interior" => EulerianFlavor::Interior,
            "left" => EulerianFlavor::Left,
            "typeB" | "typeb" => EulerianFlavor::TypeB,
            "rightNumber" | "right" => EulerianFlavor::RightNumber,
            "exteriorNumber" | "exterior" => EulerianFlavor::ExteriorNumber,
            _ => return Err(Error::ParseWindow(format!("unknown Eulerian flavor {s}"))),
        })
    }
}

/// One sum per realized peak count, ascending by count.
pub fn eulerian_basis(group: &Group, flavor: EulerianFlavor) -> Result<Vec<(usize, AlgebraElement)>> {
    count_sums(group, flavor.peak_flavor())
}

/// Whether two lists span the same subspace, and that subspace's dimension.
pub fn same_span(group: &Group, a: &[AlgebraElement], b: &[AlgebraElement]) -> (bool, usize, usize) {
    let build = |xs: &[AlgebraElement]| {
        let mut s = SpanBasis::new(group.order());
        for x in xs {
            s.insert(&x.to_dense(group));
        }
        s
    };
    let (sa, sb) = (build(a), build(b));
    let equal = sa.rank() == sb.rank()
        && b.iter().all(|x| sa.contains(&x.to_dense(group)))
        && a.iter().all(|x| sb.contains(&x.to_dense(group)));
    (equal, sa.rank(), sb.rank())
}

/// Whether all pairwise products commute.
pub fn is_commutative(group: &Group, basis: &[AlgebraElement]) -> Result<bool> {
    for (i, x) in basis.iter().enumerate() {
        for y in &basis[i + 1..] {
            if x.convolve(y, group)? != y.convolve(x, group)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Statistics in the negative battery.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum NegativeStatistic {
    /// Right peak sets on `S_n`.
    RightPeakSet,
    /// Exterior peak sets on `S_n`.
    ExteriorPeakSet,
    /// Peak sets on `B_n` with position 0 ignored (positions `[1, n-1]`, `π(0) = 0`).
    TypeBInteriorPeakSet,
    /// Number of such peaks on `B_n`.
    TypeBInteriorPeakNumber,
    /// Exterior peak sets on `B_n` (positions `[1, n]`, `π(0) = π(n+1) = 0`).
    TypeBExteriorPeakSet,
    TypeBExteriorPeakNumber,
    /// Control case: interior peak sets on `S_n` (expected closed).
    InteriorPeakSetControl,
}

impl NegativeStatistic {
    pub const BATTERY: [NegativeStatistic; 6] = [
        NegativeStatistic::RightPeakSet,
        NegativeStatistic::ExteriorPeakSet,
        NegativeStatistic::TypeBInteriorPeakSet,
        NegativeStatistic::TypeBInteriorPeakNumber,
        NegativeStatistic::TypeBExteriorPeakSet,
        NegativeStatistic::TypeBExteriorPeakNumber,
    ];

    pub fn kind(self) -> Kind {
        match self {
            NegativeStatistic::RightPeakSet
            | NegativeStatistic::ExteriorPeakSet
            | NegativeStatistic::InteriorPeakSetControl => Kind::A,
            _ => Kind::B,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            NegativeStatistic::RightPeakSet => "right peak set",
            NegativeStatistic::ExteriorPeakSet => "exterior peak set",
            NegativeStatistic::TypeBInteriorPeakSet => "typeB interior peak set",
            NegativeStatistic::TypeBInteriorPeakNumber => "typeB interior peak number",
            NegativeStatistic::TypeBExteriorPeakSet => "typeB exterior peak set",
            NegativeStatistic::TypeBExteriorPeakNumber => "typeB exterior peak number",
            NegativeStatistic::InteriorPeakSetControl => "interior peak set (control)",
        }
    }

    /// The class-sum basis of this statistic on `group`.
    pub fn basis(self, group: &Group) -> Result<Vec<AlgebraElement>> {
        let sets = |f| -> Result<Vec<AlgebraElement>> {
            Ok(class_sums(group, f)?.into_iter().map(|p| p.1).collect())
        };
        let numbers = |f| -> Result<Vec<AlgebraElement>> {
            Ok(count_sums(group, f)?.into_iter().map(|p| p.1).collect())
        };
        match self {
            NegativeStatistic::RightPeakSet => sets(Flavor::RightPeak),
            NegativeStatistic::ExteriorPeakSet => sets(Flavor::ExteriorPeak),
            NegativeStatistic::InteriorPeakSetControl => sets(Flavor::InteriorPeak),
            NegativeStatistic::TypeBInteriorPeakSet => sets(Flavor::LeftPeak),
            NegativeStatistic::TypeBInteriorPeakNumber => numbers(Flavor::LeftPeak),
            NegativeStatistic::TypeBExteriorPeakSet => sets(Flavor::ExteriorPeak),
            NegativeStatistic::TypeBExteriorPeakNumber => numbers(Flavor::ExteriorPeak),
        }
    }
}

/// First closure failure of a battery statistic; witness indices refer to
/// [`NegativeStatistic::basis`] at `n`.
#[derive(Debug, Clone)]
pub struct NegativeResult {
    pub statistic: NegativeStatistic,
    /// Smallest `n` with a violation, or the largest `n` tried if none.
    pub n: usize,
    pub closed: bool,
    pub basis_dim: usize,
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, Serialize)]
pub struct NegativeResultJson {
    pub statistic: String,
    pub n: usize,
    pub closed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessJson>,
    #[serde(rename = "closureDim", skip_serializing_if = "Option::is_none")]
    pub closure_dim: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessJson {
    pub left: usize,
    pub right: usize,
    #[serde(rename = "residualSupport")]
    pub residual_support: usize,
}

impl NegativeResult {
    pub fn to_json(&self) -> NegativeResultJson {
        NegativeResultJson {
            statistic: self.statistic.name().to_string(),
            n: self.n,
            closed: self.closed,
            witness: self.witness.as_ref().map(|w| WitnessJson {
                left: w.left,
                right: w.right,
                residual_support: w.residual.len(),
            }),
            closure_dim: None,
        }
    }
}

/// Sweeps `n = 1..=n_max` and stops at the first non-closed span.
pub fn search_violation(statistic: NegativeStatistic, n_max: usize) -> Result<NegativeResult> {
    let mut last = None;
    for n in 1..=n_max {
        let group = Group::new(n, statistic.kind());
        let basis = statistic.basis(&group)?;
        let report = closure_check(&group, &basis)?;
        let result = NegativeResult {
            statistic,
            n,
            closed: report.closed,
            basis_dim: report.dim,
            witness: report.witness,
        };
        if !result.closed {
            return Ok(result);
        }
        last = Some(result);
    }
    last.ok_or(Error::UnrealizablePeakCount { n: 0, peaks: 0 })
}

/// Runs every battery statistic (type A up to `n_max_a`, type B up to `n_max_b`).
pub fn negative_battery(n_max_a: usize, n_max_b: usize) -> Result<Vec<NegativeResult>> {
    NegativeStatistic::BATTERY
        .iter()
        .map(|&s| {
            let n_max = if s.kind() == Kind::A { n_max_a } else { n_max_b };
            search_violation(s, n_max)
        })
        .collect()
}

/// Dimension data for the algebra generated by right-peak-number sums.
#[derive(Debug, Clone, Serialize)]
pub struct RightNumberClosure {
    pub n: usize,
    pub input_dim: usize,
    pub closure_dim: usize,
    pub group_order: usize,
}

impl RightNumberClosure {
    pub fn proper(&self) -> bool {
        self.input_dim < self.closure_dim && self.closure_dim < self.group_order
    }
}

pub fn right_number_closure(n: usize) -> Result<RightNumberClosure> {
    let group = Group::new(n, Kind::A);
    let basis: Vec<AlgebraElement> = eulerian_basis(&group, EulerianFlavor::RightNumber)?
        .into_iter()
        .map(|p| p.1)
        .collect();
    let gen = multiplicative_closure(&group, &basis)?;
    Ok(RightNumberClosure {
        n,
        input_dim: gen.input_dim,
        closure_dim: gen.dim,
        group_order: group.order(),
    })
}

/// Largest absolute residual entry, for reporting.
pub fn residual_height(w: &Witness) -> BigInt {
    w.residual
        .iter()
        .map(|(_, x)| x.abs())
        .max()
        .unwrap_or_default()
}
