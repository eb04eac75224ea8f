//! Equivariant cohomology computations for the ℤ₂×S¹ representation universe.
//!
//! The universe is spanned by ℂ₊, ℂ₋ (S¹ by weight one, ℤ₂ by ±1) and
//! ℝ₊, ℝ₋ (S¹ trivially, ℤ₂ by ±1). Isotropy groups of representation
//! spheres are among `{e, ℤ₂, ℤ̃₂, S¹, ℤ₂×S¹}`, where `ℤ̃₂` is generated by
//! `(g, −1)`.
//!
//! Coefficient systems enter only through their value on the free orbit, so
//! cochains of a free ℤ[ℤ₂]-complex with values in `M` are `Hom_{ℤ[ℤ₂]}(C, M)`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::snf::{kernel_mod2, rank_mod2, smith_normal_form};

/// Multiplicities of `a₊ℂ₊ ⊕ a₋ℂ₋ ⊕ b₊ℝ₊ ⊕ b₋ℝ₋`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RepMultiplicities {
    pub a_plus: u64,
    pub a_minus: u64,
    pub b_plus: u64,
    pub b_minus: u64,
}

impl RepMultiplicities {
    pub const fn new(a_plus: u64, a_minus: u64, b_plus: u64, b_minus: u64) -> Self {
        RepMultiplicities { a_plus, a_minus, b_plus, b_minus }
    }

    pub fn sum(&self, other: &RepMultiplicities) -> Self {
        RepMultiplicities {
            a_plus: self.a_plus + other.a_plus,
            a_minus: self.a_minus + other.a_minus,
            b_plus: self.b_plus + other.b_plus,
            b_minus: self.b_minus + other.b_minus,
        }
    }

    pub fn real_dim(&self) -> u64 {
        fixed_dims(self).e
    }
}

impl fmt::Display for RepMultiplicities {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}ℂ₊ ⊕ {}ℂ₋ ⊕ {}ℝ₊ ⊕ {}ℝ₋", self.a_plus, self.a_minus, self.b_plus, self.b_minus)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Subgroup {
    #[serde(rename = "e")]
    Trivial,
    #[serde(rename = "Z2")]
    Z2,
    #[serde(rename = "Z2~")]
    TwistedZ2,
    #[serde(rename = "S1")]
    Circle,
    #[serde(rename = "Z2xS1")]
    Full,
}

impl Subgroup {
    pub const ALL: [Subgroup; 5] = [Subgroup::Trivial, Subgroup::Z2, Subgroup::TwistedZ2, Subgroup::Circle, Subgroup::Full];

    /// Proper inclusions `K ⊂ H`.
    pub const INCLUSIONS: [(Subgroup, Subgroup); 7] = [
        (Subgroup::Trivial, Subgroup::Z2),
        (Subgroup::Trivial, Subgroup::TwistedZ2),
        (Subgroup::Trivial, Subgroup::Circle),
        (Subgroup::Trivial, Subgroup::Full),
        (Subgroup::Z2, Subgroup::Full),
        (Subgroup::TwistedZ2, Subgroup::Full),
        (Subgroup::Circle, Subgroup::Full),
    ];
}

/// Real dimensions of the fixed subspaces `V^H`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedDims {
    pub e: u64,
    pub z2: u64,
    pub z2_twisted: u64,
    pub s1: u64,
    pub full: u64,
}

impl FixedDims {
    pub fn get(&self, h: Subgroup) -> u64 {
        match h {
            Subgroup::Trivial => self.e,
            Subgroup::Z2 => self.z2,
            Subgroup::TwistedZ2 => self.z2_twisted,
            Subgroup::Circle => self.s1,
            Subgroup::Full => self.full,
        }
    }
}

pub fn fixed_dims(v: &RepMultiplicities) -> FixedDims {
    FixedDims {
        e: 2 * v.a_plus + 2 * v.a_minus + v.b_plus + v.b_minus,
        z2: 2 * v.a_plus + v.b_plus,
        z2_twisted: 2 * v.a_minus + v.b_plus,
        s1: v.b_plus + v.b_minus,
        full: v.b_plus,
    }
}

const IRREDUCIBLES: [RepMultiplicities; 4] = [
    RepMultiplicities::new(1, 0, 0, 0),
    RepMultiplicities::new(0, 1, 0, 0),
    RepMultiplicities::new(0, 0, 1, 0),
    RepMultiplicities::new(0, 0, 0, 1),
];

/// Subgroups `H` with `U^H ≠ 0` for some irreducible `U` of the universe.
pub fn detected_subgroups() -> Vec<Subgroup> {
    Subgroup::ALL
        .into_iter()
        .filter(|&h| IRREDUCIBLES.iter().any(|u| fixed_dims(u).get(h) > 0))
        .collect()
}

/// Pairs `K ⊂ H` with `U^H ≠ U^K` for some irreducible `U`.
pub fn distinguished_pairs() -> Vec<(Subgroup, Subgroup)> {
    Subgroup::INCLUSIONS
        .into_iter()
        .filter(|&(k, h)| IRREDUCIBLES.iter().any(|u| fixed_dims(u).get(h) != fixed_dims(u).get(k)))
        .collect()
}

/// Turns the virtual data `V₀ = k₊ℂ₊ ⊕ k₋ℂ₋`, `W₀` into actual representations
/// by adding `−k±ℂ±` to both sides whenever `k±` is negative.
pub fn shift_virtual(k_plus: i64, k_minus: i64, w0: &RepMultiplicities) -> (RepMultiplicities, RepMultiplicities) {
    let mut v0 = RepMultiplicities::default();
    let mut w0 = *w0;
    if k_plus >= 0 {
        v0.a_plus = k_plus as u64;
    } else {
        w0.a_plus += k_plus.unsigned_abs();
    }
    if k_minus >= 0 {
        v0.a_minus = k_minus as u64;
    } else {
        w0.a_minus += k_minus.unsigned_abs();
    }
    (v0, w0)
}

/// Both stable-range inequality families for `V'`, `V₀`, `W₀`.
pub fn suspension_families_hold(v_prime: &RepMultiplicities, v0: &RepMultiplicities, w0: &RepMultiplicities) -> bool {
    let (dv, d0, dw) = (fixed_dims(v_prime), fixed_dims(v0), fixed_dims(w0));
    let x = |h| (dv.get(h) + d0.get(h)) as i64;
    let c = |h| (dv.get(h) + dw.get(h)) as i64 - 1;
    let first = detected_subgroups().into_iter().all(|h| x(h) <= 2 * c(h));
    let second = distinguished_pairs().into_iter().all(|(k, h)| x(h) < c(k));
    first && second
}

/// Upper bound of the search box for each multiplicity of `V'`.
pub const SUSPENSION_BOX: u64 = 64;

/// Lexicographically minimal `V' = a₊ℂ₊ ⊕ a₋ℂ₋ ⊕ bℝ₊` putting the suspension
/// of `V₀ → W₀` in the stable range.
///
/// Adding an irreducible to `V'` never breaks either family, so feasibility
/// is monotone and the minimum is found one coordinate at a time.
pub fn stable_suspension(k_plus: i64, k_minus: i64, w0: &RepMultiplicities) -> Result<RepMultiplicities> {
    if w0.b_plus + w0.b_minus < 2 {
        return Err(Error::BPlusTooSmall);
    }
    let (v0, w0) = shift_virtual(k_plus, k_minus, w0);
    let max = SUSPENSION_BOX;
    let feasible = |a: u64, b: u64, c: u64| suspension_families_hold(&RepMultiplicities::new(a, b, c, 0), &v0, &w0);
    let first = |f: &dyn Fn(u64) -> bool| (0..=max).find(|&x| f(x));

    let too_big = || Error::SearchBoxExceeded(max as u32);
    let a_plus = first(&|a| feasible(a, max, max)).ok_or_else(too_big)?;
    let a_minus = first(&|b| feasible(a_plus, b, max)).ok_or_else(too_big)?;
    let b = first(&|c| feasible(a_plus, a_minus, c)).ok_or_else(too_big)?;

    let out = RepMultiplicities::new(a_plus, a_minus, b, 0);
    if !suspension_families_hold(&out, &v0, &w0) {
        return Err(Error::Internal("suspension result failed re-verification".into()));
    }
    Ok(out)
}

/// Underlying group of a coefficient module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Coefficients {
    #[serde(rename = "Z")]
    Integers,
    #[serde(rename = "Z/2")]
    Mod2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Action {
    Trivial,
    Sign,
}

/// An abelian group with a ℤ₂-action: the value of a coefficient system on
/// the free orbit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "ModuleFields")]
pub struct CoefficientModule {
    underlying: Coefficients,
    action: Action,
}

#[derive(Deserialize)]
struct ModuleFields {
    underlying: Coefficients,
    action: Action,
}

impl From<ModuleFields> for CoefficientModule {
    fn from(f: ModuleFields) -> Self {
        CoefficientModule::new(f.underlying, f.action)
    }
}

impl CoefficientModule {
    /// On ℤ/2 the sign action is the trivial one.
    pub fn new(underlying: Coefficients, action: Action) -> Self {
        let action = if underlying == Coefficients::Mod2 { Action::Trivial } else { action };
        CoefficientModule { underlying, action }
    }

    pub fn integers(action: Action) -> Self {
        Self::new(Coefficients::Integers, action)
    }

    pub fn mod2() -> Self {
        Self::new(Coefficients::Mod2, Action::Trivial)
    }

    pub fn underlying(&self) -> Coefficients {
        self.underlying
    }

    pub fn action(&self) -> Action {
        self.action
    }

    fn twist(&self) -> i64 {
        match self.action {
            Action::Trivial => 1,
            Action::Sign => -1,
        }
    }
}

impl fmt::Display for CoefficientModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let group = match self.underlying {
            Coefficients::Integers => "Z",
            Coefficients::Mod2 => "Z/2",
        };
        let action = match self.action {
            Action::Trivial => "trivial",
            Action::Sign => "sign",
        };
        write!(f, "{group} ({action} action)")
    }
}

/// A finitely generated abelian group as invariant factors: torsion orders
/// in divisibility order, then a `0` per infinite cyclic summand.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyGroup {
    #[serde(with = "crate::serial::vec")]
    pub invariant_factors: Vec<BigInt>,
}

impl CohomologyGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn from_parts(mut torsion: Vec<BigInt>, free_rank: usize) -> Self {
        torsion.retain(|d| !d.is_one());
        torsion.sort();
        torsion.extend(std::iter::repeat_n(BigInt::zero(), free_rank));
        CohomologyGroup { invariant_factors: torsion }
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn free_rank(&self) -> usize {
        self.invariant_factors.iter().filter(|d| d.is_zero()).count()
    }

    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariant_factors.iter().filter(|d| !d.is_zero()).cloned().collect()
    }
}

impl fmt::Display for CohomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|d| if d.is_zero() { "Z".to_string() } else { format!("Z/{d}") })
            .collect();
        f.write_str(&parts.join(" ⊕ "))
    }
}

/// A bounded complex of free ℤ[ℤ₂]-modules.
///
/// A module of rank `r` has the ordered ℤ-basis `σ₁, gσ₁, …, σ_r, gσ_r`.
/// `boundaries[i]` is `∂` from degree `lo + i + 1` to `lo + i` with columns
/// indexed by the source basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ComplexFields")]
pub struct EquivariantChainComplex {
    lo: i64,
    ranks: Vec<usize>,
    boundaries: Vec<IntMatrix>,
    top_degree: i64,
    derived: Vec<i64>,
}

#[derive(Deserialize)]
struct ComplexFields {
    lo: i64,
    ranks: Vec<usize>,
    boundaries: Vec<IntMatrix>,
    top_degree: i64,
    #[serde(default)]
    derived: Vec<i64>,
}

impl TryFrom<ComplexFields> for EquivariantChainComplex {
    type Error = Error;

    fn try_from(f: ComplexFields) -> Result<Self> {
        let mut c = EquivariantChainComplex::new(f.lo, f.ranks, f.boundaries)?;
        if !c.ranks.is_empty() && !(c.lo..=c.hi()).contains(&f.top_degree) {
            return Err(Error::InvalidComplex(format!("top_degree {} outside degree range", f.top_degree)));
        }
        c.top_degree = f.top_degree;
        c.derived = f.derived;
        Ok(c)
    }
}

/// Matrix of the generator `g` on a free module of rank `r`.
fn g_matrix(r: usize) -> IntMatrix {
    let mut m = IntMatrix::zeros(2 * r, 2 * r);
    for i in 0..r {
        m[(2 * i, 2 * i + 1)] = BigInt::one();
        m[(2 * i + 1, 2 * i)] = BigInt::one();
    }
    m
}

impl EquivariantChainComplex {
    /// Checks shapes, `∂∘∂ = 0`, and `g`-equivariance of every boundary.
    pub fn new(lo: i64, ranks: Vec<usize>, boundaries: Vec<IntMatrix>) -> Result<Self> {
        let expected = ranks.len().saturating_sub(1);
        if boundaries.len() != expected {
            return Err(Error::InvalidComplex(format!(
                "{} boundary matrices for {} degrees",
                boundaries.len(),
                ranks.len()
            )));
        }
        for (i, d) in boundaries.iter().enumerate() {
            let degree = lo + i as i64 + 1;
            if d.rows() != 2 * ranks[i] || d.cols() != 2 * ranks[i + 1] {
                return Err(Error::InvalidComplex(format!(
                    "boundary in degree {degree} is {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    2 * ranks[i],
                    2 * ranks[i + 1]
                )));
            }
            if &g_matrix(ranks[i]) * d != d * &g_matrix(ranks[i + 1]) {
                return Err(Error::InvalidComplex(format!("boundary in degree {degree} is not g-equivariant")));
            }
        }
        for (i, w) in boundaries.windows(2).enumerate() {
            if !(&w[0] * &w[1]).is_zero() {
                return Err(Error::InvalidComplex(format!(
                    "boundary composition into degree {} is nonzero",
                    lo + i as i64
                )));
            }
        }
        let top_degree = lo + ranks.len() as i64 - 1;
        Ok(EquivariantChainComplex { lo, ranks, boundaries, top_degree, derived: Vec::new() })
    }

    /// The complex with no chains at all.
    pub fn zero() -> Self {
        EquivariantChainComplex { lo: 0, ranks: Vec::new(), boundaries: Vec::new(), top_degree: 0, derived: Vec::new() }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.ranks.len() as i64 - 1
    }

    pub fn top_degree(&self) -> i64 {
        self.top_degree
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Degrees whose boundary is forced by `∂∘∂ = 0` rather than read off a
    /// cell structure.
    pub fn derived_degrees(&self) -> &[i64] {
        &self.derived
    }

    pub fn rank(&self, degree: i64) -> usize {
        if degree < self.lo || degree > self.hi() {
            return 0;
        }
        self.ranks[(degree - self.lo) as usize]
    }

    /// `∂_k : C_k → C_{k−1}`, if both degrees are in range.
    pub fn boundary(&self, degree: i64) -> Option<&IntMatrix> {
        if degree <= self.lo || degree > self.hi() {
            return None;
        }
        self.boundaries.get((degree - self.lo - 1) as usize)
    }

    fn check_degree(&self, degree: i64) -> Result<()> {
        if !self.ranks.is_empty() && (degree < self.lo || degree > self.hi()) {
            return Err(Error::DegreeOutOfRange { degree, lo: self.lo, hi: self.hi() });
        }
        Ok(())
    }

    /// Equivariant coboundary `δ^{k−1} : Hom(C_{k−1}, M) → Hom(C_k, M)` in the
    /// orbit basis: entry `(j, i)` is `a + t·b` where `∂σ_j` has coefficient
    /// `a` on `σ_i`, `b` on `gσ_i`, and `g` acts on `M` by `t`.
    fn equivariant_coboundary(&self, degree: i64, m: &CoefficientModule) -> IntMatrix {
        let (src, dst) = (self.rank(degree - 1), self.rank(degree));
        let mut out = IntMatrix::zeros(dst, src);
        if let Some(d) = self.boundary(degree) {
            let t = BigInt::from(m.twist());
            for j in 0..dst {
                for i in 0..src {
                    out[(j, i)] = &d[(2 * i, 2 * j)] + &t * &d[(2 * i + 1, 2 * j)];
                }
            }
        }
        out
    }

    /// Non-equivariant coboundary into degree `k`: the transpose of `∂_k`.
    fn plain_coboundary(&self, degree: i64) -> IntMatrix {
        match self.boundary(degree) {
            Some(d) => d.transpose(),
            None => IntMatrix::zeros(2 * self.rank(degree), 2 * self.rank(degree - 1)),
        }
    }
}

/// The relative complex of `(S^V/S¹, singular set)` in its top degrees.
///
/// `n = b₊ + 1 + 2(a₊ + a₋ − 1)`. Degrees `n` and `n−1` each carry one free
/// orbit with `∂_n = 1 − g`. The degree `n−2` orbit with `∂_{n−1} = 1 + g` is
/// included so that `H^{n−1}` is defined; it is recorded as derived.
pub fn top_complex(v: &RepMultiplicities) -> Result<EquivariantChainComplex> {
    if v.a_plus < 2 || v.a_minus < 2 {
        return Err(Error::MultiplicityTooSmall(format!(
            "a_plus = {}, a_minus = {} (both must be at least 2)",
            v.a_plus, v.a_minus
        )));
    }
    if v.b_minus != 0 {
        return Err(Error::Precondition(format!("b_minus = {} (must be 0)", v.b_minus)));
    }
    let dims = fixed_dims(v);
    let singular = [Subgroup::Z2, Subgroup::TwistedZ2, Subgroup::Circle, Subgroup::Full]
        .into_iter()
        .map(|h| dims.get(h))
        .max()
        .unwrap_or(0);
    let bound = dims.e.saturating_sub(4);
    if singular > bound {
        return Err(Error::SingularSetTooLarge { singular, bound });
    }

    let n = (v.b_plus + 1 + 2 * (v.a_plus + v.a_minus - 1)) as i64;
    let one_minus_g = IntMatrix::from_i64(&[[1, -1], [-1, 1]]);
    let one_plus_g = IntMatrix::from_i64(&[[1, 1], [1, 1]]);
    let mut c = EquivariantChainComplex::new(n - 2, vec![1, 1, 1], vec![one_plus_g, one_minus_g])?;
    c.derived = vec![n - 1];
    Ok(c)
}

/// `H^k = ker δ^k / im δ^{k−1}` of `Hom_{ℤ[ℤ₂]}(C, M)`.
pub fn bredon_cohomology(c: &EquivariantChainComplex, m: &CoefficientModule, degree: i64) -> Result<CohomologyGroup> {
    c.check_degree(degree)?;
    let r = c.rank(degree);
    if r == 0 {
        return Ok(CohomologyGroup::trivial());
    }
    let out = c.equivariant_coboundary(degree + 1, m);
    let inc = c.equivariant_coboundary(degree, m);
    match m.underlying() {
        Coefficients::Mod2 => {
            let dim = r - rank_mod2(&out) - rank_mod2(&inc);
            Ok(CohomologyGroup::from_parts(vec![BigInt::from(2); dim], 0))
        }
        Coefficients::Integers => {
            let s_in = smith_normal_form(&inc);
            let free = r - smith_normal_form(&out).rank() - s_in.rank();
            Ok(CohomologyGroup::from_parts(s_in.nonunit_factors(), free))
        }
    }
}

/// Image of `H^k(Hom_{ℤ[ℤ₂]}(C, M)) → H^k(Hom_ℤ(C, M))`, the map forgetting
/// equivariance.
///
/// Computed as `(φ(Z) + B)/B` with `Z` the equivariant cocycles and `B` the
/// non-equivariant coboundaries.
pub fn forgetful_image(c: &EquivariantChainComplex, m: &CoefficientModule, degree: i64) -> Result<CohomologyGroup> {
    c.check_degree(degree)?;
    let r = c.rank(degree);
    if r == 0 {
        return Ok(CohomologyGroup::trivial());
    }
    let delta = c.equivariant_coboundary(degree + 1, m);
    let cocycles = match m.underlying() {
        Coefficients::Mod2 => kernel_mod2(&delta),
        Coefficients::Integers => smith_normal_form(&delta).kernel_basis(),
    };
    let phi = forget(r, m).checked_mul(&cocycles)?;
    let b = c.plain_coboundary(degree);
    let span = hconcat(&phi, &b);
    match m.underlying() {
        Coefficients::Mod2 => {
            let dim = rank_mod2(&span) - rank_mod2(&b);
            Ok(CohomologyGroup::from_parts(vec![BigInt::from(2); dim], 0))
        }
        Coefficients::Integers => Ok(submodule_quotient(&span, &b)),
    }
}

/// `φ : M^r → M^{2r}`, `f ↦ (f(σ_i), f(gσ_i)) = (f_i, t·f_i)`.
fn forget(r: usize, m: &CoefficientModule) -> IntMatrix {
    let mut phi = IntMatrix::zeros(2 * r, r);
    for i in 0..r {
        phi[(2 * i, i)] = BigInt::one();
        phi[(2 * i + 1, i)] = BigInt::from(m.twist());
    }
    phi
}

fn hconcat(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let mut cols: Vec<Vec<BigInt>> = (0..a.cols()).map(|j| a.column(j)).collect();
    cols.extend((0..b.cols()).map(|j| b.column(j)));
    IntMatrix::from_columns(a.rows(), &cols)
}

/// `S/B` for the column spans `S ⊇ B` of `span` and `sub`.
fn submodule_quotient(span: &IntMatrix, sub: &IntMatrix) -> CohomologyGroup {
    // P·span·Q = D, so the columns d_i·(P⁻¹ e_i) form a basis of S and a
    // vector v ∈ S has coordinates (P v)_i / d_i.
    let s = smith_normal_form(span);
    let pb = s.p.checked_mul(sub).expect("shapes agree");
    let mut coords = IntMatrix::zeros(s.rank(), sub.cols());
    for (i, d) in s.factors.iter().enumerate() {
        for j in 0..sub.cols() {
            coords[(i, j)] = &pb[(i, j)] / d;
        }
    }
    let q = smith_normal_form(&coords);
    CohomologyGroup::from_parts(q.nonunit_factors(), s.rank() - q.rank())
}

/// Checks the cochain vanishing conditions below the top two degrees for the
/// pair `V = V' ⊕ V₀`, `W = V' ⊕ W₀`.
///
/// The indices are read off as `k± = a±(V) − a±(W)`; the real parts must
/// differ by `H⁺ = b₊^{ℤ₂}ℝ₊ ⊕ (b₊ − b₊^{ℤ₂})ℝ₋`.
pub fn low_degree_vanishing(
    v: &RepMultiplicities,
    w: &RepMultiplicities,
    profile: &crate::indexthy::ManifoldProfile,
) -> Result<bool> {
    if profile.b_plus == 0 || profile.b_plus_fixed == 0 {
        return Err(Error::Precondition(format!(
            "b_plus = {}, b_plus_fixed = {} (both must be positive)",
            profile.b_plus, profile.b_plus_fixed
        )));
    }
    let diff = |x: u64, y: u64| y as i64 - x as i64;
    let fixed = profile.b_plus_fixed;
    let anti = profile.b_plus - profile.b_plus_fixed;
    if diff(v.b_plus, w.b_plus) != fixed || diff(v.b_minus, w.b_minus) != anti {
        return Err(Error::InconsistentRepresentations(format!(
            "W − V has real part ({}, {}), expected ({fixed}, {anti})",
            diff(v.b_plus, w.b_plus),
            diff(v.b_minus, w.b_minus)
        )));
    }
    let (dv, dw) = (fixed_dims(v), fixed_dims(w));
    Ok(dv.z2 < 1 + dw.z2 && dv.z2_twisted < 1 + dw.z2_twisted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::indexthy::ManifoldProfile;

    fn z2_group(k: usize) -> CohomologyGroup {
        CohomologyGroup::from_parts(vec![BigInt::from(2); k], 0)
    }

    #[test]
    fn fixed_dims_examples() {
        let d = fixed_dims(&RepMultiplicities::new(1, 1, 1, 0));
        assert_eq!(d, FixedDims { e: 5, z2: 3, z2_twisted: 3, s1: 1, full: 1 });
        let d = fixed_dims(&RepMultiplicities::new(0, 0, 0, 1));
        assert_eq!(d, FixedDims { e: 1, z2: 0, z2_twisted: 0, s1: 1, full: 0 });
        assert_eq!(fixed_dims(&RepMultiplicities::default()), FixedDims::default());
    }

    #[test]
    fn universe_detects_everything() {
        assert_eq!(detected_subgroups().len(), 5);
        assert_eq!(distinguished_pairs().len(), 7);
    }

    #[test]
    fn suspension_examples() {
        let w0 = RepMultiplicities::new(0, 0, 5, 1);
        assert_eq!(stable_suspension(2, 2, &w0), Ok(RepMultiplicities::default()));
        let w0 = RepMultiplicities::new(0, 0, 2, 0);
        let v = stable_suspension(0, 0, &w0).unwrap();
        assert!(suspension_families_hold(&v, &RepMultiplicities::default(), &w0));
        assert_eq!(stable_suspension(0, 0, &RepMultiplicities::new(0, 0, 1, 0)), Err(Error::BPlusTooSmall));
    }

    #[test]
    fn suspension_with_negative_index() {
        let w0 = RepMultiplicities::new(0, 0, 3, 0);
        let v = stable_suspension(-1, 4, &w0).unwrap();
        let (v0, w0s) = shift_virtual(-1, 4, &w0);
        assert_eq!(v0, RepMultiplicities::new(0, 4, 0, 0));
        assert_eq!(w0s, RepMultiplicities::new(1, 0, 3, 0));
        assert!(suspension_families_hold(&v, &v0, &w0s));
    }

    #[test]
    fn top_complex_examples() {
        let c = top_complex(&RepMultiplicities::new(2, 2, 1, 0)).unwrap();
        assert_eq!(c.top_degree(), 8);
        assert_eq!(c.boundary(8), Some(&IntMatrix::from_i64(&[[1, -1], [-1, 1]])));
        assert_eq!(c.derived_degrees(), &[7]);
        let c = top_complex(&RepMultiplicities::new(2, 2, 0, 0)).unwrap();
        assert_eq!(c.top_degree(), 7);
        assert_eq!(c.boundary(7), Some(&IntMatrix::from_i64(&[[1, -1], [-1, 1]])));
        assert!(matches!(top_complex(&RepMultiplicities::new(1, 2, 0, 0)), Err(Error::MultiplicityTooSmall(_))));
        assert!(matches!(top_complex(&RepMultiplicities::new(2, 2, 0, 1)), Err(Error::Precondition(_))));
    }

    #[test]
    fn cohomology_examples() {
        let c = top_complex(&RepMultiplicities::new(2, 2, 1, 0)).unwrap();
        let n = c.top_degree();
        let twisted = bredon_cohomology(&c, &CoefficientModule::integers(Action::Sign), n - 1).unwrap();
        assert!(twisted.is_trivial());
        let plain = bredon_cohomology(&c, &CoefficientModule::integers(Action::Trivial), n - 1).unwrap();
        assert_eq!(plain, z2_group(1));
        assert_eq!(plain.to_string(), "Z/2");
        let zero = EquivariantChainComplex::zero();
        assert!(bredon_cohomology(&zero, &CoefficientModule::mod2(), 5).unwrap().is_trivial());
        assert!(matches!(
            bredon_cohomology(&c, &CoefficientModule::mod2(), n + 1),
            Err(Error::DegreeOutOfRange { .. })
        ));
    }

    #[test]
    fn top_degree_groups() {
        let c = top_complex(&RepMultiplicities::new(2, 2, 1, 0)).unwrap();
        let n = c.top_degree();
        // δ^{n−1} is 0 untwisted and 2 twisted.
        let plain = bredon_cohomology(&c, &CoefficientModule::integers(Action::Trivial), n).unwrap();
        assert_eq!(plain, CohomologyGroup::from_parts(vec![], 1));
        let twisted = bredon_cohomology(&c, &CoefficientModule::integers(Action::Sign), n).unwrap();
        assert_eq!(twisted, z2_group(1));
        assert_eq!(bredon_cohomology(&c, &CoefficientModule::mod2(), n).unwrap(), z2_group(1));
    }

    #[test]
    fn forgetful_examples() {
        let c = top_complex(&RepMultiplicities::new(2, 2, 1, 0)).unwrap();
        let n = c.top_degree();
        assert!(forgetful_image(&c, &CoefficientModule::mod2(), n).unwrap().is_trivial());
        let flat = EquivariantChainComplex::new(3, vec![1], vec![]).unwrap();
        assert_eq!(forgetful_image(&flat, &CoefficientModule::mod2(), 3).unwrap(), z2_group(1));
        assert!(forgetful_image(&EquivariantChainComplex::zero(), &CoefficientModule::mod2(), 0).unwrap().is_trivial());
    }

    #[test]
    fn forgetful_over_integers() {
        let c = top_complex(&RepMultiplicities::new(2, 2, 1, 0)).unwrap();
        let n = c.top_degree();
        // Untwisted: f ↦ (f, f), the non-equivariant H^n is ℤ via (x, y) ↦ x + y,
        // so the image is 2ℤ ≅ ℤ.
        let img = forgetful_image(&c, &CoefficientModule::integers(Action::Trivial), n).unwrap();
        assert_eq!(img, CohomologyGroup::from_parts(vec![], 1));
        // Twisted cocycles (f, −f) are coboundaries.
        let img = forgetful_image(&c, &CoefficientModule::integers(Action::Sign), n).unwrap();
        assert!(img.is_trivial());
    }

    #[test]
    fn complex_validation() {
        let bad = IntMatrix::from_i64(&[[1, 0], [0, -1]]);
        assert!(matches!(
            EquivariantChainComplex::new(0, vec![1, 1], vec![bad]),
            Err(Error::InvalidComplex(_))
        ));
        let d = IntMatrix::from_i64(&[[1, -1], [-1, 1]]);
        assert!(matches!(
            EquivariantChainComplex::new(0, vec![1, 1, 1], vec![d.clone(), d]),
            Err(Error::InvalidComplex(_))
        ));
    }

    #[test]
    fn sign_on_mod2_is_trivial() {
        assert_eq!(CoefficientModule::new(Coefficients::Mod2, Action::Sign), CoefficientModule::mod2());
    }

    #[test]
    fn low_degree_examples() {
        let p = ManifoldProfile::k3k3();
        let vp = RepMultiplicities::new(0, 0, 0, 0);
        let v = vp.sum(&RepMultiplicities::new(2, 2, 0, 0));
        let w = vp.sum(&RepMultiplicities::new(0, 0, 5, 1));
        assert_eq!(low_degree_vanishing(&v, &w, &p), Ok(true));
        let v4 = RepMultiplicities::new(4, 0, 0, 0);
        assert_eq!(low_degree_vanishing(&v4, &w, &p), Ok(false));
        let p0 = ManifoldProfile::new(46, -32, 0, 6, 0, true).unwrap();
        assert!(matches!(low_degree_vanishing(&v, &w, &p0), Err(Error::Precondition(_))));
        let w_bad = RepMultiplicities::new(0, 0, 4, 2);
        assert!(matches!(low_degree_vanishing(&v, &w_bad, &p), Err(Error::InconsistentRepresentations(_))));
    }
}
