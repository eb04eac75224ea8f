//! Equivariant spin index bookkeeping for involutions with isolated fixed
//! points.
//!
//! For an even-type lift with sign assignment `ε` on the fixed points, the
//! index and the g-index give
//!
//! ```text
//! k₊ + k₋ = −Sign/8,    k₊ − k₋ = Σε/4,
//! ```
//!
//! so `2k± = −Sign/8 ± Σε/4`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vanishing::{bf_vanishing_even, Verdict};

/// Numerical data of a closed oriented 4-manifold with an involution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ProfileFields")]
pub struct ManifoldProfile {
    pub chi: i64,
    pub sign: i64,
    pub b1: i64,
    pub b_plus: i64,
    pub b_plus_fixed: i64,
    pub spin: bool,
}

#[derive(Deserialize)]
struct ProfileFields {
    chi: i64,
    sign: i64,
    #[serde(default)]
    b1: i64,
    b_plus: i64,
    b_plus_fixed: i64,
    spin: bool,
}

impl TryFrom<ProfileFields> for ManifoldProfile {
    type Error = Error;

    fn try_from(f: ProfileFields) -> Result<Self> {
        ManifoldProfile::new(f.chi, f.sign, f.b1, f.b_plus, f.b_plus_fixed, f.spin)
    }
}

impl ManifoldProfile {
    /// Validates `χ = 2 − 2b₁ + b₊ + b₋`, `Sign = b₊ − b₋`, the bound on
    /// `b₊^{ℤ₂}`, and Rokhlin's congruence for spin profiles.
    ///
    /// `b₁ > 0` is representable; the operations that need `b₁ = 0` check it.
    pub fn new(chi: i64, sign: i64, b1: i64, b_plus: i64, b_plus_fixed: i64, spin: bool) -> Result<Self> {
        let p = ManifoldProfile { chi, sign, b1, b_plus, b_plus_fixed, spin };
        let bad = |msg: String| Err(Error::InconsistentProfile(msg));
        if b1 < 0 || b_plus < 0 {
            return bad("negative Betti number".into());
        }
        if !(0..=b_plus).contains(&b_plus_fixed) {
            return bad(format!("b_plus_fixed = {b_plus_fixed} not in 0..={b_plus}"));
        }
        let b_minus = p.b_minus();
        if b_minus < 0 {
            return bad(format!("chi = {chi} leaves b_minus = {b_minus}"));
        }
        if sign != b_plus - b_minus {
            return bad(format!("sign = {sign} but b_plus − b_minus = {}", b_plus - b_minus));
        }
        if spin && sign % 16 != 0 {
            return bad(format!("spin profile with sign = {sign} not divisible by 16"));
        }
        Ok(p)
    }

    pub fn b_minus(&self) -> i64 {
        self.chi - 2 + 2 * self.b1 - self.b_plus
    }

    /// K3 with an involution having `b₊^{ℤ₂} = 3`.
    pub fn k3() -> Self {
        ManifoldProfile::new(24, -16, 0, 3, 3, true).expect("valid preset")
    }

    /// K3#K3 with an involution having `b₊^{ℤ₂} = 5`.
    pub fn k3k3() -> Self {
        ManifoldProfile::new(46, -32, 0, 6, 5, true).expect("valid preset")
    }

    pub fn preset(name: &str) -> Option<Self> {
        match name.to_ascii_lowercase().as_str() {
            "k3" => Some(Self::k3()),
            "k3k3" | "k3#k3" => Some(Self::k3k3()),
            _ => None,
        }
    }

    pub fn with_b_plus_fixed(self, b_plus_fixed: i64) -> Result<Self> {
        ManifoldProfile::new(self.chi, self.sign, self.b1, self.b_plus, b_plus_fixed, self.spin)
    }

    fn require_b1_zero(&self) -> Result<()> {
        if self.b1 != 0 {
            return Err(Error::Precondition(format!("b1 = {} (must be 0)", self.b1)));
        }
        Ok(())
    }

    fn require_spin(&self) -> Result<()> {
        if !self.spin {
            return Err(Error::Precondition("profile is not spin".into()));
        }
        self.require_b1_zero()
    }
}

/// Whether the involution lifts to the spin structure as ℤ₂ or only as ℤ₄.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IndexKind {
    /// Index `k₊ℂ₊ + k₋ℂ₋`.
    Even,
    /// Index `k₁ℂ₁ + k₃ℂ₃`; stored in `k_plus` / `k_minus` respectively.
    Odd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpinIndices {
    pub k_plus: i64,
    pub k_minus: i64,
    pub kind: IndexKind,
}

impl SpinIndices {
    pub fn even(k_plus: i64, k_minus: i64) -> Self {
        SpinIndices { k_plus, k_minus, kind: IndexKind::Even }
    }

    pub fn odd(k1: i64, k3: i64) -> Self {
        SpinIndices { k_plus: k1, k_minus: k3, kind: IndexKind::Odd }
    }

    pub fn sum(&self) -> i64 {
        self.k_plus + self.k_minus
    }

    pub fn both_even(&self) -> bool {
        self.k_plus % 2 == 0 && self.k_minus % 2 == 0
    }
}

/// Fixed-point signs `ε(p) ∈ {±1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignAssignment {
    eps: Vec<i8>,
    sum: i64,
}

impl SignAssignment {
    pub fn new(eps: Vec<i8>) -> Result<Self> {
        if eps.iter().any(|&e| e != 1 && e != -1) {
            return Err(Error::Precondition("sign assignment entries must be ±1".into()));
        }
        let sum = eps.iter().map(|&e| i64::from(e)).sum();
        Ok(SignAssignment { eps, sum })
    }

    pub fn eps(&self) -> &[i8] {
        &self.eps
    }

    pub fn sum(&self) -> i64 {
        self.sum
    }
}

/// How a smooth even-type action constrains `Σε`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Route {
    /// Keep sums whose `k±` are both even.
    #[serde(rename = "even-k")]
    EvenK,
    /// Remove sums for which the Bauer–Furuta invariant would vanish,
    /// contradicting an asserted nonvanishing result.
    #[serde(rename = "gauge")]
    Gauge,
}

/// `ind D = −Sign/8`.
pub fn spin_index(sign: i64) -> Result<i64> {
    if sign % 8 != 0 {
        return Err(Error::NotSpinSignature(sign));
    }
    Ok(-sign / 8)
}

/// `k± = −Sign/16 ± Σε/8`.
pub fn equivariant_indices(sign: i64, eps_sum: i64) -> Result<SpinIndices> {
    if sign % 16 != 0 {
        return Err(Error::IndexCongruence(format!("sign = {sign} is not divisible by 16")));
    }
    if eps_sum % 8 != 0 {
        return Err(Error::IndexCongruence(format!("eps sum = {eps_sum} is not divisible by 8")));
    }
    let half = -sign / 16;
    Ok(SpinIndices::even(half + eps_sum / 8, half - eps_sum / 8))
}

/// Virtual dimension `d(c) = 2(k₊ + k₋) − (1 + b₊)`.
pub fn dc(k_sum: i64, b_plus: i64) -> i64 {
    2 * k_sum - (1 + b_plus)
}

/// Number of fixed points `m` forced by the profile.
///
/// Combines `χ(X/ℤ₂) = (χ + m)/2`, `Sign(X/ℤ₂) = Sign/2` and
/// `1 + b₊^{ℤ₂} = (χ(X/ℤ₂) + Sign(X/ℤ₂))/2` into `m = 4 + 4b₊^{ℤ₂} − Sign − χ`.
pub fn fixed_point_count(profile: &ManifoldProfile) -> Result<i64> {
    profile.require_b1_zero()?;
    let m = 4 + 4 * profile.b_plus_fixed - profile.sign - profile.chi;
    if m < 0 {
        return Err(Error::InconsistentProfile(format!("negative fixed point count {m}")));
    }
    if (m - profile.chi) % 2 != 0 {
        return Err(Error::InconsistentProfile(format!("m = {m} and chi = {} differ in parity", profile.chi)));
    }
    Ok(m)
}

/// Values of `Σε` compatible with `m` fixed points and the index formula.
///
/// A sum of `m` signs has `|S| ≤ m` and `S ≡ m (mod 2)`; the index formula
/// needs `S ≡ 0 (mod 8)`.
pub fn admissible_eps_sums(profile: &ManifoldProfile, m: i64, require_even_k: bool) -> Result<BTreeSet<i64>> {
    profile.require_spin()?;
    let mut out = BTreeSet::new();
    if m < 0 {
        return Ok(out);
    }
    for s in -m..=m {
        if s % 8 != 0 || (s - m) % 2 != 0 {
            continue;
        }
        let Ok(k) = equivariant_indices(profile.sign, s) else { continue };
        if require_even_k && !k.both_even() {
            continue;
        }
        out.insert(s);
    }
    Ok(out)
}

/// Values of `Σε` a smooth even-type action could realize.
///
/// The gauge route drops every admissible sum whose indices satisfy all
/// hypotheses of the even-type vanishing theorem, since vanishing would
/// contradict the asserted nonvanishing. The even-k route applies the
/// evenness filter instead and ignores `bf_nonvanishing`.
pub fn smooth_required_eps(
    profile: &ManifoldProfile,
    m: i64,
    bf_nonvanishing: bool,
    route: Route,
) -> Result<BTreeSet<i64>> {
    match route {
        Route::EvenK => admissible_eps_sums(profile, m, true),
        Route::Gauge => {
            if !bf_nonvanishing {
                return Err(Error::GaugeRouteNeedsNonvanishing);
            }
            let admissible = admissible_eps_sums(profile, m, false)?;
            let mut out = BTreeSet::new();
            for s in admissible {
                let k = equivariant_indices(profile.sign, s)?;
                if bf_vanishing_even(profile, &k).verdict != Verdict::Vanishes {
                    out.insert(s);
                }
            }
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[i64]) -> BTreeSet<i64> {
        xs.iter().copied().collect()
    }

    #[test]
    fn profile_validation() {
        assert!(ManifoldProfile::new(24, -16, 0, 3, 3, true).is_ok());
        assert!(matches!(ManifoldProfile::new(24, -15, 0, 3, 3, true), Err(Error::InconsistentProfile(_))));
        assert!(matches!(ManifoldProfile::new(24, -16, 0, 3, 4, true), Err(Error::InconsistentProfile(_))));
        assert!(matches!(ManifoldProfile::new(4, -8, 0, 0, 0, true), Err(Error::InconsistentProfile(_))));
        assert!(matches!(ManifoldProfile::new(10, -8, 0, 0, 0, true), Err(Error::InconsistentProfile(_))));
        assert!(ManifoldProfile::new(10, -8, 0, 0, 0, false).is_ok());
        assert_eq!(ManifoldProfile::k3k3().b_minus(), 38);
    }

    #[test]
    fn spin_index_examples() {
        assert_eq!(spin_index(-32), Ok(4));
        assert_eq!(spin_index(-16), Ok(2));
        assert_eq!(spin_index(0), Ok(0));
        assert_eq!(spin_index(-12), Err(Error::NotSpinSignature(-12)));
    }

    #[test]
    fn equivariant_indices_examples() {
        assert_eq!(equivariant_indices(-32, 0), Ok(SpinIndices::even(2, 2)));
        assert_eq!(equivariant_indices(-16, 8), Ok(SpinIndices::even(2, 0)));
        assert_eq!(equivariant_indices(-16, -8), Ok(SpinIndices::even(0, 2)));
    }

    #[test]
    fn equivariant_indices_names_the_failed_congruence() {
        let Err(Error::IndexCongruence(msg)) = equivariant_indices(-8, 0) else { panic!() };
        assert!(msg.contains("16"));
        let Err(Error::IndexCongruence(msg)) = equivariant_indices(-16, 4) else { panic!() };
        assert!(msg.contains("eps sum"));
    }

    #[test]
    fn dc_examples() {
        assert_eq!(dc(4, 6), 1);
        assert_eq!(dc(2, 3), 0);
        assert_eq!(dc(0, 1), -2);
    }

    #[test]
    fn fixed_point_count_examples() {
        assert_eq!(fixed_point_count(&ManifoldProfile::k3k3()), Ok(10));
        assert_eq!(fixed_point_count(&ManifoldProfile::k3()), Ok(8));
        let s2s2 = ManifoldProfile::new(4, 0, 0, 1, 0, true).unwrap();
        assert_eq!(fixed_point_count(&s2s2), Ok(0));
    }

    #[test]
    fn fixed_point_count_rejects_negative() {
        // b₊^{ℤ₂} = 0 on K3: m = 4 + 16 − 24 < 0.
        let p = ManifoldProfile::new(24, -16, 0, 3, 0, true).unwrap();
        assert!(matches!(fixed_point_count(&p), Err(Error::InconsistentProfile(_))));
        let b1 = ManifoldProfile::new(0, 0, 1, 0, 0, false).unwrap();
        assert!(matches!(fixed_point_count(&b1), Err(Error::Precondition(_))));
    }

    #[test]
    fn admissible_examples() {
        let k3k3 = ManifoldProfile::k3k3();
        assert_eq!(admissible_eps_sums(&k3k3, 10, false).unwrap(), set(&[-8, 0, 8]));
        assert_eq!(admissible_eps_sums(&k3k3, 10, true).unwrap(), set(&[0]));
        assert_eq!(admissible_eps_sums(&ManifoldProfile::k3(), 8, true).unwrap(), set(&[-8, 8]));
        assert!(admissible_eps_sums(&k3k3, 7, false).unwrap().is_empty());
    }

    #[test]
    fn required_examples() {
        let k3k3 = ManifoldProfile::k3k3();
        assert_eq!(smooth_required_eps(&k3k3, 10, true, Route::Gauge).unwrap(), set(&[-8, 8]));
        assert_eq!(smooth_required_eps(&ManifoldProfile::k3(), 8, false, Route::EvenK).unwrap(), set(&[-8, 8]));
        let parity_off = k3k3.with_b_plus_fixed(4).unwrap();
        assert_eq!(smooth_required_eps(&parity_off, 10, true, Route::Gauge).unwrap(), set(&[-8, 0, 8]));
        assert_eq!(smooth_required_eps(&k3k3, 10, false, Route::Gauge), Err(Error::GaugeRouteNeedsNonvanishing));
    }

    #[test]
    fn sign_assignment() {
        let s = SignAssignment::new(vec![1, -1, 1]).unwrap();
        assert_eq!(s.sum(), 1);
        assert!(SignAssignment::new(vec![0]).is_err());
    }
}
