//! Vanishing criteria for the Bauer–Furuta invariant under an involution, and
//! the nonsmoothability verdict that combines them with the realization side.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::bredon::{
    bredon_cohomology, forgetful_image, low_degree_vanishing, stable_suspension, shift_virtual, top_complex, Action,
    CoefficientModule, CohomologyGroup, RepMultiplicities,
};
use crate::error::{Error, Result};
use crate::indexthy::{
    admissible_eps_sums, dc, equivariant_indices, fixed_point_count, smooth_required_eps, IndexKind, ManifoldProfile,
    Route, SpinIndices,
};
use crate::lattice::{
    b_plus_fixed, classify_indefinite_even, ee_conditions, inertia, trivial_block, BilinearLattice, EEReport,
    LatticeInvolution,
};
use crate::realization::{eps_achievable, FramedLinkMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Vanishes,
    NoConclusion,
}

/// One flag per hypothesis of the vanishing theorem.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishingConditions {
    pub b1_zero: bool,
    pub b_plus_at_least_2: bool,
    pub b_plus_fixed_positive: bool,
    pub anti_invariant_odd: bool,
    pub dc_one: bool,
    pub index_bounds: bool,
    /// The indices are of the type the criterion is stated for.
    pub kind_matches: bool,
}

impl VanishingConditions {
    pub fn all(&self) -> bool {
        self.b1_zero
            && self.b_plus_at_least_2
            && self.b_plus_fixed_positive
            && self.anti_invariant_odd
            && self.dc_one
            && self.index_bounds
            && self.kind_matches
    }
}

/// The cochain-level computations behind a vanishing verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BredonCertificate {
    pub v_prime: RepMultiplicities,
    pub v: RepMultiplicities,
    pub w: RepMultiplicities,
    pub top_degree: i64,
    pub low_degree_vanishing: bool,
    pub coefficients: CoefficientModule,
    pub h_top_minus_one: CohomologyGroup,
    pub forgetful_image: CohomologyGroup,
}

impl BredonCertificate {
    pub fn verifies(&self) -> bool {
        self.low_degree_vanishing && self.h_top_minus_one.is_trivial() && self.forgetful_image.is_trivial()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishingVerdict {
    pub verdict: Verdict,
    pub indices: SpinIndices,
    pub dc: i64,
    pub conditions: VanishingConditions,
    pub certificate: Option<BredonCertificate>,
}

/// Criterion for even-type lifts with index `k₊ℂ₊ + k₋ℂ₋`.
pub fn bf_vanishing_even(profile: &ManifoldProfile, k: &SpinIndices) -> VanishingVerdict {
    evaluate(profile, k, IndexKind::Even)
}

/// Criterion for odd-type lifts with index `k₁ℂ₁ + k₃ℂ₃`.
pub fn bf_vanishing_odd(profile: &ManifoldProfile, k: &SpinIndices) -> VanishingVerdict {
    evaluate(profile, k, IndexKind::Odd)
}

fn evaluate(profile: &ManifoldProfile, k: &SpinIndices, kind: IndexKind) -> VanishingVerdict {
    let bpf = profile.b_plus_fixed;
    let d = dc(k.sum(), profile.b_plus);
    let conditions = VanishingConditions {
        b1_zero: profile.b1 == 0,
        b_plus_at_least_2: profile.b_plus >= 2,
        b_plus_fixed_positive: bpf >= 1,
        anti_invariant_odd: (profile.b_plus - bpf) % 2 != 0,
        dc_one: d == 1,
        index_bounds: 2 * k.k_plus < 1 + bpf && 2 * k.k_minus < 1 + bpf,
        kind_matches: k.kind == kind,
    };
    let certificate = if conditions.b_plus_at_least_2 && conditions.b_plus_fixed_positive {
        certificate(profile, k).ok()
    } else {
        None
    };
    let verdict = if conditions.all() { Verdict::Vanishes } else { Verdict::NoConclusion };
    VanishingVerdict { verdict, indices: *k, dc: d, conditions, certificate }
}

/// `W₀ = H⁺ = b₊^{ℤ₂}ℝ₊ ⊕ (b₊ − b₊^{ℤ₂})ℝ₋`.
pub fn h_plus(profile: &ManifoldProfile) -> RepMultiplicities {
    let fixed = profile.b_plus_fixed.max(0) as u64;
    let anti = (profile.b_plus - profile.b_plus_fixed).max(0) as u64;
    RepMultiplicities::new(0, 0, fixed, anti)
}

/// Builds `V = V' ⊕ V₀`, `W = V' ⊕ W₀` from the stable-range solution and
/// runs the top-degree computations on `(S^V/S¹, singular set)`.
///
/// `V'` is enlarged until `a±(V) ≥ 2`, which keeps it in the stable range.
pub fn certificate(profile: &ManifoldProfile, k: &SpinIndices) -> Result<BredonCertificate> {
    let w0 = h_plus(profile);
    let mut v_prime = stable_suspension(k.k_plus, k.k_minus, &w0)?;
    let (v0, w0) = shift_virtual(k.k_plus, k.k_minus, &w0);
    v_prime.a_plus = v_prime.a_plus.max(2u64.saturating_sub(v0.a_plus));
    v_prime.a_minus = v_prime.a_minus.max(2u64.saturating_sub(v0.a_minus));
    let v = v_prime.sum(&v0);
    let w = v_prime.sum(&w0);

    let low = low_degree_vanishing(&v, &w, profile)?;
    let complex = top_complex(&v)?;
    let n = complex.top_degree();
    // g acts on π_{n−1}(S^W) ≅ ℤ by the degree of its action on S^W.
    let action = if w.b_minus % 2 == 1 { Action::Sign } else { Action::Trivial };
    let coefficients = CoefficientModule::integers(action);
    let h = bredon_cohomology(&complex, &coefficients, n - 1)?;
    let image = forgetful_image(&complex, &CoefficientModule::mod2(), n)?;
    Ok(BredonCertificate {
        v_prime,
        v,
        w,
        top_degree: n,
        low_degree_vanishing: low,
        coefficients,
        h_top_minus_one: h,
        forgetful_image: image,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NonsmoothabilityVerdict {
    Nonsmoothable,
    Inconclusive,
}

/// One admissible value of `Σε` with its indices and vanishing analysis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpsCandidate {
    pub eps_sum: i64,
    pub indices: SpinIndices,
    pub vanishing: VanishingVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonsmoothabilityReport {
    pub profile: ManifoldProfile,
    pub route: Route,
    pub bf_nonvanishing: bool,
    pub m: i64,
    pub n_trivial: usize,
    pub link_size: usize,
    pub ee: EEReport,
    pub class_match: bool,
    pub m_consistency: bool,
    pub candidates: Vec<EpsCandidate>,
    pub required: BTreeSet<i64>,
    pub achievable: BTreeSet<i64>,
    pub verdict: NonsmoothabilityVerdict,
    pub notes: Vec<String>,
}

impl NonsmoothabilityReport {
    /// Recomputes the verdict from the recorded sets and flags.
    pub fn recompute_verdict(&self) -> NonsmoothabilityVerdict {
        let disjoint = self.required.is_disjoint(&self.achievable);
        if disjoint && self.ee.all() && self.class_match && self.m_consistency {
            NonsmoothabilityVerdict::Nonsmoothable
        } else {
            NonsmoothabilityVerdict::Inconclusive
        }
    }
}

/// Checks that a locally linear involution with form `(L, g)` built from the
/// framed link `T` cannot be smooth.
pub fn nonsmoothability(
    profile: &ManifoldProfile,
    lattice: &BilinearLattice,
    g: &LatticeInvolution,
    t: &FramedLinkMatrix,
    route: Route,
    bf_nonvanishing: bool,
) -> Result<NonsmoothabilityReport> {
    let ee = ee_conditions(lattice, g)?;
    if !ee.all() {
        let failed: Vec<&str> = [("cond1", ee.cond1), ("cond2", ee.cond2), ("cond3", ee.cond3)]
            .into_iter()
            .filter(|(_, ok)| !ok)
            .map(|(name, _)| name)
            .collect();
        return Err(Error::NoLocallyLinearRealization(failed.join(", ")));
    }
    check_profile_matches(profile, lattice, g)?;

    let m = fixed_point_count(profile)?;
    let m_consistency = m == ee.n_trivial as i64 + 2;
    let class_match = match (
        BilinearLattice::new(t.matrix().clone()).and_then(|l| classify_indefinite_even(&l)),
        trivial_block(lattice, g).and_then(|l| classify_indefinite_even(&l)),
    ) {
        (Ok(a), Ok(b)) => a == b,
        _ => false,
    };

    let mut candidates = Vec::new();
    for s in admissible_eps_sums(profile, m, false)? {
        let indices = equivariant_indices(profile.sign, s)?;
        candidates.push(EpsCandidate { eps_sum: s, indices, vanishing: bf_vanishing_even(profile, &indices) });
    }
    let required = smooth_required_eps(profile, m, bf_nonvanishing, route)?;
    let achievable = eps_achievable(t)?;

    let mut notes = Vec::new();
    let odd: Vec<i64> = candidates
        .iter()
        .filter(|c| required.contains(&c.eps_sum) && !c.indices.both_even())
        .map(|c| c.eps_sum)
        .collect();
    if !odd.is_empty() {
        notes.push(format!(
            "required sums {odd:?} have indices that are not both even; an even-k argument alone would exclude them"
        ));
    }

    let mut report = NonsmoothabilityReport {
        profile: *profile,
        route,
        bf_nonvanishing,
        m,
        n_trivial: ee.n_trivial,
        link_size: t.size(),
        ee,
        class_match,
        m_consistency,
        candidates,
        required,
        achievable,
        verdict: NonsmoothabilityVerdict::Inconclusive,
        notes,
    };
    report.verdict = report.recompute_verdict();
    Ok(report)
}

fn check_profile_matches(profile: &ManifoldProfile, lattice: &BilinearLattice, g: &LatticeInvolution) -> Result<()> {
    let ine = inertia(lattice.gram());
    let bpf = b_plus_fixed(lattice, g)? as i64;
    let checks = [
        ("sign", profile.sign, ine.signature()),
        ("b_plus", profile.b_plus, ine.positive as i64),
        ("b_plus_fixed", profile.b_plus_fixed, bpf),
        ("chi", profile.chi, 2 + lattice.rank() as i64),
    ];
    for (name, declared, actual) in checks {
        if declared != actual {
            return Err(Error::InconsistentProfile(format!("{name} = {declared} but the lattice gives {actual}")));
        }
    }
    Ok(())
}
