//! Equivariant handle calculus on framed links.
//!
//! A locally linear involution is assembled from a fixed 0-handle `B₀`, one
//! invariant 2-handle per link component (each adding a fixed point), free
//! handle pairs, and a cap with a single fixed point. Along a handle with even
//! framing `r` the fixed-point signs agree iff `r ≡ 2 (mod 4)`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::presets;
use crate::matrix::IntMatrix;

/// Linking matrix of a framed link: framings on the diagonal, linking numbers
/// off it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "LinkFields")]
pub struct FramedLinkMatrix {
    #[serde(rename = "link")]
    matrix: IntMatrix,
    /// Attests that each component bounds a ℤ₂-invariant embedded disk.
    invariant_disks: bool,
}

#[derive(Deserialize)]
struct LinkFields {
    link: IntMatrix,
    #[serde(default)]
    invariant_disks: bool,
}

impl TryFrom<LinkFields> for FramedLinkMatrix {
    type Error = Error;

    fn try_from(f: LinkFields) -> Result<Self> {
        FramedLinkMatrix::new(f.link, f.invariant_disks)
    }
}

impl FramedLinkMatrix {
    pub fn new(matrix: IntMatrix, invariant_disks: bool) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare { rows: matrix.rows(), cols: matrix.cols() });
        }
        if !matrix.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(FramedLinkMatrix { matrix, invariant_disks })
    }

    /// `"A"` and `"B"`, both Hopf-built.
    pub fn preset(name: &str) -> Option<Self> {
        let m = match name.to_ascii_uppercase().as_str() {
            "A" => presets::matrix_a(),
            "B" => presets::matrix_b(),
            _ => return None,
        };
        Some(FramedLinkMatrix { matrix: m, invariant_disks: true })
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn invariant_disks(&self) -> bool {
        self.invariant_disks
    }

    pub fn size(&self) -> usize {
        self.matrix.rows()
    }

    pub fn framings(&self) -> Vec<BigInt> {
        (0..self.size()).map(|i| self.matrix[(i, i)].clone()).collect()
    }
}

/// Link of `n` fibres of the Hopf map: pairwise linking number 1.
pub fn hopf_linking_matrix(n: usize, framings: &[i64]) -> Result<FramedLinkMatrix> {
    if n == 0 {
        return Err(Error::Precondition("a Hopf link needs at least one component".into()));
    }
    if framings.len() != n {
        return Err(Error::LengthMismatch { expected: n, found: framings.len() });
    }
    let rows: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| if i == j { framings[i] } else { 1 }).collect()).collect();
    Ok(FramedLinkMatrix { matrix: IntMatrix::from_i64(&rows), invariant_disks: true })
}

/// Even framings and odd linking numbers.
pub fn ee_matrix_check(m: &FramedLinkMatrix) -> bool {
    let a = m.matrix();
    let n = m.size();
    (0..n).all(|i| (0..n).all(|j| a[(i, j)].is_even() == (i == j)))
}

/// `+1` if `r ≡ 2 (mod 4)`, `−1` if `r ≡ 0 (mod 4)`.
pub fn framing_sign(r: i64) -> Result<i8> {
    match r.rem_euclid(4) {
        2 => Ok(1),
        0 => Ok(-1),
        _ => Err(Error::OddFraming(r)),
    }
}

fn framing_sign_big(r: &BigInt) -> Result<i8> {
    let residue = r.mod_floor(&BigInt::from(4)).to_i64().expect("small residue");
    framing_sign(residue).map_err(|_| Error::OddFraming(r.to_i64().unwrap_or(residue)))
}

fn require_ee(m: &FramedLinkMatrix) -> Result<()> {
    if !ee_matrix_check(m) {
        return Err(Error::EeMatrixCheckFailed);
    }
    Ok(())
}

/// Every `Σε` over the `n + 2` fixed points.
///
/// With base sign `s₀`, handle `i` has sign `s₀·framing_sign(aᵢᵢ)` and the cap
/// is unconstrained, so the totals are `±(p ± 1)` for `p = 1 + Σ framing_sign`.
pub fn eps_achievable(m: &FramedLinkMatrix) -> Result<BTreeSet<i64>> {
    require_ee(m)?;
    if !m.invariant_disks() {
        return Err(Error::MissingInvariantDisks);
    }
    let mut partial = 1i64;
    for r in m.framings() {
        partial += i64::from(framing_sign_big(&r)?);
    }
    let mut out = BTreeSet::new();
    for s0 in [1, -1] {
        for cap in [1, -1] {
            out.insert(s0 * partial + cap);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Handle {
    #[serde(with = "crate::serial")]
    pub framing: BigInt,
    /// Sign of the handle's fixed point relative to `B₀`.
    pub eps_rel: i8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HandleDecomposition {
    pub handles: Vec<Handle>,
    pub free_handle_pairs: u64,
}

impl HandleDecomposition {
    /// `B₀`, one per invariant handle, and the cap.
    pub fn fixed_point_count(&self) -> usize {
        self.handles.len() + 2
    }
}

pub fn handle_description(m: &FramedLinkMatrix, free_pairs: u64) -> Result<HandleDecomposition> {
    require_ee(m)?;
    let handles = m
        .framings()
        .into_iter()
        .map(|r| Ok(Handle { eps_rel: framing_sign_big(&r)?, framing: r }))
        .collect::<Result<Vec<_>>>()?;
    Ok(HandleDecomposition { handles, free_handle_pairs: free_pairs })
}
