//! Unimodular integer bilinear forms and their involutive isometries.
//!
//! Everything here is exact: signatures come from congruence
//! diagonalization over the rationals, and integer kernels and quotients
//! come from Smith normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::snf::smith_normal_form;

/// Signature of a single copy of E8. The form is taken negative definite,
/// so the intersection form `2E8 ⊕ 3H` has signature −16.
pub const E8_SIGNATURE: i64 = -8;

/// A symmetric integer Gram matrix of rank at least one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BilinearLattice {
    gram: IntMatrix,
}

impl BilinearLattice {
    pub fn new(gram: IntMatrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::NotSquare { rows: gram.rows(), cols: gram.cols() });
        }
        if gram.rows() == 0 {
            return Err(Error::EmptyLattice);
        }
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(BilinearLattice { gram })
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    /// The same lattice with the form negated.
    pub fn negated(&self) -> Self {
        BilinearLattice { gram: self.gram.neg() }
    }

    /// Orthogonal direct sum.
    pub fn direct_sum(&self, other: &BilinearLattice) -> Self {
        BilinearLattice { gram: IntMatrix::block_diag(&[&self.gram, &other.gram]) }
    }

    /// The Gram matrix in a new basis given by the columns of `basis`.
    pub fn change_basis(&self, basis: &IntMatrix) -> Result<Self> {
        BilinearLattice::new(basis.congruent(&self.gram)?)
    }
}

/// The matrix of a generator `g` acting on the lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeInvolution {
    action: IntMatrix,
}

impl LatticeInvolution {
    pub fn new(action: IntMatrix) -> Result<Self> {
        if !action.is_square() {
            return Err(Error::NotSquare { rows: action.rows(), cols: action.cols() });
        }
        Ok(LatticeInvolution { action })
    }

    pub fn identity(n: usize) -> Self {
        LatticeInvolution { action: IntMatrix::identity(n) }
    }

    /// `−I`.
    pub fn negation(n: usize) -> Self {
        LatticeInvolution { action: IntMatrix::identity(n).neg() }
    }

    /// Permutation action sending basis vector `i` to basis vector `perm[i]`.
    pub fn permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        let mut m = IntMatrix::zeros(n, n);
        for (i, &j) in perm.iter().enumerate() {
            m[(j, i)] = BigInt::one();
        }
        LatticeInvolution { action: m }
    }

    pub fn action(&self) -> &IntMatrix {
        &self.action
    }

    pub fn dim(&self) -> usize {
        self.action.rows()
    }

    pub fn direct_sum(&self, other: &LatticeInvolution) -> Self {
        LatticeInvolution { action: IntMatrix::block_diag(&[&self.action, &other.action]) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormProperties {
    pub even: bool,
    pub unimodular: bool,
    pub signature: i64,
    pub indefinite: bool,
}

/// Counts of positive, negative and zero entries after diagonalization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }
}

/// `p·E8 ⊕ q·H`; when `positive_orientation` is set the form is
/// `p·(−E8) ⊕ q·H` instead.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub e8: usize,
    pub hyperbolic: usize,
    pub positive_orientation: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenRanks {
    pub plus: usize,
    pub minus: usize,
}

/// Dimensions over the two-element field of the Tate cohomology groups
/// Ĥ⁰(ℤ₂; V) and Ĥ¹(ℤ₂; V).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TateDims {
    pub h0: usize,
    pub h1: usize,
}

/// `V ≅ t·ℤ ⊕ s·ℤ₋ ⊕ f·ℤ[ℤ₂]` as a ℤ[ℤ₂]-module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub trivial: usize,
    pub sign: usize,
    pub free: usize,
    pub tate0: usize,
    pub tate1: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EEReport {
    /// No sign summands, so `V ≅ T ⊕ F` with `T` trivial and `F` free.
    pub cond1: bool,
    /// `Ψ(v, gv)` is even for every `v`.
    pub cond2: bool,
    /// The g-signature vanishes.
    pub cond3: bool,
    pub n_trivial: usize,
    pub g_sig: i64,
}

impl EEReport {
    pub fn all(&self) -> bool {
        self.cond1 && self.cond2 && self.cond3
    }
}

/// Signs of a symmetric integer matrix via congruence diagonalization over ℚ.
///
/// A zero diagonal with a nonzero off-diagonal entry `a_ij` is handled by the
/// basis change `e_i ↦ e_i + e_j`, which turns the pivot into `2a_ij`.
pub fn inertia(gram: &IntMatrix) -> Inertia {
    assert!(gram.is_square(), "inertia of a non-square matrix");
    let n = gram.rows();
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| gram.row(i).iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let (mut positive, mut negative) = (0, 0);

    for k in 0..n {
        let pivot = match (k..n).find(|&i| !a[i][i].is_zero()) {
            Some(i) => i,
            None => {
                let Some((i, j)) = (k..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| !a[i][j].is_zero())
                else {
                    break;
                };
                // e_i += e_j
                for c in 0..n {
                    let v = a[j][c].clone();
                    a[i][c] += v;
                }
                for r in 0..n {
                    let v = a[r][j].clone();
                    a[r][i] += v;
                }
                i
            }
        };
        a.swap(k, pivot);
        for row in a.iter_mut() {
            row.swap(k, pivot);
        }

        let p = a[k][k].clone();
        if p.is_positive() {
            positive += 1;
        } else {
            negative += 1;
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &p;
            for j in k + 1..n {
                let v = &f * &a[k][j];
                a[i][j] -= v;
            }
        }
        for i in k + 1..n {
            a[i][k] = BigRational::zero();
            a[k][i] = BigRational::zero();
        }
    }
    Inertia { positive, negative, zero: n - positive - negative }
}

/// Evenness is tested on the diagonal, which for a symmetric integer form is
/// equivalent to `Ψ(v, v) ∈ 2ℤ` for all `v`.
pub fn form_properties(lattice: &BilinearLattice) -> Result<FormProperties> {
    let gram = lattice.gram();
    let det = gram.determinant()?;
    if det.is_zero() {
        return Err(Error::DegenerateForm);
    }
    let even = (0..lattice.rank()).all(|i| gram[(i, i)].is_even());
    let inertia = inertia(gram);
    Ok(FormProperties {
        even,
        unimodular: det.abs().is_one(),
        signature: inertia.signature(),
        indefinite: inertia.positive > 0 && inertia.negative > 0,
    })
}

/// Indefinite even unimodular forms are determined by rank and signature.
pub fn classify_indefinite_even(lattice: &BilinearLattice) -> Result<Classification> {
    let props = form_properties(lattice)?;
    if !props.even {
        return Err(Error::NotEven);
    }
    if !props.unimodular {
        return Err(Error::NotUnimodular);
    }
    if !props.indefinite {
        return Err(Error::DefiniteForm);
    }
    let sig = props.signature;
    if sig % 8 != 0 {
        return Err(Error::Internal(format!("even unimodular form with signature {sig}")));
    }
    let e8 = (sig.unsigned_abs() / 8) as usize;
    let rest = lattice.rank() - 8 * e8;
    if !rest.is_multiple_of(2) {
        return Err(Error::Internal(format!("odd hyperbolic remainder {rest}")));
    }
    Ok(Classification { e8, hyperbolic: rest / 2, positive_orientation: sig > 0 })
}

pub fn check_involution(lattice: &BilinearLattice, g: &LatticeInvolution) -> Result<bool> {
    if g.dim() != lattice.rank() {
        return Err(Error::DimensionMismatch { expected: lattice.rank(), found: g.dim() });
    }
    let act = g.action();
    let squares_to_one = (act * act).is_identity();
    let isometry = act.congruent(lattice.gram())? == *lattice.gram();
    Ok(squares_to_one && isometry)
}

fn require_involution(lattice: &BilinearLattice, g: &LatticeInvolution) -> Result<()> {
    let act = g.action();
    if g.dim() != lattice.rank() {
        return Err(Error::DimensionMismatch { expected: lattice.rank(), found: g.dim() });
    }
    if !(act * act).is_identity() {
        return Err(Error::InvalidInvolution("g² ≠ I"));
    }
    if act.congruent(lattice.gram())? != *lattice.gram() {
        return Err(Error::InvalidInvolution("gᵀΨg ≠ Ψ"));
    }
    Ok(())
}

fn one_minus_g(g: &LatticeInvolution) -> IntMatrix {
    IntMatrix::identity(g.dim()).checked_sub(g.action()).expect("square")
}

fn one_plus_g(g: &LatticeInvolution) -> IntMatrix {
    IntMatrix::identity(g.dim()).checked_add(g.action()).expect("square")
}

/// Basis (as columns) of the fixed sublattice `ker(1 − g)`.
pub fn fixed_sublattice(g: &LatticeInvolution) -> IntMatrix {
    smith_normal_form(&one_minus_g(g)).kernel_basis()
}

/// Basis (as columns) of the anti-fixed sublattice `ker(1 + g)`.
pub fn antifixed_sublattice(g: &LatticeInvolution) -> IntMatrix {
    smith_normal_form(&one_plus_g(g)).kernel_basis()
}

pub fn eigenlattice_ranks(lattice: &BilinearLattice, g: &LatticeInvolution) -> Result<EigenRanks> {
    require_involution(lattice, g)?;
    Ok(EigenRanks { plus: fixed_sublattice(g).cols(), minus: antifixed_sublattice(g).cols() })
}

/// Number of invariant factors of `ker(a) / im(b)`, which must be an
/// elementary abelian 2-group (`im b ⊆ ker a` and `2·ker a ⊆ im b`).
fn elementary_two_quotient(a: &IntMatrix, b: &IntMatrix) -> Result<usize> {
    let snf = smith_normal_form(a);
    let r = snf.rank();
    let coords = &snf.q_inv * b;
    let n = coords.rows();
    if (0..r).any(|i| !coords.row(i).iter().all(Zero::is_zero)) {
        return Err(Error::Internal("image not contained in kernel".into()));
    }
    let rows: Vec<usize> = (r..n).collect();
    let cols: Vec<usize> = (0..coords.cols()).collect();
    let sub = coords.submatrix(&rows, &cols);
    let quotient = smith_normal_form(&sub);
    if quotient.rank() != n - r {
        return Err(Error::Internal("quotient is not finite".into()));
    }
    let two = BigInt::from(2);
    let nonunit = quotient.nonunit_factors();
    if nonunit.iter().any(|d| *d != two) {
        return Err(Error::Internal(format!("quotient is not elementary abelian: {nonunit:?}")));
    }
    Ok(nonunit.len())
}

/// `Ĥ⁰ = V^g / (1+g)V` and `Ĥ¹ = ker(1+g) / im(1−g)`.
pub fn tate_dims(lattice: &BilinearLattice, g: &LatticeInvolution) -> Result<TateDims> {
    require_involution(lattice, g)?;
    let h0 = elementary_two_quotient(&one_minus_g(g), &one_plus_g(g))?;
    let h1 = elementary_two_quotient(&one_plus_g(g), &one_minus_g(g))?;
    Ok(TateDims { h0, h1 })
}

/// Multiplicities of the trivial, sign, and regular summands.
///
/// Every ℤ[ℤ₂]-lattice splits this way; `t` and `s` are read off the Tate
/// dimensions and `f` from the rank.
pub fn integral_decomposition(lattice: &BilinearLattice, g: &LatticeInvolution) -> Result<DecompositionReport> {
    let tate = tate_dims(lattice, g)?;
    let n = lattice.rank();
    let ts = tate.h0 + tate.h1;
    if ts > n || !(n - ts).is_multiple_of(2) {
        return Err(Error::Internal(format!("tate dims {tate:?} incompatible with rank {n}")));
    }
    let free = (n - ts) / 2;
    let ranks = eigenlattice_ranks(lattice, g)?;
    if ranks.plus != tate.h0 + free || ranks.minus != tate.h1 + free {
        return Err(Error::Internal(format!("decomposition {tate:?}, f = {free} disagrees with eigenranks {ranks:?}")));
    }
    Ok(DecompositionReport { trivial: tate.h0, sign: tate.h1, free, tate0: tate.h0, tate1: tate.h1 })
}

fn restricted_inertia(lattice: &BilinearLattice, basis: &IntMatrix) -> Result<Inertia> {
    Ok(inertia(&basis.congruent(lattice.gram())?))
}

/// `Sign(g) = sign(Ψ|V⁺) − sign(Ψ|V⁻)`.
pub fn g_signature(lattice: &BilinearLattice, g: &LatticeInvolution) -> Result<i64> {
    require_involution(lattice, g)?;
    let plus = restricted_inertia(lattice, &fixed_sublattice(g))?;
    let minus = restricted_inertia(lattice, &antifixed_sublattice(g))?;
    Ok(plus.signature() - minus.signature())
}

/// Dimension of a maximal positive subspace of the invariant part.
pub fn b_plus_fixed(lattice: &BilinearLattice, g: &LatticeInvolution) -> Result<usize> {
    require_involution(lattice, g)?;
    Ok(restricted_inertia(lattice, &fixed_sublattice(g))?.positive)
}

/// The three algebraic conditions for a locally linear realization.
///
/// Condition 2 only needs the basis vectors: for an isometric involution
/// `Ψ(v, gv) ≡ Σ vᵢ Ψ(eᵢ, geᵢ) (mod 2)` because the cross terms pair up as
/// `Ψ(eᵢ, geⱼ) + Ψ(eⱼ, geᵢ) = 2Ψ(eᵢ, geⱼ)`.
pub fn ee_conditions(lattice: &BilinearLattice, g: &LatticeInvolution) -> Result<EEReport> {
    let decomposition = integral_decomposition(lattice, g)?;
    let psi_g = lattice.gram() * g.action();
    let cond2 = (0..lattice.rank()).all(|i| psi_g[(i, i)].is_even());
    let g_sig = g_signature(lattice, g)?;
    Ok(EEReport {
        cond1: decomposition.sign == 0,
        cond2,
        cond3: g_sig == 0,
        n_trivial: decomposition.trivial,
        g_sig,
    })
}

/// The trivial summand `T`, when the basis exhibits it as a coordinate block.
///
/// The block is the set of basis vectors fixed by `g` whose span is
/// `g`-invariantly complemented by the remaining coordinates and orthogonal
/// to them under `Ψ`; the complement must be a free ℤ[ℤ₂]-module. No basis
/// change is searched for.
pub fn trivial_block(lattice: &BilinearLattice, g: &LatticeInvolution) -> Result<BilinearLattice> {
    require_involution(lattice, g)?;
    let n = lattice.rank();
    let act = g.action();
    let gram = lattice.gram();
    let is_unit = |i: usize| (0..n).all(|k| act[(k, i)] == if k == i { BigInt::one() } else { BigInt::zero() });
    let fixed: Vec<usize> = (0..n).filter(|&i| is_unit(i)).collect();
    let rest: Vec<usize> = (0..n).filter(|i| !fixed.contains(i)).collect();

    let split = fixed.iter().all(|&i| rest.iter().all(|&j| act[(i, j)].is_zero() && gram[(i, j)].is_zero()));
    if !split {
        return Err(Error::Precondition("trivial summand is not an orthogonal coordinate block".into()));
    }
    if !rest.is_empty() {
        let complement = BilinearLattice::new(gram.submatrix(&rest, &rest))?;
        let g_rest = LatticeInvolution::new(act.submatrix(&rest, &rest))?;
        let d = integral_decomposition(&complement, &g_rest)?;
        if d.trivial != 0 || d.sign != 0 {
            return Err(Error::Precondition("complement of the coordinate block is not free".into()));
        }
    }
    if fixed.is_empty() {
        return Err(Error::Precondition("no trivial summand".into()));
    }
    BilinearLattice::new(gram.submatrix(&fixed, &fixed))
}

pub mod presets {
    //! Named lattices: E8 (negative definite), H, the K3 and K3#K3 forms with
    //! their involutions, and the two framed-link matrices A and B.

    use super::*;

    /// Negative of the E8 Cartan matrix: a chain of seven nodes with an
    /// eighth attached to the fifth.
    pub fn e8() -> IntMatrix {
        let mut m = IntMatrix::zeros(8, 8);
        let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)];
        for i in 0..8 {
            m[(i, i)] = BigInt::from(-2);
        }
        for (a, b) in edges {
            m[(a, b)] = BigInt::one();
            m[(b, a)] = BigInt::one();
        }
        m
    }

    pub fn hyperbolic() -> IntMatrix {
        IntMatrix::from_i64(&[[0, 1], [1, 0]])
    }

    /// The 8-component linking matrix with framings (0,0,0,0,2,2,2,2).
    pub fn matrix_a() -> IntMatrix {
        IntMatrix::from_i64(&[
            [0, 1, 1, 1, 1, 1, 1, 1],
            [1, 0, 1, 1, 1, 1, 1, 1],
            [1, 1, 0, 1, 1, 1, 1, 1],
            [1, 1, 1, 0, 1, 1, 1, 1],
            [1, 1, 1, 1, 2, 1, 1, 1],
            [1, 1, 1, 1, 1, 2, 1, 1],
            [1, 1, 1, 1, 1, 1, 2, 1],
            [1, 1, 1, 1, 1, 1, 1, 2],
        ])
    }

    /// The 6-component linking matrix with framings (0,0,0,2,2,2).
    pub fn matrix_b() -> IntMatrix {
        IntMatrix::from_i64(&[
            [0, 1, 1, 1, 1, 1],
            [1, 0, 1, 1, 1, 1],
            [1, 1, 0, 1, 1, 1],
            [1, 1, 1, 2, 1, 1],
            [1, 1, 1, 1, 2, 1],
            [1, 1, 1, 1, 1, 2],
        ])
    }

    fn repeat(block: &IntMatrix, copies: usize) -> Vec<&IntMatrix> {
        std::iter::repeat_n(block, copies).collect()
    }

    /// `2E8 ⊕ 3H`, with the two E8 summands exchanged and `3H` fixed.
    pub fn k3() -> (BilinearLattice, LatticeInvolution) {
        let (e8, h) = (e8(), hyperbolic());
        let mut blocks = repeat(&e8, 2);
        blocks.extend(repeat(&h, 3));
        let gram = IntMatrix::block_diag(&blocks);
        let perm: Vec<usize> = (0..22)
            .map(|i| match i {
                0..=7 => i + 8,
                8..=15 => i - 8,
                _ => i,
            })
            .collect();
        (BilinearLattice::new(gram).expect("symmetric"), LatticeInvolution::permutation(&perm))
    }

    /// `4E8 ⊕ 6H`: the first `2E8` is exchanged with the second, the first
    /// two `H` summands are exchanged, and the last `4H` is fixed.
    pub fn k3k3() -> (BilinearLattice, LatticeInvolution) {
        let (e8, h) = (e8(), hyperbolic());
        let mut blocks = repeat(&e8, 4);
        blocks.extend(repeat(&h, 6));
        let gram = IntMatrix::block_diag(&blocks);
        let perm: Vec<usize> = (0..44)
            .map(|i| match i {
                0..=15 => i + 16,
                16..=31 => i - 16,
                32..=33 => i + 2,
                34..=35 => i - 2,
                _ => i,
            })
            .collect();
        (BilinearLattice::new(gram).expect("symmetric"), LatticeInvolution::permutation(&perm))
    }

    pub const NAMES: [&str; 6] = ["E8", "H", "K3", "K3K3", "A", "B"];

    /// Looks up a named lattice; plain forms come with the identity action.
    pub fn named(name: &str) -> Option<(BilinearLattice, LatticeInvolution)> {
        let plain = |m: IntMatrix| {
            let n = m.rows();
            Some((BilinearLattice::new(m).expect("symmetric"), LatticeInvolution::identity(n)))
        };
        match name.to_ascii_uppercase().as_str() {
            "E8" => plain(e8()),
            "H" => plain(hyperbolic()),
            "A" => plain(matrix_a()),
            "B" => plain(matrix_b()),
            "K3" => Some(k3()),
            "K3K3" | "K3#K3" => Some(k3k3()),
            _ => None,
        }
    }
}
