//! Independent reference implementations used by the integration suites.
//!
//! None of these call into the algorithms they check; they share only the
//! matrix container.

#![allow(dead_code)]

use std::collections::BTreeSet;

use bfinv_core::IntMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

type Poly = Vec<BigRational>;

fn q(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn deg(p: &Poly) -> isize {
    p.len() as isize - 1
}

fn derivative(p: &Poly) -> Poly {
    trim(p.iter().enumerate().skip(1).map(|(i, c)| c * BigRational::from_integer(BigInt::from(i))).collect())
}

fn sub(a: &Poly, b: &Poly) -> Poly {
    let n = a.len().max(b.len());
    let z = BigRational::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

fn divmod(a: &Poly, b: &Poly) -> (Poly, Poly) {
    let mut r = a.clone();
    let db = deg(b);
    let lead = b.last().expect("nonzero divisor").clone();
    let mut quot = vec![BigRational::zero(); (deg(a) - db + 1).max(0) as usize];
    while deg(&r) >= db && !r.is_empty() {
        let shift = (deg(&r) - db) as usize;
        let c = r.last().unwrap() / &lead;
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] = &r[i + shift] - &c * bc;
        }
        quot[shift] = c;
        r = trim(r);
    }
    (trim(quot), r)
}

fn monic(p: Poly) -> Poly {
    let lead = p.last().unwrap().clone();
    p.into_iter().map(|c| c / &lead).collect()
}

fn gcd(a: &Poly, b: &Poly) -> Poly {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_empty() {
        let (_, r) = divmod(&x, &y);
        x = y;
        y = r;
    }
    monic(x)
}

/// Characteristic polynomial `det(xI − A)` by Faddeev–LeVerrier.
fn charpoly(a: &IntMatrix) -> Poly {
    let n = a.rows();
    let am: Vec<Vec<BigRational>> = (0..n).map(|i| (0..n).map(|j| q(&a[(i, j)])).collect()).collect();
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    let mut m = vec![vec![BigRational::zero(); n]; n];
    for k in 1..=n {
        // M_k = A·M_{k−1} + c_{n−k+1}·I
        let mut next = vec![vec![BigRational::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = BigRational::zero();
                for l in 0..n {
                    s += &am[i][l] * &m[l][j];
                }
                if i == j {
                    s += &coeffs[n - k + 1];
                }
                next[i][j] = s;
            }
        }
        let mut tr = BigRational::zero();
        for i in 0..n {
            for l in 0..n {
                tr += &am[i][l] * &next[l][i];
            }
        }
        coeffs[n - k] = -tr / BigRational::from_integer(BigInt::from(k));
        m = next;
    }
    coeffs
}

/// Yun's square-free factorization: `(factor, multiplicity)`.
fn squarefree(f: &Poly) -> Vec<(Poly, usize)> {
    let f = monic(f.clone());
    let df = derivative(&f);
    if df.is_empty() {
        return Vec::new();
    }
    let a0 = gcd(&f, &df);
    let mut b = divmod(&f, &a0).0;
    let mut c = divmod(&df, &a0).0;
    let mut d = sub(&c, &derivative(&b));
    let mut out = Vec::new();
    let mut i = 1;
    while deg(&b) > 0 {
        let a = if d.is_empty() { b.clone() } else { gcd(&b, &d) };
        b = divmod(&b, &a).0;
        c = divmod(&d, &a).0;
        d = sub(&c, &derivative(&b));
        if deg(&a) > 0 {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

fn sign_changes(values: impl Iterator<Item = BigRational>) -> usize {
    let signs: Vec<bool> = values.filter(|v| !v.is_zero()).map(|v| v.is_positive()).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Distinct roots of a square-free `p` with `p(0) ≠ 0` in `(0, ∞)`.
fn positive_roots(p: &Poly) -> usize {
    let mut seq = vec![p.clone(), derivative(p)];
    while !seq.last().unwrap().is_empty() {
        let n = seq.len();
        let (_, r) = divmod(&seq[n - 2], &seq[n - 1]);
        seq.push(r.into_iter().map(|c| -c).collect());
    }
    seq.pop();
    let at_zero = sign_changes(seq.iter().map(|s| s[0].clone()));
    let at_inf = sign_changes(seq.iter().map(|s| s.last().unwrap().clone()));
    at_zero - at_inf
}

fn reflect(p: &Poly) -> Poly {
    p.iter().enumerate().map(|(i, c)| if i % 2 == 1 { -c.clone() } else { c.clone() }).collect()
}

/// `(positive, negative)` eigenvalue counts with multiplicity via Sturm chains.
pub fn sturm_inertia(a: &IntMatrix) -> (usize, usize) {
    let mut pos = 0;
    let mut neg = 0;
    for (mut factor, mult) in squarefree(&charpoly(a)) {
        if factor[0].is_zero() {
            factor.remove(0);
        }
        if deg(&factor) <= 0 {
            continue;
        }
        pos += mult * positive_roots(&factor);
        neg += mult * positive_roots(&reflect(&factor));
    }
    (pos, neg)
}

pub fn sturm_signature(a: &IntMatrix) -> i64 {
    let (p, n) = sturm_inertia(a);
    p as i64 - n as i64
}

/// `Ψ(v, gv)` even for every `v ∈ {0,1}ⁿ`.
pub fn brute_cond2(gram: &IntMatrix, g: &IntMatrix) -> bool {
    let n = gram.rows();
    (0u32..1 << n).all(|mask| {
        let v: Vec<BigInt> = (0..n).map(|i| BigInt::from((mask >> i) & 1)).collect();
        let gv: Vec<BigInt> = (0..n).map(|i| (0..n).map(|j| &g[(i, j)] * &v[j]).sum()).collect();
        let mut s = BigInt::zero();
        for i in 0..n {
            for j in 0..n {
                s += &v[i] * &gram[(i, j)] * &gv[j];
            }
        }
        (s % BigInt::from(2)).is_zero()
    })
}

/// Rank over ℚ by fraction-field elimination.
pub fn rational_rank(a: &IntMatrix) -> usize {
    let mut m: Vec<Vec<BigRational>> = (0..a.rows()).map(|i| (0..a.cols()).map(|j| q(&a[(i, j)])).collect()).collect();
    let mut rank = 0;
    for c in 0..a.cols() {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        for r in 0..m.len() {
            if r != rank && !m[r][c].is_zero() {
                let f = &m[r][c] / &m[rank][c];
                for k in 0..a.cols() {
                    let v = &f * &m[rank][k];
                    m[r][k] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Fixed-point signs allowed by the framing rule, enumerated over all
/// `2^{n+2}` assignments `(base, handles…, cap)`.
pub fn enumerate_eps_sums(framings: &[i64]) -> BTreeSet<i64> {
    let n = framings.len();
    let rule = |r: i64| if r.rem_euclid(4) == 2 { 1 } else { -1 };
    let mut out = BTreeSet::new();
    for mask in 0u32..1 << (n + 2) {
        let sign = |i: usize| if (mask >> i) & 1 == 1 { 1i64 } else { -1 };
        let base = sign(0);
        if (0..n).all(|i| base * sign(i + 1) == rule(framings[i])) {
            out.insert((0..n + 2).map(sign).sum());
        }
    }
    out
}

/// Fixed dimensions `[e, ℤ₂, ℤ̃₂, S¹, ℤ₂×S¹]` of `(a₊, a₋, b₊, b₋)`.
pub fn dims(v: [i64; 4]) -> [i64; 5] {
    let [ap, am, bp, bm] = v;
    [2 * ap + 2 * am + bp + bm, 2 * ap + bp, 2 * am + bp, bp + bm, bp]
}

/// Index pairs `(K, H)` into [`dims`] with `K ⊂ H`.
const PAIRS: [(usize, usize); 7] = [(0, 1), (0, 2), (0, 3), (0, 4), (1, 4), (2, 4), (3, 4)];

pub fn families_hold(vp: [i64; 4], v0: [i64; 4], w0: [i64; 4]) -> bool {
    let (dv, d0, dw) = (dims(vp), dims(v0), dims(w0));
    let first = (0..5).all(|h| dv[h] + d0[h] <= 2 * (dv[h] + dw[h] - 1));
    let second = PAIRS.iter().all(|&(k, h)| dv[h] + d0[h] < (dv[k] + dw[k] - 1));
    first && second
}

/// First `(a₊, a₋, b)` in lexicographic order over `0..=64`.
pub fn brute_suspension(k_plus: i64, k_minus: i64, w0: [i64; 4]) -> Option<[i64; 3]> {
    let v0 = [k_plus.max(0), k_minus.max(0), 0, 0];
    let mut w0 = w0;
    if k_plus < 0 {
        w0[0] -= k_plus;
    }
    if k_minus < 0 {
        w0[1] -= k_minus;
    }
    for a in 0..=64 {
        for b in 0..=64 {
            for c in 0..=64 {
                if families_hold([a, b, c, 0], v0, w0) {
                    return Some([a, b, c]);
                }
            }
        }
    }
    None
}

/// A random symmetric integer matrix with entries in `-r..=r`.
pub fn random_symmetric(rng: &mut impl Rng, n: usize, r: i64) -> IntMatrix {
    let mut m = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = BigInt::from(rng.gen_range(-r..=r));
            m[(i, j)] = v.clone();
            m[(j, i)] = v;
        }
    }
    m
}

/// A random unimodular `U` and its inverse, as a product of elementary
/// column operations.
pub fn random_unimodular(rng: &mut impl Rng, n: usize, steps: usize) -> (IntMatrix, IntMatrix) {
    let mut u = IntMatrix::identity(n);
    let mut inv = IntMatrix::identity(n);
    if n < 2 {
        return (u, inv);
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c = BigInt::from(rng.gen_range(-2i64..=2));
        u.add_col_multiple(i, j, &c);
        inv.add_row_multiple(j, i, &-c);
    }
    (u, inv)
}

/// Random block sum of trivial, sign, and regular ℤ[ℤ₂]-lattices, with the
/// known counts `(t, s, f)`.
pub struct BlockLattice {
    pub gram: IntMatrix,
    pub g: IntMatrix,
    pub t: usize,
    pub s: usize,
    pub f: usize,
}

pub fn random_block_lattice(rng: &mut impl Rng, max_rank: usize) -> BlockLattice {
    let mut grams = Vec::new();
    let mut gs = Vec::new();
    let (mut t, mut s, mut f, mut n) = (0, 0, 0, 0);
    let target = rng.gen_range(1..=max_rank);
    while n < target {
        let kind = if n + 2 <= target { rng.gen_range(0..3) } else { rng.gen_range(0..2) };
        match kind {
            0 | 1 => {
                let a = rng.gen_range(-3i64..=3);
                grams.push(IntMatrix::from_i64(&[[a]]));
                gs.push(IntMatrix::from_i64(&[[if kind == 0 { 1 } else { -1 }]]));
                if kind == 0 {
                    t += 1;
                } else {
                    s += 1;
                }
                n += 1;
            }
            _ => {
                let (x, y) = (rng.gen_range(-3i64..=3), rng.gen_range(-3i64..=3));
                grams.push(IntMatrix::from_i64(&[[x, y], [y, x]]));
                gs.push(IntMatrix::from_i64(&[[0, 1], [1, 0]]));
                f += 1;
                n += 2;
            }
        }
    }
    let gram_refs: Vec<&IntMatrix> = grams.iter().collect();
    let g_refs: Vec<&IntMatrix> = gs.iter().collect();
    BlockLattice { gram: IntMatrix::block_diag(&gram_refs), g: IntMatrix::block_diag(&g_refs), t, s, f }
}

/// Conjugates `(Ψ, g)` by `U`: `UᵀΨU` and `U⁻¹gU`.
pub fn conjugate(gram: &IntMatrix, g: &IntMatrix, u: &IntMatrix, inv: &IntMatrix) -> (IntMatrix, IntMatrix) {
    (&(&u.transpose() * gram) * u, &(inv * g) * u)
}

/// A random matrix whose framings are even and linking numbers odd.
pub fn random_ee_matrix(rng: &mut impl Rng, n: usize) -> IntMatrix {
    let mut m = IntMatrix::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = BigInt::from(2 * rng.gen_range(-4i64..=4));
        for j in i + 1..n {
            let v = BigInt::from(2 * rng.gen_range(-4i64..=3) + 1);
            m[(i, j)] = v.clone();
            m[(j, i)] = v;
        }
    }
    m
}

pub fn diag_i64(m: &IntMatrix) -> Vec<i64> {
    (0..m.rows()).map(|i| m[(i, i)].to_i64().unwrap()).collect()
}
