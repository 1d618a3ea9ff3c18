//! Exact Clifford algebra Cliff(ℝ^{2m}) with subset-indexed basis, the even
//! sphere idempotent `E(ξ,t) = 1/2 + 1/2(γ(ξ) + t·γ)`, trace identities, and
//! the concrete self-adjoint 4×4 spin representation for m = 2.
//!
//! Conventions: Euclidean signature `e_i² = +1`; the grading element is
//! `γ = e₁e₂e₃e₄` for m = 2 and `γ = -i e₁e₂` for m = 1 (the sign is an
//! orientation choice; downstream constants are measured against it, not
//! assumed).

use crate::algebra::{NCPoly, Presentation};
use crate::scalar::{GaussianRational, PhaseScalar};
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliffordError {
    #[error("dimension mismatch: Cliff(R^{0}) vs Cliff(R^{1})")]
    DimensionMismatch(u16, u16),
    #[error("unsupported m = {0}; concrete models exist for m in {{1, 2}}")]
    UnsupportedM(u8),
    #[error("point is not on the sphere: |ξ|² + t² = {0}")]
    NotOnSphere(String),
}

/// Commutative coefficient ring for Clifford elements: exact scalars, or
/// polynomials over the commutative sphere. Instances carry their own
/// context, so zero is derived from an existing value.
pub trait ClRing: Clone + PartialEq + std::fmt::Debug {
    fn zero_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn conj(&self) -> Self;
    fn scale_phase(&self, c: &PhaseScalar) -> Self;
}

impl ClRing for PhaseScalar {
    fn zero_like(&self) -> Self {
        PhaseScalar::zero()
    }
    fn is_zero(&self) -> bool {
        PhaseScalar::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        PhaseScalar::add(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        PhaseScalar::mul(self, o)
    }
    fn neg(&self) -> Self {
        PhaseScalar::neg(self)
    }
    fn conj(&self) -> Self {
        PhaseScalar::conj(self)
    }
    fn scale_phase(&self, c: &PhaseScalar) -> Self {
        PhaseScalar::mul(self, c)
    }
}

impl ClRing for NCPoly<PhaseScalar> {
    fn zero_like(&self) -> Self {
        let p = Presentation::from_id(self.pres());
        NCPoly::zero(&p)
    }
    fn is_zero(&self) -> bool {
        NCPoly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        NCPoly::add(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        let p = Presentation::from_id(self.pres());
        NCPoly::mul(self, o, &p).expect("matching presentations")
    }
    fn neg(&self) -> Self {
        NCPoly::neg(self)
    }
    fn conj(&self) -> Self {
        let p = Presentation::from_id(self.pres());
        self.adjoint(&p)
    }
    fn scale_phase(&self, c: &PhaseScalar) -> Self {
        NCPoly::scale_phase(self, c)
    }
}

/// Reordering sign of `e_S · e_T` with `e_i² = +1`.
pub(crate) fn basis_sign(s: u32, t: u32) -> i64 {
    let mut swaps = 0u32;
    let mut ti = t;
    while ti != 0 {
        let low = ti.trailing_zeros();
        swaps += (s >> (low + 1)).count_ones();
        ti &= ti - 1;
    }
    if swaps % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Element of Cliff(ℝ^{2m}) with coefficients in a commutative ring.
#[derive(Clone, PartialEq, Debug)]
pub struct CliffordElement<C: ClRing> {
    m: u8,
    terms: BTreeMap<u32, C>,
}

impl CliffordElement<PhaseScalar> {
    pub fn one(m: u8) -> Self {
        Self::scalar(m, PhaseScalar::one())
    }

    /// The basis vector e_i (0-indexed, i < 2m).
    pub fn basis_vector(m: u8, i: u8) -> Self {
        assert!(i < 2 * m);
        let mut out = Self::zero(m);
        out.insert(1 << i, PhaseScalar::one());
        out
    }

    /// The grading element γ with γ² = 1, γ* = γ, anticommuting with vectors.
    pub fn grading(m: u8) -> Self {
        Self::grading_scaled(m, PhaseScalar::one())
    }
}

impl<C: ClRing> CliffordElement<C> {
    pub fn zero(m: u8) -> Self {
        Self { m, terms: BTreeMap::new() }
    }

    pub fn scalar(m: u8, c: C) -> Self {
        let mut out = Self::zero(m);
        out.insert(0, c);
        out
    }

    /// γ(ξ) = Σ ξ_i e_i.
    pub fn gamma_vec(m: u8, coords: &[C]) -> Self {
        assert_eq!(coords.len(), 2 * m as usize);
        let mut out = Self::zero(m);
        for (i, c) in coords.iter().enumerate() {
            out.insert(1 << i, c.clone());
        }
        out
    }

    /// `c·γ` for the grading element: `(e₁…e_{2m})² = (-1)^{m(2m-1)}`, so odd
    /// m takes a factor -i to square to one.
    pub fn grading_scaled(m: u8, unit: C) -> Self {
        let full = (1u32 << (2 * m)) - 1;
        let coeff = match m % 2 {
            0 => unit,
            _ => unit.scale_phase(&PhaseScalar::i().neg()),
        };
        let mut out = Self::zero(m);
        out.insert(full, coeff);
        out
    }

    pub fn m(&self) -> u8 {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn insert(&mut self, mask: u32, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&mask) {
            Some(slot) => {
                *slot = slot.add(&c);
                if slot.is_zero() {
                    self.terms.remove(&mask);
                }
            }
            None => {
                self.terms.insert(mask, c);
            }
        }
    }

    pub fn coeff(&self, mask: u32) -> Option<&C> {
        self.terms.get(&mask)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &C)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.insert(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale_phase(&PhaseScalar::from_int(-1)))
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(self.m);
        for (k, v) in &self.terms {
            out.insert(*k, v.mul(c));
        }
        out
    }

    pub fn scale_phase(&self, c: &PhaseScalar) -> Self {
        let mut out = Self::zero(self.m);
        for (k, v) in &self.terms {
            out.insert(*k, v.scale_phase(c));
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Result<Self, CliffordError> {
        if self.m != o.m {
            return Err(CliffordError::DimensionMismatch(
                2 * self.m as u16,
                2 * o.m as u16,
            ));
        }
        let mut out = Self::zero(self.m);
        for (s, cs) in &self.terms {
            for (t, ct) in &o.terms {
                let sign = basis_sign(*s, *t);
                let c = cs.mul(ct);
                let c = if sign < 0 { c.neg() } else { c };
                out.insert(s ^ t, c);
            }
        }
        Ok(out)
    }

    /// The involution: reverses basis factors and conjugates coefficients.
    pub fn star(&self) -> Self {
        let mut out = Self::zero(self.m);
        for (k, c) in &self.terms {
            let deg = k.count_ones();
            let sign = if (deg * deg.saturating_sub(1) / 2) % 2 == 0 { 1 } else { -1 };
            let c = c.conj();
            out.insert(*k, if sign < 0 { c.neg() } else { c });
        }
        out
    }

    /// Normalized matrix trace of the irreducible representation:
    /// `2^m ×` the coefficient of the empty product; `None` when zero.
    pub fn trace(&self) -> Option<C> {
        let two_m = PhaseScalar::from_int(1i64 << self.m);
        self.terms.get(&0).map(|c| c.scale_phase(&two_m))
    }

    pub fn trace_is_zero(&self) -> bool {
        self.trace().map_or(true, |c| c.is_zero())
    }
}

/// Exact complex matrix with Gaussian-rational entries.
#[derive(Clone, PartialEq, Debug)]
pub struct ExactMat {
    n: usize,
    e: Vec<GaussianRational>,
}

impl ExactMat {
    pub fn zero(n: usize) -> Self {
        Self { n, e: vec![GaussianRational::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            *m.at_mut(i, i) = GaussianRational::one();
        }
        m
    }

    pub fn from_rows(rows: &[&[GaussianRational]]) -> Self {
        let n = rows.len();
        let mut m = Self::zero(n);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n);
            for (j, v) in row.iter().enumerate() {
                *m.at_mut(i, j) = v.clone();
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn at(&self, i: usize, j: usize) -> &GaussianRational {
        &self.e[i * self.n + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut GaussianRational {
        &mut self.e[i * self.n + j]
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        Self {
            n: self.n,
            e: self.e.iter().zip(&o.e).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        Self {
            n: self.n,
            e: self.e.iter().zip(&o.e).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        let mut out = Self::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                let mut acc = GaussianRational::zero();
                for k in 0..self.n {
                    acc = acc.add(&self.at(i, k).mul(o.at(k, j)));
                }
                *out.at_mut(i, j) = acc;
            }
        }
        out
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self { n: self.n, e: self.e.iter().map(|a| a.mul(c)).collect() }
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                *out.at_mut(i, j) = self.at(j, i).conj();
            }
        }
        out
    }

    pub fn trace(&self) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for i in 0..self.n {
            acc = acc.add(self.at(i, i));
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(|v| v.is_zero())
    }
}

/// The concrete m = 2 spin representation: four self-adjoint anticommuting
/// 4×4 matrices with `γ₅ = γ₁γ₂γ₃γ₄ = diag(1,1,-1,-1)`.
pub struct SpinRep {
    pub gammas: [ExactMat; 4],
    pub gamma5: ExactMat,
}

fn g(re: i64, im: i64) -> GaussianRational {
    GaussianRational {
        re: BigRational::from_integer(re.into()),
        im: BigRational::from_integer(im.into()),
    }
}

/// Block construction `γ_k = [[0, a_k], [a_k*, 0]]` with `a_k = -iσ_k` for
/// k = 1..3 and `a₄ = 1`.
pub fn spin_rep_m2() -> SpinRep {
    let z = || g(0, 0);
    let gamma1 = ExactMat::from_rows(&[
        &[z(), z(), z(), g(0, -1)],
        &[z(), z(), g(0, -1), z()],
        &[z(), g(0, 1), z(), z()],
        &[g(0, 1), z(), z(), z()],
    ]);
    let gamma2 = ExactMat::from_rows(&[
        &[z(), z(), z(), g(-1, 0)],
        &[z(), z(), g(1, 0), z()],
        &[z(), g(1, 0), z(), z()],
        &[g(-1, 0), z(), z(), z()],
    ]);
    let gamma3 = ExactMat::from_rows(&[
        &[z(), z(), g(0, -1), z()],
        &[z(), z(), z(), g(0, 1)],
        &[g(0, 1), z(), z(), z()],
        &[z(), g(0, -1), z(), z()],
    ]);
    let gamma4 = ExactMat::from_rows(&[
        &[z(), z(), g(1, 0), z()],
        &[z(), z(), z(), g(1, 0)],
        &[g(1, 0), z(), z(), z()],
        &[z(), g(1, 0), z(), z()],
    ]);
    let gamma5 = gamma1.mul(&gamma2).mul(&gamma3).mul(&gamma4);
    SpinRep { gammas: [gamma1, gamma2, gamma3, gamma4], gamma5 }
}

/// The m = 1 representation: e₁ ↦ σ₁, e₂ ↦ σ₂, grading ↦ σ₃.
pub fn pauli_rep() -> [ExactMat; 3] {
    let z = || g(0, 0);
    let s1 = ExactMat::from_rows(&[&[z(), g(1, 0)], &[g(1, 0), z()]]);
    let s2 = ExactMat::from_rows(&[&[z(), g(0, -1)], &[g(0, 1), z()]]);
    let s3 = ExactMat::from_rows(&[&[g(1, 0), z()], &[z(), g(-1, 0)]]);
    [s1, s2, s3]
}

/// Matrix image of a basis element under the m = 2 spin representation.
pub fn rep_basis_m2(rep: &SpinRep, mask: u32) -> ExactMat {
    let mut acc = ExactMat::identity(4);
    for i in 0..4 {
        if mask & (1 << i) != 0 {
            acc = acc.mul(&rep.gammas[i]);
        }
    }
    acc
}

/// Evaluates a rational-coefficient Clifford element in the m = 2 rep.
pub fn rep_eval_m2(rep: &SpinRep, x: &CliffordElement<PhaseScalar>) -> ExactMat {
    let mut acc = ExactMat::zero(4);
    for (mask, c) in x.terms() {
        let coeff = c
            .as_lambda_free()
            .expect("Clifford coefficients over the commutative sphere are λ-free");
        acc = acc.add(&rep_basis_m2(rep, mask).scale(&coeff));
    }
    acc
}

/// The sphere idempotent as a matrix over sphere_comm(2m) through the
/// concrete representation: `E = 1/2 (1 + Σ ξ_i Γ_i + t' Γ)`.
pub fn idempotent_e_matrix(
    m: u8,
    p: &Presentation,
) -> Result<crate::algebra::AlgMatrix<PhaseScalar>, CliffordError> {
    let (mats, grading, r): (Vec<ExactMat>, ExactMat, usize) = match m {
        1 => {
            let [s1, s2, s3] = pauli_rep();
            (vec![s1, s2], s3, 2)
        }
        2 => {
            let rep = spin_rep_m2();
            (rep.gammas.to_vec(), rep.gamma5.clone(), 4)
        }
        _ => return Err(CliffordError::UnsupportedM(m)),
    };
    let half = GaussianRational::from_ratio(1, 2);
    let mut entries = Vec::with_capacity(r * r);
    for i in 0..r {
        for j in 0..r {
            let mut entry = NCPoly::<PhaseScalar>::zero(p);
            if i == j {
                entry = entry.add(&NCPoly::constant(p, PhaseScalar::from_ratio(1, 2)));
            }
            for (k, mat) in mats.iter().enumerate() {
                let c = mat.at(i, j).mul(&half);
                entry = entry.add(
                    &NCPoly::generator(p, k as u8).scale(&PhaseScalar::from_gaussian(c)),
                );
            }
            let c = grading.at(i, j).mul(&half);
            entry = entry.add(
                &NCPoly::generator(p, 2 * m).scale(&PhaseScalar::from_gaussian(c)),
            );
            entries.push(entry);
        }
    }
    Ok(crate::algebra::AlgMatrix::from_entries(r, entries).expect("square by construction"))
}

/// The abstract sphere idempotent `E = 1/2 + 1/2(γ(ξ) + t'γ)` with polynomial
/// coefficients over sphere_comm(2m).
pub fn idempotent_e_abstract(
    m: u8,
    p: &Presentation,
) -> CliffordElement<NCPoly<PhaseScalar>> {
    let coords: Vec<NCPoly<PhaseScalar>> =
        (0..2 * m).map(|i| NCPoly::generator(p, i)).collect();
    let t = NCPoly::<PhaseScalar>::generator(p, 2 * m);
    let gamma_xi = CliffordElement::gamma_vec(m, &coords);
    let gamma = CliffordElement::grading_scaled(m, NCPoly::<PhaseScalar>::one(p));
    let half = PhaseScalar::from_ratio(1, 2);
    CliffordElement::scalar(m, NCPoly::constant(p, half.clone()))
        .add(&gamma_xi.add(&gamma.scale(&t)).scale_phase(&half))
}

/// An exact rational point on S^{2m}: coordinates (ξ, t) with Σξ² + t² = 1.
#[derive(Clone, Debug)]
pub struct SpherePoint {
    pub xi: Vec<BigRational>,
    pub t: BigRational,
}

impl SpherePoint {
    pub fn check(&self) -> Result<(), CliffordError> {
        let mut acc = &self.t * &self.t;
        for x in &self.xi {
            acc += x * x;
        }
        if acc != BigRational::one() {
            return Err(CliffordError::NotOnSphere(acc.to_string()));
        }
        Ok(())
    }

    /// `F(x)/2 = E(x) - 1/2 = 1/2(γ(ξ) + tγ)` with exact coefficients.
    pub fn half_f(&self, m: u8) -> CliffordElement<PhaseScalar> {
        let half = GaussianRational::from_ratio(1, 2);
        let coords: Vec<PhaseScalar> = self
            .xi
            .iter()
            .map(|x| {
                PhaseScalar::from_gaussian(GaussianRational {
                    re: x * half.re.clone(),
                    im: BigRational::zero(),
                })
            })
            .collect();
        let t_half = PhaseScalar::from_gaussian(GaussianRational {
            re: &self.t * &half.re,
            im: BigRational::zero(),
        });
        CliffordElement::gamma_vec(m, &coords)
            .add(&CliffordElement::grading(m).scale(&t_half))
    }
}

/// Stereographic images of integer tuples: exact rational sphere points.
pub fn rational_sphere_points(m: u8, count: usize, seed: u64) -> Vec<SpherePoint> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let n = 2 * m as usize;
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let a: Vec<i64> = (0..n).map(|_| rng.gen_range(-6i64..7)).collect();
        let b: i64 = rng.gen_range(1i64..7);
        let norm_a: i64 = a.iter().map(|x| x * x).sum();
        if norm_a == 0 {
            continue;
        }
        let denom = BigRational::from_integer((norm_a + b * b).into());
        let xi: Vec<BigRational> = a
            .iter()
            .map(|&ai| BigRational::from_integer((2 * ai * b).into()) / denom.clone())
            .collect();
        let t = BigRational::from_integer((norm_a - b * b).into()) / denom;
        let point = SpherePoint { xi, t };
        point.check().expect("stereographic image lies on the sphere");
        out.push(point);
    }
    out
}

/// Verdict of the odd trace identity
/// `Trace((E(x₁)-1/2)…(E(x_ℓ)-1/2)) = 0` over a list of exact sphere points.
pub fn odd_trace_scan(
    m: u8,
    ell: usize,
    points: &[SpherePoint],
) -> Result<bool, CliffordError> {
    assert!(ell % 2 == 1 && ell < 2 * m as usize, "ℓ must be odd and < 2m");
    for p in points {
        p.check()?;
        if p.xi.len() != 2 * m as usize {
            return Err(CliffordError::DimensionMismatch(
                2 * m as u16,
                p.xi.len() as u16,
            ));
        }
    }
    // All ℓ-fold products over a sliding window of the supplied points,
    // wrapping around, so every point participates.
    for start in 0..points.len() {
        let mut acc = CliffordElement::<PhaseScalar>::one(m);
        for k in 0..ell {
            let p = &points[(start + k) % points.len()];
            acc = acc.mul(&p.half_f(m))?;
        }
        if !acc.trace_is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Symbolic ℓ = 1 identity: the trace of `E - 1/2` vanishes identically.
pub fn odd_trace_symbolic_ell1(m: u8, p: &Presentation) -> bool {
    let e = idempotent_e_abstract(m, p);
    let half = CliffordElement::scalar(m, NCPoly::constant(p, PhaseScalar::from_ratio(1, 2)));
    e.sub(&half).trace_is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(n: i64, d: i64) -> PhaseScalar {
        PhaseScalar::from_ratio(n, d)
    }

    #[test]
    fn basis_vectors_anticommute() {
        let e1 = CliffordElement::<PhaseScalar>::basis_vector(2, 0);
        let e2 = CliffordElement::<PhaseScalar>::basis_vector(2, 1);
        let lhs = e1.mul(&e2).unwrap();
        let rhs = e2.mul(&e1).unwrap().scale_phase(&PhaseScalar::from_int(-1));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn gamma_vec_squares_to_norm_symbolically() {
        for m in [1u8, 2u8] {
            let p = Presentation::sphere_comm(m);
            let coords: Vec<NCPoly<PhaseScalar>> =
                (0..2 * m).map(|i| NCPoly::generator(&p, i)).collect();
            let gx = CliffordElement::gamma_vec(m, &coords);
            let sq = gx.mul(&gx).unwrap();
            let mut norm = NCPoly::<PhaseScalar>::zero(&p);
            for c in &coords {
                norm = norm.add(&c.mul(c, &p).unwrap());
            }
            assert_eq!(sq, CliffordElement::scalar(m, norm));
        }
    }

    #[test]
    fn grading_squares_to_one_and_anticommutes() {
        for m in [1u8, 2u8] {
            let gamma = CliffordElement::<PhaseScalar>::grading(m);
            assert_eq!(gamma.mul(&gamma).unwrap(), CliffordElement::one(m));
            assert_eq!(gamma.star(), gamma, "grading is self-adjoint");
            for i in 0..2 * m {
                let ei = CliffordElement::<PhaseScalar>::basis_vector(m, i);
                let anti = gamma.mul(&ei).unwrap().add(&ei.mul(&gamma).unwrap());
                assert!(anti.is_zero(), "γ e_{i} + e_{i} γ = 0");
            }
        }
    }

    #[test]
    fn trace_of_vector_products_is_inner_product() {
        // trace(γ(x) γ(y)) = 2^m <x, y> for exact rational vectors.
        let m = 2u8;
        let x: Vec<PhaseScalar> = vec![ps(1, 2), ps(-1, 3), ps(2, 1), ps(0, 1)];
        let y: Vec<PhaseScalar> = vec![ps(3, 5), ps(1, 7), ps(-2, 3), ps(1, 2)];
        let gx = CliffordElement::gamma_vec(m, &x);
        let gy = CliffordElement::gamma_vec(m, &y);
        let mut inner = PhaseScalar::zero();
        for (a, b) in x.iter().zip(&y) {
            inner = inner.add(&a.mul(b));
        }
        let expected = inner.mul(&PhaseScalar::from_int(4));
        assert_eq!(gx.mul(&gy).unwrap().trace(), Some(expected));
    }

    #[test]
    fn low_filtration_orthogonal_to_grading() {
        // trace(γ(x) γ(y) γ) = 0 for m = 2 (k = 1 < m).
        let m = 2u8;
        let x: Vec<PhaseScalar> = vec![ps(1, 1), ps(2, 1), ps(3, 1), ps(4, 1)];
        let y: Vec<PhaseScalar> = vec![ps(1, 3), ps(-1, 2), ps(0, 1), ps(5, 7)];
        let gx = CliffordElement::gamma_vec(m, &x);
        let gy = CliffordElement::gamma_vec(m, &y);
        let g = CliffordElement::grading(m);
        assert!(gx.mul(&gy).unwrap().mul(&g).unwrap().trace_is_zero());
    }

    #[test]
    fn spin_rep_satisfies_clifford_relations() {
        let rep = spin_rep_m2();
        let id = ExactMat::identity(4);
        for mu in 0..4 {
            assert_eq!(rep.gammas[mu].adjoint(), rep.gammas[mu], "γ_μ self-adjoint");
            for nu in 0..4 {
                let anti = rep.gammas[mu]
                    .mul(&rep.gammas[nu])
                    .add(&rep.gammas[nu].mul(&rep.gammas[mu]));
                let expected =
                    if mu == nu { id.scale(&g(2, 0)) } else { ExactMat::zero(4) };
                assert_eq!(anti, expected, "{{γ_{mu}, γ_{nu}}} = 2δ");
            }
        }
    }

    #[test]
    fn gamma5_is_chiral_diagonal() {
        let rep = spin_rep_m2();
        let mut expected = ExactMat::zero(4);
        for (i, v) in [1i64, 1, -1, -1].into_iter().enumerate() {
            *expected.at_mut(i, i) = g(v, 0);
        }
        assert_eq!(rep.gamma5, expected);
        assert_eq!(rep.gamma5.mul(&rep.gamma5), ExactMat::identity(4));
        assert!(rep.gamma5.trace().is_zero());
        for mu in 0..4 {
            assert!(rep.gammas[mu].trace().is_zero());
            let anti =
                rep.gamma5.mul(&rep.gammas[mu]).add(&rep.gammas[mu].mul(&rep.gamma5));
            assert!(anti.is_zero(), "γ₅ anticommutes with γ_{mu}");
        }
    }

    #[test]
    fn abstract_and_concrete_products_agree() {
        let rep = spin_rep_m2();
        for s in 0u32..16 {
            for t in 0u32..16 {
                let mut es = CliffordElement::<PhaseScalar>::zero(2);
                es.insert(s, PhaseScalar::one());
                let mut et = CliffordElement::<PhaseScalar>::zero(2);
                et.insert(t, PhaseScalar::one());
                let abstract_prod = rep_eval_m2(&rep, &es.mul(&et).unwrap());
                let concrete_prod = rep_basis_m2(&rep, s).mul(&rep_basis_m2(&rep, t));
                assert_eq!(abstract_prod, concrete_prod, "S={s:04b} T={t:04b}");
            }
        }
    }

    #[test]
    fn idempotent_abstract_identities() {
        for m in [1u8, 2u8] {
            let p = Presentation::sphere_comm(m);
            let e = idempotent_e_abstract(m, &p);
            // E² = E requires the sphere relation t'² → 1 - Σξ².
            let e2 = e.mul(&e).unwrap();
            assert_eq!(e2, e, "E² = E for m = {m}");
            assert_eq!(e.star(), e, "E = E* for m = {m}");
        }
    }

    #[test]
    fn pole_point_is_diagonal_projector() {
        // t = 1, ξ = 0: E = (1 + γ)/2.
        let m = 2u8;
        let point = SpherePoint {
            xi: vec![BigRational::zero(); 4],
            t: BigRational::one(),
        };
        point.check().unwrap();
        let e = point
            .half_f(m)
            .add(&CliffordElement::scalar(m, PhaseScalar::from_ratio(1, 2)));
        let expected = CliffordElement::<PhaseScalar>::one(m)
            .add(&CliffordElement::grading(m))
            .scale_phase(&PhaseScalar::from_ratio(1, 2));
        assert_eq!(e, expected);
    }

    #[test]
    fn odd_traces_vanish_on_rational_points() {
        let pts = rational_sphere_points(2, 30, 99);
        assert!(odd_trace_scan(2, 1, &pts).unwrap());
        assert!(odd_trace_scan(2, 3, &pts).unwrap());
    }

    #[test]
    fn off_sphere_point_rejected() {
        let bad = SpherePoint { xi: vec![BigRational::one(); 4], t: BigRational::one() };
        assert!(bad.check().is_err());
    }

    #[test]
    fn symbolic_ell1_trace() {
        for m in [1u8, 2u8] {
            let p = Presentation::sphere_comm(m);
            assert!(odd_trace_symbolic_ell1(m, &p));
        }
    }
}
