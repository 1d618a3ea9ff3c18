//! Numeric clock-shift oracle: finite-dimensional evaluation of every
//! symbolic object at a rational deformation value.
//!
//! For θ = p/q with q dividing N, the N×N clock matrix C = diag(λ^k) and the
//! cyclic shift S satisfy CS = λSC, so `u → C, v → S` represents the torus
//! relations exactly. Trig symbols evaluate at chosen angles, spin symbols
//! through the concrete 4×4 representation. The oracle shares no code with
//! the symbolic normal-form path beyond the data structures it reads.

use crate::algebra::{NCPoly, Presentation, RawPoly, Word};
use crate::scalar::PhaseScalar;
use crate::spectral::{SpinorMatrix, SpinorSymbol};
use crate::trig::TrigCoeff;
use num_complex::Complex64;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("finite representation needs rational θ = p/q with q | N; got q = {0}, N = {1}")]
    IncompatibleModulus(i64, usize),
    #[error("zero denominator in θ")]
    ZeroDenominator,
}

/// Dense complex matrix, row-major.
#[derive(Clone, Debug)]
pub struct CMat {
    n: usize,
    e: Vec<Complex64>,
}

impl CMat {
    pub fn zero(n: usize) -> Self {
        Self { n, e: vec![Complex64::new(0.0, 0.0); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.e[i * n + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn at(&self, i: usize, j: usize) -> Complex64 {
        self.e[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.e[i * self.n + j] = v;
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        Self { n: self.n, e: self.e.iter().zip(&o.e).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        Self { n: self.n, e: self.e.iter().zip(&o.e).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self { n: self.n, e: self.e.iter().map(|a| a * c).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.e[i * n + k];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.e[i * n + j] += a * o.e[k * n + j];
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                out.e[j * n + i] = self.e[i * n + j].conj();
            }
        }
        out
    }

    pub fn kron(&self, o: &Self) -> Self {
        let n = self.n * o.n;
        let mut out = Self::zero(n);
        for i1 in 0..self.n {
            for j1 in 0..self.n {
                let a = self.at(i1, j1);
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for i2 in 0..o.n {
                    for j2 in 0..o.n {
                        out.set(i1 * o.n + i2, j1 * o.n + j2, a * o.at(i2, j2));
                    }
                }
            }
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.e.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::identity(self.n);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }
}

/// Evaluation context at fixed θ = p/q, angles (φ, ψ), and size N.
pub struct ClockShiftOracle {
    pub n: usize,
    pub lambda: Complex64,
    pub phi: f64,
    pub psi: f64,
    clock: CMat,
    shift: CMat,
}

impl ClockShiftOracle {
    pub fn new(n: usize, p: i64, q: i64, phi: f64, psi: f64) -> Result<Self, OracleError> {
        if q == 0 {
            return Err(OracleError::ZeroDenominator);
        }
        let q_abs = q.unsigned_abs() as usize;
        if n % q_abs != 0 {
            return Err(OracleError::IncompatibleModulus(q, n));
        }
        let lambda = Complex64::from_polar(1.0, 2.0 * PI * (p as f64) / (q as f64));
        let mut clock = CMat::zero(n);
        let mut shift = CMat::zero(n);
        for k in 0..n {
            clock.set(k, k, lambda.powi(k as i32));
            shift.set((k + 1) % n, k, Complex64::new(1.0, 0.0));
        }
        Ok(Self { n, lambda, phi, psi, clock, shift })
    }

    pub fn clock(&self) -> &CMat {
        &self.clock
    }

    pub fn shift(&self) -> &CMat {
        &self.shift
    }

    fn torus_gen(&self, g: u8) -> CMat {
        match g {
            0 => self.clock.clone(),
            1 => self.clock.adjoint(),
            2 => self.shift.clone(),
            3 => self.shift.adjoint(),
            _ => unreachable!("torus alphabet"),
        }
    }

    pub fn eval_phase(&self, c: &PhaseScalar) -> Complex64 {
        c.eval(self.lambda)
    }

    pub fn eval_trig(&self, c: &TrigCoeff) -> Complex64 {
        c.eval(self.phi, self.psi, self.lambda)
    }

    pub fn eval_torus_word(&self, w: &Word) -> CMat {
        let mut acc = CMat::identity(self.n);
        for &(g, p) in w.pairs() {
            acc = acc.mul(&self.torus_gen(g).pow(p));
        }
        acc
    }

    pub fn eval_torus_poly(&self, f: &NCPoly<TrigCoeff>) -> CMat {
        let mut acc = CMat::zero(self.n);
        for (w, c) in f.terms() {
            acc = acc.add(&self.eval_torus_word(w).scale(self.eval_trig(c)));
        }
        acc
    }

    /// Evaluates an unreduced term list over the torus alphabet; used to
    /// check that the representation annihilates the presentation relations.
    pub fn eval_torus_raw(&self, raw: &RawPoly) -> CMat {
        let mut acc = CMat::zero(self.n);
        for (c, w) in &raw.terms {
            acc = acc.add(&self.eval_torus_word(w).scale(self.eval_phase(c)));
        }
        acc
    }

    /// Numeric image of a γ-basis element under the concrete spin rep.
    pub fn gamma_numeric(&self, mask: u8) -> CMat {
        let rep = crate::clifford::spin_rep_m2();
        let mut acc = crate::clifford::ExactMat::identity(4);
        for i in 0..4 {
            if mask & (1 << i) != 0 {
                acc = acc.mul(&rep.gammas[i]);
            }
        }
        let mut out = CMat::zero(4);
        for i in 0..4 {
            for j in 0..4 {
                out.set(i, j, acc.at(i, j).to_complex());
            }
        }
        out
    }

    /// Spinor symbol as a (4N)×(4N) matrix: spin ⊗ torus.
    pub fn eval_spinor(&self, s: &SpinorSymbol) -> CMat {
        let mut acc = CMat::zero(4 * self.n);
        for (mask, f) in s.components() {
            acc = acc.add(&self.gamma_numeric(mask).kron(&self.eval_torus_poly(f)));
        }
        acc
    }

    /// 4×4 matrix of spinor symbols as a (16N)×(16N) matrix:
    /// matrix factor ⊗ spin ⊗ torus.
    pub fn eval_spinor_matrix(&self, m: &SpinorMatrix) -> CMat {
        let r = m.dim();
        let block = 4 * self.n;
        let mut out = CMat::zero(r * block);
        for i in 0..r {
            for j in 0..r {
                let b = self.eval_spinor(m.at(i, j));
                for bi in 0..block {
                    for bj in 0..block {
                        out.set(i * block + bi, j * block + bj, b.at(bi, bj));
                    }
                }
            }
        }
        out
    }

    /// Normalized partial trace over the matrix factor of a (16N)×(16N)
    /// matrix: (1/4) Σ diagonal (4N)×(4N) blocks.
    pub fn cond_expect_numeric(&self, x: &CMat) -> CMat {
        let block = 4 * self.n;
        let r = x.dim() / block;
        let mut acc = CMat::zero(block);
        for i in 0..r {
            for bi in 0..block {
                for bj in 0..block {
                    let v = acc.at(bi, bj) + x.at(i * block + bi, i * block + bj);
                    acc.set(bi, bj, v);
                }
            }
        }
        acc.scale(Complex64::new(1.0 / r as f64, 0.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn oracle() -> ClockShiftOracle {
        ClockShiftOracle::new(5, 1, 5, 0.7, 0.3).unwrap()
    }

    #[test]
    fn clock_shift_relation() {
        let o = oracle();
        let uv = o.clock().mul(o.shift());
        let vu = o.shift().mul(o.clock());
        assert!(uv.sub(&vu.scale(o.lambda)).max_abs() < 1e-12);
    }

    #[test]
    fn representation_annihilates_torus_relations() {
        let o = oracle();
        let torus = Presentation::torus_theta();
        for rel in torus.relations() {
            assert!(o.eval_torus_raw(rel).max_abs() < 1e-12);
        }
    }

    #[test]
    fn incompatible_modulus_rejected() {
        assert!(matches!(
            ClockShiftOracle::new(5, 1, 3, 0.0, 0.0),
            Err(OracleError::IncompatibleModulus(3, 5))
        ));
    }

    #[test]
    fn normal_form_respected_numerically() {
        use rand::{Rng, SeedableRng};
        let o = oracle();
        let torus = Presentation::torus_theta();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..40 {
            let len = rng.gen_range(0..6);
            let flat: Vec<u8> = (0..len).map(|_| rng.gen_range(0..4u8)).collect();
            let word = Word::from_flat(&flat);
            let direct = o.eval_torus_word(&word);
            let mut via_nf = CMat::zero(o.n);
            for (c, w) in torus.normal_form_terms(&flat) {
                via_nf = via_nf.add(&o.eval_torus_word(&w).scale(o.eval_phase(&c)));
            }
            assert!(direct.sub(&via_nf).max_abs() < 1e-10, "normal form changed the operator");
        }
    }
}
