//! Trigonometric coefficient ring for the 4-sphere parametrization: exact
//! polynomials in `s_φ, c_φ, s_ψ, c_ψ` over [`PhaseScalar`], with monomial
//! denominators restricted to `s_φ, c_φ, c_ψ`.
//!
//! Canonical form keeps cosine degrees ≤ 1 via `c² → 1 - s²` and cancels the
//! denominator whenever the numerator is divisible in the reduced ring.
//! Divisibility by a cosine is decided modulo the Pythagorean relation, so
//! `(1 - s_φ²) c_ψ / (c_φ c_ψ) = c_φ` cancels exactly.

use crate::scalar::PhaseScalar;
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::fmt;

/// Monomial exponents in the four trig symbols.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Default)]
pub struct TrigMono {
    pub s_phi: u32,
    pub c_phi: u32,
    pub s_psi: u32,
    pub c_psi: u32,
}

impl TrigMono {
    pub const ONE: TrigMono = TrigMono { s_phi: 0, c_phi: 0, s_psi: 0, c_psi: 0 };

    fn mul(&self, o: &TrigMono) -> TrigMono {
        TrigMono {
            s_phi: self.s_phi + o.s_phi,
            c_phi: self.c_phi + o.c_phi,
            s_psi: self.s_psi + o.s_psi,
            c_psi: self.c_psi + o.c_psi,
        }
    }

    fn is_one(&self) -> bool {
        *self == TrigMono::ONE
    }
}

impl fmt::Display for TrigMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut parts = Vec::new();
        for (name, e) in [
            ("s_φ", self.s_phi),
            ("c_φ", self.c_phi),
            ("s_ψ", self.s_psi),
            ("c_ψ", self.c_psi),
        ] {
            if e == 1 {
                parts.push(name.to_string());
            } else if e > 1 {
                parts.push(format!("{name}^{e}"));
            }
        }
        write!(f, "{}", parts.join("·"))
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Angle {
    Phi,
    Psi,
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
struct TrigPoly {
    terms: BTreeMap<TrigMono, PhaseScalar>,
}

impl TrigPoly {
    fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    fn constant(c: PhaseScalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(TrigMono::ONE, c);
        }
        Self { terms }
    }

    fn monomial(m: TrigMono, c: PhaseScalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert(&mut self, m: TrigMono, c: PhaseScalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(PhaseScalar::zero);
        *entry = entry.add(&c);
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.insert(*m, c.clone());
        }
        out
    }

    fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.insert(m1.mul(m2), c1.mul(c2));
            }
        }
        out
    }

    fn mul_mono(&self, m: &TrigMono) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            out.insert(m1.mul(m), c1.clone());
        }
        out
    }

    fn map_coeffs(&self, f: impl Fn(&PhaseScalar) -> PhaseScalar) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.insert(*m, f(c));
        }
        out
    }

    /// Pythagorean reduction `c² → 1 - s²` on both angles, to fixpoint.
    fn reduce(&self) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            // c^(2q+r) = (1 - s²)^q · c^r, expanded by binomials.
            let (q_phi, r_phi) = (m.c_phi / 2, m.c_phi % 2);
            let (q_psi, r_psi) = (m.c_psi / 2, m.c_psi % 2);
            for (dp, coef_p) in one_minus_s2_pow(q_phi) {
                for (dq, coef_q) in one_minus_s2_pow(q_psi) {
                    let mono = TrigMono {
                        s_phi: m.s_phi + dp,
                        c_phi: r_phi,
                        s_psi: m.s_psi + dq,
                        c_psi: r_psi,
                    };
                    let coef = c
                        .scale(&crate::scalar::GaussianRational::from_int(coef_p))
                        .scale(&crate::scalar::GaussianRational::from_int(coef_q));
                    out.insert(mono, coef);
                }
            }
        }
        out
    }

    fn angle_exp(m: &TrigMono, a: Angle, cosine: bool) -> u32 {
        match (a, cosine) {
            (Angle::Phi, false) => m.s_phi,
            (Angle::Phi, true) => m.c_phi,
            (Angle::Psi, false) => m.s_psi,
            (Angle::Psi, true) => m.c_psi,
        }
    }

    fn with_angle_exp(m: &TrigMono, a: Angle, cosine: bool, e: u32) -> TrigMono {
        let mut m = *m;
        match (a, cosine) {
            (Angle::Phi, false) => m.s_phi = e,
            (Angle::Phi, true) => m.c_phi = e,
            (Angle::Psi, false) => m.s_psi = e,
            (Angle::Psi, true) => m.c_psi = e,
        }
        m
    }

    /// Exact quotient by `1 - s²` in the given angle, treating the other
    /// symbols as coefficients. `None` when not divisible.
    fn div_one_minus_s2(&self, a: Angle) -> Option<Self> {
        let mut rem = self.clone();
        let mut quot = Self::zero();
        loop {
            let lead = rem
                .terms
                .iter()
                .filter(|(m, _)| Self::angle_exp(m, a, false) >= 2)
                .max_by_key(|(m, _)| Self::angle_exp(m, a, false))
                .map(|(m, c)| (*m, c.clone()));
            let Some((m, c)) = lead else { break };
            let d = Self::angle_exp(&m, a, false);
            let m_lower = Self::with_angle_exp(&m, a, false, d - 2);
            // q_term = -c s^{d-2}; rem -= q_term (1 - s²) removes the s^d term
            // and adds c s^{d-2}.
            quot.insert(m_lower, c.neg());
            rem.insert(m, c.neg());
            rem.insert(m_lower, c);
        }
        if rem.is_zero() {
            Some(quot)
        } else {
            None
        }
    }

    /// Exact quotient by a cosine in the reduced ring: split `p = p0 + p1 c`,
    /// then `p / c = p1 + (p0 / (1 - s²)) c`.
    fn div_cosine(&self, a: Angle) -> Option<Self> {
        let mut p0 = Self::zero();
        let mut p1 = Self::zero();
        for (m, c) in &self.terms {
            match Self::angle_exp(m, a, true) {
                0 => p0.insert(*m, c.clone()),
                1 => p1.insert(Self::with_angle_exp(m, a, true, 0), c.clone()),
                _ => return None, // not reduced; caller must reduce first
            }
        }
        let r = p0.div_one_minus_s2(a)?;
        let mut out = p1;
        for (m, c) in &r.terms {
            out.insert(Self::with_angle_exp(m, a, true, 1), c.clone());
        }
        Some(out)
    }

    /// Exact quotient by `s_φ` (termwise; sine powers are free).
    fn div_s_phi(&self) -> Option<Self> {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if m.s_phi == 0 {
                return None;
            }
            out.insert(TrigMono { s_phi: m.s_phi - 1, ..*m }, c.clone());
        }
        Some(out)
    }
}

/// Expansion of `(1 - s²)^q` as pairs (s-exponent, integer coefficient).
fn one_minus_s2_pow(q: u32) -> Vec<(u32, i64)> {
    let mut acc: Vec<(u32, i64)> = vec![(0, 1)];
    for _ in 0..q {
        let mut next: BTreeMap<u32, i64> = BTreeMap::new();
        for (e, c) in &acc {
            *next.entry(*e).or_insert(0) += c;
            *next.entry(*e + 2).or_insert(0) -= c;
        }
        acc = next.into_iter().filter(|(_, c)| *c != 0).collect();
    }
    acc
}

/// Fraction of a reduced trig polynomial over a monomial in `s_φ, c_φ, c_ψ`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TrigCoeff {
    num: TrigPoly,
    den: TrigMono,
}

impl Default for TrigCoeff {
    fn default() -> Self {
        Self::zero()
    }
}

impl TrigCoeff {
    pub fn zero() -> Self {
        Self { num: TrigPoly::zero(), den: TrigMono::ONE }
    }

    pub fn one() -> Self {
        Self::constant(PhaseScalar::one())
    }

    pub fn constant(c: PhaseScalar) -> Self {
        Self { num: TrigPoly::constant(c), den: TrigMono::ONE }.normalized()
    }

    pub fn monomial(m: TrigMono, c: PhaseScalar) -> Self {
        Self { num: TrigPoly::monomial(m, c), den: TrigMono::ONE }.normalized()
    }

    pub fn s_phi() -> Self {
        Self::monomial(TrigMono { s_phi: 1, ..TrigMono::ONE }, PhaseScalar::one())
    }

    pub fn c_phi() -> Self {
        Self::monomial(TrigMono { c_phi: 1, ..TrigMono::ONE }, PhaseScalar::one())
    }

    pub fn s_psi() -> Self {
        Self::monomial(TrigMono { s_psi: 1, ..TrigMono::ONE }, PhaseScalar::one())
    }

    pub fn c_psi() -> Self {
        Self::monomial(TrigMono { c_psi: 1, ..TrigMono::ONE }, PhaseScalar::one())
    }

    /// 1 / (s_φ^a c_φ^b c_ψ^c); the reciprocal monomials of the Dirac symbol.
    pub fn inv_mono(s_phi: u32, c_phi: u32, c_psi: u32) -> Self {
        Self {
            num: TrigPoly::constant(PhaseScalar::one()),
            den: TrigMono { s_phi, c_phi, s_psi: 0, c_psi },
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Denominator of the canonical form; `1` means polynomial.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn denominator(&self) -> TrigMono {
        self.den
    }

    /// When the value is a bare scalar (no trig symbols, denominator 1).
    pub fn as_scalar(&self) -> Option<PhaseScalar> {
        if !self.den.is_one() {
            return None;
        }
        if self.num.is_zero() {
            return Some(PhaseScalar::zero());
        }
        if self.num.terms.len() == 1 {
            if let Some(c) = self.num.terms.get(&TrigMono::ONE) {
                return Some(c.clone());
            }
        }
        None
    }

    fn normalized(mut self) -> Self {
        self.num = self.num.reduce();
        if self.num.is_zero() {
            self.den = TrigMono::ONE;
            return self;
        }
        // Cancel the denominator greedily, to fixpoint: cosine cancellation can
        // expose sine divisibility and vice versa.
        loop {
            let mut progress = false;
            while self.den.c_phi > 0 {
                match self.num.div_cosine(Angle::Phi) {
                    Some(q) => {
                        self.num = q;
                        self.den.c_phi -= 1;
                        progress = true;
                    }
                    None => break,
                }
            }
            while self.den.c_psi > 0 {
                match self.num.div_cosine(Angle::Psi) {
                    Some(q) => {
                        self.num = q;
                        self.den.c_psi -= 1;
                        progress = true;
                    }
                    None => break,
                }
            }
            while self.den.s_phi > 0 {
                match self.num.div_s_phi() {
                    Some(q) => {
                        self.num = q;
                        self.den.s_phi -= 1;
                        progress = true;
                    }
                    None => break,
                }
            }
            if !progress {
                break;
            }
        }
        self
    }

    pub fn add(&self, o: &Self) -> Self {
        // Common denominator = componentwise max; scale numerators up.
        let lcm = TrigMono {
            s_phi: self.den.s_phi.max(o.den.s_phi),
            c_phi: self.den.c_phi.max(o.den.c_phi),
            s_psi: 0,
            c_psi: self.den.c_psi.max(o.den.c_psi),
        };
        let scale_self = TrigMono {
            s_phi: lcm.s_phi - self.den.s_phi,
            c_phi: lcm.c_phi - self.den.c_phi,
            s_psi: 0,
            c_psi: lcm.c_psi - self.den.c_psi,
        };
        let scale_o = TrigMono {
            s_phi: lcm.s_phi - o.den.s_phi,
            c_phi: lcm.c_phi - o.den.c_phi,
            s_psi: 0,
            c_psi: lcm.c_psi - o.den.c_psi,
        };
        let num = self.num.mul_mono(&scale_self).add(&o.num.mul_mono(&scale_o));
        Self { num, den: lcm }.normalized()
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self { num: self.num.mul(&o.num), den: self.den.mul(&o.den) }.normalized()
    }

    pub fn neg(&self) -> Self {
        Self { num: self.num.map_coeffs(|c| c.neg()), den: self.den }
    }

    /// Conjugation: trig symbols are real, only scalars conjugate.
    pub fn conj(&self) -> Self {
        Self { num: self.num.map_coeffs(|c| c.conj()), den: self.den }
    }

    pub fn mul_lambda_pow(&self, k: i64) -> Self {
        Self { num: self.num.map_coeffs(|c| c.mul_lambda_pow(k)), den: self.den }
    }

    pub fn scale(&self, c: &PhaseScalar) -> Self {
        Self { num: self.num.map_coeffs(|v| v.mul(c)), den: self.den }.normalized()
    }

    /// d/dφ, defined on polynomial values only.
    pub fn d_phi(&self) -> Self {
        assert!(self.is_polynomial(), "derivative of a non-polynomial trig value");
        let mut out = TrigPoly::zero();
        for (m, c) in &self.num.terms {
            if m.s_phi > 0 {
                out.insert(
                    TrigMono { s_phi: m.s_phi - 1, c_phi: m.c_phi + 1, ..*m },
                    c.scale(&crate::scalar::GaussianRational::from_int(m.s_phi as i64)),
                );
            }
            if m.c_phi > 0 {
                out.insert(
                    TrigMono { s_phi: m.s_phi + 1, c_phi: m.c_phi - 1, ..*m },
                    c.scale(&crate::scalar::GaussianRational::from_int(-(m.c_phi as i64))),
                );
            }
        }
        Self { num: out, den: TrigMono::ONE }.normalized()
    }

    /// d/dψ, defined on polynomial values only.
    pub fn d_psi(&self) -> Self {
        assert!(self.is_polynomial(), "derivative of a non-polynomial trig value");
        let mut out = TrigPoly::zero();
        for (m, c) in &self.num.terms {
            if m.s_psi > 0 {
                out.insert(
                    TrigMono { s_psi: m.s_psi - 1, c_psi: m.c_psi + 1, ..*m },
                    c.scale(&crate::scalar::GaussianRational::from_int(m.s_psi as i64)),
                );
            }
            if m.c_psi > 0 {
                out.insert(
                    TrigMono { s_psi: m.s_psi + 1, c_psi: m.c_psi - 1, ..*m },
                    c.scale(&crate::scalar::GaussianRational::from_int(-(m.c_psi as i64))),
                );
            }
        }
        Self { num: out, den: TrigMono::ONE }.normalized()
    }

    pub fn specialize_lambda_one(&self) -> Self {
        Self {
            num: self.num.map_coeffs(|c| c.specialize_lambda_one()),
            den: self.den,
        }
        .normalized()
    }

    /// Numeric evaluation at angles (φ, ψ) and a numeric λ.
    pub fn eval(&self, phi: f64, psi: f64, lambda: Complex64) -> Complex64 {
        let ev = |m: &TrigMono| {
            phi.sin().powi(m.s_phi as i32)
                * phi.cos().powi(m.c_phi as i32)
                * psi.sin().powi(m.s_psi as i32)
                * psi.cos().powi(m.c_psi as i32)
        };
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.num.terms {
            acc += c.eval(lambda) * ev(m);
        }
        acc / ev(&self.den)
    }
}

impl fmt::Display for TrigCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num.is_zero() {
            return write!(f, "(0)");
        }
        // Terms print as `(coeff)·mono`; the scalar already carries parens.
        let mut parts = Vec::new();
        for (m, c) in &self.num.terms {
            if m.is_one() {
                parts.push(format!("{c}"));
            } else {
                parts.push(format!("{c}·{m}"));
            }
        }
        if self.den.is_one() {
            write!(f, "{}", parts.join(" + "))
        } else {
            write!(f, "[{}] / {}", parts.join(" + "), self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pythagorean_reduction() {
        // c_φ² → 1 - s_φ²
        let c2 = TrigCoeff::c_phi().mul(&TrigCoeff::c_phi());
        let expected = TrigCoeff::one().sub(&TrigCoeff::s_phi().mul(&TrigCoeff::s_phi()));
        assert_eq!(c2, expected);
    }

    #[test]
    fn cubed_cosine_reduces() {
        // c_ψ³ → c_ψ - s_ψ² c_ψ
        let c = TrigCoeff::c_psi();
        let c3 = c.mul(&c).mul(&c);
        let s = TrigCoeff::s_psi();
        let expected = c.sub(&s.mul(&s).mul(&c));
        assert_eq!(c3, expected);
    }

    #[test]
    fn monomial_cancellation() {
        // (c_φ s_φ) / c_φ = s_φ
        let x = TrigCoeff::c_phi().mul(&TrigCoeff::s_phi()).mul(&TrigCoeff::inv_mono(0, 1, 0));
        assert_eq!(x, TrigCoeff::s_phi());
        assert!(x.is_polynomial());
    }

    #[test]
    fn reduced_ring_cancellation() {
        // c_φ² c_ψ reduces to (1 - s_φ²) c_ψ, which must still cancel a c_φ
        // denominator: c_φ² c_ψ / (c_φ c_ψ) = c_φ.
        let num = TrigCoeff::c_phi().mul(&TrigCoeff::c_phi()).mul(&TrigCoeff::c_psi());
        let x = num.mul(&TrigCoeff::inv_mono(0, 1, 1));
        assert_eq!(x, TrigCoeff::c_phi());
    }

    #[test]
    fn derivative_rules() {
        // d/dφ (s_φ c_φ) = c_φ² - s_φ² = 1 - 2 s_φ²
        let x = TrigCoeff::s_phi().mul(&TrigCoeff::c_phi());
        let two = PhaseScalar::from_int(2);
        let expected =
            TrigCoeff::one().sub(&TrigCoeff::s_phi().mul(&TrigCoeff::s_phi()).scale(&two));
        assert_eq!(x.d_phi(), expected);
    }

    #[test]
    fn partial_denominator_remains() {
        // s_ψ / c_ψ does not cancel and is flagged non-polynomial.
        let x = TrigCoeff::s_psi().mul(&TrigCoeff::inv_mono(0, 0, 1));
        assert!(!x.is_polynomial());
    }

    #[test]
    fn numeric_eval_matches_fraction() {
        let x = TrigCoeff::c_phi()
            .mul(&TrigCoeff::c_phi())
            .mul(&TrigCoeff::c_psi())
            .mul(&TrigCoeff::inv_mono(0, 1, 1));
        let lambda = Complex64::new(1.0, 0.0);
        let v = x.eval(0.7, 0.3, lambda);
        assert!((v - Complex64::new(0.7f64.cos(), 0.0)).norm() < 1e-12);
    }
}
