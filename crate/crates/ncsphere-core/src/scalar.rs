//! Exact ground arithmetic: Gaussian rationals `a + b·i` and the phase ring
//! of Laurent polynomials in a formal unit-modulus scalar λ.
//!
//! λ is never a float. Conjugation acts by `λ^k ↦ λ^{-k}` and `i ↦ -i`,
//! which is exactly the involution of a modulus-one phase, so identities
//! verified here hold for every unit-modulus specialization of λ.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Exact element of Q(i).
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn zero() -> Self {
        Self { re: BigRational::zero(), im: BigRational::zero() }
    }

    pub fn one() -> Self {
        Self { re: BigRational::one(), im: BigRational::zero() }
    }

    pub fn i() -> Self {
        Self { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Self { re: BigRational::from_integer(BigInt::from(n)), im: BigRational::zero() }
    }

    /// `n/d`, exact. Panics on `d = 0`.
    pub fn from_ratio(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        Self {
            re: BigRational::new(BigInt::from(n), BigInt::from(d)),
            im: BigRational::zero(),
        }
    }

    /// `n/d · i`, exact.
    pub fn from_ratio_im(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        Self {
            re: BigRational::zero(),
            im: BigRational::new(BigInt::from(n), BigInt::from(d)),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { re: &self.re + &other.re, im: &self.im + &other.im }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self { re: &self.re - &other.re, im: &self.im - &other.im }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            re: &self.re * &other.re - &self.im * &other.im,
            im: &self.re * &other.im + &self.im * &other.re,
        }
    }

    pub fn neg(&self) -> Self {
        Self { re: -self.re.clone(), im: -self.im.clone() }
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -self.im.clone() }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Self {
        let norm = &self.re * &self.re + &self.im * &self.im;
        assert!(!norm.is_zero(), "inverse of zero");
        Self { re: &self.re / &norm, im: -(&self.im / &norm) }
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().expect("rational out of f64 range"),
            self.im.to_f64().expect("rational out of f64 range"),
        )
    }
}

fn fmt_rational(r: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            fmt_rational(&self.re, f)
        } else if self.im.is_negative() {
            fmt_rational(&self.re, f)?;
            write!(f, " - ")?;
            fmt_rational(&(-self.im.clone()), f)?;
            write!(f, " i")
        } else {
            fmt_rational(&self.re, f)?;
            write!(f, " + ")?;
            fmt_rational(&self.im, f)?;
            write!(f, " i")
        }
    }
}

/// Laurent polynomial in λ over Q(i): the coefficient ring of every symbolic
/// computation. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct PhaseScalar {
    terms: BTreeMap<i64, GaussianRational>,
}

impl PhaseScalar {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::from_gaussian(GaussianRational::one())
    }

    pub fn i() -> Self {
        Self::from_gaussian(GaussianRational::i())
    }

    pub fn from_gaussian(c: GaussianRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(0, c);
        }
        Self { terms }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_gaussian(GaussianRational::from_int(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_gaussian(GaussianRational::from_ratio(n, d))
    }

    /// λ^k.
    pub fn lambda_pow(k: i64) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(k, GaussianRational::one());
        Self { terms }
    }

    pub fn term(k: i64, c: GaussianRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.get(&0).map_or(false, |c| *c == GaussianRational::one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &GaussianRational)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            let entry = terms.entry(*k).or_insert_with(GaussianRational::zero);
            *entry = entry.add(c);
            if entry.is_zero() {
                terms.remove(k);
            }
        }
        Self { terms }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms: BTreeMap<i64, GaussianRational> = BTreeMap::new();
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                let k = k1 + k2;
                let p = c1.mul(c2);
                let entry = terms.entry(k).or_insert_with(GaussianRational::zero);
                *entry = entry.add(&p);
                if entry.is_zero() {
                    terms.remove(&k);
                }
            }
        }
        Self { terms }
    }

    pub fn neg(&self) -> Self {
        Self { terms: self.terms.iter().map(|(k, c)| (*k, c.neg())).collect() }
    }

    /// Involution: λ^k ↦ λ^{-k}, i ↦ -i.
    pub fn conj(&self) -> Self {
        Self { terms: self.terms.iter().map(|(k, c)| (-*k, c.conj())).collect() }
    }

    /// Multiply by λ^k (exchange-phase accumulation).
    pub fn mul_lambda_pow(&self, k: i64) -> Self {
        if k == 0 {
            return self.clone();
        }
        Self { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(k, v)| (*k, v.mul(c))).collect() }
    }

    /// Inverse when the scalar is a single Laurent term c·λ^k; `None` otherwise.
    pub fn try_invert(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (k, c) = self.terms.iter().next().unwrap();
        Some(Self::term(-*k, c.inv()))
    }

    /// Substitute λ := 1 (the commutative limit), collapsing all exponents.
    pub fn specialize_lambda_one(&self) -> Self {
        let mut acc = GaussianRational::zero();
        for c in self.terms.values() {
            acc = acc.add(c);
        }
        Self::from_gaussian(acc)
    }

    /// Substitute λ := a fixed Gaussian-rational unit (1, -1, i or -i).
    pub fn specialize_lambda(&self, lambda: &GaussianRational) -> Self {
        let mut acc = GaussianRational::zero();
        for (k, c) in &self.terms {
            acc = acc.add(&c.mul(&gaussian_unit_pow(lambda, *k)));
        }
        Self::from_gaussian(acc)
    }

    /// Numeric evaluation at λ = given complex value.
    pub fn eval(&self, lambda: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in &self.terms {
            acc += c.to_complex() * lambda.powi(*k as i32);
        }
        acc
    }

    /// The coefficient of λ^0 if that is the only term, or zero/None semantics
    /// for diagnostics: returns Some iff the scalar is λ-free.
    pub fn as_lambda_free(&self) -> Option<GaussianRational> {
        if self.terms.is_empty() {
            return Some(GaussianRational::zero());
        }
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&0) {
                return Some(c.clone());
            }
        }
        None
    }
}

fn gaussian_unit_pow(base: &GaussianRational, k: i64) -> GaussianRational {
    // Unit-modulus bases only; negative powers via conjugation.
    let mut acc = GaussianRational::one();
    let b = if k >= 0 { base.clone() } else { base.conj() };
    for _ in 0..k.unsigned_abs() {
        acc = acc.mul(&b);
    }
    acc
}

// Dump grammar form: `(a/b + c/d i) λ^k`, λ^0 omitted, terms joined by ` + `.
impl fmt::Display for PhaseScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "(0)");
        }
        let mut first = true;
        for (k, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            if *k != 0 {
                write!(f, " λ^{k}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conj_is_involution() {
        let x = PhaseScalar::term(3, GaussianRational::from_ratio(2, 5))
            .add(&PhaseScalar::term(-1, GaussianRational::i()));
        assert_eq!(x.conj().conj(), x);
    }

    #[test]
    fn lambda_times_inverse_is_one() {
        let x = PhaseScalar::lambda_pow(4).scale(&GaussianRational::from_ratio(3, 7));
        let y = x.try_invert().unwrap();
        assert!(x.mul(&y).is_one());
    }

    #[test]
    fn mul_commutative_distributive() {
        let a = PhaseScalar::term(1, GaussianRational::from_ratio(1, 2));
        let b = PhaseScalar::term(-2, GaussianRational::i());
        let c = PhaseScalar::from_int(3);
        assert_eq!(a.mul(&b), b.mul(&a));
        assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn specialize_lambda_one_collapses() {
        let x = PhaseScalar::lambda_pow(2).add(&PhaseScalar::lambda_pow(-2).neg());
        assert!(x.specialize_lambda_one().is_zero());
    }

    #[test]
    fn specialize_lambda_i() {
        // λ = i: λ^2 + 1 = 0 after substitution? i^2 = -1, so λ^2 + 1 = 0.
        let x = PhaseScalar::lambda_pow(2).add(&PhaseScalar::one());
        assert!(x.specialize_lambda(&GaussianRational::i()).is_zero());
    }
}
