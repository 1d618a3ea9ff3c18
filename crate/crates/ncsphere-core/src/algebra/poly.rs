//! Noncommutative polynomials: maps from normal-form words to coefficients.

use super::presentation::{PresKind, Presentation, RawPoly};
use super::word::Word;
use super::AlgebraError;
use crate::scalar::PhaseScalar;
use crate::trig::TrigCoeff;
use std::collections::BTreeMap;
use std::fmt;

/// Coefficient ring of a polynomial: the phase ring itself, or trig fractions
/// over it. λ-powers produced by exchange rewrites act through
/// [`Coeff::mul_lambda_pow`].
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn conj(&self) -> Self;
    fn mul_lambda_pow(&self, k: i64) -> Self;
    fn from_phase(c: &PhaseScalar) -> Self;
    /// `Some` only when the ground ring is the scalar phase ring.
    fn to_phase(&self) -> Option<PhaseScalar>;
    fn specialize_lambda_one(&self) -> Self;
    /// Self-contained factor strings for the dump grammar; phase scalars
    /// split one piece per λ-power so every printed piece is `(a/b + c/d i) λ^k`.
    fn dump_pieces(&self) -> Vec<String> {
        vec![format!("{self}")]
    }
}

impl Coeff for PhaseScalar {
    fn zero() -> Self {
        PhaseScalar::zero()
    }
    fn one() -> Self {
        PhaseScalar::one()
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
    fn mul_lambda_pow(&self, k: i64) -> Self {
        PhaseScalar::mul_lambda_pow(self, k)
    }
    fn from_phase(c: &PhaseScalar) -> Self {
        c.clone()
    }
    fn to_phase(&self) -> Option<PhaseScalar> {
        Some(self.clone())
    }
    fn specialize_lambda_one(&self) -> Self {
        PhaseScalar::specialize_lambda_one(self)
    }
    fn dump_pieces(&self) -> Vec<String> {
        self.terms()
            .map(|(k, c)| if k == 0 { format!("({c})") } else { format!("({c}) λ^{k}") })
            .collect()
    }
}

impl Coeff for TrigCoeff {
    fn zero() -> Self {
        TrigCoeff::zero()
    }
    fn one() -> Self {
        TrigCoeff::one()
    }
    fn is_zero(&self) -> bool {
        TrigCoeff::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        TrigCoeff::add(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        TrigCoeff::mul(self, o)
    }
    fn neg(&self) -> Self {
        TrigCoeff::neg(self)
    }
    fn conj(&self) -> Self {
        TrigCoeff::conj(self)
    }
    fn mul_lambda_pow(&self, k: i64) -> Self {
        TrigCoeff::mul_lambda_pow(self, k)
    }
    fn from_phase(c: &PhaseScalar) -> Self {
        TrigCoeff::constant(c.clone())
    }
    fn to_phase(&self) -> Option<PhaseScalar> {
        None
    }
    fn specialize_lambda_one(&self) -> Self {
        TrigCoeff::specialize_lambda_one(self)
    }
}

/// Polynomial over a presentation: all stored words are in normal form, no
/// zero coefficients are stored, so equality is map equality.
#[derive(Clone, PartialEq, Debug)]
pub struct NCPoly<C: Coeff = PhaseScalar> {
    pres: super::presentation::PresId,
    terms: BTreeMap<Word, C>,
}

impl<C: Coeff> NCPoly<C> {
    pub fn zero(p: &Presentation) -> Self {
        Self { pres: p.id(), terms: BTreeMap::new() }
    }

    pub fn one(p: &Presentation) -> Self {
        Self::constant(p, C::one())
    }

    pub fn constant(p: &Presentation, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Word::one(), c);
        }
        Self { pres: p.id(), terms }
    }

    pub fn generator(p: &Presentation, g: super::word::GenIdx) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Word::generator(g), C::one());
        Self { pres: p.id(), terms }
    }

    /// Normal-forms a raw word and scales by a coefficient.
    pub fn from_word(p: &Presentation, w: &Word, c: C) -> Self {
        let mut out = Self::zero(p);
        if c.is_zero() {
            return out;
        }
        match p.kind() {
            PresKind::Confluent => {
                for (phase, nw) in p.normal_form_terms(&w.flatten()) {
                    out.insert(nw, c.mul(&C::from_phase(&phase)));
                }
            }
            PresKind::Relational => out.insert(w.clone(), c),
        }
        out
    }

    pub fn pres(&self) -> super::presentation::PresId {
        self.pres
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &C)> {
        self.terms.iter()
    }

    pub fn coeff_of(&self, w: &Word) -> C {
        self.terms.get(w).cloned().unwrap_or_else(C::zero)
    }

    pub fn insert(&mut self, w: Word, c: C) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w.clone()).or_insert_with(C::zero);
        *entry = entry.add(&c);
        if entry.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        debug_assert_eq!(self.pres, o.pres);
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.insert(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            pres: self.pres,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self { pres: self.pres, terms: BTreeMap::new() };
        for (w, v) in &self.terms {
            out.insert(w.clone(), v.mul(c));
        }
        out
    }

    pub fn scale_phase(&self, c: &PhaseScalar) -> Self {
        self.scale(&C::from_phase(c))
    }

    pub fn map_coeffs(&self, f: impl Fn(&C) -> C) -> Self {
        let mut out = Self { pres: self.pres, terms: BTreeMap::new() };
        for (w, v) in &self.terms {
            out.insert(w.clone(), f(v));
        }
        out
    }

    /// Word-aware coefficient map; words are left untouched (derivations that
    /// scale monomials by their degree).
    pub fn map_terms(&self, f: impl Fn(&Word, &C) -> C) -> Self {
        let mut out = Self { pres: self.pres, terms: BTreeMap::new() };
        for (w, v) in &self.terms {
            out.insert(w.clone(), f(w, v));
        }
        out
    }

    pub fn specialize_lambda_one(&self) -> Self {
        self.map_coeffs(|c| c.specialize_lambda_one())
    }

    pub fn mul(&self, o: &Self, p: &Presentation) -> Result<Self, AlgebraError> {
        if self.pres != o.pres || self.pres != p.id() {
            return Err(AlgebraError::PresentationMismatch(
                self.pres.to_string(),
                o.pres.to_string(),
            ));
        }
        let mut out = Self::zero(p);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &o.terms {
                let c = c1.mul(c2);
                let prod = w1.concat(w2);
                out = out.add(&Self::from_word(p, &prod, c));
            }
        }
        Ok(out)
    }

    /// Antilinear involution: reverses words, maps each generator to its
    /// adjoint partner, conjugates coefficients, renormalizes.
    pub fn adjoint(&self, p: &Presentation) -> Self {
        let mut out = Self::zero(p);
        for (w, c) in &self.terms {
            let rw = w.reverse_map(|g| p.adjoint_gen(g));
            out = out.add(&Self::from_word(p, &rw, c.conj()));
        }
        out
    }

    /// Power via repeated multiplication.
    pub fn pow(&self, n: u32, p: &Presentation) -> Result<Self, AlgebraError> {
        let mut acc = Self::one(p);
        for _ in 0..n {
            acc = acc.mul(self, p)?;
        }
        Ok(acc)
    }

    /// Representative of the class in the quotient by scalars: subtracts the
    /// unit-word component.
    pub fn reduce_mod_scalars(&self) -> Self {
        let mut out = self.clone();
        out.terms.remove(&Word::one());
        out
    }
}

impl NCPoly<PhaseScalar> {
    /// Normal-forms a raw term list (used for presentation relations, which
    /// are stored unreduced).
    pub fn from_raw(p: &Presentation, raw: &RawPoly) -> NCPoly<PhaseScalar> {
        let mut out = NCPoly::<PhaseScalar>::zero(p);
        for (c, w) in &raw.terms {
            out = out.add(&NCPoly::from_word(p, w, c.clone()));
        }
        out
    }
}

/// Unique normal form of a word under a confluent presentation.
pub fn normal_form(w: &Word, p: &Presentation) -> Result<NCPoly<PhaseScalar>, AlgebraError> {
    p.check_word(w)?;
    if p.kind() != PresKind::Confluent {
        return Err(AlgebraError::UnsupportedKind(p.id().to_string()));
    }
    Ok(NCPoly::from_word(p, w, PhaseScalar::one()))
}

/// Product in the algebra; both operands must be normalized over `p`.
pub fn nc_mul<C: Coeff>(
    a: &NCPoly<C>,
    b: &NCPoly<C>,
    p: &Presentation,
) -> Result<NCPoly<C>, AlgebraError> {
    a.mul(b, p)
}

/// The involution `x ↦ x*`.
pub fn nc_adjoint<C: Coeff>(a: &NCPoly<C>, p: &Presentation) -> NCPoly<C> {
    a.adjoint(p)
}

/// Coefficient of the empty word. Errors for trig-valued coefficients, where
/// "scalar" has no meaning.
pub fn scalar_part<C: Coeff>(a: &NCPoly<C>) -> Result<PhaseScalar, AlgebraError> {
    match a.coeff_of(&Word::one()).to_phase() {
        Some(c) => Ok(c),
        None => Err(AlgebraError::TrigScalarPart),
    }
}

impl<C: Coeff> fmt::Display for NCPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::dump::fmt_poly(self, f)
    }
}
