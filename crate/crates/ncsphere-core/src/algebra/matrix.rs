//! Square matrices with polynomial entries.

use super::poly::{Coeff, NCPoly};
use super::presentation::Presentation;
use super::AlgebraError;
use crate::scalar::PhaseScalar;

#[derive(Clone, PartialEq, Debug)]
pub struct AlgMatrix<C: Coeff = PhaseScalar> {
    r: usize,
    entries: Vec<NCPoly<C>>,
}

impl<C: Coeff> AlgMatrix<C> {
    pub fn from_entries(r: usize, entries: Vec<NCPoly<C>>) -> Result<Self, AlgebraError> {
        if entries.len() != r * r {
            return Err(AlgebraError::Shape(format!(
                "expected {}x{} = {} entries, got {}",
                r,
                r,
                r * r,
                entries.len()
            )));
        }
        Ok(Self { r, entries })
    }

    pub fn zero(r: usize, p: &Presentation) -> Self {
        Self { r, entries: vec![NCPoly::zero(p); r * r] }
    }

    pub fn identity(r: usize, p: &Presentation) -> Self {
        let mut m = Self::zero(r, p);
        for i in 0..r {
            *m.at_mut(i, i) = NCPoly::one(p);
        }
        m
    }

    pub fn scalar(r: usize, p: &Presentation, c: C) -> Self {
        let mut m = Self::zero(r, p);
        for i in 0..r {
            *m.at_mut(i, i) = NCPoly::constant(p, c.clone());
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.r
    }

    pub fn at(&self, i: usize, j: usize) -> &NCPoly<C> {
        &self.entries[i * self.r + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut NCPoly<C> {
        &mut self.entries[i * self.r + j]
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.r, o.r);
        let entries =
            self.entries.iter().zip(&o.entries).map(|(a, b)| a.add(b)).collect();
        Self { r: self.r, entries }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!(self.r, o.r);
        let entries =
            self.entries.iter().zip(&o.entries).map(|(a, b)| a.sub(b)).collect();
        Self { r: self.r, entries }
    }

    pub fn neg(&self) -> Self {
        Self { r: self.r, entries: self.entries.iter().map(|a| a.neg()).collect() }
    }

    pub fn mul(&self, o: &Self, p: &Presentation) -> Result<Self, AlgebraError> {
        assert_eq!(self.r, o.r);
        let mut out = Self::zero(self.r, p);
        for i in 0..self.r {
            for j in 0..self.r {
                let mut acc = NCPoly::zero(p);
                for k in 0..self.r {
                    acc = acc.add(&self.at(i, k).mul(o.at(k, j), p)?);
                }
                *out.at_mut(i, j) = acc;
            }
        }
        Ok(out)
    }

    /// Conjugate transpose through the algebra involution.
    pub fn adjoint(&self, p: &Presentation) -> Self {
        let mut out = Self { r: self.r, entries: self.entries.clone() };
        for i in 0..self.r {
            for j in 0..self.r {
                *out.at_mut(i, j) = self.at(j, i).adjoint(p);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn map(&self, f: impl Fn(&NCPoly<C>) -> NCPoly<C>) -> Self {
        Self { r: self.r, entries: self.entries.iter().map(&f).collect() }
    }

    /// Sum of the diagonal entries.
    pub fn trace(&self, p: &Presentation) -> NCPoly<C> {
        let mut acc = NCPoly::zero(p);
        for i in 0..self.r {
            acc = acc.add(self.at(i, i));
        }
        acc
    }
}
