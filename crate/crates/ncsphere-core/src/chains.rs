//! Normalized (b,B) bicomplex over a presented algebra: Hochschild boundary,
//! the cyclic B operator, and even/odd Chern characters of idempotents and
//! unitaries.
//!
//! Chains are stored fully expanded over monomial tensors. Entries in
//! positions ≥ 1 are classes modulo scalars, so unit words there vanish and
//! equality of canonical forms is decidable. Vanishing statements are checked
//! at the chain level, with no passage to cohomology.

use crate::algebra::{AlgMatrix, AlgebraError, NCPoly, PresId, Presentation, Word};
use crate::scalar::{GaussianRational, PhaseScalar};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ChainError {
    #[error("chain/presentation mismatch: {0} vs {1}")]
    PresentationMismatch(PresId, PresId),
    #[error("matrix is not square")]
    NonSquare,
    #[error("unitarity unverified: {0}")]
    UnverifiedUnitarity(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("chain parse error on line {0}: {1}")]
    Parse(usize, String),
}

/// Element of the normalized complex `A ⊗ Ā^{⊗n}` in canonical monomial form.
#[derive(Clone, PartialEq, Debug)]
pub struct TensorChain {
    pres: PresId,
    degree: usize,
    terms: BTreeMap<Vec<Word>, PhaseScalar>,
}

impl TensorChain {
    pub fn zero(p: &Presentation, degree: usize) -> Self {
        Self { pres: p.id(), degree, terms: BTreeMap::new() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn pres(&self) -> PresId {
        self.pres
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Word>, &PhaseScalar)> {
        self.terms.iter()
    }

    /// Inserts a monomial tensor; unit words in positions ≥ 1 kill the term.
    pub fn insert(&mut self, entries: Vec<Word>, coeff: PhaseScalar) {
        debug_assert_eq!(entries.len(), self.degree + 1);
        if coeff.is_zero() {
            return;
        }
        if entries.iter().skip(1).any(Word::is_one) {
            return;
        }
        let slot = self.terms.entry(entries.clone()).or_insert_with(PhaseScalar::zero);
        *slot = slot.add(&coeff);
        if slot.is_zero() {
            self.terms.remove(&entries);
        }
    }

    /// Multilinear expansion of a tensor of polynomials into monomial terms.
    pub fn add_poly_tensor(&mut self, coeff: &PhaseScalar, entries: &[NCPoly]) {
        debug_assert_eq!(entries.len(), self.degree + 1);
        fn rec(
            chain: &mut TensorChain,
            entries: &[NCPoly],
            pos: usize,
            acc: &mut Vec<Word>,
            coeff: PhaseScalar,
        ) {
            if coeff.is_zero() {
                return;
            }
            if pos == entries.len() {
                chain.insert(acc.clone(), coeff);
                return;
            }
            for (w, c) in entries[pos].terms() {
                if pos >= 1 && w.is_one() {
                    continue; // class modulo scalars
                }
                acc.push(w.clone());
                rec(chain, entries, pos + 1, acc, coeff.mul(c));
                acc.pop();
            }
        }
        let mut acc = Vec::with_capacity(entries.len());
        rec(self, entries, 0, &mut acc, coeff.clone());
    }

    pub fn from_poly_tensor(p: &Presentation, coeff: &PhaseScalar, entries: &[NCPoly]) -> Self {
        let mut chain = Self::zero(p, entries.len() - 1);
        chain.add_poly_tensor(coeff, entries);
        chain
    }

    pub fn add(&self, o: &Self) -> Self {
        debug_assert_eq!(self.degree, o.degree);
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.insert(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&PhaseScalar::from_int(-1)))
    }

    pub fn scale(&self, c: &PhaseScalar) -> Self {
        let mut out = Self { pres: self.pres, degree: self.degree, terms: BTreeMap::new() };
        for (k, v) in &self.terms {
            out.insert(k.clone(), v.mul(c));
        }
        out
    }

    pub fn specialize_lambda_one(&self) -> Self {
        let mut out = Self { pres: self.pres, degree: self.degree, terms: BTreeMap::new() };
        for (k, v) in &self.terms {
            out.insert(k.clone(), v.specialize_lambda_one());
        }
        out
    }

    /// Chain dump: one line per term, `coef · [entry0 | entry1 | ...]`,
    /// canonical order.
    pub fn dump(&self, p: &Presentation) -> String {
        let mut out = String::new();
        for (entries, coeff) in &self.terms {
            for piece in crate::algebra::Coeff::dump_pieces(coeff) {
                let mut line = String::new();
                write!(line, "{piece} · [").unwrap();
                for (i, w) in entries.iter().enumerate() {
                    if i > 0 {
                        write!(line, " | ").unwrap();
                    }
                    write!(line, "{}", crate::algebra::word_to_string(w, p)).unwrap();
                }
                write!(line, "]").unwrap();
                out.push_str(&line);
                out.push('\n');
            }
        }
        out
    }

    /// Parses a chain dump produced by [`TensorChain::dump`].
    pub fn parse(s: &str, p: &Presentation, degree: usize) -> Result<Self, ChainError> {
        let mut chain = Self::zero(p, degree);
        for (lineno, line) in s.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let (coef_str, rest) = line
                .split_once(" · [")
                .ok_or_else(|| ChainError::Parse(lineno + 1, "missing ` · [`".into()))?;
            let rest = rest
                .strip_suffix(']')
                .ok_or_else(|| ChainError::Parse(lineno + 1, "missing `]`".into()))?;
            let coeff_poly = crate::algebra::parse_poly(coef_str, p)
                .map_err(|e| ChainError::Parse(lineno + 1, e.to_string()))?;
            let coeff = crate::algebra::scalar_part(&coeff_poly)
                .map_err(|e| ChainError::Parse(lineno + 1, e.to_string()))?;
            let entries: Result<Vec<Word>, _> = rest
                .split(" | ")
                .map(|w| crate::algebra::parse_word(w.trim(), p))
                .collect();
            let entries = entries.map_err(|e| ChainError::Parse(lineno + 1, e.to_string()))?;
            if entries.len() != degree + 1 {
                return Err(ChainError::Parse(lineno + 1, "wrong tensor length".into()));
            }
            chain.insert(entries, coeff);
        }
        Ok(chain)
    }
}

fn word_poly(p: &Presentation, w: &Word) -> NCPoly {
    NCPoly::from_word(p, w, PhaseScalar::one())
}

/// Hochschild boundary on the normalized complex:
/// `b(a₀⊗…⊗a_n) = Σ_{i<n} (-1)^i a₀⊗…⊗(a_i a_{i+1})⊗…⊗a_n
///              + (-1)^n (a_n a₀)⊗a₁⊗…⊗a_{n-1}`.
pub fn boundary_b(c: &TensorChain, p: &Presentation) -> Result<TensorChain, ChainError> {
    let (chain, _) = boundary_b_counting(c, p)?;
    Ok(chain)
}

/// Same as [`boundary_b`], also reporting the number of monomial terms
/// produced before cancellation.
pub fn boundary_b_counting(
    c: &TensorChain,
    p: &Presentation,
) -> Result<(TensorChain, usize), ChainError> {
    if c.pres != p.id() {
        return Err(ChainError::PresentationMismatch(c.pres, p.id()));
    }
    let n = c.degree;
    if n == 0 {
        return Ok((TensorChain::zero(p, 0), 0));
    }
    let mut out = TensorChain::zero(p, n - 1);
    let mut produced = 0usize;
    for (entries, coeff) in &c.terms {
        for i in 0..n {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            let merged = word_poly(p, &entries[i]).mul(&word_poly(p, &entries[i + 1]), p)?;
            for (w, mc) in merged.terms() {
                produced += 1;
                if i >= 1 && w.is_one() {
                    continue; // killed by normalization
                }
                let mut new_entries = Vec::with_capacity(n);
                new_entries.extend_from_slice(&entries[..i]);
                new_entries.push(w.clone());
                new_entries.extend_from_slice(&entries[i + 2..]);
                out.insert(new_entries, coeff.mul(mc).scale(&GaussianRational::from_int(sign)));
            }
        }
        // Wrap-around face (a_n a₀) ⊗ a₁ ⊗ … ⊗ a_{n-1}.
        let sign = if n % 2 == 0 { 1 } else { -1 };
        let merged = word_poly(p, &entries[n]).mul(&word_poly(p, &entries[0]), p)?;
        for (w, mc) in merged.terms() {
            produced += 1;
            let mut new_entries = Vec::with_capacity(n);
            new_entries.push(w.clone());
            new_entries.extend_from_slice(&entries[1..n]);
            out.insert(new_entries, coeff.mul(mc).scale(&GaussianRational::from_int(sign)));
        }
    }
    Ok((out, produced))
}

/// Normalized Connes operator:
/// `B(a₀⊗…⊗a_n) = Σ_{i=0}^{n} (-1)^{ni} 1⊗a_i⊗…⊗a_n⊗a₀⊗…⊗a_{i-1}`.
pub fn operator_big_b(c: &TensorChain, p: &Presentation) -> Result<TensorChain, ChainError> {
    if c.pres != p.id() {
        return Err(ChainError::PresentationMismatch(c.pres, p.id()));
    }
    let n = c.degree;
    let mut out = TensorChain::zero(p, n + 1);
    for (entries, coeff) in &c.terms {
        for i in 0..=n {
            let sign = if (n * i) % 2 == 0 { 1 } else { -1 };
            let mut new_entries = Vec::with_capacity(n + 2);
            new_entries.push(Word::one());
            new_entries.extend_from_slice(&entries[i..]);
            new_entries.extend_from_slice(&entries[..i]);
            out.insert(new_entries, coeff.scale(&GaussianRational::from_int(sign)));
        }
    }
    Ok(out)
}

/// Even normalization constant λ_n = (-1)^n (2n)!/n!.
pub fn lambda_even(n: usize) -> PhaseScalar {
    let mut num: i64 = 1;
    for k in (n + 1)..=(2 * n) {
        num *= k as i64;
    }
    if n % 2 == 1 {
        num = -num;
    }
    PhaseScalar::from_int(num)
}

/// Even Chern component
/// `ch_n(e) = λ_n Σ (e_{i₀i₁} - ½δ) ⊗ ẽ_{i₁i₂} ⊗ … ⊗ ẽ_{i_{2n}i₀}`, degree 2n.
pub fn ch_even(
    e: &AlgMatrix<PhaseScalar>,
    n: usize,
    p: &Presentation,
) -> Result<TensorChain, ChainError> {
    let r = e.dim();
    let lambda_n = lambda_even(n);
    let half = NCPoly::constant(p, PhaseScalar::from_ratio(1, 2));
    let mut chain = TensorChain::zero(p, 2 * n);
    let len = 2 * n + 1;
    let mut idx = vec![0usize; len];
    loop {
        let mut entries = Vec::with_capacity(len);
        for k in 0..len {
            let next = idx[(k + 1) % len];
            let mut entry = e.at(idx[k], next).clone();
            if k == 0 && idx[0] == next {
                entry = entry.sub(&half);
            }
            entries.push(entry);
        }
        chain.add_poly_tensor(&lambda_n, &entries);

        let mut k = 0;
        loop {
            idx[k] += 1;
            if idx[k] < r {
                break;
            }
            idx[k] = 0;
            k += 1;
            if k == len {
                return Ok(chain);
            }
        }
    }
}

/// Odd Chern component of a unitary, degree 2n-1:
/// `ch_{n-1/2}(u) = Σ u_{i₀i₁} ⊗ u*_{i₁i₂} ⊗ … ⊗ u*_{i_{2n-1}i₀}
///               - Σ u*_{i₀i₁} ⊗ u_{i₁i₂} ⊗ … ⊗ u_{i_{2n-1}i₀}`
/// (normalization constant 1; see the transgression tests).
pub fn ch_odd(
    u: &AlgMatrix<PhaseScalar>,
    n: usize,
    p: &Presentation,
) -> Result<TensorChain, ChainError> {
    assert!(n >= 1, "odd Chern components start at tensor length 2");
    let r = u.dim();
    let uinv = u.adjoint(p);
    let id = AlgMatrix::identity(r, p);
    if u.mul(&uinv, p)? != id || uinv.mul(u, p)? != id {
        return Err(ChainError::UnverifiedUnitarity(
            "u·u* and u*·u must both equal the identity".into(),
        ));
    }

    let len = 2 * n;
    let mut chain = TensorChain::zero(p, len - 1);
    let mut idx = vec![0usize; len];
    loop {
        for flip in [false, true] {
            let sign =
                if flip { PhaseScalar::from_int(-1) } else { PhaseScalar::one() };
            let mut entries = Vec::with_capacity(len);
            for k in 0..len {
                let next = idx[(k + 1) % len];
                let use_u = (k % 2 == 0) != flip;
                let m = if use_u { u } else { &uinv };
                entries.push(m.at(idx[k], next).clone());
            }
            chain.add_poly_tensor(&sign, &entries);
        }
        let mut k = 0;
        loop {
            idx[k] += 1;
            if idx[k] < r {
                break;
            }
            idx[k] = 0;
            k += 1;
            if k == len {
                return Ok(chain);
            }
        }
    }
}

/// Verdict of comparing two chains for exact proportionality.
#[derive(Clone, Debug, PartialEq)]
pub enum TransgressionRatio {
    BothZero,
    Proportional(PhaseScalar),
    NotProportional,
}

impl std::fmt::Display for TransgressionRatio {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TransgressionRatio::BothZero => write!(f, "both zero"),
            TransgressionRatio::Proportional(k) => write!(f, "proportional, k = {k}"),
            TransgressionRatio::NotProportional => write!(f, "NOT proportional"),
        }
    }
}

/// Finds k with `lhs = k · rhs`, exactly.
pub fn proportionality(lhs: &TensorChain, rhs: &TensorChain) -> TransgressionRatio {
    match (lhs.is_zero(), rhs.is_zero()) {
        (true, true) => return TransgressionRatio::BothZero,
        (true, false) | (false, true) => return TransgressionRatio::NotProportional,
        _ => {}
    }
    let (key, c_rhs) = rhs.terms.iter().next().expect("nonzero");
    let Some(c_lhs) = lhs.terms.get(key) else {
        return TransgressionRatio::NotProportional;
    };
    let Some(inv) = c_rhs.try_invert() else {
        return TransgressionRatio::NotProportional;
    };
    let k = c_lhs.mul(&inv);
    if *lhs == rhs.scale(&k) {
        TransgressionRatio::Proportional(k)
    } else {
        TransgressionRatio::NotProportional
    }
}

/// Measures the constant in `b ch_{n+1}(e) = k · B ch_n(e)`.
pub fn transgression_ratio_even(
    e: &AlgMatrix<PhaseScalar>,
    n: usize,
    p: &Presentation,
) -> Result<TransgressionRatio, ChainError> {
    let lhs = boundary_b(&ch_even(e, n + 1, p)?, p)?;
    let rhs = operator_big_b(&ch_even(e, n, p)?, p)?;
    Ok(proportionality(&lhs, &rhs))
}

/// Measures the constant in `b ch_{n+1/2}(u) = k · B ch_{n-1/2}(u)`.
pub fn transgression_ratio_odd(
    u: &AlgMatrix<PhaseScalar>,
    n: usize,
    p: &Presentation,
) -> Result<TransgressionRatio, ChainError> {
    let lhs = boundary_b(&ch_odd(u, n + 1, p)?, p)?;
    let rhs = operator_big_b(&ch_odd(u, n, p)?, p)?;
    Ok(proportionality(&lhs, &rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{nc_mul, parse_word};
    use rand::{Rng, SeedableRng};

    pub(crate) fn random_chain<R: Rng>(
        p: &Presentation,
        degree: usize,
        rng: &mut R,
    ) -> TensorChain {
        let mut chain = TensorChain::zero(p, degree);
        for _ in 0..rng.gen_range(1..3) {
            let entries: Vec<NCPoly> = (0..=degree)
                .map(|_| crate::testutil::random_poly(p, rng))
                .collect();
            chain.add_poly_tensor(&PhaseScalar::one(), &entries);
        }
        chain
    }

    #[test]
    fn degree1_boundary_is_commutator() {
        let p = Presentation::sphere_theta();
        let a = word_poly(&p, &parse_word("α", &p).unwrap());
        let b = word_poly(&p, &parse_word("β", &p).unwrap());
        let chain =
            TensorChain::from_poly_tensor(&p, &PhaseScalar::one(), &[a.clone(), b.clone()]);
        let bd = boundary_b(&chain, &p).unwrap();
        let comm = nc_mul(&a, &b, &p).unwrap().sub(&nc_mul(&b, &a, &p).unwrap());
        let expected = TensorChain::from_poly_tensor(&p, &PhaseScalar::one(), &[comm]);
        assert_eq!(bd, expected);
    }

    #[test]
    fn boundary_of_degree0_is_zero() {
        let p = Presentation::torus_theta();
        let a = word_poly(&p, &parse_word("u", &p).unwrap());
        let chain = TensorChain::from_poly_tensor(&p, &PhaseScalar::one(), &[a]);
        assert!(boundary_b(&chain, &p).unwrap().is_zero());
    }

    #[test]
    fn b_squared_vanishes_on_random_chains() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let p = Presentation::sphere_theta();
        for _ in 0..25 {
            let c = random_chain(&p, 3, &mut rng);
            let bb = boundary_b(&boundary_b(&c, &p).unwrap(), &p).unwrap();
            assert!(bb.is_zero());
        }
    }

    #[test]
    fn big_b_squared_vanishes() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(12);
        let p = Presentation::torus_theta();
        for _ in 0..25 {
            let c = random_chain(&p, 2, &mut rng);
            let bb = operator_big_b(&operator_big_b(&c, &p).unwrap(), &p).unwrap();
            assert!(bb.is_zero());
        }
    }

    #[test]
    fn anticommutation_bb() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        let p = Presentation::sphere_theta();
        for _ in 0..25 {
            let c = random_chain(&p, 2, &mut rng);
            let lhs = boundary_b(&operator_big_b(&c, &p).unwrap(), &p).unwrap();
            let rhs = operator_big_b(&boundary_b(&c, &p).unwrap(), &p).unwrap();
            assert!(lhs.add(&rhs).is_zero(), "bB + Bb must vanish");
        }
    }

    #[test]
    fn big_b_on_degree_zero() {
        let p = Presentation::sphere_theta();
        let a = word_poly(&p, &parse_word("t", &p).unwrap());
        let chain = TensorChain::from_poly_tensor(&p, &PhaseScalar::one(), &[a]);
        let b = operator_big_b(&chain, &p).unwrap();
        let mut expected = TensorChain::zero(&p, 1);
        expected.insert(vec![Word::one(), parse_word("t", &p).unwrap()], PhaseScalar::one());
        assert_eq!(b, expected);
    }

    #[test]
    fn normalization_kills_scalar_entries() {
        let p = Presentation::sphere_theta();
        let one = NCPoly::one(&p);
        let a = word_poly(&p, &parse_word("α", &p).unwrap());
        let c = TensorChain::from_poly_tensor(&p, &PhaseScalar::one(), &[a.clone(), one, a]);
        assert!(c.is_zero());
    }

    #[test]
    fn dump_roundtrip() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(14);
        let p = Presentation::sphere_theta();
        let c = random_chain(&p, 2, &mut rng);
        let s = c.dump(&p);
        let back = TensorChain::parse(&s, &p, 2).unwrap();
        assert_eq!(c, back);
    }
}
