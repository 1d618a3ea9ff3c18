//! Spectral calculus on the deformed 4-sphere: the canonical idempotent, the
//! symbolic Dirac commutators through torus derivations, the conditional
//! expectation onto the spin factor, the quartic identity
//! `<(e - 1/2)[D,e]⁴> = c·γ₅`, and the explicit five-component form of the
//! degree-4 Chern character.

use crate::algebra::{
    apply_hom, torus_embed, AlgMatrix, AlgebraError, AlgebraHom, Coeff, NCPoly, Presentation,
    Word,
};
use crate::chains::{ch_even, ChainError, TensorChain};
use crate::clifford::basis_sign;
use crate::scalar::{GaussianRational, PhaseScalar};
use crate::trig::TrigCoeff;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpectralError {
    #[error("denominator `{0}` survives reduction; the symbol is not polynomial")]
    PolynomialityViolation(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Chain(#[from] ChainError),
}

/// Gamma-basis mask for γ₅ = γ₁γ₂γ₃γ₄.
pub const GAMMA5_MASK: u8 = 0b1111;

/// Element of (trig ⊗ torus algebra) ⊗ spin: coefficients of the sixteen
/// γ-products, indexed by subset mask over {γ₁, γ₂, γ₃, γ₄}.
#[derive(Clone, PartialEq, Debug)]
pub struct SpinorSymbol {
    comps: BTreeMap<u8, NCPoly<TrigCoeff>>,
}

impl SpinorSymbol {
    pub fn zero() -> Self {
        Self { comps: BTreeMap::new() }
    }

    pub fn from_poly(f: NCPoly<TrigCoeff>) -> Self {
        let mut s = Self::zero();
        s.insert(0, f);
        s
    }

    pub fn gamma(mask: u8, f: NCPoly<TrigCoeff>) -> Self {
        let mut s = Self::zero();
        s.insert(mask, f);
        s
    }

    pub fn insert(&mut self, mask: u8, f: NCPoly<TrigCoeff>) {
        if f.is_zero() {
            return;
        }
        match self.comps.get_mut(&mask) {
            Some(slot) => {
                *slot = slot.add(&f);
                if slot.is_zero() {
                    self.comps.remove(&mask);
                }
            }
            None => {
                self.comps.insert(mask, f);
            }
        }
    }

    pub fn component(&self, mask: u8) -> Option<&NCPoly<TrigCoeff>> {
        self.comps.get(&mask)
    }

    pub fn components(&self) -> impl Iterator<Item = (u8, &NCPoly<TrigCoeff>)> {
        self.comps.iter().map(|(m, f)| (*m, f))
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, f) in &o.comps {
            out.insert(*m, f.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        Self { comps: self.comps.iter().map(|(m, f)| (*m, f.neg())).collect() }
    }

    pub fn scale(&self, c: &TrigCoeff) -> Self {
        let mut out = Self::zero();
        for (m, f) in &self.comps {
            out.insert(*m, f.scale(c));
        }
        out
    }

    pub fn scale_phase(&self, c: &PhaseScalar) -> Self {
        self.scale(&TrigCoeff::constant(c.clone()))
    }

    /// Product: algebra parts multiply in the torus algebra, spin parts
    /// multiply through the Clifford sign table.
    pub fn mul(&self, o: &Self, torus: &Presentation) -> Result<Self, SpectralError> {
        let mut out = Self::zero();
        for (m1, f1) in &self.comps {
            for (m2, f2) in &o.comps {
                let sign = basis_sign(*m1 as u32, *m2 as u32);
                let mut f = f1.mul(f2, torus)?;
                if sign < 0 {
                    f = f.neg();
                }
                out.insert(m1 ^ m2, f);
            }
        }
        Ok(out)
    }

    pub fn specialize_lambda_one(&self) -> Self {
        let mut out = Self::zero();
        for (m, f) in &self.comps {
            out.insert(*m, f.specialize_lambda_one());
        }
        out
    }

    /// `Some(c)` when the symbol is exactly `c · γ₅` with a constant scalar c.
    pub fn as_gamma5_constant(&self) -> Option<PhaseScalar> {
        if self.comps.is_empty() {
            return Some(PhaseScalar::zero());
        }
        if self.comps.len() != 1 {
            return None;
        }
        let (mask, f) = self.comps.iter().next().unwrap();
        if *mask != GAMMA5_MASK {
            return None;
        }
        if f.num_terms() != 1 {
            return None;
        }
        let (w, c) = f.terms().next().unwrap();
        if !w.is_one() {
            return None;
        }
        c.as_scalar()
    }
}

/// Derivation table and first-order coefficients of the Dirac symbol.
/// The zeroth-order terms of the operator (the cotangent corrections) are
/// central multiplication operators and drop out of every commutator.
pub struct DiracContext {
    pub torus: Presentation,
    pub sphere: Presentation,
    pub embed: AlgebraHom<TrigCoeff>,
}

impl DiracContext {
    pub fn new() -> Result<Self, AlgebraError> {
        let torus = Presentation::torus_theta();
        let sphere = Presentation::sphere_theta();
        let embed = torus_embed(&sphere, &torus)?;
        Ok(Self { torus, sphere, embed })
    }
}

/// Bidegree of a torus word: net powers of (u, v), adjoints negative.
pub fn bidegree(w: &Word) -> (i64, i64) {
    let mut n1 = 0i64;
    let mut n2 = 0i64;
    for &(g, p) in w.pairs() {
        match g {
            0 => n1 += p as i64,
            1 => n1 -= p as i64,
            2 => n2 += p as i64,
            3 => n2 -= p as i64,
            _ => unreachable!("torus alphabet"),
        }
    }
    (n1, n2)
}

/// δ₁: the torus derivation with δ₁(u) = u, δ₁(v) = 0.
fn delta(f: &NCPoly<TrigCoeff>, which: usize) -> NCPoly<TrigCoeff> {
    f.map_terms(|w, c| {
        let (n1, n2) = bidegree(w);
        let n = if which == 1 { n1 } else { n2 };
        c.scale(&PhaseScalar::from_int(n))
    })
}

/// [D, f] for f in the embedded subalgebra:
/// `(c_φ c_ψ)⁻¹ δ₁(f) γ₁ + (s_φ c_ψ)⁻¹ δ₂(f) γ₂ + (i/c_ψ) ∂_φ(f) γ₃ + i ∂_ψ(f) γ₄`,
/// with every denominator required to cancel.
pub fn dirac_commutator(
    f: &NCPoly<TrigCoeff>,
    ctx: &DiracContext,
) -> Result<SpinorSymbol, SpectralError> {
    for (_, c) in f.terms() {
        if !c.is_polynomial() {
            return Err(SpectralError::PolynomialityViolation(c.denominator().to_string()));
        }
    }
    let i_unit = PhaseScalar::i();
    let parts: [(u8, NCPoly<TrigCoeff>, TrigCoeff); 4] = [
        (0b0001, delta(f, 1), TrigCoeff::inv_mono(0, 1, 1)),
        (0b0010, delta(f, 2), TrigCoeff::inv_mono(1, 0, 1)),
        (
            0b0100,
            f.map_terms(|_, c| c.d_phi()).scale(&TrigCoeff::constant(i_unit.clone())),
            TrigCoeff::inv_mono(0, 0, 1),
        ),
        (
            0b1000,
            f.map_terms(|_, c| c.d_psi()).scale(&TrigCoeff::constant(i_unit)),
            TrigCoeff::one(),
        ),
    ];
    let mut out = SpinorSymbol::zero();
    for (mask, poly, recip) in parts {
        let scaled = poly.scale(&recip);
        for (_, c) in scaled.terms() {
            if !c.is_polynomial() {
                return Err(SpectralError::PolynomialityViolation(
                    c.denominator().to_string(),
                ));
            }
        }
        out.insert(mask, scaled);
    }
    Ok(out)
}

/// The five listed commutators, transcribed:
/// `[D,α] = (u/2)(γ₁ - i s_φ γ₃ - i c_φ s_ψ γ₄)` and its companions.
pub fn commutator_table(ctx: &DiracContext) -> Vec<(String, SpinorSymbol)> {
    let torus = &ctx.torus;
    let half = PhaseScalar::from_ratio(1, 2);
    let i_half = PhaseScalar::i().mul(&half);
    let gen = |g: u8| NCPoly::<TrigCoeff>::generator(torus, g);
    let s_phi = TrigCoeff::s_phi();
    let c_phi = TrigCoeff::c_phi();
    let s_psi = TrigCoeff::s_psi();
    let c_psi = TrigCoeff::c_psi();

    let build = |gen_poly: NCPoly<TrigCoeff>,
                 sign: i64,
                 vector_mask: u8,
                 g3: TrigCoeff,
                 g4: TrigCoeff| {
        let s = PhaseScalar::from_int(sign);
        let mut out = SpinorSymbol::gamma(vector_mask, gen_poly.scale_phase(&half.mul(&s)));
        out.insert(0b0100, gen_poly.scale(&g3).scale_phase(&i_half.mul(&s)));
        out.insert(0b1000, gen_poly.scale(&g4).scale_phase(&i_half.mul(&s)));
        out
    };

    let d_alpha = build(
        gen(0),
        1,
        0b0001,
        s_phi.neg(),
        c_phi.mul(&s_psi).neg(),
    );
    let d_alpha_star = build(
        gen(1),
        -1,
        0b0001,
        s_phi.clone(),
        c_phi.mul(&s_psi),
    );
    let d_beta = build(
        gen(2),
        1,
        0b0010,
        c_phi.clone(),
        s_phi.mul(&s_psi).neg(),
    );
    let d_beta_star = build(
        gen(3),
        -1,
        0b0010,
        c_phi.neg(),
        s_phi.mul(&s_psi),
    );
    let d_t = SpinorSymbol::gamma(
        0b1000,
        NCPoly::constant(torus, c_psi.scale(&i_half)),
    );

    vec![
        ("α".into(), d_alpha),
        ("α*".into(), d_alpha_star),
        ("β".into(), d_beta),
        ("β*".into(), d_beta_star),
        ("t".into(), d_t),
    ]
}

/// Checks the derivation-computed commutators against the transcribed table.
pub fn commutator_table_check(ctx: &DiracContext) -> Result<Vec<(String, bool)>, SpectralError> {
    let mut results = Vec::new();
    for (name, expected) in commutator_table(ctx) {
        let g = ctx.sphere.lookup_gen(&name).expect("sphere generator");
        let poly = NCPoly::<PhaseScalar>::generator(&ctx.sphere, g);
        let emb = apply_hom(&poly, &ctx.embed, &ctx.torus)?;
        let computed = dirac_commutator(&emb, ctx)?;
        results.push((name, computed == expected));
    }
    Ok(results)
}

/// 4×4 matrix over the spinor symbols.
#[derive(Clone, PartialEq, Debug)]
pub struct SpinorMatrix {
    r: usize,
    entries: Vec<SpinorSymbol>,
}

impl SpinorMatrix {
    pub fn zero(r: usize) -> Self {
        Self { r, entries: vec![SpinorSymbol::zero(); r * r] }
    }

    pub fn from_entries(r: usize, entries: Vec<SpinorSymbol>) -> Self {
        assert_eq!(entries.len(), r * r);
        Self { r, entries }
    }

    pub fn at(&self, i: usize, j: usize) -> &SpinorSymbol {
        &self.entries[i * self.r + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut SpinorSymbol {
        &mut self.entries[i * self.r + j]
    }

    pub fn dim(&self) -> usize {
        self.r
    }

    pub fn mul(&self, o: &Self, torus: &Presentation) -> Result<Self, SpectralError> {
        assert_eq!(self.r, o.r);
        let mut out = Self::zero(self.r);
        for i in 0..self.r {
            for j in 0..self.r {
                let mut acc = SpinorSymbol::zero();
                for k in 0..self.r {
                    acc = acc.add(&self.at(i, k).mul(o.at(k, j), torus)?);
                }
                *out.at_mut(i, j) = acc;
            }
        }
        Ok(out)
    }
}

/// Normalized conditional expectation onto the commutant of the matrix
/// factor: (1/4) Σ diagonal entries.
pub fn cond_expect(x: &SpinorMatrix) -> SpinorSymbol {
    let quarter = PhaseScalar::from_ratio(1, x.dim() as i64);
    let mut acc = SpinorSymbol::zero();
    for i in 0..x.dim() {
        acc = acc.add(x.at(i, i));
    }
    acc.scale_phase(&quarter)
}

/// The canonical idempotent over the deformed sphere (4×4):
/// `e = [[t, q], [q*, 1-t]]` with `q = [[α, β], [-λβ*, α*]]` blockwise.
pub fn build_e_theta(sphere: &Presentation) -> AlgMatrix<PhaseScalar> {
    let g = |name: &str| {
        NCPoly::<PhaseScalar>::generator(sphere, sphere.lookup_gen(name).unwrap())
    };
    let one = NCPoly::<PhaseScalar>::one(sphere);
    let zero = NCPoly::<PhaseScalar>::zero(sphere);
    let t = g("t");
    let alpha = g("α");
    let alpha_star = g("α*");
    let beta = g("β");
    let beta_star = g("β*");
    let lam = PhaseScalar::lambda_pow(1);
    let lam_bar = PhaseScalar::lambda_pow(-1);
    let one_minus_t = one.sub(&t);

    let entries = vec![
        // row 1
        t.clone(),
        zero.clone(),
        alpha.clone(),
        beta.clone(),
        // row 2
        zero.clone(),
        t.clone(),
        beta_star.scale(&lam).neg(),
        alpha_star.clone(),
        // row 3
        alpha_star.clone(),
        beta.scale(&lam_bar).neg(),
        one_minus_t.clone(),
        zero.clone(),
        // row 4
        beta_star.clone(),
        alpha.clone(),
        zero,
        one_minus_t,
    ];
    AlgMatrix::from_entries(4, entries).expect("4x4")
}

/// Per-entry verdicts for `e² = e`, `e = e*` and `<e - 1/2> = 0`.
#[derive(Debug, Clone)]
pub struct IdempotentReport {
    pub idempotent_failures: Vec<(usize, usize)>,
    pub adjoint_failures: Vec<(usize, usize)>,
    pub expectation_vanishes: bool,
}

impl IdempotentReport {
    pub fn pass(&self) -> bool {
        self.idempotent_failures.is_empty()
            && self.adjoint_failures.is_empty()
            && self.expectation_vanishes
    }
}

pub fn idempotent_suite(
    e: &AlgMatrix<PhaseScalar>,
    p: &Presentation,
) -> Result<IdempotentReport, AlgebraError> {
    let r = e.dim();
    let e2 = e.mul(e, p)?;
    let estar = e.adjoint(p);
    let mut idempotent_failures = Vec::new();
    let mut adjoint_failures = Vec::new();
    for i in 0..r {
        for j in 0..r {
            if e2.at(i, j) != e.at(i, j) {
                idempotent_failures.push((i, j));
            }
            if estar.at(i, j) != e.at(i, j) {
                adjoint_failures.push((i, j));
            }
        }
    }
    let half = NCPoly::constant(p, PhaseScalar::from_ratio(1, 2));
    let mut trace = NCPoly::<PhaseScalar>::zero(p);
    for i in 0..r {
        trace = trace.add(&e.at(i, i).sub(&half));
    }
    Ok(IdempotentReport {
        idempotent_failures,
        adjoint_failures,
        expectation_vanishes: trace.is_zero(),
    })
}

/// Result of the quartic computation `<(e - 1/2)[D,e]⁴>`.
#[derive(Debug, Clone)]
pub struct QuarticResult {
    /// The measured γ₅ coefficient when the identity holds.
    pub constant: Option<PhaseScalar>,
    /// Non-γ₅ masks with nonzero components (must be empty).
    pub residual_masks: Vec<u8>,
    /// Set when the γ₅ component is not a bare constant.
    pub gamma5_defect: Option<String>,
}

impl QuarticResult {
    pub fn pass(&self) -> bool {
        self.residual_masks.is_empty()
            && self.gamma5_defect.is_none()
            && self.constant.as_ref().map_or(false, |c| !c.is_zero())
    }
}

/// Embeds a sphere matrix into (trig ⊗ torus) entries.
pub fn embed_matrix(
    e: &AlgMatrix<PhaseScalar>,
    ctx: &DiracContext,
) -> Result<Vec<NCPoly<TrigCoeff>>, SpectralError> {
    let r = e.dim();
    let mut out = Vec::with_capacity(r * r);
    for i in 0..r {
        for j in 0..r {
            out.push(apply_hom(e.at(i, j), &ctx.embed, &ctx.torus)?);
        }
    }
    Ok(out)
}

/// `<(e - 1/2) [D,e]⁴>` for an embedded idempotent matrix.
pub fn quartic_invariant(
    entries: &[NCPoly<TrigCoeff>],
    ctx: &DiracContext,
) -> Result<(QuarticResult, SpinorSymbol), SpectralError> {
    let r = 4usize;
    assert_eq!(entries.len(), r * r);
    let half = TrigCoeff::constant(PhaseScalar::from_ratio(1, 2));
    let mut e_half = SpinorMatrix::zero(r);
    let mut de = SpinorMatrix::zero(r);
    for i in 0..r {
        for j in 0..r {
            let f = &entries[i * r + j];
            let mut shifted = f.clone();
            if i == j {
                shifted = shifted.sub(&NCPoly::constant(&ctx.torus, half.clone()));
            }
            *e_half.at_mut(i, j) = SpinorSymbol::from_poly(shifted);
            *de.at_mut(i, j) = dirac_commutator(f, ctx)?;
        }
    }
    let de2 = de.mul(&de, &ctx.torus)?;
    let de4 = de2.mul(&de2, &ctx.torus)?;
    let x = e_half.mul(&de4, &ctx.torus)?;
    let q = cond_expect(&x);
    Ok((classify_quartic(&q), q))
}

fn classify_quartic(q: &SpinorSymbol) -> QuarticResult {
    let mut residual_masks = Vec::new();
    let mut gamma5_defect = None;
    let mut constant = None;
    for (mask, f) in q.components() {
        if mask != GAMMA5_MASK {
            residual_masks.push(mask);
            continue;
        }
        // The γ₅ part must be a single empty-word constant term.
        let mut ok = f.num_terms() == 1;
        if let Some((w, c)) = f.terms().next() {
            ok = ok && w.is_one();
            match c.as_scalar() {
                Some(s) if ok => constant = Some(s),
                _ => ok = false,
            }
        }
        if !ok {
            gamma5_defect = Some(format!("γ₅ component is not a constant: {f:?}"));
        }
    }
    QuarticResult { constant, residual_masks, gamma5_defect }
}

/// The canonical map from chains to operators:
/// `π(a₀ ⊗ a₁ ⊗ … ⊗ a_n) = a₀ [D,a₁] … [D,a_n]`.
pub fn pi_map(chain: &TensorChain, ctx: &DiracContext) -> Result<SpinorSymbol, SpectralError> {
    let mut acc = SpinorSymbol::zero();
    for (entries, coeff) in chain.terms() {
        let mut term: Option<SpinorSymbol> = None;
        for (pos, w) in entries.iter().enumerate() {
            let poly = NCPoly::<PhaseScalar>::from_word(&ctx.sphere, w, PhaseScalar::one());
            let emb = apply_hom(&poly, &ctx.embed, &ctx.torus)?;
            let factor = if pos == 0 {
                SpinorSymbol::from_poly(emb)
            } else {
                dirac_commutator(&emb, ctx)?
            };
            term = Some(match term {
                None => factor,
                Some(t) => t.mul(&factor, &ctx.torus)?,
            });
        }
        if let Some(t) = term {
            acc = acc.add(&t.scale_phase(coeff));
        }
    }
    Ok(acc)
}

/// One parenthesized factor of a component display:
/// `c₁·(dx₁ dx₂) + c₂·(dx₃ dx₄)`.
#[derive(Clone)]
pub struct DiffFactor {
    pub c1: PhaseScalar,
    pub pair1: (&'static str, &'static str),
    pub c2: PhaseScalar,
    pub pair2: (&'static str, &'static str),
}

/// One display line: `prefactor · factor₁ · factor₂`.
#[derive(Clone)]
pub struct DisplayLine {
    pub prefactor: PhaseScalar,
    pub f1: DiffFactor,
    pub f2: DiffFactor,
}

fn one() -> PhaseScalar {
    PhaseScalar::one()
}
fn neg_one() -> PhaseScalar {
    PhaseScalar::from_int(-1)
}
fn lam() -> PhaseScalar {
    PhaseScalar::lambda_pow(1)
}
fn lam_bar() -> PhaseScalar {
    PhaseScalar::lambda_pow(-1)
}

fn factor(
    c1: PhaseScalar,
    pair1: (&'static str, &'static str),
    c2: PhaseScalar,
    pair2: (&'static str, &'static str),
) -> DiffFactor {
    DiffFactor { c1, pair1, c2, pair2 }
}

/// `(dx dy - μ dy' dx')` shorthand.
fn minus(
    pair1: (&'static str, &'static str),
    mu: PhaseScalar,
    pair2: (&'static str, &'static str),
) -> DiffFactor {
    factor(one(), pair1, mu.neg(), pair2)
}

/// The five displayed components of the degree-4 character, keyed by the
/// position-0 word they multiply (t means `t - 1/2`).
pub fn five_component_display() -> Vec<(&'static str, Vec<DisplayLine>)> {
    let line = |prefactor: PhaseScalar, f1: DiffFactor, f2: DiffFactor| DisplayLine {
        prefactor,
        f1,
        f2,
    };
    let a = "α";
    let a_s = "α*";
    let b = "β";
    let b_s = "β*";
    let t = "t";

    let gamma_t = vec![
        line(one(), minus((a, a_s), one(), (a_s, a)), minus((b, b_s), one(), (b_s, b))),
        line(one(), minus((b, b_s), one(), (b_s, b)), minus((a, a_s), one(), (a_s, a))),
        line(one(), minus((a, b), lam(), (b, a)), minus((b_s, a_s), lam_bar(), (a_s, b_s))),
        line(one(), minus((b_s, a_s), lam_bar(), (a_s, b_s)), minus((a, b), lam(), (b, a))),
        line(
            one(),
            minus((a_s, b), lam_bar(), (b, a_s)),
            factor(lam(), (a, b_s), neg_one(), (b_s, a)),
        ),
        line(
            one(),
            factor(lam(), (a, b_s), neg_one(), (b_s, a)),
            minus((a_s, b), lam_bar(), (b, a_s)),
        ),
    ];

    let gamma_a = vec![
        line(one(), minus((t, a_s), one(), (a_s, t)), minus((b_s, b), one(), (b, b_s))),
        line(one(), minus((b_s, b), one(), (b, b_s)), minus((t, a_s), one(), (a_s, t))),
        line(one(), minus((b, t), one(), (t, b)), minus((b_s, a_s), lam_bar(), (a_s, b_s))),
        line(lam(), minus((b_s, a_s), lam_bar(), (a_s, b_s)), minus((b, t), one(), (t, b))),
        line(one(), minus((a_s, b), lam_bar(), (b, a_s)), minus((b_s, t), one(), (t, b_s))),
        line(lam(), minus((b_s, t), one(), (t, b_s)), minus((a_s, b), lam_bar(), (b, a_s))),
    ];

    let gamma_a_star = vec![
        line(one(), minus((t, a), one(), (a, t)), minus((b, b_s), one(), (b_s, b))),
        line(one(), minus((b, b_s), one(), (b_s, b)), minus((t, a), one(), (a, t))),
        line(one(), minus((a, b), lam(), (b, a)), minus((t, b_s), one(), (b_s, t))),
        line(lam_bar(), minus((t, b_s), one(), (b_s, t)), minus((a, b), lam(), (b, a))),
        line(one(), minus((t, b), one(), (b, t)), minus((b_s, a), lam(), (a, b_s))),
        line(lam_bar(), minus((b_s, a), lam(), (a, b_s)), minus((t, b), one(), (b, t))),
    ];

    let gamma_b = vec![
        line(one(), minus((t, b_s), one(), (b_s, t)), minus((a_s, a), one(), (a, a_s))),
        line(one(), minus((a_s, a), one(), (a, a_s)), minus((t, b_s), one(), (b_s, t))),
        line(lam(), minus((t, a), one(), (a, t)), minus((b_s, a_s), lam_bar(), (a_s, b_s))),
        line(one(), minus((b_s, a_s), lam_bar(), (a_s, b_s)), minus((t, a), one(), (a, t))),
        line(lam_bar(), minus((a_s, t), one(), (t, a_s)), minus((b_s, a), lam(), (a, b_s))),
        line(one(), minus((b_s, a), lam(), (a, b_s)), minus((a_s, t), one(), (t, a_s))),
    ];

    let gamma_b_star = vec![
        line(one(), minus((t, b), one(), (b, t)), minus((a, a_s), one(), (a_s, a))),
        line(one(), minus((a, a_s), one(), (a_s, a)), minus((t, b), one(), (b, t))),
        line(one(), minus((a_s, t), one(), (t, a_s)), minus((a, b), lam(), (b, a))),
        line(lam_bar(), minus((a, b), lam(), (b, a)), minus((a_s, t), one(), (t, a_s))),
        line(one(), minus((t, a), one(), (a, t)), minus((a_s, b), lam_bar(), (b, a_s))),
        line(lam(), minus((a_s, b), lam_bar(), (b, a_s)), minus((t, a), one(), (a, t))),
    ];

    vec![
        ("t", gamma_t),
        ("α", gamma_a),
        ("α*", gamma_a_star),
        ("β", gamma_b),
        ("β*", gamma_b_star),
    ]
}

/// Expands a display into a degree-4 chain component (tensor symbol replacing
/// the differential).
pub fn display_to_chain(lines: &[DisplayLine], p: &Presentation) -> TensorChain {
    let mut out = TensorChain::zero(p, 3);
    let gen_word =
        |name: &str| Word::generator(p.lookup_gen(name).expect("display generator"));
    for line in lines {
        for (ca, pa) in [(&line.f1.c1, &line.f1.pair1), (&line.f1.c2, &line.f1.pair2)] {
            for (cb, pb) in [(&line.f2.c1, &line.f2.pair1), (&line.f2.c2, &line.f2.pair2)] {
                let coeff = line.prefactor.mul(ca).mul(cb);
                out.insert(
                    vec![gen_word(pa.0), gen_word(pa.1), gen_word(pb.0), gen_word(pb.1)],
                    coeff,
                );
            }
        }
    }
    out
}

/// Assembles the full five-component chain
/// `(t-1/2)⊗c_t + α⊗c_α + α*⊗c_{α*} + β⊗c_β + β*⊗c_{β*}` of degree 4.
pub fn five_component_chain(p: &Presentation) -> TensorChain {
    let mut out = TensorChain::zero(p, 4);
    for (head, lines) in five_component_display() {
        let comp = display_to_chain(&lines, p);
        let head_word = Word::generator(p.lookup_gen(head).expect("head generator"));
        for (entries, coeff) in comp.terms() {
            let mut with_head = Vec::with_capacity(5);
            with_head.push(head_word.clone());
            with_head.extend(entries.iter().cloned());
            out.insert(with_head, coeff.clone());
            if head == "t" {
                // (t - 1/2) also contributes the scalar part at position 0.
                let mut with_unit = Vec::with_capacity(5);
                with_unit.push(Word::one());
                with_unit.extend(entries.iter().cloned());
                out.insert(with_unit, coeff.mul(&PhaseScalar::from_ratio(-1, 2)));
            }
        }
    }
    out
}

/// Per-component verdict of the explicit degree-4 character check.
#[derive(Debug, Clone)]
pub struct ChernComponentReport {
    pub component_diffs: Vec<(String, usize)>,
    pub matches: bool,
}

/// Verifies `ch₂(e) = λ₂ · (five-component display)` term for term and
/// reports mismatches per component head.
pub fn chern2_explicit_check(
    e: &AlgMatrix<PhaseScalar>,
    p: &Presentation,
) -> Result<(ChernComponentReport, TensorChain), SpectralError> {
    let computed = ch_even(e, 2, p)?;
    let expected = five_component_chain(p).scale(&crate::chains::lambda_even(2));
    let diff = computed.sub(&expected);
    let mut per_head: BTreeMap<String, usize> = BTreeMap::new();
    for (entries, _) in diff.terms() {
        let head = if entries[0].is_one() {
            "1".to_string()
        } else {
            crate::algebra::word_to_string(&entries[0], p)
        };
        *per_head.entry(head).or_insert(0) += 1;
    }
    let report = ChernComponentReport {
        component_diffs: per_head.into_iter().collect(),
        matches: diff.is_zero(),
    };
    Ok((report, computed))
}

/// Coordinate identification used to express the Clifford-model idempotent
/// over the commutative-limit torus parametrization. The two choices differ
/// by a reflection of ℝ⁴, so they compute the degree-4 invariant with
/// opposite orientations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CliffordPairing {
    /// `ξ₄ - iξ₃ = 2α, -iξ₁ - ξ₂ = 2β`: matches the quaternionic block form
    /// of the canonical idempotent, same orientation.
    QuaternionCompatible,
    /// `ξ₁ + iξ₂ = 2α, ξ₃ + iξ₄ = 2β`: the complex-pairs identification,
    /// opposite orientation (odd reflection).
    ComplexPairs,
}

/// The Clifford-model idempotent `E = 1/2 (1 + Σ ξ_k Γ_k + t' Γ₅)` at λ = 1,
/// expressed over (trig ⊗ torus) through a coordinate identification with
/// `αα* + ββ* = (1 - t'²)/4` and `t' = s_ψ`. Assembled from the concrete
/// spin matrices, so its quartic value cross-checks the whole pipeline
/// against the canonical block construction.
pub fn clifford_model_entries(
    ctx: &DiracContext,
    pairing: CliffordPairing,
) -> Vec<NCPoly<TrigCoeff>> {
    let torus = &ctx.torus;
    let rep = crate::clifford::spin_rep_m2();
    let half = PhaseScalar::from_ratio(1, 2);
    let i_half = PhaseScalar::i().mul(&half);
    let neg_i_half = i_half.neg();
    let gen = |g: u8| NCPoly::<TrigCoeff>::generator(torus, g);
    let cc = TrigCoeff::c_phi().mul(&TrigCoeff::c_psi());
    let sc = TrigCoeff::s_phi().mul(&TrigCoeff::c_psi());

    // Embedded 2α = u c_φc_ψ, 2β = v s_φc_ψ and their adjoints.
    let two_alpha_plus = gen(0).add(&gen(1)).scale(&cc); // 2(α + α*)
    let two_alpha_minus = gen(0).sub(&gen(1)).scale(&cc); // 2(α - α*)
    let two_beta_plus = gen(2).add(&gen(3)).scale(&sc);
    let two_beta_minus = gen(2).sub(&gen(3)).scale(&sc);

    let xi = match pairing {
        CliffordPairing::ComplexPairs => [
            // ξ₁ = α+α*, ξ₂ = -i(α-α*), ξ₃ = β+β*, ξ₄ = -i(β-β*).
            two_alpha_plus.scale_phase(&half),
            two_alpha_minus.scale_phase(&neg_i_half),
            two_beta_plus.scale_phase(&half),
            two_beta_minus.scale_phase(&neg_i_half),
        ],
        CliffordPairing::QuaternionCompatible => [
            // ξ₁ = i(β-β*), ξ₂ = -(β+β*), ξ₃ = i(α-α*), ξ₄ = α+α*.
            two_beta_minus.scale_phase(&i_half),
            two_beta_plus.scale_phase(&half).neg(),
            two_alpha_minus.scale_phase(&i_half),
            two_alpha_plus.scale_phase(&half),
        ],
    };
    let t_prime = NCPoly::<TrigCoeff>::constant(torus, TrigCoeff::s_psi());

    let mut entries = Vec::with_capacity(16);
    for i in 0..4 {
        for j in 0..4 {
            let mut entry = NCPoly::<TrigCoeff>::zero(torus);
            if i == j {
                entry = entry.add(&NCPoly::constant(
                    torus,
                    TrigCoeff::constant(half.clone()),
                ));
            }
            for (k, x) in xi.iter().enumerate() {
                let c = rep.gammas[k].at(i, j);
                if !c.is_zero() {
                    entry = entry.add(
                        &x.scale_phase(&PhaseScalar::from_gaussian(c.clone()).mul(&half)),
                    );
                }
            }
            let c5 = rep.gamma5.at(i, j);
            if !c5.is_zero() {
                entry = entry.add(
                    &t_prime
                        .scale_phase(&PhaseScalar::from_gaussian(c5.clone()).mul(&half)),
                );
            }
            entries.push(entry);
        }
    }
    entries
}

/// Quartic of the Clifford-model matrix, specialized to the commutative
/// limit λ = 1.
pub fn quartic_clifford_lambda1(
    ctx: &DiracContext,
    pairing: CliffordPairing,
) -> Result<(QuarticResult, SpinorSymbol), SpectralError> {
    let entries = clifford_model_entries(ctx, pairing);
    let (_, q) = quartic_invariant(&entries, ctx)?;
    let q1 = q.specialize_lambda_one();
    Ok((classify_quartic(&q1), q1))
}

/// Antisymmetrization `Σ_σ sgn(σ) x_{σ(1)} ⊗ … ⊗ x_{σ(4)}` of four generators.
pub fn antisymmetrize4(names: [&str; 4], p: &Presentation) -> TensorChain {
    let mut out = TensorChain::zero(p, 3);
    let words: Vec<Word> =
        names.iter().map(|n| Word::generator(p.lookup_gen(n).unwrap())).collect();
    let mut perm = [0usize, 1, 2, 3];
    loop {
        let mut inversions = 0;
        for i in 0..4 {
            for j in (i + 1)..4 {
                if perm[i] > perm[j] {
                    inversions += 1;
                }
            }
        }
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        out.insert(
            perm.iter().map(|&k| words[k].clone()).collect(),
            PhaseScalar::from_int(sign),
        );
        // Next permutation in lexicographic order.
        let mut i = 3;
        while i > 0 && perm[i - 1] >= perm[i] {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        let mut j = 3;
        while perm[j] <= perm[i - 1] {
            j -= 1;
        }
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::nc_mul;

    fn ctx() -> DiracContext {
        DiracContext::new().unwrap()
    }

    #[test]
    fn e_theta_entries() {
        let sphere = Presentation::sphere_theta();
        let e = build_e_theta(&sphere);
        let g = |name: &str| {
            NCPoly::<PhaseScalar>::generator(&sphere, sphere.lookup_gen(name).unwrap())
        };
        assert_eq!(*e.at(0, 0), g("t"));
        assert_eq!(
            *e.at(2, 2),
            NCPoly::one(&sphere).sub(&g("t"))
        );
        assert_eq!(*e.at(1, 2), g("β*").scale(&PhaseScalar::lambda_pow(1)).neg());
    }

    #[test]
    fn e_theta_idempotent_suite() {
        let sphere = Presentation::sphere_theta();
        let e = build_e_theta(&sphere);
        let report = idempotent_suite(&e, &sphere).unwrap();
        assert!(report.pass(), "{report:?}");
    }

    #[test]
    fn mutated_e_fails_idempotency() {
        let sphere = Presentation::sphere_theta();
        let mut e = build_e_theta(&sphere);
        // Drop the λ factor from the (1,2) entry.
        *e.at_mut(1, 2) = NCPoly::<PhaseScalar>::generator(
            &sphere,
            sphere.lookup_gen("β*").unwrap(),
        )
        .neg();
        let report = idempotent_suite(&e, &sphere).unwrap();
        assert!(!report.idempotent_failures.is_empty());
    }

    #[test]
    fn constant_projector_passes() {
        let sphere = Presentation::sphere_theta();
        let mut e = AlgMatrix::<PhaseScalar>::zero(4, &sphere);
        for i in 0..2 {
            *e.at_mut(i, i) = NCPoly::one(&sphere);
        }
        let report = idempotent_suite(&e, &sphere).unwrap();
        assert!(report.pass());
    }

    #[test]
    fn dirac_commutator_of_t() {
        let c = ctx();
        let t = NCPoly::<PhaseScalar>::generator(&c.sphere, c.sphere.lookup_gen("t").unwrap());
        let emb = apply_hom(&t, &c.embed, &c.torus).unwrap();
        let dt = dirac_commutator(&emb, &c).unwrap();
        let expected = SpinorSymbol::gamma(
            0b1000,
            NCPoly::constant(
                &c.torus,
                TrigCoeff::c_psi().scale(&PhaseScalar::i().mul(&PhaseScalar::from_ratio(1, 2))),
            ),
        );
        assert_eq!(dt, expected);
    }

    #[test]
    fn dirac_commutator_of_unit_vanishes() {
        let c = ctx();
        let one = NCPoly::<TrigCoeff>::one(&c.torus);
        assert!(dirac_commutator(&one, &c).unwrap().is_zero());
    }

    #[test]
    fn full_commutator_table_matches() {
        let c = ctx();
        for (name, ok) in commutator_table_check(&c).unwrap() {
            assert!(ok, "[D, {name}] disagrees with the listed expression");
        }
    }

    #[test]
    fn leibniz_rule_on_random_embedded_elements() {
        use rand::SeedableRng;
        let c = ctx();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..10 {
            let f = random_embedded(&c, &mut rng);
            let g = random_embedded(&c, &mut rng);
            let fg = nc_mul(&f, &g, &c.torus).unwrap();
            let lhs = dirac_commutator(&fg, &c).unwrap();
            let df_g = dirac_commutator(&f, &c)
                .unwrap()
                .mul(&SpinorSymbol::from_poly(g.clone()), &c.torus)
                .unwrap();
            let f_dg = SpinorSymbol::from_poly(f.clone())
                .mul(&dirac_commutator(&g, &c).unwrap(), &c.torus)
                .unwrap();
            assert_eq!(lhs, df_g.add(&f_dg), "[D, fg] = [D,f]g + f[D,g]");
        }
    }

    fn random_embedded<R: rand::Rng>(c: &DiracContext, rng: &mut R) -> NCPoly<TrigCoeff> {
        // Random product of embedded sphere generators, low degree.
        let len = rng.gen_range(1..4);
        let mut acc = NCPoly::<TrigCoeff>::one(&c.torus);
        for _ in 0..len {
            let g = rng.gen_range(0..c.sphere.num_gens() as u8);
            let poly = NCPoly::<PhaseScalar>::generator(&c.sphere, g);
            let emb = apply_hom(&poly, &c.embed, &c.torus).unwrap();
            acc = nc_mul(&acc, &emb, &c.torus).unwrap();
        }
        acc
    }

    #[test]
    fn cond_expect_unit_and_factorized() {
        let c = ctx();
        let mut m = SpinorMatrix::zero(4);
        for i in 0..4 {
            *m.at_mut(i, i) = SpinorSymbol::from_poly(NCPoly::one(&c.torus));
        }
        assert_eq!(
            cond_expect(&m),
            SpinorSymbol::from_poly(NCPoly::one(&c.torus)),
            "<1> = 1"
        );
    }

    #[test]
    fn cond_expect_of_embedded_e_minus_half() {
        let c = ctx();
        let e = build_e_theta(&c.sphere);
        let entries = embed_matrix(&e, &c).unwrap();
        let half = NCPoly::constant(&c.torus, TrigCoeff::constant(PhaseScalar::from_ratio(1, 2)));
        let mut m = SpinorMatrix::zero(4);
        for i in 0..4 {
            for j in 0..4 {
                let mut f = entries[i * 4 + j].clone();
                if i == j {
                    f = f.sub(&half);
                }
                *m.at_mut(i, j) = SpinorSymbol::from_poly(f);
            }
        }
        assert!(cond_expect(&m).is_zero(), "<e - 1/2> = 0");
    }
}
