//! Formal calculus of bigraded homogeneous operators under a rank-2 torus
//! action: left and right twists, star products, the twisted antiunitary,
//! and the order-one condition.
//!
//! Symbols are words in four factor kinds: base letters (homogeneous
//! operators with a bidegree), linear weights `λ^{a p₁ + b p₂}`, the
//! quadratic weight `λ^{d p₁ p₂}`, and the antiunitary marker J. The
//! canonical form carries all letters first, then one combined linear
//! weight, one quadratic weight, and a J power at the right end.
//!
//! Push rules, applied by the canonicalizer:
//! * `λ^{a p₁ + b p₂} T = λ^{am + bn} T λ^{a p₁ + b p₂}` for T of bidegree (m,n);
//! * `λ^{d p₁ p₂} T = λ^{d mn} T λ^{d(n p₁ + m p₂)} λ^{d p₁ p₂}`;
//! * J is antilinear, commutes with linear weights, inverts the quadratic
//!   weight, and conjugates letters to opaque symbols of negated bidegree.
//!
//! Base letters come in three kinds with a commutation table encoding the
//! undeformed geometry: J-conjugated letters commute with everything (the
//! commutant), letters of the form [D, a] commute with J-conjugated letters
//! (the undeformed order-one condition) but not with plain letters; plain
//! letters mutually commute only in the commutative base model.

use crate::oracle::CMat;
use crate::scalar::{GaussianRational, PhaseScalar};
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum LetterKind {
    Plain,
    Dimage,
    Jwrapped,
}

/// A homogeneous base symbol, identified by kind and bidegree (our inputs
/// are torus monomials `u^{n₁} v^{n₂}`, one per bidegree).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Letter {
    pub kind: LetterKind,
    pub n1: i64,
    pub n2: i64,
}

impl Letter {
    pub fn plain(n1: i64, n2: i64) -> Self {
        Letter { kind: LetterKind::Plain, n1, n2 }
    }

    pub fn dimage(n1: i64, n2: i64) -> Self {
        Letter { kind: LetterKind::Dimage, n1, n2 }
    }

    pub fn bidegree(&self) -> (i64, i64) {
        (self.n1, self.n2)
    }

    /// J-conjugation: negates the bidegree and toggles between plain and
    /// wrapped (J² acts trivially on letters).
    fn conjugated(&self) -> Self {
        let kind = match self.kind {
            LetterKind::Plain => LetterKind::Jwrapped,
            LetterKind::Jwrapped => LetterKind::Plain,
            LetterKind::Dimage => {
                unreachable!("no identity here conjugates a [D,·] letter")
            }
        };
        Letter { kind, n1: -self.n1, n2: -self.n2 }
    }

    /// The involution on the underlying operator: bidegree negates.
    fn star(&self) -> Self {
        Letter { kind: self.kind, n1: -self.n1, n2: -self.n2 }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = format!("u^{} v^{}", self.n1, self.n2);
        match self.kind {
            LetterKind::Plain => write!(f, "{body}"),
            LetterKind::Dimage => write!(f, "D[{body}]"),
            LetterKind::Jwrapped => write!(f, "J[{body}]"),
        }
    }
}

/// Commutation model of the base algebra. The manifold model (functions on a
/// commutative space) sets `plain_commute`; the abstract-commutator checks
/// leave plain letters free.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BaseModel {
    pub plain_commute: bool,
}

impl BaseModel {
    pub const FREE: BaseModel = BaseModel { plain_commute: false };
    pub const COMMUTATIVE: BaseModel = BaseModel { plain_commute: true };

    fn commute(&self, a: &Letter, b: &Letter) -> bool {
        use LetterKind::*;
        match (a.kind, b.kind) {
            (Jwrapped, _) | (_, Jwrapped) => true,
            (Plain, Plain) => self.plain_commute,
            (Dimage, Plain) | (Plain, Dimage) => false,
            (Dimage, Dimage) => false,
        }
    }
}

/// One multiplicative factor of an operator expression.
#[derive(Clone, Debug, PartialEq)]
pub enum Factor {
    Scalar(PhaseScalar),
    Base(Letter),
    /// λ^{a p₁ + b p₂}
    WeightLin(i64, i64),
    /// λ^{d p₁ p₂}
    WeightQuad(i64),
    /// J^k (k = ±1)
    J(i64),
}

/// Canonical term: letters, then weights, then the J power.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct TermKey {
    pub letters: Vec<Letter>,
    pub wlin: (i64, i64),
    pub wquad: i64,
    pub jpow: i64,
}

/// Canonicalized operator expression: a sum of canonical terms.
#[derive(Clone, PartialEq, Debug)]
pub struct OperatorExpr {
    terms: BTreeMap<TermKey, PhaseScalar>,
}

impl OperatorExpr {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TermKey, &PhaseScalar)> {
        self.terms.iter()
    }

    fn insert(&mut self, key: TermKey, coeff: PhaseScalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(slot) => {
                *slot = slot.add(&coeff);
                if slot.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, coeff);
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.insert(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.insert(k.clone(), c.neg());
        }
        out
    }

    pub fn scale(&self, c: &PhaseScalar) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.terms {
            out.insert(k.clone(), v.mul(c));
        }
        out
    }

    /// Back to factor form for further multiplication.
    pub fn to_factor_terms(&self) -> Vec<(PhaseScalar, Vec<Factor>)> {
        self.terms
            .iter()
            .map(|(k, c)| {
                let mut fs = Vec::new();
                for l in &k.letters {
                    fs.push(Factor::Base(*l));
                }
                if k.wlin != (0, 0) {
                    fs.push(Factor::WeightLin(k.wlin.0, k.wlin.1));
                }
                if k.wquad != 0 {
                    fs.push(Factor::WeightQuad(k.wquad));
                }
                if k.jpow != 0 {
                    fs.push(Factor::J(k.jpow));
                }
                (c.clone(), fs)
            })
            .collect()
    }

    pub fn mul(&self, o: &Self, model: BaseModel) -> Self {
        let mut out = Self::zero();
        for (c1, f1) in self.to_factor_terms() {
            for (c2, f2) in o.to_factor_terms() {
                let mut fs = f1.clone();
                fs.extend(f2.iter().cloned());
                let canon = canonicalize_term(&c1.mul(&c2), &fs, model);
                out = out.add(&canon);
            }
        }
        out
    }
}

impl fmt::Display for OperatorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for l in &k.letters {
                write!(f, "·{l}")?;
            }
            if k.wlin != (0, 0) {
                write!(f, "·Λ^({},{})", k.wlin.0, k.wlin.1)?;
            }
            if k.wquad != 0 {
                write!(f, "·Λq^{}", k.wquad)?;
            }
            if k.jpow != 0 {
                write!(f, "·J^{}", k.jpow)?;
            }
        }
        Ok(())
    }
}

/// Pushes a factor sequence into canonical slot order. Every factor enters
/// from the right and commutes leftward past the J power, the quadratic
/// weight, and the linear weight into its slot, accumulating phases.
pub fn canonicalize_term(
    coeff: &PhaseScalar,
    factors: &[Factor],
    model: BaseModel,
) -> OperatorExpr {
    let mut coeff = coeff.clone();
    let mut letters: Vec<Letter> = Vec::new();
    let mut wlin = (0i64, 0i64);
    let mut wquad = 0i64;
    let mut jpow = 0i64;

    for f in factors {
        match f {
            Factor::Scalar(c) => {
                let c = if jpow % 2 != 0 { c.conj() } else { c.clone() };
                coeff = coeff.mul(&c);
            }
            Factor::WeightLin(a, b) => {
                // Commutes with J and with the quadratic weight.
                wlin.0 += a;
                wlin.1 += b;
            }
            Factor::WeightQuad(d) => {
                let d = if jpow % 2 != 0 { -d } else { *d };
                wquad += d;
            }
            Factor::J(k) => {
                jpow += k;
            }
            Factor::Base(l) => {
                let l = if jpow % 2 != 0 { l.conjugated() } else { *l };
                let (m, n) = l.bidegree();
                // Left through λ^{d p₁p₂}: phase λ^{d mn}; the emitted linear
                // weight λ^{d(n p₁ + m p₂)} lands right of the letter, so the
                // letter crosses only the pre-existing linear weight.
                coeff = coeff.mul_lambda_pow(wquad * m * n);
                coeff = coeff.mul_lambda_pow(wlin.0 * m + wlin.1 * n);
                wlin.0 += wquad * n;
                wlin.1 += wquad * m;
                letters.push(l);
            }
        }
    }

    // Sort the letters where the commutation table allows.
    sort_letters(&mut letters, model);

    let mut out = OperatorExpr::zero();
    out.insert(TermKey { letters, wlin, wquad, jpow }, coeff);
    out
}

fn sort_letters(letters: &mut [Letter], model: BaseModel) {
    loop {
        let mut swapped = false;
        for i in 0..letters.len().saturating_sub(1) {
            let (a, b) = (letters[i], letters[i + 1]);
            if model.commute(&a, &b) && a > b {
                letters.swap(i, i + 1);
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }
}

/// Canonicalizes a sum of factor sequences.
pub fn canonicalize(
    terms: &[(PhaseScalar, Vec<Factor>)],
    model: BaseModel,
) -> OperatorExpr {
    let mut out = OperatorExpr::zero();
    for (c, fs) in terms {
        out = out.add(&canonicalize_term(c, fs, model));
    }
    out
}

/// Left twist `l(x) = x λ^{n₂ p₁}` of a homogeneous letter.
pub fn left_twist(x: Letter) -> OperatorExpr {
    canonicalize_term(
        &PhaseScalar::one(),
        &[Factor::Base(x), Factor::WeightLin(x.n2, 0)],
        BaseModel::FREE,
    )
}

/// Right twist `r(x) = x λ^{n₁ p₂}`.
pub fn right_twist(x: Letter) -> OperatorExpr {
    canonicalize_term(
        &PhaseScalar::one(),
        &[Factor::Base(x), Factor::WeightLin(0, x.n1)],
        BaseModel::FREE,
    )
}

/// Deformed product `x ∗ y = λ^{n'₁ n₂} xy` on homogeneous monomials.
pub fn star_left(x: (i64, i64), y: (i64, i64)) -> (PhaseScalar, (i64, i64)) {
    (PhaseScalar::lambda_pow(y.0 * x.1), (x.0 + y.0, x.1 + y.1))
}

/// Deformed right product `x ∗_r y = λ^{n₁ n'₂} xy`.
pub fn star_right(x: (i64, i64), y: (i64, i64)) -> (PhaseScalar, (i64, i64)) {
    (PhaseScalar::lambda_pow(x.0 * y.1), (x.0 + y.0, x.1 + y.1))
}

/// Lemma check: `l(x) r(y) - r(y) l(x) = (xy - yx) λ^{n'₁ n₂} λ^{n₂ p₁ + n'₁ p₂}`
/// with x, y treated as free symbols, plus the commutative special case where
/// both sides vanish.
pub fn lemma1a_check(x_deg: (i64, i64), y_deg: (i64, i64)) -> bool {
    let x = Letter::plain(x_deg.0, x_deg.1);
    let y = Letter::plain(y_deg.0, y_deg.1);
    let model = BaseModel::FREE;
    let lhs = left_twist(x).mul(&right_twist(y), model)
        .sub(&right_twist(y).mul(&left_twist(x), model));
    let phase = PhaseScalar::lambda_pow(y_deg.0 * x_deg.1);
    let weight = Factor::WeightLin(x_deg.1, y_deg.0);
    let rhs = canonicalize(
        &[
            (phase.clone(), vec![Factor::Base(x), Factor::Base(y), weight.clone()]),
            (phase.neg(), vec![Factor::Base(y), Factor::Base(x), weight]),
        ],
        model,
    );
    let general = lhs == rhs;

    // Commutative base: [x, y] = 0 forces [l(x), r(y)] = 0.
    let model = BaseModel::COMMUTATIVE;
    let commutative = left_twist(x)
        .mul(&right_twist(y), model)
        .sub(&right_twist(y).mul(&left_twist(x), model))
        .is_zero();
    general && commutative
}

/// Lemma check: `l(x) l(y) = l(x ∗ y)`.
pub fn lemma1b_check(x_deg: (i64, i64), y_deg: (i64, i64)) -> bool {
    let x = Letter::plain(x_deg.0, x_deg.1);
    let y = Letter::plain(y_deg.0, y_deg.1);
    let model = BaseModel::FREE;
    let lhs = left_twist(x).mul(&left_twist(y), model);
    let (phase, prod_deg) = star_left(x_deg, y_deg);
    // l(x∗y) with the product monomial as the ordered word x·y.
    let rhs = canonicalize_term(
        &phase,
        &[
            Factor::Base(x),
            Factor::Base(y),
            Factor::WeightLin(prod_deg.1, 0),
        ],
        model,
    );
    lhs == rhs
}

/// And the right-handed counterpart `r(x) r(y) = r(x ∗_r y)`.
pub fn lemma1b_right_check(x_deg: (i64, i64), y_deg: (i64, i64)) -> bool {
    let x = Letter::plain(x_deg.0, x_deg.1);
    let y = Letter::plain(y_deg.0, y_deg.1);
    let model = BaseModel::FREE;
    let lhs = right_twist(x).mul(&right_twist(y), model);
    let (phase, prod_deg) = star_right(x_deg, y_deg);
    let rhs = canonicalize_term(
        &phase,
        &[
            Factor::Base(x),
            Factor::Base(y),
            Factor::WeightLin(0, prod_deg.0),
        ],
        model,
    );
    lhs == rhs
}

/// The twisted antiunitary as factors: `J̃ = J λ^{-p₁p₂}`.
fn j_tilde() -> Vec<Factor> {
    vec![Factor::J(1), Factor::WeightQuad(-1)]
}

fn j_tilde_inv() -> Vec<Factor> {
    vec![Factor::WeightQuad(1), Factor::J(-1)]
}

/// Lemma check: `J̃ l(x) = r(JxJ⁻¹) · J̃ · λ^{-n₁n₂}` as canonical forms.
/// (Multiplying by J̃⁻¹ on the right gives the operator statement; with the
/// scalar at the far right the displayed exponent is -n₁n₂.)
pub fn twist_j_check(x_deg: (i64, i64)) -> bool {
    let model = BaseModel::FREE;
    let x = Letter::plain(x_deg.0, x_deg.1);
    let mut lhs_f = j_tilde();
    lhs_f.push(Factor::Base(x));
    lhs_f.push(Factor::WeightLin(x_deg.1, 0));
    let lhs = canonicalize_term(&PhaseScalar::one(), &lhs_f, model);

    let wrapped = x.conjugated();
    let mut rhs_f = vec![Factor::Base(wrapped), Factor::WeightLin(0, wrapped.n1)];
    rhs_f.extend(j_tilde());
    rhs_f.push(Factor::Scalar(PhaseScalar::lambda_pow(-x_deg.0 * x_deg.1)));
    let rhs = canonicalize_term(&PhaseScalar::one(), &rhs_f, model);

    lhs == rhs
}

/// `J̃² = J²` as canonical symbols.
pub fn j_tilde_squared_check() -> bool {
    let model = BaseModel::FREE;
    let mut sq = j_tilde();
    sq.extend(j_tilde());
    let lhs = canonicalize_term(&PhaseScalar::one(), &sq, model);
    let rhs = canonicalize_term(&PhaseScalar::one(), &[Factor::J(2)], model);
    lhs == rhs
}

/// `b° = J̃ l(b)* J̃⁻¹` in canonical form (manifold model).
pub fn b_opposite(b_deg: (i64, i64)) -> OperatorExpr {
    let b = Letter::plain(b_deg.0, b_deg.1);
    // l(b)* = (b λ^{n₂ p₁})* = λ^{-n₂ p₁} b*.
    let mut fs = j_tilde();
    fs.push(Factor::WeightLin(-b_deg.1, 0));
    fs.push(Factor::Base(b.star()));
    fs.extend(j_tilde_inv());
    canonicalize_term(&PhaseScalar::one(), &fs, BaseModel::COMMUTATIVE)
}

/// Commutant check `[l(a), b°] = 0`.
pub fn commutant_check(a_deg: (i64, i64), b_deg: (i64, i64)) -> bool {
    let model = BaseModel::COMMUTATIVE;
    let la = left_twist(Letter::plain(a_deg.0, a_deg.1));
    let bo = b_opposite(b_deg);
    la.mul(&bo, model).sub(&bo.mul(&la, model)).is_zero()
}

/// Order-one condition `[[D, l(a)], b°] = 0`, using `[D, l(a)] = l([D,a])`
/// with `[D,a]` a fresh homogeneous symbol of the same bidegree that
/// commutes with the commutant letters.
pub fn order_one_check(a_deg: (i64, i64), b_deg: (i64, i64)) -> bool {
    let model = BaseModel::COMMUTATIVE;
    let da = Letter::dimage(a_deg.0, a_deg.1);
    let d_la = left_twist(da);
    let bo = b_opposite(b_deg);
    d_la.mul(&bo, model).sub(&bo.mul(&d_la, model)).is_zero()
}

/// Star associativity on monomials: `(x∗y)∗z = x∗(y∗z)`.
pub fn star_assoc_check(x: (i64, i64), y: (i64, i64), z: (i64, i64)) -> bool {
    let (c1, xy) = star_left(x, y);
    let (c2, xyz_l) = star_left(xy, z);
    let left = (c1.mul(&c2), xyz_l);
    let (d1, yz) = star_left(y, z);
    let (d2, xyz_r) = star_left(x, yz);
    let right = (d1.mul(&d2), xyz_r);
    left == right
}

// ---------------------------------------------------------------------------
// Numeric model: ℓ²(Z_N²) with u, v, λ^{p_j} as explicit matrices and J as an
// antilinear conjugation. Confirms the formal push rules and lemma verdicts.
// ---------------------------------------------------------------------------

/// Linear-or-antilinear operator: value is `M · conj^parity(ξ)`.
#[derive(Clone, Debug)]
pub struct AntiMat {
    pub mat: CMat,
    pub parity: bool,
}

impl AntiMat {
    pub fn linear(mat: CMat) -> Self {
        Self { mat, parity: false }
    }

    pub fn compose(&self, o: &Self) -> Self {
        let rhs = if self.parity { conj_mat(&o.mat) } else { o.mat.clone() };
        Self { mat: self.mat.mul(&rhs), parity: self.parity ^ o.parity }
    }

    pub fn approx_eq(&self, o: &Self, tol: f64) -> bool {
        self.parity == o.parity && self.mat.sub(&o.mat).max_abs() < tol
    }
}

fn conj_mat(m: &CMat) -> CMat {
    let n = m.dim();
    let mut out = CMat::zero(n);
    for i in 0..n {
        for j in 0..n {
            out.set(i, j, m.at(i, j).conj());
        }
    }
    out
}

/// Finite model at λ = e^{2πi/N} on C^{N×N}: u shifts the first index,
/// v shifts the second with a phase, p_j are the index operators.
pub struct FiniteModel {
    pub n: usize,
    pub lambda: Complex64,
}

impl FiniteModel {
    pub fn new(n: usize) -> Self {
        Self { n, lambda: Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / n as f64) }
    }

    fn idx(&self, j: usize, k: usize) -> usize {
        j * self.n + k
    }

    fn dim(&self) -> usize {
        self.n * self.n
    }

    /// u e_{jk} = e_{j+1,k}; v e_{jk} = λ^{-j} e_{j,k+1}; then uv = λ vu.
    fn gen_u(&self) -> CMat {
        let mut m = CMat::zero(self.dim());
        for j in 0..self.n {
            for k in 0..self.n {
                m.set(self.idx((j + 1) % self.n, k), self.idx(j, k), Complex64::new(1.0, 0.0));
            }
        }
        m
    }

    fn gen_v(&self) -> CMat {
        let mut m = CMat::zero(self.dim());
        for j in 0..self.n {
            for k in 0..self.n {
                m.set(
                    self.idx(j, (k + 1) % self.n),
                    self.idx(j, k),
                    self.lambda.powi(-(j as i32)),
                );
            }
        }
        m
    }

    fn monomial(&self, n1: i64, n2: i64) -> CMat {
        let u = self.gen_u();
        let v = self.gen_v();
        let pow = |m: &CMat, k: i64| -> CMat {
            let base = if k >= 0 { m.clone() } else { m.adjoint() };
            base.pow(k.unsigned_abs() as u32)
        };
        pow(&u, n1).mul(&pow(&v, n2))
    }

    fn weight_lin(&self, a: i64, b: i64) -> CMat {
        let mut m = CMat::zero(self.dim());
        for j in 0..self.n {
            for k in 0..self.n {
                let e = a * j as i64 + b * k as i64;
                m.set(self.idx(j, k), self.idx(j, k), self.lambda.powi(e as i32));
            }
        }
        m
    }

    fn weight_quad(&self, d: i64) -> CMat {
        let mut m = CMat::zero(self.dim());
        for j in 0..self.n {
            for k in 0..self.n {
                let e = d * (j * k) as i64;
                m.set(self.idx(j, k), self.idx(j, k), self.lambda.powi(e as i32));
            }
        }
        m
    }

    fn j_op(&self) -> AntiMat {
        let mut p = CMat::zero(self.dim());
        for j in 0..self.n {
            for k in 0..self.n {
                p.set(
                    self.idx((self.n - j) % self.n, (self.n - k) % self.n),
                    self.idx(j, k),
                    Complex64::new(1.0, 0.0),
                );
            }
        }
        AntiMat { mat: p, parity: true }
    }

    fn letter(&self, l: &Letter) -> AntiMat {
        match l.kind {
            LetterKind::Plain | LetterKind::Dimage => {
                // [D, a]-letters have no distinguished finite model; lemma
                // confirmations only evaluate plain and wrapped letters.
                AntiMat::linear(self.monomial(l.n1, l.n2))
            }
            LetterKind::Jwrapped => {
                let j = self.j_op();
                let inner = AntiMat::linear(self.monomial(-l.n1, -l.n2));
                j.compose(&inner).compose(&j)
            }
        }
    }

    pub fn eval_factors(&self, coeff: &PhaseScalar, factors: &[Factor]) -> AntiMat {
        let mut acc = AntiMat::linear(
            CMat::identity(self.dim()).scale(coeff.eval(self.lambda)),
        );
        for f in factors {
            let next = match f {
                Factor::Scalar(c) => {
                    AntiMat::linear(CMat::identity(self.dim()).scale(c.eval(self.lambda)))
                }
                Factor::Base(l) => self.letter(l),
                Factor::WeightLin(a, b) => AntiMat::linear(self.weight_lin(*a, *b)),
                Factor::WeightQuad(d) => AntiMat::linear(self.weight_quad(*d)),
                Factor::J(k) => {
                    let j = self.j_op();
                    let mut acc_j = AntiMat::linear(CMat::identity(self.dim()));
                    for _ in 0..k.unsigned_abs() {
                        acc_j = acc_j.compose(&j); // J⁻¹ = J in this model
                    }
                    acc_j
                }
            };
            acc = acc.compose(&next);
        }
        acc
    }

    pub fn eval_expr(&self, e: &OperatorExpr) -> AntiMat {
        let mut acc: Option<AntiMat> = None;
        for (c, fs) in e.to_factor_terms() {
            let term = self.eval_factors(&c, &fs);
            acc = Some(match acc {
                None => term,
                Some(a) => {
                    assert_eq!(a.parity, term.parity, "mixed parities cannot be summed");
                    AntiMat { mat: a.mat.add(&term.mat), parity: a.parity }
                }
            });
        }
        acc.unwrap_or_else(|| AntiMat::linear(CMat::zero(self.dim())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bidegree_examples() {
        assert_eq!(Letter::plain(1, 0).bidegree(), (1, 0));
        assert_eq!(Letter::plain(-1, 2).bidegree(), (-1, 2));
        assert_eq!(Letter::plain(0, 0).bidegree(), (0, 0));
    }

    #[test]
    fn twist_examples() {
        // l(u) = u (n₂ = 0), l(v) = v λ^{p₁}, r(u) = u λ^{p₂}.
        let u = Letter::plain(1, 0);
        let v = Letter::plain(0, 1);
        let lu = left_twist(u);
        let (key, _) = lu.terms().next().unwrap();
        assert_eq!(key.wlin, (0, 0));
        let lv = left_twist(v);
        let (key, _) = lv.terms().next().unwrap();
        assert_eq!(key.wlin, (1, 0));
        let ru = right_twist(u);
        let (key, _) = ru.terms().next().unwrap();
        assert_eq!(key.wlin, (0, 1));
    }

    #[test]
    fn push_weight_examples() {
        // λ^{p₁}·u = λ·u·λ^{p₁}; λ^{p₂}·u = u·λ^{p₂}.
        let u = Letter::plain(1, 0);
        let e1 = canonicalize_term(
            &PhaseScalar::one(),
            &[Factor::WeightLin(1, 0), Factor::Base(u)],
            BaseModel::FREE,
        );
        let expected = canonicalize_term(
            &PhaseScalar::lambda_pow(1),
            &[Factor::Base(u), Factor::WeightLin(1, 0)],
            BaseModel::FREE,
        );
        assert_eq!(e1, expected);

        let e2 = canonicalize_term(
            &PhaseScalar::one(),
            &[Factor::WeightLin(0, 1), Factor::Base(u)],
            BaseModel::FREE,
        );
        let expected2 = canonicalize_term(
            &PhaseScalar::one(),
            &[Factor::Base(u), Factor::WeightLin(0, 1)],
            BaseModel::FREE,
        );
        assert_eq!(e2, expected2);
    }

    #[test]
    fn star_examples() {
        // u ∗ v = uv; v ∗ u = λ vu.
        let (c, d) = star_left((1, 0), (0, 1));
        assert!(c.is_one());
        assert_eq!(d, (1, 1));
        let (c, d) = star_left((0, 1), (1, 0));
        assert_eq!(c, PhaseScalar::lambda_pow(1));
        assert_eq!(d, (1, 1));
    }

    #[test]
    fn lemma1_range() {
        for n1 in -2..=2 {
            for n2 in -2..=2 {
                for m1 in -2..=2 {
                    for m2 in -2..=2 {
                        assert!(lemma1a_check((n1, n2), (m1, m2)), "1a at ({n1},{n2}),({m1},{m2})");
                        assert!(lemma1b_check((n1, n2), (m1, m2)), "1b at ({n1},{n2}),({m1},{m2})");
                        assert!(
                            lemma1b_right_check((n1, n2), (m1, m2)),
                            "1b-right at ({n1},{n2}),({m1},{m2})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn lemma1a_equal_letters() {
        // x = y: the word x·x coincides on both sides, so the commutator
        // vanishes even with free letters.
        let x = Letter::plain(2, -1);
        let lhs = left_twist(x)
            .mul(&right_twist(x), BaseModel::FREE)
            .sub(&right_twist(x).mul(&left_twist(x), BaseModel::FREE));
        assert!(lhs.is_zero());
        assert!(lemma1a_check((2, -1), (2, -1)));
    }

    #[test]
    fn twist_j_range() {
        for n1 in -3..=3i64 {
            for n2 in -3..=3i64 {
                assert!(twist_j_check((n1, n2)), "Lemma 2 at ({n1},{n2})");
            }
        }
    }

    #[test]
    fn j_tilde_squared() {
        assert!(j_tilde_squared_check());
    }

    #[test]
    fn order_one_range() {
        for n1 in -2..=2i64 {
            for n2 in -2..=2i64 {
                for m1 in -2..=2i64 {
                    for m2 in -2..=2i64 {
                        assert!(commutant_check((n1, n2), (m1, m2)));
                        assert!(order_one_check((n1, n2), (m1, m2)));
                    }
                }
            }
        }
    }

    #[test]
    fn star_associativity_small_range() {
        for x1 in -2..=2i64 {
            for x2 in -2..=2i64 {
                for y1 in -2..=2i64 {
                    for y2 in -2..=2i64 {
                        assert!(star_assoc_check((x1, x2), (y1, y2), (1, -2)));
                        assert!(star_assoc_check((x1, x2), (y1, y2), (-2, 1)));
                    }
                }
            }
        }
    }

    #[test]
    fn canonicalization_is_multiplicative() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        let model = BaseModel::FREE;
        for _ in 0..50 {
            let mut fs: Vec<Factor> = Vec::new();
            for _ in 0..rng.gen_range(1..6) {
                fs.push(match rng.gen_range(0..4) {
                    0 => Factor::Base(Letter::plain(rng.gen_range(-2..3), rng.gen_range(-2..3))),
                    1 => Factor::WeightLin(rng.gen_range(-2..3), rng.gen_range(-2..3)),
                    2 => Factor::WeightQuad(rng.gen_range(-1..2)),
                    _ => Factor::Scalar(PhaseScalar::lambda_pow(rng.gen_range(-2..3))),
                });
            }
            let whole = canonicalize_term(&PhaseScalar::one(), &fs, model);
            let cut = rng.gen_range(0..=fs.len());
            let left = canonicalize_term(&PhaseScalar::one(), &fs[..cut], model);
            let right = canonicalize_term(&PhaseScalar::one(), &fs[cut..], model);
            assert_eq!(whole, left.mul(&right, model), "split at {cut} of {fs:?}");
        }
    }

    #[test]
    fn finite_model_clock_shift() {
        let fm = FiniteModel::new(5);
        let u = fm.gen_u();
        let v = fm.gen_v();
        let uv = u.mul(&v);
        let vu = v.mul(&u);
        assert!(uv.sub(&vu.scale(fm.lambda)).max_abs() < 1e-12);
    }

    #[test]
    fn finite_model_confirms_lemmas() {
        let fm = FiniteModel::new(5);
        let tol = 1e-10;
        for &(x, y) in &[((1i64, 0i64), (0i64, 1i64)), ((2, 1), (1, -1)), ((-1, 2), (2, 0))] {
            // Lemma 1a, both sides evaluated before canonicalization.
            let xl = Letter::plain(x.0, x.1);
            let yl = Letter::plain(y.0, y.1);
            let lhs = fm.eval_expr(
                &left_twist(xl)
                    .mul(&right_twist(yl), BaseModel::FREE)
                    .sub(&right_twist(yl).mul(&left_twist(xl), BaseModel::FREE)),
            );
            let phase = PhaseScalar::lambda_pow(y.0 * x.1);
            let rhs = fm.eval_expr(&canonicalize(
                &[
                    (
                        phase.clone(),
                        vec![
                            Factor::Base(xl),
                            Factor::Base(yl),
                            Factor::WeightLin(x.1, y.0),
                        ],
                    ),
                    (
                        phase.neg(),
                        vec![
                            Factor::Base(yl),
                            Factor::Base(xl),
                            Factor::WeightLin(x.1, y.0),
                        ],
                    ),
                ],
                BaseModel::FREE,
            ));
            assert!(lhs.approx_eq(&rhs, tol), "lemma 1a numeric at {x:?},{y:?}");

            // Lemma 2 numeric: J̃ l(x) vs r(JxJ⁻¹) J̃ λ^{-n₁n₂}.
            let mut lhs_f = vec![Factor::J(1), Factor::WeightQuad(-1)];
            lhs_f.push(Factor::Base(xl));
            lhs_f.push(Factor::WeightLin(x.1, 0));
            let wrapped = Letter { kind: LetterKind::Jwrapped, n1: -x.0, n2: -x.1 };
            let mut rhs_f = vec![Factor::Base(wrapped), Factor::WeightLin(0, wrapped.n1)];
            rhs_f.push(Factor::J(1));
            rhs_f.push(Factor::WeightQuad(-1));
            rhs_f.push(Factor::Scalar(PhaseScalar::lambda_pow(-x.0 * x.1)));
            let lhs_n = fm.eval_factors(&PhaseScalar::one(), &lhs_f);
            let rhs_n = fm.eval_factors(&PhaseScalar::one(), &rhs_f);
            assert!(lhs_n.approx_eq(&rhs_n, tol), "lemma 2 numeric at {x:?}");
        }
    }

    #[test]
    fn finite_model_confirms_push_rule() {
        let fm = FiniteModel::new(5);
        let tol = 1e-10;
        for &(a, b) in &[(1i64, 0i64), (0, 1), (2, -1)] {
            for &(m, n) in &[(1i64, 0i64), (0, 1), (-1, 2)] {
                let t = Letter::plain(m, n);
                let lhs = fm.eval_factors(
                    &PhaseScalar::one(),
                    &[Factor::WeightLin(a, b), Factor::Base(t)],
                );
                let rhs = fm.eval_factors(
                    &PhaseScalar::lambda_pow(a * m + b * n),
                    &[Factor::Base(t), Factor::WeightLin(a, b)],
                );
                assert!(lhs.approx_eq(&rhs, tol));
            }
        }
    }
}
