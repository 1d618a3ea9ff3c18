//! Generator/relation presentations and the normal-form rewrite engine.
//!
//! Confluent presentations rewrite by three rule families, applied at the
//! leftmost applicable position with priority unit > auxiliary > exchange:
//!
//! * unit reductions `g·g* → 1` (torus unitaries);
//! * auxiliary reductions, a two-letter subword replaced by a polynomial
//!   (the sphere relation `β·β* → t - t² - α·α*` and the commutative-sphere
//!   relation `t'·t' → 1 - Σ ξ_i²`);
//! * exchange swaps `g·h → λ^k h·g` for out-of-order neighbours.
//!
//! Exchange preserves degree and strictly lowers the inversion count; unit
//! and auxiliary rules strictly lower a weighted degree, so rewriting
//! terminates. Confluence is exercised by randomized join tests.

use super::word::{GenIdx, Word};
use crate::scalar::{GaussianRational, PhaseScalar};
use rand::Rng;
use std::collections::{BTreeMap, HashSet};
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum PresId {
    SphereTheta,
    TorusTheta,
    SphereComm(u8),
    Grass(u8),
}

impl fmt::Display for PresId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PresId::SphereTheta => write!(f, "sphere_theta"),
            PresId::TorusTheta => write!(f, "torus_theta"),
            PresId::SphereComm(m) => write!(f, "sphere_comm({m})"),
            PresId::Grass(r) => write!(f, "grass({r})"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PresKind {
    Confluent,
    Relational,
}

/// Unreduced polynomial: a plain term list over free words. Relations are
/// stored this way because their whole point is to reduce to zero.
#[derive(Clone, Debug)]
pub struct RawPoly {
    pub terms: Vec<(PhaseScalar, Word)>,
}

impl RawPoly {
    pub fn new(terms: Vec<(PhaseScalar, Word)>) -> Self {
        Self { terms }
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.iter().map(|(_, w)| w.degree()).max().unwrap_or(0)
    }
}

struct GenInfo {
    name: String,
    adjoint: GenIdx,
}

pub struct Presentation {
    id: PresId,
    kind: PresKind,
    gens: Vec<GenInfo>,
    /// Phase exponents for out-of-order swaps `g·h → λ^k h·g`, keyed by (g, h)
    /// with `g > h` in the normal order; absent entries mean `k = 0`.
    exchange: BTreeMap<(GenIdx, GenIdx), i64>,
    unit_pairs: HashSet<(GenIdx, GenIdx)>,
    aux_rules: BTreeMap<(GenIdx, GenIdx), Vec<(PhaseScalar, Word)>>,
    relations: Vec<RawPoly>,
}

/// One applicable rewrite at a position in a flattened word.
#[derive(Clone, Debug)]
enum RuleApp {
    Unit(usize),
    Aux(usize),
    Swap(usize, i64),
}

impl Presentation {
    pub fn from_id(id: PresId) -> Presentation {
        match id {
            PresId::SphereTheta => Presentation::sphere_theta(),
            PresId::TorusTheta => Presentation::torus_theta(),
            PresId::SphereComm(m) => Presentation::sphere_comm(m),
            PresId::Grass(r) => Presentation::grass(r),
        }
    }

    pub fn id(&self) -> PresId {
        self.id
    }

    pub fn kind(&self) -> PresKind {
        self.kind
    }

    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    pub fn gen_name(&self, g: GenIdx) -> &str {
        &self.gens[g as usize].name
    }

    pub fn adjoint_gen(&self, g: GenIdx) -> GenIdx {
        self.gens[g as usize].adjoint
    }

    pub fn lookup_gen(&self, name: &str) -> Option<GenIdx> {
        self.gens.iter().position(|g| g.name == name).map(|i| i as GenIdx)
    }

    pub fn relations(&self) -> &[RawPoly] {
        &self.relations
    }

    pub fn check_word(&self, w: &Word) -> Result<(), super::AlgebraError> {
        for &(g, _) in w.pairs() {
            if g as usize >= self.gens.len() {
                return Err(super::AlgebraError::UnknownGenerator(format!("#{g}")));
            }
        }
        Ok(())
    }

    fn applicable(&self, w: &[GenIdx]) -> Vec<RuleApp> {
        let mut apps = Vec::new();
        for i in 0..w.len().saturating_sub(1) {
            let pair = (w[i], w[i + 1]);
            if self.unit_pairs.contains(&pair) {
                apps.push(RuleApp::Unit(i));
            } else if self.aux_rules.contains_key(&pair) {
                apps.push(RuleApp::Aux(i));
            } else if pair.0 > pair.1 {
                let k = self.exchange.get(&pair).copied().unwrap_or(0);
                apps.push(RuleApp::Swap(i, k));
            }
        }
        apps
    }

    fn apply_rule(
        &self,
        coeff: &PhaseScalar,
        w: &[GenIdx],
        rule: &RuleApp,
    ) -> Vec<(PhaseScalar, Vec<GenIdx>)> {
        match *rule {
            RuleApp::Unit(i) => {
                let mut nw = w.to_vec();
                nw.drain(i..i + 2);
                vec![(coeff.clone(), nw)]
            }
            RuleApp::Aux(i) => {
                let rhs = &self.aux_rules[&(w[i], w[i + 1])];
                rhs.iter()
                    .map(|(c, rw)| {
                        let mut nw = w[..i].to_vec();
                        nw.extend(rw.flatten());
                        nw.extend_from_slice(&w[i + 2..]);
                        (coeff.mul(c), nw)
                    })
                    .collect()
            }
            RuleApp::Swap(i, k) => {
                let mut nw = w.to_vec();
                nw.swap(i, i + 1);
                vec![(coeff.mul_lambda_pow(k), nw)]
            }
        }
    }

    /// Full normal-form expansion of a flat word as (phase, normal word) terms.
    pub fn normal_form_terms(&self, flat: &[GenIdx]) -> Vec<(PhaseScalar, Word)> {
        self.normal_form_terms_with(flat, |apps| apps.first().cloned())
    }

    /// Normal form with a randomized choice of rewrite position; used by the
    /// confluence joinability tests.
    pub fn normal_form_terms_random<R: Rng>(
        &self,
        flat: &[GenIdx],
        rng: &mut R,
    ) -> Vec<(PhaseScalar, Word)> {
        self.normal_form_terms_with(flat, |apps| {
            if apps.is_empty() {
                None
            } else {
                Some(apps[rng.gen_range(0..apps.len())].clone())
            }
        })
    }

    fn normal_form_terms_with(
        &self,
        flat: &[GenIdx],
        mut pick: impl FnMut(&[RuleApp]) -> Option<RuleApp>,
    ) -> Vec<(PhaseScalar, Word)> {
        let mut out: BTreeMap<Word, PhaseScalar> = BTreeMap::new();
        let mut stack = vec![(PhaseScalar::one(), flat.to_vec())];
        while let Some((coeff, w)) = stack.pop() {
            let apps = self.applicable(&w);
            match pick(&apps) {
                Some(rule) => stack.extend(self.apply_rule(&coeff, &w, &rule)),
                None => {
                    let word = Word::from_flat(&w);
                    let entry = out.entry(word).or_insert_with(PhaseScalar::zero);
                    *entry = entry.add(&coeff);
                }
            }
        }
        out.into_iter().filter(|(_, c)| !c.is_zero()).map(|(w, c)| (c, w)).collect()
    }

    /// The θ-deformed 4-sphere coordinate algebra: generators α, α*, β, β*, t
    /// with αβ = λβα, α*β = λ̄βα*, [α,α*] = [β,β*] = 0, t central, t = t*,
    /// and the sphere relation αα* + ββ* + t² - t = 0 oriented as
    /// β·β* → t - t² - α·α*.
    pub fn sphere_theta() -> Presentation {
        let gens = vec![
            GenInfo { name: "α".into(), adjoint: 1 },
            GenInfo { name: "α*".into(), adjoint: 0 },
            GenInfo { name: "β".into(), adjoint: 3 },
            GenInfo { name: "β*".into(), adjoint: 2 },
            GenInfo { name: "t".into(), adjoint: 4 },
        ];
        let (a, astar, b, bstar, t) = (0u8, 1u8, 2u8, 3u8, 4u8);
        let mut exchange = BTreeMap::new();
        exchange.insert((b, a), -1); // βα = λ⁻¹ αβ
        exchange.insert((b, astar), 1); // βα* = λ α*β
        exchange.insert((bstar, a), 1); // β*α = λ αβ*
        exchange.insert((bstar, astar), -1); // β*α* = λ̄ α*β*
        let sphere_rhs = vec![
            (PhaseScalar::one(), Word::generator(t)),
            (PhaseScalar::from_int(-1), Word::power(t, 2)),
            (PhaseScalar::from_int(-1), Word::from_flat(&[a, astar])),
        ];
        let mut aux_rules = BTreeMap::new();
        aux_rules.insert((b, bstar), sphere_rhs.clone());
        aux_rules.insert((bstar, b), sphere_rhs);

        let gen_w = |g: GenIdx| Word::generator(g);
        let one = PhaseScalar::one;
        let neg = || PhaseScalar::from_int(-1);
        let commutator = |x: GenIdx, y: GenIdx, phase: PhaseScalar| {
            RawPoly::new(vec![
                (one(), gen_w(x).concat(&gen_w(y))),
                (phase.neg(), gen_w(y).concat(&gen_w(x))),
            ])
        };
        let relations = vec![
            commutator(a, astar, one()),                       // αα* = α*α
            commutator(a, b, PhaseScalar::lambda_pow(1)),      // αβ = λβα
            commutator(astar, b, PhaseScalar::lambda_pow(-1)), // α*β = λ̄βα*
            commutator(b, bstar, one()),                       // ββ* = β*β
            commutator(t, a, one()),
            commutator(t, astar, one()),
            commutator(t, b, one()),
            commutator(t, bstar, one()),
            RawPoly::new(vec![
                (one(), Word::from_flat(&[a, astar])),
                (one(), Word::from_flat(&[b, bstar])),
                (one(), Word::power(t, 2)),
                (neg(), gen_w(t)),
            ]),
        ];

        Presentation {
            id: PresId::SphereTheta,
            kind: PresKind::Confluent,
            gens,
            exchange,
            unit_pairs: HashSet::new(),
            aux_rules,
            relations,
        }
    }

    /// The noncommutative 2-torus: unitaries u, v with uv = λvu.
    pub fn torus_theta() -> Presentation {
        let gens = vec![
            GenInfo { name: "u".into(), adjoint: 1 },
            GenInfo { name: "u*".into(), adjoint: 0 },
            GenInfo { name: "v".into(), adjoint: 3 },
            GenInfo { name: "v*".into(), adjoint: 2 },
        ];
        let (u, ustar, v, vstar) = (0u8, 1u8, 2u8, 3u8);
        let mut exchange = BTreeMap::new();
        exchange.insert((v, u), -1);
        exchange.insert((v, ustar), 1);
        exchange.insert((vstar, u), 1);
        exchange.insert((vstar, ustar), -1);
        let unit_pairs: HashSet<(GenIdx, GenIdx)> =
            [(u, ustar), (ustar, u), (v, vstar), (vstar, v)].into_iter().collect();

        let one = PhaseScalar::one;
        let unit_rel = |x: GenIdx, y: GenIdx| {
            RawPoly::new(vec![
                (one(), Word::from_flat(&[x, y])),
                (PhaseScalar::from_int(-1), Word::one()),
            ])
        };
        let relations = vec![
            RawPoly::new(vec![
                (one(), Word::from_flat(&[u, v])),
                (PhaseScalar::lambda_pow(1).neg(), Word::from_flat(&[v, u])),
            ]),
            unit_rel(u, ustar),
            unit_rel(ustar, u),
            unit_rel(v, vstar),
            unit_rel(vstar, v),
        ];

        Presentation {
            id: PresId::TorusTheta,
            kind: PresKind::Confluent,
            gens,
            exchange,
            unit_pairs: unit_pairs.into_iter().collect(),
            aux_rules: BTreeMap::new(),
            relations,
        }
    }

    /// Commutative even sphere: self-adjoint commuting ξ_1..ξ_{2m}, t' with
    /// Σ ξ_i² + t'² = 1, oriented as t'² → 1 - Σ ξ_i².
    pub fn sphere_comm(m: u8) -> Presentation {
        let n = 2 * m as usize;
        let mut gens: Vec<GenInfo> = (1..=n)
            .map(|i| GenInfo { name: format!("ξ{i}"), adjoint: (i - 1) as GenIdx })
            .collect();
        gens.push(GenInfo { name: "t'".into(), adjoint: n as GenIdx });
        let tp = n as GenIdx;

        let mut rhs = vec![(PhaseScalar::one(), Word::one())];
        for i in 0..n {
            rhs.push((PhaseScalar::from_int(-1), Word::power(i as GenIdx, 2)));
        }
        let mut aux_rules = BTreeMap::new();
        aux_rules.insert((tp, tp), rhs);

        let mut sphere_terms = vec![(PhaseScalar::from_int(-1), Word::one())];
        for i in 0..=n {
            sphere_terms.push((PhaseScalar::one(), Word::power(i as GenIdx, 2)));
        }
        let mut relations = vec![RawPoly::new(sphere_terms)];
        for i in 0..=n as u8 {
            for j in (i + 1)..=n as u8 {
                relations.push(RawPoly::new(vec![
                    (PhaseScalar::one(), Word::from_flat(&[i, j])),
                    (PhaseScalar::from_int(-1), Word::from_flat(&[j, i])),
                ]));
            }
        }

        Presentation {
            id: PresId::SphereComm(m),
            kind: PresKind::Confluent,
            gens,
            exchange: BTreeMap::new(),
            unit_pairs: HashSet::new(),
            aux_rules,
            relations,
        }
    }

    /// The degree-m Grassmannian presentation on matrix entries e_ij: purely
    /// relational (idempotency is not confluent as a rewrite system); consumed
    /// by bounded-degree ideal membership.
    pub fn grass(r: u8) -> Presentation {
        let r = r as usize;
        let idx = |i: usize, j: usize| (i * r + j) as GenIdx;
        let gens: Vec<GenInfo> = (0..r)
            .flat_map(|i| {
                (0..r).map(move |j| GenInfo {
                    name: format!("e{}{}", i + 1, j + 1),
                    adjoint: idx(j, i),
                })
            })
            .collect();

        // e² = e componentwise: Σ_k e_ik e_kj - e_ij.
        let mut relations = Vec::new();
        for i in 0..r {
            for j in 0..r {
                let mut terms: Vec<(PhaseScalar, Word)> = (0..r)
                    .map(|k| (PhaseScalar::one(), Word::from_flat(&[idx(i, k), idx(k, j)])))
                    .collect();
                terms.push((PhaseScalar::from_int(-1), Word::generator(idx(i, j))));
                relations.push(RawPoly::new(terms));
            }
        }
        // Vanishing degree-zero Chern component: Σ e_ii = r/2.
        let mut trace_terms: Vec<(PhaseScalar, Word)> =
            (0..r).map(|i| (PhaseScalar::one(), Word::generator(idx(i, i)))).collect();
        trace_terms.push((
            PhaseScalar::from_gaussian(GaussianRational::from_ratio(-(r as i64), 2)),
            Word::one(),
        ));
        relations.push(RawPoly::new(trace_terms));

        Presentation {
            id: PresId::Grass(r as u8),
            kind: PresKind::Relational,
            gens,
            exchange: BTreeMap::new(),
            unit_pairs: HashSet::new(),
            aux_rules: BTreeMap::new(),
            relations,
        }
    }
}
