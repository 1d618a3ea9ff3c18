//! Algebra homomorphisms between presentations: each source generator maps to
//! a polynomial in the target, verified against every source relation (and
//! against the involution) at construction time.

use super::poly::{Coeff, NCPoly};
use super::presentation::Presentation;
use super::word::GenIdx;
use super::AlgebraError;
use crate::scalar::{GaussianRational, PhaseScalar};
use crate::trig::{TrigCoeff, TrigMono};

pub struct AlgebraHom<C: Coeff> {
    name: String,
    images: Vec<NCPoly<C>>,
}

impl<C: Coeff> AlgebraHom<C> {
    /// Builds a homomorphism and verifies it: every source relation must map
    /// to zero and images must intertwine the involutions.
    pub fn new(
        name: &str,
        src: &Presentation,
        tgt: &Presentation,
        images: Vec<NCPoly<C>>,
    ) -> Result<Self, AlgebraError> {
        assert_eq!(images.len(), src.num_gens(), "one image per generator");
        let hom = Self { name: name.to_string(), images };
        for (i, rel) in src.relations().iter().enumerate() {
            let image = hom.apply_raw(&rel.terms, tgt)?;
            if !image.is_zero() {
                return Err(AlgebraError::NotAHomomorphism(format!(
                    "{}: relation #{i} maps to {image}",
                    hom.name
                )));
            }
        }
        for g in 0..src.num_gens() as GenIdx {
            let adj_image = hom.images[src.adjoint_gen(g) as usize].clone();
            if adj_image != hom.images[g as usize].adjoint(tgt) {
                return Err(AlgebraError::NotAHomomorphism(format!(
                    "{}: image of {}* is not image({})*",
                    hom.name,
                    src.gen_name(g),
                    src.gen_name(g)
                )));
            }
        }
        Ok(hom)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    fn apply_raw(
        &self,
        terms: &[(PhaseScalar, super::word::Word)],
        tgt: &Presentation,
    ) -> Result<NCPoly<C>, AlgebraError> {
        let mut out = NCPoly::<C>::zero(tgt);
        for (c, w) in terms {
            let mut acc = NCPoly::<C>::constant(tgt, C::from_phase(c));
            for g in w.flatten() {
                acc = acc.mul(&self.images[g as usize], tgt)?;
            }
            out = out.add(&acc);
        }
        Ok(out)
    }
}

/// Applies a verified homomorphism to a normalized polynomial.
pub fn apply_hom<C: Coeff>(
    p: &NCPoly<PhaseScalar>,
    h: &AlgebraHom<C>,
    tgt: &Presentation,
) -> Result<NCPoly<C>, AlgebraError> {
    let terms: Vec<(PhaseScalar, super::word::Word)> =
        p.terms().map(|(w, c)| (c.clone(), w.clone())).collect();
    h.apply_raw(&terms, tgt)
}

/// Coefficient-level specialization λ := a Gaussian-rational unit. The result
/// of any ring operation must be re-specialized, since rewrites reintroduce
/// symbolic phases; `x·y ↦ specialize(specialize(x)·specialize(y))` is the
/// homomorphism property.
pub fn lambda_specialize<C: Coeff>(p: &NCPoly<C>, unit: &GaussianRational) -> NCPoly<C>
where
    C: SpecializeLambda,
{
    p.map_coeffs(|c| c.specialize_lambda(unit))
}

pub trait SpecializeLambda {
    fn specialize_lambda(&self, unit: &GaussianRational) -> Self;
}

impl SpecializeLambda for PhaseScalar {
    fn specialize_lambda(&self, unit: &GaussianRational) -> Self {
        PhaseScalar::specialize_lambda(self, unit)
    }
}

/// The parametrization of the deformed sphere inside (trig) ⊗ (torus):
/// α ↦ (u/2) c_φ c_ψ, β ↦ (v/2) s_φ c_ψ, t ↦ 1/2 + (1/2) s_ψ.
pub fn torus_embed(
    sphere: &Presentation,
    torus: &Presentation,
) -> Result<AlgebraHom<TrigCoeff>, AlgebraError> {
    let half = PhaseScalar::from_ratio(1, 2);
    let cc = TrigCoeff::monomial(TrigMono { c_phi: 1, c_psi: 1, ..TrigMono::ONE }, half.clone());
    let sc = TrigCoeff::monomial(TrigMono { s_phi: 1, c_psi: 1, ..TrigMono::ONE }, half.clone());
    let gen = |g: GenIdx| NCPoly::<TrigCoeff>::generator(torus, g);
    let alpha = gen(0).scale(&cc);
    let alpha_star = gen(1).scale(&cc);
    let beta = gen(2).scale(&sc);
    let beta_star = gen(3).scale(&sc);
    let t = NCPoly::<TrigCoeff>::constant(torus, TrigCoeff::constant(half.clone())).add(
        &NCPoly::<TrigCoeff>::constant(
            torus,
            TrigCoeff::monomial(TrigMono { s_psi: 1, ..TrigMono::ONE }, half),
        ),
    );
    AlgebraHom::new("torus_embed", sphere, torus, vec![alpha, alpha_star, beta, beta_star, t])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_embed_kills_presentation() {
        let sphere = Presentation::sphere_theta();
        let torus = Presentation::torus_theta();
        // Construction verifies all relations; failure would be an Err here.
        let h = torus_embed(&sphere, &torus).unwrap();
        assert_eq!(h.name(), "torus_embed");
    }

    #[test]
    fn broken_images_rejected() {
        let sphere = Presentation::sphere_theta();
        let torus = Presentation::torus_theta();
        // α ↦ u without the trig factor violates the sphere relation.
        let gen = |g: GenIdx| NCPoly::<TrigCoeff>::generator(&torus, g);
        let t = NCPoly::<TrigCoeff>::constant(&torus, TrigCoeff::constant(PhaseScalar::from_ratio(1, 2)));
        let images = vec![gen(0), gen(1), gen(2), gen(3), t];
        assert!(AlgebraHom::new("broken", &sphere, &torus, images).is_err());
    }

    #[test]
    fn lambda_one_collapses_commutator() {
        let p = Presentation::sphere_theta();
        let a = NCPoly::<PhaseScalar>::generator(&p, 0);
        let b = NCPoly::<PhaseScalar>::generator(&p, 2);
        let comm = a.mul(&b, &p).unwrap().sub(&b.mul(&a, &p).unwrap());
        assert!(!comm.is_zero());
        assert!(lambda_specialize(&comm, &GaussianRational::one()).is_zero());
    }
}
