//! Seeded random-value generators shared by unit tests.

use crate::algebra::{NCPoly, Presentation, Word};
use crate::scalar::{GaussianRational, PhaseScalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

pub(crate) fn random_gaussian<R: Rng>(rng: &mut R) -> GaussianRational {
    GaussianRational {
        re: BigRational::new(BigInt::from(rng.gen_range(-3i64..4)), BigInt::from(rng.gen_range(1i64..4))),
        im: BigRational::new(BigInt::from(rng.gen_range(-3i64..4)), BigInt::from(rng.gen_range(1i64..4))),
    }
}

pub(crate) fn random_poly<R: Rng>(p: &Presentation, rng: &mut R) -> NCPoly<PhaseScalar> {
    let mut out = NCPoly::zero(p);
    let nterms = rng.gen_range(1..4);
    for _ in 0..nterms {
        let len = rng.gen_range(0..4);
        let flat: Vec<u8> = (0..len).map(|_| rng.gen_range(0..p.num_gens() as u8)).collect();
        let coeff = PhaseScalar::term(rng.gen_range(-2..3), random_gaussian(rng));
        out = out.add(&NCPoly::from_word(p, &Word::from_flat(&flat), coeff));
    }
    out
}
