//! Normal-form and involution behaviour over the built-in presentations.

use super::*;
use crate::scalar::PhaseScalar;
use proptest::prelude::*;

fn gen<C: Coeff>(p: &Presentation, name: &str) -> NCPoly<C> {
    NCPoly::generator(p, p.lookup_gen(name).unwrap())
}

#[test]
fn beta_alpha_swaps_with_inverse_phase() {
    let p = Presentation::sphere_theta();
    let w = parse_word("β·α", &p).unwrap();
    let nf = normal_form(&w, &p).unwrap();
    let expected = parse_poly("(1) λ^-1 · α·β", &p).unwrap();
    assert_eq!(nf, expected);
}

#[test]
fn empty_word_is_unit() {
    let p = Presentation::torus_theta();
    let nf = normal_form(&Word::one(), &p).unwrap();
    assert_eq!(nf, NCPoly::one(&p));
}

#[test]
fn sphere_relation_orientation() {
    let p = Presentation::sphere_theta();
    let w = parse_word("β·β*", &p).unwrap();
    let nf = normal_form(&w, &p).unwrap();
    let expected = parse_poly("(1) · t + (-1) · t^2 + (-1) · α·α*", &p).unwrap();
    assert_eq!(nf, expected);
    // β*·β reduces identically (the commutation relation ββ* = β*β).
    let w2 = parse_word("β*·β", &p).unwrap();
    assert_eq!(normal_form(&w2, &p).unwrap(), expected);
}

#[test]
fn torus_unitarity() {
    let p = Presentation::torus_theta();
    let w = parse_word("u·u*", &p).unwrap();
    assert_eq!(normal_form(&w, &p).unwrap(), NCPoly::one(&p));
}

#[test]
fn normal_form_rejects_relational() {
    let p = Presentation::grass(2);
    let w = parse_word("e11·e12", &p).unwrap();
    assert!(matches!(normal_form(&w, &p), Err(AlgebraError::UnsupportedKind(_))));
}

#[test]
fn normal_form_rejects_unknown_generator() {
    let p = Presentation::torus_theta();
    let w = Word::generator(9);
    assert!(matches!(normal_form(&w, &p), Err(AlgebraError::UnknownGenerator(_))));
}

#[test]
fn product_phases_differ_by_lambda() {
    let p = Presentation::sphere_theta();
    let a: NCPoly = gen(&p, "α");
    let b: NCPoly = gen(&p, "β");
    let ab = nc_mul(&a, &b, &p).unwrap();
    let ba = nc_mul(&b, &a, &p).unwrap();
    assert_eq!(ab, ba.scale(&PhaseScalar::lambda_pow(1)));
}

#[test]
fn unitary_chain_collapses() {
    let p = Presentation::torus_theta();
    let u: NCPoly = gen(&p, "u");
    let v: NCPoly = gen(&p, "v");
    let vs: NCPoly = gen(&p, "v*");
    let us: NCPoly = gen(&p, "u*");
    let uv = nc_mul(&u, &v, &p).unwrap();
    let vsus = nc_mul(&vs, &us, &p).unwrap();
    assert_eq!(nc_mul(&uv, &vsus, &p).unwrap(), NCPoly::one(&p));
}

#[test]
fn mixed_presentations_error() {
    let sphere = Presentation::sphere_theta();
    let torus = Presentation::torus_theta();
    let a: NCPoly = gen(&sphere, "α");
    let u: NCPoly = gen(&torus, "u");
    assert!(matches!(
        nc_mul(&a, &u, &sphere),
        Err(AlgebraError::PresentationMismatch(_, _))
    ));
}

#[test]
fn adjoint_of_phase_times_word() {
    let p = Presentation::sphere_theta();
    let a: NCPoly = gen(&p, "α");
    let b: NCPoly = gen(&p, "β");
    let x = nc_mul(&a, &b, &p).unwrap().scale(&PhaseScalar::lambda_pow(1));
    // (λ αβ)* = λ̄ β*α*, renormalized.
    let expected = parse_poly("(1) λ^-2 · α*·β*", &p).unwrap();
    assert_eq!(nc_adjoint(&x, &p), expected);
}

#[test]
fn t_is_self_adjoint() {
    let p = Presentation::sphere_theta();
    let t: NCPoly = gen(&p, "t");
    assert_eq!(nc_adjoint(&t, &p), t);
}

#[test]
fn scalar_part_examples() {
    let p = Presentation::sphere_theta();
    let a: NCPoly = gen(&p, "α");
    let t: NCPoly = gen(&p, "t");
    let x = NCPoly::constant(&p, PhaseScalar::from_int(3)).add(&a.scale(&PhaseScalar::from_int(2)));
    assert_eq!(scalar_part(&x).unwrap(), PhaseScalar::from_int(3));

    let y = t.sub(&NCPoly::constant(&p, PhaseScalar::from_ratio(1, 2)));
    assert_eq!(scalar_part(&y).unwrap(), PhaseScalar::from_ratio(-1, 2));

    let astar: NCPoly = gen(&p, "α*");
    let z = NCPoly::constant(&p, PhaseScalar::lambda_pow(1)).add(&nc_mul(&a, &astar, &p).unwrap());
    assert_eq!(scalar_part(&z).unwrap(), PhaseScalar::lambda_pow(1));
}

#[test]
fn scalar_part_rejects_trig_coefficients() {
    let p = Presentation::torus_theta();
    let x = NCPoly::<crate::trig::TrigCoeff>::one(&p);
    assert!(matches!(scalar_part(&x), Err(AlgebraError::TrigScalarPart)));
}

#[test]
fn torus_embed_kills_sphere_polynomial() {
    let sphere = Presentation::sphere_theta();
    let torus = Presentation::torus_theta();
    let h = torus_embed(&sphere, &torus).unwrap();
    let rel = parse_poly("(1) · α·α* + (1) · β·β* + (1) · t^2 + (-1) · t", &sphere).unwrap();
    // β·β* renormalizes on parse, so the normalized image must still vanish.
    assert!(apply_hom(&rel, &h, &torus).unwrap().is_zero());
    let comm = parse_poly("(1) · α·β + (-1) λ^1 · β·α", &sphere).unwrap();
    assert!(apply_hom(&comm, &h, &torus).unwrap().is_zero());
}

#[test]
fn beta_beta_star_is_central() {
    let p = Presentation::sphere_theta();
    let bbs = normal_form(&parse_word("β·β*", &p).unwrap(), &p).unwrap();
    for g in 0..p.num_gens() as u8 {
        let x: NCPoly = NCPoly::generator(&p, g);
        let left = nc_mul(&x, &bbs, &p).unwrap();
        let right = nc_mul(&bbs, &x, &p).unwrap();
        assert_eq!(left, right, "ββ* must commute with {}", p.gen_name(g));
    }
}

#[test]
fn torus_embed_injective_on_low_degree_basis() {
    let sphere = Presentation::sphere_theta();
    let torus = Presentation::torus_theta();
    let h = torus_embed(&sphere, &torus).unwrap();
    // All normal-form monomials of degree ≤ 4.
    let mut basis = std::collections::BTreeSet::new();
    let mut frontier = vec![Vec::<u8>::new()];
    for _ in 0..4 {
        let mut next = Vec::new();
        for w in &frontier {
            for g in 0..sphere.num_gens() as u8 {
                let mut nw = w.clone();
                nw.push(g);
                next.push(nw);
            }
        }
        for w in &next {
            for (_, nf) in sphere.normal_form_terms(w) {
                basis.insert(nf);
            }
        }
        frontier = next;
    }
    let mut images = std::collections::BTreeMap::new();
    for w in &basis {
        let poly = NCPoly::from_word(&sphere, w, PhaseScalar::one());
        let img = apply_hom(&poly, &h, &torus).unwrap();
        let key = format!("{img}");
        if let Some(prev) = images.insert(key, w.clone()) {
            panic!("torus_embed collides on {prev:?} and {w:?}");
        }
    }
    assert!(basis.len() > 100, "expected a rich degree-4 basis, got {}", basis.len());
}

#[test]
fn rewriting_preserves_ideal_membership() {
    // For each relation r and seeded random x, y: x·r·y normalizes to zero
    // (r itself normalizes to zero, and rewriting respects the product).
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for p in [Presentation::sphere_theta(), Presentation::torus_theta(), Presentation::sphere_comm(1)]
    {
        for rel in p.relations() {
            for _ in 0..10 {
                let len_x = rng.gen_range(0..3);
                let len_y = rng.gen_range(0..3);
                let x: Vec<u8> =
                    (0..len_x).map(|_| rng.gen_range(0..p.num_gens() as u8)).collect();
                let y: Vec<u8> =
                    (0..len_y).map(|_| rng.gen_range(0..p.num_gens() as u8)).collect();
                let mut total = NCPoly::<PhaseScalar>::zero(&p);
                for (c, w) in &rel.terms {
                    let mut flat = x.clone();
                    flat.extend(w.flatten());
                    flat.extend(y.iter().copied());
                    total = total.add(&NCPoly::from_word(&p, &Word::from_flat(&flat), c.clone()));
                }
                assert!(total.is_zero(), "x·r·y must normalize to zero in {}", p.id());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn involution_is_involutive(seed in 0u64..1000) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let p = Presentation::sphere_theta();
        let x = crate::testutil::random_poly(&p, &mut rng);
        prop_assert_eq!(nc_adjoint(&nc_adjoint(&x, &p), &p), x);
    }

    #[test]
    fn adjoint_reverses_products(seed in 0u64..1000) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let p = Presentation::torus_theta();
        let x = crate::testutil::random_poly(&p, &mut rng);
        let y = crate::testutil::random_poly(&p, &mut rng);
        let lhs = nc_adjoint(&nc_mul(&x, &y, &p).unwrap(), &p);
        let rhs = nc_mul(&nc_adjoint(&y, &p), &nc_adjoint(&x, &p), &p).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn normal_form_is_idempotent(seed in 0u64..1000) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let p = Presentation::sphere_theta();
        let len = rng.gen_range(0..6);
        let flat: Vec<u8> = (0..len).map(|_| rng.gen_range(0..p.num_gens() as u8)).collect();
        let nf = p.normal_form_terms(&flat);
        for (_, w) in &nf {
            let again = p.normal_form_terms(&w.flatten());
            prop_assert_eq!(again.len(), 1);
            prop_assert_eq!(&again[0].1, w);
            prop_assert!(again[0].0.is_one());
        }
    }

    #[test]
    fn random_rewrite_orders_join(seed in 0u64..500) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        for p in [Presentation::sphere_theta(), Presentation::torus_theta(), Presentation::sphere_comm(2)] {
            let len = rng.gen_range(0..7);
            let flat: Vec<u8> = (0..len).map(|_| rng.gen_range(0..p.num_gens() as u8)).collect();
            let det = p.normal_form_terms(&flat);
            let rnd = p.normal_form_terms_random(&flat, &mut rng);
            prop_assert_eq!(det, rnd);
        }
    }
}
