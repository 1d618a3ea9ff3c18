use ncsphere_core::algebra::Presentation;
use ncsphere_core::spectral::*;
use ncsphere_core::chains::{boundary_b_counting, ch_even, lambda_even};

fn main() {
    let ctx = DiracContext::new().unwrap();
    let sphere = Presentation::sphere_theta();
    let e = build_e_theta(&sphere);

    let t0 = std::time::Instant::now();
    let ch2 = ch_even(&e, 2, &sphere).unwrap();
    println!("ch2 terms: {} ({:?})", ch2.num_terms(), t0.elapsed());

    let t0 = std::time::Instant::now();
    let (bch2, produced) = boundary_b_counting(&ch2, &sphere).unwrap();
    println!("b ch2 zero: {} intermediate terms: {} ({:?})", bch2.is_zero(), produced, t0.elapsed());

    let t0 = std::time::Instant::now();
    let (report, _computed) = chern2_explicit_check(&e, &sphere).unwrap();
    println!("five-component match: {} diffs: {:?} ({:?})", report.matches, report.component_diffs, t0.elapsed());

    let t0 = std::time::Instant::now();
    let entries = embed_matrix(&e, &ctx).unwrap();
    let (qr, q) = quartic_invariant(&entries, &ctx).unwrap();
    println!("quartic pass: {} constant: {:?} residual: {:?} defect: {:?} ({:?})",
        qr.pass(), qr.constant.map(|c| c.to_string()), qr.residual_masks, qr.gamma5_defect, t0.elapsed());

    // pi(ch2) vs quartic: pi(ch2) = 4 * lambda_2 * quartic
    let t0 = std::time::Instant::now();
    let pi = pi_map(&ch2, &ctx).unwrap();
    let lhs = pi;
    let scale = lambda_even(2).mul(&ncsphere_core::scalar::PhaseScalar::from_int(4));
    let rhs = q.scale_phase(&scale);
    println!("pi(ch2) == 4*λ₂*quartic: {} ({:?})", lhs == rhs, t0.elapsed());

    // Independent λ=1 Clifford-model route, both orientations.
    for pairing in [CliffordPairing::QuaternionCompatible, CliffordPairing::ComplexPairs] {
        let t0 = std::time::Instant::now();
        let (qc, _) = quartic_clifford_lambda1(&ctx, pairing).unwrap();
        println!("clifford λ=1 {:?} pass: {} constant: {:?} ({:?})",
            pairing, qc.pass(), qc.constant.map(|c| c.to_string()), t0.elapsed());
    }
    // The compatible pairing reproduces the canonical entries at λ = 1.
    let cl = clifford_model_entries(&ctx, CliffordPairing::QuaternionCompatible);
    let emb = embed_matrix(&e, &ctx).unwrap();
    let same = cl.iter().zip(emb.iter()).all(|(a, b)|
        a.specialize_lambda_one() == b.specialize_lambda_one());
    println!("quaternion-compatible entries == embed(e) at λ=1: {same}");

    // λ=1 collapse of the five components vs antisymmetrization.
    let comps = five_component_display();
    let letters: [[&str; 4]; 5] = [
        ["α", "α*", "β", "β*"],
        ["t", "α*", "β", "β*"],
        ["t", "α", "β", "β*"],
        ["t", "α*", "α", "β*"],
        ["t", "α", "α*", "β"],
    ];
    for ((head, lines), lets) in comps.iter().zip(letters.iter()) {
        let chain = display_to_chain(lines, &sphere).specialize_lambda_one();
        let anti = antisymmetrize4(*lets, &sphere);
        let eq = chain == anti;
        let eqneg = chain == anti.scale(&ncsphere_core::scalar::PhaseScalar::from_int(-1));
        println!("λ=1 collapse {head}: == antisym {eq}, == -antisym {eqneg}");
    }
}
