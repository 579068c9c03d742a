//! Randomized invariant checks for the combinatorial layer, the polynomial
//! utilities, and the projective-geometry predicates.

use num::complex::Complex64;
use num::{BigRational, FromPrimitive, Zero};
use proptest::prelude::*;

use real_schubert::nets::{enumerate_nets, net_to_ssyt, ssyt_to_net, BlockStructure};
use real_schubert::projective::{
    classes_equal, curve_matrix, incidence_check, rational_from_subspace, subspace_from_rational,
    RationalClass, Subspace,
};
use real_schubert::{
    enumerate_ssyt, kostka, kostka_closed_form, poly, random_separated_config, ContentVector,
};

fn content_strategy(max_d: usize) -> impl Strategy<Value = ContentVector> {
    (2..=max_d).prop_flat_map(|d| {
        let all = ContentVector::enumerate_all(d);
        let n = all.len();
        (0..n).prop_map(move |i| all[i].clone())
    })
}

proptest! {
    #[test]
    fn kostka_is_permutation_invariant(
        content in content_strategy(6).prop_flat_map(|c| {
            let base = kostka(&c);
            Just(c.entries().to_vec()).prop_shuffle().prop_map(move |e| (e, base.clone()))
        })
    ) {
        let (entries, expected) = content;
        let shuffled = ContentVector::new(entries).unwrap();
        prop_assert_eq!(kostka(&shuffled), expected);
    }

    #[test]
    fn closed_forms_agree_with_the_recurrence(content in content_strategy(7)) {
        if let Some(value) = kostka_closed_form(&content) {
            prop_assert_eq!(value, kostka(&content));
        }
    }

    #[test]
    fn ssyt_enumeration_matches_kostka(content in content_strategy(5)) {
        let tableaux = enumerate_ssyt(&content);
        prop_assert_eq!(
            num::BigUint::from(tableaux.len()),
            kostka(&content)
        );
        for t in &tableaux {
            prop_assert!(t.matches_content(&content));
        }
    }

    #[test]
    fn net_tableau_round_trips_are_identities(content in content_strategy(5)) {
        let blocks = BlockStructure::new(content.clone());
        let nets = enumerate_nets(&blocks);
        prop_assert_eq!(num::BigUint::from(nets.len()), kostka(&content));
        for net in &nets {
            let tableau = net_to_ssyt(net).unwrap();
            prop_assert!(tableau.matches_content(&content));
            let back = ssyt_to_net(&tableau, &blocks).unwrap();
            prop_assert_eq!(&back, net);
        }
        for tableau in enumerate_ssyt(&content) {
            let net = ssyt_to_net(&tableau, &blocks).unwrap();
            prop_assert_eq!(net_to_ssyt(&net).unwrap(), tableau);
        }
    }

    #[test]
    fn polynomials_vanish_at_their_roots(
        roots in proptest::collection::vec((-20i64..20, 1usize..3), 1..4)
    ) {
        let pairs: Vec<(BigRational, usize)> = roots
            .iter()
            .map(|&(r, m)| (BigRational::from_i64(r).unwrap(), m))
            .collect();
        let c = poly::from_roots(&pairs);
        let degree: usize = roots.iter().map(|&(_, m)| m).sum();
        prop_assert_eq!(poly::degree(&c), Some(degree));
        for (r, m) in &pairs {
            let mut rem = c.clone();
            for _ in 0..*m {
                prop_assert!(poly::eval(&rem, r).is_zero());
                let (quot, _) = poly::synth_div(&rem, r);
                rem = quot;
            }
        }
    }

    #[test]
    fn division_reassembles_the_numerator(
        num_c in proptest::collection::vec(-9i64..10, 1..7),
        den_c in proptest::collection::vec(-9i64..10, 1..5)
    ) {
        let to_rat = |v: &[i64]| -> Vec<BigRational> {
            v.iter().map(|&x| BigRational::from_i64(x).unwrap()).collect()
        };
        let num = to_rat(&num_c);
        let mut den = to_rat(&den_c);
        poly::trim(&mut den);
        prop_assume!(poly::degree(&den).is_some());
        let (quot, rem) = poly::divrem(&num, &den);
        prop_assert!(poly::degree(&rem).map_or(true, |r| r < den.len() - 1));
        let mut rebuilt = poly::mul(&quot, &den);
        rebuilt = poly::add(&rebuilt, &rem);
        let mut expected = num.clone();
        poly::trim(&mut expected);
        poly::trim(&mut rebuilt);
        prop_assert_eq!(rebuilt, expected);
    }

    #[test]
    fn class_normalization_ignores_scaling(
        p_c in proptest::collection::vec(-5.0f64..5.0, 4),
        q_c in proptest::collection::vec(-5.0f64..5.0, 3),
        scale_re in 0.1f64..4.0,
        scale_im in -2.0f64..2.0,
        flip in proptest::bool::ANY
    ) {
        let s = if flip {
            Complex64::new(-scale_re, scale_im)
        } else {
            Complex64::new(scale_re, scale_im)
        };
        let lift = |v: &[f64]| -> Vec<Complex64> {
            v.iter().map(|&x| Complex64::new(x, 0.0)).collect()
        };
        let mut p = lift(&p_c);
        p.push(Complex64::new(1.0, 0.0));
        let q = lift(&q_c);
        let base = RationalClass::new(p.clone(), q.clone());
        prop_assume!(base.is_ok());
        let base = base.unwrap();
        let scaled = RationalClass::new(
            p.iter().map(|z| z * s).collect(),
            q.iter().map(|z| z * s).collect(),
        ).unwrap();
        prop_assert!(classes_equal(&base, &scaled, 1e-9));
    }

    #[test]
    fn canonical_class_survives_a_change_of_spanning_rows(
        p_c in proptest::collection::vec(-4.0f64..4.0, 4),
        q_c in proptest::collection::vec(-4.0f64..4.0, 3),
        a in 0.5f64..2.0,
        b in -1.5f64..1.5,
        c in -1.5f64..1.5,
        d in 0.5f64..2.0
    ) {
        prop_assume!((a * d - b * c).abs() > 0.2);
        let lift = |v: &[f64]| -> Vec<Complex64> {
            v.iter().map(|&x| Complex64::new(x, 0.0)).collect()
        };
        let mut p = lift(&p_c);
        p.push(Complex64::new(1.0, 0.0));
        let q = lift(&q_c);
        let class = RationalClass::new(p, q);
        prop_assume!(class.is_ok());
        let class = class.unwrap();
        let x = subspace_from_rational(&class);
        let (r0, r1) = x.rows();
        let mix = |s: f64, t: f64| -> Vec<Complex64> {
            r0.iter().zip(r1).map(|(u, v)| u * s + v * t).collect()
        };
        let mixed = Subspace::new(mix(a, b), mix(c, d)).unwrap();
        let recovered = rational_from_subspace(&mixed);
        prop_assume!(recovered.is_ok());
        prop_assert!(classes_equal(&class, &recovered.unwrap(), 1e-7));
    }

    #[test]
    fn constructed_incidences_are_detected(
        d in 4usize..7,
        x0 in -2.0f64..2.0,
        gap in 0.3f64..1.2,
        extra in -3.0f64..3.0,
        noise in proptest::collection::vec(-1.0f64..1.0, 8)
    ) {
        let pts: Vec<(Complex64, usize)> = (0..3)
            .map(|j| (Complex64::new(x0 + gap * j as f64, 0.0), 1))
            .collect();
        let w = curve_matrix(&pts, d).unwrap();
        // A row vanishing at every node pairs to zero with each secant column,
        // so any plane containing it meets the secant span.
        let mut roots = pts.clone();
        roots.push((Complex64::new(extra, 0.0), 1));
        let mut member = poly::from_roots(&roots);
        member.resize(d + 1, Complex64::new(0.0, 0.0));
        let other: Vec<Complex64> = (0..=d)
            .map(|i| Complex64::new(noise[i % noise.len()] + (i as f64 * 0.37).cos(), 0.0))
            .collect();
        let x = Subspace::new(member, other);
        prop_assume!(x.is_ok());
        prop_assert!(incidence_check(&x.unwrap(), &w, 1e-7));
    }

    #[test]
    fn generic_planes_clear_a_two_point_block(
        p_c in proptest::collection::vec(-3.0f64..3.0, 6),
        q_c in proptest::collection::vec(-3.0f64..3.0, 6),
        x1 in -2.0f64..0.0,
        dx in 0.5f64..2.0
    ) {
        let d = 5;
        let z1 = Complex64::new(x1, 0.0);
        let z2 = Complex64::new(x1 + dx, 0.0);
        let pts = [(z1, 1_usize), (z2, 1_usize)];
        let w = curve_matrix(&pts, d).unwrap();
        let lift = |v: &[f64]| -> Vec<Complex64> {
            v.iter().map(|&x| Complex64::new(x, 0.0)).collect()
        };
        let p = lift(&p_c);
        let q = lift(&q_c);
        let (pa, pb) = (poly::eval(&p, &z1), poly::eval(&p, &z2));
        let (qa, qb) = (poly::eval(&q, &z1), poly::eval(&q, &z2));
        let det = pa * qb - pb * qa;
        let scale = (pa.norm() + pb.norm()) * (qa.norm() + qb.norm()) + 1e-9;
        // no combination of the rows vanishes at both nodes
        prop_assume!(det.norm() > 1e-3 * scale);
        let x = Subspace::new(p, q);
        prop_assume!(x.is_ok());
        prop_assert!(!incidence_check(&x.unwrap(), &w, 1e-7));
    }

    #[test]
    fn generated_configs_are_separated_and_carry_their_content(
        content in content_strategy(6),
        seed in 0u64..1000
    ) {
        let config = random_separated_config(content.d(), &content, seed).unwrap();
        prop_assert!(config.is_separated());
        prop_assert!(config.separation_margin() > 0.0);
        prop_assert_eq!(config.content().unwrap(), content);
    }
}
