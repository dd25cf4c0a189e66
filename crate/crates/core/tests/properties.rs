use braidcong::congruence::{in_congruence, is_pure, random_member};
use braidcong::dihedral::{derive_certificate, f_embed, q_m, random_kernel_word, verify_certificate};
use braidcong::rep::{burau, kure_sign, rho_v, rho_v_determinant};
use braidcong::{parse_word, BraidWord, Generator};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn word_on(n: usize, max_len: usize, classical: bool) -> impl Strategy<Value = BraidWord> {
    let kinds = if classical { 2u8 } else { 3 };
    prop::collection::vec((0..kinds, 1..n), 0..=max_len).prop_map(move |raw| {
        let letters = raw
            .into_iter()
            .map(|(k, i)| match k {
                0 => Generator::sigma(i),
                1 => Generator::sigma_inv(i),
                _ => Generator::tau(i),
            })
            .collect();
        BraidWord::new(n, letters).unwrap()
    })
}

fn word(max_len: usize) -> impl Strategy<Value = BraidWord> {
    (2usize..=4).prop_flat_map(move |n| word_on(n, max_len, false))
}

proptest! {
    #[test]
    fn display_parse_roundtrip(w in word(16)) {
        prop_assert_eq!(parse_word(&w.to_string(), w.strands()).unwrap(), w);
    }

    #[test]
    fn rho_v_is_multiplicative((u, v) in (2usize..=4).prop_flat_map(|n| (word_on(n, 10, false), word_on(n, 10, false)))) {
        let uv = u.concat(&v).unwrap();
        prop_assert_eq!(rho_v(&uv), rho_v(&u).mul(&rho_v(&v)).unwrap());
        prop_assert!(rho_v(&u).mul(&rho_v(&u.inverse())).unwrap().is_identity());
    }

    #[test]
    fn classical_words_match_burau_at_minus_one(w in (2usize..=4).prop_flat_map(|n| word_on(n, 12, true))) {
        prop_assert_eq!(burau(&w).unwrap().specialize(-1).unwrap(), rho_v(&w));
    }

    #[test]
    fn determinant_is_tau_parity(w in word(20)) {
        prop_assert_eq!(rho_v_determinant(&w), kure_sign(&w));
        prop_assert_eq!(rho_v(&w).determinant(), kure_sign(&w));
    }

    #[test]
    fn level_two_is_pure(w in word(14)) {
        prop_assert_eq!(in_congruence(&w, 2).unwrap().in_subgroup, is_pure(&w));
    }

    #[test]
    fn two_strand_image_is_f_of_q(w in word_on(2, 24, false), m in 3u64..=12) {
        prop_assert_eq!(f_embed(q_m(&w, 0).unwrap()), rho_v(&w));
        prop_assert_eq!(in_congruence(&w, m).unwrap().in_subgroup, q_m(&w, m).unwrap().is_identity());
    }

    #[test]
    fn kernel_words_certify(seed in any::<u64>(), m in 3u64..=9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = random_kernel_word(m, 3, 5, &mut rng).unwrap();
        let cert = derive_certificate(&w, m).unwrap();
        prop_assert!(verify_certificate(&cert).unwrap());
        if !cert.steps.is_empty() {
            let mut forged = cert.clone();
            forged.steps[0].sign = -forged.steps[0].sign;
            prop_assert!(!verify_certificate(&forged).unwrap());
        }
    }

    #[test]
    fn constructed_members_lie_in_level(seed in any::<u64>(), n in 2usize..=4, m in 1u64..=12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = random_member(n, m, 2, 4, &mut rng).unwrap();
        prop_assert!(in_congruence(&w, m).unwrap().in_subgroup);
    }
}
