use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use torsec::elliptic::rank::{analyze_pair, coset_c, rescaled_c};
use torsec::elliptic::sample::random_pair;

#[test]
fn random_pairs_agree_across_models() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut done = 0;
    for (p, n) in [(11u64, 5u64), (31, 5), (41, 5), (11, 7), (31, 7), (41, 7)] {
        for _ in 0..4 {
            let Some(s) = random_pair(p, n, 12, 200, &mut rng).unwrap() else { continue };
            let a = analyze_pair(s.curve(), s.subgroup(), &mut rng).unwrap();
            assert!(a.counting_identity(), "p={p} N={n}: {a:?}");
            assert!(a.models_agree(n as usize), "p={p} N={n}: {a:?}");
            assert_eq!(rescaled_c(s.curve(), s.subgroup(), &mut rng).unwrap(), a.c);
            assert_eq!(coset_c(s.curve(), s.subgroup(), &s.translate).unwrap(), a.c);
            done += 1;
        }
    }
    assert!(done >= 20, "only {done} pairs sampled");
}
