//! Randomized properties: path augmentation against a brute-force
//! insertability check, serialization round trips, and reversal laws.

use proptest::prelude::*;

use tourspan::generate::random_tournament;
use tourspan::hamilton::{augment, hamiltonian_path_any};
use tourspan::tournament::bits;
use tourspan::Tournament;

proptest! {
    #[test]
    fn augment_matches_bruteforce_insertability(seed in any::<u64>(), mask in 1u64..255) {
        let t = random_tournament(8, seed).unwrap();
        let mask = mask | 1; // at least vertex 0, never all 8 vertices
        prop_assume!(mask.count_ones() >= 2);
        let (sub, map) = t.induced_mask(mask).unwrap();
        let p = map.lift_path(&hamiltonian_path_any(&sub));
        for x in bits(t.full_mask() & !mask) {
            let verts = p.vertices();
            let insertable = verts
                .windows(2)
                .any(|w| t.dominates(w[0], x) && t.dominates(x, w[1]));
            match augment(&t, &p, x) {
                Ok(q) => {
                    prop_assert!(insertable);
                    prop_assert!(q.validate(&t).is_ok());
                    prop_assert_eq!(q.first(), p.first());
                    prop_assert_eq!(q.last(), p.last());
                    prop_assert_eq!(q.vertices().len(), verts.len() + 1);
                    prop_assert!(q.vertices().contains(&x));
                }
                Err(_) => prop_assert!(!insertable),
            }
        }
    }

    #[test]
    fn tourn_v1_round_trip(n in 2usize..=20, seed in any::<u64>()) {
        let t = random_tournament(n, seed).unwrap();
        let text = t.to_tourn_v1();
        let back = Tournament::from_tourn_v1(&text).unwrap();
        prop_assert_eq!(t, back);
    }

    #[test]
    fn reverse_is_an_involution(n in 2usize..=20, seed in any::<u64>()) {
        let t = random_tournament(n, seed).unwrap();
        prop_assert_eq!(t.reverse().reverse(), t.clone());
        // reversal swaps the degree profile
        let p = t.degree_profile();
        let q = t.reverse().degree_profile();
        prop_assert_eq!(p.out_degrees, q.in_degrees);
        prop_assert_eq!(p.irregularity, q.irregularity);
    }
}
