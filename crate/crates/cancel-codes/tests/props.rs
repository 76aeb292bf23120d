//! Randomized invariants: format round-trips, engine agreement, witness
//! replay, and downward closure under member deletion.

use cancel_codes::family::io::{parse_bits, parse_fam, write_bits, write_fam};
use cancel_codes::family::{Mask, SetFamily, Verdict};
use proptest::prelude::*;

fn arb_family(max_n: usize, max_m: usize) -> impl Strategy<Value = SetFamily> {
    (1..=max_n).prop_flat_map(move |n| {
        let cap = max_m.min(1 << n.min(16));
        proptest::collection::btree_set(0u128..(1u128 << n), 0..=cap)
            .prop_map(move |set| SetFamily::new(n, set.into_iter().collect()).unwrap())
    })
}

proptest! {
    #[test]
    fn fam_text_roundtrip(f in arb_family(12, 14)) {
        let text = write_fam(&f);
        let back = parse_fam(&text).unwrap();
        prop_assert_eq!(back.members(), f.members());
        prop_assert_eq!(back.n(), f.n());
    }

    #[test]
    fn bits_text_roundtrip(f in arb_family(12, 14)) {
        prop_assume!(!f.is_empty());
        let text = write_bits(&f);
        let back = parse_bits(&text).unwrap();
        prop_assert_eq!(back.members(), f.members());
        prop_assert_eq!(back.n(), f.n());
    }

    #[test]
    fn cancellative_engines_agree(f in arb_family(8, 10), t in 1usize..=3) {
        let fast = f.is_t_cancellative(t).unwrap();
        let slow = f.is_t_cancellative_naive(t).unwrap();
        prop_assert_eq!(fast.holds(), slow.holds());
        if let Verdict::Violated(w) = fast {
            prop_assert!(w.replay(&f));
        }
    }

    #[test]
    fn witnesses_always_replay(f in arb_family(9, 11)) {
        let checks: Vec<Verdict> = vec![
            f.is_t_cancellative(1).unwrap(),
            f.is_t_cancellative(2).unwrap(),
            f.is_t_star_cancellative(1).unwrap(),
            f.is_cover_free(1).unwrap(),
            f.is_cover_free(2).unwrap(),
            f.is_locally_thin(2, 2).unwrap(),
            f.is_linear(),
            f.is_sparse(6, 3),
        ];
        for v in checks {
            if let Verdict::Violated(w) = v {
                prop_assert!(w.replay(&f), "witness {:?}", w);
            }
        }
    }

    #[test]
    fn downward_closure_under_deletion(f in arb_family(8, 10), drop_bits in any::<u64>()) {
        prop_assume!(!f.is_empty());
        // keep a pseudo-random subfamily
        let keep: Vec<usize> =
            (0..f.len()).filter(|i| drop_bits >> (i % 64) & 1 == 0).collect();
        let sub = f.subfamily(&keep);
        for t in 1..=2usize {
            if f.is_t_cancellative(t).unwrap().holds() {
                prop_assert!(sub.is_t_cancellative(t).unwrap().holds());
            }
            if f.is_t_star_cancellative(t).unwrap().holds() {
                prop_assert!(sub.is_t_star_cancellative(t).unwrap().holds());
            }
            if f.is_cover_free(t).unwrap().holds() {
                prop_assert!(sub.is_cover_free(t).unwrap().holds());
            }
        }
        if f.is_linear().holds() {
            prop_assert!(sub.is_linear().holds());
        }
        if f.is_sparse(6, 3).holds() {
            prop_assert!(sub.is_sparse(6, 3).holds());
        }
        if f.is_locally_thin(3, 2).unwrap().holds() {
            prop_assert!(sub.is_locally_thin(3, 2).unwrap().holds());
        }
    }

    #[test]
    fn trim_never_leaves_degree_one(f in arb_family(9, 12)) {
        let trimmed = cancel_codes::family::trim_degree_one(&f);
        let mut degree = vec![0usize; f.n()];
        for &m in trimmed.members() {
            let mut rest: Mask = m;
            while rest != 0 {
                degree[rest.trailing_zeros() as usize] += 1;
                rest &= rest - 1;
            }
        }
        prop_assert!(degree.iter().all(|&d| d != 1));
        prop_assert!(f.len() - trimmed.len() <= f.n());
    }
}
