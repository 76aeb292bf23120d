//! Greedy maximal (n,4,2)-packing: scan the 4-subsets in seeded random
//! order and keep those whose six pairs are all unused. The output is
//! linear by construction, and a linear 4-uniform family is
//! 2-cancellative: with pairwise intersections of size at most one,
//! C keeps at least two private vertices outside A u B, and they cannot
//! both be absorbed by a fourth distinct member.

use super::ConstructError;
use crate::family::{mask_vertices, Mask, SetFamily};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn construct_linear_4uniform(n: usize, rng_seed: u64) -> Result<SetFamily, ConstructError> {
    if n < 4 {
        return Err(ConstructError::UniverseTooSmall { need: 4, have: n });
    }
    if n > 128 {
        return Err(ConstructError::BadShape(format!("n = {n} exceeds the vertex limit")));
    }
    // all 4-subsets, then a seeded shuffle fixes the greedy order
    let mut quads: Vec<Mask> = Vec::new();
    let top: Mask = if n == 128 { !0 } else { ((1 as Mask) << n) - 1 };
    let mut v: Mask = 0b1111;
    while v <= top {
        quads.push(v);
        let c = v & v.wrapping_neg();
        let r = v + c;
        if r < v || r > top {
            break;
        }
        v = (((v ^ r) >> 2) / c) | r;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    quads.shuffle(&mut rng);

    let mut pair_used = vec![false; n * n];
    let mut members = Vec::new();
    'quad: for &q in &quads {
        let vs = mask_vertices(q);
        for i in 0..4 {
            for j in i + 1..4 {
                if pair_used[vs[i] * n + vs[j]] {
                    continue 'quad;
                }
            }
        }
        for i in 0..4 {
            for j in i + 1..4 {
                pair_used[vs[i] * n + vs[j]] = true;
            }
        }
        members.push(q);
    }
    Ok(SetFamily::new(n, members)?)
}
