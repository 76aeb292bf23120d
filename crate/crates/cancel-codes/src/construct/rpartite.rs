//! Complete r-partite family with near-equal classes: members are the
//! transversals picking one vertex per class. An r-partite family is
//! cancellative, and the size realizes the partite product floor.

use super::ConstructError;
use crate::family::{Mask, SetFamily};

pub fn construct_complete_r_partite(n: usize, r: usize) -> Result<SetFamily, ConstructError> {
    if r < 2 || n < r {
        return Err(ConstructError::BadShape(format!(
            "complete r-partite needs n >= r >= 2, got n={n} r={r}"
        )));
    }
    // class i gets floor((n+i)/r) consecutive vertices; the sizes sum to n
    let sizes: Vec<usize> = (0..r).map(|i| (n + i) / r).collect();
    let mut starts = Vec::with_capacity(r);
    let mut acc = 0;
    for &s in &sizes {
        starts.push(acc);
        acc += s;
    }
    debug_assert_eq!(acc, n);

    let mut members = Vec::new();
    let mut pick = vec![0usize; r];
    loop {
        let mask: Mask = pick
            .iter()
            .enumerate()
            .fold(0, |m, (i, &p)| m | (1 as Mask) << (starts[i] + p));
        members.push(mask);
        // mixed-radix increment, last class fastest
        let mut pos = r;
        loop {
            if pos == 0 {
                let family = SetFamily::new(n, members)?;
                return Ok(family);
            }
            pos -= 1;
            pick[pos] += 1;
            if pick[pos] < sizes[pos] {
                break;
            }
            pick[pos] = 0;
        }
    }
}
