//! Random-matrix coset code. A random (n-r) x n binary matrix is kept when
//! enough of its (n-r)-column submatrices are nonsingular; the r-sets whose
//! complement columns have full rank form the family, which the row space
//! partitions into 2^r cosets, each one a cancellative family.

use super::ConstructError;
use crate::bounds::{binomial, tolhuizen_c0};
use crate::family::{Mask, SetFamily};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone)]
pub struct TolhuizenCode {
    pub n: usize,
    pub r: usize,
    /// Matrix rows as n-bit masks.
    pub matrix: Vec<u64>,
    /// All r-sets whose complement columns are nonsingular.
    pub family: SetFamily,
    /// Row-space cosets of the family, indexed by the residue pattern on
    /// the free columns; they partition `family`.
    pub cosets: Vec<SetFamily>,
    pub best_coset: usize,
    /// The acceptance target c0 * C(n,r) and whether some retry beat it.
    pub threshold: f64,
    pub met_threshold: bool,
    pub tries: usize,
}

fn gf2_rank(rows: &mut [u64]) -> usize {
    let mut rank = 0;
    for col in 0..64 {
        let Some(pos) = (rank..rows.len()).find(|&i| rows[i] >> col & 1 == 1) else {
            continue;
        };
        rows.swap(rank, pos);
        let pivot = rows[rank];
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && *row >> col & 1 == 1 {
                *row ^= pivot;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Gather the bits of `row` at the positions listed in `cols`.
fn gather(row: u64, cols: &[usize]) -> u64 {
    cols.iter()
        .enumerate()
        .fold(0, |acc, (i, &c)| acc | ((row >> c & 1) << i))
}

fn count_full_rank_complements(matrix: &[u64], n: usize, r: usize) -> (usize, Vec<Mask>) {
    let m = n - r;
    let mut family = Vec::new();
    // walk all r-subsets of columns in increasing mask order
    let top: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut v: u64 = (1u64 << r) - 1;
    loop {
        let complement: Vec<usize> =
            (0..n).filter(|&c| v >> c & 1 == 0).collect();
        let mut sub: Vec<u64> = matrix.iter().map(|&row| gather(row, &complement)).collect();
        if gf2_rank(&mut sub) == m {
            family.push(v as Mask);
        }
        // next r-mask
        let c = v & v.wrapping_neg();
        let rr = v + c;
        if rr > top || rr < v {
            break;
        }
        v = (((v ^ rr) >> 2) / c) | rr;
        if v > top {
            break;
        }
    }
    (family.len(), family)
}

/// Reduced row echelon form; returns (rows, pivot columns).
fn rref(matrix: &[u64]) -> (Vec<u64>, Vec<usize>) {
    let mut rows: Vec<u64> = matrix.to_vec();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..64 {
        let Some(pos) = (rank..rows.len()).find(|&i| rows[i] >> col & 1 == 1) else {
            continue;
        };
        rows.swap(rank, pos);
        let pivot = rows[rank];
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && *row >> col & 1 == 1 {
                *row ^= pivot;
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    (rows, pivots)
}

pub fn construct_tolhuizen(
    n: usize,
    r: usize,
    rng_seed: u64,
    retries: usize,
) -> Result<TolhuizenCode, ConstructError> {
    if r < 1 {
        return Err(ConstructError::BadShape("need r >= 1".into()));
    }
    if n > 64 {
        return Err(ConstructError::BadShape(format!("n = {n} exceeds the 64-column limit")));
    }
    if n < 2 * r {
        return Err(ConstructError::OutOfRegime(format!(
            "n = {n} < 2r = {}: the uniform count is 2^(n-r) there, no matrix is sampled",
            2 * r
        )));
    }
    let threshold = tolhuizen_c0(1e-9).value * binomial(n as u64, r as u64) as f64;
    let mask: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut best: Option<(usize, Vec<u64>, Vec<Mask>)> = None;
    let mut tries = 0;
    for _ in 0..retries.max(1) {
        tries += 1;
        let matrix: Vec<u64> = (0..n - r).map(|_| rng.random::<u64>() & mask).collect();
        let (count, family) = count_full_rank_complements(&matrix, n, r);
        if best.as_ref().is_none_or(|(c, _, _)| count > *c) {
            best = Some((count, matrix, family));
        }
        if count as f64 > threshold {
            break;
        }
    }
    let (count, matrix, members) = best.expect("at least one retry ran");
    let met_threshold = count as f64 > threshold;
    let family = SetFamily::new(n, members)?;

    // coset of an r-set: reduce its indicator against the row space; the
    // residue lives on the free columns and indexes the coset. A nonempty
    // family forces the matrix to have full rank, leaving exactly r free
    // columns; a rank-deficient matrix has no full-rank complements at all.
    let (rows, pivots) = rref(&matrix);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    assert!(family.is_empty() || free.len() == r);
    let mut buckets: Vec<Vec<Mask>> = vec![Vec::new(); 1 << r];
    for &member in family.members() {
        let mut vec = member as u64;
        for (row, &p) in rows.iter().zip(&pivots) {
            if vec >> p & 1 == 1 {
                vec ^= row;
            }
        }
        let key = gather(vec, &free) as usize;
        buckets[key].push(member);
    }
    let cosets: Vec<SetFamily> = buckets
        .into_iter()
        .map(|ms| SetFamily::new(n, ms).expect("members already validated"))
        .collect();
    let best_coset = (0..cosets.len())
        .max_by_key(|&i| (cosets[i].len(), std::cmp::Reverse(i)))
        .unwrap_or(0);
    Ok(TolhuizenCode {
        n,
        r,
        matrix,
        family,
        cosets,
        best_coset,
        threshold,
        met_threshold,
        tries,
    })
}
