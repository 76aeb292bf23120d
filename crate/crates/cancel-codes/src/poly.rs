//! Polynomials of bounded degree over GF(q), elementary symmetric
//! functions, the shifted block coefficient matrix, determinant-based
//! independence of root polynomials, and the search for a good 2k-set.
//!
//! Polynomials p_1..p_l (p_j monic with root multiset X_j) are
//! (k_1,..,k_l)-independent, k_j = k - |X_j|, when no combination
//! sum f_j * p_j with deg f_j < k_j vanishes except the trivial one;
//! equivalently the k polynomials x^i * p_j are linearly independent,
//! which we decide by a k x k determinant over the field.

use crate::field::{Field, FieldElement};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IndependenceError {
    /// Block sizes violate 0 < |X_j| < k or the shift counts do not fill k rows.
    ShapeError(String),
    /// q < 2k: no 2k-subset of the field exists.
    UniverseTooSmall { q: u64, need: u64 },
    /// All candidates tried (sampling plus exhaustive fallback) failed.
    SearchExhausted {
        tries: usize,
        last_candidate: Vec<FieldElement>,
        failing_partition: (Vec<FieldElement>, Vec<FieldElement>, Vec<FieldElement>),
    },
}

impl fmt::Display for IndependenceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndependenceError::ShapeError(s) => write!(f, "bad block shape: {s}"),
            IndependenceError::UniverseTooSmall { q, need } => {
                write!(f, "field of order {q} has no {need}-element subset")
            }
            IndependenceError::SearchExhausted { tries, .. } => {
                write!(f, "no good set found after {tries} candidates")
            }
        }
    }
}

impl std::error::Error for IndependenceError {}

/// Dense polynomial over a field; constant term first, trailing zeros
/// trimmed, so the zero polynomial has an empty coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn from_coeffs(mut coeffs: Vec<FieldElement>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: FieldElement) -> Poly {
        Poly::from_coeffs(vec![c])
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of x^d (zero beyond the stored length).
    pub fn coeff(&self, field: &Field, d: usize) -> FieldElement {
        self.coeffs.get(d).cloned().unwrap_or_else(|| field.zero())
    }

    pub fn eval(&self, field: &Field, x: &FieldElement) -> FieldElement {
        let mut acc = field.zero();
        for c in self.coeffs.iter().rev() {
            acc = field.add(&field.mul(&acc, x), c);
        }
        acc
    }

    pub fn add(&self, field: &Field, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| field.add(&self.coeff(field, i), &other.coeff(field, i)))
            .collect();
        Poly::from_coeffs(coeffs)
    }

    pub fn mul(&self, field: &Field, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = field.add(&coeffs[i + j], &field.mul(a, b));
            }
        }
        Poly::from_coeffs(coeffs)
    }

    /// Multiply by the linear factor (x - z).
    fn mul_linear_root(&self, field: &Field, z: &FieldElement) -> Poly {
        let lin = Poly::from_coeffs(vec![field.neg(z), field.one()]);
        self.mul(field, &lin)
    }
}

/// A multiset of field elements used as a polynomial root set / variable block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarSet {
    elems: Vec<FieldElement>,
}

impl VarSet {
    pub fn new(elems: Vec<FieldElement>) -> VarSet {
        VarSet { elems }
    }

    pub fn elems(&self) -> &[FieldElement] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn negated(&self, field: &Field) -> VarSet {
        VarSet { elems: self.elems.iter().map(|e| field.neg(e)).collect() }
    }
}

/// Row-major square matrix over a field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareMatrix {
    k: usize,
    entries: Vec<FieldElement>,
}

impl SquareMatrix {
    pub fn identity(field: &Field, k: usize) -> SquareMatrix {
        let mut m = SquareMatrix { k, entries: vec![field.zero(); k * k] };
        for i in 0..k {
            *m.at_mut(i, i) = field.one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<FieldElement>>) -> SquareMatrix {
        let k = rows.len();
        assert!(rows.iter().all(|r| r.len() == k), "rows must form a square");
        SquareMatrix { k, entries: rows.into_iter().flatten().collect() }
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn at(&self, r: usize, c: usize) -> &FieldElement {
        &self.entries[r * self.k + c]
    }

    fn at_mut(&mut self, r: usize, c: usize) -> &mut FieldElement {
        &mut self.entries[r * self.k + c]
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.entries[r * self.k..(r + 1) * self.k]
    }

    /// True when every entry strictly above the main diagonal is zero.
    pub fn is_lower_triangular(&self) -> bool {
        (0..self.k).all(|r| (r + 1..self.k).all(|c| self.at(r, c).is_zero()))
    }
}

/// sigma_i over a multiset; sigma_0 = 1, and 0 outside 0..=|X|.
pub fn elementary_symmetric(field: &Field, x: &VarSet, i: i64) -> FieldElement {
    if i < 0 || i as usize > x.len() {
        return field.zero();
    }
    let i = i as usize;
    // e[j] after processing a prefix = sigma_j of that prefix
    let mut e = vec![field.zero(); x.len() + 1];
    e[0] = field.one();
    for (t, z) in x.elems.iter().enumerate() {
        for j in (1..=t + 1).rev() {
            let carry = field.mul(&e[j - 1], z);
            e[j] = field.add(&e[j], &carry);
        }
    }
    e[i].clone()
}

/// Monic polynomial with root multiset Z: prod (x - z).
pub fn root_polynomial(field: &Field, z: &VarSet) -> Poly {
    let mut p = Poly::constant(field.one());
    for r in &z.elems {
        p = p.mul_linear_root(field, r);
    }
    p
}

fn validate_blocks(sets: &[VarSet], k: usize) -> Result<Vec<usize>, IndependenceError> {
    if sets.is_empty() {
        return Err(IndependenceError::ShapeError("no blocks given".into()));
    }
    let mut shifts = Vec::with_capacity(sets.len());
    let mut total = 0usize;
    for (j, x) in sets.iter().enumerate() {
        let t = x.len();
        if t == 0 || t >= k {
            return Err(IndependenceError::ShapeError(format!(
                "block {j} has size {t}, need 0 < size < k = {k}"
            )));
        }
        shifts.push(k - t);
        total += k - t;
    }
    if total != k {
        return Err(IndependenceError::ShapeError(format!(
            "shift counts sum to {total}, need exactly k = {k}"
        )));
    }
    Ok(shifts)
}

/// Coefficient matrix of { x^i * p_{X_j} : 0 <= i < k - |X_j| }.
///
/// Rows are grouped by block in input order; within block j the shift
/// decreases from k_j - 1 to 0, and columns list coefficients from x^{k-1}
/// down to the constant term. Under this layout entry (r, c) of block j is
/// sigma_{c-r}(-X_j), the shifted-block pattern on the negated set.
pub fn build_block_matrix(
    field: &Field,
    sets: &[VarSet],
    k: usize,
) -> Result<SquareMatrix, IndependenceError> {
    let shifts = validate_blocks(sets, k)?;
    let mut rows = Vec::with_capacity(k);
    for (x, &kj) in sets.iter().zip(&shifts) {
        let p = root_polynomial(field, x);
        for i in (0..kj).rev() {
            // x^i * p, columns by descending degree
            let mut row = vec![field.zero(); k];
            for (d, c) in p.coeffs().iter().enumerate() {
                row[k - 1 - (d + i)] = c.clone();
            }
            rows.push(row);
        }
    }
    Ok(SquareMatrix::from_rows(rows))
}

/// Same matrix assembled directly from elementary symmetric values of the
/// negated blocks; coinciding with `build_block_matrix` is the module
/// self-test.
pub fn build_block_matrix_symmetric(
    field: &Field,
    sets: &[VarSet],
    k: usize,
) -> Result<SquareMatrix, IndependenceError> {
    let shifts = validate_blocks(sets, k)?;
    let mut rows = Vec::with_capacity(k);
    for (x, &kj) in sets.iter().zip(&shifts) {
        let neg = x.negated(field);
        for r in 0..kj {
            let row = (0..k)
                .map(|c| elementary_symmetric(field, &neg, c as i64 - r as i64))
                .collect();
            rows.push(row);
        }
    }
    Ok(SquareMatrix::from_rows(rows))
}

/// Exact determinant by pivoted Gaussian elimination over the field.
pub fn determinant(field: &Field, m: &SquareMatrix) -> FieldElement {
    let k = m.dim();
    let mut a = m.entries.clone();
    let at = |a: &Vec<FieldElement>, r: usize, c: usize| a[r * k + c].clone();
    let mut det = field.one();
    for col in 0..k {
        let pivot = (col..k).find(|&r| !at(&a, r, col).is_zero());
        let Some(pr) = pivot else {
            return field.zero();
        };
        if pr != col {
            for c in 0..k {
                a.swap(pr * k + c, col * k + c);
            }
            det = field.neg(&det);
        }
        let pv = at(&a, col, col);
        det = field.mul(&det, &pv);
        let pv_inv = field.inv(&pv).expect("pivot is nonzero");
        for r in col + 1..k {
            let factor = field.mul(&at(&a, r, col), &pv_inv);
            if factor.is_zero() {
                continue;
            }
            for c in col..k {
                let sub = field.mul(&factor, &at(&a, col, c));
                a[r * k + c] = field.sub(&a[r * k + c], &sub);
            }
        }
    }
    det
}

/// (k_1,..,k_l)-independence of the root polynomials of `sets`,
/// k_j = k - |X_j|: true iff the block matrix is nonsingular.
pub fn is_independent(
    field: &Field,
    sets: &[VarSet],
    k: usize,
) -> Result<bool, IndependenceError> {
    let m = build_block_matrix(field, sets, k)?;
    Ok(!determinant(field, &m).is_zero())
}

/// A 2k-subset of the field all of whose admissible three-way partitions
/// give independent root polynomials, plus the number of candidates tried.
#[derive(Debug, Clone)]
pub struct GoodSet {
    pub elems: Vec<FieldElement>,
    pub candidates_tried: usize,
}

/// Unordered partitions of 0..n into three parts with every part size in
/// [1, k). Canonical form: first part holds index 0, second part holds the
/// smallest remaining index.
pub fn three_partitions(n: usize, k: usize) -> Vec<(Vec<usize>, Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    for xbits in 0..(1u32 << (n - 1)) {
        let x: Vec<usize> = std::iter::once(0)
            .chain((1..n).filter(|&i| xbits >> (i - 1) & 1 == 1))
            .collect();
        if x.len() >= k {
            continue;
        }
        let rest: Vec<usize> = (1..n).filter(|&i| xbits >> (i - 1) & 1 == 0).collect();
        if rest.len() < 2 {
            continue;
        }
        let anchor = rest[0];
        let free = &rest[1..];
        for ybits in 0..(1u32 << free.len()) {
            let y: Vec<usize> = std::iter::once(anchor)
                .chain(
                    free.iter()
                        .enumerate()
                        .filter_map(|(i, &v)| (ybits >> i & 1 == 1).then_some(v)),
                )
                .collect();
            let w: Vec<usize> = free
                .iter()
                .enumerate()
                .filter_map(|(i, &v)| (ybits >> i & 1 == 0).then_some(v))
                .collect();
            if y.len() >= k || w.len() >= k || w.is_empty() {
                continue;
            }
            out.push((x.clone(), y, w));
        }
    }
    out
}

fn check_candidate(
    field: &Field,
    cand: &[FieldElement],
    k: usize,
    partitions: &[(Vec<usize>, Vec<usize>, Vec<usize>)],
) -> Result<(), (Vec<FieldElement>, Vec<FieldElement>, Vec<FieldElement>)> {
    let pick = |idx: &[usize]| -> Vec<FieldElement> {
        idx.iter().map(|&i| cand[i].clone()).collect()
    };
    for (xi, yi, wi) in partitions {
        let (x, y, w) = (pick(xi), pick(yi), pick(wi));
        let blocks = [VarSet::new(x.clone()), VarSet::new(y.clone()), VarSet::new(w.clone())];
        if !is_independent(field, &blocks, k).expect("partition sizes are admissible") {
            return Err((x, y, w));
        }
    }
    Ok(())
}

const EXHAUSTIVE_LIMIT: u64 = 1_000_000;

fn binomial_u64(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Seeded search for a good 2k-set: uniform sampling of 2k-subsets without
/// replacement, then an exhaustive sweep of all 2k-subsets when there are
/// at most 10^6 of them, so small fields get a definitive answer.
pub fn find_good_set(
    field: &Field,
    k: usize,
    rng_seed: u64,
    max_tries: usize,
) -> Result<GoodSet, IndependenceError> {
    assert!(k >= 2, "good sets are defined for k >= 2");
    let q = field.order();
    let need = 2 * k as u64;
    if q < need {
        return Err(IndependenceError::UniverseTooSmall { q, need });
    }
    let partitions = three_partitions(2 * k, k);
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut tried = 0usize;
    let mut last_failure = None;
    let subset_count = binomial_u64(q, need);

    let all: Vec<u64> = (0..q).collect();
    while tried < max_tries && (seen.len() as u64) < subset_count {
        let mut pool = all.clone();
        pool.shuffle(&mut rng);
        let mut pick: Vec<u64> = pool[..2 * k].to_vec();
        pick.sort_unstable();
        if !seen.insert(pick.clone()) {
            continue; // without replacement
        }
        tried += 1;
        let cand: Vec<FieldElement> = pick.iter().map(|&i| field.element(i)).collect();
        match check_candidate(field, &cand, k, &partitions) {
            Ok(()) => return Ok(GoodSet { elems: cand, candidates_tried: tried }),
            Err(fail) => last_failure = Some((cand, fail)),
        }
    }

    if subset_count <= EXHAUSTIVE_LIMIT {
        // colex sweep over all 2k-subsets of element indices
        let kk = need as usize;
        let mut idx: Vec<u64> = (0..need).collect();
        'sweep: loop {
            if !seen.contains(&idx) {
                tried += 1;
                let cand: Vec<FieldElement> = idx.iter().map(|&i| field.element(i)).collect();
                match check_candidate(field, &cand, k, &partitions) {
                    Ok(()) => return Ok(GoodSet { elems: cand, candidates_tried: tried }),
                    Err(fail) => last_failure = Some((cand, fail)),
                }
            }
            // next combination in colex order
            let mut i = 0;
            loop {
                let limit = if i + 1 < kk { idx[i + 1] } else { q };
                if idx[i] + 1 < limit {
                    idx[i] += 1;
                    for j in 0..i {
                        idx[j] = j as u64;
                    }
                    break;
                }
                i += 1;
                if i == kk {
                    break 'sweep;
                }
            }
        }
    }

    let (last_candidate, failing_partition) =
        last_failure.expect("at least one candidate was tried");
    Err(IndependenceError::SearchExhausted { tries: tried, last_candidate, failing_partition })
}
