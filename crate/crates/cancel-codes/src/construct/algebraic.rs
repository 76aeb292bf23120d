//! The polynomial-graph code: members are restrictions of the q^k
//! polynomials of degree below k to a good 2k-point set S, drawn on the
//! vertex grid S x GF(q). The family is 2k-uniform and 2k-partite, and the
//! good-set property makes it 2-cancellative.

use super::ConstructError;
use crate::family::{Mask, SetFamily, VertexPartition};
use crate::field::{Field, FieldElement};
use crate::poly::{find_good_set, Poly};

#[derive(Debug, Clone)]
pub struct AlgebraicCode {
    pub q: u64,
    pub k: usize,
    /// The evaluation set, sorted in canonical element order.
    pub good_set: Vec<FieldElement>,
    /// Candidates examined by the good-set search (0 when S was supplied).
    pub candidates_tried: usize,
    /// q^k members on 2k*q vertices; vertex (s_i, y) has index i*q + index(y).
    pub family: SetFamily,
}

impl AlgebraicCode {
    /// The 2k vertex classes {s_i} x GF(q).
    pub fn partite_classes(&self) -> VertexPartition {
        let q = self.q as usize;
        let classes = (0..2 * self.k)
            .map(|i| {
                let mut m: Mask = 0;
                for y in 0..q {
                    m |= (1 as Mask) << (i * q + y);
                }
                m
            })
            .collect();
        VertexPartition::new(self.family.n(), classes).expect("classes tile the grid")
    }
}

/// Build the code over GF(q). When `set` is None a good 2k-set is searched
/// with the given seed; a supplied set is used as-is (its quality shows up
/// in verification, not construction).
pub fn construct_algebraic(
    q: u64,
    k: usize,
    set: Option<Vec<FieldElement>>,
    rng_seed: u64,
    max_tries: usize,
) -> Result<AlgebraicCode, ConstructError> {
    if k < 2 {
        return Err(ConstructError::BadShape(format!("need k >= 2, got {k}")));
    }
    let field = Field::new(q)?;
    if q < 2 * k as u64 {
        return Err(ConstructError::UniverseTooSmall { need: 2 * k, have: q as usize });
    }
    let (mut s, tried) = match set {
        Some(s) => {
            if s.len() != 2 * k {
                return Err(ConstructError::BadShape(format!(
                    "evaluation set must have {} elements, got {}",
                    2 * k,
                    s.len()
                )));
            }
            let mut sorted = s.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() != 2 * k {
                return Err(ConstructError::BadShape(
                    "evaluation set has repeated elements".into(),
                ));
            }
            (s, 0)
        }
        None => {
            let gs = find_good_set(&field, k, rng_seed, max_tries)?;
            (gs.elems, gs.candidates_tried)
        }
    };
    s.sort();

    let n = 2 * k * q as usize;
    let mut members: Vec<Mask> = Vec::with_capacity((q as usize).pow(k as u32));
    let total = q.pow(k as u32);
    for code in 0..total {
        // coefficient vector of the polynomial, constant term first
        let mut rest = code;
        let coeffs: Vec<FieldElement> = (0..k)
            .map(|_| {
                let c = field.element(rest % q);
                rest /= q;
                c
            })
            .collect();
        let p = Poly::from_coeffs(coeffs);
        let mut mask: Mask = 0;
        for (i, si) in s.iter().enumerate() {
            let y = p.eval(&field, si);
            mask |= (1 as Mask) << (i * q as usize + field.index(&y) as usize);
        }
        members.push(mask);
    }
    let family = SetFamily::new(n, members)?;
    Ok(AlgebraicCode { q, k, good_set: s, candidates_tried: tried, family })
}
