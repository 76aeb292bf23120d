//! Packings of the apexed-clique graph: a k-clique plus one degree-3 apex
//! per vertex triple. Each placed copy contributes its special K4's (a
//! triple plus its apex) as 4-sets; an almost-disjoint induced packing of
//! copies makes the resulting 4-uniform family 2-cancellative.

use super::ConstructError;
use crate::family::{Mask, SetFamily};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The template graph: vertices 0..k are the clique, then one apex per
/// triple in lexicographic order.
#[derive(Debug, Clone)]
pub struct HkGraph {
    pub k: usize,
    pub vertex_count: usize,
    pub edges: Vec<(usize, usize)>,
    pub special_k4s: Vec<[usize; 4]>,
}

impl HkGraph {
    pub fn new(k: usize) -> Result<HkGraph, ConstructError> {
        if k < 3 {
            return Err(ConstructError::BadShape(format!("the template needs k >= 3, got {k}")));
        }
        let mut edges = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                edges.push((i, j));
            }
        }
        let mut special_k4s = Vec::new();
        let mut apex = k;
        for a in 0..k {
            for b in a + 1..k {
                for c in b + 1..k {
                    edges.push((a, apex));
                    edges.push((b, apex));
                    edges.push((c, apex));
                    special_k4s.push([a, b, c, apex]);
                    apex += 1;
                }
            }
        }
        Ok(HkGraph { k, vertex_count: apex, edges, special_k4s })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PackingMode {
    /// Vertex-disjoint copies on consecutive blocks.
    Disjoint,
    /// Disjoint baseline plus randomized extra copies overlapping in at
    /// most two vertices, overlap pairs staying non-edges of every copy.
    Greedy,
}

#[derive(Debug, Clone)]
pub struct HkPacking {
    pub k: usize,
    pub mode: PackingMode,
    /// Vertex images of each placed copy (template vertex -> host vertex).
    pub copies: Vec<Vec<usize>>,
    /// The special K4 vertex sets of every copy.
    pub family: SetFamily,
}

pub fn construct_hk_packing(
    n: usize,
    k: usize,
    mode: PackingMode,
    rng_seed: u64,
) -> Result<HkPacking, ConstructError> {
    let template = HkGraph::new(k)?;
    let size = template.vertex_count;
    if n < size {
        return Err(ConstructError::UniverseTooSmall { need: size, have: n });
    }
    if n > 128 {
        return Err(ConstructError::BadShape(format!("n = {n} exceeds the vertex limit")));
    }

    let mut copies: Vec<Vec<usize>> = (0..n / size)
        .map(|c| (0..size).map(|v| c * size + v).collect())
        .collect();

    if mode == PackingMode::Greedy {
        let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
        // host-graph adjacency from all copies placed so far
        let mut edge = vec![false; n * n];
        let mut copy_masks: Vec<Mask> = Vec::new();
        let place = |map: &Vec<usize>, edge: &mut Vec<bool>, copy_masks: &mut Vec<Mask>| {
            for &(a, b) in &template.edges {
                edge[map[a] * n + map[b]] = true;
                edge[map[b] * n + map[a]] = true;
            }
            copy_masks.push(map.iter().fold(0 as Mask, |m, &v| m | (1 as Mask) << v));
        };
        let placed: Vec<Vec<usize>> = copies.clone();
        for map in &placed {
            place(map, &mut edge, &mut copy_masks);
        }
        let attempts = 60 * n;
        let mut pool: Vec<usize> = (0..n).collect();
        'attempt: for _ in 0..attempts {
            pool.shuffle(&mut rng);
            let map: Vec<usize> = pool[..size].to_vec();
            let new_mask: Mask = map.iter().fold(0, |m, &v| m | (1 as Mask) << v);
            // pairwise overlap at most 2, overlap pairs non-edges everywhere
            for &old in &copy_masks {
                let shared = new_mask & old;
                match shared.count_ones() {
                    0 | 1 => {}
                    2 => {
                        let u = shared.trailing_zeros() as usize;
                        let w = (127 - shared.leading_zeros()) as usize;
                        if edge[u * n + w] {
                            continue 'attempt;
                        }
                        // the pair must not become an edge of the new copy
                        let iu = map.iter().position(|&x| x == u).unwrap();
                        let iw = map.iter().position(|&x| x == w).unwrap();
                        if template
                            .edges
                            .iter()
                            .any(|&(a, b)| (a == iu && b == iw) || (a == iw && b == iu))
                        {
                            continue 'attempt;
                        }
                    }
                    _ => continue 'attempt,
                }
            }
            place(&map, &mut edge, &mut copy_masks);
            copies.push(map);
        }
    }

    let mut members: Vec<Mask> = Vec::new();
    for map in &copies {
        for k4 in &template.special_k4s {
            members.push(k4.iter().fold(0 as Mask, |m, &v| m | (1 as Mask) << map[v]));
        }
    }
    let family = SetFamily::new(n, members)?;
    Ok(HkPacking { k, mode, copies, family })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn template_counts() {
        for k in 3..=6usize {
            let h = HkGraph::new(k).unwrap();
            let c3 = k * (k - 1) * (k - 2) / 6;
            let c2 = k * (k - 1) / 2;
            assert_eq!(h.vertex_count, k + c3);
            assert_eq!(h.edges.len(), c2 + 3 * c3);
            assert_eq!(h.special_k4s.len(), c3);
        }
        assert!(HkGraph::new(2).is_err());
    }

    #[test]
    fn smallest_instance() {
        // k = 3: a K4; one copy, one member of size 4
        let p = construct_hk_packing(4, 3, PackingMode::Disjoint, 0).unwrap();
        assert_eq!(p.family.len(), 1);
        assert_eq!(p.family.uniform_r(), Some(4));
    }

    #[test]
    fn disjoint_copy_count() {
        let p = construct_hk_packing(8, 3, PackingMode::Disjoint, 0).unwrap();
        assert_eq!(p.copies.len(), 2);
        assert_eq!(p.family.len(), 2);
        // k = 4: template has 4 + 4 = 8 vertices and C(4,3) = 4 specials
        let p4 = construct_hk_packing(17, 4, PackingMode::Disjoint, 0).unwrap();
        assert_eq!(p4.copies.len(), 2);
        assert_eq!(p4.family.len(), 8);
    }

    #[test]
    fn outputs_are_2_cancellative() {
        for (n, k, mode) in [
            (12usize, 3usize, PackingMode::Disjoint),
            (12, 3, PackingMode::Greedy),
            (16, 3, PackingMode::Greedy),
            (17, 4, PackingMode::Greedy),
        ] {
            let p = construct_hk_packing(n, k, mode, 77).unwrap();
            assert!(
                p.family.is_t_cancellative(2).unwrap().holds(),
                "n={n} k={k} {mode:?}"
            );
        }
    }

    #[test]
    fn greedy_extends_disjoint_baseline() {
        let d = construct_hk_packing(14, 3, PackingMode::Disjoint, 9).unwrap();
        let g = construct_hk_packing(14, 3, PackingMode::Greedy, 9).unwrap();
        assert!(g.family.len() >= d.family.len());
    }

    #[test]
    fn universe_too_small() {
        assert!(matches!(
            construct_hk_packing(3, 3, PackingMode::Disjoint, 0),
            Err(ConstructError::UniverseTooSmall { need: 4, have: 3 })
        ));
    }

    #[test]
    fn deterministic_for_seed() {
        let a = construct_hk_packing(16, 3, PackingMode::Greedy, 5).unwrap();
        let b = construct_hk_packing(16, 3, PackingMode::Greedy, 5).unwrap();
        assert_eq!(a.family, b.family);
    }
}
