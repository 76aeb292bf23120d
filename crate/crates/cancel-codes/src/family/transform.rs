//! Structural operations on families: r-partitions, degree-one trimming,
//! the sparse-to-linear reduction, and the random rainbow subfamily
//! extraction with its guaranteed size floor.

use super::{mask_vertices, universe_mask, FamilyError, Mask, SetFamily};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Disjoint vertex classes covering the whole universe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexPartition {
    classes: Vec<Mask>,
    n: usize,
}

impl VertexPartition {
    pub fn new(n: usize, classes: Vec<Mask>) -> Result<VertexPartition, FamilyError> {
        let mut seen: Mask = 0;
        for &c in &classes {
            if c & seen != 0 {
                return Err(FamilyError::BadShape("partition classes overlap".into()));
            }
            seen |= c;
        }
        if seen != universe_mask(n) {
            return Err(FamilyError::BadShape(
                "partition classes do not cover the universe".into(),
            ));
        }
        Ok(VertexPartition { classes, n })
    }

    pub fn classes(&self) -> &[Mask] {
        &self.classes
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn class_of(&self, v: usize) -> Option<usize> {
        self.classes.iter().position(|c| c >> v & 1 == 1)
    }
}

/// Does every member meet every class exactly once?
pub fn is_r_partite(f: &SetFamily, p: &VertexPartition) -> Result<bool, FamilyError> {
    let r = f.uniform_r().ok_or(FamilyError::NotUniform)?;
    if p.n() != f.n() || p.classes().len() != r {
        return Ok(false);
    }
    Ok(f.members()
        .iter()
        .all(|&m| p.classes().iter().all(|&c| (m & c).count_ones() == 1)))
}

/// Backtracking search for an r-partition making every member transversal.
///
/// Complete (hence authoritative) up to 15 active vertices; beyond that it
/// falls back to seeded randomized restarts with a bounded budget, so a
/// None answer for large instances means "none found", not a proof.
pub fn find_r_partition(f: &SetFamily, r: usize) -> Result<Option<VertexPartition>, FamilyError> {
    let fr = f.uniform_r().ok_or(FamilyError::NotUniform)?;
    if fr != r || r == 0 {
        return Err(FamilyError::BadShape(format!(
            "family is {fr}-uniform, asked for r = {r}"
        )));
    }
    let n = f.n();
    let active_mask: Mask = f.members().iter().fold(0, |a, &m| a | m);
    let active = mask_vertices(active_mask);

    // members touching each active vertex
    let touching: Vec<Vec<usize>> = active
        .iter()
        .map(|&v| {
            f.members()
                .iter()
                .enumerate()
                .filter_map(|(i, &m)| (m >> v & 1 == 1).then_some(i))
                .collect()
        })
        .collect();

    let mut color = vec![usize::MAX; active.len()];

    fn consistent(
        f: &SetFamily,
        active: &[usize],
        touching: &[Vec<usize>],
        color: &[usize],
        pos: usize,
        c: usize,
    ) -> bool {
        for &mi in &touching[pos] {
            let m = f.members()[mi];
            for (other, &ov) in active.iter().enumerate() {
                if other != pos && color[other] == c && m >> ov & 1 == 1 {
                    return false;
                }
            }
        }
        true
    }

    fn backtrack(
        f: &SetFamily,
        active: &[usize],
        touching: &[Vec<usize>],
        color: &mut [usize],
        pos: usize,
        r: usize,
    ) -> bool {
        if pos == active.len() {
            return true;
        }
        // first vertex pinned to class 0: classes are unlabeled
        let limit = if pos == 0 { 1 } else { r };
        for c in 0..limit {
            if consistent(f, active, touching, color, pos, c) {
                color[pos] = c;
                if backtrack(f, active, touching, color, pos + 1, r) {
                    return true;
                }
                color[pos] = usize::MAX;
            }
        }
        false
    }

    let found = if active.len() <= 15 {
        backtrack(f, &active, &touching, &mut color, 0, r)
    } else {
        // randomized restarts: random vertex orders, greedy + backtrack cap
        let mut rng = ChaCha8Rng::seed_from_u64(0x9E3779B9);
        let mut found = false;
        'restart: for _ in 0..200 {
            color.fill(usize::MAX);
            for pos in 0..active.len() {
                let offset = rng.random_range(0..r);
                let mut placed = false;
                for shift in 0..r {
                    let c = (offset + shift) % r;
                    if consistent(f, &active, &touching, &color, pos, c) {
                        color[pos] = c;
                        placed = true;
                        break;
                    }
                }
                if !placed {
                    continue 'restart;
                }
            }
            found = true;
            break;
        }
        found
    };

    if !found {
        return Ok(None);
    }
    let mut classes = vec![0 as Mask; r];
    for (pos, &v) in active.iter().enumerate() {
        classes[color[pos]] |= (1 as Mask) << v;
    }
    // park isolated vertices in the first class to keep the cover total
    let isolated = universe_mask(n) & !active_mask;
    classes[0] |= isolated;
    let p = VertexPartition::new(n, classes).expect("classes are disjoint and cover by construction");
    debug_assert_eq!(is_r_partite(f, &p), Ok(true));
    Ok(Some(p))
}

/// Keep sampling uniform r-colorings, retaining rainbow members, until the
/// subfamily reaches ceil(r!/r^r * |F|); the expectation argument makes
/// such a coloring exist, so the loop terminates with probability one.
pub fn erdos_kleitman_reduce(
    f: &SetFamily,
    r: usize,
    rng_seed: u64,
) -> Result<(SetFamily, VertexPartition), FamilyError> {
    let fr = f.uniform_r().ok_or(FamilyError::NotUniform)?;
    if fr != r || r == 0 {
        return Err(FamilyError::BadShape(format!(
            "family is {fr}-uniform, asked for r = {r}"
        )));
    }
    let m = f.len() as u128;
    let r_fact: u128 = (1..=r as u128).product();
    let r_pow: u128 = (r as u128).pow(r as u32);
    let target = (r_fact * m).div_ceil(r_pow) as usize;

    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let n = f.n();
    for _ in 0..10_000_000u64 {
        let coloring: Vec<usize> = (0..n).map(|_| rng.random_range(0..r)).collect();
        let mut kept = Vec::new();
        'member: for (i, &mask) in f.members().iter().enumerate() {
            let mut seen = 0usize;
            for v in mask_vertices(mask) {
                let bit = 1 << coloring[v];
                if seen & bit != 0 {
                    continue 'member; // two vertices share a class
                }
                seen |= bit;
            }
            kept.push(i);
        }
        if kept.len() >= target {
            let mut classes = vec![0 as Mask; r];
            for (v, &c) in coloring.iter().enumerate() {
                classes[c] |= (1 as Mask) << v;
            }
            let partition = VertexPartition::new(n, classes)?;
            return Ok((f.subfamily(&kept), partition));
        }
    }
    unreachable!("a coloring reaching the expectation floor exists");
}

/// Repeatedly drop the lowest-indexed member containing a degree-one
/// vertex; the fixpoint has every vertex degree 0 or >= 2, and at most n
/// members are removed in total.
pub fn trim_degree_one(f: &SetFamily) -> SetFamily {
    let mut alive: Vec<Mask> = f.members().to_vec();
    loop {
        let mut degree = vec![0usize; f.n()];
        for m in &alive {
            for v in mask_vertices(*m) {
                degree[v] += 1;
            }
        }
        let victim = alive
            .iter()
            .position(|&m| mask_vertices(m).iter().any(|&v| degree[v] == 1));
        match victim {
            Some(i) => {
                alive.remove(i);
            }
            None => break,
        }
    }
    SetFamily::new(f.n(), alive).expect("members already validated")
}

/// Reduce a 3-uniform (7,4)-sparse family to a linear subfamily, dropping
/// at most 2n/5 members: delete two edges from each 5-vertex 3-edge
/// component of the pairwise 2-intersection graph, then one edge from each
/// remaining intersecting pair.
pub fn sparse_to_linear(h: &SetFamily) -> Result<SetFamily, FamilyError> {
    if h.uniform_r() != Some(3) {
        return Err(FamilyError::NotThreeUniform);
    }
    if let super::Verdict::Violated(w) = h.is_sparse(7, 4) {
        return Err(FamilyError::NotSparse(w));
    }
    let m = h.len();
    let masks = h.members();
    // adjacency of the 2-intersection graph
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); m];
    for i in 0..m {
        for j in i + 1..m {
            if (masks[i] & masks[j]).count_ones() == 2 {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
    }
    // components; sparsity caps them at three edges (a fourth edge joined
    // by 2-intersections would put 4 edges on at most 7 vertices)
    let mut comp = vec![usize::MAX; m];
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for start in 0..m {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = groups.len();
        let mut stack = vec![start];
        let mut group = Vec::new();
        comp[start] = id;
        while let Some(v) = stack.pop() {
            group.push(v);
            for &w in &adj[v] {
                if comp[w] == usize::MAX {
                    comp[w] = id;
                    stack.push(w);
                }
            }
        }
        group.sort_unstable();
        groups.push(group);
    }
    let mut keep = Vec::new();
    for group in &groups {
        match group.len() {
            1 | 2 | 3 => keep.push(group[0]), // lowest index survives
            len => unreachable!("2-intersection component of {len} edges in a sparse family"),
        }
    }
    keep.sort_unstable();
    let out = h.subfamily(&keep);
    debug_assert!(out.is_linear().holds());
    Ok(out)
}
