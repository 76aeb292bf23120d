//! Violation certificates. Every failed predicate returns a `Witness`
//! that re-evaluates the defining condition on the named members, so a
//! verdict can be checked without trusting the engine that produced it.

use super::{Mask, SetFamily};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// Distinct members a_1..a_t, b, c with U(a) | b == U(a) | c.
    Cancellative { a: Vec<usize>, b: usize, c: usize },
    /// Support of an A-sequence of length t (so 1 <= |support| <= t) plus
    /// b != c, not both inside the support, with equal augmented unions.
    StarCancellative { t: usize, support: Vec<usize>, b: usize, c: usize },
    /// Member `covered` sits inside the union of the g distinct `cover` members.
    CoverFree { covered: usize, cover: Vec<usize> },
    /// An a-subset of members with fewer than b vertices of degree one.
    LocallyThin { tuple: Vec<usize>, b: usize },
    /// Two members sharing at least two vertices.
    NotLinear { e1: usize, e2: usize },
    /// e distinct members spanning at most v vertices.
    Sparse { edges: Vec<usize>, v: usize },
    /// Four members forming a copy of a forbidden pattern; `vmap` sends
    /// pattern vertices to family vertices.
    ForbiddenPattern { pattern: Pattern, edges: [usize; 4], vmap: Vec<usize> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pattern {
    G6,
    G7,
}

impl Pattern {
    pub fn edges(&self) -> &'static [[usize; 3]; 4] {
        // vertex-disjoint 3-partite 4-edge patterns on 6 and 7 vertices
        match self {
            Pattern::G6 => &[[0, 1, 2], [0, 4, 5], [3, 1, 5], [3, 4, 2]],
            Pattern::G7 => &[[0, 1, 2], [3, 4, 5], [6, 1, 5], [6, 4, 2]],
        }
    }

    pub fn vertex_count(&self) -> usize {
        match self {
            Pattern::G6 => 6,
            Pattern::G7 => 7,
        }
    }
}

fn distinct(indices: &[usize]) -> bool {
    let mut seen = indices.to_vec();
    seen.sort_unstable();
    seen.windows(2).all(|w| w[0] != w[1])
}

fn union(f: &SetFamily, indices: &[usize]) -> Mask {
    indices.iter().fold(0, |acc, &i| acc | f.members()[i])
}

impl Witness {
    /// Indices of the members involved.
    pub fn members(&self) -> Vec<usize> {
        match self {
            Witness::Cancellative { a, b, c } => {
                a.iter().copied().chain([*b, *c]).collect()
            }
            Witness::StarCancellative { support, b, c, .. } => {
                support.iter().copied().chain([*b, *c]).collect()
            }
            Witness::CoverFree { covered, cover } => {
                std::iter::once(*covered).chain(cover.iter().copied()).collect()
            }
            Witness::LocallyThin { tuple, .. } => tuple.clone(),
            Witness::NotLinear { e1, e2 } => vec![*e1, *e2],
            Witness::Sparse { edges, .. } => edges.clone(),
            Witness::ForbiddenPattern { edges, .. } => edges.to_vec(),
        }
    }

    /// Re-evaluate the violated condition on the referenced members.
    pub fn replay(&self, f: &SetFamily) -> bool {
        let m = f.members();
        let in_range = self.members().iter().all(|&i| i < m.len());
        if !in_range {
            return false;
        }
        match self {
            Witness::Cancellative { a, b, c } => {
                let all: Vec<usize> = a.iter().copied().chain([*b, *c]).collect();
                if !distinct(&all) {
                    return false;
                }
                let u = union(f, a);
                (u | m[*b]) == (u | m[*c])
            }
            Witness::StarCancellative { t, support, b, c } => {
                if support.is_empty() || support.len() > *t || b == c || !distinct(support) {
                    return false;
                }
                if support.contains(b) && support.contains(c) {
                    return false;
                }
                let u = union(f, support);
                (u | m[*b]) == (u | m[*c])
            }
            Witness::CoverFree { covered, cover } => {
                let all: Vec<usize> =
                    std::iter::once(*covered).chain(cover.iter().copied()).collect();
                if !distinct(&all) {
                    return false;
                }
                m[*covered] & !union(f, cover) == 0
            }
            Witness::LocallyThin { tuple, b } => {
                if !distinct(tuple) {
                    return false;
                }
                let mut once: Mask = 0;
                let mut twice: Mask = 0;
                for &i in tuple {
                    twice |= once & m[i];
                    once |= m[i];
                }
                ((once & !twice).count_ones() as usize) < *b
            }
            Witness::NotLinear { e1, e2 } => {
                e1 != e2 && (m[*e1] & m[*e2]).count_ones() >= 2
            }
            Witness::Sparse { edges, v } => {
                distinct(edges) && (union(f, edges).count_ones() as usize) <= *v
            }
            Witness::ForbiddenPattern { pattern, edges, vmap } => {
                if vmap.len() != pattern.vertex_count() || !distinct(vmap) {
                    return false;
                }
                let mut assigned: Vec<Mask> = Vec::with_capacity(4);
                for pe in pattern.edges() {
                    let img: Mask = pe.iter().map(|&pv| (1 as Mask) << vmap[pv]).sum();
                    assigned.push(img);
                }
                // the mapped pattern edges must be exactly the named members
                let mut actual: Vec<Mask> = edges.iter().map(|&i| m[i]).collect();
                assigned.sort_unstable();
                actual.sort_unstable();
                assigned == actual
            }
        }
    }
}
