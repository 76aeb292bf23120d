//! Set families over a universe of at most 128 vertices, every decidable
//! predicate on them, and the structural reductions between them.
//!
//! Members are fixed-width bit masks. Predicates return `Verdict`: either
//! the property holds or a replayable `Witness` names an offending tuple.

mod cancellative;
pub mod io;
mod transform;
mod witness;

pub use transform::{
    erdos_kleitman_reduce, find_r_partition, is_r_partite, sparse_to_linear, trim_degree_one,
    VertexPartition,
};
pub use witness::{Pattern, Witness};

use std::fmt;

/// Vertex subset as a bit mask; vertex i is bit i.
pub type Mask = u128;

pub const MAX_VERTICES: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyError {
    /// Two members have identical vertex sets (indices given).
    DuplicateMembers(usize, usize),
    UniverseTooLarge(usize),
    MemberOutOfRange { member: usize },
    /// Operation requires a declared uniformity.
    NotUniform,
    NotThreeUniform,
    /// sparse_to_linear precondition failed; the witness shows e edges on <= v vertices.
    NotSparse(Witness),
    BadShape(String),
}

impl fmt::Display for FamilyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyError::DuplicateMembers(i, j) => {
                write!(f, "members {i} and {j} are identical")
            }
            FamilyError::UniverseTooLarge(n) => {
                write!(f, "universe of {n} vertices exceeds the {MAX_VERTICES}-bit limit")
            }
            FamilyError::MemberOutOfRange { member } => {
                write!(f, "member {member} uses vertices outside the universe")
            }
            FamilyError::NotUniform => write!(f, "operation requires a uniform family"),
            FamilyError::NotThreeUniform => write!(f, "operation requires a 3-uniform family"),
            FamilyError::NotSparse(_) => write!(f, "family is not sparse enough"),
            FamilyError::BadShape(s) => write!(f, "{s}"),
        }
    }
}

impl std::error::Error for FamilyError {}

/// Outcome of a predicate: the property holds, or here is a certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Violated(Witness),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Holds => None,
            Verdict::Violated(w) => Some(w),
        }
    }
}

/// An ordered list of vertex subsets over the universe 0..n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFamily {
    n: usize,
    members: Vec<Mask>,
    uniform_r: Option<usize>,
}

impl SetFamily {
    pub fn new(n: usize, members: Vec<Mask>) -> Result<SetFamily, FamilyError> {
        if n > MAX_VERTICES {
            return Err(FamilyError::UniverseTooLarge(n));
        }
        let universe = universe_mask(n);
        for (i, &m) in members.iter().enumerate() {
            if m & !universe != 0 {
                return Err(FamilyError::MemberOutOfRange { member: i });
            }
        }
        let uniform_r = detect_uniformity(&members);
        Ok(SetFamily { n, members, uniform_r })
    }

    /// Convenience constructor from explicit vertex lists.
    pub fn from_sets(n: usize, sets: &[&[usize]]) -> Result<SetFamily, FamilyError> {
        let members = sets
            .iter()
            .map(|s| s.iter().fold(0 as Mask, |acc, &v| acc | (1 as Mask) << v))
            .collect();
        SetFamily::new(n, members)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Mask] {
        &self.members
    }

    /// Declared uniformity: Some(r) iff every member has exactly r vertices.
    pub fn uniform_r(&self) -> Option<usize> {
        self.uniform_r
    }

    pub fn member_vertices(&self, i: usize) -> Vec<usize> {
        mask_vertices(self.members[i])
    }

    /// Subfamily by member indices (order kept).
    pub fn subfamily(&self, indices: &[usize]) -> SetFamily {
        let members = indices.iter().map(|&i| self.members[i]).collect();
        SetFamily::new(self.n, members).expect("members already validated")
    }

    pub(crate) fn ensure_distinct(&self) -> Result<(), FamilyError> {
        let mut order: Vec<usize> = (0..self.members.len()).collect();
        order.sort_unstable_by_key(|&i| self.members[i]);
        for w in order.windows(2) {
            if self.members[w[0]] == self.members[w[1]] {
                let (i, j) = (w[0].min(w[1]), w[0].max(w[1]));
                return Err(FamilyError::DuplicateMembers(i, j));
            }
        }
        Ok(())
    }

    // ---- predicates ----

    /// t-cancellative: no distinct members a_1..a_t, b, c satisfy
    /// U(a) | b == U(a) | c. Hash-bucketed residual engine; collisions are
    /// confirmed by exact mask comparison, so verdicts are exact.
    pub fn is_t_cancellative(&self, t: usize) -> Result<Verdict, FamilyError> {
        self.is_t_cancellative_threads(t, 1)
    }

    /// Same verdict, with the scan over t-subsets split across worker
    /// threads. Any valid witness may be reported.
    pub fn is_t_cancellative_threads(
        &self,
        t: usize,
        threads: usize,
    ) -> Result<Verdict, FamilyError> {
        self.ensure_distinct()?;
        assert!(t >= 1, "cancellativity is defined for t >= 1");
        Ok(cancellative::cancellative_residual(self, t, threads.max(1)))
    }

    /// Reference engine: direct scan of all (t+2)-subsets and all ways to
    /// pick the pair {b, c} inside each.
    pub fn is_t_cancellative_naive(&self, t: usize) -> Result<Verdict, FamilyError> {
        self.ensure_distinct()?;
        assert!(t >= 1, "cancellativity is defined for t >= 1");
        Ok(cancellative::cancellative_naive(self, t))
    }

    /// t*-cancellative: for every length-t member sequence (repeats
    /// allowed) and members b, c with equal augmented unions, b == c or
    /// both lie in the sequence.
    pub fn is_t_star_cancellative(&self, t: usize) -> Result<Verdict, FamilyError> {
        self.ensure_distinct()?;
        assert!(t >= 1, "star cancellativity is defined for t >= 1");
        Ok(cancellative::star_cancellative(self, t))
    }

    /// Union-free in the three-distinct-members convention; alias for
    /// 1-cancellative.
    pub fn is_union_free(&self) -> Result<Verdict, FamilyError> {
        self.is_t_cancellative(1)
    }

    /// g-cover-free: no member lies in the union of g other distinct members.
    pub fn is_cover_free(&self, g: usize) -> Result<Verdict, FamilyError> {
        self.ensure_distinct()?;
        assert!(g >= 1, "cover-freeness is defined for g >= 1");
        let m = self.members.len();
        if m < g + 1 {
            return Ok(Verdict::Holds); // not enough distinct members to cover
        }
        for a0 in 0..m {
            let target = self.members[a0];
            // only members meeting the target can contribute
            let helpful: Vec<usize> = (0..m)
                .filter(|&i| i != a0 && self.members[i] & target != 0)
                .collect();
            let mut chosen = Vec::new();
            if self.cover_search(target, &helpful, 0, g, &mut chosen) {
                // pad to exactly g distinct others
                let mut cover = chosen.clone();
                for i in 0..m {
                    if cover.len() == g {
                        break;
                    }
                    if i != a0 && !cover.contains(&i) {
                        cover.push(i);
                    }
                }
                return Ok(Verdict::Violated(Witness::CoverFree { covered: a0, cover }));
            }
        }
        Ok(Verdict::Holds)
    }

    fn cover_search(
        &self,
        uncovered: Mask,
        helpful: &[usize],
        from: usize,
        budget: usize,
        chosen: &mut Vec<usize>,
    ) -> bool {
        if uncovered == 0 {
            return true;
        }
        if budget == 0 {
            return false;
        }
        for pos in from..helpful.len() {
            let i = helpful[pos];
            if self.members[i] & uncovered == 0 {
                continue;
            }
            chosen.push(i);
            if self.cover_search(uncovered & !self.members[i], helpful, pos + 1, budget - 1, chosen)
            {
                return true;
            }
            chosen.pop();
        }
        false
    }

    /// Locally (a,b)-thin: every a-subset of members leaves at least b
    /// vertices of degree exactly one among them.
    pub fn is_locally_thin(&self, a: usize, b: usize) -> Result<Verdict, FamilyError> {
        if !(1 <= b && b <= a) {
            return Err(FamilyError::BadShape(format!(
                "locally thin parameters need 1 <= b <= a, got a={a} b={b}"
            )));
        }
        self.ensure_distinct()?;
        if self.members.len() < a {
            return Ok(Verdict::Holds);
        }
        let mut tuple = Vec::with_capacity(a);
        Ok(self.thin_scan(0, a, b, 0, 0, &mut tuple))
    }

    fn thin_scan(
        &self,
        from: usize,
        remaining: usize,
        b: usize,
        once: Mask,
        twice: Mask,
        tuple: &mut Vec<usize>,
    ) -> Verdict {
        if remaining == 0 {
            let exactly_once = once & !twice;
            if (exactly_once.count_ones() as usize) < b {
                return Verdict::Violated(Witness::LocallyThin { tuple: tuple.clone(), b });
            }
            return Verdict::Holds;
        }
        for i in from..=self.members.len() - remaining {
            let m = self.members[i];
            tuple.push(i);
            let v = self.thin_scan(i + 1, remaining - 1, b, once | m, twice | (once & m), tuple);
            tuple.pop();
            if !v.holds() {
                return v;
            }
        }
        Verdict::Holds
    }

    /// Linear: pairwise intersections of size at most one.
    pub fn is_linear(&self) -> Verdict {
        for i in 0..self.members.len() {
            for j in i + 1..self.members.len() {
                if (self.members[i] & self.members[j]).count_ones() >= 2 {
                    return Verdict::Violated(Witness::NotLinear { e1: i, e2: j });
                }
            }
        }
        Verdict::Holds
    }

    /// (v,e)-sparse: no e distinct members span at most v vertices.
    pub fn is_sparse(&self, v: usize, e: usize) -> Verdict {
        if e == 0 || self.members.len() < e {
            return Verdict::Holds;
        }
        let mut chosen = Vec::with_capacity(e);
        if self.sparse_scan(0, e, v, 0, &mut chosen) {
            return Verdict::Violated(Witness::Sparse { edges: chosen, v });
        }
        Verdict::Holds
    }

    fn sparse_scan(
        &self,
        from: usize,
        remaining: usize,
        v: usize,
        span: Mask,
        chosen: &mut Vec<usize>,
    ) -> bool {
        if remaining == 0 {
            return true;
        }
        for i in from..=self.members.len() - remaining {
            let next = span | self.members[i];
            // the span only grows along a branch
            if next.count_ones() as usize > v {
                continue;
            }
            chosen.push(i);
            if self.sparse_scan(i + 1, remaining - 1, v, next, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }

    /// Search for four members forming a sub-hypergraph copy of either
    /// forbidden pattern (vertex relabeling; degree-profile filter plus
    /// backtracking). None means the family avoids both. The empty family
    /// is vacuously 3-uniform and avoids everything.
    pub fn find_g6_or_g7(&self) -> Result<Option<Witness>, FamilyError> {
        if !self.members.is_empty() && self.uniform_r != Some(3) {
            return Err(FamilyError::NotThreeUniform);
        }
        let m = self.members.len();
        if m < 4 {
            return Ok(None);
        }
        let mut quad = [0usize; 4];
        for a in 0..m {
            quad[0] = a;
            for b in a + 1..m {
                quad[1] = b;
                for c in b + 1..m {
                    quad[2] = c;
                    for d in c + 1..m {
                        quad[3] = d;
                        for pattern in [Pattern::G6, Pattern::G7] {
                            if let Some(vmap) = self.match_pattern(pattern, &quad) {
                                return Ok(Some(Witness::ForbiddenPattern {
                                    pattern,
                                    edges: quad,
                                    vmap,
                                }));
                            }
                        }
                    }
                }
            }
        }
        Ok(None)
    }

    /// Verdict-polarity wrapper: holds iff the family avoids both patterns.
    pub fn is_g6_g7_free(&self) -> Result<Verdict, FamilyError> {
        Ok(match self.find_g6_or_g7()? {
            None => Verdict::Holds,
            Some(w) => Verdict::Violated(w),
        })
    }

    fn match_pattern(&self, pattern: Pattern, quad: &[usize; 4]) -> Option<Vec<usize>> {
        let masks: Vec<Mask> = quad.iter().map(|&i| self.members[i]).collect();
        let span = masks.iter().fold(0 as Mask, |a, &m| a | m);
        let nv = pattern.vertex_count();
        if span.count_ones() as usize != nv {
            return None;
        }
        // degree profile within the quadruple must match the pattern's
        let mut profile: Vec<usize> = mask_vertices(span)
            .iter()
            .map(|&v| masks.iter().filter(|&&m| m >> v & 1 == 1).count())
            .collect();
        profile.sort_unstable();
        let pedges = pattern.edges();
        let mut pprofile = vec![0usize; nv];
        for e in pedges {
            for &v in e {
                pprofile[v] += 1;
            }
        }
        pprofile.sort_unstable();
        if profile != pprofile {
            return None;
        }
        // try every assignment of members to pattern edges
        let mut perm = [0usize, 1, 2, 3];
        let assignment_ok = |perm: &[usize; 4]| -> Option<Vec<usize>> {
            let mut vmap = vec![usize::MAX; nv];
            let mut used: Mask = 0;
            if Self::bind_vertices(pedges, &masks, perm, 0, &mut vmap, &mut used) {
                Some(vmap)
            } else {
                None
            }
        };
        // Heap's algorithm over the four edge slots
        let mut stack = [0usize; 4];
        if let Some(vm) = assignment_ok(&perm) {
            return Some(vm);
        }
        let mut i = 0;
        while i < 4 {
            if stack[i] < i {
                if i % 2 == 0 {
                    perm.swap(0, i);
                } else {
                    perm.swap(stack[i], i);
                }
                if let Some(vm) = assignment_ok(&perm) {
                    return Some(vm);
                }
                stack[i] += 1;
                i = 0;
            } else {
                stack[i] = 0;
                i += 1;
            }
        }
        None
    }

    /// Assign family vertices to pattern vertices one at a time; pattern
    /// vertex pv must land inside every member assigned to an edge
    /// containing pv. Sizes force the edge images to be exact.
    fn bind_vertices(
        pedges: &[[usize; 3]; 4],
        masks: &[Mask],
        perm: &[usize; 4],
        pv: usize,
        vmap: &mut [usize],
        used: &mut Mask,
    ) -> bool {
        if pv == vmap.len() {
            return true;
        }
        let mut allowed: Mask = !0;
        for (slot, edge) in pedges.iter().enumerate() {
            if edge.contains(&pv) {
                allowed &= masks[perm[slot]];
            }
        }
        allowed &= !*used;
        let mut rest = allowed;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            vmap[pv] = v;
            *used |= (1 as Mask) << v;
            if Self::bind_vertices(pedges, masks, perm, pv + 1, vmap, used) {
                return true;
            }
            *used &= !((1 as Mask) << v);
            vmap[pv] = usize::MAX;
        }
        false
    }
}

pub(crate) fn universe_mask(n: usize) -> Mask {
    if n == MAX_VERTICES {
        !0
    } else {
        ((1 as Mask) << n) - 1
    }
}

pub fn mask_vertices(m: Mask) -> Vec<usize> {
    let mut out = Vec::with_capacity(m.count_ones() as usize);
    let mut rest = m;
    while rest != 0 {
        out.push(rest.trailing_zeros() as usize);
        rest &= rest - 1;
    }
    out
}

pub fn vertices_mask(vs: &[usize]) -> Mask {
    vs.iter().fold(0, |acc, &v| acc | (1 as Mask) << v)
}

fn detect_uniformity(members: &[Mask]) -> Option<usize> {
    let first = members.first()?.count_ones() as usize;
    members
        .iter()
        .all(|m| m.count_ones() as usize == first)
        .then_some(first)
}
