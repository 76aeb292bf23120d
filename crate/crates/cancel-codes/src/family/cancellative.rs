//! Cancellativity engines. The fast path fixes a t-subset of members with
//! union U and looks for two outside members with the same residual M \ U;
//! injectivity of the residual map over each t-subset is exactly
//! t-cancellativity. Residuals go through an open-addressing table keyed
//! by a folded hash, with every hit confirmed by exact mask comparison.

use super::witness::Witness;
use super::{Mask, SetFamily, Verdict};

/// Open-addressing residual table with generation-based O(1) reset.
struct ResidualTable {
    slots: Vec<(u32, Mask, u32)>, // (generation, residual, member index)
    cap_mask: usize,
    generation: u32,
}

fn fold_hash(m: Mask) -> u64 {
    let lo = m as u64;
    let hi = (m >> 64) as u64;
    let mut h = lo ^ hi.rotate_left(31);
    h = h.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    h ^= h >> 29;
    h = h.wrapping_mul(0xBF58_476D_1CE4_E5B9);
    h ^ (h >> 32)
}

impl ResidualTable {
    fn with_capacity(items: usize) -> ResidualTable {
        let cap = (items * 2 + 4).next_power_of_two();
        ResidualTable { slots: vec![(0, 0, 0); cap], cap_mask: cap - 1, generation: 0 }
    }

    fn reset(&mut self) {
        self.generation = self.generation.wrapping_add(1);
        if self.generation == 0 {
            // wrapped: wipe stale generations once every 2^32 resets
            self.slots.fill((0, 0, 0));
            self.generation = 1;
        }
    }

    /// Insert a residual; on an exact duplicate return the earlier member.
    fn insert(&mut self, residual: Mask, member: u32) -> Option<u32> {
        let mut pos = fold_hash(residual) as usize & self.cap_mask;
        loop {
            let slot = &mut self.slots[pos];
            if slot.0 != self.generation {
                *slot = (self.generation, residual, member);
                return None;
            }
            if slot.1 == residual {
                return Some(slot.2);
            }
            pos = (pos + 1) & self.cap_mask;
        }
    }
}

/// Visit every t-subset of 0..m together with the union of its masks.
/// The visitor returns Some(witness) to stop early.
fn scan_t_subsets<F>(masks: &[Mask], t: usize, first_lo: usize, first_hi: usize, f: &mut F) -> Option<Witness>
where
    F: FnMut(&[usize], Mask) -> Option<Witness>,
{
    let m = masks.len();
    if t > m {
        return None;
    }
    let mut idx = vec![0usize; t];
    let mut unions = vec![0 as Mask; t];

    fn rec<F>(
        masks: &[Mask],
        depth: usize,
        from: usize,
        idx: &mut [usize],
        unions: &mut [Mask],
        f: &mut F,
    ) -> Option<Witness>
    where
        F: FnMut(&[usize], Mask) -> Option<Witness>,
    {
        let t = idx.len();
        if depth == t {
            let u = unions[t - 1];
            return f(idx, u);
        }
        let prev = if depth == 0 { 0 } else { unions[depth - 1] };
        for i in from..=masks.len() - (t - depth) {
            idx[depth] = i;
            unions[depth] = prev | masks[i];
            if let Some(w) = rec(masks, depth + 1, i + 1, idx, unions, f) {
                return Some(w);
            }
        }
        None
    }

    // split on the first index so worker threads can share the range
    for first in first_lo..first_hi.min(m - (t - 1)) {
        idx[0] = first;
        unions[0] = masks[first];
        if t == 1 {
            if let Some(w) = f(&idx, unions[0]) {
                return Some(w);
            }
        } else if let Some(w) = rec(masks, 1, first + 1, &mut idx, &mut unions, f) {
            return Some(w);
        }
    }
    None
}

fn residual_pass(masks: &[Mask], t: usize, lo: usize, hi: usize) -> Option<Witness> {
    let mut table = ResidualTable::with_capacity(masks.len());
    scan_t_subsets(masks, t, lo, hi, &mut |idx: &[usize], u: Mask| {
        table.reset();
        for (i, &m) in masks.iter().enumerate() {
            if idx.contains(&i) {
                continue;
            }
            if let Some(early) = table.insert(m & !u, i as u32) {
                return Some(Witness::Cancellative {
                    a: idx.to_vec(),
                    b: early as usize,
                    c: i,
                });
            }
        }
        None
    })
}

pub(super) fn cancellative_residual(f: &SetFamily, t: usize, threads: usize) -> Verdict {
    let masks = f.members();
    let m = masks.len();
    if m < t + 2 {
        return Verdict::Holds; // quantifier is vacuous
    }
    let first_range = m - (t - 1);
    if threads <= 1 || first_range < threads * 4 {
        return match residual_pass(masks, t, 0, first_range) {
            Some(w) => Verdict::Violated(w),
            None => Verdict::Holds,
        };
    }
    // partition the outermost index across workers; first witness wins
    let chunk = first_range.div_ceil(threads);
    let found = std::sync::Mutex::new(None::<Witness>);
    let stop = std::sync::atomic::AtomicBool::new(false);
    std::thread::scope(|scope| {
        for w in 0..threads {
            let lo = w * chunk;
            let hi = ((w + 1) * chunk).min(first_range);
            if lo >= hi {
                continue;
            }
            let found = &found;
            let stop = &stop;
            scope.spawn(move || {
                // coarse cancellation: check between outer indices
                for first in lo..hi {
                    if stop.load(std::sync::atomic::Ordering::Relaxed) {
                        return;
                    }
                    if let Some(wit) = residual_pass(masks, t, first, first + 1) {
                        stop.store(true, std::sync::atomic::Ordering::Relaxed);
                        let mut guard = found.lock().unwrap();
                        if guard.is_none() {
                            *guard = Some(wit);
                        }
                        return;
                    }
                }
            });
        }
    });
    match found.into_inner().unwrap() {
        Some(w) => Verdict::Violated(w),
        None => Verdict::Holds,
    }
}

/// Direct scan of (t+2)-subsets and the pair {b, c} inside each; the
/// reference engine the residual path is tested against.
pub(super) fn cancellative_naive(f: &SetFamily, t: usize) -> Verdict {
    let masks = f.members();
    let m = masks.len();
    if m < t + 2 {
        return Verdict::Holds;
    }
    let mut idx = Vec::with_capacity(t + 2);
    fn rec(masks: &[Mask], from: usize, need: usize, idx: &mut Vec<usize>) -> Option<Witness> {
        if need == 0 {
            // choose the unordered pair {b, c}; the rest are the a's
            let k = idx.len();
            for bi in 0..k {
                for ci in bi + 1..k {
                    let mut u: Mask = 0;
                    for (pos, &mem) in idx.iter().enumerate() {
                        if pos != bi && pos != ci {
                            u |= masks[mem];
                        }
                    }
                    if u | masks[idx[bi]] == u | masks[idx[ci]] {
                        let a: Vec<usize> = idx
                            .iter()
                            .enumerate()
                            .filter_map(|(pos, &mem)| (pos != bi && pos != ci).then_some(mem))
                            .collect();
                        return Some(Witness::Cancellative { a, b: idx[bi], c: idx[ci] });
                    }
                }
            }
            return None;
        }
        for i in from..=masks.len() - need {
            idx.push(i);
            if let Some(w) = rec(masks, i + 1, need - 1, idx) {
                return Some(w);
            }
            idx.pop();
        }
        None
    }
    match rec(masks, 0, t + 2, &mut idx) {
        Some(w) => Verdict::Violated(w),
        None => Verdict::Holds,
    }
}

/// t*-cancellative check. Sequences with repeated entries contribute the
/// union of their support, so it suffices to scan supports of size 1..=t;
/// a violation is two members with equal residuals not both inside the
/// support.
pub(super) fn star_cancellative(f: &SetFamily, t: usize) -> Verdict {
    let masks = f.members();
    let m = masks.len();
    if m < 2 {
        return Verdict::Holds;
    }
    let mut table = ResidualTable::with_capacity(m);
    for s in 1..=t.min(m) {
        let wit = scan_t_subsets(masks, s, 0, m - (s - 1), &mut |idx: &[usize], u: Mask| {
            table.reset();
            for (i, &mask) in masks.iter().enumerate() {
                if let Some(early) = table.insert(mask & !u, i as u32) {
                    let early = early as usize;
                    // equal residuals inside the support are allowed
                    if idx.contains(&early) && idx.contains(&i) {
                        continue;
                    }
                    return Some(Witness::StarCancellative {
                        t,
                        support: idx.to_vec(),
                        b: early,
                        c: i,
                    });
                }
            }
            None
        });
        if let Some(w) = wit {
            return Verdict::Violated(w);
        }
    }
    Verdict::Holds
}
