//! Contraction-only reduction search.
//!
//! A reduction of a sequence to a target keeps one position per target type
//! as a through wire and cancels every segment between through wires with
//! nested cups. Cancellable intervals are found by interval dynamic
//! programming; witnesses are read off left to right, preferring at every
//! position a cup with the nearest possible partner over a through wire.
//! That order makes the first witness the one with the lexicographically
//! smallest sorted link list.

use super::diagram::{Link, ReductionDiagram};
use super::types::{PregroupType, SimpleType};

struct Tables<'a> {
    types: &'a [SimpleType],
    target: &'a [SimpleType],
    /// `cancel[i][j]`: the half-open interval `i..j` cancels completely.
    cancel: Vec<Vec<bool>>,
    /// `feasible[p][t]`: positions `p..` reduce to `target[t..]`.
    feasible: Vec<Vec<bool>>,
}

impl<'a> Tables<'a> {
    fn build(seq: &'a PregroupType, target: &'a PregroupType) -> Self {
        let types = seq.simples();
        let target = target.simples();
        let n = types.len();
        let m = target.len();

        let mut cancel = vec![vec![false; n + 1]; n + 1];
        for (i, row) in cancel.iter_mut().enumerate() {
            row[i] = true;
        }
        for span in (2..=n).step_by(2) {
            for i in 0..=n - span {
                let j = i + span;
                cancel[i][j] = (i + 1..j).step_by(2).any(|k| {
                    types[i].contracts_with(&types[k]) && cancel[i + 1][k] && cancel[k + 1][j]
                });
            }
        }

        let mut feasible = vec![vec![false; m + 1]; n + 1];
        feasible[n][m] = true;
        for p in (0..n).rev() {
            for t in 0..=m {
                let through = t < m && types[p] == target[t] && feasible[p + 1][t + 1];
                feasible[p][t] = through
                    || (p + 1..n).step_by(2).any(|k| {
                        types[p].contracts_with(&types[k])
                            && cancel[p + 1][k]
                            && feasible[k + 1][t]
                    });
            }
        }

        Tables {
            types,
            target,
            cancel,
            feasible,
        }
    }

    /// Partners `k` for a cup opened at `i` inside an interval ending at
    /// `end`, in increasing order.
    fn partners(&self, i: usize, end: usize) -> impl Iterator<Item = usize> + '_ {
        (i + 1..end)
            .step_by(2)
            .filter(move |&k| self.types[i].contracts_with(&self.types[k]) && self.cancel[i + 1][k])
    }

    /// Lexicographically least full cancellation of `i..j`.
    fn least_cancellation(&self, i: usize, j: usize, links: &mut Vec<Link>) {
        if i == j {
            return;
        }
        let k = self
            .partners(i, j)
            .find(|&k| self.cancel[k + 1][j])
            .expect("interval known to cancel");
        links.push((i, k));
        self.least_cancellation(i + 1, k, links);
        self.least_cancellation(k + 1, j, links);
    }

    fn least_witness(&self) -> Vec<Link> {
        let n = self.types.len();
        let (mut p, mut t) = (0, 0);
        let mut links = Vec::new();
        while p < n {
            let cup = self
                .partners(p, n)
                .find(|&k| self.feasible[k + 1][t]);
            match cup {
                Some(k) => {
                    links.push((p, k));
                    self.least_cancellation(p + 1, k, &mut links);
                    p = k + 1;
                }
                None => {
                    debug_assert!(t < self.target.len() && self.types[p] == self.target[t]);
                    p += 1;
                    t += 1;
                }
            }
        }
        links
    }

    /// Every full cancellation of `i..j` in lexicographic order, at most `limit`.
    fn all_cancellations(&self, i: usize, j: usize, limit: usize) -> Vec<Vec<Link>> {
        if i == j {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for k in self.partners(i, j).filter(|&k| self.cancel[k + 1][j]) {
            let inner = self.all_cancellations(i + 1, k, limit);
            let outer = self.all_cancellations(k + 1, j, limit);
            for a in &inner {
                for b in &outer {
                    if out.len() == limit {
                        return out;
                    }
                    let mut links = Vec::with_capacity(1 + a.len() + b.len());
                    links.push((i, k));
                    links.extend_from_slice(a);
                    links.extend_from_slice(b);
                    out.push(links);
                }
            }
        }
        out
    }

    /// Every way for positions `p..` to reduce to `target[t..]`, in
    /// lexicographic order of links, at most `limit`.
    fn all_witnesses(&self, p: usize, t: usize, limit: usize) -> Vec<Vec<Link>> {
        let n = self.types.len();
        if p == n {
            return if t == self.target.len() {
                vec![Vec::new()]
            } else {
                Vec::new()
            };
        }
        let mut out = Vec::new();
        for k in self.partners(p, n).filter(|&k| self.feasible[k + 1][t]) {
            let inner = self.all_cancellations(p + 1, k, limit);
            let rest = self.all_witnesses(k + 1, t, limit);
            for a in &inner {
                for b in &rest {
                    if out.len() == limit {
                        return out;
                    }
                    let mut links = Vec::with_capacity(1 + a.len() + b.len());
                    links.push((p, k));
                    links.extend_from_slice(a);
                    links.extend_from_slice(b);
                    out.push(links);
                }
            }
        }
        let m = self.target.len();
        if t < m && self.types[p] == self.target[t] && self.feasible[p + 1][t + 1] {
            for rest in self.all_witnesses(p + 1, t + 1, limit - out.len().min(limit)) {
                if out.len() == limit {
                    break;
                }
                out.push(rest);
            }
        }
        out
    }
}

/// Finds the canonical contraction-only reduction of `seq` to `target`, if
/// one exists. Among all witnesses the one with the lexicographically
/// smallest sorted link list is returned.
pub fn reduce(seq: &PregroupType, target: &PregroupType) -> Option<ReductionDiagram> {
    let tables = Tables::build(seq, target);
    if !tables.feasible[0][0] {
        return None;
    }
    Some(ReductionDiagram::new(seq.len(), tables.least_witness()))
}

/// Lists up to `limit` distinct reductions of `seq` to `target`, ordered so
/// that the first one is what [`reduce`] returns.
///
/// Panics if `limit` is zero.
pub fn enumerate_reductions(
    seq: &PregroupType,
    target: &PregroupType,
    limit: usize,
) -> Vec<ReductionDiagram> {
    assert!(limit >= 1, "limit must be at least 1");
    let tables = Tables::build(seq, target);
    if !tables.feasible[0][0] {
        return Vec::new();
    }
    tables
        .all_witnesses(0, 0, limit)
        .into_iter()
        .map(|links| ReductionDiagram::new(seq.len(), links))
        .collect()
}

/// True when `seq` reduces to the sentence type `s`.
pub fn is_sentence(seq: &PregroupType) -> bool {
    let target = PregroupType::sentence();
    Tables::build(seq, &target).feasible[0][0]
}
