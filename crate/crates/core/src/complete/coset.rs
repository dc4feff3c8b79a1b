//! Coset enumeration for finitely presented groups.
//!
//! The enumeration runs over the trivial subgroup, so the surviving cosets
//! are exactly the elements of the presented group. Symbols encode the
//! generator alphabet: symbol `2i` is generator `i` and symbol `2i + 1` is
//! its inverse.
//!
//! The strategy is relator scanning with on-demand definitions: a scan that
//! stalls with a gap of two or more defines a fresh coset, a gap of one
//! becomes a table deduction, and a closed scan that does not return to its
//! start merges the two cosets. Merges are processed through a union-find
//! with a pending queue, and reads canonicalize through it. Sweeps repeat
//! until a full pass neither defines nor merges, so the final table is
//! total and every relator closes everywhere; a verification pass asserts
//! both before returning.

use std::collections::VecDeque;

/// A group presentation: a generator count and relator words over the
/// symbol alphabet.
#[derive(Debug, Clone)]
pub struct Presentation {
    pub generators: usize,
    pub relators: Vec<Vec<usize>>,
}

/// Flips a symbol between a generator and its inverse.
pub fn inverse_symbol(s: usize) -> usize {
    s ^ 1
}

/// Outcome of a bounded enumeration.
#[derive(Debug, Clone)]
pub enum EnumerationOutcome {
    /// The table closed. Rows are group elements, row 0 the identity;
    /// `table[c][s]` is the coset reached from `c` by symbol `s`.
    Complete { table: Vec<Vec<usize>> },
    /// The number of defined cosets hit the cap before the table closed.
    OutOfRoom { defined: usize },
}

struct Enumerator {
    width: usize,
    row: Vec<Vec<usize>>,
    parent: Vec<usize>,
    queue: VecDeque<(usize, usize)>,
    cap: usize,
    changed: bool,
}

const UNSET: usize = usize::MAX;

impl Enumerator {
    fn new(generators: usize, cap: usize) -> Self {
        let width = 2 * generators;
        Enumerator {
            width,
            row: vec![vec![UNSET; width]],
            parent: vec![0],
            queue: VecDeque::new(),
            cap,
            changed: false,
        }
    }

    fn find(&mut self, mut c: usize) -> usize {
        while self.parent[c] != c {
            self.parent[c] = self.parent[self.parent[c]];
            c = self.parent[c];
        }
        c
    }

    fn live(&mut self, c: usize) -> bool {
        self.find(c) == c
    }

    /// Reads an entry, canonicalized; UNSET stays UNSET.
    fn entry(&mut self, c: usize, s: usize) -> usize {
        let raw = self.row[c][s];
        if raw == UNSET {
            UNSET
        } else {
            self.find(raw)
        }
    }

    /// Records `c . s = d` together with the reverse entry, queueing a
    /// coincidence when either slot already disagrees.
    fn deduce(&mut self, c: usize, s: usize, d: usize) {
        let c = self.find(c);
        let d = self.find(d);
        let cur = self.entry(c, s);
        if cur == UNSET {
            self.row[c][s] = d;
            self.changed = true;
        } else if cur != d {
            self.queue.push_back((cur, d));
        }
        let back = self.entry(d, inverse_symbol(s));
        if back == UNSET {
            self.row[d][inverse_symbol(s)] = c;
            self.changed = true;
        } else if back != c {
            self.queue.push_back((back, c));
        }
        self.merge_pending();
    }

    /// Defines a fresh coset as `c . s`; false when out of room.
    fn define(&mut self, c: usize, s: usize) -> bool {
        if self.row.len() >= self.cap {
            return false;
        }
        let fresh = self.row.len();
        self.row.push(vec![UNSET; self.width]);
        self.parent.push(fresh);
        self.deduce(c, s, fresh);
        true
    }

    fn coincide(&mut self, a: usize, b: usize) {
        self.queue.push_back((a, b));
        self.merge_pending();
    }

    fn merge_pending(&mut self) {
        while let Some((a, b)) = self.queue.pop_front() {
            let a = self.find(a);
            let b = self.find(b);
            if a == b {
                continue;
            }
            // The smaller index survives, so coset 0 is never retired.
            let (keep, gone) = if a < b { (a, b) } else { (b, a) };
            self.parent[gone] = keep;
            self.changed = true;
            for s in 0..self.width {
                let d = self.row[gone][s];
                if d == UNSET {
                    continue;
                }
                let d = self.find(d);
                let cur = self.entry(keep, s);
                if cur == UNSET {
                    self.row[keep][s] = d;
                } else if cur != d {
                    self.queue.push_back((cur, d));
                }
            }
        }
    }

    /// Scans a relator at a live coset, filling gaps; false when out of
    /// room.
    fn scan_and_fill(&mut self, c: usize, word: &[usize]) -> bool {
        loop {
            let c = self.find(c);
            let mut f = c;
            let mut i = 0;
            while i < word.len() {
                let next = self.entry(f, word[i]);
                if next == UNSET {
                    break;
                }
                f = next;
                i += 1;
            }
            if i == word.len() {
                if f != c {
                    self.coincide(f, c);
                }
                return true;
            }
            let mut b = c;
            let mut j = word.len();
            while j > i + 1 {
                let prev = self.entry(b, inverse_symbol(word[j - 1]));
                if prev == UNSET {
                    break;
                }
                b = prev;
                j -= 1;
            }
            if j == i + 1 {
                // One missing entry: the scan closes as a deduction.
                self.deduce(f, word[i], b);
                return true;
            }
            // Wider gap: extend the forward scan by one fresh coset and
            // rescan from the start.
            if !self.define(f, word[i]) {
                return false;
            }
        }
    }
}

/// Enumerates the cosets of the trivial subgroup, capping the number of
/// cosets ever defined.
pub fn enumerate_cosets(p: &Presentation, max_cosets: usize) -> EnumerationOutcome {
    assert!(max_cosets >= 1);
    let mut e = Enumerator::new(p.generators, max_cosets);
    loop {
        e.changed = false;
        for c in 0..e.row.len() {
            if !e.live(c) {
                continue;
            }
            for rel in &p.relators {
                if !e.scan_and_fill(c, rel) {
                    return EnumerationOutcome::OutOfRoom {
                        defined: e.row.len(),
                    };
                }
                if !e.live(c) {
                    break;
                }
            }
        }
        for c in 0..e.row.len() {
            if !e.live(c) {
                continue;
            }
            for s in 0..e.width {
                if e.entry(c, s) == UNSET && !e.define(c, s) {
                    return EnumerationOutcome::OutOfRoom {
                        defined: e.row.len(),
                    };
                }
            }
        }
        if !e.changed {
            break;
        }
    }
    // Compact the live cosets and verify the result.
    let mut new_index = vec![UNSET; e.row.len()];
    let mut count = 0;
    for c in 0..e.row.len() {
        if e.live(c) {
            new_index[c] = count;
            count += 1;
        }
    }
    let mut table = Vec::with_capacity(count);
    for c in 0..e.row.len() {
        if !e.live(c) {
            continue;
        }
        let mut out = vec![UNSET; e.width];
        for (s, slot) in out.iter_mut().enumerate() {
            let d = e.entry(c, s);
            assert!(d != UNSET, "closed table has an undefined entry");
            *slot = new_index[d];
        }
        table.push(out);
    }
    for (c, row) in table.iter().enumerate() {
        for s in 0..e.width {
            assert_eq!(
                table[row[s]][inverse_symbol(s)],
                c,
                "inverse action does not undo symbol {s} at coset {c}"
            );
        }
    }
    for rel in &p.relators {
        for c in 0..count {
            let end = rel.iter().fold(c, |at, &s| table[at][s]);
            assert_eq!(end, c, "relator fails to close at coset {c}");
        }
    }
    EnumerationOutcome::Complete { table }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;

    fn complete_size(p: &Presentation, cap: usize) -> Option<usize> {
        match enumerate_cosets(p, cap) {
            EnumerationOutcome::Complete { table } => Some(table.len()),
            EnumerationOutcome::OutOfRoom { .. } => None,
        }
    }

    #[test]
    fn cyclic_group_of_order_six() {
        let p = Presentation {
            generators: 1,
            relators: vec![vec![0, 0, 0, 0, 0, 0]],
        };
        assert_eq!(complete_size(&p, 64), Some(6));
    }

    #[test]
    fn symmetric_group_on_three_letters() {
        // Two generators: a transposition and a three cycle; their product
        // is a transposition again.
        let p = Presentation {
            generators: 2,
            relators: vec![vec![0, 0], vec![2, 2, 2], vec![0, 2, 0, 2]],
        };
        assert_eq!(complete_size(&p, 64), Some(6));
    }

    #[test]
    fn alternating_group_on_four_letters() {
        let p = Presentation {
            generators: 2,
            relators: vec![vec![0, 0], vec![2, 2, 2], vec![0, 2, 0, 2, 0, 2]],
        };
        assert_eq!(complete_size(&p, 64), Some(12));
    }

    #[test]
    fn quaternion_group() {
        // a^4 = 1, a^2 = b^2, b^-1 a b = a^-1.
        let p = Presentation {
            generators: 2,
            relators: vec![
                vec![0, 0, 0, 0],
                vec![0, 0, 3, 3],
                vec![3, 0, 2, 0],
            ],
        };
        assert_eq!(complete_size(&p, 64), Some(8));
    }

    #[test]
    fn free_group_runs_out_of_room() {
        let p = Presentation {
            generators: 1,
            relators: vec![],
        };
        assert!(complete_size(&p, 100).is_none());
    }

    #[test]
    fn trivialized_generator_collapses() {
        let p = Presentation {
            generators: 2,
            relators: vec![vec![0], vec![2, 2, 2]],
        };
        assert_eq!(complete_size(&p, 64), Some(3));
    }

    #[test]
    fn generator_convention_irrelevant() {
        // Presenting a monoid with one generator per element can include
        // or exclude the identity element as a generator; both close on
        // the same group. The monoid here is truncation at two.
        let m = crate::samples::n3();
        let n = m.size();
        let with_identity = {
            let mut relators = vec![vec![2 * m.identity()]];
            for a in 0..n {
                for b in 0..n {
                    relators.push(vec![2 * a, 2 * b, 2 * m.mul(a, b) + 1]);
                }
            }
            Presentation {
                generators: n,
                relators,
            }
        };
        let without_identity = {
            // Non-identity elements keep their index order.
            let gen_of: Vec<Option<usize>> = {
                let mut next = 0;
                (0..n)
                    .map(|a| {
                        if a == m.identity() {
                            None
                        } else {
                            let g = next;
                            next += 1;
                            Some(g)
                        }
                    })
                    .collect()
            };
            let mut relators = Vec::new();
            for a in 0..n {
                for b in 0..n {
                    let mut word = Vec::new();
                    if let Some(g) = gen_of[a] {
                        word.push(2 * g);
                    }
                    if let Some(g) = gen_of[b] {
                        word.push(2 * g);
                    }
                    if let Some(g) = gen_of[m.mul(a, b)] {
                        word.push(2 * g + 1);
                    }
                    if !word.is_empty() {
                        relators.push(word);
                    }
                }
            }
            Presentation {
                generators: n - 1,
                relators,
            }
        };
        assert_eq!(
            complete_size(&with_identity, 64),
            complete_size(&without_identity, 64)
        );
    }
}
