//! Dancing links (Algorithm X) over primary and secondary items.
//!
//! Primary items must be covered exactly once, secondary items at most once.

pub struct ExactCover {
    // node arrays; nodes 0..=items are headers, 0 is the root
    left: Vec<usize>,
    right: Vec<usize>,
    up: Vec<usize>,
    down: Vec<usize>,
    col: Vec<usize>,
    row: Vec<usize>,
    size: Vec<usize>,
    nodes: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flow {
    Continue,
    Stop,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverStats {
    pub solutions: u64,
    pub nodes: u64,
    /// The node budget ran out before the tree was exhausted.
    pub truncated: bool,
}

impl ExactCover {
    pub fn new(primary: usize, secondary: usize, rows: &[Vec<usize>]) -> Self {
        let items = primary + secondary;
        let mut x = ExactCover {
            left: Vec::new(),
            right: Vec::new(),
            up: Vec::new(),
            down: Vec::new(),
            col: Vec::new(),
            row: Vec::new(),
            size: vec![0; items + 1],
            nodes: 0,
        };
        for i in 0..=items {
            x.left.push(if i == 0 { primary } else { i - 1 });
            x.right.push(if i == primary { 0 } else { i + 1 });
            x.up.push(i);
            x.down.push(i);
            x.col.push(i);
            x.row.push(usize::MAX);
        }
        // secondary headers link only to themselves
        for i in primary + 1..=items {
            x.left[i] = i;
            x.right[i] = i;
        }
        for (r, items_of_row) in rows.iter().enumerate() {
            let first = x.left.len();
            for (k, &item) in items_of_row.iter().enumerate() {
                assert!(item < items, "item {item} out of range");
                let c = item + 1;
                let node = x.left.len();
                x.left.push(if k == 0 { node } else { node - 1 });
                x.right.push(first);
                if k > 0 {
                    x.right[node - 1] = node;
                    x.left[first] = node;
                }
                x.up.push(x.up[c]);
                x.down.push(c);
                let above = x.up[c];
                x.down[above] = node;
                x.up[c] = node;
                x.col.push(c);
                x.row.push(r);
                x.size[c] += 1;
            }
        }
        x
    }

    fn cover(&mut self, c: usize) {
        let (l, r) = (self.left[c], self.right[c]);
        self.right[l] = r;
        self.left[r] = l;
        let mut i = self.down[c];
        while i != c {
            let mut j = self.right[i];
            while j != i {
                let (u, d) = (self.up[j], self.down[j]);
                self.down[u] = d;
                self.up[d] = u;
                self.size[self.col[j]] -= 1;
                j = self.right[j];
            }
            i = self.down[i];
        }
    }

    fn uncover(&mut self, c: usize) {
        let mut i = self.up[c];
        while i != c {
            let mut j = self.left[i];
            while j != i {
                self.size[self.col[j]] += 1;
                let (u, d) = (self.up[j], self.down[j]);
                self.down[u] = j;
                self.up[d] = j;
                j = self.left[j];
            }
            i = self.up[i];
        }
        let (l, r) = (self.left[c], self.right[c]);
        self.right[l] = c;
        self.left[r] = c;
    }

    /// Enumerates solutions (as sorted row indices) until `visit` stops or
    /// `budget` search nodes have been expanded.
    pub fn solve(&mut self, budget: u64, mut visit: impl FnMut(&[usize]) -> Flow) -> CoverStats {
        self.nodes = 0;
        let mut partial = Vec::new();
        let mut stats = CoverStats { solutions: 0, nodes: 0, truncated: false };
        let _ = self.search(budget, &mut partial, &mut visit, &mut stats);
        stats.nodes = self.nodes;
        stats
    }

    /// Returns `Err(())` to unwind on stop or budget exhaustion.
    fn search(
        &mut self,
        budget: u64,
        partial: &mut Vec<usize>,
        visit: &mut impl FnMut(&[usize]) -> Flow,
        stats: &mut CoverStats,
    ) -> Result<(), ()> {
        if self.right[0] == 0 {
            stats.solutions += 1;
            let mut rows = partial.clone();
            rows.sort_unstable();
            return match visit(&rows) {
                Flow::Continue => Ok(()),
                Flow::Stop => Err(()),
            };
        }
        if self.nodes >= budget {
            stats.truncated = true;
            return Err(());
        }
        self.nodes += 1;
        let mut c = self.right[0];
        let mut best = c;
        while c != 0 {
            if self.size[c] < self.size[best] {
                best = c;
            }
            c = self.right[c];
        }
        if self.size[best] == 0 {
            return Ok(());
        }
        self.cover(best);
        let mut r = self.down[best];
        let mut outcome = Ok(());
        while r != best {
            partial.push(self.row[r]);
            let mut j = self.right[r];
            while j != r {
                self.cover(self.col[j]);
                j = self.right[j];
            }
            outcome = self.search(budget, partial, visit, stats);
            let mut j = self.left[r];
            while j != r {
                self.uncover(self.col[j]);
                j = self.left[j];
            }
            partial.pop();
            if outcome.is_err() {
                break;
            }
            r = self.down[r];
        }
        self.uncover(best);
        outcome
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn knuth_example() {
        // items a..g, the classic six-row instance with the unique cover {0, 3, 4}
        let rows = vec![vec![2, 4, 5], vec![0, 3, 6], vec![1, 2, 5], vec![0, 3], vec![1, 6], vec![3, 4, 6]];
        let mut x = ExactCover::new(7, 0, &rows);
        let mut found = Vec::new();
        let stats = x.solve(u64::MAX, |s| {
            found.push(s.to_vec());
            Flow::Continue
        });
        assert_eq!(stats.solutions, 1);
        assert_eq!(found, vec![vec![0, 3, 4]]);
        assert!(!stats.truncated);
    }

    #[test]
    fn secondary_items_are_optional() {
        // two primary items, one secondary shared by the only rows covering them
        let rows = vec![vec![0, 2], vec![1, 2], vec![0], vec![1]];
        let mut x = ExactCover::new(2, 1, &rows);
        let stats = x.solve(u64::MAX, |_| Flow::Continue);
        assert_eq!(stats.solutions, 3);
    }

    #[test]
    fn budget_truncates() {
        let rows: Vec<Vec<usize>> = (0..8).map(|i| vec![i]).collect();
        let mut x = ExactCover::new(8, 0, &rows);
        let stats = x.solve(3, |_| Flow::Continue);
        assert!(stats.truncated);
    }
}
