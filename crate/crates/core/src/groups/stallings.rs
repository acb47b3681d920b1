//! Stallings folding of subgroup graphs of free groups.

use super::free::Word;

/// Directed edge labeled by a positive generator index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub from: usize,
    pub label: u32,
    pub to: usize,
}

/// Labeled graph with a basepoint; vertex 0 is always the basepoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StallingsGraph {
    vertex_count: usize,
    edges: Vec<Edge>,
    folded: bool,
}

impl StallingsGraph {
    /// One closed path at the basepoint per nonempty word.
    pub fn wedge_of_loops(words: &[Word]) -> Self {
        let mut vertex_count = 1;
        let mut edges = Vec::new();
        for w in words {
            let mut cur = 0;
            for (i, &l) in w.letters().iter().enumerate() {
                let next = if i + 1 == w.len() {
                    0
                } else {
                    vertex_count += 1;
                    vertex_count - 1
                };
                let label = l.unsigned_abs();
                edges.push(if l > 0 {
                    Edge {
                        from: cur,
                        label,
                        to: next,
                    }
                } else {
                    Edge {
                        from: next,
                        label,
                        to: cur,
                    }
                });
                cur = next;
            }
        }
        StallingsGraph {
            vertex_count,
            edges,
            folded: false,
        }
    }

    pub fn basepoint(&self) -> usize {
        0
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_folded(&self) -> bool {
        self.folded
    }

    /// Two edges sharing a label that both leave, or both enter, one vertex.
    fn find_fold(&self) -> Option<(usize, usize)> {
        for (i, a) in self.edges.iter().enumerate() {
            for (j, b) in self.edges.iter().enumerate().skip(i + 1) {
                if a.label == b.label && (a.from == b.from || a.to == b.to) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Performs one fold. Returns false when no fold applies. Every fold
    /// removes at least one edge.
    pub fn fold_step(&mut self) -> bool {
        let Some((i, j)) = self.find_fold() else {
            self.folded = true;
            return false;
        };
        let (a, b) = (self.edges[i], self.edges[j]);
        self.edges.remove(j);
        let (x, y) = if a.from == b.from {
            (a.to, b.to)
        } else {
            (a.from, b.from)
        };
        if x != y {
            // Merge the larger id into the smaller so the basepoint survives.
            let (keep, gone) = (x.min(y), x.max(y));
            for e in &mut self.edges {
                if e.from == gone {
                    e.from = keep;
                }
                if e.to == gone {
                    e.to = keep;
                }
            }
        }
        let mut seen = std::collections::BTreeSet::new();
        self.edges.retain(|e| seen.insert(*e));
        true
    }

    /// Removes hanging trees: vertices of degree one other than the basepoint.
    fn prune(&mut self) {
        loop {
            let mut degree = vec![0usize; self.vertex_count];
            for e in &self.edges {
                degree[e.from] += 1;
                degree[e.to] += 1;
            }
            let Some(pos) = self.edges.iter().position(|e| {
                (e.from != 0 && degree[e.from] == 1) || (e.to != 0 && degree[e.to] == 1)
            }) else {
                break;
            };
            self.edges.remove(pos);
        }
    }

    /// Renumbers surviving vertices densely, basepoint first.
    fn compact(&mut self) {
        let mut ids = vec![usize::MAX; self.vertex_count];
        ids[0] = 0;
        let mut next = 1;
        for e in &self.edges {
            for v in [e.from, e.to] {
                if ids[v] == usize::MAX {
                    ids[v] = next;
                    next += 1;
                }
            }
        }
        for e in &mut self.edges {
            e.from = ids[e.from];
            e.to = ids[e.to];
        }
        self.vertex_count = next;
    }

    /// Folds to completion, then trims to the core graph at the basepoint.
    pub fn fold(mut self) -> Self {
        while self.fold_step() {}
        self.prune();
        self.compact();
        self.folded = true;
        self
    }

    /// One vertex carrying one loop for each label `1..=petals`.
    pub fn is_rose(&self, petals: usize) -> bool {
        if self.vertex_count != 1 || self.edges.len() != petals {
            return false;
        }
        let mut labels: Vec<u32> = self.edges.iter().map(|e| e.label).collect();
        labels.sort_unstable();
        labels.iter().copied().eq(1..=petals as u32)
    }

    /// Checks the folded invariant directly: no two edges with one label
    /// share a source or share a target.
    pub fn satisfies_fold_invariant(&self) -> bool {
        self.find_fold().is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(ws: &[&[i32]]) -> Vec<Word> {
        ws.iter().map(|w| Word::new(w.iter().copied())).collect()
    }

    #[test]
    fn generators_fold_to_rose() {
        let g = StallingsGraph::wedge_of_loops(&words(&[&[1], &[2]])).fold();
        assert!(g.is_rose(2));
        assert!(g.satisfies_fold_invariant());
    }

    #[test]
    fn product_is_single_loop_of_length_two() {
        let g = StallingsGraph::wedge_of_loops(&words(&[&[1, 2]])).fold();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 2);
        assert!(!g.is_rose(2));
    }

    #[test]
    fn repeated_generator_collapses() {
        let g = StallingsGraph::wedge_of_loops(&words(&[&[1], &[1]])).fold();
        assert!(g.is_rose(1));
    }

    #[test]
    fn hanging_tree_is_pruned() {
        // a b a^-1 and a: folding exposes the loop b at the far end of a,
        // then a a^-1 conjugation collapses everything to a rose.
        let g = StallingsGraph::wedge_of_loops(&words(&[&[1, 2, -1], &[1]])).fold();
        assert!(g.is_rose(2));
        // a b a^-1 alone: a stem to a b-loop; the basepoint is kept.
        let g = StallingsGraph::wedge_of_loops(&words(&[&[1, 2, -1]])).fold();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn fold_steps_strictly_shrink() {
        let mut g = StallingsGraph::wedge_of_loops(&words(&[&[1, 1, 2], &[1, 2, 2], &[-1, 2]]));
        let mut last = g.edge_count();
        while g.fold_step() {
            assert!(g.edge_count() < last);
            last = g.edge_count();
        }
        assert!(g.is_folded());
    }

    #[test]
    fn empty_words_give_point() {
        let g = StallingsGraph::wedge_of_loops(&words(&[&[]])).fold();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 0);
    }
}
