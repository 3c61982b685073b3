//! Trie/nodelist baseline engine.
//!
//! Unique g-mers live at the leaves with per-sequence occurrence counts.
//! For every leaf a depth-first traversal carries a mismatch budget and
//! prunes branches that exceed it; every leaf reached at exact distance d
//! contributes the outer product of the two leaves' count vectors to N_d.
//! Reachable leaves are recomputed per leaf instead of storing persistent
//! nodelists, and the traversal only visits leaves at or after the current
//! one in key order, mirroring each cross contribution.

use crate::gmer::GMerTable;
use crate::matrix::SymMatrix;
use crate::oracle::dense_to_sym;

struct Node {
    /// (symbol, child index), ascending by symbol.
    children: Vec<(u8, u32)>,
    /// Leaf ordinal range [first, last) covered by this subtree.
    first_leaf: u32,
    last_leaf: u32,
}

pub struct Leaf {
    pub key: Vec<u8>,
    /// (sequence index, occurrences), sequence ascending.
    pub counts: Vec<(u32, u32)>,
}

pub struct Trie {
    g: usize,
    nodes: Vec<Node>,
    leaves: Vec<Leaf>,
}

impl Trie {
    /// Build from a g-mer table. Records are sorted by key first, so
    /// children end up in symbol order and each unique key becomes one
    /// leaf in lexicographic (= DFS) order.
    pub fn build(table: &GMerTable) -> Trie {
        assert!(table.g() > 0 || table.is_empty());
        let g = table.g();
        let mut order: Vec<u32> = (0..table.len() as u32).collect();
        order.sort_unstable_by(|&a, &b| {
            table
                .key(a as usize)
                .cmp(table.key(b as usize))
                .then_with(|| table.seq(a as usize).cmp(&table.seq(b as usize)))
        });

        let mut nodes = vec![Node {
            children: Vec::new(),
            first_leaf: 0,
            last_leaf: 0,
        }];
        let mut leaves: Vec<Leaf> = Vec::new();
        let mut path: Vec<u32> = Vec::new(); // path[d] = node holding key[..=d]

        let mut i = 0;
        while i < order.len() {
            let key = table.key(order[i] as usize).to_vec();

            let mut counts: Vec<(u32, u32)> = Vec::new();
            while i < order.len() && table.key(order[i] as usize) == &key[..] {
                let seq = table.seq(order[i] as usize);
                let mut occurrences = 0u32;
                while i < order.len()
                    && table.key(order[i] as usize) == &key[..]
                    && table.seq(order[i] as usize) == seq
                {
                    occurrences += 1;
                    i += 1;
                }
                counts.push((seq, occurrences));
            }

            let common = leaves
                .last()
                .map_or(0, |prev| {
                    prev.key.iter().zip(&key).take_while(|(a, b)| a == b).count()
                });
            path.truncate(common);
            let mut parent = path.last().map_or(0, |&id| id as usize);
            for &symbol in &key[common..] {
                let id = nodes.len() as u32;
                nodes.push(Node {
                    children: Vec::new(),
                    first_leaf: 0,
                    last_leaf: 0,
                });
                nodes[parent].children.push((symbol, id));
                path.push(id);
                parent = id as usize;
            }
            leaves.push(Leaf { key, counts });
        }

        let mut trie = Trie { g, nodes, leaves };
        let mut counter = 0u32;
        trie.assign_ranges(0, 0, &mut counter);
        trie
    }

    fn assign_ranges(&mut self, node: usize, depth: usize, counter: &mut u32) {
        if depth == self.g && !self.leaves.is_empty() {
            self.nodes[node].first_leaf = *counter;
            *counter += 1;
            self.nodes[node].last_leaf = *counter;
            return;
        }
        let first = *counter;
        let children: Vec<u32> = self.nodes[node].children.iter().map(|&(_, c)| c).collect();
        for child in children {
            self.assign_ranges(child as usize, depth + 1, counter);
        }
        self.nodes[node].first_leaf = first;
        self.nodes[node].last_leaf = *counter;
    }

    /// u: the number of unique g-mers.
    pub fn leaf_count(&self) -> usize {
        self.leaves.len()
    }

    pub fn leaves(&self) -> &[Leaf] {
        &self.leaves
    }

    pub fn total_occurrences(&self) -> u64 {
        self.leaves
            .iter()
            .flat_map(|l| l.counts.iter())
            .map(|&(_, c)| c as u64)
            .sum()
    }

    /// The nodelist of a key: every leaf within Hamming distance
    /// `max_mismatch`, with its exact distance, in key order.
    pub fn nodelist(&self, key: &[u8], max_mismatch: usize) -> Vec<(Vec<u8>, usize)> {
        assert_eq!(key.len(), self.g);
        let mut out = Vec::new();
        self.descend(0, 0, 0, 0, key, max_mismatch, &mut |leaf, d| {
            out.push((self.leaves[leaf].key.clone(), d));
        });
        out
    }

    /// Depth-first pruned traversal; calls `visit(leaf ordinal, distance)`
    /// for every leaf with ordinal >= `min_ord` within the budget.
    fn descend(
        &self,
        node: usize,
        depth: usize,
        mismatches: usize,
        min_ord: usize,
        key: &[u8],
        budget: usize,
        visit: &mut impl FnMut(usize, usize),
    ) {
        if depth == self.g {
            visit(self.nodes[node].first_leaf as usize, mismatches);
            return;
        }
        for &(symbol, child) in &self.nodes[node].children {
            let next_mismatches = mismatches + usize::from(symbol != key[depth]);
            if next_mismatches > budget {
                continue;
            }
            let child_node = &self.nodes[child as usize];
            if (child_node.last_leaf as usize) <= min_ord {
                continue; // entire subtree precedes the current leaf
            }
            self.descend(
                child as usize,
                depth + 1,
                next_mismatches,
                min_ord,
                key,
                budget,
                visit,
            );
        }
    }
}

/// N_0..N_M via the trie baseline. Output equals
/// [`crate::oracle::brute_force_profiles`] exactly.
pub fn trie_profiles(table: &GMerTable, max_mismatch: usize) -> Vec<SymMatrix<u64>> {
    let n = table.n_sequences();
    let trie = Trie::build(table);
    let mut dense = vec![vec![0u64; n * n]; max_mismatch + 1];

    for (ord, leaf) in trie.leaves.iter().enumerate() {
        trie.descend(0, 0, 0, ord, &leaf.key, max_mismatch, &mut |other, d| {
            let matrix = &mut dense[d];
            if other == ord {
                for &(x, cx) in &leaf.counts {
                    for &(y, cy) in &leaf.counts {
                        matrix[x as usize * n + y as usize] += cx as u64 * cy as u64;
                    }
                }
            } else {
                for &(x, cx) in &leaf.counts {
                    for &(y, cy) in &trie.leaves[other].counts {
                        let product = cx as u64 * cy as u64;
                        matrix[x as usize * n + y as usize] += product;
                        matrix[y as usize * n + x as usize] += product;
                    }
                }
            }
        });
    }

    dense.into_iter().map(|d| dense_to_sym(&d, n)).collect()
}
