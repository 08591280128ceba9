//! Exact minimum linear arrangement of free trees.
//!
//! The solver splits at a centroid. Either the edge to the largest
//! subtree is cut and both halves are laid out with their endpoints
//! facing each other, or the `2p` largest subtrees are placed
//! alternately on the outside, largest outermost, around a freely
//! arranged core. Subtrees on the outside are themselves anchored: their
//! cost includes the distance from their root to the side facing the
//! parent. Results are memoized on canonical tree encodings.

use std::collections::HashMap;

/// Undirected tree on nodes `0..n`.
#[derive(Debug, Clone)]
pub struct Tree {
    adj: Vec<Vec<usize>>,
}

impl Tree {
    /// # Panics
    /// If `edges` does not describe a tree on `n` nodes.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        assert!(
            n >= 1 && edges.len() == n - 1,
            "a tree on {n} nodes has {} edges",
            n.saturating_sub(1)
        );
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        Tree { adj }
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    /// Subtree sizes and parents with the tree rooted at `root`, plus a
    /// preorder.
    fn rooted(&self, root: usize) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
        let n = self.len();
        let mut parent = vec![usize::MAX; n];
        let mut order = Vec::with_capacity(n);
        let mut stack = vec![root];
        parent[root] = root;
        while let Some(v) = stack.pop() {
            order.push(v);
            for &w in &self.adj[v] {
                if parent[w] == usize::MAX {
                    parent[w] = v;
                    stack.push(w);
                }
            }
        }
        let mut size = vec![1usize; n];
        for &v in order.iter().rev() {
            if v != root {
                size[parent[v]] += size[v];
            }
        }
        (size, parent, order)
    }

    /// One or two centroids.
    fn centroids(&self) -> Vec<usize> {
        let n = self.len();
        let (size, parent, _) = self.rooted(0);
        (0..n)
            .filter(|&v| {
                let largest = self.adj[v]
                    .iter()
                    .filter(|&&w| parent[w] == v && w != v)
                    .map(|&w| size[w])
                    .fold(n - size[v], usize::max);
                2 * largest <= n
            })
            .collect()
    }

    /// Induced subtree on `nodes` (which must be connected); `nodes[0]`
    /// becomes node 0.
    fn induced(&self, nodes: &[usize]) -> Tree {
        let mut index = HashMap::with_capacity(nodes.len());
        for (i, &v) in nodes.iter().enumerate() {
            index.insert(v, i);
        }
        let mut adj = vec![Vec::new(); nodes.len()];
        for (i, &v) in nodes.iter().enumerate() {
            for w in &self.adj[v] {
                if let Some(&j) = index.get(w) {
                    adj[i].push(j);
                }
            }
        }
        Tree { adj }
    }

    /// Nodes of the component containing `start` after removing `blocked`.
    fn component(&self, start: usize, blocked: usize) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        seen[blocked] = true;
        seen[start] = true;
        let mut out = vec![start];
        let mut i = 0;
        while i < out.len() {
            let v = out[i];
            i += 1;
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    out.push(w);
                }
            }
        }
        out
    }

    fn encode_rooted(&self, root: usize) -> String {
        let (_, parent, order) = self.rooted(root);
        let mut code: Vec<String> = vec![String::new(); self.len()];
        for &v in order.iter().rev() {
            let mut kids: Vec<String> = self.adj[v]
                .iter()
                .filter(|&&w| parent[w] == v && w != v)
                .map(|&w| std::mem::take(&mut code[w]))
                .collect();
            kids.sort_unstable();
            let mut s = String::with_capacity(2 + kids.iter().map(String::len).sum::<usize>());
            s.push('(');
            for k in kids {
                s.push_str(&k);
            }
            s.push(')');
            code[v] = s;
        }
        std::mem::take(&mut code[root])
    }

    fn encode_free(&self) -> String {
        self.centroids()
            .into_iter()
            .map(|c| self.encode_rooted(c))
            .min()
            .expect("a tree has a centroid")
    }
}

/// Branches hanging from `root`: `(child, nodes)` sorted by decreasing
/// size, ties broken by canonical shape for determinism.
fn branches(t: &Tree, root: usize) -> Vec<(usize, Vec<usize>)> {
    let mut b: Vec<(usize, Vec<usize>, String)> = t
        .neighbors(root)
        .iter()
        .map(|&c| {
            let nodes = t.component(c, root);
            let code = t.induced(&nodes).encode_rooted(0);
            (c, nodes, code)
        })
        .collect();
    b.sort_by(|x, y| y.1.len().cmp(&x.1.len()).then_with(|| x.2.cmp(&y.2)));
    b.into_iter().map(|(c, n, _)| (c, n)).collect()
}

/// Memoized solver. Reuse one instance across many trees to share
/// subproblems.
#[derive(Debug, Default)]
pub struct MlaSolver {
    free: HashMap<String, u64>,
    anchored: HashMap<String, u64>,
}

impl MlaSolver {
    pub fn new() -> Self {
        Self::default()
    }

    /// Minimum over all arrangements of the sum of edge lengths.
    pub fn min_arrangement(&mut self, t: &Tree) -> u64 {
        let n = t.len();
        if n <= 1 {
            return 0;
        }
        if n == 2 {
            return 1;
        }
        let key = t.encode_free();
        if let Some(&v) = self.free.get(&key) {
            return v;
        }
        let u = t.centroids()[0];
        let br = branches(t, u);
        let sizes: Vec<u64> = br.iter().map(|b| b.1.len() as u64).collect();
        let anchored: Vec<u64> = br.iter().map(|b| self.anchored_cost(&t.induced(&b.1))).collect();

        // cut the edge to the largest branch
        let rest: Vec<usize> = t.component(u, br[0].0);
        let mut best = anchored[0] + self.anchored_cost(&t.induced(&rest)) + 1;

        let k = br.len();
        for p in 1..=k / 2 {
            let mut core = vec![u];
            for b in &br[2 * p..] {
                core.extend_from_slice(&b.1);
            }
            let m = core.len() as u64;
            let outer: u64 = anchored[..2 * p].iter().sum();
            let crossings: u64 = (1..=p)
                .map(|i| (i as u64 - 1) * (sizes[2 * i - 2] + sizes[2 * i - 1]))
                .sum();
            let cost = outer + self.min_arrangement(&t.induced(&core)) + crossings + p as u64 * (m + 1);
            best = best.min(cost);
        }
        self.free.insert(key, best);
        best
    }

    /// Minimum of internal cost plus the distance from node 0 (the root)
    /// to one end of the arrangement.
    pub fn anchored_cost(&mut self, t: &Tree) -> u64 {
        let n = t.len();
        if n <= 1 {
            return 0;
        }
        let key = t.encode_rooted(0);
        if let Some(&v) = self.anchored.get(&key) {
            return v;
        }
        let br = branches(t, 0);
        let sizes: Vec<u64> = br.iter().map(|b| b.1.len() as u64).collect();
        let anchored: Vec<u64> = br.iter().map(|b| self.anchored_cost(&t.induced(&b.1))).collect();
        let k = br.len();
        let mut best = u64::MAX;
        let mut p = 0;
        while 2 * p < k {
            let mut core = vec![0];
            for b in &br[2 * p + 1..] {
                core.extend_from_slice(&b.1);
            }
            let m = core.len() as u64;
            let outer: u64 = anchored[..=2 * p].iter().sum();
            let crossings: u64 = (0..=2 * p).map(|j| j.div_ceil(2) as u64 * sizes[j]).sum();
            let cost = outer + self.min_arrangement(&t.induced(&core)) + crossings + p as u64 * (m + 1) + m;
            best = best.min(cost);
            p += 1;
        }
        self.anchored.insert(key, best);
        best
    }
}

/// Minimum sum of edge lengths over all linear arrangements of `t`.
pub fn min_arrangement(t: &Tree) -> u64 {
    MlaSolver::new().min_arrangement(t)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    pub(crate) fn random_tree<R: Rng>(rng: &mut R, n: usize) -> Vec<(usize, usize)> {
        // random attachment over a shuffled labelling
        let mut labels: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            labels.swap(i, rng.gen_range(0..=i));
        }
        (1..n).map(|i| (labels[i], labels[rng.gen_range(0..i)])).collect()
    }

    /// Brute force over all permutations (Heap's algorithm).
    pub(crate) fn brute_force(n: usize, edges: &[(usize, usize)]) -> u64 {
        let mut pos: Vec<usize> = (0..n).collect();
        let cost = |pos: &[usize]| edges.iter().map(|&(a, b)| pos[a].abs_diff(pos[b]) as u64).sum::<u64>();
        let mut best = cost(&pos);
        let mut c = vec![0usize; n];
        let mut i = 0;
        while i < n {
            if c[i] < i {
                if i % 2 == 0 {
                    pos.swap(0, i);
                } else {
                    pos.swap(c[i], i);
                }
                best = best.min(cost(&pos));
                c[i] += 1;
                i = 0;
            } else {
                c[i] = 0;
                i += 1;
            }
        }
        best
    }

    /// Dynamic program over vertex subsets: filling positions left to
    /// right, each gap contributes the number of edges crossing it.
    pub(crate) fn subset_dp(n: usize, edges: &[(usize, usize)]) -> u64 {
        let full = (1usize << n) - 1;
        let mut f = vec![u64::MAX; 1 << n];
        f[0] = 0;
        let cut = |s: usize| edges.iter().filter(|&&(a, b)| ((s >> a) & 1) != ((s >> b) & 1)).count() as u64;
        for s in 0..full {
            if f[s] == u64::MAX {
                continue;
            }
            for v in 0..n {
                if s & (1 << v) == 0 {
                    let t = s | (1 << v);
                    let c = f[s] + if t == full { 0 } else { cut(t) };
                    if c < f[t] {
                        f[t] = c;
                    }
                }
            }
        }
        f[full]
    }

    #[test]
    fn small_shapes() {
        let star3 = Tree::from_edges(3, &[(0, 1), (0, 2)]);
        assert_eq!(min_arrangement(&star3), 2);
        let star4 = Tree::from_edges(4, &[(0, 1), (0, 2), (0, 3)]);
        assert_eq!(min_arrangement(&star4), 4);
        for n in 2..12 {
            let path: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
            assert_eq!(min_arrangement(&Tree::from_edges(n, &path)), n as u64 - 1);
        }
    }

    #[test]
    fn anchored_hand_values() {
        let mut s = MlaSolver::new();
        // root at the end of a path: b a r | anchor
        assert_eq!(s.anchored_cost(&Tree::from_edges(3, &[(0, 1), (1, 2)])), 2);
        // root with three leaves
        assert_eq!(s.anchored_cost(&Tree::from_edges(4, &[(0, 1), (0, 2), (0, 3)])), 5);
    }

    #[test]
    fn oracles_agree_on_small_trees() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for n in 2..=7 {
            for _ in 0..40 {
                let e = random_tree(&mut rng, n);
                assert_eq!(brute_force(n, &e), subset_dp(n, &e));
            }
        }
    }

    #[test]
    fn matches_subset_dp_up_to_fourteen() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(29);
        let mut solver = MlaSolver::new();
        for n in 10..=14 {
            for _ in 0..30 {
                let e = random_tree(&mut rng, n);
                let t = Tree::from_edges(n, &e);
                assert_eq!(solver.min_arrangement(&t), subset_dp(n, &e), "n = {n}, edges {e:?}");
            }
        }
    }

    #[test]
    fn large_trees_are_fast_and_bounded() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for n in [60, 120, 200] {
            let e = random_tree(&mut rng, n);
            let t = Tree::from_edges(n, &e);
            let d = min_arrangement(&t);
            assert!(d >= n as u64 - 1);
            // the identity arrangement is an upper bound
            let ident: u64 = e.iter().map(|&(a, b)| a.abs_diff(b) as u64).sum();
            assert!(d <= ident);
        }
    }
}
