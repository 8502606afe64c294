use alloc::vec::Vec;

use rand::Rng;

use crate::chains::{sample_steps_and_gromovs, Chain, GoodPair, MetricSpace};
use crate::oracle::SeedStream;
use crate::{Error, Result};

/// A finite tree with positive edge lengths, nodes numbered `0..node_count`.
///
/// The distance between two nodes is the total length of the unique path
/// joining them, found by climbing towards the root from both ends.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricTree {
    edges: Vec<(usize, usize, f64)>,
    parent: Vec<Option<(usize, f64)>>,
    depth: Vec<usize>,
}

impl MetricTree {
    pub fn new(node_count: usize, edges: Vec<(usize, usize, f64)>) -> Result<Self> {
        if node_count == 0 {
            return Err(Error::InvalidTree("a tree needs at least one node"));
        }
        if edges.len() + 1 != node_count {
            return Err(Error::InvalidTree("a tree on N nodes has N - 1 edges"));
        }
        let mut adj: Vec<Vec<(usize, f64)>> = alloc::vec![Vec::new(); node_count];
        for &(u, v, w) in &edges {
            if u >= node_count {
                return Err(Error::UnknownNode(u));
            }
            if v >= node_count {
                return Err(Error::UnknownNode(v));
            }
            if !(w > 0.0) || !w.is_finite() {
                return Err(Error::InvalidTree(
                    "edge lengths must be positive and finite",
                ));
            }
            adj[u].push((v, w));
            adj[v].push((u, w));
        }
        let mut parent = alloc::vec![None; node_count];
        let mut depth = alloc::vec![usize::MAX; node_count];
        depth[0] = 0;
        let mut stack = alloc::vec![0usize];
        while let Some(u) = stack.pop() {
            for &(v, w) in &adj[u] {
                if depth[v] == usize::MAX {
                    depth[v] = depth[u] + 1;
                    parent[v] = Some((u, w));
                    stack.push(v);
                }
            }
        }
        if depth.contains(&usize::MAX) {
            return Err(Error::InvalidTree("graph is not connected"));
        }
        Ok(MetricTree {
            edges,
            parent,
            depth,
        })
    }

    pub fn node_count(&self) -> usize {
        self.parent.len()
    }

    pub fn edges(&self) -> &[(usize, usize, f64)] {
        &self.edges
    }

    /// Path length between two nodes.
    pub fn dist(&self, u: usize, v: usize) -> Result<f64> {
        let n = self.node_count();
        if u >= n {
            return Err(Error::UnknownNode(u));
        }
        if v >= n {
            return Err(Error::UnknownNode(v));
        }
        let (mut u, mut v) = (u, v);
        let (mut du, mut dv) = (0.0, 0.0);
        while self.depth[u] > self.depth[v] {
            let (p, w) = self.parent[u].expect("non-root node has a parent");
            du += w;
            u = p;
        }
        while self.depth[v] > self.depth[u] {
            let (p, w) = self.parent[v].expect("non-root node has a parent");
            dv += w;
            v = p;
        }
        while u != v {
            let (pu, wu) = self.parent[u].expect("non-root node has a parent");
            let (pv, wv) = self.parent[v].expect("non-root node has a parent");
            du += wu;
            dv += wv;
            u = pu;
            v = pv;
        }
        Ok(du + dv)
    }
}

impl MetricSpace for MetricTree {
    type Point = usize;

    fn distance(&self, p: &usize, q: &usize) -> f64 {
        self.dist(*p, *q).unwrap_or(f64::NAN)
    }

    fn contains(&self, p: &usize) -> bool {
        *p < self.node_count()
    }
}

/// Path length between two nodes of a tree.
pub fn tree_dist(t: &MetricTree, u: usize, v: usize) -> Result<f64> {
    t.dist(u, v)
}

/// A random `(a, b)`-good chain in a caterpillar tree built alongside it.
///
/// The tree has a spine `s_0, ..., s_n`; point `x_j` hangs off `s_j` on a branch of
/// length `g_j` (the prescribed Gromov product, none at the ends) and the spine
/// edges are sized so that `d(x_{j-1}, x_j)` equals the prescribed step.
pub fn sample_good_chain_tree(gp: &GoodPair, n: usize, seed: u64) -> Chain<MetricTree> {
    let mut rng = SeedStream::new(seed).derive("tree-good-chain").rng();
    let n = n.max(1);
    let (steps, gromovs) = sample_steps_and_gromovs(gp, n, &mut rng);
    let mut hang = alloc::vec![0.0; n + 1];
    hang[1..n].copy_from_slice(&gromovs);
    let mut edges = Vec::new();
    for j in 1..=n {
        let spine = steps[j - 1] - hang[j - 1] - hang[j];
        edges.push((j - 1, j, spine));
    }
    let mut points: Vec<usize> = (0..=n).collect();
    let mut next = n + 1;
    for j in 0..=n {
        if hang[j] > 0.0 {
            // occasionally hang the point below an extra branching node
            if rng.gen_bool(0.3) {
                let split = hang[j] * rng.gen_range(0.1..0.9);
                edges.push((j, next, split));
                edges.push((next, next + 1, hang[j] - split));
                edges.push((next, next + 2, rng.gen_range(0.1..1.0)));
                points[j] = next + 1;
                next += 3;
            } else {
                edges.push((j, next, hang[j]));
                points[j] = next;
                next += 1;
            }
        }
    }
    let tree = MetricTree::new(next, edges).expect("caterpillar is a tree");
    Chain::new(tree, points).expect("caterpillar chain has positive steps")
}
