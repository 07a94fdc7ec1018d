use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TopologyError {
    #[error("edge ({0}, {1}) is a self-loop")]
    SelfLoop(usize, usize),
    #[error("node {0} out of range for a map with {1} nodes")]
    InvalidNode(usize, usize),
    #[error("selected nodes are not connected in the coupling map")]
    DisconnectedSelection,
    #[error("empty node selection")]
    EmptySelection,
    #[error("root {0} is not among the selected nodes")]
    RootNotSelected(usize),
    #[error("parent relation does not form a tree: {0}")]
    NotATree(String),
}

/// Undirected connectivity graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawMap", into = "RawMap")]
pub struct CouplingMap {
    nodes: usize,
    edges: BTreeSet<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct RawMap {
    nodes: usize,
    edges: Vec<[usize; 2]>,
}

impl TryFrom<RawMap> for CouplingMap {
    type Error = TopologyError;
    fn try_from(raw: RawMap) -> Result<Self, Self::Error> {
        CouplingMap::new(raw.nodes, raw.edges.iter().map(|e| (e[0], e[1])))
    }
}

impl From<CouplingMap> for RawMap {
    fn from(m: CouplingMap) -> Self {
        RawMap { nodes: m.nodes, edges: m.edges.iter().map(|&(a, b)| [a, b]).collect() }
    }
}

impl CouplingMap {
    pub fn new(nodes: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, TopologyError> {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(TopologyError::SelfLoop(a, b));
            }
            for x in [a, b] {
                if x >= nodes {
                    return Err(TopologyError::InvalidNode(x, nodes));
                }
            }
            set.insert((a.min(b), a.max(b)));
        }
        Ok(Self { nodes, edges: set })
    }

    pub fn path(n: usize) -> Self {
        Self::new(n, (1..n).map(|i| (i - 1, i))).expect("path edges are valid")
    }

    pub fn star(n: usize) -> Self {
        Self::new(n, (1..n).map(|i| (0, i))).expect("star edges are valid")
    }

    pub fn complete(n: usize) -> Self {
        Self::new(n, (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)))).expect("valid")
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    fn adjacency(&self, selected: &BTreeSet<usize>) -> BTreeMap<usize, Vec<usize>> {
        let mut adj: BTreeMap<usize, Vec<usize>> = selected.iter().map(|&s| (s, Vec::new())).collect();
        for &(a, b) in &self.edges {
            if selected.contains(&a) && selected.contains(&b) {
                adj.get_mut(&a).unwrap().push(b);
                adj.get_mut(&b).unwrap().push(a);
            }
        }
        for v in adj.values_mut() {
            v.sort_unstable();
        }
        adj
    }
}

/// Rooted tree over a node selection. Child lists are sorted by node index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanTree {
    root: usize,
    parent: BTreeMap<usize, usize>,
    children: BTreeMap<usize, Vec<usize>>,
}

impl SpanTree {
    /// Builds a tree from explicit `(child, parent)` pairs.
    pub fn from_parents(root: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, TopologyError> {
        let mut parent = BTreeMap::new();
        let mut children: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        children.insert(root, Vec::new());
        for (c, p) in pairs {
            if c == root {
                return Err(TopologyError::NotATree(format!("root {root} has a parent")));
            }
            if parent.insert(c, p).is_some() {
                return Err(TopologyError::NotATree(format!("node {c} has two parents")));
            }
            children.entry(p).or_default().push(c);
            children.entry(c).or_default();
        }
        for v in children.values_mut() {
            v.sort_unstable();
        }
        let tree = Self { root, parent, children };
        // Every node must reach the root.
        for &n in tree.children.keys() {
            let mut cur = n;
            let mut steps = 0;
            while cur != root {
                cur = *tree
                    .parent
                    .get(&cur)
                    .ok_or_else(|| TopologyError::NotATree(format!("node {n} is detached")))?;
                steps += 1;
                if steps > tree.children.len() {
                    return Err(TopologyError::NotATree("cycle in parent relation".into()));
                }
            }
        }
        Ok(tree)
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn nodes(&self) -> Vec<usize> {
        self.children.keys().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.children.len()
    }

    pub fn is_empty(&self) -> bool {
        self.children.is_empty()
    }

    pub fn parent(&self, n: usize) -> Option<usize> {
        self.parent.get(&n).copied()
    }

    pub fn children(&self, n: usize) -> &[usize] {
        self.children.get(&n).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn child_count(&self, n: usize) -> usize {
        self.children(n).len()
    }

    pub fn degree(&self, n: usize) -> usize {
        self.child_count(n) + usize::from(n != self.root)
    }

    pub fn contains(&self, n: usize) -> bool {
        self.children.contains_key(&n)
    }

    pub fn depth_of(&self, n: usize) -> usize {
        let mut d = 0;
        let mut cur = n;
        while let Some(p) = self.parent(cur) {
            cur = p;
            d += 1;
        }
        d
    }

    pub fn height(&self) -> usize {
        self.nodes().into_iter().map(|n| self.depth_of(n)).max().unwrap_or(0)
    }

    /// Height of the subtree hanging from `n` (0 for a leaf).
    pub fn subtree_height(&self, n: usize) -> usize {
        self.children(n).iter().map(|&c| 1 + self.subtree_height(c)).max().unwrap_or(0)
    }

    pub fn subtree(&self, n: usize) -> Vec<usize> {
        let mut out = vec![n];
        let mut i = 0;
        while i < out.len() {
            out.extend_from_slice(self.children(out[i]));
            i += 1;
        }
        out.sort_unstable();
        out
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.parent.iter().map(|(&c, &p)| (p, c)).collect()
    }

    /// The same tree hung from a different root.
    pub fn rerooted(&self, root: usize) -> Result<Self, TopologyError> {
        if !self.contains(root) {
            return Err(TopologyError::RootNotSelected(root));
        }
        let selected: BTreeSet<usize> = self.children.keys().copied().collect();
        let map = CouplingMap::new(
            selected.iter().max().map_or(0, |m| m + 1),
            self.edges(),
        )?;
        bfs_tree(&map.adjacency(&selected), root)
    }

    /// Checks the structural invariants against a coupling map.
    pub fn is_consistent_with(&self, map: &CouplingMap) -> bool {
        self.parent.iter().all(|(&c, &p)| map.has_edge(c, p))
            && self.parent.len() + 1 == self.children.len()
            && self.nodes().into_iter().all(|n| n < map.num_nodes())
    }
}

fn bfs_order(adj: &BTreeMap<usize, Vec<usize>>, root: usize) -> BTreeMap<usize, (usize, Option<usize>)> {
    let mut seen = BTreeMap::new();
    seen.insert(root, (0, None));
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        let du = seen[&u].0;
        for &v in &adj[&u] {
            if let std::collections::btree_map::Entry::Vacant(e) = seen.entry(v) {
                e.insert((du + 1, Some(u)));
                queue.push_back(v);
            }
        }
    }
    seen
}

fn bfs_tree(adj: &BTreeMap<usize, Vec<usize>>, root: usize) -> Result<SpanTree, TopologyError> {
    let order = bfs_order(adj, root);
    if order.len() != adj.len() {
        return Err(TopologyError::DisconnectedSelection);
    }
    SpanTree::from_parents(root, order.iter().filter_map(|(&n, &(_, p))| p.map(|p| (n, p))))
}

/// Breadth-first spanning tree of minimal height over `nodes`.
///
/// Without an explicit root the node of least eccentricity is chosen, ties
/// going to the smallest index.
pub fn spanning_tree(map: &CouplingMap, nodes: &[usize], root: Option<usize>) -> Result<SpanTree, TopologyError> {
    let selected: BTreeSet<usize> = nodes.iter().copied().collect();
    if selected.is_empty() {
        return Err(TopologyError::EmptySelection);
    }
    if let Some(&bad) = selected.iter().find(|&&n| n >= map.num_nodes()) {
        return Err(TopologyError::InvalidNode(bad, map.num_nodes()));
    }
    let adj = map.adjacency(&selected);
    let root = match root {
        Some(r) if !selected.contains(&r) => return Err(TopologyError::RootNotSelected(r)),
        Some(r) => r,
        None => {
            let mut best = None;
            for &s in &selected {
                let order = bfs_order(&adj, s);
                if order.len() != selected.len() {
                    return Err(TopologyError::DisconnectedSelection);
                }
                let ecc = order.values().map(|x| x.0).max().unwrap_or(0);
                if best.is_none_or(|(e, _)| ecc < e) {
                    best = Some((ecc, s));
                }
            }
            best.expect("non-empty selection").1
        }
    };
    bfs_tree(&adj, root)
}
