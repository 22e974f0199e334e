//! Trees, vertex sets, and the structural primitives the solvers need:
//! boundaries, convex hulls, leaf centroids, component splits.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;

/// An undirected tree on vertices `1..=n`. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tree {
    n: usize,
    /// `adj[v]` is the sorted neighbor list of `v`; `adj[0]` is unused.
    adj: Vec<Vec<usize>>,
    /// Cached: true iff the tree is the canonical line 1 - 2 - ... - n.
    line: bool,
}

/// Serialized form: `{"n": 5, "edges": [[1,2],[2,3],...]}` with 1-based ids.
#[derive(Serialize, Deserialize)]
struct TreeFile {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Tree {
    /// Builds a tree from an edge list, validating connectivity, edge count,
    /// and absence of self-loops and parallel edges.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Tree> {
        if n == 0 {
            return Err(Error::InvalidInput("tree must have at least one vertex".into()));
        }
        if edges.len() != n - 1 {
            return Err(Error::InvalidInput(format!(
                "a tree on {n} vertices needs {} edges, got {}",
                n - 1,
                edges.len()
            )));
        }
        let mut adj = vec![Vec::new(); n + 1];
        for &(u, v) in edges {
            if u == 0 || v == 0 || u > n || v > n {
                return Err(Error::InvalidInput(format!("edge ({u},{v}) out of range 1..={n}")));
            }
            if u == v {
                return Err(Error::InvalidInput(format!("self-loop at {u}")));
            }
            if adj[u].contains(&v) {
                return Err(Error::InvalidInput(format!("parallel edge ({u},{v})")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let line = (1..n).all(|i| adj[i].contains(&(i + 1)));
        let tree = Tree { n, adj, line };
        // n-1 edges + connected = tree
        if tree.distances_from(1).iter().skip(1).any(|&d| d == usize::MAX) {
            return Err(Error::InvalidInput("graph is not connected".into()));
        }
        Ok(tree)
    }

    /// The path 1 - 2 - ... - n.
    pub fn path(n: usize) -> Tree {
        let edges: Vec<(usize, usize)> = (1..n).map(|i| (i, i + 1)).collect();
        Tree::new(n, &edges).expect("path construction is always valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// True iff this tree is the canonical line, i.e. every edge is (i, i+1).
    pub fn is_line(&self) -> bool {
        self.line
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.n {
            Err(Error::InvalidInput(format!("vertex {v} out of range 1..={}", self.n)))
        } else {
            Ok(())
        }
    }

    /// BFS distances from `v`; unreachable entries are `usize::MAX`.
    fn distances_from(&self, v: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n + 1];
        dist[v] = 0;
        let mut queue = VecDeque::from([v]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Edge count of the unique u-v path.
    pub fn distance(&self, u: usize, v: usize) -> Result<usize> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if self.line {
            return Ok(u.abs_diff(v));
        }
        Ok(self.distances_from(u)[v])
    }

    /// Full distance matrix, `matrix[u][v]` for 1-based u, v. Row 0 is unused.
    pub fn distance_matrix(&self) -> Vec<Vec<usize>> {
        let mut m = vec![vec![0; self.n + 1]];
        for v in 1..=self.n {
            m.push(self.distances_from(v));
        }
        m
    }

    /// The unique path from u to v, inclusive of both endpoints.
    pub fn path_between(&self, u: usize, v: usize) -> Result<Vec<usize>> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let dist = self.distances_from(v);
        let mut path = vec![u];
        let mut cur = u;
        while cur != v {
            cur = *self.adj[cur]
                .iter()
                .find(|&&w| dist[w] + 1 == dist[cur])
                .expect("tree path step");
            path.push(cur);
        }
        Ok(path)
    }

    /// True iff the subgraph induced by `s` is connected (and `s` nonempty).
    pub fn induces_subtree(&self, s: &VertexSet) -> bool {
        let Some(&start) = s.iter().next() else { return false };
        let mut seen = VertexSet::empty();
        let mut queue = VecDeque::from([start]);
        seen.insert(start);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if s.contains(w) && !seen.contains(w) {
                    seen.insert(w);
                    queue.push_back(w);
                }
            }
        }
        seen.len() == s.len()
    }

    /// Connected components of the induced subtree of `s` after removing `v`.
    ///
    /// Components are ordered by their smallest member.
    pub fn components_after_removal(&self, s: &VertexSet, v: usize) -> Result<Vec<VertexSet>> {
        self.check_vertex(v)?;
        if !s.contains(v) {
            return Err(Error::InvalidInput(format!("vertex {v} is not in the set")));
        }
        if !self.induces_subtree(s) {
            return Err(Error::InvalidInput("set does not induce a connected subgraph".into()));
        }
        let mut assigned = VertexSet::empty();
        assigned.insert(v);
        let mut comps = Vec::new();
        for &w in &self.adj[v] {
            if !s.contains(w) || assigned.contains(w) {
                continue;
            }
            let mut comp = VertexSet::empty();
            let mut queue = VecDeque::from([w]);
            comp.insert(w);
            assigned.insert(w);
            while let Some(u) = queue.pop_front() {
                for &x in &self.adj[u] {
                    if s.contains(x) && !assigned.contains(x) {
                        comp.insert(x);
                        assigned.insert(x);
                        queue.push_back(x);
                    }
                }
            }
            comps.push(comp);
        }
        comps.sort_by_key(|c| c.iter().next().copied());
        Ok(comps)
    }

    /// All vertices outside `s` adjacent to some vertex of `s`.
    pub fn boundary(&self, s: &VertexSet) -> VertexSet {
        let mut out = VertexSet::empty();
        for &u in s.iter() {
            for &w in &self.adj[u] {
                if !s.contains(w) {
                    out.insert(w);
                }
            }
        }
        out
    }

    /// Smallest connected superset of `s`: the union of all pairwise paths.
    ///
    /// Computed by iteratively pruning leaves of the whole tree that are not
    /// in `s`.
    pub fn convex_hull(&self, s: &VertexSet) -> Result<VertexSet> {
        if s.is_empty() {
            return Err(Error::InvalidInput("convex hull of the empty set".into()));
        }
        let mut alive = vec![true; self.n + 1];
        let mut deg: Vec<usize> = (0..=self.n).map(|v| self.adj.get(v).map_or(0, |a| a.len())).collect();
        let mut queue: VecDeque<usize> =
            (1..=self.n).filter(|&v| deg[v] <= 1 && !s.contains(v)).collect();
        while let Some(v) = queue.pop_front() {
            if !alive[v] || deg[v] > 1 || s.contains(v) {
                continue;
            }
            alive[v] = false;
            for &w in &self.adj[v] {
                if alive[w] {
                    deg[w] -= 1;
                    if deg[w] <= 1 && !s.contains(w) {
                        queue.push_back(w);
                    }
                }
            }
        }
        Ok(VertexSet::from_iter((1..=self.n).filter(|&v| alive[v])))
    }

    /// A leaf centroid of the subtree induced by `s`: a non-leaf vertex whose
    /// removal leaves components with at most `floor(l/2) + 1` leaves each,
    /// where `l` is the leaf count of the induced subtree.
    ///
    /// Deterministic: walks from the smallest-id non-leaf vertex towards the
    /// (unique) too-heavy component until none remains.
    pub fn leaf_centroid(&self, s: &VertexSet) -> Result<usize> {
        if !self.induces_subtree(s) {
            return Err(Error::InvalidInput("set does not induce a connected subgraph".into()));
        }
        if s.len() < 3 {
            return Err(Error::InvalidInput("leaf centroid needs at least 3 vertices".into()));
        }
        let deg_in = |v: usize| self.adj[v].iter().filter(|&&w| s.contains(w)).count();
        let leaves = s.iter().filter(|&&v| deg_in(v) <= 1).count();
        let bound = leaves / 2 + 1;
        let mut v = *s
            .iter()
            .find(|&&v| deg_in(v) > 1)
            .expect("an induced subtree on >=3 vertices has a non-leaf");
        loop {
            let comps = self.components_after_removal(s, v)?;
            let heavy = comps.iter().find(|c| {
                let comp_leaves = c
                    .iter()
                    .filter(|&&x| self.adj[x].iter().filter(|&&w| c.contains(w)).count() <= 1)
                    .count();
                comp_leaves > bound
            });
            match heavy {
                None => return Ok(v),
                Some(c) => {
                    v = *self.adj[v]
                        .iter()
                        .find(|&&w| c.contains(w))
                        .expect("heavy component is adjacent to v");
                }
            }
        }
    }

    pub fn to_json(&self) -> String {
        let mut edges = Vec::new();
        for u in 1..=self.n {
            for &v in &self.adj[u] {
                if u < v {
                    edges.push((u, v));
                }
            }
        }
        serde_json::to_string_pretty(&TreeFile { n: self.n, edges }).expect("tree serialization")
    }

    pub fn from_json(text: &str) -> Result<Tree> {
        let file: TreeFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("tree file: {e}")))?;
        Tree::new(file.n, &file.edges)
    }
}

/// A set of vertex ids in canonical sorted form, usable as a memo key.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet {
    members: Vec<usize>,
}

impl VertexSet {
    pub fn empty() -> VertexSet {
        VertexSet { members: Vec::new() }
    }

    pub fn singleton(v: usize) -> VertexSet {
        VertexSet { members: vec![v] }
    }

    pub fn full(n: usize) -> VertexSet {
        VertexSet { members: (1..=n).collect() }
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> VertexSet {
        let mut members: Vec<usize> = iter.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        VertexSet { members }
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn insert(&mut self, v: usize) {
        if let Err(pos) = self.members.binary_search(&v) {
            self.members.insert(pos, v);
        }
    }

    pub fn remove(&mut self, v: usize) {
        if let Ok(pos) = self.members.binary_search(&v) {
            self.members.remove(pos);
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, usize> {
        self.members.iter()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.members
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet::from_iter(self.members.iter().chain(other.members.iter()).copied())
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> VertexSet {
        VertexSet::from_iter(iter)
    }
}
