use std::collections::BTreeSet;

/// Edge set over point indices.
///
/// Undirected graphs store each pair once with the lower index first; edges are
/// kept sorted, so iteration order (and every serialization) is canonical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    directed: bool,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    pub fn undirected(n: usize) -> Self {
        Graph {
            n,
            directed: false,
            edges: BTreeSet::new(),
        }
    }

    pub fn directed(n: usize) -> Self {
        Graph {
            n,
            directed: true,
            edges: BTreeSet::new(),
        }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = Graph::undirected(n);
        for (a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    /// Inserts an edge. Self-loops are ignored; endpoints must be `< n`.
    pub fn add_edge(&mut self, a: usize, b: usize) -> bool {
        assert!(a < self.n && b < self.n, "edge ({a}, {b}) out of range for n = {}", self.n);
        if a == b {
            return false;
        }
        let e = if self.directed { (a, b) } else { (a.min(b), a.max(b)) };
        self.edges.insert(e)
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        if self.directed {
            self.edges.contains(&(a, b))
        } else {
            self.edges.contains(&(a.min(b), a.max(b)))
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_set(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    /// Forgets direction: `(a, b)` and `(b, a)` collapse into one edge.
    pub fn symmetrized(&self) -> Graph {
        Graph::from_edges(self.n, self.edges())
    }

    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        self.edges.is_subset(&other.edges)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// Connected component id of each vertex, numbered by lowest member index.
    pub fn components(&self) -> Vec<usize> {
        let mut uf = UnionFind::new(self.n);
        for (a, b) in self.edges() {
            uf.union(a, b);
        }
        let mut root_label = vec![usize::MAX; self.n];
        let mut next = 0;
        (0..self.n)
            .map(|v| {
                let r = uf.find(v);
                if root_label[r] == usize::MAX {
                    root_label[r] = next;
                    next += 1;
                }
                root_label[r]
            })
            .collect()
    }
}

/// Disjoint sets with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the sets of `a` and `b`; returns false if they were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }

    pub fn set_size(&mut self, x: usize) -> usize {
        let r = self.find(x);
        self.size[r]
    }
}
