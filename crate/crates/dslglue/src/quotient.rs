//! Union-find over ground indices plus the deterministic class naming used
//! by both gluing and diagram colimits.

/// Disjoint-set forest with path compression and union by size.
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> UnionFind {
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

    /// Merge the classes of `a` and `b`; returns true when they were
    /// previously distinct.
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

    /// The partition as a list of classes. Classes are ordered by their
    /// smallest member index and members ascend within each class, making
    /// the output independent of union order.
    pub fn classes(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut order = Vec::new();
        for x in 0..n {
            let root = self.find(x);
            if by_root[root].is_empty() {
                order.push(root);
            }
            by_root[root].push(x);
        }
        order.into_iter().map(|root| std::mem::take(&mut by_root[root])).collect()
    }
}

/// Make a name list unique by suffixing repeats with `#2`, `#3`, and so on,
/// skipping any suffixed form that already appears literally.
pub(crate) fn disambiguate(names: Vec<String>) -> Vec<String> {
    let mut used = std::collections::BTreeSet::new();
    let mut out = Vec::with_capacity(names.len());
    for name in names {
        if used.insert(name.clone()) {
            out.push(name);
            continue;
        }
        let mut copy = 2usize;
        let fresh = loop {
            let candidate = format!("{name}#{copy}");
            if used.insert(candidate.clone()) {
                break candidate;
            }
            copy += 1;
        };
        out.push(fresh);
    }
    out
}
