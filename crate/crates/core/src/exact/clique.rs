//! Maximum clique by branch and bound with bitset adjacency and greedy
//! colouring bounds.

use std::time::Instant;

#[derive(Clone, Debug)]
pub struct Bitset {
    words: Vec<u64>,
}

impl Bitset {
    pub fn new(len: usize) -> Self {
        Self { words: vec![0; len.div_ceil(64)] }
    }

    pub fn full(len: usize) -> Self {
        let mut b = Self::new(len);
        for i in 0..len {
            b.insert(i);
        }
        b
    }

    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn first(&self) -> Option<usize> {
        self.words.iter().enumerate().find(|(_, &w)| w != 0).map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn and(&self, other: &Bitset) -> Bitset {
        Bitset { words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect() }
    }

    pub fn and_not_assign(&mut self, other: &Bitset) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            })
        })
    }
}

/// Undirected graph on `0..len` with bitset rows.
#[derive(Clone, Debug)]
pub struct Graph {
    pub adj: Vec<Bitset>,
}

impl Graph {
    pub fn new(len: usize) -> Self {
        Self { adj: vec![Bitset::new(len); len] }
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        self.adj[a].insert(b);
        self.adj[b].insert(a);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueResult {
    pub clique: Vec<usize>,
    /// The search space was exhausted (or `cap` was reached).
    pub complete: bool,
}

/// Orbits of a symmetry group of the graph: `orbit(r, v)` must return the
/// orbit of `v` under a group fixing every vertex of `r` that maps the
/// candidate set to itself. Labels are the caller's vertex labels.
pub type OrbitFn<'a> = &'a dyn Fn(&[usize], usize) -> Vec<usize>;

struct Search<'a> {
    g: &'a Graph,
    order: &'a [usize],
    pos: &'a [usize],
    orbit: Option<(OrbitFn<'a>, usize)>,
    best: Vec<usize>,
    cap: usize,
    deadline: Option<Instant>,
    nodes: u64,
    aborted: bool,
}

impl Search<'_> {
    /// Greedy sequential colouring of `p`; returns `(vertex, colour)` for the
    /// vertices whose colour could still beat the incumbent, in colour order.
    fn colour(&self, p: &Bitset, min_colour: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut rest = p.clone();
        let mut k = 0;
        while !rest.is_empty() {
            k += 1;
            let mut q = rest.clone();
            while let Some(v) = q.first() {
                q.remove(v);
                rest.remove(v);
                q.and_not_assign(&self.g.adj[v]);
                if k >= min_colour {
                    out.push((v, k));
                }
            }
        }
        out
    }

    fn expand(&mut self, r: &mut Vec<usize>, mut p: Bitset) {
        self.nodes += 1;
        if self.nodes.is_multiple_of(1024) {
            if let Some(dl) = self.deadline {
                if Instant::now() >= dl {
                    self.aborted = true;
                }
            }
        }
        if self.aborted || self.best.len() >= self.cap {
            return;
        }
        let min_colour = (self.best.len() + 1).saturating_sub(r.len()).max(1);
        let order = self.colour(&p, min_colour);
        for &(v, k) in order.iter().rev() {
            if r.len() + k <= self.best.len() || self.aborted || self.best.len() >= self.cap {
                return;
            }
            r.push(v);
            let np = p.and(&self.g.adj[v]);
            if np.is_empty() {
                if r.len() > self.best.len() {
                    self.best = r.clone();
                }
            } else {
                self.expand(r, np);
            }
            r.pop();
            p.remove(v);
            // every clique through an image of v has been seen already
            if let Some((orbit, depth)) = self.orbit {
                if r.len() < depth {
                    let labels: Vec<usize> = r.iter().map(|&i| self.order[i]).collect();
                    for u in orbit(&labels, self.order[v]) {
                        p.remove(self.pos[u]);
                    }
                }
            }
        }
    }
}

/// Maximum clique of `g`. `initial` is a known clique used as incumbent,
/// `cap` a proven upper bound that stops the search once reached.
pub fn max_clique(g: &Graph, initial: &[usize], cap: Option<usize>, deadline: Option<Instant>) -> CliqueResult {
    max_clique_with_orbits(g, initial, cap, deadline, None)
}

/// [`max_clique`] with orbital branching: after all cliques through `v`
/// have been explored at a node of depth `< depth`, the whole orbit of `v`
/// is discarded.
pub fn max_clique_with_orbits(
    g: &Graph,
    initial: &[usize],
    cap: Option<usize>,
    deadline: Option<Instant>,
    orbit: Option<(OrbitFn<'_>, usize)>,
) -> CliqueResult {
    let n = g.len();
    if n == 0 {
        return CliqueResult { clique: Vec::new(), complete: true };
    }
    // relabel by descending degree, ties by index
    let mut order: Vec<usize> = (0..n).collect();
    let deg: Vec<usize> = g.adj.iter().map(Bitset::count).collect();
    order.sort_by(|&a, &b| deg[b].cmp(&deg[a]).then(a.cmp(&b)));
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut h = Graph::new(n);
    for (i, &v) in order.iter().enumerate() {
        for u in g.adj[v].iter() {
            h.adj[i].insert(pos[u]);
        }
    }
    let mut s = Search {
        g: &h,
        order: &order,
        pos: &pos,
        orbit,
        best: initial.iter().map(|&v| pos[v]).collect(),
        cap: cap.unwrap_or(usize::MAX),
        deadline,
        nodes: 0,
        aborted: false,
    };
    if s.best.is_empty() {
        s.best.push(0);
    }
    let mut r = Vec::new();
    s.expand(&mut r, Bitset::full(n));
    let mut clique: Vec<usize> = s.best.iter().map(|&i| order[i]).collect();
    clique.sort_unstable();
    CliqueResult { clique, complete: !s.aborted }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(g: &Graph) -> usize {
        let n = g.len();
        let mut best = 0;
        for m in 0u32..(1 << n) {
            let vs: Vec<usize> = (0..n).filter(|&i| m >> i & 1 == 1).collect();
            if vs.iter().all(|&a| vs.iter().all(|&b| a == b || g.adj[a].contains(b))) {
                best = best.max(vs.len());
            }
        }
        best
    }

    #[test]
    fn matches_brute_force_on_random_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..60 {
            let n = rng.random_range(1..14);
            let p = rng.random_range(0.1..0.9);
            let mut g = Graph::new(n);
            for a in 0..n {
                for b in a + 1..n {
                    if rng.random_bool(p) {
                        g.add_edge(a, b);
                    }
                }
            }
            let r = max_clique(&g, &[], None, None);
            assert!(r.complete);
            assert_eq!(r.clique.len(), brute(&g));
            for &a in &r.clique {
                for &b in &r.clique {
                    assert!(a == b || g.adj[a].contains(b));
                }
            }
        }
    }

    #[test]
    fn bitset_ops() {
        let mut b = Bitset::new(130);
        b.insert(3);
        b.insert(129);
        assert_eq!(b.iter().collect::<Vec<_>>(), vec![3, 129]);
        assert_eq!(b.first(), Some(3));
        assert_eq!(b.count(), 2);
        b.remove(3);
        assert_eq!(b.first(), Some(129));
    }
}
