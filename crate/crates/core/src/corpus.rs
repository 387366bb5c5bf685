//! Graph families and test corpora: named graphs, every isomorphism class
//! up to a given order, and seeded G(n, p) samples.

use std::collections::BTreeSet;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

pub mod named {
    use crate::graph::Graph;

    fn build(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::new(n, edges.iter().copied()).expect("named graph is valid")
    }

    /// C4 labelled as in the worked example: E = {12, 13, 24, 34}.
    pub fn example_c4() -> Graph {
        build(4, &[(1, 2), (1, 3), (2, 4), (3, 4)])
    }

    /// Cycle 1-2-...-n-1. For n < 3 this degenerates to a path.
    pub fn cycle(n: usize) -> Graph {
        let mut edges: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        if n >= 3 {
            edges.push((n, 1));
        }
        build(n, &edges)
    }

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        build(n, &edges)
    }

    pub fn complete(n: usize) -> Graph {
        let edges: Vec<_> = (1..=n)
            .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
            .collect();
        build(n, &edges)
    }

    /// K_{1,leaves} with centre 1.
    pub fn star(leaves: usize) -> Graph {
        let edges: Vec<_> = (2..=leaves + 1).map(|v| (1, v)).collect();
        build(leaves + 1, &edges)
    }

    /// Two triangles sharing vertex 1.
    pub fn bowtie() -> Graph {
        build(5, &[(1, 2), (2, 3), (1, 3), (1, 4), (4, 5), (1, 5)])
    }

    /// Outer 5-cycle 1..5, inner pentagram 6..10, spokes i -- i+5.
    pub fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i + 1, (i + 1) % 5 + 1));
            edges.push((i + 6, (i + 2) % 5 + 6));
            edges.push((i + 1, i + 6));
        }
        build(10, &edges)
    }

    /// 3-dimensional hypercube.
    pub fn cube() -> Graph {
        let mut edges = Vec::new();
        for a in 0..8usize {
            for bit in 0..3 {
                let b = a ^ (1 << bit);
                if a < b {
                    edges.push((a + 1, b + 1));
                }
            }
        }
        build(8, &edges)
    }

    /// Look up a family member by name, e.g. `cycle`, `complete`, `petersen`.
    pub fn by_family(family: &str, n: usize) -> Option<Graph> {
        match family {
            "cycle" if n >= 3 => Some(cycle(n)),
            "complete" if n >= 1 => Some(complete(n)),
            "path" if n >= 1 => Some(path(n)),
            "star" if n >= 2 => Some(star(n - 1)),
            "petersen" => Some(petersen()),
            "bowtie" => Some(bowtie()),
            "cube" => Some(cube()),
            _ => None,
        }
    }
}

/// Size-independent pair numbering used while growing graphs vertex by vertex.
fn colex(a: usize, b: usize) -> usize {
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    hi * (hi - 1) / 2 + lo
}

fn mask_to_graph(n: usize, mask: u128) -> Graph {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if mask >> colex(a, b) & 1 == 1 {
                edges.push((a, b));
            }
        }
    }
    Graph::from_sorted_pairs(n, edges)
}

/// Minimum relabelled mask over all labellings that list vertices by
/// non-increasing degree. Degree classes are isomorphism invariant, so the
/// minimum is a canonical form.
fn canonical_mask(n: usize, mask: u128) -> u128 {
    let mut degree = vec![0usize; n];
    for a in 0..n {
        for b in a + 1..n {
            if mask >> colex(a, b) & 1 == 1 {
                degree[a] += 1;
                degree[b] += 1;
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| degree[y].cmp(&degree[x]));
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match classes.last_mut() {
            Some(c) if degree[c[0]] == degree[v] => c.push(v),
            _ => classes.push(vec![v]),
        }
    }

    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .filter(|&(a, b)| mask >> colex(a, b) & 1 == 1)
        .collect();
    let mut best = u128::MAX;
    let mut label = vec![0usize; n];
    let mut class_perms: Vec<Vec<usize>> = classes.clone();
    relabel_all(&mut class_perms, 0, &mut label, &edges, &mut best);
    best
}

fn relabel_all(
    classes: &mut [Vec<usize>],
    depth: usize,
    label: &mut [usize],
    edges: &[(usize, usize)],
    best: &mut u128,
) {
    if depth == classes.len() {
        let mut next = 0;
        for class in classes.iter() {
            for &v in class {
                label[v] = next;
                next += 1;
            }
        }
        let m = edges
            .iter()
            .fold(0u128, |m, &(a, b)| m | 1u128 << colex(label[a], label[b]));
        *best = (*best).min(m);
        return;
    }
    let len = classes[depth].len();
    permute(classes, depth, 0, len, label, edges, best);
}

fn permute(
    classes: &mut [Vec<usize>],
    depth: usize,
    k: usize,
    len: usize,
    label: &mut [usize],
    edges: &[(usize, usize)],
    best: &mut u128,
) {
    if k == len {
        relabel_all(classes, depth + 1, label, edges, best);
        return;
    }
    for i in k..len {
        classes[depth].swap(k, i);
        permute(classes, depth, k + 1, len, label, edges, best);
        classes[depth].swap(k, i);
    }
}

/// One representative per isomorphism class of graphs on exactly `n`
/// vertices (connected or not), in a deterministic order. Practical for
/// n <= 7.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    assert!((1..=15).contains(&n), "n must be in 1..=15");
    let mut level: BTreeSet<u128> = BTreeSet::from([0]);
    for m in 2..=n {
        let mut next = BTreeSet::new();
        for &mask in &level {
            for subset in 0u32..1 << (m - 1) {
                let mut grown = mask;
                for a in 0..m - 1 {
                    if subset >> a & 1 == 1 {
                        grown |= 1u128 << colex(a, m - 1);
                    }
                }
                next.insert(canonical_mask(m, grown));
            }
        }
        level = next;
    }
    level.into_iter().map(|mask| mask_to_graph(n, mask)).collect()
}

/// Connected isomorphism classes on exactly `n` vertices.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    all_graphs(n).into_iter().filter(Graph::is_connected).collect()
}

/// Connected isomorphism classes on 1..=n_max vertices, smallest first.
pub fn connected_graphs_up_to(n_max: usize) -> Vec<Graph> {
    (1..=n_max).flat_map(connected_graphs).collect()
}

/// `count` Erdős–Rényi samples G(n, p) from a seeded ChaCha stream.
pub fn random_gnp(n: usize, p: f64, count: usize, seed: u64) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut edges = Vec::new();
            for a in 0..n {
                for b in a + 1..n {
                    if rng.gen_bool(p) {
                        edges.push((a, b));
                    }
                }
            }
            Graph::from_sorted_pairs(n, edges)
        })
        .collect()
}

/// A uniformly random labelled tree on `n` vertices (random parent for each vertex).
pub fn random_tree(n: usize, rng: &mut impl Rng) -> Graph {
    let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    edges.sort_unstable();
    Graph::from_sorted_pairs(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isomorphism_class_counts() {
        // OEIS A000088 and A001349
        let all = [1, 2, 4, 11, 34, 156];
        let connected = [1, 1, 2, 6, 21, 112];
        for n in 1..=6 {
            let graphs = all_graphs(n);
            assert_eq!(graphs.len(), all[n - 1], "all graphs on {n}");
            let c = graphs.iter().filter(|g| g.is_connected()).count();
            assert_eq!(c, connected[n - 1], "connected graphs on {n}");
        }
    }

    #[test]
    fn canonical_form_ignores_labelling() {
        let a = canonical_mask(4, (1 << colex(0, 1)) | (1 << colex(1, 2)));
        let b = canonical_mask(4, (1 << colex(3, 0)) | (1 << colex(0, 2)));
        assert_eq!(a, b);
        let c = canonical_mask(4, (1 << colex(0, 1)) | (1 << colex(2, 3)));
        assert_ne!(a, c);
    }

    #[test]
    fn named_graph_shapes() {
        let p = named::petersen();
        assert_eq!((p.n(), p.edge_count()), (10, 15));
        assert!((0..10).all(|v| p.degree(v) == 3));
        let q = named::cube();
        assert_eq!((q.n(), q.edge_count()), (8, 12));
        assert_eq!(named::complete(5).edge_count(), 10);
        assert_eq!(named::star(3).degree(0), 3);
        assert_eq!(named::bowtie().degree(0), 4);
    }

    #[test]
    fn random_samples_are_reproducible() {
        let a = random_gnp(7, 0.5, 5, 42);
        let b = random_gnp(7, 0.5, 5, 42);
        assert_eq!(a, b);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let t = random_tree(9, &mut rng);
        assert_eq!(t.edge_count(), 8);
        assert!(t.is_connected());
    }
}
