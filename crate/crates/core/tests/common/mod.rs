//! Independent oracles shared by the integration tests. Nothing here touches
//! the bit-set kernel or the coverage tables.

#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use edim::{Graph, Kind};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn bfs(g: &Graph, src: usize) -> Vec<u32> {
    let mut d = vec![u32::MAX; g.order()];
    d[src] = 0;
    let mut q = VecDeque::from([src]);
    while let Some(u) = q.pop_front() {
        for &w in g.neighbors(u) {
            if d[w] == u32::MAX {
                d[w] = d[u] + 1;
                q.push_back(w);
            }
        }
    }
    d
}

pub fn distances(g: &Graph) -> Vec<Vec<u32>> {
    (0..g.order()).map(|v| bfs(g, v)).collect()
}

/// Straight from the definition: every vertex (or edge) gets a distinct
/// vector of distances to `set`.
pub fn resolves(g: &Graph, d: &[Vec<u32>], kind: Kind, set: &[usize]) -> bool {
    let mut seen = HashSet::new();
    match kind {
        Kind::Vertex => {
            (0..g.order()).all(|x| seen.insert(set.iter().map(|&s| d[s][x]).collect::<Vec<_>>()))
        }
        Kind::Edge => g.edges().iter().all(|&(u, v)| {
            seen.insert(
                set.iter()
                    .map(|&s| d[s][u].min(d[s][v]))
                    .collect::<Vec<_>>(),
            )
        }),
    }
}

/// k-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            if n - v < k - cur.len() {
                break;
            }
            cur.push(v);
            go(n, k, v + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Minimum generator size and the lexicographically first minimum generator.
/// Edge generators are non-empty, so a single edge needs one vertex.
pub fn brute_dimension(g: &Graph, kind: Kind) -> (usize, Vec<usize>) {
    let d = distances(g);
    let from = if kind == Kind::Edge { 1 } else { 0 };
    for k in from..=g.order() {
        if let Some(s) = combinations(g.order(), k)
            .into_iter()
            .find(|s| resolves(g, &d, kind, s))
        {
            return (k, s);
        }
    }
    unreachable!()
}

/// Random connected graph: a random recursive tree plus each remaining
/// pair with probability `p`.
pub fn random_connected<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if !edges.contains(&(u, v)) && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    edges.shuffle(rng);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let edges: Vec<_> = edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
    Graph::new(n, &edges).unwrap()
}

pub fn random_tree<R: Rng>(rng: &mut R, n: usize) -> Graph {
    random_connected(rng, n, 0.0)
}

/// Sum over vertices of (legs - 1) where a vertex has more than one leg.
/// Each leaf walks towards the interior until it meets a vertex of degree
/// at least 3; that vertex owns the leg.
pub fn leg_sum(g: &Graph) -> usize {
    let n = g.order();
    if (0..n).all(|v| g.degree(v) <= 2) {
        return 1;
    }
    let mut legs = vec![0usize; n];
    for leaf in (0..n).filter(|&v| g.degree(v) == 1) {
        let (mut prev, mut cur) = (leaf, g.neighbors(leaf)[0]);
        while g.degree(cur) == 2 {
            let next = if g.neighbors(cur)[0] == prev {
                g.neighbors(cur)[1]
            } else {
                g.neighbors(cur)[0]
            };
            prev = cur;
            cur = next;
        }
        legs[cur] += 1;
    }
    legs.iter().filter(|&&l| l > 1).map(|l| l - 1).sum()
}

pub fn random_permutation<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}
