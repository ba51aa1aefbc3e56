//! Simple connected undirected graphs and the distance machinery behind
//! metric and edge metric generators.
//!
//! Vertices are dense ids `0..n`. Edges keep the id they were given at
//! construction (input order); every unordered pair is stored as `(u, v)`
//! with `u < v`.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::{self, BitSet};

pub type Dist = u32;

/// Default ceiling on the number of items (edges or vertices) whose pair
/// universe may be materialized as per-vertex bit sets.
pub const DEFAULT_MAX_PAIR_ITEMS: usize = 1 << 15;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("edge ({u}, {v}) references a vertex outside 0..{n}")]
    VertexOutOfRange { u: usize, v: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("invalid id {0}")]
    InvalidId(usize),
    #[error("not a permutation of 0..{0}")]
    NotAPermutation(usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{items} items give too many pairs (limit is {limit} items)")]
    PairUniverseTooLarge { items: usize, limit: usize },
}

/// Whether a generator distinguishes vertices (metric dimension) or edges
/// (edge metric dimension).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Vertex,
    Edge,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Vertex => "vertex",
            Kind::Edge => "edge",
        })
    }
}

#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    edge_ids: HashMap<(usize, usize), usize>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl Graph {
    /// Validates and builds a graph. Edge ids follow input order.
    pub fn new(n: usize, edge_list: &[(usize, usize)]) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::EmptyGraph);
        }
        let mut edges = Vec::with_capacity(edge_list.len());
        let mut edge_ids = HashMap::with_capacity(edge_list.len());
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edge_list {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange { u, v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            let key = (u.min(v), u.max(v));
            if edge_ids.insert(key, edges.len()).is_some() {
                return Err(GraphError::DuplicateEdge(key.0, key.1));
            }
            edges.push(key);
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let g = Self {
            n,
            edges,
            adj,
            edge_ids,
        };
        if !g.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> (usize, usize) {
        self.edges[id]
    }

    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        self.edge_ids.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_id(u, v).is_some()
    }

    pub fn is_tree(&self) -> bool {
        self.edges.len() + 1 == self.n
    }

    /// True for a tree with maximum degree at most 2.
    pub fn is_path(&self) -> bool {
        self.is_tree() && self.max_degree() <= 2
    }

    /// Hop distances from `src` to every vertex.
    pub fn bfs(&self, src: usize) -> Vec<Dist> {
        let mut dist = vec![Dist::MAX; self.n];
        let mut queue = VecDeque::with_capacity(self.n);
        dist[src] = 0;
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            let du = dist[u] + 1;
            for &w in &self.adj[u] {
                if dist[w] == Dist::MAX {
                    dist[w] = du;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    fn is_connected(&self) -> bool {
        self.bfs(0).iter().all(|&d| d != Dist::MAX)
    }

    /// Renames vertex `v` to `perm[v]`. Edge `i` of the result is the image
    /// of edge `i`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph, GraphError> {
        if perm.len() != self.n {
            return Err(GraphError::NotAPermutation(self.n));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(GraphError::NotAPermutation(self.n));
            }
        }
        let edges: Vec<_> = self
            .edges
            .iter()
            .map(|&(u, v)| (perm[u], perm[v]))
            .collect();
        Graph::new(self.n, &edges)
    }

    /// Parses the edge-list text format: a header line `n m`, then `m` lines
    /// `u v`. Blank lines and anything after `#` are ignored.
    pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 2 {
                return Err(GraphError::Parse {
                    line: line_no,
                    msg: format!("expected two integers, found {:?}", line),
                });
            }
            let parse = |s: &str| {
                s.parse::<usize>().map_err(|_| GraphError::Parse {
                    line: line_no,
                    msg: format!("not a non-negative integer: {s:?}"),
                })
            };
            let pair = (parse(fields[0])?, parse(fields[1])?);
            match header {
                None => header = Some(pair),
                Some(_) => edges.push((pair, line_no)),
            }
        }
        let (n, m) = header.ok_or(GraphError::Parse {
            line: 0,
            msg: "missing `n m` header".into(),
        })?;
        if edges.len() != m {
            return Err(GraphError::Parse {
                line: edges.last().map_or(1, |e| e.1),
                msg: format!("header declares {m} edges, found {}", edges.len()),
            });
        }
        for &((u, v), line) in &edges {
            if u >= n || v >= n {
                return Err(GraphError::Parse {
                    line,
                    msg: format!("vertex out of range 0..{n} in ({u}, {v})"),
                });
            }
        }
        let pairs: Vec<_> = edges.into_iter().map(|e| e.0).collect();
        Graph::new(n, &pairs)
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

/// All-pairs hop distances, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<Dist>,
}

impl DistanceMatrix {
    pub fn new(g: &Graph) -> Self {
        let n = g.order();
        let mut dist = Vec::with_capacity(n * n);
        for v in 0..n {
            dist.extend(g.bfs(v));
        }
        Self { n, dist }
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> Dist {
        self.dist[u * self.n + v]
    }

    pub fn row(&self, u: usize) -> &[Dist] {
        &self.dist[u * self.n..(u + 1) * self.n]
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn diameter(&self) -> Dist {
        self.dist.iter().copied().max().unwrap_or(0)
    }
}

pub fn all_pairs_distances(g: &Graph) -> DistanceMatrix {
    DistanceMatrix::new(g)
}

/// `dist[e][v] = min(d(u, v), d(w, v))` for every edge `e = uw`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeDistanceTable {
    n: usize,
    dist: Vec<Dist>,
}

impl EdgeDistanceTable {
    pub fn new(g: &Graph, dm: &DistanceMatrix) -> Self {
        let n = g.order();
        let mut dist = Vec::with_capacity(g.size() * n);
        for &(u, w) in g.edges() {
            let (ru, rw) = (dm.row(u), dm.row(w));
            dist.extend(ru.iter().zip(rw).map(|(a, b)| *a.min(b)));
        }
        Self { n, dist }
    }

    #[inline]
    pub fn get(&self, edge: usize, v: usize) -> Dist {
        self.dist[edge * self.n + v]
    }

    pub fn row(&self, edge: usize) -> &[Dist] {
        &self.dist[edge * self.n..(edge + 1) * self.n]
    }

    pub fn edge_count(&self) -> usize {
        self.dist.len().checked_div(self.n).unwrap_or(0)
    }
}

pub fn edge_distance_table(g: &Graph, dm: &DistanceMatrix) -> EdgeDistanceTable {
    EdgeDistanceTable::new(g, dm)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Vertex(usize),
    Edge(usize),
}

/// Distance vector of one vertex or edge to an ordered vertex set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Representation(pub Vec<Dist>);

pub fn representation(
    g: &Graph,
    target: Target,
    set: &[usize],
) -> Result<Representation, GraphError> {
    if let Some(&bad) = set.iter().find(|&&s| s >= g.order()) {
        return Err(GraphError::InvalidId(bad));
    }
    let coords = match target {
        Target::Vertex(v) => {
            if v >= g.order() {
                return Err(GraphError::InvalidId(v));
            }
            let d = g.bfs(v);
            set.iter().map(|&s| d[s]).collect()
        }
        Target::Edge(e) => {
            if e >= g.size() {
                return Err(GraphError::InvalidId(e));
            }
            let (u, w) = g.edge(e);
            let (du, dw) = (g.bfs(u), g.bfs(w));
            set.iter().map(|&s| du[s].min(dw[s])).collect()
        }
    };
    Ok(Representation(coords))
}

/// Outcome of a generator check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Resolution {
    Resolving,
    /// The lexicographically smallest pair of item ids (edges or vertices)
    /// with equal representations.
    Unresolved(usize, usize),
}

impl Resolution {
    pub fn is_resolving(&self) -> bool {
        matches!(self, Resolution::Resolving)
    }

    pub fn witness(&self) -> Option<(usize, usize)> {
        match *self {
            Resolution::Resolving => None,
            Resolution::Unresolved(a, b) => Some((a, b)),
        }
    }
}

/// Representation of every item of `kind` with respect to `set`.
fn item_representations(g: &Graph, kind: Kind, set: &[usize]) -> Vec<Vec<Dist>> {
    let rows: Vec<Vec<Dist>> = set.iter().map(|&s| g.bfs(s)).collect();
    match kind {
        Kind::Vertex => (0..g.order())
            .map(|v| rows.iter().map(|r| r[v]).collect())
            .collect(),
        Kind::Edge => g
            .edges()
            .iter()
            .map(|&(u, w)| rows.iter().map(|r| r[u].min(r[w])).collect())
            .collect(),
    }
}

/// Groups of item ids sharing a representation; each group sorted, groups
/// ordered by their smallest id.
fn collision_groups(g: &Graph, kind: Kind, set: &[usize]) -> Vec<Vec<usize>> {
    let reps = item_representations(g, kind, set);
    let mut order: Vec<usize> = (0..reps.len()).collect();
    order.sort_by(|&a, &b| reps[a].cmp(&reps[b]).then(a.cmp(&b)));
    let mut groups: Vec<Vec<usize>> = order
        .chunk_by(|&a, &b| reps[a] == reps[b])
        .filter(|c| c.len() > 1)
        .map(<[usize]>::to_vec)
        .collect();
    groups.sort_by_key(|grp| grp[0]);
    groups
}

pub fn check_generator(g: &Graph, kind: Kind, set: &[usize]) -> Resolution {
    // Smallest pair overall is (grp[0], grp[1]) of the group with the
    // smallest first element, breaking ties on the second element.
    collision_groups(g, kind, set)
        .iter()
        .map(|grp| (grp[0], grp[1]))
        .min()
        .map_or(Resolution::Resolving, |(a, b)| Resolution::Unresolved(a, b))
}

pub fn is_edge_metric_generator(g: &Graph, set: &[usize]) -> Resolution {
    check_generator(g, Kind::Edge, set)
}

pub fn is_metric_generator(g: &Graph, set: &[usize]) -> Resolution {
    check_generator(g, Kind::Vertex, set)
}

/// Every pair of items left undistinguished by `set`, in lexicographic order.
pub fn undistinguished_pairs(g: &Graph, kind: Kind, set: &[usize]) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for grp in collision_groups(g, kind, set) {
        for (i, &a) in grp.iter().enumerate() {
            for &b in &grp[i + 1..] {
                pairs.push((a, b));
            }
        }
    }
    pairs.sort_unstable();
    pairs
}

/// Bit index of the unordered pair `{i, j}`: `j(j-1)/2 + i` for `i < j`.
#[inline]
pub fn pair_index(i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    debug_assert!(i < j);
    j * (j - 1) / 2 + i
}

/// Inverse of [`pair_index`].
pub fn pair_from_index(idx: usize) -> (usize, usize) {
    // Largest j with j(j-1)/2 <= idx.
    let mut j = ((((8 * idx + 1) as f64).sqrt() + 1.0) / 2.0) as usize;
    while j * (j - 1) / 2 > idx {
        j -= 1;
    }
    while (j + 1) * j / 2 <= idx {
        j += 1;
    }
    (idx - j * (j - 1) / 2, j)
}

pub fn pair_count(items: usize) -> usize {
    items * items.saturating_sub(1) / 2
}

/// Pairs of edges a single vertex tells apart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairCoverage {
    pub owner: usize,
    pub covered: BitSet,
}

pub fn distinguished_pairs(g: &Graph, v: usize, edt: &EdgeDistanceTable) -> PairCoverage {
    let m = g.size();
    let column: Vec<Dist> = (0..m).map(|e| edt.get(e, v)).collect();
    PairCoverage {
        owner: v,
        covered: coverage_from_column(&column),
    }
}

fn coverage_from_column(column: &[Dist]) -> BitSet {
    let mut covered = BitSet::new(pair_count(column.len()));
    for j in 1..column.len() {
        let base = j * (j - 1) / 2;
        for i in 0..j {
            if column[i] != column[j] {
                covered.insert(base + i);
            }
        }
    }
    covered
}

/// Per-vertex pair coverage for one kind, rows packed contiguously so the
/// exact search can OR them without indirection.
#[derive(Debug, Clone)]
pub struct CoverageTable {
    kind: Kind,
    vertices: usize,
    items: usize,
    pairs: usize,
    words: usize,
    rows: Vec<u64>,
}

impl CoverageTable {
    pub fn build(g: &Graph, kind: Kind, max_items: usize) -> Result<Self, GraphError> {
        let items = match kind {
            Kind::Vertex => g.order(),
            Kind::Edge => g.size(),
        };
        if items > max_items {
            return Err(GraphError::PairUniverseTooLarge {
                items,
                limit: max_items,
            });
        }
        let dm = DistanceMatrix::new(g);
        let edt = (kind == Kind::Edge).then(|| EdgeDistanceTable::new(g, &dm));
        let pairs = pair_count(items);
        let words = bitset::words_for(pairs);
        let mut rows = Vec::with_capacity(words * g.order());
        for v in 0..g.order() {
            let column: Vec<Dist> = match &edt {
                Some(t) => (0..items).map(|e| t.get(e, v)).collect(),
                None => dm.row(v).to_vec(),
            };
            rows.extend_from_slice(coverage_from_column(&column).words());
        }
        Ok(Self {
            kind,
            vertices: g.order(),
            items,
            pairs,
            words,
            rows,
        })
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn items(&self) -> usize {
        self.items
    }

    pub fn pairs(&self) -> usize {
        self.pairs
    }

    pub fn words(&self) -> usize {
        self.words
    }

    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    pub fn row_set(&self, v: usize) -> BitSet {
        let mut set = BitSet::new(self.pairs);
        for idx in 0..self.pairs {
            if self.row(v)[idx / 64] >> (idx % 64) & 1 == 1 {
                set.insert(idx);
            }
        }
        set
    }

    pub fn covers(&self, set: &[usize]) -> bool {
        let mut acc = vec![0u64; self.words];
        for &v in set {
            for (a, w) in acc.iter_mut().zip(self.row(v)) {
                *a |= w;
            }
        }
        bitset::is_full_words(&acc, self.pairs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphStats {
    pub order: usize,
    pub size: usize,
    pub diameter: Dist,
    pub max_degree: usize,
    pub universal_vertex_count: usize,
    pub all_pairs_share_neighbor: bool,
}

pub fn graph_stats(g: &Graph) -> GraphStats {
    let n = g.order();
    let dm = DistanceMatrix::new(g);
    let universal_vertex_count = (0..n).filter(|&v| g.degree(v) == n - 1).count();
    let mut marks = vec![false; n];
    let mut share = true;
    'outer: for u in 0..n {
        for &w in g.neighbors(u) {
            marks[w] = true;
        }
        for v in u + 1..n {
            if !g.neighbors(v).iter().any(|&w| marks[w]) {
                share = false;
                break 'outer;
            }
        }
        for &w in g.neighbors(u) {
            marks[w] = false;
        }
    }
    GraphStats {
        order: n,
        size: g.size(),
        diameter: dm.diameter(),
        max_degree: g.max_degree(),
        universal_vertex_count,
        all_pairs_share_neighbor: share,
    }
}
