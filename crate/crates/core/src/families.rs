//! Constructors for the parametrized graph families.
//!
//! Every family is described by a [`FamilySpec`], which round-trips through a
//! compact string grammar:
//!
//! ```text
//! spec  := atom | "product(" spec "," spec ")" | "join(" spec "," spec ")"
//! atom  := name [ ":" int { "," int } ]
//! ```
//!
//! | string              | graph                                         |
//! |---------------------|-----------------------------------------------|
//! | `path:n`            | path P_n, n ≥ 1                               |
//! | `cycle:n`           | cycle C_n, n ≥ 3                              |
//! | `complete:n`        | complete graph K_n, n ≥ 1                     |
//! | `bipartite:r,t`     | complete bipartite K_{r,t}, r,t ≥ 1           |
//! | `star:b`            | star K_{1,b}, b ≥ 1                           |
//! | `wheel:n`           | wheel W_{1,n} (C_n plus hub), n ≥ 3           |
//! | `fan:n`             | fan F_{1,n} (P_n plus hub), n ≥ 1             |
//! | `grid:r,t`          | grid P_r □ P_t, r ≥ t ≥ 2                     |
//! | `torus:r,t`         | torus C_r □ C_t, r,t ≥ 3                      |
//! | `hypercube:n`       | hypercube Q_n, 1 ≤ n ≤ 20                     |
//! | `circulant:n,r`     | circulant CR(n,r), n ≥ 3, 1 ≤ r ≤ n/2         |
//! | `trn:r,n`           | tree T_{r,n}: star S_{1,r} plus a tail, 2 ≤ r ≤ n−2 |
//! | `familyF:a,b,c`     | G_{a,b,c}, a ≥ 1, b ≥ 2, c ≥ 0                |
//! | `grn:r,n`           | G_{r,n}, r ≥ 1, n ≥ 2r+2                      |
//! | `gr:r,n`            | G_r of order n, r ≥ 1, n ≥ 2r+1               |
//! | `gprime:r,t`        | G'_{r,t}, 2 ≤ r ≤ t ≤ 2r−2                    |
//! | `gdprime:r,t`       | G''_{r,t}, 2 ≤ r ≤ t ≤ 2r−2                   |
//! | `realize:r,t,n`     | order n, dim r, edim t; 2 ≤ r ≤ t ≤ 2r, t ≤ n−2 |
//! | `figure1`           | the 13-vertex graph whose metric bases all fail on edges |
//! | `product(A,B)`      | Cartesian product A □ B                       |
//! | `join(A,B)`         | join A + B                                    |
//!
//! No whitespace is allowed inside a spec string.
//!
//! Vertex numbering conventions: the hub of a wheel or fan is the last id;
//! products number `(a, b)` as `a·|B| + b` (so torus vertex `(a_i, b_j)` of
//! `C_R □ C_T` is `i·T + j`); hypercube vertices are the integer value of their
//! bit vector with coordinate 1 as the least significant bit.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    CompleteBipartite(usize, usize),
    Star(usize),
    Wheel(usize),
    Fan(usize),
    Grid(usize, usize),
    CartesianProduct(Box<FamilySpec>, Box<FamilySpec>),
    Torus(usize, usize),
    Hypercube(usize),
    Circulant(usize, usize),
    Join(Box<FamilySpec>, Box<FamilySpec>),
    TreeTrn(usize, usize),
    FamilyF(usize, usize, usize),
    GRn(usize, usize),
    GR(usize, usize),
    GPrimeRT(usize, usize),
    GDoublePrimeRT(usize, usize),
    Realize(usize, usize, usize),
    Figure1,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("{family}: parameter out of domain, requires {constraint}")]
    ParameterOutOfDomain { family: String, constraint: String },
    #[error("bad family spec {input:?}: {msg}")]
    Parse { input: String, msg: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A graph with a human-readable name for every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    pub graph: Graph,
    pub labels: Vec<String>,
}

impl LabeledGraph {
    pub fn new(graph: Graph, labels: Vec<String>) -> Self {
        debug_assert_eq!(graph.order(), labels.len());
        Self { graph, labels }
    }

    /// Labels are the decimal ids.
    pub fn unlabeled(graph: Graph) -> Self {
        let labels = (0..graph.order()).map(|v| v.to_string()).collect();
        Self { graph, labels }
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn id_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn ids_of(&self, labels: &[&str]) -> Option<Vec<usize>> {
        labels.iter().map(|l| self.id_of(l)).collect()
    }

    pub fn label_map_text(&self) -> String {
        let mut out = String::new();
        for (v, l) in self.labels.iter().enumerate() {
            out.push_str(&format!("{v} {l}\n"));
        }
        out
    }

    /// Parses lines `id label` (comments after `#`); the map must be total
    /// over `0..n` and injective.
    pub fn parse_label_map(text: &str, n: usize) -> Result<Vec<String>, GraphError> {
        let mut labels: Vec<Option<String>> = vec![None; n];
        let mut seen = HashMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| GraphError::Parse { line: idx + 1, msg };
            let mut it = line.split_whitespace();
            let (Some(id), Some(label), None) = (it.next(), it.next(), it.next()) else {
                return Err(err(format!("expected `id label`, found {line:?}")));
            };
            let id: usize = id.parse().map_err(|_| err(format!("bad id {id:?}")))?;
            if id >= n {
                return Err(err(format!("id {id} outside 0..{n}")));
            }
            if let Some(prev) = seen.insert(label.to_string(), id) {
                return Err(err(format!("label {label:?} used for ids {prev} and {id}")));
            }
            labels[id] = Some(label.to_string());
        }
        labels
            .into_iter()
            .enumerate()
            .map(|(v, l)| {
                l.ok_or(GraphError::Parse {
                    line: 0,
                    msg: format!("no label for vertex {v}"),
                })
            })
            .collect()
    }
}

struct Builder {
    labels: Vec<String>,
    edges: Vec<(usize, usize)>,
}

impl Builder {
    fn new() -> Self {
        Self {
            labels: Vec::new(),
            edges: Vec::new(),
        }
    }

    fn vertex(&mut self, label: impl Into<String>) -> usize {
        self.labels.push(label.into());
        self.labels.len() - 1
    }

    fn edge(&mut self, u: usize, v: usize) {
        self.edges.push((u, v));
    }

    /// Appends a path of `len` new vertices hanging off `anchor`.
    fn tail(&mut self, anchor: usize, len: usize, prefix: &str) {
        let mut prev = anchor;
        for i in 1..=len {
            let p = self.vertex(format!("{prefix}{i}"));
            self.edge(prev, p);
            prev = p;
        }
    }

    /// Adds `x_i y_i` triangles on `center` for `i` in `1..=count`.
    fn triangles(&mut self, center: usize, count: usize) {
        for i in 1..=count {
            let x = self.vertex(format!("x{i}"));
            let y = self.vertex(format!("y{i}"));
            self.edge(center, x);
            self.edge(center, y);
            self.edge(x, y);
        }
    }

    fn finish(self) -> Result<LabeledGraph, FamilyError> {
        let graph = Graph::new(self.labels.len(), &self.edges)?;
        Ok(LabeledGraph::new(graph, self.labels))
    }
}

fn require(ok: bool, spec: &FamilySpec, constraint: &str) -> Result<(), FamilyError> {
    if ok {
        Ok(())
    } else {
        Err(FamilyError::ParameterOutOfDomain {
            family: spec.to_string(),
            constraint: constraint.to_string(),
        })
    }
}

impl FamilySpec {
    /// Parameter-domain check without building the graph.
    pub fn validate(&self) -> Result<(), FamilyError> {
        use FamilySpec::*;
        match *self {
            Path(n) | Complete(n) | Fan(n) => require(n >= 1, self, "n >= 1"),
            Cycle(n) | Wheel(n) => require(n >= 3, self, "n >= 3"),
            CompleteBipartite(r, t) => require(r >= 1 && t >= 1, self, "r >= 1 and t >= 1"),
            Star(b) => require(b >= 1, self, "b >= 1"),
            Grid(r, t) => require(r >= t && t >= 2, self, "r >= t >= 2"),
            Torus(r, t) => require(r >= 3 && t >= 3, self, "r >= 3 and t >= 3"),
            Hypercube(n) => require((1..=20).contains(&n), self, "1 <= n <= 20"),
            Circulant(n, r) => require(
                n >= 3 && r >= 1 && 2 * r <= n,
                self,
                "n >= 3 and 1 <= r <= n/2",
            ),
            TreeTrn(r, n) => require(r >= 2 && r + 2 <= n, self, "2 <= r <= n-2"),
            FamilyF(a, b, _) => require(a >= 1 && b >= 2, self, "a >= 1, b >= 2, c >= 0"),
            GRn(r, n) => require(r >= 1 && n >= 2 * r + 2, self, "r >= 1 and n >= 2r+2"),
            GR(r, n) => require(r >= 1 && n > 2 * r, self, "r >= 1 and n >= 2r+1"),
            GPrimeRT(r, t) | GDoublePrimeRT(r, t) => require(
                r >= 2 && r <= t && t + 2 <= 2 * r,
                self,
                "2 <= r <= t <= 2r-2",
            ),
            Realize(r, t, n) => require(
                r >= 2 && r <= t && t <= 2 * r && t + 2 <= n,
                self,
                "2 <= r <= t <= 2r and t <= n-2",
            ),
            CartesianProduct(ref a, ref b) | Join(ref a, ref b) => {
                a.validate()?;
                b.validate()
            }
            Figure1 => Ok(()),
        }
    }

    /// Number of vertices of the constructed graph.
    pub fn order(&self) -> usize {
        use FamilySpec::*;
        match *self {
            Path(n) | Cycle(n) | Complete(n) | Circulant(n, _) => n,
            CompleteBipartite(r, t) => r + t,
            Star(b) => b + 1,
            Wheel(n) | Fan(n) => n + 1,
            Grid(r, t) | Torus(r, t) => r * t,
            Hypercube(n) => 1 << n,
            TreeTrn(_, n) | GRn(_, n) | GR(_, n) | Realize(_, _, n) => n,
            FamilyF(a, b, c) => 2 * a + b + c + 2,
            GPrimeRT(_, t) => t + 3,
            GDoublePrimeRT(_, t) => t + 2,
            CartesianProduct(ref a, ref b) => a.order() * b.order(),
            Join(ref a, ref b) => a.order() + b.order(),
            Figure1 => 13,
        }
    }
}

pub fn make_family(spec: &FamilySpec) -> Result<LabeledGraph, FamilyError> {
    spec.validate()?;
    use FamilySpec::*;
    let mut b = Builder::new();
    match *spec {
        Path(n) => {
            for i in 0..n {
                b.vertex(format!("v{i}"));
                if i > 0 {
                    b.edge(i - 1, i);
                }
            }
        }
        Cycle(n) => {
            for i in 0..n {
                b.vertex(format!("v{i}"));
            }
            for i in 0..n {
                b.edge(i, (i + 1) % n);
            }
        }
        Complete(n) => {
            for i in 0..n {
                b.vertex(format!("v{i}"));
            }
            for u in 0..n {
                for v in u + 1..n {
                    b.edge(u, v);
                }
            }
        }
        CompleteBipartite(r, t) => {
            for i in 1..=r {
                b.vertex(format!("u{i}"));
            }
            for j in 1..=t {
                b.vertex(format!("w{j}"));
            }
            for u in 0..r {
                for w in r..r + t {
                    b.edge(u, w);
                }
            }
        }
        Star(leaves) => {
            let c = b.vertex("c");
            for i in 1..=leaves {
                let l = b.vertex(format!("l{i}"));
                b.edge(c, l);
            }
        }
        Wheel(n) | Fan(n) => {
            for i in 1..=n {
                b.vertex(format!("g{i}"));
            }
            let hub = b.vertex("x");
            let rim = if matches!(spec, Wheel(_)) { n } else { n - 1 };
            for i in 0..rim {
                b.edge(i, (i + 1) % n);
            }
            for i in 0..n {
                b.edge(i, hub);
            }
        }
        Grid(r, t) => {
            return cartesian(&make_family(&Path(r))?, &make_family(&Path(t))?, |x, y| {
                format!("({},{})", &x[1..], &y[1..])
            })
        }
        Torus(r, t) => {
            return cartesian(
                &make_family(&Cycle(r))?,
                &make_family(&Cycle(t))?,
                |x, y| format!("(a{},b{})", &x[1..], &y[1..]),
            )
        }
        CartesianProduct(ref x, ref y) => {
            return cartesian(&make_family(x)?, &make_family(y)?, |a, b| {
                format!("({a},{b})")
            })
        }
        Hypercube(n) => {
            for v in 0..1usize << n {
                b.vertex(
                    (0..n)
                        .map(|k| if v >> k & 1 == 1 { '1' } else { '0' })
                        .collect::<String>(),
                );
            }
            for v in 0..1usize << n {
                for k in 0..n {
                    let w = v ^ (1 << k);
                    if v < w {
                        b.edge(v, w);
                    }
                }
            }
        }
        Circulant(n, r) => {
            for i in 0..n {
                b.vertex(format!("v{i}"));
            }
            let mut seen = std::collections::HashSet::new();
            for i in 0..n {
                for j in 1..=r {
                    let w = (i + j) % n;
                    if seen.insert((i.min(w), i.max(w))) {
                        b.edge(i, w);
                    }
                }
            }
        }
        Join(ref x, ref y) => {
            let (ga, gb) = (make_family(x)?, make_family(y)?);
            let off = ga.graph.order();
            for l in &ga.labels {
                b.vertex(format!("1.{l}"));
            }
            for l in &gb.labels {
                b.vertex(format!("2.{l}"));
            }
            for &(u, v) in ga.graph.edges() {
                b.edge(u, v);
            }
            for &(u, v) in gb.graph.edges() {
                b.edge(u + off, v + off);
            }
            for u in 0..off {
                for v in 0..gb.graph.order() {
                    b.edge(u, v + off);
                }
            }
        }
        TreeTrn(r, n) => {
            let c = b.vertex("c");
            for i in 1..=r {
                let l = b.vertex(format!("l{i}"));
                b.edge(c, l);
            }
            b.tail(c, n - r - 1, "p");
        }
        FamilyF(a, leaves, c) => {
            let g = b.vertex("g");
            b.triangles(g, a);
            let s = b.vertex("s");
            for i in 1..=leaves {
                let l = b.vertex(format!("l{i}"));
                b.edge(s, l);
            }
            let mut prev = g;
            for i in 1..=c {
                let p = b.vertex(format!("p{i}"));
                b.edge(prev, p);
                prev = p;
            }
            b.edge(prev, s);
        }
        GRn(r, n) => {
            let h = b.vertex("h");
            let w = b.vertex("w");
            b.edge(h, w);
            b.triangles(h, r);
            b.tail(w, n - 2 * r - 2, "p");
        }
        GR(r, n) => {
            let h = b.vertex("h");
            b.triangles(h, r);
            // x1 is vertex 1
            b.tail(1, n - 2 * r - 1, "p");
        }
        GPrimeRT(r, t) | GDoublePrimeRT(r, t) => {
            let h = b.vertex("h");
            let mut first_single = None;
            for i in 1..=2 * r - t + 1 {
                let z = b.vertex(format!("z{i}"));
                b.edge(h, z);
                first_single.get_or_insert(z);
            }
            b.triangles(h, t - r);
            if matches!(spec, GPrimeRT(..)) {
                let p = b.vertex("p");
                b.edge(first_single.expect("2r-t+1 >= 3 singles"), p);
            }
        }
        Realize(r, t, n) => return make_family(&realization_choice(r, t, n)?),
        Figure1 => {
            for i in 1..=13 {
                b.vertex(i.to_string());
            }
            for &(u, v) in &FIGURE1_EDGES {
                b.edge(u - 1, v - 1);
            }
        }
    }
    b.finish()
}

/// Edges of the `figure1` graph in its own 1-based labels.
pub const FIGURE1_EDGES: [(usize, usize); 18] = [
    (1, 2),
    (2, 3),
    (3, 6),
    (6, 5),
    (5, 4),
    (4, 7),
    (7, 8),
    (8, 9),
    (9, 11),
    (11, 8),
    (8, 10),
    (10, 7),
    (2, 5),
    (5, 8),
    (1, 4),
    (6, 9),
    (10, 12),
    (11, 13),
];

fn cartesian(
    a: &LabeledGraph,
    b: &LabeledGraph,
    label: impl Fn(&str, &str) -> String,
) -> Result<LabeledGraph, FamilyError> {
    let (na, nb) = (a.graph.order(), b.graph.order());
    let mut builder = Builder::new();
    for x in 0..na {
        for y in 0..nb {
            builder.vertex(label(a.label(x), b.label(y)));
        }
    }
    for x in 0..na {
        for &(u, v) in b.graph.edges() {
            builder.edge(x * nb + u, x * nb + v);
        }
    }
    for &(u, v) in a.graph.edges() {
        for y in 0..nb {
            builder.edge(u * nb + y, v * nb + y);
        }
    }
    builder.finish()
}

/// The family the realization construction picks for `(r, t, n)`.
pub fn realization_choice(r: usize, t: usize, n: usize) -> Result<FamilySpec, FamilyError> {
    FamilySpec::Realize(r, t, n).validate()?;
    Ok(if t == 2 * r {
        FamilySpec::GRn(r, n)
    } else if t + 1 == 2 * r {
        FamilySpec::GR(r, n)
    } else if t + 4 <= n {
        FamilySpec::FamilyF(t - r + 1, 2 * r - t, n - t - 4)
    } else if t + 3 == n {
        FamilySpec::GPrimeRT(r, t)
    } else {
        FamilySpec::GDoublePrimeRT(r, t)
    })
}

/// A connected graph of order `n` with metric dimension `r` and edge metric
/// dimension `t`, for `2 <= r <= t <= 2r` and `t <= n-2`.
///
/// When `2r <= n-2` the result is `G_{r,n}`, `G_r` or a member of the
/// `G_{a,b,c}` family; the `G'` and `G''` branches cover `t` in `{n-3, n-2}`
/// with `t <= 2r-2`.
pub fn realization_graph(r: usize, t: usize, n: usize) -> Result<LabeledGraph, FamilyError> {
    make_family(&realization_choice(r, t, n)?)
}

/// The all-ones vertex of `Q_n` followed by its single-zero flips at
/// coordinates `1..n-1`; the last coordinate is never flipped.
pub fn hypercube_generator(n: usize) -> Result<Vec<usize>, FamilyError> {
    FamilySpec::Hypercube(n).validate()?;
    let ones = (1usize << n) - 1;
    Ok(std::iter::once(ones)
        .chain((0..n - 1).map(|k| ones ^ (1 << k)))
        .collect())
}

/// The three-vertex edge metric generator `(a_0,b_0), (a_0,b_2t), (a_r,b_t)`
/// of `C_4r □ C_4t`, as ids of `FamilySpec::Torus(4r, 4t)`.
pub fn torus_generator(r: usize, t: usize) -> Result<Vec<usize>, FamilyError> {
    if r == 0 || t == 0 {
        return Err(FamilyError::ParameterOutOfDomain {
            family: format!("torus generator ({r},{t})"),
            constraint: "r >= 1 and t >= 1".into(),
        });
    }
    let cols = 4 * t;
    Ok(vec![0, 2 * t, r * cols + t])
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use FamilySpec::*;
        match self {
            Path(n) => write!(f, "path:{n}"),
            Cycle(n) => write!(f, "cycle:{n}"),
            Complete(n) => write!(f, "complete:{n}"),
            CompleteBipartite(r, t) => write!(f, "bipartite:{r},{t}"),
            Star(b) => write!(f, "star:{b}"),
            Wheel(n) => write!(f, "wheel:{n}"),
            Fan(n) => write!(f, "fan:{n}"),
            Grid(r, t) => write!(f, "grid:{r},{t}"),
            CartesianProduct(a, b) => write!(f, "product({a},{b})"),
            Torus(r, t) => write!(f, "torus:{r},{t}"),
            Hypercube(n) => write!(f, "hypercube:{n}"),
            Circulant(n, r) => write!(f, "circulant:{n},{r}"),
            Join(a, b) => write!(f, "join({a},{b})"),
            TreeTrn(r, n) => write!(f, "trn:{r},{n}"),
            FamilyF(a, b, c) => write!(f, "familyF:{a},{b},{c}"),
            GRn(r, n) => write!(f, "grn:{r},{n}"),
            GR(r, n) => write!(f, "gr:{r},{n}"),
            GPrimeRT(r, t) => write!(f, "gprime:{r},{t}"),
            GDoublePrimeRT(r, t) => write!(f, "gdprime:{r},{t}"),
            Realize(r, t, n) => write!(f, "realize:{r},{t},{n}"),
            Figure1 => write!(f, "figure1"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let input = s.trim();
        let mut p = SpecParser {
            src: input.as_bytes(),
            pos: 0,
            input,
        };
        let spec = p.spec()?;
        if p.pos != p.src.len() {
            return Err(p.error("trailing characters"));
        }
        Ok(spec)
    }
}

struct SpecParser<'a> {
    src: &'a [u8],
    pos: usize,
    input: &'a str,
}

impl SpecParser<'_> {
    fn error(&self, msg: &str) -> FamilyError {
        FamilyError::Parse {
            input: self.input.to_string(),
            msg: format!("{msg} at byte {}", self.pos),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), FamilyError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn name(&mut self) -> &str {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_alphanumeric()) {
            self.pos += 1;
        }
        &self.input[start..self.pos]
    }

    fn int(&mut self) -> Result<usize, FamilyError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.input[start..self.pos]
            .parse()
            .map_err(|_| self.error("expected a non-negative integer"))
    }

    fn params(&mut self) -> Result<Vec<usize>, FamilyError> {
        let mut out = Vec::new();
        if self.peek() != Some(b':') {
            return Ok(out);
        }
        self.pos += 1;
        out.push(self.int()?);
        // a comma followed by a digit continues the list; otherwise it
        // separates the operands of an enclosing product/join
        while self.peek() == Some(b',')
            && self.src.get(self.pos + 1).is_some_and(u8::is_ascii_digit)
        {
            self.pos += 1;
            out.push(self.int()?);
        }
        Ok(out)
    }

    fn spec(&mut self) -> Result<FamilySpec, FamilyError> {
        use FamilySpec::*;
        let name = self.name().to_string();
        if name == "product" || name == "join" {
            self.expect(b'(')?;
            let a = Box::new(self.spec()?);
            self.expect(b',')?;
            let b = Box::new(self.spec()?);
            self.expect(b')')?;
            return Ok(if name == "product" {
                CartesianProduct(a, b)
            } else {
                Join(a, b)
            });
        }
        let ps = self.params()?;
        let arity = |k: usize| -> Result<(), FamilyError> {
            if ps.len() == k {
                Ok(())
            } else {
                Err(FamilyError::Parse {
                    input: self.input.to_string(),
                    msg: format!("{name} takes {k} parameter(s), got {}", ps.len()),
                })
            }
        };
        let spec = match name.as_str() {
            "path" => arity(1).map(|_| Path(ps[0])),
            "cycle" => arity(1).map(|_| Cycle(ps[0])),
            "complete" => arity(1).map(|_| Complete(ps[0])),
            "bipartite" => arity(2).map(|_| CompleteBipartite(ps[0], ps[1])),
            "star" => arity(1).map(|_| Star(ps[0])),
            "wheel" => arity(1).map(|_| Wheel(ps[0])),
            "fan" => arity(1).map(|_| Fan(ps[0])),
            "grid" => arity(2).map(|_| Grid(ps[0], ps[1])),
            "torus" => arity(2).map(|_| Torus(ps[0], ps[1])),
            "hypercube" => arity(1).map(|_| Hypercube(ps[0])),
            "circulant" => arity(2).map(|_| Circulant(ps[0], ps[1])),
            "trn" => arity(2).map(|_| TreeTrn(ps[0], ps[1])),
            "familyF" => arity(3).map(|_| FamilyF(ps[0], ps[1], ps[2])),
            "grn" => arity(2).map(|_| GRn(ps[0], ps[1])),
            "gr" => arity(2).map(|_| GR(ps[0], ps[1])),
            "gprime" => arity(2).map(|_| GPrimeRT(ps[0], ps[1])),
            "gdprime" => arity(2).map(|_| GDoublePrimeRT(ps[0], ps[1])),
            "realize" => arity(3).map(|_| Realize(ps[0], ps[1], ps[2])),
            "figure1" => arity(0).map(|_| Figure1),
            "" => Err(self.error("expected a family name")),
            other => Err(self.error(&format!("unknown family {other:?}"))),
        }?;
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{graph_stats, is_edge_metric_generator, DistanceMatrix};

    fn build(s: &str) -> LabeledGraph {
        make_family(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn family_f_is_figure5() {
        let g = build("familyF:3,6,3");
        assert_eq!(g.graph.order(), 17);
        // 3 triangles (9 edges) + 6 star edges + 4 path edges
        assert_eq!(g.graph.size(), 19);
        assert_eq!(g.graph.degree(g.id_of("s").unwrap()), 7);
        assert_eq!(g.graph.degree(g.id_of("g").unwrap()), 7);
    }

    #[test]
    fn family_f_without_path_joins_centers() {
        let g = build("familyF:1,2,0");
        assert_eq!(g.graph.order(), 6);
        assert!(g
            .graph
            .has_edge(g.id_of("g").unwrap(), g.id_of("s").unwrap()));
    }

    #[test]
    fn torus_is_four_regular() {
        let g = build("torus:8,8");
        assert_eq!(g.graph.order(), 64);
        assert!((0..64).all(|v| g.graph.degree(v) == 4));
        assert_eq!(g.label(8 + 3), "(a1,b3)");
    }

    #[test]
    fn figure1_matches_drawing() {
        let g = build("figure1");
        assert_eq!(g.graph.order(), 13);
        assert_eq!(g.graph.size(), 18);
        let e = |a: &str, b: &str| g.graph.has_edge(g.id_of(a).unwrap(), g.id_of(b).unwrap());
        assert!(e("9", "11") && e("10", "12") && e("11", "13") && e("6", "9"));
        assert!(!e("1", "3"));
    }

    #[test]
    fn wheel_and_fan_orders() {
        let w = build("wheel:6");
        assert_eq!((w.graph.order(), w.graph.size()), (7, 12));
        assert_eq!(w.graph.degree(6), 6);
        let f = build("fan:4");
        assert_eq!((f.graph.order(), f.graph.size()), (5, 7));
        assert_eq!(build("fan:1").graph.size(), 1);
    }

    #[test]
    fn grid_manhattan_distances() {
        let g = build("grid:6,5");
        let dm = DistanceMatrix::new(&g.graph);
        let id = |x: usize, y: usize| x * 5 + y;
        assert_eq!(g.label(id(5, 4)), "(5,4)");
        assert_eq!(dm.get(id(0, 0), id(5, 4)), 9);
        for (x1, y1, x2, y2) in [(1usize, 2usize, 4usize, 0usize), (3, 3, 3, 0), (5, 1, 0, 4)] {
            let manhattan = x1.abs_diff(x2) + y1.abs_diff(y2);
            assert_eq!(dm.get(id(x1, y1), id(x2, y2)) as usize, manhattan);
        }
    }

    #[test]
    fn hypercube_and_circulant_regular() {
        let q = build("hypercube:4");
        assert!((0..16).all(|v| q.graph.degree(v) == 4));
        assert_eq!(q.label(0b0001), "1000");
        let c = build("circulant:6,2");
        assert!((0..6).all(|v| c.graph.degree(v) == 4));
        assert_eq!(graph_stats(&c.graph).max_degree, 4);
        let c = build("circulant:6,3");
        assert!((0..6).all(|v| c.graph.degree(v) == 5));
    }

    #[test]
    fn join_and_product() {
        let j = build("join(complete:1,cycle:5)");
        assert_eq!(j.graph.order(), 6);
        assert_eq!(j.graph.size(), 10);
        let p = build("product(path:3,cycle:4)");
        assert_eq!(p.graph.order(), 12);
        assert_eq!(p.graph.size(), 3 * 4 + 2 * 4);
    }

    #[test]
    fn realization_dispatch() {
        use FamilySpec::*;
        assert_eq!(realization_choice(3, 6, 10).unwrap(), GRn(3, 10));
        assert_eq!(realization_choice(4, 7, 10).unwrap(), GR(4, 10));
        assert_eq!(realization_choice(4, 6, 9).unwrap(), GPrimeRT(4, 6));
        assert_eq!(realization_choice(5, 7, 9).unwrap(), GDoublePrimeRT(5, 7));
        assert_eq!(realization_choice(3, 4, 10).unwrap(), FamilyF(2, 2, 2));
        assert_eq!(realization_graph(4, 6, 9).unwrap().graph.order(), 9);
        assert_eq!(realization_graph(3, 6, 10).unwrap().graph.order(), 10);
        assert!(matches!(
            realization_graph(3, 7, 10),
            Err(FamilyError::ParameterOutOfDomain { .. })
        ));
        assert!(realization_graph(4, 8, 9).is_err());
        assert!(realization_graph(1, 2, 9).is_err());
    }

    #[test]
    fn trn_order_and_shape() {
        let t = build("trn:4,10");
        assert_eq!(t.graph.order(), 10);
        assert!(t.graph.is_tree());
        assert_eq!(t.graph.degree(0), 5);
    }

    #[test]
    fn generators_verify() {
        for n in 2..=6 {
            let q = make_family(&FamilySpec::Hypercube(n)).unwrap();
            let gen = hypercube_generator(n).unwrap();
            assert_eq!(gen.len(), n);
            assert!(is_edge_metric_generator(&q.graph, &gen).is_resolving());
        }
        assert_eq!(hypercube_generator(2).unwrap(), vec![0b11, 0b10]);
        let labels: Vec<_> = hypercube_generator(3)
            .unwrap()
            .into_iter()
            .map(|v| make_family(&FamilySpec::Hypercube(3)).unwrap().labels[v].clone())
            .collect();
        assert_eq!(labels, ["111", "011", "101"]);

        let gen = torus_generator(1, 1).unwrap();
        let t = build("torus:4,4");
        let names: Vec<_> = gen.iter().map(|&v| t.label(v)).collect();
        assert_eq!(names, ["(a0,b0)", "(a0,b2)", "(a1,b1)"]);
        for (r, t) in [(1, 1), (1, 2), (2, 2), (2, 1)] {
            let g = make_family(&FamilySpec::Torus(4 * r, 4 * t)).unwrap();
            let gen = torus_generator(r, t).unwrap();
            assert!(
                is_edge_metric_generator(&g.graph, &gen).is_resolving(),
                "{r},{t}"
            );
        }
        assert!(torus_generator(0, 1).is_err());
    }

    #[test]
    fn domain_errors_name_the_constraint() {
        let err = make_family(&FamilySpec::Wheel(2)).unwrap_err();
        assert_eq!(
            err.to_string(),
            "wheel:2: parameter out of domain, requires n >= 3"
        );
        assert!(make_family(&FamilySpec::Grid(2, 3)).is_err());
        assert!(make_family(&FamilySpec::FamilyF(1, 1, 0)).is_err());
        assert!(make_family(&FamilySpec::Circulant(6, 4)).is_err());
        assert!(make_family(&FamilySpec::GPrimeRT(3, 5)).is_err());
        assert!(make_family(&FamilySpec::TreeTrn(3, 4)).is_err());
    }

    #[test]
    fn parse_errors() {
        for bad in [
            "",
            "wheel",
            "wheel:",
            "wheel:6,7",
            "nope:3",
            "product(path:2)",
            "path:3x",
            "figure1:1",
        ] {
            assert!(bad.parse::<FamilySpec>().is_err(), "{bad}");
        }
        assert_eq!(
            "product(grid:3,2,torus:4,4)".parse::<FamilySpec>().unwrap(),
            FamilySpec::CartesianProduct(
                Box::new(FamilySpec::Grid(3, 2)),
                Box::new(FamilySpec::Torus(4, 4))
            )
        );
    }

    #[test]
    fn label_map_roundtrip() {
        let g = build("wheel:4");
        let text = g.label_map_text();
        assert_eq!(LabeledGraph::parse_label_map(&text, 5).unwrap(), g.labels);
        assert!(LabeledGraph::parse_label_map("0 a\n1 a\n", 2).is_err());
        assert!(LabeledGraph::parse_label_map("0 a\n", 2).is_err());
    }
}
