//! 3-SAT to edge metric dimension.
//!
//! Each variable `u_i` gets a 6-vertex truth-setting component `X_i` and each
//! clause `c_j` a 10-vertex satisfaction-testing component `Y_j`. The target
//! is `r = 2m + n`: the instance has an edge metric generator of size `r`
//! exactly when the formula is satisfiable.
//!
//! Vertex ids are arithmetic: `X_i` occupies `6(i-1)..6i` in the order
//! `T, F, a^1, a^2, b^1, b^2`, and `Y_j` occupies `6n + 10(j-1)..` in the
//! order `c^1..c^10`.

use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::families::LabeledGraph;
use crate::graph::{
    all_pairs_distances, check_generator, edge_distance_table, CoverageTable, Graph, GraphError,
    Kind, DEFAULT_MAX_PAIR_ITEMS,
};
use crate::solve::{exact_dimension, SolveError};

pub const MAX_SAT_VARS: usize = 25;
/// Exact search on a reduction instance is attempted only up to this order.
pub const MAX_EXACT_ORDER: usize = 30;
/// The assignment sweep is skipped above this many variables.
pub const MAX_SWEEP_VARS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Literal {
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn from_dimacs(x: i64) -> Self {
        Self {
            var: x.unsigned_abs() as usize,
            positive: x > 0,
        }
    }

    pub fn to_dimacs(self) -> i64 {
        if self.positive {
            self.var as i64
        } else {
            -(self.var as i64)
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "u{}", self.var)
        } else {
            write!(f, "~u{}", self.var)
        }
    }
}

pub type Clause = [Literal; 3];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: clause has {found} literals, expected 3")]
    ClauseArity { line: usize, found: usize },
    #[error("line {line}: variable {var} repeated in clause")]
    RepeatedVariableInClause { line: usize, var: usize },
    #[error("line {line}: variable {var} outside 1..={n}")]
    VariableOutOfRange { line: usize, var: usize, n: usize },
    #[error("formula needs at least one variable and one clause")]
    EmptyFormula,
    #[error("{n} variables exceed the brute-force limit of {MAX_SAT_VARS}")]
    TooManyVariables { n: usize },
    #[error("set has {found} vertices, expected r = {expected}")]
    WrongCardinality { found: usize, expected: usize },
    #[error("set misses every vertex of {component} required to tell apart edges {pair}")]
    ClaimViolation { component: String, pair: String },
    #[error("not an edge metric generator: edges {0} and {1} share a representation")]
    NotAGenerator(usize, usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Clause>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Clause>) -> Result<Self, ReductionError> {
        if num_vars == 0 || clauses.is_empty() {
            return Err(ReductionError::EmptyFormula);
        }
        for (j, c) in clauses.iter().enumerate() {
            validate_clause(c, num_vars, j + 1)?;
        }
        Ok(Self { num_vars, clauses })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn is_satisfied_by(&self, a: &Assignment) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().any(|l| a.value(l.var) == l.positive))
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            for l in c {
                out.push_str(&format!("{} ", l.to_dimacs()));
            }
            out.push_str("0\n");
        }
        out
    }
}

fn validate_clause(c: &[Literal], n: usize, line: usize) -> Result<(), ReductionError> {
    if c.len() != 3 {
        return Err(ReductionError::ClauseArity {
            line,
            found: c.len(),
        });
    }
    for (k, l) in c.iter().enumerate() {
        if l.var == 0 || l.var > n {
            return Err(ReductionError::VariableOutOfRange {
                line,
                var: l.var,
                n,
            });
        }
        if c[..k].iter().any(|o| o.var == l.var) {
            return Err(ReductionError::RepeatedVariableInClause { line, var: l.var });
        }
    }
    Ok(())
}

/// Parses DIMACS CNF. Clauses may span lines; each ends with `0`.
pub fn parse_cnf(text: &str) -> Result<CnfFormula, ReductionError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    let mut clause_line = 0;
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        if trimmed.starts_with('%') {
            break;
        }
        if trimmed.starts_with('p') {
            if header.is_some() {
                return Err(parse_err(line, "duplicate header"));
            }
            let parts: Vec<&str> = trimmed.split_whitespace().collect();
            if parts.len() != 4 || parts[0] != "p" || parts[1] != "cnf" {
                return Err(parse_err(line, "header must read `p cnf <vars> <clauses>`"));
            }
            let n = parts[2]
                .parse()
                .map_err(|_| parse_err(line, "bad variable count"))?;
            let m = parts[3]
                .parse()
                .map_err(|_| parse_err(line, "bad clause count"))?;
            header = Some((n, m));
            continue;
        }
        let Some((n, _)) = header else {
            return Err(parse_err(line, "clause before `p cnf` header"));
        };
        for tok in trimmed.split_whitespace() {
            let x: i64 = tok
                .parse()
                .map_err(|_| parse_err(line, &format!("bad literal `{tok}`")))?;
            if current.is_empty() {
                clause_line = line;
            }
            if x == 0 {
                validate_clause(&current, n, clause_line)?;
                clauses.push([current[0], current[1], current[2]]);
                current.clear();
            } else {
                current.push(Literal::from_dimacs(x));
            }
        }
    }
    let Some((n, m)) = header else {
        return Err(parse_err(last_line.max(1), "missing `p cnf` header"));
    };
    if !current.is_empty() {
        return Err(parse_err(clause_line, "clause not terminated by 0"));
    }
    if clauses.len() != m {
        return Err(parse_err(
            last_line.max(1),
            &format!("header declares {m} clauses, found {}", clauses.len()),
        ));
    }
    CnfFormula::new(n, clauses)
}

fn parse_err(line: usize, msg: &str) -> ReductionError {
    ReductionError::Parse {
        line,
        msg: msg.to_string(),
    }
}

/// Truth values for `u_1..u_n`; index 0 holds `u_1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Assignment {
    values: Vec<bool>,
}

impl Assignment {
    pub fn new(values: Vec<bool>) -> Self {
        Self { values }
    }

    /// Bit `i-1` of `bits` is the value of `u_i`.
    pub fn from_bits(bits: u64, n: usize) -> Self {
        Self {
            values: (0..n).map(|i| bits >> i & 1 == 1).collect(),
        }
    }

    pub fn value(&self, var: usize) -> bool {
        self.values[var - 1]
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    T(usize),
    F(usize),
    A1(usize),
    A2(usize),
    B1(usize),
    B2(usize),
    /// `C(j, k)` is `c_j^k`, `k` in `1..=10`.
    C(usize, usize),
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Role::T(i) => write!(f, "T_{i}"),
            Role::F(i) => write!(f, "F_{i}"),
            Role::A1(i) => write!(f, "a_{i}^1"),
            Role::A2(i) => write!(f, "a_{i}^2"),
            Role::B1(i) => write!(f, "b_{i}^1"),
            Role::B2(i) => write!(f, "b_{i}^2"),
            Role::C(j, k) => write!(f, "c_{j}^{k}"),
        }
    }
}

impl Serialize for Role {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

const X_EDGES: [(usize, usize); 6] = [(0, 2), (0, 3), (4, 2), (5, 3), (1, 4), (1, 5)];
// offsets into c^1..c^10 (0-based)
const Y_EDGES: [(usize, usize); 10] = [
    (0, 1),
    (0, 2),
    (3, 1),
    (3, 2),
    (1, 4),
    (4, 5),
    (4, 6),
    (2, 7),
    (7, 8),
    (7, 9),
];

#[derive(Debug, Clone)]
pub struct ReductionInstance {
    pub formula: CnfFormula,
    pub graph: LabeledGraph,
    pub r: usize,
    pub roles: Vec<Role>,
}

impl ReductionInstance {
    pub fn n(&self) -> usize {
        self.formula.num_vars()
    }

    pub fn m(&self) -> usize {
        self.formula.num_clauses()
    }

    pub fn id(&self, role: Role) -> usize {
        role_id(self.n(), role)
    }

    pub fn role(&self, v: usize) -> Role {
        self.roles[v]
    }
}

fn role_id(n: usize, role: Role) -> usize {
    match role {
        Role::T(i) => 6 * (i - 1),
        Role::F(i) => 6 * (i - 1) + 1,
        Role::A1(i) => 6 * (i - 1) + 2,
        Role::A2(i) => 6 * (i - 1) + 3,
        Role::B1(i) => 6 * (i - 1) + 4,
        Role::B2(i) => 6 * (i - 1) + 5,
        Role::C(j, k) => 6 * n + 10 * (j - 1) + k - 1,
    }
}

/// Edge order: the `X_i` edges, the `Y_j` edges, then per clause the
/// communication edges, then neutralizing edges, then correcting edges.
pub fn build_reduction(f: &CnfFormula) -> ReductionInstance {
    let (n, m) = (f.num_vars(), f.num_clauses());
    let mut roles = Vec::with_capacity(6 * n + 10 * m);
    for i in 1..=n {
        roles.extend([
            Role::T(i),
            Role::F(i),
            Role::A1(i),
            Role::A2(i),
            Role::B1(i),
            Role::B2(i),
        ]);
    }
    for j in 1..=m {
        roles.extend((1..=10).map(|k| Role::C(j, k)));
    }
    let id = |role| role_id(n, role);
    let mut edges = Vec::new();
    for i in 0..n {
        edges.extend(X_EDGES.iter().map(|&(a, b)| (6 * i + a, 6 * i + b)));
    }
    for j in 0..m {
        let base = 6 * n + 10 * j;
        edges.extend(Y_EDGES.iter().map(|&(a, b)| (base + a, base + b)));
    }
    for (j, clause) in f.clauses().iter().enumerate() {
        let j = j + 1;
        for l in clause {
            let (to_t, to_f) = if l.positive { (1, 2) } else { (2, 1) };
            edges.push((id(Role::T(l.var)), id(Role::C(j, to_t))));
            edges.push((id(Role::F(l.var)), id(Role::C(j, to_f))));
        }
    }
    for (j, clause) in f.clauses().iter().enumerate() {
        for k in 1..=n {
            if clause.iter().all(|l| l.var != k) {
                edges.push((id(Role::T(k)), id(Role::C(j + 1, 2))));
            }
        }
    }
    for j in 1..=m {
        for k in j + 1..=m {
            edges.push((id(Role::C(j, 2)), id(Role::C(k, 2))));
        }
    }
    let graph = Graph::new(roles.len(), &edges).expect("reduction graph is simple and connected");
    let labels = roles.iter().map(Role::to_string).collect();
    ReductionInstance {
        formula: f.clone(),
        graph: LabeledGraph::new(graph, labels),
        r: 2 * m + n,
        roles,
    }
}

/// `{c_j^6, c_j^9}` for every clause plus `a_i^1` (TRUE) or `b_i^1` (FALSE).
pub fn generator_from_assignment(inst: &ReductionInstance, a: &Assignment) -> Vec<usize> {
    let mut s = Vec::with_capacity(inst.r);
    for i in 1..=inst.n() {
        s.push(inst.id(if a.value(i) { Role::A1(i) } else { Role::B1(i) }));
    }
    for j in 1..=inst.m() {
        s.push(inst.id(Role::C(j, 6)));
        s.push(inst.id(Role::C(j, 9)));
    }
    s.sort_unstable();
    s
}

pub type RoleEdge = (Role, Role);

/// The edge pairs whose distinguishing sets force the lower bound, with
/// the component they belong to.
pub fn claim_pairs(inst: &ReductionInstance) -> Vec<(String, RoleEdge, RoleEdge)> {
    let mut out = Vec::new();
    for i in 1..=inst.n() {
        out.push((
            format!("X_{i}"),
            (Role::T(i), Role::A1(i)),
            (Role::T(i), Role::A2(i)),
        ));
    }
    for j in 1..=inst.m() {
        out.push((
            format!("Y_{j} (c^6, c^7)"),
            (Role::C(j, 5), Role::C(j, 6)),
            (Role::C(j, 5), Role::C(j, 7)),
        ));
        out.push((
            format!("Y_{j} (c^9, c^10)"),
            (Role::C(j, 8), Role::C(j, 9)),
            (Role::C(j, 8), Role::C(j, 10)),
        ));
    }
    out
}

/// The vertex set that any generator must meet for each claim pair.
fn required_sets(inst: &ReductionInstance) -> Vec<(String, Vec<usize>)> {
    let mut out = Vec::new();
    for i in 1..=inst.n() {
        let ids = [Role::A1(i), Role::A2(i), Role::B1(i), Role::B2(i)].map(|r| inst.id(r));
        out.push((format!("X_{i}"), ids.to_vec()));
    }
    for j in 1..=inst.m() {
        out.push((
            format!("Y_{j}"),
            vec![inst.id(Role::C(j, 6)), inst.id(Role::C(j, 7))],
        ));
        out.push((
            format!("Y_{j}"),
            vec![inst.id(Role::C(j, 9)), inst.id(Role::C(j, 10))],
        ));
    }
    out
}

pub fn assignment_from_generator(
    inst: &ReductionInstance,
    set: &[usize],
) -> Result<Assignment, ReductionError> {
    let mut s = set.to_vec();
    s.sort_unstable();
    s.dedup();
    if s.len() != inst.r {
        return Err(ReductionError::WrongCardinality {
            found: s.len(),
            expected: inst.r,
        });
    }
    let pairs = claim_pairs(inst);
    for ((component, required), (_, e1, e2)) in required_sets(inst).into_iter().zip(pairs) {
        if !required.iter().any(|v| s.binary_search(v).is_ok()) {
            return Err(ReductionError::ClaimViolation {
                component,
                pair: format!("{}{} and {}{}", e1.0, e1.1, e2.0, e2.1),
            });
        }
    }
    if let Some((a, b)) = check_generator(&inst.graph.graph, Kind::Edge, &s).witness() {
        return Err(ReductionError::NotAGenerator(a, b));
    }
    let values = (1..=inst.n())
        .map(|i| {
            let a = [inst.id(Role::A1(i)), inst.id(Role::A2(i))];
            a.iter().any(|v| s.binary_search(v).is_ok())
        })
        .collect();
    Ok(Assignment::new(values))
}

/// First satisfying assignment in counting order (variable 1 is the lowest
/// bit), if any.
pub fn brute_force_sat(f: &CnfFormula) -> Result<Option<Assignment>, ReductionError> {
    let n = f.num_vars();
    if n > MAX_SAT_VARS {
        return Err(ReductionError::TooManyVariables { n });
    }
    Ok((0..1u64 << n)
        .map(|bits| Assignment::from_bits(bits, n))
        .find(|a| f.is_satisfied_by(a)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimCheck {
    pub component: String,
    pub edges: (String, String),
    /// Vertices whose distances to the two edges differ, computed on the graph.
    pub distinguishers: Vec<usize>,
    /// `distinguishers` equals the vertex set the claim names.
    pub matches_claim: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimsCertificate {
    pub checks: Vec<ClaimCheck>,
    pub pairwise_disjoint: bool,
    /// Number of disjoint sets every generator must meet.
    pub lower_bound: usize,
}

impl ClaimsCertificate {
    pub fn holds(&self) -> bool {
        self.pairwise_disjoint && self.checks.iter().all(|c| c.matches_claim)
    }
}

pub fn claims_lower_bound(inst: &ReductionInstance) -> ClaimsCertificate {
    let g = &inst.graph.graph;
    let dm = all_pairs_distances(g);
    let edt = edge_distance_table(g, &dm);
    let mut checks = Vec::new();
    let mut owner = vec![usize::MAX; g.order()];
    let mut disjoint = true;
    for (idx, ((component, e1, e2), (_, claimed))) in claim_pairs(inst)
        .into_iter()
        .zip(required_sets(inst))
        .enumerate()
    {
        let id1 = g.edge_id(inst.id(e1.0), inst.id(e1.1)).expect("claim edge");
        let id2 = g.edge_id(inst.id(e2.0), inst.id(e2.1)).expect("claim edge");
        let distinguishers: Vec<usize> = (0..g.order())
            .filter(|&w| edt.get(id1, w) != edt.get(id2, w))
            .collect();
        for &w in &distinguishers {
            if owner[w] != usize::MAX {
                disjoint = false;
            }
            owner[w] = idx;
        }
        let mut claimed = claimed;
        claimed.sort_unstable();
        checks.push(ClaimCheck {
            component,
            edges: (format!("{}{}", e1.0, e1.1), format!("{}{}", e2.0, e2.1)),
            matches_claim: distinguishers == claimed,
            distinguishers,
        });
    }
    let lower_bound = if disjoint && checks.iter().all(|c| !c.distinguishers.is_empty()) {
        checks.len()
    } else {
        0
    };
    ClaimsCertificate {
        checks,
        pairwise_disjoint: disjoint,
        lower_bound,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ExactCheck {
    NotRun { reason: String },
    Solved { edim: usize, witness: Vec<usize> },
    OutOfBudget { lower_bound: usize, explored: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssignmentSweep {
    pub assignments: u64,
    pub satisfying: u64,
    /// Assignment-derived sets that are edge metric generators.
    pub verifying: u64,
    /// Every set verifies exactly when its assignment satisfies the formula.
    pub agrees_with_satisfaction: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionReport {
    pub n: usize,
    pub m: usize,
    pub order: usize,
    pub size: usize,
    pub r: usize,
    pub claims: ClaimsCertificate,
    pub satisfying_assignment: Option<Assignment>,
    pub generator: Option<Vec<usize>>,
    pub generator_verifies: Option<bool>,
    pub round_trip: Option<Assignment>,
    pub round_trip_satisfies: Option<bool>,
    pub sweep: Option<AssignmentSweep>,
    pub exact: ExactCheck,
    /// `Some(r)` when the claims bound and a verified generator meet.
    pub certified_edim: Option<usize>,
}

pub fn verify_reduction(
    f: &CnfFormula,
    exact_budget: Option<u64>,
) -> Result<ReductionReport, ReductionError> {
    let inst = build_reduction(f);
    let g = &inst.graph.graph;
    let claims = claims_lower_bound(&inst);
    let sat = brute_force_sat(f)?;
    let (generator, generator_verifies, round_trip, round_trip_satisfies) = match &sat {
        Some(a) => {
            let s = generator_from_assignment(&inst, a);
            let ok = check_generator(g, Kind::Edge, &s).is_resolving();
            let back = assignment_from_generator(&inst, &s).ok();
            let back_ok = back.as_ref().map(|b| f.is_satisfied_by(b));
            (Some(s), Some(ok), back, Some(back_ok.unwrap_or(false)))
        }
        None => (None, None, None, None),
    };
    let sweep = if f.num_vars() <= MAX_SWEEP_VARS {
        Some(assignment_sweep(&inst)?)
    } else {
        None
    };
    let exact = if g.order() > MAX_EXACT_ORDER {
        ExactCheck::NotRun {
            reason: format!(
                "instance order {} exceeds the exact-search limit of {MAX_EXACT_ORDER}",
                g.order()
            ),
        }
    } else {
        match exact_dimension(g, Kind::Edge, exact_budget) {
            Ok(res) => ExactCheck::Solved {
                edim: res.value,
                witness: res.witness().to_vec(),
            },
            Err(SolveError::BudgetExceeded {
                lower_bound,
                explored,
                ..
            }) => ExactCheck::OutOfBudget {
                lower_bound,
                explored,
            },
            Err(e) => return Err(e.into()),
        }
    };
    let certified_edim =
        (claims.holds() && claims.lower_bound == inst.r && generator_verifies == Some(true))
            .then_some(inst.r);
    Ok(ReductionReport {
        n: inst.n(),
        m: inst.m(),
        order: g.order(),
        size: g.size(),
        r: inst.r,
        claims,
        satisfying_assignment: sat,
        generator,
        generator_verifies,
        round_trip,
        round_trip_satisfies,
        sweep,
        exact,
        certified_edim,
    })
}

/// Checks the generator of every assignment, in parallel over disjoint
/// assignment ranges.
pub fn assignment_sweep(inst: &ReductionInstance) -> Result<AssignmentSweep, ReductionError> {
    let n = inst.n();
    let table = CoverageTable::build(&inst.graph.graph, Kind::Edge, DEFAULT_MAX_PAIR_ITEMS)?;
    let (satisfying, verifying, agree) = (0..1u64 << n)
        .into_par_iter()
        .map(|bits| {
            let a = Assignment::from_bits(bits, n);
            let sat = inst.formula.is_satisfied_by(&a);
            let ok = table.covers(&generator_from_assignment(inst, &a));
            (sat as u64, ok as u64, sat == ok)
        })
        .reduce(|| (0, 0, true), |x, y| (x.0 + y.0, x.1 + y.1, x.2 && y.2));
    Ok(AssignmentSweep {
        assignments: 1 << n,
        satisfying,
        verifying,
        agrees_with_satisfaction: agree,
    })
}

/// Three variables, all eight sign patterns: unsatisfiable, order 98.
pub fn all_sign_patterns_formula() -> CnfFormula {
    let clauses = (0..8u8)
        .map(|p| {
            [1, 2, 3].map(|v| Literal {
                var: v,
                positive: p >> (v - 1) & 1 == 0,
            })
        })
        .collect();
    CnfFormula::new(3, clauses).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{all_pairs_distances, is_edge_metric_generator};

    fn fig11() -> CnfFormula {
        parse_cnf("p cnf 3 1\n1 -2 3 0\n").unwrap()
    }

    #[test]
    fn parse_examples() {
        let f = fig11();
        assert_eq!((f.num_vars(), f.num_clauses()), (3, 1));
        assert_eq!(f.clauses()[0].map(|l| l.to_dimacs()), [1, -2, 3]);
        let f = parse_cnf("c comment\np cnf 4 2\n1 2\n 3 0 -1 -2 -4 0\n").unwrap();
        assert_eq!(f.num_clauses(), 2);
        assert_eq!(parse_cnf(&f.to_dimacs()).unwrap(), f);
    }

    #[test]
    fn parse_errors() {
        let e = |s: &str| parse_cnf(s).unwrap_err();
        assert_eq!(
            e("p cnf 3 1\n1 1 2 0\n"),
            ReductionError::RepeatedVariableInClause { line: 2, var: 1 }
        );
        assert_eq!(e("p cnf 3 0\n"), ReductionError::EmptyFormula);
        assert_eq!(
            e("p cnf 3 1\n1 2 0\n"),
            ReductionError::ClauseArity { line: 2, found: 2 }
        );
        assert!(matches!(
            e("p cnf 3 1\n1 2 4 0\n"),
            ReductionError::VariableOutOfRange { .. }
        ));
        assert!(matches!(
            e("1 2 3 0\n"),
            ReductionError::Parse { line: 1, .. }
        ));
        assert!(matches!(
            e("p cnf 3 1\n1 x 3 0\n"),
            ReductionError::Parse { line: 2, .. }
        ));
        assert!(matches!(
            e("p cnf 3 2\n1 2 3 0\n"),
            ReductionError::Parse { .. }
        ));
        assert!(matches!(
            e("p cnf 3 1\n1 2 3\n"),
            ReductionError::Parse { line: 2, .. }
        ));
    }

    #[test]
    fn single_clause_instance() {
        let inst = build_reduction(&fig11());
        let g = &inst.graph.graph;
        assert_eq!((g.order(), g.size(), inst.r), (28, 34, 5));
        assert_eq!(inst.graph.label(inst.id(Role::C(1, 6))), "c_1^6");
        assert_eq!(inst.id(Role::C(1, 1)), 18);
        // u2 occurs negated: T_2 c^2 and F_2 c^1
        assert!(g.has_edge(inst.id(Role::T(2)), inst.id(Role::C(1, 2))));
        assert!(g.has_edge(inst.id(Role::F(2)), inst.id(Role::C(1, 1))));
        assert!(g.has_edge(inst.id(Role::T(1)), inst.id(Role::C(1, 1))));
        assert!(g.has_edge(inst.id(Role::F(1)), inst.id(Role::C(1, 2))));
    }

    #[test]
    fn two_clauses_get_neutralizing_and_correcting_edges() {
        let f = parse_cnf("p cnf 4 2\n1 2 3 0\n-2 3 4 0\n").unwrap();
        let inst = build_reduction(&f);
        let g = &inst.graph.graph;
        assert_eq!(inst.r, 8);
        assert!(g.has_edge(inst.id(Role::C(1, 2)), inst.id(Role::C(2, 2))));
        assert!(g.has_edge(inst.id(Role::T(4)), inst.id(Role::C(1, 2))));
        assert!(g.has_edge(inst.id(Role::T(1)), inst.id(Role::C(2, 2))));
        assert!(!g.has_edge(inst.id(Role::T(1)), inst.id(Role::C(1, 2))));
        // 24 + 20 + 12 communication + 2 neutralizing + 1 correcting
        assert_eq!(g.size(), 59);
    }

    #[test]
    fn generator_from_all_true() {
        let inst = build_reduction(&fig11());
        let a = Assignment::new(vec![true, true, true]);
        let s = generator_from_assignment(&inst, &a);
        let want: Vec<usize> = [
            Role::A1(1),
            Role::A1(2),
            Role::A1(3),
            Role::C(1, 6),
            Role::C(1, 9),
        ]
        .map(|r| inst.id(r))
        .to_vec();
        assert_eq!(s, want);
        assert!(is_edge_metric_generator(&inst.graph.graph, &s).is_resolving());
        assert_eq!(assignment_from_generator(&inst, &s).unwrap(), a);
    }

    #[test]
    fn non_satisfying_assignment_fails() {
        // only u1=F, u2=T, u3=F falsifies the clause
        let inst = build_reduction(&fig11());
        let a = Assignment::new(vec![false, true, false]);
        let s = generator_from_assignment(&inst, &a);
        let w = is_edge_metric_generator(&inst.graph.graph, &s)
            .witness()
            .unwrap();
        let g = &inst.graph.graph;
        let c = |k| inst.id(Role::C(1, k));
        let e1 = g.edge_id(c(1), c(2)).unwrap();
        let e2 = g.edge_id(c(1), c(3)).unwrap();
        let e3 = g.edge_id(c(2), c(4)).unwrap();
        let hits = [e1, e2, e3];
        assert!(hits.contains(&w.0) || hits.contains(&w.1), "{w:?}");
        assert_eq!(
            assignment_from_generator(&inst, &s),
            Err(ReductionError::NotAGenerator(w.0, w.1))
        );
    }

    #[test]
    fn translation_errors() {
        let inst = build_reduction(&fig11());
        let a = Assignment::new(vec![true, true, true]);
        let s = generator_from_assignment(&inst, &a);
        assert_eq!(
            assignment_from_generator(&inst, &s[..4]),
            Err(ReductionError::WrongCardinality {
                found: 4,
                expected: 5
            })
        );
        let mut bad = s.clone();
        bad.retain(|&v| v != inst.id(Role::A1(2)));
        bad.push(inst.id(Role::T(2)));
        assert!(matches!(
            assignment_from_generator(&inst, &bad),
            Err(ReductionError::ClaimViolation { ref component, .. }) if component == "X_2"
        ));
    }

    #[test]
    fn claims_certificate() {
        let f = parse_cnf("p cnf 4 2\n1 2 3 0\n-2 3 4 0\n").unwrap();
        let inst = build_reduction(&f);
        let c = claims_lower_bound(&inst);
        assert!(c.holds(), "{c:?}");
        assert_eq!(c.lower_bound, inst.r);
    }

    #[test]
    fn proof_distance_facts() {
        // u1 TRUE and positive in c_1
        let inst = build_reduction(&fig11());
        let g = &inst.graph.graph;
        let dm = all_pairs_distances(g);
        let a = inst.id(Role::A1(1));
        let c = |k| inst.id(Role::C(1, k));
        let d = |x: usize, y: usize| dm.get(a, x).min(dm.get(a, y));
        assert_eq!(d(c(1), c(2)), 2);
        assert_eq!(d(c(2), c(4)), 3);
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(
            brute_force_sat(&fig11()).unwrap(),
            Some(Assignment::new(vec![false, false, false]))
        );
        let f = parse_cnf("p cnf 3 2\n1 2 3 0\n-1 -2 -3 0\n").unwrap();
        assert!(brute_force_sat(&f).unwrap().is_some());
        assert_eq!(brute_force_sat(&all_sign_patterns_formula()).unwrap(), None);
    }

    #[test]
    fn verify_single_clause() {
        let rep = verify_reduction(&fig11(), None).unwrap();
        assert_eq!(rep.certified_edim, Some(5));
        assert_eq!(rep.round_trip_satisfies, Some(true));
        assert!(matches!(rep.exact, ExactCheck::Solved { edim: 5, .. }));
        let sweep = rep.sweep.unwrap();
        assert_eq!((sweep.satisfying, sweep.verifying), (7, 7));
    }

    #[test]
    fn verify_unsat() {
        let rep = verify_reduction(&all_sign_patterns_formula(), None).unwrap();
        assert_eq!(rep.order, 98);
        assert_eq!(rep.certified_edim, None);
        assert_eq!(rep.claims.lower_bound, rep.r);
        let sweep = rep.sweep.unwrap();
        assert_eq!((sweep.assignments, sweep.verifying), (8, 0));
        assert!(matches!(rep.exact, ExactCheck::NotRun { .. }));
    }
}
