//! The 3-SAT to 3-COLORING reduction and its cross checks.
//!
//! A formula with `n` variables and `m` clauses maps to a graph on
//! `2n + 6m + 3` vertices: a base triangle `T, F, B`, a literal pair
//! `x{j}, nx{j}` per variable forming a triangle with `B`, and a
//! six-vertex gadget per clause. Gadget wiring: `a{i}, b{i}, c{i}` are
//! adjacent to `T` and to the clause's three literals in order, chain
//! edges `a-d`, `b-e`, `c-f`, and the 5-cycle `T, d{i}, e{i}, f{i}, F`.
//! The formula is satisfiable exactly when the graph is 3-colorable.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complexmat::inner;
use crate::graph::{self, Coloring, Graph, GraphError};
use crate::ortho::{verify_orthorep, OrthogonalRepresentation};

/// Entries at or below this modulus are treated as exact zeros when
/// snapping rotated literal vectors to basis vectors.
pub const SNAP_ZERO: f64 = 1e-7;
/// Entries between [`SNAP_ZERO`] and this bound are ambiguous and rejected.
pub const SNAP_AMBIGUOUS: f64 = 1e-4;

#[derive(Debug, Error)]
pub enum SatError {
    #[error("malformed DIMACS header: {0}")]
    BadHeader(String),
    #[error("clause {0} has more than 3 literals")]
    ClauseTooLong(usize),
    #[error("clause {0} is empty")]
    EmptyClause(usize),
    #[error("literal {0} out of range for {1} variables")]
    VariableOutOfRange(i32, usize),
    #[error("formula has {0} variables, exhaustive search limit is 25")]
    TooManyVariables(usize),
    #[error("search budget exceeded")]
    BudgetExceeded,
    #[error("assignment does not satisfy clause {0}")]
    UnsatisfyingAssignment(usize),
    #[error("coloring is not a proper 3-coloring")]
    ImproperColoring,
    #[error("representation failed verification")]
    InvalidRepresentation,
    #[error("entry with modulus {0:.3e} is inside the ambiguity band")]
    SnapAmbiguous(f64),
    #[error("graph error: {0}")]
    Graph(#[from] GraphError),
    #[error("parse error: {0}")]
    Parse(String),
}

/// A 3-CNF formula: exactly three literals per clause (duplicates allowed).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    pub num_vars: usize,
    pub clauses: Vec<[i32; 3]>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<[i32; 3]>) -> Result<Self, SatError> {
        for clause in &clauses {
            for &lit in clause {
                if lit == 0 || lit.unsigned_abs() as usize > num_vars {
                    return Err(SatError::VariableOutOfRange(lit, num_vars));
                }
            }
        }
        Ok(CnfFormula { num_vars, clauses })
    }

    pub fn evaluate(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|clause| {
            clause.iter().any(|&lit| {
                let v = lit.unsigned_abs() as usize - 1;
                if lit > 0 {
                    assignment[v]
                } else {
                    !assignment[v]
                }
            })
        })
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "p cnf {} {}", self.num_vars, self.clauses.len());
        for clause in &self.clauses {
            let _ = writeln!(out, "{} {} {} 0", clause[0], clause[1], clause[2]);
        }
        out
    }
}

/// Parses DIMACS CNF. Clauses with one or two literals are padded by
/// repeating the last literal; clauses with more than three are rejected.
pub fn parse_dimacs_cnf(text: &str) -> Result<CnfFormula, SatError> {
    let mut num_vars: Option<usize> = None;
    let mut clauses: Vec<[i32; 3]> = Vec::new();
    let mut current: Vec<i32> = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('p') {
            let mut parts = rest.split_whitespace();
            if parts.next() != Some("cnf") {
                return Err(SatError::BadHeader(line.to_string()));
            }
            let n: usize = parts
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| SatError::BadHeader(line.to_string()))?;
            let _declared_clauses: usize = parts
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| SatError::BadHeader(line.to_string()))?;
            num_vars = Some(n);
            continue;
        }
        let n = num_vars.ok_or_else(|| SatError::BadHeader("missing p cnf line".into()))?;
        for tok in line.split_whitespace() {
            let lit: i32 = tok
                .parse()
                .map_err(|_| SatError::Parse(format!("bad literal `{tok}`")))?;
            if lit == 0 {
                let idx = clauses.len();
                if current.is_empty() {
                    return Err(SatError::EmptyClause(idx));
                }
                if current.len() > 3 {
                    return Err(SatError::ClauseTooLong(idx));
                }
                while current.len() < 3 {
                    current.push(*current.last().unwrap());
                }
                clauses.push([current[0], current[1], current[2]]);
                current.clear();
            } else {
                if lit.unsigned_abs() as usize > n {
                    return Err(SatError::VariableOutOfRange(lit, n));
                }
                current.push(lit);
            }
        }
    }
    if !current.is_empty() {
        return Err(SatError::Parse("unterminated clause".into()));
    }
    let n = num_vars.ok_or_else(|| SatError::BadHeader("missing p cnf line".into()))?;
    CnfFormula::new(n, clauses)
}

// ---------------------------------------------------------------------------
// Reduction graph
// ---------------------------------------------------------------------------

/// The reduction graph together with its role metadata.
#[derive(Debug, Clone)]
pub struct ReductionGraph {
    pub graph: Graph,
    pub formula: CnfFormula,
    pub t: usize,
    pub f: usize,
    pub b: usize,
    /// Vertex of `x{j}` per variable (0-indexed by variable).
    pub pos_literal: Vec<usize>,
    /// Vertex of `nx{j}` per variable.
    pub neg_literal: Vec<usize>,
    /// Gadget vertices `[a, b, c, d, e, f]` per clause.
    pub gadgets: Vec<[usize; 6]>,
}

impl ReductionGraph {
    pub fn literal_vertex(&self, lit: i32) -> usize {
        let v = lit.unsigned_abs() as usize - 1;
        if lit > 0 {
            self.pos_literal[v]
        } else {
            self.neg_literal[v]
        }
    }

    /// Checks every structural invariant of the reduction.
    pub fn verify_roles(&self) -> bool {
        let g = &self.graph;
        let n = self.formula.num_vars;
        let m = self.formula.clauses.len();
        if g.vertex_count() != 2 * n + 6 * m + 3 {
            return false;
        }
        let tri = |a: usize, b: usize, c: usize| {
            g.are_adjacent(a, b) && g.are_adjacent(b, c) && g.are_adjacent(a, c)
        };
        if !tri(self.t, self.f, self.b) {
            return false;
        }
        for j in 0..n {
            if !tri(self.pos_literal[j], self.neg_literal[j], self.b) {
                return false;
            }
        }
        for (i, clause) in self.formula.clauses.iter().enumerate() {
            let [a, bb, c, d, e, f] = self.gadgets[i];
            for (slot, &lit) in [a, bb, c].iter().zip(clause.iter()) {
                if !g.are_adjacent(*slot, self.t) {
                    return false;
                }
                if !g.are_adjacent(*slot, self.literal_vertex(lit)) {
                    return false;
                }
            }
            if !(g.are_adjacent(a, d) && g.are_adjacent(bb, e) && g.are_adjacent(c, f)) {
                return false;
            }
            // 5-cycle T, d, e, f, F.
            if !(g.are_adjacent(self.t, d)
                && g.are_adjacent(d, e)
                && g.are_adjacent(e, f)
                && g.are_adjacent(f, self.f)
                && g.are_adjacent(self.f, self.t))
            {
                return false;
            }
        }
        true
    }
}

/// Builds the reduction graph of a formula with deterministic vertex
/// naming `T, F, B, x{j}, nx{j}, a{i}..f{i}` (1-indexed).
pub fn reduce_to_coloring(formula: &CnfFormula) -> Result<ReductionGraph, SatError> {
    let n = formula.num_vars;
    let m = formula.clauses.len();
    let mut labels: Vec<String> = vec!["T".into(), "F".into(), "B".into()];
    let (t, f, b) = (0, 1, 2);
    let mut pos_literal = Vec::with_capacity(n);
    let mut neg_literal = Vec::with_capacity(n);
    for j in 1..=n {
        pos_literal.push(labels.len());
        labels.push(format!("x{j}"));
        neg_literal.push(labels.len());
        labels.push(format!("nx{j}"));
    }
    let mut gadgets = Vec::with_capacity(m);
    for i in 1..=m {
        let base = labels.len();
        for name in ["a", "b", "c", "d", "e", "f"] {
            labels.push(format!("{name}{i}"));
        }
        gadgets.push([base, base + 1, base + 2, base + 3, base + 4, base + 5]);
    }

    let mut edges: Vec<(usize, usize)> = vec![(t, f), (t, b), (f, b)];
    for j in 0..n {
        edges.push((pos_literal[j], neg_literal[j]));
        edges.push((pos_literal[j], b));
        edges.push((neg_literal[j], b));
    }
    for (i, clause) in formula.clauses.iter().enumerate() {
        let [a, bb, c, d, e, ff] = gadgets[i];
        let lit = |l: i32| {
            let v = l.unsigned_abs() as usize - 1;
            if l > 0 {
                pos_literal[v]
            } else {
                neg_literal[v]
            }
        };
        edges.push((a, lit(clause[0])));
        edges.push((bb, lit(clause[1])));
        edges.push((c, lit(clause[2])));
        edges.push((a, t));
        edges.push((bb, t));
        edges.push((c, t));
        edges.push((a, d));
        edges.push((bb, e));
        edges.push((c, ff));
        edges.push((t, d));
        edges.push((d, e));
        edges.push((e, ff));
        edges.push((ff, f));
    }
    let graph = Graph::from_index_edges(labels, &edges)?;
    let rg = ReductionGraph {
        graph,
        formula: formula.clone(),
        t,
        f,
        b,
        pos_literal,
        neg_literal,
        gadgets,
    };
    assert!(rg.verify_roles(), "reduction graph violates its invariants");
    Ok(rg)
}

// ---------------------------------------------------------------------------
// Exact satisfiability
// ---------------------------------------------------------------------------

/// Exhaustive satisfiability by DPLL with unit propagation. Returns a
/// satisfying assignment or `None` when the formula is proven
/// unsatisfiable.
pub fn brute_force_sat(formula: &CnfFormula) -> Result<Option<Vec<bool>>, SatError> {
    if formula.num_vars > 25 {
        return Err(SatError::TooManyVariables(formula.num_vars));
    }
    let mut assignment: Vec<Option<bool>> = vec![None; formula.num_vars];
    let mut nodes: u64 = 0;
    if dpll(formula, &mut assignment, &mut nodes)? {
        Ok(Some(
            assignment.into_iter().map(|x| x.unwrap_or(false)).collect(),
        ))
    } else {
        Ok(None)
    }
}

fn dpll(
    formula: &CnfFormula,
    assignment: &mut Vec<Option<bool>>,
    nodes: &mut u64,
) -> Result<bool, SatError> {
    *nodes += 1;
    if *nodes > 500_000_000 {
        return Err(SatError::BudgetExceeded);
    }
    // Unit propagation.
    let mut trail: Vec<usize> = Vec::new();
    loop {
        let mut changed = false;
        for clause in &formula.clauses {
            let mut satisfied = false;
            let mut unassigned: Option<i32> = None;
            let mut distinct_unassigned = 0;
            for &lit in clause {
                let v = lit.unsigned_abs() as usize - 1;
                match assignment[v] {
                    Some(val) => {
                        if val == (lit > 0) {
                            satisfied = true;
                            break;
                        }
                    }
                    None => {
                        if unassigned != Some(lit) {
                            distinct_unassigned += 1;
                        }
                        unassigned = Some(lit);
                    }
                }
            }
            if satisfied {
                continue;
            }
            match (unassigned, distinct_unassigned) {
                (None, _) => {
                    for v in trail {
                        assignment[v] = None;
                    }
                    return Ok(false);
                }
                (Some(lit), 1) => {
                    let v = lit.unsigned_abs() as usize - 1;
                    assignment[v] = Some(lit > 0);
                    trail.push(v);
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            break;
        }
    }
    let branch = (0..formula.num_vars).find(|&v| assignment[v].is_none());
    let result = match branch {
        None => true,
        Some(v) => {
            let mut ok = false;
            for val in [true, false] {
                assignment[v] = Some(val);
                if dpll(formula, assignment, nodes)? {
                    ok = true;
                    break;
                }
                assignment[v] = None;
            }
            ok
        }
    };
    if !result {
        for v in trail {
            assignment[v] = None;
        }
    }
    Ok(result)
}

// ---------------------------------------------------------------------------
// Assignment <-> coloring
// ---------------------------------------------------------------------------

/// Canonical color indices in reduction colorings.
pub const COLOR_T: usize = 0;
pub const COLOR_F: usize = 1;
pub const COLOR_B: usize = 2;

/// Turns a satisfying assignment into a proper 3-coloring, completing the
/// clause gadgets constructively: the first true literal's slot vertex is
/// colored like `F`, its chain partner like `B`, and the two leftover
/// cycle vertices get the lexicographically least proper completion.
pub fn assignment_to_coloring(
    rg: &ReductionGraph,
    assignment: &[bool],
) -> Result<Coloring, SatError> {
    let g = &rg.graph;
    let mut colors = vec![usize::MAX; g.vertex_count()];
    colors[rg.t] = COLOR_T;
    colors[rg.f] = COLOR_F;
    colors[rg.b] = COLOR_B;
    for j in 0..rg.formula.num_vars {
        colors[rg.pos_literal[j]] = if assignment[j] { COLOR_T } else { COLOR_F };
        colors[rg.neg_literal[j]] = if assignment[j] { COLOR_F } else { COLOR_T };
    }
    for (i, clause) in rg.formula.clauses.iter().enumerate() {
        let [a, b, c, d, e, f] = rg.gadgets[i];
        let values: Vec<bool> = clause
            .iter()
            .map(|&lit| colors[rg.literal_vertex(lit)] == COLOR_T)
            .collect();
        let first_true = values
            .iter()
            .position(|&v| v)
            .ok_or(SatError::UnsatisfyingAssignment(i))?;
        let slots = [a, b, c];
        let partners = [d, e, f];
        for (p, &slot) in slots.iter().enumerate() {
            colors[slot] = if p == first_true { COLOR_F } else { COLOR_B };
        }
        colors[partners[first_true]] = COLOR_B;
        // Complete the two free cycle vertices: smallest proper choice.
        let free: Vec<usize> = partners
            .iter()
            .copied()
            .filter(|&v| colors[v] == usize::MAX)
            .collect();
        let mut done = false;
        'outer: for combo in 0..3usize.pow(free.len() as u32) {
            let mut trial = colors.clone();
            let mut k = combo;
            for &v in &free {
                trial[v] = k % 3;
                k /= 3;
            }
            for &v in &free {
                for u in g.neighbors(v) {
                    if trial[u] == trial[v] {
                        continue 'outer;
                    }
                }
            }
            colors = trial;
            done = true;
            break;
        }
        if !done {
            return Err(SatError::UnsatisfyingAssignment(i));
        }
    }
    let coloring = Coloring {
        colors,
        palette_size: 3,
    };
    if !coloring.verify(g) {
        return Err(SatError::ImproperColoring);
    }
    Ok(coloring)
}

/// Reads a satisfying assignment off a proper 3-coloring: after renaming
/// colors so `T, F, B` get their canonical colors, variable `j` is true
/// exactly when `x{j}` shares the color of `T`.
pub fn coloring_to_assignment(
    rg: &ReductionGraph,
    coloring: &Coloring,
) -> Result<Vec<bool>, SatError> {
    if coloring.palette_size != 3 || !coloring.verify(&rg.graph) {
        return Err(SatError::ImproperColoring);
    }
    // The base triangle uses three distinct colors; rename them.
    let mut rename = [usize::MAX; 3];
    rename[coloring.colors[rg.t]] = COLOR_T;
    rename[coloring.colors[rg.f]] = COLOR_F;
    rename[coloring.colors[rg.b]] = COLOR_B;
    let assignment: Vec<bool> = (0..rg.formula.num_vars)
        .map(|j| rename[coloring.colors[rg.pos_literal[j]]] == COLOR_T)
        .collect();
    if !rg.formula.evaluate(&assignment) {
        // Cannot happen for a proper coloring of a faithful reduction.
        return Err(SatError::ImproperColoring);
    }
    Ok(assignment)
}

// ---------------------------------------------------------------------------
// Orthogonal representation to coloring (the constructive rank-3 argument)
// ---------------------------------------------------------------------------

/// Converts a verified 3-dimensional orthogonal representation of a
/// reduction graph into a proper 3-coloring.
///
/// Rotates the representation so the base triangle maps to the standard
/// basis, snaps literal vectors of the form `(a, b, 0)` with both entries
/// nonzero to `e1`/`e2`, reads off the induced assignment, and completes
/// the gadgets constructively.
pub fn orthorep_to_coloring(
    rg: &ReductionGraph,
    rep: &OrthogonalRepresentation,
    tol: f64,
) -> Result<Coloring, SatError> {
    if rep.dimension != 3 {
        return Err(SatError::InvalidRepresentation);
    }
    let report =
        verify_orthorep(&rg.graph, rep, tol).map_err(|_| SatError::InvalidRepresentation)?;
    if !report.pass {
        return Err(SatError::InvalidRepresentation);
    }
    let basis = [&rep.vectors[rg.t], &rep.vectors[rg.f], &rep.vectors[rg.b]];
    let rotate = |v: &[Complex64]| -> [Complex64; 3] {
        [inner(basis[0], v), inner(basis[1], v), inner(basis[2], v)]
    };
    let classify = |w: &[Complex64; 3]| -> Result<Option<usize>, SatError> {
        // Expect (star, star, ~0); decide between e1, e2, or free.
        for entry in w {
            let m = entry.norm();
            if m > SNAP_ZERO && m < SNAP_AMBIGUOUS {
                return Err(SatError::SnapAmbiguous(m));
            }
        }
        if w[2].norm() > SNAP_ZERO {
            return Err(SatError::InvalidRepresentation);
        }
        let a = w[0].norm() > SNAP_ZERO;
        let b = w[1].norm() > SNAP_ZERO;
        Ok(match (a, b) {
            (true, false) => Some(COLOR_T),
            (false, true) => Some(COLOR_F),
            (true, true) => None,
            (false, false) => return Err(SatError::InvalidRepresentation),
        })
    };
    let mut assignment = Vec::with_capacity(rg.formula.num_vars);
    for j in 0..rg.formula.num_vars {
        let wp = rotate(&rep.vectors[rg.pos_literal[j]]);
        let wn = rotate(&rep.vectors[rg.neg_literal[j]]);
        let value = match (classify(&wp)?, classify(&wn)?) {
            (Some(COLOR_T), _) => true,
            (Some(COLOR_F), _) => false,
            (None, Some(COLOR_T)) => false,
            (None, Some(COLOR_F)) => true,
            // Both free: snap x{j} to e1, its negation to e2.
            (None, None) => true,
            _ => return Err(SatError::InvalidRepresentation),
        };
        assignment.push(value);
    }
    if !rg.formula.evaluate(&assignment) {
        return Err(SatError::InvalidRepresentation);
    }
    assignment_to_coloring(rg, &assignment)
}

// ---------------------------------------------------------------------------
// Magic square instance
// ---------------------------------------------------------------------------

/// A fixed unsatisfiable 3-CNF encoding the magic-square constraint
/// system: nine cell variables in a 3x3 grid, each row constrained to even
/// parity and each column to odd parity. Every 3-ary parity constraint
/// becomes the four clauses blocking its violating assignments, so no
/// auxiliary variables are needed.
pub fn magic_square_cnf() -> CnfFormula {
    let var = |row: usize, col: usize| -> i32 { (3 * row + col + 1) as i32 };
    let mut clauses = Vec::with_capacity(24);
    let parity_clauses = |x: i32, y: i32, z: i32, odd: bool, out: &mut Vec<[i32; 3]>| {
        // Block every assignment of the wrong parity.
        for pattern in 0..8u32 {
            let ones = pattern.count_ones() % 2;
            let violates = if odd { ones == 0 } else { ones == 1 };
            if violates {
                let lit = |v: i32, bit: bool| if bit { -v } else { v };
                out.push([
                    lit(x, pattern & 1 != 0),
                    lit(y, pattern & 2 != 0),
                    lit(z, pattern & 4 != 0),
                ]);
            }
        }
    };
    for row in 0..3 {
        parity_clauses(var(row, 0), var(row, 1), var(row, 2), false, &mut clauses);
    }
    for col in 0..3 {
        parity_clauses(var(0, col), var(1, col), var(2, col), true, &mut clauses);
    }
    CnfFormula::new(9, clauses).expect("fixed instance is well formed")
}

/// How the non-3-colorability of a reduction graph was certified.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum NonColorabilityEvidence {
    /// The 3-coloring search was exhausted within budget.
    ExhaustiveSearch,
    /// The formula was proven unsatisfiable and the reduction is
    /// equisatisfiable, so no 3-coloring exists.
    UnsatPlusEquisatisfiability,
}

/// Certifies that a reduction graph is not 3-colorable, preferring the
/// direct exhaustive search and falling back to the unsatisfiability
/// certificate plus the reduction theorem when the search exceeds its
/// budget.
pub fn certify_not_3_colorable(
    rg: &ReductionGraph,
    budget: u64,
) -> Result<NonColorabilityEvidence, SatError> {
    match graph::is_c_colorable_budgeted(&rg.graph, 3, budget) {
        Ok(None) => Ok(NonColorabilityEvidence::ExhaustiveSearch),
        Ok(Some(_)) => Err(SatError::Parse(
            "graph is 3-colorable; nothing to certify".into(),
        )),
        Err(GraphError::BudgetExceeded(_)) => {
            if brute_force_sat(&rg.formula)?.is_none() {
                Ok(NonColorabilityEvidence::UnsatPlusEquisatisfiability)
            } else {
                Err(SatError::Parse(
                    "formula is satisfiable; graph is 3-colorable".into(),
                ))
            }
        }
        Err(e) => Err(e.into()),
    }
}

// ---------------------------------------------------------------------------
// Role map export
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct RoleMapJson {
    t: String,
    f: String,
    b: String,
    literals: BTreeMap<String, [String; 2]>,
    clauses: Vec<[String; 6]>,
}

/// JSON role map naming the special vertices, literal pairs, and gadget
/// vertices of a reduction graph.
pub fn role_map_json(rg: &ReductionGraph) -> String {
    let g = &rg.graph;
    let name = |v: usize| g.label(v).to_string();
    let mut literals = BTreeMap::new();
    for j in 0..rg.formula.num_vars {
        literals.insert(
            format!("x{}", j + 1),
            [name(rg.pos_literal[j]), name(rg.neg_literal[j])],
        );
    }
    let clauses = rg
        .gadgets
        .iter()
        .map(|gad| {
            let [a, b, c, d, e, f] = *gad;
            [name(a), name(b), name(c), name(d), name(e), name(f)]
        })
        .collect();
    serde_json::to_string_pretty(&RoleMapJson {
        t: name(rg.t),
        f: name(rg.f),
        b: name(rg.b),
        literals,
        clauses,
    })
    .expect("role map serializes")
}
