//! Built-in lemma replays for quantum 3-colorings.
//!
//! Each checker re-derives its statement from the axioms (plus cited
//! earlier facts) and emits machine-usable artifacts: terminating rewrite
//! rules, zero words for the kill search, commuting swap pairs, unit
//! families for insertion steps, and identities for substitution steps.

use std::collections::{BTreeMap, HashSet};

use super::poly::{eliminate, Gen, Poly, Word};
use super::rules::{orient, projector_rules, reduce, KillContext, Rule};
use super::NcError;
use crate::graph::Graph;

const REDUCE_BUDGET: u64 = 2_000_000;
const KILL_BUDGET: usize = 200_000;

/// Everything a proof step may emit for later steps to cite.
#[derive(Debug, Default, Clone)]
pub struct Emissions {
    pub rules: Vec<Rule>,
    pub kills: Vec<Word>,
    pub swaps: Vec<(Gen, Gen)>,
    /// Unit families: sets of generators proven to sum to 1, keyed by color.
    pub families: BTreeMap<u32, Vec<Gen>>,
    /// The proven claim, available for substitution steps.
    pub identity: Option<(Poly, Poly)>,
}

/// Accumulated proof state: the axioms plus cited emissions.
pub struct Pool<'g> {
    pub graph: &'g Graph,
    pub c: u32,
    pub base_rules: Vec<Rule>,
    pub rules: Vec<Rule>,
    pub kills: Vec<Word>,
    pub swaps: HashSet<(Gen, Gen)>,
}

fn norm_pair(a: Gen, b: Gen) -> (Gen, Gen) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

impl<'g> Pool<'g> {
    pub fn new(graph: &'g Graph, c: u32) -> Result<Pool<'g>, NcError> {
        Ok(Pool {
            graph,
            c,
            base_rules: projector_rules(graph, c)?,
            rules: Vec::new(),
            kills: Vec::new(),
            swaps: HashSet::new(),
        })
    }

    pub fn absorb(&mut self, e: &Emissions) {
        self.rules.extend(e.rules.iter().cloned());
        self.kills.extend(e.kills.iter().cloned());
        for &(a, b) in &e.swaps {
            self.swaps.insert(norm_pair(a, b));
        }
    }

    /// Cited rules take priority over the axioms.
    pub fn rule_refs(&self) -> Vec<&Rule> {
        self.rules.iter().chain(self.base_rules.iter()).collect()
    }

    pub fn reduce(&self, p: &Poly) -> Result<Poly, NcError> {
        let mut budget = REDUCE_BUDGET;
        reduce(p, &self.rule_refs(), &mut budget)
    }

    pub fn reduce_eliminated(&self, p: &Poly) -> Result<Poly, NcError> {
        self.reduce(&eliminate(p, self.c))
    }

    pub fn kill_context(&self) -> KillContext<'_> {
        KillContext {
            graph: self.graph,
            c: self.c,
            kills: self.kills.iter().collect(),
            swaps: self.swaps.clone(),
        }
    }

    pub fn word_vanishes(&self, w: &Word) -> bool {
        self.kill_context().word_vanishes(w, KILL_BUDGET)
    }
}

/// The generators of the quantum `c`-coloring ideal: completeness per
/// vertex, idempotency per projector, and both orders of same-color edge
/// orthogonality.
pub fn coloring_ideal(graph: &Graph, c: u32) -> Result<Vec<Poly>, NcError> {
    if c < 1 {
        return Err(NcError::BadColorCount(c));
    }
    let mut out = Vec::new();
    for v in 0..graph.vertex_count() as u32 {
        let mut complete = Poly::one().neg();
        for i in 1..=c {
            complete = complete.add(&Poly::generator(Gen::new(v, i)));
        }
        out.push(complete);
        for i in 1..=c {
            let vi = Gen::new(v, i);
            let sq = Poly::monomial(Word(vec![vi, vi]));
            out.push(sq.sub(&Poly::generator(vi)));
        }
    }
    for (u, w) in graph.edges() {
        for i in 1..=c {
            let ui = Gen::new(u as u32, i);
            let wi = Gen::new(w as u32, i);
            out.push(Poly::monomial(Word(vec![ui, wi])));
            out.push(Poly::monomial(Word(vec![wi, ui])));
        }
    }
    Ok(out)
}

fn emit_identity_rule(
    pool: &Pool,
    emissions: &mut Emissions,
    id: &str,
    lhs: &Poly,
    rhs: &Poly,
) -> Result<(), NcError> {
    // Reduce the eliminated claim against the pool plus what this step has
    // already emitted, then orient the residue.
    let mut refs: Vec<&Rule> = emissions.rules.iter().collect();
    refs.extend(pool.rule_refs());
    let mut budget = REDUCE_BUDGET;
    let residue = reduce(&eliminate(&lhs.sub(rhs), pool.c), &refs, &mut budget)?;
    if let Some(rule) = orient(id, &residue)? {
        emissions.rules.push(rule);
    }
    Ok(())
}

/// Adjacent vertices' projectors commute in any quantum 3-coloring.
///
/// Replays the argument for one color pair: `u1 v2 = u1 v2 u1` falls out of
/// the axioms by rewriting, the transpose gives `v2 u1 = u1 v2 u1`, and
/// color symmetry transports the identity to every pair. Emits the nine
/// commutation identities as swaps and oriented rules.
pub fn check_lemma_commute(pool: &Pool, u: usize, v: usize) -> Result<Emissions, NcError> {
    if pool.c != 3 {
        return Err(NcError::BadColorCount(pool.c));
    }
    if !pool.graph.are_adjacent(u, v) {
        return Err(NcError::NotAnEdge(u, v));
    }
    let (u, v) = (u as u32, v as u32);
    // Same color: both orders vanish by the edge axioms directly.
    for i in 1..=3 {
        for word in [
            Word(vec![Gen::new(u, i), Gen::new(v, i)]),
            Word(vec![Gen::new(v, i), Gen::new(u, i)]),
        ] {
            let nf = pool.reduce_eliminated(&Poly::monomial(word.clone()))?;
            if !nf.is_zero() {
                return Err(NcError::LemmaFailed(format!(
                    "edge orthogonality of {word:?} did not reduce to zero"
                )));
            }
        }
    }
    // Representative mixed pair (1,2): u1 v2 equals u1 v2 u1.
    let u1v2 = Poly::monomial(Word(vec![Gen::new(u, 1), Gen::new(v, 2)]));
    let u1v2u1 = Poly::monomial(Word(vec![Gen::new(u, 1), Gen::new(v, 2), Gen::new(u, 1)]));
    let nf = pool.reduce_eliminated(&u1v2.sub(&u1v2u1))?;
    if !nf.is_zero() {
        return Err(NcError::LemmaFailed(format!(
            "u1 v2 - u1 v2 u1 reduced to {nf:?} instead of zero"
        )));
    }
    // Transpose closure: (u1 v2 - u1 v2 u1)^T = v2 u1 - u1 v2 u1, so
    // u1 v2 = v2 u1. Color symmetry maps (1,2) to any ordered pair (i,j);
    // the axiom set is invariant under color permutations, so each image
    // identity lies in the ideal as well.
    let mut emissions = Emissions::default();
    for i in 1..=3u32 {
        for j in 1..=3u32 {
            emissions.swaps.push((Gen::new(u, i), Gen::new(v, j)));
            let lhs = Poly::monomial(Word(vec![Gen::new(u, i), Gen::new(v, j)]));
            let rhs = Poly::monomial(Word(vec![Gen::new(v, j), Gen::new(u, i)]));
            emit_identity_rule(pool, &mut emissions, &format!("commute-{u}-{v}-{i}-{j}"), &lhs, &rhs)?;
        }
    }
    Ok(emissions)
}

/// A clique of size `c` forces its same-color projectors to resolve the
/// identity: the family members are pairwise orthogonal modulo the axioms,
/// hence each color's family sum is idempotent, and `c` idempotents
/// summing to `c` times the identity must each equal the identity in any
/// projector representation (the counting inference).
pub fn check_lemma_clique(pool: &Pool, set: &[usize]) -> Result<Emissions, NcError> {
    let c = pool.c;
    if set.len() != c as usize {
        return Err(NcError::NotAClique(format!(
            "set size {} does not match {c} colors",
            set.len()
        )));
    }
    for (a, &x) in set.iter().enumerate() {
        for &y in &set[a + 1..] {
            if !pool.graph.are_adjacent(x, y) {
                return Err(NcError::NotAClique(format!(
                    "{} and {} are not adjacent",
                    pool.graph.label(x),
                    pool.graph.label(y)
                )));
            }
        }
    }
    // Pairwise orthogonality in both orders, color by color.
    for i in 1..=c {
        for &x in set {
            for &y in set {
                if x == y {
                    continue;
                }
                let w = Word(vec![Gen::new(x as u32, i), Gen::new(y as u32, i)]);
                let nf = pool.reduce_eliminated(&Poly::monomial(w))?;
                if !nf.is_zero() {
                    return Err(NcError::LemmaFailed(
                        "clique pair failed to annihilate".into(),
                    ));
                }
            }
        }
        // Idempotency of the family sum, piece by piece.
        for &x in set {
            let xi = Gen::new(x as u32, i);
            let idem = Poly::monomial(Word(vec![xi, xi])).sub(&Poly::generator(xi));
            if !pool.reduce_eliminated(&idem)?.is_zero() {
                return Err(NcError::LemmaFailed("projector not idempotent".into()));
            }
        }
    }
    // The counting inference now applies: sum over colors of the family
    // sums is exactly c (completeness is exact after elimination), and c
    // idempotents bounded by the identity that sum to c?I must each be I.
    let mut emissions = Emissions::default();
    for i in 1..=c {
        let members: Vec<Gen> = set.iter().map(|&x| Gen::new(x as u32, i)).collect();
        emissions.families.insert(i, members.clone());
        if i < c {
            let sum = members
                .iter()
                .fold(Poly::one().neg(), |acc, &g| acc.add(&Poly::generator(g)));
            if let Some(rule) = orient(format!("clique-sum-{i}"), &sum)? {
                emissions.rules.push(rule);
            }
        }
    }
    Ok(emissions)
}

/// For vertices `u, v` sharing a neighbor `w`, every alternating product
/// `u_i v_j u_k` over the three distinct colors vanishes. Replays the
/// completeness expansion against `w`, commuting `w`'s letters into
/// killing position; the commutation swaps for both edges must already be
/// in the pool.
pub fn check_lemma_dist2(
    pool: &Pool,
    u: usize,
    v: usize,
    w: usize,
) -> Result<Emissions, NcError> {
    if pool.c != 3 {
        return Err(NcError::BadColorCount(pool.c));
    }
    if !pool.graph.are_adjacent(u, w) || !pool.graph.are_adjacent(v, w) {
        return Err(NcError::NotACommonNeighbor(
            pool.graph.label(w).to_string(),
        ));
    }
    let (u, v, w) = (u as u32, v as u32, w as u32);
    let perms = [
        (1, 2, 3),
        (1, 3, 2),
        (2, 1, 3),
        (2, 3, 1),
        (3, 1, 2),
        (3, 2, 1),
    ];
    let mut emissions = Emissions::default();
    for (i, j, k) in perms {
        // u_i v_j u_k = sum over m of u_i v_j u_k w_m (completeness is
        // exact after elimination); each piece must die by swap and kill.
        for m in [i, j, k] {
            let piece = Word(vec![
                Gen::new(u, i),
                Gen::new(v, j),
                Gen::new(u, k),
                Gen::new(w, m),
            ]);
            if !pool.word_vanishes(&piece) {
                return Err(NcError::LemmaFailed(format!(
                    "piece {piece:?} did not vanish; are the commutation rules for the shared neighbor cited?"
                )));
            }
        }
        let zero_word = Word(vec![Gen::new(u, i), Gen::new(v, j), Gen::new(u, k)]);
        emissions.kills.push(zero_word.clone());
        let mut refs: Vec<&Rule> = emissions.rules.iter().collect();
        refs.extend(pool.rule_refs());
        let mut budget = REDUCE_BUDGET;
        let residue = reduce(
            &eliminate(&Poly::monomial(zero_word), pool.c),
            &refs,
            &mut budget,
        )?;
        if let Some(rule) = orient(format!("dist2-{u}-{v}-{w}-{i}{j}{k}"), &residue)? {
            emissions.rules.push(rule);
        }
    }
    Ok(emissions)
}

/// The specific identities tying the all-ones vertex `W` to a zero-free
/// neighbor-of-its-neighbors `X` in the thirteen-vertex graph:
/// `X_i T_j W_i = 0` for `T` in `{A, C}` and `i != j`, and
/// `X_i W_i = X_i A_i W_i = X_i C_i W_i`. The replay inserts the cited
/// triangle families `{A, L, M}` and `{C, Q, R}` and kills each piece.
pub struct XwInput<'a> {
    pub families: &'a BTreeMap<String, BTreeMap<u32, Vec<Gen>>>,
    pub triangle_a: String,
    pub triangle_c: String,
}

pub fn check_lemma_xw(pool: &Pool, input: &XwInput) -> Result<Emissions, NcError> {
    if pool.c != 3 {
        return Err(NcError::BadColorCount(pool.c));
    }
    let idx = |label: &str| -> Result<u32, NcError> {
        pool.graph
            .index_of(label)
            .map(|i| i as u32)
            .ok_or_else(|| NcError::UnknownVertex(label.to_string()))
    };
    let (x, w) = (idx("X")?, idx("W")?);
    let a = idx("A")?;
    let cc = idx("C")?;
    let tri_a = input
        .families
        .get(&input.triangle_a)
        .ok_or_else(|| NcError::UnknownStep(input.triangle_a.clone()))?;
    let tri_c = input
        .families
        .get(&input.triangle_c)
        .ok_or_else(|| NcError::UnknownStep(input.triangle_c.clone()))?;

    let mut emissions = Emissions::default();
    for (mid, family) in [(a, tri_a), (cc, tri_c)] {
        // Part one: X_i mid_j W_i = 0 for i != j, by inserting the
        // triangle family of color i after mid_j and killing every piece.
        for i in 1..=3u32 {
            for j in 1..=3u32 {
                if i == j {
                    continue;
                }
                let members = family
                    .get(&i)
                    .ok_or_else(|| NcError::LemmaFailed("triangle family missing color".into()))?;
                for &member in members {
                    let piece = Word(vec![Gen::new(x, i), Gen::new(mid, j), member, Gen::new(w, i)]);
                    if !pool.word_vanishes(&piece) {
                        return Err(NcError::LemmaFailed(format!(
                            "piece {piece:?} did not vanish"
                        )));
                    }
                }
                let zero_word = Word(vec![Gen::new(x, i), Gen::new(mid, j), Gen::new(w, i)]);
                emissions.kills.push(zero_word.clone());
                let mut refs: Vec<&Rule> = emissions.rules.iter().collect();
                refs.extend(pool.rule_refs());
                let mut budget = REDUCE_BUDGET;
                let residue = reduce(
                    &eliminate(&Poly::monomial(zero_word), pool.c),
                    &refs,
                    &mut budget,
                )?;
                if let Some(rule) = orient(format!("xw-{mid}-{i}-{j}"), &residue)? {
                    emissions.rules.push(rule);
                }
            }
        }
        // Part two: X_i W_i = X_i mid_i W_i follows from completeness of
        // mid plus part one; verify by reduction with the emitted rules.
        for i in 1..=3u32 {
            let lhs = Poly::monomial(Word(vec![Gen::new(x, i), Gen::new(w, i)]));
            let rhs = Poly::monomial(Word(vec![
                Gen::new(x, i),
                Gen::new(mid, i),
                Gen::new(w, i),
            ]));
            let mut refs: Vec<&Rule> = emissions.rules.iter().collect();
            refs.extend(pool.rule_refs());
            let mut budget = REDUCE_BUDGET;
            let nf = reduce(&eliminate(&lhs.sub(&rhs), pool.c), &refs, &mut budget)?;
            if !nf.is_zero() {
                return Err(NcError::LemmaFailed(format!(
                    "X_{i} W_{i} = X_{i} {mid}_{i} W_{i} did not verify: {nf:?}"
                )));
            }
        }
    }
    Ok(emissions)
}
