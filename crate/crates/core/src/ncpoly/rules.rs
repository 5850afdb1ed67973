//! Terminating rewrite rules and normal-form reduction.

use num_rational::BigRational;

use super::poly::{eliminate, Gen, Poly, Word};
use super::NcError;
use crate::graph::Graph;

/// A rewrite rule `pattern -> rhs` with every monomial of `rhs` strictly
/// below `pattern` in the degree-lexicographic order, so rewriting always
/// terminates.
#[derive(Clone, Debug)]
pub struct Rule {
    pub id: String,
    pub pattern: Word,
    pub rhs: Poly,
}

impl Rule {
    pub fn new(id: impl Into<String>, pattern: Word, rhs: Poly) -> Result<Rule, NcError> {
        if pattern.is_empty() {
            return Err(NcError::Orientation("empty pattern".into()));
        }
        if let Some((lead, _)) = rhs.leading() {
            if lead >= &pattern {
                return Err(NcError::Orientation(format!(
                    "rule {:?} is not decreasing",
                    id.into()
                )));
            }
        }
        Ok(Rule {
            id: id.into(),
            pattern,
            rhs,
        })
    }
}

/// Orients a polynomial identity `p = 0` into a rule rewriting its leading
/// monomial. Returns `None` for the zero polynomial; a nonzero constant
/// cannot be oriented and is reported as a contradiction witness.
pub fn orient(id: impl Into<String>, p: &Poly) -> Result<Option<Rule>, NcError> {
    if p.is_zero() {
        return Ok(None);
    }
    let (lead, coeff) = p.leading().expect("nonzero polynomial");
    if lead.is_empty() {
        return Err(NcError::ConstantIdentity);
    }
    let lead = lead.clone();
    let coeff = coeff.clone();
    let mut rest = p.clone();
    rest.add_term(lead.clone(), -coeff.clone());
    let rhs = rest.scale(&(-BigRational::from_integer(1.into()) / coeff));
    Ok(Some(Rule::new(id, lead, rhs)?))
}

/// Reduces a polynomial to a normal form: repeatedly rewrites the largest
/// monomial containing any pattern, at its leftmost redex, using the first
/// matching rule in priority order.
pub fn reduce(p: &Poly, rules: &[&Rule], budget: &mut u64) -> Result<Poly, NcError> {
    let mut p = p.clone();
    loop {
        let mut target: Option<(Word, BigRational, usize, usize)> = None;
        'scan: for (word, coeff) in p.terms.iter().rev() {
            for pos in 0..word.len() {
                for (ri, rule) in rules.iter().enumerate() {
                    let plen = rule.pattern.len();
                    if pos + plen <= word.len() && word.0[pos..pos + plen] == rule.pattern.0[..] {
                        target = Some((word.clone(), coeff.clone(), pos, ri));
                        break 'scan;
                    }
                }
            }
        }
        let Some((word, coeff, pos, ri)) = target else {
            return Ok(p);
        };
        if *budget == 0 {
            return Err(NcError::RewriteBudget);
        }
        *budget -= 1;
        let rule = rules[ri];
        let left = &word.0[..pos];
        let right = &word.0[pos + rule.pattern.len()..];
        p.add_term(word.clone(), -coeff.clone());
        let replaced = rule.rhs.sandwich(left, right).scale(&coeff);
        p = p.add(&replaced);
    }
}

/// The axiom rule set of the quantum `c`-coloring ideal of a graph, in the
/// presentation where the last color is eliminated:
///
/// - `v_c -> 1 - v_1 - ... - v_{c-1}` per vertex (completeness),
/// - `v_i v_i -> v_i` per vertex and color `i < c` (idempotency),
/// - `v_i v_j -> 0` for `i != j < c` per vertex (orthogonality of a
///   vertex's own projectors; derivable over the rationals for `c <= 3`),
/// - `u_i w_i -> 0`, `w_i u_i -> 0` per edge and color `i < c`, and
/// - the oriented eliminations of the color-`c` edge relations.
pub fn projector_rules(graph: &Graph, c: u32) -> Result<Vec<Rule>, NcError> {
    if c < 2 {
        return Err(NcError::BadColorCount(c));
    }
    let mut rules: Vec<Rule> = Vec::new();
    for v in 0..graph.vertex_count() as u32 {
        let mut complete_rhs = Poly::one();
        for i in 1..c {
            complete_rhs = complete_rhs.sub(&Poly::generator(Gen::new(v, i)));
        }
        rules.push(Rule::new(
            format!("complete-{v}"),
            Word::single(Gen::new(v, c)),
            complete_rhs,
        )?);
        for i in 1..c {
            rules.push(Rule::new(
                format!("idem-{v}-{i}"),
                Word(vec![Gen::new(v, i), Gen::new(v, i)]),
                Poly::generator(Gen::new(v, i)),
            )?);
        }
        if c <= 3 {
            for i in 1..c {
                for j in 1..c {
                    if i != j {
                        rules.push(Rule::new(
                            format!("selforth-{v}-{i}-{j}"),
                            Word(vec![Gen::new(v, i), Gen::new(v, j)]),
                            Poly::zero(),
                        )?);
                    }
                }
            }
        }
    }
    for (u, w) in graph.edges() {
        let (u, w) = (u as u32, w as u32);
        for i in 1..c {
            rules.push(Rule::new(
                format!("edge-{u}-{w}-{i}"),
                Word(vec![Gen::new(u, i), Gen::new(w, i)]),
                Poly::zero(),
            )?);
            rules.push(Rule::new(
                format!("edge-{w}-{u}-{i}"),
                Word(vec![Gen::new(w, i), Gen::new(u, i)]),
                Poly::zero(),
            )?);
        }
        // Color-c edge relations, eliminated and oriented.
        for (a, b) in [(u, w), (w, u)] {
            let rel = Poly::monomial(Word(vec![Gen::new(a, c), Gen::new(b, c)]));
            let mut budget = 100_000;
            let refs: Vec<&Rule> = rules.iter().collect();
            let residue = reduce(&eliminate(&rel, c), &refs, &mut budget)?;
            if let Some(rule) = orient(format!("edge-{a}-{b}-{c}"), &residue)? {
                rules.push(rule);
            }
        }
    }
    Ok(rules)
}

// ---------------------------------------------------------------------------
// Word vanishing by commuting swaps and contiguous kills
// ---------------------------------------------------------------------------

fn norm_pair(a: Gen, b: Gen) -> (Gen, Gen) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Zero-detection context for single words: base kills from the graph
/// (same-color ends of an edge; two different colors of one vertex, valid
/// for palettes of at most three) plus emitted kill words, with commuting
/// generator pairs as swap moves.
pub struct KillContext<'a> {
    pub graph: &'a Graph,
    pub c: u32,
    pub kills: Vec<&'a Word>,
    pub swaps: std::collections::HashSet<(Gen, Gen)>,
}

impl<'a> KillContext<'a> {
    fn pair_kills(&self, a: Gen, b: Gen) -> bool {
        if a.vertex == b.vertex && a.color != b.color && self.c <= 3 {
            return true;
        }
        a.color == b.color
            && a.vertex != b.vertex
            && self.graph.are_adjacent(a.vertex as usize, b.vertex as usize)
    }

    fn word_has_kill(&self, w: &Word) -> bool {
        for pair in w.0.windows(2) {
            if self.pair_kills(pair[0], pair[1]) {
                return true;
            }
        }
        self.kills.iter().any(|k| w.find(k).is_some())
    }

    /// Breadth-first search over adjacent transpositions of commuting
    /// letters, succeeding when any reachable word contains a kill.
    pub fn word_vanishes(&self, start: &Word, visit_budget: usize) -> bool {
        use std::collections::{HashSet, VecDeque};
        if start.is_empty() {
            return false;
        }
        let mut seen: HashSet<Word> = HashSet::new();
        let mut queue: VecDeque<Word> = VecDeque::new();
        seen.insert(start.clone());
        queue.push_back(start.clone());
        while let Some(w) = queue.pop_front() {
            if self.word_has_kill(&w) {
                return true;
            }
            for i in 0..w.len().saturating_sub(1) {
                let (a, b) = (w.0[i], w.0[i + 1]);
                if self.swaps.contains(&norm_pair(a, b)) {
                    let mut next = w.clone();
                    next.0.swap(i, i + 1);
                    if seen.len() >= visit_budget {
                        return false;
                    }
                    if seen.insert(next.clone()) {
                        queue.push_back(next);
                    }
                }
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph;
    use num_traits::One;

    fn g(v: u32, c: u32) -> Gen {
        Gen::new(v, c)
    }

    #[test]
    fn reduce_examples() {
        // reduce(u1 v1, {u1 v1 -> 0}) = 0.
        let rule = Rule::new(
            "edge",
            Word(vec![g(0, 1), g(1, 1)]),
            Poly::zero(),
        )
        .unwrap();
        let p = Poly::monomial(Word(vec![g(0, 1), g(1, 1)]));
        let mut budget = 1000;
        assert!(reduce(&p, &[&rule], &mut budget).unwrap().is_zero());

        // reduce(p, {}) = p.
        let q = Poly::monomial(Word(vec![g(0, 2), g(1, 1)]));
        let mut budget = 1000;
        assert_eq!(reduce(&q, &[], &mut budget).unwrap(), q);
    }

    #[test]
    fn reduce_kills_completeness_substituted_word() {
        // u1 v2 u3 vanishes under the edge axioms once color 3 is
        // eliminated.
        let k2 = graph::complete(2);
        let rules = projector_rules(&k2, 3).unwrap();
        let refs: Vec<&Rule> = rules.iter().collect();
        let p = Poly::monomial(Word(vec![g(0, 1), g(1, 2), g(0, 3)]));
        let mut budget = 100_000;
        let nf = reduce(&eliminate(&p, 3), &refs, &mut budget).unwrap();
        assert!(nf.is_zero(), "normal form: {nf:?}");
    }

    #[test]
    fn rules_must_decrease() {
        let bad = Rule::new(
            "bad",
            Word(vec![g(0, 1)]),
            Poly::monomial(Word(vec![g(0, 1), g(0, 1)])),
        );
        assert!(bad.is_err());
    }

    #[test]
    fn orient_picks_leading_monomial() {
        // u1 + v1 - 1 with u < v orients as v1 -> 1 - u1.
        let p = Poly::generator(g(0, 1))
            .add(&Poly::generator(g(1, 1)))
            .sub(&Poly::one());
        let rule = orient("r", &p).unwrap().unwrap();
        assert_eq!(rule.pattern, Word(vec![g(1, 1)]));
        let expect = Poly::one().sub(&Poly::generator(g(0, 1)));
        assert_eq!(rule.rhs, expect);
        // A bare nonzero constant is a contradiction witness.
        assert!(matches!(
            orient("c", &Poly::constant(BigRational::one())),
            Err(NcError::ConstantIdentity)
        ));
    }

    #[test]
    fn word_vanishes_by_swapping() {
        // In a path u - w - v, the letters of w commute with u and v here
        // by fiat; u1 v2 u3 w1 needs two swaps to expose u1 w1.
        let path = graph::Graph::build(&["u", "w", "v"], &[("u", "w"), ("w", "v")]).unwrap();
        let mut swaps = std::collections::HashSet::new();
        for i in 1..=3 {
            for j in 1..=3 {
                swaps.insert(norm_pair(g(0, i), g(1, j)));
                swaps.insert(norm_pair(g(2, i), g(1, j)));
            }
        }
        let ctx = KillContext {
            graph: &path,
            c: 3,
            kills: vec![],
            swaps,
        };
        let word = Word(vec![g(0, 1), g(2, 2), g(0, 3), g(1, 1)]);
        assert!(ctx.word_vanishes(&word, 10_000));
        // Without swaps the kill is invisible.
        let ctx2 = KillContext {
            graph: &path,
            c: 3,
            kills: vec![],
            swaps: std::collections::HashSet::new(),
        };
        assert!(!ctx2.word_vanishes(&word, 10_000));
    }
}
