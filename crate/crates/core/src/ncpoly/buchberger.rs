//! Degree-bounded Buchberger completion in the free algebra.
//!
//! Critical pairs come from the two overlap kinds of leading words:
//! suffix-prefix overlaps and containments. S-polynomials are reduced
//! against the partial basis; a nonzero constant remainder certifies that
//! 1 lies in the ideal. Provenance is tracked lazily: every basis element
//! records how it was formed from earlier elements, and the certificate
//! (a combination `sum of c * l * p_k * r` over the input generators) is
//! only expanded once a unit actually appears. Completion in the free
//! algebra need not terminate, so exceeding the degree bound yields an
//! explicitly inconclusive outcome, distinct from a refutation and from a
//! blown budget.

use std::collections::BinaryHeap;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::One;

use super::poly::{Poly, Word};
use super::NcError;

/// One summand of an ideal-membership certificate:
/// `coeff * left * generators[index] * right`.
#[derive(Debug, Clone)]
pub struct CertTerm {
    pub coeff: BigRational,
    pub left: Word,
    pub index: usize,
    pub right: Word,
}

#[derive(Debug, Clone)]
enum Source {
    /// An input generator.
    Input(usize),
    /// An earlier (monic) basis element.
    Basis(usize),
}

#[derive(Debug, Clone)]
struct HistEntry {
    coeff: BigRational,
    left: Word,
    source: Source,
    right: Word,
}

/// A basis element with its formation history: the polynomial equals the
/// sum of its history entries.
#[derive(Debug, Clone)]
struct Tracked {
    poly: Poly,
    history: Vec<HistEntry>,
}

#[derive(Debug)]
pub enum BuchbergerOutcome {
    /// The constant 1 entered the ideal; the certificate expands to
    /// exactly 1 (checked before returning).
    UnitFound { certificate: Vec<CertTerm> },
    /// No unit at this degree bound. `complete` is set when the pair queue
    /// was exhausted without skipping anything, in which case the basis is
    /// a full Groebner basis and the unit is genuinely absent.
    Inconclusive {
        basis: Vec<Poly>,
        degree_bound_hit: bool,
        complete: bool,
    },
}

/// Expands a certificate against the generators; used to validate
/// `UnitFound` results.
pub fn expand_certificate(certificate: &[CertTerm], generators: &[Poly]) -> Poly {
    let mut out = Poly::zero();
    for term in certificate {
        let part = generators[term.index]
            .sandwich(&term.left.0, &term.right.0)
            .scale(&term.coeff);
        out = out.add(&part);
    }
    out
}

const CERT_TERM_CAP: usize = 5_000_000;

fn flatten(
    history: &[HistEntry],
    basis: &[Tracked],
    memo: &mut Vec<Option<Vec<CertTerm>>>,
    out: &mut Vec<CertTerm>,
) -> Result<(), NcError> {
    for entry in history {
        match entry.source {
            Source::Input(index) => {
                out.push(CertTerm {
                    coeff: entry.coeff.clone(),
                    left: entry.left.clone(),
                    index,
                    right: entry.right.clone(),
                });
            }
            Source::Basis(k) => {
                if memo[k].is_none() {
                    let mut expanded = Vec::new();
                    flatten(&basis[k].history, basis, memo, &mut expanded)?;
                    memo[k] = Some(expanded);
                }
                for t in memo[k].as_ref().unwrap() {
                    out.push(CertTerm {
                        coeff: &entry.coeff * &t.coeff,
                        left: Word::concat3(&entry.left.0, &t.left.0, &[]),
                        index: t.index,
                        right: Word::concat3(&t.right.0, &entry.right.0, &[]),
                    });
                }
            }
        }
        if out.len() > CERT_TERM_CAP {
            return Err(NcError::RewriteBudget);
        }
    }
    Ok(())
}

#[derive(PartialEq, Eq)]
struct PairEntry {
    degree: usize,
    i: usize,
    j: usize,
    kind: OverlapKind,
}

#[derive(PartialEq, Eq, Clone, Debug)]
enum OverlapKind {
    /// lead(i) and lead(j) overlap: the last `k` letters of lead(i) are
    /// the first `k` letters of lead(j).
    Suffix { k: usize },
    /// lead(j) occurs inside lead(i) at position `p`.
    Containment { p: usize },
}

impl Ord for PairEntry {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // Min-heap on degree, then deterministic tie-breaks.
        other
            .degree
            .cmp(&self.degree)
            .then_with(|| other.i.cmp(&self.i))
            .then_with(|| other.j.cmp(&self.j))
    }
}

impl PartialOrd for PairEntry {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

struct Completion {
    basis: Vec<Tracked>,
    queue: BinaryHeap<PairEntry>,
    max_degree: usize,
    degree_bound_hit: bool,
}

impl Completion {
    fn push_pairs(&mut self, new_idx: usize) {
        let n = self.basis.len();
        for other in 0..n {
            for (i, j) in [(new_idx, other), (other, new_idx)] {
                if i == new_idx || j == new_idx {
                    self.enqueue_overlaps(i, j);
                }
            }
        }
    }

    fn enqueue_overlaps(&mut self, i: usize, j: usize) {
        let u = self.basis[i].poly.leading().unwrap().0.clone();
        let v = self.basis[j].poly.leading().unwrap().0.clone();
        // Suffix-prefix overlaps of length k < min(|u|, |v|).
        for k in 1..u.len().min(v.len()) {
            if u.0[u.len() - k..] == v.0[..k] {
                let degree = u.len() + v.len() - k;
                if degree > self.max_degree {
                    self.degree_bound_hit = true;
                    continue;
                }
                self.queue.push(PairEntry {
                    degree,
                    i,
                    j,
                    kind: OverlapKind::Suffix { k },
                });
            }
        }
        // Containment of lead(j) inside lead(i); for i == j only the
        // trivial full overlap exists, which gives a zero S-polynomial.
        if i != j && v.len() <= u.len() {
            for p in 0..=u.len() - v.len() {
                if u.0[p..p + v.len()] == v.0[..] {
                    if u.len() > self.max_degree {
                        self.degree_bound_hit = true;
                        continue;
                    }
                    self.queue.push(PairEntry {
                        degree: u.len(),
                        i,
                        j,
                        kind: OverlapKind::Containment { p },
                    });
                }
            }
        }
    }

    fn s_polynomial(&self, entry: &PairEntry) -> (Poly, Vec<HistEntry>) {
        let f = &self.basis[entry.i];
        let g = &self.basis[entry.j];
        let u = f.poly.leading().unwrap().0.clone();
        let v = g.poly.leading().unwrap().0.clone();
        let one = BigRational::one();
        match entry.kind {
            OverlapKind::Suffix { k } => {
                // f * v[k..]  -  u[..|u|-k] * g  (both monic).
                let right = &v.0[k..];
                let left = &u.0[..u.len() - k];
                let p = f
                    .poly
                    .sandwich(&[], right)
                    .sub(&g.poly.sandwich(left, &[]));
                let history = vec![
                    HistEntry {
                        coeff: one.clone(),
                        left: Word::one(),
                        source: Source::Basis(entry.i),
                        right: Word(right.to_vec()),
                    },
                    HistEntry {
                        coeff: -one,
                        left: Word(left.to_vec()),
                        source: Source::Basis(entry.j),
                        right: Word::one(),
                    },
                ];
                (p, history)
            }
            OverlapKind::Containment { p } => {
                let left = &u.0[..p];
                let right = &u.0[p + v.len()..];
                let s = f.poly.sub(&g.poly.sandwich(left, right));
                let history = vec![
                    HistEntry {
                        coeff: one.clone(),
                        left: Word::one(),
                        source: Source::Basis(entry.i),
                        right: Word::one(),
                    },
                    HistEntry {
                        coeff: -one,
                        left: Word(left.to_vec()),
                        source: Source::Basis(entry.j),
                        right: Word(right.to_vec()),
                    },
                ];
                (s, history)
            }
        }
    }
}

/// Reduces `p` against the basis; every rewrite appends one history entry
/// so the invariant `p = sum(history)` is preserved.
fn reduce_tracked(
    mut p: Poly,
    mut history: Vec<HistEntry>,
    basis: &[Tracked],
    deadline: Instant,
) -> Result<(Poly, Vec<HistEntry>), NcError> {
    'outer: loop {
        if Instant::now() > deadline {
            return Err(NcError::RewriteBudget);
        }
        let words: Vec<(Word, BigRational)> = p
            .terms
            .iter()
            .rev()
            .map(|(w, c)| (w.clone(), c.clone()))
            .collect();
        for (word, coeff) in words {
            for (k, b) in basis.iter().enumerate() {
                let lead = b.poly.leading().unwrap().0;
                if let Some(pos) = word.find(lead) {
                    let left = &word.0[..pos];
                    let right = &word.0[pos + lead.len()..];
                    // p := p - coeff * left * b * right (b is monic).
                    p = p.sub(&b.poly.sandwich(left, right).scale(&coeff));
                    history.push(HistEntry {
                        coeff: -coeff,
                        left: Word(left.to_vec()),
                        source: Source::Basis(k),
                        right: Word(right.to_vec()),
                    });
                    continue 'outer;
                }
            }
        }
        return Ok((p, history));
    }
}

/// Runs degree-bounded Buchberger completion on exact-rational generators.
pub fn buchberger_bounded(
    generators: &[Poly],
    max_degree: usize,
    max_basis: usize,
    time_budget: Duration,
) -> Result<BuchbergerOutcome, NcError> {
    let deadline = Instant::now() + time_budget;
    let mut completion = Completion {
        basis: Vec::new(),
        queue: BinaryHeap::new(),
        max_degree,
        degree_bound_hit: false,
    };
    for (idx, g) in generators.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let history = vec![HistEntry {
            coeff: BigRational::one(),
            left: Word::one(),
            source: Source::Input(idx),
            right: Word::one(),
        }];
        if let Some(unit) = absorb(&mut completion, g.clone(), history, generators, deadline)? {
            return Ok(unit);
        }
    }
    while let Some(entry) = completion.queue.pop() {
        if Instant::now() > deadline {
            return Err(NcError::RewriteBudget);
        }
        let (s, history) = completion.s_polynomial(&entry);
        if let Some(unit) = absorb(&mut completion, s, history, generators, deadline)? {
            return Ok(unit);
        }
        if completion.basis.len() > max_basis {
            return Ok(BuchbergerOutcome::Inconclusive {
                basis: completion.basis.into_iter().map(|t| t.poly).collect(),
                degree_bound_hit: true,
                complete: false,
            });
        }
    }
    let degree_bound_hit = completion.degree_bound_hit;
    Ok(BuchbergerOutcome::Inconclusive {
        basis: completion.basis.into_iter().map(|t| t.poly).collect(),
        degree_bound_hit,
        complete: !degree_bound_hit,
    })
}

/// Reduces a candidate, checks for a unit, and otherwise installs it.
fn absorb(
    completion: &mut Completion,
    candidate: Poly,
    history: Vec<HistEntry>,
    generators: &[Poly],
    deadline: Instant,
) -> Result<Option<BuchbergerOutcome>, NcError> {
    let (reduced, mut history) =
        reduce_tracked(candidate, history, &completion.basis, deadline)?;
    if reduced.is_zero() {
        return Ok(None);
    }
    let (lead, lc) = {
        let (w, c) = reduced.leading().unwrap();
        (w.clone(), c.clone())
    };
    let inv = BigRational::one() / lc;
    for entry in history.iter_mut() {
        entry.coeff = &entry.coeff * &inv;
    }
    if lead.is_empty() {
        // A unit: flatten the provenance into a certificate over the
        // input generators and verify it by exact expansion.
        let mut memo = vec![None; completion.basis.len()];
        let mut certificate = Vec::new();
        flatten(&history, &completion.basis, &mut memo, &mut certificate)?;
        let expanded = expand_certificate(&certificate, generators);
        if expanded != Poly::one() {
            return Err(NcError::Script(
                "internal error: certificate does not expand to 1".into(),
            ));
        }
        return Ok(Some(BuchbergerOutcome::UnitFound { certificate }));
    }
    let monic = reduced.scale(&inv);
    completion.basis.push(Tracked {
        poly: monic,
        history,
    });
    let idx = completion.basis.len() - 1;
    completion.push_pairs(idx);
    Ok(None)
}
