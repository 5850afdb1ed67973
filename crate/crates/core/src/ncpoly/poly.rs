//! Non-commutative polynomials over the rationals in projector generators.
//!
//! A generator is a (vertex, color) pair; words are finite sequences of
//! generators; polynomials map words to exact rational coefficients.
//! Words are ordered degree-lexicographically so that leading monomials
//! give terminating rewrite orientations.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// A projector generator: `vertex` is a graph vertex index, `color` runs
/// from 1 to the palette size.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Gen {
    pub vertex: u32,
    pub color: u32,
}

impl Gen {
    pub fn new(vertex: u32, color: u32) -> Gen {
        Gen { vertex, color }
    }
}

/// A word in the free monoid on generators; the empty word is the
/// identity. Ordered by degree first, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word(pub Vec<Gen>);

impl Word {
    pub fn one() -> Word {
        Word(Vec::new())
    }

    pub fn single(g: Gen) -> Word {
        Word(vec![g])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat3(left: &[Gen], mid: &[Gen], right: &[Gen]) -> Word {
        let mut v = Vec::with_capacity(left.len() + mid.len() + right.len());
        v.extend_from_slice(left);
        v.extend_from_slice(mid);
        v.extend_from_slice(right);
        Word(v)
    }

    /// First position at which `pattern` occurs as a contiguous subword.
    pub fn find(&self, pattern: &Word) -> Option<usize> {
        if pattern.is_empty() || pattern.len() > self.len() {
            return None;
        }
        (0..=self.len() - pattern.len()).find(|&p| self.0[p..p + pattern.len()] == pattern.0[..])
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// A polynomial in canonical form: sorted terms, no zero coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly {
    pub terms: BTreeMap<Word, BigRational>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn one() -> Poly {
        Poly::constant(BigRational::one())
    }

    pub fn constant(q: BigRational) -> Poly {
        let mut p = Poly::zero();
        p.add_term(Word::one(), q);
        p
    }

    pub fn monomial(w: Word) -> Poly {
        let mut p = Poly::zero();
        p.add_term(w, BigRational::one());
        p
    }

    pub fn generator(g: Gen) -> Poly {
        Poly::monomial(Word::single(g))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: Word, q: BigRational) {
        if q.is_zero() {
            return;
        }
        let entry = self.terms.entry(w).or_insert_with(BigRational::zero);
        *entry += q;
        if entry.is_zero() {
            let key = self
                .terms
                .iter()
                .find(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone());
            if let Some(k) = key {
                self.terms.remove(&k);
            }
        }
    }

    pub fn leading(&self) -> Option<(&Word, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self) -> usize {
        self.leading().map(|(w, _)| w.len()).unwrap_or(0)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (w, q) in &other.terms {
            out.add_term(w.clone(), q.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (w, q) in &other.terms {
            out.add_term(w.clone(), -q.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(w, q)| (w.clone(), -q.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, q: &BigRational) -> Poly {
        if q.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c * q))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut w = w1.0.clone();
                w.extend_from_slice(&w2.0);
                out.add_term(Word(w), c1 * c2);
            }
        }
        out
    }

    /// Multiplies `left * self * right` with monomial contexts.
    pub fn sandwich(&self, left: &[Gen], right: &[Gen]) -> Poly {
        let mut out = Poly::zero();
        for (w, c) in &self.terms {
            out.add_term(Word::concat3(left, &w.0, right), c.clone());
        }
        out
    }

    /// The transpose anti-automorphism: reverse every word. Generators are
    /// formally self-adjoint, so this maps the projector ideal to itself.
    pub fn transpose(&self) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.reversed(), c.clone()))
                .collect(),
        }
    }

    /// Applies a function to every generator (color permutations and graph
    /// automorphisms: both send the axiom set to itself).
    pub fn map_gens(&self, f: impl Fn(Gen) -> Gen) -> Poly {
        let mut out = Poly::zero();
        for (w, c) in &self.terms {
            out.add_term(Word(w.0.iter().map(|&g| f(g)).collect()), c.clone());
        }
        out
    }

    /// Largest absolute coefficient, for diagnostics.
    pub fn coeff_bound(&self) -> BigRational {
        self.terms
            .values()
            .map(|q| q.abs())
            .max()
            .unwrap_or_else(BigRational::zero)
    }
}

/// Eliminates the last color: substitutes `v_c -> 1 - v_1 - ... - v_{c-1}`
/// for every vertex. A ring homomorphism, so completeness rearrangements
/// become exact identities after elimination.
pub fn eliminate(p: &Poly, c: u32) -> Poly {
    let mut out = Poly::zero();
    for (w, coeff) in &p.terms {
        let mut prod = Poly::constant(coeff.clone());
        for &g in &w.0 {
            let factor = if g.color == c {
                let mut f = Poly::one();
                for i in 1..c {
                    f = f.sub(&Poly::generator(Gen::new(g.vertex, i)));
                }
                f
            } else {
                Poly::generator(g)
            };
            prod = prod.mul(&factor);
        }
        out = out.add(&prod);
    }
    out
}

// ---------------------------------------------------------------------------
// Term list serialization: [coeff_num, coeff_den, [[vertex, color], ...]]
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct TermJson(pub i64, pub i64, pub Vec<(u32, u32)>);

pub fn poly_to_terms(p: &Poly) -> Vec<TermJson> {
    p.terms
        .iter()
        .map(|(w, c)| {
            let num: i64 = c.numer().try_into().expect("coefficient fits in i64");
            let den: i64 = c.denom().try_into().expect("coefficient fits in i64");
            TermJson(num, den, w.0.iter().map(|g| (g.vertex, g.color)).collect())
        })
        .collect()
}

pub fn poly_from_terms(terms: &[TermJson]) -> Result<Poly, String> {
    let mut p = Poly::zero();
    for TermJson(num, den, gens) in terms {
        if *den == 0 {
            return Err("zero denominator".into());
        }
        let word = Word(gens.iter().map(|&(v, c)| Gen::new(v, c)).collect());
        p.add_term(word, rational(*num, *den));
    }
    Ok(p)
}
