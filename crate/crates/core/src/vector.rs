//! Elements of free modules S^r: sparse position/monomial/coefficient terms.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::Result;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;
use crate::ring::Ring;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VTerm {
    pub pos: usize,
    pub mono: Monomial,
    pub coef: u64,
}

/// Orders on free-module terms, all built on a ring monomial order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModOrder {
    /// Term-over-position: compare monomials, ties go to the smaller position.
    Top(MonomialOrder),
    /// Position-over-term: smaller position dominates, ties compare monomials.
    Pot(MonomialOrder),
    /// Positions below `split` dominate those at or above it; inside a block,
    /// term-over-position. The elimination order behind syzygy computations.
    BlockTop { order: MonomialOrder, split: usize },
}

impl ModOrder {
    pub fn cmp(&self, a: &VTerm, b: &VTerm) -> Ordering {
        match self {
            ModOrder::Top(o) => o
                .cmp(&a.mono, &b.mono)
                .then_with(|| b.pos.cmp(&a.pos)),
            ModOrder::Pot(o) => b
                .pos
                .cmp(&a.pos)
                .then_with(|| o.cmp(&a.mono, &b.mono)),
            ModOrder::BlockTop { order, split } => {
                let ba = a.pos >= *split;
                let bb = b.pos >= *split;
                // block 0 (false) beats block 1 (true)
                bb.cmp(&ba)
                    .then_with(|| order.cmp(&a.mono, &b.mono))
                    .then_with(|| b.pos.cmp(&a.pos))
            }
        }
    }
}

/// An element of a free module S^rank in canonical form: combined terms,
/// no zero coefficients, sorted descending under Top(ring order).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FreeVector {
    ring: Arc<Ring>,
    rank: usize,
    terms: Vec<VTerm>,
}

impl FreeVector {
    pub fn from_raw(ring: Arc<Ring>, rank: usize, raw: Vec<VTerm>) -> FreeVector {
        let p = ring.field().characteristic();
        let mut acc: BTreeMap<(usize, Monomial), u64> = BTreeMap::new();
        for t in raw {
            debug_assert!(t.pos < rank);
            debug_assert_eq!(t.mono.len(), ring.num_vars());
            let e = acc.entry((t.pos, t.mono)).or_insert(0);
            *e = (*e + t.coef % p) % p;
        }
        let mut terms: Vec<VTerm> = acc
            .into_iter()
            .filter(|(_, c)| *c != 0)
            .map(|((pos, mono), coef)| VTerm { pos, mono, coef })
            .collect();
        let order = ModOrder::Top(ring.order());
        terms.sort_by(|a, b| order.cmp(b, a));
        FreeVector { ring, rank, terms }
    }

    pub fn zero(ring: Arc<Ring>, rank: usize) -> FreeVector {
        FreeVector { ring, rank, terms: Vec::new() }
    }

    pub fn basis(ring: Arc<Ring>, rank: usize, pos: usize) -> FreeVector {
        let n = ring.num_vars();
        FreeVector::from_raw(
            ring,
            rank,
            vec![VTerm { pos, mono: Monomial::one(n), coef: 1 }],
        )
    }

    pub fn from_components(ring: Arc<Ring>, components: &[Polynomial]) -> FreeVector {
        let rank = components.len();
        let mut raw = Vec::new();
        for (pos, f) in components.iter().enumerate() {
            for t in f.terms() {
                raw.push(VTerm { pos, mono: t.mono.clone(), coef: t.coef });
            }
        }
        FreeVector::from_raw(ring, rank, raw)
    }

    pub fn from_poly(f: &Polynomial) -> FreeVector {
        FreeVector::from_components(f.ring().clone(), std::slice::from_ref(f))
    }

    pub fn component(&self, pos: usize) -> Polynomial {
        Polynomial::from_terms(
            self.ring.clone(),
            self.terms
                .iter()
                .filter(|t| t.pos == pos)
                .map(|t| (t.mono.clone(), t.coef))
                .collect(),
        )
    }

    pub fn components(&self) -> Vec<Polynomial> {
        (0..self.rank).map(|i| self.component(i)).collect()
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> &[VTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: u64) -> FreeVector {
        let f = self.ring.field();
        let c = c % f.characteristic();
        if c == 0 {
            return FreeVector::zero(self.ring.clone(), self.rank);
        }
        FreeVector {
            ring: self.ring.clone(),
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|t| VTerm { pos: t.pos, mono: t.mono.clone(), coef: f.mul(t.coef, c) })
                .collect(),
        }
    }

    pub fn add(&self, other: &FreeVector) -> FreeVector {
        debug_assert_eq!(self.rank, other.rank);
        let mut raw: Vec<VTerm> = self.terms.clone();
        raw.extend(other.terms.iter().cloned());
        FreeVector::from_raw(self.ring.clone(), self.rank, raw)
    }

    pub fn sub(&self, other: &FreeVector) -> FreeVector {
        let f = self.ring.field();
        let mut raw: Vec<VTerm> = self.terms.clone();
        raw.extend(other.terms.iter().map(|t| VTerm {
            pos: t.pos,
            mono: t.mono.clone(),
            coef: f.neg(t.coef),
        }));
        FreeVector::from_raw(self.ring.clone(), self.rank, raw)
    }

    /// Multiply by a ring element.
    pub fn mul_poly(&self, g: &Polynomial) -> Result<FreeVector> {
        let f = self.ring.field();
        let mut raw = Vec::with_capacity(self.terms.len() * g.terms().len());
        for t in &self.terms {
            for u in g.terms() {
                raw.push(VTerm {
                    pos: t.pos,
                    mono: t.mono.mul(&u.mono)?,
                    coef: f.mul(t.coef, u.coef),
                });
            }
        }
        Ok(FreeVector::from_raw(self.ring.clone(), self.rank, raw))
    }

    pub fn mul_term(&self, mono: &Monomial, coef: u64) -> Result<FreeVector> {
        let f = self.ring.field();
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let c = f.mul(t.coef, coef);
            if c != 0 {
                terms.push(VTerm { pos: t.pos, mono: t.mono.mul(mono)?, coef: c });
            }
        }
        Ok(FreeVector { ring: self.ring.clone(), rank: self.rank, terms })
    }

    /// Pad with zero components on the right up to `rank`.
    pub fn extend_rank(&self, rank: usize) -> FreeVector {
        debug_assert!(rank >= self.rank);
        FreeVector { ring: self.ring.clone(), rank, terms: self.terms.clone() }
    }

    /// Keep positions in [from, to), re-based at zero.
    pub fn slice(&self, from: usize, to: usize) -> FreeVector {
        FreeVector {
            ring: self.ring.clone(),
            rank: to - from,
            terms: self
                .terms
                .iter()
                .filter(|t| t.pos >= from && t.pos < to)
                .map(|t| VTerm { pos: t.pos - from, mono: t.mono.clone(), coef: t.coef })
                .collect(),
        }
    }

    /// Shift all positions up by `offset` inside a larger free module.
    pub fn shift_positions(&self, offset: usize, rank: usize) -> FreeVector {
        debug_assert!(self.rank + offset <= rank);
        FreeVector {
            ring: self.ring.clone(),
            rank,
            terms: self
                .terms
                .iter()
                .map(|t| VTerm { pos: t.pos + offset, mono: t.mono.clone(), coef: t.coef })
                .collect(),
        }
    }

    /// Degree of each term with respect to shifts of the ambient free module;
    /// Some(d) when all terms agree (zero vector reports Some(0)).
    pub fn homogeneous_degree(&self, shifts: &[i64]) -> Option<i64> {
        let mut it = self
            .terms
            .iter()
            .map(|t| t.mono.degree() as i64 + shifts[t.pos]);
        match it.next() {
            None => Some(0),
            Some(d) => it.all(|e| e == d).then_some(d),
        }
    }
}
