//! Buchberger engine for ideals and submodules of free modules, plus the
//! tagged (elimination) bases that deliver membership, lifts and syzygies in
//! one computation.
//!
//! S-pairs are processed in the normal strategy: smallest lcm degree first,
//! ties by pair index, so bases are deterministic for a fixed input and
//! order. The product criterion is applied only in rank one, where it is
//! valid; the chain criterion is applied everywhere.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashSet};
use std::sync::Arc;

use crate::error::Result;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;
use crate::ring::Ring;
use crate::vector::{FreeVector, ModOrder, VTerm};

/// A Groebner basis of an ideal under a fixed monomial order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Arc<Ring>,
    elements: Vec<Polynomial>,
    reduced: bool,
}

impl GroebnerBasis {
    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn order(&self) -> MonomialOrder {
        self.ring.order()
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_constant() && !self.elements[0].is_zero()
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        normal_form(f, self).is_zero()
    }
}

/// Reduced Groebner basis of the given generators under `order`.
pub fn buchberger(ring: &Arc<Ring>, gens: &[Polynomial], order: MonomialOrder) -> Result<GroebnerBasis> {
    let ring = ring.with_order(order);
    for g in gens {
        ring.same_ring(&g.ring().with_order(order))?;
    }
    let columns: Vec<FreeVector> = gens
        .iter()
        .map(|g| FreeVector::from_poly(&g.with_ring(&ring)))
        .collect();
    let basis = module_buchberger(&columns, ModOrder::Top(order), &ring, 1);
    let elements = basis.iter().map(|v| v.component(0)).collect();
    Ok(GroebnerBasis { ring, elements, reduced: true })
}

/// Unique remainder of f modulo a reduced basis; zero iff f is a member.
pub fn normal_form(f: &Polynomial, gb: &GroebnerBasis) -> Polynomial {
    if gb.elements.is_empty() {
        return f.clone();
    }
    let order = ModOrder::Top(gb.ring.order());
    let v = FreeVector::from_poly(&f.with_ring(&gb.ring));
    let basis: Vec<FreeVector> = gb.elements.iter().map(FreeVector::from_poly).collect();
    let r = vector_normal_form(&v, &basis, order);
    r.component(0).with_ring(f.ring())
}

// ---------------------------------------------------------------------------
// Engine internals: vectors as term lists sorted descending under a ModOrder.
// ---------------------------------------------------------------------------

type Terms = Vec<VTerm>;

struct Engine<'a> {
    ring: &'a Arc<Ring>,
    order: ModOrder,
    rank: usize,
}

impl<'a> Engine<'a> {
    fn canon(&self, raw: Vec<VTerm>) -> Terms {
        let p = self.ring.field().characteristic();
        let mut acc: BTreeMap<(usize, Monomial), u64> = BTreeMap::new();
        for t in raw {
            let e = acc.entry((t.pos, t.mono)).or_insert(0);
            *e = (*e + t.coef % p) % p;
        }
        let mut terms: Vec<VTerm> = acc
            .into_iter()
            .filter(|(_, c)| *c != 0)
            .map(|((pos, mono), coef)| VTerm { pos, mono, coef })
            .collect();
        terms.sort_by(|a, b| self.order.cmp(b, a));
        terms
    }

    /// a - c * m * b, both inputs sorted descending; the result stays sorted.
    fn sub_mult(&self, a: &Terms, b: &Terms, m: &Monomial, c: u64) -> Terms {
        let field = self.ring.field();
        let mut out = Vec::with_capacity(a.len() + b.len());
        let mut i = 0;
        let mut j = 0;
        while i < a.len() || j < b.len() {
            let scaled = if j < b.len() {
                let t = &b[j];
                Some(VTerm {
                    pos: t.pos,
                    mono: t.mono.mul(m).expect("exponent overflow in reduction"),
                    coef: field.neg(field.mul(t.coef, c)),
                })
            } else {
                None
            };
            if i >= a.len() {
                let s = scaled.unwrap();
                if s.coef != 0 {
                    out.push(s);
                }
                j += 1;
                continue;
            }
            match scaled {
                None => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Some(s) => match self.order.cmp(&a[i], &s) {
                    std::cmp::Ordering::Greater => {
                        out.push(a[i].clone());
                        i += 1;
                    }
                    std::cmp::Ordering::Less => {
                        if s.coef != 0 {
                            out.push(s);
                        }
                        j += 1;
                    }
                    std::cmp::Ordering::Equal => {
                        let coef = field.add(a[i].coef, s.coef);
                        if coef != 0 {
                            out.push(VTerm { pos: s.pos, mono: s.mono, coef });
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
        out
    }

    /// Full normal form: every term of the output is irreducible by the
    /// leading terms of the basis.
    fn reduce(&self, f: Terms, basis: &[Terms]) -> Terms {
        let field = self.ring.field();
        let mut out: Terms = Vec::new();
        let mut work = f;
        'outer: while let Some(lead) = work.first().cloned() {
            for g in basis {
                let glt = match g.first() {
                    Some(t) => t,
                    None => continue,
                };
                if glt.pos == lead.pos && glt.mono.divides(&lead.mono) {
                    let m = glt.mono.quotient(&lead.mono);
                    let c = field.div(lead.coef, glt.coef);
                    work = self.sub_mult(&work, g, &m, c);
                    continue 'outer;
                }
            }
            out.push(lead);
            work.remove(0);
        }
        out
    }

    fn monic(&self, f: Terms) -> Terms {
        match f.first() {
            None => f,
            Some(lt) => {
                let inv = self.ring.field().inv(lt.coef);
                let field = self.ring.field();
                f.into_iter()
                    .map(|t| VTerm { pos: t.pos, mono: t.mono, coef: field.mul(t.coef, inv) })
                    .collect()
            }
        }
    }

    fn s_pair(&self, f: &Terms, g: &Terms) -> Terms {
        let ltf = f.first().unwrap();
        let ltg = g.first().unwrap();
        debug_assert_eq!(ltf.pos, ltg.pos);
        let lcm = ltf.mono.lcm(&ltg.mono);
        let field = self.ring.field();
        let mf = ltf.mono.quotient(&lcm);
        let mg = ltg.mono.quotient(&lcm);
        // f-part minus g-part, both normalized to leading coefficient 1
        let lhs: Terms = f
            .iter()
            .map(|t| VTerm {
                pos: t.pos,
                mono: t.mono.mul(&mf).expect("exponent overflow in s-pair"),
                coef: field.div(t.coef, ltf.coef),
            })
            .collect();
        self.sub_mult(&lhs, g, &mg, field.inv(ltg.coef))
    }

    fn buchberger(&self, inputs: Vec<Terms>) -> Vec<Terms> {
        let mut basis: Vec<Terms> = inputs
            .into_iter()
            .filter(|f| !f.is_empty())
            .map(|f| self.monic(f))
            .collect();
        let mut queue: BinaryHeap<Reverse<(u64, usize, usize)>> = BinaryHeap::new();
        let mut pending: HashSet<(usize, usize)> = HashSet::new();
        let push_pairs = |basis: &[Terms],
                              upto: usize,
                              j: usize,
                              queue: &mut BinaryHeap<Reverse<(u64, usize, usize)>>,
                              pending: &mut HashSet<(usize, usize)>| {
            let ltj = basis[j].first().unwrap();
            for i in 0..upto {
                let lti = basis[i].first().unwrap();
                if lti.pos == ltj.pos {
                    let d = lti.mono.lcm(&ltj.mono).degree();
                    queue.push(Reverse((d, i, j)));
                    pending.insert((i, j));
                }
            }
        };
        for j in 0..basis.len() {
            push_pairs(&basis, j, j, &mut queue, &mut pending);
        }
        while let Some(Reverse((_, i, j))) = queue.pop() {
            if !pending.remove(&(i, j)) {
                continue;
            }
            let lti = basis[i].first().unwrap().clone();
            let ltj = basis[j].first().unwrap().clone();
            // product criterion: valid for polynomials, not for module vectors
            if self.rank == 1 && lti.mono.coprime(&ltj.mono) {
                continue;
            }
            // chain criterion
            let lcm = lti.mono.lcm(&ltj.mono);
            let chained = (0..basis.len()).any(|k| {
                if k == i || k == j {
                    return false;
                }
                let ltk = basis[k].first().unwrap();
                ltk.pos == lti.pos
                    && ltk.mono.divides(&lcm)
                    && !pending.contains(&key(i, k))
                    && !pending.contains(&key(j, k))
            });
            if chained {
                continue;
            }
            let s = self.s_pair(&basis[i], &basis[j]);
            let r = self.reduce(s, &basis);
            if !r.is_empty() {
                let r = self.monic(r);
                basis.push(r);
                let j = basis.len() - 1;
                push_pairs(&basis, j, j, &mut queue, &mut pending);
            }
        }
        let reduced = self.reduce_basis(basis);
        #[cfg(debug_assertions)]
        self.assert_buchberger_criterion(&reduced);
        reduced
    }

    /// Inter-reduce: drop elements whose leading term another divides, fully
    /// reduce every tail, normalize leading coefficients to 1 and sort
    /// ascending by leading term.
    fn reduce_basis(&self, basis: Vec<Terms>) -> Vec<Terms> {
        let mut idx: Vec<usize> = (0..basis.len()).collect();
        idx.sort_by(|&a, &b| self.order.cmp(basis[a].first().unwrap(), basis[b].first().unwrap()));
        let mut kept: Vec<Terms> = Vec::new();
        for &i in &idx {
            let lt = basis[i].first().unwrap();
            let redundant = kept.iter().any(|g| {
                let glt = g.first().unwrap();
                glt.pos == lt.pos && glt.mono.divides(&lt.mono)
            });
            if !redundant {
                kept.push(basis[i].clone());
            }
        }
        let snapshot = kept.clone();
        for (i, g) in kept.iter_mut().enumerate() {
            let others: Vec<Terms> = snapshot
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, h)| h.clone())
                .collect();
            *g = self.monic(self.reduce(std::mem::take(g), &others));
        }
        kept.sort_by(|a, b| self.order.cmp(a.first().unwrap(), b.first().unwrap()));
        kept
    }

    #[cfg(debug_assertions)]
    fn assert_buchberger_criterion(&self, basis: &[Terms]) {
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                if basis[i].first().unwrap().pos != basis[j].first().unwrap().pos {
                    continue;
                }
                let s = self.s_pair(&basis[i], &basis[j]);
                let r = self.reduce(s, basis);
                assert!(r.is_empty(), "Buchberger criterion failed on pair ({i}, {j})");
            }
        }
    }
}

fn key(a: usize, b: usize) -> (usize, usize) {
    if a < b { (a, b) } else { (b, a) }
}

/// Reduced Groebner basis of a submodule of S^rank given by `columns`.
pub fn module_buchberger(
    columns: &[FreeVector],
    order: ModOrder,
    ring: &Arc<Ring>,
    rank: usize,
) -> Vec<FreeVector> {
    let engine = Engine { ring, order, rank };
    let inputs: Vec<Terms> = columns.iter().map(|v| engine.canon(v.terms().to_vec())).collect();
    engine
        .buchberger(inputs)
        .into_iter()
        .map(|t| FreeVector::from_raw(ring.clone(), rank, t))
        .collect()
}

/// Full normal form of v modulo a module basis.
pub fn vector_normal_form(v: &FreeVector, basis: &[FreeVector], order: ModOrder) -> FreeVector {
    let ring = v.ring().clone();
    let engine = Engine { ring: &ring, order, rank: v.rank() };
    let b: Vec<Terms> = basis.iter().map(|g| engine.canon(g.terms().to_vec())).collect();
    let r = engine.reduce(engine.canon(v.terms().to_vec()), &b);
    FreeVector::from_raw(ring.clone(), v.rank(), r)
}

/// Groebner basis of the graph module {(c_j, e_j)} under an order that
/// eliminates the ambient block: one computation answering membership,
/// lifting and syzygies for the input columns.
#[derive(Debug)]
pub struct TaggedBasis {
    ring: Arc<Ring>,
    ambient_rank: usize,
    num_columns: usize,
    order: ModOrder,
    gb: Vec<Terms>,
}

pub fn tagged_basis(columns: &[FreeVector], ring: &Arc<Ring>, ambient_rank: usize) -> TaggedBasis {
    let k = columns.len();
    let total = ambient_rank + k;
    let order = ModOrder::BlockTop { order: ring.order(), split: ambient_rank };
    let engine = Engine { ring, order, rank: total };
    let inputs: Vec<Terms> = columns
        .iter()
        .enumerate()
        .map(|(j, c)| {
            debug_assert_eq!(c.rank(), ambient_rank);
            let mut raw = c.terms().to_vec();
            raw.push(VTerm {
                pos: ambient_rank + j,
                mono: Monomial::one(ring.num_vars()),
                coef: 1,
            });
            engine.canon(raw)
        })
        .collect();
    let gb = engine.buchberger(inputs);
    TaggedBasis { ring: ring.clone(), ambient_rank, num_columns: k, order, gb }
}

impl TaggedBasis {
    /// Reduce an ambient vector: remainder plus coefficients q with
    /// v = sum q_j c_j + remainder. Only ambient-leading basis elements are
    /// used, so the remainder is a true normal form modulo the column span.
    pub fn reduce(&self, v: &FreeVector) -> (FreeVector, Vec<Polynomial>) {
        debug_assert_eq!(v.rank(), self.ambient_rank);
        let engine = Engine { ring: &self.ring, order: self.order, rank: self.ambient_rank + self.num_columns };
        let field = self.ring.field();
        let mut work = engine.canon(
            v.terms()
                .iter()
                .map(|t| VTerm { pos: t.pos, mono: t.mono.clone(), coef: t.coef })
                .collect(),
        );
        let mut remainder: Terms = Vec::new();
        'outer: while let Some(lead) = work.first().cloned() {
            if lead.pos >= self.ambient_rank {
                break;
            }
            for g in &self.gb {
                let glt = g.first().unwrap();
                if glt.pos == lead.pos && glt.mono.divides(&lead.mono) {
                    let m = glt.mono.quotient(&lead.mono);
                    let c = field.div(lead.coef, glt.coef);
                    work = engine.sub_mult(&work, g, &m, c);
                    continue 'outer;
                }
            }
            remainder.push(lead);
            work.remove(0);
        }
        // whatever is left lives in the tag block and equals -q
        let rem = FreeVector::from_raw(self.ring.clone(), self.ambient_rank, remainder);
        let tags = FreeVector::from_raw(
            self.ring.clone(),
            self.ambient_rank + self.num_columns,
            work,
        );
        let coefs = (0..self.num_columns)
            .map(|j| tags.component(self.ambient_rank + j).neg())
            .collect();
        (rem, coefs)
    }

    pub fn contains(&self, v: &FreeVector) -> bool {
        self.reduce(v).0.is_zero()
    }

    /// Write v as a combination of the columns, if it lies in their span.
    pub fn lift(&self, v: &FreeVector) -> Option<Vec<Polynomial>> {
        let (rem, coefs) = self.reduce(v);
        rem.is_zero().then_some(coefs)
    }

    /// Generators of the syzygy module of the columns, as vectors in S^k.
    pub fn syzygies(&self) -> Vec<FreeVector> {
        self.gb
            .iter()
            .filter(|g| g.first().map_or(false, |t| t.pos >= self.ambient_rank))
            .map(|g| {
                FreeVector::from_raw(
                    self.ring.clone(),
                    self.num_columns,
                    g.iter()
                        .map(|t| {
                            debug_assert!(t.pos >= self.ambient_rank);
                            VTerm {
                                pos: t.pos - self.ambient_rank,
                                mono: t.mono.clone(),
                                coef: t.coef,
                            }
                        })
                        .collect(),
                )
            })
            .collect()
    }
}

/// Generators of the kernel of S^k -> S^rank, e_j -> columns[j].
pub fn syzygy_module(columns: &[FreeVector], ring: &Arc<Ring>, ambient_rank: usize) -> Vec<FreeVector> {
    if columns.is_empty() {
        return Vec::new();
    }
    tagged_basis(columns, ring, ambient_rank).syzygies()
}
