//! Finitely presented graded modules M = coker(F1 -> F0) over the ambient
//! polynomial ring, with the quotient ideal of the working ring absorbed
//! into the relations.

use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::exec;
use crate::groebner::{syzygy_module, tagged_basis, TaggedBasis};
use crate::ideal::Ideal;
use crate::poly::Polynomial;
use crate::ring::{QuotientRing, Ring};
use crate::vector::FreeVector;

/// A finitely presented module over R = S/J, carried over S. Relations
/// always contain J times every basis element of F0, so the cokernel is an
/// R-module on the nose.
#[derive(Debug, Clone)]
pub struct FPModule {
    ring: Arc<Ring>,
    jquot: Vec<Polynomial>,
    rank0: usize,
    shifts: Vec<i64>,
    relations: Vec<FreeVector>,
    membership: OnceLock<Arc<TaggedBasis>>,
}

impl FPModule {
    pub fn new(
        qring: &QuotientRing,
        rank0: usize,
        shifts: Vec<i64>,
        relations: Vec<FreeVector>,
    ) -> Result<FPModule> {
        let ring = qring.base().clone();
        assert_eq!(shifts.len(), rank0);
        let mut rels: Vec<FreeVector> = Vec::new();
        for c in relations {
            ring.same_ring(c.ring())?;
            if c.rank() != rank0 {
                return Err(Error::Precondition(format!(
                    "relation column rank {} does not match F0 rank {rank0}",
                    c.rank()
                )));
            }
            if !c.is_zero() {
                rels.push(c);
            }
        }
        for g in qring.quotient_gens() {
            for t in 0..rank0 {
                let col = FreeVector::basis(ring.clone(), rank0, t).mul_poly(g)?;
                rels.push(col);
            }
        }
        Ok(FPModule {
            ring,
            jquot: qring.quotient_gens().to_vec(),
            rank0,
            shifts,
            relations: rels,
            membership: OnceLock::new(),
        })
    }

    pub fn zero(qring: &QuotientRing) -> FPModule {
        FPModule::new(qring, 0, Vec::new(), Vec::new()).expect("zero module is always valid")
    }

    pub fn free(qring: &QuotientRing, rank: usize) -> FPModule {
        FPModule::new(qring, rank, vec![0; rank], Vec::new()).expect("free module is always valid")
    }

    /// S/(I + J) presented on one generator.
    pub fn cyclic(qring: &QuotientRing, ideal: &Ideal) -> Result<FPModule> {
        let ring = qring.base().clone();
        ring.same_ring(ideal.ring())?;
        let relations = ideal
            .gens()
            .iter()
            .map(|g| FreeVector::from_poly(g))
            .collect();
        FPModule::new(qring, 1, vec![0], relations)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn quotient_ring(&self) -> QuotientRing {
        QuotientRing::new(self.ring.clone(), self.jquot.clone())
            .expect("quotient generators were validated at construction")
    }

    pub fn over_polynomial_ring(&self) -> bool {
        self.jquot.is_empty()
    }

    pub fn rank0(&self) -> usize {
        self.rank0
    }

    pub fn shifts(&self) -> &[i64] {
        &self.shifts
    }

    pub fn relations(&self) -> &[FreeVector] {
        &self.relations
    }

    /// Tagged basis of the relation module: membership, lifts, syzygies.
    pub fn relation_basis(&self) -> &Arc<TaggedBasis> {
        self.membership
            .get_or_init(|| Arc::new(tagged_basis(&self.relations, &self.ring, self.rank0)))
    }

    /// Normal form of an ambient vector modulo the relations.
    pub fn reduce(&self, v: &FreeVector) -> FreeVector {
        self.relation_basis().reduce(v).0
    }

    pub fn is_zero(&self) -> bool {
        (0..self.rank0).all(|t| {
            self.relation_basis()
                .contains(&FreeVector::basis(self.ring.clone(), self.rank0, t))
        })
    }

    /// All relation columns homogeneous with respect to the shifts.
    pub fn is_graded(&self) -> bool {
        self.relations
            .iter()
            .all(|c| c.homogeneous_degree(&self.shifts).is_some())
    }

    /// Ann(M) as the intersection over F0 basis elements of (relations : e).
    pub fn annihilator(&self) -> Result<Ideal> {
        if self.rank0 == 0 {
            return Ok(Ideal::unit(self.ring.clone()));
        }
        let per_basis: Vec<Result<Ideal>> = exec::map_range(self.rank0, |t| {
            let mut columns = Vec::with_capacity(self.relations.len() + 1);
            columns.push(FreeVector::basis(self.ring.clone(), self.rank0, t));
            columns.extend(self.relations.iter().cloned());
            let syz = syzygy_module(&columns, &self.ring, self.rank0);
            let gens: Vec<Polynomial> = syz.iter().map(|s| s.component(0)).collect();
            Ideal::new(self.ring.clone(), gens)
        });
        let mut acc: Option<Ideal> = None;
        for part in per_basis {
            let part = part?;
            acc = Some(match acc {
                None => part,
                Some(i) => i.intersection(&part)?,
            });
        }
        Ok(acc.unwrap())
    }

    /// dim(S/Ann M); -1 exactly for the zero module.
    pub fn dimension(&self) -> Result<i64> {
        Ok(self.annihilator()?.dimension())
    }

    /// Presentation of (gens)/(rels) inside this module's ambient F0. Every
    /// rel must lie in the span of the gens; relations of the carrier module
    /// must be included in `rels` by the caller when the subquotient is
    /// meant inside M rather than inside the free module.
    pub fn subquotient(
        qring: &QuotientRing,
        ambient_shifts: &[i64],
        gens: &[FreeVector],
        rels: &[FreeVector],
    ) -> Result<FPModule> {
        let ring = qring.base().clone();
        let gens: Vec<FreeVector> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
        if gens.is_empty() {
            return Ok(FPModule::zero(qring));
        }
        let ambient_rank = gens[0].rank();
        let tb = tagged_basis(&gens, &ring, ambient_rank);
        let mut new_rels: Vec<FreeVector> = Vec::new();
        for (idx, r) in rels.iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            match tb.lift(r) {
                Some(coefs) => new_rels.push(FreeVector::from_components(ring.clone(), &coefs)),
                None => {
                    return Err(Error::Precondition(format!(
                        "relation column {idx} is not contained in the span of the generators"
                    )))
                }
            }
        }
        for s in tb.syzygies() {
            new_rels.push(s);
        }
        let shifts: Vec<i64> = gens
            .iter()
            .map(|g| g.homogeneous_degree(ambient_shifts).unwrap_or(0))
            .collect();
        FPModule::new(qring, gens.len(), shifts, new_rels)
    }

    /// Columns spanning (x_prev)M + relations inside F0.
    fn submodule_of_multiples(&self, x_prev: &[Polynomial]) -> Result<Vec<FreeVector>> {
        let mut cols = Vec::new();
        for x in x_prev {
            for t in 0..self.rank0 {
                cols.push(FreeVector::basis(self.ring.clone(), self.rank0, t).mul_poly(x)?);
            }
        }
        cols.extend(self.relations.iter().cloned());
        Ok(cols)
    }

    /// The step module ((x_prev)M :_M x_i)/(x_prev)M of a weak-sequence
    /// check: colon computed as the preimage of (x_prev)M + relations under
    /// multiplication by x_i.
    pub fn colon_step(&self, x_prev: &[Polynomial], x_i: &Polynomial) -> Result<FPModule> {
        self.ring.same_ring(x_i.ring())?;
        if self.rank0 == 0 {
            return Ok(FPModule::zero(&self.quotient_ring()));
        }
        let u_cols = self.submodule_of_multiples(x_prev)?;
        // syzygies of [x_i e_0 .. x_i e_{m-1}, U...]: first m coordinates
        // run over all v with x_i v in U
        let mut columns = Vec::with_capacity(self.rank0 + u_cols.len());
        for t in 0..self.rank0 {
            columns.push(FreeVector::basis(self.ring.clone(), self.rank0, t).mul_poly(x_i)?);
        }
        columns.extend(u_cols.iter().cloned());
        let syz = syzygy_module(&columns, &self.ring, self.rank0);
        let mut gens: Vec<FreeVector> = syz
            .iter()
            .map(|s| {
                let v = s.slice(0, self.rank0);
                let mut raw = Vec::new();
                for t in v.terms() {
                    raw.push(t.clone());
                }
                FreeVector::from_raw(self.ring.clone(), self.rank0, raw)
            })
            .filter(|v| !v.is_zero())
            .collect();
        gens.extend(u_cols.iter().cloned());
        FPModule::subquotient(&self.quotient_ring(), &self.shifts, &gens, &u_cols)
    }

    /// M/(xs)M with the same generators.
    pub fn quotient_by_elements(&self, xs: &[Polynomial]) -> Result<FPModule> {
        let mut rels = self.relations.clone();
        for x in xs {
            self.ring.same_ring(x.ring())?;
            for t in 0..self.rank0 {
                rels.push(FreeVector::basis(self.ring.clone(), self.rank0, t).mul_poly(x)?);
            }
        }
        FPModule::new(&self.quotient_ring(), self.rank0, self.shifts.clone(), rels)
    }

    pub fn direct_sum(&self, other: &FPModule) -> Result<FPModule> {
        self.ring.same_ring(&other.ring)?;
        if self.jquot != other.jquot {
            return Err(Error::RingMismatch(
                "direct sum of modules over different quotient rings".into(),
            ));
        }
        let rank = self.rank0 + other.rank0;
        let mut shifts = self.shifts.clone();
        shifts.extend_from_slice(&other.shifts);
        let mut rels: Vec<FreeVector> = self
            .relations
            .iter()
            .map(|c| c.extend_rank(rank))
            .collect();
        rels.extend(other.relations.iter().map(|c| c.shift_positions(self.rank0, rank)));
        FPModule::new(&self.quotient_ring(), rank, shifts, rels)
    }

    /// Greedy minimal generating set by ascending degree; correct for
    /// homogeneous inputs by graded Nakayama.
    pub fn minimal_generators(
        ring: &Arc<Ring>,
        ambient_rank: usize,
        ambient_shifts: &[i64],
        cols: &[FreeVector],
    ) -> Vec<FreeVector> {
        let mut idx: Vec<usize> = (0..cols.len()).filter(|&i| !cols[i].is_zero()).collect();
        let degree = |v: &FreeVector| -> i64 {
            v.homogeneous_degree(ambient_shifts).unwrap_or_else(|| {
                v.terms()
                    .iter()
                    .map(|t| t.mono.degree() as i64 + ambient_shifts[t.pos])
                    .max()
                    .unwrap_or(0)
            })
        };
        idx.sort_by_key(|&i| (degree(&cols[i]), i));
        let mut kept: Vec<FreeVector> = Vec::new();
        for i in idx {
            if kept.is_empty() {
                kept.push(cols[i].clone());
                continue;
            }
            let tb = tagged_basis(&kept, ring, ambient_rank);
            if !tb.contains(&cols[i]) {
                kept.push(cols[i].clone());
            }
        }
        kept
    }

    /// Minimal presentation: minimal relation generators, then repeated
    /// pruning of constant (degree-zero unit) entries with the matching F0
    /// row. The result presents an isomorphic module.
    pub fn minimal_presentation(&self) -> Result<FPModule> {
        let mut rank = self.rank0;
        let mut shifts = self.shifts.clone();
        let mut rels =
            FPModule::minimal_generators(&self.ring, rank, &shifts, &self.relations);
        let field = *self.ring.field();
        loop {
            let mut pivot: Option<(usize, usize, u64)> = None;
            'scan: for (j, col) in rels.iter().enumerate() {
                for t in col.terms() {
                    if t.mono.is_one() {
                        pivot = Some((j, t.pos, t.coef));
                        break 'scan;
                    }
                }
            }
            let Some((j, row, c)) = pivot else { break };
            let pivot_col = rels[j].scale(field.inv(c));
            let mut next: Vec<FreeVector> = Vec::new();
            for (jj, col) in rels.iter().enumerate() {
                if jj == j {
                    continue;
                }
                let entry = col.component(row);
                let cleared = if entry.is_zero() {
                    col.clone()
                } else {
                    col.sub(&pivot_col.mul_poly(&entry)?)
                };
                next.push(cleared);
            }
            // delete the pivot row
            rank -= 1;
            shifts.remove(row);
            rels = next
                .into_iter()
                .map(|c| delete_row(&c, row, rank))
                .filter(|c| !c.is_zero())
                .collect();
        }
        let rels = FPModule::minimal_generators(&self.ring, rank, &shifts, &rels);
        let qring = self.quotient_ring();
        // J columns get re-absorbed by the constructor; harmless duplicates
        // were already minimized away above.
        FPModule::new(&qring, rank, shifts, rels)
    }
}

fn delete_row(v: &FreeVector, row: usize, new_rank: usize) -> FreeVector {
    let ring = v.ring().clone();
    let terms = v
        .terms()
        .iter()
        .filter(|t| t.pos != row)
        .map(|t| crate::vector::VTerm {
            pos: if t.pos > row { t.pos - 1 } else { t.pos },
            mono: t.mono.clone(),
            coef: t.coef,
        })
        .collect();
    FreeVector::from_raw(ring, new_rank, terms)
}
