//! Koszul cochain complexes K^.(x; M) and their cohomology.
//!
//! The p-th chain layer is the free module on the p-subsets of the sequence,
//! listed lexicographically; the cochain complex is Hom(K_., M), so its
//! cohomology at spot i is computed by the same subquotient machinery that
//! serves Ext.

use crate::error::Result;
use crate::module::FPModule;
use crate::poly::Polynomial;
use crate::resolution::hom_complex_homology;
use crate::ring::QuotientRing;
use crate::vector::{FreeVector, VTerm};

#[derive(Debug, Clone)]
pub struct KoszulComplex {
    elements: Vec<Polynomial>,
    coefficients: FPModule,
    qring: QuotientRing,
    /// diffs[p-1] holds the columns of d_p: layer p -> layer p-1.
    diffs: Vec<Vec<FreeVector>>,
    layer_shifts: Vec<Vec<i64>>,
}

/// All p-subsets of 0..r in lexicographic order.
fn subsets(r: usize, p: usize) -> Vec<Vec<usize>> {
    if p > r {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..p).collect();
    loop {
        out.push(cur.clone());
        // advance to the next combination
        let mut i = p;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + r - p {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..p {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

impl KoszulComplex {
    pub fn new(elements: &[Polynomial], coefficients: &FPModule) -> Result<KoszulComplex> {
        let ring = coefficients.ring().clone();
        for x in elements {
            ring.same_ring(x.ring())?;
        }
        let r = elements.len();
        let degrees: Vec<i64> = elements
            .iter()
            .map(|x| x.homogeneous_degree().map(|d| d as i64).unwrap_or_else(|| {
                x.degree().unwrap_or(0) as i64
            }))
            .collect();
        let mut layer_shifts: Vec<Vec<i64>> = Vec::with_capacity(r + 1);
        let mut layer_subsets: Vec<Vec<Vec<usize>>> = Vec::with_capacity(r + 1);
        for p in 0..=r {
            let subs = subsets(r, p);
            layer_shifts.push(
                subs.iter()
                    .map(|s| s.iter().map(|&i| degrees[i]).sum())
                    .collect(),
            );
            layer_subsets.push(subs);
        }
        let mut diffs: Vec<Vec<FreeVector>> = Vec::with_capacity(r);
        let field = *ring.field();
        for p in 1..=r {
            let lower = &layer_subsets[p - 1];
            let lower_index = |s: &[usize]| lower.iter().position(|t| t == s).unwrap();
            let cols = layer_subsets[p]
                .iter()
                .map(|s| {
                    let mut raw: Vec<VTerm> = Vec::new();
                    for (k, &ik) in s.iter().enumerate() {
                        let mut face = s.clone();
                        face.remove(k);
                        let pos = lower_index(&face);
                        let sign = if k % 2 == 0 { 1 } else { field.characteristic() - 1 };
                        for t in elements[ik].terms() {
                            raw.push(VTerm {
                                pos,
                                mono: t.mono.clone(),
                                coef: field.mul(t.coef, sign),
                            });
                        }
                    }
                    FreeVector::from_raw(ring.clone(), lower.len(), raw)
                })
                .collect();
            diffs.push(cols);
        }
        #[cfg(debug_assertions)]
        for p in 2..=r {
            let upper = &diffs[p - 1];
            let lower = &diffs[p - 2];
            for col in upper {
                let mut acc = FreeVector::zero(ring.clone(), layer_subsets[p - 2].len());
                for t in col.terms() {
                    acc = acc.add(&lower[t.pos].mul_term(&t.mono, t.coef).unwrap());
                }
                debug_assert!(acc.is_zero(), "Koszul differentials do not compose to zero");
            }
        }
        Ok(KoszulComplex {
            elements: elements.to_vec(),
            coefficients: coefficients.clone(),
            qring: coefficients.quotient_ring(),
            diffs,
            layer_shifts,
        })
    }

    pub fn sequence_length(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    /// Rank of the i-th cochain layer, C(r, i).
    pub fn layer_rank(&self, i: usize) -> usize {
        self.layer_shifts.get(i).map_or(0, |s| s.len())
    }

    /// Columns of d_p for p in 1..=r.
    pub fn differential(&self, p: usize) -> Option<&[FreeVector]> {
        if p == 0 || p > self.diffs.len() {
            None
        } else {
            Some(&self.diffs[p - 1])
        }
    }

    /// H^i(K^.(x; M)) as a finitely presented subquotient; the zero module
    /// outside 0..=r.
    pub fn cohomology(&self, i: usize) -> Result<FPModule> {
        let r = self.sequence_length();
        if i > r {
            return Ok(FPModule::zero(&self.qring));
        }
        let out = (i < r).then(|| self.diffs[i].as_slice());
        let inc = (i > 0).then(|| (self.diffs[i - 1].as_slice(), self.layer_rank(i - 1)));
        hom_complex_homology(
            &self.qring,
            &self.coefficients,
            self.layer_rank(i),
            &self.layer_shifts[i],
            out,
            inc,
        )
    }
}

/// One-shot H^i(K^.(x; M)).
pub fn koszul_cohomology(i: usize, x: &[Polynomial], m: &FPModule) -> Result<FPModule> {
    KoszulComplex::new(x, m)?.cohomology(i)
}
