//! Graded free resolutions over the ambient polynomial ring and the Ext
//! modules computed from them.
//!
//! Resolutions are built by iterated syzygies of a minimal presentation,
//! pruning to minimal generators at each step, so lengths stay within the
//! Hilbert syzygy bound. Ext^i(N, M) is the homology of Hom(F_., M) at spot
//! i, presented as a subquotient module.

use crate::error::{Error, Result};
use crate::exec;
use crate::groebner::syzygy_module;
use crate::module::FPModule;
use crate::ring::QuotientRing;
use crate::vector::{FreeVector, VTerm};

/// Chain of maps F_L -> ... -> F_1 -> F_0 with coker(F_1 -> F_0) = M.
/// `maps[k]` holds the columns of the map F_{k+1} -> F_k.
#[derive(Debug, Clone)]
pub struct FreeResolution {
    rank0: usize,
    shifts: Vec<Vec<i64>>,
    maps: Vec<Vec<FreeVector>>,
}

impl FreeResolution {
    /// Rank of F_k; zero beyond the computed maps (the resolution stopped).
    pub fn rank(&self, k: usize) -> usize {
        if k == 0 {
            self.rank0
        } else {
            self.maps.get(k - 1).map_or(0, |m| m.len())
        }
    }

    pub fn shifts(&self, k: usize) -> &[i64] {
        &self.shifts[k]
    }

    pub fn maps(&self) -> &[Vec<FreeVector>] {
        &self.maps
    }

    pub fn length(&self) -> usize {
        self.maps.len()
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        (0..=self.maps.len()).map(|k| self.rank(k)).collect()
    }
}

/// Resolve M to at most `length` maps; stops early once a kernel vanishes.
/// Only meaningful over the ambient polynomial ring (callers over quotient
/// rings go through the Koszul route instead).
pub fn free_resolution(m: &FPModule, length: usize) -> Result<FreeResolution> {
    assert!(length >= 1);
    let ring = m.ring().clone();
    let min = m.minimal_presentation()?;
    let mut shifts: Vec<Vec<i64>> = vec![min.shifts().to_vec()];
    let mut maps: Vec<Vec<FreeVector>> = Vec::new();
    let mut current: Vec<FreeVector> = FPModule::minimal_generators(
        &ring,
        min.rank0(),
        min.shifts(),
        min.relations(),
    );
    let mut ambient_rank = min.rank0();
    let mut ambient_shifts = shifts[0].clone();
    for _ in 0..length {
        if current.is_empty() {
            break;
        }
        let col_shifts: Vec<i64> = current
            .iter()
            .map(|c| c.homogeneous_degree(&ambient_shifts).unwrap_or(0))
            .collect();
        shifts.push(col_shifts.clone());
        maps.push(current.clone());
        let syz = syzygy_module(&current, &ring, ambient_rank);
        ambient_rank = current.len();
        ambient_shifts = col_shifts;
        current = FPModule::minimal_generators(&ring, ambient_rank, &ambient_shifts, &syz);
    }
    Ok(FreeResolution { rank0: min.rank0(), shifts, maps })
}

/// Homology of the induced complex M^{r_{i-1}} -> M^{r_i} -> M^{r_{i+1}}
/// obtained by applying Hom(-, M) to the resolution maps; returned as a
/// subquotient presentation. `out` is the map F_{i+1} -> F_i (None when
/// F_{i+1} = 0) and `inc` the map F_i -> F_{i-1} (None when i = 0).
pub fn hom_complex_homology(
    qring: &QuotientRing,
    m: &FPModule,
    rank_i: usize,
    shifts_i: &[i64],
    out: Option<&[FreeVector]>,
    inc: Option<(&[FreeVector], usize)>,
) -> Result<FPModule> {
    let ring = qring.base().clone();
    let mm = m.rank0();
    let ambient = rank_i * mm;
    if ambient == 0 {
        return Ok(FPModule::zero(qring));
    }
    // shift of block (j, t): shifts_m[t] - shifts_i[j]
    let block_shifts: Vec<i64> = (0..ambient)
        .map(|p| m.shifts()[p % mm] - shifts_i[p / mm])
        .collect();
    // relations of M^{r_i}: each relation of M embedded in every block
    let mut rel_block: Vec<FreeVector> = Vec::new();
    for j in 0..rank_i {
        for rel in m.relations() {
            rel_block.push(embed_block(rel, j, mm, ambient));
        }
    }
    // kernel of the outgoing map
    let kernel: Vec<FreeVector> = match out {
        None => (0..ambient)
            .map(|p| FreeVector::basis(ring.clone(), ambient, p))
            .collect(),
        Some(cols) => {
            let target_rank = cols.len() * mm;
            if target_rank == 0 {
                (0..ambient)
                    .map(|p| FreeVector::basis(ring.clone(), ambient, p))
                    .collect()
            } else {
                // images of the ambient basis of M^{r_i} under transpose(out)
                let images: Vec<FreeVector> = exec::map_range(ambient, |p| {
                    let (j, t) = (p / mm, p % mm);
                    let mut raw: Vec<VTerm> = Vec::new();
                    for (l, col) in cols.iter().enumerate() {
                        for term in col.terms() {
                            if term.pos == j {
                                raw.push(VTerm {
                                    pos: l * mm + t,
                                    mono: term.mono.clone(),
                                    coef: term.coef,
                                });
                            }
                        }
                    }
                    FreeVector::from_raw(ring.clone(), target_rank, raw)
                });
                let mut target_rels: Vec<FreeVector> = Vec::new();
                for l in 0..cols.len() {
                    for rel in m.relations() {
                        target_rels.push(embed_block(rel, l, mm, target_rank));
                    }
                }
                preimage_of_span(&ring, &images, &target_rels, ambient, target_rank)
            }
        }
    };
    // image of the incoming map, plus the relation block
    let mut rels = rel_block;
    if let Some((cols, rank_prev)) = inc {
        for jp in 0..rank_prev {
            for t in 0..mm {
                // image of basis (jp, t): sum over blocks l of entry cols[l][jp]
                let mut raw: Vec<VTerm> = Vec::new();
                for (l, col) in cols.iter().enumerate() {
                    for term in col.terms() {
                        if term.pos == jp {
                            raw.push(VTerm {
                                pos: l * mm + t,
                                mono: term.mono.clone(),
                                coef: term.coef,
                            });
                        }
                    }
                }
                rels.push(FreeVector::from_raw(ring.clone(), ambient, raw));
            }
        }
    }
    FPModule::subquotient(qring, &block_shifts, &kernel, &rels)
}

fn embed_block(rel: &FreeVector, block: usize, block_size: usize, ambient: usize) -> FreeVector {
    FreeVector::from_raw(
        rel.ring().clone(),
        ambient,
        rel.terms()
            .iter()
            .map(|t| VTerm {
                pos: block * block_size + t.pos,
                mono: t.mono.clone(),
                coef: t.coef,
            })
            .collect(),
    )
}

/// Generators of {v : phi(v) in span(target_rels)} where phi sends the p-th
/// ambient basis vector to images[p].
fn preimage_of_span(
    ring: &std::sync::Arc<crate::ring::Ring>,
    images: &[FreeVector],
    target_rels: &[FreeVector],
    source_rank: usize,
    target_rank: usize,
) -> Vec<FreeVector> {
    let mut columns: Vec<FreeVector> = images.to_vec();
    columns.extend(target_rels.iter().cloned());
    let syz = syzygy_module(&columns, ring, target_rank);
    syz.iter()
        .map(|s| {
            FreeVector::from_raw(
                ring.clone(),
                source_rank,
                s.terms()
                    .iter()
                    .filter(|t| t.pos < source_rank)
                    .cloned()
                    .collect(),
            )
        })
        .filter(|v| !v.is_zero())
        .collect()
}

/// Ext^i(N, M) over the ambient polynomial ring, as a subquotient module.
pub fn ext_module(i: usize, n: &FPModule, m: &FPModule) -> Result<FPModule> {
    if !n.over_polynomial_ring() || !m.over_polynomial_ring() {
        return Err(Error::UnsupportedRoute(
            "Ext is computed over the ambient polynomial ring only; use the Koszul route for quotient rings"
                .into(),
        ));
    }
    n.ring().same_ring(m.ring())?;
    let qring = QuotientRing::polynomial(n.ring().clone());
    let res = free_resolution(n, i + 1)?;
    let rank_i = res.rank(i);
    if rank_i == 0 {
        return Ok(FPModule::zero(&qring));
    }
    let out = (i < res.length()).then(|| res.maps()[i].as_slice());
    let inc = (i > 0).then(|| (res.maps()[i - 1].as_slice(), res.rank(i - 1)));
    hom_complex_homology(&qring, m, rank_i, res.shifts(i), out, inc)
}
