//! Combinatorial ground truth for monomial inputs: associated primes via
//! irreducible decomposition, Stanley-Reisner depth via Reisner's criterion,
//! exhaustive monomial-prime sweeps for the Cohen-Macaulay theorems, and the
//! non-CM locus.
//!
//! Nothing in this module touches the Groebner engine; membership,
//! dimension, localization and homology are all done by exponent-vector
//! combinatorics and dense linear algebra over GF(p). That independence is
//! the point: the test suite checks the homological stack against this one.

use crate::error::{Error, Result};
use crate::exec;
use crate::field::PrimeField;
use crate::ideal::Ideal;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::Ring;
use crate::serre::SerreClassSpec;
use std::sync::Arc;

pub const MAX_SWEEP_VARS: usize = 6;

/// A monomial ideal in n variables with a minimal generating set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialIdeal {
    n: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn new(n: usize, gens: Vec<Monomial>) -> MonomialIdeal {
        let mut minimal: Vec<Monomial> = Vec::new();
        let mut sorted = gens;
        sorted.sort();
        sorted.dedup();
        for m in sorted {
            debug_assert_eq!(m.len(), n);
            if minimal.iter().any(|g| g.divides(&m)) {
                continue;
            }
            minimal.retain(|g| !m.divides(g));
            minimal.push(m);
        }
        minimal.sort();
        MonomialIdeal { n, gens: minimal }
    }

    pub fn zero(n: usize) -> MonomialIdeal {
        MonomialIdeal { n, gens: Vec::new() }
    }

    pub fn unit(n: usize) -> MonomialIdeal {
        MonomialIdeal::new(n, vec![Monomial::one(n)])
    }

    /// Read a monomial ideal off a polynomial ideal whose generators are
    /// single terms; None when some generator has several terms.
    pub fn from_ideal(ideal: &Ideal) -> Option<MonomialIdeal> {
        let n = ideal.ring().num_vars();
        let mut gens = Vec::new();
        for g in ideal.gens() {
            match g.terms() {
                [] => {}
                [t] => gens.push(t.mono.clone()),
                _ => return None,
            }
        }
        Some(MonomialIdeal::new(n, gens))
    }

    pub fn to_ideal(&self, ring: &Arc<Ring>) -> Result<Ideal> {
        assert_eq!(ring.num_vars(), self.n);
        let gens = self
            .gens
            .iter()
            .map(|m| Polynomial::monomial(ring.clone(), m.clone(), 1))
            .collect();
        Ideal::new(ring.clone(), gens)
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_one()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens
            .iter()
            .all(|g| g.exponents().iter().all(|&e| e <= 1))
    }

    pub fn contains_monomial(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// Exact membership for polynomials: every term must be a member.
    pub fn contains_poly(&self, f: &Polynomial) -> bool {
        f.terms().iter().all(|t| self.contains_monomial(&t.mono))
    }

    pub fn radical(&self) -> MonomialIdeal {
        MonomialIdeal::new(
            self.n,
            self.gens
                .iter()
                .map(|g| {
                    Monomial::new(
                        g.exponents().iter().map(|&e| if e > 0 { 1 } else { 0 }).collect(),
                    )
                })
                .collect(),
        )
    }

    pub fn intersection(&self, other: &MonomialIdeal) -> MonomialIdeal {
        debug_assert_eq!(self.n, other.n);
        if self.is_zero() || other.is_zero() {
            return MonomialIdeal::zero(self.n);
        }
        let mut gens = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.lcm(b));
            }
        }
        MonomialIdeal::new(self.n, gens)
    }

    /// Krull dimension of S/I: size of the largest variable subset meeting
    /// no generator support; -1 for the unit ideal.
    pub fn dimension(&self) -> i64 {
        if self.is_unit() {
            return -1;
        }
        let supports: Vec<u32> = self
            .gens
            .iter()
            .map(|g| g.support().iter().fold(0u32, |acc, &i| acc | (1 << i)))
            .collect();
        let mut best = 0i64;
        for u in 0u32..(1 << self.n) {
            let size = u.count_ones() as i64;
            if size > best && supports.iter().all(|&s| s & !u != 0) {
                best = size;
            }
        }
        best
    }

    /// Set the variables outside `keep` to 1: the monomial ideal of the
    /// localization at the prime generated by `keep`, in |keep| variables.
    pub fn localize(&self, keep: &[usize]) -> MonomialIdeal {
        let gens = self
            .gens
            .iter()
            .map(|g| {
                Monomial::new(keep.iter().map(|&i| g.exponents()[i]).collect())
            })
            .collect();
        MonomialIdeal::new(keep.len(), gens)
    }

    /// Polarization: each power x_i^a spreads over a distinct squarefree
    /// variables. Returns the squarefree ideal and the number of variables
    /// added; depth and dimension both grow by exactly that number.
    pub fn polarize(&self) -> (MonomialIdeal, usize) {
        let mut copies = vec![1u32; self.n];
        for g in &self.gens {
            for (i, &e) in g.exponents().iter().enumerate() {
                copies[i] = copies[i].max(e);
            }
        }
        let offsets: Vec<usize> = copies
            .iter()
            .scan(0usize, |acc, &c| {
                let here = *acc;
                *acc += c as usize;
                Some(here)
            })
            .collect();
        let total: usize = copies.iter().map(|&c| c as usize).sum();
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let mut exps = vec![0u32; total];
                for (i, &e) in g.exponents().iter().enumerate() {
                    for k in 0..e as usize {
                        exps[offsets[i] + k] = 1;
                    }
                }
                Monomial::new(exps)
            })
            .collect();
        (MonomialIdeal::new(total, gens), total - self.n)
    }
}

/// A monomial prime (x_i : i in mask), mask over the ring's variables.
pub type PrimeMask = u32;

pub fn prime_mask_to_ideal(mask: PrimeMask, ring: &Arc<Ring>) -> Result<Ideal> {
    let n = ring.num_vars();
    let gens = (0..n)
        .filter(|i| mask & (1 << i) != 0)
        .map(|i| Polynomial::var(ring.clone(), i))
        .collect();
    Ideal::new(ring.clone(), gens)
}

pub fn mask_vars(mask: PrimeMask, n: usize) -> Vec<usize> {
    (0..n).filter(|i| mask & (1 << i) != 0).collect()
}

/// Class membership of R/p for a monomial prime, decided combinatorially.
pub fn class_contains_prime(class: &SerreClassSpec, mask: PrimeMask, n: usize) -> bool {
    match class {
        SerreClassSpec::ZeroOnly => false,
        SerreClassSpec::DimLE(j) => (n as i64 - mask.count_ones() as i64) <= *j,
        SerreClassSpec::SuppInV(b) => b.gens().iter().all(|g| {
            g.terms()
                .iter()
                .all(|t| t.mono.support().iter().any(|&i| mask & (1 << i) != 0))
        }),
    }
}

/// Class membership of S/a for a monomial ideal a, decided combinatorially.
pub fn class_contains_monomial_quotient(class: &SerreClassSpec, a: &MonomialIdeal) -> bool {
    match class {
        SerreClassSpec::ZeroOnly => a.is_unit(),
        SerreClassSpec::DimLE(j) => a.dimension() <= *j,
        SerreClassSpec::SuppInV(b) => {
            let rad = a.radical();
            b.gens().iter().all(|g| rad.contains_poly(g))
        }
    }
}

// ---------------------------------------------------------------------------
// Associated primes via irreducible decomposition
// ---------------------------------------------------------------------------

fn irreducible_components(ideal: &MonomialIdeal) -> Vec<MonomialIdeal> {
    if ideal.is_unit() {
        return Vec::new();
    }
    // find a generator with at least two variables in its support
    let split = ideal
        .gens
        .iter()
        .find(|g| g.support().len() >= 2)
        .cloned();
    match split {
        None => vec![ideal.clone()],
        Some(g) => {
            let var = g.support()[0];
            let mut u_exps = vec![0u32; ideal.n];
            u_exps[var] = g.exponents()[var];
            let u = Monomial::new(u_exps);
            let v = Monomial::new(
                g.exponents()
                    .iter()
                    .enumerate()
                    .map(|(i, &e)| if i == var { 0 } else { e })
                    .collect(),
            );
            let mut with_u = ideal.gens.clone();
            with_u.push(u);
            let mut with_v = ideal.gens.clone();
            with_v.push(v);
            let mut out = irreducible_components(&MonomialIdeal::new(ideal.n, with_u));
            out.extend(irreducible_components(&MonomialIdeal::new(ideal.n, with_v)));
            out
        }
    }
}

fn irredundant(components: Vec<MonomialIdeal>) -> Vec<MonomialIdeal> {
    let mut comps = components;
    comps.sort_by(|a, b| a.gens.cmp(&b.gens));
    comps.dedup();
    loop {
        let mut removed = false;
        for i in 0..comps.len() {
            let meet = comps
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, c)| c)
                .fold(MonomialIdeal::zero(comps[i].n), |acc, c| {
                    if acc.is_zero() && comps.len() > 1 {
                        // fold seed: start from the first other component
                        c.clone()
                    } else {
                        acc.intersection(c)
                    }
                });
            if comps.len() > 1 && meet.gens.iter().all(|m| comps[i].contains_monomial(m)) {
                comps.remove(i);
                removed = true;
                break;
            }
        }
        if !removed {
            return comps;
        }
    }
}

/// Ass(S/I) as prime masks, via the splitting irreducible decomposition.
pub fn associated_primes(ideal: &MonomialIdeal) -> Vec<PrimeMask> {
    let comps = irredundant(irreducible_components(ideal));
    let mut masks: Vec<PrimeMask> = comps
        .iter()
        .map(|c| {
            c.gens
                .iter()
                .flat_map(|g| g.support())
                .fold(0u32, |acc, i| acc | (1 << i))
        })
        .collect();
    masks.sort();
    masks.dedup();
    masks
}

// ---------------------------------------------------------------------------
// Stanley-Reisner complexes and Reisner depth
// ---------------------------------------------------------------------------

/// A simplicial complex on vertices 0..n, stored by its facets.
#[derive(Debug, Clone)]
pub struct SimplicialComplex {
    n: usize,
    faces: Vec<u32>,
}

impl SimplicialComplex {
    /// The complex whose nonfaces are exactly the members of the squarefree
    /// ideal: faces are the subsets whose product survives.
    pub fn from_squarefree(ideal: &MonomialIdeal) -> Result<SimplicialComplex> {
        if !ideal.is_squarefree() {
            return Err(Error::UnsupportedRoute(
                "Stanley-Reisner complexes require a squarefree monomial ideal".into(),
            ));
        }
        if ideal.is_unit() {
            return Err(Error::Precondition(
                "the unit ideal has an empty quotient and no complex".into(),
            ));
        }
        let n = ideal.n;
        if n > 24 {
            return Err(Error::TooManyVariables(n));
        }
        let gen_masks: Vec<u32> = ideal
            .gens
            .iter()
            .map(|g| g.support().iter().fold(0u32, |acc, &i| acc | (1 << i)))
            .collect();
        let faces: Vec<u32> = (0u32..(1 << n))
            .filter(|&s| gen_masks.iter().all(|&g| g & !s != 0))
            .collect();
        Ok(SimplicialComplex { n, faces })
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn faces(&self) -> &[u32] {
        &self.faces
    }

    pub fn facets(&self) -> Vec<u32> {
        self.faces
            .iter()
            .copied()
            .filter(|&f| !self.faces.iter().any(|&g| g != f && g & f == f))
            .collect()
    }

    fn is_face(&self, s: u32) -> bool {
        self.faces.binary_search(&s).is_ok()
    }

    /// Faces of the link of `sigma`, as masks disjoint from sigma.
    pub fn link(&self, sigma: u32) -> Vec<u32> {
        self.faces
            .iter()
            .copied()
            .filter(|&t| t & sigma == 0 && self.is_face(t | sigma))
            .collect()
    }
}

/// Rank of a dense matrix over GF(p).
fn rank_mod_p(field: &PrimeField, mut m: Vec<Vec<u64>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    for c in 0..cols {
        let pivot = (rank..rows).find(|&r| m[r][c] != 0);
        let Some(p_row) = pivot else { continue };
        m.swap(rank, p_row);
        let inv = field.inv(m[rank][c]);
        for x in m[rank].iter_mut() {
            *x = field.mul(*x, inv);
        }
        for r in 0..rows {
            if r != rank && m[r][c] != 0 {
                let factor = m[r][c];
                for cc in 0..cols {
                    let sub = field.mul(factor, m[rank][cc]);
                    m[r][cc] = field.sub(m[r][cc], sub);
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Dimensions of the reduced homology groups of a complex given by its face
/// masks, over GF(p). Index d holds dim H~_{d-1}, starting at d = 0 for the
/// empty face. An empty input (the void complex) reports nothing nonzero.
fn reduced_homology_dims(field: &PrimeField, faces: &[u32]) -> Vec<usize> {
    if faces.is_empty() {
        return Vec::new();
    }
    let max_size = faces.iter().map(|f| f.count_ones() as usize).max().unwrap();
    // chains[s] = faces of size s (dimension s-1), sorted for indexing
    let mut chains: Vec<Vec<u32>> = vec![Vec::new(); max_size + 1];
    for &f in faces {
        chains[f.count_ones() as usize].push(f);
    }
    for c in chains.iter_mut() {
        c.sort();
    }
    // boundary_ranks[s] = rank of d_s : C_s -> C_{s-1} (on size-s faces)
    let mut boundary_ranks = vec![0usize; max_size + 2];
    for s in 1..=max_size {
        if chains[s].is_empty() || chains[s - 1].is_empty() {
            continue;
        }
        let index = |mask: u32| chains[s - 1].binary_search(&mask).unwrap();
        let mut mat = vec![vec![0u64; chains[s].len()]; chains[s - 1].len()];
        for (j, &face) in chains[s].iter().enumerate() {
            let mut sign = 1u64;
            for v in 0..32 {
                if face & (1 << v) != 0 {
                    let sub = face & !(1 << v);
                    mat[index(sub)][j] = if sign == 1 { 1 } else { field.characteristic() - 1 };
                    sign = 1 - sign;
                }
            }
        }
        boundary_ranks[s] = rank_mod_p(field, mat);
    }
    (0..=max_size)
        .map(|s| chains[s].len() - boundary_ranks[s] - boundary_ranks[s + 1])
        .collect()
}

/// depth(S/I) for a proper squarefree monomial ideal, by Reisner's
/// criterion: the minimum over faces sigma of |sigma| + 1 + (least index
/// with nonvanishing reduced homology of the link of sigma).
pub fn reisner_depth(ideal: &MonomialIdeal, field: &PrimeField) -> Result<i64> {
    let complex = SimplicialComplex::from_squarefree(ideal)?;
    let contributions: Vec<Option<i64>> = exec::map_slice(complex.faces(), |&sigma| {
        let link = complex.link(sigma);
        let dims = reduced_homology_dims(field, &link);
        dims.iter()
            .position(|&d| d > 0)
            .map(|s| sigma.count_ones() as i64 + 1 + (s as i64 - 1))
    });
    Ok(contributions
        .into_iter()
        .flatten()
        .min()
        .unwrap_or(ideal.n as i64))
}

/// depth(S/I) for any proper monomial ideal: polarize, then Reisner.
pub fn monomial_depth(ideal: &MonomialIdeal, field: &PrimeField) -> Result<i64> {
    if ideal.is_unit() {
        return Err(Error::Precondition("the unit ideal has no depth".into()));
    }
    let (pol, added) = ideal.polarize();
    Ok(reisner_depth(&pol, field)? - added as i64)
}

/// Is the localization of S/I at the prime of `keep_vars` Cohen-Macaulay?
/// Localization deletes the other variables; graded depth equals local depth
/// at the irrelevant ideal, so CM-ness is depth = dimension after
/// polarization.
pub fn localization_is_cm(
    ideal: &MonomialIdeal,
    keep_vars: &[usize],
    field: &PrimeField,
) -> Result<bool> {
    let loc = ideal.localize(keep_vars);
    if loc.is_unit() {
        // localization is the zero module, trivially CM
        return Ok(true);
    }
    let (pol, _added) = loc.polarize();
    Ok(reisner_depth(&pol, field)? == pol.dimension())
}

/// ht_M(p) = dim M_p for the monomial prime of `keep_vars` on M = S/I.
pub fn height_on_module(ideal: &MonomialIdeal, keep_vars: &[usize]) -> i64 {
    ideal.localize(keep_vars).dimension()
}

/// All monomial primes containing I (the monomial points of Supp S/I).
pub fn support_primes(ideal: &MonomialIdeal) -> Result<Vec<PrimeMask>> {
    let n = ideal.n;
    if n > MAX_SWEEP_VARS {
        return Err(Error::TooManyVariables(n));
    }
    let gen_masks: Vec<u32> = ideal
        .gens
        .iter()
        .map(|g| g.support().iter().fold(0u32, |acc, &i| acc | (1 << i)))
        .collect();
    Ok((0u32..(1 << n))
        .filter(|&s| gen_masks.iter().all(|&g| g & s != 0))
        .collect())
}

/// The Cohen-Macaulay support test: every monomial prime in the support
/// with R/p outside the class must have a CM localization and satisfy
/// ht_M(p) + dim(R/p) = dim M.
pub fn support_sweep_check(
    ideal: &MonomialIdeal,
    class: &SerreClassSpec,
    field: &PrimeField,
) -> Result<bool> {
    let n = ideal.n;
    let dim_m = ideal.dimension();
    let primes = support_primes(ideal)?;
    let verdicts: Vec<Result<bool>> = exec::map_slice(&primes, |&mask| {
        if class_contains_prime(class, mask, n) {
            return Ok(true);
        }
        let keep = mask_vars(mask, n);
        let ht = height_on_module(ideal, &keep);
        let dim_rp = n as i64 - keep.len() as i64;
        if ht + dim_rp != dim_m {
            return Ok(false);
        }
        localization_is_cm(ideal, &keep, field)
    });
    for v in verdicts {
        if !v? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Radical ideal cutting out the non-CM locus: the intersection of the
/// minimal monomial primes with a non-CM localization; (1) when the locus
/// is empty.
pub fn ncm_locus_monomial(ideal: &MonomialIdeal, field: &PrimeField) -> Result<MonomialIdeal> {
    let n = ideal.n;
    let primes = support_primes(ideal)?;
    let flags: Vec<Result<bool>> = exec::map_slice(&primes, |&mask| {
        Ok(!localization_is_cm(ideal, &mask_vars(mask, n), field)?)
    });
    let mut non_cm: Vec<PrimeMask> = Vec::new();
    for (mask, flag) in primes.iter().zip(flags) {
        if flag? {
            non_cm.push(*mask);
        }
    }
    let minimal: Vec<PrimeMask> = non_cm
        .iter()
        .copied()
        .filter(|&m| !non_cm.iter().any(|&o| o != m && o & m == o))
        .collect();
    if minimal.is_empty() {
        return Ok(MonomialIdeal::unit(n));
    }
    let mut acc: Option<MonomialIdeal> = None;
    for mask in minimal {
        let prime = MonomialIdeal::new(
            n,
            mask_vars(mask, n)
                .into_iter()
                .map(|i| Monomial::var(n, i))
                .collect(),
        );
        acc = Some(match acc {
            None => prime,
            Some(a) => a.intersection(&prime),
        });
    }
    Ok(acc.unwrap())
}

/// Minimal monomial primes of the class-relative support.
pub fn minimal_class_support(
    ideal: &MonomialIdeal,
    class: &SerreClassSpec,
) -> Result<Vec<PrimeMask>> {
    let n = ideal.n;
    let qualifying: Vec<PrimeMask> = support_primes(ideal)?
        .into_iter()
        .filter(|&mask| !class_contains_prime(class, mask, n))
        .collect();
    Ok(qualifying
        .iter()
        .copied()
        .filter(|&m| !qualifying.iter().any(|&o| o != m && o & m == o))
        .collect())
}

/// The locus-based Cohen-Macaulay test: R/a_M in the class, and every
/// minimal prime of the class-relative support has full dimension.
pub fn ncm_locus_check(
    ideal: &MonomialIdeal,
    class: &SerreClassSpec,
    field: &PrimeField,
) -> Result<bool> {
    let locus = ncm_locus_monomial(ideal, field)?;
    if !class_contains_monomial_quotient(class, &locus) {
        return Ok(false);
    }
    let n = ideal.n;
    let dim_m = ideal.dimension();
    Ok(minimal_class_support(ideal, class)?
        .into_iter()
        .all(|mask| n as i64 - mask.count_ones() as i64 == dim_m))
}

/// Class-relative height of a on M (both monomial): the infimum of
/// ht_M(q) over monomial primes q containing a + Ann M with R/q outside
/// the class; None encodes an empty infimum (+infinity).
pub fn s_height_monomial(
    a: &MonomialIdeal,
    ann: &MonomialIdeal,
    class: &SerreClassSpec,
) -> Result<Option<i64>> {
    let n = ann.n;
    debug_assert_eq!(a.n, n);
    let mut sum_gens = a.gens.clone();
    sum_gens.extend(ann.gens.iter().cloned());
    let sum = MonomialIdeal::new(n, sum_gens);
    if sum.is_unit() {
        return Ok(None);
    }
    let best = support_primes(&sum)?
        .into_iter()
        .filter(|&mask| !class_contains_prime(class, mask, n))
        .map(|mask| height_on_module(ann, &mask_vars(mask, n)))
        .min();
    Ok(best)
}

/// Class-relative dimension of M: the supremum of ht_M(q) over monomial
/// support primes outside the class; None encodes sup of the empty set
/// (-infinity).
pub fn s_dimension_monomial(
    ann: &MonomialIdeal,
    class: &SerreClassSpec,
) -> Result<Option<i64>> {
    let n = ann.n;
    if ann.is_unit() {
        return Ok(None);
    }
    let best = support_primes(ann)?
        .into_iter()
        .filter(|&mask| !class_contains_prime(class, mask, n))
        .map(|mask| height_on_module(ann, &mask_vars(mask, n)))
        .max();
    Ok(best)
}


// ---------------------------------------------------------------------------
// Finite direct sums of cyclic monomial modules
// ---------------------------------------------------------------------------

/// CM-ness of the localization of a direct sum at the prime of `keep_vars`:
/// every summand alive there must be CM of one common dimension.
pub fn sum_localization_is_cm(
    summands: &[MonomialIdeal],
    keep_vars: &[usize],
    field: &PrimeField,
) -> Result<bool> {
    let mut dims: Vec<i64> = Vec::new();
    for ideal in summands {
        let loc = ideal.localize(keep_vars);
        if loc.is_unit() {
            continue; // summand dies at this prime
        }
        if !localization_is_cm(ideal, keep_vars, field)? {
            return Ok(false);
        }
        dims.push(loc.dimension());
    }
    Ok(dims.windows(2).all(|w| w[0] == w[1]))
}

/// dim M_p for a direct sum: the largest summand dimension at the prime.
pub fn sum_height_on_module(summands: &[MonomialIdeal], keep_vars: &[usize]) -> i64 {
    summands
        .iter()
        .map(|i| i.localize(keep_vars).dimension())
        .max()
        .unwrap_or(-1)
}

/// Monomial support primes of a direct sum: primes containing at least one
/// summand annihilator.
pub fn sum_support_primes(summands: &[MonomialIdeal], n: usize) -> Result<Vec<PrimeMask>> {
    if n > MAX_SWEEP_VARS {
        return Err(Error::TooManyVariables(n));
    }
    let per: Vec<Vec<PrimeMask>> = summands
        .iter()
        .map(support_primes)
        .collect::<Result<Vec<_>>>()?;
    let mut out: Vec<PrimeMask> = per.into_iter().flatten().collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// The support-sweep Cohen-Macaulay test for a finite direct sum of cyclic
/// monomial modules.
pub fn support_sweep_check_sum(
    summands: &[MonomialIdeal],
    n: usize,
    class: &SerreClassSpec,
    field: &PrimeField,
) -> Result<bool> {
    let live: Vec<MonomialIdeal> = summands.iter().filter(|i| !i.is_unit()).cloned().collect();
    if live.is_empty() {
        return Ok(true); // the zero module
    }
    let dim_m = live.iter().map(|i| i.dimension()).max().unwrap();
    for mask in sum_support_primes(&live, n)? {
        if class_contains_prime(class, mask, n) {
            continue;
        }
        let keep = mask_vars(mask, n);
        let ht = sum_height_on_module(&live, &keep);
        let dim_rp = n as i64 - keep.len() as i64;
        if ht + dim_rp != dim_m {
            return Ok(false);
        }
        if !sum_localization_is_cm(&live, &keep, field)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Non-CM locus for a finite direct sum, as a radical monomial ideal.
pub fn ncm_locus_monomial_sum(
    summands: &[MonomialIdeal],
    n: usize,
    field: &PrimeField,
) -> Result<MonomialIdeal> {
    let live: Vec<MonomialIdeal> = summands.iter().filter(|i| !i.is_unit()).cloned().collect();
    if live.is_empty() {
        return Ok(MonomialIdeal::unit(n));
    }
    let primes = sum_support_primes(&live, n)?;
    let flags: Vec<Result<bool>> = exec::map_slice(&primes, |&mask| {
        Ok(!sum_localization_is_cm(&live, &mask_vars(mask, n), field)?)
    });
    let mut non_cm: Vec<PrimeMask> = Vec::new();
    for (mask, flag) in primes.iter().zip(flags) {
        if flag? {
            non_cm.push(*mask);
        }
    }
    let minimal: Vec<PrimeMask> = non_cm
        .iter()
        .copied()
        .filter(|&m| !non_cm.iter().any(|&o| o != m && o & m == o))
        .collect();
    if minimal.is_empty() {
        return Ok(MonomialIdeal::unit(n));
    }
    let mut acc: Option<MonomialIdeal> = None;
    for mask in minimal {
        let prime = MonomialIdeal::new(
            n,
            mask_vars(mask, n)
                .into_iter()
                .map(|i| Monomial::var(n, i))
                .collect(),
        );
        acc = Some(match acc {
            None => prime,
            Some(a) => a.intersection(&prime),
        });
    }
    Ok(acc.unwrap())
}

/// Minimal monomial primes of the class-relative support of a direct sum.
pub fn minimal_class_support_sum(
    summands: &[MonomialIdeal],
    n: usize,
    class: &SerreClassSpec,
) -> Result<Vec<PrimeMask>> {
    let live: Vec<MonomialIdeal> = summands.iter().filter(|i| !i.is_unit()).cloned().collect();
    let qualifying: Vec<PrimeMask> = sum_support_primes(&live, n)?
        .into_iter()
        .filter(|&mask| !class_contains_prime(class, mask, n))
        .collect();
    Ok(qualifying
        .iter()
        .copied()
        .filter(|&m| !qualifying.iter().any(|&o| o != m && o & m == o))
        .collect())
}

/// The locus-route Cohen-Macaulay test for a finite direct sum.
pub fn ncm_locus_check_sum(
    summands: &[MonomialIdeal],
    n: usize,
    class: &SerreClassSpec,
    field: &PrimeField,
) -> Result<bool> {
    let live: Vec<MonomialIdeal> = summands.iter().filter(|i| !i.is_unit()).cloned().collect();
    if live.is_empty() {
        return Ok(true);
    }
    let locus = ncm_locus_monomial_sum(&live, n, field)?;
    if !class_contains_monomial_quotient(class, &locus) {
        return Ok(false);
    }
    let dim_m = live.iter().map(|i| i.dimension()).max().unwrap();
    Ok(minimal_class_support_sum(&live, n, class)?
        .into_iter()
        .all(|mask| n as i64 - mask.count_ones() as i64 == dim_m))
}
