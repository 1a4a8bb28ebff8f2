//! Ideals of the ambient polynomial ring and derived operations:
//! intersection, colon, radical membership and Krull dimension.
//!
//! Ideals of a quotient ring R = S/J are represented by their preimages in S
//! containing J; every operation here stays over S.

use std::sync::{Arc, OnceLock};

use crate::error::Result;
use crate::groebner::{buchberger, normal_form, GroebnerBasis};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{div_rem, parse_poly, Polynomial};
use crate::ring::Ring;

/// A finitely generated ideal of S with a lazily cached reduced Groebner
/// basis under the ring's active order. The cache is compute-once and safe
/// to share across threads.
#[derive(Debug, Clone)]
pub struct Ideal {
    ring: Arc<Ring>,
    gens: Vec<Polynomial>,
    gb: OnceLock<Arc<GroebnerBasis>>,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.gens == other.gens
    }
}

impl Ideal {
    pub fn new(ring: Arc<Ring>, gens: Vec<Polynomial>) -> Result<Ideal> {
        for g in &gens {
            ring.same_ring(g.ring())?;
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal { ring, gens, gb: OnceLock::new() })
    }

    pub fn zero(ring: Arc<Ring>) -> Ideal {
        Ideal { ring, gens: Vec::new(), gb: OnceLock::new() }
    }

    pub fn unit(ring: Arc<Ring>) -> Ideal {
        let one = Polynomial::one(ring.clone());
        Ideal { ring, gens: vec![one], gb: OnceLock::new() }
    }

    /// Convenience constructor from expression strings.
    pub fn parse(ring: &Arc<Ring>, gens: &[&str]) -> Result<Ideal> {
        let gens = gens
            .iter()
            .map(|s| parse_poly(ring, s))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(ring.clone(), gens)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn groebner_basis(&self) -> &Arc<GroebnerBasis> {
        self.gb.get_or_init(|| {
            Arc::new(
                buchberger(&self.ring, &self.gens, self.ring.order())
                    .expect("generators validated at construction"),
            )
        })
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        normal_form(f, self.groebner_basis())
    }

    pub fn contains_poly(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        other.gens.iter().all(|g| self.contains_poly(g))
    }

    /// Ideal equality via double membership.
    pub fn equals(&self, other: &Ideal) -> bool {
        self.contains_ideal(other) && other.contains_ideal(self)
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty() || self.gens.iter().all(|g| g.is_zero())
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.groebner_basis().is_unit_ideal()
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.ring.same_ring(&other.ring)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(self.ring.clone(), gens)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.ring.same_ring(&other.ring)?;
        let mut gens = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.mul(b)?);
            }
        }
        Ideal::new(self.ring.clone(), gens)
    }

    /// I cap J by eliminating t from t*I + (1-t)*J.
    pub fn intersection(&self, other: &Ideal) -> Result<Ideal> {
        self.ring.same_ring(&other.ring)?;
        if self.is_zero_ideal() || other.is_zero_ideal() {
            return Ok(Ideal::zero(self.ring.clone()));
        }
        let aux = self.ring.with_aux_var();
        let t = Polynomial::var(aux.clone(), 0);
        let one_minus_t = Polynomial::one(aux.clone()).sub(&t)?;
        let mut gens = Vec::new();
        for g in &self.gens {
            gens.push(g.lift_aux(&aux).mul(&t)?);
        }
        for g in &other.gens {
            gens.push(g.lift_aux(&aux).mul(&one_minus_t)?);
        }
        let gb = buchberger(&aux, &gens, MonomialOrder::Block { split: 1 })?;
        let kept: Vec<Polynomial> = gb
            .elements()
            .iter()
            .filter(|f| !f.involves_var(0))
            .map(|f| f.with_ring(&gb.ring().clone()).drop_aux(&self.ring))
            .collect();
        Ideal::new(self.ring.clone(), kept)
    }

    /// Colon ideal (I : g) for a single nonzero g, via (I cap (g)) / g.
    fn colon_element(&self, g: &Polynomial) -> Result<Ideal> {
        debug_assert!(!g.is_zero());
        let principal = Ideal::new(self.ring.clone(), vec![g.clone()])?;
        let meet = self.intersection(&principal)?;
        let mut gens = Vec::new();
        for f in meet.gens() {
            let (q, r) = div_rem(f, std::slice::from_ref(g))?;
            debug_assert!(r.is_zero(), "member of I cap (g) not divisible by g");
            gens.push(q.into_iter().next().unwrap());
        }
        Ideal::new(self.ring.clone(), gens)
    }

    /// Colon ideal (I : J). The flag reports the degenerate divisor J = 0,
    /// where the result is the whole ring by convention.
    pub fn colon(&self, other: &Ideal) -> Result<(Ideal, bool)> {
        self.ring.same_ring(&other.ring)?;
        let divisors: Vec<&Polynomial> = other.gens.iter().filter(|g| !g.is_zero()).collect();
        if divisors.is_empty() {
            return Ok((Ideal::unit(self.ring.clone()), true));
        }
        let mut acc: Option<Ideal> = None;
        for g in divisors {
            let part = self.colon_element(g)?;
            acc = Some(match acc {
                None => part,
                Some(i) => i.intersection(&part)?,
            });
        }
        Ok((acc.unwrap(), false))
    }

    /// Rabinowitsch test: f lies in the radical of I iff
    /// 1 belongs to I + (1 - t f) in S[t].
    pub fn radical_membership(&self, f: &Polynomial) -> Result<bool> {
        self.ring.same_ring(f.ring())?;
        if f.is_zero() {
            return Ok(self.is_zero_or_contains_zero());
        }
        let aux = self.ring.with_aux_var();
        let t = Polynomial::var(aux.clone(), 0);
        let mut gens: Vec<Polynomial> = self.gens.iter().map(|g| g.lift_aux(&aux)).collect();
        gens.push(Polynomial::one(aux.clone()).sub(&t.mul(&f.lift_aux(&aux))?)?);
        let gb = buchberger(&aux, &gens, MonomialOrder::Block { split: 1 })?;
        Ok(gb.is_unit_ideal())
    }

    fn is_zero_or_contains_zero(&self) -> bool {
        // 0 is in every radical
        true
    }

    /// Krull dimension of S/I: the largest subset U of the variables with
    /// in(I) cap GF(p)[U] = 0, over the initial ideal of a grevlex basis.
    /// Returns -1 for the unit ideal.
    pub fn dimension(&self) -> i64 {
        let grev = self.ring.with_order(MonomialOrder::GrevLex);
        let gb = buchberger(&grev, &self.gens, MonomialOrder::GrevLex)
            .expect("generators validated at construction");
        if gb.is_unit_ideal() {
            return -1;
        }
        let supports: Vec<u32> = minimal_monomial_supports(
            gb.elements()
                .iter()
                .map(|f| f.leading().unwrap().mono.clone())
                .collect(),
        );
        max_independent_set(self.ring.num_vars(), &supports)
    }
}

/// Supports (as bitmasks) of a minimal generating set of the monomial ideal
/// generated by the given monomials.
fn minimal_monomial_supports(monos: Vec<Monomial>) -> Vec<u32> {
    let mut minimal: Vec<Monomial> = Vec::new();
    for m in monos {
        if minimal.iter().any(|g| g.divides(&m)) {
            continue;
        }
        minimal.retain(|g| !m.divides(g));
        minimal.push(m);
    }
    minimal
        .iter()
        .map(|m| m.support().iter().fold(0u32, |acc, &i| acc | (1 << i)))
        .collect()
}

/// Largest cardinality of a variable subset containing no generator support.
fn max_independent_set(n: usize, supports: &[u32]) -> i64 {
    if supports.iter().any(|&s| s == 0) {
        // a constant generator: unit ideal, callers handle separately
        return -1;
    }
    let mut best = 0i64;
    for u in 0u32..(1 << n) {
        let size = u.count_ones() as i64;
        if size <= best {
            continue;
        }
        if supports.iter().all(|&s| s & !u != 0) {
            best = size;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn ring3() -> Arc<Ring> {
        Ring::new(
            PrimeField::new(101).unwrap(),
            vec!["x".into(), "y".into(), "z".into()],
            MonomialOrder::GrevLex,
        )
        .unwrap()
    }

    #[test]
    fn intersection_coprime_principal() {
        let r = ring3();
        let ix = Ideal::parse(&r, &["x"]).unwrap();
        let iy = Ideal::parse(&r, &["y"]).unwrap();
        let meet = ix.intersection(&iy).unwrap();
        assert!(meet.equals(&Ideal::parse(&r, &["x*y"]).unwrap()));
    }

    #[test]
    fn intersection_idempotent() {
        let r = ring3();
        let ix = Ideal::parse(&r, &["x"]).unwrap();
        assert!(ix.intersection(&ix).unwrap().equals(&ix));
    }

    #[test]
    fn intersection_with_nonprincipal() {
        let r = ring3();
        let ix = Ideal::parse(&r, &["x"]).unwrap();
        let iyz = Ideal::parse(&r, &["y", "z"]).unwrap();
        let meet = ix.intersection(&iyz).unwrap();
        assert!(meet.equals(&Ideal::parse(&r, &["x*y", "x*z"]).unwrap()));
    }

    #[test]
    fn colon_cases() {
        let r = ring3();
        let i = Ideal::parse(&r, &["x*y", "x*z"]).unwrap();
        let (q, flag) = i.colon(&Ideal::parse(&r, &["x"]).unwrap()).unwrap();
        assert!(!flag);
        assert!(q.equals(&Ideal::parse(&r, &["y", "z"]).unwrap()));

        // colon by a unit gives the ideal back
        let (q1, _) = i.colon(&Ideal::unit(r.clone())).unwrap();
        assert!(q1.equals(&i));

        // principal case (x^2) : x = (x)
        let x2 = Ideal::parse(&r, &["x^2"]).unwrap();
        let (qx, _) = x2.colon(&Ideal::parse(&r, &["x"]).unwrap()).unwrap();
        assert!(qx.equals(&Ideal::parse(&r, &["x"]).unwrap()));

        // colon by zero: whole ring, with the warning flag set
        let (qz, zflag) = i.colon(&Ideal::zero(r.clone())).unwrap();
        assert!(zflag);
        assert!(qz.is_unit_ideal());
    }

    #[test]
    fn radical_membership_cases() {
        let r = ring3();
        let i = Ideal::parse(&r, &["x^2"]).unwrap();
        assert!(i.radical_membership(&parse_poly(&r, "x").unwrap()).unwrap());
        let ix = Ideal::parse(&r, &["x"]).unwrap();
        assert!(!ix.radical_membership(&parse_poly(&r, "y").unwrap()).unwrap());
        // (x+y)^3 in (x^2, y^2)
        let j = Ideal::parse(&r, &["x^2", "y^2"]).unwrap();
        assert!(j.radical_membership(&parse_poly(&r, "x + y").unwrap()).unwrap());
        assert!(!j.radical_membership(&parse_poly(&r, "z").unwrap()).unwrap());
    }

    #[test]
    fn dimension_cases() {
        let r = ring3();
        assert_eq!(Ideal::parse(&r, &["x*y", "x*z"]).unwrap().dimension(), 2);
        assert_eq!(Ideal::zero(r.clone()).dimension(), 3);
        assert_eq!(Ideal::unit(r.clone()).dimension(), -1);
        assert_eq!(Ideal::parse(&r, &["x", "y", "z"]).unwrap().dimension(), 0);
        // non-monomial: V(x^2 - yz) is a surface
        assert_eq!(Ideal::parse(&r, &["x^2 - y*z"]).unwrap().dimension(), 2);
    }

    #[test]
    fn dimension_invariant_under_redundant_generators() {
        let r = ring3();
        let a = Ideal::parse(&r, &["x*y", "x*z"]).unwrap();
        let b = Ideal::parse(&r, &["x*z", "x*y", "x^2*y*z", "x*y + x*z"]).unwrap();
        assert_eq!(a.dimension(), b.dimension());
    }

    #[test]
    fn colon_times_divisor_contained() {
        let r = ring3();
        let i = Ideal::parse(&r, &["x^2*y", "y^2*z"]).unwrap();
        let j = Ideal::parse(&r, &["x*y", "z"]).unwrap();
        let (q, _) = i.colon(&j).unwrap();
        let prod = q.product(&j).unwrap();
        assert!(i.contains_ideal(&prod));
    }
}
