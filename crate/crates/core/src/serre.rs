//! Decidable Serre classes and membership tests for finitely presented
//! modules.
//!
//! Three families are shipped: the zero class, the dimension cutoffs
//! dim <= j, and the support conditions Supp <= V(b). Membership of a
//! finitely presented module reduces to its annihilator: dim(S/Ann) for the
//! cutoffs, b inside sqrt(Ann) for the support classes.

use crate::error::Result;
use crate::ideal::Ideal;
use crate::module::FPModule;

#[derive(Debug, Clone, PartialEq)]
pub enum SerreClassSpec {
    /// Only the zero module.
    ZeroOnly,
    /// Modules of Krull dimension at most j.
    DimLE(i64),
    /// Modules with support inside V(b).
    SuppInV(Ideal),
}

impl SerreClassSpec {
    pub fn dim_le(j: i64) -> SerreClassSpec {
        assert!(j >= 0, "DimLE classes require j >= 0");
        SerreClassSpec::DimLE(j)
    }

    pub fn describe(&self) -> String {
        match self {
            SerreClassSpec::ZeroOnly => "zero".to_string(),
            SerreClassSpec::DimLE(j) => format!("dim_le({j})"),
            SerreClassSpec::SuppInV(b) => {
                let gens: Vec<String> = b.gens().iter().map(|g| g.to_string()).collect();
                format!("supp_in({})", gens.join(", "))
            }
        }
    }

    /// Does M belong to the class?
    pub fn contains(&self, m: &FPModule) -> Result<bool> {
        match self {
            SerreClassSpec::ZeroOnly => Ok(m.is_zero()),
            SerreClassSpec::DimLE(j) => Ok(m.dimension()? <= *j),
            SerreClassSpec::SuppInV(b) => {
                let ann = m.annihilator()?;
                for g in b.gens() {
                    if !ann.radical_membership(g)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }

    /// R/p membership for a prime ideal p, without building the module.
    /// The caller asserts primality; the shortcut relies on sqrt(p) = p.
    pub fn contains_prime(&self, p: &Ideal) -> Result<bool> {
        match self {
            SerreClassSpec::ZeroOnly => Ok(p.is_unit_ideal()),
            SerreClassSpec::DimLE(j) => Ok(p.dimension() <= *j),
            SerreClassSpec::SuppInV(b) => {
                Ok(b.gens().iter().all(|g| p.contains_poly(g)))
            }
        }
    }
}
