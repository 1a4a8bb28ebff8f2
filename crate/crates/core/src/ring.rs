//! Ring descriptors: polynomial rings over prime fields and their quotients.
//!
//! All computation is carried over the ambient polynomial ring S; a quotient
//! ring R = S/J is a descriptor pairing S with generators of J, and every
//! R-object (ideal, module) is represented by its preimage over S with J
//! absorbed into relations.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::monomial::MonomialOrder;
use crate::poly::Polynomial;

pub const MAX_VARS: usize = 16;

/// The ambient polynomial ring S = GF(p)[x_1..x_n] with its active monomial
/// order. Shared behind `Arc`; two rings compare equal when field, variable
/// names and order all agree.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    field: PrimeField,
    vars: Vec<String>,
    order: MonomialOrder,
}

impl Ring {
    pub fn new(field: PrimeField, vars: Vec<String>, order: MonomialOrder) -> Result<Arc<Ring>> {
        if vars.is_empty() || vars.len() > MAX_VARS {
            return Err(Error::TooManyVariables(vars.len()));
        }
        for (i, v) in vars.iter().enumerate() {
            if v.is_empty() || vars[..i].contains(v) {
                return Err(Error::BadVariableNames);
            }
        }
        if let MonomialOrder::Block { split } = order {
            if split == 0 || split >= vars.len() {
                return Err(Error::Precondition(format!(
                    "block order split {split} must lie strictly inside 1..{}",
                    vars.len()
                )));
            }
        }
        Ok(Arc::new(Ring { field, vars, order }))
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    /// Same ring, different active order. Used internally where an algorithm
    /// prescribes its own order (grevlex dimension, block elimination).
    pub fn with_order(self: &Arc<Self>, order: MonomialOrder) -> Arc<Ring> {
        if self.order == order {
            return self.clone();
        }
        Arc::new(Ring {
            field: self.field,
            vars: self.vars.clone(),
            order,
        })
    }

    /// Ring with one auxiliary variable prepended and a block order that
    /// eliminates it.
    pub fn with_aux_var(self: &Arc<Self>) -> Arc<Ring> {
        let mut vars = Vec::with_capacity(self.vars.len() + 1);
        vars.push("#t".to_string());
        vars.extend(self.vars.iter().cloned());
        Arc::new(Ring {
            field: self.field,
            vars,
            order: MonomialOrder::Block { split: 1 },
        })
    }

    pub fn same_ring(self: &Arc<Self>, other: &Arc<Ring>) -> Result<()> {
        if Arc::ptr_eq(self, other) || **self == **other {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!(
                "GF({})[{}] vs GF({})[{}]",
                self.field.characteristic(),
                self.vars.join(","),
                other.field.characteristic(),
                other.vars.join(","),
            )))
        }
    }
}

/// A working ring R = S/J. `quotient` may be empty, in which case R = S.
#[derive(Debug, Clone)]
pub struct QuotientRing {
    base: Arc<Ring>,
    quotient: Vec<Polynomial>,
}

impl QuotientRing {
    pub fn polynomial(base: Arc<Ring>) -> Self {
        QuotientRing { base, quotient: Vec::new() }
    }

    pub fn new(base: Arc<Ring>, quotient: Vec<Polynomial>) -> Result<Self> {
        for g in &quotient {
            base.same_ring(g.ring())?;
            if g.is_zero() {
                return Err(Error::Precondition(
                    "quotient ideal generators must be nonzero".into(),
                ));
            }
        }
        Ok(QuotientRing { base, quotient })
    }

    pub fn base(&self) -> &Arc<Ring> {
        &self.base
    }

    pub fn quotient_gens(&self) -> &[Polynomial] {
        &self.quotient
    }

    pub fn is_polynomial_ring(&self) -> bool {
        self.quotient.is_empty()
    }
}
