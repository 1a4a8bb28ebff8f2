//! Sparse multivariate polynomials over a prime field.
//!
//! Terms are kept sorted in strictly descending order under the ring's
//! active monomial order, with no zero coefficients, so equality of
//! canonical forms is structural equality.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::ring::Ring;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub mono: Monomial,
    pub coef: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: Vec<Term>,
}

impl Polynomial {
    /// Build from raw (monomial, coefficient) pairs; combines duplicates,
    /// drops zeros and sorts into canonical order.
    pub fn from_terms(ring: Arc<Ring>, raw: Vec<(Monomial, u64)>) -> Polynomial {
        let p = ring.field().characteristic();
        let mut acc: BTreeMap<Monomial, u64> = BTreeMap::new();
        for (mono, coef) in raw {
            debug_assert_eq!(mono.len(), ring.num_vars());
            let e = acc.entry(mono).or_insert(0);
            *e = (*e + coef % p) % p;
        }
        let mut terms: Vec<Term> = acc
            .into_iter()
            .filter(|(_, c)| *c != 0)
            .map(|(mono, coef)| Term { mono, coef })
            .collect();
        let order = ring.order();
        terms.sort_by(|a, b| order.cmp(&b.mono, &a.mono));
        Polynomial { ring, terms }
    }

    pub fn zero(ring: Arc<Ring>) -> Polynomial {
        Polynomial { ring, terms: Vec::new() }
    }

    pub fn constant(ring: Arc<Ring>, c: i64) -> Polynomial {
        let c = ring.field().element(c);
        let n = ring.num_vars();
        Polynomial::from_terms(ring, vec![(Monomial::one(n), c)])
    }

    pub fn one(ring: Arc<Ring>) -> Polynomial {
        Polynomial::constant(ring, 1)
    }

    pub fn var(ring: Arc<Ring>, i: usize) -> Polynomial {
        let n = ring.num_vars();
        Polynomial::from_terms(ring, vec![(Monomial::var(n, i), 1)])
    }

    pub fn monomial(ring: Arc<Ring>, mono: Monomial, coef: u64) -> Polynomial {
        Polynomial::from_terms(ring, vec![(mono, coef)])
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.iter().all(|t| t.mono.is_one())
    }

    pub fn leading(&self) -> Option<&Term> {
        self.terms.first()
    }

    /// Total degree; None for the zero polynomial.
    pub fn degree(&self) -> Option<u64> {
        self.terms.iter().map(|t| t.mono.degree()).max()
    }

    /// Some(d) if every term has total degree d; zero is homogeneous of any
    /// degree and reports Some(0).
    pub fn homogeneous_degree(&self) -> Option<u64> {
        let mut it = self.terms.iter().map(|t| t.mono.degree());
        match it.next() {
            None => Some(0),
            Some(d) => it.all(|e| e == d).then_some(d),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_degree().is_some()
    }

    /// Re-canonicalize into a ring with the same field but possibly another
    /// active order; variable counts must agree.
    pub fn with_ring(&self, ring: &Arc<Ring>) -> Polynomial {
        assert_eq!(ring.num_vars(), self.ring.num_vars());
        Polynomial::from_terms(
            ring.clone(),
            self.terms.iter().map(|t| (t.mono.clone(), t.coef)).collect(),
        )
    }

    /// Insert a zero exponent for a new first variable (into an aux ring).
    pub fn lift_aux(&self, aux: &Arc<Ring>) -> Polynomial {
        assert_eq!(aux.num_vars(), self.ring.num_vars() + 1);
        Polynomial::from_terms(
            aux.clone(),
            self.terms
                .iter()
                .map(|t| {
                    let mut e = vec![0u32];
                    e.extend_from_slice(t.mono.exponents());
                    (Monomial::new(e), t.coef)
                })
                .collect(),
        )
    }

    /// Drop the first variable; every term must be free of it.
    pub fn drop_aux(&self, base: &Arc<Ring>) -> Polynomial {
        assert_eq!(base.num_vars() + 1, self.ring.num_vars());
        Polynomial::from_terms(
            base.clone(),
            self.terms
                .iter()
                .map(|t| {
                    assert_eq!(t.mono.exponents()[0], 0);
                    (Monomial::new(t.mono.exponents()[1..].to_vec()), t.coef)
                })
                .collect(),
        )
    }

    pub fn involves_var(&self, i: usize) -> bool {
        self.terms.iter().any(|t| t.mono.exponents()[i] > 0)
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ring.same_ring(&other.ring)?;
        let mut raw: Vec<(Monomial, u64)> =
            self.terms.iter().map(|t| (t.mono.clone(), t.coef)).collect();
        raw.extend(other.terms.iter().map(|t| (t.mono.clone(), t.coef)));
        Ok(Polynomial::from_terms(self.ring.clone(), raw))
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        let f = self.ring.field();
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term { mono: t.mono.clone(), coef: f.neg(t.coef) })
                .collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ring.same_ring(&other.ring)?;
        let f = self.ring.field();
        let mut raw = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                raw.push((a.mono.mul(&b.mono)?, f.mul(a.coef, b.coef)));
            }
        }
        Ok(Polynomial::from_terms(self.ring.clone(), raw))
    }

    pub fn scale(&self, c: u64) -> Polynomial {
        let f = self.ring.field();
        let c = c % f.characteristic();
        if c == 0 {
            return Polynomial::zero(self.ring.clone());
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term { mono: t.mono.clone(), coef: f.mul(t.coef, c) })
                .collect(),
        }
    }

    /// Multiply by the single term c * m; order of terms is preserved.
    pub fn mul_term(&self, mono: &Monomial, coef: u64) -> Result<Polynomial> {
        let f = self.ring.field();
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let c = f.mul(t.coef, coef);
            if c != 0 {
                terms.push(Term { mono: t.mono.mul(mono)?, coef: c });
            }
        }
        Ok(Polynomial { ring: self.ring.clone(), terms })
    }

    /// Make the leading coefficient 1.
    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            None => self.clone(),
            Some(lt) => self.scale(self.ring.field().inv(lt.coef)),
        }
    }

    pub fn pow(&self, mut k: u32) -> Result<Polynomial> {
        let mut acc = Polynomial::one(self.ring.clone());
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }
}

/// Division with remainder by an ordered list of divisors under the ring's
/// active order: f = sum q_i g_i + r with no term of r divisible by any
/// leading term of the g_i and lt(q_i g_i) <= lt(f).
pub fn div_rem(f: &Polynomial, divisors: &[Polynomial]) -> Result<(Vec<Polynomial>, Polynomial)> {
    let ring = f.ring().clone();
    for g in divisors {
        ring.same_ring(g.ring())?;
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
    }
    let field = *ring.field();
    let mut quotients = vec![Polynomial::zero(ring.clone()); divisors.len()];
    let mut remainder: Vec<(Monomial, u64)> = Vec::new();
    let mut h = f.clone();
    'outer: while let Some(lt) = h.leading().cloned() {
        for (i, g) in divisors.iter().enumerate() {
            let glt = g.leading().unwrap();
            if glt.mono.divides(&lt.mono) {
                let m = glt.mono.quotient(&lt.mono);
                let c = field.div(lt.coef, glt.coef);
                quotients[i] = quotients[i].add(&Polynomial::monomial(ring.clone(), m.clone(), c))?;
                h = h.sub(&g.mul_term(&m, c)?)?;
                continue 'outer;
            }
        }
        remainder.push((lt.mono.clone(), lt.coef));
        h = h.sub(&Polynomial::monomial(ring.clone(), lt.mono, lt.coef))?;
    }
    Ok((quotients, Polynomial::from_terms(ring, remainder)))
}

impl fmt::Display for Polynomial {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(out, "0");
        }
        let vars = self.ring.vars();
        for (k, t) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(out, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if t.coef != 1 || t.mono.is_one() {
                factors.push(t.coef.to_string());
            }
            for (i, &e) in t.mono.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(vars[i].clone()),
                    _ => factors.push(format!("{}^{}", vars[i], e)),
                }
            }
            write!(out, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// Minimal polynomial expression parser used by the library and tests:
/// `+ - * ^` with integer literals, parentheses and declared variable names.
/// The CLI front end has its own span-tracking parser; this one only reports
/// a bare message.
pub fn parse_poly(ring: &Arc<Ring>, input: &str) -> Result<Polynomial> {
    let mut p = PolyParser { ring, input: input.as_bytes(), pos: 0 };
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos != p.input.len() {
        return Err(Error::Precondition(format!(
            "unexpected trailing input at byte {} of {input:?}",
            p.pos
        )));
    }
    Ok(poly)
}

struct PolyParser<'a> {
    ring: &'a Arc<Ring>,
    input: &'a [u8],
    pos: usize,
}

impl<'a> PolyParser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.input.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                self.term()?.neg()
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?)?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while let Some(b'*') = self.peek() {
            self.pos += 1;
            acc = acc.mul(&self.factor()?)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if let Some(b'^') = self.peek() {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.input.len() && self.input[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let digits = std::str::from_utf8(&self.input[start..self.pos]).unwrap();
            let e: u32 = digits
                .parse()
                .map_err(|_| Error::Precondition("expected exponent after ^".into()))?;
            return base.pow(e);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(Error::Precondition("expected closing paren".into()));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.input.len() && self.input[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.input[start..self.pos]).unwrap();
                let v: u64 = digits
                    .parse()
                    .map_err(|_| Error::Precondition("integer literal too large".into()))?;
                let c = (v % self.ring.field().characteristic()) as i64;
                Ok(Polynomial::constant(self.ring.clone(), c))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.input.len()
                    && (self.input[self.pos].is_ascii_alphanumeric() || self.input[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.input[start..self.pos]).unwrap();
                match self.ring.var_index(name) {
                    Some(i) => Ok(Polynomial::var(self.ring.clone(), i)),
                    None => Err(Error::Precondition(format!("unknown variable {name:?}"))),
                }
            }
            other => Err(Error::Precondition(format!(
                "unexpected character {:?} in polynomial",
                other.map(|c| c as char)
            ))),
        }
    }
}
