//! Ring presentations: a coefficient field, named variables, a monomial order,
//! and a defining ideal presenting R = k[x_1..x_v]/I.

use crate::monomial::{Monomial, MonomialOrder};
use crate::parse::{parse_poly_raw, ParseError};
use crate::poly::Polynomial;
use crate::scalar::{Field, Scalar};
use once_cell::sync::OnceCell;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RingError {
    #[error("variable names must be distinct (duplicate `{0}`)")]
    DuplicateVariable(String),
    #[error("invalid variable name `{0}`")]
    BadVariableName(String),
}

#[derive(Clone, Debug)]
pub struct RingSpec {
    pub field: Field,
    pub vars: Vec<String>,
    pub order: MonomialOrder,
    /// Generators of the defining ideal I (zero polynomials removed).
    pub ideal: Vec<Polynomial>,
    graded: bool,
    ideal_gb: OnceCell<Arc<Vec<Polynomial>>>,
}

impl PartialEq for RingSpec {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.vars == other.vars
            && self.order == other.order
            && self.ideal == other.ideal
    }
}
impl Eq for RingSpec {}

impl RingSpec {
    pub fn new(
        field: Field,
        vars: Vec<String>,
        order: MonomialOrder,
        ideal: Vec<Polynomial>,
    ) -> Result<Self, RingError> {
        for (i, v) in vars.iter().enumerate() {
            if v.is_empty()
                || !v.chars().next().unwrap().is_ascii_alphabetic()
                || !v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
            {
                return Err(RingError::BadVariableName(v.clone()));
            }
            if vars[..i].contains(v) {
                return Err(RingError::DuplicateVariable(v.clone()));
            }
        }
        let ideal: Vec<Polynomial> = ideal.into_iter().filter(|p| !p.is_zero()).collect();
        let graded = ideal.iter().all(|p| p.is_homogeneous());
        Ok(RingSpec { field, vars, order, ideal, graded, ideal_gb: OnceCell::new() })
    }

    /// Polynomial ring over Q in the given variables, grevlex order.
    pub fn poly_ring_q(vars: &[&str]) -> Self {
        RingSpec::new(
            Field::Q,
            vars.iter().map(|s| s.to_string()).collect(),
            MonomialOrder::GrevLex,
            Vec::new(),
        )
        .unwrap()
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    /// True iff every defining generator is homogeneous, so R is standard graded.
    pub fn is_graded(&self) -> bool {
        self.graded
    }

    pub fn parse_poly(&self, text: &str) -> Result<Polynomial, ParseError> {
        Ok(self.normalize(&parse_poly_raw(text, &self.field, &self.vars, &self.order)?))
    }

    pub fn show(&self, p: &Polynomial) -> String {
        p.display(&self.vars).to_string()
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero()
    }

    pub fn one(&self) -> Polynomial {
        Polynomial::one(&self.field, self.nvars())
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::var(&self.field, i, self.nvars())
    }

    pub fn constant(&self, n: i64) -> Polynomial {
        Polynomial::constant(self.field.from_i64(n), self.nvars())
    }

    pub fn add(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        a.add(b, &self.order)
    }

    pub fn sub(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        a.sub(b, &self.order)
    }

    pub fn mul(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        a.mul(b, &self.order)
    }

    /// Reduced Gröbner basis of the defining ideal, computed in the ambient
    /// polynomial ring and cached.
    pub fn ideal_gb(&self) -> &Arc<Vec<Polynomial>> {
        self.ideal_gb.get_or_init(|| {
            Arc::new(crate::groebner::reduced_gb_rank1(&self.ideal, self))
        })
    }

    /// Normal form of a ring element modulo the defining ideal.
    pub fn normalize(&self, p: &Polynomial) -> Polynomial {
        if self.ideal.is_empty() {
            return p.clone();
        }
        crate::groebner::nf_rank1(p, self.ideal_gb(), self)
    }

    pub fn is_zero_elem(&self, p: &Polynomial) -> bool {
        self.normalize(p).is_zero()
    }

    /// The further quotient R/J, presented over the same ambient polynomial ring.
    pub fn quotient(&self, extra: &[Polynomial]) -> RingSpec {
        let mut ideal = self.ideal.clone();
        ideal.extend(extra.iter().cloned());
        RingSpec::new(self.field.clone(), self.vars.clone(), self.order, ideal).unwrap()
    }

    /// A monomial is standard when it avoids the leading-term ideal of I.
    pub fn is_standard_monomial(&self, m: &Monomial) -> bool {
        !self.ideal_gb().iter().any(|g| {
            g.lt().map(|(lm, _)| lm.divides(m)).unwrap_or(false)
        })
    }

    /// All monomials of the ambient polynomial ring of total degree d.
    pub fn monomials_of_degree(&self, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let n = self.nvars();
        if n == 0 {
            if d == 0 {
                out.push(Monomial::one(0));
            }
            return out;
        }
        let mut exps = vec![0u32; n];
        fn rec(exps: &mut Vec<u32>, i: usize, rem: u32, out: &mut Vec<Monomial>) {
            if i + 1 == exps.len() {
                exps[i] = rem;
                out.push(Monomial::new(exps.clone()));
                return;
            }
            for e in 0..=rem {
                exps[i] = e;
                rec(exps, i + 1, rem - e, out);
            }
        }
        rec(&mut exps, 0, d, &mut out);
        out
    }

    /// k-dimension of the degree-d graded piece of R (graded rings only).
    pub fn graded_piece_dim(&self, d: u32) -> usize {
        self.monomials_of_degree(d)
            .into_iter()
            .filter(|m| self.is_standard_monomial(m))
            .count()
    }

    pub fn scalar_from_i64(&self, n: i64) -> Scalar {
        self.field.from_i64(n)
    }
}
