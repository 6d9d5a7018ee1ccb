//! Sparse multivariate polynomials with exact coefficients.
//!
//! Terms are kept sorted strictly descending in the ambient ring's monomial
//! order; the zero polynomial is the empty term list. All arithmetic returns
//! fresh normalized values.

use crate::monomial::{Monomial, MonomialOrder};
use crate::scalar::{Field, Scalar};
use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: Vec<(Monomial, Scalar)>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn one(field: &Field, nvars: usize) -> Self {
        Polynomial { terms: vec![(Monomial::one(nvars), field.one())] }
    }

    pub fn constant(c: Scalar, nvars: usize) -> Self {
        if c.is_zero() {
            Polynomial::zero()
        } else {
            Polynomial { terms: vec![(Monomial::one(nvars), c)] }
        }
    }

    pub fn var(field: &Field, i: usize, nvars: usize) -> Self {
        Polynomial { terms: vec![(Monomial::var(i, nvars), field.one())] }
    }

    pub fn term(m: Monomial, c: Scalar) -> Self {
        if c.is_zero() {
            Polynomial::zero()
        } else {
            Polynomial { terms: vec![(m, c)] }
        }
    }

    /// Build from unsorted terms: sorts descending and combines equal monomials.
    pub fn from_terms(mut terms: Vec<(Monomial, Scalar)>, ord: &MonomialOrder) -> Self {
        terms.sort_unstable_by(|a, b| ord.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, Scalar)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            if let Some(last) = out.last_mut() {
                if last.0 == m {
                    last.1 = last.1.add(&c);
                    if last.1.is_zero() {
                        out.pop();
                    }
                    continue;
                }
            }
            if !c.is_zero() {
                out.push((m, c));
            }
        }
        Polynomial { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Leading term (the stored order is the ambient one).
    pub fn lt(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// `Some(d)` when every term has total degree `d` (zero counts as homogeneous).
    pub fn homogeneous_degree(&self) -> Option<u32> {
        match self.terms.first() {
            None => Some(0),
            Some((m0, _)) => {
                let d = m0.degree();
                if self.terms.iter().all(|(m, _)| m.degree() == d) {
                    Some(d)
                } else {
                    None
                }
            }
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_degree().is_some() || self.is_zero()
    }

    pub fn add(&self, other: &Polynomial, ord: &MonomialOrder) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match ord.cmp(&self.terms[i].0, &other.terms[j].0) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = self.terms[i].1.add(&other.terms[j].1);
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Polynomial { terms: out }
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect() }
    }

    pub fn sub(&self, other: &Polynomial, ord: &MonomialOrder) -> Polynomial {
        self.add(&other.neg(), ord)
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(m, a)| (m.clone(), a.mul(c))).collect() }
    }

    /// Multiply by the single term `c * m`; preserves sortedness.
    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(n, a)| (n.mul(m), a.mul(c))).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial, ord: &MonomialOrder) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut acc = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (m, a) in &self.terms {
            for (n, b) in &other.terms {
                acc.push((m.mul(n), a.mul(b)));
            }
        }
        Polynomial::from_terms(acc, ord)
    }

    pub fn pow(&self, n: u32, ord: &MonomialOrder) -> Polynomial {
        let nv = self.terms.first().map(|(m, _)| m.nvars()).unwrap_or(0);
        let field = self.terms.first().map(|(_, c)| c.field()).unwrap_or(Field::Q);
        let mut out = Polynomial::one(&field, nv);
        for _ in 0..n {
            out = out.mul(self, ord);
        }
        out
    }

    /// Make the leading coefficient 1.
    pub fn monic(&self, _ord: &MonomialOrder) -> Polynomial {
        match self.lt() {
            None => Polynomial::zero(),
            Some((_, c)) => self.scale(&c.inv()),
        }
    }

    /// Substitute an integer value for variable `i`, dropping to a polynomial
    /// in the remaining variables (exponents of `i` are evaluated).
    pub fn substitute_int(&self, i: usize, value: i64, field: &Field, ord: &MonomialOrder) -> Polynomial {
        let mut acc = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exps()[i];
            let mut exps = m.exps().to_vec();
            exps[i] = 0;
            let mut coeff = c.clone();
            let base = field.from_i64(value);
            for _ in 0..e {
                coeff = coeff.mul(&base);
            }
            acc.push((Monomial::new(exps), coeff));
        }
        Polynomial::from_terms(acc, ord)
    }

    /// The coefficient scalar of the degree-zero term, if any.
    pub fn constant_part(&self) -> Option<&Scalar> {
        self.terms.iter().find(|(m, _)| m.is_one()).map(|(_, c)| c)
    }

    /// True when the polynomial is a nonzero scalar.
    pub fn is_nonzero_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> Polynomial {
        let terms: Vec<_> = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let c2 = f(c);
                if c2.is_zero() {
                    None
                } else {
                    Some((m.clone(), c2))
                }
            })
            .collect();
        Polynomial { terms }
    }

    pub fn display<'a>(&'a self, vars: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, vars }
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Polynomial,
    vars: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.poly.terms.iter().enumerate() {
            let cs = c.to_string();
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, cs),
            };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if m.is_one() || mag != "1" {
                factors.push(mag);
            }
            for (v, e) in m.exps().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.vars[v].clone()),
                    _ => factors.push(format!("{}^{}", self.vars[v], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const ORD: MonomialOrder = MonomialOrder::GrevLex;

    fn x_plus_y() -> Polynomial {
        let f = Field::Q;
        Polynomial::var(&f, 0, 2).add(&Polynomial::var(&f, 1, 2), &ORD)
    }

    #[test]
    fn difference_of_squares() {
        let f = Field::Q;
        let x = Polynomial::var(&f, 0, 2);
        let y = Polynomial::var(&f, 1, 2);
        let p = x_plus_y().mul(&x.sub(&y, &ORD), &ORD);
        let expect = x.mul(&x, &ORD).sub(&y.mul(&y, &ORD), &ORD);
        assert_eq!(p, expect);
    }

    #[test]
    fn mul_by_zero_absorbs() {
        let p = x_plus_y();
        assert!(p.mul(&Polynomial::zero(), &ORD).is_zero());
    }

    #[test]
    fn freshman_dream_mod_two() {
        let f = Field::Fp(2);
        let x = Polynomial::var(&f, 0, 1);
        let one = Polynomial::one(&f, 1);
        let sq = x.add(&one, &ORD).pow(2, &ORD);
        let expect = x.mul(&x, &ORD).add(&one, &ORD);
        assert_eq!(sq, expect);
    }
}
