//! Monomials with cached total degree, and the supported monomial orders.

use std::cmp::Ordering;

/// Exponent vector, one entry per ring variable; total degree is cached.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
    deg: u32,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        let deg = exps.iter().sum();
        Monomial { exps, deg }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial { exps: vec![0; nvars], deg: 0 }
    }

    pub fn var(i: usize, nvars: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial { exps, deg: 1 }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect();
        Monomial { exps, deg: self.deg + other.deg }
    }

    pub fn pow(&self, n: u32) -> Monomial {
        let exps = self.exps.iter().map(|a| a * n).collect();
        Monomial { exps, deg: self.deg * n }
    }

    /// Exact quotient `self / other`, or `None` when not divisible.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        let mut exps = Vec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            if a < b {
                return None;
            }
            exps.push(a - b);
        }
        Some(Monomial { exps, deg: self.deg - other.deg })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: Vec<u32> =
            self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect();
        Monomial::new(exps)
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// Ring monomial orders. All are global (1 is minimal) and multiplicative.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    Lex,
    GrLex,
    GrevLex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.exps.len(), b.exps.len());
        match self {
            MonomialOrder::Lex => lex(a, b),
            MonomialOrder::GrLex => a.deg.cmp(&b.deg).then_with(|| lex(a, b)),
            MonomialOrder::GrevLex => a.deg.cmp(&b.deg).then_with(|| revlex_tie(a, b)),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            MonomialOrder::Lex => "lex",
            MonomialOrder::GrLex => "grlex",
            MonomialOrder::GrevLex => "grevlex",
        }
    }

    pub fn parse(s: &str) -> Option<MonomialOrder> {
        match s {
            "lex" => Some(MonomialOrder::Lex),
            "grlex" => Some(MonomialOrder::GrLex),
            "grevlex" => Some(MonomialOrder::GrevLex),
            _ => None,
        }
    }
}

fn lex(a: &Monomial, b: &Monomial) -> Ordering {
    for (x, y) in a.exps.iter().zip(&b.exps) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            ord => return ord,
        }
    }
    Ordering::Equal
}

// Equal-degree tiebreak of grevlex: the last variable in which the exponents
// differ decides, smaller exponent wins.
fn revlex_tie(a: &Monomial, b: &Monomial) -> Ordering {
    for (x, y) in a.exps.iter().zip(&b.exps).rev() {
        match x.cmp(y) {
            Ordering::Equal => continue,
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn grevlex_equal_degree_tiebreak() {
        // x*y vs z^2 in three variables: z^2 < x*y
        let xy = m(&[1, 1, 0]);
        let z2 = m(&[0, 0, 2]);
        assert_eq!(MonomialOrder::GrevLex.cmp(&xy, &z2), Ordering::Greater);
    }

    #[test]
    fn lex_first_exponent_decides() {
        // x > y^2 under lex
        let x = m(&[1, 0]);
        let y2 = m(&[0, 2]);
        assert_eq!(MonomialOrder::Lex.cmp(&x, &y2), Ordering::Greater);
    }

    #[test]
    fn reflexive_equal() {
        let a = m(&[2, 1, 3]);
        for ord in [MonomialOrder::Lex, MonomialOrder::GrLex, MonomialOrder::GrevLex] {
            assert_eq!(ord.cmp(&a, &a), Ordering::Equal);
        }
    }

    #[test]
    fn lcm_and_div() {
        let a = m(&[2, 0, 1]);
        let b = m(&[1, 3, 0]);
        let l = a.lcm(&b);
        assert_eq!(l.exps(), &[2, 3, 1]);
        assert_eq!(l.div(&a).unwrap().exps(), &[0, 3, 0]);
        assert!(a.div(&b).is_none());
    }
}
