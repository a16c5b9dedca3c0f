//! Sparse multivariate polynomials over the integers in `n, m, a, b`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::linear::{LinearForm, Point, Symbol};
use crate::arith::ApInt;

/// Exponent vector over `(n, m, a, b)`.
pub type Monomial = [u32; 4];

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, ApInt>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(ApInt::one())
    }

    pub fn constant(c: ApInt) -> Self {
        let mut p = Self::zero();
        p.add_term([0; 4], c);
        p
    }

    pub fn var(s: Symbol) -> Self {
        let mut mono = [0; 4];
        mono[s.index()] = 1;
        let mut p = Self::zero();
        p.add_term(mono, ApInt::one());
        p
    }

    pub fn from_linear(form: &LinearForm) -> Self {
        let mut p = Self::constant(ApInt::from(form.constant_term()));
        for s in Symbol::ALL {
            let mut mono = [0; 4];
            mono[s.index()] = 1;
            p.add_term(mono, ApInt::from(form.coeff(s)));
        }
        p
    }

    fn add_term(&mut self, mono: Monomial, c: ApInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(mono).or_insert_with(ApInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&mono);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &ApInt)> {
        self.terms.iter()
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.iter().sum()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, s: Symbol) -> u32 {
        self.terms.keys().map(|m| m[s.index()]).max().unwrap_or(0)
    }

    pub fn eval(&self, point: &Point) -> ApInt {
        let mut total = ApInt::zero();
        for (mono, c) in &self.terms {
            let mut term = c.clone();
            for (x, &e) in point.iter().zip(mono) {
                term *= num_traits::pow(ApInt::from(*x), e as usize);
            }
            total += term;
        }
        total
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (mono, c) in &rhs.terms {
            out.add_term(*mono, c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (mono, c) in &rhs.terms {
            out.add_term(*mono, -c);
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let mono = [ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2], ma[3] + mb[3]];
                out.add_term(mono, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        // Highest total degree first.
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|x, y| y.0.iter().sum::<u32>().cmp(&x.0.iter().sum::<u32>()).then(y.0.cmp(x.0)));
        for (i, (mono, c)) in terms.into_iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let vars: Vec<String> = Symbol::ALL
                .iter()
                .filter(|s| mono[s.index()] > 0)
                .map(|s| match mono[s.index()] {
                    1 => s.name().to_string(),
                    e => format!("{}^{e}", s.name()),
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{mag}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use Symbol::*;

    #[test]
    fn square_of_linear() {
        let p = MultiPoly::from_linear(&(LinearForm::var(N) + 1)).pow(2);
        assert_eq!(p.to_string(), "n^2 + 2*n + 1");
        assert_eq!(p.total_degree(), 2);
        assert_eq!(p.degree_in(N), 2);
        assert_eq!(p.degree_in(A), 0);
        assert_eq!(p.eval(&[4, 0, 0, 0]), ApInt::from(25));
    }

    #[test]
    fn cancellation_removes_terms() {
        let x = MultiPoly::var(A);
        assert!((&x - &x).is_zero());
        assert_eq!((&x - &x).to_string(), "0");
        assert_eq!(MultiPoly::from_linear(&LinearForm::ZERO), MultiPoly::zero());
    }

    fn poly() -> impl Strategy<Value = MultiPoly> {
        proptest::collection::vec(((0u32..3, 0u32..3, 0u32..3, 0u32..3), -20i64..20), 0..6).prop_map(|terms| {
            let mut p = MultiPoly::zero();
            for ((i, j, k, l), c) in terms {
                p.add_term([i, j, k, l], ApInt::from(c));
            }
            p
        })
    }

    fn point() -> impl Strategy<Value = Point> {
        prop::array::uniform4(-6i64..7)
    }

    proptest! {
        #[test]
        fn ring_laws(p in poly(), q in poly(), r in poly()) {
            prop_assert_eq!(&p + &q, &q + &p);
            prop_assert_eq!(&p * &q, &q * &p);
            prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
            prop_assert_eq!(&p * &MultiPoly::one(), p.clone());
            prop_assert!((&p + &(-&p)).is_zero());
        }

        #[test]
        fn evaluation_is_a_homomorphism(p in poly(), q in poly(), x in point()) {
            prop_assert_eq!((&p * &q).eval(&x), p.eval(&x) * q.eval(&x));
            prop_assert_eq!((&p - &q).eval(&x), p.eval(&x) - q.eval(&x));
        }
    }
}
