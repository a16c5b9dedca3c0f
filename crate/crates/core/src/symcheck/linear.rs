use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

/// The four symbols every linear form ranges over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Symbol {
    N,
    M,
    A,
    B,
}

impl Symbol {
    pub const ALL: [Symbol; 4] = [Symbol::N, Symbol::M, Symbol::A, Symbol::B];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Symbol::N => "n",
            Symbol::M => "m",
            Symbol::A => "a",
            Symbol::B => "b",
        }
    }
}

/// Integer assignment of `(n, m, a, b)`.
pub type Point = [i64; 4];

/// `c_n·n + c_m·m + c_a·a + c_b·b + constant` with integer coefficients.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearForm {
    coeffs: [i64; 4],
    constant: i64,
}

impl LinearForm {
    pub const ZERO: LinearForm = LinearForm { coeffs: [0; 4], constant: 0 };

    pub const fn new(coeffs: [i64; 4], constant: i64) -> Self {
        Self { coeffs, constant }
    }

    pub const fn constant(c: i64) -> Self {
        Self { coeffs: [0; 4], constant: c }
    }

    pub fn var(s: Symbol) -> Self {
        let mut coeffs = [0; 4];
        coeffs[s.index()] = 1;
        Self { coeffs, constant: 0 }
    }

    pub fn coeff(&self, s: Symbol) -> i64 {
        self.coeffs[s.index()]
    }

    pub fn coeffs(&self) -> [i64; 4] {
        self.coeffs
    }

    pub fn constant_term(&self) -> i64 {
        self.constant
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs == [0; 4]
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::ZERO
    }

    /// The value, if the form has no symbolic part.
    pub fn as_constant(&self) -> Option<i64> {
        self.is_constant().then_some(self.constant)
    }

    pub fn eval(&self, point: &Point) -> i64 {
        self.coeffs.iter().zip(point).map(|(c, x)| c * x).sum::<i64>() + self.constant
    }

    /// Replace each symbol by the given form.
    pub fn substitute(&self, images: &[LinearForm; 4]) -> LinearForm {
        Symbol::ALL
            .iter()
            .fold(LinearForm::constant(self.constant), |acc, &s| acc + images[s.index()] * self.coeff(s))
    }

    /// `self - other` when it is a constant.
    pub fn constant_offset(&self, other: &LinearForm) -> Option<i64> {
        (*self - *other).as_constant()
    }
}

impl From<i64> for LinearForm {
    fn from(c: i64) -> Self {
        LinearForm::constant(c)
    }
}

impl From<Symbol> for LinearForm {
    fn from(s: Symbol) -> Self {
        LinearForm::var(s)
    }
}

impl Add for LinearForm {
    type Output = LinearForm;
    fn add(self, rhs: LinearForm) -> LinearForm {
        let mut coeffs = self.coeffs;
        for (c, r) in coeffs.iter_mut().zip(rhs.coeffs) {
            *c += r;
        }
        LinearForm { coeffs, constant: self.constant + rhs.constant }
    }
}

impl Add<i64> for LinearForm {
    type Output = LinearForm;
    fn add(self, rhs: i64) -> LinearForm {
        self + LinearForm::constant(rhs)
    }
}

impl Sub for LinearForm {
    type Output = LinearForm;
    fn sub(self, rhs: LinearForm) -> LinearForm {
        self + -rhs
    }
}

impl Sub<i64> for LinearForm {
    type Output = LinearForm;
    fn sub(self, rhs: i64) -> LinearForm {
        self + LinearForm::constant(-rhs)
    }
}

impl Neg for LinearForm {
    type Output = LinearForm;
    fn neg(self) -> LinearForm {
        self * -1
    }
}

impl Mul<i64> for LinearForm {
    type Output = LinearForm;
    fn mul(self, k: i64) -> LinearForm {
        LinearForm { coeffs: self.coeffs.map(|c| c * k), constant: self.constant * k }
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for s in Symbol::ALL {
            let c = self.coeff(s);
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if wrote { "+" } else { "" };
            let mag = c.abs();
            if mag == 1 {
                write!(f, "{sign}{}", s.name())?;
            } else {
                write!(f, "{sign}{mag}{}", s.name())?;
            }
            wrote = true;
        }
        match (wrote, self.constant) {
            (false, c) => write!(f, "{c}"),
            (true, 0) => Ok(()),
            (true, c) if c > 0 => write!(f, "+{c}"),
            (true, c) => write!(f, "{c}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Symbol::*;

    fn v(s: Symbol) -> LinearForm {
        LinearForm::var(s)
    }

    #[test]
    fn arithmetic_and_display() {
        let x = v(N) * 2 - v(M) - v(A) + 1;
        assert_eq!(x.to_string(), "2n-m-a+1");
        assert_eq!((-x).to_string(), "-2n+m+a-1");
        assert_eq!(LinearForm::constant(-3).to_string(), "-3");
        assert_eq!(LinearForm::ZERO.to_string(), "0");
        assert_eq!(x.eval(&[3, 1, 2, 9]), 4);
    }

    #[test]
    fn substitution_shifts() {
        // (n-m-a-1) at m -> m-1, a -> a+1 is unchanged.
        let x = v(N) - v(M) - v(A) - 1;
        let images = [v(N), v(M) - 1, v(A) + 1, v(B)];
        assert_eq!(x.substitute(&images), x);
        let fixed = [v(N), LinearForm::constant(2), v(A), v(B)];
        assert_eq!((v(M) + 1).substitute(&fixed), LinearForm::constant(3));
    }

    #[test]
    fn constant_offsets() {
        let x = v(N) + v(A);
        assert_eq!((x + 3).constant_offset(&x), Some(3));
        assert_eq!(x.constant_offset(&v(N)), None);
    }
}
