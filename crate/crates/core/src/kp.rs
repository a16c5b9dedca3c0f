//! The two-binomial matrix family `C(i+j+a+b, i+a)·C(2n-i-j-a-b, n-i-a)`.
//!
//! For parameters `(n, m, a, b)` the matrix has order `m + 1` and 0-based
//! entries
//!
//! ```text
//! C(i+j+a+b, i+a) · C(2n-i-j-a-b, n-i-a),   0 <= i, j <= m.
//! ```
//!
//! The validated domain is `m <= n`, `m + a <= n`, `m + b <= n` with all
//! parameters nonnegative. On it every binomial has a nonnegative upper index
//! and every superfactorial of the closed form has argument at least `-1`.

use std::fmt;

use serde::Serialize;

use crate::arith::{binomial, ApInt, ApRat};
use crate::error::KpError;
use crate::matrix::ExactMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct KpParams {
    pub n: i64,
    pub m: i64,
    pub a: i64,
    pub b: i64,
}

impl KpParams {
    pub const fn new(n: i64, m: i64, a: i64, b: i64) -> Self {
        Self { n, m, a, b }
    }

    /// The main identity's specialization `(n, n, 0, 0)`.
    pub const fn main(n: i64) -> Self {
        Self::new(n, n, 0, 0)
    }

    pub fn validate(&self) -> Result<(), KpError> {
        let reason = if self.n < 0 || self.m < 0 || self.a < 0 || self.b < 0 {
            "all parameters must be nonnegative"
        } else if self.m > self.n {
            "m > n"
        } else if self.m + self.a > self.n {
            "m + a > n"
        } else if self.m + self.b > self.n {
            "m + b > n"
        } else {
            return Ok(());
        };
        Err(KpError::InvalidParams { params: *self, reason })
    }

    pub fn in_domain(&self) -> bool {
        self.validate().is_ok()
    }

    pub fn order(&self) -> usize {
        (self.m + 1) as usize
    }

    pub fn with(&self, dm: i64, da: i64, db: i64) -> Self {
        Self::new(self.n, self.m + dm, self.a + da, self.b + db)
    }
}

impl fmt::Display for KpParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, m={}, a={}, b={})", self.n, self.m, self.a, self.b)
    }
}

fn raw_entry(p: &KpParams, i: i64, j: i64) -> Result<ApInt, KpError> {
    let left = binomial(i + j + p.a + p.b, i + p.a)?;
    let right = binomial(2 * p.n - i - j - p.a - p.b, p.n - i - p.a)?;
    Ok(left * right)
}

/// Entry `(i, j)`, 0-based, of the matrix for `p`.
pub fn entry(p: &KpParams, i: i64, j: i64) -> Result<ApInt, KpError> {
    p.validate()?;
    if !(0..=p.m).contains(&i) || !(0..=p.m).contains(&j) {
        return Err(KpError::IndexOutOfRange { i, j, m: p.m });
    }
    raw_entry(p, i, j)
}

pub fn build_matrix(p: &KpParams) -> Result<ExactMatrix, KpError> {
    p.validate()?;
    let order = p.order();
    let mut rows = Vec::with_capacity(order);
    for i in 0..=p.m {
        let mut row = Vec::with_capacity(order);
        for j in 0..=p.m {
            row.push(ApRat::from_integer(raw_entry(p, i, j)?));
        }
        rows.push(row);
    }
    Ok(ExactMatrix::from_rows(rows)?)
}

/// Matrix for arbitrary nonnegative `(n, m, a, b)`, with binomials whose
/// upper index is negative taken as zero. Only used to probe outside the
/// validated domain; nothing is asserted about these matrices.
pub fn build_matrix_lenient(p: &KpParams) -> Option<ExactMatrix> {
    if p.n < 0 || p.m < 0 || p.a < 0 || p.b < 0 {
        return None;
    }
    let lenient = |top: i64, bottom: i64| if top < 0 { ApInt::from(0) } else { binomial(top, bottom).expect("nonnegative top") };
    Some(ExactMatrix::from_fn(p.order(), |i, j| {
        let (i, j) = (i as i64, j as i64);
        let value = lenient(i + j + p.a + p.b, i + p.a) * lenient(2 * p.n - i - j - p.a - p.b, p.n - i - p.a);
        ApRat::from_integer(value)
    }))
}

/// Outcome of comparing the four order-`m` corner minors of the matrix for
/// `p` with the order-`m` matrices at shifted parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ShiftReport {
    /// `A_m(1,1)` equals the matrix at `(n, m-1, a, b)`.
    pub upper_left: bool,
    /// `A_m(2,2)` equals the matrix at `(n, m-1, a+1, b+1)`.
    pub lower_right: bool,
    /// `A_m(2,1)` equals the matrix at `(n, m-1, a+1, b)`.
    pub lower_left: bool,
    /// `A_m(1,2)` equals the matrix at `(n, m-1, a, b+1)`.
    pub upper_right: bool,
}

impl ShiftReport {
    pub fn all(&self) -> bool {
        self.upper_left && self.lower_right && self.lower_left && self.upper_right
    }
}

pub fn shift_correspondence(p: &KpParams) -> Result<ShiftReport, KpError> {
    p.validate()?;
    if p.m == 0 {
        return Err(KpError::NoCornerMinor);
    }
    let full = build_matrix(p)?;
    let r = p.m as usize;
    let check = |k: usize, l: usize, da: i64, db: i64| -> Result<bool, KpError> {
        let corner = full.connected_minor(r, k, l)?;
        Ok(corner == build_matrix(&p.with(-1, da, db))?)
    };
    Ok(ShiftReport {
        upper_left: check(1, 1, 0, 0)?,
        lower_right: check(2, 2, 1, 1)?,
        lower_left: check(2, 1, 1, 0)?,
        upper_right: check(1, 2, 0, 1)?,
    })
}

/// Every validated-domain point with `n <= n_max`, ordered by `(n, m, a, b)`.
pub fn domain_points(n_max: i64) -> Vec<KpParams> {
    let mut out = Vec::new();
    for n in 0..=n_max {
        for m in 0..=n {
            for a in 0..=(n - m) {
                for b in 0..=(n - m) {
                    out.push(KpParams::new(n, m, a, b));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::factorial;

    // C(p,q) straight from factorials; independent of `binomial`.
    fn choose(p: i64, q: i64) -> ApInt {
        if q < 0 || q > p {
            return ApInt::from(0);
        }
        factorial(p).unwrap() / (factorial(q).unwrap() * factorial(p - q).unwrap())
    }

    fn oracle_entry(p: &KpParams, i: i64, j: i64) -> ApInt {
        choose(i + j + p.a + p.b, i + p.a) * choose(2 * p.n - i - j - p.a - p.b, p.n - i - p.a)
    }

    #[test]
    fn entry_examples() {
        assert_eq!(oracle_entry(&KpParams::new(2, 2, 0, 0), 0, 0), ApInt::from(6));
        assert_eq!(entry(&KpParams::new(2, 2, 0, 0), 0, 0).unwrap(), ApInt::from(6));
        assert_eq!(entry(&KpParams::new(2, 2, 0, 0), 1, 1).unwrap(), ApInt::from(4));
        assert_eq!(entry(&KpParams::new(2, 1, 1, 0), 1, 0).unwrap(), ApInt::from(1));
    }

    #[test]
    fn entry_errors() {
        assert!(matches!(entry(&KpParams::new(2, 1, 0, 0), 2, 0), Err(KpError::IndexOutOfRange { .. })));
        assert!(matches!(entry(&KpParams::new(2, 1, 0, 0), 0, -1), Err(KpError::IndexOutOfRange { .. })));
        assert!(matches!(entry(&KpParams::new(2, 2, 1, 0), 0, 0), Err(KpError::InvalidParams { .. })));
        assert!(build_matrix(&KpParams::new(1, 2, 0, 0)).is_err());
        assert!(build_matrix(&KpParams::new(3, 1, 0, -1)).is_err());
    }

    #[test]
    fn build_examples() {
        let m = |rows: &[[i64; 3]]| ExactMatrix::from_integers(rows).unwrap();
        assert_eq!(build_matrix(&KpParams::main(1)).unwrap(), ExactMatrix::from_integers(&[[2, 1], [1, 2]]).unwrap());
        assert_eq!(build_matrix(&KpParams::main(2)).unwrap(), m(&[[6, 3, 1], [3, 4, 3], [1, 3, 6]]));
        assert_eq!(build_matrix(&KpParams::main(0)).unwrap(), ExactMatrix::from_integers(&[[1]]).unwrap());
    }

    #[test]
    fn build_matches_oracle_on_sweep() {
        for p in domain_points(6) {
            let a = build_matrix(&p).unwrap();
            for i in 0..=p.m {
                for j in 0..=p.m {
                    let e = a.get(i as usize, j as usize);
                    assert_eq!(e, &ApRat::from_integer(oracle_entry(&p, i, j)), "{p} ({i},{j})");
                    assert!(e.is_integer() && *e.numer() >= ApInt::from(0));
                }
            }
            if p.a == p.b {
                assert!(a.is_symmetric(), "{p}");
            }
        }
    }

    #[test]
    fn shift_examples() {
        assert!(shift_correspondence(&KpParams::new(2, 2, 0, 0)).unwrap().all());
        assert!(shift_correspondence(&KpParams::new(3, 2, 1, 0)).unwrap().all());
        assert!(shift_correspondence(&KpParams::new(1, 1, 0, 0)).unwrap().all());
        assert_eq!(shift_correspondence(&KpParams::new(1, 0, 0, 0)), Err(KpError::NoCornerMinor));
    }

    #[test]
    fn shift_holds_across_sweep() {
        for p in domain_points(6).into_iter().filter(|p| p.m >= 1) {
            assert!(shift_correspondence(&p).unwrap().all(), "{p}");
        }
    }

    #[test]
    fn domain_enumeration() {
        assert_eq!(domain_points(0), vec![KpParams::new(0, 0, 0, 0)]);
        assert!(domain_points(5).iter().all(KpParams::in_domain));
        // n=1: m=0 gives 4 (a,b) pairs, m=1 gives 1.
        assert_eq!(domain_points(1).len(), 1 + 5);
    }

    #[test]
    fn lenient_agrees_inside_domain() {
        for p in domain_points(4) {
            assert_eq!(build_matrix_lenient(&p).unwrap(), build_matrix(&p).unwrap());
        }
    }
}
