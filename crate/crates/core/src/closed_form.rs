//! Closed-form product side of the two-parameter identity, and the main
//! identity's special case `(2n+1)!^(n+1) / sf(2n+1)`.
//!
//! `sf` is the superfactorial `0!·1!·…·k!`, with `sf(-1) = 1`.

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{factorial, superfactorial, ApInt, ApRat};
use crate::error::ClosedFormError;
use crate::kp::KpParams;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RabbitValue {
    pub value: ApRat,
    /// Denominator is 1 after reduction.
    pub integral: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Factorial,
    Superfactorial,
}

// One factor of the closed form, labelled for domain errors.
struct Factor {
    label: &'static str,
    kind: Kind,
    argument: i64,
    exponent: u32,
}

fn factors(p: &KpParams) -> (Vec<Factor>, Vec<Factor>) {
    use Kind::*;
    let KpParams { n, m, a, b } = *p;
    let f = |label, kind, argument, exponent| Factor { label, kind, argument, exponent };
    let numerator = vec![
        f("(a+b)!", Factorial, a + b, 1),
        f("(2n+1)!^(m+1)", Factorial, 2 * n + 1, (m + 1) as u32),
        f("(2n-m)!!", Superfactorial, 2 * n - m, 1),
        f("m!!", Superfactorial, m, 1),
        f("(m+a+b)!!", Superfactorial, m + a + b, 1),
        f("(2n-m-a-b)!!", Superfactorial, 2 * n - m - a - b, 1),
        f("a!!", Superfactorial, a, 1),
        f("b!!", Superfactorial, b, 1),
        f("(n-m-a-1)!!", Superfactorial, n - m - a - 1, 1),
        f("(n-m-b-1)!!", Superfactorial, n - m - b - 1, 1),
    ];
    let denominator = vec![
        f("a!", Factorial, a, 1),
        f("b!", Factorial, b, 1),
        f("(2n+1)!!", Superfactorial, 2 * n + 1, 1),
        f("(n-a)!!", Superfactorial, n - a, 1),
        f("(n-b)!!", Superfactorial, n - b, 1),
        f("(m+a)!!", Superfactorial, m + a, 1),
        f("(m+b)!!", Superfactorial, m + b, 1),
        f("(a+b)!!", Superfactorial, a + b, 1),
        f("(2n-2m-a-b-1)!!", Superfactorial, 2 * n - 2 * m - a - b - 1, 1),
    ];
    (numerator, denominator)
}

fn product(list: &[Factor]) -> Result<ApInt, ClosedFormError> {
    let mut acc = ApInt::one();
    for factor in list {
        let base = match factor.kind {
            Kind::Factorial => factorial(factor.argument),
            Kind::Superfactorial => superfactorial(factor.argument),
        }
        .map_err(|_| ClosedFormError::Domain { factor: factor.label, argument: factor.argument })?;
        acc *= num_traits::pow(base, factor.exponent as usize);
    }
    Ok(acc)
}

/// Numerator and denominator products before reduction.
pub fn rabbit_rhs_parts(p: &KpParams) -> Result<(ApInt, ApInt), ClosedFormError> {
    if p.m < 0 {
        return Err(ClosedFormError::Domain { factor: "(2n+1)!^(m+1)", argument: p.m + 1 });
    }
    let (num, den) = factors(p);
    Ok((product(&num)?, product(&den)?))
}

/// Closed-form value at `p`. Only factor domains are checked here, so points
/// outside the validated domain are evaluated whenever every factor is defined.
pub fn rabbit_rhs(p: &KpParams) -> Result<RabbitValue, ClosedFormError> {
    let (num, den) = rabbit_rhs_parts(p)?;
    let value = ApRat::new(num, den);
    let integral = value.is_integer();
    Ok(RabbitValue { value, integral })
}

pub fn special_rhs(n: i64) -> Result<ApInt, ClosedFormError> {
    if n < 0 {
        return Err(ClosedFormError::Domain { factor: "(2n+1)!", argument: 2 * n + 1 });
    }
    let top = factorial(2 * n + 1).map_err(|_| ClosedFormError::Domain { factor: "(2n+1)!", argument: 2 * n + 1 })?;
    let num = num_traits::pow(top, (n + 1) as usize);
    let den = superfactorial(2 * n + 1).expect("argument >= 1");
    let (q, r) = num.div_rem(&den);
    if !r.is_zero() {
        return Err(ClosedFormError::InexactSpecialCase(n));
    }
    Ok(q)
}

/// Whether the general closed form at `(n, n, 0, 0)` equals the special case.
pub fn specialization_check(n: i64) -> bool {
    match (rabbit_rhs(&KpParams::main(n)), special_rhs(n)) {
        (Ok(general), Ok(special)) => general.value == ApRat::from_integer(special),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kp::domain_points;

    fn int(v: i64) -> ApInt {
        ApInt::from(v)
    }

    #[test]
    fn rabbit_examples() {
        let r = rabbit_rhs(&KpParams::new(2, 1, 1, 0)).unwrap();
        assert_eq!(r.value, ApRat::from_integer(int(5)));
        assert!(r.integral);
        let (num, den) = rabbit_rhs_parts(&KpParams::main(2)).unwrap();
        assert_eq!((num.clone(), den.clone()), (int(27_648_000), int(552_960)));
        assert_eq!(ApRat::new(num, den), ApRat::from_integer(int(50)));
        assert_eq!(rabbit_rhs(&KpParams::main(0)).unwrap().value, ApRat::one());
    }

    #[test]
    fn special_examples() {
        assert_eq!(special_rhs(1).unwrap(), int(3));
        assert_eq!(special_rhs(2).unwrap(), int(50));
        assert_eq!(special_rhs(3).unwrap(), int(5145));
        assert!(special_rhs(-1).is_err());
    }

    #[test]
    fn domain_error_names_factor() {
        // m + a > n drives (n-m-a-1)!! to -3.
        let err = rabbit_rhs(&KpParams::new(2, 2, 2, 0)).unwrap_err();
        match err {
            ClosedFormError::Domain { factor, argument } => {
                assert_eq!(factor, "(n-m-a-1)!!");
                assert_eq!(argument, -3);
                assert_eq!(err.to_string(), "(n-m-a-1)!! with argument -3 is undefined");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn specialization_holds() {
        for n in 0..=10 {
            assert!(specialization_check(n), "n = {n}");
        }
    }

    #[test]
    fn integral_positive_symmetric_on_sweep() {
        for p in domain_points(6) {
            let r = rabbit_rhs(&p).unwrap();
            assert!(r.integral, "{p}");
            assert!(r.value > ApRat::zero(), "{p}");
            let swapped = rabbit_rhs(&KpParams::new(p.n, p.m, p.b, p.a)).unwrap();
            assert_eq!(r.value, swapped.value, "{p}");
        }
    }
}
