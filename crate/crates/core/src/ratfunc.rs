//! The field `Q(q)` of rational functions in one indeterminate.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::{IntPoly, QPoly};

/// `num / den` with `gcd(num, den) = 1` and `den` monic; zero is `0 / 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalFunctionQ {
    num: QPoly,
    den: QPoly,
}

impl RationalFunctionQ {
    /// Panics when `den` is zero.
    pub fn new(num: QPoly, den: QPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let num = num.div_rem(&g).0;
        let den = den.div_rem(&g).0;
        let lead = den.leading().unwrap().recip();
        RationalFunctionQ {
            num: num.scale(&lead),
            den: den.scale(&lead),
        }
    }

    pub fn from_poly(p: QPoly) -> Self {
        Self::new(p, QPoly::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_poly(QPoly::constant(c))
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(c.into()))
    }

    /// `c * q^e` for any integer `e`.
    pub fn monomial(c: i64, e: i32) -> Self {
        let c = BigRational::from_integer(c.into());
        if e >= 0 {
            Self::from_poly(QPoly::monomial(c, e as usize))
        } else {
            Self::new(QPoly::constant(c), QPoly::monomial(BigRational::one(), (-e) as usize))
        }
    }

    pub fn zero() -> Self {
        RationalFunctionQ {
            num: QPoly::zero(),
            den: QPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn numerator(&self) -> &QPoly {
        &self.num
    }

    pub fn denominator(&self) -> &QPoly {
        &self.den
    }

    pub fn inv(&self) -> Self {
        Self::new(self.den.clone(), self.num.clone())
    }

    /// Value at a rational point; `None` where the denominator vanishes.
    pub fn eval(&self, x: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    /// Integer numerator and denominator, scaled by a common rational so both
    /// are integral with coprime contents.
    pub fn integer_parts(&self) -> (IntPoly, IntPoly) {
        if self.num.is_zero() {
            return (IntPoly::zero(), IntPoly::one());
        }
        let all = || self.num.coeffs().iter().chain(self.den.coeffs());
        let lcm = all().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let scale = BigRational::from_integer(lcm);
        let to_int = |p: &QPoly| p.scale(&scale).to_int().expect("denominators cleared");
        let (n, d) = (to_int(&self.num), to_int(&self.den));
        let content = n
            .coeffs()
            .iter()
            .chain(d.coeffs())
            .fold(BigInt::zero(), |acc, c| acc.gcd(c));
        // `den` is monic, so its scaled leading coefficient stays positive.
        (
            n.map(|c| c / &content),
            d.map(|c| c / &content),
        )
    }
}

/// Sparse `c*q^e` terms in descending degree, joined by `+`/`-`.
fn format_sparse(p: &IntPoly) -> String {
    let mut out = String::new();
    for (e, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push(if c.is_negative() { '-' } else { '+' });
        }
        out.push_str(&format!("{}*q^{e}", c.abs()));
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

/// Renders as `poly/poly` with integer sparse polynomials, e.g. `2*q^1/1*q^0`.
impl fmt::Display for RationalFunctionQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = self.integer_parts();
        write!(f, "{}/{}", format_sparse(&n), format_sparse(&d))
    }
}

/// Compact human form of an integer polynomial in `q`, e.g. `2q`, `-q^2 + 1`.
pub fn format_q_poly(p: &IntPoly) -> String {
    let mut out = String::new();
    for (e, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let var = match e {
            0 => String::new(),
            1 => "q".into(),
            _ => format!("q^{e}"),
        };
        let body = if e > 0 && mag.is_one() {
            var
        } else {
            format!("{mag}{var}")
        };
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

impl Add for &RationalFunctionQ {
    type Output = RationalFunctionQ;
    fn add(self, rhs: &RationalFunctionQ) -> RationalFunctionQ {
        RationalFunctionQ::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Neg for &RationalFunctionQ {
    type Output = RationalFunctionQ;
    fn neg(self) -> RationalFunctionQ {
        RationalFunctionQ {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Sub for &RationalFunctionQ {
    type Output = RationalFunctionQ;
    fn sub(self, rhs: &RationalFunctionQ) -> RationalFunctionQ {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunctionQ {
    type Output = RationalFunctionQ;
    fn mul(self, rhs: &RationalFunctionQ) -> RationalFunctionQ {
        RationalFunctionQ::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RationalFunctionQ {
    type Output = RationalFunctionQ;
    fn div(self, rhs: &RationalFunctionQ) -> RationalFunctionQ {
        assert!(!rhs.is_zero(), "division by zero rational function");
        RationalFunctionQ::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl From<&IntPoly> for RationalFunctionQ {
    fn from(p: &IntPoly) -> Self {
        Self::from_poly(QPoly::from_int(p))
    }
}

impl From<BigInt> for RationalFunctionQ {
    fn from(c: BigInt) -> Self {
        Self::constant(BigRational::from_integer(c))
    }
}
