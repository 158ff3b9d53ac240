use num::Zero;

use super::num::ExtReal;
use super::poly::{Polynomial, Rat};

/// A ratio of polynomials in the slope parameter. Cross-section coordinates
/// and everything derived from them stay in this form; arithmetic is
/// symbolic and signs are taken by exact evaluation at a concrete slope.
/// The denominator must not vanish at any slope the value is evaluated at,
/// which the construction sites guarantee.
#[derive(Clone, Debug)]
pub struct RationalFn {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFn {
    pub fn new(num: Polynomial, den: Polynomial) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        RationalFn { num, den }.reduced()
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalFn::new(p, Polynomial::one())
    }

    pub fn constant(r: Rat) -> Self {
        RationalFn {
            num: Polynomial::constant(r),
            den: Polynomial::one(),
        }
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    fn reduced(self) -> Self {
        if self.num.is_zero() {
            return RationalFn {
                num: Polynomial::zero(),
                den: Polynomial::one(),
            };
        }
        let g = self.num.gcd(&self.den);
        let (num, den) = if g.degree() >= 1 {
            (self.num.div_exact(&g), self.den.div_exact(&g))
        } else {
            (self.num, self.den)
        };
        let (num, den) = rescale_pair(num, den);
        RationalFn { num, den }
    }

    pub fn add(&self, other: &RationalFn) -> RationalFn {
        RationalFn::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &RationalFn) -> RationalFn {
        RationalFn::new(
            self.num.mul(&other.den).sub(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn mul(&self, other: &RationalFn) -> RationalFn {
        RationalFn::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    /// Division; the caller must know `other` is nonzero at every slope of
    /// interest (its numerator must not be the zero polynomial).
    pub fn div(&self, other: &RationalFn) -> RationalFn {
        assert!(!other.num.is_zero(), "division by zero rational function");
        RationalFn::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    pub fn neg(&self) -> RationalFn {
        RationalFn {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn is_zero_fn(&self) -> bool {
        self.num.is_zero()
    }

    /// Exact sign at a slope; the denominator must not vanish there.
    pub fn sign_at(&self, at: &ExtReal) -> i8 {
        let ds = at.sign_of(&self.den);
        assert!(ds != 0, "rational function denominator vanishes at slope");
        at.sign_of(&self.num) * ds
    }

    /// Sign of self - other at a slope.
    pub fn cmp_sign(&self, other: &RationalFn, at: &ExtReal) -> i8 {
        let num = self.num.mul(&other.den).sub(&other.num.mul(&self.den));
        let s = at.sign_of(&num);
        if s == 0 {
            return 0;
        }
        let d1 = at.sign_of(&self.den);
        let d2 = at.sign_of(&other.den);
        debug_assert!(d1 != 0 && d2 != 0);
        s * d1 * d2
    }

    /// Midpoint with another value, exact.
    pub fn midpoint(&self, other: &RationalFn) -> RationalFn {
        let two = RationalFn::constant(Rat::from_integer(2.into()));
        self.add(other).div(&two)
    }

    /// Evaluate as an exact rational; only valid when both numerator and
    /// denominator are constants (endpoint charts and direct rational data).
    pub fn as_constant(&self) -> Option<Rat> {
        if self.num.is_constant() && self.den.is_constant() {
            let d = self.den.coeffs().first().cloned().unwrap_or_else(Rat::zero);
            let n = self.num.coeffs().first().cloned().unwrap_or_else(Rat::zero);
            Some(n / d)
        } else {
            None
        }
    }

    /// Exact value at a rational argument; the denominator must not vanish
    /// there.
    pub fn eval_rat(&self, x: &Rat) -> Rat {
        let d = self.den.eval(x);
        assert!(!d.is_zero(), "rational function denominator vanishes");
        self.num.eval(x) / d
    }

    /// Approximate value at a slope; rendering only.
    pub fn approx_at_f64(&self, at: &ExtReal) -> f64 {
        let x = match at {
            ExtReal::Finite(v) => v.approx_f64(),
            _ => return f64::NAN,
        };
        let eval = |p: &Polynomial| {
            p.coeffs()
                .iter()
                .rev()
                .fold(0.0, |acc, c| acc * x + super::roots::rat_to_f64(c))
        };
        eval(&self.num) / eval(&self.den)
    }
}

/// Multiply numerator and denominator by one common positive rational so
/// that both have coprime integer coefficients overall. Value-preserving.
fn rescale_pair(num: Polynomial, den: Polynomial) -> (Polynomial, Polynomial) {
    use num::{BigInt, One, Signed};
    let mut denom_lcm = BigInt::one();
    for c in num.coeffs().iter().chain(den.coeffs()) {
        denom_lcm = num::integer::lcm(denom_lcm, c.denom().clone());
    }
    let mut content = BigInt::zero();
    for c in num.coeffs().iter().chain(den.coeffs()) {
        let int = c.numer() * (&denom_lcm / c.denom());
        content = num::integer::gcd(content, int);
    }
    if content.is_zero() {
        return (num, den);
    }
    let scale = Rat::new(denom_lcm, content.abs());
    (num.scale(&scale), den.scale(&scale))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::{rat, rat_int};

    fn x() -> RationalFn {
        RationalFn::from_poly(Polynomial::x())
    }

    #[test]
    fn arithmetic_and_signs() {
        // f = (x + 1) / (x - 2)
        let f = RationalFn::new(
            Polynomial::from_i64(&[1, 1]),
            Polynomial::from_i64(&[-2, 1]),
        );
        let at = ExtReal::rational(rat_int(0));
        assert_eq!(f.sign_at(&at), -1);
        let at = ExtReal::rational(rat_int(3));
        assert_eq!(f.sign_at(&at), 1);

        let g = f.sub(&f);
        assert!(g.is_zero_fn());

        let h = f.mul(&x()).div(&f); // = x
        assert_eq!(h.cmp_sign(&x(), &ExtReal::rational(rat(7, 3))), 0);
    }

    #[test]
    fn reduction_cancels_common_factors() {
        // (x^2 - 1)/(x - 1) reduces to (x + 1)/1.
        let f = RationalFn::new(
            Polynomial::from_i64(&[-1, 0, 1]),
            Polynomial::from_i64(&[-1, 1]),
        );
        assert_eq!(f.den().degree(), 0);
        assert_eq!(f.num().degree(), 1);
    }

    #[test]
    fn constant_extraction() {
        let c = RationalFn::constant(rat(3, 4));
        assert_eq!(c.as_constant(), Some(rat(3, 4)));
        assert_eq!(x().as_constant(), None);
    }
}
