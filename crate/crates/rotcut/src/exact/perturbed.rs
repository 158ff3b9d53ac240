use std::cmp::Ordering;

use num::Zero;

use super::poly::{rat_sign, Polynomial, Rat};

/// A rational base plus an optional infinitesimal offset: base + eps * delta
/// for an arbitrarily small delta > 0. Realizes "just before" / "just after"
/// queries exactly; the order is lexicographic on (base, eps).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerturbedRational {
    base: Rat,
    eps: i8,
}

impl PerturbedRational {
    pub fn new(base: Rat, eps: i8) -> Self {
        assert!((-1..=1).contains(&eps), "eps must be in {{-1, 0, +1}}");
        PerturbedRational { base, eps }
    }

    pub fn just_below(base: Rat) -> Self {
        Self::new(base, -1)
    }

    pub fn just_above(base: Rat) -> Self {
        Self::new(base, 1)
    }

    pub fn base(&self) -> &Rat {
        &self.base
    }

    pub fn eps(&self) -> i8 {
        self.eps
    }

    /// Sign of p(base + eps*delta): the first nonzero entry of the Taylor
    /// sequence p(base), eps*p'(base), eps^2*p''(base), ...
    pub fn sign_of(&self, p: &Polynomial) -> i8 {
        let mut q = p.clone();
        let mut parity = 1i8;
        loop {
            if q.is_zero() {
                return 0;
            }
            let v = q.eval(&self.base);
            if !v.is_zero() {
                return rat_sign(&v) * parity;
            }
            if self.eps == 0 {
                return 0;
            }
            q = q.derivative();
            parity *= self.eps;
        }
    }
}

impl PartialOrd for PerturbedRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PerturbedRational {
    fn cmp(&self, other: &Self) -> Ordering {
        self.base
            .cmp(&other.base)
            .then_with(|| self.eps.cmp(&other.eps))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::rat_int;

    #[test]
    fn sign_of_x_just_above_zero() {
        let p = Polynomial::from_i64(&[0, 1]); // x
        let q = PerturbedRational::just_above(rat_int(0));
        assert_eq!(q.sign_of(&p), 1);
        let q = PerturbedRational::just_below(rat_int(0));
        assert_eq!(q.sign_of(&p), -1);
    }

    #[test]
    fn higher_order_terms() {
        // (x-1)^2 is positive on both sides of 1.
        let p = Polynomial::from_i64(&[1, -2, 1]);
        assert_eq!(PerturbedRational::just_above(rat_int(1)).sign_of(&p), 1);
        assert_eq!(PerturbedRational::just_below(rat_int(1)).sign_of(&p), 1);
        // (x-1)^3 changes sign.
        let p = Polynomial::from_i64(&[-1, 3, -3, 1]);
        assert_eq!(PerturbedRational::just_above(rat_int(1)).sign_of(&p), 1);
        assert_eq!(PerturbedRational::just_below(rat_int(1)).sign_of(&p), -1);
    }

    #[test]
    fn lexicographic_order() {
        let a = PerturbedRational::just_below(rat_int(1));
        let b = PerturbedRational::new(rat_int(1), 0);
        let c = PerturbedRational::just_above(rat_int(1));
        assert!(a < b && b < c);
        assert!(c < PerturbedRational::just_below(rat_int(2)));
    }
}
