use std::cmp::Ordering;

use super::perturbed::PerturbedRational;
use super::poly::{rat_sign, Polynomial, Rat};
use super::roots::AlgebraicReal;

/// A finite exact real point: rational, algebraic, or infinitesimally
/// perturbed rational. All of them admit exact polynomial sign evaluation
/// and a total order.
#[derive(Clone, Debug)]
pub enum ExactNum {
    Rational(Rat),
    Algebraic(AlgebraicReal),
    Perturbed(PerturbedRational),
}

impl ExactNum {
    pub fn rational(r: Rat) -> Self {
        ExactNum::Rational(r)
    }

    pub fn algebraic(a: AlgebraicReal) -> Self {
        match a.as_rational() {
            Some(r) => ExactNum::Rational(r.clone()),
            None => ExactNum::Algebraic(a),
        }
    }

    /// Exact sign of p at this point.
    pub fn sign_of(&self, p: &Polynomial) -> i8 {
        match self {
            ExactNum::Rational(r) => rat_sign(&p.eval(r)),
            ExactNum::Algebraic(a) => a.sign_of(p),
            ExactNum::Perturbed(q) => q.sign_of(p),
        }
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        match self {
            ExactNum::Rational(r) => Some(r),
            _ => None,
        }
    }

    /// Approximate value; rendering and diagnostics only.
    pub fn approx_f64(&self) -> f64 {
        match self {
            ExactNum::Rational(r) => super::roots::rat_to_f64(r),
            ExactNum::Algebraic(a) => a.approx_f64(),
            ExactNum::Perturbed(q) => super::roots::rat_to_f64(q.base()),
        }
    }

    fn cmp_impl(&self, other: &ExactNum) -> Ordering {
        use ExactNum::*;
        match (self, other) {
            (Rational(a), Rational(b)) => a.cmp(b),
            (Rational(a), Algebraic(b)) => b.cmp_rat(a).reverse(),
            (Algebraic(a), Rational(b)) => a.cmp_rat(b),
            (Algebraic(a), Algebraic(b)) => a.cmp_alg(b),
            (Perturbed(a), Perturbed(b)) => a.cmp(b),
            // A real value never equals a properly perturbed one; compare
            // against the base and break the tie with eps.
            (Rational(a), Perturbed(b)) => a.cmp(b.base()).then_with(|| 0i8.cmp(&b.eps())),
            (Perturbed(a), Rational(b)) => a.base().cmp(b).then_with(|| a.eps().cmp(&0)),
            (Algebraic(a), Perturbed(b)) => a.cmp_rat(b.base()).then_with(|| 0i8.cmp(&b.eps())),
            (Perturbed(a), Algebraic(b)) => {
                b.cmp_rat(a.base()).reverse().then_with(|| a.eps().cmp(&0))
            }
        }
    }
}

impl PartialEq for ExactNum {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_impl(other) == Ordering::Equal
    }
}

impl Eq for ExactNum {}

impl PartialOrd for ExactNum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactNum {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_impl(other)
    }
}

/// A point of the extended real line: the two infinities plus finite exact
/// values, totally ordered. Polynomial signs at the infinities are the
/// leading-term limits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtReal {
    NegInfinity,
    Finite(ExactNum),
    PosInfinity,
}

impl ExtReal {
    pub fn rational(r: Rat) -> Self {
        ExtReal::Finite(ExactNum::Rational(r))
    }

    pub fn algebraic(a: AlgebraicReal) -> Self {
        ExtReal::Finite(ExactNum::algebraic(a))
    }

    pub fn just_below(r: Rat) -> Self {
        ExtReal::Finite(ExactNum::Perturbed(PerturbedRational::just_below(r)))
    }

    pub fn just_above(r: Rat) -> Self {
        ExtReal::Finite(ExactNum::Perturbed(PerturbedRational::just_above(r)))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtReal::Finite(_))
    }

    pub fn finite(&self) -> Option<&ExactNum> {
        match self {
            ExtReal::Finite(x) => Some(x),
            _ => None,
        }
    }

    pub fn sign_of(&self, p: &Polynomial) -> i8 {
        match self {
            ExtReal::NegInfinity => p.sign_at_neg_inf(),
            ExtReal::Finite(x) => x.sign_of(p),
            ExtReal::PosInfinity => p.sign_at_pos_inf(),
        }
    }

    /// A rational strictly between `self` and `other`; requires
    /// self < other and an actual real number strictly between them (true
    /// whenever the open interval contains a real, which the callers'
    /// invariants guarantee).
    pub fn rational_between(&self, other: &ExtReal) -> Rat {
        use ExtReal::*;
        debug_assert!(self.cmp(other) == Ordering::Less);
        let two = Rat::from_integer(2.into());
        match (self, other) {
            (NegInfinity, PosInfinity) => Rat::from_integer(0.into()),
            (NegInfinity, Finite(x)) => strict_lower_bound(x) - Rat::from_integer(1.into()),
            (Finite(x), PosInfinity) => strict_upper_bound(x) + Rat::from_integer(1.into()),
            (Finite(a), Finite(b)) => {
                // Perturbed values with equal bases straddle exactly their base.
                if let (ExactNum::Perturbed(p), ExactNum::Perturbed(q)) = (a, b) {
                    if p.base() == q.base() {
                        return p.base().clone();
                    }
                }
                let mut aa = a.clone();
                let mut bb = b.clone();
                loop {
                    let ub = strict_upper_bound(&aa);
                    let lb = strict_lower_bound(&bb);
                    if ub <= lb {
                        let m = (ub + lb) / &two;
                        let cand = ExactNum::Rational(m.clone());
                        if a < &cand && &cand < b {
                            return m;
                        }
                    }
                    refine_in_place(&mut aa);
                    refine_in_place(&mut bb);
                }
            }
            _ => unreachable!("rational_between requires self < other"),
        }
    }

    pub fn approx_f64(&self) -> f64 {
        match self {
            ExtReal::NegInfinity => f64::NEG_INFINITY,
            ExtReal::Finite(x) => x.approx_f64(),
            ExtReal::PosInfinity => f64::INFINITY,
        }
    }
}

/// A rational weakly above the value (strictly above for perturbed +1).
fn strict_upper_bound(x: &ExactNum) -> Rat {
    match x {
        ExactNum::Rational(r) => r.clone(),
        ExactNum::Algebraic(a) => a.as_rational().unwrap_or(a.hi()).clone(),
        ExactNum::Perturbed(p) => p.base().clone(),
    }
}

fn strict_lower_bound(x: &ExactNum) -> Rat {
    match x {
        ExactNum::Rational(r) => r.clone(),
        ExactNum::Algebraic(a) => a.as_rational().unwrap_or(a.lo()).clone(),
        ExactNum::Perturbed(p) => p.base().clone(),
    }
}

fn refine_in_place(x: &mut ExactNum) {
    if let ExactNum::Algebraic(a) = x {
        let width = (a.hi() - a.lo()) / Rat::from_integer(2.into());
        let refined = a.refined_below_width(&width);
        *x = ExactNum::algebraic(refined);
    }
}

impl PartialOrd for ExtReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtReal {
    fn cmp(&self, other: &Self) -> Ordering {
        use ExtReal::*;
        match (self, other) {
            (NegInfinity, NegInfinity) | (PosInfinity, PosInfinity) => Ordering::Equal,
            (NegInfinity, _) | (_, PosInfinity) => Ordering::Less,
            (_, NegInfinity) | (PosInfinity, _) => Ordering::Greater,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}
