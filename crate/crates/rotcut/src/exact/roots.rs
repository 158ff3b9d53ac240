use std::cmp::Ordering;

use num::Zero;

use super::poly::{rat_sign, sturm_chain, sturm_count_in, Polynomial, Rat};
use crate::error::{Error, Result};

/// A real algebraic number: the unique root of a square-free defining
/// polynomial inside an open isolating interval with rational endpoints.
/// Rational values are stored with defining x - r and a collapsed interval.
#[derive(Clone, Debug)]
pub struct AlgebraicReal {
    defining: Polynomial,
    lo: Rat,
    hi: Rat,
}

impl AlgebraicReal {
    pub fn from_rational(r: Rat) -> Self {
        AlgebraicReal {
            defining: Polynomial::x_minus(&r),
            lo: r.clone(),
            hi: r,
        }
    }

    /// `defining` must be square-free with exactly one root in (lo, hi) and
    /// nonzero at both endpoints. Linear polynomials collapse to their
    /// rational root.
    pub fn new_isolated(defining: Polynomial, lo: Rat, hi: Rat) -> Self {
        debug_assert!(lo < hi);
        debug_assert!(!defining.eval(&lo).is_zero());
        debug_assert!(!defining.eval(&hi).is_zero());
        debug_assert_eq!(defining.descartes_variations(&lo, &hi), 1);
        if defining.degree() == 1 {
            let root = -&defining.coeffs()[0] / &defining.coeffs()[1];
            debug_assert!(lo < root && root < hi);
            return AlgebraicReal::from_rational(root);
        }
        AlgebraicReal {
            defining: defining.canonical(),
            lo,
            hi,
        }
    }

    /// Checked construction from untrusted data: square-free reduction,
    /// then the interval must isolate exactly one root.
    pub fn try_new(defining: Polynomial, lo: Rat, hi: Rat) -> Result<Self> {
        if defining.is_zero() || defining.degree() == 0 {
            return Err(Error::Usage(
                "algebraic number needs a nonconstant defining polynomial".into(),
            ));
        }
        if lo == hi {
            if !defining.eval(&lo).is_zero() {
                return Err(Error::Usage(
                    "degenerate interval endpoint is not a root".into(),
                ));
            }
            return Ok(AlgebraicReal::from_rational(lo));
        }
        let sf = defining.square_free();
        if lo > hi
            || sf.eval(&lo).is_zero()
            || sf.eval(&hi).is_zero()
            || sf.descartes_variations(&lo, &hi) != 1
        {
            return Err(Error::Usage(
                "interval does not isolate exactly one root".into(),
            ));
        }
        Ok(AlgebraicReal::new_isolated(sf, lo, hi))
    }

    pub fn defining(&self) -> &Polynomial {
        &self.defining
    }

    pub fn lo(&self) -> &Rat {
        &self.lo
    }

    pub fn hi(&self) -> &Rat {
        &self.hi
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        (self.lo == self.hi).then_some(&self.lo)
    }

    /// One bisection step on the isolating interval.
    fn refine_step(&mut self) {
        if self.lo == self.hi {
            return;
        }
        let mid = (&self.lo + &self.hi) / Rat::from_integer(2.into());
        let fm = self.defining.eval(&mid);
        if fm.is_zero() {
            // The root is the rational midpoint.
            *self = AlgebraicReal::from_rational(mid);
            return;
        }
        let flo = self.defining.eval(&self.lo);
        if rat_sign(&flo) != rat_sign(&fm) {
            self.hi = mid;
        } else {
            self.lo = mid;
        }
    }

    pub fn refined_below_width(&self, width: &Rat) -> AlgebraicReal {
        let mut a = self.clone();
        while &(&a.hi - &a.lo) >= width {
            a.refine_step();
        }
        a
    }

    /// f64 midpoint of a refined interval; for rendering and diagnostics only.
    pub fn approx_f64(&self) -> f64 {
        let a = self.refined_below_width(&Rat::new(1.into(), 1_000_000_000_000i64.into()));
        let mid = (&a.lo + &a.hi) / Rat::from_integer(2.into());
        rat_to_f64(&mid)
    }

    /// Exact sign of p at this number. An interval Horner evaluation
    /// usually certifies the sign outright; otherwise shared roots are
    /// detected through gcd(defining, p) and the interval is refined until
    /// the certificate concludes.
    pub fn sign_of(&self, p: &Polynomial) -> i8 {
        if p.is_zero() {
            return 0;
        }
        if let Some(r) = self.as_rational() {
            return rat_sign(&p.eval(r));
        }
        if let Some(s) = interval_sign(p, &self.lo, &self.hi) {
            return s;
        }
        let sf = p.square_free();
        let g = self.defining.gcd(&sf);
        if g.degree() >= 1 {
            // g divides the defining polynomial, hence is nonzero at the
            // interval endpoints; a positive Sturm count certifies that the
            // shared root is this number.
            let chain = sturm_chain(&g);
            if sturm_count_in(&chain, &self.lo, &self.hi) > 0 {
                return 0;
            }
        }
        // p does not vanish here, so shrinking the interval makes the
        // interval evaluation conclusive.
        let mut a = self.clone();
        loop {
            a.refine_step();
            if let Some(r) = a.as_rational() {
                return rat_sign(&p.eval(r));
            }
            if let Some(s) = interval_sign(p, &a.lo, &a.hi) {
                return s;
            }
        }
    }

    pub fn cmp_rat(&self, r: &Rat) -> Ordering {
        if let Some(v) = self.as_rational() {
            return v.cmp(r);
        }
        if r <= &self.lo {
            return Ordering::Greater;
        }
        if r >= &self.hi {
            return Ordering::Less;
        }
        // r strictly inside the isolating interval.
        if self.defining.eval(r).is_zero() {
            return Ordering::Equal;
        }
        let mut a = self.clone();
        loop {
            a.refine_step();
            if let Some(v) = a.as_rational() {
                return v.cmp(r);
            }
            if r <= &a.lo {
                return Ordering::Greater;
            }
            if r >= &a.hi {
                return Ordering::Less;
            }
        }
    }

    pub fn cmp_alg(&self, other: &AlgebraicReal) -> Ordering {
        if let Some(r) = other.as_rational() {
            return self.cmp_rat(r);
        }
        if let Some(r) = self.as_rational() {
            return other.cmp_rat(r).reverse();
        }
        if self.hi <= other.lo {
            return Ordering::Less;
        }
        if other.hi <= self.lo {
            return Ordering::Greater;
        }
        // Overlapping intervals: equal iff the defining polynomials share a
        // root inside the overlap.
        let g = self.defining.gcd(&other.defining);
        if g.degree() >= 1 {
            let lo = self.lo.clone().max(other.lo.clone());
            let hi = self.hi.clone().min(other.hi.clone());
            if lo < hi {
                let chain = sturm_chain(&g);
                if sturm_count_in(&chain, &lo, &hi) > 0 {
                    return Ordering::Equal;
                }
            }
        }
        let mut a = self.clone();
        let mut b = other.clone();
        loop {
            if a.hi <= b.lo {
                return Ordering::Less;
            }
            if b.hi <= a.lo {
                return Ordering::Greater;
            }
            if let Some(r) = a.as_rational() {
                return b.cmp_rat(r).reverse();
            }
            if let Some(r) = b.as_rational() {
                return a.cmp_rat(r);
            }
            a.refine_step();
            b.refine_step();
        }
    }

    /// Key identifying equal roots produced from the same defining
    /// polynomial; used for hashing and deduplication of event slopes.
    pub fn dedup_key(&self) -> RootKey {
        if let Some(r) = self.as_rational() {
            return RootKey::Rational(r.clone());
        }
        let chain = sturm_chain(&self.defining);
        let index = super::poly::sturm_variations_at_neg_inf(&chain)
            - super::poly::sturm_variations_at(&chain, &self.lo);
        RootKey::Algebraic(self.defining.coeffs().to_vec(), index)
    }
}

/// Hashable identity of an algebraic real: either its rational value or the
/// canonical defining polynomial plus the root's rank among its real roots.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RootKey {
    Rational(Rat),
    Algebraic(Vec<Rat>, usize),
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    use num::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// Sign of p on [lo, hi] by interval Horner evaluation, when the enclosure
/// excludes zero.
fn interval_sign(p: &Polynomial, lo: &Rat, hi: &Rat) -> Option<i8> {
    let coeffs = p.coeffs();
    let mut a = coeffs.last().cloned().unwrap_or_else(Rat::zero);
    let mut b = a.clone();
    for c in coeffs.iter().rev().skip(1) {
        // [a, b] * [lo, hi] + c
        let p1 = &a * lo;
        let p2 = &a * hi;
        let p3 = &b * lo;
        let p4 = &b * hi;
        let mut min = p1.clone();
        let mut max = p1;
        for v in [p2, p3, p4] {
            if v < min {
                min = v.clone();
            }
            if v > max {
                max = v;
            }
        }
        a = min + c;
        b = max + c;
    }
    if a > Rat::zero() {
        Some(1)
    } else if b < Rat::zero() {
        Some(-1)
    } else {
        None
    }
}

/// Isolate all distinct real roots of `p` (restricted to a closed range when
/// given), sorted ascending with pairwise-disjoint isolating intervals.
/// The zero polynomial is a usage error.
pub fn isolate_roots(p: &Polynomial, range: Option<(&Rat, &Rat)>) -> Result<Vec<AlgebraicReal>> {
    if p.is_zero() {
        return Err(Error::Usage(
            "cannot isolate roots of the zero polynomial".into(),
        ));
    }
    if p.degree() == 0 {
        return Ok(vec![]);
    }
    let mut sf = p.square_free();
    let bound = sf.cauchy_bound();
    let (mut lo, mut hi) = (-bound.clone(), bound);
    if let Some((a, b)) = range {
        if a > &lo {
            lo = a.clone();
        }
        if b < &hi {
            hi = b.clone();
        }
        if lo > hi {
            return Ok(vec![]);
        }
    }

    let mut rational_roots: Vec<Rat> = Vec::new();
    // Range endpoints are included; peel them off so the open-interval
    // bisection below has nonzero endpoint values.
    loop {
        if lo <= hi && sf.eval(&lo).is_zero() {
            rational_roots.push(lo.clone());
            sf = sf.div_exact(&Polynomial::x_minus(&lo)).canonical();
            continue;
        }
        if lo < hi && sf.eval(&hi).is_zero() {
            rational_roots.push(hi.clone());
            sf = sf.div_exact(&Polynomial::x_minus(&hi)).canonical();
            continue;
        }
        break;
    }

    let mut isolated: Vec<(Rat, Rat)> = Vec::new();
    if lo < hi && sf.degree() >= 1 {
        'restart: loop {
            isolated.clear();
            let mut stack = vec![(lo.clone(), hi.clone())];
            while let Some((a, b)) = stack.pop() {
                match sf.descartes_variations(&a, &b) {
                    0 => {}
                    1 => isolated.push((a, b)),
                    _ => {
                        let mid = (&a + &b) / Rat::from_integer(2.into());
                        if sf.eval(&mid).is_zero() {
                            rational_roots.push(mid.clone());
                            sf = sf.div_exact(&Polynomial::x_minus(&mid)).canonical();
                            if sf.degree() == 0 {
                                isolated.clear();
                                break 'restart;
                            }
                            continue 'restart;
                        }
                        stack.push((a, mid.clone()));
                        stack.push((mid, b));
                    }
                }
            }
            break;
        }
    }

    let mut roots: Vec<AlgebraicReal> = rational_roots
        .into_iter()
        .map(AlgebraicReal::from_rational)
        .collect();
    for (a, b) in isolated {
        roots.push(AlgebraicReal::new_isolated(sf.clone(), a, b));
    }
    roots.sort_by(|a, b| a.cmp_alg(b));

    // Shrink isolating intervals until consecutive ones are strictly
    // separated; interval endpoints then lie strictly between consecutive
    // roots, so no endpoint is a root of the square-free part.
    for i in 1..roots.len() {
        let (head, tail) = roots.split_at_mut(i);
        let prev = &mut head[i - 1];
        let cur = &mut tail[0];
        loop {
            let prev_hi = prev.as_rational().unwrap_or(prev.hi()).clone();
            let cur_lo = cur.as_rational().unwrap_or(cur.lo()).clone();
            if prev_hi < cur_lo || (prev.as_rational().is_some() && cur.as_rational().is_some()) {
                break;
            }
            prev.refine_step();
            cur.refine_step();
        }
    }
    Ok(roots)
}
