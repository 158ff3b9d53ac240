use num::{BigInt, BigRational, One, Signed, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from(BigInt::from(n))
}

pub fn rat_sign(r: &Rat) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Univariate polynomial over the rationals, coefficients lowest degree
/// first. The zero polynomial is the empty coefficient vector; otherwise the
/// leading coefficient is nonzero. Arithmetic keeps coefficients primitive
/// (integer, content 1) where sign-preserving rescaling is allowed, which
/// bounds coefficient growth in the degree-(≤ 8) polynomials this crate
/// produces.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<Rat>,
}

impl std::fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*x")?,
                _ => write!(f, "{c}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: vec![] }
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    /// The monomial x.
    pub fn x() -> Self {
        Self::new(vec![Rat::zero(), Rat::one()])
    }

    /// x - r, the defining polynomial of the rational r.
    pub fn x_minus(r: &Rat) -> Self {
        Self::new(vec![-r.clone(), Rat::one()])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; the zero polynomial reports degree 0 alongside `is_zero`.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() <= 1 {
            return Polynomial::zero();
        }
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat_int(i as i64))
                .collect(),
        )
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![Rat::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        Polynomial::new(out)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }

    pub fn scale(&self, c: &Rat) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Euclidean division; `other` must be nonzero.
    pub fn divrem(&self, other: &Polynomial) -> (Polynomial, Polynomial) {
        assert!(!other.is_zero(), "division by the zero polynomial");
        let mut rem = self.coeffs.clone();
        let dn = other.coeffs.len();
        if rem.len() < dn {
            return (Polynomial::zero(), Polynomial::new(rem));
        }
        let mut quot = vec![Rat::zero(); rem.len() - dn + 1];
        let lead = other.coeffs.last().unwrap();
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dn - 1] / lead;
            if !c.is_zero() {
                for (j, b) in other.coeffs.iter().enumerate() {
                    let v = &c * b;
                    rem[i + j] -= v;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dn - 1);
        (Polynomial::new(quot), Polynomial::new(rem))
    }

    pub fn div_exact(&self, other: &Polynomial) -> Polynomial {
        let (q, r) = self.divrem(other);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Rescale by a positive rational so that coefficients are coprime
    /// integers. Sign-preserving, hence safe inside sign computations.
    pub fn primitive(&self) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut denom_lcm = BigInt::one();
        for c in &self.coeffs {
            denom_lcm = num::integer::lcm(denom_lcm, c.denom().clone());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&denom_lcm / c.denom()))
            .collect();
        let mut content = BigInt::zero();
        for v in &ints {
            content = num::integer::gcd(content, v.clone());
        }
        if content.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            coeffs: ints.iter().map(|v| Rat::from(v / &content)).collect(),
        }
    }

    /// Primitive with positive leading coefficient: the canonical form used
    /// for defining polynomials and equality keys.
    pub fn canonical(&self) -> Polynomial {
        let p = self.primitive();
        match p.leading() {
            Some(l) if l.is_negative() => p.neg(),
            _ => p,
        }
    }

    /// Polynomial gcd, returned in canonical form (nonzero inputs assumed
    /// not both zero).
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let mut a = self.primitive();
        let mut b = other.primitive();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.primitive();
        }
        a.canonical()
    }

    /// Square-free part: self / gcd(self, self'), canonicalized.
    pub fn square_free(&self) -> Polynomial {
        if self.is_zero() || self.degree() == 0 {
            return self.canonical();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == 0 {
            return self.canonical();
        }
        self.div_exact(&g).canonical()
    }

    /// Sign of the polynomial's value in the limit x -> +inf.
    pub fn sign_at_pos_inf(&self) -> i8 {
        self.leading().map_or(0, rat_sign)
    }

    /// Sign of the polynomial's value in the limit x -> -inf.
    pub fn sign_at_neg_inf(&self) -> i8 {
        let s = self.sign_at_pos_inf();
        if self.degree() % 2 == 1 {
            -s
        } else {
            s
        }
    }

    /// Cauchy root bound: every real root lies in (-M, M).
    pub fn cauchy_bound(&self) -> Rat {
        let lead = self.leading().expect("root bound of the zero polynomial");
        let mut m = Rat::zero();
        for c in &self.coeffs {
            let v = (c / lead).abs();
            if v > m {
                m = v;
            }
        }
        m + Rat::one()
    }

    /// Number of sign variations in the coefficient sequence, zeros skipped.
    pub fn sign_variations(&self) -> usize {
        let mut count = 0;
        let mut last = 0i8;
        for c in &self.coeffs {
            let s = rat_sign(c);
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Descartes variation count for the open interval (a, b): the number of
    /// sign variations of (x+1)^n p((a + b x)/(1 + x)). Zero variations
    /// certify the absence of roots in (a, b); one variation certifies
    /// exactly one.
    pub fn descartes_variations(&self, a: &Rat, b: &Rat) -> usize {
        debug_assert!(a < b);
        // p(a + (b-a) y) first, mapping (a, b) to (0, 1).
        let width = b - a;
        let n = self.degree();
        let mut shifted = vec![Rat::zero(); n + 1];
        // Horner on the substitution y -> a + w*y.
        let mut acc = Polynomial::zero();
        let sub = Polynomial::new(vec![a.clone(), width]);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&sub).add(&Polynomial::constant(c.clone()));
        }
        for (i, c) in acc.coeffs.iter().enumerate() {
            shifted[i] = c.clone();
        }
        // (x+1)^n q(1/(x+1)) = sum_i q_i (x+1)^{n-i}.
        let xp1 = Polynomial::from_i64(&[1, 1]);
        let mut pow = Polynomial::one();
        let mut powers = Vec::with_capacity(n + 1);
        for _ in 0..=n {
            powers.push(pow.clone());
            pow = pow.mul(&xp1);
        }
        let mut out = Polynomial::zero();
        for (i, c) in shifted.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&powers[n - i].scale(c));
            }
        }
        out.sign_variations()
    }
}

/// Sturm chain of `p` (assumed nonzero); remainders are flipped in sign and
/// kept primitive.
pub fn sturm_chain(p: &Polynomial) -> Vec<Polynomial> {
    let mut chain = vec![p.primitive()];
    let d = p.derivative();
    if d.is_zero() {
        return chain;
    }
    chain.push(d.primitive());
    loop {
        let n = chain.len();
        let (_, r) = chain[n - 2].divrem(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(r.neg().primitive());
    }
    chain
}

fn chain_variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut count = 0;
    let mut last = 0i8;
    for s in signs {
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

pub fn sturm_variations_at(chain: &[Polynomial], x: &Rat) -> usize {
    chain_variations(chain.iter().map(|p| rat_sign(&p.eval(x))))
}

pub fn sturm_variations_at_neg_inf(chain: &[Polynomial]) -> usize {
    chain_variations(chain.iter().map(|p| p.sign_at_neg_inf()))
}

pub fn sturm_variations_at_pos_inf(chain: &[Polynomial]) -> usize {
    chain_variations(chain.iter().map(|p| p.sign_at_pos_inf()))
}

/// Number of distinct roots of the (square-free) chain head in (a, b].
pub fn sturm_count_in(chain: &[Polynomial], a: &Rat, b: &Rat) -> usize {
    sturm_variations_at(chain, a) - sturm_variations_at(chain, b)
}
