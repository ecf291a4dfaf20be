//! Dense univariate polynomials in the quantum parameter `q` with
//! coefficients in `Q(zeta_m)`. These are the building blocks of the scalar
//! field: a scalar is a reduced fraction of two of these.

use std::fmt;

use super::cyclotomic::CyclotomicRational;

/// A polynomial in `q` over `Q(zeta_m)`; `coeffs[k]` is the coefficient of
/// `q^k`, trailing zeros trimmed, the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct QPoly {
    m: u32,
    coeffs: Vec<CyclotomicRational>,
}

impl QPoly {
    pub fn zero(m: u32) -> Self {
        QPoly { m, coeffs: Vec::new() }
    }

    pub fn one(m: u32) -> Self {
        QPoly { m, coeffs: vec![CyclotomicRational::one(m)] }
    }

    pub fn constant(c: CyclotomicRational) -> Self {
        let m = c.modulus();
        let mut p = QPoly { m, coeffs: vec![c] };
        p.trim();
        p
    }

    /// `c * q^k` for `k >= 0`.
    pub fn monomial(c: CyclotomicRational, k: usize) -> Self {
        let m = c.modulus();
        if c.is_zero() {
            return Self::zero(m);
        }
        let mut coeffs = vec![CyclotomicRational::zero(m); k + 1];
        coeffs[k] = c;
        QPoly { m, coeffs }
    }

    pub fn from_coeffs(m: u32, coeffs: Vec<CyclotomicRational>) -> Self {
        let mut p = QPoly { m, coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn modulus(&self) -> u32 {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; the zero polynomial answers None.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> CyclotomicRational {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| CyclotomicRational::zero(self.m))
    }

    pub fn coeffs(&self) -> &[CyclotomicRational] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> Option<&CyclotomicRational> {
        self.coeffs.last()
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.m, other.m, "mixed cyclotomic moduli in QPoly");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coeff(k).add(&other.coeff(k)));
        }
        Self::from_coeffs(self.m, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coeff(k).sub(&other.coeff(k)));
        }
        Self::from_coeffs(self.m, coeffs)
    }

    pub fn neg(&self) -> Self {
        QPoly { m: self.m, coeffs: self.coeffs.iter().map(|c| c.neg()).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.m);
        }
        let mut coeffs =
            vec![CyclotomicRational::zero(self.m); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
                }
            }
        }
        Self::from_coeffs(self.m, coeffs)
    }

    pub fn scale(&self, c: &CyclotomicRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.m);
        }
        QPoly { m: self.m, coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect() }
    }

    /// `q^k * self` for `k >= 0`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![CyclotomicRational::zero(self.m); k];
        coeffs.extend(self.coeffs.iter().cloned());
        QPoly { m: self.m, coeffs }
    }

    /// Largest `k` with `q^k` dividing the polynomial (0 for the zero poly).
    pub fn low_degree(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    /// Exact division by `q^k`; panics if not divisible (internal use).
    pub fn shift_down(&self, k: usize) -> Self {
        if k == 0 {
            return self.clone();
        }
        assert!(self.low_degree() >= k, "not divisible by q^{k}");
        QPoly { m: self.m, coeffs: self.coeffs[k..].to_vec() }
    }

    /// Division with remainder; panics on a zero divisor (internal use —
    /// callers expose `Error::DivisionByZero` before getting here).
    pub fn div_rem(&self, div: &Self) -> (Self, Self) {
        self.check(div);
        assert!(!div.is_zero(), "QPoly division by zero");
        let db = div.coeffs.len() - 1;
        let lb_inv = div
            .leading_coeff()
            .unwrap()
            .inv()
            .expect("nonzero leading coefficient");
        let mut rem = self.clone();
        if rem.coeffs.len() <= db {
            return (Self::zero(self.m), rem);
        }
        let mut quo = vec![CyclotomicRational::zero(self.m); rem.coeffs.len() - db];
        while !rem.is_zero() && rem.coeffs.len() > db {
            let dr = rem.coeffs.len() - 1;
            let c = rem.coeffs[dr].mul(&lb_inv);
            for (j, bj) in div.coeffs.iter().enumerate() {
                let t = c.mul(bj);
                rem.coeffs[dr - db + j] = rem.coeffs[dr - db + j].sub(&t);
            }
            quo[dr - db] = c;
            rem.trim();
        }
        (Self::from_coeffs(self.m, quo), rem)
    }

    /// Exact division; panics if the remainder is nonzero (internal use).
    pub fn div_exact(&self, div: &Self) -> Self {
        let (q, r) = self.div_rem(div);
        assert!(r.is_zero(), "inexact QPoly division");
        q
    }

    /// Monic gcd (1 for coprime inputs, 0 only if both inputs are 0).
    ///
    /// Runs a primitive pseudo-remainder sequence over the cyclotomic
    /// integers instead of field Euclid: rational content is stripped after
    /// every step, which keeps coefficient bit growth polynomial where
    /// naive Euclid over Q(zeta) blows up quadratically.
    pub fn gcd(&self, other: &Self) -> Self {
        self.check(other);
        if self.is_zero() {
            return other.make_monic();
        }
        if other.is_zero() {
            return self.make_monic();
        }
        let mut a = self.rational_normalize();
        let mut b = other.rational_normalize();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        loop {
            if b.is_zero() {
                return a.make_monic();
            }
            if b.degree() == Some(0) {
                return Self::one(self.m);
            }
            let r = a.pseudo_rem(&b).rational_normalize();
            a = std::mem::replace(&mut b, r);
        }
    }

    /// `self` times a unit multiple, modulo `div` — the inversion-free
    /// remainder the primitive sequence runs on. Rational content is
    /// stripped after every elimination step; without that the repeated
    /// leading-coefficient scalings grow coefficient bits exponentially in
    /// the degree gap.
    fn pseudo_rem(&self, div: &Self) -> Self {
        let db = div.degree().expect("nonzero divisor");
        let lb = div.leading_coeff().unwrap().clone();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.leading_coeff().unwrap().clone();
            r = r
                .scale(&lb)
                .sub(&div.scale(&lr).shift_up(dr - db))
                .rational_normalize();
            debug_assert!(r.degree().map_or(true, |d| d < dr));
        }
        r
    }

    /// Scale by (lcm of denominators)/(gcd of numerators) over all rational
    /// coordinates: coefficients become integral with trivial common factor.
    pub fn rational_normalize(&self) -> Self {
        use num::{BigInt, BigRational, Integer, One, Signed, Zero};
        let mut den_lcm = BigInt::one();
        let mut num_gcd = BigInt::zero();
        for cy in &self.coeffs {
            for r in cy.coeffs() {
                if r.is_zero() {
                    continue;
                }
                den_lcm = den_lcm.lcm(r.denom());
                num_gcd = num_gcd.gcd(&r.numer().abs());
            }
        }
        if num_gcd.is_zero() {
            return self.clone();
        }
        let factor = BigRational::new(den_lcm, num_gcd);
        if factor.is_one() {
            return self.clone();
        }
        self.scale(&CyclotomicRational::from_rational(self.m, factor))
    }

    /// Scale so the leading coefficient is 1 (zero stays zero).
    pub fn make_monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.m);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

/// Render one coefficient as it should appear in front of a power of `q`.
/// Returns (sign-is-negative, magnitude-string, needs-star).
fn coeff_atom(c: &CyclotomicRational) -> (bool, String, bool) {
    if let Some(r) = c.as_rational() {
        let neg = r < num::BigRational::from(num::BigInt::from(0));
        let mag = if neg { -r } else { r };
        let one = mag == num::BigRational::from(num::BigInt::from(1));
        let s = if one {
            String::new()
        } else if mag.denom() == &num::BigInt::from(1) {
            format!("{}", mag.numer())
        } else {
            format!("{}/{}", mag.numer(), mag.denom())
        };
        (neg, s, !one)
    } else {
        let nonzero = c.coeffs().iter().filter(|x| !num::Zero::is_zero(*x)).count();
        if nonzero == 1 {
            // Single basis term: render inline, pulling out its sign.
            let s = c.to_string();
            if let Some(rest) = s.strip_prefix('-') {
                (true, rest.to_string(), true)
            } else {
                (false, s, true)
            }
        } else {
            (false, format!("({})", c), true)
        }
    }
}

impl fmt::Display for QPoly {
    /// Descending powers of `q`: `(z + 1)*q^2 - q + 3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag, star) = coeff_atom(c);
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if k == 0 {
                if mag.is_empty() {
                    write!(f, "1")?;
                } else {
                    write!(f, "{}", mag)?;
                }
            } else {
                if !mag.is_empty() {
                    write!(f, "{}{}", mag, if star { "*" } else { "" })?;
                }
                if k == 1 {
                    write!(f, "q")?;
                } else {
                    write!(f, "q^{}", k)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
