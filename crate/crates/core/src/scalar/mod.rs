//! The coefficient field `F = Q(zeta_m)(q)`: rational functions in the
//! quantum parameter `q` over the m-th cyclotomic field, with `q` treated as
//! a transcendental indeterminate (never specialized to a root of unity).
//!
//! # Canonical form
//!
//! A [`Scalar`] is a fraction `num/den` of [`QPoly`]s with
//!
//! * `den` nonzero and monic,
//! * `gcd(num, den) = 1`,
//! * zero represented as `0/1`.
//!
//! Two scalars are equal iff their representations are equal, so `==` is
//! exact field equality. All operations return normalized values; division
//! by zero reports [`Error::DivisionByZero`] instead of panicking.

mod cyclotomic;
mod parse;
mod qpoly;

pub use cyclotomic::{CycloField, CyclotomicRational};
pub use qpoly::QPoly;

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Scalar {
    num: QPoly,
    den: QPoly,
}

impl Scalar {
    /// Build and normalize a fraction. The only error is a zero denominator.
    pub fn new(num: QPoly, den: QPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    /// Normalize: divide out the gcd, make the denominator monic.
    fn reduced(num: QPoly, den: QPoly) -> Self {
        debug_assert!(!den.is_zero());
        let m = den.modulus();
        if num.is_zero() {
            return Scalar { num, den: QPoly::one(m) };
        }
        let (mut num, mut den) = (num, den);
        if !den.is_one() {
            let g = num.gcd(&den);
            if !g.is_one() {
                num = num.div_exact(&g);
                den = den.div_exact(&g);
            }
        }
        if let Some(lc) = den.leading_coeff() {
            if !lc.is_one() {
                let inv = lc.inv().expect("nonzero leading coefficient");
                num = num.scale(&inv);
                den = den.scale(&inv);
            }
        }
        Scalar { num, den }
    }

    pub fn zero(m: u32) -> Self {
        Scalar { num: QPoly::zero(m), den: QPoly::one(m) }
    }

    pub fn one(m: u32) -> Self {
        Scalar { num: QPoly::one(m), den: QPoly::one(m) }
    }

    pub fn from_integer(m: u32, n: i64) -> Self {
        Scalar {
            num: QPoly::constant(CyclotomicRational::from_integer(m, n)),
            den: QPoly::one(m),
        }
    }

    pub fn from_rational(m: u32, r: num::BigRational) -> Self {
        Scalar {
            num: QPoly::constant(CyclotomicRational::from_rational(m, r)),
            den: QPoly::one(m),
        }
    }

    pub fn from_cyclotomic(c: CyclotomicRational) -> Self {
        let m = c.modulus();
        Scalar { num: QPoly::constant(c), den: QPoly::one(m) }
    }

    /// `zeta_m^k` as a scalar.
    pub fn zeta_pow(m: u32, k: i64) -> Self {
        Self::from_cyclotomic(CyclotomicRational::zeta_pow(m, k))
    }

    /// `q^k` for any integer `k`; negative powers go into the denominator.
    pub fn q_pow(m: u32, k: i64) -> Self {
        let one = CyclotomicRational::one(m);
        if k >= 0 {
            Scalar { num: QPoly::monomial(one, k as usize), den: QPoly::one(m) }
        } else {
            Scalar { num: QPoly::one(m), den: QPoly::monomial(one, (-k) as usize) }
        }
    }

    pub fn modulus(&self) -> u32 {
        self.num.modulus()
    }

    pub fn num(&self) -> &QPoly {
        &self.num
    }

    pub fn den(&self) -> &QPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && other.den.is_one() {
            return Scalar {
                num: self.num.add(&other.num),
                den: QPoly::one(self.modulus()),
            };
        }
        let g = self.den.gcd(&other.den);
        let (da, db) = (self.den.div_exact(&g), other.den.div_exact(&g));
        let num = self.num.mul(&db).add(&other.num.mul(&da));
        let den = self.den.mul(&db);
        Self::reduced(num, den)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Scalar { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.modulus());
        }
        // Cross-cancel so the product of two reduced fractions is reduced
        // without a final gcd pass.
        let g1 = if other.den.is_one() {
            QPoly::one(self.modulus())
        } else {
            self.num.gcd(&other.den)
        };
        let g2 = if self.den.is_one() {
            QPoly::one(self.modulus())
        } else {
            other.num.gcd(&self.den)
        };
        let num = self.num.div_exact(&g1).mul(&other.num.div_exact(&g2));
        let den = self.den.div_exact(&g2).mul(&other.den.div_exact(&g1));
        // Leading coefficients: den was a product of monic polys, so monic.
        Scalar { num, den }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let lc = self.num.leading_coeff().unwrap().inv()?;
        Ok(Scalar { num: self.den.scale(&lc), den: self.num.scale(&lc) })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    /// Integer power; negative exponents of zero report division by zero.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let m = self.modulus();
        if e == 0 {
            return Ok(Self::one(m));
        }
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one(m);
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Substitute `q -> q^w` (`w >= 1`). Used to move between the `q`- and
    /// `q^w`-parameter incarnations of the same field.
    pub fn substitute_q_power(&self, w: u32) -> Self {
        assert!(w >= 1, "q-power substitution needs a positive exponent");
        let stretch = |p: &QPoly| {
            let m = p.modulus();
            let mut out = QPoly::zero(m);
            for (k, c) in p.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    out = out.add(&QPoly::monomial(c.clone(), k * w as usize));
                }
            }
            out
        };
        Self::reduced(stretch(&self.num), stretch(&self.den))
    }
}

/// The (m,p)-form quantum number
/// `[x]_q^{m,p} = q^{-x m/p} (q^{x m} - 1) / ( q^{-m/p} (q^m - 1) )`.
///
/// Exact for every integer `x`, including negatives; `[0] = 0`, `[1] = 1`,
/// `[2] = q^{-m/p} (q^m + 1)`.
pub fn mp_q_number(m: u32, p: u32, x: i64) -> Scalar {
    assert!(p >= 1 && m % p == 0, "p must divide m");
    let mp = (m / p) as i64;
    let m64 = m as i64;
    let num = Scalar::q_pow(m, -x * mp).mul(&Scalar::q_pow(m, x * m64).sub(&Scalar::one(m)));
    let den = Scalar::q_pow(m, -mp).mul(&Scalar::q_pow(m, m64).sub(&Scalar::one(m)));
    num.div(&den).expect("denominator q^m - 1 is nonzero")
}

impl fmt::Display for Scalar {
    /// Reduced fraction: `(q^2 + z)/(q - 1)`, or just the numerator when the
    /// denominator is 1.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp(m: u32, k: i64) -> Scalar {
        Scalar::q_pow(m, k)
    }

    #[test]
    fn q_times_q_inverse_is_one() {
        assert!(qp(2, 1).mul(&qp(2, -1)).is_one());
    }

    #[test]
    fn q2_minus_1_over_q_minus_1_reduces_to_q_plus_1() {
        let m = 2;
        let num = qp(m, 2).sub(&Scalar::one(m));
        let den = qp(m, 1).sub(&Scalar::one(m));
        let got = num.div(&den).unwrap();
        let want = qp(m, 1).add(&Scalar::one(m));
        assert_eq!(got, want);
        // Canonical representation: denominator exactly 1.
        assert!(got.den().is_one());
    }

    #[test]
    fn q_minus_qinv_cancels_with_its_negation() {
        let m = 4;
        let a = qp(m, 1).sub(&qp(m, -1));
        let b = qp(m, -1).sub(&qp(m, 1));
        assert!(a.add(&b).is_zero());
    }

    #[test]
    fn division_by_zero_reports_error() {
        let m = 2;
        assert_eq!(Scalar::one(m).div(&Scalar::zero(m)), Err(Error::DivisionByZero));
        assert_eq!(Scalar::zero(m).inv(), Err(Error::DivisionByZero));
        assert_eq!(Scalar::zero(m).pow(-1), Err(Error::DivisionByZero));
    }

    #[test]
    fn mp_q_number_pins() {
        // [0] = 0 and [1] = 1 for every (m,p) on the working grid.
        for (m, p) in [(1u32, 1u32), (2, 1), (2, 2), (3, 1), (3, 3), (4, 2), (4, 4)] {
            assert!(mp_q_number(m, p, 0).is_zero(), "[0] for ({m},{p})");
            assert!(mp_q_number(m, p, 1).is_one(), "[1] for ({m},{p})");
            // [2] = q^{-m/p} (q^m + 1).
            let want = qp(m, -((m / p) as i64)).mul(&qp(m, m as i64).add(&Scalar::one(m)));
            assert_eq!(mp_q_number(m, p, 2), want, "[2] for ({m},{p})");
        }
    }

    #[test]
    fn mp_q_number_22_is_the_balanced_quantum_integer() {
        // [x]^{2,2} = (q^x - q^{-x})/(q - q^{-1}).
        let m = 2;
        for x in -5..=5 {
            let want = qp(m, x)
                .sub(&qp(m, -x))
                .div(&qp(m, 1).sub(&qp(m, -1)))
                .unwrap();
            assert_eq!(mp_q_number(2, 2, x), want, "x={x}");
        }
        assert_eq!(mp_q_number(2, 2, 2), qp(2, 1).add(&qp(2, -1)));
    }

    #[test]
    fn mp_q_number_denominator_cleared_identity() {
        // q^{-m/p}(q^m - 1) * [x] = q^{-xm/p}(q^{xm} - 1) for x in [-5, 5].
        for (m, p) in [(1u32, 1u32), (2, 2), (3, 1), (3, 3), (4, 2)] {
            let mp = (m / p) as i64;
            let den = qp(m, -mp).mul(&qp(m, m as i64).sub(&Scalar::one(m)));
            for x in -5i64..=5 {
                let lhs = den.mul(&mp_q_number(m, p, x));
                let rhs = qp(m, -x * mp).mul(&qp(m, x * m as i64).sub(&Scalar::one(m)));
                assert_eq!(lhs, rhs, "({m},{p}) x={x}");
            }
        }
    }

    #[test]
    fn mp_q_number_antisymmetry_in_the_balanced_case() {
        // [-x] = -[x] holds exactly when p = 2 (then xm - 2xm/p = 0).
        for m in [2u32, 4] {
            for x in -5i64..=5 {
                assert_eq!(
                    mp_q_number(m, 2, -x),
                    mp_q_number(m, 2, x).neg(),
                    "m={m} x={x}"
                );
            }
        }
    }

    #[test]
    fn mp_q_number_42_two_bracket() {
        // [2]^{4,2} = q^{-2}(q^4 + 1) = q^2 + q^{-2}.
        assert_eq!(mp_q_number(4, 2, 2), qp(4, 2).add(&qp(4, -2)));
    }

    #[test]
    fn substitute_q_power_stretches_exponents() {
        let m = 2;
        // (q - 1) -> (q^3 - 1) under q -> q^3.
        let s = qp(m, 1).sub(&Scalar::one(m));
        let t = qp(m, 3).sub(&Scalar::one(m));
        assert_eq!(s.substitute_q_power(3), t);
        // Fractions stay reduced: (q+1) = (q^2-1)/(q-1) -> q^3 + 1.
        let f = qp(m, 2).sub(&Scalar::one(m)).div(&s).unwrap();
        assert_eq!(f.substitute_q_power(3), qp(m, 3).add(&Scalar::one(m)));
    }

    #[test]
    fn display_and_canonical_denominator() {
        let m = 4;
        let s = qp(m, 2)
            .add(&Scalar::zeta_pow(m, 1))
            .div(&qp(m, 1).sub(&Scalar::one(m)))
            .unwrap();
        assert_eq!(s.to_string(), "(q^2 + z)/(q - 1)");
        // q^{-1}: numerator 1, denominator q (monic).
        assert_eq!(qp(m, -1).to_string(), "(1)/(q)");
    }

    /// Deterministic pseudo-random scalars for axiom sweeps.
    fn sample(m: u32, seed: u64) -> Scalar {
        let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 33) as i64
        };
        let mut num = QPoly::zero(m);
        let mut den = QPoly::zero(m);
        for k in 0..3usize {
            let cn = (next() % 5) - 2;
            let cd = (next() % 5) - 2;
            let zn = next().rem_euclid(m as i64);
            if cn != 0 {
                let c = CyclotomicRational::zeta_pow(m, zn)
                    .scale(&num::BigRational::from(num::BigInt::from(cn)));
                num = num.add(&QPoly::monomial(c, k));
            }
            if cd != 0 {
                den = den.add(&QPoly::monomial(CyclotomicRational::from_integer(m, cd), k));
            }
        }
        if den.is_zero() {
            den = QPoly::one(m);
        }
        Scalar::new(num, den).unwrap()
    }

    #[test]
    fn field_axioms_randomized() {
        for m in [1u32, 3, 4] {
            for seed in 0..25u64 {
                let a = sample(m, seed * 3 + 1);
                let b = sample(m, seed * 3 + 2);
                let c = sample(m, seed * 3 + 3);
                assert_eq!(a.add(&b), b.add(&a));
                assert_eq!(a.mul(&b), b.mul(&a));
                assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
                assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
                assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
                assert!(a.sub(&a).is_zero());
                if !a.is_zero() {
                    assert!(a.mul(&a.inv().unwrap()).is_one());
                }
                // Normalization is canonical: (a*c)/(b*c) == a/b bit for bit.
                if !c.is_zero() && !b.is_zero() {
                    let lhs = a.mul(&c).div(&b.mul(&c)).unwrap();
                    let rhs = a.div(&b).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}
