//! Rational functions in the Laurent variables, kept in a canonical form so
//! equality is literal equality:
//!
//! * the denominator is an honest polynomial (no negative exponents), has
//!   per-variable minimum exponent zero (no monomial content) and leading
//!   coefficient 1 in graded-lex order;
//! * numerator and denominator share no factor: all Laurent-unit freedom
//!   (scalars and monomials) lives in the numerator.
//!
//! Every constructor and operation re-establishes this form, so `==` on
//! `RatFunc` decides equality in the fraction field.

use std::fmt;
use std::sync::Arc;

use super::gcd::{div_exact, poly_gcd};
use super::{same_table, Expo, LaurentPoly, MonomialMap, VarTable};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Eq for RatFunc {}

impl RatFunc {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    pub fn from_poly(num: LaurentPoly) -> Self {
        let den = LaurentPoly::one(num.table());
        Self::normalized(num, den)
    }

    pub fn zero(table: &Arc<VarTable>) -> Self {
        RatFunc { num: LaurentPoly::zero(table), den: LaurentPoly::one(table) }
    }

    pub fn one(table: &Arc<VarTable>) -> Self {
        RatFunc { num: LaurentPoly::one(table), den: LaurentPoly::one(table) }
    }

    pub fn constant(table: &Arc<VarTable>, c: Scalar) -> Self {
        Self::from_poly(LaurentPoly::constant(table, c))
    }

    pub fn var_pow(table: &Arc<VarTable>, v: super::VarIndex, e: i32) -> Self {
        Self::from_poly(LaurentPoly::var_pow(table, v, e))
    }

    fn normalized(num: LaurentPoly, den: LaurentPoly) -> Self {
        debug_assert!(!den.is_zero());
        let table = Arc::clone(num.table());
        if num.is_zero() {
            return Self::zero(&table);
        }
        let (snum, mut pnum) = num.monomial_split();
        let (sden, mut pden) = den.monomial_split();
        let g = poly_gcd(&pnum, &pden);
        if !g.is_one() {
            pnum = div_exact(&pnum, &g).expect("gcd divides numerator");
            pden = div_exact(&pden, &g).expect("gcd divides denominator");
        }
        let lc = pden.leading().expect("nonzero denominator").1.clone();
        if !lc.is_one() {
            let inv = lc.inv().expect("nonzero leading coefficient");
            pnum = pnum.scale(&inv);
            pden = pden.scale(&inv);
        }
        let shift = snum.sub(&sden);
        let num = pnum.mul_monomial(&shift, &Scalar::one(table.modulus()));
        RatFunc { num, den: pden }
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn table(&self) -> &Arc<VarTable> {
        self.num.table()
    }

    pub fn modulus(&self) -> u32 {
        self.num.modulus()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Some(poly) when the denominator is 1.
    pub fn as_poly(&self) -> Option<&LaurentPoly> {
        if self.den.is_one() {
            Some(&self.num)
        } else {
            None
        }
    }

    /// Some((expo, coeff)) when the value is a scalar multiple of a Laurent
    /// monomial.
    pub fn as_monomial(&self) -> Option<(Expo, Scalar)> {
        if !self.den.is_one() {
            return None;
        }
        self.num.as_monomial().map(|(e, c)| (e.clone(), c.clone()))
    }

    fn check(&self, other: &Self) {
        assert!(
            same_table(self.table(), other.table()),
            "mixed variable tables"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        // (a/b) + (c/d) with g = gcd(b, d): common denominator b (d/g).
        let g = poly_gcd(&self.den, &other.den);
        let (db, dd) = if g.is_one() {
            (self.den.clone(), other.den.clone())
        } else {
            (
                div_exact(&self.den, &g).expect("gcd divides"),
                div_exact(&other.den, &g).expect("gcd divides"),
            )
        };
        let num = self.num.mul(&dd).add(&other.num.mul(&db));
        let den = self.den.mul(&dd);
        Self::normalized(num, den)
    }

    pub fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.table());
        }
        // Cross-cancel: gcd(num_a, den_b) and gcd(num_b, den_a). Because
        // each input is reduced, the product of the cancelled parts is
        // already reduced, so no further gcd is needed — only unit
        // renormalization of the new denominator.
        let ga = poly_gcd(&self.num, &other.den);
        let gb = poly_gcd(&other.num, &self.den);
        let na = if ga.is_one() {
            self.num.clone()
        } else {
            div_exact(&self.num, &ga).expect("gcd divides")
        };
        let db = if ga.is_one() {
            other.den.clone()
        } else {
            div_exact(&other.den, &ga).expect("gcd divides")
        };
        let nb = if gb.is_one() {
            other.num.clone()
        } else {
            div_exact(&other.num, &gb).expect("gcd divides")
        };
        let da = if gb.is_one() {
            self.den.clone()
        } else {
            div_exact(&self.den, &gb).expect("gcd divides")
        };
        let num = na.mul(&nb);
        let den = da.mul(&db);
        // den is content-free (product of content-free factors) but its
        // leading coefficient may differ from 1, and num carries the
        // monomial shifts; run the cheap unit pass.
        let (sden, pden) = den.monomial_split();
        debug_assert!(sden.is_zero() && pden == den || !sden.is_zero());
        let lc = pden.leading().expect("nonzero").1.clone();
        let (num, den) = if lc.is_one() {
            (num, pden)
        } else {
            let inv = lc.inv().expect("nonzero");
            (num.scale(&inv), pden.scale(&inv))
        };
        let num = num.mul_monomial(&sden.neg(), &Scalar::one(self.modulus()));
        RatFunc { num, den }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.table());
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Multiply by the Laurent monomial `c * x^shift` (a unit): only the
    /// numerator changes.
    pub fn mul_monomial(&self, shift: &Expo, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.table());
        }
        RatFunc { num: self.num.mul_monomial(shift, c), den: self.den.clone() }
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one(self.table());
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Apply a monomial substitution to numerator and denominator. For
    /// bijective maps (every variable hit exactly once) canonical form is
    /// preserved up to units, so only the cheap unit pass runs; general maps
    /// re-normalize from scratch and reject ones that kill the denominator.
    pub fn substitute(&self, map: &MonomialMap) -> Result<Self> {
        let num = self.num.substitute(map)?;
        let den = self.den.substitute(map)?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if map.is_bijective() {
            // num/den stay coprime; den stays a polynomial up to a monomial
            // shift and a leading unit.
            let (sden, pden) = den.monomial_split();
            let lc = pden.leading().expect("nonzero").1.clone();
            let (num, pden) = if lc.is_one() {
                (num, pden)
            } else {
                let inv = lc.inv().expect("nonzero");
                (num.scale(&inv), pden.scale(&inv))
            };
            let num = num.mul_monomial(&sden.neg(), &Scalar::one(self.modulus()));
            Ok(RatFunc { num, den: pden })
        } else {
            Self::new(num, den)
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::super::test_support::*;
    use super::*;
    use crate::laurent::VarIndex;

    fn rf(num: LaurentPoly, den: LaurentPoly) -> RatFunc {
        RatFunc::new(num, den).unwrap()
    }

    #[test]
    fn normalization_cancels_and_shifts() {
        let t = tbl(&[2], 2);
        let a = x(&t, 1, 1);
        let b = x(&t, 1, 2);
        // (a^2 - b^2) / (a - b) = a + b, denominator 1.
        let f = rf(a.mul(&a).sub(&b.mul(&b)), a.sub(&b));
        assert_eq!(f, RatFunc::from_poly(a.add(&b)));
        // Monomial content moves to the numerator: (a) / (a b) = b^-1.
        let g = rf(a.clone(), a.mul(&b));
        assert_eq!(g, RatFunc::from_poly(xp(&t, 1, 2, -1)));
        assert!(g.den().is_one());
    }

    #[test]
    fn denominator_is_canonical() {
        let t = tbl(&[2], 4);
        let m = t.modulus();
        let a = x(&t, 1, 1);
        let b = x(&t, 1, 2);
        // den = q b^-1 (a - b) must become a - b with the unit pushed to num.
        let den = a.sub(&b).mul_monomial(
            &Expo::unit(t.total_vars(), 1, -1),
            &Scalar::q_pow(m, 1),
        );
        let f = rf(LaurentPoly::one(&t), den);
        assert!(f.den().is_polynomial());
        assert_eq!(f.den().min_exponents().unwrap().entries(), &[0, 0]);
        assert!(f.den().leading().unwrap().1.is_one());
        assert_eq!(f.den(), &a.sub(&b));
        // And multiplying back recovers 1.
        let back = f.mul(&rf(a.sub(&b).mul_monomial(
            &Expo::unit(t.total_vars(), 1, -1),
            &Scalar::q_pow(m, 1),
        ), LaurentPoly::one(&t)));
        assert!(back.is_one());
    }

    #[test]
    fn field_operations_roundtrip() {
        // Numerators roam over both variables; denominators are univariate
        // (monic in their own variable up to a scalar), the shape fraction
        // arithmetic meets in practice.
        let t = tbl(&[1, 1], 3);
        for seed in 0..10u64 {
            let n1 = sample_poly_spread(&t, 100 + seed, 2, 1);
            let d1 = sample_poly_in_var(&t, 0, 200 + seed, 2, 2);
            let n2 = sample_poly_spread(&t, 300 + seed, 2, 1);
            let d2 = sample_poly_in_var(&t, 1, 400 + seed, 2, 2);
            if d1.is_zero() || d2.is_zero() {
                continue;
            }
            let f = rf(n1.clone(), d1.clone());
            let g = rf(n2.clone(), d2.clone());
            // Associativity / distributivity spot checks.
            assert_eq!(f.add(&g), g.add(&f));
            assert_eq!(f.mul(&g), g.mul(&f));
            assert_eq!(f.add(&g).mul(&f), f.mul(&f).add(&g.mul(&f)));
            // Subtraction and division undo addition and multiplication.
            assert_eq!(f.add(&g).sub(&g), f);
            if !g.is_zero() {
                assert_eq!(f.mul(&g).div(&g).unwrap(), f);
                assert!(g.mul(&g.inv().unwrap()).is_one());
            }
            // Cross-multiplied equality: f == n1 d2 * (d1 n2)^-1 * g ... keep
            // it simple: f - n1/d1 == 0 via fresh construction.
            assert!(f.sub(&rf(n1.clone(), d1.clone())).is_zero());
        }
    }

    #[test]
    fn common_factor_inputs_normalize_identically() {
        // new(a c, b c) must equal new(a, b) bit for bit.
        let t = tbl(&[2], 2);
        let one = Scalar::one(2);
        let mut checked = 0usize;
        for seed in 0..60u64 {
            let a = sample_poly(&t, 3 * seed + 1, 3);
            let b = sample_poly(&t, 3 * seed + 2, 2);
            let c = sample_poly(&t, 3 * seed + 3, 2);
            if b.is_zero() || c.is_zero() {
                continue;
            }
            let plain = RatFunc::new(a.clone(), b.clone()).unwrap();
            let padded = RatFunc::new(a.mul(&c), b.mul(&c)).unwrap();
            assert_eq!(plain, padded, "seed {seed}");
            // Identical down to the rendered string.
            assert_eq!(plain.to_string(), padded.to_string());
            let _ = &one;
            checked += 1;
        }
        assert!(checked >= 40, "sampler produced too few cases: {checked}");
    }

    #[test]
    fn substitute_bijective_matches_full_normalize() {
        let t = tbl(&[2], 4);
        let m = t.modulus();
        // Swap the two variables and twist by scalars.
        let map = MonomialMap::new(
            &t,
            vec![
                (Scalar::q_pow(m, -1), VarIndex::new(1, 2)),
                (Scalar::zeta_pow(m, 1), VarIndex::new(1, 1)),
            ],
        )
        .unwrap();
        assert!(map.is_bijective());
        for seed in 0..8u64 {
            let n = sample_poly(&t, 500 + seed, 4);
            let d = sample_poly(&t, 600 + seed, 3);
            if d.is_zero() {
                continue;
            }
            let f = rf(n.clone(), d.clone());
            let fast = f.substitute(&map).unwrap();
            let slow = RatFunc::new(
                n.substitute(&map).unwrap(),
                d.substitute(&map).unwrap(),
            )
            .unwrap();
            assert_eq!(fast, slow, "seed {seed}");
            // Homomorphism property.
            let g = rf(
                sample_poly(&t, 700 + seed, 3),
                LaurentPoly::one(&t),
            );
            assert_eq!(
                f.mul(&g).substitute(&map).unwrap(),
                fast.mul(&g.substitute(&map).unwrap())
            );
            assert_eq!(
                f.add(&g).substitute(&map).unwrap(),
                fast.add(&g.substitute(&map).unwrap())
            );
        }
    }

    #[test]
    fn non_bijective_substitution_renormalizes() {
        let t = tbl(&[2], 2);
        // Collapse both variables onto x11: (x11 x12 - 1)/(x11 - x12)
        // becomes (x11^2 - 1)/0 ... choose a denominator that survives.
        let map = MonomialMap::new(
            &t,
            vec![
                (Scalar::one(2), VarIndex::new(1, 1)),
                (Scalar::one(2), VarIndex::new(1, 1)),
            ],
        )
        .unwrap();
        assert!(!map.is_bijective());
        let a = x(&t, 1, 1);
        let b = x(&t, 1, 2);
        let f = rf(a.mul(&b).sub(&LaurentPoly::one(&t)), a.add(&b));
        let got = f.substitute(&map).unwrap();
        // (x^2-1)/(2x) = (x - x^-1) / 2 with canonical den = 1 after the
        // monomial moves out... den 2x: poly part "x", content-free, monic
        // after scaling; num (x^2-1)/2 shifted by -1.
        let xv = a;
        let want = rf(
            xv.mul(&xv)
                .sub(&LaurentPoly::one(&t))
                .scale(&Scalar::from_integer(2, 2).inv().unwrap()),
            xv.clone(),
        );
        assert_eq!(got, want);
        // Denominator collapse is reported as division by zero.
        let g = rf(LaurentPoly::one(&t), xv.sub(&b));
        assert!(matches!(g.substitute(&map), Err(Error::DivisionByZero)));
    }

    #[test]
    fn display_forms() {
        let t = tbl(&[2], 2);
        let a = x(&t, 1, 1);
        let b = x(&t, 1, 2);
        let f = rf(a.clone(), a.add(&b));
        assert_eq!(f.to_string(), "(x[1,1]) / (x[1,1] + x[1,2])");
        assert_eq!(RatFunc::from_poly(b).to_string(), "x[1,2]");
    }

    #[test]
    fn pow_and_scale() {
        let t = tbl(&[1], 2);
        let a = x(&t, 1, 1);
        let f = rf(a.add(&LaurentPoly::one(&t)), a.clone());
        let f2 = f.pow(2).unwrap();
        assert_eq!(f2, f.mul(&f));
        let fm2 = f.pow(-2).unwrap();
        assert!(f2.mul(&fm2).is_one());
        assert!(f.pow(0).unwrap().is_one());
        assert!(f.scale(&Scalar::zero(2)).is_zero());
    }
}
