//! Exact arithmetic in the cyclotomic field `Q(zeta_m)`.
//!
//! Elements are residues modulo the m-th cyclotomic polynomial `Phi_m`,
//! stored as rational coefficient vectors of length `phi(m) = deg Phi_m` in
//! the power basis `1, zeta, ..., zeta^{phi(m)-1}`. `Phi_m` itself is
//! computed once per modulus by the classical recursion
//! `Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d` and cached process-wide.

use num::{BigInt, BigRational, One, Zero};
use once_cell::sync::Lazy;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};

/// Rational polynomial helpers on plain coefficient vectors (index = degree).
/// Local to this file: the rest of the crate works with richer types.
mod rpoly {
    use super::*;

    pub fn trim(c: &mut Vec<BigRational>) {
        while c.last().map_or(false, |x| x.is_zero()) {
            c.pop();
        }
    }

    pub fn mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if !bj.is_zero() {
                    out[i + j] += ai * bj;
                }
            }
        }
        trim(&mut out);
        out
    }

    /// Division with remainder; divisor must be nonzero.
    pub fn div_rem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
        assert!(!b.is_empty(), "rpoly division by zero");
        let mut rem = a.to_vec();
        trim(&mut rem);
        let db = b.len() - 1;
        let lb = &b[db];
        if rem.len() <= db {
            return (Vec::new(), rem);
        }
        let mut quo = vec![BigRational::zero(); rem.len() - db];
        while rem.len() > db {
            let dr = rem.len() - 1;
            let c = &rem[dr] / lb;
            for (j, bj) in b.iter().enumerate() {
                let idx = dr - db + j;
                let t = &c * bj;
                rem[idx] -= t;
            }
            quo[dr - db] = c;
            trim(&mut rem);
            if rem.is_empty() {
                break;
            }
        }
        trim(&mut quo);
        (quo, rem)
    }

    /// Extended gcd: returns (g, s, t) monic with `g = s*a + t*b`.
    pub fn ext_gcd(
        a: &[BigRational],
        b: &[BigRational],
    ) -> (Vec<BigRational>, Vec<BigRational>, Vec<BigRational>) {
        let one = vec![BigRational::one()];
        let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
        trim(&mut r0);
        trim(&mut r1);
        let (mut s0, mut s1) = (one.clone(), Vec::new());
        let (mut t0, mut t1) = (Vec::new(), one);
        while !r1.is_empty() {
            let (q, r) = div_rem(&r0, &r1);
            let snew = sub(&s0, &mul(&q, &s1));
            let tnew = sub(&t0, &mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, snew);
            t0 = std::mem::replace(&mut t1, tnew);
        }
        // Normalize to monic gcd.
        if let Some(lc) = r0.last().cloned() {
            for c in r0.iter_mut().chain(s0.iter_mut()).chain(t0.iter_mut()) {
                *c /= &lc;
            }
        }
        (r0, s0, t0)
    }

    pub fn sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let mut out = a.to_vec();
        if out.len() < b.len() {
            out.resize(b.len(), BigRational::zero());
        }
        for (i, bi) in b.iter().enumerate() {
            out[i] -= bi;
        }
        trim(&mut out);
        out
    }
}

/// Cached data for one cyclotomic field `Q(zeta_m)`.
#[derive(Debug)]
pub struct CycloField {
    m: u32,
    /// Monic `Phi_m` coefficients, length `deg + 1`.
    phi: Vec<BigRational>,
    deg: usize,
    /// `zeta^j` for `j` in `deg ..= max(2*deg - 2, m - 1)`, reduced to the
    /// power basis: everything a product of two residues or a folded single
    /// power (`zeta^m = 1`) can land on.
    high_powers: Vec<Vec<BigRational>>,
}

static FIELDS: Lazy<Mutex<HashMap<u32, Arc<CycloField>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

fn cyclotomic_poly(m: u32, memo: &mut HashMap<u32, Vec<BigRational>>) -> Vec<BigRational> {
    if let Some(p) = memo.get(&m) {
        return p.clone();
    }
    // x^m - 1
    let mut num = vec![BigRational::zero(); m as usize + 1];
    num[0] = -BigRational::one();
    num[m as usize] = BigRational::one();
    for d in 1..m {
        if m % d == 0 {
            let phi_d = cyclotomic_poly(d, memo);
            let (q, r) = rpoly::div_rem(&num, &phi_d);
            assert!(r.is_empty(), "Phi_{d} must divide x^{m} - 1");
            num = q;
        }
    }
    memo.insert(m, num.clone());
    num
}

impl CycloField {
    /// The process-wide shared field object for modulus `m` (`m >= 1`).
    pub fn get(m: u32) -> Arc<CycloField> {
        assert!(m >= 1, "cyclotomic modulus must be positive");
        let mut map = FIELDS.lock().unwrap();
        if let Some(f) = map.get(&m) {
            return Arc::clone(f);
        }
        let mut memo = HashMap::new();
        let phi = cyclotomic_poly(m, &mut memo);
        let deg = phi.len() - 1;
        // zeta^deg = -(phi[0] + phi[1] zeta + ... + phi[deg-1] zeta^{deg-1})
        let table_max = (2 * deg).saturating_sub(2).max(m as usize - 1);
        let mut high_powers: Vec<Vec<BigRational>> = Vec::new();
        let mut cur: Vec<BigRational> = phi[..deg].iter().map(|c| -c).collect();
        for _ in deg..=table_max {
            high_powers.push(cur.clone());
            // Multiply by zeta: shift up, fold the overflow back in.
            let top = cur[deg - 1].clone();
            for i in (1..deg).rev() {
                cur[i] = cur[i - 1].clone();
            }
            cur[0] = BigRational::zero();
            if !top.is_zero() {
                for i in 0..deg {
                    let t = &top * -&phi[i];
                    cur[i] += t;
                }
            }
        }
        let field = Arc::new(CycloField { m, phi, deg, high_powers });
        map.insert(m, Arc::clone(&field));
        field
    }

    pub fn modulus(&self) -> u32 {
        self.m
    }

    /// `phi(m)`, the degree of the extension.
    pub fn degree(&self) -> usize {
        self.deg
    }

    /// Monic `Phi_m` as a rational coefficient vector (constant term first).
    pub fn phi_coeffs(&self) -> &[BigRational] {
        &self.phi
    }

    /// Reduce an arbitrary coefficient vector (any length) to the power basis.
    fn reduce(&self, raw: &[BigRational]) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); self.deg];
        for (j, c) in raw.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if j < self.deg {
                out[j] += c;
            } else {
                let table = &self.high_powers[j - self.deg];
                for i in 0..self.deg {
                    let t = c * &table[i];
                    out[i] += t;
                }
            }
        }
        out
    }
}

/// An element of `Q(zeta_m)`: the residue of a rational polynomial in `zeta`
/// modulo `Phi_m`, in canonical power-basis coordinates.
#[derive(Clone)]
pub struct CyclotomicRational {
    field: Arc<CycloField>,
    /// Always exactly `field.degree()` entries.
    coeffs: Vec<BigRational>,
}

impl CyclotomicRational {
    pub fn zero(m: u32) -> Self {
        let field = CycloField::get(m);
        let coeffs = vec![BigRational::zero(); field.degree()];
        CyclotomicRational { field, coeffs }
    }

    pub fn one(m: u32) -> Self {
        Self::from_rational(m, BigRational::one())
    }

    pub fn from_rational(m: u32, r: BigRational) -> Self {
        let mut out = Self::zero(m);
        if out.field.degree() > 0 {
            out.coeffs[0] = r;
        }
        out
    }

    pub fn from_integer(m: u32, n: i64) -> Self {
        Self::from_rational(m, BigRational::from(BigInt::from(n)))
    }

    /// Reduce an arbitrary polynomial in `zeta` (coefficients by ascending
    /// power) to canonical form. This is the `cyclo_reduce` entry point; any
    /// length is accepted, exponents beyond `phi(m)` fold down via `Phi_m`.
    pub fn reduce(m: u32, raw: &[BigRational]) -> Self {
        let field = CycloField::get(m);
        // Fold with zeta^m = 1 first (sound: Phi_m divides x^m - 1), which
        // brings every exponent inside the precomputed reduction table.
        let mut folded = vec![BigRational::zero(); m as usize];
        for (j, c) in raw.iter().enumerate() {
            folded[j % m as usize] += c;
        }
        let coeffs = field.reduce(&folded);
        CyclotomicRational { field, coeffs }
    }

    /// `zeta_m^k` for any integer `k` (negative powers via `zeta^m = 1`).
    pub fn zeta_pow(m: u32, k: i64) -> Self {
        let field = CycloField::get(m);
        let e = k.rem_euclid(m as i64) as usize;
        let mut raw = vec![BigRational::zero(); e + 1];
        raw[e] = BigRational::one();
        let coeffs = field.reduce(&raw);
        CyclotomicRational { field, coeffs }
    }

    pub fn modulus(&self) -> u32 {
        self.field.modulus()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(i, c)| if i == 0 { c.is_one() } else { c.is_zero() })
    }

    /// Some(rational) when the element lies in the prime field.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs.iter().skip(1).all(|c| c.is_zero()) {
            Some(self.coeffs.first().cloned().unwrap_or_else(BigRational::zero))
        } else {
            None
        }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    fn check_same_field(&self, other: &Self) {
        assert_eq!(
            self.field.modulus(),
            other.field.modulus(),
            "mixed cyclotomic moduli"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_same_field(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        CyclotomicRational { field: Arc::clone(&self.field), coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_same_field(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        CyclotomicRational { field: Arc::clone(&self.field), coeffs }
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|a| -a).collect();
        CyclotomicRational { field: Arc::clone(&self.field), coeffs }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_same_field(other);
        let raw = rpoly::mul(&self.coeffs, &other.coeffs);
        let coeffs = self.field.reduce(&raw);
        CyclotomicRational { field: Arc::clone(&self.field), coeffs }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        let coeffs = self.coeffs.iter().map(|a| a * r).collect();
        CyclotomicRational { field: Arc::clone(&self.field), coeffs }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// `Phi_m` (which is irreducible, so every nonzero residue is a unit).
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (g, s, _t) = rpoly::ext_gcd(&self.coeffs, self.field.phi_coeffs());
        assert!(
            g.len() == 1 && g[0].is_one(),
            "gcd with irreducible Phi_m must be 1"
        );
        let coeffs = self.field.reduce(&s);
        Ok(CyclotomicRational { field: Arc::clone(&self.field), coeffs })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

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
}

impl PartialEq for CyclotomicRational {
    fn eq(&self, other: &Self) -> bool {
        self.field.modulus() == other.field.modulus() && self.coeffs == other.coeffs
    }
}

impl Eq for CyclotomicRational {}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for CyclotomicRational {
    /// Power-basis rendering, highest power first: `2*z^2 - 1/3*z + 4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c < &BigRational::zero() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            let coeff_str = fmt_rational(&mag);
            match i {
                0 => write!(f, "{}", coeff_str)?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{}*", coeff_str)?;
                    }
                    if i == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{}", i)?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CyclotomicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycRat(m={}, {})", self.modulus(), self)
    }
}
